//! Group presentations, their text form, and Andrews–Curtis moves.

mod moves;
mod parse;
mod random;

use std::fmt;

pub use moves::{apply_move, exponent_matrix, parse_move, random_move, random_move_seeded, AcMove};
pub use parse::parse_presentation;
pub use random::{named_corpus, random_corpus, random_presentation, NAMED_CORPUS};

use crate::error::{Error, Result};

/// A power `x_gen^exp` with `exp ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word: adjacent syllables have distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Syllable>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Normalizes arbitrary syllables, merging neighbours and dropping zeros.
    pub fn new(syllables: impl IntoIterator<Item = Syllable>) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word(out)
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Word {
        Word::new(pairs.iter().map(|&(gen, exp)| Syllable { gen, exp }))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters, `Σ |l_r|`.
    pub fn letter_len(&self) -> usize {
        self.0.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|s| Syllable { gen: s.gen, exp: -s.exp })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    /// `g R g⁻¹`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|s| s.gen == gen).map(|s| s.exp).sum()
    }

    pub fn uses(&self, gen: usize) -> bool {
        self.0.iter().any(|s| s.gen == gen)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay(self, names)
    }
}

struct WordDisplay<'a>(&'a Word, &'a [String]);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0 .0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.1[s.gen])?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_alphanumeric())
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(Error::parse(0, format!("`{g}` is not a valid generator name")));
            }
            if generators[..i].contains(g) {
                return Err(Error::parse(0, format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            for s in r.syllables() {
                if s.gen >= generators.len() {
                    return Err(Error::IndexOutOfRange(format!("generator index {}", s.gen)));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// The presentation with no generators and no relators.
    pub fn empty() -> Presentation {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Total number of letters over all relators.
    pub fn size(&self) -> usize {
        self.relators.iter().map(Word::letter_len).sum()
    }

    /// A name not yet used by any generator.
    pub fn fresh_name(&self) -> String {
        (0..)
            .map(|i| format!("s{i}"))
            .find(|n| self.generator_index(n).is_none())
            .expect("infinitely many names")
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Vec<String>, &mut Vec<Word>) {
        (&mut self.generators, &mut self.relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.display(&self.generators))?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn syllables() -> impl Strategy<Value = Vec<Syllable>> {
        proptest::collection::vec((0usize..3, -3i64..=3), 0..10)
            .prop_map(|v| v.into_iter().map(|(gen, exp)| Syllable { gen, exp }).collect())
    }

    fn reduced(w: &Word) -> bool {
        w.syllables().iter().all(|s| s.exp != 0)
            && w.syllables().windows(2).all(|p| p[0].gen != p[1].gen)
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(s in syllables()) {
            let w = Word::new(s);
            prop_assert!(reduced(&w));
            prop_assert_eq!(Word::new(w.syllables().iter().copied()), w);
        }

        #[test]
        fn normalization_is_confluent(a in syllables(), b in syllables()) {
            // normalizing in two stages equals normalizing at once
            let whole = Word::new(a.iter().chain(&b).copied());
            let staged = Word::new(a.clone()).concat(&Word::new(b.clone()));
            prop_assert_eq!(whole, staged);
        }

        #[test]
        fn inverse_cancels(s in syllables()) {
            let w = Word::new(s);
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }
    }

    #[test]
    fn printing() {
        let p = Presentation::new(
            vec!["x".into(), "y".into()],
            vec![Word::from_pairs(&[(0, 2), (1, -2), (0, -1), (1, 1)]), Word::empty()],
        )
        .unwrap();
        assert_eq!(p.to_string(), "<x,y | x^2 y^-2 x^-1 y, 1>");
    }

    #[test]
    fn bad_names() {
        assert!(Presentation::new(vec!["1x".into()], vec![]).is_err());
        assert!(Presentation::new(vec!["x".into(), "x".into()], vec![]).is_err());
    }
}
