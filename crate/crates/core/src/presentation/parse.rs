use super::{Presentation, Syllable, Word};
use crate::error::{Error, Result};

/// Parses `<x, y | x^2 y^-2 x^-1 y, ...>`.
///
/// Whitespace is insignificant. A run of letters and digits that is not a
/// generator name is split into generator names (`xyx^-1y` reads as
/// `x y x^-1 y`); the exponent binds to the last piece. The word `1` is the
/// empty relator.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.expect(b'<')?;
    let names = p.names()?;
    p.expect(b'|')?;
    let mut relators = Vec::new();
    p.skip_ws();
    if p.peek() != Some(b'>') {
        loop {
            relators.push(p.word(&names)?);
            p.skip_ws();
            if p.peek() == Some(b',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(b'>')?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Presentation::new(names, relators)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        Some((start, std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")))
    }

    fn names(&mut self) -> Result<Vec<String>> {
        let mut names = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b'|') {
            return Ok(names);
        }
        loop {
            let pos = self.pos;
            let (_, name) = self.ident().ok_or_else(|| Error::parse(pos, "expected a generator name"))?;
            let name = name.to_string();
            if names.contains(&name) {
                return Err(Error::parse(pos, format!("duplicate generator `{name}`")));
            }
            names.push(name);
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(names);
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        self.skip_ws();
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(Error::parse(self.pos, "expected an integer exponent"));
        }
        let text: String = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let v: i64 = text
            .parse()
            .map_err(|_| Error::parse(start, "exponent out of range"))?;
        if v == 0 {
            return Err(Error::parse(start, "exponent 0 is not allowed"));
        }
        Ok(v)
    }

    fn word(&mut self, names: &[String]) -> Result<Word> {
        self.skip_ws();
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut syl = Vec::new();
        loop {
            let Some((_, run)) = self.ident() else { break };
            let run = run.to_string();
            let pieces = split_run(&run, names).ok_or(Error::UnknownGenerator(run.clone()))?;
            let n = pieces.len();
            for (i, gen) in pieces.into_iter().enumerate() {
                let mut exp = 1;
                if i + 1 == n {
                    self.skip_ws();
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.integer()?;
                    }
                }
                syl.push(Syllable { gen, exp });
            }
        }
        if syl.is_empty() {
            return Err(Error::parse(self.pos, "expected a relator"));
        }
        Ok(Word::new(syl))
    }
}

/// Splits `run` into generator names, preferring longer names first.
fn split_run(run: &str, names: &[String]) -> Option<Vec<usize>> {
    if run.is_empty() {
        return Some(Vec::new());
    }
    let mut candidates: Vec<usize> = (0..names.len()).filter(|&i| run.starts_with(&names[i])).collect();
    candidates.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    for i in candidates {
        if let Some(mut rest) = split_run(&run[names[i].len()..], names) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn running_example() {
        let p = parse_presentation("<x,y | x^2 y^-2 x^-1 y>").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators()[0], Word::from_pairs(&[(0, 2), (1, -2), (0, -1), (1, 1)]));
    }

    #[test]
    fn cancelling_relator_is_empty() {
        let p = parse_presentation("<x | x x^-1>").unwrap();
        assert!(p.relators()[0].is_empty());
        assert_eq!(p.to_string(), "<x | 1>");
    }

    #[test]
    fn unknown_generator() {
        assert_eq!(parse_presentation("<x | y>"), Err(Error::UnknownGenerator("y".into())));
    }

    #[test]
    fn juxtaposed_names() {
        let p = parse_presentation("<x,y|xyx^-1y>").unwrap();
        assert_eq!(p.relators()[0], Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, 1)]));
        let p = parse_presentation("<x1,x2,x3,x4 | x1x2x1^-1x2^-1 x3x4x3^-1x4^-1>").unwrap();
        assert_eq!(p.relators()[0].letter_len(), 8);
        // backtracking split
        let p = parse_presentation("<x,xy,yz | xyz>").unwrap();
        assert_eq!(p.relators()[0], Word::from_pairs(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_presentation("<x | x^0>"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_presentation("<x | x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_presentation("x | x>"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_presentation("<x,x | x>"), Err(Error::Parse { .. })));
        assert!(matches!(parse_presentation("<x | x> junk"), Err(Error::Parse { .. })));
    }

    #[test]
    fn empty_forms() {
        let p = parse_presentation("< | >").unwrap();
        assert_eq!((p.generator_count(), p.relator_count()), (0, 0));
        let p = parse_presentation("<x | >").unwrap();
        assert_eq!(p.relator_count(), 0);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(
            rels in proptest::collection::vec(
                proptest::collection::vec((0usize..3, prop_oneof![-4i64..=-1, 1i64..=4]), 0..6),
                0..3,
            )
        ) {
            let words = rels.iter().map(|r| Word::from_pairs(r)).collect();
            let p = Presentation::new(vec!["x".into(), "y".into(), "z2".into()], words).unwrap();
            prop_assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        }
    }
}
