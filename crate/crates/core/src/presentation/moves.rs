use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_identifier, Presentation, Syllable, Word};
use crate::error::{Error, Result};

/// The Andrews–Curtis moves, generalized to arbitrary relator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AcMove {
    /// Exchange relators `j` and `k`.
    Swap(usize, usize),
    /// Replace `R_j` by `g R_j g⁻¹`.
    Conjugate(usize, Word),
    /// Replace `R_j` by `R_j⁻¹`.
    Invert(usize),
    /// Replace `R_j` by `R_j R_k`, `j ≠ k`.
    Multiply(usize, usize),
    /// Add a generator with this name and the relator consisting of it.
    Stabilize(String),
    /// Remove generator `k` together with its defining relator `x_k^{±1}`.
    Destabilize(usize),
}

fn relator(p: &Presentation, j: usize) -> Result<()> {
    if j < p.relator_count() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!("relator {j} of {}", p.relator_count())))
    }
}

pub fn apply_move(p: &Presentation, m: &AcMove) -> Result<Presentation> {
    let mut q = p.clone();
    let (gens, rels) = q.parts_mut();
    match m {
        AcMove::Swap(j, k) => {
            relator(p, *j)?;
            relator(p, *k)?;
            rels.swap(*j, *k);
        }
        AcMove::Conjugate(j, g) => {
            relator(p, *j)?;
            if g.syllables().iter().any(|s| s.gen >= gens.len()) {
                return Err(Error::IndexOutOfRange("conjugating word uses an unknown generator".into()));
            }
            rels[*j] = rels[*j].conjugate(g);
        }
        AcMove::Invert(j) => {
            relator(p, *j)?;
            rels[*j] = rels[*j].inverse();
        }
        AcMove::Multiply(j, k) => {
            relator(p, *j)?;
            relator(p, *k)?;
            if j == k {
                return Err(Error::InvalidMove("multiply needs two distinct relators".into()));
            }
            rels[*j] = rels[*j].concat(&rels[*k]);
        }
        AcMove::Stabilize(name) => {
            if !is_identifier(name) || gens.contains(name) {
                return Err(Error::InvalidMove(format!("`{name}` is not a fresh generator name")));
            }
            gens.push(name.clone());
            rels.push(Word::from_pairs(&[(gens.len() - 1, 1)]));
        }
        AcMove::Destabilize(k) => {
            let k = *k;
            if k >= gens.len() {
                return Err(Error::IndexOutOfRange(format!("generator {k} of {}", gens.len())));
            }
            let users: Vec<usize> = (0..rels.len()).filter(|&j| rels[j].uses(k)).collect();
            let [j] = users[..] else {
                return Err(Error::IllegalDestabilize(format!(
                    "`{}` occurs in {} relators",
                    gens[k],
                    users.len()
                )));
            };
            let s = rels[j].syllables();
            if s.len() != 1 || s[0].exp.abs() != 1 {
                return Err(Error::IllegalDestabilize(format!(
                    "the relator using `{}` is not `{0}` or `{0}^-1`",
                    gens[k]
                )));
            }
            rels.remove(j);
            gens.remove(k);
            for r in rels.iter_mut() {
                *r = Word::new(r.syllables().iter().map(|s| Syllable {
                    gen: if s.gen > k { s.gen - 1 } else { s.gen },
                    exp: s.exp,
                }));
            }
        }
    }
    Ok(q)
}

impl AcMove {
    /// Text form, e.g. `swap 0 1`, `conj 0 x^-1 y`, `inv 0`, `mul 0 1`,
    /// `stab s0`, `destab y`; names refer to `p`, the presentation the move
    /// is applied to.
    pub fn describe(&self, p: &Presentation) -> String {
        match self {
            AcMove::Swap(j, k) => format!("swap {j} {k}"),
            AcMove::Conjugate(j, g) => format!("conj {j} {}", g.display(p.generators())),
            AcMove::Invert(j) => format!("inv {j}"),
            AcMove::Multiply(j, k) => format!("mul {j} {k}"),
            AcMove::Stabilize(name) => format!("stab {name}"),
            AcMove::Destabilize(k) => format!(
                "destab {}",
                p.generators().get(*k).map_or_else(|| k.to_string(), Clone::clone)
            ),
        }
    }
}

/// Parses the text form produced by [`AcMove::describe`].
pub fn parse_move(text: &str, p: &Presentation) -> Result<AcMove> {
    let text = text.trim();
    let (op, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let bad = || Error::parse(0, format!("cannot read move `{text}`"));
    let index = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let two = |s: &str| -> Result<(usize, usize)> {
        let mut it = s.split_whitespace();
        let a = index(it.next().ok_or_else(bad)?)?;
        let b = index(it.next().ok_or_else(bad)?)?;
        if it.next().is_some() {
            return Err(bad());
        }
        Ok((a, b))
    };
    match op {
        "swap" => two(rest).map(|(a, b)| AcMove::Swap(a, b)),
        "mul" => two(rest).map(|(a, b)| AcMove::Multiply(a, b)),
        "inv" => Ok(AcMove::Invert(index(rest)?)),
        "conj" => {
            let (j, w) = rest.split_once(char::is_whitespace).ok_or_else(bad)?;
            let body = format!("<{} | {}>", p.generators().join(","), w);
            let parsed = super::parse_presentation(&body)?;
            Ok(AcMove::Conjugate(index(j)?, parsed.relators()[0].clone()))
        }
        "stab" => Ok(AcMove::Stabilize(rest.to_string())),
        "destab" => match p.generator_index(rest) {
            Some(k) => Ok(AcMove::Destabilize(k)),
            None => Err(Error::UnknownGenerator(rest.to_string())),
        },
        _ => Err(bad()),
    }
}

/// `E[k][j]`: exponent sum of generator `k` in relator `j`.
pub fn exponent_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    (0..p.generator_count())
        .map(|k| p.relators().iter().map(|r| r.exponent_sum(k)).collect())
        .collect()
}

fn destabilizable(p: &Presentation) -> Vec<usize> {
    (0..p.generator_count())
        .filter(|&k| apply_move(p, &AcMove::Destabilize(k)).is_ok())
        .collect()
}

/// Draws a legal move. Conjugating words have 1 to 3 letters; stabilization
/// is drawn rarely so that random walks do not inflate presentations.
pub fn random_move<R: Rng + ?Sized>(p: &Presentation, rng: &mut R) -> AcMove {
    let n = p.generator_count();
    let m = p.relator_count();
    let destab = destabilizable(p);
    // (kind, weight)
    let mut kinds: Vec<(u8, u32)> = vec![(4, 1)];
    if m >= 2 {
        kinds.push((0, 3));
        kinds.push((3, 4));
    }
    if m >= 1 {
        kinds.push((2, 3));
        if n >= 1 {
            kinds.push((1, 4));
        }
    }
    if !destab.is_empty() {
        kinds.push((5, 3));
    }
    let total: u32 = kinds.iter().map(|k| k.1).sum();
    let mut pick = rng.gen_range(0..total);
    let kind = kinds
        .iter()
        .find(|(_, w)| {
            if pick < *w {
                true
            } else {
                pick -= w;
                false
            }
        })
        .expect("weights cover the range")
        .0;
    let two_distinct = |rng: &mut R| {
        let j = rng.gen_range(0..m);
        let mut k = rng.gen_range(0..m - 1);
        if k >= j {
            k += 1;
        }
        (j, k)
    };
    match kind {
        0 => {
            let (j, k) = two_distinct(rng);
            AcMove::Swap(j, k)
        }
        1 => {
            let len = rng.gen_range(1..=3);
            let g = Word::new((0..len).map(|_| Syllable {
                gen: rng.gen_range(0..n),
                exp: if rng.gen_bool(0.5) { 1 } else { -1 },
            }));
            AcMove::Conjugate(rng.gen_range(0..m), g)
        }
        2 => AcMove::Invert(rng.gen_range(0..m)),
        3 => {
            let (j, k) = two_distinct(rng);
            AcMove::Multiply(j, k)
        }
        4 => AcMove::Stabilize(p.fresh_name()),
        _ => AcMove::Destabilize(destab[rng.gen_range(0..destab.len())]),
    }
}

/// [`random_move`] driven by a ChaCha8 stream seeded with `seed`.
pub fn random_move_seeded(p: &Presentation, seed: u64) -> AcMove {
    random_move(p, &mut ChaCha8Rng::seed_from_u64(seed))
}
