use super::{CategoryData, Simple};
use crate::arith::{Field, Matrix};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &["zn:<n>", "rep-z2-q", "rep-z3-q", "rep-s3-q"];

/// Looks up a builtin category by name; `None` if the name is not a builtin.
pub fn builtin(name: &str) -> Option<Result<CategoryData>> {
    if let Some(n) = name.strip_prefix("zn:") {
        return Some(match n.parse::<u64>() {
            Ok(n) if n >= 1 && n <= 4096 => graded_lines(name, n, &[]),
            _ => Err(Error::parse(0, format!("bad cyclic order in `{name}`"))),
        });
    }
    match name {
        "rep-z2-q" => Some(rep_z2()),
        "rep-z3-q" => Some(graded_lines(name, 3, &["triv", "chi", "chibar"])),
        "rep-s3-q" => Some(rep_s3()),
        _ => None,
    }
}

/// `Z_n`-graded lines: one 1-dimensional simple per residue, `k* = -k`.
///
/// Over ℚ this is the category of `Z_n`-graded vector spaces, which has the
/// same fusion rules, duals and ranks as the representations of `Z_n` over a
/// field containing the `n`-th roots of unity.
fn graded_lines(name: &str, n: u64, names: &[&str]) -> Result<CategoryData> {
    let q = Field::Rational;
    let simples = (0..n)
        .map(|k| Simple {
            name: names.get(k as usize).map_or_else(|| k.to_string(), |s| s.to_string()),
            dim: 1,
            dual: ((n - k) % n) as usize,
            grade: k,
            generators: Vec::new(),
            pairing: Matrix::from_i64(q, &[&[1]]),
        })
        .collect();
    CategoryData::new_unchecked(name, q, 0, Some(n), simples)
}

fn rep_z2() -> Result<CategoryData> {
    let q = Field::Rational;
    let line = |name: &str, g: i64| Simple {
        name: name.into(),
        dim: 1,
        dual: if g == 1 { 0 } else { 1 },
        grade: 0,
        generators: vec![Matrix::from_i64(q, &[&[g]])],
        pairing: Matrix::from_i64(q, &[&[1]]),
    };
    CategoryData::new_unchecked("rep-z2-q", q, 1, None, vec![line("triv", 1), line("sign", -1)])
}

/// Rational representations of `S_3` on the generators `s = (12)`, `t = (123)`.
fn rep_s3() -> Result<CategoryData> {
    let q = Field::Rational;
    let one = |name: &str, s: i64, dual: usize| Simple {
        name: name.into(),
        dim: 1,
        dual,
        grade: 0,
        generators: vec![Matrix::from_i64(q, &[&[s]]), Matrix::from_i64(q, &[&[1]])],
        pairing: Matrix::from_i64(q, &[&[1]]),
    };
    // The reflection representation in the basis of simple roots, with its
    // invariant symmetric form.
    let std = Simple {
        name: "std".into(),
        dim: 2,
        dual: 2,
        grade: 0,
        generators: vec![
            Matrix::from_i64(q, &[&[-1, 1], &[0, 1]]),
            Matrix::from_i64(q, &[&[0, -1], &[1, -1]]),
        ],
        pairing: Matrix::from_i64(q, &[&[2, -1], &[-1, 2]]),
    };
    CategoryData::new_unchecked("rep-s3-q", q, 2, None, vec![one("triv", 1, 0), one("sign", -1, 1), std])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn3_shape() {
        let c = builtin("zn:3").unwrap().unwrap();
        assert_eq!(c.len(), 3);
        for b in c.labels() {
            assert_eq!(c.dim(b), 1);
            assert_eq!(c.dual(b), (3 - b) % 3);
            assert!(c.rank_of(b).unwrap().is_one());
        }
    }

    #[test]
    fn s3_dims() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let dims: Vec<usize> = c.labels().map(|b| c.dim(b)).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        assert_eq!(c.rank_of(2).unwrap(), c.int(2));
    }

    #[test]
    fn unknown_names() {
        assert!(builtin("rep-a5-q").is_none());
        assert!(builtin("zn:0").unwrap().is_err());
        assert!(builtin("zn:x").unwrap().is_err());
    }
}
