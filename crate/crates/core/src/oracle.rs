//! Independent checks for the evaluators. Nothing here builds morphisms
//! through the category calculus: the congruence count is integer
//! arithmetic, the cycle trace recomputes invariants from the generator
//! matrices, and the group count enumerates homomorphisms into a finite group.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{Matrix, Scalar};
use crate::category::{CategoryData, SimpleLabel};
use crate::error::{Error, Result};
use crate::presentation::{exponent_matrix, Presentation};

/// Largest enumeration any oracle performs.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn enumeration(base: u128, exp: usize) -> Result<u128> {
    let mut n = 1u128;
    for _ in 0..exp {
        n = n.saturating_mul(base);
    }
    if n > ENUMERATION_LIMIT {
        Err(Error::EnumerationTooLarge(n))
    } else {
        Ok(n)
    }
}

/// `#{b ∈ (Z_n)^m : Σ_j E[k][j] b_j ≡ 0 (mod n) for every generator k}`.
pub fn zn_count(p: &Presentation, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("modulus must be at least 1".into()));
    }
    let m = p.relator_count();
    let total = enumeration(n as u128, m)?;
    let e = exponent_matrix(p);
    let n = n as i64;
    let mut b = vec![0i64; m];
    let mut count = 0;
    for _ in 0..total {
        if e.iter().all(|row| row.iter().zip(&b).map(|(x, y)| x * y).sum::<i64>().rem_euclid(n) == 0) {
            count += 1;
        }
        for i in (0..m).rev() {
            b[i] += 1;
            if b[i] < n {
                break;
            }
            b[i] = 0;
        }
    }
    Ok(count)
}

/// `#{b ∈ Σ : b = b*}`.
pub fn selfdual_count(c: &CategoryData) -> usize {
    c.labels().filter(|&b| c.dual(b) == b).count()
}

/// The trace of the cyclic factor shift `(1, 2, …, k)` on the invariant
/// vectors of `b^{⊗k}`.
///
/// Invariants are the common fixed vectors of all generators (and, in a
/// graded category, exist only in total grade 0), found as the nullspace of
/// the stacked `ρ(g) − I`. The shift is then read in the echelon basis of
/// that nullspace.
pub fn brute_cycle_trace(c: &CategoryData, b: SimpleLabel, k: usize, max_carrier: u128) -> Result<Scalar> {
    let d = c.dim(b);
    let dim = (d as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if dim.saturating_mul(dim) > max_carrier {
        return Err(Error::SizeGuard {
            what: format!("cycle trace on {}^{k}", c.simple(b).name),
            needed: dim.saturating_mul(dim),
            limit: max_carrier,
        });
    }
    if let Some(n) = c.grading() {
        if (c.simple(b).grade as u128 * k as u128) % n as u128 != 0 {
            return Ok(c.zero());
        }
    }
    let dim = dim as usize;
    let mut blocks = Vec::new();
    for g in 0..c.generator_count() {
        let rho = (0..k).fold(Matrix::identity(c.field(), 1), |acc, _| acc.kron(&c.simple(b).generators[g]));
        blocks.push(&rho - &Matrix::identity(c.field(), dim));
    }
    let system = if blocks.is_empty() {
        Matrix::zeros(c.field(), 0, dim)
    } else {
        Matrix::vstack(c.field(), &blocks)?
    };
    let (_, pivots) = system.rref();
    let free: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let basis = system.nullspace();
    // shift: digit string (i_1 … i_k) ↦ (i_k, i_1, …, i_{k-1}), reading the
    // first factor as most significant
    let shift = |idx: usize| -> usize {
        if k == 0 {
            return idx;
        }
        let last = idx % d;
        last * (dim / d) + idx / d
    };
    let mut trace = c.zero();
    for (v, &f) in basis.iter().zip(&free) {
        // (σ v)[f] = v[σ⁻¹(f)]; σ is a permutation so find the preimage.
        let src = (0..dim).find(|&i| shift(i) == f).expect("permutation");
        trace = &trace + &v[src];
    }
    Ok(trace)
}

/// A small finite group given by its elements as permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    elements: Vec<Vec<u8>>,
}

impl FiniteGroup {
    pub fn cyclic(n: usize) -> FiniteGroup {
        let elements = (0..n).map(|s| (0..n).map(|i| ((i + s) % n) as u8).collect()).collect();
        FiniteGroup {
            name: format!("Z{n}"),
            elements,
        }
    }

    pub fn symmetric3() -> FiniteGroup {
        let mut elements = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    if a != b && b != c && a != c {
                        elements.push(vec![a, b, c]);
                    }
                }
            }
        }
        FiniteGroup {
            name: "S3".into(),
            elements,
        }
    }

    /// The group whose representation category a builtin realizes.
    pub fn for_builtin(name: &str) -> Option<FiniteGroup> {
        match name {
            "rep-s3-q" => Some(FiniteGroup::symmetric3()),
            "rep-z2-q" => Some(FiniteGroup::cyclic(2)),
            "rep-z3-q" => Some(FiniteGroup::cyclic(3)),
            _ => name
                .strip_prefix("zn:")
                .and_then(|n| n.parse().ok())
                .filter(|&n: &usize| n >= 1)
                .map(FiniteGroup::cyclic),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        // (a ∘ b)(i) = a(b(i))
        let (pa, pb) = (&self.elements[a], &self.elements[b]);
        let prod: Vec<u8> = pb.iter().map(|&i| pa[i as usize]).collect();
        self.index(&prod)
    }

    fn inv(&self, a: usize) -> usize {
        let pa = &self.elements[a];
        let mut q = vec![0u8; pa.len()];
        for (i, &x) in pa.iter().enumerate() {
            q[x as usize] = i as u8;
        }
        self.index(&q)
    }

    fn index(&self, perm: &[u8]) -> usize {
        self.elements.iter().position(|e| e == perm).expect("closed under products")
    }

    fn identity(&self) -> usize {
        self.elements.iter().position(|e| e.iter().enumerate().all(|(i, &x)| i == x as usize)).expect("identity")
    }

    /// `|Hom(π(P), G)|`, by enumerating generator images.
    pub fn hom_count(&self, p: &Presentation) -> Result<u64> {
        let n = p.generator_count();
        let g = self.order();
        let total = enumeration(g as u128, n)?;
        let e = self.identity();
        let inverse: Vec<usize> = (0..g).map(|a| self.inv(a)).collect();
        let table: Vec<Vec<usize>> = (0..g).map(|a| (0..g).map(|b| self.mul(a, b)).collect()).collect();
        let power = |a: usize, k: i64| -> usize {
            let base = if k < 0 { inverse[a] } else { a };
            (0..k.unsigned_abs()).fold(e, |acc, _| table[acc][base])
        };
        let mut images = vec![0usize; n];
        let mut count = 0;
        for _ in 0..total {
            let ok = p.relators().iter().all(|r| {
                r.syllables().iter().fold(e, |acc, s| table[acc][power(images[s.gen], s.exp)]) == e
            });
            if ok {
                count += 1;
            }
            for i in (0..n).rev() {
                images[i] += 1;
                if images[i] < g {
                    break;
                }
                images[i] = 0;
            }
        }
        Ok(count)
    }

    /// `|Hom(π(P), G)| / |G|^{n − m}`, the value of the invariant over the
    /// representations of `G` in characteristic zero.
    pub fn invariant(&self, p: &Presentation) -> Result<BigRational> {
        let count = BigRational::from_integer(BigInt::from(self.hom_count(p)?));
        let g = BigRational::from_integer(BigInt::from(self.order()));
        let e = p.generator_count() as i32 - p.relator_count() as i32;
        Ok(count / num_traits::Pow::pow(&g, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::builtin;
    use crate::presentation::parse_presentation;

    fn p(s: &str) -> Presentation {
        parse_presentation(s).unwrap()
    }

    #[test]
    fn congruence_counts() {
        assert_eq!(zn_count(&p("<x | x^2>"), 4).unwrap(), 2);
        assert_eq!(zn_count(&p("<x,y | xyx^-1y>"), 3).unwrap(), 1);
        assert_eq!(zn_count(&p("<x | x x^-1>"), 5).unwrap(), 5);
        assert!(matches!(zn_count(&p("<x | x, x, x, x, x, x, x, x, x>"), 7), Err(Error::EnumerationTooLarge(_))));
    }

    #[test]
    fn self_dual_counts() {
        let count = |n: &str| selfdual_count(&builtin(n).unwrap().unwrap());
        assert_eq!(count("zn:4"), 2);
        assert_eq!(count("zn:5"), 1);
        assert_eq!(count("rep-s3-q"), 3);
    }

    #[test]
    fn cycle_traces() {
        let s3 = builtin("rep-s3-q").unwrap().unwrap();
        for k in 1..5 {
            assert!(brute_cycle_trace(&s3, 0, k, 1 << 20).unwrap().is_one());
        }
        // std ⊗ std has one invariant, the symmetric form
        assert!(brute_cycle_trace(&s3, 2, 2, 1 << 20).unwrap().is_one());
        // sign ⊗ sign ⊗ sign has none
        assert!(brute_cycle_trace(&s3, 1, 3, 1 << 20).unwrap().is_zero());
        for n in 2..7u64 {
            let c = builtin(&format!("zn:{n}")).unwrap().unwrap();
            for b in c.labels() {
                let t = brute_cycle_trace(&c, b, 2, 1 << 20).unwrap();
                assert_eq!(t.is_one(), (2 * b as u64) % n == 0);
            }
        }
    }

    #[test]
    fn group_counts() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.hom_count(&p("<x | x^2>")).unwrap(), 4);
        assert_eq!(s3.hom_count(&p("<x | x^3>")).unwrap(), 3);
        assert_eq!(s3.hom_count(&p("<x,y | xyx^-1y^-1>")).unwrap(), 18);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.hom_count(&p("<x | x^2>")).unwrap(), 2);
        assert_eq!(s3.invariant(&p("<x,y | >")).unwrap(), BigRational::from_integer(BigInt::from(1)));
    }
}
