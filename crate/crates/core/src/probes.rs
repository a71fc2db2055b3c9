//! Data for the open conjectures about the invariant. Nothing here asserts
//! that a conjecture holds; the functions compute both sides and report.

use crate::arith::Scalar;
use crate::category::{CategoryData, LinearMap, ObjectWord, SimpleLabel};
use crate::error::{Error, Result};
use crate::eval_global::{q_invariant_global_with, EvalOptions};
use crate::eval_state::circulator;
use crate::presentation::{Presentation, Word};

/// `dims[a][b][c] = dim F(a, bc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub names: Vec<String>,
    pub dims: Vec<Vec<Vec<usize>>>,
}

pub fn dimension_report(c: &CategoryData) -> Result<DimensionTable> {
    let mut dims = vec![vec![vec![0; c.len()]; c.len()]; c.len()];
    for a in c.labels() {
        for b in c.labels() {
            for d in c.labels() {
                dims[a][b][d] = c.hom_dim(a, &ObjectWord(vec![b, d]))?;
            }
        }
    }
    Ok(DimensionTable {
        names: c.simples().iter().map(|s| s.name.clone()).collect(),
        dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjecture1bReport {
    /// `(b, r(b)⁻¹ Σ_c dim(b, c c*))` for every simple `b`.
    pub values: Vec<(SimpleLabel, Scalar)>,
    /// `|Σ|`, the value the conjecture compares against.
    pub simple_count: usize,
}

pub fn conjecture1b_probe(c: &CategoryData) -> Result<Conjecture1bReport> {
    let mut values = Vec::with_capacity(c.len());
    for b in c.labels() {
        let mut total = 0i64;
        for x in c.labels() {
            total += c.hom_dim(b, &ObjectWord(vec![x, c.dual(x)]))? as i64;
        }
        values.push((b, &c.inv_rank(b)? * &c.int(total)));
    }
    Ok(Conjecture1bReport {
        values,
        simple_count: c.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculatorOrder {
    pub a: SimpleLabel,
    pub b: SimpleLabel,
    /// `dim ⊕_x F(a, b x x*)`.
    pub size: usize,
    /// The least `k ≤ bound` with `CR(a, b)^k = id`, if any.
    pub order: Option<u64>,
}

/// Orders of all circulators, by repeated exact multiplication.
pub fn circulator_order_probe(c: &CategoryData, bound: u64) -> Result<Vec<CirculatorOrder>> {
    let mut out = Vec::new();
    for a in c.labels() {
        for b in c.labels() {
            let cr = circulator(c, a, b)?;
            let mut power = cr.mat.clone();
            let mut order = None;
            for k in 1..=bound {
                if power.is_identity() {
                    order = Some(k);
                    break;
                }
                power = power.try_mul(&cr.mat)?;
            }
            out.push(CirculatorOrder {
                a,
                b,
                size: cr.index.len(),
                order,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    /// `P` plus a generator `y` and the relator `x_k y x_k⁻¹ y⁻¹`.
    pub with_commutator: Presentation,
    /// `P` plus the relator `x_k`.
    pub with_generator_killed: Presentation,
    /// `Q(P′)`.
    pub lhs: Scalar,
    /// `|Σ| · Q(P″)`.
    pub rhs: Scalar,
    pub equal: bool,
}

pub fn corollary_presentations(p: &Presentation, k: usize) -> Result<(Presentation, Presentation)> {
    if k >= p.generator_count() {
        return Err(Error::IndexOutOfRange(format!("generator {k} of {}", p.generator_count())));
    }
    let y = p.generator_count();
    let mut gens = p.generators().to_vec();
    gens.push(p.fresh_name());
    let mut rels = p.relators().to_vec();
    rels.push(Word::from_pairs(&[(k, 1), (y, 1), (k, -1), (y, -1)]));
    let prime = Presentation::new(gens, rels)?;
    let mut rels = p.relators().to_vec();
    rels.push(Word::from_pairs(&[(k, 1)]));
    let double_prime = Presentation::new(p.generators().to_vec(), rels)?;
    Ok((prime, double_prime))
}

/// Evaluates both sides of `Q(P′) = |Σ| Q(P″)`; a mismatch is reported, not
/// raised.
pub fn corollary_probe(p: &Presentation, c: &CategoryData, k: usize, opts: &EvalOptions) -> Result<CorollaryReport> {
    let (prime, double_prime) = corollary_presentations(p, k)?;
    let lhs = q_invariant_global_with(&prime, c, opts)?;
    let rhs = &c.int(c.len() as i64) * &q_invariant_global_with(&double_prime, c, opts)?;
    Ok(CorollaryReport {
        equal: lhs == rhs,
        with_commutator: prime,
        with_generator_killed: double_prime,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTraceEntry {
    pub w: SimpleLabel,
    /// `Tr_{b^k → w}(σ)`, an endomorphism of `(b, w)`.
    pub value: LinearMap,
    pub is_zero: bool,
    /// Set for `w = 1`: whether the value is `id_b`.
    pub is_identity: Option<bool>,
}

/// For `σ = (1, 2, …, k+1)` acting on `b^{k+1}`, the partial traces of the
/// last `k` factors to every simple `w`.
pub fn conjecture2_probe(c: &CategoryData, b: SimpleLabel, k: usize, opts: &EvalOptions) -> Result<Vec<CycleTraceEntry>> {
    let word = ObjectWord(vec![b; k + 1]);
    let d = word.dim(c) as u128;
    opts.guard(|| format!("cycle on {}^{}", c.simple(b).name, k + 1), d.saturating_mul(d))?;
    let perm: Vec<usize> = (0..=k).map(|i| (i + 1) % (k + 1)).collect();
    let sigma = c.permutation(&word, &perm);
    let mut out = Vec::with_capacity(c.len());
    for w in c.labels() {
        let value = c.partial_trace(&sigma, 1, k, w)?;
        let is_zero = value.mat.is_zero();
        let is_identity = (w == 0).then(|| value.mat.is_identity());
        out.push(CycleTraceEntry {
            w,
            value,
            is_zero,
            is_identity,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::builtin;
    use crate::presentation::parse_presentation;

    fn cat(name: &str) -> CategoryData {
        builtin(name).unwrap().unwrap()
    }

    #[test]
    fn dimensions() {
        let c = cat("zn:4");
        let t = dimension_report(&c).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for d in 0..4 {
                    assert_eq!(t.dims[a][b][d], usize::from(a == (b + d) % 4));
                }
            }
        }
        let s3 = cat("rep-s3-q");
        let t = dimension_report(&s3).unwrap();
        assert_eq!(t.dims[2][2][2], 1);
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    assert_eq!(t.dims[a][b][d], t.dims[a][d][b]);
                }
            }
        }
    }

    #[test]
    fn conjecture1b_values() {
        for name in ["zn:5", "rep-s3-q", "rep-z2-q"] {
            let c = cat(name);
            let r = conjecture1b_probe(&c).unwrap();
            assert_eq!(r.values[0].1, c.int(c.len() as i64));
            if name == "zn:5" {
                assert!(r.values[1..].iter().all(|(_, v)| v.is_zero()));
            }
        }
    }

    #[test]
    fn circulator_orders_are_exact() {
        let c = cat("zn:2");
        for o in circulator_order_probe(&c, 64).unwrap() {
            let k = o.order.expect("small order") as i64;
            assert!(circulator(&c, o.a, o.b).unwrap().pow(k).unwrap().is_identity());
        }
    }

    #[test]
    fn corollary_presentations_round_trip() {
        let p = parse_presentation("<x | x^2>").unwrap();
        let (a, b) = corollary_presentations(&p, 0).unwrap();
        assert_eq!(a.to_string(), "<x,s0 | x^2, x s0 x^-1 s0^-1>");
        assert_eq!(b.to_string(), "<x | x^2, x>");
        for q in [&a, &b] {
            assert_eq!(&parse_presentation(&q.to_string()).unwrap(), q);
        }
        let r = corollary_probe(&p, &cat("rep-s3-q"), 0, &EvalOptions::default()).unwrap();
        assert_eq!(r.equal, r.lhs == r.rhs);
    }

    #[test]
    fn unit_cycle_traces() {
        let c = cat("rep-s3-q");
        let t = conjecture2_probe(&c, 0, 3, &EvalOptions::default()).unwrap();
        assert_eq!(t[0].is_identity, Some(true));
        assert!(t[1..].iter().all(|e| e.is_zero));
        for e in conjecture2_probe(&c, 2, 2, &EvalOptions::default()).unwrap() {
            assert_eq!(e.value.dom, ObjectWord(vec![2, e.w]));
        }
    }
}
