//! The invariant by the state-space algorithm: a vector in
//! `V(k) = ⊕ F(1, y_1 y_1* … y_k y_k*)` is pushed through relation openings,
//! circulator powers for every syllable, and relation closings.
//!
//! A relation in progress occupies slot 0 of the state, whose pair
//! `y_0 y_0*` is `b* b` for the relation's simple `b`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::arith::{Matrix, Scalar};
use crate::category::{CategoryData, LinearMap, ObjectWord, SimpleLabel, TensorVec};
use crate::error::{Error, Result};
use crate::eval_global::{f_block, power_word, EvalOptions};
use crate::presentation::Presentation;

/// An element of `V(k)`: for each tuple `(y_1, …, y_k)`, coordinates in the
/// cached basis of `F(1, y_1 y_1* … y_k y_k*)`. Absent tuples are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    level: usize,
    comps: BTreeMap<Vec<SimpleLabel>, Vec<Scalar>>,
}

impl StateVector {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn component(&self, key: &[SimpleLabel]) -> Option<&[Scalar]> {
        self.comps.get(key).map(Vec::as_slice)
    }

    pub fn components(&self) -> impl Iterator<Item = (&[SimpleLabel], &[Scalar])> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v.as_slice()))
    }

    /// Number of nonzero coordinates.
    pub fn nonzero_count(&self) -> usize {
        self.comps.values().flatten().filter(|s| !s.is_zero()).count()
    }
}

/// The word `y_1 y_1* … y_k y_k*`.
pub fn state_word(c: &CategoryData, key: &[SimpleLabel]) -> ObjectWord {
    ObjectWord(key.iter().flat_map(|&y| [y, c.dual(y)]).collect())
}

/// `cycl(a, b, c): F(a, bc) → F(b*, ca*)`,
/// `φ ↦ (λ_{b*} ⊗ id_{ca*}) ∘ (id_{b*} ⊗ φ ⊗ id_{a*}) ∘ (id_{b*} ⊗ Λ_{a*})`.
pub fn cycl(cat: &CategoryData, a: SimpleLabel, b: SimpleLabel, c: SimpleLabel, phi: &Matrix) -> Result<Matrix> {
    let one = ObjectWord::single;
    let e = ObjectWord::empty();
    let (a_s, b_s) = (cat.dual(a), cat.dual(b));
    let f = LinearMap::new(cat, one(a), ObjectWord(vec![b, c]), phi.clone())?;
    let open = cat.whisker(&one(b_s), &cat.cup(a_s)?, &e);
    let mid = cat.whisker(&one(b_s), &f, &one(a_s));
    let close = cat.whisker(&e, &cat.cap(b_s), &ObjectWord(vec![c, a_s]));
    Ok(cat.compose_all(&[&close, &mid, &open])?.mat)
}

/// The inverse of `cycl(a, b, c)`, as `cycl(c*, a*, b) ∘ cycl(b*, c, a*)`.
pub fn cycl_inverse(cat: &CategoryData, a: SimpleLabel, b: SimpleLabel, c: SimpleLabel, phi: &Matrix) -> Result<Matrix> {
    let (a_s, b_s, c_s) = (cat.dual(a), cat.dual(b), cat.dual(c));
    let once = cycl(cat, b_s, c, a_s, phi)?;
    cycl(cat, c_s, a_s, b, &once)
}

/// The circulator `CR(a, b)` on `⊕_x F(a, b x x*)`, in the cached bases.
/// Rows and columns are indexed by `(x, i)` with `i` a basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculatorMatrix {
    pub a: SimpleLabel,
    pub b: SimpleLabel,
    pub index: Vec<(SimpleLabel, usize)>,
    pub mat: Matrix,
}

impl CirculatorMatrix {
    pub fn position(&self, x: SimpleLabel, i: usize) -> Option<usize> {
        self.index.iter().position(|&p| p == (x, i))
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn pow(&self, k: i64) -> Result<CirculatorMatrix> {
        Ok(CirculatorMatrix {
            mat: self.mat.pow(k)?,
            ..self.clone()
        })
    }
}

fn circ_index(c: &CategoryData, a: SimpleLabel, b: SimpleLabel) -> Result<Vec<(SimpleLabel, usize)>> {
    let mut index = Vec::new();
    for x in c.labels() {
        let n = c.hom_dim(a, &ObjectWord(vec![b, x, c.dual(x)]))?;
        index.extend((0..n).map(|i| (x, i)));
    }
    Ok(index)
}

/// Assembles a matrix on `⊕_x F(a, b x x*)` from carrier maps
/// `block(x, z): b x x* → b z z*`.
fn assemble<F>(c: &CategoryData, a: SimpleLabel, b: SimpleLabel, mut block: F) -> Result<CirculatorMatrix>
where
    F: FnMut(SimpleLabel, SimpleLabel) -> Result<Option<Matrix>>,
{
    let index = circ_index(c, a, b)?;
    let mut mat = Matrix::zeros(c.field(), index.len(), index.len());
    for x in c.labels() {
        let hx = c.hom_basis(a, &ObjectWord(vec![b, x, c.dual(x)]))?;
        if hx.is_empty() {
            continue;
        }
        for z in c.labels() {
            let hz = c.hom_basis(a, &ObjectWord(vec![b, z, c.dual(z)]))?;
            if hz.is_empty() {
                continue;
            }
            let Some(k) = block(x, z)? else { continue };
            for (i, e) in hx.basis.iter().enumerate() {
                let ke = k.try_mul(e)?;
                for (j, d) in hz.duals.iter().enumerate() {
                    let v = d.try_mul(&ke)?.get(0, 0).clone();
                    let row = index.iter().position(|&p| p == (z, j)).expect("indexed");
                    let col = index.iter().position(|&p| p == (x, i)).expect("indexed");
                    mat.set(row, col, v);
                }
            }
        }
    }
    Ok(CirculatorMatrix { a, b, index, mat })
}

/// The carrier map of the circulator between the `x` and `z` summands:
/// `Σ_i (cycl(z*, x*, b)(η_i) ⊗ id_{z*}) ∘ (id_x ⊗ η_i*) ∘ π` over a basis
/// `η_i` of `F(z*, x* b)`, where `π: b x x* → x x* b`.
fn circulator_block(c: &CategoryData, b: SimpleLabel, x: SimpleLabel, z: SimpleLabel) -> Result<Option<Matrix>> {
    let (xs, zs) = (c.dual(x), c.dual(z));
    let eta = c.hom_basis(zs, &ObjectWord(vec![xs, b]))?;
    if eta.is_empty() {
        return Ok(None);
    }
    let pi = c.permutation(&ObjectWord(vec![b, x, xs]), &[2, 0, 1]).mat;
    let id_x = Matrix::identity(c.field(), c.dim(x));
    let id_zs = Matrix::identity(c.field(), c.dim(zs));
    let mut acc: Option<Matrix> = None;
    for (e, d) in eta.basis.iter().zip(&eta.duals) {
        let bent = cycl(c, zs, xs, b, e)?;
        let term = bent.kron(&id_zs).try_mul(&id_x.kron(d))?.try_mul(&pi)?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }
    Ok(acc)
}

/// The carrier map of the inverse circulator from the `z` summand back to
/// the `x` summand, undoing each step of [`circulator_block`].
fn inverse_circulator_block(c: &CategoryData, b: SimpleLabel, z: SimpleLabel, x: SimpleLabel) -> Result<Option<Matrix>> {
    let (xs, zs) = (c.dual(x), c.dual(z));
    let theta = c.hom_basis(x, &ObjectWord(vec![b, z]))?;
    if theta.is_empty() {
        return Ok(None);
    }
    let pi_inv = c.permutation(&ObjectWord(vec![x, xs, b]), &[1, 2, 0]).mat;
    let id_x = Matrix::identity(c.field(), c.dim(x));
    let id_zs = Matrix::identity(c.field(), c.dim(zs));
    let mut acc: Option<Matrix> = None;
    for (e, d) in theta.basis.iter().zip(&theta.duals) {
        let unbent = cycl_inverse(c, zs, xs, b, e)?;
        let term = pi_inv.try_mul(&id_x.kron(&unbent))?.try_mul(&d.kron(&id_zs))?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }
    Ok(acc)
}

/// `CR(a, b)` on `⊕_x F(a, b x x*)`.
pub fn circulator(c: &CategoryData, a: SimpleLabel, b: SimpleLabel) -> Result<CirculatorMatrix> {
    for s in [a, b] {
        c.inv_rank(s)?;
    }
    assemble(c, a, b, |x, z| circulator_block(c, b, x, z))
}

/// `CR(a, b)⁻¹`, built from the inverse of every step rather than by
/// matrix inversion.
pub fn circulator_inverse(c: &CategoryData, a: SimpleLabel, b: SimpleLabel) -> Result<CirculatorMatrix> {
    for s in [a, b] {
        c.inv_rank(s)?;
    }
    // block(x, z) here maps the x summand to the z summand
    assemble(c, a, b, |x, z| inverse_circulator_block(c, b, x, z))
}

/// `CR(a, b)^l`; negative powers use [`circulator_inverse`].
pub fn circulator_power(c: &CategoryData, a: SimpleLabel, b: SimpleLabel, l: i64) -> Result<CirculatorMatrix> {
    if l >= 0 {
        circulator(c, a, b)?.pow(l)
    } else {
        circulator_inverse(c, a, b)?.pow(-l)
    }
}

/// `cr(l, b, x, w) = Σ_i ψ_i ∘ (id_{x*} ⊗ f(b, l) ⊗ id_w) ∘ φ_i`, a carrier map
/// `b x x* → b w w*`, summed over a basis `ε_i` of `F(w*, x* b^l)`.
pub fn cr_block(c: &CategoryData, l: i64, b: SimpleLabel, x: SimpleLabel, w: SimpleLabel) -> Result<Option<Matrix>> {
    let (xs, ws) = (c.dual(x), c.dual(w));
    let bl = power_word(c, b, l);
    let target = ObjectWord::single(xs).concat(&bl);
    let eps = c.hom_basis(ws, &target)?;
    if eps.is_empty() {
        return Ok(None);
    }
    let one = ObjectWord::single;
    let e = ObjectWord::empty();
    let f = f_block(c, b, l)?.map;
    // φ head: b x x* → (x* b x)(w* w)
    let rot = c.permutation(&ObjectWord(vec![b, x, xs]), &[1, 2, 0]);
    let head = c.tensor(&rot, &c.cup(w)?);
    let mut acc: Option<Matrix> = None;
    for (eb, ed) in eps.basis.iter().zip(&eps.duals) {
        let up = LinearMap::new(c, one(ws), target.clone(), eb.clone())?;
        let down = LinearMap::new(c, target.clone(), one(ws), ed.clone())?;
        // (x* b x)(w* w) → (x* b x)(x* b^l w)
        let s1 = c.whisker(&ObjectWord(vec![xs, b, x]), &up, &one(w));
        // contract x x* with λ_x: → x* b b^l w
        let s2 = c.whisker(&ObjectWord(vec![xs, b]), &c.cap(x), &bl.concat(&one(w)));
        // id_{x*} ⊗ f(b, l) ⊗ id_w: → x* b^l b w
        let s3 = c.whisker(&one(xs), &f, &one(w));
        // ε_i* on x* b^l: → w* b w
        let s4 = c.whisker(&e, &down, &ObjectWord(vec![b, w]));
        // w* b w → b w w*
        let s5 = c.permutation(&ObjectWord(vec![ws, b, w]), &[2, 0, 1]);
        let term = c.compose_all(&[&s5, &s4, &s3, &s2, &s1, &head])?.mat;
        acc = Some(match acc {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }
    Ok(acc)
}

/// The matrix on `⊕_x F(a, b x x*)` assembled from the maps `cr(l, b, x, w)`;
/// by the power law it equals `CR(a, b)^l`. `l = 0` gives the identity.
pub fn cr_assembly(c: &CategoryData, l: i64, a: SimpleLabel, b: SimpleLabel) -> Result<CirculatorMatrix> {
    if l == 0 {
        let index = circ_index(c, a, b)?;
        let n = index.len();
        return Ok(CirculatorMatrix {
            a,
            b,
            index,
            mat: Matrix::identity(c.field(), n),
        });
    }
    assemble(c, a, b, |x, w| cr_block(c, l, b, x, w))
}

/// `1 ∈ F(1, 1 1 … 1 1) ⊂ V(n)`.
pub fn begin_presentation(c: &CategoryData, n: usize) -> Result<StateVector> {
    let key = vec![0; n];
    let coords = c.coordinates(&state_word(c, &key), &[c.one()])?;
    Ok(StateVector {
        level: n,
        comps: BTreeMap::from([(key, coords)]),
    })
}

/// The trivial-summand coordinate of a state, as a scalar.
pub fn end_presentation(c: &CategoryData, v: &StateVector) -> Result<Scalar> {
    let key = vec![0; v.level];
    match v.comps.get(&key) {
        None => Ok(c.zero()),
        Some(coords) => Ok(c.from_coordinates(&state_word(c, &key), coords)?[0].clone()),
    }
}

/// Adds an interior map between carrier vectors, keyed by state tuple.
fn accumulate(acc: &mut BTreeMap<Vec<SimpleLabel>, Vec<Scalar>>, key: Vec<SimpleLabel>, data: Vec<Scalar>) {
    match acc.get_mut(&key) {
        None => {
            acc.insert(key, data);
        }
        Some(cur) => {
            for (o, x) in cur.iter_mut().zip(data) {
                if !x.is_zero() {
                    *o = &*o + &x;
                }
            }
        }
    }
}

fn to_state(c: &CategoryData, level: usize, carriers: BTreeMap<Vec<SimpleLabel>, Vec<Scalar>>) -> Result<StateVector> {
    let mut comps = BTreeMap::new();
    for (key, data) in carriers {
        if data.iter().all(Scalar::is_zero) {
            continue;
        }
        let coords = c.coordinates(&state_word(c, &key), &data)?;
        comps.insert(key, coords);
    }
    Ok(StateVector { level, comps })
}

/// The state-space evaluator, with its size guard and a cache of
/// circulator powers.
pub struct StateEvaluator<'c> {
    c: &'c CategoryData,
    opts: EvalOptions,
    powers: Mutex<HashMap<(SimpleLabel, SimpleLabel, i64), Arc<CirculatorMatrix>>>,
}

impl<'c> StateEvaluator<'c> {
    pub fn new(c: &'c CategoryData, opts: EvalOptions) -> StateEvaluator<'c> {
        StateEvaluator {
            c,
            opts,
            powers: Mutex::new(HashMap::new()),
        }
    }

    fn power(&self, a: SimpleLabel, b: SimpleLabel, s: i64) -> Result<Arc<CirculatorMatrix>> {
        if let Some(m) = self.powers.lock().expect("cache lock").get(&(a, b, s)) {
            return Ok(m.clone());
        }
        let m = Arc::new(circulator_power(self.c, a, b, s)?);
        self.powers.lock().expect("cache lock").insert((a, b, s), m.clone());
        Ok(m)
    }

    fn guard(&self, level: usize) -> Result<()> {
        let dmax = self.c.labels().map(|b| self.c.dim(b)).max().unwrap_or(1) as u128;
        let needed = (0..2 * level).fold(1u128, |acc, _| acc.saturating_mul(dmax));
        self.opts.guard(|| format!("state space with {level} pairs"), needed)
    }

    /// `⊕_b r(b)² m_{b*}`: prepends the pair `b* b` via `Λ_b`.
    pub fn begin_relation(&self, v: &StateVector) -> Result<StateVector> {
        let c = self.c;
        self.guard(v.level + 1)?;
        let mut out = BTreeMap::new();
        for (key, coords) in &v.comps {
            let phi = c.from_coordinates(&state_word(c, key), coords)?;
            for b in c.labels() {
                let r = c.rank_of(b)?;
                let weight = &r * &r;
                let cup = c.cup(b)?.mat;
                let data: Vec<Scalar> = cup
                    .entries()
                    .iter()
                    .flat_map(|u| {
                        let weight = &weight;
                        phi.iter().map(move |p| if u.is_zero() || p.is_zero() { c.zero() } else { &(u * p) * weight })
                    })
                    .collect();
                let mut new_key = vec![c.dual(b)];
                new_key.extend_from_slice(key);
                accumulate(&mut out, new_key, data);
            }
        }
        to_state(c, v.level + 1, out)
    }

    /// `⊕_b r(b)⁻¹ d_b`: contracts the leading pair `b* b` with `λ_{b*}`.
    pub fn end_relation(&self, v: &StateVector) -> Result<StateVector> {
        let c = self.c;
        if v.level == 0 {
            return Err(Error::IndexOutOfRange("no open relation to end".into()));
        }
        let mut out = BTreeMap::new();
        for (key, coords) in &v.comps {
            let bs = key[0];
            let b = c.dual(bs);
            let word = state_word(c, key);
            let phi = TensorVec::new(word.dims(c), c.from_coordinates(&word, coords)?);
            let cap = c.cap(bs).mat.scale(&c.inv_rank(b)?);
            let rest = phi.apply(0, 2, &cap, &[]);
            accumulate(&mut out, key[1..].to_vec(), rest.data);
        }
        to_state(c, v.level - 1, out)
    }

    /// The action of a syllable `y_i^s` of the open relation: move the pair
    /// of generator `i` next to `b`, split it off with `∇⁻¹`, apply
    /// `CR(a, b)^s`, reassemble with `∇` and move the pair back.
    pub fn apply_factor(&self, v: &StateVector, i: usize, s: i64) -> Result<StateVector> {
        let c = self.c;
        if v.level == 0 || i + 1 >= v.level {
            return Err(Error::IndexOutOfRange(format!("generator {i} at state level {}", v.level)));
        }
        if s == 0 {
            return Ok(v.clone());
        }
        let slot = i + 1;
        // word positions: 0 b*, 1 b, then pairs; the pair of `slot` goes to 2, 3
        let len = 2 * v.level;
        let mut perm: Vec<usize> = (0..len).collect();
        for (p, t) in perm.iter_mut().enumerate().take(2 * slot).skip(2) {
            *t = p + 2;
        }
        perm[2 * slot] = 2;
        perm[2 * slot + 1] = 3;
        let mut back = vec![0; len];
        for (p, &t) in perm.iter().enumerate() {
            back[t] = p;
        }
        let mut out = BTreeMap::new();
        for (key, coords) in &v.comps {
            let b = c.dual(key[0]);
            let x = key[slot];
            let word = state_word(c, key);
            let phi = TensorVec::new(word.dims(c), c.from_coordinates(&word, coords)?).permute(&perm);
            for a in c.labels() {
                let hx = c.hom_basis(a, &ObjectWord(vec![b, x, c.dual(x)]))?;
                if hx.is_empty() {
                    continue;
                }
                let cr = self.power(a, b, s)?;
                // ∇⁻¹: the components ψ_k ∈ F(1, b* a rest)
                let psis: Vec<TensorVec> = hx.duals.iter().map(|d| phi.apply(1, 3, d, &[c.dim(a)])).collect();
                for z in c.labels() {
                    let hz = c.hom_basis(a, &ObjectWord(vec![b, z, c.dual(z)]))?;
                    let zdims = [c.dim(b), c.dim(z), c.dim(z)];
                    let mut acc: Option<TensorVec> = None;
                    for (j, e) in hz.basis.iter().enumerate() {
                        let row = cr.position(z, j).expect("indexed");
                        // coefficient of ψ'_{(z, j)} = Σ_k CR^s[(z, j), (x, k)] ψ_k
                        let mut psi: Option<TensorVec> = None;
                        for (k, p) in psis.iter().enumerate() {
                            let coef = cr.mat.get(row, cr.position(x, k).expect("indexed"));
                            if coef.is_zero() {
                                continue;
                            }
                            let scaled = TensorVec::new(p.dims.clone(), p.data.iter().map(|d| d * coef).collect());
                            psi = Some(match psi {
                                None => scaled,
                                Some(q) => add(&q, &scaled),
                            });
                        }
                        let Some(psi) = psi else { continue };
                        // ∇: reinsert ε_j(a, b z z*)
                        let t = psi.apply(1, 1, e, &zdims);
                        acc = Some(match acc {
                            None => t,
                            Some(q) => add(&q, &t),
                        });
                    }
                    if let Some(t) = acc {
                        let mut new_key = key.clone();
                        new_key[slot] = z;
                        accumulate(&mut out, new_key, t.permute(&back).data);
                    }
                }
            }
        }
        to_state(c, v.level, out)
    }

    /// `Q(P)`: begin presentation; per relator, begin relation, apply every
    /// syllable in order, end relation; end presentation.
    pub fn evaluate(&self, p: &Presentation) -> Result<Scalar> {
        let c = self.c;
        self.guard(p.generator_count() + usize::from(p.relator_count() > 0))?;
        let mut v = begin_presentation(c, p.generator_count())?;
        for r in p.relators() {
            v = self.begin_relation(&v)?;
            for s in r.syllables() {
                v = self.apply_factor(&v, s.gen, s.exp)?;
            }
            v = self.end_relation(&v)?;
        }
        end_presentation(c, &v)
    }
}

fn add(a: &TensorVec, b: &TensorVec) -> TensorVec {
    TensorVec::new(a.dims.clone(), a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect())
}

pub fn begin_relation(c: &CategoryData, v: &StateVector) -> Result<StateVector> {
    StateEvaluator::new(c, EvalOptions::default()).begin_relation(v)
}

pub fn end_relation(c: &CategoryData, v: &StateVector) -> Result<StateVector> {
    StateEvaluator::new(c, EvalOptions::default()).end_relation(v)
}

pub fn apply_factor(c: &CategoryData, v: &StateVector, i: usize, s: i64) -> Result<StateVector> {
    StateEvaluator::new(c, EvalOptions::default()).apply_factor(v, i, s)
}

/// `Q(P)` by the state-space algorithm, with the default size guard.
pub fn q_invariant_state(p: &Presentation, c: &CategoryData) -> Result<Scalar> {
    StateEvaluator::new(c, EvalOptions::default()).evaluate(p)
}

pub fn q_invariant_state_with(p: &Presentation, c: &CategoryData, opts: &EvalOptions) -> Result<Scalar> {
    StateEvaluator::new(c, *opts).evaluate(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::builtin;
    use crate::eval_global::q_invariant_global;
    use crate::presentation::parse_presentation;

    fn cat(name: &str) -> CategoryData {
        builtin(name).unwrap().unwrap()
    }

    #[test]
    fn cycl_has_order_three() {
        let c = cat("rep-s3-q");
        for a in c.labels() {
            for b in c.labels() {
                for d in c.labels() {
                    let h = c.hom_basis(a, &ObjectWord(vec![b, d])).unwrap();
                    for e in &h.basis {
                        let once = cycl(&c, a, b, d, e).unwrap();
                        assert_eq!(&cycl_inverse(&c, a, b, d, &once).unwrap(), e);
                    }
                }
            }
        }
    }

    #[test]
    fn circulator_is_invertible() {
        for name in ["rep-s3-q", "zn:3"] {
            let c = cat(name);
            for a in c.labels() {
                for b in c.labels() {
                    let cr = circulator(&c, a, b).unwrap();
                    let inv = circulator_inverse(&c, a, b).unwrap();
                    assert!((&cr.mat * &inv.mat).is_identity(), "{name} a={a} b={b}");
                    assert!(circulator_power(&c, a, b, 0).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn power_law() {
        let c = cat("rep-s3-q");
        for a in c.labels() {
            for b in c.labels() {
                for l in -2..=2 {
                    let lhs = circulator_power(&c, a, b, l).unwrap();
                    assert_eq!(lhs.mat, cr_assembly(&c, l, a, b).unwrap().mat, "a={a} b={b} l={l}");
                }
            }
        }
    }

    #[test]
    fn begin_and_end_presentation() {
        let c = cat("zn:3");
        assert!(end_presentation(&c, &begin_presentation(&c, 0).unwrap()).unwrap().is_one());
        let v = begin_presentation(&c, 2).unwrap();
        assert_eq!(v.nonzero_count(), 1);
        assert!(v.component(&[0, 0]).is_some());
        assert!(end_presentation(&c, &v).unwrap().is_one());
    }

    #[test]
    fn begin_relation_weights() {
        let c = cat("zn:2");
        let v = begin_relation(&c, &begin_presentation(&c, 1).unwrap()).unwrap();
        assert_eq!(v.level(), 2);
        assert_eq!(v.components().count(), 2);
        for b in c.labels() {
            let coords = v.component(&[c.dual(b), 0]).unwrap();
            let word = state_word(&c, &[c.dual(b), 0]);
            let carrier = c.from_coordinates(&word, coords).unwrap();
            assert!(carrier.iter().all(|s| s.is_zero() || s.is_one()));
        }
    }

    #[test]
    fn open_then_close_multiplies_by_sum_of_squared_ranks() {
        let c = cat("rep-s3-q");
        let v = begin_presentation(&c, 1).unwrap();
        let w = end_relation(&c, &begin_relation(&c, &v).unwrap()).unwrap();
        assert_eq!(end_presentation(&c, &w).unwrap(), c.int(6));
    }

    #[test]
    fn factors_compose() {
        let c = cat("rep-s3-q");
        let v = begin_relation(&c, &begin_presentation(&c, 2).unwrap()).unwrap();
        let v = apply_factor(&c, &v, 0, 1).unwrap();
        let a = apply_factor(&c, &apply_factor(&c, &v, 1, 2).unwrap(), 1, -1).unwrap();
        assert_eq!(a, apply_factor(&c, &v, 1, 1).unwrap());
        let back = apply_factor(&c, &apply_factor(&c, &v, 1, 2).unwrap(), 1, -2).unwrap();
        assert_eq!(back, v);
        assert_eq!(apply_factor(&c, &v, 1, 0).unwrap(), v);
    }

    #[test]
    fn agrees_with_global_on_examples() {
        for name in ["zn:2", "zn:3", "rep-s3-q"] {
            let c = cat(name);
            for text in ["<x|x>", "<x|x^2>", "<x,y|xyx^-1y>", "<x,y|x^2y^-2x^-1y>", "< | >", "<x | x x^-1>"] {
                let p = parse_presentation(text).unwrap();
                assert_eq!(q_invariant_state(&p, &c).unwrap(), q_invariant_global(&p, &c).unwrap(), "{name} {text}");
            }
        }
    }
}
