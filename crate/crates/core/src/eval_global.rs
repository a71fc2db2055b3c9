//! The invariant by its global definition: relator morphisms built from
//! open blocks `f(b, l)`, regrouped by generator and traced to the unit.

use rayon::prelude::*;

use crate::arith::{Matrix, Scalar};
use crate::category::{CategoryData, LinearMap, ObjectWord, SimpleLabel, TensorVec};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

/// Default bound on the number of matrix entries an evaluation may build.
pub const DEFAULT_MAX_CARRIER: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest number of matrix (or vector) entries any single step may use.
    pub max_carrier: u128,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_carrier: DEFAULT_MAX_CARRIER,
        }
    }
}

impl EvalOptions {
    pub(crate) fn guard(&self, what: impl FnOnce() -> String, needed: u128) -> Result<()> {
        if needed > self.max_carrier {
            Err(Error::SizeGuard {
                what: what(),
                needed,
                limit: self.max_carrier,
            })
        } else {
            Ok(())
        }
    }
}

/// An open morphism: a map with one domain factor marked `in` and one
/// codomain factor marked `out`, through which blocks are chained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenBlock {
    pub map: LinearMap,
    pub input: usize,
    pub output: usize,
}

impl OpenBlock {
    /// An open block whose `in` is the first domain factor and whose `out` is
    /// the last codomain factor, the shape every block here has.
    fn front_to_back(map: LinearMap) -> OpenBlock {
        let output = map.cod.len() - 1;
        OpenBlock {
            map,
            input: 0,
            output,
        }
    }

    fn is_front_to_back(&self) -> bool {
        self.input == 0 && !self.map.cod.is_empty() && self.output == self.map.cod.len() - 1
    }
}

/// `b^l`: `l` copies of `b`, or `|l|` copies of `b*` when `l < 0`.
pub fn power_word(c: &CategoryData, b: SimpleLabel, l: i64) -> ObjectWord {
    let letter = if l < 0 { c.dual(b) } else { b };
    ObjectWord(vec![letter; l.unsigned_abs() as usize])
}

/// `R(b) = b^{l_1} b^{l_2} … b^{l_k}`.
pub fn relator_word(c: &CategoryData, r: &Word, b: SimpleLabel) -> ObjectWord {
    ObjectWord(
        r.syllables()
            .iter()
            .flat_map(|s| power_word(c, b, s.exp).0)
            .collect(),
    )
}

/// The reversal of an open block `F: (a, A') → (B', c)`: the block
/// `(c*, A') → (B', a*)` obtained by bending the `in` and `out` strands.
pub fn reverse(c: &CategoryData, f: &OpenBlock) -> Result<OpenBlock> {
    if !f.is_front_to_back() || f.map.dom.is_empty() {
        return Err(Error::WordMismatch("reverse needs an in-first, out-last block".into()));
    }
    let dom = &f.map.dom;
    let cod = &f.map.cod;
    let a = dom.0[0];
    let cl = cod.0[cod.len() - 1];
    let a_rest = dom.sub(1, dom.len() - 1);
    let b_rest = cod.sub(0, cod.len() - 1);
    let (a_s, c_s) = (c.dual(a), c.dual(cl));
    let one = |x| ObjectWord::single(x);
    let e = ObjectWord::empty();

    // (c*, A') → (c*, a, a*, A')
    let open = c.whisker(&one(c_s), &c.cup(a_s)?, &a_rest);
    // (c*, a, a*, A') → (c*, a, A', a*)
    let k = a_rest.len();
    let mut perm: Vec<usize> = (0..k + 3).collect();
    perm[2] = k + 2;
    for (i, p) in perm.iter_mut().enumerate().skip(3) {
        *p = i - 1;
    }
    let shuffle_in = c.permutation(&open.cod, &perm);
    // (c*, a, A', a*) → (c*, B', c, a*)
    let apply = c.whisker(&one(c_s), &f.map, &one(a_s));
    // (c*, B', c, a*) → (c*, c, B', a*)
    let j = b_rest.len();
    let mut perm: Vec<usize> = (0..j + 3).collect();
    for p in perm.iter_mut().take(j + 1).skip(1) {
        *p += 1;
    }
    perm[j + 1] = 1;
    let shuffle_out = c.permutation(&apply.cod, &perm);
    // (c*, c, B', a*) → (B', a*)
    let close = c.whisker(&e, &c.cap(c_s), &b_rest.concat(&one(a_s)));
    let map = c.compose_all(&[&close, &shuffle_out, &apply, &shuffle_in, &open])?;
    Ok(OpenBlock::front_to_back(map))
}

/// `f(b, l)`: the identity of `b^{l+1}` for `l > 0`, and the reversal of
/// `f(b*, |l|)` for `l < 0`, acting `(b, b*^{|l|}) → (b*^{|l|}, b)`.
pub fn f_block(c: &CategoryData, b: SimpleLabel, l: i64) -> Result<OpenBlock> {
    match l {
        0 => Err(Error::ZeroExponent),
        l if l > 0 => Ok(OpenBlock::front_to_back(
            c.identity(&ObjectWord(vec![b; l as usize + 1])),
        )),
        l => reverse(c, &f_block(c, c.dual(b), -l)?),
    }
}

/// `r(b) · f(b, l_1) ∘_b f(b, l_2) ∘_b … ∘_b f(b, l_k)`, i.e. `[R, b]°`:
/// `(b, R(b)) → (R(b), b)`. For the empty word this is `r(b) id_b`.
pub fn open_relator(c: &CategoryData, r: &Word, b: SimpleLabel) -> Result<OpenBlock> {
    let exps: Vec<i64> = r.syllables().iter().map(|s| s.exp).collect();
    open_chain(c, b, &exps)
}

/// The open chain of blocks `f(b, l)` for the given exponents, scaled by
/// `r(b)`; the word need not be reduced.
pub fn open_chain(c: &CategoryData, b: SimpleLabel, exps: &[i64]) -> Result<OpenBlock> {
    let bw = ObjectWord::single(b);
    let mut acc = c.identity(&bw);
    let mut done = ObjectWord::empty();
    for &l in exps {
        let f = f_block(c, b, l)?;
        let body = power_word(c, b, l);
        // acc: (b, done) → (done, b) becomes (b, done, body) → (done, body, b).
        let widened = c.whisker(&ObjectWord::empty(), &acc, &body);
        let step = c.whisker(&done, &f.map, &ObjectWord::empty());
        acc = c.compose(&step, &widened)?;
        done = done.concat(&body);
    }
    Ok(OpenBlock::front_to_back(acc.scale(&c.rank_of(b)?)))
}

/// Connects the `out` end of a front-to-back block to its `in` end.
pub fn close(c: &CategoryData, f: &OpenBlock) -> Result<LinearMap> {
    if !f.is_front_to_back() || f.map.dom.is_empty() || f.map.dom.0[0] != f.map.cod.0[f.output] {
        return Err(Error::WordMismatch("closure needs matching in and out ends".into()));
    }
    let dom = f.map.dom.sub(1, f.map.dom.len() - 1);
    let cod = f.map.cod.sub(0, f.map.cod.len() - 1);
    let d = c.dim(f.map.dom.0[0]);
    let (n_in, n_out) = (dom.dim(c), cod.dim(c));
    let m = &f.map.mat;
    let mat = Matrix::from_fn(c.field(), n_out, n_in, |r, col| {
        let mut acc = c.zero();
        for k in 0..d {
            let v = m.get(r * d + k, k * n_in + col);
            if !v.is_zero() {
                acc = &acc + v;
            }
        }
        acc
    });
    LinearMap::new(c, dom, cod, mat)
}

/// `[R, b]`, the closed relator morphism, an endomorphism of `R(b)`.
pub fn relator_morphism(c: &CategoryData, r: &Word, b: SimpleLabel) -> Result<LinearMap> {
    close(c, &open_relator(c, r, b)?)
}

/// The generator owning each factor of `Rel(b)`, in order.
fn factor_generators(p: &Presentation) -> Vec<usize> {
    p.relators()
        .iter()
        .flat_map(|r| r.syllables().iter().flat_map(|s| std::iter::repeat(s.gen).take(s.exp.unsigned_abs() as usize)))
        .collect()
}

/// `ξ(P)` as a factor map: factor `i` of `Rel(b)` moves to position `ξ[i]`
/// of `G_1(b) ⋯ G_n(b)`. It does not depend on the assignment.
pub fn xi_indices(p: &Presentation) -> Vec<usize> {
    let gens = factor_generators(p);
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| gens[i]);
    let mut xi = vec![0; gens.len()];
    for (pos, i) in order.into_iter().enumerate() {
        xi[i] = pos;
    }
    xi
}

/// `Rel(b) = R_1(b_1) ⋯ R_m(b_m)`.
pub fn rel_word(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel]) -> ObjectWord {
    ObjectWord(
        p.relators()
            .iter()
            .zip(asg)
            .flat_map(|(r, &b)| relator_word(c, r, b).0)
            .collect(),
    )
}

/// The words `G_k(b)`, one per generator.
pub fn generator_words(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel]) -> Vec<ObjectWord> {
    let rel = rel_word(c, p, asg);
    let gens = factor_generators(p);
    (0..p.generator_count())
        .map(|k| ObjectWord(rel.0.iter().zip(&gens).filter(|(_, &g)| g == k).map(|(&x, _)| x).collect()))
        .collect()
}

/// The permutation `ξ(P): Rel(b) → G_1(b) ⋯ G_n(b)`.
pub fn xi_permutation(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel]) -> Result<LinearMap> {
    check_assignment(c, p, asg)?;
    Ok(c.permutation(&rel_word(c, p, asg), &xi_indices(p)))
}

fn check_assignment(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel]) -> Result<()> {
    if asg.len() != p.relator_count() || asg.iter().any(|&b| b >= c.len()) {
        return Err(Error::IndexOutOfRange(format!(
            "assignment {asg:?} for {} relators over {} simples",
            p.relator_count(),
            c.len()
        )));
    }
    Ok(())
}

/// All assignments `Σ^m` in lexicographic order.
pub fn assignments(c: &CategoryData, m: usize) -> Result<Vec<Vec<SimpleLabel>>> {
    let count = (c.len() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > 10_000_000 {
        return Err(Error::EnumerationTooLarge(count));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0; m];
    for _ in 0..count {
        out.push(cur.clone());
        for i in (0..m).rev() {
            cur[i] += 1;
            if cur[i] < c.len() {
                break;
            }
            cur[i] = 0;
        }
    }
    Ok(out)
}

fn pow_saturating(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Refuses presentations whose relator morphisms or state vectors would
/// exceed the carrier bound for some assignment.
fn guard_presentation(c: &CategoryData, p: &Presentation, opts: &EvalOptions) -> Result<()> {
    let dmax = c.labels().map(|b| c.dim(b)).max().unwrap_or(1) as u128;
    let mut total = 1u128;
    for r in p.relators() {
        let d = pow_saturating(dmax, r.letter_len());
        opts.guard(|| format!("relator morphism of {}", r.display(p.generators())), d.saturating_mul(d).saturating_mul(dmax * dmax))?;
        total = total.saturating_mul(d);
    }
    opts.guard(|| "tensor of all relator carriers".into(), total)
}

/// The contribution of one assignment:
/// `Tr_{G_k(b) → 1, all k}(ξ(P) ∘ [P, b] ∘ ξ(P)⁻¹)`.
///
/// The trace is evaluated as `Σ ε* (ξ [P, b] ξ⁻¹) ε` over tensor products of
/// basis vectors of the spaces `F(1, G_k(b))`.
pub fn assignment_term(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel]) -> Result<Scalar> {
    check_assignment(c, p, asg)?;
    let morphisms = p
        .relators()
        .iter()
        .zip(asg)
        .map(|(r, &b)| relator_morphism(c, r, b).map(|f| f.mat))
        .collect::<Result<Vec<_>>>()?;
    term_with(c, p, asg, &morphisms.iter().collect::<Vec<_>>())
}

fn term_with(c: &CategoryData, p: &Presentation, asg: &[SimpleLabel], morphisms: &[&Matrix]) -> Result<Scalar> {
    let gwords = generator_words(c, p, asg);
    let mut bases = Vec::with_capacity(gwords.len());
    for w in &gwords {
        let h = c.hom_basis(0, w)?;
        if h.is_empty() {
            return Ok(c.zero());
        }
        bases.push((w.dims(c), h));
    }
    let xi = xi_indices(p);
    let mut xi_inv = vec![0; xi.len()];
    for (i, &x) in xi.iter().enumerate() {
        xi_inv[x] = i;
    }
    // Letter offsets of each relator inside Rel(b).
    let mut offsets = Vec::with_capacity(p.relator_count());
    let mut dims_rel = Vec::new();
    for (r, &b) in p.relators().iter().zip(asg) {
        let w = relator_word(c, r, b);
        offsets.push((dims_rel.len(), w.len()));
        dims_rel.extend(w.dims(c));
    }

    let mut total = c.zero();
    let mut idx = vec![0usize; bases.len()];
    loop {
        let mut up = TensorVec::new(Vec::new(), vec![c.one()]);
        let mut down = TensorVec::new(Vec::new(), vec![c.one()]);
        for ((dims, h), &i) in bases.iter().zip(&idx) {
            up = up.tensor(&TensorVec::new(dims.clone(), h.basis[i].entries().to_vec()));
            down = down.tensor(&TensorVec::new(dims.clone(), h.duals[i].entries().to_vec()));
        }
        let mut v = up.permute(&xi_inv);
        for (m, &(start, len)) in morphisms.iter().zip(&offsets) {
            let out = dims_rel[start..start + len].to_vec();
            v = v.apply(start, len, m, &out);
        }
        total = &total + &down.dot(&v.permute(&xi));

        // next basis tuple
        let mut k = bases.len();
        loop {
            if k == 0 {
                return Ok(total);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < bases[k].1.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The same term computed literally: form `ξ [P, b] ξ⁻¹` as a matrix and
/// take partial traces of the generator blocks in the given order.
pub fn assignment_term_by_partial_traces(
    c: &CategoryData,
    p: &Presentation,
    asg: &[SimpleLabel],
    order: &[usize],
) -> Result<Scalar> {
    check_assignment(c, p, asg)?;
    let mut full = c.identity(&ObjectWord::empty());
    for (r, &b) in p.relators().iter().zip(asg) {
        full = c.tensor(&full, &relator_morphism(c, r, b)?);
    }
    let xi = xi_permutation(c, p, asg)?;
    let xi_inv = LinearMap::new(c, xi.cod.clone(), xi.dom.clone(), xi.mat.transpose())?;
    let mut phi = c.compose_all(&[&xi, &full, &xi_inv])?;
    let mut lens: Vec<usize> = generator_words(c, p, asg).iter().map(ObjectWord::len).collect();
    for &k in order {
        let start: usize = lens[..k].iter().sum();
        phi = c.partial_trace(&phi, start, lens[k], 0)?;
        lens[k] = 1;
    }
    Ok(phi.mat.get(0, 0).clone())
}

/// `Tr_{(b_1 b_2)_i → t_i}(χ' ∘ (f(b_1, l) ⊗ f(b_2, l)) ∘ χ⁻¹)`, where `χ, χ'`
/// interleave the factors of the two blocks into `(b_1 b_2)((b_1 b_2)_1 …)`
/// and the `i`-th pair is traced to `targets[i]`.
pub fn paired_trace(
    c: &CategoryData,
    b1: SimpleLabel,
    b2: SimpleLabel,
    l: i64,
    targets: &[SimpleLabel],
) -> Result<LinearMap> {
    let n = l.unsigned_abs() as usize;
    if targets.len() != n {
        return Err(Error::IndexOutOfRange(format!("{} targets for {n} pairs", targets.len())));
    }
    let f = c.tensor(&f_block(c, b1, l)?.map, &f_block(c, b2, l)?.map);
    // domain (b1, B1, b2, B2), codomain (B1, b1, B2, b2)
    let mut chi = vec![0; 2 * n + 2];
    let mut chi_out = vec![0; 2 * n + 2];
    chi[0] = 0;
    chi[n + 1] = 1;
    chi_out[n] = 0;
    chi_out[2 * n + 1] = 1;
    for i in 0..n {
        chi[1 + i] = 2 + 2 * i;
        chi[n + 2 + i] = 3 + 2 * i;
        chi_out[i] = 2 + 2 * i;
        chi_out[n + 1 + i] = 3 + 2 * i;
    }
    let chi_map = c.permutation(&f.dom, &chi);
    let chi_inv = LinearMap::new(c, chi_map.cod.clone(), chi_map.dom.clone(), chi_map.mat.transpose())?;
    let chi_out_map = c.permutation(&f.cod, &chi_out);
    let mut phi = c.compose_all(&[&chi_out_map, &f, &chi_inv])?;
    for (i, &t) in targets.iter().enumerate() {
        phi = c.partial_trace(&phi, 2 + i, 2, t)?;
    }
    Ok(phi)
}

/// `π ∘ f^ε(a, l)`: `f(a, l)` with its `in` end fed through `ε_k*` and its
/// `out` end through `ε_k` over a basis of `F(a, b_1 b_2)`, then permuted to
/// `b_1 b_2 a^l`.
pub fn collapsed_block(c: &CategoryData, b1: SimpleLabel, b2: SimpleLabel, a: SimpleLabel, l: i64) -> Result<LinearMap> {
    let n = l.unsigned_abs() as usize;
    let pair = ObjectWord(vec![b1, b2]);
    let al = power_word(c, a, l);
    let f = f_block(c, a, l)?.map;
    let h = c.hom_basis(a, &pair)?;
    let dom = pair.concat(&al);
    let cod = al.concat(&pair);
    let mut acc = LinearMap::new(c, dom.clone(), cod.clone(), Matrix::zeros(c.field(), cod.dim(c), dom.dim(c)))?;
    let aw = ObjectWord::single(a);
    let e = ObjectWord::empty();
    for (eb, ed) in h.basis.iter().zip(&h.duals) {
        let up = LinearMap::new(c, aw.clone(), pair.clone(), eb.clone())?;
        let down = LinearMap::new(c, pair.clone(), aw.clone(), ed.clone())?;
        let term = c.compose_all(&[&c.whisker(&al, &up, &e), &f, &c.whisker(&e, &down, &al)])?;
        acc = acc.add(&term)?;
    }
    let mut perm: Vec<usize> = (0..n).map(|i| i + 2).collect();
    perm.extend([0, 1]);
    c.compose(&c.permutation(&cod, &perm), &acc)
}

/// `Q(P)` by the global definition, with the default size guard.
pub fn q_invariant_global(p: &Presentation, c: &CategoryData) -> Result<Scalar> {
    q_invariant_global_with(p, c, &EvalOptions::default())
}

/// `Q(P) = Σ_{b ∈ Σ^m} Tr_{G_k(b) → 1}(ξ(P) ∘ [P, b] ∘ ξ(P)⁻¹)`.
///
/// Relator morphisms are computed once per `(relator, simple)` and the
/// assignment sum is split across threads; the result is exact and does not
/// depend on the split.
pub fn q_invariant_global_with(p: &Presentation, c: &CategoryData, opts: &EvalOptions) -> Result<Scalar> {
    guard_presentation(c, p, opts)?;
    let asgs = assignments(c, p.relator_count())?;
    let cache: Vec<Vec<Matrix>> = p
        .relators()
        .par_iter()
        .map(|r| c.labels().map(|b| relator_morphism(c, r, b).map(|f| f.mat)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let terms = asgs
        .par_iter()
        .map(|asg| {
            let ms: Vec<&Matrix> = asg.iter().enumerate().map(|(j, &b)| &cache[j][b]).collect();
            term_with(c, p, asg, &ms)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.iter().fold(c.zero(), |acc, t| &acc + t))
}
