use super::{CategoryData, LinearMap, ObjectWord, SimpleLabel};
use crate::arith::Scalar;
use crate::error::{Error, Result};

/// A basis `ζ_i: c → b*a` with the companion maps `ζ̄_i: b*a → c`; the dual
/// basis of `ζ` is `factor · ζ̄` with `factor = r(c)/r(a)`.
#[derive(Clone, Debug)]
pub struct ZetaBasis {
    pub zeta: Vec<LinearMap>,
    pub zeta_bar: Vec<LinearMap>,
    pub factor: Scalar,
}

impl CategoryData {
    /// `r(φ) = λ_{A*} ∘ (id_{A*} ⊗ φ) ∘ Λ_A` for an endomorphism `φ` of `A`.
    pub fn rank(&self, f: &LinearMap) -> Result<Scalar> {
        if !f.is_endo() {
            return Err(Error::WordMismatch("rank of a non-endomorphism".into()));
        }
        let a = &f.dom;
        let a_star = a.dual(self);
        let cup = self.cup_word(a)?;
        let mid = self.whisker(&a_star, f, &ObjectWord::empty());
        let cap = self.cap_word(&a_star);
        let r = self.compose_all(&[&cap, &mid, &cup])?;
        Ok(r.as_scalar().expect("endomorphism of the unit"))
    }

    /// `Σ_i (id ⊗ ε_i* ⊗ id) ∘ φ ∘ (id ⊗ ε_i ⊗ id)` over a basis of
    /// `F(b, A_k)`, where `A_k` is the factor range `start..start + len`.
    pub fn partial_trace(
        &self,
        phi: &LinearMap,
        start: usize,
        len: usize,
        b: SimpleLabel,
    ) -> Result<LinearMap> {
        if !phi.is_endo() {
            return Err(Error::WordMismatch("partial trace of a non-endomorphism".into()));
        }
        let w = &phi.dom;
        if start + len > w.len() {
            return Err(Error::IndexOutOfRange(format!(
                "factors {start}..{} of a word of length {}",
                start + len,
                w.len()
            )));
        }
        let left = w.sub(0, start);
        let right = w.sub(start + len, w.len() - start - len);
        let ak = w.sub(start, len);
        let out_word = left.concat(&ObjectWord::single(b)).concat(&right);
        let h = self.hom_basis(b, &ak)?;
        let mut acc = LinearMap {
            dom: out_word.clone(),
            cod: out_word,
            mat: crate::arith::Matrix::zeros(
                self.field(),
                left.dim(self) * self.dim(b) * right.dim(self),
                left.dim(self) * self.dim(b) * right.dim(self),
            ),
        };
        let bw = ObjectWord::single(b);
        for (e, d) in h.basis.iter().zip(&h.duals) {
            let up = LinearMap::new(self, bw.clone(), ak.clone(), e.clone())?;
            let down = LinearMap::new(self, ak.clone(), bw.clone(), d.clone())?;
            let term = self.compose_all(&[
                &self.whisker(&left, &down, &right),
                phi,
                &self.whisker(&left, &up, &right),
            ])?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// The hat-conjugate `f̂: B* → A*` of `f: A → B`:
    /// `(λ_{B*} ⊗ id_{A*}) ∘ (id_{B*} ⊗ f ⊗ id_{A*}) ∘ (id_{B*} ⊗ Λ_{A*})`.
    pub fn hat(&self, f: &LinearMap) -> Result<LinearMap> {
        let a_star = f.dom.dual(self);
        let b_star = f.cod.dual(self);
        let e = ObjectWord::empty();
        let open = self.whisker(&b_star, &self.cup_word(&a_star)?, &e);
        let mid = self.whisker(&b_star, f, &a_star);
        let close = self.whisker(&e, &self.cap_word(&b_star), &a_star);
        self.compose_all(&[&close, &mid, &open])
    }

    /// The basis of `F(c, b*a)` obtained by bending an `ε`-basis of `F(a, bc)`.
    pub fn zeta_bases(&self, a: SimpleLabel, b: SimpleLabel, c: SimpleLabel) -> Result<ZetaBasis> {
        let factor = &self.rank_of(c)? * &self.inv_rank(a)?;
        let bs = self.dual(b);
        let (aw, bw, cw, bsw) = (
            ObjectWord::single(a),
            ObjectWord::single(b),
            ObjectWord::single(c),
            ObjectWord::single(bs),
        );
        let bc = bw.concat(&cw);
        let h = self.hom_basis(a, &bc)?;
        let e = ObjectWord::empty();
        let cap = self.whisker(&e, &self.cap(bs), &cw);
        let cup = self.whisker(&e, &self.cup(b)?, &cw);
        let mut zeta = Vec::with_capacity(h.len());
        let mut zeta_bar = Vec::with_capacity(h.len());
        for (eb, ed) in h.basis.iter().zip(&h.duals) {
            let up = LinearMap::new(self, aw.clone(), bc.clone(), eb.clone())?;
            let down = LinearMap::new(self, bc.clone(), aw.clone(), ed.clone())?;
            zeta_bar.push(self.compose(&cap, &self.whisker(&bsw, &up, &e))?);
            zeta.push(self.compose(&self.whisker(&bsw, &down, &e), &cup)?);
        }
        Ok(ZetaBasis {
            zeta,
            zeta_bar,
            factor,
        })
    }
}
