use std::sync::Arc;

use super::{CategoryData, ObjectWord, SimpleLabel};
use crate::arith::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A basis `ε_i: a → W` of `F(a, W)` with its dual basis `ε_i*: W → a`,
/// normalized so that `ε_i* ∘ ε_j = δ_ij id_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub target: SimpleLabel,
    pub word: ObjectWord,
    pub basis: Vec<Matrix>,
    pub duals: Vec<Matrix>,
}

impl HomBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    fn empty(a: SimpleLabel, w: &ObjectWord) -> HomBasis {
        HomBasis {
            target: a,
            word: w.clone(),
            basis: Vec::new(),
            duals: Vec::new(),
        }
    }
}

impl CategoryData {
    /// Action of symmetry generator `g` on the carrier of `w`.
    pub fn word_rep(&self, w: &ObjectWord, g: usize) -> Matrix {
        w.0.iter().fold(Matrix::identity(self.field(), 1), |acc, &b| {
            acc.kron(&self.simple(b).generators[g])
        })
    }

    /// All linear maps `carrier(from) → carrier(to)` commuting with every
    /// generator, as a nullspace basis; empty when the grades differ.
    pub fn intertwiners(&self, from: &ObjectWord, to: &ObjectWord) -> Vec<Matrix> {
        if self.grade_of(&from.0) != self.grade_of(&to.0) {
            return Vec::new();
        }
        let (m, n) = (to.dim(self), from.dim(self));
        // Unknown X is m×n, flattened row-major; equations ρ_to X − X ρ_from = 0.
        let mut blocks = Vec::with_capacity(self.generator_count());
        for g in 0..self.generator_count() {
            let rt = self.word_rep(to, g);
            let rf = self.word_rep(from, g);
            let mut eq = Matrix::zeros(self.field(), m * n, m * n);
            for r in 0..m {
                for c in 0..n {
                    let row = r * n + c;
                    for k in 0..m {
                        let a = rt.get(r, k);
                        if !a.is_zero() {
                            let v = eq.get(row, k * n + c) + a;
                            eq.set(row, k * n + c, v);
                        }
                    }
                    for k in 0..n {
                        let a = rf.get(k, c);
                        if !a.is_zero() {
                            let v = eq.get(row, r * n + k) - a;
                            eq.set(row, r * n + k, v);
                        }
                    }
                }
            }
            blocks.push(eq);
        }
        let system = if blocks.is_empty() {
            Matrix::zeros(self.field(), 0, m * n)
        } else {
            Matrix::vstack(self.field(), &blocks).expect("equal widths")
        };
        system
            .nullspace()
            .into_iter()
            .map(|v| Matrix::from_fn(self.field(), m, n, |r, c| v[r * n + c].clone()))
            .collect()
    }

    /// `F(a, W)` computed directly from the intertwiner equations, with duals
    /// obtained by inverting the Gram matrix against `F(W, a)`.
    pub fn hom_basis_direct(&self, a: SimpleLabel, w: &ObjectWord) -> Result<HomBasis> {
        let aw = ObjectWord::single(a);
        let xs = self.intertwiners(&aw, w);
        let ys = self.intertwiners(w, &aw);
        if xs.len() != ys.len() {
            return Err(Error::SemisimplicityFailure(format!(
                "dim F({}, {}) = {} but dim F({1}, {0}) = {}",
                self.simple(a).name,
                w.display(self),
                xs.len(),
                ys.len()
            )));
        }
        if xs.is_empty() {
            return Ok(HomBasis::empty(a, w));
        }
        let k = xs.len();
        let mut gram = Matrix::zeros(self.field(), k, k);
        for (i, y) in ys.iter().enumerate() {
            for (j, x) in xs.iter().enumerate() {
                let p = y * x;
                let s = p.get(0, 0).clone();
                if p != Matrix::identity(self.field(), self.dim(a)).scale(&s) {
                    return Err(Error::SemisimplicityFailure(format!(
                        "End({}) is not one-dimensional",
                        self.simple(a).name
                    )));
                }
                gram.set(i, j, s);
            }
        }
        let ginv = gram.inverse().map_err(|_| {
            Error::SemisimplicityFailure(format!(
                "singular Gram matrix for F({}, {})",
                self.simple(a).name,
                w.display(self)
            ))
        })?;
        let duals = (0..k)
            .map(|i| {
                ys.iter().enumerate().fold(
                    Matrix::zeros(self.field(), self.dim(a), w.dim(self)),
                    |acc, (j, y)| &acc + &y.scale(ginv.get(i, j)),
                )
            })
            .collect();
        Ok(HomBasis {
            target: a,
            word: w.clone(),
            basis: xs,
            duals,
        })
    }

    /// A basis of `F(a, W)` with its dual.
    ///
    /// Words of length at most two are solved directly; longer words use the
    /// fusion-tree basis `(ε(c, W') ⊗ id_w) ∘ ζ` over `W = W'w`, which is a
    /// basis by semisimplicity. Results are cached.
    pub fn hom_basis(&self, a: SimpleLabel, w: &ObjectWord) -> Result<Arc<HomBasis>> {
        let key = (a, w.0.clone());
        if let Some(h) = self.hom_cache.lock().expect("cache lock").get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.compute_hom_basis(a, w)?);
        self.hom_cache
            .lock()
            .expect("cache lock")
            .insert(key, h.clone());
        Ok(h)
    }

    fn compute_hom_basis(&self, a: SimpleLabel, w: &ObjectWord) -> Result<HomBasis> {
        if self.grade_of(&[a]) != self.grade_of(&w.0) {
            return Ok(HomBasis::empty(a, w));
        }
        match w.len() {
            0 | 1 => {
                let hit = if w.is_empty() { a == 0 } else { w.0[0] == a };
                if !hit {
                    return Ok(HomBasis::empty(a, w));
                }
                let id = Matrix::identity(self.field(), self.dim(a));
                Ok(HomBasis {
                    target: a,
                    word: w.clone(),
                    basis: vec![id.clone()],
                    duals: vec![id],
                })
            }
            2 => self.hom_basis_direct(a, w),
            n => {
                let head = w.sub(0, n - 1);
                let last = w.0[n - 1];
                let id_last = Matrix::identity(self.field(), self.dim(last));
                let mut basis = Vec::new();
                let mut duals = Vec::new();
                for c in self.labels() {
                    let z = self.hom_basis(a, &ObjectWord(vec![c, last]))?;
                    if z.is_empty() {
                        continue;
                    }
                    let e = self.hom_basis(c, &head)?;
                    for (eb, ed) in e.basis.iter().zip(&e.duals) {
                        let up = eb.kron(&id_last);
                        let down = ed.kron(&id_last);
                        for (zb, zd) in z.basis.iter().zip(&z.duals) {
                            basis.push(&up * zb);
                            duals.push(zd * &down);
                        }
                    }
                }
                Ok(HomBasis {
                    target: a,
                    word: w.clone(),
                    basis,
                    duals,
                })
            }
        }
    }

    pub fn hom_dim(&self, a: SimpleLabel, w: &ObjectWord) -> Result<usize> {
        Ok(self.hom_basis(a, w)?.len())
    }

    /// Coordinates of `φ ∈ F(1, W)` (a carrier column) in the cached basis.
    pub fn coordinates(&self, w: &ObjectWord, phi: &[Scalar]) -> Result<Vec<Scalar>> {
        let h = self.hom_basis(0, w)?;
        Ok(h.duals.iter().map(|d| d.mul_vec(phi)[0].clone()).collect())
    }

    /// The carrier vector with the given coordinates in `F(1, W)`.
    pub fn from_coordinates(&self, w: &ObjectWord, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        let h = self.hom_basis(0, w)?;
        let mut out = vec![self.zero(); w.dim(self)];
        for (e, c) in h.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(e.entries()) {
                if !x.is_zero() {
                    *o = &*o + &(x * c);
                }
            }
        }
        Ok(out)
    }
}
