use std::fmt;

use super::{CategoryData, SimpleLabel};
use crate::arith::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// A tensor word of simple labels; the empty word is the unit object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectWord(pub Vec<SimpleLabel>);

impl ObjectWord {
    pub fn empty() -> ObjectWord {
        ObjectWord(Vec::new())
    }

    pub fn single(b: SimpleLabel) -> ObjectWord {
        ObjectWord(vec![b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[SimpleLabel] {
        &self.0
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectWord(v)
    }

    pub fn sub(&self, start: usize, len: usize) -> ObjectWord {
        ObjectWord(self.0[start..start + len].to_vec())
    }

    /// Reversed word of duals.
    pub fn dual(&self, c: &CategoryData) -> ObjectWord {
        ObjectWord(self.0.iter().rev().map(|&b| c.dual(b)).collect())
    }

    pub fn dims(&self, c: &CategoryData) -> Vec<usize> {
        self.0.iter().map(|&b| c.dim(b)).collect()
    }

    /// Carrier dimension; the empty product is 1.
    pub fn dim(&self, c: &CategoryData) -> usize {
        self.0.iter().map(|&b| c.dim(b)).product()
    }

    pub fn display<'a>(&'a self, c: &'a CategoryData) -> impl fmt::Display + 'a {
        WordDisplay(self, c)
    }
}

impl From<Vec<SimpleLabel>> for ObjectWord {
    fn from(v: Vec<SimpleLabel>) -> Self {
        ObjectWord(v)
    }
}

struct WordDisplay<'a>(&'a ObjectWord, &'a CategoryData);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0 .0.iter().map(|&b| self.1.simple(b).name.as_str()).collect();
        write!(f, "({})", names.join(" "))
    }
}

/// A morphism between words, as a `dim(cod) × dim(dom)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    pub mat: Matrix,
}

impl LinearMap {
    pub fn new(c: &CategoryData, dom: ObjectWord, cod: ObjectWord, mat: Matrix) -> Result<Self> {
        if mat.rows() != cod.dim(c) || mat.cols() != dom.dim(c) {
            return Err(Error::WordMismatch(format!(
                "matrix {}x{} does not fit {} -> {}",
                mat.rows(),
                mat.cols(),
                dom.display(c),
                cod.display(c)
            )));
        }
        Ok(LinearMap { dom, cod, mat })
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            mat: self.mat.scale(s),
        }
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::WordMismatch("sum of maps with different types".into()));
        }
        Ok(LinearMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            mat: self.mat.try_add(&other.mat)?,
        })
    }

    /// The value of an endomorphism of the unit object.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.mat.rows() == 1 && self.mat.cols() == 1).then(|| self.mat.get(0, 0).clone())
    }
}

impl CategoryData {
    pub fn identity(&self, w: &ObjectWord) -> LinearMap {
        LinearMap {
            dom: w.clone(),
            cod: w.clone(),
            mat: Matrix::identity(self.field(), w.dim(self)),
        }
    }

    /// `f ∘ g`; requires `cod(g) = dom(f)`.
    pub fn compose(&self, f: &LinearMap, g: &LinearMap) -> Result<LinearMap> {
        if g.cod != f.dom {
            return Err(Error::WordMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                f.dom.display(self),
                f.cod.display(self),
                g.dom.display(self),
                g.cod.display(self)
            )));
        }
        Ok(LinearMap {
            dom: g.dom.clone(),
            cod: f.cod.clone(),
            mat: f.mat.try_mul(&g.mat)?,
        })
    }

    /// Composes right to left: `chain[0] ∘ chain[1] ∘ …`.
    pub fn compose_all(&self, chain: &[&LinearMap]) -> Result<LinearMap> {
        let (last, rest) = chain.split_last().expect("nonempty chain");
        let mut acc = (*last).clone();
        for f in rest.iter().rev() {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, f: &LinearMap, g: &LinearMap) -> LinearMap {
        LinearMap {
            dom: f.dom.concat(&g.dom),
            cod: f.cod.concat(&g.cod),
            mat: f.mat.kron(&g.mat),
        }
    }

    /// `id_left ⊗ f ⊗ id_right`.
    pub fn whisker(&self, left: &ObjectWord, f: &LinearMap, right: &ObjectWord) -> LinearMap {
        let l = self.identity(left);
        let r = self.identity(right);
        self.tensor(&self.tensor(&l, f), &r)
    }

    /// The form `λ_b: b ⊗ b* → 1`.
    pub fn cap(&self, b: SimpleLabel) -> LinearMap {
        let s = self.simple(b);
        LinearMap {
            dom: ObjectWord(vec![b, s.dual]),
            cod: ObjectWord::empty(),
            mat: Matrix::row(self.field(), s.pairing.entries().to_vec()),
        }
    }

    /// The coform `Λ_b: 1 → b* ⊗ b`, the inverse pairing read as a vector.
    pub fn cup(&self, b: SimpleLabel) -> Result<LinearMap> {
        let linv = self.coform(b)?;
        Ok(LinearMap {
            dom: ObjectWord::empty(),
            cod: ObjectWord(vec![self.dual(b), b]),
            mat: Matrix::column(self.field(), linv.entries().to_vec()),
        })
    }

    /// `λ_W: W ⊗ W* → 1`, nesting the letter caps from the inside out.
    pub fn cap_word(&self, w: &ObjectWord) -> LinearMap {
        let mut acc = LinearMap {
            dom: ObjectWord::empty(),
            cod: ObjectWord::empty(),
            mat: Matrix::identity(self.field(), 1),
        };
        for &b in w.0.iter().rev() {
            // acc: V V* → 1 becomes b V V* b* → 1.
            let inner = self.whisker(&ObjectWord::single(b), &acc, &ObjectWord::single(self.dual(b)));
            acc = self.compose(&self.cap(b), &inner).expect("cap shapes");
        }
        acc
    }

    /// `Λ_W: 1 → W* ⊗ W`.
    pub fn cup_word(&self, w: &ObjectWord) -> Result<LinearMap> {
        let mut acc = LinearMap {
            dom: ObjectWord::empty(),
            cod: ObjectWord::empty(),
            mat: Matrix::identity(self.field(), 1),
        };
        for &b in w.0.iter().rev() {
            // acc: 1 → V* V becomes 1 → V* b* b V.
            let cb = self.cup(b)?;
            let left = ObjectWord(acc.cod.0[..acc.cod.len() / 2].to_vec());
            let right = ObjectWord(acc.cod.0[acc.cod.len() / 2..].to_vec());
            let outer = self.whisker(&left, &cb, &right);
            acc = self.compose(&outer, &acc)?;
        }
        Ok(acc)
    }

    /// The factor permutation sending the factor at position `i` to `perm[i]`.
    pub fn permutation(&self, w: &ObjectWord, perm: &[usize]) -> LinearMap {
        assert_eq!(perm.len(), w.len(), "permutation length");
        let mut cod = vec![0; w.len()];
        for (i, &p) in perm.iter().enumerate() {
            cod[p] = w.0[i];
        }
        let cod = ObjectWord(cod);
        let dims = w.dims(self);
        let n = w.dim(self);
        let mut mat = Matrix::zeros(self.field(), n, n);
        for (src, dst) in permutation_indices(&dims, perm).into_iter().enumerate() {
            mat.set(dst, src, self.one());
        }
        LinearMap { dom: w.clone(), cod, mat }
    }

    /// Exchanges the factors at `i` and `i + 1`.
    pub fn swap(&self, w: &ObjectWord, i: usize) -> Result<LinearMap> {
        if i + 1 >= w.len() {
            return Err(Error::IndexOutOfRange(format!("swap at {i} in a word of length {}", w.len())));
        }
        let mut perm: Vec<usize> = (0..w.len()).collect();
        perm.swap(i, i + 1);
        Ok(self.permutation(w, &perm))
    }
}

/// For each flat index of a tensor with factor dimensions `dims`, the flat
/// index after moving factor `i` to position `perm[i]`.
pub(crate) fn permutation_indices(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let k = dims.len();
    let mut new_dims = vec![0; k];
    for i in 0..k {
        new_dims[perm[i]] = dims[i];
    }
    let new_strides = strides(&new_dims);
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; k];
    for _ in 0..total {
        let mut idx = 0;
        for i in 0..k {
            idx += digits[i] * new_strides[perm[i]];
        }
        out.push(idx);
        // increment the mixed-radix counter, last factor fastest
        for i in (0..k).rev() {
            digits[i] += 1;
            if digits[i] < dims[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    out
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// A vector in a tensor product of carriers, kept with its factor dimensions.
///
/// Used by the evaluators to apply local operators to long words without
/// forming the full Kronecker matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVec {
    pub dims: Vec<usize>,
    pub data: Vec<Scalar>,
}

impl TensorVec {
    pub fn new(dims: Vec<usize>, data: Vec<Scalar>) -> TensorVec {
        debug_assert_eq!(dims.iter().product::<usize>(), data.len());
        TensorVec { dims, data }
    }

    /// `u ⊗ v`.
    pub fn tensor(&self, other: &TensorVec) -> TensorVec {
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(if a.is_zero() || b.is_zero() { Scalar::zero(a.field()) } else { a * b });
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        TensorVec { dims, data }
    }

    /// Moves factor `i` to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> TensorVec {
        let idx = permutation_indices(&self.dims, perm);
        let field = self.data.first().map_or(Field::Rational, Scalar::field);
        let mut data = vec![Scalar::zero(field); self.data.len()];
        for (src, dst) in idx.into_iter().enumerate() {
            data[dst] = self.data[src].clone();
        }
        let mut dims = vec![0; self.dims.len()];
        for (i, &p) in perm.iter().enumerate() {
            dims[p] = self.dims[i];
        }
        TensorVec { dims, data }
    }

    /// Applies `m` to the factors `start..start + len`, which become factors
    /// with dimensions `out_dims`.
    pub fn apply(&self, start: usize, len: usize, m: &Matrix, out_dims: &[usize]) -> TensorVec {
        let left: usize = self.dims[..start].iter().product();
        let mid_in: usize = self.dims[start..start + len].iter().product();
        let right: usize = self.dims[start + len..].iter().product();
        let mid_out: usize = out_dims.iter().product();
        assert_eq!(m.cols(), mid_in, "operator input size");
        assert_eq!(m.rows(), mid_out, "operator output size");
        let field = m.field();
        let mut data = vec![Scalar::zero(field); left * mid_out * right];
        // Column-sparse view of m, since most operators here are sparse.
        let cols: Vec<Vec<(usize, &Scalar)>> = (0..mid_in)
            .map(|c| (0..mid_out).map(|r| (r, m.get(r, c))).filter(|(_, s)| !s.is_zero()).collect())
            .collect();
        for l in 0..left {
            for mi in 0..mid_in {
                for r in 0..right {
                    let v = &self.data[(l * mid_in + mi) * right + r];
                    if v.is_zero() {
                        continue;
                    }
                    for &(mo, a) in &cols[mi] {
                        let o = &mut data[(l * mid_out + mo) * right + r];
                        *o = &*o + &(a * v);
                    }
                }
            }
        }
        let mut dims = self.dims[..start].to_vec();
        dims.extend_from_slice(out_dims);
        dims.extend_from_slice(&self.dims[start + len..]);
        TensorVec { dims, data }
    }

    pub fn dot(&self, other: &TensorVec) -> Scalar {
        let field = self.data.first().map_or(Field::Rational, Scalar::field);
        let mut acc = Scalar::zero(field);
        for (a, b) in self.data.iter().zip(&other.data) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::builtin;

    #[test]
    fn swap_twice_is_identity() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let w = ObjectWord(vec![2, 1, 2]);
        let s = c.swap(&w, 0).unwrap();
        let back = c.swap(&s.cod, 0).unwrap();
        assert_eq!(c.compose(&back, &s).unwrap(), c.identity(&w));
    }

    #[test]
    fn tensor_of_identities() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let t = c.tensor(&c.identity(&ObjectWord::single(2)), &c.identity(&ObjectWord::single(1)));
        assert_eq!(t, c.identity(&ObjectWord(vec![2, 1])));
    }

    #[test]
    fn permutation_matches_tensor_vec() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let w = ObjectWord(vec![2, 1, 2]);
        let perm = [2, 0, 1];
        let p = c.permutation(&w, &perm);
        assert_eq!(p.cod, ObjectWord(vec![1, 2, 2]));
        let data: Vec<Scalar> = (0..4).map(|i| c.int(i)).collect();
        let v = TensorVec::new(w.dims(&c), data.clone());
        assert_eq!(v.permute(&perm).data, p.mat.mul_vec(&data));
    }

    #[test]
    fn local_apply_matches_kron() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let g = &c.simple(2).generators[1];
        let data: Vec<Scalar> = (0..8).map(|i| c.int(i * i - 3)).collect();
        let v = TensorVec::new(vec![2, 2, 2], data.clone());
        let full = Matrix::identity(c.field(), 2)
            .kron(g)
            .kron(&Matrix::identity(c.field(), 2));
        assert_eq!(v.apply(1, 1, g, &[2]).data, full.mul_vec(&data));
    }
}
