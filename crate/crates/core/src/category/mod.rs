//! Finite semisimple symmetric tensor categories given by explicit matrices.
//!
//! A category is a list of simple objects. Each simple carries a vector space
//! (its carrier), one matrix per abstract symmetry generator, an optional
//! `Z_n` grade, a dual, and a nondegenerate pairing `λ_b: b ⊗ b* → 1`.
//! Tensor products are Kronecker products, so every associator and unitor is
//! an identity reindexing; the braiding is the plain factor transposition.
//! Morphisms between words are the intertwiners of the generator action that
//! respect the grading.

mod builtins;
mod hom;
mod maps;
mod ops;
mod parse;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use builtins::{builtin, BUILTIN_NAMES};
pub use hom::HomBasis;
pub use maps::{LinearMap, ObjectWord, TensorVec};
pub use ops::ZetaBasis;
pub use parse::{parse_category, CategorySpec, Entry, SimpleSpec};
pub use validate::{CheckResult, ValidationReport};

use crate::arith::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// Index into a category's table of simple objects; label 0 is the unit.
pub type SimpleLabel = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simple {
    pub name: String,
    pub dim: usize,
    pub dual: SimpleLabel,
    pub grade: u64,
    /// One carrier matrix per symmetry generator.
    pub generators: Vec<Matrix>,
    /// `L` with `λ_b(e_i ⊗ f_j) = L[i][j]`; shape `dim(b) × dim(b*)`.
    pub pairing: Matrix,
}

pub struct CategoryData {
    name: String,
    field: Field,
    generator_count: usize,
    grading: Option<u64>,
    simples: Vec<Simple>,
    coforms: Vec<Option<Matrix>>,
    ranks: Vec<Option<Scalar>>,
    hom_cache: Mutex<HashMap<(SimpleLabel, Vec<SimpleLabel>), Arc<HomBasis>>>,
}

impl Clone for CategoryData {
    fn clone(&self) -> Self {
        CategoryData::assemble(
            self.name.clone(),
            self.field,
            self.generator_count,
            self.grading,
            self.simples.clone(),
        )
    }
}

impl fmt::Debug for CategoryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CategoryData")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("simples", &self.simples.iter().map(|s| &s.name).collect::<Vec<_>>())
            .finish()
    }
}

impl CategoryData {
    /// Builds a category without checking any axiom.
    ///
    /// Shapes are checked (a malformed table would otherwise panic later);
    /// coforms and ranks are derived where the pairing allows it. Use
    /// [`load_category`] or [`CategoryData::validate`] before evaluating.
    pub fn new_unchecked(
        name: impl Into<String>,
        field: Field,
        generator_count: usize,
        grading: Option<u64>,
        simples: Vec<Simple>,
    ) -> Result<CategoryData> {
        if simples.is_empty() {
            return Err(Error::parse(0, "a category needs at least the unit object"));
        }
        if grading == Some(0) {
            return Err(Error::parse(0, "grading modulus must be positive"));
        }
        let n = simples.len();
        for s in &simples {
            let bad = |msg: String| Err(Error::parse(0, format!("simple `{}`: {msg}", s.name)));
            if s.dim == 0 {
                return bad("dimension must be positive".into());
            }
            if s.dual >= n {
                return bad("dual out of range".into());
            }
            if s.generators.len() != generator_count {
                return bad(format!(
                    "expected {generator_count} generator matrices, found {}",
                    s.generators.len()
                ));
            }
            for g in &s.generators {
                if g.rows() != s.dim || g.cols() != s.dim {
                    return bad("generator matrix has the wrong shape".into());
                }
                if g.field() != field {
                    return bad("generator matrix over the wrong field".into());
                }
            }
            let dd = simples[s.dual].dim;
            if s.pairing.rows() != s.dim || s.pairing.cols() != dd || s.pairing.field() != field {
                return bad(format!("pairing must be {}x{dd}", s.dim));
            }
            if let Some(m) = grading {
                if s.grade >= m {
                    return bad("grade out of range".into());
                }
            } else if s.grade != 0 {
                return bad("grade given but category is ungraded".into());
            }
        }
        Ok(CategoryData::assemble(
            name.into(),
            field,
            generator_count,
            grading,
            simples,
        ))
    }

    fn assemble(
        name: String,
        field: Field,
        generator_count: usize,
        grading: Option<u64>,
        simples: Vec<Simple>,
    ) -> CategoryData {
        let coforms: Vec<Option<Matrix>> =
            simples.iter().map(|s| s.pairing.inverse().ok()).collect();
        let mut c = CategoryData {
            name,
            field,
            generator_count,
            grading,
            simples,
            coforms,
            ranks: Vec::new(),
            hom_cache: Mutex::new(HashMap::new()),
        };
        c.ranks = (0..c.simples.len()).map(|b| c.loop_value(b)).collect();
        c
    }

    /// `λ_{b*} ∘ Λ_b`, when both pieces exist and have matching shapes.
    fn loop_value(&self, b: SimpleLabel) -> Option<Scalar> {
        let bs = self.simples[b].dual;
        let linv = self.coforms[b].as_ref()?;
        let lstar = &self.simples[bs].pairing;
        // Λ_b has entry linv[j][i] at (j, i) in b* ⊗ b; λ_{b*} reads lstar[j][i].
        if lstar.rows() != linv.rows() || lstar.cols() != linv.cols() {
            return None;
        }
        let mut acc = Scalar::zero(self.field);
        for (x, y) in lstar.entries().iter().zip(linv.entries()) {
            acc = &acc + &(x * y);
        }
        Some(acc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn grading(&self) -> Option<u64> {
        self.grading
    }

    pub fn simples(&self) -> &[Simple] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn labels(&self) -> std::ops::Range<SimpleLabel> {
        0..self.simples.len()
    }

    pub fn simple(&self, b: SimpleLabel) -> &Simple {
        &self.simples[b]
    }

    pub fn dim(&self, b: SimpleLabel) -> usize {
        self.simples[b].dim
    }

    pub fn dual(&self, b: SimpleLabel) -> SimpleLabel {
        self.simples[b].dual
    }

    pub fn label(&self, name: &str) -> Option<SimpleLabel> {
        self.simples.iter().position(|s| s.name == name)
    }

    /// Grade of a word: the sum of its letters' grades.
    pub fn grade_of(&self, word: &[SimpleLabel]) -> u64 {
        match self.grading {
            None => 0,
            Some(m) => word.iter().map(|&b| self.simples[b].grade).sum::<u64>() % m,
        }
    }

    /// The rank `r(b) = λ_{b*} ∘ Λ_b`.
    pub fn rank_of(&self, b: SimpleLabel) -> Result<Scalar> {
        self.ranks[b]
            .clone()
            .ok_or_else(|| Error::Validation(format!("no rank for `{}`", self.simples[b].name)))
    }

    /// `r(b)^{-1}`, failing when the rank vanishes in the ground field.
    pub fn inv_rank(&self, b: SimpleLabel) -> Result<Scalar> {
        let r = self.rank_of(b)?;
        r.inv()
            .map_err(|_| Error::NonInvertibleRank(self.simples[b].name.clone()))
    }

    pub(crate) fn coform(&self, b: SimpleLabel) -> Result<&Matrix> {
        self.coforms[b].as_ref().ok_or_else(|| {
            Error::Validation(format!("pairing of `{}` is degenerate", self.simples[b].name))
        })
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.field)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.field)
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_i64(self.field, v)
    }

    pub fn self_dual_labels(&self) -> Vec<SimpleLabel> {
        self.labels().filter(|&b| self.dual(b) == b).collect()
    }
}

/// Resolves a builtin name or parses category text, then validates.
pub fn load_category(source: &str) -> Result<CategoryData> {
    let c = match builtin(source.trim()) {
        Some(c) => c?,
        None => parse_category(source)?,
    };
    let report = c.validate();
    if report.passed() {
        Ok(c)
    } else {
        Err(Error::Validation(report.failures().join("; ")))
    }
}
