use std::fmt;

use super::{CategoryData, ObjectWord};
use crate::arith::Matrix;
use crate::error::Error;

/// Outcome of one axiom check, with a message per failing instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub category: String,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            writeln!(f, "{:<24} {status}", c.name)?;
            for m in &c.failures {
                writeln!(f, "    {m}")?;
            }
        }
        Ok(())
    }
}

/// Carrier bound for the words checked for completeness.
const COMPLETENESS_DIM: usize = 64;

impl CategoryData {
    /// Checks every axiom the evaluators rely on and reports all failures.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name, failures| checks.push(CheckResult { name, failures });
        push("unit", self.check_unit());
        push("generators", self.check_generators());
        push("duality", self.check_duality());
        push("equivariance", self.check_equivariance());
        push("nondegeneracy", self.check_nondegeneracy());
        push("snake", self.check_snakes());
        push("stability", self.check_stability());
        push("schur", self.check_schur());
        push("semisimplicity", self.check_semisimplicity());
        push("ranks", self.check_ranks());
        ValidationReport {
            category: self.name().to_string(),
            checks,
        }
    }

    fn name_of(&self, b: usize) -> &str {
        &self.simple(b).name
    }

    fn check_unit(&self) -> Vec<String> {
        let u = self.simple(0);
        let mut f = Vec::new();
        if u.dim != 1 || u.dual != 0 || u.grade != 0 {
            f.push(format!("`{}` must be 1-dimensional, self-dual, of grade 0", u.name));
        }
        if u.generators.iter().any(|g| !g.is_identity()) {
            f.push(format!("generators must act trivially on `{}`", u.name));
        }
        if u.pairing.rows() == 1 && u.pairing.cols() == 1 && !u.pairing.get(0, 0).is_one() {
            f.push(format!("pairing of `{}` must be [1]", u.name));
        }
        f
    }

    fn check_generators(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            for (g, m) in self.simple(b).generators.iter().enumerate() {
                if m.inverse().is_err() {
                    f.push(format!("generator {g} is singular on `{}`", self.name_of(b)));
                }
            }
        }
        f
    }

    fn check_duality(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            let d = self.dual(b);
            if self.dual(d) != b {
                f.push(format!("`{}`** != `{}`", self.name_of(b), self.name_of(b)));
            }
            if self.dim(d) != self.dim(b) {
                f.push(format!("`{}` and its dual differ in dimension", self.name_of(b)));
            }
            if self.grade_of(&[b, d]) != 0 {
                f.push(format!("grades of `{}` and its dual do not cancel", self.name_of(b)));
            }
        }
        f
    }

    fn check_equivariance(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            let s = self.simple(b);
            let gd = &self.simple(s.dual).generators;
            for (g, (rb, rd)) in s.generators.iter().zip(gd).enumerate() {
                let moved = &(&rb.transpose() * &s.pairing) * rd;
                if moved != s.pairing {
                    f.push(format!("pairing of `{}` not invariant under generator {g}", s.name));
                }
            }
        }
        f
    }

    fn check_nondegeneracy(&self) -> Vec<String> {
        self.labels()
            .filter(|&b| self.coform(b).is_err())
            .map(|b| format!("pairing of `{}` is degenerate", self.name_of(b)))
            .collect()
    }

    fn check_snakes(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            let Ok(cup) = self.cup(b) else { continue };
            let bs = self.dual(b);
            let (bw, bsw, e) = (ObjectWord::single(b), ObjectWord::single(bs), ObjectWord::empty());
            // (λ_b ⊗ id_b) ∘ (id_b ⊗ Λ_b) = id_b
            let left = self
                .compose(&self.whisker(&e, &self.cap(b), &bw), &self.whisker(&bw, &cup, &e))
                .map(|m| m.mat.is_identity());
            // (id_{b*} ⊗ λ_b) ∘ (Λ_b ⊗ id_{b*}) = id_{b*}
            let right = self
                .compose(&self.whisker(&bsw, &self.cap(b), &e), &self.whisker(&e, &cup, &bsw))
                .map(|m| m.mat.is_identity());
            if left != Ok(true) || right != Ok(true) {
                f.push(format!("snake identity fails for `{}`", self.name_of(b)));
            }
        }
        f
    }

    fn check_stability(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            let bs = self.dual(b);
            let (Ok(cb), Ok(cbs)) = (self.cup(b), self.cup(bs)) else { continue };
            let swapped = self.compose(&self.swap(&cbs.cod, 0).expect("pair"), &cbs);
            if swapped.as_ref().map(|m| &m.mat) != Ok(&cb.mat) {
                f.push(format!("γ ∘ Λ_(b*) != Λ_b for b = `{}`", self.name_of(b)));
            }
        }
        f
    }

    fn check_schur(&self) -> Vec<String> {
        let mut f = Vec::new();
        for a in self.labels() {
            for b in self.labels() {
                let n = self.intertwiners(&ObjectWord::single(a), &ObjectWord::single(b)).len();
                let want = usize::from(a == b);
                if n != want {
                    f.push(format!(
                        "dim Hom({}, {}) = {n}, expected {want}",
                        self.name_of(a),
                        self.name_of(b)
                    ));
                }
            }
        }
        f
    }

    fn check_semisimplicity(&self) -> Vec<String> {
        let mut f = Vec::new();
        let mut words: Vec<ObjectWord> = self.labels().map(ObjectWord::single).collect();
        for b in self.labels() {
            for c in self.labels() {
                words.push(ObjectWord(vec![b, c]));
            }
        }
        for b in self.labels() {
            for c in self.labels() {
                for d in self.labels() {
                    let w = ObjectWord(vec![b, c, d]);
                    if w.dim(self) <= COMPLETENESS_DIM {
                        words.push(w);
                    }
                }
            }
        }
        for w in &words {
            let n = w.dim(self);
            let mut total = Matrix::zeros(self.field(), n, n);
            let mut ok = true;
            for a in self.labels() {
                match self.hom_basis_direct(a, w) {
                    Ok(h) => {
                        for (e, d) in h.basis.iter().zip(&h.duals) {
                            total = &total + &(e * d);
                        }
                    }
                    Err(Error::SemisimplicityFailure(m)) => {
                        f.push(m);
                        ok = false;
                    }
                    Err(e) => {
                        f.push(e.to_string());
                        ok = false;
                    }
                }
            }
            if ok && !total.is_identity() {
                f.push(format!("Σ ε ε* != id on {}", w.display(self)));
            }
        }
        f
    }

    fn check_ranks(&self) -> Vec<String> {
        let mut f = Vec::new();
        for b in self.labels() {
            match self.rank_of(b) {
                Ok(r) if r.is_zero() => f.push(format!("r({}) = 0", self.name_of(b))),
                Ok(r) => {
                    if self.rank_of(self.dual(b)).ok() != Some(r) {
                        f.push(format!("r({0}) != r({0}*)", self.name_of(b)));
                    }
                }
                Err(_) => f.push(format!("r({}) undefined", self.name_of(b))),
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Matrix};
    use crate::category::{builtin, Simple};

    #[test]
    fn builtins_pass() {
        for name in ["zn:1", "zn:4", "rep-z2-q", "rep-z3-q", "rep-s3-q"] {
            let r = builtin(name).unwrap().unwrap().validate();
            assert!(r.passed(), "{name}: {r}");
        }
    }

    fn regular_z2_over_f2() -> CategoryData {
        let f2 = Field::prime(2).unwrap();
        let simples = vec![
            Simple {
                name: "triv".into(),
                dim: 1,
                dual: 0,
                grade: 0,
                generators: vec![Matrix::from_i64(f2, &[&[1]])],
                pairing: Matrix::from_i64(f2, &[&[1]]),
            },
            Simple {
                name: "reg".into(),
                dim: 2,
                dual: 1,
                grade: 0,
                generators: vec![Matrix::from_i64(f2, &[&[0, 1], &[1, 0]])],
                pairing: Matrix::identity(f2, 2),
            },
        ];
        CategoryData::new_unchecked("reg-z2-f2", f2, 1, None, simples).unwrap()
    }

    #[test]
    fn modular_regular_rep_fails() {
        let r = regular_z2_over_f2().validate();
        assert!(!r.passed());
        assert!(!r.check("schur").unwrap().passed());
        let ss = r.check("semisimplicity").unwrap();
        assert!(ss.failures.iter().any(|m| m.contains("singular Gram")), "{r}");
        assert!(!r.check("ranks").unwrap().passed());
    }

    #[test]
    fn degenerate_pairing_fails() {
        let c = builtin("rep-s3-q").unwrap().unwrap();
        let mut simples = c.simples().to_vec();
        simples[2].pairing = Matrix::from_i64(c.field(), &[&[1, 1], &[1, 1]]);
        let bad = CategoryData::new_unchecked("bad", c.field(), 2, None, simples).unwrap();
        let r = bad.validate();
        assert!(!r.check("nondegeneracy").unwrap().passed());
    }

    #[test]
    fn asymmetric_pairing_breaks_stability() {
        let q = Field::Rational;
        // Z_3 lines with λ_1 = [2], λ_2 = [1]: snakes hold, stability does not.
        let line = |k: u64, p: i64| Simple {
            name: k.to_string(),
            dim: 1,
            dual: ((3 - k) % 3) as usize,
            grade: k,
            generators: vec![],
            pairing: Matrix::from_i64(q, &[&[p]]),
        };
        let c = CategoryData::new_unchecked("twisted", q, 0, Some(3), vec![line(0, 1), line(1, 2), line(2, 1)])
            .unwrap();
        let r = c.validate();
        assert!(r.check("snake").unwrap().passed());
        assert!(!r.check("stability").unwrap().passed());
    }
}
