//! Category files.
//!
//! ```toml
//! name = "rep-z2-q"
//! field = "rational"        # or "prime 7"
//! generators = 1
//! # grading = 3            # optional Z_n grading
//!
//! [[simple]]
//! name = "triv"             # the first simple must be the unit
//! dim = 1
//! dual = "triv"
//! generators = [[[1]]]
//! pairing = [[1]]
//!
//! [[simple]]
//! name = "sign"
//! dim = 1
//! dual = "sign"
//! generators = [[[-1]]]
//! pairing = [[1]]
//! ```
//!
//! Matrix entries are integers or strings such as `"-3/4"`.

use num_bigint::BigInt;
use serde::Deserialize;

use super::{CategoryData, Simple};
use crate::arith::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    #[serde(default)]
    pub name: Option<String>,
    pub field: String,
    #[serde(default)]
    pub generators: usize,
    #[serde(default)]
    pub grading: Option<u64>,
    #[serde(rename = "simple")]
    pub simples: Vec<SimpleSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleSpec {
    pub name: String,
    pub dim: usize,
    pub dual: String,
    #[serde(default)]
    pub grade: u64,
    #[serde(default)]
    pub generators: Vec<Vec<Vec<Entry>>>,
    pub pairing: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "rational" {
        return Ok(Field::Rational);
    }
    if let Some(p) = s.strip_prefix("prime") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad prime in field `{s}`")))?;
        return Ok(Field::prime(p)?);
    }
    Err(Error::parse(0, format!("unknown field `{s}`")))
}

fn entry(field: Field, e: &Entry) -> Result<Scalar> {
    match e {
        Entry::Int(v) => Ok(Scalar::from_i64(field, *v)),
        Entry::Text(t) => {
            let bad = || Error::parse(0, format!("bad matrix entry `{t}`"));
            let (n, d) = match t.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (t.trim(), "1"),
            };
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            Scalar::from_ratio(field, &n, &d).map_err(|_| bad())
        }
    }
}

fn matrix(field: Field, rows: &[Vec<Entry>]) -> Result<Matrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| entry(field, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, rows).map_err(|e| Error::parse(0, e.to_string()))?)
}

impl CategorySpec {
    /// Builds the category without validating it.
    pub fn build(&self) -> Result<CategoryData> {
        let field = parse_field(&self.field)?;
        let mut simples = Vec::with_capacity(self.simples.len());
        for s in &self.simples {
            let dual = self
                .simples
                .iter()
                .position(|t| t.name == s.dual)
                .ok_or_else(|| Error::parse(0, format!("unknown dual `{}` of `{}`", s.dual, s.name)))?;
            if self.simples.iter().filter(|t| t.name == s.name).count() > 1 {
                return Err(Error::parse(0, format!("duplicate simple `{}`", s.name)));
            }
            simples.push(Simple {
                name: s.name.clone(),
                dim: s.dim,
                dual,
                grade: s.grade,
                generators: s
                    .generators
                    .iter()
                    .map(|g| matrix(field, g))
                    .collect::<Result<_>>()?,
                pairing: matrix(field, &s.pairing)?,
            });
        }
        CategoryData::new_unchecked(
            self.name.clone().unwrap_or_else(|| "custom".into()),
            field,
            self.generators,
            self.grading,
            simples,
        )
    }
}

/// Parses category text (TOML) into an unvalidated category.
pub fn parse_category(text: &str) -> Result<CategoryData> {
    let spec: CategorySpec = toml::from_str(text).map_err(|e| {
        let pos = e.span().map_or(0, |s| s.start);
        Error::parse(pos, e.message().to_string())
    })?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = r#"
        name = "z2-file"
        field = "rational"
        generators = 1
        [[simple]]
        name = "triv"
        dim = 1
        dual = "triv"
        generators = [[[1]]]
        pairing = [[1]]
        [[simple]]
        name = "sign"
        dim = 1
        dual = "sign"
        generators = [[["-1"]]]
        pairing = [["1/1"]]
    "#;

    #[test]
    fn parses_small_file() {
        let c = parse_category(Z2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.name(), "z2-file");
        assert!(c.validate().passed());
    }

    #[test]
    fn malformed_file_is_parse_error() {
        assert!(matches!(parse_category("field = "), Err(Error::Parse { .. })));
        assert!(matches!(parse_category("field = \"real\"\n[[simple]]\nname=\"a\"\ndim=1\ndual=\"a\"\npairing=[[1]]"), Err(Error::Parse { .. })));
        let ragged = Z2.replace("pairing = [[1]]", "pairing = [[1, 2]]");
        assert!(matches!(parse_category(&ragged), Err(Error::Parse { .. })));
    }

    #[test]
    fn prime_fields() {
        assert_eq!(parse_field("prime 7").unwrap(), Field::Prime(7));
        assert!(parse_field("prime 8").is_err());
    }
}
