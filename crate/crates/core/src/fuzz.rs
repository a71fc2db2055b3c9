//! Randomized checks that the invariant does not change under AC moves.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::Scalar;
use crate::category::CategoryData;
use crate::error::{Error, Result};
use crate::eval_global::{q_invariant_global_with, EvalOptions};
use crate::eval_state::q_invariant_state_with;
use crate::presentation::{apply_move, random_move, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Global,
    State,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "global" => Ok(Method::Global),
            "state" => Ok(Method::State),
            "both" => Ok(Method::Both),
            _ => Err(Error::parse(0, format!("unknown method `{s}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Global => "global",
            Method::State => "state",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Scalar,
    /// For [`Method::Both`], whether the two evaluators agreed; `value` is
    /// then the global one.
    pub agree: Option<bool>,
    pub state_value: Option<Scalar>,
}

pub fn evaluate(p: &Presentation, c: &CategoryData, method: Method, opts: &EvalOptions) -> Result<Evaluation> {
    match method {
        Method::Global => Ok(Evaluation {
            value: q_invariant_global_with(p, c, opts)?,
            agree: None,
            state_value: None,
        }),
        Method::State => Ok(Evaluation {
            value: q_invariant_state_with(p, c, opts)?,
            agree: None,
            state_value: None,
        }),
        Method::Both => {
            let g = q_invariant_global_with(p, c, opts)?;
            let s = q_invariant_state_with(p, c, opts)?;
            Ok(Evaluation {
                agree: Some(g == s),
                value: g,
                state_value: Some(s),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Each trial applies between 1 and `moves` random moves.
    pub moves: usize,
    pub trials: usize,
    pub seed: u64,
    pub method: Method,
}

/// One trial: the moves applied, in replayable text form, and what came out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzTrial {
    pub index: usize,
    pub moves: Vec<String>,
    pub result: Presentation,
    /// The value of `result`, or the error that stopped its evaluation.
    pub value: std::result::Result<Evaluation, Error>,
}

impl FuzzTrial {
    /// Whether the trial shows a change of the invariant (or a disagreement
    /// between the evaluators). Trials whose evaluation failed are not
    /// discrepancies; see [`FuzzReport::errors`].
    pub fn is_discrepancy(&self, base: &Scalar) -> bool {
        match &self.value {
            Ok(e) => &e.value != base || e.agree == Some(false),
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzReport {
    pub base: Evaluation,
    pub trials: Vec<FuzzTrial>,
}

impl FuzzReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &FuzzTrial> {
        self.trials.iter().filter(|t| t.is_discrepancy(&self.base.value))
    }

    pub fn errors(&self) -> impl Iterator<Item = &FuzzTrial> {
        self.trials.iter().filter(|t| t.value.is_err())
    }

    pub fn clean(&self) -> bool {
        self.base.agree != Some(false) && self.discrepancies().next().is_none() && self.errors().next().is_none()
    }
}

/// The moves of trial `index`: a ChaCha8 stream keyed by `(seed, index)`, so
/// trials are independent of each other and of scheduling.
pub fn trial_moves(p: &Presentation, moves: usize, seed: u64, index: usize) -> Result<(Vec<String>, Presentation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let count = if moves == 0 { 0 } else { rng.gen_range(1..=moves) };
    let mut q = p.clone();
    let mut log = Vec::with_capacity(count);
    for _ in 0..count {
        let m = random_move(&q, &mut rng);
        log.push(m.describe(&q));
        q = apply_move(&q, &m)?;
    }
    Ok((log, q))
}

/// Runs the trials in parallel; the report lists them in index order.
pub fn fuzz(p: &Presentation, c: &CategoryData, cfg: &FuzzConfig, opts: &EvalOptions) -> Result<FuzzReport> {
    let base = evaluate(p, c, cfg.method, opts)?;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let (moves, result) = trial_moves(p, cfg.moves, cfg.seed, index)?;
            let value = evaluate(&result, c, cfg.method, opts);
            Ok(FuzzTrial {
                index,
                moves,
                result,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzReport { base, trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::builtin;
    use crate::presentation::{parse_move, parse_presentation};

    #[test]
    fn trials_replay_from_their_logs() {
        let p = parse_presentation("<x,y | x^2y^-2x^-1y>").unwrap();
        for index in 0..20 {
            let (log, q) = trial_moves(&p, 8, 99, index).unwrap();
            assert!(!log.is_empty() && log.len() <= 8);
            let mut r = p.clone();
            for line in &log {
                r = apply_move(&r, &parse_move(line, &r).unwrap()).unwrap();
            }
            assert_eq!(r, q);
        }
    }

    #[test]
    fn fuzz_is_deterministic_and_clean() {
        let c = builtin("zn:3").unwrap().unwrap();
        let p = parse_presentation("<x,y | xyx^-1y>").unwrap();
        let cfg = FuzzConfig {
            moves: 5,
            trials: 12,
            seed: 5,
            method: Method::Global,
        };
        let a = fuzz(&p, &c, &cfg, &EvalOptions::default()).unwrap();
        let b = fuzz(&p, &c, &cfg, &EvalOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.clean());
        assert!(a.base.value.is_one());
    }

    #[test]
    fn methods_parse() {
        for m in [Method::Global, Method::State, Method::Both] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
