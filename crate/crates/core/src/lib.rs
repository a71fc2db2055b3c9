//! Andrews–Curtis invariants of finite group presentations, computed exactly
//! over explicitly given semisimple symmetric tensor categories.

pub mod arith;
pub mod category;
pub mod error;
pub mod eval_global;
pub mod eval_state;
pub mod fuzz;
pub mod oracle;
pub mod presentation;
pub mod probes;

pub use error::{Error, Result};
