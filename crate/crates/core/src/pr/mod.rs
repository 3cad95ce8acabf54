//! A primitive-recursive term language and the class of unary functions it
//! enumerates.
//!
//! Grammar (ASCII, whitespace-insensitive):
//!
//! ```text
//! term := "Z" | "S" | "P[" n "," k "]"
//!       | "C(" term ";" term ("," term)* ")"
//!       | "R(" term "," term ")"
//! ```
//!
//! `Z` is the unary zero function, `S` the successor, `P[n,k]` the `k`-th
//! projection of `n` arguments (1-based). `C(f; g1,…,gm)` composes an
//! `m`-ary `f` with `m` inner terms of a common arity `r`. `R(b, s)` recurses
//! on its last argument: `h(x⃗,0) = b(x⃗)`, `h(x⃗,y+1) = s(x⃗, y, h(x⃗,y))`.

mod builders;
mod class;
mod enumerate;
mod eval;
mod parse;
mod term;

use thiserror::Error;

pub use builders::{addition, constant, eventually_constant, monus, multiplication, predecessor};
pub use class::{PrClass, DEFAULT_FUEL};
pub use enumerate::{pr_enumerate, pr_rank, terms_of_size};
pub use eval::pr_eval;
pub use parse::{pr_parse, pr_render};
pub use term::PrTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("arity error in `{node}`: {message}")]
    Arity { node: String, message: String },
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("value overflow during evaluation")]
    Overflow,
}
