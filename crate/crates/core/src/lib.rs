//! Restricted Kolmogorov complexity over computably enumerable classes of
//! total functions, anticomplex sets, and the semi-decision machinery that
//! turns a staged acceptor into a cover by cylinders intersected with
//! anticomplex sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`word`] and [`class`]: finite words, function indices and the
//!   [`EffectiveClass`] abstraction.
//! - [`ec`] and [`pr`]: the two concrete classes (eventually-constant
//!   functions, and a primitive-recursive term language).
//! - [`complexity`]: `K_C` on words, profiles, and the finite sets `C_k`, `C_k^p`.
//! - [`order`] and [`anticomplex`]: computable orders and `A_{C,h}`.
//! - [`topology`]: effective opens, staged acceptors, the oracle-with-bound
//!   semi-decision procedure.
//! - [`cover`]: uniform opens, breakpoint synthesis, cover enumeration and replay.
//! - [`cli`]: the `ceclab` command-line driver.

pub mod anticomplex;
pub mod class;
pub mod cli;
pub mod complexity;
pub mod cover;
pub mod ec;
pub mod error;
pub mod fixture;
pub mod order;
pub mod pr;
pub mod topology;
pub mod word;

pub use class::{Capabilities, EffectiveClass, Equality, FunctionIndex};
pub use error::{Error, Result};
pub use word::FiniteWord;
