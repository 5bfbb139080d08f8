//! Normalization of linear temporal logic formulas into positive Boolean
//! combinations of `Σ₂`/`Π₂` formulas, by two independent procedures: a
//! closed-form contextual construction and a three-stage contextual rewrite
//! system. Normalized formulas translate into very weak alternating automata
//! and determinize, via a break-point construction, into deterministic Rabin
//! automata. An exact evaluator for ultimately periodic (lasso) words serves
//! as the semantic ground truth for every transformation.
//!
//! The crate is `no_std` compatible (it requires `alloc`). Everything is an
//! immutable value; all operations are pure functions.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alternating;
pub mod contextual;
pub mod determinize;
pub mod formula;
pub mod hierarchy;
pub mod lasso;
pub mod measure;
pub mod parse;
pub mod posbool;
pub mod rewrite;
pub mod simplify;

pub use formula::{Formula, Literal, Node, Proposition};
pub use hierarchy::{classify, is_delta2, ClassKind, HierarchyClass};
pub use lasso::{eval_lasso, LassoWord};
pub use measure::{form_status, measures, FormStatus, Measures};
pub use parse::{parse, ParseError};
pub use simplify::simplify;
