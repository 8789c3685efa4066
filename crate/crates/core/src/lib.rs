//! A toolchain for a small reversible combinator language over finite
//! types: parsing and printing, type checking by unification, forward and
//! backward evaluation, denotational semantics into finite permutations
//! with decidable program equivalence and permutation synthesis, classical
//! effect layers for allocation and hiding, a quantum matrix backend with
//! channels in Stinespring normal form, and a reversible Turing machine
//! laboratory built around history tapes and the compute-copy-uncompute
//! construction.

pub mod ast;
pub mod denote;
pub mod effects;
pub mod error;
pub mod eval;
pub mod finfun;
pub mod gen;
pub mod par;
pub mod parser;
pub mod perm;
pub mod pinj;
pub mod quantum;
pub mod tm;
pub mod typecheck;
pub mod types;
pub mod value;

pub use ast::{Comb, Prim, QComb, QPrim, Term};
pub use error::*;
pub use types::ValueType;
pub use value::Value;
