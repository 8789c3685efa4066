//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("value `{value}` does not inhabit type `{ty}`")]
    TypeMismatch { value: String, ty: String },
    #[error("index {index} out of range for a type of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot unify `{left}` with `{right}`")]
    Mismatch { left: String, right: String },
    #[error("occurs check: unifying `{var}` with `{ty}` would build an infinite type")]
    Occurs { var: String, ty: String },
    #[error("ambiguous type for `{subterm}`: it is not determined by the context, add an ascription")]
    Ambiguous { subterm: String },
    #[error("term has non-ground principal type `{ty}`; supply a type with `--type` or an ascription")]
    NotGround { ty: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{prim}` applied to ill-typed value `{value}`")]
    IllTyped { prim: String, value: String },
    #[error(transparent)]
    Value(#[from] ValueError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("image is not a bijection on 0..{size} (offending entry {entry})")]
    NotABijection { size: usize, entry: usize },
    #[error("partial map is not injective: {i} and {j} share the image {image}")]
    NotInjective { i: usize, j: usize, image: usize },
    #[error("table entry {entry} not below codomain size {cod}")]
    NotAFunction { entry: usize, cod: usize },
    #[error("a function into an empty codomain exists only from the empty domain")]
    EmptyCodomain,
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EffectError {
    #[error("body has type `{got}`, expected `{expected}`")]
    BodyType { expected: String, got: String },
    #[error("cannot compose: `{left}` then `{right}`")]
    Compose { left: String, right: String },
    #[error("induced map is not injective (bug in construction)")]
    NotInjective,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("dimension mismatch: {context} expected {expected}, got {got}")]
    Dimension { context: String, expected: usize, got: usize },
    #[error("matrix is not unitary (deviation {deviation:.3e} > tolerance {tol:.1e})")]
    NotUnitary { deviation: f64, tol: f64 },
    #[error("matrix is not an isometry (deviation {deviation:.3e} > tolerance {tol:.1e})")]
    NotIsometry { deviation: f64, tol: f64 },
    #[error("matrix is not a density matrix: {reason}")]
    NotDensity { reason: String },
    #[error("channel is not trace preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },
    #[error("pipeline stage {stage}: {msg}")]
    Pipeline { stage: usize, msg: String },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("rule {rule} expects {expected} tape entries, machine has {tapes} tapes")]
    TapeArity { rule: usize, expected: usize, tapes: usize },
    #[error("ambiguous step: rules {a} and {b} both fire in state `{state}` (forward-determinism violation)")]
    AmbiguousStep { a: usize, b: usize, state: String },
    #[error("machine is not forward deterministic: {0} clashing rule pair(s)")]
    NotForwardDeterministic(usize),
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(usize),
    #[error("machine got stuck in state `{state}` after {steps} steps")]
    Stuck { state: String, steps: usize },
    #[error("input symbol `{0}` is not in the machine alphabet")]
    BadInput(String),
    #[error("expected a 1-tape machine, got {0} tapes")]
    NotOneTape(usize),
}
