//! Quantum matrix backend: combinator terms as unitary matrices, with
//! the three gate primitives, isometries from partially-applied terms,
//! and channels recovered by hiding parts of the input and output.
//!
//! On the classical fragment the matrix semantics is the permutation
//! matrix of the finite-model denotation; the test suites check that
//! square.

pub mod channel;
pub mod matrix;

use std::f64::consts::FRAC_1_SQRT_2;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::ast::{QComb, QPrim};
use crate::denote;
use crate::error::QuantumError;
use crate::typecheck::{check, TypedNode, TypedTerm};
use crate::types::ValueType;
use crate::value::Value;

pub use channel::{channel_from_stages, measure_dim, Channel, DensityMatrix, Isometry};
pub use matrix::{CMatrix, C64};

/// Tolerance for structural checks (unitarity, trace preservation,
/// positivity).
pub const STRUCT_TOL: f64 = 1e-9;

/// Tolerance for exact small-matrix identities.
pub const EXACT_TOL: f64 = 1e-12;

/// A unitary matrix, validated on construction.
#[derive(Debug, Clone)]
pub struct Unitary {
    m: CMatrix,
}

impl Unitary {
    pub fn new(m: CMatrix) -> Result<Unitary, QuantumError> {
        m.check_unitary(STRUCT_TOL)?;
        Ok(Unitary { m })
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }
}

pub fn hadamard() -> CMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    CMatrix::from_rows(vec![vec![h, h], vec![h, -h]])
}

pub fn phase_s() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
    ])
}

pub fn phase_t() -> CMatrix {
    CMatrix::from_rows(vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, FRAC_PI_4)],
    ])
}

fn prim_matrix(p: QPrim, dom: &ValueType, cod: &ValueType) -> Result<CMatrix, QuantumError> {
    match p {
        QPrim::Hadamard => Ok(hadamard()),
        QPrim::PhaseS => Ok(phase_s()),
        QPrim::PhaseT => Ok(phase_t()),
        QPrim::Base(cp) => {
            let perm = denote::denote(&crate::ast::Term::Prim(cp), dom, cod)?;
            Ok(CMatrix::permutation(&perm))
        }
    }
}

fn denote_typed(t: &TypedTerm<QPrim>) -> Result<CMatrix, QuantumError> {
    match &t.node {
        TypedNode::Prim(p) => prim_matrix(*p, &t.dom, &t.cod),
        // matrices compose right-to-left
        TypedNode::Seq(a, b) => Ok(denote_typed(b)?.mul(&denote_typed(a)?)),
        TypedNode::Sum(a, b) => Ok(denote_typed(a)?.direct_sum(&denote_typed(b)?)),
        TypedNode::Prod(a, b) => Ok(denote_typed(a)?.kron(&denote_typed(b)?)),
        TypedNode::Inv(a) => Ok(denote_typed(a)?.dagger()),
    }
}

/// The unitary matrix of a checked quantum term.
pub fn denote_q(c: &QComb, dom: &ValueType, cod: &ValueType) -> Result<Unitary, QuantumError> {
    let tt = check(c, dom, cod)?;
    Unitary::new(denote_typed(&tt)?)
}

/// Restrict a term `b1 + b3 <-> b2` to the `b1`-columns of its matrix:
/// the isometry obtained by fixing the hidden summand.
pub fn iso_lift(
    u: &QComb,
    dom_kept: &ValueType,
    hidden: &ValueType,
    cod: &ValueType,
) -> Result<Isometry, QuantumError> {
    let full_dom = ValueType::sum(dom_kept.clone(), hidden.clone());
    let m = denote_q(u, &full_dom, cod)?;
    Isometry::new(m.matrix().first_columns(dom_kept.size()))
}

/// The measurement channel at a type: clone onto the diagonal, discard
/// the copy. Built from the classical clone term's body so the channel
/// really is `clone ; fst`.
pub fn measure(b: &ValueType) -> Result<Channel, QuantumError> {
    let clone = crate::effects::AllocTerm::clone_term(b).map_err(|e| QuantumError::Pipeline {
        stage: 0,
        msg: e.to_string(),
    })?;
    let v = iso_lift(
        &clone.body().to_quantum(),
        clone.dom(),
        clone.hidden(),
        clone.cod(),
    )?;
    Channel::from_isometry(&v, b.size(), b.size())
}

/// Apply a unitary to a state vector.
pub fn apply_unitary(u: &CMatrix, state: &[C64]) -> Result<Vec<C64>, QuantumError> {
    if state.len() != u.cols() {
        return Err(QuantumError::Dimension {
            context: "state".to_string(),
            expected: u.cols(),
            got: state.len(),
        });
    }
    Ok((0..u.rows())
        .map(|i| (0..u.cols()).map(|j| u[(i, j)] * state[j]).sum())
        .collect())
}

/// Basis state `|k>` where `k` is the enumeration index of `v` in `b`.
pub fn basis_state(b: &ValueType, v: &Value) -> Result<Vec<C64>, QuantumError> {
    let k = v.index(b).map_err(crate::error::ModelError::from)?;
    let mut s = vec![Complex64::new(0.0, 0.0); b.size()];
    s[k] = Complex64::new(1.0, 0.0);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Term;
    use crate::eval::toffoli;
    use crate::parser::{parse_qcomb, parse_type};
    use crate::perm::Permutation;
    use crate::types::ValueType as T;

    #[test]
    fn hh_is_identity() {
        let two = T::bool_type();
        let c = QComb::seq(Term::Prim(QPrim::Hadamard), Term::Prim(QPrim::Hadamard));
        let m = denote_q(&c, &two, &two).unwrap();
        assert!(m.matrix().approx_eq(&CMatrix::identity(2), EXACT_TOL));
    }

    #[test]
    fn tt_is_s() {
        let two = T::bool_type();
        let tt = parse_qcomb("T ; T").unwrap();
        let s = parse_qcomb("S").unwrap();
        let m1 = denote_q(&tt, &two, &two).unwrap();
        let m2 = denote_q(&s, &two, &two).unwrap();
        assert!(m1.matrix().approx_eq(m2.matrix(), EXACT_TOL));
    }

    #[test]
    fn inv_s_is_s_dagger() {
        let two = T::bool_type();
        let c = parse_qcomb("S ; inv S").unwrap();
        let m = denote_q(&c, &two, &two).unwrap();
        assert!(m.matrix().approx_eq(&CMatrix::identity(2), EXACT_TOL));
    }

    #[test]
    fn toffoli_matrix_swaps_6_and_7() {
        let b = parse_type("(1+1)*((1+1)*(1+1))").unwrap();
        let c = toffoli().to_quantum();
        let m = denote_q(&c, &b, &b).unwrap();
        let mut image: Vec<usize> = (0..8).collect();
        image.swap(6, 7);
        assert!(m.matrix().is_permutation_of(&Permutation::from_image(image).unwrap(), EXACT_TOL));
    }

    #[test]
    fn classical_terms_become_permutation_matrices() {
        let b = T::prod(T::bool_type(), T::bool_type());
        let c = crate::eval::cnot();
        let m = denote_q(&c.to_quantum(), &b, &b).unwrap();
        let p = denote::denote(&c, &b, &b).unwrap();
        assert!(m.matrix().is_permutation_of(&p, EXACT_TOL));
    }

    #[test]
    fn iso_lift_with_empty_hidden_part_keeps_the_unitary() {
        let two = T::bool_type();
        // strip the empty summand: (1+1)+0 <-> 1+1
        let strip = QComb::seq(
            Term::Prim(QPrim::Base(crate::ast::Prim::SwapAdd)),
            Term::Prim(QPrim::Base(crate::ast::Prim::UniteAddL)),
        );
        let v = iso_lift(&strip, &two, &T::Zero, &two).unwrap();
        assert!(v.matrix().approx_eq(&CMatrix::identity(2), 0.0));
        // a genuine gate stays itself: unitaries are isometries
        let with_h = QComb::seq(strip, Term::Prim(QPrim::Hadamard));
        let v = iso_lift(&with_h, &two, &T::Zero, &two).unwrap();
        assert!(v.matrix().approx_eq(&hadamard(), EXACT_TOL));
    }

    #[test]
    fn iso_lift_of_clone_body() {
        let b = T::bool_type();
        let clone = crate::effects::AllocTerm::clone_term(&b).unwrap();
        let v = iso_lift(&clone.body().to_quantum(), clone.dom(), clone.hidden(), clone.cod()).unwrap();
        assert_eq!(v.dom(), 2);
        assert_eq!(v.cod(), 4);
        let m = v.matrix();
        assert!((m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < EXACT_TOL);
        assert!((m[(3, 1)] - Complex64::new(1.0, 0.0)).norm() < EXACT_TOL);
    }

    #[test]
    fn measure_equals_direct_construction() {
        let b = T::sum(T::One, T::bool_type());
        let via_clone = measure(&b).unwrap();
        let direct = measure_dim(3).unwrap();
        assert!(via_clone.approx_eq(&direct, EXACT_TOL));
    }

    #[test]
    fn measure_probabilities_sum_to_one() {
        let b = T::bool_type();
        let m = measure(&b).unwrap();
        let h = hadamard();
        let rho = DensityMatrix::pure(&h.column(0)).unwrap();
        let out = m.apply(&rho).unwrap();
        let total: f64 = out.probabilities().iter().sum();
        assert!((total - 1.0).abs() < EXACT_TOL);
    }
}
