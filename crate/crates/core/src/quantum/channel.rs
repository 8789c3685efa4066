//! Isometries, density matrices, and channels in Stinespring normal
//! form: prepare an auxiliary summand, run one unitary, trace out a
//! tensor factor. Preparation uses the direct-sum injection; discarding
//! uses the partial trace over a tensor factor.

use num_complex::Complex64;

use crate::error::QuantumError;
use crate::parser::StageSpec;
use crate::quantum::matrix::{CMatrix, C64, ONE, ZERO};
use crate::quantum::{denote_q, STRUCT_TOL};
use crate::typecheck::check_inferred;

/// A norm-preserving linear map `V : C^dom -> C^cod`, `V†V = I`.
#[derive(Debug, Clone)]
pub struct Isometry {
    m: CMatrix,
}

impl Isometry {
    pub fn new(m: CMatrix) -> Result<Isometry, QuantumError> {
        let deviation = m.isometry_deviation();
        if deviation > STRUCT_TOL {
            return Err(QuantumError::NotIsometry { deviation, tol: STRUCT_TOL });
        }
        Ok(Isometry { m })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dom(&self) -> usize {
        self.m.cols()
    }

    pub fn cod(&self) -> usize {
        self.m.rows()
    }
}

/// A mixed state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<DensityMatrix, QuantumError> {
        Self::with_tolerance(m, STRUCT_TOL)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<DensityMatrix, QuantumError> {
        if m.rows() != m.cols() {
            return Err(QuantumError::NotDensity { reason: format!("{}x{} is not square", m.rows(), m.cols()) });
        }
        let herm = m.sup_distance(&m.dagger());
        if herm > tol {
            return Err(QuantumError::NotDensity { reason: format!("not Hermitian (deviation {herm:.3e})") });
        }
        let tr = m.trace();
        if (tr - ONE).norm() > tol {
            return Err(QuantumError::NotDensity { reason: format!("trace is {tr}, not 1") });
        }
        let min = m.min_hermitian_eigenvalue();
        if min < -tol {
            return Err(QuantumError::NotDensity { reason: format!("negative eigenvalue {min:.3e}") });
        }
        Ok(DensityMatrix { m })
    }

    /// `|k><k|` on `C^dim`.
    pub fn basis(dim: usize, k: usize) -> DensityMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        m[(k, k)] = ONE;
        DensityMatrix { m }
    }

    /// `|ψ><ψ|` for a (normalized) state vector.
    pub fn pure(state: &[C64]) -> Result<DensityMatrix, QuantumError> {
        let n: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > STRUCT_TOL {
            return Err(QuantumError::NotDensity { reason: format!("state norm² is {n}, not 1") });
        }
        let dim = state.len();
        DensityMatrix::new(CMatrix::from_fn(dim, dim, |i, j| state[i] * state[j].conj()))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// Diagonal entries: the Born-rule outcome distribution in the
    /// computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.m[(i, i)].re).collect()
    }
}

/// Partial trace over the trailing tensor factor of size `env`:
/// `out[i,j] = Σ_g m[i·env+g, j·env+g]`.
pub fn partial_trace_env(m: &CMatrix, env: usize) -> CMatrix {
    assert_eq!(m.rows(), m.cols());
    assert!(env > 0 && m.rows().is_multiple_of(env));
    let keep = m.rows() / env;
    CMatrix::from_fn(keep, keep, |i, j| {
        (0..env).map(|g| m[(i * env + g, j * env + g)]).sum()
    })
}

/// A completely positive trace-preserving map in Stinespring normal
/// form: inject `C^in` into `C^(in+prep)`, apply `unitary`, read the
/// result as `C^out ⊗ C^discard` and trace out the environment.
#[derive(Debug, Clone)]
pub struct Channel {
    in_dim: usize,
    prep_dim: usize,
    out_dim: usize,
    discard_dim: usize,
    unitary: CMatrix,
}

impl Channel {
    pub fn new(
        in_dim: usize,
        prep_dim: usize,
        out_dim: usize,
        discard_dim: usize,
        unitary: CMatrix,
    ) -> Result<Channel, QuantumError> {
        let total = in_dim + prep_dim;
        if out_dim * discard_dim != total {
            return Err(QuantumError::Dimension {
                context: "normal form".to_string(),
                expected: total,
                got: out_dim * discard_dim,
            });
        }
        if unitary.rows() != total || unitary.cols() != total {
            return Err(QuantumError::Dimension {
                context: "normal-form unitary".to_string(),
                expected: total,
                got: unitary.rows(),
            });
        }
        unitary.check_unitary(STRUCT_TOL)?;
        Ok(Channel { in_dim, prep_dim, out_dim, discard_dim, unitary })
    }

    pub fn identity(dim: usize) -> Channel {
        Channel {
            in_dim: dim,
            prep_dim: 0,
            out_dim: dim,
            discard_dim: 1,
            unitary: CMatrix::identity(dim),
        }
    }

    pub fn from_unitary(u: CMatrix) -> Result<Channel, QuantumError> {
        let dim = u.rows();
        Channel::new(dim, 0, dim, 1, u)
    }

    /// Dilate an isometry `V : C^in -> C^(out·discard)`: complete its
    /// columns to a unitary, record the padding as preparation.
    pub fn from_isometry(v: &Isometry, out_dim: usize, discard_dim: usize) -> Result<Channel, QuantumError> {
        let total = out_dim * discard_dim;
        if v.cod() != total {
            return Err(QuantumError::Dimension {
                context: "isometry codomain".to_string(),
                expected: total,
                got: v.cod(),
            });
        }
        let u = complete_to_unitary(v.matrix());
        Channel::new(v.dom(), total - v.dom(), out_dim, discard_dim, u)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn prep_dim(&self) -> usize {
        self.prep_dim
    }

    pub fn discard_dim(&self) -> usize {
        self.discard_dim
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// The isometry `C^in -> C^(out·discard)`: the first `in` columns of
    /// the normal-form unitary.
    pub fn isometry(&self) -> CMatrix {
        self.unitary.first_columns(self.in_dim)
    }

    /// Kraus operators `K_g = (I ⊗ <g|) V`.
    pub fn kraus(&self) -> Vec<CMatrix> {
        let v = self.isometry();
        (0..self.discard_dim)
            .map(|g| {
                CMatrix::from_fn(self.out_dim, self.in_dim, |i, h| v[(i * self.discard_dim + g, h)])
            })
            .collect()
    }

    /// Apply to an arbitrary matrix on the input space (no density
    /// validation; used for Choi construction).
    pub fn apply_raw(&self, rho: &CMatrix) -> CMatrix {
        let v = self.isometry();
        let big = v.mul(rho).mul(&v.dagger());
        partial_trace_env(&big, self.discard_dim)
    }

    /// Apply to a state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix, QuantumError> {
        if rho.dim() != self.in_dim {
            return Err(QuantumError::Dimension {
                context: "channel input".to_string(),
                expected: self.in_dim,
                got: rho.dim(),
            });
        }
        DensityMatrix::new(self.apply_raw(rho.matrix()))
    }

    /// Sequential composition `self` then `other`, staying in normal
    /// form: heaps concatenate (the later one enters tensored with the
    /// earlier garbage), garbage factors multiply.
    pub fn then(&self, other: &Channel) -> Result<Channel, QuantumError> {
        if other.in_dim != self.out_dim {
            return Err(QuantumError::Dimension {
                context: "channel composition".to_string(),
                expected: self.out_dim,
                got: other.in_dim,
            });
        }
        let g1 = self.discard_dim;
        let e2g1 = other.prep_dim * g1;
        // (U2 ⊗ I_{G1}) · (U1 ⊕ I_{E2·G1}); the distributor between the
        // two is the identity on row-major indices
        let lift1 = self.unitary.direct_sum(&CMatrix::identity(e2g1));
        let lift2 = other.unitary.kron(&CMatrix::identity(g1));
        let u = lift2.mul(&lift1);
        Channel::new(
            self.in_dim,
            self.prep_dim + e2g1,
            other.out_dim,
            other.discard_dim * g1,
            u,
        )
    }

    /// Trace-preservation defect `‖Σ K†K − I‖∞`.
    pub fn tp_deviation(&self) -> f64 {
        let mut acc = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in self.kraus() {
            acc = acc.add(&k.dagger().mul(&k));
        }
        acc.sup_distance(&CMatrix::identity(self.in_dim))
    }

    /// The Choi matrix `C[(a,i),(b,j)] = Λ(|a><b|)[i,j]`; positive
    /// semidefinite exactly when the map is completely positive.
    pub fn choi(&self) -> CMatrix {
        let (h, k) = (self.in_dim, self.out_dim);
        let mut c = CMatrix::zeros(h * k, h * k);
        for a in 0..h {
            for b in 0..h {
                let mut e = CMatrix::zeros(h, h);
                e[(a, b)] = ONE;
                let out = self.apply_raw(&e);
                for i in 0..k {
                    for j in 0..k {
                        c[(a * k + i, b * k + j)] = out[(i, j)];
                    }
                }
            }
        }
        c
    }

    /// Smallest Choi eigenvalue; `≥ -tol` certifies complete positivity.
    pub fn choi_min_eigenvalue(&self) -> f64 {
        self.choi().min_hermitian_eigenvalue()
    }

    /// Channels are compared by their action: equality of Choi matrices.
    pub fn approx_eq(&self, other: &Channel, tol: f64) -> bool {
        self.in_dim == other.in_dim
            && self.out_dim == other.out_dim
            && self.choi().approx_eq(&other.choi(), tol)
    }
}

/// Extend an isometry's columns to an orthonormal basis by modified
/// Gram-Schmidt over the standard basis.
fn complete_to_unitary(v: &CMatrix) -> CMatrix {
    let n = v.rows();
    let mut cols: Vec<Vec<C64>> = (0..v.cols()).map(|k| v.column(k)).collect();
    for e in 0..n {
        if cols.len() == n {
            break;
        }
        let mut cand: Vec<C64> = vec![ZERO; n];
        cand[e] = ONE;
        // two passes of projection for numerical stability
        for _ in 0..2 {
            for col in &cols {
                let overlap: C64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                for (c, a) in cand.iter_mut().zip(col) {
                    *c -= overlap * a;
                }
            }
        }
        let norm: f64 = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for z in &mut cand {
                *z /= Complex64::new(norm, 0.0);
            }
            cols.push(cand);
        }
    }
    assert_eq!(cols.len(), n, "Gram-Schmidt completion found a full basis");
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// The computational-basis measurement channel on `dim` outcomes,
/// `clone ; fst` in channel form: clone isometrically onto the diagonal,
/// then trace out the copy.
pub fn measure_dim(dim: usize) -> Result<Channel, QuantumError> {
    let mut v = CMatrix::zeros(dim * dim, dim);
    for k in 0..dim {
        v[(k * dim + k, k)] = ONE;
    }
    Channel::from_isometry(&Isometry::new(v)?, dim, dim)
}

/// Build a channel from pipeline stages. The input dimension is taken
/// from an `input` stage or inferred from the first stage that fixes it.
pub fn channel_from_stages(stages: &[StageSpec]) -> Result<Channel, QuantumError> {
    let mut dim: Option<usize> = None;
    let mut chan: Option<Channel> = None;
    for (i, stage) in stages.iter().enumerate() {
        let stage_err = |msg: String| QuantumError::Pipeline { stage: i + 1, msg };
        let step = match stage {
            StageSpec::Input(n) => {
                if chan.is_some() || dim.is_some() {
                    return Err(stage_err("`input` must come first".to_string()));
                }
                dim = Some(*n);
                continue;
            }
            StageSpec::Prepare(e) => {
                let d = dim.ok_or_else(|| stage_err("`prepare` needs a preceding `input N`".to_string()))?;
                Channel::new(d, *e, d + *e, 1, CMatrix::identity(d + *e))?
            }
            StageSpec::Discard(g) => {
                let d = dim.ok_or_else(|| stage_err("`discard` needs a preceding `input N`".to_string()))?;
                if *g == 0 || d % *g != 0 {
                    return Err(stage_err(format!("cannot discard a factor of {g} from dimension {d}")));
                }
                Channel::new(d, 0, d / *g, *g, CMatrix::identity(d))?
            }
            StageSpec::Unitary(qc) => {
                let tt = check_inferred(qc)?;
                let u = denote_q(qc, &tt.dom, &tt.cod)?;
                if let Some(d) = dim {
                    if u.dim() != d {
                        return Err(stage_err(format!("unitary expects dimension {}, pipeline is at {d}", u.dim())));
                    }
                }
                dim.get_or_insert(u.dim());
                Channel::from_unitary(u.into_matrix())?
            }
            StageSpec::Measure(b) => {
                let n = b.size();
                if let Some(d) = dim {
                    if n != d {
                        return Err(stage_err(format!("measure expects dimension {n}, pipeline is at {d}")));
                    }
                }
                dim.get_or_insert(n);
                measure_dim(n)?
            }
        };
        dim = Some(step.out_dim());
        chan = Some(match chan {
            None => step,
            Some(c) => c.then(&step)?,
        });
    }
    match (chan, dim) {
        (Some(c), _) => Ok(c),
        (None, Some(d)) => Ok(Channel::identity(d)),
        (None, None) => Err(QuantumError::Pipeline { stage: 0, msg: "empty pipeline".to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::hadamard;

    #[test]
    fn identity_channel_is_identity() {
        let c = Channel::identity(2);
        let rho = DensityMatrix::basis(2, 1);
        let out = c.apply(&rho).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 0.0));
        assert!(c.tp_deviation() < 1e-12);
    }

    #[test]
    fn identity_isometry_dilates_to_the_identity_channel() {
        let v = Isometry::new(CMatrix::identity(3)).unwrap();
        let c = Channel::from_isometry(&v, 3, 1).unwrap();
        assert!(c.approx_eq(&Channel::identity(3), 1e-12));
        assert_eq!(c.prep_dim(), 0);
    }

    #[test]
    fn discard_channel_traces_everything() {
        let c = Channel::new(2, 0, 1, 2, CMatrix::identity(2)).unwrap();
        let h = hadamard();
        let plus: Vec<C64> = h.column(0);
        let rho = DensityMatrix::pure(&plus).unwrap();
        let out = c.apply(&rho).unwrap();
        assert_eq!(out.dim(), 1);
        assert!((out.matrix()[(0, 0)] - ONE).norm() < 1e-12);
    }

    #[test]
    fn measure_decoheres_plus_state() {
        let h = hadamard();
        let plus: Vec<C64> = h.column(0);
        let rho = DensityMatrix::pure(&plus).unwrap();
        let m = measure_dim(2).unwrap();
        let out = m.apply(&rho).unwrap();
        let expected = CMatrix::from_fn(2, 2, |i, j| if i == j { C64::new(0.5, 0.0) } else { ZERO });
        assert!(out.matrix().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn measure_fixes_basis_states() {
        let m = measure_dim(2).unwrap();
        for k in 0..2 {
            let rho = DensityMatrix::basis(2, k);
            let out = m.apply(&rho).unwrap();
            assert!(out.matrix().approx_eq(rho.matrix(), 1e-12));
        }
    }

    #[test]
    fn measure_is_idempotent() {
        let m = measure_dim(3).unwrap();
        let twice = m.then(&m).unwrap();
        assert!(m.approx_eq(&twice, 1e-9));
    }

    #[test]
    fn composition_matches_pointwise_application() {
        let h = Channel::from_unitary(hadamard()).unwrap();
        let m = measure_dim(2).unwrap();
        let pipeline = h.then(&m).unwrap().then(&h).unwrap();
        let rho = DensityMatrix::basis(2, 0);
        let direct = h
            .apply(&m.apply(&h.apply(&rho).unwrap()).unwrap())
            .unwrap();
        let composed = pipeline.apply(&rho).unwrap();
        assert!(direct.matrix().approx_eq(composed.matrix(), 1e-12));
    }

    #[test]
    fn choi_of_identity() {
        let c = Channel::identity(2);
        let choi = c.choi();
        // |Ω><Ω| with Ω = Σ|aa>: all four (a,a),(b,b) entries are 1
        assert_eq!(choi.rows(), 4);
        assert!((choi[(0, 0)] - ONE).norm() < 1e-12);
        assert!((choi[(0, 3)] - ONE).norm() < 1e-12);
        assert!(choi.min_hermitian_eigenvalue() > -1e-12);
    }

    #[test]
    fn kraus_of_measurement_are_projectors() {
        let m = measure_dim(2).unwrap();
        let ks = m.kraus();
        assert_eq!(ks.len(), 2);
        for (g, k) in ks.iter().enumerate() {
            let mut expected = CMatrix::zeros(2, 2);
            expected[(g, g)] = ONE;
            assert!(k.approx_eq(&expected, 1e-12));
        }
    }

    #[test]
    fn compute_then_uncompute_is_the_identity_channel() {
        use crate::parser::parse_qcomb;
        use crate::types::ValueType;
        // prepare trivially, run a unitary, run its inverse, discard
        // trivially: the composite must be the identity channel
        let two = ValueType::bool_type();
        let u = crate::quantum::denote_q(&parse_qcomb("H ; T ; S").unwrap(), &two, &two)
            .unwrap()
            .into_matrix();
        let prep = Channel::new(2, 0, 2, 1, CMatrix::identity(2)).unwrap();
        let forward = Channel::from_unitary(u.clone()).unwrap();
        let backward = Channel::from_unitary(u.dagger()).unwrap();
        let disc = Channel::new(2, 0, 2, 1, CMatrix::identity(2)).unwrap();
        let pipeline = prep
            .then(&forward)
            .unwrap()
            .then(&backward)
            .unwrap()
            .then(&disc)
            .unwrap();
        assert!(pipeline.approx_eq(&Channel::identity(2), STRUCT_TOL));
    }

    #[test]
    fn gram_schmidt_completion() {
        let mut v = CMatrix::zeros(4, 2);
        v[(0, 0)] = ONE;
        v[(3, 1)] = ONE;
        let iso = Isometry::new(v).unwrap();
        let c = Channel::from_isometry(&iso, 2, 2).unwrap();
        assert!(c.unitary().unitarity_deviation() < 1e-12);
        assert_eq!(c.prep_dim(), 2);
    }
}
