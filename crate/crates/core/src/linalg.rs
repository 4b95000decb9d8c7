//! Dense complex linear algebra and entropy primitives.
//!
//! Matrices are `nalgebra` dynamic matrices over [`C64`]. Two newtypes carry
//! the invariants the rest of the crate relies on: [`Ket`] (unit vector) and
//! [`DensityOperator`] (Hermitian, positive semidefinite, unit trace).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default tolerances. Every operation that uses one also has a variant
/// taking an explicit tolerance.
pub mod tol {
    /// Maximum `|H - H^dagger|` accepted by the eigensolver.
    pub const HERMITIAN: f64 = 1e-8;
    /// Eigenvalues / probabilities below this are treated as exactly zero.
    pub const CLAMP: f64 = 1e-12;
    /// State validation (Hermiticity, trace, positivity, ket norm).
    pub const STATE: f64 = 1e-10;
    /// Verdicts on groups, representations and invariance.
    pub const VERDICT: f64 = 1e-9;
    /// Pairwise commutation for simultaneous diagonalization.
    pub const COMMUTE: f64 = 1e-8;
}

const DEFAULT_BASIS_SEED: u64 = 0x5eed_ba515;
const BASIS_ATTEMPTS: usize = 5;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c64(0., 0.), c64(1., 0.), c64(1., 0.), c64(0., 0.)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c64(0., 0.), c64(0., -1.), c64(0., 1.), c64(0., 0.)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c64(1., 0.), c64(0., 0.), c64(0., 0.), c64(-1., 0.)])
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn unitarity_residual(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn ensure_square(m: &CMatrix) -> Result<usize> {
    if m.is_square() {
        Ok(m.nrows())
    } else {
        Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() })
    }
}

pub fn ensure_unitary(u: &CMatrix, tol: f64) -> Result<()> {
    ensure_square(u)?;
    let residual = unitarity_residual(u);
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

fn ensure_finite(m: &CMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// `U A U^dagger`.
pub fn conjugate(u: &CMatrix, a: &CMatrix) -> CMatrix {
    u * a * u.adjoint()
}

/// Hilbert-Schmidt inner product `Tr(A^dagger B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Kronecker product, with the indices of `a` major.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

pub fn tensor_vector(a: &CVector, b: &CVector) -> CVector {
    let n = b.len();
    CVector::from_fn(a.len() * n, |i, _| a[i / n] * b[i % n])
}

/// Tensor power `m^{⊗n}`, `n >= 1`.
pub fn tensor_power(m: &CMatrix, n: usize) -> CMatrix {
    assert!(n >= 1, "tensor power needs at least one factor");
    let mut out = m.clone();
    for _ in 1..n {
        out = tensor_product(&out, m);
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted in descending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `eigenvalues`.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&CVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&x| c64(x, 0.)),
        ));
        conjugate(&self.eigenvectors, &d)
    }
}

pub fn eig_hermitian(h: &CMatrix) -> Result<Spectrum> {
    eig_hermitian_with_tol(h, tol::HERMITIAN)
}

/// Hermitian eigendecomposition. The input is symmetrized as `(H + H^dagger)/2`
/// before decomposition; eigenvalues come back descending and each eigenvector
/// is phased so its first non-negligible component is real and positive.
pub fn eig_hermitian_with_tol(h: &CMatrix, tol: f64) -> Result<Spectrum> {
    let n = ensure_square(h)?;
    ensure_finite(h)?;
    let residual = hermiticity_residual(h);
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-10).copied() {
            let phase = lead.conj() / lead.norm();
            col *= phase;
        }
        vectors.set_column(dst, &col);
    }
    Ok(Spectrum { eigenvalues: order.iter().map(|&i| eig.eigenvalues[i]).collect(), eigenvectors: vectors })
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_map(h: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let spec = eig_hermitian(h)?;
    let mapped = Spectrum { eigenvalues: spec.eigenvalues.iter().map(|&x| f(x)).collect(), ..spec };
    Ok(mapped.reconstruct())
}

/// `-Σ w log₂ w` over weights already known to be a distribution; weights
/// below the clamp threshold contribute nothing.
pub(crate) fn entropy_bits(weights: impl IntoIterator<Item = f64>) -> f64 {
    weights.into_iter().filter(|&w| w > tol::CLAMP).map(|w| -w * w.log2()).sum()
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    validate_distribution(p)?;
    Ok(entropy_bits(p.iter().copied()))
}

pub(crate) fn validate_distribution(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotDistribution("empty distribution".into()));
    }
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < -tol::CLAMP) {
        return Err(Error::NotDistribution(format!("entry {bad} is negative or non-finite")));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotDistribution(format!("entries sum to {sum}")));
    }
    Ok(())
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let spec = eig_hermitian(rho.matrix())?;
    Ok(entropy_bits(spec.eigenvalues))
}

/// A unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(CVector);

impl Ket {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        Self::with_tol(amplitudes, tol::STATE)
    }

    pub fn with_tol(amplitudes: CVector, tol: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::BadParameter("ket must have at least one amplitude".into()));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(amplitudes))
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(amplitudes.unscale(norm)))
    }

    pub fn from_slice(amplitudes: &[C64]) -> Result<Self> {
        Self::new(CVector::from_column_slice(amplitudes))
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::BadParameter(format!("basis index {k} out of range for dimension {dim}")));
        }
        let mut v = CVector::zeros(dim);
        v[k] = c64(1., 0.);
        Ok(Self(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn tensor(&self, other: &Ket) -> Ket {
        Ket(tensor_vector(&self.0, &other.0))
    }

    /// `U|self⟩`; `u` must be unitary for the result to stay normalized.
    pub fn apply(&self, u: &CMatrix) -> Result<Ket> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.ncols() });
        }
        Ket::new(u * &self.0)
    }

    pub fn projector(&self) -> CMatrix {
        &self.0 * self.0.adjoint()
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_matrix_unchecked(self.projector())
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(CMatrix);

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tol(matrix, tol::STATE)
    }

    pub fn with_tol(matrix: CMatrix, tol: f64) -> Result<Self> {
        ensure_square(&matrix)?;
        ensure_finite(&matrix)?;
        let herm = hermiticity_residual(&matrix);
        if herm > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (residual {herm:.3e})")));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace is {trace}, expected 1")));
        }
        let rho = Self::from_matrix_unchecked(matrix);
        let min = eig_hermitian(&rho.0)?.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(rho)
    }

    /// Symmetrizes and wraps a matrix that is a density operator by
    /// construction (conjugations, convex mixtures).
    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        let sym = (&matrix + matrix.adjoint()).scale(0.5);
        Self(sym)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(identity(dim).unscale(dim as f64))
    }

    /// Convex mixture `Σ wᵢ ρᵢ`. Weights must form a distribution and all
    /// states must share one dimension.
    pub fn mixture(weights: &[f64], states: &[DensityOperator]) -> Result<Self> {
        validate_distribution(weights)?;
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::BadParameter("weights and states differ in length".into()));
        }
        let dim = states[0].dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            acc += s.matrix().scale(w.max(0.0));
        }
        Ok(Self::from_matrix_unchecked(acc))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `U ρ U^dagger`, `u` unitary.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        if u.ncols() != self.dim() || u.nrows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.ncols() });
        }
        Ok(Self::from_matrix_unchecked(conjugate(u, &self.0)))
    }

    pub fn entropy(&self) -> f64 {
        // The matrix is Hermitian by construction, so the eigensolver cannot fail.
        von_neumann_entropy(self).expect("density operator is Hermitian")
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        Self(tensor_product(&self.0, &other.0))
    }
}

/// Commutator residual `max |AB - BA|`.
pub fn commutator_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs_diff(&(a * b), &(b * a))
}

pub fn simultaneous_eigenbasis(ops: &[CMatrix]) -> Result<CMatrix> {
    simultaneous_eigenbasis_with(ops, tol::COMMUTE, DEFAULT_BASIS_SEED)
}

/// Orthonormal basis (as columns) diagonalizing every operator in `ops`.
///
/// Diagonalizes a random real combination `Σ cᵢ Hᵢ`, which splits shared
/// degeneracies with probability one, and checks the result against every
/// input. Up to five seeds are tried.
pub fn simultaneous_eigenbasis_with(ops: &[CMatrix], tol: f64, seed: u64) -> Result<CMatrix> {
    let Some(first) = ops.first() else {
        return Err(Error::BadParameter("no operators given".into()));
    };
    let dim = ensure_square(first)?;
    for op in ops {
        let d = ensure_square(op)?;
        if d != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d });
        }
        let residual = hermiticity_residual(op);
        if residual > tol::HERMITIAN.max(tol) {
            return Err(Error::NotHermitian { residual });
        }
    }
    let mut worst = 0.0f64;
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            worst = worst.max(commutator_residual(a, b));
        }
    }
    if worst > tol {
        return Err(Error::NotCommuting { residual: worst });
    }

    for attempt in 0..BASIS_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut combo = CMatrix::zeros(dim, dim);
        for op in ops {
            combo += op.scale(rng.random_range(-1.0..1.0));
        }
        let basis = eig_hermitian_with_tol(&combo, tol::HERMITIAN.max(tol))?.eigenvectors;
        if ops.iter().all(|op| off_diagonal_max(&(basis.adjoint() * op * &basis)) <= tol) {
            return Ok(basis);
        }
    }
    Err(Error::NoCommonBasis { attempts: BASIS_ATTEMPTS })
}

pub fn off_diagonal_max(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, data: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(rows, data.len() / rows, data.iter().map(|&x| c64(x, 0.)))
    }

    #[test]
    fn eig_of_identity_and_sigma_z() {
        let s = eig_hermitian(&identity(3)).unwrap();
        assert_eq!(s.eigenvalues.len(), 3);
        assert!(s.eigenvalues.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        let s = eig_hermitian(&pauli_z()).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_of_two_by_two() {
        // characteristic polynomial (2-λ)² - 1 = 0 → λ = 3, 1
        let s = eig_hermitian(&real(2, &[2., 1., 1., 2.])).unwrap();
        assert!((s.eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-12);
        let v = s.eigenvectors.column(0);
        assert!(v[0].im.abs() < 1e-14 && v[0].re > 0.0);
        assert!((v[0].re - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_bad_inputs() {
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&rect), Err(Error::NotSquare { .. })));
        let skew = real(2, &[0., 1., 0., 0.]);
        assert!(matches!(eig_hermitian(&skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn shannon_values() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-15);
        // -(3/4)log2(3/4) - (1/4)log2(1/4) = 2 - (3/4)log2 3
        assert!((shannon_entropy(&[0.75, 0.25]).unwrap() - 0.811_278_124_459_132_9).abs() < 1e-12);
        assert!(shannon_entropy(&[1.0, -1e-13]).is_ok());
        assert!(matches!(shannon_entropy(&[0.7, 0.7]), Err(Error::NotDistribution(_))));
        assert!(matches!(shannon_entropy(&[1.1, -0.1]), Err(Error::NotDistribution(_))));
    }

    #[test]
    fn von_neumann_values() {
        let plus = Ket::normalized(CVector::from_vec(vec![c64(1., 0.), c64(1., 0.)])).unwrap();
        assert!(plus.density().entropy().abs() < 1e-12);
        assert!((DensityOperator::maximally_mixed(2).entropy() - 1.0).abs() < 1e-12);
        let rho = DensityOperator::new(real(2, &[0.75, 0., 0., 0.25])).unwrap();
        assert!((rho.entropy() - 0.811_278_124_459_132_9).abs() < 1e-12);
    }

    #[test]
    fn density_validation() {
        assert!(matches!(DensityOperator::new(real(2, &[0.5, 0., 0., 0.6])), Err(Error::InvalidDensity(_))));
        assert!(matches!(DensityOperator::new(real(2, &[1.2, 0., 0., -0.2])), Err(Error::InvalidDensity(_))));
        assert!(matches!(DensityOperator::new(real(2, &[0.5, 0.3, 0.0, 0.5])), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn ket_validation() {
        assert!(matches!(Ket::from_slice(&[c64(1., 0.), c64(1., 0.)]), Err(Error::NotNormalized { .. })));
        assert!(Ket::normalized(CVector::zeros(2)).is_err());
        assert!(Ket::basis(2, 2).is_err());
    }

    #[test]
    fn tensor_products() {
        assert_eq!(tensor_product(&identity(2), &identity(2)), identity(4));
        let xx = tensor_product(&pauli_x(), &pauli_x());
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx[(i, j)], c64(expected, 0.));
            }
        }
        // (I ⊗ σx)|Ψ⁻⟩ = (|00⟩ - |11⟩)/√2 = |Φ⁻⟩
        let h = 0.5f64.sqrt();
        let psi_minus = CVector::from_vec(vec![c64(0., 0.), c64(h, 0.), c64(-h, 0.), c64(0., 0.)]);
        let out = tensor_product(&identity(2), &pauli_x()) * psi_minus;
        let phi_minus = CVector::from_vec(vec![c64(h, 0.), c64(0., 0.), c64(0., 0.), c64(-h, 0.)]);
        assert!((out - phi_minus).norm() < 1e-15);
    }

    #[test]
    fn common_basis_of_diagonal_set() {
        let basis = simultaneous_eigenbasis(&[pauli_z(), identity(2)]).unwrap();
        for op in [pauli_z(), identity(2)] {
            assert!(off_diagonal_max(&(basis.adjoint() * op * &basis)) < 1e-12);
        }
        // columns are computational basis vectors up to order
        assert!(basis.iter().all(|z| z.norm() < 1e-12 || (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn common_basis_of_sigma_x_is_hadamard() {
        let basis = simultaneous_eigenbasis(&[pauli_x()]).unwrap();
        let h = 0.5f64.sqrt();
        assert!(basis.iter().all(|z| (z.norm() - h).abs() < 1e-12));
    }

    #[test]
    fn common_basis_with_degenerate_block() {
        let a = real(3, &[1., 0., 0., 0., 2., 0., 0., 0., 2.]);
        // acts inside the degenerate {1,2} block of `a`
        let b = real(3, &[5., 0., 0., 0., 1., 1., 0., 1., 1.]);
        assert!(commutator_residual(&a, &b) < 1e-15);
        let basis = simultaneous_eigenbasis(&[a.clone(), b.clone()]).unwrap();
        assert!(unitarity_residual(&basis) < 1e-12);
        for op in [a, b] {
            assert!(off_diagonal_max(&(basis.adjoint() * op * &basis)) < 1e-8);
        }
    }

    #[test]
    fn common_basis_rejects_non_commuting() {
        assert!(matches!(simultaneous_eigenbasis(&[pauli_x(), pauli_z()]), Err(Error::NotCommuting { .. })));
    }
}
