//! Hermitian operators on a bipartite Hilbert space and their spectral tools.
//!
//! Everything downstream works with [`HermitianOperator`]: a validated complex
//! matrix A = A† carrying its subsystem dimensions (d_A, d_B), with the
//! product basis ordered as |i⟩⊗|j⟩ ↦ i·d_B + j. The partial transpose Γ acts
//! on the second subsystem: (A^Γ)_{(i,j),(k,l)} = A_{(i,l),(k,j)}.
//!
//! The split A = A₊ − A₋ into positive and negative parts is the workhorse of
//! the negativity: A₊ and A₋ are PSD, supported on the eigenspaces with
//! positive/negative eigenvalues. Eigenvalues with |λ| ≤ 1e−12·‖A‖_max are
//! treated as zero during the split so that numerically zero modes never leak
//! into either part.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::{Error, Result};

/// Complex double-precision scalar used for all matrices.
pub type C64 = Complex<f64>;

/// Default tolerance on ‖A − A†‖_max when accepting a matrix as Hermitian.
pub const DEFAULT_HERM_TOL: f64 = 1e-10;
/// Relative eigenvalue clamp used when splitting positive/negative parts:
/// eigenvalues with |λ| ≤ EIG_ZERO_REL_TOL · ‖A‖_max count as zero.
pub const EIG_ZERO_REL_TOL: f64 = 1e-12;
/// Default PSD tolerance: smallest eigenvalue may not drop below −PSD_TOL.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on |Tr ρ − 1| when validating a state.
pub const STATE_TRACE_TOL: f64 = 1e-12;

/// A Hermitian operator on C^{d_A} ⊗ C^{d_B}.
///
/// Construction symmetrizes the input to (A + A†)/2 after checking that the
/// deviation from Hermiticity is within tolerance, so the stored matrix is
/// exactly Hermitian entry-by-entry.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: DMatrix<C64>,
    dims: (usize, usize),
}

impl HermitianOperator {
    /// Validates and wraps `mat` with subsystem dimensions `dims`, using the
    /// default Hermiticity tolerance.
    pub fn new(mat: DMatrix<C64>, dims: (usize, usize)) -> Result<Self> {
        Self::with_herm_tol(mat, dims, DEFAULT_HERM_TOL)
    }

    /// Validates and wraps `mat`, accepting ‖A − A†‖_max up to `herm_tol` and
    /// storing the symmetrized (A + A†)/2.
    pub fn with_herm_tol(
        mat: DMatrix<C64>,
        dims: (usize, usize),
        herm_tol: f64,
    ) -> Result<Self> {
        let (rows, cols) = mat.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let (da, db) = dims;
        if da == 0 || db == 0 || da * db != rows {
            return Err(Error::BadDims { da, db, n: rows });
        }
        let mut deviation = 0.0f64;
        for i in 0..rows {
            for j in i..rows {
                let d = (mat[(i, j)] - mat[(j, i)].conj()).norm();
                if d > deviation {
                    deviation = d;
                }
            }
        }
        if deviation > herm_tol {
            return Err(Error::NotHermitian {
                deviation,
                tol: herm_tol,
            });
        }
        let sym = (&mat + mat.adjoint()).scale(0.5);
        Ok(Self { mat: sym, dims })
    }

    /// Wraps a matrix that is Hermitian by construction (used internally for
    /// partial transposes, spectral parts, and exact factory output).
    pub(crate) fn from_hermitian_unchecked(mat: DMatrix<C64>, dims: (usize, usize)) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        debug_assert_eq!(dims.0 * dims.1, mat.nrows());
        Self { mat, dims }
    }

    /// The identity operator on C^{d_A} ⊗ C^{d_B}.
    pub fn identity(dims: (usize, usize)) -> Self {
        let n = dims.0 * dims.1;
        Self::from_hermitian_unchecked(DMatrix::identity(n, n), dims)
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    /// Subsystem dimensions (d_A, d_B).
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// Dimension of the first subsystem.
    pub fn dim_a(&self) -> usize {
        self.dims.0
    }

    /// Dimension of the second subsystem.
    pub fn dim_b(&self) -> usize {
        self.dims.1
    }

    /// Total Hilbert-space dimension d_A · d_B.
    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    /// Trace (real: the stored matrix is exactly Hermitian).
    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.mat[(i, i)].re).sum()
    }

    /// Largest entry magnitude ‖A‖_max.
    pub fn max_abs_entry(&self) -> f64 {
        self.mat.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Multiplies by a real scalar.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_hermitian_unchecked(self.mat.scale(s), self.dims)
    }

    /// Sum of two operators on the same space. Panics on mismatched spaces;
    /// use [`op_leq`]-style validated entry points for untrusted input.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "operator spaces differ");
        Self::from_hermitian_unchecked(&self.mat + &other.mat, self.dims)
    }

    /// Difference of two operators on the same space. Panics on mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "operator spaces differ");
        Self::from_hermitian_unchecked(&self.mat - &other.mat, self.dims)
    }

    /// Partial transpose on the second subsystem:
    /// (A^Γ)_{(i,j),(k,l)} = A_{(i,l),(k,j)}. An involution that preserves
    /// Hermiticity and the trace exactly.
    pub fn partial_transpose(&self) -> Self {
        let (da, db) = self.dims;
        let n = self.n();
        let mut out = DMatrix::<C64>::zeros(n, n);
        for i in 0..da {
            for k in 0..da {
                for j in 0..db {
                    for l in 0..db {
                        out[(i * db + l, k * db + j)] = self.mat[(i * db + j, k * db + l)];
                    }
                }
            }
        }
        Self::from_hermitian_unchecked(out, self.dims)
    }

    /// Full eigendecomposition with eigenvalues sorted in non-increasing
    /// order; column k of `eigenvectors` matches `eigenvalues[k]`.
    pub fn eig_hermitian(&self) -> EigenDecomposition {
        let se = self.mat.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| {
            se.eigenvalues[b]
                .partial_cmp(&se.eigenvalues[a])
                .expect("eigenvalues are finite")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
        let mut eigenvectors = DMatrix::<C64>::zeros(self.n(), self.n());
        for (dst, &src) in order.iter().enumerate() {
            eigenvectors.set_column(dst, &se.eigenvectors.column(src));
        }
        EigenDecomposition {
            eigenvalues,
            eigenvectors,
        }
    }

    /// Positive part A₊ ⪰ 0 of the split A = A₊ − A₋, with the relative
    /// eigenvalue clamp of [`EIG_ZERO_REL_TOL`].
    pub fn positive_part(&self) -> Self {
        self.spectral_part(1.0)
    }

    /// Negative part A₋ ⪰ 0 of the split A = A₊ − A₋ (note the sign: A₋ is
    /// PSD and collects |λ| over the negative eigenvalues).
    pub fn negative_part(&self) -> Self {
        self.spectral_part(-1.0)
    }

    fn spectral_part(&self, sign: f64) -> Self {
        let eig = self.eig_hermitian();
        let clamp = EIG_ZERO_REL_TOL * self.max_abs_entry();
        let n = self.n();
        let mut out = DMatrix::<C64>::zeros(n, n);
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let signed = sign * lambda;
            if signed > clamp {
                let v = eig.eigenvectors.column(k);
                // out += signed · |v⟩⟨v|, accumulated Hermitian-symmetrically.
                for i in 0..n {
                    for j in 0..n {
                        out[(i, j)] += C64::from(signed) * v[i] * v[j].conj();
                    }
                }
            }
        }
        // Enforce exact Hermitian storage (v_i v̄_j accumulation is Hermitian
        // up to rounding in the sum order).
        let sym = (&out + out.adjoint()).scale(0.5);
        Self::from_hermitian_unchecked(sym, self.dims)
    }

    /// Trace norm ‖A‖₁ = Σ|λᵢ|.
    pub fn trace_norm(&self) -> f64 {
        self.eig_hermitian().eigenvalues.iter().map(|l| l.abs()).sum()
    }

    /// Whether all eigenvalues are ≥ −tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eig_hermitian()
            .eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0)
    }

    /// Quadratic form ⟨v|A|v⟩ (real for Hermitian A).
    pub fn expectation(&self, v: &DVector<C64>) -> f64 {
        assert_eq!(v.len(), self.n(), "vector length mismatch");
        let av = &self.mat * v;
        v.dotc(&av).re
    }

    /// Hilbert–Schmidt pairing Tr[AB] (real for Hermitian A, B on the same
    /// space). Panics on mismatched spaces.
    pub fn product_trace(&self, other: &Self) -> f64 {
        assert_eq!(self.dims, other.dims, "operator spaces differ");
        let n = self.n();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.mat[(i, j)] * other.mat[(j, i)]).re;
            }
        }
        acc
    }

    /// Conjugation (U⊗V) A (U⊗V)† by local unitaries U (d_A×d_A) and
    /// V (d_B×d_B).
    pub fn conjugate_by_local(&self, u: &DMatrix<C64>, v: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.dim_a() || u.ncols() != self.dim_a() {
            return Err(Error::DimensionMismatch {
                left: format!("U is {}x{}", u.nrows(), u.ncols()),
                right: format!("d_A = {}", self.dim_a()),
            });
        }
        if v.nrows() != self.dim_b() || v.ncols() != self.dim_b() {
            return Err(Error::DimensionMismatch {
                left: format!("V is {}x{}", v.nrows(), v.ncols()),
                right: format!("d_B = {}", self.dim_b()),
            });
        }
        let w = u.kronecker(v);
        let rotated = &w * &self.mat * w.adjoint();
        let sym = (&rotated + rotated.adjoint()).scale(0.5);
        Ok(Self::from_hermitian_unchecked(sym, self.dims))
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues non-increasing.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues λ₀ ≥ λ₁ ≥ … ≥ λ_{n−1}.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, column k matching eigenvalues[k].
    pub eigenvectors: DMatrix<C64>,
}

impl EigenDecomposition {
    /// Rebuilds Σ λₖ |vₖ⟩⟨vₖ| (for residual checks).
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.eigenvalues.len();
        let mut out = DMatrix::<C64>::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += C64::from(lambda) * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

/// Operator order test: whether A ⪯ B, i.e. B − A is PSD within `tol`.
pub fn op_leq(a: &HermitianOperator, b: &HermitianOperator, tol: f64) -> Result<bool> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: format!("{}x{}", a.dims().0, a.dims().1),
            right: format!("{}x{}", b.dims().0, b.dims().1),
        });
    }
    Ok(b.sub(a).is_psd(tol))
}

/// A validated bipartite quantum state: Hermitian, PSD within [`PSD_TOL`],
/// unit trace within [`STATE_TRACE_TOL`]. Dereferences to its
/// [`HermitianOperator`] so all spectral tools apply directly.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    op: HermitianOperator,
}

impl BipartiteState {
    /// Validates positivity and normalization of `op`.
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > STATE_TRACE_TOL {
            return Err(Error::NotUnitTrace {
                trace,
                tol: STATE_TRACE_TOL,
            });
        }
        let min_eig = op.min_eigenvalue();
        if min_eig < -PSD_TOL {
            return Err(Error::NotPsd { min_eig });
        }
        Ok(Self { op })
    }

    /// The underlying operator.
    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    /// Consumes the state, returning the underlying operator.
    pub fn into_op(self) -> HermitianOperator {
        self.op
    }
}

impl std::ops::Deref for BipartiteState {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.op
    }
}

impl AsRef<HermitianOperator> for BipartiteState {
    fn as_ref(&self) -> &HermitianOperator {
        &self.op
    }
}
