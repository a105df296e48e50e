//! Entanglement monotones and convertibility primitives: negativity and its
//! iterated partial-transpose refinements, Schmidt coefficients, majorization
//! for pure-state conversion, Wootters concurrence, and entanglement of
//! formation for two qubits.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::operator::{BipartiteState, HermitianOperator, C64, EIG_ZERO_REL_TOL};
use crate::{Error, Result};

/// Tolerance used in majorization partial-sum comparisons.
pub const MAJORIZATION_TOL: f64 = 1e-10;
/// A state counts as pure when its largest eigenvalue is ≥ 1 − PURITY_TOL.
pub const PURITY_TOL: f64 = 1e-9;

/// The negative part of the partial transpose, ρ^{Γ−} (a PSD operator whose
/// trace is the negativity).
pub fn gamma_minus(rho: &HermitianOperator) -> HermitianOperator {
    rho.partial_transpose().negative_part()
}

/// Negativity N(ρ) = Tr[ρ^{Γ−}], the total weight of negative eigenvalues of
/// the partial transpose. Scales linearly with the input normalization; for a
/// unit-trace state it equals (‖ρ^Γ‖₁ − 1)/2.
pub fn negativity(rho: &HermitianOperator) -> f64 {
    let pt = rho.partial_transpose();
    let clamp = EIG_ZERO_REL_TOL * pt.max_abs_entry();
    pt.eig_hermitian()
        .eigenvalues
        .iter()
        .filter(|&&l| -l > clamp)
        .map(|l| -l)
        .sum()
}

/// The renormalized state ρ̃ = ρ^{Γ−} / N(ρ).
///
/// Defined only for states with negativity above `tol`; a PPT input yields
/// [`Error::ZeroNegativity`].
pub fn rho_tilde(rho: &HermitianOperator, tol: f64) -> Result<BipartiteState> {
    let g = gamma_minus(rho);
    let n = g.trace();
    if n <= tol {
        return Err(Error::ZeroNegativity { tol });
    }
    BipartiteState::new(g.scaled(1.0 / n))
}

/// The negativity data a conversion witness needs from the source state:
/// N(ρ), Tr[ρ^{Γ−Γ−}] (the negativity of the unnormalized ρ^{Γ−}), and their
/// ratio N(ρ̃) when defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityProfile {
    /// N(ρ) ≥ 0.
    pub negativity: f64,
    /// Tr[ρ^{Γ−Γ−}] = N(ρ)·N(ρ̃) ≥ 0.
    pub gamma_minus_trace_sq: f64,
    /// N(ρ̃) = gamma_minus_trace_sq / negativity, present when N(ρ) exceeds
    /// the tolerance passed to [`negativity_profile`].
    pub n_tilde: Option<f64>,
}

impl NegativityProfile {
    /// Whether ρ̃ (and thus N(ρ̃)) is defined.
    pub fn tilde_defined(&self) -> bool {
        self.n_tilde.is_some()
    }
}

/// Computes the [`NegativityProfile`] of `rho`; `tol` is the negativity
/// threshold below which ρ̃ is considered undefined.
pub fn negativity_profile(rho: &HermitianOperator, tol: f64) -> NegativityProfile {
    let g = gamma_minus(rho);
    let n = g.trace();
    let g2 = negativity(&g);
    NegativityProfile {
        negativity: n,
        gamma_minus_trace_sq: g2,
        n_tilde: (n > tol).then(|| g2 / n),
    }
}

fn reduced_state_a(rho: &HermitianOperator) -> DMatrix<C64> {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    DMatrix::from_fn(da, da, |i, k| {
        (0..db).map(|j| m[(i * db + j, k * db + j)]).sum::<C64>()
    })
}

/// Schmidt coefficients of a pure state, in non-increasing order: the
/// eigenvalues of the reduced state on the first subsystem.
///
/// Inputs whose largest eigenvalue falls below 1 − 1e−9 are rejected as mixed.
pub fn schmidt_coefficients(pure: &BipartiteState) -> Result<Vec<f64>> {
    let eig = pure.eig_hermitian();
    let lambda_max = eig.eigenvalues[0];
    if lambda_max < 1.0 - PURITY_TOL {
        return Err(Error::NotPure { lambda_max });
    }
    let reduced = HermitianOperator::new(reduced_state_a(pure.op()), (1, pure.dim_a()))?;
    let mut coeffs: Vec<f64> = reduced
        .eig_hermitian()
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0))
        .collect();
    let sum: f64 = coeffs.iter().sum();
    for c in &mut coeffs {
        *c /= sum;
    }
    Ok(coeffs)
}

/// Tail sum f_l = Σ_{i≥l} λᵢ of a Schmidt vector (λ sorted non-increasing
/// internally; `l` is 1-based with 2 ≤ l ≤ len).
pub fn f_l_tail(coeffs: &[f64], l: usize) -> Result<f64> {
    if l < 2 || l > coeffs.len() {
        return Err(Error::InvalidParameter {
            name: "l",
            value: l as f64,
            reason: "tail index must satisfy 2 <= l <= d",
        });
    }
    let mut sorted = coeffs.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite coefficients"));
    Ok(sorted[(l - 1)..].iter().sum())
}

/// Tail-sum monotone f_l(ψ) of a pure state (see [`f_l_tail`]).
pub fn f_l_monotone(psi: &BipartiteState, l: usize) -> Result<f64> {
    let coeffs = schmidt_coefficients(psi)?;
    f_l_tail(&coeffs, l)
}

/// Majorization test on raw Schmidt vectors: whether the state with
/// coefficients `src` converts to the one with `dst` under local operations,
/// i.e. every partial sum of `src` (sorted non-increasing, zero-padded to a
/// common length) is ≤ the matching partial sum of `dst` within 1e−10.
pub fn majorization_convertible_coeffs(src: &[f64], dst: &[f64]) -> bool {
    let len = src.len().max(dst.len());
    let prep = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(len, 0.0);
        s.sort_by(|a, b| b.partial_cmp(a).expect("finite coefficients"));
        s
    };
    let s = prep(src);
    let t = prep(dst);
    let mut sum_s = 0.0;
    let mut sum_t = 0.0;
    for k in 0..len {
        sum_s += s[k];
        sum_t += t[k];
        if sum_s > sum_t + MAJORIZATION_TOL {
            return false;
        }
    }
    true
}

/// Majorization test on pure states: ψ converts to φ iff ψ's Schmidt vector
/// is majorized by φ's. Rejects mixed inputs.
pub fn majorization_convertible(psi: &BipartiteState, phi: &BipartiteState) -> Result<bool> {
    let s = schmidt_coefficients(psi)?;
    let t = schmidt_coefficients(phi)?;
    Ok(majorization_convertible_coeffs(&s, &t))
}

fn sigma_y_tensor_sigma_y() -> DMatrix<C64> {
    let mut s = DMatrix::<C64>::zeros(4, 4);
    s[(0, 3)] = Complex::new(-1.0, 0.0);
    s[(1, 2)] = Complex::new(1.0, 0.0);
    s[(2, 1)] = Complex::new(1.0, 0.0);
    s[(3, 0)] = Complex::new(-1.0, 0.0);
    s
}

fn sqrt_psd(rho: &HermitianOperator) -> DMatrix<C64> {
    let eig = rho.eig_hermitian();
    let n = rho.n();
    // Rank-deficient inputs carry noise eigenvalues of order machine-ε whose
    // square roots would be ~1e−8; treat everything below a relative floor
    // as an exact zero so downstream subtractions stay at full precision.
    let floor = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()))
        * 1e-14;
    let mut out = DMatrix::<C64>::zeros(n, n);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l > floor {
            let s = Complex::new(l.sqrt(), 0.0);
            let v = eig.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += s * v[i] * v[j].conj();
                }
            }
        }
    }
    out
}

/// Wootters concurrence of a two-qubit state:
/// C = max{0, √μ₁ − √μ₂ − √μ₃ − √μ₄} with μᵢ the non-increasing eigenvalues
/// of ρ·(σ_y⊗σ_y)·ρ̄·(σ_y⊗σ_y), ρ̄ the entrywise conjugate in the
/// computational basis.
///
/// Computed as the singular values of A = √ρ·(σ_y⊗σ_y)·conj(√ρ), since
/// A·A† = √ρ·(σ_y⊗σ_y)·ρ̄·(σ_y⊗σ_y)·√ρ shares the μᵢ spectrum; the singular
/// values are the √μᵢ directly, which keeps the precision of the subtraction
/// absolute rather than squared.
pub fn concurrence(rho: &BipartiteState) -> Result<f64> {
    let (da, db) = rho.dims();
    if (da, db) != (2, 2) {
        return Err(Error::NotTwoQubit { da, db });
    }
    let s = sigma_y_tensor_sigma_y();
    let sqrt_rho = sqrt_psd(rho.op());
    let a = &sqrt_rho * &s * sqrt_rho.map(|z| z.conj());
    let mut roots: Vec<f64> = a.svd(false, false).singular_values.iter().copied().collect();
    roots.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Binary entropy H(x) = −x·log₂x − (1−x)·log₂(1−x), with H(0) = H(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation of a two-qubit state,
/// E(ρ) = H((1 + √(1 − C(ρ)²))/2) ∈ [0, 1].
pub fn entanglement_of_formation(rho: &BipartiteState) -> Result<f64> {
    let c = concurrence(rho)?;
    let inner = (1.0 - c * c).max(0.0).sqrt();
    Ok(binary_entropy((1.0 + inner) / 2.0).clamp(0.0, 1.0))
}
