//! Factories for the named states and operators the witnesses are evaluated
//! on: maximally entangled states, pure states in Schmidt form, Werner and
//! isotropic families, the generalized Werner two-parameter family, the
//! ρ_q family, one fixed named two-qubit state, and the flip operator with
//! its projector decomposition.
//!
//! All factories validate parameters and reject out-of-range values instead
//! of clamping, so scan grids can trust that every constructed state is the
//! one requested.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::operator::{BipartiteState, HermitianOperator, C64};
use crate::{Error, Result};

/// Tolerance on Σλᵢ = 1 for Schmidt coefficient vectors and on a + b ≤ 1 for
/// the generalized Werner simplex (absorbs rounding when parameters are
/// produced by arithmetic on grid coordinates).
pub const PARAM_SUM_TOL: f64 = 1e-12;

fn real(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

/// Computational basis vector |k⟩ in dimension n.
pub fn basis_vector(n: usize, k: usize) -> DVector<C64> {
    let mut v = DVector::<C64>::zeros(n);
    v[k] = real(1.0);
    v
}

/// Outer product |v⟩⟨v| (exactly Hermitian entrywise).
fn outer(v: &DVector<C64>) -> DMatrix<C64> {
    let n = v.len();
    DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj())
}

/// The maximally entangled vector |Φ⟩ = (1/√d) Σⱼ |j⟩⊗|j⟩ on C^d ⊗ C^d.
pub fn max_entangled_vector(d: usize) -> DVector<C64> {
    let mut v = DVector::<C64>::zeros(d * d);
    let amp = real(1.0 / (d as f64).sqrt());
    for j in 0..d {
        v[j * d + j] = amp;
    }
    v
}

/// The singlet-type vector |ψ⁻ᵢⱼ⟩ = (|ij⟩ − |ji⟩)/√2 on C^d ⊗ C^d (i < j).
pub fn psi_minus_vector(d: usize, i: usize, j: usize) -> DVector<C64> {
    assert!(i < j && j < d, "psi_minus requires i < j < d");
    let mut v = DVector::<C64>::zeros(d * d);
    let amp = real(1.0 / 2.0f64.sqrt());
    v[i * d + j] = amp;
    v[j * d + i] = -amp;
    v
}

/// The triplet-type vector |ψ⁺ᵢⱼ⟩ = (|ij⟩ + |ji⟩)/√2 on C^d ⊗ C^d (i < j).
pub fn psi_plus_vector(d: usize, i: usize, j: usize) -> DVector<C64> {
    assert!(i < j && j < d, "psi_plus requires i < j < d");
    let mut v = DVector::<C64>::zeros(d * d);
    let amp = real(1.0 / 2.0f64.sqrt());
    v[i * d + j] = amp;
    v[j * d + i] = amp;
    v
}

fn require_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d as f64,
            reason: "subsystem dimension must be at least 2",
        });
    }
    Ok(())
}

/// Maximally entangled state |Φ⟩⟨Φ| on C^d ⊗ C^d.
pub fn max_entangled(d: usize) -> Result<BipartiteState> {
    require_dim(d)?;
    let op = HermitianOperator::new(outer(&max_entangled_vector(d)), (d, d))?;
    BipartiteState::new(op)
}

/// Pure state Σᵢ √λᵢ |ii⟩ in Schmidt form on C^d ⊗ C^d with d = `lambdas.len()`.
///
/// The coefficients must be nonnegative and sum to 1 within 1e−12; they need
/// not be sorted.
pub fn pure_schmidt(lambdas: &[f64]) -> Result<BipartiteState> {
    let d = lambdas.len();
    require_dim(d)?;
    let mut sum = 0.0;
    for (i, &l) in lambdas.iter().enumerate() {
        if !(l >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: if l.is_nan() { f64::NAN } else { l },
                reason: "Schmidt coefficients must be nonnegative",
            });
        }
        sum += l;
        let _ = i;
    }
    if (sum - 1.0).abs() > PARAM_SUM_TOL {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: sum,
            reason: "Schmidt coefficients must sum to 1 within 1e-12",
        });
    }
    let mut v = DVector::<C64>::zeros(d * d);
    for (i, &l) in lambdas.iter().enumerate() {
        v[i * d + i] = real(l.sqrt());
    }
    // Renormalize so the projector has unit trace even when Σλ = 1 ± 1e−12.
    let norm = v.norm();
    let v = v.scale(1.0 / norm);
    let op = HermitianOperator::new(outer(&v), (d, d))?;
    BipartiteState::new(op)
}

/// The flip (swap) operator F|ij⟩ = |ji⟩ on C^d ⊗ C^d.
pub fn flip(d: usize) -> HermitianOperator {
    assert!(d >= 2, "flip requires d >= 2");
    let n = d * d;
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            m[(j * d + i, i * d + j)] = real(1.0);
        }
    }
    HermitianOperator::new(m, (d, d)).expect("flip is Hermitian by construction")
}

/// The three mutually orthogonal projectors (P, P₊, P₋) with
/// F = P + P₊ − P₋ and P + P₊ + P₋ = I:
/// P = Σᵢ|ii⟩⟨ii| (rank d), P₊ = Σ_{i<j}|ψ⁺ᵢⱼ⟩⟨ψ⁺ᵢⱼ| and
/// P₋ = Σ_{i<j}|ψ⁻ᵢⱼ⟩⟨ψ⁻ᵢⱼ| (rank d(d−1)/2 each).
pub fn flip_parts(d: usize) -> (HermitianOperator, HermitianOperator, HermitianOperator) {
    assert!(d >= 2, "flip_parts requires d >= 2");
    let n = d * d;
    let mut p = DMatrix::<C64>::zeros(n, n);
    for i in 0..d {
        p[(i * d + i, i * d + i)] = real(1.0);
    }
    let mut p_plus = DMatrix::<C64>::zeros(n, n);
    let mut p_minus = DMatrix::<C64>::zeros(n, n);
    for i in 0..d {
        for j in (i + 1)..d {
            p_plus += outer(&psi_plus_vector(d, i, j));
            p_minus += outer(&psi_minus_vector(d, i, j));
        }
    }
    let wrap = |m: DMatrix<C64>| {
        HermitianOperator::new(m, (d, d)).expect("projector is Hermitian by construction")
    };
    (wrap(p), wrap(p_plus), wrap(p_minus))
}

/// Werner state ω^d_α = (dα−1)/(d(d²−1)) F + (d−α)/(d(d²−1)) I with
/// α = Tr[ω F] ∈ [−1, 1].
pub fn werner(d: usize, alpha: f64) -> Result<BipartiteState> {
    require_dim(d)?;
    if !(-1.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "Werner parameter must lie in [-1, 1]",
        });
    }
    let df = d as f64;
    let denom = df * (df * df - 1.0);
    let f = flip(d);
    let id = HermitianOperator::identity((d, d));
    let op = f
        .scaled((df * alpha - 1.0) / denom)
        .add(&id.scaled((df - alpha) / denom));
    BipartiteState::new(op)
}

/// Isotropic state η^d_β = β|Φ⟩⟨Φ| + (1−β)/(d²−1) (I − |Φ⟩⟨Φ|) with
/// β = ⟨Φ|η|Φ⟩ ∈ [0, 1].
pub fn isotropic(d: usize, beta: f64) -> Result<BipartiteState> {
    require_dim(d)?;
    if !(0.0..=1.0).contains(&beta) || beta.is_nan() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "isotropic fidelity must lie in [0, 1]",
        });
    }
    let df = d as f64;
    let phi = HermitianOperator::new(outer(&max_entangled_vector(d)), (d, d))?;
    let id = HermitianOperator::identity((d, d));
    let rest = id.sub(&phi).scaled((1.0 - beta) / (df * df - 1.0));
    BipartiteState::new(phi.scaled(beta).add(&rest))
}

/// Generalized Werner state
/// ρ_ab = (1−a−b)·(1/d)·P + a·(2/(d(d−1)))·P₋ + b·(2/(d(d−1)))·P₊
/// with a, b ≥ 0, a + b ≤ 1.
pub fn generalized_werner(d: usize, a: f64, b: f64) -> Result<BipartiteState> {
    require_dim(d)?;
    if !(a >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "generalized Werner weights must be nonnegative",
        });
    }
    if !(b >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "generalized Werner weights must be nonnegative",
        });
    }
    if a + b > 1.0 + PARAM_SUM_TOL {
        return Err(Error::InvalidParameter {
            name: "a+b",
            value: a + b,
            reason: "generalized Werner weights must satisfy a + b <= 1",
        });
    }
    let df = d as f64;
    let (p, p_plus, p_minus) = flip_parts(d);
    let pair_weight = 2.0 / (df * (df - 1.0));
    let op = p
        .scaled((1.0 - a - b).max(0.0) / df)
        .add(&p_minus.scaled(a * pair_weight))
        .add(&p_plus.scaled(b * pair_weight));
    // Trace is (1−a−b) + a + b up to rounding; renormalize exactly to 1.
    let op = op.scaled(1.0 / op.trace());
    BipartiteState::new(op)
}

/// Two-qubit state ρ_q = ½(|Φ⟩⟨Φ| + |ψ_q⟩⟨ψ_q|) with
/// |ψ_q⟩ = √q|00⟩ + √(1−q)|10⟩, q ∈ [0, 1].
pub fn rho_q(q: f64) -> Result<BipartiteState> {
    if !(0.0..=1.0).contains(&q) || q.is_nan() {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q,
            reason: "mixing parameter must lie in [0, 1]",
        });
    }
    let phi = max_entangled_vector(2);
    let mut psi = DVector::<C64>::zeros(4);
    psi[0] = real(q.sqrt()); // |00⟩
    psi[2] = real((1.0 - q).sqrt()); // |10⟩
    let m = (outer(&phi) + outer(&psi)).scale(0.5);
    let op = HermitianOperator::new(m, (2, 2))?;
    BipartiteState::new(op)
}

/// The fixed two-qubit state ½|Φ⟩⟨Φ| + ½|01⟩⟨01|.
pub fn named_sigma_phi01() -> BipartiteState {
    let phi = max_entangled_vector(2);
    let e01 = basis_vector(4, 1);
    let m = (outer(&phi) + outer(&e01)).scale(0.5);
    let op = HermitianOperator::new(m, (2, 2)).expect("fixed state is Hermitian");
    BipartiteState::new(op).expect("fixed state is a valid state")
}

/// Parsed descriptor of a named state family with fully bound parameters.
///
/// `build` constructs the state; [`std::fmt::Display`] renders the canonical
/// textual form (`werner d=3 alpha=-1`, `pure d=2 l0=0.8 l1=0.2`, …).
#[derive(Debug, Clone, PartialEq)]
pub enum StateFamilySpec {
    /// `pure d=<len> l0=… l1=… …` — pure state in Schmidt form.
    PureSchmidt { lambdas: Vec<f64> },
    /// `werner d=<d> alpha=<α>`.
    Werner { d: usize, alpha: f64 },
    /// `isotropic d=<d> beta=<β>`.
    Isotropic { d: usize, beta: f64 },
    /// `gwer d=<d> a=<a> b=<b>` — generalized Werner.
    GeneralizedWerner { d: usize, a: f64, b: f64 },
    /// `rhoq q=<q>` — the two-qubit ρ_q family.
    RhoQ { q: f64 },
    /// `maxent d=<d>` — maximally entangled state.
    MaxEntangled { d: usize },
    /// `named sigma_phi01` — the fixed state ½|Φ⟩⟨Φ| + ½|01⟩⟨01|.
    SigmaPhi01,
}

impl StateFamilySpec {
    /// Constructs the described state, validating parameters.
    pub fn build(&self) -> Result<BipartiteState> {
        match self {
            Self::PureSchmidt { lambdas } => pure_schmidt(lambdas),
            Self::Werner { d, alpha } => werner(*d, *alpha),
            Self::Isotropic { d, beta } => isotropic(*d, *beta),
            Self::GeneralizedWerner { d, a, b } => generalized_werner(*d, *a, *b),
            Self::RhoQ { q } => rho_q(*q),
            Self::MaxEntangled { d } => max_entangled(*d),
            Self::SigmaPhi01 => Ok(named_sigma_phi01()),
        }
    }

    /// Subsystem dimensions of the state this spec builds.
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Self::PureSchmidt { lambdas } => (lambdas.len(), lambdas.len()),
            Self::Werner { d, .. }
            | Self::Isotropic { d, .. }
            | Self::GeneralizedWerner { d, .. }
            | Self::MaxEntangled { d } => (*d, *d),
            Self::RhoQ { .. } | Self::SigmaPhi01 => (2, 2),
        }
    }
}

impl std::fmt::Display for StateFamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::PureSchmidt { lambdas } => {
                write!(f, "pure d={}", lambdas.len())?;
                for (i, l) in lambdas.iter().enumerate() {
                    write!(f, " l{}={}", i, l)?;
                }
                Ok(())
            }
            Self::Werner { d, alpha } => write!(f, "werner d={} alpha={}", d, alpha),
            Self::Isotropic { d, beta } => write!(f, "isotropic d={} beta={}", d, beta),
            Self::GeneralizedWerner { d, a, b } => {
                write!(f, "gwer d={} a={} b={}", d, a, b)
            }
            Self::RhoQ { q } => write!(f, "rhoq q={}", q),
            Self::MaxEntangled { d } => write!(f, "maxent d={}", d),
            Self::SigmaPhi01 => write!(f, "named sigma_phi01"),
        }
    }
}
