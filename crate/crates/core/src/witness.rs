//! No-go conversion witnesses: a negative value certifies that the source
//! state ρ cannot be converted to the target state σ by any PPT (hence any
//! LOCC) channel; a nonnegative value makes no claim.
//!
//! The components are
//! - `W_N = N(ρ) − N(σ)` (negativity difference),
//! - `W'_wer = (d·Tr[ρ^{Γ−Γ−}] + N(ρ))/2 − Tr[F₋σ^{Γ−}]`,
//! - `W'_iso = (2·Tr[ρ^{Γ−Γ−}] + N(ρ))/d − ⟨Φ|σ^{Γ−}|Φ⟩`,
//! - combinations `W_wer`, `W_iso`, `W_Γ = min{W_N, W'_wer, W'_iso}`,
//! - the two-qubit specialization `W_2q = min{W'_wer, W'_iso}` at d = 2,
//! - per-vertex witnesses over the generalized Werner polytope, and
//! - a local-unitary orbit minimization of any base witness.
//!
//! The dimension d in the flip-based quantities is always the TARGET state's
//! subsystem dimension; the source enters only through the scalars N(ρ) and
//! Tr[ρ^{Γ−Γ−}], so mixed-dimension pairs are supported.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::measures::{gamma_minus, negativity, negativity_profile, NegativityProfile};
use crate::operator::{HermitianOperator, C64};
use crate::states::{
    flip_parts, generalized_werner, max_entangled_vector, psi_minus_vector,
};
use crate::support::h_generalized_werner;
use crate::{Error, Result};

/// Default threshold: a witness value below −DEFAULT_FIRED_TOL counts as
/// fired (strict negativity with a numeric guard). Also the negativity level
/// below which a source state is treated as PPT.
pub const DEFAULT_FIRED_TOL: f64 = 1e-9;

/// Outcome of a single witness evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Value < −tol: the conversion ρ ↦ σ is impossible.
    Fired,
    /// Value ≥ −tol: no claim.
    Silent,
}

impl Verdict {
    /// Classifies `value` against the firing tolerance `tol`.
    pub fn of(value: f64, tol: f64) -> Self {
        if value < -tol {
            Self::Fired
        } else {
            Self::Silent
        }
    }

    /// Whether this verdict excludes the conversion.
    pub fn is_fired(self) -> bool {
        matches!(self, Self::Fired)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Fired => "fired",
            Self::Silent => "silent",
        })
    }
}

/// Negativity difference W_N = N(ρ) − N(σ). Defined for any pair of
/// Hermitian operators, regardless of dimensions.
pub fn witness_n(rho: &HermitianOperator, sigma: &HermitianOperator) -> f64 {
    negativity(rho) - negativity(sigma)
}

/// The target-side overlaps of the flip-symmetric sub-witnesses: both are
/// expectations against σ^{Γ−} and require a square target (d, d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipPhiOverlaps {
    /// Target subsystem dimension d.
    pub d: usize,
    /// Tr[F₋ σ^{Γ−}], the antisymmetric-projector overlap.
    pub flip_minus: f64,
    /// ⟨Φ| σ^{Γ−} |Φ⟩, the maximally entangled overlap.
    pub max_entangled: f64,
}

/// Everything a witness needs from the target state σ: its negativity,
/// its dimensions, and (for square targets) the two σ^{Γ−} overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetProfile {
    /// Target dimensions (d_A, d_B).
    pub dims: (usize, usize),
    /// N(σ).
    pub negativity: f64,
    /// Present exactly when the target is square (d_A = d_B).
    pub overlaps: Option<FlipPhiOverlaps>,
}

/// Computes the [`TargetProfile`] of `sigma`.
pub fn target_profile(sigma: &HermitianOperator) -> TargetProfile {
    let g = gamma_minus(sigma);
    let n_sigma = g.trace();
    let (da, db) = sigma.dims();
    let overlaps = (da == db).then(|| {
        let d = da;
        let (_, _, p_minus) = flip_parts(d);
        FlipPhiOverlaps {
            d,
            flip_minus: p_minus.product_trace(&g),
            max_entangled: g.expectation(&max_entangled_vector(d)),
        }
    });
    TargetProfile {
        dims: (da, db),
        negativity: n_sigma,
        overlaps,
    }
}

fn wer_prime_value(source: &NegativityProfile, t: &FlipPhiOverlaps) -> f64 {
    let d = t.d as f64;
    (d * source.gamma_minus_trace_sq + source.negativity) / 2.0 - t.flip_minus
}

fn iso_prime_value(source: &NegativityProfile, t: &FlipPhiOverlaps) -> f64 {
    let d = t.d as f64;
    (2.0 * source.gamma_minus_trace_sq + source.negativity) / d - t.max_entangled
}

fn require_square_target(sigma: &HermitianOperator) -> Result<usize> {
    let (da, db) = sigma.dims();
    if da != db {
        return Err(Error::UnequalSubsystems { da, db });
    }
    Ok(da)
}

fn require_entangled_source(rho: &HermitianOperator, tol: f64) -> Result<NegativityProfile> {
    let profile = negativity_profile(rho, tol);
    if !profile.tilde_defined() {
        return Err(Error::ZeroNegativity { tol });
    }
    Ok(profile)
}

/// Flip-based sub-witness
/// W'_wer(ρ,σ) = (d·Tr[ρ^{Γ−Γ−}] + N(ρ))/2 − Tr[F₋σ^{Γ−}],
/// with d the target's subsystem dimension.
///
/// Requires a square target and a source with negativity above the default
/// tolerance (the rescaled ρ^{Γ−} must exist).
pub fn witness_wer_prime(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    require_square_target(sigma)?;
    let source = require_entangled_source(rho, DEFAULT_FIRED_TOL)?;
    let target = target_profile(sigma);
    Ok(wer_prime_value(
        &source,
        target.overlaps.as_ref().expect("square target has overlaps"),
    ))
}

/// Maximally-entangled sub-witness
/// W'_iso(ρ,σ) = (2·Tr[ρ^{Γ−Γ−}] + N(ρ))/d − ⟨Φ|σ^{Γ−}|Φ⟩,
/// with d the target's subsystem dimension.
pub fn witness_iso_prime(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    require_square_target(sigma)?;
    let source = require_entangled_source(rho, DEFAULT_FIRED_TOL)?;
    let target = target_profile(sigma);
    Ok(iso_prime_value(
        &source,
        target.overlaps.as_ref().expect("square target has overlaps"),
    ))
}

/// Two-qubit witness W_2q = min{W'_wer, W'_iso} at d = 2, i.e.
/// Tr[ρ^{Γ−Γ−}] + ½N(ρ) − max{Tr[F₋σ^{Γ−}], ⟨Φ|σ^{Γ−}|Φ⟩}.
///
/// At d = 2 the two sub-witnesses share their source term and differ only in
/// the overlap operator, and F₋ and |Φ⟩⟨Φ| are local-unitary equivalent, so
/// the pair collapses to this single value. For a pure target with Schmidt
/// coefficients (λ₀, λ₁) it reduces to Tr[ρ^{Γ−Γ−}] + ½N(ρ) − √(λ₀λ₁), and
/// for pure source and target to N(ρ) − N(σ).
pub fn witness_two_qubit(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    for op in [rho, sigma] {
        let (da, db) = op.dims();
        if (da, db) != (2, 2) {
            return Err(Error::NotTwoQubit { da, db });
        }
    }
    let source = require_entangled_source(rho, DEFAULT_FIRED_TOL)?;
    let target = target_profile(sigma);
    let t = target.overlaps.as_ref().expect("two-qubit target is square");
    Ok(wer_prime_value(&source, t).min(iso_prime_value(&source, t)))
}

/// Full evaluation of the witness family on a pair of states.
///
/// Sub-witness fields are `None` in the two degenerate cases: a source that
/// is PPT within `fired_tol` (the rescaled ρ^{Γ−} does not exist; a PPT
/// source can only reach PPT targets, so the verdict rests on W_N), and a
/// non-square target (the flip-based overlaps are undefined). In both cases
/// `w_gamma` falls back to `w_n` and `degenerate` explains why.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    /// N(ρ).
    pub n_rho: f64,
    /// N(σ).
    pub n_sigma: f64,
    /// N(ρ̃) = Tr[ρ^{Γ−Γ−}]/N(ρ), when the source is not PPT.
    pub n_tilde_rho: Option<f64>,
    /// W_N = N(ρ) − N(σ).
    pub w_n: f64,
    /// Raw sub-witness W'_wer.
    pub w_wer_prime: Option<f64>,
    /// Raw sub-witness W'_iso.
    pub w_iso_prime: Option<f64>,
    /// Combined W_wer = min{W_N, (2/(d(d−1)))·W'_wer}.
    pub w_wer: Option<f64>,
    /// Combined W_iso = min{W_N, W'_iso}.
    pub w_iso: Option<f64>,
    /// W_Γ = min{W_N, W'_wer, W'_iso} (raw sub-witnesses); equals W_N in the
    /// degenerate cases.
    pub w_gamma: f64,
    /// Two-qubit witness, present only when both states are (2,2) and the
    /// source is not PPT.
    pub w_2q: Option<f64>,
    /// The normalization 2/(d(d−1)) used to fold W'_wer into W_wer. Stored
    /// explicitly because only the sign of W'_wer affects verdicts; any
    /// positive prefactor yields the same fired/silent outcome.
    pub wer_prefactor: Option<f64>,
    /// Firing threshold used by [`WitnessReport::verdict_of`].
    pub fired_tol: f64,
    /// Explanation when sub-witnesses were skipped.
    pub degenerate: Option<&'static str>,
}

impl WitnessReport {
    /// Classifies a component value with this report's tolerance.
    pub fn verdict_of(&self, value: f64) -> Verdict {
        Verdict::of(value, self.fired_tol)
    }

    /// Whether any present component fires (excludes the conversion).
    pub fn any_fired(&self) -> bool {
        self.components()
            .iter()
            .any(|(_, v)| self.verdict_of(*v).is_fired())
    }

    /// The present witness components as (name, value) pairs, in a fixed
    /// print order.
    pub fn components(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> = vec![("W_N", self.w_n)];
        if let Some(v) = self.w_wer_prime {
            out.push(("W_wer_prime", v));
        }
        if let Some(v) = self.w_iso_prime {
            out.push(("W_iso_prime", v));
        }
        if let Some(v) = self.w_wer {
            out.push(("W_wer", v));
        }
        if let Some(v) = self.w_iso {
            out.push(("W_iso", v));
        }
        out.push(("W_gamma", self.w_gamma));
        if let Some(v) = self.w_2q {
            out.push(("W_2q", v));
        }
        out
    }
}

/// Assembles a [`WitnessReport`] from precomputed per-state profiles.
///
/// This is the cell kernel for parameter scans: the source profile depends
/// only on ρ and the target profile only on σ, so a grid over (ρ-axis,
/// σ-axis) needs one profile per axis value rather than one pair evaluation
/// per cell.
pub fn witness_report_from_profiles(
    rho_dims: (usize, usize),
    source: &NegativityProfile,
    target: &TargetProfile,
    fired_tol: f64,
) -> WitnessReport {
    let w_n = source.negativity - target.negativity;
    let mut report = WitnessReport {
        n_rho: source.negativity,
        n_sigma: target.negativity,
        n_tilde_rho: source.n_tilde,
        w_n,
        w_wer_prime: None,
        w_iso_prime: None,
        w_wer: None,
        w_iso: None,
        w_gamma: w_n,
        w_2q: None,
        wer_prefactor: None,
        fired_tol,
        degenerate: None,
    };
    if !source.tilde_defined() {
        report.degenerate =
            Some("source is PPT within tolerance; flip-based sub-witnesses are undefined and a PPT source can reach only PPT targets");
        return report;
    }
    let Some(t) = target.overlaps.as_ref() else {
        report.degenerate =
            Some("target subsystem dimensions differ; flip-based sub-witnesses are undefined");
        return report;
    };
    let d = t.d as f64;
    let wer_prime = wer_prime_value(source, t);
    let iso_prime = iso_prime_value(source, t);
    let prefactor = 2.0 / (d * (d - 1.0));
    report.w_wer_prime = Some(wer_prime);
    report.w_iso_prime = Some(iso_prime);
    report.wer_prefactor = Some(prefactor);
    report.w_wer = Some(w_n.min(prefactor * wer_prime));
    report.w_iso = Some(w_n.min(iso_prime));
    report.w_gamma = w_n.min(wer_prime).min(iso_prime);
    if rho_dims == (2, 2) && target.dims == (2, 2) {
        report.w_2q = Some(wer_prime.min(iso_prime));
    }
    report
}

/// Evaluates every witness on (ρ, σ) with the firing tolerance `fired_tol`.
pub fn witness_gamma_with_tol(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    fired_tol: f64,
) -> WitnessReport {
    let source = negativity_profile(rho, fired_tol);
    let target = target_profile(sigma);
    witness_report_from_profiles(rho.dims(), &source, &target, fired_tol)
}

/// Evaluates every witness on (ρ, σ) with the default firing tolerance.
pub fn witness_gamma(rho: &HermitianOperator, sigma: &HermitianOperator) -> WitnessReport {
    witness_gamma_with_tol(rho, sigma, DEFAULT_FIRED_TOL)
}

/// One vertex of the generalized Werner witness family: the witness value
/// h(ρ_ab)·N(ρ) − Tr[ρ_ab σ^{Γ−}] at a labeled polytope vertex (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GwerVertexWitness {
    /// Vertex label (G, H, J, K, L, M, or N).
    pub label: &'static str,
    /// The vertex coordinates (a, b).
    pub ab: (f64, f64),
    /// The witness value at this vertex.
    pub value: f64,
}

/// Labels of the seven extremal vertices of the generalized Werner witness
/// family, in evaluation order.
pub const GWER_VERTEX_LABELS: [&str; 7] = ["G", "H", "J", "K", "L", "M", "N"];

/// Evaluates the generalized-Werner vertex witnesses
/// W_{ρ_ab}(ρ,σ) = h(ρ_ab)·N(ρ) − Tr[ρ_ab σ^{Γ−}] at the seven extremal
/// vertices of the (a, b) parameter region, with the negativity cap
/// c = min{1/d, Tr[ρ^{Γ−Γ−}]/N(ρ)}.
///
/// Notable closed forms: vertex M (the maximally mixed state) always equals
/// (1/d²)(N(ρ) − N(σ)), and vertex L (the extreme Werner state) carries the
/// only vertex that can improve on W_N.
pub fn witness_gwer_vertices(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
) -> Result<Vec<GwerVertexWitness>> {
    let d = require_square_target(sigma)?;
    let source = require_entangled_source(rho, DEFAULT_FIRED_TOL)?;
    let df = d as f64;
    let c = (source.gamma_minus_trace_sq / source.negativity).min(1.0 / df);
    let g = gamma_minus(sigma);
    let vertices: [(f64, f64); 7] = [
        (0.0, 0.0),
        (0.0, (df - 1.0) / (df + 1.0)),
        (0.0, 1.0),
        ((df - 1.0) / (df + 1.0), 0.0),
        (1.0, 0.0),
        ((df - 1.0) / (2.0 * df), (df - 1.0) / (2.0 * df)),
        (0.5, 0.5),
    ];
    let mut out = Vec::with_capacity(7);
    for (label, &(a, b)) in GWER_VERTEX_LABELS.iter().zip(vertices.iter()) {
        let h = h_generalized_werner(d, a, b, c)?;
        let tau = generalized_werner(d, a, b)?;
        let value = h * source.negativity - tau.product_trace(&g);
        out.push(GwerVertexWitness {
            label,
            ab: (a, b),
            value,
        });
    }
    Ok(out)
}

/// Which witness a local-unitary orbit search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseWitness {
    /// W_wer = min{W_N, (2/(d(d−1)))·W'_wer}.
    Wer,
    /// W_iso = min{W_N, W'_iso}.
    Iso,
    /// W_Γ = min{W_N, W'_wer, W'_iso}.
    Gamma,
    /// The two-qubit witness (requires 2×2 subsystems on both sides).
    TwoQubit,
}

/// Parameters of the local-unitary orbit search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitarySearchConfig {
    /// Number of descent restarts (≥ 1). Restart 0 always starts from the
    /// identity, so the result never exceeds the unrotated witness.
    pub restarts: usize,
    /// Maximum coordinate-descent sweeps per restart.
    pub max_iters: usize,
    /// RNG seed for the random restart points.
    pub seed: u64,
    /// Initial step size (radians) for the angle updates; must be > 0.
    pub step_scale: f64,
}

impl Default for LocalUnitarySearchConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iters: 200,
            seed: 0,
            step_scale: 0.5,
        }
    }
}

/// Result of a local-unitary orbit minimization: the minimal witness value
/// found and the unitaries (U, V) attaining it on σ ↦ (U⊗V)σ(U⊗V)†.
#[derive(Debug, Clone)]
pub struct LuWitnessResult {
    /// Minimal witness value over the searched orbit points.
    pub value: f64,
    /// Optimizing unitary on the first subsystem.
    pub u: DMatrix<C64>,
    /// Optimizing unitary on the second subsystem.
    pub v: DMatrix<C64>,
}

/// Builds a d×d unitary from d² angles: d phases followed by d(d−1)/2 Givens
/// rotation pairs (θ, φ) in row order, U = diag(e^{iφₖ})·Π_{i<j} G(i,j,θ,φ).
/// All-zero angles give the identity exactly.
fn unitary_from_angles(d: usize, angles: &[f64]) -> DMatrix<C64> {
    debug_assert_eq!(angles.len(), d * d);
    let mut u = DMatrix::<C64>::identity(d, d);
    let mut k = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let theta = angles[k];
            let phi = angles[k + 1];
            k += 2;
            let (s, c) = theta.sin_cos();
            let e_pos = Complex::from_polar(1.0, phi);
            let e_neg = Complex::from_polar(1.0, -phi);
            // Right-multiply by the Givens rotation acting on columns i, j.
            for r in 0..d {
                let a = u[(r, i)];
                let b = u[(r, j)];
                u[(r, i)] = a * Complex::from(c) + b * (e_neg * s);
                u[(r, j)] = a * (-e_pos * s) + b * Complex::from(c);
            }
        }
    }
    for i in 0..d {
        let phase = Complex::from_polar(1.0, angles[i]);
        for col in 0..d {
            u[(i, col)] *= phase;
        }
    }
    u
}

struct OrbitObjective {
    /// σ^{Γ−} as a plain matrix.
    g: DMatrix<C64>,
    psi_minus: Vec<DVector<C64>>,
    phi: DVector<C64>,
    /// (d·Tr[ρ^{Γ−Γ−}] + N(ρ))/2, the source term of W'_wer.
    wer_source: f64,
    /// (2·Tr[ρ^{Γ−Γ−}] + N(ρ))/d, the source term of W'_iso.
    iso_source: f64,
    w_n: f64,
    prefactor: f64,
    base: BaseWitness,
    d: usize,
}

impl OrbitObjective {
    /// Witness value at σ' = (U⊗V)σ(U⊗V)†, using the covariance
    /// σ'^{Γ−} = (U⊗V̄)·σ^{Γ−}·(U⊗V̄)†: overlaps against σ'^{Γ−} become
    /// overlaps of back-rotated vectors against the fixed σ^{Γ−}.
    fn eval(&self, u: &DMatrix<C64>, v: &DMatrix<C64>) -> f64 {
        let w = u.adjoint().kronecker(&v.transpose());
        let quad = |x: &DVector<C64>| {
            let gx = &self.g * x;
            x.dotc(&gx).re
        };
        let flip_minus: f64 = self.psi_minus.iter().map(|p| quad(&(&w * p))).sum();
        let phi_overlap = quad(&(&w * &self.phi));
        let wer_prime = self.wer_source - flip_minus;
        let iso_prime = self.iso_source - phi_overlap;
        match self.base {
            BaseWitness::Wer => self.w_n.min(self.prefactor * wer_prime),
            BaseWitness::Iso => self.w_n.min(iso_prime),
            BaseWitness::Gamma => self.w_n.min(wer_prime).min(iso_prime),
            BaseWitness::TwoQubit => wer_prime.min(iso_prime),
        }
    }

    fn eval_angles(&self, angles: &[f64]) -> f64 {
        let n = self.d * self.d;
        let u = unitary_from_angles(self.d, &angles[..n]);
        let v = unitary_from_angles(self.d, &angles[n..]);
        self.eval(&u, &v)
    }
}

/// Magic (Bell-phase) basis columns for two qubits. In this basis a vector
/// is maximally entangled exactly when its coordinate vector is real up to a
/// global phase, which turns maximization of ⟨w|G|w⟩ over the maximally
/// entangled manifold into a 4×4 real symmetric eigenproblem.
fn magic_basis_2q() -> DMatrix<C64> {
    let s = 1.0 / 2.0f64.sqrt();
    let i = Complex::new(0.0, 1.0);
    let one = Complex::from(1.0);
    let zero = Complex::from(0.0);
    // Columns in the product basis {00, 01, 10, 11}.
    DMatrix::from_columns(&[
        DVector::from_vec(vec![one * s, zero, zero, one * s]),
        DVector::from_vec(vec![-i * s, zero, zero, i * s]),
        DVector::from_vec(vec![zero, one * s, -one * s, zero]),
        DVector::from_vec(vec![zero, -i * s, -i * s, zero]),
    ])
}

/// Maximizer of ⟨w|G|w⟩ over maximally entangled two-qubit vectors: the top
/// eigenvector of Re(E†GE) mapped back through the magic basis E.
fn maxent_top_2q(g: &DMatrix<C64>) -> DVector<C64> {
    let e = magic_basis_2q();
    let gm = e.adjoint() * g * &e;
    let re = nalgebra::DMatrix::<f64>::from_fn(4, 4, |r, c| 0.5 * (gm[(r, c)].re + gm[(c, r)].re));
    let eig = re.symmetric_eigen();
    let top = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite eigenvalues"))
        .map(|(k, _)| k)
        .expect("nonempty spectrum");
    let r = eig.eigenvectors.column(top);
    &e * DVector::from_fn(4, |k, _| Complex::from(r[k]))
}

/// The two (U, V) pairs that align the back-rotated |ψ⁻⟩ respectively |Φ⟩
/// with a given maximally entangled vector w: in matrix form
/// (U†⊗Vᵀ)|x⟩ ↔ U†·X_x·V, so with U = I it suffices to solve M_x·V = X_w.
fn maxent_candidates_2q(w: &DVector<C64>) -> [(DMatrix<C64>, DMatrix<C64>); 2] {
    let x = DMatrix::from_fn(2, 2, |i, j| w[2 * i + j]);
    let sqrt2 = Complex::from(2.0f64.sqrt());
    // |ψ⁻⟩ has matrix form Ω/√2 with Ω = [[0,1],[-1,0]]; |Φ⟩ has I/√2.
    let omega_t = DMatrix::from_row_slice(2, 2, &[
        Complex::from(0.0),
        Complex::from(-1.0),
        Complex::from(1.0),
        Complex::from(0.0),
    ]);
    let id = DMatrix::<C64>::identity(2, 2);
    let v_psi = (omega_t * &x) * sqrt2;
    let v_phi = x * sqrt2;
    [(id.clone(), v_psi), (id, v_phi)]
}

/// Minimizes `base`(ρ, (U⊗V)σ(U†⊗V†)) over local unitaries U, V by
/// multi-restart coordinate descent on a Givens-angle parametrization.
///
/// Restart 0 starts at the identity, so the result never exceeds the
/// unrotated witness value; remaining restarts start from seeded uniform
/// angles, making the search deterministic for a fixed `cfg.seed`. On two
/// qubits the analytically optimal rotation (from the magic-basis
/// eigenproblem) is always evaluated as an extra candidate, so the returned
/// value attains the exact orbit minimum there.
pub fn witness_lu_min(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    base: BaseWitness,
    cfg: &LocalUnitarySearchConfig,
) -> Result<LuWitnessResult> {
    if cfg.restarts == 0 || cfg.max_iters == 0 || !(cfg.step_scale > 0.0) {
        return Err(Error::InvalidParameter {
            name: "cfg",
            value: cfg.step_scale,
            reason: "restarts and max_iters must be >= 1 and step_scale > 0",
        });
    }
    let d = require_square_target(sigma)?;
    if base == BaseWitness::TwoQubit {
        for op in [rho, sigma] {
            let (da, db) = op.dims();
            if (da, db) != (2, 2) {
                return Err(Error::NotTwoQubit { da, db });
            }
        }
    }
    let source = require_entangled_source(rho, DEFAULT_FIRED_TOL)?;
    let target = target_profile(sigma);
    let df = d as f64;
    let objective = OrbitObjective {
        g: gamma_minus(sigma).matrix().clone(),
        psi_minus: (0..d)
            .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
            .map(|(i, j)| psi_minus_vector(d, i, j))
            .collect(),
        phi: max_entangled_vector(d),
        wer_source: (df * source.gamma_minus_trace_sq + source.negativity) / 2.0,
        iso_source: (2.0 * source.gamma_minus_trace_sq + source.negativity) / df,
        w_n: source.negativity - target.negativity,
        prefactor: 2.0 / (df * (df - 1.0)),
        base,
        d,
    };

    // Escape-kick schedule for stalled descents: the angle parametrization
    // has rank-deficient points (Givens gimbal lock) where a coordinate
    // sweep can stall off the true orbit optimum, so each restart hops from
    // its converged point a few times and keeps only strict improvements.
    const KICK_ROUNDS: usize = 6;
    const KICK_SCALES: [f64; 3] = [0.8, 0.3, 0.1];

    let n_angles = 2 * d * d;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best_angles = vec![0.0; n_angles];
    let mut best_value = objective.eval_angles(&best_angles);
    for restart in 0..cfg.restarts {
        let mut angles = if restart == 0 {
            vec![0.0; n_angles]
        } else {
            (0..n_angles)
                .map(|_| rng.random_range(-PI..PI))
                .collect()
        };
        let mut value = objective.eval_angles(&angles);
        let mut champ_angles = angles.clone();
        let mut champ_value = value;
        let mut step = cfg.step_scale;
        let mut kicks_left = KICK_ROUNDS;
        for _ in 0..cfg.max_iters {
            let mut improved = false;
            for k in 0..n_angles {
                for delta in [step, -step] {
                    let saved = angles[k];
                    angles[k] = saved + delta;
                    let candidate = objective.eval_angles(&angles);
                    if candidate < value {
                        value = candidate;
                        improved = true;
                    } else {
                        angles[k] = saved;
                    }
                }
            }
            if improved {
                continue;
            }
            step /= 2.0;
            if step >= 1e-9 {
                continue;
            }
            // Converged in this basin; record it and kick from the champion.
            if value < champ_value {
                champ_value = value;
                champ_angles.copy_from_slice(&angles);
            }
            if kicks_left == 0 {
                break;
            }
            kicks_left -= 1;
            let scale = KICK_SCALES[kicks_left % KICK_SCALES.len()];
            for (a, c) in angles.iter_mut().zip(champ_angles.iter()) {
                *a = c + rng.random_range(-scale..scale);
            }
            value = objective.eval_angles(&angles);
            step = cfg.step_scale;
        }
        if value < champ_value {
            champ_value = value;
            champ_angles.copy_from_slice(&angles);
        }
        if champ_value < best_value {
            best_value = champ_value;
            best_angles = champ_angles;
        }
    }
    let mut best = LuWitnessResult {
        value: best_value,
        u: unitary_from_angles(d, &best_angles[..d * d]),
        v: unitary_from_angles(d, &best_angles[d * d..]),
    };
    if d == 2 {
        let w_star = maxent_top_2q(&objective.g);
        for (u, v) in maxent_candidates_2q(&w_star) {
            let value = objective.eval(&u, &v);
            if value < best.value {
                best = LuWitnessResult { value, u, v };
            }
        }
    }
    Ok(best)
}
