//! Randomized and brute-force oracles for the witness machinery: seeded
//! random ensembles (states, unitaries, local channels), grid/vertex
//! maximizers that cross-check the closed-form support functions, and the
//! self-contained verification suites behind `verify` in the CLI.
//!
//! Every oracle is a pure function of its seed; the RNG is ChaCha8 and its
//! identity is recorded in each [`SuiteReport`] line so results reproduce
//! across implementations.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

// Re-exported so callers can construct and seed the generator the `*_with`
// samplers take, without tracking the rand crates themselves.
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::measures::{f_l_tail, gamma_minus, majorization_convertible_coeffs, negativity};
use crate::operator::{BipartiteState, HermitianOperator, C64};
use crate::states::{generalized_werner, StateFamilySpec};
use crate::support::{
    generalized_werner_overlap, h_generalized_werner, h_isotropic, h_werner, isotropic_overlap,
    werner_overlap,
};
use crate::witness::{
    witness_gamma, witness_gwer_vertices, witness_lu_min, BaseWitness, LocalUnitarySearchConfig,
};
use crate::{Error, Result};

/// Names of all verification suites, in canonical order.
pub const SUITE_NAMES: [&str; 6] = [
    "opineq",
    "monotonicity",
    "support_oracle",
    "majorization_f_l",
    "gwer_vertices",
    "lu_orbit",
];

/// RNG identity recorded in every report line.
pub const RNG_NAME: &str = "chacha8";

/// Outcome of one verification suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    /// Suite name (one of [`SUITE_NAMES`]).
    pub suite: &'static str,
    /// Number of requested trials.
    pub trials: usize,
    /// Number of checks that exceeded the suite's tolerance.
    pub violations: usize,
    /// Largest residual observed (0 when every check held exactly).
    pub max_residual: f64,
    /// Seed the run was started from.
    pub seed: u64,
}

impl SuiteReport {
    /// Whether the run found no violations.
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl std::fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "suite={} trials={} violations={} max_residual={:.3e} seed={} rng={}",
            self.suite, self.trials, self.violations, self.max_residual, self.seed, RNG_NAME
        )
    }
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) / 2.0f64.sqrt()
}

fn ginibre(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Haar-distributed d×d unitary drawn from `rng` (QR of a Ginibre matrix
/// with the R-diagonal phases normalized).
pub fn random_unitary_with(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<C64> {
    let g = ginibre(rng, d, d);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex::from(1.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

/// Haar-distributed d×d unitary for a fixed seed.
pub fn random_unitary(d: usize, seed: u64) -> DMatrix<C64> {
    random_unitary_with(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

/// Random PSD operator G·G† on the given bipartite space (unnormalized).
pub fn random_psd_with(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> HermitianOperator {
    let n = dims.0 * dims.1;
    let g = ginibre(rng, n, n);
    let m = &g * g.adjoint();
    HermitianOperator::new(m, dims).expect("G·G† is Hermitian")
}

/// Random `rank`-limited density operator G·G†/Tr[G·G†] with G an n×rank
/// seeded complex Gaussian matrix; rank 1 gives a pure state.
pub fn random_density_with(
    rng: &mut ChaCha8Rng,
    dims: (usize, usize),
    rank: usize,
) -> Result<BipartiteState> {
    let n = dims.0 * dims.1;
    if rank == 0 || rank > n {
        return Err(Error::InvalidParameter {
            name: "rank",
            value: rank as f64,
            reason: "rank must satisfy 1 <= rank <= d_A * d_B",
        });
    }
    let g = ginibre(rng, n, rank);
    let m = &g * g.adjoint();
    let op = HermitianOperator::new(m, dims)?;
    let op = op.scaled(1.0 / op.trace());
    BipartiteState::new(op)
}

/// Random density operator for a fixed seed (see [`random_density_with`]).
pub fn random_density(dims: (usize, usize), rank: usize, seed: u64) -> Result<BipartiteState> {
    random_density_with(&mut ChaCha8Rng::seed_from_u64(seed), dims, rank)
}

/// Random Schmidt coefficient vector of length d: normalized exponentials,
/// not sorted.
pub fn random_schmidt_with(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..d)
        .map(|_| {
            let u: f64 = rng.random_range(1e-12..1.0);
            -u.ln()
        })
        .collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v
}

/// Which subsystem a [`LocalChannel`] acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelSide {
    /// E ⊗ id.
    A,
    /// id ⊗ E.
    B,
}

/// A trace-preserving completely positive map acting on one subsystem only:
/// E_A ⊗ id or id ⊗ E_B, given by Kraus operators with Σ K†K = I.
///
/// Local channels are LOCC (hence PPT), which makes them the tractable
/// sample class for monotonicity checks.
#[derive(Debug, Clone)]
pub struct LocalChannel {
    side: ChannelSide,
    kraus: Vec<DMatrix<C64>>,
    local_dim: usize,
}

impl LocalChannel {
    /// Builds a local channel from explicit Kraus operators, validating that
    /// they are square, share one dimension, and satisfy Σ K†K = I within
    /// 1e−10.
    pub fn new(side: ChannelSide, kraus: Vec<DMatrix<C64>>) -> Result<Self> {
        let local_dim = match kraus.first() {
            Some(k) if k.nrows() == k.ncols() && k.nrows() > 0 => k.nrows(),
            _ => {
                return Err(Error::InvalidParameter {
                    name: "kraus",
                    value: kraus.len() as f64,
                    reason: "at least one square Kraus operator is required",
                })
            }
        };
        if kraus
            .iter()
            .any(|k| k.nrows() != local_dim || k.ncols() != local_dim)
        {
            return Err(Error::DimensionMismatch {
                left: format!("first Kraus operator is {local_dim}x{local_dim}"),
                right: "remaining Kraus operators must match".to_string(),
            });
        }
        let channel = LocalChannel {
            side,
            kraus,
            local_dim,
        };
        let defect = channel.completeness_defect();
        if defect > 1e-10 {
            return Err(Error::InvalidParameter {
                name: "kraus",
                value: defect,
                reason: "Kraus operators must satisfy sum K^dag K = I within 1e-10",
            });
        }
        Ok(channel)
    }

    /// The side this channel acts on.
    pub fn side(&self) -> ChannelSide {
        self.side
    }

    /// Dimension of the subsystem the Kraus operators act on.
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Largest entry of |Σ K†K − I|, the trace-preservation defect.
    pub fn completeness_defect(&self) -> f64 {
        let mut s = DMatrix::<C64>::zeros(self.local_dim, self.local_dim);
        for k in &self.kraus {
            s += k.adjoint() * k;
        }
        (s - DMatrix::<C64>::identity(self.local_dim, self.local_dim))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Applies the channel: Σ (K⊗I) X (K⊗I)† (or with the factors swapped
    /// for side B). The input's subsystem on the acted side must match the
    /// channel's local dimension.
    pub fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        let (da, db) = x.dims();
        let acted = match self.side {
            ChannelSide::A => da,
            ChannelSide::B => db,
        };
        if acted != self.local_dim {
            return Err(Error::DimensionMismatch {
                left: format!("channel acts on dimension {}", self.local_dim),
                right: format!("state subsystem has dimension {}", acted),
            });
        }
        let n = da * db;
        let mut out = DMatrix::<C64>::zeros(n, n);
        for k in &self.kraus {
            let w = match self.side {
                ChannelSide::A => k.kronecker(&DMatrix::<C64>::identity(db, db)),
                ChannelSide::B => DMatrix::<C64>::identity(da, da).kronecker(k),
            };
            out += &w * x.matrix() * w.adjoint();
        }
        HermitianOperator::with_herm_tol(out, x.dims(), 1e-9)
    }

    /// The partial-transpose conjugated map E^Γ(X) = [E(X^Γ)]^Γ, which is
    /// again positive for a local channel.
    pub fn apply_gamma(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        Ok(self.apply(&x.partial_transpose())?.partial_transpose())
    }
}

/// Random local channel on a d-dimensional subsystem with `kraus_count`
/// Kraus operators (Gaussian draws normalized through Σ M†M): the side is
/// drawn from the RNG as well.
pub fn random_local_channel_with(
    rng: &mut ChaCha8Rng,
    d: usize,
    kraus_count: usize,
) -> LocalChannel {
    assert!(kraus_count >= 1, "kraus_count must be >= 1");
    let side = if rng.random_range(0..2u8) == 0 {
        ChannelSide::A
    } else {
        ChannelSide::B
    };
    let ms: Vec<DMatrix<C64>> = (0..kraus_count).map(|_| ginibre(rng, d, d)).collect();
    let mut s = DMatrix::<C64>::zeros(d, d);
    for m in &ms {
        s += m.adjoint() * m;
    }
    // S^{-1/2} through the spectral decomposition of the PSD matrix S.
    let s_op = HermitianOperator::new(s, (1, d)).expect("Σ M†M is Hermitian");
    let eig = s_op.eig_hermitian();
    let mut inv_sqrt = DMatrix::<C64>::zeros(d, d);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        // Gaussian draws make S full rank almost surely; guard regardless.
        let w = if l > 1e-300 { 1.0 / l.sqrt() } else { 0.0 };
        let v = eig.eigenvectors.column(k);
        for i in 0..d {
            for j in 0..d {
                inv_sqrt[(i, j)] += Complex::from(w) * v[i] * v[j].conj();
            }
        }
    }
    let kraus = ms.into_iter().map(|m| m * &inv_sqrt).collect();
    LocalChannel {
        side,
        kraus,
        local_dim: d,
    }
}

/// Random local channel for a fixed seed (see [`random_local_channel_with`]).
pub fn random_local_channel(d: usize, kraus_count: usize, seed: u64) -> LocalChannel {
    random_local_channel_with(&mut ChaCha8Rng::seed_from_u64(seed), d, kraus_count)
}

/// Random state with negativity at most `c`: a random density operator mixed
/// toward I/n by a binary-searched weight until the cap holds (N is
/// continuous in the mixing weight and vanishes at I/n, so this always
/// terminates).
pub fn sample_state_negativity_capped(
    rng: &mut ChaCha8Rng,
    dims: (usize, usize),
    c: f64,
) -> BipartiteState {
    let n = dims.0 * dims.1;
    let rank = rng.random_range(1..=n);
    let gamma = random_density_with(rng, dims, rank).expect("valid rank");
    if negativity(&gamma) <= c {
        return gamma;
    }
    let id = HermitianOperator::identity(dims).scaled(1.0 / n as f64);
    let mix = |t: f64| {
        BipartiteState::new(gamma.scaled(1.0 - t).add(&id.scaled(t)))
            .expect("mixture of states is a state")
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if negativity(&mix(mid)) <= c {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    mix(hi)
}

/// Grid/vertex maximization of Tr[γτ] over τ's own family restricted to
/// N(γ) ≤ c — the independent oracle for the closed-form support functions.
///
/// Werner and isotropic τ use a 1-D grid with the given step; generalized
/// Werner τ enumerates the vertices of the capped polytope from its
/// half-plane description (each candidate's negativity is re-checked through
/// the state factory, not through the closed-form vertex list).
pub fn brute_force_support(tau: &StateFamilySpec, c: f64, grid_step: f64) -> Result<f64> {
    if !(c >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
            reason: "negativity cap must be nonnegative",
        });
    }
    if !(grid_step > 0.0) {
        return Err(Error::InvalidParameter {
            name: "grid_step",
            value: grid_step,
            reason: "grid step must be positive",
        });
    }
    match *tau {
        StateFamilySpec::Werner { d, alpha } => {
            let df = d as f64;
            let lo = (-df * c).max(-1.0);
            Ok(grid_max(lo, 1.0, grid_step, |beta| {
                werner_overlap(d, alpha, beta)
            }))
        }
        StateFamilySpec::Isotropic { d, beta } => {
            let df = d as f64;
            let hi = ((2.0 * c + 1.0) / df).min(1.0);
            Ok(grid_max(0.0, hi, grid_step, |a| isotropic_overlap(d, a, beta)))
        }
        StateFamilySpec::GeneralizedWerner { d, a, b } => {
            let mut best = f64::NEG_INFINITY;
            for v in gwer_polytope_vertices(d, c) {
                let val = generalized_werner_overlap(d, (a, b), v);
                if val > best {
                    best = val;
                }
            }
            Ok(best)
        }
        _ => Err(Error::Unsupported(format!(
            "no support-function oracle for family `{}`",
            tau
        ))),
    }
}

fn grid_max(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut best = f(hi);
    let mut x = lo;
    while x < hi {
        best = best.max(f(x));
        x += step;
    }
    best
}

/// Vertices of {a, b ≥ 0, a + b ≤ 1, N(ρ_ab) ≤ c}, enumerated from the
/// half-plane description of the negativity cap
/// (N(ρ_ab) = max{0, (2a−1)/d, ((d−2)a + db − (d−1))/d} inside the simplex):
/// all pairwise intersections of the five bounding lines, kept when they
/// satisfy every constraint and their factory-built state's negativity
/// respects the cap.
fn gwer_polytope_vertices(d: usize, c: f64) -> Vec<(f64, f64)> {
    let df = d as f64;
    // Lines p·(a,b) = q as (p_a, p_b, q).
    let lines: [(f64, f64, f64); 5] = [
        (1.0, 0.0, 0.0),                                   // a = 0
        (0.0, 1.0, 0.0),                                   // b = 0
        (1.0, 1.0, 1.0),                                   // a + b = 1
        (2.0, 0.0, c * df + 1.0),                          // PT mode on |Φ⟩
        (df - 2.0, df, c * df + df - 1.0),                 // PT mode on P ⊖ |Φ⟩
    ];
    let feasible = |a: f64, b: f64| {
        a >= -1e-9
            && b >= -1e-9
            && a + b <= 1.0 + 1e-9
            && 2.0 * a <= c * df + 1.0 + 1e-9
            && (df - 2.0) * a + df * b <= c * df + df - 1.0 + 1e-9
    };
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let (a1, b1, q1) = lines[i];
            let (a2, b2, q2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let a = (q1 * b2 - q2 * b1) / det;
            let b = (a1 * q2 - a2 * q1) / det;
            if !feasible(a, b) {
                continue;
            }
            let (mut a, mut b) = (a.max(0.0), b.max(0.0));
            let sum = a + b;
            if sum > 1.0 {
                a /= sum;
                b /= sum;
            }
            // Independent re-check through the factory: the candidate really
            // is a state of the family with negativity within the cap.
            let state = generalized_werner(d, a, b).expect("feasible vertex is in the simplex");
            if negativity(&state) <= c + 1e-8 {
                out.push((a, b));
            }
        }
    }
    out
}

fn report(
    suite: &'static str,
    trials: usize,
    seed: u64,
    violations: usize,
    max_residual: f64,
) -> SuiteReport {
    SuiteReport {
        suite,
        trials,
        violations,
        max_residual,
        seed,
    }
}

/// Largest excess of a's sorted eigenvalues over b's: max_i max(0, λ_i(a) −
/// λ_i(b)), both spectra sorted descending.
///
/// Eigenvalue dominance is the form of the positive/negative-part bounds
/// that actually holds: by Weyl's inequality, λ_i(A−B) ≤ λ_i(A) whenever
/// B ⪰ 0, hence λ_i((A−B)₊) ≤ λ_i(A) and λ_i((A−B)₋) ≤ λ_i(B). The stronger
/// Löwner ordering (A−B)₊ ⪯ A fails for generic non-commuting pairs — e.g.
/// A = [[1,1],[1,1]], B = diag(0,2) gives λ_min(A − (A−B)₊) = −(√2−1) — and
/// dominance already implies every trace and norm consequence the witness
/// bounds rely on.
fn eigenvalue_excess(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    let la = a.eig_hermitian().eigenvalues;
    let lb = b.eig_hermitian().eigenvalues;
    la.iter()
        .zip(lb.iter())
        .fold(0.0f64, |m, (x, y)| m.max(x - y))
        .max(0.0)
}

/// Operator-inequality suite: for random PSD pairs (A, B) on 2×2 and 3×3
/// bipartite spaces, the sorted spectra of (A−B)₊ and (A−B)₋ are dominated
/// by those of A and B; additionally, for random local channels E and states
/// ρ on two qubits, the spectrum of E(ρ)^{Γ−} is dominated by that of
/// E^Γ(ρ^{Γ−}) (which yields negativity monotonicity by taking traces).
pub fn suite_opineq(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    let tol = 1e-9;
    for t in 0..trials {
        let dims = if t % 2 == 0 { (2, 2) } else { (3, 3) };
        let a = random_psd_with(&mut rng, dims);
        let b = random_psd_with(&mut rng, dims);
        let diff = a.sub(&b);
        for (part, bound) in [(diff.positive_part(), &a), (diff.negative_part(), &b)] {
            let r = eigenvalue_excess(&part, bound);
            max_residual = max_residual.max(r);
            if r > tol {
                violations += 1;
            }
        }
    }
    for t in 0..trials / 2 {
        let rank = 1 + t % 4;
        let rho = random_density_with(&mut rng, (2, 2), rank).expect("valid rank");
        let channel = random_local_channel_with(&mut rng, 2, 1 + t % 3);
        let lhs = gamma_minus(&channel.apply(&rho).expect("matching dims"));
        let rhs = channel
            .apply_gamma(&gamma_minus(&rho))
            .expect("matching dims");
        let r = eigenvalue_excess(&lhs, &rhs);
        max_residual = max_residual.max(r);
        if r > tol {
            violations += 1;
        }
    }
    report("opineq", trials, seed, violations, max_residual)
}

/// Negativity monotonicity under random local (hence PPT) channels on two
/// qubits: N(E(ρ)) ≤ N(ρ) + 1e−9.
pub fn suite_monotonicity(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    for t in 0..trials {
        let rank = 1 + t % 4;
        let rho = random_density_with(&mut rng, (2, 2), rank).expect("valid rank");
        let channel = random_local_channel_with(&mut rng, 2, 1 + t % 3);
        let out = channel.apply(&rho).expect("matching dims");
        let r = (negativity(&out) - negativity(&rho)).max(0.0);
        max_residual = max_residual.max(r);
        if r > 1e-9 {
            violations += 1;
        }
    }
    report("monotonicity", trials, seed, violations, max_residual)
}

/// Closed-form support functions against the brute-force maximizers:
/// `trials` random (τ, c) queries per family, residual tolerance 1e−4 at
/// grid step 1e−5.
pub fn suite_support_oracle(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    let grid_step = 1e-5;
    let tol = 1e-4;
    let mut check = |closed: f64, tau: &StateFamilySpec, c: f64| {
        let oracle = brute_force_support(tau, c, grid_step).expect("supported family");
        let r = (closed - oracle).abs();
        if r > tol {
            violations += 1;
        }
        if r > max_residual {
            max_residual = r;
        }
    };
    for t in 0..trials {
        let d = 2 + t % 3;
        let alpha = rng.random_range(-1.0..1.0);
        let c = rng.random_range(0.0..1.0);
        check(
            h_werner(d, alpha, c).expect("valid params"),
            &StateFamilySpec::Werner { d, alpha },
            c,
        );
        let beta = rng.random_range(0.0..1.0);
        let c = rng.random_range(0.0..(d as f64) / 2.0);
        check(
            h_isotropic(d, beta, c).expect("valid params"),
            &StateFamilySpec::Isotropic { d, beta },
            c,
        );
        let a = rng.random_range(0.0..1.0);
        let b = rng.random_range(0.0..(1.0 - a));
        let c = rng.random_range(0.0..1.5 / d as f64);
        check(
            h_generalized_werner(d, a, b, c).expect("valid params"),
            &StateFamilySpec::GeneralizedWerner { d, a, b },
            c,
        );
    }
    report("support_oracle", trials, seed, violations, max_residual)
}

/// Equivalence of the majorization partial-sum test and the tail-sum
/// monotones: ψ converts to φ iff f_l(ψ) ≥ f_l(φ) for every l, over random
/// Schmidt vectors of length 2..=5 (with related pairs mixed in so both
/// outcomes occur).
pub fn suite_majorization_f_l(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    for t in 0..trials {
        let d = 2 + t % 4;
        let mut s = random_schmidt_with(&mut rng, d);
        let mut w = random_schmidt_with(&mut rng, d);
        match t % 3 {
            // Concentrate mass so that w majorizes s (convertible pairs).
            0 => {
                w = concentrate(&s, rng.random_range(0.1..0.9));
            }
            // Concentrated source (typically non-convertible).
            1 => {
                s = concentrate(&w, rng.random_range(0.1..0.9));
            }
            _ => {}
        }
        let by_majorization = majorization_convertible_coeffs(&s, &w);
        let by_tails = (2..=d).all(|l| {
            f_l_tail(&s, l).expect("l in range") >= f_l_tail(&w, l).expect("l in range") - 1e-10
        });
        if by_majorization != by_tails {
            violations += 1;
            max_residual = max_residual.max(1.0);
        }
    }
    report("majorization_f_l", trials, seed, violations, max_residual)
}

/// Moves a fraction `t` of every smaller entry's mass onto the largest
/// entry, producing a vector that majorizes the input.
fn concentrate(v: &[f64], t: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    let top = out
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut moved = 0.0;
    for (i, x) in out.iter_mut().enumerate() {
        if i != top {
            let delta = t * *x;
            *x -= delta;
            moved += delta;
        }
    }
    out[top] += moved;
    out
}

/// Sign structure of the generalized Werner vertex witnesses on random
/// pairs: at every vertex except L, a fired value implies W_N fired (only
/// the extreme Werner vertex can beat the negativity), and vertex M must
/// equal W_N/d² exactly.
pub fn suite_gwer_vertices(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    let tol = 1e-9;
    for t in 0..trials {
        let d = 2 + t % 2;
        let n = d * d;
        let rho = loop {
            let rank = 1 + rng.random_range(0..2usize);
            let candidate = random_density_with(&mut rng, (d, d), rank).expect("valid rank");
            if negativity(&candidate) > 1e-6 {
                break candidate;
            }
        };
        let sigma =
            random_density_with(&mut rng, (d, d), 1 + t % n).expect("valid rank");
        let w_n = negativity(&rho) - negativity(&sigma);
        let vertices = witness_gwer_vertices(&rho, &sigma).expect("entangled source");
        for v in &vertices {
            if v.label == "L" {
                continue;
            }
            if v.label == "M" {
                let r = (v.value - w_n / (n as f64)).abs();
                max_residual = max_residual.max(r);
                if r > 1e-10 {
                    violations += 1;
                }
            }
            if v.value < -tol && w_n >= -tol {
                violations += 1;
                max_residual = max_residual.max(-v.value);
            }
        }
    }
    report("gwer_vertices", trials, seed, violations, max_residual)
}

/// Local-unitary orbit invariance of the minimized witness: searching from
/// σ and from a randomly rotated copy of σ must land within 1e−6, and the
/// result never exceeds the unrotated witness value.
pub fn suite_lu_orbit(seed: u64, trials: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_residual = 0.0f64;
    for t in 0..trials {
        let rho = loop {
            let candidate =
                random_density_with(&mut rng, (2, 2), 1 + t % 2).expect("valid rank");
            if negativity(&candidate) > 1e-6 {
                break candidate;
            }
        };
        let sigma = random_density_with(&mut rng, (2, 2), 1 + t % 4).expect("valid rank");
        let cfg = LocalUnitarySearchConfig {
            restarts: 12,
            max_iters: 200,
            seed: seed.wrapping_add(t as u64).wrapping_mul(0x9E3779B97F4A7C15),
            step_scale: 0.5,
        };
        let direct = witness_lu_min(&rho, &sigma, BaseWitness::Gamma, &cfg).expect("valid pair");
        let u0 = random_unitary_with(&mut rng, 2);
        let v0 = random_unitary_with(&mut rng, 2);
        let rotated_sigma = BipartiteState::new(
            sigma.conjugate_by_local(&u0, &v0).expect("matching dims"),
        )
        .expect("local rotation preserves the state");
        let rotated =
            witness_lu_min(&rho, &rotated_sigma, BaseWitness::Gamma, &cfg).expect("valid pair");
        let base = witness_gamma(&rho, &sigma).w_gamma;
        let excess = (direct.value - base).max(0.0);
        let drift = (direct.value - rotated.value).abs();
        max_residual = max_residual.max(drift).max(excess);
        if drift > 1e-6 || excess > 1e-12 {
            violations += 1;
        }
    }
    report("lu_orbit", trials, seed, violations, max_residual)
}

/// Default trial count for each suite, chosen to keep full runs within a
/// couple of minutes while exercising every branch.
pub fn default_trials(suite: &str) -> Option<usize> {
    match suite {
        "opineq" => Some(1000),
        "monotonicity" => Some(1000),
        "support_oracle" => Some(100),
        "majorization_f_l" => Some(1000),
        "gwer_vertices" => Some(500),
        "lu_orbit" => Some(20),
        _ => None,
    }
}

/// Runs the named suite; unknown names yield [`Error::Unsupported`].
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    match name {
        "opineq" => Ok(suite_opineq(seed, trials)),
        "monotonicity" => Ok(suite_monotonicity(seed, trials)),
        "support_oracle" => Ok(suite_support_oracle(seed, trials)),
        "majorization_f_l" => Ok(suite_majorization_f_l(seed, trials)),
        "gwer_vertices" => Ok(suite_gwer_vertices(seed, trials)),
        "lu_orbit" => Ok(suite_lu_orbit(seed, trials)),
        _ => Err(Error::Unsupported(format!(
            "unknown verification suite `{}` (expected one of: {})",
            name,
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Conjugates an operator by a random U⊗V pair drawn from `rng` (convenience
/// for orbit-invariance checks).
pub fn random_local_rotation(
    rng: &mut ChaCha8Rng,
    state: &HermitianOperator,
) -> HermitianOperator {
    let u = random_unitary_with(rng, state.dim_a());
    let v = random_unitary_with(rng, state.dim_b());
    state.conjugate_by_local(&u, &v).expect("matching dims")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_density_is_deterministic_and_valid() {
        let a = random_density((2, 2), 2, 42).unwrap();
        let b = random_density((2, 2), 2, 42).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert!((a.trace() - 1.0).abs() < 1e-12);
        let pure = random_density((2, 2), 1, 7).unwrap();
        let top = pure.eig_hermitian().eigenvalues[0];
        assert!((top - 1.0).abs() < 1e-9);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let u = random_unitary(3, 5);
        let dev = (u.adjoint() * &u - DMatrix::<C64>::identity(3, 3))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(dev < 1e-12);
    }

    #[test]
    fn local_channel_is_trace_preserving() {
        let ch = random_local_channel(2, 3, 11);
        assert!(ch.completeness_defect() < 1e-10);
        let rho = random_density((2, 2), 3, 13).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-10);
        assert!(out.is_psd(1e-10));
    }

    #[test]
    fn identity_channel_preserves_negativity() {
        let ch = LocalChannel {
            side: ChannelSide::A,
            kraus: vec![DMatrix::<C64>::identity(2, 2)],
            local_dim: 2,
        };
        let rho = random_density((2, 2), 1, 3).unwrap();
        let out = ch.apply(&rho).unwrap();
        assert!((negativity(&out) - negativity(&rho)).abs() < 1e-12);
    }

    #[test]
    fn capped_sampler_respects_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let s = sample_state_negativity_capped(&mut rng, (2, 2), 0.1);
            assert!(negativity(&s) <= 0.1 + 1e-9);
        }
    }

    #[test]
    fn brute_force_matches_closed_forms_spot() {
        let tau = StateFamilySpec::Werner { d: 3, alpha: -1.0 };
        let oracle = brute_force_support(&tau, 0.2, 1e-5).unwrap();
        assert!((oracle - 4.0 / 15.0).abs() < 1e-4);
        let tau = StateFamilySpec::GeneralizedWerner {
            d: 3,
            a: 0.2,
            b: 0.2,
        };
        let oracle = brute_force_support(&tau, 0.1, 1e-5).unwrap();
        assert!((oracle - h_generalized_werner(3, 0.2, 0.2, 0.1).unwrap()).abs() < 1e-9);
        assert!(brute_force_support(&StateFamilySpec::RhoQ { q: 0.5 }, 0.1, 1e-5).is_err());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", 0, 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn small_suite_smoke() {
        let r = suite_opineq(1, 10);
        assert_eq!(r.violations, 0, "{}", r);
        let r = suite_monotonicity(1, 10);
        assert_eq!(r.violations, 0, "{}", r);
        let r = suite_majorization_f_l(1, 30);
        assert_eq!(r.violations, 0, "{}", r);
    }
}
