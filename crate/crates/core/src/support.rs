//! Closed-form support functions h over negativity-capped state sets.
//!
//! For a symmetric operator τ (Werner, isotropic, or generalized Werner) and
//! a cap c ≥ 0, h is the maximum of Tr[γτ] over states γ with N(γ) ≤ c.
//! Symmetrization (twirling) reduces each maximization to τ's own family, so
//! the value is reached inside the family: a 1-D interval endpoint for Werner
//! and isotropic τ, and one of five polytope vertices for generalized Werner
//! τ. Every branch of the piecewise closed forms below is the overlap with an
//! explicitly feasible optimizer, so branch ties are resolved by evaluating
//! all candidates and taking the maximum — never by picking a branch
//! silently.

use crate::{Error, Result};

fn check_dim(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d as f64,
            reason: "subsystem dimension must be at least 2",
        });
    }
    Ok(d as f64)
}

fn check_cap(c: f64) -> Result<()> {
    if !(c >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
            reason: "negativity cap must be nonnegative",
        });
    }
    Ok(())
}

/// Overlap of two Werner states, Tr[ω_α ω_β] = (d(αβ+1) − α − β)/(d(d²−1)).
pub fn werner_overlap(d: usize, alpha: f64, beta: f64) -> f64 {
    let df = d as f64;
    (df * (alpha * beta + 1.0) - alpha - beta) / (df * (df * df - 1.0))
}

/// Overlap of two isotropic states,
/// Tr[η_a η_b] = (d²ab − a − b + 1)/(d²−1).
pub fn isotropic_overlap(d: usize, a: f64, b: f64) -> f64 {
    let df = d as f64;
    let n = df * df;
    (n * a * b - a - b + 1.0) / (n - 1.0)
}

/// Overlap of two generalized Werner states,
/// Tr[ρ_{a′b′} ρ_ab] = (1−a−b)(1−a′−b′)/d + 2(aa′ + bb′)/(d(d−1)).
pub fn generalized_werner_overlap(d: usize, ab: (f64, f64), ab2: (f64, f64)) -> f64 {
    let df = d as f64;
    let (a, b) = ab;
    let (a2, b2) = ab2;
    (1.0 - a - b) * (1.0 - a2 - b2) / df + 2.0 * (a * a2 + b * b2) / (df * (df - 1.0))
}

/// The Werner parameter β* attaining [`h_werner`]: the better endpoint of the
/// feasible interval β ∈ [max(−1, −dc), 1] (overlap is affine in β).
pub fn h_werner_optimizer(d: usize, alpha: f64, c: f64) -> Result<f64> {
    let df = check_dim(d)?;
    if !(-1.0..=1.0).contains(&alpha) || alpha.is_nan() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "Werner parameter must lie in [-1, 1]",
        });
    }
    check_cap(c)?;
    let beta_min = (-df * c).max(-1.0);
    // Ties (overlap flat in β at α = 1/d) resolve to the capped endpoint,
    // whose negativity min(c, 1/d) is the binding one.
    if werner_overlap(d, alpha, beta_min) >= werner_overlap(d, alpha, 1.0) {
        Ok(beta_min)
    } else {
        Ok(1.0)
    }
}

/// Support function of a Werner state ω_α over {γ : N(γ) ≤ c}.
///
/// Equal to the piecewise closed form
/// (d − α − cd(dα−1))/(d(d²−1)) for α < 1/d, c < 1/d;
/// (1−α)/(d(d−1)) for α < 1/d, c ≥ 1/d;
/// (α+1)/(d(d+1)) for α ≥ 1/d,
/// computed as the larger endpoint overlap of the feasible Werner interval.
pub fn h_werner(d: usize, alpha: f64, c: f64) -> Result<f64> {
    let beta = h_werner_optimizer(d, alpha, c)?;
    Ok(werner_overlap(d, alpha, beta))
}

/// The isotropic fidelity a* attaining [`h_isotropic`]: the better endpoint
/// of the feasible interval a ∈ [0, min(1, (2c+1)/d)].
pub fn h_isotropic_optimizer(d: usize, beta: f64, c: f64) -> Result<f64> {
    let df = check_dim(d)?;
    if !(0.0..=1.0).contains(&beta) || beta.is_nan() {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "isotropic fidelity must lie in [0, 1]",
        });
    }
    check_cap(c)?;
    let a_max = ((2.0 * c + 1.0) / df).min(1.0);
    if isotropic_overlap(d, a_max, beta) >= isotropic_overlap(d, 0.0, beta) {
        Ok(a_max)
    } else {
        Ok(0.0)
    }
}

/// Support function of an isotropic state η_β over {γ : N(γ) ≤ c}.
///
/// Equal to the piecewise closed form
/// β + (1+2c−d)(d²β−1)/(d(d²−1)) for β > 1/d², c < (d−1)/2;
/// β for β > 1/d², c ≥ (d−1)/2;
/// (1−β)/(d²−1) for β ≤ 1/d²,
/// computed as the larger endpoint overlap of the feasible interval.
pub fn h_isotropic(d: usize, beta: f64, c: f64) -> Result<f64> {
    let a = h_isotropic_optimizer(d, beta, c)?;
    Ok(isotropic_overlap(d, a, beta))
}

/// The five candidate vertices (a′, b′) of the negativity-capped generalized
/// Werner polytope {a, b ≥ 0, a + b ≤ 1, N(ρ_{a′b′}) ≤ c}, with c capped at
/// 1/d (the family's maximal negativity, so larger caps change nothing).
pub fn gwer_feasible_vertices(d: usize, c: f64) -> Vec<(f64, f64)> {
    let df = d as f64;
    let c = c.min(1.0 / df);
    let cd = c * df;
    vec![
        (0.0, 0.0),
        (0.0, (df * (c + 1.0) - 1.0) / df),
        ((1.0 + cd) / 2.0, 0.0),
        ((1.0 + cd) / 2.0, (1.0 - cd) / 2.0),
        ((1.0 - cd) / 2.0, (1.0 + cd) / 2.0),
    ]
}

fn check_gwer_params(d: usize, a: f64, b: f64) -> Result<()> {
    check_dim(d)?;
    if !(a >= 0.0) || !(b >= 0.0) || a + b > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter {
            name: "(a,b)",
            value: a + b,
            reason: "generalized Werner weights must satisfy a, b >= 0 and a + b <= 1",
        });
    }
    Ok(())
}

/// The vertex (a′, b′) attaining [`h_generalized_werner`].
pub fn h_generalized_werner_optimizer(
    d: usize,
    a: f64,
    b: f64,
    c: f64,
) -> Result<(f64, f64)> {
    check_gwer_params(d, a, b)?;
    check_cap(c)?;
    let mut best = (0.0, 0.0);
    let mut best_val = f64::NEG_INFINITY;
    for v in gwer_feasible_vertices(d, c) {
        let val = generalized_werner_overlap(d, (a, b), v);
        if val > best_val {
            best_val = val;
            best = v;
        }
    }
    Ok(best)
}

/// Support function of a generalized Werner state ρ_ab over {γ : N(γ) ≤ c}:
/// the maximum overlap over the five polytope vertices of
/// [`gwer_feasible_vertices`] (the objective is affine over the capped
/// polytope, so the maximum sits at a vertex).
pub fn h_generalized_werner(d: usize, a: f64, b: f64, c: f64) -> Result<f64> {
    check_gwer_params(d, a, b)?;
    check_cap(c)?;
    let best = gwer_feasible_vertices(d, c)
        .into_iter()
        .map(|v| generalized_werner_overlap(d, (a, b), v))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(best)
}
