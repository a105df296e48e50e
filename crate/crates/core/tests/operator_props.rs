//! Structural properties of the Hermitian-operator layer: partial-transpose
//! algebra, spectral splits, the Löwner-order helper, and local-unitary
//! covariance.

use entwit::operator::{op_leq, BipartiteState, HermitianOperator, C64};
use entwit::verify::{random_psd_with, random_unitary_with};
use entwit::Error;
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

fn max_entry_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Random Hermitian (not necessarily PSD) operator on the given space.
fn random_hermitian(rng: &mut ChaCha8Rng, dims: (usize, usize)) -> HermitianOperator {
    let n = dims.0 * dims.1;
    let psd = random_psd_with(rng, dims);
    let shift = HermitianOperator::identity(dims).scaled(psd.trace() / n as f64);
    psd.sub(&shift)
}

#[test]
fn partial_transpose_is_an_involution_and_preserves_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for dims in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for _ in 0..20 {
            let x = random_hermitian(&mut rng, dims);
            let ptpt = x.partial_transpose().partial_transpose();
            assert_eq!(max_entry_diff(x.matrix(), ptpt.matrix()), 0.0);
            assert_close(x.trace(), x.partial_transpose().trace(), 1e-12);
        }
    }
}

#[test]
fn partial_transpose_moves_the_second_index() {
    // On basis |i j><k l|, the partial transpose swaps j and l.
    let (da, db) = (2, 3);
    let n = da * db;
    let (i, j, k, l) = (1, 2, 0, 1);
    let mut m = DMatrix::<C64>::zeros(n, n);
    m[(i * db + j, k * db + l)] = Complex::from(1.0);
    m[(k * db + l, i * db + j)] = Complex::from(1.0);
    let x = HermitianOperator::new(m, (da, db)).unwrap();
    let pt = x.partial_transpose();
    assert_eq!(pt.matrix()[(i * db + l, k * db + j)], Complex::from(1.0));
    assert_eq!(pt.matrix()[(i * db + j, k * db + l)], Complex::from(0.0));
}

#[test]
fn spectral_parts_split_reconstruct_and_annihilate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let x = random_hermitian(&mut rng, (2, 3));
        let plus = x.positive_part();
        let minus = x.negative_part();
        assert!(plus.is_psd(1e-10));
        assert!(minus.is_psd(1e-10));
        assert!(max_entry_diff(plus.sub(&minus).matrix(), x.matrix()) < 1e-10);
        // The parts live on orthogonal eigenspaces.
        let cross = (plus.matrix() * minus.matrix()).norm();
        assert!(cross < 1e-9, "parts overlap: {cross}");
        assert_close(x.trace_norm(), plus.trace() + minus.trace(), 1e-10);
        assert!(x.trace_norm() >= x.trace().abs() - 1e-12);
    }
}

#[test]
fn eigendecomposition_reconstructs_and_sorts_descending() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let x = random_hermitian(&mut rng, (3, 3));
    let eig = x.eig_hermitian();
    assert!(eig
        .eigenvalues
        .windows(2)
        .all(|w| w[0] >= w[1] - 1e-12));
    assert!(max_entry_diff(&eig.reconstruct(), x.matrix()) < 1e-9);
}

#[test]
fn lowner_helper_accepts_psd_gaps_and_rejects_dimension_mismatch() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = random_psd_with(&mut rng, (2, 2));
    let gap = random_psd_with(&mut rng, (2, 2));
    let b = a.add(&gap);
    assert!(op_leq(&a, &b, 1e-9).unwrap());
    assert!(op_leq(&a, &a, 1e-9).unwrap());
    assert!(!op_leq(&b, &a, 1e-9).unwrap() || gap.trace() < 1e-9);
    let c = random_psd_with(&mut rng, (3, 3));
    assert!(matches!(
        op_leq(&a, &c, 1e-9),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn local_conjugation_preserves_spectrum_and_covaries_with_partial_transpose() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let x = random_hermitian(&mut rng, (2, 3));
        let u = random_unitary_with(&mut rng, 2);
        let v = random_unitary_with(&mut rng, 3);
        let y = x.conjugate_by_local(&u, &v).unwrap();
        assert_close(x.trace(), y.trace(), 1e-10);
        let lx = x.eig_hermitian().eigenvalues;
        let ly = y.eig_hermitian().eigenvalues;
        for (a, b) in lx.iter().zip(ly.iter()) {
            assert_close(*a, *b, 1e-9);
        }
        // [(U⊗V) X (U⊗V)†]^Γ = (U⊗V̄) X^Γ (U⊗V̄)† — the covariance identity
        // behind the fast orbit objective.
        let lhs = y.partial_transpose();
        let v_bar = v.map(|z| z.conj());
        let rhs = x.partial_transpose().conjugate_by_local(&u, &v_bar).unwrap();
        assert!(max_entry_diff(lhs.matrix(), rhs.matrix()) < 1e-10);
    }
}

#[test]
fn constructor_rejections_name_the_problem() {
    let m = DMatrix::<C64>::identity(4, 4);
    assert!(matches!(
        HermitianOperator::new(DMatrix::<C64>::zeros(3, 4), (1, 3)),
        Err(Error::NotSquare { .. })
    ));
    assert!(matches!(
        HermitianOperator::new(m.clone(), (3, 2)),
        Err(Error::BadDims { .. })
    ));
    let mut skew = DMatrix::<C64>::zeros(4, 4);
    skew[(0, 1)] = Complex::from(1.0);
    skew[(1, 0)] = Complex::from(-1.0);
    assert!(matches!(
        HermitianOperator::new(skew, (2, 2)),
        Err(Error::NotHermitian { .. })
    ));

    let tiny = DMatrix::<C64>::identity(4, 4) * Complex::from(0.5);
    assert!(matches!(
        BipartiteState::new(HermitianOperator::new(tiny, (2, 2)).unwrap()),
        Err(Error::NotUnitTrace { .. })
    ));
    let mut neg = DMatrix::<C64>::zeros(4, 4);
    neg[(0, 0)] = Complex::from(1.5);
    neg[(1, 1)] = Complex::from(-0.5);
    assert!(matches!(
        BipartiteState::new(HermitianOperator::new(neg, (2, 2)).unwrap()),
        Err(Error::NotPsd { .. })
    ));
}

proptest! {
    #[test]
    fn diagonal_operators_transpose_to_themselves(
        d in 2usize..4,
        vals in proptest::collection::vec(-1.0f64..1.0, 16),
    ) {
        let n = d * d;
        let m = DMatrix::<C64>::from_fn(n, n, |r, c| {
            if r == c { Complex::from(vals[r % vals.len()]) } else { Complex::from(0.0) }
        });
        let x = HermitianOperator::new(m, (d, d)).unwrap();
        prop_assert_eq!(max_entry_diff(x.matrix(), x.partial_transpose().matrix()), 0.0);
    }

    #[test]
    fn scaling_is_linear_in_trace_and_parts(scale in 0.01f64..5.0, seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_hermitian(&mut rng, (2, 2));
        let y = x.scaled(scale);
        prop_assert!((y.trace() - scale * x.trace()).abs() < 1e-9);
        prop_assert!((y.trace_norm() - scale * x.trace_norm()).abs() < 1e-9);
        prop_assert!(
            (y.negative_part().trace() - scale * x.negative_part().trace()).abs() < 1e-9
        );
    }
}
