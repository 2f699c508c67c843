//! Cross-module property suite: the structural identities every construction
//! must satisfy, on randomized inputs.

use proptest::prelude::*;

use unruh_core::matrixcore::{
    eigen_residual_max, eigen_sym, eigvals_sym, kron, partial_transpose_alice, shannon_entropy_b2,
    BipartiteDims, Spectrum, SymMatrix, EIG_TOL,
};
use unruh_core::measures::{
    boson_coherence, boson_entropy, boson_log_negativity, coherence_anyon, coherence_rel_entropy,
    entropy_anyon, negativity_anyon, negativity_from_spectrum, PSD_TOL,
};
use unruh_core::unruh::{
    anyon_block, boson_state_truncated, choose_truncation, fermion_state, AnyonCombination,
    CoeffConvention, CombinationMode, RindlerParams,
};

fn sym_matrix(dim: usize) -> impl Strategy<Value = SymMatrix> {
    prop::collection::vec(-1.0f64..1.0, dim * (dim + 1) / 2).prop_map(move |upper| {
        let mut it = upper.into_iter();
        SymMatrix::from_fn_sym(dim, |_, _| it.next().unwrap())
    })
}

/// Random PSD matrix G G^T with entries of order one.
fn psd_matrix(dim: usize) -> impl Strategy<Value = SymMatrix> {
    prop::collection::vec(-1.0f64..1.0, dim * dim).prop_map(move |g| {
        SymMatrix::from_fn_sym(dim, |i, j| {
            (0..dim).map(|k| g[i * dim + k] * g[j * dim + k]).sum()
        })
    })
}

fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product_spectrum(a in sym_matrix(2), b in sym_matrix(3)) {
        let ea = eigvals_sym(&a, EIG_TOL).unwrap();
        let eb = eigvals_sym(&b, EIG_TOL).unwrap();
        let mut pairwise: Vec<f64> = Vec::new();
        for &x in ea.values() {
            for &y in eb.values() {
                pairwise.push(x * y);
            }
        }
        let dense = eigvals_sym(&kron(&a, &b).unwrap(), EIG_TOL).unwrap();
        prop_assert!(multiset_close(dense.values(), &pairwise, 1e-9));
    }

    #[test]
    fn partial_transpose_is_involutive_and_trace_preserving(m in sym_matrix(6)) {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let pt = partial_transpose_alice(&m, &dims).unwrap();
        prop_assert!((pt.trace() - m.trace()).abs() <= 1e-14);
        // still symmetric
        for i in 0..6 {
            for j in 0..6 {
                prop_assert!((pt.get(i, j) - pt.get(j, i)).abs() <= 1e-15);
            }
        }
        let back = partial_transpose_alice(&pt, &dims).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                prop_assert_eq!(back.get(i, j), m.get(i, j));
            }
        }
    }

    #[test]
    fn entropy_tensor_identity(a in psd_matrix(2), b in psd_matrix(3)) {
        // S(A (x) B) = tr(A) S(B) + tr(B) S(A) for PSD inputs
        let s = |m: &SymMatrix| {
            shannon_entropy_b2(&eigvals_sym(m, EIG_TOL).unwrap(), 1e-9).unwrap()
        };
        let lhs = s(&kron(&a, &b).unwrap());
        let rhs = a.trace() * s(&b) + b.trace() * s(&a);
        prop_assert!((lhs - rhs).abs() <= 1e-8, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn eigen_residual_contract_on_random_input(m in sym_matrix(7)) {
        let eig = eigen_sym(&m, EIG_TOL).unwrap();
        let bound = EIG_TOL * m.frobenius_norm().max(1.0);
        prop_assert!(eigen_residual_max(&m, &eig) <= bound);
        prop_assert!((eig.spectrum.sum() - m.trace()).abs() <= 7.0 * EIG_TOL * m.frobenius_norm().max(1.0));
    }

    #[test]
    fn measures_are_basis_permutation_invariant(vals in prop::collection::vec(-0.2f64..1.0, 6)) {
        let n = vals.len();
        let fwd = Spectrum::new(vals.clone(), n).unwrap();
        let mut rev = vals.clone();
        rev.reverse();
        let bwd = Spectrum::new(rev, n).unwrap();
        prop_assert_eq!(
            negativity_from_spectrum(&fwd, false),
            negativity_from_spectrum(&bwd, false)
        );
    }

    #[test]
    fn anyon_block_spectrum_matches_dense(
        alpha in 0.0f64..1.0,
        u in 0.0f64..0.95,
        n in 0usize..5,
        tw in prop::bool::ANY,
    ) {
        let p = RindlerParams::from_thermal_factor(u).unwrap();
        let mode = if tw { CombinationMode::TraceWeighted } else { CombinationMode::Uniform };
        let comb = AnyonCombination::new(alpha, mode, 6, CoeffConvention::SqrtN).unwrap();
        let (m, paired) = anyon_block(n, &comb, &p, &p).unwrap();
        let dense = eigvals_sym(&m, EIG_TOL).unwrap();
        prop_assert!(multiset_close(dense.values(), paired.values(), 1e-10));
    }

    #[test]
    fn anyon_measures_are_nonnegative(
        alpha in 0.0f64..1.0,
        u in 0.0f64..0.9,
    ) {
        let p = RindlerParams::from_thermal_factor(u).unwrap();
        let n_max = choose_truncation(&p, 1e-10).unwrap();
        let comb = AnyonCombination::new(
            alpha,
            CombinationMode::TraceWeighted,
            n_max,
            CoeffConvention::SqrtN,
        )
        .unwrap();
        prop_assert!(entropy_anyon(&comb, &p, &p).unwrap() >= 0.0);
        prop_assert!(negativity_anyon(&comb, &p, &p).unwrap() >= 0.0);
        prop_assert!(coherence_anyon(&comb, &p, &p).unwrap() >= -1e-12);
    }
}

#[test]
fn fermion_closed_spectrum_across_acceleration_grid() {
    // dense diagonalization against the closed-form set on a log-spaced grid
    for k in 0..50 {
        let a = 0.1 * (1000.0f64).powf(k as f64 / 49.0);
        let p = RindlerParams::new(a, 1.0).unwrap();
        let dense = eigvals_sym(&fermion_state(&p), EIG_TOL).unwrap();
        let mut closed = unruh_core::unruh::fermion_spectrum(&p).to_vec();
        closed.sort_by(|x, y| y.total_cmp(x));
        assert!(multiset_close(dense.values(), &closed, 1e-10), "a = {a}");
    }
}

#[test]
fn boson_measures_converge_in_truncation() {
    let p = RindlerParams::from_thermal_factor(0.8).unwrap();
    let n_max = choose_truncation(&p, 1e-10).unwrap();
    let conv = CoeffConvention::SqrtN;
    let pairs = [
        (
            boson_entropy(&p, n_max, conv).unwrap(),
            boson_entropy(&p, 2 * n_max, conv).unwrap(),
        ),
        (
            boson_log_negativity(&p, n_max, conv),
            boson_log_negativity(&p, 2 * n_max, conv),
        ),
        (
            boson_coherence(&p, n_max, conv).unwrap(),
            boson_coherence(&p, 2 * n_max, conv).unwrap(),
        ),
    ];
    for (base, doubled) in pairs {
        assert!((base - doubled).abs() <= 1e-8, "{base} vs {doubled}");
    }
}

#[test]
fn coherence_of_constructed_states_is_nonnegative() {
    for u in [0.0, 0.25, 0.6, 0.95] {
        let p = RindlerParams::from_thermal_factor(u).unwrap();
        assert!(coherence_rel_entropy(&fermion_state(&p)).unwrap() >= -1e-12);
        let m = boson_state_truncated(&p, 10, CoeffConvention::SqrtN).unwrap();
        assert!(coherence_rel_entropy(&m).unwrap() >= -1e-12);
        assert_eq!(
            coherence_rel_entropy(&m.diagonal_part()).unwrap(),
            0.0,
            "diagonal input must carry exactly zero coherence"
        );
    }
}

#[test]
fn entropy_rejects_indefinite_truncated_state() {
    // linear coupling makes blocks n >= 1 indefinite; the entropy path must
    // reject rather than clamp
    let p = RindlerParams::from_thermal_factor(0.5).unwrap();
    assert!(boson_entropy(&p, 5, CoeffConvention::LinearN).is_err());
    assert!(shannon_entropy_b2(
        &unruh_core::unruh::boson_spectrum_truncated(&p, 5, CoeffConvention::LinearN),
        PSD_TOL
    )
    .is_err());
}
