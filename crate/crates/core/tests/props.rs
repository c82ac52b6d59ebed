//! Algebraic invariants under randomized inputs.

mod common;

use proptest::prelude::*;
use rescomp_core::{
    distance, random_spd, spd_inverse, spd_power, sym_eigen, weighted_geometric_mean, Matrix,
    SeededRng, SpdMatrix, SymMatrix,
};

#[test]
fn eigen_reconstruction_over_seeded_inputs() {
    let mut rng = SeededRng::new(0xE16E);
    for k in 0..100 {
        let dim = 1 + (rng.next_u64() % 8) as usize;
        let g = rescomp_core::rand::random_normal_matrix(dim, dim, &mut rng);
        let m = SymMatrix::from_matrix(&g.scale(rng.uniform(0.1, 10.0))).unwrap();
        let s = sym_eigen(&m).unwrap();

        let rebuilt = s.assemble(|x| x);
        let err = rebuilt.sub(m.as_matrix()).unwrap().frobenius_norm();
        let scale = m.frobenius_norm().max(1.0);
        assert!(err <= 1e-10 * scale, "reconstruction {err:e} on case {k}");

        let q = s.eigenvectors();
        let defect = q
            .transpose()
            .mul(q)
            .unwrap()
            .sub(&Matrix::identity(dim))
            .unwrap()
            .frobenius_norm();
        assert!(defect <= 1e-12 * dim as f64, "orthogonality {defect:e} on case {k}");

        let mut sorted = true;
        for w in s.eigenvalues().windows(2) {
            sorted &= w[0] <= w[1];
        }
        assert!(sorted, "eigenvalues not ascending on case {k}");
    }
}

fn arb_spd() -> impl Strategy<Value = SpdMatrix> {
    (1usize..=6, 1.0f64..500.0, any::<u64>())
        .prop_map(|(dim, cond, seed)| random_spd(dim, cond, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn power_composition_law(a in arb_spd(), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let chained = spd_power(&spd_power(&a, s).unwrap(), t).unwrap();
        let direct = spd_power(&a, s * t).unwrap();
        let gap = chained.base().sub(direct.base()).unwrap().frobenius_norm();
        let scale = direct.base().frobenius_norm();
        prop_assert!(gap <= 1e-9 * scale.max(1.0), "gap {gap:e} at scale {scale:e}");
    }

    #[test]
    fn negative_power_is_the_inverse(a in arb_spd()) {
        let p = spd_power(&a, -1.0).unwrap();
        let inv = spd_inverse(&a).unwrap();
        let gap = p.base().sub(inv.base()).unwrap().frobenius_norm();
        prop_assert!(gap <= 1e-9 * inv.base().frobenius_norm().max(1.0));
    }

    #[test]
    fn geometric_mean_interpolates_the_metric(a in arb_spd(), seed in any::<u64>()) {
        // d(A, A #_t B) <= t d(A, B): the one-sided contraction that makes
        // the curve a geodesic candidate
        let b = random_spd(a.dim(), 100.0, seed).unwrap();
        let t = 0.37;
        let mid = weighted_geometric_mean(&a, &b, t).unwrap();
        let d_ab = distance(&a, &b).unwrap();
        let d_am = distance(&a, &mid).unwrap();
        prop_assert!(d_am <= t * d_ab + 1e-9);
    }

    #[test]
    fn certified_bounds_match_the_spectrum(a in arb_spd()) {
        let s = sym_eigen(a.base()).unwrap();
        prop_assert!((s.lambda_min() - a.lambda_min()).abs() <= 1e-9 * a.lambda_max());
        prop_assert!((s.lambda_max() - a.lambda_max()).abs() <= 1e-9 * a.lambda_max());
    }
}
