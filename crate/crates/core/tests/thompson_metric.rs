//! Metric axioms, invariances, and nonexpansiveness for the Thompson
//! distance.

mod common;

use common::{instances, invertible, spd_from};
use rescomp_core::{
    block_diag, distance, resolvent_average, resolvent_cocomposition, resolvent_composition,
    resolvent_comixture, spd_inverse, spd_power, weighted_geometric_mean, MixtureSpec,
    MixtureTerm, SeededRng, SpdMatrix, SymMatrix,
};

#[test]
fn metric_axioms_on_random_triples() {
    let mut rng = SeededRng::new(0x7A0);
    for k in 0..200 {
        let dim = 1 + (rng.next_u64() % 6) as usize;
        let a = spd_from(&mut rng, dim, 100.0);
        let b = spd_from(&mut rng, dim, 100.0);
        let c = spd_from(&mut rng, dim, 100.0);

        let d_ab = distance(&a, &b).unwrap();
        let d_ba = distance(&b, &a).unwrap();
        assert!(d_ab >= 0.0);
        assert!((d_ab - d_ba).abs() <= 1e-10, "symmetry failed on {k}");
        assert!(distance(&a, &a).unwrap() <= 1e-9, "identity failed on {k}");

        let d_ac = distance(&a, &c).unwrap();
        let d_cb = distance(&c, &b).unwrap();
        assert!(
            d_ab <= d_ac + d_cb + 1e-9,
            "triangle inequality failed on {k}: {d_ab} > {d_ac} + {d_cb}"
        );
    }
}

#[test]
fn inversion_and_congruence_invariance() {
    let mut rng = SeededRng::new(0x7A1);
    for k in 0..200 {
        let dim = 1 + (rng.next_u64() % 6) as usize;
        let a = spd_from(&mut rng, dim, 100.0);
        let b = spd_from(&mut rng, dim, 100.0);
        let d = distance(&a, &b).unwrap();

        let d_inv = distance(&spd_inverse(&a).unwrap(), &spd_inverse(&b).unwrap()).unwrap();
        assert!((d - d_inv).abs() <= 1e-9, "inversion invariance failed on {k}");

        let m = invertible(dim, &mut rng);
        let push = |x: &SpdMatrix| {
            SpdMatrix::new(
                SymMatrix::from_matrix(
                    &m.transpose().mul(x.as_matrix()).unwrap().mul(&m).unwrap(),
                )
                .unwrap(),
            )
            .unwrap()
        };
        let d_cong = distance(&push(&a), &push(&b)).unwrap();
        assert!(
            (d - d_cong).abs() <= 1e-8,
            "congruence invariance failed on {k}: {d} vs {d_cong}"
        );
    }
}

#[test]
fn power_contraction() {
    let mut rng = SeededRng::new(0x7A2);
    for k in 0..200 {
        let dim = 1 + (rng.next_u64() % 6) as usize;
        let x = spd_from(&mut rng, dim, 100.0);
        let y = spd_from(&mut rng, dim, 100.0);
        let t = rng.uniform(-0.99, 0.99);
        let d = distance(&x, &y).unwrap();
        let d_pow = distance(&spd_power(&x, t).unwrap(), &spd_power(&y, t).unwrap()).unwrap();
        assert!(
            d_pow <= t.abs() * d + 1e-9,
            "power contraction failed on {k}: {d_pow} > |{t}| * {d}"
        );
    }
}

#[test]
fn geodesic_contractions() {
    let mut rng = SeededRng::new(0x7A3);
    for k in 0..200 {
        let dim = 1 + (rng.next_u64() % 6) as usize;
        let x = spd_from(&mut rng, dim, 100.0);
        let y = spd_from(&mut rng, dim, 100.0);
        let b = spd_from(&mut rng, dim, 100.0);
        let t = rng.uniform(0.0, 1.0);

        // joint contraction in the left argument
        let d = distance(&x, &y).unwrap();
        let d_geo = distance(
            &weighted_geometric_mean(&x, &b, t).unwrap(),
            &weighted_geometric_mean(&y, &b, t).unwrap(),
        )
        .unwrap();
        assert!(
            d_geo <= (1.0 - t) * d + 1e-9,
            "joint geodesic contraction failed on {k}"
        );

        // two-sided contraction along the curve parameter
        let s = rng.uniform(0.0, 1.0);
        let d_param = distance(
            &weighted_geometric_mean(&x, &b, s).unwrap(),
            &weighted_geometric_mean(&x, &b, t).unwrap(),
        )
        .unwrap();
        let d_xb = distance(&x, &b).unwrap();
        assert!(
            d_param <= (s - t).abs() * d_xb + 1e-9,
            "curve parameter contraction failed on {k}"
        );
    }
}

#[test]
fn midpoint_mean_is_symmetric() {
    let mut rng = SeededRng::new(0x7A4);
    for k in 0..100 {
        let dim = 1 + (rng.next_u64() % 6) as usize;
        let a = spd_from(&mut rng, dim, 100.0);
        let b = spd_from(&mut rng, dim, 100.0);
        let ab = weighted_geometric_mean(&a, &b, 0.5).unwrap();
        let ba = weighted_geometric_mean(&b, &a, 0.5).unwrap();
        let gap = ab.base().sub(ba.base()).unwrap().frobenius_norm();
        assert!(
            gap <= 1e-9 * ab.base().frobenius_norm().max(1.0),
            "midpoint symmetry failed on {k}: {gap}"
        );
    }
}

#[test]
fn compositions_are_nonexpansive() {
    for (k, inst) in instances(200, 0x7A5).iter().enumerate() {
        let mut rng = SeededRng::new(k as u64 + 0x100);
        let a = spd_from(&mut rng, inst.b.dim(), 100.0);
        let d = distance(&a, &inst.b).unwrap();

        let coco_a =
            SpdMatrix::new(resolvent_cocomposition(&inst.l, &a, inst.gamma).unwrap()).unwrap();
        let coco_b =
            SpdMatrix::new(resolvent_cocomposition(&inst.l, &inst.b, inst.gamma).unwrap())
                .unwrap();
        let d_coco = distance(&coco_a, &coco_b).unwrap();
        assert!(
            d_coco <= d + 1e-9,
            "cocomposition expansion on {k}: {d_coco} > {d}"
        );

        let comp_a = resolvent_composition(&inst.l, &a, inst.gamma).unwrap();
        let comp_b = resolvent_composition(&inst.l, &inst.b, inst.gamma).unwrap();
        let d_comp = distance(&comp_a, &comp_b).unwrap();
        assert!(
            d_comp <= d + 1e-9,
            "composition expansion on {k}: {d_comp} > {d}"
        );
    }
}

#[test]
fn block_metric_and_mixture_nonexpansiveness() {
    let mut rng = SeededRng::new(0x7A6);
    for k in 0..100 {
        let n = 1 + (rng.next_u64() % 3) as usize;
        let p = 2 + (rng.next_u64() % 2) as usize;
        let mut weights = vec![0.0; p];
        let mut total = 0.0;
        for w in weights.iter_mut() {
            *w = rng.uniform(0.2, 1.0);
            total += *w;
        }
        for w in weights.iter_mut() {
            *w /= total;
        }
        let mut terms = Vec::new();
        let mut alt_operands = Vec::new();
        for &w in &weights {
            let m = n + (rng.next_u64() as usize % 2);
            let l = loop {
                let l =
                    rescomp_core::random_contraction(m, n, rng.uniform(0.4, 1.0), &mut rng)
                        .unwrap();
                if l.sigma_min() >= 0.05 * l.sigma_max() {
                    break l;
                }
            };
            terms.push(MixtureTerm {
                map: l,
                operand: spd_from(&mut rng, m, 100.0),
                weight: w,
            });
            alt_operands.push(spd_from(&mut rng, m, 100.0));
        }
        let spec_b = MixtureSpec::new(terms).unwrap();
        let spec_a = spec_b.with_operands(alt_operands.clone()).unwrap();

        // the distance between the block operands is the max over blocks
        let blocks_b = spec_b.block_operand().unwrap();
        let alt_refs: Vec<&SpdMatrix> = alt_operands.iter().collect();
        let blocks_a = block_diag(&alt_refs).unwrap();
        let d_blocks = distance(&blocks_a, &blocks_b).unwrap();
        let d_max = spec_b
            .terms()
            .iter()
            .zip(&alt_operands)
            .map(|(t, a)| distance(a, &t.operand).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            (d_blocks - d_max).abs() <= 1e-10,
            "block metric mismatch on {k}: {d_blocks} vs {d_max}"
        );

        // the comixture and mixture contract against that max
        let gamma = 10.0_f64.powf(rng.uniform(-1.0, 1.0));
        let comix_a = SpdMatrix::new(resolvent_comixture(&spec_a, gamma).unwrap()).unwrap();
        let comix_b = SpdMatrix::new(resolvent_comixture(&spec_b, gamma).unwrap()).unwrap();
        assert!(
            distance(&comix_a, &comix_b).unwrap() <= d_max + 1e-9,
            "comixture expansion on {k}"
        );
        let mix_a = rescomp_core::resolvent_mixture(&spec_a, gamma).unwrap();
        let mix_b = rescomp_core::resolvent_mixture(&spec_b, gamma).unwrap();
        assert!(
            distance(&mix_a, &mix_b).unwrap() <= d_max + 1e-9,
            "mixture expansion on {k}"
        );
    }
}

#[test]
fn resolvent_average_is_nonexpansive() {
    let mut rng = SeededRng::new(0x7A7);
    for k in 0..100 {
        let dim = 1 + (rng.next_u64() % 4) as usize;
        let p = 2 + (rng.next_u64() % 3) as usize;
        let mut weights = vec![0.0; p];
        let mut total = 0.0;
        for w in weights.iter_mut() {
            *w = rng.uniform(0.2, 1.0);
            total += *w;
        }
        for w in weights.iter_mut() {
            *w /= total;
        }
        let a: Vec<SpdMatrix> = (0..p).map(|_| spd_from(&mut rng, dim, 100.0)).collect();
        let b: Vec<SpdMatrix> = (0..p).map(|_| spd_from(&mut rng, dim, 100.0)).collect();
        let gamma = 10.0_f64.powf(rng.uniform(-1.0, 1.0));

        let rav_a = resolvent_average(&a, &weights, gamma).unwrap();
        let rav_b = resolvent_average(&b, &weights, gamma).unwrap();
        let d_max = a
            .iter()
            .zip(&b)
            .map(|(x, y)| distance(x, y).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            distance(&rav_a, &rav_b).unwrap() <= d_max + 1e-9,
            "average expansion on {k}"
        );
    }
}
