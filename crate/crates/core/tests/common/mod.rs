//! Shared seeded instance generation for the integration suites.

#![allow(dead_code)]

use rescomp_core::{
    random_contraction, random_spd, LinearMap, Matrix, SeededRng, SpdMatrix, SymMatrix,
};

/// One composition instance: a bounded-below map with norm at most one and
/// an SPD operand on its codomain.
pub struct Instance {
    pub l: LinearMap,
    pub b: SpdMatrix,
    pub gamma: f64,
}

/// Deterministic stream of instances with dims `n <= m <= 6`.
pub fn instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = SeededRng::new(seed);
    (0..count)
        .map(|_| {
            let n = 1 + (rng.next_u64() % 6) as usize;
            let m = n + (rng.next_u64() as usize % (7 - n));
            let cond = rng.uniform(1.0, 3.0);
            let cond = (10.0_f64).powf(cond) / 10.0; // spread up to 1e2
            let b = random_spd(m, cond.max(1.0), rng.next_u64()).unwrap();
            let norm = rng.uniform(0.3, 1.0);
            let l = loop {
                // keep the map itself well conditioned so the composite
                // operations stay inside the advertised tolerance budget
                let l = random_contraction(m, n, norm, &mut rng).unwrap();
                if l.sigma_min() >= 0.05 * l.sigma_max() {
                    break l;
                }
            };
            let gamma = 10.0_f64.powf(rng.uniform(-1.5, 1.5));
            Instance { l, b, gamma }
        })
        .collect()
}

/// An SPD pair with `A` below `B` in the Loewner order: `B = A + G'G`.
pub fn ordered_pair(dim: usize, rng: &mut SeededRng) -> (SpdMatrix, SpdMatrix) {
    let a = random_spd(dim, rng.uniform(1.0, 100.0), rng.next_u64()).unwrap();
    let g = rescomp_core::rand::random_normal_matrix(dim, dim, rng);
    let psd = g.transpose().mul(&g).unwrap().scale(rng.uniform(0.05, 0.5));
    let b = SymMatrix::from_matrix(&a.as_matrix().add(&psd).unwrap()).unwrap();
    (a.clone(), SpdMatrix::new(b).unwrap())
}

/// Spectral norm of the difference of two symmetric matrices.
pub fn spectral_gap(a: &SymMatrix, b: &SymMatrix) -> f64 {
    rescomp_core::operator_norm(&a.sub(b).unwrap()).unwrap()
}

/// Random SPD matrix of the given dimension with a seed drawn from `rng`.
pub fn spd_from(rng: &mut SeededRng, dim: usize, cond: f64) -> SpdMatrix {
    random_spd(dim, cond, rng.next_u64()).unwrap()
}

/// Well-conditioned random invertible matrix: orthogonal times a modest
/// diagonal.
pub fn invertible(dim: usize, rng: &mut SeededRng) -> Matrix {
    let q = rescomp_core::random_orthogonal(dim, rng);
    let mut out = q.clone();
    for j in 0..dim {
        let d = rng.uniform(0.5, 2.0);
        for i in 0..dim {
            out.set(i, j, q.get(i, j) * d);
        }
    }
    out
}
