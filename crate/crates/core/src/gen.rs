//! Seeded random instances for the verification suite and property tests.
//!
//! Polytopes are bounded by construction (a box plus random cuts through the
//! origin's side), so vertex enumeration and brute-force LP oracles always
//! apply. All generation is deterministic from the seed.

use crate::bridge::GraphL;
use crate::matrix::RatMatrix;
use crate::poly::{HPolyhedron, LinRow};
use crate::rat::Rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A bounded polytope: the box `-5 <= x_i <= 5` plus `extra` random rows
/// `a · x <= b` with small integer coefficients and `b >= 0`, so the origin
/// stays feasible and the set stays full of vertices.
pub fn random_bounded_hpoly(rng: &mut ChaCha8Rng, dim: usize, extra: usize) -> HPolyhedron {
    let mut rows = Vec::with_capacity(2 * dim + extra);
    for i in 0..dim {
        let mut lo = vec![Rat::zero(); dim];
        lo[i] = Rat::from_int(-1);
        rows.push(LinRow::le(lo, Rat::from_int(5)));
        let mut hi = vec![Rat::zero(); dim];
        hi[i] = Rat::one();
        rows.push(LinRow::le(hi, Rat::from_int(5)));
    }
    for _ in 0..extra {
        let coeffs: Vec<Rat> = (0..dim)
            .map(|_| Rat::from_int(rng.random_range(-3..=3)))
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let rhs = Rat::from_int(rng.random_range(0..=8));
        rows.push(LinRow::le(coeffs, rhs));
    }
    HPolyhedron::new(dim, rows).expect("generated rows are rectangular")
}

pub fn random_objective(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    (0..dim)
        .map(|_| Rat::from_int(rng.random_range(-5..=5)))
        .collect()
}

/// A random square matrix with small integer entries, resampled until it is
/// invertible.
pub fn random_invertible_matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_rows(
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| Rat::from_int(rng.random_range(-3..=3)))
                        .collect()
                })
                .collect(),
        )
        .expect("square rows");
        if m.rank() == n {
            return m;
        }
    }
}

/// A constructed equivalence instance: a bounded y-polytope, an invertible
/// affine image of it as the x-polytope, the coupling relation
/// `x - M y = m`, and a random objective over x.
pub struct BridgeInstance {
    pub x_set: HPolyhedron,
    pub y_set: HPolyhedron,
    pub relation: GraphL,
    pub objective: Vec<Rat>,
}

pub fn random_bridge_instance(rng: &mut ChaCha8Rng, max_dim: usize) -> BridgeInstance {
    let dim = rng.random_range(1..=max_dim);
    let extra = rng.random_range(0..=2);
    let y_set = random_bounded_hpoly(rng, dim, extra);
    let map = random_invertible_matrix(rng, dim);
    let map_inv = map.inverse().expect("sampled invertible");
    let offset: Vec<Rat> = (0..dim)
        .map(|_| Rat::from_int(rng.random_range(-5..=5)))
        .collect();
    // x = M y + m maps each y-row a · y <= b to (a M^-1) x <= b + a M^-1 m.
    let x_rows = y_set
        .rows
        .iter()
        .map(|row| {
            let a_minv: Vec<Rat> = (0..dim)
                .map(|j| (0..dim).map(|k| &row.coeffs[k] * &map_inv[(k, j)]).sum())
                .collect();
            let shift: Rat = a_minv.iter().zip(&offset).map(|(c, o)| c * o).sum();
            LinRow {
                coeffs: a_minv,
                rel: row.rel,
                rhs: &row.rhs + &shift,
            }
        })
        .collect();
    let x_set = HPolyhedron::new(dim, x_rows).expect("transformed rows are rectangular");
    let relation = GraphL::new(
        RatMatrix::identity(dim),
        map.scale(&Rat::from_int(-1)),
        offset,
    )
    .expect("identity block matches map rows");
    let objective = random_objective(rng, dim);
    BridgeInstance {
        x_set,
        y_set,
        relation,
        objective,
    }
}
