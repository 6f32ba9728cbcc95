//! Cross-module invariants: scalar algebra under proptest, and seeded
//! structural properties of the geometric kernel (enumeration round trips,
//! projection soundness, oracle agreement, bijection and bridge exactness).

use exactpoly::bridge::{apply_bridge, derive_bridge, verify_theorem2, GraphL};
use exactpoly::checks::definitions_agree;
use exactpoly::ef::{
    fit_linear_map, image_under_map, is_ef_linear_map, is_ef_standard, lift_feasible, LinearMap,
};
use exactpoly::fixtures;
use exactpoly::fm::{fourier_motzkin, project_v};
use exactpoly::gen::{
    random_bounded_hpoly, random_bridge_instance, random_invertible_matrix, rng_from_seed,
};
use exactpoly::matrix::{gram_inverse, solve_linear, GramInverse, LinSolve, RatMatrix};
use exactpoly::poly::{
    enumerate_generators, polyhedra_equal, remove_redundancy, HPolyhedron, LinRow, Polyhedron, Rel,
    VPolyhedron,
};
use exactpoly::rat::{dot, ivec, Rat};
use exactpoly::simplex::{simplex_solve, LpOutcome, LpSense};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn rational_construction_is_canonical(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rat::new(n, d);
        // Re-normalizing the stored pair changes nothing.
        let again = Rat::ratio(r.numer().clone(), r.denom().clone());
        prop_assert_eq!(&again, &r);
        prop_assert!(r.denom() > &num_bigint::BigInt::from(0));
    }

    #[test]
    fn rational_add_neg_cancels(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rat::new(n, d);
        prop_assert!((&r + &(-&r)).is_zero());
    }

    #[test]
    fn rational_display_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rat::new(n, d);
        let back: Rat = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn decimal_literals_parse_exactly(int_part in -999i64..999, frac in 0u32..999) {
        let text = format!("{int_part}.{frac:03}");
        let parsed: Rat = text.parse().unwrap();
        let sign = if int_part < 0 { -1 } else { 1 };
        let expected = Rat::new(int_part * 1000 + sign * frac as i64, 1000);
        prop_assert_eq!(parsed, expected);
    }
}

#[test]
fn gram_inverse_multiplies_back_to_identity() {
    let mut rng = rng_from_seed(101);
    for n in 1..=4 {
        for _ in 0..5 {
            let b = random_invertible_matrix(&mut rng, n);
            let GramInverse::Inverse(inv) = gram_inverse(&b) else {
                panic!("invertible matrices have nonsingular Gram matrices")
            };
            let gram = b.transpose().mul(&b).unwrap();
            assert_eq!(inv.mul(&gram).unwrap(), RatMatrix::identity(n));
        }
    }
}

#[test]
fn unique_solutions_substitute_back() {
    let mut rng = rng_from_seed(202);
    for n in 1..=4 {
        for _ in 0..5 {
            let a = random_invertible_matrix(&mut rng, n);
            let x: Vec<Rat> = (0..n)
                .map(|_| Rat::from_int(rng.random_range(-9..=9)))
                .collect();
            let rhs = a.mul_vec(&x).unwrap();
            match solve_linear(&a, &rhs).unwrap() {
                LinSolve::Unique(sol) => {
                    assert_eq!(sol, x);
                    assert_eq!(a.mul_vec(&sol).unwrap(), rhs);
                }
                other => panic!("invertible system must be unique, got {other:?}"),
            }
        }
    }
}

/// Vertices of an enumeration satisfy all rows and have a full-rank active
/// set, and the enumeration round trip preserves the set.
#[test]
fn enumeration_round_trip_and_vertex_rank() {
    let mut rng = rng_from_seed(303);
    for case in 0..10 {
        let dim = 1 + case % 4;
        let h = random_bounded_hpoly(&mut rng, dim, 1 + case % 3);
        let v = enumerate_generators(&h).expect_vpoly("bounded polytope");
        for vertex in &v.vertices {
            assert!(h.contains(vertex).unwrap());
            let active: Vec<Vec<Rat>> = h
                .rows
                .iter()
                .filter(|row| dot(&row.coeffs, vertex) == row.rhs)
                .map(|row| row.coeffs.clone())
                .collect();
            let rank = RatMatrix::from_rows(active).unwrap().rank();
            assert!(
                rank >= dim,
                "vertex {vertex:?} has active rank {rank} < {dim}"
            );
        }
        assert!(polyhedra_equal(&Polyhedron::H(h), &Polyhedron::V(v)).unwrap());
    }
}

/// Minimization keeps the set and leaves nothing droppable.
#[test]
fn redundancy_removal_is_minimal() {
    let mut rng = rng_from_seed(404);
    for case in 0..6 {
        let dim = 1 + case % 3;
        let h = random_bounded_hpoly(&mut rng, dim, 2);
        let minimal = remove_redundancy(&h).unwrap();
        assert!(
            polyhedra_equal(&Polyhedron::H(h.clone()), &Polyhedron::H(minimal.clone())).unwrap()
        );
        for i in 0..minimal.rows.len() {
            let mut rest = minimal.clone();
            let row = rest.rows.remove(i);
            // Dropping any surviving row strictly enlarges the set.
            let grows = match row.rel {
                Rel::Le => match simplex_solve(&rest, &row.coeffs, LpSense::Max).unwrap() {
                    LpOutcome::Optimal { value, .. } => value > row.rhs,
                    LpOutcome::Unbounded => true,
                    LpOutcome::Infeasible => false,
                },
                Rel::Eq => {
                    let max = simplex_solve(&rest, &row.coeffs, LpSense::Max).unwrap();
                    let min = simplex_solve(&rest, &row.coeffs, LpSense::Min).unwrap();
                    let max_loose = match max {
                        LpOutcome::Optimal { value, .. } => value > row.rhs,
                        LpOutcome::Unbounded => true,
                        LpOutcome::Infeasible => false,
                    };
                    let min_loose = match min {
                        LpOutcome::Optimal { value, .. } => value < row.rhs,
                        LpOutcome::Unbounded => true,
                        LpOutcome::Infeasible => false,
                    };
                    max_loose || min_loose
                }
            };
            assert!(grows, "row {i} of the minimal system is still droppable");
        }
    }
}

/// The two membership routes agree on a spread of points.
#[test]
fn membership_routes_agree() {
    let mut rng = rng_from_seed(505);
    for case in 0..4 {
        let dim = 1 + case % 3;
        let h = random_bounded_hpoly(&mut rng, dim, 2);
        let v = enumerate_generators(&h).expect_vpoly("bounded polytope");
        for _ in 0..100 {
            let point: Vec<Rat> = (0..dim)
                .map(|_| Rat::new(rng.random_range(-12..=12), rng.random_range(1..=3)))
                .collect();
            assert_eq!(
                h.contains(&point).unwrap(),
                v.contains(&point).unwrap(),
                "membership routes disagree at {point:?}"
            );
        }
    }
}

/// Unbounded and equality-laden systems: enumeration produces generators
/// that are feasible (vertices, rays, lineality checked against the rows),
/// and the two membership routes agree on random points.
#[test]
fn membership_routes_agree_on_general_systems() {
    let mut rng = rng_from_seed(1001);
    for case in 0..15 {
        let dim = 1 + case % 4;
        let mut rows: Vec<LinRow> = Vec::new();
        for i in 0..dim {
            if rng.random_bool(0.6) {
                let mut c = vec![Rat::zero(); dim];
                c[i] = Rat::from_int(-1);
                rows.push(LinRow::le(c, Rat::from_int(rng.random_range(0..=5))));
            }
            if rng.random_bool(0.6) {
                let mut c = vec![Rat::zero(); dim];
                c[i] = Rat::one();
                rows.push(LinRow::le(c, Rat::from_int(rng.random_range(0..=5))));
            }
        }
        for _ in 0..rng.random_range(0..=2) {
            let coeffs: Vec<Rat> = (0..dim)
                .map(|_| Rat::from_int(rng.random_range(-2..=2)))
                .collect();
            if coeffs.iter().all(|c| c.is_zero()) {
                continue;
            }
            rows.push(LinRow::le(coeffs, Rat::from_int(rng.random_range(-1..=6))));
        }
        if rng.random_bool(0.5) {
            let coeffs: Vec<Rat> = (0..dim)
                .map(|_| Rat::from_int(rng.random_range(-2..=2)))
                .collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                rows.push(LinRow::eq(coeffs, Rat::from_int(rng.random_range(-2..=2))));
            }
        }
        let h = HPolyhedron::new(dim, rows).unwrap();
        match enumerate_generators(&h) {
            exactpoly::poly::Generators::Empty { .. } => {
                assert!(
                    exactpoly::simplex::feasible_point(&h).is_none(),
                    "case {case}: enumeration says empty, LP disagrees"
                );
            }
            exactpoly::poly::Generators::NonEmpty(v) => {
                assert!(exactpoly::simplex::feasible_point(&h).is_some());
                for vertex in &v.vertices {
                    assert!(h.contains(vertex).unwrap(), "case {case}: infeasible vertex");
                }
                for ray in &v.rays {
                    assert!(h.recession_contains(ray).unwrap(), "case {case}: bad ray");
                }
                for line in &v.lineality {
                    let neg: Vec<Rat> = line.iter().map(|e| -e).collect();
                    assert!(h.recession_contains(line).unwrap());
                    assert!(h.recession_contains(&neg).unwrap(), "case {case}: bad lineality");
                }
                for _ in 0..50 {
                    let point: Vec<Rat> = (0..dim)
                        .map(|_| Rat::new(rng.random_range(-10..=10), rng.random_range(1..=2)))
                        .collect();
                    assert_eq!(
                        h.contains(&point).unwrap(),
                        v.contains(&point).unwrap(),
                        "case {case}: membership routes disagree at {point:?}"
                    );
                }
            }
        }
    }
}

/// A point lifts into the original system exactly when it lies in the
/// Fourier-Motzkin projection.
#[test]
fn projection_soundness() {
    let mut rng = rng_from_seed(606);
    for case in 0..8 {
        let dim = 2 + case % 3;
        let mut h = random_bounded_hpoly(&mut rng, dim, 2);
        if case % 2 == 1 {
            // Mix an equality through the instance to exercise substitution.
            let coeffs: Vec<Rat> = (0..dim)
                .map(|_| Rat::from_int(rng.random_range(-2..=2)))
                .collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                h.rows.push(LinRow::eq(coeffs, Rat::from_int(rng.random_range(-2..=2))));
            }
        }
        let keep: Vec<usize> = (0..dim.div_ceil(2)).collect();
        let proj = fourier_motzkin(&h, &keep).unwrap();
        for _ in 0..100 {
            let point: Vec<Rat> = (0..keep.len())
                .map(|_| Rat::new(rng.random_range(-12..=12), rng.random_range(1..=2)))
                .collect();
            let lifts = lift_feasible(&h, &keep, &point).unwrap();
            let in_projection = proj.contains(&point).unwrap();
            assert_eq!(
                lifts, in_projection,
                "lift/projection disagree at {point:?}"
            );
        }
    }
}

/// Row-side and generator-side projection define the same set, on the
/// fixtures and on random instances.
#[test]
fn projection_routes_agree() {
    let q = fixtures::lifted_q_hrep();
    let v = enumerate_generators(&q).expect_vpoly("interval lift");
    let row_side = fourier_motzkin(&q, &[0, 1, 2]).unwrap();
    let gen_side = project_v(&v, &[0, 1, 2]).unwrap();
    assert!(polyhedra_equal(&Polyhedron::H(row_side), &Polyhedron::V(gen_side)).unwrap());

    let mut rng = rng_from_seed(707);
    for case in 0..6 {
        let dim = 2 + case % 4;
        let h = random_bounded_hpoly(&mut rng, dim, 2);
        let v = enumerate_generators(&h).expect_vpoly("bounded");
        let keep: Vec<usize> = (0..dim).step_by(2).collect();
        let a = fourier_motzkin(&h, &keep).unwrap();
        let b = project_v(&v, &keep).unwrap();
        assert!(polyhedra_equal(&Polyhedron::H(a), &Polyhedron::V(b)).unwrap());
    }
}

/// The classic cycling instance: Bland's rule terminates and the optimum
/// matches the vertex-scan oracle.
#[test]
fn cycling_instance_terminates() {
    let rows = vec![
        LinRow::le(
            vec![
                Rat::new(1, 4),
                Rat::from_int(-60),
                Rat::new(-1, 25),
                Rat::from_int(9),
            ],
            Rat::zero(),
        ),
        LinRow::le(
            vec![
                Rat::new(1, 2),
                Rat::from_int(-90),
                Rat::new(-1, 50),
                Rat::from_int(3),
            ],
            Rat::zero(),
        ),
        LinRow::le(ivec(&[0, 0, 1, 0]), Rat::one()),
        LinRow::le(ivec(&[-1, 0, 0, 0]), Rat::zero()),
        LinRow::le(ivec(&[0, -1, 0, 0]), Rat::zero()),
        LinRow::le(ivec(&[0, 0, -1, 0]), Rat::zero()),
        LinRow::le(ivec(&[0, 0, 0, -1]), Rat::zero()),
    ];
    let h = HPolyhedron::new(4, rows).unwrap();
    let objective = vec![
        Rat::new(-3, 4),
        Rat::from_int(150),
        Rat::new(-1, 50),
        Rat::from_int(6),
    ];
    let outcome = simplex_solve(&h, &objective, LpSense::Min).unwrap();
    let LpOutcome::Optimal { value, point } = outcome else {
        panic!("the cycling instance has a finite optimum")
    };
    assert_eq!(value, Rat::new(-1, 20));
    assert!(h.contains(&point).unwrap());

    // Independent vertex-scan oracle (the region is pointed; rays certify
    // the objective stays bounded).
    let v = enumerate_generators(&h).expect_vpoly("pointed region");
    for ray in &v.rays {
        assert!(!dot(&objective, ray).is_negative());
    }
    let brute = v.vertices.iter().map(|x| dot(&objective, x)).min().unwrap();
    assert_eq!(value, brute);
}

/// The standard and lift-based definitions agree on every test pair.
#[test]
fn extension_definitions_agree() {
    let q = fixtures::lifted_q_hrep();
    let segment = Polyhedron::V(fixtures::segment_p_vrep());
    let space = Polyhedron::H(HPolyhedron::space(3));
    assert!(definitions_agree(&q, &segment, &[0, 1, 2]).unwrap());
    assert!(definitions_agree(&q, &space, &[0, 1, 2]).unwrap());

    let graph = HPolyhedron::new(
        2,
        vec![
            LinRow::eq(ivec(&[1, -1]), Rat::zero()),
            LinRow::le(ivec(&[0, -1]), Rat::zero()),
            LinRow::le(ivec(&[0, 1]), Rat::one()),
        ],
    )
    .unwrap();
    let unit =
        Polyhedron::V(VPolyhedron::new(1, vec![ivec(&[0]), ivec(&[1])], vec![], vec![]).unwrap());
    let longer =
        Polyhedron::V(VPolyhedron::new(1, vec![ivec(&[0]), ivec(&[2])], vec![], vec![]).unwrap());
    assert!(definitions_agree(&graph, &unit, &[0]).unwrap());
    assert!(definitions_agree(&graph, &longer, &[0]).unwrap());

    let mut rng = rng_from_seed(808);
    for case in 0..5 {
        let dim = 2 + case % 2;
        let h = random_bounded_hpoly(&mut rng, dim, 2);
        let keep: Vec<usize> = (0..dim - 1).collect();
        // The projection itself: both definitions must accept.
        let proj = Polyhedron::H(fourier_motzkin(&h, &keep).unwrap());
        assert!(is_ef_standard(&h, &proj, &keep).unwrap().holds);
        assert!(definitions_agree(&h, &proj, &keep).unwrap());
        // A perturbed target: verdicts may go either way but must agree.
        let shrunk = {
            let mut rows = match &proj {
                Polyhedron::H(p) => p.rows.clone(),
                Polyhedron::V(_) => unreachable!(),
            };
            let mut coeffs = vec![Rat::zero(); keep.len()];
            coeffs[0] = Rat::one();
            rows.push(LinRow::le(coeffs, Rat::from_int(2)));
            Polyhedron::H(HPolyhedron::new(keep.len(), rows).unwrap())
        };
        assert!(definitions_agree(&h, &shrunk, &keep).unwrap());
    }
}

/// All three parts of the counting refutation hold simultaneously.
#[test]
fn counting_refutation_triple() {
    let q = fixtures::lifted_q_hrep();
    let p = Polyhedron::V(fixtures::segment_p_vrep());
    let map_holds = is_ef_linear_map(&Polyhedron::H(q.clone()), &p, &fixtures::projection_map())
        .unwrap()
        .holds;
    let standard_holds = is_ef_standard(&q, &p, &[0, 1, 2]).unwrap().holds;
    let q_rows = remove_redundancy(&q).unwrap().rows.len();
    let p_rows = fixtures::segment_p_hrep().rows.len();
    assert!(map_holds && !standard_holds && q_rows < p_rows);
    assert_eq!((q_rows, p_rows), (2, 9));
}

/// Mapping the midpoint equals the midpoint of the images.
#[test]
fn linear_maps_commute_with_midpoints() {
    let mut rng = rng_from_seed(909);
    for _ in 0..20 {
        let rows: Vec<Vec<Rat>> = (0..3)
            .map(|_| {
                (0..4)
                    .map(|_| Rat::from_int(rng.random_range(-5..=5)))
                    .collect()
            })
            .collect();
        let map = LinearMap::linear(RatMatrix::from_rows(rows).unwrap());
        let a: Vec<Rat> = (0..4)
            .map(|_| Rat::from_int(rng.random_range(-9..=9)))
            .collect();
        let b: Vec<Rat> = (0..4)
            .map(|_| Rat::from_int(rng.random_range(-9..=9)))
            .collect();
        let half = Rat::new(1, 2);
        let mid: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| (x + y) * &half).collect();
        let image_mid = map.apply(&mid).unwrap();
        let mid_images: Vec<Rat> = map
            .apply(&a)
            .unwrap()
            .iter()
            .zip(&map.apply(&b).unwrap())
            .map(|(x, y)| (x + y) * &half)
            .collect();
        assert_eq!(image_mid, mid_images);
    }
}

/// Whatever map the fit returns reproduces every input pair exactly.
#[test]
fn fitted_maps_reproduce_their_pairs() {
    let mut rng = rng_from_seed(111);
    for _ in 0..10 {
        let truth = {
            let rows: Vec<Vec<Rat>> = (0..2)
                .map(|_| {
                    (0..3)
                        .map(|_| Rat::from_int(rng.random_range(-4..=4)))
                        .collect()
                })
                .collect();
            LinearMap::linear(RatMatrix::from_rows(rows).unwrap())
        };
        let pairs: Vec<(Vec<Rat>, Vec<Rat>)> = (0..4)
            .map(|_| {
                let s: Vec<Rat> = (0..3)
                    .map(|_| Rat::from_int(rng.random_range(-6..=6)))
                    .collect();
                let t = truth.apply(&s).unwrap();
                (s, t)
            })
            .collect();
        let fitted = fit_linear_map(&pairs)
            .unwrap()
            .expect("consistent by construction");
        for (s, t) in &pairs {
            assert_eq!(&fitted.apply(s).unwrap(), t);
        }
    }
}

/// Tour round trips up to seven cities (720 tours), and distinct tours have
/// distinct travel-leg vectors.
#[test]
fn tour_round_trips_and_leg_injectivity() {
    for n in 2..=7 {
        let tours = exactpoly::tsp::enumerate_tours(n).unwrap();
        for t in &tours {
            assert_eq!(
                exactpoly::tsp::assignment_to_tour(&exactpoly::tsp::tour_to_assignment(t)),
                *t
            );
        }
        let mut legs: Vec<Vec<Rat>> = tours
            .iter()
            .map(|t| exactpoly::tsp::tour_to_tl_vector(t).to_point())
            .collect();
        let before = legs.len();
        legs.sort();
        legs.dedup();
        assert_eq!(legs.len(), before, "travel-leg vectors collide for n={n}");
    }
}

/// Every enumerated vertex of the assignment polytope is integral.
#[test]
fn assignment_polytope_vertices_are_integral() {
    for n in 2..=5 {
        let h = exactpoly::tsp::build_ap_hrep(n).unwrap();
        let v = enumerate_generators(&h).expect_vpoly("assignment polytope");
        for vertex in &v.vertices {
            assert!(vertex.iter().all(|e| e.is_integer()));
            assert!(exactpoly::tsp::AssignmentMatrix::try_from_point(n, vertex).is_ok());
        }
    }
}

fn random_graph_relation(rng: &mut ChaCha8Rng, p: usize, q: usize) -> GraphL {
    let b = random_invertible_matrix(rng, p);
    let c = RatMatrix::from_rows(
        (0..p)
            .map(|_| {
                (0..q)
                    .map(|_| Rat::from_int(rng.random_range(-4..=4)))
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    let rhs: Vec<Rat> = (0..p)
        .map(|_| Rat::from_int(rng.random_range(-6..=6)))
        .collect();
    GraphL::new(b, c, rhs).unwrap()
}

/// The derived bridge satisfies the relation identically in y.
#[test]
fn bridge_satisfies_relation() {
    let mut rng = rng_from_seed(121);
    for _ in 0..5 {
        let p = rng.random_range(1..=4);
        let q = rng.random_range(1..=4);
        let l = random_graph_relation(&mut rng, p, q);
        let bridge = derive_bridge(&l).expect_bridge("invertible x-block");
        for _ in 0..20 {
            let y: Vec<Rat> = (0..q)
                .map(|_| Rat::from_int(rng.random_range(-9..=9)))
                .collect();
            let x = apply_bridge(&bridge, &y).unwrap();
            let lhs: Vec<Rat> = l
                .x_coeffs
                .mul_vec(&x)
                .unwrap()
                .iter()
                .zip(&l.y_coeffs.mul_vec(&y).unwrap())
                .map(|(a, b)| a + b)
                .collect();
            assert_eq!(lhs, l.rhs);
        }
    }
}

/// Two-step equals direct on 50 constructed instances (distinct seed from
/// the verification suite's run).
#[test]
fn two_step_equivalence_on_seeded_instances() {
    let mut rng = rng_from_seed(131);
    for k in 0..50 {
        let inst = random_bridge_instance(&mut rng, 5);
        let outcome =
            verify_theorem2(&inst.x_set, &inst.y_set, &inst.relation, &inst.objective).unwrap();
        assert!(outcome.verified(), "instance {k} failed: {outcome:?}");
    }
}

/// With a full-column-rank bridge the y-vertices map to distinct x-points.
#[test]
fn bridge_is_injective_on_vertices() {
    let mut rng = rng_from_seed(141);
    for _ in 0..5 {
        let inst = random_bridge_instance(&mut rng, 4);
        let bridge = derive_bridge(&inst.relation).expect_bridge("constructed instances");
        assert_eq!(bridge.map.rank(), bridge.map.cols());
        let v = enumerate_generators(&inst.y_set).expect_vpoly("bounded y-set");
        let mut images: Vec<Vec<Rat>> = v
            .vertices
            .iter()
            .map(|y| apply_bridge(&bridge, y).unwrap())
            .collect();
        let before = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), before);
    }
}

/// Canonicalization preserves the set and is idempotent on arbitrary
/// generator soups (redundant vertices, dependent rays, hidden lineality).
#[test]
fn canonicalization_preserves_sets() {
    let mut rng = rng_from_seed(13_579);
    for case in 0..50 {
        let dim = 1 + case % 4;
        let mut sample = |n: usize| -> Vec<Vec<Rat>> {
            (0..n)
                .map(|_| {
                    (0..dim)
                        .map(|_| Rat::from_int(rng.random_range(-4..=4)))
                        .collect()
                })
                .collect()
        };
        let vertices = sample(1 + case % 5);
        let rays: Vec<Vec<Rat>> = sample(case % 4)
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        let lineality: Vec<Vec<Rat>> = sample(case % 3)
            .into_iter()
            .filter(|l| l.iter().any(|e| !e.is_zero()))
            .collect();
        let v = VPolyhedron::new(dim, vertices, rays, lineality).unwrap();
        let c = v.canonical();
        assert!(
            polyhedra_equal(&Polyhedron::V(v.clone()), &Polyhedron::V(c.clone())).unwrap(),
            "case {case}: canonicalization changed the set"
        );
        assert_eq!(c, c.canonical(), "case {case}: canonicalization not idempotent");
    }
}

/// The image of convex generators under a fitted map matches the image
/// computed directly (two routes through the same data).
#[test]
fn image_and_fit_are_consistent() {
    let q = enumerate_generators(&fixtures::lifted_q_hrep()).expect_vpoly("interval lift");
    let pairs = vec![
        (ivec(&[0, 0, 0, 2]), ivec(&[8, 10, 6])),
        (ivec(&[0, 0, 0, 3]), ivec(&[12, 15, 9])),
        (ivec(&[1, 0, 0, 0]), ivec(&[0, 0, 0])),
        (ivec(&[0, 1, 0, 0]), ivec(&[0, 0, 0])),
        (ivec(&[0, 0, 1, 0]), ivec(&[0, 0, 0])),
    ];
    let fitted = fit_linear_map(&pairs).unwrap().expect("consistent");
    let image = image_under_map(&fitted, &q).unwrap();
    assert_eq!(image, fixtures::segment_p_vrep().canonical());
}
