//! The embedded counterexample catalog.
//!
//! Single source of truth for the constants the verification suite works on:
//! a segment in three coordinates, an interval lifted next to three free
//! coordinates, the linear map relating them, and the point separating the
//! two extension definitions.

use crate::bridge::GraphL;
use crate::ef::LinearMap;
use crate::matrix::RatMatrix;
use crate::poly::{HPolyhedron, LinRow, VPolyhedron};
use crate::rat::{ivec, Rat};

/// The segment with endpoints (8, 10, 6) and (12, 15, 9), as generators.
pub fn segment_p_vrep() -> VPolyhedron {
    VPolyhedron::new(
        3,
        vec![ivec(&[8, 10, 6]), ivec(&[12, 15, 9])],
        vec![],
        vec![],
    )
    .expect("two three-dimensional vertices")
}

/// A nine-row outer description of the same segment: three facet-style rows
/// (one of them an equality) plus interval bounds on every coordinate.
/// Counted with equalities as two inequalities it has size 10.
pub fn segment_p_hrep() -> HPolyhedron {
    let rows = vec![
        LinRow::le(ivec(&[-5, 4, 0]), Rat::zero()),
        LinRow::eq(ivec(&[0, 3, -5]), Rat::zero()),
        LinRow::le(ivec(&[3, 0, -4]), Rat::zero()),
        LinRow::le(ivec(&[-1, 0, 0]), Rat::from_int(-8)),
        LinRow::le(ivec(&[1, 0, 0]), Rat::from_int(12)),
        LinRow::le(ivec(&[0, -1, 0]), Rat::from_int(-10)),
        LinRow::le(ivec(&[0, 1, 0]), Rat::from_int(15)),
        LinRow::le(ivec(&[0, 0, -1]), Rat::from_int(-6)),
        LinRow::le(ivec(&[0, 0, 1]), Rat::from_int(9)),
    ];
    HPolyhedron::new(3, rows).expect("nine rows over three coordinates")
}

/// The lifted system `2 <= y <= 3` over coordinates (x1, x2, x3, y): the
/// three x-coordinates never appear in a row.
pub fn lifted_q_hrep() -> HPolyhedron {
    let rows = vec![
        LinRow::le(ivec(&[0, 0, 0, -1]), Rat::from_int(-2)),
        LinRow::le(ivec(&[0, 0, 0, 1]), Rat::from_int(3)),
    ];
    HPolyhedron::new(4, rows).expect("two rows over four coordinates")
}

/// Coordinates of the x-block inside the lifted system.
pub fn x_block() -> Vec<usize> {
    vec![0, 1, 2]
}

/// The linear map sending the lifted system onto the segment: zero on the
/// x-block, last column (4, 5, 3).
pub fn projection_map() -> LinearMap {
    LinearMap::linear(RatMatrix::from_ints(&[
        &[0, 0, 0, 4],
        &[0, 0, 0, 5],
        &[0, 0, 0, 3],
    ]))
}

/// The point (22.5, -50, 100): it lifts into the interval system but
/// violates the segment description (its equality row in particular).
pub fn outside_witness() -> Vec<Rat> {
    vec![Rat::new(45, 2), Rat::from_int(-50), Rat::from_int(100)]
}

/// The interval [2, 3] on its own axis; domain of the segment bridge.
pub fn interval_y_hrep() -> HPolyhedron {
    let rows = vec![
        LinRow::le(ivec(&[-1]), Rat::from_int(-2)),
        LinRow::le(ivec(&[1]), Rat::from_int(3)),
    ];
    HPolyhedron::new(1, rows).expect("two rows over one coordinate")
}

/// The linear relation x = (4, 5, 3) y between the segment and the interval,
/// written as x - (4, 5, 3) y = 0.
pub fn segment_graph() -> GraphL {
    GraphL::new(
        RatMatrix::identity(3),
        RatMatrix::from_ints(&[&[-4], &[-5], &[-3]]),
        ivec(&[0, 0, 0]),
    )
    .expect("three rows relating three x-coordinates to one y")
}
