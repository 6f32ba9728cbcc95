//! Tours rooted at city 0, visit-time assignment matrices, and the
//! assignment polytope whose extreme points are exactly those matrices.
//!
//! A tour of `n` cities starts and ends at city 0 and visits the remaining
//! cities `1..n-1` in some order. Its assignment matrix records which city is
//! visited at which time: a 0/1 doubly stochastic matrix, so a vertex of the
//! assignment (Birkhoff) polytope over `(n-1)^2` coordinates. The maps in
//! both directions are trivial and exact; [`verify_bijection`] checks the
//! whole correspondence for a given `n` by enumerating the polytope's
//! vertices with the double description method.

use crate::error::{Error, Result};
use crate::poly::{enumerate_generators, Generators, HPolyhedron, LinRow};
use crate::rat::Rat;
use itertools::Itertools;
use serde::Serialize;

/// Enumeration guard: (n-1)! tours grow fast.
pub const DEFAULT_TOUR_CAP: usize = 8;

/// A tour rooted at city 0: the visit order of cities `1..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tour {
    n: usize,
    order: Vec<usize>,
}

impl Tour {
    /// `order` must be a permutation of `{1, ..., n-1}`.
    pub fn new(n: usize, order: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewCities(n));
        }
        if order.len() != n - 1 {
            return Err(Error::InvalidTour(format!(
                "{} cities listed for a {}-city tour",
                order.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &city in &order {
            if city == 0 || city >= n {
                return Err(Error::InvalidTour(format!("city {city} out of range")));
            }
            if seen[city] {
                return Err(Error::InvalidTour(format!("city {city} listed twice")));
            }
            seen[city] = true;
        }
        Ok(Tour { n, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Visit order of the non-root cities.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The city visited at time `s` (1-based).
    pub fn city_at(&self, s: usize) -> usize {
        self.order[s - 1]
    }

    /// Space-separated city sequence including the root at both ends,
    /// e.g. `0 2 1 3 0`.
    pub fn display(&self) -> String {
        let mut parts = vec!["0".to_string()];
        parts.extend(self.order.iter().map(|c| c.to_string()));
        parts.push("0".to_string());
        parts.join(" ")
    }
}

/// 0/1 assignment of cities to visit times: rows are cities `1..n-1`,
/// columns are times `1..n-1`, each row and column sums to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl AssignmentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether city `i` is visited at time `s` (both 1-based).
    pub fn entry(&self, i: usize, s: usize) -> bool {
        self.entries[(i - 1) * (self.n - 1) + (s - 1)]
    }

    /// Coordinates in the frozen order: index (i-1)·(n-1) + (s-1).
    pub fn to_point(&self) -> Vec<Rat> {
        self.entries
            .iter()
            .map(|&b| if b { Rat::one() } else { Rat::zero() })
            .collect()
    }

    /// Validate a rational point of the assignment polytope as a 0/1
    /// permutation matrix.
    pub fn try_from_point(n: usize, point: &[Rat]) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewCities(n));
        }
        let m = n - 1;
        if point.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                m * m,
                point.len()
            )));
        }
        let mut entries = Vec::with_capacity(m * m);
        for v in point {
            if v.is_zero() {
                entries.push(false);
            } else if v.is_one() {
                entries.push(true);
            } else {
                return Err(Error::NotPermutation(format!("fractional entry {v}")));
            }
        }
        for i in 0..m {
            let row_sum = (0..m).filter(|&s| entries[i * m + s]).count();
            if row_sum != 1 {
                return Err(Error::NotPermutation(format!(
                    "row {} sums to {}",
                    i + 1,
                    row_sum
                )));
            }
        }
        for s in 0..m {
            let col_sum = (0..m).filter(|&i| entries[i * m + s]).count();
            if col_sum != 1 {
                return Err(Error::NotPermutation(format!(
                    "column {} sums to {}",
                    s + 1,
                    col_sum
                )));
            }
        }
        Ok(AssignmentMatrix { n, entries })
    }
}

/// 0/1 vector over directed arcs (i, j), i != j, in lexicographic arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TravelLegVector {
    n: usize,
    arcs: Vec<bool>,
}

impl TravelLegVector {
    /// Index of arc (i, j) in the frozen lexicographic order.
    pub fn arc_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(i != j && i < n && j < n);
        i * (n - 1) + if j < i { j } else { j - 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs[Self::arc_index(self.n, i, j)]
    }

    pub fn to_point(&self) -> Vec<Rat> {
        self.arcs
            .iter()
            .map(|&b| if b { Rat::one() } else { Rat::zero() })
            .collect()
    }
}

/// The assignment matrix of a tour: city `i` is visited at time `s` exactly
/// when `i` is the s-th city of the order.
pub fn tour_to_assignment(tour: &Tour) -> AssignmentMatrix {
    let m = tour.n - 1;
    let mut entries = vec![false; m * m];
    for (idx, &city) in tour.order.iter().enumerate() {
        let s = idx + 1;
        entries[(city - 1) * m + (s - 1)] = true;
    }
    AssignmentMatrix { n: tour.n, entries }
}

/// The unique tour of an assignment matrix: the s-th visited city is the one
/// assigned to time s.
pub fn assignment_to_tour(w: &AssignmentMatrix) -> Tour {
    let m = w.n - 1;
    let order: Vec<usize> = (1..=m)
        .map(|s| {
            (1..=m)
                .find(|&i| w.entry(i, s))
                .expect("every column of a permutation matrix has its one")
        })
        .collect();
    Tour { n: w.n, order }
}

/// Arc incidence vector of a tour: the cycle 0 -> a1 -> ... -> a_{n-1} -> 0.
pub fn tour_to_tl_vector(tour: &Tour) -> TravelLegVector {
    let n = tour.n;
    let mut arcs = vec![false; n * (n - 1)];
    let mut prev = 0;
    for &city in &tour.order {
        arcs[TravelLegVector::arc_index(n, prev, city)] = true;
        prev = city;
    }
    arcs[TravelLegVector::arc_index(n, prev, 0)] = true;
    TravelLegVector { n, arcs }
}

/// H-representation of the assignment polytope over `(n-1)^2` coordinates:
/// one equality per city row, one per time column, nonnegativity everywhere.
pub fn build_ap_hrep(n: usize) -> Result<HPolyhedron> {
    if n < 2 {
        return Err(Error::TooFewCities(n));
    }
    let m = n - 1;
    let dim = m * m;
    let mut rows = Vec::with_capacity(2 * m + dim);
    for i in 0..m {
        let mut coeffs = vec![Rat::zero(); dim];
        for s in 0..m {
            coeffs[i * m + s] = Rat::one();
        }
        rows.push(LinRow::eq(coeffs, Rat::one()));
    }
    for s in 0..m {
        let mut coeffs = vec![Rat::zero(); dim];
        for i in 0..m {
            coeffs[i * m + s] = Rat::one();
        }
        rows.push(LinRow::eq(coeffs, Rat::one()));
    }
    for c in 0..dim {
        let mut coeffs = vec![Rat::zero(); dim];
        coeffs[c] = Rat::from_int(-1);
        rows.push(LinRow::le(coeffs, Rat::zero()));
    }
    HPolyhedron::new(dim, rows)
}

/// All (n-1)! tours in lexicographic order of their visit sequences.
pub fn enumerate_tours(n: usize) -> Result<Vec<Tour>> {
    enumerate_tours_with_cap(n, DEFAULT_TOUR_CAP)
}

pub fn enumerate_tours_with_cap(n: usize, cap: usize) -> Result<Vec<Tour>> {
    if n < 2 {
        return Err(Error::TooFewCities(n));
    }
    if n > cap {
        return Err(Error::TourCapExceeded { n, cap });
    }
    let cities: Vec<usize> = (1..n).collect();
    let count = cities.len();
    Ok(cities
        .into_iter()
        .permutations(count)
        .map(|order| Tour { n, order })
        .collect())
}

/// Outcome of checking the tour/vertex correspondence for one city count.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub expected_vertices: usize,
    pub vertex_count: usize,
    /// Every enumerated vertex is a 0/1 permutation matrix.
    pub vertices_are_permutations: bool,
    /// The vertex set equals the set of tour assignment matrices.
    pub matches_tour_set: bool,
    /// Tour -> matrix -> tour is the identity on every tour.
    pub round_trips_exact: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.vertex_count == self.expected_vertices
            && self.vertices_are_permutations
            && self.matches_tour_set
            && self.round_trips_exact
    }
}

/// Enumerate the assignment polytope's vertices and check they correspond
/// one-to-one with tours.
pub fn verify_bijection(n: usize) -> Result<BijectionReport> {
    verify_bijection_with_cap(n, DEFAULT_TOUR_CAP)
}

pub fn verify_bijection_with_cap(n: usize, cap: usize) -> Result<BijectionReport> {
    let tours = enumerate_tours_with_cap(n, cap)?;
    let expected = tours.len();
    let hrep = build_ap_hrep(n)?;
    let vertices = match enumerate_generators(&hrep) {
        Generators::NonEmpty(v) if v.rays.is_empty() && v.lineality.is_empty() => v.vertices,
        Generators::NonEmpty(_) => {
            return Ok(BijectionReport {
                n,
                expected_vertices: expected,
                vertex_count: 0,
                vertices_are_permutations: false,
                matches_tour_set: false,
                round_trips_exact: false,
            })
        }
        Generators::Empty { .. } => {
            return Ok(BijectionReport {
                n,
                expected_vertices: expected,
                vertex_count: 0,
                vertices_are_permutations: false,
                matches_tour_set: false,
                round_trips_exact: false,
            })
        }
    };
    let vertices_are_permutations = vertices
        .iter()
        .all(|v| AssignmentMatrix::try_from_point(n, v).is_ok());
    let mut tour_points: Vec<Vec<Rat>> = tours
        .iter()
        .map(|t| tour_to_assignment(t).to_point())
        .collect();
    tour_points.sort();
    let matches_tour_set = vertices == tour_points;
    let round_trips_exact = tours
        .iter()
        .all(|t| assignment_to_tour(&tour_to_assignment(t)) == *t);
    Ok(BijectionReport {
        n,
        expected_vertices: expected,
        vertex_count: vertices.len(),
        vertices_are_permutations,
        matches_tour_set,
        round_trips_exact,
    })
}
