//! H- and V-representations of polyhedra.
//!
//! An [`HPolyhedron`] is a finite list of exact linear rows (`<=` or `=`)
//! over named coordinates; zero rows denote the whole space. A
//! [`VPolyhedron`] is a generator description: vertices, rays, and lineality
//! directions, with at least one vertex (the empty set is the explicit
//! [`Generators::Empty`] verdict, never a degenerate generator list).
//!
//! Set-level predicates (membership, inclusion, equality) are exact:
//! membership in an H-representation evaluates rows, membership in a
//! V-representation solves a rational LP for a certifying combination, and
//! inclusion is tested generator-wise against the other side.

mod canon;
mod dd;
mod redundancy;

pub use canon::canonicalize;
pub use dd::enumerate_generators;
pub use redundancy::remove_redundancy;

use crate::error::{Error, Result};
use crate::matrix::{null_space, RatMatrix};
use crate::rat::{dot, Rat};
use crate::simplex::feasible_point;

/// Relation of a linear row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Le,
}

/// One linear constraint `coeffs · x (rel) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRow {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl LinRow {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        LinRow {
            coeffs,
            rel: Rel::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        LinRow {
            coeffs,
            rel: Rel::Eq,
            rhs,
        }
    }

    pub fn satisfied_by(&self, point: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, point);
        match self.rel {
            Rel::Le => lhs <= self.rhs,
            Rel::Eq => lhs == self.rhs,
        }
    }

    /// Whether a direction stays feasible for this row (recession test).
    pub fn admits_direction(&self, dir: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, dir);
        match self.rel {
            Rel::Le => !lhs.is_positive(),
            Rel::Eq => lhs.is_zero(),
        }
    }
}

/// Polyhedron as an intersection of linear rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub rows: Vec<LinRow>,
    pub coord_names: Option<Vec<String>>,
}

impl HPolyhedron {
    pub fn new(dim: usize, rows: Vec<LinRow>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.coeffs.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} coefficients for dimension {}",
                    i,
                    row.coeffs.len(),
                    dim
                )));
            }
        }
        Ok(HPolyhedron {
            dim,
            rows,
            coord_names: None,
        })
    }

    /// The whole space (zero rows).
    pub fn space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            rows: Vec::new(),
            coord_names: None,
        }
    }

    /// The canonical empty set: `0 · x <= -1`.
    pub fn empty(dim: usize) -> Self {
        HPolyhedron {
            dim,
            rows: vec![LinRow::le(vec![Rat::zero(); dim], Rat::from_int(-1))],
            coord_names: None,
        }
    }

    /// Exact membership: every row satisfied.
    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has length {} for dimension {}",
                point.len(),
                self.dim
            )));
        }
        Ok(self.rows.iter().all(|r| r.satisfied_by(point)))
    }

    /// Whether a direction lies in the recession cone.
    pub fn recession_contains(&self, dir: &[Rat]) -> Result<bool> {
        if dir.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "direction has length {} for dimension {}",
                dir.len(),
                self.dim
            )));
        }
        Ok(self.rows.iter().all(|r| r.admits_direction(dir)))
    }

    pub fn is_empty_set(&self) -> bool {
        feasible_point(self).is_none()
    }
}

/// Polyhedron as generators: `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
}

impl VPolyhedron {
    pub fn new(
        dim: usize,
        vertices: Vec<Vec<Rat>>,
        rays: Vec<Vec<Rat>>,
        lineality: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput(
                "a V-representation needs at least one vertex",
            ));
        }
        for g in vertices.iter().chain(&rays).chain(&lineality) {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator has length {} for dimension {}",
                    g.len(),
                    dim
                )));
            }
        }
        Ok(VPolyhedron {
            dim,
            vertices,
            rays,
            lineality,
        })
    }

    /// A single point.
    pub fn point(coords: Vec<Rat>) -> Self {
        let dim = coords.len();
        VPolyhedron {
            dim,
            vertices: vec![coords],
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    /// The whole space: origin vertex plus one lineality direction per axis,
    /// in canonical (lexicographically sorted) order.
    pub fn whole_space(dim: usize) -> Self {
        let lineality = (0..dim)
            .rev()
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = Rat::one();
                e
            })
            .collect();
        VPolyhedron {
            dim,
            vertices: vec![vec![Rat::zero(); dim]],
            rays: Vec::new(),
            lineality,
        }
    }

    /// Exact membership, decided by LP feasibility of a certifying convex +
    /// conic + linear combination.
    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has length {} for dimension {}",
                point.len(),
                self.dim
            )));
        }
        Ok(combination_exists(
            point,
            &self.vertices.iter().collect::<Vec<_>>(),
            &self.rays.iter().collect::<Vec<_>>(),
            &self.lineality,
        ))
    }

    /// Whether a direction lies in `cone(rays) + span(lineality)`.
    pub fn recession_contains(&self, dir: &[Rat]) -> Result<bool> {
        if dir.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "direction has length {} for dimension {}",
                dir.len(),
                self.dim
            )));
        }
        Ok(combination_exists(
            dir,
            &[],
            &self.rays.iter().collect::<Vec<_>>(),
            &self.lineality,
        ))
    }

    /// Minimal, lexicographically sorted form of the same set.
    pub fn canonical(&self) -> VPolyhedron {
        canon::canonicalize(self)
    }
}

/// Whether `target` is a convex combination of `vertices` (when any are
/// given) plus a nonnegative combination of `rays` plus any combination of
/// `lineality`. One phase-1 LP over the weights.
pub(crate) fn combination_exists(
    target: &[Rat],
    vertices: &[&Vec<Rat>],
    rays: &[&Vec<Rat>],
    lineality: &[Vec<Rat>],
) -> bool {
    let nv = vertices.len();
    let nr = rays.len();
    let nl = lineality.len();
    if nv + nr + nl == 0 {
        return target.iter().all(|e| e.is_zero());
    }
    let dim = target.len();
    let mut rows = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        let mut coeffs = Vec::with_capacity(nv + nr + nl);
        coeffs.extend(vertices.iter().map(|v| v[d].clone()));
        coeffs.extend(rays.iter().map(|r| r[d].clone()));
        coeffs.extend(lineality.iter().map(|l| l[d].clone()));
        rows.push(coeffs);
        rhs.push(target[d].clone());
    }
    if nv > 0 {
        let mut coeffs = vec![Rat::zero(); nv + nr + nl];
        for c in coeffs.iter_mut().take(nv) {
            *c = Rat::one();
        }
        rows.push(coeffs);
        rhs.push(Rat::one());
    }
    crate::simplex::eq_system_feasible(&rows, &rhs, nv + nr)
}

/// Result of a vertex enumeration: the empty verdict or a generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    Empty { dim: usize },
    NonEmpty(VPolyhedron),
}

impl Generators {
    pub fn dim(&self) -> usize {
        match self {
            Generators::Empty { dim } => *dim,
            Generators::NonEmpty(v) => v.dim,
        }
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self, Generators::Empty { .. })
    }

    pub fn as_vpoly(&self) -> Option<&VPolyhedron> {
        match self {
            Generators::Empty { .. } => None,
            Generators::NonEmpty(v) => Some(v),
        }
    }

    pub fn expect_vpoly(self, context: &str) -> VPolyhedron {
        match self {
            Generators::NonEmpty(v) => v,
            Generators::Empty { .. } => panic!("unexpected empty polyhedron: {context}"),
        }
    }
}

/// A polyhedron given in either representation.
#[derive(Clone, Debug)]
pub enum Polyhedron {
    H(HPolyhedron),
    V(VPolyhedron),
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        match self {
            Polyhedron::H(h) => h.dim,
            Polyhedron::V(v) => v.dim,
        }
    }

    /// Generator form of the set (vertex enumeration for H inputs).
    pub fn generators(&self) -> Generators {
        match self {
            Polyhedron::H(h) => enumerate_generators(h),
            Polyhedron::V(v) => Generators::NonEmpty(v.clone()),
        }
    }

    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        match self {
            Polyhedron::H(h) => h.contains(point),
            Polyhedron::V(v) => v.contains(point),
        }
    }

    pub fn recession_contains(&self, dir: &[Rat]) -> Result<bool> {
        match self {
            Polyhedron::H(h) => h.recession_contains(dir),
            Polyhedron::V(v) => v.recession_contains(dir),
        }
    }
}

/// Whether every generator of `inner` lies in `outer` (vertices by
/// membership, rays and lineality by recession-cone tests).
pub fn includes(outer: &Polyhedron, inner: &Generators) -> Result<bool> {
    if outer.dim() != inner.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare dimension {} with {}",
            outer.dim(),
            inner.dim()
        )));
    }
    let Some(v) = inner.as_vpoly() else {
        return Ok(true);
    };
    for vertex in &v.vertices {
        if !outer.contains(vertex)? {
            return Ok(false);
        }
    }
    for ray in &v.rays {
        if !outer.recession_contains(ray)? {
            return Ok(false);
        }
    }
    for line in &v.lineality {
        let neg: Vec<Rat> = line.iter().map(|e| -e).collect();
        if !outer.recession_contains(line)? || !outer.recession_contains(&neg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact set equality by mutual generator-wise inclusion.
pub fn polyhedra_equal(a: &Polyhedron, b: &Polyhedron) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare dimension {} with {}",
            a.dim(),
            b.dim()
        )));
    }
    let gens_a = a.generators();
    let gens_b = b.generators();
    match (gens_a.is_empty_set(), gens_b.is_empty_set()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    Ok(includes(b, &gens_a)? && includes(a, &gens_b)?)
}

/// A complete independent set of equalities satisfied by the whole set:
/// the affine hull, as equality rows.
pub fn affine_hull(v: &VPolyhedron) -> Vec<LinRow> {
    let base = &v.vertices[0];
    let mut directions: Vec<Vec<Rat>> = Vec::new();
    for vertex in &v.vertices[1..] {
        directions.push(vertex.iter().zip(base).map(|(a, b)| a - b).collect());
    }
    directions.extend(v.rays.iter().cloned());
    directions.extend(v.lineality.iter().cloned());
    if directions.is_empty() {
        directions.push(vec![Rat::zero(); v.dim]);
    }
    let m = RatMatrix::from_rows(directions).expect("directions share the dimension");
    null_space(&m)
        .into_iter()
        .map(|normal| {
            let rhs = dot(&normal, base);
            LinRow::eq(normal, rhs)
        })
        .collect()
}
