//! Extended-formulation checks.
//!
//! Three competing notions of "Q extends P" are implemented side by side:
//!
//! * [`is_ef_standard`]: the coordinate projection of Q onto the x-block
//!   equals P (decided by Fourier–Motzkin plus exact set equality);
//! * [`is_ef_exists`]: the membership biconditional — x is in P exactly when
//!   some lift (x, y) is in Q (decided by LP lifting of P's generators plus a
//!   projection inclusion, an independently structured route that must agree
//!   with the standard definition);
//! * [`is_ef_linear_map`]: P is the image of Q under a given linear map.
//!
//! The third definition accepts pairs the first two reject; the verdicts
//! carry witnesses making each disagreement concrete. Degenerate lifted
//! systems (whose minimal description never mentions the x-block) are
//! detected by [`is_degenerate_ef`], and [`count_inequalities`] implements the
//! description-size counting used to compare formulations.

use crate::error::{Error, Result};
use crate::fm::fourier_motzkin;
use crate::matrix::{solve_linear, LinSolve, RatMatrix};
use crate::poly::{
    affine_hull, enumerate_generators, includes, polyhedra_equal, remove_redundancy, Generators,
    HPolyhedron, LinRow, Polyhedron, Rel, VPolyhedron,
};
use crate::rat::{dot, Rat};
use crate::simplex::feasible_point;
use serde::Serialize;

/// A linear map, optionally with a translation part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: RatMatrix,
    pub offset: Option<Vec<Rat>>,
}

impl LinearMap {
    pub fn linear(matrix: RatMatrix) -> Self {
        LinearMap {
            matrix,
            offset: None,
        }
    }

    pub fn affine(matrix: RatMatrix, offset: Vec<Rat>) -> Result<Self> {
        if offset.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "offset has length {} for a map onto dimension {}",
                offset.len(),
                matrix.rows()
            )));
        }
        Ok(LinearMap {
            matrix,
            offset: Some(offset),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, point: &[Rat]) -> Result<Vec<Rat>> {
        let mut image = self.matrix.mul_vec(point)?;
        if let Some(off) = &self.offset {
            for (x, o) in image.iter_mut().zip(off) {
                *x += o;
            }
        }
        Ok(image)
    }

    /// The linear part only, for directions (rays, lineality).
    fn apply_direction(&self, dir: &[Rat]) -> Result<Vec<Rat>> {
        self.matrix.mul_vec(dir)
    }
}

/// Which extension notion a verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EfDefinition {
    /// Projection of the lifted system equals the target.
    Standard,
    /// Target is the image of the lifted system under a linear map.
    MapImage,
    /// Membership biconditional through an existential lift.
    ExistsLift,
}

#[derive(Clone, Debug)]
pub enum EfWitness {
    /// A point in exactly one of the two compared sets.
    Point(Vec<Rat>),
    /// The map certifying an image-definition extension.
    Map(LinearMap),
}

/// Outcome of one extension check.
#[derive(Clone, Debug)]
pub struct EfVerdict {
    pub definition: EfDefinition,
    pub holds: bool,
    pub witness: Option<EfWitness>,
}

impl EfVerdict {
    pub fn witness_point(&self) -> Option<&[Rat]> {
        match &self.witness {
            Some(EfWitness::Point(p)) => Some(p),
            _ => None,
        }
    }
}

fn check_x_coords(q: &HPolyhedron, p_dim: usize, x_coords: &[usize]) -> Result<Vec<usize>> {
    let mut coords = x_coords.to_vec();
    coords.sort_unstable();
    coords.dedup();
    if coords.len() != p_dim {
        return Err(Error::DimensionMismatch(format!(
            "{} x-coordinates selected for a target of dimension {}",
            coords.len(),
            p_dim
        )));
    }
    for &c in &coords {
        if c >= q.dim {
            return Err(Error::CoordinateOutOfRange {
                index: c,
                dim: q.dim,
            });
        }
    }
    Ok(coords)
}

/// Whether a target point lifts into `q`: some point of `q` agrees with it on
/// the selected coordinates. Decided by substituting the fixed block and
/// testing feasibility of the remaining system.
pub fn lift_feasible(q: &HPolyhedron, x_coords: &[usize], point: &[Rat]) -> Result<bool> {
    let coords = check_x_coords(q, point.len(), x_coords)?;
    Ok(feasible_point(&substituted_system(q, &coords, point, false)).is_some())
}

/// Whether a target direction lifts into the recession cone of `q`.
fn lift_direction_feasible(q: &HPolyhedron, coords: &[usize], dir: &[Rat]) -> bool {
    feasible_point(&substituted_system(q, coords, dir, true)).is_some()
}

/// The system over the non-selected coordinates of `q` obtained by fixing the
/// selected block to `fixed`. With `homogeneous`, rows are recession rows.
fn substituted_system(
    q: &HPolyhedron,
    coords: &[usize],
    fixed: &[Rat],
    homogeneous: bool,
) -> HPolyhedron {
    let rest: Vec<usize> = (0..q.dim).filter(|c| !coords.contains(c)).collect();
    let rows = q
        .rows
        .iter()
        .map(|row| {
            let fixed_part: Rat = coords
                .iter()
                .zip(fixed)
                .map(|(&c, v)| &row.coeffs[c] * v)
                .sum();
            let base = if homogeneous {
                Rat::zero()
            } else {
                row.rhs.clone()
            };
            LinRow {
                coeffs: rest.iter().map(|&c| row.coeffs[c].clone()).collect(),
                rel: row.rel,
                rhs: base - fixed_part,
            }
        })
        .collect();
    HPolyhedron::new(rest.len(), rows).expect("substituted rows fit")
}

/// Walk from `base` along `dir` (doubling the step) until the point leaves
/// `outer`. Only called when `dir` escapes the recession cone of `outer`,
/// which makes the walk finite.
fn escape_point(base: &[Rat], dir: &[Rat], outer: &Polyhedron) -> Result<Vec<Rat>> {
    let mut t = Rat::one();
    loop {
        let cand: Vec<Rat> = base.iter().zip(dir).map(|(b, d)| b + &(&t * d)).collect();
        if !outer.contains(&cand)? {
            return Ok(cand);
        }
        t = &t * &Rat::from_int(2);
    }
}

/// A point of `inner \ outer`, given generator forms of both and the promise
/// that the inclusion fails. Preference order: a direction of `inner` that
/// leaves the affine hull of `outer` (walked to an explicit point), then a
/// vertex of `inner` outside `outer`, then any escaping recession direction.
fn separating_point(inner: &VPolyhedron, outer: &Polyhedron) -> Result<Option<Vec<Rat>>> {
    let hull = match outer.generators() {
        Generators::NonEmpty(v) => affine_hull(&v),
        Generators::Empty { .. } => Vec::new(),
    };
    let base = &inner.vertices[0];
    let mut directions: Vec<Vec<Rat>> = Vec::new();
    for r in &inner.rays {
        directions.push(r.clone());
    }
    for l in &inner.lineality {
        directions.push(l.clone());
        directions.push(l.iter().map(|e| -e).collect());
    }
    for dir in &directions {
        if hull.iter().any(|row| !dot(&row.coeffs, dir).is_zero()) {
            return Ok(Some(escape_point(base, dir, outer)?));
        }
    }
    for vertex in &inner.vertices {
        if !outer.contains(vertex)? {
            return Ok(Some(vertex.clone()));
        }
    }
    for dir in &directions {
        if !outer.recession_contains(dir)? {
            return Ok(Some(escape_point(base, dir, outer)?));
        }
    }
    Ok(None)
}

/// A point violating the biconditional between the projection of `q` and `p`,
/// in either direction.
fn biconditional_witness(
    proj: &HPolyhedron,
    p: &Polyhedron,
    proj_gens: &Generators,
    p_gens: &Generators,
) -> Result<Option<Vec<Rat>>> {
    if let Some(v) = proj_gens.as_vpoly() {
        if let Some(point) = separating_point(v, p)? {
            return Ok(Some(point));
        }
    }
    if let Some(v) = p_gens.as_vpoly() {
        let proj_poly = Polyhedron::H(proj.clone());
        if let Some(point) = separating_point(v, &proj_poly)? {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

/// Standard extension check: the projection of `q` onto the selected block
/// equals `p`.
pub fn is_ef_standard(q: &HPolyhedron, p: &Polyhedron, x_coords: &[usize]) -> Result<EfVerdict> {
    let coords = check_x_coords(q, p.dim(), x_coords)?;
    let proj = fourier_motzkin(q, &coords)?;
    let holds = polyhedra_equal(&Polyhedron::H(proj.clone()), p)?;
    let witness = if holds {
        None
    } else {
        let proj_gens = enumerate_generators(&proj);
        let p_gens = p.generators();
        biconditional_witness(&proj, p, &proj_gens, &p_gens)?.map(EfWitness::Point)
    };
    Ok(EfVerdict {
        definition: EfDefinition::Standard,
        holds,
        witness,
    })
}

/// Existential-lift check: every generator of `p` lifts into `q`, and the
/// projection of `q` does not exceed `p`. Equivalent to the standard
/// definition, computed along a different route.
pub fn is_ef_exists(q: &HPolyhedron, p: &Polyhedron, x_coords: &[usize]) -> Result<EfVerdict> {
    let coords = check_x_coords(q, p.dim(), x_coords)?;
    let p_gens = p.generators();
    let mut lifts_ok = true;
    if let Some(v) = p_gens.as_vpoly() {
        lifts_ok = v
            .vertices
            .iter()
            .all(|vertex| feasible_point(&substituted_system(q, &coords, vertex, false)).is_some())
            && v.rays
                .iter()
                .all(|r| lift_direction_feasible(q, &coords, r))
            && v.lineality.iter().all(|l| {
                let neg: Vec<Rat> = l.iter().map(|e| -e).collect();
                lift_direction_feasible(q, &coords, l) && lift_direction_feasible(q, &coords, &neg)
            });
    }
    let proj = fourier_motzkin(q, &coords)?;
    let proj_gens = enumerate_generators(&proj);
    let within = includes(p, &proj_gens)?;
    let holds = lifts_ok && within;
    let witness = if holds {
        None
    } else {
        biconditional_witness(&proj, p, &proj_gens, &p_gens)?.map(EfWitness::Point)
    };
    Ok(EfVerdict {
        definition: EfDefinition::ExistsLift,
        holds,
        witness,
    })
}

/// Canonical image of a generator form under a linear (or affine) map.
pub fn image_under_map(map: &LinearMap, q: &VPolyhedron) -> Result<VPolyhedron> {
    if map.source_dim() != q.dim {
        return Err(Error::DimensionMismatch(format!(
            "map expects dimension {} but the generators live in dimension {}",
            map.source_dim(),
            q.dim
        )));
    }
    let vertices = q
        .vertices
        .iter()
        .map(|v| map.apply(v))
        .collect::<Result<Vec<_>>>()?;
    let keep_nonzero = |dirs: &[Vec<Rat>]| -> Result<Vec<Vec<Rat>>> {
        let mut out = Vec::new();
        for d in dirs {
            let image = map.apply_direction(d)?;
            if image.iter().any(|e| !e.is_zero()) {
                out.push(image);
            }
        }
        Ok(out)
    };
    let rays = keep_nonzero(&q.rays)?;
    let lineality = keep_nonzero(&q.lineality)?;
    let raw = VPolyhedron::new(map.target_dim(), vertices, rays, lineality)?;
    Ok(raw.canonical())
}

/// Image-definition check: the image of `q` under `map` equals `p`.
pub fn is_ef_linear_map(q: &Polyhedron, p: &Polyhedron, map: &LinearMap) -> Result<EfVerdict> {
    if map.source_dim() != q.dim() || map.target_dim() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map of shape {}x{} cannot relate dimension {} to {}",
            map.target_dim(),
            map.source_dim(),
            q.dim(),
            p.dim()
        )));
    }
    let holds = match q.generators() {
        Generators::Empty { .. } => p.generators().is_empty_set(),
        Generators::NonEmpty(v) => {
            let image = image_under_map(map, &v)?;
            polyhedra_equal(&Polyhedron::V(image), p)?
        }
    };
    let witness = holds.then(|| EfWitness::Map(map.clone()));
    Ok(EfVerdict {
        definition: EfDefinition::MapImage,
        holds,
        witness,
    })
}

/// Reconstruct the linear map sending each source point to its target, if one
/// exists. Solved coordinate-row by coordinate-row; underdetermined systems
/// take the canonical particular solution.
pub fn fit_linear_map(pairs: &[(Vec<Rat>, Vec<Rat>)]) -> Result<Option<LinearMap>> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput("fit_linear_map needs at least one pair"));
    }
    let source_dim = pairs[0].0.len();
    let target_dim = pairs[0].1.len();
    for (s, t) in pairs {
        if s.len() != source_dim || t.len() != target_dim {
            return Err(Error::DimensionMismatch(
                "inconsistent pair dimensions".into(),
            ));
        }
    }
    let sources = RatMatrix::from_rows(pairs.iter().map(|(s, _)| s.clone()).collect())
        .expect("checked rectangular");
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(target_dim);
    for i in 0..target_dim {
        let rhs: Vec<Rat> = pairs.iter().map(|(_, t)| t[i].clone()).collect();
        match solve_linear(&sources, &rhs)? {
            LinSolve::NoSolution => return Ok(None),
            LinSolve::Unique(row) => rows.push(row),
            LinSolve::Infinite { particular, .. } => rows.push(particular),
        }
    }
    let matrix = RatMatrix::from_rows(rows).expect("rows share source dimension");
    let map = LinearMap::linear(matrix);
    debug_assert!(pairs
        .iter()
        .all(|(s, t)| map.apply(s).expect("dims fixed") == *t));
    Ok(Some(map))
}

/// Whether the minimal description of `q` never mentions the selected
/// coordinates (the all-zero x-block case).
pub fn is_degenerate_ef(q: &HPolyhedron, x_coords: &[usize]) -> Result<bool> {
    for &c in x_coords {
        if c >= q.dim {
            return Err(Error::CoordinateOutOfRange {
                index: c,
                dim: q.dim,
            });
        }
    }
    let minimal = remove_redundancy(q)?;
    Ok(minimal
        .rows
        .iter()
        .all(|row| x_coords.iter().all(|&c| row.coeffs[c].is_zero())))
}

/// Counting convention for description sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountConvention {
    /// Each equality counts as two inequalities.
    EqAsTwo,
    /// Inequalities and equalities reported separately.
    EqSeparate,
}

/// Description size of an H-representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RowCount {
    Total(usize),
    Split {
        inequalities: usize,
        equalities: usize,
    },
}

pub fn count_inequalities(h: &HPolyhedron, convention: CountConvention) -> RowCount {
    let inequalities = h.rows.iter().filter(|r| r.rel == Rel::Le).count();
    let equalities = h.rows.iter().filter(|r| r.rel == Rel::Eq).count();
    match convention {
        CountConvention::EqAsTwo => RowCount::Total(inequalities + 2 * equalities),
        CountConvention::EqSeparate => RowCount::Split {
            inequalities,
            equalities,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rat::ivec;

    #[test]
    fn standard_definition_rejects_interval_lift() {
        let q = fixtures::lifted_q_hrep();
        let p = Polyhedron::V(fixtures::segment_p_vrep());
        let verdict = is_ef_standard(&q, &p, &[0, 1, 2]).unwrap();
        assert!(!verdict.holds);
        let w = verdict.witness_point().expect("refutation carries a point");
        // The witness lies in the projection but not in the segment.
        assert!(lift_feasible(&q, &[0, 1, 2], w).unwrap());
        assert!(!p.contains(w).unwrap());
    }

    #[test]
    fn standard_definition_accepts_graph_lift() {
        // x = y with 0 <= y <= 1 projects exactly onto the unit interval.
        let q = HPolyhedron::new(
            2,
            vec![
                LinRow::eq(ivec(&[1, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, 1]), Rat::one()),
            ],
        )
        .unwrap();
        let p = Polyhedron::V(
            VPolyhedron::new(1, vec![ivec(&[0]), ivec(&[1])], vec![], vec![]).unwrap(),
        );
        assert!(is_ef_standard(&q, &p, &[0]).unwrap().holds);
        assert!(is_ef_exists(&q, &p, &[0]).unwrap().holds);
    }

    #[test]
    fn standard_definition_accepts_whole_space_target() {
        let q = fixtures::lifted_q_hrep();
        let p = Polyhedron::H(HPolyhedron::space(3));
        assert!(is_ef_standard(&q, &p, &[0, 1, 2]).unwrap().holds);
        assert!(is_ef_exists(&q, &p, &[0, 1, 2]).unwrap().holds);
    }

    #[test]
    fn exists_definition_rejects_interval_lift() {
        let q = fixtures::lifted_q_hrep();
        let p = Polyhedron::V(fixtures::segment_p_vrep());
        let verdict = is_ef_exists(&q, &p, &[0, 1, 2]).unwrap();
        assert!(!verdict.holds);
        assert!(verdict.witness_point().is_some());
    }

    #[test]
    fn pinned_outside_point_lifts_but_misses_target() {
        let q = fixtures::lifted_q_hrep();
        let p = fixtures::segment_p_hrep();
        let w = fixtures::outside_witness();
        assert!(lift_feasible(&q, &[0, 1, 2], &w).unwrap());
        assert!(!p.contains(&w).unwrap());
    }

    #[test]
    fn image_of_interval_lift_is_the_segment() {
        let q = enumerate_generators(&fixtures::lifted_q_hrep()).expect_vpoly("lift");
        let image = image_under_map(&fixtures::projection_map(), &q).unwrap();
        assert_eq!(image, fixtures::segment_p_vrep().canonical());
    }

    #[test]
    fn image_identity_and_zero() {
        let q = enumerate_generators(&fixtures::lifted_q_hrep()).expect_vpoly("lift");
        let identity = LinearMap::linear(RatMatrix::identity(4));
        assert_eq!(image_under_map(&identity, &q).unwrap(), q);
        let zero = LinearMap::linear(RatMatrix::zeros(4, 4));
        let image = image_under_map(&zero, &q).unwrap();
        assert_eq!(image, VPolyhedron::point(ivec(&[0, 0, 0, 0])));
    }

    #[test]
    fn map_definition_accepts_interval_lift() {
        let q = Polyhedron::H(fixtures::lifted_q_hrep());
        let p = Polyhedron::V(fixtures::segment_p_vrep());
        let verdict = is_ef_linear_map(&q, &p, &fixtures::projection_map()).unwrap();
        assert!(verdict.holds);
        assert!(matches!(verdict.witness, Some(EfWitness::Map(_))));
    }

    #[test]
    fn map_definition_rejects_zero_and_scaled_maps() {
        let q = Polyhedron::H(fixtures::lifted_q_hrep());
        let p = Polyhedron::V(fixtures::segment_p_vrep());
        let zero = LinearMap::linear(RatMatrix::zeros(3, 4));
        assert!(!is_ef_linear_map(&q, &p, &zero).unwrap().holds);
        let doubled = LinearMap::linear(fixtures::projection_map().matrix.scale(&Rat::from_int(2)));
        // The doubled map sends the lift onto a different segment.
        let image = image_under_map(&doubled, q.generators().as_vpoly().unwrap()).unwrap();
        assert_eq!(
            image.vertices,
            vec![ivec(&[16, 20, 12]), ivec(&[24, 30, 18])]
        );
        assert!(!is_ef_linear_map(&q, &p, &doubled).unwrap().holds);
    }

    #[test]
    fn fit_recovers_projection_map() {
        let pairs = vec![
            (ivec(&[0, 0, 0, 2]), ivec(&[8, 10, 6])),
            (ivec(&[0, 0, 0, 3]), ivec(&[12, 15, 9])),
            (ivec(&[1, 0, 0, 0]), ivec(&[0, 0, 0])),
            (ivec(&[0, 1, 0, 0]), ivec(&[0, 0, 0])),
            (ivec(&[0, 0, 1, 0]), ivec(&[0, 0, 0])),
        ];
        let map = fit_linear_map(&pairs).unwrap().expect("consistent pairs");
        assert_eq!(map, fixtures::projection_map());
    }

    #[test]
    fn fit_identity_and_inconsistent() {
        let pairs = vec![
            (ivec(&[1, 0]), ivec(&[1, 0])),
            (ivec(&[0, 1]), ivec(&[0, 1])),
        ];
        let map = fit_linear_map(&pairs).unwrap().expect("identity fits");
        assert_eq!(map.matrix, RatMatrix::identity(2));
        // A linear map on one variable sends 2 to twice the image of 1.
        let bad = vec![(ivec(&[1]), ivec(&[1])), (ivec(&[2]), ivec(&[3]))];
        assert_eq!(fit_linear_map(&bad).unwrap(), None);
    }

    #[test]
    fn degenerate_lift_detected() {
        let q = fixtures::lifted_q_hrep();
        assert!(is_degenerate_ef(&q, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn non_degenerate_controls() {
        let graph = HPolyhedron::new(
            2,
            vec![
                LinRow::eq(ivec(&[1, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, -1]), Rat::zero()),
                LinRow::le(ivec(&[0, 1]), Rat::one()),
            ],
        )
        .unwrap();
        assert!(!is_degenerate_ef(&graph, &[0]).unwrap());

        // x <= 5 survives minimization, so the x-block stays referenced.
        let mixed = HPolyhedron::new(
            2,
            vec![
                LinRow::le(ivec(&[1, 0]), Rat::from_int(5)),
                LinRow::le(ivec(&[1, 0]), Rat::from_int(7)),
                LinRow::le(ivec(&[0, -1]), Rat::from_int(-2)),
                LinRow::le(ivec(&[0, 1]), Rat::from_int(3)),
            ],
        )
        .unwrap();
        assert!(!is_degenerate_ef(&mixed, &[0]).unwrap());
    }

    #[test]
    fn counting_conventions() {
        let q = fixtures::lifted_q_hrep();
        assert_eq!(
            count_inequalities(&q, CountConvention::EqAsTwo),
            RowCount::Total(2)
        );
        let p = fixtures::segment_p_hrep();
        assert_eq!(
            count_inequalities(&p, CountConvention::EqAsTwo),
            RowCount::Total(10)
        );
        assert_eq!(
            count_inequalities(&p, CountConvention::EqSeparate),
            RowCount::Split {
                inequalities: 8,
                equalities: 1
            }
        );
        assert_eq!(
            count_inequalities(&HPolyhedron::space(3), CountConvention::EqAsTwo),
            RowCount::Total(0)
        );
    }
}
