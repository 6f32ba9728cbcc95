//! Canonical V-representations.
//!
//! Canonical form: the lineality space is a reduced-row-echelon primitive
//! basis; vertices and rays are reduced modulo the lineality space (their
//! pivot coordinates zeroed); rays are primitive integer vectors; all three
//! lists are minimal and lexicographically sorted.

use super::{combination_exists, VPolyhedron};
use crate::matrix::{make_primitive, RatMatrix};
use crate::rat::Rat;

/// Lineality basis in RREF with primitive rows; returns rows plus pivots.
fn lineality_basis(lines: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    if lines.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let m = RatMatrix::from_rows(lines.to_vec()).expect("lineality rows share dim");
    let mut work: Vec<Vec<Rat>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == work.len() {
            break;
        }
        let Some(p) = (r..work.len()).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        let inv = work[r][c].recip();
        for e in work[r].iter_mut() {
            *e *= &inv;
        }
        let pivot_row = work[r].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (slot, p) in row.iter_mut().zip(&pivot_row) {
                    *slot -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    work.truncate(r);
    for row in work.iter_mut() {
        make_primitive(row);
    }
    (work, pivots)
}

fn reduce_mod(basis: &[Vec<Rat>], pivots: &[usize], v: &mut [Rat]) {
    for (row, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = &v[p] / &row[p];
            for (slot, e) in v.iter_mut().zip(row) {
                *slot -= &f * e;
            }
        }
    }
}

fn dedup_sorted(mut list: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    list.sort();
    list.dedup();
    list
}

/// Normalization-only canonical assembly: reduce modulo lineality, scale rays
/// primitive, deduplicate, sort. Correct as the final step whenever the
/// generators are already minimal (double description output).
pub(super) fn assemble(
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
    lineality: Vec<Vec<Rat>>,
) -> VPolyhedron {
    let (basis, pivots) = lineality_basis(&lineality);
    let vertices = dedup_sorted(
        vertices
            .into_iter()
            .map(|mut v| {
                reduce_mod(&basis, &pivots, &mut v);
                v
            })
            .collect(),
    );
    let rays = dedup_sorted(
        rays.into_iter()
            .filter_map(|mut r| {
                reduce_mod(&basis, &pivots, &mut r);
                make_primitive(&mut r);
                if r.iter().all(|e| e.is_zero()) {
                    None
                } else {
                    Some(r)
                }
            })
            .collect(),
    );
    let lineality = dedup_sorted(basis);
    VPolyhedron {
        dim,
        vertices,
        rays,
        lineality,
    }
}

/// Full canonicalization of an arbitrary generator list: detect hidden
/// lineality (rays whose opposite is also in the recession cone), drop
/// redundant rays and vertices with LP certificates, then assemble.
pub fn canonicalize(v: &VPolyhedron) -> VPolyhedron {
    let mut lineality = v.lineality.clone();
    let mut rays = v.rays.clone();

    // A ray whose negation is still in the recession cone spans a line of
    // the set; move it into the lineality space and rescan.
    loop {
        let mut moved = false;
        for i in 0..rays.len() {
            let neg: Vec<Rat> = rays[i].iter().map(|e| -e).collect();
            let all_rays: Vec<&Vec<Rat>> = rays.iter().collect();
            if combination_exists(&neg, &[], &all_rays, &lineality) {
                lineality.push(rays.remove(i));
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }

    let normalized = assemble(v.dim, v.vertices.clone(), rays, lineality);
    let lineality = normalized.lineality;
    let mut rays = normalized.rays;
    let mut vertices = normalized.vertices;

    // Greedy minimal ray set: drop any ray generated by the others.
    let mut i = 0;
    while i < rays.len() {
        let others: Vec<&Vec<Rat>> = rays
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, r)| r)
            .collect();
        if combination_exists(&rays[i], &[], &others, &lineality) {
            rays.remove(i);
        } else {
            i += 1;
        }
    }

    // Greedy minimal vertex set: drop any vertex reachable from the others.
    let mut i = 0;
    while i < vertices.len() {
        if vertices.len() == 1 {
            break;
        }
        let others: Vec<&Vec<Rat>> = vertices
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v)
            .collect();
        let ray_refs: Vec<&Vec<Rat>> = rays.iter().collect();
        if combination_exists(&vertices[i], &others, &ray_refs, &lineality) {
            vertices.remove(i);
        } else {
            i += 1;
        }
    }

    assemble(v.dim, vertices, rays, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ivec;

    #[test]
    fn interior_vertex_dropped() {
        let v =
            VPolyhedron::new(1, vec![ivec(&[0]), ivec(&[1]), ivec(&[2])], vec![], vec![]).unwrap();
        let c = canonicalize(&v);
        assert_eq!(c.vertices, vec![ivec(&[0]), ivec(&[2])]);
    }

    #[test]
    fn opposite_rays_become_lineality() {
        let v = VPolyhedron::new(
            2,
            vec![ivec(&[0, 0])],
            vec![ivec(&[1, 0]), ivec(&[-1, 0])],
            vec![],
        )
        .unwrap();
        let c = canonicalize(&v);
        assert!(c.rays.is_empty());
        assert_eq!(c.lineality, vec![ivec(&[1, 0])]);
    }

    #[test]
    fn redundant_ray_dropped() {
        // The diagonal is a combination of the two axis rays.
        let v = VPolyhedron::new(
            2,
            vec![ivec(&[0, 0])],
            vec![ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1])],
            vec![],
        )
        .unwrap();
        let c = canonicalize(&v);
        assert_eq!(c.rays, vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn vertices_reduced_modulo_lineality() {
        let v = VPolyhedron::new(
            2,
            vec![ivec(&[3, 2]), ivec(&[7, 5])],
            vec![],
            vec![ivec(&[1, 0])],
        )
        .unwrap();
        let c = canonicalize(&v);
        // After zeroing the first coordinate both vertices collapse by x2.
        assert_eq!(c.vertices, vec![ivec(&[0, 2]), ivec(&[0, 5])]);
        assert_eq!(c.lineality, vec![ivec(&[1, 0])]);
    }

    #[test]
    fn vertex_on_ray_dropped() {
        let v =
            VPolyhedron::new(1, vec![ivec(&[0]), ivec(&[5])], vec![ivec(&[1])], vec![]).unwrap();
        let c = canonicalize(&v);
        assert_eq!(c.vertices, vec![ivec(&[0])]);
        assert_eq!(c.rays, vec![ivec(&[1])]);
    }
}
