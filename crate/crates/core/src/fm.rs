//! Fourier–Motzkin projection onto coordinate subsets.
//!
//! Equality rows are used for substitution first; remaining variables are
//! eliminated by pairing rows of opposite sign, choosing at each step the
//! variable with the fewest positive-negative pairs. After every elimination
//! the system is pruned pairwise: rows are scaled to primitive coefficient
//! vectors, trivially true rows are dropped, and parallel rows keep only the
//! tightest right-hand side. Exactness is preserved throughout.

use crate::error::{Error, Result};
use crate::matrix::{make_primitive, make_primitive_signed};
use crate::poly::{HPolyhedron, LinRow, Rel, VPolyhedron};
use crate::rat::Rat;
use std::collections::BTreeMap;

/// Validate and normalize a coordinate subset: sorted, deduplicated.
fn checked_keep(dim: usize, keep: &[usize]) -> Result<Vec<usize>> {
    let mut k: Vec<usize> = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    for &c in &k {
        if c >= dim {
            return Err(Error::CoordinateOutOfRange { index: c, dim });
        }
    }
    Ok(k)
}

enum Pruned {
    Rows(Vec<LinRow>),
    Infeasible,
}

/// Primitive scaling of the coefficient vector (sign-preserving for `<=`,
/// sign-canonical for `=`), trivial-row elimination, and parallel-row
/// tightening.
fn prune(rows: Vec<LinRow>) -> Pruned {
    let mut le_best: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
    let mut eq_best: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
    let mut le_order: Vec<Vec<Rat>> = Vec::new();
    let mut eq_order: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        if row.coeffs.iter().all(|c| c.is_zero()) {
            let feasible = match row.rel {
                Rel::Le => !row.rhs.is_negative(),
                Rel::Eq => row.rhs.is_zero(),
            };
            if feasible {
                continue;
            }
            return Pruned::Infeasible;
        }
        let mut coeffs = row.coeffs.clone();
        let mut rhs = row.rhs.clone();
        match row.rel {
            Rel::Le => {
                // Positive scaling only: find the factor from the coefficients
                // and apply it to the right-hand side as well.
                let mut probe = coeffs.clone();
                make_primitive(&mut probe);
                let witness = coeffs
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("nonzero row");
                let factor = &probe[witness] / &coeffs[witness];
                coeffs = probe;
                rhs *= &factor;
            }
            Rel::Eq => {
                let mut probe = coeffs.clone();
                make_primitive_signed(&mut probe);
                let witness = coeffs
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("nonzero row");
                let factor = &probe[witness] / &coeffs[witness];
                coeffs = probe;
                rhs *= &factor;
            }
        }
        match row.rel {
            Rel::Le => match le_best.get_mut(&coeffs) {
                Some(best) => {
                    if rhs < *best {
                        *best = rhs;
                    }
                }
                None => {
                    le_order.push(coeffs.clone());
                    le_best.insert(coeffs, rhs);
                }
            },
            Rel::Eq => match eq_best.get(&coeffs) {
                Some(existing) => {
                    if *existing != rhs {
                        return Pruned::Infeasible;
                    }
                }
                None => {
                    eq_order.push(coeffs.clone());
                    eq_best.insert(coeffs, rhs);
                }
            },
        }
    }
    let mut out = Vec::new();
    for key in eq_order {
        let rhs = eq_best.remove(&key).expect("recorded key");
        out.push(LinRow::eq(key, rhs));
    }
    for key in le_order {
        let rhs = le_best.remove(&key).expect("recorded key");
        out.push(LinRow::le(key, rhs));
    }
    Pruned::Rows(out)
}

/// Exact coordinate projection: the resulting system over the kept
/// coordinates describes `{ x_keep : exists rest, x in h }`.
pub fn fourier_motzkin(h: &HPolyhedron, keep: &[usize]) -> Result<HPolyhedron> {
    let keep = checked_keep(h.dim, keep)?;
    let keep_set: Vec<bool> = {
        let mut s = vec![false; h.dim];
        for &c in &keep {
            s[c] = true;
        }
        s
    };
    let mut elim: Vec<usize> = (0..h.dim).filter(|&c| !keep_set[c]).collect();
    let mut rows = h.rows.clone();

    let finish = |rows: Vec<LinRow>| -> HPolyhedron {
        let mut out_rows: Vec<LinRow> = rows
            .into_iter()
            .map(|r| {
                debug_assert!(
                    r.coeffs
                        .iter()
                        .enumerate()
                        .all(|(c, v)| keep_set[c] || v.is_zero()),
                    "eliminated coordinates keep zero coefficients"
                );
                LinRow {
                    coeffs: keep.iter().map(|&c| r.coeffs[c].clone()).collect(),
                    rel: r.rel,
                    rhs: r.rhs,
                }
            })
            .collect();
        out_rows.sort_by(|a, b| (a.rel, &a.coeffs, &a.rhs).cmp(&(b.rel, &b.coeffs, &b.rhs)));
        let mut out = HPolyhedron::new(keep.len(), out_rows).expect("projected rows fit");
        if let Some(names) = &h.coord_names {
            out.coord_names = Some(keep.iter().map(|&c| names[c].clone()).collect());
        }
        out
    };

    match prune(rows) {
        Pruned::Rows(r) => rows = r,
        Pruned::Infeasible => return Ok(HPolyhedron::empty(keep.len())),
    }

    while !elim.is_empty() {
        // Substitution through an equality row when one mentions a doomed
        // variable.
        let subst = elim.iter().copied().find_map(|var| {
            rows.iter()
                .position(|r| r.rel == Rel::Eq && !r.coeffs[var].is_zero())
                .map(|idx| (var, idx))
        });
        if let Some((var, idx)) = subst {
            let pivot = rows.remove(idx);
            for row in rows.iter_mut() {
                if row.coeffs[var].is_zero() {
                    continue;
                }
                let f = &row.coeffs[var] / &pivot.coeffs[var];
                for (slot, p) in row.coeffs.iter_mut().zip(&pivot.coeffs) {
                    *slot -= &f * p;
                }
                row.rhs -= &f * &pivot.rhs;
            }
            elim.retain(|&c| c != var);
        } else {
            // All equality rows are clear of doomed variables; eliminate the
            // inequality variable with the fewest sign pairs.
            let var = *elim
                .iter()
                .min_by_key(|&&v| {
                    let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                    let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                    (pos * neg, v)
                })
                .expect("nonempty elimination set");
            let mut kept: Vec<LinRow> = Vec::new();
            let mut pos: Vec<LinRow> = Vec::new();
            let mut neg: Vec<LinRow> = Vec::new();
            for row in rows {
                if row.coeffs[var].is_zero() {
                    kept.push(row);
                } else if row.coeffs[var].is_positive() {
                    pos.push(row);
                } else {
                    neg.push(row);
                }
            }
            for p in &pos {
                for n in &neg {
                    let pc = &p.coeffs[var];
                    let nc = &n.coeffs[var]; // negative
                    let coeffs: Vec<Rat> = p
                        .coeffs
                        .iter()
                        .zip(&n.coeffs)
                        .map(|(a, b)| pc * b - nc * a)
                        .collect();
                    let rhs = pc * &n.rhs - nc * &p.rhs;
                    kept.push(LinRow::le(coeffs, rhs));
                }
            }
            rows = kept;
            elim.retain(|&c| c != var);
        }
        match prune(rows) {
            Pruned::Rows(r) => rows = r,
            Pruned::Infeasible => return Ok(HPolyhedron::empty(keep.len())),
        }
    }
    Ok(finish(rows))
}

/// Generator-side projection: drop coordinates, then re-canonicalize.
pub fn project_v(v: &VPolyhedron, keep: &[usize]) -> Result<VPolyhedron> {
    let keep = checked_keep(v.dim, keep)?;
    let take = |g: &Vec<Rat>| -> Vec<Rat> { keep.iter().map(|&c| g[c].clone()).collect() };
    let projected = VPolyhedron {
        dim: keep.len(),
        vertices: v.vertices.iter().map(take).collect(),
        rays: v.rays.iter().map(take).collect(),
        lineality: v.lineality.iter().map(take).collect(),
    };
    Ok(projected.canonical())
}
