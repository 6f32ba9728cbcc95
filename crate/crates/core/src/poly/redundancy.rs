//! Minimal H-descriptions.
//!
//! Every dropped row is certified redundant by an exact LP over the remaining
//! rows, and inequality rows that hold with equality across the whole set are
//! detected first and rewritten as equality rows.

use super::{HPolyhedron, Rel};
use crate::error::{Error, Result};
use crate::simplex::{simplex_solve, LpOutcome, LpSense};

/// Minimal subsystem defining the same set. Implied equalities become `=`
/// rows; surviving rows keep their original order and orientation.
pub fn remove_redundancy(h: &HPolyhedron) -> Result<HPolyhedron> {
    let mut current = h.clone();
    if current.is_empty_set() {
        return Err(Error::EmptyPolyhedron);
    }

    // An inequality a·x <= b is an implied equality when min a·x over the
    // whole set already equals b.
    for i in 0..current.rows.len() {
        if current.rows[i].rel != Rel::Le {
            continue;
        }
        let coeffs = current.rows[i].coeffs.clone();
        let outcome = simplex_solve(&current, &coeffs, LpSense::Min)?;
        if let LpOutcome::Optimal { value, .. } = outcome {
            if value == current.rows[i].rhs {
                current.rows[i].rel = Rel::Eq;
            }
        }
    }

    // Drop rows one at a time when the remaining system already enforces
    // them; each removal is certified by optimizing the row over the rest.
    let mut i = 0;
    while i < current.rows.len() {
        let mut rest = current.clone();
        let row = rest.rows.remove(i);
        let max = simplex_solve(&rest, &row.coeffs, LpSense::Max)?;
        let redundant = match row.rel {
            Rel::Le => matches!(&max, LpOutcome::Optimal { value, .. } if *value <= row.rhs),
            Rel::Eq => {
                let upper_tight =
                    matches!(&max, LpOutcome::Optimal { value, .. } if *value <= row.rhs);
                if upper_tight {
                    let min = simplex_solve(&rest, &row.coeffs, LpSense::Min)?;
                    matches!(&min, LpOutcome::Optimal { value, .. } if *value >= row.rhs)
                } else {
                    false
                }
            }
        };
        if redundant {
            current = rest;
        } else {
            i += 1;
        }
    }
    Ok(current)
}
