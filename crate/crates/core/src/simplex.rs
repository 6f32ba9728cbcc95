//! Exact rational simplex.
//!
//! Two-phase method over a general H-polyhedron (equalities, inequalities,
//! free variables) with Bland's smallest-index rule for both the entering and
//! the leaving variable, which guarantees termination with exact arithmetic.
//! Free variables are split into nonnegative pairs, inequality rows get
//! slacks, and phase 1 starts from an all-artificial basis.

use crate::error::{Error, Result};
use crate::poly::{HPolyhedron, Rel};
use crate::rat::{dot, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpSense {
    Min,
    Max,
}

/// Outcome of an exact LP solve. At `Optimal` the point is a basic solution
/// of the standard-form program (a vertex of the split-variable polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rat>, value: Rat },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn optimal_point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

struct Tableau {
    /// Constraint rows over all columns (structural first, artificials last).
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize, red: &mut [Rat]) {
        let p = self.rows[row][col].clone();
        let p_inv = p.recip();
        for e in self.rows[row].iter_mut() {
            *e *= &p_inv;
        }
        self.rhs[row] *= &p_inv;
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for j in 0..self.rows[i].len() {
                let delta = &f * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
            let delta = &f * &self.rhs[row];
            self.rhs[i] -= delta;
        }
        if !red[col].is_zero() {
            let f = red[col].clone();
            for (slot, p) in red.iter_mut().zip(&self.rows[row]) {
                *slot -= &f * p;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule iteration: entering column restricted to `0..limit`.
    /// Returns `false` when the current basis is optimal, or errors with
    /// `Unbounded` sentinel via `None` row.
    fn bland_step(&mut self, red: &mut [Rat], limit: usize) -> StepResult {
        let Some(col) = (0..limit).find(|&j| red[j].is_negative()) else {
            return StepResult::Optimal;
        };
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..self.rows.len() {
            if !self.rows[i][col].is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &self.rows[i][col];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        match best {
            Some((row, _)) => {
                self.pivot(row, col, red);
                StepResult::Pivoted
            }
            None => StepResult::Unbounded,
        }
    }

    fn column_value(&self, col: usize) -> Rat {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.rhs[i].clone();
            }
        }
        Rat::zero()
    }
}

enum StepResult {
    Pivoted,
    Optimal,
    Unbounded,
}

/// Solve `optimize objective over h` exactly.
pub fn simplex_solve(h: &HPolyhedron, objective: &[Rat], sense: LpSense) -> Result<LpOutcome> {
    if objective.len() != h.dim {
        return Err(Error::DimensionMismatch(format!(
            "objective has {} entries for a {}-dimensional set",
            objective.len(),
            h.dim
        )));
    }
    let n = h.dim;
    let m = h.rows.len();
    let n_slack = h.rows.iter().filter(|r| r.rel == Rel::Le).count();
    let n_struct = 2 * n + n_slack;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut slack_idx = 0;
    for lin in &h.rows {
        let mut row = vec![Rat::zero(); n_struct + m];
        for (j, a) in lin.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a;
        }
        if lin.rel == Rel::Le {
            row[2 * n + slack_idx] = Rat::one();
            slack_idx += 1;
        }
        let mut b = lin.rhs.clone();
        if b.is_negative() {
            for e in row.iter_mut() {
                *e = -&*e;
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
    }
    // All-artificial starting basis.
    for (i, row) in rows.iter_mut().enumerate() {
        row[n_struct + i] = Rat::one();
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n_struct..n_struct + m).collect(),
    };

    // Phase 1: minimize the sum of artificials. Reduced costs of the
    // structural columns start at -(column sum); artificials at zero.
    let mut red = vec![Rat::zero(); n_struct + m];
    for j in 0..n_struct {
        red[j] = -t.rows.iter().map(|r| &r[j]).sum::<Rat>();
    }
    loop {
        match t.bland_step(&mut red, n_struct) {
            StepResult::Pivoted => continue,
            StepResult::Optimal => break,
            StepResult::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        }
    }
    let infeasibility: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= n_struct)
        .map(|(_, v)| v.clone())
        .sum();
    if !infeasibility.is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    // Pivot remaining zero-level artificials out of the basis; rows whose
    // structural part vanished are redundant and get dropped.
    let mut drop_rows = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] < n_struct {
            continue;
        }
        match (0..n_struct).find(|&j| !t.rows[i][j].is_zero()) {
            Some(col) => t.pivot(i, col, &mut red),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.rhs.remove(i);
        t.basis.remove(i);
    }
    for row in t.rows.iter_mut() {
        row.truncate(n_struct);
    }

    // Phase 2 over the structural columns only.
    let minimize: Vec<Rat> = match sense {
        LpSense::Min => objective.to_vec(),
        LpSense::Max => objective.iter().map(|c| -c).collect(),
    };
    let mut cost = vec![Rat::zero(); n_struct];
    for j in 0..n {
        cost[j] = minimize[j].clone();
        cost[n + j] = -&minimize[j];
    }
    let mut red = vec![Rat::zero(); n_struct];
    for j in 0..n_struct {
        let basic_part: Rat = t
            .basis
            .iter()
            .zip(&t.rows)
            .map(|(&b, row)| &cost[b] * &row[j])
            .sum();
        red[j] = &cost[j] - &basic_part;
    }
    loop {
        match t.bland_step(&mut red, n_struct) {
            StepResult::Pivoted => continue,
            StepResult::Optimal => break,
            StepResult::Unbounded => return Ok(LpOutcome::Unbounded),
        }
    }
    let point: Vec<Rat> = (0..n)
        .map(|j| t.column_value(j) - t.column_value(n + j))
        .collect();
    let value = dot(objective, &point);
    debug_assert!(
        h.contains(&point).unwrap_or(false),
        "optimum must be feasible"
    );
    Ok(LpOutcome::Optimal { point, value })
}

/// Phase-1 feasibility for an equality system `A z = b` whose first
/// `n_nonneg` variables are sign-restricted and whose remaining variables are
/// free. This is the shape of every generator-combination query (convex,
/// conic, linear weights), and solving it directly keeps those tableaus at
/// `rows x variables` instead of the blow-up a general-form encoding causes.
pub(crate) fn eq_system_feasible(rows: &[Vec<Rat>], rhs: &[Rat], n_nonneg: usize) -> bool {
    assert_eq!(rows.len(), rhs.len(), "row/rhs mismatch");
    let total_vars = rows.first().map_or(0, |r| r.len());
    debug_assert!(rows.iter().all(|r| r.len() == total_vars));
    debug_assert!(n_nonneg <= total_vars);
    let n_free = total_vars - n_nonneg;
    let n_struct = n_nonneg + 2 * n_free;
    let m = rows.len();

    let mut t_rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut t_rhs: Vec<Rat> = Vec::with_capacity(m);
    for (row, b) in rows.iter().zip(rhs) {
        let mut out = vec![Rat::zero(); n_struct + m];
        out[..n_nonneg].clone_from_slice(&row[..n_nonneg]);
        for (j, a) in row[n_nonneg..].iter().enumerate() {
            out[n_nonneg + 2 * j] = a.clone();
            out[n_nonneg + 2 * j + 1] = -a;
        }
        let mut b = b.clone();
        if b.is_negative() {
            for e in out.iter_mut() {
                *e = -&*e;
            }
            b = -b;
        }
        t_rows.push(out);
        t_rhs.push(b);
    }
    for (i, row) in t_rows.iter_mut().enumerate() {
        row[n_struct + i] = Rat::one();
    }
    let mut t = Tableau {
        rows: t_rows,
        rhs: t_rhs,
        basis: (n_struct..n_struct + m).collect(),
    };
    let mut red = vec![Rat::zero(); n_struct + m];
    for j in 0..n_struct {
        red[j] = -t.rows.iter().map(|r| &r[j]).sum::<Rat>();
    }
    loop {
        match t.bland_step(&mut red, n_struct) {
            StepResult::Pivoted => continue,
            StepResult::Optimal => break,
            StepResult::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        }
    }
    t.basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= n_struct)
        .map(|(_, v)| v.clone())
        .sum::<Rat>()
        .is_zero()
}

/// A feasible point of `h`, if one exists (phase 1 only).
pub fn feasible_point(h: &HPolyhedron) -> Option<Vec<Rat>> {
    let zero = vec![Rat::zero(); h.dim];
    match simplex_solve(h, &zero, LpSense::Min).expect("zero objective matches dimension") {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}
