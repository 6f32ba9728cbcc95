//! Double description vertex enumeration.
//!
//! Equality rows are removed first by substituting the solution set of the
//! equality subsystem (particular point plus null-space basis), so the cone
//! phase only sees inequalities in the reduced coordinates. The reduced
//! polyhedron is homogenized with one extra coordinate `s`, the double
//! description iteration maintains an explicit lineality basis alongside the
//! extreme rays, and rays with `s > 0` scale back to vertices.

use super::canon;
use super::{Generators, HPolyhedron, Rel, VPolyhedron};
use crate::matrix::{make_primitive, solve_linear, LinSolve, RatMatrix};
use crate::rat::{dot, Rat};

/// Bit set over constraint indices.
#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
    count: usize,
}

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
            count: 0,
        }
    }

    fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        if self.words[w] & (1 << (i % 64)) == 0 {
            self.words[w] |= 1 << (i % 64);
            self.count += 1;
        }
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        let len = self.words.len().min(other.words.len());
        let mut words = Vec::with_capacity(len);
        let mut count = 0;
        for i in 0..len {
            let w = self.words[i] & other.words[i];
            count += w.count_ones() as usize;
            words.push(w);
        }
        BitSet { words, count }
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        for (i, w) in self.words.iter().enumerate() {
            let o = other.words.get(i).copied().unwrap_or(0);
            if w & !o != 0 {
                return false;
            }
        }
        true
    }
}

struct Ray {
    vec: Vec<Rat>,
    zero: BitSet,
}

/// Double description state for the cone `{ z : m · z >= 0 for processed m }`.
struct ConeDd {
    dim: usize,
    processed: Vec<Vec<Rat>>,
    /// Lineality basis in reduced row echelon form, primitive rows.
    lineality: Vec<Vec<Rat>>,
    lin_pivots: Vec<usize>,
    rays: Vec<Ray>,
    total_constraints: usize,
}

impl ConeDd {
    fn new(dim: usize, total_constraints: usize) -> Self {
        let mut lineality = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            lineality.push(e);
        }
        ConeDd {
            dim,
            processed: Vec::new(),
            lineality,
            lin_pivots: (0..dim).collect(),
            rays: Vec::new(),
            total_constraints,
        }
    }

    fn reduce_mod_lineality(&self, v: &mut [Rat]) {
        for (row, &p) in self.lineality.iter().zip(&self.lin_pivots) {
            if !v[p].is_zero() {
                let f = &v[p] / &row[p];
                for (slot, e) in v.iter_mut().zip(row) {
                    *slot -= &f * e;
                }
            }
        }
    }

    fn rebuild_lineality(&mut self, vectors: Vec<Vec<Rat>>) {
        let m = RatMatrix::from_rows(vectors).expect("lineality vectors share dim");
        let (rows, pivots) = rref_rows(&m);
        self.lineality = rows;
        self.lin_pivots = pivots;
    }

    fn add_constraint(&mut self, m: Vec<Rat>) {
        let lin_evals: Vec<Rat> = self.lineality.iter().map(|l| dot(&m, l)).collect();
        if let Some(idx) = lin_evals.iter().position(|e| !e.is_zero()) {
            self.split_lineality(idx, &m);
        } else {
            self.combine_rays(&m);
        }
        self.processed.push(m);
        // Zero sets are recomputed against the full processed list so that
        // incidental zeros of freshly adjusted rays are never missed.
        for ray in self.rays.iter_mut() {
            ray.zero = BitSet::with_capacity(self.total_constraints);
        }
        let vecs: Vec<Vec<Rat>> = self.rays.iter().map(|r| r.vec.clone()).collect();
        for (ray, vec) in self.rays.iter_mut().zip(vecs) {
            for (i, c) in self.processed.iter().enumerate() {
                if dot(c, &vec).is_zero() {
                    ray.zero.insert(i);
                }
            }
        }
    }

    /// The new halfspace cuts the lineality space: one basis vector becomes
    /// the single ray off the hyperplane, everything else is projected onto
    /// the hyperplane.
    fn split_lineality(&mut self, idx: usize, m: &[Rat]) {
        let mut l0 = self.lineality.remove(idx);
        self.lin_pivots.remove(idx);
        let e0 = dot(m, &l0);
        if e0.is_negative() {
            for e in l0.iter_mut() {
                *e = -&*e;
            }
        }
        let e0 = dot(m, &l0);
        let remaining: Vec<Vec<Rat>> = self
            .lineality
            .iter()
            .map(|l| {
                let f = dot(m, l) / &e0;
                l.iter().zip(&l0).map(|(a, b)| a - &(&f * b)).collect()
            })
            .collect();
        if remaining.is_empty() {
            self.lineality.clear();
            self.lin_pivots.clear();
        } else {
            self.rebuild_lineality(remaining);
        }
        let mut new_rays: Vec<Vec<Rat>> = Vec::with_capacity(self.rays.len() + 1);
        for ray in &self.rays {
            let f = dot(m, &ray.vec) / &e0;
            new_rays.push(
                ray.vec
                    .iter()
                    .zip(&l0)
                    .map(|(a, b)| a - &(&f * b))
                    .collect(),
            );
        }
        new_rays.push(l0);
        self.rays = self.normalize_rays(new_rays);
    }

    /// Standard double description step: keep rays on the feasible side,
    /// combine adjacent infeasible/feasible pairs on the hyperplane.
    fn combine_rays(&mut self, m: &[Rat]) {
        let evals: Vec<Rat> = self.rays.iter().map(|r| dot(m, &r.vec)).collect();
        let neg: Vec<usize> = (0..self.rays.len())
            .filter(|&i| evals[i].is_negative())
            .collect();
        if neg.is_empty() {
            return;
        }
        let pos: Vec<usize> = (0..self.rays.len())
            .filter(|&i| evals[i].is_positive())
            .collect();
        let quotient_dim = self.dim - self.lineality.len();
        let mut combined: Vec<Vec<Rat>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = self.rays[p].zero.intersection(&self.rays[n].zero);
                // Necessary rank bound for adjacency in the pointed quotient.
                if quotient_dim >= 2 && common.count + 2 < quotient_dim {
                    continue;
                }
                let adjacent = self
                    .rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.is_subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let w: Vec<Rat> = self.rays[n]
                    .vec
                    .iter()
                    .zip(&self.rays[p].vec)
                    .map(|(nv, pv)| &evals[p] * nv - &evals[n] * pv)
                    .collect();
                combined.push(w);
            }
        }
        let mut kept: Vec<Vec<Rat>> = (0..self.rays.len())
            .filter(|i| !evals[*i].is_negative())
            .map(|i| self.rays[i].vec.clone())
            .collect();
        kept.extend(combined);
        self.rays = self.normalize_rays(kept);
    }

    /// Reduce modulo lineality, scale primitive, and deduplicate. Zero sets
    /// are filled in by `add_constraint`.
    fn normalize_rays(&self, vecs: Vec<Vec<Rat>>) -> Vec<Ray> {
        let mut out: Vec<Ray> = Vec::with_capacity(vecs.len());
        for mut v in vecs {
            self.reduce_mod_lineality(&mut v);
            make_primitive(&mut v);
            if v.iter().all(|e| e.is_zero()) {
                continue;
            }
            if out.iter().any(|r| r.vec == v) {
                continue;
            }
            out.push(Ray {
                vec: v,
                zero: BitSet::with_capacity(self.total_constraints),
            });
        }
        out
    }
}

/// Reduced row echelon form returned as primitive rows plus pivot columns.
fn rref_rows(m: &RatMatrix) -> (Vec<Vec<Rat>>, Vec<usize>) {
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

/// Canonical generator form of the solution set of `h`.
pub fn enumerate_generators(h: &HPolyhedron) -> Generators {
    let dim = h.dim;
    let eq_rows: Vec<_> = h.rows.iter().filter(|r| r.rel == Rel::Eq).collect();
    let ineq_rows: Vec<_> = h.rows.iter().filter(|r| r.rel == Rel::Le).collect();

    // Substitute the equality subsystem away: x = origin + basis * t.
    let (origin, basis): (Vec<Rat>, Vec<Vec<Rat>>) = if eq_rows.is_empty() {
        let identity = (0..dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = Rat::one();
                e
            })
            .collect();
        (vec![Rat::zero(); dim], identity)
    } else {
        let a = RatMatrix::from_rows(eq_rows.iter().map(|r| r.coeffs.clone()).collect())
            .expect("equality rows share the dimension");
        let rhs: Vec<Rat> = eq_rows.iter().map(|r| r.rhs.clone()).collect();
        match solve_linear(&a, &rhs).expect("rhs length matches rows") {
            LinSolve::NoSolution => return Generators::Empty { dim },
            LinSolve::Unique(x0) => {
                if ineq_rows.iter().all(|r| r.satisfied_by(&x0)) {
                    return Generators::NonEmpty(VPolyhedron::point(x0));
                }
                return Generators::Empty { dim };
            }
            LinSolve::Infinite {
                particular,
                null_basis,
            } => (particular, null_basis),
        }
    };

    let t_dim = basis.len();
    // Reduced inequality rows over t, then homogenized: a' · t <= b' becomes
    // (-a', b') · (t, s) >= 0 with the extra constraint s >= 0 first.
    let mut constraints: Vec<Vec<Rat>> = Vec::with_capacity(ineq_rows.len() + 1);
    let mut s_row = vec![Rat::zero(); t_dim + 1];
    s_row[t_dim] = Rat::one();
    constraints.push(s_row);
    for row in &ineq_rows {
        let mut c: Vec<Rat> = (0..t_dim).map(|j| -dot(&row.coeffs, &basis[j])).collect();
        c.push(&row.rhs - &dot(&row.coeffs, &origin));
        constraints.push(c);
    }

    let total = constraints.len();
    let mut cone = ConeDd::new(t_dim + 1, total);
    for c in constraints {
        cone.add_constraint(c);
    }

    // Pull the polyhedron out of the cone: s > 0 rays are vertices, s = 0
    // rays stay rays, the cone lineality is the lineality.
    let mut t_vertices: Vec<Vec<Rat>> = Vec::new();
    let mut t_rays: Vec<Vec<Rat>> = Vec::new();
    for ray in &cone.rays {
        let s = &ray.vec[t_dim];
        debug_assert!(
            !s.is_negative(),
            "homogenization coordinate stays nonnegative"
        );
        if s.is_positive() {
            let inv = s.recip();
            t_vertices.push(ray.vec[..t_dim].iter().map(|e| e * &inv).collect());
        } else {
            t_rays.push(ray.vec[..t_dim].to_vec());
        }
    }
    if t_vertices.is_empty() {
        return Generators::Empty { dim };
    }
    let t_lineality: Vec<Vec<Rat>> = cone
        .lineality
        .iter()
        .map(|l| {
            debug_assert!(l[t_dim].is_zero(), "lineality is orthogonal to s >= 0");
            l[..t_dim].to_vec()
        })
        .collect();

    let lift = |t: &[Rat], affine: bool| -> Vec<Rat> {
        (0..dim)
            .map(|d| {
                let mut x = if affine {
                    origin[d].clone()
                } else {
                    Rat::zero()
                };
                for (j, b) in basis.iter().enumerate() {
                    x += &t[j] * &b[d];
                }
                x
            })
            .collect()
    };
    let vertices: Vec<Vec<Rat>> = t_vertices.iter().map(|t| lift(t, true)).collect();
    let rays: Vec<Vec<Rat>> = t_rays.iter().map(|t| lift(t, false)).collect();
    let lineality: Vec<Vec<Rat>> = t_lineality.iter().map(|t| lift(t, false)).collect();

    Generators::NonEmpty(canon::assemble(dim, vertices, rays, lineality))
}
