//! Dense matrices of exact rationals and the elimination kernels built on
//! them: multiplication, linear solving with a full solution-structure
//! verdict, Gram-matrix inversion, and fraction-free rank.

use crate::error::{Error, Result};
use crate::rat::{dot, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;
use std::ops::{Index, IndexMut};

/// A row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer literals; test and fixture convenience.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rat::from_int(n)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    /// A single column from a vector.
    pub fn column(v: &[Rat]) -> Self {
        RatMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Exact rank via Bareiss fraction-free elimination over integers.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Clear denominators row by row; scaling rows does not change rank.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::from(1), |acc, e| acc.lcm(e.denom()));
                row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::from(1);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pivot);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        r
    }

    /// Exact inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !work[(i, col)].is_zero())?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = work[(col, col)].clone();
            work.scale_row(col, &p.recip());
            inv.scale_row(col, &p.recip());
            for i in 0..n {
                if i != col && !work[(i, col)].is_zero() {
                    let f = work[(i, col)].clone();
                    work.sub_scaled_row(i, col, &f);
                    inv.sub_scaled_row(i, col, &f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rat) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * c;
            self[(r, j)] = v;
        }
    }

    /// row[i] -= f * row[src]
    fn sub_scaled_row(&mut self, i: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = &self[(i, j)] - &(f * &self[(src, j)]);
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {}",
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        write!(f, "]")
    }
}

/// Structure of the solution set of `A x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolve {
    Unique(Vec<Rat>),
    NoSolution,
    Infinite {
        particular: Vec<Rat>,
        null_basis: Vec<Vec<Rat>>,
    },
}

/// Reduced row echelon form in place; returns the pivot column of each
/// eliminated row, in order.
fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        m.scale_row(r, &inv);
        for i in 0..m.rows() {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                m.sub_scaled_row(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `A x = rhs` exactly, reporting the full structure of the solution
/// set. The null basis vectors are primitive integer vectors with positive
/// leading entry.
pub fn solve_linear(a: &RatMatrix, rhs: &[Rat]) -> Result<LinSolve> {
    if a.rows() != rhs.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but rhs has {} entries",
            a.rows(),
            rhs.len()
        )));
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let pivots = rref(&mut aug);
    // A pivot in the rhs column means an inconsistent row 0 = 1.
    if pivots.last() == Some(&n) {
        return Ok(LinSolve::NoSolution);
    }
    let mut particular = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    if pivots.len() == n {
        return Ok(LinSolve::Unique(particular));
    }
    let pivot_set: Vec<bool> = {
        let mut set = vec![false; n];
        for &c in &pivots {
            set[c] = true;
        }
        set
    };
    let mut null_basis = Vec::new();
    for free in 0..n {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&aug[(r, free)];
        }
        make_primitive_signed(&mut v);
        null_basis.push(v);
    }
    Ok(LinSolve::Infinite {
        particular,
        null_basis,
    })
}

/// A canonical basis of the null space of `A` (primitive integer vectors,
/// positive leading entry, one per free column of the RREF).
pub fn null_space(a: &RatMatrix) -> Vec<Vec<Rat>> {
    match solve_linear(a, &vec![Rat::zero(); a.rows()]) {
        Ok(LinSolve::Infinite { null_basis, .. }) => null_basis,
        Ok(_) => Vec::new(),
        Err(_) => unreachable!("zero rhs always matches row count"),
    }
}

/// Verdict of inverting the Gram matrix `BᵀB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramInverse {
    Inverse(RatMatrix),
    Singular,
}

/// Exact inverse of `BᵀB`, or the `Singular` verdict.
pub fn gram_inverse(b: &RatMatrix) -> GramInverse {
    let bt = b.transpose();
    let gram = bt.mul(b).expect("transpose dimensions always agree");
    match gram.inverse() {
        Some(inv) => GramInverse::Inverse(inv),
        None => GramInverse::Singular,
    }
}

/// Scale a rational vector by a positive factor so that its entries are
/// coprime integers. The zero vector is left unchanged.
pub fn make_primitive(v: &mut [Rat]) {
    if v.iter().all(|e| e.is_zero()) {
        return;
    }
    let lcm = v.iter().fold(BigInt::from(1), |acc, e| acc.lcm(e.denom()));
    let mut gcd = BigInt::zero();
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|e| {
            let n = e.numer() * (&lcm / e.denom());
            gcd = gcd.gcd(&n);
            n
        })
        .collect();
    for (slot, n) in v.iter_mut().zip(scaled) {
        *slot = Rat::from_bigint(n / &gcd);
    }
}

/// Primitive integer form with the first nonzero entry positive.
pub fn make_primitive_signed(v: &mut [Rat]) {
    make_primitive(v);
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in v.iter_mut() {
                *e = -&*e;
            }
        }
    }
}
