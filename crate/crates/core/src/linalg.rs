//! Dense exact matrices over the rationals.
//!
//! Row reduction clears denominators once and then eliminates over the
//! integers, dividing each updated row by its content to keep entries small.
//! Rationals only reappear when pivot rows are normalised at the end.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::element::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row-echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Why `A x = b` has no unique solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    Inconsistent,
    Underdetermined,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_columns(columns: Vec<Vec<Rational>>, rows: usize) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.into_iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {} rows",
                    c.len(),
                    rows
                )));
            }
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.first().map(|m| m.rows).unwrap_or(0);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, offset + j, p.get(i, j).clone());
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    pub fn echelon(&self) -> Echelon {
        let rows: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Echelon::of_rows(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.echelon().nullspace()
    }

    /// The unique `X` with `self * X = rhs`.
    pub fn solve(&self, rhs: &Matrix) -> std::result::Result<Matrix, SolveFailure> {
        assert_eq!(self.rows, rhs.rows, "solve: row counts differ");
        let aug = Matrix::hstack(&[self, rhs]).expect("row counts checked");
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Err(SolveFailure::Inconsistent);
        }
        if ech.pivots.len() < self.cols {
            return Err(SolveFailure::Underdetermined);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            for j in 0..rhs.cols {
                x.set(p, j, row[self.cols + j].clone());
            }
        }
        Ok(x)
    }

    /// Inverse of a square matrix, if it is nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Matrix::identity(self.rows)).ok()
    }
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

impl Echelon {
    /// Fraction-free Gauss-Jordan reduction of the given rows.
    pub fn of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
        let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| to_integer_row(r)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == m.len() {
                break;
            }
            // smallest nonzero entry keeps intermediate growth down
            let Some(p) = (rank..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
            else {
                continue;
            };
            m.swap(rank, p);
            make_primitive(&mut m[rank]);
            let pivot_row = m[rank].clone();
            let pv = pivot_row[col].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &pv - &f * y;
                }
                make_primitive(row);
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        let rows = m
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let pv = row[p].clone();
                row.into_iter()
                    .map(|v| Rational::new(v, pv.clone()))
                    .collect()
            })
            .collect();
        Echelon { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }

    /// Coordinates of `v` with respect to the echelon rows, if `v` lies in their span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(row) {
                *r -= c * x;
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
