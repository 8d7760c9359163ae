//! Exact integer linear algebra: Smith normal form, lattice membership and
//! rational solves. Everything here is generic over the integer scalar so the
//! same code runs on `i64`, `i128` or arbitrary precision integers.

use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Integer scalar usable by the exact routines.
pub trait Scalar: Integer + Signed + Clone + Debug + Hash + From<i64> + Send + Sync + 'static {}

impl<T> Scalar for T where T: Integer + Signed + Clone + Debug + Hash + From<i64> + Send + Sync + 'static {}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().cloned()).collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &T) {
        for j in 0..self.cols {
            let v = self[(dst, j)].clone() + c.clone() * self[(src, j)].clone();
            self[(dst, j)] = v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &T) {
        for i in 0..self.rows {
            let v = self[(i, dst)].clone() + c.clone() * self[(i, src)].clone();
            self[(i, dst)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `u * m * v = diag(d_0, d_1, ...)` with `d_i | d_{i+1}`,
/// `u`, `v` unimodular. `u_inv` is kept alongside `u` so lattice sections are
/// available without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v: IntMatrix<T>,
    /// Nonnegative diagonal, length `min(rows, cols)`.
    pub diag: Vec<T>,
}

impl<T: Scalar> SmithForm<T> {
    /// Number of nonzero invariant factors (the rank over Q).
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form<T: Scalar>(m: &IntMatrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row operation helpers keep u and u_inv consistent.
    fn row_swap<T: Scalar>(a: &mut IntMatrix<T>, u: &mut IntMatrix<T>, ui: &mut IntMatrix<T>, i: usize, j: usize) {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    }
    fn row_add<T: Scalar>(a: &mut IntMatrix<T>, u: &mut IntMatrix<T>, ui: &mut IntMatrix<T>, dst: usize, src: usize, c: &T) {
        a.add_row(dst, src, c);
        u.add_row(dst, src, c);
        ui.add_col(src, dst, &-c.clone());
    }

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            row_swap(&mut a, &mut u, &mut u_inv, t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in (t + 1)..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    row_add(&mut a, &mut u, &mut u_inv, i, t, &-q);
                    if !a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                    if !a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let mut offender = None;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = T::one();
                    row_add(&mut a, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm { u, u_inv, v, diag }
}

/// Integer solution `x` of `m x = b`, if one exists.
pub fn solve_integral<T: Scalar>(m: &IntMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![T::zero(); m.cols()];
    for (i, val) in ub.iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(T::zero);
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            if !val.is_multiple_of(&d) {
                return None;
            }
            y[i] = val.clone() / d;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Rank over Q.
pub fn rank<T: Scalar>(m: &IntMatrix<T>) -> usize {
    smith_normal_form(m).rank()
}

/// Unique rational solution of `m x = b` for `m` of full column rank.
/// Returns `None` when `b` is outside the column span.
pub fn solve_rational<T: Scalar>(m: &IntMatrix<T>, b: &[Ratio<T>]) -> Option<Vec<Ratio<T>>> {
    // Clear denominators, then solve with Smith form over Q.
    let den = b.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<T> = b.iter().map(|x| x.numer().clone() * (den.clone() / x.denom().clone())).collect();
    let snf = smith_normal_form(m);
    if snf.rank() != m.cols() {
        return None;
    }
    let ub = snf.u.mul_vec(&scaled);
    let mut y: Vec<Ratio<T>> = vec![Ratio::zero(); m.cols()];
    for (i, val) in ub.iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(T::zero);
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            y[i] = Ratio::new(val.clone(), d * den.clone());
        }
    }
    let x = (0..m.cols())
        .map(|i| {
            (0..m.cols()).fold(Ratio::zero(), |acc: Ratio<T>, k| {
                acc + Ratio::from_integer(snf.v[(i, k)].clone()) * y[k].clone()
            })
        })
        .collect();
    Some(x)
}
