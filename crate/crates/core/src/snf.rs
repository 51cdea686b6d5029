//! Smith normal form over the integers by unimodular row and column
//! operations, pivoting on the entry of smallest magnitude.

use std::fmt;

use crate::num::IntegerRing;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: IntegerRing> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<S: IntegerRing>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<R: fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<R> {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<R>,
    pub rank: usize,
}

impl<R: IntegerRing> SmithForm<R> {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<R> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form<R: IntegerRing>(a: &Matrix<R>) -> SmithForm<R> {
    let mut w = Work {
        rows: (0..a.rows).map(|i| a.row(i).to_vec()).collect(),
        ncols: a.cols,
    };
    let mut diag = Vec::new();
    for t in 0..a.rows.min(a.cols) {
        let Some((pi, pj)) = w.smallest(t, |_, _| true) else {
            break;
        };
        w.swap_to(t, pi, pj);
        loop {
            if !w.clear_cross(t) {
                let (pi, pj) = w
                    .smallest(t, |i, j| i == t || j == t)
                    .expect("pivot cross has a nonzero entry");
                w.swap_to(t, pi, pj);
                continue;
            }
            let p = w.rows[t][t].clone();
            let bad = (t + 1..w.rows.len()).find(|&i| w.rows[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
            match bad {
                // Fold the offending row in; the next pass shrinks the pivot.
                Some(i) => {
                    for j in t..w.ncols {
                        let x = w.rows[i][j].clone();
                        w.rows[t][j] = w.rows[t][j].clone() + x;
                    }
                }
                None => break,
            }
        }
        diag.push(w.rows[t][t].abs());
    }
    SmithForm {
        rank: diag.len(),
        invariant_factors: diag,
    }
}

struct Work<R> {
    rows: Vec<Vec<R>>,
    ncols: usize,
}

impl<R: IntegerRing> Work<R> {
    fn smallest(&self, t: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, R)> = None;
        for i in t..self.rows.len() {
            for j in t..self.ncols {
                let x = &self.rows[i][j];
                if x.is_zero() || !keep(i, j) {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                    let one = m.is_one();
                    best = Some((i, j, m));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn swap_to(&mut self, t: usize, i: usize, j: usize) {
        self.rows.swap(t, i);
        if j != t {
            for row in &mut self.rows {
                row.swap(t, j);
            }
        }
    }

    /// Reduces row and column `t` modulo the pivot; true when both are clear.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.rows[t][t].clone();
        let mut clear = true;
        let (head, tail) = self.rows.split_at_mut(t + 1);
        let pivot_row = &head[t];
        for row in tail.iter_mut() {
            if row[t].is_zero() {
                continue;
            }
            let q = row[t].clone() / p.clone();
            if !q.is_zero() {
                for j in t..self.ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].clone() - q.clone() * pivot_row[j].clone();
                    }
                }
            }
            clear &= row[t].is_zero();
        }
        for j in t + 1..self.ncols {
            if self.rows[t][j].is_zero() {
                continue;
            }
            let q = self.rows[t][j].clone() / p.clone();
            if !q.is_zero() {
                for row in self.rows.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = row[j].clone() - q.clone() * row[t].clone();
                    }
                }
            }
            clear &= self.rows[t][j].is_zero();
        }
        clear
    }
}
