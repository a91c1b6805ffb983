//! Dense matrices over a prime field `F_p`.
//!
//! Everything in the crate reduces to small exact linear systems, so the
//! representation is a flat row-major `Vec<u32>` with the modulus carried
//! alongside.

use std::fmt;

/// A prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Option<Self> {
        if p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            Some(Self { p })
        } else {
            None
        }
    }

    pub fn order(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - (b % self.p) as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Default for Field {
    fn default() -> Self {
        Self { p: 2 }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over F_{}]", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Column matrix from a vector.
    pub fn column(field: Field, v: &[u32]) -> Self {
        let mut m = Self::zeros(field, v.len(), 1);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, 0, x);
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in 0..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per
    /// free column, with that free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&Matrix::column(self.field, b));
        let mut m = aug;
        let pivots = m.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols);
        }
        Some(x)
    }

    /// Indices of a maximal linearly independent subset of the columns,
    /// chosen greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.clone().rref()
    }
}

/// Applies a matrix to a vector.
pub fn apply(m: &Matrix, v: &[u32]) -> Vec<u32> {
    assert_eq!(m.cols(), v.len());
    let f = m.field();
    (0..m.rows())
        .map(|r| (0..m.cols()).fold(0, |acc, c| f.add(acc, f.mul(m.get(r, c), v[c]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_rejects_composites() {
        assert!(Field::new(2).is_some());
        assert!(Field::new(7).is_some());
        assert!(Field::new(1).is_none());
        assert!(Field::new(9).is_none());
    }

    #[test]
    fn inverse_mod_five() {
        let f = Field::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_and_nullspace_small() {
        let f = Field::new(2).unwrap();
        let m = Matrix::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn solve_inconsistent() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_rows(f, &[vec![1, 2], vec![2, 1]]);
        // rows are dependent over F_3: second = 2 * first
        assert_eq!(m.rank(), 1);
        assert!(m.solve(&[1, 1]).is_none());
        assert_eq!(m.solve(&[1, 2]).map(|x| apply(&m, &x)), Some(vec![1, 2]));
    }

    fn small_matrix() -> impl Strategy<Value = (u32, Vec<Vec<u32>>)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..5, 1usize..5).prop_flat_map(|(p, r, c)| {
            (Just(p), proptest::collection::vec(proptest::collection::vec(0..p, c), r))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((p, rows) in small_matrix()) {
            let m = Matrix::from_rows(Field::new(p).unwrap(), &rows);
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in ns {
                prop_assert!(apply(&m, &v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_of_transpose((p, rows) in small_matrix()) {
            let m = Matrix::from_rows(Field::new(p).unwrap(), &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
