//! Dense integer matrices with arbitrary-precision entries, Smith normal form,
//! and exact integer linear system solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A rows x cols matrix over Z, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data: entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from i64 rows, mainly for tests and fixtures.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let data = self.data.iter().map(|x| x * k).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Smith normal form with all four transforms tracked.
    pub fn smith_normal_form(&self) -> SnfDecomposition {
        SnfCalc::new(self.clone()).run()
    }

    /// Invariant factors: the nonzero diagonal entries of the Smith form.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let snf = self.smith_normal_form();
        let k = self.rows.min(self.cols);
        (0..k)
            .map(|i| snf.d.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Solve self * x = b over Z. Returns None when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        self.smith_normal_form().solve(b)
    }

    /// Basis of the integer kernel {x : self * x = 0}, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        self.smith_normal_form().kernel()
    }

    /// Rank over Q, i.e. the number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "mul shape mismatch");
        let mut m = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = m.get(i, j) + a * rhs.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }
}

/// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Solve M x = b for the decomposed matrix M.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.d.rows();
        let cols = self.d.cols();
        assert_eq!(b.len(), rows, "solve rhs dimension mismatch");
        let ub = self.u.mul_vec(b);
        let k = rows.min(cols);
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..rows {
            let di = if i < k { self.d.get(i, i).clone() } else { BigInt::zero() };
            if di.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = ub[i].div_rem(&di);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Kernel basis of the decomposed matrix, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let k = self.d.rows().min(self.d.cols());
        let mut basis = Vec::new();
        for j in 0..self.d.cols() {
            let dj = if j < k { self.d.get(j, j).clone() } else { BigInt::zero() };
            if dj.is_zero() {
                basis.push(self.v.column(j));
            }
        }
        basis
    }
}

struct SnfCalc {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn new(m: IntMatrix) -> Self {
        let (r, c) = (m.rows(), m.cols());
        SnfCalc {
            m,
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.m.cols() {
            let a = self.m.get(i, col).clone();
            let b = self.m.get(j, col).clone();
            self.m.set(i, col, b);
            self.m.set(j, col, a);
        }
        for col in 0..self.u.cols() {
            let a = self.u.get(i, col).clone();
            let b = self.u.get(j, col).clone();
            self.u.set(i, col, b);
            self.u.set(j, col, a);
        }
        // inverse of a swap is itself, applied as a column op on u_inv
        for row in 0..self.u_inv.rows() {
            let a = self.u_inv.get(row, i).clone();
            let b = self.u_inv.get(row, j).clone();
            self.u_inv.set(row, i, b);
            self.u_inv.set(row, j, a);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in 0..self.m.rows() {
            let a = self.m.get(row, i).clone();
            let b = self.m.get(row, j).clone();
            self.m.set(row, i, b);
            self.m.set(row, j, a);
        }
        for row in 0..self.v.rows() {
            let a = self.v.get(row, i).clone();
            let b = self.v.get(row, j).clone();
            self.v.set(row, i, b);
            self.v.set(row, j, a);
        }
        for col in 0..self.v_inv.cols() {
            let a = self.v_inv.get(i, col).clone();
            let b = self.v_inv.get(j, col).clone();
            self.v_inv.set(i, col, b);
            self.v_inv.set(j, col, a);
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for col in 0..self.m.cols() {
            let v = self.m.get(i, col) + k * self.m.get(j, col);
            self.m.set(i, col, v);
        }
        for col in 0..self.u.cols() {
            let v = self.u.get(i, col) + k * self.u.get(j, col);
            self.u.set(i, col, v);
        }
        // (L^{-1} acts on u_inv from the right): col_j -= k * col_i
        for row in 0..self.u_inv.rows() {
            let v = self.u_inv.get(row, j) - k * self.u_inv.get(row, i);
            self.u_inv.set(row, j, v);
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in 0..self.m.rows() {
            let v = self.m.get(row, i) + k * self.m.get(row, j);
            self.m.set(row, i, v);
        }
        for row in 0..self.v.rows() {
            let v = self.v.get(row, i) + k * self.v.get(row, j);
            self.v.set(row, i, v);
        }
        for col in 0..self.v_inv.cols() {
            let v = self.v_inv.get(j, col) - k * self.v_inv.get(i, col);
            self.v_inv.set(j, col, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for col in 0..self.m.cols() {
            let v = -self.m.get(i, col);
            self.m.set(i, col, v);
        }
        for col in 0..self.u.cols() {
            let v = -self.u.get(i, col);
            self.u.set(i, col, v);
        }
        for row in 0..self.u_inv.rows() {
            let v = -self.u_inv.get(row, i);
            self.u_inv.set(row, i, v);
        }
    }

    /// Smallest nonzero absolute value in the trailing submatrix; deterministic
    /// tie-break on (row, col) order.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.m.rows() {
            for j in k..self.m.cols() {
                let x = self.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < self.m.get(*bi, *bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> SnfDecomposition {
        let n = self.m.rows().min(self.m.cols());
        for k in 0..n {
            'pivot: loop {
                let Some((pi, pj)) = self.find_pivot(k) else {
                    break;
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                // clear column k
                for i in k + 1..self.m.rows() {
                    let q = -(self.m.get(i, k) / self.m.get(k, k));
                    self.add_row(i, k, &q);
                }
                // clear row k
                for j in k + 1..self.m.cols() {
                    let q = -(self.m.get(k, j) / self.m.get(k, k));
                    self.add_col(j, k, &q);
                }
                let dirty = (k + 1..self.m.rows()).any(|i| !self.m.get(i, k).is_zero())
                    || (k + 1..self.m.cols()).any(|j| !self.m.get(k, j).is_zero());
                if dirty {
                    continue 'pivot;
                }
                // force divisibility of the trailing submatrix by the pivot
                let pivot = self.m.get(k, k).clone();
                for i in k + 1..self.m.rows() {
                    for j in k + 1..self.m.cols() {
                        if !(self.m.get(i, j) % &pivot).is_zero() {
                            self.add_row(k, i, &BigInt::one());
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
            if self.m.get(k, k).is_negative() {
                self.negate_row(k);
            }
        }
        SnfDecomposition {
            u: self.u,
            u_inv: self.u_inv,
            d: self.m,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn check_snf(m: &IntMatrix) {
        let snf = m.smith_normal_form();
        assert!(snf.u.is_unimodular(), "U not unimodular");
        assert!(snf.v.is_unimodular(), "V not unimodular");
        assert_eq!(&(&snf.u * m) * &snf.v, snf.d, "UMV != D");
        assert_eq!(&snf.u * &snf.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(&snf.v * &snf.v_inv, IntMatrix::identity(m.cols()));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero on diagonal");
            }
        }
        for d in &diag {
            assert!(!d.is_negative());
        }
        // off-diagonal of D must vanish
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let snf = m.smith_normal_form();
        assert_eq!(snf.d, IntMatrix::identity(2));
        check_snf(&m);
    }

    #[test]
    fn snf_spec_example() {
        let m = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let snf = m.smith_normal_form();
        // det = -8 and entry gcd = 2, so the invariant factors are 2 and 4
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&m);
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zero(3, 2);
        let snf = m.smith_normal_form();
        assert!(snf.d.is_zero());
        check_snf(&m);
    }

    #[test]
    fn solve_and_kernel() {
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(9)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());

        let k = IntMatrix::from_rows(&[&[1, 1]]);
        let basis = k.kernel();
        assert_eq!(basis.len(), 1);
        assert!(k.mul_vec(&basis[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn det_matches_cofactor_small() {
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det().to_i64().unwrap(), 1);
        let m = IntMatrix::from_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.det().to_i64().unwrap(), -3);
    }

    #[test]
    fn randomized_snf_postcondition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rng.gen_range(1..=5);
            let c = rng.gen_range(1..=5);
            let data: Vec<BigInt> =
                (0..r * c).map(|_| BigInt::from(rng.gen_range(-20i64..=20))).collect();
            let m = IntMatrix::new(r, c, data).unwrap();
            check_snf(&m);
        }
    }
}
