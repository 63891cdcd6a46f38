//! Exact integer matrices and their Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| x.into()).collect(),
        }
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `left · M · right = diag(divisors)` with `left`, `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Length `min(rows, cols)`; non-negative, each dividing the next,
    /// zeros last.
    pub divisors: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Divisors greater than one: the invariant factors of the torsion
    /// part of the cokernel.
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(m.rows);
    let mut right = IntegerMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);

    for t in 0..steps {
        loop {
            // pivot: non-zero entry of least absolute value in the trailing block
            let pivot = (t..a.rows)
                .flat_map(|r| (t..a.cols).map(move |c| (r, c)))
                .filter(|&rc| !a[rc].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pr, pc)) = pivot else {
                break;
            };
            a.swap_rows(t, pr);
            left.swap_rows(t, pr);
            a.swap_cols(t, pc);
            right.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..a.rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = -a[(r, t)].div_floor(&a[(t, t)]);
                a.add_row(r, t, &q);
                left.add_row(r, t, &q);
                clean &= a[(r, t)].is_zero();
            }
            for c in t + 1..a.cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = -a[(t, c)].div_floor(&a[(t, t)]);
                a.add_col(c, t, &q);
                right.add_col(c, t, &q);
                clean &= a[(t, c)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let offending = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a[(r, c)].is_multiple_of(&a[(t, t)])));
            match offending {
                Some(r) => {
                    let one = BigInt::one();
                    a.add_row(t, r, &one);
                    left.add_row(t, r, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let divisors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        divisors,
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(m: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .divisors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(divisors(&IntegerMatrix::identity(8)), vec![1; 8]);
        assert_eq!(divisors(&IntegerMatrix::diagonal(&[2, 4])), vec![2, 4]);
        assert_eq!(divisors(&IntegerMatrix::from_rows(&[vec![2, 1], vec![0, 2]])), vec![1, 4]);
        assert_eq!(divisors(&IntegerMatrix::diagonal(&[4, 6])), vec![2, 12]);
        assert_eq!(divisors(&IntegerMatrix::diagonal(&[0, -3])), vec![3, 0]);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4, 6], vec![4, 8, 12]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.divisors, vec![BigInt::from(2), BigInt::zero()]);
        assert_eq!(snf.rank(), 1);
        assert_eq!(divisors(&IntegerMatrix::zeros(3, 2)), vec![0, 0]);
    }

    #[test]
    fn transforms_reproduce_the_diagonal() {
        let m = IntegerMatrix::from_rows(&[vec![3, -7, 2], vec![5, 1, -4], vec![6, 0, 9]]);
        let snf = smith_normal_form(&m);
        let d = snf.left.mul(&m).mul(&snf.right);
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { snf.divisors[r].clone() } else { BigInt::zero() };
                assert_eq!(d[(r, c)], expected);
            }
        }
    }
}
