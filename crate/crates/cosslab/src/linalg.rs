//! Dense exact linear algebra: row reduction, rank, particular solutions and
//! nullspace bases over any [`Field`].
//!
//! Sizes here are small (a few hundred coordinates), so a dense Gauss-Jordan
//! with exact pivoting is the right tool.

use crate::field::Field;
use crate::par::maybe_par_map;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> std::fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug)]
pub enum SolveOutcome<F: Field> {
    /// A particular solution together with a basis of `ker A`.
    Solved { particular: Vec<F>, nullspace: Vec<Vec<F>> },
    Inconsistent,
}

impl<F: Field> SolveOutcome<F> {
    pub fn unique(&self) -> Option<&Vec<F>> {
        match self {
            SolveOutcome::Solved { particular, nullspace } if nullspace.is_empty() => {
                Some(particular)
            }
            _ => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, SolveOutcome::Solved { .. })
    }
}

impl<F: Field> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Mat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat<F> {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let rows = maybe_par_map(&(0..self.rows).collect::<Vec<_>>(), |&r| {
            let mut row = vec![F::zero(); other.cols];
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for (c, cell) in row.iter_mut().enumerate() {
                    *cell = cell.add(&a.mul(&other[(k, c)]));
                }
            }
            row
        });
        Mat::from_rows(rows)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = acc.add(&self[(r, c)].mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self[(r, c)].add(&other[(r, c)]))
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| self[(r, c)].sub(&other[(r, c)]))
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (lead..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = self[(lead, col)].inv().expect("nonzero pivot");
            for c in col..self.cols {
                self[(lead, c)] = self[(lead, c)].mul(&inv);
            }
            for r in 0..self.rows {
                if r != lead && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let delta = factor.mul(&self[(lead, c)]);
                        self[(r, c)] = self[(r, c)].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `ker A` as coordinate vectors.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = m[(prow, fc)].neg();
                }
                v
            })
            .collect()
    }

    /// Exact solve of `A x = b`: particular solution plus nullspace basis, or
    /// `Inconsistent`. A single row reduction of the augmented matrix yields
    /// both the particular solution and the nullspace.
    pub fn solve(&self, b: &[F]) -> SolveOutcome<F> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return SolveOutcome::Inconsistent;
        }
        let mut particular = vec![F::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            particular[pcol] = aug[(prow, self.cols)].clone();
        }
        // the A-columns of rref([A|b]) form rref(A); read the nullspace off it
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let nullspace = (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (prow, &pcol) in pivots.iter().enumerate() {
                    v[pcol] = aug[(prow, fc)].neg();
                }
                v
            })
            .collect();
        SolveOutcome::Solved { particular, nullspace }
    }

    /// Solve `A X = B` for all columns at once with a single row reduction;
    /// `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Mat<F>) -> Option<Mat<F>> {
        assert_eq!(self.rows, b.rows);
        let mut aug = Mat::zero(self.rows, self.cols + b.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..b.cols {
                aug[(r, self.cols + c)] = b[(r, c)].clone();
            }
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.cols, b.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(pcol, c)] = aug[(prow, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    /// Express each column of `b` in the column span of `self`, all at once.
    ///
    /// Returns the coefficient matrix `X` with `self * X = b`, or `None` if
    /// some column of `b` is outside the span.
    pub fn express_in_columns(&self, b: &Mat<F>) -> Option<Mat<F>> {
        self.solve_matrix(b)
    }
}

/// Stack vectors as the columns of a matrix.
pub fn columns<F: Field>(vectors: &[Vec<F>], dim: usize) -> Mat<F> {
    let mut m = Mat::zero(dim, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), dim, "column length mismatch");
        for r in 0..dim {
            m[(r, c)] = v[r].clone();
        }
    }
    m
}

/// Dimension of the span of `vectors` inside an ambient space of dimension `dim`.
pub fn span_dim<F: Field>(vectors: &[Vec<F>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    columns(vectors, dim).rank()
}

/// `v + w` componentwise.
pub fn vec_add<F: Field>(v: &[F], w: &[F]) -> Vec<F> {
    assert_eq!(v.len(), w.len());
    v.iter().zip(w).map(|(a, b)| a.add(b)).collect()
}

/// `v - w` componentwise.
pub fn vec_sub<F: Field>(v: &[F], w: &[F]) -> Vec<F> {
    assert_eq!(v.len(), w.len());
    v.iter().zip(w).map(|(a, b)| a.sub(b)).collect()
}

/// `c * v` componentwise.
pub fn vec_scale<F: Field>(c: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|a| c.mul(a)).collect()
}

pub fn vec_neg<F: Field>(v: &[F]) -> Vec<F> {
    v.iter().map(|a| a.neg()).collect()
}

pub fn vec_is_zero<F: Field>(v: &[F]) -> bool {
    v.iter().all(|a| a.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use proptest::prelude::*;

    fn rmat(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(Rat::int).collect()).collect())
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let a: Mat<Rat> = Mat::identity(3);
        let b = vec![Rat::int(1), Rat::int(2), Rat::int(3)];
        match a.solve(&b) {
            SolveOutcome::Solved { particular, nullspace } => {
                assert_eq!(particular, b);
                assert!(nullspace.is_empty());
            }
            SolveOutcome::Inconsistent => panic!("identity system must be consistent"),
        }
    }

    #[test]
    fn zero_system_has_full_nullspace() {
        let a: Mat<Rat> = Mat::zero(2, 2);
        match a.solve(&[Rat::zero(), Rat::zero()]) {
            SolveOutcome::Solved { particular, nullspace } => {
                assert!(vec_is_zero(&particular));
                assert_eq!(nullspace.len(), 2);
            }
            SolveOutcome::Inconsistent => panic!(),
        }
    }

    #[test]
    fn dependent_rows_inconsistent() {
        // Oracle by cofactor expansion: det [[1,1],[2,2]] = 1*2 - 1*2 = 0, so the
        // system has rank 1; b = (1,3) has 2*1 != 3, hence inconsistent.
        let a = rmat(vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(a.rank(), 1);
        assert!(!a.solve(&[Rat::int(1), Rat::int(3)]).is_consistent());
        // consistent rhs works
        assert!(a.solve(&[Rat::int(1), Rat::int(2)]).is_consistent());
    }

    #[test]
    fn rank_over_prime_field() {
        let a: Mat<Fp<2>> = Mat::from_rows(vec![
            vec![Fp::new(1), Fp::new(1)],
            vec![Fp::new(1), Fp::new(1)],
        ]);
        assert_eq!(a.rank(), 1);
    }

    proptest! {
        #[test]
        fn solution_plus_nullspace_solves_exactly(
            entries in proptest::collection::vec(-5i64..5, 12),
            rhs_coeffs in proptest::collection::vec(-3i64..3, 3),
        ) {
            let a = rmat(vec![
                entries[0..4].iter().copied().collect(),
                entries[4..8].iter().copied().collect(),
                entries[8..12].iter().copied().collect(),
            ]);
            // rhs in the column span by construction
            let x0: Vec<Rat> = rhs_coeffs.iter().map(|&v| Rat::int(v)).collect::<Vec<_>>()
                .into_iter().chain([Rat::zero()]).collect();
            let b = a.mul_vec(&x0);
            match a.solve(&b) {
                SolveOutcome::Solved { particular, nullspace } => {
                    prop_assert_eq!(a.mul_vec(&particular), b.clone());
                    for null in &nullspace {
                        let shifted = vec_add(&particular, null);
                        prop_assert_eq!(a.mul_vec(&shifted), b.clone());
                    }
                }
                SolveOutcome::Inconsistent => prop_assert!(false, "constructed rhs must be solvable"),
            }
        }
    }
}
