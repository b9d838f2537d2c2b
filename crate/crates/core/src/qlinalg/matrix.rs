use std::collections::BTreeMap;

use super::{Field, LinalgError};

/// Below this many rows times columns elimination runs on a dense copy.
const DENSE_CUTOFF: usize = 64 * 64;

/// A sparse matrix over an exact field, stored as a list of sparse rows.
///
/// No zero entries are ever stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, F::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, F> {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(&c).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &F) {
        assert!(r < self.nrows && c < self.ncols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    /// Iterates over stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.nrows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.rows[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ncols != other.nrows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let mut t = a.clone();
                    t *= b;
                    match acc.get_mut(c) {
                        Some(x) => *x += &t,
                        None => {
                            acc.insert(*c, t);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        let mut t = a.clone();
                        t *= &v[*c];
                        acc += &t;
                    }
                }
                acc
            })
            .collect())
    }

    /// `self - lam * Id`.
    pub fn shift(&self, lam: &F) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut out = self.clone();
        let neg = -lam.clone();
        for i in 0..self.nrows {
            out.add_to(i, i, &neg);
        }
        Ok(out)
    }

    pub fn pow(&self, s: u32) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut acc = Self::identity(self.nrows);
        for _ in 0..s {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ncols != other.ncols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ncols,
                found: other.ncols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(SparseMatrix {
            nrows: rows.len(),
            ncols: self.ncols,
            rows,
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries().all(|(r, c, _)| r <= c)
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(r, c, _)| r >= c)
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            })
        }
    }

    fn uses_dense(&self) -> bool {
        self.nrows * self.ncols <= DENSE_CUTOFF
    }

    pub fn rank(&self) -> usize {
        if self.uses_dense() {
            dense_echelon(self.to_dense(), false).1.len()
        } else {
            sparse_echelon(self.rows.clone(), self.ncols, false).1.len()
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        if self.uses_dense() {
            let (rows, pivots) = dense_echelon(self.to_dense(), true);
            (
                Self::from_dense_sized(&rows, self.nrows, self.ncols),
                pivots,
            )
        } else {
            let (rows, pivots) = sparse_echelon(self.rows.clone(), self.ncols, true);
            let mut out = Self::zeros(self.nrows, self.ncols);
            for (i, row) in rows.into_iter().enumerate() {
                out.rows[i] = row;
            }
            (out, pivots)
        }
    }

    fn from_dense_sized(rows: &[Vec<F>], nrows: usize, ncols: usize) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    /// A basis of the right null space, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.ncols];
                v[free] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    if let Some(x) = r.rows[i].get(&free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = rhs`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        if rhs.len() != self.nrows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.nrows,
                found: rhs.len(),
            });
        }
        let mut aug = SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols + 1,
            rows: self.rows.clone(),
        };
        for (r, v) in rhs.iter().enumerate() {
            if !v.is_zero() {
                aug.rows[r].insert(self.ncols, v.clone());
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.ncols);
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Self>, LinalgError> {
        self.require_square()?;
        let n = self.nrows;
        let mut aug = SparseMatrix {
            nrows: n,
            ncols: 2 * n,
            rows: self.rows.clone(),
        };
        for i in 0..n {
            aug.rows[i].insert(n + i, F::one());
        }
        let (red, pivots) = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return Ok(None);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for (c, v) in red.rows[i].range(n..) {
                inv.rows[i].insert(c - n, v.clone());
            }
        }
        Ok(Some(inv))
    }

    /// `dim ker (self - lam * Id)^s`.
    pub fn generalized_eigenspace_dim(&self, lam: &F, s: u32) -> Result<usize, LinalgError> {
        self.require_square()?;
        if s == 0 {
            return Ok(0);
        }
        let p = self.shift(lam)?.pow(s)?;
        Ok(self.ncols - p.rank())
    }
}

/// Gauss(-Jordan) elimination on dense rows. Returns the echelon rows
/// (reduced when `reduce` is set) and the pivot columns.
fn dense_echelon<F: Field>(mut a: Vec<Vec<F>>, reduce: bool) -> (Vec<Vec<F>>, Vec<usize>) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv();
        if reduce {
            for j in c..ncols {
                if !a[r][j].is_zero() {
                    a[r][j] *= &inv;
                }
            }
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || (!reduce && i < r) || row[c].is_zero() {
                continue;
            }
            let factor = if reduce {
                row[c].clone()
            } else {
                row[c].clone() * inv.clone()
            };
            for j in c..ncols {
                if !prow[j].is_zero() {
                    row[j].sub_mul(&factor, &prow[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Sparse elimination, column by column. Among candidate rows for a pivot the
/// one with the fewest nonzeros wins.
fn sparse_echelon<F: Field>(
    rows: Vec<BTreeMap<usize, F>>,
    ncols: usize,
    reduce: bool,
) -> (Vec<BTreeMap<usize, F>>, Vec<usize>) {
    let nrows = rows.len();
    let mut rows: Vec<Option<BTreeMap<usize, F>>> = rows.into_iter().map(Some).collect();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        if let Some((&c, _)) = row.as_ref().and_then(|r| r.iter().next()) {
            buckets[c].push(i);
        }
    }
    let mut pivot_rows: Vec<BTreeMap<usize, F>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let cand = std::mem::take(&mut buckets[c]);
        if cand.is_empty() {
            continue;
        }
        let &best = cand
            .iter()
            .min_by_key(|&&i| (rows[i].as_ref().map_or(usize::MAX, BTreeMap::len), i))
            .expect("nonempty");
        let mut prow = rows[best].take().expect("pivot row present");
        let inv = prow[&c].inv();
        for v in prow.values_mut() {
            *v *= &inv;
        }
        for &i in &cand {
            if i == best {
                continue;
            }
            let mut row = rows[i].take().expect("row present");
            let factor = row[&c].clone();
            axpy_row(&mut row, &factor, &prow);
            if let Some((&lead, _)) = row.iter().next() {
                buckets[lead].push(i);
            }
            rows[i] = Some(row);
        }
        pivot_rows.push(prow);
        pivots.push(c);
    }
    if reduce {
        for k in (0..pivot_rows.len()).rev() {
            let c = pivots[k];
            let (head, tail) = pivot_rows.split_at_mut(k);
            let prow = &tail[0];
            for row in head.iter_mut() {
                if let Some(factor) = row.get(&c).cloned() {
                    axpy_row(row, &factor, prow);
                }
            }
        }
    }
    pivot_rows.resize_with(nrows, BTreeMap::new);
    (pivot_rows, pivots)
}

/// `row -= factor * prow`, dropping cancelled entries.
fn axpy_row<F: Field>(row: &mut BTreeMap<usize, F>, factor: &F, prow: &BTreeMap<usize, F>) {
    for (j, pv) in prow {
        match row.get_mut(j) {
            Some(x) => {
                x.sub_mul(factor, pv);
                if x.is_zero() {
                    row.remove(j);
                }
            }
            None => {
                let mut t = factor.clone();
                t *= pv;
                row.insert(*j, -t);
            }
        }
    }
}

/// Rank of the span of a list of vectors of common length.
pub fn span_rank<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    SparseMatrix::from_columns(len, vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, Q};

    fn m(rows: &[&[i64]]) -> SparseMatrix<Q> {
        let d: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        SparseMatrix::from_dense(&d)
    }

    /// A banded matrix large enough to take the sparse elimination path.
    fn big(n: usize, singular: bool) -> SparseMatrix<Q> {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, q(2)));
            if i + 1 < n {
                t.push((i, i + 1, q(-1)));
                t.push((i + 1, i, q(-1)));
            }
        }
        let mut a = SparseMatrix::from_triplets(n, n, t);
        if singular {
            // duplicate row 0 into row n-1
            let r0 = a.rows[0].clone();
            a.rows[n - 1] = r0;
        }
        a
    }

    #[test]
    fn rref_examples() {
        let (r, p) = m(&[&[1, 0], &[0, 1]]).rref();
        assert_eq!(r, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = SparseMatrix::<Q>::zeros(2, 3).rref();
        assert_eq!(r, SparseMatrix::zeros(2, 3));
        assert!(p.is_empty());

        let (r, p) = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(m(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
        assert_eq!(m(&[&[1, 1]]).kernel_basis(), vec![vec![q(-1), q(1)]]);
        assert_eq!(
            m(&[&[1, 2], &[2, 4]]).kernel_basis(),
            vec![vec![q(-2), q(1)]]
        );
    }

    #[test]
    fn solve_examples() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.solve(&[q(3), q(-4)]).unwrap(), Some(vec![q(3), q(-4)]));
        let x = m(&[&[1, 1]]).solve(&[q(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).solve(&[q(1), q(3)]).unwrap(), None);
        assert!(matches!(
            id.solve(&[q(1)]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn generalized_eigenspace_examples() {
        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(id.generalized_eigenspace_dim(&q(1), 1).unwrap(), 3);
        assert_eq!(id.generalized_eigenspace_dim(&q(0), 3).unwrap(), 0);
        let jordan = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(jordan.generalized_eigenspace_dim(&q(1), 1).unwrap(), 1);
        assert_eq!(jordan.generalized_eigenspace_dim(&q(1), 2).unwrap(), 2);
        assert!(matches!(
            m(&[&[1, 2]]).generalized_eigenspace_dim(&q(1), 1),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn sparse_path_matches_dense_path() {
        for singular in [false, true] {
            let a = big(80, singular);
            assert!(!a.uses_dense());
            let (rs, ps) = a.rref();
            let (rd, pd) = dense_echelon(a.to_dense(), true);
            assert_eq!(ps, pd);
            assert_eq!(rs, SparseMatrix::from_dense_sized(&rd, 80, 80));
            assert_eq!(a.rank(), if singular { 79 } else { 80 });
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = big(70, false);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), SparseMatrix::identity(70));
        assert!(big(70, true).inverse().unwrap().is_none());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }
}
