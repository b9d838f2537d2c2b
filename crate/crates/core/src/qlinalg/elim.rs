//! Rank by structured elimination: rows whose leading column is unshared
//! are taken as pivots without any arithmetic, the remaining rows are reduced
//! against them, and the process repeats on what is left.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub(crate) trait Entry: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self -= f * v`
    fn sub_mul(&mut self, f: &Self, v: &Self);
}

pub(crate) type Row<T> = Vec<(u32, T)>;

pub(crate) fn structured_rank<T: Entry>(mut rows: Vec<Row<T>>, ncols: usize) -> usize {
    let mut rank = 0;
    loop {
        rows.retain(|r| !r.is_empty());
        if rows.is_empty() {
            return rank;
        }
        let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
        for (i, r) in rows.iter().enumerate() {
            let c = r[0].0 as usize;
            match pivot_of[c] {
                Some(j) if rows[j].len() <= r.len() => {}
                _ => pivot_of[c] = Some(i),
            }
        }
        let npiv = pivot_of.iter().flatten().count();
        let nnz: usize = rows.iter().map(Vec::len).sum();
        if npiv * 20 < rows.len() || nnz as f64 > 0.2 * rows.len() as f64 * ncols as f64 {
            return rank + dense_rank(&rows, ncols);
        }
        let mut is_pivot_row = vec![false; rows.len()];
        let mut pivots: Vec<Option<Row<T>>> = vec![None; ncols];
        for (c, slot) in pivot_of.iter().enumerate() {
            if let Some(i) = *slot {
                is_pivot_row[i] = true;
                let f = rows[i][0].1.inv();
                pivots[c] = Some(rows[i].iter().map(|(j, v)| (*j, v.mul(&f))).collect());
            }
        }
        let mut acc: Vec<T> = vec![T::zero(); ncols];
        let mut mark = vec![false; ncols];
        let mut touched: Vec<u32> = Vec::new();
        let mut residual = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if is_pivot_row[i] {
                continue;
            }
            let mut heap = BinaryHeap::new();
            for (c, v) in r {
                let c = *c as usize;
                acc[c] = v.clone();
                mark[c] = true;
                touched.push(c as u32);
                if pivots[c].is_some() {
                    heap.push(Reverse(c));
                }
            }
            while let Some(Reverse(c)) = heap.pop() {
                if acc[c].is_zero() {
                    continue;
                }
                let f = std::mem::replace(&mut acc[c], T::zero());
                for (j, v) in pivots[c].as_ref().expect("pivot row").iter().skip(1) {
                    let j = *j as usize;
                    if !mark[j] {
                        mark[j] = true;
                        touched.push(j as u32);
                        acc[j] = T::zero();
                        if pivots[j].is_some() {
                            heap.push(Reverse(j));
                        }
                    }
                    acc[j].sub_mul(&f, v);
                }
            }
            touched.sort_unstable();
            let mut out = Vec::new();
            for &c in &touched {
                let c = c as usize;
                if !acc[c].is_zero() {
                    out.push((c as u32, std::mem::replace(&mut acc[c], T::zero())));
                }
                mark[c] = false;
            }
            touched.clear();
            if !out.is_empty() {
                residual.push(out);
            }
        }
        rank += npiv;
        rows = residual;
    }
}

fn dense_rank<T: Entry>(rows: &[Row<T>], ncols: usize) -> usize {
    let mut slot = vec![u32::MAX; ncols];
    let mut width = 0u32;
    for r in rows {
        for (c, _) in r {
            if slot[*c as usize] == u32::MAX {
                slot[*c as usize] = width;
                width += 1;
            }
        }
    }
    let width = width as usize;
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![T::zero(); width];
            for (c, x) in r {
                v[slot[*c as usize] as usize] = x.clone();
            }
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let f = a[rank][c].inv();
        let prow: Vec<T> = a[rank][c..].iter().map(|x| x.mul(&f)).collect();
        for row in a[rank + 1..].iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    x.sub_mul(&g, y);
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}
