use serde::{Deserialize, Serialize};

use super::ranks::{betti, boundary_rank};
use super::{cocycle_for_main, CohomologyError};
use crate::liealg::{graded_basis, max_dim, AlgebraSpec, Chain, Family};
use crate::partitions::{main_partitions, Partition};
use crate::qlinalg::Q;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub q: usize,
    pub dim_c: usize,
    /// Rank of `d: C_q -> C_{q-1}`.
    pub rank_d: usize,
    /// Rank of `delta: C_q -> C_{q+1}`.
    pub rank_delta: usize,
    pub dim_h: usize,
    pub main: Vec<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycles: Option<Vec<Chain<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub family: Family,
    pub k: i32,
    pub n: i64,
    pub rows: Vec<HomologyRow>,
}

impl HomologyReport {
    pub fn row(&self, q: usize) -> Option<&HomologyRow> {
        self.rows.iter().find(|r| r.q == q)
    }

    pub fn dim_h(&self, q: usize) -> usize {
        self.row(q).map_or(0, |r| r.dim_h)
    }

    /// Fills in a representing cocycle for every main partition.
    pub fn attach_cocycles(&mut self) -> Result<(), CohomologyError> {
        let spec = AlgebraSpec::new(self.family, self.k)?;
        spec.require_positive_k()?;
        for row in &mut self.rows {
            let cs = row
                .main
                .iter()
                .map(|i| cocycle_for_main(&spec, i))
                .collect::<Result<Vec<_>, _>>()?;
            row.cocycles = Some(cs);
        }
        Ok(())
    }
}

/// Exact Betti numbers of the degree-`n` slice in every dimension.
pub fn homology_dims(spec: &AlgebraSpec, n: i64) -> HomologyReport {
    homology_dims_upto(spec, n, None)
}

/// As [`homology_dims`], restricted to `q <= qmax`.
pub fn homology_dims_upto(spec: &AlgebraSpec, n: i64, qmax: Option<usize>) -> HomologyReport {
    let top = max_dim(spec, n).min(qmax.unwrap_or(usize::MAX));
    let rows = (0..=top)
        .map(|q| {
            let dim_h = betti(spec, n, q);
            HomologyRow {
                q,
                dim_c: graded_basis(spec, n, q).len(),
                rank_d: boundary_rank(spec, n, q),
                rank_delta: boundary_rank(spec, n, q + 1),
                dim_h,
                main: if spec.k >= 1 {
                    main_partitions(spec.k, n, Some(q))
                } else {
                    Vec::new()
                },
                cocycles: None,
            }
        })
        .collect();
    HomologyReport {
        family: spec.family,
        k: spec.k,
        n,
        rows,
    }
}

/// `n,q,dimC,dimH` lines with a header.
pub fn to_csv(reports: &[HomologyReport]) -> String {
    let mut out = String::from("n,q,dimC,dimH\n");
    for r in reports {
        for row in &r.rows {
            out.push_str(&format!("{},{},{},{}\n", r.n, row.q, row.dim_c, row.dim_h));
        }
    }
    out
}

fn choose(n: i64, r: i64) -> u64 {
    if r < 0 || r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

/// `C(q+k-1, k-1) + C(q+k-2, k-1)`.
pub fn binomial_value(k: i32, q: usize) -> u64 {
    let (k, q) = (k as i64, q as i64);
    choose(q + k - 1, k - 1) + choose(q + k - 2, k - 1)
}

/// Largest degree of a `q`-dimensional main `k`-partition is below this bound.
pub fn degree_bound(k: i32, q: usize) -> i64 {
    q as i64 * (2 * k as i64 + 3 * (q as i64 - 1))
}

/// `sum_n dim H_q` over `n <= degree_bound(k, q)`.
pub fn binomial_sum(spec: &AlgebraSpec, q: usize) -> Result<u64, CohomologyError> {
    spec.require_positive_k()?;
    if q == 0 {
        return Err(CohomologyError::BadDimension(q));
    }
    Ok((0..=degree_bound(spec.k, q))
        .map(|n| betti(spec, n, q) as u64)
        .sum())
}

pub fn binomial_check(spec: &AlgebraSpec, q: usize) -> Result<bool, CohomologyError> {
    Ok(binomial_sum(spec, q)? == binomial_value(spec.k, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::main_partitions_of_dim;

    #[test]
    fn first_slice() {
        let r = homology_dims(&AlgebraSpec::witt(1), 1);
        assert_eq!(r.dim_h(1), 1);
        assert_eq!(
            r.row(1).unwrap().main,
            vec![Partition::new(vec![1]).unwrap()]
        );
    }

    #[test]
    fn ranks_are_consistent() {
        for spec in [
            AlgebraSpec::witt(1),
            AlgebraSpec::looped(1),
            AlgebraSpec::witt(2),
        ] {
            for n in 0..=14 {
                let r = homology_dims(&spec, n);
                for row in &r.rows {
                    assert_eq!(row.dim_h + row.rank_d + row.rank_delta, row.dim_c);
                    assert_eq!(row.dim_h, row.main.len(), "{spec} n={n} q={}", row.q);
                }
            }
        }
    }

    #[test]
    fn binomial_values() {
        for q in 1..=6 {
            assert_eq!(binomial_value(1, q), 2);
        }
        assert_eq!(binomial_value(2, 2), 5);
        assert_eq!(binomial_value(3, 1), 4);
    }

    #[test]
    fn enumeration_matches_binomial() {
        for k in 1..=3 {
            for q in 1..=4 {
                let count = main_partitions_of_dim(k, q).len() as u64;
                assert_eq!(count, binomial_value(k, q), "k={k} q={q}");
                let top = main_partitions_of_dim(k, q)
                    .iter()
                    .map(|p| p.degree())
                    .max();
                assert!(top.unwrap() <= degree_bound(k, q));
            }
        }
    }

    #[test]
    fn binomial_check_small() {
        assert!(binomial_check(&AlgebraSpec::witt(2), 2).unwrap());
        assert!(binomial_check(&AlgebraSpec::looped(1), 3).unwrap());
    }

    #[test]
    fn csv_layout() {
        let r = homology_dims(&AlgebraSpec::witt(1), 3);
        let csv = to_csv(&[r]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,q,dimC,dimH");
        assert_eq!(lines[1], "3,0,0,0");
        assert_eq!(lines[2], "3,1,1,0");
        assert_eq!(lines[3], "3,2,1,0");
    }
}
