use crate::qlinalg::{Field, SparseMatrix};

use super::chain::{Basis, Chain, Monomial};
use super::AlgebraSpec;

/// Boundary of a single monomial:
/// `sum_{r<s} (-1)^{r+s-1} mu(i_s - i_r) e_{i_r + i_s} ∧ (e_I without r, s)`, 1-based `r, s`.
pub fn d_monomial<F: Field>(spec: &AlgebraSpec, m: &Monomial) -> Chain<F> {
    let idx = m.indices();
    let q = idx.len();
    let mut out = Chain::zero();
    for r in 0..q {
        for s in r + 1..q {
            let c = spec.mu(idx[s] as i64 - idx[r] as i64);
            if c == 0 {
                continue;
            }
            // 0-based r, s: (-1)^{(r+1)+(s+1)-1} = (-1)^{r+s+1}
            let sign = if (r + s) % 2 == 0 { -1 } else { 1 };
            let mut rest = Vec::with_capacity(q - 1);
            rest.push(idx[r] + idx[s]);
            rest.extend(
                idx.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != r && j != s)
                    .map(|(_, &v)| v),
            );
            if let Some((t, mono)) = Monomial::normalize(rest) {
                out.add_term(mono, F::from_i64(sign * t as i64 * c));
            }
        }
    }
    out
}

pub fn d<F: Field>(spec: &AlgebraSpec, c: &Chain<F>) -> Chain<F> {
    c.map_linear(|m| d_monomial(spec, m))
}

/// `delta_k(e_i) = sum_{a+b=i, k<=a<b} mu(b-a) e_a ∧ e_b`.
pub fn delta_generator<F: Field>(spec: &AlgebraSpec, i: i32) -> Chain<F> {
    let mut out = Chain::zero();
    let mut a = spec.k;
    while 2 * a < i {
        let b = i - a;
        let c = spec.mu((b - a) as i64);
        if c != 0 {
            out.add_term(Monomial::new(vec![a, b]).expect("a < b"), F::from_i64(c));
        }
        a += 1;
    }
    out
}

/// Coboundary of a monomial, extended from generators as a derivation.
pub fn delta_monomial<F: Field>(spec: &AlgebraSpec, m: &Monomial) -> Chain<F> {
    let idx = m.indices();
    let mut out = Chain::zero();
    for s in 0..idx.len() {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        for (pair, c) in delta_generator::<F>(spec, idx[s]).terms() {
            let mut v = Vec::with_capacity(idx.len() + 1);
            v.extend_from_slice(&idx[..s]);
            v.extend_from_slice(pair.indices());
            v.extend_from_slice(&idx[s + 1..]);
            if let Some((t, mono)) = Monomial::normalize(v) {
                let mut x = c.clone();
                if sign * t < 0 {
                    x = -x;
                }
                out.add_term(mono, x);
            }
        }
    }
    out
}

pub fn delta<F: Field>(spec: &AlgebraSpec, c: &Chain<F>) -> Chain<F> {
    c.map_linear(|m| delta_monomial(spec, m))
}

/// `sigma^r`: raises every index by `r`.
pub fn sigma_pow<F: Field>(c: &Chain<F>, r: i32) -> Chain<F> {
    c.map_linear(|m| {
        Chain::monomial(
            Monomial::new(m.indices().iter().map(|&i| i + r).collect()).expect("shift keeps order"),
        )
    })
}

/// Adjoint of `sigma^r`: lowers every index by `r`, dropping monomials that fall below `k`.
pub fn sigma_conj_pow<F: Field>(spec: &AlgebraSpec, c: &Chain<F>, r: i32) -> Chain<F> {
    c.map_linear(|m| {
        if m.min_index().is_some_and(|i| i - r < spec.k) {
            Chain::zero()
        } else {
            Chain::monomial(
                Monomial::new(m.indices().iter().map(|&i| i - r).collect())
                    .expect("shift keeps order"),
            )
        }
    })
}

/// Monomials of dimension `q` and degree `n` with all indices `>= k`, lexicographic.
pub fn graded_basis(spec: &AlgebraSpec, n: i64, q: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    basis_rec(spec.k as i64, n, q, &mut cur, &mut out);
    out
}

fn basis_rec(lo: i64, n: i64, q: usize, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
    if q == 0 {
        if n == 0 {
            out.push(Monomial::new(cur.clone()).expect("increasing"));
        }
        return;
    }
    if q == 1 {
        if n >= lo {
            cur.push(n as i32);
            out.push(Monomial::new(cur.clone()).expect("increasing"));
            cur.pop();
        }
        return;
    }
    let qi = q as i64;
    let mut v = lo;
    while qi * v + qi * (qi - 1) / 2 <= n {
        cur.push(v as i32);
        basis_rec(v + 1, n - v, q - 1, cur, out);
        cur.pop();
        v += 1;
    }
}

/// Largest dimension with a nonempty slice of degree `n`.
pub fn max_dim(spec: &AlgebraSpec, n: i64) -> usize {
    let k = spec.k as i64;
    let min_sum = |q: i64| q * k + q * (q - 1) / 2;
    let mut q = 0i64;
    // the minimal degree grows with q once q >= -k
    while min_sum(q + 1) <= n || q + 1 < -k + 1 {
        q += 1;
    }
    q as usize
}

/// `graded_basis` for every dimension of degree `n`.
pub fn slice_bases(spec: &AlgebraSpec, n: i64) -> Vec<Basis> {
    (0..=max_dim(spec, n))
        .map(|q| Basis::new(graded_basis(spec, n, q)))
        .collect()
}

/// Matrix of a linear map on monomials, columns indexed by `src`, rows by `dst`.
pub fn operator_matrix<F: Field>(
    src: &Basis,
    dst: &Basis,
    f: impl Fn(&Monomial) -> Chain<F>,
) -> SparseMatrix<F> {
    let mut trip = Vec::new();
    for (j, m) in src.monomials().iter().enumerate() {
        for (m2, v) in f(m).terms() {
            let i = dst
                .position(m2)
                .unwrap_or_else(|| panic!("{m2} outside the target slice"));
            trip.push((i, j, v.clone()));
        }
    }
    SparseMatrix::from_triplets(dst.len(), src.len(), trip)
}

/// `d: C_q -> C_{q-1}` on the degree-`n` slice.
pub fn d_matrix<F: Field>(spec: &AlgebraSpec, src: &Basis, dst: &Basis) -> SparseMatrix<F> {
    operator_matrix(src, dst, |m| d_monomial(spec, m))
}

/// `delta: C_q -> C_{q+1}` on the degree-`n` slice.
pub fn delta_matrix<F: Field>(spec: &AlgebraSpec, src: &Basis, dst: &Basis) -> SparseMatrix<F> {
    operator_matrix(src, dst, |m| delta_monomial(spec, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::inner;
    use crate::partitions::strict_partitions;
    use crate::qlinalg::{q, Q};

    fn ch(idx: &[i32]) -> Chain<Q> {
        Chain::from_indices(idx)
    }

    #[test]
    fn boundary_examples() {
        let w = AlgebraSpec::witt(-1);
        assert_eq!(d(&w, &ch(&[-1, 1])), ch(&[0]).scale(&q(2)));
        assert!(d(&AlgebraSpec::witt(1), &ch(&[7])).is_zero());
        let c = ch(&[1, 4]).sub(&ch(&[2, 3]).scale(&q(3)));
        assert!(d(&AlgebraSpec::witt(1), &c).is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let w = AlgebraSpec::witt(1);
        assert_eq!(delta(&w, &ch(&[3])), ch(&[1, 2]));
        assert!(delta(&w, &ch(&[2])).is_zero());
        assert_eq!(delta(&AlgebraSpec::looped(1), &ch(&[3])), ch(&[1, 2]));
    }

    #[test]
    fn inner_adjoint_example() {
        let w = AlgebraSpec::witt(1);
        assert_eq!(inner(&d(&w, &ch(&[1, 2])), &ch(&[3])), q(1));
        assert_eq!(inner(&ch(&[1, 2]), &delta(&w, &ch(&[3]))), q(1));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_pow(&ch(&[1, 4]), 1), ch(&[2, 5]));
        assert!(sigma_conj_pow(&AlgebraSpec::witt(1), &ch(&[1, 3]), 1).is_zero());
    }

    #[test]
    fn basis_examples() {
        let w = AlgebraSpec::witt(1);
        assert_eq!(
            graded_basis(&w, 3, 1),
            vec![Monomial::new(vec![3]).unwrap()]
        );
        assert_eq!(
            graded_basis(&w, 3, 2),
            vec![Monomial::new(vec![1, 2]).unwrap()]
        );
        assert_eq!(graded_basis(&w, 0, 0), vec![Monomial::empty()]);
        assert_eq!(max_dim(&w, 0), 0);
        let m = AlgebraSpec::witt(-1);
        assert_eq!(max_dim(&m, 0), 3);
        assert_eq!(
            graded_basis(&m, 0, 3),
            vec![Monomial::new(vec![-1, 0, 1]).unwrap()]
        );
        for n in 0..=30 {
            let total: usize = slice_bases(&w, n).iter().map(Basis::len).sum();
            assert_eq!(total, strict_partitions(1, n, None).len());
        }
    }

    fn specs() -> Vec<AlgebraSpec> {
        let mut v = Vec::new();
        for k in -1..=3 {
            v.push(AlgebraSpec::witt(k));
            v.push(AlgebraSpec::looped(k));
        }
        v
    }

    #[test]
    fn squares_vanish_and_gradings_shift() {
        for spec in specs() {
            for n in -1..=20 {
                for b in slice_bases(&spec, n) {
                    for m in b.monomials() {
                        let c = Chain::<Q>::monomial(m.clone());
                        let dc = d(&spec, &c);
                        let sc = delta(&spec, &c);
                        assert!(d(&spec, &dc).is_zero(), "{spec} d^2 {m}");
                        assert!(delta(&spec, &sc).is_zero(), "{spec} delta^2 {m}");
                        if let Some((q, deg)) = dc.grading() {
                            assert_eq!((q + 1, deg), (m.dim(), n));
                        }
                        if let Some((q, deg)) = sc.grading() {
                            assert_eq!((q, deg), (m.dim() + 1, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn delta_is_adjoint_of_d() {
        for spec in specs() {
            for n in -1..=18 {
                let bases = slice_bases(&spec, n);
                for q in 1..bases.len() {
                    let dm: SparseMatrix<Q> = d_matrix(&spec, &bases[q], &bases[q - 1]);
                    let sm: SparseMatrix<Q> = delta_matrix(&spec, &bases[q - 1], &bases[q]);
                    assert_eq!(dm.transpose(), sm, "{spec} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn sigma_adjointness_and_delta_shift() {
        let w = AlgebraSpec::witt(1);
        for n in 1..=15 {
            let bases = slice_bases(&w, n);
            for b in &bases {
                for r in 0..=3 {
                    for x in b.monomials() {
                        let sx = sigma_pow(&Chain::<Q>::monomial(x.clone()), r);
                        for y in graded_basis(&w, n + r as i64 * x.dim() as i64, x.dim()) {
                            let yc = Chain::<Q>::monomial(y);
                            assert_eq!(
                                inner(&sx, &yc),
                                inner(&Chain::monomial(x.clone()), &sigma_conj_pow(&w, &yc, r))
                            );
                        }
                    }
                }
            }
        }
        for spec in [AlgebraSpec::witt(1), AlgebraSpec::looped(2)] {
            for a in 1..=20 {
                for r in 0..=4 {
                    let lhs = sigma_conj_pow(&spec, &delta_generator::<Q>(&spec, a), r);
                    assert_eq!(lhs, delta_generator(&spec, a - 2 * r));
                }
            }
        }
    }
}
