//! Rank over the prime field `F_p`, `p = 2^31 - 1`, of matrices with rational
//! entries. The result is a lower bound for the rank over `Q`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::elim::{structured_rank, Entry};
use super::{SparseMatrix, Q};

pub const PRIME: u64 = (1 << 31) - 1;

fn mul(a: u64, b: u64) -> u64 {
    a * b % PRIME
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce(v: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = (v % &p).abs().to_u64().expect("reduced below p");
    if v.is_negative() && r != 0 {
        PRIME - r
    } else {
        r
    }
}

/// Image of a rational in `F_p`, `None` when `p` divides the denominator.
pub fn to_fp(x: &Q) -> Option<u64> {
    let d = reduce(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce(x.numer()), inv(d)))
}

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp(pub u64);

impl Entry for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Self {
        Fp(inv(self.0))
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(mul(self.0, other.0))
    }
    fn sub_mul(&mut self, f: &Self, v: &Self) {
        self.0 = (self.0 + (PRIME - f.0) * v.0) % PRIME;
    }
}

/// Rank of `m` reduced modulo `p`; `None` if an entry has a denominator
/// divisible by `p`.
pub fn rank_mod_p(m: &SparseMatrix<Q>) -> Option<usize> {
    let mut rows = Vec::with_capacity(m.nrows());
    for r in 0..m.nrows() {
        let mut row = Vec::with_capacity(m.row(r).len());
        for (&c, v) in m.row(r) {
            let x = to_fp(v)?;
            if x != 0 {
                row.push((c as u32, Fp(x)));
            }
        }
        rows.push(row);
    }
    Some(structured_rank(rows, m.ncols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, q_frac};

    #[test]
    fn matches_rational_rank_on_small_matrices() {
        let m = SparseMatrix::from_dense(&[
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q_frac(1, 2)],
        ]);
        assert_eq!(rank_mod_p(&m), Some(2));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_denominators() {
        assert_eq!(to_fp(&q_frac(1, 2)).map(|x| mul(x, 2)), Some(1));
        assert_eq!(to_fp(&q(-1)), Some(PRIME - 1));
        assert_eq!(to_fp(&Q::new(BigInt::from(1), BigInt::from(PRIME))), None);
    }
}
