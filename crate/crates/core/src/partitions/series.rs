//! Truncated bivariate power series in `x` with polynomial coefficients in `t`,
//! and the three generating-function identities for strict and nonsingular
//! partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{alpha, nonsingular_distinguished, nonsingular_partitions, strict_partitions};

/// Series `sum c[n][j] t^j x^n` for `n <= max_x`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncatedSeries {
    max_x: usize,
    coeffs: Vec<Vec<i64>>,
}

impl TruncatedSeries {
    pub fn zero(max_x: usize) -> Self {
        TruncatedSeries {
            max_x,
            coeffs: vec![Vec::new(); max_x + 1],
        }
    }

    pub fn one(max_x: usize) -> Self {
        let mut s = Self::zero(max_x);
        s.add_term(0, 0, 1);
        s
    }

    pub fn max_x(&self) -> usize {
        self.max_x
    }

    /// The `t`-polynomial multiplying `x^n`, lowest power first.
    pub fn coeff(&self, n: usize) -> &[i64] {
        &self.coeffs[n]
    }

    /// Adds `c t^j x^n`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, n: usize, j: usize, c: i64) {
        if n > self.max_x || c == 0 {
            return;
        }
        let row = &mut self.coeffs[n];
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] += c;
    }

    pub fn add(&mut self, other: &Self) {
        for (n, row) in other.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                self.add_term(n, j, c);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_x.min(other.max_x));
        for (n1, r1) in self.coeffs.iter().enumerate() {
            for (n2, r2) in other.coeffs.iter().enumerate() {
                if n1 + n2 > out.max_x {
                    break;
                }
                for (j1, &a) in r1.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j2, &b) in r2.iter().enumerate() {
                        out.add_term(n1 + n2, j1 + j2, a * b);
                    }
                }
            }
        }
        out
    }

    /// Multiplies by `1 + c t^j x^n`.
    pub fn mul_binomial(&self, c: i64, j: usize, n: usize) -> Self {
        let mut out = self.clone();
        for (m, row) in self.coeffs.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                out.add_term(m + n, i + j, c * a);
            }
        }
        out
    }

    /// Multiplies by `1 / (1 - x^n)`, `n >= 1`.
    pub fn div_one_minus_x_pow(&self, n: usize) -> Self {
        assert!(n >= 1);
        let mut out = self.clone();
        for m in n..=self.max_x {
            let prev = out.coeffs[m - n].clone();
            for (j, &a) in prev.iter().enumerate() {
                out.add_term(m, j, a);
            }
        }
        out
    }

    /// Multiplies by `t^j x^n`.
    pub fn shift(&self, j: usize, n: usize) -> Self {
        let mut out = Self::zero(self.max_x);
        for (m, row) in self.coeffs.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                out.add_term(m + n, i + j, a);
            }
        }
        out
    }

    /// Substitutes `t -> t x^s`.
    pub fn scale_t(&self, s: usize) -> Self {
        let mut out = Self::zero(self.max_x);
        for (m, row) in self.coeffs.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                out.add_term(m + i * s, i, a);
            }
        }
        out
    }

    /// Coefficient of `x^n` evaluated at `t = 1`.
    pub fn at_t_one(&self, n: usize) -> i64 {
        self.coeffs[n].iter().sum()
    }

    fn trimmed(&self) -> Vec<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|r| {
                let mut r = r.clone();
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect()
    }
}

impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.max_x == other.max_x && self.trimmed() == other.trimmed()
    }
}

impl Eq for TruncatedSeries {}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, row) in self.trimmed().iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{c}")?;
                if j > 0 {
                    write!(f, "*t^{j}")?;
                }
                if n > 0 {
                    write!(f, "*x^{n}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.max_x + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesIdentity {
    /// Strict partitions by dimension against nonsingular ones weighted by `(1+t)^alpha`.
    AlphaWeighted,
    /// The product `prod (1 + t x^q)` against counts of nonsingular distinguished partitions.
    DistinguishedProduct,
    /// The product against the closed-form sum over dimensions.
    Sylvester,
}

/// Strict `k`-partitions of degree `n` and dimension `q`.
pub fn count_p(k: i32, q: usize, n: i64) -> usize {
    strict_partitions(k, n, Some(q)).len()
}

/// Nonsingular `k`-partitions of degree `n`, dimension `q` and index `a`.
pub fn count_r(k: i32, q: usize, n: i64, a: usize) -> usize {
    nonsingular_partitions(k, n, Some(q))
        .iter()
        .filter(|i| alpha(i, k).expect("nonsingular") == a)
        .count()
}

/// Nonsingular distinguished `k`-partitions of degree `n`, reduced dimension `q`, height `h`.
pub fn count_m(k: i32, q: usize, h: usize, n: i64) -> usize {
    nonsingular_distinguished(k, n, Some(q + h))
        .iter()
        .filter(|d| d.reduced_dim() == q)
        .count()
}

/// `sum_{n,h} m_{k,q}(h,n) t^{h+q} x^n` by enumeration.
pub fn a_kq_series(k: i32, q: usize, max_x: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(max_x);
    for n in 1..=max_x as i64 {
        for d in nonsingular_distinguished(k, n, None) {
            if d.reduced_dim() == q {
                s.add_term(n as usize, d.dim(), 1);
            }
        }
    }
    s
}

fn product_side(k: i32, max_x: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(max_x);
    for q in k.max(1) as usize..=max_x {
        s = s.mul_binomial(1, 1, q);
    }
    s
}

/// Strict partitions counted by dimension, against nonsingular partitions
/// weighted by `t^q (1+t)^alpha`.
pub fn alpha_weighted_sides(k: i32, max_x: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut lhs = TruncatedSeries::one(max_x);
    let mut rhs = TruncatedSeries::one(max_x);
    for n in 1..=max_x {
        for i in strict_partitions(k, n as i64, None) {
            lhs.add_term(n, i.dim(), 1);
        }
        for i in nonsingular_partitions(k, n as i64, None) {
            let a = alpha(&i, k).expect("nonsingular");
            // t^q (1+t)^a expanded binomially
            let mut c = 1i64;
            for h in 0..=a {
                rhs.add_term(n, i.dim() + h, c);
                c = c * (a - h) as i64 / (h + 1) as i64;
            }
        }
    }
    (lhs, rhs)
}

pub fn distinguished_product_sides(k: i32, max_x: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut rhs = TruncatedSeries::one(max_x);
    for q in 1..=max_x {
        rhs.add(&a_kq_series(k, q, max_x));
    }
    (product_side(k, max_x), rhs)
}

pub fn sylvester_sides(k: i32, max_x: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut rhs = TruncatedSeries::one(max_x);
    let ku = k.max(1) as usize;
    for q in 1.. {
        let val = ku * q + 3 * q * (q - 1) / 2;
        if val > max_x {
            break;
        }
        let mut term = TruncatedSeries::one(max_x).shift(q, val);
        for j in ku..=q + ku - 2 {
            term = term.mul_binomial(1, 1, j);
        }
        term = term.mul_binomial(1, 1, 2 * q + ku - 1);
        for j in 1..=q {
            term = term.div_one_minus_x_pow(j);
        }
        rhs.add(&term);
    }
    (product_side(k, max_x), rhs)
}

pub fn verify_series_identity(which: SeriesIdentity, k: i32, max_x: usize) -> bool {
    let (l, r) = match which {
        SeriesIdentity::AlphaWeighted => alpha_weighted_sides(k, max_x),
        SeriesIdentity::DistinguishedProduct => distinguished_product_sides(k, max_x),
        SeriesIdentity::Sylvester => sylvester_sides(k, max_x),
    };
    l == r
}
