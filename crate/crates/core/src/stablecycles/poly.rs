//! Expanded polynomials, antisymmetric polynomials in the determinant basis
//! `Delta_I(t) = det(t_r^{i_m})`, and symmetric polynomials in the Schur basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::StableError;
use crate::liealg::{Chain, Monomial};
use crate::partitions::{Partition, StrictPartition};
use crate::qlinalg::{format_q, Q};

pub type Exponents = Vec<u32>;

/// A polynomial in `t_1, ..., t_nvars` as a sparse map from exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `t_i -> t_i^m` in every variable.
    pub fn power_substitute(&self, m: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * m).collect(), c.clone()))
                .collect(),
        }
    }

    /// Quotient and remainder of division by `t_j^m - t_i^m`, as a polynomial in
    /// `t_j`. The remainder has `t_j`-degree below `m`.
    pub fn divide_binomial(&self, j: usize, i: usize, m: u32) -> (Poly, Poly) {
        let top = self.terms.keys().map(|e| e[j]).max().unwrap_or(0) as usize;
        let mut levels: Vec<Poly> = vec![Poly::zero(self.nvars); top + 1];
        for (e, c) in &self.terms {
            levels[e[j] as usize].add_term(e.clone(), c.clone());
        }
        let mut quotient = Poly::zero(self.nvars);
        let m = m as usize;
        for lvl in (m..=top).rev() {
            let row = std::mem::take(&mut levels[lvl].terms);
            for (mut e, c) in row {
                e[j] -= m as u32;
                quotient.add_term(e.clone(), c.clone());
                e[i] += m as u32;
                levels[lvl - m].add_term(e, c);
            }
        }
        let mut rem = Poly::zero(self.nvars);
        for l in levels.into_iter().take(m) {
            for (e, c) in l.terms {
                rem.add_term(e, c);
            }
        }
        (quotient, rem)
    }

    /// Divides by `prod (t_j^m - t_i^m)` over the listed `(j, i, m)` in turn,
    /// returning the final quotient and every intermediate remainder.
    pub fn divide_factors(&self, factors: &[(usize, usize, u32)]) -> (Poly, Vec<Poly>) {
        let mut cur = self.clone();
        let mut rems = Vec::with_capacity(factors.len());
        for &(j, i, m) in factors {
            let (quo, rem) = cur.divide_binomial(j, i, m);
            rems.push(rem);
            cur = quo;
        }
        (cur, rems)
    }

    /// Exact quotient, `None` when some factor leaves a remainder.
    pub fn exact_quotient(&self, factors: &[(usize, usize, u32)]) -> Option<Poly> {
        let (quo, rems) = self.divide_factors(factors);
        rems.iter().all(Poly::is_zero).then_some(quo)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

/// Factors `(t_j^m - t_i^m)`, `i < j`, of `V_q(t^m)`, each repeated `times` times.
pub fn vandermonde_factors(q: usize, m: u32, times: usize) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for j in 0..q {
        for i in 0..j {
            for _ in 0..times {
                out.push((j, i, m));
            }
        }
    }
    out
}

/// `V_q(t) = prod_{i<j} (t_j - t_i)`.
pub fn vandermonde(q: usize) -> Poly {
    let mut out = Poly::one(q);
    for j in 0..q {
        for i in 0..j {
            let mut f = Poly::zero(q);
            let mut ej = vec![0; q];
            ej[j] = 1;
            let mut ei = vec![0; q];
            ei[i] = 1;
            f.add_term(ej, Q::one());
            f.add_term(ei, -Q::one());
            out = out.mul(&f);
        }
    }
    out
}

/// Sign of the sorting permutation and the sorted key; `None` on a repeat.
pub fn straighten(exponents: &[u32]) -> Option<(i32, StrictPartition)> {
    let mut v: Vec<u32> = exponents.to_vec();
    let mut sign = 1;
    for a in 1..v.len() {
        let mut b = a;
        while b > 0 && v[b - 1] > v[b] {
            v.swap(b - 1, b);
            sign = -sign;
            b -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let key = StrictPartition::new(v.into_iter().map(|x| x as i32).collect())
        .expect("sorted distinct non-negative");
    Some((sign, key))
}

fn permutations(n: usize) -> Vec<(i32, Vec<usize>)> {
    let mut out = vec![(1, Vec::new())];
    for len in 0..n {
        let mut next = Vec::with_capacity(out.len() * (len + 1));
        for (s, p) in &out {
            for pos in 0..=len {
                let mut q = p.clone();
                q.insert(pos, len);
                let moved = (len - pos) as i32;
                next.push((if moved % 2 == 0 { *s } else { -s }, q));
            }
        }
        out = next;
    }
    out
}

/// An antisymmetric polynomial `sum c_I Delta_I(t)` in `nvars` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntisymPoly {
    nvars: usize,
    coeffs: BTreeMap<StrictPartition, Q>,
}

#[derive(Serialize)]
struct DeltaTerm<'a> {
    key: &'a StrictPartition,
    coeff: String,
}

impl Serialize for AntisymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            delta_basis: Vec<DeltaTerm<'a>>,
        }
        Repr {
            delta_basis: self
                .coeffs
                .iter()
                .map(|(key, c)| DeltaTerm {
                    key,
                    coeff: format_q(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl AntisymPoly {
    pub fn zero(nvars: usize) -> Self {
        AntisymPoly {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    /// `Delta_I` for a strict key of length `nvars`.
    pub fn delta(key: StrictPartition) -> Self {
        let mut p = Self::zero(key.dim());
        p.coeffs.insert(key, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &BTreeMap<StrictPartition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, key: &StrictPartition) -> Q {
        self.coeffs.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, key: StrictPartition, c: Q) {
        assert_eq!(
            key.dim(),
            self.nvars,
            "key length differs from variable count"
        );
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(Q::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &AntisymPoly) -> AntisymPoly {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> AntisymPoly {
        let mut out = Self::zero(self.nvars);
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    /// Expansion into monomials, `Delta_I = sum_pi sgn(pi) prod_r t_r^{i_pi(r)}`.
    pub fn to_expanded(&self) -> Poly {
        let perms = permutations(self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (key, c) in &self.coeffs {
            let parts = key.parts();
            for (s, p) in &perms {
                let e = p.iter().map(|&m| parts[m] as u32).collect();
                out.add_term(e, if *s > 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// Reads the `Delta`-coordinates of an antisymmetric polynomial off its
    /// strictly increasing exponent vectors.
    pub fn from_expanded(p: &Poly) -> AntisymPoly {
        let mut out = Self::zero(p.nvars());
        for (e, c) in p.terms() {
            if e.windows(2).all(|w| w[0] < w[1]) {
                let key = StrictPartition::new(e.iter().map(|&x| x as i32).collect())
                    .expect("strictly increasing");
                out.coeffs.insert(key, c.clone());
            }
        }
        out
    }

    /// Exterior product, `Delta_I ∧ Delta_J = Delta_{(I, J)}`.
    pub fn wedge(&self, other: &AntisymPoly) -> AntisymPoly {
        let mut out = Self::zero(self.nvars + other.nvars);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let exps: Vec<u32> = a
                    .parts()
                    .iter()
                    .chain(b.parts())
                    .map(|&x| x as u32)
                    .collect();
                if let Some((s, key)) = straighten(&exps) {
                    let v = ca * cb;
                    out.add_term(key, if s > 0 { v } else { -v });
                }
            }
        }
        out
    }

    /// Degree of every `Delta_I` term; `None` when they differ or there are none.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.coeffs.keys().map(|k| k.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// `e_I -> Delta_I`. All terms must share one dimension and have indices `>= 0`.
pub fn chain_to_poly(c: &Chain<Q>) -> Result<AntisymPoly, StableError> {
    let mut dim = None;
    let mut out = AntisymPoly::zero(0);
    for (m, v) in c.terms() {
        if m.indices().iter().any(|&i| i < 0) {
            return Err(StableError::NegativeIndex(m.to_string()));
        }
        match dim {
            None => {
                dim = Some(m.dim());
                out = AntisymPoly::zero(m.dim());
            }
            Some(q) if q != m.dim() => return Err(StableError::NotGraded),
            _ => {}
        }
        let key = StrictPartition::new(m.indices().to_vec()).expect("monomial indices are strict");
        out.add_term(key, v.clone());
    }
    Ok(out)
}

/// Inverse of [`chain_to_poly`].
pub fn poly_to_chain(f: &AntisymPoly) -> Chain<Q> {
    Chain::from_terms(f.coeffs.iter().map(|(k, c)| {
        (
            Monomial::new(k.parts().to_vec()).expect("strict key"),
            c.clone(),
        )
    }))
}

/// Parts padded with leading zeros to length `q`.
pub(crate) fn padded(i: &Partition, q: usize) -> Vec<i32> {
    let mut v = vec![0; q - i.dim()];
    v.extend_from_slice(i.parts());
    v
}

fn strip_zeros(v: Vec<i32>) -> Partition {
    Partition::new(v.into_iter().filter(|&x| x > 0).collect()).expect("non-decreasing")
}

/// `J ⊵ I` for vectors of equal length: every ascending partial sum of `J` is
/// at least that of `I`.
pub(crate) fn dominates(j: &[i32], i: &[i32]) -> bool {
    j.len() == i.len()
        && j.iter()
            .zip(i)
            .scan((0i64, 0i64), |acc, (a, b)| {
                acc.0 += *a as i64;
                acc.1 += *b as i64;
                Some(acc.0 >= acc.1)
            })
            .all(|x| x)
}

/// A symmetric polynomial `sum c_I S_I(t)` in `nvars` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    coeffs: BTreeMap<Partition, Q>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Keys carry no zero parts.
    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, i: &Partition) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    fn insert(&mut self, i: Partition, c: Q) {
        if !c.is_zero() {
            self.coeffs.insert(i, c);
        }
    }

    /// Monomial expansion via `S_I = Delta_{I + rho} / V`.
    pub fn to_expanded(&self) -> Poly {
        let q = self.nvars;
        let mut num = AntisymPoly::zero(q);
        for (i, c) in &self.coeffs {
            let shifted: Vec<i32> = padded(i, q)
                .iter()
                .enumerate()
                .map(|(m, x)| x + m as i32)
                .collect();
            num.add_term(
                StrictPartition::new(shifted).expect("shift is strict"),
                c.clone(),
            );
        }
        num.to_expanded()
            .exact_quotient(&vandermonde_factors(q, 1, 1))
            .expect("antisymmetric polynomials are divisible by V")
    }

    /// Schur coordinates of a symmetric polynomial.
    pub fn from_expanded(p: &Poly) -> SymPoly {
        let q = p.nvars();
        let alt = AntisymPoly::from_expanded(&p.mul(&vandermonde(q)));
        let mut out = SymPoly::zero(q);
        for (key, c) in alt.coeffs() {
            let lam = key
                .parts()
                .iter()
                .enumerate()
                .map(|(m, x)| x - m as i32)
                .collect();
            out.insert(strip_zeros(lam), c.clone());
        }
        out
    }
}

/// `S_I` in `q` variables.
pub fn schur(i: &Partition, q: usize) -> Result<SymPoly, StableError> {
    if i.dim() > q {
        return Err(StableError::TooManyParts { dim: i.dim(), q });
    }
    let mut out = SymPoly::zero(q);
    out.insert(strip_zeros(i.parts().to_vec()), Q::one());
    Ok(out)
}

/// Product of two symmetric polynomials, re-expanded in the Schur basis.
pub fn schur_product(a: &SymPoly, b: &SymPoly) -> Result<SymPoly, StableError> {
    if a.nvars != b.nvars {
        return Err(StableError::VariableMismatch(a.nvars, b.nvars));
    }
    Ok(SymPoly::from_expanded(
        &a.to_expanded().mul(&b.to_expanded()),
    ))
}
