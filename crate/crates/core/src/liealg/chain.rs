use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LieError;
use crate::qlinalg::{Field, FieldKind, Scalar};

/// `e_{i_1} ∧ ... ∧ e_{i_q}` with strictly increasing indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(indices: Vec<i32>) -> Result<Self, LieError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LieError::NotStrict(indices));
        }
        Ok(Monomial(indices))
    }

    pub fn empty() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts arbitrary indices, returning the permutation sign, or `None` on a repeat.
    pub fn normalize(mut indices: Vec<i32>) -> Option<(i32, Monomial)> {
        let sign = sort_sign(&mut indices)?;
        Some((sign, Monomial(indices)))
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&i| i as i64).sum()
    }

    pub fn min_index(&self) -> Option<i32> {
        self.0.first().copied()
    }

    pub fn contains(&self, i: i32) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Monomial::new(Vec::<i32>::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (j, i) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, "^")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// Insertion sort with sign; `None` when two entries coincide.
pub(crate) fn sort_sign(v: &mut [i32]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

/// A finite linear combination of monomials with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Chain<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Chain<F> {
    pub fn zero() -> Self {
        Chain {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut c = Self::zero();
        c.terms.insert(m, F::one());
        c
    }

    /// Single term from unsorted indices; zero when an index repeats.
    pub fn from_indices(indices: &[i32]) -> Self {
        let mut c = Self::zero();
        if let Some((s, m)) = Monomial::normalize(indices.to_vec()) {
            c.add_term(m, F::from_i64(s as i64));
        }
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut c = Self::zero();
        for (m, v) in terms {
            c.add_term(m, v);
        }
        c
    }

    pub fn add_term(&mut self, m: Monomial, v: F) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &v;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, v);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Chain {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut t = v.clone();
                    t *= s;
                    (m.clone(), t)
                })
                .collect(),
        }
    }

    /// Exterior product, normalizing each term by sorting with sign.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.0.clone();
                idx.extend_from_slice(&b.0);
                if let Some((s, m)) = Monomial::normalize(idx) {
                    let mut v = x.clone();
                    v *= y;
                    if s < 0 {
                        v = -v;
                    }
                    out.add_term(m, v);
                }
            }
        }
        out
    }

    /// Common `(dimension, degree)` of all terms, if homogeneous and nonzero.
    pub fn grading(&self) -> Option<(usize, i64)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let g = (first.dim(), first.degree());
        it.all(|m| (m.dim(), m.degree()) == g).then_some(g)
    }

    /// Applies `f` to every monomial, summing the results with coefficients.
    pub fn map_linear(&self, mut f: impl FnMut(&Monomial) -> Chain<F>) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            for (m2, w) in f(m).terms {
                let mut t = w;
                t *= v;
                out.add_term(m2, t);
            }
        }
        out
    }

    /// Same terms over another field.
    pub fn convert<G: Field>(&self, conv: impl Fn(&F) -> G) -> Chain<G> {
        Chain::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), conv(v))))
    }
}

/// Orthonormal inner product on monomials.
pub fn inner<F: Field>(x: &Chain<F>, y: &Chain<F>) -> F {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut acc = F::zero();
    for (m, v) in &small.terms {
        if let Some(w) = large.terms.get(m) {
            let mut t = v.clone();
            t *= w;
            acc += &t;
        }
    }
    acc
}

impl<F: Field> fmt::Display for Chain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (m, v)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v}) {m}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    indices: Monomial,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    field: FieldKind,
    terms: Vec<TermRepr>,
}

impl<F: Field> Serialize for Chain<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainRepr {
            field: F::KIND,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| TermRepr {
                    indices: m.clone(),
                    coeff: v.to_scalar(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, F: Field> Deserialize<'de> for Chain<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ChainRepr::deserialize(d)?;
        if r.field != F::KIND {
            return Err(D::Error::custom("chain field tag mismatch"));
        }
        let mut c = Chain::zero();
        for t in r.terms {
            let v = F::from_scalar(&t.coeff)
                .ok_or_else(|| D::Error::custom("coefficient outside the chain field"))?;
            c.add_term(t.indices, v);
        }
        Ok(c)
    }
}

/// An ordered list of monomials with reverse lookup.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `c`; fails if `c` has a term outside the basis.
    pub fn coords<F: Field>(&self, c: &Chain<F>) -> Result<Vec<F>, LieError> {
        let mut v = vec![F::zero(); self.len()];
        for (m, x) in c.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| LieError::OutsideSlice(m.to_string()))?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    pub fn chain<F: Field>(&self, coords: &[F]) -> Chain<F> {
        Chain::from_terms(
            self.monomials
                .iter()
                .zip(coords)
                .map(|(m, v)| (m.clone(), v.clone())),
        )
    }
}
