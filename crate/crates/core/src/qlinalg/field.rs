use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rationals, always in lowest terms with a positive denominator.
pub type Q = BigRational;

/// Which exact field a value or chain lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// The rationals.
    #[serde(rename = "Q")]
    Rational,
    /// The cyclotomic field `Q(w)` with `w^2 + w + 1 = 0`.
    #[serde(rename = "Qw")]
    Omega,
}

/// An exact field. All linear algebra in this crate is generic over it.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    const KIND: FieldKind;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn to_scalar(&self) -> Scalar;

    fn from_scalar(s: &Scalar) -> Option<Self>;

    fn from_rational(q: Q) -> Self;

    /// `self -= a * b` without an intermediate clone of `self`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self -= &t;
    }
}

impl Field for Q {
    const KIND: FieldKind = FieldKind::Rational;

    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Rational(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Omega(_) => None,
        }
    }

    fn from_rational(q: Q) -> Self {
        q
    }
}

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form of a rational: `p` for integers, `p/q` otherwise.
pub fn format_q(v: &Q) -> String {
    v.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// An element `a + b*w` of `Q(w)`, where `w^2 = -1 - w`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QOmega {
    pub a: Q,
    pub b: Q,
}

impl QOmega {
    pub fn new(a: Q, b: Q) -> Self {
        QOmega { a, b }
    }

    /// The primitive cube root `w`.
    pub fn omega() -> Self {
        QOmega::new(Q::zero(), Q::one())
    }

    /// `w^2 = -1 - w`.
    pub fn omega_sq() -> Self {
        QOmega::new(-Q::one(), -Q::one())
    }

    pub fn rational(a: Q) -> Self {
        QOmega::new(a, Q::zero())
    }

    /// Galois conjugate, `w -> w^2 = -1 - w`.
    pub fn conj(&self) -> Self {
        QOmega::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm `a^2 - ab + b^2`, always rational.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QOmega::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}w", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl Zero for QOmega {
    fn zero() -> Self {
        QOmega::new(Q::zero(), Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QOmega {
    fn one() -> Self {
        QOmega::new(Q::one(), Q::zero())
    }
}

impl Neg for QOmega {
    type Output = QOmega;
    fn neg(self) -> QOmega {
        QOmega::new(-self.a, -self.b)
    }
}

impl Add for QOmega {
    type Output = QOmega;
    fn add(self, o: QOmega) -> QOmega {
        QOmega::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QOmega {
    type Output = QOmega;
    fn sub(self, o: QOmega) -> QOmega {
        QOmega::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for QOmega {
    type Output = QOmega;
    fn mul(self, o: QOmega) -> QOmega {
        let bd = &self.b * &o.b;
        let a = &self.a * &o.a - &bd;
        let b = &self.a * &o.b + &self.b * &o.a - bd;
        QOmega::new(a, b)
    }
}

impl Div for QOmega {
    type Output = QOmega;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QOmega) -> QOmega {
        self * o.inv()
    }
}

impl<'a> AddAssign<&'a QOmega> for QOmega {
    fn add_assign(&mut self, o: &'a QOmega) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl<'a> SubAssign<&'a QOmega> for QOmega {
    fn sub_assign(&mut self, o: &'a QOmega) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl<'a> MulAssign<&'a QOmega> for QOmega {
    fn mul_assign(&mut self, o: &'a QOmega) {
        *self = self.clone() * o.clone();
    }
}

impl Field for QOmega {
    const KIND: FieldKind = FieldKind::Omega;

    fn from_i64(v: i64) -> Self {
        QOmega::rational(q(v))
    }

    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        let c = self.conj();
        QOmega::new(c.a / &n, c.b / n)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Omega(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Option<Self> {
        match s {
            Scalar::Omega(w) => Some(w.clone()),
            Scalar::Rational(_) => None,
        }
    }

    fn from_rational(q: Q) -> Self {
        QOmega::rational(q)
    }
}

/// A dynamically tagged field element, used at serialization boundaries.
///
/// Arithmetic between a `Rational` and an `Omega` value is a programming
/// error and panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(Q),
    Omega(QOmega),
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Omega(_) => FieldKind::Omega,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(v) => v.is_zero(),
            Scalar::Omega(v) => v.is_zero(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!(
            "mixed-field arithmetic: {:?} with {:?}",
            self.kind(),
            other.kind()
        )
    }

    pub fn checked_add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Omega(a), Scalar::Omega(b)) => Scalar::Omega(a.clone() + b.clone()),
            _ => self.mismatch(other),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Omega(a), Scalar::Omega(b)) => Scalar::Omega(a.clone() * b.clone()),
            _ => self.mismatch(other),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(v) => write!(f, "{v}"),
            Scalar::Omega(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(v) => s.serialize_str(&format_q(v)),
            Scalar::Omega(v) => [format_q(&v.a), format_q(&v.b)].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            One(String),
            Pair([String; 2]),
        }
        let bad = |s: &str| serde::de::Error::custom(format!("bad rational {s:?}"));
        match Raw::deserialize(d)? {
            Raw::One(s) => parse_q(&s).map(Scalar::Rational).ok_or_else(|| bad(&s)),
            Raw::Pair([a, b]) => {
                let qa = parse_q(&a).ok_or_else(|| bad(&a))?;
                let qb = parse_q(&b).ok_or_else(|| bad(&b))?;
                Ok(Scalar::Omega(QOmega::new(qa, qb)))
            }
        }
    }
}
