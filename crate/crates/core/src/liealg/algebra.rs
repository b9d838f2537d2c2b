use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LieError;
use crate::qlinalg::{QOmega, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `[e_a, e_b] = (b - a) e_{a+b}`.
    Witt,
    /// `[e_a, e_b] = eps(b - a) e_{a+b}` with `eps` the residue sign mod 3.
    Loop,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Witt => "witt",
            Family::Loop => "loop",
        })
    }
}

impl FromStr for Family {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witt" => Ok(Family::Witt),
            "loop" => Ok(Family::Loop),
            _ => Err(LieError::UnknownFamily(s.to_string())),
        }
    }
}

/// The algebra spanned by `e_i`, `i >= k`, of one family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: Family,
    pub k: i32,
}

impl AlgebraSpec {
    pub fn new(family: Family, k: i32) -> Result<Self, LieError> {
        if k < -1 {
            return Err(LieError::KOutOfRange(k));
        }
        Ok(AlgebraSpec { family, k })
    }

    pub fn witt(k: i32) -> Self {
        Self::new(Family::Witt, k).expect("k >= -1")
    }

    pub fn looped(k: i32) -> Self {
        Self::new(Family::Loop, k).expect("k >= -1")
    }

    pub fn mu(&self, z: i64) -> i64 {
        mu(self.family, z)
    }

    /// Filtering-basis machinery needs a nilpotent algebra.
    pub fn require_positive_k(&self) -> Result<(), LieError> {
        if self.k < 1 {
            Err(LieError::NeedsPositiveK(self.k))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={})", self.family, self.k)
    }
}

/// `-1, 0, 1` for `z = -1, 0, 1 mod 3`.
pub fn eps(z: i64) -> i64 {
    match z.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Structure constant: `[e_a, e_b] = mu(b - a) e_{a+b}`.
pub fn mu(family: Family, z: i64) -> i64 {
    match family {
        Family::Witt => z,
        Family::Loop => eps(z),
    }
}

/// The deformed structure constant `(h^{2m} - h^m) / (h^2 - h)`, `m = b - a`,
/// for `h` a cube root of unity. At `h = 1` the limit `m` is returned.
pub fn bracket_h(a: i64, b: i64, h: &QOmega) -> Result<QOmega, LieError> {
    let one = QOmega::one();
    let is_root = *h == one || *h == QOmega::omega() || *h == QOmega::omega_sq();
    if !is_root {
        return Err(LieError::NotCubeRoot(h.to_string()));
    }
    let m = b - a;
    if *h == one {
        return Ok(QOmega::rational(Q::from_integer(m.into())));
    }
    let num = h.pow(2 * m) - h.pow(m);
    let den = h.pow(2) - h.clone();
    Ok(num / den)
}

/// The same formula for an arbitrary rational `h` with `h^2 != h`.
pub fn deformed_bracket(a: i64, b: i64, h: &Q) -> Q {
    assert!(!h.is_zero() && !h.is_one(), "h must differ from 0 and 1");
    let m = b - a;
    let pow = |e: i64| -> Q {
        let base = if e < 0 { h.recip() } else { h.clone() };
        num_traits::pow(base, e.unsigned_abs() as usize)
    };
    (pow(2 * m) - pow(m)) / (h * h - h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    fn qo(v: i64) -> QOmega {
        QOmega::rational(q(v))
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(Family::Witt, 3), 3);
        assert_eq!(mu(Family::Loop, 3), 0);
        assert_eq!(mu(Family::Loop, -4), -1);
        assert_eq!(mu(Family::Loop, 4), 1);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_h(0, 3, &QOmega::one()).unwrap(), qo(3));
        assert_eq!(bracket_h(0, 1, &QOmega::omega()).unwrap(), qo(1));
        assert_eq!(bracket_h(0, 3, &QOmega::omega()).unwrap(), qo(0));
        assert!(bracket_h(0, 1, &qo(2)).is_err());
    }

    #[test]
    fn bracket_specializes_to_both_families() {
        for a in -6..=6 {
            for b in -6..=6 {
                assert_eq!(
                    bracket_h(a, b, &QOmega::one()).unwrap(),
                    qo(mu(Family::Witt, b - a))
                );
                for h in [QOmega::omega(), QOmega::omega_sq()] {
                    assert_eq!(bracket_h(a, b, &h).unwrap(), qo(mu(Family::Loop, b - a)));
                }
            }
        }
    }

    /// Jacobi sum for `[e_a, e_b] = c(a, b) e_{a+b}`.
    fn jacobi<T, C>(c: C, a: i64, b: i64, d: i64) -> T
    where
        T: std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
        C: Fn(i64, i64) -> T,
    {
        c(b, d) * c(a, b + d) + c(d, a) * c(b, d + a) + c(a, b) * c(d, a + b)
    }

    #[test]
    fn jacobi_holds_exactly_at_cube_roots() {
        for h in [QOmega::one(), QOmega::omega(), QOmega::omega_sq()] {
            let c = |x: i64, y: i64| bracket_h(x, y, &h).unwrap();
            for a in -6..=6 {
                for b in -6..=6 {
                    for d in -6..=6 {
                        assert!(jacobi(c, a, b, d).is_zero(), "h={h} ({a},{b},{d})");
                    }
                }
            }
        }
        let two = q(2);
        let c = |x: i64, y: i64| deformed_bracket(x, y, &two);
        let fails = (-6..=6i64)
            .flat_map(|a| (-6..=6i64).flat_map(move |b| (-6..=6i64).map(move |d| (a, b, d))))
            .any(|(a, b, d)| !jacobi(c, a, b, d).is_zero());
        assert!(fails);
    }

    #[test]
    fn twisted_antisymmetry() {
        for h in [QOmega::omega(), QOmega::omega_sq()] {
            for a in -6..=6 {
                for b in -6..=6 {
                    let lhs = bracket_h(a, b, &h).unwrap();
                    let rhs = -(h.pow(-3 * (b - a)) * bracket_h(b, a, &h).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // away from the cube roots the twist factor is h^{3(b-a)}
        let h = q(2);
        for a in -6..=6 {
            for b in -6..=6 {
                let lhs = deformed_bracket(a, b, &h);
                let f = num_traits::pow(h.clone(), 3 * (b - a).unsigned_abs() as usize);
                let scale = if b >= a { f } else { f.recip() };
                assert_eq!(lhs, -(scale * deformed_bracket(b, a, &h)));
            }
        }
    }
}
