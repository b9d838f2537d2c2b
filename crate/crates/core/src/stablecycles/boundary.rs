//! The boundary operator on antisymmetric polynomials.
//!
//! `d F = sum_{r=1}^{q-1} (-1)^r F_r(t; h)`, where `F_r` substitutes
//! `(h^2 t_r, h t_r)` for the adjacent pair `(t_r, t_{r+1})` and divides by
//! `h^2 - h`. The witt family takes the limit `h -> 1`; the loop family takes
//! `h = w`, a primitive cube root of unity.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::poly::{AntisymPoly, Exponents};
use crate::liealg::Family;
use crate::partitions::StrictPartition;
use crate::qlinalg::{q, QOmega, Q};

/// Rational coefficients grouped by the power of `h` mod 3.
type Residues = [Q; 3];

pub fn d_poly(family: Family, f: &AntisymPoly) -> AntisymPoly {
    let nv = f.nvars();
    if nv < 2 {
        return AntisymPoly::zero(nv.saturating_sub(1));
    }
    let expanded = f.to_expanded();
    let mut witt: BTreeMap<Exponents, Q> = BTreeMap::new();
    let mut looped: BTreeMap<Exponents, Residues> = BTreeMap::new();
    for r in 0..nv - 1 {
        let negative = r % 2 == 0;
        for (e, c) in expanded.terms() {
            let mut target = Vec::with_capacity(nv - 1);
            target.extend_from_slice(&e[..r]);
            target.push(e[r] + e[r + 1]);
            target.extend_from_slice(&e[r + 2..]);
            if !target.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            let hpow = 2 * e[r] + e[r + 1];
            let c = if negative { -c.clone() } else { c.clone() };
            match family {
                Family::Witt => {
                    // L'Hopital at h = 1: the numerator vanishes there and
                    // (h^2 - h)' = 1.
                    *witt.entry(target).or_insert_with(Q::zero) += &(c * q(hpow as i64));
                }
                Family::Loop => {
                    let slot = looped
                        .entry(target)
                        .or_insert_with(|| [Q::zero(), Q::zero(), Q::zero()]);
                    slot[(hpow % 3) as usize] += &c;
                }
            }
        }
    }
    let mut out = AntisymPoly::zero(nv - 1);
    let key = |e: Exponents| {
        StrictPartition::new(e.into_iter().map(|x| x as i32).collect()).expect("strict target")
    };
    for (e, c) in witt {
        out.add_term(key(e), c);
    }
    let denom = QOmega::omega_sq() - QOmega::omega();
    for (e, [c0, c1, c2]) in looped {
        let num = QOmega::rational(c0)
            + QOmega::omega() * QOmega::rational(c1)
            + QOmega::omega_sq() * QOmega::rational(c2);
        let v = (num / denom.clone())
            .as_rational()
            .expect("the loop boundary has rational coefficients");
        out.add_term(key(e), v);
    }
    out
}
