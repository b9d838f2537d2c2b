//! Explicit stable cycles `E_I(t) = S_{I - 3rho}(t) V^3(t)` (witt) or
//! `S_{I - 3rho}(t) V(t^3)` (loop), and the odd-product expansion rule for
//! determinant polynomials.

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{dominates, padded, poly_to_chain, schur, vandermonde, AntisymPoly, Poly};
use super::stab::is_stable;
use super::StableError;
use crate::cohomology::betti;
use crate::liealg::{d, graded_basis, AlgebraSpec, Basis, Chain, Family};
use crate::partitions::{
    is_main, is_nonsingular, main_partitions, order_cmp, DistinguishedPartition, OrderVerdict,
    Partition, StrictPartition,
};
use crate::qlinalg::{span_rank, Q};

fn cycle_factor(family: Family, q: usize) -> Poly {
    match family {
        Family::Witt => {
            let v = vandermonde(q);
            v.mul(&v).mul(&v)
        }
        Family::Loop => vandermonde(q).power_substitute(3),
    }
}

/// `E_I(t)` in the determinant basis.
pub fn explicit_cycle_poly(
    i: &Partition,
    family: Family,
    k: i32,
) -> Result<AntisymPoly, StableError> {
    if k < 0 {
        return Err(StableError::NegativeIndex(i.to_string()));
    }
    if !i.is_strict() || !is_nonsingular(i, k) {
        return Err(StableError::Singular(i.to_string(), k));
    }
    let q = i.dim();
    let lam = Partition::new(
        i.parts()
            .iter()
            .enumerate()
            .map(|(m, x)| x - 3 * m as i32)
            .collect(),
    )?;
    let s = schur(&lam, q)?.to_expanded();
    Ok(AntisymPoly::from_expanded(&s.mul(&cycle_factor(family, q))))
}

/// The chain of `E_I(t)`.
pub fn explicit_cycle(i: &Partition, family: Family, k: i32) -> Result<Chain<Q>, StableError> {
    Ok(poly_to_chain(&explicit_cycle_poly(i, family, k)?))
}

/// One explicit cycle in output form.
#[derive(Clone, Debug, Serialize)]
pub struct CycleRecord {
    pub partition: Partition,
    pub family: Family,
    pub chain: Chain<Q>,
    pub polynomial: AntisymPoly,
}

impl CycleRecord {
    pub fn new(i: &Partition, family: Family, k: i32) -> Result<Self, StableError> {
        let polynomial = explicit_cycle_poly(i, family, k)?;
        Ok(CycleRecord {
            partition: i.clone(),
            family,
            chain: poly_to_chain(&polynomial),
            polynomial,
        })
    }
}

/// Checks on the explicit cycles of the main partitions of one slice.
#[derive(Clone, Debug, Serialize)]
pub struct ExplicitCycleCheck {
    pub spec: AlgebraSpec,
    pub n: i64,
    pub dim: usize,
    pub count: usize,
    pub betti: usize,
    /// Coefficient 1 at `e_I`, integers elsewhere.
    pub unit_leading: bool,
    /// Every other monomial is strictly above `I` in the filtering order.
    pub above: bool,
    /// Every other monomial is singular.
    pub singular_tail: bool,
    pub stable: bool,
    /// Independent modulo boundaries.
    pub independent: bool,
}

impl ExplicitCycleCheck {
    pub fn passed(&self) -> bool {
        self.unit_leading
            && self.above
            && self.singular_tail
            && self.stable
            && self.independent
            && self.count == self.betti
    }
}

pub fn explicit_cycles_check(
    spec: &AlgebraSpec,
    n: i64,
    dim: usize,
) -> Result<ExplicitCycleCheck, StableError> {
    spec.require_positive_k()?;
    let k = spec.k;
    let mains = main_partitions(k, n, Some(dim));
    let basis = Basis::new(graded_basis(spec, n, dim));
    let (mut unit_leading, mut above, mut singular_tail, mut stable) = (true, true, true, true);
    let mut vectors = Vec::with_capacity(mains.len());
    for i in &mains {
        debug_assert!(is_main(i, k));
        let c = explicit_cycle(i, spec.family, k)?;
        let lead = DistinguishedPartition::unmarked(i.clone())?;
        for (m, v) in c.terms() {
            unit_leading &= v.denom().is_one();
            if m.indices() == i.parts() {
                unit_leading &= v.is_one();
                continue;
            }
            let p = Partition::new(m.indices().to_vec())?;
            singular_tail &= !is_nonsingular(&p, k);
            above &= order_cmp(&DistinguishedPartition::unmarked(p)?, &lead, k)?
                == OrderVerdict::Greater;
        }
        unit_leading &= !c
            .coeff(&crate::liealg::Monomial::new(i.parts().to_vec())?)
            .is_zero();
        stable &= is_stable(&c, spec)?;
        vectors.push(basis.coords(&c)?);
    }
    let boundaries: Vec<Vec<Q>> = graded_basis(spec, n, dim + 1)
        .into_iter()
        .map(|m| basis.coords(&d(spec, &Chain::<Q>::monomial(m))))
        .collect::<Result<_, _>>()?;
    let r = span_rank(&boundaries, basis.len());
    let mut all = boundaries;
    all.extend(vectors);
    let independent = span_rank(&all, basis.len()) == r + mains.len();
    Ok(ExplicitCycleCheck {
        spec: *spec,
        n,
        dim,
        count: mains.len(),
        betti: betti(spec, n, dim),
        unit_leading,
        above,
        singular_tail,
        stable,
        independent,
    })
}

/// Expands `Delta_{A_1} ... Delta_{A_m}` for odd `m` and checks that the
/// coefficients are integers supported on `J ⊵ A_1 + ... + A_m`.
pub fn odd_delta_product_check(parts: &[StrictPartition]) -> Result<bool, StableError> {
    if parts.len().is_multiple_of(2) {
        return Err(StableError::EvenFactorCount(parts.len()));
    }
    let q = parts[0].dim();
    if let Some(p) = parts.iter().find(|p| p.dim() != q) {
        return Err(StableError::VariableMismatch(q, p.dim()));
    }
    let mut prod = Poly::one(q);
    let mut sum = vec![0; q];
    for a in parts {
        prod = prod.mul(&AntisymPoly::delta(a.clone()).to_expanded());
        for (s, x) in sum.iter_mut().zip(a.parts()) {
            *s += x;
        }
    }
    let alt = AntisymPoly::from_expanded(&prod);
    if alt.to_expanded() != prod {
        return Ok(false);
    }
    Ok(alt
        .coeffs()
        .iter()
        .all(|(j, c)| c.denom().is_one() && dominates(&padded(j, q), &sum)))
}
