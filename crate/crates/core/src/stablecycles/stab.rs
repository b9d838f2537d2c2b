//! The three descriptions of stable cycles on a slice, the dual basis to the
//! ξ-monomials, and the level-one Laplacian on it.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{chain_to_poly, vandermonde_factors, AntisymPoly};
use super::StableError;
use crate::filtering::{basis_change, FilteringBasis};
use crate::laplacian::{energy, gamma};
use crate::liealg::sigma_pow;
use crate::liealg::{d, graded_basis, inner, max_dim, AlgebraSpec, Basis, Chain, Family};
use crate::partitions::{
    is_nonsingular, order_cmp, DistinguishedPartition, OrderVerdict, Partition,
};
use crate::qlinalg::{span_rank, SparseMatrix, Q};

fn family_factors(family: Family, q: usize) -> Vec<(usize, usize, u32)> {
    match family {
        Family::Witt => vandermonde_factors(q, 1, 3),
        Family::Loop => vandermonde_factors(q, 3, 1),
    }
}

/// Divisibility by `V_q^3` (witt) or `V_q(t^3)` (loop).
pub fn is_divisible(family: Family, f: &AntisymPoly) -> bool {
    f.to_expanded()
        .exact_quotient(&family_factors(family, f.nvars()))
        .is_some()
}

fn shift_bound(q: usize) -> i32 {
    q as i32 + 2
}

fn shifted_cycle(spec: &AlgebraSpec, c: &Chain<Q>, q: usize) -> bool {
    (0..=shift_bound(q)).all(|r| d(spec, &sigma_pow(c, r)).is_zero())
}

/// Stability of `c`, decided by Vandermonde divisibility and cross-checked
/// against `d(sigma^r c) = 0` for `r <= q + 2`.
pub fn is_stable(c: &Chain<Q>, spec: &AlgebraSpec) -> Result<bool, StableError> {
    let f = chain_to_poly(c)?;
    let divisible = is_divisible(spec.family, &f);
    let shifted = shifted_cycle(spec, c, f.nvars());
    if divisible != shifted {
        return Err(StableError::Disagreement {
            chain: c.to_string(),
            divisible,
            shifted,
        });
    }
    Ok(divisible)
}

fn kernel(rows: usize, cols: usize, trip: Vec<(usize, usize, Q)>) -> Vec<Vec<Q>> {
    if cols == 0 {
        return Vec::new();
    }
    SparseMatrix::from_triplets(rows, cols, trip).kernel_basis()
}

/// Basis, in monomial coordinates, of the orthogonal complement of the span
/// of ξ-monomials with a nonempty marking.
pub fn pos_complement(spec: &AlgebraSpec, n: i64, dim: usize) -> Result<Vec<Vec<Q>>, StableError> {
    let bc = basis_change(spec, n, dim)?;
    let mut trip = Vec::new();
    let mut rows = 0;
    for (s, shape) in bc.shapes.iter().enumerate() {
        if shape.height() == 0 {
            continue;
        }
        for (i, v) in bc.xi.column(s).into_iter().enumerate() {
            if !v.is_zero() {
                trip.push((rows, i, v));
            }
        }
        rows += 1;
    }
    Ok(kernel(rows, bc.monomials.len(), trip))
}

/// Basis of the chains `c` of the slice with `d(sigma^r c) = 0`, `r <= q + 2`.
pub fn shift_kernel(spec: &AlgebraSpec, n: i64, dim: usize) -> Vec<Vec<Q>> {
    let src = graded_basis(spec, n, dim);
    let mut trip = Vec::new();
    let mut offset = 0;
    for r in 0..=shift_bound(dim) {
        let dst = Basis::new(graded_basis(
            spec,
            n + r as i64 * dim as i64,
            dim.saturating_sub(1),
        ));
        for (j, m) in src.iter().enumerate() {
            let image = d(spec, &sigma_pow(&Chain::<Q>::monomial(m.clone()), r));
            for (t, v) in image.terms() {
                let i = dst
                    .position(t)
                    .expect("boundary stays in the shifted slice");
                trip.push((offset + i, j, v.clone()));
            }
        }
        offset += dst.len();
    }
    kernel(offset, src.len(), trip)
}

/// Basis of the chains of the slice whose polynomial is divisible by the
/// family's Vandermonde factor: the kernel of the joint remainder map.
pub fn divisible_subspace(
    spec: &AlgebraSpec,
    n: i64,
    dim: usize,
) -> Result<Vec<Vec<Q>>, StableError> {
    let src = graded_basis(spec, n, dim);
    let factors = family_factors(spec.family, dim);
    let mut keys: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut trip = Vec::new();
    for (j, m) in src.iter().enumerate() {
        let f = chain_to_poly(&Chain::monomial(m.clone()))?;
        let (_, rems) = f.to_expanded().divide_factors(&factors);
        for (step, rem) in rems.iter().enumerate() {
            for (e, v) in rem.terms() {
                let len = keys.len();
                let i = *keys.entry((step, e.clone())).or_insert(len);
                trip.push((i, j, v.clone()));
            }
        }
    }
    Ok(kernel(keys.len(), src.len(), trip))
}

fn same_span(a: &[Vec<Q>], b: &[Vec<Q>], ncols: usize) -> bool {
    let ra = span_rank(a, ncols);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == span_rank(b, ncols) && ra == span_rank(&both, ncols)
}

/// A dual basis vector `ê_I` with its nonsingular partition.
#[derive(Clone, Debug, Serialize)]
pub struct StableVector {
    pub partition: Partition,
    pub chain: Chain<Q>,
}

/// `Stab` and `Pos` on one slice.
#[derive(Clone, Debug, Serialize)]
pub struct StableBasisReport {
    pub spec: AlgebraSpec,
    pub n: i64,
    pub dim: usize,
    pub dim_c: usize,
    pub dim_pos: usize,
    /// `ê_I` over the nonsingular partitions `I`, smallest first.
    pub basis: Vec<StableVector>,
    /// `<ê_I, ξ_s>` is 1 at `s = (I; ∅)` and 0 elsewhere.
    pub orthogonal: bool,
    /// `ê_I = e_I + ` singular monomials above `I`.
    pub unitriangular: bool,
    /// Every `ê_I` is divisible by the family's Vandermonde factor.
    pub divisible: bool,
    /// Every `ê_I` passes the shifted-boundary test.
    pub shifted: bool,
}

impl StableBasisReport {
    pub fn dim_stab(&self) -> usize {
        self.basis.len()
    }

    pub fn passed(&self) -> bool {
        self.orthogonal
            && self.unitriangular
            && self.divisible
            && self.shifted
            && self.dim_stab() + self.dim_pos == self.dim_c
    }
}

fn above_and_singular(m: &[i32], base: &Partition, k: i32) -> Result<bool, StableError> {
    let p = Partition::new(m.to_vec())?;
    if is_nonsingular(&p, k) {
        return Ok(false);
    }
    let verdict = order_cmp(
        &DistinguishedPartition::unmarked(p)?,
        &DistinguishedPartition::unmarked(base.clone())?,
        k,
    )?;
    Ok(verdict == OrderVerdict::Greater)
}

/// The dual basis to the ξ-monomials restricted to unmarked shapes, which
/// spans the orthogonal complement of the marked ones.
pub fn stab_pos_decomposition(
    spec: &AlgebraSpec,
    n: i64,
    dim: usize,
) -> Result<StableBasisReport, StableError> {
    let bc = basis_change(spec, n, dim)?;
    let xi = bc.matrix(FilteringBasis::Xi);
    let xi_inv = bc.inverse(FilteringBasis::Xi);
    let mut basis = Vec::new();
    let (mut orthogonal, mut unitriangular, mut divisible, mut shifted) = (true, true, true, true);
    for (s, shape) in bc.shapes.iter().enumerate() {
        if shape.height() > 0 {
            continue;
        }
        let coords: Vec<Q> = (0..bc.monomials.len()).map(|i| xi_inv.get(s, i)).collect();
        let pairing = xi.transpose().mul_vec(&coords)?;
        orthogonal &= pairing
            .iter()
            .enumerate()
            .all(|(t, v)| if t == s { v.is_one() } else { v.is_zero() });
        let chain = bc.monomials.chain(&coords);
        let base = shape.base();
        for (m, v) in chain.terms() {
            if m.indices() == base.parts() {
                unitriangular &= v.is_one();
            } else {
                unitriangular &= above_and_singular(m.indices(), base, spec.k)?;
            }
        }
        divisible &= is_divisible(spec.family, &chain_to_poly(&chain)?);
        shifted &= shifted_cycle(spec, &chain, dim);
        basis.push(StableVector {
            partition: base.clone(),
            chain,
        });
    }
    let dim_pos = bc.shapes.iter().filter(|s| s.height() > 0).count();
    Ok(StableBasisReport {
        spec: *spec,
        n,
        dim,
        dim_c: bc.monomials.len(),
        dim_pos,
        basis,
        orthogonal,
        unitriangular,
        divisible,
        shifted,
    })
}

/// Dimensions of the three descriptions of `Stab` on a slice and whether
/// they, and the dual basis, span one subspace.
#[derive(Clone, Debug, Serialize)]
pub struct TripleAgreement {
    pub spec: AlgebraSpec,
    pub n: i64,
    pub dim: usize,
    pub dim_c: usize,
    pub dim_pos: usize,
    pub complement: usize,
    pub shifted: usize,
    pub divisible: usize,
    pub agree: bool,
}

pub fn triple_agreement(
    spec: &AlgebraSpec,
    n: i64,
    dim: usize,
) -> Result<TripleAgreement, StableError> {
    let report = stab_pos_decomposition(spec, n, dim)?;
    let ncols = report.dim_c;
    let complement = pos_complement(spec, n, dim)?;
    let shifted = shift_kernel(spec, n, dim);
    let divisible = divisible_subspace(spec, n, dim)?;
    let basis = Basis::new(graded_basis(spec, n, dim));
    let dual: Vec<Vec<Q>> = report
        .basis
        .iter()
        .map(|v| basis.coords(&v.chain))
        .collect::<Result<_, _>>()?;
    let agree = report.passed()
        && same_span(&complement, &shifted, ncols)
        && same_span(&complement, &divisible, ncols)
        && same_span(&complement, &dual, ncols)
        && complement.len() + report.dim_pos == ncols;
    Ok(TripleAgreement {
        spec: *spec,
        n,
        dim,
        dim_c: ncols,
        dim_pos: report.dim_pos,
        complement: complement.len(),
        shifted: shifted.len(),
        divisible: divisible.len(),
        agree,
    })
}

/// The level-one Laplacian on `Stab` of one degree.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StabLaplacianReport {
    pub n: i64,
    /// `Γ(ê_I)` lies in the span of the `ê`.
    pub invariant: bool,
    /// In the `ê`-basis the matrix is triangular for the filtering order with
    /// diagonal `E(I)`.
    pub triangular: bool,
    /// Eigen stable cycles `s_I = ê_I + ...` solved and checked.
    pub eigen_verified: usize,
    /// Shapes whose solve met an equal eigenvalue above them.
    pub collisions: Vec<String>,
}

impl StabLaplacianReport {
    pub fn passed(&self) -> bool {
        self.invariant && self.triangular
    }
}

pub fn stab_laplacian_report(
    spec: &AlgebraSpec,
    n: i64,
) -> Result<StabLaplacianReport, StableError> {
    if *spec != AlgebraSpec::witt(1) {
        return Err(StableError::NeedsWittLevelOne);
    }
    let mut out = StabLaplacianReport {
        n,
        invariant: true,
        triangular: true,
        ..Default::default()
    };
    for dim in 1..=max_dim(spec, n) {
        let report = stab_pos_decomposition(spec, n, dim)?;
        let bc = basis_change(spec, n, dim)?;
        let duals: Vec<Chain<Q>> = bc
            .shapes
            .iter()
            .enumerate()
            .filter(|(_, s)| s.height() == 0)
            .map(|(s, _)| bc.monomials.chain(&bc.xi.column(s)))
            .collect();
        let hats: Vec<&Chain<Q>> = report.basis.iter().map(|v| &v.chain).collect();
        let parts: Vec<&Partition> = report.basis.iter().map(|v| &v.partition).collect();
        let len = hats.len();
        let mut m = vec![vec![Q::zero(); len]; len];
        for (a, hat) in hats.iter().enumerate() {
            let g = gamma(spec, hat);
            let mut recon = Chain::zero();
            for (b, dual) in duals.iter().enumerate() {
                m[b][a] = inner(&g, dual);
                recon = recon.add(&hats[b].scale(&m[b][a]));
            }
            out.invariant &= recon == g;
        }
        let shapes: Vec<DistinguishedPartition> = parts
            .iter()
            .map(|p| DistinguishedPartition::unmarked((*p).clone()))
            .collect::<Result<_, _>>()?;
        let mut above = vec![vec![false; len]; len];
        for a in 0..len {
            for b in 0..len {
                above[b][a] =
                    b != a && order_cmp(&shapes[b], &shapes[a], 1)? == OrderVerdict::Greater;
                if a == b {
                    out.triangular &= m[a][a] == Q::from_integer(energy(parts[a]).into());
                } else if !m[b][a].is_zero() {
                    out.triangular &= above[b][a];
                }
            }
        }
        let values: Vec<Q> = (0..len).map(|a| m[a][a].clone()).collect();
        for a in 0..len {
            let mut x = vec![Q::zero(); len];
            x[a] = Q::one();
            let mut collided = false;
            for b in a + 1..len {
                let s = (a..b).fold(Q::zero(), |acc, c| acc + &m[b][c] * &x[c]);
                let gap = &values[b] - &values[a];
                if !gap.is_zero() {
                    x[b] = -s / gap;
                } else if above[b][a] || !s.is_zero() {
                    collided = true;
                }
            }
            if collided {
                out.collisions.push(format!("{}", parts[a]));
                continue;
            }
            let eigen = (0..len).fold(Chain::zero(), |acc, b| acc.add(&hats[b].scale(&x[b])));
            if gamma(spec, &eigen) == eigen.scale(&values[a]) {
                out.eigen_verified += 1;
            } else {
                out.triangular = false;
            }
        }
    }
    Ok(out)
}

/// `Γ_1` preserves `Stab` in degree `n` and acts triangularly with diagonal `E(I)`.
pub fn stab_laplacian_check(n: i64) -> Result<bool, StableError> {
    Ok(stab_laplacian_report(&AlgebraSpec::witt(1), n)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    #[test]
    fn stability_examples() {
        let w = AlgebraSpec::witt(1);
        let l = AlgebraSpec::looped(1);
        let e14 = Chain::from_indices(&[1, 4]);
        let cyc = e14.sub(&Chain::from_indices(&[2, 3]).scale(&q(3)));
        assert!(is_stable(&cyc, &w).unwrap());
        assert!(is_stable(&e14, &l).unwrap());
        assert!(!is_stable(&Chain::from_indices(&[1, 2]), &w).unwrap());
        assert!(!is_stable(&e14, &w).unwrap());
    }

    #[test]
    fn dual_basis_at_degree_five() {
        let r = stab_pos_decomposition(&AlgebraSpec::witt(1), 5, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.basis.len(), 1);
        let want = Chain::from_indices(&[1, 4]).sub(&Chain::from_indices(&[2, 3]).scale(&q(3)));
        assert_eq!(r.basis[0].chain, want);
    }

    #[test]
    fn empty_stab_without_nonsingular_shapes() {
        let r = stab_pos_decomposition(&AlgebraSpec::witt(1), 4, 2).unwrap();
        assert_eq!(r.dim_stab(), 0);
        assert_eq!(r.dim_pos, r.dim_c);
    }

    #[test]
    fn small_laplacian_checks() {
        let r = stab_laplacian_report(&AlgebraSpec::witt(1), 3).unwrap();
        assert!(r.passed());
        assert!(stab_laplacian_check(5).unwrap());
        assert!(stab_laplacian_report(&AlgebraSpec::looped(1), 3).is_err());
    }
}
