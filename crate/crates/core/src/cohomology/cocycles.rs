use super::ranks::basis;
use super::CohomologyError;
use crate::filtering::basis_change;
use crate::liealg::{d, delta, delta_matrix, graded_basis, AlgebraSpec, Basis, Chain, Monomial};
use crate::partitions::{is_main, main_partitions, order_slice, DistinguishedPartition, Partition};
use crate::qlinalg::{SparseMatrix, Q};

/// A `delta`-cocycle whose ξ-expansion is `1` at `(I0; ∅)` and otherwise
/// supported strictly below it. Fails if its class would vanish.
pub fn cocycle_for_main(spec: &AlgebraSpec, i0: &Partition) -> Result<Chain<Q>, CohomologyError> {
    spec.require_positive_k()?;
    if !is_main(i0, spec.k) {
        return Err(CohomologyError::NotMain(i0.to_string(), spec.k));
    }
    if i0.is_empty() {
        return Ok(Chain::monomial(Monomial::empty()));
    }
    let (n, q) = (i0.degree(), i0.dim());
    let bc = basis_change(spec, n, q)?;
    let head = DistinguishedPartition::unmarked(i0.clone())?;
    let slice = order_slice(spec.k, n, q);
    let at = slice
        .position(&head)
        .ok_or_else(|| CohomologyError::Unsolvable(i0.to_string()))?;
    let xi_chain = |s: usize| bc.monomials.chain(&bc.xi.column(s));
    let lead = xi_chain(bc.position(&head).expect("main shapes are nonsingular"));
    let lower: Vec<usize> = slice
        .strictly_below(at)
        .filter_map(|i| bc.position(&slice.nodes()[i]))
        .collect();
    let up = basis(spec, n, q + 1);
    let rhs: Vec<Q> = up.coords(&delta(spec, &lead).scale(&Q::from_integer((-1).into())))?;
    let cols: Vec<Vec<Q>> = lower
        .iter()
        .map(|&s| up.coords(&delta(spec, &xi_chain(s))))
        .collect::<Result<_, _>>()?;
    let x = if up.is_empty() {
        vec![Q::from_integer(0.into()); lower.len()]
    } else {
        SparseMatrix::from_columns(up.len(), &cols)
            .solve(&rhs)?
            .ok_or_else(|| CohomologyError::Unsolvable(i0.to_string()))?
    };
    let mut c = lead;
    for (&s, v) in lower.iter().zip(&x) {
        c = c.add(&xi_chain(s).scale(v));
    }
    if is_coboundary(spec, &c)? {
        return Err(CohomologyError::ZeroClass(i0.to_string()));
    }
    Ok(c)
}

fn image_of_delta(spec: &AlgebraSpec, n: i64, q: usize) -> (Basis, SparseMatrix<Q>) {
    let target = basis(spec, n, q);
    let m = if q == 0 {
        SparseMatrix::zeros(target.len(), 0)
    } else {
        delta_matrix(spec, &basis(spec, n, q - 1), &target)
    };
    (target, m)
}

/// Whether `c` lies in the image of `delta`.
pub fn is_coboundary(spec: &AlgebraSpec, c: &Chain<Q>) -> Result<bool, CohomologyError> {
    let Some((q, n)) = c.grading() else {
        return if c.is_zero() {
            Ok(true)
        } else {
            Err(CohomologyError::NotGraded)
        };
    };
    let (target, m) = image_of_delta(spec, n, q);
    Ok(m.solve(&target.coords(c)?)?.is_some())
}

/// Whether the classes of `cocycles`, all in the `(n, q)` slice, are
/// independent modulo coboundaries.
pub fn classes_independent(
    spec: &AlgebraSpec,
    n: i64,
    q: usize,
    cocycles: &[Chain<Q>],
) -> Result<bool, CohomologyError> {
    let (target, m) = image_of_delta(spec, n, q);
    let mut cols: Vec<Vec<Q>> = (0..m.ncols()).map(|c| m.column(c)).collect();
    let base = m.rank();
    for c in cocycles {
        cols.push(target.coords(c)?);
    }
    let all = SparseMatrix::from_columns(target.len(), &cols).rank();
    Ok(all == base + cocycles.len())
}

/// Whether the product of the representing cocycles of `a` and `b` is a
/// coboundary.
pub fn product_is_coboundary(
    spec: &AlgebraSpec,
    a: &Partition,
    b: &Partition,
) -> Result<bool, CohomologyError> {
    let p = cocycle_for_main(spec, a)?.wedge(&cocycle_for_main(spec, b)?);
    is_coboundary(spec, &p)
}

/// Every product of two representing cocycles of positive dimension with
/// combined degree at most `nmax` is a coboundary.
pub fn product_check(spec: &AlgebraSpec, nmax: i64) -> Result<bool, CohomologyError> {
    spec.require_positive_k()?;
    let mains: Vec<Partition> = (1..=nmax)
        .flat_map(|n| main_partitions(spec.k, n, None))
        .filter(|p| !p.is_empty())
        .collect();
    for (i, a) in mains.iter().enumerate() {
        for b in &mains[i..] {
            if a.degree() + b.degree() > nmax {
                continue;
            }
            if !product_is_coboundary(spec, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// On the degree-`n` slice of the witt algebra with `k = -1`, wedging with
/// `e_0` is a homotopy from `n * id` to zero: `(hd + dh) c = n c` for every
/// monomial `c`.
pub fn homotopy_check(n: i64) -> bool {
    let spec = AlgebraSpec::witt(-1);
    let e0 = Chain::<Q>::from_indices(&[0]);
    let nq = Q::from_integer(n.into());
    (0..=crate::liealg::max_dim(&spec, n)).all(|q| {
        graded_basis(&spec, n, q).into_iter().all(|m| {
            let c = Chain::monomial(m);
            let lhs = e0.wedge(&d(&spec, &c)).add(&d(&spec, &e0.wedge(&c)));
            lhs == c.scale(&nq)
        })
    })
}
