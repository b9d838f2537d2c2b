use serde::{Deserialize, Serialize};

use super::LaplacianError;
use crate::filtering::basis_change;
use crate::liealg::{d, delta, graded_basis, AlgebraSpec, Basis, Chain};
use crate::qlinalg::{Field, SparseMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaBasis {
    Monomial,
    Tau,
}

pub fn gamma<F: Field>(spec: &AlgebraSpec, c: &Chain<F>) -> Chain<F> {
    d(spec, &delta(spec, c)).add(&delta(spec, &d(spec, c)))
}

/// Matrix of the Laplacian on the `(n, q)` slice. Monomial columns follow
/// `graded_basis`; τ columns follow the shape order of the slice's
/// [`crate::filtering::BasisChange`].
pub fn gamma_matrix(
    spec: &AlgebraSpec,
    n: i64,
    q: usize,
    basis: GammaBasis,
) -> Result<SparseMatrix<Q>, LaplacianError> {
    match basis {
        GammaBasis::Monomial => {
            let b = Basis::new(graded_basis(spec, n, q));
            let cols = b
                .monomials()
                .iter()
                .map(|m| b.coords(&gamma(spec, &Chain::<Q>::monomial(m.clone()))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SparseMatrix::from_columns(b.len(), &cols))
        }
        GammaBasis::Tau => {
            if spec.k != 1 {
                return Err(LaplacianError::TauNeedsLevelOne(*spec));
            }
            let bc = basis_change(spec, n, q)?;
            let g = gamma_matrix(spec, n, q, GammaBasis::Monomial)?;
            Ok(bc.tau_inv.mul(&g.mul(&bc.tau)?)?)
        }
    }
}

/// The right-hand side of the second-order expansion of the Laplacian on
/// `u_1 ∧ ... ∧ u_m` for homogeneous factors, built from its values on
/// single factors and pairs.
pub fn second_order_expand(spec: &AlgebraSpec, us: &[Chain<Q>]) -> Chain<Q> {
    let m = us.len();
    let dims: Vec<usize> = us.iter().map(|u| u.grading().map_or(0, |g| g.0)).collect();
    let before = |a: usize| dims[..a].iter().sum::<usize>();
    let rest = |skip: &[usize]| {
        us.iter()
            .enumerate()
            .filter(|(j, _)| !skip.contains(j))
            .fold(Chain::from_indices(&[]), |acc, (_, u)| acc.wedge(u))
    };
    let mut out = Chain::zero();
    for a in 0..m {
        for b in a + 1..m {
            let beta = dims[a] * before(a) + dims[b] * before(b) + dims[a] * dims[b];
            let t = gamma(spec, &us[a].wedge(&us[b])).wedge(&rest(&[a, b]));
            out = if beta.is_multiple_of(2) {
                out.add(&t)
            } else {
                out.sub(&t)
            };
        }
    }
    let mut single = Chain::zero();
    for a in 0..m {
        let mut w = Chain::from_indices(&[]);
        for (j, u) in us.iter().enumerate() {
            w = w.wedge(&if j == a { gamma(spec, u) } else { u.clone() });
        }
        single = single.add(&w);
    }
    out.sub(&single.scale(&Q::from_i64(m as i64 - 2)))
}
