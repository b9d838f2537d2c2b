use serde::{Deserialize, Serialize};

use super::FilteringError;
use crate::liealg::{delta, delta_generator, AlgebraSpec, Chain};
use crate::partitions::{is_nonsingular, normal_form, DistinguishedPartition, Partition};
use crate::qlinalg::Q;

/// Wedge of `e_i` over unmarked and `delta_k(e_i)` over marked positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauMonomial {
    pub shape: DistinguishedPartition,
    pub algebra: AlgebraSpec,
}

impl TauMonomial {
    pub fn new(
        algebra: AlgebraSpec,
        shape: DistinguishedPartition,
    ) -> Result<Self, FilteringError> {
        algebra.require_positive_k()?;
        shape.check_k(algebra.k)?;
        Ok(TauMonomial { shape, algebra })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.shape.is_nonsingular(self.algebra.k)
    }

    pub fn expand(&self) -> Chain<Q> {
        tau_chain(&self.algebra, &self.shape)
    }
}

/// Wedge over the normal form: the main head as is, each dense block either
/// as `e_block` or as `delta_k(e_block)` when its leading part is marked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiMonomial {
    pub shape: DistinguishedPartition,
    pub algebra: AlgebraSpec,
}

impl XiMonomial {
    pub fn new(
        algebra: AlgebraSpec,
        shape: DistinguishedPartition,
    ) -> Result<Self, FilteringError> {
        algebra.require_positive_k()?;
        shape.check_k(algebra.k)?;
        let k = algebra.k;
        if !is_nonsingular(shape.base(), k) {
            return Err(FilteringError::SingularShape(shape.to_string()));
        }
        if !shape.is_nonsingular(k) {
            return Err(FilteringError::MarkNotLeading(shape.to_string()));
        }
        Ok(XiMonomial { shape, algebra })
    }

    pub fn expand(&self) -> Chain<Q> {
        let k = self.algebra.k;
        let nf = normal_form(self.shape.base(), k).expect("validated");
        let marked = self.shape.marked();
        let mut out = mono(&nf.main_part);
        for block in &nf.dense_blocks {
            let e = mono(block);
            let factor = if marked.contains(block.parts()[0]) {
                delta(&self.algebra, &e)
            } else {
                e
            };
            out = out.wedge(&factor);
            if out.is_zero() {
                break;
            }
        }
        out
    }
}

fn mono(p: &Partition) -> Chain<Q> {
    Chain::from_indices(p.parts())
}

fn tau_chain(spec: &AlgebraSpec, shape: &DistinguishedPartition) -> Chain<Q> {
    let mut out = Chain::from_indices(&[]);
    for (v, m) in shape.positions() {
        let factor = if m {
            delta_generator(spec, v)
        } else {
            Chain::from_indices(&[v])
        };
        out = out.wedge(&factor);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// Expansion of the τ-monomial of `shape` in the monomial basis.
pub fn expand_tau(
    spec: &AlgebraSpec,
    shape: &DistinguishedPartition,
) -> Result<Chain<Q>, FilteringError> {
    Ok(TauMonomial::new(*spec, shape.clone())?.expand())
}

/// Expansion of the ξ-monomial of a nonsingular `shape`.
pub fn expand_xi(
    spec: &AlgebraSpec,
    shape: &DistinguishedPartition,
) -> Result<Chain<Q>, FilteringError> {
    Ok(XiMonomial::new(*spec, shape.clone())?.expand())
}

/// Whether two adjacent τ-factors `(part, marked)` (in ascending position order)
/// form one of the reducible two-factor patterns.
pub fn is_bad_pair(lo: (i32, bool), hi: (i32, bool)) -> bool {
    let g = hi.0 - lo.0;
    match (lo.1, hi.1) {
        (false, false) | (true, false) => (1..=2).contains(&g),
        (false, true) | (true, true) => (0..=3).contains(&g),
    }
}

/// No adjacent pair of factors is bad.
pub fn is_good(shape: &DistinguishedPartition) -> bool {
    shape
        .positions()
        .windows(2)
        .all(|w| !is_bad_pair(w[0], w[1]))
}
