use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::monomials::{expand_tau, expand_xi};
use super::FilteringError;
use crate::liealg::{graded_basis, AlgebraSpec, Basis, Chain};
use crate::partitions::{linear_extension, nonsingular_distinguished, DistinguishedPartition};
use crate::qlinalg::{SparseMatrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilteringBasis {
    Tau,
    Xi,
}

/// Change of basis between monomials and the τ- and ξ-bases on one slice
/// `(family, k, degree, dimension)`.
///
/// Shapes are listed in a linear extension of the filtering order, smallest
/// first; columns of `tau` and `xi` follow that list, rows follow `monomials`.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub spec: AlgebraSpec,
    pub n: i64,
    pub dim: usize,
    pub monomials: Basis,
    pub shapes: Vec<DistinguishedPartition>,
    pub tau: SparseMatrix<Q>,
    pub tau_inv: SparseMatrix<Q>,
    pub xi: SparseMatrix<Q>,
    pub xi_inv: SparseMatrix<Q>,
    /// Row `s` holds the τ-coordinates of the ξ-monomial of shape `s`.
    pub passage: SparseMatrix<Q>,
    shape_index: HashMap<DistinguishedPartition, usize>,
}

impl BasisChange {
    pub fn build(spec: &AlgebraSpec, n: i64, dim: usize) -> Result<Self, FilteringError> {
        spec.require_positive_k()?;
        let k = spec.k;
        let monomials = Basis::new(graded_basis(spec, n, dim));
        let shapes = linear_extension(&nonsingular_distinguished(k, n, Some(dim)), k)?;
        let deficient = |basis: FilteringBasis, rank: usize| FilteringError::RankDeficient {
            spec: *spec,
            n,
            dim,
            basis,
            rank,
            size: monomials.len(),
        };
        let tau = expansion_matrix(&monomials, &shapes, |s| expand_tau(spec, s))?;
        let xi = expansion_matrix(&monomials, &shapes, |s| expand_xi(spec, s))?;
        if shapes.len() != monomials.len() {
            return Err(deficient(
                FilteringBasis::Tau,
                shapes.len().min(monomials.len()),
            ));
        }
        let tau_inv = tau
            .inverse()?
            .ok_or_else(|| deficient(FilteringBasis::Tau, tau.rank()))?;
        let xi_inv = xi
            .inverse()?
            .ok_or_else(|| deficient(FilteringBasis::Xi, xi.rank()))?;
        let passage = tau_inv.mul(&xi)?.transpose();
        let shape_index = shapes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(BasisChange {
            spec: *spec,
            n,
            dim,
            monomials,
            shapes,
            tau,
            tau_inv,
            xi,
            xi_inv,
            passage,
            shape_index,
        })
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn position(&self, shape: &DistinguishedPartition) -> Option<usize> {
        self.shape_index.get(shape).copied()
    }

    /// The passage matrix is lower-triangular with a nonzero diagonal.
    pub fn passage_is_triangular(&self) -> bool {
        self.passage.is_lower_triangular()
            && (0..self.len()).all(|i| !num_traits::Zero::is_zero(&self.passage.get(i, i)))
    }

    pub fn matrix(&self, which: FilteringBasis) -> &SparseMatrix<Q> {
        match which {
            FilteringBasis::Tau => &self.tau,
            FilteringBasis::Xi => &self.xi,
        }
    }

    pub fn inverse(&self, which: FilteringBasis) -> &SparseMatrix<Q> {
        match which {
            FilteringBasis::Tau => &self.tau_inv,
            FilteringBasis::Xi => &self.xi_inv,
        }
    }

    /// Coordinates of `c` in the chosen basis, as a dense vector over `shapes`.
    pub fn coords(&self, c: &Chain<Q>, which: FilteringBasis) -> Result<Vec<Q>, FilteringError> {
        if let Some((q, n)) = c.grading() {
            if q != self.dim || n != self.n {
                return Err(FilteringError::SliceMismatch(format!(
                    "chain of dimension {q}, degree {n} against slice ({}, {})",
                    self.dim, self.n
                )));
            }
        }
        let v = self.monomials.coords(c)?;
        Ok(self.inverse(which).mul_vec(&v)?)
    }

    /// The chain with the given coordinates in the chosen basis.
    pub fn chain(&self, coords: &[Q], which: FilteringBasis) -> Result<Chain<Q>, FilteringError> {
        let v = self.matrix(which).mul_vec(coords)?;
        Ok(self.monomials.chain(&v))
    }
}

fn expansion_matrix(
    monomials: &Basis,
    shapes: &[DistinguishedPartition],
    f: impl Fn(&DistinguishedPartition) -> Result<Chain<Q>, FilteringError>,
) -> Result<SparseMatrix<Q>, FilteringError> {
    let mut trip = Vec::new();
    for (j, s) in shapes.iter().enumerate() {
        let c = f(s)?;
        for (m, v) in c.terms() {
            let i = monomials
                .position(m)
                .ok_or_else(|| FilteringError::SliceMismatch(format!("{m} from shape {s}")))?;
            trip.push((i, j, v.clone()));
        }
    }
    Ok(SparseMatrix::from_triplets(
        monomials.len(),
        shapes.len(),
        trip,
    ))
}

type SliceKey = (AlgebraSpec, i64, usize);

fn cache() -> &'static Mutex<HashMap<SliceKey, Arc<BasisChange>>> {
    static CACHE: OnceLock<Mutex<HashMap<SliceKey, Arc<BasisChange>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`BasisChange::build`].
pub fn basis_change(
    spec: &AlgebraSpec,
    n: i64,
    dim: usize,
) -> Result<Arc<BasisChange>, FilteringError> {
    let key = (*spec, n, dim);
    if let Some(b) = cache().lock().expect("basis cache poisoned").get(&key) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(BasisChange::build(spec, n, dim)?);
    let mut map = cache().lock().expect("basis cache poisoned");
    Ok(Arc::clone(map.entry(key).or_insert(built)))
}

/// Nonzero coordinates of `c` in the τ- or ξ-basis of its slice.
pub fn expand_in_basis(
    c: &Chain<Q>,
    which: FilteringBasis,
    bc: &BasisChange,
) -> Result<BTreeMap<DistinguishedPartition, Q>, FilteringError> {
    let v = bc.coords(c, which)?;
    Ok(bc
        .shapes
        .iter()
        .zip(v)
        .filter(|(_, x)| !num_traits::Zero::is_zero(x))
        .map(|(s, x)| (s.clone(), x))
        .collect())
}
