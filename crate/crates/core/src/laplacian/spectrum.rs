use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::formulas::{energy, energy0};
use super::operator::{gamma_matrix, GammaBasis};
use super::LaplacianError;
use crate::filtering::{basis_change, FilteringBasis};
use crate::liealg::{graded_basis, max_dim, AlgebraSpec, Basis, Chain, Family};
use crate::partitions::{
    alpha, nonsingular_distinguished, nonsingular_partitions, order_slice, DistinguishedPartition,
};
use crate::qlinalg::{Field, Scalar, SparseMatrix, Q};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub value: Scalar,
    pub mult: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    /// Diagonal of the triangular τ-basis matrix.
    TauDiagonal,
    /// Integer roots of the characteristic polynomial.
    Characteristic,
}

fn is_zero_usize(v: &usize) -> bool {
    *v == 0
}

/// Eigenvalues with multiplicities of the Laplacian on the chains of degree
/// `n` and positive dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: i64,
    pub eigen: Vec<EigenEntry>,
    pub harmonic_dim: usize,
    pub family: Family,
    pub k: i32,
    pub method: SpectrumMethod,
    /// Total degree of characteristic-polynomial factors without rational roots.
    #[serde(default, skip_serializing_if = "is_zero_usize")]
    pub unsplit_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<BTreeMap<String, Chain<Q>>>,
    /// Shapes whose eigenvector solve was singular.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collisions: Vec<String>,
}

impl SpectralReport {
    pub fn as_map(&self) -> BTreeMap<i64, usize> {
        self.eigen
            .iter()
            .map(|e| match &e.value {
                Scalar::Rational(v) => (v.to_integer().to_i64().expect("small eigenvalue"), e.mult),
                Scalar::Omega(_) => unreachable!("rational spectrum"),
            })
            .collect()
    }

    pub fn total_mult(&self) -> usize {
        self.eigen.iter().map(|e| e.mult).sum()
    }

    /// Eigenvectors keyed by shape; collisions are listed instead.
    pub fn attach_eigenvectors(&mut self) -> Result<(), LaplacianError> {
        let spec = AlgebraSpec::new(self.family, self.k)?;
        let mut vecs = BTreeMap::new();
        for shape in nonsingular_distinguished(1, self.n, None) {
            if shape.dim() == 0 {
                continue;
            }
            match eigenvector(&spec, &shape) {
                Ok(c) => {
                    vecs.insert(shape.to_string(), c);
                }
                Err(LaplacianError::Collision { shape, .. }) => self.collisions.push(shape),
                Err(e) => return Err(e),
            }
        }
        self.eigenvectors = Some(vecs);
        Ok(())
    }
}

fn is_witt_one(spec: &AlgebraSpec) -> bool {
    spec.family == Family::Witt && spec.k == 1
}

/// `E(I)` with multiplicity `2^alpha(I)` over nonsingular 1-partitions of degree `n`.
pub fn level_one_expected(n: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for i in nonsingular_partitions(1, n, None) {
        if i.is_empty() {
            continue;
        }
        *out.entry(energy(&i)).or_default() += 1usize << alpha(&i, 1).expect("nonsingular");
    }
    out
}

/// `E0(I)` with multiplicity `2^(alpha(I) + 1)`, plus the harmonic `e0` at `n = 0`.
pub fn gamma0_expected(n: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    if n == 0 {
        out.insert(0, 1);
    }
    for i in nonsingular_partitions(1, n, None) {
        if i.is_empty() {
            continue;
        }
        *out.entry(energy0(&i)).or_default() += 2usize << alpha(&i, 1).expect("nonsingular");
    }
    out
}

/// Dimension of the generalized eigenspace, raising the power until it stabilizes.
fn generalized_dim(m: &SparseMatrix<Q>, lam: i64) -> Result<usize, LaplacianError> {
    let lam = Q::from_i64(lam);
    let mut last = 0;
    for s in 1..=m.nrows().max(1) as u32 {
        let dim = m.generalized_eigenspace_dim(&lam, s)?;
        if dim == last {
            break;
        }
        last = dim;
    }
    Ok(last)
}

pub fn spectrum(spec: &AlgebraSpec, n: i64) -> Result<SpectralReport, LaplacianError> {
    let mut total: BTreeMap<i64, usize> = BTreeMap::new();
    let mut unsplit = 0;
    let method = if is_witt_one(spec) {
        SpectrumMethod::TauDiagonal
    } else {
        SpectrumMethod::Characteristic
    };
    for q in 1..=max_dim(spec, n) {
        let g = gamma_matrix(spec, n, q, GammaBasis::Monomial)?;
        if g.nrows() == 0 {
            continue;
        }
        let mut block: BTreeMap<i64, usize> = BTreeMap::new();
        match method {
            SpectrumMethod::TauDiagonal => {
                let t = gamma_matrix(spec, n, q, GammaBasis::Tau)?;
                if !t.is_upper_triangular() {
                    return Err(LaplacianError::NotTriangular { spec: *spec, n, q });
                }
                for i in 0..t.nrows() {
                    let v = t.get(i, i);
                    let v = v
                        .to_integer()
                        .to_i64()
                        .filter(|_| v.is_integer())
                        .ok_or_else(|| LaplacianError::Mismatch {
                            n,
                            detail: format!("non-integer diagonal {v}"),
                        })?;
                    *block.entry(v).or_default() += 1;
                }
            }
            SpectrumMethod::Characteristic => {
                let p = charpoly(&g);
                let roots = integer_roots(&p, gershgorin(&g));
                let found: usize = roots.iter().map(|r| r.1).sum();
                unsplit += g.nrows() - found;
                block.extend(roots);
            }
        }
        for (&lam, &mult) in &block {
            let dim = generalized_dim(&g, lam)?;
            if dim != mult {
                return Err(LaplacianError::Mismatch {
                    n,
                    detail: format!(
                        "q={q}: eigenvalue {lam} has multiplicity {mult} but eigenspace dim {dim}"
                    ),
                });
            }
            *total.entry(lam).or_default() += mult;
        }
    }
    Ok(SpectralReport {
        n,
        harmonic_dim: total.get(&0).copied().unwrap_or(0),
        eigen: total
            .into_iter()
            .map(|(v, mult)| EigenEntry {
                value: Scalar::Rational(Q::from_i64(v)),
                mult,
            })
            .collect(),
        family: spec.family,
        k: spec.k,
        method,
        unsplit_degree: unsplit,
        eigenvectors: None,
        collisions: Vec::new(),
    })
}

fn gershgorin(m: &SparseMatrix<Q>) -> i64 {
    (0..m.nrows())
        .map(|r| m.row(r).values().fold(Q::zero(), |acc, v| acc + v.abs()))
        .max()
        .map_or(0, |b| b.ceil().to_integer().to_i64().expect("bounded"))
}

/// Characteristic polynomial `det(x - m)`, coefficients from the constant term up.
pub fn charpoly(m: &SparseMatrix<Q>) -> Vec<Q> {
    let n = m.nrows();
    let mut a = m.to_dense();
    // reduce to upper Hessenberg form by similarity
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        if p != j + 1 {
            a.swap(p, j + 1);
            for row in a.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        for i in j + 2..n {
            if a[i][j].is_zero() {
                continue;
            }
            let f = a[i][j].clone() / a[j + 1][j].clone();
            for c in 0..n {
                let t = f.clone() * a[j + 1][c].clone();
                a[i][c] -= &t;
            }
            for r in 0..n {
                let t = f.clone() * a[r][i].clone();
                a[r][j + 1] += &t;
            }
        }
    }
    let mut polys: Vec<Vec<Q>> = vec![vec![Q::one()]];
    for k in 0..n {
        // (x - h_kk) p_{k}
        let prev = &polys[k];
        let mut next = vec![Q::zero(); k + 2];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= &(a[k][k].clone() * c.clone());
        }
        let mut prod = Q::one();
        for i in (0..k).rev() {
            prod *= &a[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coef = a[i][k].clone() * prod.clone();
            for (d, c) in polys[i].iter().enumerate() {
                next[d] -= &(coef.clone() * c.clone());
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

fn eval(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn divide_root(p: &[BigInt], x: i64) -> Vec<BigInt> {
    let x = BigInt::from(x);
    let deg = p.len() - 1;
    let mut out = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for d in (1..=deg).rev() {
        carry = carry * &x + &p[d];
        out[d - 1] = carry.clone();
    }
    out
}

/// Integer roots in `[-bound, bound]` of a monic polynomial with integer
/// coefficients, with multiplicities.
pub fn integer_roots(p: &[Q], bound: i64) -> Vec<(i64, usize)> {
    let mut ip: Vec<BigInt> = p
        .iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "characteristic polynomial of an integer matrix"
            );
            c.to_integer()
        })
        .collect();
    let mut out = Vec::new();
    for x in -bound..=bound {
        let mut mult = 0;
        while ip.len() > 1 && eval(&ip, x).is_zero() {
            ip = divide_root(&ip, x);
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
        if ip.len() == 1 {
            break;
        }
    }
    out
}

/// Positive semi-definiteness of a symmetric matrix by exact symmetric elimination.
pub fn is_psd(m: &SparseMatrix<Q>) -> bool {
    if *m != m.transpose() {
        return false;
    }
    let n = m.nrows();
    let mut a = m.to_dense();
    for k in 0..n {
        let piv = a[k][k].clone();
        if piv.is_negative() {
            return false;
        }
        if piv.is_zero() {
            if a[k][k + 1..].iter().any(|v| !v.is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / piv.clone();
            for j in k + 1..n {
                let t = f.clone() * a[k][j].clone();
                a[i][j] -= &t;
            }
        }
    }
    true
}

/// Eigenvector of the level-one Laplacian whose τ-expansion is `1` at `shape`
/// and otherwise supported strictly below it.
pub fn eigenvector(
    spec: &AlgebraSpec,
    shape: &DistinguishedPartition,
) -> Result<Chain<Q>, LaplacianError> {
    if !is_witt_one(spec) {
        return Err(LaplacianError::NeedsWittLevelOne(*spec));
    }
    if !shape.is_nonsingular(1) {
        return Err(LaplacianError::SingularShape(shape.to_string()));
    }
    let (n, q) = (shape.degree(), shape.dim());
    let bc = basis_change(spec, n, q)?;
    let m = gamma_matrix(spec, n, q, GammaBasis::Tau)?;
    let value = energy(shape.base());
    let shifted = m.shift(&Q::from_i64(value))?;
    let at = bc
        .position(shape)
        .expect("nonsingular shapes are in the slice");
    let slice = order_slice(1, n, q);
    let below: Vec<usize> = slice
        .strictly_below(slice.position(shape).expect("same slice"))
        .filter_map(|i| bc.position(&slice.nodes()[i]))
        .collect();
    let cols: Vec<Vec<Q>> = below.iter().map(|&c| shifted.column(c)).collect();
    let a = SparseMatrix::from_columns(bc.len(), &cols);
    let rhs: Vec<Q> = shifted.column(at).into_iter().map(|v| -v).collect();
    let solved = if a.rank() == below.len() {
        a.solve(&rhs)?
    } else {
        None
    };
    let Some(x) = solved else {
        let g = gamma_matrix(spec, n, q, GammaBasis::Monomial)?;
        let b = Basis::new(graded_basis(spec, n, q));
        let eigenspace = g
            .shift(&Q::from_i64(value))?
            .kernel_basis()
            .iter()
            .map(|v| b.chain(v))
            .collect();
        return Err(LaplacianError::Collision {
            shape: shape.to_string(),
            value,
            eigenspace,
        });
    };
    let mut coords = vec![Q::zero(); bc.len()];
    coords[at] = Q::one();
    for (&c, v) in below.iter().zip(x) {
        coords[c] = v;
    }
    Ok(bc.chain(&coords, FilteringBasis::Tau)?)
}

/// A basis of the harmonic chains of degree `n` and positive dimension.
pub fn harmonic_basis(spec: &AlgebraSpec, n: i64) -> Result<Vec<Chain<Q>>, LaplacianError> {
    let mut out = Vec::new();
    for q in 1..=max_dim(spec, n) {
        let g = gamma_matrix(spec, n, q, GammaBasis::Monomial)?;
        let b = Basis::new(graded_basis(spec, n, q));
        out.extend(g.kernel_basis().iter().map(|v| b.chain(v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    fn shape(s: &str) -> DistinguishedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn third_slice_spectrum() {
        let r = spectrum(&AlgebraSpec::witt(1), 3).unwrap();
        assert_eq!(r.as_map(), BTreeMap::from([(1, 2)]));
        assert_eq!(r.harmonic_dim, 0);
    }

    #[test]
    fn first_slice_is_harmonic() {
        let r = spectrum(&AlgebraSpec::witt(1), 1).unwrap();
        assert_eq!(r.as_map(), BTreeMap::from([(0, 1)]));
        assert_eq!(r.harmonic_dim, 1);
    }

    #[test]
    fn json_layout() {
        let r = spectrum(&AlgebraSpec::witt(1), 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["eigen"][0]["value"], "1");
        assert_eq!(v["eigen"][0]["mult"], 2);
        assert_eq!(v["harmonic_dim"], 0);
        assert!(v.get("unsplit_degree").is_none());
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let m = SparseMatrix::from_dense(&[vec![q(2), q(1)], vec![q(1), q(2)]]);
        assert_eq!(charpoly(&m), vec![q(3), q(-4), q(1)]);
        assert_eq!(integer_roots(&charpoly(&m), 3), vec![(1, 1), (3, 1)]);
        let m = SparseMatrix::from_dense(&[
            vec![q(0), q(0), q(1)],
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
        ]);
        assert_eq!(charpoly(&m), vec![q(-1), q(0), q(0), q(1)]);
        assert_eq!(integer_roots(&charpoly(&m), 3), vec![(1, 1)]);
    }

    #[test]
    fn psd_detection() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(is_psd(&m));
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(1)]]);
        assert!(!is_psd(&m));
        let m = SparseMatrix::from_dense(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert!(!is_psd(&m));
    }

    #[test]
    fn simple_eigenvectors() {
        let spec = AlgebraSpec::witt(1);
        assert_eq!(
            eigenvector(&spec, &shape("(1)")).unwrap(),
            Chain::from_indices(&[1])
        );
        assert_eq!(
            eigenvector(&spec, &shape("(3)")).unwrap(),
            Chain::from_indices(&[3])
        );
        assert!(matches!(
            eigenvector(&spec, &shape("(1,2)")),
            Err(LaplacianError::SingularShape(_))
        ));
    }

    #[test]
    fn harmonic_second_slice() {
        let h = harmonic_basis(&AlgebraSpec::witt(1), 2).unwrap();
        assert_eq!(h, vec![Chain::from_indices(&[2])]);
    }
}
