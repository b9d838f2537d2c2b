//! Exact boundary ranks per slice.
//!
//! Ranks are first taken modulo a large prime, which can only undercount, so
//! `h_p >= h` degreewise. A modular Betti number of zero is therefore exact.
//! Otherwise the slice's Euler characteristic, which is known exactly from the
//! chain dimensions, pins the modular values down whenever every degree with
//! `h_p > 0` has the same parity. Anything left over is recomputed over `Q`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::liealg::{d_matrix, graded_basis, max_dim, AlgebraSpec, Basis};
use crate::qlinalg::{rank_mod_p, Q};

type RankKey = (AlgebraSpec, i64, usize);

#[derive(Default)]
struct Caches {
    exact: HashMap<RankKey, usize>,
    modular: HashMap<RankKey, usize>,
}

fn caches() -> &'static Mutex<Caches> {
    static CACHE: OnceLock<Mutex<Caches>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Caches::default()))
}

fn lookup(key: &RankKey, modular: bool) -> Option<usize> {
    let c = caches().lock().expect("rank cache poisoned");
    if modular {
        c.modular.get(key).copied()
    } else {
        c.exact.get(key).copied()
    }
}

fn store_exact(key: RankKey, r: usize) {
    caches()
        .lock()
        .expect("rank cache poisoned")
        .exact
        .insert(key, r);
}

pub(crate) fn basis(spec: &AlgebraSpec, n: i64, q: usize) -> Basis {
    Basis::new(graded_basis(spec, n, q))
}

fn matrix(spec: &AlgebraSpec, n: i64, q: usize) -> Option<crate::qlinalg::SparseMatrix<Q>> {
    if q == 0 {
        return None;
    }
    let src = basis(spec, n, q);
    if src.is_empty() {
        return None;
    }
    let dst = basis(spec, n, q - 1);
    if dst.is_empty() {
        return None;
    }
    Some(d_matrix::<Q>(spec, &src, &dst))
}

/// Rank of `d: C_q -> C_{q-1}` over `Q`, by rational elimination only.
pub fn rational_boundary_rank(spec: &AlgebraSpec, n: i64, q: usize) -> usize {
    let key = (*spec, n, q);
    if let Some(r) = lookup(&key, false) {
        return r;
    }
    let r = matrix(spec, n, q).map_or(0, |m| m.rank());
    store_exact(key, r);
    r
}

fn modular_rank(spec: &AlgebraSpec, n: i64, q: usize) -> usize {
    let key = (*spec, n, q);
    if let Some(r) = lookup(&key, true).or_else(|| lookup(&key, false)) {
        return r;
    }
    let r = match matrix(spec, n, q) {
        None => 0,
        Some(m) => match rank_mod_p(&m) {
            Some(r) => r,
            None => m.rank(),
        },
    };
    caches()
        .lock()
        .expect("rank cache poisoned")
        .modular
        .insert(key, r);
    r
}

fn dim_c(spec: &AlgebraSpec, n: i64, q: usize) -> usize {
    graded_basis(spec, n, q).len()
}

/// Certifies every modular rank on the slice at once via the Euler
/// characteristic; returns `false` when the parity condition fails.
fn certify_slice(spec: &AlgebraSpec, n: i64) -> bool {
    let top = max_dim(spec, n);
    let ranks: Vec<usize> = (0..=top + 1).map(|q| modular_rank(spec, n, q)).collect();
    let h: Vec<usize> = (0..=top)
        .map(|q| dim_c(spec, n, q) - ranks[q] - ranks[q + 1])
        .collect();
    let mut parities = (0..=top).filter(|&q| h[q] > 0).map(|q| q % 2);
    let first = parities.next();
    if parities.any(|p| Some(p) != first) {
        return false;
    }
    for (q, &r) in ranks.iter().enumerate() {
        store_exact((*spec, n, q), r);
    }
    true
}

/// Rank of `d: C_q -> C_{q-1}` on the degree-`n` slice (memoized, exact).
pub fn boundary_rank(spec: &AlgebraSpec, n: i64, q: usize) -> usize {
    if q == 0 {
        return 0;
    }
    if let Some(r) = lookup(&(*spec, n, q), false) {
        return r;
    }
    if dim_c(spec, n, q) == 0 {
        return 0;
    }
    betti(spec, n, q);
    lookup(&(*spec, n, q), false).expect("betti records both adjacent ranks")
}

/// `dim H_q` of the degree-`n` slice.
pub fn betti(spec: &AlgebraSpec, n: i64, q: usize) -> usize {
    let dim = dim_c(spec, n, q);
    if dim == 0 {
        return 0;
    }
    let exact = |q| lookup(&(*spec, n, q), false);
    if let (Some(a), Some(b)) = (exact(q), exact(q + 1)) {
        return dim - a - b;
    }
    let (a, b) = (modular_rank(spec, n, q), modular_rank(spec, n, q + 1));
    if dim == a + b {
        store_exact((*spec, n, q), a);
        store_exact((*spec, n, q + 1), b);
        return 0;
    }
    if certify_slice(spec, n) {
        return dim - a - b;
    }
    dim - rational_boundary_rank(spec, n, q) - rational_boundary_rank(spec, n, q + 1)
}
