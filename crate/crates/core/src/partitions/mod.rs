//! Partition combinatorics: classification, normal forms, the filtering order,
//! the Frobenius bijections and the generating-series identities.

mod frobenius;
mod lambda;
mod order;
mod series;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use frobenius::{frobenius, phi, psi, FrobeniusForm};
pub use lambda::{lambda_inverse, lambda_map};
pub use order::{linear_extension, order_cmp, order_leq, order_slice, OrderSlice, OrderVerdict};
pub use series::{
    a_kq_series, alpha_weighted_sides, count_m, count_p, count_r, distinguished_product_sides,
    sylvester_sides, verify_series_identity, SeriesIdentity, TruncatedSeries,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be non-negative and non-decreasing: {0:?}")]
    NotSorted(Vec<i32>),
    #[error("parts must be strictly increasing: {0:?}")]
    NotStrict(Vec<i32>),
    #[error("marked parts {marked:?} are not an admissible sub-multiset of {base:?}")]
    BadMarking { base: Vec<i32>, marked: Vec<i32> },
    #[error("{0} is not a {1}-partition")]
    BelowK(String, i32),
    #[error("{0} is singular for k={1}")]
    Singular(String, i32),
    #[error("{0} is not a main {1}-partition")]
    NotMain(String, i32),
    #[error("part at position {0} is marked or out of range")]
    IllegalMove(usize),
    #[error("frobenius conditions violated: {0}")]
    Frobenius(String),
    #[error("empty partition")]
    Empty,
    #[error("requires k > {min}, got {k}")]
    KTooSmall { k: i32, min: i32 },
    #[error("cannot parse partition: {0}")]
    Parse(String),
    #[error("no unique preimage for {0}")]
    NoPreimage(String),
}

/// A non-decreasing list of non-negative parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i32>,
}

impl Partition {
    pub fn new(parts: Vec<i32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(PartitionError::NotSorted(parts));
        }
        Ok(Partition { parts })
    }

    pub fn from_unsorted(mut parts: Vec<i32>) -> Result<Self, PartitionError> {
        parts.sort_unstable();
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<i32> {
        self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|&p| p as i64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] < w[1])
    }

    pub fn min_part(&self) -> Option<i32> {
        self.parts.first().copied()
    }

    /// `i_1, i_1 + i_2, ...` over all parts.
    pub fn partial_sums(&self) -> Vec<i64> {
        self.parts
            .iter()
            .scan(0i64, |acc, &p| {
                *acc += p as i64;
                Some(*acc)
            })
            .collect()
    }

    /// True when every one of the first `q - 1` partial sums of `self` is at
    /// most the corresponding one of `other`. Both must have the same length.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        self.dim() == other.dim()
            && self
                .partial_sums()
                .iter()
                .zip(other.partial_sums())
                .all(|(a, b)| *a <= b)
    }

    pub fn contains(&self, v: i32) -> bool {
        self.parts.binary_search(&v).is_ok()
    }

    /// Number of copies of `v`.
    pub fn multiplicity(&self, v: i32) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Partition::new(Vec::<i32>::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<i32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// A partition with pairwise distinct parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StrictPartition(Partition);

impl StrictPartition {
    pub fn new(parts: Vec<i32>) -> Result<Self, PartitionError> {
        let p = Partition::new(parts)?;
        if !p.is_strict() {
            return Err(PartitionError::NotStrict(p.parts));
        }
        Ok(StrictPartition(p))
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }
}

impl Deref for StrictPartition {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl TryFrom<Partition> for StrictPartition {
    type Error = PartitionError;

    fn try_from(p: Partition) -> Result<Self, Self::Error> {
        if p.is_strict() {
            Ok(StrictPartition(p))
        } else {
            Err(PartitionError::NotStrict(p.parts))
        }
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        StrictPartition::new(Vec::<i32>::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A partition `I` with a marked sub-multiset `J` such that `I \ J` is strict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistinguishedPartition {
    base: Partition,
    marked: Partition,
}

impl DistinguishedPartition {
    pub fn new(base: Partition, marked: Partition) -> Result<Self, PartitionError> {
        let bad = || PartitionError::BadMarking {
            base: base.parts.clone(),
            marked: marked.parts.clone(),
        };
        let mut i = 0;
        for run in group_runs(base.parts()) {
            let (v, c) = run;
            let m = marked.multiplicity(v);
            if m > c || m + 1 < c {
                return Err(bad());
            }
            i += m;
        }
        if i != marked.dim() {
            return Err(bad());
        }
        Ok(DistinguishedPartition { base, marked })
    }

    pub fn unmarked(base: Partition) -> Result<Self, PartitionError> {
        Self::new(base, Partition::empty())
    }

    /// Builds from `(part, marked)` pairs in any order.
    pub fn from_positions(pos: &[(i32, bool)]) -> Result<Self, PartitionError> {
        let base = Partition::from_unsorted(pos.iter().map(|p| p.0).collect())?;
        let marked = Partition::from_unsorted(pos.iter().filter(|p| p.1).map(|p| p.0).collect())?;
        Self::new(base, marked)
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn marked(&self) -> &Partition {
        &self.marked
    }

    pub fn degree(&self) -> i64 {
        self.base.degree()
    }

    /// Total dimension `dim I + dim J`.
    pub fn dim(&self) -> usize {
        self.base.dim() + self.marked.dim()
    }

    pub fn reduced_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn height(&self) -> usize {
        self.marked.dim()
    }

    /// The strict partition `I \ J`.
    pub fn unmarked_parts(&self) -> Vec<i32> {
        self.positions()
            .into_iter()
            .filter(|p| !p.1)
            .map(|p| p.0)
            .collect()
    }

    /// Parts in ascending order with a mark flag each; among equal parts the
    /// marked copies come last.
    pub fn positions(&self) -> Vec<(i32, bool)> {
        let mut out = Vec::with_capacity(self.base.dim());
        for (v, c) in group_runs(self.base.parts()) {
            let m = self.marked.multiplicity(v);
            out.extend(std::iter::repeat_n((v, false), c - m));
            out.extend(std::iter::repeat_n((v, true), m));
        }
        out
    }

    pub fn check_k(&self, k: i32) -> Result<(), PartitionError> {
        match self.base.min_part() {
            Some(m) if m < k => Err(PartitionError::BelowK(self.to_string(), k)),
            _ => Ok(()),
        }
    }

    /// The base is nonsingular and every mark sits on a leading part of its
    /// normal form.
    pub fn is_nonsingular(&self, k: i32) -> bool {
        if !is_nonsingular(&self.base, k) {
            return false;
        }
        let lead = normal_form(&self.base, k)
            .expect("nonsingular")
            .leading_parts();
        self.marked.parts().iter().all(|v| lead.contains(v))
    }

    /// Key used for canonical ordering and serialization.
    fn sort_key(&self) -> (Vec<i32>, Vec<i32>) {
        (self.base.parts.clone(), self.marked.parts.clone())
    }
}

impl PartialOrd for DistinguishedPartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DistinguishedPartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for DistinguishedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (v, m)) in self.positions().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}{}", if m { "_" } else { "" })?;
        }
        write!(f, ")")
    }
}

/// Parses `(1,4,5,5_)`, a trailing underscore marking a part.
impl FromStr for DistinguishedPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Self::unmarked(Partition::empty());
        }
        let mut pos = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (num, m) = match tok.strip_suffix('_') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let v = num
                .parse::<i32>()
                .map_err(|_| PartitionError::Parse(s.to_string()))?;
            pos.push((v, m));
        }
        Self::from_positions(&pos)
    }
}

#[derive(Serialize, Deserialize)]
struct DistinguishedRepr {
    parts: Vec<i32>,
    marked: Vec<usize>,
}

impl Serialize for DistinguishedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pos = self.positions();
        DistinguishedRepr {
            parts: pos.iter().map(|p| p.0).collect(),
            marked: pos
                .iter()
                .enumerate()
                .filter(|(_, p)| p.1)
                .map(|(i, _)| i)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistinguishedPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = DistinguishedRepr::deserialize(d)?;
        if r.marked.iter().any(|&i| i >= r.parts.len()) {
            return Err(D::Error::custom("mark index out of range"));
        }
        let pos: Vec<(i32, bool)> = r
            .parts
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, r.marked.contains(&i)))
            .collect();
        DistinguishedPartition::from_positions(&pos).map_err(D::Error::custom)
    }
}

/// `(value, multiplicity)` runs of a sorted slice.
fn group_runs(parts: &[i32]) -> Vec<(i32, usize)> {
    let mut out: Vec<(i32, usize)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn is_nonsingular(i: &Partition, k: i32) -> bool {
    i.min_part().is_none_or(|m| m >= k) && i.parts().windows(2).all(|w| w[1] - w[0] >= 3)
}

/// Main partitions are nonsingular with `i_q <= 2k + 3(q-1)`, strictly when `i_1 = k`.
pub fn is_main(i: &Partition, k: i32) -> bool {
    is_nonsingular(i, k) && main_bound_holds(i.parts(), k)
}

fn main_bound_holds(parts: &[i32], k: i32) -> bool {
    let Some((&first, &last)) = parts.first().zip(parts.last()) else {
        return true;
    };
    let bound = 2 * k + 3 * (parts.len() as i32 - 1);
    if first == k {
        last < bound
    } else {
        last <= bound
    }
}

pub fn is_dense(i: &Partition, k: i32) -> bool {
    i.min_part().is_some_and(|m| m > 2 * k) && i.parts().windows(2).all(|w| w[1] - w[0] == 3)
}

/// Split of a nonsingular partition into its longest main prefix and the
/// maximal runs of gap 3 that follow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub main_part: Partition,
    pub dense_blocks: Vec<Partition>,
}

impl NormalForm {
    pub fn alpha(&self) -> usize {
        self.dense_blocks.len()
    }

    pub fn leading_parts(&self) -> Vec<i32> {
        self.dense_blocks.iter().map(|b| b.parts()[0]).collect()
    }
}

pub fn normal_form(i: &Partition, k: i32) -> Result<NormalForm, PartitionError> {
    if !is_nonsingular(i, k) {
        return Err(PartitionError::Singular(i.to_string(), k));
    }
    let p = i.parts();
    let head = (0..=p.len())
        .rev()
        .find(|&l| main_bound_holds(&p[..l], k))
        .unwrap_or(0);
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    for &v in &p[head..] {
        match blocks.last_mut() {
            Some(b) if v - b[b.len() - 1] == 3 => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    Ok(NormalForm {
        main_part: Partition {
            parts: p[..head].to_vec(),
        },
        dense_blocks: blocks
            .into_iter()
            .map(|parts| Partition { parts })
            .collect(),
    })
}

/// The number of dense blocks in the normal form.
pub fn alpha(i: &Partition, k: i32) -> Result<usize, PartitionError> {
    Ok(normal_form(i, k)?.alpha())
}

/// Merges the unmarked parts at positions `a` and `b` (in `positions()` order)
/// into one marked part.
pub fn s_move(
    d: &DistinguishedPartition,
    a: usize,
    b: usize,
) -> Result<DistinguishedPartition, PartitionError> {
    let mut pos = d.positions();
    for &x in &[a, b] {
        if x >= pos.len() || pos[x].1 {
            return Err(PartitionError::IllegalMove(x));
        }
    }
    if a == b {
        return Err(PartitionError::IllegalMove(a));
    }
    let merged = pos[a].0 + pos[b].0;
    let (hi, lo) = (a.max(b), a.min(b));
    pos.remove(hi);
    pos.remove(lo);
    pos.push((merged, true));
    DistinguishedPartition::from_positions(&pos)
}

/// Every result of a single legal S-move.
pub fn s_moves(d: &DistinguishedPartition) -> Vec<DistinguishedPartition> {
    let pos = d.positions();
    let free: Vec<usize> = (0..pos.len()).filter(|&i| !pos[i].1).collect();
    let mut out = Vec::new();
    for (x, &a) in free.iter().enumerate() {
        for &b in &free[x + 1..] {
            out.push(s_move(d, a, b).expect("unmarked positions"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Strict partitions with parts `>= k` (and `>= 0`), degree `n`, optionally of one
/// dimension. Ordered by dimension, then lexicographically.
pub fn strict_partitions(k: i32, n: i64, dim: Option<usize>) -> Vec<Partition> {
    let lo = k.max(0);
    let dims: Vec<usize> = match dim {
        Some(q) => vec![q],
        None => (0..=max_strict_dim(lo, n)).collect(),
    };
    let mut out = Vec::new();
    for q in dims {
        let mut cur = Vec::with_capacity(q);
        strict_rec(lo, n, q, 1, &mut cur, &mut out);
    }
    out
}

fn max_strict_dim(lo: i32, n: i64) -> usize {
    if n < 0 {
        return 0;
    }
    let mut q = 0usize;
    loop {
        let next = q as i64 + 1;
        let min_sum = next * lo as i64 + next * (next - 1) / 2;
        if min_sum > n {
            return q;
        }
        q += 1;
    }
}

/// Appends all sorted sequences of `q` parts `>= lo`, consecutive gaps `>= gap`,
/// summing to `n`.
fn strict_rec(lo: i32, n: i64, q: usize, gap: i32, cur: &mut Vec<i32>, out: &mut Vec<Partition>) {
    if q == 0 {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
        }
        return;
    }
    if q == 1 {
        if n >= lo as i64 {
            cur.push(n as i32);
            out.push(Partition { parts: cur.clone() });
            cur.pop();
        }
        return;
    }
    let qi = q as i64;
    let g = gap as i64;
    let mut v = lo as i64;
    // the remaining q parts are at least v, v+g, ..., so their sum is at least q*v + g*q(q-1)/2
    while qi * v + g * qi * (qi - 1) / 2 <= n {
        cur.push(v as i32);
        strict_rec((v + g) as i32, n - v, q - 1, gap, cur, out);
        cur.pop();
        v += 1;
    }
}

/// Nonsingular `k`-partitions of degree `n`, ordered like [`strict_partitions`].
pub fn nonsingular_partitions(k: i32, n: i64, dim: Option<usize>) -> Vec<Partition> {
    let lo = k.max(1);
    let dims: Vec<usize> = match dim {
        Some(q) => vec![q],
        None => (0..=max_gap_dim(lo, n)).collect(),
    };
    let mut out = Vec::new();
    for q in dims {
        let mut cur = Vec::with_capacity(q);
        strict_rec(lo, n, q, 3, &mut cur, &mut out);
    }
    out
}

fn max_gap_dim(lo: i32, n: i64) -> usize {
    let mut q = 0usize;
    while {
        let next = q as i64 + 1;
        next * lo as i64 + 3 * next * (next - 1) / 2 <= n
    } {
        q += 1;
    }
    q
}

pub fn main_partitions(k: i32, n: i64, dim: Option<usize>) -> Vec<Partition> {
    nonsingular_partitions(k, n, dim)
        .into_iter()
        .filter(|p| is_main(p, k))
        .collect()
}

/// All main `k`-partitions of dimension `q`, over every degree.
pub fn main_partitions_of_dim(k: i32, q: usize) -> Vec<Partition> {
    if q == 0 {
        return vec![Partition::empty()];
    }
    let top = 2 * k + 3 * (q as i32 - 1);
    let max_n = (0..q as i32).map(|j| (top - 3 * j) as i64).sum::<i64>();
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(main_partitions(k, n, Some(q)));
    }
    out.sort();
    out
}

/// Nonsingular distinguished `k`-partitions of degree `n`: each nonsingular base
/// with every subset of its leading parts marked. Ordered by total dimension,
/// then canonically.
pub fn nonsingular_distinguished(
    k: i32,
    n: i64,
    total_dim: Option<usize>,
) -> Vec<DistinguishedPartition> {
    let mut out = Vec::new();
    for base in nonsingular_partitions(k, n, None) {
        let lead = normal_form(&base, k).expect("nonsingular").leading_parts();
        for mask in 0u32..(1 << lead.len()) {
            let marked: Vec<i32> = lead
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if total_dim.is_some_and(|t| t != base.dim() + marked.len()) {
                continue;
            }
            let d = DistinguishedPartition::new(base.clone(), Partition { parts: marked })
                .expect("leading parts are distinct parts of a strict base");
            out.push(d);
        }
    }
    out.sort_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
    out
}

/// Every distinguished `k`-partition of degree `n` and total dimension `t`.
pub fn distinguished_partitions(k: i32, n: i64, t: usize) -> Vec<DistinguishedPartition> {
    let mut out = Vec::new();
    let mut cur: Vec<(i32, usize, usize)> = Vec::new();
    dist_rec(k.max(1) as i64, n, t, &mut cur, &mut out);
    out.sort();
    out
}

fn dist_rec(
    v: i64,
    n: i64,
    t: usize,
    cur: &mut Vec<(i32, usize, usize)>,
    out: &mut Vec<DistinguishedPartition>,
) {
    if n == 0 {
        if t == 0 {
            let mut base = Vec::new();
            let mut marked = Vec::new();
            for &(val, c, m) in cur.iter() {
                base.extend(std::iter::repeat_n(val, c));
                marked.extend(std::iter::repeat_n(val, m));
            }
            out.push(DistinguishedPartition {
                base: Partition { parts: base },
                marked: Partition { parts: marked },
            });
        }
        return;
    }
    if v > n || t == 0 {
        return;
    }
    // skip value v
    dist_rec(v + 1, n, t, cur, out);
    let mut c = 1usize;
    while c as i64 * v <= n && c <= t {
        for m in [c - 1, c] {
            if c + m <= t {
                cur.push((v as i32, c, m));
                dist_rec(v + 1, n - c as i64 * v, t - c - m, cur, out);
                cur.pop();
            }
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn dp(s: &str) -> DistinguishedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn nonsingular_examples() {
        assert!(is_nonsingular(&p(&[1, 4, 7]), 1));
        assert!(is_nonsingular(&p(&[2, 6, 9]), 1));
        assert!(!is_nonsingular(&p(&[1, 2]), 1));
        assert!(!is_nonsingular(&p(&[1, 4]), 2));
    }

    #[test]
    fn main_examples() {
        for r in [1, 2] {
            for q in 1..6 {
                let parts: Vec<i32> = (0..q).map(|j| r + 3 * j).collect();
                assert!(is_main(&p(&parts), 1));
            }
        }
        assert!(is_main(&p(&[2, 6, 9]), 2));
        assert!(!is_main(&p(&[3]), 1));
        assert!(is_main(&Partition::empty(), 1));
        // i_1 = k forces the strict bound
        assert!(!is_main(&p(&[1, 5]), 1));
        assert!(is_main(&p(&[2, 5]), 1));
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&p(&[2, 6, 9]), 1).unwrap();
        assert_eq!(nf.main_part, p(&[2]));
        assert_eq!(nf.dense_blocks, vec![p(&[6, 9])]);
        assert_eq!(nf.alpha(), 1);

        let nf = normal_form(&p(&[2, 6, 9]), 2).unwrap();
        assert_eq!(nf.main_part, p(&[2, 6, 9]));
        assert_eq!(nf.alpha(), 0);

        let nf = normal_form(&p(&[3]), 1).unwrap();
        assert!(nf.main_part.is_empty());
        assert_eq!(nf.dense_blocks, vec![p(&[3])]);
        assert_eq!(nf.leading_parts(), vec![3]);

        assert!(normal_form(&p(&[1, 2]), 1).is_err());
    }

    #[test]
    fn dense_blocks_are_dense() {
        for n in 0..30 {
            for i in nonsingular_partitions(1, n, None) {
                let nf = normal_form(&i, 1).unwrap();
                assert!(is_main(&nf.main_part, 1));
                let mut all = nf.main_part.parts().to_vec();
                for b in &nf.dense_blocks {
                    assert!(is_dense(b, 1), "{i}: block {b}");
                    all.extend_from_slice(b.parts());
                }
                assert_eq!(all, i.parts());
            }
        }
    }

    #[test]
    fn s_move_examples() {
        let start = dp("(1,2,3,4,5)");
        let one = s_move(&start, 1, 2).unwrap();
        assert_eq!(one, dp("(1,4,5,5_)"));
        assert_eq!(s_move(&one, 0, 1).unwrap(), dp("(5,5_,5_)"));
        assert!(s_moves(&dp("(5,5_,5_)")).is_empty());
        assert!(matches!(
            s_move(&one, 0, 3),
            Err(PartitionError::IllegalMove(3))
        ));
        assert_eq!(one.degree(), start.degree());
        assert_eq!(one.dim(), start.dim());
        assert_eq!(one.reduced_dim() + 1, start.reduced_dim());
        assert_eq!(one.height(), start.height() + 1);
    }

    #[test]
    fn distinguished_validation() {
        assert!(DistinguishedPartition::new(p(&[5, 5, 5]), p(&[5, 5])).is_ok());
        assert!(DistinguishedPartition::new(p(&[5, 5, 5]), p(&[5])).is_err());
        assert!(DistinguishedPartition::new(p(&[1, 2]), p(&[3])).is_err());
        let d = dp("(5_,5,5_)");
        assert_eq!(d.to_string(), "(5,5_,5_)");
        assert_eq!(d.positions(), vec![(5, false), (5, true), (5, true)]);
    }

    #[test]
    fn distinguished_json() {
        let d = dp("(1,4,5,5_)");
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"parts":[1,4,5,5],"marked":[3]}"#);
        let back: DistinguishedPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&p(&[2, 6, 9])).unwrap(), "[2,6,9]");
        assert!(serde_json::from_str::<Partition>("[3,1]").is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(strict_partitions(1, 3, None), vec![p(&[3]), p(&[1, 2])]);
        let ns = nonsingular_partitions(1, 3, None);
        assert_eq!(ns, vec![p(&[3])]);
        assert_eq!(alpha(&ns[0], 1).unwrap(), 1);
        for q in 1..6usize {
            let m = main_partitions_of_dim(1, q);
            let expect: Vec<Partition> = [1, 2]
                .iter()
                .map(|&r| p(&(0..q as i32).map(|j| r + 3 * j).collect::<Vec<_>>()))
                .collect();
            assert_eq!(m, expect);
        }
        assert_eq!(strict_partitions(1, 0, None), vec![Partition::empty()]);
    }

    /// Brute force over subsets of `lo..=n`.
    fn strict_oracle(lo: i32, n: i64) -> usize {
        let vals: Vec<i64> = (lo as i64..=n).collect();
        let mut ways = vec![0usize; n as usize + 1];
        ways[0] = 1;
        for v in vals {
            for s in (v as usize..=n as usize).rev() {
                ways[s] += ways[s - v as usize];
            }
        }
        ways[n as usize]
    }

    #[test]
    fn strict_counts_match_subset_dp() {
        for k in 1..4 {
            for n in 1..30 {
                assert_eq!(strict_partitions(k, n, None).len(), strict_oracle(k, n));
            }
        }
    }

    #[test]
    fn nonsingular_sum_matches_strict_count() {
        // sum over nonsingular I of 2^alpha equals the strict count
        for k in 1..4 {
            for n in 0..=30 {
                let total: usize = nonsingular_partitions(k, n, None)
                    .iter()
                    .map(|i| 1usize << alpha(i, k).unwrap())
                    .sum();
                assert_eq!(total, strict_partitions(k, n, None).len(), "k={k} n={n}");
                assert_eq!(nonsingular_distinguished(k, n, None).len(), total);
            }
        }
    }

    fn binom(n: i64, r: i64) -> i64 {
        if r < 0 || n < 0 || r > n {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn main_counts_follow_binomial_recurrence() {
        for k in 1..=5 {
            for q in 1..=6i64 {
                let r = main_partitions_of_dim(k, q as usize).len() as i64;
                let kk = k as i64;
                assert_eq!(r, binom(q + kk - 1, kk - 1) + binom(q + kk - 2, kk - 1));
                if k >= 2 {
                    let prev = main_partitions_of_dim(k, q as usize - 1).len() as i64;
                    let lower = main_partitions_of_dim(k - 1, q as usize).len() as i64;
                    assert_eq!(r, prev + lower);
                }
            }
        }
    }

    #[test]
    fn main_step_maps_are_a_bijection() {
        for k in 2..=5 {
            for q in 2..=6usize {
                let mut image: Vec<Partition> = main_partitions_of_dim(k, q - 1)
                    .into_iter()
                    .map(|i| {
                        let mut v = i.into_parts();
                        v.push(v[v.len() - 1] + 3);
                        p(&v)
                    })
                    .collect();
                image.extend(main_partitions_of_dim(k - 1, q).into_iter().map(|i| {
                    let mut v: Vec<i32> = i.parts().iter().map(|x| x + 1).collect();
                    *v.last_mut().unwrap() += 1;
                    p(&v)
                }));
                let n = image.len();
                image.sort();
                image.dedup();
                assert_eq!(image.len(), n);
                assert_eq!(image, main_partitions_of_dim(k, q));
            }
        }
    }

    #[test]
    fn distinguished_enumeration_is_complete() {
        // brute force: every partition with parts >= 1 and every admissible marking
        for n in 1..=10i64 {
            for t in 1..=8usize {
                let got = distinguished_partitions(1, n, t);
                let mut expect = Vec::new();
                for q in 1..=t {
                    for base in all_partitions(n, q) {
                        for marked in sub_multisets(&base) {
                            if let Ok(d) = DistinguishedPartition::new(p(&base), p(&marked)) {
                                if d.dim() == t {
                                    expect.push(d);
                                }
                            }
                        }
                    }
                }
                expect.sort();
                expect.dedup();
                assert_eq!(got, expect, "n={n} t={t}");
            }
        }
    }

    fn all_partitions(n: i64, q: usize) -> Vec<Vec<i32>> {
        fn rec(min: i64, n: i64, q: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if q == 0 {
                if n == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for v in min..=n {
                cur.push(v as i32);
                rec(v, n - v, q - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, n, q, &mut Vec::new(), &mut out);
        out
    }

    fn sub_multisets(base: &[i32]) -> Vec<Vec<i32>> {
        let mut out = vec![Vec::new()];
        for &v in base {
            let mut next = out.clone();
            for s in &out {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
            out = next;
        }
        out
    }
}
