//! The filtering order on distinguished partitions of fixed degree and total
//! dimension, as the reflexive-transitive closure of its generating relations.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use super::{distinguished_partitions, s_moves, DistinguishedPartition, PartitionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// One slice `(k, n, total dimension)` with the down-set of every element.
#[derive(Debug)]
pub struct OrderSlice {
    k: i32,
    n: i64,
    dim: usize,
    nodes: Vec<DistinguishedPartition>,
    index: HashMap<DistinguishedPartition, usize>,
    down: Vec<FixedBitSet>,
}

impl OrderSlice {
    pub fn build(k: i32, n: i64, dim: usize) -> Self {
        let mut nodes = distinguished_partitions(k, n, dim);
        // generators of each node all come earlier in this order
        nodes.sort_by_cached_key(|d| {
            (
                d.reduced_dim(),
                d.base().partial_sums(),
                d.base().parts().to_vec(),
                d.marked().parts().to_vec(),
            )
        });
        let index: HashMap<DistinguishedPartition, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        let size = nodes.len();
        let mut down: Vec<FixedBitSet> = Vec::with_capacity(size);
        // (base position in `bases`, down-set of its largest marking)
        let mut bases: Vec<(usize, FixedBitSet)> = Vec::new();
        let mut i = 0;
        while i < size {
            let base = nodes[i].base().clone();
            let mut j = i;
            while j < size && nodes[j].base() == &base {
                j += 1;
            }
            let mut acc = FixedBitSet::with_capacity(size);
            for (b, full) in &bases {
                let other = nodes[*b].base();
                if other.dim() == base.dim() && other.dominated_by(&base) {
                    acc.union_with(full);
                }
            }
            for x in i..j {
                acc.insert(x);
                for m in s_moves(&nodes[x]) {
                    let t = index[&m];
                    debug_assert!(t < i, "merge target processed first");
                    acc.union_with(&down[t]);
                }
                down.push(acc.clone());
            }
            bases.push((i, acc));
            i = j;
        }
        OrderSlice {
            k,
            n,
            dim,
            nodes,
            index,
            down,
        }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn degree(&self) -> i64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[DistinguishedPartition] {
        &self.nodes
    }

    pub fn position(&self, d: &DistinguishedPartition) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// `nodes[a] ⊴ nodes[b]` by position.
    pub fn leq_at(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    pub fn leq(&self, a: &DistinguishedPartition, b: &DistinguishedPartition) -> Option<bool> {
        Some(self.leq_at(self.position(a)?, self.position(b)?))
    }

    pub fn compare(&self, a: &DistinguishedPartition, b: &DistinguishedPartition) -> OrderVerdict {
        let (Some(x), Some(y)) = (self.position(a), self.position(b)) else {
            return OrderVerdict::Incomparable;
        };
        match (self.leq_at(x, y), self.leq_at(y, x)) {
            (true, true) => OrderVerdict::Equal,
            (true, false) => OrderVerdict::Less,
            (false, true) => OrderVerdict::Greater,
            (false, false) => OrderVerdict::Incomparable,
        }
    }

    /// Positions strictly below `nodes[b]`.
    pub fn strictly_below(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[b].ones().filter(move |&a| a != b)
    }
}

type SliceKey = (i32, i64, usize);

fn cache() -> &'static Mutex<HashMap<SliceKey, Arc<OrderSlice>>> {
    static CACHE: OnceLock<Mutex<HashMap<SliceKey, Arc<OrderSlice>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The memoized slice `(k, n, dim)`.
pub fn order_slice(k: i32, n: i64, dim: usize) -> Arc<OrderSlice> {
    let key = (k, n, dim);
    if let Some(s) = cache().lock().expect("order cache poisoned").get(&key) {
        return Arc::clone(s);
    }
    let built = Arc::new(OrderSlice::build(k, n, dim));
    let mut map = cache().lock().expect("order cache poisoned");
    Arc::clone(map.entry(key).or_insert(built))
}

/// Compares two distinguished `k`-partitions. Different degree or total
/// dimension gives `Incomparable`.
pub fn order_cmp(
    a: &DistinguishedPartition,
    b: &DistinguishedPartition,
    k: i32,
) -> Result<OrderVerdict, PartitionError> {
    if k < 1 {
        return Err(PartitionError::KTooSmall { k, min: 0 });
    }
    a.check_k(k)?;
    b.check_k(k)?;
    if a.degree() != b.degree() || a.dim() != b.dim() {
        return Ok(OrderVerdict::Incomparable);
    }
    Ok(order_slice(k, a.degree(), a.dim()).compare(a, b))
}

/// `a ⊴ b`.
pub fn order_leq(
    a: &DistinguishedPartition,
    b: &DistinguishedPartition,
    k: i32,
) -> Result<bool, PartitionError> {
    Ok(matches!(
        order_cmp(a, b, k)?,
        OrderVerdict::Less | OrderVerdict::Equal
    ))
}

/// Sorts `items` (all from one slice) so that smaller elements come first,
/// breaking ties by canonical order.
pub fn linear_extension(
    items: &[DistinguishedPartition],
    k: i32,
) -> Result<Vec<DistinguishedPartition>, PartitionError> {
    let Some(first) = items.first() else {
        return Ok(Vec::new());
    };
    let slice = order_slice(k, first.degree(), first.dim());
    let pos: Vec<usize> = items
        .iter()
        .map(|d| {
            d.check_k(k)?;
            slice
                .position(d)
                .ok_or_else(|| PartitionError::BelowK(d.to_string(), k))
        })
        .collect::<Result<_, _>>()?;
    let m = items.len();
    let mut indeg = vec![0usize; m];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            if a != b && pos[a] != pos[b] && slice.leq_at(pos[a], pos[b]) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(&DistinguishedPartition, usize)> = (0..m)
        .filter(|&i| indeg[i] == 0)
        .map(|i| (&items[i], i))
        .collect();
    let mut out = Vec::with_capacity(m);
    while let Some(first) = ready.pop_first() {
        let i = first.1;
        out.push(items[i].clone());
        for &b in &succ[i] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert((&items[b], b));
            }
        }
    }
    debug_assert_eq!(out.len(), m, "order has no cycles");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DistinguishedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn worked_chain() {
        let chain = ["(1,2,3,4,5)", "(1,4,5,5_)", "(5,5_,5_)", "(3,5_,7_)"];
        for w in chain.windows(2) {
            assert_eq!(
                order_cmp(&dp(w[1]), &dp(w[0]), 1).unwrap(),
                OrderVerdict::Less,
                "{} < {}",
                w[1],
                w[0]
            );
        }
        assert_eq!(
            order_cmp(&dp("(3,5_,7_)"), &dp("(1,2,3,4,5)"), 1).unwrap(),
            OrderVerdict::Less
        );
    }

    #[test]
    fn incomparable_example() {
        assert_eq!(
            order_cmp(&dp("(1,3,5,6_)"), &dp("(5,5_,5_)"), 1).unwrap(),
            OrderVerdict::Incomparable
        );
    }

    #[test]
    fn lexicographic_marks() {
        assert_eq!(
            order_cmp(&dp("(3_,6)"), &dp("(3,6_)"), 1).unwrap(),
            OrderVerdict::Less
        );
    }

    #[test]
    fn mismatched_slices_are_incomparable() {
        assert_eq!(
            order_cmp(&dp("(1,4)"), &dp("(5)"), 1).unwrap(),
            OrderVerdict::Incomparable
        );
        assert!(order_cmp(&dp("(1,4)"), &dp("(2,3)"), 2).is_err());
    }

    #[test]
    fn closure_is_a_partial_order() {
        for k in 1..=2 {
            for n in 1..=18i64 {
                for t in 1..=7usize {
                    let s = order_slice(k, n, t);
                    let m = s.len();
                    for a in 0..m {
                        assert!(s.leq_at(a, a));
                        for b in 0..m {
                            if a != b && s.leq_at(a, b) {
                                assert!(!s.leq_at(b, a), "cycle in k={k} n={n} t={t}");
                                // transitivity: down(a) is inside down(b)
                                assert!(s.down[a].is_subset(&s.down[b]));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn moves_decrease() {
        for n in 1..=14i64 {
            for t in 1..=6usize {
                let s = order_slice(1, n, t);
                for (i, d) in s.nodes().iter().enumerate() {
                    for m in s_moves(d) {
                        let j = s.position(&m).unwrap();
                        assert!(s.leq_at(j, i) && j != i);
                    }
                    // R-moves on an unmarked base raise the order
                    if d.height() == 0 {
                        let p = d.base().parts();
                        for a in 0..p.len() {
                            for b in a + 1..p.len() {
                                let mut r = p.to_vec();
                                r[a] += 1;
                                r[b] -= 1;
                                if r.windows(2).all(|w| w[0] < w[1]) {
                                    let up = DistinguishedPartition::from_positions(
                                        &r.iter().map(|&v| (v, false)).collect::<Vec<_>>(),
                                    )
                                    .unwrap();
                                    let j = s.position(&up).unwrap();
                                    assert!(s.leq_at(i, j) && i != j);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn linear_extension_respects_order() {
        let s = order_slice(1, 12, 4);
        let ext = linear_extension(s.nodes(), 1).unwrap();
        for (x, a) in ext.iter().enumerate() {
            for b in &ext[..x] {
                assert!(!(s.leq(a, b).unwrap() && a != b));
            }
        }
    }
}
