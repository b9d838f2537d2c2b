//! The shift bijection from nonsingular distinguished `k`-partitions to
//! nonsingular distinguished `(k-1)`-partitions.

use super::{normal_form, DistinguishedPartition, Partition, PartitionError};

/// Lowers unmarked parts by 1 and marked parts by 2, then marks the leading
/// part of every dense block that holds the image of a marked part.
pub fn lambda_map(
    d: &DistinguishedPartition,
    k: i32,
) -> Result<DistinguishedPartition, PartitionError> {
    if k <= 1 {
        return Err(PartitionError::KTooSmall { k, min: 1 });
    }
    d.check_k(k)?;
    if !d.is_nonsingular(k) {
        return Err(PartitionError::Singular(d.to_string(), k));
    }
    let pos: Vec<(i32, bool)> = d
        .positions()
        .into_iter()
        .map(|(v, m)| (v - if m { 2 } else { 1 }, m))
        .collect();
    let base = Partition::new(pos.iter().map(|p| p.0).collect())?;
    let nf = normal_form(&base, k - 1)?;
    let mut marked = Vec::new();
    for block in &nf.dense_blocks {
        if pos.iter().any(|&(v, m)| m && block.parts().contains(&v)) {
            marked.push(block.parts()[0]);
        }
    }
    if marked.len() != d.height() {
        return Err(PartitionError::NoPreimage(d.to_string()));
    }
    DistinguishedPartition::new(base, Partition::new(marked)?)
}

/// The unique `k`-preimage of a nonsingular distinguished `(k-1)`-partition.
pub fn lambda_inverse(
    d: &DistinguishedPartition,
    k: i32,
) -> Result<DistinguishedPartition, PartitionError> {
    if k <= 1 {
        return Err(PartitionError::KTooSmall { k, min: 1 });
    }
    let parts = d.base().parts().to_vec();
    let h = d.height();
    let mut found = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    search(&parts, h, k, &mut cur, &mut found);
    let found: Vec<DistinguishedPartition> = found
        .into_iter()
        .filter(|c| lambda_map(c, k).ok().as_ref() == Some(d))
        .collect();
    match found.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(PartitionError::NoPreimage(d.to_string())),
    }
}

/// Depth-first choice of a shift (+1 or +2) per part, keeping the candidate
/// nonsingular over `k` and using exactly `h` marks.
fn search(
    target: &[i32],
    h: usize,
    k: i32,
    cur: &mut Vec<(i32, bool)>,
    out: &mut Vec<DistinguishedPartition>,
) {
    let a = cur.len();
    if a == target.len() {
        if cur.iter().filter(|p| p.1).count() == h {
            if let Ok(c) = DistinguishedPartition::from_positions(cur) {
                if c.is_nonsingular(k) {
                    out.push(c);
                }
            }
        }
        return;
    }
    let used = cur.iter().filter(|p| p.1).count();
    for marked in [false, true] {
        if marked && used == h {
            continue;
        }
        let v = target[a] + if marked { 2 } else { 1 };
        let ok = match cur.last() {
            Some(&(prev, _)) => v - prev >= 3,
            None => v >= k,
        };
        if ok {
            cur.push((v, marked));
            search(target, h, k, cur, out);
            cur.pop();
        }
    }
}
