//! Frobenius arm/leg coordinates and the bijection between strict partitions
//! and nonsingular distinguished 1-partitions.

use serde::{Deserialize, Serialize};

use super::{DistinguishedPartition, Partition, PartitionError, StrictPartition};

/// Arms and legs of the diagonal cells, listed from the bottom diagonal cell up.
/// An arm counts the cell itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusForm {
    pub arms: Vec<i32>,
    pub legs: Vec<i32>,
}

impl FrobeniusForm {
    /// Rebuilds the partition, checking the coordinates describe one.
    pub fn to_partition(&self) -> Result<Partition, PartitionError> {
        let l = self.arms.len();
        if l != self.legs.len() {
            return Err(PartitionError::Frobenius("arm/leg length mismatch".into()));
        }
        if self.arms.first().is_some_and(|&x| x < 1)
            || self.legs.first().is_some_and(|&y| y < 0)
            || self.arms.windows(2).any(|w| w[0] >= w[1])
            || self.legs.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(PartitionError::Frobenius(format!(
                "arms {:?} and legs {:?} must increase",
                self.arms, self.legs
            )));
        }
        // rows from the top: diagonal row r (1-based) uses the r-th largest arm
        let mut rows: Vec<i32> = (1..=l as i32)
            .map(|r| self.arms[l - r as usize] + r - 1)
            .collect();
        let col_len = |c: i32| self.legs[l - c as usize] + c;
        let depth = (1..=l as i32).map(col_len).max().unwrap_or(0);
        for r in l as i32 + 1..=depth {
            rows.push((1..=l as i32).filter(|&c| col_len(c) >= r).count() as i32);
        }
        rows.reverse();
        let p = Partition::new(rows).map_err(|e| PartitionError::Frobenius(e.to_string()))?;
        if frobenius_any(&p) != *self {
            return Err(PartitionError::Frobenius(format!(
                "arms {:?} and legs {:?} do not describe a diagram",
                self.arms, self.legs
            )));
        }
        Ok(p)
    }

    /// The four conditions characterizing strict partitions.
    pub fn strict_conditions(&self) -> Result<(), String> {
        let (x, y) = (&self.arms, &self.legs);
        if x.is_empty() {
            return Ok(());
        }
        if x.windows(2).any(|w| w[1] - w[0] < 2) {
            return Err(format!("arm gaps below 2 in {x:?}"));
        }
        if y.windows(2).any(|w| !(1..=2).contains(&(w[1] - w[0]))) {
            return Err(format!("leg gaps outside 1..=2 in {y:?}"));
        }
        if !(0..=1).contains(&y[0]) {
            return Err(format!("first leg {} not in 0..=1", y[0]));
        }
        if x[0] == 1 && y[0] != 0 {
            return Err("first arm 1 with nonzero first leg".into());
        }
        Ok(())
    }
}

fn frobenius_any(p: &Partition) -> FrobeniusForm {
    let rows: Vec<i32> = p.parts().iter().rev().copied().collect();
    let cols = |c: i32| rows.iter().filter(|&&r| r >= c).count() as i32;
    let d = rows
        .iter()
        .enumerate()
        .take_while(|(i, &r)| r > *i as i32)
        .count();
    let mut arms = Vec::with_capacity(d);
    let mut legs = Vec::with_capacity(d);
    for i in (1..=d as i32).rev() {
        arms.push(rows[i as usize - 1] - i + 1);
        legs.push(cols(i) - i);
    }
    FrobeniusForm { arms, legs }
}

pub fn frobenius(i: &StrictPartition) -> Result<FrobeniusForm, PartitionError> {
    if i.is_empty() {
        return Err(PartitionError::Empty);
    }
    if i.min_part() == Some(0) {
        return Err(PartitionError::BelowK(i.to_string(), 1));
    }
    Ok(frobenius_any(i))
}

/// Strict 1-partition to nonsingular distinguished 1-partition of equal degree.
/// Dimension `q + h` maps to reduced dimension `q` and height `h`.
pub fn phi(i: &StrictPartition) -> Result<DistinguishedPartition, PartitionError> {
    let f = frobenius(i)?;
    let mut pos = Vec::with_capacity(f.arms.len());
    let mut prev = -1;
    for (x, y) in f.arms.iter().zip(&f.legs) {
        pos.push((x + y, y - prev == 2));
        prev = *y;
    }
    DistinguishedPartition::from_positions(&pos)
}

pub fn psi(d: &DistinguishedPartition) -> Result<StrictPartition, PartitionError> {
    if !d.is_nonsingular(1) {
        return Err(PartitionError::Singular(d.to_string(), 1));
    }
    let mut arms = Vec::new();
    let mut legs = Vec::new();
    let mut y = -1;
    for (v, marked) in d.positions() {
        y += if marked { 2 } else { 1 };
        legs.push(y);
        arms.push(v - y);
    }
    let f = FrobeniusForm { arms, legs };
    f.strict_conditions().map_err(PartitionError::Frobenius)?;
    StrictPartition::try_from(f.to_partition()?)
}

#[cfg(test)]
mod tests {
    use super::super::{nonsingular_distinguished, strict_partitions};
    use super::*;

    fn sp(v: &[i32]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_frobenius_form() {
        let f = frobenius(&sp(&[1, 2, 4, 5, 6, 8, 9])).unwrap();
        assert_eq!(f.arms, vec![2, 4, 7, 9]);
        assert_eq!(f.legs, vec![1, 2, 4, 6]);
        let one = frobenius(&sp(&[1])).unwrap();
        assert_eq!((one.arms, one.legs), (vec![1], vec![0]));
        assert_eq!(frobenius(&sp(&[])), Err(PartitionError::Empty));
    }

    #[test]
    fn worked_phi() {
        let d = phi(&sp(&[1, 2, 4, 5, 6, 8, 9])).unwrap();
        assert_eq!(d.to_string(), "(3_,6,11_,15_)");
        assert_eq!(psi(&d).unwrap(), sp(&[1, 2, 4, 5, 6, 8, 9]));
        assert_eq!(phi(&sp(&[1])).unwrap().to_string(), "(1)");
    }

    #[test]
    fn round_trips() {
        for n in 1..=30 {
            let strict = strict_partitions(1, n, None);
            let mut images = Vec::new();
            for i in &strict {
                let s = StrictPartition::try_from(i.clone()).unwrap();
                let f = frobenius(&s).unwrap();
                assert_eq!(f.to_partition().unwrap(), *i);
                f.strict_conditions().unwrap();
                let d = phi(&s).unwrap();
                assert!(d.is_nonsingular(1), "{i} -> {d}");
                assert_eq!(d.dim(), i.dim());
                assert_eq!(psi(&d).unwrap(), s);
                images.push(d);
            }
            images.sort();
            let mut all = nonsingular_distinguished(1, n, None);
            all.sort();
            assert_eq!(images, all, "n={n}");
        }
    }

    #[test]
    fn psi_rejects_singular() {
        let d: DistinguishedPartition = "(1,2)".parse().unwrap();
        assert!(psi(&d).is_err());
    }
}
