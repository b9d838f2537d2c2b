use crate::partitions::{alpha, nonsingular_partitions, strict_partitions, Partition};

fn c3(i: i64) -> i64 {
    i * (i - 1) * (i - 2) / 6
}

fn pair_products(p: &[i64]) -> i64 {
    let s: i64 = p.iter().sum();
    let sq: i64 = p.iter().map(|x| x * x).sum();
    (s * s - sq) / 2
}

fn parts(i: &Partition) -> Vec<i64> {
    i.parts().iter().map(|&x| x as i64).collect()
}

/// `sum C(i, 3) - sum_{a<b} i_a i_b`.
pub fn energy(i: &Partition) -> i64 {
    let p = parts(i);
    p.iter().map(|&x| c3(x)).sum::<i64>() - pair_products(&p)
}

/// `sum C(i + 2, 3) + sum_{a<b} i_a i_b`.
pub fn energy0(i: &Partition) -> i64 {
    let p = parts(i);
    p.iter().map(|&x| c3(x + 2)).sum::<i64>() + pair_products(&p)
}

/// Diagonal entry of the level-one Laplacian at `e_I` in the monomial basis.
pub fn f_diagonal(i: &Partition) -> i64 {
    let p = parts(i);
    let q = p.len() as i64;
    let weighted: i64 = p
        .iter()
        .enumerate()
        .map(|(a, &x)| (q - 1 - a as i64) * x * x)
        .sum();
    p.iter().map(|&x| c3(x)).sum::<i64>() + 2 * pair_products(&p) - 3 * weighted
}

/// [`energy`] rewritten through the tail sums `S_m = i_m + ... + i_q`.
pub fn energy_by_partial_sums(i: &Partition) -> i64 {
    let p = parts(i);
    if p.is_empty() {
        return 0;
    }
    let tail = |m: usize| p[m..].iter().sum::<i64>();
    let mut six = tail(0) * (p[0] - 1) * (p[0] - 2);
    for a in 0..p.len() - 1 {
        six += tail(a + 1) * (p[a] + p[a + 1]) * (p[a + 1] - p[a] - 3);
    }
    debug_assert_eq!(six % 6, 0);
    six / 6
}

/// Coefficients in `t` of the monomial-basis trace `sum F(I) t^{dim I}` and of
/// the closed-form trace `sum E(J) t^{dim J} (1 + t)^{alpha(J)}` over degree `n`.
pub fn trace_sides(n: i64) -> (Vec<i64>, Vec<i64>) {
    let mut lhs: Vec<i64> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    let bump = |v: &mut Vec<i64>, at: usize, c: i64| {
        if v.len() <= at {
            v.resize(at + 1, 0);
        }
        v[at] += c;
    };
    for i in strict_partitions(1, n, None) {
        bump(&mut lhs, i.dim(), f_diagonal(&i));
    }
    for j in nonsingular_partitions(1, n, None) {
        let e = energy(&j);
        let a = alpha(&j, 1).expect("nonsingular") as i64;
        let mut binom = 1i64;
        for s in 0..=a {
            bump(&mut rhs, j.dim() + s as usize, e * binom);
            binom = binom * (a - s) / (s + 1);
        }
    }
    let trim = |v: &mut Vec<i64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut lhs);
    trim(&mut rhs);
    (lhs, rhs)
}

pub fn trace_identity_holds(n: i64) -> bool {
    let (a, b) = trace_sides(n);
    a == b
}
