use fhl_core::cohomology::{
    betti, classes_independent, cocycle_for_main, homology_dims, is_coboundary, product_check,
    product_is_coboundary,
};
use fhl_core::liealg::{d, delta, delta_matrix, graded_basis, max_dim, AlgebraSpec, Basis, Chain};
use fhl_core::partitions::{is_main, main_partitions, Partition};
use fhl_core::qlinalg::{q, Q};

fn specs(k: i32) -> [AlgebraSpec; 2] {
    [AlgebraSpec::witt(k), AlgebraSpec::looped(k)]
}

#[test]
fn betti_numbers_count_main_partitions() {
    for k in 1..=3 {
        for spec in specs(k) {
            for n in 0..=20 {
                for q in 0..=max_dim(&spec, n) {
                    let mains = main_partitions(k, n, Some(q)).len();
                    assert_eq!(betti(&spec, n, q), mains, "{spec} n={n} q={q}");
                }
            }
        }
    }
}

#[test]
fn coboundary_side_gives_the_same_dimensions() {
    for spec in [
        AlgebraSpec::witt(1),
        AlgebraSpec::looped(2),
        AlgebraSpec::witt(-1),
    ] {
        for n in 0..=12 {
            let bases: Vec<Basis> = (0..=max_dim(&spec, n) + 1)
                .map(|q| Basis::new(graded_basis(&spec, n, q)))
                .collect();
            let rank_delta = |q: usize| -> usize {
                if bases[q].is_empty() || bases[q + 1].is_empty() {
                    0
                } else {
                    delta_matrix::<Q>(&spec, &bases[q], &bases[q + 1]).rank()
                }
            };
            for q in 0..=max_dim(&spec, n) {
                let incoming = if q == 0 { 0 } else { rank_delta(q - 1) };
                let dim = bases[q].len() - incoming - rank_delta(q);
                assert_eq!(dim, betti(&spec, n, q), "{spec} n={n} q={q}");
            }
        }
    }
}

#[test]
fn lowest_algebra_has_one_class_in_degree_zero() {
    let spec = AlgebraSpec::witt(-1);
    let r = homology_dims(&spec, 0);
    assert_eq!(r.dim_h(3), 1);
    assert_eq!(r.dim_h(0), 1);
    assert_eq!(r.dim_h(1) + r.dim_h(2), 0);
    let top: Chain<Q> = Chain::from_indices(&[-1, 0, 1]);
    assert!(d(&spec, &top).is_zero());
    assert_eq!(graded_basis(&spec, 0, 3).len(), 1);
    assert_eq!(r.row(3).unwrap().rank_d, 0);
    for n in 1..=10 {
        let r = homology_dims(&spec, n);
        assert!(r.rows.iter().all(|row| row.dim_h == 0), "n={n}");
    }
}

#[test]
fn non_negative_algebra_has_only_the_zero_generator() {
    let spec = AlgebraSpec::witt(0);
    let r = homology_dims(&spec, 0);
    assert_eq!(r.dim_h(0), 1);
    assert_eq!(r.dim_h(1), 1);
    assert_eq!(graded_basis(&spec, 0, 1)[0].indices(), &[0]);
    for n in 1..=12 {
        assert!(homology_dims(&spec, n)
            .rows
            .iter()
            .all(|row| row.dim_h == 0));
    }
}

#[test]
fn cocycles_span_cohomology() {
    for k in 1..=2 {
        for spec in specs(k) {
            for n in 1..=18 {
                for q in 1..=max_dim(&spec, n) {
                    let mains = main_partitions(k, n, Some(q));
                    let cs: Vec<Chain<Q>> = mains
                        .iter()
                        .map(|i| cocycle_for_main(&spec, i).unwrap())
                        .collect();
                    for c in &cs {
                        assert!(delta(&spec, c).is_zero());
                    }
                    assert!(
                        classes_independent(&spec, n, q, &cs).unwrap(),
                        "{spec} n={n} q={q}"
                    );
                    assert_eq!(cs.len(), betti(&spec, n, q));
                }
            }
        }
    }
}

#[test]
fn products_vanish_for_levels_one_and_two() {
    assert!(product_check(&AlgebraSpec::witt(1), 20).unwrap());
    assert!(product_check(&AlgebraSpec::looped(1), 18).unwrap());
    assert!(product_check(&AlgebraSpec::looped(2), 16).unwrap());
}

#[test]
fn witt_level_two_has_surviving_products() {
    // delta(e7) = 3 e2^e5 + e3^e4 is the only coboundary of that slice, so
    // [e3][e4] = -3 [e2^e5] is nonzero
    let spec = AlgebraSpec::witt(2);
    let p = |v: &[i32]| Partition::new(v.to_vec()).unwrap();
    assert!(!product_is_coboundary(&spec, &p(&[3]), &p(&[4])).unwrap());
    assert!(!product_is_coboundary(&spec, &p(&[4]), &p(&[4, 7])).unwrap());
    assert!(product_is_coboundary(&spec, &p(&[2]), &p(&[3])).unwrap());
    assert!(!product_check(&spec, 16).unwrap());
    let d7: Chain<Q> = delta(&spec, &Chain::from_indices(&[7]));
    assert_eq!(
        d7,
        Chain::from_indices(&[2, 5])
            .scale(&q(3))
            .add(&Chain::from_indices(&[3, 4]))
    );
}

#[test]
fn composable_products_survive_at_level_three() {
    let mut checked = 0;
    for spec in specs(3) {
        for n1 in 3..=6 {
            for n2 in 3..=15 {
                for a in main_partitions(3, n1, Some(1)) {
                    for b in main_partitions(3, n2, None) {
                        let Ok(u) = Partition::from_unsorted([a.parts(), b.parts()].concat())
                        else {
                            continue;
                        };
                        if !u.is_strict() || !is_main(&u, 3) {
                            continue;
                        }
                        assert!(!product_is_coboundary(&spec, &a, &b).unwrap(), "{a} {b}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked >= 6, "{checked}");
}

#[test]
fn coboundaries_are_detected() {
    let spec = AlgebraSpec::witt(1);
    let c: Chain<Q> = delta(&spec, &Chain::from_indices(&[5]));
    assert!(!c.is_zero());
    assert!(is_coboundary(&spec, &c).unwrap());
    assert!(!is_coboundary(&spec, &Chain::from_indices(&[2])).unwrap());
    assert!(is_coboundary(&spec, &Chain::from_indices(&[3]).scale(&q(0))).unwrap());
}
