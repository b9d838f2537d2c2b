use fhl_core::filtering::basis_change;
use fhl_core::liealg::{d, graded_basis, inner, AlgebraSpec, Chain, Family};
use fhl_core::partitions::{
    main_partitions, order_cmp, DistinguishedPartition, OrderVerdict, Partition, StrictPartition,
};
use fhl_core::qlinalg::{q, Q};
use fhl_core::stablecycles::{
    chain_to_poly, d_poly, explicit_cycle, explicit_cycles_check, odd_delta_product_check,
    poly_to_chain, schur, schur_product, stab_laplacian_report, stab_pos_decomposition,
    triple_agreement, AntisymPoly, Poly,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn specs(k: i32) -> [AlgebraSpec; 2] {
    [AlgebraSpec::witt(k), AlgebraSpec::looped(k)]
}

#[test]
fn three_descriptions_of_stab_agree() {
    for k in 1..=2 {
        for spec in specs(k) {
            for n in 0..=20 {
                for dim in 0..=4 {
                    let t = triple_agreement(&spec, n, dim).unwrap();
                    assert!(t.agree, "{t:?}");
                }
            }
        }
    }
}

#[test]
fn explicit_cycles_represent_homology() {
    let mut total = 0;
    for k in 1..=2 {
        for spec in specs(k) {
            for n in 0..=18 {
                for dim in 1..=4 {
                    let c = explicit_cycles_check(&spec, n, dim).unwrap();
                    assert!(c.passed(), "{c:?}");
                    total += c.count;
                }
            }
        }
    }
    assert!(total >= 30, "only {total} main partitions");
}

#[test]
fn polynomial_boundary_matches_chains() {
    for spec in [AlgebraSpec::witt(0), AlgebraSpec::looped(0)] {
        for n in 0..=16 {
            for dim in 1..=5 {
                let basis = graded_basis(&spec, n, dim);
                for (j, m) in basis.iter().enumerate() {
                    let mut c = Chain::<Q>::monomial(m.clone());
                    if let Some(next) = basis.get(j + 1) {
                        c = c.add(&Chain::monomial(next.clone()).scale(&q(-2)));
                    }
                    let f = chain_to_poly(&c).unwrap();
                    assert_eq!(poly_to_chain(&d_poly(spec.family, &f)), d(&spec, &c));
                }
            }
        }
    }
}

#[test]
fn explicit_to_dual_passage_is_unitriangular() {
    for k in 1..=2 {
        for spec in specs(k) {
            for n in 1..=16 {
                for dim in 1..=4 {
                    let bc = basis_change(&spec, n, dim).unwrap();
                    let duals: Vec<(Partition, Chain<Q>)> = bc
                        .shapes
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| s.height() == 0)
                        .map(|(s, shape)| {
                            (shape.base().clone(), bc.monomials.chain(&bc.xi.column(s)))
                        })
                        .collect();
                    let mains = main_partitions(k, n, Some(dim));
                    for i in &mains {
                        let e = explicit_cycle(i, spec.family, k).unwrap();
                        let lead = DistinguishedPartition::unmarked(i.clone()).unwrap();
                        for (j, xi) in &duals {
                            let c = inner(&e, xi);
                            if j == i {
                                assert!(c.is_one(), "{spec} {i}");
                            } else if !c.is_zero() {
                                assert!(c.denom().is_one());
                                assert!(mains.contains(j), "{spec} {i} -> {j}");
                                let above = DistinguishedPartition::unmarked(j.clone()).unwrap();
                                assert_eq!(
                                    order_cmp(&above, &lead, k).unwrap(),
                                    OrderVerdict::Greater
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn stab_is_laplacian_invariant() {
    let spec = AlgebraSpec::witt(1);
    let mut verified = 0;
    for n in 1..=18 {
        let r = stab_laplacian_report(&spec, n).unwrap();
        assert!(r.passed(), "{r:?}");
        verified += r.eigen_verified;
    }
    assert!(verified > 50);
}

#[test]
fn stab_dimension_counts_nonsingular_partitions() {
    for spec in specs(1) {
        for n in 0..=16 {
            for dim in 0..=4 {
                let r = stab_pos_decomposition(&spec, n, dim).unwrap();
                let want = fhl_core::partitions::nonsingular_partitions(1, n, Some(dim)).len();
                assert_eq!(r.dim_stab(), want);
                assert_eq!(r.dim_stab() + r.dim_pos, r.dim_c);
            }
        }
    }
}

fn strict(max_part: u32, len: usize) -> impl Strategy<Value = StrictPartition> {
    proptest::sample::subsequence((0..=max_part as i32).collect::<Vec<_>>(), len)
        .prop_map(|v| StrictPartition::new(v).unwrap())
}

fn partition(max_part: i32, max_len: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1..=max_part, 0..=max_len)
        .prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn padded(i: &Partition, q: usize) -> Vec<i32> {
    let mut v = vec![0; q - i.dim()];
    v.extend_from_slice(i.parts());
    v
}

/// `J ⊵ I`: ascending partial sums of `J` bound those of `I` from above.
fn dominates(j: &[i32], i: &[i32]) -> bool {
    let (mut a, mut b) = (0, 0);
    j.iter().zip(i).all(|(x, y)| {
        a += x;
        b += y;
        a >= b
    })
}

fn substitute_without(f: &AntisymPoly, p: usize, nvars: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    for (e, c) in f.to_expanded().terms() {
        let mut full = e.clone();
        full.insert(p, 0);
        out.add_term(full, c.clone());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_round_trip(n in 0i64..=15, dim in 1usize..=4, coeffs in proptest::collection::vec(-5i64..=5, 40)) {
        let basis = graded_basis(&AlgebraSpec::witt(0), n, dim);
        let c = Chain::from_terms(basis.into_iter().zip(coeffs).map(|(m, v)| (m, q(v))));
        prop_assert_eq!(poly_to_chain(&chain_to_poly(&c).unwrap()), c);
    }

    #[test]
    fn schur_products_are_positive_and_dominant(
        (qv, a, b) in (1usize..=4).prop_flat_map(|qv| (Just(qv), partition(4, qv), partition(4, qv)))
    ) {
        prop_assume!(a.degree() + b.degree() <= 12);
        let prod = schur_product(&schur(&a, qv).unwrap(), &schur(&b, qv).unwrap()).unwrap();
        let sum: Vec<i32> = padded(&a, qv).iter().zip(padded(&b, qv)).map(|(x, y)| x + y).collect();
        let top = Partition::new(sum.iter().copied().filter(|&x| x > 0).collect()).unwrap();
        prop_assert!(prod.coeff(&top).is_one());
        for (j, c) in prod.coeffs() {
            prop_assert!(c.denom().is_one() && *c > Q::zero());
            prop_assert!(dominates(&padded(j, qv), &sum));
        }
    }

    #[test]
    fn odd_triple_products(
        (a, b, c) in (1usize..=3).prop_flat_map(|qv| (strict(4, qv), strict(4, qv), strict(4, qv)))
    ) {
        prop_assume!(a.degree() + b.degree() + c.degree() <= 12);
        prop_assert!(odd_delta_product_check(&[a, b, c]).unwrap());
    }

    #[test]
    fn wedge_with_a_power(m in 0u32..=6, f in (0usize..=3).prop_flat_map(|s| strict(7, s))) {
        let s = f.dim();
        let lhs = AntisymPoly::delta(StrictPartition::new(vec![m as i32]).unwrap())
            .wedge(&AntisymPoly::delta(f.clone()));
        let fp = AntisymPoly::delta(f);
        let mut rhs = Poly::zero(s + 1);
        for p in 0..=s {
            let mut tp = vec![0; s + 1];
            tp[p] = m;
            let term = Poly::monomial(tp, Q::one()).mul(&substitute_without(&fp, p, s + 1));
            rhs = if p % 2 == 0 { rhs.add(&term) } else { rhs.sub(&term) };
        }
        prop_assert_eq!(lhs.to_expanded(), rhs);
    }
}

#[test]
fn loop_cycle_is_a_single_monomial_at_degree_five() {
    let c = explicit_cycle(&Partition::new(vec![1, 4]).unwrap(), Family::Loop, 1).unwrap();
    assert_eq!(c, Chain::from_indices(&[1, 4]));
}
