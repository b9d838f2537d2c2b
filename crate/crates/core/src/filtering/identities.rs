use serde::{Deserialize, Serialize};

use super::FilteringError;
use crate::liealg::{delta_generator, eps, AlgebraSpec, Chain, Family};
use crate::qlinalg::{q, Q};

/// One quadratic relation among `e_a ∧ delta(e_b)` or `delta(e_a) ∧ delta(e_b)`
/// at a fixed degree, with its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    #[serde(rename = "identity-id")]
    pub id: String,
    pub family: Family,
    pub k: i32,
    pub n: i64,
    pub pass: bool,
}

enum Kind {
    /// `sum_{a+b=n, a>=k} w(a, b) e_a ∧ delta(e_b)`
    Mixed(fn(i64, i64, i64) -> i64),
    /// `sum_{a+b=n; a, b>=k} w(a, b) delta(e_a) ∧ delta(e_b)` over ordered pairs
    Double(fn(i64, i64) -> i64),
}

struct Relation {
    id: &'static str,
    applies: fn(i64) -> bool,
    kind: Kind,
}

fn always(_: i64) -> bool {
    true
}

fn not_div3(n: i64) -> bool {
    n.rem_euclid(3) != 0
}

fn div3(n: i64) -> bool {
    n.rem_euclid(3) == 0
}

fn sq(x: i64) -> i64 {
    x * x
}

const WITT: &[Relation] = &[
    Relation {
        id: "witt-sum",
        applies: always,
        kind: Kind::Mixed(|_, _, _| 1),
    },
    Relation {
        id: "witt-linear",
        applies: always,
        kind: Kind::Mixed(|a, _, _| a),
    },
    Relation {
        id: "witt-cubic",
        applies: always,
        kind: Kind::Mixed(|a, b, _| a * sq(b - a)),
    },
    Relation {
        id: "witt-double",
        applies: always,
        kind: Kind::Double(|_, _| 1),
    },
    Relation {
        id: "witt-double-square",
        applies: always,
        kind: Kind::Double(|a, b| sq(b - a)),
    },
];

const LOOP: &[Relation] = &[
    Relation {
        id: "loop-sign",
        applies: always,
        kind: Kind::Mixed(|a, _, _| eps(a)),
    },
    Relation {
        id: "loop-sum",
        applies: not_div3,
        kind: Kind::Mixed(|_, _, _| 1),
    },
    Relation {
        id: "loop-sign-square",
        applies: not_div3,
        kind: Kind::Mixed(|a, b, _| eps(a) * sq(eps(b - a))),
    },
    Relation {
        id: "loop-linear",
        applies: div3,
        kind: Kind::Mixed(|a, _, n| n - 3 * a),
    },
    Relation {
        id: "loop-residue",
        applies: div3,
        kind: Kind::Mixed(|a, _, _| 2 - 3 * sq(eps(a))),
    },
    Relation {
        id: "loop-double",
        applies: always,
        kind: Kind::Double(|_, _| 1),
    },
    Relation {
        id: "loop-double-square",
        applies: always,
        kind: Kind::Double(|a, b| sq(eps(b - a))),
    },
];

fn relations(family: Family) -> &'static [Relation] {
    match family {
        Family::Witt => WITT,
        Family::Loop => LOOP,
    }
}

fn expand(spec: &AlgebraSpec, n: i64, kind: &Kind) -> Chain<Q> {
    let k = spec.k as i64;
    let mut out = Chain::zero();
    match kind {
        Kind::Mixed(w) => {
            for a in k..=n {
                let b = n - a;
                let c = w(a, b, n);
                if c == 0 {
                    continue;
                }
                let t = Chain::from_indices(&[a as i32]).wedge(&delta_generator(spec, b as i32));
                out = out.add(&t.scale(&q(c)));
            }
        }
        Kind::Double(w) => {
            for a in k..=n - k {
                let b = n - a;
                let c = w(a, b);
                if c != 0 {
                    let t = delta_generator::<Q>(spec, a as i32)
                        .wedge(&delta_generator(spec, b as i32));
                    out = out.add(&t.scale(&q(c)));
                }
            }
        }
    }
    out
}

/// Expands every relation of the family that applies at degree `n` and reports
/// whether it vanishes.
pub fn verify_identities(spec: &AlgebraSpec, n: i64) -> Result<Vec<IdentityCheck>, FilteringError> {
    spec.require_positive_k()?;
    Ok(relations(spec.family)
        .iter()
        .filter(|r| (r.applies)(n))
        .map(|r| IdentityCheck {
            id: r.id.to_string(),
            family: spec.family,
            k: spec.k,
            n,
            pass: expand(spec, n, &r.kind).is_zero(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_sum_at_six() {
        let report = verify_identities(&AlgebraSpec::witt(1), 6).unwrap();
        assert_eq!(report.len(), 5);
        assert!(report.iter().all(|r| r.pass), "{report:?}");
    }

    #[test]
    fn loop_sign_square_at_seven() {
        let report = verify_identities(&AlgebraSpec::looped(1), 7).unwrap();
        let ids: Vec<&str> = report.iter().map(|r| r.id.as_str()).collect();
        assert!(ids.contains(&"loop-sign-square"));
        assert!(!ids.contains(&"loop-linear"));
        assert!(report.iter().all(|r| r.pass), "{report:?}");
    }

    #[test]
    fn residue_dependent_relations() {
        let report = verify_identities(&AlgebraSpec::looped(2), 9).unwrap();
        let ids: Vec<&str> = report.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "loop-sign",
                "loop-linear",
                "loop-residue",
                "loop-double",
                "loop-double-square"
            ]
        );
    }

    #[test]
    fn all_relations_up_to_twenty() {
        for k in 1..=3 {
            for spec in [AlgebraSpec::witt(k), AlgebraSpec::looped(k)] {
                for n in 0..=20 {
                    for r in verify_identities(&spec, n).unwrap() {
                        assert!(r.pass, "{r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn relations_are_not_vacuous() {
        // an unweighted sum that is not a relation must fail somewhere
        let spec = AlgebraSpec::witt(1);
        let bad = Kind::Mixed(|a, _, _| a * a);
        assert!((8..=14).any(|n| !expand(&spec, n, &bad).is_zero()));
    }

    #[test]
    fn unordered_double_sum_misses_the_diagonal() {
        let spec = AlgebraSpec::witt(1);
        let d5 = delta_generator::<Q>(&spec, 5);
        let diag = d5.wedge(&d5);
        assert!(!diag.is_zero());
        let mut lower = Chain::zero();
        for a in 1..5 {
            lower =
                lower.add(&delta_generator::<Q>(&spec, a).wedge(&delta_generator(&spec, 10 - a)));
        }
        assert!(!lower.is_zero());
        assert!(!lower.add(&diag).is_zero());
        assert!(lower.scale(&q(2)).add(&diag).is_zero());
    }

    #[test]
    fn report_json_shape() {
        let r = &verify_identities(&AlgebraSpec::witt(1), 6).unwrap()[0];
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["identity-id"], "witt-sum");
        assert_eq!(v["family"], "witt");
        assert_eq!(v["pass"], true);
    }
}
