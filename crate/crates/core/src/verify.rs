//! Named property suites run over a range of degrees, with a
//! machine-readable list of failures.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::filtering::{basis_change, verify_identities};
use crate::laplacian::{gamma0_expected, level_one_expected, spectrum, trace_identity_holds};
use crate::liealg::{max_dim, AlgebraSpec, Family};
use crate::partitions::{
    count_p, count_r, main_partitions, nonsingular_distinguished, verify_series_identity,
    SeriesIdentity,
};
use crate::stablecycles::{explicit_cycles_check, triple_agreement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Sylvester,
    BasisCounts,
    Spectrum,
    Stable,
    Trace,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "identities",
        "sylvester",
        "basis-counts",
        "spectrum",
        "stable",
        "trace",
        "all",
    ];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Identities,
                Suite::Sylvester,
                Suite::BasisCounts,
                Suite::Spectrum,
                Suite::Stable,
                Suite::Trace,
            ],
            s => vec![s],
        }
    }

    fn default_levels(self) -> Vec<i32> {
        match self {
            Suite::Spectrum => vec![0, 1],
            Suite::Stable => vec![1, 2],
            _ => vec![1, 2, 3],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Suite::parts(Suite::All)
            .iter()
            .position(|s| s == self)
            .unwrap_or(6);
        f.write_str(Suite::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "identities" => Suite::Identities,
            "sylvester" => Suite::Sylvester,
            "basis-counts" => Suite::BasisCounts,
            "spectrum" => Suite::Spectrum,
            "stable" => Suite::Stable,
            "trace" => Suite::Trace,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

/// Bounds for a verification run. Empty `families` or `levels` mean the
/// suite's defaults.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub families: Vec<Family>,
    pub levels: Vec<i32>,
    pub max_degree: i64,
    pub trunc: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            families: Vec::new(),
            levels: Vec::new(),
            max_degree: 12,
            trunc: 60,
        }
    }
}

impl VerifyConfig {
    fn families(&self) -> Vec<Family> {
        if self.families.is_empty() {
            vec![Family::Witt, Family::Loop]
        } else {
            self.families.clone()
        }
    }

    fn levels(&self, suite: Suite) -> Vec<i32> {
        if self.levels.is_empty() {
            suite.default_levels()
        } else {
            self.levels.clone()
        }
    }

    fn specs(&self, suite: Suite, min_k: i32) -> Vec<AlgebraSpec> {
        let mut out = Vec::new();
        for family in self.families() {
            for &k in &self.levels(suite) {
                if k >= min_k {
                    out.push(AlgebraSpec { family, k });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

struct Tally {
    suite: Suite,
    checks: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn record(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                suite: self.suite,
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    fn absorb(&mut self, results: Vec<(bool, String)>, check: &str) {
        for (ok, detail) in results {
            self.record(ok, check, || detail);
        }
    }
}

/// Runs `f` over the grid in parallel and returns results in grid order.
fn grid<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

fn with_degrees(specs: &[AlgebraSpec], max_degree: i64) -> Vec<(AlgebraSpec, i64)> {
    specs
        .iter()
        .flat_map(|s| (0..=max_degree).map(move |n| (*s, n)))
        .collect()
}

fn identities(cfg: &VerifyConfig, t: &mut Tally) {
    let items = with_degrees(&cfg.specs(Suite::Identities, 1), cfg.max_degree);
    let results = grid(&items, |(spec, n)| match verify_identities(spec, *n) {
        Ok(checks) => checks
            .into_iter()
            .map(|c| (c.pass, format!("{spec} n={n} {}", c.id)))
            .collect(),
        Err(e) => vec![(false, format!("{spec} n={n}: {e}"))],
    });
    for r in results {
        t.absorb(r, "identity");
    }
}

fn sylvester(cfg: &VerifyConfig, t: &mut Tally) {
    for &k in &cfg.levels(Suite::Sylvester) {
        for which in [
            SeriesIdentity::Sylvester,
            SeriesIdentity::AlphaWeighted,
            SeriesIdentity::DistinguishedProduct,
        ] {
            let ok = verify_series_identity(which, k, cfg.trunc);
            t.record(ok, "series", || {
                format!("{which:?} k={k} trunc={}", cfg.trunc)
            });
        }
        for n in 0..=cfg.trunc as i64 {
            let strict: usize = (0..=n as usize).map(|q| count_p(k, q, n)).sum();
            let weighted: usize = (0..=n as usize)
                .flat_map(|q| (0..=q).map(move |a| count_r(k, q, n, a) << a))
                .sum();
            t.record(strict == weighted, "strict-count", || {
                format!("k={k} n={n}: {strict} strict, {weighted} weighted")
            });
        }
    }
}

fn basis_counts(cfg: &VerifyConfig, t: &mut Tally) {
    let items = with_degrees(&cfg.specs(Suite::BasisCounts, 1), cfg.max_degree);
    let results = grid(&items, |(spec, n)| {
        (0..=max_dim(spec, *n))
            .map(|dim| {
                let want = nonsingular_distinguished(spec.k, *n, Some(dim)).len();
                match basis_change(spec, *n, dim) {
                    Ok(bc) => (
                        bc.len() == want
                            && bc.monomials.len() == want
                            && bc.passage_is_triangular(),
                        format!(
                            "{spec} n={n} dim={dim}: {} shapes, {want} expected",
                            bc.len()
                        ),
                    ),
                    Err(e) => (false, format!("{spec} n={n} dim={dim}: {e}")),
                }
            })
            .collect::<Vec<_>>()
    });
    for r in results {
        t.absorb(r, "basis-change");
    }
}

fn spectra(cfg: &VerifyConfig, t: &mut Tally) {
    let levels = cfg.levels(Suite::Spectrum);
    let mut items = Vec::new();
    for &k in levels.iter().filter(|&&k| k == 0 || k == 1) {
        for n in 0..=cfg.max_degree {
            items.push((k, n));
        }
    }
    let results = grid(&items, |&(k, n)| {
        let spec = AlgebraSpec::witt(k);
        match spectrum(&spec, n) {
            Ok(r) => {
                let (want, harmonic) = if k == 1 {
                    (
                        level_one_expected(n),
                        main_partitions(1, n, None)
                            .iter()
                            .filter(|i| !i.is_empty())
                            .count(),
                    )
                } else {
                    (gamma0_expected(n), usize::from(n == 0))
                };
                let ok = r.as_map() == want && r.harmonic_dim == harmonic;
                (ok, format!("{spec} n={n}"))
            }
            Err(e) => (false, format!("{spec} n={n}: {e}")),
        }
    });
    t.absorb(results, "spectrum");
}

fn stable(cfg: &VerifyConfig, t: &mut Tally) {
    let items = with_degrees(&cfg.specs(Suite::Stable, 1), cfg.max_degree);
    let results = grid(&items, |(spec, n)| {
        let mut out = Vec::new();
        for dim in 0..=4 {
            let ok = triple_agreement(spec, *n, dim).map(|r| r.agree);
            out.push((
                ok.as_ref().is_ok_and(|&b| b),
                format!("triple agreement {spec} n={n} dim={dim} {ok:?}"),
            ));
            if dim >= 1 {
                let ok = explicit_cycles_check(spec, *n, dim).map(|r| r.passed());
                out.push((
                    ok.as_ref().is_ok_and(|&b| b),
                    format!("explicit cycles {spec} n={n} dim={dim} {ok:?}"),
                ));
            }
        }
        out
    });
    for r in results {
        t.absorb(r, "stable");
    }
}

fn trace(cfg: &VerifyConfig, t: &mut Tally) {
    let items: Vec<i64> = (0..=cfg.max_degree).collect();
    let results = grid(&items, |&n| (trace_identity_holds(n), format!("n={n}")));
    t.absorb(results, "trace");
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let mut checks = 0;
    let mut failures = Vec::new();
    for part in suite.parts() {
        let mut t = Tally {
            suite: part,
            checks: 0,
            failures: Vec::new(),
        };
        match part {
            Suite::Identities => identities(cfg, &mut t),
            Suite::Sylvester => sylvester(cfg, &mut t),
            Suite::BasisCounts => basis_counts(cfg, &mut t),
            Suite::Spectrum => spectra(cfg, &mut t),
            Suite::Stable => stable(cfg, &mut t),
            Suite::Trace => trace(cfg, &mut t),
            Suite::All => unreachable!("expanded above"),
        }
        checks += t.checks;
        failures.extend(t.failures);
    }
    VerifyReport {
        suite,
        passed: failures.is_empty(),
        checks,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = VerifyConfig {
            max_degree: 8,
            trunc: 20,
            ..Default::default()
        };
        for suite in [
            Suite::Identities,
            Suite::Sylvester,
            Suite::Trace,
            Suite::Spectrum,
        ] {
            let r = run_suite(suite, &cfg);
            assert!(r.passed, "{r:?}");
            assert!(r.checks > 0);
        }
    }
}
