//! Identity-certification engine.
//!
//! Every identity in the registry declares its parameter ranges, a
//! conservative upper bound on its degree in q after clearing denominators,
//! and a comparison mode. Certification samples strictly more distinct
//! rational q values than the declared bound (the fixed sequence 1/2, 1/3,
//! 2/3, 1/5, ...), so exact agreement at every sample proves the identity
//! as a polynomial in q, not just spot-checks it. Polynomial-in-x sides are
//! compared structurally; pointwise sides are evaluated on a fixed rational
//! x grid with documented poles skipped.

mod registry;

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qcore::{q_sample_sequence, QParam};
use crate::{RPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

/// How the two sides of an identity are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonMode {
    /// Sides are polynomials in x; equality is structural (complete in x).
    PolyInX,
    /// Sides are scalars, series or rational functions; compared at the
    /// fixed rational x grid (or directly when no x is involved).
    Pointwise,
}

impl ComparisonMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ComparisonMode::PolyInX => "poly-in-x",
            ComparisonMode::Pointwise => "pointwise",
        }
    }
}

/// How q is sampled for one identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QPolicy {
    /// q_degree_bound + 1 distinct rational samples in (0,1), with q = 1
    /// appended when the identity permits it.
    Interpolate,
    /// The identity is q-free or pinned at q = 1; it runs once at q = 1.
    SingleQOne,
}

/// One parameter tuple of an identity instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params {
    pairs: Vec<(&'static str, i64)>,
}

impl Params {
    pub fn new(pairs: &[(&'static str, i64)]) -> Self {
        Params { pairs: pairs.to_vec() }
    }

    pub fn get(&self, name: &str) -> i64 {
        self.pairs
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("identity instance has no parameter {name}"))
    }

    pub fn usize(&self, name: &str) -> usize {
        self.get(name) as usize
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Shared evaluation context handed to every check.
pub struct Ctx {
    pub seed: u64,
    pub x_grid: Vec<Rational>,
}

impl Ctx {
    fn new(seed: u64) -> Self {
        // {0, 1/7, ..., 6/7, 1}
        let mut x_grid = vec![Rational::from_integer(0.into())];
        for j in 1..=6i64 {
            x_grid.push(Rational::new(j.into(), 7.into()));
        }
        x_grid.push(Rational::from_integer(1.into()));
        Ctx { seed, x_grid }
    }

    /// Deterministic per-instance random stream (used for the randomized
    /// polynomial-pair and sequence fixtures).
    pub fn rng(&self, id: &str, idx: u64) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in id.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h ^ idx.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-9i64..=9);
    let d = rng.gen_range(1i64..=9);
    Rational::new(n.into(), d.into())
}

/// Random polynomial of exactly the requested degree.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> RPoly {
    let mut coeffs: Vec<Rational> = (0..degree).map(|_| random_rational(rng)).collect();
    let lead_num = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1i64..=9);
    coeffs.push(Rational::new(lead_num.into(), rng.gen_range(1i64..=9).into()));
    RPoly::new(coeffs)
}

pub type CheckFn = fn(&Params, &QParam<Rational>, &Ctx) -> Result<(), Counterexample>;

/// A registered identity: parameter enumeration, q-degree bookkeeping and
/// the two-sided check.
pub struct IdentityDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub mode: ComparisonMode,
    pub param_ranges: &'static str,
    pub q_policy: QPolicy,
    /// Whether q = 1 is appended to the sample set.
    pub allows_q_one: bool,
    pub instances: fn() -> Vec<Params>,
    /// Conservative upper bound for the degree in q of both sides after
    /// clearing the documented denominators.
    pub q_degree_bound: fn(&Params) -> usize,
    pub check: CheckFn,
}

/// A deliberately broken variant of a registered identity; the suite must
/// detect every one of these.
pub struct MutationDef {
    pub name: &'static str,
    pub target: &'static str,
    pub description: &'static str,
    pub def: IdentityDef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: String,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub mode: String,
    pub param_ranges: String,
    pub params_tested: usize,
    /// Largest declared q-degree bound across instances.
    pub q_degree_bound: usize,
    /// Largest number of distinct interpolation samples used for a single
    /// instance; always strictly greater than the declared bound.
    pub q_samples: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0 }
    }
}

/// All registered identities, in certification order.
pub fn registry() -> Vec<IdentityDef> {
    registry::identities()
}

/// The documented mutation catalog, one per registered identity.
pub fn mutation_catalog() -> Vec<MutationDef> {
    registry::mutations()
}

fn run_def(def: &IdentityDef, cfg: &RunConfig) -> IdentityReport {
    let start = Instant::now();
    let ctx = Ctx::new(cfg.seed);
    let instances = (def.instances)();

    let mut max_bound = 0usize;
    let mut max_samples = 0usize;
    let plans: Vec<(usize, Vec<Rational>)> = instances
        .iter()
        .map(|params| {
            let (bound, qs) = match def.q_policy {
                QPolicy::Interpolate => {
                    let bound = (def.q_degree_bound)(params);
                    let mut qs = q_sample_sequence(bound + 1);
                    if def.allows_q_one {
                        qs.push(Rational::from_integer(1.into()));
                    }
                    (bound, qs)
                }
                QPolicy::SingleQOne => (0, vec![Rational::from_integer(1.into())]),
            };
            max_bound = max_bound.max(bound);
            max_samples = max_samples.max(bound + 1);
            (bound, qs)
        })
        .collect();

    let failures: Vec<Option<Counterexample>> = instances
        .par_iter()
        .zip(plans.par_iter())
        .map(|(params, (bound, qs))| {
            debug_assert!(matches!(def.q_policy, QPolicy::SingleQOne) || qs.len() > *bound);
            for q in qs {
                let qp = QParam::new(q.clone()).expect("sample q lies in (0, 1]");
                if let Err(ce) = (def.check)(params, &qp, &ctx) {
                    return Some(ce);
                }
            }
            None
        })
        .collect();

    let counterexample = failures.into_iter().flatten().next();
    IdentityReport {
        id: def.id.to_string(),
        mode: def.mode.as_str().to_string(),
        param_ranges: def.param_ranges.to_string(),
        params_tested: instances.len(),
        q_degree_bound: max_bound,
        q_samples: max_samples,
        status: if counterexample.is_some() { Status::Failed } else { Status::Certified },
        counterexample,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Run one identity by exact id.
pub fn run_identity(id: &str, cfg: &RunConfig) -> Result<IdentityReport, VerifyError> {
    let defs = registry();
    let def = defs
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| VerifyError::UnknownIdentity(id.to_string()))?;
    Ok(run_def(def, cfg))
}

/// Run all identities whose id starts with the filter (all when None).
/// Reports come back ordered by identity id.
pub fn run_suite(filter: Option<&str>, cfg: &RunConfig) -> Vec<IdentityReport> {
    let defs = registry();
    let selected: Vec<&IdentityDef> = defs
        .iter()
        .filter(|d| filter.map_or(true, |f| d.id.starts_with(f)))
        .collect();
    let mut reports: Vec<IdentityReport> =
        selected.par_iter().map(|def| run_def(def, cfg)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

/// Outcome of running one documented mutation through the engine.
#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub name: String,
    pub target: String,
    pub description: String,
    /// True when the suite caught the defect (report failed).
    pub detected: bool,
    pub report: IdentityReport,
}

/// Run every documented mutation; a healthy suite detects all of them.
pub fn run_mutations(cfg: &RunConfig) -> Vec<MutationOutcome> {
    let muts = mutation_catalog();
    let mut outcomes: Vec<MutationOutcome> = muts
        .par_iter()
        .map(|m| {
            let report = run_def(&m.def, cfg);
            MutationOutcome {
                name: m.name.to_string(),
                target: m.target.to_string(),
                description: m.description.to_string(),
                detected: report.status == Status::Failed,
                report,
            }
        })
        .collect();
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));
    outcomes
}

/// Human-readable summary table, one line per report.
pub fn summary_table(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(8).max(8);
    let rng_w = reports.iter().map(|r| r.param_ranges.len()).max().unwrap_or(6).max(6);
    out.push_str(&format!(
        "{:<id_w$}  {:<9}  {:<rng_w$}  {:>6}  {:>5}  {:>7}  status\n",
        "identity", "mode", "ranges", "tuples", "q-deg", "samples"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<id_w$}  {:<9}  {:<rng_w$}  {:>6}  {:>5}  {:>7}  {}\n",
            r.id,
            r.mode,
            r.param_ranges,
            r.params_tested,
            r.q_degree_bound,
            r.q_samples,
            match r.status {
                Status::Certified => "certified",
                Status::Failed => "FAILED",
            }
        ));
        if let Some(ce) = &r.counterexample {
            out.push_str(&format!(
                "  counterexample: {} at q = {}{}\n    lhs = {}\n    rhs = {}\n",
                ce.params,
                ce.q,
                ce.x.as_ref().map(|x| format!(", x = {x}")).unwrap_or_default(),
                ce.lhs,
                ce.rhs
            ));
        }
    }
    let failed = reports.iter().filter(|r| r.status == Status::Failed).count();
    out.push_str(&format!(
        "{} identities: {} certified, {} failed\n",
        reports.len(),
        reports.len() - failed,
        failed
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn registry_ids_are_unique_and_cover_named_results() {
        let defs = registry();
        let mut seen = BTreeMap::new();
        for d in &defs {
            *seen.entry(d.id).or_insert(0usize) += 1;
        }
        for (id, count) in &seen {
            assert_eq!(*count, 1, "duplicate id {id}");
        }
        // every named theorem/proposition/corollary appears exactly once
        // (thm5 states two formulas, hence two entries)
        let prefix_count = |p: &str| defs.iter().filter(|d| d.id.starts_with(p)).count();
        assert_eq!(prefix_count("prop1"), 1);
        assert_eq!(prefix_count("thm2"), 1);
        assert_eq!(prefix_count("cor3"), 1);
        assert_eq!(prefix_count("cor4"), 1);
        assert_eq!(prefix_count("thm5"), 2);
        assert_eq!(prefix_count("thm6"), 1);
        assert_eq!(prefix_count("prop7"), 1);
        assert_eq!(prefix_count("thm8"), 1);
        assert_eq!(prefix_count("thm9"), 1);
        assert_eq!(prefix_count("thm10"), 1);
        assert_eq!(prefix_count("cor11"), 1);
    }

    #[test]
    fn every_identity_has_a_documented_mutation() {
        let ids: Vec<&str> = registry().iter().map(|d| d.id).collect();
        let muts = mutation_catalog();
        for id in ids {
            assert!(
                muts.iter().any(|m| m.target == id),
                "identity {id} has no documented mutation"
            );
        }
        for m in &muts {
            assert!(
                registry().iter().any(|d| d.id == m.target),
                "mutation {} targets unknown identity {}",
                m.name,
                m.target
            );
        }
    }

    #[test]
    fn unknown_identity_is_an_error() {
        assert_eq!(
            run_identity("no-such-identity", &RunConfig::default()),
            Err(VerifyError::UnknownIdentity("no-such-identity".into()))
        );
    }

    #[test]
    fn empty_filter_match_is_success() {
        let reports = run_suite(Some("zzz-nothing"), &RunConfig::default());
        assert!(reports.is_empty());
    }

    #[test]
    fn filter_cor4_selects_exactly_one() {
        let reports = run_suite(Some("cor4"), &RunConfig::default());
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].status, Status::Certified);
    }

    #[test]
    fn partition_of_unity_certifies() {
        let report = run_identity("partition-of-unity", &RunConfig::default()).unwrap();
        assert_eq!(report.status, Status::Certified);
        assert!(report.q_samples > report.q_degree_bound);
    }

    #[test]
    fn reports_are_deterministic_modulo_wall_time() {
        let a = run_suite(Some("thm9"), &RunConfig { seed: 7 });
        let b = run_suite(Some("thm9"), &RunConfig { seed: 7 });
        let strip = |rs: &[IdentityReport]| -> Vec<serde_json::Value> {
            rs.iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).unwrap();
                    v.as_object_mut().unwrap().remove("wall_time_ms");
                    v
                })
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
    }
}
