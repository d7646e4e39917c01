//! Experiment harness behind the command-line tool: per-graph measurement,
//! seeded random sweeps, the bound-comparison table and certificate bundles.
//!
//! Trial seeds are `splitmix64(splitmix64(master_seed ^ n) ^ index)`, so a
//! trial's graph depends only on `(master_seed, n, index)` and rows come out
//! in `(n, index)` order regardless of scheduling.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::bounds::{compare_gg_bounds, verify_chain, BoundsReport, Tighter};
use crate::constructions::{clique_chain_h, hairy_clique, random_graph, Probability};
use crate::error::{Error, Result};
use crate::exact::{branch_bound_gamma_with_budget, brute_force_gamma, Budget, DominationResult};
use crate::fractional::{
    solve_gamma_f_capped, verify_strong_duality, DualityCertificate, FractionalSolution, DEFAULT_LP_CAP,
};
use crate::graph::Graph;
use crate::greedy::{
    greedy_sequence, neighborhood_weight_bound_check, packing_certificate, GreedyTrace, NeighborhoodWeightReport,
    PackingCertificate,
};
use crate::scalar::{format_approx, format_exact, int};
use crate::weighting::check_weighting;
use crate::Rational;

/// Column order of every trial CSV.
pub const TRIAL_CSV_HEADER: [&str; 17] = [
    "label",
    "n",
    "seed",
    "delta",
    "Delta",
    "gamma_f_exact",
    "gamma_f_dec",
    "gamma",
    "gamma_g",
    "frac_lo",
    "frac_hi",
    "ratio_bound",
    "cssf_bound",
    "chain_ok",
    "ms_lp",
    "ms_exact",
    "ms_greedy",
];

pub const BOUNDS_CSV_HEADER: [&str; 11] = [
    "label",
    "n",
    "delta",
    "Delta",
    "gamma_f_exact",
    "gamma_g",
    "ratio_form",
    "cssf_form_exact",
    "cssf_form_dec",
    "tighter",
    "error",
];

/// Default order limit for the branch-and-bound solver.
pub const EXACT_MAX_N: usize = 150;

/// Master seed of the shipped random sweep.
pub const DEFAULT_MASTER_SEED: u64 = 20_240_601;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master_seed: u64, n: usize, index: usize) -> u64 {
    splitmix64(splitmix64(master_seed ^ n as u64) ^ index as u64)
}

#[derive(Clone, Debug)]
pub struct ComputeOptions {
    pub gamma_f: bool,
    pub gamma: bool,
    pub gamma_g: bool,
    /// Use brute force limited to this set size instead of branch and bound.
    pub size_cap: Option<usize>,
    /// Ignore `exact_max_n`.
    pub force: bool,
    pub exact_max_n: usize,
    pub exact_time_limit: Option<Duration>,
    pub lp_cap: usize,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            gamma_f: true,
            gamma: true,
            gamma_g: true,
            size_cap: None,
            force: false,
            exact_max_n: EXACT_MAX_N,
            exact_time_limit: Some(Duration::from_secs(60)),
            lp_cap: DEFAULT_LP_CAP,
        }
    }
}

/// Everything measured on one graph.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub fractional: Option<FractionalSolution<Rational>>,
    pub exact: Option<DominationResult>,
    pub greedy: Option<GreedyTrace>,
    pub report: BoundsReport,
    /// Solver failures, e.g. budget exhaustion. Measurement continues.
    pub errors: Vec<Error>,
    pub ms_lp: u128,
    pub ms_exact: u128,
    pub ms_greedy: u128,
}

impl Measurement {
    pub fn budget_exceeded(&self) -> bool {
        self.errors
            .iter()
            .any(|e| matches!(e, Error::Budget(_) | Error::SizeCapExceeded { .. }))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis())
}

/// Runs the requested solvers and the bound chain. Certificates of the
/// solvers are re-verified; a failed verification is an `Err`.
pub fn measure(g: &Graph, opts: &ComputeOptions) -> Result<Measurement> {
    let mut errors = Vec::new();
    let (fractional, ms_lp) = timed(|| opts.gamma_f.then(|| solve_gamma_f_capped(g, opts.lp_cap)));
    let fractional = match fractional.transpose() {
        Ok(f) => f,
        Err(e @ Error::Budget(_)) => {
            errors.push(e);
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(sol) = &fractional {
        verify_strong_duality(sol, g)?;
    }
    let (greedy, ms_greedy) = timed(|| opts.gamma_g.then(|| greedy_sequence(g)));
    let (exact, ms_exact) = timed(|| {
        if !opts.gamma {
            return None;
        }
        Some(match opts.size_cap {
            Some(cap) => brute_force_gamma(g, Some(cap)),
            None if opts.force || g.order() <= opts.exact_max_n => {
                let budget = Budget {
                    time_limit: opts.exact_time_limit,
                    node_limit: None,
                };
                branch_bound_gamma_with_budget(g, None, budget)
            }
            None => Err(Error::Budget(format!(
                "exact solver limited to n <= {} (use --force)",
                opts.exact_max_n
            ))),
        })
    });
    let exact = match exact.transpose() {
        Ok(r) => r,
        Err(e @ (Error::Budget(_) | Error::SizeCapExceeded { .. })) => {
            errors.push(e);
            None
        }
        Err(e) => return Err(e),
    };
    let report = verify_chain(
        g,
        fractional.as_ref().map(|s| s.value.clone()),
        exact.as_ref().map(|r| r.value),
        greedy.as_ref().map(GreedyTrace::len),
    );
    Ok(Measurement {
        fractional,
        exact,
        greedy,
        report,
        errors,
        ms_lp,
        ms_exact,
        ms_greedy,
    })
}

/// One CSV row of a sweep or a compute run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub label: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub trial: usize,
    pub report: BoundsReport,
    pub ms_lp: u128,
    pub ms_exact: u128,
    pub ms_greedy: u128,
    /// Per-trial solver failures (not part of the CSV schema).
    pub errors: Vec<String>,
}

impl TrialRecord {
    pub fn from_measurement(label: &str, seed: Option<u64>, trial: usize, m: &Measurement) -> Self {
        TrialRecord {
            label: label.to_string(),
            n: m.report.n,
            seed,
            trial,
            report: m.report.clone(),
            ms_lp: m.ms_lp,
            ms_exact: m.ms_exact,
            ms_greedy: m.ms_greedy,
            errors: m.errors.iter().map(|e| e.to_string()).collect(),
        }
    }

    /// Recomputed from this record's own numbers.
    pub fn chain_ok(&self) -> bool {
        self.report.chain_ok()
    }

    pub fn gamma_f_f64(&self) -> Option<f64> {
        self.report.gamma_f.as_ref().and_then(|f| f.to_f64())
    }

    /// Fields in [`TRIAL_CSV_HEADER`] order. Timing columns are left empty
    /// unless `timings` is set, so that output is reproducible byte for byte.
    pub fn csv_fields(&self, timings: bool) -> Vec<String> {
        let r = &self.report;
        let opt = |v: Option<String>| v.unwrap_or_default();
        let ms = |v: u128| if timings { v.to_string() } else { String::new() };
        vec![
            self.label.clone(),
            r.n.to_string(),
            opt(self.seed.map(|s| s.to_string())),
            r.min_degree.to_string(),
            r.max_degree.to_string(),
            opt(r.gamma_f.as_ref().map(format_exact)),
            opt(r
                .gamma_f
                .as_ref()
                .map(|f| format_approx(f.to_f64().unwrap_or(f64::NAN)))),
            opt(r.gamma.map(|v| v.to_string())),
            opt(r.gamma_g.map(|v| v.to_string())),
            format_exact(&r.frac_lower),
            format_exact(&r.frac_upper),
            r.ratio_bound.to_string(),
            format_exact(&r.cssf_bound),
            self.chain_ok().to_string(),
            ms(self.ms_lp),
            ms(self.ms_exact),
            ms(self.ms_greedy),
        ]
    }
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("csv output: {e}"))
}

pub fn trials_to_csv(records: &[TrialRecord], timings: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRIAL_CSV_HEADER).map_err(csv_error)?;
    for r in records {
        w.write_record(r.csv_fields(timings)).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    pub probability: Probability,
    pub compute: ComputeOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_list: vec![40, 60, 80, 100],
            trials: 20,
            master_seed: DEFAULT_MASTER_SEED,
            probability: Probability::HALF,
            compute: ComputeOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let sum: f64 = values.iter().sum();
        Some(Stats {
            mean: sum / values.len() as f64,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            count: values.len(),
        })
    }
}

/// Per-`n` summary of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepAggregate {
    pub n: usize,
    pub trials: usize,
    pub gamma_f: Option<Stats>,
    pub gamma: Option<Stats>,
    pub gamma_g: Option<Stats>,
    /// `γ / γ_f` per trial.
    pub gamma_over_frac: Option<Stats>,
    /// `γ_g / γ` per trial.
    pub greedy_over_gamma: Option<Stats>,
}

pub const SUMMARY_CSV_HEADER: [&str; 17] = [
    "n",
    "trials",
    "gamma_f_mean",
    "gamma_f_min",
    "gamma_f_max",
    "gamma_mean",
    "gamma_min",
    "gamma_max",
    "gamma_g_mean",
    "gamma_g_min",
    "gamma_g_max",
    "gamma_over_frac_mean",
    "gamma_over_frac_min",
    "gamma_over_frac_max",
    "greedy_over_gamma_mean",
    "greedy_over_gamma_min",
    "greedy_over_gamma_max",
];

impl SweepAggregate {
    pub fn from_records(n: usize, records: &[&TrialRecord]) -> Self {
        let collect = |f: &dyn Fn(&TrialRecord) -> Option<f64>| -> Option<Stats> {
            Stats::of(&records.iter().filter_map(|r| f(r)).collect::<Vec<_>>())
        };
        SweepAggregate {
            n,
            trials: records.len(),
            gamma_f: collect(&|r| r.gamma_f_f64()),
            gamma: collect(&|r| r.report.gamma.map(|v| v as f64)),
            gamma_g: collect(&|r| r.report.gamma_g.map(|v| v as f64)),
            gamma_over_frac: collect(&|r| Some(r.report.gamma? as f64 / r.gamma_f_f64()?)),
            greedy_over_gamma: collect(&|r| Some(r.report.gamma_g? as f64 / r.report.gamma? as f64)),
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        let mut out = vec![self.n.to_string(), self.trials.to_string()];
        for s in [
            &self.gamma_f,
            &self.gamma,
            &self.gamma_g,
            &self.gamma_over_frac,
            &self.greedy_over_gamma,
        ] {
            match s {
                Some(s) => out.extend([s.mean, s.min, s.max].map(|x| format!("{x:.6}"))),
                None => out.extend(std::iter::repeat_n(String::new(), 3)),
            }
        }
        out
    }
}

pub fn summary_to_csv(aggs: &[SweepAggregate]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_CSV_HEADER).map_err(csv_error)?;
    for a in aggs {
        w.write_record(a.csv_fields()).map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<SweepAggregate>,
}

impl SweepResult {
    pub fn all_chains_ok(&self) -> bool {
        self.records.iter().all(TrialRecord::chain_ok)
    }
}

/// Random `G(n, p)` trials; trials run in parallel, rows are ordered by
/// `(n, trial index)`.
pub fn random_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let jobs: Vec<(usize, usize)> = cfg
        .n_list
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |i| (n, i)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(n, i)| -> Result<TrialRecord> {
            let seed = trial_seed(cfg.master_seed, n, i);
            let g = random_graph(n, seed, cfg.probability)?;
            let m = measure(&g, &cfg.compute)?;
            Ok(TrialRecord::from_measurement(&format!("R_{n}"), Some(seed), i, &m))
        })
        .collect::<Result<Vec<_>>>()?;
    let aggregates = cfg
        .n_list
        .iter()
        .map(|&n| {
            let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.n == n).collect();
            SweepAggregate::from_records(n, &rows)
        })
        .collect();
    Ok(SweepResult { records, aggregates })
}

/// One row of the bound-comparison table.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub label: String,
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub gamma_f: Option<Rational>,
    pub gamma_g: Option<usize>,
    pub ratio_form: Option<crate::real::Enclosure>,
    pub cssf_form: Option<Rational>,
    pub tighter: Option<Tighter>,
    pub error: Option<String>,
}

impl BoundsRow {
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.label.clone(),
            self.n.to_string(),
            self.min_degree.to_string(),
            self.max_degree.to_string(),
            opt(self.gamma_f.as_ref().map(format_exact)),
            opt(self.gamma_g.map(|v| v.to_string())),
            opt(self.ratio_form.as_ref().map(|e| e.to_string())),
            opt(self.cssf_form.as_ref().map(format_exact)),
            opt(self
                .cssf_form
                .as_ref()
                .map(|c| format_approx(c.to_f64().unwrap_or(f64::NAN)))),
            opt(self.tighter.map(|t| t.to_string())),
            opt(self.error.clone()),
        ]
    }
}

/// Both constant-free upper bounds on `γ_g` for one graph. Failures land in
/// the row's error column.
pub fn bounds_row(label: &str, g: &Graph, lp_cap: usize) -> BoundsRow {
    let (min_degree, max_degree) = g.degree_stats();
    let mut row = BoundsRow {
        label: label.to_string(),
        n: g.order(),
        min_degree,
        max_degree,
        gamma_f: None,
        gamma_g: None,
        ratio_form: None,
        cssf_form: None,
        tighter: None,
        error: None,
    };
    let sol = match solve_gamma_f_capped(g, lp_cap).and_then(|s| verify_strong_duality(&s, g).map(|_| s)) {
        Ok(s) => s,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let gamma_g = greedy_sequence(g).len();
    let cmp = compare_gg_bounds(g, &sol.value);
    let gg = int(gamma_g);
    if !cmp.ratio_form.certainly_ge(&gg) || cmp.cssf_form < gg {
        row.error = Some("greedy value exceeds an upper bound".into());
    }
    row.gamma_f = Some(sol.value);
    row.gamma_g = Some(gamma_g);
    row.tighter = Some(cmp.tighter);
    row.ratio_form = Some(cmp.ratio_form);
    row.cssf_form = Some(cmp.cssf_form);
    row
}

/// The shipped comparison: `H_t` for `t = 4..=7` and hairy cliques with
/// `t ∈ {4, 8, 16, 32}`.
pub fn default_bounds_graphs() -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    for t in 4..=7 {
        out.push((format!("clique_chain_H_t{t}"), clique_chain_h(t)?));
    }
    for t in [4, 8, 16, 32] {
        out.push((format!("hairy_clique_t{t}"), hairy_clique(t)?));
    }
    Ok(out)
}

pub fn bounds_table(graphs: &[(String, Graph)], lp_cap: usize) -> Vec<BoundsRow> {
    graphs
        .par_iter()
        .map(|(label, g)| bounds_row(label, g, lp_cap))
        .collect()
}

pub fn bounds_to_csv(rows: &[BoundsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BOUNDS_CSV_HEADER).map_err(csv_error)?;
    for r in rows {
        w.write_record(r.csv_fields()).map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

/// LP pair, greedy trace, scaled packing and the per-vertex audit, each
/// re-verified before the bundle is returned.
#[derive(Clone, Debug)]
pub struct CertificateBundle {
    pub lp: FractionalSolution<Rational>,
    pub duality: DualityCertificate,
    pub trace: GreedyTrace,
    pub packing: PackingCertificate,
    pub audit: NeighborhoodWeightReport,
}

pub fn certify(g: &Graph, lp_cap: usize) -> Result<CertificateBundle> {
    let lp = solve_gamma_f_capped(g, lp_cap)?;
    let duality = verify_strong_duality(&lp, g)?;
    for w in [&lp.primal, &lp.dual] {
        let r = check_weighting(g, w)?;
        if let Some(&v) = r.violated.first() {
            return Err(Error::Verification(format!(
                "{} weighting violated at vertex {v}",
                w.role()
            )));
        }
    }
    let trace = greedy_sequence(g);
    trace.validate_against(g)?;
    if trace.total_weight() != int(trace.len()) {
        return Err(Error::Verification(
            "greedy weights do not sum to the sequence length".into(),
        ));
    }
    let packing = packing_certificate(g, &trace)?;
    if let Some(&v) = packing.report.violated.first() {
        return Err(Error::Verification(format!("scaled packing violated at vertex {v}")));
    }
    // weak duality: the certified packing total cannot exceed γ_f
    if packing.weighting.total() > lp.value {
        return Err(Error::Verification(
            "packing total exceeds the fractional domination number".into(),
        ));
    }
    let audit = neighborhood_weight_bound_check(g, &trace)?;
    if let Some(&v) = audit.violations.first().or(audit.ordering_violations.first()) {
        return Err(Error::Verification(format!(
            "neighborhood weight bound fails at vertex {v}"
        )));
    }
    Ok(CertificateBundle {
        lp,
        duality,
        trace,
        packing,
        audit,
    })
}

impl CertificateBundle {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[lp]\n");
        out.push_str(&self.lp.to_text());
        out.push_str("\n[greedy_trace]\n");
        out.push_str(&self.trace.to_text());
        out.push_str("\n[packing]\n");
        let p = &self.packing;
        let _ = writeln!(out, "factor_upper {}", format_exact(p.factor.upper()));
        let _ = writeln!(out, "factor_approx {}", p.factor);
        let _ = writeln!(out, "total {}", format_exact(&p.weighting.total()));
        let _ = writeln!(out, "min_slack {}", format_exact(&p.report.min_slack));
        for (v, (w, s)) in p.weighting.weights().iter().zip(&p.report.slacks).enumerate() {
            let _ = writeln!(out, "{v} {} {}", format_exact(w), format_exact(s));
        }
        out.push_str("\n[w_sum_audit]\n");
        let _ = writeln!(
            out,
            "max_sum {} at {}",
            format_exact(&self.audit.max_sum),
            self.audit.argmax
        );
        for (v, s) in self.audit.sums.iter().enumerate() {
            let _ = writeln!(out, "{v} {}", format_exact(s));
        }
        out
    }
}
