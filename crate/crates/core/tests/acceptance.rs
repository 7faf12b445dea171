//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! `cargo test --release -p rainbow-core --test acceptance` checks against the
//! frozen thresholds in `tests/data/calibration.toml`; passing `--calibrate`
//! recomputes those thresholds and rewrites the file instead. CSV artifacts
//! are written under the cargo target tmpdir in `acceptance/`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use rainbow_core::cycle::{long_rainbow_cycle, PipelineConfig};
use rainbow_core::forest::{greedy_rainbow_forest, swap_minimize, PathForest, SearchBudget};
use rainbow_core::gen::{random_proper, round_robin_even, GeneratorKind};
use rainbow_core::graph::ColoredGraph;
use rainbow_core::harness::{
    color_deficit_experiment, color_records_to_csv, fit_deficit, records_to_csv, sweep, Algorithm, ColorRecord,
    ExperimentRecord, Scaling, SweepConfig,
};
use rainbow_core::oracle::{
    brute_longest_rainbow_cycle, brute_min_spanning_forest, claim_chain, forest_claims, sequence_sweep, swap_closure,
    verify_forest, verify_rainbow_cycle,
};
use rainbow_core::sampler::{adversarial_pair_scan, check_degree_concentration, sample_color_subgraph, SampleParams};

/// Relative slack on every frozen regression threshold.
const SLACK: f64 = 0.10;
/// Standard errors subtracted from the exact degree pass probability.
const PASS_RATE_SIGMAS: f64 = 3.0;
/// Agreement required between the stored and recomputed exact probability.
const PROBABILITY_TOL: f64 = 1e-9;
/// Visit cap for oracle closures on tiny hosts.
const CLOSURE_CAP: usize = 2_000_000;

const MIN_PIPELINE_RUNS: usize = 500;
const DOMINANCE_LIMIT: Duration = Duration::from_secs(5 * 60);
const SEQUENCE_LIMIT: Duration = Duration::from_secs(2 * 60);
const DEFICIT_LIMIT: Duration = Duration::from_secs(15 * 60);

const CONCENTRATION_N: usize = 300;
const CONCENTRATION_P: f64 = 0.2;
const CONCENTRATION_EPS: f64 = 0.15;
const CONCENTRATION_SEEDS: u64 = 100;
const PAIR_SAMPLES: usize = 20_000;

const CYCLE_SIZES: [usize; 5] = [64, 128, 256, 512, 1024];
const COLOR_SIZES: [usize; 5] = [16, 32, 64, 128, 256];
const REGRESSION_SEEDS: usize = 10;
const COLOR_BUDGET: (usize, usize) = (10_000, 8);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Calibration {
    concentration: ConcentrationCalibration,
    /// Mean cycle deficit per `n`.
    cycle_deficit: BTreeMap<String, f64>,
    /// Mean Hamilton color deficit per `n`.
    color_deficit: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ConcentrationCalibration {
    /// Exact probability that one sample passes the all-vertex band.
    exact_pass_probability: f64,
    /// That probability minus three standard errors over the seed count.
    pass_rate_threshold: f64,
    observed_pass_rate: f64,
    /// Mean over seeds of the smallest `observed / threshold` pair ratio.
    mean_min_margin: f64,
    /// Failing pairs over pairs examined.
    violation_rate: f64,
}

fn calibration_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/calibration.toml")
}

fn artifact_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

/// CSV files produced by one execution of the suite, by file name.
type Artifacts = BTreeMap<&'static str, String>;

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (s, k) = xs.into_iter().fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    s / k as f64
}

/// `P(lo <= Bin(trials, p) <= hi)`, summed term by term in log space.
fn binomial_window(trials: u64, p: f64, lo: u64, hi: u64) -> f64 {
    let ln_fact = |k: u64| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    (lo..=hi.min(trials))
        .map(|k| {
            let ln_choose = ln_fact(trials) - ln_fact(k) - ln_fact(trials - k);
            (ln_choose + k as f64 * p.ln() + (trials - k) as f64 * (1.0 - p).ln()).exp()
        })
        .sum()
}

/// Every vertex of a one-factorized `K_n` meets each color once, so all
/// sampled degrees equal the number of kept colors: one binomial decides
/// the whole band.
fn exact_pass_probability() -> f64 {
    let degree = (CONCENTRATION_N - 1) as u64;
    let mean = CONCENTRATION_P * degree as f64;
    let lo = ((1.0 - CONCENTRATION_EPS) * mean).ceil() as u64;
    let hi = ((1.0 + CONCENTRATION_EPS) * mean).floor() as u64;
    binomial_window(degree, CONCENTRATION_P, lo, hi)
}

fn pass_rate_threshold(exact: f64) -> f64 {
    exact - PASS_RATE_SIGMAS * (exact * (1.0 - exact) / CONCENTRATION_SEEDS as f64).sqrt()
}

fn tiny_forest(g: &ColoredGraph) -> PathForest {
    let fraction = 1.0 / (g.n() as f64).sqrt();
    greedy_rainbow_forest(g, fraction, fraction).forest
}

// ---------------------------------------------------------------- sweep (1)

fn validation_sweep() -> Vec<ExperimentRecord> {
    let grids = [
        (GeneratorKind::RoundRobinEven, (64..=160).step_by(2).collect::<Vec<_>>(), 0),
        (GeneratorKind::CircularOdd, (65..=161).step_by(2).collect(), 0),
        (GeneratorKind::RandomProper, (64..=160).step_by(8).collect(), 16),
    ];
    grids
        .into_iter()
        .flat_map(|(kind, n, extra)| {
            let mut config = SweepConfig::single(kind, 0, 0, Algorithm::Cycle);
            config.n = n;
            config.seeds = (0..5).collect();
            config.extra_colors = extra;
            sweep(&config)
        })
        .collect()
}

// ------------------------------------------------------------ dominance (2)

struct Dominance {
    csv: String,
    runs: usize,
    cycles: usize,
    violations: usize,
    pipeline_errors: usize,
    elapsed: Duration,
}

fn dominance() -> Dominance {
    let start = Instant::now();
    let mut csv = String::from(
        "n,seed,brute_cycle,pipeline_cycle,pipeline_error,brute_forest,bounded_paths,unlimited_paths,dominated\n",
    );
    let (mut runs, mut cycles, mut violations, mut pipeline_errors) = (0, 0, 0, 0);
    for n in 5..=8 {
        for seed in 0..50u64 {
            let g = random_proper(n, 0, seed).expect("palette large enough");
            let brute_cycle = brute_longest_rainbow_cycle(&g).unwrap().value;
            let brute_forest = brute_min_spanning_forest(&g).unwrap().value;
            let config = PipelineConfig { floor: 0, a: Some(1), seed, ..PipelineConfig::default() };
            let (pipeline_cycle, error) = match long_rainbow_cycle(&g, &config) {
                Ok(run) => {
                    let ok = verify_rainbow_cycle(&g, &run.cycle).is_ok();
                    (Some(run.cycle.len()), if ok { "" } else { "invalid" })
                }
                Err(e) => (None, e.class()),
            };
            let start_forest = tiny_forest(&g);
            let bounded = swap_minimize(&start_forest, &g, SearchBudget::bounded(10_000, 8, usize::MAX, seed)).forest;
            let unlimited = swap_minimize(&start_forest, &g, SearchBudget::unlimited(seed)).forest;
            let forests_ok =
                [&bounded, &unlimited].iter().all(|f| verify_forest(&g, f.paths()).is_ok() && f.is_spanning(n));
            let dominated = pipeline_cycle.is_none_or(|len| brute_cycle >= len)
                && brute_forest <= bounded.path_count()
                && brute_forest <= unlimited.path_count()
                && forests_ok
                && error != "invalid";
            runs += 2 + pipeline_cycle.is_some() as usize;
            cycles += pipeline_cycle.is_some() as usize;
            pipeline_errors += pipeline_cycle.is_none() as usize;
            violations += !dominated as usize;
            let _ = writeln!(
                csv,
                "{n},{seed},{brute_cycle},{},{error},{brute_forest},{},{},{dominated}",
                pipeline_cycle.map_or(String::new(), |l| l.to_string()),
                bounded.path_count(),
                unlimited.path_count()
            );
        }
    }
    Dominance { csv, runs, cycles, violations, pipeline_errors, elapsed: start.elapsed() }
}

// ------------------------------------------------- closure and claims (3, 4)

#[derive(Default)]
struct ClaimTally {
    forests: usize,
    not_optimal: usize,
    lower: (usize, usize, usize),
    upper: (usize, usize),
    degree: (usize, usize, usize),
    chain_hosts: usize,
    chain_checks: usize,
    chain_violations: usize,
    chain_vacuous: BTreeMap<String, usize>,
}

struct Agreement {
    csv: String,
    instances: usize,
    mismatches: usize,
    truncated: usize,
    runs: usize,
    claims: ClaimTally,
}

fn agreement() -> Agreement {
    let mut csv = String::from(
        "instance,n,seed,extra_colors,start,start_paths,minimized_paths,closure_min_p,closure_forests,agree,\
         claim_j,claim_n_j,claim_colors,lower_ok,lower_vacuous,upper_ok,degree_ok,degree_vacuous,max_degree\n",
    );
    let (mut mismatches, mut truncated, mut runs) = (0, 0, 0);
    let mut claims = ClaimTally::default();
    let instances = 100;
    for i in 0..instances {
        let n = 4 + i % 4;
        let seed = i as u64;
        let extra = i % 3;
        let g = random_proper(n, extra, seed).expect("palette large enough");
        let (label, start) =
            if i % 2 == 0 { ("greedy", tiny_forest(&g)) } else { ("singletons", PathForest::singletons(&g)) };
        let best = swap_minimize(&start, &g, SearchBudget::unlimited(seed)).forest;
        runs += 1;
        let valid = verify_forest(&g, best.paths()).is_ok() && best.is_spanning(n);
        let reference = swap_closure(start.paths(), &g, CLOSURE_CAP);
        truncated += reference.truncated as usize;
        let agree = valid && !reference.truncated && reference.min_p == best.path_count();
        mismatches += !agree as usize;

        let own = swap_closure(best.paths(), &g, CLOSURE_CAP);
        let fc = forest_claims(&g, &own);
        let _ = write!(
            csv,
            "{i},{n},{seed},{extra},{label},{},{},{},{},{agree},",
            start.path_count(),
            best.path_count(),
            reference.min_p,
            reference.forests_visited
        );
        match &fc {
            Some(c) => {
                claims.forests += 1;
                claims.lower.0 += c.lower_ok as usize;
                claims.lower.1 += c.lower_vacuous as usize;
                claims.lower.2 += !c.lower_ok as usize;
                claims.upper.0 += c.upper_ok as usize;
                claims.upper.1 += !c.upper_ok as usize;
                claims.degree.0 += c.degree_ok as usize;
                claims.degree.1 += c.degree_vacuous as usize;
                claims.degree.2 += !c.degree_ok as usize;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{}",
                    c.j,
                    c.n_j,
                    c.colors,
                    c.lower_ok,
                    c.lower_vacuous,
                    c.upper_ok,
                    c.degree_ok,
                    c.degree_vacuous,
                    c.max_degree
                );
            }
            None => {
                claims.not_optimal += 1;
                let _ = writeln!(csv, ",,,,,,,,");
            }
        }

        // The full descending chain on the same host.
        let chain = claim_chain(&g).expect("host within chain cap");
        claims.chain_hosts += 1;
        claims.chain_checks += chain.checks.len();
        claims.chain_violations += chain.violations().count();
        for family in chain.vacuous {
            *claims.chain_vacuous.entry(family).or_default() += 1;
        }
    }
    Agreement { csv, instances, mismatches, truncated, runs, claims }
}

// ----------------------------------------------------- concentration (6)

struct Concentration {
    csv: String,
    pass_rate: f64,
    mean_min_margin: f64,
    worst_margin: f64,
    violation_rate: f64,
    examined: usize,
}

fn concentration() -> Concentration {
    let g = round_robin_even(CONCENTRATION_N).unwrap();
    let rows: Vec<_> = (0..CONCENTRATION_SEEDS)
        .map(|seed| {
            let params = SampleParams::new(CONCENTRATION_P, CONCENTRATION_EPS, seed).unwrap();
            let h = sample_color_subgraph(&g, &params);
            let report = check_degree_concentration(&h, &g, &params).unwrap();
            let (a, b) = params.pair_sizes(CONCENTRATION_N);
            let scan = adversarial_pair_scan(&h, &g, a, b, &params, PAIR_SAMPLES, seed).unwrap();
            (seed, h.degree(0), report.degree_ok, a, b, scan)
        })
        .collect();
    let mut csv =
        String::from("seed,kept_colors,degree_ok,a,b,examined,violations,min_observed,threshold,min_margin\n");
    for (seed, kept, ok, a, b, scan) in &rows {
        let _ = writeln!(
            csv,
            "{seed},{kept},{ok},{a},{b},{},{},{},{:.6},{:.6}",
            scan.examined,
            scan.violations,
            scan.worst.observed,
            scan.worst.threshold,
            scan.min_margin()
        );
    }
    let examined: usize = rows.iter().map(|r| r.5.examined).sum();
    let violations: usize = rows.iter().map(|r| r.5.violations).sum();
    Concentration {
        csv,
        pass_rate: rows.iter().filter(|r| r.2).count() as f64 / rows.len() as f64,
        mean_min_margin: mean(rows.iter().map(|r| r.5.min_margin())),
        worst_margin: rows.iter().map(|r| r.5.min_margin()).fold(f64::INFINITY, f64::min),
        violation_rate: violations as f64 / examined as f64,
        examined,
    }
}

// ------------------------------------------------------ regressions (7, 8)

fn cycle_records() -> (Vec<ExperimentRecord>, Duration) {
    let start = Instant::now();
    let mut config = SweepConfig::single(GeneratorKind::RoundRobinEven, 0, 0, Algorithm::Cycle);
    config.n = CYCLE_SIZES.to_vec();
    config.seeds = (0..REGRESSION_SEEDS as u64).collect();
    (sweep(&config), start.elapsed())
}

fn color_records() -> Result<Vec<ColorRecord>, String> {
    let hosts: Vec<_> = COLOR_SIZES.iter().map(|&n| round_robin_even(n).unwrap()).collect();
    let seeds: Vec<u64> = (0..REGRESSION_SEEDS as u64).collect();
    color_deficit_experiment(&hosts, &seeds, COLOR_BUDGET.0, COLOR_BUDGET.1)
}

fn mean_cycle_deficits(records: &[ExperimentRecord]) -> BTreeMap<usize, f64> {
    CYCLE_SIZES
        .iter()
        .map(|&n| {
            let ds: Vec<f64> =
                records.iter().filter(|r| r.n == n && r.valid).filter_map(|r| r.deficit).map(|d| d as f64).collect();
            (n, if ds.is_empty() { f64::INFINITY } else { mean(ds) })
        })
        .collect()
}

fn mean_color_deficits(records: &[ColorRecord]) -> BTreeMap<usize, f64> {
    COLOR_SIZES.iter().map(|&n| (n, mean(records.iter().filter(|r| r.n == n).map(|r| r.deficit as f64)))).collect()
}

/// Compares per-`n` means with frozen values; returns failures and a summary.
fn regression(observed: &BTreeMap<usize, f64>, frozen: &BTreeMap<String, f64>) -> (usize, String) {
    let mut failures = 0;
    let mut parts = Vec::new();
    for (n, &m) in observed {
        let limit = frozen.get(&n.to_string()).map(|f| f * (1.0 + SLACK));
        let ok = limit.is_some_and(|l| m <= l);
        failures += !ok as usize;
        parts.push(format!("n={n}: {m:.1}<={}", limit.map_or("missing".into(), |l| format!("{l:.1}"))));
    }
    (failures, parts.join(", "))
}

// ----------------------------------------------------------------- suite

struct Execution {
    verdicts: Vec<(usize, Verdict)>,
    artifacts: Artifacts,
}

fn execute(cal: &Calibration) -> Execution {
    let mut verdicts = Vec::new();
    let mut artifacts = Artifacts::new();

    let sweep_records = validation_sweep();
    artifacts.insert("validation_sweep.csv", records_to_csv(&sweep_records, false));

    let dom = dominance();
    artifacts.insert("oracle_dominance.csv", dom.csv.clone());
    verdicts.push((
        2,
        Verdict::new(
            dom.violations == 0 && dom.elapsed < DOMINANCE_LIMIT,
            format!(
                "200 hosts K5..K8: {} violations; {} pipeline cycles, {} pipeline errors (no cycle to compare); {:.1}s (limit {}s)",
                dom.violations,
                dom.cycles,
                dom.pipeline_errors,
                dom.elapsed.as_secs_f64(),
                DOMINANCE_LIMIT.as_secs()
            ),
        ),
    ));

    let agr = agreement();
    artifacts.insert("closure_agreement.csv", agr.csv.clone());
    verdicts.push((
        3,
        Verdict::new(
            agr.mismatches == 0,
            format!(
                "{} instances n<=7: {} mismatches, {} truncated closures",
                agr.instances, agr.mismatches, agr.truncated
            ),
        ),
    ));
    let c = &agr.claims;
    let claim_violations = c.lower.2 + c.upper.1 + c.degree.2 + c.chain_violations;
    verdicts.push((
        4,
        Verdict::new(
            claim_violations == 0 && c.not_optimal == 0 && c.forests > 0,
            format!(
                "{} swap-optimal forests: lower {} held ({} vacuous) / {} failed, upper {} held / {} failed, \
                 degree {} held ({} vacuous) / {} failed; {} not swap-optimal; chains on {} hosts: {} checks, {} violations, vacuous families {:?}",
                c.forests,
                c.lower.0,
                c.lower.1,
                c.lower.2,
                c.upper.0,
                c.upper.1,
                c.degree.0,
                c.degree.1,
                c.degree.2,
                c.not_optimal,
                c.chain_hosts,
                c.chain_checks,
                c.chain_violations,
                c.chain_vacuous
            ),
        ),
    ));

    let start = Instant::now();
    let seq = sequence_sweep(30, Ratio::new(1, 6), 1);
    let seq_elapsed = start.elapsed();
    artifacts.insert(
        "sequence_sweep.csv",
        format!(
            "max_n,candidates,satisfying,violations,min_slack,longest\n{},{},{},{},{:.6},{}\n",
            seq.max_n,
            seq.candidates,
            seq.satisfying,
            seq.violations,
            seq.min_slack,
            seq.longest.iter().max().unwrap()
        ),
    );
    verdicts.push((
        5,
        Verdict::new(
            seq.violations == 0 && seq.satisfying > 0 && seq_elapsed < SEQUENCE_LIMIT,
            format!(
                "{} sequences with last term <= 30, {} satisfy the hypothesis, {} violations, min slack {:.3}; {:.1}s (limit {}s)",
                seq.candidates,
                seq.satisfying,
                seq.violations,
                seq.min_slack,
                seq_elapsed.as_secs_f64(),
                SEQUENCE_LIMIT.as_secs()
            ),
        ),
    ));

    let conc = concentration();
    artifacts.insert("concentration.csv", conc.csv.clone());
    let frozen = &cal.concentration;
    let exact = exact_pass_probability();
    let threshold_ok = (frozen.exact_pass_probability - exact).abs() < PROBABILITY_TOL
        && (frozen.pass_rate_threshold - pass_rate_threshold(exact)).abs() < PROBABILITY_TOL;
    let margin_floor = frozen.mean_min_margin * (1.0 - SLACK);
    let violation_ceiling = frozen.violation_rate * (1.0 + SLACK);
    verdicts.push((
        6,
        Verdict::new(
            threshold_ok
                && conc.pass_rate >= frozen.pass_rate_threshold
                && conc.mean_min_margin >= margin_floor
                && conc.violation_rate <= violation_ceiling,
            format!(
                "degree band held in {:.2} of {} samples (threshold {:.4} from exact {:.4}, recomputed agrees: {}); \
                 pairs: {} examined, mean min margin {:.4} (floor {:.4}), worst {:.4}, violation rate {:.4} (ceiling {:.4})",
                conc.pass_rate,
                CONCENTRATION_SEEDS,
                frozen.pass_rate_threshold,
                exact,
                threshold_ok,
                conc.examined,
                conc.mean_min_margin,
                margin_floor,
                conc.worst_margin,
                conc.violation_rate,
                violation_ceiling
            ),
        ),
    ));

    let (cycles, cycle_elapsed) = cycle_records();
    artifacts.insert("cycle_deficit.csv", records_to_csv(&cycles, false));
    let invalid = cycles.iter().filter(|r| !r.valid).count();
    let (failures, summary) = regression(&mean_cycle_deficits(&cycles), &cal.cycle_deficit);
    let fit = fit_deficit(&cycles, Scaling::SqrtNLogN);
    let fit_note = match &fit {
        Ok(f) => {
            artifacts.insert("cycle_deficit_fit.csv", f.to_csv());
            format!("fit {:.4}*{} (r^2 {:.3})", f.coefficient, f.scaling.name(), f.r_squared)
        }
        Err(e) => format!("fit failed: {e}"),
    };
    verdicts.push((
        7,
        Verdict::new(
            invalid == 0 && failures == 0 && fit.is_ok() && cycle_elapsed < DEFICIT_LIMIT,
            format!(
                "{} runs, {invalid} invalid; mean deficit {summary}; {fit_note}; {:.1}s (limit {}s)",
                cycles.len(),
                cycle_elapsed.as_secs_f64(),
                DEFICIT_LIMIT.as_secs()
            ),
        ),
    ));

    let colors = color_records();
    let (color_ok, color_detail, color_runs) = match &colors {
        Ok(records) => {
            artifacts.insert("color_deficit.csv", color_records_to_csv(records));
            let bound_held = records.iter().filter(|r| r.forest_bound_ok).count();
            let (failures, summary) = regression(&mean_color_deficits(records), &cal.color_deficit);
            (
                failures == 0 && bound_held == records.len(),
                format!("{} runs; colors >= n - p(F*) in {bound_held}; mean deficit {summary}", records.len()),
                records.len(),
            )
        }
        Err(e) => (false, format!("experiment failed: {e}"), 0),
    };
    verdicts.push((8, Verdict::new(color_ok, color_detail)));

    // Criterion 1 totals every pipeline output validated above.
    let sweep_invalid = sweep_records.iter().filter(|r| !r.valid).count();
    let total = sweep_records.len() + dom.runs + agr.runs + cycles.len() + color_runs;
    let bad = sweep_invalid + invalid + dom.violations + (color_runs == 0) as usize;
    let first_error = sweep_records.iter().chain(&cycles).find_map(|r| r.error.clone());
    verdicts.push((
        1,
        Verdict::new(
            total >= MIN_PIPELINE_RUNS && bad == 0,
            format!(
                "{total} validated runs (sweep {}, dominance {}, closure {}, cycle regression {}, color regression {color_runs}); \
                 {bad} failed{}",
                sweep_records.len(),
                dom.runs,
                agr.runs,
                cycles.len(),
                first_error.map_or(String::new(), |e| format!(", first error: {e}"))
            ),
        ),
    ));

    verdicts.sort_by_key(|v| v.0);
    Execution { verdicts, artifacts }
}

fn calibrate() {
    let exact = exact_pass_probability();
    let conc = concentration();
    let (cycles, _) = cycle_records();
    let colors = color_records().expect("color experiment runs");
    let keyed = |m: BTreeMap<usize, f64>| m.into_iter().map(|(n, v)| (n.to_string(), v)).collect();
    let cal = Calibration {
        concentration: ConcentrationCalibration {
            exact_pass_probability: exact,
            pass_rate_threshold: pass_rate_threshold(exact),
            observed_pass_rate: conc.pass_rate,
            mean_min_margin: conc.mean_min_margin,
            violation_rate: conc.violation_rate,
        },
        cycle_deficit: keyed(mean_cycle_deficits(&cycles)),
        color_deficit: keyed(mean_color_deficits(&colors)),
    };
    let body = toml::to_string(&cal).expect("calibration serializes");
    let text = format!(
        "# Frozen regression thresholds for the acceptance suite.\n\
         # Regenerate: cargo test --release -p rainbow-core --test acceptance -- --calibrate\n\n{body}"
    );
    std::fs::write(calibration_path(), text).expect("write calibration file");
    println!("wrote {}", calibration_path().display());
}

fn main() {
    if std::env::args().any(|a| a == "--calibrate") {
        calibrate();
        return;
    }
    // Under `cargo test` a name filter may be passed; run only when it could match.
    if let Some(filter) = std::env::args().skip(1).find(|a| !a.starts_with('-')) {
        if !"acceptance".contains(&filter) {
            return;
        }
    }
    let text = std::fs::read_to_string(calibration_path()).expect("calibration file present");
    let cal: Calibration = toml::from_str(&text).expect("calibration file parses");

    let suite_start = Instant::now();
    let first = execute(&cal);
    let second = execute(&cal);
    let dir = artifact_dir();
    std::fs::create_dir_all(&dir).expect("create artifact dir");
    for (name, body) in &first.artifacts {
        std::fs::write(dir.join(name), body).expect("write artifact");
    }
    let differing: Vec<&str> = first
        .artifacts
        .iter()
        .filter(|(name, body)| second.artifacts.get(*name) != Some(*body))
        .map(|(name, _)| *name)
        .collect();
    let same_set = first.artifacts.len() == second.artifacts.len();
    let bytes: usize = first.artifacts.values().map(String::len).sum();

    let mut all = true;
    for (id, v) in &first.verdicts {
        all &= v.pass;
        println!("criterion {id}: {} - {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let det = differing.is_empty() && same_set;
    all &= det;
    println!(
        "criterion 9: {} - {} CSV files ({bytes} bytes) from two executions, {} differ{}",
        if det { "PASS" } else { "FAIL" },
        first.artifacts.len(),
        differing.len(),
        if differing.is_empty() { String::new() } else { format!(": {differing:?}") }
    );
    println!("artifacts in {}; total {:.1}s", dir.display(), suite_start.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
