//! The increasing-sequence inequality and the length bound it implies.
//!
//! For `0 < c <= 1` and `n_1 < .. < n_k` (with `n_0 = 0`) the hypothesis is,
//! for all `m <= j < l <= k`,
//!
//! ```text
//! n_j - n_{j-1} >= (n_l - n_j) / n_j * ((1 + c) n_j - (2 n_l - n_{l-1}))
//! ```
//!
//! and the conclusion is `k <= L^2 + 2L + m + 1` with `L = log_r n_k`,
//! `r = 1 + c/3`. The hypothesis is decided in exact integer arithmetic; the
//! logarithm is enclosed in an interval and the bound counts as holding only
//! against the interval's lower end.

use num_rational::Ratio;

use crate::par;

use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCheckInput {
    c: Ratio<i64>,
    m: usize,
    seq: Vec<u64>,
}

impl SequenceCheckInput {
    pub fn new(c: Ratio<i64>, m: usize, seq: Vec<u64>) -> Result<Self, OracleError> {
        if c <= Ratio::from_integer(0) || c > Ratio::from_integer(1) {
            return Err(OracleError::InvalidSequence(format!("c = {c} is outside (0, 1]")));
        }
        if seq.first() == Some(&0) || seq.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OracleError::InvalidSequence(format!("{seq:?} is not strictly increasing and positive")));
        }
        Ok(Self { c, m, seq })
    }

    pub fn c(&self) -> Ratio<i64> {
        self.c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seq(&self) -> &[u64] {
        &self.seq
    }

    /// `r = 1 + c/3`.
    pub fn r(&self) -> Ratio<i64> {
        Ratio::from_integer(1) + self.c / 3
    }

    /// `n_i` with `n_0 = 0`, 1-based.
    fn at(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.seq[i - 1]
        }
    }
}

/// One instance of the inequality with `c = p/q`, multiplied through by
/// `q n_j > 0`.
pub(crate) fn pair_holds(p: i128, q: i128, before_j: u64, at_j: u64, before_l: u64, at_l: u64) -> bool {
    let (a, b, u, v) = (before_j as i128, at_j as i128, before_l as i128, at_l as i128);
    q * (b - a) * b >= (v - b) * ((q + p) * b - q * (2 * v - u))
}

fn parts(c: Ratio<i64>) -> (i128, i128) {
    (*c.numer() as i128, *c.denom() as i128)
}

/// First `(j, l)` (1-based, `max(m, 1) <= j < l <= k`) where the inequality fails.
pub fn first_violating_pair(input: &SequenceCheckInput) -> Option<(usize, usize)> {
    let (p, q) = parts(input.c);
    let k = input.seq.len();
    for j in input.m.max(1)..k {
        for l in j + 1..=k {
            if !pair_holds(p, q, input.at(j - 1), input.at(j), input.at(l - 1), input.at(l)) {
                return Some((j, l));
            }
        }
    }
    None
}

/// Whether the hypothesis holds for every admissible pair; vacuously true
/// when `k <= m`.
pub fn verify_sequence_condition(input: &SequenceCheckInput) -> bool {
    first_violating_pair(input).is_none()
}

/// `log_r n` enclosed in `[lower, upper]`.
pub fn log_interval(c: Ratio<i64>, n: u64) -> (f64, f64) {
    if n <= 1 {
        return (0.0, 0.0);
    }
    let x = *c.numer() as f64 / *c.denom() as f64 / 3.0;
    let mid = (n as f64).ln() / x.ln_1p();
    // Both logarithms are within an ulp or two; 1e-12 relative is ample.
    (mid * (1.0 - 1e-12), mid * (1.0 + 1e-12))
}

fn bound_of(log: f64, m: usize) -> f64 {
    log * log + 2.0 * log + m as f64 + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceBound {
    pub k: usize,
    pub log_lower: f64,
    pub log_upper: f64,
    pub bound_lower: f64,
    pub bound_upper: f64,
    /// `k` does not exceed the lower end of the bound.
    pub holds: bool,
}

/// Evaluates the length bound for a sequence satisfying the hypothesis.
pub fn verify_sequence_bound(input: &SequenceCheckInput) -> Result<SequenceBound, OracleError> {
    if let Some((j, l)) = first_violating_pair(input) {
        return Err(OracleError::ConditionNotVerified { j, l });
    }
    let k = input.seq.len();
    let last = input.seq.last().copied().unwrap_or(1);
    let (log_lower, log_upper) = log_interval(input.c, last);
    let bound_lower = bound_of(log_lower, input.m);
    Ok(SequenceBound {
        k,
        log_lower,
        log_upper,
        bound_lower,
        bound_upper: bound_of(log_upper, input.m),
        holds: k as f64 <= bound_lower,
    })
}

/// Outcome of [`sequence_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub max_n: u64,
    /// All strictly increasing sequences with last term at most `max_n`.
    pub candidates: u64,
    pub satisfying: u64,
    pub violations: u64,
    pub first_violation: Option<Vec<u64>>,
    /// Longest satisfying sequence per last term (index = last term).
    pub longest: Vec<usize>,
    /// Smallest `bound_lower - k` over satisfying sequences.
    pub min_slack: f64,
}

struct Sweep<'a> {
    max_n: usize,
    m: usize,
    /// Bit `v` of `fails[(a * w + b) * w + u]`: the pair with `n_{j-1} = a`,
    /// `n_j = b`, `n_{l-1} = u`, `n_l = v` fails.
    fails: &'a [u64],
    bound_lower: &'a [f64],
    stack: Vec<usize>,
    satisfying: u64,
    pruned: u64,
    violations: u64,
    first_violation: Option<Vec<u64>>,
    longest: Vec<usize>,
    min_slack: f64,
}

impl Sweep<'_> {
    fn visit(&mut self) {
        let k = self.stack.len();
        let u = self.stack[k - 1];
        self.satisfying += 1;
        self.longest[u] = self.longest[u].max(k);
        let slack = self.bound_lower[u] - k as f64;
        self.min_slack = self.min_slack.min(slack);
        if slack < 0.0 {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(self.stack.iter().map(|&x| x as u64).collect());
            }
        }
        let w = self.max_n + 1;
        let mut forbidden = 0u64;
        for j in self.m.max(1)..=k {
            let a = if j == 1 { 0 } else { self.stack[j - 2] };
            let b = self.stack[j - 1];
            forbidden |= self.fails[(a * w + b) * w + u];
        }
        for v in u + 1..=self.max_n {
            if forbidden >> v & 1 == 1 {
                // Every extension keeps the failing pair.
                self.pruned += 1u64 << (self.max_n - v);
                continue;
            }
            self.stack.push(v);
            self.visit();
            self.stack.pop();
        }
    }
}

/// Exhaustive check of the bound over every strictly increasing sequence with
/// last term at most `max_n` (at most 62) that satisfies the hypothesis.
///
/// The hypothesis is prefix-closed, so the search extends satisfying prefixes
/// only and counts each rejected subtree at once.
pub fn sequence_sweep(max_n: u64, c: Ratio<i64>, m: usize) -> SweepReport {
    assert!((1..=62).contains(&max_n), "sweep supports 1 <= max_n <= 62");
    let top = max_n as usize;
    let w = top + 1;
    let (p, q) = parts(c);
    let mut fails = vec![0u64; w * w * w];
    for a in 0..w {
        for b in a + 1..w {
            for u in b..w {
                let mut mask = 0u64;
                for v in u + 1..w {
                    if !pair_holds(p, q, a as u64, b as u64, u as u64, v as u64) {
                        mask |= 1 << v;
                    }
                }
                fails[(a * w + b) * w + u] = mask;
            }
        }
    }
    let bound_lower: Vec<f64> = (0..w).map(|n| bound_of(log_interval(c, n.max(1) as u64).0, m)).collect();
    let parts = par::map_range(1..w, |first| {
        let mut sweep = Sweep {
            max_n: top,
            m,
            fails: &fails,
            bound_lower: &bound_lower,
            stack: vec![first],
            satisfying: 0,
            pruned: 0,
            violations: 0,
            first_violation: None,
            longest: vec![0; w],
            min_slack: f64::INFINITY,
        };
        sweep.visit();
        sweep
    });
    let mut report = SweepReport {
        max_n,
        candidates: 0,
        satisfying: 0,
        violations: 0,
        first_violation: None,
        longest: vec![0; w],
        min_slack: f64::INFINITY,
    };
    for s in parts {
        report.candidates += s.satisfying + s.pruned;
        report.satisfying += s.satisfying;
        report.violations += s.violations;
        if report.first_violation.is_none() {
            report.first_violation = s.first_violation;
        }
        for (x, y) in report.longest.iter_mut().zip(&s.longest) {
            *x = (*x).max(*y);
        }
        report.min_slack = report.min_slack.min(s.min_slack);
    }
    report
}
