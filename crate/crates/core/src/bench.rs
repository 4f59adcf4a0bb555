//! Wall-clock scaling benchmark for the match-length workload.
//!
//! Each trial generates a fresh i.i.d. uniform sequence of length `N` and
//! computes `Λ(i, i)` for every position, as the self-entropy estimator does.
//! The `lcsfinder` timing includes building the index; `brute` has no build
//! step. Trials run sequentially on the calling thread.

use std::fmt;
use std::hint::black_box;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::lcs::{brute_force_strict, LcsIndex, MatchQuery};
use crate::synth::uniform_sequence;
use crate::tokens::TokenSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    LcsFinder,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::LcsFinder => "lcsfinder",
            Self::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lcsfinder" => Ok(Self::LcsFinder),
            "brute" => Ok(Self::Brute),
            other => Err(Error::InvalidConfig(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub min_exp: f64,
    pub max_exp: f64,
    pub step: f64,
    pub trials: usize,
    pub seed: u64,
    pub vocab: u32,
    pub algorithms: Vec<Algorithm>,
    /// Largest `N` at which `brute` runs.
    pub brute_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            min_exp: 0.25,
            max_exp: 5.0,
            step: 0.25,
            trials: 30,
            seed: 0,
            vocab: 4,
            algorithms: vec![Algorithm::LcsFinder, Algorithm::Brute],
            brute_cap: 3000,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_owned()));
        if !(self.min_exp.is_finite() && self.max_exp.is_finite() && self.step.is_finite()) {
            return fail("exponents must be finite");
        }
        if self.min_exp < 0.0 {
            return fail("min_exp must be >= 0");
        }
        if self.min_exp > self.max_exp {
            return fail("min_exp must not exceed max_exp");
        }
        if self.step <= 0.0 {
            return fail("step must be positive");
        }
        if self.trials < 1 {
            return fail("trials must be >= 1");
        }
        if self.vocab < 1 {
            return fail("vocab must be >= 1");
        }
        if self.brute_cap < 1 {
            return fail("brute_cap must be >= 1");
        }
        if self.algorithms.is_empty() {
            return fail("at least one algorithm is required");
        }
        Ok(())
    }

    /// Sequence lengths `round(10^e)` for `e = min_exp, min_exp + step, ...`
    /// up to `max_exp`, without repeats.
    pub fn grid(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut s = 0u32;
        loop {
            let e = self.min_exp + f64::from(s) * self.step;
            if e > self.max_exp + 1e-9 {
                break;
            }
            let n = (10f64.powf(e).round() as usize).max(1);
            if out.last() != Some(&n) {
                out.push(n);
            }
            s += 1;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub algo: Algorithm,
    pub n: usize,
    pub trial: usize,
    pub seconds: f64,
}

/// Seed of the synthetic sequence used for trial `trial` at length `n`.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (n as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (trial as u64).wrapping_mul(0x94D0_49BB_1331_11EB)
}

/// Runs the all-`(i, i)` workload and returns `Σ Λ`.
pub fn run_workload(algo: Algorithm, x: &TokenSequence) -> u64 {
    let n = x.len();
    match algo {
        Algorithm::LcsFinder => {
            let index = LcsIndex::build(x, x);
            let queries: Vec<_> = (0..n).map(|i| MatchQuery::new(i, i)).collect();
            let lambdas = index
                .batch_lambda(&queries)
                .expect("diagonal queries are in range");
            lambdas.iter().map(|&l| l as u64).sum()
        }
        Algorithm::Brute => (0..n)
            .map(|i| brute_force_strict(x, x, MatchQuery::new(i, i)) as u64 + 1)
            .sum(),
    }
}

/// Wall-clock seconds for one run of the workload.
pub fn time_workload(algo: Algorithm, x: &TokenSequence) -> f64 {
    let start = Instant::now();
    black_box(run_workload(algo, black_box(x)));
    start.elapsed().as_secs_f64()
}

/// Runs the whole grid, reporting each sample to `on_sample` as it finishes.
pub fn run(cfg: &BenchConfig, mut on_sample: impl FnMut(&Sample)) -> Result<Vec<Sample>> {
    cfg.validate()?;
    let mut samples = Vec::new();
    for n in cfg.grid() {
        for &algo in &cfg.algorithms {
            if algo == Algorithm::Brute && n > cfg.brute_cap {
                continue;
            }
            samples.extend(run_trials(
                algo,
                n,
                cfg.trials,
                cfg.vocab,
                cfg.seed,
                &mut on_sample,
            ));
        }
    }
    Ok(samples)
}

/// Times `trials` runs of `algo` at length `n`, after one untimed warm-up run.
pub fn run_trials(
    algo: Algorithm,
    n: usize,
    trials: usize,
    vocab: u32,
    seed: u64,
    mut on_sample: impl FnMut(&Sample),
) -> Vec<Sample> {
    black_box(run_workload(
        algo,
        &uniform_sequence(n, vocab, trial_seed(seed, n, trials)),
    ));
    (0..trials)
        .map(|trial| {
            let x = uniform_sequence(n, vocab, trial_seed(seed, n, trial));
            let seconds = time_workload(algo, &x);
            let sample = Sample {
                algo,
                n,
                trial,
                seconds,
            };
            on_sample(&sample);
            sample
        })
        .collect()
}

pub const CSV_COMMENT: &str =
    "# lcsfinder timings include index build; trials run sequentially on one thread";
pub const CSV_HEADER: &str = "algo,n,trial,seconds";

pub fn write_csv_header<W: Write + ?Sized>(w: &mut W) -> io::Result<()> {
    writeln!(w, "{CSV_COMMENT}")?;
    writeln!(w, "{CSV_HEADER}")
}

pub fn write_csv_row<W: Write + ?Sized>(w: &mut W, s: &Sample) -> io::Result<()> {
    writeln!(w, "{},{},{},{:.9}", s.algo, s.n, s.trial, s.seconds)
}

/// Median of `values`; the mean of the middle two for even lengths.
pub fn median<F: Float>(values: &[F]) -> Option<F> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("NaN in timings"));
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        Some(v[mid])
    } else {
        Some((v[mid - 1] + v[mid]) / F::from(2).unwrap())
    }
}

/// Least-squares slope of `log10(y)` against `log10(x)`. Needs at least two
/// distinct positive `x` values; non-positive points are dropped.
pub fn fit_loglog_slope<F: Float>(points: &[(F, F)]) -> Option<F> {
    let logs: Vec<(F, F)> = points
        .iter()
        .filter(|(x, y)| *x > F::zero() && *y > F::zero())
        .map(|&(x, y)| (x.log10(), y.log10()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let count = F::from(logs.len()).unwrap();
    let mx = logs.iter().fold(F::zero(), |a, p| a + p.0) / count;
    let my = logs.iter().fold(F::zero(), |a, p| a + p.1) / count;
    let sxx = logs
        .iter()
        .fold(F::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    let sxy = logs
        .iter()
        .fold(F::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    if sxx <= F::zero() {
        return None;
    }
    Some(sxy / sxx)
}

/// `(n, median seconds)` for one algorithm, ordered by `n`.
pub fn median_curve(samples: &[Sample], algo: Algorithm) -> Vec<(f64, f64)> {
    let mut ns: Vec<usize> = samples
        .iter()
        .filter(|s| s.algo == algo)
        .map(|s| s.n)
        .collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let times: Vec<f64> = samples
                .iter()
                .filter(|s| s.algo == algo && s.n == n)
                .map(|s| s.seconds)
                .collect();
            (n as f64, median(&times).unwrap())
        })
        .collect()
}

/// Log-log slope of the median curve of `algo`.
pub fn slope(samples: &[Sample], algo: Algorithm) -> Option<f64> {
    fit_loglog_slope(&median_curve(samples, algo))
}
