//! List-size measurements and Monte Carlo estimators over code ensembles.
//!
//! Every trial draws from its own generator seeded with
//! `mix_seed(seed, trial)`, so results do not depend on thread scheduling and
//! a run with more trials extends a shorter run with the same seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{enumerate_ball, radius_for, sample_from_ball, BallSpec, ENUMERATION_LIMIT};
use crate::construct::{construct_so_code, sample_code_star, sample_uniform_code};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rank_metric::{is_self_orthogonal, Ambient, LinearCode, Repr};
use crate::rng::{mix_seed, rng_from_seed, SeededRng};

/// `(1 - τ)(1 - ρτ) - ε`.
pub fn gv_rate(tau: f64, rho: f64, epsilon: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::param(format!("tau={tau} is not in (0,1)")));
    }
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::param(format!("rho={rho} is not in (0,1]")));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::param(format!("epsilon={epsilon} is negative")));
    }
    Ok((1.0 - tau) * (1.0 - rho * tau) - epsilon)
}

/// Dimension of a code of rate `rate`: `⌊R·nm⌋` over GF(q) or `⌊R·n⌋` over
/// GF(q^m), clamped to the self-orthogonal construction limit.
pub fn dimension_from_rate(rate: f64, ambient: &Ambient) -> Result<usize> {
    if !(0.0..=0.5).contains(&rate) {
        return Err(Error::param(format!("rate {rate} is outside [0, 1/2]")));
    }
    let k = (rate * ambient.word_len() as f64 + 1e-9).floor() as usize;
    Ok(k.min(ambient.construction_limit()))
}

/// `|B(center, r) ∩ C|` by walking the code.
pub fn list_size_by_code(code: &LinearCode, center: &[u32], r: usize) -> Result<u64> {
    let size = code.num_codewords();
    if size > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::too_large("code", size, ENUMERATION_LIMIT));
    }
    let amb = code.ambient();
    let mut count = 0;
    code.for_each_codeword(|c| {
        if amb.rank_distance(center, c) <= r {
            count += 1;
        }
    });
    Ok(count)
}

/// `|B(center, r) ∩ C|` by walking the ball.
pub fn list_size_by_ball(code: &LinearCode, center: &[u32], r: usize) -> Result<u64> {
    let spec = BallSpec::new(code.ambient().clone(), center.to_vec(), r)?;
    Ok(enumerate_ball(&spec)?.filter(|w| code.contains(w)).count() as u64)
}

/// `|B(center, r) ∩ C|`, walking whichever of the code and the ball is smaller.
pub fn list_size_at(code: &LinearCode, center: &[u32], r: usize) -> Result<u64> {
    code.ambient().check_word(center)?;
    let ball = BallSpec::new(code.ambient().clone(), center.to_vec(), r)?.size();
    if code.num_codewords() <= ball {
        list_size_by_code(code, center, r)
    } else {
        list_size_by_ball(code, center, r)
    }
}

/// A binomial proportion with its Wilson score interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub frequency: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Estimate {
    /// 95% Wilson interval.
    pub fn new(successes: u64, trials: u64) -> Self {
        let (lower, upper) = wilson_interval(successes, trials, 1.96);
        Estimate {
            successes,
            trials,
            frequency: successes as f64 / trials as f64,
            lower,
            upper,
        }
    }
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    SelfOrthogonal,
    CodeStar,
    UniformLinear,
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::SelfOrthogonal => "self-orthogonal",
            Ensemble::CodeStar => "code-star",
            Ensemble::UniformLinear => "uniform-linear",
        })
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-orthogonal" => Ok(Ensemble::SelfOrthogonal),
            "code-star" => Ok(Ensemble::CodeStar),
            "uniform-linear" => Ok(Ensemble::UniformLinear),
            _ => Err(Error::format(format!("unknown ensemble {s:?}"))),
        }
    }
}

impl Ensemble {
    pub fn sample(self, ambient: &Ambient, k: usize, rng: &mut SeededRng) -> Result<LinearCode> {
        match self {
            Ensemble::SelfOrthogonal => construct_so_code(ambient, k, rng),
            Ensemble::CodeStar => sample_code_star(ambient, k, rng),
            Ensemble::UniformLinear => sample_uniform_code(ambient, k, rng),
        }
    }
}

/// Parameters of a list-size experiment.
///
/// Text form: one `key=value` per line, `#` starts a comment. Keys `q`, `n`,
/// `m`, `tau`, `epsilon` and `trials` are required; `seed` (default 0),
/// `repr` (default matrix), `ensemble` (default self-orthogonal), `k`
/// (default from the rate) and `list_bound_m` (default 1) are optional.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub n: usize,
    pub m: usize,
    pub tau: f64,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
    pub repr: Repr,
    pub ensemble: Ensemble,
    pub k: Option<usize>,
    /// Runs whose maximum list size exceeds `⌈M/ε⌉` are flagged.
    pub list_bound_m: f64,
}

const CONFIG_KEYS: [&str; 11] = [
    "q",
    "n",
    "m",
    "tau",
    "epsilon",
    "trials",
    "seed",
    "repr",
    "ensemble",
    "k",
    "list_bound_m",
];

impl ExperimentConfig {
    pub fn new(q: u32, n: usize, m: usize, tau: f64, epsilon: f64, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            q,
            n,
            m,
            tau,
            epsilon,
            trials,
            seed,
            repr: Repr::Matrix,
            ensemble: Ensemble::SelfOrthogonal,
            k: None,
            list_bound_m: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::param(format!("tau={} is not in (0,1)", self.tau)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param(format!(
                "epsilon={} is not in (0,1)",
                self.epsilon
            )));
        }
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.list_bound_m.is_nan() || self.list_bound_m <= 0.0 {
            return Err(Error::param("list_bound_m must be positive"));
        }
        Ok(())
    }

    pub fn ambient(&self) -> Result<Ambient> {
        Ambient::from_params(self.repr, self.q, self.n, self.m)
    }

    /// `ρ = n/m`.
    pub fn rho(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    pub fn rate(&self) -> Result<f64> {
        gv_rate(self.tau, self.rho(), self.epsilon)
    }

    pub fn radius(&self) -> usize {
        radius_for(self.tau, self.n)
    }

    /// The configured `k`, or the dimension for the target rate.
    pub fn dimension(&self, ambient: &Ambient) -> Result<usize> {
        match self.k {
            Some(k) => Ok(k),
            None => dimension_from_rate(self.rate()?.max(0.0), ambient),
        }
    }

    /// `⌈M/ε⌉`.
    pub fn flag_threshold(&self) -> u64 {
        (self.list_bound_m / self.epsilon - 1e-9).ceil() as u64
    }

    /// The `key=value` text form, one key per line.
    pub fn to_config_string(&self) -> String {
        let mut s = format!(
            "q={}\nn={}\nm={}\ntau={}\nepsilon={}\ntrials={}\nseed={}\nrepr={}\nensemble={}\n",
            self.q,
            self.n,
            self.m,
            self.tau,
            self.epsilon,
            self.trials,
            self.seed,
            self.repr,
            self.ensemble
        );
        if let Some(k) = self.k {
            s.push_str(&format!("k={k}\n"));
        }
        s.push_str(&format!("list_bound_m={}\n", self.list_bound_m));
        s
    }
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::format(format!("bad value for {key}: {v:?}")))
}

impl FromStr for ExperimentConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::format(format!("line {}: expected key=value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let key = CONFIG_KEYS
                .iter()
                .find(|&&c| c == k)
                .ok_or_else(|| Error::format(format!("line {}: unknown key {k:?}", lineno + 1)))?;
            if seen.insert(key, v).is_some() {
                return Err(Error::format(format!(
                    "line {}: duplicate key {k:?}",
                    lineno + 1
                )));
            }
        }
        let required = |key: &str| {
            seen.get(key)
                .copied()
                .ok_or_else(|| Error::format(format!("missing key {key:?}")))
        };
        let mut cfg = ExperimentConfig::new(
            parse_value("q", required("q")?)?,
            parse_value("n", required("n")?)?,
            parse_value("m", required("m")?)?,
            parse_value("tau", required("tau")?)?,
            parse_value("epsilon", required("epsilon")?)?,
            parse_value("trials", required("trials")?)?,
            0,
        );
        if let Some(v) = seen.get("seed") {
            cfg.seed = parse_value("seed", v)?;
        }
        if let Some(v) = seen.get("repr") {
            cfg.repr = v.parse()?;
        }
        if let Some(v) = seen.get("ensemble") {
            cfg.ensemble = v.parse()?;
        }
        if let Some(v) = seen.get("k") {
            cfg.k = Some(parse_value("k", v)?);
        }
        if let Some(v) = seen.get("list_bound_m") {
            cfg.list_bound_m = parse_value("list_bound_m", v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub list_size: u64,
    pub center_rank: usize,
    pub code_seed: u64,
}

/// Outcome of [`max_list_size_experiment`].
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rate: f64,
    pub k: usize,
    pub radius: usize,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
    pub max_list_size: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub flag_threshold: u64,
    pub flagged: bool,
    /// Frequency of trials whose list size exceeds the flag threshold.
    pub exceed: Estimate,
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl ExperimentReport {
    /// Per-trial CSV followed by a `# {json}` summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,list_size,center_rank,code_seed\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.trial, r.list_size, r.center_rank, r.code_seed
            ));
        }
        out.push_str("# ");
        out.push_str(&self.summary_json());
        out.push('\n');
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Two-column `list_size,count` CSV.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("list_size,count\n");
        for (size, count) in &self.histogram {
            out.push_str(&format!("{size},{count}\n"));
        }
        out
    }
}

fn run_trials<T, F>(trials: u64, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64, &mut SeededRng) -> Result<T> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = mix_seed(seed, t);
            f(t, s, &mut rng_from_seed(s))
        })
        .collect()
}

/// Draws a code and a uniform center per trial and records the list size
/// of the ball of radius `⌊τn⌋` around the center.
pub fn max_list_size_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    cfg.validate()?;
    let ambient = cfg.ambient()?;
    let rate = cfg.rate()?;
    let k = cfg.dimension(&ambient)?;
    let radius = cfg.radius();
    let rows = run_trials(cfg.trials, cfg.seed, |trial, code_seed, rng| {
        let code = cfg.ensemble.sample(&ambient, k, rng)?;
        if cfg.ensemble == Ensemble::SelfOrthogonal && !is_self_orthogonal(&code) {
            return Err(Error::param(format!(
                "trial {trial}: sampled code is not self-orthogonal"
            )));
        }
        let center = ambient.random_word(rng);
        Ok(TrialRow {
            trial,
            list_size: list_size_at(&code, &center, radius)?,
            center_rank: ambient.rank_of(&center),
            code_seed,
        })
    })?;
    let mut histogram = BTreeMap::new();
    for r in &rows {
        *histogram.entry(r.list_size).or_insert(0) += 1;
    }
    let max_list_size = rows.iter().map(|r| r.list_size).max().unwrap_or(0);
    let flag_threshold = cfg.flag_threshold();
    let exceeding = rows.iter().filter(|r| r.list_size > flag_threshold).count() as u64;
    Ok(ExperimentReport {
        config: cfg.clone(),
        rate,
        k,
        radius,
        rows,
        max_list_size,
        histogram,
        flag_threshold,
        flagged: max_list_size > flag_threshold,
        exceed: Estimate::new(exceeding, cfg.trials),
        wall_time: start.elapsed(),
    })
}

/// All members of the GF-span of `words` (each once).
pub(crate) fn span_members(ambient: &Ambient, words: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let field = ambient.scalar_field();
    let e = Echelon::from_rows(
        field,
        ambient.word_len(),
        words.iter().map(|w| w.as_slice()),
    );
    let code = LinearCode::new(ambient.clone(), e.rows().to_vec())?;
    Ok(code.codewords())
}

/// Largest span `span_ball_event_estimate` enumerates.
pub const SPAN_LIMIT: u64 = 1 << 20;

/// Frequency of `|span{X_1..X_ℓ} ∩ B(0, ⌊τn⌋)| >= c_ratio · ℓ` for `X_i`
/// drawn independently and uniformly from the ball.
#[allow(clippy::too_many_arguments)]
pub fn span_ball_event_estimate(
    q: u32,
    n: usize,
    m: usize,
    tau: f64,
    ell: usize,
    c_ratio: f64,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    let ambient = Ambient::from_params(Repr::Matrix, q, n, m)?;
    span_ball_event_estimate_in(&ambient, tau, ell, c_ratio, trials, seed)
}

/// [`span_ball_event_estimate`] in any ambient space.
pub fn span_ball_event_estimate_in(
    ambient: &Ambient,
    tau: f64,
    ell: usize,
    c_ratio: f64,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    let span = BigUint::from(ambient.scalar_field().order()).pow(ell as u32);
    if span > BigUint::from(SPAN_LIMIT) {
        return Err(Error::too_large("span", span, SPAN_LIMIT));
    }
    let spec = BallSpec::with_tau(ambient.clone(), ambient.zero_word(), tau)?;
    let threshold = c_ratio * ell as f64;
    let hits = run_trials(trials, seed, |_, _, rng| {
        let xs: Vec<Vec<u32>> = (0..ell).map(|_| sample_from_ball(&spec, rng)).collect();
        let inside = span_members(ambient, &xs)?
            .iter()
            .filter(|w| ambient.rank_of(w) <= spec.radius())
            .count();
        Ok(inside as f64 >= threshold)
    })?;
    Ok(Estimate::new(
        hits.iter().filter(|&&h| h).count() as u64,
        trials,
    ))
}

/// Outcome of [`containment_event_estimate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentEstimate {
    pub estimate: Estimate,
    /// `(k + ℓ - mn - 2)ℓ + 4k - 1`, the base-q exponent of the reference bound.
    pub bound_exponent: i64,
    pub bound: f64,
}

impl ContainmentEstimate {
    /// True when the bound is at least 1, or the frequency is within three
    /// Wilson standard errors of lying below it.
    pub fn consistent_with_bound(&self) -> bool {
        if self.bound >= 1.0 {
            return true;
        }
        let (lower, _) = wilson_interval(self.estimate.successes, self.estimate.trials, 3.0);
        lower <= self.bound
    }
}

/// Frequency that a code drawn from the ensemble of k-dimensional codes with
/// a (k-1)-dimensional self-orthogonal subcode contains every word of
/// `fixed`, reported with the reference bound `q^((k+ℓ-mn-2)ℓ+4k-1)`.
pub fn containment_event_estimate(
    ambient: &Ambient,
    k: usize,
    fixed: &[Vec<u32>],
    trials: u64,
    seed: u64,
) -> Result<ContainmentEstimate> {
    let ell = fixed.len();
    if !(ell <= k && 2 * k < ambient.word_len()) {
        return Err(Error::param(format!(
            "need l <= k < {}/2, got l={ell} k={k}",
            ambient.word_len()
        )));
    }
    containment_with_sampler(ambient, k, fixed, trials, seed, |rng| {
        sample_code_star(ambient, k, rng)
    })
}

pub(crate) fn containment_with_sampler(
    ambient: &Ambient,
    k: usize,
    fixed: &[Vec<u32>],
    trials: u64,
    seed: u64,
    sampler: impl Fn(&mut SeededRng) -> Result<LinearCode> + Sync,
) -> Result<ContainmentEstimate> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    for w in fixed {
        ambient.check_word(w)?;
    }
    let field = ambient.scalar_field();
    let e = Echelon::from_rows(
        field,
        ambient.word_len(),
        fixed.iter().map(|w| w.as_slice()),
    );
    if e.rank() != fixed.len() {
        return Err(Error::param("fixed words are linearly dependent"));
    }
    let hits = run_trials(trials, seed, |_, _, rng| {
        let code = sampler(rng)?;
        Ok(fixed.iter().all(|w| code.contains(w)))
    })?;
    let (ell, k, mn) = (fixed.len() as i64, k as i64, ambient.log_q_size() as i64);
    let bound_exponent = (k + ell - mn - 2) * ell + 4 * k - 1;
    Ok(ContainmentEstimate {
        estimate: Estimate::new(hits.iter().filter(|&&h| h).count() as u64, trials),
        bound_exponent,
        bound: (ambient.q() as f64).powi(bound_exponent as i32),
    })
}
