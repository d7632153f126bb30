//! End-to-end factoring runs, demonstration audits and success-rate sweeps.

use num_integer::Integer;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cfrac::recover_order;
use crate::error::{Error, Result};
use crate::gates::CircuitStats;
use crate::modexp::{modexp_circuit, modpow, order_bruteforce};
use crate::qft::{qft_first_register, QftMode};
use crate::spectrum::{analytic_distribution, OutcomeDistribution};
use crate::state::{sample_weights, Register, RegisterLayout, DEFAULT_MAX_QUBITS};

/// Register-1 width and size with `n² ≤ q = 2^s < 2n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QChoice {
    pub s: usize,
    pub q: u64,
}

/// The unique `s` with `n² ≤ 2^s < 2n²`.
pub fn choose_q(n: u64) -> Result<QChoice> {
    if n < 2 {
        return Err(Error::Modulus(n));
    }
    if n >= 1 << 31 {
        return Err(Error::CapacityExceeded {
            requested: 64,
            max: 63,
        });
    }
    let square = n * n;
    let s = (u64::BITS - (square - 1).leading_zeros()) as usize;
    Ok(QChoice { s, q: 1 << s })
}

/// Bits needed to hold `n`; the register-2 width.
pub fn bit_length(n: u64) -> usize {
    (u64::BITS - n.leading_zeros()) as usize
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `(base, exponent)` with `base^exponent = n` and the largest such exponent ≥ 2.
pub fn perfect_power(n: u64) -> Option<(u64, u32)> {
    if n < 4 {
        return None;
    }
    for k in (2..=bit_length(n) as u32).rev() {
        let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
        for base in guess.saturating_sub(1).max(2)..=guess + 1 {
            match (base as u128).checked_pow(k) {
                Some(p) if p == n as u128 => return Some((base, k)),
                _ => {}
            }
        }
    }
    None
}

/// Where sampled outcomes come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingSource {
    /// Rebuild the state, transform, and measure register-1 for every sample.
    #[default]
    Simulated,
    /// Draw from the closed-form register-1 marginal.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorConfig {
    pub n: u64,
    pub x: Option<u64>,
    pub s_override: Option<usize>,
    pub seed: u64,
    pub max_samples: usize,
    /// Bases tried when `x` is not fixed.
    pub trials: usize,
    pub max_qubits: usize,
    pub source: SamplingSource,
}

impl ShorConfig {
    pub fn new(n: u64, seed: u64) -> Self {
        Self {
            n,
            x: None,
            s_override: None,
            seed,
            max_samples: 16,
            trials: 8,
            max_qubits: DEFAULT_MAX_QUBITS,
            source: SamplingSource::Simulated,
        }
    }

    pub fn with_base(mut self, x: u64) -> Self {
        self.x = Some(x);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `n` is even.
    EvenModulus,
    /// `n = b^k`.
    PerfectPower,
    /// `gcd(x, n) > 1`.
    SharedFactor,
    /// Order finding on the simulated register.
    OrderFinding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    OddOrder,
    TrivialRoot,
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SampleStatus {
    /// No convergent with denominator below `n` lies within `1/(2q)`.
    NoCandidate,
    /// Candidate `r` failed `x^r ≡ 1`, alone and combined with earlier candidates.
    Rejected,
    Verified,
    /// `lcm(r, partner)` passed the check.
    VerifiedByLcm { partner: u64, lcm: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub c: u64,
    pub d: Option<u64>,
    pub r: Option<u64>,
    #[serde(flatten)]
    pub status: SampleStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShorReport {
    pub n: u64,
    pub x: Option<u64>,
    pub s: usize,
    pub q: u64,
    pub ell: usize,
    pub method: Method,
    pub source: SamplingSource,
    pub bases_tried: Vec<u64>,
    pub samples: Vec<SampleRecord>,
    pub verified_r: Option<u64>,
    /// `x^(r/2) mod n` for even `r`.
    pub half_power: Option<u64>,
    /// Sorted pair multiplying to `n`.
    pub factors: Option<[u64; 2]>,
    pub stats: CircuitStats,
    pub outcome: Outcome,
}

fn factor_pair(f: u64, n: u64) -> [u64; 2] {
    let g = n / f;
    [f.min(g), f.max(g)]
}

/// Shrinks a multiple of the order of `x` down to the order itself.
fn reduce_to_order(x: u64, n: u64, mut r: u64) -> u64 {
    let mut rest = r;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            while r % p == 0 && modpow(x, r / p, n) == Ok(1) {
                r /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        while r % rest == 0 && modpow(x, r / rest, n) == Ok(1) {
            r /= rest;
        }
    }
    r
}

/// Everything the sampling loop observed for one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSearch {
    pub samples: Vec<SampleRecord>,
    pub verified_r: Option<u64>,
    pub stats: CircuitStats,
}

/// Samples register-1 outcomes for one `(n, x, s)` and recovers the order.
#[derive(Debug, Clone)]
pub struct OrderFinder {
    n: u64,
    x: u64,
    layout: RegisterLayout,
    source: SamplingSource,
    analytic: Option<OutcomeDistribution>,
}

impl OrderFinder {
    pub fn new(n: u64, x: u64, s: usize, source: SamplingSource, max_qubits: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Modulus(n));
        }
        let gcd = x.gcd(&n);
        if gcd != 1 {
            return Err(Error::NotCoprime { x, n, gcd });
        }
        let layout = RegisterLayout::with_max_qubits(s, bit_length(n), max_qubits)?;
        let analytic = match source {
            SamplingSource::Analytic => Some(analytic_distribution(n, x, layout.q())?),
            SamplingSource::Simulated => None,
        };
        Ok(Self {
            n,
            x,
            layout,
            source,
            analytic,
        })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn source(&self) -> SamplingSource {
        self.source
    }

    /// One register-1 outcome `c`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, stats: &mut CircuitStats) -> Result<u64> {
        match &self.analytic {
            Some(dist) => Ok(sample_weights(&dist.marginal, rng)? as u64),
            None => {
                let (mut state, run) = modexp_circuit(self.layout, self.x, self.n)?;
                *stats += run;
                qft_first_register(&mut state, QftMode::Fast)?;
                let (c, _) = state.measure(Register::First, rng)?;
                Ok(c as u64)
            }
        }
    }

    pub fn search<R: Rng + ?Sized>(&self, max_samples: usize, rng: &mut R) -> Result<OrderSearch> {
        let (n, x, q) = (self.n, self.x, self.layout.q() as u64);
        let mut stats = CircuitStats::default();
        let mut samples = Vec::new();
        let mut candidates: Vec<u64> = Vec::new();
        let mut verified_r = None;

        for _ in 0..max_samples {
            let c = self.sample(rng, &mut stats)?;
            let Some((d, r)) = recover_order(c, q, n) else {
                samples.push(SampleRecord {
                    c,
                    d: None,
                    r: None,
                    status: SampleStatus::NoCandidate,
                });
                continue;
            };
            let mut status = SampleStatus::Rejected;
            if modpow(x, r, n)? == 1 {
                status = SampleStatus::Verified;
                verified_r = Some(reduce_to_order(x, n, r));
            } else {
                for &partner in &candidates {
                    let lcm = r.lcm(&partner);
                    if lcm < n && modpow(x, lcm, n)? == 1 {
                        status = SampleStatus::VerifiedByLcm { partner, lcm };
                        verified_r = Some(reduce_to_order(x, n, lcm));
                        break;
                    }
                }
            }
            samples.push(SampleRecord {
                c,
                d: Some(d),
                r: Some(r),
                status,
            });
            if verified_r.is_some() {
                break;
            }
            if !candidates.contains(&r) {
                candidates.push(r);
            }
        }
        Ok(OrderSearch {
            samples,
            verified_r,
            stats,
        })
    }
}

/// The sampling loop alone: returns an `r` with `x^r ≡ 1 (mod n)`, if one was found.
pub fn order_find<R: Rng + ?Sized>(
    n: u64,
    x: u64,
    s: usize,
    max_samples: usize,
    rng: &mut R,
) -> Result<Option<u64>> {
    let finder = OrderFinder::new(n, x, s, SamplingSource::Simulated, DEFAULT_MAX_QUBITS)?;
    Ok(finder.search(max_samples, rng)?.verified_r)
}

pub fn run_shor(config: &ShorConfig) -> Result<ShorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    run_shor_with_rng(config, &mut rng)
}

pub fn run_shor_with_rng<R: Rng + ?Sized>(config: &ShorConfig, rng: &mut R) -> Result<ShorReport> {
    let n = config.n;
    if n < 2 {
        return Err(Error::Modulus(n));
    }
    if n < 4 {
        return Err(Error::PrimeModulus(n));
    }
    let choice = match config.s_override {
        Some(s) => QChoice {
            s,
            q: 1u64.checked_shl(s as u32).unwrap_or(0),
        },
        None => choose_q(n)?,
    };
    let ell = bit_length(n);
    let classical = |method, x: Option<u64>, factors| ShorReport {
        n,
        x,
        s: choice.s,
        q: choice.q,
        ell,
        method,
        source: config.source,
        bases_tried: x.into_iter().collect(),
        samples: Vec::new(),
        verified_r: None,
        half_power: None,
        factors: Some(factors),
        stats: CircuitStats::default(),
        outcome: Outcome::Success,
    };

    if n % 2 == 0 {
        return Ok(classical(Method::EvenModulus, None, factor_pair(2, n)));
    }
    if is_prime(n) {
        return Err(Error::PrimeModulus(n));
    }
    if let Some((base, _)) = perfect_power(n) {
        return Ok(classical(Method::PerfectPower, None, factor_pair(base, n)));
    }
    if let Some(x) = config.x {
        if x == 0 || x >= n {
            return Err(Error::InvalidBase { x, n });
        }
    }

    let attempts = if config.x.is_some() { 1 } else { config.trials.max(1) };
    let mut bases_tried = Vec::new();
    let mut last = None;
    for _ in 0..attempts {
        let x = match config.x {
            Some(x) => x,
            None => rng.gen_range(2..n - 1),
        };
        bases_tried.push(x);
        let g = x.gcd(&n);
        if g != 1 {
            let mut report = classical(Method::SharedFactor, Some(x), factor_pair(g, n));
            report.bases_tried = bases_tried;
            return Ok(report);
        }

        let finder = OrderFinder::new(n, x, choice.s, config.source, config.max_qubits)?;
        let search = finder.search(config.max_samples, rng)?;
        let mut report = ShorReport {
            n,
            x: Some(x),
            s: choice.s,
            q: choice.q,
            ell,
            method: Method::OrderFinding,
            source: config.source,
            bases_tried: bases_tried.clone(),
            samples: search.samples,
            verified_r: search.verified_r,
            half_power: None,
            factors: None,
            stats: search.stats,
            outcome: Outcome::Exhausted,
        };
        if let Some(r) = search.verified_r {
            if r % 2 == 1 {
                report.outcome = Outcome::OddOrder;
            } else {
                let h = modpow(x, r / 2, n)?;
                report.half_power = Some(h);
                if h == n - 1 {
                    report.outcome = Outcome::TrivialRoot;
                } else {
                    let f = (h + n - 1).gcd(&n);
                    if f <= 1 || f >= n {
                        return Err(Error::Invariant("nontrivial square root gave a trivial gcd"));
                    }
                    report.factors = Some(factor_pair(f, n));
                    report.outcome = Outcome::Success;
                    return Ok(report);
                }
            }
        }
        last = Some(report);
    }
    last.ok_or(Error::Invariant("no base was tried"))
}

/// Register widths used by one published demonstration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoSetup {
    pub label: String,
    pub citation: String,
    pub n: u64,
    pub s1: usize,
    pub s2: usize,
}

impl DemoSetup {
    pub fn new(label: &str, citation: &str, n: u64, s1: usize, s2: usize) -> Self {
        Self {
            label: label.to_string(),
            citation: citation.to_string(),
            n,
            s1,
            s2,
        }
    }
}

/// Register widths reported by four experimental factorizations of 15.
pub fn builtin_demos() -> Vec<DemoSetup> {
    vec![
        DemoSetup::new("IBM 2001", "VS01", 15, 3, 4),
        DemoSetup::new("Queensland 2007", "LW07", 15, 3, 4),
        DemoSetup::new("USTC 2007", "LB07", 15, 2, 4),
        DemoSetup::new("UCSB 2012", "L12", 15, 1, 2),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Compliant,
    ViolatesQBound,
    ViolatesWidth,
    ViolatesBoth,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoAuditRow {
    pub label: String,
    pub citation: String,
    pub n: u64,
    pub s1: usize,
    pub s2: usize,
    /// `n² ≤ 2^s1 < 2n²`.
    pub q_ok: bool,
    /// `2^s2 ≥ n`.
    pub width_ok: bool,
    pub required_s1: usize,
    pub verdict: Verdict,
}

fn pow2(bits: usize) -> Option<u128> {
    1u128.checked_shl(bits as u32).filter(|_| bits < 128)
}

pub fn demo_audit(rows: &[DemoSetup]) -> Result<Vec<DemoAuditRow>> {
    rows.iter()
        .map(|row| {
            let n = row.n as u128;
            let q_ok = pow2(row.s1).is_some_and(|q| n * n <= q && q < 2 * n * n);
            let width_ok = pow2(row.s2).is_none_or(|w| w >= n);
            let verdict = match (q_ok, width_ok) {
                (true, true) => Verdict::Compliant,
                (false, true) => Verdict::ViolatesQBound,
                (true, false) => Verdict::ViolatesWidth,
                (false, false) => Verdict::ViolatesBoth,
            };
            Ok(DemoAuditRow {
                label: row.label.clone(),
                citation: row.citation.clone(),
                n: row.n,
                s1: row.s1,
                s2: row.s2,
                q_ok,
                width_ok,
                required_s1: choose_q(row.n)?.s,
                verdict,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n: u64,
    pub x: u64,
    pub s_values: Vec<usize>,
    pub trials: usize,
    pub max_samples: usize,
    pub source: SamplingSource,
    pub max_qubits: usize,
}

impl SweepConfig {
    pub fn new(n: u64, x: u64, s_values: Vec<usize>, trials: usize) -> Self {
        Self {
            n,
            x,
            s_values,
            trials,
            max_samples: 4,
            source: SamplingSource::Simulated,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub s: usize,
    pub q: u64,
    pub trials: usize,
    /// Trials whose search returned the true order within the sample budget.
    pub successes: usize,
    pub success_rate: f64,
    /// Trials whose first sample alone gave the true order.
    pub first_sample_successes: usize,
    pub first_sample_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub n: u64,
    pub x: u64,
    pub r: u64,
    pub max_samples: usize,
    pub source: SamplingSource,
    pub rows: Vec<SweepRow>,
}

/// Order-recovery success rate per register-1 width. Each trial runs on its
/// own generator seeded from `rng`, so results do not depend on scheduling.
pub fn success_sweep<R: RngCore + ?Sized>(config: &SweepConfig, rng: &mut R) -> Result<SweepTable> {
    let (n, x) = (config.n, config.x);
    let r = order_bruteforce(x, n)?;
    let mut rows = Vec::with_capacity(config.s_values.len());
    for &s in &config.s_values {
        let finder = OrderFinder::new(n, x, s, config.source, config.max_qubits)?;
        let seeds: Vec<u64> = (0..config.trials).map(|_| rng.next_u64()).collect();
        let results = seeds
            .par_iter()
            .map(|&seed| {
                let mut trial_rng = ChaCha8Rng::seed_from_u64(seed);
                let search = finder.search(config.max_samples, &mut trial_rng)?;
                let first = search.samples.first().is_some_and(|sample| {
                    sample.status == SampleStatus::Verified && search.verified_r == Some(r)
                });
                Ok((search.verified_r == Some(r), first))
            })
            .collect::<Result<Vec<_>>>()?;
        let successes = results.iter().filter(|(ok, _)| *ok).count();
        let first_sample_successes = results.iter().filter(|(_, first)| *first).count();
        let denom = config.trials.max(1) as f64;
        rows.push(SweepRow {
            s,
            q: 1 << s,
            trials: config.trials,
            successes,
            success_rate: successes as f64 / denom,
            first_sample_successes,
            first_sample_rate: first_sample_successes as f64 / denom,
        });
    }
    Ok(SweepTable {
        n,
        x,
        r,
        max_samples: config.max_samples,
        source: config.source,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_choices() {
        assert_eq!(choose_q(15).unwrap(), QChoice { s: 8, q: 256 });
        assert_eq!(choose_q(21).unwrap(), QChoice { s: 9, q: 512 });
        assert_eq!(choose_q(2).unwrap(), QChoice { s: 2, q: 4 });
        assert_eq!(choose_q(16).unwrap(), QChoice { s: 8, q: 256 });
        assert_eq!(choose_q(1), Err(Error::Modulus(1)));
    }

    #[test]
    fn classical_helpers() {
        assert_eq!(bit_length(15), 4);
        assert_eq!(bit_length(16), 5);
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(perfect_power(27), Some((3, 3)));
        assert_eq!(perfect_power(225), Some((15, 2)));
        assert_eq!(perfect_power(64), Some((2, 6)));
        assert_eq!(perfect_power(15), None);
    }

    #[test]
    fn reduce_to_order_finds_minimum() {
        for (x, n) in [(7u64, 15u64), (2, 21), (2, 35), (5, 33)] {
            let r = order_bruteforce(x, n).unwrap();
            for k in 1..6 {
                assert_eq!(reduce_to_order(x, n, r * k), r);
            }
        }
    }

    #[test]
    fn fifteen_with_seven() {
        let report = run_shor(&ShorConfig::new(15, 1).with_base(7)).unwrap();
        assert_eq!(report.verified_r, Some(4));
        assert_eq!(report.half_power, Some(4));
        assert_eq!(report.factors, Some([3, 5]));
        assert_eq!(report.outcome, Outcome::Success);
        assert_eq!((report.s, report.q, report.ell), (8, 256, 4));
        assert!(report.samples.len() <= 16);
    }

    #[test]
    fn fifteen_with_eleven_and_fourteen() {
        let report = run_shor(&ShorConfig::new(15, 3).with_base(11)).unwrap();
        assert_eq!(report.verified_r, Some(2));
        assert_eq!(report.half_power, Some(11));
        assert_eq!(report.factors, Some([3, 5]));

        let report = run_shor(&ShorConfig::new(15, 3).with_base(14)).unwrap();
        assert_eq!(report.verified_r, Some(2));
        assert_eq!(report.half_power, Some(14));
        assert_eq!(report.outcome, Outcome::TrivialRoot);
        assert_eq!(report.factors, None);
    }

    #[test]
    fn classical_shortcuts() {
        let report = run_shor(&ShorConfig::new(14, 1)).unwrap();
        assert_eq!(report.method, Method::EvenModulus);
        assert_eq!(report.factors, Some([2, 7]));
        assert!(report.samples.is_empty());

        let report = run_shor(&ShorConfig::new(15, 1).with_base(5)).unwrap();
        assert_eq!(report.method, Method::SharedFactor);
        assert_eq!(report.factors, Some([3, 5]));

        let report = run_shor(&ShorConfig::new(49, 1)).unwrap();
        assert_eq!(report.method, Method::PerfectPower);
        assert_eq!(report.factors, Some([7, 7]));

        assert_eq!(run_shor(&ShorConfig::new(13, 1)), Err(Error::PrimeModulus(13)));
        assert_eq!(run_shor(&ShorConfig::new(3, 1)), Err(Error::PrimeModulus(3)));
        assert_eq!(
            run_shor(&ShorConfig::new(15, 1).with_base(15)),
            Err(Error::InvalidBase { x: 15, n: 15 })
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let mut config = ShorConfig::new(15, 1).with_base(7);
        config.max_qubits = 10;
        assert_eq!(
            run_shor(&config),
            Err(Error::CapacityExceeded {
                requested: 12,
                max: 10
            })
        );
    }

    #[test]
    fn base_one_has_odd_order() {
        let report = run_shor(&ShorConfig::new(15, 9).with_base(1)).unwrap();
        assert_eq!(report.verified_r, Some(1));
        assert_eq!(report.outcome, Outcome::OddOrder);
    }

    #[test]
    fn order_find_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        assert_eq!(order_find(15, 7, 8, 16, &mut rng).unwrap(), Some(4));
        assert_eq!(order_find(15, 4, 8, 16, &mut rng).unwrap(), Some(2));
        assert_eq!(order_find(21, 2, 9, 32, &mut rng).unwrap(), Some(6));
    }

    #[test]
    fn demo_rows() {
        let rows = demo_audit(&builtin_demos()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| !r.q_ok && r.required_s1 == 8));
        assert!(rows[0].width_ok);
        assert!(!rows[3].width_ok);
        assert_eq!(rows[3].verdict, Verdict::ViolatesBoth);
        let ok = demo_audit(&[DemoSetup::new("compliant", "", 15, 8, 4)]).unwrap();
        assert!(ok[0].q_ok && ok[0].width_ok);
        assert_eq!(ok[0].verdict, Verdict::Compliant);
    }

    #[test]
    fn sweep_is_deterministic() {
        let config = SweepConfig::new(15, 7, vec![2, 3, 4], 40);
        let a = success_sweep(&config, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = success_sweep(&config, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.r, 4);
        assert_eq!(a.rows.len(), 3);
    }

    #[test]
    fn analytic_source_also_factors() {
        let mut config = ShorConfig::new(21, 5).with_base(2);
        config.source = SamplingSource::Analytic;
        config.max_samples = 32;
        let report = run_shor(&config).unwrap();
        assert_eq!(report.verified_r, Some(6));
        assert_eq!(report.half_power, Some(8));
        assert_eq!(report.factors, Some([3, 7]));
    }
}
