//! Register-1 outcome distributions after modular exponentiation and the
//! Fourier transform.
//!
//! The joint probability of `|c, x^k⟩` only depends on how many exponents
//! `a < q` fall in the residue class `k mod r`. With `m` such exponents and
//! `θ = rc/q`, the amplitude sum is a geometric series of modulus
//! `|sin(πmθ)/sin(πθ)|`, or exactly `m` when `θ` is an integer.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modexp::{modexp_circuit, modpow, order_bruteforce};
use crate::qft::{qft_first_register, QftMode};
use crate::state::RegisterLayout;

/// Outcome distribution over `(c, k)`, `0 ≤ c < q`, `0 ≤ k < r`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    pub n: u64,
    pub x: u64,
    pub q: usize,
    /// Order of `x` modulo `n`.
    pub r: u64,
    /// Row-major `q × r`.
    joint: Vec<f64>,
    pub marginal: Vec<f64>,
}

impl OutcomeDistribution {
    fn from_joint(n: u64, x: u64, q: usize, r: u64, joint: Vec<f64>) -> Self {
        let marginal = joint.chunks_exact(r as usize).map(|row| row.iter().sum()).collect();
        Self {
            n,
            x,
            q,
            r,
            joint,
            marginal,
        }
    }

    pub fn joint(&self, c: usize, k: usize) -> f64 {
        self.joint[c * self.r as usize + k]
    }

    pub fn joint_values(&self) -> &[f64] {
        &self.joint
    }

    pub fn total(&self) -> f64 {
        self.joint.iter().sum()
    }

    /// Largest entrywise difference of the joint tables; infinite if shapes differ.
    pub fn max_joint_difference(&self, other: &OutcomeDistribution) -> f64 {
        if self.q != other.q || self.r != other.r {
            return f64::INFINITY;
        }
        self.joint
            .iter()
            .zip(&other.joint)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `|Σ_{b<m} exp(2πi·b·j/q)|`, with the argument of the numerator reduced exactly.
fn geometric_modulus(m: u64, j: u64, q: u64) -> f64 {
    if j == 0 {
        return m as f64;
    }
    let numer_turns = ((m as u128 * j as u128) % (2 * q as u128)) as f64;
    let numer = (PI * numer_turns / q as f64).sin();
    let denom = (PI * j as f64 / q as f64).sin();
    (numer / denom).abs()
}

/// Number of `a` in `[0, q)` with `a ≡ k (mod r)`.
fn class_size(q: u64, r: u64, k: u64) -> u64 {
    if k >= q {
        0
    } else {
        (q - k).div_ceil(r)
    }
}

fn require_power_of_two(q: usize) -> Result<()> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::TransformSize(q));
    }
    Ok(())
}

/// Exact distribution from the closed-form sums.
pub fn analytic_distribution(n: u64, x: u64, q: usize) -> Result<OutcomeDistribution> {
    require_power_of_two(q)?;
    let r = order_bruteforce(x, n)?;
    let (q64, width) = (q as u64, r as usize);
    let sizes: Vec<u64> = (0..r).map(|k| class_size(q64, r, k)).collect();
    let norm = 1.0 / (q as f64 * q as f64);

    let mut joint = vec![0.0; q * width];
    let fill = |(c, row): (usize, &mut [f64])| {
        let j = ((r as u128 * c as u128) % q as u128) as u64;
        for (p, &m) in row.iter_mut().zip(&sizes) {
            let s = geometric_modulus(m, j, q64);
            *p = s * s * norm;
        }
    };
    if q * width >= 1 << 14 {
        joint.par_chunks_mut(width).enumerate().for_each(fill);
    } else {
        joint.chunks_mut(width).enumerate().for_each(fill);
    }
    Ok(OutcomeDistribution::from_joint(n, x, q, r, joint))
}

/// Distribution read off a simulated state: staged modexp, fast transform,
/// then `|amp(c, x^k mod n)|²`.
pub fn simulated_distribution(n: u64, x: u64, t: usize, ell: usize) -> Result<OutcomeDistribution> {
    simulated_distribution_in(RegisterLayout::new(t, ell)?, x, n)
}

pub fn simulated_distribution_in(layout: RegisterLayout, x: u64, n: u64) -> Result<OutcomeDistribution> {
    let (mut state, _) = modexp_circuit(layout, x, n)?;
    qft_first_register(&mut state, QftMode::Fast)?;
    let r = order_bruteforce(x, n)?;
    let cycle: Vec<usize> = (0..r)
        .map(|k| modpow(x, k, n).map(|v| v as usize))
        .collect::<Result<_>>()?;
    let q = layout.q();
    let mut joint = vec![0.0; q * r as usize];
    for (c, row) in joint.chunks_exact_mut(r as usize).enumerate() {
        for (p, &y) in row.iter_mut().zip(&cycle) {
            *p = state.amplitude(c, y).norm_sqr();
        }
    }
    Ok(OutcomeDistribution::from_joint(n, x, q, r, joint))
}

/// Result of checking `P(c, k) > 1/(3r²)` on every `c` within `r/2` of a multiple of `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakBoundReport {
    pub n: u64,
    pub x: u64,
    pub q: usize,
    pub r: u64,
    /// Whether `q ≥ n²`, the regime in which the bound is claimed.
    pub q_at_least_n_squared: bool,
    pub qualifying: Vec<usize>,
    /// Minimum of `3r²·P(c, k)` over qualifying `c` and all `k`.
    pub min_ratio: f64,
    pub passed: bool,
}

/// `c` admits an integer `d` with `|dq − rc| ≤ r/2`.
pub fn qualifies(c: usize, q: usize, r: u64) -> bool {
    let (rc, q) = (r as i128 * c as i128, q as i128);
    let d = (2 * rc + q).div_euclid(2 * q);
    2 * (d * q - rc).abs() <= r as i128
}

pub fn peak_bound_check(n: u64, x: u64, q: usize) -> Result<PeakBoundReport> {
    let dist = analytic_distribution(n, x, q)?;
    let r = dist.r;
    let qualifying: Vec<usize> = (0..q).filter(|&c| qualifies(c, q, r)).collect();
    let scale = 3.0 * (r as f64) * (r as f64);
    let min_ratio = qualifying
        .iter()
        .flat_map(|&c| (0..r as usize).map(move |k| (c, k)))
        .map(|(c, k)| dist.joint(c, k) * scale)
        .fold(f64::INFINITY, f64::min);
    Ok(PeakBoundReport {
        n,
        x,
        q,
        r,
        q_at_least_n_squared: (q as u128) >= (n as u128) * (n as u128),
        passed: !qualifying.is_empty() && min_ratio > 1.0,
        qualifying,
        min_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Direct summation of the amplitude over the residue class.
    fn brute_joint(n: u64, x: u64, q: usize, c: usize, k: usize) -> f64 {
        let target = modpow(x, k as u64, n).unwrap();
        let sum: Complex64 = (0..q)
            .filter(|&a| modpow(x, a as u64, n).unwrap() == target)
            .map(|a| Complex64::from_polar(1.0, 2.0 * PI * ((a * c) % q) as f64 / q as f64))
            .sum();
        (sum / q as f64).norm_sqr()
    }

    #[test]
    fn closed_form_matches_direct_summation() {
        for (n, x, q) in [(15, 7, 64), (21, 2, 128), (35, 3, 64), (33, 5, 32)] {
            let d = analytic_distribution(n, x, q).unwrap();
            for c in 0..q {
                for k in 0..d.r as usize {
                    let want = brute_joint(n, x, q, c, k);
                    assert!((d.joint(c, k) - want).abs() < 1e-12, "({n},{x},{q}) c={c} k={k}");
                }
            }
        }
    }

    #[test]
    fn fifteen_seven_exact_peaks() {
        let d = analytic_distribution(15, 7, 256).unwrap();
        assert_eq!(d.r, 4);
        for c in 0..256 {
            let peak = c % 64 == 0;
            for k in 0..4 {
                let want = if peak { 1.0 / 16.0 } else { 0.0 };
                assert!((d.joint(c, k) - want).abs() < 1e-12);
            }
            assert!((d.marginal[c] - if peak { 0.25 } else { 0.0 }).abs() < 1e-12);
        }
        assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fifteen_eleven_and_order_one() {
        let d = analytic_distribution(15, 11, 256).unwrap();
        for (c, p) in d.marginal.iter().enumerate() {
            let want = if c % 128 == 0 { 0.5 } else { 0.0 };
            assert!((p - want).abs() < 1e-12);
        }
        let d = analytic_distribution(15, 1, 64).unwrap();
        assert!((d.marginal[0] - 1.0).abs() < 1e-12);
        assert!(d.marginal[1..].iter().all(|p| p.abs() < 1e-12));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            analytic_distribution(15, 3, 256).unwrap_err(),
            Error::NotCoprime { x: 3, n: 15, gcd: 3 }
        );
        assert_eq!(analytic_distribution(15, 7, 100).unwrap_err(), Error::TransformSize(100));
    }

    #[test]
    fn simulated_matches_analytic() {
        let sim = simulated_distribution(15, 7, 8, 4).unwrap();
        let exact = analytic_distribution(15, 7, 256).unwrap();
        assert!(sim.max_joint_difference(&exact) < 1e-9);

        let sim = simulated_distribution(15, 7, 3, 4).unwrap();
        for (c, p) in sim.marginal.iter().enumerate() {
            let want = if c % 2 == 0 { 0.25 } else { 0.0 };
            assert!((p - want).abs() < 1e-12);
        }

        let sim = simulated_distribution(15, 11, 1, 4).unwrap();
        let exact = analytic_distribution(15, 11, 2).unwrap();
        assert!(sim.max_joint_difference(&exact) < 1e-9);
    }

    #[test]
    fn exact_divisibility_support() {
        for (n, x) in [(15u64, 2u64), (15, 4), (17 * 3, 2), (63, 2)] {
            let r = order_bruteforce(x, n).unwrap() as usize;
            if !r.is_power_of_two() {
                continue;
            }
            let q = 1024;
            let d = analytic_distribution(n, x, q).unwrap();
            for (c, p) in d.marginal.iter().enumerate() {
                let want = if c % (q / r) == 0 { 1.0 / r as f64 } else { 0.0 };
                assert!((p - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qualifying_set() {
        assert!(qualifies(64, 256, 4));
        assert!(!qualifies(65, 256, 4));
        // r = 6, q = 512: c = 85 gives 6·85 = 510, d = 1, |512 − 510| = 2 ≤ 3.
        assert!(qualifies(85, 512, 6));
        assert!(!qualifies(84, 512, 6));
    }

    #[test]
    fn peak_bound_examples() {
        let rep = peak_bound_check(15, 7, 256).unwrap();
        assert_eq!(rep.qualifying, vec![0, 64, 128, 192]);
        assert!((rep.min_ratio - 3.0).abs() < 1e-12);
        assert!(rep.passed);

        let rep = peak_bound_check(15, 11, 256).unwrap();
        assert!((rep.min_ratio - 3.0).abs() < 1e-12);
        assert!(rep.passed);

        let rep = peak_bound_check(21, 2, 512).unwrap();
        assert_eq!(rep.r, 6);
        assert!(rep.passed && rep.q_at_least_n_squared);
        assert!(rep.min_ratio > 1.0 && rep.min_ratio < 3.0);
    }
}
