//! Continued fractions of `c/q` and order recovery from a measured outcome.
//!
//! Integer arithmetic only.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A reduced non-negative rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    /// `|self − c/q|` compared as `|num·q − c·den|` (scaled by `den·q`).
    fn cross_gap(&self, c: u64, q: u64) -> u128 {
        let lhs = self.num as u128 * q as u128;
        let rhs = c as u128 * self.den as u128;
        lhs.abs_diff(rhs)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Partial quotients `[a0; a1, a2, …]` and the matching convergents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergentList {
    pub quotients: Vec<u64>,
    pub convergents: Vec<Fraction>,
}

impl ConvergentList {
    /// Evaluates `[a0; a1, …, a_{len−1}]` from the back, independently of the
    /// convergent recurrence.
    pub fn evaluate_prefix(&self, len: usize) -> Option<Fraction> {
        let quotients = self.quotients.get(..len)?;
        let (&last, rest) = quotients.split_last()?;
        // value = num/den
        let (mut num, mut den) = (last as u128, 1u128);
        for &a in rest.iter().rev() {
            // a + 1/(num/den) = (a·num + den)/num
            let next = a as u128 * num + den;
            den = num;
            num = next;
        }
        let g = num.gcd(&den);
        Some(Fraction {
            num: (num / g) as u64,
            den: (den / g) as u64,
        })
    }

    pub fn contains(&self, f: Fraction) -> bool {
        self.convergents.contains(&f)
    }
}

/// Euclidean expansion of `c/q`.
pub fn continued_fraction(c: u64, q: u64) -> Result<ConvergentList> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let (mut num, mut den) = (c as u128, q as u128);
    // h/k recurrences seeded with h_{-1}/k_{-1} = 1/0 and h_{-2}/k_{-2} = 0/1.
    let (mut h_prev, mut h_prev2) = (1u128, 0u128);
    let (mut k_prev, mut k_prev2) = (0u128, 1u128);
    loop {
        let a = num / den;
        quotients.push(a as u64);
        let h = a * h_prev + h_prev2;
        let k = a * k_prev + k_prev2;
        convergents.push(Fraction {
            num: h as u64,
            den: k as u64,
        });
        (h_prev2, h_prev) = (h_prev, h);
        (k_prev2, k_prev) = (k_prev, k);
        let rem = num - a * den;
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
    }
    Ok(ConvergentList {
        quotients,
        convergents,
    })
}

/// The convergent `d/r` of `c/q` with the largest `r < n` satisfying
/// `|c/q − d/r| ≤ 1/(2q)`, tested as `2·|c·r − d·q| ≤ r`.
///
/// `c = 0` yields `(0, 1)`.
pub fn recover_order(c: u64, q: u64, n: u64) -> Option<(u64, u64)> {
    let list = continued_fraction(c, q).ok()?;
    list.convergents
        .iter()
        .filter(|f| f.den < n && 2 * f.cross_gap(c, q) <= f.den as u128)
        .max_by_key(|f| f.den)
        .map(|f| (f.num, f.den))
}

/// Whether `1/(2q) ≤ 1/(2n²) < 1/(2r²)` holds, compared exactly.
pub fn verify_bound_chain(q: u64, n: u64, r: u64) -> bool {
    if q == 0 || n == 0 || r == 0 {
        return false;
    }
    let (q, n, r) = (q as u128, n as u128, r as u128);
    let first = 2 * n * n <= 2 * q;
    let second = 2 * r * r < 2 * n * n;
    first && second
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: u64, d: u64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn expansions() {
        let cf = continued_fraction(64, 256).unwrap();
        assert_eq!(cf.quotients, vec![0, 4]);
        assert_eq!(cf.convergents, vec![frac(0, 1), frac(1, 4)]);

        let cf = continued_fraction(0, 256).unwrap();
        assert_eq!(cf.quotients, vec![0]);
        assert_eq!(cf.convergents, vec![frac(0, 1)]);

        let cf = continued_fraction(192, 256).unwrap();
        assert_eq!(cf.convergents.last(), Some(&frac(3, 4)));

        // 85/512 = [0; 6, 42, 2]
        let cf = continued_fraction(85, 512).unwrap();
        assert_eq!(cf.quotients, vec![0, 6, 42, 2]);
        assert_eq!(cf.convergents[1], frac(1, 6));
        assert_eq!(cf.convergents.last(), Some(&frac(85, 512)));

        assert_eq!(continued_fraction(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn prefixes_evaluate_to_convergents() {
        for q in 1..200u64 {
            for c in 0..q {
                let cf = continued_fraction(c, q).unwrap();
                for (i, conv) in cf.convergents.iter().enumerate() {
                    assert_eq!(cf.evaluate_prefix(i + 1), Some(*conv));
                }
                assert_eq!(*cf.convergents.last().unwrap(), frac(c, q));
                for w in cf.convergents[1..].windows(2) {
                    assert!(w[0].den < w[1].den);
                }
            }
        }
    }

    #[test]
    fn recover_examples() {
        assert_eq!(recover_order(64, 256, 15), Some((1, 4)));
        assert_eq!(recover_order(192, 256, 15), Some((3, 4)));
        assert_eq!(recover_order(0, 256, 15), Some((0, 1)));
        assert_eq!(recover_order(128, 256, 15), Some((1, 2)));
        // Near-peak for r = 6, q = 512.
        assert_eq!(recover_order(85, 512, 21), Some((1, 6)));
    }

    #[test]
    fn recover_respects_denominator_ceiling() {
        // 1/4 is the only qualifying convergent and n = 4 excludes it.
        assert_eq!(recover_order(64, 256, 4), None);
        // Far from any small-denominator fraction.
        assert_eq!(recover_order(100, 256, 15), None);
        assert_eq!(recover_order(37, 256, 15), Some((1, 7)));
    }

    #[test]
    fn bound_chain() {
        assert!(verify_bound_chain(256, 15, 4));
        assert!(!verify_bound_chain(8, 15, 4));
        for n in 2..50u64 {
            assert!(verify_bound_chain(n * n, n, n - 1));
            assert!(!verify_bound_chain(n * n, n, n));
            assert!(!verify_bound_chain(n * n - 1, n, 1));
        }
    }
}
