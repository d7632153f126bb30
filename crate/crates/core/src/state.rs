//! Dense two-register state vectors.
//!
//! A basis state `|a⟩|y⟩` lives at index `a·2^ell + y`: register-1 (the
//! exponent register, `t` qubits) occupies the high-order bits and
//! register-2 (the work register, `ell` qubits) the low-order bits. Qubit
//! `k` of the whole state is bit `k` of the basis index, so register-1
//! qubit `i` is global qubit `ell + i`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{self, CircuitStats, Gate2};

/// Default ceiling on `t + ell`. 2^26 complex doubles is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Tolerance on `Σ|amp|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Qubit widths of the two registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegisterLayout {
    t: usize,
    ell: usize,
}

impl RegisterLayout {
    pub fn new(t: usize, ell: usize) -> Result<Self> {
        Self::with_max_qubits(t, ell, DEFAULT_MAX_QUBITS)
    }

    pub fn with_max_qubits(t: usize, ell: usize, max_qubits: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidLayout {
                t,
                ell,
                reason: "register-1 needs at least one qubit",
            });
        }
        if ell == 0 {
            return Err(Error::InvalidLayout {
                t,
                ell,
                reason: "register-2 needs at least one qubit",
            });
        }
        // Hard limit of the index type regardless of the configured maximum.
        let limit = max_qubits.min(usize::BITS as usize - 2);
        if t + ell > limit {
            return Err(Error::CapacityExceeded {
                requested: t + ell,
                max: limit,
            });
        }
        Ok(Self { t, ell })
    }

    /// Register-1 width.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Register-2 width.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Register-1 dimension, `2^t`.
    pub fn q(&self) -> usize {
        1 << self.t
    }

    /// Register-2 dimension, `2^ell`.
    pub fn dim2(&self) -> usize {
        1 << self.ell
    }

    /// Total dimension `2^(t+ell)`.
    pub fn dim(&self) -> usize {
        1 << (self.t + self.ell)
    }

    pub fn qubits(&self) -> usize {
        self.t + self.ell
    }

    #[inline]
    pub fn index(&self, a: usize, y: usize) -> usize {
        (a << self.ell) | y
    }

    #[inline]
    pub fn decompose(&self, index: usize) -> (usize, usize) {
        (index >> self.ell, index & (self.dim2() - 1))
    }

    /// Global qubit index of register-1 bit `i`.
    pub fn register_one_qubit(&self, i: usize) -> usize {
        self.ell + i
    }
}

/// Register selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Register {
    First,
    Second,
}

/// Born-rule outcome probabilities for one register.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector {
    pub register: Register,
    pub values: Vec<f64>,
}

impl ProbabilityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Draws one outcome by inverse-CDF sampling.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        sample_weights(&self.values, rng)
    }
}

pub(crate) fn sample_weights<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Result<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::Invariant("sampling from an all-zero distribution"));
    }
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_nonzero = i;
            if target < acc {
                return Ok(i);
            }
        }
    }
    // Rounding left `target` past the final partial sum.
    Ok(last_nonzero)
}

/// A normalized pure state over a [`RegisterLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|a⟩|y⟩`.
    pub fn basis(layout: RegisterLayout, a: usize, y: usize) -> Result<Self> {
        if a >= layout.q() {
            return Err(Error::RegisterRange {
                value: a as u64,
                width: layout.t(),
            });
        }
        if y >= layout.dim2() {
            return Err(Error::RegisterRange {
                value: y as u64,
                width: layout.ell(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amps[layout.index(a, y)] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amps })
    }

    /// Wraps raw amplitudes; rejects wrong lengths and unnormalized input.
    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amps.len(),
            });
        }
        let state = Self { layout, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// `(1/√q) Σ_a |a⟩|y0⟩`, prepared by a Hadamard on every register-1 qubit of `|0⟩|y0⟩`.
    pub fn uniform_first_register(layout: RegisterLayout, y0: usize) -> Result<Self> {
        Self::uniform_first_register_counted(layout, y0, &mut CircuitStats::default())
    }

    pub(crate) fn uniform_first_register_counted(
        layout: RegisterLayout,
        y0: usize,
        stats: &mut CircuitStats,
    ) -> Result<Self> {
        let mut state = Self::basis(layout, 0, y0)?;
        let h = Gate2::hadamard();
        for i in 0..layout.t() {
            gates::apply_single_qubit(&mut state, &h, layout.register_one_qubit(i), stats)?;
        }
        Ok(state)
    }

    /// Same state as [`uniform_first_register`](Self::uniform_first_register), filled directly.
    pub fn uniform_first_register_direct(layout: RegisterLayout, y0: usize) -> Result<Self> {
        if y0 >= layout.dim2() {
            return Err(Error::RegisterRange {
                value: y0 as u64,
                width: layout.ell(),
            });
        }
        let amp = Complex64::new(1.0 / (layout.q() as f64).sqrt(), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        for a in 0..layout.q() {
            amps[layout.index(a, y0)] = amp;
        }
        Ok(Self { layout, amps })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amplitude(&self, a: usize, y: usize) -> Complex64 {
        self.amps[self.layout.index(a, y)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(u, v)| u.conj() * v)
            .sum()
    }

    /// Largest entrywise `|self_i − other_i|`. Infinite on layout mismatch.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        if self.layout != other.layout {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max)
    }

    /// Probability of each value of one register, summed over the other.
    pub fn marginal(&self, which: Register) -> ProbabilityVector {
        let layout = self.layout;
        let mut values = match which {
            Register::First => vec![0.0; layout.q()],
            Register::Second => vec![0.0; layout.dim2()],
        };
        for (a, slice) in self.amps.chunks_exact(layout.dim2()).enumerate() {
            match which {
                Register::First => values[a] = slice.iter().map(|z| z.norm_sqr()).sum(),
                Register::Second => {
                    for (y, z) in slice.iter().enumerate() {
                        values[y] += z.norm_sqr();
                    }
                }
            }
        }
        ProbabilityVector {
            register: which,
            values,
        }
    }

    /// Samples one register and returns the value with the collapsed, renormalized state.
    pub fn measure<R: Rng + ?Sized>(
        &self,
        which: Register,
        rng: &mut R,
    ) -> Result<(usize, StateVector)> {
        let marginal = self.marginal(which);
        let value = marginal.sample(rng)?;
        let p = marginal.values[value];
        if p <= 0.0 {
            return Err(Error::Invariant("measured an outcome of zero probability"));
        }
        let scale = 1.0 / p.sqrt();
        let layout = self.layout;
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let (a, y) = layout.decompose(i);
                let keep = match which {
                    Register::First => a == value,
                    Register::Second => y == value,
                };
                if keep {
                    z * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((value, StateVector { layout, amps }))
    }
}

/// Kronecker product of two amplitude vectors: entry `i·len(v) + j` is `u_i·v_j`.
pub fn tensor(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for ui in u {
        out.extend(v.iter().map(|vj| ui * vj));
    }
    out
}
