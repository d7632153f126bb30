//! Modular exponentiation, classically and on the two-register state.
//!
//! [`modexp_circuit`] builds `(1/√q) Σ_a |a⟩|x^a mod n⟩` with one controlled
//! multiplication stage per register-1 qubit. [`modexp_oracle`] writes the same
//! state directly from classical arithmetic, and [`claim_audit`] compares the
//! two alongside the per-term invocation count `q − 1`.

use num_complex::Complex64;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{self, CircuitStats};
use crate::state::{RegisterLayout, StateVector};

/// Amplitude tolerance for circuit/oracle equality.
pub const EQUALITY_TOLERANCE: f64 = 1e-10;

/// Random subsets checked by [`claim_audit`]'s linearity pass.
pub const LINEARITY_SUBSETS: usize = 20;

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `x^e mod n`, scanning the bits of `e` from the least significant end and
/// multiplying in the running square `x^(2^i)` wherever bit `i` is set.
pub fn modpow(x: u64, e: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Modulus(n));
    }
    let mut power = 1u64;
    let mut square = x % n;
    let mut rest = e;
    while rest != 0 {
        if rest & 1 == 1 {
            power = mulmod(power, square, n);
        }
        square = mulmod(square, square, n);
        rest >>= 1;
    }
    Ok(power)
}

fn require_coprime(x: u64, n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Modulus(n));
    }
    let gcd = x.gcd(&n);
    if gcd != 1 {
        return Err(Error::NotCoprime { x, n, gcd });
    }
    Ok(())
}

/// Least `r ≥ 1` with `x^r ≡ 1 (mod n)`, by walking the powers of `x`.
pub fn order_bruteforce(x: u64, n: u64) -> Result<u64> {
    require_coprime(x, n)?;
    let x = x % n;
    let mut value = x;
    let mut r = 1;
    while value != 1 {
        value = mulmod(value, x, n);
        r += 1;
    }
    Ok(r)
}

/// `x^(2^i) mod n` for `i < t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareTable {
    pub x: u64,
    pub n: u64,
    pub entries: Vec<u64>,
}

impl SquareTable {
    /// Product of the entries selected by the set bits of `a`.
    pub fn power(&self, a: u64) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(i, _)| (a >> i) & 1 == 1)
            .fold(1 % self.n, |acc, (_, &e)| mulmod(acc, e, self.n))
    }
}

pub fn precompute_squares(x: u64, n: u64, t: usize) -> Result<SquareTable> {
    require_coprime(x, n)?;
    let mut entries = Vec::with_capacity(t);
    let mut square = x % n;
    for _ in 0..t {
        entries.push(square);
        square = mulmod(square, square, n);
    }
    Ok(SquareTable { x, n, entries })
}

fn check_modulus_width(layout: RegisterLayout, n: u64) -> Result<()> {
    let ell = layout.ell();
    if n >= (1u64 << ell) {
        return Err(Error::ModulusTooWide { n, ell });
    }
    Ok(())
}

/// Runs the `t` controlled multiplication stages on an existing state.
///
/// Stage `i` multiplies register-2 by `x^(2^i) mod n` when register-1 bit `i` is set.
pub fn apply_modexp_stages(
    state: &mut StateVector,
    x: u64,
    n: u64,
    stats: &mut CircuitStats,
) -> Result<()> {
    let layout = state.layout();
    check_modulus_width(layout, n)?;
    let table = precompute_squares(x, n, layout.t())?;
    for (i, &factor) in table.entries.iter().enumerate() {
        let p = gates::mod_mult_perm(factor, n, layout.ell())?;
        gates::apply_controlled_permutation(state, i, &p, stats)?;
    }
    Ok(())
}

/// Hadamards on register-1 of `|0⟩|1⟩`, then the staged controlled multiplications.
pub fn modexp_circuit(layout: RegisterLayout, x: u64, n: u64) -> Result<(StateVector, CircuitStats)> {
    require_coprime(x, n)?;
    check_modulus_width(layout, n)?;
    let mut stats = CircuitStats::default();
    let mut state = StateVector::uniform_first_register_counted(layout, 1, &mut stats)?;
    apply_modexp_stages(&mut state, x, n, &mut stats)?;
    Ok((state, stats))
}

/// Direct fill of `(1/√q) Σ_a |a⟩|x^a mod n⟩`.
pub fn modexp_oracle(layout: RegisterLayout, x: u64, n: u64) -> Result<StateVector> {
    require_coprime(x, n)?;
    check_modulus_width(layout, n)?;
    let amp = Complex64::new(1.0 / (layout.q() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let x = x % n;
    let mut power = 1 % n;
    for a in 0..layout.q() {
        amps[layout.index(a, power as usize)] = amp;
        power = mulmod(power, x, n);
    }
    StateVector::from_amplitudes(layout, amps)
}

/// Side-by-side measurement of the staged construction against the
/// per-term invocation count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub n: u64,
    pub x: u64,
    /// Register-1 width, i.e. the number of stages the construction needs.
    pub t: usize,
    pub ell: usize,
    pub q: u64,
    /// `q − 1`: applications of `U` needed for the top term if each `|a⟩`
    /// received `a` separate invocations.
    pub claimed_invocations: u64,
    /// Controlled stages actually applied.
    pub stage_applications: u64,
    pub amplitude_operations: u64,
    pub max_amplitude_deviation: f64,
    pub equal: bool,
    pub linearity_subsets: usize,
    pub linearity_max_deviation: f64,
    pub linearity_ok: bool,
}

/// Random nonempty subsets of `[0, q)`, drawn deterministically from `(n, x, t)`.
fn audit_subsets(layout: RegisterLayout, x: u64, n: u64) -> Vec<Vec<usize>> {
    let seed = n
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(x.rotate_left(21))
        .wrapping_add(layout.t() as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = layout.q();
    let all: Vec<usize> = (0..q).collect();
    let mut subsets = Vec::with_capacity(LINEARITY_SUBSETS + 1);
    // Singleton: the single pure-state input (a, 1) → (a, x^a).
    subsets.push(vec![rng.gen_range(0..q)]);
    while subsets.len() < LINEARITY_SUBSETS + 1 {
        let size = rng.gen_range(1..=q);
        let mut s: Vec<usize> = all.choose_multiple(&mut rng, size).copied().collect();
        s.sort_unstable();
        subsets.push(s);
    }
    subsets
}

fn subset_state(layout: RegisterLayout, subset: &[usize], value_of: impl Fn(usize) -> usize) -> StateVector {
    let amp = Complex64::new(1.0 / (subset.len() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for &a in subset {
        amps[layout.index(a, value_of(a))] = amp;
    }
    StateVector::from_amplitudes(layout, amps).expect("subset superposition is normalized")
}

/// Largest deviation over the subset superpositions `(1/√|S|) Σ_{a∈S} |a⟩|1⟩`
/// pushed through the stages, compared with `(1/√|S|) Σ_{a∈S} |a⟩|x^a⟩`.
pub fn subset_linearity_deviation(
    layout: RegisterLayout,
    x: u64,
    n: u64,
    subset: &[usize],
) -> Result<f64> {
    require_coprime(x, n)?;
    check_modulus_width(layout, n)?;
    if subset.is_empty() || subset.iter().any(|&a| a >= layout.q()) {
        return Err(Error::Invariant("subset must be nonempty and inside register-1"));
    }
    let mut state = subset_state(layout, subset, |_| 1);
    apply_modexp_stages(&mut state, x, n, &mut CircuitStats::default())?;
    let expected = subset_state(layout, subset, |a| {
        modpow(x, a as u64, n).expect("modulus validated") as usize
    });
    Ok(state.max_deviation(&expected))
}

pub fn claim_audit(layout: RegisterLayout, x: u64, n: u64) -> Result<AuditReport> {
    let (circuit, stats) = modexp_circuit(layout, x, n)?;
    let oracle = modexp_oracle(layout, x, n)?;
    let deviation = circuit.max_deviation(&oracle);

    let subsets = audit_subsets(layout, x, n);
    let mut linearity = 0.0f64;
    for s in &subsets {
        linearity = linearity.max(subset_linearity_deviation(layout, x, n, s)?);
    }

    let q = layout.q() as u64;
    Ok(AuditReport {
        n,
        x,
        t: layout.t(),
        ell: layout.ell(),
        q,
        claimed_invocations: q - 1,
        stage_applications: stats.controlled_stage_applications,
        amplitude_operations: stats.amplitude_operations,
        max_amplitude_deviation: deviation,
        equal: deviation < EQUALITY_TOLERANCE,
        linearity_subsets: subsets.len(),
        linearity_max_deviation: linearity,
        linearity_ok: linearity < EQUALITY_TOLERANCE,
    })
}
