//! Elementary gates and the controlled register-2 permutation that carries
//! modular multiplication.

use std::ops::AddAssign;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// States at least this large are updated in parallel.
pub(crate) const PARALLEL_MIN_DIM: usize = 1 << 14;

/// Operation counters for one run.
///
/// `controlled_stage_applications` counts controlled-U stages, the
/// granularity at which modular exponentiation is built here.
/// `amplitude_operations` counts amplitude reads plus writes, i.e. the
/// simulation work behind those stages.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CircuitStats {
    pub controlled_stage_applications: u64,
    pub single_qubit_gate_applications: u64,
    pub two_qubit_gate_applications: u64,
    pub amplitude_operations: u64,
}

impl AddAssign for CircuitStats {
    fn add_assign(&mut self, rhs: Self) {
        self.controlled_stage_applications += rhs.controlled_stage_applications;
        self.single_qubit_gate_applications += rhs.single_qubit_gate_applications;
        self.two_qubit_gate_applications += rhs.two_qubit_gate_applications;
        self.amplitude_operations += rhs.amplitude_operations;
    }
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

impl Gate2 {
    pub fn pauli_x() -> Self {
        Gate2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Gate2([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Gate2([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Gate2([[h, h], [h, -h]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Gate2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn matmul(&self, other: &Gate2) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Gate2(out)
    }

    /// Largest entrywise deviation of `G·G†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.matmul(&self.adjoint()).0;
        let mut err: f64 = 0.0;
        for (r, row) in p.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                let want = if r == c { ONE } else { ZERO };
                err = err.max((z - want).norm());
            }
        }
        err
    }
}

fn check_qubit(state: &StateVector, qubit: usize) -> Result<()> {
    let qubits = state.layout().qubits();
    if qubit >= qubits {
        return Err(Error::QubitRange {
            index: qubit,
            qubits,
        });
    }
    Ok(())
}

/// Applies `g` to one qubit (bit `qubit` of the basis index).
pub fn apply_single_qubit(
    state: &mut StateVector,
    g: &Gate2,
    qubit: usize,
    stats: &mut CircuitStats,
) -> Result<()> {
    check_qubit(state, qubit)?;
    let stride = 1usize << qubit;
    let m = g.0;
    let update = |block: &mut [Complex64]| {
        let (lo, hi) = block.split_at_mut(stride);
        for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
            let (a, b) = (*u, *v);
            *u = m[0][0] * a + m[0][1] * b;
            *v = m[1][0] * a + m[1][1] * b;
        }
    };
    let dim = state.layout().dim();
    let amps = state.amplitudes_mut();
    if dim >= PARALLEL_MIN_DIM {
        amps.par_chunks_mut(2 * stride).for_each(update);
    } else {
        amps.chunks_mut(2 * stride).for_each(update);
    }
    stats.single_qubit_gate_applications += 1;
    stats.amplitude_operations += 2 * dim as u64;
    Ok(())
}

/// `|c⟩|t⟩ → |c⟩|c ⊕ t⟩` on the given qubits.
pub fn apply_cnot(
    state: &mut StateVector,
    control: usize,
    target: usize,
    stats: &mut CircuitStats,
) -> Result<()> {
    check_qubit(state, control)?;
    check_qubit(state, target)?;
    if control == target {
        return Err(Error::SameQubit(control));
    }
    let (cbit, tbit) = (1usize << control, 1usize << target);
    let dim = state.layout().dim();
    let amps = state.amplitudes_mut();
    for i in 0..dim {
        if i & cbit != 0 && i & tbit == 0 {
            amps.swap(i, i | tbit);
        }
    }
    stats.two_qubit_gate_applications += 1;
    stats.amplitude_operations += dim as u64;
    Ok(())
}

/// A bijection on register-2 basis values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGate {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl PermutationGate {
    /// Validates that `forward` is a bijection on `0..forward.len()`.
    pub fn new(forward: Vec<usize>) -> Option<Self> {
        let mut inverse = vec![usize::MAX; forward.len()];
        for (y, &fy) in forward.iter().enumerate() {
            if fy >= forward.len() || inverse[fy] != usize::MAX {
                return None;
            }
            inverse[fy] = y;
        }
        Some(Self { forward, inverse })
    }

    pub fn identity(dim: usize) -> Self {
        let forward: Vec<usize> = (0..dim).collect();
        Self {
            inverse: forward.clone(),
            forward,
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn apply(&self, y: usize) -> usize {
        self.forward[y]
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// `y ↦ x·y mod n` on `[0, n)`, identity on the padding values `n ≤ y < 2^ell`.
pub fn mod_mult_perm(x: u64, n: u64, ell: usize) -> Result<PermutationGate> {
    if n < 2 {
        return Err(Error::Modulus(n));
    }
    if ell >= usize::BITS as usize || n > (1u64 << ell) - 1 {
        return Err(Error::ModulusTooWide { n, ell });
    }
    let gcd = x.gcd(&n);
    if gcd != 1 {
        return Err(Error::NotCoprime { x, n, gcd });
    }
    let dim = 1usize << ell;
    let x = x % n;
    let forward = (0..dim)
        .map(|y| {
            if (y as u64) < n {
                ((x as u128 * y as u128) % n as u128) as usize
            } else {
                y
            }
        })
        .collect();
    PermutationGate::new(forward).ok_or(Error::Invariant("modular multiplication is not a bijection"))
}

fn check_perm(state: &StateVector, p: &PermutationGate) -> Result<()> {
    let dim2 = state.layout().dim2();
    if p.len() != dim2 {
        return Err(Error::DimensionMismatch {
            expected: dim2,
            found: p.len(),
        });
    }
    Ok(())
}

fn permute_slices<F>(state: &mut StateVector, p: &PermutationGate, selected: F) -> u64
where
    F: Fn(usize) -> bool + Sync,
{
    let layout = state.layout();
    let dim2 = layout.dim2();
    let forward = p.forward();
    let permute = |scratch: &mut Vec<Complex64>, (a, slice): (usize, &mut [Complex64])| {
        if !selected(a) {
            return;
        }
        scratch.copy_from_slice(slice);
        for (y, z) in scratch.iter().enumerate() {
            slice[forward[y]] = *z;
        }
    };
    let amps = state.amplitudes_mut();
    if layout.dim() >= PARALLEL_MIN_DIM {
        amps.par_chunks_mut(dim2)
            .enumerate()
            .for_each_init(|| vec![ZERO; dim2], permute);
    } else {
        let mut scratch = vec![ZERO; dim2];
        for item in amps.chunks_mut(dim2).enumerate() {
            permute(&mut scratch, item);
        }
    }
    let touched = (0..layout.q()).filter(|&a| selected(a)).count() as u64;
    2 * touched * dim2 as u64
}

/// Applies `p` to register-2 on every branch where register-1 bit `control` is 1.
pub fn apply_controlled_permutation(
    state: &mut StateVector,
    control: usize,
    p: &PermutationGate,
    stats: &mut CircuitStats,
) -> Result<()> {
    let t = state.layout().t();
    if control >= t {
        return Err(Error::QubitRange {
            index: control,
            qubits: t,
        });
    }
    check_perm(state, p)?;
    let mask = 1usize << control;
    stats.amplitude_operations += permute_slices(state, p, |a| a & mask != 0);
    stats.controlled_stage_applications += 1;
    Ok(())
}

/// Applies `p` to register-2 unconditionally (identity on register-1).
pub fn apply_register_two_permutation(
    state: &mut StateVector,
    p: &PermutationGate,
    stats: &mut CircuitStats,
) -> Result<()> {
    check_perm(state, p)?;
    stats.amplitude_operations += permute_slices(state, p, |_| true);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::RegisterLayout;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn printed_gates_are_unitary() {
        for g in [
            Gate2::pauli_x(),
            Gate2::pauli_y(),
            Gate2::pauli_z(),
            Gate2::hadamard(),
        ] {
            assert!(g.unitarity_error() < 1e-12);
        }
    }

    #[test]
    fn hadamard_on_zero() {
        let l = RegisterLayout::new(1, 1).unwrap();
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        let mut stats = CircuitStats::default();
        apply_single_qubit(&mut s, &Gate2::hadamard(), 1, &mut stats).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amplitude(0, 0).re, r, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1, 0).re, r, epsilon = 1e-15);
        assert_eq!(stats.single_qubit_gate_applications, 1);
        assert_eq!(stats.amplitude_operations, 8);
    }

    #[test]
    fn x_flips_and_z_phases() {
        let l = RegisterLayout::new(1, 1).unwrap();
        let mut stats = CircuitStats::default();
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        apply_single_qubit(&mut s, &Gate2::pauli_x(), 0, &mut stats).unwrap();
        assert_eq!(s, StateVector::basis(l, 0, 1).unwrap());

        let mut s = StateVector::basis(l, 0, 0).unwrap();
        apply_single_qubit(&mut s, &Gate2::hadamard(), 0, &mut stats).unwrap();
        apply_single_qubit(&mut s, &Gate2::pauli_z(), 0, &mut stats).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amplitude(0, 0).re, r, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(0, 1).re, -r, epsilon = 1e-15);
    }

    #[test]
    fn single_qubit_index_out_of_range() {
        let l = RegisterLayout::new(2, 2).unwrap();
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        let err = apply_single_qubit(&mut s, &Gate2::pauli_x(), 4, &mut CircuitStats::default());
        assert_eq!(err, Err(Error::QubitRange { index: 4, qubits: 4 }));
    }

    #[test]
    fn cnot_on_two_qubit_basis() {
        // Control is the high bit (register-1), target the low bit.
        let l = RegisterLayout::new(1, 1).unwrap();
        let mut stats = CircuitStats::default();
        let mut s = StateVector::basis(l, 1, 0).unwrap();
        apply_cnot(&mut s, 1, 0, &mut stats).unwrap();
        assert_eq!(s, StateVector::basis(l, 1, 1).unwrap());
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        apply_cnot(&mut s, 1, 0, &mut stats).unwrap();
        assert_eq!(s, StateVector::basis(l, 0, 0).unwrap());
        assert_eq!(stats.two_qubit_gate_applications, 2);
    }

    #[test]
    fn cnot_rejects_equal_qubits() {
        let l = RegisterLayout::new(1, 1).unwrap();
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        assert_eq!(
            apply_cnot(&mut s, 1, 1, &mut CircuitStats::default()),
            Err(Error::SameQubit(1))
        );
    }

    #[test]
    fn cnot_matches_printed_matrix() {
        let cnot = [
            [1., 0., 0., 0.],
            [0., 1., 0., 0.],
            [0., 0., 0., 1.],
            [0., 0., 1., 0.],
        ];
        let l = RegisterLayout::new(1, 1).unwrap();
        let amps = vec![c(0.1, 0.2), c(-0.3, 0.4), c(0.5, 0.1), c(0.2, -0.6)];
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<_> = amps.into_iter().map(|z| z / norm).collect();
        let mut s = StateVector::from_amplitudes(l, amps.clone()).unwrap();
        apply_cnot(&mut s, 1, 0, &mut CircuitStats::default()).unwrap();
        for (r, row) in cnot.iter().enumerate() {
            let want: Complex64 = row.iter().zip(&amps).map(|(m, z)| z * *m).sum();
            assert!((s.amplitudes()[r] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn mod_mult_perm_cycles() {
        let p = mod_mult_perm(7, 15, 4).unwrap();
        assert_eq!(
            [1, 7, 4, 13].map(|y| p.apply(y)),
            [7, 4, 13, 1]
        );
        assert_eq!(p.apply(15), 15);
        assert_eq!(p.apply(0), 0);

        let p = mod_mult_perm(11, 15, 4).unwrap();
        assert_eq!(p.apply(1), 11);
        assert_eq!(p.apply(11), 1);

        for n in 2..20u64 {
            assert_eq!(mod_mult_perm(1, n, 5).unwrap(), PermutationGate::identity(32));
        }
    }

    #[test]
    fn mod_mult_perm_errors() {
        assert_eq!(
            mod_mult_perm(3, 15, 4),
            Err(Error::NotCoprime { x: 3, n: 15, gcd: 3 })
        );
        assert_eq!(
            mod_mult_perm(2, 17, 4),
            Err(Error::ModulusTooWide { n: 17, ell: 4 })
        );
        assert_eq!(mod_mult_perm(1, 1, 4), Err(Error::Modulus(1)));
    }

    #[test]
    fn permutation_gate_validation() {
        assert!(PermutationGate::new(vec![0, 0]).is_none());
        assert!(PermutationGate::new(vec![0, 2]).is_none());
        let p = PermutationGate::new(vec![2, 0, 1]).unwrap();
        let inv = p.inverse();
        for y in 0..3 {
            assert_eq!(inv.apply(p.apply(y)), y);
        }
    }

    #[test]
    fn controlled_permutation_on_two_branches() {
        // t = 1, ell = 4: (|0⟩+|1⟩)|1⟩/√2 → (|0⟩|1⟩ + |1⟩|7⟩)/√2.
        let l = RegisterLayout::new(1, 4).unwrap();
        let mut s = StateVector::uniform_first_register(l, 1).unwrap();
        let p = mod_mult_perm(7, 15, 4).unwrap();
        let mut stats = CircuitStats::default();
        apply_controlled_permutation(&mut s, 0, &p, &mut stats).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut want = vec![c(0., 0.); 32];
        want[1] = c(r, 0.);
        want[16 + 7] = c(r, 0.);
        let want = StateVector::from_amplitudes(l, want).unwrap();
        assert!(s.max_deviation(&want) < 1e-15);
        assert_eq!(stats.controlled_stage_applications, 1);
        assert_eq!(stats.amplitude_operations, 32);
    }

    #[test]
    fn identity_permutation_still_counts() {
        let l = RegisterLayout::new(3, 2).unwrap();
        let s0 = StateVector::uniform_first_register(l, 3).unwrap();
        let mut s = s0.clone();
        let mut stats = CircuitStats::default();
        apply_controlled_permutation(&mut s, 2, &PermutationGate::identity(4), &mut stats).unwrap();
        assert_eq!(s, s0);
        assert_eq!(stats.controlled_stage_applications, 1);
    }

    #[test]
    fn permutation_then_inverse_restores() {
        let l = RegisterLayout::new(3, 4).unwrap();
        let s0 = StateVector::uniform_first_register(l, 1).unwrap();
        let mut s = s0.clone();
        let p = mod_mult_perm(7, 15, 4).unwrap();
        let mut stats = CircuitStats::default();
        apply_controlled_permutation(&mut s, 1, &p, &mut stats).unwrap();
        assert!(s.max_deviation(&s0) > 0.1);
        apply_controlled_permutation(&mut s, 1, &p.inverse(), &mut stats).unwrap();
        assert!(s.max_deviation(&s0) < 1e-12);
    }

    #[test]
    fn controlled_permutation_errors() {
        let l = RegisterLayout::new(2, 3).unwrap();
        let mut s = StateVector::basis(l, 0, 0).unwrap();
        let mut stats = CircuitStats::default();
        assert!(matches!(
            apply_controlled_permutation(&mut s, 0, &PermutationGate::identity(4), &mut stats),
            Err(Error::DimensionMismatch { expected: 8, found: 4 })
        ));
        assert!(matches!(
            apply_controlled_permutation(&mut s, 2, &PermutationGate::identity(8), &mut stats),
            Err(Error::QubitRange { .. })
        ));
        assert_eq!(stats, CircuitStats::default());
    }
}
