//! Fourier transform on register-1.
//!
//! Kernel `|a⟩ ↦ (1/√q) Σ_c exp(+2πi·ac/q) |c⟩`, applied independently to
//! each register-2 value. Two implementations: a dense matrix product
//! (reference, `q ≤ 4096`) and an in-place radix-2 decimation-in-time FFT.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::PARALLEL_MIN_DIM;
use crate::state::StateVector;

/// Largest transform the dense path accepts.
pub const DENSE_MAX_Q: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QftMode {
    Dense,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `exp(+2πi·ac/q)`.
    Forward,
    /// `exp(−2πi·ac/q)`.
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Inverse => -1.0,
        }
    }
}

/// `exp(±2πi·k/q)` for `k < q`, each evaluated directly.
fn roots_of_unity(q: usize, direction: Direction) -> Vec<Complex64> {
    let sign = direction.sign();
    (0..q)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / q as f64))
        .collect()
}

/// Dense Fourier matrix, `entry[c][a] = exp(2πi·ac/q)/√q`.
pub fn qft_matrix(q: usize) -> Result<Vec<Vec<Complex64>>> {
    if !q.is_power_of_two() || q > DENSE_MAX_Q {
        return Err(Error::TransformSize(q));
    }
    let roots = roots_of_unity(q, Direction::Forward);
    let scale = 1.0 / (q as f64).sqrt();
    Ok((0..q)
        .map(|c| (0..q).map(|a| roots[(a * c) % q] * scale).collect())
        .collect())
}

/// In-place normalized radix-2 transform of one register-1 vector.
pub fn fft_in_place(buf: &mut [Complex64], direction: Direction) {
    let roots = roots_of_unity(buf.len(), direction);
    fft_with_roots(buf, &roots);
}

fn fft_with_roots(buf: &mut [Complex64], roots: &[Complex64]) {
    let q = buf.len();
    debug_assert!(q.is_power_of_two());
    let bits = q.trailing_zeros();
    if bits == 0 {
        return;
    }
    for i in 0..q {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= q {
        let half = len / 2;
        let step = q / len;
        for block in buf.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for (j, (u, v)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let w = roots[j * step] * *v;
                let a = *u;
                *u = a + w;
                *v = a - w;
            }
        }
        len <<= 1;
    }
    let scale = 1.0 / (q as f64).sqrt();
    for z in buf.iter_mut() {
        *z *= scale;
    }
}

fn dense_apply(matrix: &[Vec<Complex64>], input: &[Complex64], out: &mut [Complex64]) {
    for (o, row) in out.iter_mut().zip(matrix) {
        *o = row.iter().zip(input).map(|(m, v)| m * v).sum();
    }
}

/// Transforms register-1 of `state` in the given direction.
pub fn transform_first_register(
    state: &mut StateVector,
    mode: QftMode,
    direction: Direction,
) -> Result<()> {
    let layout = state.layout();
    let (q, dim2) = (layout.q(), layout.dim2());

    let matrix = match mode {
        QftMode::Dense => {
            let m = qft_matrix(q)?;
            match direction {
                Direction::Forward => Some(m),
                // The matrix is symmetric, so its inverse is the entrywise conjugate.
                Direction::Inverse => Some(
                    m.into_iter()
                        .map(|row| row.into_iter().map(|z| z.conj()).collect())
                        .collect(),
                ),
            }
        }
        QftMode::Fast => None,
    };
    let roots = roots_of_unity(q, direction);

    // Gather each register-2 slice into a contiguous column.
    let amps = state.amplitudes_mut();
    let mut columns = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (a, row) in amps.chunks_exact(dim2).enumerate() {
        for (y, z) in row.iter().enumerate() {
            columns[y * q + a] = *z;
        }
    }

    let transform = |column: &mut [Complex64]| {
        if column.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            return;
        }
        match &matrix {
            Some(m) => {
                let input = column.to_vec();
                dense_apply(m, &input, column);
            }
            None => fft_with_roots(column, &roots),
        }
    };
    if amps.len() >= PARALLEL_MIN_DIM {
        columns.par_chunks_mut(q).for_each(transform);
    } else {
        columns.chunks_mut(q).for_each(transform);
    }

    for (a, row) in amps.chunks_exact_mut(dim2).enumerate() {
        for (y, z) in row.iter_mut().enumerate() {
            *z = columns[y * q + a];
        }
    }
    Ok(())
}

pub fn qft_first_register(state: &mut StateVector, mode: QftMode) -> Result<()> {
    transform_first_register(state, mode, Direction::Forward)
}

pub fn inverse_qft_first_register(state: &mut StateVector, mode: QftMode) -> Result<()> {
    transform_first_register(state, mode, Direction::Inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Gate2;
    use crate::modexp::modexp_circuit;
    use crate::state::{Register, RegisterLayout};

    #[test]
    fn size_two_matrix_is_hadamard() {
        let m = qft_matrix(2).unwrap();
        let h = Gate2::hadamard().0;
        for r in 0..2 {
            for c in 0..2 {
                assert!((m[r][c] - h[r][c]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn size_four_entry() {
        let m = qft_matrix(4).unwrap();
        assert!((m[1][1] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn matrix_columns_orthonormal() {
        for q in [2, 4, 8, 16] {
            let m = qft_matrix(q).unwrap();
            for i in 0..q {
                for j in 0..q {
                    let dot: Complex64 = (0..q).map(|r| m[r][i].conj() * m[r][j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).norm() < 1e-12, "q={q} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn matrix_size_limits() {
        assert_eq!(qft_matrix(3), Err(Error::TransformSize(3)));
        assert_eq!(qft_matrix(8192), Err(Error::TransformSize(8192)));
    }

    #[test]
    fn zero_input_spreads_uniformly() {
        for mode in [QftMode::Dense, QftMode::Fast] {
            let layout = RegisterLayout::new(5, 3).unwrap();
            let mut s = StateVector::basis(layout, 0, 6).unwrap();
            qft_first_register(&mut s, mode).unwrap();
            let want = StateVector::uniform_first_register_direct(layout, 6).unwrap();
            assert!(s.max_deviation(&want) < 1e-12);
        }
    }

    #[test]
    fn inverse_restores() {
        let layout = RegisterLayout::new(6, 4).unwrap();
        let (s0, _) = modexp_circuit(layout, 7, 15).unwrap();
        for mode in [QftMode::Dense, QftMode::Fast] {
            let mut s = s0.clone();
            qft_first_register(&mut s, mode).unwrap();
            inverse_qft_first_register(&mut s, mode).unwrap();
            assert!(s.max_deviation(&s0) < 1e-10);
        }
    }

    #[test]
    fn peaks_after_modexp_fifteen_seven() {
        let layout = RegisterLayout::new(8, 4).unwrap();
        let (mut s, _) = modexp_circuit(layout, 7, 15).unwrap();
        qft_first_register(&mut s, QftMode::Fast).unwrap();
        let m = s.marginal(Register::First);
        for (c, p) in m.values.iter().enumerate() {
            let want = if c % 64 == 0 { 0.25 } else { 0.0 };
            assert!((p - want).abs() < 1e-12, "c={c} p={p}");
        }
    }

    #[test]
    fn fft_matches_matrix_on_vectors() {
        for t in 1..=8 {
            let q = 1usize << t;
            let v: Vec<Complex64> = (0..q)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let m = qft_matrix(q).unwrap();
            let mut want = vec![Complex64::new(0.0, 0.0); q];
            dense_apply(&m, &v, &mut want);
            let mut got = v.clone();
            fft_in_place(&mut got, Direction::Forward);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn shift_multiplies_by_phase() {
        let layout = RegisterLayout::new(5, 1).unwrap();
        let q = layout.q();
        for a in [0, 3, 31] {
            let mut base = StateVector::basis(layout, a, 1).unwrap();
            let mut shifted = StateVector::basis(layout, (a + 1) % q, 1).unwrap();
            qft_first_register(&mut base, QftMode::Fast).unwrap();
            qft_first_register(&mut shifted, QftMode::Fast).unwrap();
            for c in 0..q {
                let phase = Complex64::from_polar(1.0, 2.0 * PI * c as f64 / q as f64);
                let want = base.amplitude(c, 1) * phase;
                assert!((shifted.amplitude(c, 1) - want).norm() < 1e-12);
            }
        }
    }
}
