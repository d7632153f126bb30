//! Closed-form outcome spectrum next to the simulated one, with the peak
//! probability check.
//!
//!     cargo run --example spectrum_peaks [n] [x]

use shorsim::pipeline::{bit_length, choose_q};
use shorsim::spectrum::{analytic_distribution, peak_bound_check, simulated_distribution};

fn main() -> shorsim::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(21);
    let x = args.next().unwrap_or(2);
    let choice = choose_q(n)?;
    let q = choice.q as usize;

    let exact = analytic_distribution(n, x, q)?;
    let sim = simulated_distribution(n, x, choice.s, bit_length(n))?;
    println!("n = {n}, x = {x}, q = {q}, r = {}", exact.r);
    println!("max |simulated - analytic| = {:e}", exact.max_joint_difference(&sim));

    let mut top: Vec<(usize, f64)> = exact.marginal.iter().copied().enumerate().collect();
    top.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (c, p) in top.iter().take(2 * exact.r as usize) {
        println!("  c = {c:>5}  c/q = {:.5}  P = {p:.5}", *c as f64 / q as f64);
    }

    let bound = peak_bound_check(n, x, q)?;
    println!(
        "{} qualifying outcomes, min 3r²P = {:.4}, passed = {}",
        bound.qualifying.len(),
        bound.min_ratio,
        bound.passed
    );
    Ok(())
}
