//! Dense-matrix and radix-2 transforms on the same state, plus a round trip.
//!
//!     cargo run --example qft_modes

use std::time::Instant;

use shorsim::modexp::modexp_circuit;
use shorsim::qft::{inverse_qft_first_register, qft_first_register, QftMode};
use shorsim::RegisterLayout;

fn main() -> shorsim::Result<()> {
    let layout = RegisterLayout::new(10, 5)?;
    let (input, _) = modexp_circuit(layout, 2, 21)?;

    let mut dense = input.clone();
    let start = Instant::now();
    qft_first_register(&mut dense, QftMode::Dense)?;
    let dense_time = start.elapsed();

    let mut fast = input.clone();
    let start = Instant::now();
    qft_first_register(&mut fast, QftMode::Fast)?;
    let fast_time = start.elapsed();

    println!("q = {}: dense {dense_time:?}, fast {fast_time:?}", layout.q());
    println!("max |dense - fast| = {:e}", dense.max_deviation(&fast));

    inverse_qft_first_register(&mut fast, QftMode::Fast)?;
    println!("round trip deviation = {:e}", fast.max_deviation(&input));
    Ok(())
}
