//! Order-recovery success rate as register-1 grows, for n = 15, x = 7.
//!
//!     cargo run --release --example success_sweep

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shorsim::pipeline::{success_sweep, SweepConfig};

fn main() -> shorsim::Result<()> {
    let config = SweepConfig::new(15, 7, (3..=8).collect(), 200);
    let table = success_sweep(&config, &mut ChaCha8Rng::seed_from_u64(7))?;
    println!("r = {}, budget {} samples per trial", table.r, table.max_samples);
    for row in &table.rows {
        println!(
            "s = {}  q = {:>3}  success {:.3}  first sample {:.3}",
            row.s, row.q, row.success_rate, row.first_sample_rate
        );
    }
    Ok(())
}
