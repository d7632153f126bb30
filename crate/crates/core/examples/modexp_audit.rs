//! Counts the controlled stages used by staged modular exponentiation and
//! checks the result against a direct fill of `|a⟩|x^a mod n⟩`.
//!
//!     cargo run --example modexp_audit

use shorsim::modexp::claim_audit;
use shorsim::pipeline::{bit_length, choose_q};
use shorsim::RegisterLayout;

fn main() -> shorsim::Result<()> {
    println!("   n   x   t   stages   q-1   max dev   linear");
    for (n, x) in [(15u64, 7u64), (21, 2), (33, 5), (35, 4), (55, 2)] {
        let t = choose_q(n)?.s;
        let report = claim_audit(RegisterLayout::new(t, bit_length(n))?, x, n)?;
        println!(
            "{n:>4} {x:>3} {t:>3} {:>8} {:>5} {:>9.1e}   {}",
            report.stage_applications,
            report.claimed_invocations,
            report.max_amplitude_deviation,
            report.linearity_ok
        );
    }
    Ok(())
}
