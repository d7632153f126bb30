//! Register widths of published small-scale factoring runs, checked against
//! `q ≥ n²` and the width needed to hold `n`.
//!
//!     cargo run --example demo_audit

use shorsim::pipeline::{builtin_demos, demo_audit, DemoSetup};

fn main() -> shorsim::Result<()> {
    let mut setups = builtin_demos();
    // A compliant layout for comparison.
    setups.push(DemoSetup::new("full width", "-", 15, 8, 4));
    for row in demo_audit(&setups)? {
        println!(
            "{:<22} n={} s1={} s2={}  q_ok={:<5} width_ok={:<5} needs s1={}  {:?}",
            row.label, row.n, row.s1, row.s2, row.q_ok, row.width_ok, row.required_s1, row.verdict
        );
    }
    Ok(())
}
