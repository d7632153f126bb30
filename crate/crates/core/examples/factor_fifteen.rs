//! Factors 15 with each non-trivial base and prints the sample trail.
//!
//!     cargo run --example factor_fifteen

use shorsim::pipeline::{run_shor, ShorConfig};

fn main() -> shorsim::Result<()> {
    for x in [2u64, 4, 7, 8, 11, 13, 14] {
        let report = run_shor(&ShorConfig::new(15, 1).with_base(x))?;
        let trail: Vec<String> = report
            .samples
            .iter()
            .map(|s| match s.r {
                Some(r) => format!("c={} -> r={r}", s.c),
                None => format!("c={} -> none", s.c),
            })
            .collect();
        println!(
            "x = {x:>2}: r = {:?}, factors = {:?}, outcome = {:?}  [{}]",
            report.verified_r,
            report.factors,
            report.outcome,
            trail.join(", ")
        );
    }
    Ok(())
}
