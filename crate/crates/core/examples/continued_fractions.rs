//! Expansions and order recovery for a handful of measured outcomes.
//!
//!     cargo run --example continued_fractions

use shorsim::cfrac::{continued_fraction, recover_order};

fn main() -> shorsim::Result<()> {
    for (c, q, n) in [(64u64, 256u64, 15u64), (192, 256, 15), (85, 512, 21), (427, 512, 21), (100, 256, 15)] {
        let cf = continued_fraction(c, q)?;
        let convergents: Vec<String> = cf.convergents.iter().map(ToString::to_string).collect();
        println!(
            "{c}/{q} = {:?}  convergents [{}]  recovered (n = {n}): {:?}",
            cf.quotients,
            convergents.join(", "),
            recover_order(c, q, n)
        );
    }
    Ok(())
}
