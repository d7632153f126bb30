//! Superpositions through the controlled stages: each term maps independently.
//!
//!     cargo run --example superposition_linearity

use shorsim::modexp::subset_linearity_deviation;
use shorsim::RegisterLayout;

fn main() -> shorsim::Result<()> {
    let layout = RegisterLayout::new(9, 5)?;
    let subsets: [Vec<usize>; 4] = [
        vec![5],
        vec![0, 1, 2, 3],
        (0..512).step_by(3).collect(),
        (0..512).collect(),
    ];
    for subset in &subsets {
        let dev = subset_linearity_deviation(layout, 2, 21, subset)?;
        println!("|S| = {:>3}: max deviation {dev:e}", subset.len());
    }
    Ok(())
}
