//! Degree-two coefficients of graphs with two vertices and two edges in
//! the sl2 level-1 character on M̄_{3,2}, both markings standard.

use verlinde::prelude::*;

fn main() -> Result<()> {
    println!("{:<28} {:>6} {:>6} {:>5} {:>10}", "graph", "parity", "raw", "|Aut|", "normalized");
    for row in two_loop_report(3, 2, 2)? {
        println!(
            "{:<28} {:>6} {:>6} {:>5} {:>10}",
            row.graph.to_string(),
            format!("{:?}", row.parity).to_lowercase(),
            row.raw.to_string(),
            row.automorphisms,
            row.normalized.to_string()
        );
    }
    Ok(())
}
