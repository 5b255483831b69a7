//! Stable graphs up to isomorphism with automorphism orders and loci.

use verlinde::encoding::graphs_to_text;
use verlinde::prelude::*;

fn main() -> Result<()> {
    for (g, n, e) in [(0, 4, 1), (1, 1, 1), (2, 0, 2), (1, 2, 2)] {
        let graphs = enumerate_stable_graphs(g, n, e)?;
        println!("(g, n) = ({g}, {n}), at most {e} edges");
        print!("{}", graphs_to_text(&graphs));
        println!();
    }

    // Two presentations of the same graph share one canonical form.
    let a = StableGraph::new(vec![1, 0], vec![1, 1], vec![[0, 1]])?;
    let b = StableGraph::new(vec![0, 1], vec![0, 0], vec![[1, 0]])?;
    println!("{a} and {b} canonicalize to {}", a.canonical());
    assert_eq!(a.canonical(), b.canonical());

    for (graph, parity) in two_loop_graphs(3, 2) {
        println!("2-loop {graph}: {parity:?}, |Aut| = {}", automorphism_order(&graph));
    }
    Ok(())
}
