//! For sl_r at level 1 the compact-type part of the character is an
//! exponential of λ₁, ψ and boundary divisors. Compare it with the graph sum.

use verlinde::encoding::class_to_text;
use verlinde::prelude::*;

fn main() -> Result<()> {
    let (r, g) = (3, 2);
    let sl3 = FusionDatum::slr_level1(r);
    let labels = [Label(1), Label(1), Label(1)];

    let graph_sum = verlinde_chern_character(&sl3, g, &labels, 2)?.restrict(Locus::CompactType);
    let closed = compact_type_closed_form(r, g, &labels, 2)?;
    print!("{}", class_to_text(&closed));
    println!("graph sum and exponential agree: {}", graph_sum == closed);

    // The edge weights of the exponential come from label remainders.
    for tree in enumerate_stable_graphs(g, labels.len(), 1)?.iter().filter(|t| t.num_edges() == 1 && t.is_tree()) {
        let w = slr_tree_remainders(r, tree, &labels)?;
        println!("{tree}: edge label {}, weight {}", w.labels[0], w.weights[0]);
    }
    Ok(())
}
