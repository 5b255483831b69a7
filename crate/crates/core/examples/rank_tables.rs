//! Ranks of conformal blocks from the gluing recursion.

use verlinde::prelude::*;

fn main() {
    for level in 1..=4 {
        let sl2 = FusionDatum::sl2(level);
        let row: Vec<String> = (0..=5).map(|g| sl2.rank(g, &[]).to_string()).collect();
        println!("sl2 level {level}: d_g() for g = 0..5: {}", row.join(" "));
    }

    let sl3 = FusionDatum::slr_level1(3);
    println!();
    println!("sl3 level 1, genus 2, two markings:");
    for a in sl3.labels() {
        let row: Vec<String> = sl3.labels().map(|b| sl3.rank(2, &[a, b]).to_string()).collect();
        println!("  {a}: {}", row.join(" "));
    }

    // A shared memo table pays off when many ranks are queried.
    let sl2 = FusionDatum::sl2(3);
    let table = RankTable::new(&sl2);
    let total: u64 = sl2.labels().map(|mu| table.rank(3, &[mu, sl2.dual(mu)])).sum();
    println!();
    println!("sl2 level 3: Σ_μ d_3(μ, μ*) = {total} = d_4() = {}", sl2.rank(4, &[]));
}
