//! The Chern character of the sl2 level-1 Verlinde bundle on M̄_{1,2}
//! with both markings carrying the standard representation.
//!
//! Run with `cargo run --example sl2_level1_character`.

use verlinde::encoding::class_to_text;
use verlinde::prelude::*;

fn main() -> Result<()> {
    let sl2 = FusionDatum::sl2(1);
    let labels = [sl2.label("1")?, sl2.label("1")?];
    let ch = verlinde_chern_character(&sl2, 1, &labels, 2)?;
    print!("{}", class_to_text(&ch));

    println!();
    println!("rank (degree 0): {}", ch.degree_part(0).terms().next().map(|(_, q)| q.to_string()).unwrap_or_default());
    for locus in [Locus::Smooth, Locus::CompactType] {
        println!("terms on {}: {}", locus.as_str(), ch.restrict(locus).len());
    }
    Ok(())
}
