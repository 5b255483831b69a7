//! Build a fusion datum by hand, save it as JSON and compute with it.
//!
//! The Fibonacci (Lee–Yang) category has labels 1 and τ with τ ⊗ τ = 1 ⊕ τ.

use verlinde::encoding::class_to_text;
use verlinde::prelude::*;

fn main() -> Result<()> {
    let fib = FusionDatum::new(
        vec!["1".into(), "t".into()],
        vec![Label(0), Label(1)],
        Label(0),
        |a, b, c| {
            let taus = [a, b, c].iter().filter(|l| l.0 == 1).count();
            u64::from(taus != 1)
        },
        vec![rat(0, 1), rat(2, 5)],
        rat(14, 5),
    )?;
    let ranks: Vec<String> = (0..=5).map(|g| fib.rank(g, &[]).to_string()).collect();
    println!("d_g() = {}", ranks.join(", "));

    let json = fib.to_json();
    println!("{json}");
    let again = FusionDatum::from_json(&json)?;

    let t = again.label("t")?;
    let ch = verlinde_chern_character(&again, 0, &[t, t, t, t], 1)?.zero_lambda();
    print!("{}", class_to_text(&ch));

    // Fusing with the unit must pair a label with its dual only.
    let broken = FusionDatum::new(
        vec!["1".into(), "t".into()],
        vec![Label(0), Label(1)],
        Label(0),
        |a, b, c| u64::from([a, b, c].iter().filter(|l| l.0 == 1).count() != 1 || a.0 + b.0 + c.0 == 1),
        vec![rat(0, 1), rat(2, 5)],
        rat(14, 5),
    );
    println!("n3(1, 1, t) = 1 is rejected: {}", broken.unwrap_err());
    Ok(())
}
