//! Products of boundary divisors on compact type.

use std::collections::BTreeMap;

use verlinde::encoding::class_to_text;
use verlinde::prelude::*;

fn main() -> Result<()> {
    let (g, n) = (2, 3);
    let a = DivisorSymbol::separating(g, n, 0, &[0, 1])?;
    let b = DivisorSymbol::separating(g, n, 1, &[0, 1])?;
    println!("δ_a · δ_b:");
    print!("{}", class_to_text(&divisor_monomial_expand(g, n, &[(a.clone(), 1), (b.clone(), 1)], &[0, 0, 0], ProductContext::Checked)?));

    println!("δ_a³:");
    print!("{}", class_to_text(&divisor_monomial_expand(g, n, &[(a.clone(), 3)], &[0, 0, 0], ProductContext::Checked)?));

    // A side of genus 1 without markings in genus 2 needs excess-intersection terms.
    let c = DivisorSymbol::separating(g, n, 1, &[0, 1, 2])?;
    match divisor_monomial_expand(g, n, &[(c, 2)], &[0, 0, 0], ProductContext::Checked) {
        Err(e) if e.is_unsupported() => println!("δ_c² refused: {e}"),
        other => println!("unexpected: {other:?}"),
    }

    let coeffs = BTreeMap::from([(a, rat(1, 2)), (b, rat(-1, 3))]);
    let exp = exp_of_divisor_combination(g, n, &rat(-1, 1), &[rat(1, 4), rat(0, 1), rat(0, 1)], &coeffs, 2, ProductContext::Checked)?;
    println!("exp(-λ₁ + ψ₁/4 + δ_a/2 - δ_b/3) through degree 2: {} terms", exp.len());
    Ok(())
}
