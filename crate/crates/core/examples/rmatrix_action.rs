//! The diagonal R-matrix action for an arbitrary symplectic R.

use verlinde::prelude::*;

fn main() -> Result<()> {
    let sl2 = FusionDatum::sl2(2);
    let degree = 3;

    // R_μ(z) = exp(a_μ z + b z³) is symplectic: the exponent is odd in z and
    // every sl2 label is self-dual.
    let entries: Vec<Series> = sl2
        .labels()
        .map(|mu| {
            let a = rat(mu.0 as i64, 3);
            let b = rat(1, 5);
            let linear = Series::exp_linear(&a, degree);
            let cubic = Series::new(vec![rat(1, 1), rat(0, 1), rat(0, 1), b], degree);
            &linear * &cubic
        })
        .collect();
    let r = DiagonalRMatrix::new(entries)?;
    println!("symplectic through degree {degree}: {}", symplectic_check(&sl2, &r, degree));

    let class = rmatrix_action(&sl2, &r, 1, &[Label(1), Label(1)], degree as u32)?;
    for (key, q) in class.sorted_terms() {
        println!("{q:>8}  λ^{} {}", key.lambda, key.graph);
    }

    let id = DiagonalRMatrix::identity(sl2.size(), degree);
    let tqft = rmatrix_action(&sl2, &id, 1, &[Label(1), Label(1)], degree as u32)?;
    println!("identity R gives the rank TQFT: {} term(s)", tqft.len());

    // A non-symplectic R is refused.
    let even = Series::new(vec![rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1)], degree);
    let bad = DiagonalRMatrix::new(vec![Series::one(degree), even, Series::one(degree)])?;
    println!("{}", rmatrix_action(&sl2, &bad, 1, &[Label(1), Label(1)], degree as u32).unwrap_err());
    Ok(())
}
