//! Truncated power series in one variable with exact rational coefficients.

use std::ops::Mul;

use num_traits::{One, Zero};

use crate::rational::{factorial, pow, Rational};

/// `Σ_{k ≤ degree} c_k z^k`; terms above `degree` are discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Rational>, degree: usize) -> Self {
        coeffs.resize(degree + 1, Rational::zero());
        Series { coeffs }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Series::new(Vec::new(), degree);
        s.coeffs[0] = Rational::one();
        s
    }

    /// `exp(a z)` through `degree`.
    pub fn exp_linear(a: &Rational, degree: usize) -> Self {
        let coeffs = (0..=degree as u32)
            .map(|k| pow(a, k) / factorial(k))
            .collect();
        Series { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `f(z) ↦ f(-z)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Series { coeffs }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Series::new(self.coeffs.iter().take(degree + 1).cloned().collect(), degree)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let degree = self.degree().min(rhs.degree());
        let mut out = vec![Rational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(degree + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

/// Quotient of `1 - a(z) b(w)` by `z + w`, as coefficients `q[i][j]` of
/// `z^i w^j` for `i + j ≤ degree`.
///
/// Returns `None` when `z + w` does not divide the numerator through total
/// degree `degree + 1`, i.e. when `a(z) b(-z) ≠ 1` to that order.
pub fn symplectic_quotient(a: &Series, b: &Series, degree: usize) -> Option<Vec<Vec<Rational>>> {
    let top = degree + 1;
    if a.degree() < top || b.degree() < top {
        return None;
    }
    let numerator = |i: usize, j: usize| -> Rational {
        let v = a.coeff(i) * b.coeff(j);
        if i == 0 && j == 0 {
            Rational::one() - v
        } else {
            -v
        }
    };
    if !numerator(0, 0).is_zero() {
        return None;
    }
    let mut q = vec![vec![Rational::zero(); degree + 1]; degree + 1];
    for d in 1..=top {
        // n_{i, d-i} = q_{i-1, d-i} + q_{i, d-i-1}
        let mut carry = Rational::zero();
        for i in (1..=d).rev() {
            let val = numerator(i, d - i) - &carry;
            q[i - 1][d - i] = val.clone();
            carry = val;
        }
        if numerator(0, d) != carry {
            return None;
        }
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn exp_and_product() {
        let e = Series::exp_linear(&rat(1, 4), 2);
        assert_eq!(e.coeffs(), &[rat(1, 1), rat(1, 4), rat(1, 32)]);
        let p = &e * &e.reflect();
        assert!(p.is_one());
    }

    #[test]
    fn quotient_of_exponentials_matches_edge_series() {
        let w = rat(1, 2);
        let a = Series::exp_linear(&w, 4);
        let q = symplectic_quotient(&a, &a, 3).unwrap();
        // (1 - e^{w(z+w')})/(z+w') = -Σ w^{k+1}/(k+1)! (z+w')^k
        assert_eq!(q[0][0], rat(-1, 2));
        assert_eq!(q[1][0], rat(-1, 8));
        assert_eq!(q[0][1], rat(-1, 8));
        assert_eq!(q[2][0], rat(-1, 48));
        assert_eq!(q[1][1], rat(-2, 48));
    }

    #[test]
    fn non_symplectic_pair_is_rejected() {
        let a = Series::new(vec![rat(1, 1), rat(1, 1)], 3);
        assert!(symplectic_quotient(&a, &a, 2).is_none());
    }
}
