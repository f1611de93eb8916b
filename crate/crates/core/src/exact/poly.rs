use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{divisors, mobius};

/// Univariate polynomial over ℤ, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `X^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] = BigInt::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Exact division. Panics on a nonzero remainder or a non-unit leading
    /// divisor coefficient that leaves a fraction; both indicate a logic error
    /// upstream.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division: remainder {r}");
        q
    }

    fn div_rem(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            assert!(r.is_zero(), "non-integral quotient coefficient");
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * c;
            }
            quot[k] = qk;
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Value at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients `A_1..A_n` of `X^n + A_1 X^{n-1} + ... + A_n`, as used by
    /// companion matrices. `A_k` is the coefficient of `X^{n-k}`.
    pub fn monic_tail(&self) -> Vec<BigInt> {
        let n = self.degree().unwrap_or(0);
        (1..=n).map(|k| self.coeff(n - k)).collect()
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

/// The m-th cyclotomic polynomial, Φ_m = ∏_{d|m} (X^d − 1)^{μ(m/d)}.
pub fn cyclotomic_poly(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = &num * &IntPolynomial::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPolynomial::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.div_exact(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::euler_phi;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(5), IntPolynomial::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(6).to_string(), "X^2 - X + 1");
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=200 {
            assert_eq!(cyclotomic_poly(m).degree(), Some(euler_phi(m) as usize), "m = {m}");
        }
    }

    #[test]
    fn product_over_divisors() {
        for m in 1..=100u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic_poly(d));
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(m as usize), "m = {m}");
        }
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        IntPolynomial::from_i64(&[1, 0, 1]).div_exact(&IntPolynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn monic_tail_orientation() {
        // (X-1)^2 = X^2 - 2X + 1 → A_1 = -2, A_2 = 1
        let p = IntPolynomial::from_i64(&[1, -2, 1]);
        assert_eq!(p.monic_tail(), vec![BigInt::from(-2), BigInt::from(1)]);
    }
}
