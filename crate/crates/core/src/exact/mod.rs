//! Arithmetic substrate: rationals, integer polynomials, cyclotomic
//! polynomials, integer partitions and Bernoulli numbers.

mod bernoulli;
mod partition;
mod poly;

pub use bernoulli::{bernoulli, zeta_even_ratio};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use partition::{exp_coefficient, multiplicity_m, partitions, Partition};
pub use poly::{cyclotomic_poly, IntPolynomial};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The representative of `r` modulo 1 in `[0, 1)`.
pub fn frac_mod1(r: &BigRational) -> BigRational {
    r - r.floor()
}

pub fn to_f64(r: &BigRational) -> f64 {
    // numerator and denominator may overflow f64 individually
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Möbius function μ(m).
pub fn mobius(m: u64) -> i32 {
    assert!(m >= 1, "mobius requires m >= 1");
    let mut sign = 1;
    for (_, e) in prime_factors(m) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Euler's totient φ(m).
pub fn euler_phi(m: u64) -> u64 {
    prime_factors(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn mobius_matches_sieve() {
        // sieve: μ is multiplicative with μ(p) = -1, μ(p²) = 0
        let n = 200;
        let mut mu = vec![1i32; n + 1];
        let mut is_comp = vec![false; n + 1];
        for p in 2..=n {
            if is_comp[p] {
                continue;
            }
            for k in (p..=n).step_by(p) {
                if k > p {
                    is_comp[k] = true;
                }
                mu[k] = -mu[k];
            }
            for k in (p * p..=n).step_by(p * p) {
                mu[k] = 0;
            }
        }
        for m in 1..=n {
            assert_eq!(mobius(m as u64), mu[m], "m = {m}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(frac_mod1(&rat(-1, 3)), rat(2, 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(euler_phi(12), 4);
    }
}
