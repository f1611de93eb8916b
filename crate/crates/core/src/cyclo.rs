//! Cyclotomic recognition of an exponent list and the quotient form
//! ∏(X^{a_i} − 1)/∏(X^{b_i} − 1), together with the constants derived from it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    cyclotomic_poly, divisors, euler_phi, factorial, format_rational, frac_mod1, mobius, IntPolynomial,
};

/// Exponents α₁..α_n reduced modulo 1 into (0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaList {
    alphas: Vec<BigRational>,
}

impl AlphaList {
    /// Reduces every α modulo 1. Integers are rejected since they put the
    /// root X = 1 into ∏(X − e^{−2πiα}).
    pub fn new(alphas: Vec<BigRational>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidInput("at least one exponent is required".into()));
        }
        let mut reduced = Vec::with_capacity(alphas.len());
        for a in alphas {
            if a.is_integer() {
                return Err(Error::IntegerExponent(format_rational(&a)));
            }
            reduced.push(frac_mod1(&a));
        }
        Ok(AlphaList { alphas: reduced })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(crate::exact::parse_rational_list(s)?)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.alphas
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn sum(&self) -> BigRational {
        self.alphas.iter().fold(BigRational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for AlphaList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.alphas.iter().map(format_rational).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Groups rationals by reduced denominator and checks that each primitive
/// residue class appears completely, with a common count. Integers land in
/// class m = 1 (the factor X − 1).
fn cyclotomic_multiset(values: &[BigRational]) -> Option<BTreeMap<u64, u32>> {
    let mut by_den: BTreeMap<u64, BTreeMap<u64, u32>> = BTreeMap::new();
    for v in values {
        let r = frac_mod1(v);
        let m = r.denom().to_u64()?;
        let c = r.numer().to_u64()?;
        *by_den.entry(m).or_default().entry(c).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for (m, residues) in by_den {
        let primitive: Vec<u64> = if m == 1 {
            vec![0]
        } else {
            (1..m).filter(|c| c.gcd(&m) == 1).collect()
        };
        let count = residues.get(&primitive[0]).copied().unwrap_or(0);
        let complete = residues.len() == primitive.len()
            && primitive.iter().all(|c| residues.get(c) == Some(&count));
        if !complete {
            return None;
        }
        out.insert(m, count);
    }
    Some(out)
}

/// Writes ∏(X − e^{−2πiα_k}) = ∏ Φ_m^{μ_m}; returns the map m → μ_m.
pub fn recognize_cyclotomic(alphas: &AlphaList) -> Result<BTreeMap<u64, u32>> {
    cyclotomic_multiset(alphas.values()).ok_or_else(|| Error::NotCyclotomicProduct(alphas.to_string()))
}

/// ∏(X − e^{−2πi v}) over ℤ when the values form a cyclotomic product
/// (integers allowed, contributing X − 1).
pub fn root_polynomial(values: &[BigRational]) -> Option<IntPolynomial> {
    cyclotomic_multiset(values).map(|m| product_of_cyclotomics(&m))
}

pub fn product_of_cyclotomics(cyclo: &BTreeMap<u64, u32>) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    for (&m, &mult) in cyclo {
        let phi = cyclotomic_poly(m);
        for _ in 0..mult {
            acc = &acc * &phi;
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// ∏(X^{a_i} − 1)/∏(X^{b_i} − 1) with common entries cancelled and both
/// lists sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientForm {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub n: usize,
}

/// Expands each Φ_m through Möbius exponents and cancels common factors.
pub fn to_quotient_form(cyclo: &BTreeMap<u64, u32>) -> QuotientForm {
    let mut count: BTreeMap<u64, i64> = BTreeMap::new();
    let mut n = 0usize;
    for (&m, &mult) in cyclo {
        n += euler_phi(m) as usize * mult as usize;
        for d in divisors(m) {
            let mu = mobius(m / d) as i64;
            if mu != 0 {
                *count.entry(d).or_default() += mu * mult as i64;
            }
        }
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (&d, &c) in count.iter().rev() {
        let target = if c > 0 { &mut a } else { &mut b };
        for _ in 0..c.unsigned_abs() {
            target.push(d);
        }
    }
    QuotientForm { a, b, n }
}

fn prod_pow(xs: &[u64], f: impl Fn(u64) -> BigInt) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, &x| acc * f(x))
}

impl QuotientForm {
    /// Builds a quotient form from raw lists, cancelling common entries.
    /// Panics if the result is not a polynomial of positive degree.
    pub fn from_lists(a: &[u64], b: &[u64]) -> Self {
        let mut count: BTreeMap<u64, i64> = BTreeMap::new();
        for &x in a {
            *count.entry(x).or_default() += 1;
        }
        for &x in b {
            *count.entry(x).or_default() -= 1;
        }
        let mut qa = Vec::new();
        let mut qb = Vec::new();
        for (&d, &c) in count.iter().rev() {
            let t = if c > 0 { &mut qa } else { &mut qb };
            t.extend(std::iter::repeat_n(d, c.unsigned_abs() as usize));
        }
        let n = qa.iter().sum::<u64>() as i64 - qb.iter().sum::<u64>() as i64;
        assert!(n > 0, "quotient form must have positive degree");
        let q = QuotientForm { a: qa, b: qb, n: n as usize };
        // exactness check
        q.polynomial();
        q
    }

    /// The expanded polynomial over ℤ.
    pub fn polynomial(&self) -> IntPolynomial {
        let num = self
            .a
            .iter()
            .fold(IntPolynomial::one(), |acc, &x| &acc * &IntPolynomial::x_pow_minus_one(x as usize));
        let den = self
            .b
            .iter()
            .fold(IntPolynomial::one(), |acc, &x| &acc * &IntPolynomial::x_pow_minus_one(x as usize));
        num.div_exact(&den)
    }

    /// C = ∏ a^a / ∏ b^b.
    pub fn c(&self) -> Result<BigInt> {
        let num = prod_pow(&self.a, |x| BigInt::from(x).pow(x as u32));
        let den = prod_pow(&self.b, |x| BigInt::from(x).pow(x as u32));
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegerC(format!("{num}/{den}")));
        }
        Ok(q)
    }

    /// d = ∏ a / ∏ b.
    pub fn d(&self) -> BigRational {
        BigRational::new(prod_pow(&self.a, BigInt::from), prod_pow(&self.b, BigInt::from))
    }

    fn power_sum(&self, j: u32) -> BigInt {
        let sa: BigInt = self.a.iter().map(|&x| BigInt::from(x).pow(j)).sum();
        let sb: BigInt = self.b.iter().map(|&x| BigInt::from(x).pow(j)).sum();
        sa - sb
    }

    /// c_j^± = (±n − (±1)^j ∑(a^j − b^j)) / j, with c_0^± = 1.
    pub fn c_pm(&self, sign: Sign, j: u32) -> BigRational {
        if j == 0 {
            return BigRational::one();
        }
        let n = BigInt::from(self.n);
        let s = self.power_sum(j);
        let val = match sign {
            Sign::Plus => n - s,
            Sign::Minus if j % 2 == 0 => -n - s,
            Sign::Minus => -n + s,
        };
        BigRational::new(val, BigInt::from(j))
    }

    /// Taylor coefficients of f₀^C: ∏(a m)!/∏(b m)! / (m!)^n.
    pub fn f0_coeffs(&self, terms: usize) -> Result<Vec<BigInt>> {
        (0..terms)
            .map(|m| {
                let mm = m as u64;
                let num = prod_pow(&self.a, |x| factorial(x * mm));
                let den = prod_pow(&self.b, |x| factorial(x * mm)) * factorial(mm).pow(self.n as u32);
                let (q, r) = num.div_rem(&den);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::NonIntegerCoefficient {
                        index: m,
                        value: format!("{num}/{den}"),
                    })
                }
            })
            .collect()
    }

    /// ∏ a! / ∏ b!.
    pub fn factorial_ratio(&self) -> Result<BigInt> {
        let num = prod_pow(&self.a, factorial);
        let den = prod_pow(&self.b, factorial);
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegerFactorialRatio(format!("{num}/{den}")));
        }
        Ok(q)
    }
}

impl fmt::Display for QuotientForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(xs: &[u64]) -> String {
            if xs.is_empty() {
                return "1".into();
            }
            let mut groups: Vec<(u64, usize)> = Vec::new();
            for &x in xs {
                match groups.last_mut() {
                    Some((v, c)) if *v == x => *c += 1,
                    _ => groups.push((x, 1)),
                }
            }
            groups
                .iter()
                .rev()
                .map(|&(x, c)| {
                    let base = if x == 1 { "(X-1)".to_string() } else { format!("(X^{x}-1)") };
                    if c > 1 {
                        format!("{base}^{c}")
                    } else {
                        base
                    }
                })
                .collect::<Vec<_>>()
                .join("")
        }
        write!(f, "{}/{}", side(&self.a), side(&self.b))
    }
}

/// Taylor coefficients of ₙF_{n−1}(α; 1, …, 1 | scale·z) by the Pochhammer
/// ratio: scale^m ∏(α_k)_m / (m!)^n.
pub fn hypergeometric_coeffs(alphas: &[BigRational], scale: &BigRational, terms: usize) -> Vec<BigRational> {
    let n = alphas.len() as i32;
    let mut out = Vec::with_capacity(terms);
    let mut cur = BigRational::one();
    for m in 0..terms {
        if m > 0 {
            let mm = BigRational::from_integer(BigInt::from(m));
            let num = alphas
                .iter()
                .fold(BigRational::one(), |acc, a| acc * (a + &mm - BigRational::one()));
            cur = cur * num * scale / mm.pow(n);
        }
        out.push(cur.clone());
    }
    out
}

/// Recognition plus quotient form in one step.
pub fn quotient_form_of(alphas: &AlphaList) -> Result<QuotientForm> {
    Ok(to_quotient_form(&recognize_cyclotomic(alphas)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_rational_list, rat};

    fn alphas(s: &str) -> AlphaList {
        AlphaList::parse(s).unwrap()
    }

    #[test]
    fn recognition() {
        let m = recognize_cyclotomic(&alphas("1/5,2/5,3/5,4/5")).unwrap();
        assert_eq!(m, BTreeMap::from([(5, 1)]));
        let m = recognize_cyclotomic(&alphas("1/2,1/2,1/2,1/2")).unwrap();
        assert_eq!(m, BTreeMap::from([(2, 4)]));
        assert!(matches!(
            recognize_cyclotomic(&alphas("1/3,1/4")),
            Err(Error::NotCyclotomicProduct(_))
        ));
        // unequal counts inside one class
        assert!(recognize_cyclotomic(&alphas("1/3,1/3,2/3")).is_err());
    }

    #[test]
    fn integer_exponent_rejected() {
        let err = AlphaList::new(parse_rational_list("1/2,1").unwrap()).unwrap_err();
        assert!(matches!(err, Error::IntegerExponent(_)));
    }

    #[test]
    fn reduction_mod_one() {
        let a = alphas("6/5,-3/5,3/5,4/5");
        assert_eq!(a.values()[0], rat(1, 5));
        assert_eq!(a.values()[1], rat(2, 5));
        assert_eq!(quotient_form_of(&a).unwrap(), QuotientForm::from_lists(&[5], &[1]));
    }

    #[test]
    fn quotient_forms() {
        let q = to_quotient_form(&BTreeMap::from([(5, 1)]));
        assert_eq!((q.a.clone(), q.b.clone()), (vec![5], vec![1]));
        let q = to_quotient_form(&BTreeMap::from([(6, 1)]));
        assert_eq!((q.a.clone(), q.b.clone()), (vec![6, 1], vec![3, 2]));
        let q = to_quotient_form(&BTreeMap::from([(2, 4)]));
        assert_eq!((q.a.clone(), q.b.clone()), (vec![2, 2, 2, 2], vec![1, 1, 1, 1]));
        assert_eq!(q.to_string(), "(X^2-1)^4/(X-1)^4");
    }

    #[test]
    fn constants() {
        let quintic = QuotientForm::from_lists(&[5], &[1]);
        assert_eq!(quintic.c().unwrap(), BigInt::from(3125));
        assert_eq!(quintic.d(), int(5));
        let q = QuotientForm::from_lists(&[10, 1], &[5, 2]);
        assert_eq!(q.c().unwrap(), BigInt::from(800_000));
        assert_eq!(q.d(), int(1));
        let q = QuotientForm::from_lists(&[4, 4], &[2, 2]);
        assert_eq!(q.c().unwrap(), BigInt::from(4096));
        assert_eq!(QuotientForm::from_lists(&[2, 2, 2], &[1, 1, 1]).d(), int(8));
    }

    #[test]
    fn c_pm_values() {
        let q = QuotientForm::from_lists(&[5], &[1]);
        assert_eq!(q.c_pm(Sign::Plus, 0), int(1));
        assert_eq!(q.c_pm(Sign::Minus, 0), int(1));
        assert_eq!(q.c_pm(Sign::Plus, 2), int(-10));
        assert_eq!(q.c_pm(Sign::Plus, 3), int(-40));
        assert_eq!(q.c_pm(Sign::Minus, 2), int(-14));
        assert_eq!(q.c_pm(Sign::Minus, 3), int(40));
        assert_eq!(q.c_pm(Sign::Plus, 1), int(0));
    }

    #[test]
    fn f0_and_factorial_ratio() {
        let q = QuotientForm::from_lists(&[5], &[1]);
        let c = q.f0_coeffs(3).unwrap();
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(120), BigInt::from(113_400)]);
        assert_eq!(q.factorial_ratio().unwrap(), BigInt::from(120));
        assert_eq!(QuotientForm::from_lists(&[2, 2], &[1, 1]).factorial_ratio().unwrap(), BigInt::from(4));
        assert_eq!(QuotientForm::from_lists(&[6, 1], &[3, 2]).factorial_ratio().unwrap(), BigInt::from(60));
    }

    #[test]
    fn invalid_quotient_flags_non_integers() {
        // not a polynomial quotient, so the integrality statements need not hold
        let q = QuotientForm { a: vec![2], b: vec![3], n: 1 };
        assert!(matches!(q.c(), Err(Error::NonIntegerC(_))));
        assert!(matches!(q.factorial_ratio(), Err(Error::NonIntegerFactorialRatio(_))));
        assert!(matches!(q.f0_coeffs(3), Err(Error::NonIntegerCoefficient { index: 1, .. })));
    }

    #[test]
    fn pochhammer_route_matches_factorial_route() {
        let a = alphas("1/5,2/5,3/5,4/5");
        let q = quotient_form_of(&a).unwrap();
        let scale = BigRational::from_integer(q.c().unwrap());
        let poch = hypergeometric_coeffs(a.values(), &scale, 20);
        let fact = q.f0_coeffs(20).unwrap();
        for (p, f) in poch.iter().zip(&fact) {
            assert_eq!(p, &BigRational::from_integer(f.clone()));
        }
    }

    #[test]
    fn polynomial_round_trip() {
        let a = alphas("1/6,1/4,3/4,5/6");
        let cyc = recognize_cyclotomic(&a).unwrap();
        let q = to_quotient_form(&cyc);
        assert_eq!(q.polynomial(), product_of_cyclotomics(&cyc));
        assert_eq!(q.n, 4);
    }

    #[test]
    fn root_polynomial_with_integers() {
        let p = root_polynomial(&[int(1), int(1)]).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[1, -2, 1]));
        assert!(root_polynomial(&[rat(1, 3)]).is_none());
    }
}
