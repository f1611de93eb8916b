use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{format_rational, parse_rational, to_f64, zeta_even_ratio};

/// A generator of ℚ[λ, g₃, g₅, …].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// log(C)/(2πi)
    Lambda,
    /// ζ(k)/(2πi)^k for odd k ≥ 3
    Zeta(u32),
}

impl Generator {
    fn slot(self) -> usize {
        match self {
            Generator::Lambda => 0,
            Generator::Zeta(k) => ((k - 1) / 2) as usize,
        }
    }

    fn from_slot(i: usize) -> Self {
        if i == 0 {
            Generator::Lambda
        } else {
            Generator::Zeta(2 * i as u32 + 1)
        }
    }

    pub fn name(self) -> String {
        match self {
            Generator::Lambda => "lambda".into(),
            Generator::Zeta(k) => format!("g{k}"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "lambda" {
            return Some(Generator::Lambda);
        }
        let k: u32 = s.strip_prefix('g')?.parse().ok()?;
        (k >= 3 && k % 2 == 1).then_some(Generator::Zeta(k))
    }
}

/// Exponent vector over (λ, g₃, g₅, …), trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: Generator) -> Self {
        let mut exps = vec![0; g.slot() + 1];
        exps[g.slot()] = 1;
        Monomial { exps }
    }

    fn trimmed(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// (generator, exponent) pairs with positive exponent.
    pub fn factors(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Generator::from_slot(i), e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exps.len().max(other.exps.len());
        let exps = (0..len)
            .map(|i| self.exps.get(i).unwrap_or(&0) + other.exps.get(i).unwrap_or(&0))
            .collect();
        Monomial { exps }
    }
}

// graded lexicographic on (λ, g₃, g₅, …)
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.exps.len().max(other.exps.len());
            for i in 0..len {
                let a = self.exps.get(i).unwrap_or(&0);
                let b = other.exps.get(i).unwrap_or(&0);
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .map(|(g, e)| if e == 1 { g.name() } else { format!("{}^{e}", g.name()) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An element of ℚ[λ, g₃, g₅, …]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZetaElem {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ZetaElem {
    pub fn zero() -> Self {
        ZetaElem::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::one(), r);
        }
        ZetaElem { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn generator(g: Generator) -> Self {
        ZetaElem {
            terms: BTreeMap::from([(Monomial::generator(g), BigRational::one())]),
        }
    }

    pub fn lambda() -> Self {
        Self::generator(Generator::Lambda)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut out = ZetaElem::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational, if no generator appears.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return ZetaElem::zero();
        }
        ZetaElem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(ZetaElem::one(), |acc, _| &acc * self)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.factors().map(|(g, _)| g)).collect()
    }

    /// Substitutes numeric values for the generators.
    pub fn eval(&self, value: &impl Fn(Generator) -> Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.factors()
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (g, e)| acc * value(g).powu(e))
            })
            .sum()
    }

    /// Parses the `Display` form, e.g. `"25/12 - 200*g3 + lambda^2"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut out = ZetaElem::zero();
        let mut term_start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&s[term_start..i]);
                term_start = i;
            }
        }
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let mut coeff = BigRational::one();
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor).ok()?;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((nm, e)) => (nm, e.parse::<u32>().ok()?),
                        None => (factor, 1),
                    };
                    let g = Generator::parse(name)?;
                    mono = mono.mul(&Monomial::generator(g).pow(e));
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Some(out)
    }
}

impl Monomial {
    fn pow(&self, e: u32) -> Monomial {
        Monomial::trimmed(self.exps.iter().map(|x| x * e).collect())
    }
}

/// ζ(k)/(2πi)^k as a ring element: 0 for k = 1, a Bernoulli rational for
/// even k, the generator g_k for odd k ≥ 3.
pub fn zeta_symbol(k: u32) -> ZetaElem {
    assert!(k >= 1, "zeta_symbol needs k >= 1");
    if k == 1 {
        ZetaElem::zero()
    } else if k % 2 == 0 {
        ZetaElem::from_rational(zeta_even_ratio(k as usize))
    } else {
        ZetaElem::generator(Generator::Zeta(k))
    }
}

impl From<BigRational> for ZetaElem {
    fn from(r: BigRational) -> Self {
        ZetaElem::from_rational(r)
    }
}

impl Add for &ZetaElem {
    type Output = ZetaElem;
    fn add(self, rhs: &ZetaElem) -> ZetaElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ZetaElem {
    type Output = ZetaElem;
    fn add(mut self, rhs: ZetaElem) -> ZetaElem {
        self += &rhs;
        self
    }
}

impl AddAssign<&ZetaElem> for ZetaElem {
    fn add_assign(&mut self, rhs: &ZetaElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ZetaElem> for ZetaElem {
    fn sub_assign(&mut self, rhs: &ZetaElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &ZetaElem {
    type Output = ZetaElem;
    fn sub(self, rhs: &ZetaElem) -> ZetaElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ZetaElem {
    type Output = ZetaElem;
    fn sub(mut self, rhs: ZetaElem) -> ZetaElem {
        self -= &rhs;
        self
    }
}

impl Neg for &ZetaElem {
    type Output = ZetaElem;
    fn neg(self) -> ZetaElem {
        ZetaElem {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for ZetaElem {
    type Output = ZetaElem;
    fn neg(self) -> ZetaElem {
        -&self
    }
}

impl Mul for &ZetaElem {
    type Output = ZetaElem;
    fn mul(self, rhs: &ZetaElem) -> ZetaElem {
        let mut out = ZetaElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ZetaElem {
    type Output = ZetaElem;
    fn mul(self, rhs: ZetaElem) -> ZetaElem {
        &self * &rhs
    }
}

impl fmt::Display for ZetaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    mono: BTreeMap<String, u32>,
}

impl Serialize for ZetaElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                coeff: format_rational(c),
                mono: m.factors().map(|(g, e)| (g.name(), e)).collect(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZetaElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = ZetaElem::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            let mut m = Monomial::one();
            for (name, e) in t.mono {
                let g = Generator::parse(&name).ok_or_else(|| D::Error::custom(format!("unknown generator {name}")))?;
                m = m.mul(&Monomial::generator(g).pow(e));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}
