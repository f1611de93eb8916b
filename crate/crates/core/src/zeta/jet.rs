use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elem::{zeta_symbol, ZetaElem};
use crate::cyclo::{QuotientForm, Sign};
use crate::error::{Error, Result};
use crate::exact::{factorial, multiplicity_m, partitions};

/// Truncated Taylor data of a function of s at s = 0, written in t = 2πis:
/// `coeffs[k] = f^{(k)}(0) / (k! (2πi)^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<ZetaElem>,
}

impl Jet {
    pub fn new(coeffs: Vec<ZetaElem>) -> Self {
        assert!(!coeffs.is_empty(), "jets have positive length");
        Jet { coeffs }
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        Jet::new(coeffs.iter().cloned().map(ZetaElem::from_rational).collect())
    }

    pub fn zero(n: usize) -> Self {
        Jet::new(vec![ZetaElem::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        let mut j = Jet::zero(n);
        j.coeffs[0] = ZetaElem::one();
        j
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[ZetaElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &ZetaElem {
        &self.coeffs[k]
    }

    /// Jet of e^{ct}: c^k/k!.
    pub fn exp_linear(c: &ZetaElem, n: usize) -> Self {
        let mut coeffs = Vec::with_capacity(n);
        let mut term = ZetaElem::one();
        for k in 0..n {
            if k > 0 {
                term = (&term * c).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            }
            coeffs.push(term.clone());
        }
        Jet::new(coeffs)
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.len(), other.len(), "jet lengths differ");
        Jet::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &ZetaElem) -> Jet {
        Jet::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

pub fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    assert_eq!(a.len(), b.len(), "jet lengths differ");
    let n = a.len();
    let coeffs = (0..n)
        .map(|k| {
            let mut acc = ZetaElem::zero();
            for i in 0..=k {
                if a.coeffs[i].is_zero() || b.coeffs[k - i].is_zero() {
                    continue;
                }
                acc += &(&a.coeffs[i] * &b.coeffs[k - i]);
            }
            acc
        })
        .collect();
    Jet::new(coeffs)
}

/// Truncated exponential, from e' = j'e: e_k = (1/k) ∑_{i=1}^k i j_i e_{k−i}.
/// Panics if the constant term is nonzero.
pub fn jet_exp(j: &Jet) -> Jet {
    assert!(j.coeffs[0].is_zero(), "jet_exp needs a zero constant term");
    let n = j.len();
    let mut e = vec![ZetaElem::one()];
    for k in 1..n {
        let mut acc = ZetaElem::zero();
        for i in 1..=k {
            if j.coeffs[i].is_zero() || e[k - i].is_zero() {
                continue;
            }
            acc += &(&j.coeffs[i] * &e[k - i]).scale(&BigRational::from_integer(BigInt::from(i)));
        }
        e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k))));
    }
    Jet::new(e)
}

/// Reciprocal jet. The constant term must be a nonzero rational.
pub fn jet_inverse(j: &Jet) -> Result<Jet> {
    let c0 = j.coeffs[0]
        .as_rational()
        .filter(|r| !r.is_zero())
        .ok_or_else(|| Error::NonInvertibleJet(j.coeffs[0].to_string()))?;
    let inv0 = c0.recip();
    let mut b = vec![ZetaElem::from_rational(inv0.clone())];
    for k in 1..j.len() {
        let mut acc = ZetaElem::zero();
        for i in 1..=k {
            if j.coeffs[i].is_zero() || b[k - i].is_zero() {
                continue;
            }
            acc += &(&j.coeffs[i] * &b[k - i]);
        }
        b.push(acc.scale(&-inv0.clone()));
    }
    Ok(Jet::new(b))
}

/// ∑_{p ∈ π_j} (1/M(p)) ∏_i x(p_i), the partition-sum form of [t^j] exp(∑ x_k t^k).
pub fn partition_sum(x: impl Fn(u32) -> ZetaElem, j: u32) -> ZetaElem {
    let mut out = ZetaElem::zero();
    for p in partitions(j) {
        let prod = p.parts().iter().fold(ZetaElem::one(), |acc, &k| &acc * &x(k));
        out += &prod.scale(&BigRational::new(BigInt::one(), multiplicity_m(&p)));
    }
    out
}

/// The weights c_p^± ζ(p)/(2πi)^p entering the exponentials.
pub fn weighted_zeta(q: &QuotientForm, sign: Sign, p: u32) -> ZetaElem {
    zeta_symbol(p).scale(&q.c_pm(sign, p))
}

fn exponent_jet(q: &QuotientForm, sign: Sign, n: usize) -> Jet {
    let mut coeffs = vec![ZetaElem::zero(); n];
    for (p, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = weighted_zeta(q, sign, p as u32);
    }
    Jet::new(coeffs)
}

/// Jet of φ_C(s) = ∏Γ(a_i s + 1) / ∏Γ(b_i s + 1) · Γ(1 − s)^n.
pub fn phi_c_jet(q: &QuotientForm, n: usize) -> Jet {
    jet_inverse(&jet_exp(&exponent_jet(q, Sign::Minus, n))).expect("exp jets are invertible")
}

/// Jet of exp(∑ c_p^+ ζ(p) s^p).
pub fn v_plus_jet(q: &QuotientForm, n: usize) -> Jet {
    jet_exp(&exponent_jet(q, Sign::Plus, n))
}

/// Jet of A(e^t) for an integer polynomial A: coefficient l is ∑_k A_k k^l / l!.
pub fn poly_at_exp(poly: &crate::exact::IntPolynomial, n: usize) -> Jet {
    let coeffs = (0..n)
        .map(|l| {
            let mut acc = BigInt::zero();
            for (k, a) in poly.coeffs().iter().enumerate() {
                acc += a * BigInt::from(k).pow(l as u32);
            }
            ZetaElem::from_rational(BigRational::new(acc, factorial(l as u64)))
        })
        .collect();
    Jet::new(coeffs)
}
