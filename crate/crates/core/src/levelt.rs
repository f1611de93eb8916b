//! Companion matrices and the Mellin-Barnes basis triple.
//!
//! With A(X) = ∏(X − e^{−2πiα_k}) and B(X) = ∏(X − e^{−2πiβ_k}) written as
//! `X^n + A₁X^{n−1} + … + A_n`, the Mellin-Barnes basis has M₀ = companion(B),
//! M∞⁻¹ = companion(A) and M₁ differing from the identity in its first row.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::root_polynomial;
use crate::error::{Error, Result};
use crate::exact::{format_rational, frac_mod1, IntPolynomial};
use crate::unipotent::MonodromyTriple;
use crate::zeta::FieldMatrix;

const ROOT_SEPARATION: f64 = 1e-9;

/// A monodromy triple with complex double entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexTriple {
    pub m0: DMatrix<Complex64>,
    pub m1: DMatrix<Complex64>,
    pub minf: DMatrix<Complex64>,
}

impl ComplexTriple {
    /// max |M₀M₁M∞ − I|
    pub fn relation_residual(&self) -> f64 {
        let n = self.m0.nrows();
        let r = &self.m0 * &self.m1 * &self.minf - DMatrix::identity(n, n);
        r.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Either exact integer matrices (both root polynomials integral) or complex.
#[derive(Clone, Debug)]
pub enum MbTriple {
    Exact(MonodromyTriple),
    Complex(ComplexTriple),
}

/// Companion matrix in Levelt's orientation: ones on the superdiagonal,
/// last row (−A_n, …, −A₁).
pub fn companion(poly: &IntPolynomial) -> Result<FieldMatrix> {
    if !poly.is_monic() {
        return Err(Error::NonMonic);
    }
    let n = poly.degree().unwrap_or(0);
    Ok(FieldMatrix::from_rationals(n, |k, l| {
        if k + 1 == n {
            -BigRational::from_integer(poly.coeff(l))
        } else if l == k + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }))
}

/// Complex companion matrix; `coeffs` ascending, leading coefficient 1.
pub fn companion_complex(coeffs: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let n = coeffs.len().checked_sub(1).ok_or(Error::NonMonic)?;
    if (coeffs[n] - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::NonMonic);
    }
    Ok(DMatrix::from_fn(n, n, |k, l| {
        if k + 1 == n {
            -coeffs[l]
        } else if l == k + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Ascending coefficients of ∏(X − e^{−2πi x}).
pub fn root_poly_complex(xs: &[f64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &x in xs {
        let root = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * x);
        let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        p = next;
    }
    p
}

fn check_nonresonant_exact(alphas: &[BigRational], betas: &[BigRational]) -> Result<()> {
    if alphas.len() != betas.len() || alphas.is_empty() {
        return Err(Error::InvalidInput("α and β lists must have the same positive length".into()));
    }
    for a in alphas {
        for b in betas {
            if frac_mod1(&(a - b)).is_zero() {
                return Err(Error::ResonantInput(format!(
                    "α = {} and β = {} agree modulo 1",
                    format_rational(a),
                    format_rational(b)
                )));
            }
        }
    }
    Ok(())
}

/// Exact triple from integral root polynomials.
pub fn mb_triple_exact(a: &IntPolynomial, b: &IntPolynomial) -> Result<MonodromyTriple> {
    let n = b.degree().unwrap_or(0);
    if a.degree() != Some(n) {
        return Err(Error::InvalidInput("A and B must have equal degree".into()));
    }
    let m0 = companion(b)?;
    let bn = BigRational::from_integer(b.coeff(0));
    assert!(!bn.is_zero(), "B_n vanishes although all roots are on the unit circle");
    let an = BigRational::from_integer(a.coeff(0));
    let m1 = FieldMatrix::from_rationals(n, |k, l| {
        let id = if k == l { BigRational::one() } else { BigRational::zero() };
        if k == 0 {
            id + BigRational::from_integer(a.coeff(l) - b.coeff(l)) / &bn
        } else {
            id
        }
    });
    // top row −A_{n−1−l}/A_n with A₀ = 1, ones below the diagonal
    let minf = FieldMatrix::from_rationals(n, |k, l| {
        if k == 0 {
            -BigRational::from_integer(a.coeff(l + 1)) / &an
        } else if l + 1 == k {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    Ok(MonodromyTriple { m0, m1, minf })
}

/// Complex triple for arbitrary real exponents.
pub fn mb_triple_complex(alphas: &[f64], betas: &[f64]) -> Result<ComplexTriple> {
    if alphas.len() != betas.len() || alphas.is_empty() {
        return Err(Error::InvalidInput("α and β lists must have the same positive length".into()));
    }
    for &a in alphas {
        for &b in betas {
            let d = a - b;
            if (d - d.round()).abs() < ROOT_SEPARATION {
                return Err(Error::ResonantInput(format!("α = {a} and β = {b} agree modulo 1")));
            }
        }
    }
    let n = alphas.len();
    let a = root_poly_complex(alphas);
    let b = root_poly_complex(betas);
    let m0 = companion_complex(&b)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let m1 = DMatrix::from_fn(n, n, |k, l| {
        let id = if k == l { one } else { zero };
        if k == 0 {
            id + (a[l] - b[l]) / b[0]
        } else {
            id
        }
    });
    let minf = DMatrix::from_fn(n, n, |k, l| {
        if k == 0 {
            -a[l + 1] / a[0]
        } else if l + 1 == k {
            one
        } else {
            zero
        }
    });
    Ok(ComplexTriple { m0, m1, minf })
}

/// The Mellin-Barnes triple, exact whenever both exponent sets are
/// cyclotomic multisets.
pub fn mb_triple(alphas: &[BigRational], betas: &[BigRational]) -> Result<MbTriple> {
    check_nonresonant_exact(alphas, betas)?;
    match (root_polynomial(alphas), root_polynomial(betas)) {
        (Some(a), Some(b)) => Ok(MbTriple::Exact(mb_triple_exact(&a, &b)?)),
        _ => {
            let af: Vec<f64> = alphas.iter().map(crate::exact::to_f64).collect();
            let bf: Vec<f64> = betas.iter().map(crate::exact::to_f64).collect();
            Ok(MbTriple::Complex(mb_triple_complex(&af, &bf)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_rational_list};
    use crate::zeta::ZetaElem;

    fn rows(m: &FieldMatrix) -> Vec<Vec<BigRational>> {
        m.as_rational().unwrap()
    }

    #[test]
    fn companion_examples() {
        assert_eq!(rows(&companion(&IntPolynomial::from_i64(&[-1, 1])).unwrap()), vec![vec![int(1)]]);
        assert_eq!(
            rows(&companion(&IntPolynomial::from_i64(&[1, -2, 1])).unwrap()),
            vec![vec![int(0), int(1)], vec![int(-1), int(2)]]
        );
        let c5 = companion(&crate::exact::cyclotomic_poly(5)).unwrap();
        assert_eq!(rows(&c5)[3], vec![int(-1); 4]);
        assert_eq!(companion(&IntPolynomial::from_i64(&[1, 2])), Err(Error::NonMonic));
    }

    #[test]
    fn companion_char_poly() {
        let p = IntPolynomial::from_i64(&[3, -1, 4, 1]);
        let cp: Vec<_> = companion(&p).unwrap().char_poly().iter().map(|c| c.as_rational().unwrap()).collect();
        assert_eq!(cp, vec![int(3), int(-1), int(4), int(1)]);
    }

    fn quintic() -> MonodromyTriple {
        let a = parse_rational_list("1/5,2/5,3/5,4/5").unwrap();
        match mb_triple(&a, &[int(1), int(1), int(1), int(1)]).unwrap() {
            MbTriple::Exact(t) => t,
            MbTriple::Complex(_) => panic!("expected the exact route"),
        }
    }

    #[test]
    fn quintic_mb_triple() {
        let t = quintic();
        let d = t.m1.sub(&FieldMatrix::identity(4));
        assert_eq!(rows(&d)[0], vec![int(0), int(5), int(-5), int(5)]);
        assert!(rows(&d)[1..].iter().flatten().all(Zero::is_zero));
        assert_eq!(t.m1, t.m0.inverse().unwrap().mul(&t.minf.inverse().unwrap()));
        assert_eq!(t.m1.rank_of_difference_from_identity(), 1);
        assert!(t.relation_holds());
    }

    #[test]
    fn spectra_match_root_polynomials() {
        let t = quintic();
        let b: Vec<_> = t.m0.char_poly();
        let expected_b = IntPolynomial::from_i64(&[1, -4, 6, -4, 1]);
        for (k, c) in b.iter().enumerate() {
            assert_eq!(c, &ZetaElem::from_rational(BigRational::from_integer(expected_b.coeff(k))));
        }
        let a = t.minf.inverse().unwrap().char_poly();
        for (k, c) in a.iter().enumerate() {
            assert_eq!(c.as_rational().unwrap(), int(1), "coefficient {k}");
        }
    }

    #[test]
    fn complex_route_agrees_with_exact() {
        let t = quintic();
        let c = mb_triple_complex(&[0.2, 0.4, 0.6, 0.8], &[1.0; 4]).unwrap();
        let none = |_: crate::zeta::Generator| Complex64::new(0.0, 0.0);
        for (exact, approx) in [(&t.m0, &c.m0), (&t.m1, &c.m1), (&t.minf, &c.minf)] {
            let diff = exact.eval(&none) - approx;
            assert!(diff.iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn complex_relation_and_spectrum() {
        let alphas = [0.2, 0.4];
        let c = mb_triple_complex(&alphas, &[1.0, 0.5]).unwrap();
        assert!(c.relation_residual() < 1e-12);
        let inv = c.minf.clone().try_inverse().unwrap();
        let mut eig: Vec<Complex64> = inv.schur().eigenvalues().unwrap().iter().copied().collect();
        for a in alphas {
            let target = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * a);
            let (i, _) = eig
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - target).norm().total_cmp(&(y.1 - target).norm()))
                .unwrap();
            assert!((eig[i] - target).norm() < 1e-9);
            eig.remove(i);
        }
    }

    #[test]
    fn resonance_is_rejected() {
        let a = parse_rational_list("1/2,1/3").unwrap();
        let b = parse_rational_list("3/2,1").unwrap();
        assert!(matches!(mb_triple(&a, &b), Err(Error::ResonantInput(_))));
        assert!(matches!(mb_triple_complex(&[0.5], &[1.5]), Err(Error::ResonantInput(_))));
    }
}
