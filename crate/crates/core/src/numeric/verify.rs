use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::frobenius::frobenius_column;
use super::mb::{mb_integral_quadrature, mb_integral_residues, ContourSpec};
use super::special::{gamma_real, zeta};
use crate::cyclo::AlphaList;
use crate::error::Result;
use crate::exact::to_f64;
use crate::unipotent::{t_matrix, Normalization, UnipotentProblem};
use crate::zeta::Generator;

/// Numeric values for the generators: g_k ↦ ζ(k)/(2πi)^k, λ ↦ log C/(2πi).
pub fn generator_values(c: f64) -> impl Fn(Generator) -> Complex64 {
    move |g| match g {
        Generator::Lambda => Complex64::new(c.ln(), 0.0) / Complex64::new(0.0, 2.0 * PI),
        Generator::Zeta(k) => zeta(k) / Complex64::new(0.0, 2.0 * PI).powu(k),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TReport {
    pub z: (f64, f64),
    /// I_k(z)/∏Γ(α) by quadrature
    pub integrals: Vec<(f64, f64)>,
    /// (T · F)(z)
    pub predicted: Vec<(f64, f64)>,
    /// max_k |I_k − (T F)_k| / |I_k|, raw Frobenius basis
    pub residual: f64,
    /// the same with T_C and the C-normalized column at z/C
    pub normalized_residual: f64,
    /// max_k relative gap between quadrature and residue sums
    pub residue_gap: f64,
}

impl TReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.residual < tol && self.normalized_residual < tol
    }
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

fn max_rel(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm() / x.norm()).fold(0.0, f64::max)
}

/// Checks I = T·F numerically: quadrature for I, the evaluated exact T
/// and the Frobenius series for F.
pub fn verify_t(alphas: &AlphaList, z: Complex64, tol: f64, terms: usize) -> Result<TReport> {
    let problem = UnipotentProblem::new(alphas.clone())?;
    let n = problem.n();
    let al: Vec<f64> = alphas.values().iter().map(to_f64).collect();
    let be = vec![1.0; n];
    let contour = ContourSpec::default_for(&al, &be, tol * 1e-3)?;
    let gamma_prod: f64 = al.iter().map(|&a| gamma_real(a)).product::<Result<f64>>()?;

    let integrals: Vec<Complex64> = (0..n)
        .map(|j| mb_integral_quadrature(j, z, &al, &be, &contour).map(|v| v / gamma_prod))
        .collect::<Result<_>>()?;
    let residues: Vec<Complex64> = (0..n)
        .map(|j| mb_integral_residues(j, z, &al, &be, terms).map(|v| v / gamma_prod))
        .collect::<Result<_>>()?;

    let c = to_f64(&num_rational::BigRational::from_integer(problem.c().clone()));
    let values = generator_values(c);
    let t_raw = t_matrix(problem.quotient(), n, Normalization::Raw).eval(&values);
    let t_c = t_matrix(problem.quotient(), n, Normalization::CNormalized).eval(&values);

    let f_raw = DVector::from_vec(frobenius_column(&al, 1.0, z, terms)?);
    let predicted: Vec<Complex64> = (t_raw * f_raw).iter().copied().collect();
    // I(z) = T_C F^C(z/C)
    let f_c = DVector::from_vec(frobenius_column(&al, c, z / c, terms)?);
    let predicted_c: Vec<Complex64> = (t_c * f_c).iter().copied().collect();

    Ok(TReport {
        z: pair(z),
        residual: max_rel(&integrals, &predicted),
        normalized_residual: max_rel(&integrals, &predicted_c),
        residue_gap: max_rel(&integrals, &residues),
        integrals: integrals.into_iter().map(pair).collect(),
        predicted: predicted.into_iter().map(pair).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_residual() {
        let a = AlphaList::parse("1/2,1/2").unwrap();
        let r = verify_t(&a, Complex64::new(-0.5, 0.0), 1e-9, 2000).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
        assert!(r.normalized_residual < 1e-6, "{r:?}");
    }

    #[test]
    fn quintic_residual_and_plateau() {
        let a = AlphaList::parse("1/5,2/5,3/5,4/5").unwrap();
        let z = Complex64::new(-0.1, 0.0);
        let r1 = verify_t(&a, z, 1e-9, 1000).unwrap();
        assert!(r1.residual < 1e-5, "{r1:?}");
        assert!(r1.residue_gap < 1e-7, "{r1:?}");
        let r2 = verify_t(&a, z, 1e-11, 2000).unwrap();
        assert!(r2.residual < 1e-5);
    }
}
