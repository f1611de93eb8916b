//! The non-resonant case: β's distinct modulo 1 and no α ≡ β. The
//! Frobenius basis is f_l = z^{1−β_l}(1 + O(z)), M₀ is diagonal and M₁ is a
//! rank one perturbation of the identity.
//!
//! Throughout, with K = 2i·e^{πiΣ(β−α)},
//!
//! ```text
//! G_l = ∏_m Γ(α_m − β_l + 1) / ∏_m Γ(β_m − β_l + 1)
//! P_l = ∏_m sin π(β_l − α_m) / ∏_{m≠l} sin π(β_l − β_m)
//! (M₁)_kl = δ_kl + K (G_l/G_k) P_l
//! ```

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational_list, to_f64};
use crate::levelt::{mb_triple_complex, ComplexTriple};
use crate::numeric::{frobenius_eval_nonresonant, gamma_real, mb_integral_quadrature, ContourSpec};

/// Inputs closer than this to a resonance are rejected.
pub const RESONANCE_TOL: f64 = 1e-9;
const TRACE_GUARD: f64 = 1e-12;

fn dist_to_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

fn cmat(n: usize, f: impl Fn(usize, usize) -> Complex64) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, f)
}

fn ipi(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, PI * x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonresonantProblem {
    alphas: Vec<BigRational>,
    betas: Vec<BigRational>,
    al: Vec<f64>,
    be: Vec<f64>,
}

impl NonresonantProblem {
    pub fn new(alphas: Vec<BigRational>, betas: Vec<BigRational>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != betas.len() {
            return Err(Error::InvalidInput("α and β lists must have the same positive length".into()));
        }
        let al: Vec<f64> = alphas.iter().map(to_f64).collect();
        let be: Vec<f64> = betas.iter().map(to_f64).collect();
        for (i, &b) in be.iter().enumerate() {
            if let Some(j) = (0..i).find(|&j| dist_to_int(b - be[j]) < RESONANCE_TOL) {
                return Err(Error::ResonantInput(format!(
                    "β = {} and β = {} agree modulo 1",
                    format_rational(&betas[j]),
                    format_rational(&betas[i])
                )));
            }
            if let Some(k) = al.iter().position(|&a| dist_to_int(a - b) < RESONANCE_TOL) {
                return Err(Error::ResonantInput(format!(
                    "α = {} and β = {} agree modulo 1",
                    format_rational(&alphas[k]),
                    format_rational(&betas[i])
                )));
            }
        }
        Ok(NonresonantProblem { alphas, betas, al, be })
    }

    pub fn parse(alphas: &str, betas: &str) -> Result<Self> {
        Self::new(parse_rational_list(alphas)?, parse_rational_list(betas)?)
    }

    pub fn n(&self) -> usize {
        self.al.len()
    }

    pub fn alphas(&self) -> &[BigRational] {
        &self.alphas
    }

    pub fn betas(&self) -> &[BigRational] {
        &self.betas
    }

    pub fn alphas_f64(&self) -> &[f64] {
        &self.al
    }

    pub fn betas_f64(&self) -> &[f64] {
        &self.be
    }

    /// K = 2i e^{πiΣ(β−α)}
    pub fn c(&self) -> Complex64 {
        let s: f64 = self.be.iter().sum::<f64>() - self.al.iter().sum::<f64>();
        Complex64::new(0.0, 2.0) * ipi(s)
    }

    /// The α's pairwise distinct modulo 1, needed for the spectrum of M∞ to
    /// be the plain list e^{2πiα}.
    pub fn alphas_distinct(&self) -> bool {
        let a = &self.al;
        (0..a.len()).all(|i| (0..i).all(|j| dist_to_int(a[i] - a[j]) >= RESONANCE_TOL))
    }

    fn gamma_ratio(&self, l: usize) -> f64 {
        let bl = self.be[l];
        let num: f64 = self.al.iter().map(|a| gamma_real(a - bl + 1.0).expect("non-resonant")).product();
        let den: f64 = self.be.iter().map(|b| gamma_real(b - bl + 1.0).expect("non-resonant")).product();
        num / den
    }

    fn sine_ratio(&self, l: usize) -> f64 {
        let bl = self.be[l];
        let num: f64 = self.al.iter().map(|a| (PI * (bl - a)).sin()).product();
        let den: f64 = (0..self.n()).filter(|&m| m != l).map(|m| (PI * (bl - self.be[m])).sin()).product();
        num / den
    }

    pub fn triple(&self) -> ComplexTriple {
        ComplexTriple { m0: m0_diag(&self.be), m1: m1_sine(self), minf: m_infinity_formula(self) }
    }
}

/// diag(e^{−2πiβ_l})
pub fn m0_diag(betas: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(betas.len(), betas.iter().map(|b| ipi(-2.0 * b))))
}

pub fn m1_sine(p: &NonresonantProblem) -> DMatrix<Complex64> {
    let g: Vec<f64> = (0..p.n()).map(|l| p.gamma_ratio(l)).collect();
    let s: Vec<f64> = (0..p.n()).map(|l| p.sine_ratio(l)).collect();
    let c = p.c();
    cmat(p.n(), |k, l| {
        let d = if k == l { 1.0 } else { 0.0 };
        d + c * (g[l] / g[k]) * s[l]
    })
}

/// M₁ with the factor c e^{2πiβ_k}, c = 2i(−1)^n e^{πiΣ(β−α)}, and no Γ
/// ratios. Kept so that tests can show the conjugation oracle rejects it.
pub fn m1_sine_literal(p: &NonresonantProblem) -> DMatrix<Complex64> {
    let sign = if p.n() % 2 == 0 { 1.0 } else { -1.0 };
    let c = p.c() * sign;
    let s: Vec<f64> = (0..p.n()).map(|l| p.sine_ratio(l)).collect();
    cmat(p.n(), |k, l| {
        let d = if k == l { 1.0 } else { 0.0 };
        d + c * ipi(2.0 * p.be[k]) * s[l]
    })
}

/// M∞ = (M₀M₁)⁻¹ in closed form:
/// (M∞)_kl = e^{2πiβ_k}δ_kl + (4/K) e^{2πiβ_l} (G_l/G_k) P_l.
pub fn m_infinity_formula(p: &NonresonantProblem) -> DMatrix<Complex64> {
    let g: Vec<f64> = (0..p.n()).map(|l| p.gamma_ratio(l)).collect();
    let s: Vec<f64> = (0..p.n()).map(|l| p.sine_ratio(l)).collect();
    let c = p.c();
    cmat(p.n(), |k, l| {
        let d = if k == l { ipi(2.0 * p.be[k]) } else { Complex64::new(0.0, 0.0) };
        d + 4.0 / c * ipi(2.0 * p.be[l]) * (g[l] / g[k]) * s[l]
    })
}

/// (I + R)⁻¹ = I − R/(1 + Tr R) for R of rank at most one.
pub fn rank1_inverse(r: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = r.nrows();
    let denom = Complex64::new(1.0, 0.0) + r.trace();
    if denom.norm() < TRACE_GUARD {
        return Err(Error::TraceMinusOne);
    }
    Ok(DMatrix::identity(n, n) - r / denom)
}

/// V_kl = e^{−2πikβ_l} and the diagonal D with
/// D_ll = (−1)^n (2i)^{1−n} e^{πinβ_l} G_l ∏_{m≠l} 1/sin π(β_m − β_l),
/// so that the Mellin-Barnes integrals are I = V·D·f.
pub fn vd_transform(p: &NonresonantProblem) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = p.n();
    let v = cmat(n, |k, l| ipi(-2.0 * k as f64 * p.be[l]));
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let pre = sign * Complex64::new(0.0, 2.0).powi(1 - n as i32);
    let d = cmat(n, |k, l| {
        if k != l {
            return Complex64::new(0.0, 0.0);
        }
        let bl = p.be[l];
        let sines: f64 = (0..n).filter(|&m| m != l).map(|m| 1.0 / (PI * (p.be[m] - bl)).sin()).product();
        pre * ipi(n as f64 * bl) * p.gamma_ratio(l) * sines
    });
    (v, d)
}

/// max_kl |((VD)⁻¹ M^{MB} (VD) − M)_kl| for a candidate Frobenius-basis M₁.
pub fn conjugation_gap(p: &NonresonantProblem, candidate: &DMatrix<Complex64>) -> Result<f64> {
    let mb = mb_triple_complex(&p.al, &p.be)?;
    let (v, d) = vd_transform(p);
    let vd = v * d;
    let vd_inv = vd.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let conj = vd_inv * mb.m1 * vd;
    Ok((conj - candidate).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[derive(Clone, Debug, Serialize)]
pub struct VdReport {
    pub z: (f64, f64),
    pub integrals: Vec<(f64, f64)>,
    pub predicted: Vec<(f64, f64)>,
    /// max_k |I_k − (VD f)_k| / |I_k|
    pub residual: f64,
}

/// Compares the quadrature values of the Mellin-Barnes integrals with V·D
/// applied to the Frobenius series at z.
pub fn verify_vd(p: &NonresonantProblem, z: Complex64, tol: f64, terms: usize) -> Result<VdReport> {
    let contour = ContourSpec::default_for(&p.al, &p.be, tol * 1e-3)?;
    let integrals: Vec<Complex64> =
        (0..p.n()).map(|j| mb_integral_quadrature(j, z, &p.al, &p.be, &contour)).collect::<Result<_>>()?;
    let f = nalgebra::DVector::from_vec(frobenius_eval_nonresonant(&p.al, &p.be, z, terms)?);
    let (v, d) = vd_transform(p);
    let predicted = v * d * f;
    let residual = integrals
        .iter()
        .zip(predicted.iter())
        .map(|(i, q)| (i - q).norm() / i.norm())
        .fold(0.0, f64::max);
    let pair = |c: &Complex64| (c.re, c.im);
    Ok(VdReport {
        z: (z.re, z.im),
        integrals: integrals.iter().map(pair).collect(),
        predicted: predicted.iter().map(pair).collect(),
        residual,
    })
}

/// Eigenvalues of a complex matrix via the Schur form.
pub fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    m.clone().schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default()
}

/// max over k of the distance from e^{2πiα_k} to the nearest unused
/// eigenvalue.
pub fn spectrum_gap(eigs: &[Complex64], alphas: &[f64]) -> f64 {
    let mut left: Vec<Complex64> = eigs.to_vec();
    let mut worst: f64 = 0.0;
    for &a in alphas {
        let target = ipi(2.0 * a);
        let Some((i, d)) = left
            .iter()
            .map(|e| (e - target).norm())
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(&y.1))
        else {
            return f64::INFINITY;
        };
        worst = worst.max(d);
        left.swap_remove(i);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn basic() -> NonresonantProblem {
        NonresonantProblem::parse("1/5,2/5", "1,1/2").unwrap()
    }

    #[test]
    fn m0_examples() {
        let m = m0_diag(&[1.0, 0.5]);
        assert!((m[(0, 0)] - 1.0).norm() < 1e-15 && (m[(1, 1)] + 1.0).norm() < 1e-15);
        let m = m0_diag(&[1.0 / 3.0, 2.0 / 3.0]);
        assert!((m.determinant() - ipi(-2.0)).norm() < 1e-14);
    }

    #[test]
    fn validation() {
        assert!(matches!(NonresonantProblem::parse("1/5,2/5", "1/2,3/2"), Err(Error::ResonantInput(_))));
        assert!(matches!(NonresonantProblem::parse("1/2,2/5", "1,1/2"), Err(Error::ResonantInput(_))));
        assert!(NonresonantProblem::parse("1/5", "1,1/2").is_err());
    }

    #[test]
    fn basic_relations() {
        let p = basic();
        let t = p.triple();
        assert!(t.relation_residual() < 1e-10);
        assert!(spectrum_gap(&eigenvalues(&t.minf), p.alphas_f64()) < 1e-9);
        let direct = (&t.m0 * &t.m1).try_inverse().unwrap();
        assert!(max_abs(&(direct - &t.minf)) < 1e-10);
        // 1 + Tr(M₁ − I) = A_n/B_n
        let a: Complex64 = p.alphas_f64().iter().map(|a| -ipi(-2.0 * a)).product();
        let b: Complex64 = p.betas_f64().iter().map(|b| -ipi(-2.0 * b)).product();
        let tr = Complex64::new(1.0, 0.0) + t.m1.trace() - 2.0;
        assert!((tr - a / b).norm() < 1e-10);
    }

    #[test]
    fn conjugation_oracle() {
        for (a, b) in [("1/5,2/5", "1,1/2"), ("1/7,2/3,5/12", "1,1/4,1/2"), ("1/7,2/3,5/12,9/10", "1,1/4,1/2,1/3")] {
            let p = NonresonantProblem::parse(a, b).unwrap();
            assert!(conjugation_gap(&p, &m1_sine(&p)).unwrap() < 1e-8, "{a} | {b}");
            assert!(conjugation_gap(&p, &m1_sine_literal(&p)).unwrap() > 1e-3, "{a} | {b}");
        }
    }

    #[test]
    fn vd_against_quadrature() {
        let r = verify_vd(&basic(), Complex64::new(-0.5, 0.0), 1e-10, 2000).unwrap();
        assert!(r.residual < 1e-6, "{r:?}");
    }

    #[test]
    fn vd_sign_for_odd_and_larger_n() {
        for (a, b) in [("3/10", "1/2"), ("3/5,3/7,1/2", "1,2/5,6/11"), ("1/7,2/3,5/12,9/10", "1,1/4,1/2,1/3")] {
            let p = NonresonantProblem::parse(a, b).unwrap();
            let r = verify_vd(&p, Complex64::new(-0.5, 0.0), 1e-10, 4000).unwrap();
            assert!(r.residual < 1e-6, "{a} | {b}: {r:?}");
        }
    }

    #[test]
    fn rank1_examples() {
        let z = DMatrix::<Complex64>::zeros(3, 3);
        assert_eq!(rank1_inverse(&z).unwrap(), DMatrix::identity(3, 3));
        let u = nalgebra::DVector::from_vec(vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let v = nalgebra::DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)]);
        assert_eq!(rank1_inverse(&(u * v.transpose())), Err(Error::TraceMinusOne));
    }

    proptest! {
        #[test]
        fn rank1_matches_direct(u in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..6),
                                v in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 6)) {
            let n = u.len();
            let u = nalgebra::DVector::from_iterator(n, u.iter().map(|&(a, b)| Complex64::new(a, b)));
            let v = nalgebra::DVector::from_iterator(n, v[..n].iter().map(|&(a, b)| Complex64::new(a, b)));
            let r = &u * v.transpose();
            prop_assume!((Complex64::new(1.0, 0.0) + r.trace()).norm() > 0.1);
            let direct = (DMatrix::identity(n, n) + &r).try_inverse().unwrap();
            let closed = rank1_inverse(&r).unwrap();
            prop_assert!(max_abs(&(direct - closed)) < 1e-12 * (1.0 + max_abs(&r)).powi(2) * 10.0);
        }

        #[test]
        fn random_relations(num in prop::collection::vec(1i64..12, 6), den in prop::collection::vec(2i64..13, 6), n in 1usize..5) {
            let al: Vec<BigRational> = (0..n).map(|i| crate::exact::rat(num[i] % den[i], den[i])).collect();
            let be: Vec<BigRational> = (0..n).map(|i| crate::exact::rat(i as i64 + 1, n as i64 + 1)).collect();
            if let Ok(p) = NonresonantProblem::new(al, be) {
                let t = p.triple();
                prop_assert!(t.relation_residual() < 1e-9);
                prop_assert!(conjugation_gap(&p, &t.m1).unwrap() < 1e-7);
            }
        }
    }
}
