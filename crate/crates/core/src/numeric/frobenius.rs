use std::f64::consts::PI;

use num_complex::Complex64;

use super::mb::{log_z, pole_structure, unipotent_series_jet, PoleStructure};
use crate::cyclo::{quotient_form_of, AlphaList};
use crate::error::{Error, Result};
use crate::exact::to_f64;

/// The Frobenius column `(f_{n−1}/(2πi)^{n−1}, …, f₁/(2πi), f₀)` at z for
/// the maximally unipotent equation. With `normalized` the series runs in
/// Cz while the logarithms stay log z, giving the C-normalized basis.
pub fn frobenius_eval_unipotent(alphas: &AlphaList, normalized: bool, z: Complex64, terms: usize) -> Result<Vec<Complex64>> {
    let al: Vec<f64> = alphas.values().iter().map(to_f64).collect();
    let scale = if normalized {
        to_f64(&num_rational::BigRational::from_integer(quotient_form_of(alphas)?.c()?))
    } else {
        1.0
    };
    frobenius_column(&al, scale, z, terms)
}

pub(crate) fn frobenius_column(alphas: &[f64], scale: f64, z: Complex64, terms: usize) -> Result<Vec<Complex64>> {
    let n = alphas.len();
    let w = z * scale;
    if w.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!("series argument {w} outside the unit disc")));
    }
    let logz = log_z(z)?;
    let s = unipotent_series_jet(alphas, w, terms)?;
    // f_k = ∑_{i ≤ k} log^i(z)/i! · S_{k−i}
    let mut f = vec![Complex64::new(0.0, 0.0); n];
    for (k, fk) in f.iter_mut().enumerate() {
        let mut pow = Complex64::new(1.0, 0.0);
        for i in 0..=k {
            if i > 0 {
                pow *= logz / i as f64;
            }
            *fk += pow * s.0[k - i];
        }
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    Ok((0..n).rev().map(|k| f[k] / two_pi_i.powu(k as u32)).collect())
}

/// f_l(z) = z^{1−β_l} ∑_m ∏(α_k − β_l + 1)_m / ∏(β_k − β_l + 1)_m z^m, one
/// per β in input order.
pub fn frobenius_eval_nonresonant(alphas: &[f64], betas: &[f64], z: Complex64, terms: usize) -> Result<Vec<Complex64>> {
    if pole_structure(alphas, betas)? != PoleStructure::Nonresonant {
        return Err(Error::InvalidInput("β's must be pairwise distinct modulo 1".into()));
    }
    if z.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!("|z| = {} is outside the unit disc", z.norm())));
    }
    let logz = log_z(z)?;
    betas
        .iter()
        .map(|&bl| {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = term;
            let mut quiet = 0;
            for m in 0..terms {
                let mf = m as f64;
                let num: f64 = alphas.iter().map(|a| a - bl + 1.0 + mf).product();
                let den: f64 = betas.iter().map(|b| b - bl + 1.0 + mf).product();
                term *= z * num / den;
                sum += term;
                if term.norm() <= 1e-17 * sum.norm() {
                    quiet += 1;
                    if quiet >= 3 {
                        return Ok(((1.0 - bl) * logz).exp() * sum);
                    }
                } else {
                    quiet = 0;
                }
            }
            Err(Error::NotConverged(format!("series for β = {bl} did not settle within {terms} terms")))
        })
        .collect()
}
