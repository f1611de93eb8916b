//! Mellin-Barnes integrals
//!
//! ```text
//! I_j(z) = (−1)^n/(2πi)^n ∫_L ∏ Γ(α_k + s) Γ(1 − β_k − s) e^{(2j−n)πis} z^s ds
//! ```
//!
//! along a vertical line from +i∞ to −i∞ that separates the poles −α_k − m
//! (left) from 1 − β_k + m (right), with arg z ∈ (0, 2π).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cjet::CJet;
use super::quad::integrate;
use super::special::{gamma_complex, polygamma};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const TAIL_LIMIT: f64 = 200.0;
const RESONANCE_GUARD: f64 = 1e-9;

/// log z with arg z ∈ (0, 2π).
pub fn log_z(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::InvalidInput("z must be nonzero".into()));
    }
    let mut arg = z.arg();
    if arg <= 0.0 {
        arg += 2.0 * PI;
    }
    if arg >= 2.0 * PI || arg <= 0.0 {
        return Err(Error::InvalidInput(format!("arg z must lie in (0, 2π), z = {z}")));
    }
    Ok(Complex64::new(z.norm().ln(), arg))
}

/// Vertical line Re s = sigma. `t_max` caps the truncation height; when
/// absent the line is extended until the tail bound is met.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    pub sigma: f64,
    pub t_max: Option<f64>,
    pub tol: f64,
}

impl ContourSpec {
    /// Midpoint of the pole-free strip (max −α, min 1 − β).
    pub fn default_for(alphas: &[f64], betas: &[f64], tol: f64) -> Result<Self> {
        let (lo, hi) = strip(alphas, betas);
        if lo >= hi {
            return Err(Error::ContourInvalid(format!("empty strip ({lo}, {hi})")));
        }
        Ok(ContourSpec { sigma: 0.5 * (lo + hi), t_max: None, tol })
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self, alphas: &[f64], betas: &[f64]) -> Result<()> {
        let (lo, hi) = strip(alphas, betas);
        if !(self.sigma > lo && self.sigma < hi) {
            return Err(Error::ContourInvalid(format!(
                "sigma = {} must lie strictly inside ({lo}, {hi})",
                self.sigma
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::ContourInvalid("tolerance must be positive".into()));
        }
        Ok(())
    }
}

fn strip(alphas: &[f64], betas: &[f64]) -> (f64, f64) {
    let lo = alphas.iter().map(|a| -a).fold(f64::NEG_INFINITY, f64::max);
    let hi = betas.iter().map(|b| 1.0 - b).fold(f64::INFINITY, f64::min);
    (lo, hi)
}

fn prefactor(n: usize) -> Complex64 {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign / (2.0 * PI * I).powu(n as u32)
}

/// The integrand ∏Γ(α_k + s)Γ(1 − β_k − s) e^{(2j−n)πis} z^s.
pub fn mb_integrand(j: usize, s: Complex64, alphas: &[f64], betas: &[f64], logz: Complex64) -> Result<Complex64> {
    let n = alphas.len();
    let mut acc = ((2.0 * j as f64 - n as f64) * PI * I * s + s * logz).exp();
    for (&a, &b) in alphas.iter().zip(betas) {
        acc *= gamma_complex(a + s)? * gamma_complex(1.0 - b - s)?;
    }
    Ok(acc)
}

/// I_j(z) by adaptive quadrature along the contour.
pub fn mb_integral_quadrature(j: usize, z: Complex64, alphas: &[f64], betas: &[f64], contour: &ContourSpec) -> Result<Complex64> {
    let n = alphas.len();
    if n == 0 || betas.len() != n || j >= n {
        return Err(Error::InvalidInput("need n α's, n β's and 0 ≤ j < n".into()));
    }
    contour.validate(alphas, betas)?;
    let logz = log_z(z)?;
    let sigma = contour.sigma;
    // decay rates of the integrand for t → +∞ and t → −∞
    let rate_up = 2.0 * PI * j as f64 + logz.im;
    let rate_down = 2.0 * PI * (n - j) as f64 - logz.im;
    let f = |t: f64| mb_integrand(j, Complex64::new(sigma, t), alphas, betas, logz).unwrap_or(Complex64::new(0.0, 0.0));

    let rough = integrate_line(&f, rate_up, rate_down, 1e-6 * f(0.0).norm().max(1e-300), 1e-4, contour.t_max)?;
    let scale = rough.norm().max(f(0.0).norm() * 1e-12).max(1e-300);
    let abs_tol = contour.tol * 1e-2 * scale;
    let total = integrate_line(&f, rate_up, rate_down, abs_tol, abs_tol / scale, contour.t_max)?;
    // ds = i dt and the path runs downward
    Ok(prefactor(n) * (-I) * total)
}

fn integrate_line(
    f: &impl Fn(f64) -> Complex64,
    rate_up: f64,
    rate_down: f64,
    abs_tol: f64,
    rel_tail: f64,
    t_max: Option<f64>,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    let mut tails = Vec::new();
    for (dir, rate) in [(1.0, rate_up), (-1.0, rate_down)] {
        let width = (2.0 / rate).clamp(0.5, 4.0);
        let limit = t_max.unwrap_or(TAIL_LIMIT);
        let mut t = 0.0;
        let mut side = Complex64::new(0.0, 0.0);
        let mut bound = f64::INFINITY;
        while t < limit {
            let next = (t + width).min(limit);
            let (a, b) = if dir > 0.0 { (t, next) } else { (-next, -t) };
            side += integrate(f, a, b, abs_tol * width / 16.0, 400).value;
            t = next;
            // tail beyond t, assuming the exponential decay has set in; the
            // margin covers cancellation between the two half-lines
            bound = f(dir * t).norm() / (0.5 * rate);
            if bound <= 1e-8 * rel_tail * side.norm().max(total.norm()) && t_max.is_none() {
                break;
            }
        }
        tails.push(bound);
        total += side;
    }
    let worst = tails.iter().copied().fold(0.0, f64::max);
    if worst > rel_tail * total.norm().max(1e-300) {
        return Err(Error::TailNotConverged(worst));
    }
    Ok(total)
}

/// Pole pattern to the right of the contour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleStructure {
    /// all β = 1: order-n poles at s = 0, 1, 2, …
    Unipotent,
    /// β distinct mod 1 and disjoint from the α: simple poles 1 − β_l + m
    Nonresonant,
}

pub fn pole_structure(alphas: &[f64], betas: &[f64]) -> Result<PoleStructure> {
    let near_int = |x: f64| (x - x.round()).abs() < RESONANCE_GUARD;
    if alphas.iter().any(|&a| betas.iter().any(|&b| near_int(a - b))) {
        return Err(Error::ResonantInput("some α agrees with some β modulo 1".into()));
    }
    if betas.iter().all(|&b| (b - 1.0).abs() < RESONANCE_GUARD) {
        return Ok(PoleStructure::Unipotent);
    }
    for (i, &b) in betas.iter().enumerate() {
        if betas[..i].iter().any(|&c| near_int(b - c)) {
            return Err(Error::InvalidInput(
                "β's must be pairwise distinct modulo 1 or all equal to 1".into(),
            ));
        }
    }
    Ok(PoleStructure::Nonresonant)
}

/// S(ε) = ∑_m A_m(ε) w^m with A_m = A_{m−1} ∏(ε + m − 1 + α_k)/(ε + m)^n.
pub(crate) fn unipotent_series_jet(alphas: &[f64], w: Complex64, terms: usize) -> Result<CJet> {
    let n = alphas.len();
    let one = Complex64::new(1.0, 0.0);
    let mut a = CJet::constant(one, n);
    let mut sum = a.clone();
    let mut quiet = 0;
    for m in 1..terms {
        let mf = m as f64;
        let mut num = CJet::constant(one, n);
        for &al in alphas {
            num = num.mul(&CJet::linear(Complex64::new(mf - 1.0 + al, 0.0), one, n));
        }
        let den = CJet::linear(Complex64::new(mf, 0.0), one, n).recip();
        let mut step = num;
        for _ in 0..n {
            step = step.mul(&den);
        }
        a = a.mul(&step).scale(w);
        sum = sum.add(&a);
        if a.max_norm() <= 1e-17 * sum.max_norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NotConverged(format!("Frobenius series did not settle within {terms} terms")))
}

/// Jet of log Γ(x + sign·ε) − log Γ(x).
fn log_gamma_shift(x: f64, sign: f64, n: usize) -> CJet {
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut fact = 1.0;
    for (k, ck) in c.iter_mut().enumerate().skip(1) {
        fact *= k as f64;
        *ck = Complex64::new(polygamma(k as u32 - 1, x) * sign.powi(k as i32) / fact, 0.0);
    }
    CJet(c)
}

/// I_j(z) for |z| < 1 as 2πi times the sum of residues right of the contour.
pub fn mb_integral_residues(j: usize, z: Complex64, alphas: &[f64], betas: &[f64], terms: usize) -> Result<Complex64> {
    let n = alphas.len();
    if n == 0 || betas.len() != n || j >= n {
        return Err(Error::InvalidInput("need n α's, n β's and 0 ≤ j < n".into()));
    }
    if z.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!("residue route needs |z| < 1, got |z| = {}", z.norm())));
    }
    let logz = log_z(z)?;
    let two_pi_i = 2.0 * PI * I;
    match pole_structure(alphas, betas)? {
        PoleStructure::Unipotent => {
            // G(ε) = Γ(1−ε)^n ∏Γ(α+ε) e^{(2j−n)πiε} z^ε; the residue sum is
            // (−1)^n [ε^{n−1}] G(ε)·(−1)^n S(ε)
            let mut log_g = log_gamma_shift(1.0, -1.0, n).scale(Complex64::new(n as f64, 0.0));
            let mut gamma_alpha = Complex64::new(1.0, 0.0);
            for &a in alphas {
                log_g = log_g.add(&log_gamma_shift(a, 1.0, n));
                gamma_alpha *= gamma_complex(Complex64::new(a, 0.0))?;
            }
            let lin = CJet::linear(Complex64::new(0.0, 0.0), (2.0 * j as f64 - n as f64) * PI * I + logz, n);
            let g = log_g.add(&lin).exp().scale(gamma_alpha);
            let s = unipotent_series_jet(alphas, z, terms)?;
            Ok(two_pi_i / two_pi_i.powu(n as u32) * g.mul(&s).0[n - 1])
        }
        PoleStructure::Nonresonant => {
            let phase = ((2.0 * j as f64 - n as f64) * PI * I).exp();
            let mut total = Complex64::new(0.0, 0.0);
            for (l, &bl) in betas.iter().enumerate() {
                let mut s = Complex64::new(1.0 - bl, 0.0);
                // Res Γ(1 − β_l − s) at s = 1 − β_l + m is −(−1)^m/m!
                let mut term = -((2.0 * j as f64 - n as f64) * PI * I * s + s * logz).exp();
                for (k, (&a, &b)) in alphas.iter().zip(betas).enumerate() {
                    term *= gamma_complex(a + s)?;
                    if k != l {
                        term *= gamma_complex(1.0 - b - s)?;
                    }
                }
                let mut sum = term;
                let mut quiet = 0;
                let mut settled = false;
                for m in 1..terms {
                    let mut ratio = -z * phase / m as f64;
                    for (k, (&a, &b)) in alphas.iter().zip(betas).enumerate() {
                        ratio *= a + s;
                        if k != l {
                            ratio /= -b - s;
                        }
                    }
                    s += 1.0;
                    term *= ratio;
                    sum += term;
                    if term.norm() <= 1e-17 * sum.norm() {
                        quiet += 1;
                        if quiet >= 3 {
                            settled = true;
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                if !settled {
                    return Err(Error::TruncationNotConverged(terms));
                }
                total += sum;
            }
            Ok(prefactor(n) * two_pi_i * total)
        }
    }
}
