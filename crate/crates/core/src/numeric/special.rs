use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for complex z: Lanczos (g = 7, nine terms) with reflection for
/// Re z < 1/2.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12 && z.im.abs() < 1e-12 {
        return Err(Error::PoleAtNonpositiveInteger(format!("{z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return PI / ((PI * z).sin() * gamma_unchecked(1.0 - z));
    }
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        a += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * a
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma_complex(Complex64::new(x, 0.0)).map(|g| g.re)
}

const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
];

fn factorial_f64(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// ψ^{(k)}(x) for real x > 0: upward recurrence to x ≥ 20, then the
/// asymptotic series.
pub fn polygamma(k: u32, x: f64) -> f64 {
    assert!(x > 0.0, "polygamma needs a positive argument");
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let kf = factorial_f64(k);
    let mut x = x;
    let mut shift = 0.0;
    while x < 20.0 {
        // ψ^{(k)}(x) = ψ^{(k)}(x + 1) − (−1)^k k! / x^{k+1}
        shift -= sign * kf / x.powi(k as i32 + 1);
        x += 1.0;
    }
    let asym = if k == 0 {
        let mut s = x.ln() - 0.5 / x;
        for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_j = 2 * (j as i32 + 1);
            s -= b / (two_j as f64 * x.powi(two_j));
        }
        s
    } else {
        let mut s = factorial_f64(k - 1) / x.powi(k as i32) + kf / (2.0 * x.powi(k as i32 + 1));
        for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_j = 2 * (j as u32 + 1);
            s += b * factorial_f64(two_j + k - 1) / (factorial_f64(two_j) * x.powi((two_j + k) as i32));
        }
        -sign * s
    };
    asym + shift
}

/// ζ(k) for k ≥ 2: direct sum to N = 10⁵ plus the Euler-Maclaurin tail.
pub fn zeta(k: u32) -> f64 {
    assert!(k >= 2, "zeta needs k >= 2");
    const N: u32 = 100_000;
    let ki = k as i32;
    let mut s = 0.0;
    for m in (1..=N).rev() {
        s += f64::from(m).powi(-ki);
    }
    let n = f64::from(N);
    s + n.powi(1 - ki) / (k as f64 - 1.0) - 0.5 * n.powi(-ki) + k as f64 / 12.0 * n.powi(-ki - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gamma_values() {
        let g = gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-14 && g.im.abs() < 1e-14);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_complex(Complex64::new(x, 0.0)), Err(Error::PoleAtNonpositiveInteger(_))));
        }
    }

    #[test]
    fn gamma_functional_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-10.0..10.0));
            let lhs = gamma_complex(z + 1.0).unwrap();
            let rhs = z * gamma_complex(z).unwrap();
            assert!((lhs - rhs).norm() / lhs.norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn polygamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((polygamma(0, 1.0) + euler).abs() < 1e-14);
        assert!((polygamma(1, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((polygamma(2, 1.0) + 2.0 * zeta(3)).abs() < 1e-13);
        assert!((polygamma(0, 0.5) + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((polygamma(3, 1.0) - PI.powi(4) / 15.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2) - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(3) - 1.202_056_903_159_594_2).abs() < 1e-14);
        assert!((zeta(4) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(5) - 1.036_927_755_143_37).abs() < 1e-13);
    }
}
