use num_complex::Complex64;

/// Truncated complex power series in a small parameter ε.
#[derive(Clone, Debug, PartialEq)]
pub struct CJet(pub Vec<Complex64>);

impl CJet {
    pub fn constant(c: Complex64, n: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[0] = c;
        CJet(v)
    }

    /// a + b ε
    pub fn linear(a: Complex64, b: Complex64, n: usize) -> Self {
        let mut j = CJet::constant(a, n);
        if n > 1 {
            j.0[1] = b;
        }
        j
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &CJet) -> CJet {
        let n = self.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, a) in self.0.iter().enumerate() {
            for (k, b) in other.0.iter().take(n - i).enumerate() {
                out[i + k] += a * b;
            }
        }
        CJet(out)
    }

    pub fn scale(&self, c: Complex64) -> CJet {
        CJet(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &CJet) -> CJet {
        CJet(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// exp of the series (constant term handled by scaling).
    pub fn exp(&self) -> CJet {
        let n = self.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = Complex64::new(1.0, 0.0);
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                acc += self.0[i] * e[k - i] * i as f64;
            }
            e[k] = acc / k as f64;
        }
        CJet(e).scale(self.0[0].exp())
    }

    pub fn recip(&self) -> CJet {
        let n = self.len();
        let inv0 = 1.0 / self.0[0];
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        b[0] = inv0;
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                acc += self.0[i] * b[k - i];
            }
            b[k] = -acc * inv0;
        }
        CJet(b)
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_and_recip() {
        let x = CJet(vec![Complex64::new(0.3, 0.1), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
        let e = x.exp();
        let expected = Complex64::new(0.3, 0.1).exp();
        assert!((e.0[0] - expected).norm() < 1e-15);
        assert!((e.0[3] - expected / 6.0).norm() < 1e-15);
        let one = e.mul(&e.recip());
        assert!((one.0[0] - 1.0).norm() < 1e-14);
        assert!(one.0[1..].iter().all(|z| z.norm() < 1e-14));
    }
}
