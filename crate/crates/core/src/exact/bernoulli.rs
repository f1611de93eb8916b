use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binomial, factorial};

fn table() -> &'static Mutex<Vec<BigRational>> {
    static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// B_k from ∑_{j=0}^{m} binom(m+1, j) B_j = 0, memoized.
///
/// Only even k ≥ 2 are meaningful to callers; B₁ is computed internally with
/// the −1/2 convention but never handed out.
pub fn bernoulli(k: usize) -> BigRational {
    assert!(k >= 2 && k % 2 == 0, "bernoulli is only defined here for even k >= 2");
    bernoulli_any(k)
}

fn bernoulli_any(k: usize) -> BigRational {
    let mut t = table().lock().expect("bernoulli table poisoned");
    while t.len() <= k {
        let m = t.len();
        let mut acc = BigRational::zero();
        for (j, bj) in t.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m + 1));
        t.push(bm);
    }
    t[k].clone()
}

/// ζ(2p)/(2πi)^{2p} = −B_{2p} / (2 (2p)!).
pub fn zeta_even_ratio(two_p: usize) -> BigRational {
    let b = bernoulli(two_p);
    -b / BigRational::from_integer(BigInt::from(2) * factorial(two_p as u64))
}
