use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factorial;

/// An integer partition as a weakly decreasing list of positive parts.
/// The empty list is the partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `j`, in lexicographically descending order.
/// `partitions(0)` is the singleton holding the empty partition.
pub fn partitions(j: u32) -> Vec<Partition> {
    fn descend(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            descend(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    descend(j, j, &mut Vec::new(), &mut out);
    out
}

/// M(p) = ∏ (multiplicity of each distinct part)!
pub fn multiplicity_m(p: &Partition) -> BigInt {
    let parts = p.parts();
    let mut acc = BigInt::one();
    let mut i = 0;
    while i < parts.len() {
        let mut k = i;
        while k < parts.len() && parts[k] == parts[i] {
            k += 1;
        }
        acc *= factorial((k - i) as u64);
        i = k;
    }
    acc
}

/// ∑_{p ∈ π_j} c_p / M(p) with c_p = ∏ c[p_i]; `c[0]` is ignored.
///
/// This is the coefficient of s^j in exp(∑_{k≥1} c_k s^k).
pub fn exp_coefficient(c: &[BigRational], j: u32) -> BigRational {
    partitions(j)
        .iter()
        .map(|p| {
            let prod = p
                .parts()
                .iter()
                .fold(BigRational::one(), |acc, &k| acc * c.get(k as usize).cloned().unwrap_or_else(BigRational::zero));
            prod / BigRational::from_integer(multiplicity_m(p))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn small_partitions() {
        assert_eq!(partitions(0), vec![Partition(vec![])]);
        assert_eq!(
            partitions(3),
            vec![Partition(vec![3]), Partition(vec![2, 1]), Partition(vec![1, 1, 1])]
        );
        assert_eq!(partitions(5).len(), 7);
    }

    #[test]
    fn partition_counts() {
        // p(j) by the pentagonal-number recurrence
        let n = 30usize;
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        for j in 0..=n {
            assert_eq!(partitions(j as u32).len() as i64, p[j], "j = {j}");
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_m(&Partition::new(vec![])), BigInt::one());
        assert_eq!(multiplicity_m(&Partition::new(vec![1, 2])), BigInt::one());
        assert_eq!(multiplicity_m(&Partition::new(vec![1, 1, 1])), BigInt::from(6));
        assert_eq!(multiplicity_m(&Partition::new(vec![2, 1, 2, 1])), BigInt::from(4));
    }

    fn truncated_exp(c: &[BigRational], order: usize) -> Vec<BigRational> {
        // E' = A' E  ⇒  k e_k = ∑_{i=1}^{k} i a_i e_{k-i}
        let mut e = vec![BigRational::zero(); order + 1];
        e[0] = BigRational::one();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                let a = c.get(i).cloned().unwrap_or_else(BigRational::zero);
                acc += a * BigRational::from_integer(i.into()) * &e[k - i];
            }
            e[k] = acc / BigRational::from_integer(k.into());
        }
        e
    }

    proptest! {
        #[test]
        fn partition_sums_are_exp_coefficients(raw in proptest::collection::vec((-20i64..20, 1i64..9), 1..8)) {
            let mut c = vec![BigRational::zero()];
            c.extend(raw.iter().map(|&(p, q)| rat(p, q)));
            let order = c.len() - 1;
            let direct = truncated_exp(&c, order);
            for j in 0..=order {
                prop_assert_eq!(&exp_coefficient(&c, j as u32), &direct[j]);
            }
        }
    }
}
