use std::collections::BTreeSet;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::elem::{Generator, ZetaElem};
use super::jet::Jet;
use crate::error::{Error, Result};

/// Square matrix over ℚ[λ, g₃, g₅, …], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    n: usize,
    data: Vec<ZetaElem>,
}

impl FieldMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ZetaElem) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                data.push(f(k, l));
            }
        }
        FieldMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<ZetaElem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        Ok(FieldMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_rationals(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        Self::from_fn(n, |k, l| ZetaElem::from_rational(f(k, l)))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| ZetaElem::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |k, l| if k == l { ZetaElem::one() } else { ZetaElem::zero() })
    }

    /// Upper-triangular Toeplitz matrix Φ(f) with (k, l) entry f_{l−k}.
    pub fn toeplitz(j: &Jet) -> Self {
        Self::from_fn(j.len(), |k, l| if l >= k { j.coeff(l - k).clone() } else { ZetaElem::zero() })
    }

    /// u vᵀ
    pub fn outer(u: &[ZetaElem], v: &[ZetaElem]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal vectors");
        Self::from_fn(u.len(), |k, l| &u[k] * &v[l])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> &ZetaElem {
        &self.data[k * self.n + l]
    }

    pub fn set(&mut self, k: usize, l: usize, v: ZetaElem) {
        self.data[k * self.n + l] = v;
    }

    pub fn rows(&self) -> Vec<Vec<ZetaElem>> {
        self.data.chunks(self.n.max(1)).map(<[ZetaElem]>::to_vec).collect()
    }

    pub fn column(&self, l: usize) -> Vec<ZetaElem> {
        (0..self.n).map(|k| self.get(k, l).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |k, l| self.get(l, k).clone())
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self::from_fn(self.n, |k, l| {
            let mut acc = ZetaElem::zero();
            for i in 0..self.n {
                let (a, b) = (self.get(k, i), rhs.get(i, l));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[ZetaElem]) -> Vec<ZetaElem> {
        (0..self.n)
            .map(|k| {
                let mut acc = ZetaElem::zero();
                for (i, x) in v.iter().enumerate() {
                    acc += &(self.get(k, i) * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &FieldMatrix) -> FieldMatrix {
        Self::from_fn(self.n, |k, l| self.get(k, l) + rhs.get(k, l))
    }

    pub fn sub(&self, rhs: &FieldMatrix) -> FieldMatrix {
        Self::from_fn(self.n, |k, l| self.get(k, l) - rhs.get(k, l))
    }

    pub fn scale(&self, c: &ZetaElem) -> FieldMatrix {
        Self::from_fn(self.n, |k, l| self.get(k, l) * c)
    }

    /// P⁻¹ · self · P
    pub fn conjugate_by(&self, p: &FieldMatrix, p_inv: &FieldMatrix) -> FieldMatrix {
        p_inv.mul(self).mul(p)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ZetaElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn trace(&self) -> ZetaElem {
        (0..self.n).fold(ZetaElem::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    /// Minor on the given row and column index sets, by Laplace expansion
    /// along the last row with memoisation over column subsets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> ZetaElem {
        let k = rows.len();
        assert_eq!(k, cols.len(), "minor needs equally many rows and columns");
        assert!(k < 32, "minor too large");
        if k == 0 {
            return ZetaElem::one();
        }
        let full = 1usize << k;
        let mut dp: Vec<ZetaElem> = vec![ZetaElem::zero(); full];
        dp[0] = ZetaElem::one();
        for mask in 1..full {
            let r = mask.count_ones() as usize - 1;
            let mut acc = ZetaElem::zero();
            for c in 0..k {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let entry = self.get(rows[r], cols[c]);
                let rest = &dp[mask & !(1 << c)];
                if entry.is_zero() || rest.is_zero() {
                    continue;
                }
                let term = entry * rest;
                // sign (−1)^(members of mask above c)
                if (mask >> (c + 1)).count_ones() % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            dp[mask] = acc;
        }
        dp.pop().unwrap()
    }

    pub fn det(&self) -> ZetaElem {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor(&idx, &idx)
    }

    /// Exact inverse through the adjugate. The determinant must be a nonzero
    /// rational; every matrix inverted in this crate has that property.
    pub fn inverse(&self) -> Result<FieldMatrix> {
        let det = self.det();
        let det = det.as_rational().ok_or_else(|| Error::NonRationalDeterminant(det.to_string()))?;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv_det = det.recip();
        let n = self.n;
        Ok(Self::from_fn(n, |k, l| {
            // inverse[k][l] = cofactor(l, k) / det
            let rows: Vec<usize> = (0..n).filter(|&i| i != l).collect();
            let cols: Vec<usize> = (0..n).filter(|&j| j != k).collect();
            let m = self.minor(&rows, &cols).scale(&inv_det);
            if (k + l) % 2 == 0 {
                m
            } else {
                -m
            }
        }))
    }

    /// Rank over the fraction field: the largest size of a nonvanishing minor.
    pub fn rank(&self) -> usize {
        let n = self.n;
        for k in 1..=n {
            let row_sets = combinations(n, k);
            let any = row_sets
                .iter()
                .any(|rs| row_sets.iter().any(|cs| !self.minor(rs, cs).is_zero()));
            if !any {
                return k - 1;
            }
        }
        n
    }

    pub fn rank_of_difference_from_identity(&self) -> usize {
        self.sub(&Self::identity(self.n)).rank()
    }

    /// det(X·I − self) as ascending coefficients, via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Vec<ZetaElem> {
        let n = self.n;
        let mut c = vec![ZetaElem::zero(); n + 1];
        c[n] = ZetaElem::one();
        let mut m = FieldMatrix::zero(n);
        for k in 1..=n {
            m = self.mul(&m).add(&FieldMatrix::identity(n).scale(&c[n - k + 1]));
            let tr = self.mul(&m).trace();
            c[n - k] = tr.scale(&BigRational::new(BigInt::from(-1), BigInt::from(k)));
        }
        c
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.data.iter().flat_map(ZetaElem::generators).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().map(ZetaElem::total_degree).max().unwrap_or(0)
    }

    pub fn eval(&self, value: &impl Fn(Generator) -> Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |k, l| self.get(k, l).eval(value))
    }

    /// The matrix with every entry rational, if it is.
    pub fn as_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        self.rows()
            .into_iter()
            .map(|r| r.iter().map(ZetaElem::as_rational).collect())
            .collect()
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.n)
            .map(|l| cells.iter().map(|r| r[l].chars().count()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}", w = *w))
                .collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for FieldMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<ZetaElem>>::deserialize(deserializer)?;
        FieldMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::zeta::jet::jet_mul;
    use proptest::prelude::*;

    fn from_ints(rows: &[&[i64]]) -> FieldMatrix {
        FieldMatrix::from_rationals(rows.len(), |k, l| int(rows[k][l]))
    }

    #[test]
    fn identity_inverse() {
        assert_eq!(FieldMatrix::identity(4).inverse().unwrap(), FieldMatrix::identity(4));
    }

    #[test]
    fn n3_reflection_is_an_involution() {
        let m = FieldMatrix::from_rationals(3, |k, l| match (k, l) {
            (0, 2) => rat(-1, 8),
            (1, 1) => int(1),
            (2, 0) => int(-8),
            _ => int(0),
        });
        assert_eq!(m.inverse().unwrap(), m);
        assert_eq!(m.rank_of_difference_from_identity(), 1);
    }

    #[test]
    fn determinant_and_errors() {
        let m = from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().as_rational(), Some(int(18)));
        let sing = from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::SingularMatrix));
        assert_eq!(sing.rank(), 1);
        let lam = FieldMatrix::identity(2).scale(&ZetaElem::lambda());
        assert!(matches!(lam.inverse(), Err(Error::NonRationalDeterminant(_))));
    }

    #[test]
    fn char_poly_of_companion() {
        // companion of X^2 - 3X + 2
        let m = from_ints(&[&[0, 1], &[-2, 3]]);
        let cp: Vec<_> = m.char_poly().iter().map(|c| c.as_rational().unwrap()).collect();
        assert_eq!(cp, vec![int(2), int(-3), int(1)]);
    }

    #[test]
    fn toeplitz_of_c_power() {
        let m = FieldMatrix::toeplitz(&Jet::exp_linear(&ZetaElem::lambda(), 3));
        assert_eq!(m.get(0, 2), &ZetaElem::lambda().pow(2).scale(&rat(1, 2)));
        assert!(m.get(2, 0).is_zero());
        let inv = m.inverse().unwrap();
        assert_eq!(inv, FieldMatrix::toeplitz(&Jet::exp_linear(&-ZetaElem::lambda(), 3)));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = FieldMatrix> {
        proptest::collection::vec((-5i64..6, 1i64..4, 0u32..2), n * n).prop_map(move |v| {
            let g3 = ZetaElem::generator(Generator::Zeta(3));
            let mut it = v.into_iter();
            FieldMatrix::from_fn(n, |_, _| {
                let (p, q, g) = it.next().unwrap();
                let e = ZetaElem::from_rational(rat(p, q));
                if g == 1 { &e * &g3 } else { e }
            })
        })
    }

    proptest! {
        #[test]
        fn unitriangular_inverse(m in arb_matrix(4)) {
            // unit upper-triangular part has determinant 1
            let u = FieldMatrix::from_fn(4, |k, l| match k.cmp(&l) {
                std::cmp::Ordering::Less => m.get(k, l).clone(),
                std::cmp::Ordering::Equal => ZetaElem::one(),
                _ => ZetaElem::zero(),
            });
            let inv = u.inverse().unwrap();
            prop_assert!(inv.mul(&u).is_identity());
            prop_assert!(u.mul(&inv).is_identity());
        }

        #[test]
        fn rational_inverse(m in arb_matrix(3)) {
            let r = FieldMatrix::from_fn(3, |k, l| ZetaElem::from_rational(m.get(k, l).constant_term()));
            match r.inverse() {
                Ok(inv) => prop_assert!(inv.mul(&r).is_identity()),
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert!(r.rank() < 3);
                }
            }
        }

        #[test]
        fn toeplitz_homomorphism(a in proptest::collection::vec((-9i64..10, 1i64..5), 4),
                                 b in proptest::collection::vec((-9i64..10, 1i64..5), 4)) {
            let ja = Jet::from_rationals(&a.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>());
            let jb = Jet::from_rationals(&b.iter().map(|&(p, q)| rat(p, q)).collect::<Vec<_>>());
            prop_assert_eq!(
                FieldMatrix::toeplitz(&jet_mul(&ja, &jb)),
                FieldMatrix::toeplitz(&ja).mul(&FieldMatrix::toeplitz(&jb))
            );
        }

        #[test]
        fn evaluation_commutes_with_products(a in arb_matrix(3), b in arb_matrix(3)) {
            let val = |g: Generator| match g {
                Generator::Lambda => Complex64::new(0.7, 0.1),
                Generator::Zeta(_) => Complex64::new(-0.004, 0.03),
            };
            let lhs = a.mul(&b).eval(&val);
            let rhs = a.eval(&val) * b.eval(&val);
            let scale = 1.0 + rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!((lhs - rhs).iter().all(|z| z.norm() <= 1e-10 * scale));
        }

        #[test]
        fn det_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }
}
