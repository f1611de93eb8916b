//! Exact monodromy of the maximally unipotent case (all β = 1).
//!
//! Columns are ordered `(f_{n−1}/(2πi)^{n−1}, …, f₁/(2πi), f₀)` and a loop
//! acts as `column ↦ M · column`. The Mellin-Barnes column satisfies
//! `I = T · F` with `T = QΦ`, so the two bases are related by conjugation
//! with `T`; the raw and C-normalized Frobenius columns differ by the
//! Toeplitz matrix of `C^s`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::{quotient_form_of, AlphaList, QuotientForm, Sign};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::zeta::{jet_mul, partition_sum, phi_c_jet, poly_at_exp, weighted_zeta};
use crate::zeta::{FieldMatrix, Generator, Jet, ZetaElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    NormalizedFrobenius,
    Frobenius,
    MellinBarnes,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::NormalizedFrobenius, Basis::Frobenius, Basis::MellinBarnes];

    pub fn as_str(self) -> &'static str {
        match self {
            Basis::NormalizedFrobenius => "normalized-frobenius",
            Basis::Frobenius => "frobenius",
            Basis::MellinBarnes => "mellin-barnes",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown basis {s:?}")))
    }
}

/// Whether the Φ-jet includes the factor C^{−s}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    CNormalized,
    Raw,
}

/// A cyclotomic exponent set with its quotient form and constant C.
#[derive(Clone, Debug)]
pub struct UnipotentProblem {
    alphas: AlphaList,
    q: QuotientForm,
    c: BigInt,
}

impl UnipotentProblem {
    pub fn new(alphas: AlphaList) -> Result<Self> {
        let q = quotient_form_of(&alphas)?;
        let c = q.c()?;
        Ok(UnipotentProblem { alphas, q, c })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(AlphaList::parse(s)?)
    }

    pub fn alphas(&self) -> &AlphaList {
        &self.alphas
    }

    pub fn quotient(&self) -> &QuotientForm {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.q.n
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> BigRational {
        self.q.d()
    }

    /// Normalized-basis triple (M₀, M_{1/C}, M∞).
    pub fn normalized_triple(&self) -> Result<MonodromyTriple> {
        let n = self.n();
        let m0 = m0_unipotent(n);
        let m1 = m1_over_c(&self.q, n);
        let minf = m0.mul(&m1).inverse()?;
        Ok(MonodromyTriple { m0, m1, minf })
    }

    pub fn triple(&self, basis: Basis) -> Result<MonodromyTriple> {
        to_basis(self, &self.normalized_triple()?, Basis::NormalizedFrobenius, basis)
    }

    /// The generators allowed in entries for this basis: g_k for odd
    /// 3 ≤ k ≤ n−1, plus λ for the raw Frobenius basis.
    pub fn generator_set(&self, basis: Basis) -> Vec<Generator> {
        let mut gens: Vec<Generator> = (3..self.n() as u32).step_by(2).map(Generator::Zeta).collect();
        if basis == Basis::Frobenius {
            gens.push(Generator::Lambda);
        }
        gens
    }

    /// Matrix R with column_basis = R · column_normalized.
    fn transform(&self, basis: Basis) -> FieldMatrix {
        let n = self.n();
        match basis {
            Basis::NormalizedFrobenius => FieldMatrix::identity(n),
            Basis::Frobenius => c_power_matrix(n, 1),
            Basis::MellinBarnes => t_matrix(&self.q, n, Normalization::CNormalized),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyTriple {
    #[serde(rename = "M0")]
    pub m0: FieldMatrix,
    #[serde(rename = "M1")]
    pub m1: FieldMatrix,
    #[serde(rename = "Minf")]
    pub minf: FieldMatrix,
}

impl MonodromyTriple {
    /// M₀ · M₁ · M∞ == I
    pub fn relation_holds(&self) -> bool {
        self.m0.mul(&self.m1).mul(&self.minf).is_identity()
    }

    /// R · M · R⁻¹ for each matrix.
    pub fn conjugate(&self, r: &FieldMatrix, r_inv: &FieldMatrix) -> MonodromyTriple {
        MonodromyTriple {
            m0: r.mul(&self.m0).mul(r_inv),
            m1: r.mul(&self.m1).mul(r_inv),
            minf: r.mul(&self.minf).mul(r_inv),
        }
    }

    pub fn matrices(&self) -> [(&'static str, &FieldMatrix); 3] {
        [("M0", &self.m0), ("M1", &self.m1), ("Minf", &self.minf)]
    }
}

/// M₀ = e^N: entry (k, l) is 1/(l−k)! for l ≥ k.
pub fn m0_unipotent(n: usize) -> FieldMatrix {
    FieldMatrix::from_rationals(n, |k, l| {
        if l >= k {
            BigRational::new(BigInt::one(), factorial((l - k) as u64))
        } else {
            BigRational::zero()
        }
    })
}

/// Ascending coefficients of ∏_{m=1}^{n−1} (z − m + n/2).
fn shifted_product(n: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::from(n), BigInt::from(2));
    let mut p = vec![BigRational::one()];
    for m in 1..n {
        let root = BigRational::from_integer(BigInt::from(m)) - &half;
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &root;
        }
        p = next;
    }
    p
}

/// c_j = d/(n−1)! · (d/dz)^j ∏_{m=1}^{n−1}(z − m + n/2) at z = 0.
pub fn c_coeffs(q: &QuotientForm, n: usize) -> Vec<BigRational> {
    let scale = q.d() / BigRational::from_integer(factorial(n as u64 - 1));
    shifted_product(n)
        .into_iter()
        .enumerate()
        .map(|(j, p)| &scale * p * BigRational::from_integer(factorial(j as u64)))
        .collect()
}

/// The vectors v₋, v₊ of the closed form M_{1/C} = I − v₋ v₊ᵀ, written as
/// partition sums.
pub fn v_vectors(q: &QuotientForm, n: usize) -> (Vec<ZetaElem>, Vec<ZetaElem>) {
    let c = c_coeffs(q, n);
    let minus: Vec<ZetaElem> = (0..n)
        .map(|l| partition_sum(|p| weighted_zeta(q, Sign::Minus, p), l as u32))
        .collect();
    let v_minus = (0..n)
        .map(|j| {
            let mut acc = ZetaElem::zero();
            for l in 0..n - j {
                acc += &minus[l].scale(&c[l + j]);
            }
            acc
        })
        .collect();
    let v_plus = (0..n)
        .map(|j| partition_sum(|p| weighted_zeta(q, Sign::Plus, p), j as u32))
        .collect();
    (v_minus, v_plus)
}

/// M_{1/C} = I − v₋ v₊ᵀ in the C-normalized Frobenius basis.
pub fn m1_over_c(q: &QuotientForm, n: usize) -> FieldMatrix {
    let (vm, vp) = v_vectors(q, n);
    FieldMatrix::identity(n).sub(&FieldMatrix::outer(&vm, &vp))
}

/// M∞ = (M₀ M_{1/C})⁻¹.
pub fn m_infinity(q: &QuotientForm, n: usize) -> Result<FieldMatrix> {
    m0_unipotent(n).mul(&m1_over_c(q, n)).inverse()
}

/// Q_{kl} = (k − n/2)^l / l!, with 0⁰ = 1.
pub fn q_matrix(n: usize) -> FieldMatrix {
    let half = BigRational::new(BigInt::from(n), BigInt::from(2));
    FieldMatrix::from_rationals(n, |k, l| {
        let x = BigRational::from_integer(BigInt::from(k)) - &half;
        num_traits::pow(x, l) / BigRational::from_integer(factorial(l as u64))
    })
}

/// Toeplitz matrix of C^{sign·s}, i.e. C^{sign·N/(2πi)}.
pub fn c_power_matrix(n: usize, sign: i32) -> FieldMatrix {
    let lam = if sign >= 0 { ZetaElem::lambda() } else { -ZetaElem::lambda() };
    FieldMatrix::toeplitz(&Jet::exp_linear(&lam, n))
}

/// Jet of φ, the Γ-product standing in front of the Mellin-Barnes integrand.
pub fn phi_jet(q: &QuotientForm, n: usize, norm: Normalization) -> Jet {
    let phi_c = phi_c_jet(q, n);
    match norm {
        Normalization::CNormalized => phi_c,
        Normalization::Raw => jet_mul(&phi_c, &Jet::exp_linear(&-ZetaElem::lambda(), n)),
    }
}

/// T = Q · Φ.
pub fn t_matrix(q: &QuotientForm, n: usize, norm: Normalization) -> FieldMatrix {
    q_matrix(n).mul(&FieldMatrix::toeplitz(&phi_jet(q, n, norm)))
}

/// u = T⁻¹ e₀.
pub fn u_vector(t: &FieldMatrix) -> Result<Vec<ZetaElem>> {
    Ok(t.inverse()?.column(0))
}

/// Jet of V(s) = (−1)^n φ(s) e^{−πins} ∏(e^{2πis} − e^{−2πiα_k}).
pub fn v_jet(q: &QuotientForm, n: usize, norm: Normalization) -> Jet {
    let half = ZetaElem::from_rational(BigRational::new(BigInt::from(-(n as i64)), BigInt::from(2)));
    let sign = ZetaElem::from_int(if n % 2 == 0 { 1 } else { -1 });
    let j = jet_mul(&phi_jet(q, n, norm), &Jet::exp_linear(&half, n));
    jet_mul(&j, &poly_at_exp(&q.polynomial(), n)).scale(&sign)
}

/// M₁ = I + u vᵀ through the Mellin-Barnes transformation.
pub fn m1_via_t(q: &QuotientForm, n: usize, norm: Normalization) -> Result<FieldMatrix> {
    let u = u_vector(&t_matrix(q, n, norm))?;
    let v = v_jet(q, n, norm);
    Ok(FieldMatrix::identity(n).add(&FieldMatrix::outer(&u, v.coeffs())))
}

/// Jet of W(s) = (−1)^n e^{−2πiΣα} e^{2πis} V(s). Since Σα = n/2 the
/// prefactor (−1)^n e^{−πin} is 1.
pub fn w_jet(q: &QuotientForm, n: usize, norm: Normalization) -> Jet {
    jet_mul(&Jet::exp_linear(&ZetaElem::one(), n), &v_jet(q, n, norm))
}

/// e^N + u v_Wᵀ.
pub fn w_form(q: &QuotientForm, n: usize) -> Result<FieldMatrix> {
    let norm = Normalization::CNormalized;
    let u = u_vector(&t_matrix(q, n, norm))?;
    Ok(m0_unipotent(n).add(&FieldMatrix::outer(&u, w_jet(q, n, norm).coeffs())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupElement {
    M1,
    M0M1,
    M1M0,
    MinfInverse,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [GroupElement::M1, GroupElement::M0M1, GroupElement::M1M0, GroupElement::MinfInverse];

    pub fn label(self) -> &'static str {
        match self {
            GroupElement::M1 => "M1",
            GroupElement::M0M1 => "M0*M1",
            GroupElement::M1M0 => "M1*M0",
            GroupElement::MinfInverse => "Minf^-1",
        }
    }
}

/// Which group elements e^N + u v_Wᵀ equals, compared exactly.
pub fn w_form_matches(problem: &UnipotentProblem) -> Result<Vec<GroupElement>> {
    let t = problem.normalized_triple()?;
    let w = w_form(problem.quotient(), problem.n())?;
    let mut out = Vec::new();
    for g in GroupElement::ALL {
        let m = match g {
            GroupElement::M1 => t.m1.clone(),
            GroupElement::M0M1 => t.m0.mul(&t.m1),
            GroupElement::M1M0 => t.m1.mul(&t.m0),
            GroupElement::MinfInverse => t.minf.inverse()?,
        };
        if m == w {
            out.push(g);
        }
    }
    Ok(out)
}

/// Re-expresses a triple given in basis `from` in basis `to`.
pub fn to_basis(problem: &UnipotentProblem, triple: &MonodromyTriple, from: Basis, to: Basis) -> Result<MonodromyTriple> {
    if from == to {
        return Ok(triple.clone());
    }
    let r_from = problem.transform(from);
    let r_to = problem.transform(to);
    let normalized = triple.conjugate(&r_from.inverse()?, &r_from);
    Ok(normalized.conjugate(&r_to, &r_to.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn problem(s: &str) -> UnipotentProblem {
        UnipotentProblem::parse(s).unwrap()
    }

    fn rational_rows(m: &FieldMatrix) -> Vec<Vec<BigRational>> {
        m.as_rational().expect("rational matrix")
    }

    #[test]
    fn m0_shape() {
        assert_eq!(rational_rows(&m0_unipotent(2)), vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        let m = m0_unipotent(4);
        assert_eq!(rational_rows(&m)[0], vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        let nil = m.sub(&FieldMatrix::identity(4));
        assert!(nil.mul(&nil).mul(&nil).mul(&nil).is_zero());
    }

    #[test]
    fn c_coefficient_examples() {
        let p = problem("1/5,2/5,3/5,4/5");
        assert_eq!(c_coeffs(p.quotient(), 4), vec![int(0), rat(-5, 6), int(0), int(5)]);
        let p = problem("1/2,1/2,1/2");
        assert_eq!(c_coeffs(p.quotient(), 3), vec![int(-1), int(0), int(8)]);
        let p = problem("1/3,2/3");
        assert_eq!(c_coeffs(p.quotient(), 2), vec![int(0), int(3)]);
    }

    #[test]
    fn quintic_vectors() {
        let p = problem("1/5,2/5,3/5,4/5");
        let (vm, vp) = v_vectors(p.quotient(), 4);
        let show = |v: &[ZetaElem]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        assert_eq!(show(&vm), vec!["200*g3", "25/12", "0", "5"]);
        assert_eq!(show(&vp), vec!["1", "0", "5/12", "-40*g3"]);
    }

    #[test]
    fn small_cases_closed_forms() {
        let m1 = m1_over_c(problem("1/2,1/2").quotient(), 2);
        assert_eq!(rational_rows(&m1), vec![vec![int(1), int(0)], vec![int(-4), int(1)]]);
        let m1 = m1_over_c(problem("1/2,1/2,1/2").quotient(), 3);
        assert_eq!(
            rational_rows(&m1),
            vec![vec![int(0), int(0), rat(-1, 8)], vec![int(0), int(1), int(0)], vec![int(-8), int(0), int(0)]]
        );
    }

    #[test]
    fn quintic_entries() {
        let p = problem("1/5,2/5,3/5,4/5");
        let m1 = m1_over_c(p.quotient(), 4);
        let a = ZetaElem::generator(Generator::Zeta(3)).scale(&int(-200));
        assert_eq!(m1.get(0, 0), &(&ZetaElem::one() + &a));
        assert_eq!(m1.get(3, 0), &ZetaElem::from_int(-5));
        assert_eq!(m1.get(0, 3), &(&a * &a).scale(&rat(1, 5)));
    }

    #[test]
    fn q_matrix_n2() {
        assert_eq!(rational_rows(&q_matrix(2)), vec![vec![int(1), int(-1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn v_jet_constant_term() {
        for s in ["1/2,1/2", "1/5,2/5,3/5,4/5", "1/6,1/2,5/6", "1/10,3/10,7/10,9/10"] {
            let p = problem(s);
            let v = v_jet(p.quotient(), p.n(), Normalization::CNormalized);
            let sign = if p.n() % 2 == 0 { int(1) } else { int(-1) };
            let lhs = v.coeff(0).as_rational().unwrap() * sign / p.d();
            assert_eq!(lhs, int(1), "{s}");
        }
    }

    #[test]
    fn routes_agree_and_relation_holds() {
        for s in ["1/2,1/2", "1/3,1/2,2/3", "1/5,2/5,3/5,4/5", "1/6,1/6,5/6,5/6"] {
            let p = problem(s);
            let via_t = m1_via_t(p.quotient(), p.n(), Normalization::CNormalized).unwrap();
            assert_eq!(via_t, m1_over_c(p.quotient(), p.n()), "{s}");
            assert!(p.normalized_triple().unwrap().relation_holds());
        }
    }

    #[test]
    fn raw_route_matches_basis_change() {
        let p = problem("1/3,1/3,2/3,2/3");
        let raw = p.triple(Basis::Frobenius).unwrap();
        let via_t = m1_via_t(p.quotient(), p.n(), Normalization::Raw).unwrap();
        assert_eq!(raw.m1, via_t);
        assert!(raw.m1.generators().contains(&Generator::Lambda));
    }

    #[test]
    fn basis_change_n2() {
        let p = problem("1/2,1/2");
        let raw = p.triple(Basis::Frobenius).unwrap();
        let l = ZetaElem::lambda();
        let expected = FieldMatrix::from_rows(vec![
            vec![&ZetaElem::one() - &l.scale(&int(4)), l.pow(2).scale(&int(4))],
            vec![ZetaElem::from_int(-4), &ZetaElem::one() + &l.scale(&int(4))],
        ])
        .unwrap();
        assert_eq!(raw.m1, expected);
        assert!(raw.relation_holds());
        let back = to_basis(&p, &raw, Basis::Frobenius, Basis::NormalizedFrobenius).unwrap();
        assert_eq!(back, p.normalized_triple().unwrap());
        let same = to_basis(&p, &raw, Basis::Frobenius, Basis::Frobenius).unwrap();
        assert_eq!(same, raw);
    }

    #[test]
    fn mellin_barnes_basis_is_integral() {
        let p = problem("1/5,2/5,3/5,4/5");
        let mb = p.triple(Basis::MellinBarnes).unwrap();
        for (_, m) in mb.matrices() {
            for row in rational_rows(m) {
                assert!(row.iter().all(|x| x.is_integer()));
            }
        }
        assert_eq!(rational_rows(&mb.m1)[0], vec![int(1), int(5), int(-5), int(5)]);
    }

    #[test]
    fn basis_names_round_trip() {
        for b in Basis::ALL {
            assert_eq!(b.as_str().parse::<Basis>().unwrap(), b);
        }
        assert!("frob".parse::<Basis>().is_err());
    }

    #[test]
    fn triple_json_round_trip() {
        let t = problem("1/2,1/2,1/2").triple(Basis::Frobenius).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        let back: MonodromyTriple = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}
