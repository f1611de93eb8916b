//! Case tables for n = 2, 3, 4, recomputed from the exponent lists.
//!
//! The columns are read off the entries of M_{1/C} in the normalized
//! Frobenius basis:
//!
//! - n = 2: M₁ = [[1, 0], [−d, 1]].
//! - n = 3: M₁ = [[1+bd, 0, −b²d], [0, 1, 0], [−d, 0, 1+bd]] with b = c₂⁺/24.
//! - n = 4: (M₁)₀₀ = 1 + a and (M₁)₁₀ = −b with a = d c₃⁺ g₃ and
//!   b = −d c₂⁺/24.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclo::{AlphaList, Sign};
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat};
use crate::unipotent::{w_form_matches, GroupElement, UnipotentProblem};
use crate::zeta::{FieldMatrix, Generator, Monomial, ZetaElem};

/// The exponent lists of the standard cases for n = 2, 3, 4.
pub fn table_cases(n: usize) -> Result<Vec<AlphaList>> {
    let lists: &[&str] = match n {
        2 => &["1/2,1/2", "1/3,2/3", "1/4,3/4", "1/6,5/6"],
        3 => &["1/2,1/2,1/2", "1/3,1/2,2/3", "1/4,1/2,3/4", "1/6,1/2,5/6"],
        4 => &[
            "1/5,2/5,3/5,4/5",
            "1/10,3/10,7/10,9/10",
            "1/2,1/2,1/2,1/2",
            "1/3,1/3,2/3,2/3",
            "1/3,1/2,1/2,2/3",
            "1/4,1/2,1/2,3/4",
            "1/8,3/8,5/8,7/8",
            "1/6,1/3,2/3,5/6",
            "1/12,5/12,7/12,11/12",
            "1/4,1/4,3/4,3/4",
            "1/4,1/3,2/3,3/4",
            "1/6,1/4,3/4,5/6",
            "1/6,1/6,5/6,5/6",
            "1/6,1/2,1/2,5/6",
        ],
        _ => return Err(Error::InvalidInput(format!("tables exist for n = 2, 3, 4, not {n}"))),
    };
    lists.iter().map(|s| AlphaList::parse(s)).collect()
}

/// All 22 cases.
pub fn all_table_cases() -> Vec<AlphaList> {
    (2..=4).flat_map(|n| table_cases(n).expect("fixed lists parse")).collect()
}

/// Known wrong values for C that circulate in printed tables, keyed by the
/// exponent list. Only used to annotate output.
fn c_footnote(alphas: &AlphaList, c: &BigInt) -> Option<String> {
    let circulated = match alphas.to_string().as_str() {
        "(1/5,2/5,3/5,4/5)" => 3025,
        "(1/4,1/4,3/4,3/4)" => 496,
        _ => return None,
    };
    Some(format!("C = {c} from the quotient form; {circulated} is sometimes quoted for this case and is a misprint"))
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub case: String,
    pub polynomial: String,
    pub c: String,
    /// (header, exact value) in display order after C
    pub columns: Vec<(String, String)>,
    /// the shape checks for this n hold exactly
    pub checks_pass: bool,
    pub footnote: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub n: usize,
    pub headers: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn all_checks_pass(&self) -> bool {
        self.rows.iter().all(|r| r.checks_pass)
    }

    pub fn render_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = vec![self.headers.clone()];
        for r in &self.rows {
            let mut line = vec![r.case.clone(), r.polynomial.clone(), r.c.clone()];
            line.extend(r.columns.iter().map(|(_, v)| v.clone()));
            if r.footnote.is_some() {
                line[2].push('*');
            }
            cells.push(line);
        }
        let widths: Vec<usize> =
            (0..self.headers.len()).map(|i| cells.iter().map(|l| l[i].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for (k, line) in cells.iter().enumerate() {
            let padded: Vec<String> = line.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
            if k == 0 {
                out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
                out.push('\n');
            }
        }
        for r in &self.rows {
            if let Some(f) = &r.footnote {
                let _ = writeln!(out, "* {}: {f}", r.case);
            }
        }
        if self.n == 3 {
            let _ = writeln!(out, "bd = -1 and M1 = [[0,0,-1/d],[0,1,0],[-d,0,0]]: {}", yes_no(self.all_checks_pass()));
        } else if self.n == 2 {
            let _ = writeln!(out, "M1 = [[1,0],[-d,1]]: {}", yes_no(self.all_checks_pass()));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds for every row"
    } else {
        "FAILS for some row"
    }
}

fn rational_entry(m: &FieldMatrix, k: usize, l: usize) -> Result<BigRational> {
    m.get(k, l)
        .as_rational()
        .ok_or_else(|| Error::InvalidInput(format!("entry ({k}, {l}) = {} is not rational", m.get(k, l))))
}

/// The values of one row, computed from the monodromy matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RowValues {
    pub c: BigInt,
    pub d: BigRational,
    /// n = 3: 24b = c₂⁺; n = 4: 24b = −d c₂⁺
    pub b24: Option<BigRational>,
    /// n = 4: d c₃⁺, the g₃ coefficient of (M₁)₀₀
    pub a_over_g3: Option<BigRational>,
    pub checks_pass: bool,
}

pub fn row_values(alphas: &AlphaList) -> Result<RowValues> {
    let p = UnipotentProblem::new(alphas.clone())?;
    let n = p.n();
    let m1 = p.normalized_triple()?.m1;
    let one = BigRational::one();
    let mut out = RowValues { c: p.c().clone(), d: p.d(), b24: None, a_over_g3: None, checks_pass: true };
    match n {
        2 => {
            let d = -rational_entry(&m1, 1, 0)?;
            let expected = FieldMatrix::from_rationals(2, |k, l| match (k, l) {
                (1, 0) => -d.clone(),
                _ if k == l => one.clone(),
                _ => BigRational::zero(),
            });
            out.checks_pass = m1 == expected && d == out.d;
        }
        3 => {
            let d = -rational_entry(&m1, 2, 0)?;
            let b = (rational_entry(&m1, 0, 0)? - &one) / &d;
            let shape = FieldMatrix::from_rationals(3, |k, l| match (k, l) {
                (0, 0) | (2, 2) => &one + &b * &d,
                (0, 2) => -(&b * &b * &d),
                (2, 0) => -d.clone(),
                (1, 1) => one.clone(),
                _ => BigRational::zero(),
            });
            let nicer = FieldMatrix::from_rationals(3, |k, l| match (k, l) {
                (0, 2) => -(&one / &d),
                (2, 0) => -d.clone(),
                (1, 1) => one.clone(),
                _ => BigRational::zero(),
            });
            out.checks_pass = m1 == shape && m1 == nicer && &b * &d == -one.clone() && d == out.d;
            out.b24 = Some(b * rat(24, 1));
        }
        4 => {
            let d = -rational_entry(&m1, 3, 0)?;
            let b = -rational_entry(&m1, 1, 0)?;
            let a = m1.get(0, 0).clone() - ZetaElem::one();
            let g3 = ZetaElem::generator(Generator::Zeta(3));
            let g3_mono = Monomial::generator(Generator::Zeta(3));
            let a_coeff = a.terms().find(|(m, _)| **m == g3_mono).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero);
            let a_elem = g3.scale(&a_coeff);
            let (bz, dz) = (ZetaElem::from_rational(b.clone()), ZetaElem::from_rational(d.clone()));
            let ad = ZetaElem::from_rational(one.clone() / &d);
            let az = a_elem.clone();
            let zero = ZetaElem::zero();
            let onez = ZetaElem::one();
            let shape = FieldMatrix::from_rows(vec![
                vec![&onez + &az, zero.clone(), &(&az * &bz) * &ad, &(&az * &az) * &ad],
                vec![-bz.clone(), onez.clone(), -(&(&bz * &bz) * &ad), -(&(&az * &bz) * &ad)],
                vec![zero.clone(), zero.clone(), onez.clone(), zero.clone()],
                vec![-dz.clone(), zero.clone(), -bz.clone(), &onez - &az],
            ])?;
            out.checks_pass = a == a_elem && m1 == shape && d == out.d;
            // cross-check against the c_j^± closed forms
            let q = p.quotient();
            out.checks_pass &= b == -(&d * q.c_pm(Sign::Plus, 2)) / rat(24, 1);
            out.checks_pass &= a_coeff == &d * q.c_pm(Sign::Plus, 3);
            out.b24 = Some(b * rat(24, 1));
            out.a_over_g3 = Some(a_coeff);
        }
        _ => return Err(Error::InvalidInput(format!("no table layout for n = {n}"))),
    }
    Ok(out)
}

pub fn build_table(n: usize) -> Result<Table> {
    let headers: Vec<&str> = match n {
        2 => vec!["case", "polynomial", "C", "d"],
        3 => vec!["case", "polynomial", "C", "24b", "d/2"],
        _ => vec!["case", "polynomial", "C", "d", "24b", "(2 pi i)^3 a/zeta(3)"],
    };
    let rows = table_cases(n)?
        .iter()
        .map(|alphas| {
            let v = row_values(alphas)?;
            let q = UnipotentProblem::new(alphas.clone())?.quotient().clone();
            let fmt = |r: &Option<BigRational>| r.as_ref().map(format_rational).unwrap_or_default();
            let columns: Vec<(String, String)> = match n {
                2 => vec![("d".into(), format_rational(&v.d))],
                3 => vec![("24b".into(), fmt(&v.b24)), ("d/2".into(), format_rational(&(&v.d / rat(2, 1))))],
                _ => vec![
                    ("d".into(), format_rational(&v.d)),
                    ("24b".into(), fmt(&v.b24)),
                    (headers[5].into(), fmt(&v.a_over_g3)),
                ],
            };
            Ok(TableRow {
                case: alphas.to_string(),
                polynomial: q.to_string(),
                c: v.c.to_string(),
                columns,
                checks_pass: v.checks_pass,
                footnote: c_footnote(alphas, &v.c),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { n, headers: headers.into_iter().map(String::from).collect(), rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct WFormReport {
    /// (case, labels of the matching group elements)
    pub cases: Vec<(String, Vec<&'static str>)>,
    /// the common pattern, if every case shares one
    pub common: Option<Vec<&'static str>>,
}

pub fn w_form_report(cases: &[AlphaList]) -> Result<WFormReport> {
    let mut out = Vec::new();
    for a in cases {
        let matches: Vec<GroupElement> = w_form_matches(&UnipotentProblem::new(a.clone())?)?;
        out.push((a.to_string(), matches.iter().map(|g| g.label()).collect::<Vec<_>>()));
    }
    let common = match out.first() {
        Some((_, first)) if out.iter().all(|(_, p)| p == first) => Some(first.clone()),
        _ => None,
    };
    Ok(WFormReport { cases: out, common })
}
