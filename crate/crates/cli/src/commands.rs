use std::collections::BTreeMap;
use std::fmt::Write as _;

use monodromy_core::cyclo::{recognize_cyclotomic, AlphaList};
use monodromy_core::exact::{format_rational, parse_rational, to_f64};
use monodromy_core::nonresonant::{conjugation_gap, eigenvalues, spectrum_gap, verify_vd, NonresonantProblem};
use monodromy_core::numeric::verify_t;
use monodromy_core::table::{all_table_cases, build_table, w_form_report};
use monodromy_core::unipotent::{Basis, MonodromyTriple, UnipotentProblem};
use monodromy_core::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::{Format, Output};

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, ok: true })
}

#[derive(Serialize)]
struct FactorReport {
    alphas: Vec<String>,
    cyclotomic: BTreeMap<u64, u32>,
    a: Vec<u64>,
    b: Vec<u64>,
    polynomial: String,
    #[serde(rename = "C")]
    c: String,
    d: String,
    factorial_ratio: String,
}

pub fn factor(alphas: &str, f: Format) -> Result<Output> {
    let list = AlphaList::parse(alphas)?;
    let cyclotomic = recognize_cyclotomic(&list)?;
    let p = UnipotentProblem::new(list.clone())?;
    let q = p.quotient();
    let r = FactorReport {
        alphas: list.values().iter().map(format_rational).collect(),
        cyclotomic,
        a: q.a.clone(),
        b: q.b.clone(),
        polynomial: q.to_string(),
        c: p.c().to_string(),
        d: format_rational(&p.d()),
        factorial_ratio: q.factorial_ratio()?.to_string(),
    };
    if f == Format::Json {
        return ok(json(&r));
    }
    let factors: Vec<String> =
        r.cyclotomic.iter().map(|(m, e)| if *e == 1 { format!("Phi_{m}") } else { format!("Phi_{m}^{e}") }).collect();
    let list_str = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut s = String::new();
    let _ = writeln!(s, "alphas      {list}");
    let _ = writeln!(s, "cyclotomic  {}", factors.join(" "));
    let _ = writeln!(s, "quotient    {}", r.polynomial);
    let _ = writeln!(s, "a           [{}]", list_str(&r.a));
    let _ = writeln!(s, "b           [{}]", list_str(&r.b));
    let _ = writeln!(s, "C           {}", r.c);
    let _ = writeln!(s, "d           {}", r.d);
    let _ = writeln!(s, "prod a!/b!  {}", r.factorial_ratio);
    ok(s)
}

#[derive(Serialize)]
struct MonodromyReport<'a> {
    n: usize,
    basis: Basis,
    generators: Vec<String>,
    matrices: &'a MonodromyTriple,
}

pub fn monodromy(alphas: &str, basis: Basis, f: Format) -> Result<Output> {
    let p = UnipotentProblem::parse(alphas)?;
    let t = p.triple(basis)?;
    let generators: Vec<String> = p.generator_set(basis).into_iter().map(|g| g.name()).collect();
    if f == Format::Json {
        return ok(json(&MonodromyReport { n: p.n(), basis, generators, matrices: &t }));
    }
    let mut s = String::new();
    let _ = writeln!(s, "alphas {}  n = {}  C = {}  basis {basis}", p.alphas(), p.n(), p.c());
    if !generators.is_empty() {
        let _ = writeln!(s, "generators {}", generators.join(", "));
    }
    for (name, m) in t.matrices() {
        let _ = write!(s, "\n{name} =\n{m}");
    }
    let _ = writeln!(s, "\nM0 M1 Minf = I: {}", t.relation_holds());
    Ok(Output { text: s, ok: t.relation_holds() })
}

pub fn table(n: usize, w_form: bool, f: Format) -> Result<Output> {
    let t = build_table(n)?;
    let report = if w_form { Some(w_form_report(&all_table_cases())?) } else { None };
    let checks = t.all_checks_pass() && report.as_ref().is_none_or(|r| r.common.is_some());
    if f == Format::Json {
        #[derive(Serialize)]
        struct Both<'a> {
            table: &'a monodromy_core::table::Table,
            #[serde(skip_serializing_if = "Option::is_none")]
            w_form: Option<&'a monodromy_core::table::WFormReport>,
        }
        return Ok(Output { text: json(&Both { table: &t, w_form: report.as_ref() }), ok: checks });
    }
    let mut s = t.render_text();
    if let Some(r) = report {
        let _ = writeln!(s, "\ne^N + u v_W^T, compared with M1, M0*M1, M1*M0, Minf^-1:");
        for (case, labels) in &r.cases {
            let shown = if labels.is_empty() { "none".to_string() } else { labels.join(", ") };
            let _ = writeln!(s, "  {case:<26} {shown}");
        }
        let _ = match &r.common {
            Some(p) => writeln!(s, "same pattern for all {} cases: {}", r.cases.len(), p.join(", ")),
            None => writeln!(s, "patterns differ between cases"),
        };
    }
    Ok(Output { text: s, ok: checks })
}

fn parse_real(s: &str) -> Result<f64> {
    if s.contains('/') {
        return Ok(to_f64(&parse_rational(s)?));
    }
    s.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("not a number: {s:?}")))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.15e}{:+.15e}i", z.re, z.im)
}

#[allow(clippy::too_many_arguments)]
pub fn verify(alphas: &str, betas: Option<&str>, z: &str, z_im: &str, tol: f64, terms: usize, f: Format) -> Result<Output> {
    let z = Complex64::new(parse_real(z)?, parse_real(z_im)?);
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let Some(betas) = betas else {
        let r = verify_t(&AlphaList::parse(alphas)?, z, tol.min(1e-8), terms)?;
        let pass = r.passes(tol);
        if f == Format::Json {
            return Ok(Output { text: json(&r), ok: pass });
        }
        let mut s = String::new();
        let _ = writeln!(s, "I = T F at z = {}", fmt_c(z));
        for (k, (i, p)) in r.integrals.iter().zip(&r.predicted).enumerate() {
            let _ = writeln!(
                s,
                "  k = {k}  quadrature {}  T F {}",
                fmt_c(Complex64::new(i.0, i.1)),
                fmt_c(Complex64::new(p.0, p.1))
            );
        }
        let _ = writeln!(s, "residual (raw basis)           {:.3e}", r.residual);
        let _ = writeln!(s, "residual (C-normalized basis)  {:.3e}", r.normalized_residual);
        let _ = writeln!(s, "quadrature vs residue sums     {:.3e}", r.residue_gap);
        let _ = writeln!(s, "{} (tol {tol:e})", if pass { "PASS" } else { "FAIL" });
        return Ok(Output { text: s, ok: pass });
    };
    let p = NonresonantProblem::parse(alphas, betas)?;
    let r = verify_vd(&p, z, tol.min(1e-8), terms)?;
    let pass = r.residual < tol;
    if f == Format::Json {
        return Ok(Output { text: json(&r), ok: pass });
    }
    let mut s = String::new();
    let _ = writeln!(s, "I = V D f at z = {}", fmt_c(z));
    for (k, (i, q)) in r.integrals.iter().zip(&r.predicted).enumerate() {
        let _ = writeln!(
            s,
            "  k = {k}  quadrature {}  V D f {}",
            fmt_c(Complex64::new(i.0, i.1)),
            fmt_c(Complex64::new(q.0, q.1))
        );
    }
    let _ = writeln!(s, "residual {:.3e}", r.residual);
    let _ = writeln!(s, "{} (tol {tol:e})", if pass { "PASS" } else { "FAIL" });
    Ok(Output { text: s, ok: pass })
}

pub fn series(alphas: &str, terms: usize, f: Format) -> Result<Output> {
    let p = UnipotentProblem::parse(alphas)?;
    let coeffs: Vec<String> = p.quotient().f0_coeffs(terms)?.iter().map(ToString::to_string).collect();
    if f == Format::Json {
        #[derive(Serialize)]
        struct Series {
            #[serde(rename = "C")]
            c: String,
            coefficients: Vec<String>,
        }
        return ok(json(&Series { c: p.c().to_string(), coefficients: coeffs }));
    }
    let mut s = format!("C = {}\n", p.c());
    for (m, c) in coeffs.iter().enumerate() {
        let _ = writeln!(s, "{m:>4}  {c}");
    }
    ok(s)
}

type CMatrix = Vec<Vec<(f64, f64)>>;

fn cmatrix(m: &DMatrix<Complex64>) -> CMatrix {
    (0..m.nrows()).map(|k| (0..m.ncols()).map(|l| (m[(k, l)].re, m[(k, l)].im)).collect()).collect()
}

#[derive(Serialize)]
struct NonresonantReport {
    n: usize,
    #[serde(rename = "M0")]
    m0: CMatrix,
    #[serde(rename = "M1")]
    m1: CMatrix,
    #[serde(rename = "Minf")]
    minf: CMatrix,
    relation_residual: f64,
    conjugation_gap: f64,
    spectrum_gap: Option<f64>,
}

pub fn nonresonant(alphas: &str, betas: &str, f: Format) -> Result<Output> {
    let p = NonresonantProblem::parse(alphas, betas)?;
    let t = p.triple();
    let r = NonresonantReport {
        n: p.n(),
        m0: cmatrix(&t.m0),
        m1: cmatrix(&t.m1),
        minf: cmatrix(&t.minf),
        relation_residual: t.relation_residual(),
        conjugation_gap: conjugation_gap(&p, &t.m1)?,
        spectrum_gap: p.alphas_distinct().then(|| spectrum_gap(&eigenvalues(&t.minf), p.alphas_f64())),
    };
    let pass = r.relation_residual < 1e-10 && r.conjugation_gap < 1e-8 && r.spectrum_gap.is_none_or(|g| g < 1e-9);
    if f == Format::Json {
        return Ok(Output { text: json(&r), ok: pass });
    }
    let mut s = String::new();
    for (name, m) in [("M0", &t.m0), ("M1", &t.m1), ("Minf", &t.minf)] {
        let _ = writeln!(s, "{name} =");
        for k in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|l| format!("{:>24}", fmt_short(m[(k, l)]))).collect();
            let _ = writeln!(s, "  [{} ]", row.join(""));
        }
    }
    let _ = writeln!(s, "|M0 M1 Minf - I|            {:.3e}", r.relation_residual);
    let _ = writeln!(s, "Mellin-Barnes conjugation   {:.3e}", r.conjugation_gap);
    match r.spectrum_gap {
        Some(g) => {
            let _ = writeln!(s, "spectrum of Minf vs e^(2 pi i alpha)  {g:.3e}");
        }
        None => {
            let _ = writeln!(s, "alphas not distinct mod 1: spectrum check skipped");
        }
    }
    Ok(Output { text: s, ok: pass })
}

fn fmt_short(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-16 { 0.0 } else { x };
    format!("{:.6}{:+.6}i", clean(z.re), clean(z.im))
}
