//! The per-space result bundle: dimension tables for all coefficient
//! systems plus every verification verdict, renderable as aligned text or
//! JSON.

use crate::error::Error;
use crate::stratified::{support_cosupport_check, CohomologyPackage, SupportCheckReport};
use crate::stringy;
use crate::GradedDims;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub table_s0: GradedDims,
    pub table_ic: GradedDims,
    pub table_q: GradedDims,
    pub table_yo: GradedDims,
    pub k0_dim: usize,
    pub c0_dim: usize,
    pub ses_a_ok: bool,
    pub ses_b_ok: bool,
    pub middle_injection_ok: bool,
    pub middle_surjection_ok: bool,
    pub poincare_ok_s0: bool,
    pub poincare_ok_ic: bool,
    pub poincare_ok_q: bool,
    pub support_report: SupportCheckReport,
    pub notes: Vec<String>,
}

/// Assemble the full report from a verified package.
pub fn build_report(pkg: &CohomologyPackage) -> Result<CohomologyReport, Error> {
    let n = pkg.n;
    let table_s0 = stringy::compute_s0(pkg)?;
    let table_ic = stringy::compute_ic(pkg)?;
    let table_q = stringy::compute_q(pkg);
    let table_yo = pkg.dims_yo.clone();
    let k0_dim = stringy::k0_dim(pkg);
    let c0_dim = stringy::c0_dim(pkg);
    let ses_a_ok = table_s0[n] == k0_dim + table_yo[n];
    let ses_b_ok = table_s0[n] == pkg.dims_yo_c[n] + c0_dim;
    let (middle_injection_ok, middle_surjection_ok) = stringy::middle_maps_check(pkg)?;
    let support_report = support_cosupport_check(pkg, &table_s0);

    let mut notes = pkg.notes.clone();
    notes.push(format!(
        "middle degree {n}: S₀ entry {} carries image dims K₀ = {k0_dim} (from H^{n}(Y) side) \
         and C₀ = {c0_dim} (from H^{n}(Y°) side)",
        table_s0[n]
    ));

    Ok(CohomologyReport {
        n,
        poincare_ok_s0: stringy::check_poincare(&table_s0, n)?,
        poincare_ok_ic: stringy::check_poincare(&table_ic, n)?,
        poincare_ok_q: stringy::check_poincare(&table_q, n)?,
        table_s0,
        table_ic,
        table_q,
        table_yo,
        k0_dim,
        c0_dim,
        ses_a_ok,
        ses_b_ok,
        middle_injection_ok,
        middle_surjection_ok,
        support_report,
        notes,
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Aligned text rendering: one row per degree, one column per coefficient
/// system, followed by the verification verdicts and notes.
pub fn render_text(r: &CohomologyReport) -> String {
    let headers = ["deg", "S0", "IC", "Q", "Yo"];
    let top = 2 * r.n;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for i in 0..=top {
        rows.push(vec![
            i.to_string(),
            r.table_s0[i].to_string(),
            r.table_ic[i].to_string(),
            r.table_q[i].to_string(),
            r.table_yo.get(i).map_or_else(|| "-".into(), |d| d.to_string()),
        ]);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{:>w$}", c, w = widths[j]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let header_cells: Vec<String> = headers.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "{}", fmt_row(&header_cells, &widths));
    for row in &rows {
        let _ = writeln!(out, "{}", fmt_row(row, &widths));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "K0 = {}, C0 = {}", r.k0_dim, r.c0_dim);
    let _ = writeln!(out, "ses_a (0 -> K0 -> S0^n -> H^n(Yo) -> 0): {}", verdict(r.ses_a_ok));
    let _ = writeln!(out, "ses_b (0 -> H^n_c(Yo) -> S0^n -> C0 -> 0): {}", verdict(r.ses_b_ok));
    let _ = writeln!(out, "middle injection c: {}", verdict(r.middle_injection_ok));
    let _ = writeln!(out, "middle surjection d: {}", verdict(r.middle_surjection_ok));
    let _ = writeln!(out, "poincare(S0): {}", verdict(r.poincare_ok_s0));
    let _ = writeln!(out, "poincare(IC): {}", verdict(r.poincare_ok_ic));
    let _ = writeln!(out, "poincare(Q): {}", verdict(r.poincare_ok_q));
    let support_all = r.support_report.support_ok.iter().all(|&b| b);
    let cosupport_all = r.support_report.cosupport_ok.iter().all(|&b| b);
    let _ = writeln!(out, "support: {}", verdict(support_all));
    let _ = writeln!(out, "cosupport: {}", verdict(cosupport_all));
    if !r.notes.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "notes:");
        for note in &r.notes {
            let _ = writeln!(out, "  - {note}");
        }
    }
    out
}
