//! Plain-text rendering of the report structures.
//!
//! Every renderer is a pure function of the already-built report, so the
//! text view and the JSON view always present the same data.

use std::fmt::Write;

use crate::report::{
    AnalysisReport, CandidateEntry, ComplexCheckReport, DeformSearchReport, ModelEcho,
    PairEntry, PfaffianReport, ResidueReport, SignCheckEntry, SliceEntry, VerdictEntry,
};

fn exponent_text(exponent: &[i64]) -> String {
    let rendered: Vec<String> = exponent.iter().map(|v| v.to_string()).collect();
    format!("({})", rendered.join(", "))
}

fn push_matrix(out: &mut String, echo: &ModelEcho) {
    let width = echo
        .matrix
        .iter()
        .flat_map(|row| row.iter().map(String::len))
        .max()
        .unwrap_or(1);
    let _ = writeln!(out, "residue matrix B:");
    for row in &echo.matrix {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
}

fn push_model(out: &mut String, echo: &ModelEcho) {
    let _ = writeln!(
        out,
        "model: dim {}, log branches {} (indices below are 1-based)",
        echo.dim, echo.log_branches
    );
    push_matrix(out, echo);
    let _ = writeln!(out, "Pfaffian: {}", echo.pfaffian);
}

fn push_pairs(out: &mut String, pairs: &[PairEntry]) {
    if pairs.is_empty() {
        let _ = writeln!(out, "branch pairs: none (fewer than two log branches)");
        return;
    }
    let _ = writeln!(out, "branch pairs:");
    for pair in pairs {
        let status = if !pair.residual {
            "non-residual".to_string()
        } else {
            match pair.special {
                Some(true) => "residual, special".to_string(),
                Some(false) if !pair.meets_triple_locus => {
                    "residual, no triple points".to_string()
                }
                Some(false) => "residual, not special".to_string(),
                None => "residual".to_string(),
            }
        };
        let _ = writeln!(
            out,
            "  pair {{{}, {}}}: biresidue {}, {status}",
            pair.pair[0], pair.pair[1], pair.biresidue
        );
        for triple in &pair.triples {
            let ratio = triple.ratio.as_deref().unwrap_or("-");
            let special = if triple.special { "special" } else { "not special" };
            let _ = writeln!(
                out,
                "    triple ({{{}, {}}}, {}): ratio {ratio}, {special}",
                triple.pair[0], triple.pair[1], triple.third
            );
        }
    }
}

fn push_verdict(out: &mut String, verdict: &VerdictEntry) {
    let _ = writeln!(out, "verdict: {}", verdict.statement);
    for witness in &verdict.witnesses {
        let _ = writeln!(
            out,
            "  witness {{{}, {}}}: {}",
            witness.pair[0], witness.pair[1], witness.reason
        );
    }
}

fn push_sign_checks(out: &mut String, checks: &[SignCheckEntry]) {
    if checks.is_empty() {
        return;
    }
    let _ = writeln!(out, "kernel-equation sign checks (residual pairs):");
    for check in checks {
        let render = |p: &Option<Vec<i64>>| match p {
            Some(v) => exponent_text(v),
            None => "none".to_string(),
        };
        let confirmed = match (check.plus_agrees, check.minus_agrees) {
            (true, true) => "both readings agree with the sweep",
            (true, false) => "the (+) reading agrees with the sweep",
            (false, true) => "the (-) reading agrees with the sweep",
            (false, false) => "neither reading agrees with the sweep",
        };
        let _ = writeln!(
            out,
            "  pair {{{}, {}}}: prediction(+) {}, prediction(-) {}, sweep degree {}, \
             closed monomials found {}; {confirmed}",
            check.pair[0],
            check.pair[1],
            render(&check.prediction_plus),
            render(&check.prediction_minus),
            check.sweep_degree,
            check.closed_monomials.len(),
        );
    }
}

fn push_candidates(out: &mut String, candidates: &[CandidateEntry]) {
    if candidates.is_empty() {
        let _ = writeln!(out, "  no closed monomial candidates in range");
        return;
    }
    for candidate in candidates {
        let exactness = match candidate.exact {
            Some(true) => "exact",
            Some(false) => "not exact",
            None => "exactness untested",
        };
        let certificate = match &candidate.certificate {
            Some(c) => format!("certificate (lambda, mu) = ({}, {})", c.lambda, c.mu),
            None => "no span certificate (partially logarithmic model)".to_string(),
        };
        let closed = if candidate.closed { "closed" } else { "not closed" };
        let _ = writeln!(
            out,
            "  candidate pair {{{}, {}}}, exponent {} (degree {}): {closed}, {certificate}, \
             {exactness}",
            candidate.pair[0],
            candidate.pair[1],
            exponent_text(&candidate.exponent),
            candidate.degree,
        );
        if let Some(relation) = &candidate.column_relation {
            let integrality = if relation.integer_coefficients {
                "integer coefficients"
            } else {
                "rational coefficients"
            };
            let verified = if relation.verified { "verified" } else { "FAILED VERIFICATION" };
            let _ = writeln!(
                out,
                "    column relation: {} [{integrality}, {verified}]",
                relation.equation
            );
        }
    }
}

fn push_notes(out: &mut String, notes: &[String]) {
    if notes.is_empty() {
        return;
    }
    let _ = writeln!(out, "convention notes:");
    for note in notes {
        let _ = writeln!(out, "  - {note}");
    }
}

pub fn render_analysis(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "log-symplectic analysis (schema {})", report.schema_version);
    push_model(&mut out, &report.model);
    out.push('\n');
    push_pairs(&mut out, &report.pairs);
    out.push('\n');
    push_verdict(&mut out, &report.verdict);
    out.push('\n');
    push_sign_checks(&mut out, &report.sign_checks);
    out.push('\n');
    let _ = writeln!(
        out,
        "deformation search (total degree 1..={}): {} candidate(s)",
        report.deform_max_degree,
        report.deformations.len()
    );
    push_candidates(&mut out, &report.deformations);
    out.push('\n');
    push_notes(&mut out, &report.convention_notes);
    out
}

pub fn render_pfaffian(report: &PfaffianReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Pfaffian report (schema {})", report.schema_version);
    push_model(&mut out, &report.model);
    out
}

pub fn render_residues(report: &ResidueReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "residue classification (schema {})", report.schema_version);
    push_model(&mut out, &report.model);
    out.push('\n');
    push_pairs(&mut out, &report.pairs);
    out.push('\n');
    push_verdict(&mut out, &report.verdict);
    out
}

pub fn render_deform(report: &DeformSearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "deformation search (schema {})", report.schema_version);
    push_model(&mut out, &report.model);
    out.push('\n');
    let _ = writeln!(
        out,
        "closed monomial candidates with total degree 1..={}: {}",
        report.max_degree,
        report.candidates.len()
    );
    push_candidates(&mut out, &report.candidates);
    out
}

fn push_slices(out: &mut String, slices: &[SliceEntry]) {
    for slice in slices {
        let dims: Vec<String> = slice.dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "    multidegree {}: homology dims [{}]",
            exponent_text(&slice.multidegree),
            dims.join(", ")
        );
    }
}

pub fn render_complexes(report: &ComplexCheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "complex verification (schema {})", report.schema_version);
    let _ = writeln!(
        out,
        "scale: dim {}, exponent truncation {}",
        report.dim, report.truncation
    );
    out.push('\n');
    let check = |flag: bool| if flag { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "cone homotopy identity hD + Dh = id over {} elements: {}",
        report.cone.elements_checked,
        check(report.cone.identity_holds)
    );
    let _ = writeln!(out, "cone differential squares to zero: {}", check(report.cone.d_squared_zero));
    let _ = writeln!(
        out,
        "face-value matrix convention satisfies the identity: {} (expected no)",
        if report.cone.face_value_identity_holds { "yes" } else { "no" }
    );
    out.push('\n');
    for section in &report.normal {
        let _ = writeln!(
            out,
            "normal complex, {} branch(es), first exponent {}: {}",
            section.branches,
            section.first_exp,
            if section.all_zero { "all homology zero (PASS)" } else { "NONZERO HOMOLOGY (FAIL)" }
        );
        push_slices(&mut out, &section.slices);
    }
    out.push('\n');
    let origin: Vec<String> = report.control.origin_dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(
        out,
        "control (first exponent {} instead of -1): origin homology dims [{}], \
         constant class detected: {}",
        report.control.first_exp,
        origin.join(", "),
        check(report.control.constant_class_detected)
    );
    out.push('\n');
    for section in &report.principal_parts {
        let _ = writeln!(
            out,
            "principal-parts complex, twist order {}: {}",
            section.order,
            if section.all_zero { "all homology zero (PASS)" } else { "NONZERO HOMOLOGY (FAIL)" }
        );
        push_slices(&mut out, &section.slices);
    }
    out.push('\n');
    let _ = writeln!(out, "overall: {}", check(report.all_passed));
    push_notes(&mut out, &report.convention_notes);
    out
}
