//! Subcommand implementations, kept binary-free so tests can drive them.

use crate::notation::{parse_system, render_system};
use crate::report::Report;
use fatpoints::oracle::{
    cremona_point_map, curve_membership_check, family_base_point, h0_interpolation,
    kernel_basis, line_vanishing_order, sample_pencil_curve, transport_config,
    PointConfiguration,
};
use fatpoints::reduction::reduce_to_standard;
use fatpoints::{base_locus, dimension, fixed_components, transport_cross_check};
use fatpoints::{DivisorClass, Error};
use std::fmt;
use std::path::Path;

/// Successful command output plus the process exit code (0 or 3).
pub struct CmdOk {
    pub stdout: String,
    pub code: i32,
}

impl CmdOk {
    fn ok(stdout: String) -> Self {
        CmdOk { stdout, code: 0 }
    }
}

/// Command failure, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Usage or parse error (exit 1).
    Usage(String),
    /// The system is empty (exit 2).
    Empty(String),
    /// An oracle verification failed (exit 3).
    Verify(String),
    /// A theorem-contract violation inside the library (exit 4).
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Empty(_) => 2,
            CliError::Verify(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Empty(m)
            | CliError::Verify(m)
            | CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptySystem => CliError::Empty(e.to_string()),
            Error::Internal(_)
            | Error::Indeterminacy
            | Error::DegenerateConfiguration(_)
            | Error::EmptyKernel => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn parse(input: &str) -> Result<DivisorClass, CliError> {
    parse_system(input).map_err(|e| CliError::Usage(e.with_caret(input)))
}

fn mults_u64(l: &DivisorClass) -> Vec<u64> {
    l.mults().iter().map(|&m| m as u64).collect()
}

/// `dim SYSTEM [--json] [--oracle --prime P --seed S]`
pub fn cmd_dim(
    input: &str,
    json: bool,
    oracle: Option<(u64, u64)>,
) -> Result<CmdOk, CliError> {
    let l = parse(input)?;
    let h0 = dimension(&l);
    let oracle_h0 = match oracle {
        Some((prime, seed)) => {
            let cfg = PointConfiguration::new(prime, seed)?;
            Some((h0_interpolation(*l.degree() as u64, &mults_u64(&l), &cfg)?, prime, seed))
        }
        None => None,
    };
    let matches = oracle_h0.map(|(o, _, _)| o == h0 as u64);
    let code = if matches == Some(false) { 3 } else { 0 };

    let mut out = if json {
        let mut report = Report::new(&l);
        report.h0 = Some(h0);
        report.to_json()
    } else if h0 == 0 {
        "h0 = 0 (empty)".to_string()
    } else {
        format!("h0 = {h0} (projective dimension {})", h0 - 1)
    };
    if let Some((o, prime, seed)) = oracle_h0 {
        if !json {
            out.push_str(&format!(
                "\noracle h0 = {o} (seed {seed}, prime {prime}): {}",
                if o == h0 as u64 { "match" } else { "MISMATCH" }
            ));
        }
    }
    Ok(CmdOk { stdout: out, code })
}

fn render_fixed(items: &[(DivisorClass, i64)]) -> String {
    items
        .iter()
        .map(|(class, mult)| format!("{} x{}", render_system(class), mult))
        .collect::<Vec<_>>()
        .join("; ")
}

/// `fixed SYSTEM [--json]`
pub fn cmd_fixed(input: &str, json: bool) -> Result<CmdOk, CliError> {
    let l = parse(input)?;
    let h0 = dimension(&l);
    if h0 == 0 {
        return Err(CliError::Empty(format!("empty system: {}", render_system(&l))));
    }
    let (fixed, residual) = fixed_components(&l)?;
    if json {
        let mut report = Report::new(&l);
        report.h0 = Some(h0);
        report.fixed = Some(
            fixed
                .items
                .iter()
                .map(|(class, mult)| crate::report::FixedJson { class: class.into(), mult: *mult })
                .collect(),
        );
        return Ok(CmdOk::ok(report.to_json()));
    }
    let out = if fixed.is_empty() {
        "no fixed components".to_string()
    } else {
        format!("{}; residual {}", render_fixed(&fixed.items), render_system(&residual))
    };
    Ok(CmdOk::ok(out))
}

fn render_seven(seven: [usize; 7]) -> String {
    let consecutive = seven.windows(2).all(|w| w[1] == w[0] + 1);
    if consecutive {
        format!("{}..{}", seven[0], seven[6])
    } else {
        seven.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Base-locus report for a parsed class; shared by `bs` and fixture mode.
pub fn bs_report(l: &DivisorClass) -> Result<Report, CliError> {
    let h0 = dimension(l);
    if h0 == 0 {
        let mut report = Report::new(l);
        report.h0 = Some(0);
        return Ok(report);
    }
    let out = base_locus(l)?;
    Ok(Report::from_base_locus(l, h0, &out))
}

/// `bs SYSTEM [--json]`
pub fn cmd_bs(input: &str, json: bool) -> Result<CmdOk, CliError> {
    let l = parse(input)?;
    let h0 = dimension(&l);
    if h0 == 0 {
        return Err(CliError::Empty(format!("empty system: {}", render_system(&l))));
    }
    let out = base_locus(&l)?;
    if json {
        return Ok(CmdOk::ok(Report::from_base_locus(&l, h0, &out).to_json()));
    }
    let mut lines = Vec::new();
    lines.push(format!(
        "fixed: {}",
        if out.fixed.is_empty() { "none".to_string() } else { render_fixed(&out.fixed.items) }
    ));
    let mut curves = out.curves.clone();
    curves.sort_by_key(|(id, _)| (id.level(), id.pair()));
    lines.push(format!(
        "curves: {}",
        if curves.is_empty() {
            "none".to_string()
        } else {
            curves
                .iter()
                .map(|(id, mult)| format!("{mult} * {id}"))
                .collect::<Vec<_>>()
                .join("; ")
        }
    ));
    if out.dq8_mult > 0 {
        lines.push(format!("dq8: {} * D_Q8", out.dq8_mult));
    }
    if let Some((mult, spec)) = &out.point {
        lines.push(format!("point: {mult} * P(points {})", render_seven(spec.seven())));
    }
    lines.push(format!("residual: {}", render_system(&out.residual)));
    Ok(CmdOk::ok(lines.join("\n")))
}

/// The reduction diagram: one row per class, asterisks marking the four
/// slots the next step is based at.
pub fn reduction_diagram(l: &DivisorClass) -> String {
    let red = reduce_to_standard(l);
    let mut rows = vec![l.clone()];
    for step in &red.trace.steps {
        rows.push(step.apply_divisor(rows.last().unwrap()));
    }
    let token = |row: usize, col: usize| -> String {
        if col == 0 {
            rows[row].degree().to_string()
        } else {
            let starred = row < red.trace.steps.len() && red.trace.steps[row].uses(col);
            format!("{}{}", if starred { "*" } else { "" }, rows[row].mults()[col - 1])
        }
    };
    let widths: Vec<usize> = (0..9)
        .map(|col| (0..rows.len()).map(|row| token(row, col).len()).max().unwrap())
        .collect();
    let mut out: Vec<String> = rows
        .iter()
        .enumerate()
        .map(|(row, _)| {
            let cells: Vec<String> = (1..9)
                .map(|col| format!("{:>w$}", token(row, col), w = widths[col]))
                .collect();
            format!("{:>w$} | {}", token(row, 0), cells.join(" "), w = widths[0])
        })
        .collect();
    if red.degree_went_negative {
        out.push("empty: degree went negative".to_string());
    }
    out.join("\n")
}

/// `reduce SYSTEM [--json]`
pub fn cmd_reduce(input: &str, json: bool) -> Result<CmdOk, CliError> {
    let l = parse(input)?;
    if json {
        let red = reduce_to_standard(&l);
        let mut report = Report::new(&l);
        report.h0 = Some(dimension(&l));
        report.trace_len = Some(red.trace.len());
        return Ok(CmdOk::ok(report.to_json()));
    }
    Ok(CmdOk::ok(reduction_diagram(&l)))
}

/// `verify SYSTEM [--prime P] [--seed S]`: the full oracle battery.
pub fn cmd_verify(input: &str, prime: u64, seed: u64) -> Result<CmdOk, CliError> {
    let l = parse(input)?;
    let h0 = dimension(&l);
    if h0 == 0 {
        return Err(CliError::Empty(format!("empty system: {}", render_system(&l))));
    }
    let cfg = PointConfiguration::new(prime, seed)?;
    let mut lines = vec![format!("seed {seed}, prime {prime}")];
    let mut all_ok = true;
    let mut check = |lines: &mut Vec<String>, name: &str, ok: bool, detail: String| {
        lines.push(format!("check {name}: {} ({detail})", if ok { "pass" } else { "FAIL" }));
        all_ok &= ok;
    };

    let oracle_h0 = h0_interpolation(*l.degree() as u64, &mults_u64(&l), &cfg)?;
    check(
        &mut lines,
        "dimension",
        oracle_h0 == h0 as u64,
        format!("formula {h0}, oracle {oracle_h0}"),
    );

    let out = base_locus(&l)?;
    let residual = out.residual.clone();
    let kb = kernel_basis(*residual.degree() as u64, &mults_u64(&residual), &cfg)?;

    let mut line_fails = Vec::new();
    for i in 1..=8usize {
        for j in (i + 1)..=8 {
            let expected = residual.pair_excess(i, j)?.max(0) as u64;
            let got = line_vanishing_order(&kb, &cfg, i, j)?;
            if got != expected {
                line_fails.push(format!("l_{{{i},{j}}}: expected {expected}, got {got}"));
            }
        }
    }
    check(
        &mut lines,
        "line orders",
        line_fails.is_empty(),
        if line_fails.is_empty() { "28 pairs".to_string() } else { line_fails.join("; ") },
    );

    match &out.point {
        None => lines.push("check point membership: skip (no point term)".to_string()),
        Some((mult, spec)) => {
            // Transport the configuration to the standard end, take the
            // family base point there, and map it back step by step.
            let red = reduce_to_standard(&residual);
            let mut levels = vec![cfg.clone()];
            for step in &red.trace.steps {
                let next = transport_config(levels.last().unwrap(), step.base())?;
                levels.push(next);
            }
            let light = (1..=8)
                .find(|i| !spec.seven().contains(i))
                .expect("one label is light");
            let mut p = family_base_point(levels.last().unwrap(), *mult as u64, light)?;
            for (k, step) in red.trace.steps.iter().enumerate().rev() {
                p = cremona_point_map(&[p], step.base(), &levels[k])?[0];
            }
            let ok = kb.all_vanish_at(cfg.field(), p);
            check(&mut lines, "point membership", ok, format!("P = {p:?}"));
        }
    }

    let mut curve_fails = Vec::new();
    let mut checked = 0;
    let mut skipped = 0;
    for (id, _) in &out.curves {
        if id.level() > 2 {
            skipped += 1;
            continue;
        }
        checked += 1;
        if !curve_membership_check(&residual, *id, &cfg)? {
            curve_fails.push(id.to_string());
        }
    }
    check(
        &mut lines,
        "curve containment",
        curve_fails.is_empty(),
        if curve_fails.is_empty() {
            format!("{checked} curves, {skipped} skipped at level > 2")
        } else {
            format!("not contained: {}", curve_fails.join("; "))
        },
    );

    if out.dq8_mult > 0 {
        let pts = sample_pencil_curve(&cfg, 6)?;
        let ok = pts.iter().all(|&p| kb.all_vanish_at(cfg.field(), p));
        check(&mut lines, "dq8 containment", ok, format!("{} sampled points", pts.len()));
    } else {
        lines.push("check dq8 containment: skip (no D_Q8 term)".to_string());
    }

    let tcc = transport_cross_check(&residual)?;
    check(&mut lines, "transport", tcc, "base-curve multiset agrees with the end".to_string());

    lines.push(format!("verify: {}", if all_ok { "PASS" } else { "FAIL" }));
    Ok(CmdOk { stdout: lines.join("\n"), code: if all_ok { 0 } else { 3 } })
}

/// Fixture regression: one case per line, `INPUT -> EXPECTED_JSON`.
pub fn run_fixtures(path: &Path) -> Result<CmdOk, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = Vec::new();
    let mut all_ok = true;
    let mut cases = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (input, expected) = line.split_once("->").ok_or_else(|| {
            CliError::Usage(format!("line {}: missing '->'", lineno + 1))
        })?;
        let input = input.trim();
        let expected: serde_json::Value = serde_json::from_str(expected.trim())
            .map_err(|e| CliError::Usage(format!("line {}: bad JSON: {e}", lineno + 1)))?;
        cases += 1;
        let l = parse(input)?;
        let actual = serde_json::to_value(bs_report(&l)?).expect("report serializes");
        if actual == expected {
            lines.push(format!("case {cases} ({input}): pass"));
        } else {
            all_ok = false;
            lines.push(format!("case {cases} ({input}): FAIL\n  expected {expected}\n  got      {actual}"));
        }
    }
    lines.push(format!("fixtures: {} case(s), {}", cases, if all_ok { "PASS" } else { "FAIL" }));
    Ok(CmdOk { stdout: lines.join("\n"), code: if all_ok { 0 } else { 3 } })
}
