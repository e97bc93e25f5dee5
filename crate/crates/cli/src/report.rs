use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use tordeg::bounds::{summary_table, Outcome};

use crate::error::CliError;
use crate::manifest::Format;
use crate::run::{Report, VerdictReport};

pub fn report_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

pub fn outcome_line(o: Outcome) -> &'static str {
    match o {
        Outcome::AllHold => "outcome: every proved bound holds",
        Outcome::CounterexampleFound => "outcome: counterexample to the conjectured bound found",
        Outcome::ProvedBoundViolated => "outcome: a proved bound is VIOLATED",
    }
}

/// Human summary. Every number in it also appears in the JSON report.
pub fn report_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "experiment {} ({})", r.manifest.experiment.name(), &r.hash[..16]);
    if let Some(inst) = &r.instance {
        let _ = writeln!(out, "ring: {}", inst.ring);
        let degrees: Vec<String> = inst.degrees.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "generators: {} (degrees {})",
            inst.generators.len(),
            degrees.join(", ")
        );
        let _ = writeln!(out, "tau: {}", inst.tau);
        if let Some(g) = &inst.noether {
            let _ = writeln!(
                out,
                "group order: {}; degrees within order: {}; tau within order: {}",
                g.group_order, g.degrees_within_order, g.tau_within_order
            );
        }
    }
    if let Some(t) = &r.table {
        let _ = writeln!(out);
        let _ = write!(out, "{}", t);
    }
    match r.regularity {
        Some(reg) => {
            let _ = writeln!(out, "regularity (degrees divided by {}): {}", r.regularity_scale, reg);
        }
        None => {
            let _ = writeln!(out, "regularity: unknown (capped table)");
        }
    }
    if !r.witnesses.is_empty() {
        let _ = writeln!(out);
        for w in &r.witnesses {
            let _ = writeln!(
                out,
                "witness: i = {}, degree {}, dim H_i(f; B) = {}",
                w.i, w.degree, w.dim
            );
        }
    }
    out.push_str(&verdict_text(&r.verdicts));
    out
}

pub fn verdict_text(v: &VerdictReport) -> String {
    let mut out = String::new();
    if !v.verdicts.is_empty() {
        let _ = writeln!(out);
        out.push_str(&summary_table(&v.verdicts));
    }
    for s in &v.skipped {
        let _ = writeln!(out, "skipped {}: {}", s.check, s.reason);
    }
    let _ = writeln!(out, "{}", outcome_line(v.outcome));
    out
}

/// Writes `<stem>.json`, `.csv`, `.txt`, `.verdicts.json` and, when there
/// is a profile, `.profile.json`. Returns the paths in that order.
pub fn write_report(r: &Report, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let stem = r.manifest.stem();
    let mut files = vec![
        (format!("{}.json", stem), report_json(r)),
        (
            format!("{}.csv", stem),
            r.table.as_ref().map(|t| t.to_csv()).unwrap_or_default(),
        ),
        (format!("{}.txt", stem), report_text(r)),
        (format!("{}.verdicts.json", stem), r.verdicts.to_json()),
    ];
    if let Some(p) = &r.profile {
        let mut s = p.to_json();
        s.push('\n');
        files.push((format!("{}.profile.json", stem), s));
    }
    let mut paths = Vec::new();
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => report_json(r),
        Format::Csv => r.table.as_ref().map(|t| t.to_csv()).unwrap_or_default(),
        Format::Text => report_text(r),
    }
}

pub fn render_verdicts(v: &VerdictReport, format: Format) -> String {
    match format {
        Format::Json => v.to_json(),
        Format::Csv => {
            let mut out = String::from("bound,instance,i,lhs,rhs,holds,kind\n");
            for x in &v.verdicts {
                let kind = serde_json::to_value(x.kind).expect("kinds serialize");
                let _ = writeln!(
                    out,
                    "{},\"{}\",{},{},{},{},{}",
                    x.bound,
                    x.instance.replace('"', "\"\""),
                    x.i,
                    x.lhs,
                    x.rhs,
                    x.holds,
                    kind.as_str().unwrap_or_default()
                );
            }
            out
        }
        Format::Text => verdict_text(v),
    }
}
