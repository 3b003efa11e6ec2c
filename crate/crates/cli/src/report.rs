//! Check tables: one row per comparison, rendered as CSV and markdown.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ggbm_core::paths::io::format_f64;

/// How a row's `pass` column follows from its numeric columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// `|measured - target| <= tolerance * se`
    WithinSe,
    /// `|measured - target| > tolerance * se`: the two are distinguishable.
    ApartSe,
    /// `|measured - target| <= tolerance`
    WithinAbs,
    /// `|measured - target| <= tolerance * |target|`
    WithinRel,
    /// `measured >= tolerance`
    AtLeast,
    /// `measured <= tolerance`
    AtMost,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::WithinSe => "within_se",
            Rule::ApartSe => "apart_se",
            Rule::WithinAbs => "within_abs",
            Rule::WithinRel => "within_rel",
            Rule::AtLeast => "at_least",
            Rule::AtMost => "at_most",
        }
    }

    pub fn passes(&self, target: f64, measured: f64, se: f64, tolerance: f64) -> bool {
        let dev = (measured - target).abs();
        match self {
            Rule::WithinSe => dev <= tolerance * se,
            Rule::ApartSe => dev > tolerance * se,
            Rule::WithinAbs => dev <= tolerance,
            Rule::WithinRel => dev <= tolerance * target.abs(),
            Rule::AtLeast => measured >= tolerance,
            Rule::AtMost => measured <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub rule: Rule,
    pub target: f64,
    pub measured: f64,
    /// Standard error of `measured`; `0` for deterministic quantities.
    pub se: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    /// Settings that produced the numbers, in a fixed order.
    pub config: Vec<(String, String)>,
    pub rows: Vec<CheckRow>,
    overrides: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(experiment: &str, config: Vec<(String, String)>, overrides: BTreeMap<String, f64>) -> Self {
        Self {
            experiment: experiment.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            rows: Vec::new(),
            overrides,
        }
    }

    /// Adds a row; `tol.<name>` from the configuration replaces `tolerance`.
    pub fn check(&mut self, name: &str, rule: Rule, target: f64, measured: f64, se: f64, tolerance: f64) {
        let tolerance = self.overrides.get(name).copied().unwrap_or(tolerance);
        self.rows.push(CheckRow {
            name: name.to_string(),
            rule,
            target,
            measured,
            se,
            tolerance,
            pass: rule.passes(target, measured, se, tolerance),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,rule,target,measured,se,tolerance,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.name,
                r.rule.as_str(),
                format_f64(r.target),
                format_f64(r.measured),
                format_f64(r.se),
                format_f64(r.tolerance),
                r.pass
            );
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Experiment `{}`\n\n", self.experiment);
        let _ = writeln!(s, "ggbm {}\n", self.version);
        s.push_str("| setting | value |\n|---|---|\n");
        for (k, v) in &self.config {
            let _ = writeln!(s, "| {k} | {v} |");
        }
        s.push_str("\n| check | rule | target | measured | se | tolerance | pass |\n|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| {} | {} | {:.6e} | {:.6e} | {:.3e} | {:.3e} | {} |",
                r.name,
                r.rule.as_str(),
                r.target,
                r.measured,
                r.se,
                r.tolerance,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            s,
            "\n{} of {} checks passed.",
            self.rows.len() - failed,
            self.rows.len()
        );
        s
    }
}
