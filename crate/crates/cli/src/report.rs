//! Report model shared by the text and structured output modes.
//!
//! Structured output must be byte-identical across runs with the same
//! configuration, so it contains no timing and no unordered maps.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingInfo>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    pub bounds: BoundsInfo,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assume_nonzero: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<NamedEntry>>,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct RingInfo {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub sigma_t: String,
    pub dsigma_t: String,
}

#[derive(Debug, Serialize)]
pub struct BoundsInfo {
    pub jacobi: usize,
    pub degree: usize,
}

#[derive(Debug, Serialize)]
pub struct NamedEntry {
    pub name: String,
    pub description: String,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub bracket: String,
    pub e: String,
    pub h: String,
    pub f: String,
}

#[derive(Debug, Serialize)]
pub struct RelationInfo {
    pub pair: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "name")]
pub enum CheckOutcome {
    #[serde(rename = "classify")]
    Classify {
        pass: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        case: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "delta")]
    Delta {
        pass: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        delta: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        freedom: Option<String>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        divided_by: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "homlie")]
    HomLie {
        pass: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        alpha: Option<Vec<Vec<String>>>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        residuals: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "jacobi")]
    Jacobi {
        pass: bool,
        triples: usize,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        failures: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "qhl")]
    Qhl {
        pass: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        beta: Option<String>,
        jacobi_ok: bool,
        compatible: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "relations")]
    Relations {
        pass: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        relations: Vec<RelationInfo>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "table")]
    Table {
        pass: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        rows: Vec<TableRow>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "well_defined")]
    WellDefined {
        pass: bool,
        sigma_ok: bool,
        dsigma_ok: bool,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        constraints: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "quadratic")]
    Quadratic {
        pass: bool,
        system: String,
        rules: Vec<String>,
        confluent: bool,
        overlaps: usize,
        normal_word_counts: Vec<u64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        casimir_normal: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    #[serde(rename = "color")]
    Color {
        pass: bool,
        relations: Vec<String>,
        grading: Vec<GradingEntry>,
    },
}

#[derive(Debug, Serialize)]
pub struct GradingEntry {
    pub letter: String,
    pub degree: [u8; 2],
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        match self {
            CheckOutcome::Classify { pass, .. }
            | CheckOutcome::Delta { pass, .. }
            | CheckOutcome::HomLie { pass, .. }
            | CheckOutcome::Jacobi { pass, .. }
            | CheckOutcome::Qhl { pass, .. }
            | CheckOutcome::Relations { pass, .. }
            | CheckOutcome::Table { pass, .. }
            | CheckOutcome::WellDefined { pass, .. }
            | CheckOutcome::Quadratic { pass, .. }
            | CheckOutcome::Color { pass, .. } => *pass,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            CheckOutcome::Classify { .. } => "classify",
            CheckOutcome::Delta { .. } => "delta",
            CheckOutcome::HomLie { .. } => "homlie",
            CheckOutcome::Jacobi { .. } => "jacobi",
            CheckOutcome::Qhl { .. } => "qhl",
            CheckOutcome::Relations { .. } => "relations",
            CheckOutcome::Table { .. } => "table",
            CheckOutcome::WellDefined { .. } => "well_defined",
            CheckOutcome::Quadratic { .. } => "quadratic",
            CheckOutcome::Color { .. } => "color",
        }
    }
}

pub fn render_structured(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn render_text(report: &Report, elapsed_ms: u128) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: &str| {
        out.push_str(line);
        out.push('\n');
    };
    push(&mut out, &format!("command: {}", report.command));
    if !report.instance.is_empty() {
        let mut line = format!("instance: {}", report.instance);
        if let Some(d) = &report.description {
            line.push_str(&format!(" ({d})"));
        }
        push(&mut out, &line);
    }
    if let Some(ring) = &report.ring {
        let kind = match ring.order {
            Some(n) => format!("K[t]/(t^{n})"),
            None => "K[t]".to_string(),
        };
        push(
            &mut out,
            &format!(
                "ring: {kind}   sigma(t) = {}   dsigma(t) = {}",
                ring.sigma_t, ring.dsigma_t
            ),
        );
    }
    if !report.parameters.is_empty() {
        push(
            &mut out,
            &format!("parameters: {}", report.parameters.join(", ")),
        );
    }
    if !report.assume_nonzero.is_empty() {
        push(
            &mut out,
            &format!("assumed nonzero: {}", report.assume_nonzero.join(", ")),
        );
    }
    if let Some(instances) = &report.instances {
        for entry in instances {
            push(&mut out, &format!("{:12} {}", entry.name, entry.description));
        }
    }
    for check in &report.checks {
        render_check_text(&mut out, check);
    }
    let total = report.checks.len();
    let passed = report.checks.iter().filter(|c| c.pass()).count();
    push(
        &mut out,
        &format!(
            "result: {} ({passed}/{total} checks)",
            if report.pass { "pass" } else { "fail" }
        ),
    );
    push(&mut out, &format!("elapsed: {elapsed_ms} ms"));
    out
}

fn render_check_text(out: &mut String, check: &CheckOutcome) {
    let status = if check.pass() { "pass" } else { "fail" };
    out.push_str(&format!("check {}: {status}\n", check.label()));
    let indent = "  ";
    let mut line = |s: String| {
        out.push_str(indent);
        out.push_str(&s);
        out.push('\n');
    };
    match check {
        CheckOutcome::Classify { case, reason, .. } => {
            if let Some(case) = case {
                line(format!("case: {case}"));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Delta {
            delta,
            freedom,
            divided_by,
            reason,
            ..
        } => {
            if let Some(delta) = delta {
                line(format!("delta = {delta}"));
            }
            if let Some(freedom) = freedom {
                line(format!("freedom: {freedom}"));
            }
            if !divided_by.is_empty() {
                line(format!("divided by: {}", divided_by.join(", ")));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::HomLie {
            alpha,
            residuals,
            reason,
            ..
        } => {
            if let Some(alpha) = alpha {
                for row in alpha {
                    line(format!("alpha row: [{}]", row.join(", ")));
                }
            }
            for residual in residuals {
                line(format!("residual: {residual}"));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Jacobi {
            triples,
            failures,
            reason,
            ..
        } => {
            line(format!("triples checked: {triples}"));
            for failure in failures {
                line(format!("failed at: {failure}"));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Qhl {
            beta,
            jacobi_ok,
            compatible,
            reason,
            ..
        } => {
            if let Some(beta) = beta {
                line(format!("beta = {beta}"));
            }
            line(format!("twisted jacobi: {jacobi_ok}"));
            line(format!("alpha compatible: {compatible}"));
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Relations {
            relations, reason, ..
        } => {
            for info in relations {
                line(format!("{}: {} = {}", info.pair, info.lhs, info.rhs));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Table { rows, reason, .. } => {
            for row in rows {
                let (x, y) = row.bracket.split_at(1);
                line(format!(
                    "<{x},{y}> = ({})e + ({})h + ({})f",
                    row.e, row.h, row.f
                ));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::WellDefined {
            sigma_ok,
            dsigma_ok,
            constraints,
            reason,
            ..
        } => {
            line(format!("sigma respects ideal: {sigma_ok}"));
            line(format!("dsigma respects ideal: {dsigma_ok}"));
            for c in constraints {
                line(format!("obstruction: {c}"));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Quadratic {
            system,
            rules,
            confluent,
            overlaps,
            normal_word_counts,
            casimir_normal,
            reason,
            ..
        } => {
            line(format!("system: {system}"));
            for rule in rules {
                line(format!("rule: {rule}"));
            }
            line(format!("confluent: {confluent} ({overlaps} overlaps)"));
            let counts: Vec<String> = normal_word_counts
                .iter()
                .map(u64::to_string)
                .collect();
            line(format!("normal words by degree: {}", counts.join(", ")));
            if let Some(normal) = casimir_normal {
                line(format!("casimir normal: {normal}"));
            }
            if let Some(reason) = reason {
                line(format!("reason: {reason}"));
            }
        }
        CheckOutcome::Color {
            relations, grading, ..
        } => {
            for relation in relations {
                line(format!("relation: {relation} = 0"));
            }
            for entry in grading {
                line(format!(
                    "degree {} = ({}, {})",
                    entry.letter, entry.degree[0], entry.degree[1]
                ));
            }
        }
    }
}
