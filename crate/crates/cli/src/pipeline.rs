//! Runs the requested checks against a resolved twist and collects
//! outcomes. Expensive intermediates (structure table, delta solution)
//! are computed once and shared; a check whose prerequisite failed
//! reports a failure with the prerequisite's reason.

use std::sync::Arc;

use anyhow::{anyhow, Result};

use qhl_core::{
    check_hom_lie, check_qhl, check_twisted_jacobi, classify_case, induced_alpha,
    relation_lift, solve_delta, structure_table, AbstractAlgebra, BaseElement, CoreError,
    DeltaFreedom, DeltaSolution, GateMode, OperatorMatrix, RingKind, SpanElement,
    StructureTable, TwistData,
};

use crate::config::ResolvedTwist;
use crate::report::{CheckOutcome, RelationInfo, RingInfo, TableRow};

pub struct Pipeline {
    twist: Arc<TwistData>,
    gate: GateMode,
    jacobi_bound: usize,
    table: Option<std::result::Result<StructureTable, String>>,
    delta: Option<std::result::Result<DeltaSolution, String>>,
}

impl Pipeline {
    pub fn new(resolved: &ResolvedTwist, jacobi_bound: usize) -> Result<Self> {
        let decl = resolved.twist.ring().decl().clone();
        let gate = GateMode::gated_from_exprs(&decl, &resolved.assume_nonzero)
            .map_err(|e| anyhow!("assume_nonzero: {e}"))?;
        Ok(Pipeline {
            twist: resolved.twist.clone(),
            gate,
            jacobi_bound,
            table: None,
            delta: None,
        })
    }

    pub fn ring_info(&self) -> RingInfo {
        let ring = self.twist.ring();
        RingInfo {
            kind: match ring.kind() {
                RingKind::Polynomial => "polynomial".to_string(),
                RingKind::Truncated(_) => "truncated".to_string(),
            },
            order: ring.truncation(),
            sigma_t: self.twist.sigma_t().to_string(),
            dsigma_t: self.twist.dsigma_t().to_string(),
        }
    }

    /// The checks `deform` runs by default: everything applicable to the
    /// ring kind, in canonical order.
    pub fn applicable_checks(&self) -> Vec<&'static str> {
        let mut names = vec![
            "delta",
            "homlie",
            "jacobi",
            "qhl",
            "relations",
            "table",
            "well_defined",
        ];
        if self.twist.ring().kind() == RingKind::Polynomial {
            names.push("classify");
        }
        names.sort_unstable();
        names
    }

    pub fn run(&mut self, names: &[&'static str]) -> Vec<CheckOutcome> {
        names.iter().map(|name| self.run_one(name)).collect()
    }

    fn run_one(&mut self, name: &str) -> CheckOutcome {
        match name {
            "classify" => self.check_classify(),
            "delta" => self.check_delta(),
            "homlie" => self.check_homlie(),
            "jacobi" => self.check_jacobi(),
            "qhl" => self.check_qhl(),
            "relations" => self.check_relations(),
            "table" => self.check_table(),
            "well_defined" => self.check_well_defined(),
            other => unreachable!("unvalidated check `{other}`"),
        }
    }

    fn table(&mut self) -> std::result::Result<StructureTable, String> {
        if self.table.is_none() {
            self.table = Some(
                structure_table(&self.twist).map_err(|e| e.to_string()),
            );
        }
        self.table.as_ref().unwrap().clone()
    }

    fn delta(&mut self) -> std::result::Result<DeltaSolution, String> {
        if self.delta.is_none() {
            let solved = solve_delta(&self.twist, &self.gate, self.jacobi_bound.max(2))
                .map_err(|e| match e {
                    CoreError::AssumptionRequired(expr) => format!(
                        "division by `{expr}` is not covered; pass --assume {expr} \
                         or add it to assume_nonzero"
                    ),
                    other => other.to_string(),
                });
            self.delta = Some(solved);
        }
        self.delta.as_ref().unwrap().clone()
    }

    fn check_classify(&mut self) -> CheckOutcome {
        match classify_case(&self.twist) {
            Ok(tag) => CheckOutcome::Classify {
                pass: true,
                case: Some(tag.to_string()),
                reason: None,
            },
            Err(e) => CheckOutcome::Classify {
                pass: false,
                case: None,
                reason: Some(e.to_string()),
            },
        }
    }

    fn check_well_defined(&mut self) -> CheckOutcome {
        let report = self.twist.check_well_defined();
        CheckOutcome::WellDefined {
            pass: report.ok(),
            sigma_ok: report.sigma_ok,
            dsigma_ok: report.dsigma_ok,
            constraints: report.constraints.iter().map(|c| c.to_string()).collect(),
            reason: if report.ok() {
                None
            } else {
                Some("the twist does not descend to the quotient ring".to_string())
            },
        }
    }

    fn check_table(&mut self) -> CheckOutcome {
        match self.table() {
            Ok(table) => CheckOutcome::Table {
                pass: true,
                rows: table_rows(&table),
                reason: None,
            },
            Err(reason) => CheckOutcome::Table {
                pass: false,
                rows: Vec::new(),
                reason: Some(reason),
            },
        }
    }

    fn check_delta(&mut self) -> CheckOutcome {
        match self.delta() {
            Ok(solution) => {
                let freedom = match &solution.freedom {
                    DeltaFreedom::WholeSpace => "whole space".to_string(),
                    DeltaFreedom::Span(basis) if basis.is_empty() => "unique".to_string(),
                    DeltaFreedom::Span(basis) => {
                        let rendered: Vec<String> =
                            basis.iter().map(BaseElement::to_string).collect();
                        format!("particular + span({})", rendered.join(", "))
                    }
                };
                CheckOutcome::Delta {
                    pass: true,
                    delta: Some(solution.particular.to_string()),
                    freedom: Some(freedom),
                    divided_by: solution.assumed_nonzero.clone(),
                    reason: None,
                }
            }
            Err(reason) => CheckOutcome::Delta {
                pass: false,
                delta: None,
                freedom: None,
                divided_by: Vec::new(),
                reason: Some(reason),
            },
        }
    }

    fn check_jacobi(&mut self) -> CheckOutcome {
        let delta = match self.delta() {
            Ok(solution) => solution.particular,
            Err(reason) => {
                return CheckOutcome::Jacobi {
                    pass: false,
                    triples: 0,
                    failures: Vec::new(),
                    reason: Some(format!("delta unavailable: {reason}")),
                }
            }
        };
        let max_exp = match self.twist.ring().truncation() {
            Some(order) => order - 1,
            None => self.jacobi_bound,
        };
        let t = BaseElement::variable(self.twist.ring());
        let span: Vec<SpanElement> = (0..=max_exp)
            .map(|k| SpanElement::new(&self.twist, t.pow(k as u32)).expect("same ring"))
            .collect();
        let mut failures = Vec::new();
        let mut triples = 0usize;
        for (i, x) in span.iter().enumerate() {
            for (j, y) in span.iter().enumerate() {
                for (k, z) in span.iter().enumerate() {
                    triples += 1;
                    match check_twisted_jacobi(x, y, z, &delta, self.jacobi_bound) {
                        Ok(report) if report.holds_exactly => {}
                        Ok(_) => failures.push(format!("(t^{i}, t^{j}, t^{k})")),
                        Err(e) => {
                            return CheckOutcome::Jacobi {
                                pass: false,
                                triples,
                                failures,
                                reason: Some(e.to_string()),
                            }
                        }
                    }
                }
            }
        }
        CheckOutcome::Jacobi {
            pass: failures.is_empty(),
            triples,
            failures,
            reason: None,
        }
    }

    fn algebra(&mut self) -> std::result::Result<(AbstractAlgebra, qhl_core::Scalar), String> {
        let table = self.table()?;
        let delta = self.delta()?;
        let delta0 = delta.particular.coeff(0);
        let alg = AbstractAlgebra::from_structure_table(&table).map_err(|e| e.to_string())?;
        Ok((alg, delta0))
    }

    fn check_homlie(&mut self) -> CheckOutcome {
        let fail = |reason: String| CheckOutcome::HomLie {
            pass: false,
            alpha: None,
            residuals: Vec::new(),
            reason: Some(reason),
        };
        let (alg, delta0) = match self.algebra() {
            Ok(pair) => pair,
            Err(reason) => return fail(reason),
        };
        let Some(sigma) = alg.alpha().cloned() else {
            return fail("sigma does not act on the generator span".to_string());
        };
        let alpha = match induced_alpha(&sigma, &delta0) {
            Ok(alpha) => alpha,
            Err(e) => return fail(e.to_string()),
        };
        let alg = match alg.with_alpha(alpha.clone()) {
            Ok(alg) => alg,
            Err(e) => return fail(e.to_string()),
        };
        match check_hom_lie(&alg) {
            Ok(report) => CheckOutcome::HomLie {
                pass: report.holds,
                alpha: Some(matrix_rows(&alpha)),
                residuals: report
                    .residuals
                    .iter()
                    .map(|(label, res)| {
                        let rendered: Vec<String> =
                            res.iter().map(|s| s.to_string()).collect();
                        format!("{label}: [{}]", rendered.join(", "))
                    })
                    .collect(),
                reason: None,
            },
            Err(e) => fail(e.to_string()),
        }
    }

    fn check_qhl(&mut self) -> CheckOutcome {
        let fail = |reason: String| CheckOutcome::Qhl {
            pass: false,
            beta: None,
            jacobi_ok: false,
            compatible: false,
            reason: Some(reason),
        };
        let (alg, delta0) = match self.algebra() {
            Ok(pair) => pair,
            Err(reason) => return fail(reason),
        };
        if alg.alpha().is_none() {
            return fail("sigma does not act on the generator span".to_string());
        }
        let alg = alg.with_beta(delta0.clone());
        match check_qhl(&alg) {
            Ok(report) => CheckOutcome::Qhl {
                pass: report.ok(),
                beta: Some(delta0.to_string()),
                jacobi_ok: report.twisted_jacobi_ok,
                compatible: report.alpha_compatible,
                reason: None,
            },
            Err(e) => fail(e.to_string()),
        }
    }

    fn check_relations(&mut self) -> CheckOutcome {
        let mut relations = Vec::new();
        for (x, y) in [("h", "f"), ("h", "e"), ("e", "f")] {
            match relation_lift(&self.twist, x, y) {
                Ok((lhs, rhs)) => relations.push(RelationInfo {
                    pair: format!("{x}{y}"),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }),
                Err(e) => {
                    return CheckOutcome::Relations {
                        pass: false,
                        relations,
                        reason: Some(e.to_string()),
                    }
                }
            }
        }
        CheckOutcome::Relations {
            pass: true,
            relations,
            reason: None,
        }
    }
}

pub fn table_rows(table: &StructureTable) -> Vec<TableRow> {
    table
        .rows()
        .map(|(name, row)| TableRow {
            bracket: name.to_string(),
            e: row[0].to_string(),
            h: row[1].to_string(),
            f: row[2].to_string(),
        })
        .collect()
}

fn matrix_rows(matrix: &OperatorMatrix) -> Vec<Vec<String>> {
    (0..matrix.size())
        .map(|i| {
            (0..matrix.size())
                .map(|j| matrix.entry(i, j).to_string())
                .collect()
        })
        .collect()
}
