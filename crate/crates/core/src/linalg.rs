//! Exact linear algebra over the scalar field, with optional gating of
//! pivot divisions.
//!
//! Solving a linear system over rational functions divides by pivot
//! entries. In generic mode any nonzero entry may pivot. In gated mode a
//! pivot must be *covered*: a nonzero rational constant, or a rational
//! multiple of a product of powers of the caller's assumed-nonzero
//! expressions. An uncovered pivot aborts the solve with
//! [`CoreError::AssumptionRequired`] naming the offending expression, and
//! every covered non-constant pivot is reported back so results can state
//! exactly which divisions they rest on.
//!
//! Coverage is decided without polynomial gcds: candidate exponent vectors
//! are enumerated within degree bounds and each candidate product is
//! compared term by term.

use crate::decl::{same_decl, Decl};
use crate::error::{CoreError, Result};
use crate::parse::parse_scalar;
use crate::scalar::{ParamPoly, Scalar};

/// How pivot divisions are authorized during elimination.
#[derive(Debug, Clone)]
pub enum GateMode {
    /// Divide by any nonzero scalar; record nothing.
    Generic,
    /// Divide only by covered scalars; the payload lists the numerators of
    /// the expressions the caller asserts to be nonzero.
    Gated(Vec<ParamPoly>),
}

impl GateMode {
    /// Build a gated mode from assumption expressions such as `"q - 1"` or
    /// `"p0"`. Constant expressions are rejected: they assume nothing.
    pub fn gated_from_exprs<S: AsRef<str>>(decl: &Decl, exprs: &[S]) -> Result<GateMode> {
        let mut polys = Vec::new();
        for e in exprs {
            let s = parse_scalar(decl, e.as_ref())?;
            if s.is_zero() {
                return Err(CoreError::Inconsistent(format!(
                    "assumption `{}` is identically zero",
                    e.as_ref()
                )));
            }
            let num = s.num().clone();
            if num.as_rational().is_some() {
                continue;
            }
            if !polys.contains(&num) {
                polys.push(num);
            }
        }
        Ok(GateMode::Gated(polys))
    }
}

/// Check whether `num` equals a nonzero rational times a product of powers
/// of the assumption polynomials, by bounded exponent enumeration.
pub(crate) fn covered_by(num: &ParamPoly, assumptions: &[ParamPoly]) -> bool {
    if num.is_zero() {
        return false;
    }
    if num.as_rational().is_some() {
        return true;
    }
    let useful: Vec<&ParamPoly> = assumptions
        .iter()
        .filter(|a| a.as_rational().is_none() && !a.is_zero())
        .collect();
    if useful.is_empty() {
        return false;
    }
    let target_deg = num.total_degree();
    // With an algebraic root symbol in play, degrees of products can drop
    // under reduction, so allow some slack in the degree budget.
    let slack = num
        .decl()
        .root()
        .map(|r| r.degree())
        .unwrap_or(0);
    let budget = target_deg + slack;
    let mut tries = 0usize;
    search_cover(num, &useful, 0, &ParamPoly::one(num.decl()), budget, &mut tries)
}

fn search_cover(
    num: &ParamPoly,
    assumptions: &[&ParamPoly],
    idx: usize,
    acc: &ParamPoly,
    budget: usize,
    tries: &mut usize,
) -> bool {
    const MAX_TRIES: usize = 50_000;
    if *tries > MAX_TRIES {
        return false;
    }
    *tries += 1;
    if idx == assumptions.len() {
        return !acc.as_rational().is_some() && num.rational_multiple_of(acc).is_some();
    }
    let deg = assumptions[idx].total_degree().max(1);
    let mut power = acc.clone();
    let mut used = 0usize;
    loop {
        if search_cover(num, assumptions, idx + 1, &power, budget - used, tries) {
            return true;
        }
        used += deg;
        if used > budget {
            return false;
        }
        power = &power * assumptions[idx];
    }
}

/// Outcome of a successful elimination. `Inconsistent` is a value, not an
/// error: for several checks an unsolvable system is a meaningful answer.
#[derive(Debug, Clone)]
pub enum LinearOutcome {
    Solved {
        /// One solution, with every free coordinate set to zero.
        particular: Vec<Scalar>,
        /// Basis of the homogeneous solution space.
        nullspace: Vec<Vec<Scalar>>,
        /// Display strings of the non-constant pivots divided by (gated
        /// mode only), sorted and deduplicated.
        assumed_nonzero: Vec<String>,
    },
    Inconsistent {
        /// Right hand side left over on a zero row.
        residual: Scalar,
    },
}

/// A dense linear system `A x = b` over the scalar field.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    decl: Decl,
    ncols: usize,
    rows: Vec<(Vec<Scalar>, Scalar)>,
}

impl LinearSystem {
    pub fn new(decl: &Decl, ncols: usize) -> Self {
        LinearSystem {
            decl: decl.clone(),
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, coeffs: Vec<Scalar>, rhs: Scalar) {
        assert_eq!(coeffs.len(), self.ncols, "row length mismatch");
        for c in coeffs.iter().chain(std::iter::once(&rhs)) {
            assert!(
                same_decl(c.decl(), &self.decl),
                "mismatched parameter declarations"
            );
        }
        self.rows.push((coeffs, rhs));
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduce to row echelon form and read off the solution set.
    pub fn solve(&self, mode: &GateMode) -> Result<LinearOutcome> {
        let mut rows = self.rows.clone();
        let nrows = rows.len();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut assumed: Vec<String> = Vec::new();
        let mut r = 0usize;
        for col in 0..self.ncols {
            if r == nrows {
                break;
            }
            let Some(chosen) = self.choose_pivot(&rows[r..], col, mode)? else {
                continue;
            };
            rows.swap(r, r + chosen.row);
            if let Some(expr) = chosen.assumption {
                if !assumed.contains(&expr) {
                    assumed.push(expr);
                }
            }
            let inv = rows[r].0[col].recip().expect("pivot is nonzero");
            scale_row(&mut rows[r], &inv);
            for i in 0..nrows {
                if i == r {
                    continue;
                }
                let factor = rows[i].0[col].clone();
                if factor.is_zero() {
                    continue;
                }
                let (pivot_row, target) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                subtract_multiple(target, pivot_row, &factor);
            }
            pivot_cols.push(col);
            r += 1;
        }
        for (coeffs, rhs) in rows.iter().skip(r) {
            debug_assert!(coeffs.iter().all(|c| c.is_zero()));
            if !rhs.is_zero() {
                return Ok(LinearOutcome::Inconsistent {
                    residual: rhs.clone(),
                });
            }
        }
        let zero = Scalar::zero(&self.decl);
        let mut particular = vec![zero.clone(); self.ncols];
        for (i, &col) in pivot_cols.iter().enumerate() {
            particular[col] = rows[i].1.clone();
        }
        let mut nullspace = Vec::new();
        for free in 0..self.ncols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![zero.clone(); self.ncols];
            v[free] = Scalar::one(&self.decl);
            for (i, &col) in pivot_cols.iter().enumerate() {
                v[col] = -&rows[i].0[free];
            }
            nullspace.push(v);
        }
        assumed.sort();
        Ok(LinearOutcome::Solved {
            particular,
            nullspace,
            assumed_nonzero: assumed,
        })
    }

    fn choose_pivot(
        &self,
        candidates: &[(Vec<Scalar>, Scalar)],
        col: usize,
        mode: &GateMode,
    ) -> Result<Option<ChosenPivot>> {
        let mut first_nonzero: Option<(usize, &Scalar)> = None;
        let mut first_covered: Option<(usize, &Scalar)> = None;
        for (i, (coeffs, _)) in candidates.iter().enumerate() {
            let entry = &coeffs[col];
            if entry.is_zero() {
                continue;
            }
            if first_nonzero.is_none() {
                first_nonzero = Some((i, entry));
            }
            if entry.num().as_rational().is_some() {
                // A rational pivot costs nothing; take it immediately.
                return Ok(Some(ChosenPivot {
                    row: i,
                    assumption: None,
                }));
            }
            if first_covered.is_none() {
                if let GateMode::Gated(assumptions) = mode {
                    if covered_by(entry.num(), assumptions) {
                        first_covered = Some((i, entry));
                    }
                }
            }
        }
        match mode {
            GateMode::Generic => Ok(first_nonzero.map(|(row, _)| ChosenPivot {
                row,
                assumption: None,
            })),
            GateMode::Gated(_) => match (first_covered, first_nonzero) {
                (Some((row, entry)), _) => Ok(Some(ChosenPivot {
                    row,
                    assumption: Some(entry.num().to_string()),
                })),
                (None, Some((_, entry))) => {
                    Err(CoreError::AssumptionRequired(entry.num().to_string()))
                }
                (None, None) => Ok(None),
            },
        }
    }
}

struct ChosenPivot {
    row: usize,
    /// Display of the pivot numerator when the division rests on caller
    /// assumptions rather than a rational constant.
    assumption: Option<String>,
}

fn scale_row(row: &mut (Vec<Scalar>, Scalar), factor: &Scalar) {
    for c in row.0.iter_mut() {
        *c = &*c * factor;
    }
    row.1 = &row.1 * factor;
}

fn subtract_multiple(target: &mut (Vec<Scalar>, Scalar), source: &(Vec<Scalar>, Scalar), factor: &Scalar) {
    for (t, s) in target.0.iter_mut().zip(&source.0) {
        *t = &*t - &(s * factor);
    }
    target.1 = &target.1 - &(&source.1 * factor);
}
