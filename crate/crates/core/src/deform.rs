//! Closure of the twisted bracket on the span of {e, h, f}, structure
//! tables, parameter-case classification, lifts of the operator relations
//! to quadratic relations in a free algebra, and a catalogue of named
//! example configurations.
//!
//! The span basis is fixed as e = ∂σ, h = −2t·∂σ, f = −t²·∂σ, so a bracket
//! coefficient c₀ + c₁t + c₂t² decomposes as λ_e = c₀, λ_h = −c₁/2,
//! λ_f = −c₂. Coefficients of degree above two mean the bracket left the
//! span and the configuration is reported as not closed.

use std::fmt;
use std::sync::Arc;

use crate::base::{parse_element, BaseElement, RingData, RingKind};
use crate::bracket::{bracket_coefficient, OperatorMatrix};
use crate::decl::{big_rational, FieldDecl};
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use crate::sigma::TwistData;
use crate::word::{Alphabet, AlphabetData, WordPoly};

/// Names of the span generators in table order.
pub const SPAN_GENERATORS: [&str; 3] = ["e", "h", "f"];

/// Alphabet used for lifted quadratic relations. The declared order makes
/// h the largest letter, so the lifted leading words are he, hf, fe.
pub fn span_alphabet() -> Alphabet {
    AlphabetData::new(vec!["e", "f", "h"]).expect("fixed alphabet is valid")
}

/// Which of the three closing parameter families a polynomial-ring twist
/// belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// deg σ(t) = 1 and ∂σ(t) constant.
    Case1,
    /// σ(t) a nonzero constant and deg ∂σ(t) ≤ 1.
    Case2,
    /// σ(t) = 0 and deg ∂σ(t) ≤ 1.
    Case3,
    /// Degree constraints fail; the bracket leaves the span.
    NotClosed,
}

impl CaseTag {
    pub fn slug(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::NotClosed => "not_closed",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case1 => write!(f, "case 1 (deg sigma(t) = 1)"),
            CaseTag::Case2 => write!(f, "case 2 (sigma(t) constant, nonzero)"),
            CaseTag::Case3 => write!(f, "case 3 (sigma(t) = 0)"),
            CaseTag::NotClosed => write!(f, "not closed"),
        }
    }
}

/// Classify a twist on K[t] by the degrees of σ(t) and ∂σ(t).
pub fn classify_case(twist: &TwistData) -> Result<CaseTag> {
    if twist.ring().kind() != RingKind::Polynomial {
        return Err(CoreError::RingKind(
            "case classification is defined over the polynomial ring only".to_string(),
        ));
    }
    let q_deg = twist.sigma_t().degree();
    let p_deg = twist.dsigma_t().degree();
    let tag = match q_deg {
        None => {
            if p_deg.unwrap_or(0) <= 1 {
                CaseTag::Case3
            } else {
                CaseTag::NotClosed
            }
        }
        Some(0) => {
            if p_deg.unwrap_or(0) <= 1 {
                CaseTag::Case2
            } else {
                CaseTag::NotClosed
            }
        }
        Some(1) => {
            if p_deg.unwrap_or(0) == 0 {
                CaseTag::Case1
            } else {
                CaseTag::NotClosed
            }
        }
        Some(_) => CaseTag::NotClosed,
    };
    Ok(tag)
}

/// Express a bracket coefficient in the span basis: c₀ + c₁t + c₂t² maps
/// to (λ_e, λ_h, λ_f) = (c₀, −c₁/2, −c₂). `bracket` names the offending
/// bracket in the error when the coefficient has degree above two.
pub fn span_decompose(coeff: &BaseElement, bracket: &str) -> Result<[Scalar; 3]> {
    if coeff.coeffs().iter().skip(3).any(|c| !c.is_zero()) {
        return Err(CoreError::NotClosed {
            bracket: bracket.to_string(),
            coefficient: coeff.to_string(),
        });
    }
    let decl = coeff.ring().decl();
    let minus_half = Scalar::from_rational(decl, big_rational(-1, 2));
    let lambda_e = coeff.coeff(0);
    let lambda_h = coeff.coeff(1).try_mul(&minus_half)?;
    let lambda_f = -&coeff.coeff(2);
    Ok([lambda_e, lambda_h, lambda_f])
}

fn generator_coefficients(ring: &crate::base::BaseRing) -> [BaseElement; 3] {
    let t = BaseElement::variable(ring);
    let e = BaseElement::one(ring);
    let h = t.scale(&Scalar::from_int(ring.decl(), -2));
    let f = t.mul(&t).neg();
    [e, h, f]
}

fn generator_index(name: &str) -> Result<usize> {
    SPAN_GENERATORS
        .iter()
        .position(|g| *g == name)
        .ok_or_else(|| CoreError::UndeclaredSymbol(name.to_string()))
}

/// The induced map of σ on the span, as a 3×3 matrix in the basis
/// (e, h, f) with column j holding the image of generator j.
pub fn sigma_span_matrix(twist: &TwistData) -> Result<OperatorMatrix> {
    let gens = generator_coefficients(twist.ring());
    let mut columns = Vec::with_capacity(3);
    for (name, gen) in SPAN_GENERATORS.iter().zip(&gens) {
        let image = twist.apply_sigma(gen);
        columns.push(span_decompose(&image, &format!("sigma({name})"))?);
    }
    let decl = twist.ring().decl();
    let rows: Vec<Vec<Scalar>> = (0..3)
        .map(|i| (0..3).map(|j| columns[j][i].clone()).collect())
        .collect();
    OperatorMatrix::from_rows(decl, rows)
}

/// The three independent brackets of the span generators, decomposed in
/// the span basis, together with the induced σ-matrix when σ preserves
/// the span.
#[derive(Debug, Clone)]
pub struct StructureTable {
    twist: Arc<TwistData>,
    rows: [[Scalar; 3]; 3],
    sigma: Option<OperatorMatrix>,
}

pub const TABLE_BRACKETS: [(&str, usize, usize); 3] =
    [("hf", 1, 2), ("he", 1, 0), ("ef", 0, 2)];

pub fn structure_table(twist: &Arc<TwistData>) -> Result<StructureTable> {
    let gens = generator_coefficients(twist.ring());
    let mut rows: Vec<[Scalar; 3]> = Vec::with_capacity(3);
    for (name, i, j) in TABLE_BRACKETS {
        let coeff = bracket_coefficient(twist, &gens[i], &gens[j]);
        rows.push(span_decompose(&coeff, name)?);
    }
    let sigma = sigma_span_matrix(twist).ok();
    Ok(StructureTable {
        twist: twist.clone(),
        rows: [rows[0].clone(), rows[1].clone(), rows[2].clone()],
        sigma,
    })
}

impl StructureTable {
    pub fn twist(&self) -> &Arc<TwistData> {
        &self.twist
    }

    /// Row for "hf", "he", or "ef" as (λ_e, λ_h, λ_f).
    pub fn row(&self, name: &str) -> Option<&[Scalar; 3]> {
        TABLE_BRACKETS
            .iter()
            .position(|(n, _, _)| *n == name)
            .map(|i| &self.rows[i])
    }

    pub fn rows(&self) -> impl Iterator<Item = (&'static str, &[Scalar; 3])> {
        TABLE_BRACKETS
            .iter()
            .zip(&self.rows)
            .map(|((name, _, _), row)| (*name, row))
    }

    pub fn sigma_matrix(&self) -> Option<&OperatorMatrix> {
        self.sigma.as_ref()
    }

    /// Bracket of two named generators, using skew-symmetry for reversed
    /// pairs and zero on the diagonal.
    pub fn bracket_of(&self, x: &str, y: &str) -> Result<[Scalar; 3]> {
        let (xi, yi) = (generator_index(x)?, generator_index(y)?);
        let decl = self.twist.ring().decl();
        if xi == yi {
            let zero = Scalar::zero(decl);
            return Ok([zero.clone(), zero.clone(), zero]);
        }
        for ((_, i, j), row) in TABLE_BRACKETS.iter().zip(&self.rows) {
            if (*i, *j) == (xi, yi) {
                return Ok(row.clone());
            }
            if (*i, *j) == (yi, xi) {
                return Ok([-&row[0], -&row[1], -&row[2]]);
            }
        }
        unreachable!("all generator pairs are covered by the table");
    }

    /// Render a row as a combination of e, h, f.
    pub fn combination(row: &[Scalar; 3]) -> String {
        let mut out = String::new();
        for (coeff, gen) in row.iter().zip(SPAN_GENERATORS) {
            if coeff.is_zero() {
                continue;
            }
            let (negative, body) = crate::base::render_coeff_factor(coeff, Some(gen));
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for StructureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, row)) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let (x, y) = name.split_at(1);
            write!(f, "<{x},{y}> = {}", StructureTable::combination(row))?;
        }
        Ok(())
    }
}

/// Lift the operator relation for a pair of generators to the free
/// algebra: the left side expands σ(x)∘y − σ(y)∘x with σ-images rewritten
/// in the generators, the right side is the bracket from the structure
/// table. The defining quadratic relation is lhs = rhs.
pub fn relation_lift(
    twist: &Arc<TwistData>,
    x: &str,
    y: &str,
) -> Result<(WordPoly, WordPoly)> {
    let (xi, yi) = (generator_index(x)?, generator_index(y)?);
    let gens = generator_coefficients(twist.ring());
    let decl = twist.ring().decl();
    let alphabet = span_alphabet();

    let letter =
        |name: &str| -> Result<WordPoly> { WordPoly::letter(&alphabet, decl, name) };
    let span_word = |coeffs: &[Scalar; 3]| -> Result<WordPoly> {
        let mut acc = WordPoly::zero(&alphabet, decl);
        for (c, gen) in coeffs.iter().zip(SPAN_GENERATORS) {
            acc = acc.add(&letter(gen)?.scale(c));
        }
        Ok(acc)
    };

    let sigma_x = span_decompose(&twist.apply_sigma(&gens[xi]), &format!("sigma({x})"))?;
    let sigma_y = span_decompose(&twist.apply_sigma(&gens[yi]), &format!("sigma({y})"))?;
    let lhs = span_word(&sigma_x)?
        .mul(&letter(y)?)
        .sub(&span_word(&sigma_y)?.mul(&letter(x)?));

    let bracket = bracket_coefficient(twist, &gens[xi], &gens[yi]);
    let rhs = span_word(&span_decompose(&bracket, &format!("{x}{y}"))?)?;
    Ok((lhs, rhs))
}

/// A built-in example configuration: either an operator twist or a bare
/// quadratic presentation with a sign grading.
#[derive(Debug, Clone)]
pub enum NamedInstance {
    Operator {
        name: &'static str,
        description: &'static str,
        twist: Arc<TwistData>,
        assume_nonzero: Vec<String>,
    },
    Presentation {
        name: &'static str,
        description: &'static str,
        alphabet: Alphabet,
        relations: Vec<WordPoly>,
        grading: Vec<(String, [u8; 2])>,
    },
}

impl NamedInstance {
    pub fn name(&self) -> &'static str {
        match self {
            NamedInstance::Operator { name, .. } => name,
            NamedInstance::Presentation { name, .. } => name,
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            NamedInstance::Operator { description, .. } => description,
            NamedInstance::Presentation { description, .. } => description,
        }
    }
}

const NAMED: [(&str, &str); 7] = [
    ("classical", "undeformed action on K[t]: sigma = id, dsigma(t) = 1"),
    (
        "jackson",
        "q-derivative twist on K[t]: sigma(t) = q*t, dsigma(t) = p0",
    ),
    (
        "jordanian",
        "order-3 truncated twist with dsigma = 0; lifts to h*f - f*h = eps*f^2",
    ),
    (
        "solvable",
        "order-3 truncated family with h*e - e*h = -h - a*f, e*f - f*e = 2*f",
    ),
    (
        "heisenberg",
        "order-3 truncated twist lifting to h*e - e*h = f, other brackets zero",
    ),
    (
        "polynomial3",
        "generic order-3 truncated twist without constant derivative term",
    ),
    (
        "color",
        "sign-commutation presentation of the q = -1 specialization, graded by Z2 x Z2",
    ),
];

pub fn list_named() -> Vec<(&'static str, &'static str)> {
    NAMED.to_vec()
}

fn operator_instance(
    idx: usize,
    params: Vec<&str>,
    order: Option<usize>,
    sigma_t: &str,
    dsigma_t: &str,
    assume: &[&str],
) -> Result<NamedInstance> {
    let decl = FieldDecl::params(params);
    let ring = match order {
        None => RingData::polynomial(&decl),
        Some(n) => RingData::truncated(&decl, n)?,
    };
    let twist = TwistData::new(
        &ring,
        parse_element(&ring, sigma_t)?,
        parse_element(&ring, dsigma_t)?,
    )?;
    Ok(NamedInstance::Operator {
        name: NAMED[idx].0,
        description: NAMED[idx].1,
        twist: Arc::new(twist),
        assume_nonzero: assume.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn instantiate_named(name: &str) -> Result<NamedInstance> {
    match name {
        "classical" => operator_instance(0, vec![], None, "t", "1", &[]),
        "jackson" => {
            operator_instance(1, vec!["q", "p0"], None, "q*t", "p0", &["q", "p0"])
        }
        "jordanian" => {
            operator_instance(2, vec!["eps"], Some(3), "t - eps/2*t^2", "0", &[])
        }
        "solvable" => {
            operator_instance(3, vec!["a"], Some(3), "t", "t + a/2*t^2", &[])
        }
        "heisenberg" => operator_instance(4, vec![], Some(3), "t", "-1/2*t^2", &[]),
        "polynomial3" => operator_instance(
            5,
            vec!["q1", "q2", "p1", "p2"],
            Some(3),
            "q1*t + q2*t^2",
            "p1*t + p2*t^2",
            &["q1", "p1"],
        ),
        "color" => {
            let decl = FieldDecl::params(Vec::<&str>::new());
            let alphabet = AlphabetData::new(vec!["x", "y", "z"])?;
            let relations = ["y*z + z*y", "z*x - x*z", "x*y + y*x"]
                .iter()
                .map(|src| WordPoly::parse(&alphabet, &decl, src))
                .collect::<Result<Vec<_>>>()?;
            Ok(NamedInstance::Presentation {
                name: NAMED[6].0,
                description: NAMED[6].1,
                alphabet,
                relations,
                grading: vec![
                    ("x".to_string(), [1, 1]),
                    ("y".to_string(), [1, 0]),
                    ("z".to_string(), [1, 1]),
                ],
            })
        }
        other => Err(CoreError::UnknownSpecialization(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::RingData;
    use crate::decl::FieldDecl;
    use crate::parse::parse_scalar;

    fn poly_twist(params: Vec<&str>, sigma: &str, dsigma: &str) -> Arc<TwistData> {
        let decl = FieldDecl::params(params);
        let ring = RingData::polynomial(&decl);
        Arc::new(
            TwistData::new(
                &ring,
                parse_element(&ring, sigma).unwrap(),
                parse_element(&ring, dsigma).unwrap(),
            )
            .unwrap(),
        )
    }

    fn truncated_twist(
        params: Vec<&str>,
        order: usize,
        sigma: &str,
        dsigma: &str,
    ) -> Arc<TwistData> {
        let decl = FieldDecl::params(params);
        let ring = RingData::truncated(&decl, order).unwrap();
        Arc::new(
            TwistData::new(
                &ring,
                parse_element(&ring, sigma).unwrap(),
                parse_element(&ring, dsigma).unwrap(),
            )
            .unwrap(),
        )
    }

    fn assert_row(table: &StructureTable, name: &str, expect: [&str; 3]) {
        let decl = table.twist().ring().decl();
        let row = table.row(name).unwrap();
        for (got, want) in row.iter().zip(expect) {
            assert_eq!(
                got,
                &parse_scalar(decl, want).unwrap(),
                "{name} component mismatch: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn classification_covers_the_three_families() {
        assert_eq!(
            classify_case(&poly_twist(vec!["q", "p0"], "q*t", "p0")).unwrap(),
            CaseTag::Case1
        );
        assert_eq!(
            classify_case(&poly_twist(vec!["q0", "q1", "p0"], "q0 + q1*t", "p0"))
                .unwrap(),
            CaseTag::Case1
        );
        assert_eq!(
            classify_case(&poly_twist(vec!["q0", "p0", "p1"], "q0", "p0 + p1*t"))
                .unwrap(),
            CaseTag::Case2
        );
        assert_eq!(
            classify_case(&poly_twist(vec!["p0", "p1"], "0", "p0 + p1*t")).unwrap(),
            CaseTag::Case3
        );
        assert_eq!(
            classify_case(&poly_twist(vec![], "t", "t^2")).unwrap(),
            CaseTag::NotClosed
        );
        assert_eq!(
            classify_case(&poly_twist(vec![], "t^2", "1")).unwrap(),
            CaseTag::NotClosed
        );
        assert_eq!(
            classify_case(&poly_twist(vec!["p0", "p2"], "0", "p0 + p2*t^2")).unwrap(),
            CaseTag::NotClosed
        );
        let err = classify_case(&truncated_twist(vec![], 3, "t", "1")).unwrap_err();
        assert!(matches!(err, CoreError::RingKind(_)));
    }

    #[test]
    fn classical_table_is_untwisted_sl2() {
        let table = structure_table(&poly_twist(vec![], "t", "1")).unwrap();
        assert_row(&table, "he", ["2", "0", "0"]);
        assert_row(&table, "hf", ["0", "0", "-2"]);
        assert_row(&table, "ef", ["0", "1", "0"]);
        let sigma = table.sigma_matrix().unwrap();
        let decl = table.twist().ring().decl();
        assert_eq!(sigma, &OperatorMatrix::identity(decl, 3));
    }

    #[test]
    fn jackson_table_matches_q_deformation() {
        let table =
            structure_table(&poly_twist(vec!["q", "p0"], "q*t", "p0")).unwrap();
        assert_row(&table, "hf", ["0", "0", "-2*q*p0"]);
        assert_row(&table, "he", ["2*p0", "0", "0"]);
        assert_row(&table, "ef", ["0", "(q + 1)/2*p0", "0"]);

        let at_unit = structure_table(&poly_twist(vec![], "t", "1")).unwrap();
        for (name, row) in at_unit.rows() {
            let symbolic = table.row(name).unwrap();
            let decl = table.twist().ring().decl();
            let one = Scalar::one(decl);
            let bind: std::collections::BTreeMap<String, Scalar> =
                [("q".to_string(), one.clone()), ("p0".to_string(), one)]
                    .into_iter()
                    .collect();
            for (sym, classical) in symbolic.iter().zip(row) {
                let specialized = sym.specialize(&bind).unwrap();
                assert_eq!(specialized.to_string(), classical.to_string());
            }
        }
    }

    #[test]
    fn shifted_case1_table_gains_h_component() {
        let table = structure_table(&poly_twist(
            vec!["q0", "q1", "p0"],
            "q0 + q1*t",
            "p0",
        ))
        .unwrap();
        assert_row(&table, "hf", ["0", "-q0*p0", "-2*q1*p0"]);
        assert_row(&table, "he", ["2*p0", "0", "0"]);
        assert_row(&table, "ef", ["-q0*p0", "(q1 + 1)/2*p0", "0"]);
    }

    #[test]
    fn truncated_generic_table() {
        let table = structure_table(&truncated_twist(
            vec!["q1", "q2", "p0", "p1", "p2"],
            3,
            "q1*t + q2*t^2",
            "p0 + p1*t + p2*t^2",
        ))
        .unwrap();
        assert_row(&table, "hf", ["0", "0", "-2*q1*p0"]);
        assert_row(&table, "he", ["2*p0", "-p1", "-2*p2"]);
        assert_row(&table, "ef", ["0", "(q1 + 1)/2*p0", "p1 + q1*p1 + q2*p0"]);
    }

    #[test]
    fn escape_from_the_span_is_reported() {
        let err = structure_table(&poly_twist(vec![], "t", "t^2")).unwrap_err();
        match err {
            CoreError::NotClosed { bracket, coefficient } => {
                assert_eq!(bracket, "hf");
                assert_eq!(coefficient, "2*t^4");
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn sigma_matrix_columns_follow_the_span_images() {
        let decl_rows = |t: &StructureTable, expect: [[&str; 3]; 3]| {
            let decl = t.twist().ring().decl();
            let m = t.sigma_matrix().unwrap();
            for (i, row) in expect.iter().enumerate() {
                for (j, want) in row.iter().enumerate() {
                    assert_eq!(
                        m.entry(i, j),
                        &parse_scalar(decl, want).unwrap(),
                        "entry ({i},{j})"
                    );
                }
            }
        };
        let jackson =
            structure_table(&poly_twist(vec!["q", "p0"], "q*t", "p0")).unwrap();
        decl_rows(
            &jackson,
            [["1", "0", "0"], ["0", "q", "0"], ["0", "0", "q^2"]],
        );
        let shifted = structure_table(&poly_twist(
            vec!["q0", "q1", "p0"],
            "q0 + q1*t",
            "p0",
        ))
        .unwrap();
        decl_rows(
            &shifted,
            [
                ["1", "-2*q0", "-q0^2"],
                ["0", "q1", "q0*q1"],
                ["0", "0", "q1^2"],
            ],
        );
        let truncated = structure_table(&truncated_twist(
            vec!["q1", "q2"],
            3,
            "q1*t + q2*t^2",
            "0",
        ))
        .unwrap();
        decl_rows(
            &truncated,
            [["1", "0", "0"], ["0", "q1", "0"], ["0", "2*q2", "q1^2"]],
        );
    }

    #[test]
    fn sigma_matrix_is_absent_when_sigma_leaves_the_span() {
        let table =
            structure_table(&truncated_twist(vec![], 5, "t^2", "0")).unwrap();
        assert!(table.sigma_matrix().is_none());
        for (_, row) in table.rows() {
            assert!(row.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn relation_lift_reproduces_shifted_case1_relations() {
        let twist = poly_twist(vec!["q0", "q1", "p0"], "q0 + q1*t", "p0");
        let alphabet = span_alphabet();
        let decl = twist.ring().decl();
        let check = |x: &str, y: &str, lhs: &str, rhs: &str| {
            let (l, r) = relation_lift(&twist, x, y).unwrap();
            assert_eq!(l, WordPoly::parse(&alphabet, decl, lhs).unwrap(), "{x}{y} lhs");
            assert_eq!(r, WordPoly::parse(&alphabet, decl, rhs).unwrap(), "{x}{y} rhs");
        };
        check(
            "h",
            "f",
            "-2*q0*e*f + q1*h*f + q0^2*e*h - q0*q1*h^2 - q1^2*f*h",
            "-q0*p0*h - 2*q1*p0*f",
        );
        check("h", "e", "-2*q0*e^2 + q1*h*e - e*h", "2*p0*e");
        check(
            "e",
            "f",
            "e*f + q0^2*e^2 - q0*q1*h*e - q1^2*f*e",
            "-q0*p0*e + (q1 + 1)/2*p0*h",
        );
    }

    #[test]
    fn relation_lift_on_truncated_ring_keeps_f_square_term() {
        let twist = truncated_twist(
            vec!["q1", "q2", "p1", "p2"],
            3,
            "q1*t + q2*t^2",
            "p1*t + p2*t^2",
        );
        let (lhs, rhs) = relation_lift(&twist, "h", "f").unwrap();
        let alphabet = span_alphabet();
        let decl = twist.ring().decl();
        assert_eq!(
            lhs,
            WordPoly::parse(&alphabet, decl, "q1*h*f + 2*q2*f^2 - q1^2*f*h").unwrap()
        );
        assert!(rhs.is_zero());
    }

    #[test]
    fn named_instances_lift_to_their_advertised_relations() {
        let relation = |twist: &Arc<TwistData>, x: &str, y: &str| -> WordPoly {
            let (lhs, rhs) = relation_lift(twist, x, y).unwrap();
            lhs.sub(&rhs)
        };
        let expect = |twist: &Arc<TwistData>, x, y, src: &str| {
            let alphabet = span_alphabet();
            let decl = twist.ring().decl();
            assert_eq!(
                relation(twist, x, y),
                WordPoly::parse(&alphabet, decl, src).unwrap(),
                "{x}{y} relation"
            );
        };

        let NamedInstance::Operator { twist, .. } =
            instantiate_named("jordanian").unwrap()
        else {
            panic!("jordanian is an operator instance")
        };
        expect(&twist, "h", "f", "h*f - f*h - eps*f^2");

        let NamedInstance::Operator { twist, .. } =
            instantiate_named("heisenberg").unwrap()
        else {
            panic!("heisenberg is an operator instance")
        };
        expect(&twist, "h", "e", "h*e - e*h - f");
        expect(&twist, "h", "f", "h*f - f*h");
        expect(&twist, "e", "f", "e*f - f*e");

        let NamedInstance::Operator { twist, .. } =
            instantiate_named("solvable").unwrap()
        else {
            panic!("solvable is an operator instance")
        };
        expect(&twist, "h", "e", "h*e - e*h + h + a*f");
        expect(&twist, "e", "f", "e*f - f*e - 2*f");
        expect(&twist, "h", "f", "h*f - f*h");

        let NamedInstance::Operator { twist, .. } =
            instantiate_named("classical").unwrap()
        else {
            panic!("classical is an operator instance")
        };
        expect(&twist, "h", "e", "h*e - e*h - 2*e");
    }

    #[test]
    fn case2_table_cannot_specialize_to_classical() {
        let table = structure_table(&poly_twist(
            vec!["q0", "p0", "p1"],
            "q0",
            "p0 + p1*t",
        ))
        .unwrap();
        let decl = table.twist().ring().decl();
        assert_row(&table, "he", ["2*p0", "-p1", "0"]);
        assert_row(&table, "hf", ["0", "-q0*p0", "-2*q0*p1"]);
        let hf_f = &table.row("hf").unwrap()[2];
        assert_eq!(hf_f, &parse_scalar(decl, "-2*q0*p1").unwrap());
        let bind: std::collections::BTreeMap<String, Scalar> = [
            ("p1".to_string(), Scalar::zero(decl)),
            ("p0".to_string(), Scalar::one(decl)),
        ]
        .into_iter()
        .collect();
        assert!(hf_f.specialize(&bind).unwrap().is_zero());
        let hf_h = table.row("hf").unwrap()[1].specialize(&bind).unwrap();
        assert_eq!(hf_h.to_string(), "-q0");
    }

    #[test]
    fn truncated_case1_lacks_classical_components() {
        let NamedInstance::Operator { twist, .. } =
            instantiate_named("polynomial3").unwrap()
        else {
            panic!("polynomial3 is an operator instance")
        };
        let table = structure_table(&twist).unwrap();
        assert!(table.row("he").unwrap()[0].is_zero());
        assert!(table.row("ef").unwrap()[1].is_zero());
        assert_row(&table, "hf", ["0", "0", "0"]);
        assert_row(&table, "ef", ["0", "0", "p1 + q1*p1"]);
    }

    #[test]
    fn named_listing_matches_instantiation() {
        let listed = list_named();
        assert_eq!(listed.len(), 7);
        for (name, description) in listed {
            let inst = instantiate_named(name).unwrap();
            assert_eq!(inst.name(), name);
            assert_eq!(inst.description(), description);
        }
        assert!(matches!(
            instantiate_named("witten"),
            Err(CoreError::UnknownSpecialization(_))
        ));
        let NamedInstance::Presentation {
            relations, grading, ..
        } = instantiate_named("color").unwrap()
        else {
            panic!("color is a presentation instance")
        };
        assert_eq!(relations.len(), 3);
        assert_eq!(grading.len(), 3);
    }
}
