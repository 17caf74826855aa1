//! Exact symbolic engine for twisted derivations on polynomial and
//! truncated polynomial algebras, the deformed `sl2` brackets they induce,
//! and the quadratic enveloping algebras attached to them.
//!
//! All arithmetic is exact: scalars are rational functions in declared
//! parameters (optionally extended by an algebraic root symbol), and every
//! verification reduces to deciding whether a scalar is exactly zero.

pub mod base;
pub mod bracket;
pub mod decl;
pub mod error;
pub mod linalg;
pub mod parse;
pub mod qhl;
pub mod quadratic;
pub mod scalar;
pub mod deform;
pub mod sigma;
pub mod word;

pub use num_rational::BigRational;

pub use base::{parse_element, same_ring, BaseElement, BaseRing, RingData, RingKind};
pub use bracket::{
    bracket_coefficient, check_twisted_jacobi, matrix_rep, same_twist, sl2_span,
    verify_bracket_is_commutator, OperatorMatrix, SpanElement, TwistedJacobiReport,
};
pub use decl::{cyclotomic, same_decl, Decl, FieldDecl, RootSpec, RING_VARIABLE};
pub use deform::{
    classify_case, instantiate_named, list_named, relation_lift, sigma_span_matrix,
    span_alphabet, span_decompose, structure_table, CaseTag, NamedInstance,
    StructureTable, SPAN_GENERATORS,
};
pub use error::{CoreError, Result};
pub use linalg::{GateMode, LinearOutcome, LinearSystem};
pub use parse::{parse_expr, parse_scalar, Expr};
pub use qhl::{
    check_color_relations, check_hom_lie, check_qhl, derived_series_dimensions,
    derived_series_solvable, induced_alpha, AbstractAlgebra, HomLieReport, QhlReport,
};
pub use quadratic::{
    check_normal_element, check_ore_data, check_scalar_rep, check_skew_extension,
    check_substitution_iso, conformal_vector_check, ore_data, quadratic_u,
    quadratic_u_casimir, quadratic_w, skew_leibniz_extend, ConfluenceReport,
    NormalityReport, RewriteRule, RewriteStrategy, RewriteSystem, SkewExtensionReport,
    SubstitutionReport,
};
pub use scalar::{ParamPoly, Scalar};
pub use sigma::{
    check_condition3, solve_delta, Annihilator, DeltaFreedom, DeltaSolution, TwistData,
    WellDefinedReport,
};
pub use word::{eval_word, same_alphabet, Alphabet, AlphabetData, Word, WordPoly};
