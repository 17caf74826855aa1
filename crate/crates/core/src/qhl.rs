//! Axiom verification for abstract finite-dimensional skew brackets:
//! twisted Jacobi identities with a linear twist α and a scalar multiplier
//! β, derived-series solvability, and sign-graded commutation relations.

use std::collections::BTreeMap;

use crate::bracket::OperatorMatrix;
use crate::decl::{same_decl, Decl};
use crate::deform::{StructureTable, SPAN_GENERATORS, TABLE_BRACKETS};
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use crate::word::WordPoly;

/// A finite-dimensional algebra given by structure constants for a
/// skew-symmetric bracket, optionally with a twisting matrix α (column
/// convention) and a scalar multiplier β.
#[derive(Debug, Clone)]
pub struct AbstractAlgebra {
    decl: Decl,
    basis: Vec<String>,
    brackets: Vec<Vec<Vec<Scalar>>>,
    alpha: Option<OperatorMatrix>,
    beta: Option<Scalar>,
}

impl AbstractAlgebra {
    /// `brackets[i][j]` holds the coefficients of ⟨basis_i, basis_j⟩ in
    /// the basis. Skew-symmetry of the input is validated.
    pub fn new(
        decl: &Decl,
        basis: Vec<String>,
        brackets: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let dim = basis.len();
        if brackets.len() != dim
            || brackets
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(CoreError::Precondition(
                "structure constants must form a dim x dim x dim array".to_string(),
            ));
        }
        for row in &brackets {
            for v in row {
                for c in v {
                    if !same_decl(c.decl(), decl) {
                        return Err(CoreError::DeclMismatch);
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = &brackets[i][j][k];
                    let rhs = -&brackets[j][i][k];
                    if lhs != &rhs {
                        return Err(CoreError::Precondition(format!(
                            "bracket table is not skew-symmetric at ({}, {})",
                            basis[i], basis[j]
                        )));
                    }
                }
            }
        }
        Ok(AbstractAlgebra {
            decl: decl.clone(),
            basis,
            brackets,
            alpha: None,
            beta: None,
        })
    }

    /// Build the span algebra on basis (e, h, f) from a structure table,
    /// installing the table's σ-matrix as α when available.
    pub fn from_structure_table(table: &StructureTable) -> Result<Self> {
        let decl = table.twist().ring().decl();
        let dim = 3;
        let zero = Scalar::zero(decl);
        let mut brackets = vec![vec![vec![zero; dim]; dim]; dim];
        for (name, i, j) in TABLE_BRACKETS {
            let row = table.row(name).expect("table rows are exhaustive");
            brackets[i][j] = row.to_vec();
            brackets[j][i] = row.iter().map(|c| -c).collect();
        }
        let mut alg = AbstractAlgebra::new(
            decl,
            SPAN_GENERATORS.iter().map(|s| s.to_string()).collect(),
            brackets,
        )?;
        if let Some(sigma) = table.sigma_matrix() {
            alg = alg.with_alpha(sigma.clone())?;
        }
        Ok(alg)
    }

    pub fn with_alpha(mut self, alpha: OperatorMatrix) -> Result<Self> {
        if alpha.size() != self.basis.len() {
            return Err(CoreError::Precondition(
                "alpha must match the algebra dimension".to_string(),
            ));
        }
        if !same_decl(alpha.decl(), &self.decl) {
            return Err(CoreError::DeclMismatch);
        }
        self.alpha = Some(alpha);
        Ok(self)
    }

    pub fn with_beta(mut self, beta: Scalar) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn alpha(&self) -> Option<&OperatorMatrix> {
        self.alpha.as_ref()
    }

    pub fn beta(&self) -> Option<&Scalar> {
        self.beta.as_ref()
    }

    /// Bracket of two coefficient vectors, by bilinearity.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(&self.decl); dim];
        for i in 0..dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..dim {
                    let c = &self.brackets[i][j][k];
                    if !c.is_zero() {
                        out[k] = &out[k] + &(c * &uv);
                    }
                }
            }
        }
        out
    }

    fn apply(&self, m: &OperatorMatrix, v: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                let mut acc = Scalar::zero(&self.decl);
                for (j, vj) in v.iter().enumerate() {
                    acc = &acc + &(m.entry(i, j) * vj);
                }
                acc
            })
            .collect()
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(&self.decl); self.dim()];
        v[i] = Scalar::one(&self.decl);
        v
    }

    fn triple_label(&self, i: usize, j: usize, k: usize) -> String {
        format!("({}, {}, {})", self.basis[i], self.basis[j], self.basis[k])
    }
}

fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Outcome of the α-twisted Jacobi check: the cyclic sum
/// ↻⟨(α+id)(x), ⟨y,z⟩⟩ on every basis triple.
#[derive(Debug, Clone)]
pub struct HomLieReport {
    pub holds: bool,
    pub residuals: Vec<(String, Vec<Scalar>)>,
}

pub fn check_hom_lie(alg: &AbstractAlgebra) -> Result<HomLieReport> {
    let alpha = alg.alpha().ok_or_else(|| {
        CoreError::Precondition("hom-Lie check requires an alpha matrix".to_string())
    })?;
    let dim = alg.dim();
    let mut residuals = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut sum = vec![Scalar::zero(alg.decl()); dim];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = alg.bracket(&alg.unit(b), &alg.unit(c));
                    let x = alg.unit(a);
                    let twisted = vec_add(&alg.apply(alpha, &x), &x);
                    sum = vec_add(&sum, &alg.bracket(&twisted, &inner));
                }
                if !vec_is_zero(&sum) {
                    residuals.push((alg.triple_label(i, j, k), sum));
                }
            }
        }
    }
    Ok(HomLieReport {
        holds: residuals.is_empty(),
        residuals,
    })
}

/// Outcome of the (α, β, ω = −id) axioms: `twisted_jacobi_ok` is the
/// cyclic identity ↻(⟨α(x), ⟨y,z⟩⟩ + β⟨x, ⟨y,z⟩⟩) = 0 on basis triples;
/// `alpha_compatible` is ⟨α(x), α(y)⟩ = β·α(⟨x,y⟩) on basis pairs.
#[derive(Debug, Clone)]
pub struct QhlReport {
    pub twisted_jacobi_ok: bool,
    pub alpha_compatible: bool,
    pub jacobi_residuals: Vec<(String, Vec<Scalar>)>,
    pub compatibility_residuals: Vec<(String, Vec<Scalar>)>,
}

impl QhlReport {
    pub fn ok(&self) -> bool {
        self.twisted_jacobi_ok && self.alpha_compatible
    }
}

pub fn check_qhl(alg: &AbstractAlgebra) -> Result<QhlReport> {
    let alpha = alg.alpha().ok_or_else(|| {
        CoreError::Precondition("qhl check requires an alpha matrix".to_string())
    })?;
    let beta = alg.beta().ok_or_else(|| {
        CoreError::Precondition("qhl check requires a beta scalar".to_string())
    })?;
    let dim = alg.dim();

    let mut jacobi_residuals = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut sum = vec![Scalar::zero(alg.decl()); dim];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = alg.bracket(&alg.unit(b), &alg.unit(c));
                    let x = alg.unit(a);
                    let twisted = alg.bracket(&alg.apply(alpha, &x), &inner);
                    let weighted = vec_scale(&alg.bracket(&x, &inner), beta);
                    sum = vec_add(&sum, &vec_add(&twisted, &weighted));
                }
                if !vec_is_zero(&sum) {
                    jacobi_residuals.push((alg.triple_label(i, j, k), sum));
                }
            }
        }
    }

    let mut compatibility_residuals = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let (u, v) = (alg.unit(i), alg.unit(j));
            let lhs = alg.bracket(&alg.apply(alpha, &u), &alg.apply(alpha, &v));
            let rhs = vec_scale(&alg.apply(alpha, &alg.bracket(&u, &v)), beta);
            let residual = vec_sub(&lhs, &rhs);
            if !vec_is_zero(&residual) {
                compatibility_residuals.push((
                    format!("({}, {})", alg.basis()[i], alg.basis()[j]),
                    residual,
                ));
            }
        }
    }

    Ok(QhlReport {
        twisted_jacobi_ok: jacobi_residuals.is_empty(),
        alpha_compatible: compatibility_residuals.is_empty(),
        jacobi_residuals,
        compatibility_residuals,
    })
}

/// The hom-Lie twist induced by a span σ-matrix and a constant δ₀: the
/// identity ↻(⟨σ(x),⟨y,z⟩⟩ + δ₀⟨x,⟨y,z⟩⟩) = 0 normalizes to the
/// (α+id)-form with α = δ₀⁻¹σ when δ₀ ≠ 0, and with α = σ − id when
/// δ₀ = 0.
pub fn induced_alpha(sigma: &OperatorMatrix, delta0: &Scalar) -> Result<OperatorMatrix> {
    if delta0.is_zero() {
        Ok(sigma.sub(&OperatorMatrix::identity(sigma.decl(), sigma.size())))
    } else {
        Ok(sigma.scale(&delta0.recip()?))
    }
}

/// Insert a vector into a reduced echelon basis; returns false when the
/// vector already lies in the span. The basis is kept fully reduced so a
/// single elimination pass per insertion is sound.
fn echelon_insert(rows: &mut Vec<(usize, Vec<Scalar>)>, mut v: Vec<Scalar>) -> bool {
    for (pivot, row) in rows.iter() {
        if !v[*pivot].is_zero() {
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x - &(r * &factor);
            }
        }
    }
    let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let inv = v[pivot].recip().expect("pivot is nonzero");
    let normalized: Vec<Scalar> = v.iter().map(|c| c * &inv).collect();
    for (_, row) in rows.iter_mut() {
        if !row[pivot].is_zero() {
            let factor = row[pivot].clone();
            for (x, n) in row.iter_mut().zip(&normalized) {
                *x = &*x - &(n * &factor);
            }
        }
    }
    rows.push((pivot, normalized));
    true
}

/// Dimensions of the derived series g⁽⁰⁾, g⁽¹⁾ = ⟨g⁽⁰⁾, g⁽⁰⁾⟩, …, for at
/// most `max_steps` derivations, stopping early once the dimension reaches
/// zero. Pivot tests treat any nonzero scalar as invertible, so the ranks
/// are generic in the parameters.
pub fn derived_series_dimensions(alg: &AbstractAlgebra, max_steps: usize) -> Vec<usize> {
    let mut dims = vec![alg.dim()];
    let mut current: Vec<Vec<Scalar>> = (0..alg.dim()).map(|i| alg.unit(i)).collect();
    for _ in 0..max_steps {
        let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
        let mut next: Vec<Vec<Scalar>> = Vec::new();
        for a in 0..current.len() {
            for b in a + 1..current.len() {
                let w = alg.bracket(&current[a], &current[b]);
                if echelon_insert(&mut rows, w.clone()) {
                    next.push(w);
                }
            }
        }
        let rank = next.len();
        dims.push(rank);
        current = next;
        if rank == 0 {
            break;
        }
    }
    dims
}

/// True iff the derived series reaches zero within `max_steps`.
pub fn derived_series_solvable(alg: &AbstractAlgebra, max_steps: usize) -> bool {
    derived_series_dimensions(alg, max_steps).last() == Some(&0)
}

/// Check that each quadratic relation matches the sign-graded commutator
/// pattern AB − (−1)^{⟨deg A, deg B⟩} BA for the given Z₂×Z₂ grading:
/// every relation must be a nonzero scalar multiple of that combination
/// for some pair of distinct letters.
pub fn check_color_relations(
    relations: &[WordPoly],
    grading: &[(String, [u8; 2])],
) -> Result<bool> {
    let degrees: BTreeMap<&str, [u8; 2]> = grading
        .iter()
        .map(|(name, d)| (name.as_str(), *d))
        .collect();
    for relation in relations {
        if relation.is_zero() || relation.degree() != Some(2) || relation.term_count() != 2
        {
            return Ok(false);
        }
        let terms: Vec<_> = relation.terms().collect();
        let (wa, ca) = terms[0];
        let (wb, cb) = terms[1];
        let (la, lb) = (wa.letters(), wb.letters());
        if la.len() != 2 || lb.len() != 2 || la[0] == la[1] {
            return Ok(false);
        }
        if la[0] != lb[1] || la[1] != lb[0] {
            return Ok(false);
        }
        let alphabet = relation.alphabet();
        let name_a = alphabet.letter(la[0] as usize);
        let name_b = alphabet.letter(la[1] as usize);
        let deg_a = degrees
            .get(name_a)
            .ok_or_else(|| CoreError::MissingAssignment(name_a.to_string()))?;
        let deg_b = degrees
            .get(name_b)
            .ok_or_else(|| CoreError::MissingAssignment(name_b.to_string()))?;
        let pairing = (deg_a[0] * deg_b[0] + deg_a[1] * deg_b[1]) % 2;
        // The relation c_a·AB + c_b·BA is a multiple of AB − (−1)^pairing BA
        // exactly when c_b = −(−1)^pairing c_a.
        let expected = if pairing == 0 { -ca } else { ca.clone() };
        if cb != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}
