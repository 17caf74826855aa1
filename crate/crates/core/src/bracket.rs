//! The bracket on twisted derivations and its verification machinery.
//!
//! Elements of the cyclic module are written `a * dsigma` for a ring
//! element `a`. The bracket
//!
//! ```text
//! <a dsigma, b dsigma> = (sigma(a) dsigma(b) - sigma(b) dsigma(a)) dsigma
//! ```
//!
//! is, as an operator, the commutator of the twisted compositions
//! `f -> sigma(a) dsigma(b dsigma(f))`; [`verify_bracket_is_commutator`]
//! checks that identity on monomial probes. The six-term twisted Jacobi sum
//! is evaluated symbolically, both as an exact coefficient and as an
//! operator (coefficient modulo the annihilator of the derivation).

use std::fmt;
use std::sync::Arc;

use crate::base::{same_ring, BaseElement};
use crate::decl::{same_decl, Decl};
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use crate::sigma::TwistData;

/// An element `coeff * dsigma` of the span of the twisted derivation.
#[derive(Debug, Clone)]
pub struct SpanElement {
    twist: Arc<TwistData>,
    coeff: BaseElement,
}

pub fn same_twist(a: &Arc<TwistData>, b: &Arc<TwistData>) -> bool {
    Arc::ptr_eq(a, b)
        || (same_ring(a.ring(), b.ring())
            && a.sigma_t() == b.sigma_t()
            && a.dsigma_t() == b.dsigma_t())
}

impl SpanElement {
    pub fn new(twist: &Arc<TwistData>, coeff: BaseElement) -> Result<Self> {
        if !same_ring(coeff.ring(), twist.ring()) {
            return Err(CoreError::RingMismatch);
        }
        Ok(SpanElement {
            twist: twist.clone(),
            coeff,
        })
    }

    pub fn zero(twist: &Arc<TwistData>) -> Self {
        SpanElement {
            twist: twist.clone(),
            coeff: BaseElement::zero(twist.ring()),
        }
    }

    pub fn twist(&self) -> &Arc<TwistData> {
        &self.twist
    }

    pub fn coeff(&self) -> &BaseElement {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn assert_same_twist(&self, other: &Self) {
        assert!(
            same_twist(&self.twist, &other.twist),
            "mismatched twist data"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_twist(other);
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.coeff.add(&other.coeff),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_twist(other);
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.coeff.sub(&other.coeff),
        }
    }

    pub fn neg(&self) -> Self {
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.coeff.neg(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.coeff.scale(c),
        }
    }

    /// Multiply the coefficient by a ring element (the module action).
    pub fn module_scale(&self, a: &BaseElement) -> Self {
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.coeff.mul(a),
        }
    }

    /// Replace the coefficient by its image under the endomorphism.
    pub fn sigma_lift(&self) -> Self {
        SpanElement {
            twist: self.twist.clone(),
            coeff: self.twist.apply_sigma(&self.coeff),
        }
    }

    /// Apply the element as an operator: `a * dsigma(target)`.
    pub fn apply(&self, target: &BaseElement) -> BaseElement {
        self.coeff.mul(&self.twist.apply_dsigma(target))
    }

    /// The bracket with another element of the same span.
    pub fn bracket(&self, other: &Self) -> Self {
        self.assert_same_twist(other);
        SpanElement {
            twist: self.twist.clone(),
            coeff: bracket_coefficient(&self.twist, &self.coeff, &other.coeff),
        }
    }
}

impl PartialEq for SpanElement {
    fn eq(&self, other: &Self) -> bool {
        same_twist(&self.twist, &other.twist) && self.coeff == other.coeff
    }
}

impl fmt::Display for SpanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        let s = self.coeff.to_string();
        if crate::base::has_top_level_space(&s) {
            write!(f, "({s})*dsigma")
        } else {
            write!(f, "{s}*dsigma")
        }
    }
}

/// `sigma(a) dsigma(b) - sigma(b) dsigma(a)`, the coefficient of the
/// bracket `<a dsigma, b dsigma>`.
pub fn bracket_coefficient(
    twist: &TwistData,
    a: &BaseElement,
    b: &BaseElement,
) -> BaseElement {
    let left = twist.apply_sigma(a).mul(&twist.apply_dsigma(b));
    let right = twist.apply_sigma(b).mul(&twist.apply_dsigma(a));
    left.sub(&right)
}

/// Monomial probes `t^1 .. t^bound`, shortened to the basis on a truncated
/// ring.
fn probe_powers(twist: &TwistData, bound: usize) -> Vec<BaseElement> {
    let ring = twist.ring();
    let top = match ring.truncation() {
        Some(n) => (n - 1).min(bound),
        None => bound,
    };
    let t = BaseElement::variable(ring);
    (1..=top).map(|k| t.pow(k as u32)).collect()
}

/// Check on monomial probes that the bracket acts as the commutator of the
/// twisted compositions `f -> sigma(a) dsigma(b dsigma(f))`.
pub fn verify_bracket_is_commutator(x: &SpanElement, y: &SpanElement, bound: usize) -> bool {
    let twist = x.twist();
    let bracket = x.bracket(y);
    for probe in probe_powers(twist, bound) {
        let lhs = bracket.apply(&probe);
        let xy = twist
            .apply_sigma(x.coeff())
            .mul(&twist.apply_dsigma(&y.apply(&probe)));
        let yx = twist
            .apply_sigma(y.coeff())
            .mul(&twist.apply_dsigma(&x.apply(&probe)));
        if lhs != xy.sub(&yx) {
            return false;
        }
    }
    true
}

/// Result of evaluating the six-term twisted Jacobi sum on a triple.
#[derive(Debug, Clone)]
pub struct TwistedJacobiReport {
    /// Coefficient of the sum as an element of the base ring.
    pub residual: BaseElement,
    /// The coefficient vanishes identically.
    pub holds_exactly: bool,
    /// The sum vanishes as an operator: the residual annihilates the
    /// derivation images of all probes.
    pub holds_as_operator: bool,
}

/// Evaluate the cyclic sum
/// `<sigma(a) d, <b d, c d>> + delta * <a d, <b d, c d>>` over the three
/// cyclic rotations of `(x, y, z)`.
pub fn check_twisted_jacobi(
    x: &SpanElement,
    y: &SpanElement,
    z: &SpanElement,
    delta: &BaseElement,
    bound: usize,
) -> Result<TwistedJacobiReport> {
    if !same_twist(x.twist(), y.twist()) || !same_twist(x.twist(), z.twist()) {
        return Err(CoreError::RingMismatch);
    }
    if !same_ring(delta.ring(), x.twist().ring()) {
        return Err(CoreError::RingMismatch);
    }
    let twist = x.twist().clone();
    let mut sum = SpanElement::zero(&twist);
    let triples = [(x, y, z), (y, z, x), (z, x, y)];
    for (a, b, c) in triples {
        let inner = b.bracket(c);
        let twisted = a.sigma_lift().bracket(&inner);
        let straight = a.bracket(&inner).module_scale(delta);
        sum = sum.add(&twisted).add(&straight);
    }
    let residual = sum.coeff().clone();
    let holds_exactly = residual.is_zero();
    let holds_as_operator = holds_exactly
        || probe_powers(&twist, bound)
            .iter()
            .all(|p| residual.mul(&twist.apply_dsigma(p)).is_zero());
    Ok(TwistedJacobiReport {
        residual,
        holds_exactly,
        holds_as_operator,
    })
}

/// The standard deformed `sl2` span `[e, h, f] = [d, -2t d, -t^2 d]`.
pub fn sl2_span(twist: &Arc<TwistData>) -> [SpanElement; 3] {
    let ring = twist.ring();
    let decl = ring.decl();
    let t = BaseElement::variable(ring);
    let e = SpanElement::new(twist, BaseElement::one(ring)).expect("same ring");
    let h = SpanElement::new(twist, t.scale(&Scalar::from_int(decl, -2))).expect("same ring");
    let f = SpanElement::new(twist, t.pow(2).neg()).expect("same ring");
    [e, h, f]
}

/// A square matrix over the scalar field; the representation of operators
/// on the monomial basis of a truncated ring.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    decl: Decl,
    n: usize,
    entries: Vec<Vec<Scalar>>,
}

impl OperatorMatrix {
    pub fn zero(decl: &Decl, n: usize) -> Self {
        OperatorMatrix {
            decl: decl.clone(),
            n,
            entries: vec![vec![Scalar::zero(decl); n]; n],
        }
    }

    pub fn identity(decl: &Decl, n: usize) -> Self {
        let mut m = OperatorMatrix::zero(decl, n);
        for i in 0..n {
            m.entries[i][i] = Scalar::one(decl);
        }
        m
    }

    pub fn from_rows(decl: &Decl, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::Precondition(
                "matrix rows must form a square".to_string(),
            ));
        }
        for row in &rows {
            for c in row {
                if !same_decl(c.decl(), decl) {
                    return Err(CoreError::DeclMismatch);
                }
            }
        }
        Ok(OperatorMatrix {
            decl: decl.clone(),
            n,
            entries: rows,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            self.n == other.n && same_decl(&self.decl, &other.decl),
            "mismatched matrices"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
            .collect();
        OperatorMatrix {
            decl: self.decl.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(&self.decl, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|a| a * c).collect())
            .collect();
        OperatorMatrix {
            decl: self.decl.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = OperatorMatrix::zero(&self.decl, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Scalar::zero(&self.decl);
                for k in 0..self.n {
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }
}

impl PartialEq for OperatorMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && same_decl(&self.decl, &other.decl)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(r, s)| r.iter().zip(s).all(|(a, b)| a == b))
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Matrix of the operator `a * dsigma` on the monomial basis
/// `1, t, .., t^{N-1}` of a truncated ring; column `j` holds the
/// coordinates of the image of `t^j`.
pub fn matrix_rep(x: &SpanElement) -> Result<OperatorMatrix> {
    let ring = x.twist().ring();
    let Some(n) = ring.truncation() else {
        return Err(CoreError::RingKind(
            "matrix representation requires a truncated ring".to_string(),
        ));
    };
    let decl = ring.decl();
    let mut m = OperatorMatrix::zero(decl, n);
    let t = BaseElement::variable(ring);
    for j in 0..n {
        let image = x.apply(&t.pow(j as u32));
        for i in 0..n {
            m.entries[i][j] = image.coeff(i);
        }
    }
    Ok(m)
}
