//! The commutative algebras the twisted derivations act on: the polynomial
//! algebra `F[t]` and the truncated quotients `F[t]/(t^N)`.
//!
//! Elements store their coefficients densely, lowest power first, with
//! trailing zeros stripped. In a truncated ring every product is reduced
//! immediately, so an element never carries powers at or above the
//! truncation order.

use std::fmt;
use std::sync::Arc;

use crate::decl::{same_decl, Decl, RING_VARIABLE};
use crate::error::{CoreError, Result};
use crate::parse::{parse_expr, Expr};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    Polynomial,
    /// `F[t]/(t^N)`; the payload is the truncation order `N`.
    Truncated(usize),
}

#[derive(Debug)]
pub struct RingData {
    decl: Decl,
    kind: RingKind,
}

/// Shared handle to a ring; elements hold one so mixed-ring arithmetic can
/// be rejected cheaply.
pub type BaseRing = Arc<RingData>;

impl RingData {
    pub fn polynomial(decl: &Decl) -> BaseRing {
        Arc::new(RingData {
            decl: decl.clone(),
            kind: RingKind::Polynomial,
        })
    }

    pub fn truncated(decl: &Decl, order: usize) -> Result<BaseRing> {
        if order < 2 {
            return Err(CoreError::RingKind(format!(
                "truncation order must be at least 2, got {order}"
            )));
        }
        Ok(Arc::new(RingData {
            decl: decl.clone(),
            kind: RingKind::Truncated(order),
        }))
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Truncation order for a truncated ring, `None` for the polynomial ring.
    pub fn truncation(&self) -> Option<usize> {
        match self.kind {
            RingKind::Polynomial => None,
            RingKind::Truncated(n) => Some(n),
        }
    }
}

impl fmt::Display for RingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Polynomial => write!(f, "{}[{}]", self.decl, RING_VARIABLE),
            RingKind::Truncated(n) => {
                write!(f, "{}[{}]/({}^{})", self.decl, RING_VARIABLE, RING_VARIABLE, n)
            }
        }
    }
}

pub fn same_ring(a: &BaseRing, b: &BaseRing) -> bool {
    Arc::ptr_eq(a, b) || (same_decl(&a.decl, &b.decl) && a.kind == b.kind)
}

/// An element of a [`BaseRing`], stored as coefficients of ascending powers
/// of the ring variable.
#[derive(Debug, Clone)]
pub struct BaseElement {
    ring: BaseRing,
    coeffs: Vec<Scalar>,
}

impl BaseElement {
    pub fn zero(ring: &BaseRing) -> Self {
        BaseElement {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(ring: &BaseRing, coeffs: Vec<Scalar>) -> Self {
        let mut el = BaseElement {
            ring: ring.clone(),
            coeffs,
        };
        el.normalize();
        el
    }

    pub fn constant(ring: &BaseRing, value: Scalar) -> Self {
        BaseElement::from_coeffs(ring, vec![value])
    }

    pub fn one(ring: &BaseRing) -> Self {
        BaseElement::constant(ring, Scalar::one(&ring.decl))
    }

    /// The ring variable `t`.
    pub fn variable(ring: &BaseRing) -> Self {
        BaseElement::monomial(ring, 1, Scalar::one(&ring.decl))
    }

    /// `c * t^k`, reduced in the ring (zero when `k` reaches a truncation
    /// order).
    pub fn monomial(ring: &BaseRing, k: usize, c: Scalar) -> Self {
        if let Some(n) = ring.truncation() {
            if k >= n {
                return BaseElement::zero(ring);
            }
        }
        let mut coeffs = vec![Scalar::zero(&ring.decl); k + 1];
        coeffs[k] = c;
        BaseElement::from_coeffs(ring, coeffs)
    }

    fn normalize(&mut self) {
        if let Some(n) = self.ring.truncation() {
            self.coeffs.truncate(n);
        }
        while self
            .coeffs
            .last()
            .map(|c| c.is_zero())
            .unwrap_or(false)
        {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree as a polynomial in the ring variable; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `t^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ring.decl))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "mismatched base rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| &self.coeff(k) + &other.coeff(k))
            .collect();
        BaseElement::from_coeffs(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BaseElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|v| v * c).collect();
        BaseElement::from_coeffs(&self.ring, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return BaseElement::zero(&self.ring);
        }
        let bound = self.coeffs.len() + other.coeffs.len() - 1;
        let bound = match self.ring.truncation() {
            Some(n) => bound.min(n),
            None => bound,
        };
        let zero = Scalar::zero(&self.ring.decl);
        let mut coeffs = vec![zero; bound];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= bound {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BaseElement::from_coeffs(&self.ring, coeffs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = BaseElement::one(&self.ring);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `x` for the ring variable: `sum_k c_k x^k`, evaluated by
    /// Horner's rule inside the ring.
    pub fn compose(&self, x: &BaseElement) -> BaseElement {
        self.assert_same_ring(x);
        let mut acc = BaseElement::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            acc = acc.add(&BaseElement::constant(&self.ring, c.clone()));
        }
        acc
    }
}

impl PartialEq for BaseElement {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

/// True when the string has a space outside all parentheses, in which case
/// it must be wrapped before a `*` is appended.
pub(crate) fn has_top_level_space(s: &str) -> bool {
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ' ' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

/// Render a scalar coefficient attached to a symbolic factor such as `t^2`.
/// Returns the sign separately so callers can join terms with ` + ` / ` - `.
pub(crate) fn render_coeff_factor(c: &Scalar, factor: Option<&str>) -> (bool, String) {
    let mut s = c.to_string();
    let mut negative = false;
    if has_top_level_space(&s) {
        s = format!("({s})");
    } else if let Some(stripped) = s.strip_prefix('-') {
        negative = true;
        s = stripped.to_string();
    }
    let body = match factor {
        None => s,
        Some(m) if s == "1" => m.to_string(),
        Some(m) => format!("{s}*{m}"),
    };
    (negative, body)
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let factor = match k {
                0 => None,
                1 => Some(RING_VARIABLE.to_string()),
                _ => Some(format!("{RING_VARIABLE}^{k}")),
            };
            let (negative, body) = render_coeff_factor(c, factor.as_deref());
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Parse an expression into a ring element; identifiers may be the ring
/// variable or any declared scalar symbol.
pub fn parse_element(ring: &BaseRing, src: &str) -> Result<BaseElement> {
    let expr = parse_expr(src)?;
    eval_element(ring, &expr)
}

enum Val {
    S(Scalar),
    B(BaseElement),
}

impl Val {
    fn into_base(self, ring: &BaseRing) -> BaseElement {
        match self {
            Val::S(s) => BaseElement::constant(ring, s),
            Val::B(b) => b,
        }
    }
}

pub fn eval_element(ring: &BaseRing, expr: &Expr) -> Result<BaseElement> {
    Ok(eval_val(ring, expr)?.into_base(ring))
}

fn eval_val(ring: &BaseRing, expr: &Expr) -> Result<Val> {
    let decl = &ring.decl;
    match expr {
        Expr::Int(n) => Ok(Val::S(Scalar::from_rational(
            decl,
            num_rational::BigRational::from(n.clone()),
        ))),
        Expr::Ident(name) if name == RING_VARIABLE => {
            Ok(Val::B(BaseElement::variable(ring)))
        }
        Expr::Ident(name) => Ok(Val::S(Scalar::var(decl, name)?)),
        Expr::Neg(inner) => Ok(match eval_val(ring, inner)? {
            Val::S(s) => Val::S(-&s),
            Val::B(b) => Val::B(b.neg()),
        }),
        Expr::Add(a, b) => eval_pair(ring, a, b, |x, y| Ok(x.add(&y)), |x, y| Ok(&x + &y)),
        Expr::Sub(a, b) => eval_pair(ring, a, b, |x, y| Ok(x.sub(&y)), |x, y| Ok(&x - &y)),
        Expr::Mul(a, b) => eval_pair(ring, a, b, |x, y| Ok(x.mul(&y)), |x, y| Ok(&x * &y)),
        Expr::Div(a, b) => {
            let lhs = eval_val(ring, a)?;
            let rhs = eval_val(ring, b)?;
            let Val::S(rhs) = rhs else {
                return Err(CoreError::Precondition(
                    "division by a ring element is not supported".to_string(),
                ));
            };
            let inv = rhs.recip()?;
            Ok(match lhs {
                Val::S(s) => Val::S(&s * &inv),
                Val::B(b) => Val::B(b.scale(&inv)),
            })
        }
        Expr::Pow(base, exp) => match eval_val(ring, base)? {
            Val::S(s) => Ok(Val::S(s.pow(*exp)?)),
            Val::B(b) => {
                let e = u32::try_from(*exp).map_err(|_| {
                    CoreError::InvalidExponent(format!(
                        "ring elements cannot be raised to the power {exp}"
                    ))
                })?;
                Ok(Val::B(b.pow(e)))
            }
        },
    }
}

fn eval_pair(
    ring: &BaseRing,
    a: &Expr,
    b: &Expr,
    on_base: impl Fn(BaseElement, BaseElement) -> Result<BaseElement>,
    on_scalar: impl Fn(Scalar, Scalar) -> Result<Scalar>,
) -> Result<Val> {
    let lhs = eval_val(ring, a)?;
    let rhs = eval_val(ring, b)?;
    match (lhs, rhs) {
        (Val::S(x), Val::S(y)) => Ok(Val::S(on_scalar(x, y)?)),
        (x, y) => Ok(Val::B(on_base(
            x.into_base(ring),
            y.into_base(ring),
        )?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decl::FieldDecl;

    fn poly_ring() -> BaseRing {
        RingData::polynomial(&FieldDecl::params(vec!["q", "p0", "p1", "p2"]))
    }

    fn trunc_ring(n: usize) -> BaseRing {
        RingData::truncated(&FieldDecl::params(vec!["q", "p0", "p1", "p2"]), n).unwrap()
    }

    #[test]
    fn truncation_kills_high_powers() {
        let r = trunc_ring(3);
        let t = BaseElement::variable(&r);
        let t2 = t.pow(2);
        assert!(!t2.is_zero());
        assert!(t2.mul(&t2).is_zero());
        assert!(t.pow(3).is_zero());
    }

    #[test]
    fn binomial_cube_in_truncated_ring() {
        let r = trunc_ring(3);
        let a = parse_element(&r, "1 + t").unwrap();
        let cube = a.pow(3);
        let expect = parse_element(&r, "1 + 3*t + 3*t^2").unwrap();
        assert_eq!(cube, expect);
    }

    #[test]
    fn degree_and_coefficients() {
        let r = poly_ring();
        let a = parse_element(&r, "p0 + p1*t + p2*t^2").unwrap();
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.coeff(1), Scalar::var(r.decl(), "p1").unwrap());
        assert!(a.coeff(5).is_zero());
        assert_eq!(BaseElement::zero(&r).degree(), None);
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let r = poly_ring();
        let t = BaseElement::variable(&r);
        let diff = t.pow(2).sub(&t.pow(2));
        assert!(diff.is_zero());
        assert_eq!(diff.degree(), None);
        let a = parse_element(&r, "t^2 + t - t^2").unwrap();
        assert_eq!(a.degree(), Some(1));
    }

    #[test]
    fn compose_substitutes_the_variable() {
        let r = poly_ring();
        let a = parse_element(&r, "t^2 + 1").unwrap();
        let x = parse_element(&r, "q*t").unwrap();
        let composed = a.compose(&x);
        assert_eq!(composed, parse_element(&r, "q^2*t^2 + 1").unwrap());

        let rt = trunc_ring(2);
        let b = parse_element(&rt, "t").unwrap();
        let s = parse_element(&rt, "p0 + p1*t").unwrap();
        // (p0 + p1 t)^2 in F[t]/(t^2) drops the t^2 term
        let sq = b.pow(2).compose(&s);
        assert!(sq.is_zero());
        let lin = parse_element(&rt, "t^2 + t").unwrap();
        assert_eq!(lin, b);
    }

    #[test]
    fn display_ascending_with_signs() {
        let r = poly_ring();
        let a = parse_element(&r, "p0 + p1*t + p2*t^2").unwrap();
        assert_eq!(a.to_string(), "p0 + p1*t + p2*t^2");
        let b = parse_element(&r, "-t^2 - 2*t").unwrap();
        assert_eq!(b.to_string(), "-2*t - t^2");
        let c = parse_element(&r, "(q + 1)*t").unwrap();
        assert_eq!(c.to_string(), "(q + 1)*t");
        let reparsed = parse_element(&r, &c.to_string()).unwrap();
        assert_eq!(c, reparsed);
    }

    #[test]
    fn division_only_by_scalars() {
        let r = poly_ring();
        let ok = parse_element(&r, "t/q").unwrap();
        let q = Scalar::var(r.decl(), "q").unwrap();
        assert_eq!(ok, BaseElement::variable(&r).scale(&q.recip().unwrap()));
        assert!(parse_element(&r, "1/t").is_err());
        assert!(parse_element(&r, "t^-1").is_err());
    }

    #[test]
    fn truncation_order_must_be_at_least_two() {
        let d = FieldDecl::params(vec!["q"]);
        assert!(RingData::truncated(&d, 1).is_err());
        assert!(RingData::truncated(&d, 0).is_err());
        assert!(RingData::truncated(&d, 2).is_ok());
    }
}
