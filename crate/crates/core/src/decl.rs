//! Parameter and root declarations.
//!
//! Every scalar in the engine lives over the field Q(params)[root]/(min_poly):
//! rational functions in a fixed list of formal parameters, optionally
//! extended by one algebraic symbol with a monic minimal polynomial.
//! A [`FieldDecl`] pins down that list once; all values built over it carry a
//! shared handle so that mixing declarations is caught instead of silently
//! producing nonsense.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{CoreError, Result};

/// The ring variable name reserved by the base algebra.
pub const RING_VARIABLE: &str = "t";

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One algebraic symbol together with its monic minimal polynomial.
///
/// `min_poly` stores the coefficients c_0..c_d of c_0 + c_1 x + ... + c_d x^d
/// with c_d = 1. Irreducibility is the caller's obligation; the reduction
/// rules are applied regardless.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSpec {
    name: String,
    min_poly: Vec<BigRational>,
}

impl RootSpec {
    pub fn new(name: impl Into<String>, min_poly: Vec<BigRational>) -> Result<Self> {
        let name = name.into();
        if !is_identifier(&name) || name == RING_VARIABLE {
            return Err(CoreError::UndeclaredSymbol(name));
        }
        if min_poly.len() < 2 {
            return Err(CoreError::Precondition(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if !min_poly.last().unwrap().is_one() {
            return Err(CoreError::Precondition(
                "minimal polynomial must be monic".into(),
            ));
        }
        Ok(RootSpec { name, min_poly })
    }

    /// Primitive n-th root of unity: the symbol is reduced modulo the n-th
    /// cyclotomic polynomial.
    pub fn primitive_root_of_unity(name: impl Into<String>, n: usize) -> Result<Self> {
        RootSpec::new(name, cyclotomic(n))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Degree of the minimal polynomial.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigRational] {
        &self.min_poly
    }
}

/// Coefficients of the n-th cyclotomic polynomial, computed by dividing
/// x^n - 1 by the cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic(n: usize) -> Vec<BigRational> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1
    let mut num = vec![BigRational::zero(); n + 1];
    num[0] = -BigRational::one();
    num[n] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

/// Exact univariate division, panicking on a nonzero remainder; the inputs
/// here always divide evenly.
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        for (j, dc) in den.iter().enumerate() {
            let idx = i - dd + j;
            let prod = &c * dc;
            rem[idx] = &rem[idx] - prod;
        }
        quot[i - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

/// Declaration of the formal parameters and optional algebraic root that
/// all scalars of one computation share.
#[derive(Debug, PartialEq)]
pub struct FieldDecl {
    params: Vec<String>,
    root: Option<RootSpec>,
}

/// Shared handle to a declaration.
pub type Decl = Arc<FieldDecl>;

impl FieldDecl {
    pub fn new<S: Into<String>>(params: Vec<S>, root: Option<RootSpec>) -> Result<Decl> {
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        for p in &params {
            if !is_identifier(p) || p == RING_VARIABLE {
                return Err(CoreError::UndeclaredSymbol(p.clone()));
            }
        }
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(CoreError::Precondition(format!(
                    "duplicate parameter `{p}`"
                )));
            }
        }
        if let Some(r) = &root {
            if params.contains(&r.name().to_string()) {
                return Err(CoreError::Precondition(format!(
                    "root symbol `{}` collides with a parameter",
                    r.name()
                )));
            }
        }
        Ok(Arc::new(FieldDecl { params, root }))
    }

    /// Declaration with parameters only.
    pub fn params<S: Into<String>>(params: Vec<S>) -> Decl {
        FieldDecl::new(params, None).expect("invalid parameter names")
    }

    /// Declaration with no symbols at all (plain rationals).
    pub fn rationals() -> Decl {
        FieldDecl::params(Vec::<String>::new())
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.params
    }

    pub fn root(&self) -> Option<&RootSpec> {
        self.root.as_ref()
    }

    /// Number of symbol slots in a monomial exponent vector
    /// (parameters first, root symbol last when present).
    pub fn nvars(&self) -> usize {
        self.params.len() + usize::from(self.root.is_some())
    }

    /// Slot of the root symbol, when declared.
    pub fn root_index(&self) -> Option<usize> {
        self.root.as_ref().map(|_| self.params.len())
    }

    pub fn var_name(&self, index: usize) -> &str {
        if index < self.params.len() {
            &self.params[index]
        } else {
            self.root
                .as_ref()
                .map(|r| r.name())
                .expect("variable index out of range")
        }
    }

    /// Slot of a declared symbol (parameter or root), if any.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.params.iter().position(|p| p == name) {
            return Some(i);
        }
        match &self.root {
            Some(r) if r.name() == name => Some(self.params.len()),
            _ => None,
        }
    }

    pub fn is_parameter(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name)
    }
}

/// Convenience: two handles describe the same declaration.
pub fn same_decl(a: &Decl, b: &Decl) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Display for FieldDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.params.join(", "))?;
        if let Some(r) = &self.root {
            write!(f, "[{}]", r.name())?;
        }
        Ok(())
    }
}

pub(crate) fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(poly: &[BigRational]) -> Vec<i64> {
        poly.iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn cyclotomic_small_indices() {
        assert_eq!(coeffs(&cyclotomic(1)), vec![-1, 1]);
        assert_eq!(coeffs(&cyclotomic(2)), vec![1, 1]);
        assert_eq!(coeffs(&cyclotomic(3)), vec![1, 1, 1]);
        assert_eq!(coeffs(&cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(coeffs(&cyclotomic(5)), vec![1, 1, 1, 1, 1]);
        assert_eq!(coeffs(&cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(coeffs(&cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn declaration_rejects_bad_names() {
        assert!(FieldDecl::new(vec!["t"], None).is_err());
        assert!(FieldDecl::new(vec!["2q"], None).is_err());
        assert!(FieldDecl::new(vec!["q", "q"], None).is_err());
        assert!(FieldDecl::new(vec!["q1", "p0"], None).is_ok());
    }

    #[test]
    fn root_spec_must_be_monic() {
        let two = big_rational(2, 1);
        let one = BigRational::one();
        assert!(RootSpec::new("w", vec![one.clone(), two.clone()]).is_err());
        assert!(RootSpec::new("w", vec![two, one]).is_ok());
    }

    #[test]
    fn index_layout_puts_root_last() {
        let root = RootSpec::primitive_root_of_unity("w", 3).unwrap();
        let decl = FieldDecl::new(vec!["q1", "p0"], Some(root)).unwrap();
        assert_eq!(decl.nvars(), 3);
        assert_eq!(decl.index_of("q1"), Some(0));
        assert_eq!(decl.index_of("w"), Some(2));
        assert_eq!(decl.root_index(), Some(2));
        assert_eq!(decl.index_of("t"), None);
    }
}
