//! Exact scalars: rational functions in declared parameters.
//!
//! A [`ParamPoly`] is a sparse multivariate polynomial over Q in the declared
//! parameters and optional root symbol; powers of the root are reduced
//! eagerly modulo its minimal polynomial. A [`Scalar`] is a fraction of two
//! such polynomials with a nonzero denominator.
//!
//! Equality is decided by cross-multiplication, never by computing
//! polynomial gcds, so fractions need not be in lowest terms. The stored
//! representation is still canonicalized (common monomial content removed,
//! denominator scaled to leading coefficient one) to keep printing
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decl::{same_decl, Decl};
use crate::error::{CoreError, Result};

type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over Q in the declared symbols.
#[derive(Debug, Clone)]
pub struct ParamPoly {
    decl: Decl,
    terms: BTreeMap<Monomial, BigRational>,
}

impl ParamPoly {
    pub fn zero(decl: &Decl) -> Self {
        ParamPoly {
            decl: decl.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(decl: &Decl, value: BigRational) -> Self {
        let mut p = ParamPoly::zero(decl);
        if !value.is_zero() {
            p.terms.insert(vec![0; decl.nvars()], value);
        }
        p
    }

    pub fn one(decl: &Decl) -> Self {
        ParamPoly::constant(decl, BigRational::one())
    }

    pub fn from_int(decl: &Decl, value: i64) -> Self {
        ParamPoly::constant(decl, BigRational::from(BigInt::from(value)))
    }

    /// The polynomial consisting of a single declared symbol.
    pub fn var(decl: &Decl, name: &str) -> Result<Self> {
        let idx = decl
            .index_of(name)
            .ok_or_else(|| CoreError::UndeclaredSymbol(name.to_string()))?;
        let mut mono = vec![0; decl.nvars()];
        mono[idx] = 1;
        let mut p = ParamPoly::zero(decl);
        p.terms.insert(mono, BigRational::one());
        Ok(p)
    }

    pub fn decl(&self) -> &Decl {
        &self.decl
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (mono, c) = self.terms.iter().next().unwrap();
            if mono.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn assert_same_decl(&self, other: &Self) {
        assert!(
            same_decl(&self.decl, &other.decl),
            "mismatched parameter declarations"
        );
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Reduce every power of the root symbol below the degree of its
    /// minimal polynomial.
    fn reduce_root(&mut self) {
        let Some(ridx) = self.decl.root_index() else {
            return;
        };
        let spec = self.decl.root().expect("root index without root spec");
        let d = spec.degree();
        let min_poly = spec.min_poly().to_vec();
        loop {
            let Some(key) = self
                .terms
                .keys()
                .find(|m| m[ridx] as usize >= d)
                .cloned()
            else {
                break;
            };
            let coeff = self.terms.remove(&key).unwrap();
            // root^d = -(c_0 + c_1 root + ... + c_{d-1} root^{d-1})
            for (i, mc) in min_poly.iter().take(d).enumerate() {
                if mc.is_zero() {
                    continue;
                }
                let mut mono = key.clone();
                mono[ridx] = mono[ridx] - d as u32 + i as u32;
                self.add_term(mono, -(mc * &coeff));
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero(&self.decl);
        }
        ParamPoly {
            decl: self.decl.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ParamPoly::one(&self.decl);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Leading term under the plain lexicographic key order used for storage.
    fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact division: `Some(q)` with `self = q * den` when the division by
    /// repeated leading-term elimination succeeds, `None` otherwise.
    /// No gcd computation is involved.
    pub fn div_exact(&self, den: &ParamPoly) -> Option<ParamPoly> {
        self.assert_same_decl(den);
        if den.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero(&self.decl);
        let (dm, dc) = {
            let (m, c) = den.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !dm.iter().zip(&rm).all(|(d, r)| d <= r) {
                return None;
            }
            let mono: Monomial = rm.iter().zip(&dm).map(|(r, d)| r - d).collect();
            let coeff = &rc / &dc;
            let mut step = ParamPoly::zero(&self.decl);
            step.terms.insert(mono, coeff);
            let next = &rem - &(&step * den);
            // Root reduction could in principle disturb the cancellation;
            // insist on strict progress so the loop always terminates.
            if let (Some((nm, _)), Some(_)) = (next.leading(), rem.leading()) {
                if nm >= &rm {
                    return None;
                }
            }
            quot = &quot + &step;
            rem = next;
        }
        Some(quot)
    }

    /// `Some(c)` when `self = c * other` for a nonzero rational `c`.
    pub fn rational_multiple_of(&self, other: &ParamPoly) -> Option<BigRational> {
        self.assert_same_decl(other);
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, oc) = other.leading().unwrap();
        let sc = self.terms.get(m)?;
        let c = sc / oc;
        for (mono, ov) in &other.terms {
            match self.terms.get(mono) {
                Some(sv) if *sv == &c * ov => {}
                _ => return None,
            }
        }
        Some(c)
    }
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        same_decl(&self.decl, &other.decl) && self.terms == other.terms
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.assert_same_decl(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.assert_same_decl(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.assert_same_decl(rhs);
        let mut out = ParamPoly::zero(&self.decl);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(mono, ca * cb);
            }
        }
        out.reduce_root();
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            decl: self.decl.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            let mono_str = render_monomial(&self.decl, mono);
            let body = match (&mono_str, abs.is_one()) {
                (None, _) => format!("{abs}"),
                (Some(m), true) => m.clone(),
                (Some(m), false) => format!("{abs}*{m}"),
            };
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

fn render_monomial(decl: &Decl, mono: &[u32]) -> Option<String> {
    let mut parts = Vec::new();
    for (i, &e) in mono.iter().enumerate() {
        if e == 1 {
            parts.push(decl.var_name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", decl.var_name(i), e));
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// A fraction of two parameter polynomials with nonzero denominator.
///
/// Arithmetic never inspects whether the denominator could vanish under a
/// specialization; it only requires it to be nonzero as a polynomial.
#[derive(Debug, Clone)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Scalar {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        Ok(Scalar { num, den }.canonicalized())
    }

    pub fn from_poly(num: ParamPoly) -> Self {
        let den = ParamPoly::one(num.decl());
        Scalar { num, den }.canonicalized()
    }

    pub fn zero(decl: &Decl) -> Self {
        Scalar::from_poly(ParamPoly::zero(decl))
    }

    pub fn one(decl: &Decl) -> Self {
        Scalar::from_poly(ParamPoly::one(decl))
    }

    pub fn from_int(decl: &Decl, value: i64) -> Self {
        Scalar::from_poly(ParamPoly::from_int(decl, value))
    }

    pub fn from_rational(decl: &Decl, value: BigRational) -> Self {
        Scalar::from_poly(ParamPoly::constant(decl, value))
    }

    /// A declared parameter or root symbol as a scalar.
    pub fn var(decl: &Decl, name: &str) -> Result<Self> {
        Ok(Scalar::from_poly(ParamPoly::var(decl, name)?))
    }

    pub fn decl(&self) -> &Decl {
        self.num.decl()
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value as a rational constant, if the fraction reduces to one.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_rational()?;
        let d = self.den.as_rational()?;
        Some(n / d)
    }

    fn canonicalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = ParamPoly::one(self.num.decl());
            return self;
        }
        // Shared monomial content of numerator and denominator.
        let nvars = self.num.decl().nvars();
        let mut content = vec![u32::MAX; nvars];
        for mono in self.num.terms.keys().chain(self.den.terms.keys()) {
            for (c, &e) in content.iter_mut().zip(mono) {
                *c = (*c).min(e);
            }
        }
        if content.iter().any(|&c| c > 0) {
            let strip = |p: &ParamPoly| ParamPoly {
                decl: p.decl.clone(),
                terms: p
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mono: Monomial =
                            m.iter().zip(&content).map(|(e, s)| e - s).collect();
                        (mono, c.clone())
                    })
                    .collect(),
            };
            self.num = strip(&self.num);
            self.den = strip(&self.den);
        }
        // Clear coefficient denominators and the joint integer content, so
        // both polynomials carry coprime integer coefficients and the
        // denominator's leading coefficient is positive.
        let mut lcm = BigInt::one();
        for c in self.num.terms.values().chain(self.den.terms.values()) {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let mut gcd = BigInt::zero();
        let lcm_ratio = BigRational::from(lcm);
        for c in self.num.terms.values().chain(self.den.terms.values()) {
            let scaled = c * &lcm_ratio;
            debug_assert!(scaled.denom().is_one());
            gcd = num_integer::gcd(gcd, scaled.numer().clone());
        }
        let mut factor = lcm_ratio / BigRational::from(gcd);
        if self.den.leading().unwrap().1.is_negative() {
            factor = -factor;
        }
        if !factor.is_one() {
            self.num = self.num.scale(&factor);
            self.den = self.den.scale(&factor);
        }
        self
    }

    fn assert_same_decl(&self, other: &Self) {
        assert!(
            same_decl(self.decl(), other.decl()),
            "mismatched parameter declarations"
        );
    }

    /// Checked addition; errors instead of panicking on declaration mismatch.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        if !same_decl(self.decl(), other.decl()) {
            return Err(CoreError::DeclMismatch);
        }
        Ok(self + other)
    }

    /// Checked multiplication; errors instead of panicking on mismatch.
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if !same_decl(self.decl(), other.decl()) {
            return Err(CoreError::DeclMismatch);
        }
        Ok(self * other)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Scalar {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .canonicalized())
    }

    pub fn div_checked(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Scalar::one(self.decl());
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute scalars for declared parameters. Unbound parameters stay
    /// formal; the root symbol cannot be bound. Errors if a denominator
    /// specializes to zero.
    pub fn specialize(&self, bindings: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let decl = self.decl();
        for (name, value) in bindings {
            if !decl.is_parameter(name) {
                return Err(CoreError::UndeclaredSymbol(name.clone()));
            }
            if !same_decl(decl, value.decl()) {
                return Err(CoreError::DeclMismatch);
            }
        }
        let num = specialize_poly(&self.num, bindings)?;
        let den = specialize_poly(&self.den, bindings)?;
        if den.is_zero() {
            return Err(CoreError::ZeroDenominator);
        }
        num.div_checked(&den)
    }
}

fn specialize_poly(p: &ParamPoly, bindings: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    let decl = p.decl();
    let bound: Vec<Option<&Scalar>> = (0..decl.nvars())
        .map(|i| bindings.get(decl.var_name(i)))
        .collect();
    let mut acc = Scalar::zero(decl);
    for (mono, coeff) in &p.terms {
        let mut residual = vec![0u32; decl.nvars()];
        let mut factor = Scalar::from_rational(decl, coeff.clone());
        for (i, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match bound[i] {
                Some(value) => factor = &factor * &value.pow(e as i64)?,
                None => residual[i] = e,
            }
        }
        if residual.iter().any(|&e| e > 0) {
            let mut m = ParamPoly::zero(decl);
            m.terms.insert(residual, BigRational::one());
            factor = &factor * &Scalar::from_poly(m);
        }
        acc = &acc + &factor;
    }
    Ok(acc)
}

impl PartialEq for Scalar {
    /// Cross-multiplication equality; scalars over different declarations
    /// are never equal.
    fn eq(&self, other: &Self) -> bool {
        if !same_decl(self.decl(), other.decl()) {
            return false;
        }
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_decl(rhs);
        Scalar {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .canonicalized()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_decl(rhs);
        Scalar {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .canonicalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_str = self.num.to_string();
        if self.num.term_count() > 1 {
            write!(f, "({num_str})")?;
        } else {
            write!(f, "{num_str}")?;
        }
        let den_str = self.den.to_string();
        if display_atomic(&self.den) {
            write!(f, "/{den_str}")
        } else {
            write!(f, "/({den_str})")
        }
    }
}

/// A denominator prints without parentheses only when it is a single
/// positive factor: an integer, or one symbol raised to a power.
fn display_atomic(p: &ParamPoly) -> bool {
    if p.terms.len() != 1 {
        return false;
    }
    let (mono, coeff) = p.terms.iter().next().unwrap();
    if coeff.is_negative() || !coeff.denom().is_one() {
        return false;
    }
    let factors = mono.iter().filter(|&&e| e > 0).count();
    (factors == 1 && coeff.is_one()) || factors == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decl::{FieldDecl, RootSpec};

    fn decl_qp() -> Decl {
        FieldDecl::params(vec!["q", "p0"])
    }

    fn var(decl: &Decl, name: &str) -> Scalar {
        Scalar::var(decl, name).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        let d = FieldDecl::rationals();
        let half = Scalar::new(ParamPoly::from_int(&d, 1), ParamPoly::from_int(&d, 2)).unwrap();
        let third = Scalar::new(ParamPoly::from_int(&d, 1), ParamPoly::from_int(&d, 3)).unwrap();
        let sum = &half + &third;
        let expect =
            Scalar::new(ParamPoly::from_int(&d, 5), ParamPoly::from_int(&d, 6)).unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn fractions_cancel_via_cross_multiplication() {
        let d = decl_qp();
        let p0 = var(&d, "p0");
        let q = var(&d, "q");
        let a = p0.div_checked(&q).unwrap();
        let b = (&-&p0).div_checked(&q).unwrap();
        assert!((&a + &b).is_zero());

        // (q+1)/2 + (q-1)/2 = q
        let one = Scalar::one(&d);
        let two = Scalar::from_int(&d, 2);
        let s1 = (&q + &one).div_checked(&two).unwrap();
        let s2 = (&q - &one).div_checked(&two).unwrap();
        assert_eq!(&s1 + &s2, q);
    }

    #[test]
    fn root_reduction_is_eager() {
        let root = RootSpec::primitive_root_of_unity("w", 3).unwrap();
        let d = FieldDecl::new(vec!["q"], Some(root)).unwrap();
        let w = var(&d, "w");
        // w * w = -w - 1 modulo w^2 + w + 1
        let w2 = &w * &w;
        let expect = &-&w - &Scalar::one(&d);
        assert_eq!(w2, expect);
        // w^3 = 1
        assert!(w.pow(3).unwrap().is_one());
    }

    #[test]
    fn root_powers_for_small_cyclotomics() {
        for n in [3usize, 4, 5, 6] {
            let root = RootSpec::primitive_root_of_unity("z", n).unwrap();
            let d = FieldDecl::new(vec!["q"], Some(root)).unwrap();
            let z = var(&d, "z");
            assert!(z.pow(n as i64).unwrap().is_one(), "z^{n} should be 1");
            assert!(!z.pow(1).unwrap().is_one());
        }
    }

    #[test]
    fn inverse_of_symbol() {
        let d = decl_qp();
        let q = var(&d, "q");
        let qinv = q.recip().unwrap();
        assert!((&q * &qinv).is_one());
        assert!(Scalar::zero(&d).recip().is_err());
    }

    #[test]
    fn zero_test_at_root_of_unity() {
        let root = RootSpec::primitive_root_of_unity("w", 3).unwrap();
        let d = FieldDecl::new(vec!["q1"], Some(root)).unwrap();
        let q1 = var(&d, "q1");
        let one = Scalar::one(&d);
        let qint3 = &(&one + &q1) + &(&q1 * &q1);
        assert!(!qint3.is_zero());
        let w = var(&d, "w");
        let bound = BTreeMap::from([("q1".to_string(), w)]);
        assert!(qint3.specialize(&bound).unwrap().is_zero());
    }

    #[test]
    fn specialize_is_a_homomorphism_spot() {
        let d = decl_qp();
        let q = var(&d, "q");
        let p0 = var(&d, "p0");
        let bind = BTreeMap::from([("q".to_string(), Scalar::from_int(&d, 1))]);
        let a = &(&q + &p0) * &(&q - &p0);
        let lhs = a.specialize(&bind).unwrap();
        let rhs = &q.specialize(&bind).unwrap().pow(2).unwrap()
            - &p0.specialize(&bind).unwrap().pow(2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialize_rejects_vanishing_denominator() {
        let d = decl_qp();
        let q = var(&d, "q");
        let p0 = var(&d, "p0");
        let two = Scalar::from_int(&d, 2);
        let qm1 = &q - &Scalar::one(&d);
        let s = (&two * &p0).div_checked(&qm1).unwrap();
        let bind = BTreeMap::from([("q".to_string(), Scalar::from_int(&d, 1))]);
        assert_eq!(s.specialize(&bind), Err(CoreError::ZeroDenominator));
    }

    #[test]
    fn mismatched_declarations_error() {
        let d1 = decl_qp();
        let d2 = FieldDecl::params(vec!["q"]);
        let a = var(&d1, "q");
        let b = var(&d2, "q");
        assert_eq!(a.try_add(&b), Err(CoreError::DeclMismatch));
        assert_ne!(a, b);
    }

    #[test]
    fn canonical_form_strips_monomial_content() {
        let d = decl_qp();
        let q = var(&d, "q");
        let p0 = var(&d, "p0");
        let s = (&(&q * &p0)).div_checked(&p0).unwrap();
        assert_eq!(s.to_string(), "q");
        // constant factors stay on the denominator as integers
        let two_q = &Scalar::from_int(&d, 2) * &q;
        let half = Scalar::one(&d).div_checked(&two_q).unwrap();
        assert_eq!(half.to_string(), "1/(2*q)");
    }

    #[test]
    fn display_round_trip_shapes() {
        let d = decl_qp();
        let q = var(&d, "q");
        let p0 = var(&d, "p0");
        let one = Scalar::one(&d);
        let s = (&q + &one).div_checked(&Scalar::from_int(&d, 2)).unwrap();
        assert_eq!(s.to_string(), "(q + 1)/2");
        let neg = &-&Scalar::from_int(&d, 2) * &(&q * &p0);
        assert_eq!(neg.to_string(), "-2*q*p0");
        let frac = (&Scalar::from_int(&d, 2) * &p0)
            .div_checked(&(&q - &one))
            .unwrap();
        assert_eq!(frac.to_string(), "2*p0/(q - 1)");
    }

    #[test]
    fn exact_division_without_gcd() {
        let d = decl_qp();
        let q = ParamPoly::var(&d, "q").unwrap();
        let one = ParamPoly::one(&d);
        let q2m1 = &(&q * &q) - &one;
        let qm1 = &q - &one;
        let quot = q2m1.div_exact(&qm1).unwrap();
        assert_eq!(quot, &q + &one);
        assert!(qm1.div_exact(&q2m1).is_none());
    }

    #[test]
    fn zero_denominator_rejected() {
        let d = decl_qp();
        assert!(Scalar::new(ParamPoly::one(&d), ParamPoly::zero(&d)).is_err());
    }
}
