//! Twisted derivations on the base algebra.
//!
//! A twist is a pair `(sigma, dsigma)` where `sigma` is the algebra
//! endomorphism sending the ring variable to `sigma(t)` and `dsigma` is the
//! sigma-derivation with `dsigma(ab) = dsigma(a) b + sigma(a) dsigma(b)`,
//! determined by its value on `t`. On a truncated ring the pair is only
//! well defined when both maps kill `t^N`; the residual coefficients are
//! reported as constraints on the parameters.

use std::fmt;

use crate::base::{same_ring, BaseElement, BaseRing};
use crate::error::{CoreError, Result};
use crate::linalg::{covered_by, GateMode, LinearOutcome, LinearSystem};
use crate::scalar::Scalar;

/// A twisted derivation datum on a base ring: the images of the ring
/// variable under the endomorphism and under the derivation.
#[derive(Debug, Clone)]
pub struct TwistData {
    ring: BaseRing,
    sigma_t: BaseElement,
    dsigma_t: BaseElement,
}

impl TwistData {
    pub fn new(ring: &BaseRing, sigma_t: BaseElement, dsigma_t: BaseElement) -> Result<Self> {
        if !same_ring(sigma_t.ring(), ring) || !same_ring(dsigma_t.ring(), ring) {
            return Err(CoreError::RingMismatch);
        }
        Ok(TwistData {
            ring: ring.clone(),
            sigma_t,
            dsigma_t,
        })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn sigma_t(&self) -> &BaseElement {
        &self.sigma_t
    }

    pub fn dsigma_t(&self) -> &BaseElement {
        &self.dsigma_t
    }

    /// Apply the endomorphism: substitute `sigma(t)` for the variable.
    pub fn apply_sigma(&self, a: &BaseElement) -> BaseElement {
        a.compose(&self.sigma_t)
    }

    /// `dsigma(t^k)`, computed through the product rule recursion
    /// `dsigma(t^{k+1}) = dsigma(t) t^k + sigma(t) dsigma(t^k)`.
    pub fn dsigma_power(&self, k: usize) -> BaseElement {
        let mut acc = BaseElement::zero(&self.ring);
        if k == 0 {
            return acc;
        }
        let t = BaseElement::variable(&self.ring);
        let mut t_pow = BaseElement::one(&self.ring);
        for _ in 0..k {
            // acc currently holds dsigma(t^i), t_pow holds t^i
            acc = self.dsigma_t.mul(&t_pow).add(&self.sigma_t.mul(&acc));
            t_pow = t_pow.mul(&t);
        }
        acc
    }

    /// The closed form `(sum_{j<k} sigma(t)^j t^{k-1-j}) * dsigma(t)`;
    /// agrees with [`Self::dsigma_power`] and exists as an independent
    /// cross-check.
    pub fn dsigma_power_sum(&self, k: usize) -> BaseElement {
        let mut sum = BaseElement::zero(&self.ring);
        if k == 0 {
            return sum;
        }
        let t = BaseElement::variable(&self.ring);
        for j in 0..k {
            let term = self.sigma_t.pow(j as u32).mul(&t.pow((k - 1 - j) as u32));
            sum = sum.add(&term);
        }
        sum.mul(&self.dsigma_t)
    }

    /// Apply the derivation coefficientwise, sharing one incremental pass
    /// of the power recursion across all coefficients.
    pub fn apply_dsigma(&self, a: &BaseElement) -> BaseElement {
        let mut acc = BaseElement::zero(&self.ring);
        let t = BaseElement::variable(&self.ring);
        let mut d = BaseElement::zero(&self.ring);
        let mut t_pow = BaseElement::one(&self.ring);
        for (k, c) in a.coeffs().iter().enumerate() {
            if k > 0 {
                d = self.dsigma_t.mul(&t_pow).add(&self.sigma_t.mul(&d));
                t_pow = t_pow.mul(&t);
            }
            if k == 0 || c.is_zero() {
                continue;
            }
            acc = acc.add(&d.scale(c));
        }
        acc
    }

    /// On a truncated ring, the parameter constraints under which the twist
    /// descends from the polynomial ring; trivial on the polynomial ring.
    pub fn check_well_defined(&self) -> WellDefinedReport {
        let Some(n) = self.ring.truncation() else {
            return WellDefinedReport {
                sigma_ok: true,
                dsigma_ok: true,
                constraints: Vec::new(),
            };
        };
        let mut constraints: Vec<Scalar> = Vec::new();
        let push = |c: &Scalar, bucket: &mut Vec<Scalar>| {
            if !c.is_zero() && !bucket.contains(c) {
                bucket.push(c.clone());
            }
        };
        // sigma(t^N) = sigma(t)^N must vanish in the quotient.
        let sigma_residual = self.sigma_t.pow(n as u32);
        for c in sigma_residual.coeffs() {
            push(c, &mut constraints);
        }
        let sigma_ok = sigma_residual.is_zero();
        // dsigma(t^N) must vanish; one recursion step past the top basis
        // power, carried out inside the quotient.
        let dsigma_residual = {
            let t_top = BaseElement::monomial(&self.ring, n - 1, Scalar::one(self.ring.decl()));
            self.dsigma_t
                .mul(&t_top)
                .add(&self.sigma_t.mul(&self.dsigma_power(n - 1)))
        };
        for c in dsigma_residual.coeffs() {
            push(c, &mut constraints);
        }
        let dsigma_ok = dsigma_residual.is_zero();
        WellDefinedReport {
            sigma_ok,
            dsigma_ok,
            constraints,
        }
    }

    /// The annihilator of the derivation: all `a` with `a * dsigma(b) = 0`
    /// for every `b`.
    pub fn annihilator(&self) -> Result<Annihilator> {
        if self.dsigma_t.is_zero() {
            return Ok(Annihilator::WholeRing);
        }
        match self.ring.truncation() {
            None => {
                // The polynomial ring is a domain and dsigma(t) is nonzero,
                // so only zero annihilates it.
                Ok(Annihilator::Basis(Vec::new()))
            }
            Some(n) => {
                let decl = self.ring.decl();
                let mut sys = LinearSystem::new(decl, n);
                let images: Vec<BaseElement> =
                    (1..n).map(|k| self.dsigma_power(k)).collect();
                for img in &images {
                    // a * img = 0, one equation per coefficient of the product
                    for m in 0..n {
                        let row: Vec<Scalar> = (0..n)
                            .map(|i| {
                                if i <= m {
                                    img.coeff(m - i)
                                } else {
                                    Scalar::zero(decl)
                                }
                            })
                            .collect();
                        sys.push_row(row, Scalar::zero(decl));
                    }
                }
                match sys.solve(&GateMode::Generic)? {
                    LinearOutcome::Solved { nullspace, .. } => {
                        let basis = nullspace
                            .into_iter()
                            .map(|v| BaseElement::from_coeffs(&self.ring, v))
                            .collect();
                        Ok(Annihilator::Basis(basis))
                    }
                    LinearOutcome::Inconsistent { .. } => {
                        unreachable!("homogeneous system cannot be inconsistent")
                    }
                }
            }
        }
    }
}

impl fmt::Display for TwistData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma(t) = {}, dsigma(t) = {} on {}",
            self.sigma_t, self.dsigma_t, self.ring
        )
    }
}

/// Outcome of the truncated-ring well-definedness check.
#[derive(Debug, Clone)]
pub struct WellDefinedReport {
    pub sigma_ok: bool,
    pub dsigma_ok: bool,
    /// Parameter expressions that must vanish for the twist to descend.
    pub constraints: Vec<Scalar>,
}

impl WellDefinedReport {
    pub fn ok(&self) -> bool {
        self.sigma_ok && self.dsigma_ok
    }
}

/// The annihilator ideal of a derivation, either everything (zero
/// derivation) or a finite basis of the solution space.
#[derive(Debug, Clone)]
pub enum Annihilator {
    WholeRing,
    Basis(Vec<BaseElement>),
}

/// Does the endomorphism map the annihilator of the derivation into
/// itself? This is one of the two hypotheses of the twisted Jacobi
/// identity.
pub fn check_condition3(twist: &TwistData) -> Result<bool> {
    match twist.annihilator()? {
        Annihilator::WholeRing => Ok(true),
        Annihilator::Basis(basis) => {
            if basis.is_empty() {
                return Ok(true);
            }
            let decl = twist.ring().decl();
            let dim = basis
                .iter()
                .map(|b| b.coeffs().len())
                .max()
                .unwrap_or(0);
            for a in &basis {
                let image = twist.apply_sigma(a);
                let rows = dim.max(image.coeffs().len());
                let mut sys = LinearSystem::new(decl, basis.len());
                for m in 0..rows {
                    let row: Vec<Scalar> = basis.iter().map(|b| b.coeff(m)).collect();
                    sys.push_row(row, image.coeff(m));
                }
                match sys.solve(&GateMode::Generic)? {
                    LinearOutcome::Solved { .. } => {}
                    LinearOutcome::Inconsistent { .. } => return Ok(false),
                }
            }
            Ok(true)
        }
    }
}

/// The degrees of freedom in a delta solution.
#[derive(Debug, Clone)]
pub enum DeltaFreedom {
    /// Every ring element satisfies the compatibility equation.
    WholeSpace,
    /// The affine solution set is `particular + span(basis)`; an empty
    /// basis means the solution is unique.
    Span(Vec<BaseElement>),
}

/// Solution set of `dsigma(sigma(a)) = delta * sigma(dsigma(a))` over all
/// ring elements `a`, with `delta` an element of the base ring.
#[derive(Debug, Clone)]
pub struct DeltaSolution {
    pub particular: BaseElement,
    pub freedom: DeltaFreedom,
    /// Expressions divided by while solving, under the caller's
    /// assumptions.
    pub assumed_nonzero: Vec<String>,
}

impl DeltaSolution {
    pub fn is_unique(&self) -> bool {
        matches!(&self.freedom, DeltaFreedom::Span(b) if b.is_empty())
    }
}

/// Solve for the twisting element `delta`.
///
/// On the polynomial ring the equation for `a = t` is divided out exactly
/// and the result is verified on `t^k` for `k` up to `bound`; on a
/// truncated ring the full finite linear system over the coefficient
/// vector of `delta` is solved. Divisions are gated by `mode`.
pub fn solve_delta(twist: &TwistData, mode: &GateMode, bound: usize) -> Result<DeltaSolution> {
    match twist.ring().truncation() {
        None => solve_delta_polynomial(twist, mode, bound.max(2)),
        Some(n) => solve_delta_truncated(twist, mode, n),
    }
}

fn delta_images(twist: &TwistData, k: usize) -> (BaseElement, BaseElement) {
    let t = BaseElement::variable(twist.ring());
    let tk = t.pow(k as u32);
    let v = twist.apply_dsigma(&twist.apply_sigma(&tk));
    let w = twist.apply_sigma(&twist.apply_dsigma(&tk));
    (v, w)
}

fn solve_delta_polynomial(
    twist: &TwistData,
    mode: &GateMode,
    bound: usize,
) -> Result<DeltaSolution> {
    let ring = twist.ring();
    let images: Vec<(BaseElement, BaseElement)> =
        (1..=bound).map(|k| delta_images(twist, k)).collect();
    let Some(first) = images.iter().position(|(_, w)| !w.is_zero()) else {
        // No equation constrains delta; it is free iff no left side is
        // nonzero either.
        if let Some((v, _)) = images.iter().find(|(v, _)| !v.is_zero()) {
            return Err(CoreError::Inconsistent(format!(
                "no twisting element can produce {v} from a zero right side"
            )));
        }
        return Ok(DeltaSolution {
            particular: BaseElement::zero(ring),
            freedom: DeltaFreedom::WholeSpace,
            assumed_nonzero: Vec::new(),
        });
    };
    let (v, w) = &images[first];
    let (delta, assumed) = divide_polynomial(v, w, mode)?;
    for (k, (v, w)) in images.iter().enumerate() {
        let residual = v.sub(&delta.mul(w));
        if !residual.is_zero() {
            return Err(CoreError::Inconsistent(format!(
                "twisting element fails on t^{}: residual {residual}",
                k + 1
            )));
        }
    }
    // The ring is a domain and some right side is nonzero, so the solution
    // is unique.
    Ok(DeltaSolution {
        particular: delta,
        freedom: DeltaFreedom::Span(Vec::new()),
        assumed_nonzero: assumed,
    })
}

/// Exact polynomial long division `num / den` with gated divisions by the
/// leading coefficient of `den`. A nonzero remainder is an inconsistency.
fn divide_polynomial(
    num: &BaseElement,
    den: &BaseElement,
    mode: &GateMode,
) -> Result<(BaseElement, Vec<String>)> {
    let ring = num.ring();
    let decl = ring.decl();
    let dd = den.degree().expect("divisor is nonzero");
    let lead = den.coeff(dd);
    let mut assumed = Vec::new();
    if lead.num().as_rational().is_none() {
        match mode {
            GateMode::Generic => {}
            GateMode::Gated(assumptions) => {
                if !covered_by(lead.num(), assumptions) {
                    return Err(CoreError::AssumptionRequired(lead.num().to_string()));
                }
                assumed.push(lead.num().to_string());
            }
        }
    }
    let lead_inv = lead.recip().expect("leading coefficient is nonzero");
    let mut rem = num.clone();
    let mut quot_coeffs: Vec<Scalar> = Vec::new();
    while let Some(rd) = rem.degree() {
        if rd < dd {
            break;
        }
        let c = &rem.coeff(rd) * &lead_inv;
        let shift = rd - dd;
        if quot_coeffs.len() < shift + 1 {
            quot_coeffs.resize(shift + 1, Scalar::zero(decl));
        }
        quot_coeffs[shift] = c.clone();
        let step = BaseElement::monomial(ring, shift, c);
        rem = rem.sub(&step.mul(den));
    }
    if !rem.is_zero() {
        return Err(CoreError::Inconsistent(format!(
            "twisting element is not polynomial: remainder {rem}"
        )));
    }
    Ok((BaseElement::from_coeffs(ring, quot_coeffs), assumed))
}

fn solve_delta_truncated(twist: &TwistData, mode: &GateMode, n: usize) -> Result<DeltaSolution> {
    let ring = twist.ring();
    let decl = ring.decl();
    let mut sys = LinearSystem::new(decl, n);
    let images: Vec<(BaseElement, BaseElement)> =
        (1..n).map(|k| delta_images(twist, k)).collect();
    for (v, w) in &images {
        for m in 0..n {
            let row: Vec<Scalar> = (0..n)
                .map(|i| {
                    if i <= m {
                        w.coeff(m - i)
                    } else {
                        Scalar::zero(decl)
                    }
                })
                .collect();
            sys.push_row(row, v.coeff(m));
        }
    }
    match sys.solve(mode)? {
        LinearOutcome::Inconsistent { residual } => Err(CoreError::Inconsistent(format!(
            "twisting element system is unsolvable: residual {residual}"
        ))),
        LinearOutcome::Solved {
            particular,
            nullspace,
            assumed_nonzero,
        } => {
            let delta = BaseElement::from_coeffs(ring, particular);
            // Defensive re-check of the particular solution on every basis
            // power; the system above already encodes these equations.
            for (k, (v, w)) in images.iter().enumerate() {
                let residual = v.sub(&delta.mul(w));
                if !residual.is_zero() {
                    return Err(CoreError::Inconsistent(format!(
                        "twisting element fails on t^{}: residual {residual}",
                        k + 1
                    )));
                }
            }
            let freedom = if nullspace.len() == n {
                DeltaFreedom::WholeSpace
            } else {
                let basis: Vec<BaseElement> = nullspace
                    .into_iter()
                    .map(|vcoeffs| BaseElement::from_coeffs(ring, vcoeffs))
                    .collect();
                debug_assert!(basis.iter().all(|dir| {
                    images.iter().all(|(_, w)| dir.mul(w).is_zero())
                }));
                DeltaFreedom::Span(basis)
            };
            Ok(DeltaSolution {
                particular: delta,
                freedom,
                assumed_nonzero,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{parse_element, RingData};
    use crate::decl::{FieldDecl, RootSpec};
    use crate::parse::parse_scalar;

    fn poly_twist(params: Vec<&str>, sigma: &str, dsigma: &str) -> TwistData {
        let decl = FieldDecl::params(params);
        let ring = RingData::polynomial(&decl);
        TwistData::new(
            &ring,
            parse_element(&ring, sigma).unwrap(),
            parse_element(&ring, dsigma).unwrap(),
        )
        .unwrap()
    }

    fn trunc_twist(params: Vec<&str>, n: usize, sigma: &str, dsigma: &str) -> TwistData {
        let decl = FieldDecl::params(params);
        let ring = RingData::truncated(&decl, n).unwrap();
        TwistData::new(
            &ring,
            parse_element(&ring, sigma).unwrap(),
            parse_element(&ring, dsigma).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn classical_derivative_of_powers() {
        let tw = poly_twist(vec![], "t", "1");
        let ring = tw.ring().clone();
        for k in 1..6usize {
            let expect = parse_element(&ring, &format!("{k}*t^{}", k - 1)).unwrap();
            assert_eq!(tw.dsigma_power(k), expect);
        }
    }

    #[test]
    fn q_difference_powers_carry_q_integers() {
        let tw = poly_twist(vec!["q", "p0"], "q*t", "p0");
        let ring = tw.ring().clone();
        // dsigma(t^3) = p0 (1 + q + q^2) t^2
        let expect = parse_element(&ring, "p0*(1 + q + q^2)*t^2").unwrap();
        assert_eq!(tw.dsigma_power(3), expect);
    }

    #[test]
    fn recursion_matches_closed_sum() {
        let tw = poly_twist(vec!["q", "p0", "p1"], "q*t + 1", "p0 + p1*t^2");
        for k in 0..7 {
            assert_eq!(tw.dsigma_power(k), tw.dsigma_power_sum(k));
        }
        let tr = trunc_twist(vec!["q1", "q2", "p1"], 4, "q1*t + q2*t^2", "p1*t");
        for k in 0..6 {
            assert_eq!(tr.dsigma_power(k), tr.dsigma_power_sum(k));
        }
    }

    #[test]
    fn product_rule_spot_check() {
        let tw = poly_twist(vec!["q", "p0"], "q*t", "p0 + t");
        let ring = tw.ring().clone();
        let a = parse_element(&ring, "t^2 + 1").unwrap();
        let b = parse_element(&ring, "t^3 - 2*t").unwrap();
        let lhs = tw.apply_dsigma(&a.mul(&b));
        let rhs = tw
            .apply_dsigma(&a)
            .mul(&b)
            .add(&tw.apply_sigma(&a).mul(&tw.apply_dsigma(&b)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn well_definedness_constraints_on_truncated_ring() {
        // With sigma(t) starting at t, only the derivation constrains the
        // parameters: p0 (1 + q1 + q1^2) must vanish.
        let tw = trunc_twist(
            vec!["q1", "q2", "p0", "p1", "p2"],
            3,
            "q1*t + q2*t^2",
            "p0 + p1*t + p2*t^2",
        );
        let report = tw.check_well_defined();
        assert!(report.sigma_ok);
        assert!(!report.dsigma_ok);
        let decl = tw.ring().decl();
        let expect = parse_scalar(decl, "p0*(1 + q1 + q1^2)").unwrap();
        assert_eq!(report.constraints, vec![expect]);

        // A constant term in sigma(t) breaks the endomorphism too.
        let bad = trunc_twist(vec!["q0", "q1"], 3, "q0 + q1*t", "0");
        let report = bad.check_well_defined();
        assert!(!report.sigma_ok);
        let q0cubed = parse_scalar(bad.ring().decl(), "q0^3").unwrap();
        assert!(report.constraints.contains(&q0cubed));
    }

    #[test]
    fn root_of_unity_restores_well_definedness() {
        let root = RootSpec::primitive_root_of_unity("w", 3).unwrap();
        let decl = FieldDecl::new(vec!["q2", "p0", "p1", "p2"], Some(root)).unwrap();
        let ring = RingData::truncated(&decl, 3).unwrap();
        let tw = TwistData::new(
            &ring,
            parse_element(&ring, "w*t + q2*t^2").unwrap(),
            parse_element(&ring, "p0 + p1*t + p2*t^2").unwrap(),
        )
        .unwrap();
        let report = tw.check_well_defined();
        assert!(report.sigma_ok, "w^3 = 1 makes sigma descend");
        assert!(report.dsigma_ok, "1 + w + w^2 = 0 clears the residual");
        assert!(report.constraints.is_empty());
    }

    #[test]
    fn annihilator_cases() {
        // Zero derivation annihilates everything.
        let zero = poly_twist(vec!["q"], "q*t", "0");
        assert!(matches!(zero.annihilator().unwrap(), Annihilator::WholeRing));

        // Nonzero derivation on the polynomial ring: trivial annihilator.
        let poly = poly_twist(vec!["q", "p0"], "q*t", "p0");
        let Annihilator::Basis(basis) = poly.annihilator().unwrap() else {
            panic!("expected a basis");
        };
        assert!(basis.is_empty());

        // Truncated ring with dsigma(t) divisible by t: t^2 survives.
        let tr = trunc_twist(vec!["q1", "q2", "p1", "p2"], 3, "q1*t + q2*t^2", "p1*t + p2*t^2");
        let Annihilator::Basis(basis) = tr.annihilator().unwrap() else {
            panic!("expected a basis");
        };
        let ring = tr.ring().clone();
        assert_eq!(basis, vec![parse_element(&ring, "t^2").unwrap()]);
    }

    #[test]
    fn endomorphism_stability_of_the_annihilator() {
        let tr = trunc_twist(vec!["q1", "q2", "p1", "p2"], 3, "q1*t + q2*t^2", "p1*t + p2*t^2");
        assert!(check_condition3(&tr).unwrap());

        // sigma with a constant term pushes t^2 out of the annihilator.
        let bad = trunc_twist(vec!["q0", "q1", "p1", "p2"], 3, "q0 + q1*t", "p1*t + p2*t^2");
        assert!(!check_condition3(&bad).unwrap());

        let poly = poly_twist(vec!["q", "p0"], "q*t", "p0");
        assert!(check_condition3(&poly).unwrap());
    }

    #[test]
    fn delta_for_the_q_difference_twist() {
        let tw = poly_twist(vec!["q", "p0"], "q*t", "p0");
        let mode = GateMode::gated_from_exprs(tw.ring().decl(), &["p0"]).unwrap();
        let sol = solve_delta(&tw, &mode, 6).unwrap();
        let ring = tw.ring().clone();
        assert_eq!(sol.particular, parse_element(&ring, "q").unwrap());
        assert!(sol.is_unique());
        assert_eq!(sol.assumed_nonzero, vec!["p0".to_string()]);

        // Without the assumption the division is refused.
        let err = solve_delta(&tw, &GateMode::Gated(Vec::new()), 6).unwrap_err();
        assert_eq!(err, CoreError::AssumptionRequired("p0".to_string()));
    }

    #[test]
    fn delta_for_the_classical_twist_is_one() {
        let tw = poly_twist(vec![], "t", "1");
        let sol = solve_delta(&tw, &GateMode::Gated(Vec::new()), 6).unwrap();
        assert_eq!(sol.particular, parse_element(tw.ring(), "1").unwrap());
        assert!(sol.is_unique());
        assert!(sol.assumed_nonzero.is_empty());
    }

    #[test]
    fn delta_free_when_derivation_vanishes() {
        let tw = poly_twist(vec!["q"], "q*t", "0");
        let sol = solve_delta(&tw, &GateMode::Generic, 6).unwrap();
        assert!(matches!(sol.freedom, DeltaFreedom::WholeSpace));
        assert!(sol.particular.is_zero());
    }

    #[test]
    fn delta_on_truncated_ring_has_free_directions() {
        let tw = trunc_twist(vec!["q1", "p1"], 3, "q1*t", "p1*t");
        let mode = GateMode::gated_from_exprs(tw.ring().decl(), &["q1", "p1"]).unwrap();
        let sol = solve_delta(&tw, &mode, 6).unwrap();
        let ring = tw.ring().clone();
        assert_eq!(sol.particular, parse_element(&ring, "1").unwrap());
        let DeltaFreedom::Span(basis) = &sol.freedom else {
            panic!("expected a finite span");
        };
        assert_eq!(basis, &vec![parse_element(&ring, "t^2").unwrap()]);
        assert!(!sol.assumed_nonzero.is_empty());
    }

    #[test]
    fn delta_inconsistency_is_reported() {
        // sigma(t) = t + 1 with dsigma(t) = t: the first equation reads
        // t = delta * (t + 1), which has no polynomial solution.
        let tw = poly_twist(vec![], "t + 1", "t");
        let err = solve_delta(&tw, &GateMode::Generic, 6).unwrap_err();
        assert!(matches!(err, CoreError::Inconsistent(_)));
    }
}
