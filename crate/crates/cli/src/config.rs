//! TOML run configuration and the builders that turn it into engine data.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use qhl_core::{
    instantiate_named, parse_element, BigRational, Decl, FieldDecl, NamedInstance,
    RingData, RootSpec, TwistData,
};

pub const DEFAULT_JACOBI_BOUND: usize = 4;
pub const DEFAULT_DEGREE_BOUND: usize = 6;

/// The eight operator checks, in canonical report order.
pub const CHECK_NAMES: [&str; 8] = [
    "classify",
    "delta",
    "homlie",
    "jacobi",
    "qhl",
    "relations",
    "table",
    "well_defined",
];

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: Option<FieldSection>,
    pub ring: Option<RingSection>,
    pub twist: Option<TwistSection>,
    #[serde(default)]
    pub assume_nonzero: Vec<String>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub bounds: BoundsSection,
    pub quadratic: Option<QuadraticSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    #[serde(default)]
    pub parameters: Vec<String>,
    pub root: Option<RootSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSection {
    pub name: String,
    /// Order of a primitive root of unity.
    pub order: Option<usize>,
    /// Monic minimal polynomial, coefficients from the constant term up,
    /// as rational strings.
    pub min_poly: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub kind: String,
    pub order: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSection {
    pub named: Option<String>,
    pub sigma_t: Option<String>,
    pub dsigma_t: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    pub jacobi: Option<usize>,
    pub degree: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticSection {
    /// "u" or "w" for the built-in systems.
    pub preset: Option<String>,
    pub alphabet: Option<Vec<String>>,
    #[serde(default)]
    pub relations: Vec<String>,
}

pub fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let config: RunConfig = toml::from_str(&text)
        .with_context(|| format!("cannot parse config {}", path.display()))?;
    Ok(config)
}

/// A twist resolved from configuration, either a named instance or data
/// built from the field, ring, and twist sections.
pub struct ResolvedTwist {
    pub instance: String,
    pub description: Option<String>,
    pub twist: Arc<TwistData>,
    pub assume_nonzero: Vec<String>,
}

pub fn resolve_twist(config: &RunConfig, extra_assume: &[String]) -> Result<ResolvedTwist> {
    let section = config
        .twist
        .as_ref()
        .ok_or_else(|| anyhow!("config needs a [twist] section"))?;
    let mut resolved = match (&section.named, &section.sigma_t, &section.dsigma_t) {
        (Some(name), None, None) => {
            if config.field.is_some() || config.ring.is_some() {
                bail!("named instance `{name}` already fixes the field and ring sections");
            }
            match instantiate_named(name).map_err(|e| anyhow!("{e}"))? {
                NamedInstance::Operator {
                    name,
                    description,
                    twist,
                    assume_nonzero,
                } => ResolvedTwist {
                    instance: name.to_string(),
                    description: Some(description.to_string()),
                    twist,
                    assume_nonzero,
                },
                NamedInstance::Presentation { name, .. } => {
                    bail!("named instance `{name}` is a presentation, not an operator twist")
                }
            }
        }
        (None, Some(sigma), Some(dsigma)) => {
            let decl = build_decl(config.field.as_ref())?;
            let ring = build_ring(&decl, config.ring.as_ref())?;
            let twist = TwistData::new(
                &ring,
                parse_element(&ring, sigma).map_err(|e| anyhow!("sigma_t: {e}"))?,
                parse_element(&ring, dsigma).map_err(|e| anyhow!("dsigma_t: {e}"))?,
            )
            .map_err(|e| anyhow!("{e}"))?;
            ResolvedTwist {
                instance: "custom".to_string(),
                description: None,
                twist: Arc::new(twist),
                assume_nonzero: Vec::new(),
            }
        }
        _ => bail!("[twist] needs either `named` or both `sigma_t` and `dsigma_t`"),
    };
    for expr in config.assume_nonzero.iter().chain(extra_assume) {
        if !resolved.assume_nonzero.contains(expr) {
            resolved.assume_nonzero.push(expr.clone());
        }
    }
    Ok(resolved)
}

pub fn build_decl(section: Option<&FieldSection>) -> Result<Decl> {
    let Some(section) = section else {
        return Ok(FieldDecl::rationals());
    };
    let root = match &section.root {
        None => None,
        Some(root) => Some(build_root(root)?),
    };
    let params: Vec<&str> = section.parameters.iter().map(String::as_str).collect();
    FieldDecl::new(params, root).map_err(|e| anyhow!("{e}"))
}

fn build_root(section: &RootSection) -> Result<RootSpec> {
    match (&section.order, &section.min_poly) {
        (Some(order), None) => RootSpec::primitive_root_of_unity(&section.name, *order)
            .map_err(|e| anyhow!("{e}")),
        (None, Some(coeffs)) => {
            let parsed: Result<Vec<BigRational>> = coeffs
                .iter()
                .map(|c| {
                    BigRational::from_str(c)
                        .map_err(|e| anyhow!("min_poly coefficient `{c}`: {e}"))
                })
                .collect();
            RootSpec::new(&section.name, parsed?).map_err(|e| anyhow!("{e}"))
        }
        _ => bail!("[field.root] needs exactly one of `order` or `min_poly`"),
    }
}

fn build_ring(decl: &Decl, section: Option<&RingSection>) -> Result<qhl_core::BaseRing> {
    let Some(section) = section else {
        return Ok(RingData::polynomial(decl));
    };
    match section.kind.as_str() {
        "polynomial" => {
            if section.order.is_some() {
                bail!("the polynomial ring takes no `order`");
            }
            Ok(RingData::polynomial(decl))
        }
        "truncated" => {
            let order = section
                .order
                .ok_or_else(|| anyhow!("the truncated ring needs an `order`"))?;
            RingData::truncated(decl, order).map_err(|e| anyhow!("{e}"))
        }
        other => bail!("unknown ring kind `{other}` (use `polynomial` or `truncated`)"),
    }
}

/// Validate, deduplicate, and canonically order a requested check list.
pub fn normalize_checks(requested: &[String]) -> Result<Vec<&'static str>> {
    let mut selected = Vec::new();
    for name in requested {
        let canonical = CHECK_NAMES
            .iter()
            .find(|c| *c == name)
            .ok_or_else(|| anyhow!("unknown check `{name}` (expected one of {})",
                CHECK_NAMES.join(", ")))?;
        if !selected.contains(canonical) {
            selected.push(*canonical);
        }
    }
    selected.sort_unstable();
    Ok(selected)
}
