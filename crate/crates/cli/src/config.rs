//! JSON experiment configuration.

use std::collections::HashSet;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use noether_ops::diffops::OperatorSet;
use noether_ops::groebner::{IdealHandle, RingSpec};
use noether_ops::noetherian::{combine_components, noetherian_ops_primary, PrimaryComponent};
use noether_ops::poly::Polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    ArtinRees,
    BrianconSkoda,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedIdeal {
    pub id: String,
    pub generators: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub primary: String,
    pub prime: String,
    #[serde(default)]
    pub independent: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSource {
    /// `;`-separated operators, reducing modulo the radical.
    Explicit(String),
    /// Primary decomposition of the defining ideal.
    Compute(Vec<ComponentSpec>),
}

fn default_n_max() -> u32 {
    3
}
fn default_c_max() -> u32 {
    3
}
fn default_degree() -> u32 {
    12
}
fn default_t_max() -> u32 {
    3
}
fn default_coeff_deg() -> u32 {
    1
}
fn default_samples() -> usize {
    10
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_c_max")]
    pub c_max: u32,
    #[serde(default = "default_degree")]
    pub degree: u32,
    #[serde(default = "default_t_max")]
    pub t_max: u32,
    #[serde(default = "default_coeff_deg")]
    pub coeff_deg: u32,
    #[serde(default)]
    pub seed: u64,
    /// Samples per operator for the order lemma check.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Dimension of the reduced ring, for the symbolic mode.
    #[serde(default)]
    pub dimension: Option<u32>,
    /// Saturation witnesses for the symbolic mode.
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub filtration_length: Option<u32>,
}

impl Default for Parameters {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Ring file contents.
    pub ring: String,
    #[serde(default)]
    pub ideals: Vec<NamedIdeal>,
    pub operators: OperatorSource,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default)]
    pub output: OutputSpec,
}

/// A configuration with every payload parsed.
pub struct Resolved {
    pub ring: RingSpec,
    pub family: Vec<(String, IdealHandle)>,
    pub ops: OperatorSet,
    pub witnesses: Vec<Polynomial>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).context("invalid configuration")?;
        let p = &cfg.parameters;
        if p.n_max == 0 || p.degree == 0 {
            bail!("n_max and degree must be positive");
        }
        let mut seen = HashSet::new();
        for i in &cfg.ideals {
            if !seen.insert(i.id.as_str()) {
                bail!("ideal id `{}` used twice", i.id);
            }
        }
        Ok(cfg)
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let ring = RingSpec::parse(&self.ring).context("ring")?;
        let family = self
            .ideals
            .iter()
            .map(|i| {
                Ok((
                    i.id.clone(),
                    ring.parse_ideal(&i.generators)
                        .with_context(|| format!("ideal `{}`", i.id))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let ops = resolve_operators(&self.operators, &ring)?;
        let witnesses = self
            .parameters
            .witnesses
            .iter()
            .map(|w| ring.parse_poly(w).with_context(|| format!("witness `{w}`")))
            .collect::<Result<Vec<_>>>()?;
        if self.mode == Mode::Symbolic && self.parameters.dimension.is_none() {
            bail!("the symbolic mode needs parameters.dimension");
        }
        Ok(Resolved {
            ring,
            family,
            ops,
            witnesses,
        })
    }
}

pub fn parse_component(ring: &RingSpec, spec: &ComponentSpec) -> Result<PrimaryComponent> {
    let primary = ring.parse_ideal(&spec.primary).context("primary ideal")?;
    let prime = ring.parse_ideal(&spec.prime).context("prime")?;
    let independent = spec
        .independent
        .iter()
        .map(|v| {
            ring.var_index(v)
                .with_context(|| format!("unknown variable `{v}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimaryComponent::new(primary, prime, independent)?)
}

pub fn resolve_operators(source: &OperatorSource, ring: &RingSpec) -> Result<OperatorSet> {
    match source {
        OperatorSource::Explicit(text) => {
            Ok(
                OperatorSet::parse(text, ring.vars(), ring.radical().clone())
                    .context("operators")?,
            )
        }
        OperatorSource::Compute(specs) => {
            let comps = specs
                .iter()
                .map(|s| {
                    let c = parse_component(ring, s)?;
                    let ops = noetherian_ops_primary(&c)?;
                    Ok((c, ops))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(combine_components(&comps, ring.defining_ideal(), ring)?)
        }
    }
}
