//! Serializable distribution descriptors, the bridge between configs/CLI
//! and the concrete sampling machinery.

use rand::Rng;

use crate::constructions::{constructed_tail, EpsilonProfile, ProfileSpec};
use crate::error::{Error, Result};
use crate::tails::{draw_pareto, ParetoSpec, TailFunction};

/// JSON-facing distribution description.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistDescriptor {
    Pareto {
        alpha: f64,
        b: f64,
        #[serde(default)]
        symmetric: bool,
    },
    Constructed {
        #[serde(flatten)]
        profile: ProfileSpec,
    },
}

impl DistDescriptor {
    pub fn pareto(spec: &ParetoSpec) -> Self {
        DistDescriptor::Pareto {
            alpha: spec.alpha,
            b: spec.b,
            symmetric: spec.symmetric,
        }
    }

    /// Compact CLI form: `pareto:alpha,b`, `pareto:alpha,b,s` (symmetric).
    pub fn parse_cli(text: &str) -> Result<Self> {
        let Some((kind, rest)) = text.split_once(':') else {
            return Err(Error::Input(format!(
                "descriptor {text:?} must look like pareto:alpha,b[,s]"
            )));
        };
        match kind {
            "pareto" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() < 2 || parts.len() > 3 {
                    return Err(Error::Input(format!(
                        "pareto descriptor needs alpha,b[,s], got {rest:?}"
                    )));
                }
                let alpha: f64 = parts[0]
                    .parse()
                    .map_err(|_| Error::Input(format!("bad alpha {:?}", parts[0])))?;
                let b: f64 = parts[1]
                    .parse()
                    .map_err(|_| Error::Input(format!("bad b {:?}", parts[1])))?;
                let symmetric = match parts.get(2) {
                    None => false,
                    Some(&"s") | Some(&"sym") | Some(&"symmetric") => true,
                    Some(other) => {
                        return Err(Error::Input(format!("unknown pareto flag {other:?}")))
                    }
                };
                ParetoSpec::new(alpha, b, symmetric)?;
                Ok(DistDescriptor::Pareto { alpha, b, symmetric })
            }
            other => Err(Error::Input(format!(
                "unknown distribution kind {other:?} (constructed profiles come from config files)"
            ))),
        }
    }

    /// Materialize the sampler.
    pub fn build(&self) -> Result<Dist> {
        match self {
            DistDescriptor::Pareto { alpha, b, symmetric } => {
                Ok(Dist::Pareto(ParetoSpec::new(*alpha, *b, *symmetric)?))
            }
            DistDescriptor::Constructed { profile } => {
                let profile = EpsilonProfile::from_spec(profile)?;
                Ok(Dist::Constructed(constructed_tail(&profile)?))
            }
        }
    }

    pub fn tail_index(&self) -> f64 {
        match self {
            DistDescriptor::Pareto { alpha, .. } => *alpha,
            DistDescriptor::Constructed { profile } => profile.alpha,
        }
    }
}

/// A buildable distribution: closed-form Pareto or a generic tail sampled
/// by bisection.
#[derive(Debug, Clone)]
pub enum Dist {
    Pareto(ParetoSpec),
    Constructed(TailFunction),
}

impl Dist {
    /// One draw; the RNG stream fully determines the value.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> Result<f64> {
        match self {
            Dist::Pareto(spec) => Ok(draw_pareto(spec, rng)),
            Dist::Constructed(tail) => {
                let u = 1.0 - rng.random::<f64>();
                Ok(tail.inverse_tail_log(u.ln())?.exp())
            }
        }
    }

    /// The magnitude law as a tail function.
    pub fn tail_function(&self) -> TailFunction {
        match self {
            Dist::Pareto(spec) => spec.tail_function(),
            Dist::Constructed(tail) => tail.clone(),
        }
    }

    pub fn tail_index(&self) -> f64 {
        match self {
            Dist::Pareto(spec) => spec.alpha,
            Dist::Constructed(tail) => tail.tail_index(),
        }
    }

    pub fn is_centered(&self) -> bool {
        matches!(self, Dist::Pareto(spec) if spec.symmetric)
    }
}
