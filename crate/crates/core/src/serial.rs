//! JSON forms of ring configurations and maps.
//!
//! ```json
//! {"ring": "Qx",
//!  "vars": [{"name": "t", "aut": {"kind": "identity"}, "der": {"kind": "ddx"}}]}
//! ```
//!
//! Scalars and map parameters are strings in the expression grammar. A
//! derivation's twisting automorphism defaults to its variable's.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cli::parse::{parse_rational, parse_scalar, ParseError};
use crate::coeff::{RingKind, RingMap, SampleConfig, Scalar};
use crate::ore::{Flavor, OreError, OreRing, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid ring configuration: {0}")]
    Json(String),
    #[error("in {field}: {source}")]
    Scalar {
        field: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Ore(#[from] OreError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FlavorName {
    #[default]
    Commuting,
    Tower,
}

impl From<FlavorName> for Flavor {
    fn from(f: FlavorName) -> Self {
        match f {
            FlavorName::Commuting => Flavor::Commuting,
            FlavorName::Tower => Flavor::Tower,
        }
    }
}

impl From<Flavor> for FlavorName {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Commuting => FlavorName::Commuting,
            Flavor::Tower => FlavorName::Tower,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapDescriptor {
    Identity,
    InnerAut {
        c: String,
    },
    QShift {
        q: String,
    },
    ZeroDer {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        aut: Option<Box<MapDescriptor>>,
    },
    Ddx,
    InnerDer {
        c: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        aut: Option<Box<MapDescriptor>>,
    },
    QDiff {
        q: String,
    },
    LinComb {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        aut: Option<Box<MapDescriptor>>,
        terms: Vec<LinTerm>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinTerm {
    pub coeff: String,
    pub der: MapDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarConfig {
    pub name: String,
    pub aut: MapDescriptor,
    pub der: MapDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub ring: RingKind,
    #[serde(default)]
    pub flavor: FlavorName,
    pub vars: Vec<VarConfig>,
}

fn scalar(field: &str, src: &str, kind: RingKind) -> Result<Scalar, ConfigError> {
    parse_scalar(src, kind).map_err(|source| ConfigError::Scalar {
        field: field.to_string(),
        source,
    })
}

impl MapDescriptor {
    /// Builds the map over `kind`; `default_aut` twists derivations that do
    /// not name their own automorphism.
    pub fn to_map(&self, kind: RingKind, default_aut: &RingMap) -> Result<RingMap, ConfigError> {
        let aut_of = |a: &Option<Box<MapDescriptor>>| -> Result<RingMap, ConfigError> {
            match a {
                Some(d) => d.to_map(kind, &RingMap::Identity),
                None => Ok(default_aut.clone()),
            }
        };
        let rational = |field: &str, src: &str| {
            parse_rational(src).map_err(|source| ConfigError::Scalar {
                field: field.to_string(),
                source,
            })
        };
        Ok(match self {
            MapDescriptor::Identity => RingMap::Identity,
            MapDescriptor::InnerAut { c } => RingMap::Inner(scalar("inner_aut.c", c, kind)?),
            MapDescriptor::QShift { q } => RingMap::QShift(rational("q_shift.q", q)?),
            MapDescriptor::ZeroDer { aut } => RingMap::zero_der(aut_of(aut)?),
            MapDescriptor::Ddx => RingMap::Ddx,
            MapDescriptor::InnerDer { c, aut } => RingMap::inner_der(scalar("inner_der.c", c, kind)?, aut_of(aut)?),
            MapDescriptor::QDiff { q } => RingMap::QDiff(rational("q_diff.q", q)?),
            MapDescriptor::LinComb { aut, terms } => {
                let aut = aut_of(aut)?;
                let mut built = Vec::with_capacity(terms.len());
                for t in terms {
                    built.push((scalar("lin_comb.coeff", &t.coeff, kind)?, t.der.to_map(kind, &aut)?));
                }
                RingMap::lin_comb(aut, built).map_err(OreError::from)?
            }
        })
    }

    /// Descriptor with every automorphism spelled out.
    pub fn from_map(map: &RingMap) -> Self {
        let boxed = |a: &RingMap| Some(Box::new(MapDescriptor::from_map(a)));
        match map {
            RingMap::Identity => MapDescriptor::Identity,
            RingMap::Inner(c) => MapDescriptor::InnerAut { c: c.to_string() },
            RingMap::QShift(q) => MapDescriptor::QShift { q: q.to_string() },
            RingMap::ZeroDer(a) => MapDescriptor::ZeroDer { aut: boxed(a) },
            RingMap::Ddx => MapDescriptor::Ddx,
            RingMap::InnerDer { c, aut } => MapDescriptor::InnerDer {
                c: c.to_string(),
                aut: boxed(aut),
            },
            RingMap::QDiff(q) => MapDescriptor::QDiff { q: q.to_string() },
            RingMap::LinComb { aut, terms } => MapDescriptor::LinComb {
                aut: boxed(aut),
                terms: terms
                    .iter()
                    .map(|(c, d)| LinTerm {
                        coeff: c.to_string(),
                        der: MapDescriptor::from_map(d),
                    })
                    .collect(),
            },
        }
    }
}

impl RingConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))
    }

    pub fn build(&self, sampling: SampleConfig) -> Result<Arc<OreRing>, ConfigError> {
        let mut vars = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let aut = v.aut.to_map(self.ring, &RingMap::Identity)?;
            let der = v.der.to_map(self.ring, &aut)?;
            vars.push(Variable::new(v.name.clone(), aut, der));
        }
        Ok(OreRing::with_sampling(self.ring, vars, self.flavor.into(), sampling)?)
    }

    pub fn from_ring(ring: &OreRing) -> Self {
        RingConfig {
            ring: ring.kind(),
            flavor: ring.flavor().into(),
            vars: ring
                .vars()
                .iter()
                .map(|v| VarConfig {
                    name: v.name.clone(),
                    aut: MapDescriptor::from_map(&v.twist.aut),
                    der: MapDescriptor::from_map(&v.twist.der),
                })
                .collect(),
        }
    }
}
