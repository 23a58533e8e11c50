//! JSON scene files: a versioned list of components and optional queries.
//!
//! ```json
//! {
//!   "version": 1,
//!   "components": [
//!     {"id": "L1", "type": "line", "coeffs": [1, 0, 0]},
//!     {"id": "C1", "type": "conic", "coeffs": [1, 0, 0, 1, 0, "-2"]},
//!     {"id": "G1", "type": "generic", "poly": "y^2*z - x^3",
//!      "singular_points": [{"coords": [0, 0, 1], "branches": 1}]}
//!   ],
//!   "queries": [{"op": "conic_deletion", "args": {"target": "C1"}}]
//! }
//! ```
//!
//! Coefficients are integers or strings `"p/q"`. Conic coefficients are
//! ordered `x^2, xy, xz, y^2, yz, z^2`.

use serde::Deserialize;
use serde_json::Value;

use crate::arrangement::{Component, Curve, ProjPoint, SuppliedPoint};
use crate::error::{Error, Result};
use crate::poly::parse_hpoly;
use crate::scalars::{parse_rat, Rat};

pub const SCENE_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Int(i64),
    Str(String),
}

impl RatInput {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatInput::Int(n) => Ok(Rat::from_integer((*n).into())),
            RatInput::Str(s) => parse_rat(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub coords: Vec<RatInput>,
    pub branches: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ComponentSpec {
    Line {
        id: String,
        coeffs: Vec<RatInput>,
    },
    Conic {
        id: String,
        coeffs: Vec<RatInput>,
    },
    Generic {
        id: String,
        poly: String,
        #[serde(default)]
        singular_points: Option<Vec<PointSpec>>,
    },
}

fn rats<const N: usize>(id: &str, v: &[RatInput]) -> Result<[Rat; N]> {
    if v.len() != N {
        return Err(Error::Schema(format!(
            "component `{id}` needs {N} coefficients, got {}",
            v.len()
        )));
    }
    let out: Vec<Rat> = v.iter().map(RatInput::to_rat).collect::<Result<_>>()?;
    Ok(out.try_into().expect("length checked"))
}

impl ComponentSpec {
    pub fn build(&self) -> Result<Component> {
        match self {
            ComponentSpec::Line { id, coeffs } => Component::line(id, rats::<3>(id, coeffs)?),
            ComponentSpec::Conic { id, coeffs } => Component::conic(id, rats::<6>(id, coeffs)?),
            ComponentSpec::Generic {
                id,
                poly,
                singular_points,
            } => {
                let poly = parse_hpoly(poly)?;
                let points = singular_points
                    .as_ref()
                    .map(|pts| {
                        pts.iter()
                            .map(|p| {
                                Ok(SuppliedPoint {
                                    point: ProjPoint::rational(rats::<3>(id, &p.coords)?)?,
                                    branches: p.branches,
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?;
                Component::generic(id, poly, points)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub op: String,
    #[serde(default)]
    pub args: Value,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub version: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Scene> {
        let scene: Scene =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if scene.version != SCENE_VERSION {
            return Err(Error::Schema(format!(
                "unsupported scene version {} (expected {SCENE_VERSION})",
                scene.version
            )));
        }
        Ok(scene)
    }

    pub fn curve(&self) -> Result<Curve> {
        let comps = self
            .components
            .iter()
            .map(ComponentSpec::build)
            .collect::<Result<Vec<_>>>()?;
        Curve::new(comps)
    }
}

/// Parses a component given inline, e.g. on the command line.
pub fn parse_component(text: &str) -> Result<Component> {
    let spec: ComponentSpec =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    spec.build()
}
