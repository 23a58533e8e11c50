//! Example scenes shipped with the library, each with a manifest of expected
//! report values.

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scene::Scene;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(
            (
                $name,
                include_str!(concat!("../scenes/", $name, ".json")),
                include_str!(concat!("../scenes/", $name, ".manifest.json")),
            ),
        )*]
    };
}

static BUNDLED: &[(&str, &str, &str)] = bundle!(
    "triangle",
    "near_pencil_4",
    "chern_factor",
    "notfree_pencil",
    "free_6_7",
    "mu_formula_suite",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _, _)| *n)
}

fn entry(name: &str) -> Result<&'static (&'static str, &'static str, &'static str)> {
    BUNDLED
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| Error::Schema(format!("no bundled example `{name}`")))
}

pub fn scene(name: &str) -> Result<Scene> {
    Scene::from_json(entry(name)?.1)
}

pub fn scene_source(name: &str) -> Result<&'static str> {
    Ok(entry(name)?.1)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    /// JSON pointer into the report.
    pub pointer: String,
    #[serde(default)]
    pub equals: Option<Value>,
    /// The value must be an array whose elements all appear in this list.
    #[serde(default)]
    pub subset_of: Option<Vec<Value>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub checks: Vec<Check>,
}

pub fn manifest(name: &str) -> Result<Manifest> {
    serde_json::from_str(entry(name)?.2).map_err(|e| Error::Schema(e.to_string()))
}

/// A manifest check that failed, with the value found.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub pointer: String,
    pub expected: String,
    pub found: Value,
}

impl Manifest {
    pub fn check(&self, report: &Value) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for c in &self.checks {
            let found = report.pointer(&c.pointer).cloned().unwrap_or(Value::Null);
            if let Some(want) = &c.equals {
                if &found != want {
                    out.push(Mismatch {
                        pointer: c.pointer.clone(),
                        expected: want.to_string(),
                        found: found.clone(),
                    });
                }
            }
            if let Some(allowed) = &c.subset_of {
                let ok = found
                    .as_array()
                    .is_some_and(|items| items.iter().all(|v| allowed.contains(v)));
                if !ok {
                    out.push(Mismatch {
                        pointer: c.pointer.clone(),
                        expected: format!("subset of {}", Value::Array(allowed.clone())),
                        found,
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_scenes_parse() {
        for n in names() {
            let s = scene(n).unwrap();
            s.curve().unwrap();
            assert!(!manifest(n).unwrap().checks.is_empty());
        }
        assert!(matches!(scene("nope"), Err(Error::Schema(_))));
    }

    #[test]
    fn manifest_checks() {
        let m: Manifest = serde_json::from_str(
            r#"{"checks": [{"pointer": "/a", "equals": 1}, {"pointer": "/b", "subset_of": ["x", "y"]}]}"#,
        )
        .unwrap();
        let good = serde_json::json!({"a": 1, "b": ["y"]});
        assert!(m.check(&good).is_empty());
        let bad = serde_json::json!({"a": 2, "b": ["z"]});
        assert_eq!(m.check(&bad).len(), 2);
    }
}
