//! JSON descriptions of maps and a few named shortcuts.

use serde::{Deserialize, Serialize};

use super::{MapError, ProjMap};
use crate::cubes;
use crate::khk::{self, EulerParams};
use crate::linalg::IMat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MapSpec {
    /// The standard involution of projective space of this dimension.
    Cremona(u32),
    Matrix(Vec<Vec<i64>>),
    /// Applied right to left.
    Compose(Vec<MapSpec>),
    Euler { a: Vec<String>, h: String },
    Theta(bool),
}

impl MapSpec {
    /// Parses JSON, or one of the names `cremona`, `g0`, `g0c3`, `typeC`, `euler`, `theta`, `g0theta`.
    pub fn parse(text: &str) -> Result<Self, MapError> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| MapError::Spec(e.to_string()));
        }
        Self::named(t).ok_or_else(|| MapError::Spec(format!("unknown map name `{t}`")))
    }

    pub fn named(name: &str) -> Option<Self> {
        let mat = |m: cubes::Mat4| MapSpec::Matrix(m.iter().map(|r| r.to_vec()).collect());
        let c3 = MapSpec::Cremona(3);
        Some(match name {
            "cremona" | "c3" => c3,
            "g0" => mat(cubes::G0),
            "g0c3" => MapSpec::Compose(vec![mat(cubes::G0), c3]),
            "typeC" | "typec" => MapSpec::Compose(vec![mat(cubes::case_c_examples()[0].1), c3]),
            "euler" => MapSpec::Euler { a: vec!["1".into(), "4".into(), "9".into()], h: "1".into() },
            "theta" => MapSpec::Theta(true),
            "g0theta" => MapSpec::Compose(vec![mat(cubes::G0), MapSpec::Theta(true)]),
            _ => return None,
        })
    }

    pub fn resolve(&self) -> Result<ProjMap, MapError> {
        match self {
            MapSpec::Cremona(n) => {
                if *n < 1 {
                    return Err(MapError::Spec("cremona needs dimension at least one".into()));
                }
                Ok(ProjMap::cremona(*n as usize + 1))
            }
            MapSpec::Matrix(rows) => {
                let m: IMat = rows.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect();
                if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
                    return Err(MapError::Spec("matrix must be square and nonempty".into()));
                }
                ProjMap::from_matrix(&m)
            }
            MapSpec::Compose(parts) => {
                if parts.is_empty() {
                    return Err(MapError::Spec("empty composition".into()));
                }
                let maps = parts.iter().map(MapSpec::resolve).collect::<Result<Vec<_>, _>>()?;
                ProjMap::compose_all(&maps)
            }
            MapSpec::Euler { a, h } => {
                let p = EulerParams::parse(a, h).map_err(|e| MapError::Spec(e.to_string()))?;
                khk::build_euler(&p).map_err(|e| MapError::Spec(e.to_string()))
            }
            MapSpec::Theta(true) => Ok(khk::build_theta()),
            MapSpec::Theta(false) => Err(MapError::Spec("theta must be true".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let s = MapSpec::parse(r#"{"compose":[{"matrix":[[1,-1,-1,-1],[-1,1,-1,-1],[-1,-1,1,-1],[-1,-1,-1,1]]},{"cremona":3}]}"#);
        assert_eq!(s.unwrap(), MapSpec::Compose(vec![MapSpec::named("g0").unwrap(), MapSpec::Cremona(3)]));
        let e = MapSpec::parse(r#"{"euler":{"a":["1","4","9"],"h":"1"}}"#).unwrap();
        assert_eq!(e.resolve().unwrap().degree(), 3);
        assert!(MapSpec::parse(r#"{"bogus":1}"#).is_err());
        assert!(MapSpec::parse("nope").is_err());
    }

    #[test]
    fn named_maps_resolve_with_inverse() {
        for name in ["cremona", "g0", "g0c3", "typeC", "euler", "theta", "g0theta"] {
            let m = MapSpec::named(name).unwrap().resolve().unwrap();
            assert!(m.inverse().is_some(), "{name}");
        }
        assert_eq!(MapSpec::named("g0c3").unwrap().resolve().unwrap().degree(), 3);
    }
}
