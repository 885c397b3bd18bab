//! JSON instance files: a cone, a subspace and an optional affine offset.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "cone": { "apex": [0, 0, 0], "axis": [1, 0, 1], "half_aperture": 0.5235987755982988, "flavor": "closed" },
//!   "subspace": "coords:0,1",
//!   "offset": [0, 0, 2]
//! }
//! ```
//!
//! `subspace` is either `"coords:i,j,..."` (zero-based coordinate axes) or a
//! list of spanning vectors. `apex`, `flavor` and `offset` are optional.

use roundcone::{Flavor, Radians, RealVector, RoundCone, SubspaceBasis};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vec<f64>>,
    pub axis: Vec<f64>,
    #[serde(alias = "half_aperture_radians")]
    pub half_aperture: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<Flavor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceDescriptor {
    Named(String),
    Span(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDescriptor {
    pub dimension: usize,
    pub cone: ConeDescriptor,
    pub subspace: SubspaceDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
}

/// A resolved descriptor.
#[derive(Clone, Debug)]
pub struct Instance {
    pub cone: RoundCone,
    pub space: SubspaceBasis,
    pub offset: Option<RealVector>,
}

fn parse_indices(list: &str) -> Result<Vec<usize>, CliError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::input(format!("bad coordinate index {s:?}")))
        })
        .collect()
}

impl SubspaceDescriptor {
    /// Accepts `coords:i,j,...`, `zero`, `full`, or `span:x,y,z;x,y,z`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        if let Some(rows) = text.strip_prefix("span:") {
            let span = rows
                .split(';')
                .filter(|r| !r.trim().is_empty())
                .map(crate::args::parse_list)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SubspaceDescriptor::Span(span));
        }
        Ok(SubspaceDescriptor::Named(text.to_string()))
    }

    pub fn resolve(&self, dimension: usize) -> Result<SubspaceBasis, CliError> {
        match self {
            SubspaceDescriptor::Named(name) => match name.as_str() {
                "zero" => Ok(SubspaceBasis::zero(dimension)),
                "full" => Ok(SubspaceBasis::full(dimension)),
                _ => {
                    let list = name.strip_prefix("coords:").ok_or_else(|| {
                        CliError::input(format!(
                            "unknown subspace {name:?}; expected coords:i,j,..., zero, full or a list of vectors"
                        ))
                    })?;
                    Ok(SubspaceBasis::coordinates(
                        dimension,
                        &parse_indices(list)?,
                    )?)
                }
            },
            SubspaceDescriptor::Span(rows) => {
                let vectors = rows
                    .iter()
                    .map(|r| RealVector::new(r.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(SubspaceBasis::orthonormalize(&vectors, dimension)?)
            }
        }
    }

    fn normalized(&self, dimension: usize) -> Result<Self, CliError> {
        Ok(match self {
            SubspaceDescriptor::Named(name) if name.starts_with("coords:") => {
                let mut idx = parse_indices(&name["coords:".len()..])?;
                idx.sort_unstable();
                idx.dedup();
                if idx.is_empty() {
                    SubspaceDescriptor::Named("zero".into())
                } else if idx.len() == dimension && idx.last() == Some(&(dimension - 1)) {
                    SubspaceDescriptor::Named("full".into())
                } else {
                    let list: Vec<String> = idx.iter().map(usize::to_string).collect();
                    SubspaceDescriptor::Named(format!("coords:{}", list.join(",")))
                }
            }
            other => other.clone(),
        })
    }
}

impl InstanceDescriptor {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("instance file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors serialize")
    }

    /// Canonical form: apex and flavor filled in, coordinate lists sorted
    /// and deduplicated, a zero offset dropped.
    pub fn normalized(&self) -> Result<Self, CliError> {
        let n = self.dimension;
        let offset = self.offset.clone().filter(|d| d.iter().any(|&x| x != 0.0));
        Ok(InstanceDescriptor {
            dimension: n,
            cone: ConeDescriptor {
                apex: Some(self.cone.apex.clone().unwrap_or_else(|| vec![0.0; n])),
                axis: self.cone.axis.clone(),
                half_aperture: self.cone.half_aperture,
                flavor: Some(self.cone.flavor.unwrap_or(Flavor::Closed)),
            },
            subspace: self.subspace.normalized(n)?,
            offset,
        })
    }

    pub fn resolve(&self) -> Result<Instance, CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::input("dimension must be positive"));
        }
        let axis = RealVector::new(self.cone.axis.clone())?;
        axis.check_dim(n)?;
        let apex = match &self.cone.apex {
            Some(a) => RealVector::new(a.clone())?,
            None => RealVector::zeros(n),
        };
        let phi = Radians::new(self.cone.half_aperture)?;
        let flavor = self.cone.flavor.unwrap_or(Flavor::Closed);
        let cone = RoundCone::new(apex, axis, phi, flavor)?;
        let space = self.subspace.resolve(n)?;
        let offset = self
            .offset
            .as_ref()
            .map(|d| {
                let d = RealVector::new(d.clone())?;
                d.check_dim(n)?;
                Ok::<_, roundcone::Error>(d)
            })
            .transpose()?;
        Ok(Instance {
            cone,
            space,
            offset,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SAMPLE: &str = r#"{
        "dimension": 3,
        "cone": {"axis": [1, 0, 1], "half_aperture_radians": 0.5},
        "subspace": "coords:1,0,1"
    }"#;

    #[test]
    fn parses_and_normalizes() {
        let d = InstanceDescriptor::from_json(SAMPLE).unwrap();
        let n = d.normalized().unwrap();
        assert_eq!(n.cone.apex, Some(vec![0.0; 3]));
        assert_eq!(n.cone.flavor, Some(Flavor::Closed));
        assert_eq!(n.subspace, SubspaceDescriptor::Named("coords:0,1".into()));
        let inst = d.resolve().unwrap();
        assert_eq!(inst.space.rank(), 2);
        assert!(inst.offset.is_none());
    }

    #[test]
    fn span_subspace() {
        let text = r#"{"dimension": 3, "cone": {"axis": [0, 0, 1], "half_aperture": 0.1},
            "subspace": [[1, 1, 0], [2, 2, 0]]}"#;
        let inst = InstanceDescriptor::from_json(text)
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(inst.space.rank(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            r#"{"dimension": 3, "cone": {"axis": [1, 0], "half_aperture": 0.5}, "subspace": "coords:0"}"#,
            r#"{"dimension": 3, "cone": {"axis": [1, 0, 0], "half_aperture": 4.0}, "subspace": "coords:0"}"#,
            r#"{"dimension": 3, "cone": {"axis": [1, 0, 0], "half_aperture": 0.5}, "subspace": "coords:7"}"#,
            r#"{"dimension": 3, "cone": {"axis": [1, 0, 0], "half_aperture": 0.5}, "subspace": "plane"}"#,
            r#"{"dimension": 3, "cone": {"axis": [1, 0, 0], "half_aperture": 0.5}, "subspace": "zero", "offset": [1]}"#,
        ];
        for text in bad {
            let parsed = InstanceDescriptor::from_json(text).and_then(|d| d.resolve());
            assert!(parsed.is_err(), "{text}");
        }
        assert!(InstanceDescriptor::from_json(r#"{"dimension": 3}"#).is_err());
    }

    #[test]
    fn flag_subspace_syntax() {
        let s = SubspaceDescriptor::parse("span:1,0,0;0,1,0").unwrap();
        assert_eq!(
            s,
            SubspaceDescriptor::Span(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]])
        );
        assert_eq!(
            SubspaceDescriptor::parse("coords:2").unwrap(),
            SubspaceDescriptor::Named("coords:2".into())
        );
    }

    fn descriptor() -> impl Strategy<Value = InstanceDescriptor> {
        (1usize..6).prop_flat_map(|n| {
            let coords = prop::collection::vec(-5.0..5.0f64, n);
            (
                prop::option::of(coords.clone()),
                coords.clone(),
                0.0..std::f64::consts::PI,
                prop::option::of(prop_oneof![Just(Flavor::Closed), Just(Flavor::ApexOpen)]),
                prop_oneof![
                    prop::collection::vec(0..n, 0..n + 2).prop_map(|idx| {
                        let list: Vec<String> = idx.iter().map(usize::to_string).collect();
                        SubspaceDescriptor::Named(format!("coords:{}", list.join(",")))
                    }),
                    prop::collection::vec(coords.clone(), 0..n + 1)
                        .prop_map(SubspaceDescriptor::Span),
                ],
                prop::option::of(coords),
            )
                .prop_map(
                    move |(apex, axis, half_aperture, flavor, subspace, offset)| {
                        InstanceDescriptor {
                            dimension: n,
                            cone: ConeDescriptor {
                                apex,
                                axis,
                                half_aperture,
                                flavor,
                            },
                            subspace,
                            offset,
                        }
                    },
                )
        })
    }

    proptest! {
        #[test]
        fn roundtrip_equals_normalized(d in descriptor()) {
            let text = d.to_json();
            let parsed = InstanceDescriptor::from_json(&text).unwrap();
            let normal = d.normalized().unwrap();
            prop_assert_eq!(&parsed.normalized().unwrap(), &normal);
            let again = InstanceDescriptor::from_json(&normal.to_json()).unwrap();
            prop_assert_eq!(again, normal.clone());
            prop_assert_eq!(normal.normalized().unwrap(), normal);
        }
    }
}
