//! Families of configurations: anything that can draw a fresh generic
//! configuration from a sampler, including the JSON configuration schema and
//! the inline shorthand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{random_point, random_subspace, GenericSampler, ProjPoint, Subspace};
use crate::schemes::{Configuration, DegenerateConic, SundialSpec};

pub trait Family<F: Field>: Sync {
    fn sample(&self, field: &F, sampler: &mut GenericSampler) -> Result<Configuration<F>>;
}

impl<F, T> Family<F> for T
where
    F: Field,
    T: Fn(&F, &mut GenericSampler) -> Result<Configuration<F>> + Sync,
{
    fn sample(&self, field: &F, sampler: &mut GenericSampler) -> Result<Configuration<F>> {
        self(field, sampler)
    }
}

/// A single configuration used as a family; every trial sees the same one.
pub struct Fixed<F: Field>(pub Configuration<F>);

impl<F: Field> Family<F> for Fixed<F> {
    fn sample(&self, _: &F, _: &mut GenericSampler) -> Result<Configuration<F>> {
        Ok(self.0.clone())
    }
}

/// Configuration schema, version 1.
///
/// ```json
/// {"schema": 1, "n": 4, "components": [
///   {"kind": "linear", "dim": 2},
///   {"kind": "linear", "dim": 1, "count": 6},
///   {"kind": "point", "coords": [1, 0, 0, 0, 0]}
/// ]}
/// ```
///
/// Components without `coords` are sampled generically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigTemplate {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub n: usize,
    #[serde(default)]
    pub components: Vec<ComponentTemplate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ComponentTemplate {
    Linear {
        dim: usize,
        #[serde(default = "one")]
        count: usize,
        /// Spanning vectors, `dim + 1` of them.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coords: Option<Vec<Vec<i64>>>,
    },
    Point {
        #[serde(default = "one")]
        count: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coords: Option<Vec<i64>>,
    },
    Sundial {
        m: usize,
        #[serde(default = "one")]
        count: usize,
    },
    DegenerateConic {
        #[serde(default = "one")]
        count: usize,
    },
}

pub(crate) fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn one() -> usize {
    1
}

pub const SCHEMA_VERSION: u32 = 1;

impl ConfigTemplate {
    pub fn new(n: usize) -> Self {
        ConfigTemplate {
            schema: SCHEMA_VERSION,
            n,
            components: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: ConfigTemplate =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("template serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema version {}",
                self.schema
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be positive".into(),
            ));
        }
        let n = self.n;
        for c in &self.components {
            match c {
                ComponentTemplate::Linear { dim, count, coords } => {
                    if *dim > n {
                        return Err(Error::DimensionOutOfRange { m: *dim, n });
                    }
                    if let Some(v) = coords {
                        if *count != 1 {
                            return Err(Error::InvalidInput(
                                "explicit coordinates require count 1".into(),
                            ));
                        }
                        if v.len() != dim + 1 || v.iter().any(|r| r.len() != n + 1) {
                            return Err(Error::InvalidInput(format!(
                                "a {dim}-dimensional space needs {} vectors of length {}",
                                dim + 1,
                                n + 1
                            )));
                        }
                    }
                }
                ComponentTemplate::Point { count, coords } => {
                    if let Some(v) = coords {
                        if *count != 1 {
                            return Err(Error::InvalidInput(
                                "explicit coordinates require count 1".into(),
                            ));
                        }
                        if v.len() != n + 1 {
                            return Err(Error::InvalidInput(format!(
                                "point needs {} coordinates",
                                n + 1
                            )));
                        }
                    }
                }
                ComponentTemplate::Sundial { m, .. } => {
                    if *m == 0 || n < m + 2 {
                        return Err(Error::DimensionOutOfRange { m: m + 2, n });
                    }
                }
                ComponentTemplate::DegenerateConic { .. } => {
                    if n < 2 {
                        return Err(Error::DimensionOutOfRange { m: 2, n });
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses `P<n>: [k points] [+ plane] [+ s lines] [+ j sundials] [+ c conics]`.
    ///
    /// Terms may appear in any order and repeat. Nouns: `point`, `line`,
    /// `plane`, `sundial`, `conic`, and `<k>-space` for a `k`-dimensional
    /// linear space; each takes an optional leading count and plural `s`.
    /// `P3:` and `P3: empty` denote the empty configuration.
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("{msg} in `{text}`"));
        let (head, body) = text.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let head = head.trim();
        let n: usize = head
            .strip_prefix('P')
            .or_else(|| head.strip_prefix('p'))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("expected `P<n>` before `:`"))?;
        let mut t = ConfigTemplate::new(n);
        let body = body.trim();
        if body.is_empty() || body == "empty" {
            t.validate()?;
            return Ok(t);
        }
        for term in body.split('+') {
            let words: Vec<&str> = term.split_whitespace().collect();
            let (count, noun) = match words.as_slice() {
                [noun] => (1, *noun),
                [k, noun] => (k.parse::<usize>().map_err(|_| bad("bad count"))?, *noun),
                _ => return Err(bad("bad term")),
            };
            let noun = noun.strip_suffix('s').unwrap_or(noun);
            let component = match noun {
                "point" => ComponentTemplate::Point {
                    count,
                    coords: None,
                },
                "line" => ComponentTemplate::Linear {
                    dim: 1,
                    count,
                    coords: None,
                },
                "plane" => ComponentTemplate::Linear {
                    dim: 2,
                    count,
                    coords: None,
                },
                "sundial" => ComponentTemplate::Sundial { m: 1, count },
                "conic" => ComponentTemplate::DegenerateConic { count },
                other => match other.strip_suffix("-space").and_then(|k| k.parse().ok()) {
                    Some(dim) => ComponentTemplate::Linear {
                        dim,
                        count,
                        coords: None,
                    },
                    None => return Err(bad(&format!("unknown component `{other}`"))),
                },
            };
            if count > 0 {
                t.components.push(component);
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// Accepts either JSON or shorthand.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_shorthand(text)
        }
    }
}

impl<F: Field> Family<F> for ConfigTemplate {
    fn sample(&self, field: &F, sampler: &mut GenericSampler) -> Result<Configuration<F>> {
        self.validate()?;
        let n = self.n;
        let mut x = Configuration::new(n);
        for c in &self.components {
            match c {
                ComponentTemplate::Linear { dim, count, coords } => match coords {
                    Some(v) => {
                        let rows: Vec<&[i64]> = v.iter().map(|r| r.as_slice()).collect();
                        x.push_linear(Subspace::from_i64(field, &rows)?)?;
                    }
                    None => {
                        for _ in 0..*count {
                            x.push_linear(random_subspace(field, sampler, n, *dim)?)?;
                        }
                    }
                },
                ComponentTemplate::Point { count, coords } => match coords {
                    Some(v) => x.push_point(ProjPoint::from_i64(field, v)?)?,
                    None => {
                        for _ in 0..*count {
                            x.push_point(random_point(field, sampler, n)?)?;
                        }
                    }
                },
                ComponentTemplate::Sundial { m, count } => {
                    for _ in 0..*count {
                        x.push_sundial(field, SundialSpec::sample(field, sampler, n, *m)?)?;
                    }
                }
                ComponentTemplate::DegenerateConic { count } => {
                    for _ in 0..*count {
                        x.push_conic(field, DegenerateConic::sample(field, sampler, n)?)?;
                    }
                }
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn shorthand() {
        let t = ConfigTemplate::parse_shorthand("P4: plane + 6 lines").unwrap();
        assert_eq!(t.n, 4);
        assert_eq!(
            t.components,
            vec![
                ComponentTemplate::Linear {
                    dim: 2,
                    count: 1,
                    coords: None
                },
                ComponentTemplate::Linear {
                    dim: 1,
                    count: 6,
                    coords: None
                },
            ]
        );
        let t = ConfigTemplate::parse_shorthand(
            "P4: 2 points + plane + 2 lines + 1 sundial + 3 conics",
        )
        .unwrap();
        assert_eq!(t.components.len(), 5);
        assert!(ConfigTemplate::parse_shorthand("P3:")
            .unwrap()
            .components
            .is_empty());
        assert!(ConfigTemplate::parse_shorthand("P3 plane").is_err());
        assert!(ConfigTemplate::parse_shorthand("P3: 2 blobs").is_err());
        assert!(ConfigTemplate::parse_shorthand("P2: sundial").is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{"schema":1,"n":3,"components":[{"kind":"linear","dim":1,"count":2},
            {"kind":"point","coords":[1,0,0,0]},{"kind":"sundial","m":1},{"kind":"degenerate-conic"}]}"#;
        let t = ConfigTemplate::from_json(text).unwrap();
        assert_eq!(ConfigTemplate::from_json(&t.to_json()).unwrap(), t);
        assert!(ConfigTemplate::from_json(r#"{"schema":2,"n":3}"#).is_err());
        assert!(ConfigTemplate::from_json(
            r#"{"schema":1,"n":3,"components":[{"kind":"linear","dim":4}]}"#
        )
        .is_err());
        assert!(ConfigTemplate::from_json(
            r#"{"schema":1,"n":3,"components":[{"kind":"point","coords":[1,0]}]}"#
        )
        .is_err());
        assert!(ConfigTemplate::parse(text).is_ok());
    }

    #[test]
    fn sampling_follows_the_template() {
        let fl = PrimeField::default();
        let t =
            ConfigTemplate::parse_shorthand("P4: plane + 3 lines + 2 points + sundial").unwrap();
        let x = Family::<PrimeField>::sample(&t, &fl, &mut GenericSampler::new(1)).unwrap();
        assert_eq!(x.groups().len(), 7);
        assert_eq!(x.len(), 9);
        assert_eq!(
            x.shape().describe(),
            "plane + 3 lines + 1 sundial(m=1) + 2 points"
        );
    }
}
