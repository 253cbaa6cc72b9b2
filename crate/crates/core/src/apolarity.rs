//! Sums of subrings generated by groups of dual linear forms, and their
//! duality with configurations of linear spaces.
//!
//! A group of `k` independent linear forms in `y_0..y_n` spans the degree-d
//! part of the subring it generates; its perp is the degree-d part of the
//! ideal of a `(k-1)`-dimensional linear space. So `T_d` is a sum of such
//! subrings exactly when the dual configuration has no forms of degree `d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{GenericSampler, Subspace};
use crate::matrix::ExactMatrix;
use crate::polyspace::{monomial_count_usize, power_products};
use crate::postulation::conditions::{hilbert_function, Engine};
use crate::postulation::expected::p3_plane_lines_expected;
use crate::schemes::Configuration;

const MAX_RESAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "role", content = "size")]
pub enum GroupRole {
    Pair,
    Triple,
    General(usize),
}

impl GroupRole {
    pub fn of_size(k: usize) -> Self {
        match k {
            2 => GroupRole::Pair,
            3 => GroupRole::Triple,
            k => GroupRole::General(k),
        }
    }
}

/// Independent dual linear forms, as coefficient vectors in `y_0..y_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormGroup<F: Field> {
    generators: Vec<Vec<F::Elem>>,
}

impl<F: Field> FormGroup<F> {
    pub fn new(field: &F, generators: Vec<Vec<F::Elem>>) -> Result<Self> {
        let len = generators.first().ok_or(Error::EmptyList)?.len();
        if let Some(g) = generators.iter().find(|g| g.len() != len) {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: g.len(),
            });
        }
        if field.rank_of(generators.clone(), len) != generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(FormGroup { generators })
    }

    pub fn random(field: &F, sampler: &mut GenericSampler, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n + 1 {
            return Err(Error::DimensionOutOfRange { m: k, n: n + 1 });
        }
        for _ in 0..MAX_RESAMPLES {
            let gens = (0..k).map(|_| sampler.vector(field, n + 1)).collect();
            match Self::new(field, gens) {
                Ok(g) => return Ok(g),
                Err(Error::DependentGenerators) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }

    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.generators.len()
    }

    pub fn role(&self) -> GroupRole {
        GroupRole::of_size(self.size())
    }
}

/// A decomposition question: is `T_d` the sum of the subrings of the groups?
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionInstance<F: Field> {
    pub n: usize,
    pub groups: Vec<FormGroup<F>>,
}

impl<F: Field> DecompositionInstance<F> {
    pub fn new(n: usize, groups: Vec<FormGroup<F>>) -> Result<Self> {
        if let Some(g) = groups.iter().find(|g| g.generators[0].len() != n + 1) {
            return Err(Error::AmbientMismatch(n, g.generators[0].len() - 1));
        }
        Ok(DecompositionInstance { n, groups })
    }

    /// `s` pairs and exactly one triple: the shape the theorems cover.
    pub fn is_pairs_and_triple(&self) -> bool {
        let triples = self.groups.iter().filter(|g| g.size() == 3).count();
        triples == 1 && self.groups.iter().all(|g| g.size() == 2 || g.size() == 3)
    }

    pub fn pair_count(&self) -> usize {
        self.groups.iter().filter(|g| g.size() == 2).count()
    }
}

/// Rows are the expansions of all degree-d monomials in the group's forms, in
/// the grlex basis of `T_d`.
pub fn subring_span_matrix<F: Field>(
    field: &F,
    g: &FormGroup<F>,
    d: u32,
) -> Result<ExactMatrix<F>> {
    if d == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    let nvars = g.generators[0].len();
    let rows = power_products(field, &g.generators, nvars, d);
    ExactMatrix::from_rows(field.clone(), monomial_count_usize(nvars, d), rows)
}

/// Rank of the stacked subring spans, `dim sum_i (k[group_i])_d`.
pub fn span_rank<F: Field>(field: &F, inst: &DecompositionInstance<F>, d: u32) -> Result<usize> {
    let cols = monomial_count_usize(inst.n + 1, d);
    let mut rows = Vec::new();
    for g in &inst.groups {
        rows.extend(subring_span_matrix(field, g, d)?.to_rows());
    }
    Ok(field.rank_of(rows, cols))
}

/// The linear space whose degree-1 ideal is the perp of a group's span.
///
/// Computed as the common zeros of the linear forms annihilating every
/// generator under `<x_i, y_j> = delta_ij`.
pub fn dual_subspace<F: Field>(field: &F, g: &FormGroup<F>) -> Result<Subspace<F>> {
    let len = g.generators[0].len();
    let equations =
        ExactMatrix::from_rows(field.clone(), len, g.generators.clone())?.kernel_basis();
    if equations.is_empty() {
        return Ok(Subspace::full(field, len - 1));
    }
    let zeros = ExactMatrix::from_rows(field.clone(), len, equations)?.kernel_basis();
    Subspace::new(field, zeros)
}

pub fn dual_configuration<F: Field>(
    field: &F,
    inst: &DecompositionInstance<F>,
) -> Result<Configuration<F>> {
    let mut x = Configuration::new(inst.n);
    for g in &inst.groups {
        x.push_linear(dual_subspace(field, g)?)?;
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: usize,
    pub d: u32,
    pub decomposable: bool,
    /// `dim (I_X)_d` of the dual configuration, the codimension of the sum
    /// of subrings in `T_d`.
    pub defect: usize,
    pub span_rank: usize,
    /// Whether the shape is `s` pairs plus one triple.
    pub certified: bool,
    /// `rank(spans) + dim (I_X)_d = C(n+d, d)` on every trial.
    pub duality_holds: bool,
    pub trials_agreed: bool,
}

/// Decides one fixed instance, returning `(span rank, dim (I_X)_d)`.
pub fn decide<F: Field>(
    field: &F,
    inst: &DecompositionInstance<F>,
    d: u32,
) -> Result<(usize, usize)> {
    let total = monomial_count_usize(inst.n + 1, d);
    let x = dual_configuration(field, inst)?;
    Ok((
        span_rank(field, inst, d)?,
        total - hilbert_function(field, &x, d)?,
    ))
}

/// Answers the question for generic instances drawn from `template`, with
/// the duality identity checked on every trial.
pub fn decomposable<F: Field>(
    engine: &Engine<F>,
    template: &InstanceTemplate,
    d: u32,
) -> Result<Decomposition> {
    if d == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    let total = monomial_count_usize(template.n + 1, d);
    let results = (0..engine.trials() as u64)
        .into_par_iter()
        .map(|i| {
            let inst = template.sample(engine.field(), &mut engine.sampler().split(i))?;
            let (rank, ideal) = decide(engine.field(), &inst, d)?;
            Ok((rank, ideal, inst.is_pairs_and_triple()))
        })
        .collect::<Result<Vec<_>>>()?;
    let span = results.iter().map(|r| r.0).max().unwrap_or(0);
    let defect = results.iter().map(|r| r.1).min().unwrap_or(total);
    Ok(Decomposition {
        n: template.n,
        d,
        decomposable: defect == 0,
        defect,
        span_rank: span,
        certified: results[0].2,
        duality_holds: results.iter().all(|r| r.0 + r.1 == total),
        trials_agreed: results.windows(2).all(|w| w[0] == w[1]),
    })
}

/// The `P^3` closed form for `s` pairs and one triple: `max{0, C(d+2,3) - sd}`.
pub fn p3_star_defect(d: u32, pairs: usize) -> usize {
    p3_plane_lines_expected(d, pairs) as usize
}

/// Instance schema, version 1.
///
/// ```json
/// {"schema": 1, "n": 3, "groups": [{"size": 2}, {"size": 2}, {"size": 3}], "d": 2}
/// ```
///
/// Groups without `generators` are sampled generically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceTemplate {
    #[serde(default = "crate::family::schema_version")]
    pub schema: u32,
    pub n: usize,
    pub groups: Vec<GroupTemplate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTemplate {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
}

impl InstanceTemplate {
    pub fn pairs_and_triple(n: usize, pairs: usize) -> Self {
        let mut groups = vec![
            GroupTemplate {
                size: 2,
                generators: None
            };
            pairs
        ];
        groups.push(GroupTemplate {
            size: 3,
            generators: None,
        });
        InstanceTemplate {
            schema: crate::family::SCHEMA_VERSION,
            n,
            groups,
            d: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: InstanceTemplate =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    /// Parses `P<n>: [s pairs] [+ triple] [+ k-group]`.
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("{msg} in `{text}`"));
        let (head, body) = text.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let n: usize = head
            .trim()
            .trim_start_matches(['P', 'p'])
            .parse()
            .map_err(|_| bad("expected `P<n>` before `:`"))?;
        let mut groups = Vec::new();
        for term in body.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let words: Vec<&str> = term.split_whitespace().collect();
            let (count, noun) = match words.as_slice() {
                [noun] => (1, *noun),
                [k, noun] => (k.parse::<usize>().map_err(|_| bad("bad count"))?, *noun),
                _ => return Err(bad("bad term")),
            };
            let noun = noun.strip_suffix('s').unwrap_or(noun);
            let size = match noun {
                "pair" => 2,
                "triple" => 3,
                other => other
                    .strip_suffix("-group")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| bad(&format!("unknown group `{other}`")))?,
            };
            groups.extend(std::iter::repeat_n(
                GroupTemplate {
                    size,
                    generators: None,
                },
                count,
            ));
        }
        let t = InstanceTemplate {
            schema: crate::family::SCHEMA_VERSION,
            n,
            groups,
            d: None,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_shorthand(text)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != crate::family::SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema version {}",
                self.schema
            )));
        }
        if self.groups.is_empty() {
            return Err(Error::EmptyList);
        }
        for g in &self.groups {
            if g.size == 0 || g.size > self.n + 1 {
                return Err(Error::InvalidInput(format!(
                    "group size {} outside 1..={}",
                    g.size,
                    self.n + 1
                )));
            }
            if let Some(v) = &g.generators {
                if v.len() != g.size || v.iter().any(|r| r.len() != self.n + 1) {
                    return Err(Error::InvalidInput(format!(
                        "a group of size {} needs {} generators of length {}",
                        g.size,
                        g.size,
                        self.n + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_pairs_and_triple(&self) -> bool {
        let triples = self.groups.iter().filter(|g| g.size == 3).count();
        triples == 1 && self.groups.iter().all(|g| g.size == 2 || g.size == 3)
    }

    pub fn describe(&self) -> String {
        let pairs = self.groups.iter().filter(|g| g.size == 2).count();
        let mut parts = Vec::new();
        if pairs > 0 {
            parts.push(format!("{pairs} pair{}", if pairs == 1 { "" } else { "s" }));
        }
        for g in &self.groups {
            match g.size {
                2 => {}
                3 => parts.push("triple".into()),
                k => parts.push(format!("{k}-group")),
            }
        }
        parts.join(" + ")
    }

    pub fn sample<F: Field>(
        &self,
        field: &F,
        sampler: &mut GenericSampler,
    ) -> Result<DecompositionInstance<F>> {
        self.validate()?;
        let groups = self
            .groups
            .iter()
            .map(|g| match &g.generators {
                Some(v) => FormGroup::new(
                    field,
                    v.iter()
                        .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                        .collect(),
                ),
                None => FormGroup::random(field, sampler, self.n, g.size),
            })
            .collect::<Result<Vec<_>>>()?;
        DecompositionInstance::new(self.n, groups)
    }
}
