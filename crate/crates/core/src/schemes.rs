//! Scheme components, configurations, sundials and degenerate conics, and the
//! residual/trace rules with respect to a hyperplane.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{random_point, random_subspace, span, GenericSampler, ProjPoint, Subspace};
use crate::postulation::expected::Shape;

const MAX_RESAMPLES: usize = 64;

/// One piece of a scheme.
#[derive(Clone, Debug)]
pub enum Component<F: Field> {
    Linear(Subspace<F>),
    Point(ProjPoint<F>),
    /// The double point at `point` restricted to `tangent`, cut out by
    /// first-order vanishing at `point` in the directions of `tangent`.
    Jet {
        point: ProjPoint<F>,
        tangent: Subspace<F>,
    },
}

impl<F: Field> Component<F> {
    pub fn jet(field: &F, point: ProjPoint<F>, tangent: Subspace<F>) -> Result<Self> {
        if point.ambient_dim() != tangent.ambient_dim() {
            return Err(Error::AmbientMismatch(
                tangent.ambient_dim(),
                point.ambient_dim(),
            ));
        }
        if !tangent.contains(field, &point)? {
            return Err(Error::NotContained);
        }
        Ok(Component::Jet { point, tangent })
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Component::Linear(s) => s.ambient_dim(),
            Component::Point(p) => p.ambient_dim(),
            Component::Jet { point, .. } => point.ambient_dim(),
        }
    }

    fn singleton_kind(&self) -> GroupKind {
        match self {
            Component::Linear(s) => GroupKind::Linear { dim: s.dim() },
            Component::Point(_) => GroupKind::Point,
            Component::Jet { tangent, .. } => GroupKind::Jet {
                tangent_dim: tangent.dim(),
            },
        }
    }
}

/// How a run of consecutive components is to be read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GroupKind {
    Linear {
        dim: usize,
    },
    Point,
    Jet {
        tangent_dim: usize,
    },
    /// `L + Pi + 2P|_T` with `dim Pi = m`, stored as those three components.
    Sundial {
        m: usize,
    },
    /// Two lines through a common point, stored as two components.
    DegenerateConic,
}

impl GroupKind {
    fn component_count(&self) -> usize {
        match self {
            GroupKind::Sundial { .. } => 3,
            GroupKind::DegenerateConic => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub kind: GroupKind,
    pub range: Range<usize>,
    pub label: Option<String>,
}

/// A finite union of components of `P^n`, with the grouping used for
/// expected-dimension bookkeeping and reporting.
#[derive(Clone, Debug)]
pub struct Configuration<F: Field> {
    ambient: usize,
    components: Vec<Component<F>>,
    groups: Vec<Group>,
}

impl<F: Field> Configuration<F> {
    pub fn new(ambient: usize) -> Self {
        Configuration {
            ambient,
            components: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn components(&self) -> &[Component<F>] {
        &self.components
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn push_group(
        &mut self,
        kind: GroupKind,
        parts: Vec<Component<F>>,
        label: Option<String>,
    ) -> Result<()> {
        debug_assert_eq!(parts.len(), kind.component_count());
        if let Some(c) = parts.iter().find(|c| c.ambient_dim() != self.ambient) {
            return Err(Error::AmbientMismatch(self.ambient, c.ambient_dim()));
        }
        let start = self.components.len();
        self.components.extend(parts);
        self.groups.push(Group {
            kind,
            range: start..self.components.len(),
            label,
        });
        Ok(())
    }

    /// Appends a single component as its own group.
    pub fn push(&mut self, component: Component<F>) -> Result<()> {
        let kind = component.singleton_kind();
        self.push_group(kind, vec![component], None)
    }

    pub fn push_linear(&mut self, s: Subspace<F>) -> Result<()> {
        self.push(Component::Linear(s))
    }

    pub fn push_point(&mut self, p: ProjPoint<F>) -> Result<()> {
        self.push(Component::Point(p))
    }

    pub fn push_sundial(&mut self, field: &F, spec: SundialSpec<F>) -> Result<()> {
        let m = spec.plane.dim();
        let jet = Component::jet(field, spec.point, spec.tangent)?;
        self.push_group(
            GroupKind::Sundial { m },
            vec![
                Component::Linear(spec.line),
                Component::Linear(spec.plane),
                jet,
            ],
            None,
        )
    }

    pub fn push_conic(&mut self, field: &F, conic: DegenerateConic<F>) -> Result<()> {
        let label = format!("vertex {}", render_point(field, &conic.vertex));
        self.push_group(
            GroupKind::DegenerateConic,
            vec![
                Component::Linear(conic.first),
                Component::Linear(conic.second),
            ],
            Some(label),
        )
    }

    /// Appends all groups of `other`.
    pub fn extend(&mut self, other: Configuration<F>) -> Result<()> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let offset = self.components.len();
        self.components.extend(other.components);
        self.groups.extend(other.groups.into_iter().map(|g| Group {
            range: g.range.start + offset..g.range.end + offset,
            ..g
        }));
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        if let Some(g) = self.groups.last_mut() {
            g.label = Some(label.into());
        }
        self
    }

    /// Multiset of group kinds, for expected-dimension bookkeeping.
    pub fn shape(&self) -> Shape {
        let mut shape = Shape::default();
        for g in &self.groups {
            match g.kind {
                GroupKind::Linear { dim } => shape.linear.push(dim),
                GroupKind::Point => shape.points += 1,
                GroupKind::Jet { tangent_dim } => shape.jets.push(tangent_dim),
                GroupKind::Sundial { m } => shape.sundials.push(m),
                GroupKind::DegenerateConic => shape.conics += 1,
            }
        }
        shape
    }
}

fn render_point<F: Field>(field: &F, p: &ProjPoint<F>) -> String {
    let coords: Vec<String> = p.coords().iter().map(|x| field.render(x)).collect();
    format!("[{}]", coords.join(":"))
}

/// The pieces of an `(m+2)`-dimensional sundial.
#[derive(Clone, Debug)]
pub struct SundialSpec<F: Field> {
    pub line: Subspace<F>,
    pub plane: Subspace<F>,
    pub point: ProjPoint<F>,
    pub tangent: Subspace<F>,
}

impl<F: Field> SundialSpec<F> {
    /// A generic sundial in `P^n` with `dim Pi = m`.
    pub fn sample(field: &F, sampler: &mut GenericSampler, n: usize, m: usize) -> Result<Self> {
        if m == 0 || n < m + 2 {
            return Err(Error::DimensionOutOfRange { m: m + 2, n });
        }
        let plane = random_subspace(field, sampler, n, m)?;
        Self::sample_on(field, sampler, plane, None)
    }

    /// A sundial on a given `Pi`, with `L` drawn inside `line_within` (the
    /// whole space when `None`). `T` is `span(L, Pi)` plus one generic point
    /// of the ambient space.
    pub fn sample_on(
        field: &F,
        sampler: &mut GenericSampler,
        plane: Subspace<F>,
        line_within: Option<&Subspace<F>>,
    ) -> Result<Self> {
        let n = plane.ambient_dim();
        let m = plane.dim();
        if m == 0 || n < m + 2 {
            return Err(Error::DimensionOutOfRange { m: m + 2, n });
        }
        if let Some(c) = line_within {
            if !c.contains_sub(field, &plane.random_point(field, sampler)?.to_subspace())? {
                return Err(Error::NotContained);
            }
        }
        let point = plane.random_point(field, sampler)?;
        let full = Subspace::full(field, n);
        let container = line_within.unwrap_or(&full);
        for _ in 0..MAX_RESAMPLES {
            let q = container.random_point(field, sampler)?;
            if plane.contains(field, &q)? {
                continue;
            }
            let line = span(field, &[&point.to_subspace(), &q.to_subspace()])?;
            let base = span(field, &[&line, &plane])?;
            let extra = random_point(field, sampler, n)?.to_subspace();
            let tangent = span(field, &[&base, &extra])?;
            if tangent.dim() != m + 2 {
                continue;
            }
            return Ok(SundialSpec {
                line,
                plane,
                point,
                tangent,
            });
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }

    /// Checks `P in L`, `P in Pi`, `L not in Pi`, `L, Pi in T`, `dim T = m+2`.
    pub fn check(&self, field: &F) -> Result<bool> {
        Ok(self.line.dim() == 1
            && self.line.contains(field, &self.point)?
            && self.plane.contains(field, &self.point)?
            && !self.plane.contains_sub(field, &self.line)?
            && self.tangent.contains_sub(field, &self.line)?
            && self.tangent.contains_sub(field, &self.plane)?
            && self.tangent.dim() == self.plane.dim() + 2)
    }
}

/// Two lines meeting in exactly one point.
#[derive(Clone, Debug)]
pub struct DegenerateConic<F: Field> {
    pub first: Subspace<F>,
    pub second: Subspace<F>,
    pub vertex: ProjPoint<F>,
}

impl<F: Field> DegenerateConic<F> {
    pub fn sample(field: &F, sampler: &mut GenericSampler, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionOutOfRange { m: 2, n });
        }
        let vertex = random_point(field, sampler, n)?;
        for _ in 0..MAX_RESAMPLES {
            let a = random_point(field, sampler, n)?.to_subspace();
            let b = random_point(field, sampler, n)?.to_subspace();
            let v = vertex.to_subspace();
            let plane = span(field, &[&v, &a, &b])?;
            if plane.dim() != 2 {
                continue;
            }
            return Ok(DegenerateConic {
                first: span(field, &[&v, &a])?,
                second: span(field, &[&v, &b])?,
                vertex,
            });
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }
}

/// A generic degenerate conic as a two-component configuration.
pub fn make_degenerate_conic<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
) -> Result<Configuration<F>> {
    let conic = DegenerateConic::sample(field, sampler, n)?;
    let mut x = Configuration::new(n);
    x.push_conic(field, conic)?;
    Ok(x)
}

/// A generic `(m+2)`-dimensional sundial as a three-component configuration.
pub fn make_sundial<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    m: usize,
) -> Result<Configuration<F>> {
    let spec = SundialSpec::sample(field, sampler, n, m)?;
    let mut x = Configuration::new(n);
    x.push_sundial(field, spec)?;
    Ok(x)
}

/// `Res_H X`, component by component.
///
/// Linear spaces and points inside `H` disappear, everything off `H` stays,
/// and a jet point supported on `H` whose tangent space leaves `H` becomes
/// its reduced point. Groups of the result are single components.
pub fn residual<F: Field>(
    field: &F,
    x: &Configuration<F>,
    h: &Subspace<F>,
) -> Result<Configuration<F>> {
    check_hyperplane(x, h)?;
    let mut out = Configuration::new(x.ambient);
    for c in &x.components {
        match c {
            Component::Linear(s) => {
                if !h.contains_sub(field, s)? {
                    out.push(c.clone())?;
                }
            }
            Component::Point(p) => {
                if !h.contains(field, p)? {
                    out.push(c.clone())?;
                }
            }
            Component::Jet { point, tangent } => {
                if !h.contains(field, point)? {
                    out.push(c.clone())?;
                } else if h.contains_sub(field, tangent)? {
                    return Err(Error::UnsupportedResidual);
                } else {
                    out.push_point(point.clone())?;
                }
            }
        }
    }
    Ok(out)
}

/// `Tr_H X` as a configuration of `P^(n-1)`, in the coordinates of `h`'s
/// parametrization.
///
/// This is the union of the traces of the components. It may be smaller than
/// the schematic intersection, so its ideal can only be larger, which keeps
/// Castelnuovo's inequality valid.
pub fn trace<F: Field>(
    field: &F,
    x: &Configuration<F>,
    h: &Subspace<F>,
) -> Result<Configuration<F>> {
    check_hyperplane(x, h)?;
    let mut out = Configuration::new(x.ambient - 1);
    for c in &x.components {
        match c {
            Component::Linear(s) => {
                let piece = if h.contains_sub(field, s)? {
                    s.clone()
                } else if s.dim() == 0 {
                    continue;
                } else {
                    s.intersect_hyperplane(field, h)?
                };
                let piece = piece.in_hyperplane_coords(field, h)?;
                if piece.dim() == 0 {
                    out.push_point(ProjPoint::new(field, piece.basis()[0].clone())?)?;
                } else {
                    out.push_linear(piece)?;
                }
            }
            Component::Point(p) => {
                if h.contains(field, p)? {
                    out.push_point(point_in(field, p, h)?)?;
                }
            }
            Component::Jet { point, tangent } => {
                if !h.contains(field, point)? {
                    continue;
                }
                let cut = if h.contains_sub(field, tangent)? {
                    tangent.clone()
                } else {
                    tangent.intersect_hyperplane(field, h)?
                };
                let p = point_in(field, point, h)?;
                if cut.dim() == 0 {
                    out.push_point(p)?;
                } else {
                    out.push(Component::jet(
                        field,
                        p,
                        cut.in_hyperplane_coords(field, h)?,
                    )?)?;
                }
            }
        }
    }
    Ok(out)
}

fn point_in<F: Field>(field: &F, p: &ProjPoint<F>, h: &Subspace<F>) -> Result<ProjPoint<F>> {
    let s = p.to_subspace().in_hyperplane_coords(field, h)?;
    ProjPoint::new(field, s.basis()[0].clone())
}

fn check_hyperplane<F: Field>(x: &Configuration<F>, h: &Subspace<F>) -> Result<()> {
    if h.ambient_dim() != x.ambient {
        return Err(Error::AmbientMismatch(x.ambient, h.ambient_dim()));
    }
    if h.dim() + 1 != x.ambient {
        return Err(Error::NotAHyperplane {
            expected: x.ambient - 1,
            found: h.dim(),
        });
    }
    Ok(())
}
