//! Conditions matrices and the Hilbert function engine.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::family::Family;
use crate::field::Field;
use crate::geometry::GenericSampler;
use crate::matrix::ExactMatrix;
use crate::polyspace::{
    directional_derivative_row, evaluation_row, monomial_count_usize, restriction_matrix,
};
use crate::schemes::{Component, Configuration};

/// The stacked linear conditions a configuration imposes on degree-d forms.
#[derive(Clone, Debug)]
pub struct ConditionsMatrix<F: Field> {
    pub degree: u32,
    pub matrix: ExactMatrix<F>,
    /// Row range of each component, in configuration order.
    pub blocks: Vec<Range<usize>>,
}

impl<F: Field> ConditionsMatrix<F> {
    pub fn hf(&self) -> usize {
        self.matrix.rank()
    }

    pub fn ideal_dim(&self) -> usize {
        self.matrix.kernel_dim()
    }
}

/// Rows imposed by one component on degree-d forms.
///
/// A linear space of dimension `m` gives `C(m+d, d)` rows, a point one row,
/// and a jet point `2P|_T` one evaluation row plus one derivative row for
/// each of `dim T` directions spanning `T` modulo `P` (only the evaluation
/// row when `d = 0`).
pub fn component_rows<F: Field>(field: &F, c: &Component<F>, d: u32) -> Result<Vec<Vec<F::Elem>>> {
    match c {
        Component::Linear(s) => Ok(restriction_matrix(&s.param(field), d)?.to_rows()),
        Component::Point(p) => Ok(vec![evaluation_row(field, p.coords(), d)?]),
        Component::Jet { point, tangent } => {
            let mut rows = vec![evaluation_row(field, point.coords(), d)?];
            if d == 0 {
                return Ok(rows);
            }
            for q in jet_directions(field, point.coords(), tangent.basis()) {
                rows.push(directional_derivative_row(field, point.coords(), &q, d)?);
            }
            Ok(rows)
        }
    }
}

/// Basis vectors of `T` that together with `P` span `T`.
fn jet_directions<F: Field>(field: &F, p: &[F::Elem], basis: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
    let mut span = vec![p.to_vec()];
    for v in basis {
        if chosen.len() + 1 == basis.len() {
            break;
        }
        span.push(v.clone());
        if field.rank_of(span.clone(), p.len()) == span.len() {
            chosen.push(v.clone());
        } else {
            span.pop();
        }
    }
    chosen
}

pub fn conditions_matrix<F: Field>(
    field: &F,
    x: &Configuration<F>,
    d: u32,
) -> Result<ConditionsMatrix<F>> {
    let cols = monomial_count_usize(x.ambient_dim() + 1, d);
    let mut rows = Vec::new();
    let mut blocks = Vec::with_capacity(x.len());
    for c in x.components() {
        let start = rows.len();
        rows.extend(component_rows(field, c, d)?);
        blocks.push(start..rows.len());
    }
    Ok(ConditionsMatrix {
        degree: d,
        matrix: ExactMatrix::from_rows(field.clone(), cols, rows)?,
        blocks,
    })
}

/// `HF(X, d)`, the rank of the conditions matrix.
pub fn hilbert_function<F: Field>(field: &F, x: &Configuration<F>, d: u32) -> Result<usize> {
    let cols = monomial_count_usize(x.ambient_dim() + 1, d);
    let mut rows = Vec::new();
    for c in x.components() {
        rows.extend(component_rows(field, c, d)?);
    }
    Ok(field.rank_of(rows, cols))
}

/// `dim (I_X)_d` of a fixed configuration.
pub fn ideal_dim_of<F: Field>(field: &F, x: &Configuration<F>, d: u32) -> Result<usize> {
    Ok(monomial_count_usize(x.ambient_dim() + 1, d) - hilbert_function(field, x, d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRecord {
    pub n: usize,
    pub d: u32,
    pub hf: usize,
    pub ideal_dim: usize,
    /// `None` for the empty configuration, which carries no expectation.
    pub expected_ideal_dim: Option<usize>,
    pub trials_agreed: bool,
    pub ranks: Vec<usize>,
}

impl HilbertRecord {
    /// Whether the computed dimension matches the expectation, if any.
    pub fn matches_expected(&self) -> Option<bool> {
        self.expected_ideal_dim.map(|e| e == self.ideal_dim)
    }
}

/// Runs Hilbert function computations over fresh generic samples.
///
/// Trial `i` draws its configuration from `sampler.split(i)`; the reported
/// rank is the maximum over trials.
#[derive(Clone, Debug)]
pub struct Engine<F: Field> {
    field: F,
    sampler: GenericSampler,
    trials: usize,
}

impl<F: Field> Engine<F> {
    pub fn new(field: F, seed: u64, trials: usize) -> Self {
        Self::with_sampler(field, GenericSampler::new(seed), trials)
    }

    pub fn with_sampler(field: F, sampler: GenericSampler, trials: usize) -> Self {
        Engine {
            field,
            sampler,
            trials: trials.max(1),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn sampler(&self) -> &GenericSampler {
        &self.sampler
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.sampler.seed()
    }

    /// The same engine drawing from an independent sub-stream.
    pub fn split(&self, index: u64) -> Self {
        Engine {
            field: self.field.clone(),
            sampler: self.sampler.split(index),
            trials: self.trials,
        }
    }

    /// One configuration per trial.
    pub fn samples<Fam: Family<F> + ?Sized>(&self, family: &Fam) -> Result<Vec<Configuration<F>>> {
        (0..self.trials as u64)
            .into_par_iter()
            .map(|i| family.sample(&self.field, &mut self.sampler.split(i)))
            .collect()
    }

    pub fn record<Fam: Family<F> + ?Sized>(&self, family: &Fam, d: u32) -> Result<HilbertRecord> {
        Ok(self.records(family, &[d])?.remove(0))
    }

    /// Records for several degrees, reusing each trial's sample.
    pub fn records<Fam: Family<F> + ?Sized>(
        &self,
        family: &Fam,
        degrees: &[u32],
    ) -> Result<Vec<HilbertRecord>> {
        let samples = self.samples(family)?;
        degrees
            .iter()
            .map(|&d| {
                let ranks = samples
                    .par_iter()
                    .map(|x| hilbert_function(&self.field, x, d))
                    .collect::<Result<Vec<_>>>()?;
                Ok(make_record(&samples[0], d, ranks))
            })
            .collect()
    }
}

pub(crate) fn make_record<F: Field>(
    x: &Configuration<F>,
    d: u32,
    ranks: Vec<usize>,
) -> HilbertRecord {
    let n = x.ambient_dim();
    let total = monomial_count_usize(n + 1, d);
    let hf = ranks.iter().copied().max().unwrap_or(0);
    let shape = x.shape();
    let expected_ideal_dim = if shape.is_empty() {
        None
    } else {
        Some(shape.expected_ideal_dim(n, d) as usize)
    };
    HilbertRecord {
        n,
        d,
        hf,
        ideal_dim: total - hf,
        expected_ideal_dim,
        trials_agreed: ranks.windows(2).all(|w| w[0] == w[1]),
        ranks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::geometry::{random_point, random_subspace, ProjPoint, Subspace};
    use crate::schemes::{make_degenerate_conic, make_sundial};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn block_shapes() {
        let fl = f();
        let mut s = GenericSampler::new(1);
        let mut x = Configuration::new(4);
        x.push_linear(random_subspace(&fl, &mut s, 4, 2).unwrap())
            .unwrap();
        let m = conditions_matrix(&fl, &x, 2).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (6, 15));
        x.push_linear(random_subspace(&fl, &mut s, 4, 1).unwrap())
            .unwrap();
        let m = conditions_matrix(&fl, &x, 2).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (9, 15));
        assert_eq!(m.blocks, vec![0..6, 6..9]);
        assert_eq!(m.ideal_dim(), 6);
    }

    #[test]
    fn sundial_in_p3_imposes_2d_plus_2() {
        let fl = f();
        let mut s = GenericSampler::new(2);
        let x = make_sundial(&fl, &mut s, 3, 1).unwrap();
        let m = conditions_matrix(&fl, &x, 2).unwrap();
        assert_eq!(m.matrix.rows(), 3 + 3 + 4);
        assert_eq!(m.hf(), 6);
        for d in 1..6 {
            assert_eq!(hilbert_function(&fl, &x, d).unwrap(), 2 * d as usize + 2);
        }
        assert_eq!(hilbert_function(&fl, &x, 0).unwrap(), 1);
    }

    #[test]
    fn one_conic_imposes_seven_conditions_on_cubics() {
        let fl = f();
        let mut s = GenericSampler::new(3);
        let x = make_degenerate_conic(&fl, &mut s, 3).unwrap();
        assert_eq!(hilbert_function(&fl, &x, 3).unwrap(), 7);
    }

    #[test]
    fn full_double_point() {
        let fl = f();
        let mut s = GenericSampler::new(4);
        let p = random_point(&fl, &mut s, 4).unwrap();
        let mut x = Configuration::new(4);
        x.push(Component::jet(&fl, p, Subspace::full(&fl, 4)).unwrap())
            .unwrap();
        assert_eq!(conditions_matrix(&fl, &x, 2).unwrap().matrix.rows(), 5);
        assert_eq!(hilbert_function(&fl, &x, 2).unwrap(), 5);
        assert_eq!(hilbert_function(&fl, &x, 1).unwrap(), 5);
    }

    #[test]
    fn empty_configuration_has_no_expectation() {
        let x = Configuration::<PrimeField>::new(3);
        let r = make_record(&x, 2, vec![0]);
        assert_eq!(r.ideal_dim, 10);
        assert_eq!(r.expected_ideal_dim, None);
    }

    #[test]
    fn engine_records_and_agreement() {
        let engine = Engine::new(f(), 5, 3);
        let fam = |fl: &PrimeField, s: &mut GenericSampler| {
            let mut x = Configuration::new(3);
            for _ in 0..2 {
                x.push_linear(random_subspace(fl, s, 3, 1)?)?;
            }
            Ok(x)
        };
        let r = engine.record(&fam, 2).unwrap();
        assert_eq!(r.ideal_dim, 4);
        assert!(r.trials_agreed);
        assert_eq!(r.ranks.len(), 3);
        assert_eq!(r.matches_expected(), Some(true));
    }

    #[test]
    fn rational_and_prime_agree_on_a_small_case() {
        let pts = [[1, 2, 3], [0, 1, 5], [2, -1, 1], [1, 1, 1], [3, 0, -2]];
        let mut xp = Configuration::new(2);
        let mut xq = Configuration::new(2);
        let fp = f();
        let fq = RationalField::default();
        for p in pts {
            xp.push_point(ProjPoint::from_i64(&fp, &p).unwrap())
                .unwrap();
            xq.push_point(ProjPoint::from_i64(&fq, &p).unwrap())
                .unwrap();
        }
        for d in 0..4 {
            assert_eq!(
                hilbert_function(&fp, &xp, d).unwrap(),
                hilbert_function(&fq, &xq, d).unwrap()
            );
        }
    }
}
