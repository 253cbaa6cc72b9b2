//! Bipolynomial sweeps over `(d, s)` grids.

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::Engine;
use super::expected::{lines_expected, plane_lines_expected, Shape};
use super::params::critical_params;
use crate::error::{Error, Result};
use crate::family::{ConfigTemplate, Family};
use crate::field::Field;
use crate::geometry::{random_subspace, GenericSampler};
use crate::schemes::Configuration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    /// A plane and `s` lines.
    PlaneLines,
    /// `s` lines.
    Lines,
    /// A fixed template; `s` is unused and reported as 0.
    Custom(ConfigTemplate),
}

impl SweepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SweepFamily::PlaneLines => "plane-lines",
            SweepFamily::Lines => "lines",
            SweepFamily::Custom(_) => "custom",
        }
    }

    /// Default `s` values `{max(0, e-1), e, e*, e*+1}`, with `t, t*` for lines.
    pub fn default_s(&self, n: usize, d: u32) -> Vec<usize> {
        let p = critical_params(n.max(3), d.max(1));
        let (lo, hi) = match self {
            SweepFamily::PlaneLines => (p.e, p.e_star),
            SweepFamily::Lines => (p.t, p.t_star),
            SweepFamily::Custom(_) => return vec![0],
        };
        let mut s: Vec<usize> = [(lo - 1).max(0), lo, hi, hi + 1]
            .into_iter()
            .map(|v| v.max(0) as usize)
            .collect();
        s.dedup();
        s
    }
}

/// `Pi + L_1 + ... + L_s` with everything generic.
pub fn plane_and_lines<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    s: usize,
) -> Result<Configuration<F>> {
    let mut x = Configuration::new(n);
    x.push_linear(random_subspace(field, sampler, n, 2)?)?;
    for _ in 0..s {
        x.push_linear(random_subspace(field, sampler, n, 1)?)?;
    }
    Ok(x)
}

pub fn generic_lines<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    s: usize,
) -> Result<Configuration<F>> {
    let mut x = Configuration::new(n);
    for _ in 0..s {
        x.push_linear(random_subspace(field, sampler, n, 1)?)?;
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub d: u32,
    pub s: usize,
    pub shape: String,
    pub hf: usize,
    pub computed: usize,
    pub expected: usize,
    pub trials_agreed: bool,
    pub pass: bool,
}

/// Computes `dim (I_X)_d` for every `d` in `1..=d_max` and every `s` (the
/// family's defaults when `s_values` is `None`) and compares it with the
/// expected dimension. Rows are sorted by `(n, d, s)`.
pub fn verify_bipolynomial<F: Field>(
    engine: &Engine<F>,
    n: usize,
    d_max: u32,
    family: &SweepFamily,
    s_values: Option<&[usize]>,
) -> Result<Vec<SweepRow>> {
    if n < 3 {
        return Err(Error::ParameterBounds(format!(
            "sweeps need n >= 3, got {n}"
        )));
    }
    let cells: Vec<(u32, usize)> = (1..=d_max)
        .flat_map(|d| {
            let s = s_values
                .map(|v| v.to_vec())
                .unwrap_or_else(|| family.default_s(n, d));
            s.into_iter().map(move |s| (d, s))
        })
        .collect();
    let mut rows = cells
        .par_iter()
        .map(|&(d, s)| sweep_cell(engine, n, d, s, family))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.d, r.s));
    Ok(rows)
}

pub(crate) fn cell_index(n: usize, d: u32, s: usize) -> u64 {
    ((n as u64) << 40) | ((d as u64) << 24) | s as u64
}

fn sweep_cell<F: Field>(
    engine: &Engine<F>,
    n: usize,
    d: u32,
    s: usize,
    family: &SweepFamily,
) -> Result<SweepRow> {
    let cell = engine.split(cell_index(n, d, s));
    let (record, expected, shape) = match family {
        SweepFamily::PlaneLines => {
            let fam = move |f: &F, g: &mut GenericSampler| plane_and_lines(f, g, n, s);
            (
                cell.record(&fam, d)?,
                plane_lines_expected(n, d, s),
                Shape::plane_and_lines(s).describe(),
            )
        }
        SweepFamily::Lines => {
            let fam = move |f: &F, g: &mut GenericSampler| generic_lines(f, g, n, s);
            (
                cell.record(&fam, d)?,
                lines_expected(n, d, s),
                Shape::lines(s).describe(),
            )
        }
        SweepFamily::Custom(t) => {
            if t.n != n {
                return Err(Error::AmbientMismatch(n, t.n));
            }
            let r = cell.record(t, d)?;
            let x = Family::<F>::sample(t, cell.field(), &mut cell.sampler().split(0))?;
            let shape = x.shape();
            (r, shape.expected_ideal_dim(n, d), shape.describe())
        }
    };
    let expected = expected as usize;
    Ok(SweepRow {
        n,
        d,
        s,
        shape,
        hf: record.hf,
        computed: record.ideal_dim,
        expected,
        trials_agreed: record.trials_agreed,
        pass: record.ideal_dim == expected && record.trials_agreed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn p4_cubics_bracket() {
        let e = Engine::new(PrimeField::default(), 1, 2);
        let rows = verify_bipolynomial(&e, 4, 3, &SweepFamily::PlaneLines, Some(&[6, 7])).unwrap();
        let d3: Vec<_> = rows.iter().filter(|r| r.d == 3).collect();
        assert_eq!(d3[0].computed, 1);
        assert_eq!(d3[1].computed, 0);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn two_skew_lines_on_quadrics() {
        let e = Engine::new(PrimeField::default(), 2, 2);
        let rows = verify_bipolynomial(&e, 3, 2, &SweepFamily::Lines, Some(&[2])).unwrap();
        assert_eq!(rows[1].computed, 4);
    }

    #[test]
    fn rows_are_sorted_and_defaults_bracket() {
        assert_eq!(SweepFamily::PlaneLines.default_s(4, 3), vec![5, 6, 7, 8]);
        assert_eq!(SweepFamily::Lines.default_s(4, 2), vec![4, 5, 6]);
        let e = Engine::new(PrimeField::default(), 3, 1);
        let rows = verify_bipolynomial(&e, 5, 2, &SweepFamily::PlaneLines, None).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.d, r.s)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let r = rows.iter().find(|r| r.d == 2 && r.s == 5).unwrap();
        assert_eq!((r.computed, r.expected), (0, 0));
    }
}
