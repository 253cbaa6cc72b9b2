//! Castelnuovo's inequality with respect to a hyperplane.

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{ideal_dim_of, Engine};
use crate::error::Result;
use crate::field::Field;
use crate::geometry::{GenericSampler, Subspace};
use crate::polyspace::monomial_count_usize;
use crate::schemes::{residual, trace, Configuration};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CastelnuovoReport {
    pub d: u32,
    /// `dim (I_X)_d`
    pub lhs: usize,
    /// `dim (I_{Res_H X})_{d-1}`, zero when `d = 0`.
    pub residual: usize,
    /// `dim (I_{Tr_H X, H})_d`
    pub trace: usize,
    /// `lhs <= residual + trace` on the generic values and on every trial.
    pub holds: bool,
    pub trials_agreed: bool,
}

/// The three dimensions of a single specialized configuration.
pub fn castelnuovo_terms<F: Field>(
    field: &F,
    x: &Configuration<F>,
    h: &Subspace<F>,
    d: u32,
) -> Result<(usize, usize, usize)> {
    let lhs = ideal_dim_of(field, x, d)?;
    let res = if d == 0 {
        0
    } else {
        ideal_dim_of(field, &residual(field, x, h)?, d - 1)?
    };
    let tr_conf = trace(field, x, h)?;
    let tr = if tr_conf.ambient_dim() == 0 {
        // H is a point; its forms of degree d form a line vanishing iff the point is in the trace.
        monomial_count_usize(1, d) - usize::from(!tr_conf.is_empty())
    } else {
        ideal_dim_of(field, &tr_conf, d)?
    };
    Ok((lhs, res, tr))
}

/// Checks the inequality on `engine.trials()` independent draws of
/// `(X, H)`. Reported dimensions are the minima over trials.
pub fn castelnuovo_check<F, G>(engine: &Engine<F>, family: &G, d: u32) -> Result<CastelnuovoReport>
where
    F: Field,
    G: Fn(&F, &mut GenericSampler) -> Result<(Configuration<F>, Subspace<F>)> + Sync,
{
    let terms = (0..engine.trials() as u64)
        .into_par_iter()
        .map(|i| {
            let (x, h) = family(engine.field(), &mut engine.sampler().split(i))?;
            castelnuovo_terms(engine.field(), &x, &h, d)
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let res = terms.iter().map(|t| t.1).min().unwrap_or(0);
    let tr = terms.iter().map(|t| t.2).min().unwrap_or(0);
    Ok(CastelnuovoReport {
        d,
        lhs,
        residual: res,
        trace: tr,
        holds: lhs <= res + tr && terms.iter().all(|t| t.0 <= t.1 + t.2),
        trials_agreed: terms.windows(2).all(|w| w[0] == w[1]),
    })
}
