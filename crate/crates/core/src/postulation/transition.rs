//! Where the Hilbert function switches from `C(n+d, n)` to the Hilbert
//! polynomial.

use serde::Serialize;

use super::conditions::Engine;
use super::expected::forms_dim;
use crate::error::Result;
use crate::family::Family;
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionRow {
    pub d: u32,
    pub hf: usize,
    pub ambient: i128,
    pub polynomial: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionProfile {
    pub n: usize,
    pub rows: Vec<TransitionRow>,
    /// Largest `k` with `HF(X, d) = C(n+d, n)` for every `d <= k`.
    pub last_ambient: Option<u32>,
    /// Smallest `k` with `HF(X, d) = hp(X, d)` for every `k <= d <= d_max`.
    pub first_polynomial: Option<u32>,
    /// Whether every degree in `0..=d_max` falls in one of the two regimes
    /// with the ambient one first.
    pub tiles: bool,
    pub trials_agreed: bool,
}

impl TransitionProfile {
    /// Degrees where neither regime holds.
    pub fn violations(&self) -> Vec<u32> {
        self.rows
            .iter()
            .filter(|r| r.hf as i128 != r.ambient && r.hf as i128 != r.polynomial)
            .map(|r| r.d)
            .collect()
    }
}

/// Hilbert function for `d = 0..=d_max` against both regimes. Never asserts
/// the two-regime pattern; `tiles` and `violations` report it.
pub fn transition_profile<F: Field, Fam: Family<F> + ?Sized>(
    engine: &Engine<F>,
    family: &Fam,
    d_max: u32,
) -> Result<TransitionProfile> {
    let degrees: Vec<u32> = (0..=d_max).collect();
    let samples = engine.samples(family)?;
    let n = samples[0].ambient_dim();
    let shape = samples[0].shape();
    let records = engine.records(family, &degrees)?;
    let rows: Vec<TransitionRow> = records
        .iter()
        .map(|r| TransitionRow {
            d: r.d,
            hf: r.hf,
            ambient: forms_dim(n, r.d),
            polynomial: shape.hilbert_polynomial(n, r.d),
        })
        .collect();
    let is_ambient = |r: &TransitionRow| r.hf as i128 == r.ambient;
    let is_poly = |r: &TransitionRow| r.hf as i128 == r.polynomial;
    let prefix = rows.iter().take_while(|r| is_ambient(r)).count();
    let suffix = rows.iter().rev().take_while(|r| is_poly(r)).count();
    let last_ambient = prefix.checked_sub(1).map(|k| k as u32);
    let first_polynomial = (suffix > 0).then(|| (rows.len() - suffix) as u32);
    Ok(TransitionProfile {
        n,
        tiles: prefix + suffix >= rows.len(),
        last_ambient,
        first_polynomial,
        trials_agreed: records.iter().all(|r| r.trials_agreed),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::ConfigTemplate;
    use crate::field::PrimeField;

    #[test]
    fn five_points_in_the_plane() {
        let e = Engine::new(PrimeField::default(), 1, 2);
        let t = ConfigTemplate::parse_shorthand("P2: 5 points").unwrap();
        let p = transition_profile(&e, &t, 4).unwrap();
        let hf: Vec<usize> = p.rows.iter().map(|r| r.hf).collect();
        assert_eq!(hf, vec![1, 3, 5, 5, 5]);
        assert_eq!(p.last_ambient, Some(1));
        assert_eq!(p.first_polynomial, Some(2));
        assert!(p.tiles);
        assert!(p.violations().is_empty());
    }

    #[test]
    fn plane_and_line_in_p3() {
        let e = Engine::new(PrimeField::default(), 1, 2);
        let t = ConfigTemplate::parse_shorthand("P3: plane + line").unwrap();
        let p = transition_profile(&e, &t, 3).unwrap();
        assert_eq!(p.rows[2].hf, 8);
    }
}
