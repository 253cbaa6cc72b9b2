//! The sundial statements `S(n,d)`, `S*(n,d)`, their parametrized forms, and
//! the two `P^3` lemma schemes.

use serde::Serialize;

use super::conditions::Engine;
use super::expected::{binomial, forms_dim};
use super::params::{critical_params, lemma31_params, lemma32_params};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{random_point, random_subspace, GenericSampler};
use crate::schemes::{Configuration, DegenerateConic, SundialSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "variant")]
pub enum Statement {
    /// `d-1` sundials and `t - 2(d-1)` lines.
    S,
    /// `d-1` sundials and `t* - 2(d-1)` lines.
    SStar,
    /// `a` sundials, `b` degenerate conics, `b` points, `c` lines; expected
    /// dimension `C(n+d,n) - (2a+2b+c)(d+1)`.
    WithParams { a: usize, b: usize, c: usize },
    /// As `WithParams` with `c >= t* - 2(a+b)`; expected dimension 0.
    WithParamsStar { a: usize, b: usize, c: usize },
    /// `a` conics, `b` lines and `c` points in `P^3` with the lemma's
    /// parameters for `d = 0, 2, 4 mod 8`; expected dimension 0.
    Lemma31,
    /// A conic with a double point at its vertex, `b` (or `b*`) lines and
    /// `c` points in `P^3`, for `d` odd or `d = 6 mod 8`.
    Lemma32 { star: bool },
}

impl Statement {
    pub fn name(&self) -> String {
        match self {
            Statement::S => "S".into(),
            Statement::SStar => "S*".into(),
            Statement::WithParams { a, b, c } => format!("S(a={a},b={b},c={c})"),
            Statement::WithParamsStar { a, b, c } => format!("S*(a={a},b={b},c*={c})"),
            Statement::Lemma31 => "lemma31".into(),
            Statement::Lemma32 { star: false } => "lemma32".into(),
            Statement::Lemma32 { star: true } => "lemma32*".into(),
        }
    }
}

/// Scheme counts for `build_w`, after bound checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Counts {
    sundials: usize,
    conics: usize,
    points: usize,
    lines: usize,
    expected: i128,
}

fn counts(n: usize, d: u32, variant: Statement) -> Result<Counts> {
    if n < 3 || d == 0 {
        return Err(Error::ParameterBounds(format!(
            "need n >= 3 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let p = critical_params(n, d);
    let di = d as i128;
    let total = forms_dim(n, d);
    let lines_for = |t: i128, used: i128| -> Result<usize> {
        if t < used {
            return Err(Error::ParameterBounds(format!(
                "t = {t} < {used} for n = {n}, d = {d}"
            )));
        }
        Ok((t - used) as usize)
    };
    let c = match variant {
        Statement::S | Statement::SStar => {
            let t = if variant == Statement::S {
                p.t
            } else {
                p.t_star
            };
            let used = 2 * (di - 1);
            Counts {
                sundials: d as usize - 1,
                conics: 0,
                points: 0,
                lines: lines_for(t, used)?,
                expected: if variant == Statement::S {
                    total - p.t * (di + 1)
                } else {
                    0
                },
            }
        }
        Statement::WithParams { a, b, c } | Statement::WithParamsStar { a, b, c } => {
            if (a + b) as i128 > di - 1 {
                return Err(Error::ParameterBounds(format!("a + b = {} > d - 1", a + b)));
            }
            let used = 2 * (a + b) as i128;
            let star = matches!(variant, Statement::WithParamsStar { .. });
            if !star && c as i128 > p.t - used {
                return Err(Error::ParameterBounds(format!(
                    "c = {c} > t - 2(a+b) = {}",
                    p.t - used
                )));
            }
            if star && (c as i128) < p.t_star - used {
                return Err(Error::ParameterBounds(format!(
                    "c* = {c} < t* - 2(a+b) = {}",
                    p.t_star - used
                )));
            }
            Counts {
                sundials: a,
                conics: b,
                points: b,
                lines: c,
                expected: if star {
                    0
                } else {
                    total - (2 * (a + b) + c) as i128 * (di + 1)
                },
            }
        }
        Statement::Lemma31 => {
            if n != 3 {
                return Err(Error::ParameterBounds("lemma31 lives in P^3".into()));
            }
            let q = lemma31_params(d).ok_or_else(|| {
                Error::ParameterBounds(format!("lemma31 needs d = 0, 2, 4 mod 8, got {d}"))
            })?;
            if q.a < 0 || q.b < 0 || q.c < 0 {
                return Err(Error::ParameterBounds(format!("negative parameters {q:?}")));
            }
            Counts {
                sundials: 0,
                conics: q.a as usize,
                points: q.c as usize,
                lines: q.b as usize,
                expected: (binomial(di + 3, 3) - q.a * (2 * di + 1) - q.b * (di + 1) - q.c).max(0),
            }
        }
        Statement::Lemma32 { star } => {
            if n != 3 {
                return Err(Error::ParameterBounds("lemma32 lives in P^3".into()));
            }
            let q = lemma32_params(d).ok_or_else(|| {
                Error::ParameterBounds(format!("lemma32 needs d >= 3 odd or d = 6 mod 8, got {d}"))
            })?;
            let b = if star { q.b_star } else { q.b };
            if b < 0 || q.c < 0 {
                return Err(Error::ParameterBounds(format!("negative parameters {q:?}")));
            }
            Counts {
                sundials: 1,
                conics: 0,
                points: q.c as usize,
                lines: b as usize,
                expected: if star {
                    0
                } else {
                    binomial(di + 3, 3) - (2 * di + 2) - b * (di + 1) - q.c
                },
            }
        }
    };
    Ok(c)
}

/// The generic scheme named by `variant` in `P^n`.
///
/// Sundials are 3-dimensional (`m = 1`); in `P^3` this is a degenerate conic
/// with the full double point at its vertex.
pub fn build_w<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    d: u32,
    variant: Statement,
) -> Result<Configuration<F>> {
    let k = counts(n, d, variant)?;
    let mut x = Configuration::new(n);
    for _ in 0..k.sundials {
        x.push_sundial(field, SundialSpec::sample(field, sampler, n, 1)?)?;
    }
    for _ in 0..k.conics {
        x.push_conic(field, DegenerateConic::sample(field, sampler, n)?)?;
    }
    for _ in 0..k.points {
        x.push_point(random_point(field, sampler, n)?)?;
    }
    for _ in 0..k.lines {
        x.push_linear(random_subspace(field, sampler, n, 1)?)?;
    }
    Ok(x)
}

/// The dimension the statement asserts for `dim (I_W)_d`.
pub fn statement_expected(n: usize, d: u32, variant: Statement) -> Result<i128> {
    Ok(counts(n, d, variant)?.expected)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatementCheck {
    pub n: usize,
    pub d: u32,
    pub statement: String,
    pub computed: usize,
    pub expected: i128,
    pub trials_agreed: bool,
    pub pass: bool,
}

pub fn verify_statement<F: Field>(
    engine: &Engine<F>,
    n: usize,
    d: u32,
    variant: Statement,
) -> Result<StatementCheck> {
    let expected = statement_expected(n, d, variant)?;
    let family = move |f: &F, s: &mut GenericSampler| build_w(f, s, n, d, variant);
    let r = engine.record(&family, d)?;
    Ok(StatementCheck {
        n,
        d,
        statement: variant.name(),
        computed: r.ideal_dim,
        expected,
        trials_agreed: r.trials_agreed,
        pass: r.ideal_dim as i128 == expected && r.trials_agreed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn engine() -> Engine<PrimeField> {
        Engine::new(PrimeField::default(), 11, 2)
    }

    #[test]
    fn w42_shape() {
        let fl = PrimeField::default();
        let x = build_w(&fl, &mut GenericSampler::new(0), 4, 2, Statement::S).unwrap();
        assert_eq!(x.shape().sundials, vec![1]);
        assert_eq!(x.shape().linear, vec![1, 1, 1]);
    }

    #[test]
    fn statements_in_p4_and_p5() {
        let e = engine();
        for (n, d, v, expected) in [
            (4, 2, Statement::S, 0),
            (4, 2, Statement::SStar, 0),
            (5, 2, Statement::S, 0),
            (4, 3, Statement::S, 3),
            (4, 3, Statement::SStar, 0),
        ] {
            let c = verify_statement(&e, n, d, v).unwrap();
            assert_eq!(c.expected, expected, "{c:?}");
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn lemma_schemes_at_small_degree() {
        let e = engine();
        let c = verify_statement(&e, 3, 2, Statement::Lemma31).unwrap();
        assert_eq!((c.computed, c.expected), (0, 0));
        for star in [false, true] {
            let c = verify_statement(&e, 3, 3, Statement::Lemma32 { star }).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(statement_expected(4, 3, Statement::WithParams { a: 2, b: 1, c: 0 }).is_err());
        assert!(statement_expected(4, 3, Statement::WithParams { a: 1, b: 1, c: 5 }).is_err());
        assert!(statement_expected(4, 3, Statement::WithParamsStar { a: 1, b: 1, c: 3 }).is_err());
        assert_eq!(
            statement_expected(4, 3, Statement::WithParams { a: 1, b: 1, c: 4 }).unwrap(),
            3
        );
        assert!(statement_expected(4, 3, Statement::Lemma31).is_err());
        assert!(statement_expected(3, 3, Statement::Lemma31).is_err());
    }
}
