//! Integer invariants attached to `(n, d)` and their side conditions.

use std::ops::RangeInclusive;

use serde::Serialize;

use super::expected::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Params {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub x: i128,
    /// Whether `(C(d+3,3) - a(2d+1) - c)` is divisible by `d+1`.
    pub b_integral: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma32Params {
    pub b: i128,
    pub b_star: i128,
    pub c: i128,
    pub x: i128,
    /// Whether `C(d+3,4)` is divisible by `d`.
    pub c_integral: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Thm5Params {
    pub e_rho: i128,
    pub rho: i128,
    /// `e - e_rho - 2 rho`.
    pub e_t: i128,
    /// `e* - e_rho - 2 rho`.
    pub e_t_star: i128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalParams {
    pub n: usize,
    pub d: u32,
    pub e: i128,
    pub e_star: i128,
    pub e_bar: i128,
    pub t: i128,
    pub t_star: i128,
    pub lemma31: Option<Lemma31Params>,
    pub lemma32: Option<Lemma32Params>,
    pub thm5: Thm5Params,
}

fn floor_ceil(num: i128, den: i128) -> (i128, i128) {
    let q = num.div_euclid(den);
    (q, if num.rem_euclid(den) == 0 { q } else { q + 1 })
}

/// `(C(n+d,n) - C(d+2,2)) / (d+1)`, rounded down and up.
fn plane_counts(n: i128, d: i128) -> (i128, i128) {
    floor_ceil(binomial(n + d, n) - binomial(d + 2, 2), d + 1)
}

pub fn lemma31_applies(d: u32) -> bool {
    d >= 2 && matches!(d % 8, 0 | 2 | 4)
}

pub fn lemma32_applies(d: u32) -> bool {
    (d >= 3 && d % 2 == 1) || d % 8 == 6
}

pub fn lemma31_params(d: u32) -> Option<Lemma31Params> {
    if !lemma31_applies(d) {
        return None;
    }
    let d = d as i128;
    let q = binomial(d + 3, 4);
    let c = q.div_euclid(d);
    let a = q - d * c;
    let num = binomial(d + 3, 3) - a * (2 * d + 1) - c;
    let b = num.div_euclid(d + 1);
    Some(Lemma31Params {
        a,
        b,
        c,
        x: binomial(d + 1, 3) - (a + b) * (d - 1),
        b_integral: num.rem_euclid(d + 1) == 0,
    })
}

pub fn lemma32_params(d: u32) -> Option<Lemma32Params> {
    if !lemma32_applies(d) {
        return None;
    }
    let d = d as i128;
    let q = binomial(d + 3, 4);
    let c = q.div_euclid(d);
    let (lo, hi) = floor_ceil(binomial(d + 4, 4), d + 1);
    let b = lo - c - 2;
    Some(Lemma32Params {
        b,
        b_star: hi - c - 2,
        c,
        x: binomial(d + 1, 3) - b * (d - 1),
        c_integral: q.rem_euclid(d) == 0,
    })
}

/// All invariants for `(n, d)`, `n >= 3`, `d >= 1`.
pub fn critical_params(n: usize, d: u32) -> CriticalParams {
    assert!(n >= 3 && d >= 1, "critical_params needs n >= 3 and d >= 1");
    let (ni, di) = (n as i128, d as i128);
    let (e, e_star) = plane_counts(ni, di);
    let (e_bar, _) = plane_counts(ni, di - 1);
    let (t, t_star) = floor_ceil(binomial(ni + di, ni), di + 1);
    let num = binomial(di + ni - 1, ni) - binomial(di + 1, 2);
    let e_rho = num.div_euclid(di);
    let rho = num - e_rho * di;
    CriticalParams {
        n,
        d,
        e,
        e_star,
        e_bar,
        t,
        t_star,
        lemma31: lemma31_params(d),
        lemma32: lemma32_params(d),
        thm5: Thm5Params {
            e_rho,
            rho,
            e_t: e - e_rho - 2 * rho,
            e_t_star: e_star - e_rho - 2 * rho,
        },
    }
}

/// One evaluated side condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamCheck {
    pub check: &'static str,
    pub n: Option<usize>,
    pub d: u32,
    pub holds: bool,
    /// Reported for information; not among the conditions being verified.
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub checks: Vec<ParamCheck>,
}

impl ParamReport {
    /// Failed required checks.
    pub fn violations(&self) -> Vec<&ParamCheck> {
        self.checks
            .iter()
            .filter(|c| !c.holds && !c.informational)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }

    fn push(&mut self, check: &'static str, n: Option<usize>, d: u32, holds: bool, detail: String) {
        self.checks.push(ParamCheck {
            check,
            n,
            d,
            holds,
            informational: false,
            detail,
        });
    }
}

pub const L31_B_INTEGRAL: &str = "lemma31 (i): b is an integer";
pub const L31_X_RANGE: &str = "lemma31 (ii): 0 <= x < c";
pub const L32_B_POSITIVE: &str = "lemma32 (i): b > 0";
pub const L32_C_INTEGRAL: &str = "lemma32 (i): c is an integer";
pub const L32_X_RANGE: &str = "lemma32 (ii): 0 <= x < c";
pub const THM5_E_T: &str = "thm5: e - e_rho - 2 rho >= 0";
pub const THM5_RHO: &str = "thm5: rho <= d - 1";
pub const THM5_E_RHO: &str = "thm5: e_rho <= rho";
pub const THM5_RHO_E_RHO: &str = "thm5: rho <= e_rho";

/// Evaluates the side conditions of the two `P^3` lemmas for every
/// applicable `2 <= d <= d_max`, and of the general theorem for every `n` in
/// `theorem_n` and `1 <= d <= d_max`.
///
/// `rho <= e_rho` is the inequality the trace argument actually consumes
/// (it needs at least as many points as conics); it is reported alongside
/// `e_rho <= rho` as informational.
pub fn verify_lemma_params(d_max: u32, theorem_n: RangeInclusive<usize>) -> ParamReport {
    let mut r = ParamReport::default();
    for d in 2..=d_max {
        if let Some(p) = lemma31_params(d) {
            r.push(
                L31_B_INTEGRAL,
                None,
                d,
                p.b_integral,
                format!("b = {}", p.b),
            );
            r.push(
                L31_X_RANGE,
                None,
                d,
                0 <= p.x && p.x < p.c,
                format!("a = {}, b = {}, c = {}, x = {}", p.a, p.b, p.c, p.x),
            );
        }
        if let Some(p) = lemma32_params(d) {
            r.push(
                L32_B_POSITIVE,
                None,
                d,
                p.b > 0,
                format!("b = {}, b* = {}", p.b, p.b_star),
            );
            r.push(
                L32_C_INTEGRAL,
                None,
                d,
                p.c_integral,
                format!("c = {}", p.c),
            );
            r.push(
                L32_X_RANGE,
                None,
                d,
                0 <= p.x && p.x < p.c,
                format!("b = {}, c = {}, x = {}", p.b, p.c, p.x),
            );
        }
    }
    for n in theorem_n {
        for d in 1..=d_max {
            let p = critical_params(n, d);
            let t = p.thm5;
            let detail = format!("e = {}, e_rho = {}, rho = {}", p.e, t.e_rho, t.rho);
            r.push(THM5_E_T, Some(n), d, t.e_t >= 0, detail.clone());
            r.push(THM5_RHO, Some(n), d, t.rho < d as i128, detail.clone());
            r.push(THM5_E_RHO, Some(n), d, t.e_rho <= t.rho, detail.clone());
            r.checks.push(ParamCheck {
                check: THM5_RHO_E_RHO,
                n: Some(n),
                d,
                holds: t.rho <= t.e_rho,
                informational: true,
                detail,
            });
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_counts() {
        let p = critical_params(4, 3);
        assert_eq!((p.e, p.e_star), (6, 7));
        let p = critical_params(4, 2);
        assert_eq!((p.t, p.t_star), (5, 5));
        assert_eq!(critical_params(5, 2).t, 7);
        assert_eq!(critical_params(4, 3).t, 8);
    }

    #[test]
    fn e_matches_the_p4_closed_form() {
        for d in 1..40u32 {
            let di = d as i128;
            let p = critical_params(4, d);
            assert_eq!(p.e, di * (di + 2) * (di + 7) / 24);
            assert_eq!(p.e_bar, (di - 1) * (di + 1) * (di + 6) / 24);
        }
    }

    #[test]
    fn lemma_parameters() {
        let p = lemma31_params(10).unwrap();
        assert_eq!((p.a, p.b, p.c, p.x), (5, 10, 71, 30));
        assert!(p.b_integral);
        let p = lemma31_params(2).unwrap();
        assert_eq!((p.a, p.b, p.c), (1, 1, 2));
        let p = lemma32_params(3).unwrap();
        assert_eq!((p.c, p.b, p.b_star, p.x), (5, 1, 2, 2));
        assert!(lemma31_params(3).is_none());
        assert!(lemma32_params(1).is_none());
        assert!(lemma32_params(6).is_some());
        assert!(lemma31_params(6).is_none());
    }

    #[test]
    fn applicability_partitions_degrees() {
        for d in 2..200 {
            assert!(lemma31_applies(d) ^ lemma32_applies(d), "d = {d}");
        }
    }
}
