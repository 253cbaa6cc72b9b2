//! Named reproductions of the published statements, runnable as a batch.
//!
//! Every expected value comes from a closed form, never from a stored run.
//! Each case draws from its own sub-stream of the engine's sampler, keyed by
//! the case label, so a suite is reproducible from `(id, seed, budget)`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::apolarity::{decomposable, p3_star_defect, InstanceTemplate};
use crate::error::{Error, Result};
use crate::family::ConfigTemplate;
use crate::field::Field;
use crate::geometry::{
    random_hyperplane_containing, random_point, random_subspace, span, GenericSampler, Subspace,
};
use crate::postulation::castelnuovo::castelnuovo_check;
use crate::postulation::conditions::conditions_matrix;
use crate::postulation::expected::{forms_dim, p3_plane_lines_expected, plane_lines_expected};
use crate::postulation::params::{
    critical_params, lemma31_applies, lemma32_applies, verify_lemma_params,
};
use crate::postulation::statements::{statement_expected, Statement};
use crate::postulation::sweep::{plane_and_lines, SweepFamily, SweepRow};
use crate::postulation::{
    transition_profile, verify_bipolynomial, verify_statement, CastelnuovoReport, Engine, Shape,
};
use crate::schemes::{make_degenerate_conic, Component, Configuration, SundialSpec};

pub const ALL_SUITES: [&str; 10] = [
    "teorema-in-p4",
    "teorema-in-pn",
    "hh-lines",
    "s-statements",
    "lemma-params",
    "rnc-obstruction",
    "apolarity-star",
    "p3-plane-lines",
    "non-bipolynomial",
    "three-conics",
];

/// Operations each suite exercises.
pub fn operations(id: &str) -> &'static [&'static str] {
    match id {
        "teorema-in-p4" => &[
            "verify_bipolynomial",
            "expected_ideal_dim",
            "critical_params",
            "castelnuovo_check",
            "ideal_dim",
        ],
        "teorema-in-pn" => &[
            "verify_bipolynomial",
            "expected_ideal_dim",
            "critical_params",
            "castelnuovo_check",
        ],
        "hh-lines" => &[
            "verify_bipolynomial",
            "expected_ideal_dim",
            "critical_params",
        ],
        "s-statements" => &["build_W", "verify_statement", "critical_params"],
        "lemma-params" => &["verify_lemma_params", "critical_params"],
        "rnc-obstruction" => &["ideal_dim"],
        "apolarity-star" => &["decomposable", "dual_configuration", "subring_span_matrix"],
        "p3-plane-lines" => &["ideal_dim", "expected_ideal_dim"],
        "non-bipolynomial" => &["ideal_dim", "transition_profile", "expected_ideal_dim"],
        "three-conics" => &["conditions_matrix", "ideal_dim"],
        _ => &[],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub n_max: usize,
    pub d_max: u32,
    /// Cells with more than this many monomials are skipped.
    pub max_columns: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            n_max: 6,
            d_max: 6,
            max_columns: 3000,
        }
    }
}

impl Budget {
    fn fits(&self, n: usize, d: u32) -> bool {
        n <= self.n_max && d <= self.d_max && forms_dim(n, d) <= self.max_columns as i128
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Reported, not checked.
    Info,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub inputs: String,
    pub n: Option<usize>,
    pub d: Option<u32>,
    pub hf: Option<usize>,
    pub computed: i128,
    pub expected: Option<i128>,
    pub verdict: Verdict,
    pub note: String,
}

impl Case {
    fn check(
        inputs: impl Into<String>,
        n: Option<usize>,
        d: Option<u32>,
        computed: i128,
        expected: i128,
        agreed: bool,
    ) -> Self {
        let pass = computed == expected && agreed;
        Case {
            inputs: inputs.into(),
            n,
            d,
            hf: None,
            computed,
            expected: Some(expected),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            note: if agreed {
                String::new()
            } else {
                "trials disagreed".into()
            },
        }
    }

    fn info(
        inputs: impl Into<String>,
        n: Option<usize>,
        d: Option<u32>,
        computed: i128,
        note: impl Into<String>,
    ) -> Self {
        Case {
            inputs: inputs.into(),
            n,
            d,
            hf: None,
            computed,
            expected: None,
            verdict: Verdict::Info,
            note: note.into(),
        }
    }

    fn with_hf(mut self, hf: usize) -> Self {
        self.hf = Some(hf);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.note.is_empty() {
            self.note = note;
        } else {
            self.note = format!("{}; {note}", self.note);
        }
        self
    }

    fn from_row(r: &SweepRow) -> Self {
        Case::check(
            format!("{} (s={})", r.shape, r.s),
            Some(r.n),
            Some(r.d),
            r.computed as i128,
            r.expected as i128,
            r.trials_agreed,
        )
        .with_hf(r.hf)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite_id: String,
    pub seed: u64,
    pub trials: usize,
    pub budget: Budget,
    pub cases: Vec<Case>,
    /// Statements derived from the cases, printed with the report.
    pub conclusions: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> Vec<&Case> {
        self.cases
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .collect()
    }
}

/// Stable 64-bit key of a case label (FNV-1a).
fn label_key(suite: &str, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes().chain([0u8]).chain(label.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

struct Runner<'a, F: Field> {
    id: &'static str,
    engine: &'a Engine<F>,
    budget: Budget,
    cases: Vec<Case>,
    conclusions: Vec<String>,
}

impl<'a, F: Field> Runner<'a, F> {
    fn engine_for(&self, label: &str) -> Engine<F> {
        self.engine.split(label_key(self.id, label))
    }

    /// `dim (I_X)_d` of a generic member of `family`, checked against `expected`.
    fn ideal<G>(
        &mut self,
        label: &str,
        n: usize,
        d: u32,
        expected: i128,
        family: G,
    ) -> Result<usize>
    where
        G: Fn(&F, &mut GenericSampler) -> Result<Configuration<F>> + Sync,
    {
        let r = self.engine_for(label).record(&family, d)?;
        self.cases.push(
            Case::check(
                label,
                Some(n),
                Some(d),
                r.ideal_dim as i128,
                expected,
                r.trials_agreed,
            )
            .with_hf(r.hf),
        );
        Ok(r.ideal_dim)
    }
}

pub fn run_suite<F: Field>(id: &str, budget: Budget, engine: &Engine<F>) -> Result<SuiteResult> {
    let id = ALL_SUITES
        .iter()
        .copied()
        .find(|s| *s == id)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))?;
    let start = Instant::now();
    let mut r = Runner {
        id,
        engine,
        budget,
        cases: Vec::new(),
        conclusions: Vec::new(),
    };
    match id {
        "teorema-in-p4" => teorema_in_p4(&mut r)?,
        "teorema-in-pn" => teorema_in_pn(&mut r)?,
        "hh-lines" => hh_lines(&mut r)?,
        "s-statements" => s_statements(&mut r)?,
        "lemma-params" => lemma_params(&mut r),
        "rnc-obstruction" => rnc_obstruction(&mut r)?,
        "apolarity-star" => apolarity_star(&mut r)?,
        "p3-plane-lines" => p3_plane_lines(&mut r)?,
        "non-bipolynomial" => non_bipolynomial(&mut r)?,
        "three-conics" => three_conics(&mut r)?,
        _ => unreachable!(),
    }
    Ok(SuiteResult {
        suite_id: id.to_string(),
        seed: engine.seed(),
        trials: engine.trials(),
        budget,
        cases: r.cases,
        conclusions: r.conclusions,
        elapsed: start.elapsed(),
    })
}

fn sweep<F: Field>(
    r: &mut Runner<'_, F>,
    n: usize,
    d_max: u32,
    family: SweepFamily,
    s_for: impl Fn(u32) -> Vec<usize>,
) -> Result<()> {
    for d in 1..=d_max {
        if !r.budget.fits(n, d) {
            continue;
        }
        let s = s_for(d);
        let e = r
            .engine
            .split(label_key(r.id, &format!("sweep n={n} d={d}")));
        let rows = verify_bipolynomial(&e, n, d, &family, Some(&s))?;
        r.cases
            .extend(rows.iter().filter(|row| row.d == d).map(Case::from_row));
    }
    Ok(())
}

fn bracket(lo: i128, hi: i128) -> Vec<usize> {
    let mut s: Vec<usize> = [lo - 1, lo, hi, hi + 1]
        .into_iter()
        .filter(|v| *v >= 0)
        .map(|v| v as usize)
        .collect();
    s.dedup();
    s
}

fn teorema_in_p4<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let d_max = r.budget.d_max.min(6);
    sweep(r, 4, d_max, SweepFamily::PlaneLines, |d| {
        let p = critical_params(4, d);
        bracket(p.e, p.e_star)
    })?;
    if r.budget.n_max < 4 {
        return Ok(());
    }
    for d in 2..=d_max {
        if !r.budget.fits(4, d) {
            continue;
        }
        if d % 2 == 1 {
            p4_case_one(r, d)?;
        } else {
            p4_case_two(r, d)?;
        }
    }
    Ok(())
}

/// Odd `d`: all but `e_bar` of the lines specialized into a generic hyperplane.
fn p4_case_one<F: Field>(r: &mut Runner<'_, F>, d: u32) -> Result<()> {
    let p = critical_params(4, d);
    let mut counts = vec![p.e, p.e_star];
    counts.dedup();
    for s in counts {
        let (s, e_bar) = (s as usize, p.e_bar as usize);
        let family = move |f: &F, g: &mut GenericSampler| {
            let h = random_subspace(f, g, 4, 3)?;
            let mut x = Configuration::new(4);
            x.push_linear(random_subspace(f, g, 4, 2)?)?;
            for _ in 0..e_bar {
                x.push_linear(random_subspace(f, g, 4, 1)?)?;
            }
            for _ in e_bar..s {
                x.push_linear(h.random_subspace(f, g, 1)?)?;
            }
            Ok((x, h))
        };
        let label = format!(
            "odd-degree specialization Y (s={s}, {} lines in H)",
            s - e_bar
        );
        let report = castelnuovo_check(&r.engine_for(&label), &family, d)?;
        push_castelnuovo(r, &label, 4, d, report, 0, plane_lines_expected(4, d, s));
    }
    Ok(())
}

/// Even `d`: `x = d(d+2)/8` lines degenerated into a hyperplane through the
/// plane, each leaving a double point where it meets the plane.
fn p4_case_two<F: Field>(r: &mut Runner<'_, F>, d: u32) -> Result<()> {
    let p = critical_params(4, d);
    let e = p.e as usize;
    let x_count = (d * (d + 2) / 8) as usize;
    let family = move |f: &F, g: &mut GenericSampler| {
        let plane = random_subspace(f, g, 4, 2)?;
        let h = random_hyperplane_containing(f, g, 4, &[&plane])?;
        let mut x = Configuration::new(4);
        x.push_linear(plane.clone())?;
        for _ in 0..x_count {
            let pt = plane.random_point(f, g)?;
            let q = h.random_point(f, g)?;
            x.push_linear(span(f, &[&pt.to_subspace(), &q.to_subspace()])?)?;
            x.push(Component::jet(f, pt, Subspace::full(f, 4))?)?;
        }
        for _ in x_count..e {
            x.push_linear(random_subspace(f, g, 4, 1)?)?;
        }
        Ok((x, h))
    };
    let label = format!("even-degree degeneration Y (s={e}, x={x_count})");
    let report = castelnuovo_check(&r.engine_for(&label), &family, d)?;
    push_castelnuovo(r, &label, 4, d, report, 0, 0);
    Ok(())
}

fn push_castelnuovo<F: Field>(
    r: &mut Runner<'_, F>,
    label: &str,
    n: usize,
    d: u32,
    c: CastelnuovoReport,
    residual_expected: i128,
    trace_expected: i128,
) {
    let target = residual_expected + trace_expected;
    let agreed = c.trials_agreed;
    r.cases.push(Case::check(
        format!("{label}: residual"),
        Some(n),
        Some(d - 1),
        c.residual as i128,
        residual_expected,
        agreed,
    ));
    r.cases.push(Case::check(
        format!("{label}: trace"),
        Some(n - 1),
        Some(d),
        c.trace as i128,
        trace_expected,
        agreed,
    ));
    r.cases.push(
        Case::check(
            format!("{label}: dim I_Y"),
            Some(n),
            Some(d),
            c.lhs as i128,
            target,
            agreed && c.holds,
        )
        .with_note(format!(
            "castelnuovo {} <= {} + {}",
            c.lhs, c.residual, c.trace
        )),
    );
}

fn teorema_in_pn<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let d_max = r.budget.d_max.min(4);
    for n in 5..=r.budget.n_max {
        sweep(r, n, d_max, SweepFamily::PlaneLines, |d| {
            let p = critical_params(n, d);
            let mut s = vec![p.e as usize, p.e_star as usize];
            s.dedup();
            s
        })?;
    }
    for n in 5..=r.budget.n_max {
        for d in 2..=d_max {
            if !r.budget.fits(n, d) {
                continue;
            }
            let p = critical_params(n, d);
            let mut counts = vec![p.e, p.e_star];
            counts.dedup();
            for s in counts {
                let t = p.thm5;
                let e_t = s - t.e_rho - 2 * t.rho;
                if e_t < 0 {
                    r.cases.push(Case::info(
                        format!("trace specialization (s={s})"),
                        Some(n),
                        Some(d),
                        e_t,
                        "e_T < 0, specialization undefined",
                    ));
                    continue;
                }
                pn_specialization(r, n, d, s as usize, t.rho as usize, e_t as usize)?;
            }
        }
    }
    Ok(())
}

/// `rho` pairs of lines degenerated to conics with embedded points and
/// moved into `H`, plus `e_T` lines specialized into `H`.
fn pn_specialization<F: Field>(
    r: &mut Runner<'_, F>,
    n: usize,
    d: u32,
    s: usize,
    rho: usize,
    e_t: usize,
) -> Result<()> {
    let family = move |f: &F, g: &mut GenericSampler| {
        let h = random_subspace(f, g, n, n - 1)?;
        let mut x = Configuration::new(n);
        x.push_linear(random_subspace(f, g, n, 2)?)?;
        for _ in 0..rho {
            let second = h.random_subspace(f, g, 1)?;
            x.push_sundial(f, SundialSpec::sample_on(f, g, second, Some(&h))?)?;
        }
        for _ in 0..e_t {
            x.push_linear(h.random_subspace(f, g, 1)?)?;
        }
        for _ in (2 * rho + e_t)..s {
            x.push_linear(random_subspace(f, g, n, 1)?)?;
        }
        Ok((x, h))
    };
    let label = format!("trace specialization Y (s={s}, rho={rho}, e_T={e_t})");
    let report = castelnuovo_check(&r.engine_for(&label), &family, d)?;
    push_castelnuovo(r, &label, n, d, report, 0, plane_lines_expected(n, d, s));
    Ok(())
}

fn hh_lines<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let d_max = r.budget.d_max.min(5);
    for n in 3..=r.budget.n_max.min(5) {
        sweep(r, n, d_max, SweepFamily::Lines, |d| {
            (0..=critical_params(n, d).t_star as usize + 1).collect()
        })?;
    }
    Ok(())
}

fn s_statements<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    for (n, d_cap) in [(4usize, 4u32), (5, 3)] {
        for d in 1..=d_cap {
            if !r.budget.fits(n, d) {
                continue;
            }
            for v in [Statement::S, Statement::SStar] {
                let label = format!("{}({n},{d})", v.name());
                let c = verify_statement(&r.engine_for(&label), n, d, v)?;
                r.cases.push(Case::check(
                    label,
                    Some(n),
                    Some(d),
                    c.computed as i128,
                    c.expected,
                    c.trials_agreed,
                ));
            }
        }
    }
    for d in 2..=r.budget.d_max.min(8) {
        if !r.budget.fits(3, d) {
            continue;
        }
        let variants: Vec<Statement> = if lemma31_applies(d) {
            vec![Statement::Lemma31]
        } else if lemma32_applies(d) {
            vec![
                Statement::Lemma32 { star: false },
                Statement::Lemma32 { star: true },
            ]
        } else {
            vec![]
        };
        for v in variants {
            let label = format!("{} scheme in P3 (d={d})", v.name());
            match statement_expected(3, d, v) {
                Ok(_) => {
                    let c = verify_statement(&r.engine_for(&label), 3, d, v)?;
                    r.cases.push(Case::check(
                        label,
                        Some(3),
                        Some(d),
                        c.computed as i128,
                        c.expected,
                        c.trials_agreed,
                    ));
                }
                Err(e) => r
                    .cases
                    .push(Case::info(label, Some(3), Some(d), 0, e.to_string())),
            }
        }
    }
    Ok(())
}

fn lemma_params<F: Field>(r: &mut Runner<'_, F>) {
    let report = verify_lemma_params(r.budget.d_max.max(2), 5..=12);
    for c in report.checks {
        let inputs = match c.n {
            Some(n) => format!("{} (n={n})", c.check),
            None => c.check.to_string(),
        };
        let mut case = if c.informational {
            Case::info(inputs, c.n, Some(c.d), c.holds as i128, String::new())
        } else {
            Case::check(inputs, c.n, Some(c.d), c.holds as i128, 1, true)
        };
        case = case.with_note(c.detail);
        r.cases.push(case);
    }
}

fn rnc_family<F: Field>(
    points: usize,
) -> impl Fn(&F, &mut GenericSampler) -> Result<Configuration<F>> + Sync {
    move |f: &F, g: &mut GenericSampler| {
        let mut x = Configuration::new(4);
        for _ in 0..points {
            x.push_point(random_point(f, g, 4)?)?;
        }
        for _ in 0..2 {
            x.push_linear(random_subspace(f, g, 4, 1)?)?;
        }
        x.push_linear(random_subspace(f, g, 4, 2)?)?;
        Ok(x)
    }
}

fn rnc_obstruction<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let x = r.ideal("X = P1+P2+L1+L2+plane in P4", 4, 2, 1, rnc_family::<F>(2))?;
    let y = r.ideal("Y = X+P3", 4, 2, 0, rnc_family::<F>(3))?;
    if x == 1 && y == 0 {
        r.conclusions.push(
            "no rational normal curve in P4 passes through P1, P2, P3, meets L1 and L2 in degree >= 2 \
             and the plane in degree >= 3: the unique quadric through X would contain such a curve \
             (Bezout), hence Y, but no quadric contains Y"
                .into(),
        );
    } else {
        r.conclusions.push(format!(
            "obstruction not reproduced: dim (I_X)_2 = {x}, dim (I_Y)_2 = {y}"
        ));
    }
    Ok(())
}

fn apolarity_star<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let mut cases = Vec::new();
    for d in 1..=r.budget.d_max.min(8) {
        if !r.budget.fits(3, d) {
            continue;
        }
        let top = (crate::postulation::binomial(d as i128 + 2, 3) + d as i128 - 1) / d as i128;
        for s in 0..=(top as usize + 1) {
            cases.push((3usize, d, s, p3_star_defect(d, s) as i128));
        }
    }
    for n in 4..=r.budget.n_max.min(5) {
        for d in 1..=r.budget.d_max.min(4) {
            if !r.budget.fits(n, d) {
                continue;
            }
            let p = critical_params(n, d);
            let mut s = vec![p.e as usize, p.e_star as usize];
            s.dedup();
            for s in s {
                cases.push((n, d, s, plane_lines_expected(n, d, s)));
            }
        }
    }
    for (n, d, s, expected) in cases {
        let t = InstanceTemplate::pairs_and_triple(n, s);
        let label = format!("P{n}: {} (d={d})", t.describe());
        let a = decomposable(&r.engine_for(&label), &t, d)?;
        let mut case = Case::check(
            &label,
            Some(n),
            Some(d),
            a.defect as i128,
            expected,
            a.trials_agreed,
        )
        .with_hf(a.span_rank)
        .with_note(if a.decomposable {
            "decomposable"
        } else {
            "not decomposable"
        });
        if !a.duality_holds {
            case.verdict = Verdict::Fail;
            case = case.with_note("duality identity violated");
        }
        r.cases.push(case);
    }
    Ok(())
}

fn p3_plane_lines<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    for d in 1..=r.budget.d_max.min(8) {
        if !r.budget.fits(3, d) {
            continue;
        }
        let top = (crate::postulation::binomial(d as i128 + 2, 3) + d as i128 - 1) / d as i128;
        for s in 0..=(top as usize + 1) {
            let label = format!("{} in P3 (d={d})", Shape::plane_and_lines(s).describe());
            let family = move |f: &F, g: &mut GenericSampler| plane_and_lines(f, g, 3, s);
            r.ideal(&label, 3, d, p3_plane_lines_expected(d, s), family)?;
        }
    }
    Ok(())
}

fn non_bipolynomial<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let t = ConfigTemplate::parse_shorthand("P3: line + 3 planes").expect("valid shorthand");
    let label = "HF(line + 3 planes in P3, 1)";
    let rec = r.engine_for(label).record(&t, 1)?;
    r.cases.push(
        Case::check(
            label,
            Some(3),
            Some(1),
            rec.hf as i128,
            4,
            rec.trials_agreed,
        )
        .with_hf(rec.hf),
    );
    let shape = Shape {
        linear: vec![1, 2, 2, 2],
        ..Shape::default()
    };
    let bipoly = forms_dim(3, 1).min(shape.hilbert_polynomial(3, 1));
    r.cases.push(Case::info(
        "min{hp(P3,1), hp(line + 3 planes,1)}",
        Some(3),
        Some(1),
        bipoly,
        format!("differs from HF = {}: not bipolynomial", rec.hf),
    ));
    let profile = transition_profile(&r.engine_for("transition profile"), &t, r.budget.d_max)?;
    for row in &profile.rows {
        r.cases.push(
            Case::info(
                "transition profile: line + 3 planes",
                Some(3),
                Some(row.d),
                row.hf as i128,
                format!("ambient {}, polynomial {}", row.ambient, row.polynomial),
            )
            .with_hf(row.hf),
        );
    }
    r.conclusions.push(format!(
        "line + 3 planes in P3: two-regime pattern {} on 0..={} (violations at {:?})",
        if profile.tiles { "holds" } else { "fails" },
        r.budget.d_max,
        profile.violations()
    ));
    Ok(())
}

fn three_conics<F: Field>(r: &mut Runner<'_, F>) -> Result<()> {
    let field = r.engine.field().clone();
    let mut g = r.engine.sampler().split(label_key(r.id, "one conic"));
    let one = make_degenerate_conic(&field, &mut g, 3)?;
    let m = conditions_matrix(&field, &one, 3)?;
    r.cases.push(
        Case::check(
            "conditions of one degenerate conic on cubics",
            Some(3),
            Some(3),
            m.hf() as i128,
            7,
            true,
        )
        .with_hf(m.hf()),
    );
    let naive = (forms_dim(3, 3) - 3 * 7).max(0);
    r.cases.push(Case::info(
        "3 degenerate conics in P3: naive count",
        Some(3),
        Some(3),
        naive,
        "expected by independent conditions",
    ));
    let family = |f: &F, g: &mut GenericSampler| {
        let mut x = Configuration::new(3);
        for _ in 0..3 {
            x.extend(make_degenerate_conic(f, g, 3)?)?;
        }
        Ok(x)
    };
    let got = r.ideal("3 degenerate conics in P3", 3, 3, 1, family)?;
    if let Some(c) = r.cases.last_mut() {
        *c = c
            .clone()
            .with_note("cautionary: the union of the three spanned planes is a cubic through X");
    }
    r.conclusions.push(format!(
        "three generic degenerate conics in P3: naive count {naive}, computed dim (I_X)_3 = {got}"
    ));
    Ok(())
}
