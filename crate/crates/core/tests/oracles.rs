//! Independent oracles: Hilbert functions by evaluating every degree-d
//! monomial at random points of each component (and derivatives for jets),
//! then eliminating mod p with a separate routine.

use bipoly::geometry::GenericSampler;
use bipoly::postulation::expected::{forms_dim, lines_expected, plane_lines_expected};
use bipoly::postulation::params::lemma31_params;
use bipoly::postulation::sweep::{generic_lines, plane_and_lines};
use bipoly::schemes::{make_degenerate_conic, make_sundial, Configuration};
use bipoly::{Engine, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 2_147_483_647;

fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

#[allow(clippy::needless_range_loop)]
fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = pow(rows[r][c], P - 2);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c] * inv % P;
                for j in c..cols {
                    rows[i][j] = (rows[i][j] + P - f * rows[r][j] % P) % P;
                }
            }
        }
        r += 1;
    }
    r
}

/// Components described by spanning vectors in `P^n`.
enum Piece {
    Span(Vec<Vec<u64>>),
    /// Point `p` with first-order vanishing along the span of `dirs`.
    Jet(Vec<u64>, Vec<Vec<u64>>),
}

struct Oracle {
    rng: ChaCha8Rng,
    n: usize,
}

impl Oracle {
    fn new(n: usize, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    fn vector(&mut self) -> Vec<u64> {
        (0..=self.n).map(|_| self.rng.gen_range(1..P)).collect()
    }

    fn span(&mut self, m: usize) -> Vec<Vec<u64>> {
        (0..=m).map(|_| self.vector()).collect()
    }

    fn combo(&mut self, basis: &[Vec<u64>]) -> Vec<u64> {
        let mut v = vec![0; self.n + 1];
        for b in basis {
            let c = self.rng.gen_range(1..P);
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % P;
            }
        }
        v
    }

    fn hf(&mut self, pieces: &[Piece], d: u32) -> usize {
        let mons = monomials(self.n + 1, d);
        let eval = |pt: &[u64]| -> Vec<u64> {
            mons.iter()
                .map(|m| {
                    m.iter()
                        .zip(pt)
                        .fold(1, |acc, (&e, &x)| acc * pow(x, e as u64) % P)
                })
                .collect()
        };
        let mut rows = Vec::new();
        for piece in pieces {
            match piece {
                Piece::Span(basis) => {
                    let m = basis.len() - 1;
                    for _ in 0..forms_dim(m, d) as usize + 3 {
                        let pt = self.combo(basis);
                        rows.push(eval(&pt));
                    }
                }
                Piece::Jet(p, dirs) => {
                    rows.push(eval(p));
                    if d == 0 {
                        continue;
                    }
                    for v in dirs {
                        rows.push(
                            mons.iter()
                                .map(|m| {
                                    let mut total = 0;
                                    for i in 0..=self.n {
                                        if m[i] == 0 {
                                            continue;
                                        }
                                        let mut t = m[i] as u64 * v[i] % P;
                                        for (j, (&e, &x)) in m.iter().zip(p).enumerate() {
                                            let e = if j == i { e - 1 } else { e };
                                            t = t * pow(x, e as u64) % P;
                                        }
                                        total = (total + t) % P;
                                    }
                                    total
                                })
                                .collect(),
                        );
                    }
                }
            }
        }
        if rows.is_empty() {
            return 0;
        }
        rank(rows)
    }

    fn plane_and_lines(&mut self, s: usize) -> Vec<Piece> {
        let mut v = vec![Piece::Span(self.span(2))];
        v.extend((0..s).map(|_| Piece::Span(self.span(1))));
        v
    }

    fn lines(&mut self, s: usize) -> Vec<Piece> {
        (0..s).map(|_| Piece::Span(self.span(1))).collect()
    }

    /// Two lines meeting at a point.
    fn conic(&mut self) -> Vec<Piece> {
        let p = self.vector();
        let (a, b) = (self.vector(), self.vector());
        vec![Piece::Span(vec![p.clone(), a]), Piece::Span(vec![p, b])]
    }

    /// Lines `L` and `Pi` through `P`, and first-order data at `P` along the
    /// 3-space spanned by them and one more point.
    fn sundial(&mut self) -> Vec<Piece> {
        let p = self.vector();
        let (a, b, c) = (self.vector(), self.vector(), self.vector());
        vec![
            Piece::Span(vec![p.clone(), a.clone()]),
            Piece::Span(vec![p.clone(), b.clone()]),
            Piece::Jet(p, vec![a, b, c]),
        ]
    }
}

fn engine() -> Engine<PrimeField> {
    Engine::new(PrimeField::default(), 77, 3)
}

#[test]
fn plane_and_lines_match_the_oracle() {
    for (n, d_max) in [(3usize, 5u32), (4, 4), (5, 3)] {
        for d in 1..=d_max {
            for s in 0..=(forms_dim(n, d) / (d as i128 + 1)) as usize + 1 {
                let mut o = Oracle::new(n, (n * 1000 + d as usize * 100 + s) as u64);
                let pieces = o.plane_and_lines(s);
                let expected = o.hf(&pieces, d);
                let fam = move |f: &PrimeField, g: &mut GenericSampler| plane_and_lines(f, g, n, s);
                let got = engine().record(&fam, d).unwrap();
                assert_eq!(got.hf, expected, "n={n} d={d} s={s}");
                if n >= 4 {
                    assert_eq!(
                        got.ideal_dim as i128,
                        plane_lines_expected(n, d, s),
                        "n={n} d={d} s={s}"
                    );
                }
            }
        }
    }
}

#[test]
fn lines_match_the_oracle() {
    for (n, d_max) in [(3usize, 5u32), (4, 4)] {
        for d in 0..=d_max {
            for s in 0..=(forms_dim(n, d) / (d as i128 + 1)) as usize + 1 {
                let mut o = Oracle::new(n, (n * 977 + d as usize * 31 + s) as u64);
                let pieces = o.lines(s);
                let expected = o.hf(&pieces, d);
                let fam = move |f: &PrimeField, g: &mut GenericSampler| generic_lines(f, g, n, s);
                let got = engine().record(&fam, d).unwrap();
                assert_eq!(got.hf, expected, "n={n} d={d} s={s}");
                assert_eq!(
                    got.ideal_dim as i128,
                    lines_expected(n, d, s),
                    "n={n} d={d} s={s}"
                );
            }
        }
    }
}

#[test]
fn three_conics_in_p3_leave_one_cubic() {
    let mut o = Oracle::new(3, 5);
    let pieces: Vec<Piece> = (0..3).flat_map(|_| o.conic()).collect();
    let oracle_hf = o.hf(&pieces, 3);
    assert_eq!(oracle_hf, 19);
    let fam = |f: &PrimeField, g: &mut GenericSampler| {
        let mut x = Configuration::new(3);
        for _ in 0..3 {
            x.extend(make_degenerate_conic(f, g, 3)?)?;
        }
        Ok(x)
    };
    let r = engine().record(&fam, 3).unwrap();
    assert_eq!((r.hf, r.ideal_dim), (19, 1));
}

#[test]
fn sundial_imposes_two_d_plus_two() {
    for n in 3..=5usize {
        for d in 0..=5u32 {
            let mut o = Oracle::new(n, 40 + d as u64);
            let pieces = o.sundial();
            let expected = o.hf(&pieces, d);
            let frozen = if d == 0 { 1 } else { 2 * d as usize + 2 };
            assert_eq!(
                expected,
                frozen.min(forms_dim(n, d) as usize),
                "oracle n={n} d={d}"
            );
            let fam = move |f: &PrimeField, g: &mut GenericSampler| make_sundial(f, g, n, 1);
            assert_eq!(
                engine().record(&fam, d).unwrap().hf,
                expected,
                "n={n} d={d}"
            );
        }
    }
}

#[test]
fn lemma31_closed_forms() {
    for h in 0..12i128 {
        for (d, a, b) in [
            (8 * h + 2, (8 * h + 2) / 2, 8 * h * h + h + 1),
            (8 * h + 4, 3 * (8 * h + 4) / 4, 8 * h * h + h),
            (8 * h + 8, (8 * h + 8) / 4, 8 * h * h + 17 * h + 10),
        ] {
            let p = lemma31_params(d as u32).unwrap();
            assert_eq!((p.a, p.b), (a, b), "d={d}");
            assert!(p.b_integral, "d={d}");
        }
    }
}
