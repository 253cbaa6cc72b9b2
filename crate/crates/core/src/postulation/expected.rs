//! Expected dimensions from condition counts.

use serde::Serialize;

/// Exact binomial coefficient, zero outside `0 <= k <= n`.
///
/// Panics on `i128` overflow, far beyond any size a rank computation reaches.
pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).expect("binomial overflow") / (i + 1);
    }
    acc
}

/// `C(n+d, n)`, the dimension of degree-d forms on `P^n`.
pub fn forms_dim(n: usize, d: u32) -> i128 {
    binomial(n as i128 + d as i128, n as i128)
}

/// The multiset of group kinds making up a configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Shape {
    /// Dimensions of the standalone linear spaces.
    pub linear: Vec<usize>,
    pub points: usize,
    /// Tangent dimensions of standalone jet points.
    pub jets: Vec<usize>,
    /// `dim Pi` of each sundial.
    pub sundials: Vec<usize>,
    pub conics: usize,
}

impl Shape {
    pub fn is_empty(&self) -> bool {
        self.linear.is_empty()
            && self.points == 0
            && self.jets.is_empty()
            && self.sundials.is_empty()
            && self.conics == 0
    }

    pub fn plane_and_lines(lines: usize) -> Self {
        let mut linear = vec![2];
        linear.extend(std::iter::repeat_n(1, lines));
        Shape {
            linear,
            ..Shape::default()
        }
    }

    pub fn lines(lines: usize) -> Self {
        Shape {
            linear: vec![1; lines],
            ..Shape::default()
        }
    }

    /// The Hilbert polynomial of a generic configuration of this shape in
    /// `P^n`, evaluated at `d`.
    ///
    /// Points count 1, a jet point `k + 1`, a sundial `C(m+d, m) + d + 1`, a
    /// degenerate conic `2d + 1`. Linear spaces are combined by
    /// inclusion-exclusion over their generic intersections. At `d = 0`
    /// every nonempty shape counts 1.
    pub fn hilbert_polynomial(&self, n: usize, d: u32) -> i128 {
        if self.is_empty() {
            return 0;
        }
        if d == 0 {
            return 1;
        }
        let d_i = d as i128;
        let mut total = self.points as i128;
        total += self.jets.iter().map(|&k| k as i128 + 1).sum::<i128>();
        total += self
            .sundials
            .iter()
            .map(|&m| binomial(m as i128 + d_i, m as i128) + d_i + 1)
            .sum::<i128>();
        total += self.conics as i128 * (2 * d_i + 1);
        total + linear_union(n, &self.linear, d)
    }

    /// `max{0, C(n+d, n) - hp}`.
    pub fn expected_ideal_dim(&self, n: usize, d: u32) -> i128 {
        (forms_dim(n, d) - self.hilbert_polynomial(n, d)).max(0)
    }

    /// Human-readable description such as `plane + 6 lines + 2 points`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut dims = self.linear.clone();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        let mut i = 0;
        while i < dims.len() {
            let m = dims[i];
            let count = dims[i..].iter().take_while(|&&x| x == m).count();
            let name = match m {
                0 => "linear point".to_string(),
                1 => "line".to_string(),
                2 => "plane".to_string(),
                k => format!("{k}-space"),
            };
            parts.push(counted(count, &name));
            i += count;
        }
        let mut sundials = self.sundials.clone();
        sundials.sort_unstable();
        sundials.dedup();
        for m in sundials {
            let count = self.sundials.iter().filter(|&&x| x == m).count();
            parts.push(counted(count, &format!("sundial(m={m})")));
        }
        if self.conics > 0 {
            parts.push(counted(self.conics, "conic"));
        }
        for k in &self.jets {
            parts.push(format!("jet(dim {k})"));
        }
        if self.points > 0 {
            parts.push(counted(self.points, "point"));
        }
        if parts.is_empty() {
            "empty".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn counted(count: usize, name: &str) -> String {
    match count {
        1 if name == "plane" || name == "line" => name.to_string(),
        1 => format!("1 {name}"),
        _ => format!("{count} {name}s"),
    }
}

/// Inclusion-exclusion of `C(m+d, m)` over generic intersections of linear
/// spaces of the given dimensions. A family of codimensions `c_i` meets in
/// dimension `n - sum c_i` when that is nonnegative and is empty otherwise.
fn linear_union(n: usize, dims: &[usize], d: u32) -> i128 {
    if dims.iter().any(|&m| m >= n) {
        return forms_dim(n, d);
    }
    let mut codims: Vec<usize> = dims.iter().map(|&m| n - m).collect();
    codims.sort_unstable();
    let mut total = 0;
    dfs(n, &codims, 0, 0, 0, d, &mut total);
    total
}

fn dfs(
    n: usize,
    codims: &[usize],
    start: usize,
    used: usize,
    size: usize,
    d: u32,
    total: &mut i128,
) {
    for i in start..codims.len() {
        let c = used + codims[i];
        if c > n {
            // codims are sorted, so every later choice is empty too
            break;
        }
        let m = (n - c) as i128;
        let term = binomial(m + d as i128, m);
        if size.is_multiple_of(2) {
            *total += term;
        } else {
            *total -= term;
        }
        dfs(n, codims, i + 1, c, size + 1, d, total);
    }
}

/// `max{0, C(n+d, n) - C(d+2, 2) - s(d+1)}` for a plane and `s` lines.
pub fn plane_lines_expected(n: usize, d: u32, s: usize) -> i128 {
    let d_i = d as i128;
    (forms_dim(n, d) - binomial(d_i + 2, 2) - s as i128 * (d_i + 1)).max(0)
}

/// `max{0, C(n+d, n) - s(d+1)}` for `s` lines.
pub fn lines_expected(n: usize, d: u32, s: usize) -> i128 {
    (forms_dim(n, d) - s as i128 * (d as i128 + 1)).max(0)
}

/// `max{0, C(d+2, 3) - s d}`: the ideal dimension of a plane and `s` lines
/// in `P^3`, for `d > 0`.
pub fn p3_plane_lines_expected(d: u32, s: usize) -> i128 {
    if d == 0 {
        return 0;
    }
    let d_i = d as i128;
    (binomial(d_i + 2, 3) - s as i128 * d_i).max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(7, 4), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(forms_dim(4, 3), 35);
    }

    #[test]
    fn plane_and_lines_in_p4() {
        let shape = Shape {
            linear: vec![2, 1, 1],
            ..Shape::default()
        };
        assert_eq!(shape.expected_ideal_dim(4, 2), 3);
        assert_eq!(Shape::plane_and_lines(6).expected_ideal_dim(4, 3), 1);
        assert_eq!(Shape::plane_and_lines(7).expected_ideal_dim(4, 3), 0);
        assert_eq!(plane_lines_expected(4, 3, 6), 1);
    }

    #[test]
    fn p3_intersections_follow_the_closed_form() {
        for d in 1..8 {
            for s in 0..12 {
                assert_eq!(
                    Shape::plane_and_lines(s).expected_ideal_dim(3, d),
                    p3_plane_lines_expected(d, s),
                    "d={d} s={s}"
                );
            }
        }
    }

    #[test]
    fn line_and_three_planes() {
        let shape = Shape {
            linear: vec![1, 2, 2, 2],
            ..Shape::default()
        };
        assert_eq!(shape.hilbert_polynomial(3, 1), 3);
    }

    #[test]
    fn special_counts() {
        let s = Shape {
            sundials: vec![1],
            ..Shape::default()
        };
        assert_eq!(s.hilbert_polynomial(3, 2), 6);
        let c = Shape {
            conics: 1,
            ..Shape::default()
        };
        assert_eq!(c.hilbert_polynomial(3, 3), 7);
        assert_eq!(Shape::default().expected_ideal_dim(3, 2), 10);
        assert_eq!(c.hilbert_polynomial(3, 0), 1);
    }

    #[test]
    fn descriptions() {
        assert_eq!(Shape::plane_and_lines(6).describe(), "plane + 6 lines");
        assert_eq!(Shape::lines(1).describe(), "line");
        let s = Shape {
            linear: vec![1, 1],
            points: 2,
            sundials: vec![1],
            conics: 3,
            ..Shape::default()
        };
        assert_eq!(
            s.describe(),
            "2 lines + 1 sundial(m=1) + 3 conics + 2 points"
        );
        assert_eq!(Shape::default().describe(), "empty");
    }
}
