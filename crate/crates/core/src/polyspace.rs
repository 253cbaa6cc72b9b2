//! Spaces of degree-d forms and the linear maps that produce conditions.
//!
//! Monomials of a fixed degree are always enumerated in graded-lex order with
//! `x_0 > x_1 > ... > x_n`, i.e. `x_0^d` first and `x_n^d` last.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ExactMatrix;

/// The monomials of degree `degree` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1, "a polynomial ring needs at least one variable");
        let mut exponents = Vec::new();
        let mut current = vec![0u32; nvars];
        enumerate(0, degree, &mut current, &mut exponents);
        let index = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            exponents,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn index_of(&self, exponent: &[u32]) -> Option<usize> {
        self.index.get(exponent).copied()
    }
}

fn enumerate(var: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    for k in (0..=remaining).rev() {
        current[var] = k;
        enumerate(var + 1, remaining - k, current, out);
    }
    current[var] = 0;
}

/// `C(nvars - 1 + d, d)`, the dimension of the degree-d forms.
pub fn monomial_count(nvars: usize, d: u32) -> BigUint {
    assert!(nvars >= 1);
    let n = (nvars - 1) as u64;
    let mut acc = BigUint::from(1u32);
    for i in 1..=d as u64 {
        acc = acc * BigUint::from(n + i) / BigUint::from(i);
    }
    acc
}

pub(crate) fn monomial_count_usize(nvars: usize, d: u32) -> usize {
    monomial_count(nvars, d)
        .to_usize()
        .expect("monomial count fits in memory")
}

/// A homogeneous polynomial with dense coefficients in a [`MonomialBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<F: Field> {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> DensePoly<F> {
    pub fn new(basis: Arc<MonomialBasis>, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Ok(DensePoly { basis, coeffs })
    }

    pub fn constant(field: &F, basis: Arc<MonomialBasis>) -> Self {
        debug_assert_eq!(basis.degree(), 0);
        DensePoly {
            basis,
            coeffs: vec![field.one()],
        }
    }

    /// A linear form with the given coefficient per variable.
    pub fn linear(basis: Arc<MonomialBasis>, coeffs: &[F::Elem]) -> Result<Self> {
        if basis.degree() != 1 {
            return Err(Error::UnsupportedDegree(basis.degree()));
        }
        // Degree-1 grlex order is x_0, x_1, ..., matching the coefficient order.
        DensePoly::new(basis, coeffs.to_vec())
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Product of two forms; `target` must be the basis of the summed degree.
    pub fn mul(&self, other: &Self, field: &F, target: &Arc<MonomialBasis>) -> Self {
        debug_assert_eq!(target.degree(), self.basis.degree() + other.basis.degree());
        let mut coeffs = vec![field.zero(); target.len()];
        let mut exp = vec![0u32; target.nvars()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            let ea = self.basis.exponent(i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if field.is_zero(b) {
                    continue;
                }
                let eb = other.basis.exponent(j);
                for k in 0..exp.len() {
                    exp[k] = ea[k] + eb[k];
                }
                let idx = target
                    .index_of(&exp)
                    .expect("product monomial in target basis");
                coeffs[idx] = field.add(&coeffs[idx], &field.mul(a, b));
            }
        }
        DensePoly {
            basis: target.clone(),
            coeffs,
        }
    }
}

/// Bases of every degree `0..=max_degree` in a fixed number of variables.
#[derive(Clone, Debug)]
pub struct GradedBases {
    bases: Vec<Arc<MonomialBasis>>,
}

impl GradedBases {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        GradedBases {
            bases: (0..=max_degree)
                .map(|d| Arc::new(MonomialBasis::new(nvars, d)))
                .collect(),
        }
    }

    pub fn get(&self, d: u32) -> &Arc<MonomialBasis> {
        &self.bases[d as usize]
    }
}

/// Expands every degree-d monomial in the given linear forms.
///
/// `forms` holds `k` linear forms, each a coefficient vector over `nvars`
/// variables. The result has one entry per monomial `z^beta` of degree `d`
/// in `k` variables (grlex order), namely the coefficients of
/// `prod_i forms[i]^beta_i` in the degree-d basis of the `nvars` variables.
pub fn power_products<F: Field>(
    field: &F,
    forms: &[Vec<F::Elem>],
    nvars: usize,
    d: u32,
) -> Vec<Vec<F::Elem>> {
    let k = forms.len();
    assert!(k >= 1);
    let target = GradedBases::new(nvars, d);
    let outer = MonomialBasis::new(k, d);

    // powers[i][e] = forms[i]^e
    let powers: Vec<Vec<DensePoly<F>>> = forms
        .iter()
        .map(|form| {
            let lin = DensePoly::<F>::linear(target.get(1.min(d)).clone(), form);
            let mut pw = vec![DensePoly::constant(field, target.get(0).clone())];
            if d >= 1 {
                let lin = lin.expect("degree-1 basis");
                for e in 1..=d {
                    let next = pw[e as usize - 1].mul(&lin, field, target.get(e));
                    pw.push(next);
                }
            }
            pw
        })
        .collect();

    let mut out = vec![Vec::new(); outer.len()];
    let mut beta = vec![0u32; k];
    let one = DensePoly::constant(field, target.get(0).clone());
    expand_products(
        field, &powers, &target, &outer, 0, d, &one, &mut beta, &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn expand_products<F: Field>(
    field: &F,
    powers: &[Vec<DensePoly<F>>],
    target: &GradedBases,
    outer: &MonomialBasis,
    var: usize,
    remaining: u32,
    acc: &DensePoly<F>,
    beta: &mut Vec<u32>,
    out: &mut [Vec<F::Elem>],
) {
    let acc_degree = acc.basis().degree();
    if var + 1 == powers.len() {
        beta[var] = remaining;
        let prod = acc.mul(
            &powers[var][remaining as usize],
            field,
            target.get(acc_degree + remaining),
        );
        let idx = outer.index_of(beta).expect("exponent in basis");
        out[idx] = prod.into_coeffs();
        return;
    }
    for e in (0..=remaining).rev() {
        beta[var] = e;
        let next = acc.mul(&powers[var][e as usize], field, target.get(acc_degree + e));
        expand_products(
            field,
            powers,
            target,
            outer,
            var + 1,
            remaining - e,
            &next,
            beta,
            out,
        );
    }
}

/// Matrix of `f -> f(A y)` from degree-d forms on `P^n` to degree-d forms on
/// `P^m`, for a parametrization `A` of size `(n+1) x (m+1)`.
///
/// Rows are indexed by the monomials in `y`, columns by the monomials in `x`.
/// Its kernel is the degree-d part of the ideal of the image of `A`.
pub fn restriction_matrix<F: Field>(param: &ExactMatrix<F>, d: u32) -> Result<ExactMatrix<F>> {
    let field = param.field();
    let rank = param.rank();
    if rank != param.cols() {
        return Err(Error::DegenerateParametrization {
            rank,
            needed: param.cols(),
        });
    }
    let ynvars = param.cols();
    // x_i restricted to the subspace is the linear form given by row i of A.
    let forms = param.to_rows();
    let columns = power_products(field, &forms, ynvars, d);
    let rows = monomial_count_usize(ynvars, d);
    ExactMatrix::from_columns(field.clone(), rows, &columns)
}

/// The row `(P^alpha)_alpha` imposing vanishing at `point`.
pub fn evaluation_row<F: Field>(field: &F, point: &[F::Elem], d: u32) -> Result<Vec<F::Elem>> {
    if point.iter().all(|x| field.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let basis = MonomialBasis::new(point.len(), d);
    let powers = power_table(field, point, d);
    Ok(basis
        .exponents()
        .iter()
        .map(|alpha| monomial_value(field, &powers, alpha))
        .collect())
}

/// The row `((D_Q x^alpha)(P))_alpha = (sum_i alpha_i Q_i P^(alpha - e_i))_alpha`.
pub fn directional_derivative_row<F: Field>(
    field: &F,
    point: &[F::Elem],
    direction: &[F::Elem],
    d: u32,
) -> Result<Vec<F::Elem>> {
    if d == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    if point.len() != direction.len() {
        return Err(Error::DimensionMismatch {
            expected: point.len(),
            found: direction.len(),
        });
    }
    if point.iter().all(|x| field.is_zero(x)) || direction.iter().all(|x| field.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let basis = MonomialBasis::new(point.len(), d);
    let powers = power_table(field, point, d);
    let mut lowered = vec![0u32; point.len()];
    Ok(basis
        .exponents()
        .iter()
        .map(|alpha| {
            let mut acc = field.zero();
            for i in 0..alpha.len() {
                if alpha[i] == 0 || field.is_zero(&direction[i]) {
                    continue;
                }
                lowered.copy_from_slice(alpha);
                lowered[i] -= 1;
                let term = field.mul(
                    &field.mul(&field.from_i64(alpha[i] as i64), &direction[i]),
                    &monomial_value(field, &powers, &lowered),
                );
                acc = field.add(&acc, &term);
            }
            acc
        })
        .collect())
}

fn power_table<F: Field>(field: &F, point: &[F::Elem], d: u32) -> Vec<Vec<F::Elem>> {
    point
        .iter()
        .map(|x| {
            let mut pw = Vec::with_capacity(d as usize + 1);
            pw.push(field.one());
            for e in 1..=d as usize {
                pw.push(field.mul(&pw[e - 1], x));
            }
            pw
        })
        .collect()
}

fn monomial_value<F: Field>(field: &F, powers: &[Vec<F::Elem>], alpha: &[u32]) -> F::Elem {
    alpha.iter().zip(powers).fold(field.one(), |acc, (&a, pw)| {
        field.mul(&acc, &pw[a as usize])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(5, 2), BigUint::from(15u32));
        assert_eq!(monomial_count(4, 3), BigUint::from(20u32));
        assert_eq!(monomial_count(7, 0), BigUint::from(1u32));
        assert_eq!(monomial_count(1, 9), BigUint::from(1u32));
        assert_eq!(
            monomial_count(40, 40).to_string(),
            "53753604366668088230810"
        );
    }

    #[test]
    fn basis_order_is_graded_lex() {
        let b = MonomialBasis::new(3, 2);
        let want: Vec<Vec<u32>> = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 2, 0],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        assert_eq!(b.exponents(), &want[..]);
        for (i, e) in want.iter().enumerate() {
            assert_eq!(b.index_of(e), Some(i));
        }
    }

    #[test]
    fn coordinate_line_restriction() {
        let f = PrimeField::default();
        let a = ExactMatrix::from_i64_rows(f, &[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        let r = restriction_matrix(&a, 1).unwrap();
        assert_eq!(r.to_rows(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(r.kernel_dim(), 1);
    }

    #[test]
    fn restriction_of_a_quadric() {
        // x0 = y0 + y1, x1 = y1: x0*x1 -> y0 y1 + y1^2.
        let q = RationalField::default();
        let a = ExactMatrix::from_i64_rows(q, &[&[1, 1], &[0, 1]]).unwrap();
        let r = restriction_matrix(&a, 2).unwrap();
        // column of x0*x1 (index 1): coefficients on y0^2, y0y1, y1^2.
        assert_eq!(
            r.column(1),
            vec![q.from_i64(0), q.from_i64(1), q.from_i64(1)]
        );
        // column of x0^2: (y0+y1)^2.
        assert_eq!(
            r.column(0),
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(1)]
        );
    }

    #[test]
    fn degenerate_parametrization_is_rejected() {
        let f = PrimeField::default();
        let a = ExactMatrix::from_i64_rows(f, &[&[1, 2], &[2, 4], &[3, 6]]).unwrap();
        assert!(matches!(
            restriction_matrix(&a, 2),
            Err(Error::DegenerateParametrization { rank: 1, needed: 2 })
        ));
    }

    #[test]
    fn evaluation_rows() {
        let f = PrimeField::default();
        let row = evaluation_row(&f, &[1, 0, 0, 0], 3).unwrap();
        assert_eq!(row[0], 1);
        assert!(row[1..].iter().all(|&x| x == 0));
        assert_eq!(evaluation_row(&f, &[1, 1], 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(evaluation_row(&f, &[0, 0], 2), Err(Error::ZeroVector));
    }

    #[test]
    fn derivative_rows() {
        let f = PrimeField::default();
        let row = directional_derivative_row(&f, &[1, 0, 0], &[0, 1, 0], 2).unwrap();
        assert_eq!(row, vec![0, 1, 0, 0, 0, 0]);
        assert_eq!(
            directional_derivative_row(&f, &[1, 0], &[0, 1], 0),
            Err(Error::UnsupportedDegree(0))
        );
        // Euler: D_P f (P) = d f(P).
        let p = [3u64, 5, 7];
        let d = 4;
        let euler = directional_derivative_row(&f, &p, &p, d).unwrap();
        let eval = evaluation_row(&f, &p, d).unwrap();
        let scaled: Vec<u64> = eval
            .iter()
            .map(|x| f.mul(x, &f.from_i64(d as i64)))
            .collect();
        assert_eq!(euler, scaled);
    }
}
