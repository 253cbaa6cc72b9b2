use bipoly::apolarity::{dual_subspace, span_rank, DecompositionInstance, FormGroup};
use bipoly::geometry::{random_point, random_subspace, span, GenericSampler};
use bipoly::polyspace::{directional_derivative_row, restriction_matrix};
use bipoly::postulation::castelnuovo::castelnuovo_terms;
use bipoly::postulation::conditions::ideal_dim_of;
use bipoly::postulation::expected::forms_dim;
use bipoly::schemes::{make_degenerate_conic, make_sundial, Configuration};
use bipoly::{ExactMatrix, Field, PrimeField, Subspace};
use proptest::prelude::*;

fn field() -> PrimeField {
    PrimeField::default()
}

fn small_matrix(rows: usize, cols: usize, entries: Vec<i64>) -> ExactMatrix<PrimeField> {
    let f = field();
    let e = entries
        .iter()
        .take(rows * cols)
        .map(|&v| f.from_i64(v))
        .collect();
    ExactMatrix::new(f, rows, cols, e).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = ExactMatrix<PrimeField>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![Just(0i64), -3i64..4], r * c)
            .prop_map(move |e| small_matrix(r, c, e))
    })
}

/// A random configuration of lines, planes, points, conics and sundials.
fn configuration(seed: u64, n: usize) -> Configuration<PrimeField> {
    let f = field();
    let mut g = GenericSampler::new(seed);
    let mut x = Configuration::new(n);
    for _ in 0..1 + g.index(4) {
        match g.index(5) {
            0 => x
                .push_linear(random_subspace(&f, &mut g, n, 1).unwrap())
                .unwrap(),
            1 => x
                .push_linear(random_subspace(&f, &mut g, n, 2).unwrap())
                .unwrap(),
            2 => x.push_point(random_point(&f, &mut g, n).unwrap()).unwrap(),
            3 => x
                .extend(make_degenerate_conic(&f, &mut g, n).unwrap())
                .unwrap(),
            _ => x.extend(make_sundial(&f, &mut g, n, 1).unwrap()).unwrap(),
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(a in matrix_strategy()) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn rank_nullity(a in matrix_strategy()) {
        prop_assert_eq!(a.rank() + a.kernel_dim(), a.cols());
        let kernel = a.kernel_basis();
        prop_assert_eq!(kernel.len(), a.kernel_dim());
        for v in kernel {
            prop_assert!(a.mul_vec(&v).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn restriction_composes(seed in any::<u64>(), d in 0u32..4) {
        let f = field();
        let mut g = GenericSampler::new(seed);
        let big = random_subspace(&f, &mut g, 4, 2).unwrap().param(&f);
        let small = random_subspace(&f, &mut g, 2, 1).unwrap().param(&f);
        let composite = big.mul(&small).unwrap();
        let outer = restriction_matrix(&big, d).unwrap();
        let inner = restriction_matrix(&small, d).unwrap();
        let whole = restriction_matrix(&composite, d).unwrap();
        let chained = inner.mul(&outer).unwrap();
        prop_assert_eq!(whole.to_rows(), chained.to_rows());
    }

    #[test]
    fn derivative_rows_are_linear_in_direction(seed in any::<u64>(), d in 1u32..5, a in 1i64..50, b in 1i64..50) {
        let f = field();
        let mut g = GenericSampler::new(seed);
        let p = random_point(&f, &mut g, 3).unwrap();
        let u = random_point(&f, &mut g, 3).unwrap();
        let v = random_point(&f, &mut g, 3).unwrap();
        let (a, b) = (f.from_i64(a), f.from_i64(b));
        let w: Vec<u64> = u.coords().iter().zip(v.coords()).map(|(x, y)| f.add(&f.mul(&a, x), &f.mul(&b, y))).collect();
        let ru = directional_derivative_row(&f, p.coords(), u.coords(), d).unwrap();
        let rv = directional_derivative_row(&f, p.coords(), v.coords(), d).unwrap();
        let rw = directional_derivative_row(&f, p.coords(), &w, d).unwrap();
        let combined: Vec<u64> = ru.iter().zip(&rv).map(|(x, y)| f.add(&f.mul(&a, x), &f.mul(&b, y))).collect();
        prop_assert_eq!(rw, combined);
    }

    #[test]
    fn hilbert_function_bounds(seed in any::<u64>(), n in 3usize..5, d in 0u32..5) {
        let f = field();
        let x = configuration(seed, n);
        let ideal = ideal_dim_of(&f, &x, d).unwrap();
        prop_assert!(ideal as i128 <= forms_dim(n, d));
        let y = configuration(seed ^ 0x5eed, n);
        let mut union = x.clone();
        union.extend(y.clone()).unwrap();
        let ideal_y = ideal_dim_of(&f, &y, d).unwrap();
        let ideal_union = ideal_dim_of(&f, &union, d).unwrap();
        // Monotone: more components, fewer forms.
        prop_assert!(ideal_union <= ideal.min(ideal_y));
        // Subadditive Hilbert function.
        let c = forms_dim(n, d) as usize;
        prop_assert!(c - ideal_union <= (c - ideal) + (c - ideal_y));
    }

    #[test]
    fn span_of_generic_subspaces(seed in any::<u64>(), n in 2usize..7, a in 0usize..3, b in 0usize..3) {
        prop_assume!(a < n && b < n);
        let f = field();
        let mut g = GenericSampler::new(seed);
        let u = random_subspace(&f, &mut g, n, a).unwrap();
        let v = random_subspace(&f, &mut g, n, b).unwrap();
        prop_assert_eq!(span(&f, &[&u, &v]).unwrap().dim(), (a + b + 1).min(n));
    }

    #[test]
    fn castelnuovo_on_random_configurations(seed in any::<u64>(), n in 3usize..5, d in 0u32..4) {
        let f = field();
        let x = configuration(seed, n);
        let mut g = GenericSampler::new(seed.rotate_left(17));
        let h = random_subspace(&f, &mut g, n, n - 1).unwrap();
        let (lhs, res, tr) = castelnuovo_terms(&f, &x, &h, d).unwrap();
        prop_assert!(lhs <= res + tr);
    }

    #[test]
    fn span_rank_grows_with_groups(seed in any::<u64>(), n in 2usize..5, d in 1u32..4, k in 1usize..4) {
        let f = field();
        let mut g = GenericSampler::new(seed);
        let groups: Vec<FormGroup<PrimeField>> = (0..k)
            .map(|_| {
                let size = 1 + g.index(n.min(3));
                FormGroup::random(&f, &mut g, n, size).unwrap()
            })
            .collect();
        let fewer = DecompositionInstance::new(n, groups[..k - 1].to_vec());
        let all = DecompositionInstance::new(n, groups).unwrap();
        let full = span_rank(&f, &all, d).unwrap();
        prop_assert!(full as i128 <= forms_dim(n, d));
        if let Ok(fewer) = fewer {
            prop_assert!(span_rank(&f, &fewer, d).unwrap() <= full);
        }
    }

    #[test]
    fn dual_of_a_basis_group_is_the_subspace(seed in any::<u64>(), n in 2usize..6, m in 0usize..3) {
        prop_assume!(m < n);
        let f = field();
        let mut g = GenericSampler::new(seed);
        let s: Subspace<PrimeField> = random_subspace(&f, &mut g, n, m).unwrap();
        let group = FormGroup::new(&f, s.basis().to_vec()).unwrap();
        prop_assert!(dual_subspace(&f, &group).unwrap().same_as(&f, &s));
    }
}
