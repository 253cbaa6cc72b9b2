//! Projective linear algebra: points, linear subspaces, spans, hyperplane
//! sections and seeded generic sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ExactMatrix;

const MAX_RESAMPLES: usize = 64;

/// A point of `P^n`, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, mut coords: Vec<F::Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|x| !field.is_zero(x))
            .ok_or(Error::ZeroVector)?;
        let inv = field.inv(lead).expect("nonzero");
        field.scale(&mut coords, &inv);
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: &F, coords: &[i64]) -> Result<Self> {
        Self::new(field, coords.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn to_subspace(&self) -> Subspace<F> {
        Subspace {
            ambient: self.ambient_dim(),
            basis: vec![self.coords.clone()],
        }
    }
}

/// A linear subspace of `P^n` of dimension `m`, given by `m + 1` linearly
/// independent vectors spanning its cone in `k^(n+1)`.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    /// Builds a subspace from spanning vectors, which must be independent.
    pub fn new(field: &F, basis: Vec<Vec<F::Elem>>) -> Result<Self> {
        let first = basis.first().ok_or(Error::EmptyList)?;
        let len = first.len();
        if len == 0 {
            return Err(Error::ZeroVector);
        }
        if let Some(v) = basis.iter().find(|v| v.len() != len) {
            return Err(Error::AmbientMismatch(len - 1, v.len().saturating_sub(1)));
        }
        let rank = field.rank_of(basis.clone(), len);
        if rank != basis.len() {
            return Err(Error::DegenerateParametrization {
                rank,
                needed: basis.len(),
            });
        }
        Ok(Subspace {
            ambient: len - 1,
            basis,
        })
    }

    pub fn from_i64(field: &F, basis: &[&[i64]]) -> Result<Self> {
        Self::new(
            field,
            basis
                .iter()
                .map(|v| v.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// The whole of `P^n`.
    pub fn full(field: &F, n: usize) -> Self {
        let basis = (0..=n)
            .map(|i| {
                let mut v = vec![field.zero(); n + 1];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { ambient: n, basis }
    }

    /// The hyperplane `sum_i h_i x_i = 0`.
    pub fn hyperplane_from_equation(field: &F, equation: &[F::Elem]) -> Result<Self> {
        if equation.iter().all(|x| field.is_zero(x)) {
            return Err(Error::ZeroVector);
        }
        let m = ExactMatrix::from_rows(field.clone(), equation.len(), vec![equation.to_vec()])?;
        Subspace::new(field, m.kernel_basis())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// The `(n+1) x (m+1)` parametrization matrix whose columns span the cone.
    pub fn param(&self, field: &F) -> ExactMatrix<F> {
        ExactMatrix::from_columns(field.clone(), self.ambient + 1, &self.basis)
            .expect("basis vectors are canonical")
    }

    /// Reduced echelon form of the spanning set, identical for equal subspaces.
    pub fn canonical(&self, field: &F) -> Vec<Vec<F::Elem>> {
        crate::matrix::rref(field, self.basis.clone(), self.ambient + 1).0
    }

    pub fn same_as(&self, field: &F, other: &Self) -> bool {
        self.ambient == other.ambient && self.canonical(field) == other.canonical(field)
    }

    /// Linear forms vanishing on the subspace (a basis of its degree-1 ideal).
    pub fn equations(&self, field: &F) -> Vec<Vec<F::Elem>> {
        ExactMatrix::from_rows(field.clone(), self.ambient + 1, self.basis.clone())
            .expect("canonical rows")
            .kernel_basis()
    }

    /// The equation of a hyperplane.
    pub fn hyperplane_equation(&self, field: &F) -> Result<Vec<F::Elem>> {
        if self.dim() + 1 != self.ambient {
            return Err(Error::NotAHyperplane {
                expected: self.ambient.saturating_sub(1),
                found: self.dim(),
            });
        }
        Ok(self.equations(field).remove(0))
    }

    /// Whether `v` lies in the cone over this subspace, decided by exact solve.
    pub fn contains_vector(&self, field: &F, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient + 1 {
            return Err(Error::AmbientMismatch(
                self.ambient,
                v.len().saturating_sub(1),
            ));
        }
        Ok(self.param(field).solve(v)?.is_some())
    }

    pub fn contains(&self, field: &F, p: &ProjPoint<F>) -> Result<bool> {
        self.contains_vector(field, p.coords())
    }

    pub fn contains_sub(&self, field: &F, other: &Subspace<F>) -> Result<bool> {
        if other.ambient != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let param = self.param(field);
        for v in &other.basis {
            if param.solve(v)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `S ∩ H` for a hyperplane `H` not containing `S`.
    ///
    /// For a point outside `H` the intersection is empty and
    /// [`Error::EmptyIntersection`] is returned.
    pub fn intersect_hyperplane(&self, field: &F, h: &Subspace<F>) -> Result<Subspace<F>> {
        if h.ambient != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, h.ambient));
        }
        let eq = h.hyperplane_equation(field)?;
        let values: Vec<F::Elem> = self.basis.iter().map(|v| dot(field, &eq, v)).collect();
        if values.iter().all(|x| field.is_zero(x)) {
            return Err(Error::ImproperIntersection);
        }
        if self.dim() == 0 {
            return Err(Error::EmptyIntersection);
        }
        let coeffs =
            ExactMatrix::from_rows(field.clone(), values.len(), vec![values])?.kernel_basis();
        let basis = coeffs
            .iter()
            .map(|c| combine(field, &self.basis, c))
            .collect();
        Subspace::new(field, basis)
    }

    /// Re-expresses an object inside the hyperplane `H` in the coordinates of
    /// `H`'s own parametrization, giving an object of `P^(n-1)`.
    pub fn in_hyperplane_coords(&self, field: &F, h: &Subspace<F>) -> Result<Subspace<F>> {
        if h.ambient != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, h.ambient));
        }
        h.hyperplane_equation(field)?;
        let param = h.param(field);
        let basis = self
            .basis
            .iter()
            .map(|v| param.solve(v)?.ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, basis)
    }

    /// Maps an object of `P^(n-1)` given in the coordinates of `h` back into `P^n`.
    pub fn embed_through(&self, field: &F, h: &Subspace<F>) -> Result<Subspace<F>> {
        if h.dim() != self.ambient {
            return Err(Error::AmbientMismatch(h.dim(), self.ambient));
        }
        let param = h.param(field);
        let basis = self
            .basis
            .iter()
            .map(|c| param.mul_vec(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, basis)
    }

    /// A point of this subspace with generic coordinates.
    pub fn random_point(&self, field: &F, sampler: &mut GenericSampler) -> Result<ProjPoint<F>> {
        for _ in 0..MAX_RESAMPLES {
            let c = sampler.vector(field, self.basis.len());
            let v = combine(field, &self.basis, &c);
            if let Ok(p) = ProjPoint::new(field, v) {
                return Ok(p);
            }
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }

    /// A generic `m`-dimensional subspace of this one.
    pub fn random_subspace(
        &self,
        field: &F,
        sampler: &mut GenericSampler,
        m: usize,
    ) -> Result<Subspace<F>> {
        if m > self.dim() {
            return Err(Error::DimensionOutOfRange { m, n: self.dim() });
        }
        for _ in 0..MAX_RESAMPLES {
            let basis: Vec<_> = (0..=m)
                .map(|_| {
                    let c = sampler.vector(field, self.basis.len());
                    combine(field, &self.basis, &c)
                })
                .collect();
            if let Ok(s) = Subspace::new(field, basis) {
                return Ok(s);
            }
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }
}

/// A generic `m`-dimensional subspace of `P^n`: independent uniform
/// parametrization entries, resampled until full rank.
pub fn random_subspace<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    m: usize,
) -> Result<Subspace<F>> {
    if m > n {
        return Err(Error::DimensionOutOfRange { m, n });
    }
    for _ in 0..MAX_RESAMPLES {
        let basis = (0..=m).map(|_| sampler.vector(field, n + 1)).collect();
        if let Ok(s) = Subspace::new(field, basis) {
            return Ok(s);
        }
    }
    Err(Error::SamplingExhausted(MAX_RESAMPLES))
}

pub fn random_point<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
) -> Result<ProjPoint<F>> {
    for _ in 0..MAX_RESAMPLES {
        if let Ok(p) = ProjPoint::new(field, sampler.vector(field, n + 1)) {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_RESAMPLES))
}

/// A generic hyperplane containing every given subspace.
pub fn random_hyperplane_containing<F: Field>(
    field: &F,
    sampler: &mut GenericSampler,
    n: usize,
    contained: &[&Subspace<F>],
) -> Result<Subspace<F>> {
    let base = if contained.is_empty() {
        None
    } else {
        Some(span(field, contained)?)
    };
    match base {
        None => random_subspace(field, sampler, n, n - 1),
        Some(b) if b.dim() >= n => Err(Error::DimensionOutOfRange { m: b.dim() + 1, n }),
        Some(b) => {
            for _ in 0..MAX_RESAMPLES {
                let mut basis = b.basis.clone();
                while basis.len() < n {
                    basis.push(sampler.vector(field, n + 1));
                }
                if let Ok(h) = Subspace::new(field, basis) {
                    return Ok(h);
                }
            }
            Err(Error::SamplingExhausted(MAX_RESAMPLES))
        }
    }
}

/// The smallest subspace containing all inputs.
pub fn span<F: Field>(field: &F, objects: &[&Subspace<F>]) -> Result<Subspace<F>> {
    let first = objects.first().ok_or(Error::EmptyList)?;
    let n = first.ambient;
    if let Some(o) = objects.iter().find(|o| o.ambient != n) {
        return Err(Error::AmbientMismatch(n, o.ambient));
    }
    let stacked: Vec<_> = objects
        .iter()
        .flat_map(|o| o.basis.iter().cloned())
        .collect();
    let (rows, _) = crate::matrix::rref(field, stacked, n + 1);
    Subspace::new(field, rows)
}

pub(crate) fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        field.add(&acc, &field.mul(x, y))
    })
}

pub(crate) fn combine<F: Field>(
    field: &F,
    vectors: &[Vec<F::Elem>],
    coeffs: &[F::Elem],
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); vectors[0].len()];
    for (v, c) in vectors.iter().zip(coeffs) {
        field.axpy(&mut out, c, v);
    }
    out
}

/// Seeded source of generic scalars.
///
/// The stream is a pure function of the seed. Independent sub-streams are
/// derived with [`GenericSampler::split`], never from shared global state.
#[derive(Clone, Debug)]
pub struct GenericSampler {
    seed: u64,
    bound: Option<i64>,
    rng: ChaCha8Rng,
}

impl GenericSampler {
    pub fn new(seed: u64) -> Self {
        GenericSampler {
            seed,
            bound: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Draw integers from `[-bound, bound]` regardless of the field, so that
    /// the same seed yields the same integer coordinates in every mode.
    pub fn with_integer_bound(seed: u64, bound: i64) -> Self {
        GenericSampler {
            bound: Some(bound.max(1)),
            ..Self::new(seed)
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent sampler for sub-task `index`; same bound policy.
    pub fn split(&self, index: u64) -> Self {
        let seed = splitmix64(self.seed ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)));
        GenericSampler {
            seed,
            bound: self.bound,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn scalar<F: Field>(&mut self, field: &F) -> F::Elem {
        let (lo, hi) = match self.bound {
            Some(b) => (-b, b),
            None => field.sample_range(),
        };
        field.from_i64(self.rng.gen_range(lo..=hi))
    }

    pub fn vector<F: Field>(&mut self, field: &F, len: usize) -> Vec<F::Elem> {
        (0..len).map(|_| self.scalar(field)).collect()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn coordinate(n: usize, idx: &[usize]) -> Subspace<PrimeField> {
        let basis = idx
            .iter()
            .map(|&i| {
                let mut v = vec![0; n + 1];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::new(&f(), basis).unwrap()
    }

    #[test]
    fn points_are_normalized() {
        let p = ProjPoint::from_i64(&f(), &[0, 3, 6]).unwrap();
        assert_eq!(p.coords()[1], 1);
        assert_eq!(p.coords()[2], 2);
        assert_eq!(ProjPoint::from_i64(&f(), &[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn random_subspace_extremes() {
        let mut s = GenericSampler::new(1);
        let pt = random_subspace(&f(), &mut s, 4, 0).unwrap();
        assert_eq!(pt.dim(), 0);
        let all = random_subspace(&f(), &mut s, 4, 4).unwrap();
        assert_eq!(all.param(&f()).rank(), 5);
        assert_eq!(
            random_subspace(&f(), &mut s, 2, 3).unwrap_err(),
            Error::DimensionOutOfRange { m: 3, n: 2 }
        );
    }

    #[test]
    fn two_generic_lines_in_p3_are_skew() {
        let mut s = GenericSampler::new(7);
        let a = random_subspace(&f(), &mut s, 3, 1).unwrap();
        let b = random_subspace(&f(), &mut s, 3, 1).unwrap();
        let mut stacked = a.basis().to_vec();
        stacked.extend(b.basis().iter().cloned());
        assert_eq!(f().rank_of(stacked, 4), 4);
    }

    #[test]
    fn containment() {
        let s = coordinate(3, &[0, 1]);
        let e0 = ProjPoint::from_i64(&f(), &[1, 0, 0, 0]).unwrap();
        let e2 = ProjPoint::from_i64(&f(), &[0, 0, 1, 0]).unwrap();
        assert!(s.contains(&f(), &e0).unwrap());
        assert!(!s.contains(&f(), &e2).unwrap());
        assert!(s.contains_sub(&f(), &e0.to_subspace()).unwrap());
        assert!(matches!(
            s.contains_sub(&f(), &coordinate(2, &[0])),
            Err(Error::AmbientMismatch(3, 2))
        ));
    }

    #[test]
    fn hyperplane_sections() {
        let fl = f();
        let mut s = GenericSampler::new(3);
        let h = random_subspace(&fl, &mut s, 4, 3).unwrap();
        let line = random_subspace(&fl, &mut s, 4, 1).unwrap();
        let p = line.intersect_hyperplane(&fl, &h).unwrap();
        assert_eq!(p.dim(), 0);
        assert!(h.contains_sub(&fl, &p).unwrap());
        assert!(line.contains_sub(&fl, &p).unwrap());

        let plane = random_subspace(&fl, &mut s, 4, 2).unwrap();
        let l = plane.intersect_hyperplane(&fl, &h).unwrap();
        assert_eq!(l.dim(), 1);

        let inside = h.random_subspace(&fl, &mut s, 1).unwrap();
        assert_eq!(
            inside.intersect_hyperplane(&fl, &h).unwrap_err(),
            Error::ImproperIntersection
        );
        let off = random_point(&fl, &mut s, 4).unwrap().to_subspace();
        assert_eq!(
            off.intersect_hyperplane(&fl, &h).unwrap_err(),
            Error::EmptyIntersection
        );
    }

    #[test]
    fn spans() {
        let fl = f();
        let mut s = GenericSampler::new(11);
        let p = random_point(&fl, &mut s, 3).unwrap().to_subspace();
        let pp = span(&fl, &[&p, &p]).unwrap();
        assert!(pp.same_as(&fl, &p));
        let a = random_subspace(&fl, &mut s, 3, 1).unwrap();
        let b = random_subspace(&fl, &mut s, 3, 1).unwrap();
        assert_eq!(span(&fl, &[&a, &b]).unwrap().dim(), 3);
        let l = random_subspace(&fl, &mut s, 6, 1).unwrap();
        let pi = random_subspace(&fl, &mut s, 6, 2).unwrap();
        assert_eq!(span(&fl, &[&l, &pi]).unwrap().dim(), 4);
        assert!(matches!(
            span::<PrimeField>(&fl, &[]),
            Err(Error::EmptyList)
        ));
    }

    #[test]
    fn hyperplane_coordinates() {
        let fl = f();
        // H = {x_3 = 0}; its parametrization is e0, e1, e2.
        let h = coordinate(3, &[0, 1, 2]);
        let line = coordinate(3, &[0, 1]);
        let inner = line.in_hyperplane_coords(&fl, &h).unwrap();
        assert_eq!(inner.ambient_dim(), 2);
        assert!(inner.same_as(&fl, &coordinate(2, &[0, 1])));

        let mut s = GenericSampler::new(5);
        let h = random_subspace(&fl, &mut s, 4, 3).unwrap();
        let sub = h.random_subspace(&fl, &mut s, 2).unwrap();
        let round = sub
            .in_hyperplane_coords(&fl, &h)
            .unwrap()
            .embed_through(&fl, &h)
            .unwrap();
        assert!(round.same_as(&fl, &sub));
        assert!(h.contains_sub(&fl, &sub).unwrap());

        let outside = random_subspace(&fl, &mut s, 4, 1).unwrap();
        assert_eq!(
            outside.in_hyperplane_coords(&fl, &h).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn sampler_is_reproducible_and_splits() {
        let fl = f();
        let a = GenericSampler::new(42).vector(&fl, 8);
        let b = GenericSampler::new(42).vector(&fl, 8);
        assert_eq!(a, b);
        let root = GenericSampler::new(42);
        assert_ne!(root.split(0).vector(&fl, 8), root.split(1).vector(&fl, 8));
        assert_eq!(root.split(3).vector(&fl, 8), root.split(3).vector(&fl, 8));
    }
}
