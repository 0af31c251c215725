//! Submodular set functions and the ample cone.
//!
//! An ample point is a class induced by a strictly submodular set function:
//! the coordinate at a proper flat `F` is `c(F)`. Ample membership is only
//! ever certified through such a provenance; no attempt is made to decide
//! membership of an arbitrary class. Set functions are stored as dense
//! tables over all subsets with the boundary normalization
//! `c(empty) = c(E) = 0`, so indicator functions appear here in clamped
//! form (zero at `E`), which keeps them submodular and keeps sums with
//! strictly submodular functions strictly submodular.

use crate::matroid::{FlatId, Matroid, MatroidError};
use crate::volume::{beta_vector, ClassVector, VolumeError};
use crate::Rational;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Submodularity checks enumerate pairs of subsets, so the dense table is
/// capped well below the matroid module's ground limit.
pub const MAX_CONE_GROUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("set function must vanish on the empty set and the full ground set")]
    BoundaryViolation,
    #[error("ground set of size {0} exceeds the set-function cap {MAX_CONE_GROUND}")]
    SizeCapExceeded(usize),
    #[error("element {0} is out of range or a loop")]
    ElementOutOfRange(usize),
    #[error("ample certification failed: {0}")]
    CertificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
}

/// Dense rational set function on the subsets of `{0, .., n-1}` with
/// `c(empty) = c(E) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self, ConeError> {
        if n > MAX_CONE_GROUND {
            return Err(ConeError::SizeCapExceeded(n));
        }
        if values.len() != 1 << n {
            return Err(ConeError::InvalidParameters(format!(
                "expected {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        let full = (1usize << n) - 1;
        if !values[0].is_zero() || !values[full].is_zero() {
            return Err(ConeError::BoundaryViolation);
        }
        Ok(SetFunction { n, values })
    }

    /// Evaluates `f` on the proper subsets and clamps the boundary to zero.
    pub fn from_fn_clamped(n: usize, f: impl Fn(u64) -> Rational) -> Result<Self, ConeError> {
        if n > MAX_CONE_GROUND {
            return Err(ConeError::SizeCapExceeded(n));
        }
        let full = (1u64 << n) - 1;
        let values = (0..1u64 << n)
            .map(|s| {
                if s == 0 || s == full {
                    Rational::zero()
                } else {
                    f(s)
                }
            })
            .collect();
        Ok(SetFunction { n, values })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn value(&self, set: u64) -> &Rational {
        &self.values[set as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn add(&self, other: &SetFunction) -> SetFunction {
        assert_eq!(self.n, other.n);
        SetFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SetFunction {
        SetFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `c(I) + c(J) >= c(I and J) + c(I or J)` over all incomparable pairs.
    /// Incomparability already forces both sets proper and nonempty.
    pub fn is_submodular(&self) -> bool {
        self.check_pairs(|lhs, rhs| lhs >= rhs)
    }

    pub fn is_strictly_submodular(&self) -> bool {
        self.check_pairs(|lhs, rhs| lhs > rhs)
    }

    fn check_pairs(&self, ok: impl Fn(&Rational, &Rational) -> bool) -> bool {
        let size = 1u64 << self.n;
        for a in 1..size {
            for b in a + 1..size {
                let meet = a & b;
                if meet == a || meet == b {
                    continue;
                }
                let lhs = &self.values[a as usize] + &self.values[b as usize];
                let rhs = &self.values[meet as usize] + &self.values[(a | b) as usize];
                if !ok(&lhs, &rhs) {
                    return false;
                }
            }
        }
        true
    }
}

/// The quadratic witness `c(I) = |I| (n - |I|)`, strictly submodular.
pub fn canonical_submodular(n: usize) -> Result<SetFunction, ConeError> {
    SetFunction::from_fn_clamped(n, |s| {
        let k = s.count_ones() as i64;
        crate::rat_int(k * (n as i64 - k))
    })
}

/// The indicator of `i`, clamped to vanish on the full set. Submodular
/// with equality except where the clamp bites; never strictly submodular
/// for `n >= 3`.
pub fn indicator_modular(n: usize, i: usize) -> Result<SetFunction, ConeError> {
    if i >= n {
        return Err(ConeError::ElementOutOfRange(i));
    }
    SetFunction::from_fn_clamped(n, |s| {
        if s >> i & 1 == 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Class induced by a strictly submodular set function, carrying its
/// provenance and whether the stored representative is strictly positive.
#[derive(Clone, Debug)]
pub struct AmplePoint {
    class: ClassVector,
    provenance: SetFunction,
    positive: bool,
}

impl AmplePoint {
    /// Builds the induced point after verifying strict submodularity.
    /// Trusted constructors below skip the quadratic check because their
    /// functions are strictly submodular by closure properties.
    pub fn new_checked(m: &Matroid, c: SetFunction) -> Result<AmplePoint, ConeError> {
        if c.ground_size() != m.ground_size() {
            return Err(ConeError::InvalidParameters(
                "set function ground size does not match the matroid".into(),
            ));
        }
        if !c.is_strictly_submodular() {
            return Err(ConeError::CertificationFailed(
                "set function is not strictly submodular".into(),
            ));
        }
        Ok(AmplePoint::induced(m, c))
    }

    fn induced(m: &Matroid, c: SetFunction) -> AmplePoint {
        let class = ClassVector::from_fn(m, |set| c.value(set).clone());
        let positive = class.is_strictly_positive();
        AmplePoint {
            class,
            provenance: c,
            positive,
        }
    }

    pub fn class(&self) -> &ClassVector {
        &self.class
    }

    pub fn provenance(&self) -> &SetFunction {
        &self.provenance
    }

    pub fn has_positive_representative(&self) -> bool {
        self.positive
    }
}

fn check_cap(m: &Matroid) -> Result<(), ConeError> {
    if m.ground_size() > MAX_CONE_GROUND {
        return Err(ConeError::SizeCapExceeded(m.ground_size()));
    }
    Ok(())
}

/// The ample point of the canonical quadratic set function; every
/// proper-flat coordinate is `|F| (n - |F|) > 0`.
pub fn canonical_ample(m: &Matroid) -> Result<AmplePoint, ConeError> {
    check_cap(m)?;
    let c = canonical_submodular(m.ground_size())?;
    Ok(AmplePoint::induced(m, c))
}

/// Seeded ample point `lambda c_plus + sum_i a_i c_i` with `lambda` in
/// `1..=8` and `a_i` in `0..=8`. Strictly submodular as the sum of a
/// strictly submodular and modular functions; every coordinate is at
/// least `lambda |F| (n - |F|) > 0`.
pub fn sample_ample(m: &Matroid, seed: u64) -> Result<AmplePoint, ConeError> {
    check_cap(m)?;
    let n = m.ground_size();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let lambda = crate::rat_int(rng.gen_range(1i64..=8));
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0i64..=8)).collect();
    let c = SetFunction::from_fn_clamped(n, |s| {
        let k = s.count_ones() as i64;
        let base = &lambda * crate::rat_int(k * (n as i64 - k));
        let modular: i64 = (0..n).filter(|&i| s >> i & 1 == 1).map(|i| coeffs[i]).sum();
        base + crate::rat_int(modular)
    })?;
    let point = AmplePoint::induced(m, c);
    debug_assert!(point.has_positive_representative() || m.num_proper_flats() == 0);
    Ok(point)
}

/// Ample point whose class converges to `alpha_i` as `eps` shrinks:
/// induced by the clamped indicator of `i` plus `eps` times the canonical
/// quadratic.
pub fn approach_alpha(m: &Matroid, i: usize, eps: &Rational) -> Result<AmplePoint, ConeError> {
    check_cap(m)?;
    check_element(m, i)?;
    if !eps.is_positive() {
        return Err(ConeError::InvalidParameters("eps must be positive".into()));
    }
    let c = indicator_modular(m.ground_size(), i)?
        .add(&canonical_submodular(m.ground_size())?.scale(eps));
    Ok(AmplePoint::induced(m, c))
}

/// Ample point converging to `beta_i`: induced by
/// `c(I) = 1` for nonempty `I` avoiding `i` (zero elsewhere, so the
/// boundary vanishes on its own) plus `eps` times the canonical
/// quadratic. The modular-part coordinates are validated against
/// `beta_i` exactly.
pub fn approach_beta(m: &Matroid, i: usize, eps: &Rational) -> Result<AmplePoint, ConeError> {
    check_cap(m)?;
    check_element(m, i)?;
    if !eps.is_positive() {
        return Err(ConeError::InvalidParameters("eps must be positive".into()));
    }
    let n = m.ground_size();
    let base = SetFunction::from_fn_clamped(n, |s| {
        if s != 0 && s >> i & 1 == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })?;
    let base_point = AmplePoint::induced(m, base.clone());
    let beta = beta_vector(m, i)?;
    if base_point.class.coords() != beta.coords() {
        return Err(ConeError::CertificationFailed(
            "beta-inducing set function does not reproduce beta coordinates".into(),
        ));
    }
    let c = base.add(&canonical_submodular(n)?.scale(eps));
    Ok(AmplePoint::induced(m, c))
}

fn check_element(m: &Matroid, i: usize) -> Result<(), ConeError> {
    if i >= m.ground_size() || m.loops() >> i & 1 == 1 {
        return Err(ConeError::ElementOutOfRange(i));
    }
    Ok(())
}

/// Representative of the same class with nonnegative coordinates, at
/// least one positive when the matroid has rank at least two.
///
/// Subtracts the modular function of chain marginals
/// `m_i = c([0..=i]) - c([0..i])`; submodularity makes every corrected
/// value nonnegative by a telescoping diminishing-returns argument, and
/// the marginals sum to `c(E) - c(empty) = 0` so the class is unchanged.
pub fn effective_representative(m: &Matroid, u: &AmplePoint) -> Result<ClassVector, ConeError> {
    let c = u.provenance();
    let n = m.ground_size();
    if c.ground_size() != n {
        return Err(ConeError::InvalidParameters(
            "provenance ground size does not match the matroid".into(),
        ));
    }
    let mut marginals = Vec::with_capacity(n);
    let mut prefix: u64 = 0;
    for i in 0..n {
        let next = prefix | 1 << i;
        marginals.push(c.value(next) - c.value(prefix));
        prefix = next;
    }
    let out = ClassVector::from_fn(m, |set| {
        let modular: Rational = (0..n)
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| marginals[i].clone())
            .sum();
        c.value(set) - modular
    });
    if !out.is_nonnegative()
        || (m.num_proper_flats() > 0 && out.coords().iter().all(|v| v.is_zero()))
    {
        return Err(ConeError::CertificationFailed(
            "effective representative is not nonnegative and somewhere positive".into(),
        ));
    }
    Ok(out.with_tag("effective"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionDirection {
    Up,
    Down,
}

/// Projects an ample point to the minor at a proper flat and returns a
/// certified ample point there.
///
/// The provenance is first shifted by `c(F) (c_i - c_j)` with `i` inside
/// and `j` outside `F`, making it vanish at `F` without changing the
/// class; the restricted (subsets of `F`) or contracted (`c'(I | F)` on
/// the complement) set function then has the right boundary and is
/// rechecked for strict submodularity on the minor.
pub fn project_ample(
    m: &Matroid,
    u: &AmplePoint,
    f: FlatId,
    direction: ProjectionDirection,
) -> Result<AmplePoint, ConeError> {
    if !m.is_proper(f) {
        return Err(VolumeError::ImproperFlat(f).into());
    }
    let c = u.provenance();
    let n = m.ground_size();
    if c.ground_size() != n {
        return Err(ConeError::InvalidParameters(
            "provenance ground size does not match the matroid".into(),
        ));
    }
    let fset = m.flat(f);
    let full = (1u64 << n) - 1;
    let i = fset.trailing_zeros() as usize;
    let j = (full & !fset).trailing_zeros() as usize;
    let cf = c.value(fset).clone();
    let shifted = |s: u64| -> Rational {
        let delta = ((s >> i & 1) as i64) - ((s >> j & 1) as i64);
        c.value(s) - &cf * crate::rat_int(delta)
    };

    let (minor, elems) = match direction {
        ProjectionDirection::Up => crate::matroid::restriction(m, f)?,
        ProjectionDirection::Down => crate::matroid::contraction(m, f)?,
    };
    let k = minor.ground_size();
    let expand = |s: u64| -> u64 {
        let mut out = 0u64;
        for (new, &old) in elems.iter().enumerate() {
            if s >> new & 1 == 1 {
                out |= 1 << old;
            }
        }
        out
    };
    let values: Vec<Rational> = (0..1u64 << k)
        .map(|s| match direction {
            ProjectionDirection::Up => shifted(expand(s)),
            ProjectionDirection::Down => shifted(expand(s) | fset),
        })
        .collect();
    let projected = SetFunction::new(k, values).map_err(|e| match e {
        ConeError::BoundaryViolation => ConeError::CertificationFailed(
            "projected set function misses the boundary normalization".into(),
        ),
        other => other,
    })?;
    if !projected.is_strictly_submodular() {
        return Err(ConeError::CertificationFailed(
            "projected set function is not strictly submodular".into(),
        ));
    }
    Ok(AmplePoint::induced(&minor, projected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, graphic_matroid};
    use crate::matroid::{interval_minor, uniform};
    use crate::rat_int;
    use crate::volume::{
        alpha_vector, coord_index, projection_down, projection_up, volume_polynomial, QuotientBasis,
    };

    #[test]
    fn canonical_witness_is_strictly_submodular() {
        for n in 2..=5 {
            let c = canonical_submodular(n).unwrap();
            assert!(c.is_strictly_submodular());
            assert!(c.is_submodular());
        }
    }

    #[test]
    fn indicators_are_submodular_but_not_strict() {
        for n in 3..=4 {
            for i in 0..n {
                let c = indicator_modular(n, i).unwrap();
                assert!(c.is_submodular());
                assert!(!c.is_strictly_submodular());
            }
        }
        // The zero function likewise.
        let zero = SetFunction::from_fn_clamped(3, |_| Rational::zero()).unwrap();
        assert!(zero.is_submodular());
        assert!(!zero.is_strictly_submodular());
    }

    #[test]
    fn boundary_is_enforced() {
        let mut values = vec![Rational::zero(); 8];
        values[7] = rat_int(1);
        assert_eq!(
            SetFunction::new(3, values),
            Err(ConeError::BoundaryViolation)
        );
    }

    #[test]
    fn canonical_ample_coordinates() {
        let m = uniform(2, 3).unwrap();
        let y = canonical_ample(&m).unwrap();
        // Proper flats are singletons: c_plus = 1 * (3 - 1) = 2.
        assert!(y.class().coords().iter().all(|v| *v == rat_int(2)));
        assert!(y.has_positive_representative());
        assert!(y.provenance().is_strictly_submodular());
    }

    #[test]
    fn rank_two_ample_points_are_positive_multiples_of_alpha() {
        let m = uniform(2, 4).unwrap();
        let q = QuotientBasis::new(&m);
        let alpha = alpha_vector(&m, 0).unwrap();
        let alpha_red = q.reduce(alpha.coords());
        for seed in 0..10u64 {
            let y = sample_ample(&m, seed).unwrap();
            let y_red = q.reduce(y.class().coords());
            // y_red = t * alpha_red with t > 0.
            let k = alpha_red
                .iter()
                .position(|v| !v.is_zero())
                .expect("alpha is nonzero in the quotient");
            let t = &y_red[k] / &alpha_red[k];
            assert!(t.is_positive());
            for (a, b) in y_red.iter().zip(&alpha_red) {
                assert_eq!(a, &(&t * b));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_positive() {
        let m = uniform(3, 4).unwrap();
        let a = sample_ample(&m, 7).unwrap();
        let b = sample_ample(&m, 7).unwrap();
        assert_eq!(a.class().coords(), b.class().coords());
        assert!(a.has_positive_representative());
        assert!(a.provenance().is_strictly_submodular());

        // Closure under addition and positive scaling.
        let c = sample_ample(&m, 8).unwrap();
        let sum = a.provenance().add(c.provenance());
        assert!(sum.is_strictly_submodular());
        assert!(sum.scale(&rat_int(3)).is_strictly_submodular());
    }

    #[test]
    fn approach_alpha_is_affine_in_eps() {
        let m = uniform(3, 4).unwrap();
        let alpha = alpha_vector(&m, 1).unwrap();
        let cplus = canonical_ample(&m).unwrap();
        for eps in [rat_int(1), rat_int(1) / rat_int(2), rat_int(1) / rat_int(4)] {
            let y = approach_alpha(&m, 1, &eps).unwrap();
            let expect = alpha.add(&cplus.class().scale(&eps));
            assert_eq!(y.class().coords(), expect.coords());
            assert!(y.provenance().is_strictly_submodular());
        }
    }

    #[test]
    fn approach_beta_matches_beta_coordinates() {
        let m = uniform(3, 4).unwrap();
        let beta = beta_vector(&m, 2).unwrap();
        let cplus = canonical_ample(&m).unwrap();
        let eps = rat_int(1) / rat_int(2);
        let y = approach_beta(&m, 2, &eps).unwrap();
        let expect = beta.add(&cplus.class().scale(&eps));
        assert_eq!(y.class().coords(), expect.coords());
        assert!(y.provenance().is_strictly_submodular());
    }

    #[test]
    fn effective_representatives_are_nonnegative_and_equivalent() {
        for m in [
            uniform(2, 3).unwrap(),
            uniform(3, 4).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let q = QuotientBasis::new(&m);
            let canonical = canonical_ample(&m).unwrap();
            for seed in 0..20u64 {
                let y = if seed == 0 {
                    canonical.clone()
                } else {
                    sample_ample(&m, seed).unwrap()
                };
                let eff = effective_representative(&m, &y).unwrap();
                assert!(eff.is_nonnegative());
                assert!(eff.coords().iter().any(|v| v.is_positive()));
                assert!(q.same_class(&eff, y.class()));
            }
        }
    }

    #[test]
    fn projections_stay_ample_and_respect_classes() {
        let m = uniform(3, 4).unwrap();
        let y = canonical_ample(&m).unwrap();
        for &f in &m.proper_flats() {
            for dir in [ProjectionDirection::Up, ProjectionDirection::Down] {
                let projected = project_ample(&m, &y, f, dir).unwrap();
                assert!(projected.provenance().is_strictly_submodular());

                // The projected class agrees with the linear projection of
                // the original class, up to W of the minor.
                let (minor, _) = match dir {
                    ProjectionDirection::Up => interval_minor(&m, m.bottom(), f).unwrap(),
                    ProjectionDirection::Down => interval_minor(&m, f, m.top()).unwrap(),
                };
                let map = match dir {
                    ProjectionDirection::Up => projection_up(&m, f).unwrap(),
                    ProjectionDirection::Down => projection_down(&m, f).unwrap(),
                };
                let direct = map.apply(y.class().coords()).unwrap();
                let qb = QuotientBasis::new(&minor);
                let direct = ClassVector::new(&minor, direct).unwrap();
                assert!(qb.same_class(&direct, projected.class()));
            }
        }
    }

    #[test]
    fn rank_two_flat_coordinate_is_not_ample() {
        // The second derivative along a rank-2 flat coordinate of a rank-3
        // matroid is -1, so that delta class cannot be ample.
        let m = uniform(3, 4).unwrap();
        let v = volume_polynomial(&m).unwrap();
        let g = m.find_flat(0b0011).unwrap();
        let idx = coord_index(&m, g).unwrap();
        let second = v.differentiate(idx).differentiate(idx);
        assert_eq!(second.constant_term(), rat_int(-1));
        assert_eq!(second.num_terms(), 1);
    }

    #[test]
    fn derivatives_along_ample_points_are_positive() {
        for m in [
            uniform(3, 4).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let v = volume_polynomial(&m).unwrap();
            let r = m.rank() - 1;
            let base = sample_ample(&m, 1).unwrap();
            for k in 0..=r {
                let mut g = v.clone();
                for s in 0..k {
                    let dir = sample_ample(&m, 10 + s as u64).unwrap();
                    g = g.directional_derivative(dir.class().coords()).unwrap();
                }
                let val = g.evaluate(base.class().coords()).unwrap();
                assert!(val.is_positive(), "k = {k}");
            }
        }
    }

    #[test]
    fn caps_and_element_validation() {
        let m = uniform(2, 3).unwrap();
        assert!(matches!(
            approach_alpha(&m, 5, &rat_int(1)),
            Err(ConeError::ElementOutOfRange(5))
        ));
        assert!(matches!(
            approach_alpha(&m, 0, &rat_int(0)),
            Err(ConeError::InvalidParameters(_))
        ));
        assert!(matches!(
            AmplePoint::new_checked(&m, indicator_modular(3, 0).unwrap()),
            Err(ConeError::CertificationFailed(_))
        ));
        let ok = AmplePoint::new_checked(&m, canonical_submodular(3).unwrap());
        assert!(ok.is_ok());
    }
}
