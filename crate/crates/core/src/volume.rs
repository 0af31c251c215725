//! Volume polynomials on the lattice of flats.
//!
//! The ambient space has one coordinate `t_F` per proper flat of the
//! matroid, ordered canonically (flat id minus one). The distinguished
//! classes `alpha_i` and `beta_i` are indicator sums over proper flats, and
//! `W_M` is the span of their differences; everything of substance is
//! invariant under translation along `W_M`.
//!
//! The volume polynomial is defined by an Euler-type recursion over proper
//! flats: each summand restricts below the flat and contracts above it,
//! pulling the two smaller volume polynomials back along explicit
//! projection maps. Intervals of the lattice are shared aggressively, so
//! the recursion memoizes on interval endpoints rather than on minors.
//! Iterated derivatives along a chain of flats factor through the same
//! projections; `ChainContext` packages that product structure.

use crate::matroid::{self, Chain, FlatId, Matroid, MatroidError};
use crate::polyalg::{LinearMap, MultiPoly, PolyError};
use crate::Rational;
use num::{One, Signed, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VolumeError {
    #[error("matroid has loops")]
    LoopyMatroid,
    #[error("element {0} is out of range or a loop")]
    ElementOutOfRange(usize),
    #[error("flat {0} is not proper")]
    ImproperFlat(FlatId),
    #[error("derivative index {k} exceeds maximum {max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("coordinate vector has length {got}, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Index of a proper flat among the coordinates of `R^{P(M)}`. The bottom
/// flat has the strictly smallest cardinality and the top the strictly
/// largest, so proper flats occupy ids `1..=n-2` and the coordinate of
/// flat id `f` is `f - 1`.
pub fn coord_index(m: &Matroid, f: FlatId) -> Option<usize> {
    m.is_proper(f).then(|| f - 1)
}

/// Vector in `R^{P(M)}`: one rational per proper flat in canonical order,
/// with an optional note about how this representative was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    coords: Vec<Rational>,
    tag: Option<String>,
}

impl ClassVector {
    pub fn new(m: &Matroid, coords: Vec<Rational>) -> Result<Self, VolumeError> {
        if coords.len() != m.num_proper_flats() {
            return Err(VolumeError::ArityMismatch {
                expected: m.num_proper_flats(),
                got: coords.len(),
            });
        }
        Ok(ClassVector { coords, tag: None })
    }

    pub fn zero(m: &Matroid) -> Self {
        ClassVector {
            coords: vec![Rational::zero(); m.num_proper_flats()],
            tag: None,
        }
    }

    /// Builds coordinates from a function of the underlying flat set.
    pub fn from_fn(m: &Matroid, f: impl Fn(matroid::FlatSet) -> Rational) -> Self {
        let coords = m.proper_flats().iter().map(|&id| f(m.flat(id))).collect();
        ClassVector { coords, tag: None }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, idx: usize) -> &Rational {
        &self.coords[idx]
    }

    pub fn set_coord(&mut self, idx: usize, v: Rational) {
        self.coords[idx] = v;
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    pub fn with_tag(mut self, tag: &str) -> Self {
        self.tag = Some(tag.to_string());
        self
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        assert_eq!(self.coords.len(), other.coords.len());
        ClassVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            tag: None,
        }
    }

    pub fn sub(&self, other: &ClassVector) -> ClassVector {
        assert_eq!(self.coords.len(), other.coords.len());
        ClassVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
            tag: None,
        }
    }

    pub fn scale(&self, c: &Rational) -> ClassVector {
        ClassVector {
            coords: self.coords.iter().map(|a| a * c).collect(),
            tag: None,
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.coords.iter().any(|c| c.is_negative())
    }
}

/// `alpha_i`: indicator of the proper flats containing `i`.
pub fn alpha_vector(m: &Matroid, i: usize) -> Result<ClassVector, VolumeError> {
    check_element(m, i)?;
    Ok(ClassVector::from_fn(m, |set| {
        if set >> i & 1 == 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
    .with_tag("alpha"))
}

/// `beta_i`: indicator of the proper flats avoiding `i`.
pub fn beta_vector(m: &Matroid, i: usize) -> Result<ClassVector, VolumeError> {
    check_element(m, i)?;
    Ok(ClassVector::from_fn(m, |set| {
        if set >> i & 1 == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
    .with_tag("beta"))
}

fn check_element(m: &Matroid, i: usize) -> Result<(), VolumeError> {
    if i >= m.ground_size() || m.loops() >> i & 1 == 1 {
        return Err(VolumeError::ElementOutOfRange(i));
    }
    Ok(())
}

/// Spanning set of `W_M`: the differences `alpha_i - alpha_{i0}` over
/// non-loop elements, with `i0` the smallest non-loop.
pub fn w_spanning_vectors(m: &Matroid) -> Vec<Vec<Rational>> {
    let nonloops: Vec<usize> = (0..m.ground_size())
        .filter(|&i| m.loops() >> i & 1 == 0)
        .collect();
    let Some((&i0, rest)) = nonloops.split_first() else {
        return Vec::new();
    };
    let a0 = alpha_vector(m, i0).expect("i0 is a non-loop");
    rest.iter()
        .map(|&i| {
            alpha_vector(m, i)
                .expect("non-loop")
                .sub(&a0)
                .coords()
                .to_vec()
        })
        .collect()
}

/// Row-reduced basis of `W_M` with a complement basis of the quotient.
/// Reduction against the basis picks a canonical coset representative, so
/// two vectors lie in the same class exactly when they reduce equally.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl QuotientBasis {
    pub fn new(m: &Matroid) -> Self {
        let ambient = m.num_proper_flats();
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in w_spanning_vectors(m) {
            for (row, &p) in basis.iter().zip(&pivots) {
                if !v[p].is_zero() {
                    let c = v[p].clone();
                    for (vc, rc) in v.iter_mut().zip(row) {
                        *vc -= &c * rc;
                    }
                }
            }
            if let Some(p) = v.iter().position(|c| !c.is_zero()) {
                let lead = v[p].clone();
                for vc in v.iter_mut() {
                    *vc /= &lead;
                }
                // Clear the new pivot from earlier rows to keep the basis
                // fully reduced.
                for (row, _) in basis.iter_mut().zip(&pivots) {
                    if !row[p].is_zero() {
                        let c = row[p].clone();
                        for (rc, vc) in row.iter_mut().zip(&v) {
                            *rc -= &c * vc;
                        }
                    }
                }
                basis.push(v);
                pivots.push(p);
            }
        }
        QuotientBasis {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim_w(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_quotient(&self) -> usize {
        self.ambient - self.basis.len()
    }

    /// Coordinates not used as pivots: a complement basis of the quotient.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }

    /// Canonical coset representative: eliminates every pivot coordinate.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for (oc, rc) in out.iter_mut().zip(row) {
                    *oc -= &c * rc;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn same_class(&self, a: &ClassVector, b: &ClassVector) -> bool {
        self.contains(a.sub(b).coords())
    }
}

/// Interval projection `pi_F^G` from `R^{P(M)}` to the proper-flat
/// coordinates of the minor `[F, G]`, using element `e` of `G - F` for the
/// alpha and beta expansions in the target.
///
/// Source coordinates strictly inside the interval pass through; the
/// coordinate at `F` (when proper) maps to `-beta_e` of the minor, the one
/// at `G` (when proper) to `-alpha_e`, and everything else to zero.
pub fn projection_interval_with(
    m: &Matroid,
    lo: FlatId,
    hi: FlatId,
    e: usize,
) -> Result<LinearMap, VolumeError> {
    if lo == hi || !m.leq(lo, hi) {
        return Err(MatroidError::NotComparable.into());
    }
    let ground = m.flat(hi) & !m.flat(lo);
    if e >= matroid::MAX_GROUND || ground >> e & 1 == 0 {
        return Err(VolumeError::ElementOutOfRange(e));
    }
    let inner = m.open_interval_flats(lo, hi);
    let mut map = LinearMap::zero(inner.len(), m.num_proper_flats());
    for (row, &h) in inner.iter().enumerate() {
        map.set(row, h - 1, Rational::one());
        let has_e = m.flat(h) >> e & 1 == 1;
        if has_e {
            if let Some(col) = coord_index(m, hi) {
                map.set(row, col, -Rational::one());
            }
        } else if let Some(col) = coord_index(m, lo) {
            map.set(row, col, -Rational::one());
        }
    }
    Ok(map)
}

/// `pi_F^G` with the default element: the smallest member of `G - F`.
pub fn projection_interval(m: &Matroid, lo: FlatId, hi: FlatId) -> Result<LinearMap, VolumeError> {
    if lo == hi || !m.leq(lo, hi) {
        return Err(MatroidError::NotComparable.into());
    }
    let e = (m.flat(hi) & !m.flat(lo)).trailing_zeros() as usize;
    projection_interval_with(m, lo, hi, e)
}

/// Restriction projection `pi^F` onto the minor below a proper flat.
pub fn projection_up(m: &Matroid, f: FlatId) -> Result<LinearMap, VolumeError> {
    if !m.is_proper(f) {
        return Err(VolumeError::ImproperFlat(f));
    }
    projection_interval(m, m.bottom(), f)
}

/// Contraction projection `pi_F` onto the minor above a proper flat.
pub fn projection_down(m: &Matroid, f: FlatId) -> Result<LinearMap, VolumeError> {
    if !m.is_proper(f) {
        return Err(VolumeError::ImproperFlat(f));
    }
    projection_interval(m, f, m.top())
}

/// Memoized interval volumes, keyed by interval endpoints in the parent
/// lattice. Variables of the interval `[lo, hi]` are its open-interval
/// flats in canonical order, which agrees with the proper-flat order of
/// the relabeled minor.
struct VolumeTable<'a> {
    m: &'a Matroid,
    memo: HashMap<(FlatId, FlatId), MultiPoly>,
}

impl<'a> VolumeTable<'a> {
    fn new(m: &'a Matroid) -> Self {
        VolumeTable {
            m,
            memo: HashMap::new(),
        }
    }

    fn interval_volume(&mut self, lo: FlatId, hi: FlatId) -> MultiPoly {
        if let Some(v) = self.memo.get(&(lo, hi)) {
            return v.clone();
        }
        let r = self.m.rank_of_flat(hi) - self.m.rank_of_flat(lo);
        let open = self.m.open_interval_flats(lo, hi);
        let result = if lo == hi {
            MultiPoly::zero(0)
        } else if r == 1 {
            MultiPoly::one(0)
        } else {
            let col_of: HashMap<FlatId, usize> =
                open.iter().enumerate().map(|(p, &h)| (h, p)).collect();
            let mut sum = MultiPoly::zero(open.len());
            for (kpos, &k) in open.iter().enumerate() {
                let up = self.interval_volume(lo, k);
                let down = self.interval_volume(k, hi);
                let up_map = self.sub_projection(&col_of, open.len(), lo, k, true);
                let down_map = self.sub_projection(&col_of, open.len(), k, hi, false);
                let term = up
                    .substitute_linear(&up_map)
                    .expect("projection arity matches by construction")
                    .mul(
                        &down
                            .substitute_linear(&down_map)
                            .expect("projection arity matches by construction"),
                    )
                    .mul_by_var(kpos);
                sum = sum.add(&term);
            }
            sum.scale(&(Rational::one() / crate::rat_int((r - 1) as i64)))
        };
        self.memo.insert((lo, hi), result.clone());
        result
    }

    /// Projection from the coordinates of an outer interval onto the open
    /// flats of `[lo, hi]`, one of whose endpoints is the summation flat.
    /// `up` means the target sits below the flat `hi`, whose coordinate
    /// expands to `-alpha_e`; otherwise the target sits above `lo`, which
    /// expands to `-beta_e`.
    fn sub_projection(
        &self,
        col_of: &HashMap<FlatId, usize>,
        outer_arity: usize,
        lo: FlatId,
        hi: FlatId,
        up: bool,
    ) -> LinearMap {
        let e = (self.m.flat(hi) & !self.m.flat(lo)).trailing_zeros() as usize;
        let inner = self.m.open_interval_flats(lo, hi);
        let flat_col = if up { col_of[&hi] } else { col_of[&lo] };
        let mut map = LinearMap::zero(inner.len(), outer_arity);
        for (row, &h) in inner.iter().enumerate() {
            map.set(row, col_of[&h], Rational::one());
            let has_e = self.m.flat(h) >> e & 1 == 1;
            if has_e == up {
                map.set(row, flat_col, -Rational::one());
            }
        }
        map
    }
}

/// The volume polynomial: homogeneous of degree `rank - 1`, one variable
/// per proper flat. Conventions: zero for rank 0, the constant 1 for
/// rank 1.
pub fn volume_polynomial(m: &Matroid) -> Result<MultiPoly, VolumeError> {
    if !m.is_loopless() {
        return Err(VolumeError::LoopyMatroid);
    }
    let mut table = VolumeTable::new(m);
    Ok(table.interval_volume(m.bottom(), m.top()))
}

/// `D_alpha^{r-k} D_beta^k V_M` for `r = rank - 1`, a rational constant.
pub fn mixed_degree(m: &Matroid, k: usize) -> Result<Rational, VolumeError> {
    let vm = volume_polynomial(m)?;
    mixed_degree_with(m, &vm, k)
}

/// Same, reusing a precomputed volume polynomial.
pub fn mixed_degree_with(m: &Matroid, vm: &MultiPoly, k: usize) -> Result<Rational, VolumeError> {
    if !m.is_loopless() {
        return Err(VolumeError::LoopyMatroid);
    }
    if m.rank() == 0 || k > m.rank() - 1 {
        return Err(VolumeError::RankOutOfRange {
            k,
            max: m.rank().saturating_sub(1),
        });
    }
    let r = m.rank() - 1;
    let alpha = alpha_vector(m, 0)?;
    let beta = beta_vector(m, 0)?;
    let mut g = vm.clone();
    for _ in 0..r - k {
        g = g.directional_derivative(alpha.coords())?;
    }
    for _ in 0..k {
        g = g.directional_derivative(beta.coords())?;
    }
    Ok(g.constant_term())
}

/// All mixed degrees `k = 0..=rank-1` from one volume computation.
pub fn mixed_degree_all(m: &Matroid) -> Result<Vec<Rational>, VolumeError> {
    let vm = volume_polynomial(m)?;
    (0..m.rank())
        .map(|k| mixed_degree_with(m, &vm, k))
        .collect()
}

/// Representative of the class of `u` that vanishes on every interior
/// flat of the chain. For each chain flat the correction subtracts
/// `u_F (alpha_i - alpha_j)` with `i` entering at `F` and `j` entering at
/// the next chain flat, so corrections do not disturb other chain flats.
pub fn flat_avoiding_representative(
    m: &Matroid,
    u: &ClassVector,
    chain: &Chain,
) -> Result<ClassVector, VolumeError> {
    if u.len() != m.num_proper_flats() {
        return Err(VolumeError::ArityMismatch {
            expected: m.num_proper_flats(),
            got: u.len(),
        });
    }
    let mut out = u.clone();
    let flats = chain.flats();
    for j in 1..flats.len().saturating_sub(1) {
        let cur = flats[j];
        let idx = coord_index(m, cur).expect("chain interior flats are proper");
        let coeff = u.coord(idx).clone();
        if coeff.is_zero() {
            continue;
        }
        let entering = m.flat(cur) & !m.flat(flats[j - 1]);
        let leaving = m.flat(flats[j + 1]) & !m.flat(cur);
        let i = entering.trailing_zeros() as usize;
        let jp = leaving.trailing_zeros() as usize;
        for (pos, &id) in m.proper_flats().iter().enumerate() {
            let set = m.flat(id);
            let has_i = set >> i & 1 == 1;
            let has_jp = set >> jp & 1 == 1;
            if has_i && !has_jp {
                let v = out.coord(pos) - &coeff;
                out.set_coord(pos, v);
            } else if has_jp && !has_i {
                let v = out.coord(pos) + &coeff;
                out.set_coord(pos, v);
            }
        }
    }
    Ok(out.with_tag("flat-avoiding"))
}

/// Product structure attached to a chain of proper flats: one variable
/// block per consecutive lattice interval, in chain order.
#[derive(Clone, Debug)]
pub struct ChainContext {
    chain: Chain,
    blocks: Vec<(FlatId, FlatId)>,
    block_vars: Vec<Vec<FlatId>>,
    offsets: Vec<usize>,
    arity: usize,
}

impl ChainContext {
    pub fn new(m: &Matroid, chain: Chain) -> Self {
        let flats = chain.flats();
        let blocks: Vec<(FlatId, FlatId)> = flats.windows(2).map(|w| (w[0], w[1])).collect();
        let block_vars: Vec<Vec<FlatId>> = blocks
            .iter()
            .map(|&(lo, hi)| m.open_interval_flats(lo, hi))
            .collect();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut arity = 0;
        for vars in &block_vars {
            offsets.push(arity);
            arity += vars.len();
        }
        ChainContext {
            chain,
            blocks,
            block_vars,
            offsets,
            arity,
        }
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    /// Interval endpoints `(lo, hi)` of each block, in chain order.
    pub fn blocks(&self) -> &[(FlatId, FlatId)] {
        &self.blocks
    }

    /// Parent flat ids of the variables of one block.
    pub fn block_vars(&self, b: usize) -> &[FlatId] {
        &self.block_vars[b]
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// The product of the interval volume polynomials, one block each.
    pub fn product_polynomial(&self, m: &Matroid) -> MultiPoly {
        let mut table = VolumeTable::new(m);
        let mut f = MultiPoly::one(self.arity);
        for (b, &(lo, hi)) in self.blocks.iter().enumerate() {
            let v = table.interval_volume(lo, hi);
            let var_map: Vec<usize> = (0..self.block_vars[b].len())
                .map(|p| self.offsets[b] + p)
                .collect();
            f = f.mul(&v.embed(self.arity, &var_map));
        }
        f
    }

    /// The stacked interval projections: block `b` rows are
    /// `pi_{F_b}^{F_{b+1}}` applied to the ambient coordinates.
    pub fn projection(&self, m: &Matroid) -> LinearMap {
        let mut map = LinearMap::zero(self.arity, m.num_proper_flats());
        for (b, &(lo, hi)) in self.blocks.iter().enumerate() {
            let block =
                projection_interval(m, lo, hi).expect("chain blocks are nondegenerate intervals");
            for row in 0..self.block_vars[b].len() {
                for col in 0..m.num_proper_flats() {
                    let v = block.get(row, col);
                    if !v.is_zero() {
                        map.set(self.offsets[b] + row, col, v.clone());
                    }
                }
            }
        }
        map
    }
}

/// The chain product polynomial and its projection. Composing them gives
/// the iterated derivative of the volume polynomial along the chain.
pub fn chain_product(m: &Matroid, chain: &Chain) -> (MultiPoly, LinearMap) {
    let ctx = ChainContext::new(m, chain.clone());
    (ctx.product_polynomial(m), ctx.projection(m))
}

/// Iterated partial derivative of `vm` along the interior flats of the
/// chain, in ambient coordinates.
pub fn chain_derivative(m: &Matroid, vm: &MultiPoly, chain: &Chain) -> MultiPoly {
    let mut g = vm.clone();
    for &f in chain.interior() {
        let idx = coord_index(m, f).expect("chain interior flats are proper");
        g = g.differentiate(idx);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::reduced_characteristic_polynomial;
    use crate::graphs::{complete, graphic_matroid};
    use crate::matroid::{interval_minor, truncation, uniform, validate_flats};
    use crate::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn rand_vector(m: &Matroid, rng: &mut ChaCha12Rng) -> ClassVector {
        let coords = (0..m.num_proper_flats())
            .map(|_| rat_int(rng.gen_range(-5i64..=5)))
            .collect();
        ClassVector::new(m, coords).unwrap()
    }

    #[test]
    fn alpha_beta_on_u23() {
        let m = uniform(2, 3).unwrap();
        let a0 = alpha_vector(&m, 0).unwrap();
        let b0 = beta_vector(&m, 0).unwrap();
        // Proper flats are the singletons {0}, {1}, {2} in order.
        assert_eq!(a0.coords(), &[rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(b0.coords(), &[rat_int(0), rat_int(1), rat_int(1)]);
        // alpha_i + beta_i is the all-ones vector for every i.
        for i in 0..3 {
            let s = alpha_vector(&m, i)
                .unwrap()
                .add(&beta_vector(&m, i).unwrap());
            assert!(s.coords().iter().all(|c| c.is_one()));
        }
        assert!(matches!(
            alpha_vector(&m, 3),
            Err(VolumeError::ElementOutOfRange(3))
        ));
        // Loops are rejected.
        let loopy = validate_flats(2, &[0b01, 0b11]).unwrap();
        assert!(matches!(
            alpha_vector(&loopy, 0),
            Err(VolumeError::ElementOutOfRange(0))
        ));
    }

    #[test]
    fn quotient_dimensions() {
        let m = uniform(2, 3).unwrap();
        let q = QuotientBasis::new(&m);
        assert_eq!(q.ambient_dim(), 3);
        assert_eq!(q.dim_w(), 2);
        assert_eq!(q.dim_quotient(), 1);
        assert_eq!(q.complement().len(), 1);

        // Differences of alphas reduce to zero, alpha itself does not.
        let a0 = alpha_vector(&m, 0).unwrap();
        let a2 = alpha_vector(&m, 2).unwrap();
        assert!(q.contains(a0.sub(&a2).coords()));
        assert!(!q.contains(a0.coords()));
        assert!(q.same_class(&a0, &a2));
    }

    #[test]
    fn volume_base_cases() {
        // Rank 1: constant 1 in zero variables.
        let v = volume_polynomial(&uniform(1, 2).unwrap()).unwrap();
        assert_eq!(v, MultiPoly::one(0));

        // Rank 2: sum of the proper-flat variables.
        let m = uniform(2, 4).unwrap();
        let v = volume_polynomial(&m).unwrap();
        let mut expect = MultiPoly::zero(4);
        for i in 0..4 {
            expect = expect.add(&MultiPoly::var(4, i));
        }
        assert_eq!(v, expect);

        let loopy = validate_flats(2, &[0b01, 0b11]).unwrap();
        assert!(matches!(
            volume_polynomial(&loopy),
            Err(VolumeError::LoopyMatroid)
        ));
    }

    #[test]
    fn volume_is_homogeneous_of_corank_degree() {
        for m in [
            uniform(3, 4).unwrap(),
            uniform(4, 5).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let v = volume_polynomial(&m).unwrap();
            assert_eq!(v.homogeneous_degree(), Some(m.rank() - 1));
        }
    }

    #[test]
    fn rank_three_closed_form() {
        // In coordinates t1 alpha_1 + sum over rank-2 flats of t_G delta_G,
        // the volume is (t1^2 - sum t_G^2) / 2.
        let m = uniform(3, 4).unwrap();
        let v = volume_polynomial(&m).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let alpha = alpha_vector(&m, 1).unwrap();
        let rank2: Vec<usize> = m
            .proper_flats()
            .iter()
            .filter(|&&f| m.rank_of_flat(f) == 2)
            .map(|&f| coord_index(&m, f).unwrap())
            .collect();
        for _ in 0..10 {
            let t1 = rat_int(rng.gen_range(-4i64..=4));
            let mut point = alpha.scale(&t1);
            let mut sum_sq = Rational::zero();
            for &idx in &rank2 {
                let tg = rat_int(rng.gen_range(-4i64..=4));
                sum_sq += &tg * &tg;
                let c = point.coord(idx) + &tg;
                point.set_coord(idx, c);
            }
            let expect = (&t1 * &t1 - sum_sq) / rat_int(2);
            assert_eq!(v.evaluate(point.coords()).unwrap(), expect);
        }
    }

    #[test]
    fn derivative_factors_through_projections() {
        let m = uniform(3, 4).unwrap();
        let v = volume_polynomial(&m).unwrap();
        for &f in &m.proper_flats() {
            let df = v.differentiate(coord_index(&m, f).unwrap());
            let (up_minor, _) = interval_minor(&m, m.bottom(), f).unwrap();
            let (down_minor, _) = interval_minor(&m, f, m.top()).unwrap();
            let v_up = volume_polynomial(&up_minor).unwrap();
            let v_down = volume_polynomial(&down_minor).unwrap();
            let lhs = v_up
                .substitute_linear(&projection_up(&m, f).unwrap())
                .unwrap()
                .mul(
                    &v_down
                        .substitute_linear(&projection_down(&m, f).unwrap())
                        .unwrap(),
                );
            assert_eq!(df, lhs, "flat {f}");
        }
    }

    #[test]
    fn maximal_chains_differentiate_to_one() {
        for m in [
            uniform(3, 4).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let v = volume_polynomial(&m).unwrap();
            // Walk a maximal chain: always the first cover.
            let mut ids = Vec::new();
            let mut cur = m.bottom();
            while cur != m.top() {
                cur = m.covers_of(cur)[0];
                if cur != m.top() {
                    ids.push(cur);
                }
            }
            let chain = Chain::new(&m, &ids).unwrap();
            let d = chain_derivative(&m, &v, &chain);
            assert_eq!(d, MultiPoly::one(m.num_proper_flats()));
        }
    }

    #[test]
    fn incomparable_mixed_partials_vanish() {
        let m = uniform(3, 4).unwrap();
        let v = volume_polynomial(&m).unwrap();
        for &f in &m.proper_flats() {
            for &g in &m.proper_flats() {
                if !m.comparable(f, g) {
                    let d = v
                        .differentiate(coord_index(&m, f).unwrap())
                        .differentiate(coord_index(&m, g).unwrap());
                    assert!(d.is_zero(), "flats {f}, {g}");
                }
            }
        }
    }

    #[test]
    fn volume_is_invariant_along_w() {
        for m in [uniform(3, 4).unwrap(), uniform(2, 5).unwrap()] {
            let v = volume_polynomial(&m).unwrap();
            for w in w_spanning_vectors(&m) {
                assert!(v.directional_derivative(&w).unwrap().is_zero());
            }
            // Equivalently, all alpha-directions agree.
            let d0 = v
                .directional_derivative(alpha_vector(&m, 0).unwrap().coords())
                .unwrap();
            for i in 1..m.ground_size() {
                let di = v
                    .directional_derivative(alpha_vector(&m, i).unwrap().coords())
                    .unwrap();
                assert_eq!(d0, di);
            }
        }
    }

    #[test]
    fn truncation_restricts_the_alpha_derivative() {
        for m in [
            uniform(3, 4).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let v = volume_polynomial(&m).unwrap();
            let da = v
                .directional_derivative(alpha_vector(&m, 0).unwrap().coords())
                .unwrap();
            let tr = truncation(&m, 1).unwrap();
            let v_tr = volume_polynomial(&tr).unwrap();
            // Inclusion of the truncation coordinates: proper flats of the
            // truncation are exactly the parent proper flats of corank >= 2,
            // in the same relative order.
            let kept: Vec<FlatId> = m
                .proper_flats()
                .iter()
                .copied()
                .filter(|&f| m.rank_of_flat(f) <= m.rank() - 2)
                .collect();
            assert_eq!(kept.len(), tr.num_proper_flats());
            let mut incl = LinearMap::zero(m.num_proper_flats(), tr.num_proper_flats());
            for (newidx, &f) in kept.iter().enumerate() {
                incl.set(coord_index(&m, f).unwrap(), newidx, Rational::one());
            }
            assert_eq!(da.substitute_linear(&incl).unwrap(), v_tr);
        }
    }

    #[test]
    fn projections_send_alpha_and_beta_to_the_lemma_values() {
        let m = uniform(3, 4).unwrap();
        for &f in &m.proper_flats() {
            let up = projection_up(&m, f).unwrap();
            let down = projection_down(&m, f).unwrap();
            let (up_minor, up_elems) = interval_minor(&m, m.bottom(), f).unwrap();
            let (down_minor, down_elems) = interval_minor(&m, f, m.top()).unwrap();
            let q_up = QuotientBasis::new(&up_minor);
            let q_down = QuotientBasis::new(&down_minor);
            for i in 0..m.ground_size() {
                let a = up.apply(alpha_vector(&m, i).unwrap().coords()).unwrap();
                let b = up.apply(beta_vector(&m, i).unwrap().coords()).unwrap();
                if m.flat(f) >> i & 1 == 1 {
                    // i lives in the restriction: alpha_i maps to zero in
                    // the class, beta_i to the minor's beta.
                    assert!(q_up.contains(&a));
                    let i_minor = up_elems.iter().position(|&e| e == i).unwrap();
                    let expect = beta_vector(&up_minor, i_minor).unwrap();
                    let got = ClassVector::new(&up_minor, b).unwrap();
                    assert!(q_up.same_class(&got, &expect));
                } else {
                    // i lives in the contraction: alpha_i maps to the
                    // minor's alpha, beta_i to zero.
                    let a_down = down.apply(alpha_vector(&m, i).unwrap().coords()).unwrap();
                    let b_down = down.apply(beta_vector(&m, i).unwrap().coords()).unwrap();
                    let i_minor = down_elems.iter().position(|&e| e == i).unwrap();
                    let expect = alpha_vector(&down_minor, i_minor).unwrap();
                    let got = ClassVector::new(&down_minor, a_down).unwrap();
                    assert!(q_down.same_class(&got, &expect));
                    assert!(q_down.contains(&b_down));
                }
            }
        }
    }

    #[test]
    fn mixed_projections_commute_in_the_quotient() {
        let m = uniform(3, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for &f in &m.proper_flats() {
            for &g in &m.proper_flats() {
                if f == g || !m.leq(f, g) {
                    continue;
                }
                let (minor, _) = interval_minor(&m, f, g).unwrap();
                let q = QuotientBasis::new(&minor);
                // Down at f, then up at the image of g in the contraction.
                let down = projection_down(&m, f).unwrap();
                let (down_minor, _) = interval_minor(&m, f, m.top()).unwrap();
                let g_in_down = down_minor
                    .find_flat(shrink_set(m.flat(g) & !m.flat(f), m.flat(f)))
                    .unwrap();
                let up_then = projection_up(&down_minor, g_in_down).unwrap();
                let lhs = up_then.compose(&down).unwrap();
                // Up at g, then down at the image of f in the restriction.
                let up = projection_up(&m, g).unwrap();
                let (up_minor, _) = interval_minor(&m, m.bottom(), g).unwrap();
                let f_in_up = up_minor
                    .find_flat(shrink_set(m.flat(f), m.loops() | !m.flat(g)))
                    .unwrap();
                let down_then = projection_down(&up_minor, f_in_up).unwrap();
                let rhs = down_then.compose(&up).unwrap();
                for _ in 0..5 {
                    let t = rand_vector(&m, &mut rng);
                    let a = lhs.apply(t.coords()).unwrap();
                    let b = rhs.apply(t.coords()).unwrap();
                    let diff: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                    assert!(q.contains(&diff), "interval ({f}, {g})");
                }
            }
        }
    }

    /// Relabels `set` by deleting the positions listed in `removed`.
    fn shrink_set(set: u64, removed: u64) -> u64 {
        let mut out = 0u64;
        let mut new_pos = 0;
        for i in 0..64 {
            if removed >> i & 1 == 1 {
                continue;
            }
            if set >> i & 1 == 1 {
                out |= 1 << new_pos;
            }
            new_pos += 1;
        }
        out
    }

    #[test]
    fn mixed_degrees_match_reduced_char_coefficients() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(mixed_degree(&u23, 0).unwrap(), rat_int(1));
        assert_eq!(mixed_degree(&u23, 1).unwrap(), rat_int(2));

        for m in [
            uniform(3, 4).unwrap(),
            graphic_matroid(&complete(4)).unwrap(),
        ] {
            let mu = reduced_characteristic_polynomial(&m).unwrap().mu;
            let degs = mixed_degree_all(&m).unwrap();
            assert_eq!(degs.len(), mu.len());
            for (k, d) in degs.iter().enumerate() {
                assert_eq!(d, &Rational::from_integer(mu[k].clone()), "k = {k}");
            }
        }
        assert!(matches!(
            mixed_degree(&u23, 2),
            Err(VolumeError::RankOutOfRange { k: 2, max: 1 })
        ));
    }

    #[test]
    fn mixed_degree_is_representative_independent() {
        // Same constants from any alpha_i / beta_i choice.
        let m = uniform(3, 4).unwrap();
        let vm = volume_polynomial(&m).unwrap();
        let r = m.rank() - 1;
        for k in 0..=r {
            let mut values = Vec::new();
            for i in 0..m.ground_size() {
                let alpha = alpha_vector(&m, i).unwrap();
                let beta = beta_vector(&m, i).unwrap();
                let mut g = vm.clone();
                for _ in 0..r - k {
                    g = g.directional_derivative(alpha.coords()).unwrap();
                }
                for _ in 0..k {
                    g = g.directional_derivative(beta.coords()).unwrap();
                }
                values.push(g.constant_term());
            }
            assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn flat_avoidance_zeroes_chain_coordinates() {
        let m = uniform(3, 4).unwrap();
        let q = QuotientBasis::new(&m);
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let singleton = m.find_flat(0b0001).unwrap();
        let pair = m.find_flat(0b0011).unwrap();
        let chain = Chain::new(&m, &[singleton, pair]).unwrap();
        for _ in 0..20 {
            let u = rand_vector(&m, &mut rng);
            let v = flat_avoiding_representative(&m, &u, &chain).unwrap();
            for &f in chain.interior() {
                assert!(v.coord(coord_index(&m, f).unwrap()).is_zero());
            }
            assert!(q.same_class(&u, &v));
            assert_eq!(v.tag(), Some("flat-avoiding"));
        }
        // Already-avoiding vectors come back unchanged (up to the tag).
        let mut u = rand_vector(&m, &mut rng);
        u.set_coord(coord_index(&m, singleton).unwrap(), Rational::zero());
        u.set_coord(coord_index(&m, pair).unwrap(), Rational::zero());
        let v = flat_avoiding_representative(&m, &u, &chain).unwrap();
        assert_eq!(v.coords(), u.coords());
    }

    #[test]
    fn chain_product_structure() {
        let m = uniform(3, 4).unwrap();
        let vm = volume_polynomial(&m).unwrap();

        // Empty chain: the volume polynomial and the identity.
        let empty = Chain::new(&m, &[]).unwrap();
        let (f, pi) = chain_product(&m, &empty);
        assert_eq!(f, vm);
        assert_eq!(pi, LinearMap::identity(m.num_proper_flats()));

        // Every singleton chain: product equals the derivative, exactly.
        for &flat in &m.proper_flats() {
            let chain = Chain::new(&m, &[flat]).unwrap();
            let ctx = ChainContext::new(&m, chain.clone());
            let f = ctx.product_polynomial(&m);
            let pi = ctx.projection(&m);
            let composed = f.substitute_linear(&pi).unwrap();
            assert_eq!(composed, chain_derivative(&m, &vm, &chain));

            // The product is built from the standalone minor volumes.
            let mut rebuilt = MultiPoly::one(ctx.arity());
            for (b, &(lo, hi)) in ctx.blocks().iter().enumerate() {
                let (minor, _) = interval_minor(&m, lo, hi).unwrap();
                let v_minor = volume_polynomial(&minor).unwrap();
                let var_map: Vec<usize> = (0..ctx.block_vars(b).len())
                    .map(|p| ctx.offset(b) + p)
                    .collect();
                rebuilt = rebuilt.mul(&v_minor.embed(ctx.arity(), &var_map));
            }
            assert_eq!(rebuilt, f);
        }

        // Maximal chain: the constant 1 in zero variables.
        let mut ids = Vec::new();
        let mut cur = m.bottom();
        while cur != m.top() {
            cur = m.covers_of(cur)[0];
            if cur != m.top() {
                ids.push(cur);
            }
        }
        let chain = Chain::new(&m, &ids).unwrap();
        let (f, _) = chain_product(&m, &chain);
        assert_eq!(f, MultiPoly::one(0));
    }

    #[test]
    fn chain_identity_on_two_flat_chain() {
        let m = uniform(4, 5).unwrap();
        let vm = volume_polynomial(&m).unwrap();
        let singleton = m.find_flat(0b00001).unwrap();
        let triple = m.find_flat(0b00111).unwrap();
        let chain = Chain::new(&m, &[singleton, triple]).unwrap();
        let (f, pi) = chain_product(&m, &chain);
        assert_eq!(
            f.substitute_linear(&pi).unwrap(),
            chain_derivative(&m, &vm, &chain)
        );
    }

    #[test]
    fn volume_at_alpha_is_inverse_factorial() {
        // For homogeneous V of degree r with D_alpha^r V = 1, evaluating
        // at alpha gives 1/r!. Here r = 2.
        let m = uniform(3, 4).unwrap();
        let vm = volume_polynomial(&m).unwrap();
        let alpha = alpha_vector(&m, 0).unwrap();
        let val = vm.evaluate(alpha.coords()).unwrap();
        assert_eq!(val, Rational::one() / rat_int(2));
    }
}
