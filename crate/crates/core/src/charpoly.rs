//! Characteristic polynomials of matroids, computed two independent ways.
//!
//! The lattice of flats carries an incidence algebra of rational coefficients
//! on intervals. Inverting the zeta element gives the Mobius function, and
//! the characteristic polynomial falls out as a Mobius-weighted sum of rank
//! monomials. A second route never touches Mobius values: the downward
//! recursion that peels one contraction off at a time. Both are computed on
//! every call and compared coefficient by coefficient; a disagreement is a
//! detectable internal bug, not a recoverable condition.
//!
//! The module also hosts two consumers of the polynomial that double as
//! oracles for it: the chromatic relation for graphic matroids and
//! brute-force point counting for hyperplane arrangements over small finite
//! fields, plus the shape predicates (log-concavity and friends) applied to
//! coefficient sequences.

use crate::graphs::{Graph, GraphError};
use crate::matroid::{self, FlatId, Matroid, MatroidError};
use crate::unipoly::UniPoly;
use crate::{BigInt, Rational};
use num::{One, Signed, Zero};
use std::collections::HashMap;

/// Upper bound on `p^{b*dims}` enumerated by `finite_field_count`.
pub const DEFAULT_COUNT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharPolyError {
    #[error("characteristic polynomial routes disagree: {0}")]
    InternalMismatch(String),
    #[error("incidence element not invertible: zero diagonal coefficient at flat {flat}")]
    NotInvertible { flat: FlatId },
    #[error("({lo}, {hi}) is not an interval of the lattice")]
    InvalidInterval { lo: FlatId, hi: FlatId },
    #[error("characteristic polynomial is not divisible by q - 1 (rank-0 or loopy input)")]
    NotDivisible,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Element of the incidence algebra of a lattice with `num_flats` flats:
/// a sparse assignment of rationals to intervals `[F, G]`. Zero
/// coefficients are never stored, so map equality is element equality.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceElement {
    num_flats: usize,
    coefficients: HashMap<(FlatId, FlatId), Rational>,
}

impl IncidenceElement {
    pub fn zero(m: &Matroid) -> Self {
        IncidenceElement {
            num_flats: m.num_flats(),
            coefficients: HashMap::new(),
        }
    }

    /// The multiplicative identity: 1 on every `[F, F]`.
    pub fn delta(m: &Matroid) -> Self {
        let mut e = IncidenceElement::zero(m);
        for f in 0..m.num_flats() {
            e.coefficients.insert((f, f), Rational::one());
        }
        e
    }

    /// 1 on every interval `[F, G]` with `F` below `G`.
    pub fn zeta(m: &Matroid) -> Self {
        let mut e = IncidenceElement::zero(m);
        for f in 0..m.num_flats() {
            for g in f..m.num_flats() {
                if m.leq(f, g) {
                    e.coefficients.insert((f, g), Rational::one());
                }
            }
        }
        e
    }

    pub fn num_flats(&self) -> usize {
        self.num_flats
    }

    pub fn coefficient(&self, f: FlatId, g: FlatId) -> Rational {
        self.coefficients
            .get(&(f, g))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(
        &mut self,
        m: &Matroid,
        f: FlatId,
        g: FlatId,
        v: Rational,
    ) -> Result<(), CharPolyError> {
        if f >= m.num_flats() || g >= m.num_flats() || !m.leq(f, g) {
            return Err(CharPolyError::InvalidInterval { lo: f, hi: g });
        }
        if v.is_zero() {
            self.coefficients.remove(&(f, g));
        } else {
            self.coefficients.insert((f, g), v);
        }
        Ok(())
    }

    pub fn add(&self, other: &IncidenceElement) -> IncidenceElement {
        assert_eq!(self.num_flats, other.num_flats);
        let mut out = self.clone();
        for (k, v) in &other.coefficients {
            let cur = out.coefficients.entry(*k).or_insert_with(Rational::zero);
            *cur += v;
            if cur.is_zero() {
                out.coefficients.remove(k);
            }
        }
        out
    }

    /// Nonzero entries in a deterministic order.
    pub fn support(&self) -> Vec<((FlatId, FlatId), Rational)> {
        let mut v: Vec<_> = self
            .coefficients
            .iter()
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }
}

/// Convolution product: `[u,v] * [x,y] = [u,y]` when `v = x`, else zero.
pub fn incidence_multiply(a: &IncidenceElement, b: &IncidenceElement) -> IncidenceElement {
    assert_eq!(
        a.num_flats, b.num_flats,
        "incidence elements live on different lattices"
    );
    let mut rows: HashMap<FlatId, Vec<(FlatId, &Rational)>> = HashMap::new();
    for ((h, g), v) in &b.coefficients {
        rows.entry(*h).or_default().push((*g, v));
    }
    let mut out = IncidenceElement {
        num_flats: a.num_flats,
        coefficients: HashMap::new(),
    };
    for ((f, h), va) in &a.coefficients {
        let Some(row) = rows.get(h) else { continue };
        for (g, vb) in row {
            let cur = out
                .coefficients
                .entry((*f, *g))
                .or_insert_with(Rational::zero);
            *cur += va * *vb;
        }
    }
    out.coefficients.retain(|_, v| !v.is_zero());
    out
}

/// Two-sided inverse, when every diagonal coefficient is nonzero. Flat ids
/// are a linear extension of the lattice order, so back-substitution runs
/// column by column over ids.
pub fn incidence_invert(a: &IncidenceElement) -> Result<IncidenceElement, CharPolyError> {
    let n = a.num_flats;
    let mut diag = Vec::with_capacity(n);
    for f in 0..n {
        let d = a.coefficient(f, f);
        if d.is_zero() {
            return Err(CharPolyError::NotInvertible { flat: f });
        }
        diag.push(d);
    }
    let mut strict_rows: Vec<Vec<(FlatId, &Rational)>> = vec![Vec::new(); n];
    for ((f, g), v) in &a.coefficients {
        if f < g {
            strict_rows[*f].push((*g, v));
        }
    }
    let mut out = IncidenceElement {
        num_flats: n,
        coefficients: HashMap::new(),
    };
    for g in 0..n {
        let mut col: Vec<Rational> = vec![Rational::zero(); g + 1];
        col[g] = Rational::one() / &diag[g];
        out.coefficients.insert((g, g), col[g].clone());
        for f in (0..g).rev() {
            let mut s = Rational::zero();
            for (h, v) in &strict_rows[f] {
                if *h <= g && !col[*h].is_zero() {
                    s += *v * &col[*h];
                }
            }
            if !s.is_zero() {
                let val = -s / &diag[f];
                col[f] = val.clone();
                out.coefficients.insert((f, g), val);
            }
        }
    }
    Ok(out)
}

/// Mobius function of the lattice: the inverse of zeta, as integers on the
/// intervals where it is nonzero. The value at `(F, G)` is the Mobius
/// invariant of the interval minor `[F, G]`.
pub fn mobius_invariants(m: &Matroid) -> HashMap<(FlatId, FlatId), BigInt> {
    let mu = incidence_invert(&IncidenceElement::zeta(m))
        .expect("zeta has unit diagonal, always invertible");
    mu.coefficients
        .into_iter()
        .map(|(k, v)| {
            assert!(v.is_integer(), "Mobius values must be integers");
            (k, v.numer().clone())
        })
        .collect()
}

/// Characteristic polynomial together with the signed magnitudes of its
/// coefficients: `poly = sum_i (-1)^i mu[i] q^{rank - i}` with `mu[i] >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub poly: UniPoly,
    pub mu: Vec<BigInt>,
}

/// Quotient by `q - 1`: `poly = sum_i (-1)^i mu[i] q^{rank - 1 - i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCharPoly {
    pub poly: UniPoly,
    pub mu: Vec<BigInt>,
}

/// Characteristic polynomial of a matroid, zero when there are loops.
///
/// Always computes both the peeling recursion over contractions and the
/// Mobius-weighted rank sum and insists they agree.
pub fn characteristic_polynomial(m: &Matroid) -> Result<CharPoly, CharPolyError> {
    let n = m.num_flats();
    let rank = m.rank();

    // Route one: chi[F] is the polynomial of the contraction to [F, top],
    // determined downward by sum_{G >= F} chi[G] = q^{rank - rank(F)}.
    let mut chi: Vec<UniPoly> = vec![UniPoly::zero(); n];
    for f in (0..n).rev() {
        let mut acc = UniPoly::monomial(Rational::one(), rank - m.rank_of_flat(f));
        for g in f + 1..n {
            if m.leq(f, g) {
                acc = acc.sub(&chi[g]);
            }
        }
        chi[f] = acc;
    }
    let via_recursion = chi.swap_remove(m.bottom());

    // Route two: sum over flats of mu(bottom, F) q^{rank - rank(F)}.
    let mobius = mobius_invariants(m);
    let mut via_mobius = UniPoly::zero();
    let bottom = m.bottom();
    for f in 0..n {
        if let Some(v) = mobius.get(&(bottom, f)) {
            let mono =
                UniPoly::monomial(Rational::from_integer(v.clone()), rank - m.rank_of_flat(f));
            via_mobius = via_mobius.add(&mono);
        }
    }

    if via_recursion != via_mobius {
        return Err(CharPolyError::InternalMismatch(format!(
            "recursion gave {}, Mobius sum gave {}",
            via_recursion.display("q"),
            via_mobius.display("q")
        )));
    }

    let poly = if m.is_loopless() {
        via_recursion
    } else {
        UniPoly::zero()
    };

    let mut mu = Vec::with_capacity(rank + 1);
    for i in 0..=rank {
        let c = poly.coeff(rank - i);
        let signed = if i % 2 == 0 { c } else { -c };
        if !signed.is_integer() || signed.is_negative() {
            return Err(CharPolyError::InternalMismatch(format!(
                "coefficient of q^{} has the wrong sign or is fractional",
                rank - i
            )));
        }
        mu.push(signed.numer().clone());
    }
    debug_assert!(rank == 0 || poly.eval(&Rational::one()).is_zero());

    Ok(CharPoly { poly, mu })
}

/// Exact quotient of the characteristic polynomial by `q - 1`. Defined for
/// loopless matroids of rank at least one.
pub fn reduced_characteristic_polynomial(m: &Matroid) -> Result<ReducedCharPoly, CharPolyError> {
    if m.rank() == 0 || !m.is_loopless() {
        return Err(CharPolyError::NotDivisible);
    }
    let cp = characteristic_polynomial(m)?;
    let (quot, rem) = cp.poly.divrem(&UniPoly::from_int_coeffs(&[-1, 1]));
    if !rem.is_zero() {
        return Err(CharPolyError::NotDivisible);
    }
    let top = m.rank() - 1;
    let mut mu = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let c = quot.coeff(top - i);
        let signed = if i % 2 == 0 { c } else { -c };
        if !signed.is_integer() || signed.is_negative() {
            return Err(CharPolyError::InternalMismatch(format!(
                "reduced coefficient of q^{} has the wrong sign or is fractional",
                top - i
            )));
        }
        mu.push(signed.numer().clone());
    }
    Ok(ReducedCharPoly { poly: quot, mu })
}

/// Whether the chromatic polynomial of `g` equals
/// `q^{components} * characteristic_polynomial(M(g))`, exactly.
pub fn chromatic_relation_check(g: &Graph) -> Result<bool, CharPolyError> {
    let chromatic = g.chromatic_polynomial()?;
    let m = crate::graphs::graphic_matroid(g)?;
    let chi = characteristic_polynomial(&m)?;
    let shift = UniPoly::monomial(Rational::one(), g.component_count());
    Ok(chromatic == shift.mul(&chi.poly))
}

/// A list of nonzero linear forms with coefficients mod a prime `p`, read
/// as a central hyperplane arrangement in `F_p^{dims}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    p: u64,
    forms: Vec<Vec<u64>>,
}

impl Arrangement {
    pub fn new(p: u64, forms: Vec<Vec<u64>>) -> Result<Self, CharPolyError> {
        if !crate::symmat::is_prime_u64(p) {
            return Err(CharPolyError::NotPrime(p));
        }
        if forms.is_empty() {
            return Err(CharPolyError::InvalidParameters(
                "arrangement needs at least one form".into(),
            ));
        }
        let dims = forms[0].len();
        if dims == 0 {
            return Err(CharPolyError::InvalidParameters(
                "forms must have at least one coefficient".into(),
            ));
        }
        if forms.len() > matroid::MAX_GROUND {
            return Err(CharPolyError::InvalidParameters(format!(
                "at most {} forms supported",
                matroid::MAX_GROUND
            )));
        }
        for f in &forms {
            if f.len() != dims {
                return Err(CharPolyError::InvalidParameters(
                    "forms have inconsistent lengths".into(),
                ));
            }
            if f.iter().any(|&c| c >= p) {
                return Err(CharPolyError::InvalidParameters(
                    "coefficients must be reduced mod p".into(),
                ));
            }
            if f.iter().all(|&c| c == 0) {
                return Err(CharPolyError::InvalidParameters(
                    "forms must be nonzero".into(),
                ));
            }
        }
        Ok(Arrangement { p, forms })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Ambient dimension (number of coefficients per form).
    pub fn dims(&self) -> usize {
        self.forms[0].len()
    }

    pub fn forms(&self) -> &[Vec<u64>] {
        &self.forms
    }

    /// Rank over `F_p` of a subset of the forms.
    fn rank_of(&self, subset: &[usize]) -> usize {
        let p = self.p;
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for &i in subset {
            let mut v = self.forms[i].clone();
            for b in &basis {
                let lead = b.iter().position(|&c| c != 0).unwrap();
                if v[lead] != 0 {
                    // v -= (v[lead]/b[lead]) * b
                    let factor = mul_p(v[lead], inv_p(b[lead], p), p);
                    for (vc, bc) in v.iter_mut().zip(b.iter()) {
                        *vc = sub_p(*vc, mul_p(factor, *bc, p), p);
                    }
                }
            }
            if v.iter().any(|&c| c != 0) {
                basis.push(v);
                basis.sort_by_key(|b| b.iter().position(|&c| c != 0).unwrap());
            }
        }
        basis.len()
    }

    /// Matroid of the arrangement: flats are the subsets closed under
    /// rank, i.e. adjoining any outside form raises the span.
    pub fn matroid(&self) -> Result<Matroid, CharPolyError> {
        let n = self.forms.len();
        let closure = |set: u64| -> u64 {
            let base: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
            let r = self.rank_of(&base);
            let mut out = set;
            for j in 0..n {
                if set >> j & 1 == 0 {
                    let mut with_j = base.clone();
                    with_j.push(j);
                    if self.rank_of(&with_j) == r {
                        out |= 1 << j;
                    }
                }
            }
            out
        };
        let mut found = std::collections::BTreeSet::new();
        let mut queue = vec![closure(0)];
        found.insert(queue[0]);
        while let Some(f) = queue.pop() {
            for j in 0..n {
                if f >> j & 1 == 0 {
                    let g = closure(f | 1 << j);
                    if found.insert(g) {
                        queue.push(g);
                    }
                }
            }
        }
        let flats: Vec<u64> = found.into_iter().collect();
        Ok(matroid::validate_flats(n, &flats)?)
    }
}

/// Builds the arrangement matroid and brute-force counts the points of
/// `F_{p^b}^{dims}` lying off every hyperplane. The count satisfies
/// `count = p^{b*kappa} * chi(p^b)` with `kappa = dims - rank`; callers
/// assert that identity, this function just enumerates.
///
/// Forms have coefficients in the prime field, so a point over `F_{p^b}`
/// is handled as `b` independent `F_p` components per coordinate; no
/// extension-field multiplication is involved.
pub fn finite_field_count(arr: &Arrangement, b: u32) -> Result<(Matroid, BigInt), CharPolyError> {
    finite_field_count_with_budget(arr, b, DEFAULT_COUNT_BUDGET)
}

pub fn finite_field_count_with_budget(
    arr: &Arrangement,
    b: u32,
    budget: u64,
) -> Result<(Matroid, BigInt), CharPolyError> {
    if b == 0 {
        return Err(CharPolyError::InvalidParameters(
            "extension degree must be positive".into(),
        ));
    }
    let m = arr.matroid()?;
    let p = arr.p;
    let digits = arr
        .dims()
        .checked_mul(b as usize)
        .ok_or_else(|| CharPolyError::BudgetExceeded("field size overflow".into()))?;
    let mut total: u64 = 1;
    for _ in 0..digits {
        total = total
            .checked_mul(p)
            .filter(|&t| t <= budget)
            .ok_or_else(|| {
                CharPolyError::BudgetExceeded(format!("p^(b*dims) exceeds budget {budget}"))
            })?;
    }

    // Odometer over b*dims base-p digits: digit t*dims + k is component t
    // of coordinate k.
    let dims = arr.dims();
    let mut x = vec![0u64; digits];
    let mut count: u64 = 0;
    loop {
        let off_all = arr.forms.iter().all(|form| {
            (0..b as usize).any(|t| {
                let mut acc: u64 = 0;
                for k in 0..dims {
                    acc = (acc + mul_p(form[k], x[t * dims + k], p)) % p;
                }
                acc != 0
            })
        });
        if off_all {
            count += 1;
        }
        let mut carry = true;
        for d in x.iter_mut() {
            *d += 1;
            if *d == p {
                *d = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            break;
        }
    }
    Ok((m, BigInt::from(count)))
}

fn mul_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_p(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn inv_p(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_p(acc, base, p);
        }
        base = mul_p(base, base, p);
        e >>= 1;
    }
    acc
}

/// Parses the arrangement format: a header `p dims rows` followed by
/// `rows` lines of `dims` coefficients, each already reduced mod `p`.
pub fn parse_ffmatrix(text: &str) -> Result<Arrangement, CharPolyError> {
    let bad = |msg: &str| CharPolyError::InvalidParameters(msg.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let head: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("header must be three integers")))
        .collect::<Result<_, _>>()?;
    let [p, dims, rows] = head[..] else {
        return Err(bad("header must be `p dims rows`"));
    };
    let mut forms = Vec::with_capacity(rows as usize);
    for _ in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| bad("fewer rows than declared"))?;
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("coefficients must be integers")))
            .collect::<Result<_, _>>()?;
        if row.len() != dims as usize {
            return Err(bad("row length does not match header"));
        }
        forms.push(row);
    }
    if lines.next().is_some() {
        return Err(bad("more rows than declared"));
    }
    Arrangement::new(p, forms)
}

pub fn write_ffmatrix(arr: &Arrangement) -> String {
    let mut out = format!("{} {} {}\n", arr.p, arr.dims(), arr.forms.len());
    for form in &arr.forms {
        let row: Vec<String> = form.iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Shape predicates of a coefficient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceChecks {
    pub log_concave: bool,
    pub ultra_log_concave: bool,
    pub unimodal: bool,
    pub real_rooted: bool,
}

/// Evaluates the four predicates exactly. Log-concavity is the plain
/// inequality `a[j-1] a[j+1] <= a[j]^2`; the ultra variant first divides by
/// binomial coefficients; real-rootedness reads the sequence as polynomial
/// coefficients in ascending order.
pub fn sequence_checks(a: &[Rational]) -> SequenceChecks {
    SequenceChecks {
        log_concave: is_log_concave(a),
        ultra_log_concave: is_ultra_log_concave(a),
        unimodal: is_unimodal(a),
        real_rooted: UniPoly::from_coeffs(a.to_vec()).real_rooted(),
    }
}

fn is_log_concave(a: &[Rational]) -> bool {
    (1..a.len().saturating_sub(1)).all(|j| &a[j] * &a[j] >= &a[j - 1] * &a[j + 1])
}

fn is_ultra_log_concave(a: &[Rational]) -> bool {
    if a.is_empty() {
        return true;
    }
    let n = a.len() - 1;
    let scaled: Vec<Rational> = a
        .iter()
        .enumerate()
        .map(|(j, v)| v / Rational::from_integer(binomial(n, j)))
        .collect();
    is_log_concave(&scaled)
}

fn is_unimodal(a: &[Rational]) -> bool {
    let mut descending = false;
    for j in 1..a.len() {
        if a[j] > a[j - 1] {
            if descending {
                return false;
            }
        } else if a[j] < a[j - 1] {
            descending = true;
        }
    }
    true
}

fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
