//! Exact symmetric matrices over the rationals and their inertia.
//!
//! The signature (counts of positive, negative, and zero eigenvalues) is
//! computed two independent ways. The primary route forms the exact
//! characteristic polynomial and applies Descartes' rule of signs, which is
//! exact here because symmetric matrices are real-rooted: the number of sign
//! variations equals the number of positive roots with multiplicity. The
//! characteristic polynomial itself is assembled by Chinese remaindering of
//! Hessenberg-reduction computations modulo word-size primes, with a
//! Hadamard-style coefficient bound deciding how many primes are needed.
//! The second route is a symmetric Gaussian congruence (pivoted LDL^T),
//! kept deliberately separate as a cross-check oracle.

use crate::polyalg::LinearMap;
use crate::unipoly::{SturmSequence, UniPoly};
use crate::Rational;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Eigenvalue inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(+{}, -{}, 0:{})",
            self.positive, self.negative, self.zero
        )
    }
}

/// Dense symmetric matrix with exact rational entries. Symmetry is an
/// invariant: mutation goes through symmetric setters.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zero(n: usize) -> Self {
        SymMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rat_int(v)).collect())
                .collect(),
        )
        .expect("integer rows must form a symmetric matrix")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Symmetric assignment of entry `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v.clone();
        self.entries[j * self.n + i] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j).clone() + v;
        self.set(i, j, cur);
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if x.len() != self.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.n {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &x[j];
                    }
                }
                acc
            })
            .collect())
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[Rational]) -> Result<Rational, MatrixError> {
        let ax = self.apply(x)?;
        Ok(ax
            .iter()
            .zip(x.iter())
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t))
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Rank-one downdate `A - v v^T`.
    pub fn sub_outer(&self, v: &[Rational]) -> Result<SymMatrix, MatrixError> {
        if v.len() != self.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut out = self.clone();
        for i in 0..self.n {
            for j in i..self.n {
                let cur = out.get(i, j).clone() - &v[i] * &v[j];
                out.set(i, j, cur);
            }
        }
        Ok(out)
    }

    /// Congruence transform `P^T A P`, where `P` maps new coordinates to
    /// old (`P` has `dim` rows and any number of columns).
    pub fn congruence(&self, p: &LinearMap) -> Result<SymMatrix, MatrixError> {
        if p.rows() != self.n {
            return Err(MatrixError::DimensionMismatch {
                expected: self.n,
                got: p.rows(),
            });
        }
        let m = p.cols();
        // B = A P, then P^T B.
        let mut b = vec![Rational::zero(); self.n * m];
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let pv = p.get(k, j);
                    if !pv.is_zero() {
                        b[i * m + j] += a * pv;
                    }
                }
            }
        }
        let mut out = SymMatrix::zero(m);
        for i in 0..m {
            for j in i..m {
                let mut acc = Rational::zero();
                for k in 0..self.n {
                    let pv = p.get(k, i);
                    if !pv.is_zero() {
                        acc += pv * &b[k * m + j];
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Off-diagonal entries all nonnegative.
    pub fn is_weakly_nonnegative(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.get(i, j).is_negative() {
                    return false;
                }
            }
        }
        true
    }

    /// Support graph of the off-diagonal entries; the matrix is irreducible
    /// exactly when this graph is connected.
    pub fn off_diagonal_graph(&self) -> crate::graphs::Graph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.get(i, j).is_zero() {
                    edges.push((i, j));
                }
            }
        }
        crate::graphs::Graph::new(self.n, edges)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix {}x{}", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Inertia via Descartes' rule on the exact characteristic polynomial.
/// Zero eigenvalues are the trailing zero coefficients; positive ones are
/// the sign variations, exact because the spectrum is real.
pub fn signature(a: &SymMatrix) -> Signature {
    let p = charpoly_exact(a);
    signature_from_charpoly(&p, a.dim())
}

fn signature_from_charpoly(p: &UniPoly, n: usize) -> Signature {
    let zero = p.order_at_zero();
    let positive = p.descartes_variations();
    Signature {
        positive,
        negative: n - positive - zero,
        zero,
    }
}

/// Inertia via pivoted symmetric Gaussian congruence. Independent of the
/// characteristic-polynomial route; used as a cross-check.
pub fn signature_ldlt(a: &SymMatrix) -> Signature {
    let n = a.dim();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut i = 0;
    while i < n {
        if m[i][i].is_zero() {
            if let Some(k) = (i + 1..n).find(|&k| !m[k][k].is_zero()) {
                swap_sym(&mut m, i, k);
            } else if let Some((r, c)) = find_offdiag(&m, i) {
                // Zero diagonal block: fold column c into row/column r to
                // expose 2*m[r][c] on the diagonal, then move it up front.
                for k in 0..n {
                    let v = m[c][k].clone();
                    m[r][k] += v;
                }
                for k in 0..n {
                    let v = m[k][c].clone();
                    m[k][r] += v;
                }
                if r != i {
                    swap_sym(&mut m, i, r);
                }
            } else {
                sig.zero += n - i;
                break;
            }
        }
        let d = m[i][i].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for r in i + 1..n {
            if m[r][i].is_zero() {
                continue;
            }
            let t = &m[r][i] / &d;
            for c in i + 1..n {
                let delta = &t * &m[i][c];
                m[r][c] -= delta;
            }
            m[r][i] = Rational::zero();
        }
        for c in i + 1..n {
            m[i][c] = Rational::zero();
        }
        i += 1;
    }
    sig
}

fn swap_sym(m: &mut [Vec<Rational>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn find_offdiag(m: &[Vec<Rational>], from: usize) -> Option<(usize, usize)> {
    let n = m.len();
    for r in from..n {
        for c in r + 1..n {
            if !m[r][c].is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

/// Exact characteristic polynomial `det(xI - A)` of a rational symmetric
/// matrix, monic of degree `dim`.
pub fn charpoly_exact(a: &SymMatrix) -> UniPoly {
    let n = a.dim();
    if n == 0 {
        return UniPoly::one();
    }
    // Clear denominators: B = d A is integral and char_A(x) =
    // d^{-n} char_B(d x).
    let mut d = BigInt::one();
    for i in 0..n {
        for j in i..n {
            d = d.lcm(a.get(i, j).denom());
        }
    }
    let b: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s = a.get(i, j) * Rational::from_integer(d.clone());
                    debug_assert!(s.denom().is_one());
                    s.numer().clone()
                })
                .collect()
        })
        .collect();
    let cb = charpoly_int(&b);
    // Coefficient of x^k becomes c_k d^k / d^n.
    let dn = Rational::from_integer(num::pow::pow(d.clone(), n));
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut dk = BigInt::one();
    for k in 0..=n {
        let c = Rational::from_integer(&cb[k] * &dk) / dn.clone();
        coeffs.push(c);
        dk *= &d;
    }
    UniPoly::from_coeffs(coeffs)
}

/// Characteristic polynomial of an integer matrix by Chinese remaindering
/// of mod-p Hessenberg computations. Coefficients returned ascending,
/// length `n + 1`, leading coefficient one.
fn charpoly_int(b: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = b.len();
    // Hadamard-style bound: |c_{n-j}| <= C(n,j) N^j with N the largest row
    // norm, so bits <= n + n*bits(N) plus margin.
    let mut norm_sq_max = BigInt::one();
    for row in b {
        let s: BigInt = row.iter().map(|v| v * v).sum();
        if s > norm_sq_max {
            norm_sq_max = s;
        }
    }
    let bits_needed = (n as u64) + (n as u64) * (norm_sq_max.bits() / 2 + 1) + 8;

    let mut residues: Vec<Vec<u64>> = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    let mut modulus = BigInt::one();
    let mut candidate: u64 = (1 << 62) - 1;
    while modulus.bits() <= bits_needed + 1 {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        let reduced: Vec<Vec<u64>> = b
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                    .collect()
            })
            .collect();
        residues.push(charpoly_mod_p(reduced, p));
        primes.push(p);
        modulus *= BigInt::from(p);
    }

    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut x = BigInt::zero();
        let mut m = BigInt::one();
        for (idx, &p) in primes.iter().enumerate() {
            let pb = BigInt::from(p);
            let r = residues[idx][k];
            let x_mod = x.mod_floor(&pb).to_u64().unwrap();
            let m_mod = m.mod_floor(&pb).to_u64().unwrap();
            let diff = sub_mod(r, x_mod, p);
            let t = mul_mod(diff, mod_inverse(m_mod, p), p);
            x += &m * BigInt::from(t);
            m *= pb;
        }
        // Symmetric lift.
        if &x * 2u32 > m {
            x -= &m;
        }
        out.push(x);
    }
    debug_assert!(out[n].is_one());
    out
}

/// Characteristic polynomial mod a prime: reduce to upper Hessenberg form
/// by a pivoted similarity, then expand by the last-column recurrence on
/// leading principal minors.
fn charpoly_mod_p(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let pivot = (c + 1..n).find(|&r| h[r][c] != 0);
        let Some(r) = pivot else { continue };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let inv = mod_inverse(h[c + 1][c], p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let t = mul_mod(h[i][c], inv, p);
            for k in 0..n {
                let delta = mul_mod(t, h[c + 1][k], p);
                h[i][k] = sub_mod(h[i][k], delta, p);
            }
            for k in 0..n {
                let delta = mul_mod(t, h[k][i], p);
                h[k][c + 1] = add_mod(h[k][c + 1], delta, p);
            }
        }
    }

    // p_k = (x - h[k-1][k-1]) p_{k-1}
    //       - sum_i h[i][k-1] (prod of subdiagonals below i) p_i.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut cur = vec![0u64; k + 1];
        let diag = h[k - 1][k - 1];
        for (e, &coef) in prev.iter().enumerate() {
            cur[e + 1] = add_mod(cur[e + 1], coef, p);
            let delta = mul_mod(diag, coef, p);
            cur[e] = sub_mod(cur[e], delta, p);
        }
        if k >= 2 {
            let mut prod = 1u64;
            for i in (0..=k - 2).rev() {
                prod = mul_mod(prod, h[i + 1][i], p);
                if prod == 0 {
                    break;
                }
                let coef = mul_mod(h[i][k - 1], prod, p);
                if coef == 0 {
                    continue;
                }
                for (e, &pc) in polys[i].iter().enumerate() {
                    let delta = mul_mod(coef, pc, p);
                    cur[e] = sub_mod(cur[e], delta, p);
                }
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128 % p as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reference characteristic polynomial in pure rational arithmetic
/// (Faddeev-LeVerrier). Quartic cost, meant for small matrices and as an
/// independent oracle for the remaindered route.
pub fn charpoly_faddeev(a: &SymMatrix) -> UniPoly {
    let n = a.dim();
    if n == 0 {
        return UniPoly::one();
    }
    let get = |m: &Vec<Rational>, i: usize, j: usize| m[i * n + j].clone();
    let a_flat: Vec<Rational> = (0..n * n).map(|k| a.get(k / n, k % n).clone()).collect();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m: Vec<Rational> = vec![Rational::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for t in 0..n {
                    acc += get(&a_flat, i, t) * get(&m, t, j);
                }
                next[i * n + j] = acc;
            }
        }
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = Rational::zero();
        for i in 0..n {
            for t in 0..n {
                tr += get(&a_flat, i, t) * get(&m, t, i);
            }
        }
        coeffs[n - k] = -tr / crate::rat_int(k as i64);
    }
    UniPoly::from_coeffs(coeffs)
}

/// Shrink-wrap the largest real root of `p` inside a half-open interval
/// `(lo, hi]` of width at most `width` containing no other root.
pub fn largest_real_root_interval(p: &UniPoly, width: &Rational) -> Option<(Rational, Rational)> {
    let s = p.squarefree_part();
    if s.degree().unwrap_or(0) == 0 {
        return None;
    }
    let seq = SturmSequence::new(&s);
    if seq.count_all() == 0 {
        return None;
    }
    let bound = s.root_bound();
    let mut lo = -&bound;
    let mut hi = bound.clone();
    let two = crate::rat_int(2);
    loop {
        let isolated = seq.count_in(&lo, &hi) == 1;
        if isolated && (&hi - &lo) <= *width {
            return Some((lo, hi));
        }
        let mid = (&lo + &hi) / &two;
        if seq.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Whether the largest real root of `p` is simple, decided exactly by
/// counting roots of `gcd(p, p')` inside an isolating interval. `None`
/// when `p` has no real root.
pub fn largest_root_is_simple(p: &UniPoly) -> Option<bool> {
    let s = p.squarefree_part();
    let seq = SturmSequence::new(&s);
    if s.degree().unwrap_or(0) == 0 || seq.count_all() == 0 {
        return None;
    }
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return Some(true);
    }
    let bound = s.root_bound();
    let mut lo = -&bound;
    let mut hi = bound.clone();
    let two = crate::rat_int(2);
    loop {
        if seq.count_in(&lo, &hi) == 1 {
            return Some(g.count_real_roots_in(&lo, &hi) == 0);
        }
        let mid = (&lo + &hi) / &two;
        if seq.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_sym(rng: &mut ChaCha12Rng, n: usize) -> SymMatrix {
        let mut m = SymMatrix::zero(n);
        for i in 0..n {
            for j in i..n {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=4);
                m.set(i, j, rat_int(num) / rat_int(den));
            }
        }
        m
    }

    #[test]
    fn symmetry_is_checked() {
        let bad = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3), rat_int(4)]];
        assert!(matches!(
            SymMatrix::from_rows(bad),
            Err(MatrixError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn known_signatures() {
        let d = SymMatrix::from_int_rows(&[&[2, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        let expect = Signature {
            positive: 1,
            negative: 1,
            zero: 1,
        };
        assert_eq!(signature(&d), expect);
        assert_eq!(signature_ldlt(&d), expect);

        // Zero diagonal forces the folding path in the congruence route.
        let h = SymMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let expect = Signature {
            positive: 1,
            negative: 1,
            zero: 0,
        };
        assert_eq!(signature(&h), expect);
        assert_eq!(signature_ldlt(&h), expect);

        let z = SymMatrix::zero(3);
        assert_eq!(signature(&z).zero, 3);
        assert_eq!(signature_ldlt(&z).zero, 3);
    }

    #[test]
    fn charpoly_known_2x2() {
        let a = SymMatrix::from_int_rows(&[&[2, 1], &[1, 2]]);
        // (x-1)(x-3) = x^2 - 4x + 3
        assert_eq!(charpoly_exact(&a), UniPoly::from_int_coeffs(&[3, -4, 1]));
        assert_eq!(charpoly_faddeev(&a), UniPoly::from_int_coeffs(&[3, -4, 1]));
    }

    #[test]
    fn remaindered_charpoly_matches_faddeev() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in 0..=6 {
            for _ in 0..8 {
                let a = random_sym(&mut rng, n);
                assert_eq!(charpoly_exact(&a), charpoly_faddeev(&a), "dim {n}");
            }
        }
    }

    #[test]
    fn two_signature_routes_agree() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let a = random_sym(&mut rng, n);
            assert_eq!(signature(&a), signature_ldlt(&a), "matrix {a:?}");
        }
    }

    #[test]
    fn congruence_preserves_signature() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let a = random_sym(&mut rng, n);
            // Random unipotent upper-triangular times a diagonal is
            // invertible; its congruence keeps the inertia.
            let mut p = LinearMap::identity(n);
            for i in 0..n {
                for j in i + 1..n {
                    p.set(i, j, rat_int(rng.gen_range(-3i64..=3)));
                }
            }
            let b = a.congruence(&p).unwrap();
            assert_eq!(signature(&a), signature(&b));
        }
    }

    #[test]
    fn miller_rabin_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne prime
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(4611686018427387847)); // just below 2^62
    }

    #[test]
    fn largest_root_isolation() {
        let a = SymMatrix::from_int_rows(&[&[2, 1], &[1, 2]]);
        let p = charpoly_exact(&a);
        let w = rat_int(1) / rat_int(1_000_000);
        let (lo, hi) = largest_real_root_interval(&p, &w).unwrap();
        assert!(lo < rat_int(3) && rat_int(3) <= hi);
        assert!(&hi - &lo <= w);
        assert_eq!(largest_root_is_simple(&p), Some(true));

        // Repeated top eigenvalue: identity.
        let id = SymMatrix::identity(3);
        assert_eq!(largest_root_is_simple(&charpoly_exact(&id)), Some(false));
        // No real roots.
        assert_eq!(
            largest_root_is_simple(&UniPoly::from_int_coeffs(&[1, 0, 1])),
            None
        );
    }

    #[test]
    fn quadratic_form_and_downdate() {
        let a = SymMatrix::from_int_rows(&[&[1, 2], &[2, 5]]);
        let v = [rat_int(1), rat_int(2)];
        assert_eq!(a.quadratic_form(&v).unwrap(), rat_int(29));
        let b = a.sub_outer(&v).unwrap();
        assert_eq!(*b.get(0, 0), rat_int(0));
        assert_eq!(*b.get(0, 1), rat_int(0));
        assert_eq!(*b.get(1, 1), rat_int(1));
    }

    #[test]
    fn off_diagonal_graph_reads_support() {
        let a = SymMatrix::from_int_rows(&[&[5, 1, 0], &[1, 0, 0], &[0, 0, 7]]);
        let g = a.off_diagonal_graph();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.component_count(), 2);
        assert!(a.is_weakly_nonnegative());
        let b = SymMatrix::from_int_rows(&[&[5, -1], &[-1, 0]]);
        assert!(!b.is_weakly_nonnegative());
    }
}
