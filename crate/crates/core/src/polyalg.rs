//! Sparse multivariate polynomials over exact rationals, and the dense
//! linear maps used to pull them back along coordinate projections.
//!
//! A polynomial knows its arity; exponent vectors are dense `u8` slices of
//! that length. Every operation is exact. Floating point never enters this
//! module; numeric cross-checks live in tests.

use crate::symmat::SymMatrix;
use crate::Rational;
use num::{BigInt, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

type Mono = Box<[u8]>;

/// Multivariate polynomial with rational coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    arity: usize,
    terms: HashMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: HashMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0u8; arity].into_boxed_slice(), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Rational::one())
    }

    /// The coordinate polynomial `x_v`.
    pub fn var(arity: usize, v: usize) -> Self {
        assert!(v < arity, "variable out of range");
        let mut exps = vec![0u8; arity];
        exps[v] = 1;
        let mut p = MultiPoly::zero(arity);
        p.terms.insert(exps.into_boxed_slice(), Rational::one());
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u8]) -> Rational {
        assert_eq!(exps.len(), self.arity);
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0u8; self.arity])
    }

    fn insert(&mut self, mono: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity, "arity mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity, "arity mismatch in mul");
        let mut out = MultiPoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Mono = ma
                    .iter()
                    .zip(mb.iter())
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.insert(mono, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> MultiPoly {
        let mut out = MultiPoly::one(self.arity);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiply by the coordinate `x_v` (exponent shift, no term growth).
    pub fn mul_by_var(&self, v: usize) -> MultiPoly {
        assert!(v < self.arity);
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut mono = m.clone();
                    mono[v] = mono[v].checked_add(1).expect("exponent overflow");
                    (mono, c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative with respect to `x_v`.
    pub fn differentiate(&self, v: usize) -> MultiPoly {
        assert!(v < self.arity, "variable out of range");
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m[v];
            if e > 0 {
                let mut mono = m.clone();
                mono[v] = e - 1;
                out.insert(mono, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Derivative along a direction vector: `sum_v d_v * d/dx_v`.
    pub fn directional_derivative(&self, dir: &[Rational]) -> Result<MultiPoly, PolyError> {
        if dir.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: dir.len(),
            });
        }
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            for (v, &e) in m.iter().enumerate() {
                if e > 0 && !dir[v].is_zero() {
                    let mut mono = m.clone();
                    mono[v] = e - 1;
                    out.insert(mono, c * &dir[v] * Rational::from_integer(BigInt::from(e)));
                }
            }
        }
        Ok(out)
    }

    /// Pull back along a linear map: returns `f(A x)`, a polynomial in the
    /// map's input variables. Powers of the rows are cached across terms.
    pub fn substitute_linear(&self, map: &LinearMap) -> Result<MultiPoly, PolyError> {
        if map.rows() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: map.rows(),
            });
        }
        let out_arity = map.cols();
        let mut row_polys: Vec<Option<MultiPoly>> = vec![None; self.arity];
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.arity];
        let mut out = MultiPoly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(out_arity, c.clone());
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if row_polys[v].is_none() {
                    let mut lin = MultiPoly::zero(out_arity);
                    for j in 0..out_arity {
                        let a = map.get(v, j);
                        if !a.is_zero() {
                            let mut exps = vec![0u8; out_arity];
                            exps[j] = 1;
                            lin.insert(exps.into_boxed_slice(), a.clone());
                        }
                    }
                    powers[v].push(MultiPoly::one(out_arity));
                    powers[v].push(lin.clone());
                    row_polys[v] = Some(lin);
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v]
                        .last()
                        .unwrap()
                        .mul(row_polys[v].as_ref().unwrap());
                    powers[v].push(next);
                }
                acc = acc.mul(&powers[v][e as usize]);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Rename variables injectively into a wider polynomial ring:
    /// variable `v` becomes `var_map[v]`.
    pub fn embed(&self, new_arity: usize, var_map: &[usize]) -> MultiPoly {
        assert_eq!(var_map.len(), self.arity);
        assert!(var_map.iter().all(|&j| j < new_arity));
        let mut out = MultiPoly::zero(new_arity);
        for (m, c) in &self.terms {
            let mut mono = vec![0u8; new_arity];
            for (v, &e) in m.iter().enumerate() {
                mono[var_map[v]] = e;
            }
            out.insert(mono.into_boxed_slice(), c.clone());
        }
        out
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational, PolyError> {
        if x.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    prod *= &x[v];
                }
            }
            total += prod;
        }
        Ok(total)
    }

    /// All first partial derivatives evaluated at a point.
    pub fn gradient_at(&self, x: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        if x.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut grad = vec![Rational::zero(); self.arity];
        for (m, c) in &self.terms {
            let support: Vec<usize> = (0..self.arity).filter(|&v| m[v] > 0).collect();
            for &v in &support {
                let mut prod = c * Rational::from_integer(BigInt::from(m[v]));
                for &w in &support {
                    let e = if w == v { m[w] - 1 } else { m[w] };
                    for _ in 0..e {
                        prod *= &x[w];
                    }
                }
                grad[v] += prod;
            }
        }
        Ok(grad)
    }

    /// The symmetric matrix of second partials evaluated at a point.
    pub fn hessian_at(&self, x: &[Rational]) -> Result<SymMatrix, PolyError> {
        if x.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut h = SymMatrix::zero(self.arity);
        for (m, c) in &self.terms {
            let support: Vec<usize> = (0..self.arity).filter(|&v| m[v] > 0).collect();
            for (a, &i) in support.iter().enumerate() {
                for &j in &support[a..] {
                    let factor = if i == j {
                        BigInt::from(m[i]) * BigInt::from(m[i].saturating_sub(1))
                    } else {
                        BigInt::from(m[i]) * BigInt::from(m[j])
                    };
                    if factor.is_zero() {
                        continue;
                    }
                    let mut prod = c * Rational::from_integer(factor);
                    let mut mono = m.clone();
                    mono[i] -= 1;
                    if mono[j] == 0 {
                        continue;
                    }
                    mono[j] -= 1;
                    for &w in &support {
                        for _ in 0..mono[w] {
                            prod *= &x[w];
                        }
                    }
                    if !prod.is_zero() {
                        h.add_to(i, j, &prod);
                    }
                }
            }
        }
        Ok(h)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
    }

    /// `Some(d)` when every monomial has total degree exactly `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum::<usize>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Terms in a deterministic order: total degree descending, then
    /// exponent vector lexicographically ascending.
    pub fn sorted_terms(&self) -> Vec<(Vec<u8>, Rational)> {
        let mut out: Vec<(Vec<u8>, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.to_vec(), c.clone()))
            .collect();
        out.sort_by(|(a, _), (b, _)| {
            let da: usize = a.iter().map(|&e| e as usize).sum();
            let db: usize = b.iter().map(|&e| e as usize).sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        out
    }

    /// Render with a caller-chosen variable namer.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.sorted_terms() {
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            let degree: usize = m.iter().map(|&e| e as usize).sum();
            if !mag.is_one() || degree == 0 {
                parts.push(format!("{}", mag));
            }
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(name(v)),
                    _ => parts.push(format!("{}^{}", name(v), e)),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|v| format!("t{v}")))
    }
}

/// Dense rational matrix viewed as a linear map `x -> A x` from `cols`
/// inputs to `rows` outputs.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinearMap::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        if x.len() != self.cols {
            return Err(PolyError::ArityMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = Rational::zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    acc += a * &x[c];
                }
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// `self.compose(&g)` is the map `x -> self(g(x))`.
    pub fn compose(&self, g: &LinearMap) -> Result<LinearMap, PolyError> {
        if self.cols != g.rows {
            return Err(PolyError::ArityMismatch {
                expected: self.cols,
                got: g.rows,
            });
        }
        let mut out = LinearMap::zero(self.rows, g.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..g.cols {
                    let b = g.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c).clone();
                        out.set(r, c, cur + a * b);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;
    use num::ToPrimitive;

    fn r(n: i64) -> Rational {
        rat_int(n)
    }

    fn xy_poly() -> MultiPoly {
        // x^2 y + 3 x - 2
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        x.mul(&x)
            .mul(&y)
            .add(&x.scale(&r(3)))
            .add(&MultiPoly::constant(2, r(-2)))
    }

    #[test]
    fn ring_operations() {
        let f = xy_poly();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.homogeneous_degree(), None);
        let g = f.sub(&f);
        assert!(g.is_zero());
        let x = MultiPoly::var(2, 0);
        assert_eq!(f.mul_by_var(0), f.mul(&x));
        assert_eq!(
            f.display_with(|v| ["x", "y"][v].to_string()),
            "x^2*y + 3*x - 2"
        );
    }

    #[test]
    fn derivatives() {
        let f = xy_poly();
        let fx = f.differentiate(0); // 2xy + 3
        assert_eq!(fx.evaluate(&[r(2), r(5)]).unwrap(), r(23));
        let fy = f.differentiate(1); // x^2
        assert_eq!(fy.evaluate(&[r(4), r(0)]).unwrap(), r(16));
        // Directional derivative combines the partials.
        let d = f.directional_derivative(&[r(1), r(-1)]).unwrap();
        assert_eq!(
            d.evaluate(&[r(2), r(5)]).unwrap(),
            fx.evaluate(&[r(2), r(5)]).unwrap() - fy.evaluate(&[r(2), r(5)]).unwrap()
        );
        // Mixed partials commute.
        assert_eq!(
            f.differentiate(0).differentiate(1),
            f.differentiate(1).differentiate(0)
        );
    }

    #[test]
    fn substitution_into_difference_of_squares() {
        // f = x^2 - y^2 with x = u + v, y = u - v gives 4uv.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = x.mul(&x).sub(&y.mul(&y));
        let mut map = LinearMap::zero(2, 2);
        map.set(0, 0, r(1));
        map.set(0, 1, r(1));
        map.set(1, 0, r(1));
        map.set(1, 1, r(-1));
        let g = f.substitute_linear(&map).unwrap();
        let u = MultiPoly::var(2, 0);
        let v = MultiPoly::var(2, 1);
        assert_eq!(g, u.mul(&v).scale(&r(4)));
    }

    #[test]
    fn embed_renames_variables() {
        let f = xy_poly();
        let g = f.embed(4, &[2, 0]);
        assert_eq!(
            g.evaluate(&[r(5), r(9), r(2), r(9)]).unwrap(),
            f.evaluate(&[r(2), r(5)]).unwrap()
        );
    }

    #[test]
    fn gradient_and_hessian_match_finite_differences() {
        let f = xy_poly();
        let x0 = [r(3) / r(2), r(-2) / r(5)];
        let grad = f.gradient_at(&x0).unwrap();
        let hess = f.hessian_at(&x0).unwrap();
        let ff = |x: f64, y: f64| x * x * y + 3.0 * x - 2.0;
        let p: Vec<f64> = x0.iter().map(|v| v.to_f64().unwrap()).collect();
        let h = 1e-5;
        for i in 0..2 {
            let mut lo = p.clone();
            let mut hi = p.clone();
            lo[i] -= h;
            hi[i] += h;
            let fd = (ff(hi[0], hi[1]) - ff(lo[0], lo[1])) / (2.0 * h);
            assert!((grad[i].to_f64().unwrap() - fd).abs() < 1e-6);
        }
        // Symbolic second partials cross-check the point Hessian.
        for i in 0..2 {
            for j in 0..2 {
                let dij = f.differentiate(i).differentiate(j);
                assert_eq!(dij.evaluate(&x0).unwrap(), *hess.get(i, j));
            }
        }
    }

    #[test]
    fn hessian_chain_rule_is_congruence() {
        // H(f o A)(x) = A^T H_f(Ax) A, checked entrywise exactly.
        let f = xy_poly();
        let mut a = LinearMap::zero(2, 3);
        for (r_, c_, v) in [
            (0, 0, 1),
            (0, 1, 2),
            (0, 2, -1),
            (1, 0, 0),
            (1, 1, 1),
            (1, 2, 3),
        ] {
            a.set(r_, c_, r(v));
        }
        let g = f.substitute_linear(&a).unwrap();
        let x = [r(1), r(-1), r(2)];
        let ax = a.apply(&x).unwrap();
        let hg = g.hessian_at(&x).unwrap();
        let hf = f.hessian_at(&ax).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Rational::zero();
                for p in 0..2 {
                    for q in 0..2 {
                        acc += a.get(p, i) * hf.get(p, q) * a.get(q, j);
                    }
                }
                assert_eq!(acc, *hg.get(i, j));
            }
        }
    }

    #[test]
    fn euler_identity_for_homogeneous_polynomials() {
        // x . grad f = d f for f homogeneous of degree d.
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let f = x
            .mul(&y)
            .mul(&z)
            .add(&x.mul(&x).mul(&y))
            .sub(&z.mul(&z).mul(&y));
        assert_eq!(f.homogeneous_degree(), Some(3));
        let pt = [r(2), r(-3), r(7)];
        let grad = f.gradient_at(&pt).unwrap();
        let dot: Rational = grad
            .iter()
            .zip(pt.iter())
            .map(|(g, v)| g * v)
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(dot, f.evaluate(&pt).unwrap() * r(3));
    }

    #[test]
    fn compose_linear_maps() {
        let mut a = LinearMap::zero(2, 2);
        a.set(0, 1, r(1));
        a.set(1, 0, r(1));
        let id = LinearMap::identity(2);
        assert_eq!(a.compose(&id).unwrap(), a);
        let aa = a.compose(&a).unwrap();
        assert_eq!(aa, id);
        assert!(a.compose(&LinearMap::zero(3, 3)).is_err());
    }
}
