//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending order of exponent with no trailing
//! zeros, so the zero polynomial is the empty vector. Root counting is exact:
//! Sturm chains for real roots in an interval, Descartes sign variations for
//! positive roots of real-rooted polynomials.

use crate::Rational;
use num::{BigInt, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        UniPoly::monomial(Rational::one(), 1)
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Ascending coefficients; trailing zeros are stripped on construction.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| crate::rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut e: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d || (rem.len() == d + 1 && d == 0) {
            if rem.is_empty() {
                break;
            }
            let k = rem.len() - 1;
            if k < d {
                break;
            }
            let q = rem[k].clone() / lead.clone();
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let idx = k - d + j;
                    let delta = &q * b;
                    rem[idx] -= delta;
                }
                quot[k - d] = q;
            }
            rem.pop();
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d && d > 0 {
                break;
            }
            if d == 0 && rem.is_empty() {
                break;
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Quotient when the division is exact, `None` otherwise.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g)
            .expect("gcd divides the polynomial")
            .monic()
    }

    /// Number of sign changes in the coefficient sequence (zeros skipped).
    /// For a real-rooted polynomial this equals the number of strictly
    /// positive roots counted with multiplicity.
    pub fn descartes_variations(&self) -> usize {
        let mut prev = 0i8;
        let mut variations = 0;
        for c in &self.coeffs {
            let s = rational_sign(c);
            if s != 0 {
                if prev != 0 && s != prev {
                    variations += 1;
                }
                prev = s;
            }
        }
        variations
    }

    /// Multiplicity of the root at zero (trailing zero coefficients).
    pub fn order_at_zero(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Sturm chain, negated-remainder sequence with rational coefficients.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = Vec::new();
        if self.is_zero() {
            return chain;
        }
        chain.push(self.clone());
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        SturmSequence::new(self).count_in(a, b)
    }

    /// Distinct real roots on the whole line.
    pub fn count_real_roots(&self) -> usize {
        SturmSequence::new(self).count_all()
    }

    /// True when every complex root is real. Works through the square-free
    /// part, so multiple roots are handled correctly.
    pub fn real_rooted(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            Some(_) => {
                let s = self.squarefree_part();
                match s.degree() {
                    None | Some(0) => true,
                    Some(d) => s.count_real_roots() == d,
                }
            }
        }
    }

    /// A bound `B` with every real root in `[-B, B]` (Cauchy bound).
    pub fn root_bound(&self) -> Rational {
        let lead = match self.leading() {
            None => return Rational::one(),
            Some(l) => l.clone(),
        };
        let mut max = Rational::zero();
        for c in &self.coeffs {
            let t = (c / &lead).abs();
            if t > max {
                max = t;
            }
        }
        max + Rational::one()
    }

    /// Unique interpolating polynomial through distinct nodes.
    pub fn lagrange(points: &[(Rational, Rational)]) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut term = UniPoly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi - xj;
                assert!(!denom.is_zero(), "interpolation nodes must be distinct");
                let factor = UniPoly::from_coeffs(vec![-xj / &denom, Rational::one() / denom]);
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Render with explicit signs in descending degree, e.g. `q^3 - 4*q^2 + 6*q - 3`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let coeff_part = if mag.is_one() && k > 0 {
                String::new()
            } else {
                format!("{}", mag)
            };
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => out.push_str(&var_part),
                (false, true) => out.push_str(&coeff_part),
                (false, false) => {
                    out.push_str(&coeff_part);
                    out.push('*');
                    out.push_str(&var_part);
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// A precomputed Sturm chain for repeated root-counting queries against the
/// same polynomial, as in bisection-based root isolation.
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Self {
        SturmSequence {
            chain: p.sturm_chain(),
        }
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        assert!(a < b, "empty interval");
        sign_variations_at(&self.chain, a) - sign_variations_at(&self.chain, b)
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        sign_variations_at_minus_inf(&self.chain) - sign_variations_at_plus_inf(&self.chain)
    }
}

pub(crate) fn rational_sign(c: &Rational) -> i8 {
    if c.is_zero() {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut prev = 0i8;
    let mut variations = 0;
    for s in signs {
        if s != 0 {
            if prev != 0 && s != prev {
                variations += 1;
            }
            prev = s;
        }
    }
    variations
}

fn sign_variations_at(chain: &[UniPoly], x: &Rational) -> usize {
    count_variations(chain.iter().map(|p| rational_sign(&p.eval(x))))
}

fn sign_variations_at_plus_inf(chain: &[UniPoly]) -> usize {
    count_variations(
        chain
            .iter()
            .map(|p| p.leading().map(rational_sign).unwrap_or(0)),
    )
}

fn sign_variations_at_minus_inf(chain: &[UniPoly]) -> usize {
    count_variations(chain.iter().map(|p| match p.degree() {
        None => 0,
        Some(d) => {
            let s = p.leading().map(rational_sign).unwrap_or(0);
            if d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }))
}
