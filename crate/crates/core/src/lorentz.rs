//! Spectral certification of volume polynomials and chain products.
//!
//! The engine is exact throughout: Hessians are rational, signatures come
//! from the dual routes in `symmat`, and a certificate passes exactly when
//! the positive eigenvalue count is one. Floating point appears only in
//! the power-iteration routine, whose outputs are advisory (the residual
//! and the eigenvector); simplicity of the Perron root is decided exactly
//! on the characteristic polynomial.

use std::fmt;

use num::{BigInt, Signed, ToPrimitive, Zero};

use crate::charpoly::{
    characteristic_polynomial, reduced_characteristic_polynomial, sequence_checks, CharPolyError,
};
use crate::cone::{AmplePoint, ConeError};
use crate::graphs;
use crate::matroid::{self, Chain, Matroid, MatroidError};
use crate::polyalg::{MultiPoly, PolyError};
use crate::symmat::{
    charpoly_exact, largest_root_is_simple, signature, MatrixError, Signature, SymMatrix,
};
use crate::volume::{mixed_degree_all, volume_polynomial, ChainContext, ClassVector, VolumeError};
use crate::Rational;

pub const PERRON_MAX_ITERATIONS: usize = 100_000;
pub const PERRON_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LorentzError {
    #[error("vector is zero")]
    ZeroVector,
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("matrix has a negative off-diagonal entry")]
    NotWeaklyNonnegative,
    #[error("power iteration did not converge within the budget")]
    NoConvergence,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis {index} failed: {reason}")]
    HypothesisFailed { index: usize, reason: String },
    #[error("conclusion failed, which indicates an implementation bug: {0}")]
    ConclusionFailed(String),
    #[error("rank or degree too small: have {have}, need at least {need}")]
    RankTooSmall { have: usize, need: usize },
    #[error("input class does not carry a strictly positive representative")]
    NonPositiveRepresentative,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    CharPoly(#[from] CharPolyError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Proof artifact for a Hessian signature computation. `pass` holds
/// exactly when the positive count is one; chain certificates also record
/// the exact derivative value and the incidence-graph comparison.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub subject: String,
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
    pub hessian: SymMatrix,
    pub signature: Signature,
    pub derivative_value: Option<Rational>,
    pub incidence_matches_join: Option<bool>,
    pub pass: bool,
    pub witness: Option<String>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject: {}", self.subject)?;
        writeln!(
            f,
            "base: [{}]",
            self.base
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )?;
        for (i, d) in self.directions.iter().enumerate() {
            writeln!(
                f,
                "direction {i}: [{}]",
                d.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        writeln!(f, "hessian dimension: {}", self.hessian.dim())?;
        writeln!(f, "signature: {}", self.signature)?;
        if let Some(v) = &self.derivative_value {
            writeln!(f, "derivative value: {v}")?;
        }
        if let Some(m) = self.incidence_matches_join {
            writeln!(f, "incidence graph matches join: {m}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Exact Rayleigh quotient `x^T A x / x^T x`.
pub fn rayleigh(a: &SymMatrix, x: &[Rational]) -> Result<Rational, LorentzError> {
    let norm: Rational = x.iter().map(|v| v * v).sum();
    if norm.is_zero() {
        return Err(LorentzError::ZeroVector);
    }
    Ok(a.quadratic_form(x)? / norm)
}

/// Connectivity of the off-diagonal support graph.
pub fn is_irreducible(a: &SymMatrix) -> bool {
    a.off_diagonal_graph().is_connected()
}

/// Result of the shifted power iteration. The value, vector, and residual
/// are floating point; `simple` is decided exactly from the characteristic
/// polynomial.
#[derive(Clone, Debug)]
pub struct Perron {
    pub value: f64,
    pub vector: Vec<f64>,
    pub simple: bool,
    pub iterations: usize,
    pub residual: f64,
}

/// Largest eigenvalue and a positive eigenvector of a weakly nonnegative
/// irreducible symmetric matrix.
///
/// Iterates on `A + sI` with `s` one more than the largest diagonal
/// magnitude, which keeps the iterates strictly positive and makes the
/// target eigenvalue strictly dominant. Convergence demands
/// `max_i |(Av)_i - lambda v_i| <= PERRON_TOLERANCE * max_row_sum(A)`.
pub fn perron(a: &SymMatrix) -> Result<Perron, LorentzError> {
    let n = a.dim();
    if n == 0 {
        return Err(LorentzError::PreconditionViolated("matrix is empty".into()));
    }
    if !a.is_weakly_nonnegative() {
        return Err(LorentzError::NotWeaklyNonnegative);
    }
    if !is_irreducible(a) {
        return Err(LorentzError::NotIrreducible);
    }
    let af = a.to_f64();
    let norm = af
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shift = 1.0 + (0..n).map(|i| af[i][i].abs()).fold(0.0, f64::max);
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for it in 0..PERRON_MAX_ITERATIONS {
        let av: Vec<f64> = af
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
            .collect();
        let lambda: f64 = av.iter().zip(&v).map(|(a, b)| a * b).sum();
        let residual = av
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0, f64::max);
        if residual <= PERRON_TOLERANCE * norm {
            let simple = largest_root_is_simple(&charpoly_exact(a)).ok_or_else(|| {
                LorentzError::ConclusionFailed(
                    "symmetric characteristic polynomial has no real root".into(),
                )
            })?;
            return Ok(Perron {
                value: lambda,
                vector: v,
                simple,
                iterations: it,
                residual,
            });
        }
        let mut w: Vec<f64> = av.iter().zip(&v).map(|(a, b)| a + shift * b).collect();
        let len = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= len;
        }
        v = w;
    }
    Err(LorentzError::NoConvergence)
}

/// Signature of `A - v v^T` for a matrix with at most one positive
/// eigenvalue; the downdate can never raise the positive count, so a
/// violation is an implementation bug.
pub fn downdate_check(a: &SymMatrix, v: &[Rational]) -> Result<Signature, LorentzError> {
    let before = signature(a);
    if before.positive > 1 {
        return Err(LorentzError::PreconditionViolated(format!(
            "matrix has {} positive eigenvalues",
            before.positive
        )));
    }
    let after = signature(&a.sub_outer(v)?);
    if after.positive > 1 {
        return Err(LorentzError::ConclusionFailed(format!(
            "rank-one downdate produced signature {after}"
        )));
    }
    Ok(after)
}

/// Exact Euler identities for a homogeneous polynomial:
/// `(H_x f) x = (d-1) grad f(x)` and `grad f(x) . x = d f(x)`.
pub fn euler_identities_hold(f: &MultiPoly, x: &[Rational]) -> Result<bool, LorentzError> {
    let d = f.homogeneous_degree().ok_or_else(|| {
        LorentzError::PreconditionViolated("polynomial is not homogeneous".into())
    })?;
    let grad = f.gradient_at(x)?;
    let hx = f.hessian_at(x)?.apply(x)?;
    let dm1 = crate::rat_int(d as i64 - 1);
    if hx.iter().zip(&grad).any(|(a, g)| *a != &dm1 * g) {
        return Ok(false);
    }
    let dot: Rational = grad.iter().zip(x).map(|(g, v)| g * v).sum();
    Ok(dot == crate::rat_int(d as i64) * f.evaluate(x)?)
}

/// The concavity witness `C = d f(x) H_x f - (d-1) grad f grad f^T`,
/// negative semidefinite whenever the Hessian at positive `x` has exactly
/// one positive eigenvalue.
pub fn concavity_form(f: &MultiPoly, x: &[Rational]) -> Result<SymMatrix, LorentzError> {
    let d = f.homogeneous_degree().ok_or_else(|| {
        LorentzError::PreconditionViolated("polynomial is not homogeneous".into())
    })?;
    let h = f.hessian_at(x)?;
    let grad = f.gradient_at(x)?;
    let scale = crate::rat_int(d as i64) * f.evaluate(x)?;
    let dm1 = crate::rat_int(d as i64 - 1);
    let n = h.dim();
    let mut c = h.scale(&scale);
    for i in 0..n {
        for j in i..n {
            let adj = c.get(i, j) - &dm1 * &grad[i] * &grad[j];
            c.set(i, j, adj);
        }
    }
    Ok(c)
}

/// Gram matrix of `A` restricted to the span of the given vectors.
pub fn restricted_gram(a: &SymMatrix, vs: &[Vec<Rational>]) -> Result<SymMatrix, LorentzError> {
    let images: Vec<Vec<Rational>> = vs.iter().map(|v| a.apply(v)).collect::<Result<_, _>>()?;
    let k = vs.len();
    let mut g = SymMatrix::zero(k);
    for i in 0..k {
        for j in i..k {
            let dot: Rational = vs[i].iter().zip(&images[j]).map(|(x, y)| x * y).sum();
            g.set(i, j, dot);
        }
    }
    Ok(g)
}

/// Degree-lowering certification for a homogeneous polynomial at a
/// strictly positive point.
///
/// Hypotheses, in order: (1) the Hessian at `x` is weakly nonnegative and
/// irreducible; (2) every partial derivative is positive at `x`; (3) the
/// Hessian of every partial derivative at `x` has exactly one positive
/// eigenvalue. The conclusion, that the Hessian of `f` itself has exactly
/// one positive eigenvalue, then follows; a failure there is a bug, not a
/// property of the input. Two auxiliary facts from the same argument are
/// verified as well: the scaled eigenvector identity in floating point
/// and exact positive semidefiniteness of `H Lambda H - (d-1) H` with
/// `Lambda = diag(x_i / partial_i f(x))`.
pub fn bootstrap_check(f: &MultiPoly, x: &[Rational]) -> Result<Certificate, LorentzError> {
    let n = f.arity();
    if x.len() != n || n == 0 {
        return Err(LorentzError::PreconditionViolated(
            "point arity does not match the polynomial".into(),
        ));
    }
    let d = f.homogeneous_degree().ok_or_else(|| {
        LorentzError::PreconditionViolated("polynomial is not homogeneous".into())
    })?;
    if d < 3 {
        return Err(LorentzError::PreconditionViolated(
            "bootstrap requires homogeneous degree at least three".into(),
        ));
    }
    if x.iter().any(|v| !v.is_positive()) {
        return Err(LorentzError::PreconditionViolated(
            "base point must be strictly positive".into(),
        ));
    }

    let h = f.hessian_at(x)?;
    if !h.is_weakly_nonnegative() {
        return Err(LorentzError::HypothesisFailed {
            index: 1,
            reason: "Hessian has a negative off-diagonal entry".into(),
        });
    }
    if !is_irreducible(&h) {
        return Err(LorentzError::HypothesisFailed {
            index: 1,
            reason: "Hessian support graph is disconnected".into(),
        });
    }

    let grad = f.gradient_at(x)?;
    if let Some(i) = grad.iter().position(|g| !g.is_positive()) {
        return Err(LorentzError::HypothesisFailed {
            index: 2,
            reason: format!("partial derivative {i} is not positive at the base point"),
        });
    }

    for i in 0..n {
        let s = signature(&f.differentiate(i).hessian_at(x)?);
        if s.positive != 1 {
            return Err(LorentzError::HypothesisFailed {
                index: 3,
                reason: format!("Hessian of partial derivative {i} has signature {s}"),
            });
        }
    }

    let sig = signature(&h);
    if sig.positive != 1 {
        return Err(LorentzError::ConclusionFailed(format!(
            "Hessian signature is {sig}"
        )));
    }

    scaled_eigenvector_identity(&h, x, &grad, d)?;
    exact_semidefinite_identity(&h, x, &grad, d)?;

    Ok(Certificate {
        subject: "bootstrap".into(),
        base: x.to_vec(),
        directions: Vec::new(),
        hessian: h,
        signature: sig,
        derivative_value: None,
        incidence_matches_join: None,
        pass: true,
        witness: None,
    })
}

/// Float check that `w = Lambda^{-1/2} x` is an eigenvector of
/// `Lambda^{1/2} H Lambda^{1/2}` with eigenvalue `d - 1`.
fn scaled_eigenvector_identity(
    h: &SymMatrix,
    x: &[Rational],
    grad: &[Rational],
    d: usize,
) -> Result<(), LorentzError> {
    let n = h.dim();
    let to_f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let sqrt_lambda: Vec<f64> = (0..n)
        .map(|i| (to_f(&x[i]) / to_f(&grad[i])).sqrt())
        .collect();
    let w: Vec<f64> = (0..n)
        .map(|i| (to_f(&x[i]) * to_f(&grad[i])).sqrt())
        .collect();
    let hf = h.to_f64();
    let mut max_err: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            let b = sqrt_lambda[i] * hf[i][j] * sqrt_lambda[j];
            acc += b * w[j];
            scale = scale.max(b.abs() * w[j].abs());
        }
        max_err = max_err.max((acc - (d as f64 - 1.0) * w[i]).abs());
    }
    if !(max_err <= 1e-8 * scale) {
        return Err(LorentzError::ConclusionFailed(format!(
            "scaled eigenvector identity violated: error {max_err:e}"
        )));
    }
    Ok(())
}

/// Exact check that `H Lambda H - (d-1) H` is positive semidefinite,
/// with `Lambda = diag(x_i / partial_i f(x))`.
fn exact_semidefinite_identity(
    h: &SymMatrix,
    x: &[Rational],
    grad: &[Rational],
    d: usize,
) -> Result<(), LorentzError> {
    let n = h.dim();
    let lambda: Vec<Rational> = (0..n).map(|i| &x[i] / &grad[i]).collect();
    let dm1 = crate::rat_int(d as i64 - 1);
    let mut m = SymMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = -(&dm1 * h.get(i, j));
            for (k, l) in lambda.iter().enumerate() {
                acc += h.get(i, k) * l * h.get(k, j);
            }
            m.set(i, j, acc);
        }
    }
    let s = signature(&m);
    if s.negative != 0 {
        return Err(LorentzError::ConclusionFailed(format!(
            "H Lambda H - (d-1) H has signature {s}, expected positive semidefinite"
        )));
    }
    Ok(())
}

/// Certifies that the Hessian of `D_{dirs} V_M` at `u` has exactly one
/// positive eigenvalue. Zeros from the invariance subspace are expected
/// and reported in the signature's zero count.
pub fn certify_lorentzian(
    m: &Matroid,
    u: &AmplePoint,
    dirs: &[AmplePoint],
) -> Result<Certificate, LorentzError> {
    let v = volume_polynomial(m)?;
    certify_lorentzian_with(m, &v, u, dirs)
}

/// Variant taking a precomputed volume polynomial, for callers that
/// certify many points of the same matroid.
pub fn certify_lorentzian_with(
    m: &Matroid,
    v: &MultiPoly,
    u: &AmplePoint,
    dirs: &[AmplePoint],
) -> Result<Certificate, LorentzError> {
    let k = dirs.len();
    if m.rank() < k + 3 {
        return Err(LorentzError::RankTooSmall {
            have: m.rank(),
            need: k + 3,
        });
    }
    if !u.has_positive_representative() {
        return Err(LorentzError::NonPositiveRepresentative);
    }
    let mut g = v.clone();
    for dir in dirs {
        if !dir.has_positive_representative() {
            return Err(LorentzError::NonPositiveRepresentative);
        }
        g = g.directional_derivative(dir.class().coords())?;
    }
    let h = g.hessian_at(u.class().coords())?;
    let sig = signature(&h);
    let pass = sig.positive == 1;
    Ok(Certificate {
        subject: m.canonical_hash(),
        base: u.class().coords().to_vec(),
        directions: dirs.iter().map(|d| d.class().coords().to_vec()).collect(),
        hessian: h,
        signature: sig,
        derivative_value: None,
        incidence_matches_join: None,
        pass,
        witness: if pass {
            None
        } else {
            Some(format!("positive count is {}, expected 1", sig.positive))
        },
    })
}

/// Certifies the chain product of a flag of proper flats at blockwise
/// ample points: the `k`-fold derivative value must be positive and the
/// Hessian must have exactly one positive eigenvalue. The Hessian's
/// off-diagonal support is also compared against the join of the interval
/// flat graphs and the outcome recorded in the certificate.
///
/// `u` and each entry of `dirs` list one ample point per chain block, in
/// chain order; block coordinates follow the interval minors' canonical
/// flat order, which matches the chain context's variable order.
pub fn certify_chain(
    m: &Matroid,
    chain: &Chain,
    u: &[AmplePoint],
    dirs: &[Vec<AmplePoint>],
) -> Result<Certificate, LorentzError> {
    let ctx = ChainContext::new(m, chain.clone());
    let blocks = ctx.blocks().to_vec();
    let mut minors = Vec::with_capacity(blocks.len());
    let mut degree = 0usize;
    for &(lo, hi) in &blocks {
        let (minor, _) = matroid::interval_minor(m, lo, hi)?;
        degree += minor.rank() - 1;
        minors.push(minor);
    }
    let k = dirs.len();
    if degree < k + 2 {
        return Err(LorentzError::RankTooSmall {
            have: degree,
            need: k + 2,
        });
    }

    let assemble = |points: &[AmplePoint]| -> Result<Vec<Rational>, LorentzError> {
        if points.len() != blocks.len() {
            return Err(LorentzError::PreconditionViolated(format!(
                "expected one ample point per chain block ({}), got {}",
                blocks.len(),
                points.len()
            )));
        }
        let mut out = vec![Rational::zero(); ctx.arity()];
        for (b, p) in points.iter().enumerate() {
            if !p.has_positive_representative() {
                return Err(LorentzError::NonPositiveRepresentative);
            }
            let coords = p.class().coords();
            if coords.len() != ctx.block_vars(b).len() {
                return Err(LorentzError::PreconditionViolated(format!(
                    "block {b} expects {} coordinates, got {}",
                    ctx.block_vars(b).len(),
                    coords.len()
                )));
            }
            let off = ctx.offset(b);
            out[off..off + coords.len()].clone_from_slice(coords);
        }
        Ok(out)
    };

    let base = assemble(u)?;
    let mut g = ctx.product_polynomial(m);
    let mut dir_vecs = Vec::with_capacity(k);
    for dir in dirs {
        let dv = assemble(dir)?;
        g = g.directional_derivative(&dv)?;
        dir_vecs.push(dv);
    }

    let value = g.evaluate(&base)?;
    let h = g.hessian_at(&base)?;
    let sig = signature(&h);

    let join = graphs::join(&minors.iter().map(matroid::flat_graph).collect::<Vec<_>>());
    let matches = h.off_diagonal_graph().simple_edge_set() == join.simple_edge_set();

    let pass = sig.positive == 1 && value.is_positive();
    let witness = if pass {
        None
    } else if !value.is_positive() {
        Some(format!("derivative value {value} is not positive"))
    } else {
        Some(format!("positive count is {}, expected 1", sig.positive))
    };
    Ok(Certificate {
        subject: format!(
            "{} chain [{}]",
            m.canonical_hash(),
            chain
                .interior()
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        base,
        directions: dir_vecs,
        hessian: h,
        signature: sig,
        derivative_value: Some(value),
        incidence_matches_join: Some(matches),
        pass,
        witness,
    })
}

/// The two-by-two Hodge matrix
/// `[[D_x^2 g, D_x D_y g], [D_x D_y g, D_y^2 g]]` for
/// `g = D_{dirs} V_M` quadratic, and whether its determinant is
/// nonpositive.
pub fn hodge_2x2(
    m: &Matroid,
    x: &ClassVector,
    y: &ClassVector,
    dirs: &[AmplePoint],
) -> Result<(SymMatrix, bool), LorentzError> {
    let v = volume_polynomial(m)?;
    hodge_2x2_with(m, &v, x, y, dirs)
}

/// Variant taking a precomputed volume polynomial, for callers that
/// probe many pairs of classes on the same matroid.
pub fn hodge_2x2_with(
    m: &Matroid,
    v: &MultiPoly,
    x: &ClassVector,
    y: &ClassVector,
    dirs: &[AmplePoint],
) -> Result<(SymMatrix, bool), LorentzError> {
    if m.rank() < 3 {
        return Err(LorentzError::RankTooSmall {
            have: m.rank(),
            need: 3,
        });
    }
    if dirs.len() != m.rank() - 3 {
        return Err(LorentzError::PreconditionViolated(format!(
            "expected rank - 3 = {} directions, got {}",
            m.rank() - 3,
            dirs.len()
        )));
    }
    let mut g = v.clone();
    for dir in dirs {
        if !dir.has_positive_representative() {
            return Err(LorentzError::NonPositiveRepresentative);
        }
        g = g.directional_derivative(dir.class().coords())?;
    }
    let gx = g.directional_derivative(x.coords())?;
    let dxx = gx.directional_derivative(x.coords())?.constant_term();
    let dxy = gx.directional_derivative(y.coords())?.constant_term();
    let dyy = g
        .directional_derivative(y.coords())?
        .directional_derivative(y.coords())?
        .constant_term();
    if !dxx.is_positive() {
        return Err(LorentzError::PreconditionViolated(format!(
            "second derivative along x is {dxx}, not positive"
        )));
    }
    let det = &dxx * &dyy - &dxy * &dxy;
    let mat = SymMatrix::from_rows(vec![vec![dxx, dxy.clone()], vec![dxy, dyy]])?;
    Ok((mat, !det.is_positive()))
}

/// Log-concavity report for the characteristic and reduced characteristic
/// coefficient sequences. Failing inequalities are reported, not thrown;
/// they would falsify the implementation rather than the theorem.
#[derive(Clone, Debug)]
pub struct RhwReport {
    pub characteristic_mu: Vec<BigInt>,
    pub reduced_mu: Vec<BigInt>,
    pub mixed_degrees: Vec<Rational>,
    pub characteristic_log_concave: bool,
    pub reduced_log_concave: bool,
    pub mixed_matches_reduced: bool,
    pub sum_rule_holds: bool,
    pub pass: bool,
}

impl fmt::Display for RhwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "mu (characteristic): {}", join(&self.characteristic_mu))?;
        writeln!(f, "mu (reduced): {}", join(&self.reduced_mu))?;
        writeln!(
            f,
            "mixed degrees: {}",
            self.mixed_degrees
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )?;
        writeln!(
            f,
            "log-concave (characteristic): {}",
            self.characteristic_log_concave
        )?;
        writeln!(f, "log-concave (reduced): {}", self.reduced_log_concave)?;
        writeln!(
            f,
            "mixed degrees match reduced mu: {}",
            self.mixed_matches_reduced
        )?;
        writeln!(f, "extension sum rule holds: {}", self.sum_rule_holds)?;
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Verifies log-concavity of the characteristic coefficient magnitudes
/// and of the reduced sequence, cross-checks the reduced sequence against
/// the volume-polynomial mixed degrees, and confirms that the
/// characteristic polynomial equals the reduced characteristic polynomial
/// of the direct sum with a coloop.
pub fn verify_rhw(m: &Matroid) -> Result<RhwReport, LorentzError> {
    if !m.is_loopless() {
        return Err(LorentzError::PreconditionViolated(
            "matroid has loops".into(),
        ));
    }
    let cp = characteristic_polynomial(m)?;
    let rp = reduced_characteristic_polynomial(m)?;
    let mixed = mixed_degree_all(m)?;

    let to_rat = |v: &[BigInt]| -> Vec<Rational> {
        v.iter()
            .map(|b| Rational::from_integer(b.clone()))
            .collect()
    };
    let characteristic_log_concave = sequence_checks(&to_rat(&cp.mu)).log_concave;
    let reduced_log_concave = sequence_checks(&to_rat(&rp.mu)).log_concave;
    let mixed_matches_reduced = mixed.len() == rp.mu.len()
        && mixed
            .iter()
            .zip(&rp.mu)
            .all(|(a, b)| *a == Rational::from_integer(b.clone()));

    let coloop = matroid::uniform(1, 1)?;
    let extended = matroid::direct_sum(m, &coloop)?;
    let sum_rule_holds = reduced_characteristic_polynomial(&extended)?.poly == cp.poly;

    let pass = characteristic_log_concave
        && reduced_log_concave
        && mixed_matches_reduced
        && sum_rule_holds;
    Ok(RhwReport {
        characteristic_mu: cp.mu,
        reduced_mu: rp.mu,
        mixed_degrees: mixed,
        characteristic_log_concave,
        reduced_log_concave,
        mixed_matches_reduced,
        sum_rule_holds,
        pass,
    })
}
