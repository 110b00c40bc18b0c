//! Felder's dynamical elliptic r-matrix for `sl_n` in the defining
//! representation, the classical dynamical Yang–Baxter residual, and the
//! projection operators `P_±` on loop-algebra elements.
//!
//! ```text
//! r(λ, z) = ρ(z) Σ_i x_i ⊗ x_i + Σ_α σ_{−⟨α,λ⟩}(z) e_α ⊗ e_{−α}
//! ```
//!
//! The invariant form is the trace form `⟨a, b⟩ = tr(ab)`; `x_i` are
//! orthonormal traceless diagonals and `e_α = E_ij`, `e_{−α} = E_ji`.
//! Tensor products use the Kronecker layout: `(a ⊗ b)` acts on index
//! `a_idx · n + b_idx`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ellfun::{contour_nodes, EllipticContext, EllipticError};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// `⟨α, λ⟩` closer than this to the period lattice is a wall.
pub const WALL_THRESHOLD: f64 = 1e-6;
/// Default contour radius for projections and pairings.
pub const CONTOUR_RADIUS: f64 = 0.25;
/// Default number of trapezoidal nodes.
pub const CONTOUR_NODES: usize = 256;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RMatrixError {
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error("sl_n needs n >= 2, got {0}")]
    Rank(usize),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("<alpha, lambda> = {value} for root ({i}, {j}) lies within {dist:.3e} of the period lattice")]
    Wall { i: usize, j: usize, value: C64, dist: f64 },
    #[error("leg indices ({0}, {1}) invalid for {2} tensor factors")]
    BadLegs(usize, usize, usize),
    #[error("matrix of size {got} is not (dim {dim})^{factors}")]
    Shape { got: usize, dim: usize, factors: usize },
    #[error("evaluation point {0} is not strictly inside the contour of radius {1}")]
    OutsideContour(C64, f64),
    #[error("dynamical point sampling failed: singular simple-root system")]
    Sampling,
}

/// Root vector pair for the root `α = ε_i − ε_j`.
#[derive(Debug, Clone)]
pub struct RootVector {
    pub i: usize,
    pub j: usize,
    /// `α(x_k)` for each Cartan basis element.
    pub alpha: Vec<f64>,
}

impl RootVector {
    pub fn e(&self, n: usize) -> CMatrix {
        elementary(n, self.i, self.j)
    }

    pub fn e_neg(&self, n: usize) -> CMatrix {
        elementary(n, self.j, self.i)
    }
}

fn elementary(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

/// `sl_n` in its defining representation with an orthonormal Cartan basis.
#[derive(Debug, Clone)]
pub struct SlRep {
    n: usize,
    cartan_diag: Vec<Vec<f64>>,
    roots: Vec<RootVector>,
}

/// `x_k = diag(1, …, 1, −k, 0, …) / √(k(k+1))`.
pub fn build_sl_rep(n: usize) -> Result<SlRep, RMatrixError> {
    if n < 2 {
        return Err(RMatrixError::Rank(n));
    }
    let cartan_diag: Vec<Vec<f64>> = (1..n)
        .map(|k| {
            let norm = ((k * (k + 1)) as f64).sqrt();
            (0..n)
                .map(|a| match a.cmp(&k) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(k as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect();
    let mut roots = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let alpha = cartan_diag.iter().map(|d| d[i] - d[j]).collect();
                roots.push(RootVector { i, j, alpha });
            }
        }
    }
    Ok(SlRep { n, cartan_diag, roots })
}

impl SlRep {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn cartan(&self) -> Vec<CMatrix> {
        self.cartan_diag
            .iter()
            .map(|d| CMatrix::from_diagonal(&DVector::from_iterator(self.n, d.iter().map(|x| C64::new(*x, 0.0)))))
            .collect()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn form(&self, a: &CMatrix, b: &CMatrix) -> C64 {
        (a * b).trace()
    }

    /// `⟨α, λ⟩` for `λ = Σ λ_k x_k`.
    pub fn root_value(&self, root: &RootVector, lambda: &[C64]) -> C64 {
        root.alpha.iter().zip(lambda).map(|(a, l)| *l * *a).sum()
    }

    /// Coordinates of `h` against the orthonormal Cartan basis.
    pub fn cartan_coords(&self, h: &CMatrix) -> Vec<C64> {
        self.cartan_diag
            .iter()
            .map(|d| d.iter().enumerate().map(|(a, x)| h[(a, a)] * *x).sum())
            .collect()
    }

    /// `Σ_k c_k x_k` as a matrix.
    pub fn cartan_element(&self, coords: &[C64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        for (d, c) in self.cartan_diag.iter().zip(coords) {
            for a in 0..self.n {
                m[(a, a)] += *c * d[a];
            }
        }
        m
    }

    /// Project an `n × n` matrix onto `sl_n` by removing its trace.
    pub fn traceless(&self, m: &CMatrix) -> CMatrix {
        let t = m.trace() / self.n as f64;
        m - CMatrix::identity(self.n, self.n) * t
    }

    /// Largest deviation from the defining relations: commuting orthonormal
    /// Cartan basis, `[h, e_α] = α(h) e_α`, `⟨e_α, e_{−α}⟩ = 1`.
    pub fn invariant_residual(&self) -> f64 {
        let xs = self.cartan();
        let mut worst: f64 = 0.0;
        for (a, xa) in xs.iter().enumerate() {
            for (b, xb) in xs.iter().enumerate() {
                worst = worst.max((xa * xb - xb * xa).norm());
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((self.form(xa, xb) - target).norm());
            }
        }
        for r in &self.roots {
            let (e, f) = (r.e(self.n), r.e_neg(self.n));
            worst = worst.max((self.form(&e, &f) - ONE).norm());
            for (k, x) in xs.iter().enumerate() {
                let lhs = x * &e - &e * x;
                worst = worst.max((lhs - &e * C64::new(r.alpha[k], 0.0)).norm());
            }
        }
        worst
    }

    /// `Σ x_i ⊗ x_i + Σ_α e_α ⊗ e_{−α}`.
    pub fn casimir(&self) -> TensorOperator {
        self.assemble(ONE, |_| Ok(ONE)).expect("constant coefficients")
    }

    /// `c0 Σ x_i⊗x_i + Σ_α c(α) e_α⊗e_{−α}`, filled entrywise.
    fn assemble<F>(&self, c0: C64, mut coef: F) -> Result<TensorOperator, RMatrixError>
    where
        F: FnMut(&RootVector) -> Result<C64, RMatrixError>,
    {
        let n = self.n;
        let mut m = CMatrix::zeros(n * n, n * n);
        if c0 != ZERO {
            for a in 0..n {
                for b in 0..n {
                    let s: f64 = self.cartan_diag.iter().map(|d| d[a] * d[b]).sum();
                    m[(a * n + b, a * n + b)] = c0 * s;
                }
            }
        }
        for r in &self.roots {
            m[(r.i * n + r.j, r.j * n + r.i)] = coef(r)?;
        }
        Ok(TensorOperator { dim: n, factors: 2, matrix: m })
    }
}

/// A point `λ ∈ 𝔥` off the walls, in orthonormal Cartan coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalPoint {
    pub lambda: Vec<C64>,
}

impl DynamicalPoint {
    pub fn new(rep: &SlRep, ctx: &EllipticContext, lambda: Vec<C64>) -> Result<Self, RMatrixError> {
        if lambda.len() != rep.rank() {
            return Err(RMatrixError::Dimension { expected: rep.rank(), got: lambda.len() });
        }
        for r in rep.roots() {
            let value = rep.root_value(r, &lambda);
            let dist = ctx.lattice_distance(value);
            if dist < WALL_THRESHOLD {
                return Err(RMatrixError::Wall { i: r.i, j: r.j, value, dist });
            }
        }
        Ok(DynamicalPoint { lambda })
    }

    /// Shift coordinate `k` by `h` without re-checking the walls.
    fn shifted(&self, k: usize, h: C64) -> DynamicalPoint {
        let mut lambda = self.lambda.clone();
        lambda[k] += h;
        DynamicalPoint { lambda }
    }
}

/// Operator on `V^{⊗factors}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator {
    pub dim: usize,
    pub factors: usize,
    pub matrix: CMatrix,
}

impl TensorOperator {
    pub fn new(dim: usize, factors: usize, matrix: CMatrix) -> Result<Self, RMatrixError> {
        let size = dim.pow(factors as u32);
        if matrix.nrows() != size || matrix.ncols() != size {
            return Err(RMatrixError::Shape { got: matrix.nrows(), dim, factors });
        }
        Ok(TensorOperator { dim, factors, matrix })
    }

    pub fn identity(dim: usize, factors: usize) -> Self {
        let size = dim.pow(factors as u32);
        TensorOperator { dim, factors, matrix: CMatrix::identity(size, size) }
    }

    /// `a_1 ⊗ … ⊗ a_k`.
    pub fn product(ops: &[CMatrix]) -> Self {
        let dim = ops[0].nrows();
        let matrix = ops[1..].iter().fold(ops[0].clone(), |acc, m| acc.kronecker(m));
        TensorOperator { dim, factors: ops.len(), matrix }
    }

    /// The factor swap `P(a ⊗ b) = b ⊗ a` on `V ⊗ V`.
    pub fn swap(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim * dim, dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                m[(b * dim + a, a * dim + b)] = ONE;
            }
        }
        TensorOperator { dim, factors: 2, matrix: m }
    }

    fn digits(&self, mut idx: usize, factors: usize) -> Vec<usize> {
        let mut out = vec![0; factors];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.dim;
            idx /= self.dim;
        }
        out
    }

    fn index(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, d| acc * self.dim + d)
    }

    /// Place a two-leg operator on legs `(i, j)` (1-based, ordered: the first
    /// tensor factor acts on leg `i`) of `factors` copies of `V`.
    pub fn leg_embed(&self, legs: (usize, usize), factors: usize) -> Result<TensorOperator, RMatrixError> {
        let (i, j) = legs;
        if self.factors != 2 || i == j || i == 0 || j == 0 || i > factors || j > factors {
            return Err(RMatrixError::BadLegs(i, j, factors));
        }
        let (i, j) = (i - 1, j - 1);
        let d = self.dim;
        let size = d.pow(factors as u32);
        let mut m = CMatrix::zeros(size, size);
        for row in 0..size {
            let out = self.digits(row, factors);
            for ci in 0..d {
                for cj in 0..d {
                    let mut inn = out.clone();
                    inn[i] = ci;
                    inn[j] = cj;
                    let v = self.matrix[(out[i] * d + out[j], ci * d + cj)];
                    if v != ZERO {
                        m[(row, self.index(&inn))] = v;
                    }
                }
            }
        }
        Ok(TensorOperator { dim: d, factors, matrix: m })
    }

    /// Trace over leg `leg` (1-based).
    pub fn partial_trace(&self, leg: usize) -> Result<TensorOperator, RMatrixError> {
        if leg == 0 || leg > self.factors || self.factors < 2 {
            return Err(RMatrixError::BadLegs(leg, leg, self.factors));
        }
        let k = leg - 1;
        let d = self.dim;
        let rest = self.factors - 1;
        let size = d.pow(rest as u32);
        let mut m = CMatrix::zeros(size, size);
        for row in 0..size {
            for col in 0..size {
                let ro = self.digits(row, rest);
                let co = self.digits(col, rest);
                let mut acc = ZERO;
                for t in 0..d {
                    let mut fr = ro.clone();
                    fr.insert(k, t);
                    let mut fc = co.clone();
                    fc.insert(k, t);
                    acc += self.matrix[(self.index(&fr), self.index(&fc))];
                }
                m[(row, col)] = acc;
            }
        }
        Ok(TensorOperator { dim: d, factors: rest, matrix: m })
    }

    pub fn op_norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `r(λ, z)` on `V ⊗ V`.
pub fn felder_r(rep: &SlRep, ctx: &EllipticContext, lambda: &DynamicalPoint, z: C64) -> Result<TensorOperator, RMatrixError> {
    let rho = ctx.rho(z)?;
    rep.assemble(rho, |r| Ok(ctx.sigma(-rep.root_value(r, &lambda.lambda), z)?))
}

/// `∂r(λ, z)/∂λ_k`: only the `σ` terms depend on `λ`.
pub fn dyn_derivative(
    rep: &SlRep,
    ctx: &EllipticContext,
    lambda: &DynamicalPoint,
    z: C64,
    k: usize,
) -> Result<TensorOperator, RMatrixError> {
    if k >= rep.rank() {
        return Err(RMatrixError::Dimension { expected: rep.rank(), got: k + 1 });
    }
    ctx.rho(z)?;
    rep.assemble(ZERO, |r| {
        let w = -rep.root_value(r, &lambda.lambda);
        Ok(ctx.sigma_dw(w, z)? * (-r.alpha[k]))
    })
}

/// Central-difference approximation of [`dyn_derivative`] with step `h`.
pub fn dyn_derivative_fd(
    rep: &SlRep,
    ctx: &EllipticContext,
    lambda: &DynamicalPoint,
    z: C64,
    k: usize,
    h: f64,
) -> Result<TensorOperator, RMatrixError> {
    if k >= rep.rank() {
        return Err(RMatrixError::Dimension { expected: rep.rank(), got: k + 1 });
    }
    let step = C64::new(h, 0.0);
    let plus = felder_r(rep, ctx, &lambda.shifted(k, step), z)?;
    let minus = felder_r(rep, ctx, &lambda.shifted(k, -step), z)?;
    let matrix = (plus.matrix - minus.matrix) / C64::new(2.0 * h, 0.0);
    Ok(TensorOperator { dim: rep.dim(), factors: 2, matrix })
}

/// `‖r^{12}(λ, z) + P r(λ, −z) P‖`.
pub fn antisymmetry_residual(rep: &SlRep, ctx: &EllipticContext, lambda: &DynamicalPoint, z: C64) -> Result<f64, RMatrixError> {
    let r = felder_r(rep, ctx, lambda, z)?;
    let rm = felder_r(rep, ctx, lambda, -z)?;
    let p = TensorOperator::swap(rep.dim()).matrix;
    Ok(operator_norm(&(r.matrix + &p * rm.matrix * &p)))
}

/// `(1/2πi) ∮ r(λ, z) dz` around the origin.
pub fn residue_at_zero(
    rep: &SlRep,
    ctx: &EllipticContext,
    lambda: &DynamicalPoint,
    radius: f64,
    nodes: usize,
) -> Result<TensorOperator, RMatrixError> {
    let size = rep.dim() * rep.dim();
    let mut acc = CMatrix::zeros(size, size);
    for (z, w) in contour_nodes(ZERO, radius, nodes) {
        acc += felder_r(rep, ctx, lambda, z)?.matrix * w;
    }
    Ok(TensorOperator { dim: rep.dim(), factors: 2, matrix: acc })
}

/// CDYBE residuals with the dynamical terms added (convention A) and
/// subtracted (convention B).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdybeResidual {
    pub convention_a: f64,
    pub convention_b: f64,
    pub cybe_norm: f64,
    pub dynamical_norm: f64,
}

/// Operator norms of `Σ_i x_i^{(1)} ∂r^{23}/∂λ_i + Σ_i x_i^{(2)} ∂r^{31}/∂λ_i
/// + Σ_i x_i^{(3)} ∂r^{12}/∂λ_i ± ([r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}])`.
pub fn cdybe_residual(
    rep: &SlRep,
    ctx: &EllipticContext,
    lambda: &DynamicalPoint,
    z1: C64,
    z2: C64,
    z3: C64,
) -> Result<CdybeResidual, RMatrixError> {
    let r12 = felder_r(rep, ctx, lambda, z1 - z2)?.leg_embed((1, 2), 3)?.matrix;
    let r13 = felder_r(rep, ctx, lambda, z1 - z3)?.leg_embed((1, 3), 3)?.matrix;
    let r23 = felder_r(rep, ctx, lambda, z2 - z3)?.leg_embed((2, 3), 3)?.matrix;
    let cybe = commutator(&r12, &r13) + commutator(&r12, &r23) + commutator(&r13, &r23);

    let n = rep.dim();
    let id = CMatrix::identity(n, n);
    let size = n * n * n;
    let mut dynamical = CMatrix::zeros(size, size);
    for (k, x) in rep.cartan().iter().enumerate() {
        let x1 = TensorOperator::product(&[x.clone(), id.clone(), id.clone()]).matrix;
        let x2 = TensorOperator::product(&[id.clone(), x.clone(), id.clone()]).matrix;
        let x3 = TensorOperator::product(&[id.clone(), id.clone(), x.clone()]).matrix;
        let d23 = dyn_derivative(rep, ctx, lambda, z2 - z3, k)?.leg_embed((2, 3), 3)?.matrix;
        let d31 = dyn_derivative(rep, ctx, lambda, z3 - z1, k)?.leg_embed((3, 1), 3)?.matrix;
        let d12 = dyn_derivative(rep, ctx, lambda, z1 - z2, k)?.leg_embed((1, 2), 3)?.matrix;
        dynamical += x1 * d23 + x2 * d31 + x3 * d12;
    }
    Ok(CdybeResidual {
        convention_a: operator_norm(&(&cybe + &dynamical)),
        convention_b: operator_norm(&(&cybe - &dynamical)),
        cybe_norm: operator_norm(&cybe),
        dynamical_norm: operator_norm(&dynamical),
    })
}

/// Random `λ` with `Im⟨α_k, λ⟩ / Im τ` in a band for each simple root `α_k`,
/// chosen so every positive root also stays within `[lo, 0.4]` of `Im τ`.
pub fn sample_dynamical_point<R: Rng + ?Sized>(
    rep: &SlRep,
    ctx: &EllipticContext,
    rng: &mut R,
) -> Result<DynamicalPoint, RMatrixError> {
    let r = rep.rank();
    let hi = 0.4 / r as f64;
    let lo = (0.1f64).min(hi / 2.0);
    let im_tau = ctx.tau().im;
    let targets: Vec<C64> = (0..r)
        .map(|_| C64::new(rng.random_range(-0.5..0.5), rng.random_range(lo..hi) * im_tau))
        .collect();
    let simple: Vec<&RootVector> = (0..r)
        .map(|k| rep.roots().iter().find(|v| v.i == k && v.j == k + 1).expect("simple root present"))
        .collect();
    let a = CMatrix::from_fn(r, r, |row, col| C64::new(simple[row].alpha[col], 0.0));
    let b = DVector::from_vec(targets);
    let sol = a.lu().solve(&b).ok_or(RMatrixError::Sampling)?;
    DynamicalPoint::new(rep, ctx, sol.iter().copied().collect())
}

/// Three spectral parameters in the disk `|z| ≤ 0.3` with pairwise
/// separation at least `0.1`.
pub fn sample_spectral_triple<R: Rng + ?Sized>(rng: &mut R) -> [C64; 3] {
    loop {
        let pts: Vec<C64> = (0..3)
            .map(|_| C64::from_polar(0.3 * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let ok = (0..3).all(|i| (i + 1..3).all(|j| (pts[i] - pts[j]).norm() >= 0.1));
        if ok {
            return [pts[0], pts[1], pts[2]];
        }
    }
}

/// Random traceless matrix with entries uniform in the unit square.
pub fn random_sl_element<R: Rng + ?Sized>(rep: &SlRep, rng: &mut R) -> CMatrix {
    let n = rep.dim();
    let m = CMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    rep.traceless(&m)
}

/// An `sl_n`-valued function on a punctured neighbourhood of the origin.
pub trait LoopElement {
    fn eval(&self, z: C64) -> Result<CMatrix, RMatrixError>;
}

/// `Σ_k c_k z^k` with finitely many (possibly negative) powers.
#[derive(Debug, Clone)]
pub struct LaurentElement {
    pub terms: Vec<(i32, CMatrix)>,
}

impl LaurentElement {
    pub fn new(terms: Vec<(i32, CMatrix)>) -> Self {
        LaurentElement { terms }
    }

    pub fn monomial(power: i32, coefficient: CMatrix) -> Self {
        LaurentElement { terms: vec![(power, coefficient)] }
    }

    /// Random traceless coefficients for every power in `powers`.
    pub fn random<R: Rng + ?Sized>(rep: &SlRep, powers: std::ops::RangeInclusive<i32>, rng: &mut R) -> Self {
        LaurentElement { terms: powers.map(|k| (k, random_sl_element(rep, rng))).collect() }
    }
}

impl LoopElement for LaurentElement {
    fn eval(&self, z: C64) -> Result<CMatrix, RMatrixError> {
        let n = self.terms.first().map_or(0, |(_, c)| c.nrows());
        let mut acc = CMatrix::zeros(n, n);
        for (k, c) in &self.terms {
            acc += c * z.powi(*k);
        }
        Ok(acc)
    }
}

/// Wraps a closure as a loop element.
pub struct FnElement<F>(pub F);

impl<F> LoopElement for FnElement<F>
where
    F: Fn(C64) -> Result<CMatrix, RMatrixError>,
{
    fn eval(&self, z: C64) -> Result<CMatrix, RMatrixError> {
        (self.0)(z)
    }
}

/// `f = f₊ + f₀ + f₋` evaluated at one point.
#[derive(Debug, Clone)]
pub struct Split {
    pub plus: CMatrix,
    pub zero: CMatrix,
    pub minus: CMatrix,
}

/// Projections built from the kernel `r(λ, z − z')` on a circle around 0.
#[derive(Debug, Clone)]
pub struct Projector<'a> {
    rep: &'a SlRep,
    ctx: &'a EllipticContext,
    lambda: &'a DynamicalPoint,
    radius: f64,
    nodes: usize,
}

impl<'a> Projector<'a> {
    pub fn new(rep: &'a SlRep, ctx: &'a EllipticContext, lambda: &'a DynamicalPoint) -> Self {
        Projector { rep, ctx, lambda, radius: CONTOUR_RADIUS, nodes: CONTOUR_NODES }
    }

    pub fn with_contour(mut self, radius: f64, nodes: usize) -> Self {
        self.radius = radius;
        self.nodes = nodes;
        self
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `(id ⊗ ⟨·, f⟩) r(λ, z − z')`: the `e_α` component of the result is
    /// `σ_{−⟨α,λ⟩}(z − z')` times the `e_α` entry of `f`, the Cartan part is
    /// `ρ(z − z')` times the Cartan projection of `f`.
    fn kernel_apply(&self, u: C64, fz: &CMatrix) -> Result<CMatrix, RMatrixError> {
        let n = self.rep.dim();
        let rho = self.ctx.rho(u)?;
        let coords: Vec<C64> = self.rep.cartan_coords(fz).into_iter().map(|c| c * rho).collect();
        let mut out = self.rep.cartan_element(&coords);
        for r in self.rep.roots() {
            let entry = fz[(r.i, r.j)];
            if entry != ZERO {
                let w = -self.rep.root_value(r, &self.lambda.lambda);
                out[(r.i, r.j)] = self.ctx.sigma(w, u)? * entry;
            }
        }
        debug_assert_eq!(out.nrows(), n);
        Ok(out)
    }

    fn check_inside(&self, zp: C64) -> Result<(), RMatrixError> {
        if zp.norm() >= self.radius {
            return Err(RMatrixError::OutsideContour(zp, self.radius));
        }
        Ok(())
    }

    fn samples(&self, f: &dyn LoopElement) -> Result<Vec<(C64, C64, CMatrix)>, RMatrixError> {
        contour_nodes(ZERO, self.radius, self.nodes)
            .map(|(z, w)| {
                let v = f.eval(z)?;
                if v.iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
                    return Err(RMatrixError::Elliptic(EllipticError::NonFinite(z)));
                }
                Ok((z, w, v))
            })
            .collect()
    }

    /// `P₊f(z') = (1/2πi) ∮ (id ⊗ ⟨·, f(z)⟩) r(λ, z − z') dz`.
    pub fn plus(&self, f: &dyn LoopElement, zp: C64) -> Result<CMatrix, RMatrixError> {
        self.check_inside(zp)?;
        let n = self.rep.dim();
        let mut acc = CMatrix::zeros(n, n);
        for (z, w, v) in self.samples(f)? {
            acc += self.kernel_apply(z - zp, &v)? * w;
        }
        Ok(acc)
    }

    /// `f₀(z') = Σ_i res_0 ⟨x_i, f⟩ · ρ(z') x_i`.
    pub fn zero(&self, f: &dyn LoopElement, zp: C64) -> Result<CMatrix, RMatrixError> {
        let mut res = vec![ZERO; self.rep.rank()];
        for (_, w, v) in self.samples(f)? {
            for (r, c) in res.iter_mut().zip(self.rep.cartan_coords(&v)) {
                *r += c * w;
            }
        }
        let rho = self.ctx.rho(zp)?;
        let coords: Vec<C64> = res.into_iter().map(|c| c * rho).collect();
        Ok(self.rep.cartan_element(&coords))
    }

    pub fn split(&self, f: &dyn LoopElement, zp: C64) -> Result<Split, RMatrixError> {
        let plus = self.plus(f, zp)?;
        let zero = self.zero(f, zp)?;
        let minus = f.eval(zp)? - &plus - &zero;
        Ok(Split { plus, zero, minus })
    }

    /// `R f = P₊ f − f / 2`.
    pub fn r_operator(&self, f: &dyn LoopElement, zp: C64) -> Result<CMatrix, RMatrixError> {
        Ok(self.plus(f, zp)? - f.eval(zp)? * C64::new(0.5, 0.0))
    }

    /// `(1/2πi) ∮ tr(f(z) g(z)) dz` on this projector's contour.
    pub fn pairing(&self, f: &dyn LoopElement, g: &dyn LoopElement) -> Result<C64, RMatrixError> {
        let mut acc = ZERO;
        for (z, w) in contour_nodes(ZERO, self.radius, self.nodes) {
            acc += (f.eval(z)? * g.eval(z)?).trace() * w;
        }
        Ok(acc)
    }
}

/// `P₊f` as a loop element, valid strictly inside the projector's contour.
pub struct ProjectedPlus<'p, 'a> {
    pub projector: &'p Projector<'a>,
    pub f: &'p dyn LoopElement,
}

impl LoopElement for ProjectedPlus<'_, '_> {
    fn eval(&self, z: C64) -> Result<CMatrix, RMatrixError> {
        self.projector.plus(self.f, z)
    }
}

/// `R f` as a loop element, valid strictly inside the projector's contour.
pub struct RApplied<'p, 'a> {
    pub projector: &'p Projector<'a>,
    pub f: &'p dyn LoopElement,
}

impl LoopElement for RApplied<'_, '_> {
    fn eval(&self, z: C64) -> Result<CMatrix, RMatrixError> {
        self.projector.r_operator(self.f, z)
    }
}
