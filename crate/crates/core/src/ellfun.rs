//! Elliptic functions on `C / (Z + τZ)` and divisor arithmetic on the curve.
//!
//! `θ₁(z) = 2 Σ_{n≥0} (−1)^n q^{(n+½)²} sin((2n+1)πz)` with nome `q = e^{iπτ}`.
//! This normalization satisfies `θ₁(z+1) = −θ₁(z)` and
//! `θ₁(z+τ) = θ₁(z) e^{−2πiz} e^{−πi(τ+1)}`.
//!
//! Derived functions:
//! - `σ_w(z) = θ₁(w−z) θ₁'(0) / (θ₁(z) θ₁(w))`, 1-periodic, multiplier `e^{2πiw}` under `z ↦ z+τ`;
//! - `ρ(z) = θ₁'(z) / θ₁(z)`, 1-periodic, `ρ(z+τ) = ρ(z) − 2πi`.
//!
//! Contour integrals carry the `1/(2πi)` normalization.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type C64 = Complex64;

/// Evaluation refused closer than this to a lattice point.
pub const POLE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    #[error("modulus must have positive imaginary part, got {0}")]
    BadModulus(C64),
    #[error("theta series did not converge within {0} terms")]
    SeriesCap(usize),
    #[error("{what} = {at} lies within {dist:.3e} of a lattice point")]
    PoleProximity { what: &'static str, at: C64, dist: f64 },
    #[error("non-finite sample at {0} in contour integral")]
    NonFinite(C64),
    #[error("derivative order {0} not supported")]
    DerivativeOrder(u32),
}

#[derive(Debug, Clone, Copy)]
pub struct EllipticContext {
    tau: C64,
    nome: C64,
    truncation_tolerance: f64,
    max_terms: usize,
    theta_prime_zero: C64,
}

impl EllipticContext {
    pub fn new(tau: C64) -> Result<Self, EllipticError> {
        Self::with_policy(tau, 1e-17, 400)
    }

    pub fn with_policy(tau: C64, truncation_tolerance: f64, max_terms: usize) -> Result<Self, EllipticError> {
        if !(tau.im > 0.0) || !tau.re.is_finite() {
            return Err(EllipticError::BadModulus(tau));
        }
        let nome = (C64::i() * PI * tau).exp();
        let mut ctx = EllipticContext { tau, nome, truncation_tolerance, max_terms, theta_prime_zero: C64::new(0.0, 0.0) };
        ctx.theta_prime_zero = ctx.series(C64::new(0.0, 0.0), 1)?;
        Ok(ctx)
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    /// Lattice coordinates `(a, b)` with `z = a + bτ`.
    pub fn lattice_coords(&self, z: C64) -> (f64, f64) {
        let b = z.im / self.tau.im;
        (z.re - b * self.tau.re, b)
    }

    pub fn from_lattice_coords(&self, a: f64, b: f64) -> C64 {
        C64::new(a, 0.0) + self.tau * b
    }

    /// Distance from `z` to the nearest point of `Z + τZ`.
    pub fn lattice_distance(&self, z: C64) -> f64 {
        let (a, b) = self.lattice_coords(z);
        let (a0, b0) = (a.round(), b.round());
        let mut best = f64::INFINITY;
        for da in -1..=1 {
            for db in -1..=1 {
                let p = self.from_lattice_coords(a0 + da as f64, b0 + db as f64);
                best = best.min((z - p).norm());
            }
        }
        best
    }

    fn check_pole(&self, what: &'static str, z: C64) -> Result<(), EllipticError> {
        let dist = self.lattice_distance(z);
        if dist < POLE_THRESHOLD {
            Err(EllipticError::PoleProximity { what, at: z, dist })
        } else {
            Ok(())
        }
    }

    fn series(&self, z: C64, order: u32) -> Result<C64, EllipticError> {
        let ln_q = self.nome.ln();
        let y = z.im.abs();
        let shift = order as f64 * PI / 2.0;
        let mut sum = C64::new(0.0, 0.0);
        let mut max_bound = 0.0f64;
        for n in 0..self.max_terms {
            let nf = n as f64;
            let omega = (2.0 * nf + 1.0) * PI;
            let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
            let coef = (ln_q * (nf + 0.5).powi(2)).exp() * sign * omega.powi(order as i32);
            let bound = coef.norm() * (omega * y).cosh();
            sum += coef * (z * omega + shift).sin();
            max_bound = max_bound.max(bound);
            if n > 0 && bound <= self.truncation_tolerance * max_bound {
                return Ok(sum);
            }
        }
        Err(EllipticError::SeriesCap(self.max_terms))
    }

    pub fn theta1(&self, z: C64) -> Result<C64, EllipticError> {
        self.series(z, 0)
    }

    /// `d^k θ₁ / dz^k` for `k ∈ {0, 1, 2, 3}` by termwise differentiation.
    pub fn theta1_derivative(&self, z: C64, order: u32) -> Result<C64, EllipticError> {
        if order > 3 {
            return Err(EllipticError::DerivativeOrder(order));
        }
        self.series(z, order)
    }

    pub fn rho(&self, z: C64) -> Result<C64, EllipticError> {
        self.check_pole("z", z)?;
        Ok(self.theta1_derivative(z, 1)? / self.theta1(z)?)
    }

    pub fn sigma(&self, w: C64, z: C64) -> Result<C64, EllipticError> {
        self.check_pole("z", z)?;
        self.check_pole("w", w)?;
        let t0 = self.theta_prime_zero;
        Ok(self.theta1(w - z)? * t0 / (self.theta1(z)? * self.theta1(w)?))
    }

    /// `∂σ_w(z)/∂w = θ₁'(0) [θ₁'(w−z) θ₁(w) − θ₁(w−z) θ₁'(w)] / (θ₁(z) θ₁(w)²)`.
    pub fn sigma_dw(&self, w: C64, z: C64) -> Result<C64, EllipticError> {
        self.check_pole("z", z)?;
        self.check_pole("w", w)?;
        let t0 = self.theta_prime_zero;
        let tw = self.theta1(w)?;
        let num = self.theta1_derivative(w - z, 1)? * tw - self.theta1(w - z)? * self.theta1_derivative(w, 1)?;
        Ok(t0 * num / (self.theta1(z)? * tw * tw))
    }

    /// Reduce a point to the fundamental parallelogram.
    pub fn point(&self, z: C64) -> EllipticPoint {
        let (a, b) = self.lattice_coords(z);
        EllipticPoint::new(a, b)
    }

    /// Distance on the torus between two points.
    pub fn torus_distance(&self, p: EllipticPoint, q: EllipticPoint) -> f64 {
        let d = self.from_lattice_coords(p.a - q.a, p.b - q.b);
        self.lattice_distance(d)
    }

    pub fn abel_sum(&self, d: &EllipticDivisor) -> EllipticPoint {
        d.abel_sum()
    }

    /// `deg D1 = deg D2` and equal Abel sums modulo the lattice (within `tol`).
    pub fn linearly_equivalent(&self, d1: &EllipticDivisor, d2: &EllipticDivisor, tol: f64) -> bool {
        d1.degree() == d2.degree() && self.torus_distance(d1.abel_sum(), d2.abel_sum()) <= tol
    }

    /// All `x` with `n·x ≡ p`: `n²` points.
    pub fn divide_point(&self, p: EllipticPoint, n: u32) -> Vec<EllipticPoint> {
        let nf = n as f64;
        let mut out = Vec::with_capacity((n * n) as usize);
        for i in 0..n {
            for j in 0..n {
                out.push(EllipticPoint::new((p.a + i as f64) / nf, (p.b + j as f64) / nf));
            }
        }
        out
    }

    /// Points within `tol` of each other are merged.
    pub fn distinct_points(&self, pts: &[EllipticPoint], tol: f64) -> Vec<EllipticPoint> {
        let mut out: Vec<EllipticPoint> = Vec::new();
        for p in pts {
            if out.iter().all(|q| self.torus_distance(*p, *q) > tol) {
                out.push(*p);
            }
        }
        out
    }
}

/// A point `a + bτ` of the curve, stored with `0 ≤ a, b < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticPoint {
    pub a: f64,
    pub b: f64,
}

fn frac(x: f64) -> f64 {
    let f = x.rem_euclid(1.0);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl EllipticPoint {
    pub fn new(a: f64, b: f64) -> Self {
        EllipticPoint { a: frac(a), b: frac(b) }
    }

    pub fn origin() -> Self {
        EllipticPoint { a: 0.0, b: 0.0 }
    }

    pub fn to_complex(self, tau: C64) -> C64 {
        C64::new(self.a, 0.0) + tau * self.b
    }

    pub fn add(self, other: EllipticPoint) -> Self {
        EllipticPoint::new(self.a + other.a, self.b + other.b)
    }

    pub fn scale(self, m: i64) -> Self {
        EllipticPoint::new(self.a * m as f64, self.b * m as f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EllipticDivisor {
    pub entries: Vec<(EllipticPoint, i64)>,
}

impl EllipticDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, p: EllipticPoint, m: i64) {
        if m != 0 {
            self.entries.push((p, m));
        }
    }

    pub fn with(mut self, p: EllipticPoint, m: i64) -> Self {
        self.push(p, m);
        self
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Σ m·p reduced modulo the lattice.
    pub fn abel_sum(&self) -> EllipticPoint {
        // accumulate in lattice coordinates before reducing
        let (a, b) = self
            .entries
            .iter()
            .fold((0.0, 0.0), |(a, b), (p, m)| (a + p.a * *m as f64, b + p.b * *m as f64));
        EllipticPoint::new(a, b)
    }

    pub fn concat(&self, other: &EllipticDivisor) -> EllipticDivisor {
        let mut d = self.clone();
        d.entries.extend(other.entries.iter().copied());
        d
    }
}

/// Nodes `z_k` and weights `w_k` with `(1/2πi)∮ f dz ≈ Σ w_k f(z_k)` on the
/// circle `|z − center| = radius` (trapezoidal rule).
pub fn contour_nodes(center: C64, radius: f64, nodes: usize) -> impl Iterator<Item = (C64, C64)> {
    let n = nodes as f64;
    (0..nodes).map(move |k| {
        let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / n);
        (center + e * radius, e * radius / n)
    })
}

/// `(1/2πi) ∮ f(z) dz` over the circle of `radius` around `center`.
pub fn contour_residue<F>(f: F, center: C64, radius: f64, nodes: usize) -> Result<C64, EllipticError>
where
    F: Fn(C64) -> C64,
{
    let mut acc = C64::new(0.0, 0.0);
    for (z, w) in contour_nodes(center, radius, nodes) {
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(EllipticError::NonFinite(z));
        }
        acc += w * v;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EllipticContext {
        EllipticContext::new(C64::new(0.0, 1.0)).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(EllipticContext::new(C64::new(0.3, -0.1)).is_err());
        assert!(EllipticContext::new(C64::new(0.3, 0.0)).is_err());
    }

    #[test]
    fn theta_vanishes_at_origin() {
        let c = ctx();
        assert_eq!(c.theta1(C64::new(0.0, 0.0)).unwrap().norm(), 0.0);
        assert!(c.theta1_derivative(C64::new(0.0, 0.0), 1).unwrap().norm() > 0.1);
        assert!(c.theta1_derivative(C64::new(0.0, 0.0), 2).unwrap().norm() < 1e-12);
    }

    #[test]
    fn sigma_zero_at_w() {
        let c = ctx();
        let w = C64::new(0.21, 0.17);
        assert!(c.sigma(w, w).unwrap().norm() < 1e-13);
    }

    #[test]
    fn pole_proximity_is_an_error() {
        let c = ctx();
        assert!(matches!(c.rho(C64::new(1.0, 1e-9)), Err(EllipticError::PoleProximity { .. })));
        assert!(c.sigma(C64::new(0.0, 1.0), C64::new(0.3, 0.1)).is_err());
    }

    #[test]
    fn residue_of_simple_pole() {
        let r = contour_residue(|z| 1.0 / z, C64::new(0.0, 0.0), 0.1, 64).unwrap();
        assert!((r - 1.0).norm() < 1e-14);
        let r = contour_residue(|z| z * z + 3.0, C64::new(0.0, 0.0), 0.1, 64).unwrap();
        assert!(r.norm() < 1e-14);
    }

    #[test]
    fn residue_rejects_non_finite() {
        let r = contour_residue(|_| C64::new(f64::NAN, 0.0), C64::new(0.0, 0.0), 0.1, 8);
        assert!(matches!(r, Err(EllipticError::NonFinite(_))));
    }

    #[test]
    fn two_torsion_sums_to_zero() {
        let d = EllipticDivisor::new()
            .with(EllipticPoint::new(0.0, 0.0), 1)
            .with(EllipticPoint::new(0.5, 0.0), 1)
            .with(EllipticPoint::new(0.0, 0.5), 1)
            .with(EllipticPoint::new(0.5, 0.5), 1);
        let c = ctx();
        assert!(c.torus_distance(d.abel_sum(), EllipticPoint::origin()) < 1e-15);
        assert!(c.torus_distance(EllipticDivisor::new().abel_sum(), EllipticPoint::origin()) == 0.0);
    }

    #[test]
    fn halving_gives_four_points() {
        let c = ctx();
        let s = EllipticPoint::new(0.3, 0.7);
        let xs = c.distinct_points(&c.divide_point(s, 2), 1e-9);
        assert_eq!(xs.len(), 4);
        for x in xs {
            assert!(c.torus_distance(x.scale(2), s) < 1e-12);
        }
    }
}
