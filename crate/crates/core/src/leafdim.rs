//! Dimension bookkeeping for symplectic leaves and Hecke correspondences
//! from singularity data: a finite assignment of W-orbits of cocharacters
//! to points of an elliptic curve.
//!
//! Every datum stores the *dominant* representative of its orbit. Formulas
//! written for an antidominant representative (`γ`, the divisors `S_i`)
//! negate internally.

pub mod catalog;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ellfun::{EllipticContext, EllipticDivisor, EllipticError, EllipticPoint};
use crate::lattice::{QuotientElement, QuotientGroup};
use crate::rootsys::{dot, reflect, solve_in_span, LatticeVector, QVec, RootSystem, RootSystemError, Q};

/// Points closer than this on the torus count as the same point.
pub const POINT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LeafError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error("invalid cocharacter lattice: {0}")]
    InvalidLattice(String),
    #[error("coweight {0:?} is not in the cocharacter lattice of the group")]
    NotInLattice(Vec<String>),
    #[error("points {0} and {1} coincide modulo the period lattice")]
    DuplicatePoint(usize, usize),
    #[error("weight set is not W-invariant")]
    WeightsNotInvariant,
    #[error("non-integral quantity {0} where an integer is required")]
    NonIntegral(String),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

/// How the cocharacter lattice `Ch(T)*` sits in the ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeModel {
    /// The coroot lattice.
    SimplyConnected,
    /// The full coweight lattice.
    Adjoint,
    /// The ambient integer lattice `Z^d` (`GL(n)`, `SO(n)`, `Sp(2n)` in ε-coordinates).
    Integral,
    /// User-supplied basis.
    Custom,
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    root_system: RootSystem,
    center_dim: usize,
    model: LatticeModel,
    basis: Vec<QVec>,
    pi1: QuotientGroup,
}

impl GroupSpec {
    pub fn new(root_system: RootSystem, center_dim: usize, model: LatticeModel) -> Result<Self, LeafError> {
        let basis = match model {
            LatticeModel::SimplyConnected => root_system.simple_coroots(),
            LatticeModel::Adjoint => root_system.fundamental_coweights().to_vec(),
            LatticeModel::Integral => {
                let d = root_system.ambient_dim();
                (0..d)
                    .map(|i| (0..d).map(|j| if i == j { Q::from_integer(1) } else { Q::zero() }).collect())
                    .collect()
            }
            LatticeModel::Custom => {
                return Err(LeafError::InvalidLattice("custom lattices need an explicit basis".into()))
            }
        };
        Self::build(root_system, center_dim, model, basis)
    }

    /// A lattice spanned by the given ambient vectors.
    pub fn with_basis(root_system: RootSystem, center_dim: usize, basis: Vec<QVec>) -> Result<Self, LeafError> {
        Self::build(root_system, center_dim, LatticeModel::Custom, basis)
    }

    fn build(root_system: RootSystem, center_dim: usize, model: LatticeModel, basis: Vec<QVec>) -> Result<Self, LeafError> {
        let rank = root_system.rank();
        if basis.len() != rank + center_dim {
            return Err(LeafError::InvalidLattice(format!(
                "lattice has rank {}, torus has dimension {}",
                basis.len(),
                rank + center_dim
            )));
        }
        if center_dim > 0 && !root_system.is_gl_style() {
            return Err(LeafError::InvalidLattice(
                "a nontrivial center needs an ambient space with a central direction".into(),
            ));
        }
        for b in &basis {
            if b.len() != root_system.ambient_dim() {
                return Err(LeafError::InvalidLattice("basis vector has wrong dimension".into()));
            }
            if root_system.simple_roots().iter().any(|a| !dot(a, b).is_integer()) {
                return Err(LeafError::InvalidLattice("basis vector pairs non-integrally with a root".into()));
            }
        }
        let mut relations = vec![vec![0i128; rank]; basis.len()];
        for (j, c) in root_system.simple_coroots().iter().enumerate() {
            let coords = integral_coords(&basis, c)
                .ok_or_else(|| LeafError::InvalidLattice("coroot lattice is not contained in the lattice".into()))?;
            for (i, x) in coords.into_iter().enumerate() {
                relations[i][j] = x;
            }
        }
        let pi1 = QuotientGroup::new(&relations);
        Ok(GroupSpec { root_system, center_dim, model, basis, pi1 })
    }

    /// `GL(n)`: gl-style `A_{n−1}`, center of dimension 1, lattice `Z^n`.
    pub fn gl(n: usize) -> Result<Self, LeafError> {
        Self::new(RootSystem::gl(n)?, 1, LatticeModel::Integral)
    }

    pub fn sl(n: usize) -> Result<Self, LeafError> {
        Self::new(RootSystem::from_type(crate::Family::A, n - 1)?, 0, LatticeModel::SimplyConnected)
    }

    pub fn pgl(n: usize) -> Result<Self, LeafError> {
        Self::new(RootSystem::from_type(crate::Family::A, n - 1)?, 0, LatticeModel::Adjoint)
    }

    /// `SO(2n)`, `n ≥ 2`: type `D_n` with cocharacters `Z^n`.
    pub fn so_even(n: usize) -> Result<Self, LeafError> {
        Self::new(RootSystem::so_even(n)?, 0, LatticeModel::Integral)
    }

    /// `PO(2n)`, `n ≥ 2`: type `D_n`, adjoint.
    pub fn po_even(n: usize) -> Result<Self, LeafError> {
        Self::new(RootSystem::so_even(n)?, 0, LatticeModel::Adjoint)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    pub fn model(&self) -> LatticeModel {
        self.model
    }

    pub fn lattice_basis(&self) -> &[QVec] {
        &self.basis
    }

    /// `π₁(G) = Ch(T)* / (coroot lattice)`.
    pub fn fundamental_group(&self) -> &QuotientGroup {
        &self.pi1
    }

    /// Integer coordinates of `v` in the lattice basis, if `v` is in the lattice.
    pub fn lattice_coords(&self, v: &[Q]) -> Option<Vec<i128>> {
        integral_coords(&self.basis, v)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.lattice_coords(v).is_some()
    }
}

fn integral_coords(basis: &[QVec], v: &[Q]) -> Option<Vec<i128>> {
    let c = solve_in_span(basis, v)?;
    c.iter().map(|x| x.is_integer().then(|| x.to_integer() as i128)).collect()
}

#[derive(Debug, Clone)]
pub struct SingularityDatum {
    pub point: EllipticPoint,
    /// Dominant representative of the orbit, ambient coordinates.
    pub coweight: QVec,
}

#[derive(Debug, Clone)]
pub struct SingularityData {
    group: GroupSpec,
    tau: Complex64,
    data: Vec<SingularityDatum>,
}

impl SingularityData {
    pub fn new(group: GroupSpec, tau: Complex64, entries: Vec<(EllipticPoint, LatticeVector)>) -> Result<Self, LeafError> {
        let ctx = EllipticContext::new(tau)?;
        let mut data = Vec::with_capacity(entries.len());
        for (point, v) in entries {
            let amb = group.root_system.to_ambient(&v)?;
            if !group.contains(&amb) {
                return Err(LeafError::NotInLattice(amb.iter().map(|x| x.to_string()).collect()));
            }
            let coweight = group.root_system.dominant_ambient(&amb);
            data.push(SingularityDatum { point, coweight });
        }
        for i in 0..data.len() {
            for j in i + 1..data.len() {
                if ctx.torus_distance(data[i].point, data[j].point) < POINT_TOLERANCE {
                    return Err(LeafError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(SingularityData { group, tau, data })
    }

    pub fn empty(group: GroupSpec, tau: Complex64) -> Result<Self, LeafError> {
        Self::new(group, tau, Vec::new())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn data(&self) -> &[SingularityDatum] {
        &self.data
    }

    pub fn context(&self) -> EllipticContext {
        EllipticContext::new(self.tau).expect("modulus validated at construction")
    }

    /// Disjoint union of two data sets on the same group and curve.
    pub fn concat(&self, other: &SingularityData) -> Result<SingularityData, LeafError> {
        let entries = self
            .data
            .iter()
            .chain(&other.data)
            .map(|d| (d.point, LatticeVector::ambient(d.coweight.clone())))
            .collect();
        SingularityData::new(self.group.clone(), self.tau, entries)
    }
}

/// `Σ_α max{0, −α(a)}` over all roots.
pub fn gamma_root_sum(rs: &RootSystem, a: &[Q]) -> Q {
    rs.roots()
        .iter()
        .map(|alpha| -dot(alpha, a))
        .filter(|x| x.is_positive())
        .fold(Q::zero(), |acc, x| acc + x)
}

/// `γ(O)` for the orbit of `orbit_rep`: the loop-Grassmannian orbit dimension.
///
/// Evaluates `Σ_α max{0, −α(a)}` and `−2 a(δ)` for the representative `a`
/// with `−a` dominant and checks that they agree.
pub fn gamma(rs: &RootSystem, orbit_rep: &LatticeVector) -> Result<u64, LeafError> {
    let amb = rs.to_ambient(orbit_rep)?;
    gamma_ambient(rs, &amb)
}

pub(crate) fn gamma_ambient(rs: &RootSystem, v: &[Q]) -> Result<u64, LeafError> {
    let a: QVec = rs.dominant_ambient(v).into_iter().map(|x| -x).collect();
    let by_roots = gamma_root_sum(rs, &a);
    let by_delta = -Q::from_integer(2) * dot(&a, rs.weyl_vector());
    assert_eq!(by_roots, by_delta, "root sum and Weyl-vector pairing disagree");
    if !by_roots.is_integer() {
        return Err(LeafError::NonIntegral(by_roots.to_string()));
    }
    Ok(by_roots.to_integer() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dimension: u64,
    pub gamma: Vec<u64>,
    pub gamma_sum: u64,
    pub center_dim: usize,
    /// `Σγ` is expected even; reported, not enforced.
    pub gamma_sum_even: bool,
}

fn gammas(sd: &SingularityData) -> Result<Vec<u64>, LeafError> {
    let rs = sd.group.root_system();
    sd.data.iter().map(|d| gamma_ambient(rs, &d.coweight)).collect()
}

fn report(sd: &SingularityData, center_weight: u64) -> Result<DimensionReport, LeafError> {
    let gamma = gammas(sd)?;
    let gamma_sum: u64 = gamma.iter().sum();
    let center_dim = sd.group.center_dim();
    Ok(DimensionReport {
        dimension: center_weight * center_dim as u64 + gamma_sum,
        gamma,
        gamma_sum,
        center_dim,
        gamma_sum_even: gamma_sum % 2 == 0,
    })
}

/// `dim M(G, c, O) = 2 dim z + Σ_p γ(O_p)`.
pub fn leaf_dimension(sd: &SingularityData) -> Result<DimensionReport, LeafError> {
    report(sd, 2)
}

/// Hecke correspondence: `dim z + Σ_p γ(O_p)`.
pub fn hecke_dimension(sd: &SingularityData) -> Result<DimensionReport, LeafError> {
    report(sd, 1)
}

/// `2 + Σ_p Σ_i β_i(p) · i(n−i)` for `GL(n)`.
pub fn gl_leaf_dimension(n: usize, beta: &[Vec<u64>]) -> Result<u64, LeafError> {
    let mut total = 2u64;
    for b in beta {
        if b.len() != n - 1 {
            return Err(LeafError::CoefficientCount { expected: n - 1, got: b.len() });
        }
        for (i, c) in b.iter().enumerate() {
            let i = i as u64 + 1;
            total += c * i * (n as u64 - i);
        }
    }
    Ok(total)
}

/// Integral `gl_n` cocharacter `Σ_i β_i (ε_1 + … + ε_i)` lifting the dominant
/// weight `Σ β_i λ_i`.
pub fn gl_beta_to_coweight(n: usize, beta: &[u64]) -> QVec {
    let mut v = vec![Q::zero(); n];
    for (i, c) in beta.iter().enumerate() {
        for x in v.iter_mut().take(i + 1) {
            *x += Q::from_integer(*c as i64);
        }
    }
    v
}

/// Image of `Σ_p a_p` in `π₁(G)`. The image is independent of the orbit
/// representatives since `w(a) − a` is always a coroot combination.
pub fn pi1_image(sd: &SingularityData) -> Result<QuotientElement, LeafError> {
    let d = sd.group.basis.len();
    let mut total = vec![0i128; d];
    for datum in &sd.data {
        let c = sd
            .group
            .lattice_coords(&datum.coweight)
            .ok_or_else(|| LeafError::NotInLattice(datum.coweight.iter().map(|x| x.to_string()).collect()))?;
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    Ok(sd.group.fundamental_group().reduce(&total))
}

/// A divisor on the curve with rational coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QDivisor {
    pub entries: Vec<(EllipticPoint, Q)>,
}

impl QDivisor {
    pub fn degree(&self) -> Q {
        self.entries.iter().fold(Q::zero(), |acc, (_, c)| acc + *c)
    }

    pub fn is_effective(&self) -> bool {
        self.entries.iter().all(|(_, c)| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_zero())
    }
}

fn check_weights_invariant(rs: &RootSystem, weights: &[QVec]) -> Result<(), LeafError> {
    for w in weights {
        if w.len() != rs.ambient_dim() {
            return Err(LeafError::RootSystem(RootSystemError::Dimension {
                expected: rs.ambient_dim(),
                got: w.len(),
            }));
        }
    }
    for a in rs.simple_roots() {
        for w in weights {
            let r = reflect(w, a);
            if !weights.contains(&r) {
                return Err(LeafError::WeightsNotInvariant);
            }
        }
    }
    Ok(())
}

/// `D(O, ρ) = −Σ_p d_−(O_p, ρ) · p` with `d_−` the minimum of `w(a)` over the
/// weights of `ρ` and the orbit.
pub fn polar_divisor(sd: &SingularityData, rep_weights: &[QVec]) -> Result<QDivisor, LeafError> {
    let rs = sd.group.root_system();
    check_weights_invariant(rs, rep_weights)?;
    let entries = sd
        .data
        .iter()
        .map(|d| {
            // weights are W-invariant, so one orbit element suffices
            let min = rep_weights.iter().map(|w| dot(w, &d.coweight)).min().unwrap_or_else(Q::zero);
            (d.point, -min)
        })
        .collect();
    Ok(QDivisor { entries })
}

/// `S_i = Σ_p −λ_i(a_p) · p` with `−a_p` dominant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityDivisors {
    pub divisors: Vec<QDivisor>,
    pub total_degree: Q,
    pub half_gamma_sum: Q,
}

pub fn singularity_divisors(sd: &SingularityData) -> Result<SingularityDivisors, LeafError> {
    let rs = sd.group.root_system();
    let divisors: Vec<QDivisor> = rs
        .fundamental_weights()
        .iter()
        .map(|l| QDivisor {
            entries: sd
                .data
                .iter()
                .map(|d| {
                    // −λ_i(a_p) with a_p = −(dominant rep)
                    (d.point, dot(l, &d.coweight))
                })
                .collect(),
        })
        .collect();
    let total_degree = divisors.iter().fold(Q::zero(), |acc, s| acc + s.degree());
    let gamma_sum: u64 = gammas(sd)?.iter().sum();
    let half_gamma_sum = Q::new(gamma_sum as i64, 2);
    assert_eq!(total_degree, half_gamma_sum, "Σ deg S_i must equal ½ Σ γ");
    Ok(SingularityDivisors { divisors, total_degree, half_gamma_sum })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetDivisorCheck {
    /// `Σ_p [Σ_w max{0, −w(a_p)}] · p`
    pub negative_part: EllipticDivisor,
    /// `Σ_p [Σ_w max{0, w(a_p)}] · p`
    pub positive_part: EllipticDivisor,
    pub equivalent: bool,
}

fn integral(x: Q) -> Result<i64, LeafError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(LeafError::NonIntegral(x.to_string()))
    }
}

/// Non-emptiness test: the zero and polar divisors of `det ρ(φ)` must be
/// linearly equivalent on the curve.
pub fn det_divisor_check(sd: &SingularityData, rep_weights: &[QVec], tol: f64) -> Result<DetDivisorCheck, LeafError> {
    let rs = sd.group.root_system();
    check_weights_invariant(rs, rep_weights)?;
    let mut negative_part = EllipticDivisor::new();
    let mut positive_part = EllipticDivisor::new();
    for d in &sd.data {
        let (mut neg, mut pos) = (Q::zero(), Q::zero());
        for w in rep_weights {
            let x = dot(w, &d.coweight);
            if x.is_negative() {
                neg -= x;
            } else {
                pos += x;
            }
        }
        negative_part.push(d.point, integral(neg)?);
        positive_part.push(d.point, integral(pos)?);
    }
    let equivalent = sd.context().linearly_equivalent(&negative_part, &positive_part, tol);
    Ok(DetDivisorCheck { negative_part, positive_part, equivalent })
}
