//! Exact root systems of the irreducible Cartan types.
//!
//! Every vector lives in an ambient Euclidean space with rational
//! coordinates and the standard dot product. Simple roots follow the
//! Bourbaki numbering:
//!
//! | type | simple roots |
//! |------|--------------|
//! | `A_n` | `α_i = e_i − e_{i+1}` in `Q^{n+1}` (trace-zero hyperplane) |
//! | `B_n` | `α_i = e_i − e_{i+1}`, `α_n = e_n` |
//! | `C_n` | `α_i = e_i − e_{i+1}`, `α_n = 2e_n` |
//! | `D_n` | `α_i = e_i − e_{i+1}`, `α_n = e_{n−1} + e_n` |
//! | `E_8` | `α_1 = ½(e_1+e_8) − ½(e_2+…+e_7)`, `α_2 = e_1+e_2`, `α_k = e_{k−1} − e_{k−2}` (k ≥ 3) |
//! | `E_7`, `E_6` | the first 7 (resp. 6) simple roots of `E_8`, same ambient space |
//! | `F_4` | `e_2−e_3`, `e_3−e_4`, `e_4`, `½(e_1−e_2−e_3−e_4)` |
//! | `G_2` | `e_1−e_2` (short), `−2e_1+e_2+e_3` (long) |
//!
//! Long roots of simply-laced types have squared length 2.
//!
//! `A_{n−1}` can also be built in "gl style" ([`RootSystem::gl`]): the same
//! roots, but the ambient `Q^n` is understood to carry the central direction
//! `e_1 + … + e_n`, so cocharacters such as `(1, 0, …, 0)` are legal. Vectors
//! with a central component have no fundamental-coweight coordinates and the
//! conversion refuses them instead of projecting silently.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational scalar.
pub type Q = Ratio<i64>;

/// A vector of exact rationals in ambient coordinates.
pub type QVec = Vec<Q>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidCartanType { family: Family, rank: usize },
    #[error("cannot parse Cartan type from {0:?}")]
    Parse(String),
    #[error("vector has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: &'static str, got: Basis },
    #[error("vector is not in the span of the roots (it has a central component)")]
    NotInRootSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootSystemError::Parse(s.to_string())),
        }
    }
}

/// An irreducible Cartan type such as `E6` or `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootSystemError::InvalidCartanType { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All types with rank in `1..=max_rank`, classical families first.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() < 2 {
            return Err(RootSystemError::Parse(s.to_string()));
        }
        let (fam, rank) = s.split_at(1);
        let family: Family = fam.parse()?;
        let rank: usize = rank
            .trim_start_matches('_')
            .parse()
            .map_err(|_| RootSystemError::Parse(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// Which coordinates a [`LatticeVector`] is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Ambient `e_i` coordinates; usable on either side of a pairing.
    Ambient,
    FundamentalWeight,
    FundamentalCoweight,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::Ambient => "ambient",
            Basis::FundamentalWeight => "fundamental_weight",
            Basis::FundamentalCoweight => "fundamental_coweight",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub coords: QVec,
    pub basis: Basis,
}

impl LatticeVector {
    pub fn new(coords: QVec, basis: Basis) -> Self {
        LatticeVector { coords, basis }
    }

    pub fn ambient(coords: QVec) -> Self {
        LatticeVector::new(coords, Basis::Ambient)
    }

    pub fn coweight(coords: QVec) -> Self {
        LatticeVector::new(coords, Basis::FundamentalCoweight)
    }

    pub fn weight(coords: QVec) -> Self {
        LatticeVector::new(coords, Basis::FundamentalWeight)
    }

    /// Integer coordinates, convenience for tests and examples.
    pub fn from_ints(coords: &[i64], basis: Basis) -> Self {
        LatticeVector::new(coords.iter().map(|&c| Q::from_integer(c)).collect(), basis)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.coords.into_iter().map(|c| -c).collect(), self.basis)
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + *x * *y)
}

pub(crate) fn add_scaled(acc: &mut [Q], v: &[Q], s: Q) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += *x * s;
    }
}

/// `s_α(v) = v − 2(v,α)/(α,α) · α`.
pub fn reflect(v: &[Q], alpha: &[Q]) -> QVec {
    let c = Q::from_integer(2) * dot(v, alpha) / dot(alpha, alpha);
    v.iter().zip(alpha).map(|(x, a)| *x - c * *a).collect()
}

pub fn coroot(alpha: &[Q]) -> QVec {
    let s = Q::from_integer(2) / dot(alpha, alpha);
    alpha.iter().map(|a| *a * s).collect()
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let mut a: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * *y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `B c = v` exactly for a basis given as columns `cols`.
/// Returns `None` when `v` is not in the rational span of `cols`.
pub(crate) fn solve_in_span(cols: &[QVec], v: &[Q]) -> Option<QVec> {
    let gram: Vec<QVec> = cols.iter().map(|a| cols.iter().map(|b| dot(a, b)).collect()).collect();
    let inv = invert(&gram)?;
    let rhs: QVec = cols.iter().map(|a| dot(a, v)).collect();
    let c: QVec = inv.iter().map(|row| dot(row, &rhs)).collect();
    let mut back = vec![Q::zero(); v.len()];
    for (col, ci) in cols.iter().zip(&c) {
        add_scaled(&mut back, col, *ci);
    }
    (back == v).then_some(c)
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    ambient_dim: usize,
    gl_style: bool,
    simple_roots: Vec<QVec>,
    roots: Vec<QVec>,
    positive_roots: Vec<QVec>,
    fundamental_weights: Vec<QVec>,
    fundamental_coweights: Vec<QVec>,
    weyl_vector: QVec,
    cartan_matrix: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize, s: i64) -> QVec {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::from_integer(s);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> QVec {
    let mut v = unit(dim, i, 1);
    v[j] = -Q::one();
    v
}

fn simple_roots_of(t: CartanType) -> (usize, Vec<QVec>) {
    let n = t.rank;
    let half = q(1, 2);
    match t.family {
        Family::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Family::B | Family::C | Family::D => {
            let mut s: Vec<QVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match t.family {
                Family::B => unit(n, n - 1, 1),
                Family::C => unit(n, n - 1, 2),
                _ => {
                    let mut v = unit(n, n - 2, 1);
                    v[n - 1] = Q::one();
                    v
                }
            };
            s.push(last);
            (n, s)
        }
        Family::E => {
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut a2 = unit(8, 0, 1);
            a2[1] = Q::one();
            let mut s = vec![a1, a2];
            for k in 3..=8 {
                // α_k = e_{k−1} − e_{k−2} with 1-based e
                s.push(diff(8, k - 2, k - 3));
            }
            s.truncate(n);
            (8, s)
        }
        Family::F => (
            4,
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3, 1),
                vec![half, -half, -half, -half],
            ],
        ),
        Family::G => (
            3,
            vec![
                diff(3, 0, 1),
                vec![Q::from_integer(-2), Q::one(), Q::one()],
            ],
        ),
    }
}

impl RootSystem {
    /// Build the root system of `t` by reflection closure of its simple roots.
    pub fn new(t: CartanType) -> Self {
        let (ambient_dim, simple_roots) = simple_roots_of(t);
        Self::from_simple_roots(t, ambient_dim, simple_roots, false)
    }

    pub fn from_type(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        Ok(Self::new(CartanType::new(family, rank)?))
    }

    /// `A_{n−1}` realized inside `gl_n`: ambient `Q^n` including the central direction.
    pub fn gl(n: usize) -> Result<Self, RootSystemError> {
        let t = CartanType::new(Family::A, n.saturating_sub(1))?;
        let (ambient_dim, simple_roots) = simple_roots_of(t);
        Ok(Self::from_simple_roots(t, ambient_dim, simple_roots, true))
    }

    /// Type `D_n` in `ε`-coordinates for `n ≥ 2`. At `n = 2` this is the
    /// reducible system `A_1 × A_1` of `so_4`, which [`CartanType`] excludes.
    pub fn so_even(n: usize) -> Result<Self, RootSystemError> {
        if n < 2 {
            return Err(RootSystemError::InvalidCartanType { family: Family::D, rank: n });
        }
        let t = CartanType { family: Family::D, rank: n };
        let (ambient_dim, simple_roots) = simple_roots_of(t);
        Ok(Self::from_simple_roots(t, ambient_dim, simple_roots, false))
    }

    fn from_simple_roots(t: CartanType, ambient_dim: usize, simple_roots: Vec<QVec>, gl_style: bool) -> Self {
        let coroots: Vec<QVec> = simple_roots.iter().map(|a| coroot(a)).collect();

        // λ_i = Σ_k M_ik α_k with (λ_i, α_j∨) = δ_ij  ⇒  M = A'^{-1}, A'_kj = (α_k, α_j∨)
        let a_prime: Vec<QVec> = simple_roots
            .iter()
            .map(|ak| coroots.iter().map(|cj| dot(ak, cj)).collect())
            .collect();
        let m = invert(&a_prime).expect("simple roots are linearly independent");
        let fundamental_weights: Vec<QVec> = m
            .iter()
            .map(|row| {
                let mut v = vec![Q::zero(); ambient_dim];
                for (c, a) in row.iter().zip(&simple_roots) {
                    add_scaled(&mut v, a, *c);
                }
                v
            })
            .collect();

        // ω_i∨ = Σ_k N_ik α_k∨ with (α_j, ω_i∨) = δ_ij
        let b: Vec<QVec> = coroots
            .iter()
            .map(|ck| simple_roots.iter().map(|aj| dot(ck, aj)).collect())
            .collect();
        let n = invert(&b).expect("coroots are linearly independent");
        let fundamental_coweights: Vec<QVec> = n
            .iter()
            .map(|row| {
                let mut v = vec![Q::zero(); ambient_dim];
                for (c, a) in row.iter().zip(&coroots) {
                    add_scaled(&mut v, a, *c);
                }
                v
            })
            .collect();

        let cartan_matrix: Vec<Vec<i64>> = simple_roots
            .iter()
            .map(|ai| {
                coroots
                    .iter()
                    .map(|cj| {
                        let x = dot(ai, cj);
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();

        // reflection closure
        let mut seen: HashSet<QVec> = HashSet::new();
        let mut queue: VecDeque<QVec> = VecDeque::new();
        for a in &simple_roots {
            if seen.insert(a.clone()) {
                queue.push_back(a.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for a in &simple_roots {
                let w = reflect(&v, a);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<QVec> = seen.into_iter().collect();
        roots.sort();

        let height_dual: QVec = {
            let mut v = vec![Q::zero(); ambient_dim];
            for w in &fundamental_coweights {
                add_scaled(&mut v, w, Q::one());
            }
            v
        };
        let positive_roots: Vec<QVec> = roots
            .iter()
            .filter(|b| dot(b, &height_dual).is_positive())
            .cloned()
            .collect();

        let mut weyl_vector = vec![Q::zero(); ambient_dim];
        for w in &fundamental_weights {
            add_scaled(&mut weyl_vector, w, Q::one());
        }

        RootSystem {
            cartan_type: t,
            ambient_dim,
            gl_style,
            simple_roots,
            roots,
            positive_roots,
            fundamental_weights,
            fundamental_coweights,
            weyl_vector,
            cartan_matrix,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// True for the `gl_n` realization of type A.
    pub fn is_gl_style(&self) -> bool {
        self.gl_style
    }

    pub fn roots(&self) -> &[QVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[QVec] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[QVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> Vec<QVec> {
        self.simple_roots.iter().map(|a| coroot(a)).collect()
    }

    pub fn fundamental_weights(&self) -> &[QVec] {
        &self.fundamental_weights
    }

    /// `α_i^*`: the basis of the coweight lattice dual to the simple roots.
    pub fn fundamental_coweights(&self) -> &[QVec] {
        &self.fundamental_coweights
    }

    /// `δ = Σ λ_i`.
    pub fn weyl_vector(&self) -> &[Q] {
        &self.weyl_vector
    }

    /// `½ Σ_{α>0} α`, computed independently of [`Self::weyl_vector`].
    pub fn half_positive_sum(&self) -> QVec {
        let mut v = vec![Q::zero(); self.ambient_dim];
        for a in &self.positive_roots {
            add_scaled(&mut v, a, q(1, 2));
        }
        v
    }

    /// `A_ij = ⟨α_i, α_j∨⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn inner_product(&self, a: &[Q], b: &[Q]) -> Q {
        dot(a, b)
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    /// Ambient coordinates of `v`.
    pub fn to_ambient(&self, v: &LatticeVector) -> Result<QVec, RootSystemError> {
        let (expected, basis) = match v.basis {
            Basis::Ambient => (self.ambient_dim, None),
            Basis::FundamentalWeight => (self.rank(), Some(&self.fundamental_weights)),
            Basis::FundamentalCoweight => (self.rank(), Some(&self.fundamental_coweights)),
        };
        if v.coords.len() != expected {
            return Err(RootSystemError::Dimension { expected, got: v.coords.len() });
        }
        Ok(match basis {
            None => v.coords.clone(),
            Some(b) => {
                let mut out = vec![Q::zero(); self.ambient_dim];
                for (c, w) in v.coords.iter().zip(b) {
                    add_scaled(&mut out, w, *c);
                }
                out
            }
        })
    }

    /// Re-express an ambient vector in `basis`. Fails if the vector has a
    /// component orthogonal to the roots.
    pub fn from_ambient(&self, v: &[Q], basis: Basis) -> Result<LatticeVector, RootSystemError> {
        if v.len() != self.ambient_dim {
            return Err(RootSystemError::Dimension { expected: self.ambient_dim, got: v.len() });
        }
        let coords: QVec = match basis {
            Basis::Ambient => return Ok(LatticeVector::ambient(v.to_vec())),
            // weight coordinates are (v, α_i∨), coweight coordinates (α_i, v)
            Basis::FundamentalWeight => self.simple_coroots().iter().map(|c| dot(v, c)).collect(),
            Basis::FundamentalCoweight => self.simple_roots.iter().map(|a| dot(a, v)).collect(),
        };
        let lv = LatticeVector::new(coords, basis);
        if self.to_ambient(&lv)? != v {
            return Err(RootSystemError::NotInRootSpan);
        }
        Ok(lv)
    }

    fn expect_coweight_side(&self, v: &LatticeVector) -> Result<QVec, RootSystemError> {
        if v.basis == Basis::FundamentalWeight {
            return Err(RootSystemError::BasisMismatch { expected: "coweight or ambient", got: v.basis });
        }
        self.to_ambient(v)
    }

    fn expect_weight_side(&self, v: &LatticeVector) -> Result<QVec, RootSystemError> {
        if v.basis == Basis::FundamentalCoweight {
            return Err(RootSystemError::BasisMismatch { expected: "weight or ambient", got: v.basis });
        }
        self.to_ambient(v)
    }

    /// `⟨w, a⟩` for a weight `w` and a coweight `a`.
    pub fn pair(&self, w: &LatticeVector, a: &LatticeVector) -> Result<Q, RootSystemError> {
        let w = self.expect_weight_side(w)?;
        let a = self.expect_coweight_side(a)?;
        Ok(dot(&w, &a))
    }

    /// Closed fundamental chamber: `(α_i, v) ≥ 0` for every simple root.
    pub fn is_dominant_ambient(&self, v: &[Q]) -> bool {
        self.simple_roots.iter().all(|a| !dot(a, v).is_negative())
    }

    pub fn dominant_ambient(&self, v: &[Q]) -> QVec {
        let mut v = v.to_vec();
        while let Some(a) = self.simple_roots.iter().find(|a| dot(a, &v).is_negative()) {
            v = reflect(&v, a);
        }
        v
    }

    /// The unique dominant element of the W-orbit of `v`, in `v`'s basis.
    pub fn dominant_representative(&self, v: &LatticeVector) -> Result<LatticeVector, RootSystemError> {
        let amb = self.to_ambient(v)?;
        let dom = self.dominant_ambient(&amb);
        self.from_ambient(&dom, v.basis)
    }

    /// W-orbit by closure under simple reflections, in ambient coordinates.
    pub fn orbit_ambient(&self, v: &[Q]) -> Vec<QVec> {
        let mut seen: HashSet<QVec> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec());
        queue.push_back(v.to_vec());
        while let Some(x) = queue.pop_front() {
            for a in &self.simple_roots {
                if dot(a, &x).is_zero() {
                    continue;
                }
                let y = reflect(&x, a);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<QVec> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// W-orbit of `v`, returned in the basis of `v`.
    pub fn weyl_orbit(&self, v: &LatticeVector) -> Result<Vec<LatticeVector>, RootSystemError> {
        let amb = self.to_ambient(v)?;
        self.orbit_ambient(&amb)
            .into_iter()
            .map(|x| self.from_ambient(&x, v.basis))
            .collect()
    }
}

/// Weights of the defining representation, where one is standard:
/// `{ε_i}` for type A (projected to the trace-zero hyperplane unless gl style),
/// `{±ε_i}` for C and D, `{±ε_i, 0}` for B.
pub fn standard_weights(rs: &RootSystem) -> Option<Vec<QVec>> {
    let d = rs.ambient_dim();
    match rs.cartan_type().family() {
        Family::A => {
            let shift = if rs.is_gl_style() { Q::zero() } else { q(1, d as i64) };
            Some(
                (0..d)
                    .map(|i| {
                        let mut v = vec![-shift; d];
                        v[i] += Q::one();
                        v
                    })
                    .collect(),
            )
        }
        Family::B | Family::C | Family::D => {
            let mut w: Vec<QVec> = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
            if rs.cartan_type().family() == Family::B {
                w.push(vec![Q::zero(); d]);
            }
            Some(w)
        }
        _ => None,
    }
}
