//! Rank-2 rational cones: duals, Hilbert bases, the binomial relation among
//! three semigroup generators, and the rays `(1, a)` of the local toric
//! models attached to a W-orbit of cocharacters.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::leafdim::{GroupSpec, LeafError};
use crate::rootsys::LatticeVector;

pub type V2 = [i64; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToricError {
    #[error("cone generators {0:?} and {1:?} are not linearly independent")]
    Degenerate(V2, V2),
    #[error("zero vector cannot generate a ray")]
    ZeroVector,
    #[error("expected exactly three semigroup generators, got {0}")]
    BasisSize(usize),
    #[error("no generator lies strictly between the other two")]
    NoRelation,
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

fn det(a: V2, b: V2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn primitive(v: V2) -> Result<V2, ToricError> {
    let g = v[0].gcd(&v[1]);
    if g == 0 {
        return Err(ToricError::ZeroVector);
    }
    Ok([v[0] / g, v[1] / g])
}

/// A strongly convex cone spanned by two primitive vectors, stored
/// counterclockwise (`det(g1, g2) > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cone2D {
    generators: [V2; 2],
}

impl Cone2D {
    pub fn new(a: V2, b: V2) -> Result<Self, ToricError> {
        let (pa, pb) = (primitive(a)?, primitive(b)?);
        match det(pa, pb) {
            0 => Err(ToricError::Degenerate(a, b)),
            d if d > 0 => Ok(Cone2D { generators: [pa, pb] }),
            _ => Ok(Cone2D { generators: [pb, pa] }),
        }
    }

    pub fn generators(&self) -> [V2; 2] {
        self.generators
    }

    /// Same cone, ignoring generator order.
    pub fn same_as(&self, other: &Cone2D) -> bool {
        self.generators == other.generators
    }

    /// `(s, t)` with `v = s g1 + t g2`, as numerators over `det(g1, g2)`.
    fn coords(&self, v: V2) -> (i64, i64, i64) {
        let [g1, g2] = self.generators;
        (det(v, g2), det(g1, v), det(g1, g2))
    }

    pub fn contains(&self, v: V2) -> bool {
        let (s, t, _) = self.coords(v);
        s >= 0 && t >= 0
    }

    /// Whether `v` is a nonzero lattice point of the cone.
    fn nonzero_member(&self, v: V2) -> bool {
        v != [0, 0] && self.contains(v)
    }
}

/// `σ^∨ = {u : ⟨u, v⟩ ≥ 0 ∀ v ∈ σ}`, generated by the primitive inward
/// normals of the two edges.
pub fn dual_cone(c: &Cone2D) -> Result<Cone2D, ToricError> {
    let [g1, g2] = c.generators;
    let n1 = [-g1[1], g1[0]];
    let n2 = [g2[1], -g2[0]];
    Cone2D::new(n1, n2)
}

/// Lattice points `s g1 + t g2` with `0 ≤ s, t ≤ 1`, excluding the origin.
fn parallelogram_points(c: &Cone2D) -> Vec<V2> {
    let [g1, g2] = c.generators;
    let corners = [[0, 0], g1, g2, [g1[0] + g2[0], g1[1] + g2[1]]];
    let (xmin, xmax) = (corners.iter().map(|p| p[0]).min().unwrap(), corners.iter().map(|p| p[0]).max().unwrap());
    let (ymin, ymax) = (corners.iter().map(|p| p[1]).min().unwrap(), corners.iter().map(|p| p[1]).max().unwrap());
    let mut out = Vec::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            let v = [x, y];
            let (s, t, d) = c.coords(v);
            if v != [0, 0] && (0..=d).contains(&s) && (0..=d).contains(&t) {
                out.push(v);
            }
        }
    }
    out
}

/// Whether `v` is a sum of two nonzero lattice points of the cone. Any such
/// summands have cone coordinates bounded by those of `v`, so searching the
/// fundamental parallelogram suffices for points inside it.
fn is_reducible(c: &Cone2D, v: V2, candidates: &[V2]) -> bool {
    candidates.iter().any(|u| *u != v && c.nonzero_member([v[0] - u[0], v[1] - u[1]]))
}

/// Minimal generating set of `σ ∩ Z²`, ordered counterclockwise from the
/// first generator.
pub fn hilbert_basis(c: &Cone2D) -> Vec<V2> {
    let pts = parallelogram_points(c);
    let mut basis: Vec<V2> = pts.iter().copied().filter(|v| !is_reducible(c, *v, &pts)).collect();
    let g1 = c.generators[0];
    let angle = |v: &V2| (det(g1, *v) as f64).atan2((g1[0] * v[0] + g1[1] * v[1]) as f64);
    basis.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    basis
}

/// Coefficients of `v` over a counterclockwise-ordered Hilbert basis.
/// Consecutive basis elements span unimodular cones covering `σ`, so `v`
/// lies in one of them with nonnegative integer coordinates.
pub fn decompose(c: &Cone2D, basis: &[V2], v: V2) -> Option<Vec<i64>> {
    if !c.contains(v) {
        return None;
    }
    let mut coeffs = vec![0; basis.len()];
    if v == [0, 0] {
        return Some(coeffs);
    }
    for i in 0..basis.len().saturating_sub(1) {
        let (h1, h2) = (basis[i], basis[i + 1]);
        let d = det(h1, h2);
        let (s, t) = (det(v, h2), det(h1, v));
        if d > 0 && s >= 0 && t >= 0 && s % d == 0 && t % d == 0 {
            coeffs[i] += s / d;
            coeffs[i + 1] += t / d;
            return Some(coeffs);
        }
    }
    None
}

/// `x^{m1} = w^{m2} z^{m3}` for the unique relation `m1·u_mid = m2·u_a + m3·u_b`
/// among three generators, `u_mid` lying strictly inside the cone of the others.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialRelation {
    pub middle: V2,
    pub left: V2,
    pub right: V2,
    pub middle_exponent: i64,
    pub left_exponent: i64,
    pub right_exponent: i64,
}

pub fn binomial_relation(basis: &[V2]) -> Result<BinomialRelation, ToricError> {
    if basis.len() != 3 {
        return Err(ToricError::BasisSize(basis.len()));
    }
    for m in 0..3 {
        let (a, b) = (basis[(m + 1) % 3], basis[(m + 2) % 3]);
        let mid = basis[m];
        let d = det(a, b);
        if d == 0 {
            continue;
        }
        // mid = (p/d) a + (q/d) b
        let (p, q) = (det(mid, b), det(a, mid));
        let (p, q, d) = if d < 0 { (-p, -q, -d) } else { (p, q, d) };
        if p > 0 && q > 0 {
            let g = p.gcd(&q).gcd(&d);
            return Ok(BinomialRelation {
                middle: mid,
                left: a,
                right: b,
                middle_exponent: d / g,
                left_exponent: p / g,
                right_exponent: q / g,
            });
        }
    }
    Err(ToricError::NoRelation)
}

/// The cone `⟨e + k a, e − k a⟩` of the `SL(2)` example.
pub fn sl2_cone(k: i64) -> Result<Cone2D, ToricError> {
    Cone2D::new([1, k], [1, -k])
}

/// Rays `(1, a)` for `a` in the W-orbit of `orbit_rep`, in coordinates of
/// `Z ⊕ Ch(T)*` with the lattice basis of `group`.
pub fn rays_of_xo(group: &GroupSpec, orbit_rep: &LatticeVector) -> Result<Vec<Vec<i64>>, ToricError> {
    let rs = group.root_system();
    let amb = rs.to_ambient(orbit_rep).map_err(LeafError::from)?;
    let mut rays = Vec::new();
    for a in rs.orbit_ambient(&amb) {
        let c = group
            .lattice_coords(&a)
            .ok_or_else(|| LeafError::NotInLattice(a.iter().map(|x| x.to_string()).collect()))?;
        let mut ray = vec![1i64];
        ray.extend(c.into_iter().map(|x| x as i64));
        rays.push(ray);
    }
    rays.sort();
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Basis;

    /// Hirzebruch–Jung continued fraction length of `n/q`.
    fn hj_length(mut n: i64, mut q: i64) -> usize {
        let mut len = 0;
        while q != 0 {
            let b = (n + q - 1) / q;
            let r = b * q - n;
            n = q;
            q = r;
            len += 1;
        }
        len
    }

    #[test]
    fn sl2_example() {
        for k in 1..=6 {
            let c = sl2_cone(k).unwrap();
            let d = dual_cone(&c).unwrap();
            assert!(d.same_as(&Cone2D::new([k, 1], [k, -1]).unwrap()));
            let h = hilbert_basis(&d);
            assert_eq!(h.len(), 3);
            for v in [[1, 0], [k, 1], [k, -1]] {
                assert!(h.contains(&v));
            }
            let rel = binomial_relation(&h).unwrap();
            assert_eq!(rel.middle, [1, 0]);
            assert_eq!((rel.middle_exponent, rel.left_exponent, rel.right_exponent), (2 * k, 1, 1));
        }
    }

    #[test]
    fn quadrant() {
        let c = Cone2D::new([1, 0], [0, 1]).unwrap();
        assert!(dual_cone(&c).unwrap().same_as(&c));
        let h = hilbert_basis(&c);
        assert_eq!(h, vec![[1, 0], [0, 1]]);
        assert_eq!(binomial_relation(&h), Err(ToricError::BasisSize(2)));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Cone2D::new([1, 2], [2, 4]).is_err());
        assert!(Cone2D::new([0, 0], [1, 0]).is_err());
        assert!(Cone2D::new([1, 0], [-1, 0]).is_err());
    }

    #[test]
    fn skew_cone_dual_by_membership() {
        let c = Cone2D::new([1, 0], [1, 2]).unwrap();
        let d = dual_cone(&c).unwrap();
        for x in -6..=6 {
            for y in -6..=6 {
                let u = [x, y];
                let pos = c.generators().iter().all(|g| u[0] * g[0] + u[1] * g[1] >= 0);
                assert_eq!(d.contains(u), pos, "{u:?}");
            }
        }
    }

    #[test]
    fn continued_fraction_oracle() {
        for n in 2..=12 {
            for q in 1..n {
                if n.gcd(&q) != 1 {
                    continue;
                }
                let c = Cone2D::new([0, 1], [n, -q]).unwrap();
                assert_eq!(hilbert_basis(&c).len(), 2 + hj_length(n, q), "n={n} q={q}");
            }
        }
        let d = dual_cone(&Cone2D::new([1, 0], [1, 5]).unwrap()).unwrap();
        // dual is ⟨(0,1),(5,−1)⟩ ≅ n/q = 5/1
        assert_eq!(hilbert_basis(&d).len(), 2 + hj_length(5, 1));
    }

    #[test]
    fn rays() {
        let sl2 = GroupSpec::sl(2).unwrap();
        for k in 1..=4 {
            let v = LatticeVector::from_ints(&[2 * k], Basis::FundamentalCoweight);
            assert_eq!(rays_of_xo(&sl2, &v).unwrap(), vec![vec![1, -k], vec![1, k]]);
        }
        let zero = LatticeVector::from_ints(&[0], Basis::FundamentalCoweight);
        assert_eq!(rays_of_xo(&sl2, &zero).unwrap(), vec![vec![1, 0]]);
        let po8 = GroupSpec::po_even(4).unwrap();
        let spin = LatticeVector::from_ints(&[0, 0, 0, 1], Basis::FundamentalCoweight);
        assert_eq!(rays_of_xo(&po8, &spin).unwrap().len(), 8);
    }
}
