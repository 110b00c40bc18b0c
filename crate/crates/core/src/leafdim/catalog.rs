//! Worked singularity data for the standard examples: elliptic Calogero
//! systems, Grassmannian leaves in `PGL(n)`, and the quadric and isotropic
//! families in type `D`.

use num_complex::Complex64;
use serde::Serialize;

use super::{GroupSpec, LeafError, SingularityData};
use crate::ellfun::EllipticPoint;
use crate::rootsys::{Basis, LatticeVector, Q};

/// Default points used by the catalog, in lattice coordinates.
pub const P0: (f64, f64) = (0.1, 0.2);
pub const P1: (f64, f64) = (0.35, 0.55);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Example {
    Calogero,
    Grassmannian,
    Quadric,
    Isotropic,
}

impl std::str::FromStr for Example {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "calogero" => Ok(Example::Calogero),
            "grassmannian" | "grassmann" => Ok(Example::Grassmannian),
            "quadric" => Ok(Example::Quadric),
            "isotropic" => Ok(Example::Isotropic),
            _ => Err(format!("unknown example '{s}'")),
        }
    }
}

impl Example {
    /// Build the singularity data; `k` is only used by the Grassmannian.
    pub fn build(self, n: usize, k: usize, tau: Complex64) -> Result<SingularityData, LeafError> {
        match self {
            Example::Calogero => calogero(n, tau),
            Example::Grassmannian => grassmannian(n, k, tau),
            Example::Quadric => quadric(n, tau),
            Example::Isotropic => isotropic(n, tau),
        }
    }
}

fn point((a, b): (f64, f64)) -> EllipticPoint {
    EllipticPoint::new(a, b)
}

fn check_rank(n: usize, min: usize) -> Result<(), LeafError> {
    if n < min {
        return Err(LeafError::InvalidLattice(format!("rank parameter {n} is below {min}")));
    }
    Ok(())
}

/// Elliptic Calogero data for `GL(n)` at `p0`, `p1` and `p2 = n p0 − (n−1) p1`.
pub fn calogero_at(n: usize, tau: Complex64, p0: EllipticPoint, p1: EllipticPoint) -> Result<SingularityData, LeafError> {
    check_rank(n, 2)?;
    let p2 = p0.scale(n as i64).add(p1.scale(-(n as i64 - 1)));
    let ones = vec![1i64; n];
    let mut zero_then_minus = vec![-1i64; n];
    zero_then_minus[0] = 0;
    let mut last_minus = vec![0i64; n];
    last_minus[n - 1] = -1;
    let entries = vec![
        (p0, LatticeVector::from_ints(&ones, Basis::Ambient)),
        (p1, LatticeVector::from_ints(&zero_then_minus, Basis::Ambient)),
        (p2, LatticeVector::from_ints(&last_minus, Basis::Ambient)),
    ];
    SingularityData::new(GroupSpec::gl(n)?, tau, entries)
}

pub fn calogero(n: usize, tau: Complex64) -> Result<SingularityData, LeafError> {
    calogero_at(n, tau, point(P0), point(P1))
}

/// `PGL(n)` with `α_k^*` at one point and `−α_k^*` at another.
pub fn grassmannian(n: usize, k: usize, tau: Complex64) -> Result<SingularityData, LeafError> {
    check_rank(n, 2)?;
    if k == 0 || k >= n {
        return Err(LeafError::InvalidLattice(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let mut c = vec![Q::from_integer(0); n - 1];
    c[k - 1] = Q::from_integer(1);
    let v = LatticeVector::coweight(c);
    let entries = vec![(point(P0), v.clone()), (point(P1), -v)];
    SingularityData::new(GroupSpec::pgl(n)?, tau, entries)
}

fn two_points(group: GroupSpec, v: LatticeVector, tau: Complex64) -> Result<SingularityData, LeafError> {
    SingularityData::new(group, tau, vec![(point(P0), v.clone()), (point(P1), v)])
}

/// `SO(2n)` with the cocharacter `ε_1` (equal to `α_1^*` for `n ≥ 3`) at two points.
pub fn quadric(n: usize, tau: Complex64) -> Result<SingularityData, LeafError> {
    check_rank(n, 2)?;
    let mut c = vec![0i64; n];
    c[0] = 1;
    two_points(GroupSpec::so_even(n)?, LatticeVector::from_ints(&c, Basis::Ambient), tau)
}

/// `PO(2n)` with `α_n^*` at two points.
pub fn isotropic(n: usize, tau: Complex64) -> Result<SingularityData, LeafError> {
    check_rank(n, 2)?;
    let mut c = vec![0i64; n];
    c[n - 1] = 1;
    two_points(GroupSpec::po_even(n)?, LatticeVector::from_ints(&c, Basis::FundamentalCoweight), tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leafdim::{leaf_dimension, pi1_image, singularity_divisors};

    fn tau() -> Complex64 {
        Complex64::new(0.2, 1.1)
    }

    #[test]
    fn calogero_points_distinct_and_sum_trivial() {
        for n in 2..=8 {
            let sd = calogero(n, tau()).unwrap();
            assert_eq!(leaf_dimension(&sd).unwrap().dimension, 2 * n as u64);
            assert!(pi1_image(&sd).unwrap().coords.iter().all(|c| *c == 0));
        }
    }

    #[test]
    fn grassmannian_dimensions() {
        for n in 2..=7 {
            for k in 1..n {
                let sd = grassmannian(n, k, tau()).unwrap();
                assert_eq!(leaf_dimension(&sd).unwrap().dimension, (2 * k * (n - k)) as u64);
                assert!(pi1_image(&sd).unwrap().is_identity());
                let s = singularity_divisors(&sd).unwrap();
                assert_eq!(s.total_degree, Q::from_integer((k * (n - k)) as i64));
            }
        }
        assert!(grassmannian(4, 4, tau()).is_err());
    }

    #[test]
    fn type_d_dimensions() {
        for n in 2..=7 {
            let q = quadric(n, tau()).unwrap();
            assert_eq!(leaf_dimension(&q).unwrap().dimension, (4 * n - 4) as u64);
            let i = isotropic(n, tau()).unwrap();
            assert_eq!(leaf_dimension(&i).unwrap().dimension, (n * n - n) as u64);
        }
    }

    #[test]
    fn example_names_parse() {
        assert_eq!("Quadric".parse::<Example>().unwrap(), Example::Quadric);
        assert!("torus".parse::<Example>().is_err());
    }
}
