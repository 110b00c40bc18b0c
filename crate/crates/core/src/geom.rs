//! Integer intersection theory on small divisor-class lattices, adjunction,
//! Riemann–Hurwitz, and the genus bookkeeping behind the spectral-curve
//! descriptions of the standard examples.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::leafdim::catalog::{self, Example};
use crate::leafdim::{leaf_dimension, singularity_divisors, LeafError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("class has {got} coefficients, lattice has rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("unknown class label '{0}'")]
    UnknownLabel(String),
    #[error("C² + K·C = {0} is odd")]
    Parity(i64),
    #[error("{0} is not an integer genus")]
    NonIntegral(String),
    #[error("negative genus {0}")]
    Negative(i64),
    #[error("degree must be positive")]
    Degree,
    #[error("example needs n >= {min}, got {n}")]
    Range { n: usize, min: usize },
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub coefficients: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        DivisorClass { coefficients }
    }

    pub fn scale(&self, m: i64) -> Self {
        DivisorClass { coefficients: self.coefficients.iter().map(|c| c * m).collect() }
    }

    pub fn add(&self, other: &DivisorClass) -> Self {
        DivisorClass { coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClassLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl DivisorClassLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>, canonical: Vec<i64>) -> Result<Self, GeomError> {
        let r = labels.len();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(GeomError::NotSymmetric);
        }
        for i in 0..r {
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return Err(GeomError::NotSymmetric);
                }
            }
        }
        if canonical.len() != r {
            return Err(GeomError::RankMismatch { expected: r, got: canonical.len() });
        }
        Ok(DivisorClassLattice { labels, gram, canonical: DivisorClass::new(canonical) })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    /// Class from `(label, coefficient)` pairs.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, GeomError> {
        let mut c = vec![0; self.rank()];
        for (label, m) in terms {
            let i = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| GeomError::UnknownLabel((*label).to_string()))?;
            c[i] += m;
        }
        Ok(DivisorClass::new(c))
    }

    fn check(&self, c: &DivisorClass) -> Result<(), GeomError> {
        if c.coefficients.len() != self.rank() {
            return Err(GeomError::RankMismatch { expected: self.rank(), got: c.coefficients.len() });
        }
        Ok(())
    }

    pub fn intersect(&self, c1: &DivisorClass, c2: &DivisorClass) -> Result<i64, GeomError> {
        self.check(c1)?;
        self.check(c2)?;
        let mut total = 0;
        for (i, a) in c1.coefficients.iter().enumerate() {
            for (j, b) in c2.coefficients.iter().enumerate() {
                total += a * self.gram[i][j] * b;
            }
        }
        Ok(total)
    }

    /// Adjunction: `1 + (C² + K·C) / 2`.
    pub fn arithmetic_genus(&self, c: &DivisorClass) -> Result<i64, GeomError> {
        let s = self.intersect(c, c)? + self.intersect(&self.canonical, c)?;
        if s % 2 != 0 {
            return Err(GeomError::Parity(s));
        }
        Ok(1 + s / 2)
    }
}

/// Ruled surface over the elliptic curve with classes `φ` (fiber), `z`
/// (section) and four exceptional curves `E_{1,0}, E_{1,∞}, E_{2,0},
/// E_{2,∞}`; `K = 2φ − 2z + E` and `γ = 2nφ + 2nz − nE`, `E = Σ E_{i,j}`.
pub fn isotropic_example_model(n: usize) -> Result<(DivisorClassLattice, DivisorClass), GeomError> {
    if n < 2 {
        return Err(GeomError::Range { n, min: 2 });
    }
    let labels: Vec<String> = ["phi", "z", "E10", "E1inf", "E20", "E2inf"].iter().map(|s| s.to_string()).collect();
    let mut gram = vec![vec![0i64; 6]; 6];
    gram[0][1] = 1;
    gram[1][0] = 1;
    for (k, row) in gram.iter_mut().enumerate().skip(2) {
        row[k] = -1;
    }
    let lattice = DivisorClassLattice::new(labels, gram, vec![2, -2, 1, 1, 1, 1])?;
    let n = n as i64;
    let gamma = DivisorClass::new(vec![2 * n, 2 * n, -n, -n, -n, -n]);
    Ok((lattice, gamma))
}

/// Rank-2 model `{s, f}` with `s² = f² = 0`, `s·f = 1`, `K = −2s`, and
/// `Γ = n s + 2 f`.
pub fn quadric_example_model(n: usize) -> Result<(DivisorClassLattice, DivisorClass), GeomError> {
    if n < 2 {
        return Err(GeomError::Range { n, min: 2 });
    }
    let lattice = DivisorClassLattice::new(vec!["s".into(), "f".into()], vec![vec![0, 1], vec![1, 0]], vec![-2, 0])?;
    Ok((lattice, DivisorClass::new(vec![n as i64, 2])))
}

/// Geometric genus after resolving `nodes` ordinary double points.
pub fn geometric_genus_after_nodes(p_a: i64, nodes: i64) -> Result<i64, GeomError> {
    let g = p_a - nodes;
    if g < 0 {
        return Err(GeomError::Negative(g));
    }
    Ok(g)
}

/// Genus `h` of the quotient in `2g − 2 = d(2h − 2) + R`.
pub fn riemann_hurwitz_quotient(g_cover: i64, degree: i64, ramification: i64) -> Result<i64, GeomError> {
    if degree <= 0 {
        return Err(GeomError::Degree);
    }
    let num = 2 * g_cover - 2 - ramification;
    if num % degree != 0 || (num / degree) % 2 != 0 {
        return Err(GeomError::NonIntegral(format!("({num}/{degree} + 2)/2")));
    }
    let h = (num / degree + 2) / 2;
    if h < 0 {
        return Err(GeomError::Negative(h));
    }
    Ok(h)
}

/// Genus `g` of a degree-`d` cover of a genus-`h` curve with total
/// ramification `R`.
pub fn riemann_hurwitz_cover(g_base: i64, degree: i64, ramification: i64) -> Result<i64, GeomError> {
    if degree <= 0 {
        return Err(GeomError::Degree);
    }
    let num = degree * (2 * g_base - 2) + ramification;
    if num % 2 != 0 {
        return Err(GeomError::NonIntegral(format!("{num}/2 + 1")));
    }
    Ok(num / 2 + 1)
}

pub fn prym_dimension(g_cover: i64, g_quotient: i64) -> Result<i64, GeomError> {
    if g_cover < g_quotient {
        return Err(GeomError::Negative(g_cover - g_quotient));
    }
    Ok(g_cover - g_quotient)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub quantity: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfDimReport {
    pub example: Example,
    pub n: usize,
    pub k: usize,
    pub chain: Vec<DerivationStep>,
    pub fiber_dimension: i64,
    pub leaf_dimension: i64,
    pub consistent: bool,
}

fn step(chain: &mut Vec<DerivationStep>, quantity: &str, value: i64) -> i64 {
    chain.push(DerivationStep { quantity: quantity.to_string(), value });
    value
}

/// Compares the dimension of the generic fiber (Prym or Jacobian) with half
/// the leaf dimension computed from the singularity data. `k` is only used by
/// the Grassmannian example.
pub fn halfdim_consistency(example: Example, n: usize, k: usize) -> Result<HalfDimReport, GeomError> {
    let tau = Complex64::new(0.0, 1.0);
    let mut chain = Vec::new();
    let fiber = match example {
        Example::Quadric => {
            let (lat, gamma) = quadric_example_model(n)?;
            step(&mut chain, "Gamma.Gamma", lat.intersect(&gamma, &gamma)?);
            step(&mut chain, "K.Gamma", lat.intersect(lat.canonical(), &gamma)?);
            let pa = step(&mut chain, "p_a(Gamma)", lat.arithmetic_genus(&gamma)?);
            let cover = step(&mut chain, "g(cover), unramified double", riemann_hurwitz_cover(pa, 2, 0)?);
            step(&mut chain, "prym dimension", prym_dimension(cover, pa)?)
        }
        Example::Isotropic => {
            let (lat, gamma) = isotropic_example_model(n)?;
            step(&mut chain, "gamma.gamma", lat.intersect(&gamma, &gamma)?);
            step(&mut chain, "K.gamma", lat.intersect(lat.canonical(), &gamma)?);
            let pa = step(&mut chain, "p_a(gamma)", lat.arithmetic_genus(&gamma)?);
            let g = step(&mut chain, "geometric genus after 2n nodes", geometric_genus_after_nodes(pa, 2 * n as i64)?);
            let g1 = step(&mut chain, "genus of quotient, R = 4n", riemann_hurwitz_quotient(g, 2, 4 * n as i64)?);
            let g2 = step(&mut chain, "genus of free quotient", riemann_hurwitz_quotient(g1, 2, 0)?);
            step(&mut chain, "prym dimension", prym_dimension(g1, g2)?)
        }
        Example::Calogero => {
            let n64 = n as i64;
            step(&mut chain, "cyclic cover genus", riemann_hurwitz_cover(1, n64, 2 * (n64 - 1))?)
        }
        Example::Grassmannian => {
            let sd = catalog::grassmannian(n, k, tau)?;
            let s = singularity_divisors(&sd)?;
            for (i, d) in s.divisors.iter().enumerate() {
                step(&mut chain, &format!("deg S_{}", i + 1), d.degree().to_integer());
            }
            step(&mut chain, "sum deg S_i", s.total_degree.to_integer())
        }
    };
    let sd = example.build(n, k, tau)?;
    let leaf = leaf_dimension(&sd)?.dimension as i64;
    step(&mut chain, "leaf dimension", leaf);
    Ok(HalfDimReport { example, n, k, chain, fiber_dimension: fiber, leaf_dimension: leaf, consistent: 2 * fiber == leaf })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_intersections() {
        for n in 2..=6i64 {
            let (lat, gamma) = isotropic_example_model(n as usize).unwrap();
            let phi = lat.class(&[("phi", 1)]).unwrap();
            let e = lat.class(&[("E10", 1)]).unwrap();
            assert_eq!(lat.intersect(&phi, &phi).unwrap(), 0);
            assert_eq!(lat.intersect(&e, &e).unwrap(), -1);
            assert_eq!(lat.intersect(&gamma, &gamma).unwrap(), 4 * n * n);
            assert_eq!(lat.intersect(lat.canonical(), &gamma).unwrap(), 4 * n);
            assert_eq!(lat.intersect(&gamma, &phi).unwrap(), 2 * n);
            assert_eq!(lat.arithmetic_genus(&gamma).unwrap(), 2 * (n * n + n) + 1);
            assert_eq!(lat.arithmetic_genus(&phi).unwrap(), 0);
        }
        let (lat, gamma) = isotropic_example_model(2).unwrap();
        assert_eq!(lat.arithmetic_genus(&gamma).unwrap(), 13);
        let (lat, gamma) = isotropic_example_model(3).unwrap();
        assert_eq!(lat.arithmetic_genus(&gamma).unwrap(), 25);
    }

    #[test]
    fn quadric_genus() {
        for n in 2..=6i64 {
            let (lat, gamma) = quadric_example_model(n as usize).unwrap();
            assert_eq!(lat.intersect(&gamma, &gamma).unwrap(), 4 * n);
            assert_eq!(lat.arithmetic_genus(&gamma).unwrap(), 2 * n - 1);
            let f = lat.class(&[("f", 1)]).unwrap();
            assert_eq!(lat.arithmetic_genus(&f).unwrap(), 0);
        }
    }

    #[test]
    fn genus_chain_isotropic() {
        for n in 2..=6i64 {
            let pa = 2 * (n * n + n) + 1;
            let g = geometric_genus_after_nodes(pa, 2 * n).unwrap();
            assert_eq!(g, 2 * n * n + 1);
            let g1 = riemann_hurwitz_quotient(g, 2, 4 * n).unwrap();
            assert_eq!(g1, n * n - n + 1);
            let g2 = riemann_hurwitz_quotient(g1, 2, 0).unwrap();
            assert_eq!(2 * g2, n * n - n + 2);
            assert_eq!(prym_dimension(g1, g2).unwrap(), (n * n - n) / 2);
        }
        assert_eq!(geometric_genus_after_nodes(7, 0).unwrap(), 7);
        assert!(geometric_genus_after_nodes(1, 2).is_err());
    }

    #[test]
    fn cyclic_cover_genus() {
        for n in 2..=8i64 {
            assert_eq!(riemann_hurwitz_cover(1, n, 2 * (n - 1)).unwrap(), n);
        }
        assert_eq!(riemann_hurwitz_cover(3, 2, 0).unwrap(), 5);
        assert_eq!(prym_dimension(4, 4).unwrap(), 0);
    }

    #[test]
    fn errors() {
        assert!(matches!(riemann_hurwitz_quotient(2, 2, 1), Err(GeomError::NonIntegral(_))));
        let lat = DivisorClassLattice::new(vec!["c".into()], vec![vec![1]], vec![0]).unwrap();
        assert_eq!(lat.arithmetic_genus(&DivisorClass::new(vec![1])), Err(GeomError::Parity(1)));
        assert!(lat.intersect(&DivisorClass::new(vec![1, 0]), &DivisorClass::new(vec![1])).is_err());
        assert!(DivisorClassLattice::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![2, 0]], vec![0, 0]).is_err());
        assert!(lat.class(&[("x", 1)]).is_err());
    }

    #[test]
    fn halfdim_all_examples() {
        for n in 2..=6 {
            for ex in [Example::Quadric, Example::Isotropic, Example::Calogero] {
                let r = halfdim_consistency(ex, n, 1).unwrap();
                assert!(r.consistent, "{r:?}");
            }
            for k in 1..n {
                assert!(halfdim_consistency(Example::Grassmannian, n, k).unwrap().consistent);
            }
        }
    }
}
