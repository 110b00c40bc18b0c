//! Computable pieces of elliptic Sklyanin integrable systems: exact root
//! system combinatorics, symplectic-leaf dimension bookkeeping, elliptic
//! special functions, Felder's dynamical r-matrix, intersection numbers on
//! ruled surfaces, and rank-2 toric cones.

pub mod ellfun;
pub mod geom;
pub mod lattice;
pub mod leafdim;
pub mod parabolics;
pub mod rmatrix;
pub mod toric2d;
pub mod rootsys;

pub use ellfun::{EllipticContext, EllipticDivisor, EllipticError, EllipticPoint};
pub use leafdim::{DimensionReport, GroupSpec, LatticeModel, LeafError, SingularityData};
pub use rootsys::{Basis, CartanType, Family, LatticeVector, RootSystem, RootSystemError, Q};
