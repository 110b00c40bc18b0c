//! Maximal parabolics whose fundamental coweight `α_i^*` takes only the
//! values `0, ±1` on roots, and the dimensions of the corresponding flag
//! varieties `G/P`.
//!
//! Simple roots are numbered `1..=rank` in Bourbaki order.

use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{dot, CartanType, RootSystem, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// Coefficient of `α_i` in `beta`, i.e. `α_i^*(β)`.
fn coefficient(rs: &RootSystem, i: usize, beta: &[Q]) -> Q {
    dot(&rs.fundamental_coweights()[i - 1], beta)
}

fn check_index(rs: &RootSystem, i: usize) -> Result<(), ParabolicError> {
    if i == 0 || i > rs.rank() {
        return Err(ParabolicError::IndexOutOfRange { index: i, rank: rs.rank() });
    }
    Ok(())
}

/// Whether `α_i^*(β) ∈ {0, ±1}` for every root `β`.
pub fn is_compact_orbit_root(rs: &RootSystem, i: usize) -> Result<bool, ParabolicError> {
    check_index(rs, i)?;
    let one = Q::from_integer(1);
    Ok(rs.roots().iter().all(|b| coefficient(rs, i, b).abs() <= one))
}

/// Bourbaki indices of all simple roots satisfying the compact-orbit condition.
pub fn compact_orbit_roots(rs: &RootSystem) -> Vec<usize> {
    (1..=rs.rank())
        .filter(|&i| is_compact_orbit_root(rs, i).expect("index in range"))
        .collect()
}

/// `Σ_{β>0} α_i^*(β)`: the sum of the `α_i`-coefficients over the roots of
/// the unipotent radical. Equals `dim G/P_i` when the compact-orbit
/// condition holds.
pub fn flag_dimension(rs: &RootSystem, i: usize) -> Result<u64, ParabolicError> {
    check_index(rs, i)?;
    let total = rs
        .positive_roots()
        .iter()
        .fold(Q::from_integer(0), |acc, b| acc + coefficient(rs, i, b));
    Ok(total.to_integer() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub cartan_type: String,
    pub rank: usize,
    pub compact_nodes: Vec<usize>,
    pub flag_dimensions: Vec<u64>,
}

/// One row per Cartan type of rank `≤ max_rank`.
pub fn classification_table(max_rank: usize) -> Vec<ClassificationRow> {
    CartanType::all_up_to(max_rank)
        .into_iter()
        .map(|t| {
            let rs = RootSystem::new(t);
            let compact_nodes = compact_orbit_roots(&rs);
            let flag_dimensions = compact_nodes
                .iter()
                .map(|&i| flag_dimension(&rs, i).expect("index in range"))
                .collect();
            ClassificationRow { cartan_type: t.to_string(), rank: t.rank(), compact_nodes, flag_dimensions }
        })
        .collect()
}

/// Aligned plain-text rendering of a classification table.
pub fn render_table(rows: &[ClassificationRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<6} {:<20} {}", "type", "nodes", "dim G/P");
    for r in rows {
        let nodes = if r.compact_nodes.is_empty() {
            "-".to_string()
        } else {
            r.compact_nodes.iter().map(|i| format!("a{i}")).collect::<Vec<_>>().join(",")
        };
        let dims = r.flag_dimensions.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "{:<6} {:<20} {}", r.cartan_type, nodes, if dims.is_empty() { "-".into() } else { dims });
    }
    out
}
