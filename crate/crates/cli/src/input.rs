//! The JSON singularity-data format.
//!
//! ```json
//! {"schema": 1,
//!  "group": {"family": "D", "rank": 4, "lattice": "adjoint", "center_dim": 0},
//!  "tau": [0.0, 1.0],
//!  "points": [{"lattice": [0.1, 0.2],
//!              "coweight": {"basis": "fundamental_coweight", "coords": ["0", "0", "0", "1"]}}]}
//! ```
//!
//! A point is given either as `"z": [re, im]` or as `"lattice": [a, b]`
//! meaning `a + bτ`. Coordinates are rational strings `"p/q"`.

use serde::{Deserialize, Serialize};
use sklyanin_core::rmatrix::C64;
use sklyanin_core::{
    Basis, EllipticContext, EllipticPoint, Family, GroupSpec, LatticeModel, LatticeVector, RootSystem,
    SingularityData, Q,
};

use crate::CliError;

pub const SCHEMA: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub group: GroupJson,
    pub tau: [f64; 2],
    #[serde(default)]
    pub points: Vec<PointJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub family: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(default)]
    pub center_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<[f64; 2]>,
    pub coweight: CoweightJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoweightJson {
    pub basis: String,
    pub coords: Vec<String>,
}

pub fn parse_basis(s: &str) -> Result<Basis, CliError> {
    match s {
        "ambient" => Ok(Basis::Ambient),
        "fundamental_coweight" => Ok(Basis::FundamentalCoweight),
        other => Err(CliError::Input(format!(
            "unknown coweight basis '{other}' (expected ambient or fundamental_coweight)"
        ))),
    }
}

pub fn parse_model(s: &str) -> Result<LatticeModel, CliError> {
    match s {
        "simply_connected" => Ok(LatticeModel::SimplyConnected),
        "adjoint" => Ok(LatticeModel::Adjoint),
        "integral" => Ok(LatticeModel::Integral),
        other => Err(CliError::Input(format!(
            "unknown lattice '{other}' (expected simply_connected, adjoint or integral)"
        ))),
    }
}

fn model_name(m: LatticeModel) -> &'static str {
    match m {
        LatticeModel::SimplyConnected => "simply_connected",
        LatticeModel::Adjoint => "adjoint",
        LatticeModel::Integral => "integral",
        LatticeModel::Custom => "custom",
    }
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    s.trim()
        .parse::<Q>()
        .map_err(|_| CliError::Input(format!("bad rational '{s}' (expected \"p/q\")")))
}

/// Root system for a family and rank. Type `A` with a one-dimensional
/// center uses `gl` coordinates; type `D` is accepted from rank 2.
pub fn root_system(family: &str, rank: usize, center_dim: usize) -> Result<RootSystem, CliError> {
    let family: Family = family.parse()?;
    let rs = match (family, center_dim) {
        (Family::A, 1) => RootSystem::gl(rank + 1)?,
        (Family::D, 0) if rank >= 2 => RootSystem::so_even(rank)?,
        (_, 0) => RootSystem::from_type(family, rank)?,
        _ => {
            return Err(CliError::Input(format!(
                "center_dim {center_dim} is only supported as 1 for family A"
            )))
        }
    };
    Ok(rs)
}

pub fn build_group(family: &str, rank: usize, lattice: Option<&str>, center_dim: usize) -> Result<GroupSpec, CliError> {
    let rs = root_system(family, rank, center_dim)?;
    let model = match lattice {
        Some(s) => parse_model(s)?,
        None if center_dim > 0 => LatticeModel::Integral,
        None => LatticeModel::SimplyConnected,
    };
    Ok(GroupSpec::new(rs, center_dim, model)?)
}

impl GroupJson {
    pub fn from_group(g: &GroupSpec) -> Self {
        let t = g.root_system().cartan_type();
        GroupJson {
            family: t.family().to_string(),
            rank: t.rank(),
            lattice: Some(model_name(g.model()).to_string()),
            center_dim: g.center_dim(),
        }
    }

    pub fn build(&self) -> Result<GroupSpec, CliError> {
        build_group(&self.family, self.rank, self.lattice.as_deref(), self.center_dim)
    }
}

impl DataFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: DataFile =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed singularity data: {e}")))?;
        if file.schema != SCHEMA {
            return Err(CliError::Input(format!("unsupported schema {} (expected {SCHEMA})", file.schema)));
        }
        Ok(file)
    }

    pub fn to_data(&self) -> Result<SingularityData, CliError> {
        let group = self.group.build()?;
        let tau = C64::new(self.tau[0], self.tau[1]);
        let ctx = EllipticContext::new(tau)?;
        let mut entries = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let point = match (p.z, p.lattice) {
                (Some([re, im]), None) => ctx.point(C64::new(re, im)),
                (None, Some([a, b])) => EllipticPoint::new(a, b),
                _ => {
                    return Err(CliError::Input(format!(
                        "point {i} needs exactly one of \"z\" and \"lattice\""
                    )))
                }
            };
            let basis = parse_basis(&p.coweight.basis)?;
            let coords = p.coweight.coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            entries.push((point, LatticeVector::new(coords, basis)));
        }
        Ok(SingularityData::new(group, tau, entries)?)
    }

    /// Normalized form: points in lattice coordinates, dominant coweights in
    /// ambient coordinates.
    pub fn from_data(sd: &SingularityData) -> Self {
        let tau = sd.tau();
        DataFile {
            schema: SCHEMA,
            group: GroupJson::from_group(sd.group()),
            tau: [tau.re, tau.im],
            points: sd
                .data()
                .iter()
                .map(|d| PointJson {
                    z: None,
                    lattice: Some([d.point.a, d.point.b]),
                    coweight: CoweightJson {
                        basis: "ambient".into(),
                        coords: d.coweight.iter().map(Q::to_string).collect(),
                    },
                })
                .collect(),
        }
    }
}
