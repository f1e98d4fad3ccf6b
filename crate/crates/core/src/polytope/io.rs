//! JSON polytope files: `{"dim": n, "vertices": [[..], ..]}` or
//! `{"dim": n, "halfspaces": [{"normal": [..], "offset": b}, ..]}`.

use serde::{Deserialize, Serialize};
use std::path::Path;

use super::{EnumerationOptions, HalfSpace, Point, Polytope, PolytopeH, PolytopeV};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeFile {
    Vertices {
        dim: usize,
        vertices: Vec<Vec<f64>>,
    },
    Halfspaces {
        dim: usize,
        halfspaces: Vec<HalfSpace>,
    },
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::invalid(format!(
                "polytope file must hold {{\"dim\", \"vertices\"}} or {{\"dim\", \"halfspaces\"}}: {e}"
            ))
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_vertices(p: &PolytopeV) -> Self {
        PolytopeFile::Vertices {
            dim: p.dim,
            vertices: p.vertices.iter().map(|v| v.to_vec()).collect(),
        }
    }

    pub fn into_polytope(self, opts: &EnumerationOptions) -> Result<Polytope> {
        match self {
            PolytopeFile::Vertices { dim, vertices } => {
                let v = PolytopeV::new(dim, vertices.into_iter().map(Point::new).collect())?;
                Polytope::from_vertices(&v, opts)
            }
            PolytopeFile::Halfspaces { dim, halfspaces } => {
                let h = PolytopeH::new(dim, halfspaces, opts.tolerance)?;
                Polytope::from_halfspaces(&h, opts)
            }
        }
    }
}
