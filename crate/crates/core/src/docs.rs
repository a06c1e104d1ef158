//! The two JSON input formats: triangulation documents and rank documents.
//!
//! Both carry `format_version: "1"`. Rationals on the wire are `[num, den]`
//! integer pairs; dimension arrays are indexed from degree 0.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qlinalg::RationalMatrix;
use crate::GradedDims;

pub const FORMAT_VERSION: &str = "1";

/// Triangulation input: a complex given by facets, a marked singular vertex
/// and the half-dimension n.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SimplicialDocument {
    pub format_version: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub singular_vertex: String,
    pub half_dim: usize,
}

impl SimplicialDocument {
    pub fn validate(&self) -> Result<(), Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Input(format!(
                "unsupported format_version {:?} (expected {FORMAT_VERSION:?})",
                self.format_version
            )));
        }
        if self.half_dim == 0 {
            return Err(Error::Input("half_dim must be at least 1".into()));
        }
        for f in &self.facets {
            for v in f {
                if !self.vertices.contains(v) {
                    return Err(Error::Input(format!(
                        "facet {f:?} references unknown vertex {v:?}"
                    )));
                }
            }
        }
        if !self.vertices.contains(&self.singular_vertex) {
            return Err(Error::Input(format!(
                "singular_vertex {:?} is not in the vertex list",
                self.singular_vertex
            )));
        }
        Ok(())
    }

    /// Validate and build the complex. Isolated vertices listed without any
    /// facet are kept as 0-simplices.
    pub fn complex(&self) -> Result<crate::simplicial::SimplicialComplex, Error> {
        self.validate()?;
        let mut facets = self.facets.clone();
        let covered: std::collections::HashSet<&String> =
            self.facets.iter().flatten().collect();
        for v in &self.vertices {
            if !covered.contains(v) {
                facets.push(vec![v.clone()]);
            }
        }
        crate::simplicial::SimplicialComplex::closure(&facets)
    }
}

/// Per-degree (rank a_k, rank b_k, rank c_k) triple.
pub type RankTriple = [usize; 3];

/// Map data for a rank document: either per-degree ranks, expanded to
/// canonical block matrices, or fully explicit matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum MapsSpec {
    #[serde(rename = "ranks")]
    Ranks(Vec<RankTriple>),
    #[serde(rename = "matrices")]
    Matrices {
        a: Vec<RationalMatrix>,
        b: Vec<RationalMatrix>,
        c: Vec<RationalMatrix>,
    },
}

/// Direct-sum data for the multi-node diagnostic: per-node link dims and the
/// two maps whose vanishing the single-node theory requires.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MultinodeBlock {
    pub node_links: Vec<GradedDims>,
    pub alpha2: RationalMatrix,
    pub gamma1: RationalMatrix,
}

/// Rank-mode input: Betti numbers of the five graded families plus map data,
/// used when a triangulation is not feasible.
///
/// `dims_yo_c` is compactly-supported cohomology of the smooth part; the
/// degree-0 term of the assembled exact sequence is `dims_y[0]` (the
/// sequence is the pair sequence, whose bottom end is unreduced).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RankDocument {
    pub format_version: String,
    pub n: usize,
    pub dims_y: GradedDims,
    pub dims_yo: GradedDims,
    pub dims_yo_c: GradedDims,
    pub dims_l: GradedDims,
    pub maps: MapsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multinode: Option<MultinodeBlock>,
}

impl RankDocument {
    pub fn validate(&self) -> Result<(), Error> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Input(format!(
                "unsupported format_version {:?} (expected {FORMAT_VERSION:?})",
                self.format_version
            )));
        }
        if self.n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        let len = 2 * self.n + 1;
        for (name, dims) in [
            ("dims_y", &self.dims_y),
            ("dims_yo", &self.dims_yo),
            ("dims_yo_c", &self.dims_yo_c),
        ] {
            if dims.len() != len {
                return Err(Error::Input(format!(
                    "{name} has length {} but n = {} requires {len}",
                    dims.len(),
                    self.n
                )));
            }
        }
        if self.dims_l.len() != 2 * self.n {
            return Err(Error::Input(format!(
                "dims_l has length {} but n = {} requires {}",
                self.dims_l.len(),
                self.n,
                2 * self.n
            )));
        }
        if let MapsSpec::Ranks(triples) = &self.maps {
            if triples.len() != len {
                return Err(Error::Input(format!(
                    "maps.ranks has {} degrees but n = {} requires {len}",
                    triples.len(),
                    self.n
                )));
            }
        }
        if let MapsSpec::Matrices { a, b, c } = &self.maps {
            for (name, ms) in [("a", a), ("b", b), ("c", c)] {
                if ms.len() != len {
                    return Err(Error::Input(format!(
                        "maps.matrices.{name} has {} degrees but n = {} requires {len}",
                        ms.len(),
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Parse either document kind from a JSON string.
pub fn parse_simplicial(text: &str) -> Result<SimplicialDocument, Error> {
    let doc: SimplicialDocument =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad simplicial JSON: {e}")))?;
    doc.validate()?;
    Ok(doc)
}

pub fn parse_ranks(text: &str) -> Result<RankDocument, Error> {
    let doc: RankDocument =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bad rank JSON: {e}")))?;
    doc.validate()?;
    Ok(doc)
}
