//! Shared in-crate test fixtures.

use crate::simplicial::SimplicialComplex;

pub fn verts(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn tetra_boundary() -> SimplicialComplex {
    SimplicialComplex::closure(&[
        verts(&["a", "b", "c"]),
        verts(&["a", "b", "d"]),
        verts(&["a", "c", "d"]),
        verts(&["b", "c", "d"]),
    ])
    .unwrap()
}

/// Two cones over squares joined by a triangulated cylinder, apexes
/// identified: a minimal pinched torus with the singular vertex "y".
pub fn pinched_torus() -> SimplicialComplex {
    let facets: Vec<Vec<String>> = vec![
        verts(&["y", "t1", "t2"]),
        verts(&["y", "t2", "t3"]),
        verts(&["y", "t3", "t4"]),
        verts(&["y", "t1", "t4"]),
        verts(&["y", "b1", "b2"]),
        verts(&["y", "b2", "b3"]),
        verts(&["y", "b3", "b4"]),
        verts(&["y", "b1", "b4"]),
        verts(&["t1", "t2", "b2"]),
        verts(&["t1", "b1", "b2"]),
        verts(&["t2", "t3", "b3"]),
        verts(&["t2", "b2", "b3"]),
        verts(&["t3", "t4", "b4"]),
        verts(&["t3", "b3", "b4"]),
        verts(&["t4", "t1", "b1"]),
        verts(&["t4", "b4", "b1"]),
    ];
    SimplicialComplex::closure(&facets).unwrap()
}
