//! Simple stratified spaces and the assembly of their cohomology package:
//! the four-term exact sequence around each degree,
//!
//!   H^k_c(c°L) → H^k_c(Y°) → H^k(Y°) → H^{k+1}_c(c°L),
//!
//! with explicit matrices. In simplicial mode the sequence is realized as
//! the long exact sequence of the pair (Y, Y₁), Y₁ the full subcomplex
//! without the singular vertex: H^k(Y,Y₁) ≅ H^k_c(c°L) by excision and
//! H^k(Y) ≅ H^k_c(Y°) for k ≥ 1, so middle terms carry H^k(Y) with the
//! unreduced bottom degree. In rank mode the caller supplies dimensions and
//! either ranks or matrices, and exactness is verified rather than produced.

use crate::docs::{MapsSpec, RankDocument};
use crate::error::Error;
use crate::qlinalg::{self, RationalMatrix, Rational};
use crate::simplicial::{pair_cohomology, SimplicialComplex};
use crate::GradedDims;
use num_traits::One;

/// A triangulated space with one marked singular vertex and half-dimension n.
#[derive(Debug, Clone)]
pub struct StratifiedSpace {
    pub complex: SimplicialComplex,
    pub singular_vertex: String,
    pub half_dim: usize,
    pub link: SimplicialComplex,
}

/// Where a package's numbers came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Simplicial,
    RankMode,
}

/// The assembled exact-sequence data. Matrix shapes define the sequence:
/// `maps_a[k]`: cone_c[k] → mid[k], `maps_b[k]`: mid[k] → dims_yo[k],
/// `maps_c[k]`: dims_yo[k] → cone_c[k+1], where mid[k] is the
/// H^k(Y)-identified middle term.
#[derive(Debug, Clone)]
pub struct CohomologyPackage {
    pub n: usize,
    pub dims_y: GradedDims,
    pub dims_yo: GradedDims,
    /// Honest compactly-supported dims of Y° (degree 0 reduced).
    pub dims_yo_c: GradedDims,
    /// H^k_c(c°L) for k = 0..=2n+1 (top entry always 0).
    pub dims_cone_c: GradedDims,
    pub dims_l: GradedDims,
    pub maps_a: Vec<RationalMatrix>,
    pub maps_b: Vec<RationalMatrix>,
    pub maps_c: Vec<RationalMatrix>,
    pub provenance: Provenance,
    pub notes: Vec<String>,
}

impl CohomologyPackage {
    /// Middle-term dims of the assembled sequence (H^k(Y)-identified).
    pub fn mid_dims(&self) -> GradedDims {
        self.maps_a.iter().map(|m| m.rows()).collect()
    }

    pub fn top_degree(&self) -> usize {
        2 * self.n
    }

    fn term_label(&self, index: usize) -> String {
        let k = index / 3;
        match index % 3 {
            0 => format!("H^{k}_c(c°L)"),
            1 => format!("H^{k}_c(Y°)"),
            _ => format!("H^{k}(Y°)"),
        }
    }

    /// The maps in sequence order a_0, b_0, c_0, a_1, ...
    fn sequence(&self) -> Vec<&RationalMatrix> {
        let mut seq = Vec::new();
        for k in 0..=self.top_degree() {
            seq.push(&self.maps_a[k]);
            seq.push(&self.maps_b[k]);
            seq.push(&self.maps_c[k]);
        }
        seq
    }

    /// Shape consistency of the whole chain.
    pub fn verify_shapes(&self) -> Result<(), Error> {
        let top = self.top_degree();
        let expect = |cond: bool, msg: String| {
            if cond {
                Ok(())
            } else {
                Err(Error::Validation(msg))
            }
        };
        expect(
            self.dims_y.len() == top + 1
                && self.dims_yo.len() == top + 1
                && self.dims_yo_c.len() == top + 1
                && self.dims_cone_c.len() == top + 2
                && self.maps_a.len() == top + 1
                && self.maps_b.len() == top + 1
                && self.maps_c.len() == top + 1,
            "package arrays have inconsistent lengths".into(),
        )?;
        for k in 0..=top {
            expect(
                self.maps_a[k].cols() == self.dims_cone_c[k],
                format!("a_{k} domain does not match H^{k}_c(c°L)"),
            )?;
            expect(
                self.maps_b[k].cols() == self.maps_a[k].rows(),
                format!("b_{k} domain does not match a_{k} codomain"),
            )?;
            expect(
                self.maps_b[k].rows() == self.dims_yo[k] && self.maps_c[k].cols() == self.dims_yo[k],
                format!("maps at H^{k}(Y°) have wrong shapes"),
            )?;
            expect(
                self.maps_c[k].rows() == self.dims_cone_c[k + 1],
                format!("c_{k} codomain does not match H^{}_c(c°L)", k + 1),
            )?;
        }
        Ok(())
    }

    /// Exactness at every interior term; the error names the first failing
    /// joint.
    pub fn verify_exactness(&self) -> Result<(), Error> {
        self.verify_shapes()?;
        let seq = self.sequence();
        // Leading injectivity (the sequence continues from zero on the left).
        if qlinalg::rank(&seq[0].clone()) != seq[0].cols() {
            return Err(Error::Validation(format!(
                "sequence not exact at {}: a_0 is not injective",
                self.term_label(0)
            )));
        }
        for i in 0..seq.len() - 1 {
            if !qlinalg::is_exact_at(seq[i], seq[i + 1])? {
                return Err(Error::Validation(format!(
                    "sequence not exact at {}",
                    self.term_label(i + 1)
                )));
            }
        }
        // Trailing surjectivity onto the (always zero) top cone term.
        let last = seq[seq.len() - 1];
        if qlinalg::rank(last) != last.rows() {
            return Err(Error::Validation(format!(
                "sequence not exact at {}",
                self.term_label(seq.len())
            )));
        }
        Ok(())
    }

    /// Interior rank identity: rank(in) + rank(out) = dim at every interior
    /// term. Implied by exactness; exposed for reporting.
    pub fn interior_rank_identity(&self) -> bool {
        let seq = self.sequence();
        (0..seq.len() - 1).all(|i| {
            qlinalg::rank(seq[i]) + qlinalg::rank(seq[i + 1]) == seq[i + 1].cols()
        })
    }
}

/// Validate a complex as a simple stratified space: dim(Y) = 2n, the marked
/// vertex exists, and its link is a nonempty pseudomanifold of dimension
/// 2n−1.
pub fn build_stratified(
    k: &SimplicialComplex,
    y: &str,
    n: usize,
) -> Result<StratifiedSpace, Error> {
    if n == 0 {
        return Err(Error::Input("half-dimension n must be at least 1".into()));
    }
    if k.vertex_index(y).is_none() {
        return Err(Error::Input(format!("singular vertex {y:?} not in complex")));
    }
    if k.dim() != 2 * n as isize {
        return Err(Error::Input(format!(
            "complex has dimension {} but n = {n} requires {}",
            k.dim(),
            2 * n
        )));
    }
    let link = k.vertex_link(y)?;
    if link.dim() < 0 {
        return Err(Error::Validation(format!(
            "link of {y:?} is empty; not a cone neighborhood"
        )));
    }
    if link.dim() != 2 * n as isize - 1 {
        return Err(Error::Validation(format!(
            "link of {y:?} has dimension {} but should be {}",
            link.dim(),
            2 * n - 1
        )));
    }
    let offenders = link.pseudomanifold_offenders();
    if !offenders.is_empty() {
        return Err(Error::Validation(format!(
            "link of {y:?} fails the pseudomanifold check: {}",
            offenders.join("; ")
        )));
    }
    Ok(StratifiedSpace {
        complex: k.clone(),
        singular_vertex: y.to_string(),
        half_dim: n,
        link,
    })
}

/// Assemble the package from a triangulation via the pair (Y, Y₁).
pub fn assemble_package_simplicial(s: &StratifiedSpace) -> Result<CohomologyPackage, Error> {
    let n = s.half_dim;
    let top = 2 * n;
    let y1 = s.complex.deleted_complex(&s.singular_vertex)?;
    let pair = pair_cohomology(&s.complex, &y1)?;

    let dims_y = pair.abs_dims.clone();
    let dims_yo = pair.sub_dims.clone();
    let mut dims_cone_c = pair.rel_dims.clone();
    dims_cone_c.push(0);
    let dims_l = if s.link.dim() >= 0 {
        let mut d = s.link.cohomology_dims();
        d.resize(top, 0);
        d
    } else {
        vec![0; top]
    };

    let mut notes = Vec::new();
    notes.push(
        "H^k_c(c°L) realized as H^k(Y,Y₁) by excision; H^k_c(Y°) as H^k(Y) for k ≥ 1 \
         (unreduced at k = 0); H^k(Y°) as H^k(Y₁)"
            .to_string(),
    );
    notes.push(
        "manifold condition on the link is recorded as an unchecked assumption \
         (only the pseudomanifold check runs)"
            .to_string(),
    );

    // Footnote identification H^k_c(c°L) = H^{k-1}(L) holds unreduced for
    // k >= 2; at k = 1 the reduced group appears instead.
    for k in 2..=top {
        if dims_cone_c[k] != dims_l[k - 1] {
            return Err(Error::Internal(format!(
                "excision dims H^{k}(Y,Y₁) = {} disagree with H^{}(L) = {}",
                dims_cone_c[k],
                k - 1,
                dims_l[k - 1]
            )));
        }
    }
    let link_components = if s.link.dim() >= 0 { s.link.num_components() } else { 0 };
    if link_components > 0 && dims_cone_c[1] != link_components - 1 {
        notes.push(format!(
            "degree-1 cone term {} differs from reduced H^0(L) = {}",
            dims_cone_c[1],
            link_components - 1
        ));
    } else if link_components > 1 {
        notes.push(format!(
            "link is disconnected ({link_components} components); reduced degree-1 cone term in use"
        ));
    }

    let connected = s.complex.num_components() == 1;
    let mut dims_yo_c = dims_y.clone();
    if connected {
        dims_yo_c[0] = dims_y[0] - 1;
        notes.push("H^0_c(Y°) = H^0(Y) − 1 (Y connected, reduced bottom degree)".to_string());
    } else {
        notes.push("Y is disconnected; degree-0 compact-support identification suspect".to_string());
    }

    let mut maps_a = Vec::new();
    let mut maps_b = Vec::new();
    let mut maps_c = Vec::new();
    for k in 0..=top {
        maps_a.push(pair.map_rel_to_abs(k));
        maps_b.push(pair.map_abs_to_sub(k));
        maps_c.push(pair.connecting(k));
    }

    let pkg = CohomologyPackage {
        n,
        dims_y,
        dims_yo,
        dims_yo_c,
        dims_cone_c,
        dims_l,
        maps_a,
        maps_b,
        maps_c,
        provenance: Provenance::Simplicial,
        notes,
    };
    // A failure here would contradict exactness of the pair sequence.
    pkg.verify_exactness()
        .map_err(|e| Error::Internal(format!("assembled pair sequence is not exact: {e}")))?;
    Ok(pkg)
}

/// Canonical block matrix of rank r for a map between spaces of dims
/// `rows` and `cols` in an exact chain: sends the last r source coordinates
/// to the first r target coordinates, so images line up with kernels.
pub fn canonical_rank_block(rows: usize, cols: usize, r: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zero(rows, cols);
    for i in 0..r.min(rows).min(cols) {
        m.set(i, cols - r + i, Rational::one());
    }
    m
}

/// Assemble a package from a rank document. The supplied ranks or matrices
/// are verified for exactness and rejected (naming the first failing joint)
/// if they violate it.
pub fn assemble_package_ranks(doc: &RankDocument) -> Result<CohomologyPackage, Error> {
    doc.validate()?;
    let n = doc.n;
    let top = 2 * n;

    // Cone dims from the link via the degree shift, reduced at the bottom:
    // H^k_c(c°L) = H^{k-1}(L) for k >= 2, reduced H^0(L) at k = 1.
    let mut dims_cone_c = vec![0; top + 2];
    dims_cone_c[1] = doc.dims_l[0].saturating_sub(1);
    for k in 2..=top + 1 {
        if k - 1 < doc.dims_l.len() {
            dims_cone_c[k] = doc.dims_l[k - 1];
        }
    }

    // Middle terms: the pair sequence carries H^k(Y), which matches the
    // supplied compact-support dims except at the unreduced bottom degree.
    let mut mid = doc.dims_yo_c.clone();
    mid[0] = doc.dims_y[0];

    let (maps_a, maps_b, maps_c) = match &doc.maps {
        MapsSpec::Ranks(triples) => {
            let mut a = Vec::new();
            let mut b = Vec::new();
            let mut c = Vec::new();
            for k in 0..=top {
                let [ra, rb, rc] = triples[k];
                if ra > dims_cone_c[k].min(mid[k])
                    || rb > mid[k].min(doc.dims_yo[k])
                    || rc > doc.dims_yo[k].min(dims_cone_c[k + 1])
                {
                    return Err(Error::Input(format!(
                        "rank triple {:?} at degree {k} exceeds the adjacent dimensions",
                        triples[k]
                    )));
                }
                a.push(canonical_rank_block(mid[k], dims_cone_c[k], ra));
                b.push(canonical_rank_block(doc.dims_yo[k], mid[k], rb));
                c.push(canonical_rank_block(dims_cone_c[k + 1], doc.dims_yo[k], rc));
            }
            (a, b, c)
        }
        MapsSpec::Matrices { a, b, c } => (a.clone(), b.clone(), c.clone()),
    };

    let notes = vec![
        "rank-mode package: H^k_c(c°L) populated from dims_l via the degree shift, \
         reduced at the bottom degree"
            .to_string(),
        "sequence middle term at degree 0 is the unreduced H^0(Y)".to_string(),
    ];

    let pkg = CohomologyPackage {
        n,
        dims_y: doc.dims_y.clone(),
        dims_yo: doc.dims_yo.clone(),
        dims_yo_c: doc.dims_yo_c.clone(),
        dims_cone_c,
        dims_l: doc.dims_l.clone(),
        maps_a,
        maps_b,
        maps_c,
        provenance: Provenance::RankMode,
        notes,
    };
    pkg.verify_exactness()?;
    Ok(pkg)
}

/// Per-degree support/cosupport consistency verdicts for an S₀ table
/// against the package it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SupportCheckReport {
    pub support_ok: Vec<bool>,
    pub cosupport_ok: Vec<bool>,
    pub notes: Vec<String>,
}

/// Check the proved consequences of the support/cosupport conditions:
/// S₀ agrees with H^i(Y°) below the middle and with the H^i(Y)-identified
/// middle term above it.
pub fn support_cosupport_check(
    pkg: &CohomologyPackage,
    s0_table: &GradedDims,
) -> SupportCheckReport {
    let n = pkg.n;
    let top = pkg.top_degree();
    let mid = pkg.mid_dims();
    let mut support_ok = vec![true; top + 1];
    let mut cosupport_ok = vec![true; top + 1];
    for i in 0..=top {
        if i < n {
            cosupport_ok[i] = s0_table.get(i) == pkg.dims_yo.get(i);
        }
        if i > n {
            support_ok[i] = s0_table.get(i) == mid.get(i);
        }
    }
    SupportCheckReport {
        support_ok,
        cosupport_ok,
        notes: vec![
            "degrees below n compared with H^i(Y°); degrees above n with the \
             H^i(Y)-identified middle term"
                .to_string(),
        ],
    }
}
