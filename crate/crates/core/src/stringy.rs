//! Dimension tables for the three coefficient systems (S₀, IC, ordinary ℚ),
//! the middle-degree short exact sequences, Poincaré duality checks, and
//! the multi-node obstruction test.

use crate::docs::MultinodeBlock;
use crate::error::Error;
use crate::qlinalg::{self, RationalMatrix, Rational};
use crate::stratified::CohomologyPackage;
use crate::GradedDims;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Rank of the degree-n map H^n_c(c°L) → H^n_c(Y°); the space K₀.
pub fn k0_dim(pkg: &CohomologyPackage) -> usize {
    qlinalg::rank(&pkg.maps_a[pkg.n])
}

/// Rank of the degree-n connecting map H^n(Y°) → H^{n+1}_c(c°L); C₀.
pub fn c0_dim(pkg: &CohomologyPackage) -> usize {
    qlinalg::rank(&pkg.maps_c[pkg.n])
}

/// Dimensions of H^i(Y; S₀): H^i(Y°) below the middle, the sequence middle
/// term above it, and in degree n the extension of H^n(Y°) by K₀. The
/// second short exact sequence gives an independent formula for the middle
/// entry; disagreement means the package is corrupted.
pub fn compute_s0(pkg: &CohomologyPackage) -> Result<GradedDims, Error> {
    let n = pkg.n;
    let mid = pkg.mid_dims();
    let mut dims = vec![0; 2 * n + 1];
    for i in 0..n {
        dims[i] = pkg.dims_yo[i];
    }
    for i in n + 1..=2 * n {
        dims[i] = mid[i];
    }
    let via_a = k0_dim(pkg) + pkg.dims_yo[n];
    let via_b = pkg.dims_yo_c[n] + c0_dim(pkg);
    if via_a != via_b {
        return Err(Error::Internal(format!(
            "middle-degree cross-check failed: K₀ + dim H^n(Y°) = {via_a} but \
             dim H^n_c(Y°) + C₀ = {via_b}"
        )));
    }
    dims[n] = via_a;
    Ok(dims)
}

/// Dimensions of H^i(Y; IC): equal to the S₀ table off the middle degree;
/// in degree n the rank of H^n_c(Y°) → H^n(Y°).
pub fn compute_ic(pkg: &CohomologyPackage) -> Result<GradedDims, Error> {
    let mut dims = compute_s0(pkg)?;
    dims[pkg.n] = qlinalg::rank(&pkg.maps_b[pkg.n]);
    Ok(dims)
}

/// Ordinary cohomology of Y.
pub fn compute_q(pkg: &CohomologyPackage) -> GradedDims {
    pkg.dims_y.clone()
}

/// Dimension-level models of the degree-n maps c: H^n_c(Y°) → H^n(Y;S₀)
/// and d: H^n(Y;S₀) → H^n(Y°), as the block inclusions and projections the
/// two short exact sequences provide. Returns (c injective, d surjective).
pub fn middle_maps_check(pkg: &CohomologyPackage) -> Result<(bool, bool), Error> {
    let n = pkg.n;
    let s0_n = compute_s0(pkg)?[n];
    let yo_c_n = pkg.dims_yo_c[n];
    let yo_n = pkg.dims_yo[n];
    // c = [I; 0] from the splitting of SES (b), d = [0 | I] from SES (a).
    let mut c = RationalMatrix::zero(s0_n, yo_c_n);
    for i in 0..yo_c_n.min(s0_n) {
        c.set(i, i, Rational::one());
    }
    let mut d = RationalMatrix::zero(yo_n, s0_n);
    for i in 0..yo_n.min(s0_n) {
        d.set(i, s0_n - yo_n + i, Rational::one());
    }
    Ok((qlinalg::rank(&c) == yo_c_n, qlinalg::rank(&d) == yo_n))
}

/// Palindromic dimension check: dims[i] = dims[2n−i] for all i.
pub fn check_poincare(dims: &GradedDims, n: usize) -> Result<bool, Error> {
    if dims.len() != 2 * n + 1 {
        return Err(Error::Input(format!(
            "table has {} entries but degree range 0..={} needs {}",
            dims.len(),
            2 * n,
            2 * n + 1
        )));
    }
    Ok((0..=2 * n).all(|i| dims[i] == dims[2 * n - i]))
}

/// Stringy homology dims: over ℚ the S₀ table read homologically. The
/// middle entry contains cycle classes from both constituents; the two
/// image dimensions are reported alongside it in the report notes.
pub fn compute_sh(table_s0: &GradedDims) -> GradedDims {
    table_s0.clone()
}

/// Multi-node input: per-node ℚ link dims plus the two direct-sum maps
/// whose vanishing the obstruction test evaluates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiNodeData {
    pub n: usize,
    pub dims_yo: GradedDims,
    pub dims_yo_c: GradedDims,
    pub node_links: Vec<GradedDims>,
    /// ⊕_b H^{n−1}(cL_b; S₀) → H^n_c(Y°)
    pub alpha2: RationalMatrix,
    /// H^n(Y°) → ⊕_b H^{n+1}_c(cL_b; S₀)
    pub gamma1: RationalMatrix,
}

impl MultiNodeData {
    pub fn from_block(
        block: &MultinodeBlock,
        n: usize,
        dims_yo: &GradedDims,
        dims_yo_c: &GradedDims,
    ) -> Self {
        MultiNodeData {
            n,
            dims_yo: dims_yo.clone(),
            dims_yo_c: dims_yo_c.clone(),
            node_links: block.node_links.clone(),
            alpha2: block.alpha2.clone(),
            gamma1: block.gamma1.clone(),
        }
    }
}

/// Verdicts of the multi-node obstruction test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub alpha2_is_zero: bool,
    pub gamma1_is_zero: bool,
    pub c_injective: bool,
    pub d_surjective: bool,
}

/// Evaluate the supplied α₂ and γ₁: c is injective iff α₂ vanishes, d is
/// surjective iff γ₁ vanishes. Only the supplied matrices are judged; no
/// claim is made about other choices.
pub fn multinode_obstruction(data: &MultiNodeData) -> Result<ObstructionReport, Error> {
    let n = data.n;
    if n == 0 {
        return Err(Error::Input("multi-node data needs n ≥ 1".into()));
    }
    for (b, l) in data.node_links.iter().enumerate() {
        if l.len() != 2 * n {
            return Err(Error::Input(format!(
                "node {b} link dims have length {} but 2n = {}",
                l.len(),
                2 * n
            )));
        }
    }
    let sum_at = |deg: usize| -> usize { data.node_links.iter().map(|l| l[deg]).sum() };
    if data.alpha2.cols() != sum_at(n - 1) || data.alpha2.rows() != data.dims_yo_c.get(n).copied().unwrap_or(0) {
        return Err(Error::Input(format!(
            "α₂ is {}×{} but the direct-sum dims require {}×{}",
            data.alpha2.rows(),
            data.alpha2.cols(),
            data.dims_yo_c.get(n).copied().unwrap_or(0),
            sum_at(n - 1)
        )));
    }
    if data.gamma1.cols() != data.dims_yo.get(n).copied().unwrap_or(0) || data.gamma1.rows() != sum_at(n) {
        return Err(Error::Input(format!(
            "γ₁ is {}×{} but the direct-sum dims require {}×{}",
            data.gamma1.rows(),
            data.gamma1.cols(),
            sum_at(n),
            data.dims_yo.get(n).copied().unwrap_or(0)
        )));
    }
    let alpha2_is_zero = data.alpha2.is_zero();
    let gamma1_is_zero = data.gamma1.is_zero();
    Ok(ObstructionReport {
        alpha2_is_zero,
        gamma1_is_zero,
        c_injective: alpha2_is_zero,
        d_surjective: gamma1_is_zero,
    })
}
