//! Abstract simplicial complexes over ℚ: coboundary matrices, absolute and
//! relative cohomology with explicit cochain-level maps, vertex links and
//! deletions, and the long exact sequence of a pair.
//!
//! Orientation convention: the global vertex order (sorted vertex names)
//! induces the orientation of every simplex, and the coboundary uses the
//! alternating sign (−1)^position of the omitted vertex. The anchor case is a
//! single edge (a,b), whose δ⁰ is [[-1, 1]].

use std::collections::BTreeSet;

use crate::error::Error;
use crate::qlinalg::{self, RationalMatrix, Rational};
use crate::GradedDims;
use num_traits::One;

/// Finite abstract simplicial complex with ordered vertices.
///
/// `simplices[d]` holds the d-simplices as strictly increasing vertex-index
/// tuples, sorted lexicographically; the complex is closed under faces and
/// canonicalized on construction, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Smallest complex containing the given facets.
    pub fn closure(facets: &[Vec<String>]) -> Result<Self, Error> {
        for f in facets {
            if f.is_empty() {
                return Err(Error::Input("empty facet".into()));
            }
            let set: BTreeSet<&String> = f.iter().collect();
            if set.len() != f.len() {
                return Err(Error::Input(format!(
                    "duplicate vertex within facet {:?}",
                    f
                )));
            }
        }
        let vertices: Vec<String> = facets
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index_of = |name: &String| vertices.binary_search(name).expect("vertex present");
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in facets {
            let mut idx: Vec<usize> = f.iter().map(index_of).collect();
            idx.sort_unstable();
            for mask in 1u64..(1 << idx.len()) {
                let face: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        Ok(SimplicialComplex {
            vertices,
            simplices: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        })
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            simplices: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Dimension; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn simplices_of_dim(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |s| s.as_slice())
    }

    pub fn num_simplices(&self, d: usize) -> usize {
        self.simplices_of_dim(d).len()
    }

    pub fn contains_simplex(&self, simplex: &[usize]) -> bool {
        if simplex.is_empty() {
            return false;
        }
        self.simplices
            .get(simplex.len() - 1)
            .is_some_and(|s| s.binary_search_by(|x| x.as_slice().cmp(simplex)).is_ok())
    }

    fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        self.simplices
            .get(simplex.len() - 1)?
            .binary_search_by(|x| x.as_slice().cmp(simplex))
            .ok()
    }

    /// Names of the vertices of a simplex.
    pub fn simplex_names(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Matrix of δ^deg: C^deg → C^{deg+1} under the global vertex order.
    pub fn coboundary_matrix(&self, deg: usize) -> RationalMatrix {
        let lows = self.simplices_of_dim(deg);
        let highs = self.simplices_of_dim(deg + 1);
        let mut m = RationalMatrix::zero(highs.len(), lows.len());
        for (row, tau) in highs.iter().enumerate() {
            for (pos, _) in tau.iter().enumerate() {
                let mut face = tau.clone();
                face.remove(pos);
                let col = self
                    .simplex_index(&face)
                    .expect("complex closed under faces");
                let sign = if pos % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                m.set(row, col, sign);
            }
        }
        m
    }

    /// Betti numbers of the cochain complex: dim ker δ^d − rank δ^{d−1}.
    pub fn cohomology_dims(&self) -> GradedDims {
        if self.simplices.is_empty() {
            return Vec::new();
        }
        let top = self.simplices.len() - 1;
        (0..=top)
            .map(|d| {
                let delta = self.coboundary_matrix(d);
                let kernel = self.num_simplices(d) - qlinalg::rank(&delta);
                let prev_rank = if d == 0 {
                    0
                } else {
                    qlinalg::rank(&self.coboundary_matrix(d - 1))
                };
                kernel - prev_rank
            })
            .collect()
    }

    /// Is `other` a subcomplex (same vertex names, every simplex present)?
    pub fn has_subcomplex(&self, other: &SimplicialComplex) -> bool {
        other.simplices.iter().enumerate().all(|(d, simps)| {
            simps.iter().all(|s| {
                let translated: Option<Vec<usize>> = s
                    .iter()
                    .map(|&i| self.vertex_index(&other.vertices[i]))
                    .collect();
                match translated {
                    Some(mut t) => {
                        t.sort_unstable();
                        t.len() == d + 1 && self.contains_simplex(&t)
                    }
                    None => false,
                }
            })
        })
    }

    /// Link of a vertex: all σ with v ∉ σ and σ∪{v} in the complex.
    pub fn vertex_link(&self, v: &str) -> Result<SimplicialComplex, Error> {
        let vi = self
            .vertex_index(v)
            .ok_or_else(|| Error::Input(format!("unknown vertex {v:?}")))?;
        let mut facets = Vec::new();
        for dim_simps in &self.simplices {
            for s in dim_simps {
                if s.contains(&vi) && s.len() > 1 {
                    let face: Vec<String> = s
                        .iter()
                        .filter(|&&x| x != vi)
                        .map(|&x| self.vertices[x].clone())
                        .collect();
                    facets.push(face);
                }
            }
        }
        if facets.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        SimplicialComplex::closure(&facets)
    }

    /// Full subcomplex on all vertices except v.
    pub fn deleted_complex(&self, v: &str) -> Result<SimplicialComplex, Error> {
        let vi = self
            .vertex_index(v)
            .ok_or_else(|| Error::Input(format!("unknown vertex {v:?}")))?;
        let mut facets = Vec::new();
        for dim_simps in &self.simplices {
            for s in dim_simps {
                if !s.contains(&vi) {
                    facets.push(self.simplex_names(s));
                }
            }
        }
        if facets.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        SimplicialComplex::closure(&facets)
    }

    /// Pseudomanifold check on the top-dimensional part: purity (every
    /// simplex is a face of a top simplex) and every codimension-1 simplex
    /// in exactly two top simplices. Returns offending simplices by name.
    pub fn pseudomanifold_offenders(&self) -> Vec<String> {
        let mut offenders = Vec::new();
        if self.simplices.is_empty() {
            return offenders;
        }
        let top = self.simplices.len() - 1;
        if top == 0 {
            return offenders;
        }
        // Purity: every simplex is a face of some top simplex.
        let top_simps = self.simplices_of_dim(top);
        for d in 0..top {
            for s in self.simplices_of_dim(d) {
                let covered = top_simps
                    .iter()
                    .any(|t| s.iter().all(|v| t.contains(v)));
                if !covered {
                    offenders.push(format!(
                        "{:?} is not a face of any top-dimensional simplex",
                        self.simplex_names(s)
                    ));
                }
            }
        }
        for s in self.simplices_of_dim(top - 1) {
            let count = top_simps
                .iter()
                .filter(|t| s.iter().all(|v| t.contains(v)))
                .count();
            if count != 2 {
                offenders.push(format!(
                    "{:?} lies in {} top simplices (want 2)",
                    self.simplex_names(s),
                    count
                ));
            }
        }
        offenders
    }

    /// Number of connected components (on vertices).
    pub fn num_components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in self.simplices_of_dim(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect::<BTreeSet<_>>().len()
    }
}

/// A chosen basis for H^d of a cochain complex: representatives together with
/// the data needed to express an arbitrary cocycle's class in it.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    /// Columns are cocycle representatives of the basis classes.
    pub reps: RationalMatrix,
    /// Columns: basis of im δ^{d-1} followed by the representatives.
    span: RationalMatrix,
}

impl CohomologyBasis {
    /// Basis of H at the middle of  C_prev --δ_prev--> C --δ--> C_next.
    pub fn new(delta_prev: &RationalMatrix, delta: &RationalMatrix) -> Self {
        let kernel = qlinalg::kernel_basis(delta);
        let image = qlinalg::image_basis(delta_prev);
        // Extend the image basis to a basis of the kernel; the appended
        // kernel columns that raise the rank are the class representatives.
        let mut span = image.basis.clone();
        let mut reps_cols = Vec::new();
        let mut current = qlinalg::rank(&span);
        for j in 0..kernel.basis.cols() {
            let cand = span.hstack(&RationalMatrix::from_columns(
                kernel.ambient_dim,
                &[kernel.basis.column(j)],
            ));
            let r = qlinalg::rank(&cand);
            if r > current {
                span = cand;
                current = r;
                reps_cols.push(kernel.basis.column(j));
            }
        }
        let ambient = delta.cols();
        CohomologyBasis {
            reps: RationalMatrix::from_columns(ambient, &reps_cols),
            span,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the class of a cocycle in this basis.
    pub fn class_coords(&self, cocycle: &[Rational]) -> Vec<Rational> {
        let sol = qlinalg::solve(&self.span, cocycle)
            .expect("ambient dimension matches")
            .expect("vector is a cocycle, so it lies in the span");
        let image_cols = self.span.cols() - self.reps.cols();
        sol[image_cols..].to_vec()
    }
}

/// Relative cochain data for a pair (K, A): coordinates on the simplices of
/// K not in A, with inclusion/projection matrices to and from C^d(K).
struct RelativeCochains {
    /// Per degree: indices (into K's simplex list) of the non-A simplices.
    kept: Vec<Vec<usize>>,
}

impl RelativeCochains {
    fn new(k: &SimplicialComplex, a: &SimplicialComplex, top: usize) -> Self {
        let kept = (0..=top + 1)
            .map(|d| {
                (0..k.num_simplices(d))
                    .filter(|&i| {
                        let s = &k.simplices_of_dim(d)[i];
                        let names = k.simplex_names(s);
                        let translated: Option<Vec<usize>> =
                            names.iter().map(|n| a.vertex_index(n)).collect();
                        match translated {
                            Some(mut t) => {
                                t.sort_unstable();
                                !a.contains_simplex(&t)
                            }
                            None => true,
                        }
                    })
                    .collect()
            })
            .collect();
        RelativeCochains { kept }
    }

    fn dim(&self, d: usize) -> usize {
        self.kept.get(d).map_or(0, |v| v.len())
    }

    /// Inclusion C^d(K,A) → C^d(K) (extension by zero).
    fn inclusion(&self, k: &SimplicialComplex, d: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zero(k.num_simplices(d), self.dim(d));
        let empty = Vec::new();
        for (col, &row) in self.kept.get(d).unwrap_or(&empty).iter().enumerate() {
            m.set(row, col, Rational::one());
        }
        m
    }

    /// Projection C^d(K) → C^d(K,A).
    fn projection(&self, k: &SimplicialComplex, d: usize) -> RationalMatrix {
        self.inclusion(k, d).transpose()
    }
}

/// Restriction matrix C^d(K) → C^d(A) (pick out the coordinates of the
/// simplices of A, translated through vertex names).
fn restriction_matrix(k: &SimplicialComplex, a: &SimplicialComplex, d: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zero(a.num_simplices(d), k.num_simplices(d));
    for (row, s) in a.simplices_of_dim(d).iter().enumerate() {
        let names = a.simplex_names(s);
        let mut t: Vec<usize> = names
            .iter()
            .map(|n| k.vertex_index(n).expect("subcomplex vertex"))
            .collect();
        t.sort_unstable();
        let col = k.simplex_index(&t).expect("subcomplex simplex");
        m.set(row, col, Rational::one());
    }
    m
}

/// Graded dims of relative cohomology H^*(K, A) plus the cochain-level data
/// used to build the long exact sequence.
pub struct PairCohomology {
    pub top: usize,
    pub rel_dims: GradedDims,
    pub abs_dims: GradedDims,
    pub sub_dims: GradedDims,
    pub rel_bases: Vec<CohomologyBasis>,
    pub abs_bases: Vec<CohomologyBasis>,
    pub sub_bases: Vec<CohomologyBasis>,
    k: SimplicialComplex,
    a: SimplicialComplex,
    rel: RelativeCochains,
}

/// Long exact sequence of a pair, with explicit matrices.
///
/// Terms repeat in the pattern [H^d(K,A), H^d(K), H^d(A)] for d = 0..top;
/// `maps[i]` sends `terms[i]` to `terms[i+1]`.
pub struct PairLes {
    pub terms: Vec<(String, usize)>,
    pub maps: Vec<RationalMatrix>,
}

impl PairLes {
    /// Verify exactness at every interior term.
    pub fn check_exactness(&self) -> Result<(), Error> {
        for i in 0..self.maps.len() - 1 {
            let ok = qlinalg::is_exact_at(&self.maps[i], &self.maps[i + 1])?;
            if !ok {
                return Err(Error::Internal(format!(
                    "pair LES fails exactness at term {} ({})",
                    i + 1,
                    self.terms[i + 1].0
                )));
            }
        }
        Ok(())
    }
}

/// Cohomology of the pair (k, a): relative, absolute and subcomplex Betti
/// numbers with bases. `a` may be empty (relative = absolute) or equal to k.
pub fn pair_cohomology(
    k: &SimplicialComplex,
    a: &SimplicialComplex,
) -> Result<PairCohomology, Error> {
    if !k.has_subcomplex(a) {
        return Err(Error::Input(
            "second complex is not a subcomplex of the first".into(),
        ));
    }
    if k.dim() < 0 {
        return Err(Error::Input("empty complex has no cohomology to compute".into()));
    }
    let top = k.dim() as usize;
    let rel = RelativeCochains::new(k, a, top);

    let delta_k: Vec<RationalMatrix> = (0..=top).map(|d| k.coboundary_matrix(d)).collect();
    let delta_a: Vec<RationalMatrix> = (0..=top).map(|d| a.coboundary_matrix(d)).collect();
    // Relative differential: project ∘ δ_K ∘ include.
    let delta_rel: Vec<RationalMatrix> = (0..=top)
        .map(|d| {
            let incl = rel.inclusion(k, d);
            let proj = rel.projection(k, d + 1);
            proj.mul(&delta_k[d]).mul(&incl)
        })
        .collect();

    let bases = |deltas: &[RationalMatrix], dims_at: &dyn Fn(usize) -> usize| {
        (0..=top)
            .map(|d| {
                let prev = if d == 0 {
                    RationalMatrix::zero(dims_at(0), 0)
                } else {
                    deltas[d - 1].clone()
                };
                CohomologyBasis::new(&prev, &deltas[d])
            })
            .collect::<Vec<_>>()
    };
    let abs_bases = bases(&delta_k, &|d| k.num_simplices(d));
    let sub_bases = bases(&delta_a, &|d| a.num_simplices(d));
    let rel_bases = bases(&delta_rel, &|d| rel.dim(d));

    Ok(PairCohomology {
        top,
        rel_dims: rel_bases.iter().map(|b| b.dim()).collect(),
        abs_dims: abs_bases.iter().map(|b| b.dim()).collect(),
        sub_dims: sub_bases.iter().map(|b| b.dim()).collect(),
        rel_bases,
        abs_bases,
        sub_bases,
        k: k.clone(),
        a: a.clone(),
        rel,
    })
}

impl PairCohomology {
    /// Induced map H^d(K,A) → H^d(K).
    pub fn map_rel_to_abs(&self, d: usize) -> RationalMatrix {
        let incl = self.rel.inclusion(&self.k, d);
        induced(&self.rel_bases[d], &self.abs_bases[d], &incl)
    }

    /// Induced map H^d(K) → H^d(A).
    pub fn map_abs_to_sub(&self, d: usize) -> RationalMatrix {
        let rho = restriction_matrix(&self.k, &self.a, d);
        induced(&self.abs_bases[d], &self.sub_bases[d], &rho)
    }

    /// Connecting map H^d(A) → H^{d+1}(K,A): lift a cocycle on A to K by
    /// extension by zero, apply δ_K, read off the relative class.
    pub fn connecting(&self, d: usize) -> RationalMatrix {
        let src = &self.sub_bases[d];
        if d + 1 > self.top {
            return RationalMatrix::zero(0, src.dim());
        }
        let tgt = &self.rel_bases[d + 1];
        let lift = restriction_matrix(&self.k, &self.a, d).transpose();
        let delta_k = self.k.coboundary_matrix(d);
        let proj = self.rel.projection(&self.k, d + 1);
        let chain = proj.mul(&delta_k).mul(&lift);
        induced_raw(src, tgt, &chain)
    }

    /// Assemble the full long exact sequence.
    pub fn les(&self) -> PairLes {
        let mut terms = Vec::new();
        let mut maps = Vec::new();
        for d in 0..=self.top {
            terms.push((format!("H^{d}(K,A)"), self.rel_dims[d]));
            terms.push((format!("H^{d}(K)"), self.abs_dims[d]));
            terms.push((format!("H^{d}(A)"), self.sub_dims[d]));
            maps.push(self.map_rel_to_abs(d));
            maps.push(self.map_abs_to_sub(d));
            if d < self.top {
                maps.push(self.connecting(d));
            }
        }
        PairLes { terms, maps }
    }
}

/// Induced map on cohomology of a cochain map (`chain` commutes with δ).
fn induced(
    src: &CohomologyBasis,
    tgt: &CohomologyBasis,
    chain: &RationalMatrix,
) -> RationalMatrix {
    induced_raw(src, tgt, chain)
}

fn induced_raw(
    src: &CohomologyBasis,
    tgt: &CohomologyBasis,
    chain: &RationalMatrix,
) -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = (0..src.dim())
        .map(|j| {
            let image = chain.mul_vec(&src.reps.column(j));
            tgt.class_coords(&image)
        })
        .collect();
    RationalMatrix::from_columns(tgt.dim(), &cols)
}

/// Absolute cohomology via the pair machinery with an empty subcomplex.
pub fn cohomology_dims(k: &SimplicialComplex) -> GradedDims {
    k.cohomology_dims()
}

/// Graded dims of relative cohomology H^*(k, a).
pub fn relative_cohomology_dims(
    k: &SimplicialComplex,
    a: &SimplicialComplex,
) -> Result<GradedDims, Error> {
    Ok(pair_cohomology(k, a)?.rel_dims)
}
