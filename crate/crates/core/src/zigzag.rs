//! The zig-zag category at the linear-algebra level: the distinguished
//! object Θ₀ built from a cohomology package, exactness, the duality
//! functor, and an exact decision procedure for self-duality.

use crate::error::Error;
use crate::qlinalg::{self, RationalMatrix, Rational};
use crate::stratified::CohomologyPackage;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A four-term sequence left →α K →β C →γ right, exact at K and at C.
/// The coefficient system is the constant sheaf and is carried as a label
/// only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZagObject {
    pub left_dim: usize,
    pub k_dim: usize,
    pub c_dim: usize,
    pub right_dim: usize,
    /// K_dim × left_dim
    pub alpha: RationalMatrix,
    /// C_dim × K_dim
    pub beta: RationalMatrix,
    /// right_dim × C_dim
    pub gamma: RationalMatrix,
}

impl ZigZagObject {
    pub fn zero() -> Self {
        ZigZagObject {
            left_dim: 0,
            k_dim: 0,
            c_dim: 0,
            right_dim: 0,
            alpha: RationalMatrix::zero(0, 0),
            beta: RationalMatrix::zero(0, 0),
            gamma: RationalMatrix::zero(0, 0),
        }
    }

    pub fn check_shapes(&self) -> Result<(), Error> {
        let ok = self.alpha.rows() == self.k_dim
            && self.alpha.cols() == self.left_dim
            && self.beta.rows() == self.c_dim
            && self.beta.cols() == self.k_dim
            && self.gamma.rows() == self.right_dim
            && self.gamma.cols() == self.c_dim;
        if ok {
            Ok(())
        } else {
            Err(Error::Input("zig-zag object matrices do not match dims".into()))
        }
    }
}

/// A map of zig-zag objects: four matrices making both squares commute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZagMorphism {
    pub map_left: RationalMatrix,
    pub map_k: RationalMatrix,
    pub map_c: RationalMatrix,
    pub map_right: RationalMatrix,
}

/// Vertical maps of the self-duality diagram, all invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityWitness {
    pub kappa: RationalMatrix,
    pub lambda: RationalMatrix,
    pub nu: RationalMatrix,
    pub xi: RationalMatrix,
}

/// Result of the self-duality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(DualityWitness),
    /// left/right or K/C dims differ; no witness can exist.
    DimsMismatch { left: usize, right: usize, k: usize, c: usize },
    /// Dims match but no invertible point exists in the solution space.
    NoInvertiblePoint,
}

/// Build Θ₀ from a package: K is the image of a_n, C the image of c_n,
/// α the corestriction of a_n, β the zero map, γ the inclusion of C.
pub fn make_theta0(pkg: &CohomologyPackage) -> Result<ZigZagObject, Error> {
    let n = pkg.n;
    let a_n = &pkg.maps_a[n];
    let c_n = &pkg.maps_c[n];
    let k_img = qlinalg::image_basis(a_n);
    let c_img = qlinalg::image_basis(c_n);
    let k_dim = k_img.dim();
    let c_dim = c_img.dim();
    let alpha = if k_dim == 0 {
        RationalMatrix::zero(0, a_n.cols())
    } else {
        qlinalg::solve_matrix(&k_img.basis, a_n).ok_or_else(|| {
            Error::Internal("columns of a_n do not lie in their own image basis".into())
        })?
    };
    let beta = RationalMatrix::zero(c_dim, k_dim);
    let gamma = c_img.basis.clone();
    let z = ZigZagObject {
        left_dim: pkg.dims_cone_c[n],
        k_dim,
        c_dim,
        right_dim: pkg.dims_cone_c[n + 1],
        alpha,
        beta,
        gamma,
    };
    if !check_zigzag_exact(&z)? {
        return Err(Error::Internal(
            "Θ₀ failed its own exactness check; package data is corrupted".into(),
        ));
    }
    Ok(z)
}

/// Exactness at K and at C.
pub fn check_zigzag_exact(z: &ZigZagObject) -> Result<bool, Error> {
    z.check_shapes()?;
    Ok(qlinalg::is_exact_at(&z.alpha, &z.beta)? && qlinalg::is_exact_at(&z.beta, &z.gamma)?)
}

/// The duality functor: reverse the sequence and transpose the maps.
pub fn dualize(z: &ZigZagObject) -> ZigZagObject {
    ZigZagObject {
        left_dim: z.right_dim,
        k_dim: z.c_dim,
        c_dim: z.k_dim,
        right_dim: z.left_dim,
        alpha: z.gamma.transpose(),
        beta: z.beta.transpose(),
        gamma: z.alpha.transpose(),
    }
}

/// Componentwise composition (m2 after m1).
pub fn compose(m1: &ZigZagMorphism, m2: &ZigZagMorphism) -> Result<ZigZagMorphism, Error> {
    let chain = |a: &RationalMatrix, b: &RationalMatrix| -> Result<RationalMatrix, Error> {
        if a.rows() != b.cols() {
            return Err(Error::Input(format!(
                "morphism composition shape mismatch: {}×{} after {}×{}",
                b.rows(),
                b.cols(),
                a.rows(),
                a.cols()
            )));
        }
        Ok(b.mul(a))
    };
    Ok(ZigZagMorphism {
        map_left: chain(&m1.map_left, &m2.map_left)?,
        map_k: chain(&m1.map_k, &m2.map_k)?,
        map_c: chain(&m1.map_c, &m2.map_c)?,
        map_right: chain(&m1.map_right, &m2.map_right)?,
    })
}

/// Sparse multivariate polynomial over ℚ, monomials keyed by exponent
/// vectors. Only what the witness search needs: add, multiply, substitute.
#[derive(Debug, Clone, PartialEq)]
struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    fn var(nvars: usize, i: usize, coeff: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.terms.insert(e, coeff);
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(Rational::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Substitute var i := value, leaving a polynomial in the same variable
    /// indexing (var i no longer occurs).
    fn substitute(&self, i: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut scaled = c.clone();
            for _ in 0..e[i] {
                scaled *= value;
            }
            if scaled.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] = 0;
            let entry = out.terms.entry(e2).or_insert_with(Rational::zero);
            *entry += &scaled;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }
}

/// Symbolic determinant of a square matrix with polynomial entries, by
/// Laplace expansion along the first row. Fine at these dims.
fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(nvars, Rational::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|i| (0..n).filter(|&jj| jj != j).map(|jj| m[i][jj].clone()).collect())
            .collect();
        let mut term = m[0][j].mul(&poly_det(&minor, nvars));
        if j % 2 == 1 {
            term = term.neg();
        }
        det.add_assign(&term);
    }
    det
}

/// Layout of the witness unknowns inside a flat vector:
/// kappa (r×l), lambda (c×k), nu (k×c), xi (l×r), row-major in that order.
struct WitnessLayout {
    l: usize,
    k: usize,
    c: usize,
    r: usize,
}

impl WitnessLayout {
    fn total(&self) -> usize {
        self.r * self.l + self.c * self.k + self.k * self.c + self.l * self.r
    }

    fn offsets(&self) -> [usize; 4] {
        let o0 = 0;
        let o1 = o0 + self.r * self.l;
        let o2 = o1 + self.c * self.k;
        let o3 = o2 + self.k * self.c;
        [o0, o1, o2, o3]
    }

    fn unpack(&self, v: &[Rational]) -> DualityWitness {
        let [o0, o1, o2, o3] = self.offsets();
        let take = |off: usize, rows: usize, cols: usize| {
            let mut m = RationalMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, v[off + i * cols + j].clone());
                }
            }
            m
        };
        DualityWitness {
            kappa: take(o0, self.r, self.l),
            lambda: take(o1, self.c, self.k),
            nu: take(o2, self.k, self.c),
            xi: take(o3, self.l, self.r),
        }
    }
}

/// Rows of the homogeneous commutativity system. Each square contributes
/// one linear equation per entry of its difference matrix.
fn commutativity_system(z: &ZigZagObject, layout: &WitnessLayout) -> RationalMatrix {
    let w = dualize(z);
    let nv = layout.total();
    let [o0, o1, o2, o3] = layout.offsets();
    let mut rows: Vec<Vec<Rational>> = Vec::new();

    // lambda·alpha − alpha_w·kappa = 0  (c×l equations)
    for i in 0..layout.c {
        for j in 0..layout.l {
            let mut row = vec![Rational::zero(); nv];
            for t in 0..layout.k {
                row[o1 + i * layout.k + t] += z.alpha.get(t, j);
            }
            for t in 0..layout.r {
                row[o0 + t * layout.l + j] -= w.alpha.get(i, t);
            }
            rows.push(row);
        }
    }
    // nu·beta − beta_w·lambda = 0  (k×k equations)
    for i in 0..layout.k {
        for j in 0..layout.k {
            let mut row = vec![Rational::zero(); nv];
            for t in 0..layout.c {
                row[o2 + i * layout.c + t] += z.beta.get(t, j);
            }
            for t in 0..layout.c {
                row[o1 + t * layout.k + j] -= w.beta.get(i, t);
            }
            rows.push(row);
        }
    }
    // xi·gamma − gamma_w·nu = 0  (l×c equations)
    for i in 0..layout.l {
        for j in 0..layout.c {
            let mut row = vec![Rational::zero(); nv];
            for t in 0..layout.r {
                row[o3 + i * layout.r + t] += z.gamma.get(t, j);
            }
            for t in 0..layout.k {
                row[o2 + t * layout.c + j] -= w.gamma.get(i, t);
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return RationalMatrix::zero(0, nv);
    }
    RationalMatrix::from_rows(rows)
}

/// Verify a candidate witness exactly.
pub fn verify_witness(z: &ZigZagObject, wit: &DualityWitness) -> bool {
    let w = dualize(z);
    let inv = qlinalg::is_invertible(&wit.kappa)
        && qlinalg::is_invertible(&wit.lambda)
        && qlinalg::is_invertible(&wit.nu)
        && qlinalg::is_invertible(&wit.xi);
    if !inv {
        return false;
    }
    wit.lambda.mul(&z.alpha) == w.alpha.mul(&wit.kappa)
        && wit.nu.mul(&z.beta) == w.beta.mul(&wit.lambda)
        && wit.xi.mul(&z.gamma) == w.gamma.mul(&wit.nu)
}

/// Decide self-duality of an exact zig-zag object. Deterministic and
/// exact: solve the commutativity constraints, search bounded integer
/// combinations of the solution basis for an invertible point, and fall
/// back to a symbolic determinant decision when the search is inconclusive.
pub fn find_duality_witness(z: &ZigZagObject) -> Result<WitnessOutcome, Error> {
    if !check_zigzag_exact(z)? {
        return Err(Error::Input("duality witness requested for a non-exact object".into()));
    }
    if z.left_dim != z.right_dim || z.k_dim != z.c_dim {
        return Ok(WitnessOutcome::DimsMismatch {
            left: z.left_dim,
            right: z.right_dim,
            k: z.k_dim,
            c: z.c_dim,
        });
    }
    let layout = WitnessLayout { l: z.left_dim, k: z.k_dim, c: z.c_dim, r: z.right_dim };
    let nv = layout.total();
    if nv == 0 {
        return Ok(WitnessOutcome::Found(DualityWitness {
            kappa: RationalMatrix::zero(0, 0),
            lambda: RationalMatrix::zero(0, 0),
            nu: RationalMatrix::zero(0, 0),
            xi: RationalMatrix::zero(0, 0),
        }));
    }

    let system = commutativity_system(z, &layout);
    let kernel = qlinalg::kernel_basis(&system);
    let m = kernel.dim();
    if m == 0 {
        return Ok(WitnessOutcome::NoInvertiblePoint);
    }

    let point = |coeffs: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); nv];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..nv {
                v[i] += c * kernel.basis.get(i, j);
            }
        }
        v
    };

    // Single basis vectors first, then bounded integer combinations in
    // lexicographic order over −2..2, skipping the all-zero tuple. Capped
    // so large solution spaces go straight to the symbolic decision.
    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for j in 0..m {
        let mut c = vec![Rational::zero(); m];
        c[j] = Rational::one();
        candidates.push(c);
    }
    const COMBO_CAP: usize = 20_000;
    if let Some(total) = 5usize.checked_pow(m as u32).filter(|&t| t <= COMBO_CAP) {
        let vals: [i64; 5] = [-2, -1, 0, 1, 2];
        for mut code in 0..total {
            let mut coeffs = Vec::with_capacity(m);
            for _ in 0..m {
                coeffs.push(crate::qlinalg::rat(vals[code % 5]));
                code /= 5;
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                candidates.push(coeffs);
            }
        }
    }
    for coeffs in &candidates {
        let wit = layout.unpack(&point(coeffs));
        if verify_witness(z, &wit) {
            return Ok(WitnessOutcome::Found(wit));
        }
    }

    // Exact decision: the product of the four symbolic determinants over
    // the kernel parameters is nonzero iff an invertible point exists.
    let sym_entry = |flat_index: usize| -> Poly {
        let mut p = Poly::zero(m);
        for j in 0..m {
            let coeff = kernel.basis.get(flat_index, j).clone();
            if !coeff.is_zero() {
                p.add_assign(&Poly::var(m, j, coeff));
            }
        }
        p
    };
    let [o0, o1, o2, o3] = layout.offsets();
    let blocks = [
        (o0, layout.r, layout.l),
        (o1, layout.c, layout.k),
        (o2, layout.k, layout.c),
        (o3, layout.l, layout.r),
    ];
    let mut product = Poly::constant(m, Rational::one());
    for (off, rows, cols) in blocks {
        debug_assert_eq!(rows, cols);
        let mat: Vec<Vec<Poly>> = (0..rows)
            .map(|i| (0..cols).map(|j| sym_entry(off + i * cols + j)).collect())
            .collect();
        product = product.mul(&poly_det(&mat, m));
        if product.is_zero() {
            return Ok(WitnessOutcome::NoInvertiblePoint);
        }
    }

    // Extract a nonvanishing point by sequential substitution: for each
    // variable at most deg+1 values can kill a nonzero polynomial, so some
    // small integer keeps it alive.
    let mut values = vec![Rational::zero(); m];
    let mut current = product;
    for i in 0..m {
        let deg = current.degree_in(i) as i64;
        let mut chosen = None;
        for v in 0..=deg {
            for cand in [v, -v] {
                let val = crate::qlinalg::rat(cand);
                let sub = current.substitute(i, &val);
                if !sub.is_zero() {
                    chosen = Some((val, sub));
                    break;
                }
            }
            if chosen.is_some() {
                break;
            }
        }
        let (val, sub) = chosen.ok_or_else(|| {
            Error::Internal("nonzero polynomial vanished at every probe".into())
        })?;
        values[i] = val;
        current = sub;
    }
    let wit = layout.unpack(&point(&values));
    if verify_witness(z, &wit) {
        Ok(WitnessOutcome::Found(wit))
    } else {
        Err(Error::Internal("symbolically certified witness failed re-verification".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;
    use crate::stratified::{assemble_package_simplicial, build_stratified};
    use crate::testfix::{pinched_torus, tetra_boundary};

    fn pinched_theta0() -> ZigZagObject {
        let s = build_stratified(&pinched_torus(), "y", 1).unwrap();
        let pkg = assemble_package_simplicial(&s).unwrap();
        make_theta0(&pkg).unwrap()
    }

    #[test]
    fn theta0_pinched_torus_dims() {
        let z = pinched_theta0();
        assert_eq!((z.left_dim, z.k_dim, z.c_dim, z.right_dim), (1, 1, 1, 2));
        assert!(z.beta.is_zero());
        assert!(check_zigzag_exact(&z).unwrap());
    }

    #[test]
    fn theta0_smooth_point_is_zero_in_the_middle() {
        let s = build_stratified(&tetra_boundary(), "a", 1).unwrap();
        let pkg = assemble_package_simplicial(&s).unwrap();
        let z = make_theta0(&pkg).unwrap();
        assert_eq!(z.k_dim, 0);
        assert_eq!(z.c_dim, 0);
        assert!(check_zigzag_exact(&z).unwrap());
    }

    #[test]
    fn breaking_gamma_breaks_exactness() {
        let mut z = pinched_theta0();
        z.gamma = RationalMatrix::zero(z.right_dim, z.c_dim);
        assert!(!check_zigzag_exact(&z).unwrap());
    }

    #[test]
    fn dualize_swaps_dims_and_is_involutive() {
        let z = pinched_theta0();
        let w = dualize(&z);
        assert_eq!((w.left_dim, w.k_dim, w.c_dim, w.right_dim), (2, 1, 1, 1));
        assert!(check_zigzag_exact(&w).unwrap());
        assert_eq!(dualize(&w), z);
    }

    #[test]
    fn pinched_torus_witness_reports_dim_mismatch() {
        let z = pinched_theta0();
        match find_duality_witness(&z).unwrap() {
            WitnessOutcome::DimsMismatch { left: 1, right: 2, k: 1, c: 1 } => {}
            other => panic!("expected a dimension mismatch, got {other:?}"),
        }
    }

    fn one_dim_self_dual() -> ZigZagObject {
        // left = K = C = right = 1 with alpha = id, beta = 0, gamma = id.
        ZigZagObject {
            left_dim: 1,
            k_dim: 1,
            c_dim: 1,
            right_dim: 1,
            alpha: RationalMatrix::identity(1),
            beta: RationalMatrix::zero(1, 1),
            gamma: RationalMatrix::identity(1),
        }
    }

    #[test]
    fn one_dim_witness_found_and_reverifies() {
        let z = one_dim_self_dual();
        match find_duality_witness(&z).unwrap() {
            WitnessOutcome::Found(w) => {
                assert!(verify_witness(&z, &w));
                assert!(!w.lambda.is_zero());
                assert!(!w.nu.is_zero());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn zero_object_witness_is_trivial() {
        match find_duality_witness(&ZigZagObject::zero()).unwrap() {
            WitnessOutcome::Found(w) => assert_eq!(w.kappa.rows(), 0),
            other => panic!("expected the empty witness, got {other:?}"),
        }
    }

    #[test]
    fn witness_respects_nontrivial_commutation() {
        // alpha scaled so the first square forces lambda = 2 kappa up to
        // the transposed gamma; still solvable with invertible verticals.
        let mut z = one_dim_self_dual();
        z.alpha = RationalMatrix::from_i64(&[&[2]]);
        match find_duality_witness(&z).unwrap() {
            WitnessOutcome::Found(w) => assert!(verify_witness(&z, &w)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn compose_identity_is_identity() {
        let id = ZigZagMorphism {
            map_left: RationalMatrix::identity(2),
            map_k: RationalMatrix::identity(1),
            map_c: RationalMatrix::identity(1),
            map_right: RationalMatrix::identity(3),
        };
        let m = ZigZagMorphism {
            map_left: RationalMatrix::from_i64(&[&[1, 2], &[3, 4]]),
            map_k: RationalMatrix::from_i64(&[&[5]]),
            map_c: RationalMatrix::from_i64(&[&[7]]),
            map_right: RationalMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[2, 0, 2]]),
        };
        assert_eq!(compose(&m, &id).unwrap(), m);
        assert_eq!(compose(&id, &m).unwrap(), m);
    }

    #[test]
    fn poly_det_matches_numeric() {
        // det of [[t0, 1], [1, t0]] = t0^2 - 1.
        let m = vec![
            vec![Poly::var(1, 0, rat(1)), Poly::constant(1, rat(1))],
            vec![Poly::constant(1, rat(1)), Poly::var(1, 0, rat(1))],
        ];
        let d = poly_det(&m, 1);
        let at = |v: i64| {
            let s = d.substitute(0, &rat(v));
            s.terms.get(&vec![0]).cloned().unwrap_or_else(Rational::zero)
        };
        assert_eq!(at(3), rat(8));
        assert_eq!(at(1), rat(0));
        assert_eq!(at(-2), rat(3));
    }
}
