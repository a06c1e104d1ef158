//! Generators and independent oracles shared by the integration suites.
//! Not every suite uses every helper.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stringy_core::docs::{MapsSpec, RankDocument};
use stringy_core::qlinalg::{rat, RationalMatrix, Rational};
use stringy_core::zigzag::ZigZagObject;

/// A random rank document that satisfies every exactness constraint by
/// construction: the rank of each map into a term is chosen first and the
/// term's dimension is set to absorb it.
pub fn random_rank_doc(rng: &mut ChaCha8Rng) -> RankDocument {
    let n = rng.gen_range(1..=3usize);
    let top = 2 * n;
    let mut dims_l = vec![0usize; top];
    dims_l[0] = rng.gen_range(1..=3);
    for d in dims_l.iter_mut().skip(1) {
        *d = rng.gen_range(0..=3);
    }
    let mut cone = vec![0usize; top + 2];
    cone[1] = dims_l[0] - 1;
    for k in 2..=top {
        cone[k] = dims_l[k - 1];
    }

    let mut mid = vec![0usize; top + 1];
    let mut yo = vec![0usize; top + 1];
    let mut triples = Vec::with_capacity(top + 1);
    let mut rc_prev = 0usize;
    for k in 0..=top {
        let ra = cone[k] - rc_prev;
        let rb = rng.gen_range(0..=3usize);
        let rc = if k == top { 0 } else { rng.gen_range(0..=cone[k + 1]) };
        mid[k] = ra + rb;
        yo[k] = rb + rc;
        triples.push([ra, rb, rc]);
        rc_prev = rc;
    }

    let mut dims_y = mid.clone();
    dims_y[top] = rng.gen_range(0..=3);
    let mut dims_yo_c = mid.clone();
    dims_yo_c[0] = 0;
    RankDocument {
        format_version: "1".into(),
        n,
        dims_y,
        dims_yo: yo,
        dims_yo_c,
        dims_l,
        maps: MapsSpec::Ranks(triples),
        multinode: None,
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    // Unit lower times unit upper triangular, so invertibility is free.
    let mut l = RationalMatrix::identity(n);
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, rat(rng.gen_range(-2..=2)));
            u.set(j, i, rat(rng.gen_range(-2..=2)));
        }
    }
    l.mul(&u)
}

/// A random exact zig-zag object with all dims at most `max_dim`,
/// built from canonical blocks conjugated by random invertible matrices.
pub fn random_exact_zigzag(rng: &mut ChaCha8Rng, max_dim: usize) -> ZigZagObject {
    let k = rng.gen_range(0..=max_dim);
    let c = rng.gen_range(0..=max_dim);
    let rb = rng.gen_range(0..=k.min(c));
    let ra = k - rb;
    let rg = c - rb;
    let l = rng.gen_range(ra..=max_dim.max(ra));
    let r = rng.gen_range(rg..=max_dim.max(rg));

    // Canonical blocks: images line up exactly with kernels.
    let mut alpha = RationalMatrix::zero(k, l);
    for i in 0..ra {
        alpha.set(i, l - ra + i, Rational::one());
    }
    let mut beta = RationalMatrix::zero(c, k);
    for i in 0..rb {
        beta.set(i, k - rb + i, Rational::one());
    }
    let mut gamma = RationalMatrix::zero(r, c);
    for i in 0..rg {
        gamma.set(i, c - rg + i, Rational::one());
    }

    let pl = random_invertible(rng, l);
    let pk = random_invertible(rng, k);
    let pc = random_invertible(rng, c);
    let pr = random_invertible(rng, r);
    let pl_inv = stringy_core::qlinalg::inverse(&pl).unwrap();
    let pk_inv = stringy_core::qlinalg::inverse(&pk).unwrap();
    let pc_inv = stringy_core::qlinalg::inverse(&pc).unwrap();

    ZigZagObject {
        left_dim: l,
        k_dim: k,
        c_dim: c,
        right_dim: r,
        alpha: pk.mul(&alpha).mul(&pl_inv),
        beta: pc.mul(&beta).mul(&pk_inv),
        gamma: pr.mul(&gamma).mul(&pc_inv),
    }
}

/// Determinant by Laplace expansion; independent of the elimination code.
fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = (1..n)
            .map(|i| (0..n).filter(|&jj| jj != j).map(|jj| m[i][jj].clone()).collect())
            .collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Brute-force rank: the largest k with a nonvanishing k×k minor.
pub fn oracle_rank(m: &RationalMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let max = rows.min(cols);
    for k in (1..=max).rev() {
        for rowset in subsets(rows, k) {
            for colset in subsets(cols, k) {
                let sub: Vec<Vec<Rational>> = rowset
                    .iter()
                    .map(|&i| colset.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                if !laplace_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn random_small_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rat(rng.gen_range(-2..=2)));
        }
    }
    m
}
