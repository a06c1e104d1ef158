//! Acceptance suite: one test and one printed verdict line per criterion.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use stringy_core::docs::parse_ranks;
use stringy_core::qlinalg;
use stringy_core::report::build_report;
use stringy_core::stratified::{
    assemble_package_ranks, assemble_package_simplicial, build_stratified, CohomologyPackage,
};
use stringy_core::stringy::{compute_ic, compute_q, compute_s0};
use stringy_core::zigzag::{
    check_zigzag_exact, dualize, find_duality_witness, make_theta0, verify_witness,
    WitnessOutcome,
};

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture readable")
}

fn quintic_pkg() -> CohomologyPackage {
    let doc = parse_ranks(&fixture("quintic_node.ranks.json")).unwrap();
    assemble_package_ranks(&doc).unwrap()
}

fn simplicial_pkg(name: &str) -> CohomologyPackage {
    let doc = stringy_core::docs::parse_simplicial(&fixture(name)).unwrap();
    let complex = doc.complex().unwrap();
    let space = build_stratified(&complex, &doc.singular_vertex, doc.half_dim).unwrap();
    assemble_package_simplicial(&space).unwrap()
}

fn verdict(criterion: &str, ok: bool) {
    println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed");
}

#[test]
fn criterion_1_quintic_tables() {
    let start = Instant::now();
    let pkg = quintic_pkg();
    let s0 = compute_s0(&pkg).unwrap();
    let q = compute_q(&pkg);
    let ok = s0 == vec![1, 0, 1, 204, 1, 0, 1]
        && q == vec![1, 0, 1, 203, 2, 0, 1]
        && start.elapsed().as_secs() < 1;
    verdict("1 (quintic dimension tables, rank mode)", ok);
}

#[test]
fn criterion_2_middle_degree_excess() {
    let pkg = quintic_pkg();
    let s0 = compute_s0(&pkg).unwrap();
    let k0 = qlinalg::rank(&pkg.maps_a[3]);
    let c0 = qlinalg::rank(&pkg.maps_c[3]);
    let ok = s0[3] == 204 && s0[3] == 203 + k0 && s0[3] == 203 + c0 && k0 == 1 && c0 == 1;
    verdict("2 (middle-degree excess 204 = 203 + K0 = 203 + C0)", ok);
}

#[test]
fn criterion_3_pinched_torus_end_to_end() {
    let start = Instant::now();
    let pkg = simplicial_pkg("pinched_torus.simp.json");
    let r = build_report(&pkg).unwrap();
    let ok = r.table_s0 == vec![1, 2, 1]
        && r.table_ic == vec![1, 0, 1]
        && r.table_q == vec![1, 1, 1]
        && r.poincare_ok_s0
        && r.poincare_ok_ic
        && r.poincare_ok_q
        && start.elapsed().as_secs() < 1;
    verdict("3 (pinched torus simplicial end-to-end)", ok);
}

#[test]
fn criterion_4_exactness_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut ok = true;
    for _ in 0..200 {
        let doc = common::random_rank_doc(&mut rng);
        let pkg = match assemble_package_ranks(&doc) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("generated document rejected: {e}");
                ok = false;
                break;
            }
        };
        let n = pkg.n;
        let lhs = qlinalg::rank(&pkg.maps_a[n]) + pkg.dims_yo[n];
        let rhs = pkg.dims_yo_c[n] + qlinalg::rank(&pkg.maps_c[n]);
        if pkg.verify_exactness().is_err() || lhs != rhs {
            ok = false;
            break;
        }
    }
    verdict("4 (200 random rank documents: exactness + SES arithmetic)", ok);
}

#[test]
fn criterion_5_self_duality_on_fixtures() {
    // Rule: a witness exists exactly when the four dimension equalities
    // left = right and K = C hold. The quintic is the witness-found case;
    // on the two n = 1 fixtures the reduced bottom-degree convention
    // shifts the end dims, so they, like the adversarial rank fixture,
    // must report a mismatch instead of fabricating a witness.
    let mut ok = true;

    let theta = make_theta0(&quintic_pkg()).unwrap();
    match find_duality_witness(&theta).unwrap() {
        WitnessOutcome::Found(w) => ok &= verify_witness(&theta, &w),
        _ => ok = false,
    }

    let adversarial_doc = parse_ranks(&fixture("asymmetric_link.ranks.json")).unwrap();
    let mut controls = vec![make_theta0(&assemble_package_ranks(&adversarial_doc).unwrap()).unwrap()];
    for name in ["sphere_smoothpoint.simp.json", "pinched_torus.simp.json"] {
        controls.push(make_theta0(&simplicial_pkg(name)).unwrap());
    }
    for theta in &controls {
        let dims_match = theta.left_dim == theta.right_dim && theta.k_dim == theta.c_dim;
        match find_duality_witness(theta).unwrap() {
            WitnessOutcome::Found(w) => ok &= dims_match && verify_witness(theta, &w),
            WitnessOutcome::DimsMismatch { .. } => ok &= !dims_match,
            WitnessOutcome::NoInvertiblePoint => ok = false,
        }
    }
    verdict("5 (self-duality witnesses + adversarial mismatch)", ok);
}

#[test]
fn criterion_6_duality_functor_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    for _ in 0..500 {
        let z = common::random_exact_zigzag(&mut rng, 5);
        if !check_zigzag_exact(&z).unwrap() {
            ok = false;
            break;
        }
        let d = dualize(&z);
        if !check_zigzag_exact(&d).unwrap() || dualize(&d) != z {
            ok = false;
            break;
        }
    }
    verdict("6 (dualize is an exactness-preserving involution, 500 cases)", ok);
}

#[test]
fn criterion_7_smooth_point_degeneracy() {
    let pkg = simplicial_pkg("sphere_smoothpoint.simp.json");
    let r = build_report(&pkg).unwrap();
    let ok = r.table_s0 == r.table_ic
        && r.table_ic == r.table_q
        && r.middle_injection_ok
        && r.middle_surjection_ok;
    verdict("7 (smooth point: S0 = IC = Q, trivial middle maps)", ok);
}

#[test]
fn criterion_8_off_middle_agreement() {
    let mut ok = true;
    let mut packages = vec![
        quintic_pkg(),
        simplicial_pkg("pinched_torus.simp.json"),
        simplicial_pkg("sphere_smoothpoint.simp.json"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        packages.push(assemble_package_ranks(&common::random_rank_doc(&mut rng)).unwrap());
    }
    for pkg in &packages {
        let s0 = compute_s0(pkg).unwrap();
        let ic = compute_ic(pkg).unwrap();
        for i in 0..s0.len() {
            if i != pkg.n && s0[i] != ic[i] {
                ok = false;
            }
        }
    }
    verdict("8 (S0 and IC agree in every degree except the middle)", ok);
}

#[test]
fn criterion_9_qlinalg_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = 0usize;
    let mut ok = true;
    'outer: while cases < 100_000 {
        let rows = rand::Rng::gen_range(&mut rng, 0..=4usize);
        let cols = rand::Rng::gen_range(&mut rng, 0..=4usize);
        let m = common::random_small_matrix(&mut rng, rows, cols);
        let r = qlinalg::rank(&m);
        if r != common::oracle_rank(&m) {
            ok = false;
            break;
        }
        let ker = qlinalg::kernel_basis(&m);
        if ker.dim() != cols - r || !m.mul(&ker.basis).is_zero() {
            ok = false;
            break;
        }
        let im = qlinalg::image_basis(&m);
        if im.dim() != r {
            ok = false;
            break;
        }
        cases += 3;

        // Exactness vs the oracle formula on a composable random pair.
        let g_rows = rand::Rng::gen_range(&mut rng, 0..=4usize);
        let g = common::random_small_matrix(&mut rng, g_rows, rows);
        let expected = g.mul(&m).is_zero() && common::oracle_rank(&m) == rows - common::oracle_rank(&g);
        match qlinalg::is_exact_at(&m, &g) {
            Ok(got) => {
                if got != expected {
                    ok = false;
                    break 'outer;
                }
            }
            Err(_) => {
                ok = false;
                break 'outer;
            }
        }
        cases += 1;
    }
    verdict("9 (rank/kernel/image/exactness vs minor-based oracle, 1e5 cases)", ok);
}
