//! Acceptance gate for the whole workspace: one test per shipping
//! criterion. Every check is exact; there are no tolerances anywhere.
//! Criteria 3 and 4 drive the compiled binary, the rest call the library.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::time::Instant;

use chipfire::classify::DEFAULT_BALL_CAP;
use chipfire::exact::{ratio, sub_rat_vec, to_rational_vec, Int, IntVector, Rational};
use chipfire::sampling;
use chipfire::{
    classical_pairing, fundamental_parallelepiped_points, identity_pairing,
    reduced_combinatorial_laplacian, reduced_graph_laplacian, ConfigR, ConfigS, Digraph, IntMatrix,
    Pairing, Policy, RatMatrix, SimplicialComplex2D,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DET4_PAIRING: &str =
    r#"{"l": [[2,-1,1],[-1,2,-1],[1,-1,2]], "m": [[3,-1,-1],[-1,3,-1],[-1,-1,3]]}"#;

fn running_l() -> IntMatrix {
    IntMatrix::from_i64s(&[&[2, -1, 1], &[-1, 2, -1], &[1, -1, 2]])
}

fn running_m() -> RatMatrix {
    RatMatrix::from_i64s(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]])
}

fn running_pairing() -> Pairing {
    Pairing::new(running_l(), running_m()).unwrap()
}

fn run_binary(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chipfire"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn config_set<'a, I: Iterator<Item = &'a ConfigS>>(configs: I) -> BTreeSet<Vec<i64>> {
    configs
        .map(|c| {
            c.entries()
                .iter()
                .map(|e| i64::try_from(e.clone()).unwrap())
                .collect()
        })
        .collect()
}

fn i64_set(rows: &[&[i64]]) -> BTreeSet<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// The shared random family: pairings with L entries in [-3, 3],
/// |det L| in [1, 30], and diagonally dominant M, plus one valid member
/// each. Seeded, so every criterion sees the same instances.
fn instance_family() -> Vec<(Pairing, ConfigS)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    (0..110)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let p = sampling::random_pairing(&mut rng, n, 3, 1, 30);
            let f = sampling::s_plus_member(&mut rng, &p, 5, 3);
            (p, f)
        })
        .collect()
}

/// f plus `extra` integer witness translations, staying in its class.
fn translate(p: &Pairing, f: &ConfigS, extra: i64) -> ConfigS {
    let lu = p.l().mul_vec(&p.witness().u).unwrap();
    ConfigS::new(
        f.entries()
            .iter()
            .zip(&lu)
            .map(|(a, b)| a + b * Int::from(extra))
            .collect(),
    )
}

#[test]
fn criterion_01_membership_with_exact_coordinates() {
    let p = running_pairing();
    for accepted in [[0, 0, 0], [1, 0, 1], [3, -1, 4]] {
        assert!(p.in_s_plus(&ConfigS::from_i64s(&accepted)).unwrap());
    }
    let cases = [
        ([0i64, 0, 1], [(-7, 4), (1, 4), (9, 4)]),
        ([1, -1, 1], [(3, 4), (-5, 4), (3, 4)]),
    ];
    for (config, coords) in &cases {
        let f = ConfigS::from_i64s(config);
        assert!(!p.in_s_plus(&f).unwrap());
        let expected = ConfigR::new(coords.iter().map(|&(n, d)| ratio(n, d)).collect());
        assert_eq!(p.to_r_coords(&f).unwrap(), expected);
    }
    println!("criterion 01: membership and rejected coordinates exact: pass");
}

#[test]
fn criterion_02_n_matrix_reproduced() {
    let p = running_pairing();
    let expected = RatMatrix::from_rows(vec![
        vec![ratio(1, 1), ratio(1, 4), ratio(3, 4)],
        vec![ratio(-1, 4), ratio(1, 2), ratio(-1, 4)],
        vec![ratio(3, 4), ratio(1, 4), ratio(1, 1)],
    ])
    .unwrap();
    assert_eq!(p.n(), &expected);
    println!("criterion 02: N computed exactly: pass");
}

#[test]
fn criterion_03_critical_set_through_the_binary() {
    let out = run_binary(&["classify", "--format", "json"], DET4_PAIRING);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    let criticals: BTreeSet<Vec<i64>> = classes
        .iter()
        .map(|c| {
            c["critical"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| e.as_i64().unwrap())
                .collect()
        })
        .collect();
    let expected = i64_set(&[&[4, -1, 4], &[4, 0, 4], &[5, 0, 5], &[5, -1, 5]]);
    assert_eq!(criticals, expected);
    println!("criterion 03: critical set via the binary: pass");
}

#[test]
fn criterion_04_superstable_set_through_the_binary() {
    let out = run_binary(&["classify", "--format", "json"], DET4_PAIRING);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let superstables: BTreeSet<Vec<i64>> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c["superstable"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| e.as_i64().unwrap())
                .collect()
        })
        .collect();
    let expected = i64_set(&[&[1, 0, 1], &[1, 1, 1], &[0, 0, 0], &[2, 1, 2]]);
    assert_eq!(superstables, expected);
    println!("criterion 04: superstable set via the binary: pass");
}

#[test]
fn criterion_05_identity_pairing_three_way_equality() {
    let l = running_l();
    let p = identity_pairing(&l).unwrap();
    let reports = p.all_class_reports(10).unwrap();
    let criticals = config_set(reports.iter().map(|r| &r.critical));
    let superstables = config_set(reports.iter().map(|r| &r.superstable));
    let points: BTreeSet<Vec<i64>> = fundamental_parallelepiped_points(&l, 10)
        .unwrap()
        .iter()
        .map(|p| {
            p.iter()
                .map(|e| i64::try_from(e.clone()).unwrap())
                .collect()
        })
        .collect();
    let expected = i64_set(&[&[0, 0, 0], &[0, 1, 0], &[1, 0, 1], &[2, -1, 2]]);
    assert_eq!(criticals, expected);
    assert_eq!(superstables, expected);
    assert_eq!(points, expected);
    println!("criterion 05: identity pairing three-way set equality: pass");
}

#[test]
fn criterion_06_tetrahedron_boundary_construction() {
    let c = SimplicialComplex2D::new(
        vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
        vec![[1, 2], [1, 3], [1, 4]],
    )
    .unwrap();
    assert_eq!(reduced_combinatorial_laplacian(&c).unwrap(), running_l());
    assert_eq!(c.cycle_edges(), vec![[2, 3], [2, 4], [3, 4]]);
    println!("criterion 06: tetrahedron reproduces the 3x3 lattice matrix: pass");
}

#[test]
fn criterion_07_stabilization_is_policy_independent() {
    let start = Instant::now();
    let family = instance_family();
    assert!(family.len() >= 100);
    for (p, f) in &family {
        let base = p.stabilize(f, Policy::LowestIndex).unwrap();
        let mut runs = vec![p.stabilize(f, Policy::HighestIndex).unwrap()];
        for seed in 0..5 {
            runs.push(p.stabilize(f, Policy::Random(seed)).unwrap());
        }
        for r in runs {
            assert_eq!(r.stable_config, base.stable_config);
            assert_eq!(r.total_firings, base.total_firings);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!(
        "criterion 07: {} instances policy independent in {elapsed:?}: pass",
        family.len()
    );
}

#[test]
fn criterion_08_class_counting() {
    for (p, _) in &instance_family() {
        let reports = p.all_class_reports(30).unwrap();
        assert_eq!(Int::from(reports.len()), *p.det_l_abs());
        let labels: BTreeSet<_> = reports.iter().map(|r| r.label.clone()).collect();
        let criticals: BTreeSet<_> = reports.iter().map(|r| r.critical.clone()).collect();
        let superstables: BTreeSet<_> = reports.iter().map(|r| r.superstable.clone()).collect();
        assert_eq!(labels.len(), reports.len());
        assert_eq!(criticals.len(), reports.len());
        assert_eq!(superstables.len(), reports.len());
        for r in &reports {
            assert_eq!(p.coset_label(&r.critical).unwrap(), r.label);
            assert_eq!(p.coset_label(&r.superstable).unwrap(), r.label);
        }
    }
    println!("criterion 08: class counts match |det L| with one member per label: pass");
}

#[test]
fn criterion_09_descent_matches_bruteforce_minimizer() {
    let mut classes = 0;
    for (p, _) in instance_family()
        .iter()
        .filter(|(p, _)| *p.det_l_abs() <= Int::from(12))
    {
        for label in p.all_labels() {
            let direct = p.superstable_config(&label).unwrap();
            let start = p.critical_config(&label).unwrap();
            let oracle = p
                .energy_minimizer_bruteforce(&start, DEFAULT_BALL_CAP)
                .unwrap();
            assert_eq!(direct, oracle);
            classes += 1;
        }
    }
    assert!(classes >= 100, "only {classes} classes compared");
    println!("criterion 09: descent equals brute force on {classes} classes: pass");
}

#[test]
fn criterion_10_energy_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7010);
    let mut checks = 0;
    while checks < 1000 {
        let n = rng.gen_range(1..=3);
        let p = sampling::random_pairing(&mut rng, n, 3, 1, 30);
        let f = sampling::s_plus_member(&mut rng, &p, 5, 2);
        let x = p.to_r_coords(&f).unwrap().into_inner();
        for _ in 0..10 {
            let z: IntVector = (0..n)
                .map(|_| Int::from(rng.gen_range(-3i64..=3)))
                .collect();
            let zr = to_rational_vec(&z);
            let y = sub_rat_vec(&x, &p.m().mul_vec(&zr).unwrap());
            let energy = |q: &[Rational]| -> Rational {
                let w = p.m_inv().mul_vec(q).unwrap();
                w.iter().map(|e| e * e).sum()
            };
            let z_dot_z: Rational = zr.iter().map(|a| a * a).sum();
            let m_inv_x = p.m_inv().mul_vec(&x).unwrap();
            let cross: Rational = zr.iter().zip(&m_inv_x).map(|(a, b)| a * b).sum();
            let two = Rational::from_integer(Int::from(2));
            assert_eq!(energy(&y), energy(&x) + z_dot_z - two * cross);
            checks += 1;
        }
    }
    println!("criterion 10: energy identity exact in {checks} checks: pass");
}

#[test]
fn criterion_11_clipped_scripts_stay_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(7011);
    let mut checks = 0;
    let mut attempts = 0;
    while checks < 500 {
        attempts += 1;
        assert!(attempts < 5000, "not enough qualifying draws");
        let n = rng.gen_range(1..=3);
        let p = sampling::random_pairing(&mut rng, n, 3, 1, 30);
        let f = translate(&p, &sampling::s_plus_member(&mut rng, &p, 4, 0), 40);
        let x = p.to_r_coords(&f).unwrap();
        let z: IntVector = (0..n)
            .map(|_| Int::from(rng.gen_range(-2i64..=2)))
            .collect();
        let zr = to_rational_vec(&z);
        let y = sub_rat_vec(x.entries(), &p.m().mul_vec(&zr).unwrap());
        if y.iter().any(Rational::is_negative) {
            continue;
        }
        assert!(p.in_r_plus(&ConfigR::new(y)).unwrap());
        let clipped: IntVector = z
            .iter()
            .map(|e| {
                if e.is_negative() {
                    Int::zero()
                } else {
                    e.clone()
                }
            })
            .collect();
        let h = sub_rat_vec(
            x.entries(),
            &p.m().mul_vec(&to_rational_vec(&clipped)).unwrap(),
        );
        assert!(p.in_r_plus(&ConfigR::new(h)).unwrap());
        checks += 1;
    }
    println!("criterion 11: clipping closure held in {checks} checks: pass");
}

#[test]
fn criterion_12_classical_membership_is_nonnegativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7012);
    for _ in 0..6 {
        let vertices = rng.gen_range(2..=5);
        let g = sampling::connected_graph(&mut rng, vertices, 2);
        let l = reduced_graph_laplacian(&g).unwrap();
        let p = classical_pairing(&l).unwrap();
        let n = l.rows();
        let mut f = vec![-3i64; n];
        loop {
            let member = p.in_s_plus(&ConfigS::from_i64s(&f)).unwrap();
            assert_eq!(member, f.iter().all(|&e| e >= 0), "{f:?}");
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                f[k] += 1;
                if f[k] <= 3 {
                    break;
                }
                f[k] = -3;
            }
            if f.iter().all(|&e| e == -3) {
                break;
            }
        }
    }
    println!("criterion 12: classical pairing accepts exactly the nonnegative box: pass");
}

#[test]
fn criterion_13_diagonal_rescaling_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7013);
    let mut triples = 0;
    while triples < 20 {
        let n = rng.gen_range(1..=3);
        let p = sampling::random_pairing(&mut rng, n, 3, 1, 20);
        let d = sampling::positive_diagonal(&mut rng, n, 4);
        let q = Pairing::new(p.l().clone(), d.mul(p.m()).unwrap()).unwrap();
        let rp = p.all_class_reports(20).unwrap();
        let rq = q.all_class_reports(20).unwrap();
        assert_eq!(
            config_set(rp.iter().map(|r| &r.critical)),
            config_set(rq.iter().map(|r| &r.critical))
        );
        assert_eq!(
            config_set(rp.iter().map(|r| &r.superstable)),
            config_set(rq.iter().map(|r| &r.superstable))
        );
        triples += 1;
    }
    println!("criterion 13: critical and superstable sets invariant under D*M: pass");
}

#[test]
fn criterion_14_duality_holds_classically_and_fails_here() {
    let cycle3 = Digraph::undirected(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)], 2).unwrap();
    let k4 = Digraph::complete(4).unwrap();
    for g in [cycle3, k4] {
        let m = reduced_graph_laplacian(&g).unwrap();
        let p = classical_pairing(&m).unwrap();
        assert!(p.check_duality(30).unwrap().holds);
    }
    let report = running_pairing().check_duality(10).unwrap();
    assert!(!report.holds);
    assert!(report.counterexample.is_some());
    println!("criterion 14: duality classical yes, generalized no: pass");
}
