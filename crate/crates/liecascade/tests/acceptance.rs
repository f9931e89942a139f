//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its tally. Tolerances are exact throughout; runtime bounds are asserted
//! where stated.

use std::collections::BTreeSet;
use std::time::Instant;

use liecascade::cascade::{
    a_series_chain, d_series_chain, kostant_cascade, ortho_dimension_check, parity,
};
use liecascade::certifier::{
    all_subgroups_by_closure, crt_cyclic, formality_certificate, reverify, standard_scenarios,
    subgroups_of_z2xzk,
};
use liecascade::oracle::classify_by_orders;
use liecascade::verify;
use liecascade::{Coeff, Family, OrthoSet, RootSystem, SystemType};

fn build(name: &str) -> RootSystem {
    RootSystem::build(SystemType::parse(name).unwrap()).unwrap()
}

fn build_t(t: SystemType) -> RootSystem {
    RootSystem::build(t).unwrap()
}

#[test]
fn criterion_01_root_counts() {
    let start = Instant::now();
    let report = verify::counts_check::<Coeff>(8).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.failed, 0, "{:?}", report.failures);
    assert_eq!(report.checked, verify::all_types(8).len());
    assert!(
        elapsed.as_secs() < 10,
        "count generation took {elapsed:?}, budget is 10 s"
    );
    println!(
        "criterion 1 (root counts, rank <= 8, closure-checked): PASS ({} types in {elapsed:?})",
        report.checked
    );
}

#[test]
fn criterion_02_folding_table() {
    let report = verify::folding_check::<Coeff>(8).unwrap();
    assert_eq!(report.failed, 0, "{:?}", report.failures);
    // a2..a8 give 7 rows, d4..d8 give 5, d4 order 3, e6: 14 in total
    assert_eq!(report.checked, 14);
    println!(
        "criterion 2 (folding table, all sources rank <= 8): PASS ({} rows)",
        report.checked
    );
}

#[test]
fn criterion_03_strong_orthogonality_suite() {
    let mut sets = 0usize;
    for t in verify::all_types(8) {
        let rs = build_t(t);
        // cascade: constructing the OrthoSet already asserts pairwise strong
        // orthogonality; the dimension decomposition is checked on top
        let cascade = kostant_cascade(&rs).unwrap();
        assert!(ortho_dimension_check(&rs, &cascade).unwrap(), "{t} cascade");
        sets += 1;

        if t.family() == Family::A {
            for m in 1..=t.rank().div_ceil(2) {
                let c = a_series_chain(&rs, m).unwrap();
                assert!(ortho_dimension_check(&rs, &c).unwrap(), "{t} chain m={m}");
                sets += 1;
            }
        }
        if t.family() == Family::D {
            let odds: Vec<usize> = (1..=t.rank() - 2).step_by(2).collect();
            // all nonempty subsets of the admissible odd indices
            for mask in 1..(1u32 << odds.len()) {
                let subset: Vec<usize> = odds
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &x)| x)
                    .collect();
                let c = d_series_chain(&rs, &subset).unwrap();
                assert!(
                    ortho_dimension_check(&rs, &c).unwrap(),
                    "{t} chain {subset:?}"
                );
                sets += 1;
            }
        }
    }
    println!("criterion 3 (strong orthogonality + dimension decomposition): PASS ({sets} sets)");
}

#[test]
fn criterion_04_d_series_exhaustion() {
    let start = Instant::now();
    let mut total = 0usize;
    for name in ["D4", "D5", "D6"] {
        let rs = build(name);
        let report = verify::prop71_sweep(&rs, 0, 2).unwrap();
        assert!(
            report.counterexamples.is_empty(),
            "{name}: {:?}",
            report.counterexamples
        );
        assert_eq!(
            report.form1 + report.form2 + report.precondition_rejected,
            report.total_subsets,
            "{name}: every subset must classify or be precondition-rejected"
        );
        assert!(report.form1 > 0 && report.form2 > 0, "{name} coverage");
        total += report.total_subsets;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "exhaustion took {elapsed:?}");
    println!(
        "criterion 4 (flip-fixed subset exhaustion on D4/D5/D6): PASS ({total} subsets in {elapsed:?})"
    );
}

#[test]
fn criterion_05_reflective_property_sweep() {
    let mut tallies = Vec::new();
    for name in ["A3", "D4"] {
        let rs = build(name);
        let report = verify::star_sweep(&rs, 6).unwrap();
        assert!(report.checked > 0, "{name}: no pairs checked");
        assert_eq!(report.failed, 0, "{name}: {:?}", report.failures);
        tallies.push(format!(
            "{name}: checked {} skipped {} failed 0",
            report.checked, report.skipped
        ));
    }
    println!(
        "criterion 5 (reflective-property sweep): PASS ({})",
        tallies.join("; ")
    );
}

#[test]
fn criterion_06_parity_and_lifting() {
    let mut count = 0usize;
    for r in 4..=8usize {
        let rs = build_t(SystemType::new(Family::D, r).unwrap());
        let report = verify::parity_check(&rs).unwrap();
        assert_eq!(report.failed, 0, "D{r}: {:?}", report.failures);
        count += report.checked;
    }
    println!("criterion 6 (paired forms even + liftable, even-rank chain obstructed): PASS ({count} sets)");
}

#[test]
fn criterion_07_reflection_order_family() {
    let mut checked = 0usize;
    for n in 2..=5usize {
        let rs = build_t(SystemType::new(Family::B, n).unwrap());
        let report = verify::reflection_order_sweep(&rs).unwrap();
        assert_eq!(report.failed, 0, "B{n}: {:?}", report.failures);
        assert!(report.checked > 0, "B{n}: nothing satisfied the hypotheses");
        checked += report.checked;
    }
    println!(
        "criterion 7 (reflection order and doubled period over B-series, n <= 5): PASS ({checked} pairs)"
    );
}

#[test]
fn criterion_08_unique_negated_simple() {
    let mut checked = 0usize;
    for name in ["A2", "B2", "A3"] {
        let rs = build(name);
        let report = verify::negated_simple_check(&rs).unwrap();
        assert_eq!(report.failed, 0, "{name}: {:?}", report.failures);
        assert!(report.checked > 0);
        checked += report.checked;
    }
    println!(
        "criterion 8 (single-inversion elements are simple reflections): PASS ({checked} elements)"
    );
}

#[test]
fn criterion_09_subgroup_classification() {
    let start = Instant::now();
    for k in 1..=100u64 {
        for sub in subgroups_of_z2xzk(k).unwrap() {
            assert_eq!(
                sub.classification,
                classify_by_orders(&sub.elements, k),
                "k={k}, {:?}",
                sub.elements
            );
        }
    }
    // the structure-directed enumeration agrees with closing all
    // two-element generating sets
    for k in [1u64, 2, 6, 12, 16, 30] {
        let direct: BTreeSet<Vec<(u64, u64)>> = subgroups_of_z2xzk(k)
            .unwrap()
            .into_iter()
            .map(|s| s.elements)
            .collect();
        assert_eq!(direct, all_subgroups_by_closure(k), "k={k}");
    }
    for p in 1..=50u64 {
        for q in 1..=50u64 {
            assert_eq!(
                crt_cyclic(p, q).unwrap(),
                num_integer::gcd(p, q) == 1,
                "({p},{q})"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "subgroup suite took {elapsed:?}");
    println!("criterion 9 (subgroup classification, k <= 100): PASS (in {elapsed:?})");
}

#[test]
fn criterion_10_certificate_reverification() {
    let scenarios = standard_scenarios();
    assert_eq!(scenarios.len(), 20);
    let mut paths = BTreeSet::new();
    for sc in &scenarios {
        let rs = build(sc.stype);
        let s1 = sc.sigma1.build(&rs).unwrap();
        let s2 = sc.sigma2.build(&rs).unwrap();
        let cert = formality_certificate(&rs, s1.clone(), s2.clone())
            .unwrap_or_else(|e| panic!("{}: {e}", sc.name));
        assert_eq!(cert.case_path, sc.expect, "{}", sc.name);
        assert_eq!(cert.verdict, "isotropy formal");
        reverify(&rs, s1.clone(), s2.clone(), &cert)
            .unwrap_or_else(|e| panic!("{}: reverify: {e}", sc.name));
        // byte-identical JSON across two independent runs
        let json1 = cert.to_json_string();
        let cert2 = formality_certificate(&rs, s1, s2).unwrap();
        assert_eq!(json1, cert2.to_json_string(), "{}", sc.name);
        paths.insert(cert.case_path.as_str());
    }
    assert_eq!(paths.len(), 7, "all seven case paths covered");
    println!("criterion 10 (certificate reverification, 20 scenarios / 7 paths): PASS");
}

// supporting invariants exercised across modules at acceptance scale

#[test]
fn supporting_string_law_rank_le_6() {
    // the string law holds for every admissible pair in every system of
    // rank at most 6
    let mut pairs = 0usize;
    for t in verify::all_types(6) {
        let rs = build_t(t);
        let report = verify::strings_check(&rs).unwrap();
        assert_eq!(report.failed, 0, "{t}");
        pairs += report.checked;
    }
    println!("supporting (string law, all systems of rank <= 6): PASS ({pairs} pairs)");
}

#[test]
fn supporting_normal_form_roundtrips() {
    for name in ["D5", "D6", "A5"] {
        let rs = build(name);
        let nu = if name.starts_with('D') {
            let r = rs.rank();
            let mut perm: Vec<usize> = (0..r).collect();
            perm.swap(r - 2, r - 1);
            liecascade::diagram::DiagramAut::new(&rs, perm).unwrap()
        } else {
            let r = rs.rank();
            liecascade::diagram::DiagramAut::new(&rs, (0..r).rev().collect()).unwrap()
        };
        let report = verify::normal_form_roundtrip(&rs, &nu, 0, 24).unwrap();
        assert_eq!(report.failed, 0, "{name}: {:?}", report.failures);
        assert!(report.checked > 0);
    }
    println!("supporting (normal form soundness and idempotence): PASS");
}

#[test]
fn supporting_parity_witnesses() {
    // the worked examples behind the lifting criterion
    let d4 = build("D4");
    let form1 = OrthoSet::new(
        &d4,
        vec![
            liecascade::Root::from_i64s(&[1, 2, 1, 1]),
            liecascade::Root::from_i64s(&[1, 0, 0, 0]),
        ],
    )
    .unwrap();
    assert_eq!(parity(&d4, &form1, &d4.simple(1)).unwrap(), 0);

    let d6 = build("D6");
    let form2 = d_series_chain(&d6, &[1, 3]).unwrap();
    let odd_at = d6
        .positives()
        .iter()
        .filter(|b| parity(&d6, &form2, b).unwrap() % 2 != 0)
        .count();
    assert!(odd_at > 0);
    println!("supporting (parity witnesses): PASS");
}
