//! Values computed by brute force and frozen here.

use metacyc::oracle::{self, OracleOptions};
use metacyc::suites::{self, Suite, SuiteOptions};
use metacyc::{hom, structure, Automorphism, Error, GenImages, GroupParams};

fn gp(s: &str) -> GroupParams {
    s.parse().unwrap()
}

#[test]
fn oracle_counts() {
    let opts = OracleOptions::default();
    for (spec, count) in [
        ("I:4,4,3,2", 2048),
        ("I:5,4,3,2", 2048),
        ("I:5,5,3,2", 4096),
        ("I:5,5,4,2", 8192),
        ("II:3,3,2", 128),
        ("II:4,3,2", 512),
        ("II:5,4,2", 2048),
    ] {
        let p = gp(spec);
        let n = oracle::count_automorphisms(&p, &opts).unwrap();
        assert_eq!(n, count, "{spec}");
        assert_eq!(n, 1 << structure::aut_order_log2(&p).unwrap(), "{spec}");
    }
}

#[test]
fn subgroup_sizes() {
    for (spec, x, y, xy) in [
        ("I:4,4,3,2", 128, 64, 4),
        ("I:5,4,3,2", 256, 128, 16),
        ("I:5,5,3,2", 256, 256, 16),
        ("I:5,5,4,2", 512, 64, 4),
        ("II:3,3,2", 32, 16, 4),
        ("II:4,3,2", 128, 16, 4),
        ("II:5,4,2", 512, 16, 4),
    ] {
        let p = gp(spec);
        let xc = oracle::x_closure(&p, 24).unwrap();
        let yc = oracle::y_closure(&p, 24).unwrap();
        assert_eq!(xc.len(), x, "{spec} X");
        assert_eq!(yc.len(), y, "{spec} Y");
        let inter = oracle::intersection_xy(&p, 24).unwrap();
        assert_eq!(inter.len(), xy, "{spec} X cap Y");
        let aut = 1usize << structure::aut_order_log2(&p).unwrap();
        assert_eq!(x * y, xy * aut, "{spec}");
    }
}

#[test]
fn family_two_intersection_is_the_listed_klein_group() {
    for spec in ["II:3,3,2", "II:4,3,2", "II:5,4,2"] {
        let p = gp(spec);
        let b = p.b() as i64;
        let mut want: Vec<Automorphism> = [(0, 1), (0, 1 + (1 << b)), (2, 1), (2, 1 + (1 << b))]
            .iter()
            .map(|&(y, y2)| Automorphism::psi(&p, y, y2).unwrap())
            .collect();
        want.sort();
        let got = oracle::intersection_xy(&p, 24).unwrap();
        assert_eq!(got, want, "{spec}");
        assert!(got.iter().all(|a| a.compose(a).unwrap().is_identity()));
    }
}

#[test]
fn frozen_elements() {
    let p = gp("I:4,4,3,2");
    assert_eq!(p.mul(p.element(2, 3), p.element(1, 1)), p.element(15, 4));
    let g = GenImages::new(p.element(1, 8), p.beta());
    assert_eq!(
        hom::apply_by_words(&g, p.element(2, 1), &p),
        p.element(10, 1)
    );
    // conjugation by β
    let inner = GenImages::new(p.element(5, 0), p.beta());
    assert!(hom::oracle_check(&inner, &p, 24).unwrap());
    assert_eq!(hom::apply_by_words(&inner, p.alpha(), &p), p.element(5, 0));
}

#[test]
fn condition_nine_counterexample() {
    let p = gp("I:4,4,3,2");
    let g = GenImages::new(p.alpha(), p.element(0, 2));
    let l = hom::lemma22_conditions(&g, &p);
    assert!(!l.c9);
    assert!(!hom::lemma22_check(&g, &p));
    assert!(!hom::oracle_check(&g, &p, 24).unwrap());
}

#[test]
fn lemma22_sweeps() {
    let opts = OracleOptions::default();
    for (spec, accepted, without9) in [
        ("I:4,4,3,2", 2048, 4096),
        ("II:3,3,2", 128, 256),
        ("II:4,3,2", 512, 640),
    ] {
        let s = suites::lemma22_sweep(&gp(spec), &opts).unwrap();
        assert_eq!(s.candidates, 1 << (2 * gp(spec).order_bits()), "{spec}");
        assert_eq!(s.mismatches, 0, "{spec}");
        assert_eq!(s.simplified_mismatches, 0, "{spec}");
        assert_eq!(s.accepted, accepted, "{spec}");
        assert_eq!(s.oracle_accepted, accepted, "{spec}");
        assert_eq!(s.accepted_without_c9, without9, "{spec}");
    }
}

#[test]
fn oracle_agrees_with_closed_form_set() {
    for spec in ["I:4,4,3,2", "I:5,4,3,2", "II:3,3,2", "II:4,3,2"] {
        let p = gp(spec);
        let oracle_set = oracle::enumerate_automorphisms(&p, &OracleOptions::default()).unwrap();
        let closed: Vec<GenImages> = suites::closed_form_automorphisms(&p)
            .unwrap()
            .into_iter()
            .map(|a| a.images())
            .collect();
        assert_eq!(oracle_set, closed, "{spec}");
        assert!(oracle_set.iter().all(|g| hom::lemma22_check(g, &p)));
    }
}

#[test]
fn enumeration_is_sorted_and_jobs_independent() {
    let p = gp("I:4,4,3,2");
    let one = oracle::enumerate_automorphisms(
        &p,
        &OracleOptions {
            max_bits: 24,
            jobs: Some(1),
        },
    )
    .unwrap();
    let many = oracle::enumerate_automorphisms(
        &p,
        &OracleOptions {
            max_bits: 24,
            jobs: Some(8),
        },
    )
    .unwrap();
    assert_eq!(one, many);
    assert!(one.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn unclassified_groups_enumerate() {
    // Q8 and D8 in the general presentation.
    let q8 = GroupParams::general(2, 1, 1, 3).unwrap();
    let d8 = GroupParams::general(2, 1, 2, 3).unwrap();
    let opts = OracleOptions::default();
    assert_eq!(oracle::count_automorphisms(&q8, &opts).unwrap(), 24);
    assert_eq!(oracle::count_automorphisms(&d8, &opts).unwrap(), 8);
    assert_eq!(
        suites::run_suite(&q8, Suite::All, &SuiteOptions::default()).unwrap_err(),
        Error::Unclassified
    );
}

#[test]
fn full_suites_on_clean_groups() {
    for spec in ["I:4,4,3,2", "I:5,5,4,2", "II:3,3,2", "II:5,4,2"] {
        let r = suites::run_suite(&gp(spec), Suite::All, &SuiteOptions::default()).unwrap();
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(bad.is_empty(), "{spec}: {bad:#?}");
    }
}
