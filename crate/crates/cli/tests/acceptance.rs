//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use metacyc::oracle::{self, OracleOptions};
use metacyc::structure;
use metacyc::suites::{self, SuiteOptions};
use metacyc::{aut, Automorphism, Family, GenImages, GroupParams};

const FAMILY_I: &[&str] = &["I:4,4,3,2", "I:5,4,3,2", "I:5,5,3,2", "I:5,5,4,2"];
const FAMILY_II: &[&str] = &["II:3,3,2", "II:4,3,2", "II:5,4,2"];
const MAX_BITS: u32 = 24;

fn gp(s: &str) -> GroupParams {
    s.parse().expect("test spec")
}

fn all_groups() -> impl Iterator<Item = &'static str> {
    FAMILY_I.iter().chain(FAMILY_II).copied()
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn timed_count(spec: &str, want: u64, limit: Duration) -> (bool, String) {
    let p = gp(spec);
    let start = Instant::now();
    let n = oracle::count_automorphisms(&p, &OracleOptions::default()).expect("count");
    let t = start.elapsed();
    let formula = 1u64 << structure::aut_order_log2(&p).expect("order");
    let ok = n == want && n == formula && t < limit;
    (
        ok,
        format!("{spec} {n} (formula {formula}, {:.2}s)", t.as_secs_f64()),
    )
}

fn order_counts(cases: &[(&str, u64, Duration)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(spec, want, limit) in cases {
        let (good, s) = timed_count(spec, want, limit);
        ok &= good;
        parts.push(s);
    }
    Outcome::new(ok, parts.join("; "))
}

fn criterion_1() -> Outcome {
    order_counts(&[
        ("I:4,4,3,2", 2048, Duration::from_secs(10)),
        ("I:5,4,3,2", 2048, Duration::from_secs(120)),
        ("I:5,5,3,2", 4096, Duration::from_secs(120)),
    ])
}

fn criterion_2() -> Outcome {
    let minute = Duration::from_secs(60);
    order_counts(&[
        ("II:3,3,2", 128, minute),
        ("II:4,3,2", 512, minute),
        ("II:5,4,2", 2048, minute),
    ])
}

fn criteria_3_4() -> (Outcome, Outcome) {
    let (mut ok3, mut ok4) = (true, true);
    let (mut d3, mut d4) = (Vec::new(), Vec::new());
    for spec in ["I:4,4,3,2", "II:3,3,2"] {
        let s = suites::lemma22_sweep(&gp(spec), &OracleOptions::default()).expect("sweep");
        ok3 &= s.mismatches == 0 && s.accepted == s.oracle_accepted;
        ok4 &= s.simplified_mismatches == 0;
        d3.push(format!(
            "{spec} {} mismatches in {} candidates",
            s.mismatches, s.candidates
        ));
        d4.push(format!("{spec} {} mismatches", s.simplified_mismatches));
    }
    (
        Outcome::new(ok3, d3.join("; ")),
        Outcome::new(ok4, d4.join("; ")),
    )
}

fn criterion_5() -> Outcome {
    let p = gp("I:4,4,3,2");
    let start = Instant::now();
    let auts = suites::closed_form_automorphisms(&p).expect("auts");
    let elems: Vec<_> = p.elements().collect();
    let bad = auts
        .iter()
        .flat_map(|a| elems.iter().map(move |&g| (a, g)))
        .filter(|(a, g)| a.apply(*g) != a.apply_by_words(*g))
        .count();
    let t = start.elapsed();
    Outcome::new(
        bad == 0 && t < Duration::from_secs(60),
        format!(
            "{bad} mismatches in {} x {} pairs, {:.2}s",
            auts.len(),
            elems.len(),
            t.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in all_groups() {
        let p = gp(spec);
        let smallest = spec == "I:4,4,3,2" || spec == "II:3,3,2";
        let opts = SuiteOptions {
            samples: 10_000,
            exhaustive_bits: if smallest { 62 } else { 0 },
            ..SuiteOptions::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let (xi, om) = (aut::xi(&p), aut::omega(&p));
        let laws = [
            (suites::law_phi_phi as suites::Law, &xi[..], &xi[..]),
            (suites::law_psi_psi, &om, &om),
            (suites::law_phi_psi, &xi, &om),
            (suites::law_psi_phi, &om, &xi),
        ];
        let (mut pairs, mut fails) = (0, 0);
        for (law, l, r) in laws {
            let (n, f) = suites::check_law(&p, law, l, r, &opts, &mut rng).expect("law");
            pairs += n;
            fails += f;
        }
        ok &= fails == 0;
        parts.push(format!("{spec} {fails}/{pairs}"));
    }
    Outcome::new(ok, format!("failures/pairs: {}", parts.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut branches = BTreeSet::new();
    let mut parts = Vec::new();
    for spec in all_groups() {
        let p = gp(spec);
        let (a, c) = (p.a(), p.c());
        let x = oracle::x_closure(&p, MAX_BITS).expect("X").len() as u64;
        let y = oracle::y_closure(&p, MAX_BITS).expect("Y").len() as u64;
        let xy = oracle::intersection_xy(&p, MAX_BITS).expect("XY").len() as u64;
        let total = oracle::count_automorphisms(&p, &OracleOptions::default()).expect("count");
        let want_xy = match p.family() {
            Family::I => 1 << (2 * (a - c)),
            _ => 4,
        };
        let good = x == 1 << (a + c) && xy == want_xy && x * y == xy * total;
        ok &= good;
        branches.insert(structure::branch_label(&p).expect("branch"));
        parts.push(format!("{spec} |X|={x} |Y|={y} |XnY|={xy} |Aut|={total}"));
    }
    let want: BTreeSet<&str> = [
        "f>=c+2", "f=c+1", "c=d+1", "c>=d+2", "e<=a-3", "e=a-2", "e=a-1",
    ]
    .into();
    let seen: BTreeSet<&str> = branches.iter().flat_map(|b| b.split(", ")).collect();
    let covered = want.is_subset(&seen);
    Outcome::new(
        ok && covered,
        format!("{}; branches {:?}", parts.join("; "), seen),
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for spec in all_groups() {
        let p = gp(spec);
        for pres in [structure::x_presentation(&p), structure::y_presentation(&p)] {
            for (w, holds) in
                oracle::relator_results(&pres.expect("presentation").relators, &p).expect("eval")
            {
                checked += 1;
                if !holds {
                    bad.push(format!("{spec} relator {w}"));
                }
            }
        }
        for (name, want, got) in oracle::generator_order_results(&p).expect("orders") {
            checked += 1;
            if want != got {
                bad.push(format!("{spec} ord({name}) = {got}, stated {want}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{checked} relators and orders hold")
    } else {
        format!("{} of {checked} fail: {}", bad.len(), bad.join(", "))
    };
    Outcome::new(bad.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["I:4,4,3,2", "I:5,4,3,2", "I:5,5,3,2"] {
        let p = gp(spec);
        let rxy = structure::rxy_check(&p).expect("rxy");
        let rp = structure::sample_rprime_check(&p).expect("rprime");
        ok &= rxy && rp;
        parts.push(format!("{spec} R_XY {rxy} R' {rp}"));
    }
    Outcome::new(ok, parts.join("; "))
}

fn criterion_10() -> Outcome {
    let p = gp("II:4,3,2");
    let cocycle = structure::cocycle_check(&p).expect("cocycle");
    let gens = structure::generator_map(&p).expect("gens");
    let (s1, s2) = (gens["psi1"], gens["psi2"]);
    let k = s1
        .compose(&s2)
        .and_then(|t| t.compose(&s1.inverse()))
        .and_then(|t| t.compose(&s2.inverse()))
        .expect("commutator");
    let y: Vec<Automorphism> = oracle::y_closure(&p, MAX_BITS)
        .expect("Y")
        .iter()
        .map(|g| Automorphism::from_images(&p, *g).expect("aut"))
        .collect();
    let central = y.iter().all(|t| t.compose(&k).ok() == k.compose(t).ok());
    let nonabelian = y
        .iter()
        .any(|s| y.iter().any(|t| s.compose(t).ok() != t.compose(s).ok()));
    let ok = cocycle && k.order() == 2 && central && nonabelian && y.len() == 1 << (p.b() + 1);
    Outcome::new(
        ok,
        format!(
            "cocycle {cocycle}, ord([psi1,psi2]) = {}, central {central}, |Y| = {}, nonabelian {nonabelian}",
            k.order(),
            y.len()
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in all_groups() {
        let p = gp(spec);
        let closure: BTreeSet<GenImages> = oracle::standard_closure(&p, MAX_BITS)
            .expect("closure")
            .iter()
            .copied()
            .collect();
        let all: BTreeSet<GenImages> =
            oracle::enumerate_automorphisms(&p, &OracleOptions::default())
                .expect("oracle")
                .into_iter()
                .collect();
        ok &= closure == all;
        parts.push(format!("{spec} {}/{}", closure.len(), all.len()));
    }
    Outcome::new(ok, parts.join(", "))
}

fn aut_list(spec: &str, jobs: Option<usize>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_metacyc"));
    if let Some(j) = jobs {
        cmd.args(["--jobs", &j.to_string()]);
    }
    let out = cmd
        .args(["aut", "list", spec, "--format", "jsonl"])
        .output()
        .expect("run metacyc");
    assert!(out.status.success(), "aut list {spec} failed");
    out.stdout
}

fn criterion_12() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["I:4,4,3,2", "II:4,3,2"] {
        let base = aut_list(spec, Some(1));
        let runs = [
            aut_list(spec, Some(1)),
            aut_list(spec, Some(2)),
            aut_list(spec, Some(7)),
            aut_list(spec, None),
        ];
        let same = runs.iter().all(|r| *r == base);
        let lines = base.iter().filter(|&&c| c == b'\n').count();
        ok &= same && lines > 0;
        parts.push(format!("{spec} {lines} lines, identical {same}"));
    }
    Outcome::new(ok, parts.join("; "))
}

fn main() -> ExitCode {
    let (c3, c4) = criteria_3_4();
    let results = [
        (1, criterion_1()),
        (2, criterion_2()),
        (3, c3),
        (4, c4),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, criterion_11()),
        (12, criterion_12()),
    ];
    let mut failed = 0;
    for (n, o) in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {n}: {tag} {}", o.detail);
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
