//! Property suites run by `metacyc verify`: each check pits a closed form
//! against the oracle or against an independent formula.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith2::{geom_sum, Residue};
use crate::aut::{self, Automorphism, Quad};
use crate::error::{Error, Result};
use crate::group::{Family, GroupParams};
use crate::hom::{self, GenImages};
use crate::oracle::{self, OracleOptions};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma22,
    Compose,
    Relators,
    Rprime,
    Cocycle,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "lemma22" => Suite::Lemma22,
            "compose" => Suite::Compose,
            "relators" => Suite::Relators,
            "rprime" => Suite::Rprime,
            "cocycle" => Suite::Cocycle,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemma22 => "lemma22",
            Suite::Compose => "compose",
            Suite::Relators => "relators",
            Suite::Rprime => "rprime",
            Suite::Cocycle => "cocycle",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub spec: String,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub oracle: OracleOptions,
    /// Random pairs per law when exhaustive checking is too large.
    pub samples: usize,
    pub seed: u64,
    /// Exhaustive checks run when the pair space is at most `2^exhaustive_bits`.
    pub exhaustive_bits: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            oracle: OracleOptions::default(),
            samples: 10_000,
            seed: 0x5eed,
            exhaustive_bits: 16,
        }
    }
}

pub fn run_suite(p: &GroupParams, suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    if !p.is_classified() {
        return Err(Error::Unclassified);
    }
    let mut checks = Vec::new();
    match suite {
        Suite::Lemma22 => checks.extend(lemma22_suite(p, opts)?),
        Suite::Compose => checks.extend(compose_suite(p, opts)?),
        Suite::Relators => checks.extend(relators_suite(p, opts)?),
        Suite::Rprime => checks.extend(rprime_suite(p)?),
        Suite::Cocycle => checks.extend(cocycle_suite(p, opts)?),
        Suite::All => {
            checks.extend(lemma22_suite(p, opts)?);
            checks.extend(compose_suite(p, opts)?);
            checks.extend(relators_suite(p, opts)?);
            if p.family() == Family::I {
                checks.extend(rprime_suite(p)?);
            }
            if is_ef_branch(p) {
                checks.extend(cocycle_suite(p, opts)?);
            }
            checks.extend(oracle_suite(p, opts)?);
        }
    }
    Ok(SuiteReport {
        spec: p.spec_string(),
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn is_ef_branch(p: &GroupParams) -> bool {
    p.family() == Family::II && p.e().map(|e| e + 2) == Some(p.a())
}

// ---- lemma 2.2 ----

/// Comparison of the congruence test against the oracle on the full
/// candidate space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Lemma22Sweep {
    pub candidates: u64,
    /// Accepted by the congruence conditions (6)-(9).
    pub accepted: u64,
    /// Accepted by the oracle.
    pub oracle_accepted: u64,
    /// Disagreements between the two.
    pub mismatches: u64,
    /// Accepted by (6)-(8) alone.
    pub accepted_without_c9: u64,
    /// Candidates with (6) and (9) where (7)-(8) and the simplified forms
    /// disagree.
    pub simplified_mismatches: u64,
}

impl std::ops::Add for Lemma22Sweep {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Lemma22Sweep {
            candidates: self.candidates + o.candidates,
            accepted: self.accepted + o.accepted,
            oracle_accepted: self.oracle_accepted + o.oracle_accepted,
            mismatches: self.mismatches + o.mismatches,
            accepted_without_c9: self.accepted_without_c9 + o.accepted_without_c9,
            simplified_mismatches: self.simplified_mismatches + o.simplified_mismatches,
        }
    }
}

pub fn lemma22_sweep(p: &GroupParams, opts: &OracleOptions) -> Result<Lemma22Sweep> {
    let needed = 2 * p.order_bits();
    if needed > opts.max_bits {
        return Err(Error::CapExceeded {
            needed,
            cap: opts.max_bits,
        });
    }
    let (na, nb) = (1i64 << p.a(), 1i64 << p.b());
    let max_bits = opts.max_bits;
    let sweep = |x1: i64| -> Result<Lemma22Sweep> {
        let mut s = Lemma22Sweep::default();
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    let g = GenImages::from_coords(p, x1, y1, x2, y2);
                    let l = hom::lemma22_conditions(&g, p);
                    let o = hom::oracle_check(&g, p, max_bits)?;
                    s.candidates += 1;
                    s.accepted += l.all() as u64;
                    s.oracle_accepted += o as u64;
                    s.mismatches += (l.all() != o) as u64;
                    s.accepted_without_c9 += l.without_c9() as u64;
                    if l.c6 && l.c9 {
                        let simple = hom::simplified_conditions(&g, p);
                        s.simplified_mismatches += (simple != (l.c7 && l.c8)) as u64;
                    }
                }
            }
        }
        Ok(s)
    };
    let parts: Result<Vec<Lemma22Sweep>> = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(|| (0..na).into_par_iter().map(sweep).collect()),
        None => (0..na).into_par_iter().map(sweep).collect(),
    };
    Ok(parts?
        .into_iter()
        .fold(Lemma22Sweep::default(), |a, b| a + b))
}

fn lemma22_suite(p: &GroupParams, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let s = lemma22_sweep(p, &opts.oracle)?;
    let expected = 1u64 << structure::aut_order_log2(p)?;
    Ok(vec![
        Check::new(
            "lemma22 agrees with oracle",
            s.mismatches == 0,
            format!(
                "{} mismatches over {} candidates",
                s.mismatches, s.candidates
            ),
        ),
        Check::new(
            "simplified conditions agree with (7)-(8)",
            s.simplified_mismatches == 0,
            format!("{} mismatches", s.simplified_mismatches),
        ),
        Check::new(
            "dropping (9) enlarges the accepted set",
            s.accepted_without_c9 > s.accepted,
            format!("{} vs {}", s.accepted_without_c9, s.accepted),
        ),
        Check::new(
            "accepted count matches the order formula",
            s.accepted == expected,
            format!("{} accepted, formula {expected}", s.accepted),
        ),
    ])
}

// ---- closed forms and composition ----

/// Every automorphism reachable from `Ξ × Ω`, deduplicated by images.
pub fn closed_form_automorphisms(p: &GroupParams) -> Result<Vec<Automorphism>> {
    let xi = aut::xi(p);
    let om = aut::omega(p);
    let mut set = BTreeSet::new();
    for &(x1, x2) in &xi {
        for &(y, y2) in &om {
            set.insert(Automorphism::new(
                p, x1 as i64, x2 as i64, y as i64, y2 as i64,
            )?);
        }
    }
    Ok(set.into_iter().collect())
}

/// Quadruples related by `y' = y + 2^d t`, `x1' = x1 - 2^c t`,
/// `y2' = y2 + 2^b s`, `x2' = x2 - 2^c s`.
pub fn equivalent_quads(p: &GroupParams, q: Quad, r: Quad) -> bool {
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let ybits = p.y_bits();
    let y2bits = p.y2_bits();
    let dy = Residue::reduce_i128(r.y as i128 - q.y as i128, ybits).value();
    let dy2 = Residue::reduce_i128(r.y2 as i128 - q.y2 as i128, y2bits).value();
    if !dy.is_multiple_of(1 << d) || !dy2.is_multiple_of(1 << b) {
        return false;
    }
    let t = (dy >> d) as i128;
    let s = (dy2 >> b) as i128;
    let same =
        |x: u64, x2: u64, k: i128| Residue::reduce_i128(x as i128 - (k << c), a).value() == x2;
    same(q.x1, r.x1, t) && same(q.x2, r.x2, s)
}

/// Groups `Ξ × Ω` by images; returns (number of classes, whether every
/// class is exactly one equivalence class of quadruples).
pub fn equality_classes(p: &GroupParams) -> Result<(usize, bool)> {
    let mut buckets: BTreeMap<GenImages, Vec<Quad>> = BTreeMap::new();
    for &(x1, x2) in &aut::xi(p) {
        for &(y, y2) in &aut::omega(p) {
            let a = Automorphism::new(p, x1 as i64, x2 as i64, y as i64, y2 as i64)?;
            buckets
                .entry(a.images())
                .or_default()
                .push(Quad { x1, x2, y, y2 });
        }
    }
    let class_size = 1usize << (2 * (p.a() - p.c()));
    let sound = buckets
        .values()
        .all(|qs| qs.len() == class_size && qs.iter().all(|&q| equivalent_quads(p, qs[0], q)));
    Ok((buckets.len(), sound))
}

fn phi_q(p: &GroupParams, x1: u64, x2: u64) -> Result<Automorphism> {
    Automorphism::phi(p, x1 as i64, x2 as i64)
}

fn psi_q(p: &GroupParams, y: u64, y2: u64) -> Result<Automorphism> {
    Automorphism::psi(p, y as i64, y2 as i64)
}

/// `φ' ∘ φ = φ_{x1' x1, x1' x2 + x2'}`.
pub fn law_phi_phi(p: &GroupParams, a2: (u64, u64), a1: (u64, u64)) -> Result<bool> {
    let lhs = phi_q(p, a2.0, a2.1)?.compose(&phi_q(p, a1.0, a1.1)?)?;
    let m = 1u128 << p.a();
    let x1 = (a2.0 as u128 * a1.0 as u128) % m;
    let x2 = (a2.0 as u128 * a1.1 as u128 + a2.1 as u128) % m;
    Ok(lhs == phi_q(p, x1 as u64, x2 as u64)?)
}

/// `ψ' ∘ ψ = ψ_{y' + y2' y, y2' y2}`.
pub fn law_psi_psi(p: &GroupParams, b2: (u64, u64), b1: (u64, u64)) -> Result<bool> {
    let lhs = psi_q(p, b2.0, b2.1)?.compose(&psi_q(p, b1.0, b1.1)?)?;
    let my = 1u128 << p.y_bits();
    let my2 = 1u128 << p.y2_bits();
    let y = (b2.0 as u128 + b2.1 as u128 * b1.0 as u128) % my;
    let y2 = (b2.1 as u128 * b1.1 as u128) % my2;
    Ok(lhs == psi_q(p, y as u64, y2 as u64)?)
}

/// `φ ∘ ψ = σ_{x1 + x2[2^{b-d} y; r], x2[y2; r]; y, y2}`.
pub fn law_phi_psi(p: &GroupParams, a: (u64, u64), b: (u64, u64)) -> Result<bool> {
    let lhs = phi_q(p, a.0, a.1)?.compose(&psi_q(p, b.0, b.1)?)?;
    let r = p.r_residue();
    let x1 = Residue::from_u64(a.0, p.a());
    let x2 = Residue::from_u64(a.1, p.a());
    let len = b.0 << (p.b() - p.d());
    let n1 = x1 + x2 * geom_sum(len, r);
    let n2 = x2 * geom_sum(b.1, r);
    let rhs = Automorphism::new(
        p,
        n1.value() as i64,
        n2.value() as i64,
        b.0 as i64,
        b.1 as i64,
    )?;
    Ok(lhs == rhs)
}

/// Family I: `ψ ∘ φ = σ_{[x1; r'], [x2; r']; y x1, 2^{b-d} y x2 + y2}` with
/// `r' = 1 + 2^b y`. Family II: `ψ ∘ φ = σ_{x1, x2; y x1, 2^{b-1} y x2 + y2}`.
pub fn law_psi_phi(p: &GroupParams, b: (u64, u64), a: (u64, u64)) -> Result<bool> {
    let lhs = psi_q(p, b.0, b.1)?.compose(&phi_q(p, a.0, a.1)?)?;
    let (y, y2) = (b.0 as u128, b.1 as u128);
    let (x1, x2) = (a.0, a.1);
    let ny = (y * x1 as u128) % (1u128 << p.y_bits());
    let ny2 = (((y * x2 as u128) << (p.b() - p.d())) + y2) % (1u128 << p.y2_bits());
    let (n1, n2) = match p.family() {
        Family::I => {
            let rp = Residue::reduce_i128(1 + ((b.0 as i128) << p.b()), p.a());
            (geom_sum(x1, rp).value(), geom_sum(x2, rp).value())
        }
        _ => (x1, x2),
    };
    let rhs = Automorphism::new(p, n1 as i64, n2 as i64, ny as i64, ny2 as i64)?;
    Ok(lhs == rhs)
}

pub type Law = fn(&GroupParams, (u64, u64), (u64, u64)) -> Result<bool>;

/// Runs a two-argument law over `left × right`, exhaustively when the pair
/// space is small and on random pairs otherwise. Returns (pairs, failures).
pub fn check_law(
    p: &GroupParams,
    law: Law,
    left: &[(u64, u64)],
    right: &[(u64, u64)],
    opts: &SuiteOptions,
    rng: &mut ChaCha8Rng,
) -> Result<(u64, u64)> {
    let total = left.len() as u128 * right.len() as u128;
    let pairs: Vec<((u64, u64), (u64, u64))> = if total <= 1u128 << opts.exhaustive_bits {
        left.iter()
            .flat_map(|&l| right.iter().map(move |&r| (l, r)))
            .collect()
    } else {
        (0..opts.samples)
            .map(|_| (*left.choose(rng).unwrap(), *right.choose(rng).unwrap()))
            .collect()
    };
    let fails: Result<Vec<bool>> = pairs.par_iter().map(|&(l, r)| law(p, l, r)).collect();
    let fails = fails?.into_iter().filter(|ok| !ok).count() as u64;
    Ok((pairs.len() as u64, fails))
}

fn compose_suite(p: &GroupParams, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let xi = aut::xi(p);
    let om = aut::omega(p);
    let mut checks = Vec::new();
    let laws = [
        ("law phi o phi", law_phi_phi as Law, &xi[..], &xi[..]),
        ("law psi o psi", law_psi_psi, &om, &om),
        ("law phi o psi", law_phi_psi, &xi, &om),
        ("law psi o phi", law_psi_phi, &om, &xi),
    ];
    for (name, law, l, r) in laws {
        let (n, fails) = check_law(p, law, l, r, opts, &mut rng)?;
        checks.push(Check::new(
            name,
            fails == 0,
            format!("{fails} failures in {n} pairs"),
        ));
    }

    let auts = closed_form_automorphisms(p)?;
    let expected = 1usize << structure::aut_order_log2(p)?;
    checks.push(Check::new(
        "Xi x Omega gives |Aut| distinct maps",
        auts.len() == expected,
        format!("{} distinct, formula {expected}", auts.len()),
    ));

    let elems: Vec<_> = p.elements().collect();
    let exhaustive = (auts.len() as u128) * (elems.len() as u128) <= 1u128 << 22;
    let sample: Vec<Automorphism> = if exhaustive {
        auts.clone()
    } else {
        (0..opts.samples.min(auts.len()))
            .map(|_| *auts.choose(&mut rng).unwrap())
            .collect()
    };
    let bad = sample
        .par_iter()
        .filter(|a| {
            if exhaustive {
                elems.iter().any(|&g| a.apply(g) != a.apply_by_words(g))
            } else {
                [p.alpha(), p.beta(), p.element(3, 5), p.element(-1, -1)]
                    .iter()
                    .any(|&g| a.apply(g) != a.apply_by_words(g))
            }
        })
        .count();
    checks.push(Check::new(
        "closed-form apply matches substitution",
        bad == 0,
        format!(
            "{bad} failing automorphisms of {} ({})",
            sample.len(),
            if exhaustive {
                "all elements"
            } else {
                "sampled"
            }
        ),
    ));

    let decomp_bad = sample
        .par_iter()
        .filter(|a| match a.decompose() {
            Ok((phi, psi)) => {
                phi.compose(&psi).ok() != Some(**a) || !phi.is_phi_type() || !psi.is_psi_type()
            }
            Err(_) => true,
        })
        .count();
    checks.push(Check::new(
        "decomposition recomposes",
        decomp_bad == 0,
        format!("{decomp_bad} failures in {}", sample.len()),
    ));

    let inv_bad = sample
        .par_iter()
        .filter(|a| {
            !a.compose(&a.inverse())
                .map(|x| x.is_identity())
                .unwrap_or(false)
        })
        .count();
    checks.push(Check::new(
        "inverse",
        inv_bad == 0,
        format!("{inv_bad} failures in {}", sample.len()),
    ));

    let xi_om = xi.len() as u128 * om.len() as u128;
    if xi_om <= 1u128 << 20 {
        let (classes, sound) = equality_classes(p)?;
        checks.push(Check::new(
            "equality classes match image equality",
            sound && classes == expected,
            format!("{classes} classes"),
        ));
    }
    Ok(checks)
}

// ---- relators and subgroup structure ----

fn relators_suite(p: &GroupParams, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (which, pres) in [
        ("X", structure::x_presentation(p)?),
        ("Y", structure::y_presentation(p)?),
    ] {
        for (w, ok) in oracle::relator_results(&pres.relators, p)? {
            checks.push(Check::new(format!("relator {which}: {w}"), ok, ""));
        }
    }
    for (name, want, got) in oracle::generator_order_results(p)? {
        checks.push(Check::new(
            format!("order of {name}"),
            want == got,
            format!("expected {want}, got {got}"),
        ));
    }
    checks.push(Check::new(
        "R_XY identifications",
        structure::rxy_check(p)?,
        "",
    ));

    let report = structure::structure_report(p)?;
    let max_bits = opts.oracle.max_bits;
    let x = oracle::x_closure(p, max_bits)?;
    let y = oracle::y_closure(p, max_bits)?;
    let xy = x.intersection(&y);
    let size = |k: u32| 1usize << k;
    checks.push(Check::new(
        "|X|",
        x.len() == size(report.x.order_log2),
        format!(
            "closure {}, expected {}",
            x.len(),
            size(report.x.order_log2)
        ),
    ));
    checks.push(Check::new(
        "|Y|",
        y.len() == size(report.y.order_log2),
        format!(
            "closure {}, expected {}",
            y.len(),
            size(report.y.order_log2)
        ),
    ));
    checks.push(Check::new(
        "|X cap Y|",
        xy.len() == size(report.x_cap_y.order_log2),
        format!(
            "closure {}, expected {}",
            xy.len(),
            size(report.x_cap_y.order_log2)
        ),
    ));
    let listed: BTreeSet<GenImages> = structure::intersection_generators(p)?
        .iter()
        .map(|g| g.aut.images())
        .collect();
    let listed_ok = listed.iter().all(|g| xy.contains(g));
    checks.push(Check::new(
        "listed X cap Y elements lie in both",
        listed_ok,
        "",
    ));
    let lhs = x.len() as u128 * y.len() as u128;
    let rhs = xy.len() as u128 * (1u128 << report.aut_order_log2);
    checks.push(Check::new(
        "|X||Y| = |X cap Y||Aut|",
        lhs == rhs,
        format!("{lhs} vs {rhs}"),
    ));
    Ok(checks)
}

fn rprime_suite(p: &GroupParams) -> Result<Vec<Check>> {
    Ok(vec![Check::new(
        "R' sample relation",
        structure::sample_rprime_check(p)?,
        "",
    )])
}

fn cocycle_suite(p: &GroupParams, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let ok = structure::cocycle_check(p)?;
    let y = oracle::y_closure(p, opts.oracle.max_bits)?;
    let gens = structure::generator_map(p)?;
    let (psi1, psi2) = (gens["psi1"], gens["psi2"]);
    let nonabelian = psi1.compose(&psi2)? != psi2.compose(&psi1)?;
    let want = 1usize << (p.b() + 1);
    Ok(vec![
        Check::new("2-cocycle identity, central [psi1,psi2] of order 2", ok, ""),
        Check::new("Y nonabelian", nonabelian, ""),
        Check::new(
            "|Y| = 2^(b+1)",
            y.len() == want,
            format!("{} vs {want}", y.len()),
        ),
    ])
}

// ---- oracle cross-checks ----

fn oracle_suite(p: &GroupParams, opts: &SuiteOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let all = oracle::enumerate_automorphisms(p, &opts.oracle)?;
    let expected = 1usize << structure::aut_order_log2(p)?;
    checks.push(Check::new(
        "oracle count = formula",
        all.len() == expected,
        format!("{} vs {expected}", all.len()),
    ));
    let set: BTreeSet<GenImages> = all.iter().copied().collect();
    let closure = oracle::standard_closure(p, opts.oracle.max_bits)?;
    checks.push(Check::new(
        "standard generators generate the oracle set",
        closure.to_vec() == all,
        format!("closure {}, oracle {}", closure.len(), all.len()),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
    let mut closed = true;
    for _ in 0..opts.samples {
        let g = all.choose(&mut rng).unwrap();
        let h = all.choose(&mut rng).unwrap();
        closed &= set.contains(&hom::compose_images(g, h, p));
        let inv = Automorphism::from_images(p, *g)?.inverse().images();
        closed &= set.contains(&inv);
    }
    checks.push(Check::new(
        "oracle set closed under composition and inverse",
        closed,
        "",
    ));

    let x = oracle::x_closure(p, opts.oracle.max_bits)?;
    let y = oracle::y_closure(p, opts.oracle.max_bits)?;
    let mut xy_ok = true;
    for g in &all {
        let (phi, psi) = Automorphism::from_images(p, *g)?.decompose()?;
        xy_ok &= x.contains(&phi.images()) && y.contains(&psi.images());
    }
    checks.push(Check::new("Aut = XY via decomposition", xy_ok, ""));

    let closed_form: Vec<GenImages> = closed_form_automorphisms(p)?
        .into_iter()
        .map(|a| a.images())
        .collect();
    checks.push(Check::new(
        "closed-form set = oracle set",
        closed_form == all,
        "",
    ));
    Ok(checks)
}
