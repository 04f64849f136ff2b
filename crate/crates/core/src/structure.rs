//! Standard generators of `X` and `Y`, their presentations, and the
//! symbolic structure report.
//!
//! `X` is the subgroup of φ-type maps (`y = 0`, `y2 = 1`) and `Y` the
//! subgroup of ψ-type maps (`x1 = 1`, `x2 = 0`); `Aut(H) = XY`.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith2::Residue;
use crate::aut::Automorphism;
use crate::error::{Error, Result};
use crate::group::{Family, GroupParams};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subgroup {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedAut {
    pub name: String,
    #[serde(skip)]
    pub subgroup: Subgroup,
    #[serde(flatten)]
    pub aut: Automorphism,
}

impl NamedAut {
    fn new(name: &str, subgroup: Subgroup, aut: Automorphism) -> Self {
        NamedAut {
            name: name.to_string(),
            subgroup,
            aut,
        }
    }
}

fn require_classified(p: &GroupParams) -> Result<()> {
    if p.is_classified() {
        Ok(())
    } else {
        Err(Error::Unclassified)
    }
}

/// The branch-appropriate generators, `X` generators first.
pub fn standard_generators(p: &GroupParams) -> Result<Vec<NamedAut>> {
    require_classified(p)?;
    let (a, c, d) = (p.a() as i64, p.c() as i64, p.d() as i64);
    let phi = |x1, x2| Automorphism::phi(p, x1, x2);
    let psi = |y, y2| Automorphism::psi(p, y, y2);
    let mut out = Vec::new();
    let mut push = |n: &str, s: Subgroup, aut: Automorphism| out.push(NamedAut::new(n, s, aut));
    match p.family() {
        Family::I => {
            let f = p.f() as i64;
            let z = p.z();
            let w = p.w().expect("family I").value() as i64;
            push("phi0", Subgroup::X, phi(1, 1 << (a - f))?);
            push("phi1", Subgroup::X, phi(1 - (1 << (f - c)), z)?);
            if f == c + 1 {
                push("phi2", Subgroup::X, phi(5, -2 * z)?);
            }
            push("psi0", Subgroup::Y, psi(1 << (a - c), 1)?);
            push("psi1", Subgroup::Y, psi(w, 1 - (1 << (c - d)))?);
            if c == d + 1 {
                push("psi2", Subgroup::Y, psi(-2 * w, 5)?);
            }
        }
        Family::II => {
            let e = p.e().expect("family II") as i64;
            push("phi0", Subgroup::X, phi(1, 1)?);
            push("phi1", Subgroup::X, phi(-1, 0)?);
            push("phi2", Subgroup::X, phi(5, 0)?);
            if e <= a - 3 {
                push("psi0", Subgroup::Y, psi(2, 1)?);
                push("psi1", Subgroup::Y, psi(1, 1 - (1 << (a - e - 1)))?);
            } else if e == a - 2 {
                // ψ_{1,5} is not in Ω here (‖4‖ = 2 ≠ a-e-1), and Y has rank 3,
                // so ψ0 is kept and ψ2 is taken as ψ_{0,5}.
                push("psi0", Subgroup::Y, psi(2, 1)?);
                push("psi1", Subgroup::Y, psi(1, 1 - (1 << (a - e - 1)))?);
                push("psi2", Subgroup::Y, psi(0, 5)?);
            } else {
                push("psi0", Subgroup::Y, psi(2, 1)?);
                push("psi1~", Subgroup::Y, psi(0, -1)?);
                push("psi2~", Subgroup::Y, psi(0, 5)?);
            }
        }
        Family::Unclassified => unreachable!(),
    }
    Ok(out)
}

/// Name-to-automorphism lookup for word evaluation.
pub fn generator_map(p: &GroupParams) -> Result<HashMap<String, Automorphism>> {
    Ok(standard_generators(p)?
        .into_iter()
        .map(|g| (g.name, g.aut))
        .collect())
}

/// A presentation of `X` or `Y` on the standard generators, with the
/// exact order each generator should have (as a power of two).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub orders: Vec<(String, u32)>,
    pub relators: Vec<Word>,
}

fn g(n: &str) -> Word {
    Word::gen(n)
}

fn prod(ws: Vec<Word>) -> Word {
    Word::product(ws)
}

fn p2(k: u32) -> i64 {
    1i64 << k
}

fn orders(list: &[(&str, u32)]) -> Vec<(String, u32)> {
    list.iter().map(|&(n, k)| (n.to_string(), k)).collect()
}

/// Relators of the branch of `X`.
pub fn x_presentation(p: &GroupParams) -> Result<Presentation> {
    require_classified(p)?;
    let (a, c) = (p.a(), p.c());
    Ok(match p.family() {
        Family::I => {
            let f = p.f();
            if f >= c + 2 {
                Presentation {
                    orders: orders(&[("phi0", f), ("phi1", a + c - f)]),
                    relators: vec![
                        g("phi0").pow(p2(f)),
                        g("phi1").pow(p2(a + c - f)),
                        prod(vec![
                            g("phi1"),
                            g("phi0"),
                            g("phi1").pow(-1),
                            g("phi0").pow(p2(f - c) - 1),
                        ]),
                    ],
                }
            } else {
                Presentation {
                    orders: orders(&[("phi0", f), ("phi1", 1), ("phi2", a - 2)]),
                    relators: vec![
                        g("phi0").pow(p2(f)),
                        g("phi1").pow(2),
                        g("phi2").pow(p2(a - 2)),
                        prod(vec![g("phi1"), g("phi0")]).pow(2),
                        prod(vec![
                            g("phi2"),
                            g("phi0"),
                            g("phi2").pow(-1),
                            g("phi0").pow(-5),
                        ]),
                        Word::comm(g("phi1"), g("phi2")),
                    ],
                }
            }
        }
        Family::II => Presentation {
            orders: orders(&[("phi0", a), ("phi1", 1), ("phi2", a - 2)]),
            relators: vec![
                g("phi0").pow(p2(a)),
                g("phi1").pow(2),
                g("phi2").pow(p2(a - 2)),
                prod(vec![g("phi1"), g("phi0"), g("phi1").pow(-1), g("phi0")]),
                prod(vec![
                    g("phi2"),
                    g("phi0"),
                    g("phi2").pow(-1),
                    g("phi0").pow(-5),
                ]),
                Word::comm(g("phi1"), g("phi2")),
            ],
        },
        Family::Unclassified => unreachable!(),
    })
}

/// Relators of the branch of `Y`.
pub fn y_presentation(p: &GroupParams) -> Result<Presentation> {
    require_classified(p)?;
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    Ok(match p.family() {
        Family::I => {
            if c >= d + 2 {
                Presentation {
                    orders: orders(&[("psi0", d), ("psi1", a + b + d - 2 * c)]),
                    relators: vec![
                        g("psi0").pow(p2(d)),
                        g("psi1").pow(p2(a + b + d - 2 * c)),
                        prod(vec![
                            g("psi1"),
                            g("psi0"),
                            g("psi1").pow(-1),
                            g("psi0").pow(p2(c - d) - 1),
                        ]),
                    ],
                }
            } else {
                Presentation {
                    orders: orders(&[("psi0", d), ("psi1", 1), ("psi2", a + b - c - 2)]),
                    relators: vec![
                        g("psi0").pow(p2(d)),
                        g("psi1").pow(2),
                        g("psi2").pow(p2(a + b - c - 2)),
                        prod(vec![g("psi1"), g("psi0")]).pow(2),
                        prod(vec![
                            g("psi2"),
                            g("psi0"),
                            g("psi2").pow(-1),
                            g("psi0").pow(-5),
                        ]),
                        Word::comm(g("psi1"), g("psi2")),
                    ],
                }
            }
        }
        Family::II => {
            let e = p.e().expect("family II");
            if e + 3 <= a {
                Presentation {
                    orders: orders(&[("psi0", 1), ("psi1", b + e + 2 - a)]),
                    relators: vec![
                        g("psi0").pow(2),
                        g("psi1").pow(p2(b + e + 2 - a)),
                        Word::comm(g("psi0"), g("psi1")),
                    ],
                }
            } else if e + 2 == a {
                let k = Word::comm(g("psi1"), g("psi2"));
                Presentation {
                    orders: orders(&[("psi0", 1), ("psi1", 1), ("psi2", b - 1)]),
                    relators: vec![
                        g("psi0").pow(2),
                        g("psi1").pow(2),
                        g("psi2").pow(p2(b - 1)),
                        Word::comm(k.clone(), g("psi1")),
                        Word::comm(k.clone(), g("psi2")),
                        k.pow(2),
                    ],
                }
            } else {
                Presentation {
                    orders: orders(&[("psi0", 1), ("psi1~", 1), ("psi2~", b - 1)]),
                    relators: vec![
                        g("psi0").pow(2),
                        g("psi1~").pow(2),
                        g("psi2~").pow(p2(b - 1)),
                        Word::comm(g("psi0"), g("psi1~")),
                        Word::comm(g("psi0"), g("psi2~")),
                        Word::comm(g("psi1~"), g("psi2~")),
                    ],
                }
            }
        }
        Family::Unclassified => unreachable!(),
    })
}

/// `log2 |Aut(H)|`.
pub fn aut_order_log2(p: &GroupParams) -> Result<u32> {
    require_classified(p)?;
    Ok(match p.family() {
        Family::I => p.b() + p.c() + 2 * p.d(),
        Family::II => p.a() + p.b() + (p.a() - 2).min(p.e().expect("family II")),
        Family::Unclassified => unreachable!(),
    })
}

/// Branch label such as `f=c+1, c=d+1` or `e=a-2`.
pub fn branch_label(p: &GroupParams) -> Result<String> {
    require_classified(p)?;
    let (a, c, d) = (p.a(), p.c(), p.d());
    Ok(match p.family() {
        Family::I => {
            let fb = if p.f() >= c + 2 { "f>=c+2" } else { "f=c+1" };
            let cb = if c >= d + 2 { "c>=d+2" } else { "c=d+1" };
            format!("{fb}, {cb}")
        }
        Family::II => {
            let e = p.e().expect("family II");
            if e + 3 <= a {
                "e<=a-3".into()
            } else if e + 2 == a {
                "e=a-2".into()
            } else {
                "e=a-1".into()
            }
        }
        Family::Unclassified => unreachable!(),
    })
}

/// Generators of `X ∩ Y`. Family I: `φ_{1+2^c,0} = ψ_{2^d,1}` and
/// `φ_{1,2^c} = ψ_{0,1+2^b}`. Family II: the four listed elements.
pub fn intersection_generators(p: &GroupParams) -> Result<Vec<NamedAut>> {
    require_classified(p)?;
    let (b, c) = (p.b(), p.c());
    Ok(match p.family() {
        Family::I => vec![
            NamedAut::new(
                "phi[1+2^c,0]",
                Subgroup::X,
                Automorphism::phi(p, 1 + p2(c), 0)?,
            ),
            NamedAut::new("phi[1,2^c]", Subgroup::X, Automorphism::phi(p, 1, p2(c))?),
        ],
        Family::II => vec![
            NamedAut::new("psi[0,1]", Subgroup::Y, Automorphism::psi(p, 0, 1)?),
            NamedAut::new(
                "psi[0,1+2^b]",
                Subgroup::Y,
                Automorphism::psi(p, 0, 1 + p2(b))?,
            ),
            NamedAut::new("psi[2,1]", Subgroup::Y, Automorphism::psi(p, 2, 1)?),
            NamedAut::new(
                "psi[2,1+2^b]",
                Subgroup::Y,
                Automorphism::psi(p, 2, 1 + p2(b))?,
            ),
        ],
        Family::Unclassified => unreachable!(),
    })
}

/// Abstract shape of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    #[serde(rename = "cyclic")]
    Cyclic,
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "semidirect")]
    Semidirect,
    #[serde(rename = "E_f")]
    Ef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupReport {
    pub shape: Shape,
    pub description: String,
    /// Component orders as powers of two, normal factor first.
    pub factors_log2: Vec<u32>,
    pub order_log2: u32,
    pub generators: Vec<NamedAut>,
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub spec: String,
    pub family: Family,
    pub branch: String,
    pub x: SubgroupReport,
    pub y: SubgroupReport,
    pub x_cap_y: SubgroupReport,
    pub aut_order_log2: u32,
}

fn zn(k: u32) -> String {
    format!("Z_{}", 1u128 << k)
}

fn describe(shape: Shape, f: &[u32]) -> String {
    match (shape, f) {
        (Shape::Cyclic, [n]) => zn(*n),
        (Shape::Product, fs) => fs.iter().map(|&k| zn(k)).collect::<Vec<_>>().join(" x "),
        (Shape::Semidirect, [n, m]) => format!("{} x| {}", zn(*n), zn(*m)),
        (Shape::Semidirect, [n, rest @ ..]) => format!(
            "{} x| ({})",
            zn(*n),
            rest.iter().map(|&k| zn(k)).collect::<Vec<_>>().join(" x ")
        ),
        (Shape::Ef, [_, m, n]) => {
            format!("E_f, central extension of {} x {} by Z_2", zn(*m), zn(*n))
        }
        _ => unreachable!("shape/factor mismatch"),
    }
}

fn subgroup(
    shape: Shape,
    factors_log2: Vec<u32>,
    generators: Vec<NamedAut>,
    relators: Vec<String>,
) -> SubgroupReport {
    SubgroupReport {
        shape,
        description: describe(shape, &factors_log2),
        order_log2: factors_log2.iter().sum(),
        factors_log2,
        generators,
        relators,
    }
}

/// Symbolic structure of `Aut(H)` for the branch of `p`.
pub fn structure_report(p: &GroupParams) -> Result<StructureReport> {
    require_classified(p)?;
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let gens = standard_generators(p)?;
    let (xg, yg): (Vec<_>, Vec<_>) = gens.into_iter().partition(|g| g.subgroup == Subgroup::X);
    let rel = |pr: Presentation| pr.relators.iter().map(|w| w.to_string()).collect();
    let xr = rel(x_presentation(p)?);
    let yr = rel(y_presentation(p)?);
    let (x, y, x_cap_y) = match p.family() {
        Family::I => {
            let f = p.f();
            let x = if f >= c + 2 {
                subgroup(Shape::Semidirect, vec![f, a + c - f], xg, xr)
            } else {
                subgroup(Shape::Semidirect, vec![f, 1, a - 2], xg, xr)
            };
            let y = if c >= d + 2 {
                subgroup(Shape::Semidirect, vec![d, a + b + d - 2 * c], yg, yr)
            } else {
                subgroup(Shape::Semidirect, vec![d, 1, a + b - c - 2], yg, yr)
            };
            let xy = subgroup(
                Shape::Product,
                vec![a - c, a - c],
                intersection_generators(p)?,
                Vec::new(),
            );
            (x, y, xy)
        }
        Family::II => {
            let e = p.e().expect("family II");
            let x = subgroup(Shape::Semidirect, vec![a, 1, a - 2], xg, xr);
            let y = if e + 3 <= a {
                subgroup(Shape::Product, vec![1, b + e + 2 - a], yg, yr)
            } else if e + 2 == a {
                subgroup(Shape::Ef, vec![1, 1, b - 1], yg, yr)
            } else {
                subgroup(Shape::Product, vec![1, 1, b - 1], yg, yr)
            };
            let xy = subgroup(
                Shape::Product,
                vec![1, 1],
                intersection_generators(p)?,
                Vec::new(),
            );
            (x, y, xy)
        }
        Family::Unclassified => unreachable!(),
    };
    Ok(StructureReport {
        spec: p.spec_string(),
        family: p.family(),
        branch: branch_label(p)?,
        x,
        y,
        x_cap_y,
        aut_order_log2: aut_order_log2(p)?,
    })
}

/// `φ_{1+2^c,0} = ψ_{2^d,1}` and `φ_{1,2^c} = ψ_{0,1+2^b}` (family I).
/// Family II: each listed element of `X ∩ Y` is also of φ-type.
pub fn rxy_check(p: &GroupParams) -> Result<bool> {
    require_classified(p)?;
    let (b, c, d) = (p.b(), p.c(), p.d());
    match p.family() {
        Family::I => {
            let first = Automorphism::phi(p, 1 + p2(c), 0)? == Automorphism::psi(p, p2(d), 1)?;
            let second = Automorphism::phi(p, 1, p2(c))? == Automorphism::psi(p, 0, 1 + p2(b))?;
            Ok(first && second)
        }
        _ => Ok(intersection_generators(p)?
            .iter()
            .all(|g| g.aut.is_phi_type() && g.aut.is_psi_type())),
    }
}

/// Family I sample relation
/// `ψ0 ∘ φ0 = σ_{1,2^{a-f};2^{a-c},h} = φ_{h^{-1},2^{a-f}h^{-1}} ∘ ψ_{2^{a-c},h}`
/// with `h = 1 + 2^{2a+b-c-d-f}`.
pub fn sample_rprime_check(p: &GroupParams) -> Result<bool> {
    if p.family() != Family::I {
        return Err(Error::WrongFamily(format!(
            "R' sample needs family I, got {}",
            p.family()
        )));
    }
    let (a, b, c, d, f) = (p.a(), p.b(), p.c(), p.d(), p.f());
    let h_exp = 2 * a + b - c - d - f;
    let h_in = |bits: u32| {
        let two = if h_exp < bits { 1u64 << h_exp } else { 0 };
        Residue::from_u64(1 + two, bits)
    };
    let h = h_in(p.y2_bits()).value() as i64;
    let h_inv = h_in(a).inv()?.value() as i64;
    let gens = generator_map(p)?;
    let lhs = gens["psi0"].compose(&gens["phi0"])?;
    let mid = match Automorphism::new(p, 1, p2(a - f), p2(a - c), h) {
        Ok(m) => m,
        Err(Error::NotInXiOmega(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let rhs = Automorphism::phi(p, h_inv, p2(a - f) * h_inv)?.compose(&Automorphism::psi(
        p,
        p2(a - c),
        h,
    )?)?;
    Ok(lhs == mid && mid == rhs)
}

/// Family II, `e = a-2`: the section `s(u,v) = ψ1^u ψ2^v` of
/// `Y -> Z_2 × Z_{2^{b-1}}` satisfies
/// `s(u1,v1) s(u2,v2) s(u1+u2, v1+v2)^{-1} = [ψ1,ψ2]^{u2 v1}`,
/// and `[ψ1,ψ2]` is central of order 2.
pub fn cocycle_check(p: &GroupParams) -> Result<bool> {
    let ok = p.family() == Family::II && p.e().map(|e| e + 2) == Some(p.a());
    if !ok {
        return Err(Error::WrongBranch(format!(
            "cocycle check needs family II with e = a-2, got {p}"
        )));
    }
    let gens = generator_map(p)?;
    let (psi1, psi2) = (gens["psi1"], gens["psi2"]);
    let k = psi1
        .compose(&psi2)?
        .compose(&psi1.inverse())?
        .compose(&psi2.inverse())?;
    let m = 1i64 << (p.b() - 1);
    let s = |u: i64, v: i64| -> Result<Automorphism> {
        psi1.pow(u.rem_euclid(2))
            .compose(&psi2.pow(v.rem_euclid(m)))
    };
    for u1 in 0..2 {
        for v1 in 0..m {
            for u2 in 0..2 {
                for v2 in 0..m {
                    let lhs = s(u1, v1)?
                        .compose(&s(u2, v2)?)?
                        .compose(&s(u1 + u2, v1 + v2)?.inverse())?;
                    if lhs != k.pow(u2 * v1) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    let central =
        psi1.compose(&k)? == k.compose(&psi1)? && psi2.compose(&k)? == k.compose(&psi2)?;
    Ok(central && k.order() == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom;

    fn all_test_groups() -> Vec<GroupParams> {
        vec![
            GroupParams::family_i(4, 4, 3, 2).unwrap(),
            GroupParams::family_i(5, 4, 3, 2).unwrap(),
            GroupParams::family_i(5, 5, 3, 2).unwrap(),
            GroupParams::family_i(5, 5, 4, 2).unwrap(),
            GroupParams::family_ii(3, 3, 2).unwrap(),
            GroupParams::family_ii(4, 3, 2).unwrap(),
            GroupParams::family_ii(5, 4, 2).unwrap(),
        ]
    }

    fn names(p: &GroupParams) -> Vec<String> {
        standard_generators(p)
            .unwrap()
            .into_iter()
            .map(|g| g.name)
            .collect()
    }

    #[test]
    fn generator_sets_by_branch() {
        let p = GroupParams::family_i(4, 4, 3, 2).unwrap();
        assert_eq!(names(&p), ["phi0", "phi1", "phi2", "psi0", "psi1", "psi2"]);
        let p = GroupParams::family_i(5, 5, 4, 2).unwrap();
        assert_eq!(names(&p), ["phi0", "phi1", "phi2", "psi0", "psi1"]);
        let p = GroupParams::family_ii(3, 3, 2).unwrap();
        assert_eq!(
            names(&p),
            ["phi0", "phi1", "phi2", "psi0", "psi1~", "psi2~"]
        );
        let p = GroupParams::family_ii(4, 3, 2).unwrap();
        assert_eq!(names(&p), ["phi0", "phi1", "phi2", "psi0", "psi1", "psi2"]);
        let p = GroupParams::family_ii(5, 4, 2).unwrap();
        assert_eq!(names(&p), ["phi0", "phi1", "phi2", "psi0", "psi1"]);
    }

    #[test]
    fn generators_are_automorphisms() {
        for p in all_test_groups() {
            for g in standard_generators(&p).unwrap() {
                assert!(hom::lemma22_check(&g.aut.images(), &p), "{} in {p}", g.name);
            }
        }
    }

    #[test]
    fn counting_identity_is_symbolic() {
        for p in all_test_groups() {
            let r = structure_report(&p).unwrap();
            assert_eq!(
                r.x.order_log2 + r.y.order_log2,
                r.x_cap_y.order_log2 + r.aut_order_log2,
                "{p}"
            );
        }
    }

    #[test]
    fn report_examples() {
        let r = structure_report(&GroupParams::family_i(4, 4, 3, 2).unwrap()).unwrap();
        assert_eq!(r.aut_order_log2, 11);
        assert_eq!(r.x_cap_y.order_log2, 2);
        assert_eq!(r.branch, "f=c+1, c=d+1");
        let r = structure_report(&GroupParams::family_ii(3, 3, 2).unwrap()).unwrap();
        assert_eq!(r.aut_order_log2, 7);
        let r = structure_report(&GroupParams::family_ii(4, 3, 2).unwrap()).unwrap();
        assert_eq!(r.y.shape, Shape::Ef);
        assert_eq!(r.aut_order_log2, 9);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["y"]["shape"], "E_f");
        assert_eq!(json["x"]["generators"][0]["name"], "phi0");
        assert_eq!(json["x"]["generators"][0]["x2"], 1);
    }

    #[test]
    fn rxy_and_rprime() {
        for p in all_test_groups() {
            assert!(rxy_check(&p).unwrap(), "{p}");
            if p.family() == Family::I {
                assert!(sample_rprime_check(&p).unwrap(), "{p}");
            } else {
                assert!(matches!(
                    sample_rprime_check(&p),
                    Err(Error::WrongFamily(_))
                ));
            }
        }
    }

    #[test]
    fn ef_branch_commutator_is_trivial() {
        // Y is abelian on this branch, so [ψ1,ψ2] cannot have order 2.
        let p = GroupParams::family_ii(4, 3, 2).unwrap();
        assert!(!cocycle_check(&p).unwrap());
        let gens = generator_map(&p).unwrap();
        let (s1, s2) = (gens["psi1"], gens["psi2"]);
        assert_eq!(s1.compose(&s2).unwrap(), s2.compose(&s1).unwrap());
        let q = GroupParams::family_ii(3, 3, 2).unwrap();
        assert!(matches!(cocycle_check(&q), Err(Error::WrongBranch(_))));
    }

    #[test]
    fn rendered_relators_parse_back() {
        for p in all_test_groups() {
            for pr in [x_presentation(&p).unwrap(), y_presentation(&p).unwrap()] {
                for w in pr.relators {
                    assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
                }
            }
        }
    }
}
