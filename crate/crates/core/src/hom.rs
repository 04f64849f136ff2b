//! Deciding whether a pair of generator images `(σ(α), σ(β))` extends to an
//! automorphism.
//!
//! Two independent routes live here. [`lemma22_check`] evaluates the four
//! congruence conditions on `(x1, y1, x2, y2)`; [`oracle_check`] checks the
//! defining relations on the images directly and then verifies by closure
//! that the images generate all of `H`. The two must agree everywhere.

use serde::Serialize;

use crate::arith2::{geom_sum, Residue};
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};

/// Candidate images `σ(α) = α^{x1} β^{y1}`, `σ(β) = α^{x2} β^{y2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GenImages {
    pub img_alpha: Element,
    pub img_beta: Element,
}

impl GenImages {
    pub fn new(img_alpha: Element, img_beta: Element) -> Self {
        GenImages {
            img_alpha,
            img_beta,
        }
    }

    pub fn identity(p: &GroupParams) -> Self {
        GenImages::new(p.alpha(), p.beta())
    }

    /// Images from the raw coordinates `(x1, y1, x2, y2)`.
    pub fn from_coords(p: &GroupParams, x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        GenImages::new(p.element(x1, y1), p.element(x2, y2))
    }

    pub fn x1(&self) -> u64 {
        self.img_alpha.u()
    }
    pub fn y1(&self) -> u64 {
        self.img_alpha.v()
    }
    pub fn x2(&self) -> u64 {
        self.img_beta.u()
    }
    pub fn y2(&self) -> u64 {
        self.img_beta.v()
    }
}

/// Outcome of each of the four conditions. `c7` and `c8` are only meaningful
/// when `c6` holds (their division terms need `2^{b-d} | y1`); they are
/// reported `false` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma22 {
    /// `2^{b-d} | y1`
    pub c6: bool,
    /// `σ(β)^{2^b} = σ(α)^{2^c}`
    pub c7: bool,
    /// `σ(β) σ(α) σ(β)^{-1} = σ(α)^r`
    pub c8: bool,
    /// `x1 y2 - x2 y1` odd
    pub c9: bool,
}

impl Lemma22 {
    pub fn all(&self) -> bool {
        self.c6 && self.c7 && self.c8 && self.c9
    }

    /// Everything but the Frattini-quotient condition.
    pub fn without_c9(&self) -> bool {
        self.c6 && self.c7 && self.c8
    }
}

fn assert_classified(p: &GroupParams) {
    assert!(
        p.is_classified(),
        "congruence conditions need a family I or II group, got {p}"
    );
}

/// `n / 2^k` for an integer known to be divisible.
fn exact_shr(n: u128, k: u32, what: &str) -> u128 {
    assert!(
        n.trailing_zeros() >= k || n == 0,
        "{what} is not integral: {n} / 2^{k}"
    );
    n >> k
}

/// Evaluates conditions (6)–(9) on the reduced coordinates. Exponents of `r`
/// are reduced mod `2^b`; bracket lengths are taken as written (the length
/// `2^b` in `[2^b; r^{y2}]` is not reduced to zero).
pub fn lemma22_conditions(g: &GenImages, p: &GroupParams) -> Lemma22 {
    assert_classified(p);
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let (x1, y1, x2, y2) = (g.x1(), g.y1(), g.x2(), g.y2());
    let c9 = (x1 * y2 + x2 * y1) & 1 == 1;
    let c6 = y1 & ((1u64 << (b - d)) - 1) == 0;
    if !c6 {
        return Lemma22 {
            c6,
            c7: false,
            c8: false,
            c9,
        };
    }

    let res = |n: u128| Residue::reduce_i128(n as i128, a);
    let two_c = 1u128 << c;
    let r = p.r_residue();
    let r_y1 = p.r_pow(y1 as i64);
    let r_y2 = p.r_pow(y2 as i64);
    let one = Residue::one(a);

    // (7): x2[2^b; r^{y2}] + 2^c y2 - x1[2^c; r^{y1}] - (2^c y1 / 2^b) 2^c
    let carry7 = exact_shr(two_c * y1 as u128, b, "2^c y1 / 2^b");
    let t7 = res(x2 as u128) * geom_sum(1u64 << b, r_y2) + res(two_c * y2 as u128)
        - res(x1 as u128) * geom_sum(1u64 << c, r_y1)
        - res(carry7) * res(two_c);

    // (8): (r^{y1} - 1) x2 + ([r; r^{y1}] - r^{y2}) x1 + ((r-1) y1 / 2^b) 2^c
    let carry8 = exact_shr((p.r() as u128 - 1) * y1 as u128, b, "(r-1) y1 / 2^b");
    let t8 = (r_y1 - one) * res(x2 as u128)
        + (geom_sum(r.value(), r_y1) - r_y2) * res(x1 as u128)
        + res(carry8) * res(two_c);

    Lemma22 {
        c6,
        c7: t7.is_zero(),
        c8: t8.is_zero(),
        c9,
    }
}

/// True iff `g` defines an automorphism, by the congruence conditions.
pub fn lemma22_check(g: &GenImages, p: &GroupParams) -> bool {
    lemma22_conditions(g, p).all()
}

/// The simplified replacement for conditions (7)–(8), on `y = y1 / 2^{b-d}`:
///
/// * family I: `x1 ≡ 1 + 2^{b-c} x2 (mod 2^{a-c})` and
///   `y2 ≡ 1 + (2^{c-d} + 2^{c-1}) y (mod 2^{a-d})`;
/// * family II: `y` even and `y2 ≡ 1 (mod 2^{a-e})`, or `e ≤ a-2`, `y` odd
///   and `‖y2 - 1‖ = a-e-1`.
///
/// Returns `false` when (6) fails.
pub fn simplified_conditions(g: &GenImages, p: &GroupParams) -> bool {
    assert_classified(p);
    let (a, b, c, d) = (p.a() as i64, p.b(), p.c() as i64, p.d() as i64);
    let (x1, y1, x2, y2) = (g.x1() as i128, g.y1(), g.x2() as i128, g.y2() as i128);
    if y1 & ((1u64 << (b as i64 - d)) - 1) != 0 {
        return false;
    }
    let y = (y1 >> (b as i64 - d)) as i128;
    let congruent = |lhs: i128, rhs: i128, bits: i64| (lhs - rhs).rem_euclid(1i128 << bits) == 0;
    match p.e() {
        None => {
            congruent(x1, 1 + (x2 << (b as i64 - c)), a - c)
                && congruent(y2, 1 + ((1i128 << (c - d)) + (1i128 << (c - 1))) * y, a - d)
        }
        Some(e) => {
            let e = e as i64;
            if y % 2 == 0 {
                congruent(y2, 1, a - e)
            } else {
                e <= a - 2 && crate::arith2::val2(y2 - 1) == (a - e - 1) as u32
            }
        }
    }
}

/// Square-and-multiply over [`GroupParams::mul`] only; the oracle must not
/// rely on the bracket closed form.
fn pow_by_mul(p: &GroupParams, g: Element, mut k: u64) -> Element {
    let mut acc = p.identity();
    let mut base = g;
    while k > 0 {
        if k & 1 == 1 {
            acc = p.mul(acc, base);
        }
        base = p.mul(base, base);
        k >>= 1;
    }
    acc
}

/// Defining relations on the images:
/// `σ(α)^{2^a} = 1`, `σ(β)^{2^b} = σ(α)^{2^c}`, `σ(β)σ(α)σ(β)^{-1} = σ(α)^r`.
pub fn satisfies_relations(g: &GenImages, p: &GroupParams) -> bool {
    let (ia, ib) = (g.img_alpha, g.img_beta);
    let mut sq = ia;
    let mut ia_2c = if p.c() == 0 { ia } else { p.identity() };
    for i in 1..=p.a() {
        sq = p.mul(sq, sq);
        if i == p.c() {
            ia_2c = sq;
        }
    }
    if !sq.is_identity() {
        return false;
    }
    let mut ib_2b = ib;
    for _ in 0..p.b() {
        ib_2b = p.mul(ib_2b, ib_2b);
    }
    if ib_2b != ia_2c {
        return false;
    }
    // βα = α^r β on the images
    p.mul(ib, ia) == p.mul(pow_by_mul(p, ia, p.r()), ib)
}

/// Size of the subgroup generated by `gens`, by breadth-first closure over
/// a dense bitmap of `H`.
pub fn generated_order(gens: &[Element], p: &GroupParams, max_bits: u32) -> Result<u64> {
    if p.order_bits() > max_bits {
        return Err(Error::CapExceeded {
            needed: p.order_bits(),
            cap: max_bits,
        });
    }
    let n = 1usize << p.order_bits();
    let mut seen = vec![0u64; n.div_ceil(64)];
    let mut mark = |g: Element| {
        let i = p.index_of(g);
        let bit = 1u64 << (i % 64);
        let fresh = seen[i / 64] & bit == 0;
        seen[i / 64] |= bit;
        fresh
    };
    let mut queue = vec![p.identity()];
    mark(p.identity());
    let mut count = 1u64;
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = p.mul(x, g);
            if mark(y) {
                count += 1;
                queue.push(y);
            }
        }
    }
    Ok(count)
}

/// True iff the images satisfy the defining relations (so `σ` is an
/// endomorphism) and generate `H` (so it is onto, hence bijective).
pub fn oracle_check(g: &GenImages, p: &GroupParams, max_bits: u32) -> Result<bool> {
    if p.order_bits() > max_bits {
        return Err(Error::CapExceeded {
            needed: p.order_bits(),
            cap: max_bits,
        });
    }
    if !satisfies_relations(g, p) {
        return Ok(false);
    }
    Ok(generated_order(&[g.img_alpha, g.img_beta], p, max_bits)? == 1u64 << p.order_bits())
}

/// `σ(α^u β^v) = σ(α)^u σ(β)^v` by substitution; the reference semantics for
/// every closed-form application.
pub fn apply_by_words(g: &GenImages, x: Element, p: &GroupParams) -> Element {
    p.mul(
        pow_by_mul(p, g.img_alpha, x.u()),
        pow_by_mul(p, g.img_beta, x.v()),
    )
}

/// `g2 ∘ g1` on generator images.
pub fn compose_images(g2: &GenImages, g1: &GenImages, p: &GroupParams) -> GenImages {
    GenImages::new(
        apply_by_words(g2, g1.img_alpha, p),
        apply_by_words(g2, g1.img_beta, p),
    )
}
