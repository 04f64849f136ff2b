//! Automorphisms of family I and II groups in quadruple form
//! `σ_{x1,x2;y,y2}`, with `σ(α) = α^{x1} β^{2^{b-d} y}` and
//! `σ(β) = α^{x2} β^{y2}`.
//!
//! The quadruple lives in `Ξ × Ω`: `x1, x2 ∈ Z/2^a`, `y ∈ Z/2^{a+d-c}` and
//! `y2 ∈ Z/2^{a+b-c}`. β-exponents are group powers, so `y` and `y2` may run
//! past `2^b`; the excess carries into the α-coordinate. Different
//! quadruples can give the same map, so an [`Automorphism`] is stored by its
//! generator images and the quadruple is a view recomputed from them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith2::{geom_sum, Residue};
use crate::error::{Error, Result};
use crate::group::{Element, Family, GroupParams};
use crate::hom::{self, GenImages};

/// Quadruple coordinates of an automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quad {
    pub x1: u64,
    pub x2: u64,
    pub y: u64,
    pub y2: u64,
}

/// Checks `(x1, x2) ∈ Ξ`.
pub fn check_xi(p: &GroupParams, x1: u64, x2: u64) -> Result<()> {
    match p.family() {
        Family::I => {
            let (a, b, c) = (p.a(), p.b(), p.c());
            let lhs = x1 as i128 - 1 - ((x2 as i128) << (b - c));
            if lhs.rem_euclid(1i128 << (a - c)) != 0 {
                return Err(Error::NotInXiOmega(format!(
                    "x1 = 1 + 2^(b-c) x2 (mod 2^(a-c)) fails for x1 = {x1}, x2 = {x2}"
                )));
            }
            Ok(())
        }
        Family::II => {
            if x1.is_multiple_of(2) {
                return Err(Error::NotInXiOmega(format!("x1 = {x1} must be odd")));
            }
            Ok(())
        }
        Family::Unclassified => Err(Error::Unclassified),
    }
}

/// Checks `(y, y2) ∈ Ω`.
pub fn check_omega(p: &GroupParams, y: u64, y2: u64) -> Result<()> {
    let (a, c, d) = (p.a(), p.c(), p.d());
    match (p.family(), p.e()) {
        (Family::I, _) => {
            let rhs = 1 + (((1i128 << (c - d)) + (1i128 << (c - 1))) * y as i128);
            if (y2 as i128 - rhs).rem_euclid(1i128 << (a - d)) != 0 {
                return Err(Error::NotInXiOmega(format!(
                    "y2 = 1 + (2^(c-d) + 2^(c-1)) y (mod 2^(a-d)) fails for y = {y}, y2 = {y2}"
                )));
            }
            Ok(())
        }
        (Family::II, Some(e)) => {
            let y2m1 = Residue::reduce_i128(y2 as i128 - 1, p.y2_bits());
            if y.is_multiple_of(2) {
                if !y2m1.valuation().is_at_least(a - e) {
                    return Err(Error::NotInXiOmega(format!(
                        "y even needs y2 = 1 (mod 2^(a-e)), got y2 = {y2}"
                    )));
                }
            } else if e + 2 > a {
                return Err(Error::NotInXiOmega(format!(
                    "y odd needs e <= a-2 (e = {e}, a = {a})"
                )));
            } else if y2m1.valuation() != a - e - 1 {
                return Err(Error::NotInXiOmega(format!(
                    "y odd needs |y2 - 1| = a-e-1 = {}, got y2 = {y2}",
                    a - e - 1
                )));
            }
            Ok(())
        }
        _ => Err(Error::Unclassified),
    }
}

/// All of `Ξ`, in lexicographic order.
pub fn xi(p: &GroupParams) -> Vec<(u64, u64)> {
    let n = 1u64 << p.a();
    (0..n)
        .flat_map(|x1| (0..n).map(move |x2| (x1, x2)))
        .filter(|&(x1, x2)| check_xi(p, x1, x2).is_ok())
        .collect()
}

/// All of `Ω` with lifted coordinates `y < 2^{a+d-c}`, `y2 < 2^{a+b-c}`.
pub fn omega(p: &GroupParams) -> Vec<(u64, u64)> {
    let ny2 = 1u64 << p.y2_bits();
    (0..1u64 << p.y_bits())
        .flat_map(|y| (0..ny2).map(move |y2| (y, y2)))
        .filter(|&(y, y2)| check_omega(p, y, y2).is_ok())
        .collect()
}

/// An automorphism of a family I or II group, keyed by its generator images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    params: GroupParams,
    images: GenImages,
}

impl Automorphism {
    /// `σ_{x1,x2;y,y2}`. Coordinates are reduced into their rings first
    /// (negative values allowed), then checked against `Ξ × Ω`.
    pub fn new(p: &GroupParams, x1: i64, x2: i64, y: i64, y2: i64) -> Result<Self> {
        if !p.is_classified() {
            return Err(Error::Unclassified);
        }
        let x1 = Residue::reduce_i128(x1 as i128, p.a()).value();
        let x2 = Residue::reduce_i128(x2 as i128, p.a()).value();
        let y = Residue::reduce_i128(y as i128, p.y_bits()).value();
        let y2 = Residue::reduce_i128(y2 as i128, p.y2_bits()).value();
        check_xi(p, x1, x2)?;
        check_omega(p, y, y2)?;
        let w = (y as u128) << (p.b() - p.d());
        let img_alpha = p.mul(p.element(x1 as i64, 0), p.beta_pow(w));
        let img_beta = p.mul(p.element(x2 as i64, 0), p.beta_pow(y2 as u128));
        let images = GenImages::new(img_alpha, img_beta);
        debug_assert!(hom::lemma22_check(&images, p), "{images:?} from Xi x Omega");
        Ok(Automorphism { params: *p, images })
    }

    /// `φ_{x1,x2} = σ_{x1,x2;0,1}`.
    pub fn phi(p: &GroupParams, x1: i64, x2: i64) -> Result<Self> {
        Self::new(p, x1, x2, 0, 1)
    }

    /// `ψ_{y,y2} = σ_{1,0;y,y2}`.
    pub fn psi(p: &GroupParams, y: i64, y2: i64) -> Result<Self> {
        Self::new(p, 1, 0, y, y2)
    }

    pub fn identity(p: &GroupParams) -> Result<Self> {
        Self::new(p, 1, 0, 0, 1)
    }

    /// Wraps generator images that pass the congruence conditions.
    pub fn from_images(p: &GroupParams, images: GenImages) -> Result<Self> {
        if !p.is_classified() {
            return Err(Error::Unclassified);
        }
        if !hom::lemma22_check(&images, p) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(Automorphism { params: *p, images })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn images(&self) -> GenImages {
        self.images
    }

    /// Canonical quadruple: `y < 2^d`, `y2 < 2^b`, read off the images.
    pub fn quad(&self) -> Quad {
        let shift = self.params.b() - self.params.d();
        Quad {
            x1: self.images.x1(),
            x2: self.images.x2(),
            y: self.images.y1() >> shift,
            y2: self.images.y2(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images == GenImages::identity(&self.params)
    }

    /// Whether this lies in `X`, i.e. fixes `β` modulo `<α>`.
    pub fn is_phi_type(&self) -> bool {
        let q = self.quad();
        q.y == 0 && q.y2 == 1
    }

    /// Whether this lies in `Y`, i.e. `x1 = 1` and `x2 = 0` for some
    /// representative quadruple.
    pub fn is_psi_type(&self) -> bool {
        let p = &self.params;
        let (b, c) = (p.b(), p.c());
        let mask_c = (1u64 << c) - 1;
        let (u1, v1) = (self.images.x1(), self.images.y1());
        let (u2, v2) = (self.images.x2(), self.images.y2());
        if (u1.wrapping_sub(1)) & mask_c != 0 || u2 & mask_c != 0 {
            return false;
        }
        // Fold the α-part back into a β-power: α^{2^c t} = β^{2^b t}.
        let lift = |u: u64, v: u64| (v as u128) + (((u >> c) as u128) << b);
        let w1 = lift(u1.wrapping_sub(1) & ((1u64 << p.a()) - 1), v1);
        let w2 = lift(u2, v2);
        let shift = b - p.d();
        if w1 & ((1u128 << shift) - 1) != 0 {
            return false;
        }
        let y = (w1 >> shift) as i64;
        match Self::psi(p, y, w2 as i64) {
            Ok(psi) => psi == *self,
            Err(_) => false,
        }
    }

    /// Closed-form image of `α^u β^v`.
    ///
    /// Family I: `α^{x1[u; 1+2^b y] + (1 + 2^b y u) x2 [v; r^{y2}]} β^{2^{b-d} y u + y2 v}`.
    /// Family II: `α^{x1 u + x2 [v; r^{y2}]} β^{2^{b-1} y u + y2 v}`.
    pub fn apply(&self, g: Element) -> Element {
        let p = &self.params;
        let q = self.quad();
        let a = p.a();
        let (u, v) = (g.u(), g.v());
        let x1 = Residue::from_u64(q.x1, a);
        let x2 = Residue::from_u64(q.x2, a);
        let tail = x2 * geom_sum(v, p.r_pow(q.y2 as i64));
        let alpha_exp = match p.family() {
            Family::I => {
                let two_b_y = Residue::reduce_i128((q.y as i128) << p.b(), a);
                let s = Residue::one(a) + two_b_y;
                let twist = Residue::one(a) + two_b_y * Residue::from_u64(u, a);
                x1 * geom_sum(u, s) + twist * tail
            }
            Family::II => x1 * Residue::from_u64(u, a) + tail,
            Family::Unclassified => unreachable!("Automorphism over unclassified params"),
        };
        let beta_exp = ((q.y as u128) << (p.b() - p.d())) * u as u128 + q.y2 as u128 * v as u128;
        p.mul(p.alpha_pow(alpha_exp), p.beta_pow(beta_exp))
    }

    /// Reference application by substitution into the images.
    pub fn apply_by_words(&self, g: Element) -> Element {
        hom::apply_by_words(&self.images, g, &self.params)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Automorphism) -> Result<Automorphism> {
        if self.params != inner.params {
            return Err(Error::ParamMismatch);
        }
        Ok(self.then_unchecked(inner))
    }

    fn then_unchecked(&self, inner: &Automorphism) -> Automorphism {
        let images = GenImages::new(
            self.apply(inner.images.img_alpha),
            self.apply(inner.images.img_beta),
        );
        Automorphism {
            params: self.params,
            images,
        }
    }

    pub fn pow(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity(&self.params).expect("classified");
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then_unchecked(&sq);
            }
            sq = sq.then_unchecked(&sq);
            k >>= 1;
        }
        acc
    }

    /// Order in `Aut(H)`; a power of two.
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut x = *self;
        while !x.is_identity() {
            x = x.then_unchecked(&x);
            k <<= 1;
        }
        k
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.order();
        if n == 1 {
            return *self;
        }
        self.pow((n - 1) as i64)
    }

    /// `σ = φ_{x̃1,x̃2} ∘ ψ_{y,y2}` with `x̃2 = x2 [y2; r]^{-1}` and
    /// `x̃1 = x1 - x2 [2^{b-d} y; r] [y2; r]^{-1}`.
    pub fn decompose(&self) -> Result<(Automorphism, Automorphism)> {
        let p = &self.params;
        let q = self.quad();
        let a = p.a();
        let r = p.r_residue();
        let x1 = Residue::from_u64(q.x1, a);
        let x2 = Residue::from_u64(q.x2, a);
        let len = q.y << (p.b() - p.d());
        let inv = geom_sum(q.y2, r).inv()?;
        let tx2 = x2 * inv;
        let tx1 = x1 - x2 * geom_sum(len, r) * inv;
        let phi = Self::phi(p, tx1.value() as i64, tx2.value() as i64)?;
        let psi = Self::psi(p, q.y as i64, q.y2 as i64)?;
        Ok((phi, psi))
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quad();
        write!(f, "sigma[{},{};{},{}]", q.x1, q.x2, q.y, q.y2)
    }
}

#[derive(Serialize)]
struct AutJson {
    x1: u64,
    x2: u64,
    y: u64,
    y2: u64,
    img_alpha: Element,
    img_beta: Element,
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let q = self.quad();
        AutJson {
            x1: q.x1,
            x2: q.x2,
            y: q.y,
            y2: q.y2,
            img_alpha: self.images.img_alpha,
            img_beta: self.images.img_beta,
        }
        .serialize(s)
    }
}
