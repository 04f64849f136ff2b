//! Parameters and element arithmetic for `H(2^a, 2^b; 2^c, r)`, the group
//! `<α, β | α^{2^a} = 1, β^{2^b} = α^{2^c}, β α β^{-1} = α^r>`.
//!
//! Every element has a unique normal form `α^u β^v` with `u < 2^a` and
//! `v < 2^b`. When a product overflows the β-exponent, the carry
//! `β^{2^b} = α^{2^c}` is folded back into `u`; `α^{2^c}` is central because
//! `2^c (r - 1) = 0 mod 2^a`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith2::{self, geom_sum, Residue, MAX_BITS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    I,
    II,
    /// Satisfies the defining congruences but is not a family I/II group.
    Unclassified,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::II => "II",
            Family::Unclassified => "unclassified",
        })
    }
}

/// Validated parameters of `H(2^a, 2^b; 2^c, r)` together with the derived
/// constants used by the automorphism machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    a: u32,
    b: u32,
    c: u32,
    r: u64,
    family: Family,
    d: u32,
    e: Option<u32>,
}

impl PartialOrd for GroupParams {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupParams {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.a(), self.b(), self.c(), self.r()).cmp(&(other.a(), other.b(), other.c(), other.r()))
    }
}

impl GroupParams {
    /// `H_I(a,b,c,d) = H(2^a, 2^b; 2^c, 2^d + 1)`.
    pub fn family_i(a: u32, b: u32, c: u32, d: u32) -> Result<Self> {
        check_size(a, b)?;
        if d <= 1 {
            return Err(Error::ConstraintViolation(format!(
                "family I needs d > 1 (got d = {d})"
            )));
        }
        let lo = d.max(a.saturating_sub(d + 1));
        if c <= lo {
            return Err(Error::ConstraintViolation(format!(
                "family I needs max{{d, a-d-1}} < c (max = {lo}, c = {c})"
            )));
        }
        if c >= a.min(b) {
            return Err(Error::ConstraintViolation(format!(
                "family I needs c < min{{a, b}} (c = {c}, min = {})",
                a.min(b)
            )));
        }
        let p = GroupParams {
            a,
            b,
            c,
            r: (1u64 << d) + 1,
            family: Family::I,
            d,
            e: None,
        };
        p.check_congruences()?;
        Ok(p)
    }

    /// `H_II(a,b,e) = H(2^a, 2^b; 2^{a-1}, 2^e - 1)`.
    pub fn family_ii(a: u32, b: u32, e: u32) -> Result<Self> {
        if b == 1 && e == a {
            return Err(Error::FamilyIII { a });
        }
        check_size(a, b)?;
        let lo = 1.max(a.saturating_sub(b));
        if e <= lo {
            return Err(Error::ConstraintViolation(format!(
                "family II needs max{{1, a-b}} < e (max = {lo}, e = {e})"
            )));
        }
        if e >= a.min(b) {
            return Err(Error::ConstraintViolation(format!(
                "family II needs e < min{{a, b}} (e = {e}, min = {})",
                a.min(b)
            )));
        }
        let p = GroupParams {
            a,
            b,
            c: a - 1,
            r: (1u64 << e) - 1,
            family: Family::II,
            d: 1,
            e: Some(e),
        };
        p.check_congruences()?;
        Ok(p)
    }

    /// Any `H(2^a, 2^b; 2^c, r)` with `r^{2^b} = 2^c (r-1) = 0 mod 2^a`
    /// (the first congruence read as `r^{2^b} = 1`). Recognized family I/II
    /// shapes are tagged as such; everything else is `Unclassified`.
    pub fn general(a: u32, b: u32, c: u32, r: i64) -> Result<Self> {
        check_size(a, b)?;
        if a == 0 || b == 0 {
            return Err(Error::ConstraintViolation("need a, b >= 1".into()));
        }
        if c > a {
            return Err(Error::ConstraintViolation(format!(
                "need c <= a (c = {c}, a = {a})"
            )));
        }
        let r = Residue::reduce_i128(r as i128, a).value();
        let rm1 = Residue::from_u64(r.wrapping_sub(1), a);
        let d = rm1.valuation().finite().unwrap_or(a);
        if d >= 2 && r == (1u64 << d) + 1 {
            if let Ok(p) = Self::family_i(a, b, c, d) {
                return Ok(p);
            }
        }
        if c + 1 == a {
            let e = (r + 1).trailing_zeros();
            if r + 1 == 1u64 << e {
                if let Ok(p) = Self::family_ii(a, b, e) {
                    return Ok(p);
                }
            }
        }
        let p = GroupParams {
            a,
            b,
            c,
            r,
            family: Family::Unclassified,
            d,
            e: None,
        };
        p.check_congruences()?;
        Ok(p)
    }

    fn check_congruences(&self) -> Result<()> {
        let r = Residue::from_u64(self.r, self.a);
        if !r.is_unit() {
            return Err(Error::ConstraintViolation(format!(
                "r = {} must be odd",
                self.r
            )));
        }
        // r^{2^b}: square b times
        let mut s = r;
        for _ in 0..self.b {
            s = s * s;
        }
        if s.value() != Residue::one(self.a).value() {
            return Err(Error::ConstraintViolation(format!(
                "r^(2^b) = 1 mod 2^a fails for r = {}",
                self.r
            )));
        }
        let t = (r - Residue::one(self.a)).valuation();
        if !t.is_at_least(self.a.saturating_sub(self.c)) {
            return Err(Error::ConstraintViolation(format!(
                "2^c (r-1) = 0 mod 2^a fails for c = {}, r = {}",
                self.c, self.r
            )));
        }
        Ok(())
    }

    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn b(&self) -> u32 {
        self.b
    }
    pub fn c(&self) -> u32 {
        self.c
    }
    /// `‖r - 1‖`; equals 1 in family II.
    pub fn d(&self) -> u32 {
        self.d
    }
    /// Family II parameter with `r = 2^e - 1`.
    pub fn e(&self) -> Option<u32> {
        self.e
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn is_classified(&self) -> bool {
        self.family != Family::Unclassified
    }

    /// `f = min{a, b}`.
    pub fn f(&self) -> u32 {
        self.a.min(self.b)
    }

    /// `z = -1` if `b < a`, else `0`.
    pub fn z(&self) -> i64 {
        if self.b < self.a {
            -1
        } else {
            0
        }
    }

    /// `w = -(1 + 2^{d-1})^{-1}`, reduced in the y-slot ring `Z/2^{a+d-c}`.
    /// Family I only.
    pub fn w(&self) -> Option<Residue> {
        if self.family != Family::I {
            return None;
        }
        let bits = self.y_bits();
        let t = Residue::from_u64(1 + (1u64 << (self.d - 1)), bits);
        Some(-arith2::inv_unit(t).expect("1 + 2^(d-1) is odd for d > 1"))
    }

    /// Bit width of the `y` coordinate of an automorphism quadruple.
    pub fn y_bits(&self) -> u32 {
        self.a + self.d - self.c
    }

    /// Bit width of the `y2` coordinate; `2^{a+b-c}` is the order of β.
    pub fn y2_bits(&self) -> u32 {
        self.a + self.b - self.c
    }

    /// `log2 |H| = a + b`.
    pub fn order_bits(&self) -> u32 {
        self.a + self.b
    }

    pub fn r_residue(&self) -> Residue {
        Residue::from_u64(self.r, self.a)
    }

    /// `r^{k mod 2^b}` in `Z/2^a`.
    pub fn r_pow(&self, k: i64) -> Residue {
        arith2::pow_red(self.r_residue(), k, self.b)
    }

    fn r_pow_u(&self, v: u64) -> Residue {
        self.r_residue().pow(v & ((1u64 << self.b) - 1))
    }

    fn alpha_mask(&self) -> u64 {
        (1u64 << self.a) - 1
    }

    fn beta_mask(&self) -> u64 {
        (1u64 << self.b) - 1
    }

    // ---- elements ----

    pub fn identity(&self) -> Element {
        Element { u: 0, v: 0 }
    }

    pub fn alpha(&self) -> Element {
        self.element(1, 0)
    }

    pub fn beta(&self) -> Element {
        self.element(0, 1)
    }

    /// `α^u β^v` with `u` reduced mod `2^a` and `v` mod `2^b`.
    pub fn element(&self, u: i64, v: i64) -> Element {
        Element {
            u: (u as u64) & self.alpha_mask(),
            v: (v as u64) & self.beta_mask(),
        }
    }

    pub fn alpha_pow(&self, x: Residue) -> Element {
        Element {
            u: x.value() & self.alpha_mask(),
            v: 0,
        }
    }

    /// The group power `β^w` for any `w >= 0`; exponents past `2^b` carry
    /// into `α^{2^c}`.
    pub fn beta_pow(&self, w: u128) -> Element {
        let w = w & ((1u128 << self.y2_bits()) - 1);
        let carry = (w >> self.b) as u64;
        Element {
            u: (carry << self.c) & self.alpha_mask(),
            v: (w as u64) & self.beta_mask(),
        }
    }

    /// `(α^{u1}β^{v1})(α^{u2}β^{v2}) = α^{u1 + u2 r^{v1}} β^{v1+v2}`.
    pub fn mul(&self, g: Element, h: Element) -> Element {
        let twist = self.r_pow_u(g.v).value() as u128;
        let mut u = g.u as u128 + (h.u as u128) * twist;
        let mut v = g.v + h.v;
        if v > self.beta_mask() {
            v -= 1u64 << self.b;
            u += 1u128 << self.c;
        }
        Element {
            u: (u as u64) & self.alpha_mask(),
            v,
        }
    }

    /// `(α^u β^v)^k = α^{u [k; r^v] + 2^c ⌊vk / 2^b⌋} β^{vk mod 2^b}` for
    /// `k >= 0`; negative `k` goes through the inverse.
    pub fn pow(&self, g: Element, k: i64) -> Element {
        if k < 0 {
            return self.pow_u(self.inv(g), k.unsigned_abs());
        }
        self.pow_u(g, k as u64)
    }

    pub fn pow_u(&self, g: Element, k: u64) -> Element {
        let sum = geom_sum(k, self.r_pow_u(g.v));
        let vk = (g.v as u128) * (k as u128);
        let carry = Residue::reduce_i128(((vk >> self.b) as i128) << self.c, self.a);
        let u = Residue::from_u64(g.u, self.a) * sum + carry;
        Element {
            u: u.value(),
            v: (vk as u64) & self.beta_mask(),
        }
    }

    pub fn inv(&self, g: Element) -> Element {
        if g.v == 0 {
            return self.element(-(g.u as i64), 0);
        }
        // (u,v)(x, 2^b - v) = (u + x r^v + 2^c, 0)
        let rinv = self.r_pow(-(g.v as i64));
        let t = Residue::from_u64(g.u, self.a) + Residue::from_u64(1u64 << self.c, self.a);
        let x = -(t * rinv);
        Element {
            u: x.value(),
            v: (1u64 << self.b) - g.v,
        }
    }

    /// Least `k >= 1` with `g^k = 1`; always a power of two.
    pub fn order_of(&self, g: Element) -> u64 {
        let mut k = 1u64;
        let mut x = g;
        while !x.is_identity() {
            x = self.mul(x, x);
            k <<= 1;
        }
        k
    }

    /// All `2^{a+b}` elements, `u` ascending then `v` ascending.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let nv = 1u64 << self.b;
        (0..1u64 << self.a).flat_map(move |u| (0..nv).map(move |v| Element { u, v }))
    }

    /// [`elements`](Self::elements) behind the enumeration cap.
    pub fn enumerate(&self, max_bits: u32) -> Result<impl Iterator<Item = Element> + '_> {
        if self.order_bits() > max_bits {
            return Err(Error::CapExceeded {
                needed: self.order_bits(),
                cap: max_bits,
            });
        }
        Ok(self.elements())
    }

    /// Dense index `u 2^b + v`, matching the order of [`elements`](Self::elements).
    pub fn index_of(&self, g: Element) -> usize {
        ((g.u << self.b) | g.v) as usize
    }

    /// Parses `a^u*b^v` (also `a^u`, `b^v`, `1`), reducing the exponents.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let word: ElementWord = s.parse()?;
        Ok(self.element_from_word(word))
    }

    fn element_from_word(&self, w: ElementWord) -> Element {
        Element {
            u: (w.u & (self.alpha_mask() as u128)) as u64,
            v: (w.v & (self.beta_mask() as u128)) as u64,
        }
    }

    /// The parameter string this group was built from, e.g. `I:4,4,3,2`.
    pub fn spec_string(&self) -> String {
        self.to_string()
    }
}

fn check_size(a: u32, b: u32) -> Result<()> {
    if a + b > MAX_BITS {
        return Err(Error::ModulusTooLarge { bits: a + b });
    }
    Ok(())
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I => write!(f, "I:{},{},{},{}", self.a, self.b, self.c, self.d),
            Family::II => write!(f, "II:{},{},{}", self.a, self.b, self.e.unwrap()),
            Family::Unclassified => write!(f, "H:{},{},{},{}", self.a, self.b, self.c, self.r),
        }
    }
}

/// `I:a,b,c,d`, `II:a,b,e`, `III:a` (rejected) or `H:a,b,c,r`.
impl FromStr for GroupParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, rest) = s.split_once(':').ok_or_else(|| {
            Error::Parse(format!("expected `I:a,b,c,d` or `II:a,b,e`, got `{s}`"))
        })?;
        let nums = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "`{tag}:` takes {n} integers, got {}",
                    nums.len()
                )))
            }
        };
        let pos = |x: i64| -> Result<u32> {
            u32::try_from(x)
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::Parse(format!("parameters must be positive, got {x}")))
        };
        match tag.trim() {
            "I" => {
                arity(4)?;
                GroupParams::family_i(pos(nums[0])?, pos(nums[1])?, pos(nums[2])?, pos(nums[3])?)
            }
            "II" => {
                arity(3)?;
                GroupParams::family_ii(pos(nums[0])?, pos(nums[1])?, pos(nums[2])?)
            }
            "III" => {
                arity(1)?;
                Err(Error::FamilyIII { a: pos(nums[0])? })
            }
            "H" => {
                arity(4)?;
                GroupParams::general(pos(nums[0])?, pos(nums[1])?, pos(nums[2])?, nums[3])
            }
            other => Err(Error::Parse(format!("unknown family tag `{other}`"))),
        }
    }
}

/// Normal form `α^u β^v`. Coordinates are reduced by the owning
/// [`GroupParams`]; equality is componentwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub(crate) u: u64,
    pub(crate) v: u64,
}

impl Element {
    /// α-exponent.
    pub fn u(self) -> u64 {
        self.u
    }

    /// β-exponent.
    pub fn v(self) -> u64 {
        self.v
    }

    pub fn is_identity(self) -> bool {
        self.u == 0 && self.v == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{}*b^{}", self.u, self.v)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

/// Unreduced exponents from the `a^u*b^v` syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ElementWord {
    u: u128,
    v: u128,
}

impl FromStr for ElementWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected `a^u*b^v`, got `{s}`"));
        if s == "1" || s == "e" {
            return Ok(ElementWord { u: 0, v: 0 });
        }
        let mut word = ElementWord { u: 0, v: 0 };
        let mut seen_b = false;
        for (i, factor) in s.split('*').enumerate() {
            let (base, exp) = match factor.trim().split_once('^') {
                Some((base, exp)) => (base.trim(), exp.trim().parse::<u128>().map_err(|_| bad())?),
                None => (factor.trim(), 1),
            };
            match base {
                "a" if i == 0 => word.u = exp,
                "b" if !seen_b && i <= 1 => {
                    word.v = exp;
                    seen_b = true;
                }
                _ => return Err(bad()),
            }
        }
        if s.split('*').count() > 2 {
            return Err(bad());
        }
        Ok(word)
    }
}
