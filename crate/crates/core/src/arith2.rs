//! Arithmetic in the residue rings `Z/2^k`.
//!
//! Everything in this crate bottoms out here: group elements, automorphism
//! coordinates, and the congruence checks are all residues modulo a power of
//! two. Products of two reduced residues are formed in `u128`, which is why
//! the bit width is capped at [`MAX_BITS`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus exponent.
pub const MAX_BITS: u32 = 62;

#[inline]
fn mask(bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        (1u64 << bits) - 1
    }
}

/// 2-adic valuation of an integer; `Infinite` stands for the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_at_least(self, s: u32) -> bool {
        self >= Valuation::Finite(s)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(s) => Some(s),
            Valuation::Infinite => None,
        }
    }
}

impl PartialEq<u32> for Valuation {
    fn eq(&self, other: &u32) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<u32> for Valuation {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(s) => write!(f, "{s}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `s` with `2^s | u`.
pub fn val2(u: i128) -> Valuation {
    if u == 0 {
        Valuation::Infinite
    } else {
        Valuation::Finite(u.trailing_zeros())
    }
}

/// An element of `Z/2^k`, always stored fully reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    bits: u32,
}

impl Residue {
    /// Reduces an arbitrary (possibly negative) integer into `[0, 2^bits)`.
    pub fn new(value: i128, bits: u32) -> Result<Self> {
        if bits > MAX_BITS {
            return Err(Error::ModulusTooLarge { bits });
        }
        Ok(Self::reduce_i128(value, bits))
    }

    pub(crate) fn reduce_i128(value: i128, bits: u32) -> Self {
        debug_assert!(bits <= MAX_BITS);
        Residue {
            value: (value as u64) & mask(bits),
            bits,
        }
    }

    pub(crate) fn from_u64(value: u64, bits: u32) -> Self {
        debug_assert!(bits <= MAX_BITS);
        Residue {
            value: value & mask(bits),
            bits,
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_u64(0, bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_u64(1, bits)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// The representative in `(-2^{k-1}, 2^{k-1}]`.
    pub fn signed(self) -> i64 {
        if self.bits > 0 && self.value > (1u64 << (self.bits - 1)) {
            self.value as i64 - (1i64 << self.bits)
        } else {
            self.value as i64
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        self.bits == 0 || self.value & 1 == 1
    }

    pub fn valuation(self) -> Valuation {
        if self.value == 0 {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.value.trailing_zeros())
        }
    }

    /// Image under `Z/2^k -> Z/2^j`, `j <= k`.
    pub fn reduce(self, bits: u32) -> Self {
        assert!(
            bits <= self.bits,
            "cannot reduce 2^{} to 2^{bits}",
            self.bits
        );
        Self::from_u64(self.value, bits)
    }

    /// Same representative, read in a larger ring.
    pub fn lift(self, bits: u32) -> Result<Self> {
        if bits > MAX_BITS {
            return Err(Error::ModulusTooLarge { bits });
        }
        assert!(bits >= self.bits, "cannot lift 2^{} to 2^{bits}", self.bits);
        Ok(Residue {
            value: self.value,
            bits,
        })
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Residue::one(self.bits);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self> {
        inv_unit(self)
    }

    fn check_same(self, other: Self) {
        assert_eq!(
            self.bits, other.bits,
            "mixing residues mod 2^{} and 2^{}",
            self.bits, other.bits
        );
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.bits)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        Residue::from_u64(self.value.wrapping_add(rhs.value), self.bits)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        Residue::from_u64(self.value.wrapping_sub(rhs.value), self.bits)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let p = (self.value as u128) * (rhs.value as u128);
        Residue::from_u64(p as u64, self.bits)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::from_u64(self.value.wrapping_neg(), self.bits)
    }
}

/// The geometric sum `[len; ratio] = 1 + ratio + ... + ratio^{len-1}` with an
/// unreduced length.
///
/// Uses `[2m; s] = [m; s](1 + s^m)` and `[2m+1; s] = [2m; s] s + 1`, walking
/// the bits of `len` from the top.
pub fn geom_sum(len: u64, ratio: Residue) -> Residue {
    let bits = ratio.bits();
    let one = Residue::one(bits);
    let mut sum = Residue::zero(bits);
    let mut pw = one;
    if len == 0 {
        return sum;
    }
    for i in (0..64 - len.leading_zeros()).rev() {
        sum = sum * (one + pw);
        pw = pw * pw;
        if (len >> i) & 1 == 1 {
            sum = sum * ratio + one;
            pw = pw * ratio;
        }
    }
    sum
}

/// `[v; s]` mod `2^k` under the exponent convention: `v` is first reduced to
/// `[0, 2^b)`.
pub fn bracket(v: i64, s: i64, k: u32, b: u32) -> Result<Residue> {
    if k > MAX_BITS {
        return Err(Error::ModulusTooLarge { bits: k });
    }
    if b > MAX_BITS {
        return Err(Error::ModulusTooLarge { bits: b });
    }
    let len = Residue::reduce_i128(v as i128, b).value();
    Ok(geom_sum(len, Residue::reduce_i128(s as i128, k)))
}

/// `r^{k mod 2^b}`; negative exponents are reduced first.
pub fn pow_red(r: Residue, kexp: i64, b: u32) -> Residue {
    let e = Residue::reduce_i128(kexp as i128, b).value();
    r.pow(e)
}

/// Inverse of an odd residue by Newton iteration `y <- y(2 - xy)`.
pub fn inv_unit(x: Residue) -> Result<Residue> {
    if !x.is_unit() {
        return Err(Error::NotAUnit {
            value: x.value(),
            bits: x.bits(),
        });
    }
    let bits = x.bits();
    let two = Residue::from_u64(2, bits);
    // x*x = 1 mod 8, so x is its own inverse to 3 bits.
    let mut y = x;
    let mut precision = 3;
    while precision < bits {
        y = y * (two - x * y);
        precision *= 2;
    }
    debug_assert!((x * y).value() == Residue::one(bits).value());
    Ok(y)
}
