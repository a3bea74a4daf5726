//! Prime-field arithmetic.
//!
//! Elements carry their modulus so that the usual operator overloads work
//! without threading a context through every expression. Mixing elements
//! of different fields is a logic error and is caught by debug assertions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues must fit in a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// An element of `F_p`, stored as its canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Reduces `value` modulo `modulus`.
    #[inline]
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m);
        Fp {
            value: v as u64,
            modulus,
        }
    }

    #[inline]
    pub fn zero(modulus: u64) -> Self {
        Fp { value: 0, modulus }
    }

    #[inline]
    pub fn one(modulus: u64) -> Self {
        Fp::new(1, modulus)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1 % self.modulus
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self;
        let mut k = 1;
        while !acc.is_one() {
            acc *= self;
            k += 1;
        }
        Some(k)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        Fp {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value * rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl AddAssign for Fp {
    #[inline]
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    #[inline]
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    #[inline]
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `p > n`, additionally with `p ≡ 1 (mod n)` when
/// `need_root` is set so that `F_p` contains a primitive `n`-th root of unity.
pub fn find_prime(n: u64, need_root: bool) -> u64 {
    let mut p = n + 1;
    loop {
        if is_prime(p) && (!need_root || (p - 1).is_multiple_of(n)) {
            return p;
        }
        p += 1;
    }
}

/// Smallest residue of multiplicative order exactly `n` in `F_p`.
pub fn primitive_root_of_unity(p: u64, n: u64) -> Result<Fp> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || !(p - 1).is_multiple_of(n) {
        return Err(Error::NoRootOfUnity { p, n });
    }
    (1..p)
        .map(|v| Fp::new(v, p))
        .find(|x| x.order() == Some(n))
        .ok_or(Error::NoRootOfUnity { p, n })
}

/// A prime field together with the matrix size it serves and, optionally,
/// a distinguished primitive `n`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    n: usize,
    q: Option<Fp>,
}

impl FieldCtx {
    /// Field of characteristic `p` for `n x n` matrices; requires `p` prime
    /// and `p > n`.
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "matrix size must be positive".into(),
            ));
        }
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::NotPrime(p));
        }
        if p <= n as u64 {
            return Err(Error::CharacteristicTooSmall { p, n });
        }
        Ok(FieldCtx { p, n, q: None })
    }

    /// Same as [`FieldCtx::new`] and attaches the smallest primitive
    /// `n`-th root of unity.
    pub fn with_root(p: u64, n: usize) -> Result<Self> {
        let q = primitive_root_of_unity(p, n as u64)?;
        Self::with_given_root(p, n, q.value())
    }

    /// Attaches a caller-chosen root, validating its order.
    pub fn with_given_root(p: u64, n: usize, q: u64) -> Result<Self> {
        let mut ctx = Self::new(p, n)?;
        let q = Fp::new(q, p);
        if q.order() != Some(n as u64) {
            return Err(Error::NotPrimitiveRoot {
                q: q.value(),
                n: n as u64,
                p,
            });
        }
        ctx.q = Some(q);
        Ok(ctx)
    }

    /// Smallest qualifying prime for `n`, without a root.
    pub fn default_for(n: usize) -> Result<Self> {
        Self::new(find_prime(n as u64, false), n)
    }

    /// Smallest prime with a primitive `n`-th root, with its smallest root.
    pub fn default_with_root(n: usize) -> Result<Self> {
        Self::with_root(find_prime(n as u64, true), n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Option<Fp> {
        self.q
    }

    #[inline]
    pub fn elem(&self, v: u64) -> Fp {
        Fp::new(v, self.p)
    }

    #[inline]
    pub fn from_i64(&self, v: i64) -> Fp {
        Fp::from_i64(v, self.p)
    }

    #[inline]
    pub fn zero(&self) -> Fp {
        Fp::zero(self.p)
    }

    #[inline]
    pub fn one(&self) -> Fp {
        Fp::one(self.p)
    }
}
