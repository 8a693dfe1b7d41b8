//! Arithmetic in the prime field F_p: canonical residues, the quadratic
//! character, square and cube roots, prime generation, and factoring.
//!
//! Everything is sized for desk-scale moduli (p comfortably below 2^32);
//! intermediate products go through u128 so no operation can overflow.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic primality by trial division up to sqrt(n).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An odd prime p > 3, the field characteristic.
///
/// Verified at construction; a `Prime` in hand is proof of primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::PrimeTooSmall(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    /// Canonical residue of a (possibly negative) integer.
    #[inline]
    pub fn element(self, v: i64) -> FieldElement {
        let p = self.0 as i64;
        FieldElement {
            value: v.rem_euclid(p) as u64,
            modulus: self,
        }
    }

    /// All field elements in ascending order, 0 to p-1.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |v| FieldElement {
            value: v,
            modulus: self,
        })
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical residue in F_p; the invariant 0 <= value < p holds at all times.
///
/// Elements of different fields never combine: arithmetic between mismatched
/// moduli is a bug in the caller and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: Prime,
}

impl FieldElement {
    pub fn new(value: u64, modulus: Prime) -> Self {
        FieldElement {
            value: value % modulus.value(),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    fn require_same_field(self, rhs: FieldElement) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "field elements with different moduli never combine"
        );
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(self, mut exp: u64) -> FieldElement {
        let p = self.modulus.value() as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        FieldElement {
            value: acc as u64,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by Fermat: u^(p-2). Zero has none.
    pub fn inv(self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus.value() - 2))
    }

    #[inline]
    pub fn square(self) -> FieldElement {
        self * self
    }

    #[inline]
    pub fn cube(self) -> FieldElement {
        self * self * self
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        let p = self.modulus.value();
        let mut s = self.value + rhs.value;
        if s >= p {
            s -= p;
        }
        FieldElement {
            value: s,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        let p = self.modulus.value();
        let s = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            p - (rhs.value - self.value)
        };
        FieldElement {
            value: s,
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        let p = self.modulus.value() as u128;
        FieldElement {
            value: (self.value as u128 * rhs.value as u128 % p) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.modulus.value();
        FieldElement {
            value: if self.value == 0 { 0 } else { p - self.value },
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Value of the quadratic character: -1, 0, or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chi {
    NonResidue,
    Zero,
    Residue,
}

impl Chi {
    #[inline]
    pub fn value(self) -> i64 {
        match self {
            Chi::NonResidue => -1,
            Chi::Zero => 0,
            Chi::Residue => 1,
        }
    }
}

impl Mul for Chi {
    type Output = Chi;
    fn mul(self, rhs: Chi) -> Chi {
        match self.value() * rhs.value() {
            -1 => Chi::NonResidue,
            0 => Chi::Zero,
            _ => Chi::Residue,
        }
    }
}

/// Quadratic character of u by Euler's criterion: u^((p-1)/2).
///
/// The number of y with y^2 = u is exactly 1 + chi(u).
pub fn chi(u: FieldElement) -> Chi {
    if u.is_zero() {
        return Chi::Zero;
    }
    let p = u.modulus().value();
    let r = u.pow((p - 1) / 2);
    if r.value() == 1 {
        Chi::Residue
    } else {
        Chi::NonResidue
    }
}

/// The set {y : y^2 = u}, smaller residue first. Size is 1 + chi(u).
///
/// Uses the exponent shortcut for p = 3 (mod 4) and Tonelli-Shanks
/// otherwise; the whole-curve enumeration path builds a y^2 table instead
/// and the two must agree (tested).
pub fn sqrt_mod(u: FieldElement) -> Vec<FieldElement> {
    let p = u.modulus().value();
    if u.is_zero() {
        return vec![u];
    }
    if chi(u) != Chi::Residue {
        return Vec::new();
    }
    let root = if p % 4 == 3 {
        u.pow((p + 1) / 4)
    } else {
        tonelli_shanks(u)
    };
    debug_assert_eq!(root.square(), u);
    let other = -root;
    let mut roots = [root, other];
    roots.sort();
    vec![roots[0], roots[1]]
}

/// Tonelli-Shanks for p = 1 (mod 4). Caller guarantees chi(u) = +1.
fn tonelli_shanks(u: FieldElement) -> FieldElement {
    let modulus = u.modulus();
    let p = modulus.value();
    // p - 1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = smallest_nonresidue(modulus);
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = u.pow(q);
    let mut r = u.pow(q.div_ceil(2));
    loop {
        if t.value() == 1 {
            return r;
        }
        // least i with t^(2^i) = 1
        let mut i = 0u32;
        let mut t2 = t;
        while t2.value() != 1 {
            t2 = t2.square();
            i += 1;
        }
        let b = c.pow(1u64 << (m - i - 1));
        m = i;
        c = b.square();
        t = t * c;
        r = r * b;
    }
}

/// All x with x^3 = u, ascending. Exhaustive scan; adequate at desk scale.
///
/// For u != 0 the size is 3 or 0 when p = 1 (mod 3) and exactly 1 when
/// p = 2 (mod 3); u = 0 has the single root 0.
pub fn cube_roots(u: FieldElement) -> Vec<FieldElement> {
    let p = u.modulus();
    p.elements().filter(|x| x.cube() == u).collect()
}

/// Least g >= 2 with chi(g) = -1. Always exists for an odd prime.
pub fn smallest_nonresidue(p: Prime) -> FieldElement {
    for g in 2..p.value() {
        let e = FieldElement::new(g, p);
        if chi(e) == Chi::NonResidue {
            return e;
        }
    }
    unreachable!("every odd prime field has a non-residue")
}

/// All primes 5 <= p <= bound with p = residue (mod modulus), ascending.
/// Modulus 1 means every prime. Sieve of Eratosthenes.
pub fn primes_in_class(bound: u64, residue: u64, modulus: u64) -> Result<Vec<Prime>> {
    if bound < 5 {
        return Err(Error::BoundTooSmall { bound, min: 5 });
    }
    if !matches!(modulus, 1 | 6 | 12) || (modulus > 1 && gcd(residue % modulus, modulus) != 1) {
        return Err(Error::InvalidResidueClass { residue, modulus });
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for q in 2..=n {
        if composite[q] {
            continue;
        }
        let mut k = q * q;
        while k <= n {
            composite[k] = true;
            k += q;
        }
        let q = q as u64;
        if q >= 5 && (modulus == 1 || q % modulus == residue % modulus) {
            primes.push(Prime(q));
        }
    }
    Ok(primes)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Factor n by trial division.
    pub fn of(n: u64) -> Self {
        assert!(n > 0, "cannot factor zero");
        let mut m = n;
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d * d <= m {
            if m.is_multiple_of(d) {
                let mut e = 0u32;
                while m.is_multiple_of(d) {
                    m /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Factorization { value: n, factors }
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    /// (prime, exponent) pairs in ascending prime order.
    #[inline]
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }
}
