//! The Bachet curve y^2 = x^3 + a^3, its points, the affine group law,
//! and the exact-rational duplication formula for y^2 - x^3 = c.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Factorization, FieldElement, Prime};

/// Full point enumeration is allowed up to this p; it commits O(p) memory
/// for the square-root table. Beyond it only counting and randomized
/// structure paths apply.
pub const ENUMERATION_BOUND: u64 = 50_000;

/// The curve y^2 = x^3 + a^3 over F_p with a != 0.
///
/// This is the short Weierstrass shape with A = 0 and B = a^3; a != 0
/// keeps the discriminant -16(27 B^2) nonzero, so the curve is smooth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BachetCurve {
    prime: Prime,
    a: FieldElement,
    a_cubed: FieldElement,
}

impl BachetCurve {
    pub fn new(prime: Prime, a: u64) -> Result<Self> {
        let a = FieldElement::new(a, prime);
        if a.is_zero() {
            return Err(Error::ZeroCurveCoefficient { p: prime.value() });
        }
        Ok(BachetCurve {
            prime,
            a,
            a_cubed: a.cube(),
        })
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn a(self) -> FieldElement {
        self.a
    }

    /// The constant term B = a^3 of the curve equation.
    #[inline]
    pub fn a_cubed(self) -> FieldElement {
        self.a_cubed
    }

    /// Right-hand side x^3 + a^3 of the curve equation.
    #[inline]
    pub fn rhs_at(self, x: FieldElement) -> FieldElement {
        x.cube() + self.a_cubed
    }

    /// The identity element o.
    #[inline]
    pub fn infinity(self) -> Point {
        Point {
            curve: self,
            coords: None,
        }
    }

    /// An affine point, validated against the curve equation. Invalid
    /// coordinates are a hard error, never a representable state.
    pub fn point(self, x: FieldElement, y: FieldElement) -> Result<Point> {
        if y.square() != self.rhs_at(x) {
            return Err(Error::PointNotOnCurve {
                p: self.prime.value(),
                b: self.a_cubed.value(),
                x: x.value(),
                y: y.value(),
            });
        }
        Ok(Point {
            curve: self,
            coords: Some((x, y)),
        })
    }

    /// o followed by every affine point in lexicographic (x, y) order.
    /// Requires p within [`ENUMERATION_BOUND`].
    pub fn enumerate_points(self) -> Result<Vec<Point>> {
        let p = self.prime.value();
        if p > ENUMERATION_BOUND {
            return Err(Error::EnumerationBoundExceeded {
                p,
                bound: ENUMERATION_BOUND,
            });
        }
        // y^2 table in flat arrays: each u has at most two roots, pushed in
        // ascending y order because y < p - y for y < p/2.
        let mut root_count = vec![0u8; p as usize];
        let mut roots = vec![[0u64; 2]; p as usize];
        for y in 0..p {
            let u = (y as u128 * y as u128 % p as u128) as usize;
            roots[u][root_count[u] as usize] = y;
            root_count[u] += 1;
        }
        let mut points = vec![self.infinity()];
        for x in 0..p {
            let xe = FieldElement::new(x, self.prime);
            let u = self.rhs_at(xe).value() as usize;
            for &y in &roots[u][..root_count[u] as usize] {
                points.push(Point {
                    curve: self,
                    coords: Some((xe, FieldElement::new(y, self.prime))),
                });
            }
        }
        Ok(points)
    }
}

impl fmt::Display for BachetCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {}^3 over F_{}", self.a, self.prime)
    }
}

/// A rational point: the identity o, or an affine (x, y) on its curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    curve: BachetCurve,
    coords: Option<(FieldElement, FieldElement)>,
}

impl Point {
    #[inline]
    pub fn curve(self) -> BachetCurve {
        self.curve
    }

    #[inline]
    pub fn is_infinity(self) -> bool {
        self.coords.is_none()
    }

    /// Affine coordinates, None for o.
    #[inline]
    pub fn coords(self) -> Option<(FieldElement, FieldElement)> {
        self.coords
    }

    /// -o = o and -(x, y) = (x, -y).
    pub fn negate(self) -> Point {
        Point {
            curve: self.curve,
            coords: self.coords.map(|(x, y)| (x, -y)),
        }
    }

    /// k-fold sum by double-and-add; 0*P = o.
    pub fn scalar_mul(self, k: u64) -> Point {
        let mut acc = self.curve.infinity();
        let mut base = self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base;
            }
            base = base + base;
            k >>= 1;
        }
        acc
    }

    /// Least k >= 1 with k*P = o, given the factored group order N.
    ///
    /// Starts from k = N and strips prime factors while the product keeps
    /// annihilating P. Errors if N*P != o, which means the claimed order
    /// is wrong for this curve.
    pub fn order(self, group_order: &Factorization) -> Result<u64> {
        let n = group_order.value();
        if !self.scalar_mul(n).is_infinity() {
            return Err(Error::InconsistentGroupOrder { claimed: n });
        }
        let mut k = n;
        for &(q, e) in group_order.factors() {
            for _ in 0..e {
                if k.is_multiple_of(q) && self.scalar_mul(k / q).is_infinity() {
                    k /= q;
                } else {
                    break;
                }
            }
        }
        Ok(k)
    }
}

/// The chord-and-tangent group law.
///
/// Cases: identity absorption; P + (-P) = o when x1 = x2 and y1 + y2 = 0
/// (this covers doubling a 2-torsion point (x, 0)); tangent slope
/// m = 3x^2 / 2y for doubling; chord slope m = (y2 - y1) / (x2 - x1)
/// otherwise. Then x3 = m^2 - x1 - x2 and y3 = m(x1 - x3) - y1.
///
/// Panics if the points live on different curves.
impl Add for Point {
    type Output = Point;

    fn add(self, rhs: Point) -> Point {
        assert_eq!(
            self.curve, rhs.curve,
            "points from different curves never combine"
        );
        let (x1, y1) = match self.coords {
            None => return rhs,
            Some(c) => c,
        };
        let (x2, y2) = match rhs.coords {
            None => return self,
            Some(c) => c,
        };
        if x1 == x2 && (y1 + y2).is_zero() {
            return self.curve.infinity();
        }
        let m = if x1 == x2 {
            // doubling; y1 != 0 here, else the branch above caught it
            let three = self.curve.prime.element(3);
            let two = self.curve.prime.element(2);
            (three * x1.square()) * (two * y1).inv().expect("y1 != 0")
        } else {
            (y2 - y1) * (x2 - x1).inv().expect("x1 != x2")
        };
        let x3 = m.square() - x1 - x2;
        let y3 = m * (x1 - x3) - y1;
        debug_assert!(y3.square() == self.curve.rhs_at(x3), "closure violated");
        Point {
            curve: self.curve,
            coords: Some((x3, y3)),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords {
            None => write!(f, "o"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

/// An exact rational solution of y^2 - x^3 = c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSolution {
    x: BigRational,
    y: BigRational,
    c: BigInt,
}

impl RationalSolution {
    /// Validates y^2 - x^3 = c exactly.
    pub fn new(x: BigRational, y: BigRational, c: BigInt) -> Result<Self> {
        let lhs = y.pow(2) - x.pow(3);
        if lhs != BigRational::from_integer(c.clone()) {
            return Err(Error::NotASolution);
        }
        Ok(RationalSolution { x, y, c })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(x: i64, y: i64, c: i64) -> Result<Self> {
        RationalSolution::new(
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
            c.into(),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// The duplication map
    /// ((x^4 - 8cx) / 4y^2, (-x^6 - 20cx^3 + 8c^2) / 8y^3),
    /// which carries a solution of y^2 - x^3 = c to another one. The
    /// coordinates grow fast, hence exact rationals throughout. Undefined
    /// when y = 0.
    pub fn duplicate(&self) -> Result<RationalSolution> {
        if self.y.is_zero() {
            return Err(Error::DuplicationUndefined);
        }
        let c = BigRational::from_integer(self.c.clone());
        let x = &self.x;
        let y = &self.y;
        let eight = BigRational::from_integer(8.into());
        let four = BigRational::from_integer(4.into());
        let twenty = BigRational::from_integer(20.into());
        let x2 = x * x;
        let x3 = &x2 * x;
        let x4 = &x2 * &x2;
        let y2 = y * y;
        let y3 = &y2 * y;
        let new_x = (&x4 - &eight * &c * x) / (&four * &y2);
        let new_y = (-(&x3 * &x3) - &twenty * &c * &x3 + &eight * &c * &c) / (&eight * &y3);
        // reconstruct through the validating constructor; BigRational keeps
        // everything in lowest terms
        RationalSolution::new(new_x, new_y, self.c.clone())
    }
}

impl fmt::Display for RationalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on y^2 - x^3 = {}", self.x, self.y, self.c)
    }
}

/// Digits of a rational for display without sign surprises.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // num-rational keeps denominators positive; belt and braces
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
