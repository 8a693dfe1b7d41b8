//! Point counting: the character-sum formula N = p + 1 + sum chi(x^3 + a^3),
//! the enumeration cross-check, the trace b = p + 1 - N, the sum
//! chi(x^3 + 1), and quadratic-twist pairing.

use std::fmt;

use crate::curve::BachetCurve;
use crate::error::{Error, Result};
use crate::field::{chi, smallest_nonresidue, Chi, FieldElement, Prime};

/// Order and trace data for one curve: N, b = p + 1 - N, t = |b|.
///
/// The trace is stored signed; t is always derived. Construction asserts
/// the Hasse bound b^2 <= 4p, whose failure would mean the count itself
/// is broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveCount {
    order: u64,
    trace: i64,
}

impl CurveCount {
    pub fn new(p: Prime, order: u64) -> Self {
        let trace = p.value() as i64 + 1 - order as i64;
        assert!(
            trace * trace <= 4 * p.value() as i64,
            "Hasse bound violated: N = {order} at p = {p}; counting is broken"
        );
        CurveCount { order, trace }
    }

    /// N, the number of rational points including o.
    #[inline]
    pub fn order(self) -> u64 {
        self.order
    }

    /// b = p + 1 - N, the trace of Frobenius.
    #[inline]
    pub fn trace(self) -> i64 {
        self.trace
    }

    /// t = |b|.
    #[inline]
    pub fn t(self) -> u64 {
        self.trace.unsigned_abs()
    }
}

/// N = p + 1 + sum over x of chi(x^3 + a^3), chi by Euler's criterion.
/// O(p) time, O(1) memory; the default counting path.
pub fn count_by_character_sum(e: &BachetCurve) -> CurveCount {
    let p = e.prime();
    let sum: i64 = p.elements().map(|x| chi(e.rhs_at(x)).value()).sum();
    CurveCount::new(p, (p.value() as i64 + 1 + sum) as u64)
}

/// N as the length of the full point enumeration. The oracle path; gated
/// by the curve module's enumeration bound.
pub fn count_by_enumeration(e: &BachetCurve) -> Result<CurveCount> {
    let n = e.enumerate_points()?.len() as u64;
    Ok(CurveCount::new(e.prime(), n))
}

/// The exact integer sum of chi(x^3 + 1) over F_p, for p = 1 (mod 6).
/// The value is always 4 (mod 6); the claim sweep measures this rather
/// than trusting it.
pub fn chi_sum_x3_plus_1(p: Prime) -> Result<i64> {
    if p.value() % 6 != 1 {
        return Err(Error::NotOneMod6 { p: p.value() });
    }
    let one = p.element(1);
    let sum: i64 = p.elements().map(|x| chi(x.cube() + one).value()).sum();
    debug_assert_eq!(sum.rem_euclid(6), 4);
    Ok(sum)
}

/// Which square class the coefficient a lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueClass {
    Qr,
    Nqr,
}

impl ResidueClass {
    pub fn name(self) -> &'static str {
        match self {
            ResidueClass::Qr => "QR",
            ResidueClass::Nqr => "NQR",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "QR" => Some(ResidueClass::Qr),
            "NQR" => Some(ResidueClass::Nqr),
            _ => None,
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// QR iff chi(a) = +1.
pub fn residue_class_of_a(e: &BachetCurve) -> ResidueClass {
    match chi(e.a()) {
        Chi::Residue => ResidueClass::Qr,
        _ => ResidueClass::Nqr,
    }
}

/// A curve paired with its quadratic twist y^2 = x^3 + (ga)^3 and both
/// counts. The twist trace is the negated original trace, so
/// N + N' = 2p + 2; that identity is measured by the claim sweep, not
/// assumed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistPair {
    pub original: BachetCurve,
    pub original_count: CurveCount,
    pub twist: BachetCurve,
    pub twist_count: CurveCount,
    pub g: FieldElement,
}

/// Build the twist of e by a non-residue g (default: the smallest one;
/// any valid g gives the same isomorphism class). Requires p = 1 (mod 6).
pub fn twist(e: &BachetCurve, g: Option<FieldElement>) -> Result<TwistPair> {
    let p = e.prime();
    if p.value() % 6 != 1 {
        return Err(Error::NotOneMod6 { p: p.value() });
    }
    let g = match g {
        Some(g) => {
            if chi(g) != Chi::NonResidue {
                return Err(Error::NotANonResidue {
                    g: g.value(),
                    p: p.value(),
                });
            }
            g
        }
        None => smallest_nonresidue(p),
    };
    let twisted = BachetCurve::new(p, (g * e.a()).value())?;
    Ok(TwistPair {
        original: *e,
        original_count: count_by_character_sum(e),
        twist: twisted,
        twist_count: count_by_character_sum(&twisted),
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::primes_in_class;

    fn curve(p: u64, a: u64) -> BachetCurve {
        BachetCurve::new(Prime::new(p).unwrap(), a).unwrap()
    }

    #[test]
    fn character_sum_examples() {
        let c = count_by_character_sum(&curve(7, 1));
        assert_eq!((c.order(), c.trace(), c.t()), (12, -4, 4));
        let c = count_by_character_sum(&curve(5, 1));
        assert_eq!((c.order(), c.trace(), c.t()), (6, 0, 0));
        let c = count_by_character_sum(&curve(13, 1));
        assert_eq!((c.order(), c.trace(), c.t()), (12, 2, 2));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(count_by_enumeration(&curve(7, 3)).unwrap().order(), 4);
        assert_eq!(count_by_enumeration(&curve(7, 1)).unwrap().order(), 12);
        // a = 2 is a non-residue mod 13; the character sum flips sign
        assert_eq!(count_by_enumeration(&curve(13, 2)).unwrap().order(), 16);
    }

    #[test]
    fn dual_paths_agree() {
        for p in primes_in_class(200, 1, 1).unwrap() {
            for a in 1..p.value() {
                let e = BachetCurve::new(p, a).unwrap();
                assert_eq!(
                    count_by_character_sum(&e),
                    count_by_enumeration(&e).unwrap(),
                    "p={p} a={a}"
                );
            }
        }
    }

    #[test]
    fn count_depends_only_on_residue_class() {
        for p in primes_in_class(100, 1, 1).unwrap() {
            let mut by_class = [None::<u64>; 2];
            for a in 1..p.value() {
                let e = BachetCurve::new(p, a).unwrap();
                let idx = match residue_class_of_a(&e) {
                    ResidueClass::Qr => 0,
                    ResidueClass::Nqr => 1,
                };
                let n = count_by_character_sum(&e).order();
                match by_class[idx] {
                    None => by_class[idx] = Some(n),
                    Some(prev) => assert_eq!(prev, n, "p={p} a={a}"),
                }
            }
        }
    }

    #[test]
    fn chi_sum_examples() {
        let p = |v| Prime::new(v).unwrap();
        assert_eq!(chi_sum_x3_plus_1(p(7)).unwrap(), 4);
        assert_eq!(chi_sum_x3_plus_1(p(13)).unwrap(), -2);
        assert_eq!(chi_sum_x3_plus_1(p(19)).unwrap(), -8);
        assert_eq!(
            chi_sum_x3_plus_1(p(11)),
            Err(Error::NotOneMod6 { p: 11 })
        );
    }

    #[test]
    fn chi_sum_is_4_mod_6() {
        for p in primes_in_class(500, 1, 6).unwrap() {
            let s = chi_sum_x3_plus_1(p).unwrap();
            assert_eq!(s.rem_euclid(6), 4, "p={p}");
        }
    }

    #[test]
    fn chi_sum_determines_every_count() {
        // N = p + 1 + chi(a) * S for every a, p = 1 (mod 6)
        for p in primes_in_class(100, 1, 6).unwrap() {
            let s = chi_sum_x3_plus_1(p).unwrap();
            for a in 1..p.value() {
                let e = BachetCurve::new(p, a).unwrap();
                let n = count_by_character_sum(&e).order() as i64;
                assert_eq!(n, p.value() as i64 + 1 + chi(e.a()).value() * s);
            }
        }
    }

    #[test]
    fn twist_examples() {
        let tp = twist(&curve(7, 1), None).unwrap();
        assert_eq!(tp.g.value(), 3);
        assert_eq!(tp.twist.a().value(), 3);
        assert_eq!(tp.original_count.order(), 12);
        assert_eq!(tp.twist_count.order(), 4);

        let tp = twist(&curve(13, 1), None).unwrap();
        assert_eq!(tp.g.value(), 2);
        assert_eq!(
            (tp.original_count.order(), tp.twist_count.order()),
            (12, 16)
        );
    }

    #[test]
    fn twist_validation() {
        assert_eq!(
            twist(&curve(11, 1), None),
            Err(Error::NotOneMod6 { p: 11 })
        );
        let p = Prime::new(7).unwrap();
        // 2 is a square mod 7
        assert_eq!(
            twist(&curve(7, 1), Some(p.element(2))),
            Err(Error::NotANonResidue { g: 2, p: 7 })
        );
    }

    #[test]
    fn twist_orders_pair_up() {
        for p in primes_in_class(200, 1, 6).unwrap() {
            for a in [1, smallest_nonresidue(p).value()] {
                let e = BachetCurve::new(p, a).unwrap();
                let tp = twist(&e, None).unwrap();
                assert_eq!(
                    tp.original_count.order() + tp.twist_count.order(),
                    2 * p.value() + 2,
                    "p={p} a={a}"
                );
                assert_eq!(tp.original_count.trace(), -tp.twist_count.trace());
            }
        }
    }

    #[test]
    fn any_nonresidue_gives_the_same_twist_order() {
        for p in primes_in_class(60, 1, 6).unwrap() {
            let e = BachetCurve::new(p, 1).unwrap();
            let default = twist(&e, None).unwrap().twist_count;
            for g in p.elements() {
                if chi(g) == Chi::NonResidue {
                    let tp = twist(&e, Some(g)).unwrap();
                    assert_eq!(tp.twist_count, default, "p={p} g={g}");
                }
            }
        }
    }

    #[test]
    fn residue_class_examples() {
        assert_eq!(residue_class_of_a(&curve(7, 1)), ResidueClass::Qr);
        assert_eq!(residue_class_of_a(&curve(7, 3)), ResidueClass::Nqr);
        assert_eq!(residue_class_of_a(&curve(13, 4)), ResidueClass::Qr);
    }

    #[test]
    fn supersingular_line() {
        // p = 5 (mod 6): trace 0 and N = p + 1 for every coefficient
        for p in primes_in_class(500, 5, 6).unwrap() {
            for a in 1..p.value().min(12) {
                let c = count_by_character_sum(&BachetCurve::new(p, a).unwrap());
                assert_eq!(c.trace(), 0, "p={p} a={a}");
                assert_eq!(c.order(), p.value() + 1);
            }
        }
    }

    #[test]
    fn hasse_bound_holds() {
        for p in primes_in_class(500, 1, 1).unwrap() {
            for a in [1, 2, 3] {
                if a >= p.value() {
                    continue;
                }
                let c = count_by_character_sum(&BachetCurve::new(p, a).unwrap());
                let b = c.trace();
                assert!(b * b <= 4 * p.value() as i64, "p={p} a={a}");
            }
        }
    }
}
