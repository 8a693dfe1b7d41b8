//! One measurable predicate per claim about Bachet curves, evaluated on
//! (p, class) rows, plus the sweep driver over prime ranges and the
//! Z_n x Z_n instance finder.
//!
//! Claim failures are data, never exceptions: each row records a verdict
//! per claim so a failing congruence is attributable to its inputs.

use rayon::prelude::*;

use crate::counting::{
    chi_sum_x3_plus_1, count_by_character_sum, residue_class_of_a, twist, CurveCount,
    ResidueClass,
};
use crate::curve::{BachetCurve, ENUMERATION_BOUND};
use crate::error::{Error, Result};
use crate::field::{cube_roots, primes_in_class, smallest_nonresidue, Prime};
use crate::structure::{count_order3, structure_exhaustive, structure_randomized, GroupStructure};

/// Sample budget for the randomized structure path when a sweep row lies
/// beyond the enumeration bound.
pub const SWEEP_SAMPLE_BUDGET: usize = 200;

/// Default cap for the exhaustive all-coefficients invariance check.
pub const ALL_A_DEFAULT_BOUND: u64 = 200;

/// Identifiers for every claim the sweep measures.
///
/// Each id maps to exactly one predicate. `S1SignHypothesis` is a measured
/// hypothesis whose failures are expected; `Cyclic5Mod6` is the one claim
/// evaluated on p = 5 (mod 6) rows, all others apply to p = 1 (mod 6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    T2TwistPairing,
    T3a,
    T3b,
    T4SixNdivB,
    C5NMod6,
    C6BMod12,
    T7a,
    T7b,
    C8Order3ByT,
    T9CountIn2Or8,
    C10UniquePreimage,
    T11ThreeRoots,
    T12ChisumMod6,
    T13QrIffN0,
    C14BMod6,
    T15NqrIffN4,
    C16Order3ByResidue,
    T18WashingtonRefined,
    S1SignHypothesis,
    Cyclic5Mod6,
}

impl ClaimId {
    pub const COUNT: usize = 20;

    pub const ALL: [ClaimId; ClaimId::COUNT] = [
        ClaimId::T2TwistPairing,
        ClaimId::T3a,
        ClaimId::T3b,
        ClaimId::T4SixNdivB,
        ClaimId::C5NMod6,
        ClaimId::C6BMod12,
        ClaimId::T7a,
        ClaimId::T7b,
        ClaimId::C8Order3ByT,
        ClaimId::T9CountIn2Or8,
        ClaimId::C10UniquePreimage,
        ClaimId::T11ThreeRoots,
        ClaimId::T12ChisumMod6,
        ClaimId::T13QrIffN0,
        ClaimId::C14BMod6,
        ClaimId::T15NqrIffN4,
        ClaimId::C16Order3ByResidue,
        ClaimId::T18WashingtonRefined,
        ClaimId::S1SignHypothesis,
        ClaimId::Cyclic5Mod6,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Stable identifier used as the CSV column name and JSONL key.
    pub fn name(self) -> &'static str {
        match self {
            ClaimId::T2TwistPairing => "t2_twist_pairing",
            ClaimId::T3a => "t3a",
            ClaimId::T3b => "t3b",
            ClaimId::T4SixNdivB => "t4_six_ndiv_b",
            ClaimId::C5NMod6 => "c5_n_mod6",
            ClaimId::C6BMod12 => "c6_b_mod12",
            ClaimId::T7a => "t7a",
            ClaimId::T7b => "t7b",
            ClaimId::C8Order3ByT => "c8_order3_by_t",
            ClaimId::T9CountIn2Or8 => "t9_count_in_2_8",
            ClaimId::C10UniquePreimage => "c10_unique_preimage",
            ClaimId::T11ThreeRoots => "t11_three_roots",
            ClaimId::T12ChisumMod6 => "t12_chisum_mod6",
            ClaimId::T13QrIffN0 => "t13_qr_iff_n0",
            ClaimId::C14BMod6 => "c14_b_mod6",
            ClaimId::T15NqrIffN4 => "t15_nqr_iff_n4",
            ClaimId::C16Order3ByResidue => "c16_order3_by_residue",
            ClaimId::T18WashingtonRefined => "t18_washington_refined",
            ClaimId::S1SignHypothesis => "s1_sign_hypothesis",
            ClaimId::Cyclic5Mod6 => "cyclic_5mod6",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimId> {
        ClaimId::ALL.into_iter().find(|c| c.name() == s)
    }

    /// What the predicate states, in terms of the row data.
    pub fn description(self) -> &'static str {
        match self {
            ClaimId::T2TwistPairing => "the twist group order equals p + 1 + b",
            ClaimId::T3a => "p = 1 (12): b = 2 (12) iff N = 0 (12), and b = 10 (12) iff N = 4 (12)",
            ClaimId::T3b => "p = 7 (12): b = 4 (12) iff N = 4 (12), and b = 8 (12) iff N = 0 (12)",
            ClaimId::T4SixNdivB => "b = 2 or 4 (mod 6); in particular 6 never divides b",
            ClaimId::C5NMod6 => "N = 0 or 4 (mod 6)",
            ClaimId::C6BMod12 => "b = +-2 (12) when p = 1 (12); b = +-4 (12) when p = 7 (12)",
            ClaimId::T7a => {
                "t = 2 (6): the pair member with b = +t has N = 0 (6), its twist N = 4 (6)"
            }
            ClaimId::T7b => {
                "t = 4 (6): the pair member with b = +t has N = 4 (6), its twist N = 0 (6)"
            }
            ClaimId::C8Order3ByT => {
                "per the (p, t) mod 12 case split, order-3 points appear exactly in the pair member with N = 0 (12)"
            }
            ClaimId::T9CountIn2Or8 => "if N = 0 (6) there are 2 or 8 points of order 3",
            ClaimId::C10UniquePreimage => "x = 0 is the only x with x^3 + 1 = 1",
            ClaimId::T11ThreeRoots => "x^3 + 1 = 0 has exactly 3 roots in F_p",
            ClaimId::T12ChisumMod6 => "the sum of chi(x^3 + 1) over F_p is 4 (mod 6)",
            ClaimId::T13QrIffN0 => "a is a square iff N = 0 (mod 6)",
            ClaimId::C14BMod6 => "if N = 0 (6) then b = 2 (6)",
            ClaimId::T15NqrIffN4 => "a is a non-square iff N = 4 (mod 6)",
            ClaimId::C16Order3ByResidue => {
                "squares give 2 or 8 points of order 3; non-squares give none"
            }
            ClaimId::T18WashingtonRefined => {
                "Z_n x Z_n forces p = 7 (mod 12) and p = n^2 + n + 1 or n^2 - n + 1"
            }
            ClaimId::S1SignHypothesis => "b > 0 iff a is a square (measured hypothesis)",
            ClaimId::Cyclic5Mod6 => "p = 5 (mod 6): the group is cyclic of order p + 1 with b = 0",
        }
    }

    /// Hypotheses are excluded from the default pass/fail status.
    pub fn is_hypothesis(self) -> bool {
        self == ClaimId::S1SignHypothesis
    }
}

/// Outcome of one claim on one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "na",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s {
            "pass" => Some(Verdict::Pass),
            "fail" => Some(Verdict::Fail),
            "na" => Some(Verdict::NotApplicable),
            _ => None,
        }
    }

    fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One sweep row: the measured data for a (p, class) pair and a verdict
/// for every claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub p: u64,
    pub class: ResidueClass,
    pub a_rep: u64,
    /// N, the group order.
    pub order: u64,
    /// b = p + 1 - N.
    pub trace: i64,
    pub n: u64,
    pub m: u64,
    pub order3: u32,
    verdicts: [Verdict; ClaimId::COUNT],
}

impl ClassReport {
    /// t = |b|.
    #[inline]
    pub fn t(&self) -> u64 {
        self.trace.unsigned_abs()
    }

    /// nm, the group exponent.
    #[inline]
    pub fn nm(&self) -> u64 {
        self.n * self.m
    }

    #[inline]
    pub fn verdict(&self, claim: ClaimId) -> Verdict {
        self.verdicts[claim.index()]
    }

    /// Claims that failed on this row.
    pub fn failures(&self) -> impl Iterator<Item = ClaimId> + '_ {
        ClaimId::ALL
            .into_iter()
            .filter(|c| self.verdicts[c.index()] == Verdict::Fail)
    }

    /// Rebuild a row from parsed fields; used by the report readers.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        p: u64,
        class: ResidueClass,
        a_rep: u64,
        order: u64,
        trace: i64,
        n: u64,
        m: u64,
        order3: u32,
        verdicts: [Verdict; ClaimId::COUNT],
    ) -> Self {
        ClassReport {
            p,
            class,
            a_rep,
            order,
            trace,
            n,
            m,
            order3,
            verdicts,
        }
    }
}

/// Group structure for a row: exhaustive below the enumeration bound,
/// randomized with a row-derived seed beyond it.
fn row_structure(e: &BachetCurve, count: &CurveCount, class: ResidueClass) -> Result<GroupStructure> {
    if e.prime().value() <= ENUMERATION_BOUND {
        structure_exhaustive(e)
    } else {
        let seed = e.prime().value().wrapping_mul(2).wrapping_add(class as u64);
        structure_randomized(e, count, SWEEP_SAMPLE_BUDGET, seed)
    }
}

/// Evaluate every claim for one (p, class) row.
///
/// The class representative is a = 1 for QR and a = the smallest
/// non-residue for NQR; the count depends only on the class, so the
/// representative stands for every coefficient in it.
pub fn evaluate_claims(p: Prime, class: ResidueClass) -> Result<ClassReport> {
    let a_rep = match class {
        ResidueClass::Qr => 1,
        ResidueClass::Nqr => smallest_nonresidue(p).value(),
    };
    let e = BachetCurve::new(p, a_rep)?;
    debug_assert_eq!(residue_class_of_a(&e), class);
    let count = count_by_character_sum(&e);
    let structure = row_structure(&e, &count, class)?;
    let census = count_order3(&e);

    let pv = p.value();
    let order = count.order();
    let b = count.trace();
    let t = count.t();
    let n = structure.n();
    let m = structure.m();
    let order3 = census.order3;

    let mut verdicts = [Verdict::NotApplicable; ClaimId::COUNT];
    let mut set = |claim: ClaimId, v: Verdict| verdicts[claim.index()] = v;

    if pv % 6 == 5 {
        set(
            ClaimId::Cyclic5Mod6,
            Verdict::from_bool(structure.is_cyclic() && structure.nm() == pv + 1 && b == 0),
        );
    } else {
        let pair = twist(&e, None)?;
        let twist_order = pair.twist_count.order();
        let twist_b = pair.twist_count.trace();
        let twist_order3 = count_order3(&pair.twist).order3;
        let s_sum = chi_sum_x3_plus_1(p)?;

        let b12 = b.rem_euclid(12);
        let b6 = b.rem_euclid(6);
        let n12 = order % 12;
        let n6 = order % 6;

        set(
            ClaimId::T2TwistPairing,
            Verdict::from_bool(twist_order as i64 == pv as i64 + 1 + b),
        );

        if pv % 12 == 1 {
            set(
                ClaimId::T3a,
                Verdict::from_bool((b12 == 2) == (n12 == 0) && (b12 == 10) == (n12 == 4)),
            );
        } else {
            set(
                ClaimId::T3b,
                Verdict::from_bool((b12 == 4) == (n12 == 4) && (b12 == 8) == (n12 == 0)),
            );
        }

        set(ClaimId::T4SixNdivB, Verdict::from_bool(b6 == 2 || b6 == 4));
        set(ClaimId::C5NMod6, Verdict::from_bool(n6 == 0 || n6 == 4));
        set(
            ClaimId::C6BMod12,
            Verdict::from_bool(if pv % 12 == 1 {
                b12 == 2 || b12 == 10
            } else {
                b12 == 4 || b12 == 8
            }),
        );

        // Pair bookkeeping for the trace-sign claims: exactly one member
        // carries b = +t. Both counts were computed independently.
        let t_i = t as i64;
        let self_is_plus = b == t_i;
        let pair_well_formed = t > 0 && (self_is_plus != (twist_b == t_i));
        let (plus_order, minus_order) = if self_is_plus {
            (order, twist_order)
        } else {
            (twist_order, order)
        };
        let (plus_order3, minus_order3) = if self_is_plus {
            (order3, twist_order3)
        } else {
            (twist_order3, order3)
        };

        if t % 6 == 2 {
            set(
                ClaimId::T7a,
                Verdict::from_bool(
                    pair_well_formed && plus_order % 6 == 0 && minus_order % 6 == 4,
                ),
            );
        } else if t % 6 == 4 {
            set(
                ClaimId::T7b,
                Verdict::from_bool(
                    pair_well_formed && plus_order % 6 == 4 && minus_order % 6 == 0,
                ),
            );
        }

        // The four (p mod 12, t mod 12) cases, exactly as stated; a row
        // matching none of them is an anomaly and fails.
        let c8 = match (pv % 12, t % 12) {
            (1, 2) => {
                plus_order % 12 == 0
                    && plus_order3 > 0
                    && minus_order % 12 == 4
                    && minus_order3 == 0
            }
            (1, 10) => {
                plus_order % 12 == 4
                    && plus_order3 == 0
                    && minus_order % 12 == 0
                    && minus_order3 > 0
            }
            (7, 4) => {
                plus_order % 12 == 4
                    && plus_order3 == 0
                    && minus_order % 12 == 0
                    && minus_order3 > 0
            }
            (7, 8) => {
                plus_order % 12 == 0
                    && plus_order3 > 0
                    && minus_order % 12 == 4
                    && minus_order3 == 0
            }
            _ => false,
        };
        set(
            ClaimId::C8Order3ByT,
            Verdict::from_bool(pair_well_formed && c8),
        );

        if n6 == 0 {
            set(
                ClaimId::T9CountIn2Or8,
                Verdict::from_bool(order3 == 2 || order3 == 8),
            );
        }

        set(
            ClaimId::C10UniquePreimage,
            Verdict::from_bool(cube_roots(p.element(0)).len() == 1),
        );
        set(
            ClaimId::T11ThreeRoots,
            Verdict::from_bool(cube_roots(p.element(-1)).len() == 3),
        );
        set(
            ClaimId::T12ChisumMod6,
            Verdict::from_bool(s_sum.rem_euclid(6) == 4),
        );
        set(
            ClaimId::T13QrIffN0,
            Verdict::from_bool((class == ResidueClass::Qr) == (n6 == 0)),
        );
        if n6 == 0 {
            set(ClaimId::C14BMod6, Verdict::from_bool(b6 == 2));
        }
        set(
            ClaimId::T15NqrIffN4,
            Verdict::from_bool((class == ResidueClass::Nqr) == (n6 == 4)),
        );
        set(
            ClaimId::C16Order3ByResidue,
            Verdict::from_bool(
                ((class == ResidueClass::Qr) == (order3 == 2 || order3 == 8))
                    && ((class == ResidueClass::Nqr) == (order3 == 0)),
            ),
        );

        if m == 1 {
            set(
                ClaimId::T18WashingtonRefined,
                Verdict::from_bool(
                    pv % 12 == 7 && (pv == n * n + n + 1 || pv == n * n - n + 1),
                ),
            );
        }

        set(
            ClaimId::S1SignHypothesis,
            Verdict::from_bool((b > 0) == (class == ResidueClass::Qr)),
        );
    }

    Ok(ClassReport {
        p: pv,
        class,
        a_rep,
        order,
        trace: b,
        n,
        m,
        order3,
        verdicts,
    })
}

/// Reports for every prime 5 <= p <= bound, ascending by (p, class).
/// p = 1 (mod 6) contributes a QR and an NQR row, p = 5 (mod 6) a single
/// cyclic row. Rows evaluate in parallel; the order of the result does
/// not depend on scheduling.
pub fn sweep(bound: u64, class_filter: Option<ResidueClass>) -> Result<Vec<ClassReport>> {
    if bound < 7 {
        return Err(Error::BoundTooSmall { bound, min: 7 });
    }
    let primes = primes_in_class(bound, 1, 1)?;
    let nested: Result<Vec<Vec<ClassReport>>> = primes
        .par_iter()
        .map(|&p| {
            let mut rows = Vec::new();
            let classes: &[ResidueClass] = if p.value() % 6 == 1 {
                &[ResidueClass::Qr, ResidueClass::Nqr]
            } else {
                &[ResidueClass::Qr]
            };
            for &class in classes {
                if class_filter.is_none_or(|f| f == class) {
                    rows.push(evaluate_claims(p, class)?);
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows: Vec<ClassReport> = nested?.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.p, r.class));
    Ok(rows)
}

/// Which of the two admissible prime shapes an instance matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NnForm {
    /// p = n^2 + n + 1
    PlusN,
    /// p = n^2 - n + 1
    MinusN,
}

impl NnForm {
    pub fn name(self) -> &'static str {
        match self {
            NnForm::PlusN => "n^2+n+1",
            NnForm::MinusN => "n^2-n+1",
        }
    }
}

/// A (p, class) row whose group is Z_n x Z_n, i.e. m = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NnInstance {
    pub p: u64,
    pub class: ResidueClass,
    pub n: u64,
    pub form: Option<NnForm>,
}

impl NnInstance {
    pub fn residue_7_mod_12(&self) -> bool {
        self.p % 12 == 7
    }

    /// The shapes Z_n x Z_n cannot take here: p = n^2 + 1 or p = (n -+ 1)^2.
    pub fn has_excluded_form(&self) -> bool {
        self.p == self.n * self.n + 1
            || self.p == (self.n - 1) * (self.n - 1)
            || self.p == (self.n + 1) * (self.n + 1)
    }

    /// The refinement claim for this instance: p = 7 (mod 12), one of the
    /// two admissible forms, and no excluded form.
    pub fn satisfies_refinement(&self) -> bool {
        self.form.is_some() && self.residue_7_mod_12() && !self.has_excluded_form()
    }
}

/// All Z_n x Z_n rows with p <= bound, in sweep order, with their form
/// classification. The caller decides what a refinement violation means
/// (the CLI exits nonzero).
pub fn find_nn_instances(bound: u64) -> Result<Vec<NnInstance>> {
    let rows = sweep(bound, None)?;
    Ok(nn_instances_from_rows(&rows))
}

/// Extract the Z_n x Z_n instances from already-computed sweep rows.
pub fn nn_instances_from_rows(rows: &[ClassReport]) -> Vec<NnInstance> {
    rows.iter()
        .filter(|r| r.p % 6 == 1 && r.m == 1)
        .map(|r| {
            let n = r.n;
            let form = if r.p == n * n + n + 1 {
                Some(NnForm::PlusN)
            } else if r.p == n * n - n + 1 {
                Some(NnForm::MinusN)
            } else {
                None
            };
            NnInstance {
                p: r.p,
                class: r.class,
                n,
                form,
            }
        })
        .collect()
}

/// A coefficient whose count disagrees with its class representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub p: u64,
    pub a: u64,
    pub order: u64,
    pub expected: u64,
}

/// Exhaustive class-invariance check: for every prime 5 <= p <= bound and
/// every a in F_p*, the count must equal the count of a's class
/// representative (and p + 1 outright when p = 5 (mod 6)). O(p^2) per
/// prime, so callers cap the bound.
pub fn check_class_invariance(bound: u64) -> Result<Vec<InvarianceViolation>> {
    let primes = primes_in_class(bound, 1, 1)?;
    let nested: Result<Vec<Vec<InvarianceViolation>>> = primes
        .par_iter()
        .map(|&p| {
            let expected_qr;
            let expected_nqr;
            if p.value() % 6 == 1 {
                expected_qr =
                    count_by_character_sum(&BachetCurve::new(p, 1)?).order();
                let g = smallest_nonresidue(p);
                expected_nqr =
                    count_by_character_sum(&BachetCurve::new(p, g.value())?).order();
            } else {
                expected_qr = p.value() + 1;
                expected_nqr = p.value() + 1;
            }
            let mut violations = Vec::new();
            for a in 1..p.value() {
                let e = BachetCurve::new(p, a)?;
                let order = count_by_character_sum(&e).order();
                let expected = match residue_class_of_a(&e) {
                    ResidueClass::Qr => expected_qr,
                    ResidueClass::Nqr => expected_nqr,
                };
                if order != expected {
                    violations.push(InvarianceViolation {
                        p: p.value(),
                        a,
                        order,
                        expected,
                    });
                }
            }
            Ok(violations)
        })
        .collect();
    let mut flat: Vec<InvarianceViolation> = nested?.into_iter().flatten().collect();
    flat.sort_by_key(|v| (v.p, v.a));
    Ok(flat)
}
