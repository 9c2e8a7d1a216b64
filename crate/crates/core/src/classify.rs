//! Closed-form nut predicates for the tricirculant families, the
//! cyclotomic criteria they are checked against, canonical parameter
//! forms and the `Phi_f | Q` / `Phi_f | R` residue tables.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cyclo::{
    cyclotomic_root_filter, divides_cyclotomic, q_poly, r_poly, t1_witness_poly, SparseIntPoly,
};
use crate::error::{Error, Result};
use crate::exactla::{is_nut_kernel, KernelBasis};
use crate::numtheory::{divisors, gcd, gcd3, units, v2};
use crate::voltage::{Family, FamilyParams};

/// The moduli covered by the published residue tables.
pub const APPENDIX_MODULI: [u64; 17] =
    [2, 3, 4, 5, 6, 7, 10, 12, 14, 15, 20, 21, 28, 30, 42, 60, 84];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Predicate,
    Cyclotomic,
    Kernel,
}

/// Which polynomial a cyclotomic factor was found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Witness {
    Q,
    R,
    T1,
}

/// Conditions of the T1 theorem, numbered (i)-(iii).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum T1Condition {
    /// (i) `gcd(n/2, a) = gcd(n/2, b) = 1`
    Coprime,
    /// (ii) neither `a` nor `b` has the parity of `n/2`
    Parity,
    /// (iii) `v2(b - a) >= v2(n)`
    TwoAdic,
}

/// Conditions of the T4 theorem, numbered (i)-(iv).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum T4Condition {
    /// (i) `gcd(n/2, a, b) = 1`
    Gcd,
    /// (ii) if `4 ∤ n`, one of `a, b` is even
    OneEven,
    /// (iii) if `4 | n`, `a` and `b` differ in parity
    MixedParity,
    /// (iv) if `10 | n`, five divides one of `a, b, a-b, a+b`
    FiveDivides,
}

impl T1Condition {
    pub fn index(self) -> &'static str {
        match self {
            T1Condition::Coprime => "i",
            T1Condition::Parity => "ii",
            T1Condition::TwoAdic => "iii",
        }
    }
}

impl T4Condition {
    pub fn index(self) -> &'static str {
        match self {
            T4Condition::Gcd => "i",
            T4Condition::OneEven => "ii",
            T4Condition::MixedParity => "iii",
            T4Condition::FiveDivides => "iv",
        }
    }
}

/// Machine-readable cause of a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    T1Condition {
        condition: T1Condition,
    },
    T4Condition {
        condition: T4Condition,
    },
    CyclotomicDivides {
        f: u64,
        witness: Witness,
    },
    /// Type-2 tricirculants are never nut graphs.
    TypeTwo,
    /// Type-3 tricirculants carry two independent kernel vectors.
    TypeThreeNullity,
    /// Cubic bicirculants are never nut graphs.
    Bicirculant {
        family: Family,
    },
    /// Cubic circulants are never nut graphs.
    CubicCirculant,
    Nullity {
        nullity: usize,
    },
    ZeroEntries {
        count: usize,
    },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::T1Condition { condition } => {
                let text = match condition {
                    T1Condition::Coprime => "gcd(n/2, a) = gcd(n/2, b) = 1 fails",
                    T1Condition::Parity => "a or b has the parity of n/2",
                    T1Condition::TwoAdic => "v2(b - a) < v2(n)",
                };
                write!(f, "T1 condition ({}): {text}", condition.index())
            }
            Reason::T4Condition { condition } => {
                let text = match condition {
                    T4Condition::Gcd => "gcd(n/2, a, b) != 1",
                    T4Condition::OneEven => "4 does not divide n and a, b are both odd",
                    T4Condition::MixedParity => "4 divides n and a, b have equal parity",
                    T4Condition::FiveDivides => "10 divides n and 5 divides none of a, b, a-b, a+b",
                };
                write!(f, "T4 condition ({}): {text}", condition.index())
            }
            Reason::CyclotomicDivides { f: order, witness } => {
                write!(f, "Phi_{order} divides the {witness:?} polynomial")
            }
            Reason::TypeTwo => f.write_str("type-2 tricirculants are never nut graphs"),
            Reason::TypeThreeNullity => f.write_str("type-3 tricirculants have nullity >= 2"),
            Reason::Bicirculant { family } => {
                write!(f, "cubic bicirculants ({family}) are never nut graphs")
            }
            Reason::CubicCirculant => f.write_str("cubic circulants are never nut graphs"),
            Reason::Nullity { nullity } => write!(f, "nullity is {nullity}, not 1"),
            Reason::ZeroEntries { count } => {
                write!(f, "kernel vector has {count} zero entries")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NutVerdict {
    pub is_nut: bool,
    pub method: Method,
    /// Empty exactly when `is_nut` holds.
    pub reasons: Vec<Reason>,
}

impl NutVerdict {
    fn from_reasons(method: Method, reasons: Vec<Reason>) -> Self {
        NutVerdict {
            is_nut: reasons.is_empty(),
            method,
            reasons,
        }
    }
}

fn t1_params(n: u64, a: u64, b: u64) -> Result<(u64, u64)> {
    let p = FamilyParams::tri(Family::T1, n, a, b)?;
    Ok((p.a(), p.b().unwrap()))
}

fn t4_params(n: u64, a: u64, b: u64) -> Result<(u64, u64)> {
    let p = FamilyParams::tri(Family::T4, n, a, b)?;
    Ok((p.a(), p.b().unwrap()))
}

/// T1 conditions that fail for `T1(n, a, b)`.
pub fn t1_failed_conditions(n: u64, a: u64, b: u64) -> Result<Vec<T1Condition>> {
    let (a, b) = t1_params(n, a, b)?;
    let h = n / 2;
    let mut failed = Vec::new();
    if gcd(h, a) != 1 || gcd(h, b) != 1 {
        failed.push(T1Condition::Coprime);
    }
    if a % 2 == h % 2 || b % 2 == h % 2 {
        failed.push(T1Condition::Parity);
    }
    if v2((b - a) as i64)? < v2(n as i64)? {
        failed.push(T1Condition::TwoAdic);
    }
    Ok(failed)
}

/// Closed-form nut test for `T1(n, a, b)`, `0 <= a, b < n`, `a != b`.
pub fn t1_predicate(n: u64, a: u64, b: u64) -> Result<bool> {
    Ok(t1_failed_conditions(n, a, b)?.is_empty())
}

/// T4 conditions that fail for `T4(n, a, b)`.
pub fn t4_failed_conditions(n: u64, a: u64, b: u64) -> Result<Vec<T4Condition>> {
    let (a, b) = t4_params(n, a, b)?;
    let mut failed = Vec::new();
    if gcd3(n / 2, a, b) != 1 {
        failed.push(T4Condition::Gcd);
    }
    if !n.is_multiple_of(4) && a % 2 == 1 && b % 2 == 1 {
        failed.push(T4Condition::OneEven);
    }
    if n.is_multiple_of(4) && a % 2 == b % 2 {
        failed.push(T4Condition::MixedParity);
    }
    if n.is_multiple_of(10) && [a, b, b - a, a + b].iter().all(|x| x % 5 != 0) {
        failed.push(T4Condition::FiveDivides);
    }
    Ok(failed)
}

/// Closed-form nut test for `T4(n, a, b)`, `1 <= a, b < n/2`.
pub fn t4_predicate(n: u64, a: u64, b: u64) -> Result<bool> {
    Ok(t4_failed_conditions(n, a, b)?.is_empty())
}

/// Orders `f != 1` of the `n`-th roots of unity that are roots of the T1
/// witness polynomial.
pub fn t1_cyclotomic_obstructions(n: u64, a: u64, b: u64) -> Result<Vec<u64>> {
    let (a, b) = t1_params(n, a, b)?;
    let roots = cyclotomic_root_filter(&t1_witness_poly(n, a, b)?, n)?;
    Ok(roots.into_iter().filter(|&f| f != 1).collect())
}

/// The T1 witness polynomial has no `n`-th root of unity other than 1 as
/// a root.
pub fn t1_poly_criterion(n: u64, a: u64, b: u64) -> Result<bool> {
    Ok(t1_cyclotomic_obstructions(n, a, b)?.is_empty())
}

/// Pairs `(f, Q)` with `f | n/2, f >= 2, Phi_f | Q_{a,b}` and `(f, R)` with
/// `f | n, n/f odd, Phi_f | R_{a,b}`.
pub fn t4_cyclotomic_obstructions(n: u64, a: u64, b: u64) -> Result<Vec<(u64, Witness)>> {
    let (a, b) = t4_params(n, a, b)?;
    let q = q_poly(a, b)?;
    let r = r_poly(a, b)?;
    let mut out = Vec::new();
    for f in divisors(n / 2).into_iter().filter(|&f| f >= 2) {
        if divides_cyclotomic(f, &q.reduce_exponents_mod(f))? {
            out.push((f, Witness::Q));
        }
    }
    for f in divisors(n).into_iter().filter(|&f| (n / f) % 2 == 1) {
        if divides_cyclotomic(f, &r.reduce_exponents_mod(f))? {
            out.push((f, Witness::R));
        }
    }
    Ok(out)
}

pub fn t4_cyclotomic_criterion(n: u64, a: u64, b: u64) -> Result<bool> {
    Ok(t4_cyclotomic_obstructions(n, a, b)?.is_empty())
}

fn pair(params: &FamilyParams) -> (u64, u64, u64) {
    (params.n(), params.a(), params.b().unwrap_or(0))
}

/// Closed-form verdict: the T1/T4 predicates, and the nonexistence results
/// for every other family.
pub fn classify(params: &FamilyParams) -> NutVerdict {
    let (n, a, b) = pair(params);
    let reasons = match params.family() {
        Family::T1 => t1_failed_conditions(n, a, b)
            .expect("validated parameters")
            .into_iter()
            .map(|condition| Reason::T1Condition { condition })
            .collect(),
        Family::T4 => t4_failed_conditions(n, a, b)
            .expect("validated parameters")
            .into_iter()
            .map(|condition| Reason::T4Condition { condition })
            .collect(),
        Family::T2 => vec![Reason::TypeTwo],
        Family::T3 => vec![Reason::TypeThreeNullity],
        family @ (Family::B1 | Family::B2 | Family::B3) => vec![Reason::Bicirculant { family }],
        Family::Circulant => vec![Reason::CubicCirculant],
    };
    NutVerdict::from_reasons(Method::Predicate, reasons)
}

/// Verdict from the polynomial criteria; `None` for families without one.
pub fn cyclotomic_verdict(params: &FamilyParams) -> Option<NutVerdict> {
    let (n, a, b) = pair(params);
    let reasons = match params.family() {
        Family::T1 => t1_cyclotomic_obstructions(n, a, b)
            .expect("validated parameters")
            .into_iter()
            .map(|f| Reason::CyclotomicDivides {
                f,
                witness: Witness::T1,
            })
            .collect(),
        Family::T4 => t4_cyclotomic_obstructions(n, a, b)
            .expect("validated parameters")
            .into_iter()
            .map(|(f, witness)| Reason::CyclotomicDivides { f, witness })
            .collect(),
        _ => return None,
    };
    Some(NutVerdict::from_reasons(Method::Cyclotomic, reasons))
}

/// Verdict read off an exact kernel basis.
pub fn kernel_verdict(kernel: &KernelBasis) -> NutVerdict {
    if is_nut_kernel(kernel) {
        return NutVerdict::from_reasons(Method::Kernel, Vec::new());
    }
    let reason = match kernel.vectors() {
        [v] if !v.is_empty() => Reason::ZeroEntries {
            count: v.iter().filter(|x| num_traits::Zero::is_zero(*x)).count(),
        },
        vs => Reason::Nullity { nullity: vs.len() },
    };
    NutVerdict::from_reasons(Method::Kernel, vec![reason])
}

/// Normal form `(n, 1, b')` when `4 | n`, else `(n, 2, b')`, with `b'`
/// minimal over unit multipliers `t` sending one of `a, b` to the target.
/// Falls back to the (sorted) input when no multiplier reaches it.
pub fn canonical_t1(n: u64, a: u64, b: u64) -> Result<(u64, u64, u64)> {
    let (a, b) = t1_params(n, a, b)?;
    let target = if n.is_multiple_of(4) { 1 } else { 2 };
    let best = units(n)
        .flat_map(|t| {
            let (ta, tb) = ((t * a) % n, (t * b) % n);
            [(ta, tb), (tb, ta)]
        })
        .filter(|&(x, _)| x == target)
        .map(|(_, other)| other)
        .min();
    Ok(match best {
        Some(other) => (n, target, other),
        None => (n, a, b),
    })
}

fn fold(x: u64, n: u64) -> u64 {
    let r = x % n;
    r.min(n - r)
}

/// The T4 parameter map under multiplier `t`, with residues folded into
/// `[0, n/2]` and the pair sorted.
pub fn t4_multiplier_image(n: u64, a: u64, b: u64, t: u64) -> (u64, u64) {
    let (x, y) = (fold(t * a, n), fold(t * b, n));
    (x.min(y), x.max(y))
}

/// Lexicographically least `(a', b')` over the unit-multiplier orbit.
pub fn canonical_t4(n: u64, a: u64, b: u64) -> Result<(u64, u64, u64)> {
    let (a, b) = t4_params(n, a, b)?;
    let (a, b) = units(n)
        .map(|t| t4_multiplier_image(n, a, b, t))
        .min()
        .unwrap_or((a, b));
    Ok((n, a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TablePoly {
    Q,
    R,
}

/// Residue pairs `(a mod f, b mod f)` for which `Phi_f` divides `Q_{a,b}`
/// (or `R_{a,b}`). Residue 0 is represented by `f` so the polynomial is
/// well formed; exponents are reduced mod `f` before the test.
pub fn divisibility_table(f: u64, which: TablePoly) -> Result<BTreeSet<(u64, u64)>> {
    if f < 2 {
        return Err(Error::InvalidParams(format!(
            "table modulus must be >= 2, got {f}"
        )));
    }
    let rep = |r: u64| if r == 0 { f } else { r };
    let mut out = BTreeSet::new();
    for a in 0..f {
        for b in 0..f {
            let poly: SparseIntPoly = match which {
                TablePoly::Q => q_poly(rep(a), rep(b))?,
                TablePoly::R => r_poly(rep(a), rep(b))?,
            };
            if divides_cyclotomic(f, &poly.reduce_exponents_mod(f))? {
                out.insert((a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_predicate_examples() {
        assert!(t1_predicate(6, 2, 4).unwrap());
        assert!(t1_predicate(6, 4, 2).unwrap());
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(!t1_predicate(4, a, b).unwrap());
            }
        }
        assert!(!t1_predicate(2, 0, 1).unwrap());
        assert!(t1_predicate(6, 2, 2).is_err());
        assert!(t1_predicate(7, 2, 4).is_err());
    }

    #[test]
    fn t4_predicate_examples() {
        assert!(t4_predicate(6, 1, 2).unwrap());
        assert!(!t4_predicate(4, 1, 1).unwrap());
        assert!(!t4_predicate(10, 1, 2).unwrap());
        assert_eq!(
            t4_failed_conditions(10, 1, 2).unwrap(),
            vec![T4Condition::FiveDivides]
        );
        assert!(t4_predicate(6, 0, 1).is_err());
    }

    #[test]
    fn t1_poly_examples() {
        assert!(t1_poly_criterion(6, 2, 4).unwrap());
        assert!(!t1_poly_criterion(6, 1, 2).unwrap());
        assert!(!t1_predicate(6, 1, 2).unwrap());
    }

    #[test]
    fn t4_cyclotomic_examples() {
        assert!(t4_cyclotomic_criterion(6, 1, 2).unwrap());
        assert_eq!(
            t4_cyclotomic_obstructions(6, 1, 1).unwrap(),
            vec![(2, Witness::R)]
        );
        // (5, 15) is a residue pair of the R table at f = 20, but b = 15 is
        // outside the T4 range for n = 20; (5, 5) sits in the same table.
        assert!(t4_cyclotomic_criterion(20, 5, 15).is_err());
        assert!(!t4_cyclotomic_criterion(20, 5, 5).unwrap());
        assert!(t4_cyclotomic_obstructions(20, 5, 5)
            .unwrap()
            .contains(&(20, Witness::R)));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&FamilyParams::new(Family::T3, 8, 3, None).unwrap());
        assert!(!v.is_nut);
        assert_eq!(v.reasons, vec![Reason::TypeThreeNullity]);
        assert!(classify(&FamilyParams::tri(Family::T1, 6, 2, 4).unwrap()).is_nut);
        let v = classify(&FamilyParams::new(Family::B2, 6, 1, None).unwrap());
        assert!(!v.is_nut);
        assert!(!v.reasons.is_empty());
        assert_eq!(v.method, Method::Predicate);
    }

    #[test]
    fn canonical_t1_examples() {
        assert_eq!(canonical_t1(6, 2, 4).unwrap(), (6, 2, 4));
        assert_eq!(canonical_t1(6, 4, 2).unwrap(), (6, 2, 4));
        assert_eq!(canonical_t1(8, 3, 5).unwrap(), (8, 1, 7));
        // 0 and 4 never map to 1 under a unit of Z_8
        assert_eq!(canonical_t1(8, 4, 0).unwrap(), (8, 0, 4));
    }

    #[test]
    fn canonical_t4_examples() {
        assert_eq!(canonical_t4(6, 1, 2).unwrap(), (6, 1, 2));
        assert_eq!(canonical_t4(6, 2, 2).unwrap(), (6, 2, 2));
        // t = 3 and t = 7 both reach (1, 2)
        assert_eq!(canonical_t4(10, 3, 4).unwrap(), (10, 1, 2));
    }

    #[test]
    fn table_examples() {
        let q10: BTreeSet<_> = [
            (0, 0),
            (2, 4),
            (2, 6),
            (4, 2),
            (4, 8),
            (6, 2),
            (6, 8),
            (8, 4),
            (8, 6),
        ]
        .into();
        assert_eq!(divisibility_table(10, TablePoly::Q).unwrap(), q10);
        assert_eq!(
            divisibility_table(2, TablePoly::R).unwrap(),
            [(1, 1)].into()
        );
        assert!(divisibility_table(15, TablePoly::R).unwrap().is_empty());
        assert!(divisibility_table(1, TablePoly::Q).is_err());
    }

    #[test]
    fn verdict_reasons_nonempty_when_negative() {
        for family in Family::ALL {
            for n in 1..=12 {
                for p in family.enumerate(n) {
                    let v = classify(&p);
                    assert_eq!(v.is_nut, v.reasons.is_empty(), "{p}");
                    if let Some(c) = cyclotomic_verdict(&p) {
                        assert_eq!(c.is_nut, c.reasons.is_empty(), "{p}");
                    }
                }
            }
        }
    }
}
