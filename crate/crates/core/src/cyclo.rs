//! Sparse integer polynomials, cyclotomic polynomials and the witness
//! polynomials whose root-of-unity content decides the nut property.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi};

/// Integer polynomial as an exponent -> coefficient map with no zero
/// coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseIntPoly {
    terms: BTreeMap<u64, BigInt>,
}

impl SparseIntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// `x^e - 1`.
    pub fn x_pow_minus_one(e: u64) -> Self {
        Self::from_terms([(1, e), (-1, 0)])
    }

    /// Sum of `coeff * x^exp`, merging repeated exponents.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, u64)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    /// Dense constructor, `coeffs[i]` multiplying `x^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (c, i as u64)))
    }

    pub fn add_term(&mut self, coeff: impl Into<BigInt>, exp: u64) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&e, c)| c * num_traits::pow(x.clone(), e as usize))
            .sum()
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: u64) -> Self {
        SparseIntPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u64) -> Self {
        SparseIntPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Maps every `x^e` to `x^(e mod f)`, summing collisions. Divisibility
    /// by `Phi_d` is preserved for every `d | f`.
    pub fn reduce_exponents_mod(&self, f: u64) -> Self {
        assert!(f >= 1, "modulus must be positive");
        Self::from_terms(self.terms.iter().map(|(&e, c)| (c.clone(), e % f)))
    }

    /// Long division by a divisor with leading coefficient +-1:
    /// `self = d * q + r` with `r = 0` or `deg r < deg d`.
    pub fn divrem(&self, d: &SparseIntPoly) -> Result<(SparseIntPoly, SparseIntPoly)> {
        let (dd, lead) = match (d.degree(), d.leading_coeff()) {
            (Some(dd), Some(lead)) => (dd, lead),
            _ => return Err(Error::ZeroDivisor),
        };
        if !lead.abs().is_one() {
            return Err(Error::NonMonicDivisor(lead.to_string()));
        }
        let Some(dp) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dp < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let negate = lead.is_negative();
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); dp as usize + 1];
        for (e, c) in self.terms() {
            rem[e as usize] = c.clone();
        }
        let lower: Vec<(usize, &BigInt)> = d
            .terms()
            .filter(|&(e, _)| e != dd)
            .map(|(e, c)| (e as usize, c))
            .collect();
        let mut quotient = Self::zero();
        for k in (dd as usize..=dp as usize).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let mut q = std::mem::take(&mut rem[k]);
            if negate {
                q = -q;
            }
            let shift = k - dd as usize;
            for &(e, c) in &lower {
                rem[e + shift] -= &q * c;
            }
            quotient.add_term(q, shift as u64);
        }
        let remainder = Self::from_terms(
            rem.into_iter()
                .enumerate()
                .take(dd as usize)
                .map(|(e, c)| (c, e as u64)),
        );
        Ok((quotient, remainder))
    }
}

impl Add for &SparseIntPoly {
    type Output = SparseIntPoly;
    fn add(self, rhs: &SparseIntPoly) -> SparseIntPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c.clone(), e);
        }
        out
    }
}

impl Sub for &SparseIntPoly {
    type Output = SparseIntPoly;
    fn sub(self, rhs: &SparseIntPoly) -> SparseIntPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl Mul for &SparseIntPoly {
    type Output = SparseIntPoly;
    fn mul(self, rhs: &SparseIntPoly) -> SparseIntPoly {
        let mut out = SparseIntPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Neg for &SparseIntPoly {
    type Output = SparseIntPoly;
    fn neg(self) -> SparseIntPoly {
        SparseIntPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for SparseIntPoly {
            type Output = SparseIntPoly;
            fn $m(self, rhs: SparseIntPoly) -> SparseIntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub fn poly_add(p: &SparseIntPoly, q: &SparseIntPoly) -> SparseIntPoly {
    p + q
}

pub fn poly_sub(p: &SparseIntPoly, q: &SparseIntPoly) -> SparseIntPoly {
    p - q
}

pub fn poly_mul(p: &SparseIntPoly, q: &SparseIntPoly) -> SparseIntPoly {
    p * q
}

pub fn poly_divrem(p: &SparseIntPoly, d: &SparseIntPoly) -> Result<(SparseIntPoly, SparseIntPoly)> {
    p.divrem(d)
}

/// Descending exponents, e.g. `-x^6 + x^5 + x - 1`; `0` for the zero
/// polynomial.
impl fmt::Display for SparseIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<SparseIntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<SparseIntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `f`-th cyclotomic polynomial, memoised process-wide. Computed as
/// `(x^f - 1) / prod_{d | f, d < f} Phi_d`.
pub fn cyclotomic(f: u64) -> Result<Arc<SparseIntPoly>> {
    if f == 0 {
        return Err(Error::ZeroArgument);
    }
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&f) {
        return Ok(Arc::clone(p));
    }
    let mut p = SparseIntPoly::x_pow_minus_one(f);
    for d in divisors(f).into_iter().filter(|&d| d < f) {
        let (q, r) = p.divrem(&*cyclotomic(d)?)?;
        debug_assert!(r.is_zero());
        p = q;
    }
    debug_assert_eq!(p.degree(), Some(euler_phi(f)));
    let p = Arc::new(p);
    let mut cache = cyclotomic_cache().write().unwrap();
    Ok(Arc::clone(cache.entry(f).or_insert(p)))
}

/// `Phi_f | p`. The zero polynomial is divisible by everything.
pub fn divides_cyclotomic(f: u64, p: &SparseIntPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let (_, r) = p.divrem(&*cyclotomic(f)?)?;
    Ok(r.is_zero())
}

/// Divisors `f` of `n` such that `Phi_f` divides `p`, i.e. the orders of
/// the `n`-th roots of unity that are roots of `p`.
pub fn cyclotomic_root_filter(p: &SparseIntPoly, n: u64) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for f in divisors(n) {
        // exponents may be folded mod f without changing divisibility by Phi_f
        if divides_cyclotomic(f, &p.reduce_exponents_mod(f))? {
            out.insert(f);
        }
    }
    Ok(out)
}

/// `Q_{a,b}(x) = x^{2a+b} + x^{a+2b} + x^a + x^b - x^{2a+2b} - x^{2a} - x^{2b} - 1`.
pub fn q_poly(a: u64, b: u64) -> Result<SparseIntPoly> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams(format!(
            "Q needs a, b >= 1, got ({a}, {b})"
        )));
    }
    Ok(paired_poly(a, b, -1))
}

/// `R_{a,b}(x)`: as `Q_{a,b}` with every sign positive.
pub fn r_poly(a: u64, b: u64) -> Result<SparseIntPoly> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParams(format!(
            "R needs a, b >= 1, got ({a}, {b})"
        )));
    }
    Ok(paired_poly(a, b, 1))
}

fn paired_poly(a: u64, b: u64, sign: i64) -> SparseIntPoly {
    SparseIntPoly::from_terms([
        (1, 2 * a + b),
        (1, a + 2 * b),
        (1, a),
        (1, b),
        (sign, 2 * a + 2 * b),
        (sign, 2 * a),
        (sign, 2 * b),
        (sign, 0),
    ])
}

fn check_even(n: u64) -> Result<u64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidParams(format!(
            "n = {n} must be even and positive"
        )));
    }
    Ok(n / 2)
}

/// Witness polynomial for `T1(n, a, b)`:
/// `x^{2a+b} + x^{a+2b} + x^a + x^b - x^{n/2+2a} - x^{n/2+2b} - 2x^{n/2+a+b}`.
pub fn t1_witness_poly(n: u64, a: u64, b: u64) -> Result<SparseIntPoly> {
    let h = check_even(n)?;
    if a >= n || b >= n || a == b {
        return Err(Error::InvalidParams(format!(
            "T1 witness needs 0 <= a, b < {n}, a != b, got ({a}, {b})"
        )));
    }
    Ok(SparseIntPoly::from_terms([
        (1, 2 * a + b),
        (1, a + 2 * b),
        (1, a),
        (1, b),
        (-1, h + 2 * a),
        (-1, h + 2 * b),
        (-2, h + a + b),
    ]))
}

/// Witness polynomial for `T4(n, a, b)`:
/// `x^{2a+b} + x^{a+2b} + x^a + x^b - x^{n/2}(x^{2a+2b} + x^{2a} + x^{2b} + 1)`.
pub fn t4_witness_poly(n: u64, a: u64, b: u64) -> Result<SparseIntPoly> {
    let h = check_even(n)?;
    if a == 0 || b == 0 || a >= h || b >= h {
        return Err(Error::InvalidParams(format!(
            "T4 witness needs 1 <= a, b < {h}, got ({a}, {b})"
        )));
    }
    Ok(SparseIntPoly::from_terms([
        (1, 2 * a + b),
        (1, a + 2 * b),
        (1, a),
        (1, b),
        (-1, h + 2 * a + 2 * b),
        (-1, h + 2 * a),
        (-1, h + 2 * b),
        (-1, h),
    ]))
}

/// `sum c_j x^j` for a circulant first row.
pub fn representer_poly(coeffs: &[i64]) -> SparseIntPoly {
    SparseIntPoly::from_coeffs(coeffs)
}

/// Nullity of the circulant matrix with first row `coeffs`: the sum of
/// `phi(f)` over `f | n` with `Phi_f` dividing the representer.
pub fn circulant_nullity(coeffs: &[i64]) -> Result<usize> {
    if coeffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = coeffs.len() as u64;
    let roots = cyclotomic_root_filter(&representer_poly(coeffs), n)?;
    Ok(roots.into_iter().map(euler_phi).sum::<u64>() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> SparseIntPoly {
        SparseIntPoly::from_coeffs(coeffs)
    }

    #[test]
    fn ring_examples() {
        let x_plus = p(&[1, 1]);
        let x_minus = p(&[-1, 1]);
        assert_eq!(&x_plus * &x_minus, p(&[-1, 0, 1]));
        assert_eq!(&x_plus + &SparseIntPoly::zero(), x_plus);
        let a7p = SparseIntPoly::from_terms([(1, 7), (1, 0)]);
        let a7m = SparseIntPoly::from_terms([(1, 7), (-1, 0)]);
        assert_eq!(&a7p * &a7m, SparseIntPoly::x_pow_minus_one(14));
        assert!((&x_plus - &x_plus).is_zero());
        assert_eq!(SparseIntPoly::zero().degree(), None);
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = poly_divrem(&SparseIntPoly::x_pow_minus_one(3), &p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        let (q, r) = poly_divrem(&SparseIntPoly::monomial(1, 4), &p(&[1, 0, 1])).unwrap();
        assert_eq!(q, p(&[-1, 0, 1]));
        assert_eq!(r, SparseIntPoly::one());
        let (_, r) = poly_divrem(&q_poly(2, 4).unwrap(), &cyclotomic(2).unwrap()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_errors() {
        let x = p(&[0, 1]);
        assert!(matches!(
            x.divrem(&SparseIntPoly::zero()),
            Err(Error::ZeroDivisor)
        ));
        assert!(matches!(
            x.divrem(&p(&[1, 2])),
            Err(Error::NonMonicDivisor(_))
        ));
        // leading coefficient -1 is accepted
        let (q, r) = p(&[0, 0, 1]).divrem(&p(&[0, -1])).unwrap();
        assert_eq!(q, p(&[0, -1]));
        assert!(r.is_zero());
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(*cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        for prime in [2u64, 3, 5, 7, 11, 13, 97] {
            let expected = SparseIntPoly::from_terms((0..prime).map(|j| (1, j)));
            assert_eq!(*cyclotomic(prime).unwrap(), expected);
        }
        assert!(matches!(cyclotomic(0), Err(Error::ZeroArgument)));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}
        assert_eq!(cyclotomic(105).unwrap().coeff(7), BigInt::from(-2));
    }

    #[test]
    fn divisibility_examples() {
        assert!(!divides_cyclotomic(2, &q_poly(1, 1).unwrap()).unwrap());
        assert!(divides_cyclotomic(2, &r_poly(1, 1).unwrap()).unwrap());
        for a in 1..6 {
            for b in 1..6 {
                assert!(!divides_cyclotomic(3, &r_poly(a, b).unwrap()).unwrap());
            }
        }
        assert!(divides_cyclotomic(7, &SparseIntPoly::zero()).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let q = SparseIntPoly::from_terms([(1, 5), (1, 2)]);
        assert_eq!(q.reduce_exponents_mod(5), p(&[1, 0, 1]));
        let q = SparseIntPoly::from_terms([(1, 3), (-1, 1)]);
        assert!(q.reduce_exponents_mod(1).is_zero());
        assert!(q_poly(7, 14).unwrap().reduce_exponents_mod(7).is_zero());
    }

    #[test]
    fn q_and_r_examples() {
        assert_eq!(q_poly(1, 2).unwrap(), p(&[-1, 1, 0, 0, 0, 1, -1]));
        assert_eq!(q_poly(3, 5).unwrap(), q_poly(5, 3).unwrap());
        assert!(q_poly(1, 1).unwrap().eval(&BigInt::one()).is_zero());
        assert!(r_poly(1, 1).unwrap().eval(&BigInt::from(-1)).is_zero());
        assert_eq!(r_poly(2, 5).unwrap(), r_poly(5, 2).unwrap());
        assert_eq!(r_poly(1, 2).unwrap().eval(&BigInt::one()), BigInt::from(8));
        assert!(q_poly(0, 1).is_err());
    }

    #[test]
    fn t1_witness_examples() {
        let w = t1_witness_poly(6, 2, 4).unwrap();
        assert!(w.eval(&BigInt::one()).is_zero());
        // x^a (x^{b-a} + 1)(x^{n/2+a} - 1)(x^{n/2+b} - 1), folded mod x^n - 1
        let product = &(&SparseIntPoly::monomial(1, 2)
            * &SparseIntPoly::from_terms([(1, 2), (1, 0)]))
            * &(&SparseIntPoly::x_pow_minus_one(5) * &SparseIntPoly::x_pow_minus_one(7));
        assert_eq!(w.reduce_exponents_mod(6), product.reduce_exponents_mod(6));
        // (4, 0, 1): 1 + 2x + x^2 - x^2 - x^4 - 2x^3
        assert_eq!(t1_witness_poly(4, 0, 1).unwrap(), p(&[1, 2, 0, -2, -1]));
        assert!(t1_witness_poly(5, 0, 1).is_err());
        assert!(t1_witness_poly(6, 2, 2).is_err());
    }

    #[test]
    fn t4_witness_examples() {
        let w = t4_witness_poly(6, 1, 2).unwrap();
        assert!(w.eval(&BigInt::one()).is_zero());
        // -x^{a+b} * (-x^a - x^b - x^{-a} - x^{-b} + x^{h+a+b} + x^{h+a-b}
        //             + x^{h-a+b} + x^{h-a-b}), exponents taken mod n
        let (n, a, b, h) = (6i64, 1i64, 2i64, 3i64);
        let m = |e: i64| e.rem_euclid(n) as u64;
        let pre = SparseIntPoly::from_terms([
            (-1, m(a)),
            (-1, m(b)),
            (-1, m(-a)),
            (-1, m(-b)),
            (1, m(h + a + b)),
            (1, m(h + a - b)),
            (1, m(h - a + b)),
            (1, m(h - a - b)),
        ]);
        let scaled = &SparseIntPoly::monomial(-1, m(a + b)) * &pre;
        assert_eq!(w.reduce_exponents_mod(6), scaled.reduce_exponents_mod(6));
        // (4, 1, 1): 2x^3 + 2x - x^6 - 2x^4 - x^2
        assert_eq!(
            t4_witness_poly(4, 1, 1).unwrap(),
            p(&[0, 2, -1, 2, -2, 0, -1])
        );
        assert!(t4_witness_poly(6, 1, 3).is_err());
    }

    #[test]
    fn root_filter_examples() {
        let one: BTreeSet<u64> = [1].into();
        assert_eq!(cyclotomic_root_filter(&p(&[-1, 1]), 6).unwrap(), one);
        assert_eq!(
            cyclotomic_root_filter(&SparseIntPoly::x_pow_minus_one(6), 6).unwrap(),
            [1, 2, 3, 6].into()
        );
        assert_eq!(
            cyclotomic_root_filter(&t1_witness_poly(6, 2, 4).unwrap(), 6).unwrap(),
            one
        );
    }

    #[test]
    fn circulant_nullity_examples() {
        assert_eq!(circulant_nullity(&[0, 0, 0]).unwrap(), 3);
        assert_eq!(circulant_nullity(&[0, 1, 0, 1]).unwrap(), 2);
        // jumps {1, 2} on Z_4 is K_4
        assert_eq!(circulant_nullity(&[0, 1, 1, 1]).unwrap(), 0);
        assert!(matches!(circulant_nullity(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn display_format() {
        assert_eq!(q_poly(1, 2).unwrap().to_string(), "-x^6 + x^5 + x - 1");
        assert_eq!(SparseIntPoly::zero().to_string(), "0");
        assert_eq!(p(&[3, 0, -2]).to_string(), "-2*x^2 + 3");
        assert_eq!(p(&[-5]).to_string(), "-5");
    }
}
