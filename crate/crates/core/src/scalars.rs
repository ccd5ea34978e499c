//! Exact arithmetic in the base field `K = Q(q)` with `q` a formal
//! transcendental.
//!
//! Elements are ratios of Laurent polynomials in `q` with rational
//! coefficients, kept in a unique canonical form so that equality is
//! structural.  There is no floating point anywhere: every identity the rest
//! of the library checks is exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// A Laurent polynomial in `q` over the rationals.
///
/// Maps each integer exponent to a nonzero rational coefficient; the empty
/// map is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::qpow(0)
    }

    /// The monomial `q^e`.
    pub fn qpow(e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, BigRational::one());
        LaurentPoly { coeffs }
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.coeffs.insert(0, c);
        }
        p
    }

    pub fn term(c: BigRational, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    /// Lowest exponent with nonzero coefficient; `None` for zero.
    pub fn lowest_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient; `None` for zero.
    pub fn highest_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    /// Multiply by the monomial `c * q^e` in place.
    pub fn scale(&mut self, c: &BigRational, e: i64) {
        if c.is_zero() {
            self.coeffs.clear();
            return;
        }
        let old = std::mem::take(&mut self.coeffs);
        for (k, v) in old {
            self.coeffs.insert(k + e, v * c);
        }
    }

    /// True when the polynomial is a single term `c * q^e`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, &-c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

/// Euclidean remainder of ordinary polynomials in `q` (both inputs must have
/// lowest exponent >= 0).
fn poly_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(!b.is_zero());
    let mut r = a.clone();
    let db = b.highest_exp().unwrap();
    let lb = b.coeff(db);
    while !r.is_zero() {
        let dr = r.highest_exp().unwrap();
        if dr < db {
            break;
        }
        let factor = r.coeff(dr) / &lb;
        // r -= factor * q^(dr-db) * b
        for (e, c) in &b.coeffs {
            r.add_term(e + dr - db, &-(c * &factor));
        }
    }
    r
}

/// Monic gcd of two ordinary polynomials in `q` (lowest exponents >= 0).
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = x.highest_exp() {
        let lead = x.coeff(d);
        let inv = BigRational::one() / lead;
        x.scale(&inv, 0);
    }
    x
}

/// An element of `Q(q)` in canonical form.
///
/// Canonical representative: `den` is an ordinary polynomial with constant
/// term present (lowest exponent 0) and leading coefficient 1, and the
/// numerator shifted so that `gcd(num', den) = 1` where `num'` is `num` with
/// its lowest power of `q` cleared.  The representative is unique, so
/// equality is derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Scalar {
        assert!(!den.is_zero(), "scalar denominator is zero");
        if num.is_zero() {
            return Scalar {
                num,
                den: LaurentPoly::one(),
            };
        }
        // Shift both to ordinary polynomials, remembering the q-power.
        let vn = num.lowest_exp().unwrap();
        let vd = den.lowest_exp().unwrap();
        let mut n = num;
        n.scale(&BigRational::one(), -vn);
        let mut d = den;
        d.scale(&BigRational::one(), -vd);
        let g = poly_gcd(&n, &d);
        if g.highest_exp() != Some(0) {
            n = exact_div(&n, &g);
            d = exact_div(&d, &g);
        }
        // Make the denominator monic, absorb everything else into num.
        let lead = d.coeff(d.highest_exp().unwrap());
        if !lead.is_one() {
            let inv = BigRational::one() / &lead;
            n.scale(&inv, 0);
            d.scale(&inv, 0);
        }
        n.scale(&BigRational::one(), vn - vd);
        Scalar { num: n, den: d }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    /// `q^e`.
    pub fn qpow(e: i64) -> Scalar {
        Scalar {
            num: LaurentPoly::qpow(e),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(c: BigRational) -> Scalar {
        Scalar {
            num: LaurentPoly::from_rational(c),
            den: LaurentPoly::one(),
        }
    }

    /// `c * q^e`.
    pub fn monomial(c: BigRational, e: i64) -> Scalar {
        Scalar {
            num: LaurentPoly::term(c, e),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == LaurentPoly::one() && self.den == LaurentPoly::one()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// If this scalar is a plain power `q^e`, return `e`.
    pub fn as_qpow(&self) -> Option<i64> {
        if self.den == LaurentPoly::one() {
            if let Some((e, c)) = self.num.as_monomial() {
                if c.is_one() {
                    return Some(e);
                }
            }
        }
        None
    }

    /// Rough size measure used for pivot selection in linear solves.
    pub fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }
}

/// Exact quotient of ordinary polynomials; panics if the division is not
/// exact (callers divide by a known gcd factor).
fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(!b.is_zero());
    let mut r = a.clone();
    let mut out = LaurentPoly::zero();
    let db = b.highest_exp().unwrap();
    let lb = b.coeff(db);
    while !r.is_zero() {
        let dr = r.highest_exp().unwrap();
        assert!(dr >= db, "inexact polynomial division");
        let factor = r.coeff(dr) / &lb;
        out.add_term(dr - db, &factor);
        for (e, c) in &b.coeffs {
            r.add_term(e + dr - db, &-(c * &factor));
        }
    }
    out
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &-rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // Fast path: multiplying by c*q^e needs no gcd work.
        if rhs.den == LaurentPoly::one() {
            if let Some((e, c)) = rhs.num.as_monomial() {
                let mut out = self.clone();
                out.num.scale(c, e);
                return out;
            }
        }
        if self.den == LaurentPoly::one() {
            if let Some((e, c)) = self.num.as_monomial() {
                let mut out = rhs.clone();
                out.num.scale(c, e);
                return out;
            }
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
