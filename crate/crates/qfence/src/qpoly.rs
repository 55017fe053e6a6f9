//! Exact Laurent polynomials in one variable `q` over arbitrary-precision
//! integers, plus a thin formal-fraction layer on top of them.
//!
//! [`LaurentPoly`] stores a dense coefficient block together with the degree
//! of its lowest term, so `q^-2 + 3 + q` is `{ min_deg: -2, coeffs: [1, 0, 3, 1] }`.
//! The representation is canonical: the zero polynomial is
//! `{ min_deg: 0, coeffs: [] }`, and any nonzero polynomial has nonzero first
//! and last coefficients. Structural equality therefore coincides with
//! mathematical equality.
//!
//! [`RatFunc`] is a numerator/denominator pair compared only by
//! cross-multiplication; it never cancels common factors, because exactness
//! of every identity in this crate is established without gcd computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    min_deg: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    /// `c * q^deg`.
    pub fn monomial(deg: i64, c: BigInt) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly {
                min_deg: deg,
                coeffs: vec![c],
            }
        }
    }

    /// `q^deg`.
    pub fn q_power(deg: i64) -> Self {
        LaurentPoly::monomial(deg, BigInt::one())
    }

    /// Builds a polynomial from the coefficient of `q^min_deg` upward,
    /// normalizing to canonical form.
    pub fn from_coeffs(min_deg: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_deg, coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine-integer coefficients.
    pub fn from_int_coeffs(min_deg: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_coeffs(min_deg, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The q-integer `[n]_q`.
    ///
    /// For `n > 0` this is `1 + q + ... + q^(n-1)`; `[0]_q = 0`; and for
    /// `n < 0` it is `-q^-1 - q^-2 - ... - q^n`, so that
    /// `[n]_q = (q^n - 1)/(q - 1)` holds for every integer `n`.
    pub fn q_int(n: i64) -> Self {
        use std::cmp::Ordering;
        match n.cmp(&0) {
            Ordering::Equal => LaurentPoly::zero(),
            Ordering::Greater => LaurentPoly {
                min_deg: 0,
                coeffs: vec![BigInt::one(); n as usize],
            },
            Ordering::Less => LaurentPoly {
                min_deg: n,
                coeffs: vec![-BigInt::one(); (-n) as usize],
            },
        }
    }

    fn normalize(&mut self) {
        let first_nonzero = self.coeffs.iter().position(|c| !c.is_zero());
        match first_nonzero {
            None => {
                self.coeffs.clear();
                self.min_deg = 0;
            }
            Some(lo) => {
                let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(hi + 1);
                if lo > 0 {
                    self.coeffs.drain(..lo);
                    self.min_deg += lo as i64;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the lowest term. Zero polynomial reports 0.
    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// Degree of the highest term. Zero polynomial reports 0.
    pub fn max_deg(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.min_deg + self.coeffs.len() as i64 - 1
        }
    }

    /// The coefficient of `q^deg`.
    pub fn coeff(&self, deg: i64) -> BigInt {
        if self.is_zero() || deg < self.min_deg {
            return BigInt::zero();
        }
        let idx = (deg - self.min_deg) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Dense coefficients from `min_deg()` to `max_deg()` inclusive.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Multiplies by an integer constant.
    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Reverses the coefficient sequence over the same support:
    /// `q^(min+max) * p(1/q)`. An ideal-counting polynomial of a poset maps
    /// to the one of the flipped poset under this operation.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs,
        }
    }

    /// Substitutes `q -> 1/q`, producing `p(q^-1)`.
    pub fn inverted_variable(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            min_deg: -self.max_deg(),
            coeffs,
        }
    }

    /// True when the coefficient sequence is a palindrome over its support.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// True when the coefficient sequence (including interior zeros) weakly
    /// increases and then weakly decreases. The zero polynomial is unimodal.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 0;
        while i + 1 < c.len() && c[i] <= c[i + 1] {
            i += 1;
        }
        while i + 1 < c.len() && c[i] >= c[i + 1] {
            i += 1;
        }
        i + 1 >= c.len()
    }

    /// Exact division: returns `self / d` if it exists over the integers,
    /// and [`Error::NotDivisible`] otherwise (including division by zero of
    /// a nonzero polynomial; `0 / 0` is rejected too).
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(Error::NotDivisible);
        }
        // Long division from the top degree on the dense blocks; the
        // min_deg bookkeeping is a final shift.
        let mut rem = self.coeffs.clone();
        let dc = &d.coeffs;
        let dlead = dc.last().unwrap();
        let qlen = rem.len() - dc.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + dc.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, r) = num_integer_div_rem(&top, dlead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (i, dci) in dc.iter().enumerate() {
                let prod = dci * &qk;
                rem[k + i] -= prod;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(LaurentPoly::from_coeffs(self.min_deg - d.min_deg, quot))
    }

    /// Evaluates at `q = 1` (the sum of all coefficients).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut n = n;
        let mut acc = LaurentPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Renders with LaTeX-style braced exponents: `1 + 3q + 5q^{2}`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = self.min_deg + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = if mag.is_one() && deg != 0 {
                String::new()
            } else {
                mag.to_string()
            };
            out.push_str(&coeff_part);
            if deg != 0 {
                out.push('q');
                if deg != 1 {
                    if latex {
                        out.push_str(&format!("^{{{deg}}}"));
                    } else {
                        out.push_str(&format!("^{deg}"));
                    }
                }
            }
        }
        out
    }
}

/// `div_rem` on BigInt without pulling in the num-integer crate for one call.
fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_deg.min(rhs.min_deg);
        let hi = self.max_deg().max(rhs.max_deg());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_deg - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_deg - lo) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        // Leading/trailing coefficients are products of nonzero integers, so
        // no trimming is possible, but normalize anyway for safety.
        LaurentPoly::from_coeffs(self.min_deg + rhs.min_deg, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Serialized shape: `{"min_deg": -2, "coeffs": ["1", "0", "3"]}` with
/// coefficients as decimal strings so arbitrary precision survives JSON.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    min_deg: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for s in &repr.coeffs {
            let c: BigInt = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient `{s}`")))?;
            coeffs.push(c);
        }
        Ok(LaurentPoly::from_coeffs(repr.min_deg, coeffs))
    }
}

/// A formal fraction of Laurent polynomials.
///
/// Equality is decided purely by cross-multiplication; numerators and
/// denominators are never reduced. The denominator is always nonzero.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, rhs: &RatFunc) -> Self {
        RatFunc {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> Self {
        RatFunc {
            num: &self.num * &rhs.den - &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> Self {
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::InvalidParams("division by zero fraction".into()));
        }
        Ok(RatFunc {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        })
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
