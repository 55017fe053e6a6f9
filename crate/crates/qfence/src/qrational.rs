//! Continued fractions and q-rationals.
//!
//! A rational `r/t >= 1` in lowest terms has a unique even-length regular
//! continued fraction `[a1, ..., a2m]` (split the last term: `[.., a]` with
//! `a >= 2` becomes `[.., a-1, 1]`) and a unique negative one
//! `[[c1, ..., ck]]` with every `ci >= 2` past the first. The q-rational
//! `[r/t]_q = R(q)/T(q)` is computed three ways and cross-checked:
//!
//! * the nested q-deformation of the regular CF (alternating `q`/`q^-1`
//!   levels);
//! * the nested q-deformation of the negative CF;
//! * entries of `M_q(c1..ck) = R_q^c1 S_q ... R_q^ck S_q`, which equals the
//!   rank matrix of the fence composition `alpha(r/t) = (a1-1, a2, ...,
//!   a(2m-1), a2m - 1)`, so `R` is a fence rank polynomial and `T` the
//!   count of its ideals avoiding the leftmost node.
//!
//! The boundary rational `1/1` has even CF `[0, 1]` and no fence
//! composition; `q_rational` still works through the matrix route.

use std::fmt;

use crate::error::{Error, Result};
use crate::fence;
use crate::oriented::RankMatrix;
use crate::poset::Composition;
use crate::qpoly::{LaurentPoly, RatFunc};

/// A rational number `r/t >= 1` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    r: u64,
    t: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(r: u64, t: u64) -> Result<Self> {
        if t == 0 || r < t {
            return Err(Error::InvalidParams(format!(
                "need r/t >= 1 with t >= 1, got {r}/{t}"
            )));
        }
        if gcd(r, t) != 1 {
            return Err(Error::NotCoprime { r, t });
        }
        Ok(Rational { r, t })
    }

    /// Parses `"32/9"` or a bare integer `"5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (rs, ts) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let r: u64 = rs
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator `{rs}`")))?;
        let t: u64 = ts
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{ts}`")))?;
        Rational::new(r, t)
    }

    pub fn numer(&self) -> u64 {
        self.r
    }

    pub fn denom(&self) -> u64 {
        self.t
    }

    pub fn is_one(&self) -> bool {
        self.r == 1 && self.t == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.t)
    }
}

/// The even-length regular continued fraction of `x`. Every entry is
/// positive except that `1/1` is forced to `[0, 1]`.
pub fn expand_regular(x: &Rational) -> Vec<u64> {
    let (mut r, mut t) = (x.r, x.t);
    let mut cf = Vec::new();
    while t != 0 {
        cf.push(r / t);
        (r, t) = (t, r % t);
    }
    if cf.len() % 2 == 1 {
        let last = *cf.last().unwrap();
        if last >= 2 {
            *cf.last_mut().unwrap() = last - 1;
            cf.push(1);
        } else {
            // Only 1/1 reaches here: [1] has nothing to absorb into, so the
            // unique even-length form is [0, 1].
            cf.clear();
            cf.extend([0, 1]);
        }
    }
    cf
}

/// The negative (ceiling) continued fraction of `x`: all entries >= 2 past
/// the first, and the first is `ceil(r/t)`.
pub fn expand_negative(x: &Rational) -> Vec<u64> {
    let (mut r, mut t) = (x.r, x.t);
    let mut cf = Vec::new();
    loop {
        let c = r.div_ceil(t);
        cf.push(c);
        let rem = c * t - r;
        if rem == 0 {
            return cf;
        }
        (r, t) = (t, rem);
    }
}

/// Evaluates a regular continued fraction back to a rational.
pub fn evaluate_regular(cf: &[u64]) -> Result<Rational> {
    if cf.is_empty() {
        return Err(Error::Parse("empty continued fraction".into()));
    }
    let mut num: u128 = *cf.last().unwrap() as u128;
    let mut den: u128 = 1;
    for &a in cf.iter().rev().skip(1) {
        let next = (a as u128)
            .checked_mul(num)
            .and_then(|p| p.checked_add(den))
            .ok_or_else(|| Error::TooLarge {
                what: "continued fraction value",
                got: usize::MAX,
                limit: usize::MAX,
            })?;
        den = num;
        num = next;
    }
    let (r, t) = (
        u64::try_from(num).map_err(|_| Error::Parse("value exceeds u64".into()))?,
        u64::try_from(den).map_err(|_| Error::Parse("value exceeds u64".into()))?,
    );
    Rational::new(r, t)
}

/// Evaluates a negative continued fraction back to a rational.
pub fn evaluate_negative(cf: &[u64]) -> Result<Rational> {
    if cf.is_empty() {
        return Err(Error::Parse("empty continued fraction".into()));
    }
    let mut num: i128 = *cf.last().unwrap() as i128;
    let mut den: i128 = 1;
    for &c in cf.iter().rev().skip(1) {
        let next = (c as i128)
            .checked_mul(num)
            .and_then(|p| p.checked_sub(den))
            .ok_or_else(|| Error::TooLarge {
                what: "continued fraction value",
                got: usize::MAX,
                limit: usize::MAX,
            })?;
        den = num;
        num = next;
    }
    if num <= 0 || den <= 0 {
        return Err(Error::InvalidParams(
            "negative continued fraction does not evaluate to a rational >= 1".into(),
        ));
    }
    let (r, t) = (
        u64::try_from(num).map_err(|_| Error::Parse("value exceeds u64".into()))?,
        u64::try_from(den).map_err(|_| Error::Parse("value exceeds u64".into()))?,
    );
    Rational::new(r, t)
}

/// Converts an even-length regular CF to the negative CF of the same value:
/// `[a1, ..., a2m] -> [[a1+1, 2^(a2-1), a3+2, 2^(a4-1), ..., a(2m-1)+2,
/// 2^(a2m - 1)]]` (where `2^j` means j copies of 2).
pub fn regular_to_negative(cf: &[u64]) -> Result<Vec<u64>> {
    if cf.len() % 2 != 0 {
        return Err(Error::OddLength { len: cf.len() });
    }
    let m = cf.len() / 2;
    let mut out = vec![cf[0] + 1];
    for i in 0..m {
        let twos = cf[2 * i + 1] - 1;
        out.extend(std::iter::repeat(2).take(twos as usize));
        if i + 1 < m {
            out.push(cf[2 * i + 2] + 2);
        }
    }
    Ok(out)
}

/// The fence composition of `x = r/t > 1` (and of `2/1 = (0,0)`):
/// `(a1 - 1, a2, ..., a(2m-1), a2m - 1)` from the even regular CF. The
/// boundary rational `1/1` has none.
pub fn alpha_of(x: &Rational) -> Result<Composition> {
    if x.is_one() {
        return Err(Error::InvalidParams(
            "1/1 has no fence composition (its even continued fraction is [0, 1])".into(),
        ));
    }
    let cf = expand_regular(x);
    let mut parts: Vec<u32> = Vec::with_capacity(cf.len());
    for (i, &a) in cf.iter().enumerate() {
        let adjusted = if i == 0 || i == cf.len() - 1 { a - 1 } else { a };
        parts.push(
            u32::try_from(adjusted).map_err(|_| Error::TooLarge {
                what: "composition part",
                got: usize::MAX,
                limit: u32::MAX as usize,
            })?,
        );
    }
    Composition::new(parts)
}

/// `M_q(c1, ..., ck) = R_q^c1 S_q R_q^c2 S_q ... R_q^ck S_q`.
pub fn matrix_m(negative_cf: &[u64]) -> Result<RankMatrix> {
    if negative_cf.is_empty() {
        return Err(Error::Parse("empty continued fraction".into()));
    }
    let r = RankMatrix::r_q();
    let s = RankMatrix::s_q();
    let mut acc = RankMatrix::identity();
    for &c in negative_cf {
        let e = u32::try_from(c).map_err(|_| Error::TooLarge {
            what: "matrix exponent",
            got: usize::MAX,
            limit: u32::MAX as usize,
        })?;
        acc = &(&acc * &r.pow(e)) * &s;
    }
    Ok(acc)
}

/// `M_q^+(a1, ..., a2m) = R_q^a1 (R_q S_q R_q)^a2 R_q^a3 ...` for the
/// even-length regular CF.
pub fn matrix_m_plus(regular_cf: &[u64]) -> Result<RankMatrix> {
    if regular_cf.len() % 2 != 0 {
        return Err(Error::OddLength {
            len: regular_cf.len(),
        });
    }
    let r = RankMatrix::r_q();
    let rsr = &(&r * &RankMatrix::s_q()) * &r;
    let mut acc = RankMatrix::identity();
    for (i, &a) in regular_cf.iter().enumerate() {
        let e = u32::try_from(a).map_err(|_| Error::TooLarge {
            what: "matrix exponent",
            got: usize::MAX,
            limit: u32::MAX as usize,
        })?;
        let base = if i % 2 == 0 { &r } else { &rsr };
        acc = &acc * &base.pow(e);
    }
    Ok(acc)
}

/// Nested q-deformation of a regular CF: odd levels contribute
/// `[a]_q + q^a / next`, even levels `[a]_(q^-1) + q^-a / next`, the last
/// level being an even one.
pub fn nested_regular_form(cf: &[u64]) -> Result<RatFunc> {
    if cf.is_empty() || cf.len() % 2 != 0 {
        return Err(Error::OddLength { len: cf.len() });
    }
    let mut acc: Option<RatFunc> = None;
    for (i, &a) in cf.iter().enumerate().rev() {
        let a = a as i64;
        // 1-indexed level parity: cf[i] is level i+1.
        let odd_level = i % 2 == 0;
        let (head, shift) = if odd_level {
            (LaurentPoly::q_int(a), LaurentPoly::q_power(a))
        } else {
            (
                LaurentPoly::q_int(a).inverted_variable(),
                LaurentPoly::q_power(-a),
            )
        };
        acc = Some(match acc {
            None => RatFunc::from_poly(head),
            Some(tail) => {
                // head + shift / tail
                let inv = RatFunc::new(&shift * tail.den(), tail.num().clone())?;
                RatFunc::from_poly(head).add(&inv)
            }
        });
    }
    Ok(acc.expect("nonempty"))
}

/// Nested q-deformation of a negative CF: `[c]_q - q^(c-1) / next` at every
/// level.
pub fn nested_negative_form(cf: &[u64]) -> Result<RatFunc> {
    if cf.is_empty() {
        return Err(Error::Parse("empty continued fraction".into()));
    }
    let mut acc: Option<RatFunc> = None;
    for &c in cf.iter().rev() {
        let c = c as i64;
        let head = LaurentPoly::q_int(c);
        let shift = LaurentPoly::q_power(c - 1);
        acc = Some(match acc {
            None => RatFunc::from_poly(head),
            Some(tail) => {
                let sub = RatFunc::new(&shift * tail.den(), tail.num().clone())?;
                RatFunc::from_poly(head).sub(&sub)
            }
        });
    }
    Ok(acc.expect("nonempty"))
}

/// The q-deformation `[r/t]_q = R(q)/T(q)`.
#[derive(Clone, Debug)]
pub struct QRational {
    pub rational: Rational,
    pub regular_cf: Vec<u64>,
    pub negative_cf: Vec<u64>,
    /// The fence composition, absent only for `1/1`.
    pub alpha: Option<Composition>,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// Computes `[r/t]_q`, cross-checking the two nested CF forms against the
/// matrix entries. `R` and `T` are read off `M_q(negative CF)`: the top-left
/// and bottom-left entries, which for `r > t` are the rank polynomial of the
/// fence of `alpha(r/t)` and the count of its ideals avoiding the leftmost
/// node.
pub fn q_rational(x: &Rational) -> Result<QRational> {
    let regular_cf = expand_regular(x);
    let negative_cf = expand_negative(x);
    let m = matrix_m(&negative_cf)?;
    let num = m.entry(0, 0).clone();
    let den = m.entry(1, 0).clone();
    if den.is_zero() {
        return Err(Error::InternalMismatch(format!(
            "T(q) vanished for {x}"
        )));
    }
    let as_fraction = RatFunc::new(num.clone(), den.clone())?;
    let reg_form = nested_regular_form(&regular_cf)?;
    let neg_form = nested_negative_form(&negative_cf)?;
    if reg_form != as_fraction {
        return Err(Error::InternalMismatch(format!(
            "regular nested form of {x} disagrees with the matrix entries"
        )));
    }
    if neg_form != as_fraction {
        return Err(Error::InternalMismatch(format!(
            "negative nested form of {x} disagrees with the matrix entries"
        )));
    }
    let alpha = if x.is_one() { None } else { Some(alpha_of(x)?) };
    Ok(QRational {
        rational: *x,
        regular_cf,
        negative_cf,
        alpha,
        num,
        den,
    })
}

/// Everything the two trace theorems assert for one rational, checked
/// exactly. Undefined for `1/1`, which has no fence composition.
#[derive(Clone, Debug)]
pub struct TraceTheoremReport {
    pub rational: Rational,
    pub alpha: Composition,
    /// `M_q(negative CF)` equals the fence rank matrix of `alpha` entrywise.
    pub m_equals_rank_matrix: bool,
    /// `M_q^+(regular CF)` equals `rank_matrix(alpha) * U0` entrywise.
    pub m_plus_equals_shifted: bool,
    /// `tr M_q` equals the circular rank of `(a1 - 1, a2, ..., a2m)`.
    pub trace_m_matches: bool,
    /// `tr M_q^+` equals the circular rank of `(a1, ..., a2m)`.
    pub trace_m_plus_matches: bool,
    pub trace_m: LaurentPoly,
    pub trace_m_plus: LaurentPoly,
}

impl TraceTheoremReport {
    pub fn all_hold(&self) -> bool {
        self.m_equals_rank_matrix
            && self.m_plus_equals_shifted
            && self.trace_m_matches
            && self.trace_m_plus_matches
    }
}

pub fn trace_theorems(x: &Rational) -> Result<TraceTheoremReport> {
    if x.is_one() {
        return Err(Error::InvalidParams(
            "trace theorems are stated for r/t > 1 (1/1 has no fence composition)".into(),
        ));
    }
    let regular_cf = expand_regular(x);
    let negative_cf = expand_negative(x);
    let alpha = alpha_of(x)?;
    let m = matrix_m(&negative_cf)?;
    let m_plus = matrix_m_plus(&regular_cf)?;
    let rank_matrix = fence::rank_matrix_of(&alpha)?;
    let m_equals_rank_matrix = m == rank_matrix;
    let m_plus_equals_shifted = m_plus == &rank_matrix * &RankMatrix::up_step();

    let to_u32 = |v: u64| u32::try_from(v).expect("CF entry fits in u32 for in-range inputs");
    let mut trace_comp: Vec<u32> = regular_cf.iter().map(|&a| to_u32(a)).collect();
    trace_comp[0] -= 1;
    let trace_m_expected = fence::circular_rank(&Composition::new(trace_comp)?)?;
    let plus_comp: Vec<u32> = regular_cf.iter().map(|&a| to_u32(a)).collect();
    let trace_m_plus_expected = fence::circular_rank(&Composition::new(plus_comp)?)?;

    let trace_m = m.trace();
    let trace_m_plus = m_plus.trace();
    Ok(TraceTheoremReport {
        rational: *x,
        alpha,
        m_equals_rank_matrix,
        m_plus_equals_shifted,
        trace_m_matches: trace_m == trace_m_expected,
        trace_m_plus_matches: trace_m_plus == trace_m_plus_expected,
        trace_m,
        trace_m_plus,
    })
}

/// A trace of `M_q` exhibiting failure of unimodality (or, for the
/// first family, even of symmetry-with-full-support).
#[derive(Clone, Debug)]
pub struct TraceCounterexample {
    pub label: String,
    pub negative_cf: Vec<u64>,
    pub trace: LaurentPoly,
    pub expected: LaurentPoly,
    pub matches_expected: bool,
    pub symmetric: bool,
    pub unimodal: bool,
}

/// `tr M_q(2, 2, ..., 2)` (k twos, k >= 2) collapses to `1 + q^k`: the
/// closed k-chain.
pub fn counterexample_all_twos(k: usize) -> Result<TraceCounterexample> {
    if k < 2 {
        return Err(Error::InvalidParams("need k >= 2 twos".into()));
    }
    let cf = vec![2u64; k];
    let trace = matrix_m(&cf)?.trace();
    let expected = &LaurentPoly::one() + &LaurentPoly::q_power(k as i64);
    Ok(TraceCounterexample {
        label: format!("all-twos(k={k})"),
        negative_cf: cf,
        matches_expected: trace == expected,
        symmetric: trace.is_symmetric(),
        unimodal: trace.is_unimodal(),
        trace,
        expected,
    })
}

fn pair_expected(n: u32) -> LaurentPoly {
    // 1, 2, ..., n+1, n, n+1, ..., 2, 1 — the dip sits at degree n+1.
    let n = n as i64;
    let mut coeffs: Vec<i64> = (1..=n + 1).collect();
    coeffs.push(n);
    coeffs.extend((1..=n + 1).rev());
    LaurentPoly::from_int_coeffs(0, &coeffs)
}

/// `tr M_q(n+2, n+2)` (n >= 1): symmetric but with a dip at degree `n+1`,
/// hence never unimodal.
pub fn counterexample_pair(n: u32) -> Result<TraceCounterexample> {
    if n < 1 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let cf = vec![(n + 2) as u64; 2];
    let trace = matrix_m(&cf)?.trace();
    let expected = pair_expected(n);
    Ok(TraceCounterexample {
        label: format!("pair(n={n})"),
        negative_cf: cf,
        matches_expected: trace == expected,
        symmetric: trace.is_symmetric(),
        unimodal: trace.is_unimodal(),
        trace,
        expected,
    })
}

/// `tr M_q(2^(n-1), 3, 2^(n-1), 3)` (n >= 1) — a different word with the
/// same non-unimodal trace as [`counterexample_pair`].
pub fn counterexample_pair_sparse(n: u32) -> Result<TraceCounterexample> {
    if n < 1 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let mut cf = Vec::new();
    for _ in 0..2 {
        cf.extend(std::iter::repeat(2u64).take((n - 1) as usize));
        cf.push(3);
    }
    let trace = matrix_m(&cf)?.trace();
    let expected = pair_expected(n);
    Ok(TraceCounterexample {
        label: format!("pair-sparse(n={n})"),
        negative_cf: cf,
        matches_expected: trace == expected,
        symmetric: trace.is_symmetric(),
        unimodal: trace.is_unimodal(),
        trace,
        expected,
    })
}
