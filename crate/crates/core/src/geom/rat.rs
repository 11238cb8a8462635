//! Rational scalars and small vector helpers.
//!
//! All scalar quantities in the crate are arbitrary-precision rationals,
//! always reduced with positive denominator (`BigRational` maintains both).

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Q = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(Int::from(num), Int::from(den))
}

pub fn qi(num: i64) -> Q {
    Q::from_integer(Int::from(num))
}

pub fn qvec(entries: &[i64]) -> Vec<Q> {
    entries.iter().map(|&e| qi(e)).collect()
}

/// Parses "p/q" or "p". Rejects zero denominators and garbage.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Int = num.parse().map_err(|_| bad())?;
    let den: Int = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Canonical "p/q" rendering; integers render without the denominator.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering with the given number of significant digits, computed
/// in integer arithmetic (round half away from zero).
pub fn to_decimal_sig(x: &Q, sig: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    // Find exponent e with 10^e <= a < 10^(e+1).
    let ten = Int::from(10);
    let mut e: i64 = 0;
    let mut lo = Q::one();
    if a >= Q::one() {
        while &a >= &(lo.clone() * Q::from_integer(ten.clone())) {
            lo *= Q::from_integer(ten.clone());
            e += 1;
        }
    } else {
        while &a < &lo {
            lo /= Q::from_integer(ten.clone());
            e -= 1;
        }
    }
    // digits = round(a * 10^(sig-1-e)), an integer with `sig` digits.
    let shift = sig as i64 - 1 - e;
    let scaled = a * pow10(shift);
    let digits = round_half_away(&scaled);
    let ds = digits.to_string();
    // Rounding can carry over to sig+1 digits (e.g. 999.5 -> 1000).
    let (ds, e) = if ds.len() as u32 > sig { (ds, e + 1) } else { (ds, e) };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < ds.len() {
        out.push_str(&ds[..=e as usize]);
        let frac = ds[e as usize + 1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else if e >= ds.len() as i64 {
        out.push_str(&ds);
        for _ in 0..(e + 1 - ds.len() as i64) {
            out.push('0');
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(ds.trim_end_matches('0'));
    }
    out
}

fn pow10(e: i64) -> Q {
    let ten = Q::from_integer(Int::from(10));
    let mut r = Q::one();
    for _ in 0..e.unsigned_abs() {
        r *= ten.clone();
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

fn round_half_away(x: &Q) -> Int {
    let two = Int::from(2);
    let num = x.numer();
    let den = x.denom();
    let (quot, rem) = (num / den, num % den);
    if (&rem * &two).magnitude() >= den.magnitude() {
        if num.sign() == Sign::Minus {
            quot - 1
        } else {
            quot + 1
        }
    } else {
        quot
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[Int], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| Q::from_integer(x.clone()) * y).sum()
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn norm_sq(a: &[Q]) -> Q {
    a.iter().map(|x| x * x).sum()
}

/// Scales a rational vector to a primitive integer vector pointing the same
/// way. Zero vectors are returned as zero.
pub fn primitive_integer(v: &[Q]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

/// Approximates sqrt(x) within `tol`: returns r with |r - sqrt(x)| <= tol.
/// Exact when x is a square of a rational. Requires x >= 0 and tol > 0.
pub fn sqrt_approx(x: &Q, tol: &Q) -> Result<Q> {
    if x.is_negative() {
        return Err(Error::InvalidInput("sqrt of negative".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if x.is_zero() {
        return Ok(Q::zero());
    }
    if let (Some(n), Some(d)) = (x.numer().sqrt_exact(), x.denom().sqrt_exact()) {
        return Ok(Q::new(n, d));
    }
    let one = Q::one();
    let mut lo = Q::zero();
    let mut hi = if x > &one { x.clone() } else { one };
    let two = qi(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((&lo + &hi) / two)
}

/// Decides sqrt(a) + sqrt(b) >= 2*sqrt(m) exactly (a, b, m >= 0).
///
/// Squaring twice: a + b + 2*sqrt(ab) >= 4m  <=>  c := 4m - a - b <= 0, or
/// c > 0 and 4ab >= c^2.
pub fn sqrt_midpoint_concave(a: &Q, b: &Q, m: &Q) -> bool {
    let c = qi(4) * m - a - b;
    if !c.is_positive() {
        return true;
    }
    qi(4) * a * b >= &c * &c
}

trait SqrtExact {
    fn sqrt_exact(&self) -> Option<Int>;
}

impl SqrtExact for Int {
    fn sqrt_exact(&self) -> Option<Int> {
        if self.is_negative() {
            return None;
        }
        let r = self.sqrt();
        if &(&r * &r) == self {
            Some(r)
        } else {
            None
        }
    }
}
