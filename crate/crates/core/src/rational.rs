//! Exact rationals and the few helpers the rest of the crate needs on top of
//! `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"7"`, `"-3/4"` or `" 2 / 6 "` (normalised to `1/3`).
pub fn parse(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {text:?}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in {text:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(p, q))
}

/// Canonical text form: `p/q` in lowest terms, or just `p` when `q = 1`.
pub fn render(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ceil_usize(r: &Rational) -> Option<usize> {
    if r.is_negative() {
        return Some(0);
    }
    r.ceil().to_integer().to_usize()
}

pub fn floor_usize(r: &Rational) -> Option<usize> {
    if r.is_negative() {
        return Some(0);
    }
    r.floor().to_integer().to_usize()
}

/// gcd of a set of rationals: `gcd(p_k * L / q_k) / L` where `L` is the lcm of
/// the denominators. Zeros are ignored; `None` when nothing nonzero remains.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let nonzero: Vec<&Rational> = values.into_iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let lcm = nonzero
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let g = nonzero.iter().fold(BigInt::zero(), |acc, v| {
        let scaled = v.numer() * (&lcm / v.denom());
        acc.gcd(&scaled)
    });
    Some(Rational::new(g, lcm))
}

/// Integer coefficients `c` with `sum c_k * xs[k] = gcd(xs)`. All `xs` must be
/// nonnegative-or-negative integers, not all zero.
pub fn bezout(xs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); xs.len()];
    for (k, x) in xs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = x.abs();
            coeffs[k] = x.signum();
            continue;
        }
        let e = g.extended_gcd(x);
        // e.gcd = e.x * g + e.y * x
        for c in coeffs.iter_mut().take(k) {
            *c = &*c * &e.x;
        }
        coeffs[k] = e.y;
        g = e.gcd;
    }
    (g, coeffs)
}
