//! Exact scalars: Laurent polynomials in `s` with rational coefficients.
//!
//! The loop parameter is `δ = s²`, so closed loops, the `1/√δ` factors of
//! the cup-padding builders and the `δ^{-k}` trace normalisations all live
//! in one ring. Arithmetic is exact; numeric evaluation happens only at the
//! very end via [`Scalar::evaluate`].

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_e · s^e` with `c_e ∈ ℚ`.
///
/// Canonical form: no stored coefficient is zero, so structural equality is
/// exact ring equality and the zero scalar is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<i64, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_rational(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar::monomial(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            0,
        )
    }

    /// The monomial `c · s^e`.
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Scalar { terms }
    }

    /// `s^e`.
    pub fn s_power(e: i64) -> Self {
        Scalar::monomial(BigRational::one(), e)
    }

    /// `δ^j = s^{2j}`.
    pub fn delta_power(j: i64) -> Self {
        Scalar::s_power(2 * j)
    }

    /// `δ = s²`.
    pub fn delta() -> Self {
        Scalar::delta_power(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Exponent/coefficient pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitutes `s = s0` and sums terms in ascending exponent order.
    pub fn evaluate(&self, s0: f64) -> Result<f64> {
        if s0.is_nan() || s0 <= 0.0 {
            return Err(Error::NonPositiveEvaluationPoint(s0));
        }
        let mut acc = 0.0;
        for (e, c) in self.iter() {
            let c = c.to_f64().expect("rational out of f64 range");
            acc += c * s0.powi(e as i32);
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Every `c·s^e` is a unit, so divisibility only depends on the
    /// polynomial parts after shifting both operands to minimum exponent 0.
    pub fn divide_exact(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let a_min = self.min_exponent().unwrap();
        let d_min = d.min_exponent().unwrap();
        let shift = |x: &Scalar, by: i64| Scalar {
            terms: x.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        };
        let mut rem = shift(self, -a_min);
        let div = shift(d, -d_min);
        let d_top = div.max_exponent().unwrap();
        let lead = div.terms[&d_top].clone();
        let mut quot = Scalar::zero();
        while !rem.is_zero() {
            let r_top = rem.max_exponent().unwrap();
            if r_top < d_top {
                return None;
            }
            let c = &rem.terms[&r_top] / &lead;
            let term = Scalar::monomial(c, r_top - d_top);
            rem -= &term * &div;
            quot += term;
        }
        let quot = shift(&quot, a_min - d_min);
        debug_assert_eq!(&quot * d, *self);
        Some(quot)
    }

    /// Strips the unit content: divides by `c·s^e` so the minimum exponent
    /// becomes 0 and the coefficients become coprime integers with a
    /// positive coefficient on the highest power.
    pub fn primitive_part(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let shift = self.min_exponent().unwrap();
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in self.iter() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.terms[&self.max_exponent().unwrap()].is_negative() {
            content = -content;
        }
        let unit = Scalar::monomial(content, shift);
        self.divide_exact(&unit).expect("unit content divides")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Textual form `c*s^e + ...` with exponents descending.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
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
            let coeff_is_one = mag.is_one();
            match (*e, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{e}")?,
                (_, false) => write!(f, "{mag}*s^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut out = Scalar::zero();
        let text = input.trim();
        if text.is_empty() {
            return Err(Error::parse("empty scalar"));
        }
        if text == "0" {
            return Ok(out);
        }
        // Split into signed terms; '-' binds to the following term except
        // directly after '^' (negative exponent) or '/' (never valid there).
        let chars: Vec<char> = text.chars().collect();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = false;
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
                let prev = cur.trim_end().chars().next_back();
                if prev != Some('^') && prev != Some('/') && prev != Some('*') {
                    pieces.push((sign, std::mem::take(&mut cur)));
                    sign = ch == '-';
                    i += 1;
                    continue;
                }
            }
            if (ch == '+' || ch == '-') && cur.trim().is_empty() && !cur.contains('-') {
                if ch == '-' {
                    sign = !sign;
                }
                i += 1;
                continue;
            }
            cur.push(ch);
            i += 1;
        }
        if !cur.trim().is_empty() {
            pieces.push((sign, cur));
        }
        for (neg, piece) in pieces {
            let piece = piece.trim();
            let (coeff_text, exp) = match piece.find('s') {
                None => (piece, 0i64),
                Some(pos) => {
                    let coeff = piece[..pos].trim().trim_end_matches('*').trim();
                    let rest = piece[pos + 1..].trim();
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        let rest = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::parse(format!("bad term '{piece}'")))?;
                        rest.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::parse(format!("bad exponent in '{piece}': {e}")))?
                    };
                    (coeff, exp)
                }
            };
            let coeff = if coeff_text.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coeff_text)?
            };
            let coeff = if neg { -coeff } else { coeff };
            out.insert_term(exp, coeff);
        }
        Ok(out)
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        None => {
            let n = BigInt::from_str(text)
                .map_err(|e| Error::parse(format!("bad coefficient '{text}': {e}")))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim())
                .map_err(|e| Error::parse(format!("bad numerator '{num}': {e}")))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|e| Error::parse(format!("bad denominator '{den}': {e}")))?;
            if d.is_zero() {
                return Err(Error::parse("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in rhs.iter() {
            self.insert_term(e, c.clone());
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in rhs.iter() {
            self.insert_term(e, -c.clone());
        }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in self.iter() {
            for (eb, cb) in rhs.iter() {
                out.insert_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul<&Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        &self * rhs
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut out = Scalar::zero();
        for x in iter {
            out += x;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_zero_and_cancellation() {
        assert!(Scalar::zero().is_zero());
        let x = s("s^2") - s("s^2");
        assert!(x.is_zero());
        assert_eq!(x, Scalar::zero());
    }

    #[test]
    fn ring_examples() {
        assert_eq!(s("s^2") + s("s^2"), s("2*s^2"));
        assert_eq!(s("s") * s("s"), Scalar::delta());
        assert_eq!(s("s^-2") * s("s^2"), Scalar::one());
    }

    #[test]
    fn delta_powers() {
        assert_eq!(Scalar::delta_power(0), Scalar::one());
        assert_eq!(Scalar::delta_power(-1), s("s^-2"));
        assert_eq!(Scalar::delta_power(2), s("s^4"));
    }

    #[test]
    fn evaluate_examples() {
        let sqrt2 = 2f64.sqrt();
        assert!((s("s^2").evaluate(sqrt2).unwrap() - 2.0).abs() < 1e-12);
        assert!((s("1 + s^-2").evaluate(1.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((s("2*s^4 + s^2").evaluate(sqrt2).unwrap() - 10.0).abs() < 1e-12);
        assert!(s("s").evaluate(0.0).is_err());
        assert!(s("s").evaluate(-1.0).is_err());
    }

    #[test]
    fn display_descending_and_roundtrip() {
        let x = s("s^2") * s("2") + s("-1") + s("s^-2") * s("1/2");
        assert_eq!(x.to_string(), "2*s^2 - 1 + 1/2*s^-2");
        assert_eq!(s(&x.to_string()), x);
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s("0"), Scalar::zero());
        assert_eq!(s("-s"), -Scalar::s_power(1));
    }

    #[test]
    fn exact_division() {
        let a = s("s^4 - 1");
        let b = s("s^2 - 1");
        assert_eq!(a.divide_exact(&b).unwrap(), s("s^2 + 1"));
        assert_eq!(a.divide_exact(&s("s^2")).unwrap(), s("s^2 - s^-2"));
        assert!(s("s^2 + 1").divide_exact(&s("s + 1")).is_none());
        assert!(a.divide_exact(&Scalar::zero()).is_none());
        assert_eq!(Scalar::zero().divide_exact(&b).unwrap(), Scalar::zero());
    }

    #[test]
    fn primitive_part_strips_units() {
        let x = s("4*s^3 + 2*s");
        assert_eq!(x.primitive_part(), s("2*s^2 + 1"));
        let y = s("-s^-2 - s^-4");
        assert_eq!(y.primitive_part(), s("s^2 + 1"));
    }
}
