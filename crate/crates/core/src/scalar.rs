//! Exact arithmetic in the rational subfield of `Q_2`.

use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A 2-adic valuation, `+inf` for zero.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// `2^-v`, with `0` for infinity.
    pub fn abs(self) -> Dyadic {
        match self {
            Valuation::Finite(v) => Dyadic::two_pow(-v),
            Valuation::Infinite => Dyadic::zero(),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// An exact rational number viewed inside `Q_2`.
///
/// Always stored in lowest terms with a positive denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dyadic(BigRational);

/// `v2(n)` for a nonzero integer.
pub fn v2_int(n: &BigInt) -> i64 {
    n.trailing_zeros().map(|t| t as i64).unwrap_or(0)
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic(BigRational::zero())
    }

    pub fn one() -> Self {
        Dyadic(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic(BigRational::from_integer(n.into()))
    }

    /// `num/den`; fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Dyadic(BigRational::new(num.into(), den)))
    }

    /// `num/den` for small literals. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Dyadic::new(num, den).expect("nonzero denominator")
    }

    pub fn from_rational(r: BigRational) -> Self {
        Dyadic(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The scalar lies in `Z_2` exactly when its reduced denominator is odd.
    pub fn in_z2(&self) -> bool {
        self.denom().is_odd()
    }

    /// A unit of `Z_2`: odd numerator and odd denominator.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.numer().is_odd() && self.denom().is_odd()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(v2_int(self.numer()) - v2_int(self.denom()))
        }
    }

    /// The 2-adic absolute value `2^-v2(r)`.
    pub fn abs2(&self) -> Dyadic {
        self.valuation().abs()
    }

    /// Returns `(v2(r), |r|_2)`.
    pub fn valuation_and_abs(&self) -> (Valuation, Dyadic) {
        let v = self.valuation();
        (v, v.abs())
    }

    /// Reduction `Z_2 -> F_2`, i.e. `num * den^-1 mod 2`.
    pub fn mod2(&self) -> Result<bool> {
        if !self.in_z2() {
            return Err(Error::NotInZ2(self.to_string()));
        }
        Ok(self.numer().is_odd())
    }

    pub fn two_pow(e: i64) -> Dyadic {
        let p = BigInt::one() << (e.unsigned_abs() as usize);
        if e >= 0 {
            Dyadic::from_int(p)
        } else {
            Dyadic(BigRational::new(BigInt::one(), p))
        }
    }

    pub fn pow(&self, e: u32) -> Dyadic {
        Dyadic(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn inv(&self) -> Option<Dyadic> {
        if self.is_zero() {
            None
        } else {
            Some(Dyadic(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// The first `k` digits of the 2-adic expansion, least significant first,
    /// as `(shift, digits)` with `self = 2^shift * sum digits[i] 2^i mod 2^(shift + k)`
    /// and `shift = min(0, v2(self))`.
    pub fn two_adic_digits(&self, k: u32) -> (i64, alloc::vec::Vec<u8>) {
        let shift = self.valuation().finite().unwrap_or(0).min(0);
        let y = self * &Dyadic::two_pow(-shift);
        let modulus = BigInt::one() << k;
        // Newton iteration for the inverse of the odd denominator mod 2^k.
        let den = y.denom().mod_floor(&modulus);
        let mut inv = BigInt::one();
        let mut prec = 1;
        while prec < k.max(1) {
            inv = (&inv * (BigInt::from(2) - &den * &inv)).mod_floor(&modulus);
            prec *= 2;
        }
        let mut n = (y.numer() * inv).mod_floor(&modulus);
        let two = BigInt::from(2);
        let digits = (0..k)
            .map(|_| {
                let (q, r) = n.div_rem(&two);
                n = q;
                if r.is_zero() { 0 } else { 1 }
            })
            .collect();
        (shift, digits)
    }

    /// Scale a list of rationals to a primitive integer vector (gcd of numerators 1,
    /// no denominators) whose first nonzero entry is positive.
    pub fn primitive(v: &[Dyadic]) -> alloc::vec::Vec<Dyadic> {
        let mut lcm = BigInt::one();
        for x in v {
            lcm = lcm.lcm(x.denom());
        }
        let ints: alloc::vec::Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return v.to_vec();
        }
        let first_neg = ints
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.sign() == Sign::Minus)
            .unwrap_or(false);
        if first_neg {
            g = -g;
        }
        ints.into_iter().map(|x| Dyadic::from_int(x / &g)).collect()
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                Dyadic(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &'a Dyadic) -> Dyadic {
                Dyadic(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &'a Dyadic) -> Dyadic {
                Dyadic((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                Dyadic((&self.0).$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for BigRational.
forward_binop!(Div, div);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic(-self.0)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic(-&self.0)
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Dyadic> for Dyadic {
    fn mul_assign(&mut self, rhs: &Dyadic) {
        self.0 *= &rhs.0;
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `p` or `p/q` with decimal big integers and an optional leading minus.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num = parse_int(num, true).ok_or_else(bad)?;
        let den = match den {
            Some(d) => parse_int(d, false).ok_or_else(bad)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(Dyadic(BigRational::new(num, den)))
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// `C(n, k)` for `n >= 0`; zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomial(n));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    Ok(binomial(n as u64, k as u64))
}

/// Infallible `C(n, k)` on naturals.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // u128 is exact while the running product stays below 2^120
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(p) if p < (1u128 << 120) => acc = p / (i as u128 + 1),
            _ => return binomial_big(n, k),
        }
    }
    BigInt::from(acc)
}

fn binomial_big(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `v2(C(n, k))`, `None` when the coefficient vanishes.
pub fn binom_valuation(n: u64, k: u64) -> Option<u32> {
    if k > n {
        return None;
    }
    // Kummer: the number of carries when adding k and n - k in base 2.
    Some(carries(k, n - k))
}

fn carries(a: u64, b: u64) -> u32 {
    let mut carry = 0u64;
    let mut count = 0;
    let (mut a, mut b) = (a, b);
    while a > 0 || b > 0 || carry > 0 {
        let s = (a & 1) + (b & 1) + carry;
        carry = s >> 1;
        if carry == 1 {
            count += 1;
        }
        a >>= 1;
        b >>= 1;
    }
    count
}

impl PartialOrd<i64> for Dyadic {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

impl PartialEq<i64> for Dyadic {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_adic_expansions() {
        // -1 = ...1111, 1/3 = ...0101 1011 (1/3 * 3 = 1 mod 2^8: 171 = 0b10101011)
        assert_eq!(Dyadic::from(-1).two_adic_digits(4), (0, alloc::vec![1, 1, 1, 1]));
        assert_eq!(Dyadic::ratio(1, 3).two_adic_digits(8), (0, alloc::vec![1, 1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(Dyadic::ratio(3, 4).two_adic_digits(3), (-2, alloc::vec![1, 1, 0]));
        assert_eq!(Dyadic::from(12).two_adic_digits(5), (0, alloc::vec![0, 0, 1, 1, 0]));
    }

    fn q(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(q("24").valuation_and_abs(), (Valuation::Finite(3), q("1/8")));
        assert_eq!(q("1/3").valuation_and_abs(), (Valuation::Finite(0), q("1")));
        assert_eq!(q("0").valuation_and_abs(), (Valuation::Infinite, q("0")));
        assert_eq!(q("-5/12").valuation(), Valuation::Finite(-2));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(4, 3).unwrap(), BigInt::from(4));
        assert_eq!(binom(2, 4).unwrap(), BigInt::zero());
        assert_eq!(binom(5, -1).unwrap(), BigInt::zero());
        for n in 0..=5u32 {
            let p = 1i64 << n;
            assert_eq!(binom(p, p - 1).unwrap(), BigInt::from(p));
        }
        assert_eq!(binom(-1, 0), Err(Error::NegativeBinomial(-1)));
        assert_eq!(binomial(200, 100).to_string().len(), 59);
    }

    #[test]
    fn kummer_matches_direct() {
        for n in 0..40u64 {
            for k in 0..=n {
                let direct = v2_int(&binomial(n, k)) as u32;
                assert_eq!(binom_valuation(n, k), Some(direct), "C({n},{k})");
            }
        }
    }

    #[test]
    fn mod2_examples() {
        assert!(q("5/3").mod2().unwrap());
        assert!(!q("2").mod2().unwrap());
        assert!(q("1/3").mod2().unwrap());
        assert!(matches!(q("1/2").mod2(), Err(Error::NotInZ2(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("12").to_string(), "12");
        assert!("1/0".parse::<Dyadic>().is_err());
        assert!("--1".parse::<Dyadic>().is_err());
        assert!("1/-3".parse::<Dyadic>().is_err());
        assert!("".parse::<Dyadic>().is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v = [q("-1/2"), q("1"), q("3/4")];
        let p = Dyadic::primitive(&v);
        assert_eq!(p, [q("2"), q("-4"), q("-3")]);
    }
}
