//! Exact field elements.
//!
//! A [`Scalar`] is either a rational number (arbitrary precision, lowest
//! terms, positive denominator) or a residue modulo an odd prime. Integers
//! and rationals embed canonically into every prime field, so mixing a
//! rational constant with a residue yields a residue. This lets `zero()` and
//! `one()` be mode-free.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Which field the artifact computes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ScalarMode {
    #[default]
    Rational,
    Prime(u64),
}

impl ScalarMode {
    /// Validates the mode. Characteristic 2 and composite moduli are refused.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p <= 2 || p >= (1 << 62) || !is_prime_u64(p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} must be an odd prime below 2^62"
            )));
        }
        Ok(ScalarMode::Prime(p))
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        Scalar::from(v).into_mode(self)
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn is_rational(self) -> bool {
        matches!(self, ScalarMode::Rational)
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => write!(f, "rational"),
            ScalarMode::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "rational" {
            return Ok(ScalarMode::Rational);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in '{s}'")))?;
            return ScalarMode::prime(p);
        }
        Err(Error::InvalidField(format!(
            "unknown field '{s}', expected 'rational' or 'prime:P'"
        )))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        Scalar::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn residue(value: i64, modulus: u64) -> Self {
        Scalar::Residue {
            value: bigint_mod(&BigInt::from(value), modulus),
            modulus,
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rational(_) => ScalarMode::Rational,
            Scalar::Residue { modulus, .. } => ScalarMode::Prime(*modulus),
        }
    }

    /// Maps the element into `mode`. Rationals reduce modulo `p`; residues
    /// cannot be lifted back and are returned unchanged.
    pub fn into_mode(self, mode: ScalarMode) -> Scalar {
        match (self, mode) {
            (Scalar::Rational(r), ScalarMode::Prime(p)) => {
                let n = bigint_mod(r.numer(), p);
                let d = bigint_mod(r.denom(), p);
                assert!(d != 0, "denominator {} vanishes modulo {p}", r.denom());
                Scalar::Residue {
                    value: mul_mod(n, pow_mod(d, p - 2, p), p),
                    modulus: p,
                }
            }
            (s, _) => s,
        }
    }

    /// Like [`Scalar::into_mode`], but reports a denominator that vanishes
    /// modulo the prime instead of panicking.
    pub fn try_into_mode(self, mode: ScalarMode) -> Result<Scalar, Error> {
        if let (Scalar::Rational(r), ScalarMode::Prime(p)) = (&self, mode) {
            if bigint_mod(r.denom(), p) == 0 {
                return Err(Error::InvalidField(format!("denominator {} vanishes modulo {p}", r.denom())));
            }
        }
        Ok(self.into_mode(mode))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::Residue { .. } => true,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Sign of a rational; residues count as positive when nonzero.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.cmp(&BigRational::zero()),
            Scalar::Residue { value, .. } => value.cmp(&0),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow(r.clone(), e as usize)),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, e as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Exact rational k-th root, if one exists.
    pub fn kth_root(&self, k: u32) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if k == 0 {
                    return None;
                }
                if r.is_negative() && k % 2 == 0 {
                    return None;
                }
                let n = r.numer().nth_root(k);
                let d = r.denom().nth_root(k);
                let cand = BigRational::new(n, d);
                (num_traits::pow(cand.clone(), k as usize) == *r).then_some(Scalar::Rational(cand))
            }
            Scalar::Residue { value, modulus } => {
                if *value == 0 {
                    return Some(self.clone());
                }
                // k coprime to p - 1 makes x -> x^k a bijection; otherwise
                // fall back to search for small moduli.
                if (k as u64).gcd(&(modulus - 1)) == 1 {
                    let inv = mod_inverse(k as u64 % (modulus - 1), modulus - 1)?;
                    return Some(Scalar::Residue {
                        value: pow_mod(*value, inv, *modulus),
                        modulus: *modulus,
                    });
                }
                if *modulus < 1 << 20 {
                    return (1..*modulus)
                        .find(|&x| pow_mod(x, k as u64, *modulus) == *value)
                        .map(|x| Scalar::Residue {
                            value: x,
                            modulus: *modulus,
                        });
                }
                None
            }
        }
    }

    /// Bits needed for numerator plus denominator; residues report the
    /// modulus width.
    pub fn bit_size(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().bits() + r.denom().bits(),
            Scalar::Residue { modulus, .. } => 64 - modulus.leading_zeros() as u64,
        }
    }

    fn coerce<'a>(
        a: &'a Scalar,
        b: &'a Scalar,
    ) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        match (a, b) {
            (Scalar::Rational(_), Scalar::Residue { modulus, .. }) => (
                Cow::Owned(a.clone().into_mode(ScalarMode::Prime(*modulus))),
                Cow::Borrowed(b),
            ),
            (Scalar::Residue { modulus, .. }, Scalar::Rational(_)) => (
                Cow::Borrowed(a),
                Cow::Owned(b.clone().into_mode(ScalarMode::Prime(*modulus))),
            ),
            _ => (Cow::Borrowed(a), Cow::Borrowed(b)),
        }
    }

    fn binop(
        a: &Scalar,
        b: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        let (a, b) = Scalar::coerce(a, b);
        match (&*a, &*b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(rat(x, y)),
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) => {
                assert_eq!(p, q, "mixing residues of different moduli");
                Scalar::Residue {
                    value: res(*x, *y, *p),
                    modulus: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rational(v)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Scalar::coerce(self, other);
        match (&*a, &*b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            (
                Scalar::Residue { value: x, modulus: p },
                Scalar::Residue { value: y, modulus: q },
            ) => p == q && x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x + y, |x, y, p| {
            let s = x as u128 + y as u128;
            (s % p as u128) as u64
        })
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x - y, |x, y, p| {
            if x >= y {
                x - y
            } else {
                p - (y - x)
            }
        })
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::binop(self, rhs, |x, y| x * y, mul_mod)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a *= b;
            return;
        }
        *self = &*self * rhs;
    }
}

/// Least common multiple of denominators and gcd of numerators of a list of
/// rationals, used to clear a vector to primitive integer form.
pub(crate) fn content_scale<'a>(coeffs: impl Iterator<Item = &'a Scalar>) -> Option<BigRational> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut any = false;
    for c in coeffs {
        let r = c.as_rational()?;
        if r.is_zero() {
            continue;
        }
        any = true;
        lcm = lcm.lcm(r.denom());
        gcd = gcd.gcd(r.numer());
    }
    if !any {
        return None;
    }
    // Multiplying by lcm/gcd makes every entry an integer with content 1.
    Some(BigRational::new(lcm, gcd))
}

pub(crate) fn sign_of(r: &BigRational) -> Sign {
    r.numer().sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let a = Scalar::rational(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(&a + &Scalar::rational(3, 2), Scalar::zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        let p = 101;
        let a = Scalar::residue(-3, p);
        assert_eq!(a, Scalar::residue(98, p));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        // rational constants embed
        let half = Scalar::rational(1, 2);
        let two = Scalar::residue(2, p);
        assert!((&half * &two).is_one());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("rational".parse::<ScalarMode>().unwrap(), ScalarMode::Rational);
        assert_eq!("prime:101".parse::<ScalarMode>().unwrap(), ScalarMode::Prime(101));
        assert!("prime:2".parse::<ScalarMode>().is_err());
        assert!("prime:91".parse::<ScalarMode>().is_err());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(Scalar::rational(4, 9).kth_root(2), Some(Scalar::rational(2, 3)));
        assert_eq!(Scalar::from(-8).kth_root(3), Some(Scalar::from(-2)));
        assert_eq!(Scalar::from(2).kth_root(2), None);
        assert_eq!(Scalar::from(-4).kth_root(2), None);
    }

    #[test]
    fn miller_rabin() {
        assert!(is_prime_u64(2305843009213693951));
        assert!(!is_prime_u64(2305843009213693953));
        assert!(is_prime_u64(1_000_000_007));
    }
}
