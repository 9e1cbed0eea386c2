//! Exact coefficient rings.
//!
//! Every ring the engine works over is one of a small closed set: the
//! integers, the rationals, prime fields, `Z[1/2]`, `Z[1/2, i]` (with
//! `i^2 = -1`) and `F_9 = F_3[i]`. Values carry their ring so that mixing
//! rings is caught at the point of use.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Int,
    Rat,
    PrimeField(u64),
    /// `Z[1/2]`
    IntHalf,
    /// `Z[1/2, sqrt(-1)]`
    GaussHalf,
    /// `F_3[sqrt(-1)]`
    F9,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Int | Ring::Rat | Ring::IntHalf | Ring::GaussHalf => 0,
            Ring::PrimeField(p) => p,
            Ring::F9 => 3,
        }
    }

    pub fn has_conjugation(self) -> bool {
        matches!(self, Ring::GaussHalf | Ring::F9)
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::Rat | Ring::PrimeField(_) | Ring::F9)
    }

    /// Parses the CLI spelling: `Z`, `Q`, `F<p>`, `F9`, `Z12`, `GZ12`.
    pub fn parse(s: &str) -> Result<Ring> {
        match s {
            "Z" => Ok(Ring::Int),
            "Q" => Ok(Ring::Rat),
            "F9" => Ok(Ring::F9),
            "Z12" => Ok(Ring::IntHalf),
            "GZ12" => Ok(Ring::GaussHalf),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown ring `{s}`")))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Int => write!(f, "Z"),
            Ring::Rat => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
            Ring::IntHalf => write!(f, "Z[1/2]"),
            Ring::GaussHalf => write!(f, "Z[1/2,i]"),
            Ring::F9 => write!(f, "F9"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// real and imaginary parts; imaginary part is zero for `IntHalf`
    Gauss(BigRational, BigRational),
    F9(u8, u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    repr: Repr,
}

fn is_power_of_two(n: &BigInt) -> bool {
    let n = n.abs();
    !n.is_zero() && (&n & (&n - 1u32)).is_zero()
}

fn half_integral(q: &BigRational) -> bool {
    is_power_of_two(q.denom())
}

fn mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    Some(mod_u64(&e.x, p))
}

fn rat_mod(q: &BigRational, p: u64) -> Option<u64> {
    let d = inv_mod(mod_u64(q.denom(), p), p)?;
    Some(((mod_u64(q.numer(), p) as u128 * d as u128) % p as u128) as u64)
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, v: i64) -> Scalar {
        Scalar::from_bigint(ring, &BigInt::from(v))
    }

    pub fn from_bigint(ring: Ring, v: &BigInt) -> Scalar {
        let repr = match ring {
            Ring::Int => Repr::Int(v.clone()),
            Ring::Rat => Repr::Rat(BigRational::from_integer(v.clone())),
            Ring::PrimeField(p) => Repr::Mod(mod_u64(v, p)),
            Ring::IntHalf | Ring::GaussHalf => {
                Repr::Gauss(BigRational::from_integer(v.clone()), BigRational::zero())
            }
            Ring::F9 => Repr::F9(mod_u64(v, 3) as u8, 0),
        };
        Scalar { ring, repr }
    }

    /// Maps a rational into `ring`, failing when its denominator is not
    /// invertible there.
    pub fn from_rational(ring: Ring, q: &BigRational) -> Result<Scalar> {
        Scalar::gauss(ring, q, &BigRational::zero())
    }

    /// `re + im * sqrt(-1)`; `im` must vanish unless the ring has `sqrt(-1)`.
    pub fn gauss(ring: Ring, re: &BigRational, im: &BigRational) -> Result<Scalar> {
        let bad = || Error::NonIntegral(format!("{re} + {im}i in {ring}"));
        if !im.is_zero() && !ring.has_conjugation() {
            return Err(bad());
        }
        let repr = match ring {
            Ring::Int => {
                if !re.is_integer() {
                    return Err(bad());
                }
                Repr::Int(re.to_integer())
            }
            Ring::Rat => Repr::Rat(re.clone()),
            Ring::PrimeField(p) => Repr::Mod(rat_mod(re, p).ok_or_else(bad)?),
            Ring::IntHalf | Ring::GaussHalf => {
                if !half_integral(re) || !half_integral(im) {
                    return Err(bad());
                }
                Repr::Gauss(re.clone(), im.clone())
            }
            Ring::F9 => Repr::F9(
                rat_mod(re, 3).ok_or_else(bad)? as u8,
                rat_mod(im, 3).ok_or_else(bad)? as u8,
            ),
        };
        Ok(Scalar { ring, repr })
    }

    pub fn f9(a: u8, b: u8) -> Scalar {
        Scalar { ring: Ring::F9, repr: Repr::F9(a % 3, b % 3) }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(v) => v.is_zero(),
            Repr::Rat(v) => v.is_zero(),
            Repr::Mod(v) => *v == 0,
            Repr::Gauss(a, b) => a.is_zero() && b.is_zero(),
            Repr::F9(a, b) => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.ring)
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Mod(v) => Some(v),
            _ => None,
        }
    }

    /// Real and imaginary parts as rationals (characteristic-zero rings).
    pub fn parts(&self) -> Option<(BigRational, BigRational)> {
        match &self.repr {
            Repr::Int(v) => Some((BigRational::from_integer(v.clone()), BigRational::zero())),
            Repr::Rat(v) => Some((v.clone(), BigRational::zero())),
            Repr::Gauss(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }

    pub fn f9_parts(&self) -> Option<(u8, u8)> {
        match self.repr {
            Repr::F9(a, b) => Some((a, b)),
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.ring, other.ring, "scalar ring mismatch");
    }

    pub fn conj(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Gauss(a, b) => Repr::Gauss(a.clone(), -b),
            Repr::F9(a, b) => Repr::F9(*a, (3 - *b) % 3),
            r => r.clone(),
        };
        Scalar { ring: self.ring, repr }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let ring = self.ring;
        match &self.repr {
            Repr::Int(v) => {
                if v.abs().is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Repr::Rat(v) => Some(Scalar { ring, repr: Repr::Rat(v.recip()) }),
            Repr::Mod(v) => {
                let p = ring.characteristic();
                inv_mod(*v, p).map(|w| Scalar { ring, repr: Repr::Mod(w) })
            }
            Repr::Gauss(a, b) => {
                let n = a * a + b * b;
                let re = a / &n;
                let im = -(b / &n);
                Scalar::gauss(ring, &re, &im).ok()
            }
            Repr::F9(a, b) => {
                let n = (a * a + b * b) % 3;
                let ni = inv_mod(n as u64, 3)? as u8;
                Some(Scalar::f9(a * ni, (3 - b) * ni))
            }
        }
    }

    /// Reduction of an integral value modulo an odd prime (or any prime for
    /// `Int`/`Rat`). `Z[1/2, i]` reduces mod 3 onto `F_9`.
    pub fn reduce(&self, p: u64) -> Result<Scalar> {
        let bad = || Error::BadReduction { ring: self.ring.to_string(), p };
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match (&self.repr, self.ring) {
            (Repr::Int(v), _) => Ok(Scalar::from_bigint(Ring::PrimeField(p), v)),
            (Repr::Rat(v), _) => Scalar::from_rational(Ring::PrimeField(p), v).map_err(|_| bad()),
            (Repr::Gauss(a, _), Ring::IntHalf) => {
                if p == 2 {
                    return Err(bad());
                }
                Scalar::from_rational(Ring::PrimeField(p), a)
            }
            (Repr::Gauss(a, b), Ring::GaussHalf) => {
                if p != 3 {
                    return Err(bad());
                }
                Scalar::gauss(Ring::F9, a, b)
            }
            (Repr::Mod(_), Ring::PrimeField(q)) if q == p => Ok(self.clone()),
            (Repr::F9(..), _) if p == 3 => Ok(self.clone()),
            _ => Err(bad()),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.parts() {
            Some((a, b)) if b.is_zero() => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Int(v) => write!(f, "{v}"),
            Repr::Rat(v) => write!(f, "{v}"),
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Gauss(a, b) if b.is_zero() => write!(f, "{a}"),
            Repr::Gauss(a, b) => write!(f, "{a}+{b}i"),
            Repr::F9(a, b) => write!(f, "{a}+{b}i"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check(o);
        let repr = match (&self.repr, &o.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a + b) % self.ring.characteristic()),
            (Repr::Gauss(a, b), Repr::Gauss(c, d)) => Repr::Gauss(a + c, b + d),
            (Repr::F9(a, b), Repr::F9(c, d)) => Repr::F9((a + c) % 3, (b + d) % 3),
            _ => unreachable!(),
        };
        Scalar { ring: self.ring, repr }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let p = self.ring.characteristic();
                Repr::Mod((p - a) % p)
            }
            Repr::Gauss(a, b) => Repr::Gauss(-a, -b),
            Repr::F9(a, b) => Repr::F9((3 - a) % 3, (3 - b) % 3),
        };
        Scalar { ring: self.ring, repr }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check(o);
        let repr = match (&self.repr, &o.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                Repr::Mod(((*a as u128 * *b as u128) % self.ring.characteristic() as u128) as u64)
            }
            (Repr::Gauss(a, b), Repr::Gauss(c, d)) => Repr::Gauss(a * c - b * d, a * d + b * c),
            (Repr::F9(a, b), Repr::F9(c, d)) => {
                Repr::F9((a * c + 2 * b * d) % 3, (a * d + b * c) % 3)
            }
            _ => unreachable!(),
        };
        Scalar { ring: self.ring, repr }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Reduces a `Z[1/2]` or `Z[1/2, i]` scalar modulo an odd prime.
pub fn ring_reduce(x: &Scalar, p: u64) -> Result<Scalar> {
    match x.ring() {
        Ring::IntHalf | Ring::GaussHalf => x.reduce(p),
        r => Err(Error::BadReduction { ring: r.to_string(), p }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn half_reduces_to_two_mod_three() {
        let half = Scalar::from_rational(Ring::IntHalf, &q(1, 2)).unwrap();
        assert_eq!(ring_reduce(&half, 3).unwrap(), Scalar::from_i64(Ring::PrimeField(3), 2));
        let five = Scalar::from_i64(Ring::IntHalf, 5);
        assert_eq!(ring_reduce(&five, 3).unwrap().residue(), Some(2));
    }

    #[test]
    fn reduction_mod_two_is_rejected() {
        let x = Scalar::from_i64(Ring::IntHalf, 3);
        assert!(matches!(ring_reduce(&x, 2), Err(Error::BadReduction { .. })));
        let g = Scalar::from_i64(Ring::GaussHalf, 3);
        assert!(ring_reduce(&g, 2).is_err());
    }

    #[test]
    fn conjugation_is_frobenius_on_f9() {
        for a in 0..3i64 {
            for b in 0..3i64 {
                let x = Scalar::gauss(Ring::GaussHalf, &q(a, 1), &q(b, 1)).unwrap();
                let r = ring_reduce(&x, 3).unwrap();
                assert_eq!(ring_reduce(&x.conj(), 3).unwrap(), r.conj());
                assert_eq!(r.conj(), r.pow(3));
            }
        }
    }

    #[test]
    fn only_half_integral_values_enter_int_half() {
        assert!(Scalar::from_rational(Ring::IntHalf, &q(3, 8)).is_ok());
        assert!(Scalar::from_rational(Ring::IntHalf, &q(1, 3)).is_err());
        assert!(Scalar::from_rational(Ring::Int, &q(1, 2)).is_err());
        assert!(Scalar::gauss(Ring::IntHalf, &q(1, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn units() {
        let one_plus_i = Scalar::gauss(Ring::GaussHalf, &q(1, 1), &q(1, 1)).unwrap();
        let inv = one_plus_i.inv().unwrap();
        assert!((&inv * &one_plus_i).is_one());
        let three = Scalar::from_i64(Ring::GaussHalf, 3);
        assert!(three.inv().is_none());
        assert!(Scalar::from_i64(Ring::Int, 2).inv().is_none());
        assert_eq!(Scalar::from_i64(Ring::PrimeField(7), 3).inv().unwrap().residue(), Some(5));
        let x = Scalar::f9(1, 1);
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn parse_ring_names() {
        assert_eq!(Ring::parse("F3").unwrap(), Ring::PrimeField(3));
        assert_eq!(Ring::parse("GZ12").unwrap(), Ring::GaussHalf);
        assert!(Ring::parse("F4").is_err());
        assert!(Ring::parse("R").is_err());
    }
}
