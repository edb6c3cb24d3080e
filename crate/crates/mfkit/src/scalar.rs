use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Modulus of the stress-test prime field.
pub const GF_PRIME: u64 = 32003;

/// Coefficient field of a ring: exact rationals by default, GF(32003) on request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rational,
    Gf32003,
}

impl CoeffField {
    pub fn name(self) -> &'static str {
        match self {
            CoeffField::Rational => "q",
            CoeffField::Gf32003 => "gf32003",
        }
    }

    pub fn parse_name(s: &str) -> Option<CoeffField> {
        match s {
            "q" | "Q" | "rational" => Some(CoeffField::Rational),
            "gf32003" | "GF32003" => Some(CoeffField::Gf32003),
            _ => None,
        }
    }
}

/// An exact coefficient. The variant must agree with the ambient ring's field;
/// ring construction is the only place scalars are created from raw input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gf(u64),
}

impl Scalar {
    pub fn zero(field: CoeffField) -> Self {
        match field {
            CoeffField::Rational => Scalar::Rat(BigRational::zero()),
            CoeffField::Gf32003 => Scalar::Gf(0),
        }
    }

    pub fn one(field: CoeffField) -> Self {
        match field {
            CoeffField::Rational => Scalar::Rat(BigRational::one()),
            CoeffField::Gf32003 => Scalar::Gf(1),
        }
    }

    pub fn from_i64(field: CoeffField, n: i64) -> Self {
        match field {
            CoeffField::Rational => Scalar::Rat(BigRational::from(BigInt::from(n))),
            CoeffField::Gf32003 => {
                let r = n.rem_euclid(GF_PRIME as i64) as u64;
                Scalar::Gf(r)
            }
        }
    }

    /// Build from a numerator/denominator pair of decimal strings.
    pub fn from_decimal(field: CoeffField, numer: &str, denom: Option<&str>) -> Option<Self> {
        match field {
            CoeffField::Rational => {
                let n: BigInt = numer.parse().ok()?;
                let d: BigInt = match denom {
                    Some(d) => d.parse().ok()?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return None;
                }
                Some(Scalar::Rat(BigRational::new(n, d)))
            }
            CoeffField::Gf32003 => {
                let n: BigInt = numer.parse().ok()?;
                let n = n
                    .modpow(&BigInt::one(), &BigInt::from(GF_PRIME))
                    .to_string()
                    .parse::<u64>()
                    .ok()?;
                let v = match denom {
                    Some(d) => {
                        let d: BigInt = d.parse().ok()?;
                        let d = d
                            .modpow(&BigInt::one(), &BigInt::from(GF_PRIME))
                            .to_string()
                            .parse::<u64>()
                            .ok()?;
                        if d == 0 {
                            return None;
                        }
                        gf_mul(n, gf_inv(d))
                    }
                    None => n,
                };
                Some(Scalar::Gf(v))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gf(n) => *n == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gf(n) => *n == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf((a + b) % GF_PRIME),
            _ => unreachable!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf((a + GF_PRIME - b) % GF_PRIME),
            _ => unreachable!("mixed scalar fields"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Gf(a), Scalar::Gf(b)) => Scalar::Gf(gf_mul(*a, *b)),
            _ => unreachable!("mixed scalar fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gf(a) => Scalar::Gf(if *a == 0 { 0 } else { GF_PRIME - a }),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero scalar");
                Scalar::Rat(a.recip())
            }
            Scalar::Gf(a) => {
                assert!(*a != 0, "inverse of zero scalar");
                Scalar::Gf(gf_inv(*a))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// True for rationals with negative sign; GF scalars are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Gf(_) => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            Scalar::Gf(n) => Scalar::Gf(*n),
        }
    }
}

fn gf_mul(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % GF_PRIME as u128) as u64
}

fn gf_inv(a: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % GF_PRIME;
    let mut exp = GF_PRIME - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = gf_mul(acc, base);
        }
        base = gf_mul(base, base);
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf(n) => write!(f, "{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_inverse_roundtrip() {
        for a in [1u64, 2, 3, 7, 32002] {
            let s = Scalar::Gf(a);
            assert!(s.mul(&s.inv()).is_one());
        }
    }

    #[test]
    fn rational_from_decimal() {
        let s = Scalar::from_decimal(CoeffField::Rational, "3", Some("4")).unwrap();
        let t = Scalar::from_decimal(CoeffField::Rational, "6", Some("8")).unwrap();
        assert_eq!(s, t);
        assert!(Scalar::from_decimal(CoeffField::Rational, "1", Some("0")).is_none());
    }

    #[test]
    fn gf_negatives_normalize() {
        let s = Scalar::from_i64(CoeffField::Gf32003, -1);
        assert_eq!(s, Scalar::Gf(GF_PRIME - 1));
    }
}
