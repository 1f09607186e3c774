//! Exact scalars in a commutative rig.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("rig mismatch")]
    RigMismatch,
    #[error("no negatives")]
    NoNegatives,
    #[error("malformed scalar {0:?}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid rig descriptor {0:?}")]
    BadDescriptor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rig {
    Rationals,
    Integers,
    IntegersMod(u64),
    Booleans,
    Naturals,
}

impl Rig {
    pub fn integers_mod(n: u64) -> Result<Rig, ScalarError> {
        if n < 2 {
            return Err(ScalarError::BadDescriptor(format!("Zmod:{n}")));
        }
        Ok(Rig::IntegersMod(n))
    }

    pub fn has_negatives(self) -> bool {
        matches!(self, Rig::Rationals | Rig::Integers | Rig::IntegersMod(_))
    }

    pub fn zero(self) -> RigElement {
        let value = match self {
            Rig::Rationals => Value::Rat(BigRational::zero()),
            Rig::Integers | Rig::Naturals => Value::Int(BigInt::zero()),
            Rig::IntegersMod(_) => Value::Res(0),
            Rig::Booleans => Value::Bool(false),
        };
        RigElement { rig: self, value }
    }

    pub fn one(self) -> RigElement {
        self.from_u64(1)
    }

    /// The image of `n` under the unique rig map from the naturals.
    pub fn from_u64(self, n: u64) -> RigElement {
        let value = match self {
            Rig::Rationals => Value::Rat(BigRational::from_integer(BigInt::from(n))),
            Rig::Integers | Rig::Naturals => Value::Int(BigInt::from(n)),
            Rig::IntegersMod(m) => Value::Res(n % m),
            Rig::Booleans => Value::Bool(n != 0),
        };
        RigElement { rig: self, value }
    }

    pub fn from_i64(self, n: i64) -> Result<RigElement, ScalarError> {
        if n >= 0 {
            return Ok(self.from_u64(n as u64));
        }
        self.from_u64(n.unsigned_abs()).negate()
    }

    pub fn parse_descriptor(text: &str) -> Result<Rig, ScalarError> {
        let t = text.trim();
        match t {
            "Q" | "q" | "QQ" | "rationals" => return Ok(Rig::Rationals),
            "Z" | "z" | "ZZ" | "integers" => return Ok(Rig::Integers),
            "bool" | "B" | "booleans" => return Ok(Rig::Booleans),
            "nat" | "N" | "naturals" => return Ok(Rig::Naturals),
            _ => {}
        }
        let rest = t
            .strip_prefix("Zmod:")
            .or_else(|| t.strip_prefix("zmod:"))
            .ok_or_else(|| ScalarError::BadDescriptor(t.to_string()))?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ScalarError::BadDescriptor(t.to_string()));
        }
        let n: u64 = rest
            .parse()
            .map_err(|_| ScalarError::BadDescriptor(t.to_string()))?;
        Rig::integers_mod(n)
    }
}

impl fmt::Display for Rig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rig::Rationals => write!(f, "Q"),
            Rig::Integers => write!(f, "Z"),
            Rig::IntegersMod(n) => write!(f, "Zmod:{n}"),
            Rig::Booleans => write!(f, "bool"),
            Rig::Naturals => write!(f, "nat"),
        }
    }
}

impl FromStr for Rig {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rig::parse_descriptor(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RigElement {
    rig: Rig,
    value: Value,
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl RigElement {
    pub fn rig(&self) -> Rig {
        self.rig
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(i) => i.is_zero(),
            Value::Rat(r) => r.is_zero(),
            Value::Res(r) => *r == 0,
            Value::Bool(b) => !*b,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(i) => i.is_one(),
            Value::Rat(r) => r.is_one(),
            Value::Res(r) => *r == 1,
            Value::Bool(b) => *b,
        }
    }

    pub fn add(&self, other: &RigElement) -> Result<RigElement, ScalarError> {
        if self.rig != other.rig {
            return Err(ScalarError::RigMismatch);
        }
        Ok(self.add_same(other))
    }

    pub fn mul(&self, other: &RigElement) -> Result<RigElement, ScalarError> {
        if self.rig != other.rig {
            return Err(ScalarError::RigMismatch);
        }
        Ok(self.mul_same(other))
    }

    /// Addition for elements already known to share a rig.
    pub(crate) fn add_same(&self, other: &RigElement) -> RigElement {
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Res(a), Value::Res(b)) => {
                let Rig::IntegersMod(m) = self.rig else { unreachable!() };
                Value::Res(((*a as u128 + *b as u128) % m as u128) as u64)
            }
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a || *b),
            _ => unreachable!("rig mismatch"),
        };
        RigElement { rig: self.rig, value }
    }

    pub(crate) fn mul_same(&self, other: &RigElement) -> RigElement {
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Res(a), Value::Res(b)) => {
                let Rig::IntegersMod(m) = self.rig else { unreachable!() };
                Value::Res(mod_mul(*a, *b, m))
            }
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            _ => unreachable!("rig mismatch"),
        };
        RigElement { rig: self.rig, value }
    }

    pub fn negate(&self) -> Result<RigElement, ScalarError> {
        let value = match &self.value {
            Value::Int(a) => {
                if self.rig == Rig::Naturals {
                    if a.is_zero() {
                        return Ok(self.clone());
                    }
                    return Err(ScalarError::NoNegatives);
                }
                Value::Int(-a)
            }
            Value::Rat(a) => Value::Rat(-a),
            Value::Res(a) => {
                let Rig::IntegersMod(m) = self.rig else { unreachable!() };
                Value::Res((m - a) % m)
            }
            Value::Bool(b) => {
                if !*b {
                    return Ok(self.clone());
                }
                return Err(ScalarError::NoNegatives);
            }
        };
        Ok(RigElement { rig: self.rig, value })
    }

    /// Small-integer view, when the element is an integer fitting in i64.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.value {
            Value::Int(i) => i.to_i64(),
            Value::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Value::Rat(_) => None,
            Value::Res(r) => i64::try_from(*r).ok(),
            Value::Bool(b) => Some(*b as i64),
        }
    }

    pub fn parse(text: &str, rig: Rig) -> Result<RigElement, ScalarError> {
        let t = text.trim();
        let bad = || ScalarError::Malformed(text.to_string());
        if rig == Rig::Booleans {
            match t {
                "true" => return Ok(rig.one()),
                "false" => return Ok(rig.zero()),
                _ => {}
            }
        }
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) || !den.is_none_or(digits) {
            return Err(bad());
        }
        if negative && !rig.has_negatives() {
            return Err(ScalarError::NoNegatives);
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        let n = if negative { -n } else { n };
        let value = match rig {
            Rig::Rationals => Value::Rat(BigRational::new(n, d)),
            Rig::Integers | Rig::Naturals => {
                let (q, r) = n.div_rem(&d);
                if !r.is_zero() {
                    return Err(bad());
                }
                Value::Int(q)
            }
            Rig::IntegersMod(m) => {
                let mb = BigInt::from(m);
                let nr = n.mod_floor(&mb);
                let dr = d.mod_floor(&mb);
                let inv = mod_inverse(&dr, &mb).ok_or_else(bad)?;
                let v = (nr * inv).mod_floor(&mb);
                Value::Res(v.to_u64().expect("residue fits"))
            }
            Rig::Booleans => {
                if den.is_some() && !d.is_one() {
                    return Err(bad());
                }
                Value::Bool(!n.is_zero())
            }
        };
        Ok(RigElement { rig, value })
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

impl fmt::Display for RigElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(i) => write!(f, "{i}"),
            Value::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Res(r) => write!(f, "{r}"),
            Value::Bool(b) => write!(f, "{}", *b as u8),
        }
    }
}

impl Serialize for RigElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Sign helper used when rendering vectors.
pub(crate) fn is_negative(x: &RigElement) -> bool {
    match &x.value {
        Value::Int(i) => i.is_negative(),
        Value::Rat(r) => r.is_negative(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RigElement {
        RigElement::parse(s, Rig::Rationals).unwrap()
    }

    #[test]
    fn fraction_addition() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
    }

    #[test]
    fn boolean_addition_saturates() {
        let t = Rig::Booleans.one();
        assert_eq!(t.add(&t).unwrap(), t);
    }

    #[test]
    fn modular_product() {
        let r = Rig::integers_mod(10).unwrap();
        let p = r.from_u64(3).mul(&r.from_u64(4)).unwrap();
        assert_eq!(p, r.from_u64(2));
    }

    #[test]
    fn negation_rules() {
        let z = Rig::Integers;
        assert_eq!(z.from_u64(2).negate().unwrap().to_string(), "-2");
        assert!(z.zero().negate().unwrap().is_zero());
        assert_eq!(Rig::Booleans.one().negate(), Err(ScalarError::NoNegatives));
        assert_eq!(Rig::Naturals.one().negate(), Err(ScalarError::NoNegatives));
        let m = Rig::IntegersMod(7);
        assert_eq!(m.from_u64(3).negate().unwrap(), m.from_u64(4));
    }

    #[test]
    fn mismatch_is_reported() {
        let e = Rig::Integers.one().add(&Rig::Rationals.one());
        assert_eq!(e.unwrap_err().to_string(), "rig mismatch");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(q("3/6").to_string(), "1/2");
        assert_eq!(RigElement::parse("-4", Rig::Integers).unwrap().to_string(), "-4");
        assert!(RigElement::parse("-1", Rig::Naturals).is_err());
        assert_eq!(RigElement::parse("1/0", Rig::Rationals), Err(ScalarError::ZeroDenominator));
        assert!(RigElement::parse("1/", Rig::Rationals).is_err());
        assert!(RigElement::parse("", Rig::Integers).is_err());
        assert!(RigElement::parse("1/2", Rig::Integers).is_err());
        assert_eq!(
            RigElement::parse("1/3", Rig::IntegersMod(7)).unwrap(),
            Rig::IntegersMod(7).from_u64(5)
        );
        assert!(RigElement::parse("1/2", Rig::IntegersMod(4)).is_err());
    }

    #[test]
    fn descriptors() {
        for (t, r) in [
            ("Q", Rig::Rationals),
            ("Z", Rig::Integers),
            ("Zmod:5", Rig::IntegersMod(5)),
            ("bool", Rig::Booleans),
            ("nat", Rig::Naturals),
        ] {
            assert_eq!(Rig::parse_descriptor(t).unwrap(), r);
            assert_eq!(Rig::parse_descriptor(&r.to_string()).unwrap(), r);
        }
        assert!(Rig::parse_descriptor("Zmod:1").is_err());
        assert!(Rig::parse_descriptor("Zmod:").is_err());
        assert!(Rig::parse_descriptor("R").is_err());
    }
}
