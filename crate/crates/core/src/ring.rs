//! Commutative unital coefficient rings with exact arithmetic.
//!
//! Three rings are supported: the integers and the rationals (both arbitrary
//! precision) and the residues modulo `n`. A [`RingValue`] carries enough of its
//! ring to detect mixing; the modulus of a residue travels with it.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    Modular(u64),
}

impl RingSpec {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("modulus must be at least 2, got {n}")));
        }
        Ok(RingSpec::Modular(n))
    }

    /// True iff `2a = 0` forces `a = 0`.
    pub fn is_two_torsionfree(self) -> bool {
        match self {
            RingSpec::Integers | RingSpec::Rationals => true,
            RingSpec::Modular(n) => n % 2 == 1,
        }
    }

    /// Fails with `TorsionRefused` unless the ring is 2-torsionfree or `allow` is set.
    pub fn require_two_torsionfree(self, allow: bool) -> Result<()> {
        if allow || self.is_two_torsionfree() {
            Ok(())
        } else {
            Err(Error::TorsionRefused(self))
        }
    }

    pub fn zero(self) -> RingValue {
        RingValue::from_i64(self, 0)
    }

    pub fn one(self) -> RingValue {
        RingValue::from_i64(self, 1)
    }

    /// Parses a scalar: decimal integers, `p/q` or `p` rationals, residues as
    /// (possibly negative) integers which are reduced.
    pub fn parse(self, text: &str) -> Result<RingValue> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("`{text}` is not a scalar of {self}"));
        match self {
            RingSpec::Integers => text.parse::<BigInt>().map(RingValue::Int).map_err(|_| bad()),
            RingSpec::Rationals => {
                let (num, den) = match text.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (text, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(RingValue::Rat(BigRational::new(num, den)))
            }
            RingSpec::Modular(_) => {
                let v: BigInt = text.parse().map_err(|_| bad())?;
                Ok(RingValue::from_bigint(self, &v))
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// `integers`, `rationals` or `modular(n)`, as printed by `Display`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "integers" => Ok(RingSpec::Integers),
            "rationals" => Ok(RingSpec::Rationals),
            _ => {
                let n = text
                    .strip_prefix("modular(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|n| n.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::Invalid(format!("unknown ring `{text}`")))?;
                RingSpec::modular(n)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("integers"),
            RingSpec::Rationals => f.write_str("rationals"),
            RingSpec::Modular(n) => write!(f, "modular({n})"),
        }
    }
}

/// An exact scalar in canonical form: rationals in lowest terms with positive
/// denominator, residues in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingValue {
    Int(BigInt),
    Rat(BigRational),
    Mod { residue: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point; the operator impls panic on mixed rings instead.
pub fn ring_arithmetic(a: &RingValue, b: &RingValue, op: RingOp) -> Result<RingValue> {
    if a.spec() != b.spec() {
        return Err(Error::SpecMismatch(a.spec(), b.spec()));
    }
    Ok(match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    })
}

impl RingValue {
    pub fn from_i64(spec: RingSpec, v: i64) -> Self {
        RingValue::from_bigint(spec, &BigInt::from(v))
    }

    pub fn from_bigint(spec: RingSpec, v: &BigInt) -> Self {
        match spec {
            RingSpec::Integers => RingValue::Int(v.clone()),
            RingSpec::Rationals => RingValue::Rat(BigRational::from_integer(v.clone())),
            RingSpec::Modular(n) => {
                let r = v.mod_floor(&BigInt::from(n));
                let residue = u64::try_from(r).expect("residue fits the modulus");
                RingValue::Mod { residue, modulus: n }
            }
        }
    }

    pub fn spec(&self) -> RingSpec {
        match self {
            RingValue::Int(_) => RingSpec::Integers,
            RingValue::Rat(_) => RingSpec::Rationals,
            RingValue::Mod { modulus, .. } => RingSpec::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(v) => v.is_zero(),
            RingValue::Rat(v) => v.is_zero(),
            RingValue::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingValue::Int(v) => v.is_one(),
            RingValue::Rat(v) => v.is_one(),
            RingValue::Mod { residue, .. } => *residue == 1,
        }
    }

    /// An integer representative: the integer itself, the residue, or for a
    /// rational with denominator one its numerator.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            RingValue::Int(v) => Some(v.clone()),
            RingValue::Rat(v) if v.is_integer() => Some(v.to_integer()),
            RingValue::Rat(_) => None,
            RingValue::Mod { residue, .. } => Some(BigInt::from(*residue)),
        }
    }

    pub fn try_invert(&self) -> Result<RingValue> {
        let not_unit = || Error::NotAUnit(self.to_string(), self.spec());
        match self {
            RingValue::Int(v) => {
                if v.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(not_unit())
                }
            }
            RingValue::Rat(v) => {
                if v.is_zero() {
                    Err(not_unit())
                } else {
                    Ok(RingValue::Rat(v.recip()))
                }
            }
            RingValue::Mod { residue, modulus } => {
                let g = BigInt::from(*residue).extended_gcd(&BigInt::from(*modulus));
                if !g.gcd.is_one() {
                    return Err(not_unit());
                }
                Ok(RingValue::from_bigint(RingSpec::Modular(*modulus), &g.x))
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.try_invert().is_ok()
    }

    fn mismatch(a: &RingValue, b: &RingValue) -> ! {
        panic!("ring mismatch: {} vs {}", a.spec(), b.spec())
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Int(v) => write!(f, "{v}"),
            RingValue::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            RingValue::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl Add for &RingValue {
    type Output = RingValue;

    fn add(self, rhs: &RingValue) -> RingValue {
        match (self, rhs) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a + b),
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a + b),
            (RingValue::Mod { residue: a, modulus: n }, RingValue::Mod { residue: b, modulus: m }) if n == m => {
                RingValue::Mod {
                    residue: ((*a as u128 + *b as u128) % *n as u128) as u64,
                    modulus: *n,
                }
            }
            _ => RingValue::mismatch(self, rhs),
        }
    }
}

impl Sub for &RingValue {
    type Output = RingValue;

    fn sub(self, rhs: &RingValue) -> RingValue {
        match (self, rhs) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a - b),
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a - b),
            (RingValue::Mod { residue: a, modulus: n }, RingValue::Mod { residue: b, modulus: m }) if n == m => {
                RingValue::Mod {
                    residue: ((*a as u128 + *n as u128 - *b as u128) % *n as u128) as u64,
                    modulus: *n,
                }
            }
            _ => RingValue::mismatch(self, rhs),
        }
    }
}

impl Mul for &RingValue {
    type Output = RingValue;

    fn mul(self, rhs: &RingValue) -> RingValue {
        match (self, rhs) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a * b),
            (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat(a * b),
            (RingValue::Mod { residue: a, modulus: n }, RingValue::Mod { residue: b, modulus: m }) if n == m => {
                RingValue::Mod {
                    residue: ((*a as u128 * *b as u128) % *n as u128) as u64,
                    modulus: *n,
                }
            }
            _ => RingValue::mismatch(self, rhs),
        }
    }
}

impl Neg for &RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Rat(a) => RingValue::Rat(-a),
            RingValue::Mod { residue, modulus } => RingValue::Mod {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl AddAssign<&RingValue> for RingValue {
    fn add_assign(&mut self, rhs: &RingValue) {
        match (&mut *self, rhs) {
            (RingValue::Int(a), RingValue::Int(b)) => *a += b,
            (RingValue::Rat(a), RingValue::Rat(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}
