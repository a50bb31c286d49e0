//! Exact values for liken elements.
//!
//! A liken element is either a non-negative rational or the natural
//! logarithm of a positive integer. Within one kind every comparison and
//! sum is exact: rationals by cross-multiplication, logarithms by integer
//! arithmetic on the underlying integers (`ln a + ln b = ln ab`). Across
//! kinds the order is decided by refining dyadic enclosures of the
//! logarithm until the two sides separate, up to a configurable precision
//! ceiling; hitting the ceiling yields [`Comparison::Undecided`] rather
//! than a guess.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Default precision ceiling (bits) for cross-kind comparisons.
pub const DEFAULT_PRECISION_CEILING: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Rational,
    LogInt,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueKind::Rational => write!(f, "rational"),
            ValueKind::LogInt => write!(f, "log-int"),
        }
    }
}

/// An exact non-negative quantity: a rational `p/q` or `ln(k)` for an
/// integer `k ≥ 1`. Values are immutable once constructed.
#[derive(Clone, Debug)]
pub enum Value {
    Rational(BigRational),
    LogInt(BigUint),
}

/// Outcome of a (possibly cross-kind) comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    /// The precision ceiling was reached without separating the values.
    Undecided { precision_bits: u64 },
}

impl Comparison {
    pub fn decided(self) -> Option<Ordering> {
        match self {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Undecided { .. } => None,
        }
    }
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// Two values of different kinds were combined where one kind is required.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("value kinds differ (rational vs log-int)")]
pub struct KindMismatch;

impl Value {
    pub fn rational(r: BigRational) -> Value {
        assert!(!r.is_negative(), "liken values are non-negative");
        Value::Rational(r)
    }

    pub fn from_integer(n: u64) -> Value {
        Value::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: u64, q: u64) -> Value {
        assert!(q > 0);
        Value::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `ln(k)` for `k ≥ 1`; `ln(1)` is the zero of the log-int kind.
    pub fn ln_int(k: impl Into<BigUint>) -> Value {
        let k = k.into();
        assert!(!k.is_zero(), "ln requires a positive integer");
        Value::LogInt(k)
    }

    pub fn zero(kind: ValueKind) -> Value {
        match kind {
            ValueKind::Rational => Value::Rational(BigRational::zero()),
            ValueKind::LogInt => Value::LogInt(BigUint::one()),
        }
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Rational(_) => ValueKind::Rational,
            Value::LogInt(_) => ValueKind::LogInt,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::LogInt(k) => k.is_one(),
        }
    }

    /// The integer `k` of a `ln(k)` value.
    pub fn log_operand(&self) -> Option<&BigUint> {
        match self {
            Value::LogInt(k) => Some(k),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::LogInt(_) => None,
        }
    }

    /// Exact sum of two same-kind values.
    pub fn add(&self, other: &Value) -> Result<Value, KindMismatch> {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Ok(Value::Rational(a + b)),
            (Value::LogInt(a), Value::LogInt(b)) => Ok(Value::LogInt(a * b)),
            _ => Err(KindMismatch),
        }
    }

    /// Same as [`Value::add`] but panics on kind mismatch. Enumeration
    /// internals use this; single-kind specs make the mismatch unreachable.
    pub(crate) fn plus(&self, other: &Value) -> Value {
        self.add(other).expect("same-kind values")
    }

    /// `n`-fold sum. For log-int values this is integer exponentiation.
    pub fn scale(&self, n: u32) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(r * BigRational::from_integer(BigInt::from(n))),
            Value::LogInt(k) => {
                if n == 0 {
                    Value::LogInt(BigUint::one())
                } else {
                    Value::LogInt(k.pow(n))
                }
            }
        }
    }

    /// Exact difference when it stays inside the value domain: rationals
    /// subtract when `self ≥ other`, logarithms divide when the operand of
    /// `other` divides the operand of `self`.
    pub fn checked_sub(&self, other: &Value) -> Option<Value> {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => {
                if a >= b {
                    Some(Value::Rational(a - b))
                } else {
                    None
                }
            }
            (Value::LogInt(a), Value::LogInt(b)) => {
                if (a % b).is_zero() {
                    Some(Value::LogInt(a / b))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Exact total order on same-kind values. Panics on a kind mismatch;
    /// callers hold the single-kind invariant.
    pub fn cmp_same_kind(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::LogInt(a), Value::LogInt(b)) => a.cmp(b),
            _ => panic!("cmp_same_kind on mixed kinds"),
        }
    }

    /// Compare values with the default precision ceiling.
    pub fn compare(&self, other: &Value) -> Comparison {
        self.compare_with_ceiling(other, DEFAULT_PRECISION_CEILING)
    }

    /// Compare values. Same-kind comparisons are exact. Cross-kind ones
    /// refine dyadic enclosures, doubling precision until the sides
    /// separate or `ceiling` bits are reached.
    pub fn compare_with_ceiling(&self, other: &Value, ceiling: u64) -> Comparison {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b).into(),
            (Value::LogInt(a), Value::LogInt(b)) => a.cmp(b).into(),
            (Value::Rational(r), Value::LogInt(k)) => compare_rational_log(r, k, ceiling),
            (Value::LogInt(k), Value::Rational(r)) => match compare_rational_log(r, k, ceiling) {
                Comparison::Less => Comparison::Greater,
                Comparison::Greater => Comparison::Less,
                other => other,
            },
        }
    }

    /// Dyadic enclosure of the exact real value, of width at most
    /// `2^-precision_bits · max(1, value)`.
    pub fn approx(&self, precision_bits: u64) -> Interval {
        assert!(precision_bits >= 1);
        match self {
            Value::Rational(r) => Interval::around_rational(r, precision_bits),
            Value::LogInt(k) => ln_interval(k, precision_bits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(r) => rational_to_f64(r),
            Value::LogInt(k) => {
                if k.is_one() {
                    0.0
                } else {
                    self.approx(64).midpoint_f64()
                }
            }
        }
    }

    /// Decimal rendering of the value with `places` fractional digits,
    /// accurate to one unit in the last place. Display only.
    pub fn to_decimal_string(&self, places: u32) -> String {
        let pow10 = BigUint::from(10u32).pow(places);
        let scaled: BigUint = match self {
            Value::Rational(r) => {
                let p = r.numer().magnitude();
                let q = r.denom().magnitude();
                // round(p·10^places / q)
                (p * &pow10 + q / 2u32) / q
            }
            Value::LogInt(k) => {
                if k.is_one() {
                    BigUint::zero()
                } else {
                    let iv = self.approx(64);
                    iv.lo.scaled_decimal(&pow10)
                }
            }
        };
        let digits = scaled.to_string();
        let places = places as usize;
        if digits.len() <= places {
            format!("0.{:0>width$}", digits, width = places)
        } else {
            let (int, frac) = digits.split_at(digits.len() - places);
            format!("{int}.{frac}")
        }
    }
}

// Equality is exact: same-kind values compare componentwise, and the only
// cross-kind equality that can hold is zero (`0/1` vs `ln 1`).
impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => a == b,
            (Value::LogInt(a), Value::LogInt(b)) => a == b,
            _ => self.is_zero() && other.is_zero(),
        }
    }
}

impl Eq for Value {}

impl std::hash::Hash for Value {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        if self.is_zero() {
            0u8.hash(state);
            return;
        }
        match self {
            Value::Rational(r) => {
                1u8.hash(state);
                r.hash(state);
            }
            Value::LogInt(k) => {
                2u8.hash(state);
                k.hash(state);
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::LogInt(k) => write!(f, "ln({k})"),
        }
    }
}

/// Parse of the textual forms produced by `Display`: `p/q`, a bare
/// integer, or `ln(k)`.
#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed value literal {0:?}")]
pub struct ParseValueError(pub String);

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseValueError(s.to_string());
        if let Some(inner) = s.strip_prefix("ln(").and_then(|r| r.strip_suffix(')')) {
            let k: BigUint = inner.trim().parse().map_err(|_| bad())?;
            if k.is_zero() {
                return Err(bad());
            }
            return Ok(Value::LogInt(k));
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigUint = p.parse().map_err(|_| bad())?;
        let q: BigUint = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Value::Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, p),
            BigInt::from_biguint(Sign::Plus, q),
        )))
    }
}

impl serde::Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dyadic rational `mantissa · 2^exp2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mantissa: BigInt,
    pub exp2: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp2: i64) -> Dyadic {
        Dyadic { mantissa, exp2 }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp2 >= 0 {
            BigRational::from_integer(&self.mantissa << self.exp2 as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exp2) as u64)
        }
    }

    pub fn cmp_dyadic(&self, other: &Dyadic) -> Ordering {
        let e = self.exp2.min(other.exp2);
        let a = &self.mantissa << (self.exp2 - e) as u64;
        let b = &other.mantissa << (other.exp2 - e) as u64;
        a.cmp(&b)
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // mantissa·2^e vs p/q  ⟺  mantissa·2^e·q vs p (q > 0)
        let (p, q) = (r.numer(), r.denom());
        if self.exp2 >= 0 {
            ((&self.mantissa * q) << self.exp2 as u64).cmp(p)
        } else {
            (&self.mantissa * q).cmp(&(p << (-self.exp2) as u64))
        }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exp2 + other.exp2)
    }

    pub fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        let drop = self.mantissa.bits().saturating_sub(53);
        let m = (&self.mantissa >> drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp2 + drop as i64) as i32)
    }

    /// `round(self · pow10)` for a non-negative dyadic; used for decimal display.
    fn scaled_decimal(&self, pow10: &BigUint) -> BigUint {
        let m = self.mantissa.magnitude();
        if self.exp2 >= 0 {
            (m * pow10) << self.exp2 as u64
        } else {
            let shift = (-self.exp2) as u64;
            let half = BigUint::one() << (shift - 1);
            (m * pow10 + half) >> shift
        }
    }
}

/// A dyadic enclosure `[lo, hi]` of an exact real value.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub precision_bits: u64,
}

impl Interval {
    fn around_rational(r: &BigRational, precision_bits: u64) -> Interval {
        let w = precision_bits + 1;
        let (p, q) = (r.numer(), r.denom());
        let num = p << w;
        let floor = &num / q;
        let exact = (&num % q).is_zero();
        let lo = Dyadic::new(floor.clone(), -(w as i64));
        let hi = if exact {
            lo.clone()
        } else {
            Dyadic::new(floor + 1, -(w as i64))
        };
        Interval { lo, hi, precision_bits }
    }

    pub fn width(&self) -> BigRational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.cmp_rational(r) != Ordering::Greater && self.hi.cmp_rational(r) != Ordering::Less
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo.cmp_dyadic(&other.lo) != Ordering::Greater
            && self.hi.cmp_dyadic(&other.hi) != Ordering::Less
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// Interval product for non-negative enclosures.
    pub fn mul(&self, other: &Interval) -> Interval {
        debug_assert!(self.lo.mantissa.sign() != Sign::Minus);
        debug_assert!(other.lo.mantissa.sign() != Sign::Minus);
        Interval {
            lo: self.lo.mul(&other.lo),
            hi: self.hi.mul(&other.hi),
            precision_bits: self.precision_bits.min(other.precision_bits),
        }
    }

    /// Strict separation test between two enclosures.
    pub fn separate(&self, other: &Interval) -> Option<Ordering> {
        if self.hi.cmp_dyadic(&other.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.cmp_dyadic(&other.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    if r.is_zero() {
        return 0.0;
    }
    // Reduce numerator and denominator to 53 bits independently and track
    // the scale difference.
    let ps = r.numer().bits().saturating_sub(53);
    let qs = r.denom().bits().saturating_sub(53);
    let p = (r.numer() >> ps).to_f64().unwrap_or(f64::NAN);
    let q = (r.denom() >> qs).to_f64().unwrap_or(f64::NAN);
    (p / q) * 2f64.powi(ps as i32 - qs as i32)
}

/// Enclosure of `atanh(num/den) · 2^w` as integer bounds, for
/// `0 ≤ num/den ≤ 1/3`. Fixed-point evaluation of the series
/// `y + y³/3 + y⁵/5 + …` with floor divisions; every intermediate is an
/// under-estimate, and the returned slack over-covers the deficit and the
/// series tail.
fn atanh_scaled(num: &BigUint, den: &BigUint, w: u64) -> (BigUint, BigUint) {
    if num.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let y = (num << w) / den;
    let y2 = (&y * &y) >> w;
    let mut term = y.clone();
    let mut sum = y.clone();
    let mut j: u64 = 1;
    loop {
        term = (&term * &y2) >> w;
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * j + 1);
        j += 1;
    }
    let slack = BigUint::from(8 * (j + 4));
    let hi = &sum + slack;
    (sum, hi)
}

/// Enclosure of `ln k · 2^w` as integer bounds, `k ≥ 1`.
fn ln_scaled(k: &BigUint, w: u64) -> (BigUint, BigUint) {
    if k.is_one() {
        return (BigUint::zero(), BigUint::zero());
    }
    let s = k.bits() - 1;
    let pow = BigUint::one() << s;
    // ln k = s·ln 2 + 2·atanh((k−2^s)/(k+2^s)),  ln 2 = 2·atanh(1/3)
    let (f_lo, f_hi) = atanh_scaled(&(k - &pow), &(k + &pow), w);
    let (l2_lo, l2_hi) = atanh_scaled(&BigUint::one(), &BigUint::from(3u32), w);
    let lo = BigUint::from(2 * s) * l2_lo + (f_lo << 1);
    let hi = BigUint::from(2 * s) * l2_hi + (f_hi << 1);
    (lo, hi)
}

fn ln_interval(k: &BigUint, precision_bits: u64) -> Interval {
    if k.is_one() {
        return Interval { lo: Dyadic::zero(), hi: Dyadic::zero(), precision_bits };
    }
    let w = precision_bits + 64;
    let (lo, hi) = ln_scaled(k, w);
    // Round outward to precision_bits + 2 fractional bits: the guard bits
    // keep correctness, the rounding keeps the advertised width honest and
    // the mantissas small.
    let b = precision_bits + 2;
    let shift = w - b;
    let lo = lo >> shift;
    let hi = (hi >> shift) + 1u32;
    Interval {
        lo: Dyadic::new(BigInt::from_biguint(Sign::Plus, lo), -(b as i64)),
        hi: Dyadic::new(BigInt::from_biguint(Sign::Plus, hi), -(b as i64)),
        precision_bits,
    }
}

fn compare_rational_log(r: &BigRational, k: &BigUint, ceiling: u64) -> Comparison {
    // ln 1 = 0 and r = 0 are decidable exactly; otherwise refine.
    if k.is_one() {
        return r.cmp(&BigRational::zero()).into();
    }
    if r.is_zero() {
        return Comparison::Less;
    }
    let mut bits = 32u64.min(ceiling.max(1));
    loop {
        let iv = ln_interval(k, bits);
        if iv.lo.cmp_rational(r) == Ordering::Less && iv.hi.cmp_rational(r) == Ordering::Greater {
            // r strictly inside: refine further
        } else if iv.hi.cmp_rational(r) == Ordering::Less {
            return Comparison::Greater; // ln k < r
        } else if iv.lo.cmp_rational(r) == Ordering::Greater {
            return Comparison::Less; // r < ln k
        }
        if bits >= ceiling {
            return Comparison::Undecided { precision_bits: bits };
        }
        bits = (bits * 2).min(ceiling);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ln(k: u64) -> Value {
        Value::ln_int(BigUint::from(k))
    }

    fn rat(p: u64, q: u64) -> Value {
        Value::from_ratio(p, q)
    }

    #[test]
    fn same_kind_comparisons_are_exact() {
        assert_eq!(ln(6).compare(&ln(6)), Comparison::Equal);
        assert_eq!(rat(3, 1).compare(&rat(4, 1)), Comparison::Less);
        assert_eq!(ln(7).compare(&ln(5)), Comparison::Greater);
    }

    #[test]
    fn cross_kind_comparison_refines() {
        // ln 3 ≈ 1.0986 < 11/10
        assert_eq!(ln(3).compare(&rat(11, 10)), Comparison::Less);
        assert_eq!(rat(11, 10).compare(&ln(3)), Comparison::Greater);
        // ln 2 ≈ 0.6931 > 2/3
        assert_eq!(ln(2).compare(&rat(2, 3)), Comparison::Greater);
    }

    #[test]
    fn cross_kind_zero_is_equal() {
        assert_eq!(ln(1).compare(&rat(0, 1)), Comparison::Equal);
        assert_eq!(Value::zero(ValueKind::LogInt), Value::zero(ValueKind::Rational));
    }

    #[test]
    fn undecided_when_ceiling_too_low() {
        // 408/589 < ln 2 but agrees to ~2e-5; 8 bits cannot separate them.
        let near = rat(408, 589);
        assert_eq!(ln(2).compare_with_ceiling(&near, 8), Comparison::Undecided {
            precision_bits: 8
        });
        assert_eq!(ln(2).compare_with_ceiling(&near, 64), Comparison::Greater);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(ln(2).add(&ln(3)).unwrap(), ln(6));
        assert_eq!(rat(3, 1).add(&rat(5, 1)).unwrap(), rat(8, 1));
        assert_eq!(ln(2).add(&ln(2)).unwrap().add(&ln(2)).unwrap(), ln(8));
        assert_eq!(ln(2).add(&rat(1, 1)), Err(KindMismatch));
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(ln(3).scale(0), ln(1));
        assert_eq!(rat(7, 2).scale(0), rat(0, 1));
        assert_eq!(ln(3).scale(2), ln(9));
        assert_eq!(rat(3, 1).scale(3), rat(9, 1));
    }

    #[test]
    fn checked_sub() {
        assert_eq!(ln(10).checked_sub(&ln(5)), Some(ln(2)));
        assert_eq!(ln(10).checked_sub(&ln(4)), None);
        assert_eq!(rat(5, 2).checked_sub(&rat(1, 2)), Some(rat(2, 1)));
        assert_eq!(rat(1, 2).checked_sub(&rat(5, 2)), None);
    }

    #[test]
    fn approx_of_rationals_is_tight() {
        let iv = rat(3, 1).approx(20);
        assert_eq!(iv.lo, iv.hi);
        assert!(iv.contains_rational(&BigRational::from_integer(3.into())));
        let iv = ln(1).approx(20);
        assert!(iv.width().is_zero());
    }

    #[test]
    fn approx_ln2_matches_reference() {
        let iv = ln(2).approx(20);
        let lo = iv.lo.to_f64();
        let hi = iv.hi.to_f64();
        assert!(lo <= core::f64::consts::LN_2 && core::f64::consts::LN_2 <= hi);
        assert!(hi - lo <= 2f64.powi(-20));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat(3, 4).to_decimal_string(6), "0.750000");
        assert_eq!(ln(1).to_decimal_string(6), "0.000000");
        let s = ln(2).to_decimal_string(12);
        assert_eq!(s, "0.693147180560");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "0/1", "ln(2)", "ln(1)", "123456789123456789/7"] {
            let v: Value = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<Value>().unwrap(), v);
        }
        assert_eq!("7".parse::<Value>().unwrap(), rat(7, 1));
        assert!("ln(0)".parse::<Value>().is_err());
        assert!("3/0".parse::<Value>().is_err());
        assert!("x".parse::<Value>().is_err());
    }

    proptest! {
        #[test]
        fn trichotomy_on_log_ints(a in 1u64..100_000, b in 1u64..100_000) {
            let c = ln(a).compare(&ln(b));
            prop_assert_eq!(c.decided().unwrap(), a.cmp(&b));
        }

        #[test]
        fn addition_is_associative_and_commutative(
            a in 1u64..10_000, b in 1u64..10_000, c in 1u64..10_000
        ) {
            let (x, y, z) = (ln(a), ln(b), ln(c));
            let left = x.add(&y).unwrap().add(&z).unwrap();
            let right = x.add(&y.add(&z).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());

            let (x, y, z) = (rat(a, 7), rat(b, 3), rat(c, 5));
            let left = x.add(&y).unwrap().add(&z).unwrap();
            let right = x.add(&y.add(&z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn approx_nests_and_contains(k in 2u64..1_000_000, bits in 2u64..40) {
            let coarse = ln(k).approx(bits);
            let fine = ln(k).approx(bits * 2);
            prop_assert!(coarse.contains(&fine), "nesting failed for k={k} bits={bits}");
            // f64 ln as an independent reference point
            let reference = (k as f64).ln();
            prop_assert!(coarse.lo.to_f64() <= reference + 1e-9);
            prop_assert!(coarse.hi.to_f64() >= reference - 1e-9);
            // width bound: ≤ 2^-bits · max(1, value)
            let max1 = reference.max(1.0);
            prop_assert!(coarse.width().to_f64_lossy() <= 2f64.powi(-(bits as i32)) * max1 * 1.01);
        }

        #[test]
        fn log_additivity_of_enclosures(a in 2u64..10_000, b in 2u64..10_000) {
            // ln(ab) must lie inside the sum of the enclosures of ln a and ln b.
            let ia = ln(a).approx(48);
            let ib = ln(b).approx(48);
            let iab = ln(a * b).approx(48);
            let sum_lo = ia.lo.to_rational() + ib.lo.to_rational();
            let sum_hi = ia.hi.to_rational() + ib.hi.to_rational();
            prop_assert!(iab.hi.to_rational() >= sum_lo);
            prop_assert!(iab.lo.to_rational() <= sum_hi);
        }
    }

    // proptest needs a rational-to-f64 helper for the width assertion
    trait ToF64Lossy {
        fn to_f64_lossy(&self) -> f64;
    }
    impl ToF64Lossy for BigRational {
        fn to_f64_lossy(&self) -> f64 {
            super::rational_to_f64(self)
        }
    }
}
