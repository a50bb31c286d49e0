//! Built-in generator families and user-defined specs.
//!
//! A [`LikenSpec`] describes a strictly increasing stream of positive
//! generators, all of one value kind. The named families cover the
//! canonical examples: `nstar` (logarithms of the primes), `modclass p`
//! (the multiplicative class `{m ≡ 1 mod p}` via its irreducibles),
//! numerical semigroups, and finite custom lists of either kind.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::exact::{Value, ValueKind};
use crate::sieve::PrimeSieve;

/// Serializable description of a generator family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LikenSpec {
    /// Natural numbers under multiplication: generators `ln p` for primes `p`.
    Nstar,
    /// The class `{m : m ≡ 1 (mod p), m ≥ 1}` under multiplication.
    Modclass { p: u64 },
    /// Numerical semigroup generated by the given naturals (rational kind).
    Numerical { gens: Vec<u64> },
    /// Finite list of rational generators, strictly increasing.
    CustomRational { values: Vec<Value> },
    /// Finite list of integers `k ≥ 2`; generators `ln k`.
    CustomLogint { ints: Vec<u64> },
}

pub fn nstar() -> LikenSpec {
    LikenSpec::Nstar
}

pub fn modclass(p: u64) -> Result<LikenSpec, SpecError> {
    if p == 0 {
        return Err(SpecError::BadModulus);
    }
    Ok(LikenSpec::Modclass { p })
}

pub fn numerical(gens: &[u64]) -> Result<LikenSpec, SpecError> {
    if gens.is_empty() {
        return Err(SpecError::EmptyList);
    }
    if let Some(pos) = gens.iter().position(|&g| g == 0) {
        return Err(SpecError::NonPositive(pos + 1));
    }
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(LikenSpec::Numerical { gens: sorted })
}

/// Wrap an explicit, strictly increasing list of positive values of one kind.
pub fn custom(values: Vec<Value>) -> Result<LikenSpec, SpecError> {
    if values.is_empty() {
        return Err(SpecError::EmptyList);
    }
    let kind = values[0].kind();
    for (i, v) in values.iter().enumerate() {
        if v.kind() != kind {
            return Err(SpecError::MixedKinds);
        }
        if v.is_zero() {
            return Err(SpecError::NonPositive(i + 1));
        }
        if i > 0 && values[i - 1].cmp_same_kind(v) != std::cmp::Ordering::Less {
            return Err(SpecError::NotIncreasing(i + 1));
        }
    }
    match kind {
        ValueKind::Rational => Ok(LikenSpec::CustomRational { values }),
        ValueKind::LogInt => {
            let ints = values
                .iter()
                .map(|v| {
                    let k = v.log_operand().unwrap();
                    u64::try_from(k).expect("custom log-int generators fit in u64")
                })
                .collect();
            Ok(LikenSpec::CustomLogint { ints })
        }
    }
}

pub fn custom_logint(ints: &[u64]) -> Result<LikenSpec, SpecError> {
    if let Some(pos) = ints.iter().position(|&k| k == 0) {
        return Err(SpecError::NonPositive(pos + 1));
    }
    custom(ints.iter().map(|&k| Value::ln_int(BigUint::from(k))).collect())
}

pub fn custom_rational(values: Vec<BigRational>) -> Result<LikenSpec, SpecError> {
    if let Some(pos) = values.iter().position(|v| v < &BigRational::zero()) {
        return Err(SpecError::NonPositive(pos + 1));
    }
    custom(values.into_iter().map(Value::rational).collect())
}

impl LikenSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            LikenSpec::Nstar => Ok(()),
            LikenSpec::Modclass { p } => {
                if *p == 0 {
                    Err(SpecError::BadModulus)
                } else {
                    Ok(())
                }
            }
            LikenSpec::Numerical { gens } => numerical(gens).map(drop),
            LikenSpec::CustomRational { values } => custom(values.clone()).map(drop),
            LikenSpec::CustomLogint { ints } => custom_logint(ints).map(drop),
        }
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            LikenSpec::Nstar | LikenSpec::Modclass { .. } | LikenSpec::CustomLogint { .. } => {
                ValueKind::LogInt
            }
            LikenSpec::Numerical { .. } | LikenSpec::CustomRational { .. } => ValueKind::Rational,
        }
    }

    pub fn display_name(&self) -> String {
        match self {
            LikenSpec::Nstar => "nstar".into(),
            LikenSpec::Modclass { p } => format!("modclass({p})"),
            LikenSpec::Numerical { gens } => {
                let parts: Vec<String> = gens.iter().map(u64::to_string).collect();
                format!("numerical<{}>", parts.join(","))
            }
            LikenSpec::CustomRational { values } => {
                let parts: Vec<String> = values.iter().map(Value::to_string).collect();
                format!("custom[{}]", parts.join(","))
            }
            LikenSpec::CustomLogint { ints } => {
                let parts: Vec<String> = ints.iter().map(u64::to_string).collect();
                format!("custom-ln[{}]", parts.join(","))
            }
        }
    }

    /// A fresh single-consumer generator stream. Streams are clonable by
    /// re-construction: each call starts from the first generator.
    pub fn generators(&self) -> GenStream {
        match self {
            LikenSpec::Nstar => GenStream::Primes { sieve: PrimeSieve::new(), next: 0 },
            LikenSpec::Modclass { p } => GenStream::Class { p: *p, last: 1 },
            LikenSpec::Numerical { gens } => {
                let values = gens.iter().map(|&g| Value::from_integer(g)).collect::<Vec<_>>();
                GenStream::Finite { values, next: 0 }
            }
            LikenSpec::CustomRational { values } => {
                GenStream::Finite { values: values.clone(), next: 0 }
            }
            LikenSpec::CustomLogint { ints } => {
                let values =
                    ints.iter().map(|&k| Value::ln_int(BigUint::from(k))).collect::<Vec<_>>();
                GenStream::Finite { values, next: 0 }
            }
        }
    }

    /// Whether the generator stream is a finite list.
    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            LikenSpec::Numerical { .. }
                | LikenSpec::CustomRational { .. }
                | LikenSpec::CustomLogint { .. }
        )
    }

    /// Number of generators for finite specs.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            LikenSpec::Numerical { gens } => Some(gens.len()),
            LikenSpec::CustomRational { values } => Some(values.len()),
            LikenSpec::CustomLogint { ints } => Some(ints.len()),
            _ => None,
        }
    }

    /// The value of generator `k` (1-based), pulling streams as needed.
    pub fn generator_value(&self, k: u32) -> Option<Value> {
        if k == 0 {
            return None;
        }
        self.generators().nth(k as usize - 1)
    }
}

/// Strictly increasing stream of generator values. Pulling until the
/// yielded value exceeds a bound `B` is the tail-bound guarantee: every
/// generator `≤ B` has been produced by then.
#[derive(Clone, Debug)]
pub enum GenStream {
    Primes { sieve: PrimeSieve, next: usize },
    Class { p: u64, last: u64 },
    Finite { values: Vec<Value>, next: usize },
}

impl Iterator for GenStream {
    type Item = Value;

    fn next(&mut self) -> Option<Value> {
        match self {
            GenStream::Primes { sieve, next } => {
                let p = sieve.nth(*next);
                *next += 1;
                Some(Value::ln_int(BigUint::from(p)))
            }
            GenStream::Class { p, last } => {
                let mut m = *last + *p;
                while !class_irreducible(m, *p) {
                    m += *p;
                }
                *last = m;
                Some(Value::ln_int(BigUint::from(m)))
            }
            GenStream::Finite { values, next } => {
                let v = values.get(*next).cloned();
                *next += 1;
                v
            }
        }
    }
}

/// Is `m > 1` irreducible inside the multiplicative class `{x ≡ 1 mod p}`?
/// Trial factorization over class divisors up to √m.
pub fn class_irreducible(m: u64, p: u64) -> bool {
    if m <= 1 {
        return false;
    }
    let step = p;
    let mut u = 1 + step;
    while u * u <= m {
        if m % u == 0 && (m / u) % p == 1 % p {
            return false;
        }
        u += step;
    }
    true
}

/// Minimalization report for a numerical-semigroup generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalInfo {
    pub minimal_gens: Vec<u64>,
    pub gcd: u64,
    pub cofinite: bool,
    /// Generators removed as redundant, with one witness decomposition
    /// over the remaining generators.
    pub redundancies: Vec<(u64, Vec<(u64, u32)>)>,
}

impl NumericalInfo {
    pub fn analyze(gens: &[u64]) -> Result<NumericalInfo, SpecError> {
        if gens.is_empty() {
            return Err(SpecError::EmptyList);
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted[0] == 0 {
            return Err(SpecError::NonPositive(1));
        }
        let gcd = sorted.iter().copied().fold(0u64, num::integer::gcd);

        let mut minimal: Vec<u64> = Vec::new();
        let mut redundancies = Vec::new();
        for &g in &sorted {
            match decompose_over(g, &minimal) {
                Some(dec) => redundancies.push((g, dec)),
                None => minimal.push(g),
            }
        }
        Ok(NumericalInfo { minimal_gens: minimal, gcd, cofinite: gcd == 1, redundancies })
    }
}

/// One decomposition of `target` as a non-trivial ℕ-combination of `gens`
/// (total multiplicity ≥ 2 is implied: gens are all < target or equal,
/// and equality alone is excluded by the caller's dedup).
fn decompose_over(target: u64, gens: &[u64]) -> Option<Vec<(u64, u32)>> {
    if gens.is_empty() {
        return None;
    }
    let t = target as usize;
    // parent[v] = generator used to reach v
    let mut parent: Vec<Option<u64>> = vec![None; t + 1];
    let mut reachable = vec![false; t + 1];
    reachable[0] = true;
    for &g in gens {
        let g_us = g as usize;
        for v in g_us..=t {
            if !reachable[v] && reachable[v - g_us] {
                reachable[v] = true;
                parent[v] = Some(g);
            }
        }
    }
    if !reachable[t] {
        return None;
    }
    let mut counts: std::collections::BTreeMap<u64, u32> = Default::default();
    let mut v = t;
    while v > 0 {
        let g = parent[v].expect("reachable chain");
        *counts.entry(g).or_insert(0) += 1;
        v -= g as usize;
    }
    Some(counts.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream_ints(spec: &LikenSpec, n: usize) -> Vec<u64> {
        spec.generators()
            .take(n)
            .map(|v| u64::try_from(v.log_operand().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn nstar_generators_are_primes() {
        let spec = nstar();
        assert_eq!(stream_ints(&spec, 3), vec![2, 3, 5]);
        assert_eq!(stream_ints(&spec, 25)[24], 97);
    }

    #[test]
    fn nstar_tail_bound() {
        // Pull until the stream exceeds ln 30: exactly the primes ≤ 30 remain.
        let bound = Value::ln_int(BigUint::from(30u32));
        let mut produced = Vec::new();
        for v in nstar().generators() {
            if v.cmp_same_kind(&bound) == std::cmp::Ordering::Greater {
                break;
            }
            produced.push(u64::try_from(v.log_operand().unwrap()).unwrap());
        }
        assert_eq!(produced, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn modclass_two_yields_odd_primes() {
        let spec = modclass(2).unwrap();
        assert_eq!(stream_ints(&spec, 5), vec![3, 5, 7, 11, 13]);
        assert!(!stream_ints(&spec, 20).contains(&9));
        assert!(!stream_ints(&spec, 20).contains(&15));
    }

    #[test]
    fn modclass_one_matches_nstar() {
        let a = stream_ints(&modclass(1).unwrap(), 100);
        let b = stream_ints(&nstar(), 100);
        assert_eq!(a, b);
    }

    #[test]
    fn modclass_four_hilbert_witnesses() {
        let gens = stream_ints(&modclass(4).unwrap(), 60);
        assert!(gens.contains(&9));
        assert!(gens.contains(&21));
        assert!(gens.contains(&49));
        assert!(!gens.contains(&441), "441 = 9·49 = 21² is composed in the class");
    }

    #[test]
    fn numerical_minimalization() {
        let info = NumericalInfo::analyze(&[3, 4, 5]).unwrap();
        assert_eq!(info.minimal_gens, vec![3, 4, 5]);
        assert_eq!(info.gcd, 1);
        assert!(info.cofinite);

        let info = NumericalInfo::analyze(&[3, 4, 5, 7]).unwrap();
        assert_eq!(info.minimal_gens, vec![3, 4, 5]);
        assert_eq!(info.redundancies, vec![(7, vec![(3, 1), (4, 1)])]);

        let info = NumericalInfo::analyze(&[2, 4]).unwrap();
        assert_eq!(info.minimal_gens, vec![2]);
        assert_eq!(info.gcd, 2);
        assert!(!info.cofinite);
    }

    #[test]
    fn custom_validation() {
        assert!(custom_logint(&[2, 257]).is_ok());
        assert_eq!(
            custom(vec![Value::ln_int(3u32), Value::ln_int(2u32)]),
            Err(SpecError::NotIncreasing(2))
        );
        assert_eq!(
            custom(vec![Value::from_integer(0), Value::from_integer(1)]),
            Err(SpecError::NonPositive(1))
        );
        assert_eq!(
            custom(vec![Value::from_integer(1), Value::ln_int(2u32)]),
            Err(SpecError::MixedKinds)
        );
        assert_eq!(custom(vec![]), Err(SpecError::EmptyList));
        assert_eq!(custom_logint(&[0, 2]), Err(SpecError::NonPositive(1)));
    }

    #[test]
    fn streams_strictly_increase() {
        for spec in [
            nstar(),
            modclass(2).unwrap(),
            modclass(4).unwrap(),
            numerical(&[6, 9, 20]).unwrap(),
        ] {
            let gens: Vec<Value> = spec.generators().take(1000).collect();
            for w in gens.windows(2) {
                assert_eq!(w[0].cmp_same_kind(&w[1]), std::cmp::Ordering::Less);
                assert!(!w[0].is_zero());
            }
        }
    }

    #[test]
    fn spec_config_round_trip() {
        for spec in [
            nstar(),
            modclass(2).unwrap(),
            numerical(&[6, 9, 20]).unwrap(),
            custom_logint(&[2, 257]).unwrap(),
        ] {
            let json = serde_json::to_string(&spec).unwrap();
            let back: LikenSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
        }
        let parsed: LikenSpec = serde_json::from_str(r#"{"kind":"modclass","p":2}"#).unwrap();
        assert_eq!(parsed, modclass(2).unwrap());
        let parsed: LikenSpec =
            serde_json::from_str(r#"{"kind":"numerical","gens":[6,9,20]}"#).unwrap();
        assert_eq!(parsed, numerical(&[6, 9, 20]).unwrap());
        let parsed: LikenSpec =
            serde_json::from_str(r#"{"kind":"custom_logint","ints":[2,257]}"#).unwrap();
        assert_eq!(parsed, custom_logint(&[2, 257]).unwrap());
    }
}
