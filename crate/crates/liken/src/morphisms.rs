//! Isomorphism testing between likens.
//!
//! Two likens with uniqueness are isomorphic exactly when their generator
//! sequences are homothetic: `a_k = λ·b_k` for one positive λ. Rational λ
//! between log-int families reduces to integer power identities and is
//! certified exactly; an irrational λ can only be refuted (by separating
//! cross-ratio enclosures) or left undecided — the tri-state result is
//! part of the contract.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use serde::Serialize;

use crate::engine::{omega, Prefix};
use crate::error::{MorphismError, QueryError};
use crate::exact::{Value, ValueKind, DEFAULT_PRECISION_CEILING};
use crate::families::LikenSpec;
use crate::intutil::primitive_root;
use crate::rep::ExponentVec;

/// Why two generator sequences cannot be homothetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "witness", rename_all = "kebab-case")]
pub enum NotIsoWitness {
    /// Finite generator counts differ.
    GeneratorCount { left: usize, right: usize },
    /// `a_k = λ·b_k` fails exactly at this k for the forced λ = a₁/b₁.
    RatioMismatch { k: usize },
    /// Cross-ratio `a_i·b_j` vs `a_j·b_i` separated by interval refinement.
    CrossRatio { i: usize, j: usize, bits: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum HomothetyOutcome {
    Isomorphic {
        /// λ with a_k = λ·b_k, as an exact rational "p/q".
        lambda: String,
        /// Per-generator exact verification records.
        checks: Vec<String>,
    },
    NotIsomorphic { witness: NotIsoWitness },
    UndecidedAtPrecision { bits: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomothetyResult {
    pub outcome: HomothetyOutcome,
    /// Number of leading generators compared.
    pub tested_k: usize,
    pub finite_left: bool,
    pub finite_right: bool,
}

impl HomothetyResult {
    pub fn lambda(&self) -> Option<BigRational> {
        match &self.outcome {
            HomothetyOutcome::Isomorphic { lambda, .. } => {
                let (p, q) = lambda.split_once('/').unwrap_or((lambda.as_str(), "1"));
                Some(BigRational::new(p.parse().ok()?, q.parse().ok()?))
            }
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self.outcome, HomothetyOutcome::Isomorphic { .. })
    }
}

/// Test `a_k = λ·b_k` for k ≤ k_max over the two specs' generators.
pub fn homothety_test(
    left: &LikenSpec,
    right: &LikenSpec,
    k_max: usize,
    precision_ceiling: u64,
) -> Result<HomothetyResult, MorphismError> {
    assert!(k_max >= 1);
    let a: Vec<Value> = left.generators().take(k_max).collect();
    let b: Vec<Value> = right.generators().take(k_max).collect();
    if a.is_empty() || b.is_empty() {
        return Err(MorphismError::EmptySpec);
    }
    let mut result = HomothetyResult {
        outcome: HomothetyOutcome::UndecidedAtPrecision { bits: 0 },
        tested_k: a.len().min(b.len()),
        finite_left: left.is_finite(),
        finite_right: right.is_finite(),
    };
    if a.len() != b.len() {
        // The shorter stream is exhausted: the dimensions differ.
        result.outcome = HomothetyOutcome::NotIsomorphic {
            witness: NotIsoWitness::GeneratorCount { left: a.len(), right: b.len() },
        };
        return Ok(result);
    }

    result.outcome = match (left.kind(), right.kind()) {
        (ValueKind::Rational, ValueKind::Rational) => rational_homothety(&a, &b),
        (ValueKind::LogInt, ValueKind::LogInt) => logint_homothety(&a, &b, precision_ceiling),
        _ => cross_ratio_refutation(&a, &b, precision_ceiling),
    };
    Ok(result)
}

pub fn homothety_test_default(
    left: &LikenSpec,
    right: &LikenSpec,
    k_max: usize,
) -> Result<HomothetyResult, MorphismError> {
    homothety_test(left, right, k_max, DEFAULT_PRECISION_CEILING)
}

fn rational_homothety(a: &[Value], b: &[Value]) -> HomothetyOutcome {
    let lambda = a[0].as_rational().unwrap() / b[0].as_rational().unwrap();
    let mut checks = Vec::new();
    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
        let expected = bk.as_rational().unwrap() * &lambda;
        if ak.as_rational().unwrap() != &expected {
            return HomothetyOutcome::NotIsomorphic {
                witness: NotIsoWitness::RatioMismatch { k: k + 1 },
            };
        }
        checks.push(format!("a_{} = λ·b_{}: {} = {}·{}", k + 1, k + 1, ak, fmt_ratio(&lambda), bk));
    }
    HomothetyOutcome::Isomorphic { lambda: fmt_ratio(&lambda), checks }
}

/// λ = ln g₁ / ln h₁ is rational exactly when g₁ and h₁ are powers of a
/// common primitive root; then `a_k = (p/q)·b_k ⟺ g_k^q = h_k^p`, an
/// exact integer identity per generator.
fn logint_homothety(a: &[Value], b: &[Value], ceiling: u64) -> HomothetyOutcome {
    let g1 = a[0].log_operand().unwrap();
    let h1 = b[0].log_operand().unwrap();
    let (ra, ea) = primitive_root(g1);
    let (rb, eb) = primitive_root(h1);
    if ra == rb {
        let lambda = BigRational::new(BigInt::from(ea), BigInt::from(eb));
        let mut checks = Vec::new();
        let qe = eb;
        let pe = ea;
        for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
            let g = ak.log_operand().unwrap();
            let h = bk.log_operand().unwrap();
            if g.pow(qe) != h.pow(pe) {
                return HomothetyOutcome::NotIsomorphic {
                    witness: NotIsoWitness::RatioMismatch { k: k + 1 },
                };
            }
            checks.push(format!("{g}^{qe} = {h}^{pe}"));
        }
        HomothetyOutcome::Isomorphic { lambda: fmt_ratio(&lambda), checks }
    } else {
        // Irrational λ: certification is impossible, try to refute.
        cross_ratio_refutation(a, b, ceiling)
    }
}

/// Homothety forces `a_i·b_j = a_j·b_i` for all pairs. Refine enclosures
/// of both products until separation or the ceiling.
fn cross_ratio_refutation(a: &[Value], b: &[Value], ceiling: u64) -> HomothetyOutcome {
    let mut max_bits = 0u64;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let mut bits = 32u64.min(ceiling.max(1));
            loop {
                let lhs = a[i].approx(bits).mul(&b[j].approx(bits));
                let rhs = a[j].approx(bits).mul(&b[i].approx(bits));
                if lhs.separate(&rhs).is_some() {
                    return HomothetyOutcome::NotIsomorphic {
                        witness: NotIsoWitness::CrossRatio { i: i + 1, j: j + 1, bits },
                    };
                }
                if bits >= ceiling {
                    max_bits = max_bits.max(bits);
                    break;
                }
                bits = (bits * 2).min(ceiling);
            }
        }
    }
    HomothetyOutcome::UndecidedAtPrecision { bits: max_bits }
}

fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Outcome of the order-isomorphism prefix check via the exponent spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "order", rename_all = "kebab-case")]
pub enum OrderIsoOutcome {
    ConsistentUpTo { n: usize },
    Mismatch { n: usize, left: ExponentVec, right: ExponentVec },
}

/// Compare the representation of `x_n` in one prefix with `y_n` in the
/// other, as abstract exponent vectors (generator k ↔ generator k, both
/// sequences sorted increasing). Both prefixes must be unique-rep and of
/// equal length.
pub fn order_iso_prefix_test(
    left: &Prefix,
    right: &Prefix,
) -> Result<OrderIsoOutcome, MorphismError> {
    if left.len() != right.len() {
        return Err(MorphismError::LengthMismatch(left.len(), right.len()));
    }
    for n in 0..left.len() {
        let l = left.element(n).unique_rep().ok_or(MorphismError::NonUnique(n))?;
        let r = right.element(n).unique_rep().ok_or(MorphismError::NonUnique(n))?;
        if l != r {
            return Ok(OrderIsoOutcome::Mismatch { n, left: l.clone(), right: r.clone() });
        }
    }
    Ok(OrderIsoOutcome::ConsistentUpTo { n: left.last_index() })
}

/// Ψ: image of the source prefix's element `n` under the algebraic
/// isomorphism into the target liken — the target's Ω applied to the
/// source representation. Callers compare it with the target's own x_n.
pub fn psi_map(source: &Prefix, target: &LikenSpec, n: usize) -> Result<Value, QueryError> {
    if n >= source.len() {
        return Err(QueryError::IndexOutOfRange);
    }
    let rep = source
        .element(n)
        .unique_rep()
        .ok_or_else(|| QueryError::NonUnique(source.element(n).reps.clone()))?;
    omega(target, rep)
}

/// Exponent vector of the prime factorization of `m` (generator k ↔ k-th
/// prime); the canonical representation pattern of the multiplicative
/// natural numbers.
pub fn factorization_vec(m: u64, sieve: &mut crate::sieve::PrimeSieve) -> ExponentVec {
    let factors = crate::intutil::factorize(m);
    ExponentVec::from_entries(factors.into_iter().map(|(p, e)| {
        let idx = sieve.index_of(p).expect("factors are prime");
        (idx as u32 + 1, e)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate, Limit};
    use crate::families;
    use num::One;

    const CEIL: u64 = 4096;

    #[test]
    fn identical_specs_are_isomorphic_with_unit_lambda() {
        for spec in [
            families::nstar(),
            families::modclass(2).unwrap(),
            families::numerical(&[3, 4, 5]).unwrap(),
            families::custom_logint(&[2, 257]).unwrap(),
        ] {
            let r = homothety_test(&spec, &spec, 5, CEIL).unwrap();
            assert_eq!(r.lambda(), Some(BigRational::one()), "{}", spec.display_name());
        }
    }

    #[test]
    fn scaled_numerical_semigroups() {
        let a = families::numerical(&[3, 4, 5]).unwrap();
        let b = families::numerical(&[6, 8, 10]).unwrap();
        let r = homothety_test(&a, &b, 3, CEIL).unwrap();
        assert_eq!(r.lambda(), Some(BigRational::new(1.into(), 2.into())));
        // Symmetry: the reverse direction carries 1/λ.
        let r = homothety_test(&b, &a, 3, CEIL).unwrap();
        assert_eq!(r.lambda(), Some(BigRational::new(2.into(), 1.into())));
    }

    #[test]
    fn nstar_vs_odd_numbers_is_refuted() {
        let r =
            homothety_test(&families::nstar(), &families::modclass(2).unwrap(), 3, CEIL).unwrap();
        match r.outcome {
            HomothetyOutcome::NotIsomorphic {
                witness: NotIsoWitness::CrossRatio { i, j, .. },
            } => {
                assert_eq!((i, j), (1, 2), "ln2·ln5 vs ln3·ln3 separate");
            }
            other => panic!("expected cross-ratio refutation, got {other:?}"),
        }
    }

    #[test]
    fn squares_of_primes_are_isomorphic_to_primes() {
        let a = families::custom_logint(&[2, 3, 5]).unwrap();
        let b = families::custom_logint(&[4, 9, 25]).unwrap();
        let r = homothety_test(&a, &b, 3, CEIL).unwrap();
        assert_eq!(r.lambda(), Some(BigRational::new(1.into(), 2.into())));
        let r = homothety_test(&b, &a, 3, CEIL).unwrap();
        assert_eq!(r.lambda(), Some(BigRational::new(2.into(), 1.into())));
    }

    #[test]
    fn rational_lambda_mismatch_is_exact() {
        let a = families::custom_logint(&[2, 3]).unwrap();
        let b = families::custom_logint(&[4, 10]).unwrap();
        let r = homothety_test(&a, &b, 2, CEIL).unwrap();
        assert_eq!(
            r.outcome,
            HomothetyOutcome::NotIsomorphic { witness: NotIsoWitness::RatioMismatch { k: 2 } },
            "3² ≠ 10"
        );
    }

    #[test]
    fn generator_count_mismatch() {
        let a = families::numerical(&[3, 4, 5]).unwrap();
        let b = families::numerical(&[2, 3]).unwrap();
        let r = homothety_test(&a, &b, 5, CEIL).unwrap();
        assert_eq!(
            r.outcome,
            HomothetyOutcome::NotIsomorphic {
                witness: NotIsoWitness::GeneratorCount { left: 3, right: 2 }
            }
        );
    }

    #[test]
    fn undecided_at_tiny_ceiling() {
        // ln2/ln3 is irrational and 2 bits cannot separate the cross-ratios.
        let a = families::custom_logint(&[2, 3]).unwrap();
        let b = families::custom_logint(&[3, 5]).unwrap();
        let r = homothety_test(&a, &b, 2, 2).unwrap();
        assert!(matches!(r.outcome, HomothetyOutcome::UndecidedAtPrecision { .. }));
        // With the default ceiling the same pair is refuted.
        let r = homothety_test(&a, &b, 2, CEIL).unwrap();
        assert!(matches!(r.outcome, HomothetyOutcome::NotIsomorphic { .. }));
    }

    #[test]
    fn mixed_kind_refutation() {
        // a = (1, 2) rational vs b = (ln2, ln8): ratios 1/2 vs 1/3 separate.
        let a = families::numerical(&[1, 2]).unwrap();
        let b = families::custom_logint(&[2, 8]).unwrap();
        let r = homothety_test(&a, &b, 2, CEIL).unwrap();
        assert!(matches!(
            r.outcome,
            HomothetyOutcome::NotIsomorphic { witness: NotIsoWitness::CrossRatio { .. } }
        ));
        // a = (1, 3) vs (ln2, ln8) is a true homothety (λ = 1/ln2): the
        // exact contract cannot certify it; it stays undecided.
        let a = families::numerical(&[1, 3]).unwrap();
        let r = homothety_test(&a, &b, 2, 256).unwrap();
        assert!(matches!(r.outcome, HomothetyOutcome::UndecidedAtPrecision { .. }));
    }

    #[test]
    fn order_iso_identity_and_mismatch() {
        let ns = enumerate(&families::nstar(), Limit::Count(64)).unwrap();
        let ns2 = enumerate(&families::nstar(), Limit::Count(64)).unwrap();
        assert_eq!(
            order_iso_prefix_test(&ns, &ns2).unwrap(),
            OrderIsoOutcome::ConsistentUpTo { n: 63 }
        );

        let k2 = enumerate(&families::modclass(2).unwrap(), Limit::Count(64)).unwrap();
        match order_iso_prefix_test(&ns, &k2).unwrap() {
            OrderIsoOutcome::Mismatch { n, left, right } => {
                assert_eq!(n, 3, "x₃ is composed, y₃ is irreducible");
                assert_eq!(left, ExponentVec::from_entries([(1, 2)]));
                assert_eq!(right, ExponentVec::unit(3));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn order_iso_errors() {
        let ns = enumerate(&families::nstar(), Limit::Count(10)).unwrap();
        let short = enumerate(&families::nstar(), Limit::Count(5)).unwrap();
        assert_eq!(
            order_iso_prefix_test(&ns, &short).unwrap_err(),
            MorphismError::LengthMismatch(10, 5)
        );
        let nonunique =
            enumerate(&families::numerical(&[3, 4, 5]).unwrap(), Limit::Count(10)).unwrap();
        let other =
            enumerate(&families::numerical(&[6, 8, 10]).unwrap(), Limit::Count(10)).unwrap();
        assert!(matches!(
            order_iso_prefix_test(&nonunique, &other).unwrap_err(),
            MorphismError::NonUnique(_)
        ));
    }

    #[test]
    fn rational_lambda_preserves_order_to_two_thousand() {
        // Forward direction of the homothety criterion at prefix scale: a
        // certified homothety must yield an order-consistent prefix pair.
        let a = families::custom_logint(&[2, 3, 5]).unwrap();
        let b = families::custom_logint(&[4, 9, 25]).unwrap();
        let r = homothety_test(&a, &b, 3, CEIL).unwrap();
        assert!(r.is_isomorphic());
        let pa = enumerate(&a, Limit::Count(2000)).unwrap();
        let pb = enumerate(&b, Limit::Count(2000)).unwrap();
        assert_eq!(
            order_iso_prefix_test(&pa, &pb).unwrap(),
            OrderIsoOutcome::ConsistentUpTo { n: 1999 }
        );
    }

    #[test]
    fn order_mismatch_implies_no_homothety_certificate() {
        let ns = enumerate(&families::nstar(), Limit::Count(32)).unwrap();
        let k2 = enumerate(&families::modclass(2).unwrap(), Limit::Count(32)).unwrap();
        let order = order_iso_prefix_test(&ns, &k2).unwrap();
        assert!(matches!(order, OrderIsoOutcome::Mismatch { .. }));
        let hom =
            homothety_test(&families::nstar(), &families::modclass(2).unwrap(), 8, CEIL).unwrap();
        assert!(!hom.is_isomorphic(), "cross-consistency of the two tests");
    }

    #[test]
    fn psi_examples() {
        let ns = enumerate(&families::nstar(), Limit::Count(11)).unwrap();
        // Identity target: Ψ(x₉) = ln 10.
        assert_eq!(psi_map(&ns, &families::nstar(), 9).unwrap(), Value::ln_int(10u32));
        // ℕ* x₃ = 2a₁ maps into the odd-number liken as 2·ln3 = ln9 ≠ y₃ = ln7.
        let k2spec = families::modclass(2).unwrap();
        let image = psi_map(&ns, &k2spec, 3).unwrap();
        assert_eq!(image, Value::ln_int(9u32));
        let k2 = enumerate(&k2spec, Limit::Count(5)).unwrap();
        assert_ne!(&image, k2.value(3));
        // Ψ of the zero element is 0.
        assert_eq!(psi_map(&ns, &k2spec, 0).unwrap(), Value::zero(ValueKind::LogInt));
    }

    #[test]
    fn psi_unknown_generator() {
        let ns = enumerate(&families::nstar(), Limit::Count(11)).unwrap();
        // x₁₀ = a₅ needs 5 generators; the target has 2.
        let target = families::custom_logint(&[2, 3]).unwrap();
        assert_eq!(psi_map(&ns, &target, 10), Err(QueryError::UnknownGeneratorIndex(5)));
    }

    #[test]
    fn factorization_vectors() {
        let mut sieve = crate::sieve::PrimeSieve::new();
        assert_eq!(factorization_vec(1, &mut sieve), ExponentVec::zero());
        assert_eq!(factorization_vec(8, &mut sieve), ExponentVec::from_entries([(1, 3)]));
        assert_eq!(
            factorization_vec(10, &mut sieve),
            ExponentVec::from_entries([(1, 1), (3, 1)])
        );
        let ns = enumerate(&families::nstar(), Limit::Count(200)).unwrap();
        for n in 0..200 {
            assert_eq!(
                ns.element(n).reps[0],
                factorization_vec(n as u64 + 1, &mut sieve),
                "rep of x_{n} is the factorization of {}",
                n + 1
            );
        }
    }
}
