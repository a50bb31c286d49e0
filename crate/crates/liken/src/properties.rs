//! Property checkers over enumerated prefixes.
//!
//! Each checker is a pure function of an immutable [`Prefix`] returning a
//! [`PropertyReport`]: a verdict plus concrete witnesses that can be
//! re-validated against the defining inequality. Properties whose
//! statements quantify over all n (separation finiteness, the Legendre
//! limit) are reported with explicit prefix-scope notes: a prefix cannot
//! decide a limit, and the reports do not overclaim.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::engine::{subliken_z, Prefix, ZCursor};
use crate::exact::{Value, ValueKind};
use crate::families::{LikenSpec, NumericalInfo};
use crate::intutil::{analyze_rows, factorize, split_dependency};
use crate::rep::ExponentVec;
use crate::scan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    Dimension,
    Uniqueness,
    Positions,
    DisjointSupport,
    Parity,
    Convexity,
    Separation,
    Or,
    Bertrand,
    Legendre,
    GapLemmas,
}

impl PropertyId {
    pub const ALL: [PropertyId; 11] = [
        PropertyId::Dimension,
        PropertyId::Uniqueness,
        PropertyId::Positions,
        PropertyId::DisjointSupport,
        PropertyId::Parity,
        PropertyId::Convexity,
        PropertyId::Separation,
        PropertyId::Or,
        PropertyId::Bertrand,
        PropertyId::Legendre,
        PropertyId::GapLemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::Dimension => "dimension",
            PropertyId::Uniqueness => "uniqueness",
            PropertyId::Positions => "positions",
            PropertyId::DisjointSupport => "disjoint-support",
            PropertyId::Parity => "parity",
            PropertyId::Convexity => "convexity",
            PropertyId::Separation => "separation",
            PropertyId::Or => "or",
            PropertyId::Bertrand => "bertrand",
            PropertyId::Legendre => "legendre",
            PropertyId::GapLemmas => "gap-lemmas",
        }
    }

    pub fn from_name(s: &str) -> Option<PropertyId> {
        PropertyId::ALL.iter().copied().find(|p| p.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable { reason: String },
}

/// A concrete, re-checkable piece of evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub values: Vec<Value>,
    pub note: String,
}

/// Structured check-specific payloads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "data", rename_all = "kebab-case")]
pub enum ReportData {
    Legendre {
        /// (n, generator count, exact ratio as "count/n")
        series: Vec<(usize, usize, String)>,
    },
    Separation {
        count: usize,
        pairs: Vec<(usize, usize)>,
    },
    Dimension {
        exact: Option<usize>,
        at_least: usize,
    },
    Uniqueness {
        certificate: UniquenessEvidence,
    },
    Bertrand {
        checked: usize,
        unchecked: usize,
    },
    Positions {
        indices: Vec<usize>,
    },
    GapLemmas {
        trials: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum UniquenessEvidence {
    /// Generator exponent matrix has full rank over ℚ: uniqueness holds
    /// globally, not just on the prefix.
    CertifiedUnique { rank: usize },
    /// A rank defect yields two distinct vectors with one value.
    CertifiedNonUnique { witness_value: Value, reps: (ExponentVec, ExponentVec) },
    /// No global certificate; evidence is prefix-scope only.
    PrefixOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub prefix_len: usize,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<ReportData>,
    /// Prefix-scope caveats and other qualifications.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    fn new(property: PropertyId, prefix: &Prefix, verdict: Verdict) -> PropertyReport {
        PropertyReport {
            property,
            prefix_len: prefix.len(),
            verdict,
            witnesses: Vec::new(),
            data: None,
            note: None,
        }
    }

    fn inapplicable(property: PropertyId, prefix: &Prefix, reason: &str) -> PropertyReport {
        Self::new(property, prefix, Verdict::Inapplicable { reason: reason.to_string() })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn non_unique_reason(prefix: &Prefix) -> Option<String> {
    if prefix.unique_reps() {
        None
    } else {
        let e = prefix.elements().iter().find(|e| e.reps.len() > 1).unwrap();
        Some(format!(
            "prefix is not unique: element {} has {} representations",
            e.index,
            e.reps.len()
        ))
    }
}

/// Support of an element in a unique-reps prefix.
fn supp(prefix: &Prefix, n: usize) -> BTreeSet<u32> {
    prefix.element(n).unique_rep().expect("unique reps").support().collect()
}

/// Convexity (C): `2·x_{k+1} > x_k + x_{k+2}` for every k — equivalently,
/// strictly decreasing gaps.
pub fn check_convexity(prefix: &Prefix) -> PropertyReport {
    if prefix.len() < 3 {
        return PropertyReport::inapplicable(
            PropertyId::Convexity,
            prefix,
            "needs at least three elements",
        );
    }
    let violations = scan::convexity_violations(prefix);
    let mut report = PropertyReport::new(
        PropertyId::Convexity,
        prefix,
        if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
    );
    report.witnesses = violations
        .into_iter()
        .take(16)
        .map(|k| Witness {
            indices: vec![k, k + 1, k + 2],
            values: vec![
                prefix.value(k).clone(),
                prefix.value(k + 1).clone(),
                prefix.value(k + 2).clone(),
            ],
            note: format!("2·x_{} ≤ x_{} + x_{}", k + 1, k, k + 2),
        })
        .collect();
    report
}

/// Disjoint supports of consecutive elements.
pub fn check_disjoint_support(prefix: &Prefix) -> PropertyReport {
    if let Some(reason) = non_unique_reason(prefix) {
        return PropertyReport::inapplicable(PropertyId::DisjointSupport, prefix, &reason);
    }
    let mut report = PropertyReport::new(PropertyId::DisjointSupport, prefix, Verdict::Pass);
    for n in 1..prefix.len() - 1 {
        let a = prefix.element(n).unique_rep().unwrap();
        let b = prefix.element(n + 1).unique_rep().unwrap();
        if !a.supports_disjoint(b) {
            report.verdict = Verdict::Fail;
            report.witnesses.push(Witness {
                indices: vec![n, n + 1],
                values: vec![prefix.value(n).clone(), prefix.value(n + 1).clone()],
                note: "consecutive supports intersect".into(),
            });
            if report.witnesses.len() >= 16 {
                break;
            }
        }
    }
    report
}

/// Parity: no two consecutive elements are both divisible by a₁
/// (divisibility meaning membership of index 1 in the support).
pub fn check_parity(prefix: &Prefix) -> PropertyReport {
    if let Some(reason) = non_unique_reason(prefix) {
        return PropertyReport::inapplicable(PropertyId::Parity, prefix, &reason);
    }
    let mut report = PropertyReport::new(PropertyId::Parity, prefix, Verdict::Pass);
    for n in 1..prefix.len() - 1 {
        let a = prefix.element(n).unique_rep().unwrap();
        let b = prefix.element(n + 1).unique_rep().unwrap();
        if a.get(1) > 0 && b.get(1) > 0 {
            report.verdict = Verdict::Fail;
            report.witnesses.push(Witness {
                indices: vec![n, n + 1],
                values: vec![prefix.value(n).clone(), prefix.value(n + 1).clone()],
                note: "a₁ divides two consecutive elements".into(),
            });
            if report.witnesses.len() >= 16 {
                break;
            }
        }
    }
    report
}

/// Ockham's razor (OR): whenever supp(x_n) ∩ supp(z_n) = ∅, the next
/// element must be z_n. Computed with one streaming sub-liken enumeration
/// over the whole prefix; [`subliken_z`] is the per-index reference and
/// the two routes are cross-checked in tests.
pub fn check_or(prefix: &Prefix) -> PropertyReport {
    if let Some(reason) = non_unique_reason(prefix) {
        return PropertyReport::inapplicable(PropertyId::Or, prefix, &reason);
    }
    if prefix.len() < 3 {
        return PropertyReport::inapplicable(
            PropertyId::Or,
            prefix,
            "needs at least three elements",
        );
    }
    let mut report = PropertyReport::new(PropertyId::Or, prefix, Verdict::Pass);
    let mut cur = ZCursor::new(prefix.kind());
    let mut irr = prefix.irreducible_indices().iter().copied().peekable();
    // The cursor re-derives the prefix while advancing; verify as we go.
    let mut replay = 1usize;
    for n in 1..prefix.len() - 1 {
        while irr.peek().is_some_and(|&i| i <= n) {
            let i = irr.next().unwrap();
            cur.inject(prefix.value(i).clone());
        }
        let z = cur.next_beyond(prefix.value(n), |consumed| {
            debug_assert_eq!(
                &consumed.value,
                prefix.value(replay),
                "sub-liken replay diverged from the prefix at index {replay}"
            );
            replay += 1;
        });
        let z_supp: BTreeSet<u32> = z.reps[0].support().collect();
        if supp(prefix, n).is_disjoint(&z_supp) && prefix.value(n + 1) != &z.value {
            report.verdict = Verdict::Fail;
            report.witnesses.push(Witness {
                indices: vec![n, n + 1],
                values: vec![
                    prefix.value(n).clone(),
                    z.value.clone(),
                    prefix.value(n + 1).clone(),
                ],
                note: format!("supp(x_{n}) ∩ supp(z_{n}) = ∅ but x_{} ≠ z_{n}", n + 1),
            });
            if report.witnesses.len() >= 8 {
                break;
            }
        }
    }
    report
}

/// Bertrand windows `[x_n, x_n + a₁]` must each contain a generator.
/// Windows past the enumerated range are reported unchecked, not passed.
pub fn check_bertrand(prefix: &Prefix) -> PropertyReport {
    if prefix.len() < 2 {
        return PropertyReport::inapplicable(PropertyId::Bertrand, prefix, "empty window range");
    }
    let scan = scan::bertrand_scan(prefix);
    let checked = prefix.len() - 1 - scan.unchecked.len();
    let mut report = PropertyReport::new(
        PropertyId::Bertrand,
        prefix,
        if scan.failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
    );
    report.data = Some(ReportData::Bertrand { checked, unchecked: scan.unchecked.len() });
    report.note = Some(format!(
        "{} windows checked, {} beyond the enumerated range left unchecked",
        checked,
        scan.unchecked.len()
    ));
    report.witnesses = scan
        .failures
        .into_iter()
        .take(16)
        .map(|n| Witness {
            indices: vec![n],
            values: vec![prefix.value(n).clone()],
            note: format!("no generator in [x_{n}, x_{n} + a₁]"),
        })
        .collect();
    report
}

/// Legendre ratio series `card{k : a_k ≤ x_n}/n` at the checkpoints; the
/// verdict is Pass when the series is non-increasing. A limit cannot be
/// certified from a prefix and the note says so.
pub fn check_legendre(prefix: &Prefix, checkpoints: &[usize]) -> PropertyReport {
    let gens = prefix.generators();
    let mut series = Vec::new();
    let mut ratios: Vec<(usize, usize)> = Vec::new();
    for &n in checkpoints {
        if n == 0 || n >= prefix.len() {
            continue;
        }
        let xn = prefix.value(n);
        let count = gens.partition_point(|g| g.cmp_same_kind(xn) != std::cmp::Ordering::Greater);
        series.push((n, count, format!("{count}/{n}")));
        ratios.push((count, n));
    }
    let monotone = ratios
        .windows(2)
        .all(|w| (w[0].0 as u128) * (w[1].1 as u128) >= (w[1].0 as u128) * (w[0].1 as u128));
    let mut report = PropertyReport::new(
        PropertyId::Legendre,
        prefix,
        if series.is_empty() {
            Verdict::Inapplicable { reason: "no valid checkpoints".into() }
        } else if monotone {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    );
    report.data = Some(ReportData::Legendre { series });
    report.note =
        Some("trend over checkpoints only; the limit is not decidable from a prefix".into());
    report
}

/// Count consecutive pairs that are both irreducible. Finiteness of the
/// full set is not decidable from a prefix; the report carries the count
/// and the pairs as prefix-scope evidence.
pub fn check_separation(prefix: &Prefix) -> PropertyReport {
    let irr: BTreeSet<usize> = prefix.irreducible_indices().iter().copied().collect();
    let pairs: Vec<(usize, usize)> = prefix
        .elements()
        .windows(2)
        .filter(|w| irr.contains(&w[0].index) && irr.contains(&w[1].index))
        .map(|w| (w[0].index, w[1].index))
        .collect();
    let mut report = PropertyReport::new(PropertyId::Separation, prefix, Verdict::Pass);
    report.witnesses = pairs
        .iter()
        .take(16)
        .map(|&(a, b)| Witness {
            indices: vec![a, b],
            values: vec![prefix.value(a).clone(), prefix.value(b).clone()],
            note: "consecutive irreducible pair".into(),
        })
        .collect();
    report.data = Some(ReportData::Separation { count: pairs.len(), pairs });
    report.note = Some("pair count within the prefix; finiteness is not decidable here".into());
    report
}

/// Uniqueness, in two layers: a prefix scan for collisions, and a global
/// certificate from the ℚ-rank of the generator exponent matrix where the
/// generators are known integers (or structurally, distinct primes).
pub fn check_uniqueness(spec: &LikenSpec, prefix: &Prefix) -> PropertyReport {
    let mut report = PropertyReport::new(PropertyId::Uniqueness, prefix, Verdict::Pass);
    // Layer 1: prefix scan.
    for e in prefix.elements() {
        if e.reps.len() > 1 {
            report.verdict = Verdict::Fail;
            report.witnesses.push(Witness {
                indices: vec![e.index],
                values: vec![e.value.clone()],
                note: format!(
                    "representations: {}",
                    e.reps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ")
                ),
            });
            if report.witnesses.len() >= 8 {
                break;
            }
        }
    }
    // Layer 2: spec-level certificate.
    let certificate = uniqueness_certificate(spec, prefix);
    if let UniquenessEvidence::CertifiedNonUnique { witness_value, reps } = &certificate {
        report.verdict = Verdict::Fail;
        if report.witnesses.is_empty() {
            report.witnesses.push(Witness {
                indices: vec![],
                values: vec![witness_value.clone()],
                note: format!("dependency witness: {} = {}", reps.0, reps.1),
            });
        }
    }
    // The two layers must never contradict each other.
    if matches!(certificate, UniquenessEvidence::CertifiedUnique { .. }) {
        assert!(
            prefix.unique_reps(),
            "certified-unique spec exhibited a prefix collision: engine bug"
        );
    }
    report.data = Some(ReportData::Uniqueness { certificate });
    report
}

fn uniqueness_certificate(spec: &LikenSpec, prefix: &Prefix) -> UniquenessEvidence {
    match spec {
        // Generators are distinct primes: multiplicatively independent.
        LikenSpec::Nstar | LikenSpec::Modclass { p: 1 } | LikenSpec::Modclass { p: 2 } => {
            UniquenessEvidence::CertifiedUnique { rank: prefix.generators_seen() }
        }
        LikenSpec::Modclass { .. } => UniquenessEvidence::PrefixOnly,
        LikenSpec::CustomLogint { ints } => logint_certificate(ints),
        LikenSpec::Numerical { .. } | LikenSpec::CustomRational { .. } => {
            rational_certificate(spec)
        }
    }
}

/// Factor the generators, form the prime-exponent matrix, and decide by
/// rank: full rank certifies uniqueness globally; a kernel vector splits
/// into two exponent vectors with equal value.
fn logint_certificate(ints: &[u64]) -> UniquenessEvidence {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    let factored: Vec<Vec<(u64, u32)>> = ints.iter().map(|&g| factorize(g)).collect();
    for f in &factored {
        primes.extend(f.iter().map(|&(p, _)| p));
    }
    let cols: Vec<u64> = primes.into_iter().collect();
    let rows: Vec<Vec<i64>> = factored
        .iter()
        .map(|f| {
            cols.iter()
                .map(|p| f.iter().find(|&&(q, _)| q == *p).map_or(0, |&(_, e)| e as i64))
                .collect()
        })
        .collect();
    let analysis = analyze_rows(&rows);
    match analysis.kernel {
        None => UniquenessEvidence::CertifiedUnique { rank: analysis.rank },
        Some(kernel) => {
            let (pos, neg) = split_dependency(&kernel);
            let a = ExponentVec::from_entries(pos.iter().copied());
            let b = ExponentVec::from_entries(neg.iter().copied());
            let value = pos.iter().fold(Value::zero(ValueKind::LogInt), |acc, &(k, m)| {
                acc.plus(&Value::ln_int(num::BigUint::from(ints[k as usize - 1])).scale(m))
            });
            UniquenessEvidence::CertifiedNonUnique { witness_value: value, reps: (a, b) }
        }
    }
}

/// Rationals are pairwise ℚ-dependent: two or more minimal generators
/// always produce a collision (`p·a₁ = q·a₂` where `a₂/a₁ = p/q`); a
/// single generator is certified unique.
fn rational_certificate(spec: &LikenSpec) -> UniquenessEvidence {
    let gens: Vec<Value> = match spec {
        LikenSpec::Numerical { gens } => {
            let info = NumericalInfo::analyze(gens).expect("validated spec");
            info.minimal_gens.iter().map(|&g| Value::from_integer(g)).collect()
        }
        _ => spec.generators().collect(),
    };
    if gens.len() == 1 {
        return UniquenessEvidence::CertifiedUnique { rank: 1 };
    }
    let a = gens[0].as_rational().unwrap();
    let b = gens[1].as_rational().unwrap();
    let ratio = b / a;
    let p = u32::try_from(ratio.numer().magnitude()).expect("desk-scale generators");
    let q = u32::try_from(ratio.denom().magnitude()).expect("desk-scale generators");
    let reps =
        (ExponentVec::from_entries([(1u32, p)]), ExponentVec::from_entries([(2u32, q)]));
    let value = gens[0].scale(p);
    debug_assert_eq!(value, gens[1].scale(q));
    UniquenessEvidence::CertifiedNonUnique { witness_value: value, reps }
}

/// Dimension: exact minimal-generator count for finite specs, otherwise a
/// lower bound from the irreducibles seen in the prefix.
pub fn dimension(spec: &LikenSpec, prefix: &Prefix) -> PropertyReport {
    let mut report = PropertyReport::new(PropertyId::Dimension, prefix, Verdict::Pass);
    let at_least = prefix.irreducible_indices().len();
    let exact = match spec {
        LikenSpec::Numerical { gens } => {
            Some(NumericalInfo::analyze(gens).expect("validated spec").minimal_gens.len())
        }
        LikenSpec::CustomRational { .. } | LikenSpec::CustomLogint { .. } => {
            Some(minimal_custom_generators(spec))
        }
        _ => None,
    };
    report.note = Some(match exact {
        Some(d) => format!("dimension {d}"),
        None => format!("at least {at_least} (irreducibles in prefix)"),
    });
    report.data = Some(ReportData::Dimension { exact, at_least });
    report
}

/// Count generators of a finite custom spec that are not ℕ-combinations
/// of the others (bounded search over sums ≤ the candidate).
fn minimal_custom_generators(spec: &LikenSpec) -> usize {
    let gens: Vec<Value> = spec.generators().collect();
    let mut minimal = 0;
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<Value> =
            gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        if others.is_empty() {
            minimal += 1;
            continue;
        }
        let reachable = crate::oracle::enumerate_by_grid(&others, g).iter().any(|(v, _)| v == g);
        if !reachable {
            minimal += 1;
        }
    }
    minimal
}

/// Generator positions ℙ: indices of the irreducible elements.
pub fn generator_positions(prefix: &Prefix) -> PropertyReport {
    let indices = prefix.irreducible_indices().to_vec();
    let mut report = PropertyReport::new(PropertyId::Positions, prefix, Verdict::Pass);
    report.note = Some(format!("{} irreducible positions in the prefix", indices.len()));
    report.data = Some(ReportData::Positions { indices });
    report
}

/// Compare a found position set against a target: `Ok(())` on agreement,
/// otherwise the first disagreeing index.
pub fn position_agreement(found: &[usize], target: &[usize]) -> Result<(), usize> {
    let a: BTreeSet<usize> = found.iter().copied().collect();
    let b: BTreeSet<usize> = target.iter().copied().collect();
    match a.symmetric_difference(&b).next() {
        None => Ok(()),
        Some(&n) => Err(n),
    }
}

/// Sampled verification of the two monotone-gap consequences of
/// convexity. Inapplicable when the prefix is not convex.
pub fn check_gap_lemmas(prefix: &Prefix, trials: usize) -> PropertyReport {
    if prefix.len() < 4 {
        return PropertyReport::inapplicable(PropertyId::GapLemmas, prefix, "prefix too short");
    }
    if !check_convexity(prefix).passed() {
        return PropertyReport::inapplicable(
            PropertyId::GapLemmas,
            prefix,
            "prefix is not convex; the lemmas assume convexity",
        );
    }
    let last = prefix.last_index();
    let mut rng = StdRng::seed_from_u64(0x6c696b656e);
    let triples: Vec<(usize, usize, usize)> = (0..trials)
        .map(|_| {
            let q = rng.gen_range(3..=last);
            let p = rng.gen_range(2..q);
            let k = rng.gen_range(1..p);
            (k, p, q)
        })
        .collect();
    let violations = scan::gap_lemma_violations(prefix, &triples);
    let mut report = PropertyReport::new(
        PropertyId::GapLemmas,
        prefix,
        if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
    );
    report.data = Some(ReportData::GapLemmas { trials });
    report.witnesses = violations
        .into_iter()
        .take(16)
        .map(|(k, p, q)| Witness {
            indices: vec![k, p, q],
            values: vec![prefix.value(p).clone(), prefix.value(q).clone()],
            note: format!("gap inequality fails at (k,p,q)=({k},{p},{q})"),
        })
        .collect();
    report
}

/// Closure spot-check used by the test suites: random pairs whose sum
/// stays within range must land on elements.
pub fn closure_spot_check(prefix: &Prefix, samples: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = (0..samples)
        .map(|_| (rng.gen_range(0..prefix.len()), rng.gen_range(0..prefix.len())))
        .collect();
    scan::closure_violations(prefix, &pairs)
}

/// Re-evaluate a report's Fail witnesses against the defining inequality.
pub fn revalidate(prefix: &Prefix, report: &PropertyReport) -> bool {
    if report.verdict != Verdict::Fail {
        return true;
    }
    report.witnesses.iter().all(|w| match report.property {
        PropertyId::Convexity => {
            let k = w.indices[0];
            let mid = prefix.value(k + 1).scale(2);
            let ends = prefix.value(k).plus(prefix.value(k + 2));
            mid.cmp_same_kind(&ends) != std::cmp::Ordering::Greater
        }
        PropertyId::DisjointSupport => {
            let (a, b) = (w.indices[0], w.indices[1]);
            !prefix
                .element(a)
                .unique_rep()
                .unwrap()
                .supports_disjoint(prefix.element(b).unique_rep().unwrap())
        }
        PropertyId::Parity => {
            let (a, b) = (w.indices[0], w.indices[1]);
            prefix.element(a).unique_rep().unwrap().get(1) > 0
                && prefix.element(b).unique_rep().unwrap().get(1) > 0
        }
        PropertyId::Or => {
            let n = w.indices[0];
            let z = subliken_z(prefix, n).expect("witness inside prefix");
            let z_supp: BTreeSet<u32> = z.reps[0].support().collect();
            let xs = supp(prefix, n);
            xs.is_disjoint(&z_supp) && prefix.value(n + 1) != &z.value
        }
        PropertyId::Bertrand => {
            let n = w.indices[0];
            let lo = prefix.value(n);
            let hi = lo.plus(&prefix.generators()[0]);
            !prefix.generators().iter().any(|g| {
                g.cmp_same_kind(lo) != std::cmp::Ordering::Less
                    && g.cmp_same_kind(&hi) != std::cmp::Ordering::Greater
            })
        }
        PropertyId::Uniqueness => {
            w.indices.is_empty() || prefix.element(w.indices[0]).reps.len() > 1
        }
        PropertyId::GapLemmas => {
            let (k, p, q) = (w.indices[0], w.indices[1], w.indices[2]);
            !scan::gap_lemma_holds(prefix, k, p, q)
        }
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate, Limit};
    use crate::families;

    fn prefix(spec: &LikenSpec, n: usize) -> Prefix {
        enumerate(spec, Limit::Count(n)).unwrap()
    }

    #[test]
    fn convexity_examples() {
        assert!(check_convexity(&prefix(&families::nstar(), 300)).passed());
        assert!(check_convexity(&prefix(&families::modclass(2).unwrap(), 300)).passed());
        let r = check_convexity(&prefix(&families::numerical(&[3, 4, 5]).unwrap(), 8));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].indices[0], 1, "strictness fails at k=1: 2·4 = 3+5");
    }

    #[test]
    fn disjoint_support_examples() {
        assert!(check_disjoint_support(&prefix(&families::nstar(), 200)).passed());
        let smooth = prefix(&families::custom_logint(&[2, 3]).unwrap(), 30);
        let r = check_disjoint_support(&smooth);
        assert_eq!(r.verdict, Verdict::Fail);
        // First failure is the pair of multiplicative values (4, 6).
        assert_eq!(r.witnesses[0].values[0], Value::ln_int(4u32));
        assert_eq!(r.witnesses[0].values[1], Value::ln_int(6u32));
        let r = check_disjoint_support(&prefix(&families::numerical(&[3, 4, 5]).unwrap(), 8));
        assert!(matches!(r.verdict, Verdict::Inapplicable { .. }));
    }

    #[test]
    fn parity_examples() {
        assert!(check_parity(&prefix(&families::nstar(), 300)).passed());
        let r = check_parity(&prefix(&families::custom_logint(&[2, 3]).unwrap(), 30));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].values[0], Value::ln_int(4u32));
        assert_eq!(r.witnesses[0].values[1], Value::ln_int(6u32));
        // Odd multiples of 3 are never adjacent among the odd numbers.
        assert!(check_parity(&prefix(&families::modclass(2).unwrap(), 200)).passed());
    }

    #[test]
    fn or_examples() {
        assert!(check_or(&prefix(&families::nstar(), 300)).passed());
        let r = check_or(&prefix(&families::modclass(2).unwrap(), 100));
        assert_eq!(r.verdict, Verdict::Fail);
        let w = &r.witnesses[0];
        assert_eq!(w.indices[0], 2, "first failure at n=2");
        assert_eq!(w.values[1], Value::ln_int(9u32), "z₂ = 9");
        assert_eq!(w.values[2], Value::ln_int(7u32), "x₃ = 7");
        assert!(check_or(&prefix(&families::numerical(&[1]).unwrap(), 50)).passed());
    }

    #[test]
    fn bertrand_examples() {
        let r = check_bertrand(&prefix(&families::nstar(), 400));
        assert!(r.passed());
        let r = check_bertrand(&prefix(&families::custom_logint(&[2, 257]).unwrap(), 12));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].values[0], Value::ln_int(4u32));
        let r = check_bertrand(&prefix(&families::numerical(&[1]).unwrap(), 10));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].indices[0], 2);
    }

    #[test]
    fn legendre_examples() {
        let p = prefix(&families::nstar(), 1000);
        let r = check_legendre(&p, &[250, 500, 999]);
        assert!(r.passed());
        let Some(ReportData::Legendre { series }) = &r.data else { panic!() };
        // card{a_k ≤ x_999} = π(1000) = 168.
        assert_eq!(series.last().unwrap().1, 168);
        assert_eq!(series.last().unwrap().2, "168/999");
        // Finite-dimensional: numerator bounded by the dimension, trend holds.
        let p = prefix(&families::numerical(&[3, 4, 5]).unwrap(), 60);
        let r = check_legendre(&p, &[10, 20, 50]);
        assert!(r.passed());
    }

    #[test]
    fn separation_examples() {
        let r = check_separation(&prefix(&families::nstar(), 200));
        let Some(ReportData::Separation { count, pairs }) = &r.data else { panic!() };
        assert_eq!(*count, 1);
        assert_eq!(pairs[0], (1, 2), "the multiplicative pair (2, 3)");

        let k2 = prefix(&families::modclass(2).unwrap(), 51); // odd values ≤ 101
        let r = check_separation(&k2);
        let Some(ReportData::Separation { pairs, .. }) = &r.data else { panic!() };
        let twin_values: Vec<(u64, u64)> = pairs
            .iter()
            .map(|&(a, b)| {
                (
                    u64::try_from(k2.value(a).log_operand().unwrap()).unwrap(),
                    u64::try_from(k2.value(b).log_operand().unwrap()).unwrap(),
                )
            })
            .filter(|&(_, b)| b <= 100)
            .collect();
        assert_eq!(
            twin_values,
            vec![(3, 5), (5, 7), (11, 13), (17, 19), (29, 31), (41, 43), (59, 61), (71, 73)]
        );

        let r = check_separation(&prefix(&families::numerical(&[1]).unwrap(), 30));
        let Some(ReportData::Separation { count, .. }) = &r.data else { panic!() };
        assert_eq!(*count, 0);
    }

    #[test]
    fn uniqueness_examples() {
        let spec = families::numerical(&[3, 4, 5]).unwrap();
        let r = check_uniqueness(&spec, &prefix(&spec, 10));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses[0].values[0], Value::from_integer(8));

        let spec = families::custom_logint(&[2, 3, 5]).unwrap();
        let r = check_uniqueness(&spec, &prefix(&spec, 30));
        assert!(r.passed());
        assert!(matches!(
            r.data,
            Some(ReportData::Uniqueness {
                certificate: UniquenessEvidence::CertifiedUnique { rank: 3 }
            })
        ));

        let spec = families::custom_logint(&[2, 3, 6]).unwrap();
        let r = check_uniqueness(&spec, &prefix(&spec, 10));
        assert_eq!(r.verdict, Verdict::Fail);
        let Some(ReportData::Uniqueness {
            certificate: UniquenessEvidence::CertifiedNonUnique { witness_value, .. },
        }) = &r.data
        else {
            panic!("expected certified non-uniqueness")
        };
        assert_eq!(witness_value, &Value::ln_int(6u32));

        let spec = families::custom_logint(&[12, 18]).unwrap();
        let r = check_uniqueness(&spec, &prefix(&spec, 20));
        assert!(r.passed(), "12 and 18 are multiplicatively independent");
    }

    #[test]
    fn dimension_examples() {
        let spec = families::numerical(&[3, 4, 5]).unwrap();
        let r = dimension(&spec, &prefix(&spec, 8));
        assert!(matches!(r.data, Some(ReportData::Dimension { exact: Some(3), .. })));
        let spec = families::numerical(&[1]).unwrap();
        let r = dimension(&spec, &prefix(&spec, 5));
        assert!(matches!(r.data, Some(ReportData::Dimension { exact: Some(1), .. })));
        let spec = families::nstar();
        let r = dimension(&spec, &prefix(&spec, 100));
        let Some(ReportData::Dimension { exact: None, at_least }) = r.data else { panic!() };
        assert_eq!(at_least, 25, "π(100) = 25 irreducibles in the first hundred");
    }

    #[test]
    fn positions_examples() {
        let p = prefix(&families::nstar(), 11);
        let r = generator_positions(&p);
        let Some(ReportData::Positions { indices }) = &r.data else { panic!() };
        assert_eq!(indices, &[1, 2, 4, 6, 10]);
        assert_eq!(position_agreement(indices, &[1, 2, 4, 6, 10]), Ok(()));
        assert_eq!(position_agreement(indices, &[1, 2, 4, 6]), Err(10));

        let k2 = prefix(&families::modclass(2).unwrap(), 5);
        let r = generator_positions(&k2);
        let Some(ReportData::Positions { indices }) = &r.data else { panic!() };
        assert_eq!(indices, &[1, 2, 3], "values 3, 5, 7");
    }

    #[test]
    fn gap_lemmas_examples() {
        let p = prefix(&families::nstar(), 200);
        let r = check_gap_lemmas(&p, 2000);
        assert!(r.passed());
        let nonconvex = prefix(&families::numerical(&[3, 4, 5]).unwrap(), 10);
        let r = check_gap_lemmas(&nonconvex, 10);
        assert!(matches!(r.verdict, Verdict::Inapplicable { .. }));
    }

    #[test]
    fn convexity_implies_disjoint_support() {
        // Cross-checker assertion on unique convex prefixes.
        for spec in [families::nstar(), families::modclass(2).unwrap()] {
            let p = prefix(&spec, 300);
            if check_convexity(&p).passed() && p.unique_reps() {
                assert!(check_disjoint_support(&p).passed(), "{}", spec.display_name());
            }
        }
    }

    #[test]
    fn fail_witnesses_revalidate() {
        let smooth = prefix(&families::custom_logint(&[2, 3]).unwrap(), 40);
        assert!(revalidate(&smooth, &check_disjoint_support(&smooth)));
        assert!(revalidate(&smooth, &check_parity(&smooth)));
        let k2 = prefix(&families::modclass(2).unwrap(), 60);
        assert!(revalidate(&k2, &check_or(&k2)));
        let ns = prefix(&families::numerical(&[3, 4, 5]).unwrap(), 8);
        assert!(revalidate(&ns, &check_convexity(&ns)));
    }

    #[test]
    fn closure_spot_check_clean() {
        let p = prefix(&families::nstar(), 500);
        assert!(closure_spot_check(&p, 1000, 7).is_empty());
    }
}
