//! Data-parallel scan kernels over enumerated prefixes.
//!
//! Each kernel ships in two variants: a sequential one (always compiled,
//! used as the fallback and as the benchmark baseline) and a rayon one
//! behind the `parallel` feature. The undecorated name dispatches to the
//! parallel variant when the feature is enabled.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::engine::Prefix;


/// Indices k with `2·x_{k+1} ≤ x_k + x_{k+2}` (strict convexity failures).
pub fn convexity_violations(prefix: &Prefix) -> Vec<usize> {
    #[cfg(feature = "parallel")]
    {
        convexity_violations_par(prefix)
    }
    #[cfg(not(feature = "parallel"))]
    {
        convexity_violations_seq(prefix)
    }
}

fn convex_at(prefix: &Prefix, k: usize) -> bool {
    let mid = prefix.value(k + 1).scale(2);
    let ends = prefix.value(k).plus(prefix.value(k + 2));
    mid.cmp_same_kind(&ends) == Ordering::Greater
}

pub fn convexity_violations_seq(prefix: &Prefix) -> Vec<usize> {
    (0..prefix.len().saturating_sub(2)).filter(|&k| !convex_at(prefix, k)).collect()
}

#[cfg(feature = "parallel")]
pub fn convexity_violations_par(prefix: &Prefix) -> Vec<usize> {
    (0..prefix.len().saturating_sub(2))
        .into_par_iter()
        .filter(|&k| !convex_at(prefix, k))
        .collect()
}

/// Pair-scan irreducibility: `x_n` is decomposable when some nonzero
/// `x_i` in the lower half has `x_n − x_i` in the prefix. The prefix is
/// complete below `x_n`, so the scan is decisive.
pub fn irreducible_scan(prefix: &Prefix) -> Vec<usize> {
    #[cfg(feature = "parallel")]
    {
        irreducible_scan_par(prefix)
    }
    #[cfg(not(feature = "parallel"))]
    {
        irreducible_scan_seq(prefix)
    }
}

fn is_decomposable(prefix: &Prefix, n: usize) -> bool {
    let xn = prefix.value(n);
    for i in 1..n {
        let xi = prefix.value(i);
        if xi.scale(2).cmp_same_kind(xn) == Ordering::Greater {
            break;
        }
        if let Some(rest) = xn.checked_sub(xi) {
            if prefix.find_value(&rest).is_some() {
                return true;
            }
        }
    }
    false
}

pub fn irreducible_scan_seq(prefix: &Prefix) -> Vec<usize> {
    (1..prefix.len()).filter(|&n| !is_decomposable(prefix, n)).collect()
}

#[cfg(feature = "parallel")]
pub fn irreducible_scan_par(prefix: &Prefix) -> Vec<usize> {
    (1..prefix.len())
        .into_par_iter()
        .filter(|&n| !is_decomposable(prefix, n))
        .collect()
}

/// Bertrand windows: for each n, is there a generator in
/// `[x_n, x_n + a_1]`? Windows reaching past the enumerated range are
/// unchecked, not passed.
#[derive(Clone, Debug, Default)]
pub struct BertrandScan {
    /// Checkable n with no generator in the window.
    pub failures: Vec<usize>,
    /// n whose window exceeds the last enumerated value.
    pub unchecked: Vec<usize>,
}

pub fn bertrand_scan(prefix: &Prefix) -> BertrandScan {
    let last = prefix.value(prefix.last_index());
    let a1 = &prefix.generators()[0];
    let gens = prefix.generators();
    let check = |n: usize| -> Option<bool> {
        // None = unchecked, Some(ok) otherwise
        let lo = prefix.value(n);
        let hi = lo.plus(a1);
        if hi.cmp_same_kind(last) == Ordering::Greater {
            return None;
        }
        let first = gens.partition_point(|g| g.cmp_same_kind(lo) == Ordering::Less);
        Some(
            gens.get(first)
                .is_some_and(|g| g.cmp_same_kind(&hi) != Ordering::Greater),
        )
    };
    let verdicts: Vec<(usize, Option<bool>)>;
    #[cfg(feature = "parallel")]
    {
        verdicts = (1..prefix.len()).into_par_iter().map(|n| (n, check(n))).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        verdicts = (1..prefix.len()).map(|n| (n, check(n))).collect();
    }
    let mut out = BertrandScan::default();
    for (n, v) in verdicts {
        match v {
            Some(true) => {}
            Some(false) => out.failures.push(n),
            None => out.unchecked.push(n),
        }
    }
    out
}

/// A sampled gap-lemma trial over additive indices `1 ≤ k < p < q`.
/// Returns `true` when both monotone-gap inequalities hold strictly.
pub fn gap_lemma_holds(prefix: &Prefix, k: usize, p: usize, q: usize) -> bool {
    gap_difference_holds(prefix, p, q) && gap_ratio_holds(prefix, k, p, q)
}

/// `x_{q−1} − x_{p−1} > x_q − x_p`, compared as exact sums.
pub fn gap_difference_holds(prefix: &Prefix, p: usize, q: usize) -> bool {
    let lhs = prefix.value(q - 1).plus(prefix.value(p));
    let rhs = prefix.value(p - 1).plus(prefix.value(q));
    lhs.cmp_same_kind(&rhs) == Ordering::Greater
}

/// The multiplicative form `x̂_{p+1}/x̂_{q+1} > x̂_{p+1−k}/x̂_{q+1−k}`:
/// as exact sums, `x_p + x_{q−k} > x_{p−k} + x_q` (for the log-int kind
/// the sums are integer products, so this is the paper's cross-product
/// check; requires k ≤ p).
pub fn gap_ratio_holds(prefix: &Prefix, k: usize, p: usize, q: usize) -> bool {
    let lhs = prefix.value(p).plus(prefix.value(q - k));
    let rhs = prefix.value(p - k).plus(prefix.value(q));
    lhs.cmp_same_kind(&rhs) == Ordering::Greater
}

/// Check many sampled triples, returning the violating ones.
pub fn gap_lemma_violations(prefix: &Prefix, triples: &[(usize, usize, usize)]) -> Vec<(usize, usize, usize)> {
    #[cfg(feature = "parallel")]
    {
        triples
            .par_iter()
            .copied()
            .filter(|&(k, p, q)| !gap_lemma_holds(prefix, k, p, q))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        gap_lemma_violations_seq(prefix, triples)
    }
}

pub fn gap_lemma_violations_seq(
    prefix: &Prefix,
    triples: &[(usize, usize, usize)],
) -> Vec<(usize, usize, usize)> {
    triples.iter().copied().filter(|&(k, p, q)| !gap_lemma_holds(prefix, k, p, q)).collect()
}

/// Closure spot-check: random pairs (i, j) whose sum stays within the
/// prefix must land on an element.
pub fn closure_violations(prefix: &Prefix, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let last = prefix.value(prefix.last_index());
    let check = |&(i, j): &(usize, usize)| -> bool {
        let sum = prefix.value(i).plus(prefix.value(j));
        sum.cmp_same_kind(last) == Ordering::Greater || prefix.find_value(&sum).is_some()
    };
    #[cfg(feature = "parallel")]
    {
        pairs.par_iter().filter(|p| !check(p)).copied().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().filter(|p| !check(p)).copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate, Limit};
    use crate::families;

    #[test]
    fn pair_scan_agrees_with_rep_shape() {
        for spec in [
            families::nstar(),
            families::modclass(2).unwrap(),
            families::numerical(&[3, 4, 5]).unwrap(),
            families::numerical(&[3, 4, 5, 7]).unwrap(),
            families::custom_logint(&[2, 3]).unwrap(),
        ] {
            let p = enumerate(&spec, Limit::Count(80)).unwrap();
            assert_eq!(
                irreducible_scan_seq(&p),
                p.irreducible_indices(),
                "{}",
                spec.display_name()
            );
            assert_eq!(irreducible_scan(&p), p.irreducible_indices());
        }
    }

    #[test]
    fn convexity_on_small_cases() {
        let p = enumerate(&families::nstar(), Limit::Count(50)).unwrap();
        assert!(convexity_violations_seq(&p).is_empty());
        let p = enumerate(&families::numerical(&[3, 4, 5]).unwrap(), Limit::Count(8)).unwrap();
        let v = convexity_violations_seq(&p);
        assert!(v.contains(&1), "2·4 = 3+5 breaks strict convexity at k=1");
    }

    #[test]
    fn bertrand_small_cases() {
        let p = enumerate(&families::numerical(&[1]).unwrap(), Limit::Count(6)).unwrap();
        let scan = bertrand_scan(&p);
        assert!(scan.failures.contains(&2), "no generator in [2, 3]");
        let p = enumerate(&families::custom_logint(&[2, 257]).unwrap(), Limit::Count(12)).unwrap();
        let scan = bertrand_scan(&p);
        assert_eq!(scan.failures.first(), Some(&2), "no generator in [ln 4, ln 8]");
    }

    #[test]
    fn gap_lemma_worked_instance() {
        // Multiplicative triple (k,p,q) = (1,2,3): 2² > 3.
        let p = enumerate(&families::nstar(), Limit::Count(10)).unwrap();
        assert!(gap_ratio_holds(&p, 1, 1, 2));
        assert!(gap_difference_holds(&p, 1, 2));
    }
}
