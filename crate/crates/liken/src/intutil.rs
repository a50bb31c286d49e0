//! Small integer and linear-algebra helpers: trial factorization,
//! perfect-power decomposition, and exact rank/kernel of integer matrices.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, Zero};

/// Prime factorization by trial division; `(prime, exponent)` pairs in
/// increasing prime order. Desk scale: operands fit in u64.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Write `n ≥ 2` as `r^e` with maximal `e`; returns the primitive root `r`
/// and exponent `e` (so `e = 1` when `n` is not a perfect power).
pub fn primitive_root(n: &BigUint) -> (BigUint, u32) {
    assert!(*n >= BigUint::from(2u32));
    // e divides the gcd of all prime exponents of n; search from the top.
    let small = u64::try_from(n).ok();
    if let Some(m) = small {
        let factors = factorize(m);
        let g = factors.iter().fold(0u32, |acc, &(_, e)| num::integer::gcd(acc, e));
        let root: u64 = factors.iter().map(|&(p, e)| p.pow(e / g)).product();
        return (BigUint::from(root), g);
    }
    // Large n: binary-search candidate roots for each exponent.
    let bits = n.bits();
    for e in (2..=bits as u32).rev() {
        if let Some(r) = integer_root(n, e) {
            if r.pow(e) == *n {
                let (rr, ee) = primitive_root(&r);
                return (rr, ee * e);
            }
        }
    }
    (n.clone(), 1)
}

fn integer_root(n: &BigUint, e: u32) -> Option<BigUint> {
    let r = n.nth_root(e);
    if r.pow(e) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rank over ℚ of an integer matrix (rows × cols), plus one kernel
/// vector of the ROW space when the rows are dependent: coefficients c
/// with Σ c_i · row_i = 0, c ≠ 0.
pub struct RowAnalysis {
    pub rank: usize,
    pub kernel: Option<Vec<BigInt>>,
}

pub fn analyze_rows(rows: &[Vec<i64>]) -> RowAnalysis {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    // Augment with the identity to track row combinations.
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> =
                r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            row.extend((0..nrows).map(|j| {
                BigRational::from_integer(if i == j { BigInt::one() } else { BigInt::zero() })
            }));
            row
        })
        .collect();

    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col].clone();
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &lead;
                for c in 0..ncols + nrows {
                    let delta = &f * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    let kernel = if rank < nrows {
        // Any zeroed row's augmentation is a rational dependency; clear
        // denominators to integers.
        let row = &m[rank];
        debug_assert!(row[..ncols].iter().all(Zero::is_zero));
        let coeffs = &row[ncols..];
        let lcm = coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        Some(ints)
    } else {
        None
    };
    RowAnalysis { rank, kernel }
}

/// Split an integer dependency into its positive and negative parts, as
/// (index, multiplicity) lists with 1-based indices.
pub fn split_dependency(kernel: &[BigInt]) -> (Vec<(u32, u32)>, Vec<(u32, u32)>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, c) in kernel.iter().enumerate() {
        if c.is_positive() {
            pos.push((i as u32 + 1, u32::try_from(c.magnitude()).expect("small multiplicity")));
        } else if c.is_negative() {
            neg.push((i as u32 + 1, u32::try_from(c.magnitude()).expect("small multiplicity")));
        }
    }
    (pos, neg)
}

/// The dyadic `m/2^k` with minimal `k` (then minimal `|m|`) inside the
/// closed interval `[lo, hi]`.
pub fn simplest_dyadic_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    let mut k: u64 = 0;
    loop {
        let scale = BigRational::from_integer(BigInt::one() << k);
        let m_lo = (lo * &scale).ceil().to_integer();
        let m_hi = (hi * &scale).floor().to_integer();
        if m_lo <= m_hi {
            return BigRational::new(m_lo, BigInt::one() << k);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(441), vec![(3, 2), (7, 2)]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(&BigUint::from(8u32)), (BigUint::from(2u32), 3));
        assert_eq!(primitive_root(&BigUint::from(36u32)), (BigUint::from(6u32), 2));
        assert_eq!(primitive_root(&BigUint::from(7u32)), (BigUint::from(7u32), 1));
        assert_eq!(primitive_root(&BigUint::from(12u32)), (BigUint::from(12u32), 1));
    }

    #[test]
    fn rank_and_kernel() {
        // [[1,0],[0,1],[1,1]]: rank 2, dependency row3 = row1 + row2.
        let rows = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let a = analyze_rows(&rows);
        assert_eq!(a.rank, 2);
        let kernel = a.kernel.unwrap();
        // Verify Σ c_i row_i = 0.
        for col in 0..2 {
            let sum: BigInt =
                kernel.iter().zip(&rows).map(|(c, r)| c * BigInt::from(r[col])).sum();
            assert!(sum.is_zero());
        }

        // [[2,1],[1,2]]: rank 2 (determinant 3).
        let a = analyze_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(a.rank, 2);
        assert!(a.kernel.is_none());

        // Identity 3×3.
        let a = analyze_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.rank, 3);
    }

    #[test]
    fn simplest_dyadic() {
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        assert_eq!(simplest_dyadic_in(&r(13, 8), &r(7, 4)), r(7, 4));
        assert_eq!(simplest_dyadic_in(&r(1, 3), &r(2, 3)), r(1, 2));
        assert_eq!(simplest_dyadic_in(&r(5, 1), &r(6, 1)), r(5, 1));
    }
}
