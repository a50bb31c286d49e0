//! Incremental prime sieve.
//!
//! Grows a segmented Eratosthenes table on demand; the generator streams
//! pull primes one at a time and never need an a-priori bound.

/// Growable prime table. Doubles its sieved range whenever a caller asks
/// past the current limit.
#[derive(Clone, Debug)]
pub struct PrimeSieve {
    primes: Vec<u64>,
    sieved_to: u64,
}

impl Default for PrimeSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeSieve {
    pub fn new() -> PrimeSieve {
        PrimeSieve { primes: vec![2, 3, 5, 7], sieved_to: 10 }
    }

    fn grow(&mut self) {
        let lo = self.sieved_to + 1;
        let hi = self.sieved_to * 2;
        let mut composite = vec![false; (hi - lo + 1) as usize];
        // Existing primes cover every factor ≤ √hi because hi = 2·sieved_to.
        for &p in &self.primes {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                self.primes.push(lo + i as u64);
            }
        }
        self.sieved_to = hi;
    }

    /// The `i`-th prime, 0-based: `nth(0) = 2`.
    pub fn nth(&mut self, i: usize) -> u64 {
        while self.primes.len() <= i {
            self.grow();
        }
        self.primes[i]
    }

    pub fn is_prime(&mut self, n: u64) -> bool {
        if n < 2 {
            return false;
        }
        while self.sieved_to < n {
            self.grow();
        }
        self.primes.binary_search(&n).is_ok()
    }

    /// 0-based position of a prime in the sequence of primes.
    pub fn index_of(&mut self, p: u64) -> Option<usize> {
        while self.sieved_to < p {
            self.grow();
        }
        self.primes.binary_search(&p).ok()
    }

    /// All primes `≤ bound`, in increasing order.
    pub fn primes_upto(&mut self, bound: u64) -> &[u64] {
        while self.sieved_to < bound {
            self.grow();
        }
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    /// π(bound).
    pub fn count_upto(&mut self, bound: u64) -> usize {
        self.primes_upto(bound).len()
    }
}
