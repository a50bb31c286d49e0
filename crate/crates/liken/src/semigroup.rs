//! Numerical-semigroup invariants: Apéry sets, Frobenius number, gaps,
//! genus. A numerical semigroup here is the additive sub-semigroup of ℕ
//! generated by a finite list of naturals; it is cofinite exactly when
//! the generators are coprime.

use serde::Serialize;

use crate::error::SemigroupError;
use crate::families::NumericalInfo;

#[derive(Clone, Debug, Serialize)]
pub struct NumericalSemigroup {
    pub minimal_gens: Vec<u64>,
    pub gcd: u64,
    #[serde(skip)]
    membership: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u64]) -> Result<NumericalSemigroup, SemigroupError> {
        let info = NumericalInfo::analyze(gens).map_err(|_| SemigroupError::EmptyList)?;
        let mut s = NumericalSemigroup {
            minimal_gens: info.minimal_gens,
            gcd: info.gcd,
            membership: Vec::new(),
        };
        // Table bound: (max gen)² + max gen covers the Frobenius number of
        // any coprime pair of the generators; the residue-coverage check
        // below verifies sufficiency and extends geometrically if needed.
        let max = *s.minimal_gens.last().unwrap();
        let mut bound = max * max + max;
        loop {
            s.fill_table(bound);
            if s.gcd != 1 || s.residues_covered() {
                break;
            }
            bound *= 2;
        }
        Ok(s)
    }

    fn fill_table(&mut self, bound: u64) {
        let mut member = vec![false; bound as usize + 1];
        member[0] = true;
        for &g in &self.minimal_gens {
            let g = g as usize;
            for v in g..member.len() {
                if member[v - g] {
                    member[v] = true;
                }
            }
        }
        self.membership = member;
    }

    /// Every residue class mod the smallest generator has a member in the
    /// table: beyond that point the table saturates.
    fn residues_covered(&self) -> bool {
        let m = self.minimal_gens[0] as usize;
        let mut seen = vec![false; m];
        let mut count = 0;
        for (v, &is_member) in self.membership.iter().enumerate() {
            if is_member && !seen[v % m] {
                seen[v % m] = true;
                count += 1;
                if count == m {
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.membership.get(n as usize) {
            Some(&m) => m,
            // Beyond the verified table every value of the right residue
            // class is a member; for gcd 1 the table covers all residues.
            None => self.gcd == 1 || n % self.gcd == 0 && self.contains_large(n),
        }
    }

    fn contains_large(&self, n: u64) -> bool {
        // gcd > 1: divide through and defer to the reduced semigroup.
        let reduced: Vec<u64> = self.minimal_gens.iter().map(|g| g / self.gcd).collect();
        NumericalSemigroup::new(&reduced).map(|s| s.contains(n / self.gcd)).unwrap_or(false)
    }

    /// Apéry set of a member m: for each residue r mod m, the least
    /// member ≡ r. Has exactly m entries.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>, SemigroupError> {
        if self.gcd != 1 {
            return Err(SemigroupError::NotCofinite);
        }
        if m == 0 || !self.contains(m) {
            return Err(SemigroupError::NotAMember(m));
        }
        let mut least: Vec<Option<u64>> = vec![None; m as usize];
        let mut found = 0usize;
        let mut v = 0u64;
        // The table is long enough: every class has a member ≤ frobenius + m,
        // and the table is verified residue-complete for the smallest
        // generator, hence saturated past its end.
        while found < m as usize {
            if v as usize >= self.membership.len() {
                // Extend: everything past a residue-complete table is dense.
                for r in 0..m as usize {
                    if least[r].is_none() {
                        let mut w = self.membership.len() as u64;
                        while w % m != r as u64 || !self.contains(w) {
                            w += 1;
                        }
                        least[r] = Some(w);
                        found += 1;
                    }
                }
                break;
            }
            if self.membership[v as usize] {
                let r = (v % m) as usize;
                if least[r].is_none() {
                    least[r] = Some(v);
                    found += 1;
                }
            }
            v += 1;
        }
        Ok(least.into_iter().map(Option::unwrap).collect())
    }

    /// Largest natural not in the semigroup. Computed from the Apéry set
    /// (max Ap(S, m) − m) and cross-checked against the membership table.
    pub fn frobenius(&self) -> Result<u64, SemigroupError> {
        if self.gcd != 1 {
            return Err(SemigroupError::NotCofinite);
        }
        if self.minimal_gens == [1] {
            return Err(SemigroupError::NoGaps);
        }
        let m = self.minimal_gens[0];
        let apery = self.apery_set(m)?;
        let from_apery = apery.iter().max().unwrap() - m;
        let from_table = self
            .membership
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &is)| !is)
            .map(|(v, _)| v as u64)
            .expect("a coprime non-trivial semigroup has gaps");
        assert_eq!(from_apery, from_table, "Apéry route and table route must agree");
        Ok(from_apery)
    }

    /// The finite complement ℕ∖S: (genus, sorted gap list).
    pub fn genus_and_gaps(&self) -> Result<(usize, Vec<u64>), SemigroupError> {
        if self.gcd != 1 {
            return Err(SemigroupError::NotCofinite);
        }
        if self.minimal_gens == [1] {
            return Ok((0, Vec::new()));
        }
        let frobenius = self.frobenius()?;
        let gaps: Vec<u64> =
            (1..=frobenius).filter(|&v| !self.membership[v as usize]).collect();
        Ok((gaps.len(), gaps))
    }
}
