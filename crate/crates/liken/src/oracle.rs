//! Brute-force reference enumeration.
//!
//! Independent of the frontier engine: grids every exponent vector whose
//! value stays under the bound by looping over per-index multiplicities,
//! then sorts and groups by value. Used to cross-validate the engine in
//! tests and to re-verify would-be counterexamples of the main theorem.

use std::cmp::Ordering;

use crate::exact::Value;
use crate::rep::ExponentVec;

/// All (value, representation set) pairs with value ≤ `bound`, in
/// increasing value order. `gens` must be strictly increasing, positive,
/// one kind.
pub fn enumerate_by_grid(gens: &[Value], bound: &Value) -> Vec<(Value, Vec<ExponentVec>)> {
    let mut found: Vec<(Value, ExponentVec)> = Vec::new();
    let mut stack: Vec<(u32, u32)> = Vec::new(); // (index, multiplicity) path
    grid(gens, bound, 0, &Value::zero(bound.kind()), &mut stack, &mut found);
    found.sort_by(|a, b| a.0.cmp_same_kind(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut out: Vec<(Value, Vec<ExponentVec>)> = Vec::new();
    for (value, vec) in found {
        match out.last_mut() {
            Some((v, reps)) if *v == value => reps.push(vec),
            _ => out.push((value, vec![vec])),
        }
    }
    out
}

fn grid(
    gens: &[Value],
    bound: &Value,
    from: usize,
    acc: &Value,
    stack: &mut Vec<(u32, u32)>,
    found: &mut Vec<(Value, ExponentVec)>,
) {
    if from == gens.len() {
        found.push((acc.clone(), ExponentVec::from_entries(stack.iter().copied())));
        return;
    }
    // multiplicity 0 for this index
    grid(gens, bound, from + 1, acc, stack, found);
    let mut m = 1u32;
    let mut value = acc.plus(&gens[from]);
    while value.cmp_same_kind(bound) != Ordering::Greater {
        stack.push((from as u32 + 1, m));
        grid(gens, bound, from + 1, &value, stack, found);
        stack.pop();
        m += 1;
        value = value.plus(&gens[from]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_five_grid() {
        let gens = vec![Value::from_integer(3), Value::from_integer(4), Value::from_integer(5)];
        let out = enumerate_by_grid(&gens, &Value::from_integer(9));
        let values: Vec<String> = out.iter().map(|(v, _)| v.to_string()).collect();
        assert_eq!(values, vec!["0/1", "3/1", "4/1", "5/1", "6/1", "7/1", "8/1", "9/1"]);
        let eight = &out[6].1;
        assert_eq!(eight.len(), 2, "8 = 3+5 = 4+4");
    }

    #[test]
    fn smooth_grid() {
        let gens = vec![Value::ln_int(2u32), Value::ln_int(3u32)];
        let out = enumerate_by_grid(&gens, &Value::ln_int(16u32));
        let ints: Vec<u64> = out
            .iter()
            .map(|(v, _)| u64::try_from(v.log_operand().unwrap()).unwrap())
            .collect();
        assert_eq!(ints, vec![1, 2, 3, 4, 6, 8, 9, 12, 16]);
    }
}
