//! In-order enumeration of a liken from its generator stream.
//!
//! The engine keeps a min-ordered frontier of `(value, exponent vector)`
//! candidates. Every vector is generated exactly once through a canonical
//! tree: a candidate may only be extended by generator indices at or above
//! the maximum index of its support. Instead of pushing all extensions at
//! once, a popped candidate pushes two successors — its own deepening
//! (`m + e_j` for `j = max supp m`) and the next sibling of its parent
//! (`parent + e_{j+1}`). Both have strictly larger values than the popped
//! candidate, so emission order is never violated, and the unit chain
//! `e_1, e_2, …` pulls each new generator from the stream exactly when the
//! previous unit is emitted: no generator can be skipped. Candidates with
//! equal values are merged into one element holding every representation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num::bigint::BigUint;
use num::rational::BigRational;

use crate::error::{EnumError, QueryError};
use crate::exact::{Value, ValueKind};
use crate::families::LikenSpec;
use crate::rep::ExponentVec;

/// Enumeration stopping rule. `Count(n)` yields exactly `n` elements
/// (indices `0..n`); `ValueBound(b)` yields every element with value ≤ b.
#[derive(Clone, Debug)]
pub enum Limit {
    Count(usize),
    ValueBound(Value),
}

/// One liken member: its position, exact value, and the complete set of
/// exponent-vector representations found for that value.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Element {
    pub index: usize,
    pub value: Value,
    /// Sorted; complete within the enumerated range by construction.
    pub reps: Vec<ExponentVec>,
}

impl Element {
    fn zero(kind: ValueKind) -> Element {
        Element { index: 0, value: Value::zero(kind), reps: vec![ExponentVec::zero()] }
    }

    pub fn unique_rep(&self) -> Option<&ExponentVec> {
        match self.reps.as_slice() {
            [r] => Some(r),
            _ => None,
        }
    }

    /// Irreducibility read off the complete representation set: an element
    /// is irreducible exactly when its only representation is a unit.
    pub fn is_irreducible(&self) -> bool {
        matches!(self.reps.as_slice(), [r] if r.is_unit())
    }
}

/// A strictly increasing, complete initial segment of a liken.
#[derive(Clone, Debug)]
pub struct Prefix {
    spec: LikenSpec,
    elements: Vec<Element>,
    /// All generator values pulled during enumeration; strictly increasing.
    /// Contains every generator ≤ the last element's value.
    generators: Vec<Value>,
    irreducible: Vec<usize>,
    unique: bool,
}

impl Prefix {
    fn new(spec: LikenSpec, elements: Vec<Element>, generators: Vec<Value>) -> Prefix {
        let irreducible =
            elements.iter().filter(|e| e.is_irreducible()).map(|e| e.index).collect();
        let unique = elements.iter().all(|e| e.reps.len() == 1);
        Prefix { spec, elements, generators, irreducible, unique }
    }

    /// Assemble a prefix from parts produced elsewhere (the recursive
    /// constructor uses this). Values must be strictly increasing.
    pub(crate) fn from_parts(
        spec: LikenSpec,
        elements: Vec<Element>,
        generators: Vec<Value>,
    ) -> Prefix {
        debug_assert!(elements
            .windows(2)
            .all(|w| w[0].value.cmp_same_kind(&w[1].value) == Ordering::Less));
        Prefix::new(spec, elements, generators)
    }

    pub fn spec(&self) -> &LikenSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn last_index(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn element(&self, n: usize) -> &Element {
        &self.elements[n]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn value(&self, n: usize) -> &Value {
        &self.elements[n].value
    }

    pub fn kind(&self) -> ValueKind {
        self.spec.kind()
    }

    /// Every element has exactly one representation.
    pub fn unique_reps(&self) -> bool {
        self.unique
    }

    /// Indices of irreducible elements, read from representation shape.
    pub fn irreducible_indices(&self) -> &[usize] {
        &self.irreducible
    }

    /// Generator values pulled during enumeration (all generators up to the
    /// last element's value are present).
    pub fn generators(&self) -> &[Value] {
        &self.generators
    }

    /// Count of generators with value ≤ the last element.
    pub fn generators_seen(&self) -> usize {
        let last = &self.elements[self.elements.len() - 1].value;
        self.generators.partition_point(|g| g.cmp_same_kind(last) != Ordering::Greater)
    }

    /// Binary search by exact value.
    pub fn find_value(&self, v: &Value) -> Option<usize> {
        self.elements.binary_search_by(|e| e.value.cmp_same_kind(v)).ok()
    }

    /// The unique representation of a value in the prefix.
    pub fn omega_inv(&self, v: &Value) -> Result<ExponentVec, QueryError> {
        let n = self.find_value(v).ok_or(QueryError::NotAnElement)?;
        let e = &self.elements[n];
        match e.reps.as_slice() {
            [r] => Ok(r.clone()),
            many => Err(QueryError::NonUnique(many.to_vec())),
        }
    }

    /// Multiplicative-model image of element `n`: the pair
    /// `(n+1, exp(x_n))`, exact for the log-int kind.
    pub fn to_multiplicative(&self, n: usize) -> Result<(usize, BigUint), QueryError> {
        if n >= self.elements.len() {
            return Err(QueryError::IndexOutOfRange);
        }
        match &self.elements[n].value {
            Value::LogInt(k) => Ok((n + 1, k.clone())),
            Value::Rational(_) => Err(QueryError::KindMismatch),
        }
    }

    /// Gap sequence δ_k = x_{k+1} − x_k for k = 0..len−2.
    pub fn gaps(&self) -> Vec<Gap> {
        self.elements
            .windows(2)
            .map(|w| match (&w[0].value, &w[1].value) {
                (Value::Rational(a), Value::Rational(b)) => Gap::Rational(b - a),
                (Value::LogInt(a), Value::LogInt(b)) => {
                    Gap::LogRatio { from: a.clone(), to: b.clone() }
                }
                _ => unreachable!("prefixes are single-kind"),
            })
            .collect()
    }
}

/// A gap between consecutive elements. Rational gaps are exact
/// differences; log-int gaps are kept as the exact endpoint pair so that
/// two gaps compare by integer cross-products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gap {
    Rational(BigRational),
    LogRatio { from: BigUint, to: BigUint },
}

impl Gap {
    /// Exact comparison of gap magnitudes:
    /// `ln(b/a) ? ln(d/c)  ⟺  b·c ? a·d`.
    pub fn cmp_gap(&self, other: &Gap) -> Ordering {
        match (self, other) {
            (Gap::Rational(x), Gap::Rational(y)) => x.cmp(y),
            (Gap::LogRatio { from: a, to: b }, Gap::LogRatio { from: c, to: d }) => {
                (b * c).cmp(&(a * d))
            }
            _ => panic!("gap kinds differ"),
        }
    }
}

#[derive(Clone, Debug)]
struct HeapEntry {
    value: Value,
    vec: ExponentVec,
    /// Re-pushed entries already produced their successors.
    children_pushed: bool,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.vec == other.vec
    }
}
impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed: BinaryHeap is a max-heap and we pop minima.
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .value
            .cmp_same_kind(&self.value)
            .then_with(|| other.vec.cmp(&self.vec))
    }
}

/// A merged emission: one value with every exponent vector reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emitted {
    pub value: Value,
    pub reps: Vec<ExponentVec>,
}

enum Supply {
    /// Pull generators from a stream as the unit chain reaches them.
    Stream(crate::families::GenStream),
    /// Generators arrive by explicit injection; sibling chains that reach
    /// past the known generators park here until the next one appears.
    Manual { parked: Vec<(ExponentVec, Value)> },
}

/// The frontier machinery shared by plain enumeration, sub-liken scans and
/// the recursive constructor.
pub struct Enumerator {
    kind: ValueKind,
    gens: Vec<Value>,
    heap: BinaryHeap<HeapEntry>,
    supply: Supply,
}

impl Enumerator {
    /// Stream-fed enumerator; pulls the first generator eagerly.
    pub fn from_spec(spec: &LikenSpec) -> Result<Enumerator, EnumError> {
        Self::from_stream(spec.kind(), spec.generators())
    }

    fn from_stream(
        kind: ValueKind,
        mut stream: crate::families::GenStream,
    ) -> Result<Enumerator, EnumError> {
        let first = stream.next().ok_or(EnumError::EmptySpec)?;
        let mut eng = Enumerator {
            kind,
            gens: vec![first.clone()],
            heap: BinaryHeap::new(),
            supply: Supply::Stream(stream),
        };
        eng.push_fresh(first, ExponentVec::unit(1));
        Ok(eng)
    }

    /// Enumerator over an explicit finite generator list (no `LikenSpec`).
    pub fn from_values(gens: Vec<Value>) -> Result<Enumerator, EnumError> {
        if gens.is_empty() {
            return Err(EnumError::EmptySpec);
        }
        let kind = gens[0].kind();
        let stream = crate::families::GenStream::Finite { values: gens, next: 0 };
        Self::from_stream(kind, stream)
    }

    /// Manual-supply enumerator with no generators yet. The zero chain is
    /// parked waiting for the first injection.
    pub fn manual(kind: ValueKind) -> Enumerator {
        Enumerator {
            kind,
            gens: Vec::new(),
            heap: BinaryHeap::new(),
            supply: Supply::Manual {
                parked: vec![(ExponentVec::zero(), Value::zero(kind))],
            },
        }
    }

    pub fn generators(&self) -> &[Value] {
        &self.gens
    }

    fn push_fresh(&mut self, value: Value, vec: ExponentVec) {
        self.heap.push(HeapEntry { value, vec, children_pushed: false });
    }

    /// Add generator `a_{k+1}` to a manual-supply enumerator. Every parked
    /// sibling chain resumes with the new index. The value must exceed all
    /// previous generators.
    pub fn inject(&mut self, value: Value) -> u32 {
        if let Some(last) = self.gens.last() {
            assert_eq!(last.cmp_same_kind(&value), Ordering::Less, "generators must increase");
        }
        self.gens.push(value.clone());
        let k = self.gens.len() as u32;
        let parked = match &mut self.supply {
            Supply::Manual { parked } => std::mem::take(parked),
            Supply::Stream(_) => panic!("inject on a stream-fed enumerator"),
        };
        for (parent, pv) in parked {
            let v = pv.plus(&value);
            self.push_fresh(v, parent.bumped(k));
        }
        k
    }

    /// Value of the smallest candidate in the frontier.
    pub fn peek_value(&self) -> Option<&Value> {
        self.heap.peek().map(|e| &e.value)
    }

    /// Pop the minimal candidate group, merging equal values into one
    /// emission and pushing every successor.
    pub fn pop_group(&mut self) -> Option<Emitted> {
        let first = self.heap.pop()?;
        let value = first.value.clone();
        self.push_children(&first);
        let mut reps = vec![first.vec];
        while let Some(peek) = self.heap.peek() {
            if peek.value != value {
                break;
            }
            let e = self.heap.pop().unwrap();
            self.push_children(&e);
            reps.push(e.vec);
        }
        reps.sort();
        Some(Emitted { value, reps })
    }

    /// Return a previously popped emission to the frontier (used when an
    /// injection may create smaller candidates than a buffered lookahead).
    pub fn push_back(&mut self, emitted: Emitted) {
        for vec in emitted.reps {
            self.heap.push(HeapEntry {
                value: emitted.value.clone(),
                vec,
                children_pushed: true,
            });
        }
    }

    fn push_children(&mut self, entry: &HeapEntry) {
        if entry.children_pushed {
            return;
        }
        let j = entry.vec.max_index().expect("zero vector never enters the heap");
        // Deepen: m + e_j keeps the same top index.
        let deeper = entry.value.plus(&self.gens[j as usize - 1]);
        self.push_fresh(deeper, entry.vec.bumped(j));
        // Next sibling of the parent: parent + e_{j+1}.
        let parent = entry.vec.decremented(j);
        let pv = entry
            .value
            .checked_sub(&self.gens[j as usize - 1])
            .expect("entry value contains its top generator");
        let next = j + 1;
        if (next as usize) <= self.gens.len() {
            let v = pv.plus(&self.gens[next as usize - 1]);
            self.push_fresh(v, parent.bumped(next));
        } else {
            let pulled = match &mut self.supply {
                Supply::Stream(s) => s.next(),
                Supply::Manual { parked } => {
                    parked.push((parent, pv));
                    return;
                }
            };
            if let Some(a) = pulled {
                debug_assert_eq!(
                    self.gens.last().unwrap().cmp_same_kind(&a),
                    Ordering::Less,
                    "generator streams must be strictly increasing"
                );
                self.gens.push(a.clone());
                let v = pv.plus(&a);
                self.push_fresh(v, parent.bumped(next));
            }
            // A finite stream ran out: this chain ends here.
        }
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }
}

/// Enumerate the prefix of the liken described by `spec`.
pub fn enumerate(spec: &LikenSpec, limit: Limit) -> Result<Prefix, EnumError> {
    spec.validate().map_err(EnumError::InvalidSpec)?;
    let mut eng = Enumerator::from_spec(spec)?;
    let mut elements = vec![Element::zero(spec.kind())];
    match limit {
        Limit::Count(n) => {
            assert!(n >= 1, "element count must be positive");
            while elements.len() < n {
                let e = eng.pop_group().expect("likens are infinite");
                push_element(&mut elements, e);
            }
        }
        Limit::ValueBound(b) => {
            assert_eq!(b.kind(), spec.kind(), "bound kind must match the spec");
            while eng
                .peek_value()
                .is_some_and(|v| v.cmp_same_kind(&b) != Ordering::Greater)
            {
                let e = eng.pop_group().unwrap();
                push_element(&mut elements, e);
            }
        }
    }
    Ok(Prefix::new(spec.clone(), elements, eng.gens))
}

fn push_element(elements: &mut Vec<Element>, e: Emitted) {
    debug_assert!(
        elements.last().unwrap().value.cmp_same_kind(&e.value) == Ordering::Less,
        "emission order must strictly increase"
    );
    elements.push(Element { index: elements.len(), value: e.value, reps: e.reps });
}

/// Exact evaluation of an exponent vector against a spec's generators:
/// `Σ m_k · a_k`.
pub fn omega(spec: &LikenSpec, m: &ExponentVec) -> Result<Value, QueryError> {
    let mut acc = Value::zero(spec.kind());
    match m.max_index() {
        None => Ok(acc),
        Some(top) => {
            let gens: Vec<Value> = spec.generators().take(top as usize).collect();
            for (k, mult) in m.iter() {
                let a = gens
                    .get(k as usize - 1)
                    .ok_or(QueryError::UnknownGeneratorIndex(k))?;
                acc = acc.plus(&a.scale(mult));
            }
            Ok(acc)
        }
    }
}

/// Same evaluation against an explicit generator list.
pub fn omega_over(gens: &[Value], kind: ValueKind, m: &ExponentVec) -> Result<Value, QueryError> {
    let mut acc = Value::zero(kind);
    for (k, mult) in m.iter() {
        let a = gens.get(k as usize - 1).ok_or(QueryError::UnknownGeneratorIndex(k))?;
        acc = acc.plus(&a.scale(mult));
    }
    Ok(acc)
}

/// z_n: the least element of the sub-liken L⁽ⁿ⁾ (generated by the
/// irreducibles ≤ x_n) that exceeds x_n. Runs a fresh bounded enumeration
/// of L⁽ⁿ⁾ up to x_n + a₁, which always contains z_n because
/// x_n + a₁ ∈ L⁽ⁿ⁾ for n ≥ 1.
pub fn subliken_z(prefix: &Prefix, n: usize) -> Result<Element, QueryError> {
    if n < 1 || n >= prefix.len() {
        return Err(QueryError::IndexOutOfRange);
    }
    let xn = prefix.value(n);
    let gens: Vec<Value> = prefix
        .irreducible_indices()
        .iter()
        .take_while(|&&i| i <= n)
        .map(|&i| prefix.value(i).clone())
        .collect();
    let mut eng = Enumerator::from_values(gens).expect("x_1 is always irreducible");
    let mut index = 0usize;
    loop {
        let e = eng.pop_group().expect("sub-likens are infinite");
        index += 1;
        if e.value.cmp_same_kind(xn) == Ordering::Greater {
            return Ok(Element { index, value: e.value, reps: e.reps });
        }
    }
}

/// Streaming z-computation: enumerates the growing sub-liken once while a
/// caller walks a prefix, injecting each irreducible as it appears. One
/// pass yields every z_n in O(elements up to x_N + a₁) frontier pops.
pub struct ZCursor {
    eng: Enumerator,
    lookahead: Option<Emitted>,
}

impl ZCursor {
    pub fn new(kind: ValueKind) -> ZCursor {
        ZCursor { eng: Enumerator::manual(kind), lookahead: None }
    }

    /// Register the next generator (value strictly above all previous).
    pub fn inject(&mut self, value: Value) -> u32 {
        if let Some(e) = self.lookahead.take() {
            self.eng.push_back(e);
        }
        self.eng.inject(value)
    }

    /// Minimal sub-liken element strictly greater than `x`. Elements ≤ `x`
    /// are consumed and handed to `consumed` in order (they re-derive the
    /// already-known prefix, which callers may verify).
    pub fn next_beyond(
        &mut self,
        x: &Value,
        mut consumed: impl FnMut(Emitted),
    ) -> Emitted {
        loop {
            let e = match self.lookahead.take() {
                Some(e) => e,
                None => self.eng.pop_group().expect("inject before querying"),
            };
            if e.value.cmp_same_kind(x) == Ordering::Greater {
                self.lookahead = Some(e.clone());
                return e;
            }
            consumed(e);
        }
    }

    pub fn generators(&self) -> &[Value] {
        self.eng.generators()
    }
}
