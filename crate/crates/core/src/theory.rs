//! Concrete theories: clones of operations on a finite carrier, truncated at
//! an arity bound.

use alloc::borrow::Cow;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ops::{self, check_carrier, commutes, OpTable};
use crate::tuples::{advance, advance_index, for_each_fresh_tuple, op_count, table_len};
use crate::{Error, Result};

/// Default arity bound for generated theories.
pub const DEFAULT_MAX_ARITY: usize = 3;

/// Resource limits for enumeration and search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of operations that may be enumerated or held in one slice.
    pub enumeration_cap: u128,
    /// Largest number of search nodes the commutant backtracking may visit per slice.
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration_cap: 1 << 20, node_budget: 2_000_000 }
    }
}

impl Limits {
    pub fn with_cap(cap: u128) -> Self {
        Limits { enumeration_cap: cap, ..Limits::default() }
    }
}

/// A finite carrier `{0, .., size-1}` with optional display labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Result<Self> {
        check_carrier(size)?;
        Ok(Carrier { size, labels: None })
    }

    pub fn labelled(labels: Vec<String>) -> Result<Self> {
        check_carrier(labels.len())?;
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidCarrier(String::from("duplicate labels")));
        }
        Ok(Carrier { size: labels.len(), labels: Some(labels) })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// The operations of one arity in a theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slice {
    /// Every operation of this arity; materialized on demand.
    Full,
    /// An explicit sorted, duplicate-free list.
    Ops(Vec<OpTable>),
}

/// How [`Theory::is_commutative`] checks pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CommutativityMode {
    /// Only pairs of generators (all operations when no generators are recorded).
    #[default]
    Generators,
    /// Every pair of operations up to the arity bound.
    AllPairs,
}

/// A subtheory of the full theory of a finite carrier, truncated at
/// `max_arity`: one [`Slice`] per arity `0..=max_arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    carrier: Carrier,
    max_arity: usize,
    slices: Vec<Slice>,
    generators: Option<Vec<OpTable>>,
}

impl Theory {
    /// Builds a theory from explicit per-arity operation lists. The lists are
    /// sorted and deduplicated; arities and carriers are checked, closure is
    /// not (see [`Theory::check_invariants`]).
    pub fn from_slices(
        carrier: Carrier,
        max_arity: usize,
        slices: Vec<Vec<OpTable>>,
        generators: Option<Vec<OpTable>>,
    ) -> Result<Self> {
        if slices.len() != max_arity + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} slices given for arity bound {max_arity}",
                slices.len()
            )));
        }
        let s = carrier.size();
        let mut out = Vec::with_capacity(slices.len());
        for (n, mut ops) in slices.into_iter().enumerate() {
            for op in &ops {
                check_member_shape(op, n, s)?;
            }
            ops.sort();
            ops.dedup();
            out.push(Slice::Ops(ops));
        }
        if let Some(gens) = &generators {
            for g in gens {
                if g.carrier() != s {
                    return Err(Error::CarrierMismatch { left: s, right: g.carrier() });
                }
            }
        }
        Ok(Theory { carrier, max_arity, slices: out, generators })
    }

    /// [`Theory::from_slices`] for slices that may be [`Slice::Full`].
    pub fn from_slice_list(
        carrier: Carrier,
        max_arity: usize,
        slices: Vec<Slice>,
        generators: Option<Vec<OpTable>>,
    ) -> Result<Self> {
        let explicit: Vec<Vec<OpTable>> = slices
            .iter()
            .map(|s| match s {
                Slice::Full => Vec::new(),
                Slice::Ops(ops) => ops.clone(),
            })
            .collect();
        let mut t = Theory::from_slices(carrier, max_arity, explicit, generators)?;
        for (n, s) in slices.iter().enumerate() {
            if matches!(s, Slice::Full) {
                t.slices[n] = Slice::Full;
            }
        }
        Ok(t)
    }

    pub(crate) fn from_parts(
        carrier: Carrier,
        max_arity: usize,
        slices: Vec<Slice>,
        generators: Option<Vec<OpTable>>,
    ) -> Self {
        debug_assert_eq!(slices.len(), max_arity + 1);
        debug_assert!(slices.iter().all(|s| match s {
            Slice::Full => true,
            Slice::Ops(ops) => ops.windows(2).all(|w| w[0] < w[1]),
        }));
        Theory { carrier, max_arity, slices, generators }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier.size()
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn slice(&self, n: usize) -> Result<&Slice> {
        self.slices.get(n).ok_or(Error::AboveBound { arity: n, bound: self.max_arity })
    }

    pub fn generators(&self) -> Option<&[OpTable]> {
        self.generators.as_deref()
    }

    pub fn with_generators(mut self, generators: Option<Vec<OpTable>>) -> Self {
        self.generators = generators;
        self
    }

    /// Number of operations of arity `n` (saturating for huge full slices).
    pub fn count(&self, n: usize) -> Result<u128> {
        Ok(match self.slice(n)? {
            Slice::Full => op_count(self.carrier_size(), n),
            Slice::Ops(ops) => ops.len() as u128,
        })
    }

    pub fn arity_counts(&self) -> Vec<u128> {
        (0..=self.max_arity).map(|n| self.count(n).unwrap_or(u128::MAX)).collect()
    }

    /// The operations of arity `n`, materializing a full slice if needed.
    pub fn ops(&self, n: usize, limits: &Limits) -> Result<Cow<'_, [OpTable]>> {
        match self.slice(n)? {
            Slice::Ops(ops) => Ok(Cow::Borrowed(ops)),
            Slice::Full => Ok(Cow::Owned(all_ops(self.carrier_size(), n, limits)?)),
        }
    }

    /// All operations up to the arity bound.
    pub fn all_ops(&self, limits: &Limits) -> Result<Vec<OpTable>> {
        let mut out = Vec::new();
        for n in 0..=self.max_arity {
            out.extend(self.ops(n, limits)?.iter().cloned());
        }
        Ok(out)
    }

    /// The recorded generators, or every non-projection operation when none
    /// are recorded.
    pub fn generating_ops(&self, limits: &Limits) -> Result<Vec<OpTable>> {
        match &self.generators {
            Some(g) => Ok(g.clone()),
            None => {
                let mut ops = self.all_ops(limits)?;
                ops.retain(|op| !op.is_projection());
                Ok(ops)
            }
        }
    }

    pub fn contains(&self, op: &OpTable) -> Result<bool> {
        if op.carrier() != self.carrier_size() {
            return Err(Error::CarrierMismatch { left: self.carrier_size(), right: op.carrier() });
        }
        Ok(match self.slice(op.arity())? {
            Slice::Full => true,
            Slice::Ops(ops) => ops.binary_search(op).is_ok(),
        })
    }

    /// Whether every slice of `self` up to arity `n` is contained in `other`'s.
    pub fn is_subtheory_upto(&self, other: &Theory, n: usize) -> Result<bool> {
        if self.carrier_size() != other.carrier_size() {
            return Err(Error::CarrierMismatch {
                left: self.carrier_size(),
                right: other.carrier_size(),
            });
        }
        for a in 0..=n {
            let ok = match (self.slice(a)?, other.slice(a)?) {
                (_, Slice::Full) => true,
                (Slice::Full, Slice::Ops(ops)) => {
                    ops.len() as u128 == op_count(self.carrier_size(), a)
                }
                (Slice::Ops(mine), Slice::Ops(theirs)) => {
                    mine.iter().all(|op| theirs.binary_search(op).is_ok())
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Per-arity set equality for arities `0..=n`.
    pub fn equal_upto(&self, other: &Theory, n: usize) -> Result<bool> {
        Ok(self.is_subtheory_upto(other, n)? && other.is_subtheory_upto(self, n)?)
    }

    /// Whether operations of the theory pairwise commute.
    pub fn is_commutative(&self, mode: CommutativityMode, limits: &Limits) -> Result<bool> {
        let ops = match mode {
            CommutativityMode::Generators => self.generating_ops(limits)?,
            CommutativityMode::AllPairs => self.all_ops(limits)?,
        };
        for (a, mu) in ops.iter().enumerate() {
            for nu in &ops[a..] {
                if !commutes(mu, nu)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The operations of the theory commuting with all of its generators.
    pub fn center(&self, limits: &Limits) -> Result<Theory> {
        let gens = self.generating_ops(limits)?;
        let mut slices = Vec::with_capacity(self.max_arity + 1);
        for n in 0..=self.max_arity {
            let mut keep = Vec::new();
            for op in self.ops(n, limits)?.iter() {
                if crate::commutant::commutes_with_all(op, &gens)? {
                    keep.push(op.clone());
                }
            }
            slices.push(Slice::Ops(keep));
        }
        Ok(Theory::from_parts(self.carrier.clone(), self.max_arity, slices, None))
    }

    /// Checks that every slice contains the projections and that the theory is
    /// closed under superposition within the arity bound.
    ///
    /// Closure is checked by applying every operation of arity `k` to every
    /// `k`-tuple of each slice; when that would exceed `work_cap` table
    /// evaluations the closure part is skipped and `Ok(None)` is returned.
    pub fn check_invariants(&self, limits: &Limits, work_cap: u128) -> Result<Option<()>> {
        let s = self.carrier_size();
        for n in 1..=self.max_arity {
            for p in ops::projections(n, s)? {
                if !self.contains(&p)? {
                    return Err(Error::InvariantViolation(format!(
                        "missing projection {} of arity {n}",
                        p.projection_index().unwrap_or(0)
                    )));
                }
            }
        }
        let mut work: u128 = 0;
        for m in 0..=self.max_arity {
            if let Slice::Ops(targets) = self.slice(m)? {
                for k in 0..=self.max_arity {
                    let outer = self.count(k)?;
                    let tuples = crate::tuples::count_pow(targets.len() as u128, k);
                    work = work.saturating_add(outer.saturating_mul(tuples));
                }
            }
        }
        if work > work_cap {
            return Ok(None);
        }
        for m in 0..=self.max_arity {
            let Slice::Ops(targets) = self.slice(m)? else { continue };
            for k in 0..=self.max_arity {
                for outer in self.ops(k, limits)?.iter() {
                    let mut pick = vec![0usize; k];
                    if k > 0 && targets.is_empty() {
                        continue;
                    }
                    loop {
                        let inners: Vec<OpTable> =
                            pick.iter().map(|&i| targets[i].clone()).collect();
                        let sup = ops::superpose_at(outer, &inners, m)?;
                        if targets.binary_search(&sup).is_err() {
                            return Err(Error::InvariantViolation(format!(
                                "not closed: superposition of an arity-{k} operation lands outside arity {m}"
                            )));
                        }
                        if !advance_index(&mut pick, targets.len()) {
                            break;
                        }
                    }
                }
            }
        }
        Ok(Some(()))
    }
}

fn check_member_shape(op: &OpTable, n: usize, s: usize) -> Result<()> {
    if op.arity() != n {
        return Err(Error::ArityMismatch { expected: n, found: op.arity() });
    }
    if op.carrier() != s {
        return Err(Error::CarrierMismatch { left: s, right: op.carrier() });
    }
    Ok(())
}

/// Every operation of arity `n` on a carrier of size `s`, in canonical order.
pub fn all_ops(s: usize, n: usize, limits: &Limits) -> Result<Vec<OpTable>> {
    check_carrier(s)?;
    let count = op_count(s, n);
    if count > limits.enumeration_cap {
        return Err(Error::EnumerationTooLarge { arity: n, cap: limits.enumeration_cap });
    }
    let len = table_len(s, n)?;
    let mut out = Vec::with_capacity(count as usize);
    let mut table = vec![0u8; len];
    loop {
        out.push(OpTable::from_raw(n, s, table.clone()));
        if !advance(&mut table, s) {
            break;
        }
    }
    // The odometer runs little-endian; canonical order is lexicographic.
    out.sort();
    Ok(out)
}

/// The full theory of an `s`-element set up to arity `max_arity`. Slices are
/// materialized lazily.
pub fn full_theory(s: usize, max_arity: usize) -> Result<Theory> {
    let carrier = Carrier::new(s)?;
    Ok(Theory::from_parts(carrier, max_arity, vec![Slice::Full; max_arity + 1], None))
}

/// The theory containing only projections.
pub fn projections_theory(s: usize, max_arity: usize) -> Result<Theory> {
    let carrier = Carrier::new(s)?;
    let slices = (0..=max_arity)
        .map(|n| {
            ops::projections(n, s).map(|mut p| {
                p.sort();
                Slice::Ops(p)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Theory::from_parts(carrier, max_arity, slices, Some(Vec::new())))
}

/// The clone generated by `generators`, truncated at `max_arity`.
///
/// The arity-`m` slice is the subuniverse of `S^(S^m)` generated by the `m`
/// projections under the generators acting pointwise.
pub fn clone_generate(
    generators: &[OpTable],
    s: usize,
    max_arity: usize,
    limits: &Limits,
) -> Result<Theory> {
    let carrier = Carrier::new(s)?;
    for g in generators {
        if g.carrier() != s {
            return Err(Error::CarrierMismatch { left: s, right: g.carrier() });
        }
        if g.arity() > max_arity {
            return Err(Error::AboveBound { arity: g.arity(), bound: max_arity });
        }
    }
    let mut gens = generators.to_vec();
    gens.sort();
    gens.dedup();
    // Generators already in the clone of the earlier ones are dropped, since
    // closure cost grows with the number of generators.
    let mut order: Vec<&OpTable> = gens.iter().collect();
    order.sort_by_key(|g| g.arity());
    let mut basis: Vec<OpTable> = Vec::new();
    let mut slices: Vec<Slice> = Vec::new();
    for g in order {
        if !slices.is_empty() && slice_contains(&slices[g.arity()], g) {
            continue;
        }
        basis.push(g.clone());
        slices = (0..=max_arity)
            .map(|m| generate_slice(&basis, s, m, limits))
            .collect::<Result<Vec<_>>>()?;
    }
    if slices.is_empty() {
        slices = (0..=max_arity)
            .map(|m| generate_slice(&[], s, m, limits))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(Theory::from_parts(carrier, max_arity, slices, Some(gens)))
}

fn slice_contains(slice: &Slice, op: &OpTable) -> bool {
    match slice {
        Slice::Full => true,
        Slice::Ops(ops) => ops.binary_search(op).is_ok(),
    }
}

fn generate_slice(gens: &[OpTable], s: usize, m: usize, limits: &Limits) -> Result<Slice> {
    let full = op_count(s, m);
    let len = table_len(s, m)?;
    let mut known: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut elems: Vec<Vec<u8>> = Vec::new();
    let push = |t: Vec<u8>, known: &mut BTreeSet<Vec<u8>>, elems: &mut Vec<Vec<u8>>| {
        if known.insert(t.clone()) {
            elems.push(t);
        }
    };
    for p in ops::projections(m, s)? {
        push(p.into_table(), &mut known, &mut elems);
    }
    for g in gens.iter().filter(|g| g.arity() == 0) {
        push(vec![g.at(0); len], &mut known, &mut elems);
    }
    let mut old = 0;
    while old < elems.len() {
        if elems.len() as u128 == full {
            return Ok(Slice::Full);
        }
        let cur = elems.len();
        let mut fresh: Vec<Vec<u8>> = Vec::new();
        for g in gens.iter().filter(|g| g.arity() > 0) {
            let k = g.arity();
            let completed = for_each_fresh_tuple(old, cur, k, |tuple| {
                let t: Vec<u8> = (0..len)
                    .map(|x| {
                        let idx = tuple.iter().rev().fold(0usize, |acc, &e| acc * s + elems[e][x] as usize);
                        g.at(idx)
                    })
                    .collect();
                if !known.contains(&t) {
                    known.insert(t.clone());
                    fresh.push(t);
                    if known.len() as u128 > limits.enumeration_cap {
                        return Err(Error::EnumerationTooLarge { arity: m, cap: limits.enumeration_cap });
                    }
                }
                Ok(known.len() as u128 != full)
            })?;
            if !completed {
                return Ok(Slice::Full);
            }
        }
        old = cur;
        elems.extend(fresh);
    }
    if elems.len() as u128 == full {
        return Ok(Slice::Full);
    }
    let mut ops: Vec<OpTable> = elems.into_iter().map(|t| OpTable::from_raw(m, s, t)).collect();
    ops.sort();
    Ok(Slice::Ops(ops))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(arity: usize, t: &[u8]) -> OpTable {
        OpTable::new(arity, 2, t.to_vec()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn full_theory_counts() {
        assert_eq!(full_theory(2, 2).unwrap().arity_counts(), [2, 4, 16]);
        assert_eq!(full_theory(3, 1).unwrap().count(1).unwrap(), 27);
        let t = full_theory(2, 3).unwrap();
        assert_eq!(t.count(3).unwrap(), 256);
        assert_eq!(t.ops(3, &lim()).unwrap().len(), 256);
        let big = full_theory(3, 3).unwrap();
        assert!(matches!(big.ops(3, &lim()), Err(Error::EnumerationTooLarge { arity: 3, .. })));
    }

    #[test]
    fn generated_clones() {
        let join = op(2, &[0, 1, 1, 1]);
        let t = clone_generate(std::slice::from_ref(&join), 2, 2, &lim()).unwrap();
        assert_eq!(t.arity_counts(), [0, 1, 3]);
        assert!(t.contains(&join).unwrap());
        assert!(t.contains(&ops::projection(2, 0, 2).unwrap()).unwrap());
        assert!(!t.contains(&op(2, &[0, 0, 0, 1])).unwrap());

        let p = clone_generate(&[], 2, 2, &lim()).unwrap();
        assert_eq!(p.arity_counts(), [0, 1, 2]);

        let bounded = clone_generate(&[join, op(0, &[0]), op(0, &[1])], 2, 2, &lim()).unwrap();
        assert_eq!(bounded.arity_counts(), [2, 3, 5]);
    }

    #[test]
    fn generation_reaches_full_slices() {
        let meet = op(2, &[0, 0, 0, 1]);
        let neg = op(1, &[1, 0]);
        let t = clone_generate(&[meet, neg], 2, 3, &lim()).unwrap();
        assert_eq!(t.arity_counts(), [0, 4, 16, 256]);
        assert_eq!(t.slice(3).unwrap(), &Slice::Full);
    }

    #[test]
    fn contains_rejects_bad_queries() {
        let t = clone_generate(&[], 2, 2, &lim()).unwrap();
        assert!(matches!(t.contains(&op(3, &[0; 8])), Err(Error::AboveBound { .. })));
        let other = OpTable::identity(3).unwrap();
        assert!(matches!(t.contains(&other), Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn center_of_boolean_clone_is_trivial() {
        let t = clone_generate(&[op(2, &[0, 0, 0, 1]), op(1, &[1, 0])], 2, 3, &lim()).unwrap();
        let c = t.center(&lim()).unwrap();
        assert!(c.equal_upto(&projections_theory(2, 3).unwrap(), 3).unwrap());
        let p = projections_theory(2, 3).unwrap();
        assert!(p.center(&lim()).unwrap().equal_upto(&p, 3).unwrap());
        assert!(p.is_commutative(CommutativityMode::Generators, &lim()).unwrap());
    }

    #[test]
    fn invariant_check_flags_non_clones() {
        let join = op(2, &[0, 1, 1, 1]);
        let t = clone_generate(std::slice::from_ref(&join), 2, 3, &lim()).unwrap();
        assert_eq!(t.check_invariants(&lim(), u128::MAX).unwrap(), Some(()));
        let carrier = Carrier::new(2).unwrap();
        let broken = Theory::from_slices(
            carrier,
            2,
            vec![vec![], ops::projections(1, 2).unwrap(), {
                let mut v = ops::projections(2, 2).unwrap();
                v.push(join);
                v.push(op(2, &[0, 0, 0, 1]));
                v.push(op(2, &[1, 1, 1, 0]));
                v
            }],
            None,
        )
        .unwrap();
        assert!(matches!(
            broken.check_invariants(&lim(), u128::MAX),
            Err(Error::InvariantViolation(_))
        ));
        assert_eq!(full_theory(2, 3).unwrap().check_invariants(&lim(), 10).unwrap(), Some(()));
    }

    #[test]
    fn carrier_labels() {
        assert!(Carrier::labelled(vec!["a".into(), "b".into()]).is_ok());
        assert!(Carrier::labelled(vec!["a".into(), "a".into()]).is_err());
        assert!(Carrier::new(0).is_err());
    }
}
