//! Commutants (centralizer clones), double commutants and the
//! saturated/balanced verdicts, all truncated at an arity bound.
//!
//! The arity-`n` slice of the commutant of a set of generators `G` is the set
//! of `n`-ary operations `f` commuting with every `g` in `G`, i.e. the
//! homomorphisms `A^n -> A` of the algebra `A = (S, G)`. Slices are found by a
//! backtracking search over partial tables: once `f` is known on points
//! `a_1, .., a_m`, a generator `g` of arity `m` forces
//! `f(g(a_1, .., a_m)) = g(f(a_1), .., f(a_m))`, where `g` acts on points
//! coordinatewise.

use alloc::vec;
use alloc::vec::Vec;

use crate::ops::{commutes, OpTable};
use crate::theory::{all_ops, Carrier, Limits, Slice, Theory};
use crate::tuples::{advance, for_each_fresh_tuple, op_count, table_len};
use crate::{Error, Result};

/// Closure checks on commutant results are skipped above this many
/// superposition evaluations.
const CLOSURE_CHECK_WORK: u128 = 20_000_000;

/// How a commutant slice is searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Backtracking within the node budget, falling back to exhaustive
    /// enumeration when the candidate space is under the cap.
    #[default]
    Auto,
    Backtrack,
    Exhaustive,
}

pub fn commutes_with_all(op: &OpTable, gens: &[OpTable]) -> Result<bool> {
    for g in gens {
        if !commutes(op, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sorted arity-`n` slice of the commutant of `gens` in the full theory
/// of an `s`-element set.
pub fn commutant_slice(
    gens: &[OpTable],
    s: usize,
    n: usize,
    strategy: Strategy,
    limits: &Limits,
) -> Result<Vec<OpTable>> {
    for g in gens {
        if g.carrier() != s {
            return Err(Error::CarrierMismatch { left: s, right: g.carrier() });
        }
    }
    let space = op_count(s, n);
    let mut out = match strategy {
        Strategy::Exhaustive => exhaustive_slice(gens, s, n, limits)?,
        Strategy::Backtrack => backtrack_slice(gens, s, n, limits)?,
        Strategy::Auto => match backtrack_slice(gens, s, n, limits) {
            Ok(ops) => ops,
            Err(Error::Intractable { .. }) if space <= limits.enumeration_cap => {
                exhaustive_slice(gens, s, n, limits)?
            }
            Err(e) => return Err(e),
        },
    };
    out.sort();
    Ok(out)
}

fn exhaustive_slice(gens: &[OpTable], s: usize, n: usize, limits: &Limits) -> Result<Vec<OpTable>> {
    let mut out = Vec::new();
    for f in all_ops(s, n, limits)? {
        if commutes_with_all(&f, gens)? {
            out.push(f);
        }
    }
    Ok(out)
}

struct Search<'a> {
    gens: &'a [OpTable],
    s: usize,
    n: usize,
    /// Coordinates of every point of `S^n`, indexed by point.
    coords: Vec<Vec<u8>>,
    nodes: u64,
    budget: u64,
    cap: u128,
    found: Vec<OpTable>,
}

#[derive(Clone)]
struct Partial {
    table: Vec<Option<u8>>,
    decided: Vec<usize>,
}

impl Search<'_> {
    /// Where `g` sends the points `tuple` coordinatewise.
    fn image_point(&self, g: &OpTable, points: &[usize]) -> usize {
        (0..self.n).rev().fold(0, |acc, i| {
            let idx = points.iter().rev().fold(0, |a, &p| a * self.s + self.coords[p][i] as usize);
            acc * self.s + g.at(idx) as usize
        })
    }

    /// Assigns `value` at `point` and propagates every forced entry. Returns
    /// `false` on a contradiction.
    fn assign(&self, partial: &mut Partial, point: usize, value: u8) -> bool {
        let mut queue = vec![(point, value)];
        while let Some((p, v)) = queue.pop() {
            match partial.table[p] {
                Some(w) if w != v => return false,
                Some(_) => continue,
                None => {
                    partial.table[p] = Some(v);
                    partial.decided.push(p);
                }
            }
            let len = partial.decided.len();
            for g in self.gens.iter().filter(|g| g.arity() > 0) {
                let decided = &partial.decided;
                let table = &partial.table;
                let ok = for_each_fresh_tuple(len - 1, len, g.arity(), |t| {
                    let points: Vec<usize> = t.iter().map(|&i| decided[i]).collect();
                    let target = self.image_point(g, &points);
                    let val_idx = points
                        .iter()
                        .rev()
                        .fold(0, |a, &q| a * self.s + table[q].unwrap_or(0) as usize);
                    let forced = g.at(val_idx);
                    match table[target] {
                        Some(w) if w != forced => return Ok::<bool, ()>(false),
                        Some(_) => {}
                        None => queue.push((target, forced)),
                    }
                    Ok(true)
                });
                if !matches!(ok, Ok(true)) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, partial: Partial) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Intractable { arity: self.n });
        }
        let Some(point) = partial.table.iter().position(Option::is_none) else {
            let table = partial.table.iter().map(|v| v.unwrap_or(0)).collect();
            self.found.push(OpTable::from_raw(self.n, self.s, table));
            if self.found.len() as u128 > self.cap {
                return Err(Error::EnumerationTooLarge { arity: self.n, cap: self.cap });
            }
            return Ok(());
        };
        for v in 0..self.s as u8 {
            let mut next = partial.clone();
            if self.assign(&mut next, point, v) {
                self.run(next)?;
            }
        }
        Ok(())
    }
}

fn backtrack_slice(gens: &[OpTable], s: usize, n: usize, limits: &Limits) -> Result<Vec<OpTable>> {
    let points = table_len(s, n)?;
    let mut coords = Vec::with_capacity(points);
    let mut digits = vec![0u8; n];
    loop {
        coords.push(digits.clone());
        if !advance(&mut digits, s) {
            break;
        }
    }
    let mut search = Search {
        gens,
        s,
        n,
        coords,
        nodes: 0,
        budget: limits.node_budget,
        cap: limits.enumeration_cap,
        found: Vec::new(),
    };
    let mut root = Partial { table: vec![None; points], decided: Vec::with_capacity(points) };
    // Nullary generators pin f(c, .., c) = c before anything else.
    for c in gens.iter().filter(|g| g.arity() == 0) {
        let value = c.at(0);
        let diagonal = (0..n).fold(0, |acc, _| acc * s + value as usize);
        if !search.assign(&mut root, diagonal, value) {
            return Ok(Vec::new());
        }
    }
    search.run(root)?;
    Ok(search.found)
}

/// The commutant of `gens` up to arity `max_arity`, intersected with
/// `ambient` when one is given (the full theory otherwise).
///
/// The result is checked to contain the projections and, when cheap enough,
/// to be closed under superposition.
pub fn commutant(
    gens: &[OpTable],
    s: usize,
    max_arity: usize,
    ambient: Option<&Theory>,
    limits: &Limits,
) -> Result<Theory> {
    commutant_with(gens, s, max_arity, ambient, Strategy::Auto, limits)
}

pub fn commutant_with(
    gens: &[OpTable],
    s: usize,
    max_arity: usize,
    ambient: Option<&Theory>,
    strategy: Strategy,
    limits: &Limits,
) -> Result<Theory> {
    let carrier = Carrier::new(s)?;
    if let Some(amb) = ambient {
        if amb.carrier_size() != s {
            return Err(Error::CarrierMismatch { left: s, right: amb.carrier_size() });
        }
        if amb.max_arity() < max_arity {
            return Err(Error::AboveBound { arity: max_arity, bound: amb.max_arity() });
        }
    }
    let mut slices = Vec::with_capacity(max_arity + 1);
    for n in 0..=max_arity {
        let ambient_slice = ambient.map(|a| a.slice(n)).transpose()?;
        let slice = match ambient_slice {
            // Against a small explicit ambient it is cheaper to filter it
            // directly; the result is the same intersection.
            Some(Slice::Ops(amb)) if (amb.len() as u128) < op_count(s, n).min(4096) => {
                let mut keep = Vec::new();
                for op in amb {
                    if commutes_with_all(op, gens)? {
                        keep.push(op.clone());
                    }
                }
                Slice::Ops(keep)
            }
            _ => {
                let mut found = commutant_slice(gens, s, n, strategy, limits)?;
                if let Some(Slice::Ops(amb)) = ambient_slice {
                    found.retain(|op| amb.binary_search(op).is_ok());
                }
                if found.len() as u128 == op_count(s, n) {
                    Slice::Full
                } else {
                    Slice::Ops(found)
                }
            }
        };
        slices.push(slice);
    }
    let theory = Theory::from_parts(carrier, max_arity, slices, None);
    theory.check_invariants(limits, CLOSURE_CHECK_WORK)?;
    Ok(theory)
}

/// The commutant of a theory, using its generators.
pub fn commutant_of(theory: &Theory, ambient: Option<&Theory>, limits: &Limits) -> Result<Theory> {
    let gens = theory.generating_ops(limits)?;
    commutant(&gens, theory.carrier_size(), theory.max_arity(), ambient, limits)
}

pub fn double_commutant(
    gens: &[OpTable],
    s: usize,
    max_arity: usize,
    ambient: Option<&Theory>,
    limits: &Limits,
) -> Result<Theory> {
    let first = commutant(gens, s, max_arity, ambient, limits)?;
    commutant_of(&first, ambient, limits)
}

/// Whether `T^{⊥⊥} = T` slice by slice up to `T`'s arity bound.
pub fn is_saturated(theory: &Theory, ambient: Option<&Theory>, limits: &Limits) -> Result<bool> {
    let first = commutant_of(theory, ambient, limits)?;
    let second = commutant_of(&first, ambient, limits)?;
    theory.equal_upto(&second, theory.max_arity())
}

/// Whether `T^⊥ = T` slice by slice up to `T`'s arity bound.
pub fn is_balanced(theory: &Theory, ambient: Option<&Theory>, limits: &Limits) -> Result<bool> {
    let first = commutant_of(theory, ambient, limits)?;
    theory.equal_upto(&first, theory.max_arity())
}

/// Whether every generator of one theory commutes with every generator of the
/// other.
pub fn theories_commute(gens_a: &[OpTable], gens_b: &[OpTable], s: usize) -> Result<bool> {
    for a in gens_a {
        if a.carrier() != s {
            return Err(Error::CarrierMismatch { left: s, right: a.carrier() });
        }
        for b in gens_b {
            if b.carrier() != s {
                return Err(Error::CarrierMismatch { left: s, right: b.carrier() });
            }
            if !commutes(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`theories_commute`] decided the other way round: the second theory
/// commutes with the first iff its generators factor through the commutant of
/// the first.
pub fn theories_commute_via_commutant(
    gens_a: &[OpTable],
    gens_b: &[OpTable],
    s: usize,
    limits: &Limits,
) -> Result<bool> {
    let bound = gens_b.iter().map(OpTable::arity).max().unwrap_or(0);
    let perp = commutant(gens_a, s, bound, None, limits)?;
    for b in gens_b {
        if !perp.contains(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{clone_generate, full_theory, projections_theory};

    fn op(arity: usize, t: &[u8]) -> OpTable {
        OpTable::new(arity, 2, t.to_vec()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn join() -> OpTable {
        op(2, &[0, 1, 1, 1])
    }

    #[test]
    fn commutes_with_all_examples() {
        assert!(commutes_with_all(&join(), &[join(), op(0, &[0])]).unwrap());
        assert!(!commutes_with_all(&op(1, &[1, 0]), &[join()]).unwrap());
        let p = crate::ops::projection(3, 2, 2).unwrap();
        assert!(commutes_with_all(&p, &[join(), op(1, &[1, 0]), op(0, &[1])]).unwrap());
    }

    #[test]
    fn empty_generators_give_full_theory() {
        let t = commutant(&[], 2, 2, None, &lim()).unwrap();
        assert!(t.equal_upto(&full_theory(2, 2).unwrap(), 2).unwrap());
    }

    #[test]
    fn join_with_bottom_is_balanced() {
        let t = commutant(&[join(), op(0, &[0])], 2, 3, None, &lim()).unwrap();
        assert_eq!(t.arity_counts(), [1, 2, 4, 8]);
        let again = commutant_of(&t, None, &lim()).unwrap();
        assert!(again.equal_upto(&t, 3).unwrap());
    }

    #[test]
    fn strategies_agree_on_small_cases() {
        let gen_sets: [&[OpTable]; 4] =
            [&[], &[join()], &[op(1, &[1, 0])], &[op(0, &[1]), op(2, &[0, 0, 0, 1])]];
        for gens in gen_sets {
            for n in 0..=3 {
                let a = commutant_slice(gens, 2, n, Strategy::Backtrack, &lim()).unwrap();
                let b = commutant_slice(gens, 2, n, Strategy::Exhaustive, &lim()).unwrap();
                assert_eq!(a, b, "gens {gens:?} arity {n}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_intractable() {
        let tight = Limits { enumeration_cap: 10, node_budget: 5 };
        assert_eq!(
            commutant_slice(&[], 3, 2, Strategy::Auto, &tight),
            Err(Error::Intractable { arity: 2 })
        );
        // Falls back to enumeration when the space is under the cap.
        let fallback = Limits { enumeration_cap: 1 << 20, node_budget: 5 };
        assert_eq!(commutant_slice(&[], 2, 2, Strategy::Auto, &fallback).unwrap().len(), 16);
    }

    #[test]
    fn saturation_examples() {
        let p = projections_theory(2, 2).unwrap();
        assert!(is_saturated(&p, None, &lim()).unwrap());
        assert!(!is_balanced(&p, None, &lim()).unwrap());
    }

    #[test]
    fn ambient_intersection() {
        let amb = clone_generate(&[join()], 2, 2, &lim()).unwrap();
        let t = commutant(&[op(0, &[0])], 2, 2, Some(&amb), &lim()).unwrap();
        assert!(t.equal_upto(&amb, 2).unwrap());
        assert!(matches!(
            commutant(&[], 2, 3, Some(&amb), &lim()),
            Err(Error::AboveBound { .. })
        ));
    }

    #[test]
    fn commuting_theories() {
        let meet = op(2, &[0, 0, 0, 1]);
        assert!(!theories_commute(std::slice::from_ref(&meet), &[join()], 2).unwrap());
        assert!(!theories_commute_via_commutant(std::slice::from_ref(&meet), &[join()], 2, &lim()).unwrap());
        assert!(theories_commute(&[join()], &[join(), op(0, &[0])], 2).unwrap());
        assert!(theories_commute_via_commutant(&[join()], &[join(), op(0, &[0])], 2, &lim()).unwrap());
        assert!(theories_commute(&[meet], &[], 2).unwrap());
    }
}
