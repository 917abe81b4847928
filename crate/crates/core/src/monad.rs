//! The finitary monad of a concrete theory, evaluated on finite sets.
//!
//! An element of `T X` is represented by a triple `[op, n, x]` with `op` an
//! `n`-ary operation of the theory and `x: n -> X` an anchor. Two triples
//! name the same element when they agree after pushing both to the identity
//! anchor on `X` (the full-support normal form); the canonical form with an
//! injective, order-preserving anchor is what [`canonicalize`] produces.

use alloc::vec;
use alloc::vec::Vec;

use crate::ops::{kron1, kron2, projection, OpTable};
use crate::theory::{clone_generate, Limits, Theory};
use crate::tuples::table_len;
use crate::{Error, Result};

/// An element `[op, n, anchor]` of `T X` for `X = {0, .., set_size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeElement {
    op: OpTable,
    anchor: Vec<usize>,
    set_size: usize,
}

impl FreeElement {
    pub fn new(op: OpTable, anchor: Vec<usize>, set_size: usize) -> Result<Self> {
        if anchor.len() != op.arity() {
            return Err(Error::ArityMismatch { expected: op.arity(), found: anchor.len() });
        }
        if let Some(&bad) = anchor.iter().find(|&&a| a >= set_size) {
            return Err(Error::ElementOutOfRange { value: bad, carrier: set_size });
        }
        Ok(FreeElement { op, anchor, set_size })
    }

    pub fn op(&self) -> &OpTable {
        &self.op
    }

    pub fn anchor(&self) -> &[usize] {
        &self.anchor
    }

    pub fn support_arity(&self) -> usize {
        self.op.arity()
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    /// Whether the anchor is injective and order-preserving.
    pub fn is_canonical(&self) -> bool {
        self.anchor.windows(2).all(|w| w[0] < w[1])
    }

    /// Pushes the element forward to the anchor `target` (an injective list
    /// containing the current anchor's image), returning the operation of
    /// arity `target.len()`.
    fn op_over(&self, target: &[usize]) -> Result<OpTable> {
        let pos: Vec<usize> = self
            .anchor
            .iter()
            .map(|a| {
                target.iter().position(|t| t == a).ok_or(Error::ShapeMismatch(
                    alloc::string::String::from("anchor not covered by target"),
                ))
            })
            .collect::<Result<_>>()?;
        let op = &self.op;
        OpTable::from_fn(target.len(), op.carrier(), |z| {
            let args: Vec<u8> = pos.iter().map(|&p| z[p]).collect();
            op.table()[crate::ops::index_of(&args, op.carrier())]
        })
    }

    /// The full-support normal form: the same element over the identity anchor.
    pub fn normal_form(&self) -> Result<FreeElement> {
        let ident: Vec<usize> = (0..self.set_size).collect();
        table_len(self.op.carrier(), self.set_size)?;
        Ok(FreeElement { op: self.op_over(&ident)?, anchor: ident, set_size: self.set_size })
    }

    /// Equality in `T X`.
    pub fn same_element(&self, other: &FreeElement) -> Result<bool> {
        if self.set_size != other.set_size {
            return Ok(false);
        }
        Ok(self.normal_form()? == other.normal_form()?)
    }
}

/// Factors `anchor = x' ∘ e` with `e` surjective onto `n'` and `x'` injective
/// and order-preserving, and returns `[op ∘ e, n', x']`. Dummy variables are
/// kept.
pub fn canonicalize(op: &OpTable, anchor: &[usize], set_size: usize) -> Result<FreeElement> {
    let elem = FreeElement::new(op.clone(), anchor.to_vec(), set_size)?;
    Ok(canonical(&elem))
}

fn canonical(elem: &FreeElement) -> FreeElement {
    if elem.is_canonical() {
        return elem.clone();
    }
    let mut image = elem.anchor.clone();
    image.sort_unstable();
    image.dedup();
    let op = elem.op_over(&image).expect("image covers the anchor");
    FreeElement { op, anchor: image, set_size: elem.set_size }
}

/// The monad `X -> T X` of a theory, for finite `X` of size at most the
/// theory's arity bound.
#[derive(Clone, Copy, Debug)]
pub struct FreeMonad<'a> {
    theory: &'a Theory,
    limits: Limits,
}

impl<'a> FreeMonad<'a> {
    pub fn new(theory: &'a Theory) -> Self {
        FreeMonad { theory, limits: Limits::default() }
    }

    pub fn with_limits(theory: &'a Theory, limits: Limits) -> Self {
        FreeMonad { theory, limits }
    }

    pub fn theory(&self) -> &Theory {
        self.theory
    }

    fn check_set(&self, m: usize) -> Result<()> {
        if m > self.theory.max_arity() {
            return Err(Error::AboveBound { arity: m, bound: self.theory.max_arity() });
        }
        Ok(())
    }

    /// A checked element of `T X`; `op` must belong to the theory.
    pub fn element(&self, op: OpTable, anchor: Vec<usize>, set_size: usize) -> Result<FreeElement> {
        self.check_set(set_size)?;
        if !self.theory.contains(&op)? {
            return Err(Error::ShapeMismatch(alloc::format!(
                "arity-{} operation is not in the theory",
                op.arity()
            )));
        }
        FreeElement::new(op, anchor, set_size)
    }

    /// `T X` for `|X| = m`, one element per operation of arity `m`, in normal form.
    pub fn apply(&self, m: usize) -> Result<Vec<FreeElement>> {
        self.check_set(m)?;
        let ident: Vec<usize> = (0..m).collect();
        Ok(self
            .theory
            .ops(m, &self.limits)?
            .iter()
            .map(|op| FreeElement { op: op.clone(), anchor: ident.clone(), set_size: m })
            .collect())
    }

    pub fn unit(&self, set_size: usize, x: usize) -> Result<FreeElement> {
        self.check_set(set_size)?;
        FreeElement::new(projection(1, 0, self.theory.carrier_size())?, vec![x], set_size)
    }

    /// `T f` for `f: X -> Y` given as a list of images.
    pub fn map(&self, f: &[usize], target_size: usize, e: &FreeElement) -> Result<FreeElement> {
        if f.len() != e.set_size {
            return Err(Error::ShapeMismatch(alloc::format!(
                "map has {} entries for a set of size {}",
                f.len(),
                e.set_size
            )));
        }
        self.check_set(target_size)?;
        let anchor = e.anchor.iter().map(|&a| f[a]).collect();
        Ok(canonical(&FreeElement::new(e.op.clone(), anchor, target_size)?))
    }

    /// Multiplication `T T X -> T X` for `|X| = set_size`. `outer` is an
    /// element over the index set of `inner`; each variable of `outer` is
    /// substituted by the inner element it is anchored at.
    pub fn mult(&self, outer: &FreeElement, inner: &[FreeElement], set_size: usize) -> Result<FreeElement> {
        if outer.set_size != inner.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "outer element ranges over {} inner elements, {} given",
                outer.set_size,
                inner.len()
            )));
        }
        if inner.iter().any(|e| e.set_size != set_size) {
            return Err(Error::ShapeMismatch(alloc::format!(
                "inner elements must live over a set of size {set_size}"
            )));
        }
        self.check_set(set_size)?;
        let used: Vec<&FreeElement> = outer.anchor.iter().map(|&i| &inner[i]).collect();
        let mut support: Vec<usize> = used.iter().flat_map(|e| e.anchor.iter().copied()).collect();
        support.sort_unstable();
        support.dedup();
        let inners = used.iter().map(|e| e.op_over(&support)).collect::<Result<Vec<_>>>()?;
        let op = crate::ops::superpose_at(&outer.op, &inners, support.len())?;
        Ok(canonical(&FreeElement { op, anchor: support, set_size }))
    }

    fn kock(
        &self,
        a: &FreeElement,
        b: &FreeElement,
        product: fn(&OpTable, &OpTable) -> Result<OpTable>,
    ) -> Result<FreeElement> {
        let w = b.set_size;
        let anchor: Vec<usize> =
            a.anchor.iter().flat_map(|&x| b.anchor.iter().map(move |&y| x * w + y)).collect();
        let op = product(&a.op, &b.op)?;
        FreeElement::new(op, anchor, a.set_size * w)?.normal_form()
    }

    /// `κ: T V × T W -> T (V × W)`, pairing `(v, w)` at `v * |W| + w`.
    pub fn kock_kron1(&self, a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
        self.kock(a, b, kron1)
    }

    pub fn kock_kron2(&self, a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
        self.kock(a, b, kron2)
    }

    /// Whether the two Kock–Kronecker products agree on `T V × T W` for all
    /// `|V|, |W| <= bound`.
    pub fn is_commutative(&self, bound: usize) -> Result<bool> {
        self.check_set(bound)?;
        kock_products_agree(self, self, bound)
    }
}

fn kock_products_agree(left: &FreeMonad<'_>, right: &FreeMonad<'_>, bound: usize) -> Result<bool> {
    for v in 0..=bound {
        let tv = left.apply(v)?;
        for w in 0..=bound {
            let tw = right.apply(w)?;
            for a in &tv {
                for b in &tw {
                    if left.kock_kron1(a, b)? != left.kock_kron2(a, b)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Whether the monads of the clones generated by `gens_a` and `gens_b` commute
/// inside the monad of the full theory: `κ(a, b) = κ̃(a, b)` for all
/// `a ∈ A V`, `b ∈ B W`, `|V|, |W| <= bound`.
pub fn monads_commute(
    gens_a: &[OpTable],
    gens_b: &[OpTable],
    s: usize,
    bound: usize,
    limits: &Limits,
) -> Result<bool> {
    let ta = clone_generate(gens_a, s, bound, limits)?;
    let tb = clone_generate(gens_b, s, bound, limits)?;
    // Both clones sit inside the full theory of `s`, where the products are
    // formed; their images there are the tables themselves.
    let ma = FreeMonad::with_limits(&ta, *limits);
    let mb = FreeMonad::with_limits(&tb, *limits);
    kock_products_agree(&ma, &mb, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::Rig;
    use crate::theory::projections_theory;

    fn join() -> OpTable {
        OpTable::new(2, 2, vec![0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let e = canonicalize(&join(), &[1, 1], 3).unwrap();
        assert_eq!(e.op(), &OpTable::identity(2).unwrap());
        assert_eq!(e.anchor(), &[1]);
        let p1 = projection(2, 1, 2).unwrap();
        let e = canonicalize(&p1, &[0, 2], 3).unwrap();
        assert_eq!(e.op(), &p1);
        assert_eq!(e.anchor(), &[0, 2]);
        let id = canonicalize(&OpTable::identity(2).unwrap(), &[2], 3).unwrap();
        assert_ne!(e, id);
        assert!(e.same_element(&id).unwrap());
        // Out of order anchors are sorted, with variables permuted to match.
        let e = canonicalize(&p1, &[2, 0], 3).unwrap();
        assert_eq!(e.anchor(), &[0, 2]);
        assert_eq!(e.op(), &projection(2, 0, 2).unwrap());
        assert!(canonicalize(&join(), &[0], 3).is_err());
        assert!(canonicalize(&join(), &[0, 3], 3).is_err());
    }

    #[test]
    fn free_semilattice() {
        let m = Rig::bool2().mat_theory(2).unwrap();
        let monad = FreeMonad::new(&m);
        assert_eq!(monad.apply(2).unwrap().len(), 4);
        let p = projections_theory(2, 2).unwrap();
        assert_eq!(FreeMonad::new(&p).apply(2).unwrap().len(), 2);
        let z3 = Rig::zn(3).unwrap().mat_theory(1).unwrap();
        assert_eq!(FreeMonad::new(&z3).apply(1).unwrap().len(), 3);
        assert!(matches!(monad.apply(3), Err(Error::AboveBound { .. })));
    }

    #[test]
    fn mult_substitutes() {
        let m = Rig::bool2().mat_theory(2).unwrap();
        let monad = FreeMonad::new(&m);
        let zero = monad.element(OpTable::constant(0, 2, 0).unwrap(), vec![], 1).unwrap();
        let a = monad.unit(1, 0).unwrap();
        let outer = monad.element(join(), vec![0, 1], 2).unwrap();
        let r = monad.mult(&outer, &[zero, a.clone()], 1).unwrap();
        assert!(r.same_element(&a).unwrap());
        let wrapped = monad.unit(1, 0).unwrap();
        assert_eq!(monad.mult(&wrapped, std::slice::from_ref(&a), 1).unwrap(), a);
        assert!(monad.mult(&wrapped, &[], 1).is_err());
    }

    #[test]
    fn map_along_constant_contracts() {
        let m = Rig::bool2().mat_theory(2).unwrap();
        let monad = FreeMonad::new(&m);
        let e = monad.element(join(), vec![0, 1], 2).unwrap();
        let r = monad.map(&[1, 1], 2, &e).unwrap();
        assert_eq!(r.op(), &OpTable::identity(2).unwrap());
        assert_eq!(r.anchor(), &[1]);
        assert!(monad.map(&[0], 2, &e).is_err());
    }

    #[test]
    fn kock_products() {
        let m = Rig::bool2().mat_theory(2).unwrap();
        let monad = FreeMonad::new(&m);
        let u = monad.kock_kron1(&monad.unit(2, 1).unwrap(), &monad.unit(2, 0).unwrap()).unwrap();
        assert!(u.same_element(&FreeElement::new(OpTable::identity(2).unwrap(), vec![2], 4).unwrap()).unwrap());
        let a = monad.element(join(), vec![0, 1], 2).unwrap();
        let b = monad.unit(1, 0).unwrap();
        let k = monad.kock_kron1(&a, &b).unwrap();
        assert!(k.same_element(&FreeElement::new(join(), vec![0, 1], 2).unwrap()).unwrap());
        assert!(monad.is_commutative(2).unwrap());
    }

    #[test]
    fn boolean_clone_monad_is_not_commutative() {
        let t = clone_generate(
            &[OpTable::new(2, 2, vec![0, 0, 0, 1]).unwrap(), OpTable::new(1, 2, vec![1, 0]).unwrap()],
            2,
            2,
            &Limits::default(),
        )
        .unwrap();
        assert!(!FreeMonad::new(&t).is_commutative(2).unwrap());
    }

    #[test]
    fn commuting_monads() {
        let mat = Rig::bool2().mat_theory(2).unwrap();
        let aff = Rig::bool2().mat_aff_theory(2).unwrap();
        let l = Limits::default();
        assert!(monads_commute(mat.generators().unwrap(), aff.generators().unwrap(), 2, 2, &l).unwrap());
    }
}
