//! Finite rings and modules: endomorphism rings of finite abelian groups,
//! centralizers, module commutants and double centralizers.
//!
//! Ring multiplication in an endomorphism ring is textual composition:
//! `(f * g)(x) = f(g(x))`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rig::Rig;
use crate::{Error, Result};

/// Groups up to this size may have their endomorphisms enumerated directly.
pub const END_ENUMERATION_BOUND: usize = 16;

/// Largest endomorphism ring that will be built.
const MAX_END_SIZE: usize = 4096;

/// A finite abelian group given by its addition table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    size: usize,
    add: Vec<usize>,
    zero: usize,
    labels: Option<Vec<String>>,
}

impl FinAbGroup {
    /// Builds a group from a row-major addition table, checking the abelian
    /// group axioms exhaustively.
    pub fn new(add: &[Vec<usize>], zero: usize) -> Result<Self> {
        let size = add.len();
        if size == 0 || add.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidGroup(String::from("addition table is not square")));
        }
        let flat: Vec<usize> = add.iter().flatten().copied().collect();
        if flat.iter().any(|&v| v >= size) || zero >= size {
            return Err(Error::InvalidGroup(String::from("entry out of range")));
        }
        let g = FinAbGroup { size, add: flat, zero, labels: None };
        g.check()?;
        Ok(g)
    }

    fn from_fn(size: usize, add: impl Fn(usize, usize) -> usize, zero: usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..size).map(|a| (0..size).map(|b| add(a, b)).collect()).collect();
        FinAbGroup::new(&rows, zero)
    }

    fn check(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(Error::InvalidGroup(format!("zero is not an identity at {a}")));
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return Err(Error::InvalidGroup(format!("{a} has no inverse")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::InvalidGroup(format!("not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zn(n: usize) -> Result<Self> {
        FinAbGroup::from_fn(n, |a, b| (a + b) % n, 0)
    }

    /// Direct product; the element `(a_0, a_1, ..)` sits at `a_0 + |G_0| a_1 + ..`.
    pub fn product(factors: &[FinAbGroup]) -> Result<Self> {
        let sizes: Vec<usize> = factors.iter().map(|g| g.size).collect();
        let size: usize = sizes.iter().product();
        let split = |mut x: usize| -> Vec<usize> {
            sizes
                .iter()
                .map(|&s| {
                    let d = x % s;
                    x /= s;
                    d
                })
                .collect()
        };
        FinAbGroup::from_fn(
            size,
            |a, b| {
                let (xa, xb) = (split(a), split(b));
                factors
                    .iter()
                    .enumerate()
                    .rev()
                    .fold(0, |acc, (i, g)| acc * g.size + g.add(xa[i], xb[i]))
            },
            0,
        )
    }

    /// `(Z_p)^k`.
    pub fn elementary(p: usize, k: usize) -> Result<Self> {
        let z = FinAbGroup::zn(p)?;
        FinAbGroup::product(&vec![z; k])
    }

    /// Built-in groups: `Z2`, `Z4`, `Z6`, `Zn`, `Z2xZ2`, `Z2^3`, `Zp^k`.
    pub fn builtin(name: &str) -> Option<Self> {
        if name == "Z2xZ2" {
            return FinAbGroup::elementary(2, 2).ok();
        }
        let rest = name.strip_prefix('Z')?;
        match rest.split_once('^') {
            Some((p, k)) => {
                let (p, k): (usize, usize) = (p.parse().ok()?, k.parse().ok()?);
                if p < 2 || k > 8 {
                    return None;
                }
                FinAbGroup::elementary(p, k).ok()
            }
            None => {
                let n: usize = rest.parse().ok()?;
                (1..=256).contains(&n).then(|| FinAbGroup::zn(n).ok()).flatten()
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size).find(|&b| self.add(a, b) == self.zero).expect("group has inverses")
    }

    /// `k * a` by repeated addition.
    pub fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    fn order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.size];
        member[self.zero] = true;
        let mut stack = vec![self.zero];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    /// A generating set picked greedily in index order; for an elementary
    /// abelian group it is a basis.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = self.span(&gens);
        while let Some(x) = (0..self.size).find(|&x| !member[x]) {
            gens.push(x);
            member = self.span(&gens);
        }
        gens
    }

    /// `Some((p, k))` when the group is `(Z_p)^k` for a prime `p`.
    pub fn elementary_rank(&self) -> Option<(usize, usize)> {
        if self.size == 1 {
            return Some((2, 0));
        }
        let p = self.order((0..self.size).find(|&x| x != self.zero)?);
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || (0..self.size).any(|x| x != self.zero && self.order(x) != p) {
            return None;
        }
        let mut k = 0;
        let mut n = self.size;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        (n == 1).then_some((p, k))
    }

    /// Whether `f` (a list of images) is an additive endomorphism.
    pub fn is_endomorphism(&self, f: &[usize]) -> bool {
        f.len() == self.size
            && f.iter().all(|&y| y < self.size)
            && (0..self.size)
                .all(|a| (0..self.size).all(|b| f[self.add(a, b)] == self.add(f[a], f[b])))
    }
}

/// A finite ring: a rig whose additive monoid is a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinRing {
    rig: Rig,
}

impl FinRing {
    pub fn new(rig: Rig) -> Result<Self> {
        if let Some(v) = rig.check_axioms().first() {
            return Err(Error::InvalidRig(format!("{v}")));
        }
        let ring = FinRing { rig };
        for a in 0..ring.size() {
            if !(0..ring.size()).any(|b| ring.add(a, b) == ring.zero()) {
                return Err(Error::InvalidRig(format!("{a} has no additive inverse")));
            }
        }
        Ok(ring)
    }

    /// Wraps tables known to form a ring by construction.
    fn trusted(rig: Rig) -> Self {
        FinRing { rig }
    }

    pub fn zn(n: usize) -> Result<Self> {
        FinRing::new(Rig::zn(n)?)
    }

    /// Built-in rings: `Zn`, `F4`, `UT2_F2`, `M2_F2`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "M2_F2" => Some(end_ring(&FinAbGroup::elementary(2, 2).ok()?).ok()?.ring),
            "bool2" => None,
            _ => FinRing::new(Rig::builtin(name)?).ok(),
        }
    }

    pub fn rig(&self) -> &Rig {
        &self.rig
    }

    pub fn size(&self) -> usize {
        self.rig.size()
    }

    pub fn zero(&self) -> usize {
        self.rig.zero()
    }

    pub fn one(&self) -> usize {
        self.rig.one()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.rig.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.rig.mul(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.size()).find(|&b| self.add(a, b) == self.zero()).expect("ring has negatives")
    }

    pub fn is_commutative(&self) -> bool {
        self.rig.is_commutative()
    }

    pub fn opposite(&self) -> FinRing {
        FinRing::trusted(self.rig.opposite())
    }

    pub fn additive_group(&self) -> FinAbGroup {
        FinAbGroup { size: self.size(), add: self.rig.add_table().concat(), zero: self.zero(), labels: None }
    }

    pub fn whole(&self) -> Subring {
        Subring { elements: (0..self.size()).collect() }
    }

    /// The center, i.e. the centralizer of the whole ring.
    pub fn center(&self) -> Result<Subring> {
        centralizer(self, &self.whole().elements)
    }
}

/// How [`end_ring_with`] finds the endomorphisms of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EndMethod {
    /// Structural for elementary abelian groups, enumeration otherwise.
    #[default]
    Auto,
    /// `(Z_p)^k`: images of a basis can be chosen freely.
    Structural,
    /// Images of a generating set are enumerated and extended along the
    /// Cayley graph, rejecting inconsistent choices.
    Enumeration,
}

/// The ring of additive endomorphisms of a finite abelian group, with each
/// ring element's underlying map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndRing {
    pub group: FinAbGroup,
    /// Sorted; ring element `i` is `maps[i]`.
    pub maps: Vec<Vec<usize>>,
    pub ring: FinRing,
}

impl EndRing {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }

    pub fn map(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    /// The subring of maps sending each chosen generator into its own cyclic
    /// subgroup; for `(Z_p)^k` with its greedy basis, the diagonal matrices.
    pub fn diagonal(&self) -> Result<Subring> {
        let basis = self.group.generating_set();
        let spans: Vec<Vec<bool>> = basis.iter().map(|&b| self.group.span(&[b])).collect();
        let elements = (0..self.maps.len())
            .filter(|&i| basis.iter().zip(&spans).all(|(&b, span)| span[self.maps[i][b]]))
            .collect();
        Subring::checked(&self.ring, elements)
    }

    /// The maps `x -> k x` for integers `k`.
    pub fn scalars(&self) -> Result<Subring> {
        Ok(generated_subring(&self.ring, &[]))
    }
}

pub fn end_ring(group: &FinAbGroup) -> Result<EndRing> {
    end_ring_with(group, EndMethod::Auto)
}

pub fn end_ring_with(group: &FinAbGroup, method: EndMethod) -> Result<EndRing> {
    let maps = match method {
        EndMethod::Structural => {
            let (p, _) = group.elementary_rank().ok_or(Error::InvalidGroup(String::from(
                "structural endomorphisms need an elementary abelian group",
            )))?;
            structural_maps(group, p)?
        }
        EndMethod::Enumeration => enumerated_maps(group)?,
        EndMethod::Auto => match group.elementary_rank() {
            Some((p, _)) => structural_maps(group, p)?,
            None => enumerated_maps(group)?,
        },
    };
    Ok(ring_of_maps(group.clone(), maps))
}

fn choice_count(group: &FinAbGroup, k: usize) -> Result<usize> {
    u32::try_from(k)
        .ok()
        .and_then(|k| group.size.checked_pow(k))
        .filter(|&c| c <= MAX_END_SIZE)
        .ok_or(Error::AboveBound { arity: group.size, bound: END_ENUMERATION_BOUND })
}

fn structural_maps(group: &FinAbGroup, p: usize) -> Result<Vec<Vec<usize>>> {
    let basis = group.generating_set();
    let k = basis.len();
    choice_count(group, k)?;
    // Coordinates of each element in the basis.
    let mut coords = vec![Vec::new(); group.size];
    let mut c = vec![0usize; k];
    loop {
        let x = basis.iter().zip(&c).fold(group.zero, |acc, (&b, &ci)| group.add(acc, group.times(ci, b)));
        coords[x] = c.clone();
        if !crate::tuples::advance_index(&mut c, p) {
            break;
        }
    }
    let mut maps = Vec::new();
    let mut images = vec![0usize; k];
    loop {
        let f: Vec<usize> = coords
            .iter()
            .map(|cx| {
                cx.iter().zip(&images).fold(group.zero, |acc, (&ci, &img)| group.add(acc, group.times(ci, img)))
            })
            .collect();
        maps.push(f);
        if !crate::tuples::advance_index(&mut images, group.size) {
            break;
        }
    }
    maps.sort();
    Ok(maps)
}

fn enumerated_maps(group: &FinAbGroup) -> Result<Vec<Vec<usize>>> {
    if group.size > END_ENUMERATION_BOUND {
        return Err(Error::AboveBound { arity: group.size, bound: END_ENUMERATION_BOUND });
    }
    let gens = group.generating_set();
    choice_count(group, gens.len())?;
    let mut maps = Vec::new();
    let mut images = vec![0usize; gens.len()];
    'choice: loop {
        let mut f: Vec<Option<usize>> = vec![None; group.size];
        f[group.zero] = Some(group.zero);
        let mut stack = vec![group.zero];
        while let Some(x) = stack.pop() {
            let fx = f[x].expect("visited");
            for (&g, &img) in gens.iter().zip(&images) {
                let y = group.add(x, g);
                let fy = group.add(fx, img);
                match f[y] {
                    Some(v) if v != fy => {
                        if !crate::tuples::advance_index(&mut images, group.size) {
                            break 'choice;
                        }
                        continue 'choice;
                    }
                    Some(_) => {}
                    None => {
                        f[y] = Some(fy);
                        stack.push(y);
                    }
                }
            }
        }
        maps.push(f.into_iter().map(|v| v.expect("generators span the group")).collect());
        if !crate::tuples::advance_index(&mut images, group.size) {
            break;
        }
    }
    maps.sort();
    Ok(maps)
}

fn ring_of_maps(group: FinAbGroup, maps: Vec<Vec<usize>>) -> EndRing {
    let n = maps.len();
    let find = |m: &[usize]| maps.binary_search_by(|x| x.as_slice().cmp(m)).expect("closed under operations");
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    let mut buf = vec![0; group.size];
    for a in 0..n {
        for b in 0..n {
            for x in 0..group.size {
                buf[x] = group.add(maps[a][x], maps[b][x]);
            }
            add[a][b] = find(&buf);
            for x in 0..group.size {
                buf[x] = maps[a][maps[b][x]];
            }
            mul[a][b] = find(&buf);
        }
    }
    let zero = find(&vec![group.zero; group.size]);
    let one = find(&(0..group.size).collect::<Vec<_>>());
    let rig = Rig::new(&add, &mul, zero, one).expect("square tables");
    EndRing { group, maps, ring: FinRing::trusted(rig) }
}

/// A subring, as a sorted set of element indices of an ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subring {
    elements: Vec<usize>,
}

impl Subring {
    /// Checks that `elements` contains `0` and `1` and is closed under
    /// addition, negation and multiplication.
    pub fn checked(ring: &FinRing, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let s = Subring { elements };
        if !s.is_subring_of(ring) {
            return Err(Error::InvariantViolation(String::from("not a unital subring")));
        }
        Ok(s)
    }

    pub fn is_subring_of(&self, ring: &FinRing) -> bool {
        let has = |x: usize| self.contains(x);
        has(ring.zero())
            && has(ring.one())
            && self.elements.iter().all(|&a| {
                has(ring.neg(a))
                    && self.elements.iter().all(|&b| has(ring.add(a, b)) && has(ring.mul(a, b)))
            })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_commutative(&self, ring: &FinRing) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| ring.mul(a, b) == ring.mul(b, a)))
    }

    /// The subring as a ring in its own right, elements renumbered in order.
    pub fn to_ring(&self, ring: &FinRing) -> FinRing {
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed");
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            self.elements.iter().map(|&a| self.elements.iter().map(|&b| pos(f(a, b))).collect()).collect()
        };
        let rig = Rig::new(
            &table(&|a, b| ring.add(a, b)),
            &table(&|a, b| ring.mul(a, b)),
            pos(ring.zero()),
            pos(ring.one()),
        )
        .expect("square tables");
        FinRing::trusted(rig)
    }
}

/// The smallest subring containing `gens`.
pub fn generated_subring(ring: &FinRing, gens: &[usize]) -> Subring {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    set.insert(ring.zero());
    set.insert(ring.one());
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let before = set.len();
        for &a in &cur {
            set.insert(ring.neg(a));
            for &b in &cur {
                set.insert(ring.add(a, b));
                set.insert(ring.mul(a, b));
            }
        }
        if set.len() == before {
            return Subring { elements: set.into_iter().collect() };
        }
    }
}

/// `{ u : u g = g u for all g in subset }`, verified to be a unital subring.
pub fn centralizer(ring: &FinRing, subset: &[usize]) -> Result<Subring> {
    if let Some(&bad) = subset.iter().find(|&&g| g >= ring.size()) {
        return Err(Error::ElementOutOfRange { value: bad, carrier: ring.size() });
    }
    let elements = (0..ring.size())
        .filter(|&u| subset.iter().all(|&g| ring.mul(u, g) == ring.mul(g, u)))
        .collect();
    Subring::checked(ring, elements)
}

/// A subring is maximal commutative iff it is its own centralizer.
pub fn is_maximal_commutative(ring: &FinRing, sub: &Subring) -> Result<bool> {
    Ok(&centralizer(ring, sub.elements())? == sub)
}

/// Maximality decided directly: `sub` is commutative and adjoining any
/// further element yields a noncommutative subring.
pub fn is_maximal_commutative_by_search(ring: &FinRing, sub: &Subring) -> bool {
    sub.is_commutative(ring)
        && (0..ring.size()).filter(|&u| !sub.contains(u)).all(|u| {
            let mut gens = sub.elements.clone();
            gens.push(u);
            !generated_subring(ring, &gens).is_commutative(ring)
        })
}

/// Every unital subring, in canonical order.
pub fn subrings(ring: &FinRing) -> Vec<Subring> {
    let mut seen: BTreeSet<Subring> = BTreeSet::new();
    let mut stack = vec![generated_subring(ring, &[])];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for u in (0..ring.size()).filter(|&u| !s.contains(u)) {
            let mut gens = s.elements.clone();
            gens.push(u);
            let t = generated_subring(ring, &gens);
            if !seen.contains(&t) {
                stack.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// A left module: a ring acting on a finite abelian group by endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    ring: FinRing,
    group: FinAbGroup,
    action: Vec<Vec<usize>>,
}

impl ModuleAction {
    /// Checks that each `action[r]` is additive and that `r -> action[r]` is
    /// a unital ring homomorphism into the endomorphisms of `group`.
    pub fn new(ring: FinRing, group: FinAbGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != ring.size() {
            return Err(Error::InvalidAction(format!(
                "{} endomorphisms for a ring of size {}",
                action.len(),
                ring.size()
            )));
        }
        for (r, f) in action.iter().enumerate() {
            if !group.is_endomorphism(f) {
                return Err(Error::InvalidAction(format!("action of {r} is not additive")));
            }
        }
        let m = group.size();
        if action[ring.one()] != (0..m).collect::<Vec<_>>() {
            return Err(Error::InvalidAction(String::from("1 does not act as the identity")));
        }
        for r in 0..ring.size() {
            for s in 0..ring.size() {
                let sum = &action[ring.add(r, s)];
                let prod = &action[ring.mul(r, s)];
                for x in 0..m {
                    if sum[x] != group.add(action[r][x], action[s][x]) {
                        return Err(Error::InvalidAction(format!("({r}+{s}) does not act additively")));
                    }
                    if prod[x] != action[r][action[s][x]] {
                        return Err(Error::InvalidAction(format!("({r}*{s}) does not act as a composite")));
                    }
                }
            }
        }
        Ok(ModuleAction { ring, group, action })
    }

    /// `R` acting on its own additive group by left multiplication.
    pub fn regular(ring: &FinRing) -> Result<Self> {
        let action = (0..ring.size()).map(|r| (0..ring.size()).map(|x| ring.mul(r, x)).collect()).collect();
        ModuleAction::new(ring.clone(), ring.additive_group(), action)
    }

    /// `Z_n` acting on a group by integer multiples.
    pub fn integer_multiples(n: usize, group: FinAbGroup) -> Result<Self> {
        let ring = FinRing::zn(n)?;
        let action = (0..n).map(|k| (0..group.size()).map(|x| group.times(k, x)).collect()).collect();
        ModuleAction::new(ring, group, action)
    }

    /// An endomorphism ring acting on its group.
    pub fn tautological(end: &EndRing) -> Result<Self> {
        ModuleAction::new(end.ring.clone(), end.group.clone(), end.maps.clone())
    }

    pub fn ring(&self) -> &FinRing {
        &self.ring
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn is_faithful(&self) -> bool {
        let distinct: BTreeSet<&Vec<usize>> = self.action.iter().collect();
        distinct.len() == self.action.len()
    }

    /// The image of the action inside the endomorphism ring.
    pub fn image(&self, end: &EndRing) -> Result<Subring> {
        let elements = self
            .action
            .iter()
            .map(|f| end.index_of(f).ok_or(Error::InvalidAction(String::from("map is not an endomorphism"))))
            .collect::<Result<Vec<_>>>()?;
        Subring::checked(&end.ring, elements)
    }
}

/// `End_R(M)` as the centralizer of the action's image in `End_Z(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCommutant {
    pub end: EndRing,
    pub image: Subring,
    pub commutant: Subring,
}

pub fn module_commutant(action: &ModuleAction) -> Result<ModuleCommutant> {
    let end = end_ring(action.group())?;
    let image = action.image(&end)?;
    let commutant = centralizer(&end.ring, image.elements())?;
    Ok(ModuleCommutant { end, image, commutant })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCentralizer {
    pub commutant: ModuleCommutant,
    pub bicommutant: Subring,
    pub faithful: bool,
}

impl DoubleCentralizer {
    /// The action is faithful and its image equals its double centralizer.
    pub fn has_property(&self) -> bool {
        self.faithful && self.bicommutant == self.commutant.image
    }
}

pub fn double_centralizer(action: &ModuleAction) -> Result<DoubleCentralizer> {
    let commutant = module_commutant(action)?;
    let bicommutant = centralizer(&commutant.end.ring, commutant.commutant.elements())?;
    Ok(DoubleCentralizer { commutant, bicommutant, faithful: action.is_faithful() })
}

pub fn has_double_centralizer_property(action: &ModuleAction) -> Result<bool> {
    Ok(double_centralizer(action)?.has_property())
}

/// The regular representation's commutant compared with right multiplications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCommutant {
    /// Centralizer of the left multiplications in `End_Z(R)`.
    pub centralizer: Subring,
    /// Image of the left multiplications.
    pub left: Subring,
    /// `right[r]` is the index of `x -> x r` in `End_Z(R)`.
    pub right: Vec<usize>,
    /// The centralizer is exactly the set of right multiplications.
    pub centralizer_is_right: bool,
    /// `r -> (x -> x r)` is injective and reverses multiplication.
    pub anti_isomorphism: bool,
    /// Double centralizer of the left multiplications equals them.
    pub saturated: bool,
    /// Centralizer of the left multiplications equals them.
    pub balanced: bool,
}

impl RegularCommutant {
    pub fn holds(&self) -> bool {
        self.centralizer_is_right && self.anti_isomorphism
    }
}

pub fn regular_commutant(ring: &FinRing) -> Result<RegularCommutant> {
    let action = ModuleAction::regular(ring)?;
    let dc = double_centralizer(&action)?;
    let end = &dc.commutant.end;
    let n = ring.size();
    let right = (0..n)
        .map(|r| {
            let f: Vec<usize> = (0..n).map(|x| ring.mul(x, r)).collect();
            end.index_of(&f).ok_or(Error::InvariantViolation(String::from(
                "right multiplication is not additive",
            )))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut right_set = right.clone();
    right_set.sort_unstable();
    right_set.dedup();
    let injective = right_set.len() == n;
    let reverses = (0..n).all(|r| {
        (0..n).all(|s| right[ring.mul(r, s)] == end.ring.mul(right[s], right[r]))
    });
    let centralizer = dc.commutant.commutant.clone();
    Ok(RegularCommutant {
        centralizer_is_right: centralizer.elements() == right_set.as_slice(),
        anti_isomorphism: injective && reverses,
        saturated: dc.bicommutant == dc.commutant.image,
        balanced: centralizer == dc.commutant.image,
        left: dc.commutant.image.clone(),
        centralizer,
        right,
    })
}

pub fn regular_commutant_is_opposite(ring: &FinRing) -> Result<bool> {
    Ok(regular_commutant(ring)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> EndRing {
        end_ring(&FinAbGroup::elementary(2, 2).unwrap()).unwrap()
    }

    #[test]
    fn group_construction() {
        assert!(FinAbGroup::new(&[vec![0, 1], vec![1, 1]], 0).is_err());
        assert_eq!(FinAbGroup::builtin("Z2^3").unwrap().size(), 8);
        assert_eq!(FinAbGroup::builtin("Z6").unwrap().elementary_rank(), None);
        assert_eq!(FinAbGroup::builtin("Z4").unwrap().elementary_rank(), None);
        assert_eq!(FinAbGroup::builtin("Z2xZ2").unwrap().elementary_rank(), Some((2, 2)));
        assert_eq!(FinAbGroup::zn(3).unwrap().elementary_rank(), Some((3, 1)));
        assert_eq!(FinAbGroup::zn(6).unwrap().generating_set(), vec![1]);
    }

    #[test]
    fn endomorphism_counts() {
        assert_eq!(m2().maps.len(), 16);
        assert_eq!(end_ring(&FinAbGroup::zn(4).unwrap()).unwrap().maps.len(), 4);
        assert_eq!(end_ring(&FinAbGroup::zn(2).unwrap()).unwrap().maps.len(), 2);
        assert_eq!(end_ring(&FinAbGroup::zn(6).unwrap()).unwrap().maps.len(), 6);
        let g = FinAbGroup::builtin("Z2^3").unwrap();
        let a = end_ring_with(&g, EndMethod::Structural).unwrap();
        let b = end_ring_with(&g, EndMethod::Enumeration).unwrap();
        assert_eq!(a.maps.len(), 512);
        assert_eq!(a.maps, b.maps);
        assert!(end_ring_with(&FinAbGroup::zn(4).unwrap(), EndMethod::Structural).is_err());
        assert!(end_ring_with(&FinAbGroup::zn(17).unwrap(), EndMethod::Enumeration).is_err());
    }

    #[test]
    fn m2_is_a_ring_of_matrices() {
        let e = m2();
        assert!(FinRing::new(e.ring.rig().clone()).is_ok());
        assert!(!e.ring.is_commutative());
        for f in &e.maps {
            assert!(e.group.is_endomorphism(f));
        }
    }

    #[test]
    fn centralizers_in_m2() {
        let e = m2();
        let scalars = e.scalars().unwrap();
        assert_eq!(scalars.len(), 2);
        assert_eq!(centralizer(&e.ring, scalars.elements()).unwrap().len(), 16);
        assert_eq!(e.ring.center().unwrap(), scalars);
        let z4 = FinRing::zn(4).unwrap();
        assert_eq!(z4.center().unwrap(), z4.whole());
    }

    #[test]
    fn module_commutants() {
        let z4 = FinRing::zn(4).unwrap();
        let reg = ModuleAction::regular(&z4).unwrap();
        assert_eq!(module_commutant(&reg).unwrap().commutant.len(), 4);

        let e = m2();
        let taut = ModuleAction::tautological(&e).unwrap();
        let dc = double_centralizer(&taut).unwrap();
        assert_eq!(dc.commutant.commutant, e.scalars().unwrap());
        assert_eq!(dc.bicommutant.len(), 16);
        assert!(dc.has_property());

        let scal = ModuleAction::integer_multiples(2, FinAbGroup::elementary(2, 2).unwrap()).unwrap();
        let dc = double_centralizer(&scal).unwrap();
        assert_eq!(dc.commutant.commutant.len(), 16);
        assert_eq!(dc.bicommutant.len(), 2);
        assert!(dc.has_property());

        let triv = ModuleAction::integer_multiples(2, FinAbGroup::zn(2).unwrap()).unwrap();
        assert_eq!(module_commutant(&triv).unwrap().commutant.len(), 2);
    }

    #[test]
    fn non_faithful_action_fails_property() {
        // Z4 acting on Z2 through reduction mod 2.
        let a = ModuleAction::integer_multiples(4, FinAbGroup::zn(2).unwrap()).unwrap();
        assert!(!a.is_faithful());
        assert!(!has_double_centralizer_property(&a).unwrap());
    }

    #[test]
    fn invalid_actions() {
        let z2 = FinRing::zn(2).unwrap();
        let g = FinAbGroup::zn(2).unwrap();
        assert!(ModuleAction::new(z2.clone(), g.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(ModuleAction::new(z2.clone(), g.clone(), vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(ModuleAction::new(z2, g, vec![vec![0, 0]]).is_err());
        assert!(ModuleAction::integer_multiples(3, FinAbGroup::zn(2).unwrap()).is_err());
    }

    #[test]
    fn regular_commutants() {
        let z4 = regular_commutant(&FinRing::zn(4).unwrap()).unwrap();
        assert!(z4.holds());
        assert!(z4.balanced);
        let ut = regular_commutant(&FinRing::builtin("UT2_F2").unwrap()).unwrap();
        assert!(ut.holds());
        assert_eq!(ut.centralizer.len(), 8);
        assert!(ut.saturated);
        assert!(!ut.balanced);
    }

    #[test]
    fn maximal_commutative_subrings() {
        let e = m2();
        let diag = e.diagonal().unwrap();
        assert_eq!(diag.len(), 4);
        assert!(is_maximal_commutative(&e.ring, &diag).unwrap());
        assert!(is_maximal_commutative_by_search(&e.ring, &diag));
        let scalars = e.scalars().unwrap();
        assert!(!is_maximal_commutative(&e.ring, &scalars).unwrap());
        assert!(!is_maximal_commutative_by_search(&e.ring, &scalars));
        let z4 = FinRing::zn(4).unwrap();
        assert!(is_maximal_commutative(&z4, &z4.whole()).unwrap());
    }

    #[test]
    fn subring_to_ring() {
        let e = m2();
        let diag = e.diagonal().unwrap().to_ring(&e.ring);
        assert_eq!(diag.size(), 4);
        assert!(diag.is_commutative());
        assert!(FinRing::new(diag.rig().clone()).is_ok());
    }
}
