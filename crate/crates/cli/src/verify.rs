//! The built-in example suite behind `verify-examples`.
//!
//! Each check recomputes one worked example from builtins and compares it
//! against known values or an independent route (brute-force enumeration,
//! the defining formula, or the other side of a bridge theorem). Builtins are
//! taken from the [`Registry`], so a corrupted entry shows up as a failure
//! with a diff.

use commutant_core::commutant::{commutant_of, commutant_slice, commutant_with, Strategy};
use commutant_core::monad::{canonicalize, monads_commute, FreeElement, FreeMonad};
use commutant_core::ring::{
    centralizer, double_centralizer, end_ring, is_maximal_commutative, is_maximal_commutative_by_search,
    regular_commutant, ModuleAction,
};
use commutant_core::theory::CommutativityMode;
use commutant_core::{
    clone_generate, commutant, commutes, kron1, kron2, theories_commute, transpose_vars, Limits,
    OpTable, RMatrix, Theory,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::registry::Registry;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

type Outcome = Result<String, String>;
type CheckFn = fn(&Registry, &Limits) -> Outcome;

pub const CHECKS: [(&str, CheckFn); 12] = [
    ("kronecker-bridge", kronecker_bridge),
    ("rig-commutativity", rig_commutativity),
    ("mat2-balanced", mat2_balanced),
    ("left-right-modules", left_right_modules),
    ("affine-commutant", affine_commutant),
    ("empty-generators", empty_generators),
    ("galois-connection", galois_connection),
    ("symmetry-transposition", symmetry_transposition),
    ("theory-monad-bridge", theory_monad_bridge),
    ("free-elements", free_elements),
    ("ring-instances", ring_instances),
    ("backtracking-vs-exhaustive", oracle_equivalence),
];

/// Runs the checks whose names contain `filter`, in order, on `threads`
/// worker threads (the report order does not depend on the thread count).
pub fn run(filter: Option<&str>, registry: &Registry, limits: &Limits, threads: usize) -> Report {
    let selected: Vec<&(&str, CheckFn)> =
        CHECKS.iter().filter(|(name, _)| filter.is_none_or(|f| name.contains(f))).collect();
    let exec = || -> Vec<CheckReport> {
        selected
            .par_iter()
            .map(|(name, check)| {
                let outcome = std::panic::catch_unwind(|| check(registry, limits))
                    .unwrap_or_else(|_| Err("panicked".to_string()));
                let (status, details) = match outcome {
                    Ok(d) => (Status::Pass, d),
                    Err(d) => (Status::Fail, d),
                };
                CheckReport { name: name.to_string(), status, details }
            })
            .collect()
    };
    let checks = match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(exec),
        Err(_) => exec(),
    };
    Report { checks }
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn tables(ops: &[OpTable]) -> Vec<Vec<u8>> {
    ops.iter().map(|o| o.table().to_vec()).collect()
}

/// Describes how two theories differ up to arity `n`, or `None` if equal.
pub fn slice_diff(expected: &Theory, got: &Theory, n: usize, limits: &Limits) -> Option<String> {
    let mut parts = Vec::new();
    for a in 0..=n {
        let (want, have) = match (expected.ops(a, limits), got.ops(a, limits)) {
            (Ok(w), Ok(h)) => (tables(&w), tables(&h)),
            (Err(err), _) | (_, Err(err)) => return Some(format!("arity {a}: {err}")),
        };
        if want != have {
            let missing: Vec<&Vec<u8>> = want.iter().filter(|t| !have.contains(t)).collect();
            let extra: Vec<&Vec<u8>> = have.iter().filter(|t| !want.contains(t)).collect();
            parts.push(format!(
                "arity {a}: expected {} ops, got {}; missing {missing:?}; extra {extra:?}",
                want.len(),
                have.len()
            ));
        }
    }
    (!parts.is_empty()).then(|| parts.join("; "))
}

fn same(expected: &Theory, got: &Theory, n: usize, limits: &Limits, what: &str) -> Result<(), String> {
    match slice_diff(expected, got, n, limits) {
        None => Ok(()),
        Some(d) => Err(format!("{what}: {d}")),
    }
}

fn counts_are(t: &Theory, want: &[u128], what: &str) -> Result<(), String> {
    ensure(t.arity_counts() == want, format!("{what}: counts {:?}, expected {want:?}", t.arity_counts()))
}

fn every_op(s: usize, n: usize) -> Vec<OpTable> {
    let len = s.pow(n as u32);
    let total = s.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let table = (0..len)
                .map(|_| {
                    let d = (code % s) as u8;
                    code /= s;
                    d
                })
                .collect();
            OpTable::new(n, s, table).expect("valid table")
        })
        .collect()
}

/// Every `stride`-th operation of arity `n`, starting from `offset`.
fn strided_ops(s: usize, n: usize, stride: usize, offset: usize) -> Vec<OpTable> {
    let all = every_op(s, n);
    all.into_iter().skip(offset).step_by(stride).collect()
}

fn exhaustive_commutant(gens: &[OpTable], s: usize, n: usize, limits: &Limits) -> Result<Vec<OpTable>, String> {
    commutant_slice(gens, s, n, Strategy::Exhaustive, limits).map_err(e)
}

fn kronecker_bridge(reg: &Registry, _: &Limits) -> Outcome {
    let mut pairs = 0;
    for name in ["Z4", "bool2"] {
        let rig = reg.rig(name).map_err(e)?;
        let r = rig.size();
        let rows: Vec<Vec<usize>> = (1..=2usize)
            .flat_map(|n| {
                (0..r.pow(n as u32)).map(move |mut c| {
                    (0..n)
                        .map(|_| {
                            let d = c % r;
                            c /= r;
                            d
                        })
                        .collect()
                })
            })
            .collect();
        for rho in &rows {
            for sigma in &rows {
                let m = rig
                    .classical_kronecker(&RMatrix::row_vector(sigma), &RMatrix::row_vector(rho))
                    .map_err(e)?;
                let lhs = rig.op_of_row(m.row(0)).map_err(e)?;
                let rhs = kron1(&rig.op_of_row(rho).map_err(e)?, &rig.op_of_row(sigma).map_err(e)?).map_err(e)?;
                ensure(lhs == rhs, format!("{name}: rows {rho:?} and {sigma:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} row pairs over Z4 and bool2"))
}

fn rig_commutativity(reg: &Registry, limits: &Limits) -> Outcome {
    for (name, expected) in [("Z2", true), ("Z3", true), ("Z4", true), ("bool2", true), ("F4", true), ("UT2_F2", false)] {
        let t = reg.theory(&format!("mat:{name}"), 2).map_err(e)?;
        let got = t.is_commutative(CommutativityMode::Generators, limits).map_err(e)?;
        let rig_side = reg.rig(name).map_err(e)?.is_commutative();
        ensure(got == expected && rig_side == expected, format!("{name}: theory {got}, rig {rig_side}"))?;
    }
    Ok("Mat_R commutative exactly for the commutative rigs".to_string())
}

fn mat2_balanced(reg: &Registry, limits: &Limits) -> Outcome {
    let join = OpTable::new(2, 2, vec![0, 1, 1, 1]).map_err(e)?;
    let zero = OpTable::constant(0, 2, 0).map_err(e)?;
    let c = commutant(&[join, zero], 2, 3, None, limits).map_err(e)?;
    counts_are(&c, &[1, 2, 4, 8], "commutant of {or, 0}")?;
    let mat = reg.theory("mat:bool2", 3).map_err(e)?;
    same(&c, &mat, 3, limits, "Mat_2 vs commutant of {or, 0}")?;
    let cc = commutant_of(&mat, None, limits).map_err(e)?;
    same(&mat, &cc, 3, limits, "commutant of Mat_2")?;
    Ok("commutant counts [1,2,4,8]; Mat_2 is balanced".to_string())
}

fn left_right_modules(reg: &Registry, limits: &Limits) -> Outcome {
    for name in ["Z2", "Z3", "Z4"] {
        let rig = reg.rig(name).map_err(e)?;
        let op_rig = rig.opposite();
        let t = reg.theory(&format!("mat:{name}"), 2).map_err(e)?;
        let t_op = op_rig.mat_theory(2).map_err(e)?;
        let c = commutant_of(&t, None, limits).map_err(e)?;
        same(&t_op, &c, 2, limits, &format!("{name}: commutant of Mat_R"))?;
        let c_op = commutant_of(&t_op, None, limits).map_err(e)?;
        same(&t, &c_op, 2, limits, &format!("{name}: commutant of Mat_R^op"))?;
    }
    Ok("Z2 Z3 Z4 in both directions".to_string())
}

fn affine_commutant(reg: &Registry, limits: &Limits) -> Outcome {
    let aff = reg.theory("mat_aff:bool2", 3).map_err(e)?;
    let c = commutant_of(&aff, None, limits).map_err(e)?;
    counts_are(&c, &[2, 3, 5, 9], "commutant of Mat_aff")?;
    let join = OpTable::new(2, 2, vec![0, 1, 1, 1]).map_err(e)?;
    let consts = [OpTable::constant(0, 2, 0).map_err(e)?, OpTable::constant(0, 2, 1).map_err(e)?];
    let bounded = clone_generate(&[join, consts[0].clone(), consts[1].clone()], 2, 3, limits).map_err(e)?;
    same(&bounded, &c, 3, limits, "bounded join clone vs commutant of Mat_aff")?;
    let pointed = reg.theory("pointed:bool2", 3).map_err(e)?;
    let cp = commutant_of(&pointed, None, limits).map_err(e)?;
    same(&aff, &cp, 3, limits, "Mat_aff vs commutant of pointed modules")?;
    Ok("counts [2,3,5,9]; pointed commutant equals Mat_aff image".to_string())
}

fn empty_generators(reg: &Registry, limits: &Limits) -> Outcome {
    let c = commutant(&[], 2, 3, None, limits).map_err(e)?;
    counts_are(&c, &[2, 4, 16, 256], "commutant of nothing")?;
    let full = reg.theory("full:2", 3).map_err(e)?;
    same(&c, &full, 3, limits, "full theory builtin")?;
    Ok("counts [2,4,16,256]".to_string())
}

fn galois_connection(_: &Registry, limits: &Limits) -> Outcome {
    let binaries = every_op(2, 2);
    let mut theories = Vec::new();
    for a in 0..binaries.len() {
        for b in a + 1..binaries.len() {
            let gens = [binaries[a].clone(), binaries[b].clone()];
            let t = clone_generate(&gens, 2, 2, limits).map_err(e)?;
            let p1 = commutant(&gens, 2, 2, None, limits).map_err(e)?;
            let p2 = commutant_of(&p1, None, limits).map_err(e)?;
            let p3 = commutant_of(&p2, None, limits).map_err(e)?;
            ensure(t.is_subtheory_upto(&p2, 2).map_err(e)?, format!("pair {a},{b}: T not in T''"))?;
            same(&p1, &p3, 2, limits, &format!("pair {a},{b}: T' vs T'''"))?;
            theories.push((t, p1));
        }
    }
    let mut inclusions = 0;
    for (t, tp) in &theories {
        for (u, up) in &theories {
            if t.is_subtheory_upto(u, 2).map_err(e)? {
                inclusions += 1;
                ensure(up.is_subtheory_upto(tp, 2).map_err(e)?, "antitonicity")?;
            }
        }
    }
    Ok(format!("{} theories, {inclusions} inclusions", theories.len()))
}

fn symmetry_transposition(_: &Registry, _: &Limits) -> Outcome {
    let mut pairs = 0;
    let mut check = |mu: &OpTable, nu: &OpTable| -> Result<(), String> {
        let c = commutes(mu, nu).map_err(e)?;
        ensure(c == commutes(nu, mu).map_err(e)?, "commutation is not symmetric")?;
        ensure(c == (kron1(mu, nu).map_err(e)? == kron2(mu, nu).map_err(e)?), "early exit disagrees")?;
        let t = transpose_vars(&kron1(nu, mu).map_err(e)?, nu.arity(), mu.arity()).map_err(e)?;
        ensure(kron2(mu, nu).map_err(e)? == t, "transposition law")?;
        pairs += 1;
        Ok(())
    };
    let ops2: Vec<OpTable> = (0..=2).flat_map(|n| every_op(2, n)).collect();
    for mu in &ops2 {
        for nu in &ops2 {
            check(mu, nu)?;
        }
    }
    let mut ops3: Vec<OpTable> = (0..=1).flat_map(|n| every_op(3, n)).collect();
    ops3.extend(strided_ops(3, 2, 197, 5));
    for mu in &ops3 {
        for nu in &ops3 {
            check(mu, nu)?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn theory_monad_bridge(reg: &Registry, limits: &Limits) -> Outcome {
    let meet = OpTable::new(2, 2, vec![0, 0, 0, 1]).map_err(e)?;
    let join = OpTable::new(2, 2, vec![0, 1, 1, 1]).map_err(e)?;
    let not = OpTable::new(1, 2, vec![1, 0]).map_err(e)?;
    let named = [
        ("Mat_2", reg.theory("mat:bool2", 2).map_err(e)?),
        ("Mat_2^aff", reg.theory("mat_aff:bool2", 2).map_err(e)?),
        ("clone{and}", clone_generate(std::slice::from_ref(&meet), 2, 2, limits).map_err(e)?),
        ("clone{or}", clone_generate(&[join], 2, 2, limits).map_err(e)?),
        ("clone{and,not}", clone_generate(&[meet, not], 2, 2, limits).map_err(e)?),
        ("projections", reg.theory("projections:2", 2).map_err(e)?),
    ];
    let mut commuting = 0;
    for (na, a) in &named {
        let ga = a.generating_ops(limits).map_err(e)?;
        for (nb, b) in &named {
            let gb = b.generating_ops(limits).map_err(e)?;
            let th = theories_commute(&ga, &gb, 2).map_err(e)?;
            let mo = monads_commute(&ga, &gb, 2, 2, limits).map_err(e)?;
            ensure(th == mo, format!("{na} vs {nb}: theories {th}, monads {mo}"))?;
            commuting += usize::from(th);
        }
        let tc = a.is_commutative(CommutativityMode::Generators, limits).map_err(e)?;
        let mc = FreeMonad::with_limits(a, *limits).is_commutative(2).map_err(e)?;
        ensure(tc == mc, format!("{na}: theory commutative {tc}, monad {mc}"))?;
    }
    ensure(commuting == 21, format!("{commuting} commuting pairs, expected 21"))?;
    Ok("36 pairs agree, 21 commuting".to_string())
}

fn free_elements(reg: &Registry, limits: &Limits) -> Outcome {
    let full = reg.theory("full:2", 3).map_err(e)?;
    let monad = FreeMonad::with_limits(&full, *limits);
    let ops: Vec<OpTable> = (0..=2).flat_map(|n| every_op(2, n)).collect();
    let mut triples = 0;
    for x in 0..=3usize {
        for f in &ops {
            let n = f.arity();
            if x == 0 && n > 0 {
                continue;
            }
            for code in 0..x.max(1).pow(n as u32) {
                let mut c = code;
                let anchor: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = c % x.max(1);
                        c /= x.max(1);
                        d
                    })
                    .collect();
                let canon = canonicalize(f, &anchor, x).map_err(e)?;
                let direct = OpTable::from_fn(x, 2, |z| {
                    let args: Vec<u8> = anchor.iter().map(|&a| z[a]).collect();
                    f.eval(&args).expect("arity matches")
                })
                .map_err(e)?;
                let nf = canon.normal_form().map_err(e)?;
                ensure(canon.is_canonical() && nf.op() == &direct, format!("{f:?} at {anchor:?}"))?;
                triples += 1;
            }
        }
    }
    for x in 0..=2 {
        let units: Vec<FreeElement> = (0..x).map(|i| monad.unit(x, i)).collect::<Result<_, _>>().map_err(e)?;
        for el in monad.apply(x).map_err(e)? {
            ensure(monad.mult(&el, &units, x).map_err(e)?.same_element(&el).map_err(e)?, "right unit law")?;
            let left = monad.mult(&monad.unit(1, 0).map_err(e)?, std::slice::from_ref(&el), x).map_err(e)?;
            ensure(left.same_element(&el).map_err(e)?, "left unit law")?;
        }
    }
    let mut assoc = 0;
    let t2 = monad.apply(2).map_err(e)?;
    for a in &t2 {
        for (i, b0) in t2.iter().enumerate().step_by(3) {
            let b1 = &t2[(i * 7 + 1) % t2.len()];
            for (j, c0) in t2.iter().enumerate().step_by(5) {
                let c1 = &t2[(j * 11 + 3) % t2.len()];
                let (bs, cs) = ([b0.clone(), b1.clone()], [c0.clone(), c1.clone()]);
                let lhs = monad.mult(&monad.mult(a, &bs, 2).map_err(e)?, &cs, 2).map_err(e)?;
                let flat: Vec<FreeElement> =
                    bs.iter().map(|b| monad.mult(b, &cs, 2)).collect::<Result<_, _>>().map_err(e)?;
                let rhs = monad.mult(a, &flat, 2).map_err(e)?;
                ensure(lhs.same_element(&rhs).map_err(e)?, "associativity")?;
                assoc += 1;
            }
        }
    }
    Ok(format!("{triples} triples; unit laws; {assoc} associativity instances"))
}

fn ring_instances(reg: &Registry, _: &Limits) -> Outcome {
    let v = reg.group("Z2xZ2").map_err(e)?;
    let end = end_ring(&v).map_err(e)?;
    ensure(end.maps.len() == 16, format!("End(Z2xZ2) has {} elements", end.maps.len()))?;
    let scalars = end.scalars().map_err(e)?;
    ensure(scalars.len() == 2, "two scalars")?;
    ensure(end.ring.center().map_err(e)? == scalars, "center of M2(F2) is {0, 1}")?;
    ensure(centralizer(&end.ring, scalars.elements()).map_err(e)?.len() == 16, "centralizer of scalars")?;
    let dc = double_centralizer(&ModuleAction::tautological(&end).map_err(e)?).map_err(e)?;
    ensure(dc.commutant.commutant == scalars, "End over M2(F2) is the scalars")?;
    ensure(dc.bicommutant.len() == 16 && dc.has_property(), "double centralizer is M2(F2)")?;
    let z4 = regular_commutant(&reg.ring("Z4").map_err(e)?).map_err(e)?;
    ensure(z4.holds(), "Z4: commutant of the regular module is not Z4^op")?;
    let ut = regular_commutant(&reg.ring("UT2_F2").map_err(e)?).map_err(e)?;
    ensure(ut.holds() && ut.centralizer.len() == 8, format!("UT2_F2: centralizer of size {}", ut.centralizer.len()))?;
    let diag = end.diagonal().map_err(e)?;
    ensure(diag.len() == 4, "diagonal subring has 4 elements")?;
    let self_centralizing = is_maximal_commutative(&end.ring, &diag).map_err(e)?;
    let maximal = is_maximal_commutative_by_search(&end.ring, &diag);
    ensure(self_centralizing && maximal, "diagonal subring maximal commutative")?;
    Ok("M2(F2), Z4 and UT2_F2 instances".to_string())
}

fn oracle_equivalence(_: &Registry, limits: &Limits) -> Outcome {
    let mut sets: Vec<(usize, usize, Vec<OpTable>)> = vec![(2, 3, vec![])];
    for n in 0..=2 {
        for g in every_op(2, n) {
            sets.push((2, 3, vec![g]));
        }
    }
    sets.push((2, 3, vec![OpTable::new(3, 2, vec![0, 0, 0, 1, 0, 1, 1, 1]).map_err(e)?]));
    sets.push((2, 3, vec![OpTable::new(3, 2, vec![0, 1, 1, 0, 1, 0, 0, 1]).map_err(e)?]));
    sets.push((3, 2, vec![]));
    let min3 = OpTable::from_fn(2, 3, |x| x[0].min(x[1])).map_err(e)?;
    let add3 = OpTable::from_fn(2, 3, |x| (x[0] + x[1]) % 3).map_err(e)?;
    let malcev = OpTable::from_fn(3, 3, |x| (x[0] + 2 * x[1] + x[2]) % 3).map_err(e)?;
    for g in [min3, add3, malcev] {
        sets.push((3, 2, vec![g]));
    }
    for n in 0..=1 {
        for g in strided_ops(3, n, 4, 1) {
            sets.push((3, 2, vec![g]));
        }
    }
    for g in strided_ops(3, 2, 1999, 17) {
        sets.push((3, 2, vec![g]));
    }
    let mut slices = 0;
    for (s, max_n, gens) in &sets {
        for n in 0..=*max_n {
            let bt = commutant_slice(gens, *s, n, Strategy::Backtrack, limits).map_err(e)?;
            let ex = exhaustive_commutant(gens, *s, n, limits)?;
            ensure(bt == ex, format!("carrier {s}, arity {n}, generators {:?}", tables(gens)))?;
            slices += 1;
        }
        let whole = commutant_with(gens, *s, *max_n, None, Strategy::Backtrack, limits).map_err(e)?;
        let whole_ex = commutant_with(gens, *s, *max_n, None, Strategy::Exhaustive, limits).map_err(e)?;
        same(&whole_ex, &whole, *max_n, limits, "theory level")?;
    }
    Ok(format!("{} generator sets, {slices} slices", sets.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_by_substring() {
        let report = run(Some("empty"), &Registry::new(), &Limits::default(), 1);
        assert_eq!(report.checks.len(), 1);
        assert!(report.all_passed());
        assert!(run(Some("no-such-check"), &Registry::new(), &Limits::default(), 1).checks.is_empty());
    }

    #[test]
    fn corrupt_builtin_is_caught_with_a_diff() {
        let reg = Registry::with_corruption(["full:2".to_string()]).unwrap();
        let report = run(Some("empty"), &reg, &Limits::default(), 1);
        assert_eq!(report.checks[0].status, Status::Fail);
        assert!(report.checks[0].details.contains("arity 3: expected 256 ops, got 255"), "{}", report.checks[0].details);
    }

    #[test]
    fn every_op_enumerates_in_order() {
        let ops = every_op(2, 1);
        assert_eq!(tables(&ops), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }
}
