use std::fmt::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commutant_core::commutant::{commutant_with, double_commutant, Strategy};
use commutant_core::monad::FreeMonad;
use commutant_core::ops::{commutation_witness, index_of, kron1_multi, kron2_multi};
use commutant_core::ring::{
    centralizer, double_centralizer, end_ring, is_maximal_commutative, is_maximal_commutative_by_search,
    module_commutant, regular_commutant, Subring,
};
use commutant_core::theory::CommutativityMode;
use commutant_core::{kron1, kron2, Limits, OpTable, OpTuple, Theory};
use serde::Serialize;
use serde_json::{json, Value};

use crate::doc::{self, ElementDoc, OpDoc, RigDoc, TheoryDoc};
use crate::error::{CliError, CliResult};
use crate::registry::Registry;
use crate::render::{self, yes_no};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "clone-commutant", version, about = "Kronecker products, commutants and centralizers of finite operations")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for commands that run independent jobs.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Largest number of operations enumerated in one slice.
    #[arg(long, global = true, env = "CLONE_COMMUTANT_CAP")]
    pub cap: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kronecker product of two operations (or operation tuples).
    Kron(KronArgs),
    /// Whether two operations commute, with a witness if not.
    Commutes {
        a: String,
        b: String,
    },
    /// Commutant of a theory, up to the arity bound.
    Commutant(CommutantArgs),
    /// Operations of a theory that commute with all of its generators.
    Center(TheoryArgs),
    /// Whether a theory is commutative.
    IsCommutative {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Check every pair of operations rather than pairs of generators.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Whether a theory is saturated and balanced.
    IsBalanced {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        ambient: Option<String>,
    },
    /// The free-algebra monad of a theory.
    #[command(subcommand)]
    Monad(MonadCommand),
    /// Finite rings, centralizers and module commutants.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Run the built-in example suite.
    VerifyExamples {
        /// Only checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Test mode: corrupt the named theory builtin before running.
        #[arg(long, hide = true)]
        inject_corrupt: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct KronArgs {
    pub a: String,
    pub b: String,
    /// Use the second Kronecker product.
    #[arg(long, conflicts_with = "both")]
    pub second: bool,
    /// Treat the documents as operation tuples.
    #[arg(long)]
    pub multi: bool,
    /// Print both products and whether they agree.
    #[arg(long)]
    pub both: bool,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Theory document, or a `kind:name` builtin.
    #[arg(required_unless_present = "builtin")]
    pub theory: Option<String>,
    /// Builtin theory such as `mat:bool2`, `mat_aff:Z4`, `pointed:bool2`, `full:2`.
    #[arg(long, conflicts_with = "theory")]
    pub builtin: Option<String>,
    /// Arity bound.
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Backtrack,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct CommutantArgs {
    #[command(flatten)]
    pub theory: TheoryArgs,
    /// Intersect with this theory instead of the full theory.
    #[arg(long)]
    pub ambient: Option<String>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    /// Also compute the double commutant.
    #[arg(long)]
    pub double: bool,
}

#[derive(Debug, Subcommand)]
pub enum MonadCommand {
    /// List `T X` for `|X| = set`.
    Apply {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        set: usize,
    },
    /// The unit at a point.
    Unit {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        set: usize,
        #[arg(long)]
        point: usize,
    },
    /// Multiplication: substitute inner elements into an outer one.
    Mult {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Element over the index set of the inner list.
        #[arg(long)]
        outer: String,
        /// JSON list of elements, all over a set of size `--set`.
        #[arg(long)]
        inner: String,
        #[arg(long)]
        set: usize,
    },
    /// Both Kock–Kronecker products of two elements.
    Kock {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Check the monad laws on small sets and report commutativity.
    Check {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    /// Endomorphism ring of a finite abelian group.
    End { group: String },
    /// Centralizer of a set of ring elements.
    Centralizer {
        ring: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
    /// Centralizer of a module's action inside the endomorphisms of its group.
    ModuleCommutant { module: String },
    /// Double centralizer of a module's action.
    Double { module: String },
    /// Compare the commutant of the regular module with the opposite ring.
    RegularOpposite { ring: String },
    /// Whether a subring is maximal commutative.
    Maximal {
        ring: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
}

/// What a command printed and whether its checks held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

struct Ctx {
    json: bool,
    limits: Limits,
    registry: Registry,
    threads: usize,
}

impl Ctx {
    fn emit(&self, value: Value, text: String) -> CliResult<Outcome> {
        self.emit_checked(value, text, true)
    }

    fn emit_checked(&self, value: Value, text: String, success: bool) -> CliResult<Outcome> {
        let output = if self.json {
            let mut s = serde_json::to_string_pretty(&value).expect("serializable");
            s.push('\n');
            s
        } else {
            text
        };
        Ok(Outcome { output, success })
    }

    fn theory(&self, args: &TheoryArgs) -> CliResult<Theory> {
        let src = match (&args.theory, &args.builtin) {
            (_, Some(b)) => {
                return self.registry.theory(b, args.arity.unwrap_or(commutant_core::theory::DEFAULT_MAX_ARITY))
            }
            (Some(t), None) => t,
            (None, None) => return Err(CliError::Usage("a theory document or --builtin is required".into())),
        };
        doc::load_theory(src, args.arity, &self.registry, &self.limits)
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits.enumeration_cap = cap;
    }
    let registry = match &cli.command {
        Command::VerifyExamples { inject_corrupt, .. } => Registry::with_corruption(inject_corrupt.iter().cloned())?,
        _ => Registry::new(),
    };
    let ctx = Ctx { json: cli.json, limits, registry, threads: cli.threads };
    match &cli.command {
        Command::Kron(args) => kron(&ctx, args),
        Command::Commutes { a, b } => commutes_cmd(&ctx, a, b),
        Command::Commutant(args) => commutant_cmd(&ctx, args),
        Command::Center(args) => {
            let t = ctx.theory(args)?;
            let c = t.center(&ctx.limits)?;
            ctx.emit(to_json(&TheoryDoc::from_theory(&c)), render::theory(&c))
        }
        Command::IsCommutative { theory, all_pairs } => {
            let t = ctx.theory(theory)?;
            let mode = if *all_pairs { CommutativityMode::AllPairs } else { CommutativityMode::Generators };
            let c = t.is_commutative(mode, &ctx.limits)?;
            ctx.emit(json!({ "commutative": c }), format!("commutative: {}\n", yes_no(c)))
        }
        Command::IsBalanced { theory, ambient } => {
            let t = ctx.theory(theory)?;
            let amb = match ambient {
                Some(a) => Some(doc::load_theory(a, Some(t.max_arity()), &ctx.registry, &ctx.limits)?),
                None => None,
            };
            let first = commutant_core::commutant::commutant_of(&t, amb.as_ref(), &ctx.limits)?;
            let second = commutant_core::commutant::commutant_of(&first, amb.as_ref(), &ctx.limits)?;
            let n = t.max_arity();
            let balanced = t.equal_upto(&first, n)?;
            let saturated = t.equal_upto(&second, n)?;
            ctx.emit(
                json!({ "saturated": saturated, "balanced": balanced, "up_to_arity": n }),
                format!("up to arity {n}\nsaturated: {}\nbalanced: {}\n", yes_no(saturated), yes_no(balanced)),
            )
        }
        Command::Monad(m) => monad_cmd(&ctx, m),
        Command::Ring(r) => ring_cmd(&ctx, r),
        Command::VerifyExamples { filter, .. } => {
            let report = verify::run(filter.as_deref(), &ctx.registry, &ctx.limits, ctx.threads);
            let mut text = String::new();
            for c in &report.checks {
                let status = match c.status {
                    verify::Status::Pass => "PASS",
                    verify::Status::Fail => "FAIL",
                };
                let _ = writeln!(text, "{status}  {:<28} {}", c.name, c.details);
            }
            let passed = report.checks.iter().filter(|c| c.status == verify::Status::Pass).count();
            let _ = writeln!(text, "{passed} of {} checks passed", report.checks.len());
            let ok = report.all_passed();
            ctx.emit_checked(to_json(&report), text, ok)
        }
    }
}

fn single(arg: &str) -> CliResult<OpTable> {
    let mut ops = doc::load_ops(arg)?;
    if ops.len() != 1 {
        return Err(CliError::Usage(format!("{arg} holds {} operations; use --multi for tuples", ops.len())));
    }
    Ok(ops.remove(0))
}

fn tuple(arg: &str) -> CliResult<OpTuple> {
    let ops = doc::load_ops(arg)?;
    let first = ops.first().ok_or_else(|| CliError::parse(arg, "empty operation tuple"))?;
    Ok(OpTuple::new(first.arity(), first.carrier(), ops.clone())?)
}

fn witness_json(mu: &OpTable, nu: &OpTable, x: &[u8]) -> CliResult<Value> {
    let s = mu.carrier();
    let at = index_of(x, s);
    let first = kron1(mu, nu)?.table()[at];
    let second = kron2(mu, nu)?.table()[at];
    Ok(json!({ "rows": mu.arity(), "cols": nu.arity(), "entries": x, "first": first, "second": second }))
}

fn witness_text(mu: &OpTable, nu: &OpTable, x: &[u8]) -> CliResult<String> {
    let at = index_of(x, mu.carrier());
    let first = kron1(mu, nu)?.table()[at];
    let second = kron2(mu, nu)?.table()[at];
    Ok(format!(
        "witness ({} x {} matrix):\n{}first product: {first}, second product: {second}\n",
        mu.arity(),
        nu.arity(),
        render::matrix(mu.arity(), nu.arity(), x)
    ))
}

fn commutation_report(mu: &OpTable, nu: &OpTable) -> CliResult<(Value, String)> {
    let w = commutation_witness(mu, nu)?;
    let mut text = format!("commute: {}\n", yes_no(w.is_none()));
    let witness = match &w {
        Some(x) => {
            text.push_str(&witness_text(mu, nu, x)?);
            witness_json(mu, nu, x)?
        }
        None => Value::Null,
    };
    Ok((json!({ "commute": w.is_none(), "witness": witness }), text))
}

fn kron(ctx: &Ctx, args: &KronArgs) -> CliResult<Outcome> {
    if args.multi {
        let (a, b) = (tuple(&args.a)?, tuple(&args.b)?);
        let docs = |t: &OpTuple| -> Value { to_json(&t.components().iter().map(OpDoc::from_op).collect::<Vec<_>>()) };
        let text_of = |label: &str, t: &OpTuple| -> String {
            let mut s = format!("{label} Kronecker product: {} components\n", t.out_arity());
            for (i, c) in t.components().iter().enumerate() {
                let _ = write!(s, "component {i}: {}", render::op_table(c));
            }
            s
        };
        let mut value = serde_json::Map::new();
        let mut text = String::new();
        let first = (!args.second || args.both).then(|| kron1_multi(&a, &b)).transpose()?;
        let second = (args.second || args.both).then(|| kron2_multi(&a, &b)).transpose()?;
        if let Some(f) = &first {
            value.insert("first".into(), docs(f));
            text.push_str(&text_of("first", f));
        }
        if let Some(s) = &second {
            value.insert("second".into(), docs(s));
            text.push_str(&text_of("second", s));
        }
        if let (Some(f), Some(s)) = (&first, &second) {
            value.insert("commute".into(), Value::Bool(f == s));
            let _ = writeln!(text, "commute: {}", yes_no(f == s));
        }
        return ctx.emit(Value::Object(value), text);
    }
    let (mu, nu) = (single(&args.a)?, single(&args.b)?);
    let mut value = serde_json::Map::new();
    let mut text = String::new();
    if !args.second || args.both {
        let p = kron1(&mu, &nu)?;
        value.insert("first".into(), to_json(&OpDoc::from_op(&p)));
        let _ = write!(text, "first Kronecker product\n{}", render::op_table(&p));
    }
    if args.second || args.both {
        let p = kron2(&mu, &nu)?;
        value.insert("second".into(), to_json(&OpDoc::from_op(&p)));
        let _ = write!(text, "second Kronecker product\n{}", render::op_table(&p));
    }
    if args.both {
        let (v, t) = commutation_report(&mu, &nu)?;
        if let Value::Object(m) = v {
            value.extend(m);
        }
        text.push_str(&t);
    }
    ctx.emit(Value::Object(value), text)
}

fn commutes_cmd(ctx: &Ctx, a: &str, b: &str) -> CliResult<Outcome> {
    let (mu, nu) = (single(a)?, single(b)?);
    let (v, t) = commutation_report(&mu, &nu)?;
    ctx.emit(v, t)
}

fn commutant_cmd(ctx: &Ctx, args: &CommutantArgs) -> CliResult<Outcome> {
    let t = ctx.theory(&args.theory)?;
    let n = t.max_arity();
    let ambient = match &args.ambient {
        Some(a) => Some(doc::load_theory(a, Some(n), &ctx.registry, &ctx.limits)?),
        None => None,
    };
    let strategy = match args.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Backtrack => Strategy::Backtrack,
        StrategyArg::Exhaustive => Strategy::Exhaustive,
    };
    let gens = t.generating_ops(&ctx.limits)?;
    let c = commutant_with(&gens, t.carrier_size(), n, ambient.as_ref(), strategy, &ctx.limits)?;
    if !args.double {
        return ctx.emit(to_json(&TheoryDoc::from_theory(&c)), render::theory(&c));
    }
    let cc = double_commutant(&gens, t.carrier_size(), n, ambient.as_ref(), &ctx.limits)?;
    ctx.emit(
        json!({ "commutant": TheoryDoc::from_theory(&c), "double_commutant": TheoryDoc::from_theory(&cc) }),
        format!("commutant\n{}double commutant\n{}", render::theory(&c), render::theory(&cc)),
    )
}

fn read_element(monad: &FreeMonad<'_>, path: &str) -> CliResult<commutant_core::FreeElement> {
    let d: ElementDoc = doc::read_doc(Path::new(path))?;
    let (op, anchor, size) = d.parts()?;
    Ok(monad.element(op, anchor, size)?)
}

fn element_text(e: &commutant_core::FreeElement) -> String {
    let cells: Vec<String> = e.op().table().iter().map(u8::to_string).collect();
    format!("[op [{}], arity {}, anchor {:?}] in T({})\n", cells.join(" "), e.support_arity(), e.anchor(), e.set_size())
}

fn monad_cmd(ctx: &Ctx, cmd: &MonadCommand) -> CliResult<Outcome> {
    match cmd {
        MonadCommand::Apply { theory, set } => {
            let t = ctx.theory(theory)?;
            let m = FreeMonad::with_limits(&t, ctx.limits);
            let elems = m.apply(*set)?;
            let docs: Vec<ElementDoc> = elems.iter().map(ElementDoc::from_element).collect();
            let mut text = format!("|T({set})| = {}\n", elems.len());
            for e in &elems {
                text.push_str(&element_text(e));
            }
            ctx.emit(json!({ "set_size": set, "elements": docs }), text)
        }
        MonadCommand::Unit { theory, set, point } => {
            let t = ctx.theory(theory)?;
            let m = FreeMonad::with_limits(&t, ctx.limits);
            let e = m.unit(*set, *point)?;
            ctx.emit(to_json(&ElementDoc::from_element(&e)), element_text(&e))
        }
        MonadCommand::Mult { theory, outer, inner, set } => {
            let t = ctx.theory(theory)?;
            let m = FreeMonad::with_limits(&t, ctx.limits);
            let outer = read_element(&m, outer)?;
            let docs: Vec<ElementDoc> = doc::read_doc(Path::new(inner))?;
            let inner = docs
                .iter()
                .map(|d| {
                    let (op, anchor, size) = d.parts()?;
                    Ok(m.element(op, anchor, size)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let e = m.mult(&outer, &inner, *set)?;
            ctx.emit(to_json(&ElementDoc::from_element(&e)), element_text(&e))
        }
        MonadCommand::Kock { theory, left, right } => {
            let t = ctx.theory(theory)?;
            let m = FreeMonad::with_limits(&t, ctx.limits);
            let (a, b) = (read_element(&m, left)?, read_element(&m, right)?);
            let k1 = m.kock_kron1(&a, &b)?;
            let k2 = m.kock_kron2(&a, &b)?;
            let equal = k1 == k2;
            ctx.emit(
                json!({
                    "kappa": ElementDoc::from_element(&k1),
                    "kappa_tilde": ElementDoc::from_element(&k2),
                    "equal": equal,
                }),
                format!("kappa:       {}kappa tilde: {}equal: {}\n", element_text(&k1), element_text(&k2), yes_no(equal)),
            )
        }
        MonadCommand::Check { theory, bound } => {
            let t = ctx.theory(theory)?;
            let m = FreeMonad::with_limits(&t, ctx.limits);
            let laws = monad_laws(&m, *bound)?;
            let commutative = m.is_commutative(*bound)?;
            ctx.emit_checked(
                json!({ "bound": bound, "laws": laws.is_none(), "failure": laws, "commutative": commutative }),
                format!(
                    "up to |X| = {bound}\nunit and associativity laws: {}\ncommutative: {}\n",
                    laws.as_deref().unwrap_or("hold"),
                    yes_no(commutative)
                ),
                laws.is_none(),
            )
        }
    }
}

/// Unit laws on every element and associativity on every triple of levels,
/// for sets of size at most `bound`. Returns a description of the first
/// failure.
fn monad_laws(m: &FreeMonad<'_>, bound: usize) -> CliResult<Option<String>> {
    for x in 0..=bound {
        let units = (0..x).map(|i| m.unit(x, i)).collect::<Result<Vec<_>, _>>()?;
        let level = m.apply(x)?;
        for e in &level {
            if !m.mult(e, &units, x)?.same_element(e)? {
                return Ok(Some(format!("right unit fails in T({x})")));
            }
            if !m.mult(&m.unit(1, 0)?, std::slice::from_ref(e), x)?.same_element(e)? {
                return Ok(Some(format!("left unit fails in T({x})")));
            }
        }
    }
    // Associativity with constant inner lists, one per pair of elements.
    for k in 0..=bound {
        for mid in 0..=bound {
            let outer = m.apply(k)?;
            let middle = m.apply(mid)?;
            let inner = m.apply(bound)?;
            for a in &outer {
                for b in &middle {
                    for c in &inner {
                        let bs = vec![b.clone(); k];
                        let cs = vec![c.clone(); mid];
                        let lhs = m.mult(&m.mult(a, &bs, mid)?, &cs, bound)?;
                        let flat = bs.iter().map(|b| m.mult(b, &cs, bound)).collect::<Result<Vec<_>, _>>()?;
                        if !lhs.same_element(&m.mult(a, &flat, bound)?)? {
                            return Ok(Some(format!("associativity fails for levels {k}, {mid}, {bound}")));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn subring_text(label: &str, s: &Subring) -> String {
    format!("{label}: {:?} ({} elements)\n", s.elements(), s.len())
}

fn ring_cmd(ctx: &Ctx, cmd: &RingCommand) -> CliResult<Outcome> {
    let reg = &ctx.registry;
    match cmd {
        RingCommand::End { group } => {
            let g = doc::load_group(group, reg)?;
            let end = end_ring(&g)?;
            let mut text = format!("End of a group of order {}: {} elements\n", g.size(), end.maps.len());
            for (i, m) in end.maps.iter().enumerate() {
                let _ = writeln!(text, "{i:>4}  {m:?}");
            }
            ctx.emit(
                json!({ "size": end.maps.len(), "maps": end.maps, "ring": RigDoc::from_rig(end.ring.rig()) }),
                text,
            )
        }
        RingCommand::Centralizer { ring, subset } => {
            let r = doc::load_ring(ring, reg)?;
            let c = centralizer(&r, subset)?;
            ctx.emit(json!({ "subset": subset, "centralizer": c.elements() }), subring_text("centralizer", &c))
        }
        RingCommand::ModuleCommutant { module } => {
            let a = doc::load_module(module, reg)?;
            let mc = module_commutant(&a)?;
            ctx.emit(
                json!({
                    "end_size": mc.end.maps.len(),
                    "image": mc.image.elements(),
                    "commutant": mc.commutant.elements(),
                    "commutant_maps": mc.commutant.elements().iter().map(|&i| &mc.end.maps[i]).collect::<Vec<_>>(),
                }),
                format!(
                    "End of the group: {} elements\n{}{}",
                    mc.end.maps.len(),
                    subring_text("action image", &mc.image),
                    subring_text("commutant", &mc.commutant)
                ),
            )
        }
        RingCommand::Double { module } => {
            let a = doc::load_module(module, reg)?;
            let dc = double_centralizer(&a)?;
            let holds = dc.has_property();
            ctx.emit(
                json!({
                    "image": dc.commutant.image.elements(),
                    "commutant": dc.commutant.commutant.elements(),
                    "bicommutant": dc.bicommutant.elements(),
                    "faithful": dc.faithful,
                    "double_centralizer_property": holds,
                }),
                format!(
                    "{}{}{}faithful: {}\ndouble centralizer property: {}\n",
                    subring_text("action image", &dc.commutant.image),
                    subring_text("commutant", &dc.commutant.commutant),
                    subring_text("bicommutant", &dc.bicommutant),
                    yes_no(dc.faithful),
                    yes_no(holds)
                ),
            )
        }
        RingCommand::RegularOpposite { ring } => {
            let r = doc::load_ring(ring, reg)?;
            let rc = regular_commutant(&r)?;
            ctx.emit(
                json!({
                    "centralizer": rc.centralizer.elements(),
                    "right_multiplications": rc.right,
                    "centralizer_is_right_multiplications": rc.centralizer_is_right,
                    "anti_isomorphism": rc.anti_isomorphism,
                    "holds": rc.holds(),
                    "saturated": rc.saturated,
                    "balanced": rc.balanced,
                }),
                format!(
                    "{}right multiplications: {:?}\ncommutant is the opposite ring: {}\nsaturated: {}\nbalanced: {}\n",
                    subring_text("centralizer of left multiplications", &rc.centralizer),
                    rc.right,
                    yes_no(rc.holds()),
                    yes_no(rc.saturated),
                    yes_no(rc.balanced)
                ),
            )
        }
        RingCommand::Maximal { ring, subset } => {
            let r = doc::load_ring(ring, reg)?;
            let s = Subring::checked(&r, subset.clone())?;
            let by_centralizer = is_maximal_commutative(&r, &s)?;
            let by_search = is_maximal_commutative_by_search(&r, &s);
            ctx.emit(
                json!({ "subring": s.elements(), "self_centralizing": by_centralizer, "maximal_by_search": by_search }),
                format!(
                    "{}self-centralizing: {}\nmaximal commutative by search: {}\n",
                    subring_text("subring", &s),
                    yes_no(by_centralizer),
                    yes_no(by_search)
                ),
            )
        }
    }
}
