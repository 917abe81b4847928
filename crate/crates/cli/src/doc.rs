//! JSON documents for operations, theories, rigs, rings, groups, modules and
//! free-monad elements.
//!
//! Every document that names a builtin accepts `{"builtin": "..."}`; on the
//! command line a `kind:name` reference may stand in for a file path.

use std::path::Path;

use commutant_core::monad::FreeElement;
use commutant_core::ring::{end_ring, FinAbGroup, FinRing, ModuleAction};
use commutant_core::theory::DEFAULT_MAX_ARITY;
use commutant_core::{clone_generate, Carrier, Limits, OpTable, Rig, Slice, Theory};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::registry::{split_key, Registry};

/// `{"arity": n, "table": [...]}`, with `carrier` required only for
/// nullary operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDoc {
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<usize>,
    pub table: Vec<u8>,
}

impl OpDoc {
    pub fn from_op(op: &OpTable) -> Self {
        OpDoc { arity: op.arity(), carrier: Some(op.carrier()), table: op.table().to_vec() }
    }

    pub fn to_op(&self) -> CliResult<OpTable> {
        let carrier = match self.carrier {
            Some(s) => s,
            None => infer_carrier(self.arity, self.table.len()).ok_or_else(|| {
                CliError::parse(
                    "operation",
                    format!(
                        "cannot infer the carrier of an arity-{} table of length {}; add \"carrier\"",
                        self.arity,
                        self.table.len()
                    ),
                )
            })?,
        };
        Ok(OpTable::new(self.arity, carrier, self.table.clone())?)
    }
}

fn infer_carrier(arity: usize, len: usize) -> Option<usize> {
    if arity == 0 {
        return None;
    }
    (1..=len).find(|s| s.checked_pow(arity as u32) == Some(len))
}

/// Either a size or a list of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierDoc {
    Size(usize),
    Labels(Vec<String>),
}

impl CarrierDoc {
    fn to_carrier(&self) -> CliResult<Carrier> {
        Ok(match self {
            CarrierDoc::Size(s) => Carrier::new(*s)?,
            CarrierDoc::Labels(l) => Carrier::labelled(l.clone())?,
        })
    }

    fn of(c: &Carrier) -> Self {
        match c.labels() {
            Some(l) => CarrierDoc::Labels(l.to_vec()),
            None => CarrierDoc::Size(c.size()),
        }
    }
}

/// One arity of a theory: `"full"` or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SliceDoc {
    Keyword(String),
    Ops(Vec<OpDoc>),
}

/// A theory: a builtin, a generating set, or explicit slices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<CarrierDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_arity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rig: Option<RigDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<OpDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<SliceDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_counts: Option<Vec<u128>>,
}

impl TheoryDoc {
    /// The explicit form emitted for computed theories; it re-loads to an
    /// equal theory.
    pub fn from_theory(t: &Theory) -> Self {
        let slices = (0..=t.max_arity())
            .map(|n| match t.slice(n).expect("within the bound") {
                Slice::Full => SliceDoc::Keyword("full".to_string()),
                Slice::Ops(ops) => SliceDoc::Ops(ops.iter().map(OpDoc::from_op).collect()),
            })
            .collect();
        TheoryDoc {
            carrier: Some(CarrierDoc::of(t.carrier())),
            max_arity: Some(t.max_arity()),
            generators: t.generators().map(|g| g.iter().map(OpDoc::from_op).collect()),
            slices: Some(slices),
            arity_counts: Some(t.arity_counts()),
            ..TheoryDoc::default()
        }
    }

    pub fn to_theory(&self, registry: &Registry, limits: &Limits) -> CliResult<Theory> {
        let max_arity = self.max_arity.unwrap_or(DEFAULT_MAX_ARITY);
        let theory = if let Some(b) = &self.builtin {
            self.builtin_theory(b, max_arity, registry)?
        } else {
            let carrier = self
                .carrier
                .as_ref()
                .ok_or_else(|| CliError::parse("theory", "missing field `carrier`"))?
                .to_carrier()?;
            let generators = match &self.generators {
                Some(g) => Some(g.iter().map(OpDoc::to_op).collect::<CliResult<Vec<_>>>()?),
                None => None,
            };
            match &self.slices {
                Some(slices) => self.explicit(carrier, max_arity, slices, generators, limits)?,
                None => {
                    let gens = generators.ok_or_else(|| {
                        CliError::parse("theory", "one of `builtin`, `generators` or `slices` is required")
                    })?;
                    clone_generate(&gens, carrier.size(), max_arity, limits)?
                }
            }
        };
        if let Some(counts) = &self.arity_counts {
            if *counts != theory.arity_counts() {
                return Err(CliError::parse(
                    "theory",
                    format!("arity_counts {counts:?} disagree with the theory's {:?}", theory.arity_counts()),
                ));
            }
        }
        Ok(theory)
    }

    fn builtin_theory(&self, name: &str, max_arity: usize, registry: &Registry) -> CliResult<Theory> {
        if name.contains(':') {
            return registry.theory(name, max_arity);
        }
        let key = match name {
            "full" | "projections" => {
                let size = match &self.carrier {
                    Some(c) => c.to_carrier()?.size(),
                    None => return Err(CliError::parse("theory", format!("builtin `{name}` needs `carrier`"))),
                };
                format!("{name}:{size}")
            }
            "mat" | "mat_aff" | "pointed_mod" | "pointed" => {
                let rig = self
                    .rig
                    .as_ref()
                    .ok_or_else(|| CliError::parse("theory", format!("builtin `{name}` needs `rig`")))?
                    .to_rig(registry)?;
                return Ok(match name {
                    "mat" => rig.mat_theory(max_arity)?,
                    "mat_aff" => rig.mat_aff_theory(max_arity)?,
                    _ => rig.pointed_mod_theory(max_arity)?,
                });
            }
            other => return Err(CliError::parse("theory", format!("unknown builtin `{other}`"))),
        };
        registry.theory(&key, max_arity)
    }

    fn explicit(
        &self,
        carrier: Carrier,
        max_arity: usize,
        slices: &[SliceDoc],
        generators: Option<Vec<OpTable>>,
        limits: &Limits,
    ) -> CliResult<Theory> {
        let mut list = Vec::with_capacity(slices.len());
        for (n, s) in slices.iter().enumerate() {
            list.push(match s {
                SliceDoc::Keyword(k) if k == "full" => Slice::Full,
                SliceDoc::Keyword(k) => {
                    return Err(CliError::parse("theory", format!("slices[{n}]: expected \"full\" or a list, got {k:?}")))
                }
                SliceDoc::Ops(ops) => Slice::Ops(ops.iter().map(OpDoc::to_op).collect::<CliResult<_>>()?),
            });
        }
        let t = Theory::from_slice_list(carrier, max_arity, list, generators)?;
        t.check_invariants(limits, 20_000_000)?;
        Ok(t)
    }
}

/// A rig by tables, or `{"builtin": "Z4"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RigDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
}

fn field<'a, T>(v: &'a Option<T>, doc: &str, name: &str) -> CliResult<&'a T> {
    v.as_ref().ok_or_else(|| CliError::parse(doc, format!("missing field `{name}`")))
}

fn builtin_name<'a>(b: &'a str, kind: &str) -> CliResult<&'a str> {
    match b.split_once(':') {
        Some(_) => {
            let (k, name) = split_key(b)?;
            if k != kind {
                return Err(CliError::parse(b, format!("expected a {kind} builtin")));
            }
            Ok(name)
        }
        None => Ok(b),
    }
}

impl RigDoc {
    pub fn from_rig(r: &Rig) -> Self {
        RigDoc {
            builtin: None,
            elements: r.labels().map(<[String]>::to_vec),
            add: Some(r.add_table()),
            mul: Some(r.mul_table()),
            zero: Some(r.zero()),
            one: Some(r.one()),
        }
    }

    pub fn to_rig(&self, registry: &Registry) -> CliResult<Rig> {
        if let Some(b) = &self.builtin {
            return registry.rig(builtin_name(b, "rig")?);
        }
        let rig = Rig::validated(
            field(&self.add, "rig", "add")?,
            field(&self.mul, "rig", "mul")?,
            *field(&self.zero, "rig", "zero")?,
            *field(&self.one, "rig", "one")?,
        )?;
        Ok(match &self.elements {
            Some(labels) => rig.with_labels(labels.clone())?,
            None => rig,
        })
    }

    pub fn to_ring(&self, registry: &Registry) -> CliResult<FinRing> {
        if let Some(b) = &self.builtin {
            return registry.ring(builtin_name(b, "ring")?);
        }
        Ok(FinRing::new(self.to_rig(registry)?)?)
    }
}

/// A finite abelian group by its addition table, or `{"builtin": "Z2xZ2"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

impl GroupDoc {
    pub fn from_group(g: &FinAbGroup) -> Self {
        GroupDoc {
            builtin: None,
            elements: g.labels().map(<[String]>::to_vec),
            add: Some(g.add_table()),
            zero: Some(g.zero()),
        }
    }

    pub fn to_group(&self, registry: &Registry) -> CliResult<FinAbGroup> {
        if let Some(b) = &self.builtin {
            return registry.group(builtin_name(b, "group")?);
        }
        let add = field(&self.add, "group", "add")?;
        if let Some(labels) = &self.elements {
            if labels.len() != add.len() {
                return Err(CliError::parse("group", "`elements` and `add` differ in size"));
            }
        }
        Ok(FinAbGroup::new(add, *field(&self.zero, "group", "zero")?)?)
    }
}

/// A module: a ring, a group and the action table `action[r][m]`. The
/// builtins are `regular:<ring>`, `tautological:<group>` and
/// `multiples:<n>:<group>`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RigDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
}

impl ModuleDoc {
    pub fn to_action(&self, registry: &Registry) -> CliResult<ModuleAction> {
        if let Some(b) = &self.builtin {
            return builtin_module(b, registry);
        }
        let ring = field(&self.ring, "module", "ring")?.to_ring(registry)?;
        let group = field(&self.group, "module", "group")?.to_group(registry)?;
        let action = field(&self.action, "module", "action")?.clone();
        Ok(ModuleAction::new(ring, group, action)?)
    }
}

pub fn builtin_module(b: &str, registry: &Registry) -> CliResult<ModuleAction> {
    let bad = || CliError::parse(b, "unknown module builtin");
    let (kind, rest) = b.split_once(':').ok_or_else(bad)?;
    Ok(match kind {
        "regular" => ModuleAction::regular(&registry.ring(rest)?)?,
        "tautological" => ModuleAction::tautological(&end_ring(&registry.group(rest)?)?)?,
        "multiples" => {
            let (n, g) = rest.split_once(':').ok_or_else(bad)?;
            let n: usize = n.parse().map_err(|_| bad())?;
            ModuleAction::integer_multiples(n, registry.group(g)?)?
        }
        _ => return Err(bad()),
    })
}

/// An element `[op, n, anchor]` of `T X` with `|X| = set_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub op: OpDoc,
    pub anchor: Vec<usize>,
    pub set_size: usize,
}

impl ElementDoc {
    pub fn from_element(e: &FreeElement) -> Self {
        ElementDoc { op: OpDoc::from_op(e.op()), anchor: e.anchor().to_vec(), set_size: e.set_size() }
    }

    pub fn parts(&self) -> CliResult<(OpTable, Vec<usize>, usize)> {
        Ok((self.op.to_op()?, self.anchor.clone(), self.set_size))
    }
}

/// A single operation or a list of operations (an operation tuple).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OpsDoc {
    One(OpDoc),
    Many(Vec<OpDoc>),
}

impl OpsDoc {
    pub fn to_ops(&self) -> CliResult<Vec<OpTable>> {
        match self {
            OpsDoc::One(op) => Ok(vec![op.to_op()?]),
            OpsDoc::Many(ops) => ops.iter().map(OpDoc::to_op).collect(),
        }
    }
}

/// Parses a document, reporting the failing field path and position.
pub fn parse_str<T: DeserializeOwned>(text: &str, source: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = if path == "." { String::new() } else { format!(" at `{path}`") };
        CliError::parse(source, format!("{inner}{at}"))
    })
}

pub fn read_doc<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text, &path.display().to_string())
}

/// A `kind:name` reference that does not name an existing file.
pub fn builtin_ref(arg: &str) -> Option<&str> {
    let (kind, _) = arg.split_once(':')?;
    let looks_like = !kind.is_empty() && kind.chars().all(|c| c.is_ascii_lowercase() || c == '_');
    (looks_like && !Path::new(arg).exists()).then_some(arg)
}

pub fn load_theory(arg: &str, max_arity: Option<usize>, registry: &Registry, limits: &Limits) -> CliResult<Theory> {
    if let Some(b) = builtin_ref(arg) {
        return registry.theory(b, max_arity.unwrap_or(DEFAULT_MAX_ARITY));
    }
    let mut doc: TheoryDoc = read_doc(Path::new(arg))?;
    if let Some(n) = max_arity {
        if doc.slices.is_some() && doc.max_arity != Some(n) {
            return Err(CliError::Usage(format!("{arg} has explicit slices; --arity cannot change its bound")));
        }
        doc.max_arity = Some(n);
    }
    doc.to_theory(registry, limits)
}

/// Reads one operation or a list of them. The shape is decided by the first
/// character so that parse errors keep their field path.
pub fn load_ops(arg: &str) -> CliResult<Vec<OpTable>> {
    let text = std::fs::read_to_string(arg).map_err(|e| CliError::Io { path: arg.to_string(), message: e.to_string() })?;
    let doc = if text.trim_start().starts_with('[') {
        OpsDoc::Many(parse_str(&text, arg)?)
    } else {
        OpsDoc::One(parse_str(&text, arg)?)
    };
    doc.to_ops().map_err(|e| match e {
        CliError::Parse { message, .. } => CliError::parse(arg, message),
        other => other,
    })
}

pub fn load_ring(arg: &str, registry: &Registry) -> CliResult<FinRing> {
    match builtin_ref(arg) {
        Some(b) => RigDoc { builtin: Some(b.to_string()), ..RigDoc::default() }.to_ring(registry),
        None => read_doc::<RigDoc>(Path::new(arg))?.to_ring(registry),
    }
}

pub fn load_group(arg: &str, registry: &Registry) -> CliResult<FinAbGroup> {
    match builtin_ref(arg) {
        Some(b) => GroupDoc { builtin: Some(b.to_string()), ..GroupDoc::default() }.to_group(registry),
        None => read_doc::<GroupDoc>(Path::new(arg))?.to_group(registry),
    }
}

pub fn load_module(arg: &str, registry: &Registry) -> CliResult<ModuleAction> {
    match builtin_ref(arg) {
        Some(b) => builtin_module(b, registry),
        None => read_doc::<ModuleDoc>(Path::new(arg))?.to_action(registry),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn op_documents() {
        let op: OpDoc = parse_str(r#"{"arity": 2, "table": [0, 1, 1, 1]}"#, "t").unwrap();
        assert_eq!(op.to_op().unwrap().carrier(), 2);
        let bad: OpDoc = parse_str(r#"{"arity": 2, "table": [0, 1, 1]}"#, "t").unwrap();
        assert!(bad.to_op().is_err());
        let nullary: OpDoc = parse_str(r#"{"arity": 0, "table": [1]}"#, "t").unwrap();
        assert!(nullary.to_op().is_err());
        let err = parse_str::<OpDoc>("{\n \"arity\": 2,\n \"table\": [0, \"x\"]\n}", "f.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("f.json") && msg.contains("line 3") && msg.contains("table"), "{msg}");
    }

    #[test]
    fn theory_round_trip() {
        let reg = Registry::new();
        let lim = Limits::default();
        for key in ["mat:bool2", "mat_aff:Z3", "full:2", "projections:3"] {
            let t = reg.theory(key, 2).unwrap();
            let text = serde_json::to_string(&TheoryDoc::from_theory(&t)).unwrap();
            let back = parse_str::<TheoryDoc>(&text, key).unwrap().to_theory(&reg, &lim).unwrap();
            assert_eq!(back, t, "{key}");
        }
    }

    #[test]
    fn theory_from_generators_and_builtins() {
        let reg = Registry::new();
        let lim = Limits::default();
        let doc: TheoryDoc = parse_str(
            r#"{"carrier": ["a", "b"], "max_arity": 3, "generators": [{"arity": 2, "table": [0,1,1,1]}]}"#,
            "t",
        )
        .unwrap();
        assert_eq!(doc.to_theory(&reg, &lim).unwrap().arity_counts(), [0, 1, 3, 7]);
        let doc: TheoryDoc =
            parse_str(r#"{"builtin": "mat", "rig": {"builtin": "bool2"}, "max_arity": 2}"#, "t").unwrap();
        assert_eq!(doc.to_theory(&reg, &lim).unwrap().arity_counts(), [1, 2, 4]);
        let doc: TheoryDoc = parse_str(r#"{"builtin": "full", "carrier": 3, "max_arity": 1}"#, "t").unwrap();
        assert_eq!(doc.to_theory(&reg, &lim).unwrap().arity_counts(), [3, 27]);
        assert!(parse_str::<TheoryDoc>(r#"{"carrier": 2, "extra": 1}"#, "t").is_err());
        let doc: TheoryDoc = parse_str(r#"{"carrier": 2}"#, "t").unwrap();
        assert!(doc.to_theory(&reg, &lim).is_err());
    }

    #[test]
    fn explicit_slices_are_checked() {
        let reg = Registry::new();
        let lim = Limits::default();
        let not_a_clone = r#"{"carrier": 2, "max_arity": 1, "slices": [[], [{"arity": 1, "table": [1, 0]}]]}"#;
        let doc: TheoryDoc = parse_str(not_a_clone, "t").unwrap();
        assert!(doc.to_theory(&reg, &lim).is_err());
        let bad_keyword = r#"{"carrier": 2, "max_arity": 0, "slices": ["most"]}"#;
        let doc: TheoryDoc = parse_str(bad_keyword, "t").unwrap();
        assert!(doc.to_theory(&reg, &lim).is_err());
    }

    #[test]
    fn rig_group_and_module_documents() {
        let reg = Registry::new();
        let z2 = r#"{"elements": ["0", "1"], "add": [[0,1],[1,0]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}"#;
        let rig: RigDoc = parse_str(z2, "r").unwrap();
        assert_eq!(rig.to_rig(&reg).unwrap().size(), 2);
        assert!(rig.to_ring(&reg).is_ok());
        let round = RigDoc::from_rig(&rig.to_rig(&reg).unwrap());
        assert_eq!(round, rig);
        let bool2: RigDoc = parse_str(r#"{"builtin": "rig:bool2"}"#, "r").unwrap();
        assert!(bool2.to_ring(&reg).is_err());
        let g: GroupDoc = parse_str(r#"{"builtin": "Z2xZ2"}"#, "g").unwrap();
        assert_eq!(g.to_group(&reg).unwrap().size(), 4);
        let m = format!(r#"{{"ring": {z2}, "group": {{"builtin": "Z2"}}, "action": [[0,0],[0,1]]}}"#);
        let m: ModuleDoc = parse_str(&m, "m").unwrap();
        assert!(m.to_action(&reg).unwrap().is_faithful());
        assert!(builtin_module("multiples:2:Z2xZ2", &reg).is_ok());
        assert!(builtin_module("regular:F4", &reg).is_ok());
        assert!(builtin_module("regular", &reg).is_err());
    }
}
