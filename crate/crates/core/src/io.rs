//! JSON workspace files.
//!
//! Every file carries `"kind"` and `"version": 1`. Bimodules, cochains and
//! choices name ring elements by label, so they are resolved against a ring
//! (or a model) when loaded. [`to_canonical_string`] is the only writer, and
//! a file it produced loads and saves back to the same bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::bimodule::Bimodule;
use crate::algebra::group::{FiniteAbelianGroup, GroupTables};
use crate::algebra::ring::FiniteRing;
use crate::algebra::validate_ring;
use crate::catgroup::{ObjectGroup, SkeletalSymCatGroup};
use crate::catring::{pi0_ring, SkeletalCatRing};
use crate::cochain::{check_normalized, Cochain2, Cochain3, Component, Component2};
use crate::correspondence::RepresentativeChoices;
use crate::error::{Error, Result};

pub const VERSION: u64 = 1;

pub const KINDS: [&str; 6] = [
    "ring", "bimodule", "cochain3", "cochain2", "model", "choices",
];

fn parse_err(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

pub fn read_value(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| parse_err(&path.display().to_string(), e))
}

/// Checks the `kind` and `version` fields and returns the kind.
pub fn kind_of(v: &Value) -> Result<&str> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("kind", "missing or not a string"))?;
    if !KINDS.contains(&kind) {
        return Err(parse_err("kind", format!("unknown kind {kind:?}")));
    }
    match v.get("version").and_then(Value::as_u64) {
        Some(VERSION) => Ok(kind),
        Some(other) => Err(parse_err("version", format!("unsupported version {other}"))),
        None => Err(parse_err("version", "missing or not an integer")),
    }
}

fn expect_kind(v: &Value, want: &str) -> Result<()> {
    let kind = kind_of(v)?;
    if kind != want {
        return Err(parse_err(
            "kind",
            format!("expected {want:?}, found {kind:?}"),
        ));
    }
    Ok(())
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value, at: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(at, e))
}

/// Pretty JSON with every array or object that fits in 100 columns kept on
/// one line.
pub fn to_canonical_string(v: &Value) -> String {
    fn write(v: &Value, indent: usize, out: &mut String) {
        let compact = v.to_string();
        let nested = match v {
            Value::Array(a) => !a.is_empty(),
            Value::Object(o) => !o.is_empty(),
            _ => false,
        };
        if !nested || indent + compact.len() <= 100 {
            out.push_str(&compact);
            return;
        }
        let pad = " ".repeat(indent + 2);
        match v {
            Value::Array(items) => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    write(x, indent + 2, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&" ".repeat(indent));
                out.push(']');
            }
            Value::Object(map) => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    write(x, indent + 2, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&" ".repeat(indent));
                out.push('}');
            }
            _ => unreachable!(),
        }
    }
    let mut out = String::new();
    write(v, 0, &mut out);
    out.push('\n');
    out
}

pub fn write_value(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_canonical_string(v))?;
    Ok(())
}

// ---------------------------------------------------------------- rings

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    kind: String,
    version: u64,
    elements: Vec<String>,
    zero: String,
    one: String,
    add: Vec<Vec<String>>,
    mul: Vec<Vec<String>>,
    neg: Vec<String>,
}

fn label_index(labels: &[String], l: &str, at: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| parse_err(at, format!("unknown element {l:?}")))
}

fn resolve_table(labels: &[String], t: &[Vec<String>], name: &str) -> Result<Vec<Vec<usize>>> {
    let n = labels.len();
    if t.len() != n {
        return Err(Error::Structural(format!(
            "{name} has {} rows, expected {n}",
            t.len()
        )));
    }
    t.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "{name}[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, l)| label_index(labels, l, &format!("{name}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// A ring that passed the structural checks; axioms are not yet checked.
pub fn ring_from_json_unchecked(v: &Value) -> Result<FiniteRing> {
    expect_kind(v, "ring")?;
    let f: RingFile = decode(v, "ring")?;
    let ls = &f.elements;
    let zero = label_index(ls, &f.zero, "zero")?;
    let one = label_index(ls, &f.one, "one")?;
    let add = resolve_table(ls, &f.add, "add")?;
    let mul = resolve_table(ls, &f.mul, "mul")?;
    if f.neg.len() != ls.len() {
        return Err(Error::Structural(format!(
            "neg has {} entries, expected {}",
            f.neg.len(),
            ls.len()
        )));
    }
    let neg = f
        .neg
        .iter()
        .enumerate()
        .map(|(i, l)| label_index(ls, l, &format!("neg[{i}]")))
        .collect::<Result<_>>()?;
    FiniteRing::new(f.elements, zero, one, add, mul, neg)
}

pub fn ring_from_json(v: &Value) -> Result<FiniteRing> {
    let r = ring_from_json_unchecked(v)?;
    let report = validate_ring(&r);
    if report.is_empty() {
        Ok(r)
    } else {
        Err(Error::Validation(report))
    }
}

pub fn ring_to_json(r: &FiniteRing) -> Value {
    let ls = r.labels();
    let table = |t: &[Vec<usize>]| -> Vec<Vec<String>> {
        t.iter()
            .map(|row| row.iter().map(|&x| ls[x].clone()).collect())
            .collect()
    };
    let f = RingFile {
        kind: "ring".into(),
        version: VERSION,
        elements: ls.to_vec(),
        zero: ls[r.zero()].clone(),
        one: ls[r.one()].clone(),
        add: table(r.add_table()),
        mul: table(r.mul_table()),
        neg: r.neg_table().iter().map(|&x| ls[x].clone()).collect(),
    };
    serde_json::to_value(f).expect("ring serializes")
}

// ---------------------------------------------------------------- bimodules

type Matrix = Vec<Vec<i64>>;

fn action_matrices(ring: &FiniteRing, v: &Value, name: &str) -> Result<Vec<Matrix>> {
    let map: &Map<String, Value> = v
        .as_object()
        .ok_or_else(|| parse_err(name, "expected an object"))?;
    for key in map.keys() {
        label_index(ring.labels(), key, name)?;
    }
    ring.labels()
        .iter()
        .map(|l| {
            let at = format!("{name}.{l}");
            let m = map.get(l).ok_or_else(|| parse_err(&at, "missing matrix"))?;
            decode(m, &at)
        })
        .collect()
}

/// The bimodule file `v` over `ring`, checked against the bimodule axioms.
pub fn bimodule_from_json(v: &Value, ring: &FiniteRing) -> Result<Bimodule> {
    let b = bimodule_from_json_unchecked(v, ring)?;
    let report = crate::algebra::validate_bimodule(ring, &b)?;
    if report.is_empty() {
        Ok(b)
    } else {
        Err(Error::Validation(report))
    }
}

pub fn bimodule_from_json_unchecked(v: &Value, ring: &FiniteRing) -> Result<Bimodule> {
    expect_kind(v, "bimodule")?;
    let obj = v.as_object().expect("kind_of saw an object");
    for key in obj.keys() {
        if !["kind", "version", "cyclic_orders", "left", "right"].contains(&key.as_str()) {
            return Err(parse_err(key, "unknown field"));
        }
    }
    let orders: Vec<u64> = decode(
        v.get("cyclic_orders").unwrap_or(&Value::Null),
        "cyclic_orders",
    )?;
    let group = FiniteAbelianGroup::new(orders)?;
    let left = action_matrices(ring, v.get("left").unwrap_or(&Value::Null), "left")?;
    let right = action_matrices(ring, v.get("right").unwrap_or(&Value::Null), "right")?;
    Bimodule::new(group, left, right)
}

pub fn bimodule_to_json(b: &Bimodule, ring: &FiniteRing) -> Value {
    let side = |f: &dyn Fn(usize) -> Matrix| -> Map<String, Value> {
        ring.labels()
            .iter()
            .enumerate()
            .map(|(r, l)| (l.clone(), json!(f(r))))
            .collect()
    };
    json!({
        "kind": "bimodule",
        "version": VERSION,
        "cyclic_orders": b.group().orders(),
        "left": side(&|r| b.left(r).matrix().to_vec()),
        "right": side(&|r| b.right(r).matrix().to_vec()),
    })
}

// ---------------------------------------------------------------- entries

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comp: Option<String>,
    args: Vec<String>,
    value: Vec<i64>,
}

/// What an argument position ranges over.
#[derive(Clone, Copy)]
enum Domain {
    Object,
    Pi1,
}

/// A `pi1` element as an argument: `"k"` for a cyclic group, `"(a,b)"` otherwise.
pub fn group_label(g: &FiniteAbelianGroup, idx: u32) -> String {
    let e = g.element(idx);
    match e.len() {
        0 => "0".into(),
        1 => e[0].to_string(),
        _ => format!(
            "({})",
            e.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
        ),
    }
}

fn parse_group_label(g: &FiniteAbelianGroup, s: &str, at: &str) -> Result<u32> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    let coords: Vec<i64> = if g.rank() == 0 && inner == "0" {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| parse_err(at, format!("bad pi1 element {s:?}")))
            })
            .collect::<Result<_>>()?
    };
    if !g.contains(&coords) {
        return Err(parse_err(
            at,
            format!("{s:?} is not a reduced element of pi1"),
        ));
    }
    Ok(g.index_of(&coords))
}

struct Context<'a> {
    labels: &'a [String],
    group: &'a FiniteAbelianGroup,
}

impl Context<'_> {
    fn size(&self, d: Domain) -> usize {
        match d {
            Domain::Object => self.labels.len(),
            Domain::Pi1 => self.group.order() as usize,
        }
    }

    fn value(&self, v: &[i64], at: &str) -> Result<u32> {
        if !self.group.contains(v) {
            return Err(parse_err(
                at,
                format!(
                    "value {v:?} is not a reduced element of {:?}",
                    self.group.orders()
                ),
            ));
        }
        Ok(self.group.index_of(v))
    }

    fn flat(&self, domains: &[Domain], args: &[String], at: &str) -> Result<usize> {
        if args.len() != domains.len() {
            return Err(parse_err(
                at,
                format!("expected {} args, found {}", domains.len(), args.len()),
            ));
        }
        let mut i = 0;
        for (&d, a) in domains.iter().zip(args) {
            let x = match d {
                Domain::Object => label_index(self.labels, a, at)?,
                Domain::Pi1 => parse_group_label(self.group, a, at)? as usize,
            };
            i = i * self.size(d) + x;
        }
        Ok(i)
    }

    fn args(&self, domains: &[Domain], mut i: usize) -> Vec<String> {
        let mut out = vec![String::new(); domains.len()];
        for (slot, &d) in out.iter_mut().zip(domains).rev() {
            let n = self.size(d);
            *slot = match d {
                Domain::Object => self.labels[i % n].clone(),
                Domain::Pi1 => group_label(self.group, (i % n) as u32),
            };
            i /= n;
        }
        out
    }

    fn entries(&self, table: &[u32], domains: &[Domain], comp: Option<&str>) -> Vec<Entry> {
        table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| Entry {
                comp: comp.map(str::to_string),
                args: self.args(domains, i),
                value: self.group.element(v),
            })
            .collect()
    }
}

fn objects(k: usize) -> Vec<Domain> {
    vec![Domain::Object; k]
}

fn entry_list(v: &Value, kind: &str) -> Result<Vec<Entry>> {
    expect_kind(v, kind)?;
    let obj = v.as_object().expect("kind_of saw an object");
    for key in obj.keys() {
        if !["kind", "version", "entries"].contains(&key.as_str()) {
            return Err(parse_err(key, "unknown field"));
        }
    }
    decode(v.get("entries").unwrap_or(&Value::Null), "entries")
}

/// Group entries by component name, keeping file order within each.
fn split_by_comp<'a>(entries: &'a [Entry], names: &[&str]) -> Result<Vec<Vec<&'a Entry>>> {
    let mut out = vec![Vec::new(); names.len()];
    for (j, e) in entries.iter().enumerate() {
        let c = e
            .comp
            .as_deref()
            .ok_or_else(|| parse_err(&format!("entries[{j}]"), "missing comp"))?;
        let k = names.iter().position(|&n| n == c).ok_or_else(|| {
            parse_err(
                &format!("entries[{j}].comp"),
                format!("unknown component {c:?}"),
            )
        })?;
        out[k].push(e);
    }
    Ok(out)
}

/// Like [`Context::fill`] for borrowed entries.
fn fill_refs(
    ctx: &Context,
    table: &mut [u32],
    domains: &[Domain],
    entries: &[&Entry],
    at: &str,
) -> Result<()> {
    let mut seen = vec![false; table.len()];
    for e in entries {
        let i = ctx.flat(domains, &e.args, at)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(parse_err(at, format!("position {:?} listed twice", e.args)));
        }
        table[i] = ctx.value(&e.value, at)?;
    }
    Ok(())
}

/// A 3-cochain over `ring` with values in `group`; normalization is not checked.
pub fn cochain3_from_json_unchecked(
    v: &Value,
    ring: &FiniteRing,
    group: &FiniteAbelianGroup,
) -> Result<Cochain3> {
    let entries = entry_list(v, "cochain3")?;
    let names = Component::ALL.map(Component::name);
    let parts = split_by_comp(&entries, &names)?;
    let ctx = Context {
        labels: ring.labels(),
        group,
    };
    let mut c = Cochain3::zero(ring.size());
    for (comp, part) in Component::ALL.into_iter().zip(parts) {
        fill_refs(
            &ctx,
            c.table_mut(comp),
            &objects(comp.arity()),
            &part,
            comp.name(),
        )?;
    }
    Ok(c)
}

/// A normalized 3-cochain; a non-normalized one is a validation failure.
pub fn cochain3_from_json(
    v: &Value,
    ring: &FiniteRing,
    group: &FiniteAbelianGroup,
) -> Result<Cochain3> {
    let c = cochain3_from_json_unchecked(v, ring, group)?;
    let report = check_normalized(&c, ring);
    if report.is_empty() {
        Ok(c)
    } else {
        Err(Error::Validation(report))
    }
}

pub fn cochain3_to_json(c: &Cochain3, ring: &FiniteRing, group: &FiniteAbelianGroup) -> Value {
    let ctx = Context {
        labels: ring.labels(),
        group,
    };
    let entries: Vec<Entry> = Component::ALL
        .into_iter()
        .flat_map(|comp| ctx.entries(c.table(comp), &objects(comp.arity()), Some(comp.name())))
        .collect();
    json!({"kind": "cochain3", "version": VERSION, "entries": entries})
}

/// A 2-cochain; unnormalized ones are accepted.
pub fn cochain2_from_json(
    v: &Value,
    ring: &FiniteRing,
    group: &FiniteAbelianGroup,
) -> Result<Cochain2> {
    let entries = entry_list(v, "cochain2")?;
    let names = Component2::ALL.map(Component2::name);
    let parts = split_by_comp(&entries, &names)?;
    let ctx = Context {
        labels: ring.labels(),
        group,
    };
    let mut c = Cochain2::zero(ring.size());
    for (comp, part) in Component2::ALL.into_iter().zip(parts) {
        fill_refs(&ctx, c.table_mut(comp), &objects(2), &part, comp.name())?;
    }
    Ok(c)
}

pub fn cochain2_to_json(c: &Cochain2, ring: &FiniteRing, group: &FiniteAbelianGroup) -> Value {
    let ctx = Context {
        labels: ring.labels(),
        group,
    };
    let entries: Vec<Entry> = Component2::ALL
        .into_iter()
        .flat_map(|comp| ctx.entries(c.table(comp), &objects(2), Some(comp.name())))
        .collect();
    json!({"kind": "cochain2", "version": VERSION, "entries": entries})
}

// ---------------------------------------------------------------- models

use Domain::{Object as O, Pi1 as P};

/// Table names of a model file with their argument domains, in file order.
const MODEL_TABLES: [(&str, &[Domain]); 12] = [
    ("a", &[O, O, O]),
    ("c", &[O, O]),
    ("lambda", &[O]),
    ("rho", &[O]),
    ("iota", &[O]),
    ("m", &[O, O, O]),
    ("lunit", &[O]),
    ("runit", &[O]),
    ("l", &[O, O, O]),
    ("r", &[O, O, O]),
    ("mor_add", &[O, O, P, P]),
    ("mor_mul", &[O, O, P, P]),
];

fn model_table<'a>(k: &'a SkeletalCatRing, name: &str) -> &'a [u32] {
    let g = &k.additive;
    match name {
        "a" => &g.a,
        "c" => &g.c,
        "lambda" => &g.lambda,
        "rho" => &g.rho,
        "iota" => &g.iota,
        "m" => &k.m,
        "lunit" => &k.lunit,
        "runit" => &k.runit,
        "l" => &k.l,
        "r" => &k.r,
        "mor_add" => &g.mor_add,
        "mor_mul" => &k.mor_mul,
        _ => unreachable!("unknown model table {name}"),
    }
}

fn model_table_mut<'a>(k: &'a mut SkeletalCatRing, name: &str) -> &'a mut Vec<u32> {
    let g = &mut k.additive;
    match name {
        "a" => &mut g.a,
        "c" => &mut g.c,
        "lambda" => &mut g.lambda,
        "rho" => &mut g.rho,
        "iota" => &mut g.iota,
        "m" => &mut k.m,
        "lunit" => &mut k.lunit,
        "runit" => &mut k.runit,
        "l" => &mut k.l,
        "r" => &mut k.r,
        "mor_add" => &mut g.mor_add,
        "mor_mul" => &mut k.mor_mul,
        _ => unreachable!("unknown model table {name}"),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Pi1File {
    cyclic_orders: Vec<u64>,
}

/// A skeletal categorical ring. The objects must form a ring and every
/// table must have the right shape; coherence is not checked.
pub fn model_from_json(v: &Value) -> Result<SkeletalCatRing> {
    expect_kind(v, "model")?;
    let obj = v.as_object().expect("kind_of saw an object");
    for key in obj.keys() {
        if !["kind", "version", "ring", "pi1", "tables"].contains(&key.as_str()) {
            return Err(parse_err(key, "unknown field"));
        }
    }
    let ring = ring_from_json(
        obj.get("ring")
            .ok_or_else(|| parse_err("ring", "missing"))?,
    )?;
    let pi1: Pi1File = decode(obj.get("pi1").unwrap_or(&Value::Null), "pi1")?;
    let group = FiniteAbelianGroup::new(pi1.cyclic_orders)?;
    let tables = obj
        .get("tables")
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err("tables", "missing or not an object"))?;
    for key in tables.keys() {
        if !MODEL_TABLES.iter().any(|(n, _)| n == key) {
            return Err(parse_err(&format!("tables.{key}"), "unknown table"));
        }
    }
    let n = ring.size();
    let b = group.order() as usize;
    let mut k = SkeletalCatRing {
        additive: SkeletalSymCatGroup {
            objects: ObjectGroup::from_ring(&ring),
            pi1: GroupTables::new(&group)?,
            mor_add: vec![0; n * n * b * b],
            a: vec![0; n * n * n],
            c: vec![0; n * n],
            lambda: vec![0; n],
            rho: vec![0; n],
            iota: vec![0; n],
        },
        obj_mul: ring.mul_table().iter().flatten().copied().collect(),
        one: ring.one(),
        mor_mul: vec![0; n * n * b * b],
        m: vec![0; n * n * n],
        lunit: vec![0; n],
        runit: vec![0; n],
        l: vec![0; n * n * n],
        r: vec![0; n * n * n],
    };
    let ctx = Context {
        labels: ring.labels(),
        group: &group,
    };
    for (name, domains) in MODEL_TABLES {
        let at = format!("tables.{name}");
        let entries: Vec<Entry> = match tables.get(name) {
            Some(t) => decode(t, &at)?,
            None => Vec::new(),
        };
        if entries.iter().any(|e| e.comp.is_some()) {
            return Err(parse_err(&at, "model entries take no comp"));
        }
        let refs: Vec<&Entry> = entries.iter().collect();
        fill_refs(&ctx, model_table_mut(&mut k, name), domains, &refs, &at)?;
    }
    k.check_shape()?;
    Ok(k)
}

pub fn model_to_json(k: &SkeletalCatRing) -> Result<Value> {
    let ring = pi0_ring(k)?;
    let group = k.pi1().group().clone();
    let ctx = Context {
        labels: ring.labels(),
        group: &group,
    };
    let tables: Map<String, Value> = MODEL_TABLES
        .iter()
        .map(|&(name, domains)| {
            let entries = ctx.entries(model_table(k, name), domains, None);
            (
                name.to_string(),
                serde_json::to_value(entries).expect("entries serialize"),
            )
        })
        .collect();
    Ok(json!({
        "kind": "model",
        "version": VERSION,
        "ring": ring_to_json(&ring),
        "pi1": {"cyclic_orders": group.orders()},
        "tables": tables,
    }))
}

// ---------------------------------------------------------------- choices

/// Representative choices for `k`; the canonical flag is recomputed.
pub fn choices_from_json(v: &Value, k: &SkeletalCatRing) -> Result<RepresentativeChoices> {
    expect_kind(v, "choices")?;
    let obj = v.as_object().expect("kind_of saw an object");
    for key in obj.keys() {
        if !["kind", "version", "sigma_dot", "sigma_plus"].contains(&key.as_str()) {
            return Err(parse_err(key, "unknown field"));
        }
    }
    let n = k.size();
    let labels = k.additive.objects.labels();
    let ctx = Context {
        labels,
        group: k.pi1().group(),
    };
    let mut ch = RepresentativeChoices::identity(n);
    for (name, table) in [
        ("sigma_dot", &mut ch.sigma_dot),
        ("sigma_plus", &mut ch.sigma_plus),
    ] {
        let entries: Vec<Entry> = match obj.get(name) {
            Some(t) => decode(t, name)?,
            None => Vec::new(),
        };
        let refs: Vec<&Entry> = entries.iter().collect();
        fill_refs(&ctx, table, &objects(2), &refs, name)?;
    }
    ch.canonical = ch.satisfies_canonical(k);
    Ok(ch)
}

pub fn choices_to_json(ch: &RepresentativeChoices, k: &SkeletalCatRing) -> Value {
    let ctx = Context {
        labels: k.additive.objects.labels(),
        group: k.pi1().group(),
    };
    json!({
        "kind": "choices",
        "version": VERSION,
        "sigma_dot": ctx.entries(&ch.sigma_dot, &objects(2), None),
        "sigma_plus": ctx.entries(&ch.sigma_plus, &objects(2), None),
    })
}

// ---------------------------------------------------------------- paths

pub fn load_ring(path: &Path) -> Result<FiniteRing> {
    ring_from_json(&read_value(path)?)
}

pub fn load_bimodule(path: &Path, ring: &FiniteRing) -> Result<Bimodule> {
    bimodule_from_json(&read_value(path)?, ring)
}

pub fn load_cochain3(path: &Path, ring: &FiniteRing, bimod: &Bimodule) -> Result<Cochain3> {
    cochain3_from_json(&read_value(path)?, ring, bimod.group())
}

pub fn load_cochain2(path: &Path, ring: &FiniteRing, bimod: &Bimodule) -> Result<Cochain2> {
    cochain2_from_json(&read_value(path)?, ring, bimod.group())
}

pub fn load_model(path: &Path) -> Result<SkeletalCatRing> {
    model_from_json(&read_value(path)?)
}

pub fn load_choices(path: &Path, k: &SkeletalCatRing) -> Result<RepresentativeChoices> {
    choices_from_json(&read_value(path)?, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cochain::cohomology::CocycleSpace;
    use crate::correspondence::realize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn same_bytes(v: &Value, reload: impl Fn(&Value) -> Value) {
        let text = to_canonical_string(v);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_string(&reload(&parsed)), text);
    }

    #[test]
    fn rings_and_bimodules_round_trip() {
        for name in catalog::RING_NAMES {
            let r = catalog::ring(name).unwrap();
            let v = ring_to_json(&r);
            assert_eq!(ring_from_json(&v).unwrap(), r);
            same_bytes(&v, |p| ring_to_json(&ring_from_json(p).unwrap()));
            for (_, b) in catalog::bimodules(name) {
                let v = bimodule_to_json(&b, &r);
                assert_eq!(bimodule_from_json(&v, &r).unwrap(), b);
                same_bytes(&v, |p| {
                    bimodule_to_json(&bimodule_from_json(p, &r).unwrap(), &r)
                });
            }
        }
    }

    #[test]
    fn cochains_models_and_choices_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in catalog::pairs(4, 4)
            .into_iter()
            .filter(|p| p.ring.size() <= 3)
        {
            let space = CocycleSpace::new(&p.ring, &p.bimod).unwrap();
            let phi = space.random_cocycle(&mut rng);
            let g = p.bimod.group();
            let v = cochain3_to_json(&phi, &p.ring, g);
            assert_eq!(cochain3_from_json(&v, &p.ring, g).unwrap(), phi);
            same_bytes(&v, |x| {
                cochain3_to_json(&cochain3_from_json(x, &p.ring, g).unwrap(), &p.ring, g)
            });

            let gamma = Cochain2::random_normalized(
                p.ring.size(),
                p.ring.zero(),
                g.order() as usize,
                &mut rng,
            );
            let v = cochain2_to_json(&gamma, &p.ring, g);
            assert_eq!(cochain2_from_json(&v, &p.ring, g).unwrap(), gamma);

            let k = realize(&phi, &p.ring, &p.bimod).unwrap();
            let v = model_to_json(&k).unwrap();
            assert_eq!(model_from_json(&v).unwrap(), k);
            same_bytes(&v, |x| model_to_json(&model_from_json(x).unwrap()).unwrap());

            let ch = RepresentativeChoices::random(&k, &mut rng).unwrap();
            let v = choices_to_json(&ch, &k);
            let back = choices_from_json(&v, &k).unwrap();
            assert_eq!(
                (back.sigma_dot, back.sigma_plus),
                (ch.sigma_dot, ch.sigma_plus)
            );
        }
    }

    #[test]
    fn structural_and_parse_errors_name_the_position() {
        let mut v = ring_to_json(&FiniteRing::zmod(2));
        v["add"][1] = json!(["0"]);
        let e = ring_from_json(&v).unwrap_err();
        assert!(
            matches!(&e, Error::Structural(m) if m.contains("add[1]")),
            "{e}"
        );

        let mut v = ring_to_json(&FiniteRing::zmod(2));
        v["mul"][1][1] = json!("7");
        assert!(matches!(ring_from_json(&v), Err(Error::Parse(m)) if m.contains("mul[1][1]")));

        let mut v = ring_to_json(&FiniteRing::zmod(2));
        v["version"] = json!(2);
        assert!(matches!(ring_from_json(&v), Err(Error::Parse(_))));
        v["version"] = json!(1);
        v["kind"] = json!("cochain3");
        assert!(matches!(ring_from_json(&v), Err(Error::Parse(_))));
    }

    #[test]
    fn axiom_failures_are_validation_errors() {
        // 1 + 1 = 1 breaks the group axioms.
        let mut v = ring_to_json(&FiniteRing::zmod(2));
        v["add"][1][1] = json!("1");
        assert!(matches!(ring_from_json(&v), Err(Error::Validation(_))));

        let r = FiniteRing::zmod(2);
        let c = json!({"kind": "cochain3", "version": 1, "entries": [
            {"comp": "dot", "args": ["0", "1", "1"], "value": [1]}
        ]});
        let g = FiniteAbelianGroup::cyclic(2);
        assert!(matches!(
            cochain3_from_json(&c, &r, &g),
            Err(Error::Validation(_))
        ));
        assert!(cochain3_from_json_unchecked(&c, &r, &g).is_ok());
        let dup = json!({"kind": "cochain3", "version": 1, "entries": [
            {"comp": "dot", "args": ["1", "1", "1"], "value": [1]},
            {"comp": "dot", "args": ["1", "1", "1"], "value": [0]}
        ]});
        assert!(matches!(
            cochain3_from_json(&dup, &r, &g),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn group_labels_parse_back() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        for i in 0..8 {
            assert_eq!(parse_group_label(&g, &group_label(&g, i), "x").unwrap(), i);
        }
        assert!(parse_group_label(&g, "(2,0)", "x").is_err());
    }
}
