//! Report lines: one JSON object per (group, prime, character), serialized
//! with sorted keys so identical runs give identical bytes.

use indres::checker::{CheckVerdict, FilterReport, VerdictStatus};
use indres::decomp::SolveVerdict;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::corpus::CorpusEntry;

pub const SCHEMA_VERSION: u64 = 1;

/// Line status for entries that never reached a verdict.
pub const ERROR_STATUS: &str = "error";

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn solver(v: &Option<SolveVerdict>) -> Value {
    match v {
        None => Value::Null,
        Some(v) => json!({
            "feasible": v.is_feasible(),
            "search_nodes": v.search_nodes,
            "certificate": v.certificate,
        }),
    }
}

/// Nonzero coefficients of the strong witness, or of the weak one when no
/// strong witness exists, with the origins of each column.
fn witness(v: &CheckVerdict) -> Value {
    let Some(cs) = &v.column_set else { return Value::Null };
    let source = v
        .strong
        .as_ref()
        .filter(|s| s.is_feasible())
        .or(v.weak.as_ref().filter(|w| w.is_feasible()));
    let Some(a) = source.and_then(|s| s.witness.as_ref()) else { return Value::Null };
    let terms: Vec<Value> = a
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| {
            let origins: Vec<Value> = cs.provenance[c]
                .iter()
                .zip(&cs.lambda_degrees[c])
                .map(|(&(s, l), &d)| {
                    json!({
                        "subgroup": s,
                        "subgroup_order": cs.subgroups[s].subgroup.order(),
                        "character": l,
                        "character_degree": d,
                    })
                })
                .collect();
            json!({ "column": c, "coefficient": int(x), "sources": origins })
        })
        .collect();
    Value::Array(terms)
}

pub fn filters_json(f: &FilterReport) -> Value {
    json!({
        "equals_o_upper_pprime": f.equals_o_upper_pprime,
        "directly_indecomposable": f.directly_indecomposable,
        "chi_faithful": f.chi_faithful,
        "abelian_normals_cyclic_central": f.abelian_normals_cyclic_central,
        "o_pprime_in_center_and_derived": f.o_pprime_in_center_and_derived,
        "central_index": f.central_index,
        "candidate": f.candidate(),
    })
}

/// Common fields identifying the group.
fn header(entry: &CorpusEntry, order: Option<u64>, prime: Option<u64>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("group".into(), json!(entry.name));
    m.insert("group_hash".into(), json!(&entry.content_hash[..16]));
    m.insert("order".into(), json!(order));
    m.insert("prime".into(), json!(prime));
    m
}

pub struct VerdictContext<'a> {
    pub entry: &'a CorpusEntry,
    pub order: u64,
    pub p_solvable: Option<bool>,
    pub timings: bool,
}

pub fn verdict_line(ctx: &VerdictContext<'_>, v: &CheckVerdict, filters: Option<&FilterReport>) -> Value {
    let mut m = header(ctx.entry, Some(ctx.order), Some(v.prime));
    let lw = v.linear_witness.as_ref().map(|w| {
        json!({
            "column": w.column,
            "subgroup": w.subgroup,
            "character": w.character,
            "coefficient": int(&w.coefficient),
        })
    });
    let fields = [
        ("character", json!(v.character)),
        ("degree", json!(v.degree)),
        ("degree_p_part", json!(v.degree_p_part)),
        ("target_index", json!(v.target_index)),
        ("sylow_order", json!(v.ambient_order)),
        ("mode", json!(v.mode.as_str())),
        ("status", json!(v.status().as_str())),
        ("meets_mode", json!(v.meets_mode())),
        ("p_solvable", json!(ctx.p_solvable)),
        ("subgroup_classes", json!(v.subgroup_classes)),
        ("column_count", json!(v.column_count)),
        ("weak", solver(&v.weak)),
        ("strong", solver(&v.strong)),
        ("witness", witness(v)),
        ("linear_witness", lw.unwrap_or(Value::Null)),
        ("capped", json!(v.capped)),
    ];
    for (k, val) in fields {
        m.insert(k.into(), val);
    }
    if let Some(f) = filters {
        m.insert("filters".into(), filters_json(f));
    }
    if ctx.timings {
        m.insert("elapsed_ms".into(), json!(v.elapsed.as_secs_f64() * 1e3));
    }
    Value::Object(m)
}

/// A line for an entry or task that ended in an error. Resource caps get
/// status "capped", everything else "error".
pub fn error_line(entry: &CorpusEntry, order: Option<u64>, prime: Option<u64>, err: &indres::Error) -> Value {
    let mut m = header(entry, order, prime);
    if err.is_resource_cap() {
        m.insert("status".into(), json!(VerdictStatus::Capped.as_str()));
        m.insert("capped".into(), json!(err.to_string()));
    } else {
        m.insert("status".into(), json!(ERROR_STATUS));
        m.insert("error".into(), json!(err.to_string()));
    }
    Value::Object(m)
}

/// Canonical serialization: sorted keys, no whitespace, trailing newline.
pub fn encode(line: &Value) -> String {
    let mut s = serde_json::to_string(line).expect("report values serialize");
    s.push('\n');
    s
}

/// Counts of line statuses in the order they are reported.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub trivial: usize,
    pub strong: usize,
    pub weak: usize,
    pub weak_only: usize,
    pub fails: usize,
    pub capped: usize,
    pub errors: usize,
}

impl Summary {
    pub fn add(&mut self, line: &Value) {
        match line["status"].as_str().unwrap_or(ERROR_STATUS) {
            "trivial" => self.trivial += 1,
            "strong" => self.strong += 1,
            "weak" => self.weak += 1,
            "weak-only" => self.weak_only += 1,
            "fails" => self.fails += 1,
            "capped" => self.capped += 1,
            _ => self.errors += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.trivial + self.strong + self.weak + self.weak_only + self.fails + self.capped + self.errors
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trivial": self.trivial,
            "strong": self.strong,
            "weak": self.weak,
            "weak-only": self.weak_only,
            "fails": self.fails,
            "capped": self.capped,
            "error": self.errors,
        })
    }

    pub fn table(&self) -> String {
        let rows = [
            ("trivial", self.trivial),
            ("strong", self.strong),
            ("weak", self.weak),
            ("weak-only", self.weak_only),
            ("fails", self.fails),
            ("capped", self.capped),
            ("error", self.errors),
            ("total", self.total()),
        ];
        rows.iter().map(|(k, v)| format!("{k:<10} {v:>8}\n")).collect()
    }
}
