//! Flat records rendered either as JSON or as CSV rows.
//!
//! Both renderers format floats through [`format_f64`], so the two outputs
//! of the same run carry identical digits.

use qgini::gini::GiniReport;
use qgini::lorenz::LorenzCurve;
use qgini::statefile::{format_f64, json_number, pure_to_json};
use qgini::uncertainty::{BoundSet, EtaEstimate};
use serde_json::{Map, Value};

#[derive(Debug, Clone)]
pub enum Field {
    Int(u64),
    Num(f64),
    Bool(bool),
    Text(String),
    Nums(Vec<f64>),
    Ints(Vec<usize>),
    /// Emitted in JSON only.
    Json(Value),
}

#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Field)>,
}

impl Record {
    pub fn push(&mut self, name: &'static str, field: Field) -> &mut Self {
        self.fields.push((name, field));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(n, _)| *n == name).map(|(_, f)| f)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (name, field) in &self.fields {
            let v = match field {
                Field::Int(i) => Value::from(*i),
                Field::Num(x) => json_number(*x),
                Field::Bool(b) => Value::Bool(*b),
                Field::Text(s) => Value::String(s.clone()),
                Field::Nums(xs) => Value::Array(xs.iter().map(|x| json_number(*x)).collect()),
                Field::Ints(is) => Value::Array(is.iter().map(|&i| Value::from(i)).collect()),
                Field::Json(v) => v.clone(),
            };
            map.insert(name.to_string(), v);
        }
        Value::Object(map)
    }

    fn csv_cells(&self) -> Vec<(&'static str, String)> {
        let join = |items: Vec<String>| items.join(";");
        self.fields
            .iter()
            .filter_map(|(name, field)| {
                let cell = match field {
                    Field::Int(i) => i.to_string(),
                    Field::Num(x) => format_f64(*x),
                    Field::Bool(b) => b.to_string(),
                    Field::Text(s) => s.clone(),
                    Field::Nums(xs) => join(xs.iter().map(|x| format_f64(*x)).collect()),
                    Field::Ints(is) => join(is.iter().map(|i| i.to_string()).collect()),
                    Field::Json(_) => return None,
                };
                Some((*name, cell))
            })
            .collect()
    }
}

/// Header plus one row per record; all records must share a layout.
pub fn to_csv(records: &[Record]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if let Some(first) = records.first() {
        let header: Vec<&str> = first.csv_cells().iter().map(|(n, _)| *n).collect();
        w.write_record(&header).expect("in-memory write");
    }
    for r in records {
        let cells: Vec<String> = r.csv_cells().into_iter().map(|(_, c)| c).collect();
        w.write_record(&cells).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn push_bounds(r: &mut Record, b: &BoundSet) {
    r.push("gini_cap", Field::Num(b.gini_cap))
        .push("g_lower", Field::Num(b.g_lower))
        .push("g_strict_upper", Field::Num(b.g_strict_upper))
        .push("eta_upper", Field::Num(b.eta_upper));
}

/// The per-state report: Gini values, Lorenz curves and permutations.
pub fn state_record(
    label: &str,
    g: &GiniReport,
    lx: &LorenzCurve,
    lp: &LorenzCurve,
    b: &BoundSet,
) -> Record {
    let mut r = Record::default();
    r.push("dim", Field::Int(g.dim as u64))
        .push("state_label", Field::Text(label.to_string()))
        .push("g_x", Field::Num(g.g_x))
        .push("g_p", Field::Num(g.g_p))
        .push("g_xp", Field::Num(g.g_xp))
        .push("lorenz_x", Field::Nums(lx.values().to_vec()))
        .push("lorenz_p", Field::Nums(lp.values().to_vec()))
        .push(
            "permutation_x",
            Field::Ints(lx.permutation().order().to_vec()),
        )
        .push(
            "permutation_p",
            Field::Ints(lp.permutation().order().to_vec()),
        );
    push_bounds(&mut r, b);
    r
}

pub fn push_estimate(r: &mut Record, e: &EtaEstimate) {
    r.push("g_sup_estimate", Field::Num(e.g_sup_estimate))
        .push("eta_estimate", Field::Num(e.eta_estimate))
        .push("restarts", Field::Int(e.restarts as u64))
        .push("iterations", Field::Int(e.iterations as u64))
        .push("seed", Field::Int(e.seed))
        .push("best_restart", Field::Int(e.best_restart as u64))
        .push("converged", Field::Bool(e.converged))
        .push("best_state", Field::Json(pure_to_json(&e.best_state)));
}
