//! JSON instance documents.
//!
//! Rationals are strings `"p/q"` (or `"p"`), +∞ is `"inf"`. The canonical
//! text is compact UTF-8 JSON with object keys sorted, arrays in atom or
//! grid order, and a trailing newline.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::filtration::{ExtTime, Filtration, TimeGrid, TimeValue};
use crate::process::{BinaryProcess, BorelSet, Endpoint, Interval, RandomTime, RealProcess};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::space::{Partition, SampleSpace};

pub const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Process {
    Binary(BinaryProcess),
    Real(RealProcess),
}

impl Process {
    pub fn to_real(&self) -> RealProcess {
        match self {
            Process::Binary(b) => b.to_real(),
            Process::Real(r) => r.clone(),
        }
    }
}

/// A set of optional sections. Any `time` or `process` section is checked
/// against the document's space and grid when set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceDocument {
    space: Option<SampleSpace>,
    grid: Option<TimeGrid>,
    filtration: Option<Filtration>,
    time: Option<RandomTime>,
    process: Option<Process>,
    borel_set: Option<BorelSet>,
}

impl InstanceDocument {
    pub fn new(space: Option<SampleSpace>, grid: Option<TimeGrid>) -> Self {
        InstanceDocument {
            space,
            grid,
            ..Default::default()
        }
    }

    pub fn from_filtration(f: Filtration) -> Self {
        InstanceDocument {
            space: Some(f.space().clone()),
            grid: Some(f.grid().clone()),
            filtration: Some(f),
            ..Default::default()
        }
    }

    pub fn space(&self) -> Option<&SampleSpace> {
        self.space.as_ref()
    }

    pub fn grid(&self) -> Option<&TimeGrid> {
        self.grid.as_ref()
    }

    pub fn filtration(&self) -> Option<&Filtration> {
        self.filtration.as_ref()
    }

    pub fn time(&self) -> Option<&RandomTime> {
        self.time.as_ref()
    }

    pub fn process(&self) -> Option<&Process> {
        self.process.as_ref()
    }

    pub fn borel_set(&self) -> Option<&BorelSet> {
        self.borel_set.as_ref()
    }

    fn shape(&self) -> Result<(usize, usize)> {
        match (&self.space, &self.grid) {
            (Some(s), Some(g)) => Ok((s.len(), g.len())),
            _ => Err(Error::domain("document needs both space and grid")),
        }
    }

    pub fn set_time(&mut self, time: Option<RandomTime>) -> Result<()> {
        if let Some(t) = &time {
            let (atoms, times) = self.shape()?;
            if t.len() != atoms
                || t.values()
                    .iter()
                    .any(|v| matches!(v, ExtTime::At(i) if *i >= times))
            {
                return Err(Error::domain(
                    "time section does not fit the space and grid",
                ));
            }
        }
        self.time = time;
        Ok(())
    }

    pub fn set_process(&mut self, process: Option<Process>) -> Result<()> {
        if let Some(p) = &process {
            let shape = match p {
                Process::Binary(b) => (b.atoms(), b.times()),
                Process::Real(r) => (r.atoms(), r.times()),
            };
            if shape != self.shape()? {
                return Err(Error::domain(
                    "process section does not fit the space and grid",
                ));
            }
        }
        self.process = process;
        Ok(())
    }

    pub fn set_borel_set(&mut self, set: Option<BorelSet>) {
        self.borel_set = set;
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: String,
    space: Option<RawSpace>,
    grid: Option<Vec<String>>,
    filtration: Option<RawFiltration>,
    time: Option<BTreeMap<String, String>>,
    process: Option<BTreeMap<String, BTreeMap<String, Value>>>,
    borel_set: Option<RawBorelSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    atoms: Vec<String>,
    weights: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    levels: Vec<Vec<Vec<String>>>,
    terminal: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBorelSet {
    #[serde(default)]
    intervals: Vec<RawInterval>,
    #[serde(default)]
    points: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    lo: String,
    lo_open: bool,
    hi: String,
    hi_open: bool,
}

fn at(location: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Domain(m) | Error::Rejected(m) => Error::parse(location, m),
        other => other,
    }
}

fn rational_field(text: &str, location: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::parse(location, format!("not a rational: {text:?}")))
}

fn atom_field(space: &SampleSpace, label: &str, location: &str) -> Result<usize> {
    space
        .index_of(label)
        .ok_or_else(|| Error::parse(location, format!("unknown atom {label:?}")))
}

fn time_key(grid: &TimeGrid, key: &str, location: &str) -> Result<usize> {
    let r = rational_field(key, location)?;
    grid.position(&r)
        .ok_or_else(|| Error::parse(location, format!("time {key:?} is not on the grid")))
}

fn endpoint_field(text: &str, location: &str) -> Result<Endpoint> {
    match text {
        "-inf" => Ok(Endpoint::NegInfinity),
        "inf" | "+inf" => Ok(Endpoint::PosInfinity),
        _ => rational_field(text, location).map(Endpoint::Finite),
    }
}

fn partition_field(
    space: &SampleSpace,
    blocks: &[Vec<String>],
    location: &str,
) -> Result<Partition> {
    let mut idx = Vec::with_capacity(blocks.len());
    for block in blocks {
        let mut b = Vec::with_capacity(block.len());
        for label in block {
            b.push(atom_field(space, label, location)?);
        }
        idx.push(b);
    }
    Partition::from_blocks(space.len(), idx).map_err(at(location))
}

/// Parses and validates a document. Syntax errors report line and column.
pub fn parse(text: &str) -> Result<InstanceDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if raw.version != VERSION {
        return Err(Error::parse(
            "version",
            format!("unsupported version {:?}", raw.version),
        ));
    }

    let space = raw
        .space
        .map(|s| {
            let weights = match s.weights {
                None => return SampleSpace::uniform(s.atoms).map_err(at("space")),
                Some(w) => w,
            };
            for label in weights.keys() {
                if !s.atoms.contains(label) {
                    return Err(Error::parse(
                        "space.weights",
                        format!("unknown atom {label:?}"),
                    ));
                }
            }
            let mut atoms = Vec::with_capacity(s.atoms.len());
            for label in s.atoms {
                let loc = format!("space.weights.{label}");
                let w = weights
                    .get(&label)
                    .ok_or_else(|| Error::parse(&loc, "missing weight"))?;
                let w = rational_field(w, &loc)?;
                atoms.push((label, w));
            }
            SampleSpace::new(atoms).map_err(at("space"))
        })
        .transpose()?;

    let grid = raw
        .grid
        .map(|g| {
            let times = g
                .iter()
                .enumerate()
                .map(|(i, t)| rational_field(t, &format!("grid[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            TimeGrid::new(times).map_err(at("grid"))
        })
        .transpose()?;

    let need = |what: &str| -> Result<(SampleSpace, TimeGrid)> {
        match (&space, &grid) {
            (Some(s), Some(g)) => Ok((s.clone(), g.clone())),
            _ => Err(Error::parse(what, "section requires both space and grid")),
        }
    };

    let mut doc = InstanceDocument::new(space.clone(), grid.clone());

    if let Some(rf) = raw.filtration {
        let (s, g) = need("filtration")?;
        let levels = rf
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| partition_field(&s, l, &format!("filtration.levels[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let terminal = rf
            .terminal
            .as_ref()
            .map(|t| partition_field(&s, t, "filtration.terminal"))
            .transpose()?;
        doc.filtration = Some(Filtration::new(s, g, levels, terminal).map_err(at("filtration"))?);
    }

    if let Some(rt) = raw.time {
        let (s, g) = need("time")?;
        let mut values = vec![None; s.len()];
        for (label, v) in &rt {
            let loc = format!("time.{label}");
            let a = atom_field(&s, label, &loc)?;
            let tv = TimeValue::parse(v)
                .ok_or_else(|| Error::parse(&loc, format!("not a time: {v:?}")))?;
            values[a] = Some(g.resolve(&tv).map_err(at(&loc))?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(a, v)| {
                v.ok_or_else(|| Error::parse(format!("time.{}", s.label(a)), "missing value"))
            })
            .collect::<Result<Vec<_>>>()?;
        doc.time = Some(RandomTime::new(values));
    }

    if let Some(rp) = raw.process {
        let (s, g) = need("process")?;
        let mut cells: Vec<Vec<Option<&Value>>> = vec![vec![None; s.len()]; g.len()];
        for (tk, row) in &rp {
            let t = time_key(&g, tk, &format!("process.{tk}"))?;
            for (label, v) in row {
                let a = atom_field(&s, label, &format!("process.{tk}.{label}"))?;
                cells[t][a] = Some(v);
            }
        }
        let mut any_number = false;
        let mut any_string = false;
        for (t, row) in cells.iter().enumerate() {
            for (a, cell) in row.iter().enumerate() {
                let loc = || format!("process.{}.{}", format_rational(g.time(t)), s.label(a));
                match cell {
                    None => return Err(Error::parse(loc(), "missing value")),
                    Some(Value::Number(_)) => any_number = true,
                    Some(Value::String(_)) => any_string = true,
                    Some(_) => {
                        return Err(Error::parse(loc(), "expected 0/1 or a rational string"))
                    }
                }
            }
        }
        if any_number && any_string {
            return Err(Error::parse(
                "process",
                "mixes 0/1 numbers and rational strings",
            ));
        }
        let value_at = |t: usize, a: usize| cells[t][a].expect("checked above");
        let loc =
            |t: usize, a: usize| format!("process.{}.{}", format_rational(g.time(t)), s.label(a));
        let process = if any_number {
            let mut rows = Vec::with_capacity(g.len());
            for t in 0..g.len() {
                let mut row = Vec::with_capacity(s.len());
                for a in 0..s.len() {
                    row.push(match value_at(t, a).as_u64() {
                        Some(0) => false,
                        Some(1) => true,
                        _ => return Err(Error::parse(loc(t, a), "binary value must be 0 or 1")),
                    });
                }
                rows.push(row);
            }
            Process::Binary(BinaryProcess::from_rows(rows).map_err(at("process"))?)
        } else {
            let mut rows = Vec::with_capacity(g.len());
            for t in 0..g.len() {
                let mut row = Vec::with_capacity(s.len());
                for a in 0..s.len() {
                    let text = value_at(t, a).as_str().expect("checked above");
                    row.push(rational_field(text, &loc(t, a))?);
                }
                rows.push(row);
            }
            Process::Real(RealProcess::from_rows(rows).map_err(at("process"))?)
        };
        doc.process = Some(process);
    }

    if let Some(rb) = raw.borel_set {
        let intervals = rb
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| {
                let loc = format!("borel_set.intervals[{i}]");
                Interval::new(
                    endpoint_field(&iv.lo, &loc)?,
                    iv.lo_open,
                    endpoint_field(&iv.hi, &loc)?,
                    iv.hi_open,
                )
                .map_err(at(&loc))
            })
            .collect::<Result<Vec<_>>>()?;
        let points = rb
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| rational_field(p, &format!("borel_set.points[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        doc.borel_set = Some(BorelSet::new(intervals, points));
    }

    Ok(doc)
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn endpoint_value(e: &Endpoint) -> Value {
    match e {
        Endpoint::NegInfinity => json!("-inf"),
        Endpoint::PosInfinity => json!("inf"),
        Endpoint::Finite(r) => q(r),
    }
}

fn partition_value(space: &SampleSpace, p: &Partition) -> Value {
    Value::Array(
        p.blocks()
            .iter()
            .map(|b| Value::Array(b.iter().map(|&a| json!(space.label(a))).collect()))
            .collect(),
    )
}

/// `{"label": "time", ...}` for a random time.
pub fn time_value(space: &SampleSpace, grid: &TimeGrid, tau: &RandomTime) -> Value {
    Value::Object(
        (0..space.len())
            .map(|a| {
                (
                    space.label(a).to_string(),
                    json!(grid.value(tau.at(a)).to_string()),
                )
            })
            .collect(),
    )
}

pub fn process_value(space: &SampleSpace, grid: &TimeGrid, p: &Process) -> Value {
    let mut rows = Map::new();
    for t in 0..grid.len() {
        let row: Map<String, Value> = (0..space.len())
            .map(|a| {
                let v = match p {
                    Process::Binary(b) => json!(u8::from(b.get(t, a))),
                    Process::Real(r) => q(r.get(t, a)),
                };
                (space.label(a).to_string(), v)
            })
            .collect();
        rows.insert(format_rational(grid.time(t)), Value::Object(row));
    }
    Value::Object(rows)
}

fn borel_value(b: &BorelSet) -> Value {
    let intervals: Vec<Value> = b
        .intervals()
        .iter()
        .map(|iv| {
            let (lo, lo_open) = iv.lo();
            let (hi, hi_open) = iv.hi();
            json!({
                "lo": endpoint_value(lo),
                "lo_open": lo_open,
                "hi": endpoint_value(hi),
                "hi_open": hi_open,
            })
        })
        .collect();
    json!({
        "intervals": intervals,
        "points": b.points().iter().map(q).collect::<Vec<_>>(),
    })
}

pub fn to_value(doc: &InstanceDocument) -> Value {
    let mut root = Map::new();
    root.insert("version".into(), json!(VERSION));
    if let Some(s) = &doc.space {
        let weights: Map<String, Value> = (0..s.len())
            .map(|a| (s.label(a).to_string(), q(s.weight(a))))
            .collect();
        root.insert(
            "space".into(),
            json!({ "atoms": s.labels(), "weights": weights }),
        );
    }
    if let Some(g) = &doc.grid {
        root.insert(
            "grid".into(),
            Value::Array(g.times().iter().map(q).collect()),
        );
    }
    if let Some(f) = &doc.filtration {
        let s = f.space();
        root.insert(
            "filtration".into(),
            json!({
                "levels": f.levels().iter().map(|p| partition_value(s, p)).collect::<Vec<_>>(),
                "terminal": partition_value(s, f.terminal()),
            }),
        );
    }
    if let (Some(s), Some(g)) = (&doc.space, &doc.grid) {
        if let Some(t) = &doc.time {
            root.insert("time".into(), time_value(s, g, t));
        }
        if let Some(p) = &doc.process {
            root.insert("process".into(), process_value(s, g, p));
        }
    }
    if let Some(b) = &doc.borel_set {
        root.insert("borel_set".into(), borel_value(b));
    }
    Value::Object(root)
}

/// Compact JSON with sorted keys plus a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    // serde_json's default map is ordered by key.
    let mut s = serde_json::to_string(value).expect("values always serialize");
    s.push('\n');
    s
}

pub fn serialize(doc: &InstanceDocument) -> String {
    to_canonical_string(&to_value(doc))
}
