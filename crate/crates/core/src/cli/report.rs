//! Deterministic JSON and CSV emission for every report type.
//!
//! JSON objects are key-sorted and reals are rounded to 12 significant
//! digits, so identical inputs give byte-identical output.

use serde_json::{json, Map, Value};

use super::spec_doc::{cost_to_json, element_to_json};
use crate::classify::{ClassificationReport, GrowthRow, Probe};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::length::{DominationViolation, LengthTable, SubadditivityViolation};
use crate::normspace::NormComparison;
use crate::nuclearity::{CensusViolation, NuclearityReport};
use crate::semigroup::ClosureResult;
use crate::weight::{Cost, WeightFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn real(x: f64) -> Value {
    json!(round12(x))
}

fn real_str(x: f64) -> String {
    round12(x).to_string()
}

fn cost_json(c: Cost) -> Value {
    match c {
        Cost::Real(x) => real(x),
        exact => cost_to_json(exact),
    }
}

fn cost_str(c: Cost) -> String {
    match c {
        Cost::Real(x) => real_str(x),
        exact => exact.to_string(),
    }
}

fn word_str(w: &[usize]) -> String {
    w.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
}

fn weight_json(w: &WeightFunction) -> Value {
    match w {
        WeightFunction::Explicit(values) => json!({"kind": "explicit", "values": values.iter().map(|&c| cost_json(c)).collect::<Vec<_>>()}),
        WeightFunction::Affine { a, b } => json!({"kind": "affine", "a": cost_json(*a), "b": cost_json(*b)}),
        WeightFunction::Staircase(base) => json!({"kind": "staircase", "base": weight_json(base)}),
    }
}

/// A flat table for CSV output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Anything the command runner can print.
pub trait Emit {
    fn to_json(&self) -> Value;
    fn to_table(&self) -> Table;
}

pub fn emit_report(report: &dyn Emit, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report.to_table();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header).map_err(|e| Error::Io(e.to_string()))?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// `enumerate`: closure of the generating set.
pub struct ClosureReport {
    pub outcome: ClosureResult,
    pub budget: usize,
    pub identity: Option<Element>,
}

impl Emit for ClosureReport {
    fn to_json(&self) -> Value {
        object(vec![
            ("status", json!(if self.outcome.is_finite() { "finite" } else { "exhausted" })),
            ("budget", json!(self.budget)),
            ("size", json!(self.outcome.elements().len())),
            ("identity", self.identity.as_ref().map_or(Value::Null, element_to_json)),
            ("elements", Value::Array(self.outcome.elements().iter().map(element_to_json).collect())),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["position", "element"],
            rows: self
                .outcome
                .elements()
                .iter()
                .enumerate()
                .map(|(i, e)| vec![i.to_string(), e.to_string()])
                .collect(),
        }
    }
}

/// `length`: a length table and its subadditivity scan.
pub struct LengthReport<'a> {
    pub table: &'a LengthTable,
    pub violations: Vec<SubadditivityViolation>,
}

impl Emit for LengthReport<'_> {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .table
            .entries()
            .iter()
            .map(|e| {
                object(vec![
                    ("element", element_to_json(&e.element)),
                    ("length", cost_json(e.length)),
                    ("witness", json!(e.witness)),
                ])
            })
            .collect();
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| {
                object(vec![
                    ("s", element_to_json(&v.s)),
                    ("t", element_to_json(&v.t)),
                    ("product", element_to_json(&v.product)),
                    ("excess", real(v.excess)),
                ])
            })
            .collect();
        object(vec![
            ("weights", weight_json(self.table.weight())),
            ("radius", self.table.radius().map_or(Value::Null, real)),
            ("complete", json!(self.table.is_complete())),
            ("size", json!(self.table.len())),
            ("entries", Value::Array(entries)),
            ("subadditivity_violations", Value::Array(violations)),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["element", "length", "witness"],
            rows: self
                .table
                .entries()
                .iter()
                .map(|e| vec![e.element.to_string(), cost_str(e.length), word_str(&e.witness)])
                .collect(),
        }
    }
}

/// `norm`: point-mass norms over a ball and the worst product ratio.
pub struct NormReport {
    pub base: f64,
    pub point_norms: Vec<(Element, Cost, f64)>,
    pub max_ratio: Option<f64>,
    pub pairs_checked: usize,
    pub complete: bool,
}

impl Emit for NormReport {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .point_norms
            .iter()
            .map(|(e, l, n)| object(vec![("element", element_to_json(e)), ("length", cost_json(*l)), ("norm", real(*n))]))
            .collect();
        object(vec![
            ("base", real(self.base)),
            ("complete", json!(self.complete)),
            ("point_masses", Value::Array(rows)),
            ("max_submultiplicativity_ratio", self.max_ratio.map_or(Value::Null, real)),
            ("pairs_checked", json!(self.pairs_checked)),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["element", "length", "norm"],
            rows: self
                .point_norms
                .iter()
                .map(|(e, l, n)| vec![e.to_string(), cost_str(*l), real_str(*n)])
                .collect(),
        }
    }
}

impl Emit for NuclearityReport {
    fn to_json(&self) -> Value {
        let census: Vec<Value> = self
            .census
            .iter()
            .map(|r| {
                object(vec![
                    ("n", json!(r.defect)),
                    ("count", json!(r.count)),
                    ("bound", r.bound.map_or(Value::Null, |b| json!(b))),
                    ("partial", json!(true)),
                ])
            })
            .collect();
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                object(vec![
                    ("element", element_to_json(&w.element)),
                    ("length_f1", cost_json(w.length_f1)),
                    ("length_f2", cost_json(w.length_f2)),
                    ("defect", json!(w.defect)),
                    ("witness", json!(w.witness)),
                    ("index_sum", json!(w.index_sum)),
                    ("dual_weight", real(w.dual_weight)),
                    ("primal_weight", real(w.primal_weight)),
                ])
            })
            .collect();
        let violations: Vec<Value> = self.violations.iter().map(violation_json).collect();
        object(vec![
            ("f1", weight_json(&self.f1)),
            ("f2", weight_json(&self.f2)),
            ("radius", self.radius.map_or(Value::Null, real)),
            ("census", Value::Array(census)),
            ("elements", Value::Array(witnesses)),
            ("partial_nuclear_sum", real(self.partial_nuclear_sum)),
            ("geometric_bound", real(self.geometric_bound)),
            ("violations", Value::Array(violations)),
            ("note", json!("finite witness of a nuclear map; not a verification of nuclearity")),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["n", "count", "bound", "partial"],
            rows: self
                .census
                .iter()
                .map(|r| {
                    vec![
                        r.defect.to_string(),
                        r.count.to_string(),
                        r.bound.map_or(String::new(), |b| b.to_string()),
                        "true".to_string(),
                    ]
                })
                .collect(),
        }
    }
}

fn violation_json(v: &CensusViolation) -> Value {
    match v {
        CensusViolation::CensusBound { defect, count } => {
            json!({"kind": "census_bound", "n": defect, "count": count})
        }
        CensusViolation::DefectBelowIndexSum { element, defect, index_sum } => json!({
            "kind": "defect_below_index_sum", "element": element_to_json(element),
            "defect": defect, "index_sum": index_sum
        }),
        CensusViolation::WitnessCollision { first, second } => json!({
            "kind": "witness_collision", "first": element_to_json(first), "second": element_to_json(second)
        }),
        CensusViolation::SumAboveBound { sum } => json!({"kind": "sum_above_bound", "sum": real(*sum)}),
    }
}

fn probe_json(p: &Probe) -> Value {
    object(vec![
        ("subset", Value::Array(p.subset.iter().map(element_to_json).collect())),
        ("finite", json!(p.outcome.is_finite())),
        ("size", json!(p.outcome.elements().len())),
        ("budget", json!(p.budget)),
    ])
}

fn probe_row(i: usize, p: &Probe) -> Vec<String> {
    let subset: Vec<String> = p.subset.iter().map(|e| e.to_string()).collect();
    vec![
        i.to_string(),
        subset.join(" "),
        p.outcome.is_finite().to_string(),
        p.outcome.elements().len().to_string(),
    ]
}

/// `local-finiteness`.
pub struct ProbeReport {
    pub seed: u64,
    pub probes: Vec<Probe>,
}

impl Emit for ProbeReport {
    fn to_json(&self) -> Value {
        object(vec![
            ("seed", json!(self.seed)),
            ("all_finite", json!(self.probes.iter().all(|p| p.outcome.is_finite()))),
            ("probes", Value::Array(self.probes.iter().map(probe_json).collect())),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["probe", "subset", "finite", "size"],
            rows: self.probes.iter().enumerate().map(|(i, p)| probe_row(i, p)).collect(),
        }
    }
}

/// `dominating-weight`.
pub struct DominationReport {
    pub weight: WeightFunction,
    pub thinned: Vec<Element>,
    pub kept_indices: Vec<usize>,
    pub level_sizes: Vec<usize>,
    pub checked: usize,
    pub violations: Vec<DominationViolation>,
}

impl Emit for DominationReport {
    fn to_json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| object(vec![("element", element_to_json(&v.element)), ("phi", real(v.phi)), ("bound", real(v.bound))]))
            .collect();
        object(vec![
            ("weights", weight_json(&self.weight)),
            ("thinned_generators", Value::Array(self.thinned.iter().map(element_to_json).collect())),
            ("kept_indices", json!(self.kept_indices)),
            ("level_sizes", json!(self.level_sizes)),
            ("elements_checked", json!(self.checked)),
            ("violations", Value::Array(violations)),
        ])
    }

    fn to_table(&self) -> Table {
        let values: Vec<f64> = match &self.weight {
            WeightFunction::Explicit(v) => v.iter().map(|c| c.to_f64()).collect(),
            _ => Vec::new(),
        };
        Table {
            header: vec!["n", "original_index", "generator", "weight", "level_size"],
            rows: (0..self.thinned.len())
                .map(|i| {
                    vec![
                        (i + 1).to_string(),
                        self.kept_indices[i].to_string(),
                        self.thinned[i].to_string(),
                        values.get(i).map_or(String::new(), |&x| real_str(x)),
                        self.level_sizes[i].to_string(),
                    ]
                })
                .collect(),
        }
    }
}

/// `norm-equivalence`.
pub struct ComparisonReport {
    pub base: f64,
    pub elements: usize,
    pub whole_semigroup: bool,
    pub comparison: NormComparison,
}

impl Emit for ComparisonReport {
    fn to_json(&self) -> Value {
        object(vec![
            ("base", real(self.base)),
            ("elements", json!(self.elements)),
            ("whole_semigroup", json!(self.whole_semigroup)),
            ("lower", real(self.comparison.lower)),
            ("upper", real(self.comparison.upper)),
            ("lower_at", element_to_json(&self.comparison.lower_at)),
            ("upper_at", element_to_json(&self.comparison.upper_at)),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["constant", "value", "attained_at"],
            rows: vec![
                vec!["lower".into(), real_str(self.comparison.lower), self.comparison.lower_at.to_string()],
                vec!["upper".into(), real_str(self.comparison.upper), self.comparison.upper_at.to_string()],
            ],
        }
    }
}

/// `growth`.
pub struct GrowthReport(pub Vec<GrowthRow>);

impl Emit for GrowthReport {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .0
            .iter()
            .map(|r| object(vec![("radius", real(r.radius)), ("size", json!(r.size)), ("complete", json!(r.complete))]))
            .collect();
        object(vec![("growth", Value::Array(rows))])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["radius", "size"],
            rows: self.0.iter().map(|r| vec![real_str(r.radius), r.size.to_string()]).collect(),
        }
    }
}

impl Emit for ClassificationReport {
    fn to_json(&self) -> Value {
        let verdict = match self.verdict {
            crate::classify::Verdict::Finite { order } => json!({"kind": self.verdict.name(), "order": order}),
            v => json!({"kind": v.name()}),
        };
        let growth = GrowthReport(self.growth.clone()).to_json()["growth"].clone();
        let comparison = self.norm_equivalence.as_ref().map_or(Value::Null, |c| {
            object(vec![("lower", real(c.lower)), ("upper", real(c.upper))])
        });
        object(vec![
            ("verdict", verdict),
            ("label", json!(self.verdict.label())),
            (
                "generators_used",
                self.generators_used
                    .as_ref()
                    .map_or(Value::Null, |g| Value::Array(g.iter().map(element_to_json).collect())),
            ),
            ("global_closure_size", json!(self.global_closure.0)),
            ("global_closure_finite", json!(self.global_closure.1)),
            ("probes", Value::Array(self.evidence.iter().map(probe_json).collect())),
            ("growth", growth),
            ("norm_equivalence", comparison),
            ("infinite_by_construction", json!(self.infinite_by_construction)),
            ("seed", json!(self.seed)),
            ("disclaimer", json!(self.disclaimer)),
        ])
    }

    fn to_table(&self) -> Table {
        Table {
            header: vec!["probe", "subset", "finite", "size"],
            rows: self.evidence.iter().enumerate().map(|(i, p)| probe_row(i, p)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round12(0.581_976_706_869_326_4), 0.581976706869);
        assert_eq!(real_str(std::f64::consts::E), "2.71828182846");
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn empty_census_is_a_valid_document() {
        let r = NuclearityReport {
            f1: WeightFunction::identity(),
            f2: WeightFunction::staircase_of(WeightFunction::identity()),
            radius: Some(0.0),
            census: vec![],
            witnesses: vec![],
            partial_nuclear_sum: 0.0,
            geometric_bound: crate::nuclearity::nuclear_sum_bound(),
            violations: vec![],
        };
        let json = emit_report(&r, Format::Json).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["census"], json!([]));
        let csv = emit_report(&r, Format::Csv).unwrap();
        assert_eq!(csv, "n,count,bound,partial\n");
    }
}
