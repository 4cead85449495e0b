//! The input document: one JSON object with keys `semigroup`, `generators`,
//! `weights` and `phi`.
//!
//! ```json
//! {"semigroup": {"type": "cayley_table", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]},
//!  "generators": [1],
//!  "weights": {"kind": "explicit", "values": [0]}}
//! ```
//!
//! Element keys follow the semigroup kind: a 0-based index for Cayley tables,
//! an image list for transformations, a letter string (`"aab"`) or list of
//! 1-based letters for free semigroups, a positive integer otherwise.
//! `generators` may also be `"canonical"` or `{"rule": "canonical", "limit": n}`.
//! Weight values are JSON numbers or `"p/q"` strings; integers and strings
//! are kept exact. Weight lists are 1-based by position.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::element::{Element, GeneratorList};
use crate::error::{Error, Result};
use crate::semigroup::{Semigroup, SemigroupSpec};
use crate::weight::{Cost, WeightFunction};

/// Validated contents of an input document.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSpec {
    pub semigroup: SemigroupSpec,
    pub generators: GeneratorList,
    pub weights: WeightFunction,
    pub phi: Option<Vec<(Element, f64)>>,
}

impl ParsedSpec {
    pub fn oracle(&self) -> Result<Semigroup> {
        Semigroup::new(self.semigroup.clone())
    }

    /// `phi` as a lookup function.
    pub fn phi_map(&self) -> Option<std::collections::HashMap<Element, f64>> {
        self.phi.as_ref().map(|pairs| pairs.iter().cloned().collect())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    semigroup: SemigroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<WeightDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<Vec<(Value, f64)>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WeightDoc {
    Explicit {
        values: Vec<Value>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integer_valued: Option<bool>,
    },
    Affine {
        a: Value,
        b: Value,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integer_valued: Option<bool>,
    },
    Staircase {
        base: Box<WeightDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        integer_valued: Option<bool>,
    },
}

fn parse_cost(v: &Value, field: &str) -> Result<Cost> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Cost::integer(i))
            } else {
                n.as_f64()
                    .map(Cost::Real)
                    .ok_or_else(|| Error::validation(field, format!("{n} is not representable")))
            }
        }
        Value::String(s) => {
            let r: Rational64 = s
                .trim()
                .parse()
                .map_err(|_| Error::validation(field, format!("`{s}` is not a rational p/q")))?;
            Ok(Cost::Exact(r))
        }
        other => Err(Error::validation(field, format!("expected a number, got {other}"))),
    }
}

pub(crate) fn cost_to_json(c: Cost) -> Value {
    match c {
        Cost::Exact(r) if r.is_integer() => json!(r.to_integer()),
        Cost::Exact(r) => json!(format!("{}/{}", r.numer(), r.denom())),
        Cost::Real(x) => json!(x),
    }
}

fn parse_weight(doc: &WeightDoc, field: &str) -> Result<WeightFunction> {
    let (w, flag) = match doc {
        WeightDoc::Explicit { values, integer_valued } => {
            let values = values
                .iter()
                .enumerate()
                .map(|(i, v)| parse_cost(v, &format!("{field}.values[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            (WeightFunction::Explicit(values), integer_valued)
        }
        WeightDoc::Affine { a, b, integer_valued } => (
            WeightFunction::Affine {
                a: parse_cost(a, &format!("{field}.a"))?,
                b: parse_cost(b, &format!("{field}.b"))?,
            },
            integer_valued,
        ),
        WeightDoc::Staircase { base, integer_valued } => (
            WeightFunction::staircase_of(parse_weight(base, &format!("{field}.base"))?),
            integer_valued,
        ),
    };
    w.validate()
        .map_err(|e| Error::validation(field, e.to_string()))?;
    if *flag == Some(true) && !w.is_integer_valued() {
        return Err(Error::validation(field, "integer_valued is set but some value is not an integer"));
    }
    Ok(w)
}

fn weight_to_doc(w: &WeightFunction) -> WeightDoc {
    match w {
        WeightFunction::Explicit(values) => WeightDoc::Explicit {
            values: values.iter().map(|&c| cost_to_json(c)).collect(),
            integer_valued: None,
        },
        WeightFunction::Affine { a, b } => WeightDoc::Affine {
            a: cost_to_json(*a),
            b: cost_to_json(*b),
            integer_valued: None,
        },
        WeightFunction::Staircase(base) => WeightDoc::Staircase {
            base: Box::new(weight_to_doc(base)),
            integer_valued: None,
        },
    }
}

/// Reads an element key for the given semigroup.
pub fn parse_element(v: &Value, oracle: &Semigroup, field: &str) -> Result<Element> {
    let bad = || Error::validation(field, format!("{v} is not an element of a {} semigroup", oracle.kind_name()));
    let as_usize_list = |v: &Value| -> Option<Vec<usize>> {
        v.as_array()?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize))
            .collect()
    };
    let e = match oracle.spec() {
        SemigroupSpec::CayleyTable { .. } => Element::Index(v.as_u64().ok_or_else(bad)? as usize),
        SemigroupSpec::Transformations { .. } => Element::Map(as_usize_list(v).ok_or_else(bad)?),
        SemigroupSpec::Free { .. } => match v {
            Value::String(s) if !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase()) => Element::word(s),
            _ => Element::Word(as_usize_list(v).ok_or_else(bad)?),
        },
        SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero => Element::Natural(v.as_u64().ok_or_else(bad)?),
    };
    oracle.check(&e).map_err(|_| bad())?;
    Ok(e)
}

pub fn element_to_json(e: &Element) -> Value {
    match e {
        Element::Index(i) => json!(i),
        Element::Map(m) => json!(m),
        Element::Word(w) if w.iter().all(|&l| (1..=26).contains(&l)) => json!(e.to_string()),
        Element::Word(w) => json!(w),
        Element::Natural(n) => json!(n),
    }
}

fn parse_generators(v: Option<&Value>, oracle: &Semigroup) -> Result<GeneratorList> {
    let canonical = oracle.default_generators();
    let gens = match v {
        None => canonical,
        Some(Value::String(rule)) if rule == "canonical" => canonical,
        Some(Value::Object(obj)) => {
            match obj.get("rule") {
                Some(Value::String(rule)) if rule == "canonical" => {}
                _ => return Err(Error::validation("generators.rule", "only the `canonical` rule exists")),
            }
            if let Some(k) = obj.keys().find(|k| *k != "rule" && *k != "limit") {
                return Err(Error::validation("generators", format!("unknown key `{k}`")));
            }
            match obj.get("limit") {
                None | Some(Value::Null) => canonical,
                Some(l) => {
                    let l = l
                        .as_u64()
                        .filter(|&l| l > 0)
                        .ok_or_else(|| Error::validation("generators.limit", "expected a positive integer"))?;
                    canonical.truncated(l as usize)
                }
            }
        }
        Some(Value::Array(items)) => GeneratorList::Listed(
            items
                .iter()
                .enumerate()
                .map(|(i, x)| parse_element(x, oracle, &format!("generators[{i}]")))
                .collect::<Result<_>>()?,
        ),
        Some(other) => {
            return Err(Error::validation(
                "generators",
                format!("expected a list of elements or a rule, got {other}"),
            ))
        }
    };
    oracle
        .check_generators(&gens)
        .map_err(|e| Error::validation("generators", e.to_string()))?;
    Ok(gens)
}

fn generators_to_json(gens: &GeneratorList) -> Value {
    match gens {
        GeneratorList::Listed(list) => Value::Array(list.iter().map(element_to_json).collect()),
        GeneratorList::Sequence { limit: None } => json!("canonical"),
        GeneratorList::Sequence { limit: Some(l) } => json!({"rule": "canonical", "limit": l}),
    }
}

/// Parses and validates an input document.
pub fn parse_spec(document: &str) -> Result<ParsedSpec> {
    let doc: Document = serde_json::from_str(document).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let oracle = Semigroup::new(doc.semigroup.clone())?;
    let generators = parse_generators(doc.generators.as_ref(), &oracle)?;
    let weights = match &doc.weights {
        Some(w) => parse_weight(w, "weights")?,
        None => WeightFunction::identity(),
    };
    if let (Some(g), Some(w)) = (generators.len(), weights.defined_len()) {
        if w < g {
            return Err(Error::validation(
                "weights",
                format!("{w} weights given for {g} generators"),
            ));
        }
    }
    let phi = doc
        .phi
        .as_ref()
        .map(|pairs| {
            pairs
                .iter()
                .enumerate()
                .map(|(i, (k, v))| {
                    let e = parse_element(k, &oracle, &format!("phi[{i}]"))?;
                    if v.is_nan() || *v < 1.0 {
                        return Err(Error::validation(format!("phi[{i}]"), format!("{v} is below 1")));
                    }
                    Ok((e, *v))
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(ParsedSpec {
        semigroup: doc.semigroup,
        generators,
        weights,
        phi,
    })
}

/// Serializes a spec back into the input format.
pub fn spec_to_json(spec: &ParsedSpec) -> Value {
    let doc = Document {
        semigroup: spec.semigroup.clone(),
        generators: Some(generators_to_json(&spec.generators)),
        weights: Some(weight_to_doc(&spec.weights)),
        phi: spec
            .phi
            .as_ref()
            .map(|pairs| pairs.iter().map(|(e, v)| (element_to_json(e), *v)).collect()),
    };
    serde_json::to_value(doc).expect("document serializes")
}
