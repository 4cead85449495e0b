//! Concrete semigroups behind a uniform multiplication oracle, plus bounded
//! closure of finite subsets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element::{Element, GeneratorList};
use crate::error::{Error, Result};

/// Tables up to this order are checked for associativity exhaustively.
pub const DEFAULT_ASSOCIATIVITY_LIMIT: usize = 64;

const SAMPLED_TRIPLES: usize = 1000;

/// User-facing description of a semigroup.
///
/// Cayley tables use 0-based element indices. Transformations act on
/// `{0, .., degree - 1}`; the semigroup is the one generated by `generators`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SemigroupSpec {
    CayleyTable { order: usize, table: Vec<Vec<usize>> },
    Transformations { degree: usize, generators: Vec<Vec<usize>> },
    Free { rank: usize },
    NaturalsAdditive,
    LeftZero,
}

impl SemigroupSpec {
    /// Addition modulo `n` as a Cayley table.
    pub fn cyclic_group(n: usize) -> Self {
        SemigroupSpec::CayleyTable {
            order: n,
            table: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
        }
    }

    /// Generators of the full transformation monoid on `degree` points.
    pub fn full_transformation_monoid(degree: usize) -> Self {
        let mut generators = vec![(0..degree).collect::<Vec<_>>()];
        if degree >= 2 {
            generators[0] = (0..degree).map(|i| (i + 1) % degree).collect();
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            generators.push(swap);
            let mut collapse: Vec<usize> = (0..degree).collect();
            collapse[1] = 0;
            generators.push(collapse);
        }
        SemigroupSpec::Transformations { degree, generators }
    }
}

/// Outcome of a bounded closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureResult {
    /// The smallest product-closed superset of the seeds.
    Finite(Vec<Element>),
    /// The first `budget` elements discovered before closure was reached.
    Exhausted(Vec<Element>),
}

impl ClosureResult {
    pub fn elements(&self) -> &[Element] {
        match self {
            ClosureResult::Finite(e) | ClosureResult::Exhausted(e) => e,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ClosureResult::Finite(_))
    }
}

/// Which elements can occur as a left factor `p` of a target `s = p t`.
#[derive(Debug, Clone)]
pub(crate) enum DivisorFilter {
    All,
    Set(HashSet<Element>),
    UpTo(u64),
}

impl DivisorFilter {
    pub(crate) fn admits(&self, e: &Element) -> bool {
        match self {
            DivisorFilter::All => true,
            DivisorFilter::Set(set) => set.contains(e),
            DivisorFilter::UpTo(max) => matches!(e, Element::Natural(n) if n <= max),
        }
    }

    /// Largest `n` such that the sequence generator `s_n = n` can pass the filter.
    pub(crate) fn sequence_bound(&self) -> Option<usize> {
        match self {
            DivisorFilter::All => None,
            DivisorFilter::UpTo(max) => Some(*max as usize),
            DivisorFilter::Set(set) => Some(
                set.iter()
                    .filter_map(|e| match e {
                        Element::Natural(n) => Some(*n as usize),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0),
            ),
        }
    }
}

/// Multiplication oracle for one semigroup.
///
/// Immutable after construction apart from a lazily computed element list
/// for transformation semigroups.
#[derive(Debug)]
pub struct Semigroup {
    spec: SemigroupSpec,
    elements: OnceLock<Vec<Element>>,
}

impl Clone for Semigroup {
    fn clone(&self) -> Self {
        Semigroup {
            spec: self.spec.clone(),
            elements: self.elements.clone(),
        }
    }
}

impl Semigroup {
    pub fn new(spec: SemigroupSpec) -> Result<Self> {
        Self::with_associativity_limit(spec, DEFAULT_ASSOCIATIVITY_LIMIT)
    }

    /// Like [`Semigroup::new`], with tables larger than `limit` checked on
    /// 1000 sampled triples instead of exhaustively.
    pub fn with_associativity_limit(spec: SemigroupSpec, limit: usize) -> Result<Self> {
        match &spec {
            SemigroupSpec::CayleyTable { order, table } => {
                if *order == 0 {
                    return Err(Error::MalformedSpec("cayley table order must be positive".into()));
                }
                if table.len() != *order || table.iter().any(|row| row.len() != *order) {
                    return Err(Error::MalformedSpec(format!("cayley table must be {order}x{order}")));
                }
                if let Some((i, j)) = table
                    .iter()
                    .enumerate()
                    .find_map(|(i, row)| row.iter().position(|&v| v >= *order).map(|j| (i, j)))
                {
                    return Err(Error::MalformedSpec(format!(
                        "table[{i}][{j}] = {} is not an element index",
                        table[i][j]
                    )));
                }
                check_associative(table, limit)?;
            }
            SemigroupSpec::Transformations { degree, generators } => {
                if *degree == 0 {
                    return Err(Error::MalformedSpec("transformation degree must be positive".into()));
                }
                if generators.is_empty() {
                    return Err(Error::MalformedSpec("at least one transformation is required".into()));
                }
                for (k, g) in generators.iter().enumerate() {
                    if g.len() != *degree || g.iter().any(|&v| v >= *degree) {
                        return Err(Error::MalformedSpec(format!(
                            "generator {k} is not a map of {{0..{}}}",
                            degree - 1
                        )));
                    }
                }
            }
            SemigroupSpec::Free { rank } => {
                if *rank == 0 {
                    return Err(Error::MalformedSpec("free rank must be positive".into()));
                }
            }
            SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero => {}
        }
        Ok(Semigroup {
            spec,
            elements: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &SemigroupSpec {
        &self.spec
    }

    pub fn kind_name(&self) -> &'static str {
        match self.spec {
            SemigroupSpec::CayleyTable { .. } => "cayley_table",
            SemigroupSpec::Transformations { .. } => "transformations",
            SemigroupSpec::Free { .. } => "free",
            SemigroupSpec::NaturalsAdditive => "naturals_additive",
            SemigroupSpec::LeftZero => "left_zero",
        }
    }

    /// Free, additive naturals and left-zero are infinite by their rule.
    pub fn is_infinite_by_construction(&self) -> bool {
        matches!(
            self.spec,
            SemigroupSpec::Free { .. } | SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero
        )
    }

    /// All elements, for the finite kinds.
    pub fn elements(&self) -> Option<&[Element]> {
        match &self.spec {
            SemigroupSpec::CayleyTable { order, .. } => Some(
                self.elements
                    .get_or_init(|| (0..*order).map(Element::Index).collect())
                    .as_slice(),
            ),
            SemigroupSpec::Transformations { generators, .. } => Some(
                self.elements
                    .get_or_init(|| {
                        let seeds: Vec<Element> = generators.iter().cloned().map(Element::Map).collect();
                        match self.closure(&seeds, usize::MAX) {
                            Ok(ClosureResult::Finite(e)) => e,
                            _ => unreachable!("transformation semigroups are finite"),
                        }
                    })
                    .as_slice(),
            ),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(<[Element]>::len)
    }

    /// Default generating sequence: every table element, the transformation
    /// generators, the letters of a free semigroup, or the rule `s_n = n`.
    pub fn default_generators(&self) -> GeneratorList {
        match &self.spec {
            SemigroupSpec::CayleyTable { order, .. } => GeneratorList::listed((0..*order).map(Element::Index)),
            SemigroupSpec::Transformations { generators, .. } => {
                GeneratorList::listed(generators.iter().cloned().map(Element::Map))
            }
            SemigroupSpec::Free { rank } => GeneratorList::listed((1..=*rank).map(|l| Element::Word(vec![l]))),
            SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero => GeneratorList::sequence(),
        }
    }

    /// Checks that `x` is a valid element for this semigroup.
    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = match (&self.spec, x) {
            (SemigroupSpec::CayleyTable { order, .. }, Element::Index(i)) => i < order,
            (SemigroupSpec::Transformations { degree, .. }, Element::Map(m)) => {
                m.len() == *degree && m.iter().all(|v| v < degree)
            }
            (SemigroupSpec::Free { rank }, Element::Word(w)) => {
                !w.is_empty() && w.iter().all(|&l| (1..=*rank).contains(&l))
            }
            (SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero, Element::Natural(n)) => *n >= 1,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                element: x.clone(),
                kind: self.kind_name(),
            })
        }
    }

    pub fn check_generators(&self, gens: &GeneratorList) -> Result<()> {
        match gens {
            GeneratorList::Listed(list) => {
                if list.is_empty() {
                    return Err(Error::validation("generators", "generator list is empty"));
                }
                list.iter().try_for_each(|g| self.check(g))
            }
            GeneratorList::Sequence { limit } => {
                if !matches!(self.spec, SemigroupSpec::NaturalsAdditive | SemigroupSpec::LeftZero) {
                    return Err(Error::validation(
                        "generators",
                        format!("the rule s_n = n is not available for {}", self.kind_name()),
                    ));
                }
                if *limit == Some(0) {
                    return Err(Error::validation("generators", "generator list is empty"));
                }
                Ok(())
            }
        }
    }

    /// The semigroup product `x y`.
    pub fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of already validated elements.
    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        match (&self.spec, x, y) {
            (SemigroupSpec::CayleyTable { table, .. }, Element::Index(i), Element::Index(j)) => {
                Element::Index(table[*i][*j])
            }
            // x is applied first: (xy)(i) = y(x(i)).
            (SemigroupSpec::Transformations { .. }, Element::Map(a), Element::Map(b)) => {
                Element::Map(a.iter().map(|&i| b[i]).collect())
            }
            (SemigroupSpec::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                Element::Word(w)
            }
            (SemigroupSpec::NaturalsAdditive, Element::Natural(a), Element::Natural(b)) => {
                Element::Natural(a.checked_add(*b).expect("natural number overflow"))
            }
            (SemigroupSpec::LeftZero, Element::Natural(_), Element::Natural(_)) => x.clone(),
            _ => panic!("mul called with unchecked elements {x} and {y}"),
        }
    }

    /// Multiplies out a word of 1-based generator indices.
    pub fn evaluate(&self, gens: &GeneratorList, word: &[usize]) -> Option<Element> {
        let mut it = word.iter();
        let mut acc = gens.get(*it.next()?)?;
        for &n in it {
            acc = self.mul(&acc, &gens.get(n)?);
        }
        Some(acc)
    }

    /// Smallest product-closed superset of `seeds`, explored breadth first.
    ///
    /// Round 0 is the sorted seed set; each further round holds the new
    /// products `x g` (x from the previous round, g a seed) in key order.
    /// Stops with [`ClosureResult::Exhausted`] as soon as more than `budget`
    /// elements would be needed.
    pub fn closure(&self, seeds: &[Element], budget: usize) -> Result<ClosureResult> {
        if seeds.is_empty() {
            return Err(Error::EmptySeeds);
        }
        seeds.iter().try_for_each(|s| self.check(s))?;
        let gens: Vec<Element> = seeds.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if gens.len() > budget {
            return Err(Error::BudgetTooSmall {
                budget,
                seeds: gens.len(),
            });
        }
        let mut seen: HashSet<Element> = gens.iter().cloned().collect();
        let mut elements = gens.clone();
        let mut frontier = 0..elements.len();
        loop {
            let mut next = BTreeSet::new();
            for x in &elements[frontier.clone()] {
                for g in &gens {
                    let p = self.mul(x, g);
                    if !seen.contains(&p) {
                        next.insert(p);
                    }
                }
            }
            if next.is_empty() {
                return Ok(ClosureResult::Finite(elements));
            }
            let start = elements.len();
            for p in next {
                if elements.len() == budget {
                    return Ok(ClosureResult::Exhausted(elements));
                }
                seen.insert(p.clone());
                elements.push(p);
            }
            frontier = start..elements.len();
        }
    }

    /// The subsemigroup generated by `subset`; same procedure as [`Semigroup::closure`].
    pub fn generated_subsemigroup(&self, subset: &[Element], budget: usize) -> Result<ClosureResult> {
        self.closure(subset, budget)
    }

    /// Two-sided identity of a product-closed set, or of the whole semigroup
    /// when `elements` is `None` (answered by rule for the infinite kinds).
    pub fn detect_identity(&self, elements: Option<&[Element]>) -> Result<Option<Element>> {
        let elements = match elements {
            Some(e) => {
                e.iter().try_for_each(|x| self.check(x))?;
                self.check_closed(e)?;
                e
            }
            None => match self.elements() {
                Some(e) => e,
                None => return Ok(None),
            },
        };
        Ok(elements
            .iter()
            .find(|e| elements.iter().all(|x| self.mul(e, x) == *x && self.mul(x, e) == *x))
            .cloned())
    }

    fn check_closed(&self, elements: &[Element]) -> Result<()> {
        let set: HashSet<&Element> = elements.iter().collect();
        for x in elements {
            for y in elements {
                let p = self.mul(x, y);
                if !set.contains(&p) {
                    return Err(Error::NotClosed {
                        x: x.clone(),
                        y: y.clone(),
                        product: p,
                    });
                }
            }
        }
        Ok(())
    }

    /// Cayley table of a product-closed set, indexed by position in `elements`.
    pub fn to_cayley_table(&self, elements: &[Element]) -> Result<SemigroupSpec> {
        elements.iter().try_for_each(|x| self.check(x))?;
        self.check_closed(elements)?;
        let index: HashMap<&Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&self.mul(x, y)]).collect())
            .collect();
        Ok(SemigroupSpec::CayleyTable {
            order: elements.len(),
            table,
        })
    }

    /// Every element that can be a left factor of some target. For the
    /// infinite kinds this set is finite, which lets length computations for
    /// fixed targets terminate even with zero weights.
    pub(crate) fn left_divisors(&self, targets: &[Element]) -> DivisorFilter {
        match &self.spec {
            SemigroupSpec::Free { .. } => DivisorFilter::Set(
                targets
                    .iter()
                    .flat_map(|t| match t {
                        Element::Word(w) => (1..=w.len()).map(|k| Element::Word(w[..k].to_vec())).collect(),
                        _ => Vec::new(),
                    })
                    .collect(),
            ),
            SemigroupSpec::NaturalsAdditive => DivisorFilter::UpTo(
                targets
                    .iter()
                    .filter_map(|t| match t {
                        Element::Natural(n) => Some(*n),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0),
            ),
            SemigroupSpec::LeftZero => DivisorFilter::Set(targets.iter().cloned().collect()),
            _ => DivisorFilter::All,
        }
    }
}

fn check_associative(table: &[Vec<usize>], limit: usize) -> Result<()> {
    let n = table.len();
    let violates = |x: usize, y: usize, z: usize| table[table[x][y]][z] != table[x][table[y][z]];
    if n <= limit {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if violates(x, y, z) {
                        return Err(Error::NonAssociativeTable { x, y, z });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if violates(x, y, z) {
                return Err(Error::NonAssociativeTable { x, y, z });
            }
        }
    }
    Ok(())
}
