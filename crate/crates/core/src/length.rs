//! Weighted word lengths
//!
//! `l_F(s) = inf { F(n_1) + ... + F(n_m) : s = s_{n_1} ... s_{n_m} }`
//!
//! computed by best-first search over the right Cayley graph: every generator
//! `s_n` starts at cost `F(n)`, elements are settled in non-decreasing cost
//! order (ties broken by element key, then by witness), and a settled `s`
//! relaxes `s s_n` at cost `+ F(n)`. With non-negative weights a settled cost
//! is the exact infimum and the recorded witness attains it.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::element::{Element, GeneratorList};
use crate::error::{Error, Result};
use crate::semigroup::{DivisorFilter, Semigroup};
use crate::weight::{Cost, WeightFunction, TOLERANCE};

/// Upper limit on the number of words [`brute_force_length`] will visit.
pub const MAX_BRUTE_FORCE_WORDS: u128 = 10_000_000;

/// One settled element of a [`LengthTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub element: Element,
    pub length: Cost,
    /// Optimal factorization as 1-based generator indices.
    pub witness: Vec<usize>,
}

/// Settled elements of a ball `{ s : l_F(s) <= radius }` in settling order.
#[derive(Debug, Clone)]
pub struct LengthTable {
    weight: WeightFunction,
    generators: GeneratorList,
    radius: Option<f64>,
    entries: Vec<Entry>,
    index: HashMap<Element, usize>,
    complete: bool,
    frontier: Option<Cost>,
}

impl LengthTable {
    /// A table from hand-supplied entries, marked complete. Mainly useful for
    /// feeding the diagnostics with constructed inputs.
    pub fn from_entries(weight: WeightFunction, generators: GeneratorList, entries: Vec<Entry>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.element.clone(), i))
            .collect();
        LengthTable {
            weight,
            generators,
            radius: None,
            entries,
            index,
            complete: true,
            frontier: None,
        }
    }

    pub fn weight(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn generators(&self) -> &GeneratorList {
        &self.generators
    }

    /// Radius of the ball, `None` for tables built around fixed targets.
    pub fn radius(&self) -> Option<f64> {
        self.radius
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().map(|e| &e.element)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: &Element) -> Option<&Entry> {
        self.index.get(s).map(|&i| &self.entries[i])
    }

    /// `l_F(s)` if `s` was settled. `None` means unknown: the value lies
    /// beyond the radius or the search stopped early; it is never extrapolated.
    pub fn length(&self, s: &Element) -> Option<Cost> {
        self.get(s).map(|e| e.length)
    }

    pub fn contains(&self, s: &Element) -> bool {
        self.index.contains_key(s)
    }

    /// Whether every element of the ball (or every target) was settled.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Cost of the cheapest unsettled candidate when the search stopped early.
    pub fn frontier(&self) -> Option<Cost> {
        self.frontier
    }

    /// Whether the sub-ball of radius `r` is fully enumerated.
    pub fn complete_below(&self, r: f64) -> bool {
        match self.frontier {
            None => self.complete,
            Some(c) => c.to_f64() > r + TOLERANCE,
        }
    }

    /// Number of settled elements with `l_F(s) <= r`.
    pub fn ball_size(&self, r: f64) -> usize {
        self.entries.iter().filter(|e| e.length.within(r)).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pending {
    cost: Cost,
    element: Element,
    witness: Vec<usize>,
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost
            .cmp(&other.cost)
            .then_with(|| self.element.cmp(&other.element))
            .then_with(|| {
                self.witness
                    .len()
                    .cmp(&other.witness.len())
                    .then_with(|| self.witness.cmp(&other.witness))
            })
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Search<'a> {
    oracle: &'a Semigroup,
    moves: Vec<(usize, Element, Cost)>,
    radius: f64,
    filter: DivisorFilter,
    budget: usize,
}

struct Settled {
    entries: Vec<Entry>,
    index: HashMap<Element, usize>,
    stopped_at: Option<Cost>,
}

impl Search<'_> {
    fn run(self) -> Settled {
        let mut heap = BinaryHeap::new();
        let mut best: HashMap<Element, Cost> = HashMap::new();
        for (n, g, w) in &self.moves {
            if self.filter.admits(g) && best.get(g).is_none_or(|b| *w <= *b) {
                best.insert(g.clone(), *w);
                heap.push(Reverse(Pending {
                    cost: *w,
                    element: g.clone(),
                    witness: vec![*n],
                }));
            }
        }
        let mut entries: Vec<Entry> = Vec::new();
        let mut index: HashMap<Element, usize> = HashMap::new();
        let mut stopped_at = None;
        while let Some(Reverse(p)) = heap.pop() {
            if index.contains_key(&p.element) {
                continue;
            }
            if entries.len() == self.budget {
                stopped_at = Some(p.cost);
                break;
            }
            for (n, g, w) in &self.moves {
                let cost = p.cost + *w;
                if !cost.within(self.radius) {
                    continue;
                }
                let q = self.oracle.mul(&p.element, g);
                if index.contains_key(&q) || q == p.element || !self.filter.admits(&q) {
                    continue;
                }
                if best.get(&q).is_some_and(|b| cost > *b) {
                    continue;
                }
                best.insert(q.clone(), cost);
                let mut witness = p.witness.clone();
                witness.push(*n);
                heap.push(Reverse(Pending {
                    cost,
                    element: q,
                    witness,
                }));
            }
            index.insert(p.element.clone(), entries.len());
            entries.push(Entry {
                element: p.element,
                length: p.cost,
                witness: p.witness,
            });
        }
        Settled {
            entries,
            index,
            stopped_at,
        }
    }
}

fn check_inputs(oracle: &Semigroup, gens: &GeneratorList, weight: &WeightFunction) -> Result<()> {
    oracle.check_generators(gens)?;
    weight.validate()?;
    if let (Some(g), Some(w)) = (gens.len(), weight.defined_len()) {
        if w < g {
            return Err(Error::WeightUndefined(w + 1));
        }
    }
    Ok(())
}

fn moves(gens: &GeneratorList, weight: &WeightFunction, upto: usize, radius: f64) -> Vec<(usize, Element, Cost)> {
    (1..=upto)
        .filter_map(|n| {
            let w = weight.eval(n)?;
            let g = gens.get(n)?;
            w.within(radius).then_some((n, g, w))
        })
        .collect()
}

/// The ball of radius `radius` for `l_F`, settling at most `budget` elements.
///
/// If infinitely many generators have weight within the radius, only the
/// first `budget` of them are used and the table is marked incomplete; when
/// those weights are zero the ball cannot be enumerated at all and
/// [`Error::ZeroWeightOnInfinite`] is returned. Running out of budget is not
/// an error: it is reported through [`LengthTable::is_complete`].
pub fn length_table(
    oracle: &Semigroup,
    gens: &GeneratorList,
    weight: &WeightFunction,
    radius: f64,
    budget: usize,
) -> Result<LengthTable> {
    check_inputs(oracle, gens, weight)?;
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::validation("radius", format!("{radius} is not a non-negative real")));
    }
    let (upto, truncated) = match (gens.len(), weight.index_bound(radius)) {
        (Some(g), Some(w)) => (g.min(w), false),
        (Some(g), None) => (g, false),
        (None, Some(w)) => (w, false),
        (None, None) => {
            if weight.has_zero(None) {
                return Err(Error::ZeroWeightOnInfinite);
            }
            (budget, true)
        }
    };
    let settled = Search {
        oracle,
        moves: moves(gens, weight, upto, radius),
        radius,
        filter: DivisorFilter::All,
        budget,
    }
    .run();
    Ok(LengthTable {
        weight: weight.clone(),
        generators: gens.clone(),
        radius: Some(radius),
        complete: !truncated && settled.stopped_at.is_none(),
        frontier: settled.stopped_at,
        entries: settled.entries,
        index: settled.index,
    })
}

/// Exact `l_F` on a fixed set of targets, with no radius.
///
/// Only left factors of the targets are explored, which is a finite set for
/// every built-in infinite kind, so zero weights are fine here. Every prefix
/// of a factorization of a target is such a left factor, hence the settled
/// values are the true infima. The table is complete when every target
/// reachable from the generators was settled within `budget`.
pub fn length_table_for(
    oracle: &Semigroup,
    gens: &GeneratorList,
    weight: &WeightFunction,
    targets: &[Element],
    budget: usize,
) -> Result<LengthTable> {
    check_inputs(oracle, gens, weight)?;
    targets.iter().try_for_each(|t| oracle.check(t))?;
    let filter = oracle.left_divisors(targets);
    let upto = match gens.len() {
        Some(g) => g,
        None => filter.sequence_bound().ok_or(Error::ZeroWeightOnInfinite)?,
    };
    let settled = Search {
        oracle,
        moves: moves(gens, weight, upto, f64::INFINITY),
        radius: f64::INFINITY,
        filter,
        budget,
    }
    .run();
    Ok(LengthTable {
        weight: weight.clone(),
        generators: gens.clone(),
        radius: None,
        complete: settled.stopped_at.is_none(),
        frontier: settled.stopped_at,
        entries: settled.entries,
        index: settled.index,
    })
}

/// Minimum of `F(n_1) + ... + F(n_m)` over every word with `m <= max_factors`
/// and indices `<= max_index` that multiplies out to `s`.
///
/// Plain exhaustive enumeration; kept deliberately separate from the
/// best-first search so the two can check each other.
pub fn brute_force_length(
    oracle: &Semigroup,
    gens: &GeneratorList,
    weight: &WeightFunction,
    s: &Element,
    max_factors: usize,
    max_index: usize,
) -> Result<Option<Cost>> {
    oracle.check(s)?;
    let k = gens.len().map_or(max_index, |g| g.min(max_index));
    let words: u128 = (1..=max_factors as u32).map(|m| (k as u128).saturating_pow(m)).sum();
    if words > MAX_BRUTE_FORCE_WORDS {
        return Err(Error::EnumerationTooLarge {
            words,
            limit: MAX_BRUTE_FORCE_WORDS,
        });
    }
    let letters: Vec<(Element, Cost)> = (1..=k)
        .map(|n| {
            let g = gens.get(n).ok_or(Error::WeightUndefined(n))?;
            oracle.check(&g)?;
            Ok((g, weight.eval(n).ok_or(Error::WeightUndefined(n))?))
        })
        .collect::<Result<_>>()?;

    fn walk(
        oracle: &Semigroup,
        letters: &[(Element, Cost)],
        target: &Element,
        prefix: &Element,
        cost: Cost,
        remaining: usize,
        best: &mut Option<Cost>,
    ) {
        if prefix == target && best.is_none_or(|b| cost < b) {
            *best = Some(cost);
        }
        if remaining == 0 {
            return;
        }
        for (g, w) in letters {
            let next = oracle.mul(prefix, g);
            walk(oracle, letters, target, &next, cost + *w, remaining - 1, best);
        }
    }

    let mut best = None;
    if max_factors > 0 {
        for (g, w) in &letters {
            walk(oracle, &letters, s, g, *w, max_factors - 1, &mut best);
        }
    }
    Ok(best)
}

/// A pair of settled elements breaking `l(st) <= l(s) + l(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubadditivityViolation {
    pub s: Element,
    pub t: Element,
    pub product: Element,
    pub excess: f64,
}

/// Scans every pair of settled elements whose product is settled too.
pub fn check_subadditivity(table: &LengthTable, oracle: &Semigroup) -> Vec<SubadditivityViolation> {
    let mut out = Vec::new();
    for a in table.entries() {
        for b in table.entries() {
            let p = oracle.mul(&a.element, &b.element);
            let Some(lp) = table.length(&p) else { continue };
            let sum = a.length + b.length;
            let violated = if lp.is_exact() && sum.is_exact() {
                lp > sum
            } else {
                lp.to_f64() > sum.to_f64() + TOLERANCE
            };
            if violated {
                out.push(SubadditivityViolation {
                    s: a.element.clone(),
                    t: b.element.clone(),
                    product: p,
                    excess: (lp - sum).to_f64(),
                });
            }
        }
    }
    out
}

/// Result of [`dominating_weight`].
#[derive(Debug, Clone, PartialEq)]
pub struct DominatingWeight {
    /// Non-decreasing, non-negative weight on the thinned generators.
    pub weight: WeightFunction,
    /// Generators `s_n` with `s_n` outside the subsemigroup of the earlier ones.
    pub thinned: GeneratorList,
    /// Original 1-based index of each kept generator.
    pub kept_indices: Vec<usize>,
    /// `|S_n|` after each kept generator.
    pub level_sizes: Vec<usize>,
}

fn checked_phi(phi: &impl Fn(&Element) -> Option<f64>, s: &Element) -> Result<f64> {
    let v = phi(s).ok_or_else(|| Error::PhiUndefined(s.clone()))?;
    if v.is_nan() || v < 1.0 {
        return Err(Error::InvalidPhi {
            element: s.clone(),
            value: v,
        });
    }
    Ok(v)
}

/// A weight `F` with `phi(s) <= e^{l_F(s)}` on `S_depth`.
///
/// Walks the first `depth` generators, drops every `s_n` already in
/// `S_{n-1}` (the subsemigroup generated by the earlier ones), and sets
/// `F(n)` to the running maximum of `ln phi` over `S_n`. Each `S_n` is grown
/// incrementally and must stay within `budget` elements.
pub fn dominating_weight(
    oracle: &Semigroup,
    gens: &GeneratorList,
    phi: impl Fn(&Element) -> Option<f64>,
    depth: usize,
    budget: usize,
) -> Result<DominatingWeight> {
    oracle.check_generators(gens)?;
    let mut seen: HashSet<Element> = HashSet::new();
    let mut elements: Vec<Element> = Vec::new();
    let mut kept: Vec<Element> = Vec::new();
    let mut kept_indices = Vec::new();
    let mut level_sizes = Vec::new();
    let mut values = Vec::new();
    let mut running = 0.0f64;

    for n in 1..=depth {
        let Some(g) = gens.get(n) else { break };
        oracle.check(&g)?;
        if seen.contains(&g) {
            continue;
        }
        kept.push(g.clone());
        // New words either end in g with an old prefix, or extend a new element.
        let mut queue: Vec<Element> = vec![g.clone()];
        queue.extend(elements.iter().map(|e| oracle.mul(e, &g)));
        let mut head = 0;
        let start = elements.len();
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            if !seen.insert(x.clone()) {
                continue;
            }
            if elements.len() == budget {
                return Err(Error::NotLocallyFiniteEvidence { index: n });
            }
            for h in &kept {
                let p = oracle.mul(&x, h);
                if !seen.contains(&p) {
                    queue.push(p);
                }
            }
            elements.push(x);
        }
        for s in &elements[start..] {
            running = running.max(checked_phi(&phi, s)?.ln());
        }
        values.push(Cost::Real(running));
        kept_indices.push(n);
        level_sizes.push(elements.len());
    }
    Ok(DominatingWeight {
        weight: WeightFunction::Explicit(values),
        thinned: GeneratorList::Listed(kept),
        kept_indices,
        level_sizes,
    })
}

/// A settled element with `phi(s) > e^{l_F(s)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationViolation {
    pub element: Element,
    pub phi: f64,
    pub bound: f64,
}

/// Checks `phi(s) <= e^{l_F(s)}` on every settled element, with tolerance
/// `1e-9` absolute or relative to the bound, whichever is larger.
pub fn verify_domination(
    table: &LengthTable,
    phi: impl Fn(&Element) -> Option<f64>,
) -> Result<Vec<DominationViolation>> {
    let mut out = Vec::new();
    for e in table.entries() {
        let v = checked_phi(&phi, &e.element)?;
        let bound = e.length.to_f64().exp();
        if v > bound + TOLERANCE * bound.max(1.0) {
            out.push(DominationViolation {
                element: e.element.clone(),
                phi: v,
                bound,
            });
        }
    }
    Ok(out)
}
