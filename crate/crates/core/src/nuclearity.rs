//! Finite witnesses for nuclearity of the envelope.
//!
//! For an integer weight `F1` the staircase `F2(n) = F1(n) + n` makes the
//! canonical map between the completed normed algebras nuclear, witnessed by
//! `sum_s e^{l_F1(s) - l_F2(s)} < inf`. The defect `l_F2(s) - l_F1(s)` is a
//! positive integer bounded below by the index sum of any `F2`-optimal
//! factorization, so the class `C_n` of elements with defect `n` injects into
//! compositions of numbers `<= n` and has at most `2^n - 1` members.
//!
//! Everything here is computed on a finite ball. Census counts are lower
//! bounds for the true `|C_n|`, and the report is a witness, not a proof.

use std::collections::{BTreeMap, HashSet};

use crate::element::{Element, GeneratorList};
use crate::error::{Error, Result};
use crate::length::{length_table, length_table_for, LengthTable};
use crate::semigroup::Semigroup;
use crate::weight::{Cost, WeightFunction, TOLERANCE};

/// `F2(n) = F1(n) + n`, for integer-valued `F1`.
pub fn staircase(f1: &WeightFunction) -> Result<WeightFunction> {
    f1.validate()?;
    if !f1.is_integer_valued() {
        return Err(Error::NotIntegerValued);
    }
    Ok(WeightFunction::staircase_of(f1.clone()))
}

/// Number of compositions of `j`, i.e. `2^{j-1}`, for `1 <= j <= 62`.
pub fn compositions_count(j: u64) -> Result<u64> {
    if !(1..=62).contains(&j) {
        return Err(Error::OutOfRange(j));
    }
    Ok(1u64 << (j - 1))
}

/// Number of finite sequences of positive integers with sum at most `n`,
/// i.e. `2^n - 1`, for `1 <= n <= 62`.
pub fn bounded_compositions_count(n: u64) -> Result<u64> {
    if !(1..=62).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    Ok((1u64 << n) - 1)
}

/// `sum_{n >= 1} 2^n e^{-n} = 2 / (e - 2)`.
pub fn nuclear_sum_bound() -> f64 {
    2.0 / (std::f64::consts::E - 2.0)
}

/// One row of the defect census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub defect: u64,
    /// Elements of the ball with this defect; a lower bound on `|C_n|`.
    pub count: u64,
    /// `2^n - 1`, or `None` when it does not fit in 64 bits.
    pub bound: Option<u64>,
}

impl CensusRow {
    pub fn within_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.count <= b)
    }
}

/// Per-element data of the census.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectWitness {
    pub element: Element,
    pub length_f1: Cost,
    pub length_f2: Cost,
    pub defect: u64,
    /// `F2`-optimal factorization.
    pub witness: Vec<usize>,
    /// Sum of the indices in `witness`.
    pub index_sum: u64,
    /// `||chi_s||' = e^{-l_F2(s)}`.
    pub dual_weight: f64,
    /// `||delta_s|| = e^{l_F1(s)}`.
    pub primal_weight: f64,
}

/// A failed check in a [`NuclearityReport`].
#[derive(Debug, Clone, PartialEq)]
pub enum CensusViolation {
    /// `|C_n| > 2^n - 1`.
    CensusBound { defect: u64, count: u64 },
    /// Defect smaller than the index sum of the `F2`-optimal witness.
    DefectBelowIndexSum { element: Element, defect: u64, index_sum: u64 },
    /// Two elements share an `F2`-optimal witness.
    WitnessCollision { first: Element, second: Element },
    /// Partial sum above `2 / (e - 2)`.
    SumAboveBound { sum: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NuclearityReport {
    pub f1: WeightFunction,
    pub f2: WeightFunction,
    /// `l_F2`-radius of the ball.
    pub radius: Option<f64>,
    pub census: Vec<CensusRow>,
    pub witnesses: Vec<DefectWitness>,
    /// `sum_s ||chi_s||' ||delta_s||` over the ball.
    pub partial_nuclear_sum: f64,
    pub geometric_bound: f64,
    pub violations: Vec<CensusViolation>,
}

impl NuclearityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of ball elements with defect `n`.
    pub fn census_count(&self, n: u64) -> u64 {
        self.census
            .iter()
            .find(|r| r.defect == n)
            .map_or(0, |r| r.count)
    }
}

/// Groups the elements of the `F2` ball by defect and checks every bound.
///
/// `second` must be complete and built with `F2 = staircase(F1)`; `first`
/// must hold exact `l_F1` values for all of its elements (see
/// [`length_table_for`]).
pub fn defect_census(first: &LengthTable, second: &LengthTable) -> Result<NuclearityReport> {
    let f1 = first.weight();
    if !f1.is_integer_valued() {
        return Err(Error::NotIntegerValued);
    }
    if *second.weight() != WeightFunction::staircase_of(f1.clone()) {
        return Err(Error::WeightMismatch);
    }
    if first.generators() != second.generators() {
        return Err(Error::GeneratorMismatch);
    }
    if !second.is_complete() {
        return Err(Error::NotComplete);
    }

    let mut witnesses = Vec::with_capacity(second.len());
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut seen_words: BTreeMap<&[usize], &Element> = BTreeMap::new();

    for e in second.entries() {
        let l1 = first
            .length(&e.element)
            .ok_or_else(|| Error::SupportOutsideBall(e.element.clone()))?;
        let gap = e.length - l1;
        let defect = gap.as_integer().ok_or_else(|| Error::NonIntegerDefect {
            element: e.element.clone(),
        })?;
        if defect <= 0 {
            return Err(Error::NonPositiveDefect {
                element: e.element.clone(),
            });
        }
        let defect = defect as u64;
        let index_sum: u64 = e.witness.iter().map(|&n| n as u64).sum();
        if defect < index_sum {
            violations.push(CensusViolation::DefectBelowIndexSum {
                element: e.element.clone(),
                defect,
                index_sum,
            });
        }
        if let Some(prev) = seen_words.insert(&e.witness, &e.element) {
            violations.push(CensusViolation::WitnessCollision {
                first: prev.clone(),
                second: e.element.clone(),
            });
        }
        *counts.entry(defect).or_default() += 1;
        witnesses.push(DefectWitness {
            element: e.element.clone(),
            length_f1: l1,
            length_f2: e.length,
            defect,
            witness: e.witness.clone(),
            index_sum,
            dual_weight: (-e.length.to_f64()).exp(),
            primal_weight: l1.to_f64().exp(),
        });
    }

    let census: Vec<CensusRow> = counts
        .into_iter()
        .map(|(defect, count)| CensusRow {
            defect,
            count,
            bound: bounded_compositions_count(defect).ok(),
        })
        .collect();
    for row in &census {
        if !row.within_bound() {
            violations.push(CensusViolation::CensusBound {
                defect: row.defect,
                count: row.count,
            });
        }
    }

    // largest terms first
    let mut terms: Vec<f64> = witnesses
        .iter()
        .map(|w| (w.length_f1.to_f64() - w.length_f2.to_f64()).exp())
        .collect();
    terms.sort_by(|a, b| b.total_cmp(a));
    let partial_nuclear_sum = crate::normspace::compensated_sum(terms);
    let geometric_bound = nuclear_sum_bound();
    if partial_nuclear_sum > geometric_bound + TOLERANCE {
        violations.push(CensusViolation::SumAboveBound {
            sum: partial_nuclear_sum,
        });
    }

    Ok(NuclearityReport {
        f1: f1.clone(),
        f2: second.weight().clone(),
        radius: second.radius(),
        census,
        witnesses,
        partial_nuclear_sum,
        geometric_bound,
        violations,
    })
}

/// Builds both tables and runs [`defect_census`]: the `F2` ball of the given
/// radius, then exact `l_F1` on its elements.
pub fn nuclearity_witness(
    oracle: &Semigroup,
    gens: &GeneratorList,
    f1: &WeightFunction,
    radius: f64,
    budget: usize,
) -> Result<NuclearityReport> {
    let f2 = staircase(f1)?;
    let second = length_table(oracle, gens, &f2, radius, budget)?;
    if !second.is_complete() {
        return Err(Error::NotComplete);
    }
    let targets: Vec<Element> = second.elements().cloned().collect();
    let first = length_table_for(oracle, gens, f1, &targets, budget)?;
    let settled: HashSet<&Element> = first.elements().collect();
    if let Some(missing) = targets.iter().find(|t| !settled.contains(t)) {
        return Err(Error::SupportOutsideBall(missing.clone()));
    }
    defect_census(&first, &second)
}
