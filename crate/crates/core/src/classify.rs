//! Evidence-based placement of a semigroup in the trichotomy
//! finite / finitely generated infinite / locally finite infinite, labelled
//! with the matching envelope type (Banach / Fréchet / (DF)).
//!
//! None of this is a decision procedure: budgets bound every search and an
//! exhausted closure is only a hint of infiniteness.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, GeneratorList};
use crate::error::Result;
use crate::length::{length_table, length_table_for};
use crate::normspace::{comparison_constants, Base, NormComparison};
use crate::semigroup::{ClosureResult, Semigroup};
use crate::weight::{Cost, WeightFunction};

/// Radii `1..=GROWTH_RADII` are sampled for the growth profile.
pub const GROWTH_RADII: usize = 8;
/// Rule-defined generator sequences are scanned this far for redundancy.
pub const GENERATOR_SCAN: usize = 32;
/// Largest random probe subset.
pub const MAX_PROBE_SIZE: usize = 10;

pub const DISCLAIMER: &str =
    "evidence from bounded enumeration; not a decision procedure and not a proof of the topological type";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Finite { order: usize },
    FinitelyGeneratedInfiniteEvidence,
    LocallyFiniteEvidence,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Finite { .. } => "finite",
            Verdict::FinitelyGeneratedInfiniteEvidence => "finitely_generated_infinite_evidence",
            Verdict::LocallyFiniteEvidence => "locally_finite_evidence",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Envelope type attached to the verdict.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Finite { .. } => "Banach-type: all weighted l1 norms are equivalent",
            Verdict::FinitelyGeneratedInfiniteEvidence => "Frechet-type, not (DF)",
            Verdict::LocallyFiniteEvidence => "(DF)-type, not Frechet",
            Verdict::Inconclusive => "no label",
        }
    }
}

/// Closure outcome for one probed subset.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub subset: Vec<Element>,
    pub outcome: ClosureResult,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub radius: f64,
    pub size: usize,
    /// False when the count is only a lower bound.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Finite generating set used for the growth profile, if one was found.
    pub generators_used: Option<Vec<Element>>,
    /// Size of the closure of the whole generating set and whether it closed.
    pub global_closure: (usize, bool),
    pub evidence: Vec<Probe>,
    pub growth: Vec<GrowthRow>,
    pub norm_equivalence: Option<NormComparison>,
    pub infinite_by_construction: bool,
    pub seed: u64,
    pub disclaimer: &'static str,
}

/// Closes every subset within `budget`.
pub fn local_finiteness_probe(oracle: &Semigroup, subsets: &[Vec<Element>], budget: usize) -> Result<Vec<Probe>> {
    subsets
        .iter()
        .map(|subset| {
            Ok(Probe {
                subset: subset.clone(),
                outcome: oracle.generated_subsemigroup(subset, budget)?,
                budget,
            })
        })
        .collect()
}

/// `count` random subsets of `pool`, each of size `1..=max_size`, drawn
/// from a ChaCha8 stream seeded with `seed`.
pub fn random_subsets(pool: &[Element], count: usize, max_size: usize, seed: u64) -> Vec<Vec<Element>> {
    if pool.is_empty() || max_size == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(pool.len()));
            sample(&mut rng, pool.len(), size).into_iter().map(|i| pool[i].clone()).collect()
        })
        .collect()
}

/// Ball sizes `|{ s : l_F(s) <= R }|` for each radius, from one table at the
/// largest radius.
pub fn growth_profile(
    oracle: &Semigroup,
    gens: &GeneratorList,
    weight: &WeightFunction,
    radii: &[f64],
    budget: usize,
) -> Result<Vec<GrowthRow>> {
    let max = radii.iter().copied().fold(0.0f64, f64::max);
    let table = length_table(oracle, gens, weight, max, budget)?;
    Ok(radii
        .iter()
        .map(|&r| GrowthRow {
            radius: r,
            size: table.ball_size(r),
            complete: table.complete_below(r),
        })
        .collect())
}

/// Thins a rule-defined sequence: keeps `s_n` only if it is not generated by
/// `s_1..s_{n-1}`. Returns the kept generators when the second half of the
/// scan contributed nothing new.
fn apparent_finite_generators(oracle: &Semigroup, gens: &GeneratorList, budget: usize) -> Result<Option<Vec<Element>>> {
    if let Some(n) = gens.len() {
        return Ok(Some(gens.prefix(n)));
    }
    let unit = WeightFunction::constant(Cost::integer(1))?;
    let mut kept = Vec::new();
    let mut last_new = 0;
    for n in 1..=GENERATOR_SCAN {
        let g = gens.get(n).expect("infinite sequence");
        let redundant = n > 1 && {
            let earlier = gens.truncated(n - 1);
            length_table_for(oracle, &earlier, &unit, std::slice::from_ref(&g), budget)?.contains(&g)
        };
        if !redundant {
            kept.push(g);
            last_new = n;
        }
    }
    Ok((last_new <= GENERATOR_SCAN / 2).then_some(kept))
}

fn strictly_growing(rows: &[GrowthRow]) -> bool {
    if rows.is_empty() {
        return false;
    }
    rows.windows(2)
        .all(|w| !w[1].complete || (w[0].complete && w[1].size > w[0].size))
}

/// Runs the full closure, a unit-weight growth profile and `probes` random
/// subset closures, then maps the outcomes to a verdict.
pub fn desk_classify(
    oracle: &Semigroup,
    gens: &GeneratorList,
    budget: usize,
    probes: usize,
    seed: u64,
) -> Result<ClassificationReport> {
    oracle.check_generators(gens)?;
    let finite_gens = apparent_finite_generators(oracle, gens, budget)?;

    let global = match &finite_gens {
        Some(list) if list.len() <= budget => Some(oracle.closure(list, budget)?),
        _ => None,
    };
    let global_closure = match &global {
        Some(r) => (r.elements().len(), r.is_finite()),
        None => (budget, false),
    };

    let radii: Vec<f64> = (1..=GROWTH_RADII).map(|r| r as f64).collect();
    let (growth_gens, growth_weight) = match &finite_gens {
        Some(list) => (
            GeneratorList::Listed(list.clone()),
            WeightFunction::constant(Cost::integer(1))?,
        ),
        // Unit weights give no finite balls on an infinite sequence.
        None => (gens.clone(), WeightFunction::identity()),
    };
    let max_radius = GROWTH_RADII as f64;
    let ball = length_table(oracle, &growth_gens, &growth_weight, max_radius, budget)?;
    let growth: Vec<GrowthRow> = radii
        .iter()
        .map(|&r| GrowthRow {
            radius: r,
            size: ball.ball_size(r),
            complete: ball.complete_below(r),
        })
        .collect();

    let mut pool: Vec<Element> = ball.elements().cloned().collect();
    if !gens.is_finite() {
        for g in gens.prefix(64) {
            if !ball.contains(&g) {
                pool.push(g);
            }
        }
    }
    let subsets = random_subsets(&pool, probes, MAX_PROBE_SIZE.min(budget), seed);
    let evidence = local_finiteness_probe(oracle, &subsets, budget)?;

    let mut norm_equivalence = None;
    let verdict = match (&global, &finite_gens) {
        (Some(ClosureResult::Finite(elements)), Some(list)) => {
            let listed = GeneratorList::Listed(list.clone());
            let zeros = WeightFunction::explicit(vec![Cost::zero(); list.len()])?;
            let ones = WeightFunction::explicit(vec![Cost::integer(1); list.len()])?;
            let t1 = length_table(oracle, &listed, &zeros, f64::INFINITY, budget)?;
            let t2 = length_table(oracle, &listed, &ones, f64::INFINITY, budget)?;
            norm_equivalence = comparison_constants(&t1, &t2, Base::E).ok();
            Verdict::Finite { order: elements.len() }
        }
        _ => {
            let all_finite = evidence.iter().all(|p| p.outcome.is_finite());
            let any_exhausted = evidence.iter().any(|p| !p.outcome.is_finite());
            if finite_gens.is_some() && strictly_growing(&growth) && any_exhausted {
                Verdict::FinitelyGeneratedInfiniteEvidence
            } else if all_finite && !evidence.is_empty() {
                Verdict::LocallyFiniteEvidence
            } else {
                Verdict::Inconclusive
            }
        }
    };

    Ok(ClassificationReport {
        verdict,
        generators_used: finite_gens,
        global_closure,
        evidence,
        growth,
        norm_equivalence,
        infinite_by_construction: oracle.is_infinite_by_construction(),
        seed,
        disclaimer: DISCLAIMER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupSpec;

    #[test]
    fn naturals_thin_to_one_generator() {
        let n = Semigroup::new(SemigroupSpec::NaturalsAdditive).unwrap();
        let kept = apparent_finite_generators(&n, &GeneratorList::sequence(), 1000).unwrap();
        assert_eq!(kept, Some(vec![Element::Natural(1)]));
    }

    #[test]
    fn left_zero_keeps_every_generator() {
        let lz = Semigroup::new(SemigroupSpec::LeftZero).unwrap();
        assert_eq!(apparent_finite_generators(&lz, &GeneratorList::sequence(), 1000).unwrap(), None);
    }

    #[test]
    fn growth_of_z3() {
        let z3 = Semigroup::new(SemigroupSpec::cyclic_group(3)).unwrap();
        let gens = GeneratorList::listed([Element::Index(1)]);
        let w = WeightFunction::explicit_integers(&[1]).unwrap();
        let rows = growth_profile(&z3, &gens, &w, &[1.0, 2.0, 3.0, 4.0, 5.0], 100).unwrap();
        let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        assert_eq!(sizes, vec![1, 2, 3, 3, 3]);
    }

    #[test]
    fn growth_check() {
        let row = |size, complete| GrowthRow { radius: 0.0, size, complete };
        assert!(strictly_growing(&[row(1, true), row(2, true), row(5, false)]));
        assert!(!strictly_growing(&[row(1, true), row(2, true), row(2, true)]));
    }
}
