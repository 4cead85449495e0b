#![allow(dead_code)]

use rand::Rng;
use semigroup_envelope::{Element, GeneratorList, Semigroup, SemigroupSpec};

/// A random finite semigroup of order at most `max_order`, as a Cayley table.
///
/// Built as the closure of one to three random maps on two or three points,
/// so associativity holds by construction.
pub fn random_small_semigroup(rng: &mut impl Rng, max_order: usize) -> (Semigroup, Vec<Vec<usize>>) {
    loop {
        let degree = rng.gen_range(2..=3);
        let count = rng.gen_range(1..=3);
        let generators: Vec<Vec<usize>> = (0..count)
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
            .collect();
        let t = Semigroup::new(SemigroupSpec::Transformations { degree, generators }).unwrap();
        let elements = t.elements().unwrap().to_vec();
        if elements.len() > max_order {
            continue;
        }
        let spec = t.to_cayley_table(&elements).unwrap();
        let SemigroupSpec::CayleyTable { table, .. } = &spec else {
            unreachable!()
        };
        let table = table.clone();
        return (Semigroup::new(spec).unwrap(), table);
    }
}

/// A nonempty random subset of `0..order`, as index elements in ascending order.
pub fn random_generators(rng: &mut impl Rng, order: usize) -> Vec<usize> {
    loop {
        let picked: Vec<usize> = (0..order).filter(|_| rng.gen_bool(0.4)).collect();
        if !picked.is_empty() {
            return picked;
        }
    }
}

pub fn listed(indices: &[usize]) -> GeneratorList {
    GeneratorList::listed(indices.iter().map(|&i| Element::Index(i)))
}

/// Shortest weighted words by plain relaxation on the Cayley table:
/// `d(g_i) <= F(i)` and `d(s g_i) <= d(s) + F(i)` until nothing changes.
pub fn relaxed_lengths(table: &[Vec<usize>], gens: &[usize], weights: &[i64]) -> Vec<Option<i64>> {
    let mut d: Vec<Option<i64>> = vec![None; table.len()];
    for (i, &g) in gens.iter().enumerate() {
        d[g] = Some(d[g].map_or(weights[i], |v| v.min(weights[i])));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for s in 0..table.len() {
            let Some(ds) = d[s] else { continue };
            for (i, &g) in gens.iter().enumerate() {
                let p = table[s][g];
                let cand = ds + weights[i];
                if d[p].is_none_or(|v| cand < v) {
                    d[p] = Some(cand);
                    changed = true;
                }
            }
        }
    }
    d
}

/// All compositions of `j` (ordered sequences of positive integers summing to `j`).
pub fn compositions(j: u64) -> Vec<Vec<u64>> {
    if j == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=j {
        for mut rest in compositions(j - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn fibonacci_census(n: usize) -> Vec<u64> {
    let mut c = vec![1u64, 2];
    while c.len() < n {
        let k = c.len();
        c.push(c[k - 1] + c[k - 2]);
    }
    c.truncate(n);
    c
}
