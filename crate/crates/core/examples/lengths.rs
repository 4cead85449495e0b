//! Weighted word lengths: best-first search against exhaustive enumeration.

use semigroup_envelope::length::{brute_force_length, check_subadditivity};
use semigroup_envelope::{length_table, Cost, Element, GeneratorList, Semigroup, SemigroupSpec, WeightFunction};

fn main() -> semigroup_envelope::Result<()> {
    let free = Semigroup::new(SemigroupSpec::Free { rank: 2 })?;
    let w = WeightFunction::explicit_integers(&[1, 2])?;
    let table = length_table(&free, &free.default_generators(), &w, 4.0, 1000)?;
    println!("free rank 2, F = (1, 2), radius 4: {} words", table.len());
    for e in table.entries().iter().take(8) {
        println!("  l({}) = {}  via {:?}", e.element, e.length, e.witness);
    }

    let nat = Semigroup::new(SemigroupSpec::NaturalsAdditive)?;
    let f = WeightFunction::affine(Cost::integer(2), Cost::integer(1))?;
    let t = length_table(&nat, &GeneratorList::sequence(), &f, 20.0, 10_000)?;
    let four = Element::Natural(4);
    let brute = brute_force_length(&nat, &GeneratorList::sequence(), &f, &four, 4, 4)?;
    let show = |c: Option<Cost>| c.map_or("undefined".to_string(), |c| c.to_string());
    println!("naturals, F(n) = 2n + 1: l(4) = {}, brute force {}", show(t.length(&four)), show(brute));
    println!("subadditivity violations: {}", check_subadditivity(&t, &nat).len());
    Ok(())
}
