//! A weight F with phi(s) <= e^{l_F(s)}, built from phi and then checked.

use semigroup_envelope::length::{dominating_weight, verify_domination};
use semigroup_envelope::{length_table, Element, GeneratorList, Semigroup, SemigroupSpec};

fn main() -> semigroup_envelope::Result<()> {
    let lz = Semigroup::new(SemigroupSpec::LeftZero)?;
    let phi = |s: &Element| match s {
        Element::Natural(n) => Some((*n as f64).powi(2)),
        _ => None,
    };
    let d = dominating_weight(&lz, &GeneratorList::sequence(), phi, 1000, 100_000)?;
    for n in [1, 2, 10, 100, 1000] {
        println!("F({n}) = {:.6}", d.weight.eval(n).unwrap().to_f64());
    }
    let radius = d.weight.eval(1000).unwrap().to_f64();
    let table = length_table(&lz, &d.thinned, &d.weight, radius, 100_000)?;
    println!("violations over {} elements: {}", table.len(), verify_domination(&table, phi)?.len());

    // the naturals are not locally finite, so the first closure never ends
    let nat = Semigroup::new(SemigroupSpec::NaturalsAdditive)?;
    let d = dominating_weight(&nat, &GeneratorList::sequence(), |_| Some(2.0), 20, 1000);
    match d {
        Ok(d) => println!("naturals: kept {:?}", d.kept_indices),
        Err(e) => println!("naturals: {e}"),
    }
    Ok(())
}
