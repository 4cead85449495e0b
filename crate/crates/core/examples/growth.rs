//! Ball sizes |{s : l_F(s) <= R}| as R grows.

use semigroup_envelope::classify::growth_profile;
use semigroup_envelope::{GeneratorList, Semigroup, SemigroupSpec, WeightFunction};

fn main() -> semigroup_envelope::Result<()> {
    let radii: Vec<f64> = (1..=10).map(|r| r as f64).collect();
    let free = Semigroup::new(SemigroupSpec::Free { rank: 2 })?;
    let unit = WeightFunction::explicit_integers(&[1, 1])?;
    let lz = Semigroup::new(SemigroupSpec::LeftZero)?;
    let nat = Semigroup::new(SemigroupSpec::NaturalsAdditive)?;
    let f = growth_profile(&free, &free.default_generators(), &unit, &radii, 100_000)?;
    let l = growth_profile(&lz, &GeneratorList::sequence(), &WeightFunction::identity(), &radii, 100_000)?;
    let n = growth_profile(&nat, &GeneratorList::sequence(), &WeightFunction::identity(), &radii, 100_000)?;
    println!("{:>3} {:>8} {:>10} {:>9}", "R", "free(2)", "left zero", "naturals");
    for i in 0..radii.len() {
        println!("{:>3} {:>8} {:>10} {:>9}", radii[i], f[i].size, l[i].size, n[i].size);
    }
    Ok(())
}
