//! Defect census and partial nuclear sum for the staircase F2(n) = F1(n) + n.

use semigroup_envelope::nuclearity::{nuclear_sum_bound, nuclearity_witness};
use semigroup_envelope::{Cost, GeneratorList, Semigroup, SemigroupSpec, WeightFunction};

fn main() -> semigroup_envelope::Result<()> {
    let lz = Semigroup::new(SemigroupSpec::LeftZero)?;
    let zero = WeightFunction::constant(Cost::zero())?;
    let r = nuclearity_witness(&lz, &GeneratorList::sequence_up_to(50), &zero, 50.0, 10_000)?;
    println!("left zero, 50 generators:");
    println!("  partial sum {:.12}", r.partial_nuclear_sum);
    println!("  1/(e-1)     {:.12}", 1.0 / (std::f64::consts::E - 1.0));
    println!("  bound       {:.12}", nuclear_sum_bound());

    let free = Semigroup::new(SemigroupSpec::Free { rank: 2 })?;
    let f1 = WeightFunction::explicit_integers(&[0, 0])?;
    let r = nuclearity_witness(&free, &free.default_generators(), &f1, 8.0, 10_000)?;
    println!("free rank 2, F1 = 0:");
    for row in &r.census {
        println!("  |C_{}| = {:>3}  <= {:?}", row.defect, row.count, row.bound);
    }
    println!("  violations: {}", r.violations.len());
    Ok(())
}
