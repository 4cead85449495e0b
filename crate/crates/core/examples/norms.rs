//! Weighted l1 norms on the semigroup algebra and their comparison constants.

use num_complex::Complex64;
use semigroup_envelope::normspace::{comparison_constants, convolve};
use semigroup_envelope::{
    length_table, AlgebraElement, Base, Element, GeneratorList, Semigroup, SemigroupSpec, WeightFunction, WeightedNorm,
};

fn main() -> semigroup_envelope::Result<()> {
    let t3 = Semigroup::new(SemigroupSpec::full_transformation_monoid(3))?;
    let w = WeightFunction::explicit_integers(&[1, 1, 1])?;
    let table = length_table(&t3, &t3.default_generators(), &w, f64::INFINITY, 1000)?;
    let norm = WeightedNorm::new(&table);

    let elems = t3.elements().unwrap();
    let a = AlgebraElement::from_terms([(elems[1].clone(), Complex64::new(1.0, 0.0)), (elems[5].clone(), Complex64::new(0.0, 2.0))]);
    let b = AlgebraElement::from_terms([(elems[3].clone(), Complex64::new(-1.0, 1.0))]);
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", convolve(&a, &b, &t3)?);
    println!("|a| = {:.6}, |b| = {:.6}", norm.norm_of(&a)?, norm.norm_of(&b)?);
    println!("|ab| / (|a| |b|) = {:.6}", norm.submultiplicativity_ratio(&a, &b, &t3)?);

    let z3 = Semigroup::new(SemigroupSpec::cyclic_group(3))?;
    let gens = GeneratorList::listed([Element::Index(1)]);
    let t0 = length_table(&z3, &gens, &WeightFunction::explicit_integers(&[0])?, f64::INFINITY, 10)?;
    let t1 = length_table(&z3, &gens, &WeightFunction::explicit_integers(&[1])?, f64::INFINITY, 10)?;
    let c = comparison_constants(&t0, &t1, Base::E)?;
    println!("Z/3, F = 0 vs F = 1: {:.6} |a|_0 <= |a|_1 <= {:.6} |a|_0", c.lower, c.upper);
    Ok(())
}
