//! Closures of transformation generators, and what a budget does to an
//! infinite one.

use semigroup_envelope::{Element, Semigroup, SemigroupSpec};

fn main() -> semigroup_envelope::Result<()> {
    let t = Semigroup::new(SemigroupSpec::Transformations {
        degree: 2,
        generators: vec![vec![1, 0], vec![0, 0]],
    })?;
    let seeds = [Element::Map(vec![1, 0]), Element::Map(vec![0, 0])];
    let closed = t.closure(&seeds, 100)?;
    println!("<swap, collapse> on 2 points: {} elements", closed.elements().len());
    for e in closed.elements() {
        println!("  {e}");
    }
    println!("identity: {:?}", t.detect_identity(Some(closed.elements()))?);

    let t3 = Semigroup::new(SemigroupSpec::full_transformation_monoid(3))?;
    println!("full transformation monoid on 3 points: order {:?}", t3.order());

    let free = Semigroup::new(SemigroupSpec::Free { rank: 2 })?;
    let r = free.closure(&free.default_generators().prefix(2), 20)?;
    println!("free rank 2 with budget 20: finite = {}, last = {}", r.is_finite(), r.elements()[19]);
    Ok(())
}
