//! Finite / finitely generated / locally finite evidence for the built-in kinds.

use semigroup_envelope::classify::desk_classify;
use semigroup_envelope::{Semigroup, SemigroupSpec};

fn main() -> semigroup_envelope::Result<()> {
    let cases = [
        ("Z/3", SemigroupSpec::cyclic_group(3)),
        ("T_3", SemigroupSpec::full_transformation_monoid(3)),
        ("free rank 2", SemigroupSpec::Free { rank: 2 }),
        ("naturals", SemigroupSpec::NaturalsAdditive),
        ("left zero", SemigroupSpec::LeftZero),
    ];
    for (name, spec) in cases {
        let s = Semigroup::new(spec)?;
        let r = desk_classify(&s, &s.default_generators(), 10_000, 20, 0)?;
        println!("{name:<12} {:<40} {}", r.verdict.name(), r.verdict.label());
    }
    Ok(())
}
