//! The semigroup algebra: finitely supported coefficient maps, convolution and
//! the weighted norms `||a||_F = sum_s |a_s| base^{l_F(s)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::length::LengthTable;
use crate::semigroup::Semigroup;

/// Coefficients below this modulus are dropped from supports.
pub const PRUNE_BELOW: f64 = 1e-15;

/// `a = sum_s a_s delta_s` with finite support and no stored zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AlgebraElement {
    coeffs: BTreeMap<Element, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The point mass `delta_s`.
    pub fn delta(s: Element) -> Self {
        Self::from_terms([(s, Complex64::new(1.0, 0.0))])
    }

    /// Sums the given terms; repeated elements accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (Element, Complex64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (s, c) in terms {
            *coeffs.entry(s).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut a = AlgebraElement { coeffs };
        a.prune();
        a
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() >= PRUNE_BELOW);
    }

    pub fn coefficient(&self, s: &Element) -> Complex64 {
        self.coeffs.get(s).copied().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        Self::from_terms(self.terms().chain(other.terms()).map(|(s, c)| (s.clone(), *c)))
    }

    pub fn scaled(&self, lambda: Complex64) -> AlgebraElement {
        Self::from_terms(self.terms().map(|(s, c)| (s.clone(), c * lambda)))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}*d[{s}]", c.re)?;
            } else {
                write!(f, "({c})*d[{s}]")?;
            }
        }
        Ok(())
    }
}

/// `(a * b)_u = sum_{st = u} a_s b_t`.
pub fn convolve(a: &AlgebraElement, b: &AlgebraElement, oracle: &Semigroup) -> Result<AlgebraElement> {
    a.support().chain(b.support()).try_for_each(|s| oracle.check(s))?;
    let mut terms = Vec::with_capacity(a.coeffs.len() * b.coeffs.len());
    for (s, x) in a.terms() {
        for (t, y) in b.terms() {
            terms.push((oracle.mul(s, t), x * y));
        }
    }
    Ok(AlgebraElement::from_terms(terms))
}

/// Neumaier's compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Exponential base of the norm, a finite real `> 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base(f64);

impl Base {
    pub const E: Base = Base(std::f64::consts::E);

    pub fn new(b: f64) -> Result<Self> {
        if b.is_finite() && b > 1.0 {
            Ok(Base(b))
        } else {
            Err(Error::InvalidBase(b))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn pow(self, x: f64) -> f64 {
        if self.0 == std::f64::consts::E {
            x.exp()
        } else {
            self.0.powf(x)
        }
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::E
    }
}

/// Truncated series `sum_{s settled} |c(s)| base^{l_F(s)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialNorm {
    pub partial_sum: f64,
    pub terms: usize,
}

/// The norm `||.||_F` read off a length table.
#[derive(Debug, Clone, Copy)]
pub struct WeightedNorm<'t> {
    table: &'t LengthTable,
    base: Base,
}

impl<'t> WeightedNorm<'t> {
    pub fn new(table: &'t LengthTable) -> Self {
        WeightedNorm { table, base: Base::E }
    }

    pub fn with_base(table: &'t LengthTable, base: Base) -> Self {
        WeightedNorm { table, base }
    }

    pub fn table(&self) -> &'t LengthTable {
        self.table
    }

    /// `||delta_s||_F = base^{l_F(s)}`.
    pub fn weight_of(&self, s: &Element) -> Result<f64> {
        let l = self
            .table
            .length(s)
            .ok_or_else(|| Error::SupportOutsideBall(s.clone()))?;
        Ok(self.base.pow(l.to_f64()))
    }

    pub fn norm_of(&self, a: &AlgebraElement) -> Result<f64> {
        let parts = a
            .terms()
            .map(|(s, c)| Ok(c.norm() * self.weight_of(s)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(compensated_sum(parts))
    }

    /// `||a * b|| / (||a|| ||b||)`, at most 1 for a submultiplicative norm.
    pub fn submultiplicativity_ratio(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        oracle: &Semigroup,
    ) -> Result<f64> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let na = self.norm_of(a)?;
        let nb = self.norm_of(b)?;
        let nab = self.norm_of(&convolve(a, b, oracle)?)?;
        Ok(nab / (na * nb))
    }

    /// Partial sums of the norm of an infinitely supported series, over the
    /// settled elements only. No convergence claim is made.
    pub fn partial_norm(&self, coeff: impl Fn(&Element) -> Complex64) -> PartialNorm {
        let parts: Vec<f64> = self
            .table
            .entries()
            .iter()
            .map(|e| coeff(&e.element).norm() * self.base.pow(e.length.to_f64()))
            .collect();
        PartialNorm {
            terms: parts.len(),
            partial_sum: compensated_sum(parts),
        }
    }
}

/// Optimal constants `c ||a||_1 <= ||a||_2 <= C ||a||_1` on a common finite set.
#[derive(Debug, Clone, PartialEq)]
pub struct NormComparison {
    pub lower: f64,
    pub upper: f64,
    pub lower_at: Element,
    pub upper_at: Element,
}

impl NormComparison {
    /// Constants for the comparison in the opposite direction.
    pub fn inverse(&self) -> NormComparison {
        NormComparison {
            lower: 1.0 / self.upper,
            upper: 1.0 / self.lower,
            lower_at: self.upper_at.clone(),
            upper_at: self.lower_at.clone(),
        }
    }
}

/// `C = max_s base^{l_2(s) - l_1(s)}` and `c = min_s base^{l_2(s) - l_1(s)}`,
/// attained at point masses.
pub fn comparison_constants(first: &LengthTable, second: &LengthTable, base: Base) -> Result<NormComparison> {
    if !first.is_complete() || !second.is_complete() {
        return Err(Error::NotComplete);
    }
    if first.len() != second.len() || first.elements().any(|s| !second.contains(s)) {
        return Err(Error::DomainMismatch {
            left: first.len(),
            right: second.len(),
        });
    }
    let mut gaps: Vec<(f64, &Element)> = first
        .entries()
        .iter()
        .map(|e| {
            let l2 = second.length(&e.element).expect("same domain");
            ((l2 - e.length).to_f64(), &e.element)
        })
        .collect();
    if gaps.is_empty() {
        return Err(Error::NotComplete);
    }
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let (lo, lo_at) = gaps[0];
    let hi = gaps[gaps.len() - 1].0;
    // smallest key among the maximisers
    let hi_at = gaps.iter().find(|g| g.0 == hi).map(|g| g.1).unwrap_or(lo_at);
    Ok(NormComparison {
        lower: base.pow(lo),
        upper: base.pow(hi),
        lower_at: lo_at.clone(),
        upper_at: hi_at.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GeneratorList;
    use crate::length::length_table;
    use crate::semigroup::SemigroupSpec;
    use crate::weight::{Cost, WeightFunction};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn point_masses_convolve_to_point_masses() {
        let f = Semigroup::new(SemigroupSpec::Free { rank: 2 }).unwrap();
        let a = AlgebraElement::delta(Element::word("a")).scaled(c(2.0));
        let b = AlgebraElement::delta(Element::word("b")).scaled(c(3.0));
        let ab = convolve(&a, &b, &f).unwrap();
        assert_eq!(ab, AlgebraElement::from_terms([(Element::word("ab"), c(6.0))]));
    }

    #[test]
    fn left_zero_square() {
        let lz = Semigroup::new(SemigroupSpec::LeftZero).unwrap();
        let x = AlgebraElement::from_terms([(Element::Natural(1), c(1.0)), (Element::Natural(2), c(1.0))]);
        let sq = convolve(&x, &x, &lz).unwrap();
        assert_eq!(sq, x.scaled(c(2.0)));
    }

    #[test]
    fn pruning_removes_cancelled_terms() {
        let a = AlgebraElement::delta(Element::Natural(1));
        assert!(a.add(&a.scaled(c(-1.0))).is_zero());
    }

    #[test]
    fn norm_of_two_terms() {
        let lz = Semigroup::new(SemigroupSpec::LeftZero).unwrap();
        let t = length_table(&lz, &GeneratorList::sequence(), &WeightFunction::identity(), 5.0, 100).unwrap();
        let norm = WeightedNorm::new(&t);
        let a = AlgebraElement::from_terms([(Element::Natural(1), c(2.0)), (Element::Natural(2), c(3.0))]);
        let expected = 2.0 * 1f64.exp() + 3.0 * 2f64.exp();
        assert!((norm.norm_of(&a).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 27.603732).abs() < 1e-6);
        assert_eq!(norm.norm_of(&AlgebraElement::zero()).unwrap(), 0.0);
        let outside = AlgebraElement::delta(Element::Natural(6));
        assert_eq!(
            norm.norm_of(&outside).unwrap_err(),
            Error::SupportOutsideBall(Element::Natural(6))
        );
    }

    #[test]
    fn ratio_on_left_zero_generator() {
        let lz = Semigroup::new(SemigroupSpec::LeftZero).unwrap();
        let t = length_table(&lz, &GeneratorList::sequence(), &WeightFunction::identity(), 3.0, 100).unwrap();
        let d = AlgebraElement::delta(Element::Natural(1));
        let r = WeightedNorm::new(&t).submultiplicativity_ratio(&d, &d, &lz).unwrap();
        assert!((r - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(
            WeightedNorm::new(&t)
                .submultiplicativity_ratio(&d, &AlgebraElement::zero(), &lz)
                .unwrap_err(),
            Error::ZeroOperand
        );
    }

    #[test]
    fn ratio_is_one_in_free_monogenic() {
        let f = Semigroup::new(SemigroupSpec::Free { rank: 1 }).unwrap();
        let w = WeightFunction::explicit_integers(&[1]).unwrap();
        let t = length_table(&f, &f.default_generators(), &w, 4.0, 100).unwrap();
        let d = AlgebraElement::delta(Element::word("a"));
        let r = WeightedNorm::new(&t).submultiplicativity_ratio(&d, &d, &f).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bases_must_exceed_one() {
        assert!(Base::new(1.0).is_err());
        assert!(Base::new(0.5).is_err());
        assert!(Base::new(f64::INFINITY).is_err());
        assert_eq!(Base::new(2.0).unwrap().pow(3.0), 8.0);
    }

    #[test]
    fn z3_comparison_constants() {
        let z3 = Semigroup::new(SemigroupSpec::cyclic_group(3)).unwrap();
        let gens = GeneratorList::listed([Element::Index(1)]);
        let f1 = WeightFunction::explicit_integers(&[0]).unwrap();
        let f2 = WeightFunction::explicit_integers(&[1]).unwrap();
        let t1 = length_table(&z3, &gens, &f1, f64::INFINITY, 100).unwrap();
        let t2 = length_table(&z3, &gens, &f2, f64::INFINITY, 100).unwrap();
        let cmp = comparison_constants(&t1, &t2, Base::E).unwrap();
        assert!((cmp.lower - 1f64.exp()).abs() < 1e-12);
        assert!((cmp.upper - 3f64.exp()).abs() < 1e-12);
        assert_eq!(cmp.lower_at, Element::Index(1));
        assert_eq!(cmp.upper_at, Element::Index(0));
        let same = comparison_constants(&t1, &t1, Base::E).unwrap();
        assert_eq!((same.lower, same.upper), (1.0, 1.0));
    }

    #[test]
    fn comparison_requires_same_domain() {
        let lz = Semigroup::new(SemigroupSpec::LeftZero).unwrap();
        let w = WeightFunction::identity();
        let t1 = length_table(&lz, &GeneratorList::sequence(), &w, 3.0, 100).unwrap();
        let t2 = length_table(&lz, &GeneratorList::sequence(), &w, 4.0, 100).unwrap();
        assert!(matches!(
            comparison_constants(&t1, &t2, Base::E),
            Err(Error::DomainMismatch { .. })
        ));
        let one = WeightFunction::constant(Cost::integer(1)).unwrap();
        let t3 = length_table(&lz, &GeneratorList::sequence(), &one, 3.0, 3).unwrap();
        assert_eq!(comparison_constants(&t3, &t3, Base::E).unwrap_err(), Error::NotComplete);
    }
}
