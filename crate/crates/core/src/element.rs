//! Canonical element keys and generator sequences.

use std::cmp::Ordering;
use std::fmt;

/// Canonical identity of a semigroup element.
///
/// Equality is equality of keys. The ordering is total and is used for every
/// deterministic tie-break in the crate: variants first, then numerically for
/// indices and naturals, lexicographically for transformations and shortlex
/// (shorter first) for words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// 0-based row of a Cayley table.
    Index(usize),
    /// Image list of a transformation of `{0, .., degree - 1}`.
    Map(Vec<usize>),
    /// Nonempty word over 1-based letters of a free semigroup.
    Word(Vec<usize>),
    /// Positive integer; the n-th element of the rule-defined infinite kinds.
    Natural(u64),
}

impl Element {
    fn rank(&self) -> u8 {
        match self {
            Element::Index(_) => 0,
            Element::Map(_) => 1,
            Element::Word(_) => 2,
            Element::Natural(_) => 3,
        }
    }

    /// Word over the first letters, `"aab"` style. Panics on letters outside `a..=z`.
    pub fn word(letters: &str) -> Element {
        Element::Word(
            letters
                .bytes()
                .map(|b| {
                    assert!(b.is_ascii_lowercase(), "letters must be a..z");
                    (b - b'a') as usize + 1
                })
                .collect(),
        )
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Index(a), Element::Index(b)) => a.cmp(b),
            (Element::Map(a), Element::Map(b)) => a.cmp(b),
            (Element::Word(a), Element::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Element::Natural(a), Element::Natural(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "{i}"),
            Element::Natural(n) => write!(f, "{n}"),
            Element::Map(m) => {
                write!(f, "[")?;
                for (i, x) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Element::Word(w) if w.iter().all(|&l| (1..=26).contains(&l)) => {
                for &l in w {
                    write!(f, "{}", (b'a' + (l - 1) as u8) as char)?;
                }
                Ok(())
            }
            Element::Word(w) => {
                let parts: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                write!(f, "{}", parts.join("."))
            }
        }
    }
}

/// The generating sequence `s_1, s_2, ...` (1-based).
///
/// `Sequence` is the rule `s_n = n` used by the left-zero and additive
/// naturals semigroups, optionally cut off after `limit` terms. Listed
/// generators may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorList {
    Listed(Vec<Element>),
    Sequence { limit: Option<usize> },
}

impl GeneratorList {
    pub fn listed(elements: impl IntoIterator<Item = Element>) -> Self {
        GeneratorList::Listed(elements.into_iter().collect())
    }

    pub fn sequence() -> Self {
        GeneratorList::Sequence { limit: None }
    }

    pub fn sequence_up_to(limit: usize) -> Self {
        GeneratorList::Sequence { limit: Some(limit) }
    }

    /// Generator `s_n`, with `n` 1-based.
    pub fn get(&self, n: usize) -> Option<Element> {
        if n == 0 {
            return None;
        }
        match self {
            GeneratorList::Listed(list) => list.get(n - 1).cloned(),
            GeneratorList::Sequence { limit } => match limit {
                Some(l) if n > *l => None,
                _ => Some(Element::Natural(n as u64)),
            },
        }
    }

    /// Number of generators, `None` when the sequence is infinite.
    pub fn len(&self) -> Option<usize> {
        match self {
            GeneratorList::Listed(list) => Some(list.len()),
            GeneratorList::Sequence { limit } => *limit,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn is_finite(&self) -> bool {
        self.len().is_some()
    }

    /// The first `n` generators (fewer if the list is shorter).
    pub fn prefix(&self, n: usize) -> Vec<Element> {
        (1..=n).map_while(|i| self.get(i)).collect()
    }

    /// Generators `s_1..s_n` as a finite list.
    pub fn truncated(&self, n: usize) -> GeneratorList {
        match self {
            GeneratorList::Listed(list) => GeneratorList::Listed(list.iter().take(n).cloned().collect()),
            GeneratorList::Sequence { limit } => GeneratorList::Sequence {
                limit: Some(limit.map_or(n, |l| l.min(n))),
            },
        }
    }
}
