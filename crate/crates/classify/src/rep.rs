use std::fmt;

use permrep_branching::{bijection_orbit_structure, coding, shift_cycles, words, BranchingSystem, Count, Digit, WordCycle};
use permrep_extension::{coding_orbit_count, window_points, Q2System, Tau};
use permrep_maps::{Domain, Index};
use serde::Serialize;

use crate::{is_irreducible_pi, ClassifyError, MultiIndex, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum RepClass {
    CanonicalQ2,
    #[serde(rename = "finite_pi")]
    FinitePI { index: MultiIndex, irreducible: bool },
    #[serde(rename = "infinite_pi")]
    InfinitePI { tail: MultiIndex },
    DirectSum { parts: Vec<(RepClass, usize)> },
    NotPermutativelyDecomposable { witness: String },
    Inconclusive { depth: usize },
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepClass::CanonicalQ2 => write!(f, "canonical"),
            RepClass::FinitePI { index, irreducible } => {
                write!(f, "P({index}){}", if *irreducible { "" } else { " (reducible)" })
            }
            RepClass::InfinitePI { tail } => write!(f, "P({tail})"),
            RepClass::DirectSum { parts } => {
                let s: Vec<String> =
                    parts.iter().map(|(c, m)| if *m == 1 { c.to_string() } else { format!("{m}·{c}") }).collect();
                write!(f, "{}", s.join(" ⊕ "))
            }
            RepClass::NotPermutativelyDecomposable { witness } => write!(f, "not permutatively decomposable ({witness})"),
            RepClass::Inconclusive { depth } => write!(f, "inconclusive at depth {depth}"),
        }
    }
}

fn finite_class(c: &WordCycle) -> RepClass {
    let index = MultiIndex::Finite { word: c.word.clone() };
    RepClass::FinitePI { irreducible: is_irreducible_pi(&index), index }
}

fn power_witness(c: &WordCycle) -> String {
    format!("cycle word {} = ({})^{} at index {}", words::show(&c.word), words::show(&c.root()), c.power(), c.points[0])
}

/// Infinite type read off a certified coding tail of a member; only for
/// product systems, where the shift has no cycles at all.
fn tail_class(sys: &BranchingSystem, sample: &[Index], depth: usize) -> RepClass {
    if sys.domain() != Domain::ProductZxN {
        return RepClass::Inconclusive { depth };
    }
    let Some(n) = sample.first() else { return RepClass::Inconclusive { depth } };
    match coding(sys, n, depth) {
        Ok(c) => match c.tail {
            Some(t) => match MultiIndex::periodic(&[], &t.period) {
                Ok(tail) => RepClass::InfinitePI { tail },
                Err(_) => RepClass::Inconclusive { depth },
            },
            None => RepClass::Inconclusive { depth },
        },
        Err(_) => RepClass::Inconclusive { depth },
    }
}

fn component<'a>(part: &'a Partition, id: usize) -> Result<&'a crate::Component, ClassifyError> {
    part.components.get(id).ok_or_else(|| ClassifyError::Invalid(format!("no component {id}")))
}

/// Type of an O₂-component: P(word) of its shift cycle, or an infinite type
/// from a certified coding tail.
pub fn classify_o2_component(sys: &BranchingSystem, part: &Partition, id: usize, depth: usize) -> Result<RepClass, ClassifyError> {
    let c = component(part, id)?;
    if part.exact {
        return Ok(match c.cycles.as_slice() {
            [one] => finite_class(one),
            _ => RepClass::Inconclusive { depth },
        });
    }
    Ok(tail_class(sys, &c.sample, depth))
}

/// Type of a Q₂-component. A single τ-orbit (counted through the shift
/// cycles: one per cycle point whose coding is not 1^∞) is the canonical
/// class; a proper-power cycle word blocks permutative decomposition.
pub fn classify_component(q: &Q2System, part: &Partition, id: usize, depth: usize) -> Result<RepClass, ClassifyError> {
    let c = component(part, id)?;
    if part.exact {
        if coding_orbit_count(&c.cycles) == 1 {
            return Ok(RepClass::CanonicalQ2);
        }
        if let Some(bad) = c.cycles.iter().find(|w| w.power() > 1) {
            return Ok(RepClass::NotPermutativelyDecomposable { witness: power_witness(bad) });
        }
        return Ok(match c.cycles.as_slice() {
            [one] => finite_class(one),
            many => RepClass::DirectSum { parts: group(many.iter().map(finite_class)) },
        });
    }
    // a translation τ with one orbit on a single component
    if let Tau::Rule(f) = &q.tau {
        let s = bijection_orbit_structure(f, part.window);
        if s.exact && part.len() == 1 && s.infinite == Some(Count::Finite(1)) && s.finite_cycles.values().all(|n| n.is_zero()) {
            return Ok(RepClass::CanonicalQ2);
        }
    }
    Ok(tail_class(&q.branching(), &c.sample, depth))
}

fn group(classes: impl Iterator<Item = RepClass>) -> Vec<(RepClass, usize)> {
    let mut out: Vec<(RepClass, usize)> = Vec::new();
    for c in classes {
        match out.iter_mut().find(|(d, _)| *d == c) {
            Some((_, m)) => *m += 1,
            None => out.push((c, 1)),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RegularityVerdict {
    MultiplicityFree,
    Regular,
    /// `word` moves `index` to `image` without changing its coding
    NotRegular {
        index: Index,
        #[serde(serialize_with = "ser_word")]
        word: Vec<Digit>,
        image: Index,
    },
    Inconclusive { depth: usize },
}

fn ser_word<S: serde::Serializer>(w: &[u8], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&words::show(w))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub verdict: RegularityVerdict,
    /// decided from the complete list of shift cycles rather than a window
    pub exact: bool,
}

/// Regular iff every shift-cycle word is primitive; multiplicity-free iff in
/// addition no two cycles carry the same word up to rotation. Without a
/// complete cycle list, window codings are compared instead.
pub fn regularity_verdict(sys: &BranchingSystem, window: u64, depth: usize, budget: u64) -> RegularityReport {
    if let Ok(sc) = shift_cycles(sys, budget) {
        for c in &sc.cycles {
            if c.power() > 1 {
                let n = Index::Int(c.points[0].clone());
                let root = c.root();
                let verdict = match sys.apply_word(&root, &n) {
                    Some(image) if image != n && same_coding(sys, &n, &image, depth) => {
                        RegularityVerdict::NotRegular { index: n, word: root, image }
                    }
                    _ => RegularityVerdict::Inconclusive { depth },
                };
                return RegularityReport { verdict, exact: true };
            }
        }
        let mut ws: Vec<&Vec<Digit>> = sc.cycles.iter().map(|c| &c.word).collect();
        ws.sort();
        let verdict = if ws.windows(2).any(|p| p[0] == p[1]) {
            RegularityVerdict::Regular
        } else {
            RegularityVerdict::MultiplicityFree
        };
        return RegularityReport { verdict, exact: true };
    }
    let mut seen = std::collections::HashMap::new();
    for n in window_points(sys.domain(), window) {
        let Ok(c) = coding(sys, &n, depth) else { return inconclusive(depth) };
        if c.digits.len() < depth {
            return inconclusive(depth);
        }
        if seen.insert(c.digits, n).is_some() {
            return inconclusive(depth);
        }
    }
    RegularityReport { verdict: RegularityVerdict::MultiplicityFree, exact: false }
}

fn inconclusive(depth: usize) -> RegularityReport {
    RegularityReport { verdict: RegularityVerdict::Inconclusive { depth }, exact: false }
}

fn same_coding(sys: &BranchingSystem, a: &Index, b: &Index, depth: usize) -> bool {
    match (coding(sys, a, depth), coding(sys, b, depth)) {
        (Ok(x), Ok(y)) => x.same_word(&y) == Some(true) && x.digits == y.digits,
        _ => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub restriction: RegularityReport,
    /// decomposes into irreducible permutative pieces (None: undecided)
    pub decomposable: Option<bool>,
    pub components: Vec<RepClass>,
}

/// Decomposability of a Q₂ representation via the regularity of its O₂
/// restriction, with the class of each Q₂-component.
pub fn q2_decomposable(q: &Q2System, window: u64, depth: usize, budget: u64) -> Result<Decomposition, ClassifyError> {
    let restriction = regularity_verdict(&q.branching(), window, depth, budget);
    let decomposable = match restriction.verdict {
        RegularityVerdict::MultiplicityFree | RegularityVerdict::Regular => Some(true),
        RegularityVerdict::NotRegular { .. } => Some(false),
        RegularityVerdict::Inconclusive { .. } => None,
    };
    let part = crate::q2_components(q, window, budget)?;
    let components = (0..part.len()).map(|i| classify_component(q, &part, i, depth)).collect::<Result<_, _>>()?;
    Ok(Decomposition { restriction, decomposable, components })
}
