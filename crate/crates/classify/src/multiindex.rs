use std::fmt;

use permrep_branching::words;
use serde::Serialize;

use crate::ClassifyError;

/// A finite word (the cycle condition S_I Ω = Ω) or an eventually periodic
/// infinite one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiIndex {
    Finite {
        #[serde(serialize_with = "ser_word")]
        word: Vec<u8>,
    },
    EventuallyPeriodic {
        #[serde(serialize_with = "ser_word")]
        preperiod: Vec<u8>,
        #[serde(serialize_with = "ser_word")]
        period: Vec<u8>,
    },
}

fn ser_word<S: serde::Serializer>(w: &[u8], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&words::show(w))
}

/// Outcome of normalization; `root`/`power` describe a finite word as r^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub index: MultiIndex,
    #[serde(serialize_with = "ser_word")]
    pub root: Vec<u8>,
    pub power: usize,
}

impl Normalized {
    pub fn is_proper_power(&self) -> bool {
        self.power > 1
    }
}

impl MultiIndex {
    pub fn finite(word: &[u8]) -> Result<Self, ClassifyError> {
        Ok(normalize_multiindex(word, None)?.index)
    }

    pub fn periodic(preperiod: &[u8], period: &[u8]) -> Result<Self, ClassifyError> {
        Ok(normalize_multiindex(preperiod, Some(period))?.index)
    }

    /// `"12"` for finite words, `"1(12)"` for preperiod 1 and period 12.
    pub fn parse(s: &str) -> Result<Self, ClassifyError> {
        let s = s.trim();
        match s.find('(') {
            Some(i) => {
                let close = s.rfind(')').filter(|&j| j > i).ok_or_else(|| ClassifyError::Invalid(format!("unbalanced {s:?}")))?;
                MultiIndex::periodic(&words::parse(&s[..i])?, &words::parse(&s[i + 1..close])?)
            }
            None => MultiIndex::finite(&words::parse(s)?),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, MultiIndex::Finite { .. })
    }

    /// Letter j_n, n ≥ 1.
    pub fn letter(&self, n: usize) -> u8 {
        match self {
            MultiIndex::Finite { word } => word[(n - 1) % word.len()],
            MultiIndex::EventuallyPeriodic { preperiod, period } => {
                if n <= preperiod.len() {
                    preperiod[n - 1]
                } else {
                    period[(n - 1 - preperiod.len()) % period.len()]
                }
            }
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiIndex::Finite { word } => write!(f, "{}", words::show(word)),
            MultiIndex::EventuallyPeriodic { preperiod, period } => {
                write!(f, "{}({})", words::show(preperiod), words::show(period))
            }
        }
    }
}

/// Finite words are kept as given (P(1212) is not P(12)) and reported as
/// powers of their primitive root. Infinite indices are taken up to tail
/// equivalence: the preperiod is dropped and the period replaced by the
/// least rotation of its primitive root.
pub fn normalize_multiindex(preperiod: &[u8], period: Option<&[u8]>) -> Result<Normalized, ClassifyError> {
    let check = |w: &[u8]| {
        if w.iter().any(|&d| d != 1 && d != 2) {
            Err(ClassifyError::Invalid(format!("letters must be 1 or 2: {w:?}")))
        } else {
            Ok(())
        }
    };
    check(preperiod)?;
    match period {
        None => {
            if preperiod.is_empty() {
                return Err(ClassifyError::Invalid("empty multi-index".into()));
            }
            let (root, power) = words::primitive_root(preperiod);
            Ok(Normalized { index: MultiIndex::Finite { word: preperiod.to_vec() }, root, power })
        }
        Some(p) => {
            check(p)?;
            if p.is_empty() {
                return Err(ClassifyError::Invalid("empty period".into()));
            }
            let (root, _) = words::primitive_root(p);
            let root = words::min_rotation(&root);
            Ok(Normalized {
                index: MultiIndex::EventuallyPeriodic { preperiod: Vec::new(), period: root.clone() },
                root,
                power: 1,
            })
        }
    }
}

/// Finite: irreducible iff primitive. Eventually periodic infinite indices
/// never are.
pub fn is_irreducible_pi(i: &MultiIndex) -> bool {
    match i {
        MultiIndex::Finite { word } => words::is_primitive(word),
        MultiIndex::EventuallyPeriodic { .. } => false,
    }
}

/// Swap the letters 1 ↔ 2.
pub fn flipflop_image(i: &MultiIndex) -> MultiIndex {
    match i {
        MultiIndex::Finite { word } => MultiIndex::Finite { word: words::flip(word) },
        MultiIndex::EventuallyPeriodic { preperiod, period } => {
            MultiIndex::EventuallyPeriodic { preperiod: words::flip(preperiod), period: words::min_rotation(&words::flip(period)) }
        }
    }
}
