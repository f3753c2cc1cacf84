//! Exact range analysis: every rule branch has an arithmetic progression
//! as image (two-sided on ℤ, an upward ray on ℕ) with finitely many holes,
//! and every exception contributes a single point.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::congruence::{crt, lcm_big, Class};
use crate::rule::MAX_MODULUS;
use crate::{Domain, RuleInjection};

/// Where a piece of range comes from: map number within the analysed
/// family, plus the rule residue or exception key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PieceSource {
    Rule { map: usize, residue: u64 },
    Exception { map: usize, key: String },
}

impl PieceSource {
    pub fn map(&self) -> usize {
        match self {
            PieceSource::Rule { map, .. } | PieceSource::Exception { map, .. } => *map,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: PieceSource,
    pub second: PieceSource,
    /// an index attained by both
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RangeReport {
    pub collisions: Vec<Collision>,
    /// an index attained by no piece
    pub uncovered: Option<String>,
    pub domain_violations: Vec<String>,
    /// covering was not decided (modulus blow-up)
    pub cover_undecided: bool,
}

impl RangeReport {
    pub fn disjoint(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn covers(&self) -> bool {
        self.uncovered.is_none() && !self.cover_undecided
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub total: bool,
    /// smallest domain element where the map is undefined
    pub undefined_at: Option<String>,
    pub injective: bool,
    pub bijective: bool,
    pub range: RangeReport,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.total && self.injective && self.range.domain_violations.is_empty()
    }
}

struct Progression {
    class: Class,
    start: Option<BigInt>,
    holes: BTreeSet<BigInt>,
    source: PieceSource,
}

impl Progression {
    fn contains(&self, v: &BigInt) -> bool {
        self.class.contains(v) && self.start.as_ref().map_or(true, |s| v >= s) && !self.holes.contains(v)
    }
}

struct Pieces {
    progressions: Vec<Progression>,
    points: Vec<(BigInt, PieceSource)>,
    violations: Vec<String>,
}

fn pieces_of(maps: &[&RuleInjection], extra_points: &[(BigInt, PieceSource)]) -> Pieces {
    let mut out = Pieces { progressions: Vec::new(), points: extra_points.to_vec(), violations: Vec::new() };
    for (mi, f) in maps.iter().enumerate() {
        let domain = f.domain();
        let lo = domain.lower_bound();
        let m = BigInt::from(f.modulus());
        let excluded: Vec<&BigInt> = f.exceptions().keys().chain(f.removed().iter()).collect();
        for (r, a) in f.rule_list() {
            let rb = BigInt::from(r);
            let step = a.slope.abs() * &m;
            let holes: BTreeSet<BigInt> =
                excluded.iter().filter(|x| x.mod_floor(&m) == rb).map(|x| a.eval(x)).collect();
            let source = PieceSource::Rule { map: mi, residue: r };
            match &lo {
                None => {
                    out.progressions.push(Progression {
                        class: Class::new(a.eval(&rb), step),
                        start: None,
                        holes,
                        source,
                    });
                }
                Some(lo) => {
                    let x0 = Class::new(rb.clone(), m.clone()).first_at_least(lo);
                    if a.slope.is_negative() {
                        out.violations.push(format!("map {mi} residue {r}: negative slope leaves the domain"));
                        continue;
                    }
                    // first non-excluded source element must land in the domain
                    let mut x = x0.clone();
                    while excluded.contains(&&x) {
                        x += &m;
                    }
                    if a.eval(&x) < *lo {
                        out.violations.push(format!("map {mi}: {x} ↦ {} outside the domain", a.eval(&x)));
                    }
                    let start = a.eval(&x0);
                    out.progressions.push(Progression {
                        class: Class::new(start.clone(), step),
                        start: Some(start),
                        holes,
                        source,
                    });
                }
            }
        }
        for (k, v) in f.exceptions() {
            if !domain.contains(v) {
                out.violations.push(format!("map {mi}: exception {k} ↦ {v} outside the domain"));
            }
            out.points.push((v.clone(), PieceSource::Exception { map: mi, key: k.to_string() }));
        }
    }
    out
}

fn common_witness(p: &Progression, q: &Progression, c: &Class) -> BigInt {
    let base = match (&p.start, &q.start) {
        (None, None) => c.residue.clone(),
        (a, b) => {
            let lo = a.iter().chain(b.iter()).max().unwrap();
            c.first_at_least(lo)
        }
    };
    let mut v = base;
    loop {
        if p.contains(&v) && q.contains(&v) {
            return v;
        }
        v += &c.modulus;
    }
}

/// Decide disjointness and covering of the union of ranges of `maps`
/// (all on one scalar domain), plus any extra single points.
pub fn range_report(maps: &[&RuleInjection], extra_points: &[(BigInt, PieceSource)], domain: Domain) -> RangeReport {
    let pieces = pieces_of(maps, extra_points);
    let mut report = RangeReport { domain_violations: pieces.violations.clone(), ..Default::default() };
    let progs = &pieces.progressions;
    for i in 0..progs.len() {
        for j in i + 1..progs.len() {
            if let Some(c) = crt(&progs[i].class, &progs[j].class) {
                let w = common_witness(&progs[i], &progs[j], &c);
                report.collisions.push(Collision {
                    first: progs[i].source.clone(),
                    second: progs[j].source.clone(),
                    witness: w.to_string(),
                });
            }
        }
    }
    let mut seen: BTreeMap<&BigInt, &PieceSource> = BTreeMap::new();
    for (v, src) in &pieces.points {
        if let Some(prev) = seen.insert(v, src) {
            report.collisions.push(Collision { first: prev.clone(), second: src.clone(), witness: v.to_string() });
        }
        for p in progs {
            if p.contains(v) {
                report.collisions.push(Collision {
                    first: p.source.clone(),
                    second: src.clone(),
                    witness: v.to_string(),
                });
            }
        }
    }
    let point_set: BTreeSet<&BigInt> = pieces.points.iter().map(|(v, _)| v).collect();
    report.uncovered = match cover_witness(progs, &point_set, domain) {
        Ok(w) => w.map(|w| w.to_string()),
        Err(()) => {
            report.cover_undecided = true;
            None
        }
    };
    report
}

fn cover_witness(progs: &[Progression], points: &BTreeSet<&BigInt>, domain: Domain) -> Result<Option<BigInt>, ()> {
    let lo = domain.lower_bound();
    let first_free = |c: &Class, below: Option<&BigInt>| -> Option<BigInt> {
        let mut v = match &lo {
            Some(lo) => c.first_at_least(lo),
            None => c.residue.clone(),
        };
        loop {
            if below.map_or(false, |b| v >= *b) {
                return None;
            }
            if !points.contains(&v) {
                return Some(v);
            }
            v += &c.modulus;
        }
    };
    let mut l = BigInt::from(1);
    for p in progs {
        l = lcm_big(&l, &p.class.modulus);
        if l > BigInt::from(MAX_MODULUS) {
            return Err(());
        }
    }
    let lu = l.to_u64().unwrap() as usize;
    // start of the covering ray per class mod l (None = two-sided cover)
    let mut cover: Vec<Option<Option<BigInt>>> = vec![None; lu];
    for p in progs {
        let step = p.class.modulus.to_u64().unwrap() as usize;
        let mut c = p.class.residue.to_u64().unwrap() as usize % lu;
        for _ in 0..lu / step {
            let sub = Class::new(BigInt::from(c), l.clone());
            let start = p.start.as_ref().map(|s| s + (&sub.residue - s).mod_floor(&l));
            // overlaps were reported as collisions; keep the lowest start
            cover[c] = match (cover[c].take(), start) {
                (None, s) => Some(s),
                (Some(None), _) | (_, None) => Some(None),
                (Some(Some(a)), Some(b)) => Some(Some(a.min(b))),
            };
            c = (c + step) % lu;
        }
    }
    let mut best: Option<BigInt> = None;
    let mut consider = |w: BigInt| {
        if best.as_ref().map_or(true, |b| w.abs() < b.abs() || (w.abs() == b.abs() && w < *b)) {
            best = Some(w);
        }
    };
    for (c, entry) in cover.iter().enumerate() {
        let class = Class::new(BigInt::from(c), l.clone());
        match entry {
            None => {
                if let Some(w) = first_free(&class, None) {
                    consider(w);
                }
            }
            Some(Some(start)) => {
                if let Some(w) = first_free(&class, Some(start)) {
                    consider(w);
                }
            }
            Some(None) => {}
        }
    }
    for p in progs {
        for h in &p.holes {
            if domain.contains(h) && !points.contains(h) && p.class.contains(h) {
                let inside = p.start.as_ref().map_or(true, |s| h >= s);
                let other = progs.iter().any(|q| !std::ptr::eq(q, p) && q.contains(h));
                if inside && !other {
                    consider(h.clone());
                }
            }
        }
    }
    Ok(best)
}

impl RuleInjection {
    /// Totality, injectivity and surjectivity, decided exactly.
    pub fn validate(&self) -> ValidationReport {
        let undefined_at = self.undefined_witness();
        let range = range_report(&[self], &[], self.domain());
        let injective = range.disjoint();
        ValidationReport {
            total: undefined_at.is_none(),
            undefined_at: undefined_at.map(|w| w.to_string()),
            injective,
            bijective: injective && range.covers() && range.domain_violations.is_empty(),
            range,
        }
    }

    /// Smallest (by absolute value) domain element where the map is undefined.
    pub fn undefined_witness(&self) -> Option<BigInt> {
        let lo = self.domain().lower_bound();
        let m = BigInt::from(self.modulus());
        let mut best: Option<BigInt> = None;
        for r in 0..self.modulus() {
            if self.rule(r).is_some() {
                continue;
            }
            let c = Class::new(BigInt::from(r), m.clone());
            let mut v = match &lo {
                Some(lo) => c.first_at_least(lo),
                None => c.residue.clone(),
            };
            while self.exceptions().contains_key(&v) {
                v += &m;
            }
            if best.as_ref().map_or(true, |b| v.abs() < b.abs()) {
                best = Some(v);
            }
        }
        for k in self.removed() {
            if best.as_ref().map_or(true, |b| k.abs() < b.abs()) {
                best = Some(k.clone());
            }
        }
        best
    }
}
