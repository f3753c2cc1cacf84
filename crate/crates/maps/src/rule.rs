use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::congruence::is_unit;
use crate::json::{JsonInt, RuleInjectionJson, RuleJson};
use crate::{Domain, MapError};

/// Largest modulus a rule table may carry (rules are stored densely).
pub const MAX_MODULUS: u64 = 1 << 22;

/// `n ↦ slope·n + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: BigInt,
    pub offset: BigInt,
}

impl Affine {
    pub fn new(slope: impl Into<BigInt>, offset: impl Into<BigInt>) -> Self {
        Affine { slope: slope.into(), offset: offset.into() }
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        &self.slope * n + &self.offset
    }

    /// `outer ∘ self`
    pub fn then(&self, outer: &Affine) -> Affine {
        Affine {
            slope: &outer.slope * &self.slope,
            offset: &outer.slope * &self.offset + &outer.offset,
        }
    }

    /// Integer solution of `slope·x + offset = v`, if any.
    pub fn solve(&self, v: &BigInt) -> Option<BigInt> {
        let (q, r) = (v - &self.offset).div_rem(&self.slope);
        r.is_zero().then_some(q)
    }
}

/// Injection of a scalar index domain: an affine rule per residue class
/// (some classes may be left uncovered), overridden by a finite exception
/// table, with a finite set of points removed from rule coverage.
#[derive(Clone, Debug)]
pub struct RuleInjection {
    domain: Domain,
    modulus: u64,
    modulus_big: BigInt,
    rules: Vec<Option<Affine>>,
    exceptions: BTreeMap<BigInt, BigInt>,
    removed: BTreeSet<BigInt>,
    exception_preimage: BTreeMap<BigInt, BigInt>,
}

impl RuleInjection {
    pub fn new(
        domain: Domain,
        modulus: u64,
        rules: Vec<(u64, Affine)>,
        exceptions: BTreeMap<BigInt, BigInt>,
        removed: BTreeSet<BigInt>,
    ) -> Result<Self, MapError> {
        let mut problems = Vec::new();
        if !domain.is_scalar() {
            return Err(MapError::Unsupported("rule tables act on scalar domains".into()));
        }
        if modulus == 0 {
            problems.push("modulus must be positive".to_string());
        }
        if modulus > MAX_MODULUS {
            return Err(MapError::ModulusTooLarge(modulus.to_string()));
        }
        let mut table = vec![None; modulus.max(1) as usize];
        for (r, a) in rules {
            if r >= modulus {
                problems.push(format!("residue {r} not below modulus {modulus}"));
                continue;
            }
            if a.slope.is_zero() {
                problems.push(format!("zero slope at residue {r}"));
            }
            if table[r as usize].is_some() {
                problems.push(format!("residue {r} has overlapping rules"));
            }
            table[r as usize] = Some(a);
        }
        for (k, v) in &exceptions {
            if removed.contains(k) {
                problems.push(format!("exception key {k} is also removed"));
            }
            if !domain.contains(k) {
                problems.push(format!("exception key {k} outside domain"));
            }
            if !domain.contains(v) {
                problems.push(format!("exception value {v} outside domain"));
            }
        }
        for k in &removed {
            if !domain.contains(k) {
                problems.push(format!("removed point {k} outside domain"));
            }
        }
        if !problems.is_empty() {
            return Err(MapError::Structural(problems));
        }
        Ok(Self::from_parts(domain, modulus, table, exceptions, removed))
    }

    fn from_parts(
        domain: Domain,
        modulus: u64,
        rules: Vec<Option<Affine>>,
        exceptions: BTreeMap<BigInt, BigInt>,
        removed: BTreeSet<BigInt>,
    ) -> Self {
        let exception_preimage = exceptions.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        RuleInjection {
            domain,
            modulus,
            modulus_big: BigInt::from(modulus),
            rules,
            exceptions,
            removed,
            exception_preimage,
        }
    }

    /// Single rule `n ↦ slope·n + offset`.
    pub fn affine(domain: Domain, slope: i64, offset: i64) -> Self {
        Self::new(domain, 1, vec![(0, Affine::new(slope, offset))], BTreeMap::new(), BTreeSet::new())
            .expect("single affine rule")
    }

    pub fn identity(domain: Domain) -> Self {
        Self::affine(domain, 1, 0)
    }

    /// Same map with one more exception (replacing any previous one at `k`).
    pub fn with_exception(&self, k: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self, MapError> {
        let mut exc = self.exceptions.clone();
        exc.insert(k.into(), v.into());
        Self::new(self.domain, self.modulus, self.rule_list(), exc, self.removed.clone())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rule(&self, residue: u64) -> Option<&Affine> {
        self.rules.get(residue as usize).and_then(|r| r.as_ref())
    }

    /// Rules as (residue, affine) pairs.
    pub fn rule_list(&self) -> Vec<(u64, Affine)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(r, a)| a.clone().map(|a| (r as u64, a)))
            .collect()
    }

    pub fn exceptions(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.exceptions
    }

    pub fn removed(&self) -> &BTreeSet<BigInt> {
        &self.removed
    }

    pub(crate) fn residue_of(&self, n: &BigInt) -> u64 {
        if self.modulus == 1 {
            0
        } else {
            n.mod_floor(&self.modulus_big).to_u64().expect("residue fits")
        }
    }

    /// Largest absolute value among exception keys, exception values and
    /// removed points.
    pub fn exception_zone(&self) -> BigInt {
        self.exceptions
            .iter()
            .flat_map(|(k, v)| [k.abs(), v.abs()])
            .chain(self.removed.iter().map(|k| k.abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn all_slopes_expansive(&self) -> bool {
        self.rules.iter().flatten().all(|a| a.slope.abs() >= BigInt::from(2))
    }

    pub fn all_slopes_unit(&self) -> bool {
        self.rules.iter().flatten().all(|a| is_unit(&a.slope))
    }

    /// Value at `n`, `None` when undefined or outside the domain.
    pub fn try_apply(&self, n: &BigInt) -> Option<BigInt> {
        if !self.domain.contains(n) {
            return None;
        }
        if let Some(v) = self.exceptions.get(n) {
            return Some(v.clone());
        }
        if !self.removed.is_empty() && self.removed.contains(n) {
            return None;
        }
        self.rules[self.residue_of(n) as usize].as_ref().map(|a| a.eval(n))
    }

    pub fn apply(&self, n: &BigInt) -> Result<BigInt, MapError> {
        if !self.domain.contains(n) {
            return Err(MapError::OutsideDomain { index: n.to_string(), domain: self.domain });
        }
        self.try_apply(n).ok_or_else(|| MapError::Undefined(n.to_string()))
    }

    /// Unique preimage of `n`, `None` when `n` is not in the range.
    pub fn invert(&self, n: &BigInt) -> Result<Option<BigInt>, MapError> {
        if !self.domain.contains(n) {
            return Err(MapError::OutsideDomain { index: n.to_string(), domain: self.domain });
        }
        Ok(self.preimage(n))
    }

    /// Preimage without the domain check on `n`.
    pub fn preimage(&self, n: &BigInt) -> Option<BigInt> {
        if let Some(k) = self.exception_preimage.get(n) {
            return Some(k.clone());
        }
        self.rule_preimage(n)
    }

    /// Preimage through the rule branches only (exception keys and removed
    /// points excluded).
    pub fn rule_preimage(&self, n: &BigInt) -> Option<BigInt> {
        self.rule_preimages(n).into_iter().next()
    }

    /// All rule-branch preimages; more than one only for non-injective maps.
    pub fn rule_preimages(&self, n: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (r, a) in self.rules.iter().enumerate() {
            let Some(a) = a else { continue };
            let Some(x) = a.solve(n) else { continue };
            if self.residue_of(&x) as usize != r || !self.domain.contains(&x) {
                continue;
            }
            if self.exceptions.contains_key(&x) || self.removed.contains(&x) {
                continue;
            }
            out.push(x);
        }
        out
    }

    /// Rules re-expressed over a multiple `l` of the modulus.
    fn expanded(&self, l: u64) -> Vec<Option<Affine>> {
        debug_assert_eq!(l % self.modulus, 0);
        (0..l).map(|r| self.rules[(r % self.modulus) as usize].clone()).collect()
    }

    /// `self ∘ g` (apply `g` first).
    pub fn compose(&self, g: &RuleInjection) -> Result<RuleInjection, MapError> {
        if self.domain != g.domain {
            return Err(MapError::DomainMismatch(self.domain, g.domain));
        }
        let l = self.modulus.lcm(&g.modulus);
        if l > MAX_MODULUS {
            return Err(MapError::ModulusTooLarge(l.to_string()));
        }
        let mut rules = Vec::with_capacity(l as usize);
        for rho in 0..l {
            let composed = g.rules[(rho % g.modulus) as usize].as_ref().and_then(|ga| {
                let y = ga.eval(&BigInt::from(rho));
                let fr = self.residue_of(&y);
                self.rules[fr as usize].as_ref().map(|fa| ga.then(fa))
            });
            rules.push(composed);
        }
        let mut exceptions = BTreeMap::new();
        let mut removed = BTreeSet::new();
        for (x, v) in &g.exceptions {
            match self.try_apply(v) {
                Some(w) => {
                    exceptions.insert(x.clone(), w);
                }
                None => {
                    removed.insert(x.clone());
                }
            }
        }
        for x in &g.removed {
            removed.insert(x.clone());
        }
        for (k, w) in &self.exceptions {
            for x in g.rule_preimages(k) {
                exceptions.insert(x, w.clone());
            }
        }
        for k in &self.removed {
            for x in g.rule_preimages(k) {
                removed.insert(x);
            }
        }
        removed.retain(|x| !exceptions.contains_key(x));
        Ok(Self::from_parts(self.domain, l, rules, exceptions, removed).simplified())
    }

    /// `self` composed with itself `k` times (`k = 0` gives the identity).
    pub fn power(&self, k: u32) -> Result<RuleInjection, MapError> {
        let mut acc = RuleInjection::identity(self.domain);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Minimal modulus, redundant exceptions absorbed, vacuous removals
    /// dropped.
    pub fn simplified(&self) -> RuleInjection {
        let m = self.modulus;
        let mut best = m;
        for d in divisors(m) {
            if (0..m).all(|r| self.rules[r as usize] == self.rules[(r % d) as usize]) {
                best = d;
                break;
            }
        }
        let rules: Vec<Option<Affine>> = self.rules[..best as usize].to_vec();
        let mut out = Self::from_parts(self.domain, best, rules, BTreeMap::new(), BTreeSet::new());
        let (exceptions, removed) = out.normalize_tables(&self.exceptions, &self.removed);
        out = Self::from_parts(self.domain, best, out.rules, exceptions, removed);
        out
    }

    /// Drop exceptions that agree with the rules and removals in classes
    /// without a rule.
    fn normalize_tables(
        &self,
        exceptions: &BTreeMap<BigInt, BigInt>,
        removed: &BTreeSet<BigInt>,
    ) -> (BTreeMap<BigInt, BigInt>, BTreeSet<BigInt>) {
        let exc = exceptions
            .iter()
            .filter(|(k, v)| {
                self.rules[self.residue_of(k) as usize].as_ref().map(|a| a.eval(k)) != Some((*v).clone())
            })
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let rem = removed
            .iter()
            .filter(|k| self.rules[self.residue_of(k) as usize].is_some())
            .cloned()
            .collect();
        (exc, rem)
    }

    fn normal_form(
        &self,
        l: u64,
    ) -> (Vec<Option<Affine>>, BTreeMap<BigInt, BigInt>, BTreeSet<BigInt>) {
        let rules = self.expanded(l);
        let (e, r) = self.normalize_tables(&self.exceptions, &self.removed);
        (rules, e, r)
    }

    /// Exact equality of the partial functions.
    pub fn equals(&self, g: &RuleInjection) -> Result<bool, MapError> {
        if self.domain != g.domain {
            return Err(MapError::DomainMismatch(self.domain, g.domain));
        }
        let l = self.modulus.lcm(&g.modulus);
        if l > MAX_MODULUS {
            return Err(MapError::ModulusTooLarge(l.to_string()));
        }
        Ok(self.normal_form(l) == g.normal_form(l))
    }

    /// A point where the two maps differ (in value or definedness).
    pub fn first_difference(&self, g: &RuleInjection) -> Result<Option<BigInt>, MapError> {
        if self.equals(g)? {
            return Ok(None);
        }
        let keys: BTreeSet<&BigInt> = self
            .exceptions
            .keys()
            .chain(g.exceptions.keys())
            .chain(self.removed.iter())
            .chain(g.removed.iter())
            .collect();
        for k in &keys {
            if self.try_apply(k) != g.try_apply(k) {
                return Ok(Some((*k).clone()));
            }
        }
        let l = self.modulus.lcm(&g.modulus);
        let (fr, gr) = (self.expanded(l), g.expanded(l));
        let lb = BigInt::from(l);
        for rho in 0..l as usize {
            if fr[rho] == gr[rho] {
                continue;
            }
            let start = match self.domain.lower_bound() {
                Some(lo) => crate::Class::new(BigInt::from(rho), lb.clone()).first_at_least(&lo),
                None => BigInt::from(rho),
            };
            let mut x = start;
            loop {
                if !keys.contains(&x) && self.try_apply(&x) != g.try_apply(&x) {
                    return Ok(Some(x));
                }
                x += &lb;
            }
        }
        Ok(None)
    }

    /// Inverse of a bijection whose rules all have slope ±1.
    pub fn inverse(&self) -> Result<RuleInjection, MapError> {
        if !self.all_slopes_unit() {
            return Err(MapError::Unsupported("inverse needs unit slopes".into()));
        }
        let m = self.modulus;
        let mut rules = Vec::new();
        for (r, a) in self.rule_list() {
            let img_res = a.eval(&BigInt::from(r)).mod_floor(&self.modulus_big).to_u64().unwrap();
            // y = s·x + b  ⇒  x = s·y − s·b
            rules.push((img_res, Affine { slope: a.slope.clone(), offset: -(&a.slope * &a.offset) }));
        }
        let exceptions: BTreeMap<BigInt, BigInt> =
            self.exceptions.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let mut removed = BTreeSet::new();
        for k in self.exceptions.keys().chain(self.removed.iter()) {
            if let Some(a) = &self.rules[self.residue_of(k) as usize] {
                let y = a.eval(k);
                if !exceptions.contains_key(&y) {
                    removed.insert(y);
                }
            }
        }
        let removed = removed.into_iter().filter(|y| self.domain.contains(y)).collect();
        Ok(Self::new(self.domain, m, rules, exceptions, removed)?.simplified())
    }

    /// Same formulas read on another scalar domain.
    pub fn with_domain(&self, domain: Domain) -> Result<RuleInjection, MapError> {
        Self::new(domain, self.modulus, self.rule_list(), self.exceptions.clone(), self.removed.clone())
    }

    /// Restriction of the rules to an arithmetic embedding: returns the map
    /// `x ↦ φ(f(φ⁻¹(x)))` on the image `φ(domain)` with `φ(n) = p·n + q`,
    /// `p > 0`. The result is partial (undefined off `φ(domain)`).
    pub fn conjugate_embedding(&self, p: u64, q: i64, target: Domain) -> Result<RuleInjection, MapError> {
        let pm = self.modulus * p;
        if pm > MAX_MODULUS {
            return Err(MapError::ModulusTooLarge(pm.to_string()));
        }
        let (pb, qb) = (BigInt::from(p), BigInt::from(q));
        let mut rules = Vec::new();
        for (r, a) in self.rule_list() {
            // x = p·n + q with n ≡ r (mod M) ⇔ x ≡ p·r + q (mod p·M)
            let res = (&pb * BigInt::from(r) + &qb).mod_floor(&BigInt::from(pm)).to_u64().unwrap();
            // n = (x − q)/p ; image p·(a·n + b) + q = a·x − a·q + p·b + q
            let offset = -(&a.slope * &qb) + &pb * &a.offset + &qb;
            rules.push((res, Affine { slope: a.slope.clone(), offset }));
        }
        let phi = |n: &BigInt| &pb * n + &qb;
        let exceptions = self.exceptions.iter().map(|(k, v)| (phi(k), phi(v))).collect();
        let mut removed: BTreeSet<BigInt> = self.removed.iter().map(phi).collect();
        // elements of the residue class that fall outside φ(domain)
        if let Some(lo) = self.domain.lower_bound() {
            let tlo = target.lower_bound();
            let mut n = lo.clone() - BigInt::one();
            loop {
                let x = phi(&n);
                if tlo.as_ref().map_or(false, |t| x < *t) {
                    break;
                }
                removed.insert(x);
                n -= BigInt::one();
                if removed.len() > 1 << 16 {
                    return Err(MapError::Unsupported("embedding leaves an unbounded gap".into()));
                }
            }
            if tlo.is_none() {
                return Err(MapError::Unsupported("one-sided domain embedded in ℤ".into()));
            }
        }
        Self::new(target, pm, rules, exceptions, removed)
    }

    /// Union of two partial maps with disjoint supports.
    pub fn union(&self, other: &RuleInjection) -> Result<RuleInjection, MapError> {
        if self.domain != other.domain {
            return Err(MapError::DomainMismatch(self.domain, other.domain));
        }
        let l = self.modulus.lcm(&other.modulus);
        if l > MAX_MODULUS {
            return Err(MapError::ModulusTooLarge(l.to_string()));
        }
        let (a, b) = (self.expanded(l), other.expanded(l));
        let mut rules = Vec::new();
        for r in 0..l as usize {
            match (&a[r], &b[r]) {
                (Some(_), Some(_)) => {
                    return Err(MapError::Structural(vec![format!("both maps have a rule at residue {r} mod {l}")]))
                }
                (Some(x), None) | (None, Some(x)) => rules.push((r as u64, x.clone())),
                (None, None) => {}
            }
        }
        let mut exceptions = self.exceptions.clone();
        for (k, v) in &other.exceptions {
            if exceptions.insert(k.clone(), v.clone()).is_some() {
                return Err(MapError::Structural(vec![format!("both maps define {k}")]));
            }
        }
        // removals only matter in the class owning the rule
        let mut removed = BTreeSet::new();
        for k in self.removed.iter() {
            if a[(k.mod_floor(&BigInt::from(l))).to_usize().unwrap()].is_some() {
                removed.insert(k.clone());
            }
        }
        for k in other.removed.iter() {
            if b[(k.mod_floor(&BigInt::from(l))).to_usize().unwrap()].is_some() {
                removed.insert(k.clone());
            }
        }
        removed.retain(|k| !exceptions.contains_key(k));
        Self::new(self.domain, l, rules, exceptions, removed)
    }
}

fn divisors(m: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=m).take_while(|i| i * i <= m).filter(|i| m % i == 0).collect();
    let big: Vec<u64> = d.iter().map(|i| m / i).collect();
    d.extend(big);
    d.sort_unstable();
    d.dedup();
    d
}

impl PartialEq for RuleInjection {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for RuleInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (r, a) in self.rule_list() {
            let lin = match (a.slope.to_i64(), a.offset.sign()) {
                (Some(1), _) => "n".to_string(),
                (Some(-1), _) => "-n".to_string(),
                _ => format!("{}n", a.slope),
            };
            let aff = match a.offset.sign() {
                num_bigint::Sign::NoSign => lin,
                num_bigint::Sign::Plus => format!("{lin}+{}", a.offset),
                num_bigint::Sign::Minus => format!("{lin}{}", a.offset),
            };
            if self.modulus == 1 {
                parts.push(format!("n ↦ {aff}"));
            } else {
                parts.push(format!("n≡{r} (mod {}): n ↦ {aff}", self.modulus));
            }
        }
        for (k, v) in &self.exceptions {
            parts.push(format!("{k} ↦ {v}"));
        }
        if !self.removed.is_empty() {
            let r: Vec<String> = self.removed.iter().map(|k| k.to_string()).collect();
            parts.push(format!("undefined at {{{}}}", r.join(", ")));
        }
        write!(f, "{}", parts.join("; "))
    }
}

impl Serialize for RuleInjection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RuleInjectionJson {
            domain: self.domain,
            modulus: self.modulus,
            rules: self
                .rule_list()
                .into_iter()
                .map(|(residue, a)| RuleJson { residue, slope: JsonInt(a.slope), offset: JsonInt(a.offset) })
                .collect(),
            exceptions: self.exceptions.iter().map(|(k, v)| (k.to_string(), JsonInt(v.clone()))).collect(),
            removed: self.removed.iter().cloned().map(JsonInt).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RuleInjection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = RuleInjectionJson::deserialize(d)?;
        let mut exceptions = BTreeMap::new();
        for (k, v) in j.exceptions {
            let k: BigInt = k.trim().parse().map_err(|_| D::Error::custom(format!("bad exception key {k}")))?;
            exceptions.insert(k, v.0);
        }
        RuleInjection::new(
            j.domain,
            j.modulus,
            j.rules.into_iter().map(|r| (r.residue, Affine { slope: r.slope.0, offset: r.offset.0 })).collect(),
            exceptions,
            j.removed.into_iter().map(|x| x.0).collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;

    fn zmap(slope: i64, offset: i64) -> RuleInjection {
        RuleInjection::affine(Domain::Integers, slope, offset)
    }

    #[test]
    fn apply_and_invert_doubling() {
        let s2 = zmap(2, 0);
        assert_eq!(s2.apply(&big(5)).unwrap(), big(10));
        assert_eq!(s2.invert(&big(10)).unwrap(), Some(big(5)));
        assert_eq!(s2.invert(&big(7)).unwrap(), None);
    }

    #[test]
    fn exception_takes_precedence() {
        let f = zmap(1, 1).with_exception(7, 3).unwrap();
        assert_eq!(f.apply(&big(7)).unwrap(), big(3));
        assert_eq!(f.invert(&big(3)).unwrap(), Some(big(7)));
        // 8 = 7+1 is no longer attained through the rule
        assert_eq!(f.invert(&big(8)).unwrap(), None);
    }

    #[test]
    fn compose_affine() {
        let c = zmap(2, 0).compose(&zmap(1, 1)).unwrap();
        assert!(c.equals(&zmap(2, 2)).unwrap());
        let s1 = zmap(1, 1).compose(&zmap(2, 0)).unwrap();
        assert!(s1.equals(&zmap(2, 1)).unwrap());
    }

    #[test]
    fn compose_propagates_exceptions() {
        let g = zmap(1, 0).with_exception(7, 3).unwrap().with_exception(3, 7).unwrap();
        let f = zmap(2, 0);
        let c = f.compose(&g).unwrap();
        assert_eq!(c.apply(&big(7)).unwrap(), big(6));
        assert_eq!(c.apply(&big(3)).unwrap(), big(14));
        assert_eq!(c.apply(&big(4)).unwrap(), big(8));
    }

    #[test]
    fn redundant_exception_is_absorbed() {
        let f = zmap(1, 1).with_exception(5, 6).unwrap();
        assert!(f.equals(&zmap(1, 1)).unwrap());
        assert!(!zmap(2, 1).equals(&zmap(2, 0)).unwrap());
    }

    #[test]
    fn inverse_of_translation() {
        let t = zmap(1, 3);
        let ti = t.inverse().unwrap();
        assert!(ti.equals(&zmap(1, -3)).unwrap());
        assert!(t.compose(&ti).unwrap().equals(&RuleInjection::identity(Domain::Integers)).unwrap());
    }

    #[test]
    fn simplified_reduces_modulus() {
        let f = RuleInjection::new(
            Domain::Integers,
            4,
            (0..4).map(|r| (r, Affine::new(2, 1))).collect(),
            BTreeMap::new(),
            BTreeSet::new(),
        )
        .unwrap();
        assert_eq!(f.simplified().modulus(), 1);
    }

    #[test]
    fn structural_errors() {
        let mut exc = BTreeMap::new();
        exc.insert(big(3), big(4));
        let rem: BTreeSet<BigInt> = [big(3)].into_iter().collect();
        let err = RuleInjection::new(Domain::Integers, 1, vec![(0, Affine::new(2, 0))], exc, rem).unwrap_err();
        assert!(matches!(err, MapError::Structural(_)));
        let err = RuleInjection::new(
            Domain::Integers,
            2,
            vec![(0, Affine::new(2, 0)), (0, Affine::new(2, 1))],
            BTreeMap::new(),
            BTreeSet::new(),
        )
        .unwrap_err();
        assert!(matches!(err, MapError::Structural(_)));
    }

    #[test]
    fn first_difference_finds_witness() {
        let f = zmap(2, 0);
        let g = zmap(2, 0).with_exception(3, 100).unwrap();
        assert_eq!(f.first_difference(&g).unwrap(), Some(big(3)));
        let h = zmap(2, 1);
        let w = f.first_difference(&h).unwrap().unwrap();
        assert_ne!(f.apply(&w).unwrap(), h.apply(&w).unwrap());
    }

    #[test]
    fn conjugate_embedding_to_odds() {
        // n ↦ 2n on ℕ₁, transported to odds via n ↦ 2n−1
        let f = RuleInjection::affine(Domain::NatFromOne, 2, 0);
        let g = f.conjugate_embedding(2, -1, Domain::NatFromOne).unwrap();
        for n in 1..50i64 {
            let x = big(2 * n - 1);
            assert_eq!(g.apply(&x).unwrap(), big(2 * (2 * n) - 1));
            assert!(g.try_apply(&big(2 * n)).is_none());
        }
    }

    #[test]
    fn json_round_trip() {
        let f = RuleInjection::new(
            Domain::NatFromOne,
            2,
            vec![(0, Affine::new(2, -3)), (1, Affine::new(2, 1))],
            [(big(2), big(1))].into_iter().collect(),
            BTreeSet::new(),
        )
        .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let g: RuleInjection = serde_json::from_str(&s).unwrap();
        assert!(f.equals(&g).unwrap());
    }
}
