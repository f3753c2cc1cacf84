//! Window checks of a lazy τ in machine words, for scalar rule systems.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use permrep_maps::{Index, Overflow, SmallRule};

use crate::LazyTau;

/// First failing index of each windowed check; `None` means it held.
#[derive(Debug, Default)]
pub(crate) struct Witnesses {
    pub bijective: Option<String>,
    pub relation: Option<String>,
    pub derived: Option<String>,
    pub periodic: Option<String>,
}

struct SmallTau {
    s1: SmallRule,
    s2: SmallRule,
    core: HashMap<i64, i64>,
    core_inv: HashMap<i64, i64>,
    fwd: HashMap<i64, Option<i64>>,
    back: HashMap<i64, Option<i64>>,
}

impl SmallTau {
    fn new(t: &LazyTau) -> Option<Self> {
        let (s1, s2) = (SmallRule::new(t.sigma1.as_rule()?)?, SmallRule::new(t.sigma2.as_rule()?)?);
        let mut core = HashMap::new();
        for (a, b) in t.core_table() {
            core.insert(a.as_int()?.to_i64()?, b.as_int()?.to_i64()?);
        }
        let core_inv = core.iter().map(|(&a, &b)| (b, a)).collect();
        Some(SmallTau { s1, s2, core, core_inv, fwd: HashMap::new(), back: HashMap::new() })
    }

    /// τ(n) = σ₁(m) if n = σ₂(m), else σ₂(τ(σ₁⁻¹ n)).
    fn tau(&mut self, n: i64) -> Result<Option<i64>, Overflow> {
        walk(n, &mut self.fwd, &self.core, &self.s1, &self.s2)
    }

    /// τ⁻¹(n) = σ₂(m) if n = σ₁(m), else σ₁(τ⁻¹(σ₂⁻¹ n)).
    fn tau_inv(&mut self, n: i64) -> Result<Option<i64>, Overflow> {
        walk(n, &mut self.back, &self.core_inv, &self.s2, &self.s1)
    }
}

/// Shared recursion: peel `outer` preimages until an `inner` preimage m
/// appears, then map m by `outer` and climb back with `inner`.
fn walk(
    n: i64,
    memo: &mut HashMap<i64, Option<i64>>,
    table: &HashMap<i64, i64>,
    outer: &SmallRule,
    inner: &SmallRule,
) -> Result<Option<i64>, Overflow> {
    if let Some(&v) = memo.get(&n) {
        return Ok(v);
    }
    let mut chain = Vec::new();
    let mut x = n;
    let mut value = loop {
        if let Some(&v) = memo.get(&x) {
            break v;
        }
        if let Some(&v) = table.get(&x) {
            break Some(v);
        }
        if let Some(m) = inner.preimage(x)? {
            break outer.try_apply(m)?;
        }
        match outer.preimage(x)? {
            Some(p) => chain.push(std::mem::replace(&mut x, p)),
            None => break None,
        }
    };
    memo.insert(x, value);
    while let Some(y) = chain.pop() {
        value = match value {
            Some(v) => inner.try_apply(v)?,
            None => None,
        };
        memo.insert(y, value);
    }
    Ok(value)
}

/// `None` when the system is not scalar-rule or a value overflows.
pub(crate) fn check(t: &LazyTau, pts: &[Index], max_period: usize) -> Option<Witnesses> {
    let mut st = SmallTau::new(t)?;
    let pts: Vec<i64> = pts.iter().map(|p| p.as_int().and_then(|x| x.to_i64())).collect::<Option<_>>()?;
    run(&mut st, &pts, max_period).ok()
}

fn run(st: &mut SmallTau, pts: &[i64], max_period: usize) -> Result<Witnesses, Overflow> {
    let mut w = Witnesses::default();
    for &n in pts {
        let tn = st.tau(n)?;
        if w.bijective.is_none() {
            let back = match tn {
                Some(v) => st.tau_inv(v)?,
                None => None,
            };
            let fwd = match st.tau_inv(n)? {
                Some(p) => st.tau(p)?,
                None => None,
            };
            if back != Some(n) || fwd != Some(n) {
                w.bijective = Some(n.to_string());
            }
        }
        let s2n = st.s2.try_apply(n)?;
        let t_s2n = match s2n {
            Some(v) => st.tau(v)?,
            None => None,
        };
        if w.relation.is_none() {
            let lhs = match tn {
                Some(v) => st.s2.try_apply(v)?,
                None => None,
            };
            let rhs = match t_s2n {
                Some(v) => st.tau(v)?,
                None => None,
            };
            if lhs.is_none() || lhs != rhs {
                w.relation = Some(n.to_string());
            }
        }
        if w.derived.is_none() && (t_s2n.is_none() || t_s2n != st.s1.try_apply(n)?) {
            w.derived = Some(n.to_string());
        }
        if w.periodic.is_none() {
            let mut x = n;
            for j in 1..=max_period {
                match st.tau(x)? {
                    Some(y) => x = y,
                    None => {
                        w.periodic = Some(format!("τ undefined along the orbit of {n}"));
                        break;
                    }
                }
                if x == n {
                    w.periodic = Some(format!("{n} has period {j}"));
                    break;
                }
            }
        }
    }
    Ok(w)
}
