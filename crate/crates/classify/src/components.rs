use std::collections::HashMap;

use num_bigint::BigInt;
use permrep_branching::{shift_cycles, BranchingSystem, WordCycle};
use permrep_extension::{window_points, Q2System};
use permrep_maps::Index;
use serde::Serialize;

use crate::ClassifyError;

/// One invariant piece. Exact partitions list the shift cycles it contains
/// (each O₂-component holds exactly one); window partitions only know
/// their window members.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub id: usize,
    pub cycles: Vec<WordCycle>,
    /// least window members
    pub sample: Vec<Index>,
    pub window_count: usize,
    /// some move leaves the window (window partitions only)
    pub open: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Partition {
    pub components: Vec<Component>,
    /// derived from the complete list of shift cycles
    pub exact: bool,
    pub window: u64,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

const SAMPLE: usize = 8;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Index of the shift cycle that the backward walk from `n` falls into.
fn cycle_of(sys: &BranchingSystem, on_cycle: &HashMap<BigInt, usize>, n: &Index, budget: u64) -> Result<usize, ClassifyError> {
    let mut x = n.clone();
    for _ in 0..budget {
        if let Some(&c) = x.as_int().and_then(|v| on_cycle.get(v)) {
            return Ok(c);
        }
        x = sys.split(&x)?.1;
    }
    Err(ClassifyError::Inconclusive(format!("backward walk from {n} exceeded {budget} steps")))
}

/// Groups of cycles (given by a union-find over cycle indices) turned into
/// components, with window members attached.
fn exact_partition(
    sys: &BranchingSystem,
    cycles: Vec<WordCycle>,
    uf: &mut UnionFind,
    on_cycle: &HashMap<BigInt, usize>,
    window: u64,
    budget: u64,
) -> Result<Partition, ClassifyError> {
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<Component> = Vec::new();
    for (i, c) in cycles.into_iter().enumerate() {
        let r = uf.find(i);
        let id = *slot.entry(r).or_insert_with(|| {
            components.push(Component { id: components.len(), cycles: Vec::new(), sample: Vec::new(), window_count: 0, open: false });
            components.len() - 1
        });
        components[id].cycles.push(c);
    }
    for n in window_points(sys.domain(), window) {
        let r = uf.find(cycle_of(sys, on_cycle, &n, budget)?);
        let comp = &mut components[slot[&r]];
        comp.window_count += 1;
        if comp.sample.len() < SAMPLE {
            comp.sample.push(n);
        }
    }
    Ok(Partition { components, exact: true, window })
}

fn cycle_table(cycles: &[WordCycle]) -> HashMap<BigInt, usize> {
    cycles.iter().enumerate().flat_map(|(i, c)| c.points.iter().map(move |p| (p.clone(), i))).collect()
}

type Move<'a> = Box<dyn Fn(&Index) -> Option<Index> + 'a>;

/// Union-find on the window under the given moves; a component is open when
/// a move from one of its members leaves the window.
fn window_partition(pts: Vec<Index>, moves: &[Move<'_>], window: u64) -> Partition {
    let pos: HashMap<Index, usize> = pts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::new(pts.len());
    let mut leaks = vec![false; pts.len()];
    for (i, p) in pts.iter().enumerate() {
        for mv in moves {
            if let Some(q) = mv(p) {
                match pos.get(&q) {
                    Some(&j) => uf.union(i, j),
                    None => leaks[i] = true,
                }
            }
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<Component> = Vec::new();
    for (i, p) in pts.into_iter().enumerate() {
        let r = uf.find(i);
        let id = *slot.entry(r).or_insert_with(|| {
            components.push(Component { id: components.len(), cycles: Vec::new(), sample: Vec::new(), window_count: 0, open: false });
            components.len() - 1
        });
        let c = &mut components[id];
        c.window_count += 1;
        c.open |= leaks[i];
        if c.sample.len() < SAMPLE {
            c.sample.push(p);
        }
    }
    Partition { components, exact: false, window }
}

/// Cyclic O₂-components. For expansive scalar systems these are exactly
/// the basins of the shift cycles; otherwise the window is split under
/// σᵢ and σᵢ⁻¹.
pub fn o2_components(sys: &BranchingSystem, window: u64, budget: u64) -> Result<Partition, ClassifyError> {
    if let Ok(sc) = shift_cycles(sys, budget) {
        let on_cycle = cycle_table(&sc.cycles);
        let mut uf = UnionFind::new(sc.cycles.len());
        return exact_partition(sys, sc.cycles, &mut uf, &on_cycle, window, budget);
    }
    let moves: Vec<Move<'_>> = vec![
        Box::new(|p| sys.sigma1.try_apply(p)),
        Box::new(|p| sys.sigma2.try_apply(p)),
        Box::new(|p| sys.sigma1.preimage(p)),
        Box::new(|p| sys.sigma2.preimage(p)),
    ];
    Ok(window_partition(window_points(sys.domain(), window), &moves, window))
}

/// Components under σ₂, τ and their inverses: O₂-components glued along τ.
pub fn q2_components(q: &Q2System, window: u64, budget: u64) -> Result<Partition, ClassifyError> {
    let sys = q.branching();
    if let Ok(sc) = shift_cycles(&sys, budget) {
        let on_cycle = cycle_table(&sc.cycles);
        let mut uf = UnionFind::new(sc.cycles.len());
        for (i, c) in sc.cycles.iter().enumerate() {
            for p in &c.points {
                let t = q
                    .tau
                    .apply(&Index::Int(p.clone()))
                    .ok_or_else(|| ClassifyError::Invalid(format!("τ undefined at {p}")))?;
                let j = cycle_of(&sys, &on_cycle, &t, budget)?;
                uf.union(i, j);
            }
        }
        return exact_partition(&sys, sc.cycles, &mut uf, &on_cycle, window, budget);
    }
    let moves: Vec<Move<'_>> = vec![
        Box::new(|p| q.sigma2.try_apply(p)),
        Box::new(|p| q.sigma2.preimage(p)),
        Box::new(|p| q.tau.apply(p)),
        Box::new(|p| q.tau.preimage(p)),
    ];
    Ok(window_partition(window_points(sys.domain(), window), &moves, window))
}
