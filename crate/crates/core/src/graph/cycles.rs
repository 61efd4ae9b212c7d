//! The cycle graph of an instance and the translation between its even
//! cycles and binary quasi-minors of `C_a`.
//!
//! Left vertices are `x_1..x_n`. Right vertices are a unit vertex `1`,
//! joined to every `x_i`, and one vertex `T[m,tj]` per generator `m` of
//! `J_j^{a_j - 1}`, joined to the `x_i` with `i` in the support of `J_j`.
//! Walking a cycle `x_{i_1} R_1 x_{i_2} R_2 … x_{i_k} R_k` the edges
//! `(x_{i_s}, R_s)` build one term and the edges `(R_s, x_{i_{s+1}})` the
//! other: an edge `(x_l, 1)` contributes `x_l`, an edge `(x_l, T[m,tj])`
//! contributes `T[x_l m, tj]`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::bipartite::BipartiteGraph;
use crate::algebra::{Binomial, Mono, Ring, TVariable, Variable, XMonomial};
use crate::model::Model;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RightVertex {
    Unit,
    Reduced { block: usize, m: XMonomial },
}

impl RightVertex {
    /// 0 for the unit vertex, the block number otherwise.
    pub fn class(&self) -> usize {
        match self {
            RightVertex::Unit => 0,
            RightVertex::Reduced { block, .. } => *block,
        }
    }

    /// The variable contributed by the edge to `x_i`.
    pub fn factor(&self, i: usize) -> Variable {
        match self {
            RightVertex::Unit => Variable::X(i),
            RightVertex::Reduced { block, m } => Variable::T(TVariable::new(*block, m.mul_var(i))),
        }
    }
}

impl fmt::Display for RightVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RightVertex::Unit => write!(f, "1"),
            RightVertex::Reduced { block, m } if m.is_one() => write!(f, "T[t{block}]"),
            RightVertex::Reduced { block, m } => write!(f, "T[{m},t{block}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CycleGraph {
    pub graph: BipartiteGraph,
    /// `left[a]` is the x-index of left vertex `a`.
    pub left: Vec<usize>,
    pub right: Vec<RightVertex>,
}

/// The cycle graph; `with_unit = false` leaves out the unit vertex, which
/// is the graph of the fiber ring.
pub fn cycle_graph(model: &Model, with_unit: bool) -> CycleGraph {
    let inst = &model.instance;
    let mut right = Vec::new();
    if with_unit {
        right.push(RightVertex::Unit);
    }
    for j in 1..=inst.r() {
        for m in inst.ideal(j).reduced_generators(inst.n, model.order()) {
            right.push(RightVertex::Reduced { block: j, m });
        }
    }
    let left: Vec<usize> = (1..=inst.n).collect();
    let mut graph = BipartiteGraph::new(
        left.iter().map(|i| format!("x{i}")).collect(),
        right.iter().map(|r| r.to_string()).collect(),
    );
    for (a, &i) in left.iter().enumerate() {
        for (b, rv) in right.iter().enumerate() {
            let edge = match rv {
                RightVertex::Unit => true,
                RightVertex::Reduced { block, .. } => inst.ideal(*block).contains(i),
            };
            if edge {
                graph.add_edge(a, b);
            }
        }
    }
    CycleGraph { graph, left, right }
}

/// `x_{xs[0]} – rs[0] – x_{xs[1]} – rs[1] – … – x_{xs[k-1]} – rs[k-1] – x_{xs[0]}`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EvenCycle {
    pub xs: Vec<usize>,
    pub rs: Vec<RightVertex>,
}

impl EvenCycle {
    /// Number of edges.
    pub fn len(&self) -> usize {
        2 * self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The same cycle walked the other way round from the same start.
    pub fn reversed(&self) -> EvenCycle {
        let k = self.xs.len();
        EvenCycle {
            xs: (0..k).map(|s| self.xs[(k - s) % k]).collect(),
            rs: (0..k).map(|s| self.rs[k - 1 - s].clone()).collect(),
        }
    }

    /// Rotated so the smallest x leads, reflected so the second vertex is the
    /// smaller of its two neighbors.
    pub fn canonical(&self) -> EvenCycle {
        let k = self.xs.len();
        let start = (0..k).min_by_key(|&s| self.xs[s]).unwrap_or(0);
        let rotated = EvenCycle {
            xs: (0..k).map(|s| self.xs[(start + s) % k]).collect(),
            rs: (0..k).map(|s| self.rs[(start + s) % k].clone()).collect(),
        };
        if k > 1 && rotated.rs[k - 1] < rotated.rs[0] {
            rotated.reversed()
        } else {
            rotated
        }
    }
}

impl fmt::Display for EvenCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, r) in self.xs.iter().zip(&self.rs) {
            write!(f, "x{x} - {r} - ")?;
        }
        match self.xs.first() {
            Some(x) => write!(f, "x{x}"),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("a cycle needs at least two x-vertices")]
    TooShort,
    #[error("x{0} is visited twice")]
    RepeatedX(usize),
    #[error("right vertices {0} and {1} come from the same block")]
    SameClass(String, String),
    #[error("x{0} is not adjacent to {1}")]
    NotAnEdge(usize, String),
    #[error("{0} is not a vertex of the cycle graph")]
    UnknownVertex(String),
    #[error("the two terms of the binomial are {0}")]
    Untranslatable(&'static str),
}

fn check_cycle(c: &EvenCycle, model: &Model) -> Result<(), CycleError> {
    let k = c.xs.len();
    if k < 2 || c.rs.len() != k {
        return Err(CycleError::TooShort);
    }
    let inst = &model.instance;
    let mut seen_x = BTreeSet::new();
    for &x in &c.xs {
        if x == 0 || x > inst.n {
            return Err(CycleError::UnknownVertex(format!("x{x}")));
        }
        if !seen_x.insert(x) {
            return Err(CycleError::RepeatedX(x));
        }
    }
    let mut class_of = std::collections::BTreeMap::new();
    for r in &c.rs {
        if let RightVertex::Reduced { block, m } = r {
            let ok = *block >= 1
                && *block <= inst.r()
                && m.n() == inst.n
                && m.degree() + 1 == inst.ideal(*block).power
                && m.support().iter().all(|&i| inst.ideal(*block).contains(i));
            if !ok {
                return Err(CycleError::UnknownVertex(r.to_string()));
            }
        }
        if let Some(prev) = class_of.insert(r.class(), r) {
            return Err(CycleError::SameClass(prev.to_string(), r.to_string()));
        }
    }
    let adjacent = |x: usize, r: &RightVertex| match r {
        RightVertex::Unit => true,
        RightVertex::Reduced { block, .. } => inst.ideal(*block).contains(x),
    };
    for s in 0..k {
        for x in [c.xs[s], c.xs[(s + 1) % k]] {
            if !adjacent(x, &c.rs[s]) {
                return Err(CycleError::NotAnEdge(x, c.rs[s].to_string()));
            }
        }
    }
    Ok(())
}

fn monomial_of(ring: &Ring, vars: impl IntoIterator<Item = Variable>) -> Mono {
    vars.into_iter().fold(ring.one(), |acc, v| {
        acc.mul(&ring.variable(&v).expect("cycle factors are ring variables"))
    })
}

/// The two terms of the binomial of a cycle, in walking order.
pub fn cycle_terms(c: &EvenCycle, model: &Model) -> Result<(Mono, Mono), CycleError> {
    check_cycle(c, model)?;
    let k = c.xs.len();
    let a = monomial_of(&model.ring, (0..k).map(|s| c.rs[s].factor(c.xs[s])));
    let b = monomial_of(&model.ring, (0..k).map(|s| c.rs[s].factor(c.xs[(s + 1) % k])));
    Ok((a, b))
}

pub fn cycle_to_binomial(c: &EvenCycle, model: &Model) -> Result<Binomial, CycleError> {
    let (a, b) = cycle_terms(c, model)?;
    Binomial::new(a, b).ok_or(CycleError::Untranslatable("equal"))
}

/// Recovers the cycle of a binomial whose terms each hold at most one
/// factor per class (x or block). Each class pairs one factor of each term:
/// `x_a` with `x_b`, or `T[x_a m, tj]` with `T[x_b m, tj]`, which is the path
/// `x_a – R – x_b`. The result is in canonical form.
pub fn binomial_to_cycle(b: &Binomial, model: &Model) -> Result<EvenCycle, CycleError> {
    let ring = &model.ring;
    let split = |m: &Mono| -> Result<Vec<Variable>, CycleError> {
        let mut f = ring.factors(m);
        f.sort_by_key(class_of_var);
        if f.windows(2).any(|w| class_of_var(&w[0]) == class_of_var(&w[1])) {
            return Err(CycleError::Untranslatable("not one factor per block"));
        }
        Ok(f)
    };
    let (fa, fb) = (split(b.lead())?, split(b.trail())?);
    if fa.len() != fb.len() || fa.iter().zip(&fb).any(|(u, v)| class_of_var(u) != class_of_var(v)) {
        return Err(CycleError::Untranslatable("not built from the same blocks"));
    }
    // edges x_from -> R -> x_to
    let mut arrows = Vec::new();
    for (u, v) in fa.iter().zip(&fb) {
        let arrow = match (u, v) {
            (Variable::X(p), Variable::X(q)) => (*p, RightVertex::Unit, *q),
            (Variable::T(s), Variable::T(t)) => {
                let (p, q) = exchange_pair(&s.gen, &t.gen)
                    .ok_or(CycleError::Untranslatable("not one exchange apart"))?;
                let m = s.gen.div_var(p).unwrap();
                (p, RightVertex::Reduced { block: s.block, m }, q)
            }
            _ => unreachable!("classes already matched"),
        };
        arrows.push(arrow);
    }
    let k = arrows.len();
    if k < 2 {
        return Err(CycleError::TooShort);
    }
    let mut xs = vec![arrows[0].0];
    let mut rs = Vec::new();
    let mut used = vec![false; k];
    let mut cur = 0;
    loop {
        used[cur] = true;
        rs.push(arrows[cur].1.clone());
        let next_x = arrows[cur].2;
        if next_x == xs[0] {
            break;
        }
        xs.push(next_x);
        let nexts: Vec<usize> = (0..k).filter(|&s| arrows[s].0 == next_x).collect();
        match nexts.as_slice() {
            [s] if !used[*s] => cur = *s,
            _ => return Err(CycleError::Untranslatable("not a single simple cycle")),
        }
    }
    if rs.len() != k {
        return Err(CycleError::Untranslatable("not a single simple cycle"));
    }
    let c = EvenCycle { xs, rs };
    check_cycle(&c, model)?;
    Ok(c.canonical())
}

fn class_of_var(v: &Variable) -> usize {
    match v {
        Variable::X(_) => 0,
        Variable::T(t) => t.block,
    }
}

/// `(p, q)` with `g / x_p = h / x_q`, `p ≠ q`.
fn exchange_pair(g: &XMonomial, h: &XMonomial) -> Option<(usize, usize)> {
    let mut p = None;
    let mut q = None;
    for i in 1..=g.n() {
        match g.exponent(i) as i64 - h.exponent(i) as i64 {
            0 => {}
            1 if p.is_none() => p = Some(i),
            -1 if q.is_none() => q = Some(i),
            _ => return None,
        }
    }
    Some((p?, q?))
}

/// All cycles of the cycle graph whose right vertices come from pairwise
/// distinct classes, with at most `max_len` edges; canonical and sorted.
pub fn admissible_cycles(model: &Model, with_unit: bool, max_len: usize) -> Vec<EvenCycle> {
    let cg = cycle_graph(model, with_unit);
    let adj = cg.graph.adjacency();
    let nl = cg.left.len();
    let classes = model.r() + 1;
    let max_k = max_len / 2;

    struct Walk<'a> {
        cg: &'a CycleGraph,
        adj: &'a [Vec<usize>],
        nl: usize,
        max_k: usize,
        xs: Vec<usize>,
        rs: Vec<usize>,
        used_class: Vec<bool>,
        on_path: Vec<bool>,
        out: Vec<EvenCycle>,
    }

    impl Walk<'_> {
        fn step(&mut self) {
            let start = self.xs[0];
            let last = *self.xs.last().unwrap();
            for &rv in &self.adj[last] {
                let class = self.cg.right[rv - self.nl].class();
                if self.used_class[class] {
                    continue;
                }
                self.used_class[class] = true;
                self.rs.push(rv);
                if self.xs.len() >= 2 && self.adj[rv].contains(&start) {
                    self.out.push(
                        EvenCycle {
                            xs: self.xs.iter().map(|&a| self.cg.left[a]).collect(),
                            rs: self.rs.iter().map(|&b| self.cg.right[b - self.nl].clone()).collect(),
                        }
                        .canonical(),
                    );
                }
                if self.xs.len() < self.max_k {
                    for &x in &self.adj[rv] {
                        if x <= start || self.on_path[x] {
                            continue;
                        }
                        self.on_path[x] = true;
                        self.xs.push(x);
                        self.step();
                        self.xs.pop();
                        self.on_path[x] = false;
                    }
                }
                self.rs.pop();
                self.used_class[class] = false;
            }
        }
    }

    let found: Vec<Vec<EvenCycle>> = (0..nl)
        .into_par_iter()
        .map(|s| {
            let mut on_path = vec![false; nl];
            on_path[s] = true;
            let mut w = Walk {
                cg: &cg,
                adj: &adj,
                nl,
                max_k,
                xs: vec![s],
                rs: Vec::new(),
                used_class: vec![false; classes],
                on_path,
                out: Vec::new(),
            };
            if max_k >= 2 {
                w.step();
            }
            w.out
        })
        .collect();
    let set: BTreeSet<EvenCycle> = found.into_iter().flatten().collect();
    set.into_iter().collect()
}

/// Binomials of all admissible cycles, sorted and deduplicated.
pub fn cycle_family(model: &Model, with_unit: bool, max_len: usize) -> Vec<Binomial> {
    let set: BTreeSet<Binomial> = admissible_cycles(model, with_unit, max_len)
        .iter()
        .filter_map(|c| cycle_to_binomial(c, model).ok())
        .collect();
    set.into_iter().collect()
}
