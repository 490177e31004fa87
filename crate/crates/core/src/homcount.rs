//! Edge-path presentation of π₁ from the 2-skeleton, and homomorphism counts.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteGroup;
use crate::complex::Triangulation4;

pub const DEFAULT_HOM_BUDGET: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("complex is not connected")]
    Disconnected,
    #[error("search exceeded {0} nodes")]
    Budget(u64),
    #[error("relator letter {0} out of range")]
    BadLetter(usize),
}

/// A generator with exponent +1 or -1.
pub type Letter = (usize, i8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
    /// Generator of each edge, `None` on the spanning tree.
    pub edge_generators: Vec<Option<usize>>,
}

impl GroupPresentation {
    /// A presentation not tied to a complex.
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<Self, HomError> {
        if let Some(&(x, _)) = relators.iter().flatten().find(|(x, _)| *x >= generators) {
            return Err(HomError::BadLetter(x));
        }
        Ok(GroupPresentation { generators, relators, edge_generators: Vec::new() })
    }

    pub fn tree_edges(&self) -> usize {
        self.edge_generators.iter().filter(|g| g.is_none()).count()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators)?;
        for r in &self.relators {
            let w: Vec<String> =
                r.iter().map(|&(x, e)| if e > 0 { format!("x{x}") } else { format!("x{x}^-1") }).collect();
            writeln!(f, "relator {}", w.join(" "))?;
        }
        Ok(())
    }
}

/// BFS spanning tree from vertex 0; one relator (ij)(jk)(ik)⁻¹ per triangle.
pub fn presentation(t: &Triangulation4) -> Result<GroupPresentation, HomError> {
    let nv = t.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (id, &[a, b]) in t.edges().iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut tree = vec![false; t.edges().len()];
    let mut seen = vec![false; nv];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, id) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                tree[id] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(HomError::Disconnected);
    }
    let mut next = 0;
    let edge_generators: Vec<Option<usize>> = tree
        .iter()
        .map(|&in_tree| {
            (!in_tree).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let relators = t
        .triangles()
        .iter()
        .filter_map(|&[i, j, k]| {
            let gen = |a, b| edge_generators[t.edge_id(&[a, b]).expect("edge")];
            let word: Vec<Letter> = [(gen(i, j), 1), (gen(j, k), 1), (gen(i, k), -1)]
                .into_iter()
                .filter_map(|(g, e)| g.map(|g| (g, e)))
                .collect();
            (!word.is_empty()).then_some(word)
        })
        .collect();
    Ok(GroupPresentation { generators: next, relators, edge_generators })
}

/// Exhaustive assignment of generators to G, pruned as soon as a relator is
/// fully assigned and fails. `budget` bounds the number of search nodes.
pub fn count_homs(p: &GroupPresentation, g: &FiniteGroup, budget: u64) -> Result<u64, HomError> {
    let order = generator_order(p);
    let mut depth_of = vec![0; p.generators];
    for (d, &x) in order.iter().enumerate() {
        depth_of[x] = d;
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); p.generators];
    for (ri, r) in p.relators.iter().enumerate() {
        if let Some(d) = r.iter().map(|&(x, _)| depth_of[x]).max() {
            closing[d].push(ri);
        }
    }
    let mut search = HomSearch { p, g, order: &order, closing: &closing, values: vec![0; p.generators], nodes: 0, budget };
    search.run(0)
}

struct HomSearch<'a> {
    p: &'a GroupPresentation,
    g: &'a FiniteGroup,
    order: &'a [usize],
    closing: &'a [Vec<usize>],
    values: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl HomSearch<'_> {
    fn holds(&self, r: &[Letter]) -> bool {
        let e = r.iter().fold(0, |acc, &(x, s)| {
            let v = self.values[x];
            self.g.mul(acc, if s > 0 { v } else { self.g.inv(v) })
        });
        e == 0
    }

    fn run(&mut self, d: usize) -> Result<u64, HomError> {
        if d == self.order.len() {
            return Ok(1);
        }
        let mut count = 0;
        for v in self.g.elements() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(HomError::Budget(self.budget));
            }
            self.values[self.order[d]] = v;
            if self.closing[d].iter().all(|&ri| self.holds(&self.p.relators[ri])) {
                count += self.run(d + 1)?;
            }
        }
        Ok(count)
    }
}

/// Greedy: close the most relators, then touch the most partly assigned ones.
fn generator_order(p: &GroupPresentation) -> Vec<usize> {
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); p.generators];
    for (ri, r) in p.relators.iter().enumerate() {
        for &(x, _) in r {
            if !occurs[x].contains(&ri) {
                occurs[x].push(ri);
            }
        }
    }
    let mut assigned = vec![false; p.generators];
    let mut order = Vec::with_capacity(p.generators);
    for _ in 0..p.generators {
        let mut best: Option<((usize, usize), usize)> = None;
        for x in (0..p.generators).filter(|&x| !assigned[x]) {
            let mut closes = 0;
            let mut touches = 0;
            for &ri in &occurs[x] {
                let r = &p.relators[ri];
                if r.iter().all(|&(y, _)| y == x || assigned[y]) {
                    closes += 1;
                } else if r.iter().any(|&(y, _)| assigned[y]) {
                    touches += 1;
                }
            }
            if best.is_none_or(|(score, _)| (closes, touches) > score) {
                best = Some(((closes, touches), x));
            }
        }
        let (_, x) = best.expect("unassigned generator");
        assigned[x] = true;
        order.push(x);
    }
    order
}
