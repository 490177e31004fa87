//! Static edge schedule and backtracking over admissible edge labellings.

use crate::algebra::FiniteGroup;
use crate::catdata::{Missing, SphericalData};
use crate::complex::Triangulation4;

/// Edge-label admissibility for triangles (e_ij, e_jk, e_ik).
pub(crate) trait EdgeRule: Sync {
    fn object_count(&self) -> usize;
    /// Values of the missing edge given the two known ones.
    fn candidates(&self, missing: Missing, x: usize, y: usize, out: &mut Vec<usize>);
    fn admissible(&self, ij: usize, jk: usize, ik: usize) -> bool;
}

impl EdgeRule for SphericalData {
    fn object_count(&self) -> usize {
        SphericalData::object_count(self)
    }

    fn candidates(&self, missing: Missing, x: usize, y: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(self.completions(missing, x, y));
    }

    fn admissible(&self, ij: usize, jk: usize, ik: usize) -> bool {
        !self.triangle_labels(ij, jk, ik).is_empty()
    }
}

impl EdgeRule for FiniteGroup {
    fn object_count(&self) -> usize {
        self.order()
    }

    fn candidates(&self, missing: Missing, x: usize, y: usize, out: &mut Vec<usize>) {
        out.push(match missing {
            Missing::Ik => self.mul(x, y),
            Missing::Jk => self.mul(self.inv(x), y),
            Missing::Ij => self.mul(y, self.inv(x)),
        });
    }

    fn admissible(&self, ij: usize, jk: usize, ik: usize) -> bool {
        self.mul(ij, jk) == ik
    }
}

/// A triangle whose last edge is assigned at a given step.
#[derive(Debug, Clone)]
pub(crate) struct Closing {
    /// Edge ids in role order (ij, jk, ik).
    pub roles: [usize; 3],
    pub missing: Missing,
    /// The two known edge ids in the order expected by `EdgeRule::candidates`.
    pub known: [usize; 2],
}

#[derive(Debug, Clone)]
pub(crate) struct Step {
    pub edge: usize,
    pub closing: Vec<Closing>,
    /// Facets whose ten edges are all assigned once this step is done.
    pub facets_done: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct Schedule {
    pub steps: Vec<Step>,
}

impl Schedule {
    /// Greedy order: most triangles closed, then most assigned neighbours, then lowest id.
    pub fn new(t: &Triangulation4) -> Schedule {
        let edges = t.edges();
        let ne = edges.len();
        let tri_edges: Vec<[usize; 3]> = t
            .triangles()
            .iter()
            .map(|&[i, j, k]| {
                [
                    t.edge_id(&[i, j]).expect("edge"),
                    t.edge_id(&[j, k]).expect("edge"),
                    t.edge_id(&[i, k]).expect("edge"),
                ]
            })
            .collect();
        let mut edge_tris: Vec<Vec<usize>> = vec![Vec::new(); ne];
        for (ti, r) in tri_edges.iter().enumerate() {
            for &e in r {
                edge_tris[e].push(ti);
            }
        }
        let mut assigned = vec![false; ne];
        let mut touched = vec![0usize; t.vertex_count()];
        let mut order = Vec::with_capacity(ne);
        for _ in 0..ne {
            let mut best: Option<(usize, usize, usize)> = None;
            for e in 0..ne {
                if assigned[e] {
                    continue;
                }
                let closes = edge_tris[e]
                    .iter()
                    .filter(|&&ti| tri_edges[ti].iter().all(|&x| x == e || assigned[x]))
                    .count();
                let [a, b] = edges[e];
                let adj = touched[a] + touched[b];
                let better = match best {
                    None => true,
                    Some((c, d, _)) => (closes, adj) > (c, d),
                };
                if better {
                    best = Some((closes, adj, e));
                }
            }
            let (_, _, e) = best.expect("unassigned edge");
            assigned[e] = true;
            let [a, b] = edges[e];
            touched[a] += 1;
            touched[b] += 1;
            order.push(e);
        }

        let mut depth = vec![0usize; ne];
        for (d, &e) in order.iter().enumerate() {
            depth[e] = d;
        }
        let mut steps: Vec<Step> =
            order.iter().map(|&e| Step { edge: e, closing: Vec::new(), facets_done: Vec::new() }).collect();
        for r in &tri_edges {
            let last = *r.iter().max_by_key(|&&x| depth[x]).expect("three edges");
            let (missing, known) = if last == r[2] {
                (Missing::Ik, [r[0], r[1]])
            } else if last == r[1] {
                (Missing::Jk, [r[0], r[2]])
            } else {
                (Missing::Ij, [r[1], r[2]])
            };
            steps[depth[last]].closing.push(Closing { roles: *r, missing, known });
        }
        for (fi, fe) in (0..t.facets().len()).map(|f| (f, t.facet_edges(f))) {
            let last = fe.iter().map(|&e| depth[e]).max().expect("ten edges");
            steps[last].facets_done.push(fi);
        }
        Schedule { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}

/// Candidates for step `d` given the labels assigned so far.
pub(crate) fn step_candidates<R: EdgeRule>(rule: &R, step: &Step, labels: &[usize], out: &mut Vec<usize>) {
    out.clear();
    match step.closing.first() {
        None => out.extend(0..rule.object_count()),
        Some(c) => {
            rule.candidates(c.missing, labels[c.known[0]], labels[c.known[1]], out);
            let e = step.edge;
            out.retain(|&v| {
                step.closing[1..].iter().all(|cl| {
                    let val = |x: usize| if x == e { v } else { labels[x] };
                    rule.admissible(val(cl.roles[0]), val(cl.roles[1]), val(cl.roles[2]))
                })
            });
        }
    }
}

/// Hooks for a depth-first walk over admissible edge labellings.
pub(crate) trait Visitor {
    fn enter(&mut self, step: &Step, labels: &[usize]);
    fn leave(&mut self, step: &Step, labels: &[usize]);
    fn leaf(&mut self, labels: &[usize]);
}

/// Depth-first search from `depth`, with `labels` already holding the prefix.
pub(crate) fn walk<R: EdgeRule, V: Visitor>(
    rule: &R,
    sched: &Schedule,
    depth: usize,
    labels: &mut [usize],
    visitor: &mut V,
) {
    let mut bufs: Vec<Vec<usize>> = vec![Vec::new(); sched.len() + 1];
    walk_rec(rule, sched, depth, labels, visitor, &mut bufs);
}

fn walk_rec<R: EdgeRule, V: Visitor>(
    rule: &R,
    sched: &Schedule,
    depth: usize,
    labels: &mut [usize],
    visitor: &mut V,
    bufs: &mut [Vec<usize>],
) {
    if depth == sched.len() {
        visitor.leaf(labels);
        return;
    }
    let step = &sched.steps[depth];
    let mut cands = std::mem::take(&mut bufs[depth]);
    step_candidates(rule, step, labels, &mut cands);
    for &v in &cands {
        labels[step.edge] = v;
        visitor.enter(step, labels);
        walk_rec(rule, sched, depth + 1, labels, visitor, bufs);
        visitor.leave(step, labels);
    }
    bufs[depth] = cands;
}

/// Admissible assignments of the first `depth` scheduled edges.
pub(crate) fn prefixes<R: EdgeRule>(rule: &R, sched: &Schedule, depth: usize, edge_count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0usize; edge_count]];
    let mut cands = Vec::new();
    for step in &sched.steps[..depth] {
        let mut next = Vec::new();
        for p in &out {
            step_candidates(rule, step, p, &mut cands);
            for &v in &cands {
                let mut q = p.clone();
                q[step.edge] = v;
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Smallest depth with at least `target` admissible prefixes (capped).
pub(crate) fn split_depth<R: EdgeRule>(rule: &R, sched: &Schedule, edge_count: usize, target: usize) -> usize {
    let mut depth = 0;
    while depth < sched.len().min(12) {
        if prefixes(rule, sched, depth, edge_count).len() >= target {
            break;
        }
        depth += 1;
    }
    depth
}
