//! Group data without tensors: per flat colouring, the weight is a product
//! of phases, so only the exponent sums need tracking.

use super::search::{walk, Schedule, Step, Visitor};
use super::{par_walk, EngineError, EngineOptions};
use crate::algebra::{Cyclotomic, FiniteGroup};
use crate::cocycle::{check_cocycle, FourCochain};
use crate::complex::{OrientedTriangulation, Triangulation4};
use crate::simplex::CHAIN4;

/// Edge ids of (01, 12, 23, 34) per facet.
fn chains(t: &Triangulation4) -> Vec<[usize; 4]> {
    (0..t.facets().len()).map(|f| CHAIN4.map(|p| t.facet_edges(f)[p])).collect()
}

fn require_cocycle(g: &FiniteGroup, pi: &FourCochain) -> Result<(), EngineError> {
    let check = check_cocycle(g, pi)?;
    match check.first_violation {
        Some(v) => Err(EngineError::NotCocycle(v)),
        None => Ok(()),
    }
}

/// Σ_f ε_f·π(chain of f) mod N for one coloring.
pub fn labelling_exponent(o: &OrientedTriangulation, pi: &FourCochain, edges: &[usize]) -> u32 {
    let n = pi.modulus() as i64;
    let t = o.base();
    let mut acc = 0i64;
    for (f, chain) in chains(t).into_iter().enumerate() {
        acc += o.epsilon()[f] as i64 * pi.get(chain.map(|e| edges[e])) as i64;
    }
    acc.rem_euclid(n) as u32
}

/// Π_f ζ^{ε_f π(S_f)} for one coloring.
pub fn labelling_phase(o: &OrientedTriangulation, pi: &FourCochain, edges: &[usize]) -> Cyclotomic {
    Cyclotomic::zeta_pow(pi.modulus(), labelling_exponent(o, pi, edges) as i64)
}

struct Phases<'a> {
    cocycles: &'a [FourCochain],
    chains: &'a [[usize; 4]],
    epsilon: &'a [i8],
    exps: Vec<i64>,
    hist: Vec<Vec<u64>>,
}

impl Phases<'_> {
    fn shift(&mut self, step: &Step, labels: &[usize], dir: i64) {
        for &f in &step.facets_done {
            let args = self.chains[f].map(|e| labels[e]);
            let s = dir * self.epsilon[f] as i64;
            for (acc, pi) in self.exps.iter_mut().zip(self.cocycles) {
                *acc += s * pi.get(args) as i64;
            }
        }
    }
}

impl Visitor for Phases<'_> {
    fn enter(&mut self, step: &Step, labels: &[usize]) {
        self.shift(step, labels, 1);
    }

    fn leave(&mut self, step: &Step, labels: &[usize]) {
        self.shift(step, labels, -1);
    }

    fn leaf(&mut self, _: &[usize]) {
        for ((h, &e), pi) in self.hist.iter_mut().zip(&self.exps).zip(self.cocycles) {
            h[e.rem_euclid(pi.modulus() as i64) as usize] += 1;
        }
    }
}

fn weight(g: &FiniteGroup, v: usize, n: u32, hist: &[u64]) -> Result<Cyclotomic, EngineError> {
    let k = Cyclotomic::from_int(n, g.order() as i64);
    let scale = k.pow(-(v as i64)).map_err(|_| EngineError::ZeroK)?;
    Ok(&Cyclotomic::from_exponent_counts(n, hist) * &scale)
}

/// Several cocycles over one enumeration of flat colourings.
pub fn invariants_group_fast_many(
    o: &OrientedTriangulation,
    g: &FiniteGroup,
    cocycles: &[FourCochain],
    opts: &EngineOptions,
) -> Result<Vec<Cyclotomic>, EngineError> {
    for pi in cocycles {
        require_cocycle(g, pi)?;
    }
    let t = o.base();
    let sched = Schedule::new(t);
    let chains = chains(t);
    let parts = par_walk(
        g,
        &sched,
        t.edges().len(),
        opts.workers,
        || Phases {
            cocycles,
            chains: &chains,
            epsilon: o.epsilon(),
            exps: vec![0; cocycles.len()],
            hist: cocycles.iter().map(|pi| vec![0; pi.modulus() as usize]).collect(),
        },
        |p| p.hist,
    )?;
    cocycles
        .iter()
        .enumerate()
        .map(|(c, pi)| {
            let mut hist = vec![0u64; pi.modulus() as usize];
            for part in &parts {
                for (a, b) in hist.iter_mut().zip(&part[c]) {
                    *a += b;
                }
            }
            weight(g, t.vertex_count(), pi.modulus(), &hist)
        })
        .collect()
}

/// |G|^{-v} Σ_ℓ Π_f ζ^{ε_f π(S_f)} over flat colourings ℓ.
pub fn invariant_group_fast(
    o: &OrientedTriangulation,
    g: &FiniteGroup,
    pi: &FourCochain,
    opts: &EngineOptions,
) -> Result<Cyclotomic, EngineError> {
    Ok(invariants_group_fast_many(o, g, std::slice::from_ref(pi), opts)?.remove(0))
}

struct Count(u64);

impl Visitor for Count {
    fn enter(&mut self, _: &Step, _: &[usize]) {}
    fn leave(&mut self, _: &Step, _: &[usize]) {}
    fn leaf(&mut self, _: &[usize]) {
        self.0 += 1;
    }
}

/// Number of flat colourings.
pub fn flat_coloring_count(t: &Triangulation4, g: &FiniteGroup, opts: &EngineOptions) -> Result<u64, EngineError> {
    let sched = Schedule::new(t);
    let parts = par_walk(g, &sched, t.edges().len(), opts.workers, || Count(0), |c| c.0)?;
    Ok(parts.into_iter().sum())
}

/// All flat colourings, indexed by edge id, in search order.
pub fn flat_colorings(t: &Triangulation4, g: &FiniteGroup) -> Vec<Vec<usize>> {
    struct Collect(Vec<Vec<usize>>);
    impl Visitor for Collect {
        fn enter(&mut self, _: &Step, _: &[usize]) {}
        fn leave(&mut self, _: &Step, _: &[usize]) {}
        fn leaf(&mut self, labels: &[usize]) {
            self.0.push(labels.to_vec());
        }
    }
    let sched = Schedule::new(t);
    let mut labels = vec![0; t.edges().len()];
    let mut c = Collect(Vec::new());
    walk(g, &sched, 0, &mut labels, &mut c);
    c.0
}
