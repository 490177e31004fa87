//! State-sum evaluation.
//!
//! [`invariant`] is the generic engine: it enumerates admissible labellings,
//! builds one partition tensor per facet and contracts the closed network.
//! [`invariant_group_fast`] handles group data without tensors, and
//! [`oracle_invariant`] is an unpruned brute force over all edge colourings.

mod fast;
mod oracle;
pub(crate) mod search;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::Cyclotomic;
use crate::catdata::{DataError, SphericalData};
use crate::cocycle::CocycleError;
use crate::complex::OrientedTriangulation;
use crate::network::Tensor;
use crate::simplex::{in_slot_count, slot_positions};
use search::{walk, EdgeRule, Schedule, Step, Visitor};

pub use fast::{
    flat_coloring_count, flat_colorings, invariant_group_fast, invariants_group_fast_many, labelling_exponent,
    labelling_phase,
};
pub use oracle::{oracle_flat_count, oracle_invariant, OracleResult, DEFAULT_ORACLE_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("dimension K is zero")]
    ZeroK,
    #[error("{needed} colourings exceed the oracle budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("group of order {group} does not match cochain over order {cochain}")]
    GroupMismatch { group: usize, cochain: usize },
    #[error("the cocycle condition fails at {0:?}")]
    NotCocycle([usize; 5]),
    #[error("labelling does not cover the complex")]
    BadLabelling,
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Debug, Clone)]
pub struct EngineOptions {
    /// Worker threads; results do not depend on this.
    pub workers: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { workers: 1 }
    }
}

/// Edge and face labels indexed by the complex's edge and triangle ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub tetrahedron: usize,
    pub input: bool,
    pub dim: usize,
}

/// The array a labelled facet contributes, slots in induced-boundary order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTensor {
    pub facet: usize,
    pub sign: i8,
    pub slots: Vec<Slot>,
    pub entries: Vec<Cyclotomic>,
}

impl PartitionTensor {
    fn into_network(self) -> Tensor {
        let indices = self.slots.iter().map(|s| s.tetrahedron).collect();
        let dims = self.slots.iter().map(|s| s.dim).collect();
        Tensor::new(indices, dims, self.entries)
    }
}

fn local_labels(o: &OrientedTriangulation, l: &Labelling, facet: usize) -> ([usize; 10], [usize; 10]) {
    let t = o.base();
    (t.facet_edges(facet).map(|e| l.edges[e]), t.facet_triangles(facet).map(|f| l.faces[f]))
}

/// Z(±) of one facet under `l`.
pub fn simplex_tensor(
    data: &SphericalData,
    o: &OrientedTriangulation,
    l: &Labelling,
    facet: usize,
) -> Result<PartitionTensor, EngineError> {
    let t = o.base();
    if l.edges.len() != t.edges().len() || l.faces.len() != t.triangles().len() {
        return Err(EngineError::BadLabelling);
    }
    let sign = o.epsilon()[facet];
    let plus = sign > 0;
    let (le, lf) = local_labels(o, l, facet);
    let entries = data.simplex_tensor(sign, &le, &lf)?;
    let dims = data.slot_dims(plus, &le, &lf);
    let nin = in_slot_count(plus);
    let slots = slot_positions(plus)
        .iter()
        .enumerate()
        .map(|(i, &k)| Slot { tetrahedron: t.facet_tets(facet)[k], input: i < nin, dim: dims[i] })
        .collect();
    Ok(PartitionTensor { facet, sign, slots, entries })
}

/// Z(M, T, ℓ): the closed network of all facet tensors, fully contracted.
pub fn contract_network(data: &SphericalData, o: &OrientedTriangulation, l: &Labelling) -> Result<Cyclotomic, EngineError> {
    let tensors = (0..o.base().facets().len())
        .map(|f| simplex_tensor(data, o, l, f).map(PartitionTensor::into_network))
        .collect::<Result<Vec<_>, _>>()?;
    let out = crate::network::contract_network(tensors, &[], data.modulus());
    Ok(out.data.into_iter().next().unwrap_or_else(|| Cyclotomic::zero(data.modulus())))
}

/// Face-label choices per triangle for an edge labelling, in triangle order.
fn face_choices<'a>(data: &'a SphericalData, o: &OrientedTriangulation, edges: &[usize]) -> Vec<&'a [usize]> {
    let t = o.base();
    t.triangles()
        .iter()
        .map(|&[i, j, k]| {
            let e = |a: usize, b: usize| edges[t.edge_id(&[a, b]).expect("edge")];
            data.triangle_labels(e(i, j), e(j, k), e(i, k))
        })
        .collect()
}

/// All admissible labellings, materialised.
pub fn enumerate_labellings(o: &OrientedTriangulation, data: &SphericalData) -> Vec<Labelling> {
    struct Collect<'a> {
        data: &'a SphericalData,
        o: &'a OrientedTriangulation,
        out: Vec<Labelling>,
    }
    impl Visitor for Collect<'_> {
        fn enter(&mut self, _: &Step, _: &[usize]) {}
        fn leave(&mut self, _: &Step, _: &[usize]) {}
        fn leaf(&mut self, labels: &[usize]) {
            let choices = face_choices(self.data, self.o, labels);
            for faces in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
                self.out.push(Labelling { edges: labels.to_vec(), faces });
            }
        }
    }
    let sched = Schedule::new(o.base());
    let mut labels = vec![0; o.base().edges().len()];
    let mut v = Collect { data, o, out: Vec::new() };
    walk(data, &sched, 0, &mut labels, &mut v);
    v.out
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool, EngineError> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| EngineError::Pool(e.to_string()))
}

/// Splits the search by prefix, runs each part with a fresh visitor on a
/// pool of `workers` threads and returns the parts in prefix order.
pub(crate) fn par_walk<R, V, T>(
    rule: &R,
    sched: &Schedule,
    edge_count: usize,
    workers: usize,
    init: impl Fn() -> V + Sync,
    finish: impl Fn(V) -> T + Sync,
) -> Result<Vec<T>, EngineError>
where
    R: EdgeRule,
    V: Visitor,
    T: Send,
{
    let depth = search::split_depth(rule, sched, edge_count, 16 * workers.max(1));
    let prefixes = search::prefixes(rule, sched, depth, edge_count);
    let run = |mut labels: Vec<usize>| {
        let mut v = init();
        for step in &sched.steps[..depth] {
            v.enter(step, &labels);
        }
        walk(rule, sched, depth, &mut labels, &mut v);
        finish(v)
    };
    if workers <= 1 {
        return Ok(prefixes.into_iter().map(run).collect());
    }
    Ok(pool(workers)?.install(|| prefixes.into_par_iter().map(run).collect()))
}

struct GenericVisitor<'a> {
    data: &'a SphericalData,
    o: &'a OrientedTriangulation,
    acc: Cyclotomic,
    error: Option<EngineError>,
}

impl Visitor for GenericVisitor<'_> {
    fn enter(&mut self, _: &Step, _: &[usize]) {}
    fn leave(&mut self, _: &Step, _: &[usize]) {}

    fn leaf(&mut self, labels: &[usize]) {
        if self.error.is_some() {
            return;
        }
        let mut edge_weight = Cyclotomic::one(self.data.modulus());
        for &a in labels {
            edge_weight = &edge_weight * self.data.object_dim_inv(a);
        }
        let choices = face_choices(self.data, self.o, labels);
        for faces in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
            let mut w = edge_weight.clone();
            for &f in &faces {
                w = &w * self.data.label_dim(f);
            }
            let l = Labelling { edges: labels.to_vec(), faces };
            match contract_network(self.data, self.o, &l) {
                Ok(z) => self.acc += &(&z * &w),
                Err(e) => {
                    self.error = Some(e);
                    return;
                }
            }
        }
    }
}

/// I = K^{-v} Σ_ℓ Z(M,T,ℓ) Π_e dim(ℓe)⁻¹ Π_f dim(ℓf).
pub fn invariant(o: &OrientedTriangulation, data: &SphericalData, opts: &EngineOptions) -> Result<Cyclotomic, EngineError> {
    if data.k().is_zero() {
        return Err(EngineError::ZeroK);
    }
    let t = o.base();
    let sched = Schedule::new(t);
    let parts = par_walk(
        data,
        &sched,
        t.edges().len(),
        opts.workers,
        || GenericVisitor { data, o, acc: Cyclotomic::zero(data.modulus()), error: None },
        |v| match v.error {
            Some(e) => Err(e),
            None => Ok(v.acc),
        },
    )?;
    let mut total = Cyclotomic::zero(data.modulus());
    for p in parts {
        total += &p?;
    }
    let k_inv = data.k().inv().map_err(|_| EngineError::ZeroK)?;
    Ok(&total * &k_inv.pow(t.vertex_count() as i64).map_err(|_| EngineError::ZeroK)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_from_spec, ratio};
    use crate::cocycle::FourCochain;
    use crate::complex::boundary_5simplex;

    fn data(spec: &str) -> SphericalData {
        let g = group_from_spec(spec).unwrap();
        SphericalData::from_group_cocycle(&g, &FourCochain::trivial(g.order(), 1).unwrap()).unwrap()
    }

    #[test]
    fn sphere_values() {
        let s = boundary_5simplex();
        assert_eq!(invariant(&s, &data("cyclic:2"), &EngineOptions::default()).unwrap(), ratio(1, 1, 2));
        assert_eq!(invariant(&s, &data("sym:3"), &EngineOptions { workers: 3 }).unwrap(), ratio(1, 1, 6));
    }

    #[test]
    fn labelling_counts() {
        let s = boundary_5simplex();
        assert_eq!(enumerate_labellings(&s, &data("cyclic:2")).len(), 32);
        assert_eq!(enumerate_labellings(&s, &data("cyclic:3")).len(), 243);
    }

    #[test]
    fn partition_tensor_slots() {
        let s = boundary_5simplex();
        let d = data("cyclic:2");
        let l = enumerate_labellings(&s, &d).remove(0);
        let p = simplex_tensor(&d, &s, &l, 0).unwrap();
        assert_eq!(p.slots.len(), 5);
        assert!(p.entries.len() == 1 && p.entries[0].is_one());
        let nin = p.slots.iter().filter(|x| x.input).count();
        assert_eq!(nin, if p.sign > 0 { 2 } else { 3 });
    }
}
