//! Tabulated spherical 2-category data for the generic state-sum engine.
//!
//! Labels: edges carry simple objects, a triangle (i<j<k) carries a basis
//! 1-morphism f ∈ Hom(e_ik, e_jk ⊗ e_ij) keyed by (e_ij, e_jk, e_ik), and a
//! tetrahedron carries a 2H space whose dimension is tabulated. Partition
//! tensors are either produced by the group rule or read from a table.

mod io;
mod verify;

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use thiserror::Error;

use crate::algebra::{Cyclotomic, FiniteGroup};
use crate::cocycle::{check_cocycle, CocycleError, FourCochain};
use crate::simplex::{slot_positions, tet_face_positions, TRIANGLES4};

pub use io::{load_data, save_data};
pub use verify::{verify_data, CheckOutcome, VerifyOptions, VerifyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("object {0}: dimension is not invertible")]
    NotInvertible(usize),
    #[error("object {0} has no dual")]
    MissingDual(usize),
    #[error("dual map is not an involution at object {0}")]
    DualNotInvolution(usize),
    #[error("object {0}: dimension differs from that of its dual")]
    DualDimension(usize),
    #[error("triangle label {label}: {msg}")]
    TriangleLabel { label: usize, msg: String },
    #[error("2H entry {key}: {msg}")]
    TwoHom { key: String, msg: String },
    #[error("shape mismatch for Z({sign}) at {labels}: expected {expected} entries, found {found}")]
    Shape { sign: char, labels: String, expected: usize, found: usize },
    #[error("no partition tensor for Z({sign}) at {labels}")]
    MissingTensor { sign: char, labels: String },
    #[error("labels {0} are not admissible")]
    NotAdmissible(String),
    #[error("the cocycle condition fails at {0:?}")]
    NotCocycle([usize; 5]),
    #[error("data has no simple objects")]
    Empty,
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleObject {
    pub dim: Cyclotomic,
    pub dual: usize,
}

/// A basis 1-morphism for the triangle key (e_ij, e_jk, e_ik).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLabel {
    pub edges: (usize, usize, usize),
    pub dim: Cyclotomic,
}

/// Edge labels (ij, ik, il, jk, jl, kl) and face labels (ijk, ijl, ikl, jkl).
pub type TetKey = ([usize; 6], [usize; 4]);

/// Sign, ten edge labels and ten face labels of a 4-simplex in local lex order.
pub type SimplexKey = (i8, [usize; 10], [usize; 10]);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorSource {
    /// Z(±) = ζ^{±π(ℓ01, ℓ12, ℓ23, ℓ34)} on flat labels.
    Group { group: FiniteGroup, cocycle: FourCochain },
    Table(BTreeMap<SimplexKey, Vec<Cyclotomic>>),
}

/// Which edge of a triangle is unknown when looking up completions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Missing {
    Ij,
    Jk,
    Ik,
}

#[derive(Debug, Clone)]
pub struct SphericalData {
    modulus: u32,
    objects: Vec<SimpleObject>,
    object_inv: Vec<Cyclotomic>,
    labels: Vec<FaceLabel>,
    triangles: HashMap<(usize, usize, usize), Vec<usize>>,
    completions: HashMap<(Missing, usize, usize), Vec<usize>>,
    twohom: BTreeMap<TetKey, usize>,
    source: TensorSource,
    k: Cyclotomic,
}

impl PartialEq for SphericalData {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.objects == other.objects
            && self.labels == other.labels
            && self.twohom == other.twohom
            && self.source == other.source
    }
}

pub(crate) fn fmt_labels(edges: &[usize], faces: &[usize]) -> String {
    let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("edges [{}] faces [{}]", j(edges), j(faces))
}

impl SphericalData {
    /// Assembles data and checks every structural invariant.
    pub fn new(
        modulus: u32,
        objects: Vec<SimpleObject>,
        labels: Vec<FaceLabel>,
        twohom: BTreeMap<TetKey, usize>,
        source: TensorSource,
    ) -> Result<Self, DataError> {
        let n = objects.len();
        if n == 0 {
            return Err(DataError::Empty);
        }
        let mut object_inv = Vec::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            let inv = o.dim.inv().map_err(|_| DataError::NotInvertible(i))?;
            object_inv.push(inv);
            if o.dual >= n {
                return Err(DataError::MissingDual(i));
            }
        }
        for (i, o) in objects.iter().enumerate() {
            if objects[o.dual].dual != i {
                return Err(DataError::DualNotInvolution(i));
            }
            if objects[o.dual].dim != o.dim {
                return Err(DataError::DualDimension(i));
            }
        }
        let mut triangles: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
        for (id, l) in labels.iter().enumerate() {
            let (a, b, c) = l.edges;
            if a >= n || b >= n || c >= n {
                return Err(DataError::TriangleLabel { label: id, msg: "edge object out of range".into() });
            }
            if l.dim.inv().is_err() {
                return Err(DataError::TriangleLabel { label: id, msg: "dimension is not invertible".into() });
            }
            triangles.entry(l.edges).or_default().push(id);
        }
        let mut completions: HashMap<(Missing, usize, usize), Vec<usize>> = HashMap::new();
        for &(a, b, c) in triangles.keys() {
            completions.entry((Missing::Ik, a, b)).or_default().push(c);
            completions.entry((Missing::Jk, a, c)).or_default().push(b);
            completions.entry((Missing::Ij, b, c)).or_default().push(a);
        }
        for v in completions.values_mut() {
            v.sort_unstable();
        }
        let data = SphericalData {
            modulus,
            k: Cyclotomic::from_int(modulus, n as i64),
            objects,
            object_inv,
            labels,
            triangles,
            completions,
            twohom,
            source,
        };
        for key in data.twohom.keys() {
            if !data.tet_admissible(key) {
                return Err(DataError::TwoHom {
                    key: fmt_labels(&key.0, &key.1),
                    msg: "face labels inconsistent with edges".into(),
                });
            }
        }
        match &data.source {
            TensorSource::Group { group, cocycle } => {
                if group.order() != n || cocycle.modulus() != modulus {
                    return Err(CocycleError::OrderMismatch { expected: n, found: group.order() }.into());
                }
            }
            TensorSource::Table(map) => {
                for (key, entries) in map {
                    let expected = data.simplex_extent(key.1, key.2)?;
                    if expected != entries.len() {
                        return Err(DataError::Shape {
                            sign: sign_char(key.0),
                            labels: fmt_labels(&key.1, &key.2),
                            expected,
                            found: entries.len(),
                        });
                    }
                }
                for (e, f) in data.simplex_labellings() {
                    for sign in [1i8, -1] {
                        if !map.contains_key(&(sign, e, f)) && data.simplex_extent(e, f)? != 0 {
                            return Err(DataError::MissingTensor { sign: sign_char(sign), labels: fmt_labels(&e, &f) });
                        }
                    }
                }
            }
        }
        Ok(data)
    }

    /// 2Hilb[G] twisted by a 4-cocycle.
    pub fn from_group_cocycle(group: &FiniteGroup, pi: &FourCochain) -> Result<Self, DataError> {
        let check = check_cocycle(group, pi)?;
        if let Some(q) = check.first_violation {
            return Err(DataError::NotCocycle(q));
        }
        let n = group.order();
        let modulus = pi.modulus();
        let one = Cyclotomic::one(modulus);
        let objects = group.elements().map(|g| SimpleObject { dim: one.clone(), dual: group.inv(g) }).collect();
        let labels = (0..n * n).map(|id| FaceLabel { edges: (id / n, id % n, group.mul(id / n, id % n)), dim: one.clone() }).collect();
        let mut twohom = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // tetrahedron ijkl with e_ij = a, e_jk = b, e_kl = c
                    let (ik, jl) = (group.mul(a, b), group.mul(b, c));
                    let il = group.mul(ik, c);
                    let edges = [a, ik, il, b, jl, c];
                    let faces = [a * n + b, a * n + jl, ik * n + c, b * n + c];
                    twohom.insert((edges, faces), 1);
                }
            }
        }
        Self::new(modulus, objects, labels, twohom, TensorSource::Group { group: group.clone(), cocycle: pi.clone() })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[SimpleObject] {
        &self.objects
    }

    pub fn object_dim(&self, a: usize) -> &Cyclotomic {
        &self.objects[a].dim
    }

    pub fn object_dim_inv(&self, a: usize) -> &Cyclotomic {
        &self.object_inv[a]
    }

    pub fn labels(&self) -> &[FaceLabel] {
        &self.labels
    }

    pub fn label_dim(&self, f: usize) -> &Cyclotomic {
        &self.labels[f].dim
    }

    /// K, the number of simple objects.
    pub fn k(&self) -> &Cyclotomic {
        &self.k
    }

    pub fn source(&self) -> &TensorSource {
        &self.source
    }

    pub fn twohom_table(&self) -> &BTreeMap<TetKey, usize> {
        &self.twohom
    }

    /// The group and cocycle when the data is the group rule.
    pub fn group_rule(&self) -> Option<(&FiniteGroup, &FourCochain)> {
        match &self.source {
            TensorSource::Group { group, cocycle } => Some((group, cocycle)),
            TensorSource::Table(_) => None,
        }
    }

    /// Face labels for the triangle key (e_ij, e_jk, e_ik).
    pub fn triangle_labels(&self, ij: usize, jk: usize, ik: usize) -> &[usize] {
        self.triangles.get(&(ij, jk, ik)).map_or(&[], |v| v.as_slice())
    }

    /// Admissible values of the missing edge given the other two, in the
    /// order (ij, jk), (ij, ik) or (jk, ik).
    pub fn completions(&self, missing: Missing, x: usize, y: usize) -> &[usize] {
        self.completions.get(&(missing, x, y)).map_or(&[], |v| v.as_slice())
    }

    pub fn admissible_triples(&self) -> usize {
        self.triangles.len()
    }

    fn tet_admissible(&self, (e, f): &TetKey) -> bool {
        // faces ijk, ijl, ikl, jkl over edges ij ik il jk jl kl
        let roles = [(0, 3, 1), (0, 4, 2), (1, 5, 2), (3, 5, 4)];
        roles.iter().zip(f).all(|(&(a, b, c), &fl)| fl < self.labels.len() && self.labels[fl].edges == (e[a], e[b], e[c]))
    }

    /// dim 2H for a labelled tetrahedron; 0 when absent.
    pub fn twohom_dim(&self, edges: [usize; 6], faces: [usize; 4]) -> usize {
        self.twohom.get(&(edges, faces)).copied().unwrap_or(0)
    }

    /// Label key of the tetrahedron omitting local position `k` of a simplex.
    pub fn tet_key(edges: &[usize; 10], faces: &[usize; 10], k: usize) -> TetKey {
        let (ep, tp) = tet_face_positions(k);
        (ep.map(|p| edges[p]), tp.map(|p| faces[p]))
    }

    /// Slot extents in slot order (inputs first) for a labelled simplex.
    pub fn slot_dims(&self, plus: bool, edges: &[usize; 10], faces: &[usize; 10]) -> [usize; 5] {
        slot_positions(plus).map(|k| {
            let (e, f) = Self::tet_key(edges, faces, k);
            self.twohom_dim(e, f)
        })
    }

    fn simplex_extent(&self, edges: [usize; 10], faces: [usize; 10]) -> Result<usize, DataError> {
        if !self.simplex_admissible(&edges, &faces) {
            return Err(DataError::NotAdmissible(fmt_labels(&edges, &faces)));
        }
        Ok(self.slot_dims(true, &edges, &faces).iter().product())
    }

    /// Every face label matches its edges.
    pub fn simplex_admissible(&self, edges: &[usize; 10], faces: &[usize; 10]) -> bool {
        TRIANGLES4.iter().zip(faces).all(|(t, &f)| {
            let [ij, jk, ik] = crate::simplex::triangle_edge_roles(*t);
            f < self.labels.len() && self.labels[f].edges == (edges[ij], edges[jk], edges[ik])
        })
    }

    /// Z(sign) for a labelled simplex in slot order, row-major.
    pub fn simplex_tensor(&self, sign: i8, edges: &[usize; 10], faces: &[usize; 10]) -> Result<Vec<Cyclotomic>, DataError> {
        if !self.simplex_admissible(edges, faces) {
            return Err(DataError::NotAdmissible(fmt_labels(edges, faces)));
        }
        match &self.source {
            TensorSource::Group { cocycle, .. } => {
                let chain = crate::simplex::CHAIN4.map(|p| edges[p]);
                Ok(vec![crate::cocycle::eval_phase(cocycle, chain, sign)])
            }
            TensorSource::Table(map) => match map.get(&(sign, *edges, *faces)) {
                Some(v) => Ok(v.clone()),
                None if self.slot_dims(sign > 0, edges, faces).iter().product::<usize>() == 0 => Ok(vec![]),
                None => Err(DataError::MissingTensor { sign: sign_char(sign), labels: fmt_labels(edges, faces) }),
            },
        }
    }

    /// All admissible labellings of a single 4-simplex, edges in lex order.
    pub fn simplex_labellings(&self) -> Vec<([usize; 10], [usize; 10])> {
        self.complete_labellings(5)
            .into_iter()
            .map(|(e, f)| (e.try_into().expect("ten edges"), f.try_into().expect("ten faces")))
            .collect()
    }

    /// All admissible labellings of the full simplex on `nv` vertices, as
    /// (edge labels, face labels) with edges and triangles in lex order.
    pub fn complete_labellings(&self, nv: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let edges: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a + 1..nv).map(move |b| (a, b))).collect();
        let epos = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b)).expect("edge");
        let tris: Vec<[usize; 3]> = (0..nv)
            .flat_map(|a| (a + 1..nv).flat_map(move |b| (b + 1..nv).map(move |c| [a, b, c])))
            .collect();
        let roles: Vec<[usize; 3]> = tris.iter().map(|t| [epos(t[0], t[1]), epos(t[1], t[2]), epos(t[0], t[2])]).collect();
        // triangles closing at each edge position (their jk edge comes last)
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (ti, r) in roles.iter().enumerate() {
            closing[r[1]].push(ti);
        }
        let mut out = Vec::new();
        let mut lab = vec![0usize; edges.len()];
        self.label_rec(0, &mut lab, &roles, &closing, &mut out);
        out
    }

    fn label_rec(
        &self,
        pos: usize,
        lab: &mut Vec<usize>,
        roles: &[[usize; 3]],
        closing: &[Vec<usize>],
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if pos == lab.len() {
            let choices: Vec<&[usize]> = roles.iter().map(|r| self.triangle_labels(lab[r[0]], lab[r[1]], lab[r[2]])).collect();
            for faces in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
                out.push((lab.clone(), faces));
            }
            return;
        }
        for a in 0..self.objects.len() {
            lab[pos] = a;
            let ok = closing[pos].iter().all(|&t| {
                let r = roles[t];
                !self.triangle_labels(lab[r[0]], lab[r[1]], lab[r[2]]).is_empty()
            });
            if ok {
                self.label_rec(pos + 1, lab, roles, closing, out);
            }
        }
    }

    /// Replaces the group rule by an explicit table.
    pub fn tabulate(&self) -> SphericalData {
        if let TensorSource::Table(_) = self.source {
            return self.clone();
        }
        let mut map = BTreeMap::new();
        for (e, f) in self.simplex_labellings() {
            for sign in [1i8, -1] {
                let z = self.simplex_tensor(sign, &e, &f).expect("admissible labelling");
                map.insert((sign, e, f), z);
            }
        }
        let mut out = self.clone();
        out.source = TensorSource::Table(map);
        out
    }

    /// Copy with a replaced object dimension; skips validation so faults can be injected.
    pub fn with_object_dim_unchecked(&self, a: usize, dim: Cyclotomic) -> SphericalData {
        let mut out = self.clone();
        out.object_inv[a] = dim.inv().unwrap_or_else(|_| Cyclotomic::zero(self.modulus));
        out.objects[a].dim = dim;
        out
    }

    /// Copy of tabulated data with one tensor entry replaced, unchecked.
    pub fn with_tensor_entry_unchecked(&self, key: &SimplexKey, index: usize, value: Cyclotomic) -> SphericalData {
        let mut out = self.tabulate();
        if let TensorSource::Table(map) = &mut out.source {
            if let Some(v) = map.get_mut(key) {
                v[index] = value;
            }
        }
        out
    }

    /// Copy of tabulated data with every tensor replaced by `f(key, entries)`,
    /// and 2H dimensions replaced by `dims(key)`; checked.
    pub fn map_tables(
        &self,
        dims: impl Fn(&TetKey) -> usize,
        f: impl Fn(&SimplexKey, &[Cyclotomic], &SphericalData) -> Vec<Cyclotomic>,
    ) -> Result<SphericalData, DataError> {
        let base = self.tabulate();
        let twohom: BTreeMap<TetKey, usize> = base.twohom.keys().map(|k| (*k, dims(k))).collect();
        let mut shaped = base.clone();
        shaped.twohom = twohom.clone();
        let TensorSource::Table(map) = &base.source else { unreachable!("tabulated") };
        let map = map.iter().map(|(k, v)| (*k, f(k, v, &shaped))).collect();
        SphericalData::new(base.modulus, base.objects.clone(), base.labels.clone(), twohom, TensorSource::Table(map))
    }
}

pub(crate) fn sign_char(sign: i8) -> char {
    if sign > 0 {
        '+'
    } else {
        '-'
    }
}
