//! Closed triangulated 4-manifolds with totally ordered vertices.
//!
//! A [`Triangulation4`] is given by its 4-simplices (facets), each stored as a
//! strictly increasing 5-tuple of vertex ids; the vertex order is the integer
//! order. Tetrahedra, triangles and edges are derived and numbered
//! lexicographically.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ComplexError>,
    },
    #[error("repeated vertex in simplex {0:?}")]
    RepeatedVertex(Vec<usize>),
    #[error("duplicate facet {0:?}")]
    DuplicateFacet([usize; 5]),
    #[error("vertex id {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("vertex {0} lies in no facet")]
    UnusedVertex(usize),
    #[error("not a closed pseudomanifold")]
    NotClosed,
    #[error("complex is not connected")]
    NotConnected,
    #[error("complex is not orientable (contradiction at facet {0})")]
    NonOrientable(usize),
    #[error("reference facet {0} does not exist")]
    BadReference(usize),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
}

/// A simplicial 4-complex given by its facets.
#[derive(Clone)]
pub struct Triangulation4 {
    vertex_count: usize,
    facets: Vec<[usize; 5]>,
    tetrahedra: Vec<[usize; 4]>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    tet_ids: HashMap<[usize; 4], usize>,
    triangle_ids: HashMap<[usize; 3], usize>,
    edge_ids: HashMap<[usize; 2], usize>,
    tet_facets: Vec<Vec<usize>>,
    facet_tets: Vec<[usize; 5]>,
    facet_triangles: Vec<[usize; 10]>,
    facet_edges: Vec<[usize; 10]>,
}

impl PartialEq for Triangulation4 {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.facets == other.facets
    }
}

impl Eq for Triangulation4 {}

impl fmt::Debug for Triangulation4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Triangulation4")
            .field("vertex_count", &self.vertex_count)
            .field("facets", &self.facets)
            .finish()
    }
}

fn sub4(f: &[usize; 5], k: usize) -> [usize; 4] {
    let mut out = [0; 4];
    let mut i = 0;
    for (j, &v) in f.iter().enumerate() {
        if j != k {
            out[i] = v;
            i += 1;
        }
    }
    out
}

impl Triangulation4 {
    /// Builds a complex; each facet is sorted ascending on ingestion.
    pub fn new(vertex_count: usize, facets: Vec<[usize; 5]>) -> Result<Self, ComplexError> {
        let mut sorted = Vec::with_capacity(facets.len());
        let mut seen = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            check_facet(&f, vertex_count)?;
            if !seen.insert(f) {
                return Err(ComplexError::DuplicateFacet(f));
            }
            sorted.push(f);
        }
        let mut used = vec![false; vertex_count];
        for f in &sorted {
            for &v in f {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::UnusedVertex(v));
        }
        Ok(Self::build(vertex_count, sorted))
    }

    fn build(vertex_count: usize, facets: Vec<[usize; 5]>) -> Self {
        let mut tets = BTreeSet::new();
        let mut tris = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for f in &facets {
            for k in 0..5 {
                tets.insert(sub4(f, k));
            }
            for t in crate::simplex::TRIANGLES4 {
                tris.insert([f[t[0]], f[t[1]], f[t[2]]]);
            }
            for e in crate::simplex::EDGES4 {
                edges.insert([f[e[0]], f[e[1]]]);
            }
        }
        let tetrahedra: Vec<[usize; 4]> = tets.into_iter().collect();
        let triangles: Vec<[usize; 3]> = tris.into_iter().collect();
        let edges: Vec<[usize; 2]> = edges.into_iter().collect();
        let tet_ids: HashMap<_, _> = tetrahedra.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let triangle_ids: HashMap<_, _> = triangles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let edge_ids: HashMap<_, _> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut tet_facets = vec![Vec::new(); tetrahedra.len()];
        let mut facet_tets = Vec::with_capacity(facets.len());
        let mut facet_triangles = Vec::with_capacity(facets.len());
        let mut facet_edges = Vec::with_capacity(facets.len());
        for (fi, f) in facets.iter().enumerate() {
            let mut ft = [0; 5];
            for (k, slot) in ft.iter_mut().enumerate() {
                let t = tet_ids[&sub4(f, k)];
                tet_facets[t].push(fi);
                *slot = t;
            }
            facet_tets.push(ft);
            let mut ftr = [0; 10];
            for (slot, t) in ftr.iter_mut().zip(crate::simplex::TRIANGLES4) {
                *slot = triangle_ids[&[f[t[0]], f[t[1]], f[t[2]]]];
            }
            facet_triangles.push(ftr);
            let mut fe = [0; 10];
            for (slot, e) in fe.iter_mut().zip(crate::simplex::EDGES4) {
                *slot = edge_ids[&[f[e[0]], f[e[1]]]];
            }
            facet_edges.push(fe);
        }
        Triangulation4 {
            vertex_count,
            facets,
            tetrahedra,
            triangles,
            edges,
            tet_ids,
            triangle_ids,
            edge_ids,
            tet_facets,
            facet_tets,
            facet_triangles,
            facet_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[[usize; 5]] {
        &self.facets
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tetrahedra
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn tet_id(&self, t: &[usize; 4]) -> Option<usize> {
        self.tet_ids.get(t).copied()
    }

    pub fn triangle_id(&self, t: &[usize; 3]) -> Option<usize> {
        self.triangle_ids.get(t).copied()
    }

    pub fn edge_id(&self, e: &[usize; 2]) -> Option<usize> {
        self.edge_ids.get(e).copied()
    }

    /// Facets containing tetrahedron `t`.
    pub fn tet_facets(&self, t: usize) -> &[usize] {
        &self.tet_facets[t]
    }

    /// Tetrahedron ids of a facet, indexed by omitted vertex position.
    pub fn facet_tets(&self, f: usize) -> &[usize; 5] {
        &self.facet_tets[f]
    }

    /// Triangle ids of a facet, in local lexicographic order.
    pub fn facet_triangles(&self, f: usize) -> &[usize; 10] {
        &self.facet_triangles[f]
    }

    /// Edge ids of a facet, in local lexicographic order.
    pub fn facet_edges(&self, f: usize) -> &[usize; 10] {
        &self.facet_edges[f]
    }

    pub fn has_facet(&self, f: &[usize; 5]) -> bool {
        let tet = [f[0], f[1], f[2], f[3]];
        match self.tet_id(&tet) {
            Some(t) => self.tet_facets[t].iter().any(|&i| self.facets[i] == *f),
            None => false,
        }
    }

    /// Facet list compared as a set.
    pub fn same_facet_set(&self, other: &Self) -> bool {
        let a: BTreeSet<_> = self.facets.iter().collect();
        let b: BTreeSet<_> = other.facets.iter().collect();
        self.vertex_count == other.vertex_count && a == b
    }

    /// Connected components of the facet adjacency graph (shared tetrahedra).
    fn facet_components(&self) -> usize {
        let n = self.facets.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for inc in &self.tet_facets {
            for w in inc.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Maps every vertex through `perm` and re-sorts each facet.
    pub fn relabel(&self, perm: &[usize]) -> Result<Triangulation4, ComplexError> {
        check_permutation(perm, self.vertex_count)?;
        let facets = self.facets.iter().map(|f| f.map(|v| perm[v])).collect();
        Triangulation4::new(self.vertex_count, facets)
    }

    /// Serialises to the line format; `pin` adds an `orient` line.
    pub fn to_text(&self, pin: Option<(usize, i8)>) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for f in &self.facets {
            out.push_str(&format!("simplex {} {} {} {} {}\n", f[0], f[1], f[2], f[3], f[4]));
        }
        if let Some((idx, s)) = pin {
            out.push_str(&format!("orient {} {}\n", idx, if s > 0 { "+1" } else { "-1" }));
        }
        out
    }
}

fn check_facet(f: &[usize; 5], vertex_count: usize) -> Result<(), ComplexError> {
    for w in f.windows(2) {
        if w[0] == w[1] {
            return Err(ComplexError::RepeatedVertex(f.to_vec()));
        }
    }
    if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
        return Err(ComplexError::VertexOutOfRange { vertex: v, count: vertex_count });
    }
    Ok(())
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), ComplexError> {
    if perm.len() != n {
        return Err(ComplexError::BadPermutation(n));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(ComplexError::BadPermutation(n));
        }
    }
    Ok(())
}

/// Result of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_closed_pseudomanifold: bool,
    pub is_connected: bool,
    /// Tetrahedra not lying in exactly two facets, with their incidence.
    pub offending_tetrahedra: Vec<([usize; 4], usize)>,
    pub notes: String,
}

/// Checks the closed-pseudomanifold condition and facet connectivity.
pub fn validate(t: &Triangulation4) -> ValidationReport {
    let offending: Vec<([usize; 4], usize)> = t
        .tetrahedra
        .iter()
        .zip(&t.tet_facets)
        .filter(|(_, inc)| inc.len() != 2)
        .map(|(tet, inc)| (*tet, inc.len()))
        .collect();
    let empty = t.facets.is_empty();
    let is_connected = !empty && t.facet_components() == 1;
    let mut notes = Vec::new();
    if empty {
        notes.push("empty complex".to_string());
    } else if !is_connected {
        notes.push(format!("{} connected components", t.facet_components()));
    }
    if !offending.is_empty() {
        notes.push(format!("{} tetrahedra with incidence != 2", offending.len()));
    }
    ValidationReport {
        is_closed_pseudomanifold: offending.is_empty(),
        is_connected,
        offending_tetrahedra: offending,
        notes: notes.join("; "),
    }
}

/// A closed, connected complex with a coherent orientation sign per facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedTriangulation {
    base: Triangulation4,
    epsilon: Vec<i8>,
}

impl OrientedTriangulation {
    pub fn base(&self) -> &Triangulation4 {
        &self.base
    }

    pub fn into_base(self) -> Triangulation4 {
        self.base
    }

    /// ε per facet: +1 when the manifold orientation agrees with the vertex order.
    pub fn epsilon(&self) -> &[i8] {
        &self.epsilon
    }

    /// Sign with which the tetrahedron omitting position `k` is induced in facet `f`.
    pub fn induced_sign(&self, f: usize, k: usize) -> i8 {
        if k.is_multiple_of(2) {
            self.epsilon[f]
        } else {
            -self.epsilon[f]
        }
    }

    /// Every tetrahedron is induced once with each sign.
    pub fn is_coherent(&self) -> bool {
        let mut sum = vec![0i32; self.base.tetrahedra.len()];
        for f in 0..self.base.facets.len() {
            for k in 0..5 {
                sum[self.base.facet_tets[f][k]] += self.induced_sign(f, k) as i32;
            }
        }
        sum.iter().all(|&s| s == 0)
    }

    /// The opposite orientation.
    pub fn reversed(&self) -> Self {
        OrientedTriangulation { base: self.base.clone(), epsilon: self.epsilon.iter().map(|e| -e).collect() }
    }

    /// Relabels vertices carrying the manifold orientation along: each
    /// facet's sign picks up the parity of the permutation that re-sorts it.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, ComplexError> {
        let base = self.base.relabel(perm)?;
        let epsilon = self
            .base
            .facets
            .iter()
            .zip(&self.epsilon)
            .map(|(f, &e)| {
                let mapped = f.map(|v| perm[v]);
                let mut inversions = 0;
                for i in 0..5 {
                    for j in i + 1..5 {
                        if mapped[i] > mapped[j] {
                            inversions += 1;
                        }
                    }
                }
                if inversions % 2 == 0 {
                    e
                } else {
                    -e
                }
            })
            .collect();
        Ok(OrientedTriangulation { base, epsilon })
    }

    /// Builds from explicit signs, checking coherence.
    pub fn from_signs(base: Triangulation4, epsilon: Vec<i8>) -> Result<Self, ComplexError> {
        let r = validate(&base);
        if !r.is_closed_pseudomanifold {
            return Err(ComplexError::NotClosed);
        }
        if !r.is_connected {
            return Err(ComplexError::NotConnected);
        }
        let o = OrientedTriangulation { base, epsilon };
        if o.epsilon.len() != o.base.facets.len() || o.epsilon.iter().any(|&e| e != 1 && e != -1) || !o.is_coherent() {
            return Err(ComplexError::NonOrientable(0));
        }
        Ok(o)
    }
}

/// Orients with `ε[reference] = +1`.
pub fn orient(t: &Triangulation4, reference: usize) -> Result<OrientedTriangulation, ComplexError> {
    orient_pinned(t, reference, 1)
}

/// Breadth-first sign propagation over the facet adjacency graph so that
/// each shared tetrahedron is induced with opposite signs.
pub fn orient_pinned(t: &Triangulation4, reference: usize, sign: i8) -> Result<OrientedTriangulation, ComplexError> {
    let report = validate(t);
    if !report.is_closed_pseudomanifold {
        return Err(ComplexError::NotClosed);
    }
    if !report.is_connected {
        return Err(ComplexError::NotConnected);
    }
    if reference >= t.facets.len() {
        return Err(ComplexError::BadReference(reference));
    }
    let sign = if sign < 0 { -1 } else { 1 };
    let mut eps = vec![0i8; t.facets.len()];
    eps[reference] = sign;
    let mut queue = VecDeque::from([reference]);
    while let Some(f) = queue.pop_front() {
        for k in 0..5 {
            let tet = t.facet_tets[f][k];
            let induced = if k % 2 == 0 { eps[f] } else { -eps[f] };
            for &g in &t.tet_facets[tet] {
                if g == f {
                    continue;
                }
                let kg = t.facet_tets[g].iter().position(|&x| x == tet).expect("incident facet contains tet");
                // need eps[g]·(-1)^kg = -induced
                let want = if kg % 2 == 0 { -induced } else { induced };
                if eps[g] == 0 {
                    eps[g] = want;
                    queue.push_back(g);
                } else if eps[g] != want {
                    return Err(ComplexError::NonOrientable(g));
                }
            }
        }
    }
    Ok(OrientedTriangulation { base: t.clone(), epsilon: eps })
}

/// The boundary of the standard 5-simplex, oriented as ∂(+(012345)).
pub fn boundary_5simplex() -> OrientedTriangulation {
    let facets: Vec<[usize; 5]> = (0..6)
        .rev()
        .map(|omit| {
            let mut f = [0; 5];
            let mut i = 0;
            for v in 0..6 {
                if v != omit {
                    f[i] = v;
                    i += 1;
                }
            }
            f
        })
        .collect();
    let base = Triangulation4::new(6, facets).expect("boundary of the 5-simplex is valid");
    // facet (12345) omits vertex 0
    let reference = base.facets.iter().position(|f| *f == [1, 2, 3, 4, 5]).expect("facet present");
    orient(&base, reference).expect("boundary of the 5-simplex is orientable")
}

/// Parsed triangulation file, with the optional reference-sign pin.
#[derive(Debug, Clone)]
pub struct TriangulationFile {
    pub complex: Triangulation4,
    pub pin: Option<(usize, i8)>,
}

/// Parses the triangulation line format (`vertices`, `simplex`, `orient`).
pub fn parse_triangulation(text: &str) -> Result<TriangulationFile, ComplexError> {
    let mut vcount: Option<usize> = None;
    let mut facets = Vec::new();
    let mut seen = BTreeSet::new();
    let mut pin = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: &str| ComplexError::Parse { line: line_no, msg: msg.to_string() };
        let at = |e: ComplexError| ComplexError::AtLine { line: line_no, source: Box::new(e) };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "vertices" => {
                if vcount.is_some() {
                    return Err(perr("duplicate `vertices` header"));
                }
                if toks.len() != 2 {
                    return Err(perr("expected `vertices <v>`"));
                }
                vcount = Some(toks[1].parse().map_err(|_| perr("bad vertex count"))?);
            }
            "simplex" => {
                let v = vcount.ok_or_else(|| perr("`simplex` before `vertices` header"))?;
                if toks.len() != 6 {
                    return Err(perr("expected 5 vertex ids"));
                }
                let mut f = [0usize; 5];
                for (slot, tok) in f.iter_mut().zip(&toks[1..]) {
                    *slot = tok.parse().map_err(|_| perr("bad vertex id"))?;
                }
                f.sort_unstable();
                check_facet(&f, v).map_err(at)?;
                if !seen.insert(f) {
                    return Err(at(ComplexError::DuplicateFacet(f)));
                }
                facets.push(f);
            }
            "orient" => {
                if toks.len() != 3 {
                    return Err(perr("expected `orient <facet-index> <+1|-1>`"));
                }
                let idx: usize = toks[1].parse().map_err(|_| perr("bad facet index"))?;
                let s = match toks[2] {
                    "+1" | "1" | "+" => 1,
                    "-1" | "-" => -1,
                    _ => return Err(perr("orientation sign must be +1 or -1")),
                };
                pin = Some((idx, s));
            }
            other => return Err(perr(&format!("unknown directive `{other}`"))),
        }
    }
    let v = vcount.ok_or(ComplexError::Parse { line: 0, msg: "missing `vertices` header".into() })?;
    let complex = Triangulation4::new(v, facets)?;
    if let Some((idx, _)) = pin {
        if idx >= complex.facets.len() {
            return Err(ComplexError::BadReference(idx));
        }
    }
    Ok(TriangulationFile { complex, pin })
}

pub fn load_triangulation(text: &str) -> Result<Triangulation4, ComplexError> {
    parse_triangulation(text).map(|f| f.complex)
}
