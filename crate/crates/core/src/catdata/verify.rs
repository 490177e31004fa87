//! Consistency identities on tabulated data, evaluated exactly.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{fmt_labels, SphericalData};
use crate::algebra::Cyclotomic;
use crate::network::{contract_network, Tensor};
use crate::simplex::{edge_pos, slot_positions, triangle_pos};

const MAX_MESSAGES: usize = 20;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Label tuples per check above which seeded sampling replaces exhaustion.
    pub sample_budget: usize,
    pub seed: u64,
    /// Also run the local move identities on the 5-simplex.
    pub local_moves: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { sample_budget: 100_000, seed: 0, local_moves: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub vacuous: usize,
    pub sampled: bool,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome { name, checked: 0, vacuous: 0, sampled: false, failure_count: 0, failures: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_MESSAGES {
            self.failures.push(msg);
        }
    }

    fn merge(mut self, other: CheckOutcome) -> CheckOutcome {
        self.checked += other.checked;
        self.vacuous += other.vacuous;
        self.failure_count += other.failure_count;
        for m in other.failures {
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(m);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    /// The dimension sum computed for each base object A.
    pub k_sums: Vec<Cyclotomic>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            let mode = if c.sampled { "sampled" } else { "exhaustive" };
            writeln!(
                f,
                "{:<22} {status} checked={} vacuous={} failures={} ({mode})",
                c.name, c.checked, c.vacuous, c.failure_count
            )?;
            for m in &c.failures {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

/// Picks indices 0..n, all of them when within budget.
fn chosen(n: usize, opts: &VerifyOptions, salt: u64) -> (Vec<usize>, bool) {
    if n <= opts.sample_budget {
        ((0..n).collect(), false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
        let mut v = sample(&mut rng, n, opts.sample_budget).into_vec();
        v.sort_unstable();
        (v, true)
    }
}

pub fn verify_data(data: &SphericalData, opts: &VerifyOptions) -> VerifyReport {
    let (dim_sum, k_sums) = check_dimension_sum(data);
    let mut checks = vec![dim_sum, check_tet_dimension(data, opts)];
    let simplices = data.simplex_labellings();
    checks.push(check_orthogonality_in(data, &simplices, opts));
    checks.push(check_orthogonality_out(data, &simplices, opts));
    if opts.local_moves {
        let full = data.complete_labellings(6);
        for (name, s) in [("local-move 1-5", &[4usize][..]), ("local-move 2-4", &[1, 4]), ("local-move 3-3", &[0, 2, 4])] {
            checks.push(check_local_move(data, &full, s, name, opts));
        }
    }
    VerifyReport { checks, k_sums }
}

/// K = Σ_{B,C,f ∈ Hom(A, B⊗C)} dim(A)⁻¹ dim(B)⁻¹ dim(C)⁻¹ dim(f)² for every A.
fn check_dimension_sum(data: &SphericalData) -> (CheckOutcome, Vec<Cyclotomic>) {
    let mut out = CheckOutcome::new("dimension-sum");
    let n = data.object_count();
    let mut sums = vec![Cyclotomic::zero(data.modulus()); n];
    for l in data.labels() {
        let (ij, jk, ik) = l.edges;
        let term = data.object_dim_inv(ik) * data.object_dim_inv(jk);
        let term = &(&term * data.object_dim_inv(ij)) * &(&l.dim * &l.dim);
        sums[ik] += &term;
    }
    for (a, s) in sums.iter().enumerate() {
        out.checked += 1;
        if s != data.k() {
            out.fail(format!("object {a}: sum {s} differs from K = {}", data.k()));
        }
    }
    (out, sums)
}

/// For a tetrahedron ijkl and fixed (e_ij, e_il, e_jk, e_jl, e_kl, f_ijl, f_jkl):
/// Σ_{e_ik, f_ijk, f_ikl} dim(e_ik)⁻¹ dim(f_ijk) dim(f_ikl) dim 2H = dim(e_jl)⁻¹ dim(f_ijl) dim(f_jkl).
fn check_tet_dimension(data: &SphericalData, opts: &VerifyOptions) -> CheckOutcome {
    let labels = data.labels();
    let mut tuples = Vec::new();
    for (fijl, l1) in labels.iter().enumerate() {
        let jl = l1.edges.1;
        for (fjkl, l2) in labels.iter().enumerate() {
            if l2.edges.2 == jl {
                tuples.push((fijl, fjkl));
            }
        }
    }
    let (idx, sampled) = chosen(tuples.len(), opts, 0x55);
    let mut out = idx
        .par_iter()
        .map(|&t| {
            let mut o = CheckOutcome::new("tetrahedron-dimension");
            let (fijl, fjkl) = tuples[t];
            let (ij, jl, il) = labels[fijl].edges;
            let (jk, kl, _) = labels[fjkl].edges;
            let mut lhs = Cyclotomic::zero(data.modulus());
            let cands: Vec<usize> = data.completions(super::Missing::Ik, ij, jk).to_vec();
            for ik in cands {
                for &fijk in data.triangle_labels(ij, jk, ik) {
                    for &fikl in data.triangle_labels(ik, kl, il) {
                        let d = data.twohom_dim([ij, ik, il, jk, jl, kl], [fijk, fijl, fikl, fjkl]);
                        if d == 0 {
                            continue;
                        }
                        let w = &(data.object_dim_inv(ik) * data.label_dim(fijk)) * data.label_dim(fikl);
                        lhs += &(&w * &Cyclotomic::from_int(data.modulus(), d as i64));
                    }
                }
            }
            let rhs = &(data.object_dim_inv(jl) * data.label_dim(fijl)) * data.label_dim(fjkl);
            o.checked = 1;
            if lhs != rhs {
                o.fail(format!(
                    "edges ij={ij} il={il} jk={jk} jl={jl} kl={kl}, faces ijl={fijl} jkl={fjkl}: {lhs} vs {rhs}"
                ));
            }
            o
        })
        .reduce(|| CheckOutcome::new("tetrahedron-dimension"), CheckOutcome::merge);
    out.sampled = sampled;
    out
}

/// Z(+) as an in×out matrix and Z(−) as an out×in matrix (slot orders of
/// the two signs are mirror images).
fn matrices(data: &SphericalData, e: &[usize; 10], f: &[usize; 10]) -> (usize, usize, Vec<Cyclotomic>, Vec<Cyclotomic>) {
    let dims = data.slot_dims(true, e, f);
    let din = dims[0] * dims[1];
    let dout = dims[2] * dims[3] * dims[4];
    let zp = data.simplex_tensor(1, e, f).unwrap_or_default();
    let zm = data.simplex_tensor(-1, e, f).unwrap_or_default();
    (din, dout, zp, zm)
}

fn identity_failures(m: &[Cyclotomic], d: usize) -> Option<(usize, usize)> {
    for r in 0..d {
        for c in 0..d {
            let v = &m[r * d + c];
            let ok = if r == c { v.is_one() } else { v.is_zero() };
            if !ok {
                return Some((r, c));
            }
        }
    }
    None
}

/// dim(f_024) Σ_{e13, f013, f123, f134} w · Z(−)∘Z(+) = id on the input spaces.
fn check_orthogonality_in(data: &SphericalData, simplices: &[([usize; 10], [usize; 10])], opts: &VerifyOptions) -> CheckOutcome {
    let (e13, f013, f123, f134, f024) = (edge_pos(1, 3), triangle_pos(0, 1, 3), triangle_pos(1, 2, 3), triangle_pos(1, 3, 4), triangle_pos(0, 2, 4));
    let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (i, (e, f)) in simplices.iter().enumerate() {
        let ek: Vec<usize> = (0..10).filter(|&p| p != e13).map(|p| e[p]).collect();
        let fk: Vec<usize> = (0..10).filter(|&p| p != f013 && p != f123 && p != f134).map(|p| f[p]).collect();
        groups.entry((ek, fk)).or_default().push(i);
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let (idx, sampled) = chosen(groups.len(), opts, 0xa1);
    let mut out = idx
        .par_iter()
        .map(|&g| {
            let mut o = CheckOutcome::new("orthogonality-in");
            let members = &groups[g].1;
            let (e0, f0) = &simplices[members[0]];
            let (din, _, _, _) = matrices(data, e0, f0);
            if din == 0 {
                o.vacuous = 1;
                return o;
            }
            let mut acc = vec![Cyclotomic::zero(data.modulus()); din * din];
            for &m in members {
                let (e, f) = &simplices[m];
                let (_, dout, zp, zm) = matrices(data, e, f);
                if dout == 0 {
                    continue;
                }
                let w = &(&(data.object_dim_inv(e[e13]) * data.label_dim(f[f013])) * data.label_dim(f[f123]))
                    * &(data.label_dim(f[f134]) * data.label_dim(f[f024]));
                for r in 0..din {
                    for c in 0..din {
                        let mut s = Cyclotomic::zero(data.modulus());
                        for k in 0..dout {
                            s += &(&zp[r * dout + k] * &zm[k * din + c]);
                        }
                        acc[r * din + c] += &(&s * &w);
                    }
                }
            }
            o.checked = 1;
            if let Some((r, c)) = identity_failures(&acc, din) {
                o.fail(format!("{}: entry ({r},{c}) is {}", fmt_labels(e0, f0), acc[r * din + c]));
            }
            o
        })
        .reduce(|| CheckOutcome::new("orthogonality-in"), CheckOutcome::merge);
    out.sampled = sampled;
    out
}

/// dim(e13)⁻¹ dim(f013) dim(f123) dim(f134) Σ_{f024} dim(f024) Z(+)∘Z(−) = id on the output spaces.
fn check_orthogonality_out(data: &SphericalData, simplices: &[([usize; 10], [usize; 10])], opts: &VerifyOptions) -> CheckOutcome {
    let (e13, f013, f123, f134, f024) = (edge_pos(1, 3), triangle_pos(0, 1, 3), triangle_pos(1, 2, 3), triangle_pos(1, 3, 4), triangle_pos(0, 2, 4));
    let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (i, (e, f)) in simplices.iter().enumerate() {
        let fk: Vec<usize> = (0..10).filter(|&p| p != f024).map(|p| f[p]).collect();
        groups.entry((e.to_vec(), fk)).or_default().push(i);
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let (idx, sampled) = chosen(groups.len(), opts, 0xb2);
    let mut out = idx
        .par_iter()
        .map(|&g| {
            let mut o = CheckOutcome::new("orthogonality-out");
            let members = &groups[g].1;
            let (e0, f0) = &simplices[members[0]];
            let (_, dout, _, _) = matrices(data, e0, f0);
            if dout == 0 {
                o.vacuous = 1;
                return o;
            }
            let w = &(&(data.object_dim_inv(e0[e13]) * data.label_dim(f0[f013])) * data.label_dim(f0[f123]))
                * data.label_dim(f0[f134]);
            let mut acc = vec![Cyclotomic::zero(data.modulus()); dout * dout];
            for &m in members {
                let (e, f) = &simplices[m];
                let (din, _, zp, zm) = matrices(data, e, f);
                if din == 0 {
                    continue;
                }
                let wf = &w * data.label_dim(f[f024]);
                for r in 0..dout {
                    for c in 0..dout {
                        let mut s = Cyclotomic::zero(data.modulus());
                        for k in 0..din {
                            s += &(&zm[r * din + k] * &zp[k * dout + c]);
                        }
                        acc[r * dout + c] += &(&s * &wf);
                    }
                }
            }
            o.checked = 1;
            if let Some((r, c)) = identity_failures(&acc, dout) {
                o.fail(format!("{}: entry ({r},{c}) is {}", fmt_labels(e0, f0), acc[r * dout + c]));
            }
            o
        })
        .reduce(|| CheckOutcome::new("orthogonality-out"), CheckOutcome::merge);
    out.sampled = sampled;
    out
}

/// Local faces of the 5-simplex on vertices 0..5 in lex order.
struct Delta5 {
    edges: Vec<[usize; 2]>,
    tris: Vec<[usize; 3]>,
}

impl Delta5 {
    fn new() -> Self {
        let edges = (0..6).flat_map(|a| (a + 1..6).map(move |b| [a, b])).collect();
        let tris = (0..6).flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| [a, b, c]))).collect();
        Delta5 { edges, tris }
    }

    fn edge(&self, a: usize, b: usize) -> usize {
        self.edges.iter().position(|e| *e == [a, b]).expect("edge")
    }

    fn tri(&self, a: usize, b: usize, c: usize) -> usize {
        self.tris.iter().position(|t| *t == [a, b, c]).expect("triangle")
    }
}

/// Where a face of the 5-simplex sits relative to the split along `s`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Boundary,
    InteriorA,
    InteriorB,
}

fn side_of(vertices: &[usize], s: &[usize]) -> Side {
    if (0..6).filter(|x| !s.contains(x)).all(|x| vertices.contains(&x)) {
        Side::InteriorA
    } else if s.iter().all(|x| vertices.contains(x)) {
        Side::InteriorB
    } else {
        Side::Boundary
    }
}

/// Tet id for the tetrahedron missing vertices a and b of the 5-simplex.
fn tet_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * 6 + b
}

/// Both sides of A * ∂B = ∂A * B inside the boundary of the 5-simplex, where side A consists
/// of the facets omitting a vertex of `s`. Open tensors over the boundary tetrahedra are summed
/// over interior labels with vertex, edge and face weights and compared.
fn check_local_move(
    data: &SphericalData,
    full: &[(Vec<usize>, Vec<usize>)],
    s: &[usize],
    name: &'static str,
    opts: &VerifyOptions,
) -> CheckOutcome {
    let geo = Delta5::new();
    let edge_side: Vec<Side> = geo.edges.iter().map(|e| side_of(e, s)).collect();
    let tri_side: Vec<Side> = geo.tris.iter().map(|t| side_of(t, s)).collect();
    let boundary_tets: Vec<(usize, usize)> =
        (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|(a, b)| s.contains(a) != s.contains(b)).collect();
    let open: Vec<usize> = boundary_tets.iter().map(|&(a, b)| tet_index(a, b)).collect();
    let interior_vertices = |side: Side| (0..6).filter(|&v| side_of(&[v], s) == side).count();

    let pick = |lab: &[usize], sides: &[Side], want: Side| -> Vec<usize> {
        lab.iter().zip(sides).filter(|(_, &sd)| sd == want).map(|(&x, _)| x).collect()
    };

    // group labellings by boundary labels; per side keep one representative per interior labelling
    let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut seen_a = HashSet::new();
    let mut seen_b = HashSet::new();
    for (i, (e, f)) in full.iter().enumerate() {
        let key = (pick(e, &edge_side, Side::Boundary), pick(f, &tri_side, Side::Boundary));
        let ia = (key.clone(), pick(e, &edge_side, Side::InteriorA), pick(f, &tri_side, Side::InteriorA));
        let ib = (key.clone(), pick(e, &edge_side, Side::InteriorB), pick(f, &tri_side, Side::InteriorB));
        let entry = groups.entry(key).or_default();
        if seen_a.insert(ia) {
            entry.0.push(i);
        }
        if seen_b.insert(ib) {
            entry.1.push(i);
        }
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let (idx, sampled) = chosen(groups.len(), opts, 0xc3 ^ s.len() as u64);

    let k_inv = data.k().inv().unwrap_or_else(|_| Cyclotomic::zero(data.modulus()));
    let side_sum = |members: &[usize], side: Side| -> Option<Tensor> {
        let omitted: Vec<usize> = match side {
            Side::InteriorA => s.to_vec(),
            _ => (0..6).filter(|x| !s.contains(x)).collect(),
        };
        let flip: i8 = if side == Side::InteriorA { 1 } else { -1 };
        let mut vweight = Cyclotomic::one(data.modulus());
        for _ in 0..interior_vertices(side) {
            vweight = &vweight * &k_inv;
        }
        let mut total: Option<Tensor> = None;
        for &m in members {
            let (e, f) = &full[m];
            let mut weight = vweight.clone();
            for (p, &sd) in edge_side.iter().enumerate() {
                if sd == side {
                    weight = &weight * data.object_dim_inv(e[p]);
                }
            }
            for (p, &sd) in tri_side.iter().enumerate() {
                if sd == side {
                    weight = &weight * data.label_dim(f[p]);
                }
            }
            let mut tensors = Vec::with_capacity(omitted.len());
            for &o in &omitted {
                let verts: Vec<usize> = (0..6).filter(|&v| v != o).collect();
                let sign = flip * if o % 2 == 0 { 1 } else { -1 };
                let mut le = [0usize; 10];
                for (p, pair) in crate::simplex::EDGES4.iter().enumerate() {
                    le[p] = e[geo.edge(verts[pair[0]], verts[pair[1]])];
                }
                let mut lf = [0usize; 10];
                for (p, t) in crate::simplex::TRIANGLES4.iter().enumerate() {
                    lf[p] = f[geo.tri(verts[t[0]], verts[t[1]], verts[t[2]])];
                }
                let plus = sign > 0;
                let dims = data.slot_dims(plus, &le, &lf).to_vec();
                let indices: Vec<usize> = slot_positions(plus).iter().map(|&k| tet_index(o, verts[k])).collect();
                let entries = data.simplex_tensor(sign, &le, &lf).ok()?;
                tensors.push(Tensor::new(indices, dims, entries));
            }
            let mut t = contract_network(tensors, &open, data.modulus());
            for x in t.data.iter_mut() {
                *x = &*x * &weight;
            }
            total = Some(match total {
                None => t,
                Some(mut acc) => {
                    for (a, b) in acc.data.iter_mut().zip(&t.data) {
                        *a += b;
                    }
                    acc
                }
            });
        }
        total
    };

    let mut out = idx
        .par_iter()
        .map(|&g| {
            let mut o = CheckOutcome::new(name);
            let ((be, bf), (ma, mb)) = &groups[g];
            let (e0, f0) = &full[ma.first().or(mb.first()).copied().expect("nonempty group")];
            // boundary tetrahedra of zero dimension make the comparison empty
            let tdim = |a: usize, b: usize| {
                let verts: Vec<usize> = (0..6).filter(|&v| v != a && v != b).collect();
                let es = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(x, y)| e0[geo.edge(verts[x], verts[y])]);
                let fs = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)].map(|(x, y, z)| f0[geo.tri(verts[x], verts[y], verts[z])]);
                data.twohom_dim(es, fs)
            };
            if boundary_tets.iter().any(|&(a, b)| tdim(a, b) == 0) {
                o.vacuous = 1;
                return o;
            }
            let (Some(ta), Some(tb)) = (side_sum(ma, Side::InteriorA), side_sum(mb, Side::InteriorB)) else {
                o.fail(format!("boundary {}: missing partition tensor", fmt_labels(be, bf)));
                return o;
            };
            o.checked = 1;
            if let Some(pos) = ta.data.iter().zip(&tb.data).position(|(x, y)| x != y) {
                o.fail(format!(
                    "boundary {}: entry {pos} is {} on one side and {} on the other",
                    fmt_labels(be, bf),
                    ta.data[pos],
                    tb.data[pos]
                ));
            }
            o
        })
        .reduce(|| CheckOutcome::new(name), CheckOutcome::merge);
    out.sampled = sampled;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_from_spec, Cyclotomic};
    use crate::cocycle::FourCochain;

    fn data(spec: &str) -> SphericalData {
        let g = group_from_spec(spec).unwrap();
        SphericalData::from_group_cocycle(&g, &FourCochain::trivial(g.order(), 1).unwrap()).unwrap()
    }

    #[test]
    fn z2_passes_everything() {
        let r = verify_data(&data("cyclic:2"), &VerifyOptions::default());
        assert!(r.passed(), "{r}");
        assert!(r.k_sums.iter().all(|s| *s == Cyclotomic::from_int(1, 2)));
    }

    #[test]
    fn corrupted_dimension_is_named() {
        let d = data("cyclic:2").with_object_dim_unchecked(1, Cyclotomic::from_int(1, 2));
        let opts = VerifyOptions { local_moves: false, ..Default::default() };
        let r = verify_data(&d, &opts);
        let c = r.check("dimension-sum").unwrap();
        assert!(!c.passed());
        assert!(c.failures.iter().any(|m| m.starts_with("object 1")));
    }
}
