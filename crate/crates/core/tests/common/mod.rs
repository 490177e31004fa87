#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statesum::algebra::{Cyclotomic, FiniteGroup};
use statesum::catdata::{SphericalData, TetKey};
use statesum::cocycle::{coboundary, random_cochain3, FourCochain};
use statesum::complex::{orient, OrientedTriangulation, Triangulation4};
use statesum::pachner::{apply_move_oriented, random_walk};

/// S¹×S³ as ∂Δ⁴ × (3-cycle), staircase-triangulated; vertex (v, w) is 3v + w.
pub fn s1xs3() -> Triangulation4 {
    let mut facets = Vec::new();
    for omit in 0..5 {
        let tet: Vec<usize> = (0..5).filter(|&x| x != omit).collect();
        for (w, w2) in [(0, 1), (1, 2), (2, 0)] {
            for i in 0..4 {
                let mut f = [0; 5];
                for j in 0..=i {
                    f[j] = tet[j] * 3 + w;
                }
                for j in i..4 {
                    f[j + 1] = tet[j] * 3 + w2;
                }
                facets.push(f);
            }
        }
    }
    Triangulation4::new(15, facets).expect("valid product")
}

pub fn data_file(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).expect("data file")
}

/// The oriented complexes visited by a seeded walk, starting complex first.
pub fn walk_chain(start: &OrientedTriangulation, steps: usize, seed: u64, cap: usize) -> Vec<OrientedTriangulation> {
    let report = random_walk(start.base(), steps, seed, cap).expect("walk");
    let mut out = vec![start.clone()];
    for site in &report.applied {
        let next = apply_move_oriented(out.last().expect("nonempty"), site).expect("replay");
        out.push(next);
    }
    out
}

pub fn random_coboundary(g: &FiniteGroup, modulus: u32, seed: u64) -> FourCochain {
    coboundary(g, &random_cochain3(g.order(), modulus, seed).expect("cochain")).expect("coboundary")
}

/// A uniformly random 4-cocycle with values in Z/p, p prime, found as a
/// random vector in the kernel of δ over F_p.
pub fn random_cocycle(g: &FiniteGroup, p: u32, seed: u64) -> FourCochain {
    let n = g.order();
    let cols = n.pow(4);
    let idx4 = |a: [usize; 4]| ((a[0] * n + a[1]) * n + a[2]) * n + a[3];
    let p64 = p as i64;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for q in 0..n.pow(5) {
        let mut x = [0; 5];
        let mut r = q;
        for s in x.iter_mut().rev() {
            *s = r % n;
            r /= n;
        }
        let [a, b, c, d, e] = x;
        let mut row = vec![0i64; cols];
        row[idx4([b, c, d, e])] += 1;
        row[idx4([g.mul(a, b), c, d, e])] -= 1;
        row[idx4([a, g.mul(b, c), d, e])] += 1;
        row[idx4([a, b, g.mul(c, d), e])] -= 1;
        row[idx4([a, b, c, g.mul(d, e)])] += 1;
        row[idx4([a, b, c, d])] -= 1;
        for v in row.iter_mut() {
            *v = v.rem_euclid(p64);
        }
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
    }
    // reduced row echelon form over F_p
    let inv = |a: i64| (1..p64).find(|&b| a * b % p64 == 1).expect("unit");
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * s % p64;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] - f * rows[r][j]).rem_euclid(p64);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0i64; cols];
    for &f in &free {
        x[f] = rng.gen_range(0..p64);
    }
    for (r, &c) in pivots.iter().enumerate() {
        let s: i64 = free.iter().map(|&f| rows[r][f] * x[f]).sum();
        x[c] = (-s).rem_euclid(p64);
    }
    FourCochain::from_fn(n, p, |a| x[idx4(a)]).expect("cochain")
}

/// Slot order of a facet of the given sign, as local tetrahedron positions.
pub fn slots(plus: bool) -> ([usize; 5], usize) {
    if plus {
        ([1, 3, 0, 2, 4], 2)
    } else {
        ([0, 2, 4, 1, 3], 3)
    }
}

fn tet_param(key: &TetKey) -> i64 {
    let h: usize = key.0.iter().chain(key.1.iter()).enumerate().map(|(i, &x)| (i + 1) * (x + 1)).sum();
    1 + (h % 4) as i64
}

/// Group data with every tetrahedron space made 2-dimensional. An in-slot
/// carries u = (1, a) and an out-slot w = (1 − 2a, 2), with `a` depending on
/// the tetrahedron's labels, so w·u = 1 while u·u and w·w differ from 1.
/// Edge and face weights and all invariants equal those of the group data;
/// miswired contractions do not.
pub fn rank_one_inflated(g: &FiniteGroup, pi: &FourCochain) -> SphericalData {
    let base = SphericalData::from_group_cocycle(g, pi).expect("group data");
    let n = base.modulus();
    base.map_tables(
        |_| 2,
        |&(sign, e, f), entries, _| {
            let (order, nin) = slots(sign > 0);
            let vecs: Vec<[i64; 2]> = order
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    let a = tet_param(&SphericalData::tet_key(&e, &f, k));
                    if i < nin {
                        [1, a]
                    } else {
                        [1 - 2 * a, 2]
                    }
                })
                .collect();
            (0..32)
                .map(|idx| {
                    let mut prod = 1i64;
                    for (s, v) in vecs.iter().enumerate() {
                        prod *= v[(idx >> (4 - s)) & 1];
                    }
                    &entries[0] * &Cyclotomic::from_int(n, prod)
                })
                .collect()
        },
    )
    .expect("inflated data")
}

pub fn s1xs3_oriented() -> OrientedTriangulation {
    orient(&s1xs3(), 0).expect("orientable")
}
