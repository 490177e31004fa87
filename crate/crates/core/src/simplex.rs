//! Local face numbering inside a single ordered simplex.
//!
//! Faces of an ordered simplex are listed lexicographically by local vertex
//! positions. The k-th tetrahedron of a 4-simplex is the one omitting
//! position k, matching the boundary operator order.

/// Edges of a 4-simplex in lexicographic order.
pub const EDGES4: [[usize; 2]; 10] =
    [[0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];

/// Triangles of a 4-simplex in lexicographic order.
pub const TRIANGLES4: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 1, 4],
    [0, 2, 3],
    [0, 2, 4],
    [0, 3, 4],
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 4],
    [2, 3, 4],
];

/// Position of local edge (a, b), a < b, in [`EDGES4`].
pub fn edge_pos(a: usize, b: usize) -> usize {
    EDGES4.iter().position(|e| *e == [a, b]).expect("edge of a 4-simplex")
}

pub fn triangle_pos(a: usize, b: usize, c: usize) -> usize {
    TRIANGLES4.iter().position(|t| *t == [a, b, c]).expect("triangle of a 4-simplex")
}

/// Local vertices of the tetrahedron omitting position `k`.
pub fn tet_vertices(k: usize) -> [usize; 4] {
    let mut out = [0; 4];
    let mut i = 0;
    for v in 0..5 {
        if v != k {
            out[i] = v;
            i += 1;
        }
    }
    out
}

/// For the tetrahedron omitting position `k`: positions of its six edges
/// (ij, ik, il, jk, jl, kl) and four triangles (ijk, ijl, ikl, jkl) within
/// the 4-simplex lists.
pub fn tet_face_positions(k: usize) -> ([usize; 6], [usize; 4]) {
    let [i, j, l3, m] = tet_vertices(k);
    let v = [i, j, l3, m];
    let mut edges = [0; 6];
    let mut n = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            edges[n] = edge_pos(v[a], v[b]);
            n += 1;
        }
    }
    let mut tris = [0; 4];
    n = 0;
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                tris[n] = triangle_pos(v[a], v[b], v[c]);
                n += 1;
            }
        }
    }
    (edges, tris)
}

/// Edge positions of a triangle in the order (ij, jk, ik) used by triangle
/// labels, given local vertices i < j < k of a 4-simplex.
pub fn triangle_edge_roles(t: [usize; 3]) -> [usize; 3] {
    [edge_pos(t[0], t[1]), edge_pos(t[1], t[2]), edge_pos(t[0], t[2])]
}

/// Edge positions of the path 01, 12, 23, 34 that carries a group 4-simplex weight.
pub const CHAIN4: [usize; 4] = [0, 4, 7, 9];

/// Tetrahedron positions in slot order: in-slots then out-slots.
///
/// The induced sign of tetrahedron k in a simplex with sign `s` is
/// `s·(-1)^k`; negatively induced tetrahedra are inputs.
pub fn slot_positions(plus: bool) -> [usize; 5] {
    if plus {
        [1, 3, 0, 2, 4]
    } else {
        [0, 2, 4, 1, 3]
    }
}

/// Number of input slots for the given simplex sign.
pub fn in_slot_count(plus: bool) -> usize {
    if plus {
        2
    } else {
        3
    }
}
