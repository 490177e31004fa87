//! Bistellar flips on closed triangulated 4-manifolds.
//!
//! Every move has the form A * ∂B → ∂A * B with |A| + |B| = 6: the facets
//! A ∪ (B − b) are deleted and the facets (A − a) ∪ B inserted. A site is
//! valid when the star of A is exactly A * ∂B and B is not already a face.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{orient_pinned, ComplexError, OrientedTriangulation, Triangulation4};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("invalid or stale {kind} site at {support:?}")]
    InvalidSite { kind: MoveKind, support: Vec<usize> },
    #[error("unknown move kind `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    OneFive,
    FiveOne,
    TwoFour,
    FourTwo,
    ThreeThree,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::OneFive, MoveKind::FiveOne, MoveKind::TwoFour, MoveKind::FourTwo, MoveKind::ThreeThree];

    pub fn wire_name(self) -> &'static str {
        match self {
            MoveKind::OneFive => "1-5",
            MoveKind::FiveOne => "5-1",
            MoveKind::TwoFour => "2-4",
            MoveKind::FourTwo => "4-2",
            MoveKind::ThreeThree => "3-3",
        }
    }

    /// Size of the support simplex A.
    pub fn support_len(self) -> usize {
        match self {
            MoveKind::OneFive => 5,
            MoveKind::FiveOne => 1,
            MoveKind::TwoFour => 4,
            MoveKind::FourTwo => 2,
            MoveKind::ThreeThree => 3,
        }
    }

    fn from_support_len(n: usize) -> Option<MoveKind> {
        MoveKind::ALL.into_iter().find(|k| k.support_len() == n)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl FromStr for MoveKind {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL.into_iter().find(|k| k.wire_name() == s).ok_or_else(|| MoveError::UnknownKind(s.to_string()))
    }
}

/// A valid move location together with its facet replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSite {
    pub kind: MoveKind,
    /// The simplex A, ascending.
    pub support: Vec<usize>,
    /// The complementary simplex B; for 1-5 this is the new vertex.
    pub complement: Vec<usize>,
    pub delete: Vec<[usize; 5]>,
    pub insert: Vec<[usize; 5]>,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} {}", self.kind, join(&self.support))
    }
}

fn to_facet(v: &BTreeSet<usize>) -> [usize; 5] {
    let mut out = [0; 5];
    for (slot, &x) in out.iter_mut().zip(v) {
        *slot = x;
    }
    out
}

fn template(a: &[usize], b: &[usize]) -> (Vec<[usize; 5]>, Vec<[usize; 5]>) {
    let a_set: BTreeSet<usize> = a.iter().copied().collect();
    let b_set: BTreeSet<usize> = b.iter().copied().collect();
    let delete = b
        .iter()
        .map(|x| {
            let mut s = a_set.clone();
            s.extend(b_set.iter().filter(|y| *y != x));
            to_facet(&s)
        })
        .collect();
    let insert = a
        .iter()
        .map(|x| {
            let mut s = b_set.clone();
            s.extend(a_set.iter().filter(|y| *y != x));
            to_facet(&s)
        })
        .collect();
    (delete, insert)
}

fn is_face(t: &Triangulation4, b: &[usize]) -> bool {
    match b.len() {
        1 => b[0] < t.vertex_count(),
        2 => t.edge_id(&[b[0], b[1]]).is_some(),
        3 => t.triangle_id(&[b[0], b[1], b[2]]).is_some(),
        4 => t.tet_id(&[b[0], b[1], b[2], b[3]]).is_some(),
        5 => t.has_facet(&[b[0], b[1], b[2], b[3], b[4]]),
        _ => false,
    }
}

/// Checks the site with support A, returning it when valid.
pub fn site_at(t: &Triangulation4, support: &[usize]) -> Option<MoveSite> {
    let mut a: Vec<usize> = support.to_vec();
    a.sort_unstable();
    a.dedup();
    let kind = MoveKind::from_support_len(a.len())?;
    if a.len() != support.len() || a.iter().any(|&v| v >= t.vertex_count()) {
        return None;
    }
    if kind == MoveKind::OneFive {
        let f = [a[0], a[1], a[2], a[3], a[4]];
        if !t.has_facet(&f) {
            return None;
        }
        let b = vec![t.vertex_count()];
        let (delete, insert) = template(&a, &b);
        return Some(MoveSite { kind, support: a, complement: b, delete, insert });
    }
    let star: Vec<&[usize; 5]> = t.facets().iter().filter(|f| a.iter().all(|v| f.contains(v))).collect();
    let link: BTreeSet<usize> = star.iter().flat_map(|f| f.iter().copied()).filter(|v| !a.contains(v)).collect();
    let need = 6 - a.len();
    if star.len() != need || link.len() != need {
        return None;
    }
    let b: Vec<usize> = link.into_iter().collect();
    if is_face(t, &b) {
        return None;
    }
    let (delete, insert) = template(&a, &b);
    Some(MoveSite { kind, support: a, complement: b, delete, insert })
}

/// All valid sites, ordered by kind then support.
pub fn enumerate_moves(t: &Triangulation4) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for f in t.facets() {
        out.extend(site_at(t, f));
    }
    let mut five_one: Vec<MoveSite> = (0..t.vertex_count()).filter_map(|v| site_at(t, &[v])).collect();
    out.append(&mut five_one);
    for tet in t.tetrahedra() {
        out.extend(site_at(t, tet));
    }
    for e in t.edges() {
        out.extend(site_at(t, e));
    }
    for tri in t.triangles() {
        out.extend(site_at(t, tri));
    }
    out.sort_by(|x, y| (x.kind, &x.support).cmp(&(y.kind, &y.support)));
    out
}

/// Applies `site` after re-validating it against `t`.
pub fn apply_move(t: &Triangulation4, site: &MoveSite) -> Result<Triangulation4, MoveError> {
    apply_inner(t, site).map(|(c, _)| c)
}

/// Surviving facets keep their order; returns the new complex and, per old
/// facet, its index in the new complex.
fn apply_inner(t: &Triangulation4, site: &MoveSite) -> Result<(Triangulation4, Vec<Option<usize>>), MoveError> {
    let invalid = || MoveError::InvalidSite { kind: site.kind, support: site.support.clone() };
    let fresh = site_at(t, &site.support).ok_or_else(invalid)?;
    if fresh != *site {
        return Err(invalid());
    }
    let removed = (site.kind == MoveKind::FiveOne).then(|| site.support[0]);
    let renumber = |f: [usize; 5]| match removed {
        Some(r) => f.map(|v| if v > r { v - 1 } else { v }),
        None => f,
    };
    let mut facets = Vec::with_capacity(t.facets().len() + 4);
    let mut map = Vec::with_capacity(t.facets().len());
    for f in t.facets() {
        if site.delete.contains(f) {
            map.push(None);
        } else {
            map.push(Some(facets.len()));
            facets.push(renumber(*f));
        }
    }
    facets.extend(site.insert.iter().map(|f| renumber(*f)));
    let v = match site.kind {
        MoveKind::OneFive => t.vertex_count() + 1,
        MoveKind::FiveOne => t.vertex_count() - 1,
        _ => t.vertex_count(),
    };
    Ok((Triangulation4::new(v, facets)?, map))
}

/// Applies a move and re-orients so that surviving facets keep their sign.
pub fn apply_move_oriented(o: &OrientedTriangulation, site: &MoveSite) -> Result<OrientedTriangulation, MoveError> {
    let (next, map) = apply_inner(o.base(), site)?;
    let (old, new) = map
        .iter()
        .enumerate()
        .find_map(|(i, m)| m.map(|n| (i, n)))
        .ok_or_else(|| MoveError::InvalidSite { kind: site.kind, support: site.support.clone() })?;
    Ok(orient_pinned(&next, new, o.epsilon()[old])?)
}

#[derive(Debug, Clone)]
pub struct WalkReport {
    pub complex: Triangulation4,
    pub applied: Vec<MoveSite>,
    /// Set when the walk stopped early for lack of an admissible move.
    pub stuck: bool,
}

/// Seeded walk choosing uniformly among valid sites; 1-5 is excluded once
/// the vertex count reaches `max_vertices`.
pub fn random_walk(t: &Triangulation4, steps: usize, seed: u64, max_vertices: usize) -> Result<WalkReport, MoveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = t.clone();
    let mut applied = Vec::with_capacity(steps);
    for _ in 0..steps {
        let sites: Vec<MoveSite> = enumerate_moves(&current)
            .into_iter()
            .filter(|s| s.kind != MoveKind::OneFive || current.vertex_count() < max_vertices)
            .collect();
        let Some(site) = sites.choose(&mut rng) else {
            return Ok(WalkReport { complex: current, applied, stuck: true });
        };
        current = apply_move(&current, site)?;
        applied.push(site.clone());
    }
    Ok(WalkReport { complex: current, applied, stuck: false })
}
