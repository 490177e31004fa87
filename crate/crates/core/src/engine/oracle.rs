//! Brute force over every edge colouring, no pruning.

use super::EngineError;
use crate::algebra::{Cyclotomic, FiniteGroup};
use crate::cocycle::FourCochain;
use crate::complex::OrientedTriangulation;
use crate::simplex::CHAIN4;

pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Cyclotomic,
    /// Colourings satisfying flatness on every triangle.
    pub flat: u64,
    /// Colourings visited: |G|^{#edges}.
    pub total: u128,
}

/// Visits all |G|^E colourings. The first `k` edges form an inner block with
/// |G|^k ≤ 64, so one bit of a word stands for one inner assignment; the
/// remaining edges run as an odometer. For every outer colouring each
/// triangle is tested on all inner assignments at once by a table lookup.
pub fn oracle_invariant(
    o: &OrientedTriangulation,
    g: &FiniteGroup,
    pi: &FourCochain,
    budget: u128,
) -> Result<OracleResult, EngineError> {
    if pi.group_order() != g.order() {
        return Err(EngineError::GroupMismatch { group: g.order(), cochain: pi.group_order() });
    }
    let t = o.base();
    let ne = t.edges().len();
    let n = g.order();
    let total = check_budget(n, ne, budget)?;
    let tris: Vec<[usize; 3]> = t
        .triangles()
        .iter()
        .map(|&[i, j, k]| [[i, j], [j, k], [i, k]].map(|e| t.edge_id(&e).expect("edge")))
        .collect();
    let chains: Vec<[usize; 4]> = (0..t.facets().len()).map(|f| CHAIN4.map(|p| t.facet_edges(f)[p])).collect();
    let modulus = pi.modulus() as i64;
    let mut hist = vec![0u64; modulus as usize];
    let flat = exhaustive(ne, &tris, g, |digits| {
        let mut e = 0i64;
        for (f, ch) in chains.iter().enumerate() {
            e += o.epsilon()[f] as i64 * pi.get(ch.map(|x| digits[x])) as i64;
        }
        hist[e.rem_euclid(modulus) as usize] += 1;
    });
    let kk = Cyclotomic::from_int(pi.modulus(), n as i64);
    let scale = kk.pow(-(t.vertex_count() as i64)).map_err(|_| EngineError::ZeroK)?;
    let value = &Cyclotomic::from_exponent_counts(pi.modulus(), &hist) * &scale;
    Ok(OracleResult { value, flat, total })
}

/// Flat colourings of the 2-skeleton of a full simplex on `vertex_count`
/// vertices, found by the same unpruned scan. Returns (flat, total).
pub fn oracle_flat_count(vertex_count: usize, g: &FiniteGroup, budget: u128) -> Result<(u64, u128), EngineError> {
    let mut edge = std::collections::HashMap::new();
    for i in 0..vertex_count {
        for j in i + 1..vertex_count {
            let id = edge.len();
            edge.insert((i, j), id);
        }
    }
    let total = check_budget(g.order(), edge.len(), budget)?;
    let mut tris = Vec::new();
    for i in 0..vertex_count {
        for j in i + 1..vertex_count {
            for k in j + 1..vertex_count {
                tris.push([edge[&(i, j)], edge[&(j, k)], edge[&(i, k)]]);
            }
        }
    }
    let flat = exhaustive(edge.len(), &tris, g, |_| {});
    Ok((flat, total))
}

fn check_budget(n: usize, ne: usize, budget: u128) -> Result<u128, EngineError> {
    let total = (n as u128).checked_pow(ne as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(EngineError::Budget { needed: total, budget });
    }
    Ok(total)
}

/// Calls `on_flat` for every colouring of `ne` edges that satisfies
/// `l(a) l(b) = l(c)` on each triangle `[a, b, c]`; returns how many.
fn exhaustive(ne: usize, tris: &[[usize; 3]], g: &FiniteGroup, mut on_flat: impl FnMut(&[usize])) -> u64 {
    let n = g.order();
    let mut k = 0;
    while k < ne && n.pow(k as u32 + 1) <= 64 {
        k += 1;
    }
    let inner = n.pow(k as u32);
    let full: u64 = if inner == 64 { u64::MAX } else { (1u64 << inner) - 1 };
    let inner_digit = |a: usize, j: usize| (a / n.pow(j as u32)) % n;

    // Triangles entirely outside the block, with incremental failure count.
    let mut outer_tris: Vec<usize> = Vec::new();
    let mut edge_tris: Vec<Vec<usize>> = vec![Vec::new(); ne];
    // Triangles meeting the block: outer edges and a mask per outer value tuple.
    let mut block_tris: Vec<(Vec<usize>, Vec<u64>)> = Vec::new();
    for (ti, r) in tris.iter().enumerate() {
        let outer: Vec<usize> = r.iter().copied().filter(|&e| e >= k).collect();
        if outer.len() == 3 {
            outer_tris.push(ti);
            for &e in r {
                edge_tris[e].push(ti);
            }
            continue;
        }
        let combos = n.pow(outer.len() as u32);
        let masks = (0..combos)
            .map(|c| {
                let mut mask = 0u64;
                for a in 0..inner {
                    let mut oi = 0;
                    let val = |e: usize, oi: &mut usize| {
                        if e < k {
                            inner_digit(a, e)
                        } else {
                            let v = (c / n.pow(*oi as u32)) % n;
                            *oi += 1;
                            v
                        }
                    };
                    let x = val(r[0], &mut oi);
                    let y = val(r[1], &mut oi);
                    let z = val(r[2], &mut oi);
                    if g.mul(x, y) == z {
                        mask |= 1 << a;
                    }
                }
                mask
            })
            .collect();
        block_tris.push((outer, masks));
    }

    let mut digits = vec![0usize; ne];
    let broken = |digits: &[usize], ti: usize| -> usize {
        let [a, b, c] = tris[ti];
        (g.mul(digits[a], digits[b]) != digits[c]) as usize
    };
    let mut bad: usize = outer_tris.iter().map(|&ti| broken(&digits, ti)).sum();
    let mut flat = 0u64;
    loop {
        if bad == 0 {
            let mut mask = full;
            for (outer, masks) in &block_tris {
                let mut c = 0;
                for &e in outer.iter().rev() {
                    c = c * n + digits[e];
                }
                mask &= masks[c];
            }
            while mask != 0 {
                let a = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                for (j, d) in digits[..k].iter_mut().enumerate() {
                    *d = inner_digit(a, j);
                }
                flat += 1;
                on_flat(&digits);
            }
        }
        let mut pos = k;
        loop {
            if pos == ne {
                return flat;
            }
            for &ti in &edge_tris[pos] {
                bad -= broken(&digits, ti);
            }
            digits[pos] = (digits[pos] + 1) % n;
            for &ti in &edge_tris[pos] {
                bad += broken(&digits, ti);
            }
            if digits[pos] != 0 {
                break;
            }
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::complex::boundary_5simplex;

    #[test]
    fn z2_sphere() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let r = oracle_invariant(&boundary_5simplex(), &g, &FourCochain::trivial(2, 1).unwrap(), DEFAULT_ORACLE_BUDGET)
            .unwrap();
        assert_eq!((r.flat, r.total), (32, 32768));
        assert_eq!(r.value, ratio(1, 1, 2));
    }

    #[test]
    fn budget_is_enforced() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let err = oracle_invariant(&boundary_5simplex(), &g, &FourCochain::trivial(3, 1).unwrap(), 1 << 10).unwrap_err();
        assert!(matches!(err, EngineError::Budget { needed: 14348907, .. }));
    }

    #[test]
    fn z3_sphere() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let r = oracle_invariant(&boundary_5simplex(), &g, &FourCochain::trivial(3, 1).unwrap(), DEFAULT_ORACLE_BUDGET)
            .unwrap();
        assert_eq!(r.flat, 243);
        assert_eq!(r.value, ratio(1, 1, 3));
    }

    #[test]
    fn full_simplex_skeleton_counts() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(oracle_flat_count(4, &s3, 1 << 20).unwrap(), (216, 46656));
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(oracle_flat_count(6, &z2, 1 << 20).unwrap().0, 32);
    }
}
