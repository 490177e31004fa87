//! Finite groups given by a multiplication table.
//!
//! Element 0 is always the identity. Tables are validated exhaustively on
//! construction (Latin square, identity, associativity).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group spec `{0}`")]
    Spec(String),
    #[error("group table: {0}")]
    Table(String),
    #[error("group table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read group file {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    name: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates `rows` (`rows[i][j]` = index of g_i·g_j) and builds the group.
    pub fn from_table(rows: &[Vec<usize>], name: impl Into<String>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Table("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Table(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::Table(format!("entry {x} in row {i} out of range")));
                }
            }
            table.extend_from_slice(row);
        }
        for j in 0..n {
            if table[j] != j || table[j * n] != j {
                return Err(GroupError::Table(format!("element 0 is not the identity (column/row {j})")));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = table[i * n + j];
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::Table(format!("row {i} is not a permutation")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = table[j * n + i];
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::Table(format!("column {i} is not a permutation")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("Latin square has an inverse");
            debug_assert_eq!(table[inverse[a] * n + a], 0);
        }
        Ok(FiniteGroup { order: n, table, inverse, name: name.into() })
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Spec("cyclic:0".into()));
        }
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(&rows, format!("cyclic:{n}"))
    }

    /// Symmetric group on `n ≤ 5` letters; elements in lexicographic order of
    /// their images, product `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::Spec(format!("sym:{n} (need 1 <= n <= 5)")));
        }
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                        index[st.as_slice()]
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&rows, format!("sym:{n}"))
    }

    /// Direct product with lexicographic pairing `(a, b) ↦ a·|B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Self::from_table(&rows, format!("prod:{},{}", a.name, b.name))
    }

    /// Parses a table file: header `group <n>` then `n` rows of `n` indices.
    pub fn parse_table(text: &str) -> Result<Self, GroupError> {
        let mut n: Option<usize> = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| GroupError::Parse { line: lineno + 1, msg };
            let mut toks = line.split_whitespace();
            match n {
                None => {
                    if toks.next() != Some("group") {
                        return Err(perr("expected header `group <n>`".into()));
                    }
                    let v = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| perr("expected group order".into()))?;
                    if toks.next().is_some() {
                        return Err(perr("trailing tokens".into()));
                    }
                    n = Some(v);
                }
                Some(order) => {
                    let row: Vec<usize> = toks
                        .map(|t| t.parse().map_err(|_| perr(format!("bad index `{t}`"))))
                        .collect::<Result<_, _>>()?;
                    if row.len() != order {
                        return Err(perr(format!("expected {order} entries, found {}", row.len())));
                    }
                    if rows.len() == order {
                        return Err(perr("too many rows".into()));
                    }
                    rows.push(row);
                }
            }
        }
        let order = n.ok_or_else(|| GroupError::Parse { line: 0, msg: "missing header".into() })?;
        if rows.len() != order {
            return Err(GroupError::Table(format!("expected {order} rows, found {}", rows.len())));
        }
        Self::from_table(&rows, "file")
    }

    pub fn to_table_text(&self) -> String {
        let mut out = format!("group {}\n", self.order);
        for i in 0..self.order {
            let row = (0..self.order).map(|j| self.mul(i, j).to_string()).join(" ");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

/// Parses `cyclic:<n>`, `sym:<n>`, `prod:<A>,<B>` or `file:<path>`.
pub fn group_from_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
    let (g, rest) = parse_spec(spec.trim())?;
    if !rest.is_empty() {
        return Err(GroupError::Spec(spec.to_string()));
    }
    Ok(g)
}

fn parse_spec(s: &str) -> Result<(FiniteGroup, &str), GroupError> {
    let bad = || GroupError::Spec(s.to_string());
    let (kind, body) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "cyclic" | "sym" => {
            let end = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
            let n: usize = body[..end].parse().map_err(|_| bad())?;
            let g = if kind == "cyclic" { FiniteGroup::cyclic(n)? } else { FiniteGroup::symmetric(n)? };
            Ok((g, &body[end..]))
        }
        "prod" => {
            let (a, rest) = parse_spec(body)?;
            let rest = rest.strip_prefix(',').ok_or_else(bad)?;
            let (b, rest) = parse_spec(rest)?;
            Ok((FiniteGroup::product(&a, &b)?, rest))
        }
        "file" => {
            let end = body.find(',').unwrap_or(body.len());
            let path = &body[..end];
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| GroupError::Io { path: path.to_string(), msg: e.to_string() })?;
            let mut g = FiniteGroup::parse_table(&text)?;
            g.name = format!("file:{path}");
            Ok((g, &body[end..]))
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = group_from_spec("cyclic:2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!((g.mul(0, 0), g.mul(0, 1), g.mul(1, 0), g.mul(1, 1)), (0, 1, 1, 0));
    }

    #[test]
    fn sym_three_is_nonabelian_of_order_six() {
        let g = group_from_spec("sym:3").unwrap();
        assert_eq!(g.order(), 6);
        let nonabelian = (0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a)));
        assert!(nonabelian);
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(g.inv(a), a), 0);
        }
    }

    #[test]
    fn nested_products() {
        let g = group_from_spec("prod:prod:cyclic:2,cyclic:2,sym:3").unwrap();
        assert_eq!(g.order(), 24);
        let k = group_from_spec("prod:cyclic:2,cyclic:3").unwrap();
        // Z/2 x Z/3 is cyclic: some element has order 6
        let has_order_six = k.elements().any(|a| {
            let mut x = a;
            let mut ord = 1;
            while x != 0 {
                x = k.mul(x, a);
                ord += 1;
            }
            ord == 6
        });
        assert!(has_order_six);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a Latin square with identity 0 that is not a group (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(&rows, "loop") {
            Err(GroupError::NotAssociative(a, b, c)) => {
                let t = |x: usize, y: usize| rows[x][y];
                assert_ne!(t(t(a, b), c), t(a, t(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn table_file_roundtrip_and_errors() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let back = FiniteGroup::parse_table(&g.to_table_text()).unwrap();
        assert_eq!(back.to_table_text(), g.to_table_text());
        assert!(matches!(FiniteGroup::parse_table("group 2\n0 1\n"), Err(GroupError::Table(_))));
        assert!(matches!(FiniteGroup::parse_table("group 2\n0 1\n1\n"), Err(GroupError::Parse { line: 3, .. })));
        assert!(matches!(FiniteGroup::parse_table("group 2\n1 0\n0 1\n"), Err(GroupError::Table(_))));
    }

    #[test]
    fn malformed_specs() {
        for s in ["", "cyclic", "cyclic:", "cyclic:0", "sym:6", "prod:cyclic:2", "dihedral:4", "cyclic:2x"] {
            assert!(group_from_spec(s).is_err(), "{s}");
        }
    }
}
