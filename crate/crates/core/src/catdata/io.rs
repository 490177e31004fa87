use std::collections::BTreeMap;

use super::{DataError, FaceLabel, SimpleObject, SphericalData, TensorSource};
use crate::algebra::Cyclotomic;

/// Serialises data in tabulated form.
pub fn save_data(data: &SphericalData) -> String {
    let t = data.tabulate();
    let mut out = format!("spherical N {}\n", t.modulus());
    for (i, o) in t.objects().iter().enumerate() {
        out.push_str(&format!("object {i} dim {} dual {}\n", o.dim.to_literal(), o.dual));
    }
    for (id, l) in t.labels().iter().enumerate() {
        let (a, b, c) = l.edges;
        out.push_str(&format!("triangle {a} {b} {c} label {id} dim {}\n", l.dim.to_literal()));
    }
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    for ((e, f), d) in t.twohom_table() {
        out.push_str(&format!("twohom {} {} {d}\n", join(e), join(f)));
    }
    if let TensorSource::Table(map) = t.source() {
        for ((sign, e, f), entries) in map {
            let s = if *sign > 0 { '+' } else { '-' };
            out.push_str(&format!("ztensor {s} {} {}\n", join(e), join(f)));
            let lits: Vec<String> = entries.iter().map(|c| c.to_literal()).collect();
            if !lits.is_empty() {
                out.push_str(&lits.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

const DIRECTIVES: [&str; 5] = ["spherical", "object", "triangle", "twohom", "ztensor"];

struct Pending {
    line: usize,
    key: (i8, [usize; 10], [usize; 10]),
    entries: Vec<Cyclotomic>,
}

fn ids<const M: usize>(toks: &[&str], line: usize) -> Result<[usize; M], DataError> {
    let mut out = [0; M];
    for (slot, t) in out.iter_mut().zip(toks) {
        *slot = t.parse().map_err(|_| DataError::Parse { line, msg: format!("bad id `{t}`") })?;
    }
    Ok(out)
}

/// Parses the data format and validates every structural invariant.
pub fn load_data(text: &str) -> Result<SphericalData, DataError> {
    let mut modulus: Option<u32> = None;
    let mut objects: BTreeMap<usize, (Cyclotomic, usize)> = BTreeMap::new();
    let mut labels: BTreeMap<usize, FaceLabel> = BTreeMap::new();
    let mut twohom = BTreeMap::new();
    let mut tensors = BTreeMap::new();
    let mut pending: Option<Pending> = None;

    let flush = |p: Option<Pending>, tensors: &mut BTreeMap<_, _>| -> Result<(), DataError> {
        if let Some(p) = p {
            if tensors.insert(p.key, p.entries).is_some() {
                return Err(DataError::Parse { line: p.line, msg: "duplicate ztensor block".into() });
            }
        }
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: &str| DataError::Parse { line, msg: msg.to_string() };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let n = || modulus.ok_or_else(|| err("missing `spherical N <N>` header"));
        let lit = |s: &str, n: u32| Cyclotomic::parse_literal(n, s).map_err(|e| DataError::Parse { line, msg: e.to_string() });
        if DIRECTIVES.contains(&toks[0]) {
            flush(pending.take(), &mut tensors)?;
        }
        match toks[0] {
            "spherical" => {
                if toks.len() != 3 || toks[1] != "N" || modulus.is_some() {
                    return Err(err("expected a single `spherical N <N>` header"));
                }
                let v: u32 = toks[2].parse().map_err(|_| err("bad field order"))?;
                if v == 0 {
                    return Err(err("field order must be positive"));
                }
                modulus = Some(v);
            }
            "object" => {
                let n = n()?;
                if toks.len() != 6 || toks[2] != "dim" || toks[4] != "dual" {
                    return Err(err("expected `object <id> dim <cyclo> dual <id>`"));
                }
                let [id] = ids::<1>(&toks[1..2], line)?;
                let [dual] = ids::<1>(&toks[5..6], line)?;
                if objects.insert(id, (lit(toks[3], n)?, dual)).is_some() {
                    return Err(err("duplicate object id"));
                }
            }
            "triangle" => {
                let n = n()?;
                if toks.len() != 8 || toks[4] != "label" || toks[6] != "dim" {
                    return Err(err("expected `triangle <a> <b> <c> label <f> dim <cyclo>`"));
                }
                let [a, b, c] = ids::<3>(&toks[1..4], line)?;
                let [f] = ids::<1>(&toks[5..6], line)?;
                if labels.insert(f, FaceLabel { edges: (a, b, c), dim: lit(toks[7], n)? }).is_some() {
                    return Err(err("duplicate triangle label id"));
                }
            }
            "twohom" => {
                if toks.len() != 12 {
                    return Err(err("expected `twohom <6 edges> <4 labels> <dim>`"));
                }
                let e = ids::<6>(&toks[1..7], line)?;
                let f = ids::<4>(&toks[7..11], line)?;
                let [d] = ids::<1>(&toks[11..12], line)?;
                if twohom.insert((e, f), d).is_some() {
                    return Err(err("duplicate twohom entry"));
                }
            }
            "ztensor" => {
                n()?;
                if toks.len() != 22 {
                    return Err(err("expected `ztensor <+|-> <10 edges> <10 labels>`"));
                }
                let sign = match toks[1] {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(err("sign must be + or -")),
                };
                let e = ids::<10>(&toks[2..12], line)?;
                let f = ids::<10>(&toks[12..22], line)?;
                pending = Some(Pending { line, key: (sign, e, f), entries: Vec::new() });
            }
            _ => {
                let n = n()?;
                let p = pending.as_mut().ok_or_else(|| err(&format!("unknown directive `{}`", toks[0])))?;
                for t in &toks {
                    p.entries.push(lit(t, n)?);
                }
            }
        }
    }
    flush(pending.take(), &mut tensors)?;
    let modulus = modulus.ok_or(DataError::Parse { line: 0, msg: "missing `spherical N <N>` header".into() })?;

    let count = objects.len();
    if objects.keys().copied().ne(0..count) {
        return Err(DataError::Parse { line: 0, msg: "object ids must be 0..n-1".into() });
    }
    if labels.keys().copied().ne(0..labels.len()) {
        return Err(DataError::Parse { line: 0, msg: "triangle label ids must be 0..m-1".into() });
    }
    let objects: Vec<SimpleObject> = objects.into_values().map(|(dim, dual)| SimpleObject { dim, dual }).collect();
    let labels: Vec<FaceLabel> = labels.into_values().collect();
    SphericalData::new(modulus, objects, labels, twohom, TensorSource::Table(tensors))
}
