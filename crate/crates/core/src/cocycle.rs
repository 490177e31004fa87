//! Z/N-valued group cochains in degrees 3 and 4.
//!
//! A value e stands for the root of unity ζ_N^e. Cochains are stored densely,
//! indexed by the group's element order; files list only nonzero entries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Cyclotomic, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cochain is over a group of order {found}, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
}

fn reduce(e: i64, n: u32) -> u32 {
    e.rem_euclid(n as i64) as u32
}

macro_rules! cochain_common {
    ($ty:ident, $arity:expr) => {
        impl $ty {
            /// The zero cochain.
            pub fn trivial(group_order: usize, modulus: u32) -> Result<Self, CocycleError> {
                if modulus == 0 {
                    return Err(CocycleError::ZeroModulus);
                }
                Ok($ty { group_order, modulus, entries: vec![0; group_order.pow($arity)] })
            }

            pub fn from_fn(
                group_order: usize,
                modulus: u32,
                mut f: impl FnMut([usize; $arity]) -> i64,
            ) -> Result<Self, CocycleError> {
                let mut c = Self::trivial(group_order, modulus)?;
                for idx in 0..c.entries.len() {
                    let args = c.unflatten(idx);
                    c.entries[idx] = reduce(f(args), modulus);
                }
                Ok(c)
            }

            pub fn group_order(&self) -> usize {
                self.group_order
            }

            pub fn modulus(&self) -> u32 {
                self.modulus
            }

            fn flatten(&self, args: [usize; $arity]) -> usize {
                args.iter().fold(0, |acc, &a| acc * self.group_order + a)
            }

            fn unflatten(&self, mut idx: usize) -> [usize; $arity] {
                let mut out = [0; $arity];
                for slot in out.iter_mut().rev() {
                    *slot = idx % self.group_order;
                    idx /= self.group_order;
                }
                out
            }

            /// The exponent at `args`, in 0..N.
            pub fn get(&self, args: [usize; $arity]) -> u32 {
                self.entries[self.flatten(args)]
            }

            pub fn set(&mut self, args: [usize; $arity], e: i64) {
                let i = self.flatten(args);
                self.entries[i] = reduce(e, self.modulus);
            }

            /// True when every entry with an identity argument vanishes.
            pub fn is_normalized(&self) -> bool {
                (0..self.entries.len()).all(|i| self.entries[i] == 0 || !self.unflatten(i).contains(&0))
            }

            pub fn is_zero(&self) -> bool {
                self.entries.iter().all(|&e| e == 0)
            }

            /// Nonzero entries in lexicographic argument order.
            pub fn nonzero(&self) -> impl Iterator<Item = ([usize; $arity], u32)> + '_ {
                self.entries.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (self.unflatten(i), e))
            }

            fn check_group(&self, g: &FiniteGroup) -> Result<(), CocycleError> {
                if g.order() != self.group_order {
                    return Err(CocycleError::OrderMismatch { expected: g.order(), found: self.group_order });
                }
                Ok(())
            }

            fn parse_with(header: &str, text: &str, group_order: usize) -> Result<Self, CocycleError> {
                let mut out: Option<Self> = None;
                for (i, raw) in text.lines().enumerate() {
                    let line = i + 1;
                    let body = raw.split('#').next().unwrap_or("").trim();
                    if body.is_empty() {
                        continue;
                    }
                    let err = |msg: String| CocycleError::Parse { line, msg };
                    let toks: Vec<&str> = body.split_whitespace().collect();
                    if toks[0] == header {
                        if out.is_some() || toks.len() != 2 {
                            return Err(err(format!("expected a single `{header} <N>` header")));
                        }
                        let n: u32 = toks[1].parse().map_err(|_| err("bad modulus".into()))?;
                        out = Some(Self::trivial(group_order, n).map_err(|e| err(e.to_string()))?);
                    } else if toks[0] == "entry" {
                        let c = out.as_mut().ok_or_else(|| err(format!("`entry` before `{header}` header")))?;
                        if toks.len() != $arity + 2 {
                            return Err(err(format!("expected {} group indices and an exponent", $arity)));
                        }
                        let mut args = [0usize; $arity];
                        for (slot, tok) in args.iter_mut().zip(&toks[1..]) {
                            *slot = tok.parse().map_err(|_| err(format!("bad group index `{tok}`")))?;
                            if *slot >= group_order {
                                return Err(err(format!("group index {} out of range", *slot)));
                            }
                        }
                        let e: i64 = toks[$arity + 1].parse().map_err(|_| err("bad exponent".into()))?;
                        c.set(args, e);
                    } else {
                        return Err(err(format!("unknown directive `{}`", toks[0])));
                    }
                }
                out.ok_or(CocycleError::Parse { line: 0, msg: format!("missing `{header}` header") })
            }

            fn text_with(&self, header: &str) -> String {
                let mut s = format!("{header} {}\n", self.modulus);
                for (args, e) in self.nonzero() {
                    let a: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!("entry {} {e}\n", a.join(" ")));
                }
                s
            }
        }
    };
}

/// π: G⁴ → Z/N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourCochain {
    group_order: usize,
    modulus: u32,
    entries: Vec<u32>,
}

/// η: G³ → Z/N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeCochain {
    group_order: usize,
    modulus: u32,
    entries: Vec<u32>,
}

cochain_common!(FourCochain, 4);
cochain_common!(ThreeCochain, 3);

impl FourCochain {
    /// Parses `cocycle <N>` followed by `entry g h k l e` lines.
    pub fn parse(text: &str, group_order: usize) -> Result<Self, CocycleError> {
        Self::parse_with("cocycle", text, group_order)
    }

    pub fn to_text(&self) -> String {
        self.text_with("cocycle")
    }
}

impl ThreeCochain {
    /// Parses `cochain3 <N>` followed by `entry g h k e` lines.
    pub fn parse(text: &str, group_order: usize) -> Result<Self, CocycleError> {
        Self::parse_with("cochain3", text, group_order)
    }

    pub fn to_text(&self) -> String {
        self.text_with("cochain3")
    }
}

/// Outcome of the 6-term cocycle check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleCheck {
    pub holds: bool,
    /// The lexicographically first failing (g, h, k, l, m).
    pub first_violation: Option<[usize; 5]>,
}

fn delta4(g: &FiniteGroup, pi: &FourCochain, [a, b, c, d, e]: [usize; 5]) -> i64 {
    let p = |x: [usize; 4]| pi.get(x) as i64;
    p([b, c, d, e]) - p([g.mul(a, b), c, d, e]) + p([a, g.mul(b, c), d, e]) - p([a, b, g.mul(c, d), e])
        + p([a, b, c, g.mul(d, e)])
        - p([a, b, c, d])
}

/// Verifies δπ ≡ 0 mod N on all quintuples.
pub fn check_cocycle(g: &FiniteGroup, pi: &FourCochain) -> Result<CocycleCheck, CocycleError> {
    pi.check_group(g)?;
    let n = g.order();
    let modulus = pi.modulus() as i64;
    let first_violation = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        if delta4(g, pi, [a, b, c, d, e]).rem_euclid(modulus) != 0 {
                            return Some([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
        None
    });
    Ok(CocycleCheck { holds: first_violation.is_none(), first_violation })
}

/// A seeded uniform 3-cochain, e.g. as the η of a random coboundary.
pub fn random_cochain3(group_order: usize, modulus: u32, seed: u64) -> Result<ThreeCochain, CocycleError> {
    if modulus == 0 {
        return Err(CocycleError::ZeroModulus);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ThreeCochain::from_fn(group_order, modulus, |_| rng.gen_range(0..modulus as i64))
}

/// (δη)(g,h,k,l) = η(h,k,l) − η(gh,k,l) + η(g,hk,l) − η(g,h,kl) + η(g,h,k).
pub fn coboundary(g: &FiniteGroup, eta: &ThreeCochain) -> Result<FourCochain, CocycleError> {
    eta.check_group(g)?;
    let e = |x: [usize; 3]| eta.get(x) as i64;
    FourCochain::from_fn(g.order(), eta.modulus(), |[a, b, c, d]| {
        e([b, c, d]) - e([g.mul(a, b), c, d]) + e([a, g.mul(b, c), d]) - e([a, b, g.mul(c, d)]) + e([a, b, c])
    })
}

/// ζ_N^{sign·π(g,h,k,l)}.
pub fn eval_phase(pi: &FourCochain, args: [usize; 4], sign: i8) -> Cyclotomic {
    Cyclotomic::zeta_pow(pi.modulus(), sign as i64 * pi.get(args) as i64)
}

/// Outcome of the averaged 1-5 identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragedCheck {
    pub holds: bool,
    pub first_violation: Option<[usize; 4]>,
}

/// Exponents of the five phases averaged over m on the right-hand side of
/// the 1-5 identity, combined with the signs of the coboundary.
pub fn averaged_exponents(g: &FiniteGroup, pi: &FourCochain, [a, b, c, d]: [usize; 4]) -> Vec<i64> {
    let p = |x: [usize; 4]| pi.get(x) as i64;
    g.elements()
        .map(|m| {
            p([b, c, d, m]) - p([g.mul(a, b), c, d, m]) + p([a, g.mul(b, c), d, m]) - p([a, b, g.mul(c, d), m])
                + p([a, b, c, g.mul(d, m)])
        })
        .collect()
}

/// Checks π(g,h,k,l) = |G|⁻¹ Σ_m π(h,k,l,m) π(gh,k,l,m)⁻¹ π(g,hk,l,m) π(g,h,kl,m)⁻¹ π(g,h,k,lm)
/// exactly in Q(ζ_N) for every quadruple.
pub fn averaged_identity_check(g: &FiniteGroup, pi: &FourCochain) -> Result<AveragedCheck, CocycleError> {
    pi.check_group(g)?;
    let n = g.order();
    let modulus = pi.modulus();
    let quads: Vec<[usize; 4]> = (0..n.pow(4)).map(|i| [i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n]).collect();
    let first_violation = quads.par_iter().find_map_first(|&q| {
        let mut counts = vec![0u64; modulus as usize];
        for e in averaged_exponents(g, pi, q) {
            counts[reduce(e, modulus) as usize] += 1;
        }
        let rhs = Cyclotomic::from_exponent_counts(modulus, &counts);
        let lhs = &Cyclotomic::from_int(modulus, n as i64) * &eval_phase(pi, q, 1);
        (lhs != rhs).then_some(q)
    });
    Ok(AveragedCheck { holds: first_violation.is_none(), first_violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_is_cocycle() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let pi = FourCochain::trivial(6, 5).unwrap();
        assert!(check_cocycle(&g, &pi).unwrap().holds);
        assert!(averaged_identity_check(&g, &pi).unwrap().holds);
    }

    #[test]
    fn product_of_residues_coboundary() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let eta = ThreeCochain::from_fn(2, 2, |[a, b, c]| (a * b * c) as i64).unwrap();
        let pi = coboundary(&g, &eta).unwrap();
        // δη(1,1,1,1) = η(111) − η(011) + η(101) − η(110) + η(111) = 1 + 0 + 0 − 0 + 1
        assert_eq!(pi.get([1, 1, 1, 1]), 0);
        // δη(1,1,1,0) = η(110) − η(010) + η(100) − η(111) + η(111) = 0
        assert_eq!(pi.get([1, 1, 1, 0]), 0);
        assert!(check_cocycle(&g, &pi).unwrap().holds);
        assert!(averaged_identity_check(&g, &pi).unwrap().holds);
    }

    #[test]
    fn single_entry_is_not_cocycle() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let mut pi = FourCochain::trivial(2, 2).unwrap();
        pi.set([1, 0, 0, 0], 1);
        let r = check_cocycle(&g, &pi).unwrap();
        assert!(!r.holds);
        let q = r.first_violation.unwrap();
        assert_ne!(delta4(&g, &pi, q).rem_euclid(2), 0);

        let g3 = FiniteGroup::cyclic(3).unwrap();
        let mut pi3 = FourCochain::trivial(3, 3).unwrap();
        pi3.set([1, 1, 1, 1], 1);
        assert!(!check_cocycle(&g3, &pi3).unwrap().holds);
    }

    #[test]
    fn quartic_cup_product_on_z2_is_a_cocycle() {
        // the only nonzero entry of x⁴ is at (1,1,1,1)
        let g = FiniteGroup::cyclic(2).unwrap();
        let mut pi = FourCochain::trivial(2, 2).unwrap();
        pi.set([1, 1, 1, 1], 1);
        assert!(check_cocycle(&g, &pi).unwrap().holds);
        assert!(averaged_identity_check(&g, &pi).unwrap().holds);
    }

    #[test]
    fn eval_phase_signs() {
        let mut pi = FourCochain::trivial(2, 2).unwrap();
        assert!(eval_phase(&pi, [1, 0, 1, 0], 1).is_one());
        pi.set([1, 1, 1, 1], 1);
        assert_eq!(eval_phase(&pi, [1, 1, 1, 1], 1), Cyclotomic::from_int(2, -1));
        let mut pi5 = FourCochain::trivial(3, 5).unwrap();
        pi5.set([1, 2, 1, 2], 2);
        assert_eq!(eval_phase(&pi5, [1, 2, 1, 2], -1), Cyclotomic::zeta_pow(5, 3));
    }

    #[test]
    fn normalization_is_preserved() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let eta = ThreeCochain::from_fn(3, 3, |[a, b, c]| if a * b * c == 0 { 0 } else { (a + 2 * b + c) as i64 })
            .unwrap();
        assert!(eta.is_normalized());
        assert!(coboundary(&g, &eta).unwrap().is_normalized());
    }

    #[test]
    fn file_round_trip() {
        let mut pi = FourCochain::trivial(3, 6).unwrap();
        pi.set([1, 2, 0, 1], 5);
        pi.set([2, 2, 2, 2], -1);
        let back = FourCochain::parse(&pi.to_text(), 3).unwrap();
        assert_eq!(back, pi);
        assert_eq!(back.get([2, 2, 2, 2]), 5);
        let eta = ThreeCochain::from_fn(2, 4, |[a, b, c]| (a + b + c) as i64).unwrap();
        assert_eq!(ThreeCochain::parse(&eta.to_text(), 2).unwrap(), eta);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(FourCochain::parse("cocycle 2\nentry 0 1 2\n", 2), Err(CocycleError::Parse { line: 2, .. })));
        assert!(matches!(FourCochain::parse("entry 0 0 0 0 1\n", 2), Err(CocycleError::Parse { line: 1, .. })));
        assert!(matches!(
            FourCochain::parse("cocycle 2\n\nentry 0 0 5 0 1\n", 2),
            Err(CocycleError::Parse { line: 3, .. })
        ));
        assert!(FourCochain::parse("", 2).is_err());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let pi = FourCochain::trivial(2, 2).unwrap();
        assert!(matches!(check_cocycle(&g, &pi), Err(CocycleError::OrderMismatch { .. })));
    }
}
