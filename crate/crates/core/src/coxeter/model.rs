//! Concrete realizations of the supported finite Coxeter groups.
//!
//! Type A acts on `{1..n+1}` by permutations, types B and D by signed
//! permutations of `{±1..±n}`, and the dihedral group `I2(m)` by the affine
//! maps `x -> ±x + k` on `Z/m`. Composition is `(uw)(x) = u(w(x))`, so right
//! multiplication by a generator acts on positions and left multiplication on
//! values.

use std::fmt;

use crate::error::{Error, Result};

/// Group model descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Model {
    /// Symmetric group on `n + 1` letters, generators `s_i = (i, i+1)`.
    TypeA(usize),
    /// Hyperoctahedral group; `s1` negates the first coordinate and `s_{k+1}`
    /// swaps coordinates `k` and `k+1`.
    TypeB(usize),
    /// Even-signed permutations; `s1` maps `(a, b, ..) -> (-b, -a, ..)`, the
    /// rest as in type B.
    TypeD(usize),
    /// Dihedral group of order `2m`.
    Dihedral(usize),
    /// Direct product; generators are numbered consecutively across factors.
    Product(Vec<Model>),
}

/// Canonical datum of a group element. Ordering is the lexicographic order
/// used to break ties between elements of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Datum {
    Perm(Vec<i8>),
    Signed(Vec<i8>),
    /// `x -> x + rot` or, when `reflected`, `x -> rot - x` on `Z/m`.
    Dihedral { reflected: bool, rot: u8 },
    Product(Vec<Datum>),
}

/// Which side a generator multiplies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Model {
    /// Parses `A3`, `B2`, `D4`, `I2(5)` and `x`-separated products such as `A1xB2`.
    pub fn parse(text: &str) -> Result<Model> {
        let parts: Vec<&str> = text.split(['x', '×', '*']).map(str::trim).collect();
        if parts.len() > 1 {
            return parts
                .iter()
                .map(|p| Model::parse_simple(p))
                .collect::<Result<Vec<_>>>()
                .map(Model::Product);
        }
        Model::parse_simple(text.trim())
    }

    fn parse_simple(text: &str) -> Result<Model> {
        let bad = || Error::Parse(format!("unrecognized group type `{text}`"));
        let upper = text.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return rest.parse().map(Model::Dihedral).map_err(|_| bad());
        }
        if let Some(rest) = upper.strip_prefix("I2_") {
            return rest.parse().map(Model::Dihedral).map_err(|_| bad());
        }
        let (kind, rest) = upper.split_at(upper.len().min(1));
        let n: usize = rest.parse().map_err(|_| bad())?;
        match kind {
            "A" => Ok(Model::TypeA(n)),
            "B" | "C" => Ok(Model::TypeB(n)),
            "D" => Ok(Model::TypeD(n)),
            "I" => Ok(Model::Dihedral(n)),
            _ => Err(bad()),
        }
    }

    /// Checks the model is one this crate can build.
    pub fn validate(&self) -> Result<()> {
        let unsupported = |why: &str| Err(Error::UnsupportedModel(format!("{self}: {why}")));
        match *self {
            Model::TypeA(n) if !(1..=6).contains(&n) => unsupported("type A needs 1 <= n <= 6"),
            Model::TypeB(n) if !(2..=4).contains(&n) => unsupported("type B needs 2 <= n <= 4"),
            Model::TypeD(n) if n != 4 => unsupported("only D4 is supported"),
            Model::Dihedral(m) if !(2..=12).contains(&m) => {
                unsupported("dihedral needs 2 <= m <= 12")
            }
            Model::Product(ref parts) => {
                if parts.is_empty() {
                    return unsupported("empty product");
                }
                parts.iter().try_for_each(Model::validate)
            }
            _ => Ok(()),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Model::TypeA(n) | Model::TypeB(n) | Model::TypeD(n) => *n,
            Model::Dihedral(_) => 2,
            Model::Product(parts) => parts.iter().map(Model::rank).sum(),
        }
    }

    /// Coxeter matrix entry `m(s, t)` for 0-based generator indices.
    pub fn bond(&self, s: usize, t: usize) -> usize {
        if s == t {
            return 1;
        }
        let (s, t) = (s.min(t), s.max(t));
        match self {
            Model::TypeA(_) => {
                if t == s + 1 {
                    3
                } else {
                    2
                }
            }
            Model::TypeB(_) => match (s, t) {
                (0, 1) => 4,
                _ if t == s + 1 => 3,
                _ => 2,
            },
            Model::TypeD(_) => match (s, t) {
                (0, 2) => 3,
                (0, _) => 2,
                _ if t == s + 1 => 3,
                _ => 2,
            },
            Model::Dihedral(m) => *m,
            Model::Product(parts) => {
                let mut offset = 0;
                for p in parts {
                    let r = p.rank();
                    if s >= offset && t < offset + r {
                        return p.bond(s - offset, t - offset);
                    }
                    offset += r;
                }
                2
            }
        }
    }

    pub fn identity(&self) -> Datum {
        match self {
            Model::TypeA(n) => Datum::Perm((1..=(*n as i8 + 1)).collect()),
            Model::TypeB(n) | Model::TypeD(n) => Datum::Signed((1..=*n as i8).collect()),
            Model::Dihedral(_) => Datum::Dihedral { reflected: false, rot: 0 },
            Model::Product(parts) => Datum::Product(parts.iter().map(Model::identity).collect()),
        }
    }

    /// Multiplies `w` by generator `s` (0-based) on the given side.
    pub fn apply(&self, w: &Datum, s: usize, side: Side) -> Datum {
        match (self, w) {
            (Model::TypeA(_), Datum::Perm(p)) => {
                let mut p = p.clone();
                match side {
                    Side::Right => p.swap(s, s + 1),
                    Side::Left => swap_values(&mut p, s as i8 + 1, s as i8 + 2),
                }
                Datum::Perm(p)
            }
            (Model::TypeB(_), Datum::Signed(p)) => {
                let mut p = p.clone();
                match (side, s) {
                    (Side::Right, 0) => p[0] = -p[0],
                    (Side::Left, 0) => {
                        for v in p.iter_mut() {
                            if v.abs() == 1 {
                                *v = -*v;
                            }
                        }
                    }
                    (Side::Right, k) => p.swap(k - 1, k),
                    (Side::Left, k) => swap_values(&mut p, k as i8, k as i8 + 1),
                }
                Datum::Signed(p)
            }
            (Model::TypeD(_), Datum::Signed(p)) => {
                let mut p = p.clone();
                match (side, s) {
                    (Side::Right, 0) => {
                        let (a, b) = (p[0], p[1]);
                        p[0] = -b;
                        p[1] = -a;
                    }
                    (Side::Left, 0) => {
                        for v in p.iter_mut() {
                            match v.abs() {
                                1 => *v = -v.signum() * 2,
                                2 => *v = -v.signum(),
                                _ => {}
                            }
                        }
                    }
                    (Side::Right, k) => p.swap(k - 1, k),
                    (Side::Left, k) => swap_values(&mut p, k as i8, k as i8 + 1),
                }
                Datum::Signed(p)
            }
            (Model::Dihedral(m), &Datum::Dihedral { reflected, rot }) => {
                let g = (true, s as u8);
                let w = (reflected, rot);
                let (reflected, rot) = match side {
                    Side::Right => compose_affine(*m as u8, w, g),
                    Side::Left => compose_affine(*m as u8, g, w),
                };
                Datum::Dihedral { reflected, rot }
            }
            (Model::Product(parts), Datum::Product(data)) => {
                let mut data = data.clone();
                let mut local = s;
                for (part, d) in parts.iter().zip(data.iter_mut()) {
                    if local < part.rank() {
                        *d = part.apply(d, local, side);
                        break;
                    }
                    local -= part.rank();
                }
                Datum::Product(data)
            }
            _ => panic!("datum {w:?} does not belong to model {self}"),
        }
    }

    /// Coxeter length computed directly from the datum by the model's
    /// inversion count.
    pub fn inversion_count(&self, w: &Datum) -> usize {
        match (self, w) {
            (Model::TypeA(_), Datum::Perm(p)) => pairs(p.len())
                .filter(|&(i, j)| p[i] > p[j])
                .count(),
            (Model::TypeB(_), Datum::Signed(p)) => {
                let inv = pairs(p.len()).filter(|&(i, j)| p[i] > p[j]).count();
                let neg_inv = pairs(p.len()).filter(|&(i, j)| p[i] + p[j] < 0).count();
                let negs = p.iter().filter(|&&v| v < 0).count();
                inv + neg_inv + negs
            }
            (Model::TypeD(_), Datum::Signed(p)) => {
                let inv = pairs(p.len()).filter(|&(i, j)| p[i] > p[j]).count();
                let neg_inv = pairs(p.len()).filter(|&(i, j)| p[i] + p[j] < 0).count();
                inv + neg_inv
            }
            (Model::Dihedral(m), &Datum::Dihedral { reflected, rot }) => {
                let (m, k) = (*m, rot as usize);
                if reflected {
                    // x -> k - x is s1 (k=0); reflections alternate in length
                    // 1, 3, 5, ... going round either way.
                    if k == 0 {
                        1
                    } else {
                        (2 * k - 1).min(2 * (m - k) + 1)
                    }
                } else {
                    2 * k.min(m - k)
                }
            }
            (Model::Product(parts), Datum::Product(data)) => parts
                .iter()
                .zip(data)
                .map(|(p, d)| p.inversion_count(d))
                .sum(),
            _ => panic!("datum {w:?} does not belong to model {self}"),
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn swap_values(p: &mut [i8], a: i8, b: i8) {
    for v in p.iter_mut() {
        if v.abs() == a {
            *v = v.signum() * b;
        } else if v.abs() == b {
            *v = v.signum() * a;
        }
    }
}

/// `(u ∘ w)(x)` for affine maps `x -> (-1)^r x + k` on `Z/m`.
fn compose_affine(m: u8, u: (bool, u8), w: (bool, u8)) -> (bool, u8) {
    let (ur, uk) = (u.0, u.1 as i32);
    let (wr, wk) = (w.0, w.1 as i32);
    let sign = if ur { -1 } else { 1 };
    let k = (sign * wk + uk).rem_euclid(m as i32);
    (ur ^ wr, k as u8)
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::TypeA(n) => write!(f, "A{n}"),
            Model::TypeB(n) => write!(f, "B{n}"),
            Model::TypeD(n) => write!(f, "D{n}"),
            Model::Dihedral(m) => write!(f, "I2({m})"),
            Model::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for text in ["A1", "A3", "B2", "D4", "I2(5)", "A1xB2", "I2(12)xA1"] {
            assert_eq!(Model::parse(text).unwrap().to_string(), text);
        }
        assert!(Model::parse("E8").is_err());
        assert!(Model::parse("Aq").is_err());
    }

    #[test]
    fn generators_are_involutions() {
        for model in [
            Model::TypeA(3),
            Model::TypeB(3),
            Model::TypeD(4),
            Model::Dihedral(5),
            Model::Product(vec![Model::TypeA(1), Model::Dihedral(4)]),
        ] {
            let e = model.identity();
            for s in 0..model.rank() {
                for side in [Side::Left, Side::Right] {
                    let once = model.apply(&e, s, side);
                    assert_ne!(once, e);
                    assert_eq!(model.apply(&once, s, side), e);
                    assert_eq!(model.inversion_count(&once), 1, "{model} s{}", s + 1);
                }
            }
        }
    }

    #[test]
    fn dihedral_generators_match_formula() {
        let m = Model::Dihedral(6);
        let e = m.identity();
        let s1 = m.apply(&e, 0, Side::Right);
        let s2 = m.apply(&e, 1, Side::Right);
        assert_eq!(s1, Datum::Dihedral { reflected: true, rot: 0 });
        assert_eq!(s2, Datum::Dihedral { reflected: true, rot: 1 });
    }
}
