//! Finite weighted Coxeter systems.
//!
//! A [`CoxeterSystem`] enumerates its group once at construction and keeps
//! left/right multiplication tables by the generators, so every element is a
//! small [`Element`] handle. Elements are numbered in `(length, canonical
//! datum)` order, which is also their `Ord`.

mod model;

pub use model::{Datum, Model, Side};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest group order accepted by [`CoxeterSystem::new`].
pub const MAX_ORDER: usize = 10_080;

/// A generator, stored 0-based and displayed 1-based as `s1`, `s2`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub usize);

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0 + 1)
    }
}

/// A subset `J` of the generators as a bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSubset(pub u64);

impl GenSubset {
    pub const EMPTY: GenSubset = GenSubset(0);

    pub fn full(rank: usize) -> GenSubset {
        GenSubset(if rank >= 64 { u64::MAX } else { (1 << rank) - 1 })
    }

    pub fn from_gens(gens: impl IntoIterator<Item = Generator>) -> GenSubset {
        GenSubset(gens.into_iter().fold(0, |acc, g| acc | (1 << g.0)))
    }

    pub fn contains(self, s: Generator) -> bool {
        self.0 >> s.0 & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Generator> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1).map(Generator)
    }

    /// All subsets of `{s1..s_rank}` in increasing bit order.
    pub fn all(rank: usize) -> impl Iterator<Item = GenSubset> {
        (0..1u64 << rank).map(GenSubset)
    }

    pub fn is_subset_of(self, other: GenSubset) -> bool {
        self.0 & !other.0 == 0
    }
}

/// `{s1,s3}`; the empty set prints as `{}`.
impl fmt::Display for GenSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// A group element of a specific [`CoxeterSystem`].
///
/// The handle is only meaningful together with the system that produced it.
/// Ordering is by length, then by canonical datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    length: u32,
    index: u32,
}

impl Element {
    pub fn length(self) -> usize {
        self.length as usize
    }

    /// Position in [`CoxeterSystem::enumerate`].
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_identity(self) -> bool {
        self.length == 0
    }
}

/// Position of `y` relative to `D_J` under left multiplication by `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DescentClass {
    /// `sy < y`.
    SD,
    /// `sy > y` and `sy` is in `D_J`.
    SA,
    /// `sy > y` and `sy` is not in `D_J`.
    WD,
    /// `sy > y` and `sy` is in `D_J` but outside the ideal; never produced
    /// here since the ideal is all of `D_J`.
    WA,
}

/// A finite Coxeter group with a weight function `L: S -> Z_{>=0}`.
pub struct CoxeterSystem {
    model: Model,
    weights: Vec<i64>,
    data: Vec<Datum>,
    lengths: Vec<u32>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    left_desc: Vec<u64>,
    right_desc: Vec<u64>,
    // first letter of the ShortLex-minimal reduced word
    first_letter: Vec<u8>,
    elem_weight: Vec<i64>,
    lower: Vec<OnceLock<Box<[u64]>>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("model", &self.model)
            .field("weights", &self.weights)
            .field("order", &self.data.len())
            .finish()
    }
}

impl CoxeterSystem {
    /// Builds and enumerates the group, checking the weight function.
    pub fn new(model: Model, weights: &[i64]) -> Result<Self> {
        model.validate()?;
        let rank = model.rank();
        if weights.len() != rank {
            return Err(Error::WeightCount { expected: rank, got: weights.len() });
        }
        for (i, &w) in weights.iter().enumerate() {
            if w < 0 {
                return Err(Error::NegativeWeight { generator: Generator(i).to_string(), weight: w });
            }
        }
        for s in 0..rank {
            for t in s + 1..rank {
                let m = model.bond(s, t);
                if m % 2 == 1 && weights[s] != weights[t] {
                    return Err(Error::WeightInconsistent {
                        s: Generator(s).to_string(),
                        t: Generator(t).to_string(),
                        m,
                    });
                }
            }
        }

        // breadth-first search on the right Cayley graph; distance is length
        let id = model.identity();
        let mut seen: HashMap<Datum, u32> = HashMap::new();
        let mut found: Vec<(u32, Datum)> = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone(), 0);
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            let len = seen[&w];
            for s in 0..rank {
                let ws = model.apply(&w, s, Side::Right);
                if !seen.contains_key(&ws) {
                    if seen.len() >= MAX_ORDER {
                        return Err(Error::GroupTooLarge(seen.len() + 1));
                    }
                    seen.insert(ws.clone(), len + 1);
                    queue.push_back(ws);
                }
            }
            found.push((len, w));
        }
        found.sort();
        let index: HashMap<&Datum, u32> =
            found.iter().enumerate().map(|(i, (_, d))| (d, i as u32)).collect();
        let n = found.len();
        let mut right = vec![vec![0u32; n]; rank];
        let mut left = vec![vec![0u32; n]; rank];
        for (i, (_, d)) in found.iter().enumerate() {
            for s in 0..rank {
                right[s][i] = index[&model.apply(d, s, Side::Right)];
                left[s][i] = index[&model.apply(d, s, Side::Left)];
            }
        }
        let lengths: Vec<u32> = found.iter().map(|(l, _)| *l).collect();
        let mut left_desc = vec![0u64; n];
        let mut right_desc = vec![0u64; n];
        for i in 0..n {
            for s in 0..rank {
                if lengths[left[s][i] as usize] < lengths[i] {
                    left_desc[i] |= 1 << s;
                }
                if lengths[right[s][i] as usize] < lengths[i] {
                    right_desc[i] |= 1 << s;
                }
            }
        }
        let mut first_letter = vec![0u8; n];
        let mut elem_weight = vec![0i64; n];
        for i in 1..n {
            let s = left_desc[i].trailing_zeros() as usize;
            first_letter[i] = s as u8;
            elem_weight[i] = weights[s] + elem_weight[left[s][i] as usize];
        }
        let data = found.into_iter().map(|(_, d)| d).collect();
        Ok(CoxeterSystem {
            model,
            weights: weights.to_vec(),
            data,
            lengths,
            right,
            left,
            left_desc,
            right_desc,
            first_letter,
            elem_weight,
            lower: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Same as [`CoxeterSystem::new`] with every weight equal to 1.
    pub fn equal_weights(model: Model) -> Result<Self> {
        let rank = model.rank();
        Self::new(model, &vec![1; rank])
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.rank()).map(Generator)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, s: Generator) -> i64 {
        self.weights[s.0]
    }

    /// Coxeter matrix entry `m(s, t)`.
    pub fn bond(&self, s: Generator, t: Generator) -> usize {
        self.model.bond(s.0, t.0)
    }

    /// Short description such as `B2[1,2]`.
    pub fn name(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        format!("{}[{}]", self.model, w.join(","))
    }

    pub fn order(&self) -> usize {
        self.data.len()
    }

    pub fn element(&self, index: usize) -> Element {
        Element { length: self.lengths[index], index: index as u32 }
    }

    /// All elements sorted by `(length, canonical datum)`.
    pub fn enumerate(&self) -> Vec<Element> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn identity(&self) -> Element {
        self.element(0)
    }

    pub fn longest_element(&self) -> Element {
        self.element(self.order() - 1)
    }

    pub fn datum(&self, w: Element) -> &Datum {
        &self.data[w.index()]
    }

    pub fn find(&self, datum: &Datum) -> Option<Element> {
        self.data.iter().position(|d| d == datum).map(|i| self.element(i))
    }

    pub fn apply_gen(&self, w: Element, s: Generator, side: Side) -> Element {
        let table = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        self.element(table[s.0][w.index()] as usize)
    }

    /// `s * w`.
    pub fn lmul(&self, s: Generator, w: Element) -> Element {
        self.apply_gen(w, s, Side::Left)
    }

    /// `w * s`.
    pub fn rmul(&self, w: Element, s: Generator) -> Element {
        self.apply_gen(w, s, Side::Right)
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.reduced_word(y).into_iter().fold(x, |acc, s| self.rmul(acc, s))
    }

    pub fn inverse(&self, w: Element) -> Element {
        self.reduced_word(w).into_iter().rev().fold(self.identity(), |acc, s| self.rmul(acc, s))
    }

    pub fn left_descents(&self, w: Element) -> GenSubset {
        GenSubset(self.left_desc[w.index()])
    }

    pub fn right_descents(&self, w: Element) -> GenSubset {
        GenSubset(self.right_desc[w.index()])
    }

    /// The lexicographically smallest reduced word (ShortLex normal form).
    pub fn reduced_word(&self, w: Element) -> Vec<Generator> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w;
        while !cur.is_identity() {
            let s = Generator(self.first_letter[cur.index()] as usize);
            word.push(s);
            cur = self.lmul(s, cur);
        }
        word
    }

    /// The product of a word of generators, read left to right.
    pub fn from_word(&self, word: &[Generator]) -> Element {
        word.iter().fold(self.identity(), |acc, &s| self.rmul(acc, s))
    }

    /// `L(w)`, the sum of generator weights along any reduced word.
    pub fn weight_of(&self, w: Element) -> i64 {
        self.elem_weight[w.index()]
    }

    /// `(-1)^{l(w)}`.
    pub fn epsilon(&self, w: Element) -> i32 {
        if w.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Bitset of the Bruhat lower interval `[e, y]`, built from the subword
    /// property on the ShortLex reduced word of `y`.
    fn lower_interval(&self, y: Element) -> &[u64] {
        self.lower[y.index()].get_or_init(|| {
            let words = self.order().div_ceil(64);
            let mut set = vec![0u64; words].into_boxed_slice();
            let mut members = vec![0u32];
            set[0] = 1;
            for s in self.reduced_word(y) {
                let n = members.len();
                for k in 0..n {
                    let ws = self.right[s.0][members[k] as usize];
                    let (word, bit) = (ws as usize / 64, ws % 64);
                    if set[word] >> bit & 1 == 0 {
                        set[word] |= 1 << bit;
                        members.push(ws);
                    }
                }
            }
            set
        })
    }

    pub fn bruhat_leq(&self, x: Element, y: Element) -> bool {
        if x.length > y.length {
            return false;
        }
        if x.length == y.length {
            return x == y;
        }
        let set = self.lower_interval(y);
        set[x.index() / 64] >> (x.index() % 64) & 1 == 1
    }

    pub fn bruhat_lt(&self, x: Element, y: Element) -> bool {
        x != y && self.bruhat_leq(x, y)
    }

    /// True iff `y = z x` with `l(y) = l(z) + l(x)`, i.e. `x <=_L y`.
    pub fn is_suffix(&self, x: Element, y: Element) -> bool {
        if x.length > y.length {
            return false;
        }
        let z = self.mul(y, self.inverse(x));
        z.length() + x.length() == y.length()
    }

    pub fn in_dj(&self, j: GenSubset, w: Element) -> bool {
        self.right_desc[w.index()] & j.0 == 0
    }

    /// Minimal left coset representatives `D_J = {w : l(ws) > l(w) for s in J}`,
    /// in element order.
    pub fn min_coset_reps(&self, j: GenSubset) -> Vec<Element> {
        self.enumerate().into_iter().filter(|&w| self.in_dj(j, w)).collect()
    }

    pub fn classify(&self, j: GenSubset, y: Element, s: Generator) -> Result<DescentClass> {
        if !self.in_dj(j, y) {
            return Err(Error::NotInDJ(self.format_element(y)));
        }
        let sy = self.lmul(s, y);
        Ok(if sy.length < y.length {
            DescentClass::SD
        } else if self.in_dj(j, sy) {
            DescentClass::SA
        } else {
            DescentClass::WD
        })
    }

    /// `e` or a dot-separated ShortLex reduced word like `s1.s2.s1`.
    pub fn format_element(&self, w: Element) -> String {
        if w.is_identity() {
            return "e".to_string();
        }
        let parts: Vec<String> = self.reduced_word(w).iter().map(Generator::to_string).collect();
        parts.join(".")
    }

    pub fn parse_generator(&self, token: &str) -> Result<Generator> {
        let digits = token.trim().trim_start_matches(['s', 'S']);
        let k: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator `{token}`")))?;
        if k == 0 || k > self.rank() {
            return Err(Error::Parse(format!("generator `{token}` out of range 1..={}", self.rank())));
        }
        Ok(Generator(k - 1))
    }

    /// Parses `e`, `s1.s2.s1` or, for rank at most 9, the digit string `121`.
    /// Words need not be reduced.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        if text == "e" {
            return Ok(self.identity());
        }
        if text.is_empty() {
            return Err(Error::Parse("empty element word".into()));
        }
        let word: Vec<Generator> = if text.contains('.') || text.starts_with(['s', 'S']) {
            text.split('.').map(|t| self.parse_generator(t)).collect::<Result<_>>()?
        } else if self.rank() <= 9 && text.chars().all(|c| c.is_ascii_digit()) {
            text.chars().map(|c| self.parse_generator(&c.to_string())).collect::<Result<_>>()?
        } else {
            return Err(Error::Parse(format!("cannot parse element `{text}`")));
        };
        Ok(self.from_word(&word))
    }

    /// Parses a generator set such as `""`, `s1,s3` or `1 3`.
    pub fn parse_subset(&self, text: &str) -> Result<GenSubset> {
        text.split([',', ' ', '.'])
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_generator(t))
            .collect::<Result<Vec<_>>>()
            .map(GenSubset::from_gens)
    }

    pub fn format_subset(&self, j: GenSubset) -> String {
        j.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap()
    }

    fn el(sys: &CoxeterSystem, w: &str) -> Element {
        sys.parse_element(w).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let a = a2();
        assert_eq!(a.order(), 6);
        assert_eq!(a.bond(Generator(0), Generator(1)), 3);
        assert!(CoxeterSystem::new(Model::Dihedral(4), &[1, 2]).is_ok());
        assert!(matches!(
            CoxeterSystem::new(Model::TypeA(2), &[1, 2]),
            Err(Error::WeightInconsistent { .. })
        ));
        assert!(matches!(
            CoxeterSystem::new(Model::TypeA(2), &[1, -1]),
            Err(Error::NegativeWeight { .. })
        ));
        assert!(matches!(
            CoxeterSystem::new(Model::TypeA(7), &[1; 7]),
            Err(Error::UnsupportedModel(_))
        ));
        assert!(matches!(
            CoxeterSystem::new(Model::TypeA(2), &[1]),
            Err(Error::WeightCount { .. })
        ));
        assert!(CoxeterSystem::new(Model::TypeA(2), &[0, 0]).is_ok());
    }

    #[test]
    fn group_orders() {
        let cases = [
            (Model::TypeA(1), 2),
            (Model::TypeA(3), 24),
            (Model::TypeA(4), 120),
            (Model::TypeB(2), 8),
            (Model::TypeB(3), 48),
            (Model::TypeB(4), 384),
            (Model::TypeD(4), 192),
            (Model::Dihedral(5), 10),
            (Model::Dihedral(12), 24),
            (Model::Product(vec![Model::TypeA(2), Model::TypeB(2)]), 48),
        ];
        for (model, order) in cases {
            let sys = CoxeterSystem::equal_weights(model.clone()).unwrap();
            assert_eq!(sys.order(), order, "{model}");
        }
    }

    #[test]
    fn matrix_matches_generator_orders() {
        for model in [
            Model::TypeA(4),
            Model::TypeB(3),
            Model::TypeD(4),
            Model::Dihedral(7),
            Model::Product(vec![Model::TypeA(2), Model::Dihedral(4)]),
        ] {
            let sys = CoxeterSystem::equal_weights(model.clone()).unwrap();
            for s in sys.generators() {
                for t in sys.generators() {
                    let st = sys.mul(sys.from_word(&[s]), sys.from_word(&[t]));
                    let mut acc = sys.identity();
                    let mut order = 0;
                    loop {
                        acc = sys.mul(acc, st);
                        order += 1;
                        if acc.is_identity() {
                            break;
                        }
                    }
                    let expected = if s == t { 1 } else { sys.bond(s, t) };
                    assert_eq!(order, expected, "{model} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn lengths_match_inversion_counts() {
        for model in [Model::TypeA(4), Model::TypeB(4), Model::TypeD(4), Model::Dihedral(9)] {
            let sys = CoxeterSystem::equal_weights(model.clone()).unwrap();
            for w in sys.enumerate() {
                assert_eq!(w.length(), model.inversion_count(sys.datum(w)), "{model}");
            }
        }
    }

    #[test]
    fn apply_gen_examples() {
        let a = a2();
        let (s1, s2) = (Generator(0), Generator(1));
        let e = a.identity();
        let x = a.apply_gen(e, s1, Side::Left);
        assert_eq!(x.length(), 1);
        assert_eq!(a.apply_gen(x, s1, Side::Left), e);
        // s1 * s2 as permutations: (s1 s2)(i) = s1(s2(i))
        let s1s2 = a.apply_gen(a.from_word(&[s2]), s1, Side::Left);
        assert_eq!(s1s2.length(), 2);
        let brute: Vec<i8> = {
            let t1 = [2i8, 1, 3];
            let t2 = [1i8, 3, 2];
            (0..3).map(|i| t1[(t2[i] - 1) as usize]).collect()
        };
        assert_eq!(a.datum(s1s2), &Datum::Perm(brute));
    }

    #[test]
    fn descents() {
        let a = a2();
        assert!(a.left_descents(a.identity()).is_empty());
        assert_eq!(a.left_descents(a.longest_element()), GenSubset(0b11));
        assert_eq!(a.left_descents(el(&a, "s1.s2")), GenSubset(0b01));
        assert_eq!(a.right_descents(el(&a, "s1.s2")), GenSubset(0b10));
    }

    #[test]
    fn suffix_examples() {
        let a = a2();
        let (s1, s2, s1s2) = (el(&a, "s1"), el(&a, "s2"), el(&a, "s1.s2"));
        assert!(a.is_suffix(s1, s1));
        assert!(a.is_suffix(a.identity(), s1s2));
        assert!(a.is_suffix(s2, s1s2));
        assert!(!a.is_suffix(s1, s1s2));
    }

    #[test]
    fn coset_reps_and_classes() {
        let a = a2();
        let s1 = Generator(0);
        assert_eq!(a.min_coset_reps(GenSubset::full(2)), vec![a.identity()]);
        assert_eq!(a.min_coset_reps(GenSubset::EMPTY).len(), 6);
        let dj = a.min_coset_reps(GenSubset(0b01));
        assert_eq!(dj.len(), 3);
        assert!(dj.contains(&a.identity()));
        assert_eq!(
            a.classify(GenSubset::EMPTY, a.identity(), s1).unwrap(),
            DescentClass::SA
        );
        assert_eq!(a.classify(GenSubset(0b01), a.identity(), s1).unwrap(), DescentClass::WD);
        assert_eq!(
            a.classify(GenSubset(0b01), el(&a, "s2"), Generator(1)).unwrap(),
            DescentClass::SD
        );
        assert!(matches!(
            a.classify(GenSubset(0b01), el(&a, "s1"), s1),
            Err(Error::NotInDJ(_))
        ));
    }

    #[test]
    fn weights_and_signs() {
        let b2 = CoxeterSystem::new(Model::TypeB(2), &[1, 2]).unwrap();
        assert_eq!(b2.weight_of(b2.identity()), 0);
        assert_eq!(b2.epsilon(b2.identity()), 1);
        assert_eq!(b2.weight_of(b2.parse_element("s1.s2.s1.s2").unwrap()), 6);
        assert_eq!(b2.weight_of(b2.parse_element("s2.s1.s2").unwrap()), 5);
        let a = a2();
        let lens: Vec<usize> = a.enumerate().iter().map(|w| w.length()).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn parse_and_format() {
        let a = CoxeterSystem::equal_weights(Model::TypeA(3)).unwrap();
        let w = el(&a, "s2.s3.s1.s2");
        assert_eq!(a.format_element(w), "s2.s1.s3.s2");
        assert_eq!(el(&a, "2132"), w);
        assert_eq!(el(&a, "s1.s1"), a.identity());
        assert_eq!(a.format_element(a.identity()), "e");
        assert!(a.parse_element("s4").is_err());
        assert!(a.parse_element("").is_err());
        assert!(a.parse_element("x1").is_err());
        assert_eq!(a.parse_subset("").unwrap(), GenSubset::EMPTY);
        assert_eq!(a.parse_subset("s1,s3").unwrap(), GenSubset(0b101));
        assert_eq!(a.parse_subset("1 3").unwrap(), GenSubset(0b101));
    }

    #[test]
    fn bruhat_basics() {
        let a = a2();
        let (s1, s2) = (el(&a, "s1"), el(&a, "s2"));
        for w in a.enumerate() {
            assert!(a.bruhat_leq(w, w));
            assert!(a.bruhat_leq(a.identity(), w));
            assert!(a.bruhat_leq(w, a.longest_element()));
        }
        assert!(!a.bruhat_leq(s1, s2));
        assert!(a.bruhat_leq(s1, el(&a, "s2.s1")));
    }
}
