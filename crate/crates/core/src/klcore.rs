//! R-polynomials, Kazhdan–Lusztig polynomials `P`, inverse polynomials `Q`
//! and the KL basis `C_y` of the parabolic module, by their defining
//! recursions.
//!
//! Conventions (`q_w = q^{L(w)}`, `ε_w = (-1)^{l(w)}`):
//!
//! * `bar(Γ_y) = Σ_x ε_x ε_y q_y^{-1} R_{x,y} Γ_x`
//! * `R~_{x,y} = ε_x ε_y q_x^{-1} q_y bar(R_{x,y})`
//! * `q_x^{-1} q_y bar(P_{x,y}) = Σ_{x≤t≤y} R_{x,t} P_{t,y}` with
//!   `P_{x,x} = 1` and `deg P_{x,y} < (L(y) - L(x)) / 2` for `x < y`
//! * `Σ_{x≤t≤y} ε_t ε_y Q_{x,t} P_{t,y} = δ_{x,y}`
//!
//! All sums run over the Bruhat interval inside `D_J`. Entries are computed
//! lazily per interval and memoized.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, Element, GenSubset};
use crate::error::{Error, Result};
use crate::heckemod::{ModuleVector, ParabolicModule};
use crate::laurent::{HalfExp, LaurentPoly};
use crate::memo::Memo;

/// Which family of polynomials a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    R,
    RTilde,
    P,
    Q,
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyKind::R => "R",
            PolyKind::RTilde => "Rtilde",
            PolyKind::P => "P",
            PolyKind::Q => "Q",
        })
    }
}

impl FromStr for PolyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(PolyKind::R),
            "Rtilde" | "rtilde" | "R~" => Ok(PolyKind::RTilde),
            "P" | "p" => Ok(PolyKind::P),
            "Q" | "q" => Ok(PolyKind::Q),
            _ => Err(Error::Parse(format!("unknown polynomial kind `{s}`"))),
        }
    }
}

/// Adds `delta` to one computed entry. Used to check that the verification
/// suites notice a corrupted coefficient.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub kind: PolyKind,
    pub x: Element,
    pub y: Element,
    pub delta: LaurentPoly,
}

/// Polynomial tables for one `(W, S, L, J)`.
pub struct KlContext<'a> {
    module: ParabolicModule<'a>,
    p_memo: Memo<(Element, Element), LaurentPoly>,
    q_memo: Memo<(Element, Element), LaurentPoly>,
    perturbation: Option<Perturbation>,
}

impl<'a> KlContext<'a> {
    pub fn new(sys: &'a CoxeterSystem, j: GenSubset) -> Self {
        KlContext {
            module: ParabolicModule::new(sys, j),
            p_memo: Memo::default(),
            q_memo: Memo::default(),
            perturbation: None,
        }
    }

    #[doc(hidden)]
    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = Some(p);
        self
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.module.system()
    }

    pub fn module(&self) -> &ParabolicModule<'a> {
        &self.module
    }

    pub fn j(&self) -> GenSubset {
        self.module.j()
    }

    pub fn dj(&self) -> &[Element] {
        self.module.dj()
    }

    fn perturb(&self, kind: PolyKind, x: Element, y: Element, value: LaurentPoly) -> LaurentPoly {
        match &self.perturbation {
            Some(p) if p.kind == kind && p.x == x && p.y == y => value + &p.delta,
            _ => value,
        }
    }

    /// `L(y) - L(x)`, which is also the `v`-exponent of the degree bound
    /// `(L(y) - L(x)) / 2`.
    pub fn weight_gap(&self, x: Element, y: Element) -> i64 {
        let sys = self.system();
        sys.weight_of(y) - sys.weight_of(x)
    }

    /// `ε_x ε_y`.
    pub fn sign(&self, x: Element, y: Element) -> i32 {
        self.system().epsilon(x) * self.system().epsilon(y)
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.system().bruhat_leq(x, y)
    }

    /// `{t ∈ D_J : x ≤ t ≤ y}` in element order.
    pub fn interval(&self, x: Element, y: Element) -> Vec<Element> {
        if !self.leq(x, y) {
            return Vec::new();
        }
        self.dj()
            .iter()
            .copied()
            .filter(|&t| t.length() >= x.length() && t.length() <= y.length())
            .filter(|&t| self.leq(x, t) && self.leq(t, y))
            .collect()
    }

    fn check_pair(&self, x: Element, y: Element) -> Result<()> {
        self.module.check(x)?;
        self.module.check(y)
    }

    /// Errors unless every generator has positive weight.
    pub fn require_positive_weights(&self) -> Result<()> {
        let sys = self.system();
        match sys.generators().find(|&s| sys.weight(s) <= 0) {
            Some(s) => Err(Error::ZeroWeight(s.to_string())),
            None => Ok(()),
        }
    }

    pub fn bar_gamma(&self, y: Element) -> Result<Arc<ModuleVector>> {
        self.module.bar_gamma(y)
    }

    /// `R_{x,y} = ε_x ε_y q_y [Γ_x] bar(Γ_y)`.
    pub fn r_poly(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.check_pair(x, y)?;
        let coeff = self.bar_gamma(y)?.coeff(x);
        let value = coeff.shift_q(self.system().weight_of(y)).signed(self.sign(x, y));
        Ok(self.perturb(PolyKind::R, x, y, value))
    }

    /// `R~_{x,y} = ε_x ε_y q_x^{-1} q_y bar(R_{x,y})`.
    pub fn r_tilde(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        let r = self.r_poly(x, y)?;
        let value = r.bar().shift_q(self.weight_gap(x, y)).signed(self.sign(x, y));
        Ok(self.perturb(PolyKind::RTilde, x, y, value))
    }

    /// The weighted parabolic Kazhdan–Lusztig polynomial `P_{x,y}`.
    ///
    /// Computed by descending induction on `x` inside `[x, y]`: with
    /// `F = Σ_{x<t≤y} R_{x,t} P_{t,y}`, the defining identity reads
    /// `q_x^{-1} q_y bar(P) - P = F`, and the degree bound separates the two
    /// sides, so `P = -L_{(L(y)-L(x))/2}(F)`. Each entry is re-checked against
    /// the full identity and the degree bound before it is stored.
    pub fn p_poly(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.check_pair(x, y)?;
        self.require_positive_weights()?;
        if !self.leq(x, y) {
            return Ok(LaurentPoly::zero());
        }
        if let Some(p) = self.p_memo.get(&(x, y)) {
            return Ok((*p).clone());
        }
        let interval = self.interval(x, y);
        for &t in interval.iter().rev() {
            if self.p_memo.get(&(t, y)).is_some() {
                continue;
            }
            let value = self.p_entry(t, y, &interval)?;
            self.p_memo.insert((t, y), self.perturb(PolyKind::P, t, y, value));
        }
        Ok((*self.p_memo.get(&(x, y)).expect("filled above")).clone())
    }

    fn p_entry(&self, x: Element, y: Element, interval: &[Element]) -> Result<LaurentPoly> {
        if x == y {
            return Ok(LaurentPoly::one());
        }
        let mut f = LaurentPoly::zero();
        for &t in interval {
            if t != x && t.length() > x.length() && self.leq(x, t) {
                let p = self.p_memo.get(&(t, y)).expect("descending order");
                f += self.r_poly(x, t)? * &*p;
            }
        }
        let gap = self.weight_gap(x, y);
        let p = -f.trunc_lower(HalfExp(gap));

        let lhs = p.bar().shift_q(gap);
        let rhs = &f + &p;
        if lhs != rhs {
            return Err(self.postcondition("P recursion identity", x, y, &p));
        }
        if p.deg().is_some_and(|d| d.0 >= gap) {
            return Err(self.postcondition("P degree bound", x, y, &p));
        }
        Ok(p)
    }

    fn postcondition(&self, what: &str, x: Element, y: Element, value: &LaurentPoly) -> Error {
        let sys = self.system();
        Error::Postcondition(format!(
            "{what} fails at ({}, {}) in {} J={}: {value}",
            sys.format_element(x),
            sys.format_element(y),
            sys.name(),
            self.j()
        ))
    }

    /// The inverse polynomial `Q_{x,y}`, by triangular inversion of the
    /// `P`-matrix on `[x, y]`, checked against
    /// `q_x^{-1} q_y bar(Q_{x,y}) = Σ_{x≤t≤y} Q_{x,t} R~_{t,y}`.
    pub fn q_poly(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.check_pair(x, y)?;
        self.require_positive_weights()?;
        if !self.leq(x, y) {
            return Ok(LaurentPoly::zero());
        }
        if let Some(q) = self.q_memo.get(&(x, y)) {
            return Ok((*q).clone());
        }
        let interval = self.interval(x, y);
        for &t in &interval {
            if self.q_memo.get(&(x, t)).is_some() {
                continue;
            }
            let value = self.q_entry(x, t, &interval)?;
            self.q_memo.insert((x, t), self.perturb(PolyKind::Q, x, t, value));
        }
        Ok((*self.q_memo.get(&(x, y)).expect("filled above")).clone())
    }

    fn q_entry(&self, x: Element, y: Element, interval: &[Element]) -> Result<LaurentPoly> {
        if x == y {
            return Ok(LaurentPoly::one());
        }
        let below: Vec<Element> = interval
            .iter()
            .copied()
            .filter(|&t| t != y && t.length() < y.length() && self.leq(t, y))
            .collect();
        let mut acc = LaurentPoly::zero();
        for &t in &below {
            let q = self.q_memo.get(&(x, t)).expect("ascending order");
            acc += (&*q * &self.p_poly(t, y)?).signed(self.sign(t, y));
        }
        let q = -acc;

        let mut rhs = LaurentPoly::zero();
        for &t in &below {
            let qt = self.q_memo.get(&(x, t)).expect("ascending order");
            rhs += &*qt * &self.r_tilde(t, y)?;
        }
        rhs += &q;
        if q.bar().shift_q(self.weight_gap(x, y)) != rhs {
            return Err(self.postcondition("Q dual identity", x, y, &q));
        }
        Ok(q)
    }

    /// `C_y = Σ_{x≤y} ε_x ε_y q_x^{-1} q_y^{1/2} bar(P_{x,y}) Γ_x`.
    pub fn c_basis(&self, y: Element) -> Result<ModuleVector> {
        self.module.check(y)?;
        self.require_positive_weights()?;
        let sys = self.system();
        let mut out = ModuleVector::zero();
        for x in self.interval(sys.identity(), y) {
            let coeff = self
                .p_poly(x, y)?
                .bar()
                .shift(HalfExp(sys.weight_of(y) - 2 * sys.weight_of(x)))
                .signed(self.sign(x, y));
            out.add_term(x, &coeff);
        }
        Ok(out)
    }

    pub fn poly(&self, kind: PolyKind, x: Element, y: Element) -> Result<LaurentPoly> {
        match kind {
            PolyKind::R => self.r_poly(x, y),
            PolyKind::RTilde => self.r_tilde(x, y),
            PolyKind::P => self.p_poly(x, y),
            PolyKind::Q => self.q_poly(x, y),
        }
    }

    /// All nonzero entries of one family over `D_J × D_J`.
    pub fn table(&self, kind: PolyKind) -> Result<PolyTable> {
        let mut entries = BTreeMap::new();
        for &y in self.dj() {
            let candidates: Vec<Element> = match kind {
                // R is read off bar(Γ_y) directly, so its support is not assumed
                PolyKind::R | PolyKind::RTilde => self.bar_gamma(y)?.support().collect(),
                PolyKind::P | PolyKind::Q => self.interval(self.system().identity(), y),
            };
            for x in candidates {
                let value = self.poly(kind, x, y)?;
                if !value.is_zero() {
                    entries.insert((y, x), value);
                }
            }
        }
        Ok(PolyTable { kind, j: self.j(), entries })
    }

    /// Checks `Σ_{x≤t≤y} ε_t ε_y R_{x,t} R~_{t,y} = δ_{x,y}` and
    /// `Σ_{x<t≤y} ε_x ε_t R~_{x,t} R_{t,y} = δ_{x,y} - R_{x,y}` on all pairs.
    pub fn verify_r_identities(&self) -> IdentityReport {
        let mut report = IdentityReport::default();
        let sys = self.system();
        for &y in self.dj() {
            for &x in self.dj() {
                report.checked += 1;
                let outcome = (|| -> Result<Option<&'static str>> {
                    let interval = self.interval(x, y);
                    let delta = if x == y { LaurentPoly::one() } else { LaurentPoly::zero() };
                    let mut first = LaurentPoly::zero();
                    let mut second = LaurentPoly::zero();
                    for &t in &interval {
                        first += (self.r_poly(x, t)? * self.r_tilde(t, y)?).signed(self.sign(t, y));
                        if t != x {
                            second +=
                                (self.r_tilde(x, t)? * self.r_poly(t, y)?).signed(self.sign(x, t));
                        }
                    }
                    if first != delta {
                        return Ok(Some("R·R~ inversion"));
                    }
                    if second != &delta - &self.r_poly(x, y)? {
                        return Ok(Some("R~·R complement"));
                    }
                    Ok(None)
                })();
                let failure = match outcome {
                    Ok(None) => continue,
                    Ok(Some(what)) => what.to_string(),
                    Err(e) => e.to_string(),
                };
                report.fail(format!(
                    "{failure} at ({}, {})",
                    sys.format_element(x),
                    sys.format_element(y)
                ));
            }
        }
        report
    }
}

/// Outcome of an identity sweep; keeps the first counterexample.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

/// Nonzero entries of one polynomial family, keyed `(y, x)` so that
/// iteration follows the export row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTable {
    pub kind: PolyKind,
    pub j: GenSubset,
    pub entries: BTreeMap<(Element, Element), LaurentPoly>,
}

impl PolyTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows `(x, y, poly)` in export order.
    pub fn rows(&self) -> impl Iterator<Item = (Element, Element, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(&(y, x), p)| (x, y, p))
    }

    /// CSV with header `x,y,kind,poly`.
    pub fn to_csv(&self, sys: &CoxeterSystem) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(["x", "y", "kind", "poly"]).expect("in-memory write");
        for (x, y, p) in self.rows() {
            out.write_record([
                sys.format_element(x),
                sys.format_element(y),
                self.kind.to_string(),
                p.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 records")
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .rows()
            .map(|(x, y, p)| {
                serde_json::json!({
                    "x": sys.format_element(x),
                    "y": sys.format_element(y),
                    "poly": p.to_json(),
                    "text": p.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "kind": self.kind.to_string(),
            "system": sys.name(),
            "J": self.j.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "entries": entries,
        })
    }

    /// One row per line: `x  y  poly`.
    pub fn to_text(&self, sys: &CoxeterSystem) -> String {
        let mut out = String::new();
        for (x, y, p) in self.rows() {
            out.push_str(&format!("{}\t{}\t{}\n", sys.format_element(x), sys.format_element(y), p));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Model;

    fn q(k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn r_examples_a2() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY);
        let s1 = a2.parse_element("s1").unwrap();
        let s2 = a2.parse_element("s2").unwrap();
        for &w in ctx.dj() {
            assert_eq!(ctx.r_poly(w, w).unwrap(), one());
            assert_eq!(ctx.r_tilde(w, w).unwrap(), one());
        }
        assert!(ctx.r_poly(s1, s2).unwrap().is_zero());
        assert_eq!(ctx.r_poly(a2.identity(), s1).unwrap(), q(1) - one());
        assert_eq!(ctx.r_tilde(a2.identity(), s1).unwrap(), q(1) - one());
        // classical R_{e,w0} = (q-1)^3 + q(q-1)
        let r = ctx.r_poly(a2.identity(), a2.longest_element()).unwrap();
        let qm1 = q(1) - one();
        assert_eq!(r, &(&qm1 * &qm1) * &qm1 + q(1) * qm1);
    }

    #[test]
    fn parabolic_r_differs_from_r_tilde() {
        // A2, J={s1}: D_J = {e, s2, s1s2}. Hand expansion of bar(Γ_{s1 s2})
        // gives R = q^2 - q while R~ = 1 - q.
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let ctx = KlContext::new(&a2, GenSubset(0b01));
        let y = a2.parse_element("s1.s2").unwrap();
        let e = a2.identity();
        assert_eq!(ctx.r_poly(e, y).unwrap(), q(2) - q(1));
        assert_eq!(ctx.r_tilde(e, y).unwrap(), one() - q(1));
        assert!(matches!(ctx.r_poly(e, a2.parse_element("s1").unwrap()), Err(Error::NotInDJ(_))));
    }

    #[test]
    fn p_examples() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY);
        for &y in ctx.dj() {
            for &x in ctx.dj() {
                let p = ctx.p_poly(x, y).unwrap();
                if a2.bruhat_leq(x, y) {
                    assert_eq!(p, one());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        let a3 = CoxeterSystem::equal_weights(Model::TypeA(3)).unwrap();
        let ctx = KlContext::new(&a3, GenSubset::EMPTY);
        let x = a3.parse_element("s2").unwrap();
        let y = a3.parse_element("s2.s1.s3.s2").unwrap();
        assert_eq!(ctx.p_poly(x, y).unwrap(), one() + q(1));
        assert_eq!(ctx.p_poly(a3.identity(), y).unwrap(), one() + q(1));
    }

    #[test]
    fn zero_weight_is_rejected() {
        let a2 = CoxeterSystem::new(Model::TypeA(2), &[0, 0]).unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY);
        let e = a2.identity();
        assert!(ctx.r_poly(e, a2.longest_element()).is_ok());
        assert!(matches!(ctx.p_poly(e, e), Err(Error::ZeroWeight(_))));
        assert!(matches!(ctx.q_poly(e, e), Err(Error::ZeroWeight(_))));
        assert!(matches!(ctx.c_basis(e), Err(Error::ZeroWeight(_))));
    }

    #[test]
    fn q_examples() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY);
        let s1 = a2.parse_element("s1").unwrap();
        let s2 = a2.parse_element("s2").unwrap();
        assert_eq!(ctx.q_poly(s1, s1).unwrap(), one());
        assert!(ctx.q_poly(s1, s2).unwrap().is_zero());
        for &y in ctx.dj() {
            for &x in ctx.dj() {
                if a2.bruhat_leq(x, y) {
                    assert_eq!(ctx.q_poly(x, y).unwrap(), one());
                }
            }
        }
    }

    #[test]
    fn c_basis_examples() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY);
        let e = a2.identity();
        let s1 = a2.parse_element("s1").unwrap();
        assert_eq!(ctx.c_basis(e).unwrap(), ModuleVector::basis(e));
        let mut expected = ModuleVector::term(s1, LaurentPoly::mono(HalfExp(-1), 1));
        expected.add_term(e, &LaurentPoly::mono(HalfExp(1), -1));
        let c = ctx.c_basis(s1).unwrap();
        assert_eq!(c, expected);
        assert_eq!(ctx.module().bar_vector(&c).unwrap(), c);

        let b2 = CoxeterSystem::new(Model::TypeB(2), &[1, 2]).unwrap();
        for j in GenSubset::all(2) {
            let ctx = KlContext::new(&b2, j);
            for &y in ctx.dj() {
                let c = ctx.c_basis(y).unwrap();
                assert_eq!(ctx.module().bar_vector(&c).unwrap(), c);
            }
        }
    }

    #[test]
    fn r_identity_sweeps() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        assert!(KlContext::new(&a2, GenSubset::EMPTY).verify_r_identities().passed());
        let b2 = CoxeterSystem::new(Model::TypeB(2), &[1, 2]).unwrap();
        let report = KlContext::new(&b2, GenSubset(0b10)).verify_r_identities();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checked, 16);
    }

    #[test]
    fn perturbed_r_is_caught() {
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let e = a2.identity();
        let s1 = a2.parse_element("s1").unwrap();
        let ctx = KlContext::new(&a2, GenSubset::EMPTY).with_perturbation(Perturbation {
            kind: PolyKind::R,
            x: e,
            y: s1,
            delta: q(1),
        });
        assert!(!ctx.verify_r_identities().passed());
    }

    #[test]
    fn table_shapes() {
        let a1 = CoxeterSystem::equal_weights(Model::TypeA(1)).unwrap();
        let t = KlContext::new(&a1, GenSubset::EMPTY).table(PolyKind::P).unwrap();
        assert_eq!(t.len(), 3);
        let a2 = CoxeterSystem::equal_weights(Model::TypeA(2)).unwrap();
        let t = KlContext::new(&a2, GenSubset(0b01)).table(PolyKind::R).unwrap();
        assert_eq!(t.len(), 6);
        let csv = t.to_csv(&a2);
        assert!(csv.starts_with("x,y,kind,poly\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}
