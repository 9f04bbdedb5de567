//! The weighted Hecke algebra in the `T`-basis and its parabolic module.
//!
//! [`ParabolicModule`] is the module with basis `Γ_y`, `y ∈ D_J`, where
//! `T_s` acts by
//!
//! * `q_s Γ_{sy} + (q_s - 1) Γ_y` when `sy < y`,
//! * `Γ_{sy}` when `sy > y` and `sy ∈ D_J`,
//! * `-Γ_y` when `sy > y` and `sy ∉ D_J`.
//!
//! Its semilinear involution is determined by `bar(Γ_e) = Γ_e` and
//! `bar(T_w Γ_y) = bar(T_w) bar(Γ_y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coxeter::{CoxeterSystem, DescentClass, Element, GenSubset, Generator};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::memo::Memo;

/// `q_s = q^{L(s)}`.
pub fn q_s(sys: &CoxeterSystem, s: Generator) -> LaurentPoly {
    LaurentPoly::q_pow(sys.weight(s))
}

/// `q_w = q^{L(w)}`.
pub fn q_w(sys: &CoxeterSystem, w: Element) -> LaurentPoly {
    LaurentPoly::q_pow(sys.weight_of(w))
}

/// Finitely supported map from elements to Laurent polynomials. Shared by
/// the Hecke algebra (`T`-basis) and the module (`Γ`-basis).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Combination {
    terms: BTreeMap<Element, LaurentPoly>,
}

impl Combination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: Element) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn term(w: Element, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &Combination, c: &LaurentPoly) {
        for (&w, a) in &other.terms {
            self.add_term(w, &(a * c));
        }
    }

    pub fn coeff(&self, w: Element) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Element, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &Combination) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::one());
        out
    }

    pub fn sub(&self, other: &Combination) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::from(-1));
        out
    }

    /// `{"basis": .., "terms": [{"elem": "s1.s2", "poly": [[v_exp, c], ..]}, ..]}`
    pub fn to_json(&self, sys: &CoxeterSystem, basis: &str) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&w, c)| serde_json::json!({"elem": sys.format_element(w), "poly": c.to_json()}))
            .collect();
        serde_json::json!({"basis": basis, "terms": terms})
    }
}

/// An element of the Hecke algebra in the `T`-basis.
pub type HeckeElement = Combination;

/// An element of the parabolic module in the `Γ`-basis.
pub type ModuleVector = Combination;

/// `T_s T_w`.
pub fn ts_times_tw(sys: &CoxeterSystem, s: Generator, w: Element) -> HeckeElement {
    let sw = sys.lmul(s, w);
    if sw.length() > w.length() {
        return HeckeElement::basis(sw);
    }
    let qs = q_s(sys, s);
    let mut out = HeckeElement::term(sw, qs.clone());
    out.add_term(w, &(qs - LaurentPoly::one()));
    out
}

/// `T_s h`.
pub fn ts_times(sys: &CoxeterSystem, s: Generator, h: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in h.terms() {
        out.add_scaled(&ts_times_tw(sys, s, w), c);
    }
    out
}

/// Product in the Hecke algebra.
pub fn hecke_mul(sys: &CoxeterSystem, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in a.terms() {
        let mut tw_b = b.clone();
        for s in sys.reduced_word(w).into_iter().rev() {
            tw_b = ts_times(sys, s, &tw_b);
        }
        out.add_scaled(&tw_b, c);
    }
    out
}

/// `bar(T_s) = q_s^{-1} T_s + (q_s^{-1} - 1) T_e`.
pub fn bar_ts(sys: &CoxeterSystem, s: Generator) -> HeckeElement {
    let inv = q_s(sys, s).bar();
    let mut out = HeckeElement::term(sys.rmul(sys.identity(), s), inv.clone());
    out.add_term(sys.identity(), &(inv - LaurentPoly::one()));
    out
}

/// `bar(T_w)` expanded in the `T`-basis, multiplying the images of the
/// letters of the ShortLex word right to left.
pub fn bar_t(sys: &CoxeterSystem, w: Element) -> HeckeElement {
    bar_t_word(sys, &sys.reduced_word(w))
}

/// `bar(T_{s_1}) ... bar(T_{s_k})` for an arbitrary reduced word.
pub fn bar_t_word(sys: &CoxeterSystem, word: &[Generator]) -> HeckeElement {
    let mut acc = HeckeElement::basis(sys.identity());
    for &s in word.iter().rev() {
        let inv = q_s(sys, s).bar();
        let mut next = ts_times(sys, s, &acc).scale(&inv);
        next.add_scaled(&acc, &(inv - LaurentPoly::one()));
        acc = next;
    }
    acc
}

/// Semilinear bar on a Hecke element.
pub fn bar_hecke(sys: &CoxeterSystem, h: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in h.terms() {
        out.add_scaled(&bar_t(sys, w), &c.bar());
    }
    out
}

/// The module with basis `{Γ_y : y ∈ D_J}` and its bar involution.
pub struct ParabolicModule<'a> {
    sys: &'a CoxeterSystem,
    j: GenSubset,
    dj: Vec<Element>,
    bar_cache: Memo<Element, ModuleVector>,
}

impl<'a> ParabolicModule<'a> {
    pub fn new(sys: &'a CoxeterSystem, j: GenSubset) -> Self {
        let j = GenSubset(j.0 & GenSubset::full(sys.rank()).0);
        ParabolicModule { sys, j, dj: sys.min_coset_reps(j), bar_cache: Memo::default() }
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn j(&self) -> GenSubset {
        self.j
    }

    /// `D_J` in element order.
    pub fn dj(&self) -> &[Element] {
        &self.dj
    }

    pub fn contains(&self, y: Element) -> bool {
        self.sys.in_dj(self.j, y)
    }

    pub fn check(&self, y: Element) -> Result<()> {
        if self.contains(y) {
            Ok(())
        } else {
            Err(Error::NotInDJ(self.sys.format_element(y)))
        }
    }

    /// `T_s Γ_y`.
    pub fn act_ts_basis(&self, s: Generator, y: Element) -> Result<ModuleVector> {
        let sy = self.sys.lmul(s, y);
        Ok(match self.sys.classify(self.j, y, s)? {
            DescentClass::SD => {
                let qs = q_s(self.sys, s);
                let mut out = ModuleVector::term(sy, qs.clone());
                out.add_term(y, &(qs - LaurentPoly::one()));
                out
            }
            DescentClass::SA => ModuleVector::basis(sy),
            DescentClass::WD => ModuleVector::term(y, LaurentPoly::from(-1)),
            DescentClass::WA => return Err(Error::WAUnreachable(self.sys.format_element(y))),
        })
    }

    /// `T_s v`.
    pub fn act_ts(&self, s: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (y, c) in v.terms() {
            out.add_scaled(&self.act_ts_basis(s, y)?, c);
        }
        Ok(out)
    }

    /// `h v`, acting by `T_w = T_{s_1} ... T_{s_k}` letter by letter.
    pub fn act_hecke(&self, h: &HeckeElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (w, c) in h.terms() {
            let mut tv = v.clone();
            for s in self.sys.reduced_word(w).into_iter().rev() {
                tv = self.act_ts(s, &tv)?;
            }
            out.add_scaled(&tv, c);
        }
        Ok(out)
    }

    /// `bar(Γ_y)` in the `Γ`-basis, memoized.
    pub fn bar_gamma(&self, y: Element) -> Result<Arc<ModuleVector>> {
        self.check(y)?;
        if let Some(v) = self.bar_cache.get(&y) {
            return Ok(v);
        }
        let value = match self.sys.left_descents(y).iter().next() {
            None => ModuleVector::basis(y),
            Some(s) => self.bar_gamma_step(y, s)?,
        };
        Ok(self.bar_cache.insert(y, value))
    }

    /// `bar(Γ_y)` computed through the left descent `s` of `y`:
    /// `Γ_y = T_s Γ_{sy}`, so `bar(Γ_y) = bar(T_s) bar(Γ_{sy})`.
    pub fn bar_gamma_via(&self, y: Element, s: Generator) -> Result<ModuleVector> {
        self.check(y)?;
        if !self.sys.left_descents(y).contains(s) {
            return Err(Error::Postcondition(format!(
                "{s} is not a left descent of {}",
                self.sys.format_element(y)
            )));
        }
        self.bar_gamma_step(y, s)
    }

    fn bar_gamma_step(&self, y: Element, s: Generator) -> Result<ModuleVector> {
        let sy = self.sys.lmul(s, y);
        let prev = self.bar_gamma(sy)?;
        let inv = q_s(self.sys, s).bar();
        let mut out = self.act_ts(s, &prev)?.scale(&inv);
        out.add_scaled(&prev, &(inv - LaurentPoly::one()));
        Ok(out)
    }

    /// Semilinear extension of `Γ_y -> bar(Γ_y)`.
    pub fn bar_vector(&self, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (y, c) in v.terms() {
            out.add_scaled(&*self.bar_gamma(y)?, &c.bar());
        }
        Ok(out)
    }
}
