//! Chain and multichain formulas for `P` and `Q`.
//!
//! A multichain `φ: x = x_0 ≤ x_1 ≤ … ≤ x_{r+1} = y` in `D_J` carries
//!
//! * `𝓡_φ = q_x^{-1} q_y bar(R_{x,y})` for `r = 0`, and otherwise
//!   `𝓡_{x,x_1} · U_{(L(y)-L(x_1))/2}(q_{x_1}^{-1} q_y bar(𝓡_{φ'}))` where
//!   `φ'` drops the first entry;
//! * `𝓡*_φ`, the mirror recursion that drops the last entry:
//!   `U_{(L(x_r)-L(x))/2}(q_x^{-1} q_{x_r} bar(𝓡*_{φ'})) · 𝓡*_{x_r,y}`.
//!
//! The `~` variants use `R~` in the one-step base case. Then
//! `P_{x,y} = Σ_φ 𝓡_φ` and `Q_{x,y} = Σ_φ 𝓡~*_φ` over multichains, or the
//! lower truncation of the same sums over strict chains.
//!
//! Only strict chains and strict chains with one repeated end can
//! contribute: a repeat anywhere else kills the truncation. `P` sums use the
//! repeated-initial family and `Q` sums the repeated-final family.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::klcore::KlContext;
use crate::laurent::{HalfExp, LaurentPoly};
use crate::memo::Memo;

/// A weakly increasing sequence `x_0 ≤ … ≤ x_{r+1}` in `D_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multichain {
    pub entries: Vec<Element>,
    pub strict: bool,
}

impl Multichain {
    /// Builds a multichain without checking the order; `strict` is derived.
    pub fn new(entries: Vec<Element>) -> Self {
        assert!(entries.len() >= 2, "a multichain has at least two entries");
        let strict = entries.windows(2).all(|w| w[0] != w[1]);
        Multichain { entries, strict }
    }

    /// Number of steps, `r + 1`.
    pub fn steps(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn initial(&self) -> Element {
        self.entries[0]
    }

    pub fn last(&self) -> Element {
        *self.entries.last().expect("nonempty")
    }

    pub fn format(&self, sys: &CoxeterSystem) -> Vec<String> {
        self.entries.iter().map(|&w| sys.format_element(w)).collect()
    }
}

/// Which R-family feeds the one-step base case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    R,
    RTilde,
}

/// Which multichains a sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Strict chains only.
    Strict,
    /// Strict chains and their copies with the initial entry doubled.
    RepeatInitial,
    /// Strict chains and their copies with the final entry doubled.
    RepeatFinal,
}

/// An exponent sequence `(a_0, …, a_{r+1})` in `v`-units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSequence {
    pub values: Vec<HalfExp>,
}

/// Evaluates chain polynomials over one [`KlContext`].
pub struct ChainEngine<'c, 'a> {
    ctx: &'c KlContext<'a>,
    forward: Memo<(Base, Vec<Element>), LaurentPoly>,
    backward: Memo<(Base, Vec<Element>), LaurentPoly>,
    forward_sums: Memo<(Base, Element, Element), LaurentPoly>,
    backward_sums: Memo<(Base, Element, Element), LaurentPoly>,
}

impl<'c, 'a> ChainEngine<'c, 'a> {
    pub fn new(ctx: &'c KlContext<'a>) -> Self {
        ChainEngine {
            ctx,
            forward: Memo::default(),
            backward: Memo::default(),
            forward_sums: Memo::default(),
            backward_sums: Memo::default(),
        }
    }

    pub fn context(&self) -> &'c KlContext<'a> {
        self.ctx
    }

    fn system(&self) -> &'a CoxeterSystem {
        self.ctx.system()
    }

    fn comparable(&self, x: Element, y: Element) -> Result<()> {
        self.ctx.module().check(x)?;
        self.ctx.module().check(y)?;
        if self.ctx.leq(x, y) {
            Ok(())
        } else {
            let sys = self.system();
            Err(Error::NotComparable { x: sys.format_element(x), y: sys.format_element(y) })
        }
    }

    /// Errors unless every entry lies in `D_J` and the sequence is weakly
    /// increasing.
    pub fn validate(&self, phi: &Multichain) -> Result<()> {
        phi.entries.windows(2).try_for_each(|w| self.comparable(w[0], w[1]))
    }

    /// `q_x^{-1} q_y bar(R_{x,y})` (or with `R~`).
    pub fn base(&self, base: Base, x: Element, y: Element) -> Result<LaurentPoly> {
        let r = match base {
            Base::R => self.ctx.r_poly(x, y)?,
            Base::RTilde => self.ctx.r_tilde(x, y)?,
        };
        Ok(r.bar().shift_q(self.ctx.weight_gap(x, y)))
    }

    /// `U_{(L(b)-L(a))/2}(q_a^{-1} q_b bar(f))`.
    fn twist(&self, a: Element, b: Element, f: &LaurentPoly) -> LaurentPoly {
        let gap = self.ctx.weight_gap(a, b);
        f.bar().shift_q(gap).trunc_upper(HalfExp(gap))
    }

    fn forward_value(&self, base: Base, entries: &[Element]) -> Result<Arc<LaurentPoly>> {
        if entries.len() == 2 {
            return Ok(Arc::new(self.base(base, entries[0], entries[1])?));
        }
        self.forward.get_or_try_insert(&(base, entries.to_vec()), || {
            let tail = self.forward_value(base, &entries[1..])?;
            let y = *entries.last().expect("nonempty");
            Ok(self.base(base, entries[0], entries[1])? * self.twist(entries[1], y, &tail))
        })
    }

    fn backward_value(&self, base: Base, entries: &[Element]) -> Result<Arc<LaurentPoly>> {
        let n = entries.len();
        if n == 2 {
            return Ok(Arc::new(self.base(base, entries[0], entries[1])?));
        }
        self.backward.get_or_try_insert(&(base, entries.to_vec()), || {
            let head = self.backward_value(base, &entries[..n - 1])?;
            let xr = entries[n - 2];
            Ok(self.twist(entries[0], xr, &head) * self.base(base, xr, entries[n - 1])?)
        })
    }

    /// `𝓡_φ`.
    pub fn script_r(&self, phi: &Multichain) -> Result<LaurentPoly> {
        self.validate(phi)?;
        Ok((*self.forward_value(Base::R, &phi.entries)?).clone())
    }

    /// `𝓡~_φ`.
    pub fn script_r_tilde(&self, phi: &Multichain) -> Result<LaurentPoly> {
        self.validate(phi)?;
        Ok((*self.forward_value(Base::RTilde, &phi.entries)?).clone())
    }

    /// `𝓡*_φ`.
    pub fn script_r_star(&self, phi: &Multichain) -> Result<LaurentPoly> {
        self.validate(phi)?;
        Ok((*self.backward_value(Base::R, &phi.entries)?).clone())
    }

    /// `𝓡~*_φ`.
    pub fn script_r_tilde_star(&self, phi: &Multichain) -> Result<LaurentPoly> {
        self.validate(phi)?;
        Ok((*self.backward_value(Base::RTilde, &phi.entries)?).clone())
    }

    /// Strict chains from `x` to `y` with at most `max_steps` steps, in
    /// lexicographic order. For `x = y` the only chain is `(x, x)`.
    pub fn enum_chains(
        &self,
        x: Element,
        y: Element,
        max_steps: usize,
    ) -> Result<impl Iterator<Item = Multichain>> {
        self.comparable(x, y)?;
        let mut out = Vec::new();
        if x == y {
            if max_steps >= 1 {
                out.push(Multichain::new(vec![x, x]));
            }
            return Ok(out.into_iter());
        }
        let interval = self.ctx.interval(x, y);
        let mut path = vec![x];
        self.strict_dfs(&interval, y, max_steps, &mut path, &mut out);
        Ok(out.into_iter())
    }

    fn strict_dfs(
        &self,
        interval: &[Element],
        y: Element,
        max_steps: usize,
        path: &mut Vec<Element>,
        out: &mut Vec<Multichain>,
    ) {
        let t = *path.last().expect("nonempty");
        if path.len() > max_steps {
            return;
        }
        for &u in interval {
            if u.length() <= t.length() || !self.ctx.leq(t, u) {
                continue;
            }
            path.push(u);
            if u == y {
                out.push(Multichain::new(path.clone()));
            } else {
                self.strict_dfs(interval, y, max_steps, path, out);
            }
            path.pop();
        }
    }

    /// Every weakly increasing multichain from `x` to `y` with at most
    /// `max_steps` steps, in lexicographic order.
    pub fn enum_multichains(
        &self,
        x: Element,
        y: Element,
        max_steps: usize,
    ) -> Result<impl Iterator<Item = Multichain>> {
        self.comparable(x, y)?;
        let interval = self.ctx.interval(x, y);
        let mut out = Vec::new();
        let mut path = vec![x];
        self.weak_dfs(&interval, y, max_steps, &mut path, &mut out);
        Ok(out.into_iter())
    }

    fn weak_dfs(
        &self,
        interval: &[Element],
        y: Element,
        max_steps: usize,
        path: &mut Vec<Element>,
        out: &mut Vec<Multichain>,
    ) {
        if path.len() > max_steps {
            return;
        }
        let t = *path.last().expect("nonempty");
        for &u in interval {
            if u.length() < t.length() || !self.ctx.leq(t, u) {
                continue;
            }
            path.push(u);
            if u == y {
                out.push(Multichain::new(path.clone()));
            }
            self.weak_dfs(interval, y, max_steps, path, out);
            path.pop();
        }
    }

    /// The chains a sum over `family` runs over, with at most
    /// `ℓ(y) - ℓ(x) + 1` steps.
    pub fn family(&self, family: Family, x: Element, y: Element) -> Result<Vec<Multichain>> {
        let bound = y.length() - x.length() + 1;
        let strict: Vec<Multichain> = self.enum_chains(x, y, bound)?.collect();
        let mut out = strict.clone();
        match family {
            Family::Strict => {}
            Family::RepeatInitial => out.extend(strict.into_iter().map(|c| {
                let mut e = c.entries;
                e.insert(0, x);
                Multichain::new(e)
            })),
            Family::RepeatFinal => out.extend(strict.into_iter().map(|c| {
                let mut e = c.entries;
                e.push(y);
                Multichain::new(e)
            })),
        }
        Ok(out)
    }

    /// `Σ 𝓡_φ` over strict chains from `t` to `y`.
    ///
    /// `𝓡_φ` is linear in the tail value, so the sum over all chains
    /// starting at `t` factors through the sums starting at each `x_1`.
    fn forward_sum(&self, base: Base, t: Element, y: Element) -> Result<Arc<LaurentPoly>> {
        self.forward_sums.get_or_try_insert(&(base, t, y), || {
            let mut acc = self.base(base, t, y)?;
            for u in self.ctx.interval(t, y) {
                if u == t || u == y {
                    continue;
                }
                let tail = self.forward_sum(base, u, y)?;
                acc += self.base(base, t, u)? * self.twist(u, y, &tail);
            }
            Ok(acc)
        })
    }

    /// `Σ 𝓡*_φ` over strict chains from `x` to `t`.
    fn backward_sum(&self, base: Base, x: Element, t: Element) -> Result<Arc<LaurentPoly>> {
        self.backward_sums.get_or_try_insert(&(base, x, t), || {
            let mut acc = self.base(base, x, t)?;
            for u in self.ctx.interval(x, t) {
                if u == x || u == t {
                    continue;
                }
                let head = self.backward_sum(base, x, u)?;
                acc += self.twist(x, u, &head) * self.base(base, u, t)?;
            }
            Ok(acc)
        })
    }

    fn prepare(&self, x: Element, y: Element) -> Result<()> {
        self.comparable(x, y)?;
        self.ctx.require_positive_weights()
    }

    /// `P_{x,y} = L_{(L(y)-L(x))/2}(Σ_{strict φ} 𝓡_φ)` for `x < y`; `1` on the
    /// diagonal.
    pub fn p_via_chains(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.prepare(x, y)?;
        if x == y {
            return Ok(LaurentPoly::one());
        }
        let sum = self.forward_sum(Base::R, x, y)?;
        Ok(sum.trunc_lower(HalfExp(self.ctx.weight_gap(x, y))))
    }

    /// `P_{x,y} = Σ_φ 𝓡_φ` over strict chains and their doubled-initial
    /// copies. The doubled copy `(x, x, x_1, …)` has value
    /// `U_{(L(y)-L(x))/2}(q_x^{-1} q_y bar(𝓡_{x,x_1,…}))`.
    pub fn p_via_multichains(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.prepare(x, y)?;
        let sum = self.forward_sum(Base::R, x, y)?;
        Ok(&*sum + &self.twist(x, y, &sum))
    }

    /// `Q_{x,y} = L_{(L(y)-L(x))/2}(Σ_{strict φ} 𝓡~*_φ)` for `x < y`.
    pub fn q_via_chains(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.prepare(x, y)?;
        if x == y {
            return Ok(LaurentPoly::one());
        }
        let sum = self.backward_sum(Base::RTilde, x, y)?;
        Ok(sum.trunc_lower(HalfExp(self.ctx.weight_gap(x, y))))
    }

    /// `Q_{x,y} = Σ_φ 𝓡~*_φ` over strict chains and their doubled-final
    /// copies.
    pub fn q_via_multichains(&self, x: Element, y: Element) -> Result<LaurentPoly> {
        self.prepare(x, y)?;
        let sum = self.backward_sum(Base::RTilde, x, y)?;
        Ok(&*sum + &self.twist(x, y, &sum))
    }

    /// `Σ_φ` of one chain polynomial over explicitly listed chains.
    pub fn sum_over(
        &self,
        chains: &[Multichain],
        eval: impl Fn(&Self, &Multichain) -> Result<LaurentPoly>,
    ) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for phi in chains {
            acc += eval(self, phi)?;
        }
        Ok(acc)
    }

    /// `v`-step of the exponent lattice: twice the gcd of the weights.
    fn lattice_step(&self) -> i64 {
        2 * self.system().weights().iter().fold(0i64, |g, &w| g.gcd(&w))
    }

    /// `D_i = L(y) - L(x_i)` in `v`-units along `φ`.
    fn forward_levels(&self, phi: &Multichain) -> Vec<i64> {
        let y = phi.last();
        phi.entries.iter().map(|&t| 2 * self.ctx.weight_gap(t, y)).collect()
    }

    /// `D*_i = L(x_{r+1-i}) - L(x)` in `v`-units along `φ` read backwards.
    fn backward_levels(&self, phi: &Multichain) -> Vec<i64> {
        let x = phi.initial();
        phi.entries.iter().rev().map(|&t| 2 * self.ctx.weight_gap(x, t)).collect()
    }

    /// The sequences `F_γ(φ)`, in descending lexicographic order.
    pub fn f_gamma(&self, phi: &Multichain, gamma: HalfExp) -> Vec<CoeffSequence> {
        sequences(&self.forward_levels(phi), gamma.0, self.lattice_step())
    }

    /// The sequences `F*_γ(φ)`, in descending lexicographic order.
    pub fn f_star_gamma(&self, phi: &Multichain, gamma: HalfExp) -> Vec<CoeffSequence> {
        sequences(&self.backward_levels(phi), gamma.0, self.lattice_step())
    }

    /// `[q^γ] 𝓡_φ` as a sum over `F_γ(φ)` of products of R-coefficients.
    pub fn coeff_script_r(&self, phi: &Multichain, gamma: HalfExp) -> Result<BigInt> {
        self.validate(phi)?;
        let factors = phi
            .entries
            .windows(2)
            .map(|w| self.ctx.r_poly(w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        let levels = self.forward_levels(phi);
        Ok(sequence_sum(&factors, &levels, &self.f_gamma(phi, gamma)))
    }

    /// `[q^γ] 𝓡~*_φ` as a sum over `F*_γ(φ)` of products of
    /// R~-coefficients taken from the top of the chain down.
    pub fn coeff_script_r_tilde_star(&self, phi: &Multichain, gamma: HalfExp) -> Result<BigInt> {
        self.validate(phi)?;
        let mut factors = phi
            .entries
            .windows(2)
            .map(|w| self.ctx.r_tilde(w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        factors.reverse();
        let levels = self.backward_levels(phi);
        Ok(sequence_sum(&factors, &levels, &self.f_star_gamma(phi, gamma)))
    }

    /// `[q^γ] P_{x,y}` from R-coefficients alone.
    pub fn coeff_p(&self, x: Element, y: Element, gamma: HalfExp) -> Result<BigInt> {
        self.prepare(x, y)?;
        let mut acc = BigInt::zero();
        for phi in self.family(Family::RepeatInitial, x, y)? {
            acc += self.coeff_script_r(&phi, gamma)?;
        }
        Ok(acc)
    }

    /// `[q^γ] Q_{x,y}` from R~-coefficients alone.
    pub fn coeff_q(&self, x: Element, y: Element, gamma: HalfExp) -> Result<BigInt> {
        self.prepare(x, y)?;
        let mut acc = BigInt::zero();
        for phi in self.family(Family::RepeatFinal, x, y)? {
            acc += self.coeff_script_r_tilde_star(&phi, gamma)?;
        }
        Ok(acc)
    }
}

/// All `(a_0, …, a_{r+1})` with `a_0 = D_0 - γ`, `a_{r+1} = 0`, `a_i` on the
/// lattice and, for `1 ≤ i ≤ r`, `a_i > D_i - a_i ≥ a_{i+1}`, together with
/// `a_1 ≤ γ`.
fn sequences(levels: &[i64], gamma: i64, step: i64) -> Vec<CoeffSequence> {
    let r = levels.len() - 2;
    let mut out = Vec::new();
    let mut values = vec![levels[0] - gamma];
    extend_sequences(levels, r, step, &mut values, &mut out);
    out
}

fn extend_sequences(
    levels: &[i64],
    r: usize,
    step: i64,
    values: &mut Vec<i64>,
    out: &mut Vec<CoeffSequence>,
) {
    let i = values.len();
    let prev = values[i - 1];
    let cap = levels[i - 1] - prev;
    if i == r + 1 {
        if cap >= 0 {
            values.push(0);
            out.push(CoeffSequence { values: values.iter().map(|&a| HalfExp(a)).collect() });
            values.pop();
        }
        return;
    }
    let mut a = cap - cap.rem_euclid(step);
    while 2 * a > levels[i] {
        values.push(a);
        extend_sequences(levels, r, step, values, out);
        values.pop();
        a -= step;
    }
}

/// `Σ_S Π_i [v^{a_i + a_{i+1} - D_{i+1}}] F_i`.
fn sequence_sum(factors: &[LaurentPoly], levels: &[i64], seqs: &[CoeffSequence]) -> BigInt {
    let mut acc = BigInt::zero();
    'seq: for s in seqs {
        let mut prod = BigInt::one();
        for (i, f) in factors.iter().enumerate() {
            let e = s.values[i].0 + s.values[i + 1].0 - levels[i + 1];
            let c = f.coeff(HalfExp(e));
            if c.is_zero() {
                continue 'seq;
            }
            prod *= c;
        }
        acc += prod;
    }
    acc
}
