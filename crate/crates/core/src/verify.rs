//! Named self-check suites over one `(W, S, L, J)`.
//!
//! Each suite sweeps every admissible pair (or vector) and records the first
//! counterexample. Chain-based sweeps can be limited to short Bruhat
//! intervals for the larger groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::chains::{ChainEngine, Family, Multichain};
use crate::coxeter::{CoxeterSystem, Element, GenSubset};
use crate::error::{Error, Result};
use crate::heckemod::{bar_ts, q_s, ModuleVector};
use crate::klcore::{IdentityReport, KlContext, PolyKind};
use crate::laurent::{HalfExp, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    DualPathP,
    DualPathQ,
    Coefficients,
    RIdentities,
    DegreeSupport,
    ModuleLaws,
    EqualParameter,
    ChainIdentities,
    Determinism,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::DualPathP,
        Suite::DualPathQ,
        Suite::Coefficients,
        Suite::RIdentities,
        Suite::DegreeSupport,
        Suite::ModuleLaws,
        Suite::EqualParameter,
        Suite::ChainIdentities,
        Suite::Determinism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DualPathP => "dual-path-P",
            Suite::DualPathQ => "dual-path-Q",
            Suite::Coefficients => "coefficient-formulas",
            Suite::RIdentities => "r-identities",
            Suite::DegreeSupport => "degree-support-laws",
            Suite::ModuleLaws => "module-laws",
            Suite::EqualParameter => "equal-parameter-specialization",
            Suite::ChainIdentities => "chain-identities",
            Suite::Determinism => "determinism",
        }
    }

    fn needs_positive_weights(self) -> bool {
        !matches!(self, Suite::RIdentities | Suite::EqualParameter)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check suite `{s}`")))
    }
}

/// Limits for the chain-based sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Only pairs with `ℓ(y) - ℓ(x)` at most this enter chain-based checks.
    pub max_interval: Option<usize>,
    /// Coefficient formulas are checked on every `coeff_stride`-th pair.
    pub coeff_stride: usize,
    /// Weak multichains are enumerated only on intervals up to this length.
    pub max_weak_interval: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_interval: None, coeff_stride: 1, max_weak_interval: 4 }
    }
}

impl VerifyOptions {
    /// Full sweeps for groups up to order 24; above that, chain checks stop
    /// at intervals of length 5 and coefficients are sampled.
    pub fn for_system(sys: &CoxeterSystem) -> Self {
        if sys.order() > 24 {
            VerifyOptions { max_interval: Some(5), coeff_stride: 5, max_weak_interval: 3 }
        } else {
            VerifyOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub report: IdentityReport,
    pub skipped: Option<String>,
    /// Observations that are not failures.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Results of all requested suites on one `J`.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub system: String,
    pub j: GenSubset,
    pub outcomes: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SuiteOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.outcomes.iter().find(|o| !o.passed()).map(|o| {
            format!(
                "{} J={}: {}: {}",
                self.system,
                self.j,
                o.suite,
                o.report.first_failure.clone().unwrap_or_default()
            )
        })
    }
}

pub fn verify(ctx: &KlContext<'_>, suites: &[Suite], opts: &VerifyOptions) -> VerifyReport {
    let outcomes = suites.iter().map(|&suite| run_suite(ctx, suite, opts)).collect();
    VerifyReport { system: ctx.system().name(), j: ctx.j(), outcomes }
}

pub fn run_suite(ctx: &KlContext<'_>, suite: Suite, opts: &VerifyOptions) -> SuiteOutcome {
    if suite.needs_positive_weights() {
        if let Err(e) = ctx.require_positive_weights() {
            return SuiteOutcome {
                suite,
                report: IdentityReport::default(),
                skipped: Some(e.to_string()),
                notes: Vec::new(),
            };
        }
    }
    let mut skipped = None;
    let report = match suite {
        Suite::DualPathP => dual_path_p(ctx, opts),
        Suite::DualPathQ => dual_path_q(ctx, opts),
        Suite::Coefficients => coefficient_formulas(ctx, opts),
        Suite::RIdentities => r_identities(ctx),
        Suite::DegreeSupport => degree_support(ctx, opts),
        Suite::ModuleLaws => module_laws(ctx),
        Suite::EqualParameter => {
            if ctx.j().is_empty() {
                equal_parameter(ctx)
            } else {
                skipped = Some("applies to J = {} only".to_string());
                IdentityReport::default()
            }
        }
        Suite::ChainIdentities => chain_identities(ctx, opts),
        Suite::Determinism => determinism(ctx),
    };
    let notes = match suite {
        Suite::DegreeSupport => vanishing_q_note(ctx).into_iter().collect(),
        _ => Vec::new(),
    };
    SuiteOutcome { suite, report, skipped, notes }
}

fn vanishing_q_note(ctx: &KlContext<'_>) -> Option<String> {
    let sys = ctx.system();
    let zeros: Vec<(Element, Element)> = comparable_pairs(ctx, None)
        .into_iter()
        .filter(|&(x, y)| x != y && ctx.q_poly(x, y).is_ok_and(|q| q.is_zero()))
        .collect();
    let &(x, y) = zeros.first()?;
    Some(format!(
        "Q vanishes on {} comparable pairs x < y, first at {}",
        zeros.len(),
        pair_label(sys, x, y)
    ))
}

/// Comparable pairs `(x, y)` of `D_J`, ordered by `y` then `x`.
pub fn comparable_pairs(ctx: &KlContext<'_>, max_interval: Option<usize>) -> Vec<(Element, Element)> {
    let mut out = Vec::new();
    for &y in ctx.dj() {
        for &x in ctx.dj() {
            if max_interval.is_some_and(|m| y.length() > x.length() + m) {
                continue;
            }
            if ctx.leq(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

fn pair_label(sys: &CoxeterSystem, x: Element, y: Element) -> String {
    format!("({}, {})", sys.format_element(x), sys.format_element(y))
}

/// Runs `check` on every item, turning `Ok(Some(msg))` and `Err` into
/// failures.
fn sweep<T>(
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(&T) -> Result<Option<String>>,
) -> IdentityReport {
    let mut report = IdentityReport::default();
    for item in items {
        report.checked += 1;
        match check(&item) {
            Ok(None) => {}
            Ok(Some(msg)) => report.fail(msg),
            Err(e) => report.fail(e.to_string()),
        }
    }
    report
}

fn mismatch(what: &str, sys: &CoxeterSystem, x: Element, y: Element, a: &LaurentPoly, b: &LaurentPoly) -> Option<String> {
    (a != b).then(|| format!("{what} at {}: {a} vs {b}", pair_label(sys, x, y)))
}

fn dual_path_p(ctx: &KlContext<'_>, opts: &VerifyOptions) -> IdentityReport {
    let sys = ctx.system();
    let eng = ChainEngine::new(ctx);
    sweep(comparable_pairs(ctx, opts.max_interval), |&(x, y)| {
        let p = ctx.p_poly(x, y)?;
        let chains = eng.p_via_chains(x, y)?;
        let multi = eng.p_via_multichains(x, y)?;
        Ok(mismatch("P by recursion vs strict chains", sys, x, y, &p, &chains)
            .or_else(|| mismatch("P by recursion vs multichains", sys, x, y, &p, &multi)))
    })
}

fn dual_path_q(ctx: &KlContext<'_>, opts: &VerifyOptions) -> IdentityReport {
    let sys = ctx.system();
    let eng = ChainEngine::new(ctx);
    sweep(comparable_pairs(ctx, opts.max_interval), |&(x, y)| {
        let q = ctx.q_poly(x, y)?;
        let chains = eng.q_via_chains(x, y)?;
        let multi = eng.q_via_multichains(x, y)?;
        Ok(mismatch("Q by inversion vs strict chains", sys, x, y, &q, &chains)
            .or_else(|| mismatch("Q by inversion vs multichains", sys, x, y, &q, &multi)))
    })
}

fn coefficient_formulas(ctx: &KlContext<'_>, opts: &VerifyOptions) -> IdentityReport {
    let sys = ctx.system();
    let eng = ChainEngine::new(ctx);
    let pairs = comparable_pairs(ctx, opts.max_interval);
    let sampled = pairs.into_iter().step_by(opts.coeff_stride.max(1));
    let mut report = IdentityReport::default();
    for (x, y) in sampled {
        let polys = ctx.p_poly(x, y).and_then(|p| Ok((p, ctx.q_poly(x, y)?)));
        let (p, q) = match polys {
            Ok(v) => v,
            Err(e) => {
                report.checked += 1;
                report.fail(e.to_string());
                continue;
            }
        };
        // one lattice point on each side of the degree window
        let window = -2..=2 * ctx.weight_gap(x, y) + 1;
        let sub = sweep(window.map(HalfExp), |&g| {
            let cp = eng.coeff_p(x, y, g)?;
            if cp != p.coeff(g) {
                return Ok(Some(format!("[q^{g}]P at {}: {cp} vs {}", pair_label(sys, x, y), p.coeff(g))));
            }
            let cq = eng.coeff_q(x, y, g)?;
            if cq != q.coeff(g) {
                return Ok(Some(format!("[q^{g}]Q at {}: {cq} vs {}", pair_label(sys, x, y), q.coeff(g))));
            }
            Ok(None)
        });
        report.merge(sub);
    }
    report
}

fn r_identities(ctx: &KlContext<'_>) -> IdentityReport {
    let sys = ctx.system();
    let mut report = ctx.verify_r_identities();
    if ctx.require_positive_weights().is_err() {
        return report;
    }
    // q_x^{-1} q_y bar(Q_{x,y}) = Σ_{x≤t≤y} Q_{x,t} R~_{t,y}
    report.merge(sweep(comparable_pairs(ctx, None), |&(x, y)| {
        let lhs = ctx.q_poly(x, y)?.bar().shift_q(ctx.weight_gap(x, y));
        let mut rhs = LaurentPoly::zero();
        for t in ctx.interval(x, y) {
            rhs += ctx.q_poly(x, t)? * ctx.r_tilde(t, y)?;
        }
        Ok(mismatch("Q dual identity", sys, x, y, &lhs, &rhs))
    }));
    report
}

fn lattice_step(sys: &CoxeterSystem) -> i64 {
    2 * sys.weights().iter().fold(0i64, |g, &w| g.gcd(&w))
}

fn degree_support(ctx: &KlContext<'_>, opts: &VerifyOptions) -> IdentityReport {
    let sys = ctx.system();
    let step = lattice_step(sys);
    let all_pairs: Vec<(Element, Element)> =
        ctx.dj().iter().flat_map(|&y| ctx.dj().iter().map(move |&x| (x, y))).collect();

    let mut report = sweep(all_pairs.iter().copied(), |&(x, y)| {
        let r = ctx.r_poly(x, y)?;
        let label = pair_label(sys, x, y);
        if !ctx.leq(x, y) {
            return Ok((!r.is_zero()).then(|| format!("R nonzero off the interval at {label}: {r}")));
        }
        if x == y && !r.is_one() {
            return Ok(Some(format!("R diagonal at {label}: {r}")));
        }
        let gap = 2 * ctx.weight_gap(x, y);
        if r.deg().is_none_or(|d| d.0 < 0 || d.0 > gap) || !r.exponents_divisible_by(step) {
            return Ok(Some(format!("R degree or lattice at {label}: {r}")));
        }
        Ok(None)
    });

    for (kind, name) in [(PolyKind::P, "P"), (PolyKind::Q, "Q")] {
        report.merge(sweep(comparable_pairs(ctx, None), |&(x, y)| {
            let f = ctx.poly(kind, x, y)?;
            let label = pair_label(sys, x, y);
            if x == y {
                return Ok((!f.is_one()).then(|| format!("{name} diagonal at {label}: {f}")));
            }
            let bound = ctx.weight_gap(x, y);
            // Q may vanish below the diagonal; P may not
            let empty = f.is_zero() && kind == PolyKind::P;
            if empty || f.deg().is_some_and(|d| d.0 >= bound) || f.min_exp().is_some_and(|m| m.0 < 0) {
                return Ok(Some(format!("{name} degree window at {label}: {f}")));
            }
            Ok((!f.exponents_divisible_by(step)).then(|| format!("{name} lattice at {label}: {f}")))
        }));
    }

    let eng = ChainEngine::new(ctx);
    let short = comparable_pairs(ctx, Some(opts.max_weak_interval));
    // weak multichains one step past the bound: long ones vanish, nonzero
    // ones are strict after the first entry and sit in the degree window
    report.merge(sweep(short.iter().copied(), |&(x, y)| {
        let len = y.length() - x.length();
        for phi in eng.enum_multichains(x, y, len + 2)? {
            let value = eng.script_r(&phi)?;
            let label = phi.format(sys).join(" ≤ ");
            if value.is_zero() {
                continue;
            }
            if phi.steps() > len + 1 {
                return Ok(Some(format!("scriptR nonzero past the length bound on {label}")));
            }
            if phi.entries[1..].windows(2).any(|w| w[0] == w[1]) {
                return Ok(Some(format!("scriptR nonzero on a repeat after the first entry: {label}")));
            }
            if phi.steps() >= 2 {
                let floor = ctx.weight_gap(phi.entries[1], y);
                if value.deg().is_none_or(|d| d.0 <= floor) {
                    return Ok(Some(format!("scriptR degree below window on {label}: {value}")));
                }
            }
        }
        Ok(None)
    }));

    // repeated entries: (z,z,z,…) and (x,z,z,…) vanish
    report.merge(sweep(comparable_pairs(ctx, opts.max_interval), |&(x, z)| {
        for k in 2..=3 {
            let mut e = vec![x];
            e.extend(std::iter::repeat_n(z, k));
            let value = eng.script_r(&Multichain::new(e.clone()))?;
            if !value.is_zero() {
                let phi = Multichain::new(e);
                return Ok(Some(format!("scriptR of {} is {value}", phi.format(sys).join(" ≤ "))));
            }
        }
        Ok(None)
    }));
    report
}

fn module_laws(ctx: &KlContext<'_>) -> IdentityReport {
    let sys = ctx.system();
    let m = ctx.module();
    let name = |y: Element| sys.format_element(y);
    let mut report = sweep(ctx.dj().iter().copied(), |&y| {
        let gamma = ModuleVector::basis(y);
        for s in sys.generators() {
            let ts = m.act_ts(s, &gamma)?;
            let tts = m.act_ts(s, &ts)?;
            let qs = q_s(sys, s);
            let expected = gamma.scale(&qs).add(&ts.scale(&(&qs - &LaurentPoly::one())));
            if tts != expected {
                return Ok(Some(format!("quadratic relation fails for {s} on Γ_{}", name(y))));
            }
            for t in sys.generators().filter(|&t| t.0 > s.0) {
                let (mut a, mut b) = (gamma.clone(), gamma.clone());
                for i in 0..sys.bond(s, t) {
                    let (u, v) = if i % 2 == 0 { (s, t) } else { (t, s) };
                    a = m.act_ts(u, &a)?;
                    b = m.act_ts(v, &b)?;
                }
                if a != b {
                    return Ok(Some(format!("braid relation fails for {s},{t} on Γ_{}", name(y))));
                }
            }
            // bar(T_s Γ_y) = bar(T_s) bar(Γ_y)
            let lhs = m.bar_vector(&ts)?;
            let rhs = m.act_hecke(&bar_ts(sys, s), &*m.bar_gamma(y)?)?;
            if lhs != rhs {
                return Ok(Some(format!("bar is not compatible with T_{s} on Γ_{}", name(y))));
            }
            if sys.left_descents(y).contains(s) && m.bar_gamma_via(y, s)? != *m.bar_gamma(y)? {
                return Ok(Some(format!("bar(Γ_{}) depends on the descent {s}", name(y))));
            }
        }
        let back = m.bar_vector(&*m.bar_gamma(y)?)?;
        if back != gamma {
            return Ok(Some(format!("bar is not an involution on Γ_{}", name(y))));
        }
        Ok(None)
    });
    report.merge(sweep(ctx.dj().iter().copied(), |&y| {
        let c = ctx.c_basis(y)?;
        Ok((m.bar_vector(&c)? != c).then(|| format!("C_{} is not bar-invariant", name(y))))
    }));
    report
}

/// Weighted R-polynomials of `W` by the left-descent recursion
/// `R_{x,y} = R_{sx,sy}` if `sx < x`, else
/// `(q_s - 1) R_{x,sy} + q_s R_{sx,sy}`.
pub fn classical_r(
    sys: &CoxeterSystem,
    x: Element,
    y: Element,
    memo: &mut HashMap<(Element, Element), LaurentPoly>,
) -> LaurentPoly {
    if let Some(r) = memo.get(&(x, y)) {
        return r.clone();
    }
    let value = match sys.left_descents(y).iter().next() {
        None => {
            if x.is_identity() {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        }
        Some(s) => {
            let sy = sys.lmul(s, y);
            let sx = sys.lmul(s, x);
            if sx.length() < x.length() {
                classical_r(sys, sx, sy, memo)
            } else {
                let qs = q_s(sys, s);
                (&qs - &LaurentPoly::one()) * classical_r(sys, x, sy, memo)
                    + qs * classical_r(sys, sx, sy, memo)
            }
        }
    };
    memo.insert((x, y), value.clone());
    value
}

fn equal_parameter(ctx: &KlContext<'_>) -> IdentityReport {
    let sys = ctx.system();
    let mut memo = HashMap::new();
    let pairs: Vec<(Element, Element)> =
        ctx.dj().iter().flat_map(|&y| ctx.dj().iter().map(move |&x| (x, y))).collect();
    sweep(pairs, |&(x, y)| {
        let r = ctx.r_poly(x, y)?;
        let oracle = classical_r(sys, x, y, &mut memo);
        Ok(mismatch("R vs the Hecke-algebra recursion", sys, x, y, &r, &oracle)
            .or_else(|| mismatch("R vs R~", sys, x, y, &r, &ctx.r_tilde(x, y).unwrap_or_default())))
    })
}

fn chain_identities(ctx: &KlContext<'_>, opts: &VerifyOptions) -> IdentityReport {
    let sys = ctx.system();
    let eng = ChainEngine::new(ctx);
    let pairs = comparable_pairs(ctx, opts.max_interval);

    // bar(𝓡_{x,y}) = ε_x ε_y q_x q_y^{-1} 𝓡~_{x,y}
    let mut report = sweep(pairs.iter().copied(), |&(x, y)| {
        let phi = Multichain::new(vec![x, y]);
        let lhs = eng.script_r(&phi)?.bar();
        let rhs = eng.script_r_tilde(&phi)?.shift_q(-ctx.weight_gap(x, y)).signed(ctx.sign(x, y));
        Ok(mismatch("scriptR bar relation", sys, x, y, &lhs, &rhs))
    });

    // P_{x,y} - 𝓡_{x,y} = Σ_{x≤t<y} q_t^{-1} q_y 𝓡_{x,t} bar(P_{t,y})
    report.merge(sweep(pairs.iter().copied().filter(|(x, y)| x != y), |&(x, y)| {
        let lhs = ctx.p_poly(x, y)? - eng.script_r(&Multichain::new(vec![x, y]))?;
        let mut rhs = LaurentPoly::zero();
        for t in ctx.interval(x, y) {
            if t != y {
                let r = eng.script_r(&Multichain::new(vec![x, t]))?;
                rhs += (r * ctx.p_poly(t, y)?.bar()).shift_q(ctx.weight_gap(t, y));
            }
        }
        Ok(mismatch("P minus scriptR expansion", sys, x, y, &lhs, &rhs))
    }));

    // constant terms: [q^0] 𝓡_{x,y} = [q_x^{-1} q_y] R_{x,y}, and 0 for
    // every multichain with two or more steps
    report.merge(sweep(pairs.iter().copied().filter(|(x, y)| x != y), |&(x, y)| {
        let zero = HalfExp(0);
        let single = eng.script_r(&Multichain::new(vec![x, y]))?.coeff(zero);
        let top = ctx.r_poly(x, y)?.coeff(HalfExp(2 * ctx.weight_gap(x, y)));
        if single != top {
            return Ok(Some(format!("constant term of scriptR at {}", pair_label(sys, x, y))));
        }
        for phi in eng.family(Family::RepeatInitial, x, y)? {
            if phi.steps() >= 2 && eng.script_r(&phi)?.coeff(zero) != BigInt::from(0) {
                return Ok(Some(format!("constant term of scriptR on {}", phi.format(sys).join(" ≤ "))));
            }
        }
        Ok(None)
    }));

    // memoized chain sums agree with chain-by-chain sums, and with the brute
    // weak enumeration on short intervals
    report.merge(sweep(pairs.iter().copied(), |&(x, y)| {
        let fam = eng.family(Family::RepeatInitial, x, y)?;
        let direct = eng.sum_over(&fam, |e, phi| e.script_r(phi))?;
        let p = eng.p_via_multichains(x, y)?;
        if let Some(msg) = mismatch("chain-by-chain P sum", sys, x, y, &direct, &p) {
            return Ok(Some(msg));
        }
        let fam = eng.family(Family::RepeatFinal, x, y)?;
        let direct = eng.sum_over(&fam, |e, phi| e.script_r_tilde_star(phi))?;
        let q = eng.q_via_multichains(x, y)?;
        if let Some(msg) = mismatch("chain-by-chain Q sum", sys, x, y, &direct, &q) {
            return Ok(Some(msg));
        }
        if y.length() - x.length() <= opts.max_weak_interval {
            let bound = y.length() - x.length() + 1;
            let weak: Vec<Multichain> = eng.enum_multichains(x, y, bound)?.collect();
            let wp = eng.sum_over(&weak, |e, phi| e.script_r(phi))?;
            let wq = eng.sum_over(&weak, |e, phi| e.script_r_tilde_star(phi))?;
            return Ok(mismatch("weak multichain P sum", sys, x, y, &wp, &p)
                .or_else(|| mismatch("weak multichain Q sum", sys, x, y, &wq, &q)));
        }
        Ok(None)
    }));
    report
}

fn determinism(ctx: &KlContext<'_>) -> IdentityReport {
    let sys = ctx.system();
    sweep([PolyKind::R, PolyKind::P, PolyKind::Q], |&kind| {
        let first = KlContext::new(sys, ctx.j()).table(kind)?;
        let second = KlContext::new(sys, ctx.j()).table(kind)?;
        let same = first.to_csv(sys) == second.to_csv(sys)
            && first.to_json(sys) == second.to_json(sys);
        Ok((!same).then(|| format!("{kind} table differs between runs")))
    })
}
