//! Closed formulas and lower bounds for `|Star(S)|`, checked against
//! computed values, and the search for semigroups with few star operations.
//!
//! Every bound is compared with an *observation*: either an exact value, or
//! a certified lower bound obtained from an interrupted enumeration (each
//! operation counted is a distinct star operation). A lower bound is
//! satisfied as soon as the observation reaches it, violated only against
//! an exact value, and otherwise left undetermined.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count_exact, count_exact_qm_at_most};
use crate::enumeration::{
    count_inclusion_antichains, count_star_operations_capped, count_star_operations_until, dedekind, CountGoal,
    StarCount,
};
use crate::error::LimitExceeded;
use crate::ideal::ideal_m;
use crate::semigroup::NumericalSemigroup;
use crate::star::StarContext;
use crate::Budget;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `ν = ⌈(μ−1)/2⌉`.
pub fn nu(s: &NumericalSemigroup) -> u32 {
    s.multiplicity().saturating_sub(1).div_ceil(2)
}

fn t_of(s: &NumericalSemigroup) -> i128 {
    s.type_number() as i128
}

fn d(n: i128) -> Result<i128, LimitExceeded> {
    Ok(dedekind(n.max(0) as u32)? as i128)
}

/// `D(t−1) − 1`.
pub fn bound_dedekind_type(s: &NumericalSemigroup) -> Result<i128, LimitExceeded> {
    Ok(d(t_of(s) - 1)? - 1)
}

/// `2·Σ_{i=1}^{t−1} D(i) − 3(t−1)`.
pub fn bound_sum_dedekind(s: &NumericalSemigroup) -> Result<i128, LimitExceeded> {
    let t = t_of(s);
    let mut sum = 0;
    for i in 1..t {
        sum += d(i)?;
    }
    Ok(2 * sum - 3 * (t - 1))
}

/// Whether every pseudo-Frobenius number exceeds the multiplicity.
pub fn t_dedekind_applicable(s: &NumericalSemigroup) -> bool {
    !s.is_symmetric() && s.type_set().iter().all(|&tau| tau > s.multiplicity())
}

/// `(2t−1)·D(t−1) − 3t + 1`, or `None` when some `τ ≤ μ`.
pub fn bound_t_dedekind(s: &NumericalSemigroup) -> Result<Option<i128>, LimitExceeded> {
    if !t_dedekind_applicable(s) {
        return Ok(None);
    }
    let t = t_of(s);
    Ok(Some((2 * t - 1) * d(t - 1)? - 3 * t + 1))
}

/// `δ(S) + 1`.
pub fn bound_delta(s: &NumericalSemigroup) -> i128 {
    s.genus() as i128 + 1
}

/// `C(α+β+1, 2α−β)`.
pub fn formula_mu3(alpha: i64, beta: i64) -> u128 {
    binomial(alpha + beta + 1, 2 * alpha - beta)
}

/// `(α, β)` when the minimal generators are exactly `3, 3α+1, 3β+2`.
pub fn mu3_parameters(s: &NumericalSemigroup) -> Option<(i64, i64)> {
    match *s.min_generators() {
        [3, a, b] if a % 3 == 1 && b % 3 == 2 => Some(((a as i64 - 1) / 3, (b as i64 - 2) / 3)),
        [3, a, b] if a % 3 == 2 && b % 3 == 1 => Some(((b as i64 - 1) / 3, (a as i64 - 2) / 3)),
        _ => None,
    }
}

/// `⟨3, 3α+1, 3β+2⟩` if those three numbers are its minimal generators.
pub fn mu3_semigroup(alpha: i64, beta: i64) -> Option<NumericalSemigroup> {
    if alpha < 1 || beta < 1 {
        return None;
    }
    let gens = [3, 3 * alpha as u64 + 1, 3 * beta as u64 + 2];
    let s = NumericalSemigroup::from_generators(&gens).ok()?;
    let mut sorted = gens;
    sorted.sort_unstable();
    let ok = s.min_generators().iter().map(|&x| x as u64).eq(sorted);
    ok.then_some(s)
}

/// `1 + D(μ−2)`.
pub fn formula_pseudosym_2mu2(mu: u32) -> Result<u128, LimitExceeded> {
    assert!(mu >= 3, "the family starts at multiplicity 3");
    Ok(1 + dedekind(mu - 2)?)
}

/// `{0, μ, μ+1, …, 2μ−3, 2μ−1, →}`.
pub fn pseudosym_family(mu: u32) -> NumericalSemigroup {
    assert!(mu >= 3, "the family starts at multiplicity 3");
    let gaps: Vec<u64> = (1..mu as u64).chain([2 * mu as u64 - 2]).collect();
    NumericalSemigroup::from_gaps(&gaps).expect("member of the family is a numerical semigroup")
}

/// Whether `S` belongs to the family of [`pseudosym_family`].
pub fn is_pseudosym_family(s: &NumericalSemigroup) -> bool {
    let mu = s.multiplicity();
    mu >= 3 && s.frobenius() == 2 * mu as i64 - 2 && s.genus() == mu
}

/// `C(n−1, μ−1)`, an upper bound for `Ξ_μ(n)`.
pub fn bound_xi_mu(n: u32, mu: u32) -> u128 {
    binomial(n as i64 - 1, mu as i64 - 1)
}

/// Nonsymmetric semigroups with `2 ≤ |Star(S)| ≤ n`, sorted by count and
/// then by minimal generators.
///
/// Complete because `|Star(S)| ≥ δ(S) + 1`: only genus `≤ n − 1` matters.
/// Each candidate is rejected early when `|G₀| + 1 > n` (the principal
/// operations and `v` are pairwise distinct), and otherwise counted with a
/// cap of `n`.
pub fn classify_up_to(n: u32, budget: &Budget) -> Result<Vec<(NumericalSemigroup, u64)>, LimitExceeded> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let max_genus = n - 1;
    if max_genus > budget.max_genus {
        return Err(LimitExceeded::new("genus", budget.max_genus as u64));
    }
    let candidates: Vec<NumericalSemigroup> = crate::enumerate_semigroups(max_genus)
        .filter(|s| !s.is_symmetric())
        .collect();
    let found: Result<Vec<Option<(NumericalSemigroup, u64)>>, LimitExceeded> = candidates
        .into_par_iter()
        .map(|s| {
            let ctx = StarContext::new(&s, budget)?;
            if ctx.poset().len() as u64 + 1 > n as u64 {
                return Ok(None);
            }
            let c = count_star_operations_capped(&ctx, n as u64);
            Ok((c.complete && c.count <= n as u64).then_some((s, c.count)))
        })
        .collect();
    let mut rows: Vec<(NumericalSemigroup, u64)> = found?.into_iter().flatten().collect();
    rows.sort_by(|a, b| (a.1, a.0.min_generators()).cmp(&(b.1, b.0.min_generators())));
    Ok(rows)
}

/// `Ξ_μ(n)` read off a classification: the rows with multiplicity `μ`.
pub fn xi_mu(rows: &[(NumericalSemigroup, u64)], mu: u32) -> usize {
    rows.iter().filter(|(s, _)| s.multiplicity() == mu).count()
}

/// What is known about a computed quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Observed {
    /// Certified lower bound; the value itself when `exact`.
    pub lower: u128,
    pub exact: bool,
}

impl Observed {
    pub fn exact(v: u128) -> Self {
        Observed { lower: v, exact: true }
    }

    fn from_count(c: &StarCount) -> Self {
        Observed {
            lower: c.count as u128,
            exact: c.complete,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `observed ≥ value`.
    Lower,
    /// `observed = value`.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Satisfied,
    Violated,
    /// The observation is neither exact nor large enough to decide.
    Undetermined,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    /// `None` when the value itself is out of reach (a Dedekind number
    /// beyond the supported range).
    pub value: Option<i128>,
    pub applicable: bool,
    pub observed: Option<Observed>,
    pub status: BoundStatus,
}

impl BoundEntry {
    fn new(name: impl Into<String>, kind: BoundKind, value: Option<i128>, observed: Option<Observed>) -> Self {
        let status = match (value, observed) {
            (Some(v), Some(o)) => match kind {
                BoundKind::Lower if o.lower as i128 >= v => BoundStatus::Satisfied,
                BoundKind::Lower if o.exact => BoundStatus::Violated,
                BoundKind::Exact if o.exact && o.lower as i128 == v => BoundStatus::Satisfied,
                BoundKind::Exact if o.exact || o.lower as i128 > v => BoundStatus::Violated,
                _ => BoundStatus::Undetermined,
            },
            _ => BoundStatus::Undetermined,
        };
        BoundEntry {
            name: name.into(),
            kind,
            value,
            applicable: true,
            observed,
            status,
        }
    }

    fn not_applicable(name: impl Into<String>, kind: BoundKind) -> Self {
        BoundEntry {
            name: name.into(),
            kind,
            value: None,
            applicable: false,
            observed: None,
            status: BoundStatus::NotApplicable,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.status == BoundStatus::Satisfied
    }
}

/// All bounds evaluated on one semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "ser_summary")]
    pub semigroup: NumericalSemigroup,
    /// `|Star(S)|` when it could be determined exactly.
    pub exact: Option<u128>,
    /// Star operations actually enumerated (a lower bound for the count).
    pub enumerated: u64,
    pub bounds: Vec<BoundEntry>,
}

fn ser_summary<S: serde::Serializer>(s: &NumericalSemigroup, ser: S) -> Result<S::Ok, S::Error> {
    s.summary().serialize(ser)
}

impl BoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.bounds.iter().filter(|b| b.status == BoundStatus::Violated)
    }

    pub fn undetermined(&self) -> impl Iterator<Item = &BoundEntry> {
        self.bounds.iter().filter(|b| b.status == BoundStatus::Undetermined)
    }

    /// Every applicable bound is satisfied.
    pub fn all_satisfied(&self) -> bool {
        self.bounds.iter().all(|b| !b.applicable || b.satisfied())
    }

    /// CSV rows `semigroup,genus,mult,type,star_count,bound_name,value,applicable,satisfied`.
    pub fn csv_rows(&self) -> Vec<String> {
        let s = &self.semigroup;
        let count = self.exact.map_or(String::new(), |c| c.to_string());
        self.bounds
            .iter()
            .map(|b| {
                format!(
                    "\"{}\",{},{},{},{},{},{},{},{}",
                    s,
                    s.genus(),
                    s.multiplicity(),
                    s.type_number(),
                    count,
                    b.name,
                    b.value.map_or(String::new(), |v| v.to_string()),
                    b.applicable,
                    b.satisfied()
                )
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "semigroup,genus,mult,type,star_count,bound_name,value,applicable,satisfied";

/// How much work `verify_bounds` may spend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Cap for the first, unconditional enumeration of `Star(S)`.
    pub count_cap: u64,
    /// Memo size for the exact counter, tried when that enumeration is
    /// incomplete. Zero disables it.
    pub exact_states: usize,
    /// When the exact counter gives up, a bound with value at most this is
    /// still settled by enumerating until the value is reached.
    pub enumeration_limit: u64,
    /// Work limit (operations visited) for each targeted enumeration of
    /// some `S_y`.
    pub targeted_work: u64,
    /// Largest `Q_a` whose inclusion antichains are counted.
    pub q_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            count_cap: 1_000_000,
            exact_states: 500_000,
            enumeration_limit: 20_000_000,
            targeted_work: 60_000_000,
            q_limit: 128,
        }
    }
}

/// The quantity a bound is compared with.
#[derive(Clone, Copy)]
enum Target {
    Star,
    Qm(u32),
    Given(Option<Observed>),
}

struct Pending {
    name: String,
    kind: BoundKind,
    value: Option<i128>,
    target: Target,
}

/// Whether `o` decides a bound of this kind and value either way.
fn decides(o: Observed, kind: BoundKind, value: i128) -> bool {
    o.exact
        || match kind {
            BoundKind::Lower => o.lower as i128 >= value,
            BoundKind::Exact => o.lower as i128 > value,
        }
}

/// What is known about `|Star(S)|` and each `|S_y|`.
struct Knowledge<'a> {
    ctx: &'a StarContext,
    cfg: &'a VerifyConfig,
    enumerated: u64,
    star: Observed,
    by_qm: BTreeMap<u32, Observed>,
    /// Whether `by_qm` is exact for every `y` (missing entries are zero).
    all_exact: bool,
    /// Exact counts of operations with `qm ≤ y`.
    at_most: BTreeMap<u32, u128>,
    /// Smallest `y` for which the exact counter gave up on `qm ≤ y`; larger
    /// problems are not attempted.
    gave_up_at: Option<u32>,
}

impl<'a> Knowledge<'a> {
    fn new(ctx: &'a StarContext, cfg: &'a VerifyConfig) -> Self {
        let full = count_star_operations_capped(ctx, cfg.count_cap);
        let mut known = Knowledge {
            ctx,
            cfg,
            enumerated: full.count,
            star: Observed::from_count(&full),
            by_qm: full
                .by_qm
                .iter()
                .map(|(&y, &n)| {
                    let o = Observed {
                        lower: n as u128,
                        exact: full.complete,
                    };
                    (y, o)
                })
                .collect(),
            all_exact: full.complete,
            at_most: BTreeMap::new(),
            gave_up_at: None,
        };
        if !full.complete && cfg.exact_states > 0 {
            if let Ok(n) = count_exact(ctx, None, cfg.exact_states) {
                known.star = Observed::exact(n);
            }
        }
        known
    }

    fn qm(&self, y: u32) -> Observed {
        self.by_qm.get(&y).copied().unwrap_or(Observed {
            lower: 0,
            exact: self.all_exact,
        })
    }

    fn observe(&self, target: Target) -> Option<Observed> {
        match target {
            Target::Star => Some(self.star),
            Target::Qm(y) => Some(self.qm(y)),
            Target::Given(o) => o,
        }
    }

    fn exact_at_most(&mut self, y: u32) -> Option<u128> {
        if let Some(&n) = self.at_most.get(&y) {
            return Some(n);
        }
        if self.cfg.exact_states == 0 || self.gave_up_at.is_some_and(|f| y >= f) {
            return None;
        }
        match count_exact_qm_at_most(self.ctx, y, self.cfg.exact_states) {
            Ok(n) => {
                self.at_most.insert(y, n);
                Some(n)
            }
            Err(_) => {
                self.gave_up_at = Some(y);
                None
            }
        }
    }

    fn exact_with_qm(&mut self, y: u32) -> Option<u128> {
        let below = match y.checked_sub(1) {
            Some(x) => self.exact_at_most(x)?,
            None => 0,
        };
        Some(self.exact_at_most(y)? - below)
    }

    /// Refines the counts until every bound in `pending` is decided, as far
    /// as the configuration allows: exact counting of each `S_y` first,
    /// then one enumeration that stops once every remaining value is
    /// reached.
    fn settle(&mut self, pending: &[Pending]) {
        let open = |k: &Self, p: &Pending| match (p.value, k.observe(p.target)) {
            (Some(v), Some(o)) => !decides(o, p.kind, v),
            _ => false,
        };
        let targets: Vec<u32> = pending
            .iter()
            .filter(|p| open(self, p))
            .filter_map(|p| match p.target {
                Target::Qm(y) => Some(y),
                _ => None,
            })
            .collect();
        for y in targets {
            if !self.qm(y).exact {
                if let Some(n) = self.exact_with_qm(y) {
                    self.by_qm.insert(y, Observed::exact(n));
                }
            }
        }
        let mut goal = CountGoal::default();
        let limit = self.cfg.enumeration_limit as i128;
        for p in pending.iter().filter(|p| open(self, p)) {
            let v = p.value.expect("open bounds have values");
            let need = if p.kind == BoundKind::Exact { v + 1 } else { v };
            if need > limit {
                continue;
            }
            match p.target {
                Target::Star => goal.total = goal.total.max(need as u64),
                Target::Qm(y) => {
                    let e = goal.by_qm.entry(y).or_default();
                    *e = (*e).max(need as u64);
                }
                Target::Given(_) => {}
            }
        }
        // The total and `S_g` (which holds most operations) in one
        // unrestricted walk, every other `S_y` in a walk restricted to
        // `qm ≤ y`, where it is far denser.
        let g = self.ctx.semigroup().frobenius().max(0) as u32;
        let mut rest = std::mem::take(&mut goal.by_qm);
        if goal.total > 0 {
            if let Some(n) = rest.remove(&g) {
                goal.by_qm.insert(g, n);
            }
            let c = count_star_operations_until(self.ctx, &goal, self.cfg.targeted_work);
            if !self.star.exact {
                self.star = Observed {
                    lower: self.star.lower.max(c.count as u128),
                    exact: c.complete,
                };
            }
            self.absorb(&c, u32::MAX);
        }
        for (y, need) in rest {
            if decides(self.qm(y), BoundKind::Lower, need as i128) {
                continue;
            }
            let goal = CountGoal {
                total: 0,
                by_qm: BTreeMap::from([(y, need)]),
            };
            let c = count_star_operations_until(self.ctx, &goal, self.cfg.targeted_work);
            self.absorb(&c, y);
        }
    }

    /// Takes in the counts of an enumeration that covered every operation
    /// with `qm ≤ top` when complete.
    fn absorb(&mut self, c: &StarCount, top: u32) {
        self.enumerated = self.enumerated.max(c.count);
        let gaps = self.ctx.semigroup().gaps();
        for y in std::iter::once(0).chain(gaps).filter(|&y| y <= top) {
            let old = self.qm(y);
            if !old.exact {
                let n = c.by_qm.get(&y).copied().unwrap_or(0) as u128;
                let o = Observed {
                    lower: old.lower.max(n),
                    exact: c.complete,
                };
                self.by_qm.insert(y, o);
            }
        }
    }
}

/// Evaluates every bound on `S` against computed values.
pub fn verify_bounds(
    s: &NumericalSemigroup,
    budget: &Budget,
    cfg: &VerifyConfig,
) -> Result<BoundReport, LimitExceeded> {
    let ctx = StarContext::new(s, budget)?;
    Ok(verify_bounds_with(&ctx, cfg))
}

/// [`verify_bounds`] on a prepared context.
pub fn verify_bounds_with(ctx: &StarContext, cfg: &VerifyConfig) -> BoundReport {
    use BoundKind::{Exact, Lower};
    let s = ctx.semigroup();
    let mut pending = Vec::new();
    let mut push = |name: String, kind: BoundKind, value: Option<i128>, target: Target| {
        pending.push(Pending {
            name,
            kind,
            value,
            target,
        })
    };
    let mut not_applicable = Vec::new();
    let ok = |r: Result<i128, LimitExceeded>| r.ok();

    if s.is_symmetric() {
        push("symmetric_single_operation".into(), Exact, Some(1), Target::Star);
    } else {
        let t = s.type_number() as u32;
        let mu = s.multiplicity();
        let g = s.frobenius() as u32;
        let gaps = s.gaps();
        let is_gap = |x: i64| s.is_gap(x);

        push("dedekind_type".into(), Lower, ok(bound_dedekind_type(s)), Target::Star);
        push("sum_dedekind".into(), Lower, ok(bound_sum_dedekind(s)), Target::Star);
        match bound_t_dedekind(s) {
            Ok(Some(v)) => push("t_dedekind".into(), Lower, Some(v), Target::Star),
            Ok(None) => not_applicable.push(BoundEntry::not_applicable("t_dedekind", Lower)),
            Err(_) => push("t_dedekind".into(), Lower, None, Target::Star),
        }
        push("delta_plus_one".into(), Lower, Some(bound_delta(s)), Target::Star);
        let g0 = Observed::exact(ctx.poset().len() as u128);
        push("g0_at_least_delta".into(), Lower, Some(s.genus() as i128), Target::Given(Some(g0)));

        // ω_⊆(Q_a) for every gap
        let omega_q: BTreeMap<u32, Option<Observed>> = gaps
            .iter()
            .map(|&a| {
                let q = ctx.q_set(a);
                let w = count_inclusion_antichains(&q, cfg.q_limit).ok().map(Observed::exact);
                (a, w)
            })
            .collect();
        let omega_value = |a: u32| omega_q.get(&a).copied().flatten().map(|o| o.lower as i128);
        let omega = |a: u32| Target::Given(omega_q[&a]);

        // (1) |S_y| ≥ 2ω_⊆(Q_y) − 3 when some smaller gap x has M_x nondivisorial
        let m_nondivisorial = |x: u32| {
            let m = ideal_m(s, x as i64).expect("gap");
            !crate::ideal::is_divisorial(s, &m)
        };
        for &y in &gaps {
            if gaps.iter().any(|&x| x < y && m_nondivisorial(x)) {
                let value = omega_value(y).map(|w| 2 * w - 3);
                push(format!("qm_pair[y={y}]"), Lower, value, Target::Qm(y));
            }
        }
        // (2) interior pseudo-Frobenius numbers
        let taus = s.type_set();
        for i in 2..t {
            let tau = taus[i as usize - 1];
            let value = ok(d(i as i128 - 1)).map(|v| 2 * v - 3);
            push(format!("qm_pseudo_frobenius[i={i}]"), Lower, value, Target::Qm(tau));
        }
        // (3) |S_g| ≥ 2D(t−1) − 5
        let value = ok(d(t as i128 - 1)).map(|v| 2 * v - 5);
        push("qm_frobenius".into(), Lower, value, Target::Qm(g));
        // (4) μ < a < g, g − a a gap: ω_⊆(Q_a) ≥ D(t−1)
        for &a in gaps.iter().filter(|&&a| a > mu && a < g && is_gap((g - a) as i64)) {
            push(format!("q_antichains_type[a={a}]"), Lower, ok(d(t as i128 - 1)), omega(a));
        }
        // (5) |S_0| ≥ 1
        push("qm_zero".into(), Lower, Some(1), Target::Qm(0));
        // (6), (7) a ≤ g/2, a and g − a gaps
        let nu = nu(s) as i128;
        for &a in gaps
            .iter()
            .filter(|&&a| 2 * a <= g && is_gap((g - a) as i64) && a > mu)
        {
            push(format!("q_antichains_nu[a={a}]"), Lower, ok(d(nu)), omega(a));
            if a > 2 * mu {
                push(format!("q_antichains_2nu[a={a}]"), Lower, ok(d(nu)).map(|v| 2 * v - 2), omega(a));
            }
        }
        // (8) a < μ with g − a a gap
        let small: Vec<u32> = (1..mu).filter(|&a| a <= g && is_gap((g - a) as i64)).collect();
        for &a in &small {
            push(format!("q_antichains_small[a={a}]"), Lower, ok(d(a as i128 - 1)), omega(a));
        }
        if let Some(&a0) = small.first() {
            for s_ in a0 + 1..mu {
                push(format!("q_antichains_small[s={s_}]"), Lower, ok(d(s_ as i128 - 2)), omega(s_));
            }
        }
        // (9) |Star(S)| ≥ 1 + Σ_a (ω_⊆(Q_a) − 1)
        let sum: Option<i128> = gaps.iter().map(|&a| omega_value(a).map(|w| w - 1)).sum();
        push("q_antichain_sum".into(), Lower, sum.map(|v| v + 1), Target::Star);

        // closed formulas, where they apply
        if let Some((alpha, beta)) = mu3_parameters(s) {
            push("mu3_formula".into(), Exact, Some(formula_mu3(alpha, beta) as i128), Target::Star);
        }
        if is_pseudosym_family(s) {
            let v = formula_pseudosym_2mu2(mu).ok().map(|v| v as i128);
            push("pseudosymmetric_formula".into(), Exact, v, Target::Star);
        }
    }

    let mut known = Knowledge::new(ctx, cfg);
    known.settle(&pending);
    let mut bounds: Vec<BoundEntry> = pending
        .into_iter()
        .map(|p| BoundEntry::new(p.name, p.kind, p.value, known.observe(p.target)))
        .collect();
    // keep the report in the order the bounds are listed above
    if !not_applicable.is_empty() {
        let at = bounds.iter().position(|b| b.name == "delta_plus_one").unwrap_or(bounds.len());
        bounds.splice(at..at, not_applicable);
    }
    BoundReport {
        semigroup: s.clone(),
        exact: known.star.exact.then_some(known.star.lower),
        enumerated: known.enumerated,
        bounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 9), 10);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn dedekind_bound_values() {
        // type 3
        let s = sg(&[4, 5, 6, 7]);
        assert_eq!(s.type_number(), 3);
        assert_eq!(bound_dedekind_type(&s).unwrap(), 5);
        assert_eq!(bound_sum_dedekind(&s).unwrap(), 12);
        assert_eq!(bound_delta(&s), 4);
        // type 2
        let s = sg(&[3, 4, 5]);
        assert_eq!(bound_dedekind_type(&s).unwrap(), 2);
        assert_eq!(bound_sum_dedekind(&s).unwrap(), 3);
        assert_eq!(bound_delta(&s), 3);
        // type 4: <5,6,7,8,9>
        let s = sg(&[5, 6, 7, 8, 9]);
        assert_eq!(s.type_number(), 4);
        assert_eq!(bound_sum_dedekind(&s).unwrap(), 49);
    }

    #[test]
    fn t_dedekind_applicability() {
        // T(<3,4,5>) = {1, 2}, both below μ
        assert_eq!(bound_t_dedekind(&sg(&[3, 4, 5])).unwrap(), None);
        // T(<4,9,10,11>) = {5,6,7}: (2·3−1)·D(2) − 9 + 1 = 22
        let s = sg(&[4, 9, 10, 11]);
        assert!(s.type_set().iter().all(|&x| x > 4), "{:?}", s.type_set());
        assert_eq!(bound_t_dedekind(&s).unwrap(), Some(5 * 6 - 8));
        // T(<3,7,11>) = {4, 8}: (2·2−1)·D(1) − 6 + 1 = 4
        let s = sg(&[3, 7, 11]);
        assert_eq!(s.type_set(), &[4, 8]);
        assert_eq!(bound_t_dedekind(&s).unwrap(), Some(4));
    }

    #[test]
    fn mu3() {
        assert_eq!(formula_mu3(1, 1), 3);
        assert_eq!(formula_mu3(2, 2), 10);
        assert_eq!(formula_mu3(6, 3), 10);
        assert_eq!(mu3_parameters(&sg(&[3, 4, 5])), Some((1, 1)));
        assert_eq!(mu3_parameters(&sg(&[3, 7, 8])), Some((2, 2)));
        assert_eq!(mu3_parameters(&sg(&[3, 11, 19])), Some((6, 3)));
        assert_eq!(mu3_parameters(&sg(&[4, 5, 6, 7])), None);
        assert_eq!(mu3_semigroup(1, 1).unwrap(), sg(&[3, 4, 5]));
        // 3·3+2 = 11 = 4 + 7 is not a minimal generator of <3,4,11>
        assert!(mu3_semigroup(1, 3).is_none());
    }

    #[test]
    fn pseudosym() {
        assert_eq!(pseudosym_family(3), sg(&[3, 5, 7]));
        assert_eq!(pseudosym_family(4), sg(&[4, 5, 7]));
        for mu in 3..=7 {
            let s = pseudosym_family(mu);
            assert!(s.is_pseudosymmetric());
            assert!(is_pseudosym_family(&s));
            assert_eq!(s.multiplicity(), mu);
        }
        assert_eq!(formula_pseudosym_2mu2(3).unwrap(), 4);
        assert_eq!(formula_pseudosym_2mu2(4).unwrap(), 7);
        assert_eq!(formula_pseudosym_2mu2(5).unwrap(), 21);
        assert!(!is_pseudosym_family(&sg(&[4, 7, 9])));
    }

    #[test]
    fn xi_bounds() {
        assert_eq!(bound_xi_mu(10, 3), 36);
        assert_eq!(bound_xi_mu(10, 4), 84);
        assert_eq!(bound_xi_mu(2, 3), 0);
    }

    #[test]
    fn small_classifications() {
        let b = Budget::default();
        assert!(classify_up_to(2, &b).unwrap().is_empty());
        let rows = classify_up_to(3, &b).unwrap();
        assert_eq!(rows, vec![(sg(&[3, 4, 5]), 3)]);
        let rows = classify_up_to(7, &b).unwrap();
        let got: Vec<(String, u64)> = rows.iter().map(|(s, c)| (s.to_string(), *c)).collect();
        assert_eq!(
            got,
            vec![
                ("<3,4,5>".to_string(), 3),
                ("<3,5,7>".to_string(), 4),
                ("<3,7,11>".to_string(), 6),
                ("<3,8,13>".to_string(), 7),
                ("<4,5,7>".to_string(), 7),
            ]
        );
    }

    #[test]
    fn report_4567() {
        let r = verify_bounds(&sg(&[4, 5, 6, 7]), &Budget::default(), &VerifyConfig::default()).unwrap();
        assert_eq!(r.exact, Some(14));
        assert!(r.all_satisfied(), "{:#?}", r.bounds);
        assert_eq!(r.violations().count(), 0);
        let names: Vec<&str> = r.bounds.iter().map(|b| b.name.as_str()).collect();
        for n in ["dedekind_type", "sum_dedekind", "delta_plus_one", "qm_frobenius", "qm_zero", "q_antichain_sum"] {
            assert!(names.contains(&n), "{n}");
        }
        assert_eq!(r.csv_rows().len(), r.bounds.len());
        assert!(r.csv_rows()[0].starts_with("\"<4,5,6,7>\",3,4,3,14,dedekind_type,5,true,true"));
    }

    #[test]
    fn report_symmetric() {
        let r = verify_bounds(&sg(&[3, 5]), &Budget::default(), &VerifyConfig::default()).unwrap();
        assert_eq!(r.exact, Some(1));
        assert!(r.all_satisfied());
    }

    #[test]
    fn capped_report_is_honest() {
        let cfg = VerifyConfig {
            count_cap: 5,
            exact_states: 0,
            enumeration_limit: 5,
            targeted_work: 3,
            q_limit: 128,
        };
        let r = verify_bounds(&sg(&[4, 5, 6, 7]), &Budget::default(), &cfg).unwrap();
        assert_eq!(r.exact, None);
        assert_eq!(r.violations().count(), 0);
        // 6 operations seen cannot certify |Star| ≥ 12
        let sum = r.bounds.iter().find(|b| b.name == "sum_dedekind").unwrap();
        assert_eq!(sum.status, BoundStatus::Undetermined);
        let delta = r.bounds.iter().find(|b| b.name == "delta_plus_one").unwrap();
        assert_eq!(delta.status, BoundStatus::Satisfied);
    }

    #[test]
    fn exact_counter_completes_capped_report() {
        let cfg = VerifyConfig {
            count_cap: 5,
            enumeration_limit: 5,
            targeted_work: 3,
            ..VerifyConfig::default()
        };
        let r = verify_bounds(&sg(&[4, 5, 6, 7]), &Budget::default(), &cfg).unwrap();
        assert_eq!(r.exact, Some(14));
        assert_eq!(r.enumerated, 6);
        assert!(r.all_satisfied());
    }
}
