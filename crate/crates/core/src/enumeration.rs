//! Antichains of finite posets and the exact census of `Star(S)`.
//!
//! Star operations correspond bijectively to *valid* antichains of
//! `(G₀, ≤★)`: antichains `Δ` with `A(★_Δ) = Δ`. The census walks `G₀` from
//! the top of the star order down, deciding for each ideal whether it is a
//! maximal closed ideal. An ideal already closed by the current choice and
//! not below a chosen one is forced in; an ideal below a chosen one is
//! skipped; and a branch dies as soon as some skipped ideal becomes closed.
//! Each surviving leaf is exactly one star operation, so no deduplication is
//! needed — a hash of closed families is still kept in debug builds.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{LimitExceeded, PosetError};
use crate::semigroup::{Mask, NumericalSemigroup, SemigroupSummary};
use crate::star::{StarContext, StarOperation, StarOperationJson};
use crate::Budget;

/// A finite partial order given by its relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    leq: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(leq: Vec<Vec<bool>>, labels: Vec<String>) -> Result<Self, PosetError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) || labels.len() != n {
            return Err(PosetError::Shape);
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(PosetError::NotReflexive(a));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
                if !leq[a][b] {
                    continue;
                }
                if let Some(c) = (0..n).find(|&c| leq[b][c] && !leq[a][c]) {
                    return Err(PosetError::NotTransitive(a, b, c));
                }
            }
        }
        Ok(Poset { leq, labels })
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        Poset {
            leq,
            labels: (0..n).map(|k| k.to_string()).collect(),
        }
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Poset {
            leq,
            labels: (0..n).map(|k| k.to_string()).collect(),
        }
    }

    /// Subsets of an `n`-element set under inclusion; element `k` is the
    /// subset with bit pattern `k`.
    pub fn powerset(n: u32) -> Self {
        let size = 1usize << n;
        let leq = (0..size)
            .map(|a| (0..size).map(|b| a & !b == 0).collect())
            .collect();
        Poset {
            leq,
            labels: (0..size).map(|k| format!("{k:b}")).collect(),
        }
    }

    /// Finite sets ordered by inclusion (duplicates are kept apart only if
    /// they differ).
    pub fn inclusion<T: Clone + Ord>(sets: &[std::collections::BTreeSet<T>]) -> Self {
        let leq = sets
            .iter()
            .map(|a| sets.iter().map(|b| a.is_subset(b)).collect())
            .collect();
        Poset {
            leq,
            labels: (0..sets.len()).map(|k| k.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    fn comparability_sets(&self) -> Vec<BitSet> {
        let n = self.len();
        (0..n)
            .map(|a| (0..n).filter(|&b| self.comparable(a, b)).collect_set(n))
            .collect()
    }

    pub fn is_antichain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(i, &a)| elems[i + 1..].iter().all(|&b| !self.comparable(a, b)))
    }
}

trait CollectSet {
    fn collect_set(self, n: usize) -> BitSet;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, n: usize) -> BitSet {
        let mut b = BitSet::new(n);
        for k in self {
            b.insert(k);
        }
        b
    }
}

/// Every antichain of `p` exactly once, `∅` first, then in lexicographic
/// order of sorted element lists.
pub fn enumerate_antichains(p: &Poset, limit: usize) -> Result<Antichains<'_>, LimitExceeded> {
    if p.len() > limit {
        return Err(LimitExceeded::new("poset size", limit as u64));
    }
    Ok(Antichains {
        comp: p.comparability_sets(),
        n: p.len(),
        current: Vec::new(),
        forbidden: vec![BitSet::new(p.len())],
        started: false,
        _p: std::marker::PhantomData,
    })
}

pub struct Antichains<'a> {
    comp: Vec<BitSet>,
    n: usize,
    current: Vec<usize>,
    /// `forbidden[k]`: elements comparable to one of the first `k` chosen.
    forbidden: Vec<BitSet>,
    started: bool,
    _p: std::marker::PhantomData<&'a Poset>,
}

impl Antichains<'_> {
    fn allowed_from(&self, start: usize) -> Option<usize> {
        let f = self.forbidden.last().expect("forbidden stack is never empty");
        (start..self.n).find(|&y| !f.contains(y))
    }

    fn push(&mut self, y: usize) {
        let mut f = self.forbidden.last().expect("nonempty").clone();
        f.union_with(&self.comp[y]);
        self.current.push(y);
        self.forbidden.push(f);
    }
}

impl Iterator for Antichains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        let start = self.current.last().map_or(0, |&l| l + 1);
        if let Some(y) = self.allowed_from(start) {
            self.push(y);
            return Some(self.current.clone());
        }
        loop {
            let x = self.current.pop()?;
            self.forbidden.pop();
            if let Some(y) = self.allowed_from(x + 1) {
                self.push(y);
                return Some(self.current.clone());
            }
        }
    }
}

/// `ω(P)`, the number of antichains of `p` (including `∅`).
pub fn count_antichains(p: &Poset, limit: usize) -> Result<u128, LimitExceeded> {
    if p.len() > limit {
        return Err(LimitExceeded::new("poset size", limit as u64));
    }
    count_antichains_unchecked(p)
}

fn count_antichains_unchecked(p: &Poset) -> Result<u128, LimitExceeded> {
    let n = p.len();
    if n > 128 {
        return Err(LimitExceeded::new("poset size", 128));
    }
    let comp: Vec<u128> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| p.comparable(a, b))
                .fold(0u128, |m, b| m | 1 << b)
        })
        .collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(count_rec(all, &comp, &mut memo))
}

/// Antichains inside `rest`: either the chosen element `x` is left out, or
/// it is taken and everything comparable to it disappears. Components of
/// the comparability graph restricted to `rest` multiply.
fn count_rec(rest: u128, comp: &[u128], memo: &mut HashMap<u128, u128>) -> u128 {
    if rest == 0 {
        return 1;
    }
    if rest & (rest - 1) == 0 {
        return 2;
    }
    if let Some(&c) = memo.get(&rest) {
        return c;
    }
    let first = rest.trailing_zeros() as usize;
    let mut component = 1u128 << first;
    let mut frontier = component;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = comp[x] & rest & !component;
        component |= new;
        frontier |= new;
    }
    let result = if component != rest {
        count_rec(component, comp, memo) * count_rec(rest & !component, comp, memo)
    } else {
        let mut best = first;
        let mut best_deg = 0;
        let mut scan = rest;
        while scan != 0 {
            let x = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let d = (comp[x] & rest).count_ones();
            if d > best_deg {
                best = x;
                best_deg = d;
            }
        }
        let without = rest & !(1u128 << best);
        count_rec(without, comp, memo) + count_rec(rest & !comp[best], comp, memo)
    };
    memo.insert(rest, result);
    result
}

/// Largest `n` accepted by [`dedekind`].
pub const DEDEKIND_MAX: u32 = 6;

/// `D(n)`: antichains in the powerset of an `n`-element set.
pub fn dedekind(n: u32) -> Result<u128, LimitExceeded> {
    if n > DEDEKIND_MAX {
        return Err(LimitExceeded::new("dedekind argument", DEDEKIND_MAX as u64));
    }
    count_antichains_unchecked(&Poset::powerset(n))
}

/// Exact census of `Star(S)`.
#[derive(Clone, Debug)]
pub struct StarCensus {
    pub semigroup: NumericalSemigroup,
    pub count: u64,
    /// Sorted by `(A(★), closed family)`.
    pub operations: Vec<StarOperation>,
    /// `x ↦ |{★ : qm(★) = x}|`.
    pub by_qm: BTreeMap<u32, u64>,
    /// `ω(G₀, ≤★)` when the star order is small enough to count.
    pub omega: Option<u128>,
    pub all_atoms: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StarCensusJson {
    pub semigroup: SemigroupSummary,
    pub star_count: u64,
    pub omega: Option<u128>,
    pub all_atoms: bool,
    pub by_qm: BTreeMap<String, u64>,
    pub operations: Vec<StarOperationJson>,
}

impl StarCensus {
    /// `ctx` must be the context the census was computed in.
    pub fn to_json(&self, ctx: &StarContext) -> StarCensusJson {
        StarCensusJson {
            semigroup: self.semigroup.summary(),
            star_count: self.count,
            omega: self.omega,
            all_atoms: self.all_atoms,
            by_qm: self.by_qm.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            operations: self.operations.iter().map(|op| op.to_json(ctx)).collect(),
        }
    }
}

/// Result of a counting run that may stop at a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCount {
    /// Exact when `complete`; otherwise a certified lower bound above the cap.
    pub count: u64,
    pub by_qm: BTreeMap<u32, u64>,
    pub complete: bool,
}

/// Everything the search over valid antichains needs, in `G₀` positions.
struct Search<'a> {
    ctx: &'a StarContext,
    /// Positions in processing order (top of the star order first).
    order: Vec<usize>,
    /// `G₀` masks.
    ideal: Vec<Mask>,
    /// `principal[p][q]`: closure of element `q` under `★_p`.
    principal: Vec<Vec<Mask>>,
    down: Vec<BitSet>,
    /// Largest `Q` index below each element (0 if none).
    qdown: Vec<u32>,
    /// When set, only these elements may enter the antichain.
    allowed: Option<BitSet>,
}

/// Branching depth below which both subtrees are handed to rayon.
const PARALLEL_DEPTH: usize = 10;

enum Settled {
    Leaf,
    Branch(usize),
    /// A forbidden ideal was forced into the antichain.
    Dead,
}

#[derive(Clone)]
struct Node {
    step: usize,
    table: Vec<Mask>,
    covered: BitSet,
    chosen: Vec<usize>,
    /// Processed, not covered, not chosen.
    skipped: Vec<usize>,
}

trait Visitor: Send + Sync {
    /// Returns `false` to stop the whole search.
    fn leaf(&self, search: &Search<'_>, node: &Node) -> bool;
}

impl<'a> Search<'a> {
    fn new(ctx: &'a StarContext) -> Self {
        let poset = ctx.poset();
        let m = poset.len();
        let space = ctx.space();
        let idx: Vec<usize> = (0..m).map(|p| poset.space_index(p) as usize).collect();
        let ideal: Vec<Mask> = idx.iter().map(|&k| space.ideal(k as u32).bits()).collect();
        let principal = (0..m)
            .map(|p| {
                let t = ctx.principal_table(p);
                idx.iter().map(|&k| t[k]).collect()
            })
            .collect();
        let down: Vec<BitSet> = (0..m).map(|p| poset.down_set(p).clone()).collect();
        let qdown = crate::counting::principal_qm(ctx);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&p| (std::cmp::Reverse(down[p].count()), p));
        Search {
            ctx,
            order,
            ideal,
            principal,
            down,
            qdown,
            allowed: None,
        }
    }

    /// Restricts the search to operations with `qm ≤ y`. The elements
    /// whose down-set meets some `Q_a` with `a > y` form an up-set, so
    /// those operations are exactly the valid antichains avoiding it.
    fn with_qm_at_most(mut self, y: u32) -> Self {
        let m = self.ideal.len();
        let mut allowed = BitSet::new(m);
        for p in (0..m).filter(|&p| self.qdown[p] <= y) {
            allowed.insert(p);
        }
        self.allowed = Some(allowed);
        self
    }

    fn root(&self) -> Node {
        let v = self.ctx.v_table();
        let m = self.ideal.len();
        Node {
            step: 0,
            table: (0..m)
                .map(|p| v[self.ctx.poset().space_index(p) as usize])
                .collect(),
            covered: BitSet::new(m),
            chosen: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn include(&self, node: &mut Node, x: usize) -> bool {
        for (t, &px) in node.table.iter_mut().zip(&self.principal[x]) {
            *t &= px;
        }
        node.covered.union_with(&self.down[x]);
        node.chosen.push(x);
        node.skipped
            .iter()
            .all(|&y| node.covered.contains(y) || node.table[y] != self.ideal[y])
    }

    /// Advances through forced decisions up to the next real choice.
    fn settle(&self, node: &mut Node) -> Settled {
        while node.step < self.order.len() {
            let x = self.order[node.step];
            if node.covered.contains(x) {
                node.step += 1;
            } else if node.table[x] == self.ideal[x] {
                if !self.is_allowed(x) {
                    return Settled::Dead;
                }
                node.covered.union_with(&self.down[x]);
                node.chosen.push(x);
                node.step += 1;
            } else {
                return Settled::Branch(x);
            }
        }
        Settled::Leaf
    }

    fn is_allowed(&self, x: usize) -> bool {
        self.allowed.as_ref().is_none_or(|a| a.contains(x))
    }

    fn walk<V: Visitor>(&self, mut node: Node, visitor: &V, stop: &AtomicBool, depth: usize) {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let x = match self.settle(&mut node) {
            Settled::Dead => return,
            Settled::Leaf => {
                if !visitor.leaf(self, &node) {
                    stop.store(true, Ordering::Relaxed);
                }
                return;
            }
            Settled::Branch(x) => x,
        };
        node.step += 1;
        let with = self.is_allowed(x).then(|| {
            let mut with = node.clone();
            self.include(&mut with, x).then_some(with)
        });
        node.skipped.push(x);
        match with.flatten() {
            Some(with) if depth < PARALLEL_DEPTH => {
                rayon::join(
                    || self.walk(with, visitor, stop, depth + 1),
                    || self.walk(node, visitor, stop, depth + 1),
                );
            }
            Some(with) => {
                self.walk(with, visitor, stop, depth + 1);
                self.walk(node, visitor, stop, depth + 1);
            }
            None => self.walk(node, visitor, stop, depth + 1),
        }
    }

    fn qm(&self, node: &Node) -> u32 {
        node.chosen.iter().map(|&x| self.qdown[x]).max().unwrap_or(0)
    }

    fn closed_family(&self, node: &Node) -> BitSet {
        let space = self.ctx.space();
        let mut closed = BitSet::new(space.len());
        for k in 0..space.len() as u32 {
            if space.is_divisorial(k) {
                closed.insert(k as usize);
            }
        }
        for p in node.covered.iter() {
            closed.insert(self.ctx.poset().space_index(p) as usize);
        }
        closed
    }
}

struct Counter {
    /// Stop once more than `cap` matching operations were seen.
    cap: u64,
    /// Stop once more than `work_limit` operations of any kind were seen.
    work_limit: u64,
    /// Count only operations with this `qm`.
    target: Option<u32>,
    count: AtomicU64,
    work: AtomicU64,
    by_qm: Vec<AtomicU64>,
}

impl Counter {
    fn new(cap: u64) -> Self {
        Counter {
            cap,
            work_limit: u64::MAX,
            target: None,
            count: AtomicU64::new(0),
            work: AtomicU64::new(0),
            by_qm: (0..=crate::semigroup::MAX_FROBENIUS).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    fn run(self, search: &Search<'_>) -> StarCount {
        let stop = AtomicBool::new(false);
        search.walk(search.root(), &self, &stop, 0);
        let by_qm = self
            .by_qm
            .into_iter()
            .enumerate()
            .map(|(x, c)| (x as u32, c.into_inner()))
            .filter(|&(x, c)| c > 0 && self.target.is_none_or(|t| t == x))
            .collect();
        StarCount {
            count: self.count.into_inner(),
            by_qm,
            complete: !stop.into_inner(),
        }
    }
}

impl Visitor for Counter {
    fn leaf(&self, search: &Search<'_>, node: &Node) -> bool {
        let qm = search.qm(node);
        self.by_qm[qm as usize].fetch_add(1, Ordering::Relaxed);
        let within_work = self.work.fetch_add(1, Ordering::Relaxed) < self.work_limit;
        if self.target.is_none_or(|t| t == qm) {
            self.count.fetch_add(1, Ordering::Relaxed) < self.cap && within_work
        } else {
            within_work
        }
    }
}

/// Lower bounds to certify by enumeration: at least `total` operations,
/// and at least `by_qm[y]` with `qm(★) = y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountGoal {
    pub total: u64,
    pub by_qm: BTreeMap<u32, u64>,
}

struct GoalCounter {
    need: Vec<u64>,
    total: u64,
    work_limit: u64,
    unmet: AtomicU64,
    count: AtomicU64,
    by_qm: Vec<AtomicU64>,
}

impl Visitor for GoalCounter {
    fn leaf(&self, search: &Search<'_>, node: &Node) -> bool {
        let qm = search.qm(node) as usize;
        let seen = self.by_qm[qm].fetch_add(1, Ordering::Relaxed) + 1;
        let mut unmet = u64::MAX;
        if seen == self.need[qm] {
            unmet = self.unmet.fetch_sub(1, Ordering::Relaxed) - 1;
        }
        let count = self.count.fetch_add(1, Ordering::Relaxed) + 1;
        if count == self.total {
            unmet = self.unmet.fetch_sub(1, Ordering::Relaxed) - 1;
        }
        unmet > 0 && count < self.work_limit
    }
}

/// One star operation as seen during the search, in `G₀` positions.
pub struct StarLeaf<'a> {
    /// `A(★)`.
    pub antichain: &'a [usize],
    /// The `★`-closed nondivisorial ideals (a down-set of the star order).
    pub closed: &'a BitSet,
    pub qm: u32,
}

struct FnVisitor<F>(F);

impl<F: Fn(StarLeaf<'_>) -> bool + Send + Sync> Visitor for FnVisitor<F> {
    fn leaf(&self, search: &Search<'_>, node: &Node) -> bool {
        (self.0)(StarLeaf {
            antichain: &node.chosen,
            closed: &node.covered,
            qm: search.qm(node),
        })
    }
}

/// Calls `f` once per star operation until it returns `false`. Returns
/// whether the walk ran to completion. Visiting order is unspecified.
pub fn visit_star_operations<F>(ctx: &StarContext, f: F) -> bool
where
    F: Fn(StarLeaf<'_>) -> bool + Send + Sync,
{
    let search = Search::new(ctx);
    let stop = AtomicBool::new(false);
    search.walk(search.root(), &FnVisitor(f), &stop, 0);
    !stop.into_inner()
}

struct Collector {
    cap: u64,
    found: std::sync::Mutex<Vec<(StarOperation, u32)>>,
}

impl Visitor for Collector {
    fn leaf(&self, search: &Search<'_>, node: &Node) -> bool {
        let closed = search.closed_family(node);
        let mut antichain: Vec<u32> = node
            .chosen
            .iter()
            .map(|&p| search.ctx.poset().space_index(p))
            .collect();
        antichain.sort_unstable();
        let op = StarOperation::from_parts(closed, antichain);
        let mut found = self.found.lock().expect("poisoned");
        found.push((op, search.qm(node)));
        (found.len() as u64) <= self.cap
    }
}

/// Counts star operations, stopping once more than `cap` have been seen.
/// An incomplete count is still a certified lower bound, and so is each
/// entry of its `qm` distribution.
pub fn count_star_operations_capped(ctx: &StarContext, cap: u64) -> StarCount {
    Counter::new(cap).run(&Search::new(ctx))
}

/// Counts the star operations with `qm(★) ≤ y`, stopping above `cap`.
pub fn count_star_operations_qm_at_most(ctx: &StarContext, y: u32, cap: u64) -> StarCount {
    Counter::new(cap).run(&Search::new(ctx).with_qm_at_most(y))
}

/// `|S_y|`, the number of star operations with `qm(★) = y`. Stops after
/// more than `cap` of them, or after visiting more than `work_limit`
/// operations with `qm ≤ y` in total.
pub fn count_star_operations_with_qm(ctx: &StarContext, y: u32, cap: u64, work_limit: u64) -> StarCount {
    let counter = Counter {
        work_limit,
        target: Some(y),
        ..Counter::new(cap)
    };
    counter.run(&Search::new(ctx).with_qm_at_most(y))
}

/// `|Star(S)|` and its `qm` distribution, without materializing operations.
pub fn count_star_operations(ctx: &StarContext, budget: &Budget) -> Result<StarCount, LimitExceeded> {
    let c = count_star_operations_capped(ctx, budget.max_star_operations);
    if c.complete {
        Ok(c)
    } else {
        Err(LimitExceeded::new("star operations", budget.max_star_operations))
    }
}

/// Enumerates until every part of `goal` is reached, or `work_limit`
/// operations were visited. When `goal.total` is zero only operations with
/// `qm` up to the largest targeted value are visited. The result holds
/// the counts seen (certified lower bounds); `complete` means nothing was
/// left out, so those counts are exact.
pub fn count_star_operations_until(ctx: &StarContext, goal: &CountGoal, work_limit: u64) -> StarCount {
    let mut need = vec![0u64; crate::semigroup::MAX_FROBENIUS as usize + 1];
    for (&y, &n) in &goal.by_qm {
        need[y as usize] = n;
    }
    let unmet = need.iter().filter(|&&n| n > 0).count() as u64 + u64::from(goal.total > 0);
    if unmet == 0 {
        return StarCount {
            count: 0,
            by_qm: BTreeMap::new(),
            complete: false,
        };
    }
    let mut search = Search::new(ctx);
    if goal.total == 0 {
        let top = goal.by_qm.iter().filter(|(_, &n)| n > 0).map(|(&y, _)| y).max().unwrap_or(0);
        search = search.with_qm_at_most(top);
    }
    let counter = GoalCounter {
        need,
        total: goal.total,
        work_limit,
        unmet: AtomicU64::new(unmet),
        count: AtomicU64::new(0),
        by_qm: (0..=crate::semigroup::MAX_FROBENIUS).map(|_| AtomicU64::new(0)).collect(),
    };
    let stop = AtomicBool::new(false);
    search.walk(search.root(), &counter, &stop, 0);
    StarCount {
        count: counter.count.into_inner(),
        by_qm: counter
            .by_qm
            .into_iter()
            .enumerate()
            .map(|(y, c)| (y as u32, c.into_inner()))
            .filter(|&(_, c)| c > 0)
            .collect(),
        complete: !stop.into_inner(),
    }
}

/// The full census: every star operation with its closed family.
pub fn enumerate_star_operations(ctx: &StarContext, budget: &Budget) -> Result<StarCensus, LimitExceeded> {
    let search = Search::new(ctx);
    let collector = Collector {
        cap: budget.max_star_operations,
        found: Default::default(),
    };
    let stop = AtomicBool::new(false);
    search.walk(search.root(), &collector, &stop, 0);
    let mut found = collector.found.into_inner().expect("poisoned");
    if found.len() as u64 > budget.max_star_operations {
        return Err(LimitExceeded::new("star operations", budget.max_star_operations));
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    if cfg!(debug_assertions) {
        let distinct: std::collections::HashSet<&BitSet> = found.iter().map(|(op, _)| op.closed()).collect();
        assert_eq!(distinct.len(), found.len(), "valid antichains gave a repeated operation");
    }
    if budget.verify_axioms {
        for (op, _) in &found {
            let table = ctx.table_for(op.antichain());
            assert_eq!(&ctx.closed_from_table(&table), op.closed());
            ctx.check_axioms(&table)
                .unwrap_or_else(|e| panic!("census produced a non-star operation: {e}"));
        }
    }
    let mut by_qm = BTreeMap::new();
    for (_, qm) in &found {
        *by_qm.entry(*qm).or_default() += 1;
    }
    let omega = omega(ctx, budget);
    Ok(StarCensus {
        semigroup: ctx.semigroup().clone(),
        count: found.len() as u64,
        operations: found.into_iter().map(|(op, _)| op).collect(),
        by_qm,
        omega,
        all_atoms: all_atoms_property(ctx),
    })
}

/// `ω(G₀, ≤★)`, or `None` when the star order exceeds the poset budget.
pub fn omega(ctx: &StarContext, budget: &Budget) -> Option<u128> {
    let p = ctx.poset().to_poset(ctx.semigroup());
    count_antichains(&p, budget.max_poset_size).ok()
}

/// Whether every ideal of `F₀(S)` is an atom.
pub fn all_atoms_property(ctx: &StarContext) -> bool {
    ctx.space()
        .nondivisorial()
        .iter()
        .all(|&k| ctx.is_atom(&ctx.space().ideal(k)))
}

/// `ω_⊆(X)`: antichains of a family of ideals under inclusion.
pub fn count_inclusion_antichains(ideals: &[crate::Ideal], limit: usize) -> Result<u128, LimitExceeded> {
    let n = ideals.len();
    let leq = (0..n)
        .map(|a| (0..n).map(|b| ideals[a].is_subset(&ideals[b])).collect())
        .collect();
    let p = Poset {
        leq,
        labels: (0..n).map(|k| k.to_string()).collect(),
    };
    count_antichains(&p, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn ctx(s: &NumericalSemigroup) -> StarContext {
        StarContext::new(s, &Budget::default()).unwrap()
    }

    /// Antichains by filtering all subsets.
    fn brute_antichains(p: &Poset) -> Vec<Vec<usize>> {
        let n = p.len();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|m| (0..n).filter(|&k| m >> k & 1 == 1).collect::<Vec<_>>())
            .filter(|s| p.is_antichain(s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn poset_validation() {
        assert_eq!(
            Poset::new(vec![vec![true, false], vec![false, false]], vec!["a".into(), "b".into()]),
            Err(PosetError::NotReflexive(1))
        );
        assert_eq!(
            Poset::new(vec![vec![true, true], vec![true, true]], vec!["a".into(), "b".into()]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        let t = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            Poset::new(t, vec!["a".into(), "b".into(), "c".into()]),
            Err(PosetError::NotTransitive(0, 1, 2))
        );
        assert_eq!(Poset::new(vec![vec![true]], vec![]), Err(PosetError::Shape));
    }

    #[test]
    fn small_antichain_counts() {
        assert_eq!(enumerate_antichains(&Poset::antichain(0), 40).unwrap().count(), 1);
        assert_eq!(count_antichains(&Poset::antichain(0), 40).unwrap(), 1);
        assert_eq!(enumerate_antichains(&Poset::powerset(2), 40).unwrap().count(), 6);
        for k in 0..8 {
            assert_eq!(count_antichains(&Poset::chain(k), 40).unwrap(), k as u128 + 1);
            assert_eq!(count_antichains(&Poset::antichain(k), 40).unwrap(), 1 << k);
        }
        assert_eq!(count_antichains(&Poset::powerset(3), 40).unwrap(), 20);
        assert!(count_antichains(&Poset::antichain(41), 40).is_err());
        assert!(enumerate_antichains(&Poset::antichain(41), 40).is_err());
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        for p in [Poset::powerset(3), Poset::chain(4), Poset::antichain(4)] {
            let got: Vec<Vec<usize>> = enumerate_antichains(&p, 40).unwrap().collect();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(got, sorted, "lexicographic order");
            assert_eq!(got, brute_antichains(&p));
            assert_eq!(count_antichains(&p, 40).unwrap(), got.len() as u128);
        }
    }

    #[test]
    fn dedekind_values() {
        let d: Vec<u128> = (0..=5).map(|n| dedekind(n).unwrap()).collect();
        assert_eq!(d, vec![2, 3, 6, 20, 168, 7581]);
        assert!(dedekind(7).is_err());
    }

    #[test]
    fn star_order_antichains_4567() {
        let c = ctx(&sg(&[4, 5, 6, 7]));
        let p = c.poset().to_poset(c.semigroup());
        assert_eq!(count_antichains(&p, 40).unwrap(), 14);
        assert_eq!(brute_antichains(&p).len(), 14);
    }

    #[test]
    fn census_examples() {
        let c = ctx(&sg(&[4, 5, 6, 7]));
        let census = enumerate_star_operations(&c, &Budget::default()).unwrap();
        assert_eq!(census.count, 14);
        assert_eq!(census.omega, Some(14));
        assert!(census.all_atoms);
        assert_eq!(census.by_qm.values().sum::<u64>(), 14);

        let c = ctx(&sg(&[5, 6, 7, 8, 9]));
        let census = enumerate_star_operations(&c, &Budget::default()).unwrap();
        assert!((census.count as u128) < census.omega.unwrap());
        assert!(!census.all_atoms);

        for (gens, n) in [(&[2u64, 3][..], 1u64), (&[3, 4, 5], 3), (&[3, 5, 7], 4), (&[3, 7, 8], 10)] {
            let c = ctx(&sg(gens));
            assert_eq!(enumerate_star_operations(&c, &Budget::default()).unwrap().count, n, "{gens:?}");
            assert_eq!(count_star_operations(&c, &Budget::default()).unwrap().count, n);
        }
        assert!(!all_atoms_property(&ctx(&sg(&[4, 6, 7, 9]))));
    }

    #[test]
    fn census_agrees_with_meet_closure() {
        for s in crate::enumerate_semigroups(5) {
            let c = ctx(&s);
            let census = enumerate_star_operations(&c, &Budget::default()).unwrap();
            // every ★_Δ is a meet of v and principal operations
            let m = c.poset().len();
            let mut seen: HashSet<BitSet> = HashSet::new();
            let mut queue = vec![c.table_for(&[])];
            seen.insert(c.closed_from_table(&queue[0]));
            while let Some(t) = queue.pop() {
                for p in 0..m {
                    let pt = c.principal_table(p);
                    let next: Vec<Mask> = t.iter().zip(pt).map(|(a, b)| a & b).collect();
                    if seen.insert(c.closed_from_table(&next)) {
                        queue.push(next);
                    }
                }
            }
            let ours: HashSet<BitSet> = census.operations.iter().map(|o| o.closed().clone()).collect();
            assert_eq!(ours, seen, "{s:?}");
            for op in &census.operations {
                assert_eq!(c.from_closed_family(op.closed().clone()).unwrap().antichain(), op.antichain());
            }
        }
    }

    #[test]
    fn capped_count_stops() {
        let c = ctx(&sg(&[4, 5, 6, 7]));
        let r = count_star_operations_capped(&c, 5);
        assert!(!r.complete);
        assert!(r.count > 5);
        let r = count_star_operations_capped(&c, 14);
        assert!(r.complete);
        assert_eq!(r.count, 14);
        let budget = Budget {
            max_star_operations: 3,
            ..Budget::default()
        };
        assert!(enumerate_star_operations(&c, &budget).is_err());
    }

    #[test]
    fn restricted_counts_match_qm_distribution() {
        for gens in [&[4u64, 5, 6, 7][..], &[5, 6, 7, 8, 9], &[4, 7, 9], &[5, 7, 9, 11, 13]] {
            let c = ctx(&sg(gens));
            let full = count_star_operations_capped(&c, u64::MAX);
            let mut running = 0;
            for y in 0..=c.semigroup().frobenius() as u32 {
                running += full.by_qm.get(&y).copied().unwrap_or(0);
                let r = count_star_operations_qm_at_most(&c, y, u64::MAX);
                assert!(r.complete);
                assert_eq!(r.count, running, "{gens:?} y={y}");
                assert!(r.by_qm.keys().all(|&k| k <= y));
                let exact = count_star_operations_with_qm(&c, y, u64::MAX, u64::MAX);
                assert!(exact.complete);
                assert_eq!(exact.count, full.by_qm.get(&y).copied().unwrap_or(0));
            }
            assert_eq!(running, full.count);
        }
    }

    #[test]
    fn visitor_sees_every_operation() {
        let c = ctx(&sg(&[5, 6, 7, 8, 9]));
        let census = enumerate_star_operations(&c, &Budget::default()).unwrap();
        let seen = std::sync::Mutex::new(Vec::new());
        assert!(visit_star_operations(&c, |leaf| {
            assert!(c.poset().to_poset(c.semigroup()).is_antichain(leaf.antichain));
            seen.lock().unwrap().push(leaf.closed.clone());
            true
        }));
        let seen: HashSet<BitSet> = seen.into_inner().unwrap().into_iter().collect();
        assert_eq!(seen.len() as u64, census.count);
        let calls = std::sync::atomic::AtomicU64::new(0);
        assert!(!visit_star_operations(&c, |_| calls.fetch_add(1, Ordering::Relaxed) < 2));
    }

    #[test]
    fn census_json_shape() {
        let c = ctx(&sg(&[4, 5, 6, 7]));
        let j = serde_json::to_value(enumerate_star_operations(&c, &Budget::default()).unwrap().to_json(&c)).unwrap();
        assert_eq!(j["star_count"], 14);
        assert_eq!(j["omega"], 14);
        assert_eq!(j["all_atoms"], true);
        assert!(j["by_qm"].is_object());
        assert_eq!(j["operations"].as_array().unwrap().len(), 14);
        assert_eq!(j["operations"][0]["antichain"], serde_json::json!([]));
        assert_eq!(j["semigroup"]["generators"], serde_json::json!([4, 5, 6, 7]));
    }
}
