//! Exact counting of star operations without listing them.
//!
//! The ideals of `G₀` closed under a star operation form a down-set `D` of
//! the star order, and the operation is determined by `D`. A down-set arises
//! this way iff every `y ∉ D` stays non-closed under `★_D`, that is, some
//! point `z ∈ y^v ∖ y` survives every `x ∈ D`. Writing
//! `K(y, z) = {x : z ∉ y^{★_x}}` (an up-set), the condition for `y` reads:
//!
//! > `y ∈ D`, or `D ∩ K(y, z) = ∅` for some `z`.
//!
//! Counting down-sets subject to these disjunctions is done by branching on
//! an undecided element (taking its down-set, or discarding its up-set) and
//! memoizing on the residual problem: the undecided set together with the
//! constraints restricted to it.

use rustc_hash::FxHashMap;

use crate::error::LimitExceeded;
use crate::star::StarContext;

const WORDS: usize = 4;
/// Largest `|G₀|` handled.
pub const MAX_ELEMENTS: usize = 64 * WORDS;

type Set = [u64; WORDS];

#[inline]
fn and(a: &Set, b: &Set) -> Set {
    std::array::from_fn(|i| a[i] & b[i])
}

#[inline]
fn andnot(a: &Set, b: &Set) -> Set {
    std::array::from_fn(|i| a[i] & !b[i])
}

#[inline]
fn or(a: &Set, b: &Set) -> Set {
    std::array::from_fn(|i| a[i] | b[i])
}

#[inline]
fn is_empty(a: &Set) -> bool {
    a.iter().all(|&w| w == 0)
}

#[inline]
fn meets(a: &Set, b: &Set) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
fn subset(a: &Set, b: &Set) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[inline]
fn has(a: &Set, k: usize) -> bool {
    a[k / 64] >> (k % 64) & 1 == 1
}

#[inline]
fn put(a: &mut Set, k: usize) {
    a[k / 64] |= 1 << (k % 64);
}

fn count_ones(a: &Set) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

fn elements(a: &Set) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + b
            })
        })
    })
}

/// Residual constraints, flattened: each record is a header word (the
/// still-undecided `y` whose inclusion would satisfy it, or [`CLOSED`],
/// plus the number of alternatives shifted by 16) followed by the
/// alternatives, `WORDS` words each. Records are kept sorted so equal
/// residual problems have equal representations.
type Constraints = Vec<u64>;

const CLOSED: u64 = 0xFFFF;

fn header(open: Option<usize>, alternatives: usize) -> u64 {
    open.map_or(CLOSED, |y| y as u64) | (alternatives as u64) << 16
}

/// Iterates `(open, alternatives)` over the records of `cons`.
fn records(cons: &[u64]) -> impl Iterator<Item = (Option<usize>, &[u64])> {
    let mut rest = cons;
    std::iter::from_fn(move || {
        let (&h, tail) = rest.split_first()?;
        let len = (h >> 16) as usize * WORDS;
        let (alts, tail) = tail.split_at(len);
        rest = tail;
        let open = (h & CLOSED != CLOSED).then_some((h & CLOSED) as usize);
        Some((open, alts))
    })
}

fn sets(alts: &[u64]) -> impl Iterator<Item = Set> + '_ {
    alts.chunks_exact(WORDS).map(|c| c.try_into().expect("WORDS words"))
}

fn canonical(cons: &[u64]) -> Constraints {
    let mut recs: Vec<&[u64]> = Vec::new();
    let mut at = 0;
    while at < cons.len() {
        let len = 1 + (cons[at] >> 16) as usize * WORDS;
        recs.push(&cons[at..at + len]);
        at += len;
    }
    recs.sort_unstable();
    recs.dedup();
    recs.concat()
}

/// Memo key: `u`, then each record with its alternatives packed into
/// `⌈|u|/64⌉` words by rank within `u` (they are subsets of `u`).
fn key(u: &Set, cons: &[u64]) -> Box<[u64]> {
    let mut base = [0u32; WORDS];
    for w in 1..WORDS {
        base[w] = base[w - 1] + u[w - 1].count_ones();
    }
    let size = base[WORDS - 1] + u[WORDS - 1].count_ones();
    let packed = (size as usize).div_ceil(64).max(1);
    let mut out = Vec::with_capacity(WORDS + cons.len());
    out.extend_from_slice(u);
    for (open, alts) in records(cons) {
        let n = alts.len() / WORDS;
        out.push(header(open, n));
        for a in sets(alts) {
            let at = out.len();
            out.resize(at + packed, 0);
            for x in elements(&a) {
                let (w, b) = (x / 64, x % 64);
                let r = (base[w] + (u[w] & ((1u64 << b) - 1)).count_ones()) as usize;
                out[at + r / 64] |= 1 << (r % 64);
            }
        }
    }
    out.into_boxed_slice()
}

struct Problem {
    up: Vec<Set>,
    down: Vec<Set>,
    memo: FxHashMap<Box<[u64]>, u128>,
    max_states: usize,
}

impl Problem {
    /// Applies the inclusion of `d` (a down-set inside `u`) and the removal
    /// of `e` (an up-set inside `u`) to a residual problem, propagating
    /// forced inclusions. `None` when some constraint became unsatisfiable.
    fn simplify(&self, mut u: Set, cons: &[u64], d: Set, e: Set) -> Option<(Set, Constraints)> {
        let mut added = d;
        u = andnot(&andnot(&u, &d), &e);
        let mut current: Constraints = Vec::new();
        let mut first = true;
        let mut alts: Vec<Set> = Vec::new();
        loop {
            let input: &[u64] = if first { cons } else { &current };
            let mut next = Vec::with_capacity(input.len());
            let mut forced: Set = [0; WORDS];
            for (open, old) in records(input) {
                if open.is_some_and(|y| has(&added, y)) {
                    continue;
                }
                alts.clear();
                let mut satisfied = false;
                for a in sets(old) {
                    if meets(&a, &added) {
                        continue;
                    }
                    let r = and(&a, &u);
                    if is_empty(&r) {
                        satisfied = true;
                        break;
                    }
                    alts.push(r);
                }
                if satisfied {
                    continue;
                }
                let open = open.filter(|&y| has(&u, y));
                if alts.is_empty() {
                    {
                        let y = open?;
                        put(&mut forced, y);
                        continue;
                    }
                }
                alts.sort_unstable();
                alts.dedup();
                let at = next.len();
                next.push(0);
                let mut kept = 0;
                for a in &alts {
                    if !alts.iter().any(|b| b != a && subset(b, a)) {
                        next.extend_from_slice(a);
                        kept += 1;
                    }
                }
                next[at] = header(open, kept);
            }
            current = next;
            first = false;
            if is_empty(&forced) {
                break;
            }
            let mut closure: Set = [0; WORDS];
            for y in elements(&forced) {
                closure = or(&closure, &self.down[y]);
            }
            let closure = and(&closure, &u);
            u = andnot(&u, &closure);
            added = closure;
        }
        Some((u, canonical(&current)))
    }

    /// Splits `u` into parts that share no comparability and no constraint.
    fn components(&self, u: &Set, cons: &[u64]) -> Vec<(Set, Constraints)> {
        let recs: Vec<(Set, usize, usize)> = {
            let mut at = 0;
            records(cons)
                .map(|(open, alts)| {
                    let mut sup = sets(alts).fold([0; WORDS], |acc, a| or(&acc, &a));
                    if let Some(y) = open {
                        put(&mut sup, y);
                    }
                    let len = 1 + alts.len();
                    at += len;
                    (sup, at - len, len)
                })
                .collect()
        };
        let mut rest = *u;
        let mut used = vec![false; recs.len()];
        let mut parts = Vec::new();
        loop {
            let Some(first) = elements(&rest).next() else { break };
            let mut comp: Set = [0; WORDS];
            put(&mut comp, first);
            let mut frontier = comp;
            let mut part = Vec::new();
            loop {
                let mut grow: Set = [0; WORDS];
                for x in elements(&frontier) {
                    grow = or(&grow, &or(&self.up[x], &self.down[x]));
                }
                for (k, (sup, at, len)) in recs.iter().enumerate() {
                    if !used[k] && meets(sup, &frontier) {
                        used[k] = true;
                        part.extend_from_slice(&cons[*at..at + len]);
                        grow = or(&grow, sup);
                    }
                }
                let grow = andnot(&and(&grow, u), &comp);
                if is_empty(&grow) {
                    break;
                }
                comp = or(&comp, &grow);
                frontier = grow;
            }
            parts.push((comp, canonical(&part)));
            rest = andnot(&rest, &comp);
        }
        parts
    }

    fn count(&mut self, u: Set, cons: Constraints) -> Result<u128, LimitExceeded> {
        if is_empty(&u) {
            return Ok(1);
        }
        let k = key(&u, &cons);
        if let Some(&c) = self.memo.get(&k) {
            return Ok(c);
        }
        if self.memo.len() >= self.max_states {
            return Err(LimitExceeded::new("counting states", self.max_states as u64));
        }
        let parts = self.components(&u, &cons);
        let total = if parts.len() > 1 {
            let mut product = 1u128;
            for (pu, pc) in parts {
                product *= self.count(pu, pc)?;
                if product == 0 {
                    break;
                }
            }
            product
        } else {
            self.branch(&u, &cons)?
        };
        self.memo.insert(k, total);
        Ok(total)
    }

    /// Either all of `↓x` is closed, or none of `↑x` is. `x` is chosen
    /// comparable to as much of `u` as possible.
    fn branch(&mut self, u: &Set, cons: &[u64]) -> Result<u128, LimitExceeded> {
        let x = elements(u)
            .max_by_key(|&x| {
                let reach = count_ones(&and(&or(&self.down[x], &self.up[x]), u));
                (reach, std::cmp::Reverse(x))
            })
            .expect("nonempty");
        let mut total = 0u128;
        let take = and(&self.down[x], u);
        if let Some((u2, c2)) = self.simplify(*u, cons, take, [0; WORDS]) {
            total += self.count(u2, c2)?;
        }
        let drop = and(&self.up[x], u);
        if let Some((u2, c2)) = self.simplify(*u, cons, [0; WORDS], drop) {
            total += self.count(u2, c2)?;
        }
        Ok(total)
    }
}

/// `|Star(S)|` restricted to operations whose closed nondivisorial ideals
/// lie in `allowed` (`G₀` positions; must be a down-set), or all of them.
/// Gives up after `max_states` memoized subproblems.
pub fn count_exact(
    ctx: &StarContext,
    allowed: Option<&crate::bitset::BitSet>,
    max_states: usize,
) -> Result<u128, LimitExceeded> {
    let poset = ctx.poset();
    let m = poset.len();
    if m > MAX_ELEMENTS {
        return Err(LimitExceeded::new("nondivisorial ideals", MAX_ELEMENTS as u64));
    }
    let to_set = |b: &crate::bitset::BitSet| {
        let mut s: Set = [0; WORDS];
        for k in b.iter() {
            put(&mut s, k);
        }
        s
    };
    let up: Vec<Set> = (0..m).map(|p| to_set(poset.up_set(p))).collect();
    let down: Vec<Set> = (0..m).map(|p| to_set(poset.down_set(p))).collect();
    let space = ctx.space();
    let v = ctx.v_table();
    let idx: Vec<usize> = (0..m).map(|p| poset.space_index(p) as usize).collect();
    let mut cons: Constraints = Vec::new();
    for (y, &ky) in idx.iter().enumerate() {
        let missing = v[ky] & !space.ideal(ky as u32).bits();
        cons.push(header(Some(y), missing.count_ones() as usize));
        let mut bits = missing;
        while bits != 0 {
            let z = bits.trailing_zeros();
            bits &= bits - 1;
            let mut k: Set = [0; WORDS];
            for x in 0..m {
                if ctx.principal_table(x)[ky] >> z & 1 == 0 {
                    put(&mut k, x);
                }
            }
            cons.extend_from_slice(&k);
        }
    }
    let mut all: Set = [0; WORDS];
    for p in 0..m {
        put(&mut all, p);
    }
    let u = match allowed {
        Some(a) => and(&all, &to_set(a)),
        None => all,
    };
    let mut problem = Problem {
        up,
        down,
        memo: FxHashMap::default(),
        max_states,
    };
    let excluded = andnot(&all, &u);
    match problem.simplify(all, &cons, [0; WORDS], excluded) {
        None => Ok(0),
        Some((u, cons)) => problem.count(u, cons),
    }
}

/// `qm` of the principal operation of each `G₀` position: the largest `a`
/// such that its down-set meets `Q_a`.
pub(crate) fn principal_qm(ctx: &StarContext) -> Vec<u32> {
    let poset = ctx.poset();
    (0..poset.len())
        .map(|p| {
            poset
                .down_set(p)
                .iter()
                .filter_map(|q| ctx.q_index_of(poset.space_index(q)))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Exact number of star operations with `qm(★) ≤ y`.
pub fn count_exact_qm_at_most(ctx: &StarContext, y: u32, max_states: usize) -> Result<u128, LimitExceeded> {
    let qm = principal_qm(ctx);
    let mut allowed = crate::bitset::BitSet::new(qm.len());
    for (p, _) in qm.iter().enumerate().filter(|(_, &q)| q <= y) {
        allowed.insert(p);
    }
    count_exact(ctx, Some(&allowed), max_states)
}

/// Exact `|S_y|`, the number of star operations with `qm(★) = y`.
pub fn count_exact_with_qm(ctx: &StarContext, y: u32, max_states: usize) -> Result<u128, LimitExceeded> {
    let at_most = count_exact_qm_at_most(ctx, y, max_states)?;
    let below = match y.checked_sub(1) {
        Some(x) => count_exact_qm_at_most(ctx, x, max_states)?,
        None => 0,
    };
    Ok(at_most - below)
}

/// `|Star(S)|` by enumeration when there are at most
/// `budget.max_star_operations`, by the exact counter otherwise.
pub fn star_count(ctx: &StarContext, budget: &crate::Budget) -> Result<u128, LimitExceeded> {
    let listed = crate::enumeration::count_star_operations_capped(ctx, budget.max_star_operations);
    if listed.complete {
        return Ok(listed.count as u128);
    }
    count_exact(ctx, None, budget.max_counting_states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Budget, NumericalSemigroup};

    #[test]
    fn matches_enumeration() {
        for s in crate::enumerate_semigroups(6) {
            let ctx = StarContext::new(&s, &Budget::default()).unwrap();
            let listed = crate::enumeration::count_star_operations_capped(&ctx, 300_000);
            if !listed.complete {
                continue;
            }
            assert_eq!(count_exact(&ctx, None, 1 << 22).unwrap(), listed.count as u128, "{s:?}");
        }
    }

    #[test]
    fn known_values() {
        let s = NumericalSemigroup::from_generators(&[4, 5, 6, 7]).unwrap();
        let ctx = StarContext::new(&s, &Budget::default()).unwrap();
        assert_eq!(count_exact(&ctx, None, 1000).unwrap(), 14);
    }

    #[test]
    fn star_count_switches_to_counting() {
        let s = NumericalSemigroup::from_generators(&[5, 6, 7, 8, 9]).unwrap();
        let ctx = StarContext::new(&s, &Budget::default()).unwrap();
        let small = Budget {
            max_star_operations: 10,
            ..Budget::default()
        };
        assert_eq!(star_count(&ctx, &small).unwrap(), 163);
        let tiny = Budget {
            max_counting_states: 1,
            ..small
        };
        assert!(star_count(&ctx, &tiny).is_err());
    }

    #[test]
    fn qm_restricted_counts_match_search() {
        for s in crate::enumerate_semigroups(6).filter(|s| !s.is_symmetric()) {
            let ctx = StarContext::new(&s, &Budget::default()).unwrap();
            let listed = crate::enumeration::count_star_operations_capped(&ctx, 200_000);
            if !listed.complete {
                continue;
            }
            for y in 0..=s.frobenius() as u32 {
                let expected = listed.by_qm.get(&y).copied().unwrap_or(0) as u128;
                assert_eq!(count_exact_with_qm(&ctx, y, 1 << 22).unwrap(), expected, "{s} y={y}");
            }
        }
    }
}
