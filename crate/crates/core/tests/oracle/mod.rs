//! Reference implementation used by the integration tests.
//!
//! Everything here is written from the definitions, on plain integer sets,
//! without touching the library's masks, tables or search code: a fractional
//! ideal is a set of integers that is bounded below and contains every
//! integer past some point.

#![allow(dead_code)]

use std::collections::HashMap;

use starsemi::{Ideal, NumericalSemigroup};

/// A subset of ℤ that is bounded below and cofinite upwards: `x` belongs to
/// it iff `x >= lo + finite.len()` or `finite[x - lo]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    lo: i64,
    finite: Vec<bool>,
}

impl Frac {
    /// `{x ∈ [lo, hi) : keep(x)} ∪ [hi, ∞)`.
    pub fn from_pred(lo: i64, hi: i64, keep: impl Fn(i64) -> bool) -> Frac {
        let mut lo = lo;
        let mut finite: Vec<bool> = (lo..hi.max(lo)).map(keep).collect();
        let lead = finite.iter().take_while(|b| !**b).count();
        finite.drain(..lead);
        lo += lead as i64;
        while finite.last() == Some(&true) {
            finite.pop();
        }
        Frac { lo, finite }
    }

    /// `[from, ∞)`.
    pub fn tail(from: i64) -> Frac {
        Frac { lo: from, finite: Vec::new() }
    }

    pub fn naturals() -> Frac {
        Frac::tail(0)
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < self.lo {
            false
        } else {
            self.finite.get((x - self.lo) as usize).copied().unwrap_or(true)
        }
    }

    pub fn min(&self) -> i64 {
        self.lo
    }

    /// Smallest `c` with `[c, ∞)` inside the set.
    pub fn conductor(&self) -> i64 {
        self.lo + self.finite.len() as i64
    }

    fn span(&self, other: &Frac) -> (i64, i64) {
        (self.lo.min(other.lo), self.conductor().max(other.conductor()))
    }

    pub fn intersect(&self, other: &Frac) -> Frac {
        let (lo, hi) = self.span(other);
        Frac::from_pred(lo, hi, |x| self.contains(x) && other.contains(x))
    }

    pub fn union(&self, other: &Frac) -> Frac {
        let (lo, hi) = self.span(other);
        Frac::from_pred(lo, hi, |x| self.contains(x) || other.contains(x))
    }

    pub fn is_subset(&self, other: &Frac) -> bool {
        let (lo, hi) = self.span(other);
        (lo..hi).all(|x| !self.contains(x) || other.contains(x))
    }

    /// `a + X`.
    pub fn shift(&self, a: i64) -> Frac {
        Frac {
            lo: self.lo + a,
            finite: self.finite.clone(),
        }
    }

    /// `(self − other) = {x : x + other ⊆ self}`.
    pub fn quotient(&self, other: &Frac) -> Frac {
        let lo = self.min() - other.min();
        let hi = self.conductor() - other.min();
        Frac::from_pred(lo, hi, |x| {
            x + other.conductor() >= self.conductor()
                && (other.min()..other.conductor()).all(|j| !other.contains(j) || self.contains(x + j))
        })
    }

    /// Elements in `[0, width)` as a bit mask, for sets inside ℕ.
    pub fn mask(&self, width: i64) -> u128 {
        assert!(self.lo >= 0, "mask of a set with negative elements");
        (0..width).filter(|&x| self.contains(x)).fold(0, |m, x| m | 1 << x)
    }
}

/// A numerical semigroup given by generators.
#[derive(Clone, Debug)]
pub struct Sg {
    pub gens: Vec<i64>,
    pub set: Frac,
}

impl Sg {
    pub fn new(gens: &[i64]) -> Sg {
        let bound = 4 * gens.iter().product::<i64>().min(400) + 8;
        let mut member = vec![false; bound as usize];
        member[0] = true;
        for x in 1..bound {
            member[x as usize] = gens.iter().any(|&g| x >= g && member[(x - g) as usize]);
        }
        let set = Frac::from_pred(0, bound, |x| member[x as usize]);
        assert!(set.conductor() < bound / 2, "generators {gens:?} do not have gcd 1");
        Sg {
            gens: gens.to_vec(),
            set,
        }
    }

    /// The same semigroup as a library value, checked against the library's
    /// own gap computation.
    pub fn of(s: &NumericalSemigroup) -> Sg {
        let gens: Vec<i64> = s.min_generators().iter().map(|&g| g as i64).collect();
        let me = Sg::new(&gens);
        assert_eq!(me.gaps(), s.gaps().iter().map(|&g| g as i64).collect::<Vec<_>>());
        me
    }

    pub fn contains(&self, x: i64) -> bool {
        self.set.contains(x)
    }

    pub fn frobenius(&self) -> i64 {
        self.set.conductor() - 1
    }

    pub fn gaps(&self) -> Vec<i64> {
        (0..=self.frobenius()).filter(|&x| !self.contains(x)).collect()
    }

    pub fn multiplicity(&self) -> i64 {
        (1..).find(|&x| self.contains(x)).unwrap()
    }

    /// Pseudo-Frobenius numbers: gaps `x` with `x + (S∖{0}) ⊆ S`.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        self.gaps()
            .into_iter()
            .filter(|&x| self.gens.iter().all(|&g| self.contains(x + g)))
            .collect()
    }

    pub fn is_ideal(&self, i: &Frac) -> bool {
        (i.min()..i.conductor())
            .filter(|&x| i.contains(x))
            .all(|x| self.gens.iter().all(|&g| i.contains(x + g)))
    }

    /// `S ∪ added`.
    pub fn with(&self, added: &[i64]) -> Frac {
        self.set.union(&Frac::from_pred(0, self.frobenius() + 1, |x| added.contains(&x)))
    }

    /// Every ideal `S ⊆ I ⊆ ℕ`, by testing all sets of gaps.
    pub fn f0(&self) -> Vec<Frac> {
        let gaps = self.gaps();
        (0u64..1 << gaps.len())
            .map(|m| {
                let added: Vec<i64> = (0..gaps.len()).filter(|k| m >> k & 1 == 1).map(|k| gaps[k]).collect();
                self.with(&added)
            })
            .filter(|i| self.is_ideal(i))
            .collect()
    }

    /// `(S − (S − J))`.
    pub fn v(&self, j: &Frac) -> Frac {
        self.set.quotient(&self.set.quotient(j))
    }

    /// `J^{★_Δ} = J^v ∩ ⋂_{I ∈ Δ} (I − (I − J))`.
    pub fn close(&self, delta: &[Frac], j: &Frac) -> Frac {
        delta
            .iter()
            .fold(self.v(j), |acc, i| acc.intersect(&i.quotient(&i.quotient(j))))
    }

    /// `I ≤★ J`.
    pub fn leq(&self, i: &Frac, j: &Frac) -> bool {
        self.close(std::slice::from_ref(j), i) == *i
    }

    /// `M_b = {x ∈ ℕ : b − x ∉ S}`.
    pub fn m(&self, b: i64) -> Frac {
        Frac::from_pred(0, b + 1, |x| !self.contains(b - x))
    }

    pub fn lift(&self, i: &Ideal) -> Frac {
        Frac::from_pred(0, self.frobenius() + 1, |x| i.bits() >> x & 1 == 1)
    }

    pub fn lower(&self, s: &NumericalSemigroup, i: &Frac) -> Ideal {
        Ideal::from_bits(s, i.mask(self.frobenius() + 1)).expect("an ideal of F₀")
    }

    /// Whether `I` is an atom: for all `J₁ ∩ J₂ = I` in `F₀`, `I` is
    /// `★_{J₁}`- or `★_{J₂}`-closed.
    pub fn is_atom(&self, i: &Frac, f0: &[Frac]) -> bool {
        let above: Vec<&Frac> = f0.iter().filter(|j| i.is_subset(j) && !self.leq(i, j)).collect();
        above
            .iter()
            .enumerate()
            .all(|(x, a)| above[x..].iter().all(|b| a.intersect(b) != *i))
    }
}

/// The nondivisorial ideals of `F₀(S)` with their star order and closure
/// tables, all as plain bit masks over `[0, g]`.
pub struct OrderTables {
    pub g0: Vec<Frac>,
    pub masks: Vec<u128>,
    pub v: Vec<u128>,
    /// `table[p][k] = (G₀ k)^{★_{G₀ p}}`.
    pub table: Vec<Vec<u128>>,
    /// `below[q]`: positions `p` with `p ≤★ q`.
    pub below: Vec<u64>,
    pub above: Vec<u64>,
    pub index: HashMap<u128, usize>,
}

impl OrderTables {
    pub fn new(sg: &Sg) -> OrderTables {
        let w = sg.frobenius() + 1;
        let g0: Vec<Frac> = sg.f0().into_iter().filter(|j| sg.v(j) != *j).collect();
        assert!(g0.len() <= 64, "too many nondivisorial ideals for u64 families");
        let masks: Vec<u128> = g0.iter().map(|j| j.mask(w)).collect();
        let v = g0.iter().map(|j| sg.v(j).mask(w)).collect();
        let table: Vec<Vec<u128>> = g0
            .iter()
            .map(|i| g0.iter().map(|j| sg.close(std::slice::from_ref(i), j).mask(w)).collect())
            .collect();
        let n = g0.len();
        let mut below = vec![0u64; n];
        let mut above = vec![0u64; n];
        for q in 0..n {
            for p in 0..n {
                if table[q][p] == masks[p] {
                    below[q] |= 1 << p;
                    above[p] |= 1 << q;
                }
            }
        }
        let index = masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        OrderTables {
            g0,
            masks,
            v,
            table,
            below,
            above,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.g0.len()
    }

    /// Calls `f` with the closed nondivisorial family of `★_Δ` for every
    /// generating set `Δ` of the sweep: every subset of `G₀` when
    /// `antichains_only` is false, every antichain of the star order
    /// otherwise. Returns the number of sets visited.
    pub fn sweep(&self, antichains_only: bool, f: &mut impl FnMut(u64)) -> u64 {
        let n = self.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut visited = 0;
        let mut stack = vec![self.v.clone(); n + 1];
        self.sweep_from(&mut stack, all, antichains_only, f, &mut visited);
        visited
    }

    fn sweep_from(&self, stack: &mut [Vec<u128>], candidates: u64, antichains_only: bool, f: &mut impl FnMut(u64), visited: &mut u64) {
        *visited += 1;
        let (cur, deeper) = stack.split_first_mut().expect("stack deeper than G₀");
        let closed = cur
            .iter()
            .zip(&self.masks)
            .enumerate()
            .fold(0u64, |acc, (k, (c, m))| if c == m { acc | 1 << k } else { acc });
        f(closed);
        let mut rest = candidates;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for ((n, c), t) in deeper[0].iter_mut().zip(cur.iter()).zip(&self.table[p]) {
                *n = c & t;
            }
            let mut cand = rest;
            if antichains_only {
                cand &= !(self.below[p] | self.above[p]);
            }
            self.sweep_from(deeper, cand, antichains_only, f, visited);
        }
    }
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn choose(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
