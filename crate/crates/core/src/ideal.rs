//! Fractional ideals of a numerical semigroup, normalized to have minimum 0.
//!
//! An ideal `I` with `S ⊆ I ⊆ ℕ` is stored as its bits on `[0, g]`; every
//! integer above `g` is implicitly a member. Quotients and translates of such
//! ideals only need the same window, see the notes on [`quotient`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{IdealError, LimitExceeded};
use crate::semigroup::{Mask, NumericalSemigroup};
use crate::Budget;

/// A cofinite subset of `ℕ` containing every integer above the Frobenius
/// number of its semigroup.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NatSet {
    pub(crate) bits: Mask,
}

impl NatSet {
    pub fn bits(&self) -> Mask {
        self.bits
    }

    pub fn contains(&self, s: &NumericalSemigroup, x: i64) -> bool {
        x >= 0 && (x > s.frobenius() || self.bits >> x & 1 == 1)
    }

    pub fn min(&self, s: &NumericalSemigroup) -> i64 {
        if self.bits == 0 {
            s.frobenius() + 1
        } else {
            self.bits.trailing_zeros() as i64
        }
    }

    pub fn semigroup(s: &NumericalSemigroup) -> NatSet {
        NatSet {
            bits: s.element_mask(),
        }
    }

    /// `M_S = S ∖ {0}`.
    pub fn maximal_ideal(s: &NumericalSemigroup) -> NatSet {
        NatSet {
            bits: s.element_mask() & !1,
        }
    }

    /// Shift so that the minimum becomes 0. The result is an ideal whenever
    /// `self` is closed under adding `S`, which holds for quotients.
    pub fn normalized(&self, s: &NumericalSemigroup) -> Ideal {
        let m = self.min(s);
        Ideal {
            bits: translate_down(s, self.bits, m as u32),
        }
    }
}

/// An element of `F₀(S)`: a fractional ideal with `S ⊆ I ⊆ ℕ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub(crate) bits: Mask,
}

impl Ideal {
    pub fn semigroup(s: &NumericalSemigroup) -> Ideal {
        Ideal {
            bits: s.element_mask(),
        }
    }

    pub fn naturals(s: &NumericalSemigroup) -> Ideal {
        Ideal { bits: s.window() }
    }

    /// `S ∪ added`; every entry must be a gap and the union must be an ideal.
    pub fn from_added_gaps(s: &NumericalSemigroup, added: &[i64]) -> Result<Ideal, IdealError> {
        let mut bits = s.element_mask();
        for &a in added {
            if !s.is_gap(a) {
                return Err(IdealError::NotAGap(a));
            }
            bits |= 1 << a;
        }
        check_ideal(s, bits)?;
        Ok(Ideal { bits })
    }

    /// Wraps a raw window mask, checking `0 ∈ I` and `I + S ⊆ I`.
    pub fn from_bits(s: &NumericalSemigroup, bits: Mask) -> Result<Ideal, IdealError> {
        let bits = bits & s.window();
        if s.frobenius() >= 0 && bits & 1 == 0 {
            return Err(IdealError::NotAnIdeal {
                element: bits.trailing_zeros() as i64,
                generator: 0,
            });
        }
        if bits & s.element_mask() != s.element_mask() {
            let missing = (s.element_mask() & !bits).trailing_zeros() as i64;
            return Err(IdealError::NotAnIdeal {
                element: 0,
                generator: missing,
            });
        }
        check_ideal(s, bits)?;
        Ok(Ideal { bits })
    }

    pub fn bits(&self) -> Mask {
        self.bits
    }

    pub fn as_set(&self) -> NatSet {
        NatSet { bits: self.bits }
    }

    pub fn contains(&self, s: &NumericalSemigroup, x: i64) -> bool {
        self.as_set().contains(s, x)
    }

    /// Gaps of `S` that belong to `I`.
    pub fn added_gaps(&self, s: &NumericalSemigroup) -> Vec<u32> {
        let extra = self.bits & s.gap_mask();
        (0..128).filter(|&x| extra >> x & 1 == 1).collect()
    }

    /// Largest integer outside `I`, or `None` for `I = ℕ`.
    pub fn sup_complement(&self, s: &NumericalSemigroup) -> Option<u32> {
        let missing = s.window() & !self.bits;
        if missing == 0 {
            None
        } else {
            Some(127 - missing.leading_zeros())
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        Ideal {
            bits: self.bits & other.bits,
        }
    }

    pub fn union(&self, other: &Ideal) -> Ideal {
        Ideal {
            bits: self.bits | other.bits,
        }
    }

    /// `I(1,2)` style label built from the added gaps.
    pub fn label(&self, s: &NumericalSemigroup) -> String {
        let added: Vec<String> = self.added_gaps(s).iter().map(|x| x.to_string()).collect();
        if added.is_empty() {
            "S".to_string()
        } else {
            format!("I({})", added.join(","))
        }
    }

    pub fn display<'a>(&'a self, s: &'a NumericalSemigroup) -> IdealDisplay<'a> {
        IdealDisplay { ideal: self, semigroup: s }
    }

    pub fn to_json(&self, s: &NumericalSemigroup) -> IdealJson {
        IdealJson {
            added_gaps: self.added_gaps(s),
        }
    }

    /// Parses `S + {a1,a2,...}` or a bare `S`.
    pub fn parse(s: &NumericalSemigroup, text: &str) -> Result<Ideal, IdealError> {
        let text = text.trim();
        if text == "S" {
            return Ok(Ideal::semigroup(s));
        }
        let body = text
            .strip_prefix('S')
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('+'))
            .map(str::trim)
            .and_then(|r| r.strip_prefix('{'))
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| IdealError::Parse(format!("expected S + {{...}}, got {text:?}")))?;
        let added = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| IdealError::Parse(format!("bad integer {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::from_added_gaps(s, &added)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({:#b})", self.bits)
    }
}

pub struct IdealDisplay<'a> {
    ideal: &'a Ideal,
    semigroup: &'a NumericalSemigroup,
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let added: Vec<String> = self
            .ideal
            .added_gaps(self.semigroup)
            .iter()
            .map(|x| x.to_string())
            .collect();
        if added.is_empty() {
            write!(f, "S")
        } else {
            write!(f, "S + {{{}}}", added.join(","))
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealJson {
    pub added_gaps: Vec<u32>,
}

fn check_ideal(s: &NumericalSemigroup, bits: Mask) -> Result<(), IdealError> {
    let w = s.window();
    let elems = s.element_mask();
    let mut rest = bits;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        let shifted = (elems << x) & w;
        let missing = shifted & !bits;
        if missing != 0 {
            let y = missing.trailing_zeros();
            return Err(IdealError::NotAnIdeal {
                element: x as i64,
                generator: (y - x) as i64,
            });
        }
    }
    Ok(())
}

/// `(−α + A) ∩ ℕ` for a set `A` containing everything above `g`.
#[inline]
pub(crate) fn translate_down(s: &NumericalSemigroup, a: Mask, alpha: u32) -> Mask {
    let w = s.window();
    if alpha >= 128 {
        return w;
    }
    ((a >> alpha) | !(w >> alpha)) & w
}

/// Nonnegative part of `(A − B)` for cofinite `A, B ⊆ ℕ` that contain every
/// integer above `g`.
#[inline]
pub(crate) fn quotient_mask(s: &NumericalSemigroup, a: Mask, b: Mask) -> Mask {
    let w = s.window();
    let g = s.frobenius();
    let mut out = 0;
    for x in 0..=g.max(-1) {
        if (b << x) & w & !a == 0 {
            out |= 1 << x;
        }
    }
    out
}

#[inline]
pub(crate) fn v_mask(s: &NumericalSemigroup, i: Mask) -> Mask {
    let elems = s.element_mask();
    quotient_mask(s, elems, quotient_mask(s, elems, i))
}

/// A set of integers given as a finite part plus every integer from
/// `tail_from` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSet {
    pub finite: BTreeSet<i64>,
    pub tail_from: i64,
}

impl FractionalSet {
    pub fn new(finite: impl IntoIterator<Item = i64>, tail_from: i64) -> Self {
        FractionalSet {
            finite: finite.into_iter().collect(),
            tail_from,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.tail_from || self.finite.contains(&x)
    }

    pub fn min(&self) -> i64 {
        self.finite
            .iter()
            .next()
            .copied()
            .map_or(self.tail_from, |m| m.min(self.tail_from))
    }
}

/// `A − min(A)` as an element of `F₀(S)`.
pub fn normalize(s: &NumericalSemigroup, a: &FractionalSet) -> Result<Ideal, IdealError> {
    let m = a.min();
    let g = s.frobenius();
    // witnesses beyond tail_from + g are automatic
    let top = a.tail_from.max(m) + g.max(0) + 1;
    for x in m..top {
        if !a.contains(x) {
            continue;
        }
        for t in 1..=g.max(0) + 1 {
            if s.contains(t) && !a.contains(x + t) {
                return Err(IdealError::NotAnIdeal {
                    element: x,
                    generator: t,
                });
            }
        }
    }
    let mut bits: Mask = 0;
    for x in 0..=g {
        if a.contains(x + m) {
            bits |= 1 << x;
        }
    }
    Ok(Ideal { bits })
}

/// `(I − J) = {x : x + J ⊆ I}`. For `I, J ∈ F₀(S)` the quotient lies in `ℕ`
/// and contains every integer above `g`; it contains 0 iff `J ⊆ I`.
pub fn quotient(s: &NumericalSemigroup, i: &Ideal, j: &Ideal) -> NatSet {
    NatSet {
        bits: quotient_mask(s, i.bits, j.bits),
    }
}

/// Nonnegative part of `(A − B)` for general cofinite sets; exact whenever
/// the quotient has no negative elements, e.g. `(S − M_S)`.
pub fn quotient_sets(s: &NumericalSemigroup, a: &NatSet, b: &NatSet) -> NatSet {
    NatSet {
        bits: quotient_mask(s, a.bits, b.bits),
    }
}

/// `I^v = (S − (S − I))`.
pub fn v_closure(s: &NumericalSemigroup, i: &Ideal) -> Ideal {
    Ideal {
        bits: v_mask(s, i.bits),
    }
}

pub fn is_divisorial(s: &NumericalSemigroup, i: &Ideal) -> bool {
    v_closure(s, i) == *i
}

/// `M_a = {x ∈ ℕ : a − x ∉ S}`, the largest ideal of `F₀(S)` missing `a`.
pub fn ideal_m(s: &NumericalSemigroup, a: i64) -> Result<Ideal, IdealError> {
    if !s.is_gap(a) {
        return Err(IdealError::NotAGap(a));
    }
    let mut bits: Mask = 0;
    for x in 0..=s.frobenius() {
        if !s.contains(a - x) {
            bits |= 1 << x;
        }
    }
    Ok(Ideal { bits })
}

/// Every ideal `S ⊆ I ⊆ ℕ`, each once, ordered by the number of added gaps
/// and then lexicographically by the added gaps.
pub fn enumerate_f0(s: &NumericalSemigroup, budget: &Budget) -> Result<Vec<Ideal>, LimitExceeded> {
    if s.genus() > budget.max_genus {
        return Err(LimitExceeded::new("genus for ideal enumeration", budget.max_genus as u64));
    }
    let gaps = s.gaps();
    // forcers[k]: earlier gaps y with gaps[k] − y ∈ S
    let forcers: Vec<Mask> = gaps
        .iter()
        .map(|&x| {
            gaps.iter()
                .filter(|&&y| y < x && s.contains((x - y) as i64))
                .fold(0, |m, &y| m | 1 << y)
        })
        .collect();
    let base = s.element_mask();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, base)];
    while let Some((k, bits)) = stack.pop() {
        if k == gaps.len() {
            out.push(Ideal { bits });
            if out.len() as u64 > budget.max_ideals {
                return Err(LimitExceeded::new("ideals in F0", budget.max_ideals));
            }
            continue;
        }
        let with = bits | 1 << gaps[k];
        if bits & forcers[k] != 0 {
            stack.push((k + 1, with));
        } else {
            stack.push((k + 1, bits));
            stack.push((k + 1, with));
        }
    }
    out.sort_by_cached_key(|i| {
        let added = i.added_gaps(s);
        (added.len(), added)
    });
    Ok(out)
}

/// `G₀(S)`: the nondivisorial ideals of `F₀(S)`, in `enumerate_f0` order.
pub fn enumerate_nondivisorial(
    s: &NumericalSemigroup,
    budget: &Budget,
) -> Result<Vec<Ideal>, LimitExceeded> {
    Ok(enumerate_f0(s, budget)?
        .into_iter()
        .filter(|i| !is_divisorial(s, i))
        .collect())
}

/// `F₀(S)` together with indices, `v`-closures and the nondivisorial subset.
/// Star operations are described relative to one of these.
#[derive(Clone, Debug)]
pub struct IdealSpace {
    semigroup: NumericalSemigroup,
    ideals: Vec<Ideal>,
    index: HashMap<Mask, u32>,
    v_index: Vec<u32>,
    nondivisorial: Vec<u32>,
}

impl IdealSpace {
    pub fn new(s: &NumericalSemigroup, budget: &Budget) -> Result<Self, LimitExceeded> {
        let ideals = enumerate_f0(s, budget)?;
        let index: HashMap<Mask, u32> = ideals
            .iter()
            .enumerate()
            .map(|(k, i)| (i.bits, k as u32))
            .collect();
        let v_index: Vec<u32> = ideals
            .iter()
            .map(|i| index[&v_mask(s, i.bits)])
            .collect();
        let nondivisorial = (0..ideals.len() as u32)
            .filter(|&k| v_index[k as usize] != k)
            .collect();
        Ok(IdealSpace {
            semigroup: s.clone(),
            ideals,
            index,
            v_index,
            nondivisorial,
        })
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideal(&self, k: u32) -> Ideal {
        self.ideals[k as usize]
    }

    pub fn index_of(&self, i: &Ideal) -> Option<u32> {
        self.index.get(&i.bits).copied()
    }

    pub(crate) fn index_of_bits(&self, bits: Mask) -> u32 {
        self.index[&bits]
    }

    /// Index of `I^v` for the ideal at index `k`.
    pub fn v_of(&self, k: u32) -> u32 {
        self.v_index[k as usize]
    }

    pub fn is_divisorial(&self, k: u32) -> bool {
        self.v_index[k as usize] == k
    }

    /// Indices of `G₀(S)` in `enumerate_f0` order.
    pub fn nondivisorial(&self) -> &[u32] {
        &self.nondivisorial
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn ideal(s: &NumericalSemigroup, added: &[i64]) -> Ideal {
        Ideal::from_added_gaps(s, added).unwrap()
    }

    /// Quotient over a wide integer range, straight from the definition.
    fn brute_quotient(s: &NumericalSemigroup, i: &Ideal, j: &Ideal) -> Vec<i64> {
        let g = s.frobenius();
        let hi = 2 * g + 2;
        (-hi..=hi)
            .filter(|&x| (0..=hi).all(|y| !j.contains(s, y) || i.contains(s, x + y)))
            .collect()
    }

    #[test]
    fn normalize_examples() {
        let s = sg(&[5, 6, 7, 8, 9]);
        let i = normalize(&s, &FractionalSet::new([0, 3, 4], 5)).unwrap();
        assert_eq!(i, ideal(&s, &[3, 4]));
        assert_eq!(normalize(&s, &FractionalSet::new([7], 12)).unwrap(), Ideal::semigroup(&s));
        let s = sg(&[2, 3]);
        assert_eq!(normalize(&s, &FractionalSet::new([2], 4)).unwrap(), Ideal::semigroup(&s));
    }

    #[test]
    fn normalize_rejects_non_ideals() {
        let s = sg(&[3, 4, 5]);
        // 0 + 3 missing
        match normalize(&s, &FractionalSet::new([0, 1], 4)) {
            Err(IdealError::NotAnIdeal { element, generator }) => {
                assert_eq!((element, generator), (0, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_by_maximal_ideal() {
        let s = sg(&[3, 4, 5]);
        let q = quotient_sets(&s, &NatSet::semigroup(&s), &NatSet::maximal_ideal(&s));
        let brute: Vec<i64> = (0..=6).filter(|&x| (3..=10).all(|y| !s.contains(y) || s.contains(x + y))).collect();
        let got: Vec<i64> = (0..=6).filter(|&x| q.contains(&s, x)).collect();
        assert_eq!(got, brute);
        // S ∪ {1, 2}, which here is all of ℕ
        assert_eq!(q.normalized(&s), Ideal::from_added_gaps(&s, &[1, 2]).unwrap());
    }

    #[test]
    fn quotient_matches_definition() {
        for gens in [&[3u64, 4, 5][..], &[4, 6, 7, 9], &[4, 7, 9], &[5, 6, 7, 8, 9]] {
            let s = sg(gens);
            let f0 = enumerate_f0(&s, &Budget::default()).unwrap();
            for i in &f0 {
                for j in &f0 {
                    let q = quotient(&s, i, j);
                    let brute = brute_quotient(&s, i, j);
                    let window: Vec<i64> = (-(2 * s.frobenius() + 2)..=2 * s.frobenius() + 2)
                        .filter(|&x| q.contains(&s, x))
                        .collect();
                    assert_eq!(window, brute);
                    assert!(quotient(&s, i, i).contains(&s, 0));
                    assert!(Ideal::semigroup(&s).is_subset(&Ideal { bits: quotient(&s, i, i).bits }));
                }
            }
        }
    }

    #[test]
    fn quotient_by_s_union_g() {
        for gens in [&[4u64, 7, 9][..], &[3, 5, 7], &[5, 6, 7, 8, 9]] {
            let s = sg(gens);
            let g = s.frobenius();
            let sg_ = ideal(&s, &[g]);
            for j in enumerate_f0(&s, &Budget::default()).unwrap() {
                if j.contains(&s, g) {
                    assert_eq!(quotient(&s, &j, &sg_).bits, j.bits);
                }
            }
        }
    }

    #[test]
    fn v_closure_examples() {
        let s = sg(&[4, 6, 7, 9]);
        assert_eq!(v_closure(&s, &ideal(&s, &[5])), ideal(&s, &[2, 3, 5]));
        assert_eq!(v_closure(&s, &Ideal::semigroup(&s)), Ideal::semigroup(&s));
        let s = sg(&[5, 6, 7, 8, 9]);
        for i in enumerate_f0(&s, &Budget::default()).unwrap() {
            if i != Ideal::semigroup(&s) {
                assert_eq!(v_closure(&s, &i), Ideal::naturals(&s));
            }
        }
    }

    #[test]
    fn m_examples() {
        let s = sg(&[4, 5, 6, 7]);
        let m3 = ideal_m(&s, 3).unwrap();
        assert_eq!(m3, ideal(&s, &[1, 2]));
        let s = sg(&[4, 7, 9]);
        let m6 = ideal_m(&s, 6).unwrap();
        let expect: Vec<i64> = (0..=10).filter(|&x| x != 2 && x != 6).collect();
        let got: Vec<i64> = (0..=10).filter(|&x| m6.contains(&s, x)).collect();
        assert_eq!(got, expect);
        assert!(matches!(ideal_m(&s, 4), Err(IdealError::NotAGap(4))));
    }

    #[test]
    fn m_is_largest_ideal_missing_a() {
        for s in crate::semigroup::enumerate_semigroups(6) {
            let f0 = enumerate_f0(&s, &Budget::default()).unwrap();
            for a in s.gaps() {
                let m = ideal_m(&s, a as i64).unwrap();
                assert!(!m.contains(&s, a as i64));
                assert!(f0.contains(&m));
                for i in &f0 {
                    if !i.contains(&s, a as i64) {
                        assert!(i.is_subset(&m));
                    }
                }
            }
        }
    }

    #[test]
    fn f0_examples() {
        let s = sg(&[4, 5, 6, 7]);
        assert_eq!(enumerate_f0(&s, &Budget::default()).unwrap().len(), 8);
        let s = sg(&[2, 3]);
        assert_eq!(
            enumerate_f0(&s, &Budget::default()).unwrap(),
            vec![Ideal::semigroup(&s), Ideal::naturals(&s)]
        );
        let s = sg(&[3, 4, 5]);
        assert_eq!(
            enumerate_f0(&s, &Budget::default()).unwrap(),
            vec![Ideal::semigroup(&s), ideal(&s, &[1]), ideal(&s, &[2]), Ideal::naturals(&s)]
        );
    }

    #[test]
    fn f0_matches_subset_filter() {
        for s in crate::semigroup::enumerate_semigroups(7) {
            let gaps = s.gaps();
            let mut brute = Vec::new();
            for sub in 0u32..(1 << gaps.len()) {
                let mut bits = s.element_mask();
                for (k, &x) in gaps.iter().enumerate() {
                    if sub >> k & 1 == 1 {
                        bits |= 1 << x;
                    }
                }
                let closed = (0..=s.frobenius()).all(|x| {
                    bits >> x & 1 == 0
                        || (0..=s.frobenius()).all(|t| {
                            !s.contains(t) || x + t > s.frobenius() || bits >> (x + t) & 1 == 1
                        })
                });
                if closed {
                    brute.push(bits);
                }
            }
            let mut got: Vec<Mask> = enumerate_f0(&s, &Budget::default())
                .unwrap()
                .iter()
                .map(|i| i.bits)
                .collect();
            got.sort();
            brute.sort();
            assert_eq!(got, brute, "{s:?}");
        }
    }

    #[test]
    fn f0_budget() {
        let s = sg(&[8, 9, 10, 11, 12, 13, 14, 15]);
        let budget = Budget {
            max_ideals: 50,
            ..Budget::default()
        };
        assert!(enumerate_f0(&s, &budget).is_err());
    }

    #[test]
    fn nondivisorial_examples() {
        let b = Budget::default();
        let s = sg(&[4, 5, 6, 7]);
        let g0 = enumerate_nondivisorial(&s, &b).unwrap();
        assert_eq!(g0.len(), 6);
        assert!(!g0.contains(&Ideal::semigroup(&s)) && !g0.contains(&Ideal::naturals(&s)));
        assert!(enumerate_nondivisorial(&sg(&[3, 5]), &b).unwrap().is_empty());
        // the count of ten in the pseudosymmetric case analysis is for μ = 5;
        // <4,7,9> has nine (independently checked by brute force)
        assert_eq!(enumerate_nondivisorial(&sg(&[4, 7, 9]), &b).unwrap().len(), 9);
    }

    #[test]
    fn text_forms() {
        let s = sg(&[4, 5, 6, 7]);
        let i = Ideal::parse(&s, "S + {1, 3}").unwrap();
        assert_eq!(i, ideal(&s, &[1, 3]));
        assert_eq!(i.display(&s).to_string(), "S + {1,3}");
        assert_eq!(i.label(&s), "I(1,3)");
        assert_eq!(Ideal::parse(&s, "S").unwrap(), Ideal::semigroup(&s));
        assert!(Ideal::parse(&s, "S + {4}").is_err());
        assert_eq!(
            serde_json::to_string(&i.to_json(&s)).unwrap(),
            r#"{"added_gaps":[1,3]}"#
        );
    }
}
