//! Numerical semigroups stored through their gap set.
//!
//! Every set the crate manipulates lives inside the window `[0, g]`, where
//! `g` is the Frobenius number: integers above `g` belong to the semigroup and
//! to every ideal between `S` and `ℕ`, so only the window needs explicit bits.

use std::collections::{BinaryHeap, BTreeSet};
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::SemigroupError;

/// Bit mask over the window `[0, g]`; bit `x` stands for the integer `x`.
pub type Mask = u128;

/// Largest Frobenius number representable by a [`Mask`] window.
pub const MAX_FROBENIUS: i64 = 126;

/// A numerical semigroup with its classical invariants precomputed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    gaps: Mask,
    frobenius: i64,
    multiplicity: u32,
    genus: u32,
    pseudo_frobenius: Vec<u32>,
    min_generators: Vec<u32>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[inline]
pub(crate) fn window_mask(frobenius: i64) -> Mask {
    if frobenius < 0 {
        0
    } else if frobenius >= 127 {
        Mask::MAX
    } else {
        (1u128 << (frobenius + 1)) - 1
    }
}

impl NumericalSemigroup {
    /// The semigroup generated by `gens`.
    ///
    /// The Apéry set with respect to the smallest generator is found with a
    /// shortest-path pass over residues; this gives the Frobenius number
    /// without guessing a sieve bound.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::NonPositiveGenerator);
        }
        let d = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if d != 1 {
            return Err(SemigroupError::NotNumerical { gcd: d });
        }
        let m = *gens.iter().min().unwrap();
        if m == 1 {
            return Self::from_gap_mask(0, -1);
        }
        if m > (MAX_FROBENIUS as u64) + 1 {
            return Err(SemigroupError::TooLarge { frobenius: None });
        }
        let m = m as usize;
        let mut dist = vec![u64::MAX; m];
        dist[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > dist[r] {
                continue;
            }
            for &a in gens {
                let nd = d + a;
                let nr = (r + (a as usize % m)) % m;
                if nd < dist[nr] {
                    dist[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        let frobenius = *dist.iter().max().unwrap() as i64 - m as i64;
        if frobenius > MAX_FROBENIUS {
            return Err(SemigroupError::TooLarge {
                frobenius: Some(frobenius),
            });
        }
        let mut gaps: Mask = 0;
        for x in 1..=frobenius.max(0) {
            if (x as u64) < dist[x as usize % m] {
                gaps |= 1 << x;
            }
        }
        Self::from_gap_mask(gaps, frobenius)
    }

    /// The semigroup whose complement in `ℕ` is exactly `gaps`.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self, SemigroupError> {
        let mut mask: Mask = 0;
        for &x in gaps {
            if x == 0 {
                return Err(SemigroupError::ZeroGap);
            }
            if x as i64 > MAX_FROBENIUS {
                return Err(SemigroupError::TooLarge {
                    frobenius: Some(x as i64),
                });
            }
            mask |= 1 << x;
        }
        let frobenius = if mask == 0 {
            -1
        } else {
            127 - mask.leading_zeros() as i64
        };
        let window = window_mask(frobenius);
        let elements = window & !mask;
        for a in 1..=frobenius.max(0) {
            if elements >> a & 1 == 0 {
                continue;
            }
            for b in a..=frobenius - a {
                if elements >> b & 1 == 1 && mask >> (a + b) & 1 == 1 {
                    return Err(SemigroupError::NotClosed {
                        a: a as u64,
                        b: b as u64,
                    });
                }
            }
        }
        Self::from_gap_mask(mask, frobenius)
    }

    /// Builds the semigroup from a gap mask already known to be closed.
    pub(crate) fn from_gap_mask(gaps: Mask, frobenius: i64) -> Result<Self, SemigroupError> {
        let genus = gaps.count_ones();
        let multiplicity = if gaps == 0 {
            1
        } else {
            (!gaps >> 1).trailing_zeros() + 1
        };
        let mut s = NumericalSemigroup {
            gaps,
            frobenius,
            multiplicity,
            genus,
            pseudo_frobenius: Vec::new(),
            min_generators: Vec::new(),
        };
        s.min_generators = s.compute_min_generators();
        if genus > 0 {
            s.pseudo_frobenius = s.compute_type_set();
        }
        Ok(s)
    }

    fn compute_min_generators(&self) -> Vec<u32> {
        if self.frobenius < 0 {
            return vec![1];
        }
        // every minimal generator is below g + μ + 1
        let bound = (self.frobenius + self.multiplicity as i64) as u32;
        let elems: Vec<u32> = (1..=bound).filter(|&x| self.contains(x as i64)).collect();
        elems
            .iter()
            .copied()
            .filter(|&x| {
                !elems
                    .iter()
                    .take_while(|&&y| 2 * y <= x)
                    .any(|&y| self.contains((x - y) as i64))
            })
            .collect()
    }

    fn compute_type_set(&self) -> Vec<u32> {
        let g = self.frobenius;
        (1..=g)
            .filter(|&x| !self.contains(x))
            .filter(|&x| (1..=g).all(|s| !self.contains(s) || self.contains(x + s)))
            .map(|x| x as u32)
            .collect()
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            false
        } else if x > self.frobenius {
            true
        } else {
            self.gaps >> x & 1 == 0
        }
    }

    pub fn is_gap(&self, x: i64) -> bool {
        x > 0 && !self.contains(x)
    }

    /// `g(S)`, with `-1` for `S = ℕ`.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// `δ(S)`, the number of gaps.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Gaps as a sorted list.
    pub fn gaps(&self) -> Vec<u32> {
        (1..=self.frobenius.max(0) as u32)
            .filter(|&x| self.gaps >> x & 1 == 1)
            .collect()
    }

    pub fn gap_mask(&self) -> Mask {
        self.gaps
    }

    /// Bits of `S` inside the window `[0, g]`.
    pub fn element_mask(&self) -> Mask {
        self.window() & !self.gaps
    }

    /// All-ones mask covering `[0, g]`.
    pub fn window(&self) -> Mask {
        window_mask(self.frobenius)
    }

    pub fn min_generators(&self) -> &[u32] {
        &self.min_generators
    }

    /// `t(S) = |T(S)|`; zero for `ℕ`.
    pub fn type_number(&self) -> usize {
        self.pseudo_frobenius.len()
    }

    /// `T(S) = (S − M_S) ∖ S`, sorted ascending; empty for `ℕ`.
    pub fn type_set(&self) -> &[u32] {
        &self.pseudo_frobenius
    }

    /// `true` when `t(S) = 1`. The gap-pairing characterization is checked
    /// against the type in debug builds. `ℕ` counts as symmetric
    /// (`g + 1 = 2δ` holds with `g = −1`), so that `|Star(S)| = 1` exactly
    /// for symmetric `S`.
    pub fn is_symmetric(&self) -> bool {
        if self.genus == 0 {
            return true;
        }
        let by_type = self.pseudo_frobenius.len() == 1;
        debug_assert_eq!(by_type, self.is_symmetric_by_pairing());
        by_type
    }

    /// `a ∉ S ⇒ g − a ∈ S` for every gap `a`.
    pub fn is_symmetric_by_pairing(&self) -> bool {
        self.gaps().iter().all(|&a| self.contains(self.frobenius - a as i64))
    }

    /// `g` even and `T(S) = {g/2, g}`.
    pub fn is_pseudosymmetric(&self) -> bool {
        let g = self.frobenius;
        g > 0 && g % 2 == 0 && self.pseudo_frobenius == [(g / 2) as u32, g as u32]
    }

    /// `(k_1, …, k_{μ−1})` with `k_i·μ + i` the least element of `S` congruent
    /// to `i` modulo `μ`.
    pub fn apery_sequence(&self) -> Vec<u32> {
        let m = self.multiplicity;
        let seq: Vec<u32> = (1..m)
            .map(|i| {
                (0..)
                    .find(|&k| self.contains((k * m + i) as i64))
                    .unwrap()
            })
            .collect();
        debug_assert_eq!(seq.iter().sum::<u32>(), self.genus);
        seq
    }

    /// Minimal generators larger than the Frobenius number; removing any of
    /// them yields a child in the semigroup tree.
    pub fn tree_children(&self) -> Vec<NumericalSemigroup> {
        self.min_generators
            .iter()
            .filter(|&&x| x as i64 > self.frobenius && x as i64 <= MAX_FROBENIUS)
            .map(|&x| {
                NumericalSemigroup::from_gap_mask(self.gaps | 1 << x, x as i64)
                    .expect("child of a valid semigroup")
            })
            .collect()
    }

    /// Serializable summary used by the CLI.
    pub fn summary(&self) -> SemigroupSummary {
        SemigroupSummary {
            generators: self.min_generators.clone(),
            gaps: self.gaps(),
            frobenius: self.frobenius,
            genus: self.genus,
            multiplicity: self.multiplicity,
            type_set: self.pseudo_frobenius.clone(),
        }
    }
}

/// JSON form of a semigroup.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemigroupSummary {
    pub generators: Vec<u32>,
    pub gaps: Vec<u32>,
    pub frobenius: i64,
    pub genus: u32,
    pub multiplicity: u32,
    #[serde(rename = "type")]
    pub type_set: Vec<u32>,
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.min_generators.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} gaps={:?}", self, self.gaps())
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Genus first, then the sorted gap list lexicographically.
impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.genus
            .cmp(&other.genus)
            .then_with(|| self.gaps().cmp(&other.gaps()))
    }
}

fn parse_list(body: &str) -> Result<Vec<u64>, SemigroupError> {
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| SemigroupError::Parse(format!("not a nonnegative integer: {t:?}")))
        })
        .collect()
}

/// Accepts `<a1,a2,...>` (generators) or `gaps:[1,2,5]`.
impl FromStr for NumericalSemigroup {
    type Err = SemigroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("gaps:") {
            let body = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| SemigroupError::Parse(format!("expected gaps:[...], got {s:?}")))?;
            let gaps = parse_list(body)?;
            let unique: BTreeSet<u64> = gaps.iter().copied().collect();
            let gaps: Vec<u64> = unique.into_iter().collect();
            return NumericalSemigroup::from_gaps(&gaps);
        }
        let body = s
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| SemigroupError::Parse(format!("expected <a,b,...>, got {s:?}")))?;
        NumericalSemigroup::from_generators(&parse_list(body)?)
    }
}

/// Every numerical semigroup of genus at most `max_genus`, each exactly once,
/// walking the semigroup tree level by level. Within a level the order is the
/// lexicographic order of the gap lists.
pub fn enumerate_semigroups(max_genus: u32) -> SemigroupTree {
    SemigroupTree {
        max_genus,
        level: vec![NumericalSemigroup::from_gap_mask(0, -1).unwrap()],
        pos: 0,
    }
}

/// Streaming iterator over the semigroup tree, see [`enumerate_semigroups`].
pub struct SemigroupTree {
    max_genus: u32,
    level: Vec<NumericalSemigroup>,
    pos: usize,
}

impl Iterator for SemigroupTree {
    type Item = NumericalSemigroup;

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos == self.level.len() {
            let genus = self.level.first()?.genus;
            if genus >= self.max_genus {
                return None;
            }
            let mut next: Vec<NumericalSemigroup> =
                self.level.iter().flat_map(|s| s.tree_children()).collect();
            next.sort();
            self.level = next;
            self.pos = 0;
            if self.level.is_empty() {
                return None;
            }
        }
        let s = self.level[self.pos].clone();
        self.pos += 1;
        Some(s)
    }
}
