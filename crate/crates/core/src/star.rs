//! Star operations generated by sets of ideals, and the star order on the
//! nondivisorial ideals.
//!
//! A star operation is kept extensionally: the set of its closed ideals in
//! `F₀(S)`. Closures of a single ideal `J` under `★_I` are computed from
//! `J^{★_I} = J^v ∩ ⋂_{α ∈ (I−J)} (−α + I)`, where only `α ≤ g` matters:
//! larger shifts contain all of `ℕ`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::LimitExceeded;
use crate::ideal::{quotient_mask, translate_down, v_mask, Ideal, IdealJson, IdealSpace};
use crate::semigroup::{Mask, NumericalSemigroup};
use crate::Budget;

/// `J^{★_I}` on raw masks, given `J^v`.
#[inline]
pub(crate) fn principal_close_mask(s: &NumericalSemigroup, i: Mask, j: Mask, jv: Mask) -> Mask {
    let mut out = jv;
    let mut alphas = quotient_mask(s, i, j);
    while alphas != 0 {
        let a = alphas.trailing_zeros();
        alphas &= alphas - 1;
        out &= translate_down(s, i, a);
        if out == j {
            break;
        }
    }
    out
}

/// `J^{★_Δ} = J^v ∩ ⋂_{I ∈ Δ} ⋂_{α ∈ (I−J)} (−α + I)`. An empty `Δ` gives `J^v`.
pub fn star_close(s: &NumericalSemigroup, delta: &[Ideal], j: &Ideal) -> Ideal {
    let jv = v_mask(s, j.bits);
    let bits = delta
        .iter()
        .fold(jv, |acc, i| acc & principal_close_mask(s, i.bits, j.bits, jv));
    Ideal { bits }
}

/// `I ≤★ J`: `I` is `★_J`-closed.
pub fn star_leq(s: &NumericalSemigroup, i: &Ideal, j: &Ideal) -> bool {
    star_close(s, std::slice::from_ref(j), i) == *i
}

/// A star operation on `S`, described by its closed ideals in `F₀(S)`.
///
/// Equality and hashing use the closed family only, so two operations built
/// from different generating sets compare equal when they coincide.
#[derive(Clone, Debug)]
pub struct StarOperation {
    closed: BitSet,
    antichain: Vec<u32>,
    generators: Option<Vec<u32>>,
}

impl PartialEq for StarOperation {
    fn eq(&self, other: &Self) -> bool {
        self.closed == other.closed
    }
}

impl Eq for StarOperation {}

impl std::hash::Hash for StarOperation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.closed.hash(state);
    }
}

impl PartialOrd for StarOperation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StarOperation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.antichain
            .cmp(&other.antichain)
            .then_with(|| self.closed.cmp(&other.closed))
    }
}

impl StarOperation {
    pub(crate) fn from_parts(closed: BitSet, antichain: Vec<u32>) -> Self {
        StarOperation {
            closed,
            antichain,
            generators: None,
        }
    }

    /// Closed ideals as indices into the [`IdealSpace`].
    pub fn closed(&self) -> &BitSet {
        &self.closed
    }

    pub fn is_closed(&self, k: u32) -> bool {
        self.closed.contains(k as usize)
    }

    pub fn closed_count(&self) -> usize {
        self.closed.count()
    }

    /// `A(★)`: the star-maximal closed nondivisorial ideals, as indices.
    pub fn antichain(&self) -> &[u32] {
        &self.antichain
    }

    /// The set `Δ` the operation was built from, if any.
    pub fn generators(&self) -> Option<&[u32]> {
        self.generators.as_deref()
    }

    /// `J ↦ J^★` as indices: the smallest closed ideal containing `J`.
    pub fn closure_table(&self, space: &IdealSpace) -> Vec<u32> {
        let closed: Vec<Ideal> = self.closed.iter().map(|k| space.ideal(k as u32)).collect();
        space
            .ideals()
            .iter()
            .map(|j| {
                let bits = closed
                    .iter()
                    .filter(|c| j.is_subset(c))
                    .fold(space.semigroup().window(), |acc, c| acc & c.bits);
                space.index_of_bits(bits)
            })
            .collect()
    }

    pub fn close(&self, space: &IdealSpace, j: &Ideal) -> Ideal {
        let bits = self
            .closed
            .iter()
            .map(|k| space.ideal(k as u32))
            .filter(|c| j.is_subset(c))
            .fold(space.semigroup().window(), |acc, c| acc & c.bits);
        Ideal { bits }
    }

    pub fn to_json(&self, ctx: &StarContext) -> StarOperationJson {
        let s = ctx.semigroup();
        StarOperationJson {
            antichain: self
                .antichain
                .iter()
                .map(|&k| ctx.space().ideal(k).to_json(s))
                .collect(),
            closed_count: self.closed_count(),
            qm: ctx.qm(self),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StarOperationJson {
    pub antichain: Vec<IdealJson>,
    pub closed_count: usize,
    pub qm: u32,
}

/// `(G₀(S), ≤★)` as an explicit relation.
#[derive(Clone, Debug)]
pub struct StarPoset {
    /// `F₀` indices of the elements, in `G₀` order.
    elements: Vec<u32>,
    elements_ideals: Vec<Ideal>,
    /// `up[p]`: positions `q` with `p ≤★ q`.
    up: Vec<BitSet>,
    /// `down[q]`: positions `p` with `p ≤★ q`.
    down: Vec<BitSet>,
}

impl StarPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Ideal] {
        &self.elements_ideals
    }

    /// `F₀` index of the element at position `p`.
    pub fn space_index(&self, p: usize) -> u32 {
        self.elements[p]
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    pub fn up_set(&self, p: usize) -> &BitSet {
        &self.up[p]
    }

    pub fn down_set(&self, q: usize) -> &BitSet {
        &self.down[q]
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&q| self.down[q].count() == self.len())
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.down[p].count() == 1).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.up[p].count() == 1).collect()
    }

    /// Cover pairs `(upper, lower)` of the Hasse diagram, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for hi in 0..self.len() {
            for lo in self.down[hi].iter() {
                if lo == hi {
                    continue;
                }
                let between = self.down[hi]
                    .iter()
                    .any(|m| m != hi && m != lo && self.up[lo].contains(m));
                if !between {
                    edges.push((hi, lo));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the Hasse diagram, arrows pointing downwards.
    pub fn to_dot(&self, s: &NumericalSemigroup) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph G0 {{");
        let _ = writeln!(out, "  label=\"G0({s})\";");
        let _ = writeln!(out, "  node [shape=plaintext];");
        for i in &self.elements_ideals {
            let _ = writeln!(out, "  \"{}\";", i.label(s));
        }
        for (hi, lo) in self.hasse_edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                self.elements_ideals[hi].label(s),
                self.elements_ideals[lo].label(s)
            );
        }
        out.push_str("}\n");
        out
    }

    /// The same order as a generic [`crate::enumeration::Poset`].
    pub fn to_poset(&self, s: &NumericalSemigroup) -> crate::enumeration::Poset {
        let n = self.len();
        let leq = (0..n)
            .map(|p| (0..n).map(|q| self.leq(p, q)).collect())
            .collect();
        let labels = self.elements_ideals.iter().map(|i| i.label(s)).collect();
        crate::enumeration::Poset::new(leq, labels).expect("star order is a partial order")
    }
}

/// Outcome of the atom test on an ideal of `F₀(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomStatus {
    /// Divisorial ideals generate `v`, which is prime.
    Divisorial,
    Atom,
    /// `I = J₁ ∩ J₂` with `I` neither `★_{J₁}`- nor `★_{J₂}`-closed.
    NotAtom { witness: (Ideal, Ideal) },
}

impl AtomStatus {
    pub fn is_atom(&self) -> bool {
        !matches!(self, AtomStatus::NotAtom { .. })
    }
}

/// `F₀(S)` with everything needed to work with star operations: the
/// principal closure table of each nondivisorial ideal, the star order and
/// the `Q_a` membership of each ideal.
#[derive(Clone, Debug)]
pub struct StarContext {
    space: IdealSpace,
    /// `principal[p][k] = (ideal k)^{★_I}` for `I` at `G₀` position `p`.
    principal: Vec<Vec<Mask>>,
    v_table: Vec<Mask>,
    /// `G₀` position of each `F₀` index.
    g0_pos: Vec<Option<u32>>,
    poset: StarPoset,
    /// `Some(a)` when the ideal lies in `Q_a`.
    q_index: Vec<Option<u32>>,
}

impl StarContext {
    pub fn new(s: &NumericalSemigroup, budget: &Budget) -> Result<Self, LimitExceeded> {
        Ok(Self::from_space(IdealSpace::new(s, budget)?))
    }

    pub fn from_space(space: IdealSpace) -> Self {
        let s = space.semigroup().clone();
        let n = space.len();
        let v_table: Vec<Mask> = (0..n as u32).map(|k| space.ideal(space.v_of(k)).bits).collect();
        let g0: Vec<u32> = space.nondivisorial().to_vec();
        let mut g0_pos = vec![None; n];
        for (p, &k) in g0.iter().enumerate() {
            g0_pos[k as usize] = Some(p as u32);
        }
        let principal: Vec<Vec<Mask>> = g0
            .iter()
            .map(|&ik| {
                let ib = space.ideal(ik).bits;
                (0..n)
                    .map(|k| principal_close_mask(&s, ib, space.ideal(k as u32).bits, v_table[k]))
                    .collect()
            })
            .collect();
        let m = g0.len();
        let mut up = vec![BitSet::new(m); m];
        let mut down = vec![BitSet::new(m); m];
        for q in 0..m {
            for p in 0..m {
                let k = g0[p] as usize;
                if principal[q][k] == space.ideal(g0[p]).bits {
                    up[p].insert(q);
                    down[q].insert(p);
                }
            }
        }
        let poset = StarPoset {
            elements_ideals: g0.iter().map(|&k| space.ideal(k)).collect(),
            elements: g0,
            up,
            down,
        };
        let q_index = space
            .ideals()
            .iter()
            .enumerate()
            .map(|(k, i)| {
                let a = i.sup_complement(&s)?;
                (v_table[k] >> a & 1 == 1).then_some(a)
            })
            .collect();
        StarContext {
            space,
            principal,
            v_table,
            g0_pos,
            poset,
            q_index,
        }
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        self.space.semigroup()
    }

    pub fn space(&self) -> &IdealSpace {
        &self.space
    }

    pub fn poset(&self) -> &StarPoset {
        &self.poset
    }

    pub(crate) fn v_table(&self) -> &[Mask] {
        &self.v_table
    }

    /// Closure table of `★_I` for the `G₀` element at position `p`.
    pub(crate) fn principal_table(&self, p: usize) -> &[Mask] {
        &self.principal[p]
    }

    pub fn g0_position(&self, k: u32) -> Option<usize> {
        self.g0_pos[k as usize].map(|p| p as usize)
    }

    fn index(&self, i: &Ideal) -> u32 {
        self.space
            .index_of(i)
            .expect("ideal does not belong to F0 of this semigroup")
    }

    /// `J^{★_I}` through the precomputed tables.
    pub fn principal_close(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let jk = self.index(j) as usize;
        let bits = match self.g0_position(self.index(i)) {
            Some(p) => self.principal[p][jk],
            None => self.v_table[jk],
        };
        Ideal { bits }
    }

    /// `I ≤★ J` by table lookup. A divisorial `J` generates `v`.
    pub fn star_leq(&self, i: &Ideal, j: &Ideal) -> bool {
        self.principal_close(j, i) == *i
    }

    fn leq_idx(&self, ik: u32, jk: u32) -> bool {
        match self.g0_position(jk) {
            Some(p) => self.principal[p][ik as usize] == self.space.ideal(ik).bits,
            None => self.space.is_divisorial(ik),
        }
    }

    /// Closure table `k ↦ (ideal k)^{★_Δ}` as raw masks.
    pub(crate) fn table_for(&self, delta: &[u32]) -> Vec<Mask> {
        let mut t = self.v_table.clone();
        for &ik in delta {
            if let Some(p) = self.g0_position(ik) {
                for (a, b) in t.iter_mut().zip(&self.principal[p]) {
                    *a &= *b;
                }
            }
        }
        t
    }

    pub(crate) fn closed_from_table(&self, table: &[Mask]) -> BitSet {
        let mut closed = BitSet::new(self.space.len());
        for (k, &b) in table.iter().enumerate() {
            if b == self.space.ideal(k as u32).bits {
                closed.insert(k);
            }
        }
        closed
    }

    /// `A(★)` from a closed family: its star-maximal nondivisorial members.
    pub(crate) fn antichain_of(&self, closed: &BitSet) -> Vec<u32> {
        let nd: Vec<usize> = closed
            .iter()
            .filter_map(|k| self.g0_position(k as u32))
            .collect();
        let mut out: Vec<u32> = nd
            .iter()
            .filter(|&&p| !nd.iter().any(|&q| q != p && self.poset.leq(p, q)))
            .map(|&p| self.poset.elements[p])
            .collect();
        out.sort_unstable();
        out
    }

    /// `★_Δ`, the largest star operation closing every ideal of `Δ`.
    pub fn build_star(&self, delta: &[Ideal], verify_axioms: bool) -> StarOperation {
        let idx: Vec<u32> = delta.iter().map(|i| self.index(i)).collect();
        let table = self.table_for(&idx);
        if verify_axioms {
            self.check_axioms(&table)
                .unwrap_or_else(|e| panic!("star axioms fail for generated operation: {e}"));
        }
        let closed = self.closed_from_table(&table);
        let antichain = self.antichain_of(&closed);
        let mut generators = idx;
        generators.sort_unstable();
        generators.dedup();
        StarOperation {
            closed,
            antichain,
            generators: Some(generators),
        }
    }

    /// Rebuilds an operation from a closed family, checking that the family
    /// really is the closed family of a star operation.
    pub fn from_closed_family(&self, closed: BitSet) -> Option<StarOperation> {
        let antichain = self.antichain_of(&closed);
        let table = self.table_for(&antichain);
        (self.closed_from_table(&table) == closed).then(|| StarOperation::from_parts(closed, antichain))
    }

    /// Extension, monotonicity, idempotence, `S^★ = S` and stability of the
    /// closed family under intersection, on all of `F₀`.
    pub fn check_axioms(&self, table: &[Mask]) -> Result<(), String> {
        let sp = &self.space;
        let n = sp.len();
        for k in 0..n {
            let j = sp.ideal(k as u32).bits;
            if j & !table[k] != 0 {
                return Err(format!("extension fails at {k}"));
            }
            let ck = sp.index_of_bits(table[k]) as usize;
            if table[ck] != table[k] {
                return Err(format!("idempotence fails at {k}"));
            }
        }
        let sk = sp.index_of_bits(self.semigroup().element_mask()) as usize;
        if table[sk] != sp.ideal(sk as u32).bits {
            return Err("S is not closed".into());
        }
        for a in 0..n {
            let ja = sp.ideal(a as u32).bits;
            for b in 0..n {
                let jb = sp.ideal(b as u32).bits;
                if ja & !jb == 0 && table[a] & !table[b] != 0 {
                    return Err(format!("monotonicity fails at ({a}, {b})"));
                }
                if table[a] == ja && table[b] == jb {
                    let m = sp.index_of_bits(ja & jb) as usize;
                    if table[m] != ja & jb {
                        return Err(format!("closed family not stable under ∩ at ({a}, {b})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Atom test through pairwise intersections: `I` is an atom iff for all
    /// `J₁ ∩ J₂ = I`, `I ≤★ J₁` or `I ≤★ J₂`.
    pub fn atom_status(&self, i: &Ideal) -> AtomStatus {
        let ik = self.index(i);
        if self.space.is_divisorial(ik) {
            return AtomStatus::Divisorial;
        }
        let above: Vec<u32> = (0..self.space.len() as u32)
            .filter(|&k| i.is_subset(&self.space.ideal(k)) && !self.leq_idx(ik, k))
            .collect();
        for (x, &a) in above.iter().enumerate() {
            for &b in &above[x..] {
                let (ja, jb) = (self.space.ideal(a), self.space.ideal(b));
                if ja.intersect(&jb) == *i {
                    return AtomStatus::NotAtom { witness: (ja, jb) };
                }
            }
        }
        AtomStatus::Atom
    }

    pub fn is_atom(&self, i: &Ideal) -> bool {
        self.atom_status(i).is_atom()
    }

    /// `a` with `I ∈ Q_a`, if any.
    pub fn q_index_of(&self, k: u32) -> Option<u32> {
        self.q_index[k as usize]
    }

    /// `Q_a = {I ∈ F₀ : sup(ℕ∖I) = a, a ∈ I^v}`, in `F₀` order.
    pub fn q_set(&self, a: u32) -> Vec<Ideal> {
        (0..self.space.len() as u32)
            .filter(|&k| self.q_index[k as usize] == Some(a))
            .map(|k| self.space.ideal(k))
            .collect()
    }

    /// `qm(★)`: the largest `x` such that a `★`-closed ideal lies in `Q_x`,
    /// or 0.
    pub fn qm(&self, op: &StarOperation) -> u32 {
        op.closed
            .iter()
            .filter_map(|k| self.q_index[k])
            .max()
            .unwrap_or(0)
    }
}
