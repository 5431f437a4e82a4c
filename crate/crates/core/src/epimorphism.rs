//! Order-preserving epimorphisms `Γ(0; m₁,…,m_r) → G`.
//!
//! An epimorphism is stored as its generating vector `(y₁,…,y_r)` with
//! `yᵢ = η(xᵢ)`. It is valid when every `yᵢ` has order exactly `mᵢ`, the
//! product `y₁⋯y_r` is the identity and the entries generate `G`.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use crate::group::{Element, GroupTable, IDENTITY};
use crate::signature::Signature;

/// Candidate image of `(x₁,…,x_r)` as element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenVector(pub Vec<Element>);

impl GenVector {
    pub fn entries(&self) -> &[Element] {
        &self.0
    }

    /// Checks the three defining conditions against `group` and `sig`.
    pub fn is_valid(&self, group: &GroupTable, sig: &Signature) -> bool {
        is_valid_vector(group, sig, &self.0)
    }
}

impl From<Vec<Element>> for GenVector {
    fn from(v: Vec<Element>) -> Self {
        GenVector(v)
    }
}

pub fn is_valid_vector(group: &GroupTable, sig: &Signature, entries: &[Element]) -> bool {
    entries.len() == sig.len()
        && entries.iter().all(|&y| (y as usize) < group.order())
        && entries
            .iter()
            .zip(sig.periods())
            .all(|(&y, &m)| group.element_order(y) == m)
        && group.product(entries) == IDENTITY
        && group.is_generating(entries)
}

/// A lexicographically sorted set of generating vectors of equal length,
/// stored contiguously.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EpiSet {
    width: usize,
    data: Vec<Element>,
}

impl EpiSet {
    pub fn new(width: usize) -> EpiSet {
        EpiSet {
            width,
            data: Vec::new(),
        }
    }

    /// Builds a set from arbitrary vectors, sorting and deduplicating them.
    pub fn from_vectors(width: usize, vectors: impl IntoIterator<Item = Vec<Element>>) -> EpiSet {
        let mut vs: Vec<Vec<Element>> = vectors.into_iter().collect();
        vs.sort();
        vs.dedup();
        let mut set = EpiSet::new(width);
        for v in vs {
            assert_eq!(v.len(), width);
            set.data.extend_from_slice(&v);
        }
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[Element] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Element]> + '_ {
        self.data.chunks_exact(self.width.max(1))
    }

    pub fn to_vectors(&self) -> Vec<GenVector> {
        self.iter().map(|v| GenVector(v.to_vec())).collect()
    }

    /// Index of `v` in the set.
    pub fn position(&self, v: &[Element]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(v) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn push(&mut self, v: &[Element]) {
        debug_assert!(self.is_empty() || self.get(self.len() - 1) < v);
        self.data.extend_from_slice(v);
    }
}

/// The complete set `Epi(Γ, G)`, sorted lexicographically.
pub fn enumerate_epimorphisms(group: &GroupTable, sig: &Signature) -> EpiSet {
    let mut set = EpiSet::new(sig.len());
    let _ = for_each_epimorphism(group, sig, |v| {
        set.push(v);
        ControlFlow::Continue(())
    });
    set
}

/// Like [`enumerate_epimorphisms`], but gives up once more than `cap`
/// vectors have been found, returning how many were seen.
pub fn enumerate_epimorphisms_capped(
    group: &GroupTable,
    sig: &Signature,
    cap: usize,
) -> Result<EpiSet, usize> {
    let mut set = EpiSet::new(sig.len());
    let flow = for_each_epimorphism(group, sig, |v| {
        if set.len() >= cap {
            return ControlFlow::Break(());
        }
        set.push(v);
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Continue(()) => Ok(set),
        ControlFlow::Break(()) => Err(set.len() + 1),
    }
}

pub fn count_epimorphisms(group: &GroupTable, sig: &Signature) -> u64 {
    let mut count = 0u64;
    let _ = for_each_epimorphism(group, sig, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Visits every order-preserving epimorphism in lexicographic order.
///
/// Positions `0..r−1` range over the elements of the prescribed orders; the
/// last entry is forced to the inverse of the running product. The subgroup
/// generated by the prefix is maintained incrementally, and a prefix is
/// abandoned when even adding every element of the remaining orders cannot
/// generate `G`.
pub fn for_each_epimorphism<F>(group: &GroupTable, sig: &Signature, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Element]) -> ControlFlow<()>,
{
    let n = group.order();
    let periods = sig.periods();
    let r = periods.len();
    if periods.iter().any(|&m| !n.is_multiple_of(m as usize)) {
        return ControlFlow::Continue(());
    }
    let mut distinct: Vec<u32> = periods.to_vec();
    distinct.dedup();
    let by_period: Vec<(u32, Vec<Element>)> = distinct
        .iter()
        .map(|&m| (m, group.elements_of_order(m)))
        .collect();
    let class_of = |m: u32| -> &[Element] {
        &by_period
            .iter()
            .find(|(p, _)| *p == m)
            .expect("period listed")
            .1
    };
    if by_period.iter().any(|(_, c)| c.is_empty()) {
        return ControlFlow::Continue(());
    }

    // suffix_bound[d]: elements of the orders required at positions d.., or
    // None when they already generate G on their own.
    let mut suffix_bound: Vec<Option<Vec<Element>>> = vec![None; r + 1];
    for d in (0..r).rev() {
        let mut union: Vec<Element> = periods[d..]
            .iter()
            .flat_map(|&m| class_of(m).iter().copied())
            .collect();
        union.sort_unstable();
        union.dedup();
        if group.generated_subgroup(&union).len() < n {
            suffix_bound[d] = Some(union);
        }
    }
    if suffix_bound[0].is_some() {
        return ControlFlow::Continue(());
    }

    let mut search = Search {
        group,
        periods,
        classes: periods.iter().map(|&m| class_of(m).to_vec()).collect(),
        suffix_bound,
        levels: (0..r).map(|_| Subgroup::new(n)).collect(),
        level_of: vec![usize::MAX; r],
        entries: vec![IDENTITY; r],
        scratch: Subgroup::new(n),
    };
    search.descend(0, IDENTITY, &mut visit)
}

struct Subgroup {
    member: Vec<bool>,
    elems: Vec<Element>,
}

impl Subgroup {
    fn new(n: usize) -> Subgroup {
        Subgroup {
            member: vec![false; n],
            elems: Vec::with_capacity(n),
        }
    }

    fn reset(&mut self) {
        for &x in &self.elems {
            self.member[x as usize] = false;
        }
        self.elems.clear();
    }

    fn close(&mut self, group: &GroupTable, gens: &[Element]) {
        self.reset();
        self.member[IDENTITY as usize] = true;
        self.elems.push(IDENTITY);
        let mut head = 0;
        while head < self.elems.len() {
            let x = self.elems[head];
            for &g in gens {
                let y = group.multiply(x, g);
                if !self.member[y as usize] {
                    self.member[y as usize] = true;
                    self.elems.push(y);
                }
            }
            head += 1;
        }
    }
}

struct Search<'a> {
    group: &'a GroupTable,
    periods: &'a [u32],
    classes: Vec<Vec<Element>>,
    suffix_bound: Vec<Option<Vec<Element>>>,
    /// Slot d holds ⟨y₀,…,y_d⟩ when `level_of[d] == d`.
    levels: Vec<Subgroup>,
    /// Which slot represents ⟨y₀,…,y_d⟩.
    level_of: Vec<usize>,
    entries: Vec<Element>,
    scratch: Subgroup,
}

impl Search<'_> {
    fn descend<F>(&mut self, depth: usize, prefix: Element, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Element]) -> ControlFlow<()>,
    {
        let g = self.group;
        let r = self.periods.len();
        let last = r - 1;
        let n = g.order();
        for ci in 0..self.classes[depth].len() {
            let y = self.classes[depth][ci];
            let running = g.multiply(prefix, y);
            if depth == last - 1 {
                let forced = g.inverse(running);
                if g.element_order(forced) != self.periods[last] {
                    continue;
                }
            }
            self.entries[depth] = y;
            self.update_level(depth, y);
            let size = self.levels[self.level_of[depth]].elems.len();
            if depth == last - 1 {
                if size == n {
                    self.entries[last] = g.inverse(running);
                    visit(&self.entries)?;
                }
                continue;
            }
            if size < n {
                if let Some(bound) = &self.suffix_bound[depth + 1] {
                    let mut gens: Vec<Element> = self.entries[..=depth].to_vec();
                    gens.extend_from_slice(bound);
                    self.scratch.close(g, &gens);
                    if self.scratch.elems.len() < n {
                        continue;
                    }
                }
            }
            self.descend(depth + 1, running, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn update_level(&mut self, depth: usize, y: Element) {
        if depth > 0 {
            let prev = self.level_of[depth - 1];
            if self.levels[prev].member[y as usize] {
                self.level_of[depth] = prev;
                return;
            }
        }
        let gens = &self.entries[..=depth];
        self.levels[depth].close(self.group, gens);
        self.level_of[depth] = depth;
    }
}
