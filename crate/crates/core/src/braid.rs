//! The action of `Aut(G)` and of the orientation-preserving automorphisms of
//! `Γ` on generating vectors, and the resulting orbit partitions.
//!
//! The automorphisms of `Γ` act through two families of moves on a vector
//! `(y₁,…,y_r)`:
//!
//! * the vertical moves `α_{s,t}` (images of the pure braid generators), for
//!   every `1 ≤ s < t ≤ r`:
//!   - `y_s ↦ (y_s y_t) y_s (y_s y_t)⁻¹`,
//!   - `y_t ↦ y_s y_t y_s⁻¹`,
//!   - `yᵢ ↦ [y_s, y_t] yᵢ [y_s, y_t]⁻¹` for `s < i < t`,
//!   - every other entry is fixed;
//! * the braid swaps `γᵢ: (yᵢ, yᵢ₊₁) ↦ (yᵢ yᵢ₊₁ yᵢ⁻¹, yᵢ)`, allowed only when
//!   `mᵢ = mᵢ₊₁`, since the induced permutation of branch points has to
//!   preserve the periods.
//!
//! `Aut(G)` acts entrywise. Positions in the public API are 1-based.
//!
//! Every move permutes the finite set `E` of valid vectors, so the group it
//! generates is reached by forward closure alone: the inverse of a
//! permutation of a finite set is one of its powers. Entrywise automorphisms
//! commute with the word maps above, so the moves of `Γ` are well defined on
//! `Aut(G)`-orbits; the full classes are computed by joining strong classes
//! along the moves applied to one member of each.

use std::fmt;

use crate::epimorphism::{EpiSet, GenVector};
use crate::error::BraidError;
use crate::group::{Automorphism, Element, GroupTable};
use crate::signature::Signature;

/// A single generator of the action on generating vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `α_{s,t}`, 1-based `s < t`.
    Alpha(usize, usize),
    /// `γᵢ`, 1-based.
    Gamma(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Alpha(s, t) => write!(f, "alpha({s},{t})"),
            Move::Gamma(i) => write!(f, "gamma({i})"),
        }
    }
}

/// The generating moves for one signature and group.
#[derive(Clone, Debug)]
pub struct MoveSet {
    pub alphas: Vec<(usize, usize)>,
    pub gammas: Vec<usize>,
    pub auts: Vec<Automorphism>,
}

impl MoveSet {
    pub fn new(sig: &Signature, auts: Vec<Automorphism>) -> MoveSet {
        let r = sig.len();
        let alphas = (1..=r)
            .flat_map(|s| (s + 1..=r).map(move |t| (s, t)))
            .collect();
        let gammas = (1..r).filter(|&i| sig.same_period_at(i)).collect();
        MoveSet {
            alphas,
            gammas,
            auts,
        }
    }

    /// All moves of `Γ`: vertical moves followed by legal swaps.
    pub fn braid_moves(&self) -> Vec<Move> {
        self.alpha_moves()
            .into_iter()
            .chain(self.gamma_moves())
            .collect()
    }

    pub fn alpha_moves(&self) -> Vec<Move> {
        self.alphas
            .iter()
            .map(|&(s, t)| Move::Alpha(s, t))
            .collect()
    }

    pub fn gamma_moves(&self) -> Vec<Move> {
        self.gammas.iter().map(|&i| Move::Gamma(i)).collect()
    }
}

/// Applies `α_{s,t}` to `v`, writing into `out`. Indices are not checked.
pub fn alpha_into(group: &GroupTable, v: &[Element], s: usize, t: usize, out: &mut Vec<Element>) {
    out.clear();
    out.extend_from_slice(v);
    let (ys, yt) = (v[s - 1], v[t - 1]);
    let st = group.multiply(ys, yt);
    out[s - 1] = group.conjugate(ys, st);
    out[t - 1] = group.conjugate(yt, ys);
    if t > s + 1 {
        let c = group.commutator(ys, yt);
        for i in s..t - 1 {
            out[i] = group.conjugate(v[i], c);
        }
    }
}

/// Applies `γᵢ` to `v`, writing into `out`. The period condition is not checked.
pub fn gamma_into(group: &GroupTable, v: &[Element], i: usize, out: &mut Vec<Element>) {
    out.clear();
    out.extend_from_slice(v);
    out[i - 1] = group.conjugate(v[i], v[i - 1]);
    out[i] = v[i - 1];
}

pub fn aut_into(aut: &Automorphism, v: &[Element], out: &mut Vec<Element>) {
    out.clear();
    out.extend(v.iter().map(|&x| aut.apply(x)));
}

fn move_into(group: &GroupTable, mv: Move, v: &[Element], out: &mut Vec<Element>) {
    match mv {
        Move::Alpha(s, t) => alpha_into(group, v, s, t, out),
        Move::Gamma(i) => gamma_into(group, v, i, out),
    }
}

pub fn apply_alpha(
    group: &GroupTable,
    v: &GenVector,
    s: usize,
    t: usize,
) -> Result<GenVector, BraidError> {
    let r = v.0.len();
    if !(1 <= s && s < t && t <= r) {
        return Err(BraidError::IndexOutOfRange(format!(
            "alpha({s},{t}) on length {r}"
        )));
    }
    let mut out = Vec::with_capacity(r);
    alpha_into(group, &v.0, s, t, &mut out);
    Ok(GenVector(out))
}

pub fn apply_gamma(
    group: &GroupTable,
    sig: &Signature,
    v: &GenVector,
    i: usize,
) -> Result<GenVector, BraidError> {
    let r = v.0.len();
    if i == 0 || i >= r || r != sig.len() {
        return Err(BraidError::IndexOutOfRange(format!(
            "gamma({i}) on length {r}"
        )));
    }
    if !sig.same_period_at(i) {
        return Err(BraidError::IllegalGamma {
            position: i,
            left: sig.periods()[i - 1],
            right: sig.periods()[i],
        });
    }
    let mut out = Vec::with_capacity(r);
    gamma_into(group, &v.0, i, &mut out);
    Ok(GenVector(out))
}

pub fn apply_aut(aut: &Automorphism, v: &GenVector) -> GenVector {
    GenVector(v.0.iter().map(|&x| aut.apply(x)).collect())
}

/// A partition of a sorted [`EpiSet`] into classes.
///
/// Classes are numbered in increasing order of their representatives, and a
/// representative is always the lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrbitPartition {
    pub class_of: Vec<u32>,
    /// Index into the set of each class's least member.
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl OrbitPartition {
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    /// Builds the canonical numbering from any labelling of the elements.
    fn from_labels(labels: &[usize]) -> OrbitPartition {
        let mut renumber = vec![u32::MAX; labels.len()];
        let mut class_of = Vec::with_capacity(labels.len());
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if renumber[l] == u32::MAX {
                renumber[l] = representatives.len() as u32;
                representatives.push(i);
                sizes.push(0);
            }
            let c = renumber[l];
            class_of.push(c);
            sizes[c as usize] += 1;
        }
        OrbitPartition {
            class_of,
            representatives,
            sizes,
        }
    }

    pub fn representative_vectors(&self, set: &EpiSet) -> Vec<GenVector> {
        self.representatives
            .iter()
            .map(|&i| GenVector(set.get(i).to_vec()))
            .collect()
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        let mut image = vec![u32::MAX; self.num_classes()];
        self.class_of.iter().zip(&coarser.class_of).all(|(&c, &d)| {
            let slot = &mut image[c as usize];
            if *slot == u32::MAX {
                *slot = d;
            }
            *slot == d
        })
    }
}

/// Disjoint-set forest with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root; not needed for correctness.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn labels(mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

fn lookup(
    set: &EpiSet,
    image: &[Element],
    mv: impl fmt::Display,
    from: &[Element],
) -> Result<usize, BraidError> {
    set.position(image).ok_or_else(|| BraidError::OrbitEscape {
        mv: mv.to_string(),
        from: from.to_vec(),
    })
}

/// Orbits of `Aut(G)` acting entrywise: the strong equivalence classes.
pub fn strong_classes(set: &EpiSet, auts: &[Automorphism]) -> Result<OrbitPartition, BraidError> {
    let n = set.len();
    let mut label = vec![usize::MAX; n];
    let mut buf = Vec::with_capacity(set.width());
    // Seeds are taken in sorted order, so each seed is the least member of
    // its orbit: any smaller member would have claimed it earlier.
    for seed in 0..n {
        if label[seed] != usize::MAX {
            continue;
        }
        let v = set.get(seed);
        for (k, a) in auts.iter().enumerate() {
            aut_into(a, v, &mut buf);
            let j = lookup(set, &buf, format_args!("aut#{k}"), v)?;
            label[j] = seed;
        }
        label[seed] = seed;
    }
    Ok(OrbitPartition::from_labels(&label))
}

/// Orbits under the given moves applied to every vector.
pub fn orbits_under(
    group: &GroupTable,
    set: &EpiSet,
    moves: &[Move],
) -> Result<OrbitPartition, BraidError> {
    let mut uf = UnionFind::new(set.len());
    let mut buf = Vec::with_capacity(set.width());
    for i in 0..set.len() {
        let v = set.get(i);
        for &mv in moves {
            move_into(group, mv, v, &mut buf);
            let j = lookup(set, &buf, mv, v)?;
            uf.union(i, j);
        }
    }
    Ok(OrbitPartition::from_labels(&uf.labels()))
}

/// Orbits of the vertical action (the moves `α_{s,t}` only).
pub fn vertical_classes(group: &GroupTable, set: &EpiSet) -> Result<OrbitPartition, BraidError> {
    let r = set.width();
    let moves: Vec<Move> = (1..=r)
        .flat_map(|s| (s + 1..=r).map(move |t| Move::Alpha(s, t)))
        .collect();
    orbits_under(group, set, &moves)
}

/// Joins the classes of `base` along `moves`, applying each move to one
/// member per class. Valid whenever `moves` commute with the action that
/// produced `base`.
pub fn join_classes(
    group: &GroupTable,
    set: &EpiSet,
    base: &OrbitPartition,
    moves: &[Move],
) -> Result<OrbitPartition, BraidError> {
    let mut uf = UnionFind::new(base.num_classes());
    let mut buf = Vec::with_capacity(set.width());
    for (c, &rep) in base.representatives.iter().enumerate() {
        let v = set.get(rep);
        for &mv in moves {
            move_into(group, mv, v, &mut buf);
            let j = lookup(set, &buf, mv, v)?;
            uf.union(c, base.class_of[j] as usize);
        }
    }
    let class_labels = uf.labels();
    let labels: Vec<usize> = base
        .class_of
        .iter()
        .map(|&c| base.representatives[class_labels[c as usize]])
        .collect();
    Ok(OrbitPartition::from_labels(&labels))
}

/// Orbits under `Aut(G)` together with every `α_{s,t}` and every legal `γᵢ`:
/// the topological equivalence classes.
pub fn equivalence_classes(
    group: &GroupTable,
    set: &EpiSet,
    moves: &MoveSet,
) -> Result<OrbitPartition, BraidError> {
    let strong = strong_classes(set, &moves.auts)?;
    join_classes(group, set, &strong, &moves.braid_moves())
}

/// Order in which the two halves of a combined move `η ↦ a η α` are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Apply the move of `Γ`, then the automorphism of `G`.
    MoveThenAut,
    /// Apply the automorphism of `G`, then the move of `Γ`.
    AutThenMove,
}

/// Equivalence classes by breadth-first closure over every composite
/// generator `a ∘ m` (or `m ∘ a`), with `a ∈ Aut(G)` and `m` ranging over the
/// moves of `Γ` and the identity.
///
/// Costs `|E|·|Aut(G)|·(#moves + 1)`; intended as a cross-check of
/// [`equivalence_classes`] on small cases.
pub fn equivalence_classes_by_convention(
    group: &GroupTable,
    set: &EpiSet,
    moves: &MoveSet,
    convention: Convention,
) -> Result<OrbitPartition, BraidError> {
    let braid = moves.braid_moves();
    let n = set.len();
    let mut label = vec![usize::MAX; n];
    let mut queue = Vec::new();
    let (mut mid, mut out) = (Vec::new(), Vec::new());
    for seed in 0..n {
        if label[seed] != usize::MAX {
            continue;
        }
        label[seed] = seed;
        queue.clear();
        queue.push(seed);
        let mut head = 0;
        while head < queue.len() {
            let v = set.get(queue[head]);
            head += 1;
            for a in &moves.auts {
                for mv in std::iter::once(None).chain(braid.iter().copied().map(Some)) {
                    match (convention, mv) {
                        (_, None) => aut_into(a, v, &mut out),
                        (Convention::MoveThenAut, Some(m)) => {
                            move_into(group, m, v, &mut mid);
                            aut_into(a, &mid, &mut out);
                        }
                        (Convention::AutThenMove, Some(m)) => {
                            aut_into(a, v, &mut mid);
                            move_into(group, m, &mid, &mut out);
                        }
                    }
                    let j = lookup(set, &out, "composite", v)?;
                    if label[j] == usize::MAX {
                        label[j] = seed;
                        queue.push(j);
                    }
                }
            }
        }
    }
    Ok(OrbitPartition::from_labels(&label))
}

/// Least element of the `Aut(G)`-orbit of `v`.
pub fn canonical_under(
    auts: &[Automorphism],
    v: &[Element],
    buf: &mut Vec<Element>,
) -> Vec<Element> {
    let mut best = v.to_vec();
    for a in auts {
        aut_into(a, v, buf);
        if buf.as_slice() < best.as_slice() {
            best.clear();
            best.extend_from_slice(buf);
        }
    }
    best
}
