//! Finite groups as explicit multiplication tables.
//!
//! Every group is stored as a dense `n × n` table over element indices
//! `0..n`, with the identity always at index 0. Inverses and element orders
//! are cached at construction, so the hot loops of the epimorphism search and
//! the orbit computations only ever do table lookups.

use std::collections::HashMap;
use std::fmt;

use crate::error::GroupError;

/// Index of a group element inside its [`GroupTable`].
pub type Element = u16;

/// The identity element of every [`GroupTable`].
pub const IDENTITY: Element = 0;

/// Default cap on the order of groups built by permutation closure.
pub const DEFAULT_ORDER_CAP: usize = 2048;

/// A finite group given by its complete multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<Element>,
    inverses: Vec<Element>,
    orders: Vec<u32>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Validates a raw multiplication table (`raw[a][b] = a·b`).
    ///
    /// The identity is located and relabelled to index 0 if necessary.
    /// Associativity is checked in full with Light's test over a generating
    /// set of the table, so a failure always names a genuine triple
    /// `(a, s, b)` with `(a·s)·b ≠ a·(s·b)`, in the caller's original labels.
    pub fn from_multiplication_table(
        raw: &[Vec<usize>],
        label: impl Into<String>,
    ) -> Result<GroupTable, GroupError> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("table is empty".into()));
        }
        if n > Element::MAX as usize + 1 {
            return Err(GroupError::MalformedTable(format!(
                "order {n} does not fit the element index type"
            )));
        }
        for (a, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::MalformedTable(format!(
                    "row {a} contains out-of-range entry {bad}"
                )));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| raw[e][a] == a && raw[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;

        for (a, row) in raw.iter().enumerate() {
            if !(0..n).any(|b| row[b] == identity && raw[b][a] == identity) {
                return Err(GroupError::MissingInverse { element: a });
            }
        }

        // Relabel so that the identity sits at index 0.
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut table = vec![0 as Element; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel(a) * n + relabel(b)] = relabel(raw[a][b]) as Element;
            }
        }

        if let Some((a, s, b)) = find_nonassociative_triple(n, &table) {
            return Err(GroupError::NotAssociative {
                a: relabel(a),
                b: relabel(s),
                c: relabel(b),
            });
        }

        Ok(Self::from_validated(n, table, label.into()))
    }

    /// Closes permutation generators under composition with the default order cap.
    ///
    /// Permutations are image arrays: `p[i]` is the image of point `i`. The
    /// product `p·q` applies `p` first, then `q`.
    pub fn from_permutation_generators(
        degree: usize,
        gens: &[Vec<usize>],
        label: impl Into<String>,
    ) -> Result<GroupTable, GroupError> {
        PermutationClosure::new(degree, gens, DEFAULT_ORDER_CAP).map(|c| c.into_table(label))
    }

    /// Like [`GroupTable::from_permutation_generators`] with an explicit cap.
    pub fn from_permutation_generators_with_cap(
        degree: usize,
        gens: &[Vec<usize>],
        label: impl Into<String>,
        cap: usize,
    ) -> Result<GroupTable, GroupError> {
        PermutationClosure::new(degree, gens, cap).map(|c| c.into_table(label))
    }

    /// Builds a table that is known to be a group (used by the built-in
    /// families). Associativity is still verified; a failure here is a bug in
    /// the caller's formula, so it panics.
    pub(crate) fn from_trusted(n: usize, table: Vec<Element>, label: String) -> GroupTable {
        assert_eq!(table.len(), n * n);
        debug_assert!((0..n).all(|a| table[a] as usize == a && table[a * n] as usize == a));
        if let Some(t) = find_nonassociative_triple(n, &table) {
            panic!("built-in table {label} is not associative at {t:?}");
        }
        Self::from_validated(n, table, label)
    }

    fn from_validated(n: usize, table: Vec<Element>, label: String) -> GroupTable {
        let mut inverses = vec![0 as Element; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == IDENTITY {
                    inverses[a] = b as Element;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut k = 1;
            let mut x = a as Element;
            while x != IDENTITY {
                x = table[x as usize * n + a];
                k += 1;
            }
            orders[a] = k;
        }
        GroupTable {
            order: n,
            table,
            inverses,
            orders,
            label,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        IDENTITY
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> GroupTable {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(|x| x as Element)
    }

    #[inline]
    pub fn multiply(&self, a: Element, b: Element) -> Element {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a as usize]
    }

    /// Returns `b·a·b⁻¹`.
    #[inline]
    pub fn conjugate(&self, a: Element, b: Element) -> Element {
        self.multiply(self.multiply(b, a), self.inverse(b))
    }

    /// Returns the commutator `a·b·a⁻¹·b⁻¹`.
    #[inline]
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(ab, self.inverse(ba))
    }

    #[inline]
    pub fn element_order(&self, a: Element) -> u32 {
        self.orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    /// Multiplies a sequence of elements left to right.
    pub fn product(&self, elems: &[Element]) -> Element {
        elems.iter().fold(IDENTITY, |acc, &x| self.multiply(acc, x))
    }

    /// Raw table row for `a`: `row(a)[b] = a·b`.
    pub fn row(&self, a: Element) -> &[Element] {
        let n = self.order;
        &self.table[a as usize * n..(a as usize + 1) * n]
    }

    /// The table as nested index vectors, the input shape of
    /// [`GroupTable::from_multiplication_table`].
    pub fn to_raw(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a as Element).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&k| k as usize == self.order)
    }

    /// All elements of exact order `m`, ascending.
    pub fn elements_of_order(&self, m: u32) -> Vec<Element> {
        self.elements()
            .filter(|&x| self.element_order(x) == m)
            .collect()
    }

    /// Number of elements of each order `1..=n`, indexed by order.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.order + 1];
        for &k in &self.orders {
            hist[k as usize] += 1;
        }
        hist
    }

    /// The subgroup generated by `gens`, as a sorted list of elements.
    pub fn generated_subgroup(&self, gens: &[Element]) -> Vec<Element> {
        let mut member = vec![false; self.order];
        let mut out = Vec::new();
        close_subgroup(self, gens, &mut member, &mut out);
        out.sort_unstable();
        out
    }

    pub fn is_generating(&self, gens: &[Element]) -> bool {
        self.generated_subgroup(gens).len() == self.order
    }

    /// Checks the homomorphism property `map[a·b] = map[a]·map[b]` into `target`.
    pub fn is_homomorphism_into(&self, target: &GroupTable, map: &[Element]) -> bool {
        map.len() == self.order
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    map[self.multiply(a, b) as usize]
                        == target.multiply(map[a as usize], map[b as usize])
                })
            })
    }

    /// The complete automorphism group, sorted lexicographically by map.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let mut found = Vec::new();
        search_isomorphisms(self, self, false, &mut |map| {
            found.push(Automorphism { map: map.to_vec() });
        });
        found.sort();
        found
    }

    /// Some isomorphism `self → other`, if one exists.
    pub fn isomorphism_to(&self, other: &GroupTable) -> Option<Vec<Element>> {
        if self.order != other.order || self.order_histogram() != other.order_histogram() {
            return None;
        }
        let mut found = None;
        search_isomorphisms(self, other, true, &mut |map| {
            found = Some(map.to_vec());
        });
        found
    }

    pub fn is_isomorphic_to(&self, other: &GroupTable) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Greedy small generating tuple: repeatedly adds the element that
    /// enlarges the generated subgroup the most, ties broken by lowest index.
    pub fn generating_tuple(&self) -> Vec<Element> {
        let n = self.order;
        let mut tuple = Vec::new();
        let mut member = vec![false; n];
        let mut current = Vec::new();
        close_subgroup(self, &tuple, &mut member, &mut current);
        while current.len() < n {
            let mut best: Option<(usize, Element)> = None;
            for x in self.elements() {
                if member[x as usize] {
                    continue;
                }
                tuple.push(x);
                let size = subgroup_size(self, &tuple);
                tuple.pop();
                if best.is_none_or(|(s, _)| size > s) {
                    best = Some((size, x));
                }
            }
            let (_, x) = best.expect("a proper subgroup misses some element");
            tuple.push(x);
            current.clear();
            member.iter_mut().for_each(|m| *m = false);
            close_subgroup(self, &tuple, &mut member, &mut current);
        }
        tuple
    }

    /// Order-`n` direct product with pairs `(a, b)` encoded as `a·|other| + b`.
    pub fn direct_product(&self, other: &GroupTable, label: impl Into<String>) -> GroupTable {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut table = vec![0 as Element; n * n];
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                let a = a1 * n2 + a2;
                for b1 in 0..n1 {
                    let c1 = self.table[a1 * n1 + b1] as usize;
                    for b2 in 0..n2 {
                        let c2 = other.table[a2 * n2 + b2] as usize;
                        table[a * n + b1 * n2 + b2] = (c1 * n2 + c2) as Element;
                    }
                }
            }
        }
        GroupTable::from_trusted(n, table, label.into())
    }
}

/// An automorphism of a [`GroupTable`], stored as its element map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    map: Vec<Element>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Automorphism {
        Automorphism {
            map: (0..order).map(|x| x as Element).collect(),
        }
    }

    /// Wraps a map after checking it is a bijective endomorphism of `group`.
    pub fn new(group: &GroupTable, map: Vec<Element>) -> Result<Automorphism, GroupError> {
        let n = group.order();
        let mut seen = vec![false; n];
        let bijective = map.len() == n
            && map.iter().all(|&x| {
                let fresh = (x as usize) < n && !seen[x as usize];
                if fresh {
                    seen[x as usize] = true;
                }
                fresh
            });
        if !bijective || !group.is_homomorphism_into(group, &map) {
            return Err(GroupError::NotAnAutomorphism);
        }
        Ok(Automorphism { map })
    }

    /// Inner automorphism `x ↦ g·x·g⁻¹`.
    pub fn inner(group: &GroupTable, g: Element) -> Automorphism {
        Automorphism {
            map: group.elements().map(|x| group.conjugate(x, g)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0 as Element; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y as usize] = x as Element;
        }
        Automorphism { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y as usize)
    }
}

/// The elements of a permutation group together with its table.
#[derive(Clone, Debug)]
pub struct PermutationClosure {
    degree: usize,
    elements: Vec<Vec<u32>>,
    table: Vec<Element>,
}

impl PermutationClosure {
    /// Breadth-first closure of `gens` under right multiplication. Elements
    /// are indexed in discovery order, identity first.
    pub fn new(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation {
                index: 0,
                reason: "degree must be at least 1".into(),
            });
        }
        let cap = cap.min(Element::MAX as usize + 1);
        let mut perms: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
        for (index, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(GroupError::InvalidPermutation {
                    index,
                    reason: format!("length {} differs from degree {degree}", g.len()),
                });
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(GroupError::InvalidPermutation {
                        index,
                        reason: format!("{g:?} is not a bijection of 0..{degree}"),
                    });
                }
                seen[x] = true;
            }
            perms.push(g.iter().map(|&x| x as u32).collect());
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        // parent[x] = (p, i) with x = p · gens[i]
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        // rmul[x * k + i] = x · gens[i]
        let k = perms.len();
        let mut rmul: Vec<usize> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (i, g) in perms.iter().enumerate() {
                let y: Vec<u32> = elements[head].iter().map(|&p| g[p as usize]).collect();
                let next = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= cap {
                            return Err(GroupError::ClosureTooLarge { cap });
                        }
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((head, i));
                        j
                    }
                };
                rmul.push(next);
            }
            head += 1;
        }

        // table[a][b] = table[a][parent(b)] · gens[gen(b)], filled in discovery order of b.
        let n = elements.len();
        let mut table = vec![0 as Element; n * n];
        for a in 0..n {
            table[a * n] = a as Element;
            for b in 1..n {
                let (p, i) = parent[b];
                let ap = table[a * n + p] as usize;
                table[a * n + b] = rmul[ap * k + i] as Element;
            }
        }
        Ok(PermutationClosure {
            degree,
            elements,
            table,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The permutation behind each element index.
    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<Element> {
        self.elements
            .iter()
            .position(|e| {
                e.len() == perm.len() && e.iter().zip(perm).all(|(&a, &b)| a as usize == b)
            })
            .map(|i| i as Element)
    }

    pub fn into_table(self, label: impl Into<String>) -> GroupTable {
        let n = self.elements.len();
        GroupTable::from_trusted(n, self.table, label.into())
    }
}

/// Adds the closure of `gens` to an already closed `member`/`out` set.
/// Right multiplication by the generators suffices in a finite group.
fn close_subgroup(
    group: &GroupTable,
    gens: &[Element],
    member: &mut [bool],
    out: &mut Vec<Element>,
) {
    if !member[IDENTITY as usize] {
        member[IDENTITY as usize] = true;
        out.push(IDENTITY);
    }
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        for &g in gens {
            let y = group.multiply(x, g);
            if !member[y as usize] {
                member[y as usize] = true;
                out.push(y);
            }
        }
        head += 1;
    }
}

fn subgroup_size(group: &GroupTable, gens: &[Element]) -> usize {
    let mut member = vec![false; group.order()];
    let mut out = Vec::new();
    close_subgroup(group, gens, &mut member, &mut out);
    out.len()
}

/// Light's associativity test. The elements `s` for which
/// `(a·s)·b = a·(s·b)` holds for all `a, b` form a sub-magma, so it is enough
/// to check a set `S` whose sub-magma closure is the whole table.
fn find_nonassociative_triple(n: usize, table: &[Element]) -> Option<(usize, usize, usize)> {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let mut in_closure = vec![false; n];
    let mut closure: Vec<usize> = Vec::with_capacity(n);
    let mut gens = Vec::new();
    let mut next_candidate = 0;
    while closure.len() < n {
        while in_closure[next_candidate] {
            next_candidate += 1;
        }
        gens.push(next_candidate);
        in_closure[next_candidate] = true;
        closure.push(next_candidate);
        let mut head = closure.len() - 1;
        while head < closure.len() {
            let x = closure[head];
            let mut i = 0;
            while i <= head {
                let y = closure[i];
                for z in [mul(x, y), mul(y, x)] {
                    if !in_closure[z] {
                        in_closure[z] = true;
                        closure.push(z);
                    }
                }
                i += 1;
            }
            head += 1;
        }
    }
    for &s in &gens {
        for a in 0..n {
            let as_ = mul(a, s);
            for b in 0..n {
                if mul(as_, b) != mul(a, mul(s, b)) {
                    return Some((a, s, b));
                }
            }
        }
    }
    None
}

/// Backtracking search for isomorphisms `source → target`.
///
/// A generating tuple `(t₁,…,t_k)` of the source is fixed; every candidate
/// image tuple of elements with matching orders is extended along a
/// spanning tree of the Cayley graph and kept if the result is a bijection
/// compatible with right multiplication by every `tᵢ`, which forces the
/// homomorphism property.
fn search_isomorphisms(
    source: &GroupTable,
    target: &GroupTable,
    first_only: bool,
    visit: &mut dyn FnMut(&[Element]),
) {
    let n = source.order();
    if n != target.order() {
        return;
    }
    let tuple = source.generating_tuple();
    let k = tuple.len();

    // Spanning tree: tree[j] = (parent, generator) with element order[j] = parent · t_gen.
    let mut visit_order: Vec<Element> = vec![IDENTITY];
    let mut tree: Vec<(Element, usize)> = vec![(IDENTITY, usize::MAX)];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < visit_order.len() {
        let x = visit_order[head];
        for (i, &t) in tuple.iter().enumerate() {
            let y = source.multiply(x, t);
            if !seen[y as usize] {
                seen[y as usize] = true;
                visit_order.push(y);
                tree.push((x, i));
            }
        }
        head += 1;
    }
    debug_assert_eq!(visit_order.len(), n);

    let candidates: Vec<Vec<Element>> = tuple
        .iter()
        .map(|&t| target.elements_of_order(source.element_order(t)))
        .collect();
    // Orders of pairwise products t_i·t_j are invariants that prune early.
    let pair_orders: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            (0..i)
                .map(|j| source.element_order(source.multiply(tuple[j], tuple[i])))
                .collect()
        })
        .collect();

    let mut images = vec![IDENTITY; k];
    let mut map = vec![IDENTITY; n];
    let mut hit = vec![false; n];
    let mut stop = false;

    struct Ctx<'a> {
        source: &'a GroupTable,
        target: &'a GroupTable,
        tuple: &'a [Element],
        visit_order: &'a [Element],
        tree: &'a [(Element, usize)],
        candidates: &'a [Vec<Element>],
        pair_orders: &'a [Vec<u32>],
        first_only: bool,
    }

    fn extend(
        ctx: &Ctx,
        depth: usize,
        images: &mut [Element],
        map: &mut [Element],
        hit: &mut [bool],
        stop: &mut bool,
        visit: &mut dyn FnMut(&[Element]),
    ) {
        if *stop {
            return;
        }
        if depth == images.len() {
            if build_map(ctx, images, map, hit) {
                visit(map);
                if ctx.first_only {
                    *stop = true;
                }
            }
            return;
        }
        for &u in &ctx.candidates[depth] {
            let consistent = (0..depth).all(|j| {
                ctx.target.element_order(ctx.target.multiply(images[j], u))
                    == ctx.pair_orders[depth][j]
            });
            if !consistent {
                continue;
            }
            images[depth] = u;
            extend(ctx, depth + 1, images, map, hit, stop, visit);
            if *stop {
                return;
            }
        }
    }

    fn build_map(ctx: &Ctx, images: &[Element], map: &mut [Element], hit: &mut [bool]) -> bool {
        hit.iter_mut().for_each(|h| *h = false);
        map[IDENTITY as usize] = IDENTITY;
        hit[IDENTITY as usize] = true;
        for j in 1..ctx.visit_order.len() {
            let (p, i) = ctx.tree[j];
            let y = ctx.target.multiply(map[p as usize], images[i]);
            if hit[y as usize] {
                return false;
            }
            hit[y as usize] = true;
            map[ctx.visit_order[j] as usize] = y;
        }
        // Compatibility with right multiplication by each generator.
        ctx.source.elements().all(|x| {
            ctx.tuple.iter().zip(images).all(|(&t, &u)| {
                map[ctx.source.multiply(x, t) as usize] == ctx.target.multiply(map[x as usize], u)
            })
        })
    }

    let ctx = Ctx {
        source,
        target,
        tuple: &tuple,
        visit_order: &visit_order,
        tree: &tree,
        candidates: &candidates,
        pair_orders: &pair_orders,
        first_only,
    };
    extend(&ctx, 0, &mut images, &mut map, &mut hit, &mut stop, visit);
}
