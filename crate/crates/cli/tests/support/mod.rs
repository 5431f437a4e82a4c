//! Complete catalogs for orders where every group is a semidirect product of
//! groups we can already build.
//!
//! Candidates `N ⋊_φ H` are generated for every homomorphism `φ: H → Aut(N)`,
//! deduplicated by isomorphism, and accepted as complete only when the number
//! of classes equals the known number of groups of that order.

use std::collections::{HashMap, VecDeque};

use planar_actions::catalog::{self, GroupSpec};
use planar_actions::group::{Automorphism, Element, GroupTable};

/// Number of isomorphism classes of groups of each order used below.
pub const KNOWN_GROUP_COUNTS: [(usize, usize); 3] = [(27, 5), (54, 15), (56, 13)];

fn known_count(order: usize) -> usize {
    KNOWN_GROUP_COUNTS
        .iter()
        .find(|(n, _)| *n == order)
        .unwrap()
        .1
}

fn builtin(spec: &str) -> GroupTable {
    catalog::realize(&spec.parse::<GroupSpec>().unwrap()).unwrap()
}

/// `(n₁, h₁)(n₂, h₂) = (n₁ · φ(h₁)(n₂), h₁h₂)`, element `(n, h)` at `n + |N|·h`.
pub fn semidirect(
    n: &GroupTable,
    h: &GroupTable,
    phi: &[Automorphism],
    label: String,
) -> GroupTable {
    let (a, b) = (n.order(), h.order());
    let mut table = vec![vec![0usize; a * b]; a * b];
    for h1 in h.elements() {
        for n1 in n.elements() {
            let row = &mut table[n1 as usize + a * h1 as usize];
            for h2 in h.elements() {
                for n2 in n.elements() {
                    let nn = n.multiply(n1, phi[h1 as usize].apply(n2));
                    let hh = h.multiply(h1, h2);
                    row[n2 as usize + a * h2 as usize] = nn as usize + a * hh as usize;
                }
            }
        }
    }
    GroupTable::from_multiplication_table(&table, label).unwrap()
}

/// Every homomorphism `H → Aut(N)`, as the list of images indexed by element.
pub fn homomorphisms(h: &GroupTable, auts: &[Automorphism]) -> Vec<Vec<Automorphism>> {
    let gens = h.generating_tuple();
    let id = Automorphism::identity(auts[0].map().len());
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        if let Some(phi) = extend(
            h,
            &gens,
            &choice.iter().map(|&i| &auts[i]).collect::<Vec<_>>(),
            &id,
        ) {
            out.push(phi);
        }
        let mut k = gens.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < auts.len() {
                break;
            }
            choice[k] = 0;
        }
    }
    out
}

fn extend(
    h: &GroupTable,
    gens: &[Element],
    images: &[&Automorphism],
    id: &Automorphism,
) -> Option<Vec<Automorphism>> {
    let mut phi: Vec<Option<Automorphism>> = vec![None; h.order()];
    phi[h.identity() as usize] = Some(id.clone());
    let mut queue = VecDeque::from([h.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, img) in gens.iter().zip(images) {
            let y = h.multiply(x, s) as usize;
            let value = phi[x as usize].as_ref().unwrap().compose(img);
            match &phi[y] {
                Some(existing) if *existing != value => return None,
                Some(_) => {}
                None => {
                    phi[y] = Some(value);
                    queue.push_back(y as Element);
                }
            }
        }
    }
    let phi: Vec<Automorphism> = phi.into_iter().map(Option::unwrap).collect();
    for a in h.elements() {
        for b in h.elements() {
            if phi[h.multiply(a, b) as usize] != phi[a as usize].compose(&phi[b as usize]) {
                return None;
            }
        }
    }
    Some(phi)
}

/// Keeps one group per isomorphism class, in input order.
pub fn dedup_isomorphic(groups: Vec<GroupTable>) -> Vec<GroupTable> {
    let mut kept: Vec<GroupTable> = Vec::new();
    let mut by_histogram: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for g in groups {
        let key = g.order_histogram();
        let bucket = by_histogram.entry(key).or_default();
        if bucket.iter().any(|&i| kept[i].is_isomorphic_to(&g)) {
            continue;
        }
        bucket.push(kept.len());
        kept.push(g);
    }
    kept
}

fn all_extensions(pairs: &[(GroupTable, GroupTable)]) -> Vec<GroupTable> {
    let mut out = Vec::new();
    for (n, h) in pairs {
        let auts = n.automorphisms();
        for phi in homomorphisms(h, &auts) {
            let label = format!("{}:{}", n.label(), h.label());
            out.push(semidirect(n, h, &phi, label));
        }
    }
    out
}

fn complete(order: usize, groups: Vec<GroupTable>) -> Result<Vec<GroupTable>, String> {
    let classes = dedup_isomorphic(groups);
    if classes.len() != known_count(order) {
        return Err(format!(
            "order {order}: {} classes, expected {}",
            classes.len(),
            known_count(order)
        ));
    }
    Ok(classes)
}

/// All groups of order 27: extensions of ℤ₃ by ℤ₉ or ℤ₃², and ℤ₂₇.
pub fn groups_of_order_27() -> Result<Vec<GroupTable>, String> {
    let c3 = builtin("cyclic(3)");
    let mut groups = vec![builtin("cyclic(27)")];
    groups.extend(all_extensions(&[
        (builtin("cyclic(9)"), c3.clone()),
        (builtin("abelian(3,3)"), c3),
    ]));
    complete(27, groups)
}

/// All groups of order 54. The Sylow 3-subgroup has index 2, so it is
/// normal and complemented by ℤ₂.
pub fn groups_of_order_54() -> Result<Vec<GroupTable>, String> {
    let c2 = builtin("cyclic(2)");
    let pairs: Vec<_> = groups_of_order_27()?
        .into_iter()
        .map(|p| (p, c2.clone()))
        .collect();
    complete(54, all_extensions(&pairs))
}

/// All groups of order 56. Either the Sylow 7-subgroup is normal, or there
/// are eight Sylow 7-subgroups, leaving room for one normal ℤ₂³ only.
pub fn groups_of_order_56() -> Result<Vec<GroupTable>, String> {
    let c7 = builtin("cyclic(7)");
    let eights = [
        "cyclic(8)",
        "abelian(2,4)",
        "abelian(2,2,2)",
        "dihedral(4)",
        "dicyclic(2)",
    ];
    let mut pairs: Vec<_> = eights.iter().map(|s| (c7.clone(), builtin(s))).collect();
    pairs.push((builtin("abelian(2,2,2)"), c7));
    complete(56, all_extensions(&pairs))
}

/// Catalog JSON listing `groups` in their right regular representations.
pub fn catalog_json(groups: &[(usize, Vec<GroupTable>)]) -> String {
    let mut records = Vec::new();
    for (order, list) in groups {
        for (i, g) in list.iter().enumerate() {
            let gens: Vec<Vec<usize>> = g
                .generating_tuple()
                .iter()
                .map(|&s| g.elements().map(|x| g.multiply(x, s) as usize).collect())
                .collect();
            records.push(format!(
                "{{\"order\":{order},\"id\":{},\"name\":\"{}\",\"degree\":{order},\"generators\":{gens:?}}}",
                i + 1,
                g.label()
            ));
        }
    }
    let orders: Vec<usize> = groups.iter().map(|(n, _)| *n).collect();
    format!(
        "{{\"version\":1,\"complete_orders\":{orders:?},\"groups\":[\n{}\n]}}\n",
        records.join(",\n")
    )
}
