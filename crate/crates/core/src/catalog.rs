//! Candidate groups of a given order.
//!
//! Groups come from two places: a handful of built-in families realized
//! directly as tables, and an external catalog file of permutation
//! generators keyed by `(order, id)`. Only the catalog can claim that the
//! groups of some order are complete.
//!
//! The catalog file is UTF-8 JSON:
//!
//! ```json
//! {"version": 1,
//!  "complete_orders": [6],
//!  "groups": [{"order": 6, "id": 1, "name": "S3", "degree": 3,
//!              "generators": [[1, 2, 0], [1, 0, 2]]}]}
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::CatalogError;
use crate::group::{Element, GroupTable, PermutationClosure, DEFAULT_ORDER_CAP};

/// A description of a group that can be turned into a table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Dicyclic group of order `4n`; `Dicyclic(2)` is the quaternion group.
    Dicyclic(usize),
    /// Abelian group given by invariant factors `d₁ | d₂ | … | d_k`.
    Abelian(Vec<usize>),
    Symmetric(usize),
    Alternating(usize),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    External {
        order: usize,
        id: u32,
    },
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    /// The order the spec describes, if it can be computed without a table.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Abelian(f) => f.iter().product(),
            GroupSpec::Symmetric(k) => factorial(*k)?,
            GroupSpec::Alternating(k) => factorial(*k)?.div_ceil(2),
            GroupSpec::DirectProduct(a, b) => a.order()?.checked_mul(b.order()?)?,
            GroupSpec::External { order, .. } => *order,
        })
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn is_external(&self) -> bool {
        matches!(self, GroupSpec::External { .. })
    }
}

fn factorial(k: usize) -> Option<usize> {
    (1..=k).try_fold(1usize, |acc, x| acc.checked_mul(x))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Abelian(factors) => {
                write!(f, "abelian(")?;
                for (i, d) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Symmetric(k) => write!(f, "symmetric({k})"),
            GroupSpec::Alternating(k) => write!(f, "alternating({k})"),
            GroupSpec::DirectProduct(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::External { order, id } => write!(f, "{order}:{id}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = CatalogError;

    /// Parses the forms produced by `Display`, e.g. `dihedral(5)`,
    /// `abelian(2,4)`, `product(dicyclic(2),cyclic(3))` or `54:6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogError::BadSpecSyntax(s.to_string());
        let s = s.trim();
        if let Some((order, id)) = s.split_once(':') {
            return Ok(GroupSpec::External {
                order: order.trim().parse().map_err(|_| bad())?,
                id: id.trim().parse().map_err(|_| bad())?,
            });
        }
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = s[..open].trim();
        let args = split_top_level(&s[open + 1..s.len() - 1]).ok_or_else(bad)?;
        let ints = || -> Result<Vec<usize>, CatalogError> {
            args.iter()
                .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let one = || -> Result<usize, CatalogError> {
            match ints()?.as_slice() {
                [k] => Ok(*k),
                _ => Err(bad()),
            }
        };
        Ok(match name {
            "cyclic" => GroupSpec::Cyclic(one()?),
            "dihedral" => GroupSpec::Dihedral(one()?),
            "dicyclic" => GroupSpec::Dicyclic(one()?),
            "abelian" => GroupSpec::Abelian(ints()?),
            "symmetric" => GroupSpec::Symmetric(one()?),
            "alternating" => GroupSpec::Alternating(one()?),
            "product" => match args.as_slice() {
                [a, b] => GroupSpec::product(a.parse()?, b.parse()?),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        })
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

/// Realizes a built-in spec with the default order cap.
pub fn realize(spec: &GroupSpec) -> Result<GroupTable, CatalogError> {
    realize_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn realize_with_cap(spec: &GroupSpec, cap: usize) -> Result<GroupTable, CatalogError> {
    let unsupported = |reason: &str| CatalogError::UnsupportedSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    match spec.order() {
        None => return Err(unsupported("order overflows")),
        Some(n) if n > cap.min(Element::MAX as usize + 1) => {
            return Err(unsupported(&format!("order {n} exceeds the cap of {cap}")))
        }
        Some(0) => return Err(unsupported("parameters must be positive")),
        Some(_) => {}
    }
    let label = spec.to_string();
    let table = match spec {
        GroupSpec::Cyclic(n) => cyclic_table(*n, label),
        GroupSpec::Dihedral(n) => dihedral_table(*n, label),
        GroupSpec::Dicyclic(n) => dicyclic_table(*n, label),
        GroupSpec::Abelian(factors) => {
            if factors.iter().any(|&d| d < 2) {
                return Err(unsupported("invariant factors must be at least 2"));
            }
            if factors.windows(2).any(|w| w[1] % w[0] != 0) {
                return Err(unsupported("each invariant factor must divide the next"));
            }
            factors
                .iter()
                .fold(cyclic_table(1, String::new()), |acc, &d| {
                    acc.direct_product(&cyclic_table(d, String::new()), String::new())
                })
                .with_label(label)
        }
        GroupSpec::Symmetric(k) => {
            let k = *k;
            let mut gens = Vec::new();
            if k >= 2 {
                gens.push(transposition(k, 0, 1));
                gens.push((0..k).map(|i| (i + 1) % k).collect());
            }
            PermutationClosure::new(k, &gens, cap)?.into_table(label)
        }
        GroupSpec::Alternating(k) => {
            let k = *k;
            let gens: Vec<Vec<usize>> = (2..k)
                .map(|i| {
                    let mut p: Vec<usize> = (0..k).collect();
                    p[0] = 1;
                    p[1] = i;
                    p[i] = 0;
                    p
                })
                .collect();
            PermutationClosure::new(k.max(1), &gens, cap)?.into_table(label)
        }
        GroupSpec::DirectProduct(a, b) => {
            let (ta, tb) = (realize_with_cap(a, cap)?, realize_with_cap(b, cap)?);
            ta.direct_product(&tb, label)
        }
        GroupSpec::External { .. } => {
            return Err(unsupported("external groups need a catalog"));
        }
    };
    Ok(table)
}

fn transposition(k: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    p.swap(a, b);
    p
}

fn cyclic_table(n: usize, label: String) -> GroupTable {
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as Element))
        .collect();
    GroupTable::from_trusted(n, table, label)
}

/// Elements `rᵏsᵉ` at index `k + n·e`, with `s r s⁻¹ = r⁻¹`.
fn dihedral_table(n: usize, label: String) -> GroupTable {
    let size = 2 * n;
    let mut table = vec![0 as Element; size * size];
    for e in 0..2 {
        for k in 0..n {
            for f in 0..2 {
                for l in 0..n {
                    let rot = if e == 0 { (k + l) % n } else { (k + n - l) % n };
                    table[(k + n * e) * size + l + n * f] = (rot + n * ((e + f) % 2)) as Element;
                }
            }
        }
    }
    GroupTable::from_trusted(size, table, label)
}

/// Elements `aᵏxᵉ` at index `k + 2n·e`, with `a²ⁿ = 1`, `x² = aⁿ`,
/// `x a x⁻¹ = a⁻¹`.
fn dicyclic_table(n: usize, label: String) -> GroupTable {
    let m = 2 * n;
    let size = 2 * m;
    let mut table = vec![0 as Element; size * size];
    for e in 0..2 {
        for k in 0..m {
            for f in 0..2 {
                for l in 0..m {
                    let mut rot = if e == 0 { (k + l) % m } else { (k + m - l) % m };
                    if e == 1 && f == 1 {
                        rot = (rot + n) % m;
                    }
                    table[(k + m * e) * size + l + m * f] = (rot + m * ((e + f) % 2)) as Element;
                }
            }
        }
    }
    GroupTable::from_trusted(size, table, label)
}

/// One group loaded from a catalog file.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub order: usize,
    pub id: u32,
    pub name: String,
    pub table: Arc<GroupTable>,
}

/// Groups loaded from an external catalog file.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    complete_orders: BTreeSet<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    version: u64,
    #[serde(default)]
    complete_orders: Vec<usize>,
    groups: Vec<CatalogRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogRecord {
    order: usize,
    id: u32,
    name: String,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl Catalog {
    pub fn empty() -> Catalog {
        Catalog::default()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Catalog::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| CatalogError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.version != 1 {
            return Err(CatalogError::UnsupportedVersion(file.version));
        }
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(file.groups.len());
        for (record, g) in file.groups.into_iter().enumerate() {
            if !seen.insert((g.order, g.id)) {
                return Err(CatalogError::Duplicate {
                    record,
                    order: g.order,
                    id: g.id,
                });
            }
            let cap = DEFAULT_ORDER_CAP.max(g.order);
            let table = GroupTable::from_permutation_generators_with_cap(
                g.degree,
                &g.generators,
                g.name.clone(),
                cap,
            )
            .map_err(|source| CatalogError::InvalidRecord { record, source })?;
            if table.order() != g.order {
                return Err(CatalogError::OrderMismatch {
                    record,
                    declared: g.order,
                    actual: table.order(),
                });
            }
            entries.push(CatalogEntry {
                order: g.order,
                id: g.id,
                name: g.name,
                table: Arc::new(table),
            });
        }
        entries.sort_by_key(|e| (e.order, e.id));
        Ok(Catalog {
            entries,
            complete_orders: file.complete_orders.into_iter().collect(),
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn is_complete_for(&self, order: usize) -> bool {
        self.complete_orders.contains(&order)
    }

    pub fn complete_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.complete_orders.iter().copied()
    }

    pub fn get(&self, order: usize, id: u32) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.order == order && e.id == id)
    }

    pub fn of_order(&self, order: usize) -> impl Iterator<Item = &CatalogEntry> + '_ {
        self.entries.iter().filter(move |e| e.order == order)
    }

    /// Realizes any spec, looking up external groups in this catalog.
    /// Direct products may mix built-in and external factors.
    pub fn realize(&self, spec: &GroupSpec) -> Result<GroupTable, CatalogError> {
        match spec {
            GroupSpec::External { order, id } => self
                .get(*order, *id)
                .map(|e| GroupTable::clone(&e.table))
                .ok_or(CatalogError::UnknownExternal {
                    order: *order,
                    id: *id,
                }),
            GroupSpec::DirectProduct(a, b) if contains_external(spec) => {
                let (ta, tb) = (self.realize(a)?, self.realize(b)?);
                Ok(ta.direct_product(&tb, spec.to_string()))
            }
            _ => realize(spec),
        }
    }
}

fn contains_external(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::External { .. } => true,
        GroupSpec::DirectProduct(a, b) => contains_external(a) || contains_external(b),
        _ => false,
    }
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum GroupSource {
    Builtin,
    External,
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupSource::Builtin => "builtin",
            GroupSource::External => "external",
        })
    }
}

/// A group offered for some order, with where it came from.
#[derive(Clone, Debug)]
pub struct CandidateGroup {
    pub source: GroupSource,
    pub id: u32,
    pub label: String,
    pub spec: GroupSpec,
    pub table: Arc<GroupTable>,
}

#[derive(Clone, Debug)]
pub struct GroupList {
    pub groups: Vec<CandidateGroup>,
    /// True only when the external catalog declares these are all the groups.
    pub complete: bool,
}

/// Invariant-factor lists `d₁ | … | d_k` (each ≥ 2, `k ≥ 1`) with product `n`.
pub fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, prev: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 1 {
            out.push(current.clone());
            return;
        }
        for d in 2..=rem {
            if !rem.is_multiple_of(d) || !d.is_multiple_of(prev) {
                continue;
            }
            let rest = rem / d;
            if rest != 1 && !rest.is_multiple_of(d) {
                continue;
            }
            current.push(d);
            rec(rest, d, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n == 1 {
        return vec![Vec::new()];
    }
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The cyclic group first, then the other abelian groups of order `n`.
fn abelian_specs(n: usize) -> Vec<GroupSpec> {
    let mut specs = vec![GroupSpec::Cyclic(n)];
    specs.extend(
        abelian_invariants(n)
            .into_iter()
            .filter(|f| f.len() >= 2)
            .map(GroupSpec::Abelian),
    );
    specs
}

/// Nonabelian building blocks whose order divides `n`, in a fixed order.
fn nonabelian_bases(n: usize) -> Vec<GroupSpec> {
    let mut bases = Vec::new();
    for m in 3..=n / 2 {
        if n.is_multiple_of(2 * m) {
            bases.push(GroupSpec::Dihedral(m));
        }
    }
    for m in 2..=n / 4 {
        if n.is_multiple_of(4 * m) {
            bases.push(GroupSpec::Dicyclic(m));
        }
    }
    for spec in [
        GroupSpec::Alternating(4),
        GroupSpec::Symmetric(4),
        GroupSpec::Alternating(5),
        GroupSpec::Symmetric(5),
    ] {
        if n.is_multiple_of(spec.order().expect("small")) {
            bases.push(spec);
        }
    }
    bases
}

/// Built-in candidate specs of order `n`, before isomorphism reduction.
pub fn builtin_specs(n: usize) -> Vec<GroupSpec> {
    let mut specs = abelian_specs(n);
    let bases = nonabelian_bases(n);
    let simple: Vec<&GroupSpec> = bases.iter().filter(|b| b.order() == Some(n)).collect();
    specs.extend(simple.into_iter().cloned());
    for b in &bases {
        let bo = b.order().expect("small");
        if bo >= n {
            continue;
        }
        for a in abelian_specs(n / bo) {
            specs.push(GroupSpec::product(b.clone(), a));
        }
    }
    for (i, b1) in bases.iter().enumerate() {
        for b2 in &bases[i..] {
            if b1.order().zip(b2.order()).map(|(x, y)| x * y) == Some(n) {
                specs.push(GroupSpec::product(b1.clone(), b2.clone()));
            }
        }
    }
    specs
}

/// Candidate groups of order `n`, one per isomorphism class among the
/// built-ins plus every catalog entry of that order. A built-in isomorphic
/// to a catalog entry is dropped in favour of the entry.
pub fn groups_of_order(n: usize, catalog: &Catalog) -> Result<GroupList, CatalogError> {
    let externals: Vec<&CatalogEntry> = catalog.of_order(n).collect();
    let mut kept: Vec<(GroupSpec, Arc<GroupTable>)> = Vec::new();
    for spec in builtin_specs(n) {
        let table = match realize(&spec) {
            Ok(t) => t,
            Err(CatalogError::UnsupportedSpec { .. }) => continue,
            Err(e) => return Err(e),
        };
        let duplicate = kept.iter().any(|(_, t)| t.is_isomorphic_to(&table))
            || externals.iter().any(|e| e.table.is_isomorphic_to(&table));
        if !duplicate {
            kept.push((spec, Arc::new(table)));
        }
    }
    let mut groups: Vec<CandidateGroup> = kept
        .into_iter()
        .enumerate()
        .map(|(i, (spec, table))| CandidateGroup {
            source: GroupSource::Builtin,
            id: i as u32 + 1,
            label: spec.to_string(),
            spec,
            table,
        })
        .collect();
    groups.extend(externals.into_iter().map(|e| CandidateGroup {
        source: GroupSource::External,
        id: e.id,
        label: e.name.clone(),
        spec: GroupSpec::External { order: n, id: e.id },
        table: Arc::clone(&e.table),
    }));
    groups.sort_by(|a, b| (a.source, a.id, &a.label).cmp(&(b.source, b.id, &b.label)));
    Ok(GroupList {
        groups,
        complete: catalog.is_complete_for(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_orders(g: &GroupTable) -> Vec<u32> {
        let mut o = g.element_orders().to_vec();
        o.sort_unstable();
        o
    }

    #[test]
    fn family_orders() {
        assert_eq!(realize(&GroupSpec::Cyclic(1)).unwrap().order(), 1);
        let d10 = realize(&GroupSpec::Dihedral(5)).unwrap();
        assert_eq!(d10.order(), 10);
        assert_eq!(sorted_orders(&d10), vec![1, 2, 2, 2, 2, 2, 5, 5, 5, 5]);
        let a = realize(&GroupSpec::Abelian(vec![2, 4])).unwrap();
        assert_eq!(sorted_orders(&a), vec![1, 2, 2, 2, 4, 4, 4, 4]);
        let q8 = realize(&GroupSpec::Dicyclic(2)).unwrap();
        assert_eq!(sorted_orders(&q8), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert!(!q8.is_abelian());
        assert_eq!(realize(&GroupSpec::Symmetric(4)).unwrap().order(), 24);
        assert_eq!(realize(&GroupSpec::Alternating(5)).unwrap().order(), 60);
        assert_eq!(realize(&GroupSpec::Alternating(2)).unwrap().order(), 1);
        let p = realize(&GroupSpec::product(
            GroupSpec::Dihedral(3),
            GroupSpec::Cyclic(2),
        ))
        .unwrap();
        assert_eq!(p.order(), 12);
    }

    #[test]
    fn unsupported_specs() {
        assert!(matches!(
            realize(&GroupSpec::Symmetric(8)),
            Err(CatalogError::UnsupportedSpec { .. })
        ));
        assert!(matches!(
            realize(&GroupSpec::Abelian(vec![4, 2])),
            Err(CatalogError::UnsupportedSpec { .. })
        ));
        assert!(matches!(
            realize(&GroupSpec::Cyclic(0)),
            Err(CatalogError::UnsupportedSpec { .. })
        ));
        assert!(realize(&GroupSpec::External { order: 6, id: 1 }).is_err());
    }

    #[test]
    fn realize_is_deterministic() {
        let spec: GroupSpec = "product(dicyclic(3),abelian(2,2))".parse().unwrap();
        assert_eq!(realize(&spec).unwrap(), realize(&spec).unwrap());
    }

    #[test]
    fn spec_syntax_round_trip() {
        for s in [
            "cyclic(6)",
            "dihedral(5)",
            "dicyclic(2)",
            "abelian(2,4)",
            "symmetric(3)",
            "alternating(4)",
            "product(dihedral(3),product(cyclic(2),cyclic(3)))",
            "54:6",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        for bad in [
            "cyclic",
            "cyclic(a)",
            "product(cyclic(2))",
            "foo(3)",
            "cyclic(2",
            "1:x",
        ] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn invariant_factor_lists() {
        assert_eq!(
            abelian_invariants(8),
            vec![vec![2, 2, 2], vec![2, 4], vec![8]]
        );
        assert_eq!(abelian_invariants(12), vec![vec![2, 6], vec![12]]);
        assert_eq!(abelian_invariants(7), vec![vec![7]]);
    }

    #[test]
    fn small_orders_from_builtins() {
        let empty = Catalog::empty();
        let labels = |n| -> Vec<String> {
            groups_of_order(n, &empty)
                .unwrap()
                .groups
                .into_iter()
                .map(|g| g.label)
                .collect()
        };
        assert_eq!(labels(1), vec!["cyclic(1)"]);
        assert_eq!(labels(4), vec!["cyclic(4)", "abelian(2,2)"]);
        assert_eq!(labels(6), vec!["cyclic(6)", "dihedral(3)"]);
        assert_eq!(labels(8).len(), 5);
        assert!(!groups_of_order(8, &empty).unwrap().complete);
    }

    const S3_CATALOG: &str = r#"{"version": 1, "complete_orders": [6],
        "groups": [{"order": 6, "id": 1, "name": "S3", "degree": 3,
                    "generators": [[1, 2, 0], [1, 0, 2]]}]}"#;

    #[test]
    fn catalog_loading() {
        let empty =
            Catalog::from_json(r#"{"version": 1, "complete_orders": [], "groups": []}"#).unwrap();
        assert!(empty.entries().is_empty());

        let cat = Catalog::from_json(S3_CATALOG).unwrap();
        assert_eq!(cat.entries().len(), 1);
        assert_eq!(cat.entries()[0].table.order(), 6);

        let wrong = S3_CATALOG.replace("\"order\": 6", "\"order\": 7");
        assert!(matches!(
            Catalog::from_json(&wrong),
            Err(CatalogError::OrderMismatch {
                record: 0,
                declared: 7,
                actual: 6
            })
        ));
    }

    #[test]
    fn catalog_errors() {
        let err = Catalog::from_json("{\"version\": 1,\n \"groups\": [}").unwrap_err();
        assert!(
            matches!(err, CatalogError::Parse { line: 2, .. }),
            "{err:?}"
        );
        let err = Catalog::from_json(r#"{"version": 2, "groups": []}"#).unwrap_err();
        assert!(matches!(err, CatalogError::UnsupportedVersion(2)));
        let dup = r#"{"version": 1, "groups": [
            {"order": 2, "id": 1, "name": "a", "degree": 2, "generators": [[1, 0]]},
            {"order": 2, "id": 1, "name": "b", "degree": 2, "generators": [[1, 0]]}]}"#;
        assert!(matches!(
            Catalog::from_json(dup),
            Err(CatalogError::Duplicate {
                record: 1,
                order: 2,
                id: 1
            })
        ));
        let bad = r#"{"version": 1, "groups": [
            {"order": 2, "id": 1, "name": "a", "degree": 2, "generators": [[1, 1]]}]}"#;
        assert!(matches!(
            Catalog::from_json(bad),
            Err(CatalogError::InvalidRecord { record: 0, .. })
        ));
    }

    #[test]
    fn catalog_supersedes_isomorphic_builtin() {
        let cat = Catalog::from_json(S3_CATALOG).unwrap();
        let list = groups_of_order(6, &cat).unwrap();
        assert!(list.complete);
        let labels: Vec<(GroupSource, String)> = list
            .groups
            .iter()
            .map(|g| (g.source, g.label.clone()))
            .collect();
        assert_eq!(
            labels,
            vec![
                (GroupSource::Builtin, "cyclic(6)".to_string()),
                (GroupSource::External, "S3".to_string())
            ]
        );
        let t = cat.realize(&"6:1".parse().unwrap()).unwrap();
        assert_eq!(t.order(), 6);
        assert!(matches!(
            cat.realize(&"6:2".parse().unwrap()),
            Err(CatalogError::UnknownExternal { order: 6, id: 2 })
        ));
    }
}
