//! The census pipeline: genus → signatures → groups → epi/sequi/equiv counts,
//! plus the census file format, verification and diffing.
//!
//! A census file is canonical JSON: keys sorted, rows sorted by key, one row
//! per line, no floating point values.
//!
//! ```text
//! {"rows":[
//! {"complete":false,"epi":4,"equiv":1,"genus":2,"group":{...},...},
//! ...
//! ],"version":1}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{ControlFlow, RangeInclusive};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{self, canonical_under, join_classes, strong_classes, Move, MoveSet};
use crate::catalog::{groups_of_order, CandidateGroup, Catalog, GroupSource, GroupSpec};
use crate::epimorphism::{self, EpiSet, GenVector};
use crate::error::{BraidError, CensusError};
use crate::group::{Automorphism, Element, GroupTable};
use crate::signature::{
    genus_of_periods, hurwitz_bound, is_hyperbolic, solve_signatures, totient, Rational, Signature,
};

pub const CENSUS_VERSION: u64 = 1;

/// Above this many epimorphisms the set is not stored; see [`classify`].
pub const DEFAULT_EPI_CAP: usize = 5_000_000;

/// How far [`classify`] goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    Epi,
    Sequi,
    #[default]
    Equiv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub epi: u64,
    pub sequi: Option<u64>,
    pub equiv: Option<u64>,
    /// Least member of each strong class, ascending.
    pub strong_representatives: Vec<GenVector>,
    /// Least member of each equivalence class, ascending.
    pub representatives: Vec<GenVector>,
    /// The epimorphism set was too large to store and was processed one
    /// vector at a time.
    pub streamed: bool,
}

/// Counts and classifies the epimorphisms `Γ(sig) → group`.
///
/// `auts` is only called when `mode` needs `Aut(G)`. When more than
/// `epi_cap` epimorphisms exist, only the least member of each strong class
/// is kept: a vector is kept iff no automorphism maps it to something
/// smaller. Moves of `Γ` commute with automorphisms, so the equivalence
/// classes are then joined over those members alone.
pub fn classify(
    group: &GroupTable,
    sig: &Signature,
    mode: Mode,
    epi_cap: usize,
    auts: &dyn Fn() -> Arc<Vec<Automorphism>>,
) -> Result<Classification, BraidError> {
    if mode == Mode::Epi {
        let epi = epimorphism::count_epimorphisms(group, sig);
        return Ok(Classification {
            epi,
            sequi: None,
            equiv: None,
            strong_representatives: Vec::new(),
            representatives: Vec::new(),
            streamed: false,
        });
    }

    let (epi, strong_set, streamed) =
        match epimorphism::enumerate_epimorphisms_capped(group, sig, epi_cap) {
            Ok(set) => {
                if set.is_empty() {
                    return Ok(Classification {
                        epi: 0,
                        sequi: Some(0),
                        equiv: (mode == Mode::Equiv).then_some(0),
                        strong_representatives: Vec::new(),
                        representatives: Vec::new(),
                        streamed: false,
                    });
                }
                let auts = auts();
                let strong = strong_classes(&set, &auts)?;
                let epi = set.len() as u64;
                if mode == Mode::Sequi {
                    return Ok(Classification {
                        epi,
                        sequi: Some(strong.num_classes() as u64),
                        equiv: None,
                        strong_representatives: strong.representative_vectors(&set),
                        representatives: Vec::new(),
                        streamed: false,
                    });
                }
                let braid_moves = MoveSet::new(sig, Vec::new()).braid_moves();
                let equiv = join_classes(group, &set, &strong, &braid_moves)?;
                return Ok(Classification {
                    epi,
                    sequi: Some(strong.num_classes() as u64),
                    equiv: Some(equiv.num_classes() as u64),
                    strong_representatives: strong.representative_vectors(&set),
                    representatives: equiv.representative_vectors(&set),
                    streamed: false,
                });
            }
            Err(_) => {
                let auts = auts();
                let (epi, minima) = stream_strong_minima(group, sig, &auts);
                (epi, EpiSet::from_vectors(sig.len(), minima), true)
            }
        };

    let auts = auts();
    let strong_reps = strong_set.to_vectors();
    if mode == Mode::Sequi {
        return Ok(Classification {
            epi,
            sequi: Some(strong_set.len() as u64),
            equiv: None,
            strong_representatives: strong_reps,
            representatives: Vec::new(),
            streamed,
        });
    }
    let equiv = join_canonical(group, sig, &strong_set, &auts)?;
    Ok(Classification {
        epi,
        sequi: Some(strong_set.len() as u64),
        equiv: Some(equiv.len() as u64),
        strong_representatives: strong_reps,
        representatives: equiv,
        streamed,
    })
}

fn stream_strong_minima(
    group: &GroupTable,
    sig: &Signature,
    auts: &[Automorphism],
) -> (u64, Vec<Vec<Element>>) {
    let mut epi = 0u64;
    let mut minima = Vec::new();
    let mut buf = Vec::with_capacity(sig.len());
    let _ = epimorphism::for_each_epimorphism(group, sig, |v| {
        epi += 1;
        let is_min = auts.iter().all(|a| {
            braid::aut_into(a, v, &mut buf);
            buf.as_slice() >= v
        });
        if is_min {
            minima.push(v.to_vec());
        }
        ControlFlow::Continue(())
    });
    (epi, minima)
}

/// Equivalence classes over a set of strong-class minima.
fn join_canonical(
    group: &GroupTable,
    sig: &Signature,
    minima: &EpiSet,
    auts: &[Automorphism],
) -> Result<Vec<GenVector>, BraidError> {
    let moves = MoveSet::new(sig, Vec::new()).braid_moves();
    let mut parent: Vec<usize> = (0..minima.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let (mut out, mut buf) = (Vec::new(), Vec::new());
    for i in 0..minima.len() {
        let v = minima.get(i);
        for &mv in &moves {
            match mv {
                Move::Alpha(s, t) => braid::alpha_into(group, v, s, t, &mut out),
                Move::Gamma(k) => braid::gamma_into(group, v, k, &mut out),
            }
            let canon = canonical_under(auts, &out, &mut buf);
            let j = minima
                .position(&canon)
                .ok_or_else(|| BraidError::OrbitEscape {
                    mv: mv.to_string(),
                    from: v.to_vec(),
                })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut reps = Vec::new();
    for i in 0..minima.len() {
        if find(&mut parent, i) == i {
            reps.push(GenVector(minima.get(i).to_vec()));
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupRef {
    pub order: usize,
    pub source: GroupSource,
    pub id: u32,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// Every epimorphism was stored and classified.
    Ok,
    /// Classified from strong-class minima; counts are exact.
    Streamed,
    /// No epimorphism exists (kept only on request).
    Empty,
}

/// One `(genus, signature, group)` record of the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub genus: u64,
    pub signature: Vec<u32>,
    pub group: GroupRef,
    pub epi: u64,
    pub sequi: u64,
    pub equiv: u64,
    /// Least member of each equivalence class, as element indices.
    pub representatives: Vec<Vec<Element>>,
    pub complete: bool,
    pub status: RowStatus,
}

/// Sort and identity key of a row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowKey {
    pub genus: u64,
    pub order: usize,
    pub signature: Vec<u32>,
    pub source: GroupSource,
    pub id: u32,
}

impl CensusRow {
    pub fn key(&self) -> RowKey {
        RowKey {
            genus: self.genus,
            order: self.group.order,
            signature: self.signature.clone(),
            source: self.group.source,
            id: self.group.id,
        }
    }
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus {} (0;", self.genus)?;
        for (i, m) in self.signature.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ") order {} {}:{}", self.order, self.source, self.id)
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub include_empty: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub epi_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            include_empty: false,
            jobs: None,
            epi_cap: DEFAULT_EPI_CAP,
        }
    }
}

struct Task {
    genus: u64,
    sig: Signature,
    group: Arc<CandidateGroup>,
    complete: bool,
    auts: Arc<OnceLock<Arc<Vec<Automorphism>>>>,
}

/// Runs the census over a range of genera.
pub fn run_census(
    genera: RangeInclusive<u64>,
    catalog: &Catalog,
    options: &CensusOptions,
) -> Result<Vec<CensusRow>, CensusError> {
    match options.jobs {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .expect("thread pool");
            pool.install(|| run_census_inner(genera, catalog, options))
        }
        None => run_census_inner(genera, catalog, options),
    }
}

fn run_census_inner(
    genera: RangeInclusive<u64>,
    catalog: &Catalog,
    options: &CensusOptions,
) -> Result<Vec<CensusRow>, CensusError> {
    let mut plan: Vec<(u64, usize, Vec<Signature>)> = Vec::new();
    for genus in genera {
        let bound = hurwitz_bound(genus)?;
        for n in 2..=bound {
            let sigs = solve_signatures(genus, n)?;
            if !sigs.is_empty() {
                plan.push((genus, n as usize, sigs));
            }
        }
    }

    let mut orders: Vec<usize> = plan.iter().map(|(_, n, _)| *n).collect();
    orders.sort_unstable();
    orders.dedup();
    type GroupEntry = (
        Vec<(Arc<CandidateGroup>, Arc<OnceLock<Arc<Vec<Automorphism>>>>)>,
        bool,
    );
    let groups: HashMap<usize, GroupEntry> = orders
        .par_iter()
        .map(|&n| {
            let list = groups_of_order(n, catalog)?;
            let entries = list
                .groups
                .into_iter()
                .map(|g| (Arc::new(g), Arc::new(OnceLock::new())))
                .collect();
            Ok((n, (entries, list.complete)))
        })
        .collect::<Result<_, CensusError>>()?;

    let mut tasks = Vec::new();
    for (genus, n, sigs) in &plan {
        let (entries, complete) = &groups[n];
        for sig in sigs {
            for (group, auts) in entries {
                tasks.push(Task {
                    genus: *genus,
                    sig: sig.clone(),
                    group: Arc::clone(group),
                    complete: *complete,
                    auts: Arc::clone(auts),
                });
            }
        }
    }

    let results: Vec<Option<CensusRow>> = tasks
        .par_iter()
        .map(|task| census_row(task, options))
        .collect::<Result<_, BraidError>>()?;
    let mut rows: Vec<CensusRow> = results.into_iter().flatten().collect();
    rows.sort_by_key(|r| r.key());
    Ok(rows)
}

fn census_row(task: &Task, options: &CensusOptions) -> Result<Option<CensusRow>, BraidError> {
    let table = &task.group.table;
    let auts = || Arc::clone(task.auts.get_or_init(|| Arc::new(table.automorphisms())));
    let c = classify(table, &task.sig, Mode::Equiv, options.epi_cap, &auts)?;
    if c.epi == 0 && !options.include_empty {
        return Ok(None);
    }
    let status = match (c.epi, c.streamed) {
        (0, _) => RowStatus::Empty,
        (_, true) => RowStatus::Streamed,
        (_, false) => RowStatus::Ok,
    };
    Ok(Some(CensusRow {
        genus: task.genus,
        signature: task.sig.periods().to_vec(),
        group: GroupRef {
            order: table.order(),
            source: task.group.source,
            id: task.group.id,
            label: task.group.label.clone(),
        },
        epi: c.epi,
        sequi: c.sequi.unwrap_or(0),
        equiv: c.equiv.unwrap_or(0),
        representatives: c.representatives.into_iter().map(|v| v.0).collect(),
        complete: task.complete,
        status,
    }))
}

#[derive(Serialize, Deserialize)]
struct CensusFile {
    version: u64,
    rows: Vec<CensusRow>,
}

/// Canonical serialization: sorted rows, sorted keys, one row per line.
pub fn to_canonical_json(rows: &[CensusRow]) -> String {
    let mut sorted: Vec<&CensusRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.key());
    let mut out = String::from("{\"rows\":[\n");
    for (i, row) in sorted.iter().enumerate() {
        // serde_json's default map type is ordered, which sorts the keys.
        let value = serde_json::to_value(row).expect("rows serialize");
        out.push_str(&value.to_string());
        if i + 1 < sorted.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str(&format!("],\"version\":{CENSUS_VERSION}}}\n"));
    out
}

pub fn emit(rows: &[CensusRow], path: impl AsRef<Path>) -> Result<(), CensusError> {
    let path = path.as_ref();
    std::fs::write(path, to_canonical_json(rows)).map_err(|source| CensusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_census(text: &str, path: &Path) -> Result<Vec<CensusRow>, CensusError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CensusError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let version = value
        .get("version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| CensusError::Format {
            path: path.to_path_buf(),
            message: "missing version".into(),
        })?;
    if version != CENSUS_VERSION {
        return Err(CensusError::SchemaVersion {
            found: version,
            expected: CENSUS_VERSION,
        });
    }
    let file: CensusFile = serde_json::from_value(value).map_err(|e| CensusError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(file.rows)
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<CensusRow>, CensusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CensusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_census(&text, path)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountChange {
    pub key: RowKey,
    /// `(field, old, new)` for each of epi/sequi/equiv that differs.
    pub fields: Vec<(&'static str, u64, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub added: Vec<RowKey>,
    pub removed: Vec<RowKey>,
    pub changed: Vec<CountChange>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.removed.is_empty() && self.changed.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.removed {
            writeln!(f, "- {k}")?;
        }
        for k in &self.added {
            writeln!(f, "+ {k}")?;
        }
        for c in &self.changed {
            write!(f, "~ {}", c.key)?;
            for (name, old, new) in &c.fields {
                write!(f, " {name} {old}->{new}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rows only in `b` are added, rows only in `a` removed.
pub fn diff(a: &[CensusRow], b: &[CensusRow]) -> DiffReport {
    let index = |rows: &[CensusRow]| -> BTreeMap<RowKey, (u64, u64, u64)> {
        rows.iter()
            .map(|r| (r.key(), (r.epi, r.sequi, r.equiv)))
            .collect()
    };
    let (ia, ib) = (index(a), index(b));
    let mut report = DiffReport::default();
    for (k, va) in &ia {
        match ib.get(k) {
            None => report.removed.push(k.clone()),
            Some(vb) if vb != va => {
                let fields = [
                    ("epi", va.0, vb.0),
                    ("sequi", va.1, vb.1),
                    ("equiv", va.2, vb.2),
                ]
                .into_iter()
                .filter(|(_, x, y)| x != y)
                .collect();
                report.changed.push(CountChange {
                    key: k.clone(),
                    fields,
                });
            }
            Some(_) => {}
        }
    }
    report.added = ib.keys().filter(|k| !ia.contains_key(k)).cloned().collect();
    report
}

pub fn diff_files(a: impl AsRef<Path>, b: impl AsRef<Path>) -> Result<DiffReport, CensusError> {
    Ok(diff(&load(a)?, &load(b)?))
}

/// The outcome of one named check over all rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<(RowKey, String)>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> CheckOutcome {
        CheckOutcome {
            name,
            checked: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, row: &CensusRow, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push((row.key(), detail()));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict} {} ({} checked, {} skipped)",
                c.name, c.checked, c.skipped
            )?;
            for (key, detail) in &c.failures {
                writeln!(f, "    {key}: {detail}")?;
            }
        }
        Ok(())
    }
}

/// Rebuilds the table of a row's group: built-in labels are group specs,
/// external groups are looked up in `catalog`.
pub fn resolve_group(group: &GroupRef, catalog: Option<&Catalog>) -> Option<GroupTable> {
    let table = match group.source {
        GroupSource::Builtin => {
            let spec: GroupSpec = group.label.parse().ok()?;
            match catalog {
                Some(c) => c.realize(&spec).ok()?,
                None => crate::catalog::realize(&spec).ok()?,
            }
        }
        GroupSource::External => GroupTable::clone(&catalog?.get(group.order, group.id)?.table),
    };
    (table.order() == group.order).then_some(table)
}

/// Re-checks every row against exact identities that must hold for any
/// correct census.
pub fn verify_rows(rows: &[CensusRow], catalog: Option<&Catalog>) -> VerifyReport {
    let mut rh = CheckOutcome::new("riemann_hurwitz");
    let mut bound = CheckOutcome::new("hurwitz_bound");
    let mut counts = CheckOutcome::new("count_order");
    let mut cyclic = CheckOutcome::new("cyclic_totient");
    let mut vertical = CheckOutcome::new("abelian_vertical_trivial");
    let mut triangle = CheckOutcome::new("distinct_triangle_equiv_eq_sequi");
    let mut reps = CheckOutcome::new("representatives");

    for row in rows {
        let genus_ok = genus_of_periods(&row.signature, row.group.order as u64)
            == Rational::from_integer(row.genus as i64)
            && row.signature.len() >= 3
            && row
                .signature
                .iter()
                .all(|&m| m >= 2 && (row.group.order as u64).is_multiple_of(m as u64))
            && row.signature.windows(2).all(|w| w[0] <= w[1])
            && is_hyperbolic(&row.signature);
        rh.record(row, genus_ok, || {
            "signature, order and genus violate Riemann-Hurwitz".into()
        });

        let within = hurwitz_bound(row.genus).is_ok_and(|b| row.group.order as u64 <= b);
        bound.record(row, within, || {
            format!("order {} above 84(g-1)", row.group.order)
        });

        let ordered = row.equiv <= row.sequi
            && row.sequi <= row.epi
            && (row.epi >= 1 || row.status == RowStatus::Empty)
            && (row.status != RowStatus::Empty
                || (row.epi == 0 && row.sequi == 0 && row.equiv == 0));
        counts.record(row, ordered, || {
            format!("epi {} sequi {} equiv {}", row.epi, row.sequi, row.equiv)
        });

        let table = resolve_group(&row.group, catalog);
        let is_cyclic = match &table {
            Some(t) => Some(t.is_cyclic()),
            None if row.group.source == GroupSource::Builtin => {
                Some(matches!(row.group.label.parse(), Ok(GroupSpec::Cyclic(_))))
            }
            None => None,
        };
        match is_cyclic {
            Some(true) => {
                let phi = totient(row.group.order as u64);
                cyclic.record(row, row.sequi * phi == row.epi, || {
                    format!(
                        "sequi {} * phi({}) = {} != epi {}",
                        row.sequi,
                        row.group.order,
                        row.sequi * phi,
                        row.epi
                    )
                });
            }
            Some(false) => {}
            None => cyclic.skipped += 1,
        }

        if row.signature.len() == 3 && row.signature.windows(2).all(|w| w[0] != w[1]) {
            triangle.record(row, row.equiv == row.sequi, || {
                format!("equiv {} != sequi {}", row.equiv, row.sequi)
            });
        }

        let sig = Signature::new(row.signature.clone()).ok();
        match (&table, &sig) {
            (Some(t), Some(sig)) => {
                if t.is_abelian() {
                    let trivial = row.representatives.iter().all(|v| {
                        let mut out = Vec::new();
                        (1..=v.len()).all(|s| {
                            (s + 1..=v.len()).all(|u| {
                                braid::alpha_into(t, v, s, u, &mut out);
                                out == *v
                            })
                        })
                    });
                    vertical.record(row, trivial, || {
                        "a vertical move moved a representative".into()
                    });
                }
                let valid = row.representatives.len() as u64 == row.equiv
                    && row
                        .representatives
                        .iter()
                        .all(|v| epimorphism::is_valid_vector(t, sig, v))
                    && row.representatives.windows(2).all(|w| w[0] < w[1]);
                reps.record(row, valid, || {
                    "representatives are not valid distinct generating vectors".into()
                });
            }
            _ => {
                vertical.skipped += 1;
                reps.skipped += 1;
            }
        }
    }
    VerifyReport {
        checks: vec![rh, bound, counts, cyclic, vertical, triangle, reps],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_for(genus: u64, order: usize) -> Vec<CensusRow> {
        run_census(genus..=genus, &Catalog::empty(), &CensusOptions::default())
            .unwrap()
            .into_iter()
            .filter(|r| r.group.order == order)
            .collect()
    }

    #[test]
    fn genus_two_order_two() {
        let rows = rows_for(2, 2);
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.signature, vec![2, 2, 2, 2, 2, 2]);
        assert_eq!(r.group.label, "cyclic(2)");
        assert_eq!((r.epi, r.sequi, r.equiv), (1, 1, 1));
        assert_eq!(r.representatives, vec![vec![1, 1, 1, 1, 1, 1]]);
        assert!(!r.complete);
    }

    #[test]
    fn genus_two_z8() {
        let rows = rows_for(2, 8);
        let r = rows
            .iter()
            .find(|r| r.group.label == "cyclic(8)" && r.signature == vec![2, 8, 8])
            .unwrap();
        assert_eq!((r.epi, r.sequi, r.equiv), (4, 1, 1));
        assert!(verify_rows(&rows, None).passed());
    }

    #[test]
    fn tampering_is_flagged() {
        let mut rows = rows_for(2, 8);
        let z8 = rows
            .iter()
            .position(|r| r.group.label == "cyclic(8)" && r.signature == vec![2, 8, 8])
            .unwrap();
        rows[z8].equiv = 2;
        let report = verify_rows(&rows, None);
        assert!(!report.check("count_order").unwrap().passed());

        let mut rows = rows_for(2, 8);
        rows[z8].epi = 5;
        let report = verify_rows(&rows, None);
        assert!(!report.check("cyclic_totient").unwrap().passed());
        assert!(report.check("count_order").unwrap().passed());
    }

    #[test]
    fn streaming_agrees_with_stored() {
        let g = crate::catalog::realize(&GroupSpec::Dihedral(4)).unwrap();
        let sig = Signature::new(vec![2, 2, 2, 2, 2]).unwrap();
        let auts = Arc::new(g.automorphisms());
        let get = || Arc::clone(&auts);
        let stored = classify(&g, &sig, Mode::Equiv, usize::MAX, &get).unwrap();
        let streamed = classify(&g, &sig, Mode::Equiv, 3, &get).unwrap();
        assert!(!stored.streamed && streamed.streamed);
        assert_eq!(stored.epi, streamed.epi);
        assert_eq!(stored.sequi, streamed.sequi);
        assert_eq!(stored.equiv, streamed.equiv);
        assert_eq!(stored.representatives, streamed.representatives);
        assert_eq!(
            stored.strong_representatives,
            streamed.strong_representatives
        );
    }

    #[test]
    fn modes_stop_early() {
        let g = crate::catalog::realize(&GroupSpec::Cyclic(3)).unwrap();
        let sig = Signature::new(vec![3, 3, 3, 3]).unwrap();
        let get = || -> Arc<Vec<Automorphism>> { panic!("automorphisms not needed") };
        let c = classify(&g, &sig, Mode::Epi, usize::MAX, &get).unwrap();
        assert_eq!((c.epi, c.sequi, c.equiv), (6, None, None));
        let get = || Arc::new(g.automorphisms());
        let c = classify(&g, &sig, Mode::Sequi, usize::MAX, &get).unwrap();
        assert_eq!((c.sequi, c.equiv), (Some(3), None));
    }

    #[test]
    fn emit_and_diff() {
        let rows = rows_for(2, 8);
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.json");
        emit(&rows, &a).unwrap();
        assert_eq!(load(&a).unwrap(), rows);
        assert!(diff_files(&a, &a).unwrap().is_empty());

        let mut changed = rows.clone();
        changed[0].equiv += 1;
        changed.pop();
        let report = diff(&rows, &changed);
        assert_eq!(report.changed.len(), 1);
        assert_eq!(
            report.changed[0].fields,
            vec![("equiv", rows[0].equiv, rows[0].equiv + 1)]
        );
        assert_eq!(report.removed, vec![rows.last().unwrap().key()]);
        assert!(report.added.is_empty());
        assert_eq!(diff(&changed, &rows).added, report.removed);
    }

    #[test]
    fn schema_version_mismatch() {
        let err = parse_census("{\"rows\":[],\"version\":2}", Path::new("x")).unwrap_err();
        assert!(matches!(
            err,
            CensusError::SchemaVersion {
                found: 2,
                expected: 1
            }
        ));
        assert!(parse_census("{\"rows\":[]}", Path::new("x")).is_err());
        assert!(parse_census("{\"rows\":[],\"version\":1}", Path::new("x"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn include_empty_keeps_rows_without_actions() {
        let opts = CensusOptions {
            include_empty: true,
            ..CensusOptions::default()
        };
        let rows = run_census(2..=2, &Catalog::empty(), &opts).unwrap();
        let empty: Vec<&CensusRow> = rows
            .iter()
            .filter(|r| r.status == RowStatus::Empty)
            .collect();
        assert!(!empty.is_empty());
        assert!(empty
            .iter()
            .all(|r| r.epi == 0 && r.representatives.is_empty()));
        assert!(verify_rows(&rows, None).passed());
    }
}
