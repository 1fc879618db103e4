use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigUint;
use clap::ValueEnum;
use serde::Serialize;

use geodetic::counting::{closed_form_counts, ClosedForm, Family as CountFamily, PartitionTable};
use geodetic::dioph::{build_kn_system, build_moore_system, GeodeticSystem};
use geodetic::enumeration::{
    collection_summary, dedup_orbits, EdgeAction, EnumerationError, Enumerator, OrbitClass, SolutionRecord,
};
use geodetic::graph::{
    compute_metric, is_geodetic_even_circuit_with, is_geodetic_neighborhood_with, is_geodetic_unique_with,
    subdivide, GeodeticityReport,
};
use geodetic::moore::{build_base, BaseName};
use geodetic::plesnik::{build_plesnik, PlesnikAssignment};
use geodetic::Graph;

use crate::args::*;
use crate::manifest::RunManifest;

/// Largest right-hand-side stream `enum` accepts without
/// `--max-tuples-override`: 11^6, i.e. Petersen up to D = 12.
pub const MAX_TUPLES: u64 = 1_771_561;

/// A result that contradicts the theory (exit status 3).
#[derive(Debug)]
pub struct InternalFailure(pub String);

impl fmt::Display for InternalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InternalFailure {}

fn enumeration_error(e: EnumerationError) -> anyhow::Error {
    if e.is_internal() {
        anyhow!(InternalFailure(e.to_string()))
    } else {
        anyhow!(e)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let manifest_path = cli.manifest.clone();
    match cli.command {
        Command::Build(a) => build(a, manifest_path),
        Command::System(a) => system(a, manifest_path),
        Command::Enum(a) => enumerate(a, cli.jobs, manifest_path),
        Command::Verify(a) => verify(a, manifest_path),
        Command::Orbits(a) => orbits(a, cli.jobs, manifest_path),
        Command::Count(a) => count(a, manifest_path),
        Command::Export(a) => export(a, manifest_path),
    }
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map_or_else(String::new, |p| p.get_name().to_string())
}

fn parse_base(name: &str) -> Result<BaseName> {
    name.parse::<BaseName>().map_err(|e| anyhow!(e))
}

fn load_base(name: &str) -> Result<Graph> {
    Ok(build_base(&parse_base(name)?)?)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_json(&text).with_context(|| format!("parsing graph {}", path.display()))
}

/// Writes `text` to `out`, or to standard output.
fn emit(out: Option<&Path>, text: &str, manifest: &mut RunManifest) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            manifest.output(p);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn build(a: BuildArgs, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("build");
    m.param("base", &a.base);
    let name = parse_base(&a.base)?;
    let g = match (&a.lengths, &a.plesnik) {
        (Some(lengths), _) => {
            m.param("lengths", lengths);
            subdivide(&build_base(&name)?, lengths)?
        }
        (None, Some(values)) => {
            m.param("plesnik", values);
            let BaseName::Complete(n) = name else {
                bail!("--plesnik needs a complete base such as k4 or k5, got {name}");
            };
            build_plesnik(n, &PlesnikAssignment::positional(values.clone()))?
        }
        (None, None) => build_base(&name)?,
    };
    m.count("vertices", g.vertex_count());
    m.count("edges", g.edge_count());
    emit(a.out.as_deref(), &(g.to_json() + "\n"), &mut m)?;
    m.finish(manifest_path.as_deref())
}

fn system_for(name: &BaseName, root: usize) -> Result<GeodeticSystem> {
    let base = build_base(name)?;
    if root >= base.vertex_count() {
        bail!("root {root} is not a vertex of {name} ({} vertices)", base.vertex_count());
    }
    Ok(match name {
        BaseName::Complete(n) if *n >= 5 => build_kn_system(*n)?,
        _ => build_moore_system(&base, root)?,
    })
}

fn system(a: SystemArgs, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("system");
    m.param("base", &a.base);
    m.param("root", a.root);
    let sys = system_for(&parse_base(&a.base)?, a.root)?;
    m.count("rows", sys.rows().len());
    m.count("odd_rows", sys.odd_count());
    m.count("even_rows", sys.even_count());
    m.count("variables", sys.variable_count());
    emit(a.out.as_deref(), &(sys.to_json() + "\n"), &mut m)?;
    m.finish(manifest_path.as_deref())
}

fn enumerator_for(base: &str, root: usize) -> Result<Enumerator> {
    let name = parse_base(base)?;
    if !matches!(name, BaseName::C5 | BaseName::Complete(4) | BaseName::Petersen) {
        bail!("enumeration supports k4, c5 and petersen, got {name}; complete graphs K_n are counted with `count kn`");
    }
    let base = build_base(&name)?;
    if root >= base.vertex_count() {
        bail!("root {root} is not a vertex of {name} ({} vertices)", base.vertex_count());
    }
    Enumerator::new(&base, root).map_err(enumeration_error)
}

fn run_enumeration(e: &Enumerator, d: u32, allow_large: bool) -> Result<Vec<SolutionRecord>> {
    let total = e.tuples(d).map_err(enumeration_error)?.total();
    if total > BigUint::from(MAX_TUPLES) && !allow_large {
        bail!("{total} right-hand sides exceed the cap of {MAX_TUPLES}; pass --max-tuples-override to run anyway");
    }
    let mut records = e.enumerate(d).map_err(enumeration_error)?;
    dedup_orbits(e.base(), &mut records).map_err(enumeration_error)?;
    Ok(records)
}

fn csv_text(header: Vec<String>, rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn solutions_csv(records: &[SolutionRecord], m: usize, e: usize) -> Result<String> {
    let mut header: Vec<String> = (1..=m).map(|j| format!("k_{j}")).collect();
    header.extend((1..=e).map(|j| format!("x_{j}")));
    header.extend(["diameter", "girth", "orbit_id"].map(String::from));
    csv_text(
        header,
        records.iter().map(|r| {
            let mut row: Vec<String> = r.rhs.k_values.iter().map(u32::to_string).collect();
            row.extend(r.lengths.iter().map(u32::to_string));
            row.push(r.diameter.to_string());
            row.push(r.girth.to_string());
            row.push(r.orbit_id.map_or(String::new(), |o| o.to_string()));
            row
        }),
    )
}

fn orbits_csv(classes: &[OrbitClass]) -> Result<String> {
    csv_text(
        ["orbit_id", "members", "representative"].map(String::from).to_vec(),
        classes.iter().map(|c| vec![c.id.to_string(), c.members.to_string(), join(&c.representative)]),
    )
}

/// One row of the per-collection table, with the 1-based solution rows that
/// realize it.
#[derive(Debug, Serialize)]
struct CollectionRow {
    group: String,
    collection: Vec<u32>,
    permutations: String,
    found: usize,
    diameter: u32,
    girth: u32,
    complete: bool,
    solution_rows: Vec<usize>,
}

fn collection_rows(records: &[SolutionRecord]) -> Vec<CollectionRow> {
    let mut rows_of: BTreeMap<(Vec<u32>, u32, u32), Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        rows_of.entry((r.collection(), r.diameter, r.girth)).or_default().push(i + 1);
    }
    collection_summary(records)
        .into_iter()
        .map(|s| CollectionRow {
            group: s.collection.group_label(),
            permutations: s.collection.permutations.to_string(),
            found: s.found,
            diameter: s.diameter,
            girth: s.girth,
            complete: s.complete(),
            solution_rows: rows_of.remove(&(s.collection.values.clone(), s.diameter, s.girth)).unwrap_or_default(),
            collection: s.collection.values,
        })
        .collect()
}

fn collections_csv(rows: &[CollectionRow]) -> Result<String> {
    csv_text(
        ["group", "collection", "permutations", "found", "diameter", "girth", "complete", "solution_rows"]
            .map(String::from)
            .to_vec(),
        rows.iter().map(|r| {
            vec![
                r.group.clone(),
                join(&r.collection),
                r.permutations.clone(),
                r.found.to_string(),
                r.diameter.to_string(),
                r.girth.to_string(),
                r.complete.to_string(),
                join(&r.solution_rows),
            ]
        }),
    )
}

fn json_text<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn enumerate(a: EnumArgs, jobs: Option<usize>, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("enum");
    m.param("jobs", jobs);
    m.param("base", &a.base);
    m.param("diameter", a.diameter);
    m.param("root", a.root);
    m.param("format", value_name(a.format));
    m.param("max_tuples_override", a.max_tuples_override);
    let e = enumerator_for(&a.base, a.root)?;
    let records = run_enumeration(&e, a.diameter, a.max_tuples_override)?;
    let base = e.base();
    let classes = {
        let vectors: Vec<Vec<u32>> = records.iter().map(|r| r.lengths.clone()).collect();
        EdgeAction::new(base).orbits(&vectors).0
    };
    let table = collection_rows(&records);
    m.count("solutions", records.len());
    m.count("orbits", classes.len());
    m.count("collections", table.len());

    for row in &table {
        eprintln!(
            "group {}: collection {{{}}}, {} of {} permutations, ({}, {})",
            row.group,
            row.collection.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            row.found,
            row.permutations,
            row.diameter,
            row.girth
        );
    }
    eprintln!("{} solutions in {} orbits", records.len(), classes.len());

    let (solutions, orbit_text, collections, ext) = match a.format {
        Format::Csv => (
            solutions_csv(&records, e.system().odd_count(), base.edge_count())?,
            orbits_csv(&classes)?,
            collections_csv(&table)?,
            "csv",
        ),
        Format::Json => (json_text(&records)?, json_text(&classes)?, json_text(&table)?, "json"),
    };
    let mut manifest_target = manifest_path;
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            emit(Some(&dir.join(format!("solutions.{ext}"))), &solutions, &mut m)?;
            emit(Some(&dir.join(format!("orbits.{ext}"))), &orbit_text, &mut m)?;
            emit(Some(&dir.join(format!("collections.{ext}"))), &collections, &mut m)?;
            manifest_target.get_or_insert_with(|| dir.join("manifest.json"));
        }
        None => print!("{solutions}"),
    }
    if let Some(dir) = &a.dot_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, r) in records.iter().enumerate() {
            let g = r.graph(base);
            let stem = format!("solution_{:05}", i + 1);
            fs::write(dir.join(format!("{stem}.dot")), g.to_dot(&stem))?;
            fs::write(dir.join(format!("{stem}.json")), g.to_json() + "\n")?;
        }
        m.output(dir);
    }
    m.finish(manifest_target.as_deref())
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    vertices: usize,
    edges: usize,
    diameter: u32,
    girth: Option<u32>,
    is_geodetic: bool,
    /// Set for `all`: whether the three tests agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    reports: BTreeMap<&'static str, GeodeticityReport>,
}

fn verify(a: VerifyArgs, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("verify");
    m.param("method", value_name(a.method));
    m.input(&a.graph);
    let g = load_graph(&a.graph)?;
    let metric = compute_metric(&g);
    let mut reports = BTreeMap::new();
    if matches!(a.method, Method::Unique | Method::All) {
        reports.insert("unique", is_geodetic_unique_with(&g, &metric));
    }
    if matches!(a.method, Method::EvenCircuit | Method::All) {
        reports.insert("even_circuit", is_geodetic_even_circuit_with(&g, &metric));
    }
    if matches!(a.method, Method::Neighborhood | Method::All) {
        reports.insert("neighborhood", is_geodetic_neighborhood_with(&g, &metric));
    }
    let verdicts: Vec<bool> = reports.values().map(|r| r.is_geodetic).collect();
    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    let report = VerifyReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        diameter: metric.diameter,
        girth: metric.girth,
        is_geodetic: verdicts.iter().all(|&v| v),
        agree: (a.method == Method::All).then_some(agree),
        reports,
    };
    m.count("geodetic", usize::from(report.is_geodetic));
    print!("{}", json_text(&report)?);
    eprintln!("{}", if report.is_geodetic { "geodetic" } else { "not geodetic" });
    m.finish(manifest_path.as_deref())?;
    if !agree {
        return Err(anyhow!(InternalFailure(format!("geodeticity tests disagree on {}", a.graph.display()))));
    }
    Ok(())
}

fn read_solution_lengths(path: &Path, edges: usize) -> Result<Vec<Vec<u32>>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let header = r.headers()?.clone();
    let cols: Vec<usize> = header.iter().enumerate().filter(|(_, h)| h.starts_with("x_")).map(|(i, _)| i).collect();
    if cols.len() != edges {
        bail!("{} has {} length columns but the base has {edges} edges", path.display(), cols.len());
    }
    r.records()
        .enumerate()
        .map(|(row, rec)| {
            let rec = rec?;
            cols.iter()
                .map(|&c| rec[c].parse::<u32>().with_context(|| format!("row {}: bad length '{}'", row + 1, &rec[c])))
                .collect()
        })
        .collect()
}

fn orbits(a: OrbitsArgs, jobs: Option<usize>, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("orbits");
    m.param("jobs", jobs);
    m.param("base", &a.base);
    m.param("root", a.root);
    let (base, vectors) = match (&a.solutions, a.diameter) {
        (Some(path), _) => {
            m.input(path);
            let base = load_base(&a.base)?;
            let v = read_solution_lengths(path, base.edge_count())?;
            (base, v)
        }
        (None, Some(d)) => {
            m.param("diameter", d);
            let e = enumerator_for(&a.base, a.root)?;
            let records = run_enumeration(&e, d, a.max_tuples_override)?;
            (e.base().clone(), records.into_iter().map(|r| r.lengths).collect())
        }
        (None, None) => bail!("give --diameter or --solutions"),
    };
    let (classes, _) = EdgeAction::new(&base).orbits(&vectors);
    m.count("solutions", vectors.len());
    m.count("orbits", classes.len());
    eprintln!("{} vectors in {} orbits", vectors.len(), classes.len());
    let text = match a.format {
        Format::Csv => orbits_csv(&classes)?,
        Format::Json => json_text(&classes)?,
    };
    let mut manifest_target = manifest_path;
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let ext = if a.format == Format::Csv { "csv" } else { "json" };
            emit(Some(&dir.join(format!("orbits.{ext}"))), &text, &mut m)?;
            manifest_target.get_or_insert_with(|| dir.join("manifest.json"));
        }
        None => print!("{text}"),
    }
    m.finish(manifest_target.as_deref())
}

/// `"3"`, `"1..8"` or `"1..=8"`, all inclusive.
fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().with_context(|| format!("bad range '{s}'"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("bad range '{s}'"))?;
    if lo > hi {
        bail!("empty range '{s}'");
    }
    Ok(lo..=hi)
}

#[derive(Debug, Serialize)]
struct CountRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
    nonisomorphic: String,
    labeled: String,
    conjecture: bool,
}

impl CountRow {
    fn new(n: Option<u64>, i: Option<u64>, d: Option<u64>, c: ClosedForm) -> Self {
        CountRow {
            n,
            i,
            d,
            nonisomorphic: c.nonisomorphic.to_string(),
            labeled: c.labeled.to_string(),
            conjecture: c.conjecture,
        }
    }
}

fn count(a: CountArgs, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("count");
    m.param("family", value_name(a.family));
    let text = match a.family {
        Family::Partitions => {
            m.param("max_k", a.max_k);
            m.param("max_i", a.max_i);
            m.count("cells", a.max_k * a.max_i);
            let mut t = PartitionTable::new(a.max_k, a.max_i);
            match a.format {
                Format::Csv => t.to_csv(a.max_k, a.max_i),
                Format::Json => {
                    let rows: Vec<Vec<String>> = (1..=a.max_k)
                        .map(|k| (1..=a.max_i).map(|i| t.get(k, i).to_string()).collect())
                        .collect();
                    json_text(&rows)?
                }
            }
        }
        family => {
            let mut rows = Vec::new();
            match family {
                Family::K4 | Family::PetersenConjecture => {
                    m.param("d", &a.d);
                    for d in parse_range(&a.d)? {
                        let f = if family == Family::K4 {
                            CountFamily::K4 { d }
                        } else {
                            CountFamily::PetersenConjecture { d }
                        };
                        rows.push(CountRow::new(None, None, Some(d), closed_form_counts(f)?));
                    }
                }
                _ => {
                    m.param("n", a.n);
                    m.param("i", &a.i);
                    for i in parse_range(&a.i)? {
                        let c = closed_form_counts(CountFamily::Kn { n: a.n, i })?;
                        rows.push(CountRow::new(Some(a.n), Some(i), None, c));
                    }
                }
            }
            m.count("rows", rows.len());
            match a.format {
                Format::Json => json_text(&rows)?,
                Format::Csv => {
                    let mut header = Vec::new();
                    if family == Family::Kn {
                        header.extend(["n", "i"]);
                    } else {
                        header.push("d");
                    }
                    header.extend(["nonisomorphic", "labeled", "note"]);
                    csv_text(
                        header.into_iter().map(String::from).collect(),
                        rows.iter().map(|r| {
                            let mut v: Vec<String> =
                                [r.n, r.i, r.d].iter().flatten().map(u64::to_string).collect();
                            v.push(r.nonisomorphic.clone());
                            v.push(r.labeled.clone());
                            v.push(if r.conjecture { "[conjecture]".into() } else { String::new() });
                            v
                        }),
                    )?
                }
            }
        }
    };
    emit(a.out.as_deref(), &text, &mut m)?;
    m.finish(manifest_path.as_deref())
}

fn export(a: ExportArgs, manifest_path: Option<PathBuf>) -> Result<()> {
    let mut m = RunManifest::start("export");
    let g = match (&a.graph, &a.base) {
        (Some(path), _) => {
            m.input(path);
            load_graph(path)?
        }
        (None, Some(name)) => {
            m.param("base", name);
            let base = load_base(name)?;
            match &a.lengths {
                Some(l) => {
                    m.param("lengths", l);
                    subdivide(&base, l)?
                }
                None => base,
            }
        }
        (None, None) => bail!("give --graph or --base"),
    };
    m.param("name", &a.name);
    m.count("vertices", g.vertex_count());
    emit(a.out.as_deref(), &g.to_dot(&a.name), &mut m)?;
    m.finish(manifest_path.as_deref())
}
