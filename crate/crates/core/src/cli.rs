//! The `rlw` command line. [`run`] never prints or exits; the binary does.
//!
//! Exit codes: `0` ok, `1` a mathematical statement failed (the payload
//! carries the witness), `2` usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{canonical_key, validate, AlgebraData, ResiduatedLattice};
use crate::analysis::suites::{verify, Suite, VerifyOptions};
use crate::analysis::{
    global_system_topology_verdict, hausdorff_existence_verdict, indecomposability_report,
    structure_report,
};
use crate::catalog::{catalog_file_name, default_catalog_dir, AlgebraCatalog, HARD_MAX_SIZE};
use crate::error::Error;
use crate::filters::{filter_lattice, is_prime, join_irreducible_filters, FilterSet};
use crate::limits::{inverse_limit, profinite_completion, InverseSystem};
use crate::subset::Subset;
use crate::topology::{
    check_topological_algebra, enumerate_zltrl, induce_topology, open_filters, SystemOfFilters,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub output: String,
}

#[derive(Parser, Debug)]
#[command(name = "rlw", version, about = "Finite residuated lattices: filters, topologies, limits")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of an algebra file.
    Validate { file: PathBuf },
    /// List the filters of an algebra.
    Filters {
        file: PathBuf,
        /// Emit the Hasse diagram of the filter lattice as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Topology induced by a down-directed system of filters.
    Topology {
        file: PathBuf,
        /// Filters separated by `;`, elements by `,`, e.g. "1,2;2".
        #[arg(long)]
        system: String,
        /// Emit the specialization preorder as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// All linear topologies, one per filter.
    Zltrl { file: PathBuf },
    /// Profinite completion over all filters.
    Completion { file: PathBuf },
    /// Inverse limit of a system file.
    Limit { file: PathBuf },
    /// Structure report with the indecomposability and topology verdicts.
    Analyze { file: PathBuf },
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run verification suites over the catalog.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        size_max: usize,
        /// Catalog file; defaults to `$RLW_CATALOG_DIR/catalog-N.jsonl` when present,
        /// otherwise the catalog is generated in memory.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Random inverse systems for the limit statements.
        #[arg(long, default_value_t = 100)]
        random_systems: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Generate all algebras of sizes 1..=N.
    Generate {
        #[arg(long)]
        size: usize,
        /// Defaults to `$RLW_CATALOG_DIR/catalog-N.jsonl`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counts and search statistics of a catalog file.
    Stats { path: PathBuf },
}

/// A finished report: both renderings are built from the same data.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: EXIT_OK }
    }
}

enum Failure {
    Usage(String),
    Violation { statement: String, witness: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation { statement, witness } => Failure::Violation { statement, witness },
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return CommandResult {
                code,
                output: e.render().to_string(),
            };
        }
    };
    let format = cli.format;
    match dispatch(cli.command) {
        Ok(r) => CommandResult {
            code: r.code,
            output: match format {
                Format::Text => r.text,
                Format::Json => pretty(&r.json),
            },
        },
        Err(Failure::Usage(msg)) => CommandResult {
            code: EXIT_USAGE,
            output: match format {
                Format::Text => format!("error: {}\n", one_line(&msg)),
                Format::Json => pretty(&json!({ "error": msg })),
            },
        },
        Err(Failure::Violation { statement, witness }) => CommandResult {
            code: EXIT_VIOLATION,
            output: match format {
                Format::Text => format!("violation: {statement}\nwitness: {witness}\n"),
                Format::Json => pretty(&json!({ "violation": statement, "witness": witness })),
            },
        },
    }
}

fn pretty(v: &Value) -> String {
    match v {
        // verify emits JSON lines already
        Value::String(s) => s.clone(),
        _ => serde_json::to_string_pretty(v).expect("json renders") + "\n",
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { file } => cmd_validate(&file),
        Command::Filters { file, dot } => cmd_filters(&file, dot),
        Command::Topology { file, system, dot } => cmd_topology(&file, &system, dot),
        Command::Zltrl { file } => cmd_zltrl(&file),
        Command::Completion { file } => cmd_completion(&file),
        Command::Limit { file } => cmd_limit(&file),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Catalog(CatalogCommand::Generate { size, out }) => cmd_catalog_generate(size, out),
        Command::Catalog(CatalogCommand::Stats { path }) => cmd_catalog_stats(&path),
        Command::Verify {
            suite,
            size_max,
            catalog,
            seed,
            jobs,
            random_systems,
        } => cmd_verify(
            &suite,
            catalog,
            VerifyOptions {
                size_max,
                seed,
                jobs,
                random_systems,
            },
        ),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<ResiduatedLattice, Failure> {
    ResiduatedLattice::from_json(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn list(s: Subset) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn cmd_validate(path: &Path) -> Outcome {
    let data = AlgebraData::from_json(&read(path)?).map_err(|e| Failure::Usage(e.to_string()))?;
    let report = validate(&data);
    let mut json = json!({ "valid": report.is_ok(), "report": to_value(&report) });
    if !report.is_ok() {
        return Ok(Report {
            text: format!("invalid: {report}\n"),
            json,
            code: EXIT_USAGE,
        });
    }
    let a = ResiduatedLattice::from_data(&data)?;
    let key = canonical_key(&a);
    json["key"] = json!(key);
    json["size"] = json!(a.size());
    Ok(Report::ok(format!("ok: size {}, key {key}\n", a.size()), json))
}

fn cmd_filters(path: &Path, dot: bool) -> Outcome {
    let a = load_algebra(path)?;
    let lat = filter_lattice(&a);
    let ji = join_irreducible_filters(&a);
    let rows: Vec<Value> = lat
        .filters
        .iter()
        .map(|f| {
            json!({
                "elements": f,
                "generator": f.generator(&a),
                "prime": f.is_proper(&a) && is_prime(&a, f),
                "join_irreducible": ji.contains(f),
            })
        })
        .collect();
    let covers: Vec<(usize, usize)> = lat.covers();
    let mut text = String::new();
    if dot {
        text = lat.to_dot();
    } else {
        let _ = writeln!(text, "{} filters", lat.len());
        for (k, f) in lat.filters.iter().enumerate() {
            let mut marks = Vec::new();
            if f.is_proper(&a) && is_prime(&a, f) {
                marks.push("prime");
            }
            if ji.contains(f) {
                marks.push("join-irreducible");
            }
            let _ = writeln!(
                text,
                "  f{k} = ↑{} = {} {}",
                f.generator(&a),
                list(f.members()),
                marks.join(" ")
            );
        }
    }
    let mut json = json!({ "count": lat.len(), "filters": rows, "covers": covers });
    if dot {
        json["dot"] = json!(lat.to_dot());
    }
    Ok(Report::ok(text.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n", json))
}

/// `"1,2;2"` into filters of `a`.
fn parse_system(a: &ResiduatedLattice, text: &str) -> Result<Vec<FilterSet>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let elems = part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::Usage(format!("bad element {t:?} in filter {part:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FilterSet::from_elements(a, &elems).map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect()
}

fn cmd_topology(path: &Path, text: &str, dot: bool) -> Outcome {
    let a = load_algebra(path)?;
    let family = parse_system(&a, text)?;
    let system = SystemOfFilters::new(family).map_err(|e| Failure::Usage(e.to_string()))?;
    let t = induce_topology(&a, &system)?;
    let sep = t.separation_by_open_sets();
    let continuity = check_topological_algebra(&a, &t);
    let opens = t.open_sets();
    let mut json = json!({
        "topology": to_value(&t),
        "open_sets": opens,
        "separation": to_value(&sep),
        "discrete": t.is_discrete(),
        "antidiscrete": t.is_antidiscrete(),
        "topological_algebra": continuity.is_ok(),
    });
    if dot {
        json["dot"] = json!(t.specialization_dot());
    }
    if let Err(d) = continuity {
        return Err(Failure::Violation {
            statement: "filter topologies make the operations continuous".to_string(),
            witness: d.to_string(),
        });
    }
    let text = if dot {
        t.specialization_dot()
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "least filter {}", system.minimum());
        for x in a.elements() {
            let _ = writeln!(s, "  N({x}) = {}", list(t.nbhd(x)));
        }
        let _ = writeln!(s, "{} open sets:", opens.len());
        for u in &opens {
            let _ = writeln!(s, "  {}", list(*u));
        }
        let _ = writeln!(s, "T0 {} T1 {} T2 {}", sep.t0, sep.t1, sep.t2);
        let _ = writeln!(s, "topological algebra: yes");
        s
    };
    Ok(Report::ok(text, json))
}

fn cmd_zltrl(path: &Path) -> Outcome {
    let a = load_algebra(path)?;
    let ts = enumerate_zltrl(&a)?;
    let mut text = format!("{} topologies\n", ts.len());
    let mut rows = Vec::new();
    for (k, t) in ts.iter().enumerate() {
        let opens = open_filters(&a, t);
        let least = opens
            .iter()
            .find(|f| opens.iter().all(|g| f.is_subset(g)))
            .copied()
            .expect("a linear topology has a least open filter");
        let nb: Vec<String> = t.min_nbhds().iter().map(|s| list(*s)).collect();
        let _ = writeln!(text, "  t{k}: from {} nbhds {}", list(least.members()), nb.join(" "));
        rows.push(json!({ "filter": least, "topology": to_value(t) }));
    }
    Ok(Report::ok(text, json!({ "count": ts.len(), "topologies": rows })))
}

fn cmd_completion(path: &Path) -> Outcome {
    let a = load_algebra(path)?;
    let c = profinite_completion(&a)?;
    let iso = c.embedding.is_bijective() && c.embedding.is_homomorphism();
    let text = format!(
        "index filters: {}\nlimit size: {}\nembedding: {:?}\nisomorphism: {}\njoin-irreducible limit size: {}\n",
        c.system.poset().len(),
        c.limit.algebra.size(),
        c.embedding.map,
        if iso { "yes" } else { "no" },
        c.cofinal_limit.algebra.size(),
    );
    let json = json!({
        "index_filters": c.system.poset().len(),
        "limit_size": c.limit.algebra.size(),
        "embedding": c.embedding.map,
        "isomorphism": iso,
        "join_irreducible_limit_size": c.cofinal_limit.algebra.size(),
        "threads": c.limit.threads,
    });
    if !iso {
        return Err(Failure::Violation {
            statement: "the completion map of a finite algebra is an isomorphism".to_string(),
            witness: format!("{:?}", c.embedding.map),
        });
    }
    Ok(Report::ok(text, json))
}

fn cmd_limit(path: &Path) -> Outcome {
    let s = InverseSystem::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let lim = inverse_limit(&s)?;
    let ids = s.poset().ids().to_vec();
    let mut text = format!(
        "{} indices, {} threads\n",
        ids.len(),
        lim.threads.len()
    );
    let header: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(text, "index order: {}", header.join(" "));
    for (k, t) in lim.threads.iter().enumerate() {
        let _ = writeln!(text, "  {k}: {t:?}");
    }
    let json: Value = serde_json::from_str(&lim.to_json(&ids)).expect("limit json parses");
    Ok(Report::ok(text, json))
}

fn cmd_analyze(path: &Path) -> Outcome {
    let a = load_algebra(path)?;
    let s = structure_report(&a)?;
    let mut text = String::new();
    let _ = writeln!(text, "size {} key {}", s.size, s.id);
    let _ = writeln!(text, "filters {} dimension {} tags {}", s.filters, s.dimension, s.tags.join(","));
    let _ = writeln!(
        text,
        "simple {} subdirectly irreducible {} directly indecomposable {}",
        s.is_simple, s.is_subdirectly_irreducible, s.is_directly_indecomposable
    );
    if let Some(m) = s.monolith {
        let _ = writeln!(text, "monolith {}", list(m.members()));
    }
    let mut json = json!({ "structure": to_value(&s) });
    if a.is_trivial() {
        return Ok(Report::ok(text, json));
    }
    let ind = indecomposability_report(&a)?;
    let g = global_system_topology_verdict(&a)?;
    let h = hausdorff_existence_verdict(&a)?;
    let v = ind.verdicts();
    let _ = writeln!(
        text,
        "indecomposability: global system {} no trivial intersection {} no factor congruence {} no product split {}",
        v[0], v[1], v[2], v[3]
    );
    let _ = writeln!(text, "global topology non-discrete {}", g.non_discrete);
    let _ = writeln!(text, "non-trivial hausdorff linear topologies: {}", h.nontrivial_hausdorff);
    json["indecomposability"] = to_value(&ind);
    json["global_topology"] = to_value(&g);
    json["hausdorff"] = to_value(&h);
    if !ind.agree() {
        let meeting: Vec<String> = ind.trivial_intersection.iter().flatten().map(ToString::to_string).collect();
        let witness = format!("verdicts {v:?}; nontrivial filters meeting in top: {}", meeting.join(" "));
        let _ = writeln!(text, "violation: indecomposability characterizations disagree\nwitness: {witness}");
        json["violation"] = json!("indecomposability characterizations disagree");
        json["witness"] = json!(witness);
        return Ok(Report {
            text,
            json,
            code: EXIT_VIOLATION,
        });
    }
    Ok(Report::ok(text, json))
}

fn default_catalog_path(n: usize) -> Option<PathBuf> {
    default_catalog_dir().map(|d| d.join(catalog_file_name(n)))
}

fn cmd_catalog_generate(size: usize, out: Option<PathBuf>) -> Outcome {
    if size == 0 || size > HARD_MAX_SIZE {
        return Err(Failure::Usage(format!("--size must be in 1..={HARD_MAX_SIZE}")));
    }
    let out = out
        .or_else(|| default_catalog_path(size))
        .ok_or_else(|| Failure::Usage("no --out given and RLW_CATALOG_DIR is not set".to_string()))?;
    let cat = AlgebraCatalog::generate(size)?;
    cat.save(&out)?;
    let (text, json) = stats_report(&cat);
    Ok(Report::ok(format!("wrote {}\n{text}", out.display()), json))
}

fn stats_report(cat: &AlgebraCatalog) -> (String, Value) {
    let mut text = format!("{} algebras of sizes 1..={}\n", cat.len(), cat.size_bound);
    let _ = writeln!(text, "size lattices algebras nodes");
    for s in &cat.stats {
        let _ = writeln!(text, "{:>4} {:>8} {:>8} {:>5}", s.size, s.lattices, s.algebras, s.search_nodes);
    }
    let json = json!({
        "size_bound": cat.size_bound,
        "algebras": cat.len(),
        "by_size": cat.count_by_size(),
        "stats": to_value(&cat.stats),
    });
    (text, json)
}

fn cmd_catalog_stats(path: &Path) -> Outcome {
    let cat = AlgebraCatalog::load(path)?;
    let (text, json) = stats_report(&cat);
    Ok(Report::ok(text, json))
}

fn cmd_verify(suite: &str, catalog: Option<PathBuf>, opts: VerifyOptions) -> Outcome {
    let suites = Suite::parse(suite)
        .ok_or_else(|| Failure::Usage(format!("unknown suite {suite:?}; use filters, topology, limits, analysis or all")))?;
    if opts.size_max == 0 || opts.size_max > HARD_MAX_SIZE {
        return Err(Failure::Usage(format!("--size-max must be in 1..={HARD_MAX_SIZE}")));
    }
    let path = catalog.or_else(|| default_catalog_path(opts.size_max).filter(|p| p.exists()));
    let cat = match path {
        Some(p) => AlgebraCatalog::load(&p)?,
        None => AlgebraCatalog::generate(opts.size_max)?,
    };
    if cat.size_bound < opts.size_max {
        return Err(Failure::Usage(format!(
            "catalog covers sizes up to {}, --size-max is {}",
            cat.size_bound, opts.size_max
        )));
    }
    let report = verify(&cat, &suites, &opts)?;
    let code = if report.all_pass() { EXIT_OK } else { EXIT_VIOLATION };
    let mut lines = report.to_jsonl();
    for row in report.matrix() {
        lines.push_str(&serde_json::to_string(&json!({ "matrix": to_value(&row) })).expect("row serializes"));
        lines.push('\n');
    }
    Ok(Report {
        text: report.summary_table(),
        json: Value::String(lines),
        code,
    })
}
