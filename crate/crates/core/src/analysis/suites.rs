//! Verification suites: each named statement is checked on every catalog
//! algebra within its size limit, giving a pass/fail matrix with witnesses.
//!
//! Statements that only make sense for infinite algebras are listed as out
//! of scope instead of being passed vacuously.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    all_homomorphisms, are_isomorphic, canonical_form, canonical_key, find_isomorphism,
    goedel_chain, lukasiewicz_chain, validate, Homomorphism, Op, ResiduatedLattice,
};
use crate::catalog::{generate, naive_generate, AlgebraCatalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::filters::{
    congruence_of_filter, coset, enumerate_filters, filter_join,
    filter_of_congruence, generated_filter, intersect_all, irredundant_decomposition, is_deductive_system,
    is_filter, join_irreducible_filters, prime_filters, quotient, CongruenceRelation, FilterSet,
};
use crate::limits::{
    cofinal_subsets, cofinal_restrict, enumerate_threads_naive, inverse_limit, profinite_completion,
    profiniteness_certificate, projection_kernels, random_inverse_system, subdirect_embedding,
    verify_certificate, Certificate, InverseSystem,
};
use crate::subset::Subset;
use crate::topology::{
    check_topological_algebra, enumerate_zltrl, filter_openness, induce_topology, is_hausdorff,
    open_filters, set_partitions, simple_topology, sup_topologies, systems_equivalent,
    FiniteTopology, SystemOfFilters, ZLTRL_MAX,
};

use super::{
    dcc_exhaustive, dimension, global_system_topology_verdict, has_no_factor_congruence,
    hausdorff_existence_verdict, indecomposability_report, is_subdirectly_irreducible,
    nonpermuting_pair, uniform_base_check, Relation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Filters,
    Topology,
    Limits,
    Analysis,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Filters, Suite::Topology, Suite::Limits, Suite::Analysis];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Filters => "filters",
            Suite::Topology => "topology",
            Suite::Limits => "limits",
            Suite::Analysis => "analysis",
        }
    }

    /// `all` expands to every suite.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(Suite::ALL.to_vec()),
            _ => Suite::ALL.into_iter().find(|x| x.name() == s).map(|x| vec![x]),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

impl Outcome {
    fn from_result(r: Result<()>) -> Outcome {
        match r {
            Ok(()) => Outcome::Pass,
            Err(Error::Violation { statement, witness }) if statement.is_empty() => Outcome::Fail(witness),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }

    fn check(ok: bool, witness: impl FnOnce() -> String) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Violation {
                statement: String::new(),
                witness: witness(),
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub theorem: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// One JSON line: the checks of one suite on one algebra. Suite-level checks
/// (random systems, generator agreement, chain families) use a descriptive
/// `algebra` label instead of a catalog key.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraVerdict {
    pub suite: Suite,
    pub algebra: String,
    pub size: Option<usize>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OutOfScope {
    pub suite: Suite,
    pub statement: &'static str,
    pub reason: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRow {
    pub suite: Suite,
    pub theorem: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    /// First failing algebra and its witness.
    pub first_failure: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub size_max: usize,
    pub seed: u64,
    pub verdicts: Vec<AlgebraVerdict>,
    pub out_of_scope: Vec<OutOfScope>,
}

impl VerifyReport {
    pub fn matrix(&self) -> Vec<MatrixRow> {
        let mut rows: Vec<MatrixRow> = Vec::new();
        for v in &self.verdicts {
            for c in &v.checks {
                let k = match rows
                    .iter()
                    .position(|r| r.suite == v.suite && r.theorem == c.theorem)
                {
                    Some(k) => k,
                    None => {
                        rows.push(MatrixRow {
                            suite: v.suite,
                            theorem: c.theorem,
                            pass: 0,
                            fail: 0,
                            skip: 0,
                            first_failure: None,
                        });
                        rows.len() - 1
                    }
                };
                let r = &mut rows[k];
                match &c.outcome {
                    Outcome::Pass => r.pass += 1,
                    Outcome::Skip(_) => r.skip += 1,
                    Outcome::Fail(w) => {
                        r.fail += 1;
                        if r.first_failure.is_none() {
                            r.first_failure = Some((v.algebra.clone(), w.clone()));
                        }
                    }
                }
            }
        }
        rows
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| v.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_))))
    }

    /// Outcomes of one statement, in verdict order.
    pub fn outcomes(&self, theorem: &str) -> Vec<(&str, &Outcome)> {
        self.verdicts
            .iter()
            .flat_map(|v| {
                v.checks
                    .iter()
                    .filter(move |c| c.theorem == theorem)
                    .map(move |c| (v.algebra.as_str(), &c.outcome))
            })
            .collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&serde_json::to_string(v).expect("verdict serializes"));
            out.push('\n');
        }
        for o in &self.out_of_scope {
            out.push_str(&serde_json::to_string(o).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// Human-readable matrix.
    pub fn summary_table(&self) -> String {
        let rows = self.matrix();
        let width = rows.iter().map(|r| r.theorem.len()).max().unwrap_or(10).max(9);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<9} {:<width$} {:>5} {:>5} {:>5}",
            "suite", "statement", "pass", "fail", "skip"
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "{:<9} {:<width$} {:>5} {:>5} {:>5}",
                r.suite.name(),
                r.theorem,
                r.pass,
                r.fail,
                r.skip
            );
            if let Some((alg, w)) = &r.first_failure {
                let _ = writeln!(out, "          witness on {alg}: {w}");
            }
        }
        for o in &self.out_of_scope {
            let _ = writeln!(out, "{:<9} {:<width$} out of scope: {}", o.suite.name(), o.statement, o.reason);
        }
        let (p, f): (usize, usize) = rows.iter().fold((0, 0), |(p, f), r| (p + r.pass, f + r.fail));
        let _ = writeln!(
            out,
            "{} checks passed, {} failed over sizes 1..={}",
            p, f, self.size_max
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub size_max: usize,
    pub seed: u64,
    /// Worker threads; `1` runs sequentially.
    pub jobs: usize,
    /// Number of random inverse systems for the limit statements.
    pub random_systems: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            size_max: 4,
            seed: 0,
            jobs: 1,
            random_systems: 100,
        }
    }
}

/// What a per-algebra check sees: the algebra and its catalog peers of the same size.
pub struct Ctx<'a> {
    pub entry: &'a CatalogEntry,
    pub peers: Vec<&'a CatalogEntry>,
}

impl Ctx<'_> {
    fn a(&self) -> &ResiduatedLattice {
        &self.entry.algebra
    }
}

type CheckFn = fn(&Ctx) -> Result<()>;

/// A statement checked per algebra, up to a size limit.
struct Statement {
    suite: Suite,
    name: &'static str,
    max_size: usize,
    needs_nontrivial: bool,
    run: CheckFn,
}

const NO_LIMIT: usize = usize::MAX;

fn statements() -> Vec<Statement> {
    use Suite::*;
    let s = |suite, name, max_size, needs_nontrivial, run: CheckFn| Statement {
        suite,
        name,
        max_size,
        needs_nontrivial,
        run,
    };
    vec![
        s(Filters, "axioms hold", NO_LIMIT, false, check_axioms),
        s(Filters, "single-entry mutations are rejected", 5, true, check_mutations),
        s(Filters, "canonical form agrees with isomorphism", 5, false, check_canonical),
        s(Filters, "filters are deductive systems", 8, false, check_deductive),
        s(Filters, "filters correspond to congruences", 6, false, check_filter_congruence),
        s(Filters, "quotient maps have the filter as kernel", NO_LIMIT, false, check_quotients),
        s(Filters, "generated filters are least", 5, false, check_generated),
        s(Filters, "prime filters separate points", 5, false, check_prime_separation),
        s(Filters, "proper filters are meets of primes", 5, false, check_prime_meets),
        s(Filters, "filter lattice is distributive", 5, false, check_distributive),
        s(Filters, "irredundant decompositions are unique", 5, true, check_decomposition),
        s(Filters, "filter congruences permute", NO_LIMIT, false, check_filter_permutability),
        s(Topology, "simple topologies are continuous", 5, false, check_continuity),
        s(Topology, "separation axioms collapse", 5, false, check_separation),
        s(Topology, "meet of filters gives the sup of topologies", 5, false, check_sup_meet),
        s(Topology, "linear topologies match filters", ZLTRL_MAX, false, check_equipotence),
        s(Topology, "linear topologies are sups of simple ones", ZLTRL_MAX, false, check_sup_of_simple),
        s(Topology, "open filters rebuild the topology", ZLTRL_MAX, false, check_rebuild),
        s(Topology, "open filters are closed", ZLTRL_MAX, false, check_openness),
        s(Topology, "equivalent systems induce equal topologies", NO_LIMIT, false, check_equivalent_systems),
        s(Limits, "completion map is an isomorphism", 5, false, check_completion),
        s(Limits, "completion projections are onto", 5, false, check_completion_projections),
        s(Limits, "projection kernels are a base at top", 5, false, check_kernels),
        s(Limits, "clopen-filter certificate", ZLTRL_MAX, false, check_certificate),
        s(Limits, "subdirect map is injective iff filters meet in top", 6, false, check_subdirect),
        s(Analysis, "irreducible implies indecomposable", NO_LIMIT, true, check_si_implies_di),
        s(Analysis, "indecomposability characterizations agree", 6, true, check_indecomposability),
        s(Analysis, "irreducible iff global topology non-discrete", ZLTRL_MAX, true, check_global_topology),
        s(Analysis, "no non-trivial Hausdorff linear topology", ZLTRL_MAX, true, check_hausdorff_existence),
        s(Analysis, "congruences form a uniform base", 5, false, check_uniform),
        s(Analysis, "filter families have minima", NO_LIMIT, false, check_dcc),
        s(Analysis, "dimension is the longest prime chain", NO_LIMIT, true, check_dimension),
    ]
}

fn out_of_scope() -> Vec<OutOfScope> {
    vec![
        OutOfScope {
            suite: Suite::Limits,
            statement: "profinite algebras are finite or uncountable",
            reason: "needs genuinely infinite profinite algebras; every limit here is finite",
        },
        OutOfScope {
            suite: Suite::Analysis,
            statement: "infinite dimension yields a non-trivial Hausdorff topology",
            reason: "finite algebras have finite dimension, so the hypothesis never holds at desk scale",
        },
    ]
}

/// Names of the per-algebra statements of a suite.
pub fn statement_names(suite: Suite) -> Vec<&'static str> {
    statements()
        .into_iter()
        .filter(|s| s.suite == suite)
        .map(|s| s.name)
        .collect()
}

/// Runs the given suites over the catalog entries of size `<= size_max`.
pub fn verify(catalog: &AlgebraCatalog, suites: &[Suite], opts: &VerifyOptions) -> Result<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::precondition(format!("cannot start worker pool: {e}")))?;
    let entries: Vec<&CatalogEntry> = catalog.up_to(opts.size_max).collect();
    let stmts = statements();
    let mut verdicts = Vec::new();
    for &suite in suites {
        let mine: Vec<&Statement> = stmts.iter().filter(|s| s.suite == suite).collect();
        let per: Vec<AlgebraVerdict> = pool.install(|| {
            entries
                .par_iter()
                .map(|e| {
                    let ctx = Ctx {
                        entry: e,
                        peers: entries
                            .iter()
                            .copied()
                            .filter(|p| p.algebra.size() == e.algebra.size())
                            .collect(),
                    };
                    AlgebraVerdict {
                        suite,
                        algebra: e.key.clone(),
                        size: Some(e.algebra.size()),
                        checks: mine.iter().map(|s| run_statement(s, &ctx)).collect(),
                    }
                })
                .collect()
        });
        verdicts.extend(per);
        verdicts.extend(suite_level(suite, catalog, opts));
    }
    let out_of_scope = out_of_scope()
        .into_iter()
        .filter(|o| suites.contains(&o.suite))
        .collect();
    Ok(VerifyReport {
        size_max: opts.size_max,
        seed: opts.seed,
        verdicts,
        out_of_scope,
    })
}

fn run_statement(s: &Statement, ctx: &Ctx) -> Check {
    let a = ctx.a();
    let outcome = if a.size() > s.max_size {
        Outcome::Skip(format!("above size limit {}", s.max_size))
    } else if s.needs_nontrivial && a.is_trivial() {
        Outcome::Skip("trivial algebra".to_string())
    } else {
        Outcome::from_result((s.run)(ctx))
    };
    Check {
        theorem: s.name,
        outcome,
    }
}

fn fail(witness: impl Into<String>) -> Error {
    Error::Violation {
        statement: String::new(),
        witness: witness.into(),
    }
}

// ---- filters ----

fn check_axioms(c: &Ctx) -> Result<()> {
    let r = validate(&c.a().to_data());
    Outcome::check(r.is_ok(), || r.to_string())
}

fn check_mutations(c: &Ctx) -> Result<()> {
    let a = c.a();
    let data = a.to_data();
    let n = a.size();
    for op in Op::ALL {
        for x in 0..n {
            for y in 0..n {
                for v in 0..n {
                    if v == data.table(op)[x][y] {
                        continue;
                    }
                    let mut m = data.clone();
                    m.table_mut(op)[x][y] = v;
                    if validate(&m).is_ok() && m != data {
                        return Err(fail(format!("{op}[{x}][{y}] := {v} still validates")));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_canonical(c: &Ctx) -> Result<()> {
    let a = c.a();
    let mine = canonical_form(a);
    for p in &c.peers {
        let same_form = canonical_form(&p.algebra) == mine;
        let iso = find_isomorphism(a, &p.algebra).is_some();
        if same_form != iso {
            return Err(fail(format!("against {}: form equal {same_form}, isomorphic {iso}", p.key)));
        }
    }
    // a relabelled copy must keep its form
    let n = a.size();
    if n > 3 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm[1..n - 1].reverse();
        let b = a.permuted(&perm)?;
        Outcome::check(canonical_form(&b) == mine, || format!("relabelling {perm:?} changes the form"))?;
    }
    Ok(())
}

fn check_deductive(c: &Ctx) -> Result<()> {
    let a = c.a();
    let mut brute = Vec::new();
    for s in Subset::all_subsets(a.size()) {
        if is_filter(a, s) != is_deductive_system(a, s) {
            return Err(fail(format!("subset {s}")));
        }
        if is_filter(a, s) {
            brute.push(s);
        }
    }
    let mut listed: Vec<Subset> = enumerate_filters(a).iter().map(|f| f.members()).collect();
    listed.sort_by_key(|s| s.bits());
    brute.sort_by_key(|s| s.bits());
    Outcome::check(listed == brute, || format!("enumerated {listed:?}, brute force {brute:?}"))
}

/// Congruences found by scanning every set partition.
fn congruences_by_partition(a: &ResiduatedLattice) -> Vec<CongruenceRelation> {
    set_partitions(a.size())
        .iter()
        .map(|l| CongruenceRelation::from_labels(l))
        .filter(|t| t.is_congruence(a))
        .collect()
}

fn check_filter_congruence(c: &Ctx) -> Result<()> {
    let a = c.a();
    let filters = enumerate_filters(a);
    let congs = congruences_by_partition(a);
    Outcome::check(filters.len() == congs.len(), || {
        format!("{} filters, {} congruences", filters.len(), congs.len())
    })?;
    for f in &filters {
        let t = congruence_of_filter(a, f)?;
        Outcome::check(filter_of_congruence(a, &t)? == *f, || format!("filter {f} does not round-trip"))?;
        Outcome::check(congs.contains(&t), || format!("θ of {f} missing from the partition scan"))?;
    }
    for t in &congs {
        let f = filter_of_congruence(a, t)?;
        Outcome::check(congruence_of_filter(a, &f)? == *t, || {
            format!("congruence {:?} does not round-trip", t.labels())
        })?;
    }
    Ok(())
}

fn check_quotients(c: &Ctx) -> Result<()> {
    let a = c.a();
    for f in enumerate_filters(a) {
        let (_, h) = quotient(a, &f)?;
        Outcome::check(h.is_homomorphism() && h.is_surjective(), || format!("quotient map of {f}"))?;
        Outcome::check(h.kernel()? == f, || format!("kernel of quotient by {f}"))?;
        for x in a.elements() {
            let block: Subset = a.elements().filter(|&y| h.map[y] == h.map[x]).collect();
            Outcome::check(block == coset(a, &f, x), || format!("coset of {x} mod {f}"))?;
        }
    }
    Ok(())
}

fn check_generated(c: &Ctx) -> Result<()> {
    let a = c.a();
    let filters = enumerate_filters(a);
    for s in Subset::all_subsets(a.size()) {
        let g = generated_filter(a, s);
        let least = filters
            .iter()
            .filter(|f| s.is_subset(f.members()))
            .min_by_key(|f| f.len())
            .expect("the carrier is a filter");
        let contains_all = filters
            .iter()
            .filter(|f| s.is_subset(f.members()))
            .all(|f| g.is_subset(f));
        Outcome::check(g == *least && contains_all, || format!("generated filter of {s} is {g}"))?;
    }
    Ok(())
}

fn check_prime_separation(c: &Ctx) -> Result<()> {
    let a = c.a();
    let primes = prime_filters(a);
    let meet = intersect_all(a, &primes);
    Outcome::check(meet.is_trivial(a), || format!("primes meet in {meet}"))?;
    for x in a.elements().filter(|&x| x != a.top()) {
        Outcome::check(primes.iter().any(|p| !p.contains(x)), || {
            format!("every prime filter contains {x}")
        })?;
    }
    Ok(())
}

fn check_prime_meets(c: &Ctx) -> Result<()> {
    let a = c.a();
    let primes = prime_filters(a);
    for f in enumerate_filters(a).into_iter().filter(|f| f.is_proper(a)) {
        let above: Vec<FilterSet> = primes.iter().filter(|p| f.is_subset(p)).copied().collect();
        let m = intersect_all(a, &above);
        Outcome::check(m == f, || format!("primes above {f} meet in {m}"))?;
    }
    Ok(())
}

fn check_distributive(c: &Ctx) -> Result<()> {
    let a = c.a();
    let fs = enumerate_filters(a);
    for f in &fs {
        for g in &fs {
            for h in &fs {
                let lhs = f.intersection(&filter_join(a, g, h));
                let rhs = filter_join(a, &f.intersection(g), &f.intersection(h));
                Outcome::check(lhs == rhs, || format!("{f} ∧ ({g} ∨ {h})"))?;
            }
        }
    }
    Ok(())
}

fn check_decomposition(c: &Ctx) -> Result<()> {
    let a = c.a();
    let ji = join_irreducible_filters(a);
    // independent join-irreducibility check straight from the definition
    let fs = enumerate_filters(a);
    for f in fs.iter().filter(|f| !f.is_trivial(a)) {
        let smaller: Vec<&FilterSet> = fs.iter().filter(|g| g.members().is_proper_subset(f.members())).collect();
        let reducible = smaller
            .iter()
            .any(|g| smaller.iter().any(|h| filter_join(a, g, h) == *f));
        Outcome::check(reducible != ji.contains(f), || format!("join-irreducibility of {f}"))?;
    }
    let join_of = |set: Subset| {
        generated_filter(a, set.iter().fold(Subset::EMPTY, |acc, k| acc.union(ji[k].members())))
    };
    for f in fs.iter().filter(|f| !f.is_trivial(a)) {
        let mut found: Vec<Vec<FilterSet>> = Vec::new();
        for s in Subset::all_subsets(ji.len()).filter(|s| !s.is_empty()) {
            let members: Vec<usize> = s.to_vec();
            let antichain = members.iter().all(|&i| {
                members
                    .iter()
                    .all(|&j| i == j || !ji[i].is_subset(&ji[j]))
            });
            if !antichain || join_of(s) != *f {
                continue;
            }
            let irredundant = members.iter().all(|&k| join_of(s.difference(Subset::singleton(k))) != *f);
            if irredundant {
                found.push(members.iter().map(|&k| ji[k]).collect());
            }
        }
        let mut got = irredundant_decomposition(a, f)?;
        got.sort_by_key(|g| g.members().bits());
        for v in &mut found {
            v.sort_by_key(|g| g.members().bits());
        }
        Outcome::check(found.len() == 1 && found[0] == got, || {
            format!("filter {f}: brute force found {found:?}, decomposition {got:?}")
        })?;
    }
    Ok(())
}

fn check_filter_permutability(c: &Ctx) -> Result<()> {
    let a = c.a();
    let congs: Vec<CongruenceRelation> = enumerate_filters(a)
        .iter()
        .map(|f| congruence_of_filter(a, f))
        .collect::<Result<_>>()?;
    for t in &congs {
        for s in &congs {
            Outcome::check(t.permutes_with(s), || {
                format!("{:?} and {:?}", t.labels(), s.labels())
            })?;
        }
    }
    Ok(())
}

// ---- topology ----

fn check_continuity(c: &Ctx) -> Result<()> {
    let a = c.a();
    for f in enumerate_filters(a) {
        let t = induce_topology(a, &SystemOfFilters::single(f))?;
        if let Err(d) = check_topological_algebra(a, &t) {
            return Err(fail(format!("filter {f}: {d}")));
        }
    }
    Ok(())
}

fn check_separation(c: &Ctx) -> Result<()> {
    let a = c.a();
    let fs = enumerate_filters(a);
    for s in Subset::all_subsets(fs.len()).filter(|s| !s.is_empty()) {
        let family: Vec<FilterSet> = s.iter().map(|k| fs[k]).collect();
        let Ok(system) = SystemOfFilters::new(family.clone()) else {
            continue;
        };
        let t = induce_topology(a, &system)?;
        let p = t.separation_by_open_sets();
        let trivial = intersect_all(a, &family).is_trivial(a);
        Outcome::check(p.t0 == p.t1 && p.t1 == p.t2 && p.t2 == trivial, || {
            format!("family {family:?}: {p:?}, trivial meet {trivial}")
        })?;
        Outcome::check(p == t.separation(), || format!("family {family:?}: profiles differ"))?;
        Outcome::check(is_hausdorff(a, &system)? == trivial, || format!("family {family:?}"))?;
    }
    Ok(())
}

fn check_sup_meet(c: &Ctx) -> Result<()> {
    let a = c.a();
    let fs = enumerate_filters(a);
    for f in &fs {
        for g in &fs {
            let sup = sup_topologies(&[simple_topology(a, f), simple_topology(a, g)])?;
            Outcome::check(sup == simple_topology(a, &f.intersection(g)), || format!("{f} and {g}"))?;
        }
    }
    Ok(())
}

fn check_equipotence(c: &Ctx) -> Result<()> {
    let a = c.a();
    let z = enumerate_zltrl(a)?;
    let fs = enumerate_filters(a);
    Outcome::check(z.len() == fs.len(), || format!("{} topologies, {} filters", z.len(), fs.len()))?;
    for t in &z {
        let sources = fs.iter().filter(|f| simple_topology(a, f) == *t).count();
        Outcome::check(sources == 1, || format!("topology {:?} comes from {sources} filters", t.min_nbhds()))?;
    }
    Ok(())
}

fn check_sup_of_simple(c: &Ctx) -> Result<()> {
    let a = c.a();
    for t in enumerate_zltrl(a)? {
        let simples: Vec<FiniteTopology> = open_filters(a, &t).iter().map(|f| simple_topology(a, f)).collect();
        Outcome::check(sup_topologies(&simples)? == t, || format!("topology {:?}", t.min_nbhds()))?;
    }
    Ok(())
}

fn check_rebuild(c: &Ctx) -> Result<()> {
    let a = c.a();
    for t in enumerate_zltrl(a)? {
        let opens = open_filters(a, &t);
        let rebuilt = induce_topology(a, &SystemOfFilters::new(opens)?)?;
        Outcome::check(rebuilt == t, || format!("topology {:?}", t.min_nbhds()))?;
    }
    Ok(())
}

fn check_openness(c: &Ctx) -> Result<()> {
    let a = c.a();
    let fs = enumerate_filters(a);
    for t in enumerate_zltrl(a)? {
        for f in &fs {
            filter_openness(a, &t, f)?;
        }
    }
    Ok(())
}

fn check_equivalent_systems(c: &Ctx) -> Result<()> {
    let a = c.a();
    let whole = FilterSet::improper(a);
    for f in enumerate_filters(a) {
        let s1 = SystemOfFilters::single(f);
        let s2 = SystemOfFilters::new(vec![f, whole])?;
        Outcome::check(systems_equivalent(a, &s1, &s2)?, || format!("[{f}] vs [{f}, L]"))?;
    }
    Ok(())
}

// ---- limits ----

fn check_completion(c: &Ctx) -> Result<()> {
    let a = c.a();
    let comp = profinite_completion(a)?;
    Outcome::check(comp.embedding.is_bijective() && comp.embedding.is_homomorphism(), || {
        "completion map".to_string()
    })?;
    Outcome::check(are_isomorphic(&comp.cofinal_limit.algebra, a), || {
        "join-irreducible limit".to_string()
    })
}

fn check_completion_projections(c: &Ctx) -> Result<()> {
    let comp = profinite_completion(c.a())?;
    for (p, id) in comp.limit.projections.iter().zip(comp.system.poset().ids()) {
        Outcome::check(p.is_surjective(), || format!("projection to {id}"))?;
    }
    Ok(())
}

fn check_kernels(c: &Ctx) -> Result<()> {
    let comp = profinite_completion(c.a())?;
    let lim = &comp.limit.algebra;
    let kernels = projection_kernels(&comp.limit)?;
    let system = SystemOfFilters::new(kernels)?;
    let t = induce_topology(lim, &system)?;
    let p = t.separation_by_open_sets();
    Outcome::check(t.is_discrete() && p.t2 && t.is_zero_dimensional(), || {
        format!("kernel topology {:?}", t.min_nbhds())
    })?;
    Outcome::check(system.minimum().is_trivial(lim), || "least kernel".to_string())
}

fn check_certificate(c: &Ctx) -> Result<()> {
    let a = c.a();
    for t in enumerate_zltrl(a)? {
        let v = profiniteness_certificate(a, &t)?;
        if let Certificate::Profinite { clopen_filters } = &v.certificate {
            Outcome::check(verify_certificate(a, &t, clopen_filters), || {
                format!("certificate {clopen_filters:?} rejected")
            })?;
        }
    }
    Ok(())
}

fn check_subdirect(c: &Ctx) -> Result<()> {
    let a = c.a();
    let fs = enumerate_filters(a);
    if fs.len() > 12 {
        return Ok(());
    }
    for s in Subset::all_subsets(fs.len()).filter(|s| !s.is_empty()) {
        let family: Vec<FilterSet> = s.iter().map(|k| fs[k]).collect();
        let e = subdirect_embedding(a, &family)?;
        let trivial = intersect_all(a, &family).is_trivial(a);
        Outcome::check(e.injective == trivial, || format!("family {family:?}"))?;
    }
    Ok(())
}

// ---- analysis ----

fn check_si_implies_di(c: &Ctx) -> Result<()> {
    let a = c.a();
    let (si, _) = is_subdirectly_irreducible(a);
    Outcome::check(!si || has_no_factor_congruence(a)?, || "irreducible but decomposable".to_string())
}

fn check_indecomposability(c: &Ctx) -> Result<()> {
    let r = indecomposability_report(c.a())?;
    Outcome::check(r.agree(), || {
        let meeting: Vec<String> = r.trivial_intersection.iter().flatten().map(ToString::to_string).collect();
        format!(
            "verdicts {:?}; nontrivial filters meeting in top: {}",
            r.verdicts(),
            meeting.join(" ")
        )
    })
}

fn check_global_topology(c: &Ctx) -> Result<()> {
    global_system_topology_verdict(c.a()).map(|_| ())
}

fn check_hausdorff_existence(c: &Ctx) -> Result<()> {
    hausdorff_existence_verdict(c.a()).map(|_| ())
}

fn check_uniform(c: &Ctx) -> Result<()> {
    let a = c.a();
    let rels: Vec<Relation> = congruences_by_partition(a)
        .iter()
        .map(Relation::from_congruence)
        .collect();
    let r = uniform_base_check(&rels);
    Outcome::check(r.passes(), || format!("{:?}", r.failures))?;
    match nonpermuting_pair(a)? {
        None => Ok(()),
        Some((f, g)) => Err(fail(format!("θ of {f} and {g} do not permute"))),
    }
}

fn check_dcc(c: &Ctx) -> Result<()> {
    if enumerate_filters(c.a()).len() > 16 {
        return Ok(());
    }
    dcc_exhaustive(c.a()).map(|_| ())
}

fn check_dimension(c: &Ctx) -> Result<()> {
    let a = c.a();
    let primes = prime_filters(a);
    let mut best = 0;
    for s in Subset::all_subsets(primes.len()).filter(|s| !s.is_empty()) {
        let chain = s.iter().all(|i| s.iter().all(|j| primes[i].is_subset(&primes[j]) || primes[j].is_subset(&primes[i])));
        if chain {
            best = best.max(s.len() - 1);
        }
    }
    let d = dimension(a);
    Outcome::check(d == best, || format!("dimension {d}, brute force {best}"))
}

// ---- suite-level checks ----

fn suite_level(suite: Suite, catalog: &AlgebraCatalog, opts: &VerifyOptions) -> Vec<AlgebraVerdict> {
    let row = |label: &str, checks: Vec<Check>| AlgebraVerdict {
        suite,
        algebra: label.to_string(),
        size: None,
        checks,
    };
    match suite {
        Suite::Filters => {
            let n = opts.size_max.min(4);
            vec![row(
                &format!("generators 1..={n}"),
                vec![
                    Check {
                        theorem: "generators agree",
                        outcome: Outcome::from_result(generators_agree(catalog, n)),
                    },
                    Check {
                        theorem: "generation is deterministic",
                        outcome: Outcome::from_result(generation_deterministic(n)),
                    },
                ],
            )]
        }
        Suite::Limits => {
            let (cof, uni) = random_system_checks(opts);
            vec![row(
                &format!("{} random systems, seed {}", opts.random_systems, opts.seed),
                vec![
                    Check {
                        theorem: "cofinal restrictions have isomorphic limits",
                        outcome: cof,
                    },
                    Check {
                        theorem: "mediating map is unique",
                        outcome: uni,
                    },
                ],
            )]
        }
        Suite::Analysis => {
            vec![
                row(
                    "chain families",
                    vec![Check {
                        theorem: "chain dimension",
                        outcome: Outcome::from_result(chain_dimensions()),
                    }],
                ),
                {
                    let (label, outcome) = reducible_witness(catalog, opts.size_max);
                    row(
                        &label,
                        vec![Check {
                            theorem: "indecomposable but reducible witness",
                            outcome,
                        }],
                    )
                },
            ]
        }
        Suite::Topology => Vec::new(),
    }
}

fn generators_agree(catalog: &AlgebraCatalog, n: usize) -> Result<()> {
    let counts = catalog.count_by_size();
    for k in 1..=n {
        let naive = naive_generate(k)?;
        let (fast, _) = generate(k)?;
        Outcome::check(naive.len() == fast.len(), || {
            format!("size {k}: naive {} vs search {}", naive.len(), fast.len())
        })?;
        if let Some(&stored) = counts.get(&k) {
            Outcome::check(stored == fast.len(), || format!("size {k}: catalog holds {stored}"))?;
        }
        for a in &naive {
            Outcome::check(fast.iter().any(|b| are_isomorphic(a, b)), || {
                format!("size {k}: {} missing from search", canonical_key(a))
            })?;
        }
    }
    Ok(())
}

fn generation_deterministic(n: usize) -> Result<()> {
    let first = AlgebraCatalog::generate(n)?.to_jsonl();
    let second = AlgebraCatalog::generate(n)?.to_jsonl();
    Outcome::check(first == second, || "two runs differ".to_string())
}

fn chain_dimensions() -> Result<()> {
    for n in 2..=8 {
        let d = dimension(&goedel_chain(n));
        Outcome::check(d == n - 2, || format!("Gödel chain of {n}: dimension {d}"))?;
        let d = dimension(&lukasiewicz_chain(n));
        Outcome::check(d == 0, || format!("Łukasiewicz chain of {n}: dimension {d}"))?;
    }
    Ok(())
}

/// The witness key becomes the row label.
fn reducible_witness(catalog: &AlgebraCatalog, size_max: usize) -> (String, Outcome) {
    let hit = catalog.up_to(size_max).find(|e| {
        let a = &e.algebra;
        !a.is_trivial() && !is_subdirectly_irreducible(a).0 && has_no_factor_congruence(a).unwrap_or(false)
    });
    match hit {
        Some(e) => (e.key.clone(), Outcome::Pass),
        None => (
            "catalog".to_string(),
            Outcome::Skip(format!("no indecomposable reducible algebra up to size {size_max}")),
        ),
    }
}

/// Random inverse systems over the smallest algebras; every cofinal subset
/// is restricted and its limit compared, and for every cone from a small
/// algebra the homomorphisms into the limit that factor it are counted.
pub fn random_system_checks(opts: &VerifyOptions) -> (Outcome, Outcome) {
    let pool: Vec<Arc<ResiduatedLattice>> = (1..=3)
        .flat_map(|n| generate(n).map(|(v, _)| v).unwrap_or_default())
        .map(Arc::new)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cofinal = Outcome::Pass;
    let mut unique = Outcome::Pass;
    for k in 0..opts.random_systems {
        let s = match random_inverse_system(&mut rng, &pool, 4) {
            Ok(s) => s,
            Err(e) => return (Outcome::Fail(e.to_string()), Outcome::Fail(e.to_string())),
        };
        if cofinal == Outcome::Pass {
            if let Err(e) = cofinal_check(&s) {
                cofinal = Outcome::Fail(format!("system {k}: {e}"));
            }
        }
        if unique == Outcome::Pass {
            if let Err(e) = uniqueness_check(&s, &pool) {
                unique = Outcome::Fail(format!("system {k}: {e}"));
            }
        }
    }
    (cofinal, unique)
}

fn cofinal_check(s: &InverseSystem) -> Result<()> {
    let full = inverse_limit(s)?;
    let naive = enumerate_threads_naive(s);
    Outcome::check(!naive.is_empty() && naive.len() == full.threads.len(), || {
        "thread counts differ".to_string()
    })?;
    for sub in cofinal_subsets(s.poset()) {
        let r = cofinal_restrict(s, &sub)?;
        let lim = inverse_limit(&r)?;
        Outcome::check(find_isomorphism(&lim.algebra, &full.algebra).is_some(), || {
            format!("cofinal subset {sub:?}")
        })?;
    }
    Ok(())
}

fn uniqueness_check(s: &InverseSystem, pool: &[Arc<ResiduatedLattice>]) -> Result<()> {
    let lim = inverse_limit(s)?;
    let top = s.poset().maximum();
    let target = s.algebras()[top].clone();
    for b in pool {
        for lambda_top in all_homomorphisms(b, &target, 1 << 16)? {
            let cone: Vec<Homomorphism> = (0..s.poset().len())
                .map(|i| lambda_top.then(s.transition(top, i).expect("top is above every index")))
                .collect::<Result<_>>()?;
            let factoring: Vec<Homomorphism> = all_homomorphisms(b, &lim.algebra, 1 << 16)?
                .into_iter()
                .filter(|l| {
                    lim.projections
                        .iter()
                        .zip(&cone)
                        .all(|(p, leg)| l.then(p).map(|c| c.map == leg.map).unwrap_or(false))
                })
                .collect();
            let mediated = lim.mediate(b, &cone)?;
            Outcome::check(factoring.len() == 1 && factoring[0].map == mediated.map, || {
                format!("{} factorizations of a cone from size {}", factoring.len(), b.size())
            })?;
        }
    }
    Ok(())
}

/// Outcome counts per statement name.
pub fn tally(report: &VerifyReport) -> BTreeMap<&'static str, (usize, usize, usize)> {
    report
        .matrix()
        .into_iter()
        .map(|r| (r.theorem, (r.pass, r.fail, r.skip)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_passes_everything() {
        let cat = AlgebraCatalog::generate(3).unwrap();
        let opts = VerifyOptions {
            size_max: 3,
            random_systems: 5,
            ..VerifyOptions::default()
        };
        let r = verify(&cat, &Suite::ALL, &opts).unwrap();
        assert!(r.all_pass(), "{}", r.summary_table());
        assert_eq!(r.out_of_scope.len(), 2);
        assert!(r.to_jsonl().lines().count() > 4);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse("all").unwrap().len(), 4);
        assert_eq!(Suite::parse("limits").unwrap(), vec![Suite::Limits]);
        assert!(Suite::parse("nope").is_none());
    }
}
