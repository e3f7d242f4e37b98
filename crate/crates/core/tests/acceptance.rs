//! Acceptance criteria 1 to 14. Prints one PASS or FAIL line per criterion
//! and exits non-zero when any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rlw::algebra::{
    all_homomorphisms, boolean, find_isomorphism, goedel_chain, lukasiewicz_chain, product, validate,
    Homomorphism, Op, ResiduatedLattice,
};
use rlw::analysis::{indecomposability_report, is_directly_indecomposable, uniform_base_check, Relation};
use rlw::catalog::{generate, naive_generate, AlgebraCatalog, CatalogEntry};
use rlw::filters::{
    congruence_of_filter, enumerate_filters, filter_of_congruence, irredundant_decomposition,
    join_irreducible_filters, prime_filters, CongruenceRelation, FilterSet,
};
use rlw::limits::{
    cofinal_restrict, inverse_limit, profinite_completion, profiniteness_certificate, random_inverse_system,
    subdirect_embedding, Certificate, InverseSystem,
};
use rlw::subset::Subset;
use rlw::topology::{
    check_topological_algebra, enumerate_zltrl, induce_topology, simple_topology, SystemOfFilters,
};

type Verdict = Result<String, String>;

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn upto(cat: &AlgebraCatalog, n: usize) -> Vec<&CatalogEntry> {
    cat.up_to(n).collect()
}

fn short(e: &CatalogEntry) -> String {
    format!("size-{} algebra {}", e.algebra.size(), e.key)
}

fn c1_axiom_gate(cat: &AlgebraCatalog) -> Verdict {
    let mut built: Vec<(String, ResiduatedLattice)> = Vec::new();
    for n in 2..=8 {
        built.push((format!("G{n}"), goedel_chain(n)));
        built.push((format!("L{n}"), lukasiewicz_chain(n)));
    }
    for k in 1..=3 {
        built.push((format!("B{k}"), boolean(k)));
    }
    let small: Vec<(String, ResiduatedLattice)> = built.iter().filter(|(_, a)| a.size() <= 4).cloned().collect();
    for (p, a) in &small {
        for (q, b) in &small {
            if a.size() * b.size() <= 8 {
                built.push((format!("{p}x{q}"), product(a, b)));
            }
        }
    }
    for (name, a) in &built {
        let r = validate(&a.to_data());
        ensure(r.is_ok(), || format!("{name}: {r}"))?;
        // residuation straight from the definition
        for x in a.elements() {
            for y in a.elements() {
                for z in a.elements() {
                    ensure(a.leq(a.mono(x, y), z) == a.leq(x, a.imp(y, z)), || {
                        format!("{name}: residuation at ({x}, {y}, {z})")
                    })?;
                }
            }
        }
    }
    let mut targets: Vec<ResiduatedLattice> = upto(cat, 4).iter().map(|e| (*e.algebra).clone()).collect();
    targets.extend(built.iter().filter(|(_, a)| a.size() <= 4).map(|(_, a)| a.clone()));
    let mut mutations = 0usize;
    for a in &targets {
        let data = a.to_data();
        let n = a.size();
        for op in Op::ALL {
            for x in 0..n {
                for y in 0..n {
                    for v in 0..n {
                        let mut m = data.clone();
                        m.table_mut(op)[x][y] = v;
                        mutations += 1;
                        let idempotent = m == data;
                        ensure(idempotent || !validate(&m).is_ok(), || {
                            format!("{op:?}[{x}][{y}] := {v} accepted on {}", a.to_json())
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{} builders, {mutations} mutations over {} algebras", built.len(), targets.len()))
}

fn c2_filter_congruence(cat: &AlgebraCatalog) -> Verdict {
    let entries = upto(cat, 5);
    for e in &entries {
        let a = &e.algebra;
        let fs = enumerate_filters(a);
        let congs = common::congruences(a);
        let brute = common::filters(a);
        ensure(fs.len() == congs.len() && fs.len() == brute.len(), || {
            format!("{}: {} filters, {} brute-force filters, {} congruences", short(e), fs.len(), brute.len(), congs.len())
        })?;
        for f in &fs {
            let t = congruence_of_filter(a, f).map_err(|e| e.to_string())?;
            ensure(t == CongruenceRelation::from_labels(&common::filter_labels(a, f.members())), || {
                format!("{}: θ of {f} differs from the direct computation", short(e))
            })?;
            ensure(filter_of_congruence(a, &t).map_err(|e| e.to_string())? == *f, || {
                format!("{}: {f} does not round-trip", short(e))
            })?;
        }
        for l in &congs {
            let t = CongruenceRelation::from_labels(l);
            let f = filter_of_congruence(a, &t).map_err(|e| e.to_string())?;
            ensure(congruence_of_filter(a, &f).map_err(|e| e.to_string())? == t, || {
                format!("{}: congruence {l:?} does not round-trip", short(e))
            })?;
        }
    }
    Ok(format!("{} algebras", entries.len()))
}

fn down_directed(family: &[Subset]) -> bool {
    family.iter().all(|f| {
        family
            .iter()
            .all(|g| family.iter().any(|h| h.is_subset(f.intersection(*g))))
    })
}

fn c3_separation(cat: &AlgebraCatalog) -> Verdict {
    let mut families = 0;
    for e in upto(cat, 4) {
        let a = &e.algebra;
        let fs = enumerate_filters(a);
        for s in common::subsets(fs.len()).filter(|s| !s.is_empty()) {
            let family: Vec<FilterSet> = s.iter().map(|k| fs[k]).collect();
            let sets: Vec<Subset> = family.iter().map(|f| f.members()).collect();
            if !down_directed(&sets) {
                continue;
            }
            families += 1;
            let system = SystemOfFilters::new(family.clone()).map_err(|e| e.to_string())?;
            let t = induce_topology(a, &system).map_err(|e| e.to_string())?;
            let opens = common::open_sets(t.min_nbhds());
            let (t0, t1, t2) = common::separation(a.size(), &opens);
            let meet = sets.iter().fold(a.carrier(), |m, f| m.intersection(*f));
            let trivial = meet == Subset::singleton(a.top());
            ensure(t0 == t1 && t1 == t2 && t2 == trivial, || {
                format!("{}: family {family:?} gives T0 {t0} T1 {t1} T2 {t2}, trivial meet {trivial}", short(e))
            })?;
        }
    }
    Ok(format!("{families} down-directed families"))
}

fn c4_continuity(cat: &AlgebraCatalog) -> Verdict {
    let mut checked = 0;
    for e in upto(cat, 5) {
        let a = &e.algebra;
        for f in enumerate_filters(a) {
            let t = induce_topology(a, &SystemOfFilters::single(f)).map_err(|e| e.to_string())?;
            if let Err(d) = check_topological_algebra(a, &t) {
                return Err(format!("{}: filter {f}: {d}", short(e)));
            }
            // continuity on minimal neighbourhoods, from the definition
            let nb = t.min_nbhds();
            for op in Op::ALL {
                for x in a.elements() {
                    for y in a.elements() {
                        let target = nb[a.op(op, x, y)];
                        let ok = nb[x].iter().all(|u| nb[y].iter().all(|v| target.contains(a.op(op, u, v))));
                        ensure(ok, || format!("{}: {op:?} not continuous at ({x}, {y}) for {f}", short(e)))?;
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} filter topologies"))
}

fn c5_equipotence(cat: &AlgebraCatalog) -> Verdict {
    let entries = upto(cat, 5);
    let mut total = 0;
    for e in &entries {
        let a = &e.algebra;
        let z = enumerate_zltrl(a).map_err(|e| e.to_string())?;
        let fs = common::filters(a);
        ensure(z.len() == fs.len(), || format!("{}: {} topologies, {} filters", short(e), z.len(), fs.len()))?;
        for t in &z {
            let sources = fs
                .iter()
                .filter(|f| {
                    let labels = common::filter_labels(a, **f);
                    a.elements()
                        .all(|x| t.nbhd(x) == a.elements().filter(|&y| labels[y] == labels[x]).collect())
                })
                .count();
            ensure(sources == 1, || format!("{}: topology {:?} has {sources} source filters", short(e), t.min_nbhds()))?;
        }
        total += z.len();
    }
    Ok(format!("{total} topologies over {} algebras", entries.len()))
}

fn c6_completion(cat: &AlgebraCatalog) -> Verdict {
    let entries = upto(cat, 4);
    for e in &entries {
        let a = &e.algebra;
        let c = profinite_completion(a).map_err(|e| e.to_string())?;
        ensure(
            c.embedding.is_homomorphism() && c.embedding.is_bijective() && c.limit.threads.len() == a.size(),
            || format!("{}: completion map {:?}", short(e), c.embedding.map),
        )?;
        ensure(find_isomorphism(&c.cofinal_limit.algebra, &c.limit.algebra).is_some(), || {
            format!("{}: join-irreducible limit has size {}", short(e), c.cofinal_limit.algebra.size())
        })?;
    }
    Ok(format!("{} algebras", entries.len()))
}

/// Every product tuple checked against every transition.
fn brute_threads(s: &InverseSystem) -> usize {
    let k = s.poset().len();
    let sizes: Vec<usize> = s.algebras().iter().map(|a| a.size()).collect();
    let total: usize = sizes.iter().product();
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let t: Vec<usize> = sizes
                .iter()
                .map(|&m| {
                    let x = c % m;
                    c /= m;
                    x
                })
                .collect();
            (0..k).all(|i| (0..k).all(|j| s.transition(i, j).is_none_or(|h| h.map[t[i]] == t[j])))
        })
        .count()
}

fn c7_cofinality() -> Verdict {
    let pool: Vec<Arc<ResiduatedLattice>> = (1..=3)
        .flat_map(|n| generate(n).expect("small sizes generate").0)
        .map(Arc::new)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut restrictions = 0;
    let mut cones = 0;
    for k in 0..100 {
        let s = random_inverse_system(&mut rng, &pool, 4).map_err(|e| e.to_string())?;
        let lim = inverse_limit(&s).map_err(|e| e.to_string())?;
        ensure(lim.threads.len() == brute_threads(&s), || format!("system {k}: thread count"))?;
        let top = s.poset().maximum();
        // in a finite directed poset the cofinal subsets are those holding the maximum
        for sub in common::subsets(s.poset().len()).filter(|m| m.contains(top)) {
            let idx = sub.to_vec();
            let r = cofinal_restrict(&s, &idx).map_err(|e| e.to_string())?;
            let rl = inverse_limit(&r).map_err(|e| e.to_string())?;
            ensure(find_isomorphism(&rl.algebra, &lim.algebra).is_some(), || {
                format!("system {k}: restriction to {idx:?} has a limit of size {}", rl.algebra.size())
            })?;
            restrictions += 1;
        }
        let apex = s.algebras()[top].clone();
        for b in &pool {
            for l in all_homomorphisms(b, &apex, 1 << 16).map_err(|e| e.to_string())? {
                let cone: Vec<Homomorphism> = (0..s.poset().len())
                    .map(|i| match s.transition(top, i) {
                        Some(h) => l.then(h),
                        None => Ok(l.clone()),
                    })
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let factoring = all_homomorphisms(b, &lim.algebra, 1 << 16)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .filter(|m| {
                        b.elements().all(|x| {
                            let thread = &lim.threads[m.map[x]];
                            cone.iter().enumerate().all(|(i, leg)| thread[i] == leg.map[x])
                        })
                    })
                    .count();
                ensure(factoring == 1, || {
                    format!("system {k}: {factoring} maps factor a cone from a size-{} algebra", b.size())
                })?;
                cones += 1;
            }
        }
    }
    Ok(format!("100 systems, {restrictions} cofinal restrictions, {cones} cones"))
}

fn c8_indecomposability(cat: &AlgebraCatalog) -> Verdict {
    let b4 = boolean(2);
    let r = indecomposability_report(&b4).map_err(|e| e.to_string())?;
    ensure(r.verdicts() == [false; 4] && r.factor_pair.is_some(), || {
        format!("four-element Boolean algebra: {:?}", r.verdicts())
    })?;
    let pair = r.factor_pair.as_ref().expect("checked above");
    ensure(pair.left != pair.right, || "degenerate factor pair".to_string())?;
    for n in 2..=3 {
        for a in [goedel_chain(n), lukasiewicz_chain(n)] {
            ensure(is_directly_indecomposable(&a).map_err(|e| e.to_string())?, || {
                format!("chain of size {n} reported decomposable")
            })?;
        }
    }
    let mut disagreements = Vec::new();
    let entries: Vec<&CatalogEntry> = upto(cat, 5).into_iter().filter(|e| !e.algebra.is_trivial()).collect();
    for e in &entries {
        let r = indecomposability_report(&e.algebra).map_err(|e| e.to_string())?;
        let factor = common::factor_congruences(&e.algebra);
        ensure(r.no_factor_congruence == factor.is_none(), || {
            format!("{}: factor congruence verdict differs from the brute-force scan", short(e))
        })?;
        if !r.agree() {
            let meeting: Vec<String> = r.trivial_intersection.iter().flatten().map(ToString::to_string).collect();
            disagreements.push(format!(
                "{} verdicts {:?}, nontrivial filters meeting in top: {}",
                short(e),
                r.verdicts(),
                meeting.join(" ")
            ));
        }
    }
    if disagreements.is_empty() {
        Ok(format!("{} algebras", entries.len()))
    } else {
        Err(format!(
            "{} of {} algebras disagree; first: {}",
            disagreements.len(),
            entries.len(),
            disagreements[0]
        ))
    }
}

fn c9_decomposition(cat: &AlgebraCatalog) -> Verdict {
    let mut checked = 0;
    for e in upto(cat, 4) {
        let a = &e.algebra;
        let fs = common::filters(a);
        let trivial = Subset::singleton(a.top());
        // join-irreducible from the definition
        let ji: Vec<Subset> = fs
            .iter()
            .copied()
            .filter(|&f| f != trivial)
            .filter(|&f| {
                let below: Vec<Subset> = fs.iter().copied().filter(|g| g.is_proper_subset(f)).collect();
                !below.iter().any(|&g| below.iter().any(|&h| common::generated(a, g.union(h)) == f))
            })
            .collect();
        let lib_ji: Vec<Subset> = join_irreducible_filters(a).iter().map(|f| f.members()).collect();
        ensure(
            ji.len() == lib_ji.len() && ji.iter().all(|f| lib_ji.contains(f)),
            || format!("{}: join-irreducibles {lib_ji:?}, expected {ji:?}", short(e)),
        )?;
        let join = |s: Subset| common::generated(a, s.iter().fold(trivial, |acc, k| acc.union(ji[k])));
        for &f in fs.iter().filter(|&&f| f != trivial) {
            let mut found: Vec<Vec<Subset>> = Vec::new();
            for s in common::subsets(ji.len()).filter(|s| !s.is_empty()) {
                let m = s.to_vec();
                let antichain = m.iter().all(|&i| m.iter().all(|&j| i == j || !ji[i].is_subset(ji[j])));
                let irredundant = m.iter().all(|&k| join(s.difference(Subset::singleton(k))) != f);
                if antichain && join(s) == f && irredundant {
                    found.push(m.iter().map(|&k| ji[k]).collect());
                }
            }
            let filter = FilterSet::new(a, f).map_err(|e| e.to_string())?;
            let mut got: Vec<Subset> = irredundant_decomposition(a, &filter)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|g| g.members())
                .collect();
            got.sort_by_key(|g| g.bits());
            for v in &mut found {
                v.sort_by_key(|g| g.bits());
            }
            ensure(found.len() == 1 && found[0] == got, || {
                format!("{}: filter {f}: antichain scan {found:?}, library {got:?}", short(e))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} filters"))
}

fn c10_prime_separation(cat: &AlgebraCatalog) -> Verdict {
    let entries = upto(cat, 5);
    for e in &entries {
        let a = &e.algebra;
        let ps = common::primes(a);
        let lib: Vec<Subset> = prime_filters(a).iter().map(|f| f.members()).collect();
        ensure(lib.len() == ps.len() && ps.iter().all(|p| lib.contains(p)), || {
            format!("{}: primes {lib:?}, expected {ps:?}", short(e))
        })?;
        for x in a.elements().filter(|&x| x != a.top()) {
            ensure(ps.iter().any(|p| !p.contains(x)), || format!("{}: {x} lies in every prime", short(e)))?;
        }
        let meet = ps.iter().fold(a.carrier(), |m, p| m.intersection(*p));
        let expect = if a.is_trivial() { a.carrier() } else { Subset::singleton(a.top()) };
        ensure(meet == expect, || format!("{}: primes meet in {meet}", short(e)))?;
    }
    Ok(format!("{} algebras", entries.len()))
}

fn c11_si_bridge(cat: &AlgebraCatalog) -> Verdict {
    let mut di = 0;
    for e in cat.entries.iter().filter(|e| !e.algebra.is_trivial()) {
        let a = &e.algebra;
        if common::factor_congruences(a).is_some() {
            continue;
        }
        di += 1;
        let mono = common::monolith(a);
        let si = mono.is_some();
        // global system: all nontrivial filters, closed under meets
        let trivial = Subset::singleton(a.top());
        let nt: Vec<Subset> = common::filters(a).into_iter().filter(|&f| f != trivial).collect();
        let least = nt.iter().fold(a.carrier(), |m, f| m.intersection(*f));
        let labels = common::filter_labels(a, least);
        let non_discrete = a.elements().any(|x| a.elements().any(|y| x != y && labels[x] == labels[y]));
        let z = enumerate_zltrl(a).map_err(|e| e.to_string())?;
        let nd: Vec<_> = z.iter().filter(|t| !t.is_discrete()).collect();
        let largest = nd.iter().any(|t| nd.iter().all(|u| u.is_coarser_than(t)));
        ensure(si == non_discrete && non_discrete == largest, || {
            format!("{}: SI {si}, non-discrete {non_discrete}, largest non-discrete {largest}", short(e))
        })?;
        if let Some(m) = mono {
            let f = FilterSet::new(a, m).map_err(|e| e.to_string())?;
            ensure(nd.iter().any(|t| **t == simple_topology(a, &f)), || {
                format!("{}: monolith topology missing", short(e))
            })?;
        }
    }
    Ok(format!("{di} indecomposable algebras up to size {}", cat.size_bound))
}

fn c12_certificate(cat: &AlgebraCatalog) -> Verdict {
    let mut pairs = 0;
    let mut families = 0;
    for e in &cat.entries {
        let a = &e.algebra;
        let fs = enumerate_filters(a);
        for t in enumerate_zltrl(a).map_err(|e| e.to_string())? {
            let v = profiniteness_certificate(a, &t).map_err(|err| format!("{}: {err}", short(e)))?;
            let certified = matches!(v.certificate, Certificate::Profinite { .. });
            let (_, _, hausdorff) = common::separation(a.size(), &common::open_sets(t.min_nbhds()));
            let discrete = t.min_nbhds().iter().all(|u| u.len() == 1);
            ensure(certified == hausdorff && hausdorff == discrete, || {
                format!("{}: certified {certified}, Hausdorff {hausdorff}, discrete {discrete}", short(e))
            })?;
            let opens = common::open_sets(t.min_nbhds());
            let clopen: Vec<FilterSet> = fs
                .iter()
                .copied()
                .filter(|f| opens.contains(&f.members()) && opens.contains(&f.members().complement(a.size())))
                .collect();
            let emb = subdirect_embedding(a, &clopen).map_err(|e| e.to_string())?;
            let meet = clopen.iter().fold(a.carrier(), |m, f| m.intersection(f.members()));
            let distinct = (0..a.size()).all(|x| (0..x).all(|y| emb.tuples[x] != emb.tuples[y]));
            ensure(emb.injective == distinct && distinct == (meet == Subset::singleton(a.top())), || {
                format!("{}: clopen family {clopen:?}", short(e))
            })?;
            pairs += 1;
        }
        if a.size() <= 5 {
            for s in common::subsets(fs.len()).filter(|s| !s.is_empty()) {
                let family: Vec<FilterSet> = s.iter().map(|k| fs[k]).collect();
                let emb = subdirect_embedding(a, &family).map_err(|e| e.to_string())?;
                let meet = family.iter().fold(a.carrier(), |m, f| m.intersection(f.members()));
                ensure(emb.injective == (meet == Subset::singleton(a.top())), || {
                    format!("{}: family {family:?}", short(e))
                })?;
                families += 1;
            }
        }
    }
    Ok(format!("{pairs} algebra-topology pairs, {families} filter families"))
}

fn c13_uniform(cat: &AlgebraCatalog) -> Verdict {
    let entries = upto(cat, 4);
    for e in &entries {
        let a = &e.algebra;
        let congs = common::congruences(a);
        let rels: Vec<Relation> = congs
            .iter()
            .map(|l| Relation::from_congruence(&CongruenceRelation::from_labels(l)))
            .collect();
        let r = uniform_base_check(&rels);
        ensure(r.passes(), || format!("{}: {:?}", short(e), r.failures))?;
        for t in &congs {
            for s in &congs {
                let (rt, rs) = (common::relation(t), common::relation(s));
                ensure(common::compose(&rt, &rs) == common::compose(&rs, &rt), || {
                    format!("{}: {t:?} and {s:?} do not permute", short(e))
                })?;
            }
        }
    }
    Ok(format!("{} algebras", entries.len()))
}

fn c14_generators() -> Verdict {
    let mut counts = Vec::new();
    for n in 1..=4 {
        let naive = naive_generate(n).map_err(|e| e.to_string())?;
        let (fast, _) = generate(n).map_err(|e| e.to_string())?;
        ensure(naive.len() == fast.len(), || format!("size {n}: naive {} vs search {}", naive.len(), fast.len()))?;
        counts.push(fast.len());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (p, q) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    AlgebraCatalog::generate(4).and_then(|c| c.save(&p)).map_err(|e| e.to_string())?;
    AlgebraCatalog::generate(4).and_then(|c| c.save(&q)).map_err(|e| e.to_string())?;
    let (x, y) = (std::fs::read(&p).unwrap_or_default(), std::fs::read(&q).unwrap_or_default());
    ensure(!x.is_empty() && x == y, || "two generation runs wrote different files".to_string())?;
    Ok(format!("counts {counts:?}, files byte-identical"))
}

fn main() {
    let t = Instant::now();
    let cat = AlgebraCatalog::generate(6).expect("catalog generates");
    println!(
        "catalog: {} algebras of sizes 1..=6, counts {:?} ({:.2?})",
        cat.len(),
        cat.count_by_size().values().collect::<Vec<_>>(),
        t.elapsed()
    );
    let criteria: Vec<(u32, &str, Option<u64>, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "axiom gate", Some(30), Box::new(|| c1_axiom_gate(&cat))),
        (2, "filter-congruence bijection", Some(60), Box::new(|| c2_filter_congruence(&cat))),
        (3, "separation collapse", Some(60), Box::new(|| c3_separation(&cat))),
        (4, "continuity", None, Box::new(|| c4_continuity(&cat))),
        (5, "equipotence", Some(120), Box::new(|| c5_equipotence(&cat))),
        (6, "completion identity", Some(120), Box::new(|| c6_completion(&cat))),
        (7, "cofinality", Some(120), Box::new(c7_cofinality)),
        (8, "indecomposability agreement", None, Box::new(|| c8_indecomposability(&cat))),
        (9, "unique decomposition", None, Box::new(|| c9_decomposition(&cat))),
        (10, "prime separation", None, Box::new(|| c10_prime_separation(&cat))),
        (11, "SI/topology bridge", None, Box::new(|| c11_si_bridge(&cat))),
        (12, "profiniteness certificate", None, Box::new(|| c12_certificate(&cat))),
        (13, "uniform base and permutability", None, Box::new(|| c13_uniform(&cat))),
        (14, "dual-generator agreement", None, Box::new(c14_generators)),
    ];
    let mut failed = 0;
    for (k, name, limit, run) in criteria {
        let start = Instant::now();
        let mut verdict = run();
        let took = start.elapsed();
        if let (Ok(detail), Some(secs)) = (&verdict, limit) {
            if took > Duration::from_secs(secs) {
                verdict = Err(format!("{detail}, but took {took:.2?} against a {secs} s budget"));
            }
        }
        match verdict {
            Ok(detail) => println!("PASS criterion {k:>2} {name}: {detail} ({took:.2?})"),
            Err(w) => {
                failed += 1;
                println!("FAIL criterion {k:>2} {name}: {w} ({took:.2?})");
            }
        }
    }
    println!("{} of 14 criteria passed", 14 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
