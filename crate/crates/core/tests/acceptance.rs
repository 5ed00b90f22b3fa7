//! Acceptance suite. Runs every criterion in order, prints one PASS/FAIL line
//! for each with its runtime, and exits nonzero if any failed.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::kernel::{exhaustive_small, kernel_failures, random_full_rank};
use common::suites::{menger_discrepancies, pomcp_sweep};
use omp_core::catalog::{self, cube3_program, prism3_program};
use omp_core::dot::{export_dot, DotHighlight};
use omp_core::extension::LexRule;
use omp_core::holt_klee::{
    check_holt_klee, max_independent_paths, search_avoiding_extension, verify_avoidance_certificate, verify_cut,
    CutCertificate, DEFAULT_SEARCH_BUDGET,
};
use omp_core::io::{parse_digraph, serialize_digraph, OmFile};
use omp_core::tracer::{lifted_lex, trace_facet_avoiding, Tracer};
use omp_core::{Digraph, OmProgram, Sign};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figure_pins() -> Outcome {
    for name in ["fig1-prism", "fig1-cyclic", "fig1-cube"] {
        let d = catalog::get(name).unwrap().digraph().unwrap().clone();
        let (s, t) = d.require_source_sink().map_err(|e| e.to_string())?;
        let m = max_independent_paths(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(m.k == 2, || format!("{name}: k = {}", m.k))?;
        ensure(m.cut.size() == 2 && verify_cut(&d, s, t, &m.cut), || format!("{name}: computed cut invalid"))?;
        let ab = CutCertificate {
            nodes: vec![d.index_of("A").unwrap(), d.index_of("B").unwrap()],
            direct_arc: d.has_arc(s, t),
        };
        ensure(ab.size() == 2 && verify_cut(&d, s, t, &ab), || format!("{name}: {{A,B}} is not a cut"))?;
    }
    Ok("k = 2 and {A,B} cuts on all three drawings".into())
}

fn figure_two() -> Outcome {
    let d = catalog::fig2_cycle();
    let (sources, sinks) = (d.sources(), d.sinks());
    ensure(sources.len() == 1 && sinks.len() == 1, || format!("sources {sources:?}, sinks {sinks:?}"))?;
    let internal: Vec<usize> = (0..d.node_count()).filter(|v| *v != sources[0] && *v != sinks[0]).collect();
    ensure(internal.len() == 6, || "expected 6 internal nodes".into())?;
    let cycle = internal[1..]
        .iter()
        .copied()
        .permutations(5)
        .map(|rest| std::iter::once(internal[0]).chain(rest).collect::<Vec<_>>())
        .find(|c| d.is_directed_cycle(c))
        .ok_or("no directed cycle through all internal nodes")?;
    let m = max_independent_paths(&d).map_err(|e| e.to_string())?;
    ensure(m.k == 3, || format!("k = {}", m.k))?;
    let labels: Vec<&str> = cycle.iter().map(|&v| d.label(v)).collect();
    Ok(format!("cycle {} and k = 3", labels.join(" -> ")))
}

fn label_pairs(d: &Digraph) -> BTreeSet<(String, String)> {
    d.arcs().iter().map(|&(u, v)| (d.label(u).to_string(), d.label(v).to_string())).collect()
}

fn unordered(pairs: &BTreeSet<(String, String)>) -> BTreeSet<BTreeSet<String>> {
    pairs.iter().map(|(a, b)| BTreeSet::from([a.clone(), b.clone()])).collect()
}

fn realizable_program(
    p: &OmProgram,
    geometry: (Vec<common::GeometricVertex>, Vec<(usize, usize)>),
    limit: Duration,
) -> Outcome {
    let start = Instant::now();
    let name = p.name().to_string();
    let report = p.validate().map_err(|e| e.to_string())?;
    ensure(report.is_valid(), || format!("{name}: {:?}", report.details))?;
    let (verts, edges) = geometry;
    let expected = common::geometric_arcs(&verts, &edges);
    let em = p.em_graph().map_err(|e| e.to_string())?;
    let em_edges: BTreeSet<BTreeSet<String>> = em
        .edges
        .iter()
        .map(|&(u, v)| BTreeSet::from([p.format_set(em.nodes[u]), p.format_set(em.nodes[v])]))
        .collect();
    ensure(em_edges == unordered(&expected), || format!("{name}: face graph differs from the polytope graph"))?;
    let (pd, verdict) = check_holt_klee(p).map_err(|e| e.to_string())?;
    ensure(label_pairs(&pd.digraph) == expected, || format!("{name}: orientation differs from coordinates"))?;
    ensure(verdict.holds && verdict.k == 3, || format!("{name}: k = {}", verdict.k))?;
    let took = start.elapsed();
    ensure(took < limit, || format!("{name}: took {took:?}"))?;
    Ok(format!("{name} in {:.2}s", took.as_secs_f64()))
}

fn realizable_programs() -> Outcome {
    let a = realizable_program(&cube3_program(), common::cube_vertices(), Duration::from_secs(5))?;
    let b = realizable_program(&prism3_program(), common::prism_vertices(), Duration::from_secs(5))?;
    Ok(format!("{a}, {b}"))
}

fn kernel_suite() -> Outcome {
    let mut checked = 0;
    for n in 2..=6 {
        for m in exhaustive_small(n) {
            let fails = kernel_failures(&m);
            ensure(fails.is_empty(), || format!("{m}: {fails:?}"))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let n = rng.gen_range(7..=8);
        let r = rng.gen_range(2..n - 1);
        let m = random_full_rank(&mut rng, r, n, 3);
        let fails = kernel_failures(&m);
        ensure(fails.is_empty(), || format!("{m}: {fails:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} matrices, zero failures"))
}

fn random_rule(p: &OmProgram, rng: &mut ChaCha8Rng) -> LexRule {
    let mfg = p.contract_fg().unwrap();
    let mut base = mfg.bases().choose(rng).unwrap().to_vec();
    base.shuffle(rng);
    LexRule::new(base.into_iter().map(|e| {
        let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        (mfg.label(e).to_string(), s)
    }))
}

fn tracer_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let (mut traced, mut facets) = (0, 0);
    for name in catalog::names() {
        let entry = catalog::get(name).unwrap();
        let Ok(p) = entry.program() else { continue };
        let kf = p.orient().map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let rule = random_rule(p, &mut rng);
            let fail = |e: omp_core::OmError| format!("{name} {rule}: {e}");
            let sigma = lifted_lex(p, &rule).map_err(fail)?;
            let tracer = Tracer::new(p, &kf, &sigma).map_err(fail)?;
            let path = tracer.trace().map_err(fail)?;
            let joint = tracer.kh().sink().ok_or("no sink in the second digraph")?;
            ensure(
                path.nodes.first() == Some(&kf.source())
                    && path.nodes.last() == Some(&kf.sink())
                    && kf.digraph.is_simple_directed_path(&path.nodes),
                || format!("{name} {rule}: not a monotone source-sink path"),
            )?;
            let (first, second) = (path.first_segment(), path.second_segment());
            let shared: Vec<&usize> = first.iter().filter(|v| second.contains(v)).collect();
            ensure(path.nodes[path.joint] == joint && shared == [&joint], || {
                format!("{name} {rule}: segments meet at {shared:?}")
            })?;
            traced += 1;
        }
        let shared = kf.nodes[kf.source()].intersection(kf.nodes[kf.sink()]);
        for e in shared.iter() {
            let label = p.om().label(e);
            let path = trace_facet_avoiding(p, &kf, label).map_err(|err| format!("{name} avoiding {label}: {err}"))?;
            ensure(path.internal().iter().all(|&v| !kf.nodes[v].contains(e)), || {
                format!("{name}: path meets facet {label}")
            })?;
            facets += 1;
        }
    }
    Ok(format!("{traced} traced paths, {facets} facet-avoiding paths"))
}

fn menger_suite() -> Outcome {
    let bad = menger_discrepancies(600, 200);
    ensure(bad.is_empty(), || format!("{} discrepancies, first: {}", bad.len(), bad[0]))?;
    Ok("200 random digraphs agree with exhaustive search".into())
}

fn avoidance_suite() -> Outcome {
    let mut pairs = 0;
    for p in [cube3_program(), prism3_program()] {
        let kf = p.orient().map_err(|e| e.to_string())?;
        let internal: Vec<usize> = (0..kf.nodes.len()).filter(|&v| v != kf.source() && v != kf.sink()).collect();
        for pair in internal.iter().copied().combinations(2) {
            let labels = format!("{} {}", kf.digraph.label(pair[0]), kf.digraph.label(pair[1]));
            let (cert, path) = search_avoiding_extension(&p, &kf, &pair, DEFAULT_SEARCH_BUDGET)
                .map_err(|e| format!("{labels}: {e}"))?
                .ok_or_else(|| format!("{}: no certificate for {labels}", p.name()))?;
            let verified = verify_avoidance_certificate(&p, &kf, &pair, &cert).map_err(|e| e.to_string())?;
            ensure(verified.is_some(), || format!("{labels}: certificate rejected"))?;
            ensure(path.nodes.iter().all(|v| !pair.contains(v)), || format!("{labels}: path meets the pair"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} internal pairs avoided"))
}

fn pomcp_suite() -> Outcome {
    let s = pomcp_sweep(700, 100);
    ensure(s.failures.is_empty(), || format!("{} failures, first: {}", s.failures.len(), s.failures[0]))?;
    Ok(format!("{} instances, {} P-matrices, {} faces with one sink", s.instances, s.p_matrices, s.faces_checked))
}

fn round_trips() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let name = path.display().to_string();
        let (once, twice) = if path.extension().is_some_and(|e| e == "dg") {
            let once = serialize_digraph(&parse_digraph(&text).map_err(|e| format!("{name}: {e}"))?);
            (once.clone(), serialize_digraph(&parse_digraph(&once).unwrap()))
        } else {
            let once = OmFile::parse(&text).map_err(|e| format!("{name}: {e}"))?.to_string();
            (once.clone(), OmFile::parse(&once).unwrap().to_string())
        };
        ensure(once == twice, || format!("{name}: serialization is not stable"))?;
        ensure(text.starts_with('#') || once == text, || format!("{name}: fixture not canonical"))?;
        files += 1;
    }
    let mut graphs: Vec<Digraph> =
        ["fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle"].iter().map(|n| catalog::get(n).unwrap().digraph().unwrap().clone()).collect();
    graphs.push(cube3_program().orient().unwrap().digraph);
    for d in &graphs {
        let m = max_independent_paths(d).map_err(|e| e.to_string())?;
        for h in [DotHighlight::default(), DotHighlight { paths: m.paths.paths.clone(), cut: m.cut.nodes.clone() }] {
            let dot = export_dot(d, &h);
            graphviz_rust::parse(&dot).map_err(|e| format!("{}: DOT rejected: {e}", d.name()))?;
        }
    }
    Ok(format!("{files} fixtures stable, {} DOT exports parsed", graphs.len() * 2))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 9] = [
        ("figure 1 pins", figure_pins, Some(1)),
        ("figure 2 cycle", figure_two, Some(1)),
        ("realizable programs", realizable_programs, Some(10)),
        ("kernel property suite", kernel_suite, None),
        ("path tracer", tracer_suite, Some(30)),
        ("Menger oracle", menger_suite, Some(60)),
        ("avoidance pipeline", avoidance_suite, Some(120)),
        ("complementarity instances", pomcp_suite, Some(120)),
        ("round trips", round_trips, None),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed().as_secs_f64();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took >= l as f64 => Err(format!("exceeded {l}s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({took:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({took:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
