use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use omp_core::catalog::{self, EntryKind, Payload};
use omp_core::dot::{export_dot, DotHighlight};
use omp_core::exact::{format_rational, parse_rational};
use omp_core::extension::LexRule;
use omp_core::holt_klee::{check_digraph, check_holt_klee, HoltKleeVerdict};
use omp_core::io::{parse_digraph, serialize_digraph, OmFile};
use omp_core::limits::{set_brute_force_cap, DEFAULT_CAP};
use omp_core::pomcp::{check_pomcp_holt_klee, PomcpInstance};
use omp_core::tracer::{default_localization, lifted_lex, trace_facet_avoiding, Tracer};
use omp_core::{Digraph, OmError, OmProgram, OrientedMatroid, RationalMatrix, Sign};

#[derive(Parser)]
#[command(name = "omp", version, about = "Oriented matroid programs and the Holt-Klee property")]
struct Cli {
    /// Largest ground set for exhaustive sign-vector sweeps.
    #[arg(long, global = true, env = "OMP_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check oriented matroid axioms, program conditions or digraph shape.
    Validate { input: String },
    /// Print the program digraph (or a digraph file) in arc-list form.
    Graph {
        input: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Arcs)]
        format: GraphFormat,
    },
    /// Count independent monotone paths and compare with the dimension.
    HoltKlee {
        /// Program, digraph or catalog input; omit with --batch.
        input: Option<String>,
        /// Print a minimum node cut.
        #[arg(long)]
        cut: bool,
        /// Print a maximum family of independent paths.
        #[arg(long)]
        paths: bool,
        /// Dimension for digraph-only inputs.
        #[arg(long)]
        dim: Option<usize>,
        /// JSON-lines file of inputs (a path string or {"path": .., "dim": ..} per line).
        #[arg(long, conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Trace a monotone source-to-sink path through a single-element extension.
    Trace {
        input: String,
        /// Lexicographic extension over a base of the contraction by f and g, e.g. lex:y1+,y3-.
        #[arg(long, conflicts_with_all = ["avoid_facet", "random_ext"])]
        ext: Option<String>,
        /// Trace a path whose internal nodes avoid the facet of this constraint.
        #[arg(long)]
        avoid_facet: Option<String>,
        /// Draw a random lexicographic extension using --seed.
        #[arg(long, conflicts_with = "avoid_facet")]
        random_ext: bool,
    },
    /// Complementarity problem over the cube subdivision for a square matrix.
    Pomcp {
        /// File with n rows of n rationals, or catalog:<name>.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        ext: Option<String>,
    },
    /// List built-in examples or print one.
    Catalog { name: Option<String> },
    /// Write a Graphviz rendering of a digraph or program digraph.
    ExportDot {
        input: String,
        /// Highlight a maximum family of independent paths.
        #[arg(long)]
        paths: bool,
        /// Highlight a minimum node cut.
        #[arg(long)]
        cut: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Arcs,
    Dot,
}

enum Failure {
    Om(OmError),
    Usage(String),
}

impl From<OmError> for Failure {
    fn from(e: OmError) -> Self {
        Failure::Om(e)
    }
}

type Run = Result<bool, Failure>;

enum Input {
    Om(OrientedMatroid),
    Program(OmProgram),
    Digraph(Digraph),
    Pomcp(PomcpInstance),
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn load(input: &str) -> Result<Input, Failure> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(match catalog::get(name)?.payload {
            Payload::Digraph(d) => Input::Digraph(d),
            Payload::Program(p) => Input::Program(p),
            Payload::Pomcp(p) => Input::Pomcp(p),
        });
    }
    let text = read(input)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.starts_with("digraph") {
        return Ok(Input::Digraph(parse_digraph(&text)?));
    }
    let file = OmFile::parse(&text)?;
    if file.program.is_some() {
        let stem = std::path::Path::new(input).file_stem().map_or(input.into(), |s| s.to_string_lossy());
        Ok(Input::Program(file.build_program()?.with_name(&stem)))
    } else {
        Ok(Input::Om(file.build()?))
    }
}

fn load_program(input: &str) -> Result<OmProgram, Failure> {
    match load(input)? {
        Input::Program(p) => Ok(p),
        Input::Digraph(d) => Err(OmError::DigraphOnly(d.name().to_string()).into()),
        Input::Om(_) => Err(Failure::Usage(format!("{input} has no `program:` line"))),
        Input::Pomcp(_) => Err(Failure::Usage(format!("{input} is a complementarity instance; use `omp pomcp`"))),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn validate(input: &str, as_json: bool) -> Run {
    match load(input)? {
        Input::Om(om) => {
            let report = om.verify_axioms()?;
            if as_json {
                print_json(&json!({ "kind": "om", "rank": om.rank(), "elements": om.len(), "axioms": report }));
            } else {
                println!("rank {} on {} elements, {} cocircuits", om.rank(), om.len(), om.cocircuits().len());
                println!("axioms: {} covectors, {} violations", report.covector_count, report.total);
            }
            Ok(report.passed())
        }
        Input::Program(p) => {
            let axioms = p.om().verify_axioms()?;
            let report = p.validate()?;
            if as_json {
                print_json(&json!({ "kind": "program", "name": p.name(), "axioms": axioms, "program": report }));
            } else {
                println!("{}: rank {} on {} elements", p.name(), p.rank(), p.om().len());
                println!("axioms: {} violations", axioms.total);
                println!("bounded: {}, acyclic: {}, f nondegenerate: {}", report.bounded, report.acyclic, report.f_nondegenerate);
                for d in &report.details {
                    println!("  {d}");
                }
            }
            Ok(axioms.passed() && report.is_valid())
        }
        Input::Digraph(d) => {
            let summary = d.summary();
            let ok = d.source().is_some() && d.sink().is_some();
            if as_json {
                print_json(&json!({ "kind": "digraph", "summary": summary }));
            } else {
                println!("{}: {} nodes, {} arcs, acyclic: {}", summary.name, summary.nodes, summary.arcs, summary.acyclic);
                println!("source: {}", summary.source.as_deref().unwrap_or("none"));
                println!("sink: {}", summary.sink.as_deref().unwrap_or("none"));
            }
            Ok(ok)
        }
        Input::Pomcp(inst) => pomcp_report(&inst, as_json),
    }
}

fn digraph_of(input: &str) -> Result<Digraph, Failure> {
    match load(input)? {
        Input::Digraph(d) => Ok(d),
        Input::Program(p) => Ok(p.orient()?.digraph),
        Input::Pomcp(inst) => Ok(inst.digraph()?.digraph),
        Input::Om(_) => Err(Failure::Usage(format!("{input} has no `program:` line"))),
    }
}

fn graph(input: &str, format: GraphFormat) -> Run {
    let d = digraph_of(input)?;
    match format {
        GraphFormat::Arcs => print!("{}", serialize_digraph(&d)),
        GraphFormat::Dot => print!("{}", export_dot(&d, &DotHighlight::default())),
    }
    Ok(true)
}

fn verdict_json(d: &Digraph, v: &HoltKleeVerdict) -> Value {
    let label = |p: &Vec<usize>| p.iter().map(|&u| d.label(u)).collect::<Vec<_>>();
    json!({
        "holds": v.holds,
        "k": v.k,
        "dim": v.dim,
        "paths": v.paths.paths.iter().map(label).collect::<Vec<_>>(),
        "cut": label(&v.cut.nodes),
        "cut_direct_arc": v.cut.direct_arc,
    })
}

/// Holt-Klee verdict for one input, with the digraph it was computed on.
fn holt_klee_one(input: &str, dim: Option<usize>) -> Result<(Digraph, HoltKleeVerdict), Failure> {
    match load(input)? {
        Input::Program(p) => {
            let (pd, v) = check_holt_klee(&p)?;
            Ok((pd.digraph, v))
        }
        Input::Digraph(d) => {
            let dim = dim.or(d.dim()).ok_or_else(|| {
                Failure::Usage(format!("{} is a digraph without a dimension; pass --dim", d.name()))
            })?;
            let v = check_digraph(&d, dim)?;
            Ok((d, v))
        }
        Input::Pomcp(inst) => {
            let (sd, report) = check_pomcp_holt_klee(&inst)?;
            Ok((sd.digraph, report.verdict))
        }
        Input::Om(_) => Err(Failure::Usage(format!("{input} has no `program:` line"))),
    }
}

fn holt_klee(input: &str, dim: Option<usize>, cut: bool, paths: bool, as_json: bool) -> Run {
    let (d, v) = holt_klee_one(input, dim)?;
    if as_json {
        print_json(&verdict_json(&d, &v));
        return Ok(v.holds);
    }
    println!("{}: k = {}, d = {}, {}", d.name(), v.k, v.dim, if v.holds { "holds" } else { "fails" });
    if paths {
        for p in &v.paths.paths {
            println!("path: {}", p.iter().map(|&u| d.label(u)).collect::<Vec<_>>().join(" -> "));
        }
    }
    if cut {
        let nodes: Vec<&str> = v.cut.nodes.iter().map(|&u| d.label(u)).collect();
        let direct = if v.cut.direct_arc { " plus the direct source-sink arc" } else { "" };
        println!("cut: {{{}}}{direct}", nodes.join(", "));
    }
    Ok(v.holds)
}

fn batch_entry(line: &str) -> Result<(String, Option<usize>), String> {
    let v: Value = serde_json::from_str(line).map_err(|e| format!("bad JSON: {e}"))?;
    match v {
        Value::String(s) => Ok((s, None)),
        Value::Object(o) => {
            let path = o.get("path").and_then(Value::as_str).ok_or("entry lacks a \"path\" string")?;
            let dim = match o.get("dim") {
                None | Some(Value::Null) => None,
                Some(d) => Some(d.as_u64().ok_or("\"dim\" must be a nonnegative integer")? as usize),
            };
            Ok((path.to_string(), dim))
        }
        _ => Err("entry must be a string or an object".into()),
    }
}

/// Runs every entry on its own thread; prints one JSON line per entry in input order.
fn holt_klee_batch(file: &PathBuf, dim: Option<usize>) -> Result<u8, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let results: Vec<(Value, u8)> = std::thread::scope(|scope| {
        let handles: Vec<_> = lines
            .iter()
            .map(|line| {
                scope.spawn(move || match batch_entry(line) {
                    Err(e) => (json!({ "entry": line, "error": e }), 2),
                    Ok((path, entry_dim)) => match holt_klee_one(&path, entry_dim.or(dim)) {
                        Ok((d, v)) => {
                            let mut out = verdict_json(&d, &v);
                            out["path"] = json!(path);
                            (out, if v.holds { 0 } else { 1 })
                        }
                        Err(f) => {
                            let (msg, code) = describe(&f);
                            (json!({ "path": path, "error": msg }), code)
                        }
                    },
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (json!({ "error": "worker panicked" }), 3))).collect()
    });
    let mut code = 0;
    let mut out = std::io::stdout().lock();
    for (v, c) in results {
        writeln!(out, "{v}").expect("stdout is writable");
        code = code.max(c);
    }
    Ok(code)
}

fn random_rule(p: &OmProgram, seed: u64) -> Result<LexRule, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mfg = p.contract_fg()?;
    let bases = mfg.bases();
    let mut base = bases.choose(&mut rng).ok_or_else(|| Failure::Usage("contraction has no base".into()))?.to_vec();
    base.shuffle(&mut rng);
    Ok(LexRule::new(base.into_iter().map(|e| {
        let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        (mfg.label(e).to_string(), s)
    })))
}

fn trace(input: &str, ext: Option<&str>, avoid: Option<&str>, random: bool, seed: u64, as_json: bool) -> Run {
    let p = load_program(input)?;
    let kf = p.orient()?;
    let (rule, path) = if let Some(e) = avoid {
        (None, trace_facet_avoiding(&p, &kf, e)?)
    } else {
        let rule = match (ext, random) {
            (Some(s), _) => Some(s.parse::<LexRule>()?),
            (None, true) => Some(random_rule(&p, seed)?),
            (None, false) => None,
        };
        let sigma = match &rule {
            Some(r) => lifted_lex(&p, r)?,
            None => default_localization(&p)?,
        };
        (rule, Tracer::new(&p, &kf, &sigma)?.trace()?)
    };
    let role = |i: usize| {
        let segment = if i <= path.joint { "first" } else { "second" };
        match i {
            0 => "source".to_string(),
            _ if i == path.nodes.len() - 1 => "sink".to_string(),
            _ if i == path.joint => "joint".to_string(),
            _ => segment.to_string(),
        }
    };
    if as_json {
        let nodes: Vec<Value> =
            path.labels.iter().enumerate().map(|(i, l)| json!({ "node": l, "role": role(i) })).collect();
        print_json(&json!({
            "program": p.name(),
            "extension": rule.map(|r| r.to_string()),
            "avoid_facet": avoid,
            "arcs": path.arc_count(),
            "joint": path.joint,
            "nodes": nodes,
        }));
    } else {
        if let Some(r) = &rule {
            println!("# extension {r}");
        }
        for (i, l) in path.labels.iter().enumerate() {
            println!("{l}\t{}", role(i));
        }
    }
    Ok(true)
}

fn parse_matrix(text: &str) -> Result<RationalMatrix, OmError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut rest = line;
        for w in line.split_whitespace() {
            let at = rest.find(w).expect("token comes from the line") + (line.len() - rest.len());
            rest = &line[at + w.len()..];
            row.push(parse_rational(w).map_err(|_| OmError::Parse {
                line: i + 1,
                column: at + 1,
                message: format!("invalid rational {w:?}"),
            })?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(OmError::Parse { line: 1, column: 1, message: "empty matrix".into() });
    }
    RationalMatrix::from_rows(rows)
}

fn pomcp_report(inst: &PomcpInstance, as_json: bool) -> Run {
    match check_pomcp_holt_klee(inst) {
        Ok((sd, report)) => {
            if as_json {
                print_json(&json!({
                    "n": report.n,
                    "extension": inst.rule.to_string(),
                    "p_matrix": report.p_matrix,
                    "property_p": report.property_p,
                    "faces_checked": report.faces_checked,
                    "verdict": verdict_json(&sd.digraph, &report.verdict),
                }));
            } else {
                println!("n = {}, extension {}", report.n, inst.rule);
                println!("P-matrix: {}, property (P): {}", report.p_matrix, report.property_p);
                println!("faces with one sink and one source: {}", report.faces_checked);
                println!("k = {}, {}", report.verdict.k, if report.verdict.holds { "holds" } else { "fails" });
            }
            Ok(report.verdict.holds)
        }
        Err(OmError::InvalidInput(msg)) if msg.starts_with("property (P) fails") => {
            if as_json {
                print_json(&json!({ "n": inst.n(), "property_p": false, "detail": msg }));
            } else {
                println!("{msg}");
            }
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn pomcp(matrix: &str, ext: Option<&str>, as_json: bool) -> Run {
    let rule = ext.map(str::parse::<LexRule>).transpose()?;
    let m = if let Some(name) = matrix.strip_prefix("catalog:") {
        catalog::get(name)?.pomcp()?.matrix.clone()
    } else {
        parse_matrix(&read(matrix)?)?
    };
    let inst = PomcpInstance::from_matrix(&m, rule)?;
    pomcp_report(&inst, as_json)
}

fn kind_name(k: EntryKind) -> &'static str {
    match k {
        EntryKind::DigraphOnly => "digraph-only",
        EntryKind::Program => "program",
        EntryKind::Pomcp => "pomcp",
    }
}

fn catalog_cmd(name: Option<&str>, as_json: bool) -> Run {
    let Some(name) = name else {
        let mut entries = Vec::new();
        for n in catalog::names() {
            let e = catalog::get(n)?;
            if as_json {
                entries.push(json!({ "name": e.name, "kind": e.kind, "provenance": e.provenance }));
            } else {
                println!("{:<18} {:<13} {}", e.name, kind_name(e.kind), e.provenance);
            }
        }
        if as_json {
            print_json(&Value::Array(entries));
        }
        return Ok(true);
    };
    let e = catalog::get(name)?;
    let body = match &e.payload {
        Payload::Digraph(d) => serialize_digraph(d),
        Payload::Program(p) => OmFile::from_program(p).to_string(),
        Payload::Pomcp(inst) => {
            let mut s = String::new();
            for i in 0..inst.matrix.nrows() {
                let row: Vec<String> = inst.matrix.row(i).iter().map(format_rational).collect();
                s += &row.join(" ");
                s.push('\n');
            }
            s
        }
    };
    if as_json {
        let mut v = json!({ "name": e.name, "kind": e.kind, "provenance": e.provenance, "content": body });
        if let Payload::Pomcp(inst) = &e.payload {
            v["extension"] = json!(inst.rule.to_string());
        }
        print_json(&v);
    } else {
        println!("# {}", e.provenance);
        if let Payload::Pomcp(inst) = &e.payload {
            println!("# extension {}", inst.rule);
        }
        print!("{body}");
    }
    Ok(true)
}

fn export(input: &str, paths: bool, cut: bool, output: Option<&PathBuf>) -> Run {
    let d = digraph_of(input)?;
    let mut highlight = DotHighlight::default();
    if paths || cut {
        let m = omp_core::holt_klee::max_independent_paths(&d)?;
        if paths {
            highlight.paths = m.paths.paths;
        }
        if cut {
            highlight.cut = m.cut.nodes;
        }
    }
    let dot = export_dot(&d, &highlight);
    match output {
        Some(path) => fs::write(path, dot).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(true)
}

/// Message and exit code for a failure.
fn describe(f: &Failure) -> (String, u8) {
    match f {
        Failure::Usage(m) => (m.clone(), 2),
        Failure::Om(e @ OmError::Internal(_)) => (e.to_string(), 3),
        Failure::Om(e) => (e.to_string(), 2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_brute_force_cap(cli.cap);
    let j = cli.json;
    let result = match &cli.command {
        Command::Validate { input } => validate(input, j),
        Command::Graph { input, format } => graph(input, *format),
        Command::HoltKlee { batch: Some(file), dim, .. } => match holt_klee_batch(file, *dim) {
            Ok(code) => return ExitCode::from(code),
            Err(f) => Err(f),
        },
        Command::HoltKlee { input: Some(input), dim, cut, paths, .. } => holt_klee(input, *dim, *cut, *paths, j),
        Command::HoltKlee { .. } => Err(Failure::Usage("holt-klee needs an input or --batch".into())),
        Command::Trace { input, ext, avoid_facet, random_ext } => {
            trace(input, ext.as_deref(), avoid_facet.as_deref(), *random_ext, cli.seed, j)
        }
        Command::Pomcp { matrix, ext } => pomcp(matrix, ext.as_deref(), j),
        Command::Catalog { name } => catalog_cmd(name.as_deref(), j),
        Command::ExportDot { input, paths, cut, output } => export(input, *paths, *cut, output.as_ref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (msg, code) = describe(&f);
            if j {
                println!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
