use std::fs;
use std::path::PathBuf;

use omp_core::dot::{export_dot, DotHighlight};
use omp_core::holt_klee::max_independent_paths;
use omp_core::io::{parse_digraph, serialize_digraph, OmFile};
use omp_core::{catalog, OmError};

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut paths: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
}

fn canonical(path: &PathBuf) -> String {
    let text = fs::read_to_string(path).unwrap();
    if path.extension().unwrap() == "dg" {
        serialize_digraph(&parse_digraph(&text).unwrap())
    } else {
        OmFile::parse(&text).unwrap().to_string()
    }
}

#[test]
fn fixtures_round_trip() {
    let paths = fixtures();
    assert!(paths.len() >= 10);
    for path in &paths {
        let once = canonical(path);
        let text = fs::read_to_string(path).unwrap();
        if !text.starts_with('#') {
            assert_eq!(once, text, "{} is not stored canonically", path.display());
        }
        let dir = std::env::temp_dir().join("omp-io-roundtrip");
        fs::create_dir_all(&dir).unwrap();
        let copy = dir.join(path.file_name().unwrap());
        fs::write(&copy, &once).unwrap();
        assert_eq!(canonical(&copy), once, "{}", path.display());
    }
}

#[test]
fn fixture_oms_build_and_satisfy_axioms() {
    for path in fixtures().iter().filter(|p| p.extension().unwrap() != "dg") {
        let file = OmFile::parse(&fs::read_to_string(path).unwrap()).unwrap();
        let om = file.build().unwrap();
        assert!(om.without_accelerators().verify_axioms().unwrap().passed(), "{}", path.display());
        if file.program.is_some() {
            assert!(file.build_program().unwrap().validate().unwrap().is_valid(), "{}", path.display());
        }
    }
}

#[test]
fn matrix_and_cocircuit_forms_agree() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for name in ["cube3", "prism3"] {
        let read = |f: &str| OmFile::parse(&fs::read_to_string(dir.join(f)).unwrap()).unwrap().build().unwrap();
        let a = read(&format!("{name}.omp"));
        let b = read(&format!("{name}-cocircuits.omp"));
        assert_eq!(a.cocircuits(), b.cocircuits());
    }
}

#[test]
fn fixture_digraphs_match_catalog() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for name in ["fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle"] {
        let d = parse_digraph(&fs::read_to_string(dir.join(format!("{name}.dg"))).unwrap()).unwrap();
        let e = catalog::get(name).unwrap();
        assert_eq!(serialize_digraph(&d), serialize_digraph(e.digraph().unwrap()));
    }
}

#[test]
fn malformed_files_report_positions() {
    let cases = [
        ("OM rank=2 n=3 labels=a,b,c\ncocircuits:\n+0+\n0+*\n", 4, 3),
        ("OM rank=2 n=3 labels=a,b\ncocircuits:\n+0+\n", 1, 1),
        ("OM rank=2 n=2 labels=a,b\nmatrix:\n1 0\n0 1/x\n", 4, 3),
        ("OM rank=2 n=2 labels=a,b\nbogus\n", 2, 1),
        ("OM rank=x n=2\n", 1, 9),
    ];
    for (text, line, column) in cases {
        match OmFile::parse(text) {
            Err(OmError::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn prism_dot_has_nine_arcs() {
    let d = catalog::fig1_prism();
    let dot = export_dot(&d, &DotHighlight::default());
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 9);
}

#[test]
fn dot_output_parses() {
    for name in ["fig1-prism", "fig1-cyclic", "fig1-cube", "fig2-cycle"] {
        let d = catalog::get(name).unwrap().digraph().unwrap().clone();
        let m = max_independent_paths(&d).unwrap();
        let highlight = DotHighlight { paths: m.paths.paths.clone(), cut: m.cut.nodes.clone() };
        for h in [DotHighlight::default(), highlight] {
            let dot = export_dot(&d, &h);
            graphviz_rust::parse(&dot).unwrap_or_else(|e| panic!("{name}: {e}\n{dot}"));
        }
    }
    let pd = catalog::cube3_program().orient().unwrap();
    let dot = export_dot(&pd.digraph, &DotHighlight::default());
    graphviz_rust::parse(&dot).unwrap_or_else(|e| panic!("{e}\n{dot}"));
}
