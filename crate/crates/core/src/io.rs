//! Line-oriented text formats for oriented matroids, programs and digraphs.
//!
//! ```text
//! OM rank=2 n=3 labels=a,b,c
//! program: f=b g=c
//! cocircuits:
//! 0++
//! +0+
//! +-0
//! ```
//!
//! The body is one of `cocircuits:` (one sign string per line),
//! `chirotope: <signs>` or `matrix:` followed by `rank` rows of rationals.
//! Digraph files list `digraph <name>`, optional `dim <d>`, `node <label>`,
//! `arc <u> <v>`, `source <label>` and `sink <label>`. Blank lines and lines
//! starting with `#` are ignored in both formats.

use crate::chirotope::Chirotope;
use crate::digraph::Digraph;
use crate::error::{OmError, Result};
use crate::exact::{format_rational, parse_rational, RationalMatrix};
use crate::om::OrientedMatroid;
use crate::program::OmProgram;
use crate::sign::{canonical_set, GroundSet, SignVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmBody {
    Cocircuits(Vec<SignVector>),
    Chirotope(Chirotope),
    Matrix(RationalMatrix),
}

/// A parsed oriented matroid file, kept in the representation it was given in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmFile {
    pub ground: GroundSet,
    pub rank: usize,
    pub body: OmBody,
    /// Objective and right-hand-side labels, for program files.
    pub program: Option<(String, String)>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> OmError {
    OmError::Parse { line, column, message: message.into() }
}

/// Meaningful lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Column (1-based) of `part` within `line`, assuming it is a subslice.
fn column_of(line: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

fn parse_header(no: usize, line: &str) -> Result<(usize, usize, GroundSet)> {
    let mut words = line.split_whitespace();
    if words.next() != Some("OM") {
        return Err(perr(no, 1, "expected header `OM rank=<r> n=<n> labels=<a,b,...>`"));
    }
    let (mut rank, mut n, mut labels) = (None, None, None);
    for w in words {
        let col = column_of(line, w);
        let (key, value) = w.split_once('=').ok_or_else(|| perr(no, col, format!("expected key=value, got {w:?}")))?;
        let number = || value.parse::<usize>().map_err(|_| perr(no, col + key.len() + 1, format!("invalid number {value:?}")));
        match key {
            "rank" => rank = Some(number()?),
            "n" => n = Some(number()?),
            "labels" => labels = Some(value.split(',').map(str::to_string).collect::<Vec<_>>()),
            _ => return Err(perr(no, col, format!("unknown header key {key:?}"))),
        }
    }
    let rank = rank.ok_or_else(|| perr(no, 1, "header lacks rank="))?;
    let n = n.ok_or_else(|| perr(no, 1, "header lacks n="))?;
    let ground = match labels {
        Some(l) => GroundSet::new(l).map_err(|e| perr(no, 1, e.to_string()))?,
        None => GroundSet::numbered(n),
    };
    if ground.len() != n {
        return Err(perr(no, 1, format!("n={n} but {} labels", ground.len())));
    }
    Ok((rank, n, ground))
}

impl OmFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text).peekable();
        let (no, header) = lines.next().ok_or_else(|| perr(1, 1, "empty file"))?;
        let (rank, n, ground) = parse_header(no, header)?;
        let mut program = None;
        let mut body = None;
        while let Some((no, line)) = lines.next() {
            let trimmed = line.trim();
            if let Some(rest) = trimmed.strip_prefix("program:") {
                let mut f = None;
                let mut g = None;
                for w in rest.split_whitespace() {
                    match w.split_once('=') {
                        Some(("f", v)) => f = Some(v.to_string()),
                        Some(("g", v)) => g = Some(v.to_string()),
                        _ => return Err(perr(no, column_of(line, w), format!("expected f=<label> or g=<label>, got {w:?}"))),
                    }
                }
                let (f, g) = f.zip(g).ok_or_else(|| perr(no, 1, "program line needs f= and g="))?;
                for l in [&f, &g] {
                    ground.index_of(l).map_err(|_| perr(no, 1, format!("unknown element {l:?}")))?;
                }
                program = Some((f, g));
            } else if trimmed == "cocircuits:" {
                let mut cocircuits = Vec::new();
                while let Some(&(no, l)) = lines.peek() {
                    let t = l.trim();
                    if t.ends_with(':') || t.starts_with("program:") || t.starts_with("chirotope:") {
                        break;
                    }
                    lines.next();
                    let y: SignVector = t.parse().map_err(|e: OmError| e.at(no, column_of(l, t) - 1))?;
                    if y.len() != n {
                        return Err(perr(no, 1, format!("sign vector of length {} on {n} elements", y.len())));
                    }
                    cocircuits.push(y);
                }
                if cocircuits.is_empty() {
                    return Err(perr(no, 1, "no cocircuits listed"));
                }
                body = Some(OmBody::Cocircuits(canonical_set(cocircuits)));
            } else if let Some(rest) = trimmed.strip_prefix("chirotope:") {
                let s = rest.trim();
                let chi = Chirotope::parse(s, n, rank).map_err(|e| match e {
                    OmError::Parse { .. } => e.at(no, column_of(line, s) - 1),
                    other => perr(no, column_of(line, s), other.to_string()),
                })?;
                body = Some(OmBody::Chirotope(chi));
            } else if trimmed == "matrix:" {
                let mut rows = Vec::new();
                for _ in 0..rank {
                    let (no, l) = lines.next().ok_or_else(|| perr(no, 1, format!("matrix needs {rank} rows")))?;
                    let mut row = Vec::new();
                    for w in l.split_whitespace() {
                        row.push(parse_rational(w).map_err(|e| e.at(no, column_of(l, w) - 1))?);
                    }
                    if row.len() != n {
                        return Err(perr(no, 1, format!("matrix row has {} entries, expected {n}", row.len())));
                    }
                    rows.push(row);
                }
                body = Some(OmBody::Matrix(RationalMatrix::from_rows(rows)?));
            } else {
                return Err(perr(no, column_of(line, trimmed), format!("unexpected line {trimmed:?}")));
            }
        }
        let body = body.ok_or_else(|| perr(no, 1, "missing cocircuits:, chirotope: or matrix: section"))?;
        Ok(OmFile { ground, rank, body, program })
    }

    pub fn from_om(om: &OrientedMatroid) -> Self {
        let body = if let Some(m) = om.realization() {
            OmBody::Matrix(m.clone())
        } else if let Some(chi) = om.chirotope() {
            OmBody::Chirotope(chi.clone())
        } else {
            OmBody::Cocircuits(om.cocircuits().to_vec())
        };
        OmFile { ground: om.ground().clone(), rank: om.rank(), body, program: None }
    }

    pub fn from_program(p: &OmProgram) -> Self {
        let mut file = OmFile::from_om(p.om());
        file.program = Some((p.f_label().to_string(), p.g_label().to_string()));
        file
    }

    pub fn build(&self) -> Result<OrientedMatroid> {
        match &self.body {
            OmBody::Cocircuits(c) => OrientedMatroid::from_cocircuits(self.ground.clone(), self.rank, c.clone()),
            OmBody::Chirotope(chi) => OrientedMatroid::from_chirotope(self.ground.clone(), chi.clone()),
            OmBody::Matrix(m) => {
                if m.rank() != self.rank {
                    return Err(OmError::MatrixRank { expected: self.rank, actual: m.rank() });
                }
                OrientedMatroid::from_matrix(self.ground.clone(), m.clone())
            }
        }
    }

    pub fn build_program(&self) -> Result<OmProgram> {
        let (f, g) = self
            .program
            .as_ref()
            .ok_or_else(|| OmError::InvalidProgram("file has no `program: f=<label> g=<label>` line".into()))?;
        OmProgram::new(self.build()?, f, g)
    }
}

impl std::fmt::Display for OmFile {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "OM rank={} n={} labels={}", self.rank, self.ground.len(), self.ground.labels().join(","))?;
        if let Some((f, g)) = &self.program {
            writeln!(out, "program: f={f} g={g}")?;
        }
        match &self.body {
            OmBody::Cocircuits(c) => {
                writeln!(out, "cocircuits:")?;
                for y in c {
                    writeln!(out, "{y}")?;
                }
            }
            OmBody::Chirotope(chi) => writeln!(out, "chirotope: {chi}")?,
            OmBody::Matrix(m) => {
                writeln!(out, "matrix:")?;
                for i in 0..m.nrows() {
                    let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
        }
        Ok(())
    }
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut name = None;
    let mut dim = None;
    let mut nodes: Vec<(usize, String)> = Vec::new();
    let mut arcs: Vec<(usize, usize, String, String)> = Vec::new();
    let mut source = None;
    let mut sink = None;
    for (no, line) in content_lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        let col = |k: usize| column_of(line, words[k]);
        let expect = |count: usize| {
            if words.len() == count {
                Ok(())
            } else {
                Err(perr(no, 1, format!("`{}` takes {} argument(s)", words[0], count - 1)))
            }
        };
        match words[0] {
            "digraph" => {
                expect(2)?;
                name = Some(words[1].to_string());
            }
            "dim" => {
                expect(2)?;
                dim = Some(words[1].parse::<usize>().map_err(|_| perr(no, col(1), "invalid dimension"))?);
            }
            "node" => {
                expect(2)?;
                nodes.push((no, words[1].to_string()));
            }
            "arc" => {
                expect(3)?;
                arcs.push((no, col(1), words[1].to_string(), words[2].to_string()));
            }
            "source" => {
                expect(2)?;
                source = Some((no, col(1), words[1].to_string()));
            }
            "sink" => {
                expect(2)?;
                sink = Some((no, col(1), words[1].to_string()));
            }
            other => return Err(perr(no, col(0), format!("unknown directive {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| perr(1, 1, "missing `digraph <name>` line"))?;
    let mut d = Digraph::new(&name, nodes.iter().map(|(_, l)| l.clone())).map_err(|e| {
        let line = nodes.first().map_or(1, |n| n.0);
        perr(line, 1, e.to_string())
    })?;
    for (no, col, u, v) in &arcs {
        d.add_arc_labels(u, v).map_err(|e| perr(*no, *col, e.to_string()))?;
    }
    d.set_dim(dim);
    match (source, sink) {
        (Some((sno, scol, s)), Some((tno, tcol, t))) => {
            let si = d.index_of(&s).map_err(|e| perr(sno, scol, e.to_string()))?;
            let ti = d.index_of(&t).map_err(|e| perr(tno, tcol, e.to_string()))?;
            d.set_source_sink(si, ti).map_err(|e| perr(sno, scol, e.to_string()))?;
        }
        (None, None) => {}
        _ => return Err(perr(1, 1, "declare both source and sink or neither")),
    }
    Ok(d)
}

pub fn serialize_digraph(d: &Digraph) -> String {
    let mut out = format!("digraph {}\n", d.name());
    if let Some(dim) = d.dim() {
        out += &format!("dim {dim}\n");
    }
    for l in d.labels() {
        out += &format!("node {l}\n");
    }
    for &(u, v) in d.arcs() {
        out += &format!("arc {} {}\n", d.label(u), d.label(v));
    }
    if let (Some(s), Some(t)) = (d.source(), d.sink()) {
        out += &format!("source {}\nsink {}\n", d.label(s), d.label(t));
    }
    out
}
