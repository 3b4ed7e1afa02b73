//! Line-oriented text formats for designs, large sets, H-designs and arrays.
//!
//! ```text
//! DESIGN <t> <k> <n> <blockcount>
//! LARGESET <t> <k> <n> <mu> <count>      then SYSTEM <idx> before each member
//! HDESIGN <n> <g> <k> <t> <blockcount>
//! LARGESETH <n> <g> <k> <t> <count>      then SYSTEM <idx> before each member
//! ARRAY <OA|PA|OD|LATIN> <t-or-lambda> <strength-or-0> <v> <rows> <cols>
//! FACTORIZATION <n>                      then n − 1 lines of n/2 pairs a b
//! ```
//!
//! Blocks are ascending integers, one per line. `#` starts a comment.
//! Lenient parsing accepts fewer blocks, members or rows than the header
//! announces, so a truncated file reaches the verifier instead of failing here.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::arrays::{ArrayKind, CodeArray, OneFactorization};
use crate::designcore::{Design, LargeSet, Point};
use crate::error::{Error, Result};
use crate::hdesign::{GroupedDesign, LargeSetH};

/// Anything the formats can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Design(Design),
    LargeSet(LargeSet),
    HDesign(GroupedDesign),
    LargeSetH(LargeSetH),
    Array(CodeArray),
    Factorization(OneFactorization),
}

impl Artifact {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Artifact::Design(_) => "design",
            Artifact::LargeSet(_) => "ls",
            Artifact::HDesign(_) => "h",
            Artifact::LargeSetH(_) => "lh",
            Artifact::Array(_) => "array",
            Artifact::Factorization(_) => "factorization",
        }
    }
}

fn write_blocks<W: Write>(w: &mut W, d: &Design) -> std::io::Result<()> {
    let mut line = String::with_capacity(8 * d.k());
    for b in d.blocks() {
        line.clear();
        for (i, x) in b.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&x.to_string());
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_artifact<W: Write>(w: &mut W, a: &Artifact) -> Result<()> {
    match a {
        Artifact::Design(d) => {
            writeln!(w, "DESIGN {} {} {} {}", d.t(), d.k(), d.n(), d.num_blocks())?;
            write_blocks(w, d)?;
        }
        Artifact::LargeSet(ls) => {
            writeln!(w, "LARGESET {} {} {} {} {}", ls.t, ls.k, ls.n, ls.mu, ls.systems.len())?;
            for (i, s) in ls.systems.iter().enumerate() {
                writeln!(w, "SYSTEM {i}")?;
                write_blocks(w, s)?;
            }
        }
        Artifact::HDesign(h) => {
            writeln!(w, "HDESIGN {} {} {} {} {}", h.n(), h.g(), h.k(), h.t(), h.num_blocks())?;
            write_blocks(w, h.design())?;
        }
        Artifact::LargeSetH(lh) => {
            writeln!(w, "LARGESETH {} {} {} {} {}", lh.n, lh.g, lh.k, lh.t, lh.systems.len())?;
            for (i, s) in lh.systems.iter().enumerate() {
                writeln!(w, "SYSTEM {i}")?;
                write_blocks(w, s.design())?;
            }
        }
        Artifact::Array(a) => {
            let (tag, p1, p2) = match a.kind {
                ArrayKind::Oa { strength } => ("OA", strength as u64, 0),
                ArrayKind::Pa { lambda, strength } => ("PA", lambda, strength),
                ArrayKind::Od { lambda, strength } => ("OD", lambda, strength),
                ArrayKind::Latin => ("LATIN", 0, 0),
            };
            writeln!(w, "ARRAY {tag} {p1} {p2} {} {} {}", a.v, a.rows, a.cols)?;
            for r in a.row_iter() {
                let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                writeln!(w, "{}", row.join(" "))?;
            }
        }
        Artifact::Factorization(f) => {
            writeln!(w, "FACTORIZATION {}", f.n())?;
            for fac in f.factors() {
                let row: Vec<String> = fac.iter().map(|(a, b)| format!("{a} {b}")).collect();
                writeln!(w, "{}", row.join(" "))?;
            }
        }
    }
    Ok(())
}

pub fn to_text(a: &Artifact) -> String {
    let mut buf = Vec::new();
    write_artifact(&mut buf, a).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

pub fn write_file(path: impl AsRef<Path>, a: &Artifact) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_artifact(&mut w, a)?;
    w.flush()?;
    Ok(())
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Artifact> {
    parse_reader(BufReader::new(File::open(path)?))
}

pub fn read_file_lenient(path: impl AsRef<Path>) -> Result<Artifact> {
    parse_with(BufReader::new(File::open(path)?), false)
}

pub fn parse_str(text: &str) -> Result<Artifact> {
    parse_reader(text.as_bytes())
}

pub fn parse_str_lenient(text: &str) -> Result<Artifact> {
    parse_with(text.as_bytes(), false)
}

pub fn parse_reader<R: BufRead>(reader: R) -> Result<Artifact> {
    parse_with(reader, true)
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
    peeked: Option<(usize, String)>,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<Option<(usize, String)>> {
        if let Some(p) = self.peeked.take() {
            return Ok(Some(p));
        }
        for line in self.inner.by_ref() {
            let line = line?;
            self.number += 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Ok(Some((self.number, body.to_string())));
            }
        }
        Ok(None)
    }

    fn peek(&mut self) -> Result<Option<&(usize, String)>> {
        if self.peeked.is_none() {
            self.peeked = self.next_line()?;
        }
        Ok(self.peeked.as_ref())
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, String)> {
        self.next_line()?.ok_or_else(|| Error::Parse {
            line: self.number + 1,
            msg: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_ascii_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| perr(line, format!("not a non-negative integer: {tok:?}"))))
        .collect()
}

fn header_fields<const N: usize>(line: usize, rest: &[&str]) -> Result<[usize; N]> {
    if rest.len() != N {
        return Err(perr(line, format!("header needs {N} fields, found {}", rest.len())));
    }
    let mut out = [0usize; N];
    for (o, tok) in out.iter_mut().zip(rest) {
        *o = tok.parse().map_err(|_| perr(line, format!("bad header field {tok:?}")))?;
    }
    Ok(out)
}

/// Block lines up to the next SYSTEM header or end of input, each `k` strictly
/// ascending points below `n`; `count`, when given, must match.
fn read_blocks<R: BufRead>(
    lines: &mut Lines<R>,
    t: usize,
    k: usize,
    n: usize,
    count: Option<usize>,
    start: usize,
) -> Result<Design> {
    let mut flat: Vec<Point> = Vec::with_capacity(count.unwrap_or(0) * k);
    let mut read = 0usize;
    while let Some((ln, text)) = lines.peek()? {
        if text.starts_with("SYSTEM") {
            break;
        }
        let ln = *ln;
        if count == Some(read) {
            return Err(perr(ln, format!("block count mismatch: more than {read} blocks")));
        }
        let b = numbers(ln, text)?;
        if b.len() != k {
            return Err(perr(ln, format!("block has {} points, expected {k}", b.len())));
        }
        if let Some(&x) = b.iter().find(|&&x| x as usize >= n) {
            return Err(perr(ln, format!("point {x} outside [0, {n})")));
        }
        if b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(perr(ln, "block is not strictly ascending"));
        }
        flat.extend(b.iter().map(|&x| x as Point));
        lines.peeked = None;
        read += 1;
    }
    if let Some(c) = count.filter(|&c| c != read) {
        return Err(perr(lines.number, format!("block count mismatch: expected {c} blocks, found {read}")));
    }
    Design::from_flat(t, k, n, flat).map_err(|e| perr(start, e.to_string()))
}

fn system_header<R: BufRead>(lines: &mut Lines<R>, idx: usize) -> Result<()> {
    let (ln, text) = lines.expect_line("a SYSTEM header")?;
    let mut it = text.split_ascii_whitespace();
    if it.next() != Some("SYSTEM") {
        return Err(perr(ln, format!("expected SYSTEM {idx}")));
    }
    let got: Option<usize> = it.next().and_then(|x| x.parse().ok());
    if got != Some(idx) || it.next().is_some() {
        return Err(perr(ln, format!("expected SYSTEM {idx}, found {text:?}")));
    }
    Ok(())
}

fn parse_with<R: BufRead>(reader: R, strict: bool) -> Result<Artifact> {
    let mut lines = Lines { inner: reader.lines(), number: 0, peeked: None };
    let (hl, header) = lines.expect_line("a header")?;
    let fields: Vec<&str> = header.split_ascii_whitespace().collect();
    let out = match fields[0] {
        "DESIGN" => {
            let [t, k, n, count] = header_fields(hl, &fields[1..])?;
            Artifact::Design(read_blocks(&mut lines, t, k, n, strict.then_some(count), hl)?)
        }
        "LARGESET" => {
            let [t, k, n, mu, count] = header_fields(hl, &fields[1..])?;
            let mut systems = Vec::with_capacity(count);
            for i in 0..count {
                if !strict && lines.peek()?.is_none() {
                    break;
                }
                system_header(&mut lines, i)?;
                systems.push(read_blocks(&mut lines, t, k, n, None, hl)?);
            }
            Artifact::LargeSet(LargeSet::new(t, k, n, mu as u64, systems).map_err(|e| perr(hl, e.to_string()))?)
        }
        "HDESIGN" => {
            let [n, g, k, t, count] = header_fields(hl, &fields[1..])?;
            let d = read_blocks(&mut lines, t, k, n * g, strict.then_some(count), hl)?;
            Artifact::HDesign(GroupedDesign::new(n, g, d).map_err(|e| perr(hl, e.to_string()))?)
        }
        "LARGESETH" => {
            let [n, g, k, t, count] = header_fields(hl, &fields[1..])?;
            let mut systems = Vec::with_capacity(count);
            for i in 0..count {
                if !strict && lines.peek()?.is_none() {
                    break;
                }
                system_header(&mut lines, i)?;
                let d = read_blocks(&mut lines, t, k, n * g, None, hl)?;
                systems.push(GroupedDesign::new(n, g, d).map_err(|e| perr(hl, e.to_string()))?);
            }
            Artifact::LargeSetH(LargeSetH::new(n, g, k, t, systems).map_err(|e| perr(hl, e.to_string()))?)
        }
        "ARRAY" => {
            if fields.len() != 7 {
                return Err(perr(hl, "ARRAY header needs 6 fields"));
            }
            let [p1, p2, v, rows, cols] = header_fields(hl, &fields[2..])?;
            let kind = match fields[1] {
                "OA" if p2 == 0 => ArrayKind::Oa { strength: p1 },
                "PA" => ArrayKind::Pa { lambda: p1 as u64, strength: p2 },
                "OD" => ArrayKind::Od { lambda: p1 as u64, strength: p2 },
                "LATIN" if p1 == 0 && p2 == 0 => ArrayKind::Latin,
                other => return Err(perr(hl, format!("unknown array kind or parameters: {other} {p1} {p2}"))),
            };
            let mut cells = Vec::with_capacity(rows * cols);
            for _ in 0..rows {
                if !strict && lines.peek()?.is_none() {
                    break;
                }
                let (ln, text) = lines.expect_line("an array row")?;
                let r = numbers(ln, &text)?;
                if r.len() != cols {
                    return Err(perr(ln, format!("row has {} entries, expected {cols}", r.len())));
                }
                if let Some(&x) = r.iter().find(|&&x| x as usize >= v) {
                    return Err(perr(ln, format!("entry {x} outside [0, {v})")));
                }
                cells.extend(r.iter().map(|&x| x as Point));
            }
            if cols == 0 {
                return Err(perr(hl, "array with no columns"));
            }
            Artifact::Array(CodeArray::new(kind, v, cols, cells).map_err(|e| perr(hl, e.to_string()))?)
        }
        "FACTORIZATION" => {
            let [n] = header_fields(hl, &fields[1..])?;
            let mut factors = Vec::with_capacity(n.saturating_sub(1));
            for _ in 1..n {
                if !strict && lines.peek()?.is_none() {
                    break;
                }
                let (ln, text) = lines.expect_line("a factor")?;
                let r = numbers(ln, &text)?;
                if r.len() != n {
                    return Err(perr(ln, format!("factor has {} entries, expected {n}", r.len())));
                }
                if let Some(&x) = r.iter().find(|&&x| x as usize >= n) {
                    return Err(perr(ln, format!("vertex {x} outside [0, {n})")));
                }
                factors.push(r.chunks_exact(2).map(|p| (p[0] as Point, p[1] as Point)).collect());
            }
            Artifact::Factorization(OneFactorization::new(n, factors)?)
        }
        other => return Err(perr(hl, format!("unknown header {other:?}"))),
    };
    if let Some((ln, text)) = lines.next_line()? {
        return Err(perr(ln, format!("trailing content {text:?}")));
    }
    Ok(out)
}
