#![allow(dead_code)]

use lsmu::arrays::CodeArray;
use lsmu::hdesign::{GroupedDesign, LargeSetH};
use lsmu::{Design, LargeSet, Point, Violation};
use rand::Rng;

/// One point of one block moved to a value outside that block, keeping blocks distinct.
pub fn tamper_design<R: Rng>(d: &Design, rng: &mut R) -> Design {
    loop {
        let i = rng.gen_range(0..d.num_blocks());
        let j = rng.gen_range(0..d.k());
        let x = rng.gen_range(0..d.n()) as Point;
        let mut b = d.block(i).to_vec();
        if b.contains(&x) {
            continue;
        }
        b[j] = x;
        b.sort_unstable();
        if d.contains_block(&b) {
            continue;
        }
        let blocks: Vec<Vec<Point>> =
            d.blocks().enumerate().map(|(k, old)| if k == i { b.clone() } else { old.to_vec() }).collect();
        return Design::new(d.t(), d.k(), d.n(), &blocks).unwrap();
    }
}

pub fn tamper_ls<R: Rng>(ls: &LargeSet, rng: &mut R) -> LargeSet {
    let mut out = ls.clone();
    let i = rng.gen_range(0..out.systems.len());
    out.systems[i] = tamper_design(&out.systems[i], rng);
    out
}

pub fn tamper_h<R: Rng>(h: &GroupedDesign, rng: &mut R) -> GroupedDesign {
    GroupedDesign::new(h.n(), h.g(), tamper_design(h.design(), rng)).unwrap()
}

pub fn tamper_lh<R: Rng>(lh: &LargeSetH, rng: &mut R) -> LargeSetH {
    let mut out = lh.clone();
    let i = rng.gen_range(0..out.systems.len());
    out.systems[i] = tamper_h(&out.systems[i], rng);
    out
}

pub fn tamper_array<R: Rng>(a: &CodeArray, rng: &mut R) -> CodeArray {
    let mut out = a.clone();
    let c = rng.gen_range(0..out.cells.len());
    let old = out.cells[c];
    let mut x = rng.gen_range(0..a.v - 1) as Point;
    if x >= old {
        x += 1;
    }
    out.cells[c] = x;
    out
}

/// The violation points at a concrete subset, block, row or column tuple.
pub fn has_witness(v: &Violation) -> bool {
    match v {
        Violation::Coverage { subset, .. } => !subset.is_empty(),
        Violation::NotTransversal { block } => !block.is_empty(),
        Violation::System { inner, .. } => has_witness(inner),
        Violation::ArrayTuple { .. }
        | Violation::RepeatedEntry { .. }
        | Violation::EntryOutOfRange { .. }
        | Violation::LatinLine { .. }
        | Violation::NotMatching { .. }
        | Violation::EdgeCount { .. } => true,
        _ => false,
    }
}

/// Rewrites one vertex of a serialized one-factorization and returns what the parser's
/// verification reports.
pub fn tampered_factorization_violation<R: Rng>(f: &lsmu::arrays::OneFactorization, rng: &mut R) -> Violation {
    use lsmu::io::{parse_str, to_text, Artifact};
    let text = to_text(&Artifact::Factorization(f.clone()));
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let r = rng.gen_range(1..lines.len());
    let mut row: Vec<usize> = lines[r].split(' ').map(|x| x.parse().unwrap()).collect();
    let c = rng.gen_range(0..row.len());
    let mut x = rng.gen_range(0..f.n() - 1);
    if x >= row[c] {
        x += 1;
    }
    row[c] = x;
    lines[r] = row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    match parse_str(&(lines.join("\n") + "\n")) {
        Err(lsmu::Error::Unverified(v)) => v,
        other => panic!("tampered factorization parsed as {other:?}"),
    }
}
