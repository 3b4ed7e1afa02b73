//! Orthogonal arrays, perpendicular arrays, ordered designs, Latin squares and
//! one-factorizations: generators plus exhaustive verifiers.

use rayon::prelude::*;

use crate::designcore::{binomial, check_permutation, position_subsets, Point, SubsetRanker};
use crate::error::{invalid, Result, Violation};
use crate::gf::GaloisField;

/// What a [`CodeArray`] claims to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayKind {
    /// Every `strength` columns carry each ordered tuple over `Z_v` once.
    Oa {
        strength: usize,
    },
    /// Every `strength` columns carry each `strength`-subset exactly `lambda` times.
    Pa {
        lambda: u64,
        strength: usize,
    },
    /// Every `strength` columns carry each ordered tuple of distinct entries `lambda` times.
    Od {
        lambda: u64,
        strength: usize,
    },
    Latin,
}

/// A `rows × cols` matrix over `Z_v`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeArray {
    pub kind: ArrayKind,
    pub v: usize,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Point>,
}

impl CodeArray {
    pub fn new(kind: ArrayKind, v: usize, cols: usize, cells: Vec<Point>) -> Result<Self> {
        if cols == 0 || !cells.len().is_multiple_of(cols) {
            return Err(invalid(format!("{} cells do not fill rows of {cols}", cells.len())));
        }
        Ok(CodeArray { kind, v, rows: cells.len() / cols, cols, cells })
    }

    pub fn from_rows<R: AsRef<[Point]>>(kind: ArrayKind, v: usize, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(invalid("ragged rows"));
        }
        let cells = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(kind, v, cols, cells)
    }

    pub fn row(&self, i: usize) -> &[Point] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> std::slice::ChunksExact<'_, Point> {
        self.cells.chunks_exact(self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Point {
        self.cells[r * self.cols + c]
    }

    /// Index with which each `strength`-subset is covered when the rows are read
    /// as a permutation set: λ for a PA, λ·k! for an OD.
    pub fn homogeneous_index(&self) -> Option<(u64, usize)> {
        match self.kind {
            ArrayKind::Pa { lambda, strength } => Some((lambda, strength)),
            ArrayKind::Od { lambda, strength } => Some((lambda * (1..=strength as u64).product::<u64>(), strength)),
            _ => None,
        }
    }

    /// Errors unless every row is a permutation of `[0, v)` with `cols == v`.
    pub fn check_permutation_rows(&self) -> Result<()> {
        if self.cols != self.v {
            return Err(invalid(format!("{} columns over {} symbols: rows are not permutations", self.cols, self.v)));
        }
        self.row_iter().try_for_each(|r| check_permutation(r, self.v))
    }
}

/// Exhaustively checks the kind-specific invariant.
pub fn verify_array(a: &CodeArray) -> Result<(), Violation> {
    if a.cells.len() != a.rows * a.cols {
        return Err(Violation::Shape(format!("{} cells for {}x{}", a.cells.len(), a.rows, a.cols)));
    }
    for (i, &x) in a.cells.iter().enumerate() {
        if x as usize >= a.v {
            return Err(Violation::EntryOutOfRange { row: i / a.cols, col: i % a.cols, value: x });
        }
    }
    match a.kind {
        ArrayKind::Oa { strength } => verify_oa(a, strength),
        ArrayKind::Pa { lambda, strength } => verify_pa(a, lambda, strength),
        ArrayKind::Od { lambda, strength } => verify_od(a, lambda, strength),
        ArrayKind::Latin => verify_latin(a),
    }
}

fn shape_check(a: &CodeArray, strength: usize, expected_rows: u64) -> Result<(), Violation> {
    if strength == 0 || strength > a.cols {
        return Err(Violation::Shape(format!("strength {strength} with {} columns", a.cols)));
    }
    if a.rows as u64 != expected_rows {
        return Err(Violation::Shape(format!("{} rows, expected {expected_rows}", a.rows)));
    }
    Ok(())
}

fn distinct_rows(a: &CodeArray) -> Result<(), Violation> {
    let mut seen = vec![usize::MAX; a.v];
    for (r, row) in a.row_iter().enumerate() {
        for &x in row {
            if seen[x as usize] == r {
                return Err(Violation::RepeatedEntry { row: r });
            }
            seen[x as usize] = r;
        }
    }
    Ok(())
}

/// Counts a per-row key over every column subset of size `strength`;
/// reports the first column subset whose counts deviate from `expected`.
fn check_column_subsets<K, D>(
    a: &CodeArray,
    strength: usize,
    slots: usize,
    key: K,
    expected: D,
    decode: impl Fn(usize) -> Vec<Point> + Sync,
) -> Result<(), Violation>
where
    K: Fn(&[Point]) -> usize + Sync,
    D: Fn(usize) -> u64 + Sync,
{
    let subsets = position_subsets(a.cols, strength);
    let found = subsets.par_iter().find_map_first(|cols| {
        let mut counts = vec![0u64; slots];
        let mut buf = vec![0 as Point; strength];
        for row in a.row_iter() {
            for (b, &c) in buf.iter_mut().zip(cols) {
                *b = row[c];
            }
            counts[key(&buf)] += 1;
        }
        counts.iter().enumerate().find(|&(s, &c)| c != expected(s)).map(|(s, &c)| Violation::ArrayTuple {
            columns: cols.clone(),
            tuple: decode(s),
            count: c,
            expected: expected(s),
        })
    });
    found.map_or(Ok(()), Err)
}

fn tuple_index(buf: &[Point], v: usize) -> usize {
    buf.iter().fold(0, |acc, &x| acc * v + x as usize)
}

fn tuple_decode(mut s: usize, v: usize, len: usize) -> Vec<Point> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (s % v) as Point;
        s /= v;
    }
    out
}

fn verify_oa(a: &CodeArray, t: usize) -> Result<(), Violation> {
    let v = a.v;
    shape_check(a, t, (v as u64).pow(t as u32))?;
    let slots = v.pow(t as u32);
    check_column_subsets(a, t, slots, |b| tuple_index(b, v), |_| 1, |s| tuple_decode(s, v, t))
}

fn verify_pa(a: &CodeArray, lambda: u64, k: usize) -> Result<(), Violation> {
    shape_check(a, k, lambda * binomial(a.v as u64, k as u64))?;
    distinct_rows(a)?;
    let ranker = SubsetRanker::new(k, a.v);
    let slots = ranker.count() as usize;
    check_column_subsets(
        a,
        k,
        slots,
        |b| {
            let mut s = b.to_vec();
            s.sort_unstable();
            ranker.rank_sorted(&s)
        },
        |_| lambda,
        |s| crate::designcore::unrank_subset(s as u64, k, a.v).unwrap_or_default(),
    )
}

fn verify_od(a: &CodeArray, lambda: u64, k: usize) -> Result<(), Violation> {
    let perms: u64 = (1..=k as u64).product();
    shape_check(a, k, lambda * binomial(a.v as u64, k as u64) * perms)?;
    distinct_rows(a)?;
    let v = a.v;
    let slots = v.pow(k as u32);
    check_column_subsets(
        a,
        k,
        slots,
        |b| tuple_index(b, v),
        |s| {
            let t = tuple_decode(s, v, k);
            let mut d = t.clone();
            d.sort_unstable();
            d.dedup();
            if d.len() == k {
                lambda
            } else {
                0
            }
        },
        |s| tuple_decode(s, v, k),
    )
}

fn verify_latin(a: &CodeArray) -> Result<(), Violation> {
    if a.rows != a.v || a.cols != a.v {
        return Err(Violation::Shape(format!("{}x{} Latin square over {} symbols", a.rows, a.cols, a.v)));
    }
    for r in 0..a.rows {
        if check_permutation(a.row(r), a.v).is_err() {
            return Err(Violation::LatinLine { line: "row", index: r });
        }
    }
    for c in 0..a.cols {
        let col: Vec<Point> = (0..a.rows).map(|r| a.get(r, c)).collect();
        if check_permutation(&col, a.v).is_err() {
            return Err(Violation::LatinLine { line: "column", index: c });
        }
    }
    Ok(())
}

/// All `t`-tuples over `Z_g` summing to 0 mod `g`, lexicographic: an OA of
/// strength `t − 1` with `t` columns.
pub fn zero_sum_oa(t: usize, g: usize) -> Result<CodeArray> {
    if t < 2 || g < 2 {
        return Err(invalid(format!("zero-sum OA needs t >= 2 and g >= 2, got t={t} g={g}")));
    }
    let mut cells = Vec::new();
    for s in 0..g.pow(t as u32) {
        let tuple = tuple_decode(s, g, t);
        if tuple.iter().map(|&x| x as usize).sum::<usize>() % g == 0 {
            cells.extend(tuple);
        }
    }
    CodeArray::new(ArrayKind::Oa { strength: t - 1 }, g, t, cells)
}

/// Translates of a verified OA(t,k,v) by every word whose last `t` coordinates
/// vanish; the translates partition `(Z_v)^k`.
pub fn loa_from_oa(a: &CodeArray) -> Result<Vec<CodeArray>> {
    let ArrayKind::Oa { strength } = a.kind else {
        return Err(invalid("large set of OAs needs an OA input"));
    };
    verify_array(a)?;
    let (v, k) = (a.v, a.cols);
    let free = k - strength;
    let out = (0..v.pow(free as u32))
        .map(|s| {
            let mut shift = tuple_decode(s, v, free);
            shift.resize(k, 0);
            let cells =
                a.cells.iter().enumerate().map(|(i, &x)| ((x as usize + shift[i % k] as usize) % v) as Point).collect();
            CodeArray { cells, ..a.clone() }
        })
        .collect();
    Ok(out)
}

/// Rows are the maps `x ↦ a·x + b` over GF(q), `a ≠ 0`, ordered by `(a, b)`:
/// a sharply 2-transitive set, hence a PA_2(2,q,q).
pub fn agl_pa(q: usize) -> Result<CodeArray> {
    let f = GaloisField::new(q)?;
    affine_rows(&f, &(1..q).collect::<Vec<_>>(), 2)
}

/// Affine maps with `a` restricted to nonzero squares; a PA_1(2,q,q) for q ≡ 3 (mod 4).
pub fn half_agl_pa(q: usize) -> Result<CodeArray> {
    let f = GaloisField::new(q)?;
    if q % 4 != 3 {
        return Err(invalid(format!("square-multiplier construction needs q ≡ 3 mod 4, got {q}")));
    }
    affine_rows(&f, &f.nonzero_squares(), 1)
}

fn affine_rows(f: &GaloisField, multipliers: &[usize], lambda: u64) -> Result<CodeArray> {
    let q = f.order();
    let mut cells = Vec::with_capacity(multipliers.len() * q * q);
    for &a in multipliers {
        for b in 0..q {
            cells.extend((0..q).map(|x| f.add(f.mul(a, x), b) as Point));
        }
    }
    CodeArray::new(ArrayKind::Pa { lambda, strength: 2 }, q, q, cells)
}

/// Concatenates a verified PA with itself `m` times.
pub fn pa_repeat(p: &CodeArray, m: usize) -> Result<CodeArray> {
    if m < 1 {
        return Err(invalid("repeat count must be at least 1"));
    }
    let ArrayKind::Pa { lambda, strength } = p.kind else {
        return Err(invalid("pa_repeat needs a PA"));
    };
    verify_array(p)?;
    let cells = p.cells.repeat(m);
    CodeArray::new(ArrayKind::Pa { lambda: lambda * m as u64, strength }, p.v, p.cols, cells)
}

/// `M(i, j) = (i + j) mod v`.
pub fn cyclic_latin(v: usize) -> Result<CodeArray> {
    if v < 1 {
        return Err(invalid("Latin square order must be at least 1"));
    }
    let cells = (0..v).flat_map(|i| (0..v).map(move |j| ((i + j) % v) as Point)).collect();
    CodeArray::new(ArrayKind::Latin, v, v, cells)
}

/// `n − 1` perfect matchings of `K_n` partitioning its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFactorization {
    n: usize,
    factors: Vec<Vec<(Point, Point)>>,
}

impl OneFactorization {
    /// Pairs are normalized to `(min, max)`; the result is verified.
    pub fn new(n: usize, factors: Vec<Vec<(Point, Point)>>) -> Result<Self> {
        let factors = factors.into_iter().map(|f| f.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()).collect();
        let of = OneFactorization { n, factors };
        of.verify()?;
        Ok(of)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Vec<(Point, Point)>] {
        &self.factors
    }

    pub fn factor(&self, r: usize) -> &[(Point, Point)] {
        &self.factors[r]
    }

    pub fn verify(&self) -> Result<(), Violation> {
        let n = self.n;
        if n < 2 || !n.is_multiple_of(2) || self.factors.len() != n - 1 {
            return Err(Violation::Parameters(format!("{} factors on {n} vertices", self.factors.len())));
        }
        let mut edges = vec![0u64; n * n];
        for (i, f) in self.factors.iter().enumerate() {
            let mut hit = vec![false; n];
            for &(a, b) in f {
                let (a, b) = (a as usize, b as usize);
                if a >= n || b >= n || a == b || hit[a] || hit[b] {
                    return Err(Violation::NotMatching { factor: i });
                }
                hit[a] = true;
                hit[b] = true;
                edges[a * n + b] += 1;
            }
            if hit.iter().any(|h| !h) {
                return Err(Violation::NotMatching { factor: i });
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if edges[a * n + b] != 1 {
                    return Err(Violation::EdgeCount { edge: (a as Point, b as Point), count: edges[a * n + b] });
                }
            }
        }
        Ok(())
    }
}

/// Rotation construction: `F_r = {{n−1, r}} ∪ {{r+i, r−i} mod (n−1) : 1 ≤ i < n/2}`.
pub fn circle_one_factorization(n: usize) -> Result<OneFactorization> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid(format!("one-factorization needs even n >= 2, got {n}")));
    }
    let m = n - 1;
    let factors = (0..m)
        .map(|r| {
            let mut f = vec![(m as Point, r as Point)];
            for i in 1..n / 2 {
                f.push((((r + i) % m) as Point, ((r + m - i) % m) as Point));
            }
            f
        })
        .collect();
    OneFactorization::new(n, factors)
}
