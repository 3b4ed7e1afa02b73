//! Doubling, quadrupling and power-of-two recursions for LS(3,4,n;μ).
//!
//! Product points `(a, ℓ)` of `Z_n × L` use the level-major encoding `ℓ·n + a`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arrays::{circle_one_factorization, cyclic_latin, verify_array, ArrayKind, CodeArray, OneFactorization};
use crate::designcore::{classify_flat, coverage_unchecked, Configuration, Design, LargeSet, Point, SubsetRanker};
use crate::error::{invalid, Error, Result, Violation};
use crate::lsops::{verify_ls, verify_steiner};

#[inline]
fn pt(a: usize, level: usize, n: usize) -> Point {
    (level * n + a) as Point
}

fn sqs(n: usize, flat: Vec<Point>) -> Result<Design> {
    Design::from_flat(3, 4, n, flat)
}

fn check_sqs_set(ls: &LargeSet) -> Result<()> {
    if (ls.t, ls.k) != (3, 4) {
        return Err(invalid(format!("expected an LS(3,4,n;μ), got LS({},{},{};{})", ls.t, ls.k, ls.n, ls.mu)));
    }
    Ok(())
}

/// Rows of a verified PA_γ(2,n,n), returned with γ.
fn pair_pa_rows(p: &CodeArray, n: usize) -> Result<(u64, Vec<&[Point]>)> {
    let ArrayKind::Pa { lambda, strength: 2 } = p.kind else {
        return Err(invalid("expected a PA of strength 2"));
    };
    if p.v != n {
        return Err(Error::Mismatch(format!("PA over {} symbols, design has {n} points", p.v)));
    }
    verify_array(p)?;
    p.check_permutation_rows()?;
    Ok((lambda, p.row_iter().collect()))
}

fn inverse(perm: &[Point]) -> Vec<Point> {
    let mut inv = vec![0; perm.len()];
    for (i, &x) in perm.iter().enumerate() {
        inv[x as usize] = i as Point;
    }
    inv
}

/// One doubled system. Blocks with three points on level 1 lift their odd point
/// through `alpha_inv`, which keeps triples {(a,1),(b,1),(y,0)} with
/// y = α⁻¹(a) for the pair blocks.
fn dls_system(s: &Design, alpha: &[Point], alpha_inv: &[Point]) -> Vec<Point> {
    let n = s.n();
    let mut out = Vec::with_capacity(4 * (8 * s.num_blocks() + n * (n - 1) / 2));
    for b in s.blocks() {
        for p in 0..4 {
            for (lo, hi, map) in [(0, 1, alpha), (1, 0, alpha_inv)] {
                for (q, &x) in b.iter().enumerate() {
                    out.push(if q == p { pt(map[x as usize] as usize, hi, n) } else { pt(x as usize, lo, n) });
                }
            }
        }
    }
    for x1 in 0..n {
        for x2 in x1 + 1..n {
            out.extend([pt(x1, 0, n), pt(x2, 0, n), pt(alpha[x1] as usize, 1, n), pt(alpha[x2] as usize, 1, n)]);
        }
    }
    out
}

/// One SQS(2n) per PA row on `Z_n × Z_2`.
pub fn dls(s: &Design, perms: &CodeArray) -> Result<Vec<Design>> {
    if (s.t(), s.k()) != (3, 4) {
        return Err(invalid("dls needs an SQS"));
    }
    verify_steiner(s)?;
    let (_, rows) = pair_pa_rows(perms, s.n())?;
    rows.par_iter()
        .map(|alpha| {
            let d = sqs(2 * s.n(), dls_system(s, alpha, &inverse(alpha)))?;
            verify_steiner(&d)?;
            Ok(d)
        })
        .collect()
}

fn cross_blocks(
    f: &OneFactorization,
    alpha: impl Fn(usize) -> usize,
    lo: usize,
    hi: usize,
    n: usize,
    out: &mut Vec<Point>,
) {
    for r in 0..n - 1 {
        for &(x1, x2) in f.factor(r) {
            for &(y1, y2) in f.factor(alpha(r)) {
                out.extend([
                    pt(x1 as usize, lo, n),
                    pt(x2 as usize, lo, n),
                    pt(y1 as usize, hi, n),
                    pt(y2 as usize, hi, n),
                ]);
            }
        }
    }
}

fn copy_on_level(s: &Design, level: usize, n: usize, out: &mut Vec<Point>) {
    out.extend(s.flat().iter().map(|&x| pt(x as usize, level, n)));
}

fn check_factorization_and_latin(f: &OneFactorization, f2: &OneFactorization, m: &CodeArray, n: usize) -> Result<()> {
    if f.n() != n || f2.n() != n {
        return Err(Error::Mismatch(format!("one-factorizations on {}/{} vertices, need {n}", f.n(), f2.n())));
    }
    f.verify()?;
    f2.verify()?;
    if m.kind != ArrayKind::Latin || m.v != n - 1 {
        return Err(Error::Mismatch(format!("need a Latin square of order {}", n - 1)));
    }
    verify_array(m)?;
    Ok(())
}

/// Member `i` (0-based) of the input belongs to band `i / (g(n−3))` and uses
/// Latin row `band` to pair `F_r` with `F'_{M(band, r)}`.
pub fn db(ls: &LargeSet, f: &OneFactorization, f2: &OneFactorization, m: &CodeArray) -> Result<Vec<Design>> {
    check_sqs_set(ls)?;
    let n = ls.n;
    if n < 4 || !ls.mu.is_multiple_of(n as u64 - 1) {
        return Err(invalid(format!("multiplicity {} is not a multiple of n−1 = {}", ls.mu, n - 1)));
    }
    let band = (ls.mu / (n as u64 - 1)) as usize * (n - 3);
    check_factorization_and_latin(f, f2, m, n)?;
    verify_ls(ls)?;
    ls.systems
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let j = i / band;
            let mut out = Vec::new();
            copy_on_level(s, 0, n, &mut out);
            copy_on_level(s, 1, n, &mut out);
            for r in 0..n - 1 {
                for &(x1, x2) in f.factor(r) {
                    for &(y1, y2) in f2.factor(m.get(j, r) as usize) {
                        out.extend([
                            pt(x1 as usize, 0, n),
                            pt(x2 as usize, 0, n),
                            pt(y1 as usize, 1, n),
                            pt(y2 as usize, 1, n),
                        ]);
                    }
                }
            }
            let d = sqs(2 * n, out)?;
            verify_steiner(&d)?;
            Ok(d)
        })
        .collect()
}

/// γ from a PA and the μ = (n−1)γ/2 relation.
fn check_relation(ls: &LargeSet, gamma: u64) -> Result<()> {
    let n = ls.n as u64;
    if !gamma.is_multiple_of(2) || (n - 1) * gamma / 2 != ls.mu || n < 4 {
        return Err(invalid(format!("need μ = (n−1)γ/2 with γ even; got n={n}, μ={}, γ={gamma}", ls.mu)));
    }
    Ok(())
}

fn finish(t: usize, n: usize, mu: u64, systems: Vec<Design>) -> Result<LargeSet> {
    let ls = LargeSet::new(t, 4, n, mu, systems)?;
    verify_ls(&ls)?;
    Ok(ls)
}

/// LS(3,4,2n;μ) from LS(3,4,n;μ) and a PA_γ(2,n,n), μ = (n−1)γ/2.
pub fn double_ls(ls: &LargeSet, p: &CodeArray) -> Result<LargeSet> {
    check_sqs_set(ls)?;
    let (gamma, _) = pair_pa_rows(p, ls.n)?;
    check_relation(ls, gamma)?;
    let f = circle_one_factorization(ls.n)?;
    let m = cyclic_latin(ls.n - 1)?;
    let first = ls.systems.first().ok_or_else(|| invalid("empty large set"))?;
    let mut systems = dls(first, p)?;
    systems.extend(db(ls, &f, &f, &m)?);
    finish(3, 2 * ls.n, ls.mu, systems)
}

/// Which of the two leftover (1,1,1,1) families a label comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// fourth coordinate x + z − y + j
    D,
    /// fourth coordinate z + y − x + j
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeftoverLabel {
    pub family: Family,
    pub index: usize,
}

impl LeftoverLabel {
    /// Fourth coordinate of the block through (x,0),(y,1),(z,2).
    #[inline]
    pub fn fourth(&self, x: usize, y: usize, z: usize, n: usize) -> usize {
        let j = self.index % n;
        match self.family {
            Family::D => (x + z + n - y + j) % n,
            Family::E => (z + y + n - x + j) % n,
        }
    }
}

/// Labels left after removing the Type-A sets, in assignment order.
pub fn leftover_plan(n: usize, mu: usize) -> Result<Vec<LeftoverLabel>> {
    if n < 4 || mu == 0 {
        return Err(invalid(format!("leftover plan needs n >= 4 and μ >= 1, got n={n}, μ={mu}")));
    }
    let t = mu.div_ceil(n);
    if mu < t {
        return Err(Error::Infeasible(format!("μ={mu} leaves no E labels")));
    }
    let mut d_live = vec![true; t * n];
    let mut e_live = vec![true; (mu - t) * n];
    let take = |live: &mut [bool], value: usize, fam: &str| -> Result<()> {
        let slot = (value..live.len())
            .step_by(n)
            .find(|&i| live[i])
            .ok_or_else(|| Error::Infeasible(format!("no {fam} label with value {value} left")))?;
        live[slot] = false;
        Ok(())
    };
    for j in 0..mu {
        take(&mut d_live, j % n, "D")?;
        take(&mut e_live, j % n, "E")?;
        take(&mut e_live, j % n, "E")?;
    }
    let out: Vec<LeftoverLabel> = d_live
        .iter()
        .enumerate()
        .filter(|(_, &l)| l)
        .map(|(index, _)| LeftoverLabel { family: Family::D, index })
        .chain(
            e_live.iter().enumerate().filter(|(_, &l)| l).map(|(index, _)| LeftoverLabel { family: Family::E, index }),
        )
        .collect();
    debug_assert_eq!(out.len(), (n - 3) * mu);
    Ok(out)
}

/// Blocks `{x,y,z,w}` of `Z_2^m` with `x⊕y⊕z⊕w = i` or `x⊕y = z⊕w = i`.
pub fn boolean_sqs(i: usize, m: u32) -> Result<Design> {
    let v = 1usize << m;
    if m < 2 || i == 0 || i >= v {
        return Err(invalid(format!("Boolean SQS needs m >= 2 and 0 < i < 2^m, got i={i}, m={m}")));
    }
    let mut out = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            for z in y + 1..v {
                for w in z + 1..v {
                    let s = x ^ y ^ z ^ w;
                    if s == i || (s == 0 && (x ^ y == i || x ^ z == i || x ^ w == i)) {
                        out.extend([x as Point, y as Point, z as Point, w as Point]);
                    }
                }
            }
        }
    }
    Design::new(3, 4, v, out.chunks_exact(4))
}

/// A Type-A variant: Group-4 families `(pair level, c level, d level, adds j)`
/// with d = c + i + r (+ j), and Group-5 offsets `(from, to, adds j)` with to = from + i + n − 1 (+ j).
struct TypeA {
    group4: [(usize, usize, usize, bool); 4],
    group5: [(usize, usize, bool); 2],
}

const TYPE_A: [TypeA; 3] = [
    TypeA {
        group4: [(0, 2, 3, true), (1, 2, 3, true), (2, 0, 1, false), (3, 0, 1, false)],
        group5: [(0, 1, false), (2, 3, true)],
    },
    TypeA {
        group4: [(0, 1, 3, true), (2, 1, 3, true), (1, 0, 2, false), (3, 0, 2, false)],
        group5: [(0, 2, false), (1, 3, true)],
    },
    TypeA {
        group4: [(0, 1, 2, false), (3, 1, 2, false), (1, 0, 3, true), (2, 0, 3, true)],
        group5: [(1, 2, false), (0, 3, true)],
    },
];

fn embed_pair(r: &Design, lo: usize, hi: usize, n: usize, out: &mut Vec<Point>) {
    out.extend(r.flat().iter().map(|&p| {
        let (a, l) = (p as usize % n, p as usize / n);
        pt(a, if l == 0 { lo } else { hi }, n)
    }));
}

/// Group-4 and Group-5 blocks of Type-A system (i, j), i ∈ 1..=n, with
/// abstract level q placed on `lv[q]`.
fn type_a_cross(ty: &TypeA, i: usize, j: usize, lv: [usize; 4], f: &OneFactorization, n: usize, out: &mut Vec<Point>) {
    for &(pl, cl, dl, with_j) in &ty.group4 {
        for r in 0..n - 1 {
            let shift = i + r + if with_j { j } else { 0 };
            for &(a, b) in f.factor(r) {
                for c in 0..n {
                    out.extend([
                        pt(a as usize, lv[pl], n),
                        pt(b as usize, lv[pl], n),
                        pt(c, lv[cl], n),
                        pt((c + shift) % n, lv[dl], n),
                    ]);
                }
            }
        }
    }
    let [(f1, t1, j1), (f2, t2, j2)] = ty.group5;
    for a in 0..n {
        for b in 0..n {
            let a2 = (a + i + n - 1 + if j1 { j } else { 0 }) % n;
            let b2 = (b + i + n - 1 + if j2 { j } else { 0 }) % n;
            out.extend([pt(a, lv[f1], n), pt(a2, lv[t1], n), pt(b, lv[f2], n), pt(b2, lv[t2], n)]);
        }
    }
}

/// Shared state of the quadrupling and power-of-two constructions on `Z_n × Z_2^m`.
struct Product<'a> {
    n: usize,
    mu: usize,
    gamma: usize,
    levels: usize,
    doubled: Vec<Design>,
    base: &'a LargeSet,
    f: &'a OneFactorization,
    latin: &'a CodeArray,
    leftovers: Vec<LeftoverLabel>,
    /// Sorted 4-sets of levels with zero XOR.
    zero_quads: Vec<[usize; 4]>,
}

impl<'a> Product<'a> {
    fn new(ls: &'a LargeSet, p: &CodeArray, f: &'a OneFactorization, latin: &'a CodeArray, m: u32) -> Result<Self> {
        check_sqs_set(ls)?;
        let n = ls.n;
        let (gamma, _) = pair_pa_rows(p, n)?;
        check_relation(ls, gamma)?;
        check_factorization_and_latin(f, f, latin, n)?;
        let mu = ls.mu as usize;
        let levels = 1usize << m;
        if levels * n > crate::designcore::MAX_POINTS {
            return Err(invalid(format!("{} points exceed the point range", levels * n)));
        }
        verify_ls(ls)?;
        let first = ls.systems.first().ok_or_else(|| invalid("empty large set"))?;
        let doubled = dls(first, p)?;
        let leftovers = leftover_plan(n, mu)?;
        let mut zero_quads = Vec::new();
        for x in 0..levels {
            for y in x + 1..levels {
                for z in y + 1..levels {
                    let w = x ^ y ^ z;
                    if w > z {
                        zero_quads.push([x, y, z, w]);
                    }
                }
            }
        }
        Ok(Product { n, mu, gamma: gamma as usize, levels, doubled, base: ls, f, latin, leftovers, zero_quads })
    }

    fn total_points(&self) -> usize {
        self.levels * self.n
    }

    /// System P_(i, s), i ∈ 1..2^m, s ∈ 0..nμ.
    fn system_a(&self, i: usize, s: usize) -> Result<Design> {
        let n = self.n;
        let (ia, ja) = (s / self.mu + 1, s % self.mu);
        let mut out = Vec::new();
        for x in 0..self.levels {
            let y = x ^ i;
            if y > x {
                embed_pair(&self.doubled[s], x, y, n, &mut out);
            }
        }
        for &q in &self.zero_quads {
            let [x, y, z, w] = q;
            let ty = if x ^ y == i {
                &TYPE_A[0]
            } else if x ^ z == i {
                &TYPE_A[1]
            } else if x ^ w == i {
                &TYPE_A[2]
            } else {
                continue;
            };
            type_a_cross(ty, ia, ja, q, self.f, n, &mut out);
        }
        for x in 0..self.levels {
            for y in x + 1..self.levels {
                for z in y + 1..self.levels {
                    let w = x ^ y ^ z ^ i;
                    if w <= z {
                        continue;
                    }
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                out.extend([pt(a, x, n), pt(b, y, n), pt(c, z, n), pt((a + b + c + s) % n, w, n)]);
                            }
                        }
                    }
                }
            }
        }
        sqs(self.total_points(), out)
    }

    /// The `idx`-th (0-based) of the last (n−3)μ systems.
    fn system_b(&self, idx: usize) -> Result<Design> {
        let n = self.n;
        let band = idx / (self.mu - self.gamma);
        let mut out = Vec::new();
        for l in 0..self.levels {
            copy_on_level(&self.base.systems[idx], l, n, &mut out);
        }
        for l in 0..self.levels {
            for t in l + 1..self.levels {
                cross_blocks(self.f, |r| self.latin.get(band, r) as usize, l, t, n, &mut out);
            }
        }
        let label = self.leftovers[idx];
        for &[x, y, z, w] in &self.zero_quads {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        out.extend([pt(a, x, n), pt(b, y, n), pt(c, z, n), pt(label.fourth(a, b, c, n), w, n)]);
                    }
                }
            }
        }
        sqs(self.total_points(), out)
    }

    fn build(&self) -> Result<LargeSet> {
        let (n, mu) = (self.n, self.mu);
        let a_count = (self.levels - 1) * n * mu;
        let b_count = (n - 3) * mu;
        if (n - 1) * (mu - self.gamma) != b_count {
            return Err(invalid("band sizes do not tile the Type-B systems"));
        }
        let systems =
            (0..a_count + b_count)
                .into_par_iter()
                .map(|k| {
                    if k < a_count {
                        self.system_a(k / (n * mu) + 1, k % (n * mu))
                    } else {
                        self.system_b(k - a_count)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
        finish(3, self.total_points(), self.base.mu, systems)
    }
}

/// LS(3,4,4n;μ) on `Z_n × Z_4`: Types A1, A2, A3 (nμ systems each) then Type B.
pub fn quad_ls(ls: &LargeSet, p: &CodeArray, f: &OneFactorization, latin: &CodeArray) -> Result<LargeSet> {
    Product::new(ls, p, f, latin, 2)?.build()
}

/// LS(3,4,2^m·n;μ) on `Z_n × Z_2^m`, m ≥ 3.
pub fn pow2_ls(ls: &LargeSet, p: &CodeArray, f: &OneFactorization, latin: &CodeArray, m: u32) -> Result<LargeSet> {
    if m < 3 {
        return Err(invalid(format!("power-of-two construction needs m >= 3, got {m}")));
    }
    Product::new(ls, p, f, latin, m)?.build()
}

/// LS(3,4,2^m·n;μ) for any m ≥ 0 with the circle one-factorization and cyclic Latin square.
pub fn rec4n_driver(ls: &LargeSet, p: &CodeArray, m: u32) -> Result<LargeSet> {
    if m == 0 {
        verify_ls(ls)?;
        return Ok(ls.clone());
    }
    if m == 1 {
        return double_ls(ls, p);
    }
    let f = circle_one_factorization(ls.n)?;
    let latin = cyclic_latin(ls.n - 1)?;
    if m == 2 {
        quad_ls(ls, p, &f, &latin)
    } else {
        pow2_ls(ls, p, &f, &latin, m)
    }
}

/// For every configuration over `parts` levels of `Z_base`, the least and
/// greatest number of systems containing a quadruple of that configuration.
pub fn coverage_by_configuration(
    systems: &[Design],
    base: usize,
    parts: usize,
) -> Result<BTreeMap<Configuration, (u32, u32)>> {
    let first = systems.first().ok_or_else(|| invalid("no systems"))?;
    let (k, total) = (first.k(), first.n());
    if total != base * parts {
        return Err(Error::Mismatch(format!("{total} points is not {parts} levels of {base}")));
    }
    let table = coverage_unchecked(systems, k, total);
    let ranker = SubsetRanker::new(k, total);
    let mut out: BTreeMap<Configuration, (u32, u32)> = BTreeMap::new();
    let mut buf = Vec::new();
    for (r, &c) in table.counts().iter().enumerate() {
        ranker.unrank_into(r as u64, &mut buf);
        let cfg = classify_flat(&buf, base, parts)?;
        let e = out.entry(cfg).or_insert((c, c));
        e.0 = e.0.min(c);
        e.1 = e.1.max(c);
    }
    Ok(out)
}

/// The first configuration whose coverage is not the constant `expected(cfg)`.
pub fn check_configuration_coverage(
    census: &BTreeMap<Configuration, (u32, u32)>,
    expected: impl Fn(&Configuration) -> u32,
) -> Result<(), Violation> {
    for (cfg, &(lo, hi)) in census {
        let want = expected(cfg);
        if lo != want || hi != want {
            let found = if lo != want { lo } else { hi };
            return Err(Violation::Shape(format!("configuration {cfg} covered {found} times, expected {want}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::agl_pa;

    fn sqs4() -> Design {
        Design::new(3, 4, 4, [[0u16, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn literal_level_one_lift_needs_involutions() {
        let p = agl_pa(4).unwrap();
        let mut failures = 0;
        for alpha in p.row_iter() {
            let literal = sqs(8, dls_system(&sqs4(), alpha, alpha)).unwrap();
            let involution = (0..4).all(|x| alpha[alpha[x] as usize] as usize == x);
            assert_eq!(verify_steiner(&literal).is_ok(), involution, "{alpha:?}");
            failures += usize::from(!involution);
            assert!(verify_steiner(&sqs(8, dls_system(&sqs4(), alpha, &inverse(alpha))).unwrap()).is_ok());
        }
        assert!(failures > 0);
    }

    #[test]
    fn leftover_small() {
        let plan = leftover_plan(4, 3).unwrap();
        let want = [(Family::D, 3), (Family::E, 3), (Family::E, 7)];
        assert_eq!(plan.iter().map(|l| (l.family, l.index)).collect::<Vec<_>>(), want);
        let big = leftover_plan(10, 9).unwrap();
        assert_eq!(big.len(), 63);
        assert_eq!(big[0], LeftoverLabel { family: Family::D, index: 9 });
        assert!(big[1..].iter().all(|l| l.family == Family::E));
    }

    #[test]
    fn boolean_small() {
        let d = boolean_sqs(1, 3).unwrap();
        assert_eq!(d.num_blocks(), 14);
        assert!(verify_steiner(&d).is_ok());
        assert!(boolean_sqs(0, 3).is_err());
    }
}
