//! H-designs H(n,g,k,t) over `n` groups of `g` points and their large sets.
//!
//! Points use the group-major encoding `group·g + slot`.

use rayon::prelude::*;

use crate::arrays::{loa_from_oa, verify_array, ArrayKind, CodeArray};
use crate::designcore::{binomial, coverage_unchecked, position_subsets, Design, LargeSet, Point, SubsetRanker};
use crate::error::{invalid, Error, Result, Violation};
use crate::lsops::verify_ls;

/// Transversal blocks over `n` groups of size `g`, claimed to be an H(n,g,k,t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedDesign {
    n: usize,
    g: usize,
    design: Design,
}

impl GroupedDesign {
    /// Wraps blocks over `[0, n·g)`; transversality is left to [`verify_h`].
    pub fn new(n: usize, g: usize, design: Design) -> Result<Self> {
        if g == 0 || design.n() != n * g {
            return Err(Error::Mismatch(format!("{} points cannot hold {n} groups of {g}", design.n())));
        }
        Ok(GroupedDesign { n, g, design })
    }

    pub fn from_blocks<I, B>(n: usize, g: usize, k: usize, t: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: AsRef<[Point]>,
    {
        Self::new(n, g, Design::from_unsorted(t, k, n * g, blocks)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn k(&self) -> usize {
        self.design.k()
    }

    pub fn t(&self) -> usize {
        self.design.t()
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn num_blocks(&self) -> usize {
        self.design.num_blocks()
    }

    pub fn blocks(&self) -> std::slice::ChunksExact<'_, Point> {
        self.design.blocks()
    }

    /// (C(n,t)/C(k,t))·g^t, when integral.
    pub fn expected_blocks(n: usize, g: usize, k: usize, t: usize) -> Option<u64> {
        let num = binomial(n as u64, t as u64) * (g as u64).pow(t as u32);
        let den = binomial(k as u64, t as u64);
        (den != 0 && num.is_multiple_of(den)).then(|| num / den)
    }
}

/// An ordered list of H-designs sharing `(n, g, k, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeSetH {
    pub n: usize,
    pub g: usize,
    pub k: usize,
    pub t: usize,
    pub systems: Vec<GroupedDesign>,
}

impl LargeSetH {
    pub fn new(n: usize, g: usize, k: usize, t: usize, systems: Vec<GroupedDesign>) -> Result<Self> {
        if let Some(i) = systems.iter().position(|s| (s.n, s.g, s.k(), s.t()) != (n, g, k, t)) {
            return Err(Error::Mismatch(format!("system {i} does not have parameters H({n},{g},{k},{t})")));
        }
        Ok(LargeSetH { n, g, k, t, systems })
    }

    /// C(n−t, k−t)·g^{k−t}.
    pub fn expected_systems(&self) -> u64 {
        binomial((self.n - self.t) as u64, (self.k - self.t) as u64) * (self.g as u64).pow((self.k - self.t) as u32)
    }
}

#[inline]
fn is_transversal(block: &[Point], g: usize) -> bool {
    block.windows(2).all(|w| w[0] as usize / g != w[1] as usize / g)
}

fn first_non_transversal(d: &GroupedDesign) -> Option<Vec<Point>> {
    d.blocks().find(|b| !is_transversal(b, d.g)).map(<[Point]>::to_vec)
}

/// Scans a rank-indexed count table: transversal subsets must have `expected`,
/// all others zero.
fn transversal_deviation(counts: &[u32], k: usize, total: usize, g: usize, expected: u32) -> Option<(Vec<Point>, u32)> {
    let ranker = SubsetRanker::new(k, total);
    let r = (0..counts.len()).into_par_iter().find_first(|&r| {
        let mut buf = Vec::with_capacity(k);
        ranker.unrank_into(r as u64, &mut buf);
        let want = if is_transversal(&buf, g) { expected } else { 0 };
        counts[r] != want
    })?;
    let mut buf = Vec::new();
    ranker.unrank_into(r as u64, &mut buf);
    Some((buf, counts[r]))
}

/// Transversality, block count and exact-once coverage of transversal t-subsets.
pub fn verify_h(d: &GroupedDesign) -> Result<(), Violation> {
    let (n, g, k, t) = (d.n, d.g, d.k(), d.t());
    if k > n {
        return Err(Violation::Parameters(format!("blocks of {k} cannot be transversal to {n} groups")));
    }
    if let Some(block) = first_non_transversal(d) {
        return Err(Violation::NotTransversal { block });
    }
    let total = n * g;
    let ranker = SubsetRanker::new(t, total);
    let mut counts = vec![0u32; ranker.count() as usize];
    let positions = position_subsets(k, t);
    let mut sub = vec![0 as Point; t];
    for b in d.blocks() {
        for pos in &positions {
            for (s, &i) in sub.iter_mut().zip(pos) {
                *s = b[i];
            }
            counts[ranker.rank_sorted(&sub)] += 1;
        }
    }
    if let Some((subset, count)) = transversal_deviation(&counts, t, total, g, 1) {
        return Err(Violation::Coverage { subset, count: count as u64, expected: 1 });
    }
    let expected = GroupedDesign::expected_blocks(n, g, k, t)
        .ok_or_else(|| Violation::Parameters(format!("H({n},{g},{k},{t}) has a fractional block count")))?;
    if d.num_blocks() as u64 != expected {
        return Err(Violation::BlockCount { expected, found: d.num_blocks() as u64 });
    }
    Ok(())
}

/// Every member verifies, every transversal k-subset lies in exactly one
/// member, and the member count is C(n−t,k−t)·g^{k−t}.
pub fn verify_lh(lh: &LargeSetH) -> Result<(), Violation> {
    let bad = lh
        .systems
        .par_iter()
        .enumerate()
        .find_map_first(|(i, s)| verify_h(s).err().map(|v| Violation::System { index: i, inner: Box::new(v) }));
    if let Some(v) = bad {
        return Err(v);
    }
    if !lh.systems.is_empty() {
        let designs: Vec<Design> = lh.systems.iter().map(|s| s.design.clone()).collect();
        let table = coverage_unchecked(&designs, lh.k, lh.n * lh.g);
        if let Some((subset, count)) = transversal_deviation(table.counts(), lh.k, lh.n * lh.g, lh.g, 1) {
            return Err(Violation::Coverage { subset, count: count as u64, expected: 1 });
        }
    }
    let expected = lh.expected_systems();
    if lh.systems.len() as u64 != expected {
        return Err(Violation::SystemCount { expected, found: lh.systems.len() as u64 });
    }
    Ok(())
}

/// LH(n,g,k,t) from an LS(t,k,n;g^{k−t}) and an OA(t,k,g).
///
/// The j-th system (ascending) containing a k-subset {x_1<…<x_k} receives the
/// blocks {(x_i, y_i)} for every row y of the j-th translate of the OA.
pub fn lh_from_ls(ls: &LargeSet, oa: &CodeArray) -> Result<LargeSetH> {
    let (t, k, n) = (ls.t, ls.k, ls.n);
    let ArrayKind::Oa { strength } = oa.kind else {
        return Err(invalid("lh_from_ls needs an OA"));
    };
    if strength != t || oa.cols != k {
        return Err(Error::Mismatch(format!("OA has strength {strength} and {} columns, need OA({t},{k},g)", oa.cols)));
    }
    let g = oa.v;
    let parts = (g as u64).pow((k - t) as u32);
    if ls.mu != parts {
        return Err(Error::Mismatch(format!("multiplicity {} differs from g^(k-t) = {parts}", ls.mu)));
    }
    verify_ls(ls)?;
    let loa = loa_from_oa(oa)?;
    let ranker = SubsetRanker::new(k, n);
    let mut seen = vec![0u32; ranker.count() as usize];
    let mut flat: Vec<Vec<Point>> = vec![Vec::new(); ls.systems.len()];
    for (i, s) in ls.systems.iter().enumerate() {
        for b in s.blocks() {
            let r = ranker.rank_sorted(b);
            let part = &loa[seen[r] as usize];
            seen[r] += 1;
            for row in part.row_iter() {
                flat[i].extend(b.iter().zip(row).map(|(&x, &y)| (x as usize * g + y as usize) as Point));
            }
        }
    }
    let systems = flat
        .into_par_iter()
        .map(|f| GroupedDesign::new(n, g, Design::from_flat(t, k, n * g, f)?))
        .collect::<Result<Vec<_>>>()?;
    let lh = LargeSetH::new(n, g, k, t, systems)?;
    verify_lh(&lh)?;
    Ok(lh)
}

/// LH(n,gu,k,t) from an LH(n,g,k,t) and an OA(t,k,u): slot `(y, b)` becomes `y·u + b`.
pub fn lh_expand(lh: &LargeSetH, oa: &CodeArray) -> Result<LargeSetH> {
    let (n, g, k, t) = (lh.n, lh.g, lh.k, lh.t);
    let ArrayKind::Oa { strength } = oa.kind else {
        return Err(invalid("lh_expand needs an OA"));
    };
    if strength != t || oa.cols != k {
        return Err(Error::Mismatch(format!("need OA({t},{k},u), got strength {strength} with {} columns", oa.cols)));
    }
    verify_lh(lh)?;
    verify_array(oa)?;
    let u = oa.v;
    let gu = g * u;
    let loa = loa_from_oa(oa)?;
    let jobs: Vec<(usize, usize)> = (0..lh.systems.len()).flat_map(|i| (0..loa.len()).map(move |j| (i, j))).collect();
    let systems = jobs
        .into_par_iter()
        .map(|(i, j)| {
            let a = &lh.systems[i];
            let mut flat = Vec::with_capacity(a.num_blocks() * loa[j].rows * k);
            for b in a.blocks() {
                for row in loa[j].row_iter() {
                    flat.extend(b.iter().zip(row).map(|(&p, &c)| {
                        let (x, y) = (p as usize / g, p as usize % g);
                        (x * gu + y * u + c as usize) as Point
                    }));
                }
            }
            GroupedDesign::new(n, gu, Design::from_flat(t, k, n * gu, flat)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = LargeSetH::new(n, gu, k, t, systems)?;
    verify_lh(&out)?;
    Ok(out)
}

/// Necessary conditions for an H(n,g,4,3).
pub fn h_feasible(n: u64, g: u64) -> bool {
    (g * n).is_multiple_of(2)
        && (g * (n.saturating_sub(1)) * n.saturating_sub(2)).is_multiple_of(3)
        && n >= 4
        && (n, g) != (5, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasibility_table() {
        assert!(!h_feasible(5, 2));
        assert!(h_feasible(5, 4));
        for g in 1..=12 {
            assert_eq!(h_feasible(6, g), g % 3 == 0, "g={g}");
            assert_eq!(h_feasible(7, g), g % 2 == 0, "g={g}");
        }
        assert!(!h_feasible(3, 6));
    }

    #[test]
    fn trivial_h_design() {
        // H(4,1,4,3) is the single block on four groups of size one.
        let d = GroupedDesign::from_blocks(4, 1, 4, 3, [[0u16, 1, 2, 3]]).unwrap();
        assert!(verify_h(&d).is_ok());
        let wide = GroupedDesign::from_blocks(2, 2, 3, 2, [[0u16, 1, 2]]).unwrap();
        assert!(matches!(verify_h(&wide), Err(Violation::Parameters(_))));
        let nt = GroupedDesign::from_blocks(4, 2, 3, 2, [[0u16, 1, 2]]).unwrap();
        assert_eq!(verify_h(&nt), Err(Violation::NotTransversal { block: vec![0, 1, 2] }));
    }

    #[test]
    fn block_count_formula() {
        assert_eq!(GroupedDesign::expected_blocks(5, 4, 4, 3), Some(160));
        assert_eq!(GroupedDesign::expected_blocks(6, 3, 4, 3), Some(135));
        assert_eq!(GroupedDesign::expected_blocks(7, 2, 4, 3), Some(70));
    }
}
