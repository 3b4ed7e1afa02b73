//! Points, blocks, designs and large sets, together with colexicographic
//! subset ranking, configuration classification and coverage counting.
//!
//! Blocks are stored flat (stride `k`) and kept in lexicographic order, so two
//! designs with the same block set compare equal and serialize identically.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result, Violation};

/// A point of an ambient set `[0, n)`.
pub type Point = u16;

/// Largest point-set size accepted by the flat block encoding.
pub const MAX_POINTS: usize = Point::MAX as usize;

/// Exact binomial coefficient; saturates at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Colex ranking of sorted `k`-subsets of `[0, n)`.
///
/// rank({p_0 < … < p_{k-1}}) = Σ C(p_i, i+1).
#[derive(Debug, Clone)]
pub struct SubsetRanker {
    k: usize,
    n: usize,
    table: Vec<u64>,
}

impl SubsetRanker {
    pub fn new(k: usize, n: usize) -> Self {
        let mut table = vec![0u64; (n + 1) * (k + 1)];
        for p in 0..=n {
            for i in 0..=k {
                table[p * (k + 1) + i] = binomial(p as u64, i as u64);
            }
        }
        SubsetRanker { k, n, table }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// C(n, k): the size of the rank domain.
    pub fn count(&self) -> u64 {
        self.choose(self.n, self.k)
    }

    #[inline]
    fn choose(&self, p: usize, i: usize) -> u64 {
        self.table[p * (self.k + 1) + i]
    }

    /// Ranks a block already known to be strictly ascending and in range.
    #[inline]
    pub fn rank_sorted(&self, points: &[Point]) -> usize {
        let mut r = 0u64;
        for (i, &p) in points.iter().enumerate() {
            r += self.choose(p as usize, i + 1);
        }
        r as usize
    }

    pub fn unrank_into(&self, mut r: u64, out: &mut Vec<Point>) {
        out.clear();
        out.resize(self.k, 0);
        let mut hi = self.n;
        for i in (1..=self.k).rev() {
            // largest p < hi with C(p, i) <= r
            let mut p = hi - 1;
            while self.choose(p, i) > r {
                p -= 1;
            }
            out[i - 1] = p as Point;
            r -= self.choose(p, i);
            hi = p;
        }
    }
}

fn check_block(points: &[Point], n: usize) -> Result<()> {
    if let Some(&p) = points.iter().find(|&&p| p as usize >= n) {
        return Err(Error::InvalidBlock { block: points.to_vec(), reason: format!("point {p} outside [0,{n})") });
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidBlock { block: points.to_vec(), reason: "points not strictly ascending".into() });
    }
    Ok(())
}

/// Colex rank of a strictly ascending block over `[0, n)`.
pub fn rank_subset(points: &[Point], n: usize) -> Result<u64> {
    check_block(points, n)?;
    Ok(SubsetRanker::new(points.len(), n).rank_sorted(points) as u64)
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(r: u64, k: usize, n: usize) -> Result<Vec<Point>> {
    if k > n {
        return Err(invalid(format!("k={k} exceeds n={n}")));
    }
    let ranker = SubsetRanker::new(k, n);
    if r >= ranker.count() {
        return Err(invalid(format!("rank {r} out of range for C({n},{k})")));
    }
    let mut out = Vec::new();
    ranker.unrank_into(r, &mut out);
    Ok(out)
}

/// All `t`-element position subsets of `0..k`, lexicographic.
pub(crate) fn position_subsets(k: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < t - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, t, &mut Vec::with_capacity(t), &mut out);
    out
}

/// A set of sorted `k`-blocks over `[0, n)` with claimed Steiner parameters `(t, k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    t: usize,
    k: usize,
    n: usize,
    blocks: Vec<Point>,
}

impl Design {
    /// Builds a design from strictly ascending blocks; duplicates are rejected.
    pub fn new<I, B>(t: usize, k: usize, n: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: AsRef<[Point]>,
    {
        check_params(t, k, n)?;
        let mut flat = Vec::new();
        for b in blocks {
            let b = b.as_ref();
            if b.len() != k {
                return Err(Error::InvalidBlock { block: b.to_vec(), reason: format!("expected {k} points") });
            }
            check_block(b, n)?;
            flat.extend_from_slice(b);
        }
        Self::from_sorted_blocks(t, k, n, flat)
    }

    /// Like [`Design::new`] but sorts the points of every block first.
    pub fn from_unsorted<I, B>(t: usize, k: usize, n: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = B>,
        B: AsRef<[Point]>,
    {
        let mut flat = Vec::new();
        for b in blocks {
            flat.extend_from_slice(b.as_ref());
        }
        Self::from_flat(t, k, n, flat)
    }

    /// Builds a design from a flat point buffer (stride `k`); each block is sorted
    /// in place, then validated.
    pub fn from_flat(t: usize, k: usize, n: usize, mut flat: Vec<Point>) -> Result<Self> {
        check_params(t, k, n)?;
        if k == 0 || !flat.len().is_multiple_of(k) {
            return Err(invalid(format!("flat buffer length {} not a multiple of k={k}", flat.len())));
        }
        for b in flat.chunks_exact_mut(k) {
            b.sort_unstable();
            check_block(b, n)?;
        }
        Self::from_sorted_blocks(t, k, n, flat)
    }

    fn from_sorted_blocks(t: usize, k: usize, n: usize, flat: Vec<Point>) -> Result<Self> {
        let mut refs: Vec<&[Point]> = flat.chunks_exact(k).collect();
        refs.sort_unstable();
        if let Some(w) = refs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidBlock { block: w[0].to_vec(), reason: "duplicate block".into() });
        }
        let blocks: Vec<Point> = refs.concat();
        Ok(Design { t, k, n, blocks })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len() / self.k
    }

    pub fn blocks(&self) -> std::slice::ChunksExact<'_, Point> {
        self.blocks.chunks_exact(self.k)
    }

    pub fn block(&self, i: usize) -> &[Point] {
        &self.blocks[i * self.k..(i + 1) * self.k]
    }

    pub fn flat(&self) -> &[Point] {
        &self.blocks
    }

    pub fn contains_block(&self, block: &[Point]) -> bool {
        let nb = self.num_blocks();
        let (mut lo, mut hi) = (0, nb);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.block(mid).cmp(block) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// The number of blocks an `S(t,k,n)` must have, if integral.
    pub fn steiner_block_count(t: usize, k: usize, n: usize) -> Option<u64> {
        let num = binomial(n as u64, t as u64);
        let den = binomial(k as u64, t as u64);
        (den != 0 && num.is_multiple_of(den)).then(|| num / den)
    }

    /// Relabels every point `p` to `perm[p]`.
    pub fn relabel(&self, perm: &[Point]) -> Result<Design> {
        check_permutation(perm, self.n)?;
        let flat = self.blocks.iter().map(|&p| perm[p as usize]).collect();
        Design::from_flat(self.t, self.k, self.n, flat)
    }

    /// Same blocks under different claimed parameters.
    pub fn with_params(&self, t: usize) -> Result<Design> {
        check_params(t, self.k, self.n)?;
        Ok(Design { t, ..self.clone() })
    }
}

fn check_params(t: usize, k: usize, n: usize) -> Result<()> {
    if t == 0 || t > k || k > n {
        return Err(invalid(format!("need 0 < t <= k <= n, got t={t} k={k} n={n}")));
    }
    if n > MAX_POINTS {
        return Err(invalid(format!("n={n} exceeds {MAX_POINTS}")));
    }
    Ok(())
}

/// Checks that `perm` is a bijection on `[0, n)`.
pub fn check_permutation(perm: &[Point], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(invalid(format!("permutation has length {}, expected {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
            return Err(invalid(format!("{perm:?} is not a permutation of [0,{n})")));
        }
    }
    Ok(())
}

/// An ordered list of designs with common `(t, k, n)` and claimed multiplicity `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeSet {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    pub mu: u64,
    pub systems: Vec<Design>,
}

impl LargeSet {
    pub fn new(t: usize, k: usize, n: usize, mu: u64, systems: Vec<Design>) -> Result<Self> {
        check_params(t, k, n)?;
        if let Some((i, d)) = systems.iter().enumerate().find(|(_, d)| (d.t, d.k, d.n) != (t, k, n)) {
            return Err(Error::Mismatch(format!(
                "system {i} is S({},{},{}), large set is over S({t},{k},{n})",
                d.t, d.k, d.n
            )));
        }
        Ok(LargeSet { t, k, n, mu, systems })
    }

    /// μ·C(n−t, k−t), the number of systems a verified LS must have.
    pub fn expected_systems(&self) -> u64 {
        self.mu * binomial((self.n - self.t) as u64, (self.k - self.t) as u64)
    }
}

/// A point of `Z_n × L` where `L` is an ordered level set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductPoint {
    pub base: Point,
    pub level: u16,
}

impl ProductPoint {
    pub fn new(base: Point, level: u16) -> Self {
        ProductPoint { base, level }
    }

    /// Level-major flat encoding `level·n + base`.
    #[inline]
    pub fn flat(self, n: usize) -> Point {
        (self.level as usize * n + self.base as usize) as Point
    }

    #[inline]
    pub fn from_flat(p: Point, n: usize) -> Self {
        ProductPoint { base: (p as usize % n) as Point, level: (p as usize / n) as u16 }
    }
}

/// Per-part intersection sizes of a block with a partition of the point set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(pub Vec<usize>);

impl Configuration {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn classify_configuration(block: &[ProductPoint], parts: usize) -> Result<Configuration> {
    let mut counts = vec![0usize; parts];
    for p in block {
        let slot = counts
            .get_mut(p.level as usize)
            .ok_or_else(|| invalid(format!("level {} outside {parts} parts", p.level)))?;
        *slot += 1;
    }
    Ok(Configuration(counts))
}

/// Configuration of a block of flat level-major points over `Z_base × Z_parts`.
pub fn classify_flat(block: &[Point], base: usize, parts: usize) -> Result<Configuration> {
    let pts: Vec<ProductPoint> = block.iter().map(|&p| ProductPoint::from_flat(p, base)).collect();
    classify_configuration(&pts, parts)
}

/// Group 1–5 of a four-part configuration of a quadruple:
/// 4 | 3+1 | 2+2 | 2+1+1 | 1+1+1+1.
pub fn config_group(c: &Configuration) -> Result<u8> {
    if c.0.len() != 4 || c.total() != 4 {
        return Err(invalid(format!("{c} is not a four-part configuration of a quadruple")));
    }
    let mut shape: Vec<usize> = c.0.iter().copied().filter(|&x| x > 0).collect();
    shape.sort_unstable_by(|a, b| b.cmp(a));
    Ok(match shape.as_slice() {
        [4] => 1,
        [3, 1] => 2,
        [2, 2] => 3,
        [2, 1, 1] => 4,
        _ => 5,
    })
}

/// Dense count of how many systems contain each `k`-subset, indexed by colex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageTable {
    k: usize,
    n: usize,
    counts: Vec<u32>,
}

impl CoverageTable {
    pub fn zeros(k: usize, n: usize) -> Self {
        let len = binomial(n as u64, k as u64) as usize;
        CoverageTable { k, n, counts: vec![0; len] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, rank: usize) -> u32 {
        self.counts[rank]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count_of(&self, block: &[Point]) -> Result<u32> {
        Ok(self.counts[rank_subset(block, self.n)? as usize])
    }

    /// First rank whose count differs from `expected`, with its subset and count.
    pub fn first_deviation(&self, expected: u32) -> Option<(Vec<Point>, u32)> {
        let r = self.counts.iter().position(|&c| c != expected)?;
        Some((unrank_subset(r as u64, self.k, self.n).ok()?, self.counts[r]))
    }

    fn add_design(&mut self, d: &Design, ranker: &SubsetRanker) {
        for b in d.blocks() {
            self.counts[ranker.rank_sorted(b)] += 1;
        }
    }

    fn merge(mut self, other: CoverageTable) -> CoverageTable {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

/// How many of `systems` contain each `k`-subset.
pub fn coverage(systems: &[Design]) -> Result<CoverageTable> {
    let first = systems.first().ok_or_else(|| invalid("coverage of an empty system list"))?;
    let (k, n) = (first.k, first.n);
    if let Some(i) = systems.iter().position(|d| (d.t, d.k, d.n) != (first.t, k, n)) {
        return Err(Error::Mismatch(format!("system {i} has different parameters than system 0")));
    }
    Ok(coverage_unchecked(systems, k, n))
}

pub(crate) fn coverage_unchecked(systems: &[Design], k: usize, n: usize) -> CoverageTable {
    let ranker = SubsetRanker::new(k, n);
    systems
        .par_iter()
        .fold(
            || CoverageTable::zeros(k, n),
            |mut acc, d| {
                acc.add_design(d, &ranker);
                acc
            },
        )
        .reduce(|| CoverageTable::zeros(k, n), CoverageTable::merge)
}

/// Coverage deviation as a violation.
pub(crate) fn coverage_violation(table: &CoverageTable, expected: u32) -> Result<(), Violation> {
    match table.first_deviation(expected) {
        None => Ok(()),
        Some((subset, count)) => Err(Violation::Coverage { subset, count: count as u64, expected: expected as u64 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_extremes() {
        assert_eq!(rank_subset(&[0, 1, 2], 5).unwrap(), 0);
        assert_eq!(rank_subset(&[2, 3, 4], 5).unwrap(), 9);
    }

    #[test]
    fn rank_rejects_bad_blocks() {
        assert!(rank_subset(&[1, 0, 2], 5).is_err());
        assert!(rank_subset(&[0, 0, 2], 5).is_err());
        assert!(rank_subset(&[0, 1, 5], 5).is_err());
        assert!(unrank_subset(10, 3, 5).is_err());
    }

    #[test]
    fn rank_unrank_exhaustive_n7() {
        let mut seen = 0;
        for r in 0..35 {
            let b = unrank_subset(r, 3, 7).unwrap();
            assert_eq!(rank_subset(&b, 7).unwrap(), r);
            seen += 1;
        }
        assert_eq!(seen, binomial(7, 3));
    }

    #[test]
    fn rank_unrank_bijection_up_to_16() {
        for n in 1..=16usize {
            for k in 1..=n {
                let ranker = SubsetRanker::new(k, n);
                let mut buf = Vec::new();
                let mut prev: Option<Vec<Point>> = None;
                for r in 0..ranker.count() {
                    ranker.unrank_into(r, &mut buf);
                    assert!(buf.windows(2).all(|w| w[0] < w[1]));
                    assert!((*buf.last().unwrap() as usize) < n);
                    assert_eq!(ranker.rank_sorted(&buf) as u64, r);
                    // colex order: compare reversed sequences
                    if let Some(p) = &prev {
                        let a: Vec<_> = p.iter().rev().collect();
                        let b: Vec<_> = buf.iter().rev().collect();
                        assert!(a < b);
                    }
                    prev = Some(buf.clone());
                }
            }
        }
    }

    #[test]
    fn configurations() {
        let pts = |v: &[(u16, u16)]| v.iter().map(|&(b, l)| ProductPoint::new(b, l)).collect::<Vec<_>>();
        let c = classify_configuration(&pts(&[(0, 0), (1, 0), (2, 0), (3, 1)]), 2).unwrap();
        assert_eq!(c, Configuration(vec![3, 1]));
        let c = classify_configuration(&pts(&[(0, 0), (0, 1), (0, 2), (0, 3)]), 4).unwrap();
        assert_eq!(c, Configuration(vec![1, 1, 1, 1]));
        assert_eq!(config_group(&c).unwrap(), 5);
        assert_eq!(config_group(&Configuration(vec![2, 1, 1, 0])).unwrap(), 4);
        assert_eq!(config_group(&Configuration(vec![4, 0, 0, 0])).unwrap(), 1);
        assert_eq!(config_group(&Configuration(vec![0, 2, 0, 2])).unwrap(), 3);
        assert!(config_group(&Configuration(vec![2, 1, 0])).is_err());
        assert!(classify_configuration(&pts(&[(0, 3)]), 2).is_err());
    }

    #[test]
    fn group_sizes_over_all_35_configurations() {
        let mut per_group = [0usize; 6];
        for a in 0..=4 {
            for b in 0..=4 - a {
                for c in 0..=4 - a - b {
                    let d = 4 - a - b - c;
                    let g = config_group(&Configuration(vec![a, b, c, d])).unwrap();
                    per_group[g as usize] += 1;
                }
            }
        }
        assert_eq!(&per_group[1..], &[4, 12, 6, 12, 1]);
    }

    #[test]
    fn product_point_encoding() {
        for n in [4usize, 10] {
            for flat in 0..(4 * n) as Point {
                let p = ProductPoint::from_flat(flat, n);
                assert_eq!(p.flat(n), flat);
            }
        }
    }

    #[test]
    fn design_normalizes_and_rejects() {
        let d = Design::from_unsorted(3, 4, 8, [[3u16, 2, 1, 0], [7, 4, 5, 6]]).unwrap();
        assert_eq!(d.block(0), &[0, 1, 2, 3]);
        assert!(d.contains_block(&[4, 5, 6, 7]));
        assert!(!d.contains_block(&[0, 1, 2, 4]));
        assert!(Design::new(3, 4, 8, [[1u16, 0, 2, 3]]).is_err());
        assert!(Design::new(3, 4, 8, [[0u16, 1, 2, 3], [0, 1, 2, 3]]).is_err());
        assert!(Design::new(3, 4, 8, [[0u16, 1, 2, 8]]).is_err());
        assert!(Design::from_unsorted(3, 4, 8, [[0u16, 1, 1, 3]]).is_err());
    }

    #[test]
    fn coverage_of_single_system() {
        let d = Design::new(3, 4, 4, [[0u16, 1, 2, 3]]).unwrap();
        let cov = coverage(&[d.clone(), d]).unwrap();
        assert_eq!(cov.counts(), &[2]);
        let mixed = Design::new(3, 4, 5, [[0u16, 1, 2, 3]]).unwrap();
        let d = Design::new(3, 4, 4, [[0u16, 1, 2, 3]]).unwrap();
        assert!(coverage(&[d, mixed]).is_err());
    }
}
