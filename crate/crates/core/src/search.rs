//! Exhaustive SQS(8) enumeration, exact multicover assembly of large sets and
//! annealing search for strength-2 perpendicular arrays.

use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrays::{verify_array, ArrayKind, CodeArray};
use crate::designcore::{binomial, position_subsets, Design, LargeSet, Point, SubsetRanker};
use crate::error::{invalid, Error, Result};
use crate::gf::{prime_power, GaloisField};
use crate::io::{read_file, write_file, Artifact};
use crate::lsops::verify_ls;

/// All 30 SQS(8) on labeled points, in lexicographic backtracking order.
pub fn enumerate_sqs8() -> &'static [Design] {
    static CACHE: OnceLock<Vec<Design>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let triples = SubsetRanker::new(3, 8);
        let mut covered = vec![false; triples.count() as usize];
        let mut chosen = Vec::new();
        let mut out = Vec::new();
        sqs8_rec(&triples, &mut covered, &mut chosen, &mut out);
        out
    })
}

fn sqs8_rec(triples: &SubsetRanker, covered: &mut [bool], chosen: &mut Vec<[Point; 4]>, out: &mut Vec<Design>) {
    let Some(first) = covered.iter().position(|&c| !c) else {
        let d = Design::new(3, 4, 8, chosen.iter()).expect("blocks are sorted and distinct");
        out.push(d);
        return;
    };
    let mut tri = Vec::new();
    triples.unrank_into(first as u64, &mut tri);
    for extra in 0..8u16 {
        if tri.contains(&extra) {
            continue;
        }
        let mut block = [tri[0], tri[1], tri[2], extra];
        block.sort_unstable();
        let ranks: Vec<usize> = position_subsets(4, 3)
            .iter()
            .map(|pos| triples.rank_sorted(&[block[pos[0]], block[pos[1]], block[pos[2]]]))
            .collect();
        if ranks.iter().any(|&r| covered[r]) {
            continue;
        }
        ranks.iter().for_each(|&r| covered[r] = true);
        chosen.push(block);
        sqs8_rec(triples, covered, chosen, out);
        chosen.pop();
        ranks.iter().for_each(|&r| covered[r] = false);
    }
}

/// Node limit for [`exact_multicover`].
pub const DEFAULT_MULTICOVER_NODES: u64 = 10_000_000;

/// A multiset of candidates covering every k-subset exactly μ times.
pub fn exact_multicover(candidates: &[Design], mu: u64) -> Result<LargeSet> {
    exact_multicover_with_budget(candidates, mu, DEFAULT_MULTICOVER_NODES)
}

pub fn exact_multicover_with_budget(candidates: &[Design], mu: u64, max_nodes: u64) -> Result<LargeSet> {
    let first = candidates.first().ok_or_else(|| invalid("no candidates"))?;
    let (t, k, n) = (first.t(), first.k(), first.n());
    if candidates.iter().any(|d| (d.t(), d.k(), d.n()) != (t, k, n)) {
        return Err(Error::Mismatch("candidates differ in parameters".into()));
    }
    let ranker = SubsetRanker::new(k, n);
    let blocks: Vec<Vec<usize>> =
        candidates.iter().map(|d| d.blocks().map(|b| ranker.rank_sorted(b)).collect()).collect();
    let mut containing = vec![Vec::new(); ranker.count() as usize];
    for (c, bs) in blocks.iter().enumerate() {
        for &b in bs {
            containing[b].push(c);
        }
    }
    let mut search = Multicover {
        blocks: &blocks,
        containing: &containing,
        deficiency: vec![mu as u32; ranker.count() as usize],
        chosen: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    match search.run(None) {
        Some(true) => {
            let systems = search.chosen.iter().map(|&c| candidates[c].clone()).collect();
            let ls = LargeSet::new(t, k, n, mu, systems)?;
            verify_ls(&ls)?;
            Ok(ls)
        }
        Some(false) => {
            Err(Error::Infeasible(format!("no multiset of the {} candidates has coverage {mu}", candidates.len())))
        }
        None => Err(Error::SearchFailed { best_energy: search.deficiency.iter().map(|&d| d as u64).sum() }),
    }
}

struct Multicover<'a> {
    blocks: &'a [Vec<usize>],
    containing: &'a [Vec<usize>],
    deficiency: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl Multicover<'_> {
    /// `Some(true)` on success, `Some(false)` on exhaustion, `None` when out of budget.
    fn run(&mut self, prev: Option<(usize, usize)>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        let Some(target) = self.deficiency.iter().position(|&d| d > 0) else {
            return Some(true);
        };
        // repeated picks for one target are taken in nondecreasing order
        let floor = match prev {
            Some((t, c)) if t == target => c,
            _ => 0,
        };
        for &c in self.containing[target].iter().filter(|&&c| c >= floor) {
            if self.blocks[c].iter().any(|&b| self.deficiency[b] == 0) {
                continue;
            }
            self.blocks[c].iter().for_each(|&b| self.deficiency[b] -= 1);
            self.chosen.push(c);
            let r = self.run(Some((target, c)));
            if r != Some(false) {
                return r;
            }
            self.chosen.pop();
            self.blocks[c].iter().for_each(|&b| self.deficiency[b] += 1);
        }
        Some(false)
    }
}

/// Annealing schedule for [`search_pa`].
#[derive(Debug, Clone)]
pub struct AnnealConfig {
    pub start_temp: f64,
    pub cooling: f64,
    pub steps_per_temp: u64,
    pub min_temp: f64,
    /// Probability of a row replacement instead of a swap.
    pub replace_prob: f64,
    /// Restarts per round, seeded `seed, seed+1, ...`.
    pub restarts: usize,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            start_temp: 2.0,
            cooling: 0.97,
            steps_per_temp: 20_000,
            min_temp: 0.05,
            replace_prob: 0.01,
            restarts: 4,
        }
    }
}

/// Pair-count bookkeeping for arrays whose rows are `h ∘ r`, `h` in a group
/// acting on the values and `r` a base row.
struct Problem {
    n: usize,
    base_rows: usize,
    group: Vec<Vec<Point>>,
    /// Orbit of the unordered value pair {x, y}, indexed `x·n + y`.
    class_of: Vec<usize>,
    /// Required number of base rows hitting each orbit on a column pair.
    targets: Vec<i64>,
    col_pairs: Vec<(usize, usize)>,
}

impl Problem {
    fn free(lambda: u64, n: usize) -> Self {
        let rows = lambda as usize * n * (n - 1) / 2;
        Self::with_group(lambda, n, rows, vec![(0..n as Point).collect()]).expect("the trivial group always fits")
    }

    fn with_group(lambda: u64, n: usize, rows: usize, group: Vec<Vec<Point>>) -> Option<Self> {
        if !rows.is_multiple_of(group.len()) {
            return None;
        }
        let mut class_of = vec![usize::MAX; n * n];
        let mut targets = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if class_of[x * n + y] != usize::MAX {
                    continue;
                }
                let c = targets.len();
                let mut size = 0;
                for h in &group {
                    let (u, v) = (h[x] as usize, h[y] as usize);
                    if class_of[u * n + v] == usize::MAX {
                        class_of[u * n + v] = c;
                        class_of[v * n + u] = c;
                        size += 1;
                    }
                }
                if !(lambda as usize * size).is_multiple_of(group.len()) {
                    return None;
                }
                targets.push((lambda as usize * size / group.len()) as i64);
            }
        }
        let col_pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Some(Problem { n, base_rows: rows / group.len(), group, class_of, targets, col_pairs })
    }

    fn classes(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    fn class(&self, x: Point, y: Point) -> usize {
        self.class_of[x as usize * self.n + y as usize]
    }

    fn counts(&self, rows: &[Vec<Point>]) -> Vec<i64> {
        let mut counts = vec![0i64; self.col_pairs.len() * self.classes()];
        for r in rows {
            for (cp, &(i, j)) in self.col_pairs.iter().enumerate() {
                counts[cp * self.classes() + self.class(r[i], r[j])] += 1;
            }
        }
        counts
    }

    fn energy(&self, counts: &[i64]) -> i64 {
        let c = self.classes();
        counts.iter().enumerate().map(|(i, &x)| (x - self.targets[i % c]).pow(2)).sum()
    }

    fn expand(&self, rows: &[Vec<Point>]) -> Vec<Vec<Point>> {
        self.group.iter().flat_map(|h| rows.iter().map(move |r| r.iter().map(|&x| h[x as usize]).collect())).collect()
    }
}

/// Largest projective semilinear group searched for coset unions.
const MAX_POOL: usize = 50_000;

/// PΓL(2, n−1) on the projective line, point n−1 at infinity, sorted.
fn projective_semilinear(n: usize) -> Option<Vec<Vec<Point>>> {
    let q = n.checked_sub(1)?;
    let (p, _) = prime_power(q)?;
    let f = GaloisField::new(q).ok()?;
    let inv = |x: usize| (1..q).find(|&y| f.mul(x, y) == 1);
    let inf = q as Point;
    let mut gens: Vec<Vec<Point>> = Vec::new();
    gens.push((0..q).map(|x| f.add(x, 1) as Point).chain([inf]).collect());
    for a in 2..q {
        gens.push((0..q).map(|x| f.add(x, a) as Point).chain([inf]).collect());
        gens.push((0..q).map(|x| f.mul(x, a) as Point).chain([inf]).collect());
    }
    let recip: Vec<Point> = (0..q).map(|x| inv(x).map_or(inf, |y| y as Point)).chain([0]).collect();
    gens.push(recip);
    let frob: Vec<Point> = (0..q).map(|x| (1..p).fold(x, |acc, _| f.mul(acc, x)) as Point).chain([inf]).collect();
    gens.push(frob);
    let mut seen: std::collections::HashSet<Vec<Point>> = std::collections::HashSet::new();
    let mut frontier = vec![(0..n as Point).collect::<Vec<_>>()];
    seen.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let c: Vec<Point> = g.iter().map(|&x| h[x as usize]).collect();
            if seen.insert(c.clone()) {
                if seen.len() > MAX_POOL {
                    return None;
                }
                frontier.push(c);
            }
        }
    }
    let mut all: Vec<Vec<Point>> = seen.into_iter().collect();
    all.sort_unstable();
    Some(all)
}

/// Translations x ↦ x + b of GF(n−1), fixing the point n−1.
fn translations(n: usize) -> Option<Vec<Vec<Point>>> {
    let q = n.checked_sub(1)?;
    prime_power(q)?;
    let f = GaloisField::new(q).ok()?;
    Some((0..q).map(|b| (0..q).map(|x| f.add(x, b) as Point).chain([q as Point]).collect()).collect())
}

/// Exact search for a PA as a union of right cosets `H·σ` of the translation
/// group inside PΓL(2, n−1). `Ok(None)` when the search space is exhausted.
fn coset_union_pa(lambda: u64, n: usize, deadline: Instant) -> Result<Option<Vec<Vec<Point>>>> {
    let (Some(h), Some(pool)) = (translations(n), projective_semilinear(n)) else {
        return Ok(None);
    };
    let rows = lambda as usize * n * (n - 1) / 2;
    let Some(p) = Problem::with_group(lambda, n, rows, h) else {
        return Ok(None);
    };
    let classes = p.classes();
    let mut reps: Vec<Vec<Point>> = Vec::new();
    let mut covered = std::collections::HashSet::new();
    for s in &pool {
        if covered.contains(s) {
            continue;
        }
        for g in &p.group {
            covered.insert(s.iter().map(|&x| g[x as usize]).collect::<Vec<Point>>());
        }
        reps.push(s.clone());
    }
    let items: Vec<Vec<usize>> = reps
        .iter()
        .map(|s| p.col_pairs.iter().enumerate().map(|(cp, &(i, j))| cp * classes + p.class(s[i], s[j])).collect())
        .collect();
    let need: Vec<u32> = (0..p.col_pairs.len() * classes).map(|i| p.targets[i % classes] as u32).collect();
    let mut by_item = vec![Vec::new(); need.len()];
    for (o, its) in items.iter().enumerate() {
        for &x in its {
            by_item[x].push(o);
        }
    }
    let mut dfs =
        CosetDfs { items: &items, by_item: &by_item, need, chosen: Vec::new(), goal: p.base_rows, deadline, nodes: 0 };
    match dfs.run(None) {
        Some(true) => {
            let base: Vec<Vec<Point>> = dfs.chosen.iter().map(|&o| reps[o].clone()).collect();
            Ok(Some(p.expand(&base)))
        }
        Some(false) => Ok(None),
        None => Err(Error::SearchFailed { best_energy: dfs.need.iter().map(|&x| x as u64).sum() }),
    }
}

struct CosetDfs<'a> {
    items: &'a [Vec<usize>],
    by_item: &'a [Vec<usize>],
    need: Vec<u32>,
    chosen: Vec<usize>,
    goal: usize,
    deadline: Instant,
    nodes: u64,
}

impl CosetDfs<'_> {
    fn viable(&self, o: usize) -> bool {
        self.items[o].iter().all(|&y| self.need[y] > 0)
    }

    /// Branches on the open item with the fewest viable options.
    fn run(&mut self, prev: Option<(usize, usize)>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            return None;
        }
        if self.chosen.len() == self.goal {
            return Some(self.need.iter().all(|&x| x == 0));
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in (0..self.need.len()).filter(|&x| self.need[x] > 0) {
            let opts: Vec<usize> = self.by_item[x].iter().copied().filter(|&o| self.viable(o)).collect();
            if opts.len() < self.need[x] as usize {
                return Some(false);
            }
            if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
                best = Some((x, opts));
            }
        }
        let Some((target, opts)) = best else {
            return Some(false);
        };
        let floor = match prev {
            Some((t, o)) if t == target => o,
            _ => 0,
        };
        for o in opts.into_iter().filter(|&o| o >= floor) {
            self.items[o].iter().for_each(|&y| self.need[y] -= 1);
            self.chosen.push(o);
            let r = self.run(Some((target, o)));
            if r != Some(false) {
                return r;
            }
            self.chosen.pop();
            self.items[o].iter().for_each(|&y| self.need[y] += 1);
        }
        Some(false)
    }
}

/// One annealing run; `Ok(rows)` at zero energy, else the best energy reached.
/// Gives up at the deadline or once a run with a smaller index has succeeded.
fn anneal(
    p: &Problem,
    seed: u64,
    index: u64,
    winner: &AtomicU64,
    cfg: &AnnealConfig,
    deadline: Instant,
) -> std::result::Result<Vec<Vec<Point>>, i64> {
    let n = p.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Point>> = (0..p.base_rows)
        .map(|_| {
            let mut r: Vec<Point> = (0..n as Point).collect();
            r.shuffle(&mut rng);
            r
        })
        .collect();
    let mut counts = p.counts(&rows);
    let mut energy = p.energy(&counts);
    let mut best = energy;
    let mut delta_buf: Vec<(usize, i64)> = Vec::with_capacity(4 * n * n);
    let classes = p.classes();
    loop {
        let mut temp = cfg.start_temp;
        while temp > cfg.min_temp {
            for step in 0..cfg.steps_per_temp {
                if energy == 0 {
                    winner.fetch_min(index, Ordering::Relaxed);
                    return Ok(p.expand(&rows));
                }
                if step % 4096 == 0 && (Instant::now() >= deadline || winner.load(Ordering::Relaxed) < index) {
                    return Err(best);
                }
                let r = rng.gen_range(0..p.base_rows);
                let new_row: Vec<Point> = if rng.gen_bool(cfg.replace_prob) {
                    let mut x: Vec<Point> = (0..n as Point).collect();
                    x.shuffle(&mut rng);
                    x
                } else {
                    let a = rng.gen_range(0..n);
                    let mut b = rng.gen_range(0..n - 1);
                    if b >= a {
                        b += 1;
                    }
                    let mut x = rows[r].clone();
                    x.swap(a, b);
                    x
                };
                delta_buf.clear();
                let old = &rows[r];
                for (cp, &(i, j)) in p.col_pairs.iter().enumerate() {
                    let (co, cn) = (p.class(old[i], old[j]), p.class(new_row[i], new_row[j]));
                    if co != cn {
                        delta_buf.push((cp * classes + co, -1));
                        delta_buf.push((cp * classes + cn, 1));
                    }
                }
                let mut delta = 0i64;
                for &(idx, d) in &delta_buf {
                    let target = p.targets[idx % classes];
                    let before = counts[idx] - target;
                    counts[idx] += d;
                    delta += (counts[idx] - target).pow(2) - before.pow(2);
                }
                if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
                    rows[r] = new_row;
                    energy += delta;
                    best = best.min(energy);
                } else {
                    for &(idx, d) in &delta_buf {
                        counts[idx] -= d;
                    }
                }
            }
            temp *= cfg.cooling;
        }
    }
}

/// A PA_λ(2,n,n): exact search over unions of translation cosets in PΓL(2,n−1)
/// when n − 1 is a prime power, then annealing with restarts, reproducible from `seed`.
pub fn search_pa(lambda: u64, k: usize, n: usize, seed: u64, budget: Duration) -> Result<CodeArray> {
    search_pa_with(lambda, k, n, seed, budget, &AnnealConfig::default())
}

pub fn search_pa_with(
    lambda: u64,
    k: usize,
    n: usize,
    seed: u64,
    budget: Duration,
    cfg: &AnnealConfig,
) -> Result<CodeArray> {
    if k != 2 {
        return Err(invalid(format!("only strength 2 is searched, got {k}")));
    }
    if n < 3 || lambda == 0 || binomial(n as u64, 2) * lambda > 1_000_000 {
        return Err(invalid(format!("unsupported PA_{lambda}(2,{n},{n})")));
    }
    let deadline = Instant::now() + budget;
    let found = coset_union_pa(lambda, n, deadline).unwrap_or_default();
    let rows = match found {
        Some(rows) => rows,
        None => anneal_rounds(&Problem::free(lambda, n), seed, cfg, deadline)?,
    };
    let a = CodeArray::from_rows(ArrayKind::Pa { lambda, strength: 2 }, n, &rows)?;
    verify_array(&a)?;
    Ok(a)
}

/// Reads a PA_λ(2,n,n) from `path` if the file exists, otherwise searches and
/// writes the result there. A file that is present but wrong is an error.
pub fn load_or_search_pa(path: &Path, lambda: u64, n: usize, seed: u64, budget: Duration) -> Result<CodeArray> {
    if path.exists() {
        let a = match read_file(path)? {
            Artifact::Array(a) => a,
            other => {
                return Err(Error::Mismatch(format!("{} holds a {}, not an array", path.display(), other.kind_name())))
            }
        };
        if a.kind != (ArrayKind::Pa { lambda, strength: 2 }) || a.v != n || a.cols != n {
            return Err(Error::Mismatch(format!("{} is not a PA_{lambda}(2,{n},{n})", path.display())));
        }
        verify_array(&a)?;
        return Ok(a);
    }
    let a = search_pa(lambda, 2, n, seed, budget)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    write_file(path, &Artifact::Array(a.clone()))?;
    Ok(a)
}

fn anneal_rounds(p: &Problem, seed: u64, cfg: &AnnealConfig, deadline: Instant) -> Result<Vec<Vec<Point>>> {
    let mut best_energy = i64::MAX;
    let restarts = cfg.restarts.max(1) as u64;
    let mut round = 0u64;
    while Instant::now() < deadline {
        let base = seed.wrapping_add(round * restarts);
        let winner = AtomicU64::new(u64::MAX);
        let results: Vec<_> =
            (0..restarts).into_par_iter().map(|s| anneal(p, base.wrapping_add(s), s, &winner, cfg, deadline)).collect();
        for r in results {
            match r {
                Ok(rows) => return Ok(rows),
                Err(e) => best_energy = best_energy.min(e),
            }
        }
        round += 1;
    }
    Err(Error::SearchFailed { best_energy: best_energy.max(0) as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designcore::coverage;

    #[test]
    fn thirty_sqs8() {
        let all = enumerate_sqs8();
        assert_eq!(all.len(), 30);
        let table = coverage(all).unwrap();
        assert!(table.counts().iter().all(|&c| c == 6));
    }

    #[test]
    fn semilinear_group_orders() {
        assert_eq!(projective_semilinear(10).unwrap().len(), 1440);
        assert_eq!(projective_semilinear(4).unwrap().len(), 24);
        assert!(projective_semilinear(7).is_none());
    }

    #[test]
    fn coset_union_finds_ten_point_array() {
        let rows = coset_union_pa(2, 10, Instant::now() + Duration::from_secs(60)).unwrap().unwrap();
        let a = CodeArray::from_rows(ArrayKind::Pa { lambda: 2, strength: 2 }, 10, &rows).unwrap();
        assert_eq!(a.rows, 90);
        assert!(verify_array(&a).is_ok());
    }

    #[test]
    fn annealing_alone_finds_small_arrays() {
        let cfg = AnnealConfig::default();
        let deadline = Instant::now() + Duration::from_secs(30);
        let rows = anneal_rounds(&Problem::free(2, 4), 3, &cfg, deadline).unwrap();
        let a = CodeArray::from_rows(ArrayKind::Pa { lambda: 2, strength: 2 }, 4, &rows).unwrap();
        assert!(verify_array(&a).is_ok());
    }

    #[test]
    fn small_pa_search() {
        let a = search_pa(2, 2, 4, 1, Duration::from_secs(20)).unwrap();
        assert_eq!(a.rows, 12);
        let b = search_pa(1, 2, 7, 1, Duration::from_secs(20)).unwrap();
        assert_eq!(b.rows, 21);
        assert!(verify_array(&b).is_ok());
    }

    #[test]
    fn energy_vanishes_exactly_on_arrays() {
        let p = Problem::free(2, 7);
        let rows: Vec<Vec<Point>> = crate::arrays::agl_pa(7).unwrap().row_iter().map(<[Point]>::to_vec).collect();
        assert_eq!(p.energy(&p.counts(&rows)), 0);
        let mut bad = rows.clone();
        bad[5].swap(0, 1);
        assert!(p.energy(&p.counts(&bad)) > 0);
    }

    #[test]
    fn load_or_search_persists_then_loads() {
        let dir = std::env::temp_dir().join(format!("lsmu-pa-{}", std::process::id()));
        let path = dir.join("pa_2_2_4.arr");
        let _ = std::fs::remove_file(&path);
        let a = load_or_search_pa(&path, 2, 4, 1, Duration::from_secs(20)).unwrap();
        assert!(path.exists());
        assert_eq!(load_or_search_pa(&path, 2, 4, 99, Duration::ZERO).unwrap(), a);
        assert!(matches!(load_or_search_pa(&path, 1, 4, 1, Duration::ZERO), Err(Error::Mismatch(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
