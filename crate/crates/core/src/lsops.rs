//! Steiner-system and large-set verification, unions, and large sets obtained
//! by applying permutation arrays to a single system.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arrays::{verify_array, CodeArray};
use crate::designcore::{
    binomial, classify_flat, coverage_unchecked, coverage_violation, position_subsets, Configuration, Design, LargeSet,
    Point, SubsetRanker,
};
use crate::error::{invalid, Error, Result, Violation};

/// Exact-once coverage of every t-subset, then the block count.
pub fn verify_steiner(d: &Design) -> Result<(), Violation> {
    let (t, k, n) = (d.t(), d.k(), d.n());
    let ranker = SubsetRanker::new(t, n);
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
    if let Some(r) = counts.iter().position(|&c| c != 1) {
        let mut subset = Vec::new();
        ranker.unrank_into(r as u64, &mut subset);
        return Err(Violation::Coverage { subset, count: counts[r] as u64, expected: 1 });
    }
    let expected = Design::steiner_block_count(t, k, n)
        .ok_or_else(|| Violation::Parameters(format!("S({t},{k},{n}) has a fractional block count")))?;
    if d.num_blocks() as u64 != expected {
        return Err(Violation::BlockCount { expected, found: d.num_blocks() as u64 });
    }
    Ok(())
}

/// Members, then constant coverage μ, then the member count μ·C(n−t,k−t).
pub fn verify_ls(ls: &LargeSet) -> Result<(), Violation> {
    let bad =
        ls.systems.par_iter().enumerate().find_map_first(|(i, s)| {
            verify_steiner(s).err().map(|v| Violation::System { index: i, inner: Box::new(v) })
        });
    if let Some(v) = bad {
        return Err(v);
    }
    let expected_cov = u32::try_from(ls.mu).map_err(|_| Violation::Parameters(format!("μ = {} too large", ls.mu)))?;
    let table = coverage_unchecked(&ls.systems, ls.k, ls.n);
    coverage_violation(&table, expected_cov)?;
    let expected = ls.expected_systems();
    if ls.systems.len() as u64 != expected {
        return Err(Violation::SystemCount { expected, found: ls.systems.len() as u64 });
    }
    Ok(())
}

pub fn union_ls(a: &LargeSet, b: &LargeSet) -> Result<LargeSet> {
    if (a.t, a.k, a.n) != (b.t, b.k, b.n) {
        return Err(Error::Mismatch(format!(
            "cannot combine LS({},{},{}) with LS({},{},{})",
            a.t, a.k, a.n, b.t, b.k, b.n
        )));
    }
    let systems = a.systems.iter().chain(&b.systems).cloned().collect();
    LargeSet::new(a.t, a.k, a.n, a.mu + b.mu, systems)
}

/// Relabels `d` under every permutation (point `j` goes to `perm[j]`).
pub fn apply_perms<P: AsRef<[Point]> + Sync>(d: &Design, perms: &[P]) -> Result<Vec<Design>> {
    perms.par_iter().map(|p| d.relabel(p.as_ref())).collect()
}

/// One system per PA (or OD) row; μ = λ·C(n,t)/C(k,t).
pub fn perm_ls(s: &Design, p: &CodeArray) -> Result<LargeSet> {
    verify_steiner(s)?;
    let (lambda, strength) = p.homogeneous_index().ok_or_else(|| invalid("perm_ls needs a PA or OD"))?;
    if strength != s.k() || p.v != s.n() {
        return Err(Error::Mismatch(format!(
            "array has strength {strength} over {} symbols, system is S({},{},{})",
            p.v,
            s.t(),
            s.k(),
            s.n()
        )));
    }
    verify_array(p)?;
    p.check_permutation_rows()?;
    let rows: Vec<&[Point]> = p.row_iter().collect();
    let systems = apply_perms(s, &rows)?;
    let mu = lambda * s.num_blocks() as u64;
    let ls = LargeSet::new(s.t(), s.k(), s.n(), mu, systems)?;
    verify_ls(&ls)?;
    Ok(ls)
}

/// Keeps `[0, a_size)` fixed and permutes the rest by each row of `p`.
///
/// μ is read off the coverage table; for S(3,4,n) with `|A| = 3` it must also
/// equal λ·C(n−4,3)/4.
pub fn part_expand(s: &Design, a_size: usize, p: &CodeArray) -> Result<LargeSet> {
    verify_steiner(s)?;
    let n = s.n();
    let m = n
        .checked_sub(a_size)
        .filter(|&m| m > 0)
        .ok_or_else(|| invalid(format!("part size {a_size} leaves no B-part")))?;
    let (lambda, _) = p.homogeneous_index().ok_or_else(|| invalid("part_expand needs a PA or OD"))?;
    if p.v != m {
        return Err(Error::Mismatch(format!("array over {} symbols, B-part has {m} points", p.v)));
    }
    verify_array(p)?;
    p.check_permutation_rows()?;
    let perms: Vec<Vec<Point>> = p
        .row_iter()
        .map(|row| (0..a_size as Point).chain(row.iter().map(|&x| x + a_size as Point)).collect())
        .collect();
    let systems = apply_perms(s, &perms)?;
    let table = coverage_unchecked(&systems, s.k(), n);
    let mu = table.get(0) as u64;
    coverage_violation(&table, mu as u32)?;
    if a_size == 3 && s.t() == 3 && s.k() == 4 {
        let predicted = lambda * binomial(n as u64 - 4, 3);
        if !predicted.is_multiple_of(4) || predicted / 4 != mu {
            return Err(Error::Mismatch(format!("coverage gives μ = {mu}, closed form λ·C(n−4,3)/4 = {predicted}/4")));
        }
    }
    let ls = LargeSet::new(s.t(), s.k(), n, mu, systems)?;
    verify_ls(&ls)?;
    Ok(ls)
}

/// Block counts per configuration with respect to consecutive parts of the given sizes.
pub fn config_census(s: &Design, part_sizes: &[usize]) -> Result<BTreeMap<Configuration, u64>> {
    if part_sizes.contains(&0) || part_sizes.iter().sum::<usize>() != s.n() {
        return Err(invalid(format!("part sizes {part_sizes:?} do not partition {} points", s.n())));
    }
    let mut part_of = Vec::with_capacity(s.n());
    for (j, &sz) in part_sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(j as Point, sz));
    }
    let mut census = BTreeMap::new();
    for b in s.blocks() {
        let levels: Vec<Point> = b.iter().map(|&x| part_of[x as usize]).collect();
        // parts are consecutive runs, so a level index with base 1 classifies them
        let c = classify_flat(&levels, 1, part_sizes.len())?;
        *census.entry(c).or_insert(0) += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::ArrayKind;

    fn sqs4() -> Design {
        Design::new(3, 4, 4, [[0u16, 1, 2, 3]]).unwrap()
    }

    fn symmetric_group(n: usize) -> Vec<Vec<Point>> {
        fn rec(cur: &mut Vec<Point>, used: &mut Vec<bool>, out: &mut Vec<Vec<Point>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x as Point);
                    rec(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn perm_ls_sqs4_with_s4() {
        let rows = symmetric_group(4);
        let p = CodeArray::from_rows(ArrayKind::Pa { lambda: 24, strength: 4 }, 4, &rows).unwrap();
        let ls = perm_ls(&sqs4(), &p).unwrap();
        assert_eq!(ls.mu, 24);
        assert_eq!(ls.systems.len(), 24);
        assert!(ls.systems.iter().all(|s| *s == sqs4()));
        let od = CodeArray::from_rows(ArrayKind::Od { lambda: 1, strength: 4 }, 4, &rows).unwrap();
        assert_eq!(perm_ls(&sqs4(), &od).unwrap().mu, 24);
    }

    #[test]
    fn perm_ls_rejects_wrong_strength() {
        let p = crate::arrays::agl_pa(4).unwrap();
        assert!(matches!(perm_ls(&sqs4(), &p), Err(Error::Mismatch(_))));
    }

    #[test]
    fn union_adds_multiplicity() {
        let a = LargeSet::new(3, 4, 4, 1, vec![sqs4()]).unwrap();
        let u = union_ls(&a, &a).unwrap();
        assert_eq!(u.mu, 2);
        assert!(verify_ls(&u).is_ok());
        let b = LargeSet::new(3, 4, 5, 1, vec![]).unwrap();
        assert!(union_ls(&a, &b).is_err());
    }

    #[test]
    fn census_single_part() {
        let c = config_census(&sqs4(), &[4]).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(Configuration(vec![4]), 1)]);
        assert!(config_census(&sqs4(), &[3]).is_err());
    }
}
