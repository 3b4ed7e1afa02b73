//! Compiled-in seed systems and permutation tables, their group expansions, and
//! the derived-design and complement-extension operations.

use crate::designcore::{check_permutation, Design, LargeSet, Point};
use crate::error::{invalid, Error, Result};
use crate::hdesign::{verify_h, verify_lh, GroupedDesign, LargeSetH};
use crate::lsops::{apply_perms, union_ls, verify_ls, verify_steiner};

mod tables;

/// An H-design in its original labelling together with the map to group-major points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledHDesign {
    pub n: usize,
    pub g: usize,
    pub k: usize,
    pub t: usize,
    /// Original-label blocks, each sorted.
    pub blocks: Vec<Vec<Point>>,
    /// `flat[label]` = group-major point of `label`.
    pub flat: Vec<Point>,
}

impl LabeledHDesign {
    /// Builds from groups listed as original labels; group `i`, slot `j` maps to `i·g + j`.
    pub fn new<B: AsRef<[Point]>>(groups: &[Vec<Point>], k: usize, t: usize, blocks: &[B]) -> Result<Self> {
        let n = groups.len();
        let g = groups.first().map_or(0, Vec::len);
        if g == 0 || groups.iter().any(|gr| gr.len() != g) {
            return Err(invalid("groups must be nonempty and of equal size"));
        }
        let mut flat = vec![Point::MAX; n * g];
        for (i, gr) in groups.iter().enumerate() {
            for (j, &p) in gr.iter().enumerate() {
                let slot =
                    flat.get_mut(p as usize).ok_or_else(|| invalid(format!("label {p} outside [0,{})", n * g)))?;
                if *slot != Point::MAX {
                    return Err(invalid(format!("label {p} in two groups")));
                }
                *slot = (i * g + j) as Point;
            }
        }
        let blocks = blocks
            .iter()
            .map(|b| {
                let mut b = b.as_ref().to_vec();
                b.sort_unstable();
                b
            })
            .collect();
        Ok(LabeledHDesign { n, g, k, t, blocks, flat })
    }

    fn relabeled<'a>(&self, blocks: impl Iterator<Item = &'a [Point]>) -> Result<GroupedDesign> {
        let flat = blocks.flat_map(|b| b.iter().map(|&p| self.flat[p as usize]));
        GroupedDesign::new(self.n, self.g, Design::from_flat(self.t, self.k, self.n * self.g, flat.collect())?)
    }

    /// The design in group-major encoding.
    pub fn to_grouped(&self) -> Result<GroupedDesign> {
        self.relabeled(self.blocks.iter().map(Vec::as_slice))
    }

    /// Translates by `Z_modulus` on the labels in `moving` (which must be `0..modulus`),
    /// fixing all other labels; translate 0 is the identity.
    pub fn orbit_cyclic(&self, modulus: usize, moving: &[Point]) -> Result<Vec<GroupedDesign>> {
        if modulus == 0 || moving.len() != modulus || moving.iter().enumerate().any(|(i, &p)| p as usize != i) {
            return Err(invalid(format!("moving set must be 0..{modulus}")));
        }
        (0..modulus)
            .map(|s| {
                let shifted: Vec<Vec<Point>> = self
                    .blocks
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|&p| if (p as usize) < modulus { ((p as usize + s) % modulus) as Point } else { p })
                            .collect()
                    })
                    .collect();
                self.relabeled(shifted.iter().map(Vec::as_slice))
            })
            .collect()
    }

    /// One design per permutation of the original labels (label `j` goes to `perm[j]`).
    pub fn apply_perms<P: AsRef<[Point]>>(&self, perms: &[P]) -> Result<Vec<GroupedDesign>> {
        perms
            .iter()
            .map(|perm| {
                let perm = perm.as_ref();
                check_permutation(perm, self.n * self.g)?;
                let moved: Vec<Vec<Point>> =
                    self.blocks.iter().map(|b| b.iter().map(|&p| perm[p as usize]).collect()).collect();
                self.relabeled(moved.iter().map(Vec::as_slice))
            })
            .collect()
    }
}

/// A catalog payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seed {
    Design(Design),
    Grouped(LabeledHDesign),
    Perms(Vec<Vec<Point>>),
}

pub const SEED_NAMES: [&str; 8] = ["s_4_5_11", "perms_s11", "perms_s10", "h_5_4", "h_6_3", "h_7_2", "perms_h7", "sqs4"];

pub fn seed(name: &str) -> Result<Seed> {
    Ok(match name {
        "s_4_5_11" => Seed::Design(s_4_5_11()),
        "perms_s11" => Seed::Perms(perms_s11()),
        "perms_s10" => Seed::Perms(perms_s10()),
        "h_5_4" => Seed::Grouped(h_5_4()),
        "h_6_3" => Seed::Grouped(h_6_3()),
        "h_7_2" => Seed::Grouped(h_7_2()),
        "perms_h7" => Seed::Perms(perms_h7()),
        "sqs4" => Seed::Design(sqs4()),
        _ => return Err(Error::UnknownSeed(name.to_string())),
    })
}

fn rows<const W: usize>(t: &[[Point; W]]) -> Vec<Vec<Point>> {
    t.iter().map(|r| r.to_vec()).collect()
}

pub fn s_4_5_11() -> Design {
    Design::from_unsorted(4, 5, 11, tables::S_4_5_11).expect("table is well formed")
}

pub fn perms_s11() -> Vec<Vec<Point>> {
    rows(&tables::PERMS_S11)
}

pub fn perms_s10() -> Vec<Vec<Point>> {
    rows(&tables::PERMS_S10)
}

pub fn perms_h7() -> Vec<Vec<Point>> {
    rows(&tables::PERMS_H7)
}

pub fn sqs4() -> Design {
    Design::new(3, 4, 4, [[0u16, 1, 2, 3]]).expect("single block")
}

pub fn h_5_4() -> LabeledHDesign {
    let mut groups = vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]];
    groups.extend((8..=10).map(|i| vec![i, i + 3, i + 6, i + 9]));
    LabeledHDesign::new(&groups, 4, 3, &tables::H_5_4).expect("table is well formed")
}

pub fn h_6_3() -> LabeledHDesign {
    let groups: Vec<Vec<Point>> = [0, 1, 2, 9, 10, 11].iter().map(|&i| vec![i, i + 3, i + 6]).collect();
    LabeledHDesign::new(&groups, 4, 3, &tables::H_6_3).expect("table is well formed")
}

pub fn h_7_2() -> LabeledHDesign {
    let groups: Vec<Vec<Point>> = (0..7).map(|i| vec![i, i + 7]).collect();
    LabeledHDesign::new(&groups, 4, 3, &tables::H_7_2).expect("table is well formed")
}

/// The 8 translates of H(5,4,4,3) under Z_8.
pub fn lh_5_4() -> Result<LargeSetH> {
    let moving: Vec<Point> = (0..8).collect();
    let lh = LargeSetH::new(5, 4, 4, 3, h_5_4().orbit_cyclic(8, &moving)?)?;
    verify_lh(&lh)?;
    Ok(lh)
}

/// The 9 translates of H(6,3,4,3) under Z_9.
pub fn lh_6_3() -> Result<LargeSetH> {
    let moving: Vec<Point> = (0..9).collect();
    let lh = LargeSetH::new(6, 3, 4, 3, h_6_3().orbit_cyclic(9, &moving)?)?;
    verify_lh(&lh)?;
    Ok(lh)
}

pub fn lh_7_2() -> Result<LargeSetH> {
    let lh = LargeSetH::new(7, 2, 4, 3, h_7_2().apply_perms(&perms_h7())?)?;
    verify_lh(&lh)?;
    Ok(lh)
}

/// Verifies a labelled seed after relabelling.
pub fn verify_labeled(d: &LabeledHDesign) -> Result<()> {
    verify_h(&d.to_grouped()?)?;
    Ok(())
}

/// Blocks through `p` with `p` removed; points above `p` shift down by one.
pub fn derived_design(s: &Design, p: Point) -> Result<Design> {
    if p as usize >= s.n() || s.t() < 2 {
        return Err(invalid(format!("cannot derive S({},{},{}) at point {p}", s.t(), s.k(), s.n())));
    }
    verify_steiner(s)?;
    let blocks = s
        .blocks()
        .filter(|b| b.contains(&p))
        .map(|b| b.iter().filter(|&&x| x != p).map(|&x| if x > p { x - 1 } else { x }).collect::<Vec<_>>());
    Design::new(s.t() - 1, s.k() - 1, s.n() - 1, blocks)
}

/// {X ∪ {n}} ∪ {complement of X}: S(t,t+1,2t+3) to S(t+1,t+2,2t+4).
pub fn extend_complement(s: &Design) -> Result<Design> {
    let (t, k, n) = (s.t(), s.k(), s.n());
    if k != t + 1 || n != 2 * k + 1 {
        return Err(invalid(format!("complement extension needs S(t,t+1,2t+3), got S({t},{k},{n})")));
    }
    verify_steiner(s)?;
    let mut blocks: Vec<Vec<Point>> = Vec::with_capacity(2 * s.num_blocks());
    for b in s.blocks() {
        let mut up = b.to_vec();
        up.push(n as Point);
        blocks.push(up);
        blocks.push((0..n as Point).filter(|x| !b.contains(x)).collect());
    }
    let out = Design::from_unsorted(t + 1, k + 1, n + 1, blocks)?;
    verify_steiner(&out)?;
    Ok(out)
}

fn verified(ls: LargeSet) -> Result<LargeSet> {
    verify_ls(&ls)?;
    Ok(ls)
}

/// The base system and its images under the 13 tabled permutations.
pub fn ls_4_5_11_2() -> Result<LargeSet> {
    let s = s_4_5_11();
    let mut systems = vec![s.clone()];
    systems.extend(apply_perms(&s, &perms_s11())?);
    verified(LargeSet::new(4, 5, 11, 2, systems)?)
}

pub fn ls_3_4_10_2() -> Result<LargeSet> {
    let systems = ls_4_5_11_2()?.systems.iter().map(|s| derived_design(s, 10)).collect::<Result<_>>()?;
    verified(LargeSet::new(3, 4, 10, 2, systems)?)
}

pub fn ls_3_4_10_3() -> Result<LargeSet> {
    let s = derived_design(&s_4_5_11(), 10)?;
    let mut systems = vec![s.clone()];
    systems.extend(apply_perms(&s, &perms_s10())?);
    verified(LargeSet::new(3, 4, 10, 3, systems)?)
}

pub fn ls_5_6_12_2() -> Result<LargeSet> {
    let systems = ls_4_5_11_2()?.systems.iter().map(extend_complement).collect::<Result<_>>()?;
    verified(LargeSet::new(5, 6, 12, 2, systems)?)
}

/// `a` copies of the μ=2 set followed by `b` copies of the μ=3 set, 2a + 3b = μ, b minimal.
pub fn ls_3_4_10(mu: u64) -> Result<LargeSet> {
    if mu < 2 {
        return Err(invalid(format!("LS(3,4,10;μ) needs μ >= 2, got {mu}")));
    }
    let b = if mu.is_multiple_of(2) { 0 } else { 1 };
    let a = (mu - 3 * b) / 2;
    let two = ls_3_4_10_2()?;
    let three = if b > 0 { Some(ls_3_4_10_3()?) } else { None };
    let mut acc = LargeSet::new(3, 4, 10, 0, Vec::new())?;
    for _ in 0..a {
        acc = union_ls(&acc, &two)?;
    }
    if let Some(three) = &three {
        for _ in 0..b {
            acc = union_ls(&acc, three)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_resolve() {
        for name in SEED_NAMES {
            assert!(seed(name).is_ok(), "{name}");
        }
        assert!(matches!(seed("s_4_5_12"), Err(Error::UnknownSeed(_))));
    }

    #[test]
    fn permutation_tables_are_bijections() {
        for p in perms_s11() {
            check_permutation(&p, 11).unwrap();
        }
        for p in perms_s10() {
            check_permutation(&p, 10).unwrap();
        }
        for p in perms_h7() {
            check_permutation(&p, 14).unwrap();
        }
        assert_eq!((perms_s11().len(), perms_s10().len(), perms_h7().len()), (13, 20, 8));
    }

    #[test]
    fn derived_of_sqs4() {
        let d = derived_design(&sqs4(), 3).unwrap();
        assert_eq!((d.t(), d.k(), d.n(), d.num_blocks()), (2, 3, 3, 1));
        assert_eq!(d.block(0), &[0, 1, 2]);
    }

    #[test]
    fn orbit_translate_zero_is_identity() {
        let h = h_6_3();
        let moving: Vec<Point> = (0..9).collect();
        let orbit = h.orbit_cyclic(9, &moving).unwrap();
        assert_eq!(orbit[0], h.to_grouped().unwrap());
        assert!(h.orbit_cyclic(9, &moving[1..]).is_err());
    }

    #[test]
    fn ls_3_4_10_composition() {
        assert_eq!(ls_3_4_10(2).unwrap().systems.len(), 14);
        assert_eq!(ls_3_4_10(3).unwrap().systems.len(), 21);
        assert_eq!(ls_3_4_10(5).unwrap().systems.len(), 35);
        assert!(ls_3_4_10(1).is_err());
    }
}
