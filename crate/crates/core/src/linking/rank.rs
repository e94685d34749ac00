use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{factorize, FinAbGroup, GroupElement, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};

use super::classify::{normal_form, NormalForm};
use super::morphism::WPairs;
use super::{FormMorphism, LinkingForm, Subform};

#[derive(Clone, Debug, Serialize)]
pub struct RankBudget {
    /// Morphisms tried across the whole search.
    pub max_nodes: u64,
    /// Cap on `|M[k]|` for torsion enumeration.
    pub enumeration_cap: u64,
}

impl Default for RankBudget {
    fn default() -> Self {
        RankBudget {
            max_nodes: 2_000_000,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankResult {
    pub rank: usize,
    /// The search was exhaustive or met the upper bound.
    pub certified: bool,
    pub upper_bound: usize,
    pub nodes: u64,
    /// Pairwise orthogonal morphisms `W_k -> M`, `rank` of them.
    #[serde(skip)]
    pub witness: Vec<FormMorphism>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StableRankResult {
    pub value: usize,
    pub certified: bool,
    pub upper_bound: usize,
    /// `(g, k_rank(M ⊕ W_k^g), certified)` for each `g <= g_max`.
    pub per_g: Vec<(usize, usize, bool)>,
}

/// Half the number of `p^a`-divisible invariant factors of
/// `M[k] / rad(b|M[k])`, minimised over the prime powers `p^a || k`.
///
/// A copy of `W_k^g` inside `M` is nonsingular, so it meets that radical
/// trivially and embeds `(Z/k)^{2g}` into the quotient.
pub fn rank_upper_bound(m: &LinkingForm, k: u64) -> usize {
    let t = m.restrict(&m.group().torsion_subgroup(k));
    if t.rank() == 0 || t.denom() < 2 {
        return 0;
    }
    let dual = FinAbGroup::new(vec![t.denom(); t.rank()]).expect("denom >= 2");
    let rows: Vec<GroupElement> = t
        .group()
        .generators()
        .iter()
        .map(|x| {
            let row: Vec<i128> = t.pairing_row(x).into_iter().map(i128::from).collect();
            dual.element(&row).expect("row reduced mod denom")
        })
        .collect();
    let q = dual.realize_subgroup(&rows);
    factorize(k)
        .into_iter()
        .map(|(p, a)| {
            let pa = p.pow(a);
            q.orders.iter().filter(|&&d| d % pa == 0).count() / 2
        })
        .min()
        .unwrap_or(0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum MemoKey {
    Nonsingular(NormalForm),
    Exact(LinkingForm),
}

struct Searcher {
    k: u64,
    budget: RankBudget,
    nodes: u64,
    memo: HashMap<MemoKey, (usize, bool)>,
}

impl Searcher {
    fn new(k: u64, budget: RankBudget) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        Ok(Searcher {
            k,
            budget,
            nodes: 0,
            memo: HashMap::new(),
        })
    }

    fn key(n: &LinkingForm) -> MemoKey {
        if n.is_nonsingular() {
            if let Ok(nf) = normal_form(n) {
                return MemoKey::Nonsingular(nf);
            }
        }
        MemoKey::Exact(n.clone())
    }

    fn search(&mut self, n: &LinkingForm) -> Result<(usize, bool)> {
        let key = Self::key(n);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let bound = rank_upper_bound(n, self.k);
        let mut best = 0;
        let mut certified = true;
        if bound > 0 {
            for (x, y) in WPairs::new(n, self.k, self.budget.enumeration_cap)? {
                if self.nodes >= self.budget.max_nodes {
                    certified = false;
                    break;
                }
                self.nodes += 1;
                let sub = complement_of_pair(n, x, y).form;
                let (r, c) = self.search(&sub)?;
                certified &= c;
                best = best.max(r + 1);
                if best == bound {
                    certified = true;
                    break;
                }
            }
        }
        self.memo.insert(key, (best, certified));
        Ok((best, certified))
    }

    /// Morphisms realising `r` in `n`'s coordinates, guided by the memo.
    fn witness(&mut self, n: &LinkingForm, r: usize) -> Result<Vec<(GroupElement, GroupElement)>> {
        if r == 0 {
            return Ok(Vec::new());
        }
        for (x, y) in WPairs::new(n, self.k, self.budget.enumeration_cap)? {
            let sub = complement_of_pair(n, x.clone(), y.clone());
            if self.search(&sub.form)?.0 + 1 >= r {
                let mut out = vec![(x, y)];
                for (a, b) in self.witness(&sub.form, r - 1)? {
                    out.push((sub.embed(&a), sub.embed(&b)));
                }
                return Ok(out);
            }
        }
        Err(Error::Construction(
            "rank witness could not be rebuilt".into(),
        ))
    }

    fn run(&mut self, m: &LinkingForm) -> Result<RankResult> {
        let start = self.nodes;
        let (rank, certified) = self.search(m)?;
        let w = LinkingForm::standard_w(self.k)?;
        let witness = self
            .witness(m, rank)?
            .into_iter()
            .map(|(x, y)| FormMorphism::new(w.clone(), m.clone(), vec![x, y]))
            .collect::<Result<_>>()?;
        Ok(RankResult {
            rank,
            certified,
            upper_bound: rank_upper_bound(m, self.k),
            nodes: self.nodes - start,
            witness,
        })
    }
}

fn complement_of_pair(n: &LinkingForm, x: GroupElement, y: GroupElement) -> super::Realized {
    Subform::new(n.clone(), vec![x, y])
        .expect("pair lies in the form")
        .complement()
        .realize()
}

/// Largest `g` with `g` pairwise orthogonal morphisms `W_k -> M`, by
/// branch-and-bound over morphisms into successive complements.
pub fn k_rank(m: &LinkingForm, k: u64, budget: &RankBudget) -> Result<RankResult> {
    Searcher::new(k, budget.clone())?.run(m)
}

/// `max_{g <= g_max} k_rank(M ⊕ W_k^g) - g`. Each term is bounded by
/// [`rank_upper_bound`] of `M`, so reaching it certifies the stable value.
pub fn stable_k_rank(
    m: &LinkingForm,
    k: u64,
    g_max: usize,
    budget: &RankBudget,
) -> Result<StableRankResult> {
    let mut searcher = Searcher::new(k, budget.clone())?;
    let w = LinkingForm::standard_w(k)?;
    let upper_bound = rank_upper_bound(m, k);
    let mut value = 0;
    let mut per_g = Vec::new();
    let mut current = m.clone();
    for g in 0..=g_max {
        searcher.nodes = 0;
        let (r, c) = searcher.search(&current)?;
        per_g.push((g, r, c));
        value = value.max(r.saturating_sub(g));
        if value == upper_bound {
            break;
        }
        current = current.direct_sum(&w);
    }
    Ok(StableRankResult {
        value,
        certified: value == upper_bound,
        upper_bound,
        per_g,
    })
}

/// Pairwise orthogonal `W_k` morphisms assembled into one `W_k^g -> M`.
pub fn assemble(witness: &[FormMorphism]) -> Result<Option<FormMorphism>> {
    let mut it = witness.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    it.try_fold(first.clone(), |acc, f| acc.join(f)).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: u64) -> LinkingForm {
        LinkingForm::standard_w(k).unwrap()
    }

    #[test]
    fn small_ranks() {
        let b = RankBudget::default();
        let r = k_rank(&w(3), 3, &b).unwrap();
        assert_eq!((r.rank, r.certified), (1, true));
        let r = k_rank(&w(3).direct_sum(&w(3)), 3, &b).unwrap();
        assert_eq!((r.rank, r.certified), (2, true));
        assert!(assemble(&r.witness).unwrap().unwrap().is_injective());
        let r = k_rank(&LinkingForm::trivial(), 3, &b).unwrap();
        assert_eq!((r.rank, r.certified), (0, true));
        // the 3-torsion of W_9 is totally isotropic
        let r = k_rank(&w(9), 3, &b).unwrap();
        assert_eq!((r.rank, r.certified), (0, true));
        let r = k_rank(&w(3).direct_sum(&w(9)), 3, &b).unwrap();
        assert_eq!((r.rank, r.certified), (1, true));
        // W_6 contains W_2 and W_3
        assert_eq!(k_rank(&w(6), 2, &b).unwrap().rank, 1);
        assert_eq!(k_rank(&w(6), 6, &b).unwrap().rank, 1);
        assert_eq!(k_rank(&w(2).direct_sum(&w(3)), 6, &b).unwrap().rank, 1);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(rank_upper_bound(&w(3), 3), 1);
        assert_eq!(rank_upper_bound(&w(9), 3), 0);
        assert_eq!(rank_upper_bound(&w(9).direct_sum(&w(3)), 3), 1);
        assert_eq!(
            rank_upper_bound(&LinkingForm::standard_w_power(3, 3).unwrap(), 3),
            3
        );
        assert_eq!(rank_upper_bound(&w(2), 6), 0);
    }

    #[test]
    fn stable_ranks() {
        let b = RankBudget::default();
        let s = stable_k_rank(&w(3).direct_sum(&w(3)), 3, 2, &b).unwrap();
        assert_eq!((s.value, s.certified), (2, true));
        let s = stable_k_rank(&LinkingForm::trivial(), 3, 2, &b).unwrap();
        assert_eq!((s.value, s.certified), (0, true));
        let s = stable_k_rank(&w(3), 3, 2, &b).unwrap();
        assert_eq!((s.value, s.certified), (1, true));
    }

    #[test]
    fn budget_degrades_to_uncertified() {
        // a singular form whose bound is not met forces an exhaustive scan
        let m = w(3).direct_sum(&w(9));
        let sub = Subform::new(
            m.clone(),
            vec![
                m.group().generator(0),
                m.group().element(&[0, 0, 3, 0]).unwrap(),
            ],
        )
        .unwrap()
        .realize()
        .form;
        let full = k_rank(&sub, 3, &RankBudget::default()).unwrap();
        assert!(full.certified);
        let tiny = RankBudget {
            max_nodes: 0,
            ..RankBudget::default()
        };
        let r = k_rank(&LinkingForm::standard_w_power(3, 2).unwrap(), 3, &tiny).unwrap();
        assert_eq!((r.rank, r.certified), (0, false));
    }
}
