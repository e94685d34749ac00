use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, GroupElement};
use crate::error::{Error, Result};

use super::hyperbolic::hyperbolic_basis;
use super::LinkingForm;

/// Default cardinality cap for the brute-force isomorphism search.
pub const ISO_SEARCH_CAP: u64 = 10_000;
const ISO_NODE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimaryPart {
    pub prime: u64,
    pub exponent: u32,
    pub multiplicity: usize,
}

impl PrimaryPart {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// The multiset `{(p, n, l)}` of `⊕ W_{p^n}^l`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalForm {
    pub parts: Vec<PrimaryPart>,
}

impl NormalForm {
    pub fn from_orders(orders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut counts: BTreeMap<(u64, u32), usize> = BTreeMap::new();
        for n in orders {
            let f = factorize(n);
            match f.as_slice() {
                [(p, e)] => *counts.entry((*p, *e)).or_default() += 1,
                _ => return Err(Error::Construction(format!("{n} is not a prime power"))),
            }
        }
        let parts = counts
            .into_iter()
            .map(|((prime, exponent), multiplicity)| PrimaryPart {
                prime,
                exponent,
                multiplicity,
            })
            .collect();
        Ok(NormalForm { parts })
    }

    /// `⊕ W_{p^n}^l` in sorted order.
    pub fn reconstruct(&self) -> LinkingForm {
        let mut m = LinkingForm::trivial();
        for part in &self.parts {
            let w = LinkingForm::standard_w(part.order()).expect("prime powers are at least 2");
            for _ in 0..part.multiplicity {
                m = m.direct_sum(&w);
            }
        }
        m
    }

    pub fn cardinality(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.order().pow(2 * p.multiplicity as u32))
            .product()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("W_{{{}}}^{{{}}}", p.order(), p.multiplicity))
            .collect();
        write!(f, "{}", s.join(" ⊕ "))
    }
}

pub fn normal_form(m: &LinkingForm) -> Result<NormalForm> {
    NormalForm::from_orders(hyperbolic_basis(m, true)?.into_iter().map(|p| p.order))
}

/// Isomorphism test: normal forms when both sides are nonsingular, an
/// exhaustive search otherwise.
pub fn are_isomorphic(m: &LinkingForm, n: &LinkingForm) -> Result<bool> {
    are_isomorphic_with_cap(m, n, ISO_SEARCH_CAP)
}

pub fn are_isomorphic_with_cap(m: &LinkingForm, n: &LinkingForm, cap: u64) -> Result<bool> {
    if m.cardinality() != n.cardinality() {
        return Ok(false);
    }
    match (m.is_nonsingular(), n.is_nonsingular()) {
        (true, true) => Ok(normal_form(m)? == normal_form(n)?),
        (false, false) => Ok(find_isomorphism(m, n, cap)?.is_some()),
        _ => Ok(false),
    }
}

/// Images of `m`'s generators under some form isomorphism `m -> n`, found by
/// backtracking over generator images.
pub fn find_isomorphism(
    m: &LinkingForm,
    n: &LinkingForm,
    cap: u64,
) -> Result<Option<Vec<GroupElement>>> {
    let card = n.cardinality();
    if card > cap || m.cardinality() > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search",
            count: card.max(m.cardinality()) as u128,
            cap: cap as u128,
        });
    }
    if m.cardinality() != card {
        return Ok(None);
    }
    let mg = m.group();
    if mg.realize_subgroup(&mg.generators()).orders
        != n.group().realize_subgroup(&n.group().generators()).orders
    {
        return Ok(None);
    }
    let orders = mg.orders();
    let candidates: Vec<Vec<GroupElement>> = orders
        .iter()
        .map(|&d| crate::linking::morphism::sorted_torsion(n, d, cap))
        .collect::<Result<_>>()?;
    let gens = mg.generators();
    let prefix_orders: Vec<u64> = (0..=gens.len())
        .map(|i| mg.subgroup_order(&gens[..i]))
        .collect();
    let mut search = IsoSearch {
        m,
        n,
        candidates,
        prefix_orders,
        chosen: Vec::new(),
        nodes: 0,
    };
    if search.extend()? {
        Ok(Some(search.chosen))
    } else {
        Ok(None)
    }
}

struct IsoSearch<'a> {
    m: &'a LinkingForm,
    n: &'a LinkingForm,
    candidates: Vec<Vec<GroupElement>>,
    prefix_orders: Vec<u64>,
    chosen: Vec<GroupElement>,
    nodes: u64,
}

impl IsoSearch<'_> {
    fn extend(&mut self) -> Result<bool> {
        let i = self.chosen.len();
        if i == self.candidates.len() {
            return Ok(true);
        }
        for c in 0..self.candidates[i].len() {
            self.nodes += 1;
            if self.nodes > ISO_NODE_BUDGET {
                return Err(Error::BudgetExhausted(format!(
                    "isomorphism search after {} nodes",
                    self.nodes
                )));
            }
            let u = self.candidates[i][c].clone();
            let row = self.n.pairing_row(&u);
            let consistent = self.chosen.iter().enumerate().all(|(j, v)| {
                let got =
                    crate::arith::QZValue::new(self.n.pair_row(&row, v) as i128, self.n.denom())
                        .expect("denom > 0");
                got == self.m.gram()[i][j]
            });
            if !consistent {
                continue;
            }
            self.chosen.push(u);
            if self.n.group().subgroup_order(&self.chosen) == self.prefix_orders[i + 1]
                && self.extend()?
            {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FinAbGroup, QZValue};

    fn w(k: u64) -> LinkingForm {
        LinkingForm::standard_w(k).unwrap()
    }

    #[test]
    fn normal_forms_of_standard_forms() {
        assert_eq!(normal_form(&w(9)).unwrap().to_string(), "W_{9}^{1}");
        let nf = normal_form(&w(6)).unwrap();
        assert_eq!(
            nf.parts,
            vec![
                PrimaryPart {
                    prime: 2,
                    exponent: 1,
                    multiplicity: 1
                },
                PrimaryPart {
                    prime: 3,
                    exponent: 1,
                    multiplicity: 1
                }
            ]
        );
        assert_eq!(
            normal_form(&LinkingForm::trivial()).unwrap().to_string(),
            "0"
        );
        assert_eq!(
            normal_form(&w(3).direct_sum(&w(9))).unwrap().to_string(),
            "W_{3}^{1} ⊕ W_{9}^{1}"
        );
    }

    #[test]
    fn scrambled_w3() {
        let g = FinAbGroup::new(vec![3, 3]).unwrap();
        let q: QZValue = "2/3".parse().unwrap();
        let m = LinkingForm::new(g, vec![vec![QZValue::ZERO, q], vec![-q, QZValue::ZERO]]).unwrap();
        assert_eq!(normal_form(&m).unwrap(), normal_form(&w(3)).unwrap());
        // the brute-force search agrees
        assert!(find_isomorphism(&m, &w(3), ISO_SEARCH_CAP)
            .unwrap()
            .is_some());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(&w(2).direct_sum(&w(3)), &w(6)).unwrap());
        assert!(!are_isomorphic(&w(3).direct_sum(&w(9)), &w(27)).unwrap());
        let m = w(3).direct_sum(&w(3));
        assert!(are_isomorphic(&m, &m).unwrap());
        assert!(
            find_isomorphism(&w(2).direct_sum(&w(3)), &w(6), ISO_SEARCH_CAP)
                .unwrap()
                .is_some()
        );
        assert!(find_isomorphism(&w(3).direct_sum(&w(9)), &w(27), 100_000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn singular_forms_by_search() {
        let z = |orders: Vec<u64>| {
            let r = orders.len();
            LinkingForm::new(
                FinAbGroup::new(orders).unwrap(),
                vec![vec![QZValue::ZERO; r]; r],
            )
            .unwrap()
        };
        assert!(are_isomorphic(&z(vec![2, 3]), &z(vec![6])).unwrap());
        assert!(!are_isomorphic(&z(vec![3, 3]), &z(vec![9])).unwrap());
        // W_3 plus a null Z/3 versus a null (Z/3)^3
        let a = w(3).direct_sum(&z(vec![3]));
        assert!(!are_isomorphic(&a, &z(vec![3, 3, 3])).unwrap());
        assert!(are_isomorphic(&a, &z(vec![3]).direct_sum(&w(3))).unwrap());
    }

    #[test]
    fn reconstruct_round_trip() {
        let nf = NormalForm::from_orders([4, 2, 3, 3, 9]).unwrap();
        assert_eq!(
            nf.to_string(),
            "W_{2}^{1} ⊕ W_{4}^{1} ⊕ W_{3}^{2} ⊕ W_{9}^{1}"
        );
        assert_eq!(normal_form(&nf.reconstruct()).unwrap(), nf);
        assert_eq!(nf.cardinality(), nf.reconstruct().cardinality());
    }
}
