//! Finite abelian groups presented as `Z/d_1 + ... + Z/d_r`.
//!
//! Elements are plain coefficient vectors; the group that owns them does the
//! arithmetic, so vectors can be stored and hashed cheaply in large tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{hermite_rows, IntMatrix};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Default cap on streamed enumeration of group elements.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

/// Residue vector `coeffs[i] in [0, d_i)` relative to some [`FinAbGroup`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation, i.e. the element `(self, other)` of a direct sum.
    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupElement(v)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One linear congruence `sum_i coeffs[i] * z_i = 0 (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub coeffs: Vec<i128>,
    pub modulus: u64,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        FinAbGroup::new(orders)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Vec<u64> {
        g.orders
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(&d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidOrder(d));
        }
        let mut card: u64 = 1;
        for &d in &orders {
            card = card.checked_mul(d).ok_or(Error::CapExceeded {
                what: "group cardinality",
                count: orders
                    .iter()
                    .map(|&d| d as u128)
                    .fold(1u128, u128::saturating_mul),
                cap: u64::MAX as u128,
            })?;
        }
        Ok(FinAbGroup { orders })
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of generators of the presentation.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &d| a.lcm(&d))
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup::new(orders).expect("direct sum of valid groups")
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Reduces arbitrary integer coefficients into an element.
    pub fn element(&self, coeffs: &[i128]) -> Result<GroupElement> {
        self.check_len(coeffs.len())?;
        Ok(GroupElement(
            coeffs
                .iter()
                .zip(&self.orders)
                .map(|(&c, &d)| c.rem_euclid(d as i128) as u64)
                .collect(),
        ))
    }

    pub(crate) fn element_from_big(&self, coeffs: &[BigInt]) -> GroupElement {
        GroupElement(
            coeffs
                .iter()
                .zip(&self.orders)
                .map(|(c, &d)| {
                    c.mod_floor(&BigInt::from(d))
                        .to_u64()
                        .expect("residue fits")
                })
                .collect(),
        )
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::GroupMismatch {
                expected: self.rank(),
                got,
            });
        }
        Ok(())
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        self.check_len(x.len())?;
        if let Some(i) = x.0.iter().zip(&self.orders).position(|(&c, &d)| c >= d) {
            return Err(Error::InvalidFraction(format!(
                "coefficient {} out of range mod {}",
                x.0[i], self.orders[i]
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((&a, &b), &d)| ((a as u128 + b as u128) % d as u128) as u64)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &d)| (d - a) % d)
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &GroupElement, n: i128) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &d)| {
                    let m = n.rem_euclid(d as i128) as u128;
                    ((a as u128 * m) % d as u128) as u64
                })
                .collect(),
        )
    }

    /// `sum_i coeffs[i] * elems[i]`
    pub fn combination(&self, coeffs: &[i128], elems: &[GroupElement]) -> GroupElement {
        coeffs.iter().zip(elems).fold(self.zero(), |acc, (&c, e)| {
            self.add(&acc, &self.scale(e, c))
        })
    }

    /// Least `n >= 1` with `n x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// Streams every element exactly once in lexicographic coefficient order.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>> {
        let card = self.cardinality();
        if card > cap {
            return Err(Error::CapExceeded {
                what: "group enumeration",
                count: card as u128,
                cap: cap as u128,
            });
        }
        Ok(Elements {
            orders: &self.orders,
            next: Some(vec![0; self.rank()]),
        })
    }

    /// Basis of the `k`-torsion subgroup `{x : k x = 0}`.
    pub fn torsion_subgroup(&self, k: u64) -> SubgroupBasis {
        let mut orders = Vec::new();
        let mut basis = Vec::new();
        for (i, &d) in self.orders.iter().enumerate() {
            let g = d.gcd(&k);
            if g > 1 {
                orders.push(g);
                basis.push(self.scale(&self.generator(i), (d / g) as i128));
            }
        }
        SubgroupBasis { orders, basis }
    }

    /// Generators of `{z : sum_i c_i z_i = 0 mod m for every row}`.
    ///
    /// The generating set is canonical: it is the Hermite basis of the
    /// solution lattice in `Z^r`, reduced into the group with zeros dropped.
    pub fn solve_congruence_system(&self, rows: &[Congruence]) -> Result<Vec<GroupElement>> {
        let r = self.rank();
        for (idx, row) in rows.iter().enumerate() {
            self.check_len(row.coeffs.len())?;
            if row.modulus == 0 {
                return Err(Error::IllDefinedCongruence { row: idx });
            }
            let m = row.modulus as u128;
            let ill = row.coeffs.iter().zip(&self.orders).any(|(&c, &d)| {
                !(c.rem_euclid(m as i128) as u128 * (d as u128 % m)).is_multiple_of(m)
            });
            if ill {
                return Err(Error::IllDefinedCongruence { row: idx });
            }
        }
        let rows: Vec<&Congruence> = rows.iter().filter(|c| c.modulus > 1).collect();
        let s = rows.len();
        let mut lattice: Vec<Vec<BigInt>> = Vec::new();
        if s > 0 {
            let mut a = IntMatrix::zeros(s, r + s);
            for (i, row) in rows.iter().enumerate() {
                for (j, &c) in row.coeffs.iter().enumerate() {
                    a[(i, j)] = BigInt::from(c);
                }
                a[(i, r + i)] = BigInt::from(row.modulus);
            }
            for v in smith_normal_form(&a).kernel_basis() {
                lattice.push(v[..r].to_vec());
            }
        } else {
            for i in 0..r {
                let mut v = vec![BigInt::zero(); r];
                v[i] = BigInt::from(1);
                lattice.push(v);
            }
        }
        for (i, &d) in self.orders.iter().enumerate() {
            let mut v = vec![BigInt::zero(); r];
            v[i] = BigInt::from(d);
            lattice.push(v);
        }
        let mut out: Vec<GroupElement> = Vec::new();
        for row in hermite_rows(lattice, r) {
            let e = self.element_from_big(&row);
            if !e.is_zero() && !out.contains(&e) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Realizes the subgroup generated by `gens` with an explicit basis.
    pub fn realize_subgroup(&self, gens: &[GroupElement]) -> SubgroupBasis {
        let gens: Vec<&GroupElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        let (r, t) = (self.rank(), gens.len());
        if t == 0 {
            return SubgroupBasis {
                orders: Vec::new(),
                basis: Vec::new(),
            };
        }
        // relations among the generators: kernel of [S | diag(d)]
        let mut a = IntMatrix::zeros(r, t + r);
        for (j, g) in gens.iter().enumerate() {
            for i in 0..r {
                a[(i, j)] = BigInt::from(g.0[i]);
            }
        }
        for (i, &d) in self.orders.iter().enumerate() {
            a[(i, t + i)] = BigInt::from(d);
        }
        let relations: Vec<Vec<BigInt>> = smith_normal_form(&a)
            .kernel_basis()
            .into_iter()
            .map(|v| v[..t].to_vec())
            .collect();
        let rel = IntMatrix::from_big_rows(relations, t);
        let snf = smith_normal_form(&rel);
        let mut orders = Vec::new();
        let mut basis = Vec::new();
        for (j, e) in snf.diag.iter().enumerate() {
            let e = e
                .to_u64()
                .expect("subgroup orders are bounded by the group order");
            if e == 1 {
                continue;
            }
            debug_assert!(e != 0, "relation lattice must have full rank");
            let mut acc = vec![BigInt::zero(); r];
            for (i, g) in gens.iter().enumerate() {
                let c = &snf.right_inverse[(j, i)];
                if c.is_zero() {
                    continue;
                }
                for (slot, &gi) in acc.iter_mut().zip(&g.0) {
                    *slot += c * BigInt::from(gi);
                }
            }
            orders.push(e);
            basis.push(self.element_from_big(&acc));
        }
        SubgroupBasis { orders, basis }
    }

    pub fn subgroup_order(&self, gens: &[GroupElement]) -> u64 {
        self.realize_subgroup(gens).order()
    }

    /// All homomorphisms into the cyclic group `Z/k`, as image tables.
    pub fn homs_to_cyclic(&self, k: u64) -> Result<Vec<GroupHom>> {
        let target = FinAbGroup::cyclic(k)?;
        let choices: Vec<Vec<u64>> = self
            .orders
            .iter()
            .map(|&d| {
                let step = k / d.gcd(&k);
                (0..k).step_by(step as usize).collect()
            })
            .collect();
        let total: u128 = choices.iter().map(|c| c.len() as u128).product();
        if total > DEFAULT_ENUMERATION_CAP as u128 {
            return Err(Error::CapExceeded {
                what: "homomorphism enumeration",
                count: total,
                cap: DEFAULT_ENUMERATION_CAP as u128,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; self.rank()];
        loop {
            let images = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| GroupElement(vec![c[i]]))
                .collect();
            out.push(GroupHom {
                source: self.clone(),
                target: target.clone(),
                images,
            });
            let mut pos = self.rank();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

pub struct Elements<'a> {
    orders: &'a [u64],
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        self.next = loop {
            if pos == 0 {
                break None;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.orders[pos] {
                break Some(succ);
            }
            succ[pos] = 0;
        };
        Some(GroupElement(current))
    }
}

/// A subgroup `H` with a basis: `H = Z/orders[0] b_0 + ... ` (internal direct
/// sum), basis elements given in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupBasis {
    pub orders: Vec<u64>,
    pub basis: Vec<GroupElement>,
}

impl SubgroupBasis {
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::new(self.orders.clone()).expect("subgroup orders are valid")
    }

    /// Maps an element in basis coordinates to ambient coordinates.
    pub fn embed(&self, ambient: &FinAbGroup, x: &GroupElement) -> GroupElement {
        x.0.iter()
            .zip(&self.basis)
            .fold(ambient.zero(), |acc, (&c, b)| {
                ambient.add(&acc, &ambient.scale(b, c as i128))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::GroupMismatch {
                expected: source.rank(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            target.check(img)?;
            if !target.scale(img, source.orders[i] as i128).is_zero() {
                return Err(Error::IllDefinedHom { generator: i });
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let images = vec![target.zero(); source.rank()];
        GroupHom {
            source,
            target,
            images,
        }
    }

    pub fn identity(g: FinAbGroup) -> Self {
        let images = g.generators();
        GroupHom {
            source: g.clone(),
            target: g,
            images,
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        x.0.iter()
            .zip(&self.images)
            .fold(self.target.zero(), |acc, (&c, img)| {
                self.target.add(&acc, &self.target.scale(img, c as i128))
            })
    }

    /// Generators of the kernel.
    pub fn kernel(&self) -> Vec<GroupElement> {
        let rows: Vec<Congruence> = (0..self.target.rank())
            .map(|k| Congruence {
                coeffs: self.images.iter().map(|img| img.0[k] as i128).collect(),
                modulus: self.target.orders[k],
            })
            .collect();
        self.source
            .solve_congruence_system(&rows)
            .expect("rows of a well-defined hom are well defined")
    }

    pub fn image_order(&self) -> u64 {
        self.target.subgroup_order(&self.images)
    }
}

/// Generators of the kernel of `h`.
pub fn hom_kernel(h: &GroupHom) -> Vec<GroupElement> {
    h.kernel()
}
