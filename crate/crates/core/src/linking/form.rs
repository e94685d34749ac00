use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{extended_gcd, Congruence, FinAbGroup, GroupElement, QZValue, SubgroupBasis};
use crate::error::{Error, Result};

/// A strictly skew-symmetric bilinear form `b: M x M -> Q/Z` on a finite
/// abelian group, stored as its Gram table on the presentation generators.
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct LinkingForm {
    inner: Arc<FormData>,
}

#[derive(PartialEq, Eq, Hash)]
struct FormData {
    group: FinAbGroup,
    gram: Vec<Vec<QZValue>>,
    // gram[i][j] == scaled[i][j] / denom
    denom: u64,
    scaled: Vec<Vec<u64>>,
}

impl PartialEq for LinkingForm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for LinkingForm {}

impl std::hash::Hash for LinkingForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.hash(state)
    }
}

impl fmt::Debug for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinkingForm")
            .field("orders", &self.inner.group.orders())
            .field("gram", &self.inner.gram)
            .finish()
    }
}

impl LinkingForm {
    /// Validates well-definedness, skew-symmetry and a zero diagonal.
    pub fn new(group: FinAbGroup, gram: Vec<Vec<QZValue>>) -> Result<Self> {
        let r = group.rank();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::GramShape { expected: r });
        }
        let orders = group.orders();
        for i in 0..r {
            if !gram[i][i].is_zero() {
                return Err(Error::NotStrict {
                    i,
                    value: gram[i][i].to_string(),
                });
            }
            for j in 0..r {
                let q = gram[i][j];
                if !q.scale(orders[i] as i128).is_zero() || !q.scale(orders[j] as i128).is_zero() {
                    return Err(Error::IllDefinedForm {
                        i,
                        j,
                        value: q.to_string(),
                        di: orders[i],
                        dj: orders[j],
                    });
                }
                if gram[j][i] != -q {
                    return Err(Error::NotSkew {
                        i: i.min(j),
                        j: i.max(j),
                    });
                }
            }
        }
        Ok(Self::from_valid(group, gram))
    }

    fn from_valid(group: FinAbGroup, gram: Vec<Vec<QZValue>>) -> Self {
        let denom = gram
            .iter()
            .flatten()
            .fold(1u64, |acc, q| acc.lcm(&q.denominator()));
        let scaled = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| q.numerator_over(denom).expect("denominator divides lcm"))
                    .collect()
            })
            .collect();
        LinkingForm {
            inner: Arc::new(FormData {
                group,
                gram,
                denom,
                scaled,
            }),
        }
    }

    pub fn trivial() -> Self {
        Self::from_valid(FinAbGroup::trivial(), Vec::new())
    }

    /// `W_k` on `Z/k + Z/k` with `b(rho, sigma) = 1/k = -b(sigma, rho)`.
    pub fn standard_w(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        let u = QZValue::unit_fraction(k);
        let gram = vec![vec![QZValue::ZERO, u], vec![-u, QZValue::ZERO]];
        Ok(Self::from_valid(FinAbGroup::new(vec![k, k])?, gram))
    }

    /// The `g`-fold orthogonal sum `W_k^g`.
    pub fn standard_w_power(k: u64, g: usize) -> Result<Self> {
        let w = Self::standard_w(k)?;
        Ok((0..g).fold(Self::trivial(), |acc, _| acc.direct_sum(&w)))
    }

    /// Block-diagonal orthogonal sum.
    pub fn direct_sum(&self, other: &LinkingForm) -> LinkingForm {
        let (r1, r2) = (self.rank(), other.rank());
        let mut gram = vec![vec![QZValue::ZERO; r1 + r2]; r1 + r2];
        for i in 0..r1 {
            for j in 0..r1 {
                gram[i][j] = self.inner.gram[i][j];
            }
        }
        for i in 0..r2 {
            for j in 0..r2 {
                gram[r1 + i][r1 + j] = other.inner.gram[i][j];
            }
        }
        Self::from_valid(self.group().direct_sum(other.group()), gram)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.inner.group
    }

    pub fn gram(&self) -> &[Vec<QZValue>] {
        &self.inner.gram
    }

    pub fn rank(&self) -> usize {
        self.inner.group.rank()
    }

    pub fn cardinality(&self) -> u64 {
        self.inner.group.cardinality()
    }

    /// Common denominator of the Gram table.
    pub fn denom(&self) -> u64 {
        self.inner.denom
    }

    pub fn evaluate(&self, x: &GroupElement, y: &GroupElement) -> Result<QZValue> {
        self.group().check(x)?;
        self.group().check(y)?;
        Ok(self.pair(x, y))
    }

    /// `b(x, y)` without validating the operands.
    pub fn pair(&self, x: &GroupElement, y: &GroupElement) -> QZValue {
        let num = self.pair_row(&self.pairing_row(x), y);
        QZValue::new(num as i128, self.inner.denom).expect("positive denominator")
    }

    /// Numerators over [`Self::denom`] of `b(x, e_j)` for each generator `e_j`.
    pub fn pairing_row(&self, x: &GroupElement) -> Vec<u64> {
        let d = self.inner.denom as u128;
        let r = self.rank();
        let mut row = vec![0u128; r];
        for (i, &c) in x.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as u128 % d;
            for (slot, &s) in row.iter_mut().zip(&self.inner.scaled[i]) {
                *slot = (*slot + c * s as u128) % d;
            }
        }
        row.into_iter().map(|v| v as u64).collect()
    }

    /// Numerator over [`Self::denom`] of `b(x, y)` given `pairing_row(x)`.
    pub fn pair_row(&self, row: &[u64], y: &GroupElement) -> u64 {
        let d = self.inner.denom as u128;
        let mut acc = 0u128;
        for (&a, &c) in row.iter().zip(y.coeffs()) {
            if a != 0 && c != 0 {
                acc = (acc + a as u128 * (c as u128 % d)) % d;
            }
        }
        acc as u64
    }

    /// Some `y` with `b(x, y) = target_num / denom`, where `row = pairing_row(x)`.
    pub fn solve_pairing(&self, row: &[u64], target_num: u64) -> Option<GroupElement> {
        let d = BigInt::from(self.inner.denom);
        let mut g = d.clone();
        let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); row.len()];
        // invariant: g = gcd(denom, row[..j]) = sum coeffs[i]*row[i] (mod denom)
        for (j, &a) in row.iter().enumerate() {
            let a = BigInt::from(a);
            if a.is_zero() {
                continue;
            }
            let (ng, s, t) = extended_gcd(&g, &a);
            if ng == g {
                continue;
            }
            for c in coeffs.iter_mut().take(j) {
                *c = (&*c * &s).mod_floor(&d);
            }
            coeffs[j] = t.mod_floor(&d);
            g = ng;
        }
        let target = BigInt::from(target_num);
        if !target.is_multiple_of(&g) {
            return None;
        }
        // when g == denom every coefficient is zero and target must be 0
        let factor = target / &g;
        let coeffs: Vec<i128> = coeffs
            .iter()
            .map(|c| {
                (c * &factor)
                    .mod_floor(&d)
                    .to_i128()
                    .expect("reduced below denom")
            })
            .collect();
        self.group().element(&coeffs).ok()
    }

    /// Congruence rows whose common solutions are the elements orthogonal to
    /// every element of `elems`.
    pub fn orthogonality_rows(&self, elems: &[GroupElement]) -> Vec<Congruence> {
        elems
            .iter()
            .map(|e| Congruence {
                coeffs: self.pairing_row(e).into_iter().map(|v| v as i128).collect(),
                modulus: self.inner.denom,
            })
            .collect()
    }

    /// Generators of `{x : b(x, M) = 0}`.
    pub fn radical(&self) -> Vec<GroupElement> {
        let rows = self.orthogonality_rows(&self.group().generators());
        self.group()
            .solve_congruence_system(&rows)
            .expect("gram rows are well defined")
    }

    /// Whether `x -> b(x, -)` is injective (hence bijective).
    pub fn is_nonsingular(&self) -> bool {
        self.radical().is_empty()
    }

    /// The form restricted to a subgroup, in that subgroup's own basis.
    pub fn restrict(&self, sub: &SubgroupBasis) -> LinkingForm {
        let gram = sub
            .basis
            .iter()
            .map(|x| {
                let row = self.pairing_row(x);
                sub.basis
                    .iter()
                    .map(|y| self.qz(self.pair_row(&row, y)))
                    .collect()
            })
            .collect();
        Self::from_valid(sub.group(), gram)
    }

    /// The form on `group` whose Gram table is `b(images[i], images[j])`.
    pub fn pullback(&self, group: FinAbGroup, images: &[GroupElement]) -> Result<LinkingForm> {
        if images.len() != group.rank() {
            return Err(Error::GroupMismatch {
                expected: group.rank(),
                got: images.len(),
            });
        }
        for x in images {
            self.group().check(x)?;
        }
        let gram = images
            .iter()
            .map(|x| {
                let row = self.pairing_row(x);
                images
                    .iter()
                    .map(|y| self.qz(self.pair_row(&row, y)))
                    .collect()
            })
            .collect();
        LinkingForm::new(group, gram)
    }

    fn qz(&self, num: u64) -> QZValue {
        QZValue::new(num as i128, self.inner.denom).expect("positive denominator")
    }

    /// Whether this is literally `W_k` (same presentation and Gram table).
    pub fn is_standard_w(&self, k: u64) -> bool {
        LinkingForm::standard_w(k).is_ok_and(|w| &w == self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QZValue {
        s.parse().unwrap()
    }

    #[test]
    fn standard_forms() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        assert_eq!(w3.group().orders(), &[3, 3]);
        assert_eq!(w3.gram()[0][1], q("1/3"));
        assert_eq!(w3.gram()[1][0], q("2/3"));
        assert!(w3.is_nonsingular());
        let w2 = LinkingForm::standard_w(2).unwrap();
        assert_eq!(w2.gram()[0][1], q("1/2"));
        assert_eq!(w2.gram()[1][0], q("1/2"));
        assert!(w2.gram()[0][0].is_zero() && w2.gram()[1][1].is_zero());
        assert!(matches!(
            LinkingForm::standard_w(1),
            Err(Error::InvalidK(1))
        ));
        for k in 2..=20 {
            assert!(
                LinkingForm::standard_w(k).unwrap().is_nonsingular(),
                "W_{k}"
            );
        }
    }

    #[test]
    fn evaluation() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        let g = w3.group().clone();
        let (rho, sigma) = (g.generator(0), g.generator(1));
        assert_eq!(w3.evaluate(&rho, &sigma).unwrap(), q("1/3"));
        assert!(w3.evaluate(&rho, &g.zero()).unwrap().is_zero());
        let w9 = LinkingForm::standard_w(9).unwrap();
        let three_rho = w9.group().element(&[3, 0]).unwrap();
        assert_eq!(
            w9.evaluate(&three_rho, &w9.group().generator(1)).unwrap(),
            q("1/3")
        );
        assert!(w3.evaluate(&GroupElement::default(), &rho).is_err());
    }

    #[test]
    fn validation_errors() {
        let g = FinAbGroup::new(vec![3, 3]).unwrap();
        let not_strict = vec![vec![q("1/3"), q("0")], vec![q("0"), q("0")]];
        assert!(matches!(
            LinkingForm::new(g.clone(), not_strict),
            Err(Error::NotStrict { i: 0, .. })
        ));
        let not_skew = vec![vec![q("0"), q("1/3")], vec![q("1/3"), q("0")]];
        assert!(matches!(
            LinkingForm::new(g.clone(), not_skew),
            Err(Error::NotSkew { .. })
        ));
        let ill = vec![vec![q("0"), q("1/2")], vec![q("1/2"), q("0")]];
        assert!(matches!(
            LinkingForm::new(g, ill),
            Err(Error::IllDefinedForm { .. })
        ));
    }

    #[test]
    fn direct_sums() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        assert_eq!(w3.direct_sum(&LinkingForm::trivial()), w3);
        let w33 = w3.direct_sum(&w3);
        assert_eq!(w33.group().orders(), &[3, 3, 3, 3]);
        assert!(w33.gram()[0][2].is_zero() && w33.gram()[2][3] == q("1/3"));
        // evaluation splits as the sum over the blocks
        let g = w33.group();
        let x = g.element(&[1, 2, 2, 1]).unwrap();
        let y = g.element(&[2, 2, 1, 0]).unwrap();
        let x1 = w3.group().element(&[1, 2]).unwrap();
        let y1 = w3.group().element(&[2, 2]).unwrap();
        let x2 = w3.group().element(&[2, 1]).unwrap();
        let y2 = w3.group().element(&[1, 0]).unwrap();
        assert_eq!(w33.pair(&x, &y), w3.pair(&x1, &y1) + w3.pair(&x2, &y2));
    }

    #[test]
    fn singular_examples() {
        let g = FinAbGroup::new(vec![3, 5]).unwrap();
        let zero = vec![vec![QZValue::ZERO; 2]; 2];
        assert!(!LinkingForm::new(g, zero).unwrap().is_nonsingular());
        // <sigma> in W_3 with the restricted form
        let w3 = LinkingForm::standard_w(3).unwrap();
        let sub = w3.group().realize_subgroup(&[w3.group().generator(1)]);
        assert!(!w3.restrict(&sub).is_nonsingular());
    }

    #[test]
    fn pairing_solutions() {
        let w = LinkingForm::standard_w_power(6, 2).unwrap();
        let x = w.group().element(&[2, 3, 0, 1]).unwrap();
        let row = w.pairing_row(&x);
        let y = w.solve_pairing(&row, w.denom() / 6).unwrap();
        assert_eq!(w.pair(&x, &y), QZValue::unit_fraction(6));
        // 2*rho has order 3 in W_6, so b(2 rho, -) never reaches 1/6
        let two_rho = w.group().element(&[2, 0, 0, 0]).unwrap();
        assert!(w
            .solve_pairing(&w.pairing_row(&two_rho), w.denom() / 6)
            .is_none());
    }
}
