//! Bordism of `<k>`- and `<k,l>`-manifolds over a point in degrees 0 and 1,
//! and a counting model of closed 1-dimensional `<k,k>`-manifolds.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::QZValue;
use crate::error::{Error, Result};

/// `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m` with `1 < t_1 | t_2 | ... | t_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroupDescriptor {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbGroupDescriptor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroupDescriptor {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_parts(0, [n])
    }

    /// Normalizes arbitrary cyclic orders into a divisibility chain; orders
    /// `0` and `1` are dropped.
    pub fn from_parts(rank: usize, orders: impl IntoIterator<Item = u64>) -> Self {
        let mut chain: Vec<u64> = Vec::new();
        for mut d in orders.into_iter().filter(|&d| d > 1) {
            // merge d into the chain from the top, keeping gcd/lcm pairs
            for c in chain.iter_mut().rev() {
                let (g, l) = (c.gcd(&d), c.lcm(&d));
                *c = l;
                d = g;
            }
            chain.insert(0, d);
            chain.retain(|&c| c > 1);
        }
        AbGroupDescriptor {
            rank,
            torsion: chain,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Cokernel of multiplication by `k`.
    pub fn coker_times(&self, k: u64) -> Self {
        Self::from_parts(
            0,
            std::iter::repeat_n(k, self.rank).chain(self.torsion.iter().map(|&t| t.gcd(&k))),
        )
    }

    /// Kernel of multiplication by `k`.
    pub fn ker_times(&self, k: u64) -> Self {
        Self::from_parts(0, self.torsion.iter().map(|&t| t.gcd(&k)))
    }
}

impl fmt::Display for AbGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// Oriented bordism of a point: `Z` in degree 0, zero in degrees -1 and 1.
fn omega_point(j: i64) -> Result<AbGroupDescriptor> {
    match j {
        -1 | 1 => Ok(AbGroupDescriptor::zero()),
        0 => Ok(AbGroupDescriptor::free(1)),
        _ => Err(Error::UnsupportedDegree(j)),
    }
}

/// The middle term of `0 -> A -> X -> B -> 0`, when one flank vanishes.
fn extension(coker: AbGroupDescriptor, ker: AbGroupDescriptor) -> Result<AbGroupDescriptor> {
    if ker.is_zero() {
        Ok(coker)
    } else if coker.is_zero() {
        Ok(ker)
    } else {
        Err(Error::Construction(format!(
            "extension of {ker} by {coker} is not determined"
        )))
    }
}

fn check_degree(j: i64) -> Result<()> {
    if j == 0 || j == 1 {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(j))
    }
}

fn omega_k_any(j: i64, k: u64) -> Result<AbGroupDescriptor> {
    if j == -1 {
        return Ok(AbGroupDescriptor::zero());
    }
    extension(
        omega_point(j)?.coker_times(k),
        omega_point(j - 1)?.ker_times(k),
    )
}

/// `Ω_j(pt)_<k>` from the Bockstein sequence of multiplication by `k`.
pub fn omega_k(j: i64, k: u64) -> Result<AbGroupDescriptor> {
    check_degree(j)?;
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    omega_k_any(j, k)
}

/// `Ω_j(pt)_<k,l>`, computed from the sequence through `Ω_<l>` (multiplication
/// by `k`) and the one through `Ω_<k>` (multiplication by `l`); the two
/// answers must agree, and must equal `Z/gcd(k, l)`.
pub fn omega_kl(j: i64, k: u64, l: u64) -> Result<AbGroupDescriptor> {
    check_degree(j)?;
    for n in [k, l] {
        if n < 2 {
            return Err(Error::InvalidK(n));
        }
    }
    let via = |a: u64, b: u64| -> Result<AbGroupDescriptor> {
        extension(
            omega_k_any(j, b)?.coker_times(a),
            omega_k_any(j - 1, b)?.ker_times(a),
        )
    };
    let first = via(k, l)?;
    let second = via(l, k)?;
    if first != second {
        return Err(Error::Construction(format!(
            "exact sequences disagree: {first} vs {second}"
        )));
    }
    let expected = AbGroupDescriptor::cyclic(k.gcd(&l));
    if first != expected {
        return Err(Error::Construction(format!(
            "computed {first}, expected {expected}"
        )));
    }
    Ok(first)
}

/// A closed 1-dimensional `<k,k>`-manifold up to the data that matters for
/// its bordism class: `plus` copies of `+A_k`, `minus` copies of `-A_k`,
/// circles, and null-bordant pieces with boundary only on one side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KKManifold1 {
    pub k: u64,
    pub plus: u64,
    pub minus: u64,
    #[serde(default)]
    pub circles: u64,
    #[serde(default)]
    pub null_b1: u64,
    #[serde(default)]
    pub null_b2: u64,
}

/// Signed point counts `(positive, negative)` of a Bockstein.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPoints {
    pub positive: u64,
    pub negative: u64,
}

impl KKManifold1 {
    pub fn new(k: u64, plus: u64, minus: u64) -> Result<Self> {
        let m = KKManifold1 {
            k,
            plus,
            minus,
            circles: 0,
            null_b1: 0,
            null_b2: 0,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn plus_a(k: u64) -> Result<Self> {
        Self::new(k, 1, 0)
    }

    pub fn minus_a(k: u64) -> Result<Self> {
        Self::new(k, 0, 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidK(self.k));
        }
        Ok(())
    }

    pub fn disjoint_union(&self, other: &KKManifold1) -> Result<KKManifold1> {
        if self.k != other.k {
            return Err(Error::KMismatch(self.k, other.k));
        }
        Ok(KKManifold1 {
            k: self.k,
            plus: self.plus + other.plus,
            minus: self.minus + other.minus,
            circles: self.circles + other.circles,
            null_b1: self.null_b1 + other.null_b1,
            null_b2: self.null_b2 + other.null_b2,
        })
    }

    /// `β_1` on the `A`-part: `+<plus> ⊔ -<minus>`.
    pub fn beta1(&self) -> SignedPoints {
        SignedPoints {
            positive: self.plus,
            negative: self.minus,
        }
    }

    /// `β_2` on the `A`-part: `+<minus> ⊔ -<plus>`.
    pub fn beta2(&self) -> SignedPoints {
        SignedPoints {
            positive: self.minus,
            negative: self.plus,
        }
    }
}

impl Add for &KKManifold1 {
    type Output = Result<KKManifold1>;

    fn add(self, rhs: &KKManifold1) -> Result<KKManifold1> {
        self.disjoint_union(rhs)
    }
}

/// The class in `Ω_1(pt)_<k,k> = Z/k`, with `+A_k` as generator.
pub fn kk_class(n: &KKManifold1) -> u64 {
    let k = n.k as i128;
    (n.plus as i128 - n.minus as i128).rem_euclid(k) as u64
}

/// `plus - minus` is prime to `k`.
pub fn is_generator(n: &KKManifold1) -> bool {
    let d = (n.plus as i128 - n.minus as i128).unsigned_abs() as u64;
    d.gcd(&n.k) == 1
}

/// `T_k`: the class divided by `k`, in `Q/Z`.
pub fn t_k(n: &KKManifold1) -> QZValue {
    QZValue::new(kk_class(n) as i128, n.k).expect("k >= 2")
}

/// A free, orientation-preserving involution exchanging the two boundary
/// sides exists iff `+A_k` and `-A_k` pieces pair off and the one-sided
/// null pieces pair off. Circles always pair, or carry the antipodal map.
pub fn admits_swapping_involution(n: &KKManifold1) -> bool {
    n.plus == n.minus && n.null_b1 == n.null_b2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(AbGroupDescriptor::from_parts(0, [2, 3]).torsion, vec![6]);
        assert_eq!(
            AbGroupDescriptor::from_parts(0, [4, 2, 1, 6]).torsion,
            vec![2, 2, 12]
        );
        assert_eq!(AbGroupDescriptor::cyclic(1), AbGroupDescriptor::zero());
        assert_eq!(
            AbGroupDescriptor::from_parts(2, [2, 6]).to_string(),
            "Z^2 ⊕ Z/2 ⊕ Z/6"
        );
        assert_eq!(AbGroupDescriptor::zero().to_string(), "0");
        assert_eq!(
            AbGroupDescriptor::free(1).coker_times(4),
            AbGroupDescriptor::cyclic(4)
        );
        assert_eq!(
            AbGroupDescriptor::cyclic(6).ker_times(4),
            AbGroupDescriptor::cyclic(2)
        );
    }

    #[test]
    fn bordism_groups() {
        assert_eq!(omega_k(0, 5).unwrap(), AbGroupDescriptor::cyclic(5));
        assert_eq!(omega_k(1, 7).unwrap(), AbGroupDescriptor::zero());
        assert_eq!(omega_k(0, 2).unwrap(), AbGroupDescriptor::cyclic(2));
        assert_eq!(omega_kl(0, 4, 6).unwrap(), AbGroupDescriptor::cyclic(2));
        assert_eq!(omega_kl(1, 3, 3).unwrap(), AbGroupDescriptor::cyclic(3));
        assert_eq!(omega_kl(1, 5, 7).unwrap(), AbGroupDescriptor::zero());
        assert_eq!(omega_k(2, 3), Err(Error::UnsupportedDegree(2)));
        assert_eq!(omega_kl(-1, 3, 3), Err(Error::UnsupportedDegree(-1)));
        assert_eq!(omega_k(0, 1), Err(Error::InvalidK(1)));
    }

    #[test]
    fn a_k_calculus() {
        let a = KKManifold1::plus_a(3).unwrap();
        assert_eq!(kk_class(&a), 1);
        let n = KKManifold1 {
            k: 3,
            plus: 2,
            minus: 1,
            circles: 3,
            null_b1: 0,
            null_b2: 0,
        };
        assert_eq!(kk_class(&n), 1);
        assert!(is_generator(&n));
        assert!(!is_generator(&KKManifold1::new(3, 3, 0).unwrap()));
        assert_eq!(kk_class(&KKManifold1::new(4, 2, 2).unwrap()), 0);
        assert_eq!(t_k(&KKManifold1::plus_a(5).unwrap()).to_string(), "1/5");
        assert_eq!(t_k(&KKManifold1::new(3, 2, 0).unwrap()).to_string(), "2/3");
        assert!(t_k(&KKManifold1::new(3, 1, 1).unwrap()).is_zero());
        assert!(admits_swapping_involution(
            &KKManifold1::new(3, 2, 2).unwrap()
        ));
        assert!(!admits_swapping_involution(
            &KKManifold1::new(3, 1, 0).unwrap()
        ));
        let circles = KKManifold1 {
            k: 3,
            plus: 0,
            minus: 0,
            circles: 5,
            null_b1: 0,
            null_b2: 0,
        };
        assert!(admits_swapping_involution(&circles));
        assert_eq!(
            a.disjoint_union(&KKManifold1::plus_a(4).unwrap()),
            Err(Error::KMismatch(3, 4))
        );
        assert_eq!(
            a.beta2(),
            SignedPoints {
                positive: 0,
                negative: 1
            }
        );
    }

    #[test]
    fn json_schema() {
        let n: KKManifold1 = serde_json::from_str(
            r#"{"k":3,"plus":2,"minus":1,"circles":0,"null_b1":0,"null_b2":0}"#,
        )
        .unwrap();
        assert_eq!(kk_class(&n), 1);
        let back: KKManifold1 = serde_json::from_str(&serde_json::to_string(&n).unwrap()).unwrap();
        assert_eq!(back, n);
    }
}
