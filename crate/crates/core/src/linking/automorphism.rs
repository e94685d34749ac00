use num_integer::Integer;

use crate::arith::{GroupElement, GroupHom};
use crate::error::{Error, Result};

use super::hyperbolic::{frame_morphism, hyperbolic_basis, standard_frame, HyperbolicPair};
use super::{FormMorphism, LinkingForm, Subform};

/// An automorphism `phi` of `W_k^{g+1}` with `v ∈ phi(W_k ⊕ 0)`, where `g + 1`
/// is half the length of `v`.
///
/// Writes `v = m v'` with `v'` of order `k`, picks `w` with `b(w, v') = 1/k`,
/// and completes `(w, v')` by a hyperbolic basis of `<w, v'>^⊥`.
pub fn extend_to_automorphism(k: u64, v: &GroupElement) -> Result<FormMorphism> {
    if v.is_empty() || !v.len().is_multiple_of(2) {
        return Err(Error::Construction(format!(
            "element of length {} is not in some W_k^(g+1)",
            v.len()
        )));
    }
    let g1 = v.len() / 2;
    let m = LinkingForm::standard_w_power(k, g1)?;
    m.group().check(v)?;
    if v.is_zero() {
        return Ok(FormMorphism::identity(&m));
    }
    let (mult, prim) = primitive_part(k, v.coeffs());
    let prim = m.group().element(&prim)?;
    debug_assert_eq!(m.group().scale(&prim, mult as i128), *v);
    let row = m.pairing_row(&prim);
    // b(w, v') = -b(v', w)
    let w = m
        .solve_pairing(&row, m.denom() - m.denom() / k)
        .ok_or_else(|| Error::Construction("no dual partner for a primitive element".into()))?;
    let mut target = vec![HyperbolicPair {
        x: w.clone(),
        y: prim.clone(),
        order: k,
    }];
    let rest = Subform::new(m.clone(), vec![w, prim])?
        .complement()
        .realize();
    for p in hyperbolic_basis(&rest.form, false)? {
        target.push(HyperbolicPair {
            x: rest.embed(&p.x),
            y: rest.embed(&p.y),
            order: p.order,
        });
    }
    let (std, src) = standard_frame(&vec![k; g1])?;
    debug_assert_eq!(std, m);
    let phi = frame_morphism(&std, &src, &m, &target)?;
    if !phi.is_automorphism() {
        return Err(Error::Construction("assembled map is not bijective".into()));
    }
    Ok(phi)
}

/// `v = mult * prim` with `prim` of order `k`.
fn primitive_part(k: u64, coeffs: &[u64]) -> (u64, Vec<i128>) {
    let mult = coeffs.iter().fold(k, |acc, &c| acc.gcd(&c));
    let mut prim: Vec<i128> = coeffs.iter().map(|&c| (c / mult) as i128).collect();
    let step = (k / mult) as i128;
    let content = |p: &[i128]| p.iter().fold(k as i128, |acc, &c| acc.gcd(&c));
    // shifting one coordinate by multiples of k/mult keeps mult * prim fixed
    let i = prim.iter().position(|&c| c != 0).unwrap_or(0);
    let base = prim[i];
    for s in 0..k as i128 {
        prim[i] = (base + s * step).rem_euclid(k as i128);
        if content(&prim) == 1 {
            return (mult, prim);
        }
    }
    unreachable!("a primitive lift always exists")
}

/// The kernel of a homomorphism `M -> Z/k` as a subform.
pub fn kernel_form(m: &LinkingForm, phi: &GroupHom) -> Result<Subform> {
    if phi.source() != m.group() {
        return Err(Error::GroupMismatch {
            expected: m.rank(),
            got: phi.source().rank(),
        });
    }
    if phi.target().rank() > 1 {
        return Err(Error::Construction(
            "kernel_form expects a cyclic target".into(),
        ));
    }
    Subform::new(m.clone(), phi.kernel())
}

/// The homomorphism `b(x, -)` into `Z/k`, when `k b(x, -) = 0`.
pub fn pairing_hom(m: &LinkingForm, x: &GroupElement, k: u64) -> Result<GroupHom> {
    let row = m.pairing_row(x);
    let target = crate::arith::FinAbGroup::cyclic(k)?;
    let images = row
        .iter()
        .map(|&num| {
            let scaled = num as u128 * k as u128;
            if !scaled.is_multiple_of(m.denom() as u128) {
                return Err(Error::Construction("pairing does not land in 1/k Z".into()));
            }
            target.element(&[(scaled / m.denom() as u128) as i128])
        })
        .collect::<Result<_>>()?;
    GroupHom::new(m.group().clone(), target, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FinAbGroup, DEFAULT_ENUMERATION_CAP};

    fn check(k: u64, v: &GroupElement) {
        let phi = extend_to_automorphism(k, v).unwrap();
        assert!(phi.is_automorphism());
        let w = phi.source().group();
        let first = Subform::new(
            phi.target().clone(),
            vec![phi.apply(&w.generator(0)), phi.apply(&w.generator(1))],
        )
        .unwrap();
        assert!(first.contains(v), "v = {v:?}");
    }

    #[test]
    fn every_element_of_small_powers() {
        let g = FinAbGroup::new(vec![3; 4]).unwrap();
        for v in g.elements(DEFAULT_ENUMERATION_CAP).unwrap() {
            check(3, &v);
        }
        let g = FinAbGroup::new(vec![4; 4]).unwrap();
        for v in g.elements(DEFAULT_ENUMERATION_CAP).unwrap().step_by(5) {
            check(4, &v);
        }
        check(
            12,
            &FinAbGroup::new(vec![12, 12])
                .unwrap()
                .element(&[8, 0])
                .unwrap(),
        );
        check(
            12,
            &FinAbGroup::new(vec![12; 4])
                .unwrap()
                .element(&[6, 4, 0, 9])
                .unwrap(),
        );
    }

    #[test]
    fn zero_and_bad_lengths() {
        let v = FinAbGroup::new(vec![3, 3]).unwrap().zero();
        assert_eq!(
            extend_to_automorphism(3, &v).unwrap(),
            FormMorphism::identity(&LinkingForm::standard_w(3).unwrap())
        );
        let odd = FinAbGroup::new(vec![3]).unwrap().zero();
        assert!(extend_to_automorphism(3, &odd).is_err());
    }

    #[test]
    fn kernels() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        let zero = GroupHom::zero(w3.group().clone(), FinAbGroup::cyclic(3).unwrap());
        assert_eq!(kernel_form(&w3, &zero).unwrap().order(), 9);
        let phi = pairing_hom(&w3, &w3.group().generator(0), 3).unwrap();
        let ker = kernel_form(&w3, &phi).unwrap();
        assert_eq!(ker.order(), 3);
        assert!(ker.contains(&w3.group().generator(0)));
        let w33 = w3.direct_sum(&w3);
        let phi = pairing_hom(&w33, &w33.group().generator(0), 3).unwrap();
        assert_eq!(kernel_form(&w33, &phi).unwrap().order(), 27);
    }
}
