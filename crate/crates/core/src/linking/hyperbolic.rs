use crate::arith::{factorize, GroupElement};
use crate::error::{Error, Result};

use super::morphism::pair_retraction;
use super::{FormMorphism, LinkingForm, Subform};

/// `x, y` with `b(x, y) = 1/order`, both of order `order`, spanning a copy of
/// `W_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicPair {
    pub x: GroupElement,
    pub y: GroupElement,
    pub order: u64,
}

/// Decomposes a nonsingular form into pairwise orthogonal hyperbolic planes.
///
/// With `primary` set the form is first split into its p-primary parts, so
/// every plane has prime-power order; primes ascend and orders descend
/// within a prime. Otherwise planes are split off greedily by maximal order.
pub fn hyperbolic_basis(m: &LinkingForm, primary: bool) -> Result<Vec<HyperbolicPair>> {
    if !m.is_nonsingular() {
        return Err(Error::Singular);
    }
    if !primary {
        return split_greedy(&Subform::whole(m));
    }
    let mut out = Vec::new();
    for (p, _) in factorize(m.cardinality()) {
        let gens: Vec<GroupElement> = m
            .group()
            .orders()
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| {
                let mut q = d;
                while q % p == 0 {
                    q /= p;
                }
                (q != d).then(|| m.group().scale(&m.group().generator(i), q as i128))
            })
            .collect();
        out.extend(split_greedy(&Subform::new(m.clone(), gens)?)?);
    }
    Ok(out)
}

fn split_greedy(s: &Subform) -> Result<Vec<HyperbolicPair>> {
    let r = s.realize();
    let n = r.form.group().rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let orders = r.form.group().orders();
    // realized orders form a divisibility chain, so the last has maximal order
    let i = n - 1;
    let order = orders[i];
    let x = r.form.group().generator(i);
    let row = r.form.pairing_row(&x);
    let y = r
        .form
        .solve_pairing(&row, r.form.denom() / order)
        .ok_or(Error::Singular)?;
    let plane = Subform::new(r.form.clone(), vec![x.clone(), y.clone()])?;
    let mut out = vec![HyperbolicPair {
        x: r.embed(&x),
        y: r.embed(&y),
        order,
    }];
    for p in split_greedy(&plane.complement())? {
        out.push(HyperbolicPair {
            x: r.embed(&p.x),
            y: r.embed(&p.y),
            order: p.order,
        });
    }
    Ok(out)
}

/// The standard frame `(rho_i, sigma_i)` of `W_{n_1} ⊕ ... ⊕ W_{n_g}`.
pub fn standard_frame(orders: &[u64]) -> Result<(LinkingForm, Vec<HyperbolicPair>)> {
    let mut form = LinkingForm::trivial();
    for &n in orders {
        form = form.direct_sum(&LinkingForm::standard_w(n)?);
    }
    let g = form.group().clone();
    let frame = orders
        .iter()
        .enumerate()
        .map(|(i, &order)| HyperbolicPair {
            x: g.generator(2 * i),
            y: g.generator(2 * i + 1),
            order,
        })
        .collect();
    Ok((form, frame))
}

/// Coordinates of `z` against a complete hyperbolic frame: for each plane,
/// the pair `(n b(z, y), n b(x, z))`.
pub fn frame_coordinates(m: &LinkingForm, frame: &[HyperbolicPair], z: &GroupElement) -> Vec<u64> {
    frame
        .iter()
        .flat_map(|p| {
            pair_retraction(m, &p.x, &p.y, p.order)
                .apply(z)
                .into_coeffs()
        })
        .collect()
}

/// The morphism sending each source plane onto the matching target plane.
/// `src` must be a complete frame of `source`; plane orders must agree.
pub fn frame_morphism(
    source: &LinkingForm,
    src: &[HyperbolicPair],
    target: &LinkingForm,
    dst: &[HyperbolicPair],
) -> Result<FormMorphism> {
    if src.len() != dst.len() || src.iter().zip(dst).any(|(a, b)| a.order != b.order) {
        return Err(Error::Construction(
            "hyperbolic frames have different shapes".into(),
        ));
    }
    let retractions: Vec<_> = src
        .iter()
        .map(|p| pair_retraction(source, &p.x, &p.y, p.order))
        .collect();
    let t = target.group();
    let images = source
        .group()
        .generators()
        .iter()
        .map(|e| {
            retractions.iter().zip(dst).fold(t.zero(), |acc, (r, p)| {
                let c = r.apply(e);
                let (a, b) = (c.coeffs()[0] as i128, c.coeffs()[1] as i128);
                t.add(&acc, &t.add(&t.scale(&p.x, a), &t.scale(&p.y, b)))
            })
        })
        .collect();
    FormMorphism::new(source.clone(), target.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_frame(m: &LinkingForm, frame: &[HyperbolicPair]) {
        for (i, p) in frame.iter().enumerate() {
            assert_eq!(
                m.pair(&p.x, &p.y),
                crate::arith::QZValue::unit_fraction(p.order)
            );
            for q in &frame[i + 1..] {
                for (a, b) in [(&p.x, &q.x), (&p.x, &q.y), (&p.y, &q.x), (&p.y, &q.y)] {
                    assert!(m.pair(a, b).is_zero());
                }
            }
        }
        let total: u64 = frame.iter().map(|p| p.order * p.order).product();
        assert_eq!(total, m.cardinality());
    }

    #[test]
    fn frames_of_small_forms() {
        let w6 = LinkingForm::standard_w(6).unwrap();
        let f = hyperbolic_basis(&w6, true).unwrap();
        check_frame(&w6, &f);
        assert_eq!(f.iter().map(|p| p.order).collect::<Vec<_>>(), vec![2, 3]);
        let f = hyperbolic_basis(&w6, false).unwrap();
        assert_eq!(f.iter().map(|p| p.order).collect::<Vec<_>>(), vec![6]);

        let m = LinkingForm::standard_w(3)
            .unwrap()
            .direct_sum(&LinkingForm::standard_w(9).unwrap());
        let f = hyperbolic_basis(&m, true).unwrap();
        check_frame(&m, &f);
        assert_eq!(f.iter().map(|p| p.order).collect::<Vec<_>>(), vec![9, 3]);
    }

    #[test]
    fn singular_input_is_rejected() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        let s = Subform::new(w3.clone(), vec![w3.group().generator(0)])
            .unwrap()
            .realize();
        assert_eq!(
            hyperbolic_basis(&s.form, true).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn frame_maps_are_isomorphisms() {
        let m = LinkingForm::standard_w(2)
            .unwrap()
            .direct_sum(&LinkingForm::standard_w(4).unwrap());
        let frame = hyperbolic_basis(&m, true).unwrap();
        let orders: Vec<u64> = frame.iter().map(|p| p.order).collect();
        let (std, sf) = standard_frame(&orders).unwrap();
        let phi = frame_morphism(&std, &sf, &m, &frame).unwrap();
        assert!(phi.is_injective());
        let back = frame_morphism(&m, &frame, &std, &sf).unwrap();
        let id = back.compose(&phi).unwrap();
        assert_eq!(id, FormMorphism::identity(&std));
        let z = m.group().element(&[1, 1, 3, 2]).unwrap();
        let c = frame_coordinates(&m, &frame, &z);
        assert_eq!(
            std.group()
                .element(&c.iter().map(|&v| v as i128).collect::<Vec<_>>())
                .unwrap(),
            back.apply(&z)
        );
    }
}
