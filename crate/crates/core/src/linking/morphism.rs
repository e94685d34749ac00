use crate::arith::{FinAbGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};

use super::{LinkingForm, Subform};

/// A form-preserving homomorphism, stored as images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormMorphism {
    source: LinkingForm,
    target: LinkingForm,
    images: Vec<GroupElement>,
}

impl FormMorphism {
    pub fn new(
        source: LinkingForm,
        target: LinkingForm,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        GroupHom::new(
            source.group().clone(),
            target.group().clone(),
            images.clone(),
        )?;
        for (i, x) in images.iter().enumerate() {
            let row = target.pairing_row(x);
            for (j, y) in images.iter().enumerate().skip(i + 1) {
                let num = target.pair_row(&row, y);
                let got = crate::arith::QZValue::new(num as i128, target.denom())?;
                if got != source.gram()[i][j] {
                    return Err(Error::NotFormPreserving { i, j });
                }
            }
        }
        Ok(FormMorphism {
            source,
            target,
            images,
        })
    }

    /// The morphism `W_k -> target` with `rho -> x`, `sigma -> y`.
    pub fn from_w(k: u64, target: &LinkingForm, x: GroupElement, y: GroupElement) -> Result<Self> {
        Self::new(LinkingForm::standard_w(k)?, target.clone(), vec![x, y])
    }

    pub fn identity(m: &LinkingForm) -> Self {
        FormMorphism {
            source: m.clone(),
            target: m.clone(),
            images: m.group().generators(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        source: LinkingForm,
        target: LinkingForm,
        images: Vec<GroupElement>,
    ) -> Self {
        FormMorphism {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &LinkingForm {
        &self.source
    }

    pub fn target(&self) -> &LinkingForm {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn group_hom(&self) -> GroupHom {
        GroupHom::new(
            self.source.group().clone(),
            self.target.group().clone(),
            self.images.clone(),
        )
        .expect("validated at construction")
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let t = self.target.group();
        x.coeffs()
            .iter()
            .zip(&self.images)
            .fold(t.zero(), |acc, (&c, img)| {
                t.add(&acc, &t.scale(img, c as i128))
            })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FormMorphism) -> Result<FormMorphism> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch {
                expected: self.source.rank(),
                got: inner.target.rank(),
            });
        }
        let images = inner.images.iter().map(|x| self.apply(x)).collect();
        Ok(FormMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.group_hom().kernel().is_empty()
    }

    pub fn is_automorphism(&self) -> bool {
        self.source == self.target && self.is_injective()
    }

    pub fn image(&self) -> Subform {
        Subform::new(self.target.clone(), self.images.clone()).expect("images lie in the target")
    }

    /// The map out of `source ⊕ other.source` that is `self` on the first
    /// summand and `other` on the second. Valid iff the images are orthogonal.
    pub fn join(&self, other: &FormMorphism) -> Result<FormMorphism> {
        if self.target != other.target {
            return Err(Error::GroupMismatch {
                expected: self.target.rank(),
                got: other.target.rank(),
            });
        }
        let mut images = self.images.clone();
        images.extend(other.images.iter().cloned());
        FormMorphism::new(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            images,
        )
    }

    /// `(x|y)` label for morphisms out of `W_k`, coefficient notation.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join("|"))
    }
}

/// The `k`-torsion of `m` in ambient coordinates, sorted lexicographically.
pub fn sorted_torsion(m: &LinkingForm, k: u64, cap: u64) -> Result<Vec<GroupElement>> {
    let t = m.group().torsion_subgroup(k);
    let tg = t.group();
    let mut out: Vec<GroupElement> = tg.elements(cap)?.map(|x| t.embed(m.group(), &x)).collect();
    out.sort();
    Ok(out)
}

/// Lazily streams the pairs `(x, y)` defining morphisms `W_k -> M`, in
/// lexicographic order of `(x, y)`.
pub struct WPairs<'a> {
    form: &'a LinkingForm,
    torsion: Vec<GroupElement>,
    target: Option<u64>,
    xi: usize,
    yi: usize,
    row: Vec<u64>,
}

impl<'a> WPairs<'a> {
    pub fn new(m: &'a LinkingForm, k: u64, cap: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        let torsion = sorted_torsion(m, k, cap)?;
        let target = m.denom().is_multiple_of(k).then(|| m.denom() / k);
        let row = torsion
            .first()
            .map(|x| m.pairing_row(x))
            .unwrap_or_default();
        Ok(WPairs {
            form: m,
            torsion,
            target,
            xi: 0,
            yi: 0,
            row,
        })
    }

    pub fn torsion(&self) -> &[GroupElement] {
        &self.torsion
    }

    /// Number of candidate pairs scanned in total.
    pub fn candidate_count(&self) -> u128 {
        (self.torsion.len() as u128).pow(2)
    }
}

impl Iterator for WPairs<'_> {
    type Item = (GroupElement, GroupElement);

    fn next(&mut self) -> Option<Self::Item> {
        let target = self.target?;
        let n = self.torsion.len();
        while self.xi < n {
            while self.yi < n {
                let y = &self.torsion[self.yi];
                self.yi += 1;
                if self.form.pair_row(&self.row, y) == target {
                    return Some((self.torsion[self.xi].clone(), y.clone()));
                }
            }
            self.xi += 1;
            self.yi = 0;
            if self.xi < n {
                self.row = self.form.pairing_row(&self.torsion[self.xi]);
            }
        }
        None
    }
}

/// Every morphism `W_k -> M`, ordered lexicographically by `(f(rho), f(sigma))`.
pub fn morphisms_from_w(k: u64, m: &LinkingForm, cap: u64) -> Result<Vec<FormMorphism>> {
    let pairs = WPairs::new(m, k, cap)?;
    let count = pairs.candidate_count();
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            what: "candidate morphism pairs",
            count,
            cap: cap as u128,
        });
    }
    let w = LinkingForm::standard_w(k)?;
    Ok(pairs
        .map(|(x, y)| FormMorphism::from_parts_unchecked(w.clone(), m.clone(), vec![x, y]))
        .collect())
}

/// Numerator of `n * b(u, v)` as an integer mod `n`, where `n b(u, v) = 0`.
fn scaled_pair(m: &LinkingForm, row_u: &[u64], v: &GroupElement, n: u64) -> u64 {
    let num = m.pair_row(row_u, v) as u128;
    ((num * n as u128) / m.denom() as u128 % n as u128) as u64
}

/// The retraction `M -> Z/n + Z/n`, `z -> (n b(z, y), n b(x, z))`, for a pair
/// with `b(x, y) = 1/n`. It sends `x` to `rho` and `y` to `sigma`.
pub fn pair_retraction(m: &LinkingForm, x: &GroupElement, y: &GroupElement, n: u64) -> GroupHom {
    let rx = m.pairing_row(x);
    let ry = m.pairing_row(y);
    let target = FinAbGroup::new(vec![n, n]).expect("n >= 2");
    let images = m
        .group()
        .generators()
        .iter()
        .map(|e| {
            // b(e, y) = -b(y, e)
            let a = (n - scaled_pair(m, &ry, e, n)) % n;
            let b = scaled_pair(m, &rx, e, n);
            target.element(&[a as i128, b as i128]).expect("reduced")
        })
        .collect();
    GroupHom::new(m.group().clone(), target, images).expect("retraction is well defined")
}

#[derive(Clone, Debug)]
pub struct Split {
    pub image: Subform,
    pub complement: Subform,
    pub retraction: GroupHom,
}

/// Splits `M = f(W_k) ⊥ f(W_k)^⊥` for a morphism out of `W_k`.
pub fn split_along(f: &FormMorphism) -> Result<Split> {
    let k = f.source.group().orders().first().copied().unwrap_or(0);
    if !f.source.is_standard_w(k) {
        return Err(Error::SourceNotStandard);
    }
    let image = f.image();
    let complement = image.complement();
    let retraction = pair_retraction(&f.target, &f.images[0], &f.images[1], k);
    Ok(Split {
        image,
        complement,
        retraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_ENUMERATION_CAP;

    const CAP: u64 = DEFAULT_ENUMERATION_CAP;

    #[test]
    fn morphism_counts() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        assert_eq!(morphisms_from_w(3, &w3, CAP).unwrap().len(), 24);
        let w33 = w3.direct_sum(&w3);
        let all = morphisms_from_w(3, &w33, CAP).unwrap();
        assert_eq!(all.len(), 2160);
        assert!(morphisms_from_w(3, &LinkingForm::trivial(), CAP)
            .unwrap()
            .is_empty());
        // pairs arrive in lexicographic order
        for w in all.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
        assert!(matches!(
            morphisms_from_w(3, &w33, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn from_w_checks_the_form() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        let g = w3.group();
        assert!(FormMorphism::from_w(3, &w3, g.generator(0), g.generator(1)).is_ok());
        let err = FormMorphism::from_w(3, &w3, g.generator(1), g.generator(0)).unwrap_err();
        assert_eq!(err, Error::NotFormPreserving { i: 0, j: 1 });
        let w9 = LinkingForm::standard_w(9).unwrap();
        let three_rho = w9.group().element(&[3, 0]).unwrap();
        assert!(matches!(
            FormMorphism::from_w(3, &w9, three_rho, w9.group().generator(1)),
            Err(Error::IllDefinedHom { generator: 1 })
        ));
    }

    #[test]
    fn split_identity_and_block() {
        let w3 = LinkingForm::standard_w(3).unwrap();
        let id = FormMorphism::identity(&w3);
        let s = split_along(&id).unwrap();
        assert_eq!(s.complement.order(), 1);
        assert_eq!(
            s.retraction.apply(&w3.group().generator(0)),
            w3.group().generator(0)
        );
        assert_eq!(
            s.retraction.apply(&w3.group().generator(1)),
            w3.group().generator(1)
        );

        let w33 = w3.direct_sum(&w3);
        let g = w33.group();
        let f = FormMorphism::from_w(3, &w33, g.generator(0), g.generator(1)).unwrap();
        let s = split_along(&f).unwrap();
        assert!(s.complement.contains(&g.generator(2)) && s.complement.contains(&g.generator(3)));
        assert_eq!(s.complement.order(), 9);

        let non_w = FormMorphism::identity(&w33);
        assert_eq!(split_along(&non_w).unwrap_err(), Error::SourceNotStandard);
    }

    #[test]
    fn retraction_is_a_section() {
        let w = LinkingForm::standard_w(3)
            .unwrap()
            .direct_sum(&LinkingForm::standard_w(9).unwrap());
        for f in morphisms_from_w(3, &w, CAP).unwrap().iter().step_by(7) {
            let s = split_along(f).unwrap();
            for e in f.source().group().generators() {
                assert_eq!(s.retraction.apply(&f.apply(&e)), e);
            }
            let ker = Subform::new(w.clone(), s.retraction.kernel()).unwrap();
            assert_eq!(ker.order(), s.complement.order());
            assert!(s.complement.generators().iter().all(|z| ker.contains(z)));
            assert_eq!(s.image.order() * s.complement.order(), w.cardinality());
        }
    }
}
