use crate::arith::{FinAbGroup, GroupElement, SubgroupBasis};
use crate::error::Result;

use super::LinkingForm;

/// A subgroup of a linking form, given by generators in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Subform {
    ambient: LinkingForm,
    generators: Vec<GroupElement>,
}

/// A subform presented in its own invariant-factor basis, with the restricted
/// form and the way back into the ambient group.
#[derive(Clone, Debug)]
pub struct Realized {
    pub form: LinkingForm,
    pub basis: SubgroupBasis,
    ambient: FinAbGroup,
}

impl Realized {
    /// Ambient coordinates of an element given in the realized basis.
    pub fn embed(&self, x: &GroupElement) -> GroupElement {
        self.basis.embed(&self.ambient, x)
    }

    pub fn ambient_group(&self) -> &FinAbGroup {
        &self.ambient
    }
}

impl Subform {
    pub fn new(ambient: LinkingForm, generators: Vec<GroupElement>) -> Result<Self> {
        for g in &generators {
            ambient.group().check(g)?;
        }
        Ok(Subform {
            ambient,
            generators,
        })
    }

    pub fn whole(ambient: &LinkingForm) -> Self {
        Subform {
            generators: ambient.group().generators(),
            ambient: ambient.clone(),
        }
    }

    pub fn trivial(ambient: &LinkingForm) -> Self {
        Subform {
            generators: Vec::new(),
            ambient: ambient.clone(),
        }
    }

    pub fn ambient(&self) -> &LinkingForm {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn basis(&self) -> SubgroupBasis {
        self.ambient.group().realize_subgroup(&self.generators)
    }

    pub fn order(&self) -> u64 {
        self.ambient.group().subgroup_order(&self.generators)
    }

    pub fn realize(&self) -> Realized {
        let basis = self.basis();
        Realized {
            form: self.ambient.restrict(&basis),
            basis,
            ambient: self.ambient.group().clone(),
        }
    }

    pub fn is_nonsingular(&self) -> bool {
        self.realize().form.is_nonsingular()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        let mut gens = self.generators.clone();
        gens.push(x.clone());
        self.ambient.group().subgroup_order(&gens) == self.order()
    }

    /// Every element, in ambient coordinates, sorted.
    pub fn elements(&self, cap: u64) -> Result<Vec<GroupElement>> {
        let r = self.realize();
        let mut out: Vec<GroupElement> =
            r.form.group().elements(cap)?.map(|x| r.embed(&x)).collect();
        out.sort();
        Ok(out)
    }

    /// `{z : b(s, z) = 0 for every generator s}`.
    pub fn complement(&self) -> Subform {
        let rows = self.ambient.orthogonality_rows(&self.generators);
        let generators = self
            .ambient
            .group()
            .solve_congruence_system(&rows)
            .expect("pairing rows are well defined");
        Subform {
            ambient: self.ambient.clone(),
            generators,
        }
    }

    pub fn sum(&self, other: &Subform) -> Subform {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Subform {
            ambient: self.ambient.clone(),
            generators,
        }
    }

    pub fn meets_trivially(&self, other: &Subform) -> bool {
        self.sum(other).order() == self.order() * other.order()
    }

    /// Every generator pairs to zero with every generator of `other`.
    pub fn is_orthogonal_to(&self, other: &Subform) -> bool {
        self.generators.iter().all(|s| {
            let row = self.ambient.pairing_row(s);
            other
                .generators
                .iter()
                .all(|t| self.ambient.pair_row(&row, t) == 0)
        })
    }
}

pub fn orthogonal_complement(m: &LinkingForm, s: &Subform) -> Subform {
    Subform {
        ambient: m.clone(),
        generators: s.generators.clone(),
    }
    .complement()
}
