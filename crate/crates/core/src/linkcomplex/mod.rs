//! The complex `L(M)_k`: vertices are morphisms `W_k -> M`, simplices are
//! sets of morphisms with pairwise orthogonal images.
//!
//! Small complexes are materialized as a [`FlagComplex`]. Large ones are
//! served lazily: vertices are indexed through per-`x` counts and
//! neighbourhoods are generated from orthogonal complements.

mod cancel;
mod link;
mod paths;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{GroupElement, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::linking::{sorted_torsion, FormMorphism, LinkingForm, Subform, WPairs};
use crate::scomplex::FlagComplex;

pub use cancel::{cancellation_check, CancellationReport};
pub use link::{verify_link_iso, LinkIsoReport};
pub use paths::{
    edge_swap, find_short_path, transitivity_witness, PathOptions, PathReport, PathRoute,
    TransitivityWitness, WitnessOptions, WitnessRoute,
};

#[derive(Clone, Debug, Serialize)]
pub struct LinkCaps {
    pub max_vertices: u64,
    pub max_edges: u64,
    /// Cap on `|M[k]|`.
    pub enumeration_cap: u64,
}

impl Default for LinkCaps {
    fn default() -> Self {
        LinkCaps {
            max_vertices: 20_000,
            max_edges: 5_000_000,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// A vertex of `L(M)_k`, i.e. the morphism `rho -> x`, `sigma -> y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WVertex {
    pub x: GroupElement,
    pub y: GroupElement,
}

impl WVertex {
    pub fn new(x: GroupElement, y: GroupElement) -> Self {
        WVertex { x, y }
    }

    pub fn label(&self) -> String {
        let join = |g: &GroupElement| {
            g.coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("({}|{})", join(&self.x), join(&self.y))
    }
}

impl fmt::Display for WVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for WVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for WVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

struct Table {
    vertices: Vec<WVertex>,
    index: HashMap<WVertex, usize>,
    complex: FlagComplex,
}

#[derive(Clone, Debug)]
pub(crate) struct BaseSearch {
    pub vertex: Option<WVertex>,
    pub scanned: u64,
    pub uncertified: u64,
    pub note: String,
}

pub struct LComplex {
    form: LinkingForm,
    k: u64,
    cap: u64,
    torsion: Vec<GroupElement>,
    rows: Vec<Vec<u64>>,
    /// `offsets[i]` counts vertices whose `x` precedes `torsion[i]`.
    offsets: Vec<u64>,
    target: Option<u64>,
    table: Option<Table>,
    base: OnceLock<BaseSearch>,
}

impl fmt::Debug for LComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LComplex")
            .field("k", &self.k)
            .field("vertices", &self.vertex_count())
            .field("materialized", &self.is_materialized())
            .finish()
    }
}

/// Builds and materializes `L(M)_k`, failing when the counts exceed `caps`.
pub fn build_l_complex(form: &LinkingForm, k: u64, caps: &LinkCaps) -> Result<LComplex> {
    let mut l = LComplex::lazy(form, k, caps.enumeration_cap)?;
    let n = l.vertex_count();
    if n > caps.max_vertices {
        return Err(Error::CapExceeded {
            what: "L(M)_k vertices",
            count: n as u128,
            cap: caps.max_vertices as u128,
        });
    }
    let vertices: Vec<WVertex> = WPairs::new(form, k, caps.enumeration_cap)?
        .map(|(x, y)| WVertex { x, y })
        .collect();
    debug_assert_eq!(vertices.len() as u64, n);
    let complex = FlagComplex::from_predicate(vertices.len(), |i, j| {
        l.orthogonal(&vertices[i], &vertices[j])
    });
    let edges = complex.edges();
    if edges.len() as u64 > caps.max_edges {
        return Err(Error::CapExceeded {
            what: "L(M)_k edges",
            count: edges.len() as u128,
            cap: caps.max_edges as u128,
        });
    }
    if let Some(&(a, b)) = edges
        .par_iter()
        .find_any(|&&(a, b)| !l.images_meet_trivially(&vertices[a], &vertices[b]))
    {
        return Err(Error::Construction(format!(
            "images of adjacent vertices {} and {} intersect",
            vertices[a], vertices[b]
        )));
    }
    let complex = complex.with_labels(vertices.iter().map(WVertex::label).collect());
    let index = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    l.table = Some(Table {
        vertices,
        index,
        complex,
    });
    Ok(l)
}

impl LComplex {
    /// An unmaterialized view; only `M[k]` is enumerated.
    pub fn lazy(form: &LinkingForm, k: u64, cap: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        let torsion = sorted_torsion(form, k, cap)?;
        let rows: Vec<Vec<u64>> = torsion.par_iter().map(|x| form.pairing_row(x)).collect();
        let target = form.denom().is_multiple_of(k).then(|| form.denom() / k);
        // b(x, -) maps M[k] onto a cyclic group of order dividing k; x admits
        // partners iff that order is exactly k, and then |M[k]| / k of them
        let basis = form.group().torsion_subgroup(k);
        let gens: Vec<GroupElement> = basis
            .group()
            .generators()
            .iter()
            .map(|g| basis.embed(form.group(), g))
            .collect();
        let denom = form.denom();
        let per_x = torsion.len() as u64 / k;
        let mut offsets = Vec::with_capacity(torsion.len() + 1);
        offsets.push(0u64);
        for row in &rows {
            let image_order = gens.iter().fold(1u64, |acc, g| {
                acc.lcm(&(denom / form.pair_row(row, g).gcd(&denom)))
            });
            let count = if target.is_some() && image_order == k {
                per_x
            } else {
                0
            };
            offsets.push(offsets.last().unwrap() + count);
        }
        Ok(LComplex {
            form: form.clone(),
            k,
            cap,
            torsion,
            rows,
            offsets,
            target,
            table: None,
            base: OnceLock::new(),
        })
    }

    pub fn form(&self) -> &LinkingForm {
        &self.form
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.cap
    }

    pub fn vertex_count(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    pub fn edge_count(&self) -> Option<usize> {
        self.table.as_ref().map(|t| t.complex.edge_count())
    }

    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    pub fn complex(&self) -> Option<&FlagComplex> {
        self.table.as_ref().map(|t| &t.complex)
    }

    /// The `i`-th vertex in enumeration order.
    pub fn vertex(&self, i: u64) -> Result<WVertex> {
        if i >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(i as usize));
        }
        if let Some(t) = &self.table {
            return Ok(t.vertices[i as usize].clone());
        }
        let xi = self.offsets.partition_point(|&o| o <= i) - 1;
        let j = (i - self.offsets[xi]) as usize;
        let target = self.target.expect("nonempty complex");
        let y = self
            .torsion
            .iter()
            .filter(|y| self.form.pair_row(&self.rows[xi], y) == target)
            .nth(j)
            .expect("offsets count partners");
        Ok(WVertex {
            x: self.torsion[xi].clone(),
            y: y.clone(),
        })
    }

    /// Position of `v` in enumeration order, if it is a vertex.
    pub fn index_of(&self, v: &WVertex) -> Option<u64> {
        if let Some(t) = &self.table {
            return t.index.get(v).map(|&i| i as u64);
        }
        let target = self.target?;
        let xi = self.torsion.binary_search(&v.x).ok()?;
        let yi = self.torsion.binary_search(&v.y).ok()?;
        let row = &self.rows[xi];
        if self.form.pair_row(row, &v.y) != target {
            return None;
        }
        let before = self.torsion[..yi]
            .iter()
            .filter(|y| self.form.pair_row(row, y) == target)
            .count();
        Some(self.offsets[xi] + before as u64)
    }

    pub fn contains(&self, v: &WVertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<WVertex> {
        match self.vertex_count() {
            0 => Err(Error::Construction("L(M)_k has no vertices".into())),
            n => self.vertex(rng.gen_range(0..n)),
        }
    }

    pub fn morphism(&self, v: &WVertex) -> Result<FormMorphism> {
        FormMorphism::from_w(self.k, &self.form, v.x.clone(), v.y.clone())
    }

    pub fn image(&self, v: &WVertex) -> Subform {
        Subform::new(self.form.clone(), vec![v.x.clone(), v.y.clone()]).expect("vertex lies in M")
    }

    /// Distinct vertices whose images pair to zero.
    pub fn orthogonal(&self, a: &WVertex, b: &WVertex) -> bool {
        if a == b {
            return false;
        }
        let m = &self.form;
        let (ra, rb) = (m.pairing_row(&a.x), m.pairing_row(&a.y));
        [&b.x, &b.y]
            .iter()
            .all(|z| m.pair_row(&ra, z) == 0 && m.pair_row(&rb, z) == 0)
    }

    pub fn images_meet_trivially(&self, a: &WVertex, b: &WVertex) -> bool {
        self.image(a).meets_trivially(&self.image(b))
    }

    /// Adjacency with the trivial-intersection condition checked explicitly.
    pub fn is_edge(&self, a: &WVertex, b: &WVertex) -> bool {
        self.orthogonal(a, b) && self.images_meet_trivially(a, b)
    }

    /// Every vertex adjacent to `v`, sorted, generated from `(im v)^⊥`.
    pub fn neighbors(&self, v: &WVertex) -> Result<Vec<WVertex>> {
        if let (Some(t), Some(&i)) = (
            &self.table,
            self.table.as_ref().and_then(|t| t.index.get(v)),
        ) {
            return Ok(t
                .complex
                .neighbors(i)
                .iter()
                .map(|&j| t.vertices[j].clone())
                .collect());
        }
        let r = self.image(v).complement().realize();
        let mut out: Vec<WVertex> = WPairs::new(&r.form, self.k, self.cap)?
            .map(|(x, y)| WVertex {
                x: r.embed(&x),
                y: r.embed(&y),
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn to_dot(&self) -> Option<String> {
        self.complex().map(FlagComplex::to_dot)
    }

    pub fn to_json(&self) -> Option<String> {
        self.complex().map(FlagComplex::to_json)
    }

    pub(crate) fn base_search_or_init(&self, f: impl FnOnce() -> BaseSearch) -> &BaseSearch {
        self.base.get_or_init(f)
    }

    pub(crate) fn torsion(&self) -> &[GroupElement] {
        &self.torsion
    }

    pub(crate) fn table_index(&self, v: &WVertex) -> Option<usize> {
        self.table.as_ref().and_then(|t| t.index.get(v).copied())
    }

    pub(crate) fn table_vertex(&self, i: usize) -> Option<&WVertex> {
        self.table.as_ref().map(|t| &t.vertices[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(g: usize) -> LinkingForm {
        LinkingForm::standard_w_power(3, g).unwrap()
    }

    #[test]
    fn small_complexes() {
        let l = build_l_complex(&w(1), 3, &LinkCaps::default()).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (24, Some(0)));
        let l = build_l_complex(&w(2), 3, &LinkCaps::default()).unwrap();
        assert_eq!(l.vertex_count(), 2160);
        assert_eq!(l.complex().unwrap().clique_number(), 2);
        // each vertex sees the 24 morphisms into its complement
        assert!((0..2160).all(|i| l.complex().unwrap().neighbors(i).len() == 24));
        let l = build_l_complex(&LinkingForm::trivial(), 3, &LinkCaps::default()).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (0, Some(0)));
    }

    #[test]
    fn caps_are_enforced() {
        let caps = LinkCaps {
            max_vertices: 100,
            ..LinkCaps::default()
        };
        assert!(matches!(
            build_l_complex(&w(2), 3, &caps),
            Err(Error::CapExceeded { count: 2160, .. })
        ));
    }

    #[test]
    fn lazy_indexing_matches_enumeration() {
        let full = build_l_complex(&w(2), 3, &LinkCaps::default()).unwrap();
        let lazy = LComplex::lazy(&w(2), 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(lazy.vertex_count(), 2160);
        for i in (0..2160).step_by(37) {
            let v = lazy.vertex(i).unwrap();
            assert_eq!(v, full.vertex(i).unwrap());
            assert_eq!(lazy.index_of(&v), Some(i));
            assert_eq!(lazy.neighbors(&v).unwrap(), full.neighbors(&v).unwrap());
        }
    }

    #[test]
    fn closed_form_vertex_counts() {
        // (3^{2g} - 1) * 3^{2g - 1}
        for g in 1..=4 {
            let l = LComplex::lazy(&w(g), 3, DEFAULT_ENUMERATION_CAP).unwrap();
            let n = 9u64.pow(g as u32);
            assert_eq!(l.vertex_count(), (n - 1) * n / 3);
        }
        let mixed = LinkingForm::standard_w(3)
            .unwrap()
            .direct_sum(&LinkingForm::standard_w(9).unwrap());
        let l = LComplex::lazy(&mixed, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        let scanned = WPairs::new(&mixed, 3, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .count() as u64;
        assert_eq!(l.vertex_count(), scanned);
    }

    #[test]
    fn sampling_and_labels() {
        let l = LComplex::lazy(&w(4), 3, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let v = l.sample(&mut rng).unwrap();
            assert!(l.morphism(&v).is_ok());
            assert!(l.contains(&v));
        }
        let v = l.vertex(0).unwrap();
        // smallest x is sigma_4; b(sigma_4, 2 rho_4) = 1/3
        assert_eq!(v.label(), "(0,0,0,0,0,0,0,1|0,0,0,0,0,0,2,0)");
    }
}
