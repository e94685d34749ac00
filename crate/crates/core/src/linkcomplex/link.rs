use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linking::{LinkingForm, Subform, WPairs};

use super::{LComplex, WVertex};

#[derive(Clone, Debug, Serialize)]
pub struct LinkIsoReport {
    pub simplex: Vec<WVertex>,
    pub link_vertices: usize,
    pub link_edges: usize,
    /// `|M'|` for `M' = (sum of images)^⊥`.
    pub complement_order: u64,
    pub vertices_match: bool,
    pub edges_match: bool,
}

impl LinkIsoReport {
    pub fn is_pass(&self) -> bool {
        self.vertices_match && self.edges_match
    }
}

type EdgeSet = BTreeSet<(WVertex, WVertex)>;

fn edges_among(vs: &[WVertex], adjacent: impl Fn(&WVertex, &WVertex) -> bool) -> EdgeSet {
    let mut out = BTreeSet::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            if adjacent(a, b) {
                out.insert(if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                });
            }
        }
    }
    out
}

fn orthogonal_in(m: &LinkingForm, a: &WVertex, b: &WVertex) -> bool {
    let (ra, rb) = (m.pairing_row(&a.x), m.pairing_row(&a.y));
    a != b
        && [&b.x, &b.y]
            .iter()
            .all(|z| m.pair_row(&ra, z) == 0 && m.pair_row(&rb, z) == 0)
}

/// Compares the link of `sigma` in `L(M)_k` with `L(M')_k` embedded in `M`,
/// vertex for vertex and edge for edge.
pub fn verify_link_iso(l: &LComplex, sigma: &[WVertex]) -> Result<LinkIsoReport> {
    for (i, v) in sigma.iter().enumerate() {
        if !l.contains(v) || sigma[i + 1..].iter().any(|w| !l.orthogonal(v, w)) {
            return Err(Error::NotASimplex);
        }
    }
    let (link, link_edges) = match l.complex() {
        Some(c) => {
            let idx: Vec<usize> = sigma
                .iter()
                .map(|v| l.table_index(v).expect("checked above"))
                .collect();
            let verts = c.link_vertices(&idx)?;
            let mut vs: Vec<WVertex> = verts
                .iter()
                .map(|&i| l.table_vertex(i).unwrap().clone())
                .collect();
            vs.sort();
            let mut edges = BTreeSet::new();
            for (a, b) in c.induced(&verts).edges() {
                let (u, w) = (
                    l.table_vertex(verts[a]).unwrap().clone(),
                    l.table_vertex(verts[b]).unwrap().clone(),
                );
                edges.insert(if u < w { (u, w) } else { (w, u) });
            }
            (vs, edges)
        }
        None => {
            let t = l.torsion();
            let scanned = (t.len() as u128).pow(2);
            if scanned > l.enumeration_cap() as u128 {
                return Err(Error::CapExceeded {
                    what: "link scan pairs",
                    count: scanned,
                    cap: l.enumeration_cap() as u128,
                });
            }
            let mut vs: Vec<WVertex> = WPairs::new(l.form(), l.k(), l.enumeration_cap())?
                .map(|(x, y)| WVertex { x, y })
                .filter(|v| sigma.iter().all(|s| l.orthogonal(s, v)))
                .collect();
            vs.sort();
            let edges = edges_among(&vs, |a, b| l.orthogonal(a, b));
            (vs, edges)
        }
    };

    let gens = sigma
        .iter()
        .flat_map(|v| [v.x.clone(), v.y.clone()])
        .collect();
    let r = Subform::new(l.form().clone(), gens)?.complement().realize();
    let local: Vec<WVertex> = WPairs::new(&r.form, l.k(), l.enumeration_cap())?
        .map(|(x, y)| WVertex { x, y })
        .collect();
    let local_edges = edges_among(&local, |a, b| orthogonal_in(&r.form, a, b));
    let embed = |v: &WVertex| WVertex {
        x: r.embed(&v.x),
        y: r.embed(&v.y),
    };
    let mut image: Vec<WVertex> = local.iter().map(embed).collect();
    image.sort();
    let image_edges: EdgeSet = local_edges
        .iter()
        .map(|(a, b)| {
            let (u, w) = (embed(a), embed(b));
            if u < w {
                (u, w)
            } else {
                (w, u)
            }
        })
        .collect();

    Ok(LinkIsoReport {
        simplex: sigma.to_vec(),
        link_vertices: link.len(),
        link_edges: link_edges.len(),
        complement_order: r.form.cardinality(),
        vertices_match: link == image,
        edges_match: link_edges == image_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_ENUMERATION_CAP;
    use crate::linkcomplex::{build_l_complex, LinkCaps};

    #[test]
    fn links_in_w3_squared() {
        let l = build_l_complex(
            &LinkingForm::standard_w_power(3, 2).unwrap(),
            3,
            &LinkCaps::default(),
        )
        .unwrap();
        let whole = verify_link_iso(&l, &[]).unwrap();
        assert!(whole.is_pass());
        assert_eq!(
            (whole.link_vertices, whole.link_edges),
            (2160, l.edge_count().unwrap())
        );
        for i in [0, 500, 2159] {
            let rep = verify_link_iso(&l, &[l.vertex(i).unwrap()]).unwrap();
            assert!(rep.is_pass());
            assert_eq!(
                (rep.link_vertices, rep.link_edges, rep.complement_order),
                (24, 0, 9)
            );
        }
    }

    #[test]
    fn edge_links_in_w3_cubed() {
        let l = LComplex::lazy(
            &LinkingForm::standard_w_power(3, 3).unwrap(),
            3,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        let v = l.vertex(1234).unwrap();
        let w = l.neighbors(&v).unwrap()[100].clone();
        let rep = verify_link_iso(&l, &[v.clone(), w]).unwrap();
        assert!(rep.is_pass());
        assert_eq!((rep.link_vertices, rep.link_edges), (24, 0));
        let u = l.vertex(0).unwrap();
        if !l.orthogonal(&u, &v) {
            assert_eq!(
                verify_link_iso(&l, &[u, v]).unwrap_err(),
                Error::NotASimplex
            );
        }
    }
}
