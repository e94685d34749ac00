use serde::Serialize;

use crate::error::{Error, Result};

use super::homology::homology_of;
use super::{homological_connectivity, FlagComplex};

#[derive(Clone, Debug, Serialize)]
pub struct TransitivityVerdict {
    /// Endpoints of every edge share an orbit.
    pub edges_in_one_orbit: bool,
    /// Vertices form a discrete set, so each lies in its own path component
    /// and the per-component condition holds trivially.
    pub components_transitive: bool,
    pub connected: bool,
    pub orbit_count: usize,
    pub single_orbit: bool,
}

impl TransitivityVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.edges_in_one_orbit && self.components_transitive && self.connected
    }

    /// Hypotheses imply a single orbit.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.single_orbit
    }
}

/// Orbits of the group generated by `gens` (vertex permutations preserving
/// adjacency), checked against the hypotheses of the transitivity lemma.
pub fn action_transitivity(k: &FlagComplex, gens: &[Vec<usize>]) -> Result<TransitivityVerdict> {
    let n = k.vertex_count();
    for (i, g) in gens.iter().enumerate() {
        let mut seen = vec![false; n];
        let bijective = g.len() == n
            && g.iter()
                .all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
        if !bijective || k.edges().into_iter().any(|(a, b)| !k.adjacent(g[a], g[b])) {
            return Err(Error::NotAnAutomorphism(i));
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for g in gens {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let edges_in_one_orbit = k.edges().into_iter().all(|(a, b)| roots[a] == roots[b]);
    Ok(TransitivityVerdict {
        edges_in_one_orbit,
        components_transitive: true,
        connected: k.is_connected(),
        orbit_count: distinct.len(),
        single_orbit: distinct.len() == 1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionVerdict {
    /// `Y ∩ lk(sigma)` is `(n - p - 1)`-connected for every `p`-simplex.
    pub hypothesis: bool,
    pub failing_simplex: Option<Vec<usize>>,
    /// `H_i(X, Y) = 0` for `i <= n`; only computed when the hypothesis holds.
    pub conclusion: Option<bool>,
}

impl InclusionVerdict {
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion == Some(true)
    }
}

/// Tests the inclusion-complex proposition on a full subcomplex `Y` given by
/// its vertex set. The conclusion is checked as vanishing relative homology.
pub fn inclusion_connectivity_harness(
    x: &FlagComplex,
    y: &[usize],
    n: i64,
    cap: u64,
) -> Result<InclusionVerdict> {
    let mut in_y = vec![false; x.vertex_count()];
    for &v in y {
        if v >= x.vertex_count() {
            return Err(Error::VertexOutOfRange(v));
        }
        in_y[v] = true;
    }
    if n >= 0 {
        for (p, list) in x.simplices_up_to(n as usize, cap)?.iter().enumerate() {
            for sigma in list {
                let verts: Vec<usize> = x
                    .link_vertices(sigma)?
                    .into_iter()
                    .filter(|&v| in_y[v])
                    .collect();
                let sub = x.induced(&verts);
                if !homological_connectivity(&sub, n - p as i64 - 1, cap)? {
                    return Ok(InclusionVerdict {
                        hypothesis: false,
                        failing_simplex: Some(sigma.clone()),
                        conclusion: None,
                    });
                }
            }
        }
    }
    let conclusion = if n < 0 {
        true
    } else {
        let simplices = x.simplices_up_to(n as usize + 1, cap)?;
        let rel = homology_of(&simplices, n as usize, false, |s| {
            !s.iter().all(|&v| in_y[v])
        })?;
        rel.vanishes_through(n as usize)
    };
    Ok(InclusionVerdict {
        hypothesis: true,
        failing_simplex: None,
        conclusion: Some(conclusion),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::SIMPLEX_CAP;

    fn cycle(n: usize) -> FlagComplex {
        FlagComplex::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rotation_is_transitive() {
        let c4 = cycle(4);
        let v = action_transitivity(&c4, &[vec![1, 2, 3, 0]]).unwrap();
        assert!(v.hypotheses_hold() && v.single_orbit && v.consistent());
    }

    #[test]
    fn identity_on_two_edges() {
        let k = FlagComplex::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let v = action_transitivity(&k, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(!v.hypotheses_hold());
        assert_eq!(v.orbit_count, 4);
        assert!(v.consistent());
        assert_eq!(
            action_transitivity(&k, &[vec![0, 2, 1, 3]]).unwrap_err(),
            Error::NotAnAutomorphism(0)
        );
    }

    #[test]
    fn inclusion_examples() {
        let x = FlagComplex::complete(4);
        for n in 0..3 {
            let all: Vec<usize> = (0..4).collect();
            let v = inclusion_connectivity_harness(&x, &all, n, SIMPLEX_CAP).unwrap();
            assert!(v.consistent() && v.conclusion == Some(true));
            let v = inclusion_connectivity_harness(&x, &[0], n, SIMPLEX_CAP).unwrap();
            assert!(v.consistent());
        }
        // Y = two antipodal points of a hexagon: H_0(X, Y) = 0 but H_1 != 0
        let c6 = cycle(6);
        let v = inclusion_connectivity_harness(&c6, &[0, 3], 1, SIMPLEX_CAP).unwrap();
        assert!(!v.hypothesis && v.consistent());
    }
}
