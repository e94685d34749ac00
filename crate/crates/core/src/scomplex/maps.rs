use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::FlagComplex;

/// A vertex map sending every edge to an edge or a single vertex.
#[derive(Clone, Debug)]
pub struct SimplicialMap<'a> {
    source: &'a FlagComplex,
    target: &'a FlagComplex,
    map: Vec<usize>,
}

impl<'a> SimplicialMap<'a> {
    pub fn new(source: &'a FlagComplex, target: &'a FlagComplex, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.vertex_count() {
            return Err(Error::GroupMismatch {
                expected: source.vertex_count(),
                got: map.len(),
            });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::VertexOutOfRange(v));
        }
        for (a, b) in source.edges() {
            let (fa, fb) = (map[a], map[b]);
            if fa != fb && !target.adjacent(fa, fb) {
                return Err(Error::NotSimplicial(a, b));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(k: &'a FlagComplex) -> Self {
        SimplicialMap {
            source: k,
            target: k,
            map: (0..k.vertex_count()).collect(),
        }
    }

    pub fn source(&self) -> &FlagComplex {
        self.source
    }

    pub fn target(&self) -> &FlagComplex {
        self.target
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }
}

/// A symmetric relation on vertices. Every vertex is related to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRelation {
    related: Vec<HashSet<usize>>,
}

impl SymRelation {
    pub fn empty(n: usize) -> Self {
        SymRelation {
            related: vec![HashSet::new(); n],
        }
    }

    pub fn full(n: usize) -> Self {
        Self::from_predicate(n, |_, _| true)
    }

    pub fn from_predicate(n: usize, pred: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if pred(a, b) || pred(b, a) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.related[a].insert(b);
        self.related[b].insert(a);
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        a == b || self.related[a].contains(&b)
    }

    pub fn len(&self) -> usize {
        self.related.len()
    }

    pub fn is_empty(&self) -> bool {
        self.related.is_empty()
    }

    /// Every edge of `k` is a related pair.
    pub fn is_edge_compatible(&self, k: &FlagComplex) -> bool {
        k.edges().into_iter().all(|(a, b)| self.related(a, b))
    }

    pub fn in_general_position(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.related(a, b)))
    }
}

/// Which sets `B` the relative lifting condition is tested against.
#[derive(Clone, Debug, Serialize)]
pub enum BSample {
    Empty,
    /// All vertices of the source; the strongest possible `B`.
    Full,
    /// `count` random sets of `size` vertices each.
    Random {
        count: usize,
        size: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug)]
pub struct LiftBudget {
    /// Cap on the sets `A` examined for a single target vertex.
    pub max_sets_per_vertex: usize,
    pub b_sample: BSample,
}

impl Default for LiftBudget {
    fn default() -> Self {
        LiftBudget {
            max_sets_per_vertex: 10_000,
            b_sample: BSample::Full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LiftVerdict {
    Pass {
        tested: u64,
    },
    Fail {
        y: usize,
        a: Vec<usize>,
        b: Vec<usize>,
    },
    Inconclusive {
        tested: u64,
        reason: String,
    },
}

impl LiftVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, LiftVerdict::Pass { .. })
    }
}

/// Checks the link lifting property, optionally relative to `r`.
///
/// The condition is monotone in `A`, so it is enough to test the largest
/// admissible sets: all of `{a : f(a) ∈ lk(y)}` without a relation, and its
/// maximal `r`-cliques with one. Without a relation the verdict is exact;
/// with one it is exact for `BSample::Full` and `BSample::Empty`.
pub fn check_link_lifting(
    f: &SimplicialMap<'_>,
    r: Option<&SymRelation>,
    budget: &LiftBudget,
) -> Result<LiftVerdict> {
    let x = f.source();
    let y_complex = f.target();
    if let Some(rel) = r {
        if rel.len() != x.vertex_count() {
            return Err(Error::GroupMismatch {
                expected: x.vertex_count(),
                got: rel.len(),
            });
        }
        if !rel.is_edge_compatible(x) {
            return Err(Error::Construction(
                "relation is not edge compatible".into(),
            ));
        }
    }
    let b_sets: Vec<Vec<usize>> = match (&budget.b_sample, r) {
        (_, None) | (BSample::Empty, _) => vec![Vec::new()],
        (BSample::Full, _) => vec![(0..x.vertex_count()).collect()],
        (BSample::Random { count, size, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let all: Vec<usize> = (0..x.vertex_count()).collect();
            (0..*count)
                .map(|_| all.choose_multiple(&mut rng, *size).copied().collect())
                .collect()
        }
    };
    let mut fibres = vec![Vec::new(); y_complex.vertex_count()];
    for v in 0..x.vertex_count() {
        fibres[f.apply(v)].push(v);
    }
    let mut tested = 0u64;
    for y in 0..y_complex.vertex_count() {
        let cand: Vec<usize> = (0..x.vertex_count())
            .filter(|&a| y_complex.adjacent(f.apply(a), y))
            .collect();
        let a_sets = match r {
            None => vec![cand],
            Some(rel) => match maximal_cliques(rel, &cand, budget.max_sets_per_vertex) {
                Some(sets) => sets,
                None => {
                    return Ok(LiftVerdict::Inconclusive {
                        tested,
                        reason: format!(
                            "more than {} general-position sets over vertex {y}",
                            budget.max_sets_per_vertex
                        ),
                    })
                }
            },
        };
        for a in &a_sets {
            for b in &b_sets {
                tested += 1;
                let ok = fibres[y].iter().any(|&xv| {
                    a.iter().all(|&av| x.adjacent(xv, av))
                        && r.is_none_or(|rel| b.iter().all(|&bv| rel.related(bv, xv)))
                });
                if !ok {
                    return Ok(LiftVerdict::Fail {
                        y,
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
    }
    Ok(LiftVerdict::Pass { tested })
}

/// Maximal subsets of `vertices` that are pairwise related (Bron–Kerbosch
/// with pivoting), or `None` past `cap`.
fn maximal_cliques(rel: &SymRelation, vertices: &[usize], cap: usize) -> Option<Vec<Vec<usize>>> {
    fn bk(
        rel: &SymRelation,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return out.len() <= cap;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| rel.related(u, v)).count());
        let pivot = pivot.expect("p or x is nonempty");
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| v == pivot || !rel.related(pivot, v))
            .collect();
        for v in branch {
            let np = p
                .iter()
                .copied()
                .filter(|&u| u != v && rel.related(u, v))
                .collect();
            let nx = x
                .iter()
                .copied()
                .filter(|&u| u != v && rel.related(u, v))
                .collect();
            r.push(v);
            if !bk(rel, r, np, nx, out, cap) {
                return false;
            }
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
        true
    }
    let mut out = Vec::new();
    if bk(
        rel,
        &mut Vec::new(),
        vertices.to_vec(),
        Vec::new(),
        &mut out,
        cap,
    ) {
        Some(out)
    } else {
        None
    }
}

/// `f(lk(zeta)) ⊆ lk(f(zeta))` for every simplex `zeta` with at most
/// `max_dim + 1` vertices, checked vertex by vertex on each link.
pub fn preserves_links(f: &SimplicialMap<'_>, max_dim: usize, cap: u64) -> Result<bool> {
    let x = f.source();
    let y = f.target();
    for list in x.simplices_up_to(max_dim, cap)? {
        for zeta in list {
            let image: Vec<usize> = zeta.iter().map(|&v| f.apply(v)).collect();
            for v in x.link_vertices(&zeta)? {
                let fv = f.apply(v);
                if image.contains(&fv) || !image.iter().all(|&w| y.adjacent(fv, w)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
