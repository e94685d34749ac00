use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linking::{
    frame_morphism, hyperbolic_basis, k_rank, pair_retraction, rank_upper_bound, FormMorphism,
    HyperbolicPair, LinkingForm, RankBudget, Subform, WPairs,
};

use super::{BaseSearch, LComplex, WVertex};

#[derive(Clone, Debug, Serialize)]
pub struct PathOptions {
    /// Budget for each rank check while choosing the base vertex.
    pub rank_budget: RankBudget,
    /// Vertices examined, in enumeration order, when choosing the base vertex.
    pub base_scan_limit: u64,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions {
            rank_budget: RankBudget {
                max_nodes: 200_000,
                ..RankBudget::default()
            },
            base_scan_limit: 5_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathRoute {
    Identical,
    Adjacent,
    /// Through the base vertex `f_0`.
    ViaBase,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    pub path: Vec<WVertex>,
    pub route: PathRoute,
    pub base: Option<WVertex>,
}

impl PathReport {
    pub fn length(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

fn check_vertex(l: &LComplex, v: &WVertex) -> Result<()> {
    if l.contains(v) {
        Ok(())
    } else {
        Err(Error::Construction(format!(
            "{v} is not a vertex of L(M)_k"
        )))
    }
}

fn search_base(l: &LComplex, opts: &PathOptions) -> BaseSearch {
    let k = l.k();
    let bound = rank_upper_bound(l.form(), k);
    if bound < 4 {
        return BaseSearch {
            vertex: None,
            scanned: 0,
            uncertified: 0,
            note: format!("rank bound of M is {bound} < 4, so no complement has rank 3"),
        };
    }
    let mut uncertified = 0;
    let limit = opts.base_scan_limit.min(l.vertex_count());
    for i in 0..limit {
        let v = l.vertex(i).expect("in range");
        let r = l.image(&v).complement().realize();
        if rank_upper_bound(&r.form, k) < 3 {
            continue;
        }
        match k_rank(&r.form, k, &opts.rank_budget) {
            Ok(res) if res.rank >= 3 => {
                return BaseSearch {
                    vertex: Some(v),
                    scanned: i + 1,
                    uncertified,
                    note: String::new(),
                };
            }
            Ok(res) if !res.certified => uncertified += 1,
            Ok(_) => {}
            Err(_) => uncertified += 1,
        }
    }
    let note = if uncertified > 0 {
        format!("rank budget exhausted on {uncertified} of {limit} candidates")
    } else if limit < l.vertex_count() {
        format!(
            "scan limit reached after {limit} of {} vertices",
            l.vertex_count()
        )
    } else {
        "no vertex has a complement of rank 3".to_string()
    };
    BaseSearch {
        vertex: None,
        scanned: limit,
        uncertified,
        note,
    }
}

/// First morphism into `(im a + im b)^⊥`.
fn bridge(l: &LComplex, a: &WVertex, b: &WVertex) -> Result<Option<WVertex>> {
    let gens = vec![a.x.clone(), a.y.clone(), b.x.clone(), b.y.clone()];
    let r = Subform::new(l.form().clone(), gens)?.complement().realize();
    let first = WPairs::new(&r.form, l.k(), l.enumeration_cap())?.next();
    Ok(first.map(|(x, y)| WVertex {
        x: r.embed(&x),
        y: r.embed(&y),
    }))
}

fn to_base(l: &LComplex, v: &WVertex, base: &WVertex) -> Result<Vec<WVertex>> {
    if v == base {
        return Ok(vec![v.clone()]);
    }
    if l.orthogonal(v, base) {
        return Ok(vec![v.clone(), base.clone()]);
    }
    match bridge(l, v, base)? {
        Some(mid) => Ok(vec![v.clone(), mid, base.clone()]),
        None => Err(Error::PathNotFound(format!(
            "no morphism into the complement of {v} and {base}"
        ))),
    }
}

/// A path of length at most 4 from `f` to `g` through a base vertex whose
/// complement has `k`-rank at least 3. The base vertex is chosen once per
/// complex, with the options of the first call.
pub fn find_short_path(
    l: &LComplex,
    f: &WVertex,
    g: &WVertex,
    opts: &PathOptions,
) -> Result<PathReport> {
    check_vertex(l, f)?;
    check_vertex(l, g)?;
    if f == g {
        return Ok(PathReport {
            path: vec![f.clone()],
            route: PathRoute::Identical,
            base: None,
        });
    }
    if l.is_edge(f, g) {
        return Ok(PathReport {
            path: vec![f.clone(), g.clone()],
            route: PathRoute::Adjacent,
            base: None,
        });
    }
    let search = l.base_search_or_init(|| search_base(l, opts));
    let Some(base) = search.vertex.clone() else {
        return Err(Error::PathNotFound(format!(
            "no base vertex after scanning {} vertices ({} uncertified): {}",
            search.scanned, search.uncertified, search.note
        )));
    };
    let mut path = to_base(l, f, &base)?;
    let mut back = to_base(l, g, &base)?;
    back.pop();
    path.extend(back.into_iter().rev());
    // the two halves may share a vertex; cut the loop
    let mut i = 0;
    while i < path.len() {
        if let Some(j) = path.iter().rposition(|v| *v == path[i]) {
            path.drain(i + 1..=j);
        }
        i += 1;
    }
    if path.len() > 5 || path.windows(2).any(|w| !l.is_edge(&w[0], &w[1])) {
        return Err(Error::Construction(
            "constructed path failed validation".into(),
        ));
    }
    Ok(PathReport {
        path,
        route: PathRoute::ViaBase,
        base: Some(base),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOptions {
    pub path: PathOptions,
    /// Vertices visited by breadth-first search before giving up.
    pub bfs_limit: usize,
    /// When no path exists, map a hyperbolic frame through `f0` onto one
    /// through `f1` instead of failing.
    pub allow_frame_fallback: bool,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            path: PathOptions::default(),
            bfs_limit: 50_000,
            allow_frame_fallback: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    Identity,
    /// Composite of edge swaps along a path.
    Path,
    /// Frame map, used when `f0` and `f1` lie in different components.
    Frames,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitivityWitness {
    #[serde(skip)]
    pub h: FormMorphism,
    pub route: WitnessRoute,
    pub path: Vec<WVertex>,
}

/// The automorphism exchanging the images of adjacent `a` and `b` and fixing
/// their joint complement: `z -> z - a(r_a z) - b(r_b z) + b(r_a z) + a(r_b z)`.
pub fn edge_swap(l: &LComplex, a: &WVertex, b: &WVertex) -> Result<FormMorphism> {
    let m = l.form();
    let g = m.group();
    let (ra, rb) = (
        pair_retraction(m, &a.x, &a.y, l.k()),
        pair_retraction(m, &b.x, &b.y, l.k()),
    );
    let along =
        |v: &WVertex, c: &[u64]| g.add(&g.scale(&v.x, c[0] as i128), &g.scale(&v.y, c[1] as i128));
    let images = g
        .generators()
        .iter()
        .map(|e| {
            let (ca, cb) = (ra.apply(e), rb.apply(e));
            let moved = g.add(&along(b, ca.coeffs()), &along(a, cb.coeffs()));
            let kept = g.sub(e, &g.add(&along(a, ca.coeffs()), &along(b, cb.coeffs())));
            g.add(&kept, &moved)
        })
        .collect();
    FormMorphism::new(m.clone(), m.clone(), images)
}

fn bfs(l: &LComplex, from: &WVertex, to: &WVertex, limit: usize) -> Result<Option<Vec<WVertex>>> {
    let mut parent: HashMap<WVertex, WVertex> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    parent.insert(from.clone(), from.clone());
    while let Some(v) = queue.pop_front() {
        if v == *to {
            let mut path = vec![v.clone()];
            let mut cur = v;
            while cur != *from {
                cur = parent[&cur].clone();
                path.push(cur.clone());
            }
            path.reverse();
            return Ok(Some(path));
        }
        if parent.len() > limit {
            return Err(Error::BudgetExhausted(format!(
                "breadth-first search visited {limit} vertices"
            )));
        }
        for w in l.neighbors(&v)? {
            if !parent.contains_key(&w) {
                parent.insert(w.clone(), v.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

fn frame_through(l: &LComplex, v: &WVertex) -> Result<Vec<HyperbolicPair>> {
    let r = l.image(v).complement().realize();
    let mut frame = vec![HyperbolicPair {
        x: v.x.clone(),
        y: v.y.clone(),
        order: l.k(),
    }];
    for p in hyperbolic_basis(&r.form, true)? {
        frame.push(HyperbolicPair {
            x: r.embed(&p.x),
            y: r.embed(&p.y),
            order: p.order,
        });
    }
    Ok(frame)
}

fn frame_witness(l: &LComplex, f0: &WVertex, f1: &WVertex) -> Result<FormMorphism> {
    let m: &LinkingForm = l.form();
    frame_morphism(m, &frame_through(l, f0)?, m, &frame_through(l, f1)?)
}

/// An automorphism `h` of `M` with `h ∘ f0 = f1`, checked by evaluation.
pub fn transitivity_witness(
    l: &LComplex,
    f0: &WVertex,
    f1: &WVertex,
    opts: &WitnessOptions,
) -> Result<TransitivityWitness> {
    check_vertex(l, f0)?;
    check_vertex(l, f1)?;
    let m = l.form();
    let (h, route, path) = if f0 == f1 {
        (
            FormMorphism::identity(m),
            WitnessRoute::Identity,
            vec![f0.clone()],
        )
    } else {
        let path = match find_short_path(l, f0, f1, &opts.path) {
            Ok(rep) => Some(rep.path),
            Err(Error::PathNotFound(_)) => match bfs(l, f0, f1, opts.bfs_limit) {
                Ok(p) => p,
                Err(Error::BudgetExhausted(_)) => None,
                Err(e) => return Err(e),
            },
            Err(e) => return Err(e),
        };
        match path {
            Some(path) => {
                let mut h = FormMorphism::identity(m);
                for w in path.windows(2) {
                    h = edge_swap(l, &w[0], &w[1])?.compose(&h)?;
                }
                (h, WitnessRoute::Path, path)
            }
            None if opts.allow_frame_fallback => {
                (frame_witness(l, f0, f1)?, WitnessRoute::Frames, Vec::new())
            }
            None => return Err(Error::PathNotFound(format!("no path from {f0} to {f1}"))),
        }
    };
    if h.apply(&f0.x) != f1.x || h.apply(&f0.y) != f1.y || !h.is_automorphism() {
        return Err(Error::Construction(format!(
            "witness for {f0} -> {f1} failed verification"
        )));
    }
    Ok(TransitivityWitness { h, route, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_ENUMERATION_CAP;
    use crate::linkcomplex::{build_l_complex, LinkCaps};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_paths() {
        let l = build_l_complex(
            &LinkingForm::standard_w_power(3, 2).unwrap(),
            3,
            &LinkCaps::default(),
        )
        .unwrap();
        let f = l.vertex(0).unwrap();
        let rep = find_short_path(&l, &f, &f, &PathOptions::default()).unwrap();
        assert_eq!((rep.route, rep.length()), (PathRoute::Identical, 0));
        let g = l.neighbors(&f).unwrap()[3].clone();
        let rep = find_short_path(&l, &f, &g, &PathOptions::default()).unwrap();
        assert_eq!((rep.route, rep.length()), (PathRoute::Adjacent, 1));
        // rank 2 leaves no room for a base vertex
        let far = l.vertex(1).unwrap();
        assert!(matches!(
            find_short_path(&l, &f, &far, &PathOptions::default()),
            Err(Error::PathNotFound(_))
        ));
    }

    #[test]
    fn swaps_and_witnesses() {
        let l = build_l_complex(
            &LinkingForm::standard_w_power(3, 2).unwrap(),
            3,
            &LinkCaps::default(),
        )
        .unwrap();
        let f = l.vertex(10).unwrap();
        let g = l.neighbors(&f).unwrap()[5].clone();
        let s = edge_swap(&l, &f, &g).unwrap();
        assert!(s.is_automorphism());
        assert_eq!((s.apply(&f.x), s.apply(&f.y)), (g.x.clone(), g.y.clone()));
        assert_eq!((s.apply(&g.x), s.apply(&g.y)), (f.x.clone(), f.y.clone()));
        let opts = WitnessOptions::default();
        assert_eq!(
            transitivity_witness(&l, &f, &f, &opts).unwrap().route,
            WitnessRoute::Identity
        );
        assert_eq!(
            transitivity_witness(&l, &f, &g, &opts).unwrap().route,
            WitnessRoute::Path
        );
        let far = l.vertex(2000).unwrap();
        let w = transitivity_witness(&l, &f, &far, &opts).unwrap();
        assert_eq!(w.route, WitnessRoute::Frames);
        let strict = WitnessOptions {
            allow_frame_fallback: false,
            ..WitnessOptions::default()
        };
        assert!(matches!(
            transitivity_witness(&l, &f, &far, &strict),
            Err(Error::PathNotFound(_))
        ));
    }

    #[test]
    fn paths_in_w3_fourth_power() {
        let l = LComplex::lazy(
            &LinkingForm::standard_w_power(3, 4).unwrap(),
            3,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let (f, g) = (l.sample(&mut rng).unwrap(), l.sample(&mut rng).unwrap());
            let rep = find_short_path(&l, &f, &g, &PathOptions::default()).unwrap();
            assert!(rep.length() <= 4);
            assert_eq!((rep.path.first(), rep.path.last()), (Some(&f), Some(&g)));
            let w = transitivity_witness(&l, &f, &g, &WitnessOptions::default()).unwrap();
            assert_eq!(w.route, WitnessRoute::Path);
        }
        assert!(!l.is_materialized());
    }
}
