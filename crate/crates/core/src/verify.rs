//! Named verification suites with pinned sizes and time limits. Shared by
//! the acceptance test target and the `verify` command.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{GroupElement, DEFAULT_ENUMERATION_CAP};
use crate::bordism::{
    admits_swapping_involution, is_generator, kk_class, omega_k, omega_kl, t_k, AbGroupDescriptor,
    KKManifold1,
};
use crate::error::{Error, Result};
use crate::linkcomplex::{
    build_l_complex, cancellation_check, find_short_path, transitivity_witness, verify_link_iso,
    LComplex, LinkCaps, PathOptions, WitnessOptions, WitnessRoute,
};
use crate::linking::{
    are_isomorphic, extend_to_automorphism, k_rank, kernel_form, morphisms_from_w, normal_form,
    scramble, split_along, stable_k_rank, LinkingForm, NormalForm, RankBudget, Subform,
};
use crate::scomplex::{
    action_transitivity, check_link_lifting, inclusion_connectivity_harness, lcm_check,
    preserves_links, FlagComplex, LiftBudget, SimplicialComplex, SimplicialMap, SIMPLEX_CAP,
};

pub const DEFAULT_SEED: u64 = 0x5eed_1a3e;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub rank_budget: RankBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            rank_budget: RankBudget::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub suite: &'static str,
    pub title: &'static str,
    /// Checks held and the run finished within the limit.
    pub passed: bool,
    pub checks_passed: bool,
    pub elapsed_ms: u64,
    pub limit_ms: u64,
    pub summary: String,
    pub witness: Option<String>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{verdict}] {:>2} {:<22} {:>8} ms / {:>6} ms  {}",
            self.id, self.suite, self.elapsed_ms, self.limit_ms, self.summary
        );
        if !self.checks_passed {
            if let Some(w) = &self.witness {
                s.push_str(&format!("  witness: {w}"));
            }
        } else if !self.passed {
            s.push_str("  (time limit exceeded)");
        }
        s
    }
}

struct Outcome {
    passed: bool,
    summary: String,
    witness: Option<String>,
}

impl Outcome {
    fn new(passed: bool, summary: String, witness: Option<String>) -> Self {
        Outcome {
            passed,
            summary,
            witness,
        }
    }
}

pub struct Suite {
    pub id: u8,
    pub name: &'static str,
    pub title: &'static str,
    pub limit: Duration,
    run: fn(&VerifyOptions) -> Result<Outcome>,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

static SUITES: [Suite; 13] = [
    Suite {
        id: 1,
        name: "split-injectivity",
        title: "split injectivity of W_3 -> W_3^2",
        limit: secs(5),
        run: split_injectivity,
    },
    Suite {
        id: 2,
        name: "classification",
        title: "normal forms of scrambled forms",
        limit: secs(60),
        run: classification,
    },
    Suite {
        id: 3,
        name: "aut-orbit",
        title: "automorphism orbit of W_3 + 0",
        limit: secs(30),
        run: aut_orbit,
    },
    Suite {
        id: 4,
        name: "rank-reduction",
        title: "rank of kernels of maps to C_3",
        limit: secs(60),
        run: rank_reduction,
    },
    Suite {
        id: 5,
        name: "stable-rank-reduction",
        title: "stable rank of complements",
        limit: secs(120),
        run: stable_rank_reduction,
    },
    Suite {
        id: 6,
        name: "base-case",
        title: "nonempty and short paths",
        limit: secs(600),
        run: base_case,
    },
    Suite {
        id: 7,
        name: "link-iso",
        title: "links are complexes of complements",
        limit: secs(300),
        run: link_iso,
    },
    Suite {
        id: 8,
        name: "transitivity",
        title: "automorphisms between vertices",
        limit: secs(120),
        run: transitivity,
    },
    Suite {
        id: 9,
        name: "cancellation",
        title: "cancellation of W_3",
        limit: secs(60),
        run: cancellation,
    },
    Suite {
        id: 10,
        name: "bordism-tables",
        title: "bordism groups in degrees 0, 1",
        limit: secs(1),
        run: bordism_tables,
    },
    Suite {
        id: 11,
        name: "ak-calculus",
        title: "A_k classes, generators, T_k",
        limit: secs(1),
        run: ak_calculus,
    },
    Suite {
        id: 12,
        name: "homology",
        title: "homology engine",
        limit: secs(60),
        run: homology,
    },
    Suite {
        id: 13,
        name: "simplicial-harnesses",
        title: "simplicial complex harnesses",
        limit: secs(300),
        run: simplicial_harnesses,
    },
];

pub fn suites() -> &'static [Suite] {
    &SUITES
}

pub fn suite_names() -> Vec<&'static str> {
    std::iter::once("all")
        .chain(SUITES.iter().map(|s| s.name))
        .collect()
}

pub fn run_criterion(suite: &Suite, opts: &VerifyOptions) -> CriterionReport {
    let start = Instant::now();
    let outcome = (suite.run)(opts)
        .unwrap_or_else(|e| Outcome::new(false, format!("error: {e}"), Some(e.to_string())));
    let elapsed = start.elapsed();
    CriterionReport {
        id: suite.id,
        suite: suite.name,
        title: suite.title,
        passed: outcome.passed && elapsed <= suite.limit,
        checks_passed: outcome.passed,
        elapsed_ms: elapsed.as_millis() as u64,
        limit_ms: suite.limit.as_millis() as u64,
        summary: outcome.summary,
        witness: outcome.witness,
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<CriterionReport>> {
    if name == "all" {
        return Ok(SUITES.iter().map(|s| run_criterion(s, opts)).collect());
    }
    let suite = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    Ok(vec![run_criterion(suite, opts)])
}

fn rng_for(opts: &VerifyOptions, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn w3(g: usize) -> LinkingForm {
    LinkingForm::standard_w_power(3, g).expect("3 >= 2")
}

fn first_failure<T: Send, F>(items: &[T], check: F) -> Option<String>
where
    T: Sync,
    F: Fn(&T) -> std::result::Result<(), String> + Sync,
{
    items.par_iter().find_map_first(|t| check(t).err())
}

fn split_injectivity(_: &VerifyOptions) -> Result<Outcome> {
    let m = w3(2);
    let all = morphisms_from_w(3, &m, DEFAULT_ENUMERATION_CAP)?;
    let fail = first_failure(&all, |f| {
        let s = split_along(f).map_err(|e| e.to_string())?;
        let (a, b) = (s.image.order(), s.complement.order());
        let ok = f.is_injective()
            && a * b == 81
            && s.image.meets_trivially(&s.complement)
            && s.image.sum(&s.complement).order() == 81;
        if ok {
            Ok(())
        } else {
            Err(format!("{} with |im| = {a}, |im^perp| = {b}", f.label()))
        }
    });
    let passed = all.len() == 2160 && fail.is_none();
    Ok(Outcome::new(
        passed,
        format!("{} morphisms split", all.len()),
        fail,
    ))
}

/// Prime powers used for random forms.
const BLOCKS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 27];

/// Random block orders of `⊕ W_q` with total order at most `max_order`.
pub fn random_blocks<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> Vec<u64> {
    let mut orders = Vec::new();
    let mut total = 1u64;
    loop {
        let fits: Vec<u64> = BLOCKS
            .iter()
            .copied()
            .filter(|&q| total * q * q <= max_order)
            .collect();
        if fits.is_empty() || (!orders.is_empty() && rng.gen_bool(0.3)) {
            break;
        }
        let q = *fits.choose(rng).unwrap();
        total *= q * q;
        orders.push(q);
    }
    orders
}

fn form_from_blocks(orders: &[u64]) -> Result<LinkingForm> {
    orders.iter().try_fold(LinkingForm::trivial(), |m, &q| {
        Ok(m.direct_sum(&LinkingForm::standard_w(q)?))
    })
}

fn classification(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = rng_for(opts, 2);
    let mut forms = Vec::new();
    for _ in 0..200 {
        let blocks = random_blocks(&mut rng, 6561);
        let (scrambled, _) = scramble(&form_from_blocks(&blocks)?, &mut rng, 60)?;
        forms.push((NormalForm::from_orders(blocks.iter().copied())?, scrambled));
    }
    let mut witness = None;
    for (expected, m) in &forms {
        let got = normal_form(m)?;
        if got != *expected {
            witness.get_or_insert(format!("expected {expected}, got {got}"));
        }
    }
    let mut distinct_pairs = 0;
    for pair in forms.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let iso = are_isomorphic(&a.1, &b.1)?;
        if a.0 != b.0 {
            distinct_pairs += 1;
        }
        if iso != (a.0 == b.0) {
            witness.get_or_insert(format!("{} vs {}: reported isomorphic = {iso}", a.0, b.0));
        }
    }
    Ok(Outcome::new(
        witness.is_none(),
        format!(
            "200 normal forms recovered; {distinct_pairs} distinct neighbouring pairs separated"
        ),
        witness,
    ))
}

fn aut_orbit(_: &VerifyOptions) -> Result<Outcome> {
    let mut total = 0;
    for g in [2, 3] {
        let m = w3(g);
        let elems: Vec<GroupElement> = m.group().elements(DEFAULT_ENUMERATION_CAP)?.collect();
        total += elems.len();
        let fail = first_failure(&elems, |v| {
            let phi = extend_to_automorphism(3, v).map_err(|e| format!("{v}: {e}"))?;
            let first = Subform::new(
                m.clone(),
                vec![phi.images()[0].clone(), phi.images()[1].clone()],
            )
            .map_err(|e| e.to_string())?;
            if phi.is_automorphism() && first.contains(v) {
                Ok(())
            } else {
                Err(format!("v = {v} in W_3^{g}"))
            }
        });
        if fail.is_some() {
            return Ok(Outcome::new(false, format!("failure in W_3^{g}"), fail));
        }
    }
    Ok(Outcome::new(
        total == 81 + 729,
        format!("{total} elements extended to automorphisms"),
        None,
    ))
}

fn rank_reduction(opts: &VerifyOptions) -> Result<Outcome> {
    let w9 = LinkingForm::standard_w(9)?;
    let mut checked = 0;
    for (name, m) in [("W_3^2", w3(2)), ("W_3+W_9", w3(1).direct_sum(&w9))] {
        let base = k_rank(&m, 3, &opts.rank_budget)?;
        if !base.certified {
            return Ok(Outcome::new(
                false,
                format!("rank of {name} uncertified"),
                None,
            ));
        }
        let homs = m.group().homs_to_cyclic(3)?;
        checked += homs.len();
        let fail = first_failure(&homs, |phi| {
            let ker = kernel_form(&m, phi)
                .map_err(|e| e.to_string())?
                .realize()
                .form;
            let r = k_rank(&ker, 3, &opts.rank_budget).map_err(|e| e.to_string())?;
            if r.certified && r.rank + 1 >= base.rank {
                Ok(())
            } else {
                Err(format!(
                    "{name}: kernel of {:?} has rank {} (certified {})",
                    phi.images(),
                    r.rank,
                    r.certified
                ))
            }
        });
        if fail.is_some() {
            return Ok(Outcome::new(
                false,
                format!("rank reduction fails on {name}"),
                fail,
            ));
        }
    }
    Ok(Outcome::new(
        true,
        format!("{checked} kernels checked"),
        None,
    ))
}

fn stable_rank_reduction(opts: &VerifyOptions) -> Result<Outcome> {
    let m = w3(2);
    let base = stable_k_rank(&m, 3, 2, &opts.rank_budget)?;
    let all = morphisms_from_w(3, &m, DEFAULT_ENUMERATION_CAP)?;
    let fail = first_failure(&all, |f| {
        let c = f.image().complement().realize().form;
        let r = stable_k_rank(&c, 3, 2, &opts.rank_budget).map_err(|e| e.to_string())?;
        if r.value + 1 >= base.value {
            Ok(())
        } else {
            Err(format!(
                "{}: complement stable rank {} < {} - 1",
                f.label(),
                r.value,
                base.value
            ))
        }
    });
    Ok(Outcome::new(
        fail.is_none(),
        format!(
            "{} complements; stable rank of W_3^2 is {} (certified {})",
            all.len(),
            base.value,
            base.certified
        ),
        fail,
    ))
}

fn base_case(opts: &VerifyOptions) -> Result<Outcome> {
    let small = build_l_complex(&w3(2), 3, &LinkCaps::default())?;
    if small.vertex_count() != 2160 {
        return Ok(Outcome::new(
            false,
            format!("L(W_3^2)_3 has {} vertices", small.vertex_count()),
            None,
        ));
    }
    let l = LComplex::lazy(&w3(4), 3, DEFAULT_ENUMERATION_CAP)?;
    let mut rng = rng_for(opts, 6);
    let pairs: Vec<_> = (0..500)
        .map(|_| Ok((l.sample(&mut rng)?, l.sample(&mut rng)?)))
        .collect::<Result<_>>()?;
    let popts = PathOptions::default();
    // choose the base vertex once before fanning out
    let _ = find_short_path(&l, &pairs[0].0, &pairs[0].1, &popts)?;
    let lengths: Vec<std::result::Result<usize, String>> = pairs
        .par_iter()
        .map(|(f, g)| {
            let rep = find_short_path(&l, f, g, &popts).map_err(|e| format!("{f} -> {g}: {e}"))?;
            let ends = rep.path.first() == Some(f) && rep.path.last() == Some(g);
            let edges = rep.path.windows(2).all(|w| l.is_edge(&w[0], &w[1]));
            if ends && edges && rep.length() <= 4 {
                Ok(rep.length())
            } else {
                Err(format!(
                    "{f} -> {g}: invalid path of length {}",
                    rep.length()
                ))
            }
        })
        .collect();
    let witness = lengths.iter().find_map(|r| r.as_ref().err().cloned());
    let mut hist = [0usize; 5];
    for n in lengths.iter().flatten() {
        hist[*n] += 1;
    }
    let passed = witness.is_none() && !l.is_materialized();
    Ok(Outcome::new(
        passed,
        format!("2160 vertices; 500 paths in L(W_3^4)_3 with lengths 0..4: {hist:?}"),
        witness,
    ))
}

fn link_iso(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = rng_for(opts, 7);
    let small = build_l_complex(&w3(2), 3, &LinkCaps::default())?;
    let vertices: Vec<_> = (0..50)
        .map(|_| small.sample(&mut rng))
        .collect::<Result<_>>()?;
    let big = LComplex::lazy(&w3(3), 3, DEFAULT_ENUMERATION_CAP)?;
    let mut edges = Vec::new();
    for _ in 0..20 {
        let v = big.sample(&mut rng)?;
        let nb = big.neighbors(&v)?;
        let w = nb
            .choose(&mut rng)
            .cloned()
            .ok_or_else(|| Error::Construction(format!("{v} has no neighbours")))?;
        edges.push(vec![v, w]);
    }
    let sigmas: Vec<(&LComplex, Vec<_>)> = vertices
        .into_iter()
        .map(|v| (&small, vec![v]))
        .chain(edges.into_iter().map(|e| (&big, e)))
        .collect();
    let fail = first_failure(&sigmas, |(l, sigma)| match verify_link_iso(l, sigma) {
        Ok(rep) if rep.is_pass() => Ok(()),
        Ok(rep) => Err(format!(
            "{sigma:?}: vertices match {}, edges match {}",
            rep.vertices_match, rep.edges_match
        )),
        Err(e) => Err(format!("{sigma:?}: {e}")),
    });
    Ok(Outcome::new(
        fail.is_none(),
        "50 vertex links in L(W_3^2)_3, 20 edge links in L(W_3^3)_3".into(),
        fail,
    ))
}

fn transitivity(opts: &VerifyOptions) -> Result<Outcome> {
    let l = build_l_complex(&w3(2), 3, &LinkCaps::default())?;
    let mut rng = rng_for(opts, 8);
    let pairs: Vec<_> = (0..100)
        .map(|_| Ok((l.sample(&mut rng)?, l.sample(&mut rng)?)))
        .collect::<Result<_>>()?;
    let wopts = WitnessOptions::default();
    let routes: Vec<std::result::Result<WitnessRoute, String>> = pairs
        .par_iter()
        .map(|(f, g)| {
            let w =
                transitivity_witness(&l, f, g, &wopts).map_err(|e| format!("{f} -> {g}: {e}"))?;
            if w.h.apply(&f.x) == g.x && w.h.apply(&f.y) == g.y && w.h.is_automorphism() {
                Ok(w.route)
            } else {
                Err(format!("{f} -> {g}: witness does not map f0 to f1"))
            }
        })
        .collect();
    let witness = routes.iter().find_map(|r| r.as_ref().err().cloned());
    let count = |route| {
        routes
            .iter()
            .filter(|r| r.as_ref().ok() == Some(&route))
            .count()
    };
    Ok(Outcome::new(
        witness.is_none(),
        format!(
            "100 witnesses: {} identity, {} along paths, {} between components via frames",
            count(WitnessRoute::Identity),
            count(WitnessRoute::Path),
            count(WitnessRoute::Frames)
        ),
        witness,
    ))
}

fn cancellation(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = rng_for(opts, 9);
    let mut witness = None;
    let mut connected = 0;
    for i in 0..200 {
        let iso_case = i < 100;
        let a = random_blocks(&mut rng, 729);
        let b = if iso_case {
            a.clone()
        } else {
            loop {
                let b = random_blocks(&mut rng, 729);
                if NormalForm::from_orders(b.iter().copied())?
                    != NormalForm::from_orders(a.iter().copied())?
                {
                    break b;
                }
            }
        };
        let m = form_from_blocks(&a)?;
        let (n, _) = scramble(&form_from_blocks(&b)?, &mut rng, 40)?;
        let rep = cancellation_check(&m, &n, 3, &opts.rank_budget)?;
        connected += rep.connected_by_rank as usize;
        if rep.stabilized != iso_case || rep.unstabilized != iso_case || !rep.agree {
            witness.get_or_insert(format!(
                "blocks {a:?} vs {b:?}: stabilized {}, plain {}",
                rep.stabilized, rep.unstabilized
            ));
        }
    }
    Ok(Outcome::new(
        witness.is_none(),
        format!("100 isomorphic and 100 non-isomorphic pairs; {connected} with rank(M + W_3) >= 4"),
        witness,
    ))
}

fn bordism_tables(_: &VerifyOptions) -> Result<Outcome> {
    let mut checked = 0;
    for k in 2..=20u64 {
        let ok_k = omega_k(0, k)? == AbGroupDescriptor::cyclic(k) && omega_k(1, k)?.is_zero();
        if !ok_k {
            return Ok(Outcome::new(
                false,
                format!("omega_k wrong at k = {k}"),
                Some(format!("k = {k}")),
            ));
        }
        for l in 2..=20u64 {
            for j in 0..=1 {
                checked += 1;
                if omega_kl(j, k, l)? != AbGroupDescriptor::cyclic(k.gcd(&l)) {
                    return Ok(Outcome::new(
                        false,
                        "omega_kl mismatch".into(),
                        Some(format!("j = {j}, k = {k}, l = {l}")),
                    ));
                }
            }
        }
    }
    Ok(Outcome::new(
        true,
        format!("19 x 2 groups Ω<k> and {checked} groups Ω<k,l>"),
        None,
    ))
}

fn random_kk<R: Rng + ?Sized>(rng: &mut R, k: u64) -> KKManifold1 {
    KKManifold1 {
        k,
        plus: rng.gen_range(0..30),
        minus: rng.gen_range(0..30),
        circles: rng.gen_range(0..5),
        null_b1: rng.gen_range(0..3),
        null_b2: rng.gen_range(0..3),
    }
}

fn ak_calculus(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = rng_for(opts, 11);
    for _ in 0..1000 {
        let k = rng.gen_range(2..=30);
        let (a, b) = (random_kk(&mut rng, k), random_kk(&mut rng, k));
        let u = a.disjoint_union(&b)?;
        let additive =
            kk_class(&u) == (kk_class(&a) + kk_class(&b)) % k && t_k(&u) == t_k(&a) + t_k(&b);
        let involution =
            !admits_swapping_involution(&u) || u.beta1().positive == u.beta1().negative;
        if !additive || !involution {
            return Ok(Outcome::new(
                false,
                "additivity failed".into(),
                Some(format!("{a:?} + {b:?}")),
            ));
        }
    }
    for k in 2..=15u64 {
        for r in 0..=10 {
            for s in 0..=10 {
                let n = KKManifold1::new(k, r, s)?;
                // the class generates Z/k iff its multiples exhaust Z/k
                let c = kk_class(&n);
                let mut seen = vec![false; k as usize];
                for i in 0..k {
                    seen[(c * i % k) as usize] = true;
                }
                if is_generator(&n) != seen.iter().all(|&b| b) {
                    return Ok(Outcome::new(
                        false,
                        "generator criterion".into(),
                        Some(format!("k = {k}, r = {r}, s = {s}")),
                    ));
                }
            }
        }
    }
    for k in 2..=50 {
        let t = t_k(&KKManifold1::plus_a(k)?);
        if (t.numerator(), t.denominator()) != (1, k) {
            return Ok(Outcome::new(
                false,
                "T_k(+A_k)".into(),
                Some(format!("k = {k}: {t}")),
            ));
        }
    }
    Ok(Outcome::new(
        true,
        "1000 unions, 1694 generator cases, T_k for k <= 50".into(),
        None,
    ))
}

pub(crate) fn rp2() -> Result<SimplicialComplex> {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    SimplicialComplex::from_facets(6, &facets.map(|f| f.to_vec()))
}

fn homology(opts: &VerifyOptions) -> Result<Outcome> {
    for n in 1..=5 {
        let h = SimplicialComplex::simplex_boundary(n).homology()?;
        let sphere = (0..n).all(|d| h.betti(d) == u64::from(d + 1 == n) && h.torsion(d).is_empty());
        if !sphere || h.euler_consistent != Some(true) {
            return Ok(Outcome::new(
                false,
                format!("boundary of the {n}-simplex"),
                Some(format!("{:?}", h.degrees)),
            ));
        }
    }
    let h = rp2()?.homology()?;
    if h.betti(1) != 0 || h.torsion(1) != [2] || h.betti(2) != 0 || h.betti(0) != 0 {
        return Ok(Outcome::new(
            false,
            "projective plane".into(),
            Some(format!("{:?}", h.degrees)),
        ));
    }
    // complexes from the base-case and link criteria
    let mut complexes: Vec<(String, FlagComplex)> = Vec::new();
    let small = build_l_complex(&w3(2), 3, &LinkCaps::default())?;
    let c = small.complex().expect("materialized").clone();
    let mut rng = rng_for(opts, 7);
    for _ in 0..5 {
        let v = small.sample(&mut rng)?;
        let idx = small.index_of(&v).expect("vertex") as usize;
        complexes.push((format!("lk {v}"), crate::scomplex::link_of(&c, &[idx])?));
    }
    let (components, _) = c.components();
    complexes.push(("L(W_3^2)_3".into(), c));
    let mut checked = 0;
    for (name, k) in &complexes {
        let h = k.homology(1, SIMPLEX_CAP)?;
        checked += 1;
        if h.euler_consistent != Some(true) {
            return Ok(Outcome::new(
                false,
                format!("Euler characteristic of {name}"),
                Some(name.clone()),
            ));
        }
    }
    let h = complexes.last().unwrap().1.homology(1, SIMPLEX_CAP)?;
    if h.betti(0) + 1 != components as u64 {
        return Ok(Outcome::new(
            false,
            "components of L(W_3^2)_3".into(),
            Some(format!("{}", h.betti(0))),
        ));
    }
    Ok(Outcome::new(
        true,
        format!(
            "spheres n <= 5, RP^2 H_1 = Z/2; Euler consistent on {checked} complexes (L(W_3^2)_3: {components} components, b_1 = {})",
            h.betti(1)
        ),
        None,
    ))
}

fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> FlagComplex {
    FlagComplex::from_predicate_seq(n, |_, _| rng.gen_bool(p))
}

fn simplicial_harnesses(opts: &VerifyOptions) -> Result<Outcome> {
    let mut rng = rng_for(opts, 13);
    let (mut incl, mut incl_hyp, mut lift, mut lift_hyp, mut trans, mut trans_hyp) =
        (0, 0, 0, 0, 0, 0);
    // (a) inclusion of full subcomplexes
    for _ in 0..150 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.9);
        let x = random_graph(&mut rng, n, p);
        let y: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        for deg in 0..=1 {
            incl += 1;
            let v = inclusion_connectivity_harness(&x, &y, deg, SIMPLEX_CAP)?;
            incl_hyp += v.hypothesis as usize;
            if !v.consistent() {
                return Ok(Outcome::new(
                    false,
                    "inclusion harness".into(),
                    Some(format!("{:?} Y = {y:?}", x.edges())),
                ));
            }
        }
    }
    // (b) link lifting: blow-ups, identities and random simplicial maps
    for i in 0..150 {
        let ny = rng.gen_range(2..=6);
        let (x, y, map) = match i % 3 {
            0 => {
                let p = rng.gen_range(0.3..0.9);
                let y = random_graph(&mut rng, ny, p);
                let copies = rng.gen_range(1..=(10 / ny).max(1));
                let nx = ny * copies;
                let x = FlagComplex::from_predicate_seq(nx, |a, b| y.adjacent(a % ny, b % ny));
                (x, y, (0..nx).map(|a| a % ny).collect::<Vec<_>>())
            }
            1 => {
                let p = rng.gen_range(0.3..0.9);
                let y = random_graph(&mut rng, ny, p);
                (y.clone(), y, (0..ny).collect())
            }
            _ => {
                let nx = rng.gen_range(2..=10);
                let p = rng.gen_range(0.2..0.8);
                let x = random_graph(&mut rng, nx, p);
                let map: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
                let mut edges: Vec<(usize, usize)> = x
                    .edges()
                    .into_iter()
                    .map(|(a, b)| (map[a], map[b]))
                    .filter(|(a, b)| a != b)
                    .collect();
                for a in 0..ny {
                    for b in a + 1..ny {
                        if rng.gen_bool(0.3) {
                            edges.push((a, b));
                        }
                    }
                }
                (x, FlagComplex::from_edges(ny, &edges)?, map)
            }
        };
        let f = SimplicialMap::new(&x, &y, map)?;
        let lifts = check_link_lifting(&f, None, &LiftBudget::default())?.is_pass();
        let preserves = preserves_links(&f, 3, SIMPLEX_CAP)?;
        for n in 1..=2 {
            lift += 1;
            if lifts && preserves && lcm_check(&y, n, n as usize, SIMPLEX_CAP)?.is_pass() {
                lift_hyp += 1;
                if !lcm_check(&x, n, n as usize, SIMPLEX_CAP)?.is_pass() {
                    return Ok(Outcome::new(
                        false,
                        "link lifting".into(),
                        Some(format!(
                            "X = {:?}, Y = {:?}, f = {:?}, n = {n}",
                            x.edges(),
                            y.edges(),
                            f.vertex_map()
                        )),
                    ));
                }
            }
        }
    }
    // (c) orbits of circulant graphs and of unions of cycles under rotation
    for _ in 0..100 {
        let n = rng.gen_range(3..=10);
        let (k, rot) = if rng.gen_bool(0.5) {
            let steps: Vec<usize> = (1..=n / 2).filter(|_| rng.gen_bool(0.5)).collect();
            let k = FlagComplex::from_predicate_seq(n, |a, b| {
                let d = (b + n - a) % n;
                steps.contains(&d) || steps.contains(&(n - d))
            });
            (k, (0..n).map(|v| (v + 1) % n).collect::<Vec<_>>())
        } else {
            let half = n / 2;
            let n = 2 * half.max(2);
            let h = n / 2;
            let k = FlagComplex::from_predicate_seq(n, |a, b| {
                a / h == b / h && (b % h == (a % h + 1) % h || a % h == (b % h + 1) % h)
            });
            (k, (0..n).map(|v| (v / h) * h + (v % h + 1) % h).collect())
        };
        trans += 1;
        let v = action_transitivity(&k, &[rot])?;
        trans_hyp += v.hypotheses_hold() as usize;
        if !v.consistent() {
            return Ok(Outcome::new(
                false,
                "transitivity".into(),
                Some(format!("{:?}", k.edges())),
            ));
        }
    }
    Ok(Outcome::new(
        true,
        format!(
            "inclusion {incl_hyp}/{incl} with hypothesis, lifting {lift_hyp}/{lift} with hypotheses, transitivity {trans_hyp}/{trans} with hypotheses"
        ),
        None,
    ))
}
