use std::path::Path;

use linkform::bordism::{
    admits_swapping_involution, is_generator, kk_class, omega_k, omega_kl, t_k, KKManifold1,
};
use linkform::linkcomplex::{
    build_l_complex, find_short_path, verify_link_iso, LComplex, LinkCaps, PathOptions,
};
use linkform::linking::{k_rank, normal_form, scramble, stable_k_rank, LinkingForm, RankBudget};
use linkform::verify::{run_suite, suite_names, VerifyOptions};
use linkform::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::document::{read_form, FormDocument};
use crate::report::{Failure, Report, EXIT_CAP, EXIT_PARSE, EXIT_UNCERTIFIED, EXIT_VERIFY};
use crate::{BordismArgs, ComplexArgs, RankArgs, StandardArgs, VerifyArgs};

type Outcome = Result<Report, Failure>;

fn budget(nodes: Option<u64>) -> RankBudget {
    let mut b = RankBudget::default();
    if let Some(n) = nodes {
        b.max_nodes = n;
    }
    b
}

pub fn classify(path: &Path) -> Outcome {
    let (doc, form) = read_form(path)?;
    if !form.is_nonsingular() {
        let radical: Vec<String> = form.radical().iter().map(|x| x.to_string()).collect();
        return Err(Failure::from(Error::Singular)
            .with_detail(format!("radical generated by {}", radical.join(", "))));
    }
    let nf = normal_form(&form)?;
    let data = json!({
        "name": doc.name,
        "normal_form": nf.to_string(),
        "parts": nf.parts,
        "cardinality": form.cardinality(),
        "nonsingular": true,
    });
    let lines = vec![
        nf.to_string(),
        format!("order: {}", form.cardinality()),
        "nonsingular: yes".to_string(),
    ];
    Ok(Report::new("classify", data, lines))
}

pub fn rank(a: &RankArgs) -> Outcome {
    let (_, form) = read_form(&a.form)?;
    let b = budget(a.budget);
    let (data, lines, certified) = if a.stable {
        let r = stable_k_rank(&form, a.k, a.gmax, &b)?;
        let mut lines = vec![
            format!(
                "stable {}-rank >= {} (certified: {})",
                a.k,
                r.value,
                yes_no(r.certified)
            ),
            format!("upper bound: {}", r.upper_bound),
        ];
        lines.extend(
            r.per_g
                .iter()
                .map(|(g, rank, c)| format!("  g = {g}: rank {rank} (certified: {})", yes_no(*c))),
        );
        (
            serde_json::to_value(&r).expect("plain data"),
            lines,
            r.certified,
        )
    } else {
        let r = k_rank(&form, a.k, &b)?;
        let lines = vec![
            format!(
                "{}-rank: {} (certified: {})",
                a.k,
                r.rank,
                yes_no(r.certified)
            ),
            format!("upper bound: {}", r.upper_bound),
            format!("search nodes: {}", r.nodes),
        ];
        (
            serde_json::to_value(&r).expect("plain data"),
            lines,
            r.certified,
        )
    };
    let report = Report::new("rank", data, lines);
    Ok(if a.require_certified && !certified {
        report.with_code(EXIT_UNCERTIFIED)
    } else {
        report
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn needs_table(l: &LComplex, what: &str) -> Result<(), Failure> {
    if l.is_materialized() {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_CAP,
            format!(
                "{what} needs the full complex: {} vertices exceed the materialization cap",
                l.vertex_count()
            ),
        ))
    }
}

pub fn complex(a: &ComplexArgs) -> Outcome {
    let (_, form) = read_form(&a.form)?;
    let caps = LinkCaps {
        max_vertices: a.max_vertices,
        ..LinkCaps::default()
    };
    let l = match build_l_complex(&form, a.k, &caps) {
        Ok(l) => l,
        Err(Error::CapExceeded {
            what: "L(M)_k vertices",
            ..
        }) => LComplex::lazy(&form, a.k, caps.enumeration_cap)?,
        Err(e) => return Err(e.into()),
    };
    let mut data = json!({
        "k": a.k,
        "vertices": l.vertex_count(),
        "edges": l.edge_count(),
        "materialized": l.is_materialized(),
    });
    let mut lines = vec![match l.edge_count() {
        Some(e) => format!("L(M)_{}: {} vertices, {e} edges", a.k, l.vertex_count()),
        None => format!(
            "L(M)_{}: {} vertices (served lazily)",
            a.k,
            l.vertex_count()
        ),
    }];
    if let Some(c) = l.complex() {
        let (components, _) = c.components();
        data["components"] = json!(components);
        data["clique_number"] = json!(c.clique_number());
        lines.push(format!(
            "components: {components}, largest simplex: {} vertices",
            c.clique_number()
        ));
    }
    let mut code = 0;
    if let Some(p) = &a.export_dot {
        needs_table(&l, "DOT export")?;
        write(p, &l.to_dot().expect("materialized"))?;
        lines.push(format!("wrote {}", p.display()));
    }
    if let Some(p) = &a.export_json {
        needs_table(&l, "JSON export")?;
        write(p, &l.to_json().expect("materialized"))?;
        lines.push(format!("wrote {}", p.display()));
    }
    if let Some(d) = a.homology_max_dim {
        needs_table(&l, "homology")?;
        let h = l
            .complex()
            .expect("materialized")
            .homology(d, linkform::scomplex::SIMPLEX_CAP)?;
        for deg in &h.degrees {
            let tors: Vec<String> = deg.torsion.iter().map(|t| format!("Z/{t}")).collect();
            lines.push(format!(
                "  H~_{} : rank {} torsion [{}]",
                deg.degree,
                deg.betti,
                tors.join(", ")
            ));
        }
        if let Some(e) = h.euler_consistent {
            lines.push(format!("  Euler characteristic consistent: {}", yes_no(e)));
        }
        data["homology"] = serde_json::to_value(&h).expect("plain data");
    }
    if let Some(n) = a.verify_links {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut passed = 0;
        let mut failures = Vec::new();
        for _ in 0..n {
            let v = l.sample(&mut rng)?;
            let rep = verify_link_iso(&l, std::slice::from_ref(&v))?;
            if rep.is_pass() {
                passed += 1;
            } else {
                failures.push(v.label());
            }
        }
        lines.push(format!("link isomorphisms: {passed}/{n} pass"));
        data["link_checks"] = json!({ "checked": n, "passed": passed, "failures": failures });
        if passed != n {
            code = EXIT_VERIFY;
        }
    }
    if let Some(pair) = &a.path {
        let (f, g) = (l.vertex(pair[0])?, l.vertex(pair[1])?);
        let rep = find_short_path(&l, &f, &g, &PathOptions::default())?;
        lines.push(format!(
            "path of length {}: {}",
            rep.length(),
            join_labels(&rep.path)
        ));
        data["path"] = serde_json::to_value(&rep).expect("plain data");
    }
    Ok(Report::new("complex", data, lines).with_code(code))
}

fn join_labels(path: &[linkform::linkcomplex::WVertex]) -> String {
    path.iter()
        .map(|v| v.label())
        .collect::<Vec<_>>()
        .join(" - ")
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_VERIFY, format!("cannot write {}: {e}", path.display())))
}

pub fn bordism(a: &BordismArgs) -> Outcome {
    if let Some(path) = &a.manifold {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        let n: KKManifold1 = serde_json::from_str(&text)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        n.validate()?;
        let (class, generator, t) = (kk_class(&n), is_generator(&n), t_k(&n));
        let involution = admits_swapping_involution(&n);
        let data = json!({
            "manifold": n,
            "class": class,
            "generator": generator,
            "t_k": t,
            "beta1": n.beta1(),
            "beta2": n.beta2(),
            "swapping_involution": involution,
        });
        let lines = vec![
            format!("class: {class} in Z/{}", n.k),
            format!("generator: {}", yes_no(generator)),
            format!("T_{} = {t}", n.k),
            format!("swapping involution: {}", yes_no(involution)),
        ];
        return Ok(Report::new("bordism", data, lines));
    }
    let (Some(j), Some(k)) = (a.degree, a.k) else {
        return Err(Failure::parse(
            "give --degree and -k (and optionally -l), or --manifold",
        ));
    };
    let group = match a.l {
        Some(l) => omega_kl(j, k, l)?,
        None => omega_k(j, k)?,
    };
    let data =
        json!({ "degree": j, "k": k, "l": a.l, "group": group, "display": group.to_string() });
    Ok(Report::new("bordism", data, vec![group.to_string()]))
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions {
        seed: a.seed,
        rank_budget: budget(a.budget),
    };
    let reports = run_suite(&a.suite, &opts).map_err(|e| match e {
        Error::UnknownSuite(s) => Failure::new(
            EXIT_PARSE,
            format!(
                "unknown suite {s:?}; available: {}",
                suite_names().join(", ")
            ),
        ),
        e => e.into(),
    })?;
    let all = reports.iter().all(|r| r.passed);
    let mut lines: Vec<String> = reports.iter().map(|r| r.line()).collect();
    lines.push(format!(
        "{} of {} passed (seed {:#x})",
        reports.iter().filter(|r| r.passed).count(),
        reports.len(),
        a.seed
    ));
    let data = json!({ "seed": a.seed, "criteria": reports, "all_passed": all });
    Ok(Report::new("verify", data, lines).with_code(if all { 0 } else { EXIT_VERIFY }))
}

pub fn standard(a: &StandardArgs) -> Outcome {
    let mut form = LinkingForm::standard_w_power(a.k, a.g)?;
    for &n in &a.plus {
        form = form.direct_sum(&LinkingForm::standard_w(n)?);
    }
    if let Some(seed) = a.scramble {
        form = scramble(&form, &mut ChaCha8Rng::seed_from_u64(seed), 60)?.0;
    }
    let doc = FormDocument::from_form(&form, a.name.clone());
    let text = serde_json::to_string_pretty(&doc).expect("plain data");
    Ok(Report::new(
        "standard",
        serde_json::to_value(&doc).expect("plain data"),
        vec![text],
    ))
}
