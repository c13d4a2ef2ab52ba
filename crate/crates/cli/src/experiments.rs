//! The bundled experiments. Each one states a claim and exits 0 when the
//! computation confirms it.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use lawkit_core::base::{ArityFamily, FinPresheaf, PresheafMap};
use lawkit_core::models::{category_catalogue, count_models, duplicate_cell, remove_cell, segal_check, segal_failure};
use lawkit_core::monadkit::{
    arity_category, catalan_census, coequalizer_experiment, factor_through, hom_census_formulas, nerve_arity_probe,
    pushout_preservation, FreeCategory, FreeGroupoid, Involutive, PointedMonad, PushoutProbe,
};
use lawkit_core::pretheory::Pretheory;
use lawkit_core::util::Budget;

use crate::report::{Report, EXIT_FAIL, EXIT_PASS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    MonoidCensus,
    Segal,
    Simplex,
    GroupoidPushout,
    InvolutiveArities,
    Catalan,
    Saturation,
    Coequalizer,
    Eq36,
}

impl Experiment {
    pub fn name(self) -> String {
        self.to_possible_value().expect("named variant").get_name().to_string()
    }
}

fn verdict(name: &str, ok: bool) -> Report {
    Report::new(format!("experiment {name}"), if ok { "confirmed" } else { "refuted" }, if ok { EXIT_PASS } else { EXIT_FAIL })
}

pub fn run(e: Experiment) -> Result<Report, String> {
    let name = e.name();
    let name = name.as_str();
    match e {
        Experiment::MonoidCensus => monoid_census(name),
        Experiment::Segal => Ok(segal(name)),
        Experiment::Simplex => simplex(name),
        Experiment::GroupoidPushout => {
            let v = pushout_preservation(&FreeGroupoid::default(), &PushoutProbe::cospan()).map_err(|e| e.to_string())?;
            let edge = v.missing.iter().find(|c| c.ends == Some(("a".into(), "c".into())));
            let ok = !v.preserved && edge.is_some() && v.exact;
            let mut r = verdict(name, ok).exact(v.exact);
            r = r.line(format!("comparison: {:?} -> {:?} (vertices, edges)", v.domain_sizes, v.codomain_sizes));
            for c in &v.missing {
                let ends = c.ends.as_ref().map(|(s, t)| format!(": {s} -> {t}")).unwrap_or_default();
                r = r.line(format!("missing: {}{ends}", c.label));
            }
            Ok(r.data(&v))
        }
        Experiment::InvolutiveArities => {
            let probe = PushoutProbe::cospan();
            let inv = nerve_arity_probe(&Involutive, &probe, 2).map_err(|e| e.to_string())?;
            let cat = nerve_arity_probe(&FreeCategory::default(), &probe, 2).map_err(|e| e.to_string())?;
            let pair = vec!["r".to_string(), "i(s)".to_string()];
            let ok = !inv.passed && inv.unhit.contains(&pair) && cat.passed && inv.exact && cat.exact;
            let mut r = verdict(name, ok).exact(inv.exact && cat.exact);
            r = r.line(format!("involutive at [2]: {} of {} maps unhit", inv.unhit.len(), inv.total));
            for u in &inv.unhit {
                r = r.line(format!("unhit: ({})", u.join(", ")));
            }
            r = r.line(format!("free category at [2]: {}", if cat.passed { "jointly surjective" } else { "not jointly surjective" }));
            Ok(r.data(serde_json::json!({ "involutive": inv, "free_category": cat })))
        }
        Experiment::Catalan => {
            let c = [1u64, 1, 2, 5, 14, 42, 132];
            let mut rows = Vec::new();
            let mut ok = true;
            for x in 1..=3u64 {
                let census = catalan_census(x as usize, 6);
                let expected: u64 = (0..=6).map(|n| c[n] * x.pow(n as u32 + 1)).sum();
                ok &= census.total == expected;
                rows.push(serde_json::json!({ "carrier": x, "counts": census.counts, "total": census.total, "expected": expected }));
            }
            let lines = rows.iter().map(|r| format!("|X| = {}: {} terms, expected {}", r["carrier"], r["total"], r["expected"]));
            Ok(verdict(name, ok).depth(6).lines(lines.collect::<Vec<_>>()).data(rows))
        }
        Experiment::Saturation => {
            let id = |n| PresheafMap::identity(&FinPresheaf::set(n));
            let two = FinPresheaf::set(2);
            let four = factor_through(&id(4), &FinPresheaf::set(4), &two, &FinPresheaf::set(4)).is_some();
            let pair = factor_through(&id(2), &two, &two, &two).is_some();
            let ok = !four && pair;
            Ok(verdict(name, ok)
                .line(format!("id on 4 through 2: {}", if four { "factors" } else { "does not factor" }))
                .line(format!("id on 2 through 2: {}", if pair { "factors" } else { "does not factor" }))
                .data(serde_json::json!({ "id4_through_2": four, "id2_through_2": pair })))
        }
        Experiment::Coequalizer => {
            let rep = coequalizer_experiment(3).map_err(|e| e.to_string())?;
            let ok = rep.all_bijective();
            let lines = rep.rows.iter().map(|r| {
                format!(
                    "{} vertices, edges {:?}: P {}, Q {}, si = t {}, involutive {}",
                    r.vertices, r.edges, r.p_structures, r.q_structures, r.equalized, r.involutive
                )
            });
            Ok(verdict(name, ok).lines(lines.collect::<Vec<_>>()).data(&rep))
        }
        Experiment::Eq36 => Ok(pointed_counts(name)),
    }
}

/// Monoid structures on an `n`-set: associative tables with a two-sided unit.
pub fn brute_monoids(n: usize) -> usize {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut count = 0;
    let mut t = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for v in t.iter_mut() {
            *v = c % n;
            c /= n;
        }
        let op = |a: usize, b: usize| t[a * n + b];
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op(op(a, b), c) == op(a, op(b, c)))));
        if assoc && (0..n).any(|e| (0..n).all(|a| op(e, a) == a && op(a, e) == a)) {
            count += 1;
        }
    }
    count
}

fn monoid_census(name: &str) -> Result<Report, String> {
    let p = Pretheory::bundled("monoid").map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 0..=3 {
        let engine = count_models(&p, &FinPresheaf::set(n), &Budget::from_env()).map_err(|e| e.to_string())?;
        let oracle = brute_monoids(n);
        ok &= engine == oracle;
        rows.push(serde_json::json!({ "size": n, "models": engine, "monoids": oracle }));
    }
    let lines = rows.iter().map(|r| format!("{} elements: {} models, {} monoid tables", r["size"], r["models"], r["monoids"]));
    Ok(verdict(name, ok).lines(lines.collect::<Vec<_>>()).data(rows))
}

#[derive(Serialize)]
struct SegalRow {
    category: String,
    objects: usize,
    morphisms: usize,
    passes: bool,
    mutations: Vec<(String, usize, bool)>,
}

fn segal(name: &str) -> Report {
    let mut rows = Vec::new();
    let mut ok = true;
    for (cname, c) in category_catalogue() {
        let f = c.nerve(4);
        let passes = (1..=4).all(|n| segal_check(&f, n));
        let mut mutations = Vec::new();
        for k in 2..=4 {
            if f.size(k) == 0 {
                continue;
            }
            for (kind, g) in [("remove", remove_cell(&f, k, 0)), ("duplicate", duplicate_cell(&f, k, 0))] {
                let lower = (1..k).all(|n| segal_check(&g, n));
                let caught = lower && segal_failure(&g, k).is_some_and(|w| w.arity() == k);
                ok &= caught;
                mutations.push((kind.to_string(), k, caught));
            }
        }
        ok &= passes;
        rows.push(SegalRow { category: cname.into(), objects: c.objects, morphisms: c.arrows.len(), passes, mutations });
    }
    let lines = rows.iter().map(|r| {
        let caught = r.mutations.iter().filter(|m| m.2).count();
        format!(
            "{}: {} objects, {} morphisms, Segal {}; {}/{} mutations caught",
            r.category,
            r.objects,
            r.morphisms,
            if r.passes { "holds" } else { "fails" },
            caught,
            r.mutations.len()
        )
    });
    verdict(name, ok).lines(lines.collect::<Vec<_>>()).data(rows)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Monotone maps `{0..m} → {0..n}`, by enumeration.
fn monotone(m: usize, n: usize) -> usize {
    fn go(left: usize, lo: usize, n: usize) -> usize {
        if left == 0 {
            return 1;
        }
        (lo..=n).map(|v| go(left - 1, v, n)).sum()
    }
    go(m + 1, 0, n)
}

fn simplex(name: &str) -> Result<Report, String> {
    let cat = arity_category(&FreeCategory::default(), ArityFamily::Delta0, 4).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut ok = cat.exact;
    for m in 0..=4 {
        for n in 0..=4 {
            let count = cat.hom_count(m, n);
            let expected = binom(m + n + 1, m + 1);
            ok &= count == expected && count == monotone(m, n);
            rows.push((m, n, count));
        }
    }
    let assoc = cat.is_associative();
    let unital = cat.is_unital();
    ok &= assoc && unital;
    let lines = (0..=4).map(|m| {
        let row: Vec<String> = (0..=4).map(|n| cat.hom_count(m, n).to_string()).collect();
        format!("[{m}]: {}", row.join(" "))
    });
    Ok(verdict(name, ok)
        .exact(cat.exact)
        .lines(lines.collect::<Vec<_>>())
        .line(format!("associative: {assoc}, unital: {unital}"))
        .data(serde_json::json!({ "homs": rows, "associative": assoc, "unital": unital })))
}

/// Seeded random graphs with at most `max` vertices and edges.
pub fn random_graphs(count: usize, max: usize, seed: u64) -> Vec<FinPresheaf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(1..=max);
            let e = rng.gen_range(0..=max);
            let edges: Vec<(usize, usize)> = (0..e).map(|_| (rng.gen_range(0..v), rng.gen_range(0..v))).collect();
            FinPresheaf::graph(v, &edges)
        })
        .collect()
}

fn pointed_counts(name: &str) -> Report {
    let mut rows = Vec::new();
    let mut ok = true;
    for x in random_graphs(20, 4, 36) {
        for n in 0..=3 {
            for t in [PointedMonad::P, PointedMonad::Q] {
                let c = hom_census_formulas(t, n, &x).expect("graph input");
                ok &= c.agrees();
                rows.push(serde_json::json!({ "edges": x.edge_list(), "vertices": x.num_vertices(), "census": c }));
            }
        }
    }
    let agree = rows.iter().filter(|r| r["census"]["direct"] == r["census"]["formula"]).count();
    verdict(name, ok).line(format!("{agree}/{} counts agree with the closed forms", rows.len())).data(rows)
}
