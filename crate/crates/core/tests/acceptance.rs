use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lawkit_core::base::{ArityFamily, FinPresheaf, PresheafMap};
use lawkit_core::models::{
    category_catalogue, count_models, duplicate_cell, evaluate_word, remove_cell, segal_check, segal_failure, separate::ModelCensus,
    NerveFailure,
};
use lawkit_core::monadkit::{
    arity_category, catalan_census, coequalizer_experiment, factor_through, hom_census_formulas, nerve_arity_probe,
    pushout_preservation, CoequalizerRow, FreeCategory, FreeGroupoid, Involutive, PointedMonad, PushoutProbe,
};
use lawkit_core::pretheory::{congruence_closure_with, ClosureOptions, Pretheory};
use lawkit_core::theorycheck::{complete_to_theory, theories_isomorphic_bounded, IsoOptions, IsoStatus, TheoryStatus};
use lawkit_core::util::Budget;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Associative tables on an `n`-set with a two-sided unit.
fn monoid_tables(n: usize) -> usize {
    let mut count = 0;
    let mut t = vec![0usize; n * n];
    for code in 0..n.pow((n * n) as u32) {
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

fn monoid_census() -> Outcome {
    let p = Pretheory::bundled("monoid").unwrap();
    let mut counts = Vec::new();
    for n in 0..=3 {
        let start = Instant::now();
        let engine = count_models(&p, &FinPresheaf::set(n), &Budget::unlimited()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let oracle = monoid_tables(n);
        ensure(engine == oracle, || format!("size {n}: {engine} models, {oracle} monoid tables"))?;
        ensure(took < Duration::from_secs(60), || format!("size {n} took {took:?}"))?;
        counts.push(engine);
    }
    Ok(format!("models {counts:?}"))
}

/// Composable edge strings of length `k` (vertices when `k = 0`).
fn paths(v: usize, edges: &[(usize, usize)], k: usize) -> usize {
    if k == 0 {
        return v;
    }
    let mut ends = vec![1usize; v];
    for _ in 0..k {
        let mut next = vec![0usize; v];
        for &(s, t) in edges {
            next[t] += ends[s];
        }
        ends = next;
    }
    ends.iter().sum()
}

fn pointed_hom_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2036);
    let mut checked = 0;
    for _ in 0..20 {
        let v = rng.gen_range(1..=4);
        let e = rng.gen_range(0..=4);
        let edges: Vec<(usize, usize)> = (0..e).map(|_| (rng.gen_range(0..v), rng.gen_range(0..v))).collect();
        let x = FinPresheaf::graph(v, &edges);
        let g = |k| paths(v, &edges, k);
        for n in 0..=3 {
            let p = match n {
                0 => g(0) + g(1),
                _ => g(n),
            };
            let q = match n {
                0 => g(0) + 2 * g(1),
                1 => 2 * g(1),
                _ => g(n),
            };
            for (t, closed) in [(PointedMonad::P, p), (PointedMonad::Q, q)] {
                let c = hom_census_formulas(t, n, &x).map_err(|e| e.to_string())?;
                ensure(c.direct == closed, || format!("{t:?} on {edges:?} at [{n}]: direct {} vs {closed}", c.direct))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} counts"))
}

/// Monotone maps `{0..m} → {0..n}`.
fn monotone(m: usize, n: usize) -> u64 {
    fn go(left: usize, lo: usize, n: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        (lo..=n).map(|v| go(left - 1, v, n)).sum()
    }
    go(m + 1, 0, n)
}

fn simplex() -> Outcome {
    let cat = arity_category(&FreeCategory::default(), ArityFamily::Delta0, 4).map_err(|e| e.to_string())?;
    ensure(cat.exact, || "free-category values truncated".into())?;
    for m in 0..=4 {
        for n in 0..=4 {
            let got = cat.hom_count(m, n) as u64;
            let oracle = monotone(m, n);
            ensure(got == oracle && oracle == binom((m + n + 1) as u64, (m + 1) as u64), || {
                format!("hom([{m}], [{n}]) = {got}, monotone maps {oracle}")
            })?;
        }
    }
    ensure(cat.is_associative(), || "composition not associative".into())?;
    ensure(cat.is_unital(), || "composition not unital".into())?;
    Ok("hom counts C(m+n+1, m+1) for m, n <= 4".into())
}

fn groupoid_pushout() -> Outcome {
    let v = pushout_preservation(&FreeGroupoid::default(), &PushoutProbe::cospan()).map_err(|e| e.to_string())?;
    ensure(v.exact, || "truncated".into())?;
    ensure(!v.surjective[1], || "comparison surjective on edges".into())?;
    let witness = v.missing.iter().find(|c| c.ends == Some(("a".into(), "c".into())));
    ensure(witness.is_some(), || format!("no missing edge a -> c in {:?}", v.missing))?;
    ensure(v.domain_sizes[1] == 7, || format!("domain has {} edges", v.domain_sizes[1]))?;
    // One morphism per ordered pair of vertices of the tree a - b - c.
    let pairs = 3 * 3;
    ensure(v.codomain_sizes[1] == pairs, || format!("codomain has {} morphisms", v.codomain_sizes[1]))?;
    Ok(format!("7 -> 9 edges, missing {}", witness.unwrap().label))
}

fn involutive_arities() -> Outcome {
    let probe = PushoutProbe::cospan();
    let v = nerve_arity_probe(&Involutive, &probe, 2).map_err(|e| e.to_string())?;
    ensure(v.exact && !v.passed, || "involutive probe passed".into())?;
    let pair = vec!["r".to_string(), "i(s)".to_string()];
    ensure(v.unhit.contains(&pair), || format!("unhit maps {:?}", v.unhit))?;
    let c = nerve_arity_probe(&FreeCategory::default(), &probe, 2).map_err(|e| e.to_string())?;
    ensure(c.exact && c.passed, || format!("free category leaves {:?} unhit", c.unhit))?;
    Ok(format!("unhit ({})", v.witness().unwrap().join(", ")))
}

fn catalan() -> Outcome {
    let c: Vec<u64> = (0..=6).map(|n| binom(2 * n, n) / (n + 1)).collect();
    ensure(c == [1, 1, 2, 5, 14, 42, 132], || format!("Catalan numbers {c:?}"))?;
    let start = Instant::now();
    let mut totals = Vec::new();
    for x in 1..=3u64 {
        let census = catalan_census(x as usize, 6);
        let expected: u64 = (0..=6).map(|n| c[n as usize] * x.pow(n + 1)).sum();
        ensure(census.total == expected, || format!("|X| = {x}: {} vs {expected}", census.total))?;
        totals.push(census.total);
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("totals {totals:?}"))
}

fn saturation() -> Outcome {
    let id = |n| PresheafMap::identity(&FinPresheaf::set(n));
    let (two, four) = (FinPresheaf::set(2), FinPresheaf::set(4));
    ensure(factor_through(&id(4), &four, &two, &four).is_none(), || "id on 4 factors through 2".into())?;
    let (f, g) = factor_through(&id(2), &two, &two, &two).ok_or("id on 2 does not factor through 2")?;
    ensure(f.then(&g) == id(2), || "witness does not compose to the identity".into())?;
    Ok("id4 does not factor through 2; id2 does".into())
}

fn segal() -> Outcome {
    let cats = category_catalogue();
    let mut passed = 0;
    for (name, c) in cats.iter().take(10) {
        ensure(c.objects <= 4 && c.arrows.len() <= 8, || format!("{name} too large"))?;
        let f = c.nerve(4);
        ensure((1..=4).all(|n| segal_check(&f, n)), || format!("{name} fails Segal"))?;
        passed += 1;
    }
    let mut mutants = 0;
    for (name, c) in cats.iter().filter(|(_, c)| c.nerve(2).size(2) > 0) {
        if mutants == 10 {
            break;
        }
        let f = c.nerve(4);
        for k in [2, 3] {
            if mutants == 10 || f.size(k) == 0 {
                continue;
            }
            let d = ArityFamily::Delta0.density_presentation(k).pop().unwrap();
            let boundary: Vec<usize> = d.cocone.iter().map(|&m| f.act(m, 0)).collect();
            let removed = remove_cell(&f, k, 0);
            ensure((1..k).all(|n| segal_check(&removed, n)), || format!("{name}: removal breaks a lower level"))?;
            match segal_failure(&removed, k) {
                Some(NerveFailure::NotSurjective { apex, tuple }) if apex == k && tuple == boundary => {}
                other => return Err(format!("{name}: removing a cell of level {k} gave {other:?}")),
            }
            mutants += 1;
            if mutants == 10 {
                break;
            }
            let doubled = duplicate_cell(&f, k, 0);
            let copy = doubled.size(k) - 1;
            match segal_failure(&doubled, k) {
                Some(NerveFailure::NotInjective { apex, elements: (x, y) }) if apex == k && (x.min(y), x.max(y)) == (0, copy) => {}
                other => return Err(format!("{name}: duplicating a cell of level {k} gave {other:?}")),
            }
            mutants += 1;
        }
    }
    ensure(passed == 10 && mutants == 10, || format!("{passed} categories, {mutants} mutants"))?;
    Ok("10 nerves pass, 10 mutants caught at their level".into())
}

fn completion() -> Outcome {
    let monoid = Pretheory::bundled("monoid").unwrap();
    for d in 1..=4usize {
        let t = complete_to_theory(&monoid, 4, d).map_err(|e| e.to_string())?;
        for n in 0..=3usize {
            let words: usize = (0..=d + 1).map(|k| n.pow(k as u32)).sum();
            ensure(t.hom_count(1, n) == words, || format!("D = {d}: hom(1, {n}) = {}, expected {words}", t.hom_count(1, n)))?;
        }
    }
    let redundant = Pretheory::bundled("monoid-redundant").unwrap();
    let iso = theories_isomorphic_bounded(&monoid, &redundant, &IsoOptions::new(3, 2)).map_err(|e| e.to_string())?;
    ensure(iso.status == IsoStatus::Isomorphic, || format!("monoid vs redundant: {}", iso.status))?;
    let initial = Pretheory::initial(ArityFamily::Fin);
    let t = lawkit_core::theorycheck::complete_to_theory_with(
        &initial,
        &lawkit_core::theorycheck::CompletionOptions::new(3, 2).with_arities(&[0, 1, 2, 3]),
    )
    .map_err(|e| e.to_string())?;
    for a in 0..=3usize {
        for b in 0..=3usize {
            ensure(t.hom_count(a, b) == b.pow(a as u32), || format!("initial hom({a}, {b}) = {}", t.hom_count(a, b)))?;
        }
    }
    ensure(t.is_exact() && t.verdict().status == TheoryStatus::Theory, || "completed initial is not the initial theory".into())?;
    Ok("hom(1,n) = sum n^k; monoid ~ redundant; initial fixed".into())
}

/// Involutions `i` of the edge set with `src(i e) = tgt(e)`.
fn involutive_structures(x: &FinPresheaf) -> (usize, usize) {
    let n = x.num_edges();
    let (mut all, mut reversing) = (0, 0);
    let mut i = vec![0usize; n];
    for code in 0..n.pow(n as u32) {
        let mut c = code;
        for v in i.iter_mut() {
            *v = c % n;
            c /= n;
        }
        if (0..n).all(|e| i[i[e]] == e) {
            all += 1;
            if (0..n).all(|e| x.src(i[e]) == x.tgt(e)) {
                reversing += 1;
            }
        }
    }
    if n == 0 {
        (1, 1)
    } else {
        (all, reversing)
    }
}

fn coequalizer() -> Outcome {
    let rep = coequalizer_experiment(3).map_err(|e| e.to_string())?;
    ensure(rep.all_bijective(), || "an equalised Q-structure set differs from the involutive algebras".into())?;
    for r in &rep.rows {
        let x = FinPresheaf::graph(r.vertices, &r.edges);
        let (all, reversing) = involutive_structures(&x);
        let p = r.vertices.pow(r.edges.len() as u32);
        ensure(r.q_structures == all && r.equalized == reversing && r.involutive == reversing && r.p_structures == p, || {
            format!("{r:?}: expected P {p}, Q {all}, si = t {reversing}")
        })?;
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/coequalizer.json");
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let rows: Vec<CoequalizerRow> = serde_json::from_value(golden["rows"].clone()).map_err(|e| e.to_string())?;
    ensure(rows == rep.rows, || "counts differ from the golden file".into())?;
    let structures: usize = rep.rows.iter().map(|r| r.equalized).sum();
    Ok(format!("{} graphs, {structures} involutive structures", rep.rows.len()))
}

fn congruence_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = ["monoid", "monoid-redundant", "category", "groupoid"];
    let mut pools = Vec::new();
    for name in names {
        let p = Pretheory::bundled(name).unwrap();
        let table = congruence_closure_with(&p, &ClosureOptions::new(3).verify(false));
        let arities: Vec<usize> = table.arities.clone();
        let mut classes = Vec::new();
        for &a in &arities {
            for &b in &arities {
                classes.extend(table.partition(a, b).into_iter().filter(|c| c.len() > 1).map(|c| c.into_iter().map(|w| table.word(w)).collect::<Vec<_>>()));
            }
        }
        let census = ModelCensus::new(&p, 2, &arities);
        ensure(census.complete, || format!("{name}: model census incomplete"))?;
        pools.push((name, p, classes, census));
    }
    let mut violations = 0;
    let mut seen = BTreeSet::new();
    for _ in 0..500 {
        let (name, p, classes, census) = &pools[rng.gen_range(0..pools.len())];
        let class = &classes[rng.gen_range(0..classes.len())];
        let i = rng.gen_range(0..class.len());
        let j = (i + 1 + rng.gen_range(0..class.len() - 1)) % class.len();
        let (u, v) = (&class[i], &class[j]);
        seen.insert((*name, p.show(u), p.show(v)));
        for m in &census.models {
            if evaluate_word(m, u).map_err(|e| e.to_string())? != evaluate_word(m, v).map_err(|e| e.to_string())? {
                violations += 1;
                break;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("500 pairs ({} distinct), 0 violations", seen.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("monoid census", monoid_census),
        ("hom counts of P and Q", pointed_hom_counts),
        ("simplex reconstruction", simplex),
        ("groupoid pushout", groupoid_pushout),
        ("involutive arities", involutive_arities),
        ("catalan census", catalan),
        ("saturation", saturation),
        ("segal suite", segal),
        ("theory completion", completion),
        ("coequaliser", coequalizer),
        ("congruence soundness", congruence_soundness),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
