use proptest::prelude::*;

use lawkit_core::base::{hom_set, ArityFamily, FinPresheaf, Shape};
use lawkit_core::models::{count_models, evaluate_word, separate::ModelCensus};
use lawkit_core::monadkit::{
    arity_category, builtin, catalan_census, kleisli_laws_hold, pushout_preservation, Identity, Involution, Involutive,
    PushoutProbe,
};
use lawkit_core::pretheory::{congruence_closure_with, ClosureOptions, Pretheory};
use lawkit_core::util::Budget;

fn graph() -> impl Strategy<Value = FinPresheaf> {
    (1usize..=3).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 0..=3).prop_map(move |edges| FinPresheaf::graph(v, &edges))
    })
}

fn walks(x: &FinPresheaf, k: usize) -> usize {
    if k == 0 {
        return x.num_vertices();
    }
    let mut ends = vec![1usize; x.num_vertices()];
    for _ in 0..k {
        let mut next = vec![0usize; x.num_vertices()];
        for (s, t) in x.edge_list() {
            next[t] += ends[s];
        }
        ends = next;
    }
    ends.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn simplex_maps_are_walks(x in graph(), n in 0usize..4) {
        prop_assert_eq!(hom_set(&ArityFamily::Delta0.realise(n), &x).len(), walks(&x, n));
    }

    #[test]
    fn identity_preserves_pushouts(z in graph(), x in graph(), y in graph(), pick in any::<(usize, usize)>()) {
        let fs = hom_set(&z, &x);
        let gs = hom_set(&z, &y);
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let (f, g) = (fs[pick.0 % fs.len()].clone(), gs[pick.1 % gs.len()].clone());
        let probe = PushoutProbe::new(z, x, y, f, g).unwrap();
        prop_assert!(pushout_preservation(&Identity(Shape::Graph), &probe).unwrap().preserved);
    }

    #[test]
    fn graph_monad_laws(x in graph(), y in graph(), seed in any::<u64>()) {
        for name in ["free-category", "free-groupoid", "pointing", "involution", "involutive"] {
            let t = builtin(name).unwrap();
            let (tx, ty) = (t.object(&x).unwrap(), t.object(&y).unwrap());
            if !(tx.exact && ty.exact) {
                continue;
            }
            let fs = hom_set(&x, &ty.object);
            let gs = hom_set(&y, &ty.object);
            if fs.is_empty() || gs.is_empty() {
                continue;
            }
            let f = &fs[seed as usize % fs.len()];
            let g = &gs[(seed >> 32) as usize % gs.len()];
            prop_assert!(kleisli_laws_hold(t.as_ref(), &tx, &ty, &ty, f, g), "{}", name);
        }
    }
}

#[test]
fn pointed_arity_categories_compose() {
    for t in [&Involution as &dyn lawkit_core::monadkit::ComputableMonad, &Involutive] {
        let cat = arity_category(t, ArityFamily::Delta0, 2).unwrap();
        assert!(cat.exact && cat.is_associative() && cat.is_unital(), "{}", t.name());
    }
}

#[test]
fn catalan_totals_for_small_depths() {
    let c = [1u64, 1, 2, 5, 14, 42, 132];
    for x in 0..=3u64 {
        for d in 0..=6 {
            let expected: u64 = (0..=d).map(|n| c[n] * x.pow(n as u32 + 1)).sum();
            assert_eq!(catalan_census(x as usize, d).total, expected);
        }
    }
}

#[test]
fn category_models_are_small_categories() {
    let p = Pretheory::bundled("category").unwrap();
    let loops = FinPresheaf::graph(1, &[(0, 0), (0, 0)]);
    let monoid = Pretheory::bundled("monoid").unwrap();
    let budget = Budget::unlimited();
    assert_eq!(count_models(&p, &loops, &budget).unwrap(), count_models(&monoid, &FinPresheaf::set(2), &budget).unwrap());
    assert_eq!(count_models(&p, &FinPresheaf::graph(2, &[(0, 0), (1, 1), (0, 1)]), &budget).unwrap(), 1);
}

#[test]
fn united_words_agree_on_models() {
    for name in ["monoid", "category"] {
        let p = Pretheory::bundled(name).unwrap();
        let table = congruence_closure_with(&p, &ClosureOptions::new(3).verify(false));
        let census = ModelCensus::new(&p, 2, &table.arities);
        for &a in &table.arities {
            for &b in &table.arities {
                for class in table.partition(a, b) {
                    for m in &census.models {
                        let base = evaluate_word(m, &table.word(class[0])).unwrap();
                        for &w in &class[1..] {
                            assert_eq!(evaluate_word(m, &table.word(w)).unwrap(), base, "{name}: {}", p.show(&table.word(w)));
                        }
                    }
                }
            }
        }
    }
}
