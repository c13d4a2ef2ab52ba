use super::*;
use crate::base::{ArityFamily, FinPresheaf, PresheafMap, Shape};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn first_maps(x: &FinPresheaf, y: &FinPresheaf, n: usize) -> Vec<PresheafMap> {
    let mut out = Vec::new();
    let _ = crate::base::HomSearch::new(x, y).visit(|m| {
        out.push(m.clone());
        if out.len() < n {
            std::ops::ControlFlow::Continue(())
        } else {
            std::ops::ControlFlow::Break(())
        }
    });
    out
}

fn cospan() -> FinPresheaf {
    FinPresheaf::graph(3, &[(0, 1), (2, 1)])
}

#[test]
fn registry() {
    for name in BUILTIN_MONADS {
        assert!(!builtin(name).unwrap().name().is_empty());
    }
    assert!(matches!(builtin("nope"), Err(crate::error::MonadError::UnknownName(_))));
}

#[test]
fn free_category_on_simplex() {
    let t = FreeCategory::default();
    for n in 0..5 {
        let o = t.object(&ArityFamily::Delta0.realise(n)).unwrap();
        assert_eq!(o.object.num_vertices(), n + 1);
        assert_eq!(o.object.num_edges(), (n + 1) * (n + 2) / 2);
        assert!(o.exact);
    }
}

#[test]
fn pointing_and_involution_on_cospan() {
    let x = cospan();
    let p = Pointing.object(&x).unwrap();
    assert_eq!(p.object.sizes(), &[5, 2]);
    let q = Involution.object(&x).unwrap();
    assert_eq!(q.object.num_edges(), 4);
}

#[test]
fn simplex_category_counts() {
    let t = FreeCategory::default();
    let cat = arity_category(&t, ArityFamily::Delta0, 3).unwrap();
    for m in 0..=3 {
        for n in 0..=3 {
            assert_eq!(cat.hom_count(m, n), binom(m + n + 1, m + 1), "{m} {n}");
        }
    }
    assert!(cat.exact && cat.is_unital() && cat.is_associative());
}

#[test]
fn involution_arity_homs() {
    let cat = arity_category(&Involution, ArityFamily::Delta0, 1).unwrap();
    assert_eq!(cat.hom_count(1, 1), 2);
}

#[test]
fn pointed_counts_on_cospan() {
    let x = cospan();
    for n in 0..4 {
        for t in [PointedMonad::P, PointedMonad::Q] {
            let c = hom_census_formulas(t, n, &x).unwrap();
            assert!(c.agrees(), "{c:?}");
        }
    }
    let c = hom_census_formulas(PointedMonad::P, 2, &FinPresheaf::graph(1, &[])).unwrap();
    assert_eq!((c.direct, c.formula), (0, 0));
}

#[test]
fn groupoid_pushout_fails() {
    let probe = PushoutProbe::cospan();
    let v = pushout_preservation(&FreeGroupoid::default(), &probe).unwrap();
    assert!(!v.preserved && v.exact);
    assert_eq!(v.domain_sizes[1], 7);
    assert_eq!(v.codomain_sizes[1], 9);
    assert!(v.missing.iter().any(|c| c.ends == Some(("a".into(), "c".into()))));
    assert!(pushout_preservation(&FreeCategory::default(), &probe).unwrap().preserved);
    assert!(pushout_preservation(&Identity(Shape::Graph), &probe).unwrap().preserved);
}

#[test]
fn involutive_arity_probe() {
    let probe = PushoutProbe::cospan();
    let v = nerve_arity_probe(&Involutive, &probe, 2).unwrap();
    assert!(!v.passed && v.exact);
    assert!(v.unhit.contains(&vec!["r".to_string(), "i(s)".to_string()]));
    assert!(nerve_arity_probe(&FreeCategory::default(), &probe, 2).unwrap().passed);
    let g = nerve_arity_probe(&FreeGroupoid::default(), &probe, 1).unwrap();
    assert!(!g.passed);
}

#[test]
fn catalan_counts() {
    let cat = [1u64, 1, 2, 5, 14, 42, 132];
    for x in 1..=3u64 {
        let c = catalan_census(x as usize, 6);
        for (n, &k) in c.counts.iter().enumerate() {
            assert_eq!(k, cat[n] * x.pow(n as u32 + 1));
        }
    }
    assert_eq!(catalan_census(3, 6).total, 323_175);
    let t = TermMonad::binary(3);
    assert_eq!(t.object(&FinPresheaf::set(2)).unwrap().object.size(0) as u64, catalan_census(2, 3).total);
}

#[test]
fn saturation() {
    let id = |n| PresheafMap::identity(&FinPresheaf::set(n));
    let two = FinPresheaf::set(2);
    assert!(factor_through(&id(4), &FinPresheaf::set(4), &two, &FinPresheaf::set(4)).is_none());
    assert!(factor_through(&id(2), &two, &two, &two).is_some());
    let constant = PresheafMap::new(vec![vec![0, 0, 0]]);
    assert!(factor_through(&constant, &FinPresheaf::set(3), &FinPresheaf::set(1), &two).is_some());
}

#[test]
fn coequalizer_examples() {
    let rep = coequalizer_experiment(2).unwrap();
    assert!(rep.all_bijective());
    let row = |v, e: &[(usize, usize)]| rep.rows.iter().find(|r| r.vertices == v && r.edges == e).unwrap().clone();
    let single = row(2, &[(0, 1)]);
    assert_eq!((single.q_structures, single.equalized), (1, 0));
    let double = row(2, &[(0, 1), (1, 0)]);
    assert_eq!((double.equalized, double.involutive), (1, 1));
    let bare = row(2, &[]);
    assert_eq!((bare.p_structures, bare.q_structures, bare.equalized), (1, 1, 1));
    assert_eq!(single.p_structures, 2);
}

#[test]
fn term_monads() {
    let x = FinPresheaf::set(2);
    let sig = |ops: &[(usize, usize)]| crate::pretheory::Signature {
        family: ArityFamily::Fin,
        ops: ops.iter().map(|&(a, k)| (a, FinPresheaf::set(k))).collect(),
    };
    let empty = sig(&[]);
    let t = free_monad_from_signature(&empty, 4).unwrap();
    assert_eq!(t.object(&x).unwrap().object.size(0), 2);
    let unary = sig(&[(1, 1)]);
    let t = free_monad_from_signature(&unary, 4).unwrap();
    assert_eq!(t.object(&x).unwrap().object.size(0), 5 * 2);
}

#[test]
fn monad_laws() {
    let graphs: Vec<FinPresheaf> =
        vec![FinPresheaf::graph(1, &[]), FinPresheaf::graph(2, &[(0, 1)]), cospan(), FinPresheaf::graph(2, &[(0, 1), (1, 0)])];
    for name in ["identity", "free-category", "free-groupoid", "pointing", "involution", "involutive"] {
        let t = builtin(name).unwrap();
        for x in &graphs {
            for y in &graphs {
                let (tx, ty) = (t.object(x).unwrap(), t.object(y).unwrap());
                let tz = ty.clone();
                let fs = first_maps(x, &ty.object, 20);
                let gs = first_maps(y, &tz.object, 20);
                for f in fs.iter().take(20) {
                    for g in gs.iter().take(20) {
                        assert!(kleisli_laws_hold(t.as_ref(), &tx, &ty, &tz, f, g), "{name}");
                    }
                }
            }
        }
    }
    let sets: Vec<FinPresheaf> = (0..3).map(FinPresheaf::set).collect();
    let small: Vec<(&str, Box<dyn ComputableMonad>)> = vec![
        ("identity-set", builtin("identity-set").unwrap()),
        ("free-monoid", Box::new(FreeMonoid { depth: 3 })),
        ("binary-terms", Box::new(TermMonad::binary(2))),
    ];
    for (name, t) in small {
        for x in &sets {
            for y in &sets {
                let (tx, ty) = (t.object(x).unwrap(), t.object(y).unwrap());
                let fs = first_maps(x, &ty.object, 10);
                let gs = first_maps(y, &ty.object, 10);
                for f in fs.iter().take(10) {
                    for g in gs.iter().take(10) {
                        assert!(kleisli_laws_hold(t.as_ref(), &tx, &ty, &ty, f, g), "{name}");
                    }
                }
            }
        }
    }
}
