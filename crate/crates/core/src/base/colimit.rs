use super::presheaf::{FinPresheaf, PresheafMap};
use crate::error::BaseError;
use crate::util::UnionFind;

/// A finite colimit computed pointwise, with its colimit injections.
#[derive(Debug, Clone)]
pub struct Colimit {
    pub object: FinPresheaf,
    pub injections: Vec<PresheafMap>,
    objects: Vec<FinPresheaf>,
    arrows: Vec<(usize, usize, PresheafMap)>,
}

impl Colimit {
    /// Colimit of a finite diagram given as objects and arrows `(from, to, map)`.
    pub fn of(objects: &[FinPresheaf], arrows: &[(usize, usize, PresheafMap)]) -> Result<Colimit, BaseError> {
        let shape = match objects.first() {
            Some(x) => x.shape(),
            None => return Err(BaseError::EmptyDiagram),
        };
        if objects.iter().any(|x| x.shape() != shape) {
            return Err(BaseError::ShapeMismatch);
        }
        for (from, to, f) in arrows {
            if !f.is_map(&objects[*from], &objects[*to]) {
                return Err(BaseError::NotAMap);
            }
        }
        let ncomp = shape.num_objects();
        // Offsets of each object's component inside the coproduct.
        let mut offsets = vec![vec![0usize; ncomp]; objects.len()];
        let mut totals = vec![0usize; ncomp];
        for (i, x) in objects.iter().enumerate() {
            offsets[i].copy_from_slice(&totals);
            for (c, t) in totals.iter_mut().enumerate() {
                *t += x.size(c);
            }
        }
        let mut ufs: Vec<UnionFind> = totals.iter().map(|&n| UnionFind::new(n)).collect();
        for (from, to, f) in arrows {
            for c in 0..ncomp {
                for (x, &y) in f.parts[c].iter().enumerate() {
                    ufs[c].union_min(offsets[*from][c] + x, offsets[*to][c] + y);
                }
            }
        }
        // Number classes by first occurrence.
        let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(ncomp);
        let mut sizes = Vec::with_capacity(ncomp);
        for (c, uf) in ufs.iter_mut().enumerate() {
            let mut label = vec![usize::MAX; totals[c]];
            let mut next = 0;
            let mut cls = vec![0; totals[c]];
            for (x, slot) in cls.iter_mut().enumerate() {
                let r = uf.find(x);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                *slot = label[r];
            }
            class_of.push(cls);
            sizes.push(next);
        }
        let cat = shape.category();
        let mut faces = vec![Vec::new(); cat.generators.len()];
        for (u, g) in cat.generators.iter().enumerate() {
            let mut table = vec![0; sizes[g.dst]];
            for (i, x) in objects.iter().enumerate() {
                for e in 0..x.size(g.dst) {
                    let ce = class_of[g.dst][offsets[i][g.dst] + e];
                    table[ce] = class_of[g.src][offsets[i][g.src] + x.face(u, e)];
                }
            }
            faces[u] = table;
        }
        let object = FinPresheaf::new(shape, sizes, faces)?;
        let injections = objects
            .iter()
            .enumerate()
            .map(|(i, x)| {
                PresheafMap::new((0..ncomp).map(|c| (0..x.size(c)).map(|e| class_of[c][offsets[i][c] + e]).collect()).collect())
            })
            .collect();
        Ok(Colimit { object, injections, objects: objects.to_vec(), arrows: arrows.to_vec() })
    }

    /// The unique mediating map out of the colimit for a cocone into `target`.
    pub fn factor(&self, cocone: &[PresheafMap], target: &FinPresheaf) -> Result<PresheafMap, BaseError> {
        if cocone.len() != self.objects.len() {
            return Err(BaseError::NotACocone);
        }
        for (i, leg) in cocone.iter().enumerate() {
            if !leg.is_map(&self.objects[i], target) {
                return Err(BaseError::NotACocone);
            }
        }
        for (from, to, f) in &self.arrows {
            if f.then(&cocone[*to]) != cocone[*from] {
                return Err(BaseError::NotACocone);
            }
        }
        const UNSET: usize = usize::MAX;
        let mut parts: Vec<Vec<usize>> = self.object.sizes().iter().map(|&n| vec![UNSET; n]).collect();
        for (inj, leg) in self.injections.iter().zip(cocone) {
            for (c, part) in inj.parts.iter().enumerate() {
                for (x, &cls) in part.iter().enumerate() {
                    parts[c][cls] = leg.parts[c][x];
                }
            }
        }
        debug_assert!(parts.iter().flatten().all(|&v| v != UNSET));
        Ok(PresheafMap::new(parts))
    }
}

/// Coproduct with its injections; the empty coproduct is the initial presheaf.
pub fn coproduct(xs: &[FinPresheaf], shape: crate::base::Shape) -> Result<Colimit, BaseError> {
    if xs.is_empty() {
        let empty = FinPresheaf::empty(shape);
        return Ok(Colimit { object: empty.clone(), injections: vec![], objects: vec![], arrows: vec![] });
    }
    Colimit::of(xs, &[])
}

/// Pushout of `f: z → x` and `g: z → y`. Injections are `[into x, into y]`.
pub fn pushout(
    z: &FinPresheaf,
    x: &FinPresheaf,
    y: &FinPresheaf,
    f: &PresheafMap,
    g: &PresheafMap,
) -> Result<Pushout, BaseError> {
    let colim = Colimit::of(&[z.clone(), x.clone(), y.clone()], &[(0, 1, f.clone()), (0, 2, g.clone())])?;
    Ok(Pushout { colim })
}

/// A pushout square with its universal property.
#[derive(Debug, Clone)]
pub struct Pushout {
    colim: Colimit,
}

impl Pushout {
    pub fn object(&self) -> &FinPresheaf {
        &self.colim.object
    }

    pub fn inl(&self) -> &PresheafMap {
        &self.colim.injections[1]
    }

    pub fn inr(&self) -> &PresheafMap {
        &self.colim.injections[2]
    }

    /// Mediating map for a cocone `p: x → w`, `q: y → w`.
    pub fn factor(&self, p: &PresheafMap, q: &PresheafMap, w: &FinPresheaf) -> Result<PresheafMap, BaseError> {
        let (_, _, f) = &self.colim.arrows[0];
        let via_z = f.then(p);
        self.colim.factor(&[via_z, p.clone(), q.clone()], w)
    }
}

/// Wide pushout of legs `z → x_i` (at least one). Injections are indexed by
/// leg.
pub fn wide_pushout(z: &FinPresheaf, legs: &[(FinPresheaf, PresheafMap)]) -> Result<Colimit, BaseError> {
    if legs.is_empty() {
        return Err(BaseError::EmptyDiagram);
    }
    let mut objects = vec![z.clone()];
    let mut arrows = Vec::new();
    for (i, (x, f)) in legs.iter().enumerate() {
        objects.push(x.clone());
        arrows.push((0, i + 1, f.clone()));
    }
    let mut colim = Colimit::of(&objects, &arrows)?;
    // Expose leg injections only; the apex injection factors through any leg.
    colim.injections.remove(0);
    colim.objects.remove(0);
    colim.arrows.clear();
    Ok(colim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::presheaf::{find_isomorphism, hom_set};
    use crate::base::{ArityFamily, Shape};

    fn d0() -> ArityFamily {
        ArityFamily::Delta0
    }

    #[test]
    fn gluing_two_edges_target_to_source_gives_path_of_length_two() {
        let a = d0();
        let (p0, p1) = (a.realise(0), a.realise(1));
        let tau = a.base_map_by_name("tau").unwrap().realisation(&a);
        let sigma = a.base_map_by_name("sigma").unwrap().realisation(&a);
        let po = pushout(&p0, &p1, &p1, &tau, &sigma).unwrap();
        assert!(find_isomorphism(po.object(), &a.realise(2)).is_some());
    }

    #[test]
    fn gluing_two_targets_gives_cospan_graph() {
        let a = d0();
        let tau = a.base_map_by_name("tau").unwrap().realisation(&a);
        let po = pushout(&a.realise(0), &a.realise(1), &a.realise(1), &tau, &tau).unwrap();
        let expected = FinPresheaf::graph(3, &[(0, 1), (2, 1)]);
        assert!(find_isomorphism(po.object(), &expected).is_some());
        assert_eq!(po.object().num_edges(), 2);
    }

    #[test]
    fn pushout_along_identity_is_other_codomain() {
        let x = FinPresheaf::graph(2, &[(0, 1)]);
        let y = FinPresheaf::graph(3, &[(0, 1), (1, 2)]);
        let g = hom_set(&x, &y)[0].clone();
        let po = pushout(&x, &x, &y, &PresheafMap::identity(&x), &g).unwrap();
        assert!(find_isomorphism(po.object(), &y).is_some());
    }

    #[test]
    fn coproduct_of_points() {
        let xs = vec![FinPresheaf::set(1); 4];
        let c = coproduct(&xs, Shape::Terminal).unwrap();
        assert_eq!(c.object, FinPresheaf::set(4));
        let mut hit = [false; 4];
        for inj in &c.injections {
            hit[inj.parts[0][0]] = true;
        }
        assert!(hit.iter().all(|&h| h));
        let empty = coproduct(&[], Shape::Graph).unwrap();
        assert!(empty.object.is_empty());
    }

    #[test]
    fn wide_pushout_builds_path_of_length_three() {
        let a = d0();
        // Three edges glued consecutively: vertex-wise this is [1] +_[0] [1] +_[0] [1].
        let diagram = a.density_presentation(3).into_iter().find(|d| d.apex == 3).unwrap();
        let colim = diagram.colimit(&a).unwrap();
        assert!(find_isomorphism(&colim.object, &a.realise(3)).is_some());
    }

    #[test]
    fn wide_pushout_single_leg_and_copowers() {
        let x = FinPresheaf::graph(2, &[(0, 1)]);
        let z = FinPresheaf::empty(Shape::Graph);
        let wp = wide_pushout(&z, &[(x.clone(), PresheafMap::from_empty(Shape::Graph))]).unwrap();
        assert_eq!(wp.object, x);
        let legs: Vec<_> = (0..3).map(|_| (FinPresheaf::set(1), PresheafMap::new(vec![vec![]]))).collect();
        let wp = wide_pushout(&FinPresheaf::set(0), &legs).unwrap();
        assert_eq!(wp.object, coproduct(&vec![FinPresheaf::set(1); 3], Shape::Terminal).unwrap().object);
    }

    #[test]
    fn wide_pushout_is_order_independent() {
        let a = d0();
        let p0 = a.realise(0);
        let p1 = a.realise(1);
        let sigma = a.base_map_by_name("sigma").unwrap().realisation(&a);
        let tau = a.base_map_by_name("tau").unwrap().realisation(&a);
        let legs = vec![(p1.clone(), sigma.clone()), (p1.clone(), tau.clone()), (p1.clone(), sigma.clone())];
        let mut rev = legs.clone();
        rev.reverse();
        let w1 = wide_pushout(&p0, &legs).unwrap();
        let w2 = wide_pushout(&p0, &rev).unwrap();
        assert!(find_isomorphism(&w1.object, &w2.object).is_some());
    }

    /// Exhaustive check of the pushout universal property on small instances.
    #[test]
    fn pushout_factoring_is_unique_mediator() {
        let a = d0();
        let tau = a.base_map_by_name("tau").unwrap().realisation(&a);
        let sigma = a.base_map_by_name("sigma").unwrap().realisation(&a);
        let (p0, p1) = (a.realise(0), a.realise(1));
        let targets = [
            FinPresheaf::graph(1, &[(0, 0)]),
            FinPresheaf::graph(2, &[(0, 1), (1, 0)]),
            FinPresheaf::graph(3, &[(0, 1), (1, 2), (2, 1)]),
        ];
        for (f, g) in [(&tau, &sigma), (&tau, &tau), (&sigma, &sigma)] {
            let po = pushout(&p0, &p1, &p1, f, g).unwrap();
            for w in &targets {
                for p in hom_set(&p1, w) {
                    for q in hom_set(&p1, w) {
                        let commutes = f.then(&p) == g.then(&q);
                        let res = po.factor(&p, &q, w);
                        assert_eq!(res.is_ok(), commutes);
                        if let Ok(m) = res {
                            assert!(m.is_map(po.object(), w));
                            let mediators: Vec<_> = hom_set(po.object(), w)
                                .into_iter()
                                .filter(|h| po.inl().then(h) == p && po.inr().then(h) == q)
                                .collect();
                            assert_eq!(mediators, vec![m]);
                        }
                    }
                }
            }
        }
    }
}
