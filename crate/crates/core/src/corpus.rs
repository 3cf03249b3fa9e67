//! Seeded random instances: small categories, profunctors and copresheaves
//! presented by generators and relations, and small actions of bicategories.
//!
//! Everything is reproducible from the seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicat::{BicatAction, FinBicategory, StrictMonoidal};
use crate::fincat::{ConcreteBuilder, Copresheaf, FinCategory, FinFunctor};
use crate::finset::{all_tables, FinSet, Label};
use crate::hom_search::{congruence, Op, UnaryAlgebra};
use crate::profunctor::SetProfunctor;
use crate::tambara::ProfFamily;

pub struct Corpus {
    rng: ChaCha8Rng,
}

fn profunctor_algebra(p: &SetProfunctor) -> UnaryAlgebra {
    let (c, d) = (&p.left, &p.right);
    let nd = d.n_objects();
    let sorts = (0..c.n_objects() * nd).map(|k| p.set(k / nd, k % nd).len()).collect();
    let mut ops = Vec::new();
    for f in 0..c.n_morphisms() {
        for y in 0..nd {
            ops.push(Op { from: c.tgt(f) * nd + y, to: c.src(f) * nd + y, table: p.lact_table(f, y).to_vec() });
        }
    }
    for x in 0..c.n_objects() {
        for g in 0..d.n_morphisms() {
            ops.push(Op { from: x * nd + d.src(g), to: x * nd + d.tgt(g), table: p.ract_table(x, g).to_vec() });
        }
    }
    UnaryAlgebra { sorts, ops }
}

/// The quotient of `p` by the least congruence containing `pairs`
/// (`(c, d, e1, e2)`); each class is labelled by its first member.
pub fn quotient_profunctor(p: &SetProfunctor, pairs: &[(usize, usize, usize, usize)]) -> SetProfunctor {
    let nd = p.right.n_objects();
    let alg = profunctor_algebra(p);
    let classes = congruence(&alg, &pairs.iter().map(|&(c, d, a, b)| (c * nd + d, a, b)).collect::<Vec<_>>());
    let rep_label = |s: usize, e: usize| {
        let k = classes[s][e];
        let first = classes[s].iter().position(|&x| x == k).unwrap();
        p.set(s / nd, s % nd).get(first).clone()
    };
    SetProfunctor::build(
        p.left.clone(),
        p.right.clone(),
        |c, d| FinSet::collect((0..p.set(c, d).len()).map(|e| rep_label(c * nd + d, e))),
        |f, d, x| {
            let e = p.set(p.left.tgt(f), d).index_of(x).unwrap();
            rep_label(p.left.src(f) * nd + d, p.lact(f, d, e))
        },
        |c, g, x| {
            let e = p.set(c, p.right.src(g)).index_of(x).unwrap();
            rep_label(c * nd + p.right.tgt(g), p.ract(c, g, e))
        },
    )
    .expect("quotient by a congruence")
}

/// `Σ_k C(-, c_k) × D(d_k, =)`, elements labelled `(k, f, g)`.
pub fn representable_sum(c: &Arc<FinCategory>, d: &Arc<FinCategory>, gens: &[(usize, usize)]) -> SetProfunctor {
    let (cc, dd) = (c.clone(), d.clone());
    let split = |l: &Label| match l {
        Label::Tup(v) => (v[0].clone(), cc.morphism_index(&v[1]).unwrap(), dd.morphism_index(&v[2]).unwrap()),
        _ => unreachable!("triples only"),
    };
    SetProfunctor::build(
        c.clone(),
        d.clone(),
        |x, y| {
            FinSet::collect(gens.iter().enumerate().flat_map(|(k, &(c0, d0))| {
                let (cc, dd) = (&cc, &dd);
                cc.hom(x, c0).iter().flat_map(move |&f| {
                    dd.hom(d0, y).iter().map(move |&g| Label::tup(vec![k.into(), cc.mor_label(f).clone(), dd.mor_label(g).clone()]))
                })
            }))
        },
        |f, _, l| {
            let (k, u, w) = split(l);
            Label::tup(vec![k, c.mor_label(c.compose(f, u)).clone(), d.mor_label(w).clone()])
        },
        |_, g, l| {
            let (k, u, w) = split(l);
            Label::tup(vec![k, c.mor_label(u).clone(), d.mor_label(d.compose(w, g)).clone()])
        },
    )
    .expect("sum of representables")
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A preorder, a monoid or a concrete category with at most `max_objects`
    /// objects and `max_morphisms` morphisms.
    pub fn category(&mut self, max_objects: usize, max_morphisms: usize) -> FinCategory {
        loop {
            let c = match self.rng.gen_range(0..4) {
                0 => {
                    let n = self.rng.gen_range(1..=max_objects);
                    let edges = self.rng.gen_range(0..=n);
                    let rel: Vec<(usize, usize)> = (0..edges).map(|_| (self.rng.gen_range(0..n), self.rng.gen_range(0..n))).collect();
                    Some(FinCategory::preorder(n, &rel))
                }
                1 => Some(FinCategory::cyclic_group(self.rng.gen_range(1..=4))),
                2 => {
                    // a transformation monoid
                    let size = self.rng.gen_range(1..=3);
                    let mut b = ConcreteBuilder::new();
                    b.object(Label::from(0usize), size);
                    for _ in 0..self.rng.gen_range(1..=2) {
                        let t = (0..size).map(|_| self.rng.gen_range(0..size)).collect();
                        b.generator(0, 0, t);
                    }
                    b.build(max_morphisms).ok().map(|c| (*c.category).clone())
                }
                _ => {
                    let n = self.rng.gen_range(1..=max_objects.min(3));
                    let mut b = ConcreteBuilder::new();
                    let sizes: Vec<usize> = (0..n).map(|k| {
                        let s = self.rng.gen_range(1..=2);
                        b.object(Label::from(k), s);
                        s
                    }).collect();
                    for _ in 0..self.rng.gen_range(1..=3) {
                        let (s, t) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
                        let table = (0..sizes[s]).map(|_| self.rng.gen_range(0..sizes[t])).collect();
                        b.generator(s, t, table);
                    }
                    b.build(max_morphisms).ok().map(|c| (*c.category).clone())
                }
            };
            if let Some(c) = c {
                if c.n_objects() <= max_objects && c.n_morphisms() <= max_morphisms {
                    return c;
                }
            }
        }
    }

    /// A profunctor `C^op × D -> Set` presented by one or two representable
    /// generators and up to two relations; `None` if a set exceeds `max_set`.
    pub fn profunctor(&mut self, c: &Arc<FinCategory>, d: &Arc<FinCategory>, max_set: usize) -> Option<SetProfunctor> {
        let n = self.rng.gen_range(1..=2);
        let gens: Vec<(usize, usize)> = (0..n).map(|_| (self.rng.gen_range(0..c.n_objects()), self.rng.gen_range(0..d.n_objects()))).collect();
        let mut p = representable_sum(c, d, &gens);
        let mut pairs = Vec::new();
        for _ in 0..self.rng.gen_range(0..=2) {
            let (x, y) = (self.rng.gen_range(0..c.n_objects()), self.rng.gen_range(0..d.n_objects()));
            let k = p.set(x, y).len();
            if k >= 2 {
                pairs.push((x, y, self.rng.gen_range(0..k), self.rng.gen_range(0..k)));
            }
        }
        if !pairs.is_empty() {
            p = quotient_profunctor(&p, &pairs);
        }
        let fits = (0..c.n_objects()).all(|x| (0..d.n_objects()).all(|y| p.set(x, y).len() <= max_set));
        fits.then_some(p)
    }

    /// A copresheaf presented by representables and relations, total size at
    /// most `max_total`.
    pub fn copresheaf(&mut self, c: &Arc<FinCategory>, max_total: usize) -> Option<Copresheaf> {
        let one = Arc::new(FinCategory::terminal());
        let p = self.profunctor(&one, c, max_total)?;
        let sets: Vec<FinSet> = (0..c.n_objects()).map(|y| p.set(0, y).clone()).collect();
        if sets.iter().map(FinSet::len).sum::<usize>() > max_total {
            return None;
        }
        let actions = (0..c.n_morphisms()).map(|g| p.ract_table(0, g).to_vec()).collect();
        Copresheaf::new(c.clone(), sets, actions).ok()
    }

    /// A uniformly random functor `C -> D`, if one is found within `budget` steps.
    pub fn functor(&mut self, c: &Arc<FinCategory>, d: &Arc<FinCategory>, budget: usize) -> Option<FinFunctor> {
        let all = all_functors(c, d, budget);
        all.choose(&mut self.rng).cloned()
    }

    /// A small action of a bicategory with at most two objects and four
    /// 1-cells, on fibres with at most three objects.
    pub fn action(&mut self) -> Arc<BicatAction> {
        match self.rng.gen_range(0..5) {
            0 => {
                // Z/n by a permutation of order dividing n
                let n = self.rng.gen_range(2..=4);
                let size = self.rng.gen_range(1..=3);
                let sigma = loop {
                    let mut s: Vec<usize> = (0..size).collect();
                    s.shuffle(&mut self.rng);
                    if power(&s, n) == (0..size).collect::<Vec<_>>() {
                        break s;
                    }
                };
                let base = Arc::new(FinBicategory::deloop(&StrictMonoidal::cyclic(n)).unwrap());
                Arc::new(BicatAction::discrete(base, vec![FinSet::range(size)], |m, x| power(&sigma, m)[x]).unwrap())
            }
            1 => {
                // the groupoid with two isomorphic objects, acting by a bijection
                let g = FinCategory::preorder(2, &[(0, 1), (1, 0)]);
                let size = self.rng.gen_range(1..=2);
                let mut sigma: Vec<usize> = (0..size).collect();
                sigma.shuffle(&mut self.rng);
                let inv: Vec<usize> = (0..size).map(|y| sigma.iter().position(|&v| v == y).unwrap()).collect();
                let base = Arc::new(FinBicategory::locally_discrete(&g));
                let b2 = base.clone();
                Arc::new(
                    BicatAction::discrete(base, vec![FinSet::range(size), FinSet::range(size)], move |m, x| {
                        match (b2.cell_src(m), b2.cell_tgt(m)) {
                            (0, 1) => sigma[x],
                            (1, 0) => inv[x],
                            _ => x,
                        }
                    })
                    .unwrap(),
                )
            }
            2 => {
                // Z/2 swapping the two objects of the codiscrete category
                let fibre = Arc::new(FinCategory::preorder(2, &[(0, 1), (1, 0)]));
                let f2 = fibre.clone();
                let swap_mor = move |f: usize| f2.hom(1 - f2.src(f), 1 - f2.tgt(f))[0];
                let mon = StrictMonoidal::cyclic(2);
                Arc::new(
                    BicatAction::monoidal(&mon, fibre, |m, x| if m == 0 { x } else { 1 - x }, move |m, f| if m == 0 { f } else { swap_mor(f) })
                        .unwrap(),
                )
            }
            3 => {
                // the walking arrow acting on itself by min
                let mon = StrictMonoidal::min_arrow();
                let fibre = Arc::new(FinCategory::walking_arrow());
                let (mc, f2) = (mon.cat.clone(), fibre.clone());
                Arc::new(
                    BicatAction::monoidal(&mon, fibre, |m, x| m.min(x), move |alpha, f| {
                        f2.hom(mc.src(alpha).min(f2.src(f)), mc.tgt(alpha).min(f2.tgt(f)))[0]
                    })
                    .unwrap(),
                )
            }
            _ => {
                // the trivial base on a small category
                let c = Arc::new(self.category(3, 6));
                Arc::new(BicatAction::monoidal(&StrictMonoidal::trivial(), c, |_, x| x, |_, f| f).unwrap())
            }
        }
    }

    /// A family of profunctors over `(ax, ay)` with every set of size at most `max_set`.
    pub fn family(&mut self, ax: &Arc<BicatAction>, ay: &Arc<BicatAction>, max_set: usize) -> ProfFamily {
        loop {
            let profs: Option<Vec<SetProfunctor>> = (0..ax.base.n_objects())
                .map(|o| {
                    if self.rng.gen_bool(0.2) {
                        Some(SetProfunctor::constant(&ax.fibres[o], &ay.fibres[o], &FinSet::empty()))
                    } else {
                        self.profunctor(&ax.fibres[o], &ay.fibres[o], max_set)
                    }
                })
                .collect();
            if let Some(profs) = profs {
                return ProfFamily::new(ax.clone(), ay.clone(), profs).expect("fibrewise profunctors");
            }
        }
    }
}

fn power(sigma: &[usize], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..sigma.len()).collect();
    for _ in 0..n {
        out = out.iter().map(|&x| sigma[x]).collect();
    }
    out
}

/// Every functor `C -> D`, by backtracking over object and morphism images;
/// gives up (returning what it has) after `budget` steps.
pub fn all_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>, budget: usize) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    let mut steps = 0;
    for omap in all_tables(c.n_objects(), d.n_objects()) {
        let mut mmap = vec![usize::MAX; c.n_morphisms()];
        extend(c, d, &omap, &mut mmap, 0, &mut out, &mut steps, budget);
        if steps > budget {
            break;
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    omap: &[usize],
    mmap: &mut Vec<usize>,
    k: usize,
    out: &mut Vec<FinFunctor>,
    steps: &mut usize,
    budget: usize,
) {
    *steps += 1;
    if *steps > budget {
        return;
    }
    if k == c.n_morphisms() {
        out.push(FinFunctor::new(c.clone(), d.clone(), omap.to_vec(), mmap.clone()).expect("typed functor"));
        return;
    }
    let candidates: Vec<usize> = if c.is_identity(k) {
        vec![d.id(omap[c.src(k)])]
    } else {
        d.hom(omap[c.src(k)], omap[c.tgt(k)]).to_vec()
    };
    for v in candidates {
        mmap[k] = v;
        let ok = (0..=k).all(|f| {
            (0..=k).all(|g| match c.try_compose(f, g) {
                Some(h) if h <= k => d.try_compose(mmap[f], mmap[g]) == Some(mmap[h]),
                _ => true,
            })
        });
        if ok {
            extend(c, d, omap, mmap, k + 1, out, steps, budget);
        }
    }
    mmap[k] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::check_bicat_action;
    use crate::fincat::{check_category, check_copresheaf, check_functor};
    use crate::profunctor::check_profunctor;
    use crate::tambara::check_family;

    #[test]
    fn generated_objects_pass_their_checkers() {
        let mut corpus = Corpus::new(3);
        for _ in 0..30 {
            let c = Arc::new(corpus.category(4, 10));
            assert!(check_category(&c).ok());
            if let Some(p) = corpus.profunctor(&c, &c, 6) {
                assert!(check_profunctor(&p).ok(), "{}", check_profunctor(&p));
            }
            if let Some(f) = corpus.copresheaf(&c, 6) {
                assert!(check_copresheaf(&f).ok());
            }
            if let Some(f) = corpus.functor(&c, &c, 10_000) {
                assert!(check_functor(&f).ok());
            }
        }
        for _ in 0..20 {
            let a = corpus.action();
            assert!(check_bicat_action(&a).ok());
            let q = corpus.family(&a, &a, 2);
            assert!(check_family(&q).ok());
        }
    }

    #[test]
    fn functors_of_the_walking_arrow() {
        let c = Arc::new(FinCategory::walking_arrow());
        // 0->0, 1->1, 0->1 ; the last picks the arrow
        assert_eq!(all_functors(&c, &c, 1000).len(), 3);
    }

    #[test]
    fn quotients_are_deterministic() {
        let c = Arc::new(FinCategory::cyclic_group(2));
        let p = representable_sum(&c, &c, &[(0, 0)]);
        assert_eq!(p.set(0, 0).len(), 4);
        let q = quotient_profunctor(&p, &[(0, 0, 0, 1)]);
        assert!(check_profunctor(&q).ok());
        assert!(q.set(0, 0).len() < 4);
    }
}
