//! Writes engine objects back out as declarations. Shared sub-objects are
//! declared once and referenced by name.

use std::sync::Arc;

use tambara_core::fincat::{Copresheaf, FinFunctor};
use tambara_core::{BicatAction, FinBicategory, FinCategory, Label, OpticIntegrand, OpticObject, ProfFamily, SetProfunctor, TambaraModule};

use crate::format::*;

#[derive(Default)]
pub struct Exporter {
    pub file: InstanceFile,
    cats: Vec<(Arc<FinCategory>, String)>,
    bicats: Vec<(Arc<FinBicategory>, String)>,
    acts: Vec<(Arc<BicatAction>, String)>,
}

/// The name of an equal declaration, or a fresh one holding `decl`.
fn intern<T: PartialEq>(map: &mut indexmap::IndexMap<String, T>, prefix: &str, decl: T) -> String {
    if let Some((n, _)) = map.iter().find(|(_, d)| **d == decl) {
        return n.clone();
    }
    let name = fresh(map, prefix);
    map.insert(name.clone(), decl);
    name
}

fn fresh<T>(map: &indexmap::IndexMap<String, T>, prefix: &str) -> String {
    (0..).map(|i| format!("{prefix}{i}")).find(|n| !map.contains_key(n)).unwrap()
}

impl Exporter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn category(&mut self, c: &Arc<FinCategory>) -> String {
        if let Some((_, n)) = self.cats.iter().find(|(d, _)| **d == **c) {
            return n.clone();
        }
        let name = fresh(&self.file.categories, "C");
        let o = |i: usize| c.obj_label(i).clone();
        let m = |i: usize| c.mor_label(i).clone();
        let mut compose = Vec::new();
        for f in 0..c.n_morphisms() {
            for g in 0..c.n_morphisms() {
                if let Some(h) = c.comp_entry(f, g) {
                    compose.push((m(f), m(g), m(h)));
                }
            }
        }
        let decl = CategoryDecl {
            objects: c.objects().labels().to_vec(),
            morphisms: (0..c.n_morphisms()).map(|f| (m(f), o(c.src(f)), o(c.tgt(f)))).collect(),
            identities: (0..c.n_objects()).map(|x| (o(x), m(c.id(x)))).collect(),
            compose,
        };
        self.file.categories.insert(name.clone(), decl);
        self.cats.push((c.clone(), name.clone()));
        name
    }

    pub fn functor(&mut self, f: &FinFunctor) -> String {
        let (dom, cod) = (self.category(&f.dom), self.category(&f.cod));
        let decl = FunctorDecl {
            dom,
            cod,
            objects: f.omap.iter().enumerate().map(|(x, &y)| (f.dom.obj_label(x).clone(), f.cod.obj_label(y).clone())).collect(),
            morphisms: f.mmap.iter().enumerate().map(|(x, &y)| (f.dom.mor_label(x).clone(), f.cod.mor_label(y).clone())).collect(),
        };
        intern(&mut self.file.functors, "F", decl)
    }

    pub fn copresheaf(&mut self, f: &Copresheaf) -> String {
        let category = self.category(&f.dom);
        let c = &f.dom;
        let mut actions = Vec::new();
        for (g, t) in f.actions.iter().enumerate() {
            let (from, to) = (&f.sets[c.src(g)], &f.sets[c.tgt(g)]);
            actions.extend(t.iter().enumerate().map(|(x, &y)| (c.mor_label(g).clone(), from.get(x).clone(), to.get(y).clone())));
        }
        let decl = CopresheafDecl {
            category,
            sets: f.sets.iter().enumerate().map(|(o, s)| (c.obj_label(o).clone(), s.labels().to_vec())).collect(),
            actions,
        };
        intern(&mut self.file.copresheaves, "A", decl)
    }

    pub fn profunctor(&mut self, p: &SetProfunctor) -> String {
        let (left, right) = (self.category(&p.left), self.category(&p.right));
        let (l, r) = (&p.left, &p.right);
        let mut sets = Vec::new();
        for c in 0..l.n_objects() {
            for d in 0..r.n_objects() {
                sets.push((l.obj_label(c).clone(), r.obj_label(d).clone(), p.set(c, d).labels().to_vec()));
            }
        }
        let mut lact = Vec::new();
        for f in 0..l.n_morphisms() {
            for d in 0..r.n_objects() {
                let (from, to) = (p.set(l.tgt(f), d), p.set(l.src(f), d));
                for (x, &y) in p.lact_table(f, d).iter().enumerate() {
                    lact.push((l.mor_label(f).clone(), r.obj_label(d).clone(), from.get(x).clone(), to.get(y).clone()));
                }
            }
        }
        let mut ract = Vec::new();
        for c in 0..l.n_objects() {
            for g in 0..r.n_morphisms() {
                let (from, to) = (p.set(c, r.src(g)), p.set(c, r.tgt(g)));
                for (x, &y) in p.ract_table(c, g).iter().enumerate() {
                    ract.push((l.obj_label(c).clone(), r.mor_label(g).clone(), from.get(x).clone(), to.get(y).clone()));
                }
            }
        }
        intern(&mut self.file.profunctors, "P", ProfunctorDecl { left, right, sets, lact, ract })
    }
}

impl Exporter {
    pub fn bicategory(&mut self, b: &Arc<FinBicategory>) -> String {
        if let Some((_, n)) = self.bicats.iter().find(|(d, _)| **d == **b) {
            return n.clone();
        }
        let n = b.n_objects();
        let ol = |o: usize| b.objects.get(o).clone();
        let mut homs = Vec::new();
        for o in 0..n {
            for o2 in 0..n {
                homs.push((ol(o), ol(o2), self.category(b.hom(o, o2))));
            }
        }
        let (mut compose1, mut compose2) = (Vec::new(), Vec::new());
        for a in 0..n {
            for m2 in 0..n {
                for c in 0..n {
                    for m in b.cells_between(a, m2) {
                        for k in b.cells_between(m2, c) {
                            let mk = b.compose1(m, k);
                            compose1.push((ol(a), ol(m2), ol(c), b.cell_label(m).clone(), b.cell_label(k).clone(), b.cell_label(mk).clone()));
                        }
                    }
                    for x in b.twos_between(a, m2) {
                        for y in b.twos_between(m2, c) {
                            let xy = b.hcomp2(x, y);
                            compose2.push((ol(a), ol(m2), ol(c), b.two_label(x).clone(), b.two_label(y).clone(), b.two_label(xy).clone()));
                        }
                    }
                }
            }
        }
        let decl = BicategoryDecl {
            objects: b.objects.labels().to_vec(),
            homs,
            units: (0..n).map(|o| (ol(o), b.cell_label(b.unit(o)).clone())).collect(),
            compose1,
            compose2,
        };
        let name = fresh(&self.file.bicategories, "B");
        self.file.bicategories.insert(name.clone(), decl);
        self.bicats.push((b.clone(), name.clone()));
        name
    }

    pub fn action(&mut self, a: &Arc<BicatAction>) -> String {
        if let Some((_, n)) = self.acts.iter().find(|(d, _)| **d == **a) {
            return n.clone();
        }
        let b = &a.base;
        let base = self.bicategory(b);
        let ol = |o: usize| b.objects.get(o).clone();
        let fibres = a.fibres.iter().enumerate().map(|(o, c)| (ol(o), self.category(c))).collect();
        let cells = (0..b.n_cells())
            .map(|m| (ol(b.cell_src(m)), ol(b.cell_tgt(m)), b.cell_label(m).clone(), self.functor(&a.on1[m])))
            .collect();
        let twos = (0..b.n_two_cells())
            .map(|t| {
                let m = b.two_src(t);
                let (from, to) = (&a.fibres[b.cell_src(m)], &a.fibres[b.cell_tgt(m)]);
                let comps = a.on2[t].iter().enumerate().map(|(x, &f)| (from.obj_label(x).clone(), to.mor_label(f).clone())).collect();
                (ol(b.cell_src(m)), ol(b.cell_tgt(m)), b.two_label(t).clone(), comps)
            })
            .collect();
        let name = fresh(&self.file.actions, "X");
        self.file.actions.insert(name.clone(), ActionDecl { base, fibres, cells, twos });
        self.acts.push((a.clone(), name.clone()));
        name
    }

    pub fn family(&mut self, q: &ProfFamily) -> String {
        let (x, y) = (self.action(&q.act_x), self.action(&q.act_y));
        let profunctors = q.profs.iter().enumerate().map(|(o, p)| (q.base().objects.get(o).clone(), self.profunctor(p))).collect();
        intern(&mut self.file.families, "Q", FamilyDecl { x, y, profunctors })
    }

    pub fn module(&mut self, p: &TambaraModule) -> String {
        let family = self.family(&p.family);
        let (q, b) = (&p.family, p.base());
        let mut strengths = Vec::new();
        for ((m, x, y, e), _) in p.strength_entries() {
            let (o, o2) = (b.cell_src(m), b.cell_tgt(m));
            let to = q.set(o2, q.act_x.act_obj(m, x), q.act_y.act_obj(m, y));
            strengths.push((
                b.objects.get(o).clone(),
                b.objects.get(o2).clone(),
                b.cell_label(m).clone(),
                q.act_x.fibres[o].obj_label(x).clone(),
                q.act_y.fibres[o].obj_label(y).clone(),
                q.set(o, x, y).get(e).clone(),
                to.get(p.st(m, x, y, e)).clone(),
            ));
        }
        intern(&mut self.file.modules, "T", ModuleDecl { family, strengths })
    }

    pub fn optic_objects(&mut self, name: &str, x: &Arc<BicatAction>, y: &Arc<BicatAction>, inner: OpticObject, outer: OpticObject) {
        let label = |t: OpticObject| -> (Label, Label, Label) {
            (x.base.objects.get(t.o).clone(), x.fibres[t.o].obj_label(t.a).clone(), y.fibres[t.o].obj_label(t.b).clone())
        };
        let (xn, yn) = (self.action(x), self.action(y));
        self.file.optics.insert(name.into(), OpticDecl::Objects { x: xn, y: yn, inner: label(inner), outer: label(outer) });
    }

    pub fn optic_integrand(&mut self, name: &str, i: &OpticIntegrand) {
        let category = self.category(&i.k);
        let forward = self.copresheaf(&i.fwd);
        let backward = self.copresheaf(&i.back);
        self.file.optics.insert(name.into(), OpticDecl::Integrand { category, forward, backward });
    }
}
