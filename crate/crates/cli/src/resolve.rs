//! Turns declarations into engine objects, in dependency order, and runs each
//! object's checker. Shapes are validated while building; laws are recorded
//! per declaration so `check` can report them all.

use std::sync::Arc;
use std::time::Instant;

use indexmap::IndexMap;
use tambara_core::fincat::{check_copresheaf, check_functor, Copresheaf, FinFunctor};
use tambara_core::tambara::check_family;
use tambara_core::{
    check_bicat, check_bicat_action, check_category, check_profunctor, check_tambara, BicatAction, FinBicategory,
    FinCategory, FinFunction, FinSet, Label, LawReport, OpticIntegrand, OpticObject, ProfFamily, SetProfunctor,
    TambaraModule,
};

use crate::error::{CliError, Result};
use crate::format::*;

#[derive(Clone, Debug)]
pub enum ResolvedOptic {
    Objects { x: Arc<BicatAction>, y: Arc<BicatAction>, inner: OpticObject, outer: OpticObject },
    Integrand(OpticIntegrand),
}

#[derive(Clone, Debug)]
pub struct DeclCheck {
    pub kind: &'static str,
    pub name: String,
    pub report: LawReport,
    pub millis: u64,
}

#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub sets: IndexMap<String, FinSet>,
    pub functions: IndexMap<String, FinFunction>,
    pub categories: IndexMap<String, Arc<FinCategory>>,
    pub functors: IndexMap<String, FinFunctor>,
    pub copresheaves: IndexMap<String, Copresheaf>,
    pub profunctors: IndexMap<String, SetProfunctor>,
    pub bicategories: IndexMap<String, Arc<FinBicategory>>,
    pub actions: IndexMap<String, Arc<BicatAction>>,
    pub families: IndexMap<String, ProfFamily>,
    pub modules: IndexMap<String, TambaraModule>,
    pub optics: IndexMap<String, ResolvedOptic>,
    pub checks: Vec<DeclCheck>,
}

fn get<'a, T>(map: &'a IndexMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| CliError::Unresolved { kind, name: name.to_string() })
}

fn index(set: &FinSet, l: &Label, what: &str, decl: &str) -> Result<usize> {
    set.index_of(l).ok_or_else(|| CliError::invalid(decl, format!("unknown {what} {l}")))
}

/// Fills `slot` once; a second write is a duplicate entry.
fn fill(slot: &mut Option<usize>, v: usize, decl: &str, what: &str) -> Result<()> {
    if slot.replace(v).is_some() {
        return Err(CliError::invalid(decl, format!("duplicate entry for {what}")));
    }
    Ok(())
}

fn complete(v: Vec<Option<usize>>, decl: &str, what: &str) -> Result<Vec<usize>> {
    v.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| CliError::invalid(decl, format!("{what} has no entry at position {i}"))))
        .collect()
}

impl Resolved {
    fn record(&mut self, kind: &'static str, name: &str, start: Instant, report: LawReport) {
        let millis = start.elapsed().as_millis() as u64;
        self.checks.push(DeclCheck { kind, name: name.to_string(), report, millis });
    }

    /// The first declaration whose checker failed, as an error.
    pub fn require_lawful(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.report.ok()) {
            Some(c) => Err(CliError::CheckFailed { name: c.name.clone(), witness: c.report.first_line() }),
            None => Ok(()),
        }
    }

    pub fn from_file(f: &InstanceFile) -> Result<Self> {
        let mut r = Resolved::default();
        for (name, elems) in &f.sets {
            let s = FinSet::new(elems.iter().cloned()).map_err(|e| CliError::invalid(name, e))?;
            r.sets.insert(name.clone(), s);
        }
        for (name, d) in &f.functions {
            let f = r.function(name, d)?;
            r.functions.insert(name.clone(), f);
        }
        for (name, d) in &f.categories {
            let t = Instant::now();
            let c = FinCategory::from_labels(
                FinSet::new(d.objects.iter().cloned()).map_err(|e| CliError::invalid(name, e))?,
                &d.morphisms,
                &d.identities,
                &d.compose,
            )
            .map_err(|e| CliError::invalid(name, e))?;
            r.record("category", name, t, check_category(&c));
            r.categories.insert(name.clone(), Arc::new(c));
        }
        for (name, d) in &f.functors {
            let t = Instant::now();
            let f = r.functor(name, d)?;
            r.record("functor", name, t, check_functor(&f));
            r.functors.insert(name.clone(), f);
        }
        for (name, d) in &f.copresheaves {
            let t = Instant::now();
            let p = r.copresheaf(name, d)?;
            r.record("copresheaf", name, t, check_copresheaf(&p));
            r.copresheaves.insert(name.clone(), p);
        }
        for (name, d) in &f.profunctors {
            let t = Instant::now();
            let p = r.profunctor(name, d)?;
            r.record("profunctor", name, t, check_profunctor(&p));
            r.profunctors.insert(name.clone(), p);
        }
        for (name, d) in &f.bicategories {
            let t = Instant::now();
            let b = r.bicategory(name, d)?;
            r.record("bicategory", name, t, check_bicat(&b));
            r.bicategories.insert(name.clone(), Arc::new(b));
        }
        for (name, d) in &f.actions {
            let t = Instant::now();
            let a = r.action(name, d)?;
            r.record("action", name, t, check_bicat_action(&a));
            r.actions.insert(name.clone(), Arc::new(a));
        }
        for (name, d) in &f.families {
            let t = Instant::now();
            let q = r.family(name, d)?;
            r.record("family", name, t, check_family(&q));
            r.families.insert(name.clone(), q);
        }
        for (name, d) in &f.modules {
            let t = Instant::now();
            let m = r.module(name, d)?;
            r.record("module", name, t, check_tambara(&m));
            r.modules.insert(name.clone(), m);
        }
        for (name, d) in &f.optics {
            let o = r.optic(name, d)?;
            r.optics.insert(name.clone(), o);
        }
        Ok(r)
    }
}

impl Resolved {
    fn function(&self, name: &str, d: &FunctionDecl) -> Result<FinFunction> {
        let dom = get(&self.sets, "set", &d.dom)?;
        let cod = get(&self.sets, "set", &d.cod)?;
        let mut t = vec![None; dom.len()];
        for (x, y) in &d.map {
            fill(&mut t[index(dom, x, "element", name)?], index(cod, y, "element", name)?, name, &x.to_string())?;
        }
        FinFunction::new(dom.clone(), cod.clone(), complete(t, name, "map")?).map_err(|e| CliError::invalid(name, e))
    }

    fn functor(&self, name: &str, d: &FunctorDecl) -> Result<FinFunctor> {
        let dom = get(&self.categories, "category", &d.dom)?;
        let cod = get(&self.categories, "category", &d.cod)?;
        let mut om = vec![None; dom.n_objects()];
        for (x, y) in &d.objects {
            fill(&mut om[index(dom.objects(), x, "object", name)?], index(cod.objects(), y, "object", name)?, name, &x.to_string())?;
        }
        let mut mm = vec![None; dom.n_morphisms()];
        for (f, g) in &d.morphisms {
            fill(&mut mm[index(dom.morphisms(), f, "morphism", name)?], index(cod.morphisms(), g, "morphism", name)?, name, &f.to_string())?;
        }
        FinFunctor::new(dom.clone(), cod.clone(), complete(om, name, "object map")?, complete(mm, name, "morphism map")?)
            .map_err(|e| CliError::invalid(name, e))
    }

    fn copresheaf(&self, name: &str, d: &CopresheafDecl) -> Result<Copresheaf> {
        let c = get(&self.categories, "category", &d.category)?;
        let mut sets = vec![None; c.n_objects()];
        for (o, elems) in &d.sets {
            let i = index(c.objects(), o, "object", name)?;
            let s = FinSet::new(elems.iter().cloned()).map_err(|e| CliError::invalid(name, e))?;
            if sets[i].replace(s).is_some() {
                return Err(CliError::invalid(name, format!("duplicate set for {o}")));
            }
        }
        let sets: Vec<FinSet> = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| CliError::invalid(name, format!("no set for {}", c.obj_label(i)))))
            .collect::<Result<_>>()?;
        let mut acts: Vec<Vec<Option<usize>>> = (0..c.n_morphisms()).map(|f| vec![None; sets[c.src(f)].len()]).collect();
        for (f, x, y) in &d.actions {
            let f = index(c.morphisms(), f, "morphism", name)?;
            let (from, to) = (&sets[c.src(f)], &sets[c.tgt(f)]);
            fill(&mut acts[f][index(from, x, "element", name)?], index(to, y, "element", name)?, name, &format!("{} at {x}", c.mor_label(f)))?;
        }
        let actions = acts.into_iter().map(|t| complete(t, name, "action")).collect::<Result<_>>()?;
        Copresheaf::new(c.clone(), sets, actions).map_err(|e| CliError::invalid(name, e))
    }

    fn profunctor(&self, name: &str, d: &ProfunctorDecl) -> Result<SetProfunctor> {
        let left = get(&self.categories, "category", &d.left)?;
        let right = get(&self.categories, "category", &d.right)?;
        let nd = right.n_objects();
        let mut sets = vec![None; left.n_objects() * nd];
        for (c, e, elems) in &d.sets {
            let k = index(left.objects(), c, "object", name)? * nd + index(right.objects(), e, "object", name)?;
            let s = FinSet::new(elems.iter().cloned()).map_err(|e| CliError::invalid(name, e))?;
            if sets[k].replace(s).is_some() {
                return Err(CliError::invalid(name, format!("duplicate set for ({c}, {e})")));
            }
        }
        let sets: Vec<FinSet> = sets
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                s.ok_or_else(|| CliError::invalid(name, format!("no set for ({}, {})", left.obj_label(k / nd), right.obj_label(k % nd))))
            })
            .collect::<Result<_>>()?;
        let mut lact: Vec<Vec<Option<usize>>> = (0..left.n_morphisms() * nd)
            .map(|k| vec![None; sets[left.tgt(k / nd) * nd + k % nd].len()])
            .collect();
        for (f, e, x, y) in &d.lact {
            let (f, e) = (index(left.morphisms(), f, "morphism", name)?, index(right.objects(), e, "object", name)?);
            let (from, to) = (&sets[left.tgt(f) * nd + e], &sets[left.src(f) * nd + e]);
            fill(&mut lact[f * nd + e][index(from, x, "element", name)?], index(to, y, "element", name)?, name, &format!("lact at {x}"))?;
        }
        let md = right.n_morphisms();
        let mut ract: Vec<Vec<Option<usize>>> =
            (0..left.n_objects() * md).map(|k| vec![None; sets[(k / md) * nd + right.src(k % md)].len()]).collect();
        for (c, g, x, y) in &d.ract {
            let (c, g) = (index(left.objects(), c, "object", name)?, index(right.morphisms(), g, "morphism", name)?);
            let (from, to) = (&sets[c * nd + right.src(g)], &sets[c * nd + right.tgt(g)]);
            fill(&mut ract[c * md + g][index(from, x, "element", name)?], index(to, y, "element", name)?, name, &format!("ract at {x}"))?;
        }
        let lact = lact.into_iter().map(|t| complete(t, name, "lact")).collect::<Result<_>>()?;
        let ract = ract.into_iter().map(|t| complete(t, name, "ract")).collect::<Result<_>>()?;
        SetProfunctor::new(left.clone(), right.clone(), sets, lact, ract).map_err(|e| CliError::invalid(name, e))
    }
}

impl Resolved {
    fn bicategory(&self, name: &str, d: &BicategoryDecl) -> Result<FinBicategory> {
        let objects = FinSet::new(d.objects.iter().cloned()).map_err(|e| CliError::invalid(name, e))?;
        let n = objects.len();
        let obj = |l: &Label| index(&objects, l, "object", name);
        let mut homs = vec![None; n * n];
        for (o, o2, c) in &d.homs {
            let c = get(&self.categories, "category", c)?.clone();
            if homs[obj(o)? * n + obj(o2)?].replace(c).is_some() {
                return Err(CliError::invalid(name, format!("duplicate hom for ({o}, {o2})")));
            }
        }
        let homs: Vec<Arc<FinCategory>> = homs
            .into_iter()
            .enumerate()
            .map(|(k, h)| h.ok_or_else(|| CliError::invalid(name, format!("no hom for ({}, {})", objects.get(k / n), objects.get(k % n)))))
            .collect::<Result<_>>()?;
        let mut unit = vec![None; n];
        for (o, m) in &d.units {
            let o = obj(o)?;
            fill(&mut unit[o], index(homs[o * n + o].objects(), m, "1-cell", name)?, name, "unit")?;
        }
        let triple = |a: usize, b: usize, c: usize| (&homs[a * n + b], &homs[b * n + c], &homs[a * n + c]);
        let mut comp1: Vec<Vec<Option<usize>>> = Vec::with_capacity(n * n * n);
        let mut comp2: Vec<Vec<Option<usize>>> = Vec::with_capacity(n * n * n);
        for t in 0..n * n * n {
            let (h1, h2, _) = triple(t / (n * n), (t / n) % n, t % n);
            comp1.push(vec![None; h1.n_objects() * h2.n_objects()]);
            comp2.push(vec![None; h1.n_morphisms() * h2.n_morphisms()]);
        }
        for (a, b, c, m, k, mk) in &d.compose1 {
            let (a, b, c) = (obj(a)?, obj(b)?, obj(c)?);
            let (h1, h2, h3) = triple(a, b, c);
            let slot = index(h1.objects(), m, "1-cell", name)? * h2.n_objects() + index(h2.objects(), k, "1-cell", name)?;
            fill(&mut comp1[(a * n + b) * n + c][slot], index(h3.objects(), mk, "1-cell", name)?, name, &format!("{m} ; {k}"))?;
        }
        for (a, b, c, x, y, xy) in &d.compose2 {
            let (a, b, c) = (obj(a)?, obj(b)?, obj(c)?);
            let (h1, h2, h3) = triple(a, b, c);
            let slot = index(h1.morphisms(), x, "2-cell", name)? * h2.n_morphisms() + index(h2.morphisms(), y, "2-cell", name)?;
            fill(&mut comp2[(a * n + b) * n + c][slot], index(h3.morphisms(), xy, "2-cell", name)?, name, &format!("{x} * {y}"))?;
        }
        let comp1 = comp1.into_iter().map(|t| complete(t, name, "compose1")).collect::<Result<_>>()?;
        let comp2 = comp2.into_iter().map(|t| complete(t, name, "compose2")).collect::<Result<_>>()?;
        FinBicategory::new(objects, homs, complete(unit, name, "units")?, comp1, comp2).map_err(|e| CliError::invalid(name, e))
    }

    fn action(&self, name: &str, d: &ActionDecl) -> Result<BicatAction> {
        let base = get(&self.bicategories, "bicategory", &d.base)?.clone();
        let n = base.n_objects();
        let obj = |l: &Label| index(&base.objects, l, "object", name);
        let mut fibres = vec![None; n];
        for (o, c) in &d.fibres {
            let c = get(&self.categories, "category", c)?.clone();
            if fibres[obj(o)?].replace(c).is_some() {
                return Err(CliError::invalid(name, format!("duplicate fibre for {o}")));
            }
        }
        let fibres: Vec<Arc<FinCategory>> = fibres
            .into_iter()
            .enumerate()
            .map(|(o, c)| c.ok_or_else(|| CliError::invalid(name, format!("no fibre for {}", base.objects.get(o)))))
            .collect::<Result<_>>()?;
        let mut on1 = vec![None; base.n_cells()];
        for (o, o2, m, f) in &d.cells {
            let (o, o2) = (obj(o)?, obj(o2)?);
            let cell = base.cell(o, o2, index(base.hom(o, o2).objects(), m, "1-cell", name)?);
            if on1[cell].replace(get(&self.functors, "functor", f)?.clone()).is_some() {
                return Err(CliError::invalid(name, format!("duplicate functor for {m}")));
            }
        }
        let on1: Vec<FinFunctor> = on1
            .into_iter()
            .enumerate()
            .map(|(m, f)| f.ok_or_else(|| CliError::invalid(name, format!("no functor for 1-cell {}", base.cell_label(m)))))
            .collect::<Result<_>>()?;
        let mut on2: Vec<Option<Vec<usize>>> = vec![None; base.n_two_cells()];
        for (o, o2, alpha, comps) in &d.twos {
            let (o, o2) = (obj(o)?, obj(o2)?);
            let two = base.two(o, o2, index(base.hom(o, o2).morphisms(), alpha, "2-cell", name)?);
            let (from, to) = (&fibres[o], &fibres[o2]);
            let mut t = vec![None; from.n_objects()];
            for (x, c) in comps {
                fill(&mut t[index(from.objects(), x, "object", name)?], index(to.morphisms(), c, "morphism", name)?, name, &format!("{alpha} at {x}"))?;
            }
            if on2[two].replace(complete(t, name, "2-cell components")?).is_some() {
                return Err(CliError::invalid(name, format!("duplicate components for {alpha}")));
            }
        }
        let on2 = on2
            .into_iter()
            .enumerate()
            .map(|(a, c)| c.ok_or_else(|| CliError::invalid(name, format!("no components for 2-cell {}", base.two_label(a)))))
            .collect::<Result<_>>()?;
        BicatAction::new(base, fibres, on1, on2).map_err(|e| CliError::invalid(name, e))
    }

    fn family(&self, name: &str, d: &FamilyDecl) -> Result<ProfFamily> {
        let x = get(&self.actions, "action", &d.x)?.clone();
        let y = get(&self.actions, "action", &d.y)?.clone();
        let n = x.base.n_objects();
        let mut profs = vec![None; n];
        for (o, p) in &d.profunctors {
            let o2 = index(&x.base.objects, o, "object", name)?;
            if profs[o2].replace(get(&self.profunctors, "profunctor", p)?.clone()).is_some() {
                return Err(CliError::invalid(name, format!("duplicate profunctor for {o}")));
            }
        }
        let profs = profs
            .into_iter()
            .enumerate()
            .map(|(o, p)| p.ok_or_else(|| CliError::invalid(name, format!("no profunctor for {}", x.base.objects.get(o)))))
            .collect::<Result<_>>()?;
        ProfFamily::new(x, y, profs).map_err(|e| CliError::invalid(name, e))
    }

    fn module(&self, name: &str, d: &ModuleDecl) -> Result<TambaraModule> {
        let q = get(&self.families, "family", &d.family)?.clone();
        let b = q.base().clone();
        let mut st: Vec<Vec<Vec<Option<usize>>>> = (0..b.n_cells())
            .map(|m| {
                let o = b.cell_src(m);
                (0..q.n_x(o) * q.n_y(o)).map(|k| vec![None; q.set(o, k / q.n_y(o), k % q.n_y(o)).len()]).collect()
            })
            .collect();
        for (o, o2, m, x, y, e, v) in &d.strengths {
            let (o, o2) = (index(&b.objects, o, "object", name)?, index(&b.objects, o2, "object", name)?);
            let m = b.cell(o, o2, index(b.hom(o, o2).objects(), m, "1-cell", name)?);
            let x = index(q.act_x.fibres[o].objects(), x, "object", name)?;
            let y = index(q.act_y.fibres[o].objects(), y, "object", name)?;
            let e = index(q.set(o, x, y), e, "element", name)?;
            let to = q.set(o2, q.act_x.act_obj(m, x), q.act_y.act_obj(m, y));
            fill(&mut st[m][x * q.n_y(o) + y][e], index(to, v, "element", name)?, name, "strength")?;
        }
        let st = st
            .into_iter()
            .map(|per| per.into_iter().map(|t| complete(t, name, "strength")).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        TambaraModule::new(q, st).map_err(|e| CliError::invalid(name, e))
    }

    fn optic(&self, name: &str, d: &OpticDecl) -> Result<ResolvedOptic> {
        match d {
            OpticDecl::Objects { x, y, inner, outer } => {
                let x = get(&self.actions, "action", x)?.clone();
                let y = get(&self.actions, "action", y)?.clone();
                let object = |(o, a, b): &(Label, Label, Label)| -> Result<OpticObject> {
                    let o = index(&x.base.objects, o, "object", name)?;
                    let a = index(x.fibres[o].objects(), a, "object", name)?;
                    let b = index(y.fibres[o].objects(), b, "object", name)?;
                    Ok(OpticObject { o, a, b })
                };
                let (inner, outer) = (object(inner)?, object(outer)?);
                Ok(ResolvedOptic::Objects { x, y, inner, outer })
            }
            OpticDecl::Integrand { category, forward, backward } => {
                let k = get(&self.categories, "category", category)?.clone();
                let fwd = get(&self.copresheaves, "copresheaf", forward)?.clone();
                let back = get(&self.copresheaves, "copresheaf", backward)?.clone();
                OpticIntegrand::new(k, fwd, back).map(ResolvedOptic::Integrand).map_err(|e| CliError::invalid(name, e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARROW: &str = r#""categories": {"A": {
        "objects": [0, 1],
        "morphisms": [["i0", 0, 0], ["i1", 1, 1], ["f", 0, 1]],
        "identities": [[0, "i0"], [1, "i1"]],
        "compose": [["i0", "i0", "i0"], ["i1", "i1", "i1"], ["i0", "f", "f"], ["f", "i1", "f"]]}}"#;

    fn resolve(body: &str) -> Result<Resolved> {
        Resolved::from_file(&InstanceFile::parse(&format!("{{{ARROW}{body}}}")).unwrap())
    }

    #[test]
    fn copresheaf_on_the_arrow() {
        let r = resolve(r#", "copresheaves": {"F": {"category": "A",
            "sets": [[0, ["x"]], [1, ["y", "z"]]],
            "actions": [["i0", "x", "x"], ["i1", "y", "y"], ["i1", "z", "z"], ["f", "x", "z"]]}}"#)
        .unwrap();
        r.require_lawful().unwrap();
        let f = r.categories["A"].morphism_index(&Label::sym("f")).unwrap();
        assert_eq!(r.copresheaves["F"].actions[f], vec![1]);
    }

    #[test]
    fn missing_and_duplicate_entries() {
        let missing = resolve(r#", "copresheaves": {"F": {"category": "A",
            "sets": [[0, ["x"]], [1, ["y"]]], "actions": [["i0", "x", "x"], ["i1", "y", "y"]]}}"#);
        assert!(matches!(missing, Err(CliError::Invalid { .. })));
        let twice = resolve(r#", "copresheaves": {"F": {"category": "A",
            "sets": [[0, ["x"]], [1, ["y"]]],
            "actions": [["i0", "x", "x"], ["i1", "y", "y"], ["f", "x", "y"], ["f", "x", "y"]]}}"#);
        assert!(matches!(twice, Err(CliError::Invalid { .. })));
    }

    #[test]
    fn unknown_labels_and_names() {
        let r = resolve(r#", "functors": {"G": {"dom": "A", "cod": "B", "objects": [], "morphisms": []}}"#);
        assert!(matches!(r, Err(CliError::Unresolved { kind: "category", .. })));
        let r = resolve(r#", "functors": {"G": {"dom": "A", "cod": "A", "objects": [[0, 7]], "morphisms": []}}"#);
        assert!(matches!(r, Err(CliError::Invalid { .. })));
    }

    #[test]
    fn hom_profunctor_of_the_arrow() {
        let r = resolve(r#", "profunctors": {"H": {"left": "A", "right": "A",
            "sets": [[0, 0, ["i0"]], [0, 1, ["f"]], [1, 0, []], [1, 1, ["i1"]]],
            "lact": [["i0", 0, "i0", "i0"], ["i0", 1, "f", "f"], ["i1", 1, "i1", "i1"], ["f", 1, "i1", "f"]],
            "ract": [[0, "i0", "i0", "i0"], [0, "i1", "f", "f"], [0, "f", "i0", "f"], [1, "i1", "i1", "i1"]]}}"#)
        .unwrap();
        r.require_lawful().unwrap();
        assert_eq!(r.profunctors["H"], SetProfunctor::hom(&r.categories["A"]));
    }
}
