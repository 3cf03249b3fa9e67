//! Finite categories, functors, natural transformations and copresheaves,
//! each with a law checker.
//!
//! Composition is diagrammatic throughout: `compose(f, g)` is "f then g" and
//! is defined when `tgt(f) = src(g)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::finset::{all_tables, FinFunction, FinSet, Label};
use crate::report::LawReport;

/// Size bounds applied to user-supplied and randomly generated structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_morphisms: usize,
    /// Search-node budget for morphism enumeration.
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_morphisms: 32, budget: 1_000_000 }
    }
}

/// A finite category given by explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: FinSet,
    morphisms: FinSet,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    /// `comp[f * n + g]` is `f ; g` when defined.
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Builds a category from index tables. Only shapes and index ranges are
    /// validated here; the category laws are the business of [`check_category`].
    pub fn new(
        objects: FinSet,
        morphisms: FinSet,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ident: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> Result<Self> {
        let (no, nm) = (objects.len(), morphisms.len());
        if src.len() != nm || tgt.len() != nm {
            return Err(CoreError::Shape("source/target tables must cover every morphism".into()));
        }
        if ident.len() != no {
            return Err(CoreError::Shape("identity table must cover every object".into()));
        }
        if comp.len() != nm * nm {
            return Err(CoreError::Shape("composition table has the wrong size".into()));
        }
        if src.iter().chain(&tgt).any(|&o| o >= no) {
            return Err(CoreError::Shape("source/target index out of range".into()));
        }
        if ident.iter().chain(comp.iter().flatten()).any(|&m| m >= nm) {
            return Err(CoreError::Shape("morphism index out of range".into()));
        }
        let mut homs = vec![Vec::new(); no * no];
        for f in 0..nm {
            homs[src[f] * no + tgt[f]].push(f);
        }
        Ok(FinCategory { objects, morphisms, src, tgt, ident, comp, homs })
    }

    /// Builds a category from labelled data: morphisms as `(name, src, tgt)`,
    /// identities as `(object, morphism)` and composites as `(f, g, f;g)`.
    pub fn from_labels(
        objects: FinSet,
        morphisms: &[(Label, Label, Label)],
        identities: &[(Label, Label)],
        composites: &[(Label, Label, Label)],
    ) -> Result<Self> {
        let mor_set = FinSet::new(morphisms.iter().map(|m| m.0.clone()))?;
        let nm = mor_set.len();
        let mut src = vec![0; nm];
        let mut tgt = vec![0; nm];
        for (name, s, t) in morphisms {
            let i = mor_set.require(name)?;
            src[i] = objects.require(s)?;
            tgt[i] = objects.require(t)?;
        }
        let mut ident = vec![usize::MAX; objects.len()];
        for (o, m) in identities {
            ident[objects.require(o)?] = mor_set.require(m)?;
        }
        if let Some(o) = ident.iter().position(|&m| m == usize::MAX) {
            return Err(CoreError::Shape(format!("object {} has no identity", objects.get(o))));
        }
        let mut comp = vec![None; nm * nm];
        for (f, g, h) in composites {
            let (f, g, h) = (mor_set.require(f)?, mor_set.require(g)?, mor_set.require(h)?);
            comp[f * nm + g] = Some(h);
        }
        FinCategory::new(objects, mor_set, src, tgt, ident, comp)
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn morphisms(&self) -> &FinSet {
        &self.morphisms
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn id(&self, o: usize) -> usize {
        self.ident[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ident[self.src[f]] == f
    }

    /// `f ; g` if composable and present in the table.
    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        if self.tgt[f] != self.src[g] {
            return None;
        }
        self.comp[f * self.n_morphisms() + g]
    }

    /// `f ; g`. Panics on non-composable pairs; use on categories that passed their check.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.try_compose(f, g).unwrap_or_else(|| {
            panic!("no composite for {} ; {}", self.morphisms.get(f), self.morphisms.get(g))
        })
    }

    /// Raw table entry, ignoring composability.
    pub fn comp_entry(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f * self.n_morphisms() + g]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.n_objects() + b]
    }

    /// Position of each morphism within its hom list.
    pub fn hom_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n_morphisms()];
        for h in &self.homs {
            for (k, &f) in h.iter().enumerate() {
                pos[f] = k;
            }
        }
        pos
    }

    /// Morphisms out of `o`, in index order.
    pub fn hom_from(&self, o: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_morphisms()).filter(move |&f| self.src[f] == o)
    }

    pub fn obj_label(&self, o: usize) -> &Label {
        self.objects.get(o)
    }

    pub fn mor_label(&self, f: usize) -> &Label {
        self.morphisms.get(f)
    }

    pub fn object_index(&self, l: &Label) -> Result<usize> {
        self.objects.require(l)
    }

    pub fn morphism_index(&self, l: &Label) -> Result<usize> {
        self.morphisms.require(l)
    }

    /// Labelled composition triples for every defined composite.
    pub fn composites(&self) -> Vec<(Label, Label, Label)> {
        let nm = self.n_morphisms();
        let mut out = Vec::new();
        for f in 0..nm {
            for g in 0..nm {
                if let Some(h) = self.comp[f * nm + g] {
                    out.push((self.mor_label(f).clone(), self.mor_label(g).clone(), self.mor_label(h).clone()));
                }
            }
        }
        out
    }

    /// Replaces one composition entry; used to build mutants for checker tests.
    pub fn with_comp_entry(&self, f: usize, g: usize, h: Option<usize>) -> FinCategory {
        let mut c = self.clone();
        let nm = c.n_morphisms();
        c.comp[f * nm + g] = h;
        c
    }

    /// Replaces the identity of `o`; used to build mutants.
    pub fn with_identity(&self, o: usize, m: usize) -> FinCategory {
        let mut c = self.clone();
        c.ident[o] = m;
        c
    }

    pub fn check_size(&self, what: &str, limits: &Limits) -> Result<()> {
        if self.n_morphisms() > limits.max_morphisms {
            return Err(CoreError::TooLarge {
                what: what.to_string(),
                size: self.n_morphisms(),
                limit: limits.max_morphisms,
            });
        }
        Ok(())
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        FinCategory::discrete(1)
    }

    /// `n` objects `0..n`, identities `id0..`, nothing else.
    pub fn discrete(n: usize) -> Self {
        let objects = FinSet::range(n);
        let morphisms = FinSet::collect((0..n).map(|i| Label::sym(format!("id{i}"))));
        // Sorted labels may not follow numeric order once n > 10.
        let ident: Vec<usize> = (0..n)
            .map(|i| morphisms.index_of(&Label::sym(format!("id{i}"))).unwrap())
            .collect();
        let mut src = vec![0; n];
        for (o, &m) in ident.iter().enumerate() {
            src[m] = o;
        }
        let mut comp = vec![None; n * n];
        for &m in &ident {
            comp[m * n + m] = Some(m);
        }
        FinCategory::new(objects, morphisms, src.clone(), src, ident, comp).expect("discrete shape")
    }

    /// Discrete category on the given objects; identities are labelled `(id, o)`.
    pub fn discrete_on(objects: &FinSet) -> Self {
        let n = objects.len();
        let morphisms = FinSet::from_sorted(objects.iter().map(|o| Label::pair("id".into(), o.clone())).collect());
        let comp = (0..n * n).map(|k| (k / n == k % n).then_some(k / n)).collect();
        FinCategory::new(objects.clone(), morphisms, (0..n).collect(), (0..n).collect(), (0..n).collect(), comp)
            .expect("discrete shape")
    }

    /// Builds a category from unsorted data. Indices in `mors` (`(label, src, tgt)`),
    /// `ident` and `comp` refer to the order given here; the result is re-indexed
    /// into label order.
    pub fn from_unsorted(
        objects: Vec<Label>,
        mors: Vec<(Label, usize, usize)>,
        ident: Vec<usize>,
        comp: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let obj_set = FinSet::new(objects.iter().cloned())?;
        let mor_set = FinSet::new(mors.iter().map(|m| m.0.clone()))?;
        let opos: Vec<usize> = objects.iter().map(|l| obj_set.index_of(l).unwrap()).collect();
        let mpos: Vec<usize> = mors.iter().map(|m| mor_set.index_of(&m.0).unwrap()).collect();
        let nm = mors.len();
        let mut src = vec![0; nm];
        let mut tgt = vec![0; nm];
        for (k, (_, s, t)) in mors.iter().enumerate() {
            src[mpos[k]] = opos[*s];
            tgt[mpos[k]] = opos[*t];
        }
        let mut id = vec![0; objects.len()];
        for (o, &m) in ident.iter().enumerate() {
            id[opos[o]] = mpos[m];
        }
        let mut table = vec![None; nm * nm];
        for f in 0..nm {
            for g in 0..nm {
                if mors[f].2 == mors[g].1 {
                    table[mpos[f] * nm + mpos[g]] = comp(f, g).map(|h| mpos[h]);
                }
            }
        }
        FinCategory::new(obj_set, mor_set, src, tgt, id, table)
    }

    /// Two objects `0, 1` and one non-identity arrow `a: 0 -> 1`.
    pub fn walking_arrow() -> Self {
        FinCategory::preorder(2, &[(0, 1)])
    }

    /// One object with endomorphisms given by a monoid multiplication table
    /// (`mult[x][y] = x ; y`) whose unit is element `unit`.
    pub fn monoid(names: &[&str], mult: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = names.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(CoreError::Shape("monoid table must be square".into()));
        }
        let morphisms = FinSet::new(names.iter().map(|s| Label::from(*s)))?;
        let pos: Vec<usize> = names.iter().map(|s| morphisms.index_of(&Label::from(*s)).unwrap()).collect();
        let mut comp = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                if mult[x][y] >= n {
                    return Err(CoreError::Shape("monoid product out of range".into()));
                }
                comp[pos[x] * n + pos[y]] = Some(pos[mult[x][y]]);
            }
        }
        FinCategory::new(FinSet::range(1), morphisms, vec![0; n], vec![0; n], vec![pos[unit]], comp)
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mult: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        FinCategory::monoid(&refs, &mult, 0).expect("group table")
    }

    /// The thin category of the reflexive-transitive closure of `rel` on `0..n`.
    /// Morphism `i -> j` is labelled `(i, j)`.
    pub fn preorder(n: usize, rel: &[(usize, usize)]) -> Self {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rel {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        for (i, row) in le.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b {
                    arrows.push((i, j));
                }
            }
        }
        let morphisms = FinSet::from_sorted(arrows.iter().map(|&(i, j)| Label::pair(i.into(), j.into())).collect());
        let index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let nm = arrows.len();
        let mut comp = vec![None; nm * nm];
        for (f, &(a, b)) in arrows.iter().enumerate() {
            for (g, &(c, d)) in arrows.iter().enumerate() {
                if b == c {
                    comp[f * nm + g] = Some(index[&(a, d)]);
                }
            }
        }
        let src = arrows.iter().map(|a| a.0).collect();
        let tgt = arrows.iter().map(|a| a.1).collect();
        let ident = (0..n).map(|i| index[&(i, i)]).collect();
        FinCategory::new(FinSet::range(n), morphisms, src, tgt, ident, comp).expect("preorder shape")
    }

    /// Same objects and morphisms, sources and targets swapped, composition reversed.
    pub fn opposite(&self) -> FinCategory {
        let nm = self.n_morphisms();
        let mut comp = vec![None; nm * nm];
        for f in 0..nm {
            for g in 0..nm {
                comp[f * nm + g] = self.comp[g * nm + f];
            }
        }
        FinCategory::new(
            self.objects.clone(),
            self.morphisms.clone(),
            self.tgt.clone(),
            self.src.clone(),
            self.ident.clone(),
            comp,
        )
        .expect("opposite shape")
    }

    /// Product category. Object `(c, d)` has index `c * |obj D| + d`; morphism
    /// `(f, g)` has index `f * |mor D| + g`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (no1, no2) = (self.n_objects(), other.n_objects());
        let (nm1, nm2) = (self.n_morphisms(), other.n_morphisms());
        let objects = FinSet::from_sorted(
            (0..no1 * no2)
                .map(|k| Label::pair(self.obj_label(k / no2).clone(), other.obj_label(k % no2).clone()))
                .collect(),
        );
        let morphisms = FinSet::from_sorted(
            (0..nm1 * nm2)
                .map(|k| Label::pair(self.mor_label(k / nm2).clone(), other.mor_label(k % nm2).clone()))
                .collect(),
        );
        let nm = nm1 * nm2;
        let src = (0..nm).map(|k| self.src[k / nm2] * no2 + other.src[k % nm2]).collect();
        let tgt = (0..nm).map(|k| self.tgt[k / nm2] * no2 + other.tgt[k % nm2]).collect();
        let ident = (0..no1 * no2).map(|k| self.ident[k / no2] * nm2 + other.ident[k % no2]).collect();
        let mut comp = vec![None; nm * nm];
        for f in 0..nm {
            for g in 0..nm {
                let a = self.comp[(f / nm2) * nm1 + g / nm2];
                let b = other.comp[(f % nm2) * nm2 + g % nm2];
                if let (Some(a), Some(b)) = (a, b) {
                    comp[f * nm + g] = Some(a * nm2 + b);
                }
            }
        }
        FinCategory::new(objects, morphisms, src, tgt, ident, comp).expect("product shape")
    }
}

/// Builder for subcategories of finite sets generated by explicit functions.
///
/// Objects are finite sets `{0..n-1}` with caller-chosen labels; morphisms are
/// all composites of the generators plus identities. A morphism is labelled
/// `(src, tgt, table)`.
#[derive(Clone, Debug, Default)]
pub struct ConcreteBuilder {
    objects: Vec<(Label, usize)>,
    generators: Vec<(usize, usize, Vec<usize>)>,
}

impl ConcreteBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an object of the given cardinality; returns its insertion index.
    pub fn object(&mut self, label: Label, size: usize) -> usize {
        self.objects.push((label, size));
        self.objects.len() - 1
    }

    pub fn generator(&mut self, src: usize, tgt: usize, table: Vec<usize>) -> &mut Self {
        self.generators.push((src, tgt, table));
        self
    }

    /// Adds every function `src -> tgt` as a generator.
    pub fn all_functions(&mut self, src: usize, tgt: usize) -> &mut Self {
        let (n, m) = (self.objects[src].1, self.objects[tgt].1);
        for t in all_tables(n, m) {
            self.generators.push((src, tgt, t));
        }
        self
    }

    /// Closes the generators under composition. Fails if more than `max` morphisms arise.
    pub fn build(&self, max: usize) -> Result<ConcreteCategory> {
        let no = self.objects.len();
        for (s, t, table) in &self.generators {
            if *s >= no || *t >= no || table.len() != self.objects[*s].1 || table.iter().any(|&v| v >= self.objects[*t].1) {
                return Err(CoreError::Shape("generator does not fit its objects".into()));
            }
        }
        let mut arrows: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let mut seen: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut push = |a: (usize, usize, Vec<usize>), arrows: &mut Vec<_>| -> Result<()> {
            if !seen.contains_key(&a) {
                if arrows.len() >= max {
                    return Err(CoreError::TooLarge { what: "generated category".into(), size: arrows.len() + 1, limit: max });
                }
                seen.insert(a.clone(), arrows.len());
                arrows.push(a);
            }
            Ok(())
        };
        for (o, (_, n)) in self.objects.iter().enumerate() {
            push((o, o, (0..*n).collect()), &mut arrows)?;
        }
        for g in &self.generators {
            push(g.clone(), &mut arrows)?;
        }
        let mut k = 0;
        while k < arrows.len() {
            let (s, t, table) = arrows[k].clone();
            for (gs, gt, gtab) in &self.generators {
                if *gs == t {
                    let composite: Vec<usize> = table.iter().map(|&i| gtab[i]).collect();
                    push((s, *gt, composite), &mut arrows)?;
                }
            }
            k += 1;
        }
        let object_set = FinSet::new(self.objects.iter().map(|o| o.0.clone()))?;
        let obj_pos: Vec<usize> = self.objects.iter().map(|o| object_set.index_of(&o.0).unwrap()).collect();
        let label_of = |a: &(usize, usize, Vec<usize>)| {
            Label::tup(vec![self.objects[a.0].0.clone(), self.objects[a.1].0.clone(), Label::table(&a.2)])
        };
        let morphisms = FinSet::new(arrows.iter().map(label_of))?;
        let pos: Vec<usize> = arrows.iter().map(|a| morphisms.index_of(&label_of(a)).unwrap()).collect();
        let nm = arrows.len();
        let mut src = vec![0; nm];
        let mut tgt = vec![0; nm];
        let mut tables = vec![Vec::new(); nm];
        let mut by_key: HashMap<(usize, usize, &[usize]), usize> = HashMap::new();
        for (k, a) in arrows.iter().enumerate() {
            src[pos[k]] = obj_pos[a.0];
            tgt[pos[k]] = obj_pos[a.1];
            tables[pos[k]] = a.2.clone();
            by_key.insert((a.0, a.1, &a.2[..]), pos[k]);
        }
        let mut ident = vec![0; no];
        for (o, (_, n)) in self.objects.iter().enumerate() {
            let t: Vec<usize> = (0..*n).collect();
            ident[obj_pos[o]] = by_key[&(o, o, &t[..])];
        }
        let mut comp = vec![None; nm * nm];
        for (a_idx, a) in arrows.iter().enumerate() {
            for (b_idx, b) in arrows.iter().enumerate() {
                if a.1 == b.0 {
                    let t: Vec<usize> = a.2.iter().map(|&i| b.2[i]).collect();
                    if let Some(&h) = by_key.get(&(a.0, b.1, &t[..])) {
                        comp[pos[a_idx] * nm + pos[b_idx]] = Some(h);
                    }
                }
            }
        }
        let sizes = {
            let mut s = vec![0; no];
            for (o, (_, n)) in self.objects.iter().enumerate() {
                s[obj_pos[o]] = *n;
            }
            s
        };
        let category = FinCategory::new(object_set, morphisms, src, tgt, ident, comp)?;
        Ok(ConcreteCategory { category: Arc::new(category), sizes, tables })
    }
}

/// A category of finite sets and functions, with its concrete data kept alongside.
#[derive(Clone, Debug)]
pub struct ConcreteCategory {
    pub category: Arc<FinCategory>,
    /// Cardinality of each object (by object index).
    pub sizes: Vec<usize>,
    /// Function table of each morphism (by morphism index).
    pub tables: Vec<Vec<usize>>,
}

impl ConcreteCategory {
    /// The morphism with the given source, target and table, if present.
    pub fn find(&self, src: usize, tgt: usize, table: &[usize]) -> Option<usize> {
        self.category
            .hom(src, tgt)
            .iter()
            .copied()
            .find(|&f| self.tables[f] == table)
    }
}

/// The full subcategory of finite sets on the given cardinalities, objects
/// labelled by their cardinality.
pub fn finset_skeleton(sizes: &[usize], max: usize) -> Result<ConcreteCategory> {
    let mut b = ConcreteBuilder::new();
    for &n in sizes {
        b.object(Label::from(n), n);
    }
    for s in 0..sizes.len() {
        for t in 0..sizes.len() {
            b.all_functions(s, t);
        }
    }
    b.build(max)
}

/// Checks identities, unit laws, composability of the table and associativity.
pub fn check_category(c: &FinCategory) -> LawReport {
    let mut r = LawReport::new();
    let nm = c.n_morphisms();
    for o in 0..c.n_objects() {
        let i = c.id(o);
        if c.src(i) != o || c.tgt(i) != o {
            r.push("identity endpoints", format!("id({}) = {}", c.obj_label(o), c.mor_label(i)));
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            let composable = c.tgt(f) == c.src(g);
            match (composable, c.comp_entry(f, g)) {
                (true, None) => r.push("composition total", format!("({}, {})", c.mor_label(f), c.mor_label(g))),
                (false, Some(_)) => r.push("composition only on composable pairs", format!("({}, {})", c.mor_label(f), c.mor_label(g))),
                (true, Some(h)) => {
                    if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) {
                        r.push("composite endpoints", format!("({}, {}) -> {}", c.mor_label(f), c.mor_label(g), c.mor_label(h)));
                    }
                }
                (false, None) => {}
            }
        }
    }
    for f in 0..nm {
        let (s, t) = (c.src(f), c.tgt(f));
        if c.comp_entry(c.id(s), f) != Some(f) {
            r.push("left unit", format!("id ; {}", c.mor_label(f)));
        }
        if c.comp_entry(f, c.id(t)) != Some(f) {
            r.push("right unit", format!("{} ; id", c.mor_label(f)));
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            let Some(fg) = c.try_compose(f, g) else { continue };
            for h in (0..nm).filter(|&h| c.src(h) == c.tgt(g)) {
                let lhs = c.try_compose(fg, h);
                let rhs = c.try_compose(g, h).and_then(|gh| c.try_compose(f, gh));
                if lhs != rhs {
                    r.push(
                        "associativity",
                        format!("({} ; {}) ; {}", c.mor_label(f), c.mor_label(g), c.mor_label(h)),
                    );
                }
            }
        }
    }
    r
}

/// A functor between finite categories given by object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub omap: Vec<usize>,
    pub mmap: Vec<usize>,
}

impl FinFunctor {
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>, omap: Vec<usize>, mmap: Vec<usize>) -> Result<Self> {
        if omap.len() != dom.n_objects() || mmap.len() != dom.n_morphisms() {
            return Err(CoreError::Shape("functor maps must cover the domain".into()));
        }
        if omap.iter().any(|&o| o >= cod.n_objects()) || mmap.iter().any(|&m| m >= cod.n_morphisms()) {
            return Err(CoreError::Shape("functor value out of range".into()));
        }
        Ok(FinFunctor { dom, cod, omap, mmap })
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            omap: (0..c.n_objects()).collect(),
            mmap: (0..c.n_morphisms()).collect(),
        }
    }

    /// The functor sending everything to `o` and its identity.
    pub fn constant(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, o: usize) -> Self {
        FinFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            omap: vec![o; dom.n_objects()],
            mmap: vec![cod.id(o); dom.n_morphisms()],
        }
    }

    /// Diagrammatic composite: `self` first, then `g`.
    pub fn then(&self, g: &FinFunctor) -> Result<FinFunctor> {
        if *self.cod != *g.dom {
            return Err(CoreError::LegMismatch("functor composite: codomain differs from domain".into()));
        }
        Ok(FinFunctor {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            omap: self.omap.iter().map(|&o| g.omap[o]).collect(),
            mmap: self.mmap.iter().map(|&m| g.mmap[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod
            && self.omap.iter().enumerate().all(|(i, &o)| i == o)
            && self.mmap.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |v: &[usize], n: usize| {
            let mut hit = vec![false; n];
            v.len() == n && v.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
        };
        bij(&self.omap, self.cod.n_objects()) && bij(&self.mmap, self.cod.n_morphisms())
    }
}

/// Preservation of endpoints, identities and composites.
pub fn check_functor(f: &FinFunctor) -> LawReport {
    let mut r = LawReport::new();
    let (d, c) = (&f.dom, &f.cod);
    for m in 0..d.n_morphisms() {
        let fm = f.mmap[m];
        if c.src(fm) != f.omap[d.src(m)] || c.tgt(fm) != f.omap[d.tgt(m)] {
            r.push("preserves endpoints", format!("{} -> {}", d.mor_label(m), c.mor_label(fm)));
        }
    }
    for o in 0..d.n_objects() {
        if f.mmap[d.id(o)] != c.id(f.omap[o]) {
            r.push("preserves identities", format!("id({}) -> {}", d.obj_label(o), c.mor_label(f.mmap[d.id(o)])));
        }
    }
    for a in 0..d.n_morphisms() {
        for b in 0..d.n_morphisms() {
            if let Some(ab) = d.try_compose(a, b) {
                if c.try_compose(f.mmap[a], f.mmap[b]) != Some(f.mmap[ab]) {
                    r.push("preserves composition", format!("{} ; {}", d.mor_label(a), d.mor_label(b)));
                }
            }
        }
    }
    r
}

/// Unique lifting: for every object `e` over `p(e)` and every `m: p(e) -> o'`
/// there is exactly one morphism out of `e` mapped to `m`.
pub fn check_discrete_opfibration(p: &FinFunctor) -> LawReport {
    let mut r = LawReport::new();
    let (e, b) = (&p.dom, &p.cod);
    for x in 0..e.n_objects() {
        let base = p.omap[x];
        for m in 0..b.n_morphisms() {
            if b.src(m) != base {
                continue;
            }
            let lifts = (0..e.n_morphisms()).filter(|&f| e.src(f) == x && p.mmap[f] == m).count();
            if lifts != 1 {
                r.push(
                    "unique lift",
                    format!("{} lifts of {} at {}", lifts, b.mor_label(m), e.obj_label(x)),
                );
            }
        }
    }
    r
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub src: FinFunctor,
    pub tgt: FinFunctor,
    pub components: Vec<usize>,
}

pub fn check_nat_trans(t: &NatTrans) -> LawReport {
    let mut r = LawReport::new();
    let (f, g) = (&t.src, &t.tgt);
    if f.dom != g.dom || f.cod != g.cod {
        r.push("parallel functors", "source and target functors differ in domain or codomain");
        return r;
    }
    let (d, c) = (&f.dom, &f.cod);
    if t.components.len() != d.n_objects() {
        r.push("component per object", format!("{} components for {} objects", t.components.len(), d.n_objects()));
        return r;
    }
    for o in 0..d.n_objects() {
        let a = t.components[o];
        if a >= c.n_morphisms() || c.src(a) != f.omap[o] || c.tgt(a) != g.omap[o] {
            r.push("component typing", format!("at {}", d.obj_label(o)));
        }
    }
    if !r.ok() {
        return r;
    }
    for m in 0..d.n_morphisms() {
        let lhs = c.try_compose(f.mmap[m], t.components[d.tgt(m)]);
        let rhs = c.try_compose(t.components[d.src(m)], g.mmap[m]);
        if lhs.is_none() || lhs != rhs {
            r.push("naturality", format!("square at {}", d.mor_label(m)));
        }
    }
    r
}

/// A set-valued functor, stored as sets per object and tables per morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copresheaf {
    pub dom: Arc<FinCategory>,
    pub sets: Vec<FinSet>,
    /// `actions[f]` maps `sets[src f]` to `sets[tgt f]`.
    pub actions: Vec<Vec<usize>>,
}

impl Copresheaf {
    pub fn new(dom: Arc<FinCategory>, sets: Vec<FinSet>, actions: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != dom.n_objects() || actions.len() != dom.n_morphisms() {
            return Err(CoreError::Shape("copresheaf tables must cover the category".into()));
        }
        for (f, t) in actions.iter().enumerate() {
            let (s, d) = (&sets[dom.src(f)], &sets[dom.tgt(f)]);
            if t.len() != s.len() || t.iter().any(|&x| x >= d.len()) {
                return Err(CoreError::Shape(format!("action of {} does not fit its sets", dom.mor_label(f))));
            }
        }
        Ok(Copresheaf { dom, sets, actions })
    }

    /// Builds a copresheaf from label-level data.
    pub fn from_fn(
        dom: Arc<FinCategory>,
        set_of: impl Fn(usize) -> FinSet,
        act: impl Fn(usize, &Label) -> Label,
    ) -> Result<Self> {
        let sets: Vec<FinSet> = (0..dom.n_objects()).map(set_of).collect();
        let actions = (0..dom.n_morphisms())
            .map(|f| {
                let (s, d) = (&sets[dom.src(f)], &sets[dom.tgt(f)]);
                s.iter().map(|x| d.require(&act(f, x))).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Copresheaf::new(dom, sets, actions)
    }

    /// Constant at the one-point set.
    pub fn terminal(dom: &Arc<FinCategory>) -> Self {
        let one = FinSet::range(1);
        Copresheaf {
            dom: dom.clone(),
            sets: vec![one; dom.n_objects()],
            actions: vec![vec![0]; dom.n_morphisms()],
        }
    }

    pub fn action(&self, f: usize) -> FinFunction {
        FinFunction::new(
            self.sets[self.dom.src(f)].clone(),
            self.sets[self.dom.tgt(f)].clone(),
            self.actions[f].clone(),
        )
        .expect("validated at construction")
    }

    /// The copresheaf as a functor into the category of finite sets generated
    /// by its action tables (one object per object of the domain).
    pub fn to_functor(&self, max: usize) -> Result<FinFunctor> {
        let d = &self.dom;
        let mut b = ConcreteBuilder::new();
        for o in 0..d.n_objects() {
            b.object(d.obj_label(o).clone(), self.sets[o].len());
        }
        for f in 0..d.n_morphisms() {
            b.generator(d.src(f), d.tgt(f), self.actions[f].clone());
        }
        let cc = b.build(max)?;
        // Builder objects were inserted in domain order, which is sorted order.
        let mmap = (0..d.n_morphisms())
            .map(|f| cc.find(d.src(f), d.tgt(f), &self.actions[f]).expect("generator present"))
            .collect();
        FinFunctor::new(d.clone(), cc.category.clone(), (0..d.n_objects()).collect(), mmap)
    }
}

/// Functoriality of a copresheaf: identities act trivially, composites act in order.
pub fn check_copresheaf(p: &Copresheaf) -> LawReport {
    let mut r = LawReport::new();
    let d = &p.dom;
    for o in 0..d.n_objects() {
        let t = &p.actions[d.id(o)];
        if t.iter().enumerate().any(|(i, &j)| i != j) {
            r.push("identity acts trivially", format!("at {}", d.obj_label(o)));
        }
    }
    for f in 0..d.n_morphisms() {
        for g in 0..d.n_morphisms() {
            if let Some(fg) = d.try_compose(f, g) {
                let ok = p.actions[f]
                    .iter()
                    .enumerate()
                    .all(|(x, &y)| p.actions[g][y] == p.actions[fg][x]);
                if !ok {
                    r.push("composites act in order", format!("{} ; {}", d.mor_label(f), d.mor_label(g)));
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCategory {
        FinCategory::cyclic_group(2)
    }

    #[test]
    fn basic_categories_pass() {
        assert!(check_category(&FinCategory::walking_arrow()).ok());
        assert_eq!(FinCategory::walking_arrow().n_morphisms(), 3);
        assert!(check_category(&z2()).ok());
        assert!(check_category(&FinCategory::discrete(12)).ok());
        assert!(check_category(&FinCategory::terminal()).ok());
    }

    #[test]
    fn associativity_defect_is_named() {
        // Z/3 with one composite redirected breaks associativity (and nothing
        // about endpoints, since there is one object).
        let c = FinCategory::cyclic_group(3);
        let g1 = c.morphism_index(&Label::from("g1")).unwrap();
        let g2 = c.morphism_index(&Label::from("g2")).unwrap();
        let g0 = c.morphism_index(&Label::from("g0")).unwrap();
        // g1 ; g1 should be g2; send it to g0 instead.
        let bad = c.with_comp_entry(g1, g1, Some(g0));
        let r = check_category(&bad);
        assert!(!r.ok());
        assert!(r.has_law("associativity"));
        let _ = g2;
    }

    #[test]
    fn opposite_and_product() {
        let w = FinCategory::walking_arrow();
        assert_eq!(w.opposite().opposite(), w);
        assert!(check_category(&w.opposite()).ok());
        let p = w.product(&z2());
        assert!(check_category(&p).ok());
        assert_eq!(p.n_morphisms(), 6);
        let t = w.product(&FinCategory::terminal());
        assert_eq!(t.n_objects(), w.n_objects());
        assert_eq!(t.n_morphisms(), w.n_morphisms());
    }

    #[test]
    fn functor_checks() {
        let w = Arc::new(FinCategory::walking_arrow());
        assert!(check_functor(&FinFunctor::identity(&w)).ok());
        assert!(check_functor(&FinFunctor::constant(&w, &w, 1)).ok());
        // send id_0 to the non-identity arrow
        let mut bad = FinFunctor::identity(&w);
        let a = w.hom(0, 1)[0];
        bad.mmap[w.id(0)] = a;
        let r = check_functor(&bad);
        assert!(!r.ok());
    }

    #[test]
    fn concrete_closure_and_skeleton() {
        let sk = finset_skeleton(&[0, 1, 2], 64).unwrap();
        assert!(check_category(&sk.category).ok());
        // 1 + 1 + 1 + 1 + 2 + 1 + 4 maps between sizes 0,1,2 (none into 0 from nonempty)
        assert_eq!(sk.category.n_morphisms(), 11);
        assert!(finset_skeleton(&[3], 5).is_err());
    }

    #[test]
    fn copresheaf_functor_presentation() {
        let w = Arc::new(FinCategory::walking_arrow());
        let a = w.hom(0, 1)[0];
        let sets = vec![FinSet::range(2), FinSet::range(1)];
        let mut actions = vec![Vec::new(); 3];
        actions[w.id(0)] = vec![0, 1];
        actions[w.id(1)] = vec![0];
        actions[a] = vec![0, 0];
        let p = Copresheaf::new(w.clone(), sets.clone(), actions.clone()).unwrap();
        assert!(check_copresheaf(&p).ok());
        assert!(check_functor(&p.to_functor(64).unwrap()).ok());

        actions[w.id(0)] = vec![1, 0];
        let q = Copresheaf::new(w, sets, actions).unwrap();
        assert!(!check_copresheaf(&q).ok());
        assert!(!check_functor(&q.to_functor(64).unwrap()).ok());
    }
}
