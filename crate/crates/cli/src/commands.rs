//! One function per subcommand, each producing a [`Report`].

use std::sync::Arc;
use std::time::Instant;

use tambara_core::dlens::{beck_chevalley_sweep, pasting_sweep, SweepReport};
use tambara_core::oracle::engines_agree;
use tambara_core::profunctor::{coend, end};
use tambara_core::{
    adjunction_check, equivalence_check, lemma_sweep, lens_integrand, optic_hom, representation_check, run_criterion,
    truncated_coend_optic, CheckOutcome, CoreError, Corpus, Cospan, Exec, OpticHom, Status, SuiteConfig, TambaraModule,
    CRITERIA,
};

use crate::error::{CliError, Result};
use crate::export::Exporter;
use crate::format::InstanceFile;
use crate::report::{outcome, Report};
use crate::resolve::{Resolved, ResolvedOptic};

#[derive(Clone, Debug)]
pub struct Options {
    pub bound: usize,
    pub budget: u64,
    pub seed: u64,
    pub max_size: usize,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options { bound: 2, budget: 2_000_000, seed: 0, max_size: 3, exec: Exec::default() }
    }
}

impl Options {
    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { seed: self.seed, budget: self.budget, exec: self.exec, bound: self.bound, max_size: self.max_size }
    }
}

pub fn load(path: &str) -> Result<Resolved> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Resolved::from_file(&InstanceFile::parse(&text)?)
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Budget overruns become a resource-limited check; anything else aborts.
fn limited(name: &str, t: Instant, e: CoreError) -> Result<CheckOutcome> {
    match e {
        CoreError::Budget { .. } | CoreError::TooLarge { .. } => {
            let mut c = outcome(name, Status::ResourceLimit, millis(t));
            c.witness = Some(e.to_string());
            Ok(c)
        }
        e => Err(e.into()),
    }
}

fn selected<'a, T>(map: &'a indexmap::IndexMap<String, T>, kind: &'static str, name: Option<&str>) -> Result<Vec<(&'a String, &'a T)>> {
    match name {
        Some(n) => map.get_key_value(n).map(|kv| vec![kv]).ok_or_else(|| CliError::Unresolved { kind, name: n.to_string() }),
        None => Ok(map.iter().collect()),
    }
}

pub fn check(path: &str) -> Result<Report> {
    let r = load(path)?;
    let mut rep = Report::new("check");
    for c in &r.checks {
        let mut o = outcome(format!("{} {}", c.kind, c.name), if c.report.ok() { Status::Pass } else { Status::Fail }, c.millis);
        if !c.report.ok() {
            o.witness = Some(c.report.first_line());
            o.count = Some(c.report.total);
        }
        rep.push(o);
    }
    Ok(rep)
}

/// Coends or ends of the named endo-profunctor, or of all of them, checked
/// against the brute-force oracles.
pub fn coend_or_end(path: &str, name: Option<&str>, want_end: bool) -> Result<Report> {
    let r = load(path)?;
    r.require_lawful()?;
    let mut rep = Report::new(if want_end { "end" } else { "coend" });
    for (n, p) in selected(&r.profunctors, "profunctor", name)? {
        if p.left != p.right {
            if name.is_some() {
                return Err(CliError::invalid(n, "coends need a profunctor with equal legs"));
            }
            continue;
        }
        let t = Instant::now();
        let agree = engines_agree(p)?;
        let (count, detail) = if want_end {
            let e = end(p)?;
            let shown: Vec<String> = (0..e.len().min(8))
                .map(|k| {
                    let parts: Vec<String> = (0..p.left.n_objects()).map(|c| p.set(c, c).get(e.project(k, c)).to_string()).collect();
                    format!("({})", parts.join(", "))
                })
                .collect();
            (e.len(), shown.join(" "))
        } else {
            let c = coend(p)?;
            let shown: Vec<String> = (0..c.class_count().min(8))
                .map(|k| {
                    let (o, x) = c.representative(k);
                    format!("[{}: {}]", p.left.obj_label(o), p.set(o, o).get(x))
                })
                .collect();
            (c.class_count(), shown.join(" "))
        };
        let mut o = outcome(n.clone(), if agree { Status::Pass } else { Status::Fail }, millis(t));
        o.count = Some(count);
        o.detail = Some(if detail.is_empty() { "empty".into() } else { detail });
        if !agree {
            o.witness = Some("engine differs from the brute-force oracle".into());
        }
        rep.push(o);
    }
    Ok(rep)
}

const CONVENTION: &str =
    "Optic((o',s,t), (o,a,b)) = ∫^m X(s, m•a) × Y(m•b, t); arrows run (o',s,t) → (o,a,b) here, and the opposite reading (o,a,b) → (o',s,t) names the same set";

fn optic_outcome(name: &str, t: Instant, h: Result<OpticHom>) -> Result<CheckOutcome> {
    match h {
        Ok(h) => {
            let mut o = outcome(name, Status::Pass, millis(t));
            o.count = Some(h.count());
            o.detail = Some(CONVENTION.into());
            Ok(o)
        }
        Err(CliError::Core(e)) => limited(name, t, e),
        Err(e) => Err(e),
    }
}

/// Optic hom-sets of declared optics, or of the lens `(s, a, b, t)` over the
/// finite-set skeleton with sizes up to `--bound`.
pub fn optic_hom_cmd(path: Option<&str>, name: Option<&str>, lens: Option<[usize; 4]>, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("optic-hom");
    if let Some([s, a, b, tt]) = lens {
        let t = Instant::now();
        let h = lens_integrand(s, a, b, tt, opts.bound, 1 << 20).map(OpticHom::from_integrand).map_err(CliError::from);
        rep.push(optic_outcome(&format!("lens {s} {a} {b} {tt}"), t, h)?);
    }
    if let Some(path) = path {
        let r = load(path)?;
        r.require_lawful()?;
        for (n, o) in selected(&r.optics, "optic", name)? {
            let t = Instant::now();
            let h = match o {
                ResolvedOptic::Objects { x, y, inner, outer } => optic_hom(x, y, *inner, *outer),
                ResolvedOptic::Integrand(i) => Ok(OpticHom::from_integrand(i.clone())),
            };
            rep.push(optic_outcome(n, t, h.map_err(CliError::from))?);
        }
    }
    if rep.checks.is_empty() {
        return Err(CliError::Unresolved { kind: "optic", name: "(give an instance file or --lens)".into() });
    }
    Ok(rep)
}

/// Both free/cofree adjunctions for every declared family against every
/// declared module over the same actions, or on corpus instances.
pub fn adjunction_cmd(path: Option<&str>, opts: &Options) -> Result<Report> {
    let Some(path) = path else {
        let mut rep = Report::new("adjunction");
        rep.push(run_criterion(5, &opts.suite_config()));
        return Ok(rep);
    };
    let r = load(path)?;
    r.require_lawful()?;
    let mut rep = Report::new("adjunction");
    for (qn, q) in &r.families {
        let mut modules: Vec<(String, TambaraModule)> =
            r.modules.iter().filter(|(_, m)| m.family.same_shape(q)).map(|(n, m)| (n.clone(), m.clone())).collect();
        if q.act_x == q.act_y {
            modules.push((format!("hom({})", qn), TambaraModule::hom_module(q.act_x.clone())?));
        }
        for (mn, m) in modules {
            let name = format!("{qn} / {mn}");
            let t = Instant::now();
            match adjunction_check(q, &m, opts.budget, opts.exec) {
                Ok(a) => {
                    let mut o = outcome(name, if a.ok() { Status::Pass } else { Status::Fail }, millis(t));
                    o.count = Some(a.free_side.prof);
                    o.detail = Some(format!(
                        "Tamb(ΨQ,R) {} vs Prof(Q,UR) {}; Tamb(R,ΘQ) {} vs Prof(UR,Q) {}; direction {}",
                        a.free_side.tamb,
                        a.free_side.prof,
                        a.cofree_side.tamb,
                        a.cofree_side.prof,
                        serde_json::to_string(&a.direction).unwrap_or_default()
                    ));
                    if !a.ok() {
                        o.witness = a.free_side.witness.or(a.cofree_side.witness).or(Some(a.comonad.first_line()));
                    }
                    rep.push(o);
                }
                Err(e) => rep.push(limited(&name, t, e)?),
            }
        }
    }
    Ok(rep)
}

/// Lemma sweep, equivalence check, truncated plain-lens coend and the
/// pasting sweeps, over carriers up to `--max-size`.
pub fn dlens_suite(opts: &Options) -> Result<Report> {
    let max = opts.max_size;
    if max > 4 {
        return Err(CoreError::TooLarge { what: "lemma sweep carrier size".into(), size: max, limit: 4 }.into());
    }
    let small = max.min(2);
    let mut rep = Report::new("dlens-suite");

    let t = Instant::now();
    let s = lemma_sweep(max, opts.exec);
    let mut o = outcome(format!("lemma sweep ≤ {max}"), if s.failures == 0 { Status::Pass } else { Status::Fail }, millis(t));
    o.count = Some(s.instances);
    o.witness = s.witness;
    rep.push(o);

    let t = Instant::now();
    let e = equivalence_check(small, 60, opts.seed, opts.exec);
    let mut o = outcome(format!("comparison equivalence ≤ {small}"), if e.ok() { Status::Pass } else { Status::Fail }, millis(t));
    o.count = Some(e.composable_pairs);
    o.detail = Some(format!(
        "full {}, faithful {}, essentially surjective {}, identities {}, compositions {}",
        e.full, e.faithful, e.essentially_surjective, e.identities, e.compositions
    ));
    o.witness = e.witness.clone();
    rep.push(o);

    let t = Instant::now();
    let plain = Cospan::new(1, vec![0, 0], vec![0, 0])?;
    let name = format!("truncated plain lens at bound {}", opts.bound);
    match truncated_coend_optic(&plain, &plain, opts.bound, 1 << 20) {
        Ok(r) => {
            let ok = r.stabilized && r.count == r.reduced;
            let mut o = outcome(name, if ok { Status::Pass } else { Status::Fail }, millis(t));
            o.count = Some(r.count);
            o.detail = Some(format!("{} at {}, {} at {}, reduced {}", r.count, r.bound, r.next_count, r.bound + 1, r.reduced));
            rep.push(o);
        }
        Err(e) => rep.push(limited(&name, t, e)?),
    }

    for (name, sweep) in [("beck-chevalley", beck_chevalley_sweep as fn(usize, usize) -> SweepReport), ("pasting", |m, _| pasting_sweep(m))] {
        let t = Instant::now();
        let s = sweep(small, 2);
        let mut o = outcome(format!("{name} ≤ {small}"), if s.failures == 0 { Status::Pass } else { Status::Fail }, millis(t));
        o.count = Some(s.instances);
        o.witness = s.witness;
        rep.push(o);
    }
    Ok(rep)
}

/// The representation check on declared optics between action objects, or
/// on corpus instances.
pub fn rep_check(path: Option<&str>, name: Option<&str>, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("rep-check");
    let Some(path) = path else {
        rep.push(run_criterion(7, &opts.suite_config()));
        return Ok(rep);
    };
    let r = load(path)?;
    r.require_lawful()?;
    for (n, o) in selected(&r.optics, "optic", name)? {
        let ResolvedOptic::Objects { x, y, inner, outer } = o else {
            if name.is_some() {
                return Err(CliError::invalid(n, "the representation check needs an optic between action objects"));
            }
            continue;
        };
        let t = Instant::now();
        match representation_check(x, y, *inner, *outer, opts.budget, opts.exec) {
            Ok(rc) => {
                let mut o = outcome(n.clone(), if rc.bijection { Status::Pass } else { Status::Fail }, millis(t));
                o.count = Some(rc.optic_count);
                o.detail = Some(format!(
                    "optics {}, Tamb(rep(outer), rep(inner)) {}, other placement {}",
                    rc.optic_count, rc.tamb_count, rc.reverse_count
                ));
                o.witness = rc.witness;
                rep.push(o);
            }
            Err(e) => rep.push(limited(n, t, e)?),
        }
    }
    Ok(rep)
}

/// All acceptance criteria, or the 1-based selection in `only`.
pub fn suite(only: &[usize], opts: &Options) -> Result<Report> {
    let cfg = opts.suite_config();
    let picked: Vec<usize> = if only.is_empty() { (1..=CRITERIA.len()).collect() } else { only.to_vec() };
    if let Some(&k) = picked.iter().find(|&&k| k == 0 || k > CRITERIA.len()) {
        return Err(CliError::Unresolved { kind: "criterion", name: k.to_string() });
    }
    let mut rep = Report::new("suite");
    for k in picked {
        rep.push(run_criterion(k, &cfg));
    }
    Ok(rep)
}

/// The lens instance as a self-contained file.
pub fn export_lens(sizes: [usize; 4], bound: usize) -> Result<String> {
    let [s, a, b, t] = sizes;
    let i = lens_integrand(s, a, b, t, bound, 1 << 20)?;
    let mut ex = Exporter::new();
    ex.optic_integrand("lens", &i);
    Ok(ex.file.to_json())
}

/// A random action with a family, its cofree module and one optic, for fixtures.
pub fn export_corpus(seed: u64) -> Result<String> {
    let mut corpus = Corpus::new(seed);
    let act = corpus.action();
    let q = corpus.family(&act, &act, 2);
    let theta = tambara_core::cofree(&q)?.module;
    let mut ex = Exporter::new();
    ex.family(&q);
    ex.module(&theta);
    let n = act.fibres[0].n_objects();
    let pick = |k: u64| (seed.wrapping_add(k) as usize) % n;
    let inner = tambara_core::OpticObject { o: 0, a: pick(0), b: pick(1) };
    let outer = tambara_core::OpticObject { o: 0, a: pick(2), b: pick(3) };
    ex.optic_objects("optic", &act, &Arc::clone(&act), inner, outer);
    Ok(ex.file.to_json())
}
