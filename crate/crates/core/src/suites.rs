//! The acceptance suites, one runner per criterion, shared by the command line
//! and the test harness.

use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bicat::BicatAction;
use crate::corpus::{all_functors, Corpus};
use crate::dlens::{equivalence_check, lemma_sweep, truncated_coend_optic, Cospan};
use crate::error::{CoreError, Result};
use crate::fincat::{check_discrete_opfibration, FinCategory};
use crate::internal_action::{action_round_trip, check_action, check_action_category, copresheaf_round_trip, copresheaf_to_action, grothendieck};
use crate::optic::{check_eval, check_optic_category, lens_integrand, optic_hom, representation_check, OpticHom, OpticObject};
use crate::oracle::engines_agree;
use crate::par::Exec;
use crate::profunctor::{check_profunctor, compound_integrand_check, CompoundInstance};
use crate::tambara::{adjunction_check, check_tambara, cofree, enumerate_tambara_morphisms, forget, free, TambaraModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ResourceLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budget: u64,
    pub exec: Exec,
    /// apex bound for truncated coends
    pub bound: usize,
    /// carrier bound for the lemma sweep
    pub max_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, budget: 2_000_000, exec: Exec::default(), bound: 2, max_size: 3 }
    }
}

/// What a runner reports before timing is attached.
struct Tally {
    count: usize,
    witness: Option<String>,
    detail: Option<String>,
    limited: bool,
    minimum: usize,
}

impl Tally {
    fn new(minimum: usize) -> Self {
        Tally { count: 0, witness: None, detail: None, limited: false, minimum }
    }

    fn fail(&mut self, w: impl Into<String>) {
        self.witness.get_or_insert_with(|| w.into());
    }

    /// Records an error: budget overruns mark the check resource-limited.
    fn error(&mut self, what: &str, e: CoreError) {
        if matches!(e, CoreError::Budget { .. } | CoreError::TooLarge { .. }) {
            self.limited = true;
        }
        self.fail(format!("{what}: {e}"));
    }
}

fn timed(name: &str, f: impl FnOnce() -> Tally) -> CheckOutcome {
    let start = Instant::now();
    let mut t = f();
    if t.witness.is_none() && t.count < t.minimum {
        t.witness = Some(format!("only {} instances, {} required", t.count, t.minimum));
    }
    let status = match (&t.witness, t.limited) {
        (None, _) => Status::Pass,
        (Some(_), true) => Status::ResourceLimit,
        (Some(_), false) => Status::Fail,
    };
    CheckOutcome { name: name.into(), status, witness: t.witness, count: Some(t.count), millis: start.elapsed().as_millis() as u64, detail: t.detail }
}

pub const CRITERIA: [&str; 10] = [
    "coend-end-engines",
    "dlens-lemma-sweep",
    "dlens-equivalence",
    "classical-lens-count",
    "free-cofree-adjunctions",
    "tambara-checker-mutations",
    "representation-theorem",
    "compound-integrand",
    "eval-coherence",
    "action-presentations",
];

/// Runs criterion `k` (1-based).
pub fn run_criterion(k: usize, cfg: &SuiteConfig) -> CheckOutcome {
    let name = CRITERIA[k - 1];
    match k {
        1 => timed(name, || coend_engines(cfg)),
        2 => timed(name, || lemma(cfg)),
        3 => timed(name, || equivalence(cfg)),
        4 => timed(name, || lens_count(cfg)),
        5 => timed(name, || adjunctions(cfg)),
        6 => timed(name, || mutations(cfg)),
        7 => timed(name, || representation(cfg).0),
        8 => timed(name, || compound(cfg)),
        9 => timed(name, || eval_coherence(cfg)),
        _ => timed(name, || presentations(cfg)),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    (1..=CRITERIA.len()).map(|k| run_criterion(k, cfg)).collect()
}

fn coend_engines(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(200);
    let mut corpus = Corpus::new(cfg.seed ^ 1);
    let mut attempts = 0;
    let (mut morphisms, mut diagonal, mut nonempty) = (0, 0, 0);
    while t.count < 200 && attempts < 20_000 {
        attempts += 1;
        let c = Arc::new(corpus.category(4, 10));
        let Some(h) = corpus.profunctor(&c, &c, 6) else { continue };
        t.count += 1;
        morphisms += c.n_morphisms();
        let d: usize = (0..c.n_objects()).map(|o| h.set(o, o).len()).sum();
        diagonal += d;
        nonempty += (d > 0) as usize;
        if !check_profunctor(&h).ok() {
            t.fail(format!("generated profunctor {} fails its checker", t.count));
        }
        match engines_agree(&h) {
            Ok(true) => {}
            Ok(false) => t.fail(format!("engines differ from the oracles on instance {}", t.count)),
            Err(e) => t.error("engine", e),
        }
    }
    t.detail = Some(format!("{morphisms} morphisms, {diagonal} diagonal elements, {nonempty} with nonempty diagonal"));
    t
}

fn lemma(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(1);
    let r = lemma_sweep(cfg.max_size, cfg.exec);
    t.count = r.instances;
    if r.failures > 0 {
        t.fail(format!("{} failures, first: {}", r.failures, r.witness.unwrap_or_default()));
    }
    t
}

fn equivalence(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(50);
    let r = equivalence_check(2, 60, cfg.seed, cfg.exec);
    t.count = r.composable_pairs;
    t.detail = Some(format!("{} cospans, {} hom-sets, {} morphisms", r.objects, r.hom_pairs, r.morphisms));
    if !r.ok() {
        t.fail(r.witness.unwrap_or_else(|| "equivalence check failed".into()));
    }
    t
}

fn lens_count(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(1);
    let bound = cfg.bound.max(2);
    match lens_integrand(2, 2, 2, 2, bound, 1 << 16) {
        Ok(i) => {
            let n = OpticHom::from_integrand(i).count();
            t.count = n;
            if n != 64 {
                t.fail(format!("lens optic hom has {n} classes"));
            }
        }
        Err(e) => t.error("lens integrand", e),
    }
    let plain = Cospan::new(1, vec![0, 0], vec![0, 0]).expect("plain cospan");
    match truncated_coend_optic(&plain, &plain, bound, 1 << 16) {
        Ok(r) => {
            t.detail = Some(format!("truncated coend {} at {}, {} at {}, reduced {}", r.count, r.bound, r.next_count, r.bound + 1, r.reduced));
            if !r.stabilized || r.count != 64 {
                t.fail(format!("truncated coend does not stabilize at 64: {r:?}"));
            }
        }
        Err(e) => t.error("truncated coend", e),
    }
    t
}

fn module_for(corpus: &mut Corpus, act: &Arc<BicatAction>) -> Result<TambaraModule> {
    match corpus.rng().gen_range(0..3) {
        0 => TambaraModule::hom_module(act.clone()),
        1 => Ok(cofree(&corpus.family(act, act, 2))?.module),
        _ => Ok(free(&corpus.family(act, act, 2))?.module),
    }
}

fn adjunctions(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(20);
    let mut corpus = Corpus::new(cfg.seed ^ 5);
    let mut readings = [0usize; 4];
    let mut unknown = [0usize; 2];
    for _ in 0..20 {
        let act = corpus.action();
        let q = corpus.family(&act, &act, 2);
        let r = match module_for(&mut corpus, &act) {
            Ok(r) => r,
            Err(e) => {
                t.error("module", e);
                continue;
            }
        };
        t.count += 1;
        match adjunction_check(&q, &r, cfg.budget, cfg.exec) {
            Ok(rep) => {
                if !rep.ok() {
                    let w = rep.free_side.witness.or(rep.cofree_side.witness).unwrap_or_else(|| rep.comonad.first_line());
                    t.fail(format!("instance {}: {w}", t.count));
                }
                let d = rep.direction;
                readings[0] += d.free_left_of_forget as usize;
                readings[2] += d.cofree_right_of_forget as usize;
                match d.free_right_of_forget {
                    Some(b) => readings[1] += b as usize,
                    None => unknown[0] += 1,
                }
                match d.cofree_left_of_forget {
                    Some(b) => readings[3] += b as usize,
                    None => unknown[1] += 1,
                }
            }
            Err(e) => t.error(&format!("instance {}", t.count), e),
        }
    }
    t.detail = Some(format!(
        "direction: free left of forget {}/{n}, free right of forget {}/{n} ({} unknown), cofree right of forget {}/{n}, cofree left of forget {}/{n} ({} unknown)",
        readings[0], readings[1], unknown[0], readings[2], readings[3], unknown[1], n = t.count
    ));
    t
}

fn mutations(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(30);
    let mut corpus = Corpus::new(cfg.seed ^ 6);
    let mut mutants = 0;
    let mut attempts = 0;
    while t.count < 30 && attempts < 500 {
        attempts += 1;
        let act = corpus.action();
        let q = corpus.family(&act, &act, 2);
        let modules = match (cofree(&q), free(&q)) {
            (Ok(a), Ok(b)) => [a.module, b.module],
            (Err(e), _) | (_, Err(e)) => {
                t.error("construction", e);
                continue;
            }
        };
        for p in modules {
            let base = check_tambara(&p);
            if !base.ok() {
                t.fail(format!("constructed module fails: {}", base.first_line()));
                continue;
            }
            let entries: Vec<_> = p.strength_entries().into_iter().filter(|(_, size)| *size >= 2).collect();
            if entries.is_empty() {
                continue;
            }
            t.count += 1;
            for ((m, x, y, e), size) in entries {
                let cur = p.st(m, x, y, e);
                for v in (0..size).filter(|&v| v != cur) {
                    mutants += 1;
                    let r = check_tambara(&p.with_strength_entry(m, x, y, e, v));
                    if r.ok() || r.violations.is_empty() {
                        t.fail(format!("mutation st[{m}]({x}, {y})[{e}] = {v} passes"));
                    }
                }
            }
        }
    }
    t.detail = Some(format!("{mutants} mutants"));
    t
}

struct RepInstance {
    act: Arc<BicatAction>,
    inner: OpticObject,
    outer: OpticObject,
}

fn random_object(corpus: &mut Corpus, act: &BicatAction) -> OpticObject {
    let o = corpus.rng().gen_range(0..act.base.n_objects());
    let n = act.fibres[o].n_objects();
    OpticObject { o, a: corpus.rng().gen_range(0..n), b: corpus.rng().gen_range(0..n) }
}

fn representation(cfg: &SuiteConfig) -> (Tally, Vec<RepInstance>) {
    let mut t = Tally::new(10);
    let mut corpus = Corpus::new(cfg.seed ^ 7);
    let mut kept = Vec::new();
    let (mut optics, mut nontrivial) = (0, 0);
    for _ in 0..16 {
        // prefer instances with several optic classes; most random draws have at most one
        let mut draw = || {
            let act = corpus.action();
            let (inner, outer) = (random_object(&mut corpus, &act), random_object(&mut corpus, &act));
            (act, inner, outer)
        };
        let mut pick = draw();
        for _ in 0..20 {
            if optic_hom(&pick.0, &pick.0, pick.1, pick.2).map_or(0, |h| h.count()) >= 2 {
                break;
            }
            pick = draw();
        }
        let (act, inner, outer) = pick;
        t.count += 1;
        match representation_check(&act, &act, inner, outer, cfg.budget, cfg.exec) {
            Ok(r) if r.bijection => {
                optics += r.optic_count;
                nontrivial += (r.optic_count > 1) as usize;
            }
            Ok(r) => t.fail(format!("instance {}: {}", t.count, r.witness.unwrap_or_default())),
            Err(e) => t.error(&format!("instance {}", t.count), e),
        }
        kept.push(RepInstance { act, inner, outer });
    }
    t.detail = Some(format!("{optics} optic classes, {nontrivial} instances with more than one"));
    (t, kept)
}

fn compound(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(20);
    let mut corpus = Corpus::new(cfg.seed ^ 8);
    let mut attempts = 0;
    let (mut elements, mut nontrivial) = (0, 0);
    while t.count < 24 && attempts < 2000 {
        attempts += 1;
        let pick = |corpus: &mut Corpus| {
            let c = Arc::new(corpus.category(3, 10));
            let c2 = Arc::new(corpus.category(3, 10));
            let fs = all_functors(&c, &c2, 50_000);
            fs.choose(corpus.rng()).cloned()
        };
        let (Some(act_c), Some(act_d)) = (pick(&mut corpus), pick(&mut corpus)) else { continue };
        let rng = corpus.rng();
        let inst = CompoundInstance {
            a: rng.gen_range(0..act_c.dom.n_objects()),
            b: rng.gen_range(0..act_d.dom.n_objects()),
            s: rng.gen_range(0..act_c.cod.n_objects()),
            t: rng.gen_range(0..act_d.cod.n_objects()),
            act_c,
            act_d,
        };
        t.count += 1;
        match compound_integrand_check(&inst) {
            Ok(r) if r.bijection => {
                elements += r.lhs;
                nontrivial += (r.lhs > 1) as usize;
            }
            Ok(r) => t.fail(format!("instance {}: {}", t.count, r.counterexample.unwrap_or_default())),
            Err(e) => t.error(&format!("instance {}", t.count), e),
        }
    }
    t.detail = Some(format!("{elements} coend elements, {nontrivial} instances with more than one"));
    t
}

fn eval_coherence(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(10);
    let (_, instances) = representation(cfg);
    let mut corpus = Corpus::new(cfg.seed ^ 9);
    let mut naturality = 0;
    for inst in instances {
        t.count += 1;
        let objects = if inst.inner == inst.outer { vec![inst.inner] } else { vec![inst.inner, inst.outer] };
        let act = &inst.act;
        match check_optic_category(act, act, &objects) {
            Ok(r) if r.ok() => {}
            Ok(r) => t.fail(format!("optic category on instance {}: {}", t.count, r.first_line())),
            Err(e) => t.error("optic category", e),
        }
        let q = corpus.family(act, act, 2);
        let run = || -> Result<(crate::report::LawReport, usize)> {
            let p = TambaraModule::hom_module(act.clone())?;
            let r = cofree(&forget(&p))?.module;
            let other = cofree(&q)?.module;
            let maps = enumerate_tambara_morphisms(&p, &r, cfg.budget, cfg.exec)?;
            let n = maps.len();
            let mut rep = check_eval(act, act, &p, &objects, &maps.into_iter().map(|h| (r.clone(), h)).collect::<Vec<_>>())?;
            rep.absorb("cofree module", check_eval(act, act, &other, &objects, &[])?);
            Ok((rep, n))
        };
        match run() {
            Ok((r, n)) if r.ok() => naturality += n,
            Ok((r, _)) => t.fail(format!("eval on instance {}: {}", t.count, r.first_line())),
            Err(e) => t.error(&format!("instance {}", t.count), e),
        }
    }
    t.detail = Some(format!("naturality along {naturality} module morphisms"));
    t
}

fn presentations(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::new(100);
    let mut corpus = Corpus::new(cfg.seed ^ 10);
    let mut attempts = 0;
    while t.count < 100 && attempts < 10_000 {
        attempts += 1;
        let c: Arc<FinCategory> = Arc::new(corpus.category(4, 10));
        let Some(f) = corpus.copresheaf(&c, 6) else { continue };
        t.count += 1;
        let run = || -> Result<Option<String>> {
            let a = copresheaf_to_action(&f)?;
            let checks = [
                ("action laws", check_action(&a)),
                ("action round trip", action_round_trip(&a)?),
                ("copresheaf round trip", copresheaf_round_trip(&f)?),
            ];
            for (what, r) in checks {
                if !r.ok() {
                    return Ok(Some(format!("{what}: {}", r.first_line())));
                }
            }
            let g = grothendieck(&f)?;
            let r = check_discrete_opfibration(&g.proj_functor);
            if !r.ok() {
                return Ok(Some(format!("unique lifts: {}", r.first_line())));
            }
            let r = check_action_category(&g);
            Ok((!r.ok()).then(|| format!("action category: {}", r.first_line())))
        };
        match run() {
            Ok(None) => {}
            Ok(Some(w)) => t.fail(format!("instance {}: {w}", t.count)),
            Err(e) => t.error(&format!("instance {}", t.count), e),
        }
    }
    t
}
