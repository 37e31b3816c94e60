//! Random instances, suite runners and the BC7 counterexample hunt.
//!
//! Every trial draws from its own stream `trial_rng(seed, i)`, so a report
//! depends only on `(suite, space, trials, seed)` and not on how rayon
//! schedules the trials.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::change::{bc7_inclusion, bc_trial, br_trial, coherent_model, expand_event, identities_trial, Instance};
use crate::error::{Error, Result};
use crate::events::event_trial;
use crate::files::{space_of, AnySpace};
use crate::io::SpaceIo;
use crate::linalg::CoordVec;
use crate::models::{
    assessment_in_model, check_axioms_di, check_axioms_m, check_coherent_d, close, closure_equal, closure_include,
    di_incompatible, inclusion_witness, Assessment, Closure, StatementModel,
};
use crate::report::{AxiomReport, AxiomResult, Check, Outcome};
use crate::sample::{trial_rng, Sampling, DEFAULT_RANGE};
use crate::scalar::Scalar;
use crate::space::{ClassicalSpace, EventClass, OptionSpace, QuantumSpace};
use crate::subspace::Subspace;

/// Resampling budget of the coherence filter.
pub const MAX_RESAMPLES: usize = 100;
/// Samples used for the M1–M4 checks inside BR1/BC1.
pub const AXIOM_SAMPLES: usize = 20;

pub type TrialChecks = Vec<(String, Check)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Events,
    Models,
    Revision,
    Contraction,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Events, Suite::Models, Suite::Revision, Suite::Contraction, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Events => "events",
            Suite::Models => "models",
            Suite::Revision => "revision",
            Suite::Contraction => "contraction",
            Suite::Identities => "identities",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Classical,
    Quantum,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Classical => "classical",
            SpaceKind::Quantum => "quantum",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub trials: usize,
    pub seed: u64,
    /// Trials cycle |Ω| through min_atoms..=max_atoms.
    pub min_atoms: usize,
    pub max_atoms: usize,
    /// Trials cycle the Hilbert dimension through min_dim..=max_dim.
    pub min_dim: usize,
    pub max_dim: usize,
    /// Most extra desirable generators per model.
    pub max_generators: usize,
    pub range: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            trials: 100,
            seed: 0,
            min_atoms: 2,
            max_atoms: 4,
            min_dim: 2,
            max_dim: 3,
            max_generators: 5,
            range: DEFAULT_RANGE,
        }
    }
}

impl GenConfig {
    fn classical(&self, i: usize) -> ClassicalSpace {
        let lo = self.min_atoms.max(2);
        let hi = self.max_atoms.max(lo);
        ClassicalSpace::with_size(lo + i % (hi - lo + 1)).expect("at least two atoms")
    }

    fn quantum(&self, i: usize) -> QuantumSpace {
        let lo = self.min_dim.max(2);
        let hi = self.max_dim.max(lo);
        QuantumSpace::new(lo + i % (hi - lo + 1)).expect("dimension at least two")
    }

    /// Quantum models are kept small: column generation dominates the run time.
    fn generators_for<Sp: OptionSpace>(&self) -> usize {
        if Sp::Scalar::EXACT {
            self.max_generators
        } else {
            self.max_generators.min(2)
        }
    }
}

/// `k` small-integer options forming a coherent set together with the
/// background, resampled while `0 ∈ posi(gens ∪ B≻0)`.
pub fn rand_coherent_gens<Sp: Sampling>(space: &Sp, rng: &mut ChaCha8Rng, k: usize, range: i64) -> Result<Vec<CoordVec<Sp::Scalar>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let zero = Subspace::zero(space.dim());
    for _ in 0..MAX_RESAMPLES {
        let gens: Vec<_> = (0..k).map(|_| space.random_option(rng, range)).collect();
        if di_incompatible(space, &gens, &zero, true)?.is_no() {
            return Ok(gens);
        }
    }
    Err(Error::Generation(format!("no coherent set of {k} generators after {MAX_RESAMPLES} draws")))
}

/// A random coherent model with `0..=k` generators, falling back to the
/// vacuous model when the resampling budget runs out.
pub fn rand_model<Sp: Sampling>(space: &Sp, rng: &mut ChaCha8Rng, max_k: usize, range: i64) -> Vec<CoordVec<Sp::Scalar>> {
    let k = rng.gen_range(0..=max_k);
    rand_coherent_gens(space, rng, k, range).unwrap_or_default()
}

/// An event other than the unit event.
pub fn rand_non_regular<Sp: Sampling>(space: &Sp, rng: &mut ChaCha8Rng) -> Sp::Event {
    for _ in 0..MAX_RESAMPLES {
        let e = space.random_event(rng);
        if space.classify(&e) != EventClass::Regular {
            return e;
        }
    }
    space.null_event()
}

fn rand_instance<Sp: Sampling>(space: &Sp, rng: &mut ChaCha8Rng, cfg: &GenConfig, non_regular: bool) -> Instance<Sp> {
    let gens = rand_model(space, rng, cfg.generators_for::<Sp>(), cfg.range);
    let (e1, e2) = if non_regular {
        (rand_non_regular(space, rng), rand_non_regular(space, rng))
    } else {
        (space.random_event(rng), space.random_event(rng))
    };
    Instance { gens, e1, e2 }
}

fn named(checks: Vec<(&'static str, Check)>) -> TrialChecks {
    checks.into_iter().map(|(a, c)| (a.to_string(), c)).collect()
}

fn flatten(results: Vec<AxiomResult>) -> TrialChecks {
    results.into_iter().map(|r| (r.axiom, Check { outcome: r.outcome, witness: r.witness })).collect()
}

fn error_check(e: Error) -> Check {
    match e {
        Error::Undecided(_) | Error::Unsupported(_) | Error::Convergence { .. } => Check::unknown(json!({"error": e.to_string()})),
        other => Check::fail(json!({"error": other.to_string()})),
    }
}

/// Expansion by an event model yields `M` for the unit event and
/// inconsistency otherwise.
fn expansion_check<Sp: Sampling + SpaceIo>(space: &Sp, m: &StatementModel<Sp>, e: &Sp::Event) -> Check {
    let unit = space.event_eq(e, &space.unit_event());
    match expand_event(space, m, e) {
        Ok(Closure::Inconsistent) => Check::from_bool(!unit, || json!({"event": space.event_to_json(e), "detail": "unit event expands to ⟨𝒪,𝒪⟩"})),
        Ok(c @ Closure::Model(_)) => {
            if !unit {
                return Check::fail(json!({"event": space.event_to_json(e), "detail": "expansion stayed consistent"}));
            }
            match closure_equal(space, &c, &Closure::Model(m.clone())) {
                Ok(inc) if inc.is_verified() => Check::pass(),
                Ok(inc) if inc.is_falsified() => Check::fail(json!({"event": space.event_to_json(e), "witness": inclusion_witness(space, &inc)})),
                Ok(_) => Check::unknown(json!({"event": space.event_to_json(e)})),
                Err(err) => error_check(err),
            }
        }
        Err(err) => error_check(err),
    }
}

fn expansion_events<Sp: Sampling>(space: &Sp, rng: &mut ChaCha8Rng) -> Vec<Sp::Event> {
    space
        .exhaustive_events()
        .unwrap_or_else(|| vec![space.unit_event(), space.null_event(), space.random_event(rng)])
}

/// Idempotence, extensiveness and monotonicity of `cls` on a random assessment.
fn closure_laws<Sp: Sampling + SpaceIo>(space: &Sp, rng: &mut ChaCha8Rng, range: i64) -> Result<TrialChecks> {
    let draw = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| -> Vec<CoordVec<Sp::Scalar>> {
        let n = rng.gen_range(lo..=hi);
        (0..n).map(|_| space.random_option(rng, range)).collect()
    };
    let a = Assessment::new(draw(rng, 1, 3), draw(rng, 0, 2));
    let bg = StatementModel::vacuous(space);
    let ctx = json!({"accept": space.options_to_json(&a.accept), "reject": space.options_to_json(&a.reject)});
    let with_ctx = |c: Check| match c.witness {
        Some(w) => Check { outcome: c.outcome, witness: Some(json!({"assessment": ctx, "detail": w})) },
        None => c,
    };
    let Closure::Model(m) = close(space, &a, &bg)? else {
        return Ok(vec![
            ("Closure-extensive".into(), Check::vacuous()),
            ("Closure-idempotent".into(), Check::vacuous()),
            ("Closure-monotone".into(), Check::vacuous()),
        ]);
    };
    let closed = Closure::Model(m.clone());
    let inc = assessment_in_model(space, &a, &m)?;
    let extensive = Check::from_bool(inc.is_verified(), || inclusion_witness(space, &inc));

    // Re-close the statements that generate cls(A).
    let flat = m.accept.flat.as_ref().ok_or_else(|| Error::Unsupported("closure laws need a polyhedral closure".into()))?;
    let (rays, _) = m.to_rays(space)?;
    let again = close(space, &Assessment::new(flat.minimal_generators(), rays), &bg)?;
    let eq = closure_equal(space, &again, &closed)?;
    let idempotent = Check::from_bool(eq.is_verified(), || inclusion_witness(space, &eq));

    let b = a.union(&Assessment::new(draw(rng, 0, 2), draw(rng, 0, 1)));
    let bigger = close(space, &b, &bg)?;
    let inc = closure_include(space, &closed, &bigger)?;
    let monotone = Check::from_bool(inc.is_verified(), || inclusion_witness(space, &inc));
    Ok(vec![
        ("Closure-extensive".into(), with_ctx(extensive)),
        ("Closure-idempotent".into(), with_ctx(idempotent)),
        ("Closure-monotone".into(), with_ctx(monotone)),
    ])
}

fn models_trial<Sp: Sampling + SpaceIo>(space: &Sp, rng: &mut ChaCha8Rng, cfg: &GenConfig, seed: u64) -> TrialChecks {
    let gens = rand_model(space, rng, cfg.generators_for::<Sp>(), cfg.range);
    let mut out = TrialChecks::new();
    let run = || -> Result<TrialChecks> {
        let mut out = TrialChecks::new();
        out.extend(flatten(check_coherent_d(space, &gens, true)?));
        let m = coherent_model(space, gens.clone())?;
        out.extend(flatten(check_axioms_m(space, &m, AXIOM_SAMPLES, seed)?));
        out.extend(flatten(check_axioms_di(space, &m, AXIOM_SAMPLES, seed)?));
        Ok(out)
    };
    match run() {
        Ok(c) => out.extend(c),
        Err(e) => out.push(("Models".into(), error_check(e))),
    }
    if Sp::Scalar::EXACT {
        match closure_laws(space, rng, cfg.range) {
            Ok(c) => out.extend(c),
            Err(e) => out.push(("Closure".into(), error_check(e))),
        }
    }
    out
}

fn suite_trial<Sp: Sampling + SpaceIo>(space: &Sp, suite: Suite, cfg: &GenConfig, i: usize) -> TrialChecks {
    let seed = cfg.seed;
    let mut rng = trial_rng(seed, i as u64);
    match suite {
        Suite::Events => {
            let call = |e: &Sp::Event, u: &[Sp::Scalar]| space.call_off(e, u);
            named(event_trial(space, &mut rng, &call))
        }
        Suite::Models => models_trial(space, &mut rng, cfg, seed ^ i as u64),
        Suite::Revision => {
            let inst = rand_instance(space, &mut rng, cfg, false);
            let mut out = named(br_trial(space, &inst, AXIOM_SAMPLES, seed ^ i as u64));
            if let Ok(m) = inst.model(space) {
                let checks: Vec<Check> = expansion_events(space, &mut rng).iter().map(|e| expansion_check(space, &m, e)).collect();
                let r = AxiomResult::aggregate("Expansion", checks);
                out.push(("Expansion".into(), Check { outcome: r.outcome, witness: r.witness }));
            }
            out
        }
        Suite::Contraction => {
            let inst = rand_instance(space, &mut rng, cfg, true);
            named(bc_trial(space, &inst, AXIOM_SAMPLES, seed ^ i as u64))
        }
        Suite::Identities => {
            let inst = rand_instance(space, &mut rng, cfg, false);
            named(identities_trial(space, &inst, crate::change::AGREEMENT_SAMPLES))
        }
    }
}

/// Fold per-trial checks into one result per axiom, in order of first appearance.
pub fn aggregate(trials: Vec<TrialChecks>) -> Vec<AxiomResult> {
    let mut order: Vec<String> = Vec::new();
    let mut by_axiom: HashMap<String, Vec<Check>> = HashMap::new();
    for (axiom, check) in trials.into_iter().flatten() {
        by_axiom
            .entry(axiom.clone())
            .or_insert_with(|| {
                order.push(axiom.clone());
                Vec::new()
            })
            .push(check);
    }
    order.iter().map(|a| AxiomResult::aggregate(a, by_axiom.remove(a).unwrap_or_default())).collect()
}

/// Run one suite on one space family.
pub fn run_suite(suite: Suite, kind: SpaceKind, cfg: &GenConfig) -> AxiomReport {
    let trials: Vec<TrialChecks> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| match kind {
            SpaceKind::Classical => suite_trial(&cfg.classical(i), suite, cfg, i),
            SpaceKind::Quantum => suite_trial(&cfg.quantum(i), suite, cfg, i),
        })
        .collect();
    AxiomReport {
        suite: suite.name().into(),
        space: kind.name().into(),
        seed: cfg.seed,
        trials: cfg.trials,
        results: aggregate(trials),
    }
}

/// Replay one serialized instance (`{"model":…, "e1":…, "e2":…}`) under a suite.
pub fn replay_instance(suite: Suite, doc: &Value, seed: u64) -> Result<AxiomReport> {
    let model = doc.get("model").ok_or_else(|| Error::Input("instance without \"model\"".into()))?;
    let any = space_of(model)?;
    let kind = match any {
        AnySpace::Classical(_) => SpaceKind::Classical,
        AnySpace::Quantum(_) => SpaceKind::Quantum,
    };
    let checks = crate::with_space!(&any, s => {
        let inst = Instance::from_json(s, doc)?;
        match suite {
            Suite::Revision => named(br_trial(s, &inst, AXIOM_SAMPLES, seed)),
            Suite::Contraction => named(bc_trial(s, &inst, AXIOM_SAMPLES, seed)),
            Suite::Identities => named(identities_trial(s, &inst, crate::change::AGREEMENT_SAMPLES)),
            Suite::Events | Suite::Models => {
                return Err(Error::Input(format!("suite '{}' does not replay instances", suite.name())))
            }
        }
    });
    Ok(AxiomReport { suite: suite.name().into(), space: kind.name().into(), seed, trials: 1, results: aggregate(vec![checks]) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntWitness {
    pub trial: usize,
    pub instance: Value,
    pub violation: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntReport {
    pub axiom: String,
    pub space: String,
    pub seed: u64,
    pub trials: usize,
    pub found: Option<HuntWitness>,
}

/// Search classical instances for a violation of BC7. The reported witness
/// is the lowest-indexed violating trial.
pub fn hunt_bc7(cfg: &GenConfig) -> HuntReport {
    let found = (0..cfg.trials).into_par_iter().find_map_first(|i| {
        let space = cfg.classical(i);
        let mut rng = trial_rng(cfg.seed, i as u64);
        let inst = rand_instance(&space, &mut rng, cfg, true);
        let m = inst.model(&space).ok()?;
        let c = bc7_inclusion(&space, &m, &inst.e1, &inst.e2, &Value::Null).ok()?;
        (c.outcome == Outcome::Fail).then(|| HuntWitness {
            trial: i,
            violation: c.witness.unwrap_or(Value::Null),
            instance: inst.to_json(&space),
        })
    });
    HuntReport { axiom: "BC7".into(), space: "classical".into(), seed: cfg.seed, trials: cfg.trials, found }
}

/// Re-check BC7 on a serialized classical instance.
pub fn replay_bc7(doc: &Value) -> Result<Check> {
    let model = doc.get("model").ok_or_else(|| Error::Input("instance without \"model\"".into()))?;
    let AnySpace::Classical(space) = space_of(model)? else {
        return Err(Error::Unsupported("BC7 replay is classical".into()));
    };
    let inst = Instance::from_json(&space, doc)?;
    let m = inst.model(&space)?;
    bc7_inclusion(&space, &m, &inst.e1, &inst.e2, &Value::Null)
}
