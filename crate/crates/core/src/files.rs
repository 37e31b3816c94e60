//! Model, assessment, event and option documents.
//!
//! A model document is either a generator form
//!
//! ```json
//! {"space": {...}, "desirable_generators": [...], "indifferent_basis": [...],
//!  "include_background": true}
//! ```
//!
//! optionally carrying `"excluded_bases"` (reject is `−(accept ∖ ∪S)`) or
//! `"reject_rays"`/`"reject_background"` (reject is generated by rays), or a
//! derived form `{"space": …, "derived": {"operation": …, "model": …, …}}`
//! that is replayed on load. Derived documents are how non-polyhedral
//! results are written out.

use serde_json::{json, Map, Value};

use crate::change::{contract, expand, expand_event, revise};
use crate::cone_expr::{Cone, ConeExpr};
use crate::error::{Error, Result};
use crate::io::SpaceIo;
use crate::linalg::CoordVec;
use crate::models::{close, Assessment, Closure, Reject, StatementModel};
use crate::sample::Sampling;
use crate::space::{ClassicalSpace, OptionSpace, QuantumSpace, SpaceDescriptor};
use crate::subspace::Subspace;

/// A space chosen at run time.
#[derive(Clone, Debug)]
pub enum AnySpace {
    Classical(ClassicalSpace),
    Quantum(QuantumSpace),
}

impl AnySpace {
    pub fn from_descriptor(d: &SpaceDescriptor) -> Result<Self> {
        match d {
            SpaceDescriptor::Classical { atoms } => Ok(AnySpace::Classical(ClassicalSpace::new(atoms.clone())?)),
            SpaceDescriptor::Quantum { dim } => Ok(AnySpace::Quantum(QuantumSpace::new(*dim)?)),
        }
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        match self {
            AnySpace::Classical(s) => s.descriptor(),
            AnySpace::Quantum(s) => s.descriptor(),
        }
    }
}

/// Run `$body` with `$s` bound to the concrete space.
#[macro_export]
macro_rules! with_space {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            $crate::files::AnySpace::Classical($s) => $body,
            $crate::files::AnySpace::Quantum($s) => $body,
        }
    };
}

fn parse_descriptor(v: &Value) -> Result<SpaceDescriptor> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("bad space descriptor: {e}")))
}

/// Guess the space from the shape of an option: a matrix is quantum, a
/// vector is a gamble on atoms named by position.
fn infer_from_option(u: &Value) -> Option<SpaceDescriptor> {
    let items = u.as_array()?;
    match items.first() {
        Some(Value::Array(_)) => Some(SpaceDescriptor::Quantum { dim: items.len() }),
        Some(_) => Some(SpaceDescriptor::Classical { atoms: ClassicalSpace::with_size(items.len()).ok()?.atoms().to_vec() }),
        None => None,
    }
}

/// The space of a model, assessment or option document.
pub fn space_of(doc: &Value) -> Result<AnySpace> {
    if let Some(d) = doc.get("space") {
        return AnySpace::from_descriptor(&parse_descriptor(d)?);
    }
    if let Some(derived) = doc.get("derived") {
        return space_of(derived.get("model").unwrap_or(&Value::Null));
    }
    let candidates = ["desirable_generators", "indifferent_basis", "accept", "reject"]
        .iter()
        .filter_map(|k| doc.get(*k).and_then(Value::as_array))
        .flatten();
    let mut found = None;
    for u in candidates {
        if let Some(d) = infer_from_option(u) {
            found = Some(d);
            break;
        }
    }
    if found.is_none() {
        found = infer_from_option(doc.get("option").unwrap_or(doc));
    }
    match found {
        Some(d) => AnySpace::from_descriptor(&d),
        None => Err(Error::Input("cannot tell the option space: add a \"space\" field".into())),
    }
}

/// The space of an event document, when it can be told from the document.
pub fn event_space(doc: &Value) -> Result<Option<AnySpace>> {
    if let Some(d) = doc.get("space") {
        return AnySpace::from_descriptor(&parse_descriptor(d)?).map(Some);
    }
    if let Some(atoms) = doc.get("atoms") {
        let atoms: Vec<String> = serde_json::from_value(atoms.clone())?;
        return Ok(Some(AnySpace::Classical(ClassicalSpace::new(atoms)?)));
    }
    match doc.get("kind").and_then(Value::as_str) {
        Some("quantum") => {
            let n = if let Some(p) = doc.get("projector").and_then(Value::as_array) {
                p.len()
            } else {
                doc.get("subspace_basis")
                    .and_then(Value::as_array)
                    .and_then(|b| b.first())
                    .and_then(Value::as_array)
                    .map(Vec::len)
                    .ok_or_else(|| Error::Input("quantum event needs \"projector\" or a non-empty \"subspace_basis\"".into()))?
            };
            Ok(Some(AnySpace::Quantum(QuantumSpace::new(n)?)))
        }
        Some("classical") => Ok(None),
        _ => Err(Error::Input("event without \"kind\"".into())),
    }
}

/// Refuse documents whose declared space differs from `space`.
pub fn check_space<Sp: OptionSpace>(space: &Sp, doc: &Value) -> Result<()> {
    if let Some(d) = doc.get("space") {
        let d = parse_descriptor(d)?;
        if d != space.descriptor() {
            return Err(Error::SpaceMismatch(format!("document is over {d:?}, expected {:?}", space.descriptor())));
        }
    }
    Ok(())
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| Error::Input(format!("missing \"{key}\"")))
}

/// An option document: a bare option, or `{"space": …, "option": …}`.
pub fn load_option<Sp: SpaceIo>(space: &Sp, doc: &Value) -> Result<CoordVec<Sp::Scalar>> {
    check_space(space, doc)?;
    space.option_from_json(doc.get("option").unwrap_or(doc))
}

pub fn load_event<Sp: SpaceIo>(space: &Sp, doc: &Value) -> Result<Sp::Event> {
    check_space(space, doc)?;
    space.event_from_json(doc)
}

pub fn load_assessment<Sp: SpaceIo>(space: &Sp, doc: &Value) -> Result<Assessment<Sp::Scalar>> {
    check_space(space, doc)?;
    let accept = space.options_from_json(doc.get("accept").unwrap_or(&Value::Null))?;
    let reject = space.options_from_json(doc.get("reject").unwrap_or(&Value::Null))?;
    Ok(Assessment::new(accept, reject))
}

pub fn assessment_to_json<Sp: SpaceIo>(space: &Sp, a: &Assessment<Sp::Scalar>) -> Value {
    json!({
        "space": space.descriptor(),
        "accept": space.options_to_json(&a.accept),
        "reject": space.options_to_json(&a.reject),
    })
}

fn bases_from_json<Sp: SpaceIo>(space: &Sp, v: &Value) -> Result<Vec<Subspace<Sp::Scalar>>> {
    v.as_array()
        .ok_or_else(|| Error::Input("\"excluded_bases\" is an array of bases".into()))?
        .iter()
        .map(|b| Subspace::span(space.dim(), &space.options_from_json(b)?))
        .collect()
}

/// Load a model document (see the module docs).
pub fn load_model<Sp: SpaceIo + Sampling>(space: &Sp, doc: &Value) -> Result<Closure<Sp>> {
    check_space(space, doc)?;
    if let Some(d) = doc.get("derived") {
        return load_derived(space, d);
    }
    let gens = space.options_from_json(doc.get("desirable_generators").unwrap_or(&Value::Null))?;
    let indiff = Subspace::span(space.dim(), &space.options_from_json(doc.get("indifferent_basis").unwrap_or(&Value::Null))?)?;
    let background = match doc.get("include_background") {
        None => true,
        Some(v) => v.as_bool().ok_or_else(|| Error::Input("\"include_background\" is a boolean".into()))?,
    };
    if doc.get("excluded_bases").is_none() && doc.get("reject_rays").is_none() {
        return StatementModel::least_resolved_di(space, gens, indiff, background);
    }
    for g in &gens {
        space.check_option(g)?;
    }
    let accept = ConeExpr::span_aug(ConeExpr::gen(gens, background), indiff);
    let model = if let Some(rays) = doc.get("reject_rays") {
        let rays = space.options_from_json(rays)?;
        let bg = doc.get("reject_background").and_then(Value::as_bool).unwrap_or(false);
        StatementModel { accept: Cone::new(space, accept), reject: Reject::Rays { rays, background: bg } }
    } else {
        StatementModel::minus(space, accept, bases_from_json(space, field(doc, "excluded_bases")?)?)
    };
    if model.rejects(space, &vec![<Sp::Scalar as num_traits::Zero>::zero(); space.dim()])?.is_no() {
        Ok(Closure::Model(model))
    } else {
        Ok(Closure::Inconsistent)
    }
}

fn load_derived<Sp: SpaceIo + Sampling>(space: &Sp, d: &Value) -> Result<Closure<Sp>> {
    let op = field(d, "operation")?.as_str().ok_or_else(|| Error::Input("\"operation\" is a string".into()))?;
    if op == "close" {
        let a = load_assessment(space, field(d, "assessment")?)?;
        return close(space, &a, &StatementModel::vacuous(space));
    }
    let base = load_model(space, field(d, "model")?)?.into_model()?;
    if op == "expand_assessment" {
        return expand(space, &base, &load_assessment(space, field(d, "assessment")?)?);
    }
    let e = load_event(space, field(d, "event")?)?;
    match op {
        "revise" => revise(space, &base, &e).map(Closure::Model),
        "contract" => contract(space, &base, &e).map(Closure::Model),
        "expand" => expand_event(space, &base, &e),
        other => Err(Error::Input(format!("unknown operation '{other}'"))),
    }
}

/// A derived document recording `operation` applied to the given inputs.
pub fn derived_json<Sp: SpaceIo>(space: &Sp, operation: &str, inputs: Map<String, Value>) -> Value {
    let mut d = Map::new();
    d.insert("operation".into(), Value::from(operation));
    d.extend(inputs);
    json!({"space": space.descriptor(), "derived": d})
}

/// Generator-form document of a polyhedral model, `None` for other models.
pub fn model_to_json<Sp: SpaceIo>(space: &Sp, m: &StatementModel<Sp>) -> Option<Value> {
    let flat = m.accept.flat.as_ref()?;
    let mut doc = json!({
        "space": space.descriptor(),
        "desirable_generators": space.options_to_json(&flat.minimal_generators()),
        "indifferent_basis": [],
        "include_background": false,
    });
    let obj = doc.as_object_mut().expect("object literal");
    match &m.reject {
        Reject::Minus(ex) => {
            let lineality = flat.lineality();
            if let [s] = ex.as_slice() {
                if s.equals(&lineality).unwrap_or(false) {
                    let rays: Vec<_> = flat.minimal_generators().into_iter().filter(|g| !s.contains(g)).collect();
                    obj.insert("desirable_generators".into(), space.options_to_json(&rays));
                    obj.insert("indifferent_basis".into(), space.options_to_json(s.basis()));
                    return Some(doc);
                }
            }
            let bases: Vec<Value> = ex.iter().map(|s| space.options_to_json(s.basis())).collect();
            obj.insert("excluded_bases".into(), Value::Array(bases));
        }
        Reject::Rays { rays, background } => {
            obj.insert("reject_rays".into(), space.options_to_json(rays));
            obj.insert("reject_background".into(), Value::Bool(*background));
        }
    }
    Some(doc)
}

/// Serialize a closure result; non-polyhedral models fall back to `derived`.
pub fn closure_to_json<Sp: SpaceIo>(space: &Sp, c: &Closure<Sp>, derived: impl FnOnce() -> Value) -> Value {
    match c {
        Closure::Inconsistent => json!({"space": space.descriptor(), "inconsistent": true}),
        Closure::Model(m) => model_to_json(space, m).unwrap_or_else(derived),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::closure_equal;

    #[test]
    fn revised_model_round_trips_through_generator_form() {
        let s = ClassicalSpace::with_size(3).unwrap();
        let doc = json!({"space": s.descriptor(), "desirable_generators": [[-1, 2, 0]]});
        let m = load_model(&s, &doc).unwrap().into_model().unwrap();
        let e = s.event(&["a", "b"]).unwrap();
        for out in [revise(&s, &m, &e).unwrap(), contract(&s, &m, &e).unwrap()] {
            let back = load_model(&s, &model_to_json(&s, &out).unwrap()).unwrap();
            assert!(closure_equal(&s, &back, &Closure::Model(out)).unwrap().is_verified());
        }
    }

    #[test]
    fn quantum_results_use_derived_documents() {
        let q = QuantumSpace::new(2).unwrap();
        let base = json!({"space": q.descriptor(), "desirable_generators": []});
        let ev = json!({"kind": "quantum", "subspace_basis": [[[1, 0], [0, 0]]]});
        let m = load_model(&q, &base).unwrap().into_model().unwrap();
        let r = revise(&q, &m, &load_event(&q, &ev).unwrap()).unwrap();
        assert!(model_to_json(&q, &r).is_none());
        let mut inputs = Map::new();
        inputs.insert("model".into(), base);
        inputs.insert("event".into(), ev);
        let doc = derived_json(&q, "revise", inputs);
        let again = load_model(&q, &doc).unwrap().into_model().unwrap();
        assert!(again.structural_eq(&q, &r));
    }

    #[test]
    fn spaces_are_inferred_and_checked() {
        assert!(matches!(space_of(&json!({"accept": [[1, 0]]})).unwrap(), AnySpace::Classical(_)));
        assert!(matches!(space_of(&json!([[[1, 0], [0, 0]], [[0, 0], [1, 0]]])).unwrap(), AnySpace::Quantum(_)));
        let s = ClassicalSpace::with_size(2).unwrap();
        let other = json!({"space": {"kind": "quantum", "dim": 2}, "option": [1, 2]});
        assert!(matches!(load_option(&s, &other), Err(Error::SpaceMismatch(_))));
        assert!(event_space(&json!({"kind": "classical", "subset": []})).unwrap().is_none());
    }
}
