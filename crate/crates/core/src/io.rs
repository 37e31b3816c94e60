//! JSON encodings of options and events.
//!
//! Gambles are arrays of `"p/q"` strings (numbers are accepted on input).
//! Hermitian operators are row-major matrices of `[re, im]` pairs (plain
//! reals accepted on input). Events are `{"kind":"classical","subset":[…]}`
//! or `{"kind":"quantum","projector":…}` / `{"kind":"quantum","subspace_basis":…}`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hermitian::CMatrix;
use crate::linalg::CoordVec;
use crate::scalar::{format_rational, parse_rational};
use crate::space::{ClassicalEvent, ClassicalSpace, OptionSpace, QuantumEvent, QuantumSpace};
use crate::Rational;

pub trait SpaceIo: OptionSpace {
    fn option_to_json(&self, u: &[Self::Scalar]) -> Value;
    fn option_from_json(&self, v: &Value) -> Result<CoordVec<Self::Scalar>>;
    fn event_to_json(&self, e: &Self::Event) -> Value;
    fn event_from_json(&self, v: &Value) -> Result<Self::Event>;

    fn options_from_json(&self, v: &Value) -> Result<Vec<CoordVec<Self::Scalar>>> {
        match v {
            Value::Null => Ok(Vec::new()),
            Value::Array(items) => items.iter().map(|x| self.option_from_json(x)).collect(),
            _ => Err(Error::Input("expected an array of options".into())),
        }
    }

    fn options_to_json(&self, us: &[CoordVec<Self::Scalar>]) -> Value {
        Value::Array(us.iter().map(|u| self.option_to_json(u)).collect())
    }
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::Input(format!("not a rational: '{s}'"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                parse_rational(&n.to_string()).ok_or_else(|| Error::Input(format!("not a rational: {n}")))
            }
        }
        other => Err(Error::Input(format!("not a rational: {other}"))),
    }
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(p) if p.len() == 2 => {
            let re = p[0].as_f64().ok_or_else(|| Error::Input(format!("bad real part: {}", p[0])))?;
            let im = p[1].as_f64().ok_or_else(|| Error::Input(format!("bad imaginary part: {}", p[1])))?;
            Ok(Complex64::new(re, im))
        }
        other => Err(Error::Input(format!("expected [re, im], found {other}"))),
    }
    .and_then(|z| {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::Input("non-finite complex entry".into()))
        }
    })
}

fn complex_vec_from_json(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array()
        .ok_or_else(|| Error::Input("expected a complex vector".into()))?
        .iter()
        .map(complex_from_json)
        .collect()
}

pub fn matrix_from_json(v: &Value) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Input("expected a matrix (array of rows)".into()))?;
    CMatrix::from_rows(rows.iter().map(complex_vec_from_json).collect::<Result<_>>()?)
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

fn check_kind(v: &Value, kind: &str) -> Result<()> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(Error::SpaceMismatch(format!("expected a {kind} event, found {k}"))),
        None => Err(Error::Input("event without \"kind\"".into())),
    }
}

impl SpaceIo for ClassicalSpace {
    fn option_to_json(&self, u: &[Rational]) -> Value {
        Value::Array(u.iter().map(|x| Value::String(format_rational(x))).collect())
    }

    fn option_from_json(&self, v: &Value) -> Result<Vec<Rational>> {
        let items = v.as_array().ok_or_else(|| Error::Input("a gamble is an array of numbers".into()))?;
        let u: Vec<Rational> = items.iter().map(rational_from_json).collect::<Result<_>>()?;
        self.check_option(&u)?;
        Ok(u)
    }

    fn event_to_json(&self, e: &ClassicalEvent) -> Value {
        json!({"kind": "classical", "subset": self.event_members(e)})
    }

    fn event_from_json(&self, v: &Value) -> Result<ClassicalEvent> {
        check_kind(v, "classical")?;
        let subset = v
            .get("subset")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("classical event needs \"subset\"".into()))?;
        let names: Vec<&str> = subset
            .iter()
            .map(|x| x.as_str().ok_or_else(|| Error::Input(format!("atom names are strings, found {x}"))))
            .collect::<Result<_>>()?;
        self.event(&names)
    }
}

impl SpaceIo for QuantumSpace {
    fn option_to_json(&self, u: &[f64]) -> Value {
        matrix_to_json(&self.to_matrix(u).expect("coordinates of the right length"))
    }

    fn option_from_json(&self, v: &Value) -> Result<Vec<f64>> {
        let m = matrix_from_json(v)?;
        if m.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: m.n() });
        }
        self.from_matrix(&m)
    }

    fn event_to_json(&self, e: &QuantumEvent) -> Value {
        json!({"kind": "quantum", "projector": matrix_to_json(e.projector())})
    }

    fn event_from_json(&self, v: &Value) -> Result<QuantumEvent> {
        check_kind(v, "quantum")?;
        if let Some(p) = v.get("projector") {
            let m = matrix_from_json(p)?;
            if m.n() != self.n() {
                return Err(Error::DimensionMismatch { expected: self.n(), found: m.n() });
            }
            QuantumEvent::from_projector(&m)
        } else if let Some(b) = v.get("subspace_basis") {
            let vecs: Vec<Vec<Complex64>> = b
                .as_array()
                .ok_or_else(|| Error::Input("\"subspace_basis\" is an array of vectors".into()))?
                .iter()
                .map(complex_vec_from_json)
                .collect::<Result<_>>()?;
            QuantumEvent::from_span(self.n(), &vecs)
        } else {
            Err(Error::Input("quantum event needs \"projector\" or \"subspace_basis\"".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn classical_round_trip() {
        let s = ClassicalSpace::with_size(3).unwrap();
        let u = vec![Rational::ratio(1, 2), Rational::from_int(-3), Rational::from_int(0)];
        let j = s.option_to_json(&u);
        assert_eq!(j, json!(["1/2", "-3", "0"]));
        assert_eq!(s.option_from_json(&j).unwrap(), u);
        assert_eq!(s.option_from_json(&json!([0.25, 1, "2/4"])).unwrap()[0], Rational::ratio(1, 4));
        let e = s.event(&["a", "c"]).unwrap();
        assert!(s.event_eq(&s.event_from_json(&s.event_to_json(&e)).unwrap(), &e));
        assert!(s.option_from_json(&json!([1, 2])).is_err());
    }

    #[test]
    fn quantum_round_trip() {
        let s = QuantumSpace::new(2).unwrap();
        let a = json!([[[1.0, 0.0], [2.0, -1.0]], [[2.0, 1.0], [3.0, 0.0]]]);
        let u = s.option_from_json(&a).unwrap();
        let back = s.option_from_json(&s.option_to_json(&u)).unwrap();
        assert!(u.iter().zip(&back).all(|(x, y)| (x - y).abs() < 1e-12));
        let e = s.event_from_json(&json!({"kind":"quantum","subspace_basis":[[[1,0],[1,0]]]})).unwrap();
        assert_eq!(e.rank(), 1);
        assert!(s.event_eq(&s.event_from_json(&s.event_to_json(&e)).unwrap(), &e));
        let bad = json!([[[1.0, 0.0], [2.0, 0.0]], [[0.0, 0.0], [3.0, 0.0]]]);
        assert!(s.option_from_json(&bad).is_err());
        assert!(s.event_from_json(&json!({"kind":"classical","subset":[]})).is_err());
    }
}
