use kmalg::{Poly, Rational, SpaceSpec, Violation};
use serde_json::{json, Map, Value as Json};

use crate::dsl::Value;
use crate::verbs::Verb;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

/// Outcome of one command: human-readable lines plus the structured fields
/// of the JSON form.
#[derive(Debug, Clone)]
pub struct Report {
    pub verb: Verb,
    pub space: Option<SpaceSpec>,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub result: Option<Value>,
    pub lines: Vec<String>,
    pub extra: Map<String, Json>,
}

impl Report {
    pub(crate) fn new(verb: Verb, space: Option<SpaceSpec>) -> Self {
        Self {
            verb,
            space,
            verdict: Verdict::Pass,
            violations: Vec::new(),
            result: None,
            lines: Vec::new(),
            extra: Map::new(),
        }
    }

    pub(crate) fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub(crate) fn fail_with(&mut self, violations: Vec<Violation>) {
        for v in &violations {
            self.lines.push(format!("violated: {}  (lhs {}, rhs {})", v.constraint, v.lhs, v.rhs));
        }
        self.violations.extend(violations);
        self.verdict = Verdict::Fail;
    }

    pub(crate) fn set_result(&mut self, value: Value) {
        self.lines.extend(value.to_dsl().lines().map(str::to_string));
        self.result = Some(value);
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut obj = Map::new();
        obj.insert("verb".into(), json!(self.verb.name()));
        obj.insert("space".into(), self.space.map_or(Json::Null, |s| json!(s.to_string())));
        obj.insert(
            "verdict".into(),
            json!(match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }),
        );
        obj.insert(
            "violations".into(),
            Json::Array(
                self.violations
                    .iter()
                    .map(|v| json!({"constraint": v.constraint, "lhs": v.lhs.to_string(), "rhs": v.rhs.to_string()}))
                    .collect(),
            ),
        );
        obj.insert("result".into(), self.result.as_ref().map_or(Json::Null, result_json));
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        Json::Object(obj)
    }
}

fn rationals(values: &[Rational]) -> Json {
    Json::Array(values.iter().map(|c| json!(c.to_string())).collect())
}

fn poly(p: &Poly) -> Json {
    rationals(p.coeffs())
}

fn op_coeffs(op: &kmalg::BranchOp, order: usize) -> Json {
    Json::Array((0..=order).map(|s| poly(&op.coeff(s))).collect())
}

/// Result value as coefficient arrays (constant term first, rationals as
/// strings) together with its text form.
pub fn result_json(value: &Value) -> Json {
    let coefficients = match value {
        Value::Poly(p) => poly(p),
        Value::Plane(p) => Json::Array(p.grid().iter().map(|row| rationals(row)).collect()),
        Value::Glued(u) => json!({"m": u.space().contact_order(), "f": poly(u.f()), "g": poly(u.g())}),
        Value::Op(b) => json!({"order": b.order, "coeffs": op_coeffs(&b.op, b.order)}),
        Value::Paired(b) => json!({
            "order": b.order,
            "x": op_coeffs(&b.d1, b.order),
            "y": op_coeffs(&b.d2, b.order),
        }),
        Value::Symbol(s) => json!({
            "degree": s.degree,
            "m": s.space.contact_order(),
            "a": poly(&s.a),
            "b": poly(&s.b),
        }),
        Value::Char(c) => json!({"site": format!("{:?}", c.site()).to_lowercase(), "at": c.base_point().to_string()}),
    };
    json!({"kind": value.kind(), "coefficients": coefficients, "dsl": value.to_dsl()})
}
