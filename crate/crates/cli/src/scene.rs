//! Scene documents: parsing and validation.

use std::fmt;

use gyrogeom::einstein::DEFAULT_EPS_BOUNDARY;
use gyrogeom::{BallPoint, ModelParams};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Circumcircle,
    Classify { point: String },
    Tangents { point: String },
    /// cevian from `vertex` (default: the third triangle point)
    Circumcevian { t1: f64, vertex: Option<String> },
    ChordsCheck { t1: f64 },
    Inscribed,
    Render,
}

impl Query {
    pub fn kind(&self) -> &'static str {
        match self {
            Query::Circumcircle => "circumcircle",
            Query::Classify { .. } => "classify",
            Query::Tangents { .. } => "tangents",
            Query::Circumcevian { .. } => "circumcevian",
            Query::ChordsCheck { .. } => "chords-check",
            Query::Inscribed => "inscribed",
            Query::Render => "render",
        }
    }
}

pub const KINDS: [&str; 7] = ["circumcircle", "classify", "tangents", "circumcevian", "chords-check", "inscribed", "render"];

#[derive(Debug, Clone)]
pub struct Scene {
    pub params: ModelParams,
    /// in document order
    pub points: Vec<(String, BallPoint)>,
    pub triangle: [String; 3],
    pub queries: Vec<Query>,
}

impl Scene {
    pub fn point(&self, name: &str) -> Option<&BallPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(2, |(_, p)| p.dim())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    /// JSON pointer into the scene document
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub struct SceneValidationError {
    pub issues: Vec<Issue>,
}

impl fmt::Display for SceneValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scene:")?;
        for i in &self.issues {
            let path = if i.path.is_empty() { "/" } else { &i.path };
            write!(f, "\n  {path}: {}", i.message)?;
        }
        Ok(())
    }
}

impl SceneValidationError {
    fn single(path: &str, message: impl Into<String>) -> Self {
        SceneValidationError { issues: vec![Issue { path: path.into(), message: message.into() }] }
    }

    pub fn to_json(&self) -> Value {
        let list: Vec<Value> = self
            .issues
            .iter()
            .map(|i| serde_json::json!({ "path": i.path, "message": i.message }))
            .collect();
        serde_json::json!({ "errors": list })
    }
}

/// Overrides applied on top of the document.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub s: Option<f64>,
    pub tol: Option<f64>,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

struct Checker {
    issues: Vec<Issue>,
}

impl Checker {
    fn push(&mut self, path: String, message: impl Into<String>) {
        self.issues.push(Issue { path, message: message.into() });
    }

    fn number(&mut self, v: Option<&Value>, path: String) -> Option<f64> {
        match v {
            None => {
                self.push(path, "missing number");
                None
            }
            Some(Value::Number(n)) => n.as_f64(),
            Some(_) => {
                self.push(path, "expected a number");
                None
            }
        }
    }

    fn string(&mut self, v: Option<&Value>, path: String) -> Option<String> {
        match v {
            Some(Value::String(s)) => Some(s.clone()),
            None => {
                self.push(path, "missing string");
                None
            }
            Some(_) => {
                self.push(path, "expected a string");
                None
            }
        }
    }
}

pub fn parse_scene(text: &str, ov: Overrides) -> Result<Scene, SceneValidationError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| SceneValidationError::single("", format!("malformed JSON: {e}")))?;
    validate(&doc, ov)
}

pub fn validate(doc: &Value, ov: Overrides) -> Result<Scene, SceneValidationError> {
    let Some(obj) = doc.as_object() else {
        return Err(SceneValidationError::single("", "scene must be an object"));
    };
    let mut c = Checker { issues: vec![] };
    for key in obj.keys() {
        if !["s", "tol", "points", "triangle", "queries"].contains(&key.as_str()) {
            c.push(format!("/{}", escape(key)), "unknown field");
        }
    }

    let s = match ov.s {
        Some(s) => Some(s),
        None => c.number(obj.get("s"), "/s".into()),
    };
    let tol = match (ov.tol, obj.get("tol")) {
        (Some(t), _) => Some(t),
        (None, None) => Some(gyrogeom::einstein::DEFAULT_TOL_REL),
        (None, v) => c.number(v, "/tol".into()),
    };
    let params = match (s, tol) {
        (Some(s), Some(tol)) => match ModelParams::with_tolerances(s, DEFAULT_EPS_BOUNDARY, tol) {
            Ok(p) => Some(p),
            Err(e) => {
                let path = if ov.s.is_none() && !(s.is_finite() && s > 0.0) { "/s" } else { "" };
                c.push(path.into(), e.to_string());
                None
            }
        },
        _ => None,
    };

    let points = points(&mut c, obj, params.as_ref());
    let names: Vec<&str> = points.iter().map(|(n, _)| n.as_str()).collect();
    let triangle = triangle(&mut c, obj, &names);
    let queries = queries(&mut c, obj, &names);

    if !c.issues.is_empty() {
        return Err(SceneValidationError { issues: c.issues });
    }
    Ok(Scene {
        params: params.expect("checked"),
        points,
        triangle: triangle.expect("checked"),
        queries,
    })
}

fn points(c: &mut Checker, obj: &Map<String, Value>, params: Option<&ModelParams>) -> Vec<(String, BallPoint)> {
    let mut out = vec![];
    let Some(v) = obj.get("points") else {
        c.push("/points".into(), "missing object");
        return out;
    };
    let Some(map) = v.as_object() else {
        c.push("/points".into(), "expected an object of name -> coordinates");
        return out;
    };
    let mut dim = None;
    for (name, coords) in map {
        let path = format!("/points/{}", escape(name));
        let Some(arr) = coords.as_array() else {
            c.push(path, "expected an array of coordinates");
            continue;
        };
        let mut xs = Vec::with_capacity(arr.len());
        for (i, x) in arr.iter().enumerate() {
            if let Some(x) = c.number(Some(x), format!("{path}/{i}")) {
                xs.push(x);
            }
        }
        if xs.len() != arr.len() {
            continue;
        }
        if xs.len() < 2 {
            c.push(path, "points need at least two coordinates");
            continue;
        }
        match dim {
            None => dim = Some(xs.len()),
            Some(d) if d != xs.len() => {
                c.push(path, format!("dimension {} differs from {d}", xs.len()));
                continue;
            }
            _ => {}
        }
        let Some(p) = params else { continue };
        match BallPoint::new(xs, p) {
            Ok(b) => out.push((name.clone(), b)),
            Err(e) => c.push(path, e.to_string()),
        }
    }
    out
}

fn resolve(c: &mut Checker, v: Option<&Value>, path: String, names: &[&str]) -> Option<String> {
    let name = c.string(v, path.clone())?;
    if !names.contains(&name.as_str()) {
        // an unparsable point already has its own issue
        if !c.issues.iter().any(|i| i.path.starts_with(&format!("/points/{}", escape(&name)))) {
            c.push(path, format!("unknown point \"{name}\""));
        }
        return None;
    }
    Some(name)
}

fn triangle(c: &mut Checker, obj: &Map<String, Value>, names: &[&str]) -> Option<[String; 3]> {
    let Some(arr) = obj.get("triangle").and_then(Value::as_array) else {
        c.push("/triangle".into(), "expected an array of three point names");
        return None;
    };
    if arr.len() != 3 {
        c.push("/triangle".into(), format!("expected three point names, got {}", arr.len()));
        return None;
    }
    let r: Vec<Option<String>> = (0..3).map(|i| resolve(c, arr.get(i), format!("/triangle/{i}"), names)).collect();
    Some([r[0].clone()?, r[1].clone()?, r[2].clone()?])
}

fn queries(c: &mut Checker, obj: &Map<String, Value>, names: &[&str]) -> Vec<Query> {
    let mut out = vec![];
    let arr = match obj.get("queries") {
        None => return out,
        Some(Value::Array(a)) => a,
        Some(_) => {
            c.push("/queries".into(), "expected an array");
            return out;
        }
    };
    let empty = Map::new();
    for (i, q) in arr.iter().enumerate() {
        let path = format!("/queries/{i}");
        let Some(qo) = q.as_object() else {
            c.push(path, "expected an object with kind and args");
            continue;
        };
        let Some(kind) = c.string(qo.get("kind"), format!("{path}/kind")) else { continue };
        let args = match qo.get("args") {
            None => &empty,
            Some(Value::Object(m)) => m,
            Some(_) => {
                c.push(format!("{path}/args"), "expected an object");
                continue;
            }
        };
        let ap = |k: &str| format!("{path}/args/{k}");
        let t1 = |c: &mut Checker| {
            let v = c.number(args.get("t1"), ap("t1"))?;
            if !(0.0..=1.0).contains(&v) {
                c.push(ap("t1"), "t1 must lie in [0, 1]");
                return None;
            }
            Some(v)
        };
        let parsed = match kind.as_str() {
            "circumcircle" => Some(Query::Circumcircle),
            "inscribed" => Some(Query::Inscribed),
            "render" => Some(Query::Render),
            "classify" => resolve(c, args.get("point"), ap("point"), names).map(|point| Query::Classify { point }),
            "tangents" => resolve(c, args.get("point"), ap("point"), names).map(|point| Query::Tangents { point }),
            "chords-check" => t1(c).map(|t1| Query::ChordsCheck { t1 }),
            "circumcevian" => {
                let vertex = match args.get("vertex") {
                    None => Some(None),
                    v => resolve(c, v, ap("vertex"), names).map(Some),
                };
                match (t1(c), vertex) {
                    (Some(t1), Some(vertex)) => Some(Query::Circumcevian { t1, vertex }),
                    _ => None,
                }
            }
            other => {
                c.push(format!("{path}/kind"), format!("unknown kind \"{other}\"; expected one of {}", KINDS.join(", ")));
                None
            }
        };
        if let Some(q) = parsed {
            out.push(q);
        }
    }
    out
}
