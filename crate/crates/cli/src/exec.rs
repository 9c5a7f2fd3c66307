//! Query execution. Each query yields one record; failures are
//! reported in the record and never abort the run.

use std::f64::consts::FRAC_PI_2;

use gyrogeom::cevian::{chord_powers, circumcevian, circumcevian_length, cevian_foot, relabel_for_vertex, CevianParam};
use gyrogeom::circle::{
    classify, dist_to_circumcenter, inscribed_angle_i, inscribed_angle_ii, k_indicator, k_scale, point_of, tangency_points,
    tangent_length, InscribedCase, Tangency,
};
use gyrogeom::einstein::{gyroangle, gyrodistance};
use gyrogeom::gyrobary::weights_in_frame;
use gyrogeom::triangle::{circumcircle_through, GyroTriangle};
use gyrogeom::{BallPoint, GeomError, Weights3};
use serde_json::{json, Map, Value};

use crate::render::render_svg;
use crate::scene::{Query, Scene};

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub index: usize,
    pub kind: &'static str,
    pub outcome: Result<Value, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultsDocument {
    pub s: f64,
    pub results: Vec<QueryResult>,
}

impl ResultsDocument {
    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("index".into(), json!(r.index));
                m.insert("kind".into(), json!(r.kind));
                match &r.outcome {
                    Ok(v) => {
                        m.insert("ok".into(), json!(true));
                        m.insert("value".into(), v.clone());
                    }
                    Err(e) => {
                        m.insert("ok".into(), json!(false));
                        m.insert("error".into(), json!(e));
                    }
                }
                Value::Object(m)
            })
            .collect();
        json!({ "s": self.s, "results": results })
    }
}

/// Serialized results; numbers use the shortest round-trip decimal form.
pub fn emit(doc: &ResultsDocument) -> String {
    let mut out = serde_json::to_string_pretty(&doc.to_json()).expect("values are finite");
    out.push('\n');
    out
}

pub fn execute(scene: &Scene) -> ResultsDocument {
    let triangle = build_triangle(scene);
    let mut results = vec![];
    for (index, q) in scene.queries.iter().enumerate() {
        let outcome = match q {
            // drawn from the results so far
            Query::Render => render_svg(scene, &ResultsDocument { s: scene.params.s(), results: results.clone() })
                .map(|svg| json!({ "svg": svg }))
                .map_err(|e| e.to_string()),
            _ => run(scene, &triangle, q).map_err(|e| e.to_string()),
        };
        results.push(QueryResult { index, kind: q.kind(), outcome });
    }
    ResultsDocument { s: scene.params.s(), results }
}

pub(crate) fn build_triangle(scene: &Scene) -> Result<GyroTriangle, GeomError> {
    let [a, b, c] = vertices(scene);
    GyroTriangle::new(a.clone(), b.clone(), c.clone(), &scene.params)
}

fn vertices(scene: &Scene) -> [&BallPoint; 3] {
    scene.triangle.each_ref().map(|n| scene.point(n).expect("validated"))
}

fn xy(p: &BallPoint) -> Value {
    json!(p.coords())
}

fn rel(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn k_residual(w: &Weights3, t: &GyroTriangle) -> f64 {
    let k = k_indicator(w, t).abs();
    if k == 0.0 {
        0.0
    } else {
        k / k_scale(w, t)
    }
}

fn run(scene: &Scene, triangle: &Result<GyroTriangle, GeomError>, q: &Query) -> Result<Value, GeomError> {
    let p = &scene.params;
    if let Query::Circumcircle = q {
        let [a1, a2, a3] = vertices(scene);
        let c = circumcircle_through(a1, a2, a3, p)?;
        let t = triangle.as_ref().map_err(Clone::clone)?;
        let circum = t.circum()?;
        let mut spread: f64 = 0.0;
        for v in t.vertices() {
            spread = spread.max(rel(gyrodistance(c.center(), v, p)?.0, c.radius()));
        }
        let d3 = t.gammas().d3_h3().0;
        return Ok(json!({
            "center": xy(c.center()),
            "radius": c.radius(),
            "gamma_radius": circum.gamma_r.value(),
            "weights": circum.weights.0,
            "residuals": {
                "equidistance": spread,
                "center_constant": rel(circum.m_o * circum.gamma_r.value(), d3),
            }
        }));
    }
    let t = triangle.as_ref().map_err(Clone::clone)?;
    match q {
        Query::Classify { point } => {
            let x = scene.point(point).expect("validated");
            let w = weights_in_frame(x, t.vertices(), p)?;
            let label = classify(&w, t)?;
            let d = dist_to_circumcenter(&w, t)?;
            let measured = gyrodistance(&t.circum()?.center, x, p)?.0;
            Ok(json!({
                "point": point,
                "weights": w.0,
                "class": label.label(),
                "distance_to_center": d,
                "radius": t.circum()?.radius,
                "residuals": { "distance": rel(d, measured) }
            }))
        }
        Query::Tangents { point } => {
            let x = scene.point(point).expect("validated");
            let w = weights_in_frame(x, t.vertices(), p)?;
            match tangency_points(t, &w)? {
                Tangency::None => Ok(json!({ "point": point, "case": "none" })),
                Tangency::Single(_) => Ok(json!({ "point": point, "case": "single", "points": [xy(x)], "length": 0.0 })),
                Tangency::Two { plus, minus } => {
                    let (g, len) = tangent_length(t, &w)?;
                    let o = &t.circum()?.center;
                    let mut pts = vec![];
                    let (mut on, mut lens, mut perp) = (0f64, 0f64, 0f64);
                    for tw in [plus, minus] {
                        let tp = point_of(t, &tw)?;
                        on = on.max(k_residual(&tw, t));
                        lens = lens.max(rel(gyrodistance(x, &tp, p)?.0, len));
                        perp = perp.max((gyroangle(&tp, o, x, p)? - FRAC_PI_2).abs());
                        pts.push(xy(&tp));
                    }
                    Ok(json!({
                        "point": point,
                        "case": "two",
                        "points": pts,
                        "length": len,
                        "gamma_length": g.value(),
                        "residuals": { "on_circle": on, "length": lens, "perpendicular": perp }
                    }))
                }
            }
        }
        Query::Circumcevian { t1, vertex } => {
            let k = match vertex {
                None => 2,
                Some(v) => scene
                    .triangle
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| GeomError::DegenerateConfiguration(format!("\"{v}\" is not a triangle vertex")))?,
            };
            let (r, _) = relabel_for_vertex(t, k)?;
            let param = CevianParam::new(*t1)?;
            let wq = circumcevian(&r, param)?;
            let q = point_of(&r, &wq)?;
            let foot = cevian_foot(&r, param)?;
            let (_, len) = circumcevian_length(&r, param)?;
            let apex = &r.vertices()[2];
            Ok(json!({
                "t1": t1,
                "apex": xy(apex),
                "foot": xy(&foot),
                "q": xy(&q),
                "length": len,
                "residuals": {
                    "on_circle": k_residual(&wq, &r),
                    "length": rel(gyrodistance(apex, &q, p)?.0, len),
                }
            }))
        }
        Query::ChordsCheck { t1 } => {
            let param = CevianParam::new(*t1)?;
            let cp = chord_powers(t, param)?;
            let wq = circumcevian(t, param)?;
            Ok(json!({
                "t1": t1,
                "foot": xy(&cevian_foot(t, param)?),
                "q": xy(&point_of(t, &wq)?),
                "power_a1a2": cp.through_a1a2,
                "power_a3q": cp.through_a3q,
                "closed_form": cp.closed_form,
                "residual": rel(cp.through_a1a2, cp.closed_form).max(rel(cp.through_a3q, cp.closed_form)),
            }))
        }
        Query::Inscribed => {
            let i = inscribed_angle_i(t)?;
            let ii = inscribed_angle_ii(t)?;
            let case = match ii.case {
                InscribedCase::SameSide => "same-side",
                InscribedCase::OppositeSides => "opposite-sides",
                InscribedCase::Diameter => "diameter",
            };
            Ok(json!({
                "theta": i.theta,
                "phi": i.phi,
                "case": case,
                "residuals": {
                    "first_form": (i.lhs - i.rhs).abs(),
                    "second_form": ii.residual.abs(),
                    "half_angle": (i.phi - i.phi_measured).abs(),
                }
            }))
        }
        Query::Circumcircle | Query::Render => unreachable!("handled by caller"),
    }
}
