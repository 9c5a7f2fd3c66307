//! SVG rendering of a scene in the Klein disk.
//!
//! The ball is scaled to the unit disk with y pointing up. Gyrolines are
//! straight chords, so segments are plain `<line>`s; gyrocircles are
//! sampled at 256 angles and closed.

use std::fmt::Write;

use gyrogeom::circle::{circle_point, GyroCircle};
use gyrogeom::BallPoint;
use serde_json::Value;
use thiserror::Error;

use crate::exec::{build_triangle, ResultsDocument};
use crate::scene::Scene;

const SAMPLES: usize = 256;
const SIZE: u32 = 512;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("rendering needs 2D points, scene has dimension {0}")]
    RenderUnsupportedDimension(usize),
}

struct Canvas {
    s: f64,
    body: String,
}

impl Canvas {
    fn pos(&self, c: &[f64]) -> (String, String) {
        (fixed(c[0] / self.s), fixed(-c[1] / self.s))
    }

    fn chord(&mut self, a: &[f64], b: &[f64], class: &str) {
        let ((x1, y1), (x2, y2)) = (self.pos(a), self.pos(b));
        writeln!(self.body, r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
    }

    fn circle(&mut self, pts: &[Vec<f64>]) {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.pos(p);
            write!(d, "{}{x} {y}", if i == 0 { "M" } else { " L" }).unwrap();
        }
        d.push_str(" Z");
        writeln!(self.body, r#"  <path class="gyrocircle" d="{d}"/>"#).unwrap();
    }

    fn marker(&mut self, name: &str, c: &[f64]) {
        let (x, y) = self.pos(c);
        writeln!(self.body, r#"  <circle class="point" cx="{x}" cy="{y}" r="0.012"/>"#).unwrap();
        let (lx, ly) = self.pos(&[c[0] + 0.02 * self.s, c[1] + 0.02 * self.s]);
        writeln!(self.body, r#"  <text x="{lx}" y="{ly}">{}</text>"#, xml_escape(name)).unwrap();
    }
}

/// Six decimals, without a sign on zero.
fn fixed(x: f64) -> String {
    let out = format!("{x:.6}");
    if out == "-0.000000" {
        "0.000000".into()
    } else {
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn coords(v: &Value) -> Option<Vec<f64>> {
    v.as_array()?.iter().map(Value::as_f64).collect()
}

pub fn render_svg(scene: &Scene, results: &ResultsDocument) -> Result<String, RenderError> {
    if scene.dim() != 2 {
        return Err(RenderError::RenderUnsupportedDimension(scene.dim()));
    }
    let p = &scene.params;
    let mut cv = Canvas { s: p.s(), body: String::new() };

    if let Ok(t) = build_triangle(scene) {
        let v = t.vertices();
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            cv.chord(v[i].coords(), v[j].coords(), "side");
        }
    }
    for r in &results.results {
        let Ok(val) = &r.outcome else { continue };
        match r.kind {
            "circumcircle" => {
                let (Some(c), Some(rad)) = (val.get("center").and_then(coords), val["radius"].as_f64()) else { continue };
                let Ok(center) = BallPoint::new(c, p) else { continue };
                let Ok(circle) = GyroCircle::new(center, rad, p) else { continue };
                let pts: Option<Vec<Vec<f64>>> = (0..SAMPLES)
                    .map(|k| {
                        let th = 2.0 * std::f64::consts::PI * k as f64 / SAMPLES as f64;
                        circle_point(&circle, th, p).ok().map(|q| q.coords().to_vec())
                    })
                    .collect();
                if let Some(pts) = pts {
                    cv.circle(&pts);
                }
            }
            "tangents" => {
                let Some(from) = val["point"].as_str().and_then(|n| scene.point(n)) else { continue };
                for tp in val["points"].as_array().into_iter().flatten().filter_map(coords) {
                    cv.chord(from.coords(), &tp, "tangent");
                }
            }
            "circumcevian" | "chords-check" => {
                let apex = match val.get("apex").and_then(coords) {
                    Some(a) => a,
                    None => scene.point(&scene.triangle[2]).expect("validated").coords().to_vec(),
                };
                if let Some(q) = val.get("q").and_then(coords) {
                    cv.chord(&apex, &q, "cevian");
                }
            }
            _ => {}
        }
    }
    for (name, pt) in &scene.points {
        cv.marker(name, pt.coords());
    }

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="-1.05 -1.05 2.1 2.1">"#
    )
    .unwrap();
    out.push_str(concat!(
        "  <style>\n",
        "    .disk { fill: none; stroke: #000; stroke-width: 0.006; }\n",
        "    .side { stroke: #1f4e79; stroke-width: 0.005; }\n",
        "    .gyrocircle { fill: none; stroke: #b22222; stroke-width: 0.005; }\n",
        "    .tangent { stroke: #2e7d32; stroke-width: 0.004; }\n",
        "    .cevian { stroke: #6a1b9a; stroke-width: 0.004; }\n",
        "    .point { fill: #000; }\n",
        "    text { font-family: sans-serif; font-size: 0.05px; }\n",
        "  </style>\n",
        "  <circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"1\"/>\n",
    ));
    out.push_str(&cv.body);
    out.push_str("</svg>\n");
    Ok(out)
}
