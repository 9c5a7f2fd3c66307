//! Test oracles and fixtures.
//!
//! The oracle re-implements Einstein addition and the gyrobarycentric
//! evaluation from the defining formulas, without touching the library,
//! so formula-based results can be checked against plain metric ones.
#![allow(dead_code)]

use std::f64::consts::PI;

use gyrogeom::triangle::GyroTriangle;
use gyrogeom::{BallPoint, ModelParams, Weights3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub mod oracle {
    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn gamma(v: &[f64], s: f64) -> f64 {
        1.0 / (1.0 - dot(v, v) / (s * s)).sqrt()
    }

    /// u ⊕ v straight from the definition.
    pub fn add(u: &[f64], v: &[f64], s: f64) -> Vec<f64> {
        let gu = gamma(u, s);
        let uv = dot(u, v) / (s * s);
        let coef = gu / (1.0 + gu) * uv;
        u.iter()
            .zip(v)
            .map(|(a, b)| (a + b / gu + coef * a) / (1.0 + uv))
            .collect()
    }

    pub fn neg(u: &[f64]) -> Vec<f64> {
        u.iter().map(|x| -x).collect()
    }

    /// (‖⊖A⊕B‖, γ) computed with the oracle addition.
    pub fn dist(a: &[f64], b: &[f64], s: f64) -> (f64, f64) {
        let w = add(&neg(a), b, s);
        (dot(&w, &w).sqrt(), gamma(&w, s))
    }

    /// γ·d, the quantity that enters gyropowers.
    pub fn gamma_dist(a: &[f64], b: &[f64], s: f64) -> f64 {
        let (d, g) = dist(a, b, s);
        g * d
    }

    pub fn point(refs: &[&[f64]], w: &[f64], s: f64) -> Vec<f64> {
        let dim = refs[0].len();
        let mut num = vec![0.0; dim];
        let mut den = 0.0;
        for (a, m) in refs.iter().zip(w) {
            let c = m * gamma(a, s);
            den += c;
            for i in 0..dim {
                num[i] += c * a[i];
            }
        }
        num.into_iter().map(|x| x / den).collect()
    }

    pub fn power(p: &[f64], x: &[f64], y: &[f64], s: f64) -> f64 {
        let (_, gxy) = dist(x, y, s);
        gamma_dist(p, x, s) * gamma_dist(p, y, s) / (gxy + 1.0)
    }

    /// Gyroangle at v via arccos of the unit gyrovectors.
    pub fn angle(v: &[f64], b: &[f64], c: &[f64], s: f64) -> f64 {
        let u = add(&neg(v), b, s);
        let w = add(&neg(v), c, s);
        (dot(&u, &w) / (dot(&u, &u).sqrt() * dot(&w, &w).sqrt())).clamp(-1.0, 1.0).acos()
    }

    /// Twice the signed area of the Klein triangle abc, relative.
    pub fn collinearity(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        let (ux, uy) = (b[0] - a[0], b[1] - a[1]);
        let (vx, vy) = (c[0] - a[0], c[1] - a[1]);
        (ux * vy - uy * vx) / ((ux * ux + uy * uy).sqrt() * (vx * vx + vy * vy).sqrt())
    }
}

pub fn pt(c: &[f64], p: &ModelParams) -> BallPoint {
    BallPoint::new(c.to_vec(), p).unwrap()
}

pub fn tri(a: &[f64], b: &[f64], c: &[f64], p: &ModelParams) -> GyroTriangle {
    GyroTriangle::new(pt(a, p), pt(b, p), pt(c, p), p).unwrap()
}

pub fn t0() -> GyroTriangle {
    let p = ModelParams::unit();
    tri(&[0.5, 0.0], &[0.0, 0.5], &[-0.5, 0.0], &p)
}

pub fn e0() -> GyroTriangle {
    let p = ModelParams::unit();
    let v: Vec<Vec<f64>> = (0..3)
        .map(|k| {
            let th = PI / 2.0 + 2.0 * PI * k as f64 / 3.0;
            vec![0.5 * th.cos(), 0.5 * th.sin()]
        })
        .collect();
    tri(&v[0], &v[1], &v[2], &p)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Vec<f64> {
    let r = radius * rng.gen::<f64>().sqrt();
    let th = rng.gen_range(0.0..2.0 * PI);
    vec![r * th.cos(), r * th.sin()]
}

/// A random triangle in the disk of the given radius that has a
/// circumgyrocircle.
pub fn random_circum_triangle(rng: &mut ChaCha8Rng, radius: f64, p: &ModelParams) -> GyroTriangle {
    loop {
        let v: Vec<Vec<f64>> = (0..3).map(|_| in_disk(rng, radius * p.s())).collect();
        if let Ok(t) = GyroTriangle::new(pt(&v[0], p), pt(&v[1], p), pt(&v[2], p), p) {
            // keep away from hairline triangles
            if t.circum().is_ok() && t.alpha().iter().all(|a| *a > 0.05) {
                return t;
            }
        }
    }
}

pub fn coords(t: &GyroTriangle) -> [Vec<f64>; 3] {
    let v = t.vertices();
    [v[0].coords().to_vec(), v[1].coords().to_vec(), v[2].coords().to_vec()]
}

/// Oracle point of triangle weights.
pub fn oracle_point(t: &GyroTriangle, w: &Weights3) -> Vec<f64> {
    let c = coords(t);
    oracle::point(&[&c[0], &c[1], &c[2]], &w.0, t.params().s())
}

/// Random weights whose point stays well inside the ball.
pub fn random_weights_in_ball(rng: &mut ChaCha8Rng, t: &GyroTriangle, radius: f64) -> Weights3 {
    let p = t.params();
    let verts = t.vertices();
    loop {
        let q = in_disk(rng, radius * p.s());
        let bp = pt(&q, p);
        if let Ok(w) = gyrogeom::gyrobary::weights_in_frame(&bp, verts, p) {
            return w;
        }
    }
}
