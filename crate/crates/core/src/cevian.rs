//! Circumgyrocevians from A3 through a foot P on A1A2, and the
//! gyrodistances behind the intersecting gyrochords theorem.

use crate::einstein::{BallPoint, Gamma};
use crate::error::{GeomError, Result};
use crate::gyrobary::{evaluate, GyroBaryRep, Weights3};
use crate::triangle::GyroTriangle;

/// Position t1 ∈ [0, 1] of the foot on A1A2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CevianParam(f64);

impl CevianParam {
    pub fn new(t1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t1) {
            return Err(GeomError::ParamOutOfRange { value: t1, range: "[0, 1]" });
        }
        Ok(CevianParam(t1))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    fn interior(&self) -> Result<f64> {
        if self.0 > 0.0 && self.0 < 1.0 {
            Ok(self.0)
        } else {
            Err(GeomError::ParamOutOfRange { value: self.0, range: "(0, 1)" })
        }
    }
}

/// Relabels T so that `vertex` (0-based) becomes A3, the apex of the
/// cevian. Returns the permutation for carrying weights across.
pub fn relabel_for_vertex(t: &GyroTriangle, vertex: usize) -> Result<(GyroTriangle, [usize; 3])> {
    let perm = match vertex {
        0 => [1, 2, 0],
        1 => [2, 0, 1],
        2 => [0, 1, 2],
        _ => return Err(GeomError::ParamOutOfRange { value: vertex as f64, range: "{0, 1, 2}" }),
    };
    Ok((t.relabeled(perm)?, perm))
}

pub fn cevian_foot(t: &GyroTriangle, t1: CevianParam) -> Result<BallPoint> {
    let [a1, a2, _] = t.vertices();
    match t1.0 {
        x if x == 0.0 => Ok(a1.clone()),
        x if x == 1.0 => Ok(a2.clone()),
        x => evaluate(&GyroBaryRep::new(vec![a1.clone(), a2.clone()], vec![1.0 - x, x])?, t.params()),
    }
}

/// Weights of the circumgyrocevian foot Q.
pub fn circumcevian(t: &GyroTriangle, t1: CevianParam) -> Result<Weights3> {
    t.circum()?;
    let (e12, e13, e23) = t.gammas().minus_ones();
    let x = t1.0;
    let c = e13 + (e23 - e13) * x;
    Ok(Weights3::new(c * (1.0 - x), c * x, -e12 * (1.0 - x) * x))
}

/// Representation constant of the weights returned by `circumcevian`.
pub fn circumcevian_constant(t: &GyroTriangle, t1: CevianParam) -> f64 {
    let (e12, e13, e23) = t.gammas().minus_ones();
    let x = t1.0;
    e13 * (1.0 - x) + e23 * x - e12 * (1.0 - x) * x
}

/// Gamma factors and gyrodistances from A1, A2, A3 to the foot P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CevianDistances {
    pub gamma: [Gamma; 3],
    pub dist: [f64; 3],
}

pub fn cevian_distances(t: &GyroTriangle, t1: CevianParam) -> Result<CevianDistances> {
    let g = t.gammas();
    let s = t.params().s();
    let (g12, g13, g23) = (g.g12.value(), g.g13.value(), g.g23.value());
    let e12 = g.g12.minus_one();
    let x = t1.0;
    let y = 1.0 - x;
    let (e13, e23) = (g.g13.minus_one(), g.g23.minus_one());
    let m_p = (1.0 + 2.0 * e12 * y * x).sqrt();
    // γ − 1 with the cancellation against m_P done by hand
    let near = |u: f64| u * u * e12 * (2.0 + e12) / ((1.0 + u * e12 + m_p) * m_p);
    let c = y * e13 + x * e23;
    let gamma = [
        Gamma::from_minus_one(near(x)),
        Gamma::from_minus_one(near(y)),
        Gamma::from_minus_one((2.0 * c + c * c - 2.0 * e12 * x * y) / ((1.0 + c + m_p) * m_p)),
    ];
    let sq = [
        g.g12.sq_minus_one() * x * x / (e12 * x + 1.0).powi(2),
        g.g12.sq_minus_one() * y * y / (g12 * y + x).powi(2),
        1.0 - (2.0 * e12 * y * x + 1.0) / (g13 * y + g23 * x).powi(2),
    ];
    Ok(CevianDistances { gamma, dist: sq.map(|v| s * v.max(0.0).sqrt()) })
}

/// Gyrodistance from the foot P to Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootToCevian {
    /// γ_{PQ}·|PQ|
    pub gamma_dist: f64,
    /// |PQ| from the expanded D form
    pub dist: f64,
    /// |PQ| recovered from γ_{PQ}·|PQ|
    pub dist_from_gamma: f64,
}

pub fn foot_to_circumcevian_distance(t: &GyroTriangle, t1: CevianParam) -> Result<FootToCevian> {
    t.circum()?;
    let x = t1.interior()?;
    let y = 1.0 - x;
    let g = t.gammas();
    let s = t.params().s();
    let (g12, g13, g23) = (g.g12.value(), g.g13.value(), g.g23.value());
    let e12 = g.g12.minus_one();
    let num = e12 * e12
        * ((g13 * y + g23 * x).powi(2) - 2.0 * e12 * y * x - 1.0)
        * y * y * x * x;
    let mq = circumcevian_constant(t, t1);
    // γ² − 1
    let gsq = num / ((2.0 * e12 * y * x + 1.0) * mq * mq);
    let d = g13 - 1.0 + e12 * g13 * x - 2.0 * e12 * y * x - e12 * g23 * x * x
        + (g13 - g23) * (-g12 + e12 * y * y) * x;
    let gamma_dist = s * gsq.max(0.0).sqrt();
    let gamma = (1.0 + gsq.max(0.0)).sqrt();
    Ok(FootToCevian {
        gamma_dist,
        dist: s * (num / (d * d)).max(0.0).sqrt(),
        dist_from_gamma: gamma_dist / gamma,
    })
}

/// γ and gyrolength of the whole circumgyrocevian A3Q.
pub fn circumcevian_length(t: &GyroTriangle, t1: CevianParam) -> Result<(Gamma, f64)> {
    t.circum()?;
    let g = t.gammas();
    let s = t.params().s();
    let (e12, e13, e23) = g.minus_ones();
    let (g13, g23) = (g.g13.value(), g.g23.value());
    let x = t1.0;
    let y = 1.0 - x;
    let head = g13 * e13 * y + g23 * e23 * x - (e12 + (g13 - g23).powi(2)) * y * x;
    let gamma = Gamma::from_value(head / circumcevian_constant(t, t1));
    let sq = (g13 * g13 * y + g23 * g23 * x - 1.0 - (2.0 * e12 + (g23 - g13).powi(2)) * y * x)
        * (e13 + (g23 - g13) * x).powi(2)
        / (head * head);
    Ok((gamma, s * sq.max(0.0).sqrt()))
}

/// The common value of both chord powers through the foot P.
pub fn chord_power_closed_form(g12: Gamma, t1: f64, s: f64) -> f64 {
    let k = g12.minus_one() * (1.0 - t1) * t1;
    s * s * k / (2.0 * k + 1.0)
}

/// Gyropowers of P along chord A1A2 and chord A3Q, from the
/// cevian distance formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordPowers {
    pub through_a1a2: f64,
    pub through_a3q: f64,
    pub closed_form: f64,
}

pub fn chord_powers(t: &GyroTriangle, t1: CevianParam) -> Result<ChordPowers> {
    let x = t1.interior()?;
    let s = t.params().s();
    let cd = cevian_distances(t, t1)?;
    let pq = foot_to_circumcevian_distance(t, t1)?;
    let (gq, _) = circumcevian_length(t, t1)?;
    let gd = |g: &Gamma| s * g.sq_minus_one().sqrt();
    let g12 = t.gammas().g12;
    Ok(ChordPowers {
        through_a1a2: gd(&cd.gamma[0]) * gd(&cd.gamma[1]) / (g12.value() + 1.0),
        through_a3q: gd(&cd.gamma[2]) * pq.gamma_dist / (gq.value() + 1.0),
        closed_form: chord_power_closed_form(g12, x, s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::einstein::{gyromidpoint, ModelParams};

    fn t0(p: &ModelParams) -> GyroTriangle {
        GyroTriangle::new(
            BallPoint::new(vec![0.5, 0.0], p).unwrap(),
            BallPoint::new(vec![0.0, 0.5], p).unwrap(),
            BallPoint::new(vec![-0.5, 0.0], p).unwrap(),
            p,
        )
        .unwrap()
    }

    #[test]
    fn foot_endpoints_and_midpoint() {
        let p = ModelParams::unit();
        let t = t0(&p);
        assert_eq!(&cevian_foot(&t, CevianParam::new(0.0).unwrap()).unwrap(), &t.vertices()[0]);
        assert_eq!(&cevian_foot(&t, CevianParam::new(1.0).unwrap()).unwrap(), &t.vertices()[1]);
        let m = cevian_foot(&t, CevianParam::new(0.5).unwrap()).unwrap();
        let g = gyromidpoint(&t.vertices()[0], &t.vertices()[1], &p).unwrap();
        assert!(m.coords().iter().zip(g.coords()).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(CevianParam::new(1.5).is_err());
    }

    #[test]
    fn circumcevian_endpoints() {
        let p = ModelParams::unit();
        let t = t0(&p);
        let q0 = circumcevian(&t, CevianParam::new(0.0).unwrap()).unwrap();
        assert!(q0.projectively_eq(&Weights3::new(1.0, 0.0, 0.0), 0.0));
        let q1 = circumcevian(&t, CevianParam::new(1.0).unwrap()).unwrap();
        assert!(q1.projectively_eq(&Weights3::new(0.0, 1.0, 0.0), 0.0));
    }

    #[test]
    fn distances_vanish_at_endpoints() {
        let p = ModelParams::unit();
        let t = t0(&p);
        assert_eq!(cevian_distances(&t, CevianParam::new(0.0).unwrap()).unwrap().dist[0], 0.0);
        assert_eq!(cevian_distances(&t, CevianParam::new(1.0).unwrap()).unwrap().dist[1], 0.0);
        let (_, l0) = circumcevian_length(&t, CevianParam::new(0.0).unwrap()).unwrap();
        assert!((l0 - t.sides()[1]).abs() < 1e-14);
        let (_, l1) = circumcevian_length(&t, CevianParam::new(1.0).unwrap()).unwrap();
        assert!((l1 - t.sides()[2]).abs() < 1e-14);
    }

    #[test]
    fn power_identity_needs_interior_param() {
        let p = ModelParams::unit();
        let t = t0(&p);
        assert!(chord_powers(&t, CevianParam::new(0.0).unwrap()).is_err());
        assert!(foot_to_circumcevian_distance(&t, CevianParam::new(1.0).unwrap()).is_err());
    }

    #[test]
    fn relabel_puts_vertex_last() {
        let p = ModelParams::unit();
        let t = t0(&p);
        let (r, perm) = relabel_for_vertex(&t, 0).unwrap();
        assert_eq!(&r.vertices()[2], &t.vertices()[0]);
        assert_eq!(perm, [1, 2, 0]);
    }
}
