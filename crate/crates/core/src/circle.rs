//! Gyrocircles anchored on a reference gyrotriangle: parametrization,
//! classification, secants, tangents and the gyropower of a point.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::einstein::{add_raw, gyroangle, gyrodistance, BallPoint, Gamma, ModelParams};
use crate::error::{GeomError, Result};
use crate::gyrobary::{evaluate, rep_constant, Weights3};
use crate::triangle::{plane_coords, GyroTriangle};

#[derive(Debug, Clone, PartialEq)]
pub struct GyroCircle {
    center: BallPoint,
    radius: f64,
}

impl GyroCircle {
    pub fn new(center: BallPoint, radius: f64, p: &ModelParams) -> Result<Self> {
        if !(radius > 0.0 && radius < p.s()) {
            return Err(GeomError::ParamOutOfRange { value: radius, range: "(0, s)" });
        }
        let center = BallPoint::new(center.coords().to_vec(), p)?;
        Ok(GyroCircle { center, radius })
    }

    pub fn center(&self) -> &BallPoint {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Point O ⊕ r(cos θ e1 + sin θ e2) for an orthonormal pair e1, e2.
pub fn circle_point_in_plane(c: &GyroCircle, theta: f64, e1: &[f64], e2: &[f64], p: &ModelParams) -> Result<BallPoint> {
    if e1.len() != c.center.dim() || e2.len() != c.center.dim() {
        return Err(GeomError::DimensionMismatch { left: c.center.dim(), right: e1.len().min(e2.len()) });
    }
    let (sn, cs) = theta.sin_cos();
    let v: Vec<f64> = e1.iter().zip(e2).map(|(a, b)| c.radius * (cs * a + sn * b)).collect();
    let v = BallPoint::new(v, p)?;
    let out = add_raw(c.center.coords(), v.coords(), p.s());
    BallPoint::new(out, p)
}

pub fn circle_point(c: &GyroCircle, theta: f64, p: &ModelParams) -> Result<BallPoint> {
    if c.center.dim() != 2 {
        return Err(GeomError::DimensionMismatch { left: c.center.dim(), right: 2 });
    }
    circle_point_in_plane(c, theta, &[1.0, 0.0], &[0.0, 1.0], p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Interior,
    On,
    Exterior,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Interior => "interior",
            Classification::On => "on",
            Classification::Exterior => "exterior",
        }
    }
}

/// A point of the circumgyrocircle by line parameter t (±∞ allowed)
/// or by angle θ ∈ [0, 2π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleParamPoint {
    Line(f64),
    Theta(f64),
}

/// Result of the tangency construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tangency {
    Two { plus: Weights3, minus: Weights3 },
    Single(Weights3),
    None,
}

fn e(t: &GyroTriangle) -> (f64, f64, f64) {
    t.gammas().minus_ones()
}

/// K = Σ_{i<j} m_i m_j (γ_ij − 1).
pub fn k_indicator(w: &Weights3, t: &GyroTriangle) -> f64 {
    let (e12, e13, e23) = e(t);
    let [m1, m2, m3] = w.0;
    m1 * m2 * e12 + m1 * m3 * e13 + m2 * m3 * e23
}

/// Scale for K used by the on-circle tolerance.
pub fn k_scale(w: &Weights3, t: &GyroTriangle) -> f64 {
    let (e12, e13, e23) = e(t);
    let [m1, m2, m3] = w.0;
    (m1 * m2).abs() * e12 + (m1 * m3).abs() * e13 + (m2 * m3).abs() * e23
}

/// The gyrotrigonometric indicator; same sign as K.
pub fn t_indicator(w: &Weights3, t: &GyroTriangle) -> f64 {
    let a = t.alpha();
    let h = t.defect() / 2.0;
    let c = |k: usize| a[k].sin() * (a[k] + h).sin();
    let [m1, m2, m3] = w.0;
    m1 * m2 * c(2) + m1 * m3 * c(1) + m2 * m3 * c(0)
}

fn is_on(w: &Weights3, t: &GyroTriangle) -> bool {
    k_indicator(w, t).abs() <= t.params().tol_rel() * k_scale(w, t)
}

pub fn classify(w: &Weights3, t: &GyroTriangle) -> Result<Classification> {
    t.circum()?;
    let rc = rep_constant(&t.rep(*w)?, t.params())?;
    if rc.radicand <= 0.0 {
        return Err(GeomError::OutsideBall { radicand: rc.radicand });
    }
    Ok(if is_on(w, t) {
        Classification::On
    } else if rc.k > 0.0 {
        Classification::Interior
    } else {
        Classification::Exterior
    })
}

/// d = R·√(1 − 2s²K/(M²γ_R²R²)).
pub fn dist_to_circumcenter(w: &Weights3, t: &GyroTriangle) -> Result<f64> {
    let c = t.circum()?;
    let rc = rep_constant(&t.rep(*w)?, t.params())?;
    if rc.radicand <= 0.0 {
        return Err(GeomError::OutsideBall { radicand: rc.radicand });
    }
    if rc.sum == 0.0 {
        return Err(GeomError::ZeroDenominator);
    }
    // γ_R²R² = s²(γ_R²−1) = s²H3/(D3−H3)
    let (_, h3) = t.gammas().d3_h3();
    let dmh = t.gammas().d3_minus_h3();
    let ratio = 2.0 * rc.k * dmh / (rc.sum * rc.sum * h3);
    Ok(c.radius * (1.0 - ratio).max(0.0).sqrt())
}

pub fn circum_param(t: &GyroTriangle, q: CircleParamPoint) -> Result<Weights3> {
    t.circum()?;
    let (e12, e13, e23) = e(t);
    match q {
        CircleParamPoint::Line(x) if x.is_infinite() => Ok(Weights3::new(0.0, 1.0, 0.0)),
        CircleParamPoint::Line(x) => {
            if x.is_nan() {
                return Err(GeomError::ParamOutOfRange { value: x, range: "extended reals" });
            }
            Ok(Weights3::new(-e23 * x, e12 * x * x + e13 * x, e12 * x + e13))
        }
        CircleParamPoint::Theta(th) => {
            if !(0.0..=2.0 * PI).contains(&th) {
                return Err(GeomError::ParamOutOfRange { value: th, range: "[0, 2pi]" });
            }
            let (sn, cs) = th.sin_cos();
            Ok(Weights3::new(
                -e23 * sn,
                e13 * sn + e12 * (1.0 - cs),
                e12 * sn + e13 * (1.0 + cs),
            ))
        }
    }
}

/// The E0, E1, E2 coefficients of the line–circle intersection.
pub fn intersection_coefficients(t: &GyroTriangle, wp: &Weights3, line_t: f64) -> (f64, f64, f64) {
    let (e12, e13, e23) = e(t);
    let [m1, m2, m3] = wp.0;
    if line_t.is_infinite() {
        // divide through by t and let t → ∞
        let sg = line_t.signum();
        return (-m3 * sg, m1 * e12 * sg, (m1 * e12 + m3 * e23) * sg);
    }
    let e0 = m2 - m3 * line_t;
    let e1 = m1 * e13 + m2 * e23 + m1 * e12 * line_t;
    let e2 = m1 * e13 + m1 * e12 * line_t + m3 * e23 * line_t;
    (e0, e1, e2)
}

/// The second point where the gyroline through P and P′(t) meets the
/// circumgyrocircle.
pub fn second_intersection(t: &GyroTriangle, wp: &Weights3, line_t: f64) -> Result<Weights3> {
    t.circum()?;
    if line_t.is_nan() {
        return Err(GeomError::ParamOutOfRange { value: line_t, range: "extended reals" });
    }
    let (e12, e13, _) = e(t);
    let (e0, e1, e2) = intersection_coefficients(t, wp, line_t);
    let out = Weights3::new(e1 * e2, e0 * e1 * e13, -e0 * e2 * e12);
    let emax = e12.max(e13).max(t.gammas().g23.minus_one());
    let tscale = if line_t.is_finite() { 1.0 + line_t.abs() } else { 1.0 };
    let scale = (wp.max_abs() * emax * tscale).powi(2) * emax;
    if out.max_abs() <= 1e-14 * scale {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(out)
}

fn tangency_raw(t: &GyroTriangle, wp: &Weights3) -> (Weights3, Weights3) {
    let (e12, e13, e23) = e(t);
    let [m1, _, m3] = wp.0;
    let d2 = e12 * e13 * e23;
    let root = (-k_indicator(wp, t) * d2).max(0.0).sqrt();
    let f0 = m1 * e12 + m3 * e23;
    let branch = |sg: f64| {
        let f1 = m1 * e12 * e13 + sg * root;
        let f2 = -m3 * e13 * e23 + sg * root;
        Weights3::new(f0 * f1 * e23, f1 * f2, -f0 * f2 * e12)
    };
    (branch(1.0), branch(-1.0))
}

/// |F0| relative to its terms; the construction loses digits as it shrinks.
fn f0_condition(t: &GyroTriangle, wp: &Weights3) -> f64 {
    let (e12, _, e23) = e(t);
    let [m1, _, m3] = wp.0;
    let terms = (m1 * e12).abs() + (m3 * e23).abs();
    if terms == 0.0 {
        0.0
    } else {
        (m1 * e12 + m3 * e23).abs() / terms
    }
}

/// Frame for the tangency construction. The base frame unless F0 nearly
/// vanishes there, when both branches collapse toward A2; then the cyclic
/// relabeling where F0 is best conditioned.
fn tangency_frame(t: &GyroTriangle, wp: &Weights3) -> Result<Option<[usize; 3]>> {
    if f0_condition(t, wp) >= 1e-3 {
        return Ok(None);
    }
    let mut best: Option<(f64, [usize; 3])> = None;
    for perm in [[1, 2, 0], [2, 0, 1]] {
        let c = f0_condition(&t.relabeled(perm)?, &wp.permuted(perm));
        if best.map_or(true, |(b, _)| c > b) {
            best = Some((c, perm));
        }
    }
    let (c, perm) = best.expect("two candidate frames");
    if c == 0.0 {
        return Err(GeomError::DegenerateConfiguration("tangency construction collapsed in every frame".into()));
    }
    Ok(Some(perm))
}

/// Tangency points of the gyrotangents from P to the circumgyrocircle.
pub fn tangency_points(t: &GyroTriangle, wp: &Weights3) -> Result<Tangency> {
    t.circum()?;
    if is_on(wp, t) {
        return Ok(Tangency::Single(*wp));
    }
    if k_indicator(wp, t) > 0.0 {
        return Ok(Tangency::None);
    }
    Ok(match tangency_frame(t, wp)? {
        None => {
            let (plus, minus) = tangency_raw(t, wp);
            Tangency::Two { plus, minus }
        }
        Some(perm) => {
            let (plus, minus) = tangency_raw(&t.relabeled(perm)?, &wp.permuted(perm));
            Tangency::Two { plus: unpermute(&plus, perm), minus: unpermute(&minus, perm) }
        }
    })
}

fn unpermute(w: &Weights3, perm: [usize; 3]) -> Weights3 {
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[perm[k]] = w.0[k];
    }
    Weights3(out)
}

fn tangency_constants_raw(t: &GyroTriangle, wp: &Weights3) -> (f64, f64) {
    let (e12, e13, e23) = e(t);
    let [m1, m2, m3] = wp.0;
    let d1 = k_indicator(wp, t);
    let d2 = e12 * e13 * e23;
    let root = (-d1 * d2).max(0.0).sqrt();
    let e1 = (m1 - m2 + m3) * (m1 * e12 + m3 * e23) - 2.0 * m1 * m3 * e13;
    let e2 = -m1 * e12 * e12 + m3 * e23 * e23 + m1 * e12 * e13 - m3 * e13 * e23 + (m1 - m3) * e12 * e23;
    (d2 * e1 + root * e2, d2 * e1 - root * e2)
}

/// Representation constants of the two tangency points, in the same
/// scaling as the weights returned by `tangency_points`.
pub fn tangency_constants(t: &GyroTriangle, wp: &Weights3) -> Result<(f64, f64)> {
    t.circum()?;
    if k_indicator(wp, t) > 0.0 {
        return Err(GeomError::InteriorPoint);
    }
    Ok(match tangency_frame(t, wp)? {
        None => tangency_constants_raw(t, wp),
        Some(perm) => tangency_constants_raw(&t.relabeled(perm)?, &wp.permuted(perm)),
    })
}

/// Common gyrolength of the two gyrotangent segments from P.
pub fn tangent_length(t: &GyroTriangle, wp: &Weights3) -> Result<(Gamma, f64)> {
    t.circum()?;
    let rc = rep_constant(&t.rep(*wp)?, t.params())?;
    if rc.radicand <= 0.0 {
        return Err(GeomError::OutsideBall { radicand: rc.radicand });
    }
    if is_on(wp, t) {
        return Ok((Gamma::ONE, 0.0));
    }
    if rc.k > 0.0 {
        return Err(GeomError::InteriorPoint);
    }
    let m = rc.sum.abs();
    let mp = rc.radicand.sqrt();
    // γ − 1 = (M − m_P)/m_P = −2K/(m_P(M + m_P))
    let gamma = Gamma::from_minus_one(-2.0 * rc.k / (mp * (m + mp)));
    Ok((gamma, t.params().s() * (-2.0 * rc.k).sqrt() / m))
}

/// γ_{PX}|PX| · γ_{PY}|PY| / (γ_{XY} + 1).
pub fn gyropower(pt: &BallPoint, x: &BallPoint, y: &BallPoint, p: &ModelParams) -> Result<f64> {
    if x == y {
        return Err(GeomError::CoincidentPoints);
    }
    let (dx, gx) = gyrodistance(pt, x, p)?;
    let (dy, gy) = gyrodistance(pt, y, p)?;
    let (dxy, gxy) = gyrodistance(x, y, p)?;
    if dxy == 0.0 {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(gx.value() * dx * gy.value() * dy / (gxy.value() + 1.0))
}

/// Inscribed gyroangle theorem, first form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedI {
    /// gyroangle at A3
    pub theta: f64,
    /// half the gyrocentral angle, from the right-angled construction
    pub phi: f64,
    /// half of the measured gyroangle A1 O A2
    pub phi_measured: f64,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn inscribed_angle_i(t: &GyroTriangle) -> Result<InscribedI> {
    let c = t.circum()?;
    let p = t.params();
    let g = t.gammas();
    let theta = t.alpha()[2];
    let ga12 = g.g12.sq_minus_one().sqrt();
    let gr_r = c.gamma_r.sq_minus_one().sqrt();
    let sin_phi = (ga12 / (2f64.sqrt() * (1.0 + g.g12.value()).sqrt() * gr_r)).min(1.0);
    let phi = sin_phi.asin();
    let [a1, a2, _] = t.vertices();
    let phi_measured = gyroangle(&c.center, a1, a2, p)? / 2.0;
    let rhs = 2.0 * c.gamma_r.value() * sin_phi / ((g.g13.value() + 1.0) * (g.g23.value() + 1.0)).sqrt();
    Ok(InscribedI { theta, phi, phi_measured, lhs: theta.sin(), rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InscribedCase {
    /// A3 and O on the same side of line A1A2
    SameSide,
    /// A3 and O on opposite sides
    OppositeSides,
    /// O on the line: A1A2 is a gyrodiameter
    Diameter,
}

/// Inscribed gyroangle theorem, second form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedII {
    /// θ + δ_{A1A2A3}/2
    pub lhs: f64,
    /// φ + δ_{A1A2O}/2
    pub rhs: f64,
    pub case: InscribedCase,
    /// Residual of the case identity.
    pub residual: f64,
}

const SIDE_TOL: f64 = 1e-12;

fn side_of(t: &GyroTriangle, x: &BallPoint) -> (f64, f64) {
    let [_, a2, _] = t.vertices();
    let b = plane_coords(t, a2);
    let q = plane_coords(t, x);
    let cross = b[0] * q[1] - b[1] * q[0];
    let scale = (b[0] * b[0] + b[1] * b[1]).sqrt() * (q[0] * q[0] + q[1] * q[1]).sqrt();
    (cross, scale)
}

pub fn inscribed_angle_ii(t: &GyroTriangle) -> Result<InscribedII> {
    let c = t.circum()?;
    let p = t.params();
    let [a1, a2, a3] = t.vertices();
    let o = &c.center;
    let theta = t.alpha()[2];
    let lhs = theta + t.defect() / 2.0;

    let (s3, sc3) = side_of(t, a3);
    if s3.abs() <= SIDE_TOL * sc3 {
        return Err(GeomError::SideUndetermined);
    }
    let (so, sco) = side_of(t, o);
    if so.abs() <= SIDE_TOL * sco {
        return Ok(InscribedII { lhs, rhs: FRAC_PI_2, case: InscribedCase::Diameter, residual: lhs - FRAC_PI_2 });
    }
    let central = gyroangle(o, a1, a2, p)?;
    let b1 = gyroangle(a1, a2, o, p)?;
    let b2 = gyroangle(a2, a1, o, p)?;
    let defect_o = PI - central - b1 - b2;
    let rhs = central / 2.0 + defect_o / 2.0;
    if s3.signum() == so.signum() {
        Ok(InscribedII { lhs, rhs, case: InscribedCase::SameSide, residual: lhs - rhs })
    } else {
        Ok(InscribedII { lhs, rhs, case: InscribedCase::OppositeSides, residual: lhs - (PI - rhs) })
    }
}

/// Evaluates weights over the triangle frame to a point.
pub fn point_of(t: &GyroTriangle, w: &Weights3) -> Result<BallPoint> {
    evaluate(&t.rep(*w)?, t.params())
}
