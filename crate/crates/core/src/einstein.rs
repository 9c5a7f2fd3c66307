//! Einstein addition in the s-ball and the primitive metric operations.
//!
//! Points are stored in Klein (Beltrami) coordinates, so gyrolines are
//! straight chords of the ball.

use crate::error::{GeomError, Result};

pub const DEFAULT_EPS_BOUNDARY: f64 = 1e-12;
pub const DEFAULT_TOL_REL: f64 = 1e-10;

/// Ball radius plus the numeric tolerance policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    s: f64,
    eps_boundary: f64,
    tol_rel: f64,
}

impl ModelParams {
    pub fn new(s: f64) -> Result<Self> {
        Self::with_tolerances(s, DEFAULT_EPS_BOUNDARY, DEFAULT_TOL_REL)
    }

    pub fn with_tolerances(s: f64, eps_boundary: f64, tol_rel: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(GeomError::InvalidParams(format!("s must be positive, got {s}")));
        }
        if !(eps_boundary > 0.0 && eps_boundary < 1e-6) {
            return Err(GeomError::InvalidParams(format!(
                "eps_boundary must lie in (0, 1e-6), got {eps_boundary}"
            )));
        }
        if !(tol_rel.is_finite() && tol_rel > 0.0) {
            return Err(GeomError::InvalidParams(format!("tol_rel must be positive, got {tol_rel}")));
        }
        Ok(Self { s, eps_boundary, tol_rel })
    }

    /// The unit ball, s = 1.
    pub fn unit() -> Self {
        Self { s: 1.0, eps_boundary: DEFAULT_EPS_BOUNDARY, tol_rel: DEFAULT_TOL_REL }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn eps_boundary(&self) -> f64 {
        self.eps_boundary
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    pub fn with_tol_rel(mut self, tol_rel: f64) -> Result<Self> {
        self = Self::with_tolerances(self.s, self.eps_boundary, tol_rel)?;
        Ok(self)
    }

    /// Largest admissible Euclidean norm.
    pub fn guard_radius(&self) -> f64 {
        self.s * (1.0 - self.eps_boundary)
    }
}

/// Lorentz gamma factor. Keeps γ−1 separately so small gyrodistances
/// do not lose their digits to cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma {
    value: f64,
    minus_one: f64,
}

impl Gamma {
    pub const ONE: Gamma = Gamma { value: 1.0, minus_one: 0.0 };

    /// From ‖v‖²/s² in [0, 1).
    pub fn from_ratio_sq(x: f64) -> Result<Self> {
        if !(x < 1.0) || x.is_nan() {
            return Err(GeomError::OutsideBall { radicand: 1.0 - x });
        }
        let x = x.max(0.0);
        let r = (1.0 - x).sqrt();
        Ok(Gamma { value: 1.0 / r, minus_one: x / (r * (1.0 + r)) })
    }

    /// From a value computed elsewhere; clamps tiny undershoot to 1.
    pub fn from_value(value: f64) -> Self {
        let value = value.max(1.0);
        Gamma { value, minus_one: value - 1.0 }
    }

    pub fn from_minus_one(minus_one: f64) -> Self {
        let minus_one = minus_one.max(0.0);
        Gamma { value: 1.0 + minus_one, minus_one }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// γ − 1, accurate when γ is close to 1.
    pub fn minus_one(&self) -> f64 {
        self.minus_one
    }

    /// γ²−1 = (γ−1)(γ+1).
    pub fn sq_minus_one(&self) -> f64 {
        self.minus_one * (self.value + 1.0)
    }

    /// The gyrolength ‖v‖ of a vector with this gamma factor.
    pub fn speed(&self, s: f64) -> f64 {
        s * self.sq_minus_one().sqrt() / self.value
    }
}

/// A point of the Klein ball model.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>, p: &ModelParams) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::DimensionMismatch { left: coords.len(), right: 2 });
        }
        let pt = BallPoint { coords };
        check_guard(&pt, p)?;
        Ok(pt)
    }

    pub fn origin(dim: usize) -> Self {
        BallPoint { coords: vec![0.0; dim] }
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        BallPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.coords, &self.coords)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// ⊖v, which is plain negation in this model.
    pub fn neg(&self) -> BallPoint {
        BallPoint { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_guard(v: &BallPoint, p: &ModelParams) -> Result<()> {
    let n = v.norm();
    if !n.is_finite() || v.coords.iter().any(|c| !c.is_finite()) || n >= p.guard_radius() {
        return Err(GeomError::BoundaryViolation { norm: n, limit: p.guard_radius() });
    }
    Ok(())
}

fn check_dims(u: &BallPoint, v: &BallPoint) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(GeomError::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    Ok(())
}

pub fn gamma_factor(v: &BallPoint, p: &ModelParams) -> Result<Gamma> {
    check_guard(v, p)?;
    Gamma::from_ratio_sq(v.norm_sq() / (p.s * p.s))
}

/// u ⊕ v without the guard checks on the inputs.
pub(crate) fn add_raw(u: &[f64], v: &[f64], s: f64) -> Vec<f64> {
    let s2 = s * s;
    let uv = dot(u, v) / s2;
    let gu = Gamma::from_ratio_sq(dot(u, u) / s2).unwrap_or(Gamma::ONE);
    let k = gu.value / (1.0 + gu.value) * uv;
    let inv_gu = 1.0 / gu.value;
    let den = 1.0 + uv;
    u.iter()
        .zip(v)
        .map(|(a, b)| (a + b * inv_gu + k * a) / den)
        .collect()
}

/// Einstein addition u ⊕ v.
pub fn einstein_add(u: &BallPoint, v: &BallPoint, p: &ModelParams) -> Result<BallPoint> {
    check_dims(u, v)?;
    check_guard(u, p)?;
    check_guard(v, p)?;
    Ok(BallPoint::from_vec_unchecked(add_raw(&u.coords, &v.coords, p.s)))
}

/// The gyrovector ⊖a ⊕ b pointing from a to b.
pub fn gyrovector(a: &BallPoint, b: &BallPoint, p: &ModelParams) -> Result<BallPoint> {
    if a == b {
        check_guard(a, p)?;
        return Ok(BallPoint::origin(a.dim()));
    }
    einstein_add(&a.neg(), b, p)
}

/// r ⊗ v by rapidity scaling.
pub fn scalar_mul(r: f64, v: &BallPoint, p: &ModelParams) -> Result<BallPoint> {
    check_guard(v, p)?;
    if !r.is_finite() {
        return Err(GeomError::ParamOutOfRange { value: r, range: "finite reals" });
    }
    let n = v.norm();
    if n == 0.0 {
        return Ok(v.clone());
    }
    let m = p.s * (r * (n / p.s).atanh()).tanh();
    Ok(BallPoint::from_vec_unchecked(v.coords.iter().map(|c| m * c / n).collect()))
}

/// Gyrodistance ‖⊖A⊕B‖ together with its gamma factor.
pub fn gyrodistance(a: &BallPoint, b: &BallPoint, p: &ModelParams) -> Result<(f64, Gamma)> {
    let w = gyrovector(a, b, p)?;
    let g = Gamma::from_ratio_sq(w.norm_sq() / (p.s * p.s))?;
    Ok((w.norm(), g))
}

pub fn gyromidpoint(a: &BallPoint, b: &BallPoint, p: &ModelParams) -> Result<BallPoint> {
    let ab = gyrovector(a, b, p)?;
    let half = scalar_mul(0.5, &ab, p)?;
    einstein_add(a, &half, p)
}

/// Angle between unit vectors, accurate near 0 and π.
pub(crate) fn unit_angle(u: &[f64], w: &[f64]) -> f64 {
    let nu = dot(u, u).sqrt();
    let nw = dot(w, w).sqrt();
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (a, b) in u.iter().zip(w) {
        let (x, y) = (a / nu, b / nw);
        diff += (x - y) * (x - y);
        sum += (x + y) * (x + y);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Gyroangle at `vertex` between the rays to `b` and `c`.
pub fn gyroangle(vertex: &BallPoint, b: &BallPoint, c: &BallPoint, p: &ModelParams) -> Result<f64> {
    check_dims(vertex, b)?;
    check_dims(vertex, c)?;
    let u = gyrovector(vertex, b, p)?;
    let w = gyrovector(vertex, c, p)?;
    if u.norm() == 0.0 || w.norm() == 0.0 {
        return Err(GeomError::DegenerateRay);
    }
    Ok(unit_angle(&u.coords, &w.coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> BallPoint {
        BallPoint::new(c.to_vec(), &ModelParams::unit()).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let p = ModelParams::unit();
        assert_eq!(gamma_factor(&pt(&[0.0, 0.0]), &p).unwrap().value(), 1.0);
        assert!((gamma_factor(&pt(&[0.6, 0.0]), &p).unwrap().value() - 1.25).abs() < 1e-15);
        let near = BallPoint::new(vec![0.999999999999, 0.0], &p);
        assert!(matches!(near, Err(GeomError::BoundaryViolation { .. })));
    }

    #[test]
    fn addition_examples() {
        let p = ModelParams::unit();
        let r = einstein_add(&pt(&[0.5, 0.0]), &pt(&[0.5, 0.0]), &p).unwrap();
        assert!((r.coords()[0] - 0.8).abs() < 1e-15 && r.coords()[1] == 0.0);
        let u = pt(&[0.3, -0.2]);
        assert_eq!(einstein_add(&u, &pt(&[0.0, 0.0]), &p).unwrap(), u);
        let r = einstein_add(&pt(&[0.3, 0.0]), &pt(&[0.0, 0.4]), &p).unwrap();
        let gu = 1.0 / (1.0f64 - 0.09).sqrt();
        assert!((r.coords()[0] - 0.3).abs() < 1e-15);
        assert!((r.coords()[1] - 0.4 / gu).abs() < 1e-15);
        assert!((r.coords()[1] - 0.381575).abs() < 1e-6);
    }

    #[test]
    fn dimension_mismatch() {
        let p = ModelParams::unit();
        let a = pt(&[0.1, 0.0]);
        let b = pt(&[0.1, 0.0, 0.2]);
        assert!(matches!(einstein_add(&a, &b, &p), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn scalar_examples() {
        let p = ModelParams::unit();
        let v = pt(&[0.3, 0.4]);
        let one = scalar_mul(1.0, &v, &p).unwrap();
        assert!((one.coords()[0] - 0.3).abs() < 1e-15 && (one.coords()[1] - 0.4).abs() < 1e-15);
        let two = scalar_mul(2.0, &pt(&[0.5, 0.0]), &p).unwrap();
        assert!((two.coords()[0] - 0.8).abs() < 1e-15);
        let half = scalar_mul(0.5, &pt(&[0.8, 0.0]), &p).unwrap();
        assert!((half.coords()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn half_magnitude_identity() {
        let p = ModelParams::new(2.0).unwrap();
        let a = BallPoint::new(vec![0.9, -1.1], &p).unwrap();
        let h = scalar_mul(0.5, &a, &p).unwrap();
        let ga = gamma_factor(&a, &p).unwrap().value();
        let gh = gamma_factor(&h, &p).unwrap().value();
        let lhs = gh * h.norm();
        let rhs = ga * a.norm() / (2f64.sqrt() * (1.0 + ga).sqrt());
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn distance_examples() {
        let p = ModelParams::unit();
        let a = pt(&[0.5, 0.0]);
        let (d, g) = gyrodistance(&a, &a, &p).unwrap();
        assert_eq!((d, g.value()), (0.0, 1.0));
        let (d, _) = gyrodistance(&a, &pt(&[-0.5, 0.0]), &p).unwrap();
        assert!((d - 0.8).abs() < 1e-15);
    }

    #[test]
    fn midpoint_examples() {
        let p = ModelParams::unit();
        let a = pt(&[0.2, 0.7]);
        let m = gyromidpoint(&a, &a, &p).unwrap();
        assert!(m.coords().iter().zip(a.coords()).all(|(x, y)| (x - y).abs() < 1e-15));
        let m = gyromidpoint(&pt(&[0.5, 0.0]), &pt(&[-0.5, 0.0]), &p).unwrap();
        assert!(m.norm() < 1e-15);
    }

    #[test]
    fn angle_examples() {
        let p = ModelParams::unit();
        let o = pt(&[0.0, 0.0]);
        let ang = gyroangle(&o, &pt(&[0.3, 0.0]), &pt(&[0.0, 0.4]), &p).unwrap();
        assert!((ang - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(gyroangle(&o, &o, &pt(&[0.1, 0.0]), &p), Err(GeomError::DegenerateRay));
    }

    #[test]
    fn right_cancellation_fails() {
        let p = ModelParams::unit();
        let u = pt(&[0.6, 0.1]);
        let v = pt(&[-0.2, 0.7]);
        let uv = einstein_add(&u, &v, &p).unwrap();
        let back = einstein_add(&uv, &v.neg(), &p).unwrap();
        let err: f64 = back.coords().iter().zip(u.coords()).map(|(a, b)| (a - b).abs()).sum();
        assert!(err > 1e-3);
    }

    #[test]
    fn gamma_minus_one_is_accurate() {
        let g = Gamma::from_ratio_sq(1e-20).unwrap();
        assert!((g.minus_one() - 0.5e-20).abs() < 1e-35);
    }
}
