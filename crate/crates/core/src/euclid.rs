//! Euclidean counterparts, written from scratch so the s → ∞ limit
//! tests compare two independent computations.

use crate::circle::{CircleParamPoint, Classification, Tangency};
use crate::einstein::{gyrodistance, BallPoint, ModelParams};
use crate::error::{GeomError, Result};
use crate::gyrobary::Weights3;

const COLLINEAR_REL_AREA: f64 = 1e-12;
const ON_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct EuclidPoint {
    coords: Vec<f64>,
}

impl EuclidPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::DegenerateConfiguration("non-finite coordinate".into()));
        }
        Ok(EuclidPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn sub(&self, o: &EuclidPoint) -> Vec<f64> {
        self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect()
    }

    pub fn dist(&self, o: &EuclidPoint) -> f64 {
        norm2(&self.sub(o)).sqrt()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn dotp(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// s²(γ−1) for the gyrovector ⊖A⊕B in the s-ball; tends to |AB|²/2.
pub fn limit_gap(a: &EuclidPoint, b: &EuclidPoint, s: f64) -> Result<f64> {
    let (_, g) = gap_gamma(a, b, s)?;
    Ok(s * s * g.minus_one())
}

/// s²(γ²−1); tends to |AB|².
pub fn limit_gap_sq(a: &EuclidPoint, b: &EuclidPoint, s: f64) -> Result<f64> {
    let (_, g) = gap_gamma(a, b, s)?;
    Ok(s * s * g.sq_minus_one())
}

fn gap_gamma(a: &EuclidPoint, b: &EuclidPoint, s: f64) -> Result<(f64, crate::einstein::Gamma)> {
    let p = ModelParams::new(s)?;
    let pa = BallPoint::new(a.coords.clone(), &p)?;
    let pb = BallPoint::new(b.coords.clone(), &p)?;
    gyrodistance(&pa, &pb, &p)
}

/// Squared sides (a12², a13², a23²).
fn sq_sides(a: &[&EuclidPoint; 3]) -> [f64; 3] {
    [norm2(&a[1].sub(a[0])), norm2(&a[2].sub(a[0])), norm2(&a[2].sub(a[1]))]
}

fn check_triangle(a: &[&EuclidPoint; 3]) -> Result<()> {
    let d = a[0].coords.len();
    if a.iter().any(|p| p.coords.len() != d) {
        return Err(GeomError::DimensionMismatch { left: d, right: a[1].coords.len().max(a[2].coords.len()) });
    }
    let u = a[1].sub(a[0]);
    let v = a[2].sub(a[0]);
    let sq = sq_sides(a);
    let longest = sq.iter().cloned().fold(0.0, f64::max);
    let area2 = (norm2(&u) * norm2(&v) - dotp(&u, &v).powi(2)).max(0.0).sqrt();
    if longest == 0.0 || area2 <= COLLINEAR_REL_AREA * longest {
        return Err(GeomError::CollinearPoints);
    }
    Ok(())
}

fn angle_at(v: &EuclidPoint, b: &EuclidPoint, c: &EuclidPoint) -> f64 {
    let u = b.sub(v);
    let w = c.sub(v);
    let (nu, nw) = (norm2(&u).sqrt(), norm2(&w).sqrt());
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (x, y) in u.iter().zip(&w) {
        diff += (x / nu - y / nw).powi(2);
        sum += (x / nu + y / nw).powi(2);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Triangle angles (α1, α2, α3).
pub fn angles_euc(a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<[f64; 3]> {
    check_triangle(&[a1, a2, a3])?;
    Ok([angle_at(a1, a2, a3), angle_at(a2, a1, a3), angle_at(a3, a1, a2)])
}

/// Barycentric evaluation Σ m_k A_k / Σ m_k.
pub fn evaluate_euc(w: &Weights3, a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<EuclidPoint> {
    let m = w.sum();
    if m == 0.0 {
        return Err(GeomError::ZeroDenominator);
    }
    let c = (0..a1.coords.len())
        .map(|i| (w.0[0] * a1.coords[i] + w.0[1] * a2.coords[i] + w.0[2] * a3.coords[i]) / m)
        .collect();
    Ok(EuclidPoint { coords: c })
}

/// O = Σ sin 2α_k A_k / Σ sin 2α_k.
pub fn circumcenter_euc(a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<EuclidPoint> {
    let al = angles_euc(a1, a2, a3)?;
    evaluate_euc(&Weights3(al.map(|a| (2.0 * a).sin())), a1, a2, a3)
}

pub fn circumradius_euc(a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<f64> {
    check_triangle(&[a1, a2, a3])?;
    let [x, y, z] = sq_sides(&[a1, a2, a3]);
    let den = 2.0 * (x * y + x * z + y * z) - (x * x + y * y + z * z);
    Ok((x * y * z / den).sqrt())
}

/// K = Σ_{i<j} m_i m_j a_ij².
pub fn k_euc(w: &Weights3, a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> f64 {
    let [x, y, z] = sq_sides(&[a1, a2, a3]);
    let [m1, m2, m3] = w.0;
    m1 * m2 * x + m1 * m3 * y + m2 * m3 * z
}

/// Σ m_i m_j sin² of the angle opposite side ij; same sign as K.
pub fn t_euc(w: &Weights3, a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<f64> {
    let al = angles_euc(a1, a2, a3)?;
    let s2 = al.map(|a| a.sin().powi(2));
    let [m1, m2, m3] = w.0;
    Ok(m1 * m2 * s2[2] + m1 * m3 * s2[1] + m2 * m3 * s2[0])
}

pub fn classify_euc(w: &Weights3, a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<Classification> {
    check_triangle(&[a1, a2, a3])?;
    if w.sum() == 0.0 {
        return Err(GeomError::ZeroDenominator);
    }
    let k = k_euc(w, a1, a2, a3);
    let [x, y, z] = sq_sides(&[a1, a2, a3]);
    let [m1, m2, m3] = w.0;
    let scale = (m1 * m2).abs() * x + (m1 * m3).abs() * y + (m2 * m3).abs() * z;
    Ok(if k.abs() <= ON_TOL * scale {
        Classification::On
    } else if k > 0.0 {
        Classification::Interior
    } else {
        Classification::Exterior
    })
}

/// d = R √(1 − K/(M²R²)).
pub fn dist_to_circumcenter_euc(w: &Weights3, a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint) -> Result<f64> {
    let r = circumradius_euc(a1, a2, a3)?;
    let m = w.sum();
    if m == 0.0 {
        return Err(GeomError::ZeroDenominator);
    }
    let k = k_euc(w, a1, a2, a3);
    Ok(r * (1.0 - k / (m * m * r * r)).max(0.0).sqrt())
}

pub fn circum_param_euc(a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint, q: CircleParamPoint) -> Result<Weights3> {
    let al = angles_euc(a1, a2, a3)?;
    let [s1, s2, s3] = al.map(|a| a.sin().powi(2));
    match q {
        CircleParamPoint::Line(t) if t.is_infinite() => Ok(Weights3::new(0.0, 1.0, 0.0)),
        CircleParamPoint::Line(t) => Ok(Weights3::new(-t * s1, t * s2 + t * t * s3, s2 + t * s3)),
        CircleParamPoint::Theta(th) => {
            if !(0.0..=2.0 * std::f64::consts::PI).contains(&th) {
                return Err(GeomError::ParamOutOfRange { value: th, range: "[0, 2pi]" });
            }
            let (sn, cs) = th.sin_cos();
            Ok(Weights3::new(-s1 * sn, s2 * sn + s3 * (1.0 - cs), s3 * sn + s2 * (1.0 + cs)))
        }
    }
}

fn tangency_raw_euc(w: &Weights3, sq: [f64; 3]) -> (Weights3, Weights3) {
    let [x12, x13, x23] = sq;
    let [m1, m2, m3] = w.0;
    let k = m1 * m2 * x12 + m1 * m3 * x13 + m2 * m3 * x23;
    let root = (-k * x12 * x13 * x23).max(0.0).sqrt();
    let f0 = m1 * x12 + m3 * x23;
    let branch = |sg: f64| {
        let f1 = m1 * x12 * x13 + sg * root;
        let f2 = -m3 * x13 * x23 + sg * root;
        Weights3::new(f0 * f1 * x23, f1 * f2, -f0 * f2 * x12)
    };
    (branch(1.0), branch(-1.0))
}

/// |F0| relative to its terms.
fn f0_condition_euc(w: &Weights3, sq: [f64; 3]) -> f64 {
    let (a, b) = (w.0[0] * sq[0], w.0[2] * sq[2]);
    if a == 0.0 && b == 0.0 {
        0.0
    } else {
        (a + b).abs() / (a.abs() + b.abs())
    }
}

/// Tangency points from P and the common tangent length (when P is
/// not interior).
pub fn tangency_points_euc(
    w: &Weights3,
    a1: &EuclidPoint,
    a2: &EuclidPoint,
    a3: &EuclidPoint,
) -> Result<(Tangency, Option<f64>)> {
    let pts = [a1, a2, a3];
    let class = classify_euc(w, a1, a2, a3)?;
    let k = k_euc(w, a1, a2, a3);
    let m = w.sum().abs();
    match class {
        Classification::On => return Ok((Tangency::Single(*w), Some(0.0))),
        Classification::Interior => return Ok((Tangency::None, None)),
        Classification::Exterior => {}
    }
    let length = Some((-k).sqrt() / m);
    // base frame unless F0 nearly vanishes there
    let frame = |perm: [usize; 3]| {
        let sq = sq_sides(&[pts[perm[0]], pts[perm[1]], pts[perm[2]]]);
        let wr = w.permuted(perm);
        (f0_condition_euc(&wr, sq), wr, sq)
    };
    let mut best = ([0, 1, 2], frame([0, 1, 2]));
    if best.1 .0 < 1e-3 {
        for perm in [[1, 2, 0], [2, 0, 1]] {
            let f = frame(perm);
            if f.0 > best.1 .0 {
                best = (perm, f);
            }
        }
    }
    let (perm, (c, wr, sq)) = best;
    if c == 0.0 {
        return Err(GeomError::DegenerateConfiguration("tangency construction collapsed in every frame".into()));
    }
    let (plus, minus) = tangency_raw_euc(&wr, sq);
    let back = |v: &Weights3| {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[perm[i]] = v.0[i];
        }
        Weights3(out)
    };
    Ok((Tangency::Two { plus: back(&plus), minus: back(&minus) }, length))
}

/// Weights of the circumcevian foot Q through P = (1−t1)A1 + t1A2.
pub fn circumcevian_euc(a1: &EuclidPoint, a2: &EuclidPoint, a3: &EuclidPoint, t1: f64) -> Result<Weights3> {
    if !(0.0..=1.0).contains(&t1) {
        return Err(GeomError::ParamOutOfRange { value: t1, range: "[0, 1]" });
    }
    let al = angles_euc(a1, a2, a3)?;
    let c = al[1].sin().powi(2) + t1 * (al[0] - al[1]).sin() * al[2].sin();
    Ok(Weights3::new(c * (1.0 - t1), c * t1, -(1.0 - t1) * t1 * al[2].sin().powi(2)))
}

fn distinct(pts: &[&EuclidPoint]) -> Result<()> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                return Err(GeomError::DegenerateConfiguration("repeated point".into()));
            }
        }
    }
    Ok(())
}

/// |PT|² − |PA||PB| for tangency point T and secant through A, B.
pub fn tangent_secant_residual(p: &EuclidPoint, t: &EuclidPoint, a: &EuclidPoint, b: &EuclidPoint) -> Result<f64> {
    distinct(&[t, a, b])?;
    Ok(norm2(&t.sub(p)) - p.dist(a) * p.dist(b))
}

/// |PA2||PA3| − |PB2||PB3| for two secants (or chords) through P.
pub fn secants_residual(
    p: &EuclidPoint,
    a2: &EuclidPoint,
    a3: &EuclidPoint,
    b2: &EuclidPoint,
    b3: &EuclidPoint,
) -> Result<f64> {
    distinct(&[a2, a3])?;
    distinct(&[b2, b3])?;
    Ok(p.dist(a2) * p.dist(a3) - p.dist(b2) * p.dist(b3))
}

/// Same quantity for two chords meeting at an interior P.
pub fn chords_residual(
    p: &EuclidPoint,
    a2: &EuclidPoint,
    a3: &EuclidPoint,
    b2: &EuclidPoint,
    b3: &EuclidPoint,
) -> Result<f64> {
    secants_residual(p, a2, a3, b2, b3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(x: f64, y: f64) -> EuclidPoint {
        EuclidPoint::new(vec![x, y]).unwrap()
    }

    #[test]
    fn right_triangle() {
        let (a, b, c) = (ep(0.0, 0.0), ep(3.0, 0.0), ep(0.0, 4.0));
        let o = circumcenter_euc(&a, &b, &c).unwrap();
        assert!((o.coords()[0] - 1.5).abs() < 1e-14 && (o.coords()[1] - 2.0).abs() < 1e-14);
        assert!((circumradius_euc(&a, &b, &c).unwrap() - 2.5).abs() < 1e-14);
    }

    #[test]
    fn equilateral() {
        let h = 3f64.sqrt() / 2.0;
        let (a, b, c) = (ep(0.0, 0.0), ep(1.0, 0.0), ep(0.5, h));
        assert!((circumradius_euc(&a, &b, &c).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let o = circumcenter_euc(&a, &b, &c).unwrap();
        assert!((o.coords()[0] - 0.5).abs() < 1e-15 && (o.coords()[1] - h / 3.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_rejected() {
        let r = circumradius_euc(&ep(0.0, 0.0), &ep(1.0, 1.0), &ep(2.0, 2.0));
        assert_eq!(r, Err(GeomError::CollinearPoints));
    }

    #[test]
    fn classify_basics() {
        let (a, b, c) = (ep(0.0, 0.0), ep(3.0, 0.0), ep(0.0, 4.0));
        assert_eq!(classify_euc(&Weights3::new(1.0, 0.0, 0.0), &a, &b, &c).unwrap(), Classification::On);
        assert_eq!(classify_euc(&Weights3::new(1.0, 1.0, 1.0), &a, &b, &c).unwrap(), Classification::Interior);
    }

    #[test]
    fn unit_circle_power() {
        let p = ep(2.0, 0.0);
        let r = tangent_secant_residual(&p, &ep(0.5, 0.75f64.sqrt()), &ep(1.0, 0.0), &ep(-1.0, 0.0)).unwrap();
        assert!(r.abs() < 1e-15);
        let o = ep(0.0, 0.0);
        let r = chords_residual(&o, &ep(1.0, 0.0), &ep(-1.0, 0.0), &ep(0.0, 1.0), &ep(0.0, -1.0)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn gap_examples() {
        let a = ep(0.0, 0.0);
        assert_eq!(limit_gap(&a, &a, 10.0).unwrap(), 0.0);
        let g = limit_gap(&a, &ep(1.0, 0.0), 1e3).unwrap();
        assert!((g - 0.5).abs() < 0.5e-5);
    }
}
