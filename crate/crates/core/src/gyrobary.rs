//! Gyrobarycentric representations over two or three reference points.

use crate::einstein::{dot, gamma_factor, gyrodistance, BallPoint, Gamma, ModelParams};
use crate::error::{GeomError, Result};

/// Homogeneous weights (m1 : m2 : m3). Signs are kept as given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights3(pub [f64; 3]);

impl Weights3 {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Self {
        Weights3([m1, m2, m3])
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |a, m| a.max(m.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|m| *m == 0.0)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Weights3(self.0.map(|m| m * k))
    }

    /// Divides by the entry of largest magnitude, for display.
    pub fn canonical(&self) -> Self {
        let mut big = 0.0f64;
        for m in self.0 {
            if m.abs() > big.abs() {
                big = m;
            }
        }
        if big == 0.0 {
            *self
        } else {
            self.scaled(1.0 / big)
        }
    }

    /// Equal up to a nonzero factor.
    pub fn projectively_eq(&self, other: &Weights3, tol: f64) -> bool {
        let a = self.canonical().0;
        let b = other.canonical().0;
        let d1 = (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max);
        let d2 = (0..3).map(|i| (a[i] + b[i]).abs()).fold(0.0, f64::max);
        d1.min(d2) <= tol
    }

    /// Weights for the frame reordered by `perm`: entry k becomes self[perm[k]].
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Weights3([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]]])
    }
}

/// m0² split into its parts: m0² = M² + 2K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepConstant {
    pub radicand: f64,
    /// M = Σ m_k
    pub sum: f64,
    /// K = Σ_{i<j} m_i m_j (γ_ij − 1)
    pub k: f64,
}

impl RepConstant {
    pub fn value(&self) -> Option<f64> {
        (self.radicand > 0.0).then(|| self.radicand.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GyroBaryRep {
    refs: Vec<BallPoint>,
    weights: Vec<f64>,
}

impl GyroBaryRep {
    pub fn new(refs: Vec<BallPoint>, weights: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&refs.len()) || refs.len() != weights.len() {
            return Err(GeomError::DegenerateConfiguration(format!(
                "need 2 or 3 references with matching weights, got {} and {}",
                refs.len(),
                weights.len()
            )));
        }
        let dim = refs[0].dim();
        if let Some(r) = refs.iter().find(|r| r.dim() != dim) {
            return Err(GeomError::DimensionMismatch { left: dim, right: r.dim() });
        }
        if weights.iter().all(|m| *m == 0.0) || weights.iter().any(|m| !m.is_finite()) {
            return Err(GeomError::DegenerateConfiguration("weights must be finite and not all zero".into()));
        }
        Ok(GyroBaryRep { refs, weights })
    }

    pub fn over_triangle(refs: &[BallPoint; 3], w: Weights3) -> Result<Self> {
        Self::new(refs.to_vec(), w.0.to_vec())
    }

    pub fn refs(&self) -> &[BallPoint] {
        &self.refs
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Pairwise gamma factors γ_ij = γ_{⊖A_i⊕A_j}.
pub(crate) fn frame_gammas(refs: &[BallPoint], p: &ModelParams) -> Result<Vec<Vec<Gamma>>> {
    let n = refs.len();
    let mut g = vec![vec![Gamma::ONE; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (_, gij) = gyrodistance(&refs[i], &refs[j], p)?;
            g[i][j] = gij;
            g[j][i] = gij;
        }
    }
    Ok(g)
}

fn constant_from_gammas(m: &[f64], g: &[Vec<Gamma>]) -> RepConstant {
    let sum: f64 = m.iter().sum();
    let mut k = 0.0;
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            k += m[i] * m[j] * g[i][j].minus_one();
        }
    }
    RepConstant { radicand: sum * sum + 2.0 * k, sum, k }
}

pub fn rep_constant(rep: &GyroBaryRep, p: &ModelParams) -> Result<RepConstant> {
    let g = frame_gammas(&rep.refs, p)?;
    Ok(constant_from_gammas(&rep.weights, &g))
}

/// P = Σ m_k γ_{A_k} A_k / Σ m_k γ_{A_k}.
pub fn evaluate(rep: &GyroBaryRep, p: &ModelParams) -> Result<BallPoint> {
    let rc = rep_constant(rep, p)?;
    if rc.radicand <= 0.0 {
        return Err(GeomError::OutsideBall { radicand: rc.radicand });
    }
    let dim = rep.refs[0].dim();
    let mut num = vec![0.0; dim];
    let mut den = 0.0;
    let mut scale = 0.0;
    for (a, m) in rep.refs.iter().zip(&rep.weights) {
        let c = m * gamma_factor(a, p)?.value();
        den += c;
        scale += c.abs();
        for (n, x) in num.iter_mut().zip(a.coords()) {
            *n += c * x;
        }
    }
    if den.abs() <= 1e-15 * scale {
        return Err(GeomError::ZeroDenominator);
    }
    let pt: Vec<f64> = num.into_iter().map(|n| n / den).collect();
    if dot(&pt, &pt).sqrt() >= p.s() {
        return Err(GeomError::OutsideBall { radicand: rc.radicand });
    }
    Ok(BallPoint::from_vec_unchecked(pt))
}

/// γ_{⊖X⊕P} = Σ m_k γ_{⊖X⊕A_k} / m0.
pub fn gamma_to_point(rep: &GyroBaryRep, x: &BallPoint, p: &ModelParams) -> Result<Gamma> {
    let rc = rep_constant(rep, p)?;
    let m0 = rc.value().ok_or(GeomError::OutsideBall { radicand: rc.radicand })?;
    let mut sum_minus_one = 0.0;
    for (a, m) in rep.refs.iter().zip(&rep.weights) {
        let (_, g) = gyrodistance(x, a, p)?;
        sum_minus_one += m * g.minus_one();
    }
    // weights are homogeneous, so flip them to make M ≥ 0; then
    // Σ m γ − m0 = (M − m0) + Σ m (γ−1) with M − m0 = −2K/(M + m0)
    let sign = if rc.sum < 0.0 { -1.0 } else { 1.0 };
    let m0_gap = -2.0 * rc.k / (rc.sum.abs() + m0);
    Ok(Gamma::from_minus_one((m0_gap + sign * sum_minus_one) / m0))
}

/// γ_{⊖P⊕Q} from two representations over the same references.
pub fn gamma_between_reps(rp: &GyroBaryRep, rq: &GyroBaryRep, p: &ModelParams) -> Result<Gamma> {
    if rp.refs != rq.refs {
        return Err(GeomError::FrameMismatch);
    }
    let g = frame_gammas(&rp.refs, p)?;
    let cp = constant_from_gammas(&rp.weights, &g);
    let cq = constant_from_gammas(&rq.weights, &g);
    let mp = cp.value().ok_or(GeomError::OutsideBall { radicand: cp.radicand })?;
    let mq = cq.value().ok_or(GeomError::OutsideBall { radicand: cq.radicand })?;
    let (a, b) = (&rp.weights, &rq.weights);
    let mut cross = 0.0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            if i != j {
                cross += a[i] * b[j] * g[i][j].minus_one();
            }
        }
    }
    let bilinear = cp.sum * cq.sum + cross;
    Ok(Gamma::from_value(bilinear / (mp * mq)))
}

/// Weights of `point` relative to a triangle frame; the point is assumed
/// to lie in the plane of the frame (least squares otherwise).
pub fn weights_in_frame(point: &BallPoint, refs: &[BallPoint; 3], p: &ModelParams) -> Result<Weights3> {
    let a1 = refs[0].coords();
    let u: Vec<f64> = refs[1].coords().iter().zip(a1).map(|(x, y)| x - y).collect();
    let v: Vec<f64> = refs[2].coords().iter().zip(a1).map(|(x, y)| x - y).collect();
    let w: Vec<f64> = point.coords().iter().zip(a1).map(|(x, y)| x - y).collect();
    let (uu, uv, vv) = (dot(&u, &u), dot(&u, &v), dot(&v, &v));
    let det = uu * vv - uv * uv;
    if det.abs() <= 1e-24 * uu * vv {
        return Err(GeomError::CollinearPoints);
    }
    let (wu, wv) = (dot(&w, &u), dot(&w, &v));
    let l2 = (wu * vv - wv * uv) / det;
    let l3 = (wv * uu - wu * uv) / det;
    let l1 = 1.0 - l2 - l3;
    let mut m = [l1, l2, l3];
    for (mk, a) in m.iter_mut().zip(refs) {
        *mk /= gamma_factor(a, p)?.value();
    }
    Ok(Weights3(m))
}
