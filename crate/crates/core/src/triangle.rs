//! Gyrotriangles and their circumgyrocircles.

use std::f64::consts::PI;

use crate::circle::GyroCircle;
use crate::einstein::{dot, gyroangle, gyrodistance, BallPoint, Gamma, ModelParams};
use crate::error::{GeomError, Result};
use crate::gyrobary::{evaluate, rep_constant, GyroBaryRep, Weights3};

/// Relative area threshold for Klein collinearity.
pub const COLLINEAR_REL_AREA: f64 = 1e-12;

/// The three side gamma factors in index notation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleGammas {
    pub g12: Gamma,
    pub g13: Gamma,
    pub g23: Gamma,
}

impl TriangleGammas {
    /// Gammas of a raw point triple; no validity requirements.
    pub fn from_points(a1: &BallPoint, a2: &BallPoint, a3: &BallPoint, p: &ModelParams) -> Result<Self> {
        Ok(TriangleGammas {
            g12: gyrodistance(a1, a2, p)?.1,
            g13: gyrodistance(a1, a3, p)?.1,
            g23: gyrodistance(a2, a3, p)?.1,
        })
    }

    /// (γ12−1, γ13−1, γ23−1)
    pub fn minus_ones(&self) -> (f64, f64, f64) {
        (self.g12.minus_one(), self.g13.minus_one(), self.g23.minus_one())
    }

    /// (D3, H3), evaluated in the γ−1 variables.
    pub fn d3_h3(&self) -> (f64, f64) {
        let (e12, e13, e23) = self.minus_ones();
        let h3 = 2.0 * e12 * e13 * e23;
        let d3 = 2.0 * (e12 * e13 + e12 * e23 + e13 * e23) + h3 - (e12 * e12 + e13 * e13 + e23 * e23);
        (d3, h3)
    }

    /// D3 − H3 without forming either term.
    pub fn d3_minus_h3(&self) -> f64 {
        let (e12, e13, e23) = self.minus_ones();
        2.0 * (e12 * e13 + e12 * e23 + e13 * e23) - (e12 * e12 + e13 * e13 + e23 * e23)
    }

    /// D3 as the literal gamma polynomial (the 3x3 gamma determinant).
    pub fn d3_determinant(&self) -> f64 {
        let (g12, g13, g23) = (self.g12.value(), self.g13.value(), self.g23.value());
        1.0 + 2.0 * g12 * g13 * g23 - g12 * g12 - g13 * g13 - g23 * g23
    }

    pub fn circum_exists(&self) -> bool {
        self.d3_minus_h3() > 0.0
    }
}

/// Verdicts of the four existence conditions, with margins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExistenceReport {
    pub exists: bool,
    pub d3: f64,
    pub h3: f64,
    /// (γ12+γ13+γ23−1)² − 2(γ12²+γ13²+γ23²−1)
    pub square_form_margin: f64,
    /// 4(γ12−1)(γ13−1) − (γ12+γ13−γ23−1)²
    pub pair_form_margin: f64,
    /// Σ sin(2α_k+δ/2) − 3 sin(δ/2), when the angles are defined
    pub trig_sum_margin: Option<f64>,
    /// Π sin(α_k+δ/2) − sin(δ/2), when the angles are defined
    pub trig_product_margin: Option<f64>,
}

impl ExistenceReport {
    pub fn from_gammas(g: &TriangleGammas, angles: Option<([f64; 3], f64)>) -> Self {
        let (d3, h3) = g.d3_h3();
        let (g12, g13, g23) = (g.g12.value(), g.g13.value(), g.g23.value());
        let sq = (g12 + g13 + g23 - 1.0).powi(2) - 2.0 * (g12 * g12 + g13 * g13 + g23 * g23 - 1.0);
        let pair = 4.0 * (g12 - 1.0) * (g13 - 1.0) - (g12 + g13 - g23 - 1.0).powi(2);
        let (trig_sum_margin, trig_product_margin) = match angles {
            Some((a, delta)) => {
                let h = delta / 2.0;
                let sum: f64 = a.iter().map(|ak| (2.0 * ak + h).sin()).sum();
                let prod: f64 = a.iter().map(|ak| (ak + h).sin()).product();
                (Some(sum - 3.0 * h.sin()), Some(prod - h.sin()))
            }
            None => (None, None),
        };
        ExistenceReport {
            exists: g.circum_exists(),
            d3,
            h3,
            square_form_margin: sq,
            pair_form_margin: pair,
            trig_sum_margin,
            trig_product_margin,
        }
    }

    /// Boolean outcome of each condition, in the order
    /// D3>H3, square form, pair form, trig sum, trig product.
    pub fn verdicts(&self) -> [Option<bool>; 5] {
        [
            Some(self.exists),
            Some(self.square_form_margin > 0.0),
            Some(self.pair_form_margin > 0.0),
            self.trig_sum_margin.map(|m| m > 0.0),
            self.trig_product_margin.map(|m| m > 0.0),
        ]
    }

    /// True when every available condition gives the same answer.
    pub fn agree(&self) -> bool {
        self.verdicts().iter().flatten().all(|v| *v == self.exists)
    }

    fn violated(&self) -> String {
        format!("D3 > H3 fails: D3 = {}, H3 = {}", self.d3, self.h3)
    }
}

/// Cached circumgyrocircle data.
#[derive(Debug, Clone, PartialEq)]
pub struct Circum {
    pub weights: Weights3,
    pub center: BallPoint,
    pub radius: f64,
    pub gamma_r: Gamma,
    /// Representation constant of `weights`.
    pub m_o: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GyroTriangle {
    vertices: [BallPoint; 3],
    params: ModelParams,
    gammas: TriangleGammas,
    sides: [f64; 3],
    alpha: [f64; 3],
    defect: f64,
    circum: Option<Circum>,
}

/// Twice the area of the Klein triangle divided by its longest side squared.
pub(crate) fn klein_relative_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let u: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let v: Vec<f64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    let w: Vec<f64> = c.iter().zip(b).map(|(x, y)| x - y).collect();
    let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
    let longest = uu.max(vv).max(dot(&w, &w));
    if longest == 0.0 {
        return 0.0;
    }
    (uu * vv - uv * uv).max(0.0).sqrt() / longest
}

impl GyroTriangle {
    pub fn new(a1: BallPoint, a2: BallPoint, a3: BallPoint, p: &ModelParams) -> Result<Self> {
        for b in [&a2, &a3] {
            if a1.dim() != b.dim() {
                return Err(GeomError::DimensionMismatch { left: a1.dim(), right: b.dim() });
            }
        }
        if a1 == a2 || a1 == a3 || a2 == a3 {
            return Err(GeomError::DegenerateTriangle("coincident vertices".into()));
        }
        if klein_relative_area(a1.coords(), a2.coords(), a3.coords()) <= COLLINEAR_REL_AREA {
            return Err(GeomError::DegenerateTriangle("gyrocollinear vertices".into()));
        }
        let gammas = TriangleGammas::from_points(&a1, &a2, &a3, p)?;
        let sides = [gammas.g12.speed(p.s()), gammas.g13.speed(p.s()), gammas.g23.speed(p.s())];
        let alpha = [
            gyroangle(&a1, &a2, &a3, p)?,
            gyroangle(&a2, &a1, &a3, p)?,
            gyroangle(&a3, &a1, &a2, p)?,
        ];
        let defect = PI - alpha[0] - alpha[1] - alpha[2];
        if !(defect > 0.0) {
            return Err(GeomError::DegenerateTriangle(format!("non-positive defect {defect}")));
        }
        let mut t = GyroTriangle { vertices: [a1, a2, a3], params: *p, gammas, sides, alpha, defect, circum: None };
        t.circum = t.build_circum();
        Ok(t)
    }

    fn build_circum(&self) -> Option<Circum> {
        if !self.gammas.circum_exists() {
            return None;
        }
        let (e12, e13, e23) = self.gammas.minus_ones();
        let weights = Weights3::new(
            (e12 + e13 - e23) * e23,
            (e12 - e13 + e23) * e13,
            (-e12 + e13 + e23) * e12,
        );
        let rep = GyroBaryRep::over_triangle(&self.vertices, weights).ok()?;
        let center = evaluate(&rep, &self.params).ok()?;
        let m_o = rep_constant(&rep, &self.params).ok()?.value()?;
        let (d3, h3) = self.gammas.d3_h3();
        let dmh = self.gammas.d3_minus_h3();
        let radius = self.params.s() * (h3 / d3).sqrt();
        let gr = (d3 / dmh).sqrt();
        let gamma_r = Gamma::from_minus_one(h3 / dmh / (gr + 1.0));
        Some(Circum { weights, center, radius, gamma_r, m_o })
    }

    pub fn vertices(&self) -> &[BallPoint; 3] {
        &self.vertices
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn gammas(&self) -> &TriangleGammas {
        &self.gammas
    }

    /// Side gyrolengths (a12, a13, a23).
    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    /// Vertex gyroangles (α1, α2, α3).
    pub fn alpha(&self) -> [f64; 3] {
        self.alpha
    }

    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn circum(&self) -> Result<&Circum> {
        self.circum.as_ref().ok_or_else(|| GeomError::NoCircumcircle {
            violated: circum_exists(self).violated(),
        })
    }

    /// The same triangle with vertices reordered: new A_k = old A_{perm[k]}.
    /// Weights carry over with `Weights3::permuted(perm)`.
    pub fn relabeled(&self, perm: [usize; 3]) -> Result<GyroTriangle> {
        let v = &self.vertices;
        GyroTriangle::new(v[perm[0]].clone(), v[perm[1]].clone(), v[perm[2]].clone(), &self.params)
    }

    pub(crate) fn rep(&self, w: Weights3) -> Result<GyroBaryRep> {
        GyroBaryRep::over_triangle(&self.vertices, w)
    }
}

pub fn angles_and_defect(t: &GyroTriangle) -> ([f64; 3], f64) {
    (t.alpha, t.defect)
}

/// Side gammas from the three gyroangles.
pub fn aaa_to_sss(alpha: [f64; 3]) -> Result<TriangleGammas> {
    let sum = alpha[0] + alpha[1] + alpha[2];
    if alpha.iter().any(|a| !(*a > 0.0 && *a < PI)) {
        return Err(GeomError::ParamOutOfRange { value: sum, range: "angles in (0, pi)" });
    }
    if !(sum < PI) {
        return Err(GeomError::AngleSumNotHyperbolic { sum });
    }
    let half_defect = (PI - sum) / 2.0;
    // γ_jk − 1 = (cos α_i + cos(α_j+α_k)) / (sin α_j sin α_k), rewritten as a product
    let gm1 = |ai: f64, aj: f64, ak: f64| 2.0 * half_defect.sin() * ((ai - aj - ak) / 2.0).cos() / (aj.sin() * ak.sin());
    Ok(TriangleGammas {
        g23: Gamma::from_minus_one(gm1(alpha[0], alpha[1], alpha[2])),
        g13: Gamma::from_minus_one(gm1(alpha[1], alpha[0], alpha[2])),
        g12: Gamma::from_minus_one(gm1(alpha[2], alpha[0], alpha[1])),
    })
}

pub fn d3_h3(t: &GyroTriangle) -> (f64, f64) {
    t.gammas.d3_h3()
}

/// The D3 − H3 polynomial written through the gyroangles.
pub fn d_trig(alpha: [f64; 3], defect: f64) -> f64 {
    let h = defect / 2.0;
    let prod: f64 = alpha.iter().map(|a| (a + h).sin()).product();
    let f = h.sin() * prod;
    let sin2: f64 = alpha.iter().map(|a| a.sin().powi(2)).product();
    16.0 * f / sin2 * (f - h.sin().powi(2))
}

pub fn circum_exists(t: &GyroTriangle) -> ExistenceReport {
    ExistenceReport::from_gammas(&t.gammas, Some((t.alpha, t.defect)))
}

/// Circumcenter weights in gamma form and in trig form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircumWeights {
    pub gamma_form: Weights3,
    pub trig_form: Weights3,
}

pub fn circumcenter_weights(t: &GyroTriangle) -> Result<CircumWeights> {
    let c = t.circum()?;
    let h = t.defect / 2.0;
    let trig = t.alpha.map(|a| (a + h).cos() * a.sin());
    Ok(CircumWeights { gamma_form: c.weights, trig_form: Weights3(trig) })
}

pub fn circumcenter(t: &GyroTriangle) -> Result<BallPoint> {
    Ok(t.circum()?.center.clone())
}

pub fn circumradius(t: &GyroTriangle) -> Result<(f64, Gamma)> {
    let c = t.circum()?;
    Ok((c.radius, c.gamma_r))
}

/// R from the gyroangles alone: R/s = √F / Π sin(α_k+δ/2).
pub fn circumradius_trig(t: &GyroTriangle) -> Result<f64> {
    t.circum()?;
    let h = t.defect / 2.0;
    let prod: f64 = t.alpha.iter().map(|a| (a + h).sin()).product();
    let f = h.sin() * prod;
    Ok(t.params.s() * f.sqrt() / prod)
}

/// The extended law of gyrosines: the three side ratios and the two
/// closed forms they all equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyrosineLaw {
    /// γ23a23/sin α1, γ13a13/sin α2, γ12a12/sin α3
    pub ratios: [f64; 3],
    pub gamma_form: f64,
    pub trig_form: f64,
}

pub fn extended_gyrosines(t: &GyroTriangle) -> Result<GyrosineLaw> {
    let c = t.circum()?;
    let s = t.params.s();
    let g = &t.gammas;
    let ga = |x: &Gamma| s * x.sq_minus_one().sqrt();
    let ratios = [
        ga(&g.g23) / t.alpha[0].sin(),
        ga(&g.g13) / t.alpha[1].sin(),
        ga(&g.g12) / t.alpha[2].sin(),
    ];
    let gamma_form = ((g.g12.value() + 1.0) * (g.g13.value() + 1.0) * (g.g23.value() + 1.0) / 2.0).sqrt() * c.radius;
    let h = t.defect / 2.0;
    let num: f64 = t.alpha.iter().map(|a| (a + h).sin()).product();
    let den: f64 = t.alpha.iter().map(|a| a.sin()).product();
    Ok(GyrosineLaw { ratios, gamma_form, trig_form: 2.0 * num / den * c.radius })
}

/// Side data recovered from the gyroangles and the circumgyroradius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidesFromAngles {
    /// a12, a13, a23
    pub sides: [f64; 3],
    /// γ12a12, γ13a13, γ23a23
    pub gamma_sides: [f64; 3],
}

pub fn sides_from_angles_radius(alpha: [f64; 3], r: f64, p: &ModelParams) -> Result<SidesFromAngles> {
    aaa_to_sss(alpha)?;
    if !(r > 0.0 && r < p.s()) {
        return Err(GeomError::ParamOutOfRange { value: r, range: "(0, s)" });
    }
    let [a1, a2, a3] = alpha;
    let h = (PI - a1 - a2 - a3) / 2.0;
    let k = 2.0 * r * (a1 + h).sin() * (a2 + h).sin() * (a3 + h).sin();
    Ok(SidesFromAngles {
        sides: [
            k / (a3.cos() + a1.cos() * a2.cos()),
            k / (a2.cos() + a1.cos() * a3.cos()),
            k / (a1.cos() + a2.cos() * a3.cos()),
        ],
        gamma_sides: [k / (a1.sin() * a2.sin()), k / (a1.sin() * a3.sin()), k / (a2.sin() * a3.sin())],
    })
}

pub fn circumcircle_of(t: &GyroTriangle) -> Result<GyroCircle> {
    let c = t.circum()?;
    GyroCircle::new(c.center.clone(), c.radius, &t.params)
}

/// The gyrocircle through three points, which may be degenerate.
pub fn circumcircle_through(a1: &BallPoint, a2: &BallPoint, a3: &BallPoint, p: &ModelParams) -> Result<GyroCircle> {
    let g = TriangleGammas::from_points(a1, a2, a3, p)?;
    let report = ExistenceReport::from_gammas(&g, None);
    if !report.exists {
        return Err(GeomError::NoCircumcircle { violated: report.violated() });
    }
    let t = GyroTriangle::new(a1.clone(), a2.clone(), a3.clone(), p)?;
    circumcircle_of(&t)
}

/// Orthonormal basis of the plane of a triangle, for 2D side tests.
pub(crate) fn plane_coords(t: &GyroTriangle, x: &BallPoint) -> [f64; 2] {
    let a = t.vertices[0].coords();
    let u: Vec<f64> = t.vertices[1].coords().iter().zip(a).map(|(x, y)| x - y).collect();
    let v: Vec<f64> = t.vertices[2].coords().iter().zip(a).map(|(x, y)| x - y).collect();
    let nu = dot(&u, &u).sqrt();
    let e1: Vec<f64> = u.iter().map(|c| c / nu).collect();
    let proj = dot(&v, &e1);
    let w: Vec<f64> = v.iter().zip(&e1).map(|(c, e)| c - proj * e).collect();
    let nw = dot(&w, &w).sqrt();
    let e2: Vec<f64> = w.iter().map(|c| c / nw).collect();
    let d: Vec<f64> = x.coords().iter().zip(a).map(|(x, y)| x - y).collect();
    [dot(&d, &e1), dot(&d, &e2)]
}
