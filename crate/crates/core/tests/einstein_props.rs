mod common;

use common::oracle;
use gyrogeom::einstein::{einstein_add, gamma_factor, gyroangle, gyrodistance, gyromidpoint, scalar_mul};
use gyrogeom::{BallPoint, ModelParams};
use proptest::prelude::*;

fn ball_vec(max_norm: f64) -> impl Strategy<Value = Vec<f64>> {
    (0.0..max_norm, 0.0..std::f64::consts::TAU).prop_map(|(r, th)| vec![r * th.cos(), r * th.sin()])
}

fn ball_vec3(max_norm: f64) -> impl Strategy<Value = Vec<f64>> {
    (0.0..max_norm, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(r, ph, th)| vec![r * ph.sin() * th.cos(), r * ph.sin() * th.sin(), r * ph.cos()])
}

fn diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn addition_matches_oracle(u in ball_vec3(0.95), v in ball_vec3(0.95)) {
        let p = ModelParams::unit();
        let r = einstein_add(&BallPoint::new(u.clone(), &p).unwrap(), &BallPoint::new(v.clone(), &p).unwrap(), &p).unwrap();
        prop_assert!(diff(r.coords(), &oracle::add(&u, &v, 1.0)) < 1e-14);
        prop_assert!(r.norm() < 1.0);
    }

    #[test]
    fn left_cancellation(u in ball_vec(0.99), v in ball_vec(0.99)) {
        let p = ModelParams::unit();
        let (bu, bv) = (BallPoint::new(u, &p).unwrap(), BallPoint::new(v.clone(), &p).unwrap());
        let uv = einstein_add(&bu, &bv, &p).unwrap();
        let back = einstein_add(&bu.neg(), &uv, &p).unwrap();
        prop_assert!(diff(back.coords(), &v) < 1e-12);
    }

    #[test]
    fn automorphic_inverse(u in ball_vec3(0.9), v in ball_vec3(0.9)) {
        let p = ModelParams::unit();
        let (bu, bv) = (BallPoint::new(u, &p).unwrap(), BallPoint::new(v, &p).unwrap());
        let lhs = einstein_add(&bu, &bv, &p).unwrap().neg();
        let rhs = einstein_add(&bu.neg(), &bv.neg(), &p).unwrap();
        prop_assert!(diff(lhs.coords(), rhs.coords()) < 1e-14);
    }

    #[test]
    fn norm_identity(v in ball_vec(0.999), s in 0.1f64..100.0) {
        let p = ModelParams::new(s).unwrap();
        let w: Vec<f64> = v.iter().map(|c| c * s).collect();
        let bv = BallPoint::new(w, &p).unwrap();
        let g = gamma_factor(&bv, &p).unwrap();
        let lhs = s * s * g.sq_minus_one() / (g.value() * g.value());
        prop_assert!((lhs - bv.norm_sq()).abs() <= 1e-12 * s * s);
    }

    #[test]
    fn distance_symmetric_and_matches_oracle(a in ball_vec(0.95), b in ball_vec(0.95)) {
        let p = ModelParams::unit();
        let (ba, bb) = (BallPoint::new(a.clone(), &p).unwrap(), BallPoint::new(b.clone(), &p).unwrap());
        let (dab, gab) = gyrodistance(&ba, &bb, &p).unwrap();
        let (dba, _) = gyrodistance(&bb, &ba, &p).unwrap();
        prop_assert!((dab - dba).abs() < 1e-14);
        let (od, og) = oracle::dist(&a, &b, 1.0);
        prop_assert!((dab - od).abs() < 1e-13);
        prop_assert!((gab.value() - og).abs() <= 1e-12 * og);
    }

    #[test]
    fn midpoint_equidistant(a in ball_vec(0.9), b in ball_vec(0.9)) {
        let p = ModelParams::unit();
        let (ba, bb) = (BallPoint::new(a, &p).unwrap(), BallPoint::new(b, &p).unwrap());
        let m = gyromidpoint(&ba, &bb, &p).unwrap();
        let (d1, _) = oracle::dist(m.coords(), ba.coords(), 1.0);
        let (d2, _) = oracle::dist(m.coords(), bb.coords(), 1.0);
        prop_assert!((d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn doubling_is_self_addition(v in ball_vec(0.9)) {
        let p = ModelParams::unit();
        let bv = BallPoint::new(v.clone(), &p).unwrap();
        let two = scalar_mul(2.0, &bv, &p).unwrap();
        prop_assert!(diff(two.coords(), &oracle::add(&v, &v, 1.0)) < 1e-12);
    }

    #[test]
    fn angle_symmetric(v in ball_vec(0.8), b in ball_vec(0.8), c in ball_vec(0.8)) {
        let p = ModelParams::unit();
        let (bv, bb, bc) = (BallPoint::new(v.clone(), &p).unwrap(), BallPoint::new(b.clone(), &p).unwrap(), BallPoint::new(c.clone(), &p).unwrap());
        prop_assume!(diff(&v, &b) > 1e-3 && diff(&v, &c) > 1e-3);
        let x = gyroangle(&bv, &bb, &bc, &p).unwrap();
        let y = gyroangle(&bv, &bc, &bb, &p).unwrap();
        prop_assert!((x - y).abs() < 1e-14);
        prop_assert!((x - oracle::angle(&v, &b, &c, 1.0)).abs() < 1e-7);
    }
}

#[test]
fn euclidean_limit_of_addition() {
    let u = [0.7, -0.2];
    let v = [0.3, 0.9];
    let mut errs = vec![];
    for k in 1..=4 {
        let s = 10f64.powi(k);
        let p = ModelParams::new(s).unwrap();
        let r = einstein_add(&BallPoint::new(u.to_vec(), &p).unwrap(), &BallPoint::new(v.to_vec(), &p).unwrap(), &p).unwrap();
        errs.push(diff(r.coords(), &[1.0, 0.7]));
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((50.0..200.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn equilateral_angles_equal() {
    let t = common::e0();
    let a = t.alpha();
    assert!((a[0] - a[1]).abs() < 1e-14 && (a[0] - a[2]).abs() < 1e-14);
}
