//! Interactive browser demo for the rank-2 types (A2, B2, C2, G2).
//!
//! Three operations are exposed to JavaScript, all returning JSON strings
//! rendered by the static page in `www/`:
//!
//! - [`cloud_json`]: the image of the regular level-`N` classes inside the
//!   domain `Omega`,
//! - [`rule_json`]: the nodes and weights of the degree-`M` cubature rule,
//! - [`heatmap_json`]: a character `chi_lambda` sampled over the fundamental
//!   simplex and mapped into `Omega` coordinates.
//!
//! Points are plotted in the real coordinates of the sigma-fixed form: for
//! A2 these are `(Re X_1, Im X_1)`; for the other rank-2 types both
//! fundamental characters are real-valued and the pair `(X_1, X_2)` is used
//! directly.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use liecube::cubature::{build_rule, omega_cloud};
use liecube::rootsys::{LieType, RootSystem, SignedWeightOrbit, Weight};

fn rank2_system(name: &str) -> Result<RootSystem, String> {
    let lie_type: LieType = name.parse().map_err(|e: liecube::Error| e.to_string())?;
    if lie_type.rank() != 2 {
        return Err(format!("demo supports rank-2 types only, got {lie_type}"));
    }
    RootSystem::new(lie_type).map_err(|e| e.to_string())
}

/// Realify a fundamental-character pair according to sigma.
fn plane_coords(rs: &RootSystem, x: [Complex64; 2]) -> [f64; 2] {
    if rs.conjugation_permutation() == [1, 0] {
        [x[0].re, x[0].im]
    } else {
        [x[0].re, x[1].re]
    }
}

/// The supported type names, as a JSON list.
#[wasm_bindgen]
pub fn demo_types() -> String {
    r#"["A2","B2","C2","G2"]"#.to_string()
}

/// Image of the regular level-`N` classes in `Omega`:
/// `{"type", "level", "count", "points": [[x, y], ...]}`.
#[wasm_bindgen]
pub fn cloud_json(lie_type: &str, level: u32) -> Result<String, String> {
    let rs = rank2_system(lie_type)?;
    if level < 1 {
        return Err("level must be positive".into());
    }
    let cloud = omega_cloud(&rs, level as i64).map_err(|e| e.to_string())?;
    let points: Vec<[f64; 2]> = cloud.iter().map(|p| [p[0], p[1]]).collect();
    Ok(serde_json::json!({
        "type": rs.lie_type().to_string(),
        "level": level,
        "count": points.len(),
        "points": points,
    })
    .to_string())
}

/// Cubature rule of degree budget `M`:
/// `{"type", "M", "level", "count", "nodes": [[x, y, weight], ...]}`.
#[wasm_bindgen]
pub fn rule_json(lie_type: &str, m: u32) -> Result<String, String> {
    let rs = rank2_system(lie_type)?;
    let rule = build_rule(&rs, m as i64).map_err(|e| e.to_string())?;
    let nodes: Vec<[f64; 3]> = rule
        .node_x()
        .iter()
        .zip(rule.weights())
        .map(|(x, &w)| {
            let p = plane_coords(&rs, [x[0], x[1]]);
            [p[0], p[1], w]
        })
        .collect();
    Ok(serde_json::json!({
        "type": rs.lie_type().to_string(),
        "M": m,
        "level": rule.level(),
        "count": nodes.len(),
        "norm_const": rule.norm_const(),
        "nodes": nodes,
    })
    .to_string())
}

struct PlaneEvaluator {
    rs: RootSystem,
    rho_orbit: SignedWeightOrbit,
    w1_orbit: SignedWeightOrbit,
    w2_orbit: SignedWeightOrbit,
}

impl PlaneEvaluator {
    fn new(rs: RootSystem) -> Result<Self, String> {
        let rho = Weight::rho(2);
        let orbit = |coords: Vec<i64>| {
            rs.signed_weyl_orbit(&Weight::new(coords).plus(&rho))
                .map_err(|e| e.to_string())
        };
        Ok(PlaneEvaluator {
            rho_orbit: orbit(vec![0, 0])?,
            w1_orbit: orbit(vec![1, 0])?,
            w2_orbit: orbit(vec![0, 1])?,
            rs,
        })
    }

    /// `(plane point, S_rho)` at real simple-coroot coordinates.
    fn plane_at(&self, coords: &[f64]) -> ([f64; 2], Complex64) {
        let s_rho = self.rho_orbit.alternating_sum_at(coords);
        let x1 = self.w1_orbit.alternating_sum_at(coords) / s_rho;
        let x2 = self.w2_orbit.alternating_sum_at(coords) / s_rho;
        (plane_coords(&self.rs, [x1, x2]), s_rho)
    }

    /// Vertices of the fundamental simplex in simple-coroot coordinates,
    /// `A^{-1} e_j / m_j = adj(A) e_j / (c_G m_j)`.
    fn vertices(&self) -> [[f64; 2]; 2] {
        let mut v = [[0.0f64; 2]; 2];
        let scale = self.rs.center_order() as f64;
        for (j, vj) in v.iter_mut().enumerate() {
            for (i, vji) in vj.iter_mut().enumerate() {
                *vji = self.rs.cartan_adjugate()[i][j] as f64 / (scale * self.rs.marks()[j] as f64);
            }
        }
        v
    }
}

/// `Re chi_lambda` sampled over the fundamental simplex, in `Omega`
/// coordinates: `{"degree", "points": [[x, y, value], ...], "min", "max"}`.
/// `resolution` is the barycentric grid density (clamped to 16..=220).
#[wasm_bindgen]
pub fn heatmap_json(lie_type: &str, l1: u32, l2: u32, resolution: u32) -> Result<String, String> {
    let rs = rank2_system(lie_type)?;
    let lam = Weight::new(vec![l1 as i64, l2 as i64]);
    let degree = rs.m_degree(&lam);
    let lam_orbit = rs
        .signed_weyl_orbit(&lam.plus(&Weight::rho(2)))
        .map_err(|e| e.to_string())?;
    let eval = PlaneEvaluator::new(rs)?;
    let v = eval.vertices();

    let r = resolution.clamp(16, 220) as i64;
    let mut points: Vec<[f64; 3]> = Vec::new();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..r {
        for j in 0..r {
            if 2 * (i + j) + 2 >= 2 * r {
                continue;
            }
            let u = (i as f64 + 0.5) / r as f64;
            let w = (j as f64 + 0.5) / r as f64;
            let coords = [u * v[0][0] + w * v[1][0], u * v[0][1] + w * v[1][1]];
            let (p, s_rho) = eval.plane_at(&coords);
            let value = (lam_orbit.alternating_sum_at(&coords) / s_rho).re;
            lo = lo.min(value);
            hi = hi.max(value);
            points.push([p[0], p[1], value]);
        }
    }
    Ok(serde_json::json!({
        "degree": degree,
        "min": lo,
        "max": hi,
        "points": points,
    })
    .to_string())
}

/// Closed outline of `Omega` (the image of the simplex boundary), as a
/// polyline: `{"points": [[x, y], ...]}`. Characters are quotients, so the
/// trace runs just inside the boundary.
#[wasm_bindgen]
pub fn boundary_json(lie_type: &str, samples: u32) -> Result<String, String> {
    let rs = rank2_system(lie_type)?;
    let eval = PlaneEvaluator::new(rs)?;
    let v = eval.vertices();
    let n = samples.clamp(16, 2000) as usize;
    let origin = [0.0f64; 2];
    let edges = [(origin, v[0]), (v[0], v[1]), (v[1], origin)];

    // Pull every sample slightly toward the barycenter to stay interior.
    let center = [(v[0][0] + v[1][0]) / 3.0, (v[0][1] + v[1][1]) / 3.0];
    let eps = 1e-6;
    let mut points = Vec::with_capacity(3 * n + 1);
    for (a, b) in edges {
        for k in 0..n {
            let t = k as f64 / n as f64;
            let mut p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            p[0] += eps * (center[0] - p[0]);
            p[1] += eps * (center[1] - p[1]);
            points.push(eval.plane_at(&p).0);
        }
    }
    points.push(points[0]);
    Ok(serde_json::json!({ "points": points }).to_string())
}
