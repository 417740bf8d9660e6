//! Character expansions and best `L^2_K` approximation on `Omega`.
//!
//! The characters, read as polynomials `X_lambda` in the fundamental
//! characters, are orthogonal for the inner product weighted by `K^{1/2}`.
//! A cubature rule of degree budget `M` therefore recovers the expansion
//! coefficients `a_lambda = <f, X_lambda>_K / (2 pi)^n` of a function from
//! its node values alone — exactly, whenever `f * conj(X_lambda)` stays
//! within the rule's exactness degree — and the truncation at m-degree `M`
//! is the best degree-`M` approximation in the `L^2_K` norm.

use num_complex::Complex64;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

use crate::cubature::{build_rule, dominant_weights_up_to, CubatureRule};
use crate::lattice::{adjugate_times_tail, DualPoint};
use crate::orbitfn::{orbit_sum, PhaseTable};
use crate::rootsys::{RootSystem, Weight};
use crate::{Error, Result};

/// Sparse map from dominant weights to expansion coefficients
/// `a_lambda = <f, X_lambda>_K / (2 pi)^n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CharacterExpansion {
    coefficients: BTreeMap<Vec<i64>, Complex64>,
}

impl CharacterExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, lambda: &Weight, c: Complex64) {
        self.coefficients.insert(lambda.coords().to_vec(), c);
    }

    pub fn get(&self, lambda: &Weight) -> Complex64 {
        self.coefficients
            .get(lambda.coords())
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], Complex64)> {
        self.coefficients.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Sum of the expansion at a point: `sum a_lambda chi_lambda(x)`.
    pub fn eval(&self, rs: &RootSystem, x: &DualPoint) -> Result<Complex64> {
        if !x.is_interior() {
            return Err(Error::BoundaryPoint);
        }
        let table = PhaseTable::for_point(rs, x);
        let t = adjugate_times_tail(rs, x);
        let rho = Weight::rho(rs.rank());
        let denom = orbit_sum(&rs.signed_weyl_orbit(&rho)?, &t, &table);
        let mut acc = Complex64::new(0.0, 0.0);
        for (coords, c) in &self.coefficients {
            let orbit = rs.signed_weyl_orbit(&Weight::new(coords.clone()).plus(&rho))?;
            acc += c * orbit_sum(&orbit, &t, &table) / denom;
        }
        Ok(acc)
    }

    /// JSON object mapping `"l1,l2,..."` to `[re, im]`.
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        for (coords, c) in &self.coefficients {
            let key = coords
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.insert(key, Value::Array(vec![c.re.into(), c.im.into()]));
        }
        serde_json::to_string_pretty(&Value::Object(map)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let value: Map<String, Value> =
            serde_json::from_str(s).map_err(|e| Error::InvalidFile(e.to_string()))?;
        let mut out = CharacterExpansion::new();
        for (key, v) in value {
            let coords: std::result::Result<Vec<i64>, _> =
                key.split(',').map(|p| p.trim().parse::<i64>()).collect();
            let coords = coords.map_err(|e| Error::InvalidFile(e.to_string()))?;
            let pair = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::InvalidFile(format!("bad coefficient for {key}")))?;
            let re = pair[0]
                .as_f64()
                .ok_or_else(|| Error::InvalidFile(key.clone()))?;
            let im = pair[1]
                .as_f64()
                .ok_or_else(|| Error::InvalidFile(key.clone()))?;
            out.coefficients.insert(coords, Complex64::new(re, im));
        }
        Ok(out)
    }
}

/// Coefficients `a_lambda` for all dominant `lambda` of m-degree at most the
/// rule's budget `M`:
/// `a_lambda = (1/(c_G (M+h)^n)) sum_nodes f(x) conj(chi_lambda(x)) K(x)`.
///
/// Exact when `f` is a polynomial with `m-deg(f * conj(X_lambda)) <= 2M+1`;
/// otherwise the coefficients are the rule's approximation of the integral.
pub fn expansion_coefficients<F>(
    rs: &RootSystem,
    rule: &CubatureRule,
    f: F,
) -> Result<CharacterExpansion>
where
    F: Fn(&DualPoint) -> Complex64,
{
    let n = rs.rank();
    let table = PhaseTable::new(rs.center_order() * rule.level());
    let rho = Weight::rho(n);
    let rho_orbit = rs.signed_weyl_orbit(&rho)?;

    // Per node: t-vector, f value, S_rho value.
    let ts: Vec<Vec<i64>> = rule
        .nodes()
        .iter()
        .map(|x| adjugate_times_tail(rs, x))
        .collect();
    let f_values: Vec<Complex64> = rule.nodes().iter().map(&f).collect();
    let s_rho: Vec<Complex64> = ts
        .iter()
        .map(|t| orbit_sum(&rho_orbit, t, &table))
        .collect();

    let scale = rs.center_order() as f64 * (rule.level() as f64).powi(n as i32);
    let mut out = CharacterExpansion::new();
    for lam in dominant_weights_up_to(rs, rule.degree()) {
        let orbit = rs.signed_weyl_orbit(&lam.plus(&rho))?;
        let mut acc = Complex64::new(0.0, 0.0);
        for ((t, fv), sr) in ts.iter().zip(&f_values).zip(&s_rho) {
            // conj(chi_lambda) K = conj(S_{lambda+rho}) S_rho at the node.
            let s_lam = orbit_sum(&orbit, t, &table);
            acc += fv * s_lam.conj() * sr;
        }
        out.set(&lam, acc / scale);
    }
    Ok(out)
}

/// The degree-`M` truncation `x -> sum_{|lambda|_m <= M} a_lambda
/// chi_lambda(x)` of the expansion of `f`.
pub fn truncated_approximation<F>(
    rs: &RootSystem,
    rule: &CubatureRule,
    f: F,
) -> Result<CharacterExpansion>
where
    F: Fn(&DualPoint) -> Complex64,
{
    expansion_coefficients(rs, rule, f)
}

/// Outcome of [`optimality_residual_check`].
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    /// Largest `|<f - q, X_lambda>|` over `|lambda|_m <= M`; orthogonality
    /// of the residual to the span is the content of optimality.
    pub max_residual: f64,
    /// Per trial `p`: the norm gap `|f-p|^2 - |f-q|^2`, and the deviation of
    /// the gap from `sum |b_lambda - a_lambda|^2`.
    pub trials: Vec<TrialGap>,
}

#[derive(Debug, Clone)]
pub struct TrialGap {
    pub gap: f64,
    pub identity_deviation: f64,
}

/// Checks that the truncation `q` of `f` at degree `M` beats every trial
/// polynomial `p` of degree at most `M`, through the exact algebraic
/// identity `|f-p|^2 - |f-q|^2 = sum_lambda |b_lambda - a_lambda|^2`
/// (`b` the coefficients of `p`). Inner products are evaluated with a finer
/// rule of budget `fine_degree`, chosen large enough that all products
/// involved stay inside its exactness range.
pub fn optimality_residual_check<F>(
    rs: &RootSystem,
    m: i64,
    f: F,
    f_degree_bound: i64,
    trials: &[CharacterExpansion],
) -> Result<OptimalityReport>
where
    F: Fn(&DualPoint) -> Complex64,
{
    let rule = build_rule(rs, m)?;
    let q = expansion_coefficients(rs, &rule, &f)?;

    // Finer rule: products f * conj(g) have m-degree at most 2 * bound,
    // within exactness 2 M' + 1 for M' = bound.
    let fine_degree = f_degree_bound.max(m);
    let fine = build_rule(rs, fine_degree)?;
    let nf: Vec<Complex64> = fine.nodes().iter().map(&f).collect();
    let nq: Vec<Complex64> = fine
        .nodes()
        .iter()
        .map(|x| q.eval(rs, x))
        .collect::<Result<_>>()?;

    let scale = rs.center_order() as f64 * (fine.level() as f64).powi(rs.rank() as i32);
    let norm2 = |values: &[Complex64]| -> f64 {
        values
            .iter()
            .zip(fine.weights())
            .map(|(v, w)| v.norm_sqr() * w)
            .sum::<f64>()
            / scale
    };

    // Residual orthogonality, measured by re-expanding f - q at the coarse
    // rule itself.
    let residual = expansion_coefficients(rs, &rule, |x| f(x) - q.eval(rs, x).unwrap())?;
    let max_residual = residual
        .iter()
        .map(|(_, c)| c.norm())
        .fold(0.0f64, f64::max);

    let fq: Vec<Complex64> = nf.iter().zip(&nq).map(|(a, b)| a - b).collect();
    let base = norm2(&fq);
    let mut report_trials = Vec::with_capacity(trials.len());
    for p in trials {
        let np: Vec<Complex64> = fine
            .nodes()
            .iter()
            .map(|x| p.eval(rs, x))
            .collect::<Result<_>>()?;
        let fp: Vec<Complex64> = nf.iter().zip(&np).map(|(a, b)| a - b).collect();
        let gap = norm2(&fp) - base;
        let coeff_gap: f64 = dominant_weights_up_to(rs, m)
            .iter()
            .map(|lam| (p.get(lam) - q.get(lam)).norm_sqr())
            .sum();
        report_trials.push(TrialGap {
            gap,
            identity_deviation: (gap - coeff_gap).abs(),
        });
    }
    Ok(OptimalityReport {
        max_residual,
        trials: report_trials,
    })
}
