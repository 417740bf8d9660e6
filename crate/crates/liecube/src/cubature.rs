//! Gaussian cubature rules on the domain `Omega`.
//!
//! For a degree budget `M` the rule's nodes are the regular elements of
//! finite order `M + h` inside the fundamental simplex and its weights are
//! the values of `K = |S_rho|^2` there. The rule integrates
//! `int_Omega f K^{1/2} dX_1 ... dX_n` exactly for every polynomial `f` of
//! m-degree at most `2M + 1`, and the number of nodes equals the dimension
//! of the space of polynomials of m-degree at most `M` — the defining count
//! of a Gaussian rule.
//!
//! Polynomials in the fundamental-character variables are integrated by
//! evaluation: a sparse monomial map is evaluated at the node tuples
//! `(X_1(x), ..., X_n(x))`, never expanded into characters symbolically.
//!
//! The module also carries the verification machinery: the interpolation
//! (gram) matrix `(S_{lambda+rho}(x))` and its discrete orthogonality, a
//! brute-force scan of the separation property that underlies it, and a
//! midpoint grid oracle over the simplex that integrates the same weighted
//! integrands with plain floating-point exponentials, independent of the
//! phase-table path.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::lattice::{adjugate_times_tail, count_f_m, enumerate_efo, DualPoint};
use crate::orbitfn::{orbit_sum, PhaseTable};
use crate::rootsys::{LieType, RootSystem, Weight};
use crate::{Error, Result};

/// All dominant weights of m-degree at most `max_degree`, in ascending
/// lexicographic order. Their number is `|F_M|`, the node count of the rule.
pub fn dominant_weights_up_to(rs: &RootSystem, max_degree: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut coords = vec![0i64; rs.rank()];
    fn rec(comarks: &[i64], budget: i64, j: usize, coords: &mut [i64], out: &mut Vec<Weight>) {
        if j == coords.len() {
            out.push(Weight::new(coords.to_vec()));
            return;
        }
        let m = comarks[j];
        let mut v = 0i64;
        while v * m <= budget {
            coords[j] = v;
            rec(comarks, budget - v * m, j + 1, coords, out);
            v += 1;
        }
        coords[j] = 0;
    }
    if max_degree >= 0 {
        rec(rs.comarks(), max_degree, 0, &mut coords, &mut out);
    }
    out
}

/// Sparse polynomial in the variables `X_1, ..., X_n`, stored as a map from
/// exponent vectors to complex coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolynomialInX {
    terms: BTreeMap<Vec<u32>, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<u32>,
    coeff: [f64; 2],
}

impl PolynomialInX {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(rank: usize, c: Complex64) -> Self {
        let mut p = Self::new();
        p.add_term(vec![0; rank], c);
        p
    }

    /// Adds `c * X^e`, merging with an existing monomial.
    pub fn add_term(&mut self, exponents: Vec<u32>, c: Complex64) {
        let entry = self
            .terms
            .entry(exponents)
            .or_insert_with(|| Complex64::new(0.0, 0.0));
        *entry += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm_sqr() == 0.0)
    }

    /// Largest weighted degree `sum_j e_j * comark_j` over the monomials.
    pub fn m_degree(&self, comarks: &[i64]) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().zip(comarks).map(|(&x, &m)| x as i64 * m).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (exps, c) in &self.terms {
            let mut mono = *c;
            for (e, xi) in exps.iter().zip(x) {
                if *e > 0 {
                    mono *= xi.powu(*e);
                }
            }
            total += mono;
        }
        total
    }

    /// Conjugation on `Omega`: coefficients conjugated, exponent vectors
    /// permuted by the index involution `sigma`.
    pub fn conjugate(&self, sigma: &[usize]) -> PolynomialInX {
        let mut out = PolynomialInX::new();
        for (exps, c) in &self.terms {
            let mut permuted = vec![0u32; exps.len()];
            for (j, &e) in exps.iter().enumerate() {
                permuted[sigma[j]] = e;
            }
            out.add_term(permuted, c.conj());
        }
        out
    }

    /// JSON list of `{exponents, coeff: [re, im]}` objects.
    pub fn to_json(&self) -> String {
        let repr: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(e, c)| TermRepr {
                exponents: e.clone(),
                coeff: [c.re, c.im],
            })
            .collect();
        serde_json::to_string_pretty(&repr).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: Vec<TermRepr> =
            serde_json::from_str(s).map_err(|e| Error::InvalidFile(e.to_string()))?;
        let mut p = PolynomialInX::new();
        for t in repr {
            p.add_term(t.exponents, Complex64::new(t.coeff[0], t.coeff[1]));
        }
        Ok(p)
    }
}

/// A Gaussian cubature rule: interior nodes of level `M + h`, weights
/// `K(x) = |S_rho(x)|^2`, and the normalization
/// `(2 pi)^n / (c_G (M+h)^n)` in front of the weighted node sum.
#[derive(Debug, Clone)]
pub struct CubatureRule {
    lie_type: LieType,
    m: i64,
    level: i64,
    comarks: Vec<i64>,
    norm_const: f64,
    nodes: Vec<DualPoint>,
    weights: Vec<f64>,
    node_x: Vec<Vec<Complex64>>,
}

impl CubatureRule {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn degree(&self) -> i64 {
        self.m
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    pub fn nodes(&self) -> &[DualPoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Fundamental-character tuples `(X_1(x), ..., X_n(x))` per node.
    pub fn node_x(&self) -> &[Vec<Complex64>] {
        &self.node_x
    }

    /// Weighted node sum of given per-node values:
    /// `norm_const * sum_i values[i] * K_i`.
    pub fn integrate_node_values(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.nodes.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, w) in values.iter().zip(&self.weights) {
            acc += v * w;
        }
        acc * self.norm_const
    }

    /// Integrates `f` against `K^{1/2}` over `Omega` by evaluating it at the
    /// node tuples. The returned flag is false when `f` exceeds m-degree
    /// `2M + 1`, where the formula is only approximate.
    pub fn integrate(&self, f: &PolynomialInX) -> (Complex64, bool) {
        let values: Vec<Complex64> = self.node_x.iter().map(|x| f.eval(x)).collect();
        let value = self.integrate_node_values(&values);
        let exact = f.m_degree(&self.comarks) <= 2 * self.m + 1;
        (value, exact)
    }
}

/// Builds the rule for degree budget `M`: nodes are the interior points of
/// level `M + h`, weights the values of `K` there. The node count is checked
/// against the dimension of the degree-`M` polynomial space.
pub fn build_rule(rs: &RootSystem, m: i64) -> Result<CubatureRule> {
    assert!(m >= 0);
    let n = rs.rank();
    let level = m + rs.coxeter_number();
    let nodes = enumerate_efo(rs, level, true);
    assert_eq!(
        nodes.len() as u64,
        count_f_m(rs, m),
        "Gaussian node count must match the polynomial space dimension"
    );

    let table = PhaseTable::new(rs.center_order() * level);
    let rho = Weight::rho(n);
    let rho_orbit = rs.signed_weyl_orbit(&rho)?;
    let fund_orbits = (0..n)
        .map(|j| {
            let mut coords = vec![0i64; n];
            coords[j] = 1;
            rs.signed_weyl_orbit(&Weight::new(coords).plus(&rho))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut weights = Vec::with_capacity(nodes.len());
    let mut node_x = Vec::with_capacity(nodes.len());
    for node in &nodes {
        let t = adjugate_times_tail(rs, node);
        let s_rho = orbit_sum(&rho_orbit, &t, &table);
        let k = s_rho.norm_sqr();
        assert!(k > 0.0, "interior cubature weights are positive");
        weights.push(k);
        node_x.push(
            fund_orbits
                .iter()
                .map(|orbit| orbit_sum(orbit, &t, &table) / s_rho)
                .collect(),
        );
    }

    let norm_const =
        TAU.powi(n as i32) / (rs.center_order() as f64 * (level as f64).powi(n as i32));
    Ok(CubatureRule {
        lie_type: rs.lie_type(),
        m,
        level,
        comarks: rs.comarks().to_vec(),
        norm_const,
        nodes,
        weights,
        node_x,
    })
}

/// Interpolation matrix `X = (S_{lambda+rho}(x))`: rows over the dominant
/// weights of m-degree at most `M` (lexicographic), columns over the rule
/// nodes (enumeration order).
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub rows: Vec<Weight>,
    pub level: i64,
    pub matrix: Vec<Vec<Complex64>>,
}

impl GramMatrix {
    /// Maximum deviation of `X X^dagger` from `c_G (M+h)^n I`.
    pub fn orthogonality_deviation(&self, rs: &RootSystem) -> f64 {
        let scale = rs.center_order() as f64 * (self.level as f64).powi(rs.rank() as i32);
        let k = self.rows.len();
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b) in self.matrix[i].iter().zip(&self.matrix[j]) {
                    acc += a * b.conj();
                }
                let expect = if i == j { scale } else { 0.0 };
                worst = worst.max((acc - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst / scale
    }
}

pub fn gram_matrix(rs: &RootSystem, m: i64) -> Result<GramMatrix> {
    let rule = build_rule(rs, m)?;
    let rows = dominant_weights_up_to(rs, m);
    let table = PhaseTable::new(rs.center_order() * rule.level());
    let ts: Vec<Vec<i64>> = rule
        .nodes()
        .iter()
        .map(|x| adjugate_times_tail(rs, x))
        .collect();
    let rho = Weight::rho(rs.rank());
    let mut matrix = Vec::with_capacity(rows.len());
    for lam in &rows {
        let orbit = rs.signed_weyl_orbit(&lam.plus(&rho))?;
        matrix.push(ts.iter().map(|t| orbit_sum(&orbit, t, &table)).collect());
    }
    Ok(GramMatrix {
        rows,
        level: rule.level(),
        matrix,
    })
}

/// Maximum deviation from `delta_{lambda mu}` of the normalized discrete
/// pairing `(1/(c_G (M+h)^n)) sum_x S_{lambda+rho}(x) conj(S_{mu+rho}(x))`,
/// over the asymmetric range `m-deg(lambda) <= M+1`, `m-deg(mu) <= M`.
pub fn discrete_orthogonality_deviation(rs: &RootSystem, m: i64) -> Result<f64> {
    let level = m + rs.coxeter_number();
    let nodes = enumerate_efo(rs, level, true);
    let table = PhaseTable::new(rs.center_order() * level);
    let ts: Vec<Vec<i64>> = nodes.iter().map(|x| adjugate_times_tail(rs, x)).collect();
    let rho = Weight::rho(rs.rank());
    let scale = rs.center_order() as f64 * (level as f64).powi(rs.rank() as i32);

    let lams = dominant_weights_up_to(rs, m + 1);
    let mus = dominant_weights_up_to(rs, m);
    let values: Vec<Vec<Complex64>> = lams
        .iter()
        .map(|lam| {
            let orbit = rs.signed_weyl_orbit(&lam.plus(&rho))?;
            Ok(ts.iter().map(|t| orbit_sum(&orbit, t, &table)).collect())
        })
        .collect::<Result<_>>()?;
    // Every mu also occurs among the lambdas; reuse its row of values.
    let row_of = |mu: &Weight| lams.binary_search(mu).expect("mu is a lambda");

    let mut worst: f64 = 0.0;
    for (i, lam) in lams.iter().enumerate() {
        for mu in &mus {
            let mu_values = &values[row_of(mu)];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in values[i].iter().zip(mu_values) {
                acc += a * b.conj();
            }
            let expect = if lam == mu { 1.0 } else { 0.0 };
            worst = worst.max((acc / scale - Complex64::new(expect, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Midpoint-rule integration over the fundamental simplex on a uniform
/// barycentric grid, in simple-coroot coordinates (the Lebesgue measure that
/// gives the coroot-lattice cell volume 1). The integrand receives strictly
/// interior points as real coordinate slices; cells whose center falls on
/// the boundary are skipped, so integrands that only exist on the open
/// simplex (quotients by `S_rho`) are safe, and the weighted integrands this
/// oracle exists for vanish there anyway.
///
/// Restricted to rank at most 3; `resolution` is the number of subdivisions
/// per barycentric axis.
pub fn grid_quadrature_oracle<F>(
    rs: &RootSystem,
    integrand: F,
    resolution: usize,
) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64,
{
    let n = rs.rank();
    if n > 3 {
        return Err(Error::RankTooLarge {
            what: "grid quadrature",
            rank: n,
            max: 3,
        });
    }
    if resolution < 2 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let r = resolution as i64;

    // Vertices of the simplex: 0 and omega_check_j / m_j; in simple-coroot
    // coordinates the edge matrix columns are A^{-1} e_j / m_j, with exact
    // determinant 1 / (c_G * prod m_j).
    let vertices: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let q = &rs.cartan_inverse()[i][j];
                    q.to_f64().unwrap() / rs.marks()[j] as f64
                })
                .collect()
        })
        .collect();
    let volume_scale = 1.0 / (rs.center_order() as f64 * rs.marks().iter().product::<i64>() as f64);

    let mut sum_re = 0.0f64;
    let mut sum_im = 0.0f64;
    let mut index = vec![0i64; n];
    let mut x = vec![0.0f64; n];
    loop {
        // Center is interior exactly when sum (2 i_k + 1) < 2 R, decided in
        // integer arithmetic.
        let odd_sum: i64 = index.iter().map(|&i| 2 * i + 1).sum();
        if odd_sum < 2 * r {
            x.iter_mut().for_each(|xi| *xi = 0.0);
            for (k, idx) in index.iter().enumerate() {
                let u = (*idx as f64 + 0.5) / r as f64;
                for i in 0..n {
                    x[i] += u * vertices[k][i];
                }
            }
            let v = integrand(&x);
            sum_re += v.re;
            sum_im += v.im;
        }
        // Advance the multi-index.
        let mut k = 0;
        loop {
            if k == n {
                let cell = volume_scale / (r as f64).powi(n as i32);
                return Ok(Complex64::new(sum_re * cell, sum_im * cell));
            }
            index[k] += 1;
            if index[k] < r {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

/// Brute-force scan of the separation property behind discrete
/// orthogonality: no dominant `phi != 0` with m-degree below `2(M+h)` may
/// lie in `(M+h) Q`. Membership is decided by an exact rational solve
/// against the simple-root basis. Returns the counterexamples (expected
/// empty).
pub fn separation_check(rs: &RootSystem, m: i64) -> Result<Vec<Weight>> {
    let n = rs.rank();
    if n > 3 {
        return Err(Error::RankTooLarge {
            what: "separation scan",
            rank: n,
            max: 3,
        });
    }
    let level = m + rs.coxeter_number();
    let mut bad = Vec::new();
    for phi in dominant_weights_up_to(rs, 2 * level - 1) {
        if phi.coords().iter().all(|&c| c == 0) {
            continue;
        }
        // phi in (M+h) Q iff (A^T)^{-1} phi / (M+h) is integral, i.e.
        // c_G * (M+h) divides every component of adj(A)^T phi.
        let divisor = rs.center_order() * level;
        let integral = (0..n).all(|i| {
            let numer: i64 = (0..n)
                .map(|j| rs.cartan_adjugate()[j][i] * phi.coords()[j])
                .sum();
            numer % divisor == 0
        });
        if integral {
            bad.push(phi);
        }
    }
    Ok(bad)
}

/// The image of the interior level-`N` points under
/// `x -> (X_1(x), ..., X_n(x))`, flattened to real coordinates of the
/// sigma-fixed real form: a sigma-fixed index contributes its real part, a
/// swapped pair `(j, sigma(j))` contributes `(Re X_j, Im X_j)`.
pub fn omega_cloud(rs: &RootSystem, level: i64) -> Result<Vec<Vec<f64>>> {
    let n = rs.rank();
    if n > 3 {
        return Err(Error::RankTooLarge {
            what: "omega cloud",
            rank: n,
            max: 3,
        });
    }
    let sigma = rs.conjugation_permutation();
    enumerate_efo(rs, level, true)
        .iter()
        .map(|p| {
            let x = crate::orbitfn::fundamental_characters(rs, p)?;
            let mut out = vec![0.0f64; n];
            for j in 0..n {
                if sigma[j] == j {
                    out[j] = x[j].re;
                } else if j < sigma[j] {
                    out[j] = x[j].re;
                    out[sigma[j]] = x[j].im;
                }
            }
            Ok(out)
        })
        .collect()
}

// --------------------------------------------------------------------------
// Serialized rule files.
// --------------------------------------------------------------------------

/// JSON form of a rule. Node coordinates are kept as exact `"p/q"` strings
/// so that load/save round-trips are lossless.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleFile {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    #[serde(rename = "M")]
    pub m: i64,
    pub level: i64,
    pub norm_const: f64,
    pub nodes: Vec<RuleNodeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<RuleMetadata>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleNodeFile {
    pub kac: Vec<i64>,
    /// Simple-coroot coordinates as exact rationals `"p/q"`.
    pub coords: Vec<String>,
    #[serde(rename = "X")]
    pub x: Vec<[f64; 2]>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleMetadata {
    pub method: String,
    pub created: String,
    pub tool_version: String,
}

impl CubatureRule {
    pub fn to_file(&self, metadata: Option<RuleMetadata>) -> RuleFile {
        RuleFile {
            lie_type: self.lie_type.to_string(),
            rank: self.lie_type.rank(),
            m: self.m,
            level: self.level,
            norm_const: self.norm_const,
            nodes: self
                .nodes
                .iter()
                .zip(&self.weights)
                .zip(&self.node_x)
                .map(|((node, &w), x)| RuleNodeFile {
                    kac: node.kac().to_vec(),
                    coords: node
                        .alpha_check_coords()
                        .iter()
                        .map(|q| q.to_string())
                        .collect(),
                    x: x.iter().map(|c| [c.re, c.im]).collect(),
                    weight: w,
                })
                .collect(),
            metadata,
        }
    }

    /// Rebuilds a rule from its file form, recomputing the exact node
    /// coordinates from the Kac data and checking them against the stored
    /// rational strings.
    pub fn from_file(file: &RuleFile) -> Result<CubatureRule> {
        let lie_type: LieType = file.lie_type.parse()?;
        if lie_type.rank() != file.rank {
            return Err(Error::InvalidFile(format!(
                "rank {} does not match type {}",
                file.rank, file.lie_type
            )));
        }
        let rs = RootSystem::new(lie_type)?;
        let mut nodes = Vec::with_capacity(file.nodes.len());
        let mut weights = Vec::with_capacity(file.nodes.len());
        let mut node_x = Vec::with_capacity(file.nodes.len());
        for nf in &file.nodes {
            if nf.kac.len() != file.rank + 1 {
                return Err(Error::InvalidFile("bad Kac length".into()));
            }
            if file.level < 1 || nf.kac.iter().any(|&s| s < 0) {
                return Err(Error::InvalidFile(format!(
                    "invalid Kac coordinates {:?}",
                    nf.kac
                )));
            }
            let weighted: i64 = nf.kac[1..].iter().zip(rs.marks()).map(|(s, m)| s * m).sum();
            if weighted > file.level {
                return Err(Error::InvalidFile(format!(
                    "Kac coordinates {:?} exceed level {}",
                    nf.kac, file.level
                )));
            }
            let point = DualPoint::from_tail(&rs, file.level, &nf.kac[1..]);
            if point.kac() != nf.kac.as_slice() {
                return Err(Error::InvalidFile(format!(
                    "inconsistent Kac coordinates {:?}",
                    nf.kac
                )));
            }
            let expect: Vec<String> = point
                .alpha_check_coords()
                .iter()
                .map(|q| q.to_string())
                .collect();
            if expect != nf.coords {
                return Err(Error::InvalidFile(format!(
                    "coordinates of node {:?} do not match the Kac data",
                    nf.kac
                )));
            }
            nodes.push(point);
            weights.push(nf.weight);
            node_x.push(
                nf.x.iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect(),
            );
        }
        Ok(CubatureRule {
            lie_type,
            m: file.m,
            level: file.level,
            comarks: rs.comarks().to_vec(),
            norm_const: file.norm_const,
            nodes,
            weights,
            node_x,
        })
    }
}
