//! Numerical evaluation of `S`-functions, characters and the weight `K`.
//!
//! The `S`-function of a strictly dominant weight `mu` is the alternating
//! orbit sum `S_mu(x) = sum_w (-1)^{l(w)} e^{2 pi i <w mu, x>}`; the Weyl
//! character formula writes every irreducible character as the quotient
//! `chi_lambda = S_{lambda+rho} / S_rho`. At a lattice point of level `N`
//! every pairing `<w mu, x>` is a rational with denominator `c_G * N`, so
//! each exponential is read off a precomputed table of roots of unity and
//! the only rounding left is in the compensated summation itself. Sums run
//! in orbit generation order, which makes values reproducible bit for bit.
//!
//! Functions taking `&[f64]` coordinates evaluate the same sums directly
//! with `sin`/`cos` at arbitrary real points; the grid-quadrature oracle in
//! [`crate::cubature`] is built exclusively on that path.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::lattice::{adjugate_times_tail, DualPoint};
use crate::rootsys::{RootSystem, SignedWeightOrbit, Weight};
use crate::{Error, Result};

/// Precomputed roots of unity `e^{2 pi i k / D}`, `k = 0..D-1`.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    denom: i64,
    values: Vec<Complex64>,
}

impl PhaseTable {
    pub fn new(denom: i64) -> Self {
        assert!(denom >= 1);
        let values = (0..denom)
            .map(|k| {
                let theta = TAU * k as f64 / denom as f64;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        PhaseTable { denom, values }
    }

    /// Table matching the pairing denominators of a point: `c_G * N`.
    pub fn for_point(rs: &RootSystem, x: &DualPoint) -> Self {
        PhaseTable::new(rs.center_order() * x.level())
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// `e^{2 pi i numer / D}` for any integer numerator.
    #[inline]
    pub fn phase(&self, numer: i64) -> Complex64 {
        self.values[numer.rem_euclid(self.denom) as usize]
    }
}

/// Compensated (Kahan) accumulator for complex sums in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum_re: f64,
    sum_im: f64,
    c_re: f64,
    c_im: f64,
}

impl KahanSum {
    #[inline]
    fn add(&mut self, v: Complex64) {
        let y = v.re - self.c_re;
        let t = self.sum_re + y;
        self.c_re = (t - self.sum_re) - y;
        self.sum_re = t;
        let y = v.im - self.c_im;
        let t = self.sum_im + y;
        self.c_im = (t - self.sum_im) - y;
        self.sum_im = t;
    }

    #[inline]
    fn value(&self) -> Complex64 {
        Complex64::new(self.sum_re, self.sum_im)
    }
}

/// Alternating orbit sum at a lattice point, given `t = adj(A) * s` so each
/// pairing numerator is the dot product `nu . t`.
pub(crate) fn orbit_sum(orbit: &SignedWeightOrbit, t: &[i64], table: &PhaseTable) -> Complex64 {
    let mut acc = KahanSum::default();
    for (nu, sign) in orbit.iter() {
        let numer: i64 = nu.iter().zip(t).map(|(a, b)| a * b).sum();
        let phase = table.phase(numer);
        acc.add(if sign > 0 { phase } else { -phase });
    }
    acc.value()
}

/// Like [`orbit_sum`] but with each term scaled by the coordinate `nu_j`,
/// i.e. the image of the sum under the derivation along the `j`-th simple
/// coroot (which multiplies `e^{2 pi i <nu, x>}` by `<nu, alpha_check_j>`).
pub(crate) fn orbit_sum_derived(
    orbit: &SignedWeightOrbit,
    t: &[i64],
    table: &PhaseTable,
    j: usize,
) -> Complex64 {
    let mut acc = KahanSum::default();
    for (nu, sign) in orbit.iter() {
        let numer: i64 = nu.iter().zip(t).map(|(a, b)| a * b).sum();
        let scale = (sign as f64) * nu[j] as f64;
        acc.add(table.phase(numer) * scale);
    }
    acc.value()
}

/// `S_{lambda+rho}(x)` for a dominant `lambda` by the alternating orbit sum.
pub fn s_function(rs: &RootSystem, lambda: &Weight, x: &DualPoint) -> Result<Complex64> {
    let orbit = rs.signed_weyl_orbit(&lambda.plus(&Weight::rho(rs.rank())))?;
    let table = PhaseTable::for_point(rs, x);
    let t = adjugate_times_tail(rs, x);
    Ok(orbit_sum(&orbit, &t, &table))
}

/// The Weyl denominator through its product form,
/// `prod_{alpha > 0} 2 i sin(pi <alpha, x>)`; agrees with the orbit sum of
/// `rho` but is evaluated without any orbit machinery.
pub fn s_rho_product(rs: &RootSystem, x: &DualPoint) -> Complex64 {
    let level = x.level() as f64;
    let mut value = Complex64::new(1.0, 0.0);
    for alpha in rs.positive_roots() {
        // <alpha, x> = sum_i a_i s_i / N.
        let numer: i64 = alpha.iter().zip(x.tail()).map(|(a, s)| a * s).sum();
        let s = (std::f64::consts::PI * numer as f64 / level).sin();
        value *= Complex64::new(0.0, 2.0 * s);
    }
    value
}

/// Irreducible character `chi_lambda(x) = S_{lambda+rho}(x) / S_rho(x)`.
/// Defined only at interior points, where `S_rho` cannot vanish.
pub fn character(rs: &RootSystem, lambda: &Weight, x: &DualPoint) -> Result<Complex64> {
    if !x.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    let table = PhaseTable::for_point(rs, x);
    let t = adjugate_times_tail(rs, x);
    let rho = Weight::rho(rs.rank());
    let denom = orbit_sum(&rs.signed_weyl_orbit(&rho)?, &t, &table);
    let numer = orbit_sum(&rs.signed_weyl_orbit(&lambda.plus(&rho))?, &t, &table);
    Ok(numer / denom)
}

/// The tuple `(X_1, ..., X_n) = (chi_{omega_1}(x), ..., chi_{omega_n}(x))`.
pub fn fundamental_characters(rs: &RootSystem, x: &DualPoint) -> Result<Vec<Complex64>> {
    if !x.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    let n = rs.rank();
    let table = PhaseTable::for_point(rs, x);
    let t = adjugate_times_tail(rs, x);
    let rho = Weight::rho(n);
    let denom = orbit_sum(&rs.signed_weyl_orbit(&rho)?, &t, &table);
    (0..n)
        .map(|j| {
            let mut coords = vec![0i64; n];
            coords[j] = 1;
            let orbit = rs.signed_weyl_orbit(&Weight::new(coords).plus(&rho))?;
            Ok(orbit_sum(&orbit, &t, &table) / denom)
        })
        .collect()
}

/// The cubature weight `K(x) = |S_rho(x)|^2`; zero on the boundary.
pub fn k_function(rs: &RootSystem, x: &DualPoint) -> Result<f64> {
    if !x.is_interior() {
        return Ok(0.0);
    }
    let s = s_function(rs, &Weight::zero(rs.rank()), x)?;
    Ok(s.norm_sqr())
}

/// Complex conjugate of `chi_{omega_j}(x)` (0-indexed `j`). By the action of
/// the opposition element it equals `chi_{omega_{sigma(j)}}(x)`.
pub fn conjugate_value(rs: &RootSystem, j: usize, x: &DualPoint) -> Result<Complex64> {
    let mut coords = vec![0i64; rs.rank()];
    coords[j] = 1;
    Ok(character(rs, &Weight::new(coords), x)?.conj())
}

/// Determinant of the Jacobian `J_{jk} = D_{alpha_check_j} chi_{omega_k}(x)`
/// of the fundamental characters with respect to the natural torus
/// coordinates. Steinberg's identity says `det(J) = S_rho(x)`; this routine
/// computes the determinant only, so the identity stays a testable contract.
///
/// Each derivation acts exactly on orbit sums (`e^{2 pi i <nu, x>}` scaled by
/// the integer `<nu, alpha_check_j> = nu_j`) and the quotient rule supplies
/// the character derivatives.
pub fn steinberg_jacobian(rs: &RootSystem, x: &DualPoint) -> Result<Complex64> {
    if !x.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    let n = rs.rank();
    let table = PhaseTable::for_point(rs, x);
    let t = adjugate_times_tail(rs, x);
    let rho = Weight::rho(n);
    let rho_orbit = rs.signed_weyl_orbit(&rho)?;
    let s_rho = orbit_sum(&rho_orbit, &t, &table);
    let d_rho: Vec<Complex64> = (0..n)
        .map(|j| orbit_sum_derived(&rho_orbit, &t, &table, j))
        .collect();

    let mut jac = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        let mut coords = vec![0i64; n];
        coords[k] = 1;
        let orbit = rs.signed_weyl_orbit(&Weight::new(coords).plus(&rho))?;
        let s_k = orbit_sum(&orbit, &t, &table);
        for (j, row) in jac.iter_mut().enumerate() {
            let d_k = orbit_sum_derived(&orbit, &t, &table, j);
            // d(S_k / S_rho) = (dS_k * S_rho - S_k * dS_rho) / S_rho^2
            row[k] = (d_k * s_rho - s_k * d_rho[j]) / (s_rho * s_rho);
        }
    }
    Ok(determinant(jac))
}

/// Complex determinant by Gaussian elimination with partial pivoting.
fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .norm_sqr()
                    .partial_cmp(&m[b][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if m[pivot][col].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            let (upper, lower) = m.split_at_mut(r);
            for (a, b) in lower[0][col..n].iter_mut().zip(&upper[col][col..n]) {
                *a -= factor * b;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Evaluation at arbitrary real points (simple-coroot coordinates). No phase
// table: plain floating-point exponentials. This is the independent path the
// grid oracle integrates with.
// ---------------------------------------------------------------------------

impl SignedWeightOrbit {
    /// The alternating exponential sum of this orbit at a point given by
    /// real simple-coroot coordinates; the pairing with a weight `nu` is the
    /// plain dot product `nu . coords`.
    pub fn alternating_sum_at(&self, coords: &[f64]) -> Complex64 {
        let mut acc = KahanSum::default();
        for (nu, sign) in self.iter() {
            let pairing: f64 = nu.iter().zip(coords).map(|(&a, &b)| a as f64 * b).sum();
            let theta = TAU * pairing;
            let v = Complex64::new(theta.cos(), theta.sin());
            acc.add(if sign > 0 { v } else { -v });
        }
        acc.value()
    }
}

/// `S_{lambda+rho}` at a point given by real simple-coroot coordinates.
pub fn s_function_real(rs: &RootSystem, lambda: &Weight, coords: &[f64]) -> Result<Complex64> {
    let orbit = rs.signed_weyl_orbit(&lambda.plus(&Weight::rho(rs.rank())))?;
    Ok(orbit.alternating_sum_at(coords))
}

/// `chi_lambda` at a real interior point, as the `S`-quotient.
pub fn character_real(rs: &RootSystem, lambda: &Weight, coords: &[f64]) -> Result<Complex64> {
    let denom = s_function_real(rs, &Weight::zero(rs.rank()), coords)?;
    let numer = s_function_real(rs, lambda, coords)?;
    Ok(numer / denom)
}

/// `|S_rho|^2` at a real point.
pub fn k_function_real(rs: &RootSystem, coords: &[f64]) -> Result<f64> {
    Ok(s_function_real(rs, &Weight::zero(rs.rank()), coords)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_efo;
    use crate::rootsys::LieType;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name.parse::<LieType>().unwrap()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn phase_table_basics() {
        let t = PhaseTable::new(8);
        assert_eq!(t.phase(0), Complex64::new(1.0, 0.0));
        assert!(close(t.phase(2), Complex64::new(0.0, 1.0), 1e-15));
        assert!(close(t.phase(-2), Complex64::new(0.0, -1.0), 1e-15));
        for k in 0..8 {
            assert!((t.phase(k).norm() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn s_functions_vanish_on_the_boundary() {
        for name in ["A2", "B2", "C3", "G2"] {
            let r = rs(name);
            let level = r.coxeter_number() + 4;
            let w = r.weyl_order() as f64;
            for p in enumerate_efo(&r, level, false) {
                if p.is_interior() {
                    continue;
                }
                for lam in [Weight::zero(r.rank()), Weight::rho(r.rank())] {
                    let s = s_function(&r, &lam, &p).unwrap();
                    assert!(s.norm() <= 1e-10 * w, "{name} at {:?}", p.kac());
                }
            }
        }
    }

    #[test]
    fn g2_weight_at_the_order_seven_point_is_49() {
        let g2 = rs("G2");
        let p = DualPoint::from_tail(&g2, 14, &[2, 2]);
        let k = k_function(&g2, &p).unwrap();
        assert!((k - 49.0).abs() <= 1e-9, "got {k}");
    }

    #[test]
    fn g2_m8_weight_multiset() {
        let g2 = rs("G2");
        let mut got: Vec<f64> = enumerate_efo(&g2, 14, true)
            .iter()
            .map(|p| k_function(&g2, p).unwrap())
            .collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut expect = [
            0.364666, 7.36467, 30.1836, 37.1836, 7.36467, 11.4517, 49., 37.1836, 11.4517, 4.45175,
        ];
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, e) in got.iter().zip(expect) {
            assert!((g - e).abs() <= 1e-4, "{g} vs {e}");
        }
    }

    #[test]
    fn product_formula_matches_orbit_sum_at_g2_nodes() {
        let g2 = rs("G2");
        for p in enumerate_efo(&g2, 14, true) {
            let orbit = s_function(&g2, &Weight::zero(2), &p).unwrap();
            let product = s_rho_product(&g2, &p);
            assert!(close(orbit, product, 1e-9 * orbit.norm().max(1.0)));
        }
        // First listed interior point: |S_rho|^2 ~ 0.364666.
        let p = DualPoint::from_tail(&g2, 14, &[1, 1]);
        assert!((s_rho_product(&g2, &p).norm_sqr() - 0.364666).abs() <= 1e-4);
    }

    #[test]
    fn rank_one_closed_forms() {
        let a1 = rs("A1");
        for (k, s, n) in [(0i64, 1i64, 2i64), (2, 3, 7), (5, 2, 9)] {
            let x = DualPoint::from_tail(&a1, n, &[s]);
            let t = s as f64 / n as f64;
            let expect = Complex64::new(
                0.0,
                2.0 * (((k + 1) as f64) * std::f64::consts::PI * t).sin(),
            );
            let got = s_function(&a1, &Weight::new(vec![k]), &x).unwrap();
            assert!(close(got, expect, 1e-12), "k={k}: {got} vs {expect}");
            if x.is_interior() {
                // Chebyshev kernel of the second kind.
                let u = (((k + 1) as f64) * std::f64::consts::PI * t).sin()
                    / (std::f64::consts::PI * t).sin();
                let ch = character(&a1, &Weight::new(vec![k]), &x).unwrap();
                assert!(close(ch, Complex64::new(u, 0.0), 1e-12));
            }
        }
    }

    #[test]
    fn trivial_character_is_one() {
        for name in ["A1", "A3", "B2", "C3", "G2"] {
            let r = rs(name);
            let level = r.coxeter_number() + 3;
            for p in enumerate_efo(&r, level, true) {
                let c = character(&r, &Weight::zero(r.rank()), &p).unwrap();
                assert!(close(c, Complex64::new(1.0, 0.0), 1e-10), "{name}");
            }
        }
    }

    #[test]
    fn character_rejects_boundary_points() {
        let g2 = rs("G2");
        let p = DualPoint::from_tail(&g2, 6, &[0, 1]); // s_0 = 1, s_1 = 0
        assert!(!p.is_interior());
        assert!(matches!(
            character(&g2, &Weight::rho(2), &p),
            Err(Error::BoundaryPoint)
        ));
    }

    #[test]
    fn characters_are_affine_weyl_invariant() {
        // Evaluate the real-coordinate path at an interior point, a simple
        // reflection of it, and a coroot translate of it.
        for name in ["A2", "G2"] {
            let r = rs(name);
            let lam = Weight::new(vec![1, 2]);
            let c0 = [0.137, 0.211];
            let base = character_real(&r, &lam, &c0).unwrap();
            for j in 0..2 {
                // r_j: c -> c - <alpha_j, x> e_j with <alpha_j, x> = (A c)_j.
                let pair_j: f64 = (0..2).map(|k| r.cartan()[j][k] as f64 * c0[k]).sum();
                let mut refl = c0;
                refl[j] -= pair_j;
                let v = character_real(&r, &lam, &refl).unwrap();
                assert!(close(base, v, 1e-9), "{name} reflection {j}");
            }
            let shifted = [c0[0] + 1.0, c0[1] - 2.0];
            let v = character_real(&r, &lam, &shifted).unwrap();
            assert!(close(base, v, 1e-9), "{name} translation");
        }
    }

    #[test]
    fn skew_invariance_flips_sign_under_reflection() {
        for name in ["A2", "C2", "G2"] {
            let r = rs(name);
            let lam = Weight::new(vec![2, 1]);
            let c0 = [0.143, 0.197];
            let base = s_function_real(&r, &lam, &c0).unwrap();
            let pair0: f64 = (0..2).map(|k| r.cartan()[0][k] as f64 * c0[k]).sum();
            let refl = [c0[0] - pair0, c0[1]];
            let v = s_function_real(&r, &lam, &refl).unwrap();
            assert!(close(base, -v, 1e-9), "{name}");
        }
    }

    #[test]
    fn conjugation_permutes_fundamental_characters() {
        // A2: conj(X_1) = X_2 pointwise; G2: everything real.
        let a2 = rs("A2");
        for p in enumerate_efo(&a2, 9, true) {
            let x = fundamental_characters(&a2, &p).unwrap();
            let c = conjugate_value(&a2, 0, &p).unwrap();
            assert!(close(c, x[1], 1e-10));
        }
        let g2 = rs("G2");
        for p in enumerate_efo(&g2, 14, true) {
            let x = fundamental_characters(&g2, &p).unwrap();
            assert!(x[0].im.abs() <= 1e-10 && x[1].im.abs() <= 1e-10);
            let c = conjugate_value(&g2, 0, &p).unwrap();
            assert!(close(c, x[0], 1e-10));
        }
    }

    #[test]
    fn k_is_invariant_under_the_diagram_involution() {
        // For A2 the opposition element swaps the two coweight directions,
        // so points with mirrored Kac tails carry the same weight.
        let a2 = rs("A2");
        for p in enumerate_efo(&a2, 11, true) {
            let tail = p.tail();
            let mirrored = DualPoint::from_tail(&a2, 11, &[tail[1], tail[0]]);
            let a = k_function(&a2, &p).unwrap();
            let b = k_function(&a2, &mirrored).unwrap();
            assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn steinberg_identity_rank_one_and_two() {
        let a1 = rs("A1");
        let x = DualPoint::from_tail(&a1, 5, &[2]);
        let det = steinberg_jacobian(&a1, &x).unwrap();
        let s = s_function(&a1, &Weight::zero(1), &x).unwrap();
        assert!(close(det, s, 1e-10 * s.norm()));

        for name in ["A2", "G2"] {
            let r = rs(name);
            let level = r.coxeter_number() + 7;
            for p in enumerate_efo(&r, level, true).into_iter().take(5) {
                let det = steinberg_jacobian(&r, &p).unwrap();
                let s = s_function(&r, &Weight::zero(2), &p).unwrap();
                assert!(
                    (det - s).norm() <= 1e-8 * s.norm(),
                    "{name} at {:?}: {det} vs {s}",
                    p.kac()
                );
            }
        }
    }

    #[test]
    fn zero_theorem_spot_check_g2() {
        // Both m-degree-9 S-functions vanish at every interior level-14 node.
        let g2 = rs("G2");
        for p in enumerate_efo(&g2, 14, true) {
            for lam in [Weight::new(vec![1, 3]), Weight::new(vec![3, 0])] {
                let s = s_function(&g2, &lam, &p).unwrap();
                assert!(s.norm() <= 1e-9 * 12.0, "at {:?}: {s}", p.kac());
            }
        }
    }
}
