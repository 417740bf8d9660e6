//! Elements of finite adjoint order as exact rational lattice points.
//!
//! An element of adjoint order `N` is represented, up to conjugacy, by a
//! point `x = (1/N) * sum_j s_j * omega_check_j` of the fundamental domain,
//! and the nonnegative integers `[s_0, s_1, ..., s_n]` with
//! `sum_j m_j s_j = N` (marks `m_j`, `m_0 = 1`) are its Kac coordinates.
//! The point is regular — interior to the fundamental simplex — exactly when
//! every Kac coordinate is positive. Listing conjugacy classes is therefore
//! pure integer enumeration, and all coordinates stay rational with
//! denominators dividing `c_G * N`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::rootsys::{RootSystem, Weight};

/// One element of finite order: its level (adjoint order), Kac coordinates,
/// and exact coordinates in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPoint {
    level: i64,
    /// `[s_0, s_1, ..., s_n]`.
    kac: Vec<i64>,
    /// `x = (1/N) A^{-1} s` in the simple-coroot basis.
    alpha_check: Vec<BigRational>,
}

impl DualPoint {
    /// Builds the point of the given level from the tail `(s_1, ..., s_n)`
    /// of Kac coordinates; `s_0` is determined by the level constraint.
    /// Panics if the tail does not fit inside the level.
    pub fn from_tail(rs: &RootSystem, level: i64, tail: &[i64]) -> Self {
        assert_eq!(tail.len(), rs.rank());
        assert!(level >= 1);
        assert!(tail.iter().all(|&s| s >= 0));
        let weighted: i64 = tail.iter().zip(rs.marks()).map(|(s, m)| s * m).sum();
        let s0 = level - weighted;
        assert!(s0 >= 0, "Kac coordinates exceed the level");
        let mut kac = Vec::with_capacity(rs.rank() + 1);
        kac.push(s0);
        kac.extend_from_slice(tail);

        let alpha_check = (0..rs.rank())
            .map(|i| {
                let numer: i64 = rs.cartan_adjugate()[i]
                    .iter()
                    .zip(tail)
                    .map(|(a, s)| a * s)
                    .sum();
                BigRational::new(BigInt::from(numer), BigInt::from(rs.center_order() * level))
            })
            .collect();
        DualPoint {
            level,
            kac,
            alpha_check,
        }
    }

    /// The adjoint order `N` the point was constructed at.
    pub fn level(&self) -> i64 {
        self.level
    }

    /// Kac coordinates `[s_0, ..., s_n]`.
    pub fn kac(&self) -> &[i64] {
        &self.kac
    }

    /// The tail `(s_1, ..., s_n)`, i.e. `N` times the coweight coordinates.
    pub fn tail(&self) -> &[i64] {
        &self.kac[1..]
    }

    /// Exact coordinates in the simple-coroot basis.
    pub fn alpha_check_coords(&self) -> &[BigRational] {
        &self.alpha_check
    }

    /// Exact coordinates in the fundamental-coweight basis, `s_j / N`.
    pub fn omega_check_coords(&self) -> Vec<BigRational> {
        self.tail()
            .iter()
            .map(|&s| BigRational::new(BigInt::from(s), BigInt::from(self.level)))
            .collect()
    }

    /// Regular points are interior to the fundamental simplex.
    pub fn is_interior(&self) -> bool {
        self.kac.iter().all(|&s| s > 0)
    }

    /// The least `N'` with `Ad(g)^{N'} = 1`: the level divided by the gcd of
    /// all Kac coordinates.
    pub fn strict_ad_order(&self) -> i64 {
        let g = self.kac.iter().fold(0i64, |acc, &s| gcd(acc, s));
        self.level / g
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All conjugacy classes of adjoint order `level`, i.e. all nonnegative
/// (positive, if `interior_only`) integer solutions of the Kac constraint,
/// in ascending lexicographic order on `(s_1, ..., s_n)`.
///
/// The list may be empty: there is no interior point below level `h`.
pub fn enumerate_efo(rs: &RootSystem, level: i64, interior_only: bool) -> Vec<DualPoint> {
    assert!(level >= 1);
    let n = rs.rank();
    let lo = i64::from(interior_only);
    let mut out = Vec::new();
    let mut tail = vec![0i64; n];
    // s_0 >= lo consumes `lo` of the budget up front.
    fill(rs, level - lo, lo, 0, &mut tail, &mut out, level);
    out
}

fn fill(
    rs: &RootSystem,
    budget: i64,
    lo: i64,
    j: usize,
    tail: &mut [i64],
    out: &mut Vec<DualPoint>,
    level: i64,
) {
    if budget < 0 {
        return;
    }
    if j == tail.len() {
        out.push(DualPoint::from_tail(rs, level, tail));
        return;
    }
    let m = rs.marks()[j];
    let mut s = lo;
    while s * m <= budget {
        tail[j] = s;
        fill(rs, budget - s * m, lo, j + 1, tail, out, level);
        s += 1;
    }
    tail[j] = 0;
}

/// Number of dominant-side solutions `sum_{j=0}^n m_j s_j = M` with all
/// `s_j >= 0`; by the shift `s_j = t_j + 1` this also counts the interior
/// points of level `M + h`.
pub fn count_f_m(rs: &RootSystem, m: i64) -> u64 {
    if m < 0 {
        return 0;
    }
    // s_0 soaks up any remainder, so count tails with weighted sum <= M.
    fn count(marks: &[i64], budget: i64) -> u64 {
        match marks {
            [] => 1,
            [m0, rest @ ..] => {
                let mut total = 0;
                let mut s = 0i64;
                while s * m0 <= budget {
                    total += count(rest, budget - s * m0);
                    s += 1;
                }
                total
            }
        }
    }
    count(rs.marks(), m)
}

/// Exact natural pairing `<lambda, x>` of a weight with a dual point,
/// `lambda^T A^{-1} s / N`.
pub fn pairing(rs: &RootSystem, lambda: &Weight, x: &DualPoint) -> BigRational {
    BigRational::new(
        BigInt::from(pairing_numerator(rs, lambda.coords(), x)),
        BigInt::from(rs.center_order() * x.level()),
    )
}

/// Integer numerator of `<lambda, x>` over the implicit denominator
/// `c_G * N`: `lambda^T adj(A) s`.
pub fn pairing_numerator(rs: &RootSystem, lambda: &[i64], x: &DualPoint) -> i64 {
    let adj = rs.cartan_adjugate();
    let tail = x.tail();
    let mut total = 0i64;
    for (li, row) in lambda.iter().zip(adj) {
        let dot: i64 = row.iter().zip(tail).map(|(a, s)| a * s).sum();
        total += li * dot;
    }
    total
}

/// `adj(A) * s`, precomputed once per point when many weights are paired
/// against it; then `<lambda, x> = lambda . t / (c_G * N)`.
pub(crate) fn adjugate_times_tail(rs: &RootSystem, x: &DualPoint) -> Vec<i64> {
    rs.cartan_adjugate()
        .iter()
        .map(|row| row.iter().zip(x.tail()).map(|(a, s)| a * s).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::LieType;
    use num_traits::{ToPrimitive, Zero};
    use std::collections::BTreeSet;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name.parse::<LieType>().unwrap()).unwrap()
    }

    #[test]
    fn g2_level_14_interior_points() {
        let g2 = rs("G2");
        let points = enumerate_efo(&g2, 14, true);
        assert_eq!(points.len(), 10);
        let kacs: BTreeSet<Vec<i64>> = points.iter().map(|p| p.kac().to_vec()).collect();
        let expect: BTreeSet<Vec<i64>> = [
            vec![9, 1, 1],
            vec![7, 2, 1],
            vec![5, 3, 1],
            vec![3, 4, 1],
            vec![1, 5, 1],
            vec![6, 1, 2],
            vec![4, 2, 2],
            vec![2, 3, 2],
            vec![3, 1, 3],
            vec![1, 2, 3],
        ]
        .into_iter()
        .collect();
        assert_eq!(kacs, expect);

        // [9,1,1] sits at (1/14, 1/14) and [6,1,2] at (1/14, 1/7) in
        // coweight coordinates.
        let frac = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let p911 = points.iter().find(|p| p.kac() == [9, 1, 1]).unwrap();
        assert_eq!(p911.omega_check_coords(), vec![frac(1, 14), frac(1, 14)]);
        let p612 = points.iter().find(|p| p.kac() == [6, 1, 2]).unwrap();
        assert_eq!(p612.omega_check_coords(), vec![frac(1, 14), frac(1, 7)]);
    }

    #[test]
    fn level_h_has_single_interior_point() {
        for name in ["A1", "A3", "B2", "C3", "D4", "F4", "G2"] {
            let r = rs(name);
            let points = enumerate_efo(&r, r.coxeter_number(), true);
            assert_eq!(points.len(), 1, "{name}");
            assert!(points[0].kac().iter().all(|&s| s == 1), "{name}");
        }
    }

    #[test]
    fn g2_level_106_point_count() {
        let g2 = rs("G2");
        assert_eq!(enumerate_efo(&g2, 106, true).len(), 884);
    }

    #[test]
    fn strict_ad_order_examples() {
        let g2 = rs("G2");
        let p = DualPoint::from_tail(&g2, 14, &[2, 2]);
        assert_eq!(p.kac(), [4, 2, 2]);
        assert_eq!(p.strict_ad_order(), 7);
        let q = DualPoint::from_tail(&g2, 14, &[1, 1]);
        assert_eq!(q.strict_ad_order(), 14);
        let r = DualPoint::from_tail(&g2, 6, &[1, 1]);
        assert_eq!(r.kac(), [1, 1, 1]);
        assert_eq!(r.strict_ad_order(), 6);
    }

    #[test]
    fn count_f_m_examples() {
        let g2 = rs("G2");
        assert_eq!(count_f_m(&g2, 8), 10);
        for name in ["A1", "A2", "B2", "G2", "F4"] {
            assert_eq!(count_f_m(&rs(name), 0), 1, "{name}");
        }
        // A2: s0 + s1 + s2 = 2 has C(4,2) = 6 solutions.
        assert_eq!(count_f_m(&rs("A2"), 2), 6);
    }

    #[test]
    fn count_matches_interior_enumeration() {
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let r = rs(name);
            for m in 0..=6 {
                assert_eq!(
                    count_f_m(&r, m),
                    enumerate_efo(&r, m + r.coxeter_number(), true).len() as u64,
                    "{name}, M={m}"
                );
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_deterministic() {
        let g2 = rs("G2");
        let points = enumerate_efo(&g2, 14, true);
        let tails: Vec<Vec<i64>> = points.iter().map(|p| p.tail().to_vec()).collect();
        let mut sorted = tails.clone();
        sorted.sort();
        assert_eq!(tails, sorted);
    }

    #[test]
    fn interior_points_have_pairings_inside_the_alcove() {
        for name in ["A2", "B2", "C3", "G2"] {
            let r = rs(name);
            let level = r.coxeter_number() + 5;
            for p in enumerate_efo(&r, level, false) {
                let inside = p.is_interior();
                // <alpha_j, x> = s_j / N for simple roots; <-alpha_0, x> =
                // 1 - s_0/N. Interior means all of them in (0, 1).
                let simple_ok = p.tail().iter().all(|&s| s > 0 && s < level);
                let wall0_ok = p.kac()[0] > 0;
                assert_eq!(inside, simple_ok && wall0_ok, "{name}");
            }
        }
    }

    #[test]
    fn g2_pairing_value() {
        // <omega_1, omega_check_1> = (A^{-1})_{11} = 2 for G2; probed at the
        // vertex omega_check_1 / 2 of the fundamental simplex.
        let g2 = rs("G2");
        let p = DualPoint::from_tail(&g2, 2, &[1, 0]);
        let lam = Weight::new(vec![1, 0]);
        assert_eq!(
            pairing(&g2, &lam, &p),
            BigRational::from_integer(BigInt::from(1))
        );
        assert_eq!(pairing_numerator(&g2, lam.coords(), &p), 2);
    }

    #[test]
    fn kac_coordinates_reconstruct_from_coords() {
        for name in ["A2", "B3", "C2", "D4", "G2"] {
            let r = rs(name);
            let level = r.coxeter_number() + 3;
            for p in enumerate_efo(&r, level, true) {
                // N * (A * alpha_check) must reproduce the tail exactly.
                for (i, &want) in p.tail().iter().enumerate() {
                    let mut acc = BigRational::zero();
                    for (k, coord) in p.alpha_check_coords().iter().enumerate() {
                        acc += BigRational::from_integer(BigInt::from(r.cartan()[i][k])) * coord;
                    }
                    let got = acc * BigRational::from_integer(BigInt::from(level));
                    assert_eq!(got.to_integer().to_i64().unwrap(), want, "{name}");
                }
            }
        }
    }
}
