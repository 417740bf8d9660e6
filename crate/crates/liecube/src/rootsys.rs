//! Classification data of the simple Lie algebras.
//!
//! A [`RootSystem`] bundles everything the other modules consume: the Cartan
//! matrix and its exact rational inverse, marks and comarks, the positive
//! roots (generated by reflection closure), the Coxeter number, the order of
//! the centre, the Weyl group order from the classical product formulas, and
//! the index involution induced by the opposition element.
//!
//! Conventions: weights are integer vectors in the fundamental-weight basis
//! (`omega`-basis), roots are integer vectors in the simple-root basis
//! (`alpha`-basis). Simple roots are numbered left to right along the Dynkin
//! diagram, the node above the main line carrying the highest index.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result, DEFAULT_ORBIT_GUARD};

/// The nine classification families `A`–`G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieFamily {
    pub fn letter(self) -> char {
        match self {
            LieFamily::A => 'A',
            LieFamily::B => 'B',
            LieFamily::C => 'C',
            LieFamily::D => 'D',
            LieFamily::E => 'E',
            LieFamily::F => 'F',
            LieFamily::G => 'G',
        }
    }
}

/// A validated simple type: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieType {
    family: LieFamily,
    rank: usize,
}

impl LieType {
    /// Checks the rank bounds of the classification:
    /// `A_n (n>=1)`, `B_n (n>=2)`, `C_n (n>=2)`, `D_n (n>=4)`,
    /// `E_6, E_7, E_8`, `F_4`, `G_2`.
    pub fn new(family: LieFamily, rank: usize) -> Result<Self> {
        let expected = match family {
            LieFamily::A => "n >= 1",
            LieFamily::B => "n >= 2",
            LieFamily::C => "n >= 2",
            LieFamily::D => "n >= 4",
            LieFamily::E => "n in {6, 7, 8}",
            LieFamily::F => "n = 4",
            LieFamily::G => "n = 2",
        };
        let ok = match family {
            LieFamily::A => rank >= 1,
            LieFamily::B | LieFamily::C => rank >= 2,
            LieFamily::D => rank >= 4,
            LieFamily::E => (6..=8).contains(&rank),
            LieFamily::F => rank == 4,
            LieFamily::G => rank == 2,
        };
        // Weyl orders are stored in u128; (n+1)! overflows beyond n = 33.
        if ok && rank <= 30 {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                expected: if rank > 30 { "rank <= 30" } else { expected },
            })
        }
    }

    pub fn family(&self) -> LieFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Parses names like `G2`, `A5`, `e6` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::InvalidRank {
            family: '?',
            rank: 0,
            expected: "a name like A3, B2, ..., G2",
        };
        let mut chars = s.trim().chars();
        let letter = chars.next().ok_or_else(err)?;
        let family = match letter.to_ascii_uppercase() {
            'A' => LieFamily::A,
            'B' => LieFamily::B,
            'C' => LieFamily::C,
            'D' => LieFamily::D,
            'E' => LieFamily::E,
            'F' => LieFamily::F,
            'G' => LieFamily::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        LieType::new(family, rank)
    }
}

/// An integer weight in the fundamental-weight basis.
///
/// Dominant means all coordinates nonnegative; strictly dominant means all
/// positive. The Weyl vector `rho` has every coordinate equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![0; rank],
        }
    }

    /// The Weyl vector: all fundamental-weight coordinates equal to 1.
    pub fn rho(rank: usize) -> Self {
        Weight {
            coords: vec![1; rank],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c > 0)
    }

    /// Coordinate-wise sum, e.g. `lambda.plus(&Weight::rho(n))`.
    pub fn plus(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A signed Weyl orbit: the distinct images `w(seed)` together with the
/// parity `(-1)^{l(w)}`. For a strictly dominant seed the orbit is free and
/// has exactly `|W|` entries.
///
/// Weights are stored flat (`rank` integers per entry) so that a full E6
/// orbit is a single contiguous 2.5 MB buffer.
#[derive(Debug, Clone)]
pub struct SignedWeightOrbit {
    rank: usize,
    weights: Vec<i64>,
    signs: Vec<i8>,
}

impl SignedWeightOrbit {
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Iterates `(weight coordinates, sign)` in generation order
    /// (breadth-first from the dominant seed).
    pub fn iter(&self) -> impl Iterator<Item = (&[i64], i8)> {
        self.weights
            .chunks_exact(self.rank)
            .zip(self.signs.iter().copied())
    }
}

/// Static and generated data of one simple root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<BigRational>>,
    /// `det(A) * A^{-1}`, an integer matrix.
    cartan_adjugate: Vec<Vec<i64>>,
    /// Order of the centre, `det(A)`.
    center_order: i64,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    coxeter_number: i64,
    /// Positive roots in the simple-root basis, sorted by height.
    positive_roots: Vec<Vec<i64>>,
    weyl_order: u128,
    /// Index involution induced by the opposition element (0-indexed).
    sigma: Vec<usize>,
    orbit_guard: u128,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Result<Self> {
        let cartan = cartan_matrix(lie_type);
        let (cartan_inverse, det) = invert_exact(&cartan);
        let center_order = classical_center_order(lie_type);
        assert_eq!(
            det, center_order,
            "det(Cartan) must equal the classical centre order"
        );
        let cartan_adjugate: Vec<Vec<i64>> = cartan_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        let scaled = q * BigRational::from_integer(BigInt::from(det));
                        assert!(scaled.is_integer(), "adjugate entries must be integers");
                        int_to_i64(scaled.to_integer())
                    })
                    .collect()
            })
            .collect();

        let marks = marks_of(lie_type);
        let comarks = comarks_of(lie_type);
        let coxeter_number = 1 + marks.iter().sum::<i64>();
        debug_assert_eq!(coxeter_number, 1 + comarks.iter().sum::<i64>());

        let positive_roots = positive_roots_closure(&cartan);
        assert_eq!(
            positive_roots.len(),
            classical_positive_root_count(lie_type),
            "reflection closure must reproduce the classical root count"
        );

        let rs = RootSystem {
            lie_type,
            cartan,
            cartan_inverse,
            cartan_adjugate,
            center_order,
            marks,
            comarks,
            coxeter_number,
            positive_roots,
            weyl_order: classical_weyl_order(lie_type),
            sigma: conjugation_permutation_of(lie_type),
            orbit_guard: DEFAULT_ORBIT_GUARD,
        };
        debug_assert!(rs
            .positive_roots
            .iter()
            .any(|r| r.as_slice() == rs.marks.as_slice()));
        Ok(rs)
    }

    /// Replaces the orbit-size guard (`|W| * rank` in machine words).
    pub fn with_orbit_guard(mut self, guard: u128) -> Self {
        self.orbit_guard = guard;
        self
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<BigRational>] {
        &self.cartan_inverse
    }

    /// `det(A) * A^{-1}` with integer entries; pairings against lattice
    /// points reduce to integer dot products through it.
    pub fn cartan_adjugate(&self) -> &[Vec<i64>] {
        &self.cartan_adjugate
    }

    /// Order of the centre of the simply connected group, `det(A)`.
    pub fn center_order(&self) -> i64 {
        self.center_order
    }

    /// Coefficients of the highest root in the simple-root basis.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coefficients of the highest coroot in the simple-coroot basis.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// The involution `sigma` with `conj(X_j) = X_{sigma(j)}` (0-indexed).
    /// Identity except for `A_n (n>1)`, `D_odd` and `E6`.
    pub fn conjugation_permutation(&self) -> &[usize] {
        &self.sigma
    }

    /// Weighted degree `sum_j lambda_j * comark_j`, the pairing of `lambda`
    /// with the highest coroot. It grades the polynomial ring generated by
    /// the fundamental characters.
    pub fn m_degree(&self, lambda: &Weight) -> i64 {
        lambda
            .coords()
            .iter()
            .zip(&self.comarks)
            .map(|(l, m)| l * m)
            .sum()
    }

    /// Simple reflection `r_i` on a weight in fundamental-weight coordinates:
    /// subtracts `lambda_i` times row `i` of the Cartan matrix.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let li = lambda.coords()[i];
        let coords = lambda
            .coords()
            .iter()
            .zip(&self.cartan[i])
            .map(|(c, a)| c - li * a)
            .collect();
        Weight::new(coords)
    }

    fn check_orbit_guard(&self) -> Result<()> {
        let required = self.weyl_order * self.rank() as u128;
        if required > self.orbit_guard {
            Err(Error::OrbitTooLarge {
                lie_type: self.lie_type.to_string(),
                required,
                guard: self.orbit_guard,
            })
        } else {
            Ok(())
        }
    }

    /// Materializes the signed orbit of a strictly dominant seed.
    ///
    /// Breadth-first from the seed: an element `nu` is produced only from its
    /// unique raising parent `r_j(nu)` where `j` is the first index with
    /// `nu_j < 0`, so each orbit element appears exactly once and no
    /// deduplication set is needed. Signs alternate with depth.
    pub fn signed_weyl_orbit(&self, seed: &Weight) -> Result<SignedWeightOrbit> {
        assert!(
            seed.is_strictly_dominant(),
            "signed_weyl_orbit requires a strictly dominant seed"
        );
        self.check_orbit_guard()?;
        let n = self.rank();
        let expected = usize::try_from(self.weyl_order).expect("guarded above");

        let mut weights: Vec<i64> = Vec::with_capacity(expected * n);
        let mut signs: Vec<i8> = Vec::with_capacity(expected);
        weights.extend_from_slice(seed.coords());
        signs.push(1);

        let mut level_start = 0usize;
        let mut mu = vec![0i64; n];
        while level_start < signs.len() {
            let level_end = signs.len();
            for idx in level_start..level_end {
                mu.copy_from_slice(&weights[idx * n..idx * n + n]);
                let sign = signs[idx];
                'next_child: for i in 0..n {
                    if mu[i] <= 0 {
                        continue;
                    }
                    // Child is kept only when i is the first negative
                    // coordinate of r_i(mu).
                    for (k, item) in mu.iter().enumerate().take(i) {
                        if item - mu[i] * self.cartan[i][k] < 0 {
                            continue 'next_child;
                        }
                    }
                    for k in 0..n {
                        weights.push(mu[k] - mu[i] * self.cartan[i][k]);
                    }
                    signs.push(-sign);
                }
            }
            level_start = level_end;
        }

        let orbit = SignedWeightOrbit {
            rank: n,
            weights,
            signs,
        };
        debug_assert_eq!(orbit.len() as u128, self.weyl_order);
        Ok(orbit)
    }
}

/// Cartan matrix in the left-to-right numbering of the Dynkin diagram
/// (fork/top nodes carry the highest index).
fn cartan_matrix(lie_type: LieType) -> Vec<Vec<i64>> {
    let n = lie_type.rank();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match lie_type.family() {
        LieFamily::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        LieFamily::B => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2; // last simple root is short
        }
        LieFamily::C => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2; // last simple root is long
        }
        LieFamily::D => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        LieFamily::E => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            // Node n hangs above the branch point of the main line.
            let branch = match n {
                6 => 2,
                7 => 3,
                _ => 4,
            };
            link(&mut a, branch, n - 1);
        }
        LieFamily::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[1][2] = -2; // double bond, nodes 3 and 4 short
        }
        LieFamily::G => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    a
}

fn marks_of(lie_type: LieType) -> Vec<i64> {
    let n = lie_type.rank();
    match lie_type.family() {
        LieFamily::A => vec![1; n],
        LieFamily::B => {
            let mut m = vec![2; n];
            m[0] = 1;
            m
        }
        LieFamily::C => {
            let mut m = vec![2; n];
            m[n - 1] = 1;
            m
        }
        LieFamily::D => {
            let mut m = vec![2; n];
            m[0] = 1;
            m[n - 2] = 1;
            m[n - 1] = 1;
            m
        }
        LieFamily::E => match n {
            6 => vec![1, 2, 3, 2, 1, 2],
            7 => vec![1, 2, 3, 4, 3, 2, 2],
            _ => vec![2, 3, 4, 5, 6, 4, 2, 3],
        },
        LieFamily::F => vec![2, 3, 4, 2],
        LieFamily::G => vec![2, 3],
    }
}

fn comarks_of(lie_type: LieType) -> Vec<i64> {
    let n = lie_type.rank();
    match lie_type.family() {
        // Dual to the marks: B and C swap, F4 swaps its middle pair,
        // G2 reverses; simply laced types are self-dual.
        LieFamily::B => {
            let mut m = vec![2; n];
            m[n - 1] = 1;
            m
        }
        LieFamily::C => {
            let mut m = vec![2; n];
            m[0] = 1;
            m
        }
        LieFamily::F => vec![2, 4, 3, 2],
        LieFamily::G => vec![3, 2],
        _ => marks_of(lie_type),
    }
}

fn classical_center_order(lie_type: LieType) -> i64 {
    let n = lie_type.rank() as i64;
    match lie_type.family() {
        LieFamily::A => n + 1,
        LieFamily::B | LieFamily::C => 2,
        LieFamily::D => 4,
        LieFamily::E => match n {
            6 => 3,
            7 => 2,
            _ => 1,
        },
        LieFamily::F | LieFamily::G => 1,
    }
}

fn classical_weyl_order(lie_type: LieType) -> u128 {
    let n = lie_type.rank() as u128;
    let factorial = |k: u128| (1..=k).product::<u128>();
    match lie_type.family() {
        LieFamily::A => factorial(n + 1),
        LieFamily::B | LieFamily::C => (1u128 << n) * factorial(n),
        LieFamily::D => (1u128 << (n - 1)) * factorial(n),
        LieFamily::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieFamily::F => 1_152,
        LieFamily::G => 12,
    }
}

fn classical_positive_root_count(lie_type: LieType) -> usize {
    let n = lie_type.rank();
    match lie_type.family() {
        LieFamily::A => n * (n + 1) / 2,
        LieFamily::B | LieFamily::C => n * n,
        LieFamily::D => n * (n - 1),
        LieFamily::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        LieFamily::F => 24,
        LieFamily::G => 6,
    }
}

fn conjugation_permutation_of(lie_type: LieType) -> Vec<usize> {
    let n = lie_type.rank();
    let mut sigma: Vec<usize> = (0..n).collect();
    match lie_type.family() {
        LieFamily::A if n > 1 => sigma.reverse(),
        LieFamily::D if n % 2 == 1 => sigma.swap(n - 2, n - 1),
        LieFamily::E if n == 6 => {
            sigma.swap(0, 4);
            sigma.swap(1, 3);
        }
        _ => {}
    }
    sigma
}

/// Closure of the simple roots under root strings, processed by height.
/// For a root `beta` and simple root `alpha_i`, `beta + alpha_i` is a root
/// iff the string length `q - <beta, alpha_i^v>` is positive, where `q`
/// counts how far `beta - k*alpha_i` stays a root (already known, since it
/// has lower height).
fn positive_roots_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        known.insert(e);
    }
    let mut frontier: Vec<Vec<i64>> = known.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..n {
                // <beta, alpha_i^v> = sum_j beta_j A_{ji}
                let pairing: i64 = beta.iter().zip(cartan).map(|(b, row)| b * row[i]).sum();
                let mut q = 0i64;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down.iter().any(|&c| c < 0) || !known.contains(&down) {
                        break;
                    }
                    q += 1;
                }
                if q - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut roots: Vec<Vec<i64>> = known.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

/// Exact inverse by rational Gauss-Jordan elimination; returns the inverse
/// and the determinant.
fn invert_exact(a: &[Vec<i64>]) -> (Vec<Vec<BigRational>>, i64) {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        if pivot_row != col {
            m.swap(pivot_row, col);
            inv.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for j in 0..n {
            m[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in 0..n {
                    let mj = m[col][j].clone();
                    let ij = inv[col][j].clone();
                    m[r][j] -= &factor * mj;
                    inv[r][j] -= &factor * ij;
                }
            }
        }
    }
    assert!(det.is_integer() && det.is_positive());
    (inv, int_to_i64(det.to_integer()))
}

fn int_to_i64(v: BigInt) -> i64 {
    i64::try_from(v).expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name.parse().unwrap()).unwrap()
    }

    #[test]
    fn g2_static_data() {
        let g2 = rs("G2");
        assert_eq!(g2.cartan(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(g2.marks(), &[2, 3]);
        assert_eq!(g2.comarks(), &[3, 2]);
        assert_eq!(g2.coxeter_number(), 6);
        assert_eq!(g2.center_order(), 1);
        assert_eq!(g2.weyl_order(), 12);
    }

    #[test]
    fn a1_static_data() {
        let a1 = rs("A1");
        assert_eq!(a1.cartan(), &[vec![2]]);
        assert_eq!(a1.marks(), &[1]);
        assert_eq!(a1.coxeter_number(), 2);
        assert_eq!(a1.center_order(), 2);
    }

    #[test]
    fn c2_determinant() {
        let c2 = rs("C2");
        assert_eq!(c2.cartan(), &[vec![2, -1], vec![-2, 2]]);
        // det [[2,-1],[-2,2]] = 2
        assert_eq!(c2.center_order(), 2);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(LieType::new(LieFamily::D, 3).is_err());
        assert!(LieType::new(LieFamily::E, 9).is_err());
        assert!(LieType::new(LieFamily::G, 3).is_err());
        assert!(LieType::new(LieFamily::A, 0).is_err());
        assert!("H3".parse::<LieType>().is_err());
        assert!("A2".parse::<LieType>().is_ok());
    }

    #[test]
    fn g2_positive_roots() {
        let g2 = rs("G2");
        let expect: BTreeSet<Vec<i64>> = [
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<Vec<i64>> = g2.positive_roots().iter().cloned().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn a2_positive_roots_by_hand() {
        let a2 = rs("A2");
        let got: BTreeSet<Vec<i64>> = a2.positive_roots().iter().cloned().collect();
        let expect: BTreeSet<Vec<i64>> = [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn a1_positive_roots() {
        assert_eq!(rs("A1").positive_roots(), &[vec![1]]);
    }

    #[test]
    fn cartan_inverse_is_exact() {
        for name in ["A1", "A4", "B3", "C4", "D4", "E6", "F4", "G2"] {
            let r = rs(name);
            let n = r.rank();
            for i in 0..n {
                for j in 0..n {
                    let mut sum = BigRational::zero();
                    for k in 0..n {
                        sum += BigRational::from_integer(BigInt::from(r.cartan()[i][k]))
                            * &r.cartan_inverse()[k][j];
                    }
                    let expect = if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(sum, expect, "{name} inverse fails at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn marks_and_comarks_are_permutations_summing_to_h() {
        for name in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "E7",
            "E8", "F4", "G2",
        ] {
            let r = rs(name);
            let h = r.coxeter_number();
            assert_eq!(1 + r.marks().iter().sum::<i64>(), h, "{name}");
            assert_eq!(1 + r.comarks().iter().sum::<i64>(), h, "{name}");
            let mut m = r.marks().to_vec();
            let mut c = r.comarks().to_vec();
            m.sort_unstable();
            c.sort_unstable();
            assert_eq!(m, c, "{name}: marks and comarks must be permutations");
            // rho pairs the highest coroot to h - 1.
            assert_eq!(r.m_degree(&Weight::rho(r.rank())), h - 1, "{name}");
        }
    }

    #[test]
    fn highest_root_is_a_root() {
        for name in ["A3", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(name);
            assert!(
                r.positive_roots().iter().any(|p| p == r.marks()),
                "{name}: the marks must be the coefficients of a root"
            );
        }
    }

    #[test]
    fn marks_and_comarks_are_highest_roots() {
        // The marks are the coefficients of the highest root; the comarks
        // are those of the highest root of the dual system (transposed
        // Cartan matrix). Both are recomputed here by reflection closure.
        for name in [
            "A1", "A4", "B2", "B4", "C2", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            let r = rs(name);
            let highest = |cartan: &[Vec<i64>]| {
                positive_roots_closure(cartan)
                    .last()
                    .expect("nonempty")
                    .clone()
            };
            assert_eq!(highest(r.cartan()).as_slice(), r.marks(), "{name} marks");
            let n = r.rank();
            let transposed: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| r.cartan()[j][i]).collect())
                .collect();
            assert_eq!(
                highest(&transposed).as_slice(),
                r.comarks(),
                "{name} comarks"
            );
        }
    }

    #[test]
    fn coxeter_numbers_match_classical_values() {
        for (name, h) in [
            ("A1", 2),
            ("A4", 5),
            ("B3", 6),
            ("C4", 8),
            ("D4", 6),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("F4", 12),
            ("G2", 6),
        ] {
            assert_eq!(rs(name).coxeter_number(), h, "{name}");
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        for name in ["A3", "B3", "C2", "D4", "F4", "G2"] {
            let r = rs(name);
            let n = r.rank();
            // A deterministic spread of small integer weights.
            for seed in 0..64i64 {
                let coords: Vec<i64> = (0..n).map(|j| ((seed >> j) & 3) - 1).collect();
                let w = Weight::new(coords);
                for i in 0..n {
                    assert_eq!(r.reflect(&r.reflect(&w, i), i), w);
                }
            }
        }
    }

    #[test]
    fn orbit_sizes_match_weyl_order() {
        for name in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2",
        ] {
            let r = rs(name);
            let orbit = r.signed_weyl_orbit(&Weight::rho(r.rank())).unwrap();
            assert_eq!(orbit.len() as u128, r.weyl_order(), "{name}");
        }
    }

    #[test]
    fn a1_orbit_of_rho() {
        let a1 = rs("A1");
        let orbit = a1.signed_weyl_orbit(&Weight::rho(1)).unwrap();
        let entries: Vec<(Vec<i64>, i8)> = orbit.iter().map(|(w, s)| (w.to_vec(), s)).collect();
        assert_eq!(entries, vec![(vec![1], 1), (vec![-1], -1)]);
    }

    #[test]
    fn g2_orbit_signs_balance() {
        let g2 = rs("G2");
        let orbit = g2.signed_weyl_orbit(&Weight::rho(2)).unwrap();
        assert_eq!(orbit.len(), 12);
        assert_eq!(orbit.iter().filter(|(_, s)| *s > 0).count(), 6);
        assert_eq!(orbit.iter().map(|(_, s)| s as i64).sum::<i64>(), 0);
    }

    #[test]
    fn a2_orbit_entries_distinct() {
        let a2 = rs("A2");
        let orbit = a2.signed_weyl_orbit(&Weight::rho(2)).unwrap();
        assert_eq!(orbit.len(), 6);
        let distinct: BTreeSet<Vec<i64>> = orbit.iter().map(|(w, _)| w.to_vec()).collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn orbit_guard_blocks_e7_and_e8() {
        for name in ["E7", "E8"] {
            let r = rs(name);
            let err = r.signed_weyl_orbit(&Weight::rho(r.rank())).unwrap_err();
            assert!(matches!(err, Error::OrbitTooLarge { .. }), "{name}");
        }
        // E6 fits under the default guard.
        let e6 = rs("E6");
        assert_eq!(e6.signed_weyl_orbit(&Weight::rho(6)).unwrap().len(), 51_840);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(rs("A3").conjugation_permutation(), &[2, 1, 0]);
        assert_eq!(rs("G2").conjugation_permutation(), &[0, 1]);
        assert_eq!(rs("E6").conjugation_permutation(), &[4, 3, 2, 1, 0, 5]);
        assert_eq!(rs("D5").conjugation_permutation(), &[0, 1, 2, 4, 3]);
        assert_eq!(rs("D4").conjugation_permutation(), &[0, 1, 2, 3]);
        for name in ["A3", "D5", "E6"] {
            let r = rs(name);
            let s = r.conjugation_permutation();
            for j in 0..r.rank() {
                assert_eq!(s[s[j]], j, "{name}: sigma must be an involution");
            }
        }
    }
}
