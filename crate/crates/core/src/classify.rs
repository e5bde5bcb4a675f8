//! Restricted operation families, commutation tests and the commutant
//! dimension oracle.
//!
//! Every base family is a zero-pattern class of 3×3 unitaries: the monomial
//! families `U1, U2, U5, U8` and the block families `U3/U4` (block on
//! `{1,2}`), `U6/U7` (block on `{0,2}`) and `U9/U10` (block on `{0,1}`).
//! The two parameterizations of each block pair reach the same set of
//! matrices (any 2×2 unitary fits either form), so membership is decided by
//! the zero pattern alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::channels::{preset_basis, PresetCase};
use crate::qutrit::{Operator, Unitary};
use crate::random::{random_angles, GENERIC_MIN_MODULUS};
use crate::{QosError, Result, TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    U1,
    U2,
    U3,
    U4,
    U5,
    U6,
    U7,
    U8,
    U9,
    U10,
    U12,
    U34,
    U15,
    U67,
    U18,
    U910,
    U34minus12,
    U67minus15,
    U910minus18,
}

use FamilyId::*;

impl FamilyId {
    pub const BASE: [FamilyId; 10] = [U1, U2, U3, U4, U5, U6, U7, U8, U9, U10];

    pub const ALL: [FamilyId; 19] = [
        U1,
        U2,
        U3,
        U4,
        U5,
        U6,
        U7,
        U8,
        U9,
        U10,
        U12,
        U34,
        U15,
        U67,
        U18,
        U910,
        U34minus12,
        U67minus15,
        U910minus18,
    ];

    pub fn name(self) -> &'static str {
        match self {
            U1 => "U1",
            U2 => "U2",
            U3 => "U3",
            U4 => "U4",
            U5 => "U5",
            U6 => "U6",
            U7 => "U7",
            U8 => "U8",
            U9 => "U9",
            U10 => "U10",
            U12 => "U12",
            U34 => "U34",
            U15 => "U15",
            U67 => "U67",
            U18 => "U18",
            U910 => "U910",
            U34minus12 => "U34minus12",
            U67minus15 => "U67minus15",
            U910minus18 => "U910minus18",
        }
    }

    pub fn is_base(self) -> bool {
        Self::BASE.contains(&self)
    }

    /// Base families whose union makes up this id (before any exclusion).
    pub fn constituents(self) -> &'static [FamilyId] {
        match self {
            U1 => &[U1],
            U2 => &[U2],
            U3 => &[U3],
            U4 => &[U4],
            U5 => &[U5],
            U6 => &[U6],
            U7 => &[U7],
            U8 => &[U8],
            U9 => &[U9],
            U10 => &[U10],
            U12 => &[U1, U2],
            U34 | U34minus12 => &[U3, U4],
            U15 => &[U1, U5],
            U67 | U67minus15 => &[U6, U7],
            U18 => &[U1, U8],
            U910 | U910minus18 => &[U9, U10],
        }
    }

    /// Base families removed from the union (only set differences have any).
    pub fn excluded(self) -> &'static [FamilyId] {
        match self {
            U34minus12 => &[U1, U2],
            U67minus15 => &[U1, U5],
            U910minus18 => &[U1, U8],
            _ => &[],
        }
    }

    /// Number of angles in the matrix form (base families only).
    pub fn param_count(self) -> Option<usize> {
        match self {
            U1 | U2 | U5 | U8 => Some(3),
            U3 | U4 | U6 | U7 | U9 | U10 => Some(5),
            _ => None,
        }
    }

    /// Entries allowed to be nonzero (base families only).
    fn support(self) -> Option<[[bool; 3]; 3]> {
        let monomial = |perm: [usize; 3]| {
            let mut s = [[false; 3]; 3];
            for (r, &col) in perm.iter().enumerate() {
                s[r][col] = true;
            }
            s
        };
        let block = |lone: usize| {
            let mut s = [[false; 3]; 3];
            for (r, row) in s.iter_mut().enumerate() {
                for (col, cell) in row.iter_mut().enumerate() {
                    *cell = (r == lone) == (col == lone);
                }
            }
            s
        };
        match self {
            U1 => Some(monomial([0, 1, 2])),
            U2 => Some(monomial([0, 2, 1])),
            U5 => Some(monomial([2, 1, 0])),
            U8 => Some(monomial([1, 0, 2])),
            U3 | U4 => Some(block(0)),
            U6 | U7 => Some(block(1)),
            U9 | U10 => Some(block(2)),
            _ => None,
        }
    }

    /// Whether `u` lies in this family, given the base families it belongs to.
    pub fn contains_any(self, bases: &BTreeSet<FamilyId>) -> bool {
        self.constituents().iter().any(|f| bases.contains(f))
            && !self.excluded().iter().any(|f| bases.contains(f))
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = QosError;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s
            .trim()
            .to_ascii_lowercase()
            .replace(['\\', '-'], "minus")
            .replace("∖", "minus");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == norm)
            .ok_or_else(|| QosError::UnknownFamily(s.to_string()))
    }
}

/// Angles `μ` of a base family's matrix form, in the family's own order
/// (`μ_k1, μ_k2, …`).
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub mu: Vec<f64>,
}

impl FamilyParams {
    pub fn new(mu: Vec<f64>) -> Self {
        Self { mu }
    }
}

fn e(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// 2×2 block `[[cos μ5 e^{i(μ2+μ4)}, sin μ5 e^{i(μ3+μ4)}], [∓sin μ5 e^{-i(μ3-μ4)}, ±cos μ5 e^{-i(μ2-μ4)}]]`
/// with the upper signs for the rotation-type form and the lower for the
/// reflection-type form.
fn block(mu: &[f64], reflect: bool) -> [[C64; 2]; 2] {
    let (m2, m3, m4, m5) = (mu[1], mu[2], mu[3], mu[4]);
    let (s, c) = m5.sin_cos();
    let sign = if reflect { -1.0 } else { 1.0 };
    [
        [e(m2 + m4) * c, e(m3 + m4) * s],
        [e(-(m3 - m4)) * (-sign * s), e(-(m2 - m4)) * (sign * c)],
    ]
}

/// The matrix form of a base family at the given angles.
pub fn sample_family(f: FamilyId, p: &FamilyParams) -> Result<Unitary> {
    let expected = f
        .param_count()
        .ok_or_else(|| QosError::UnknownFamily(format!("{f} is not a base family")))?;
    if p.mu.len() != expected {
        return Err(QosError::ParamCount {
            family: f.to_string(),
            expected,
            found: p.mu.len(),
        });
    }
    let mu = &p.mu;
    let z = C64::new(0.0, 0.0);
    let mut m = [[z; 3]; 3];
    let monomial = |m: &mut [[C64; 3]; 3], cols: [usize; 3]| {
        for (r, &col) in cols.iter().enumerate() {
            m[r][col] = e(mu[r]);
        }
    };
    let embed = |m: &mut [[C64; 3]; 3], lone: usize, reflect: bool| {
        let idx: Vec<usize> = (0..3).filter(|&i| i != lone).collect();
        m[lone][lone] = e(mu[0]);
        let b = block(mu, reflect);
        for (bi, &r) in idx.iter().enumerate() {
            for (bj, &col) in idx.iter().enumerate() {
                m[r][col] = b[bi][bj];
            }
        }
    };
    match f {
        U1 => monomial(&mut m, [0, 1, 2]),
        U2 => monomial(&mut m, [0, 2, 1]),
        U5 => monomial(&mut m, [2, 1, 0]),
        U8 => monomial(&mut m, [1, 0, 2]),
        U3 => embed(&mut m, 0, false),
        U4 => embed(&mut m, 0, true),
        U6 => embed(&mut m, 1, false),
        U7 => embed(&mut m, 1, true),
        U9 => embed(&mut m, 2, false),
        U10 => embed(&mut m, 2, true),
        _ => unreachable!("param_count filters composite ids"),
    }
    let rows: Vec<C64> = m.iter().flatten().copied().collect();
    Unitary::new(Operator::from_rows(3, &rows)?)
}

/// Random member of any family id. Set differences are rejection-sampled so
/// every block entry has modulus at least the generic floor, keeping the
/// sample clear of the excluded families.
pub fn sample_member<R: Rng + ?Sized>(f: FamilyId, rng: &mut R) -> Unitary {
    let parts = f.constituents();
    loop {
        let base = parts[rng.random_range(0..parts.len())];
        let n = base.param_count().expect("constituents are base families");
        let u = sample_family(base, &FamilyParams::new(random_angles(rng, n)))
            .expect("angle count matches");
        if f.excluded().is_empty() {
            return u;
        }
        let support = base.support().expect("base family");
        let clear = (0..3).all(|r| {
            (0..3).all(|col| !support[r][col] || u.get(r, col).norm() >= GENERIC_MIN_MODULUS)
        });
        if clear {
            return u;
        }
    }
}

/// Base families containing `u` (up to global phase), decided by zero
/// pattern and entry moduli.
pub fn classify(u: &Unitary, tol: f64) -> BTreeSet<FamilyId> {
    FamilyId::BASE
        .into_iter()
        .filter(|f| {
            let support = f.support().expect("base family");
            let pattern_ok =
                (0..3).all(|r| (0..3).all(|col| support[r][col] || u.get(r, col).norm() < tol));
            let monomial = f.param_count() == Some(3);
            let moduli_ok = !monomial
                || (0..3).all(|r| {
                    (0..3).all(|col| !support[r][col] || (u.get(r, col).norm() - 1.0).abs() < tol)
                });
            pattern_ok && moduli_ok
        })
        .collect()
}

/// Every family id (base, union or difference) that contains `u`.
pub fn memberships(u: &Unitary, tol: f64) -> Vec<FamilyId> {
    let bases = classify(u, tol);
    FamilyId::ALL
        .into_iter()
        .filter(|f| f.contains_any(&bases))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Outcome of testing `UW = ±WU`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutationSign {
    /// `None` when neither relation holds.
    pub sign: Option<Sign>,
    /// `min(‖UŴ − ŴU‖, ‖UŴ + ŴU‖)` with `Ŵ = W/‖W‖` (Frobenius).
    pub residual: f64,
}

/// Tests `uw = wu` and `uw = −wu`. `w` is normalized first, so rescaling it
/// by any nonzero scalar leaves the verdict unchanged.
pub fn commutation_sign(u: &Operator, w: &Operator) -> CommutationSign {
    let norm = w.frobenius_norm();
    if norm < TOL {
        return CommutationSign {
            sign: Some(Sign::Plus),
            residual: 0.0,
        };
    }
    let w = w.scale(C64::new(1.0 / norm, 0.0));
    let uw = u * &w;
    let wu = &w * u;
    let plus = (uw.matrix() - wu.matrix()).norm();
    let minus = (uw.matrix() + wu.matrix()).norm();
    let sign = if plus < TOL {
        Some(Sign::Plus)
    } else if minus < TOL {
        Some(Sign::Minus)
    } else {
        None
    };
    CommutationSign {
        sign,
        residual: plus.min(minus),
    }
}

/// Complex dimension of `{M : MW ∓ WM = 0}`, computed as the null space of
/// the vectorized map `vec(M) ↦ (Wᵀ ⊗ I ∓ I ⊗ W) vec(M)`.
pub fn commutant_dimension(w: &Operator, sign: Sign) -> usize {
    let n = w.dim();
    let scale = w.frobenius_norm();
    let w = if scale > 0.0 {
        w.matrix() / C64::new(scale, 0.0)
    } else {
        w.matrix().clone()
    };
    let id = DMatrix::<C64>::identity(n, n);
    let left = w.transpose().kronecker(&id);
    let right = id.kronecker(&w);
    let map = match sign {
        Sign::Plus => left - right,
        Sign::Minus => left + right,
    };
    map.singular_values().iter().filter(|&&s| s < TOL).count()
}

/// Sign that every member of `f` is guaranteed to have with the diagonal
/// operator `w`, read off the family's zero pattern: entry `(j,k)` of a
/// member may be nonzero only if `w_j = w_k` (commuting) or `w_j = −w_k`
/// (anticommuting). Composite ids need every constituent to carry a sign;
/// the result is then `Plus` only if all constituents commute.
pub fn guaranteed_sign(f: FamilyId, w: &Operator) -> Option<Sign> {
    if !w.is_diagonal(TOL) {
        return None;
    }
    let d = w.diagonal_entries();
    let scale = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale < TOL {
        return None;
    }
    let d: Vec<C64> = d.into_iter().map(|z| z / scale).collect();
    let mut overall = Sign::Plus;
    for base in f.constituents() {
        let support = base.support().expect("base family");
        let pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|r| (0..3).map(move |col| (r, col)))
            .filter(|&(r, col)| support[r][col])
            .collect();
        let plus = pairs.iter().all(|&(j, k)| (d[j] - d[k]).norm() < TOL);
        let minus = pairs.iter().all(|&(j, k)| (d[j] + d[k]).norm() < TOL);
        if plus {
            continue;
        } else if minus {
            overall = Sign::Minus;
        } else {
            return None;
        }
    }
    Some(overall)
}

/// Success probability predicted for an operation known to lie in each of
/// `families`, with the preset measuring basis `case`: `1/3` from the fixed
/// vector plus `1/3` for each `W_k` the best family is guaranteed to
/// (anti)commute with.
pub fn predicted_probability(families: &[FamilyId], case: PresetCase) -> Ratio<u32> {
    let (_, w) = preset_basis(case);
    let best = families
        .iter()
        .map(|&f| {
            w.iter()
                .filter(|wk| guaranteed_sign(f, wk).is_some())
                .count()
        })
        .max()
        .unwrap_or(0);
    Ratio::new(1 + best as u32, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{generic_unitary, seeded};

    fn ket_bras(terms: &[(usize, usize)]) -> Unitary {
        let t: Vec<_> = terms
            .iter()
            .map(|&(r, c)| (r, c, C64::new(1.0, 0.0)))
            .collect();
        Unitary::new(Operator::from_ket_bras(3, &t)).unwrap()
    }

    #[test]
    fn sample_examples() {
        let id = sample_family(U1, &FamilyParams::new(vec![0.0; 3])).unwrap();
        assert!(id.max_abs_diff(&Unitary::identity(3)) < 1e-15);
        let u2 = sample_family(U2, &FamilyParams::new(vec![0.0; 3])).unwrap();
        assert!(u2.max_abs_diff(&ket_bras(&[(0, 0), (1, 2), (2, 1)])) < 1e-15);
        let u3 = sample_family(U3, &FamilyParams::new(vec![0.0; 5])).unwrap();
        assert!(u3.max_abs_diff(&Unitary::identity(3)) < 1e-15);
    }

    #[test]
    fn wrong_param_count() {
        let err = sample_family(U3, &FamilyParams::new(vec![0.0; 3])).unwrap_err();
        assert_eq!(
            err,
            QosError::ParamCount {
                family: "U3".into(),
                expected: 5,
                found: 3
            }
        );
        assert!(sample_family(U12, &FamilyParams::new(vec![0.0; 3])).is_err());
    }

    #[test]
    fn identity_membership() {
        let got = classify(&Unitary::identity(3), TOL);
        // Both block parameterizations reach the identity.
        let want: BTreeSet<_> = [U1, U3, U4, U6, U7, U9, U10].into_iter().collect();
        assert_eq!(got, want);
        let all = memberships(&Unitary::identity(3), TOL);
        assert!(all.contains(&U12) && all.contains(&U910));
        assert!(!all.contains(&U34minus12));
    }

    #[test]
    fn anti_diagonal_block_membership() {
        let got = classify(&ket_bras(&[(0, 0), (1, 2), (2, 1)]), TOL);
        assert!(got.contains(&U2) && got.contains(&U4));
        assert!(!got.contains(&U1));
    }

    #[test]
    fn generic_unitary_is_in_nothing() {
        let mut rng = seeded(3);
        for _ in 0..20 {
            assert!(classify(&generic_unitary(&mut rng), TOL).is_empty());
        }
    }

    #[test]
    fn parse_ids() {
        assert_eq!("u12".parse::<FamilyId>().unwrap(), U12);
        assert_eq!("U34\\12".parse::<FamilyId>().unwrap(), U34minus12);
        assert_eq!("u910-18".parse::<FamilyId>().unwrap(), U910minus18);
        assert!("u11".parse::<FamilyId>().is_err());
    }

    #[test]
    fn commutation_examples() {
        let (_, [w11, _]) = preset_basis(PresetCase::C1);
        let id = Unitary::identity(3);
        assert_eq!(commutation_sign(&id, &w11).sign, Some(Sign::Plus));
        let u2 = sample_family(U2, &FamilyParams::new(vec![0.0; 3])).unwrap();
        assert_eq!(commutation_sign(&u2, &w11).sign, Some(Sign::Minus));
        let g = generic_unitary(&mut seeded(4));
        let cs = commutation_sign(&g, &w11);
        assert_eq!(cs.sign, None);
        assert!(cs.residual > 1e-3);
    }

    #[test]
    fn commutant_dimension_examples() {
        let (_, [w11, w12]) = preset_basis(PresetCase::C1);
        assert_eq!(commutant_dimension(&w11, Sign::Plus), 3);
        assert_eq!(commutant_dimension(&w11, Sign::Minus), 3);
        assert_eq!(commutant_dimension(&w12, Sign::Minus), 0);
        assert_eq!(commutant_dimension(&w12, Sign::Plus), 5);
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(
            predicted_probability(&[U12], PresetCase::C1),
            Ratio::new(1, 1)
        );
        assert_eq!(
            predicted_probability(&[U67minus15], PresetCase::C2),
            Ratio::new(2, 3)
        );
        assert_eq!(predicted_probability(&[], PresetCase::C1), Ratio::new(1, 3));
        assert_eq!(
            predicted_probability(&[U2], PresetCase::C4a),
            Ratio::new(1, 3)
        );
    }

    #[test]
    fn guaranteed_sign_mixes_constituents() {
        let (_, [w11, w12]) = preset_basis(PresetCase::C1);
        assert_eq!(guaranteed_sign(U1, &w11), Some(Sign::Plus));
        assert_eq!(guaranteed_sign(U2, &w11), Some(Sign::Minus));
        assert_eq!(guaranteed_sign(U12, &w11), Some(Sign::Minus));
        assert_eq!(guaranteed_sign(U34, &w11), None);
        assert_eq!(guaranteed_sign(U34minus12, &w12), Some(Sign::Plus));
        let x = ket_bras(&[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(guaranteed_sign(U1, &x.into_operator()), None);
    }
}
