//! Named states, gates, corrections and measurement bases.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::qutrit::{MeasurementBasis, Operator, StateVector, Unitary};
use crate::{QosError, Result, TOL};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `ω^k` with `ω = e^{2πi/3}`.
pub fn omega(k: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k.rem_euclid(3) as f64 / 3.0)
}

/// Index `(n, m)` of a generalized Bell state: phase `n`, shift `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BellIndex {
    n: u8,
    m: u8,
}

impl BellIndex {
    pub fn new(n: u8, m: u8) -> Result<Self> {
        if n > 2 {
            return Err(QosError::OutcomeOutOfRange(n as usize));
        }
        if m > 2 {
            return Err(QosError::OutcomeOutOfRange(m as usize));
        }
        Ok(Self { n, m })
    }

    /// Lexicographic position `3n + m`.
    pub fn from_position(pos: usize) -> Result<Self> {
        if pos > 8 {
            return Err(QosError::OutcomeOutOfRange(pos));
        }
        Ok(Self {
            n: (pos / 3) as u8,
            m: (pos % 3) as u8,
        })
    }

    pub fn n(self) -> u8 {
        self.n
    }

    pub fn m(self) -> u8 {
        self.m
    }

    pub fn position(self) -> usize {
        3 * self.n as usize + self.m as usize
    }

    pub fn all() -> impl Iterator<Item = BellIndex> {
        (0..9).map(|p| BellIndex {
            n: (p / 3) as u8,
            m: (p % 3) as u8,
        })
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// Amplitudes of `Σ_j ω^{nj} |j⟩|j+m⟩ / √3`.
pub fn generalized_bell_vector(idx: BellIndex) -> Vec<C64> {
    let mut v = vec![c(0.0, 0.0); 9];
    let r = 1.0 / 3f64.sqrt();
    for j in 0..3usize {
        let k = (j + idx.m as usize) % 3;
        v[3 * j + k] = omega((idx.n as usize * j) as i64) * r;
    }
    v
}

/// Generalized Bell state on the two named qutrits.
pub fn generalized_bell(idx: BellIndex, labels: [&str; 2]) -> StateVector {
    StateVector::new(labels.to_vec(), generalized_bell_vector(idx))
        .expect("Bell vectors are normalized")
}

/// All nine generalized Bell states, outcome labels `(n,m)` in lexicographic
/// order.
pub fn gbm_basis() -> MeasurementBasis {
    let vectors = BellIndex::all().map(generalized_bell_vector).collect();
    let labels = BellIndex::all().map(|i| i.to_string()).collect();
    MeasurementBasis::new(vectors, labels).expect("Bell basis is orthonormal")
}

/// `(|000⟩ + |111⟩ + |222⟩)/√3` on the three named qutrits.
pub fn ghz3(labels: [&str; 3]) -> StateVector {
    let r = 1.0 / 3f64.sqrt();
    let mut amps = vec![c(0.0, 0.0); 27];
    for j in 0..3 {
        amps[13 * j] = c(r, 0.0);
    }
    StateVector::new(labels.to_vec(), amps).expect("GHZ is normalized")
}

/// `{Σ_l ω^{kl}|l⟩/√3}` for `k = 0, 1, 2`.
pub fn fourier_basis() -> MeasurementBasis {
    let r = 1.0 / 3f64.sqrt();
    let vectors = (0..3)
        .map(|k| (0..3).map(|l| omega(k * l) * r).collect())
        .collect();
    MeasurementBasis::new(vectors, (0..3).map(|k| format!("f{k}")).collect())
        .expect("Fourier basis is orthonormal")
}

/// `|j⟩ → |j + shift⟩` on one qutrit.
fn cyclic_shift(shift: usize) -> Unitary {
    let terms: Vec<_> = (0..3).map(|j| ((j + shift) % 3, j, c(1.0, 0.0))).collect();
    Unitary::new(Operator::from_ket_bras(3, &terms)).expect("permutation")
}

/// Bob's (and Alice's mirrored) correction after reading `b''`:
/// identity, `S = |0⟩⟨2|+|2⟩⟨1|+|1⟩⟨0|`, or `T = |0⟩⟨1|+|2⟩⟨0|+|1⟩⟨2|`.
pub fn shift_correction(outcome: usize) -> Result<Unitary> {
    match outcome {
        0 => Ok(Unitary::identity(3)),
        1 => Ok(cyclic_shift(1)),
        2 => Ok(cyclic_shift(2)),
        other => Err(QosError::OutcomeOutOfRange(other)),
    }
}

/// Bob's two-qutrit permutation on `(b', b'')`: `|j, k⟩ → |j, k − j⟩`.
pub fn v_gate() -> Unitary {
    let terms: Vec<_> = (0..9usize)
        .map(|i| {
            let (j, k) = (i / 3, i % 3);
            (3 * j + (k + 3 - j) % 3, i, c(1.0, 0.0))
        })
        .collect();
    Unitary::new(Operator::from_ket_bras(9, &terms)).expect("permutation")
}

/// `σ^(n,m) = |m⟩⟨0| + ω^{2n}|m+1⟩⟨1| + ω^{n}|m+2⟩⟨2|`, the operator left on
/// the receiving qutrit after a Bell outcome `(n,m)`.
pub fn sigma(idx: BellIndex) -> Unitary {
    let (n, m) = (idx.n as i64, idx.m as usize);
    let terms = [
        (m % 3, 0, c(1.0, 0.0)),
        ((m + 1) % 3, 1, omega(2 * n)),
        ((m + 2) % 3, 2, omega(n)),
    ];
    Unitary::new(Operator::from_ket_bras(3, &terms)).expect("monomial unitary")
}

/// Free parameters `(x1, y1, τ1, τ2)` of the variable measuring basis on
/// `b'`. The remaining components follow from orthonormality against the
/// fixed vector `(1,1,1)/√3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisParams {
    x1: C64,
    y1: C64,
    tau1: f64,
    tau2: f64,
}

impl BasisParams {
    /// Requires `|x1|² + |y1|² + |x1 + y1|² = 1`.
    pub fn new(x1: C64, y1: C64, tau1: f64, tau2: f64) -> Result<Self> {
        if ![x1.re, x1.im, y1.re, y1.im, tau1, tau2]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(QosError::NonFinite);
        }
        let residual = (x1.norm_sqr() + y1.norm_sqr() + (x1 + y1).norm_sqr() - 1.0).abs();
        if residual > TOL {
            return Err(QosError::ConstraintViolation(residual));
        }
        Ok(Self { x1, y1, tau1, tau2 })
    }

    pub fn x1(&self) -> C64 {
        self.x1
    }

    pub fn y1(&self) -> C64 {
        self.y1
    }

    pub fn z1(&self) -> C64 {
        -self.x1 - self.y1
    }

    pub fn tau1(&self) -> f64 {
        self.tau1
    }

    pub fn tau2(&self) -> f64 {
        self.tau2
    }

    /// Unnormalized `(x2', y2', z2')` from the closed-form constraint solution.
    pub fn second_vector_raw(&self) -> [C64; 3] {
        let (x, y) = (self.x1, self.y1);
        let xx = x * x.conj();
        let xy = x * y.conj();
        let yx = y * x.conj();
        let yy = y * y.conj();
        let one = c(1.0, 0.0);
        [
            -one + 2.0 * xx + xy,
            2.0 * yx + yy,
            one - 2.0 * xx - 2.0 * yx - xy - yy,
        ]
    }

    /// Normalized `(x2, y2, z2)` and the normalization `N`.
    ///
    /// The closed form carries an overall factor `y1` and collapses to zero
    /// when `y1 = 0`; below a norm of `1e-6` the factor-free vector
    /// `(−x1*−2y1*, 2x1*+y1*, y1*−x1*)` is used instead, which spans the same
    /// line whenever both are nonzero.
    pub fn second_vector(&self) -> Result<([C64; 3], f64)> {
        let raw = self.second_vector_raw();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (v, norm) = if norm > 1e-6 {
            (raw, norm)
        } else {
            let (x, y) = (self.x1.conj(), self.y1.conj());
            let alt = [-x - 2.0 * y, 2.0 * x + y, y - x];
            let n = alt.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n <= TOL {
                return Err(QosError::SingularBasis);
            }
            (alt, n)
        };
        Ok((v.map(|z| z / norm), norm))
    }
}

fn labelled_xi(vectors: Vec<Vec<C64>>) -> Result<MeasurementBasis> {
    MeasurementBasis::new(vectors, vec!["xi0".into(), "xi1".into(), "xi2".into()])
}

fn xi0() -> Vec<C64> {
    vec![c(1.0 / 3f64.sqrt(), 0.0); 3]
}

/// `{ξ0, ξ1, ξ2}` with `ξ0 = (1,1,1)/√3`, `ξ1 = e^{iτ1}(x1,y1,z1)` and
/// `ξ2 = e^{iτ2}(x2,y2,z2)`.
pub fn xi_basis(p: &BasisParams) -> Result<MeasurementBasis> {
    let xi1 = [p.x1, p.y1, p.z1()].map(|z| z * C64::from_polar(1.0, p.tau1));
    let (second, _) = p.second_vector()?;
    let xi2 = second.map(|z| z * C64::from_polar(1.0, p.tau2));
    labelled_xi(vec![xi0(), xi1.to_vec(), xi2.to_vec()])
}

/// `W_k = √3 · diag(conj ξ_k)` for `k = 1, 2`.
///
/// This scaling makes `|J⟩ = (1/√3) Σ_k [U W_k |χ⟩] ⊗ |ξ_k⟩` exact with
/// `W_0 = I`. The operators are unitary only when every component of `ξ_k`
/// has modulus `1/√3`.
pub fn w_from_basis(basis: &MeasurementBasis) -> [Operator; 2] {
    let s3 = 3f64.sqrt();
    [1, 2].map(|k| {
        let d: Vec<C64> = basis.vector(k).iter().map(|z| z.conj() * s3).collect();
        Operator::diagonal(&d)
    })
}

pub fn w_operators(p: &BasisParams) -> Result<[Operator; 2]> {
    Ok(w_from_basis(&xi_basis(p)?))
}

/// The five fixed bases analysed for restricted operation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PresetCase {
    C1,
    C2,
    C3,
    C4a,
    C4b,
}

impl PresetCase {
    pub const ALL: [PresetCase; 5] = [
        PresetCase::C1,
        PresetCase::C2,
        PresetCase::C3,
        PresetCase::C4a,
        PresetCase::C4b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetCase::C1 => "c1",
            PresetCase::C2 => "c2",
            PresetCase::C3 => "c3",
            PresetCase::C4a => "c4a",
            PresetCase::C4b => "c4b",
        }
    }

    /// The `(x1, y1)` pair behind the preset, all phases zero.
    pub fn params(self) -> BasisParams {
        let h = 1.0 / 2f64.sqrt();
        let t = 1.0 / 3f64.sqrt();
        let (x1, y1) = match self {
            PresetCase::C1 => (c(0.0, 0.0), c(-h, 0.0)),
            PresetCase::C2 => (c(-h, 0.0), c(0.0, 0.0)),
            PresetCase::C3 => (c(h, 0.0), c(-h, 0.0)),
            PresetCase::C4a => (c(t, 0.0), omega(1) * t),
            PresetCase::C4b => (c(0.0, 0.5), c(0.5, 0.0)),
        };
        BasisParams::new(x1, y1, 0.0, 0.0).expect("preset parameters satisfy the constraint")
    }

    /// `(ξ1, ξ2)` exactly as tabulated for the case.
    fn vectors(self) -> [Vec<C64>; 2] {
        let h = 1.0 / 2f64.sqrt();
        let s = 1.0 / 6f64.sqrt();
        let t = 1.0 / 3f64.sqrt();
        let r = |v: [f64; 3], k: f64| v.iter().map(|x| c(x * k, 0.0)).collect::<Vec<_>>();
        match self {
            PresetCase::C1 => [r([0.0, -1.0, 1.0], h), r([-2.0, 1.0, 1.0], s)],
            PresetCase::C2 => [r([-1.0, 0.0, 1.0], h), r([1.0, -2.0, 1.0], s)],
            PresetCase::C3 => [r([1.0, -1.0, 0.0], h), r([1.0, 1.0, -2.0], s)],
            PresetCase::C4a => [
                vec![c(t, 0.0), omega(1) * t, omega(2) * t],
                vec![c(t, 0.0), omega(2) * t, omega(1) * t],
            ],
            PresetCase::C4b => {
                let q = 3f64.sqrt() / 6.0;
                [
                    vec![c(0.0, 0.5), c(0.5, 0.0), c(-0.5, -0.5)],
                    vec![c(-2.0, 1.0) * q, c(1.0, -2.0) * q, c(1.0, 1.0) * q],
                ]
            }
        }
    }
}

impl fmt::Display for PresetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetCase {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        PresetCase::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown preset `{s}` (expected c1, c2, c3, c4a or c4b)"))
    }
}

/// The preset measuring basis and its `(W1, W2)` pair.
pub fn preset_basis(case: PresetCase) -> (MeasurementBasis, [Operator; 2]) {
    let [xi1, xi2] = case.vectors();
    let basis = labelled_xi(vec![xi0(), xi1, xi2]).expect("preset bases are orthonormal");
    let w = w_from_basis(&basis);
    (basis, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qutrit::{apply_unitary, measure, tensor};

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    /// `|⟨u|v⟩| = 1` for unit vectors.
    fn parallel(u: &[C64], v: &[C64]) -> bool {
        let ip: C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
        (ip.norm() - 1.0).abs() < 1e-9
    }

    #[test]
    fn bell_examples() {
        let r = 1.0 / 3f64.sqrt();
        let b00 = generalized_bell_vector(BellIndex::new(0, 0).unwrap());
        for (i, z) in b00.iter().enumerate() {
            let want = if [0, 4, 8].contains(&i) { r } else { 0.0 };
            assert!(close(*z, c(want, 0.0)));
        }
        let b01 = generalized_bell_vector(BellIndex::new(0, 1).unwrap());
        for (i, z) in b01.iter().enumerate() {
            // |01⟩, |12⟩, |20⟩
            let want = if [1, 5, 6].contains(&i) { r } else { 0.0 };
            assert!(close(*z, c(want, 0.0)));
        }
        let b10 = generalized_bell_vector(BellIndex::new(1, 0).unwrap());
        assert!(close(b10[0], c(r, 0.0)));
        assert!(close(b10[4], omega(1) * r));
        assert!(close(b10[8], omega(2) * r));
    }

    #[test]
    fn bell_index_range() {
        assert!(BellIndex::new(3, 0).is_err());
        assert!(BellIndex::new(0, 3).is_err());
        assert_eq!(
            BellIndex::from_position(7).unwrap(),
            BellIndex::new(2, 1).unwrap()
        );
    }

    #[test]
    fn gbm_basis_order_and_self_measurement() {
        let basis = gbm_basis();
        assert_eq!(basis.outcome_label(0), "(0,0)");
        assert_eq!(basis.outcome_label(5), "(1,2)");
        let b00 = generalized_bell(BellIndex::new(0, 0).unwrap(), ["x", "y"]);
        let recs = measure(&b00, &["x", "y"], &basis).unwrap();
        assert!((recs[0].probability - 1.0).abs() < 1e-12);
        assert!(recs[1..].iter().all(|r| r.is_null()));
    }

    #[test]
    fn ghz_examples() {
        let g = ghz3(["a", "b", "c"]);
        assert!(close(g.amps()[0], c(1.0 / 3f64.sqrt(), 0.0)));
        assert!(close(g.amps()[5], c(0.0, 0.0))); // |012⟩
        let recs = measure(&g, &["a"], &MeasurementBasis::computational()).unwrap();
        for r in recs {
            assert!((r.probability - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_corrections() {
        assert_eq!(shift_correction(0).unwrap(), Unitary::identity(3));
        let s = shift_correction(1).unwrap();
        for j in 0..3 {
            assert_eq!(s.get((j + 1) % 3, j), c(1.0, 0.0));
        }
        let t = shift_correction(2).unwrap();
        // T = |0⟩⟨1| + |2⟩⟨0| + |1⟩⟨2|
        assert_eq!(t.get(0, 1), c(1.0, 0.0));
        assert_eq!(t.get(2, 0), c(1.0, 0.0));
        assert_eq!(t.get(1, 2), c(1.0, 0.0));
        assert!(shift_correction(3).is_err());
        let st = s.compose(&t);
        assert!(st.max_abs_diff(&Unitary::identity(3)) < 1e-15);
        let ts = t.compose(&s);
        assert!(ts.max_abs_diff(&Unitary::identity(3)) < 1e-15);
    }

    #[test]
    fn s_sends_two_to_zero() {
        let two = StateVector::basis(vec!["x"], 2).unwrap();
        let out = apply_unitary(&two, &shift_correction(1).unwrap(), &["x"]).unwrap();
        assert!(close(out.amps()[0], c(1.0, 0.0)));
    }

    #[test]
    fn v_gate_matches_ket_bra_listing() {
        // |00⟩⟨00|+|01⟩⟨01|+|02⟩⟨02|+|10⟩⟨11|+|11⟩⟨12|+|12⟩⟨10|+|20⟩⟨22|+|21⟩⟨20|+|22⟩⟨21|
        let listed = [
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 4),
            (4, 5),
            (5, 3),
            (6, 8),
            (7, 6),
            (8, 7),
        ];
        let terms: Vec<_> = listed
            .iter()
            .map(|&(r, col)| (r, col, c(1.0, 0.0)))
            .collect();
        let expected = Operator::from_ket_bras(9, &terms);
        assert_eq!(v_gate().max_abs_diff(&expected), 0.0);
        for row in 0..9 {
            let count = (0..9)
                .filter(|&col| v_gate().get(row, col).norm() > 0.5)
                .count();
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn v_gate_on_bell_times_chi() {
        let (a, b, g) = (c(0.5, 0.1), c(-0.3, 0.6), c(0.2, -0.1));
        let n = (a.norm_sqr() + b.norm_sqr() + g.norm_sqr()).sqrt();
        let (a, b, g) = (a / n, b / n, g / n);
        let chi = StateVector::qutrit("b''", [a, b, g]).unwrap();
        let bell = generalized_bell(BellIndex::new(0, 0).unwrap(), ["a'", "b'"]);
        let s = apply_unitary(&tensor(&bell, &chi).unwrap(), &v_gate(), &["b'", "b''"]).unwrap();
        // Hand expansion over (a', b', b''):
        // [α|00⟩+β|11⟩+γ|22⟩]|0⟩ + [α|22⟩+β|00⟩+γ|11⟩]|1⟩ + [α|11⟩+β|22⟩+γ|00⟩]|2⟩, all /√3.
        let r = 1.0 / 3f64.sqrt();
        let mut want = vec![c(0.0, 0.0); 27];
        let idx = |ap: usize, bp: usize, bpp: usize| 9 * ap + 3 * bp + bpp;
        want[idx(0, 0, 0)] = a * r;
        want[idx(1, 1, 0)] = b * r;
        want[idx(2, 2, 0)] = g * r;
        want[idx(2, 2, 1)] = a * r;
        want[idx(0, 0, 1)] = b * r;
        want[idx(1, 1, 1)] = g * r;
        want[idx(1, 1, 2)] = a * r;
        want[idx(2, 2, 2)] = b * r;
        want[idx(0, 0, 2)] = g * r;
        for (got, w) in s.amps().iter().zip(&want) {
            assert!(close(*got, *w));
        }
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma(BellIndex::new(0, 0).unwrap()).max_abs_diff(&Unitary::identity(3)) < 1e-15);
        let s01 = sigma(BellIndex::new(0, 1).unwrap());
        assert_eq!(s01.max_abs_diff(&cyclic_shift(1)), 0.0);
        for idx in BellIndex::all() {
            assert!(sigma(idx).unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn fourier_basis_is_flat() {
        let f = fourier_basis();
        for v in f.vectors() {
            for z in v {
                assert!((z.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn preset_vectors() {
        let (b1, _) = preset_basis(PresetCase::C1);
        let h = 1.0 / 2f64.sqrt();
        assert!(parallel(
            b1.vector(1),
            &[c(0.0, 0.0), c(-h, 0.0), c(h, 0.0)]
        ));
        let (b2, _) = preset_basis(PresetCase::C2);
        let s = 1.0 / 6f64.sqrt();
        assert!(parallel(
            b2.vector(2),
            &[c(s, 0.0), c(-2.0 * s, 0.0), c(s, 0.0)]
        ));
        let (b4a, _) = preset_basis(PresetCase::C4a);
        let t = 1.0 / 3f64.sqrt();
        assert!(parallel(
            b4a.vector(1),
            &[c(t, 0.0), omega(1) * t, omega(2) * t]
        ));
        let (b4b, _) = preset_basis(PresetCase::C4b);
        assert!(parallel(
            b4b.vector(1),
            &[c(0.0, 0.5), c(0.5, 0.0), c(-0.5, -0.5)]
        ));
    }

    #[test]
    fn presets_agree_with_parameterized_construction() {
        for case in PresetCase::ALL {
            let (preset, _) = preset_basis(case);
            let built = xi_basis(&case.params()).unwrap();
            for k in 0..3 {
                assert!(
                    parallel(preset.vector(k), built.vector(k)),
                    "{case} vector {k}"
                );
            }
        }
    }

    #[test]
    fn params_from_case_one_and_two() {
        let b = xi_basis(&PresetCase::C1.params()).unwrap();
        let s = 1.0 / 6f64.sqrt();
        assert!(parallel(
            b.vector(2),
            &[c(-2.0 * s, 0.0), c(s, 0.0), c(s, 0.0)]
        ));
        // y1 = 0 makes the closed form vanish; the factor-free branch takes over.
        let p2 = PresetCase::C2.params();
        assert!(p2.second_vector_raw().iter().all(|z| z.norm() < 1e-12));
        let b = xi_basis(&p2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!(parallel(b.vector(1), &[c(-h, 0.0), c(0.0, 0.0), c(h, 0.0)]));
        assert!(parallel(
            b.vector(2),
            &[c(s, 0.0), c(-2.0 * s, 0.0), c(s, 0.0)]
        ));
    }

    #[test]
    fn params_reject_constraint_violation() {
        assert!(matches!(
            BasisParams::new(c(1.0, 0.0), c(1.0, 0.0), 0.0, 0.0),
            Err(QosError::ConstraintViolation(_))
        ));
        assert!(BasisParams::new(c(f64::NAN, 0.0), c(0.0, 0.0), 0.0, 0.0).is_err());
    }

    #[test]
    fn w_operators_scaling() {
        let (_, [w11, w12]) = preset_basis(PresetCase::C1);
        // √3 × (−|1⟩⟨1| + |2⟩⟨2|)/√2 and √3 × (−2|0⟩⟨0| + |1⟩⟨1| + |2⟩⟨2|)/√6
        let k = (1.5f64).sqrt();
        assert!(
            w11.max_abs_diff(&Operator::diagonal(&[c(0.0, 0.0), c(-k, 0.0), c(k, 0.0)])) < 1e-12
        );
        let k2 = 0.5f64.sqrt();
        assert!(
            w12.max_abs_diff(&Operator::diagonal(&[
                c(-2.0 * k2, 0.0),
                c(k2, 0.0),
                c(k2, 0.0)
            ])) < 1e-12
        );
        let (_, [w31, _]) = preset_basis(PresetCase::C3);
        assert!(
            w31.max_abs_diff(&Operator::diagonal(&[c(k, 0.0), c(-k, 0.0), c(0.0, 0.0)])) < 1e-12
        );
        // Fourier-type preset gives unitary W's.
        let (_, [a, b]) = preset_basis(PresetCase::C4a);
        assert!(a.unitarity_residual() < 1e-12 && b.unitarity_residual() < 1e-12);
        assert!(w11.unitarity_residual() > 0.1);
    }

    #[test]
    fn c4b_w_operators_match_tabulated_entries() {
        let (_, [w1, w2]) = preset_basis(PresetCase::C4b);
        let s3 = 3f64.sqrt();
        let w1_tab =
            Operator::diagonal(&[c(0.0, -0.5), c(0.5, 0.0), c(-0.5, 0.5)]).scale(c(s3, 0.0));
        assert!(w1.max_abs_diff(&w1_tab) < 1e-12);
        let w2_tab = Operator::diagonal(&[
            c(-2.0 * s3, -s3) / 6.0,
            c(s3, 2.0 * s3) / 6.0,
            c(s3, -s3) / 6.0,
        ])
        .scale(c(s3, 0.0));
        assert!(w2.max_abs_diff(&w2_tab) < 1e-12);
    }
}
