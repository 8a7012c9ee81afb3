//! Coin and J-plate matrices, and the shift operators that make up a walk step.
//!
//! Every operator acts on a [`WalkState`] and returns a new one. A walk step
//! is read right to left: the OAM plate acts first, the PBS path shift last.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{Site, Spinor, WalkState, ZERO};

/// Tolerance for unitarity and orthonormality checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// Dense 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_real(1.0, 0.0, 0.0, 1.0)
    }

    /// Bit flip `σ₁`.
    pub fn sigma1() -> Self {
        Mat2::from_real(0.0, 1.0, 1.0, 0.0)
    }

    /// `σ₂`.
    pub fn sigma2() -> Self {
        Mat2::new(ZERO, -Complex64::i(), Complex64::i(), ZERO)
    }

    pub fn from_columns(c0: Spinor, c1: Spinor) -> Self {
        Mat2::new(c0[0], c1[0], c0[1], c1[1])
    }

    /// Dyad `|u⟩⟨v|`.
    pub fn outer(u: Spinor, v: Spinor) -> Self {
        Mat2::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    pub fn column(&self, j: usize) -> Spinor {
        [self.0[0][j], self.0[1][j]]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// `max |M†M − 1|`.
    pub fn unitarity_error(&self) -> f64 {
        (self.dagger() * *self).max_diff(&Mat2::identity())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

fn inner(u: &Spinor, v: &Spinor) -> Complex64 {
    u[0].conj() * v[0] + u[1].conj() * v[1]
}

/// SU(2) parameters `(ξ, ζ, θ)` of a coin or J-plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Params {
    pub xi: f64,
    pub zeta: f64,
    pub theta: f64,
}

impl SU2Params {
    pub const fn new(xi: f64, zeta: f64, theta: f64) -> Self {
        SU2Params { xi, zeta, theta }
    }

    /// `(0, −π/2, π/4)`, the parameter point identified with a q-plate.
    pub fn qplate() -> Self {
        SU2Params::new(0.0, -FRAC_PI_2, FRAC_PI_4)
    }
}

/// A unitary 2×2 coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator(Mat2);

impl CoinOperator {
    pub fn new(matrix: Mat2) -> Result<Self> {
        let err = matrix.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::InvalidSpec(format!(
                "coin is not unitary (deviation {err:e})"
            )));
        }
        Ok(CoinOperator(matrix))
    }

    /// Coin whose columns are `u₁` and `u₂`.
    pub fn from_pair(pair: &OrthoPair) -> Self {
        CoinOperator(Mat2::from_columns(pair.u1, pair.u2))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        CoinOperator(self.0.dagger())
    }
}

impl From<CoinOperator> for Mat2 {
    fn from(c: CoinOperator) -> Mat2 {
        c.0
    }
}

/// `[[e^{iξ}cosθ, e^{iζ}sinθ], [−e^{−iζ}sinθ, e^{−iξ}cosθ]]`.
pub fn coin_matrix(params: SU2Params) -> CoinOperator {
    let (s, c) = params.theta.sin_cos();
    CoinOperator(Mat2::new(
        Complex64::from_polar(c, params.xi),
        Complex64::from_polar(s, params.zeta),
        -Complex64::from_polar(s, -params.zeta),
        Complex64::from_polar(c, -params.xi),
    ))
}

/// Orthonormal polarization pair `(u₁, u₂)` conditioning the OAM shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoPair {
    pub u1: Spinor,
    pub u2: Spinor,
}

impl OrthoPair {
    /// Validates orthonormality to within `1e-12`.
    pub fn new(u1: Spinor, u2: Spinor) -> Result<Self> {
        let pair = OrthoPair { u1, u2 };
        let dev = pair.orthonormality_error();
        if dev > UNITARY_TOL {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(pair)
    }

    /// Gram–Schmidt cleanup of a nearly orthonormal pair, for vectors typed
    /// in with limited precision. Rejects pairs further than `tol` from
    /// orthonormal.
    pub fn orthonormalized(u1: Spinor, u2: Spinor, tol: f64) -> Result<Self> {
        let dev = OrthoPair { u1, u2 }.orthonormality_error();
        if dev > tol {
            return Err(Error::NotOrthonormal(dev));
        }
        let n1 = inner(&u1, &u1).re.sqrt();
        let e1 = [u1[0] / n1, u1[1] / n1];
        let p = inner(&e1, &u2);
        let r = [u2[0] - e1[0] * p, u2[1] - e1[1] * p];
        let n2 = inner(&r, &r).re.sqrt();
        OrthoPair::new(e1, [r[0] / n2, r[1] / n2])
    }

    /// Horizontal/vertical pair; the walk stays localized.
    pub fn hv() -> Self {
        let one = Complex64::new(1.0, 0.0);
        OrthoPair {
            u1: [one, ZERO],
            u2: [ZERO, one],
        }
    }

    pub fn orthonormality_error(&self) -> f64 {
        let n1 = (inner(&self.u1, &self.u1).re - 1.0).abs();
        let n2 = (inner(&self.u2, &self.u2).re - 1.0).abs();
        let o = inner(&self.u1, &self.u2).norm();
        n1.max(n2).max(o)
    }
}

/// Columns of `coin_matrix(params)`, phases included.
pub fn pair_from_params(params: SU2Params) -> OrthoPair {
    let c = coin_matrix(params);
    OrthoPair {
        u1: c.0.column(0),
        u2: c.0.column(1),
    }
}

/// `(|R⟩, |L⟩) = ([1, −i]/√2, [1, i]/√2)` exactly.
pub fn qplate_pair() -> OrthoPair {
    let r = FRAC_1_SQRT_2;
    OrthoPair {
        u1: [Complex64::new(r, 0.0), Complex64::new(0.0, -r)],
        u2: [Complex64::new(r, 0.0), Complex64::new(0.0, r)],
    }
}

/// Jones matrix of the coin-flipping J-plate at azimuth `phi`:
/// `e^{−iφ}|u₂⟩⟨u₁| + e^{iφ}|u₁⟩⟨u₂|`.
pub fn jplate_matrix(phi: f64, pair: &OrthoPair) -> Mat2 {
    Mat2::outer(pair.u2, pair.u1).scale(Complex64::from_polar(1.0, -phi))
        + Mat2::outer(pair.u1, pair.u2).scale(Complex64::from_polar(1.0, phi))
}

/// Jones matrix of the non-flipping J-plate: `e^{−iφ}|u₁⟩⟨u₁| + e^{iφ}|u₂⟩⟨u₂|`.
pub fn jplate_tilde_matrix(phi: f64, pair: &OrthoPair) -> Mat2 {
    Mat2::outer(pair.u1, pair.u1).scale(Complex64::from_polar(1.0, -phi))
        + Mat2::outer(pair.u2, pair.u2).scale(Complex64::from_polar(1.0, phi))
}

/// The plate fitted in the OAM arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Plate {
    /// q-plate: the exact `(|R⟩, |L⟩)` pair.
    Q,
    /// J-plate given by SU(2) parameters; the pair is the coin columns.
    Params(SU2Params),
    /// J-plate given directly by its orthonormal pair.
    Pair(OrthoPair),
}

impl Plate {
    pub fn pair(&self) -> OrthoPair {
        match self {
            Plate::Q => qplate_pair(),
            Plate::Params(p) => pair_from_params(*p),
            Plate::Pair(pair) => *pair,
        }
    }

    /// Coin used by the alternate walks. For parameters this is the SU(2)
    /// coin; otherwise the unitary with columns `u₁, u₂`.
    pub fn coin(&self) -> CoinOperator {
        match self {
            Plate::Params(p) => coin_matrix(*p),
            other => CoinOperator::from_pair(&other.pair()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    /// OAM shift swaps `u₁ ↔ u₂` (q-plate / J-plate alone).
    ModifiedPauli,
    /// OAM shift keeps the polarization (plate plus HWP).
    Pauli,
    /// `S_x · C · S_y · C†`.
    Alternate,
    /// `S_x · C · S′_y · C†`.
    ModifiedAlternate,
}

impl WalkKind {
    pub fn name(self) -> &'static str {
        match self {
            WalkKind::ModifiedPauli => "modified-pauli",
            WalkKind::Pauli => "pauli",
            WalkKind::Alternate => "alternate",
            WalkKind::ModifiedAlternate => "modified-alternate",
        }
    }
}

impl std::str::FromStr for WalkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modified-pauli" => Ok(WalkKind::ModifiedPauli),
            "pauli" => Ok(WalkKind::Pauli),
            "alternate" => Ok(WalkKind::Alternate),
            "modified-alternate" => Ok(WalkKind::ModifiedAlternate),
            other => Err(Error::InvalidSpec(format!("unknown walk kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkVariant {
    pub kind: WalkKind,
    pub plate: Plate,
}

impl WalkVariant {
    pub const fn new(kind: WalkKind, plate: Plate) -> Self {
        WalkVariant { kind, plate }
    }
}

fn add_to(map: &mut BTreeMap<Site, Spinor>, site: Site, h: Complex64, v: Complex64) {
    let slot = map.entry(site).or_insert([ZERO; 2]);
    slot[0] += h;
    slot[1] += v;
}

/// Multiplies the polarization at every site by `coin`.
pub fn apply_coin(state: &WalkState, coin: &CoinOperator) -> WalkState {
    apply_matrix(state, coin.matrix())
}

fn apply_matrix(state: &WalkState, m: &Mat2) -> WalkState {
    let map = state
        .iter()
        .map(|(site, spinor)| (site, m.apply(spinor)))
        .collect();
    WalkState::from_map(map, state.steps())
}

/// PBS path shift: `H` moves to `x − 1`, `V` to `x + 1`.
pub fn shift_x(state: &WalkState) -> WalkState {
    let mut out = BTreeMap::new();
    for (s, [h, v]) in state.iter() {
        add_to(&mut out, Site::new(s.x - 1, s.m), *h, ZERO);
        add_to(&mut out, Site::new(s.x + 1, s.m), ZERO, *v);
    }
    WalkState::from_map(out, state.steps())
}

/// Second-axis shift: `H` moves to `m − 1`, `V` to `m + 1`.
pub fn shift_y(state: &WalkState) -> WalkState {
    let mut out = BTreeMap::new();
    for (s, [h, v]) in state.iter() {
        add_to(&mut out, Site::new(s.x, s.m - 1), *h, ZERO);
        add_to(&mut out, Site::new(s.x, s.m + 1), ZERO, *v);
    }
    WalkState::from_map(out, state.steps())
}

/// `σ₁ · shift_y`: `H` at `m` becomes `V` at `m − 1`, `V` becomes `H` at `m + 1`.
pub fn shift_y_modified(state: &WalkState) -> WalkState {
    let mut out = BTreeMap::new();
    for (s, [h, v]) in state.iter() {
        add_to(&mut out, Site::new(s.x, s.m - 1), ZERO, *h);
        add_to(&mut out, Site::new(s.x, s.m + 1), *v, ZERO);
    }
    WalkState::from_map(out, state.steps())
}

/// OAM shift conditioned on the pair: the `u₁` component moves to `m − 1`,
/// the `u₂` component to `m + 1`, each keeping its polarization.
pub fn shift_sigma(state: &WalkState, pair: &OrthoPair) -> WalkState {
    conditioned_oam_shift(state, pair.u1, pair.u2, pair)
}

/// Coin-flipping OAM shift (J-plate): the `u₁` component moves to `m − 1`
/// and becomes `u₂`; the `u₂` component moves to `m + 1` and becomes `u₁`.
pub fn shift_sigma_modified(state: &WalkState, pair: &OrthoPair) -> WalkState {
    conditioned_oam_shift(state, pair.u2, pair.u1, pair)
}

fn conditioned_oam_shift(
    state: &WalkState,
    down_out: Spinor,
    up_out: Spinor,
    pair: &OrthoPair,
) -> WalkState {
    let mut out = BTreeMap::new();
    for (s, spinor) in state.iter() {
        let c1 = inner(&pair.u1, spinor);
        let c2 = inner(&pair.u2, spinor);
        add_to(
            &mut out,
            Site::new(s.x, s.m - 1),
            down_out[0] * c1,
            down_out[1] * c1,
        );
        add_to(
            &mut out,
            Site::new(s.x, s.m + 1),
            up_out[0] * c2,
            up_out[1] * c2,
        );
    }
    WalkState::from_map(out, state.steps())
}

/// One full walk step; the step counter is incremented.
pub fn step(state: &WalkState, variant: &WalkVariant) -> WalkState {
    let next = match variant.kind {
        WalkKind::ModifiedPauli => shift_x(&shift_sigma_modified(state, &variant.plate.pair())),
        WalkKind::Pauli => shift_x(&shift_sigma(state, &variant.plate.pair())),
        WalkKind::Alternate | WalkKind::ModifiedAlternate => {
            let coin = variant.plate.coin();
            let rotated = apply_coin(state, &coin.dagger());
            let shifted = if variant.kind == WalkKind::Alternate {
                shift_y(&rotated)
            } else {
                shift_y_modified(&rotated)
            };
            shift_x(&apply_coin(&shifted, &coin))
        }
    };
    next.with_steps(state.steps() + 1)
}

/// One step of the one-dimensional walk `S_x · C`; the OAM index is untouched.
pub fn step_one_dimensional(state: &WalkState, coin: &CoinOperator) -> WalkState {
    shift_x(&apply_coin(state, coin)).with_steps(state.steps() + 1)
}

pub fn evolve(initial: &WalkState, variant: &WalkVariant, n: usize) -> WalkState {
    (0..n).fold(initial.clone(), |s, _| step(&s, variant))
}

/// `initial` followed by the state after each of the `n` steps.
pub fn evolve_snapshots(initial: &WalkState, variant: &WalkVariant, n: usize) -> Vec<WalkState> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(initial.clone());
    for _ in 0..n {
        let next = step(out.last().unwrap(), variant);
        out.push(next);
    }
    out
}
