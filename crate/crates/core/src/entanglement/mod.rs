//! Entanglement between two of the three degrees of freedom.
//!
//! The third degree of freedom is traced out of `|Ψ⟩⟨Ψ|`, one factor of the
//! remaining bipartite density matrix is transposed, and the negativity is
//! the magnitude of the negative part of the resulting spectrum.
//!
//! Both kept factors use a compressed basis holding only the index values
//! that are populated in the state. The density matrix lives on the full
//! product of the two compressed bases, so the partial transpose is still a
//! plain index swap.

mod eigen;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{evolve, evolve_snapshots, Plate, SU2Params, WalkKind, WalkVariant};
use crate::state::{InitialStateParams, WalkState};

pub use eigen::{jacobi_eigenvalues, SquareMatrix, HERMITIAN_TOL, MAX_SWEEPS, OFF_DIAGONAL_TOL};

/// Eigenvalues with `|λ|` below this are treated as zero.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// A degree of freedom of the photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dof {
    Polarization,
    Path,
    Oam,
}

impl Dof {
    pub const ALL: [Dof; 3] = [Dof::Polarization, Dof::Path, Dof::Oam];

    pub fn name(self) -> &'static str {
        match self {
            Dof::Polarization => "polarization",
            Dof::Path => "path",
            Dof::Oam => "oam",
        }
    }

    fn index_of(self, coin: usize, x: i64, m: i64) -> i64 {
        match self {
            Dof::Polarization => coin as i64,
            Dof::Path => x,
            Dof::Oam => m,
        }
    }
}

impl fmt::Display for Dof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Dof {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pol" | "polarization" => Ok(Dof::Polarization),
            "path" => Ok(Dof::Path),
            "oam" => Ok(Dof::Oam),
            other => Err(Error::InvalidSpec(format!(
                "unknown degree of freedom {other:?}"
            ))),
        }
    }
}

/// Two distinct degrees of freedom, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofPair {
    first: Dof,
    second: Dof,
}

impl DofPair {
    pub fn new(first: Dof, second: Dof) -> Result<Self> {
        if first == second {
            return Err(Error::SameDof(first.name()));
        }
        Ok(DofPair { first, second })
    }

    pub fn first(&self) -> Dof {
        self.first
    }

    pub fn second(&self) -> Dof {
        self.second
    }

    /// The degree of freedom that gets traced out.
    pub fn traced(&self) -> Dof {
        Dof::ALL
            .into_iter()
            .find(|d| *d != self.first && *d != self.second)
            .unwrap()
    }

    pub fn polarization_oam() -> Self {
        DofPair {
            first: Dof::Polarization,
            second: Dof::Oam,
        }
    }

    pub fn polarization_path() -> Self {
        DofPair {
            first: Dof::Polarization,
            second: Dof::Path,
        }
    }

    pub fn path_oam() -> Self {
        DofPair {
            first: Dof::Path,
            second: Dof::Oam,
        }
    }
}

impl std::str::FromStr for DofPair {
    type Err = Error;

    /// `pol-oam`, `path-oam`, `polarization-path`, ...
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::InvalidSpec(format!("pair must look like pol-oam, got {s:?}")))?;
        DofPair::new(a.parse()?, b.parse()?)
    }
}

impl fmt::Display for DofPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first, self.second)
    }
}

/// Populated index values of one factor, ascending. Polarization is always
/// `[0, 1]` (`H`, `V`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBasis {
    pub dof: Dof,
    pub values: Vec<i64>,
}

impl FactorBasis {
    fn of_state(state: &WalkState, dof: Dof) -> Self {
        let values = match dof {
            Dof::Polarization => vec![0, 1],
            Dof::Path => dedup_sorted(state.iter().map(|(s, _)| s.x)),
            Dof::Oam => dedup_sorted(state.iter().map(|(s, _)| s.m)),
        };
        FactorBasis { dof, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn position(&self, value: i64) -> usize {
        self.values
            .binary_search(&value)
            .expect("value outside basis")
    }
}

fn dedup_sorted(it: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Which factor of the bipartition is transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransposeSide {
    First,
    Second,
}

/// Density matrix on `first ⊗ second`; row index is `i_first · |second| + i_second`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    first: FactorBasis,
    second: FactorBasis,
    matrix: SquareMatrix,
}

impl DensityMatrix {
    /// # Panics
    /// If the matrix dimension is not `|first| · |second|`.
    pub fn from_parts(first: FactorBasis, second: FactorBasis, matrix: SquareMatrix) -> Self {
        assert_eq!(matrix.dim(), first.len() * second.len());
        DensityMatrix {
            first,
            second,
            matrix,
        }
    }

    pub fn first(&self) -> &FactorBasis {
        &self.first
    }

    pub fn second(&self) -> &FactorBasis {
        &self.second
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Entry `⟨a b|ρ|a' b'⟩` addressed by factor positions.
    pub fn entry(&self, a: usize, b: usize, a2: usize, b2: usize) -> Complex64 {
        let nb = self.second.len();
        self.matrix.get(a * nb + b, a2 * nb + b2)
    }
}

impl AsRef<SquareMatrix> for DensityMatrix {
    fn as_ref(&self) -> &SquareMatrix {
        &self.matrix
    }
}

impl AsRef<SquareMatrix> for SquareMatrix {
    fn as_ref(&self) -> &SquareMatrix {
        self
    }
}

/// Traces the third degree of freedom out of `|Ψ⟩⟨Ψ|`.
pub fn reduced_density_matrix(state: &WalkState, keep: DofPair) -> DensityMatrix {
    let first = FactorBasis::of_state(state, keep.first);
    let second = FactorBasis::of_state(state, keep.second);
    let traced = keep.traced();
    let nb = second.len();
    let dim = first.len() * nb;

    // group amplitudes by the traced index: ρ = Σ_t |ψ_t⟩⟨ψ_t|
    let mut groups: BTreeMap<i64, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (site, spinor) in state.iter() {
        for (coin, amp) in spinor.iter().enumerate() {
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let a = first.position(keep.first.index_of(coin, site.x, site.m));
            let b = second.position(keep.second.index_of(coin, site.x, site.m));
            let t = traced.index_of(coin, site.x, site.m);
            groups.entry(t).or_default().push((a * nb + b, *amp));
        }
    }

    let mut matrix = SquareMatrix::zeros(dim);
    for entries in groups.values() {
        for &(r, ar) in entries {
            for &(c, ac) in entries {
                let v = matrix.get(r, c) + ar * ac.conj();
                matrix.set(r, c, v);
            }
        }
    }
    DensityMatrix {
        first,
        second,
        matrix,
    }
}

/// `⟨aᵢbⱼ|ρ^{T_B}|aₖbₗ⟩ = ⟨aᵢbₗ|ρ|aₖbⱼ⟩` (and the analogue for the first factor).
pub fn partial_transpose(rho: &DensityMatrix, which: TransposeSide) -> DensityMatrix {
    let na = rho.first.len();
    let nb = rho.second.len();
    let mut out = SquareMatrix::zeros(rho.dim());
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    let v = match which {
                        TransposeSide::Second => rho.entry(i, l, k, j),
                        TransposeSide::First => rho.entry(k, j, i, l),
                    };
                    out.set(i * nb + j, k * nb + l, v);
                }
            }
        }
    }
    DensityMatrix {
        first: rho.first.clone(),
        second: rho.second.clone(),
        matrix: out,
    }
}

/// Ascending real spectrum of a Hermitian matrix.
pub fn hermitian_eigenvalues(matrix: impl AsRef<SquareMatrix>) -> Result<Vec<f64>> {
    eigen::hermitian_eigenvalues(matrix.as_ref())
}

/// Entanglement negativity, `Σ (|λ| − λ)/2` over the partial-transpose spectrum.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Negativity(pub f64);

impl Negativity {
    pub fn value(self) -> f64 {
        self.0
    }

    /// Sums the negative part of a spectrum, ignoring `|λ| < 1e-12`.
    pub fn from_spectrum(eigenvalues: &[f64]) -> Self {
        Negativity(
            eigenvalues
                .iter()
                .filter(|l| l.abs() >= EIGENVALUE_FLOOR)
                .map(|l| (l.abs() - l) / 2.0)
                .sum(),
        )
    }
}

pub fn negativity(rho: &DensityMatrix, transpose_which: TransposeSide) -> Result<Negativity> {
    let pt = partial_transpose(rho, transpose_which);
    Ok(Negativity::from_spectrum(&hermitian_eigenvalues(&pt)?))
}

/// Negativity of `state` across `pair`, transposing the second factor.
pub fn state_negativity(state: &WalkState, pair: DofPair) -> Result<Negativity> {
    negativity(&reduced_density_matrix(state, pair), TransposeSide::Second)
}

/// Negativity after each of the steps `1..=n_max` of a single evolution.
pub fn negativity_curve(
    variant: &WalkVariant,
    init: InitialStateParams,
    pair: DofPair,
    n_max: usize,
) -> Result<Vec<(usize, f64)>> {
    if n_max == 0 {
        return Err(Error::InvalidSteps(0));
    }
    let snapshots = evolve_snapshots(&WalkState::initial(init), variant, n_max);
    snapshots[1..]
        .par_iter()
        .map(|s| Ok((s.steps(), state_negativity(s, pair)?.value())))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Xi,
    Zeta,
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Xi => "xi",
            SweepParam::Zeta => "zeta",
            SweepParam::Theta => "theta",
        }
    }

    fn apply(self, fixed: SU2Params, value: f64) -> SU2Params {
        match self {
            SweepParam::Xi => SU2Params { xi: value, ..fixed },
            SweepParam::Zeta => SU2Params {
                zeta: value,
                ..fixed
            },
            SweepParam::Theta => SU2Params {
                theta: value,
                ..fixed
            },
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi" => Ok(SweepParam::Xi),
            "zeta" => Ok(SweepParam::Zeta),
            "theta" => Ok(SweepParam::Theta),
            other => Err(Error::InvalidSweep(format!("unknown parameter {other:?}"))),
        }
    }
}

/// Grid `from, from + step, …` up to `to` for one SU(2) parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub kind: WalkKind,
}

impl SweepSpec {
    /// Sweep of a J-plate (modified Pauli) walk.
    pub fn new(param: SweepParam, from: f64, to: f64, step: f64) -> Self {
        SweepSpec {
            param,
            from,
            to,
            step,
            kind: WalkKind::ModifiedPauli,
        }
    }

    /// Grid values. The endpoint is included when it lies within `1e-9` steps
    /// of the grid.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.from.is_finite() && self.to.is_finite() && self.step.is_finite()) {
            return Err(Error::InvalidSweep("bounds must be finite".into()));
        }
        if self.step <= 0.0 {
            return Err(Error::InvalidSweep(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.to < self.from {
            return Err(Error::InvalidSweep("`to` is below `from`".into()));
        }
        let count = ((self.to - self.from) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count)
            .map(|k| self.from + k as f64 * self.step)
            .collect())
    }
}

/// Negativity after `n` steps at each grid value of the swept parameter.
/// Points are evaluated in parallel; output is in grid order.
pub fn parameter_sweep(
    sweep: &SweepSpec,
    fixed: SU2Params,
    init: InitialStateParams,
    n: usize,
    pair: DofPair,
) -> Result<Vec<(f64, f64)>> {
    let initial = WalkState::initial(init);
    sweep
        .grid()?
        .into_par_iter()
        .map(|angle| {
            let plate = Plate::Params(sweep.param.apply(fixed, angle));
            let state = evolve(&initial, &WalkVariant::new(sweep.kind, plate), n);
            Ok((angle, state_negativity(&state, pair)?.value()))
        })
        .collect()
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::operators::{OrthoPair, Plate};
    use crate::state::{Site, Spinor};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const Z: Complex64 = Complex64::new(0.0, 0.0);

    fn bell_pol_path() -> WalkState {
        let r = c(FRAC_1_SQRT_2, 0.0);
        WalkState::from_entries(0, [(Site::new(0, 0), [r, Z]), (Site::new(1, 0), [Z, r])])
    }

    fn random_state(rng: &mut ChaCha8Rng) -> WalkState {
        let entries: Vec<(Site, Spinor)> = (0..12)
            .map(|_| {
                (
                    Site::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
                    [
                        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    ],
                )
            })
            .collect();
        let s = WalkState::from_entries(0, entries);
        s.scaled(c(1.0 / s.norm_squared().sqrt(), 0.0))
    }

    fn all_pairs() -> Vec<DofPair> {
        let mut out = Vec::new();
        for a in Dof::ALL {
            for b in Dof::ALL {
                if a != b {
                    out.push(DofPair::new(a, b).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn same_dof_rejected() {
        assert!(matches!(
            DofPair::new(Dof::Path, Dof::Path),
            Err(Error::SameDof("path"))
        ));
    }

    #[test]
    fn product_state_path_oam_is_scalar() {
        let s = WalkState::localized(Site::ORIGIN, [c(1.0, 0.0), Z]);
        let rho = reduced_density_matrix(&s, DofPair::path_oam());
        assert_eq!(rho.dim(), 1);
        assert!((rho.matrix().get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn four_corner_state_polarization_oam() {
        let init = WalkState::initial(InitialStateParams::diagonal());
        let s = crate::operators::step(&init, &WalkVariant::new(WalkKind::ModifiedPauli, Plate::Q));
        let rho = reduced_density_matrix(&s, DofPair::polarization_oam());
        assert_eq!(rho.second().values, vec![-1, 1]);
        assert_eq!(rho.dim(), 4);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        assert!(rho.matrix().hermiticity_error() < 1e-15);
    }

    #[test]
    fn reduced_matrices_have_unit_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let s = random_state(&mut rng);
            for pair in all_pairs() {
                let rho = reduced_density_matrix(&s, pair);
                assert!((rho.trace() - 1.0).abs() < 1e-12);
                assert!(rho.matrix().hermiticity_error() < 1e-12);
                let pt = partial_transpose(&rho, TransposeSide::Second);
                assert!((pt.trace() - 1.0).abs() < 1e-12);
                assert!(pt.matrix().hermiticity_error() < 1e-12);
                assert_eq!(partial_transpose(&pt, TransposeSide::Second), rho);
                assert_eq!(
                    partial_transpose(
                        &partial_transpose(&rho, TransposeSide::First),
                        TransposeSide::First
                    ),
                    rho
                );
            }
        }
    }

    #[test]
    fn transpose_of_product_transposes_factor() {
        // ρ_A ⊗ ρ_B with a complex off-diagonal in ρ_B
        let ra = [[c(0.6, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.4, 0.0)]];
        let rb = [[c(0.3, 0.0), c(0.0, 0.4)], [c(0.0, -0.4), c(0.7, 0.0)]];
        let basis = |dof| FactorBasis {
            dof,
            values: vec![0, 1],
        };
        let mut m = SquareMatrix::zeros(4);
        let mut expected = SquareMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.set(i * 2 + j, k * 2 + l, ra[i][k] * rb[j][l]);
                        expected.set(i * 2 + j, k * 2 + l, ra[i][k] * rb[l][j]);
                    }
                }
            }
        }
        let rho = DensityMatrix::from_parts(basis(Dof::Polarization), basis(Dof::Path), m);
        let pt = partial_transpose(&rho, TransposeSide::Second);
        assert!(pt.matrix().max_diff(&expected) < 1e-16);
    }

    #[test]
    fn bell_state_spectrum_and_negativity() {
        let rho = reduced_density_matrix(&bell_pol_path(), DofPair::polarization_path());
        let pt = partial_transpose(&rho, TransposeSide::Second);
        let ev = hermitian_eigenvalues(&pt).unwrap();
        let want = [-0.5, 0.5, 0.5, 0.5];
        for (g, w) in ev.iter().zip(want) {
            assert!((g - w).abs() < 1e-14);
        }
        let n = negativity(&rho, TransposeSide::Second).unwrap().value();
        assert!((n - 0.5).abs() < 1e-14);
        let n = negativity(&rho, TransposeSide::First).unwrap().value();
        assert!((n - 0.5).abs() < 1e-14);
    }

    #[test]
    fn product_states_have_zero_negativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            // polarization ⊗ (random spatial) is a product across every cut
            // involving polarization; a single site is a product across all
            let pol = [
                c(rng.gen_range(-1.0..1.0), 0.3),
                c(0.2, rng.gen_range(-1.0..1.0)),
            ];
            let norm = (pol[0].norm_sqr() + pol[1].norm_sqr()).sqrt();
            let pol = [pol[0] / norm, pol[1] / norm];
            let s =
                WalkState::localized(Site::new(rng.gen_range(-5..5), rng.gen_range(-5..5)), pol);
            for pair in all_pairs() {
                assert!(state_negativity(&s, pair).unwrap().value() < 1e-12);
            }
        }
    }

    #[test]
    fn negativity_independent_of_transposed_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let s = random_state(&mut rng);
            for pair in all_pairs() {
                let rho = reduced_density_matrix(&s, pair);
                let a = negativity(&rho, TransposeSide::First).unwrap().value();
                let b = negativity(&rho, TransposeSide::Second).unwrap().value();
                assert!((a - b).abs() < 1e-10);
                let ev =
                    hermitian_eigenvalues(partial_transpose(&rho, TransposeSide::First)).unwrap();
                assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            }
        }
    }

    /// Dense construction over the whole light-cone box with no compression.
    fn dense_negativity(state: &WalkState, pair: DofPair, n: i64) -> f64 {
        let side = (2 * n + 1) as usize;
        let dim_of = |d: Dof| if d == Dof::Polarization { 2 } else { side };
        let idx = |d: Dof, coin: usize, x: i64, m: i64| match d {
            Dof::Polarization => coin,
            Dof::Path => (x + n) as usize,
            Dof::Oam => (m + n) as usize,
        };
        let (da, db, dt) = (
            dim_of(pair.first()),
            dim_of(pair.second()),
            dim_of(pair.traced()),
        );
        let mut psi = vec![Z; da * db * dt];
        for (site, spinor) in state.iter() {
            for coin in 0..2 {
                let a = idx(pair.first(), coin, site.x, site.m);
                let b = idx(pair.second(), coin, site.x, site.m);
                let t = idx(pair.traced(), coin, site.x, site.m);
                psi[(a * db + b) * dt + t] = spinor[coin];
            }
        }
        let dim = da * db;
        let mut pt = SquareMatrix::zeros(dim);
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let mut acc = Z;
                        for t in 0..dt {
                            acc += psi[(i * db + l) * dt + t] * psi[(k * db + j) * dt + t].conj();
                        }
                        pt.set(i * db + j, k * db + l, acc);
                    }
                }
            }
        }
        Negativity::from_spectrum(&hermitian_eigenvalues(&pt).unwrap()).value()
    }

    #[test]
    fn compressed_matches_dense_construction() {
        let plates = [
            Plate::Q,
            Plate::Params(SU2Params::new(0.3, -1.1, 0.7)),
            Plate::Params(SU2Params::new(FRAC_PI_2, FRAC_PI_2, 0.2)),
        ];
        for plate in plates {
            for kind in [WalkKind::ModifiedPauli, WalkKind::Pauli] {
                let snaps = evolve_snapshots(
                    &WalkState::initial(InitialStateParams::new(0.4, 1.3)),
                    &WalkVariant::new(kind, plate),
                    4,
                );
                for (n, s) in snaps.iter().enumerate() {
                    for pair in all_pairs() {
                        let fast = state_negativity(s, pair).unwrap().value();
                        let dense = dense_negativity(s, pair, n as i64);
                        assert!(
                            (fast - dense).abs() < 1e-10,
                            "n={n} {pair:?}: {fast} vs {dense}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn localized_walk_curve_is_zero() {
        let variant = WalkVariant::new(WalkKind::ModifiedPauli, Plate::Pair(OrthoPair::hv()));
        for pair in all_pairs() {
            let curve =
                negativity_curve(&variant, InitialStateParams::diagonal(), pair, 12).unwrap();
            assert_eq!(curve.len(), 12);
            assert_eq!(curve[0].0, 1);
            assert!(curve.iter().all(|(_, v)| v.abs() < 1e-12));
        }
    }

    #[test]
    fn curve_needs_a_step() {
        let variant = WalkVariant::new(WalkKind::ModifiedPauli, Plate::Q);
        assert!(negativity_curve(
            &variant,
            InitialStateParams::diagonal(),
            DofPair::path_oam(),
            0
        )
        .is_err());
    }

    #[test]
    fn sweep_grid() {
        let spec = SweepSpec::new(SweepParam::Theta, 0.0, FRAC_PI_2, FRAC_PI_2 / 90.0);
        let g = spec.grid().unwrap();
        assert_eq!(g.len(), 91);
        assert!((g[90] - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(
            SweepSpec::new(SweepParam::Xi, 0.5, 0.5, 0.1)
                .grid()
                .unwrap(),
            vec![0.5]
        );
        assert!(SweepSpec::new(SweepParam::Xi, 0.0, 1.0, 0.0)
            .grid()
            .is_err());
        assert!(SweepSpec::new(SweepParam::Xi, 1.0, 0.0, 0.1)
            .grid()
            .is_err());
    }

    #[test]
    fn sweep_is_ordered_and_matches_single_runs() {
        let spec = SweepSpec::new(SweepParam::Xi, 0.0, 0.5, 0.1);
        let fixed = SU2Params::qplate();
        let init = InitialStateParams::diagonal();
        let out = parameter_sweep(&spec, fixed, init, 6, DofPair::polarization_oam()).unwrap();
        assert_eq!(out.len(), 6);
        for (k, (angle, value)) in out.iter().enumerate() {
            assert!((angle - 0.1 * k as f64).abs() < 1e-12);
            let plate = Plate::Params(SU2Params {
                xi: *angle,
                ..fixed
            });
            let s = evolve(
                &WalkState::initial(init),
                &WalkVariant::new(WalkKind::ModifiedPauli, plate),
                6,
            );
            let single = state_negativity(&s, DofPair::polarization_oam())
                .unwrap()
                .value();
            assert_eq!(*value, single);
        }
    }

    #[test]
    fn spectrum_floor_ignores_roundoff() {
        assert_eq!(Negativity::from_spectrum(&[-1e-13, 0.5, 0.5]).value(), 0.0);
        assert!((Negativity::from_spectrum(&[-0.25, 1.25]).value() - 0.25).abs() < 1e-16);
    }

    #[test]
    fn jacobi_spectrum_gives_same_walk_negativity() {
        let v = WalkVariant::new(WalkKind::ModifiedPauli, Plate::Q);
        let s = evolve(&WalkState::initial(InitialStateParams::diagonal()), &v, 9);
        for pair in [DofPair::polarization_oam(), DofPair::path_oam()] {
            let pt = partial_transpose(&reduced_density_matrix(&s, pair), TransposeSide::Second);
            let fast = Negativity::from_spectrum(&hermitian_eigenvalues(&pt).unwrap()).value();
            let slow = Negativity::from_spectrum(&jacobi_eigenvalues(pt.matrix()).unwrap()).value();
            assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }
    }

    #[test]
    fn pair_names() {
        assert_eq!(
            "pol-oam".parse::<DofPair>().unwrap(),
            DofPair::polarization_oam()
        );
        assert_eq!(
            "polarization-path".parse::<DofPair>().unwrap(),
            DofPair::polarization_path()
        );
        let rev: DofPair = "oam-path".parse().unwrap();
        assert_eq!((rev.first(), rev.second()), (Dof::Oam, Dof::Path));
        assert_eq!(rev.to_string(), "oam-path");
        assert!(matches!(
            "pol-pol".parse::<DofPair>(),
            Err(Error::SameDof(_))
        ));
        assert!("pol".parse::<DofPair>().is_err());
        assert!("pol-spin".parse::<DofPair>().is_err());
    }
}
