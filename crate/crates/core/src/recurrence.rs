//! Amplitude recurrences for the modified Pauli walk, written out per site.
//!
//! This is an independent route to the same evolution as
//! [`crate::operators::step`], used to cross-check it. With `c = cos θ`,
//! `s = sin θ`, the amplitudes `a` (on `|H⟩`) and `b` (on `|V⟩`) obey
//!
//! ```text
//! a'(x,m) =  a(x+1,m+1) (e^{iζ}s)(e^{-iξ}c)  + a(x+1,m-1) (e^{iξ}c)(e^{-iζ}s)
//!          + b(x+1,m+1) (e^{iζ}s)(-e^{iζ}s)  + b(x+1,m-1) (e^{iξ}c)(e^{iξ}c)
//! b'(x,m) =  a(x-1,m+1) (e^{-iξ}c)(e^{-iξ}c) + a(x-1,m-1) (-e^{-iζ}s)(e^{-iζ}s)
//!          + b(x-1,m+1) (e^{-iξ}c)(-e^{iζ}s) + b(x-1,m-1) (-e^{-iζ}s)(e^{iξ}c)
//! ```
//!
//! The PBS only ever moves `|H⟩` to `x − 1` and `|V⟩` to `x + 1`, so `a'`
//! draws exclusively from column `x + 1` and `b'` from column `x − 1`. A form
//! that feeds `b(x−1, ·)` into `a'` and `a(x+1, ·)` into `b'` with the same
//! coefficients is still unitary but describes a different walk; see
//! `swapped_source_form_is_a_different_walk` below.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::SU2Params;
use crate::state::{InitialStateParams, Site, WalkState, ZERO};

type Grid = BTreeMap<(i64, i64), Complex64>;

/// Amplitude grids `a` (horizontal) and `b` (vertical) after `n` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeGrids {
    pub a: Grid,
    pub b: Grid,
    pub n: usize,
}

impl AmplitudeGrids {
    pub fn initial(params: InitialStateParams) -> Self {
        let [h, v] = params.spinor();
        let mut a = Grid::new();
        let mut b = Grid::new();
        a.insert((0, 0), h);
        b.insert((0, 0), v);
        AmplitudeGrids { a, b, n: 0 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.a
            .values()
            .chain(self.b.values())
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn to_state(&self) -> WalkState {
        let sites: BTreeSet<(i64, i64)> = self.a.keys().chain(self.b.keys()).copied().collect();
        WalkState::from_entries(
            self.n,
            sites
                .into_iter()
                .map(|(x, m)| (Site::new(x, m), [read(&self.a, x, m), read(&self.b, x, m)])),
        )
    }
}

fn read(grid: &Grid, x: i64, m: i64) -> Complex64 {
    grid.get(&(x, m)).copied().unwrap_or(ZERO)
}

struct Coefficients {
    a_from_a_up: Complex64,
    a_from_a_down: Complex64,
    a_from_b_up: Complex64,
    a_from_b_down: Complex64,
    b_from_a_up: Complex64,
    b_from_a_down: Complex64,
    b_from_b_up: Complex64,
    b_from_b_down: Complex64,
}

impl Coefficients {
    // "up" reads the neighbour at m + 1, "down" the one at m − 1
    fn new(p: SU2Params) -> Self {
        let (s, c) = p.theta.sin_cos();
        let e = |r: f64, phase: f64| Complex64::from_polar(r, phase);
        Coefficients {
            a_from_a_up: e(s, p.zeta) * e(c, -p.xi),
            a_from_a_down: e(c, p.xi) * e(s, -p.zeta),
            a_from_b_up: e(s, p.zeta) * -e(s, p.zeta),
            a_from_b_down: e(c, p.xi) * e(c, p.xi),
            b_from_a_up: e(c, -p.xi) * e(c, -p.xi),
            b_from_a_down: -e(s, -p.zeta) * e(s, -p.zeta),
            b_from_b_up: e(c, -p.xi) * -e(s, p.zeta),
            b_from_b_down: -e(s, -p.zeta) * e(c, p.xi),
        }
    }
}

fn candidate_sites(grids: &AmplitudeGrids) -> BTreeSet<(i64, i64)> {
    let mut sites = BTreeSet::new();
    for &(x, m) in grids.a.keys().chain(grids.b.keys()) {
        for dx in [-1, 1] {
            for dm in [-1, 1] {
                sites.insert((x + dx, m + dm));
            }
        }
    }
    sites
}

/// One application of the site recurrences. Missing neighbours read as zero.
pub fn recurrence_step(grids: &AmplitudeGrids, params: SU2Params) -> AmplitudeGrids {
    let k = Coefficients::new(params);
    let (a, b) = (&grids.a, &grids.b);
    let mut next_a = Grid::new();
    let mut next_b = Grid::new();
    for (x, m) in candidate_sites(grids) {
        let na = read(a, x + 1, m + 1) * k.a_from_a_up
            + read(a, x + 1, m - 1) * k.a_from_a_down
            + read(b, x + 1, m + 1) * k.a_from_b_up
            + read(b, x + 1, m - 1) * k.a_from_b_down;
        let nb = read(a, x - 1, m + 1) * k.b_from_a_up
            + read(a, x - 1, m - 1) * k.b_from_a_down
            + read(b, x - 1, m + 1) * k.b_from_b_up
            + read(b, x - 1, m - 1) * k.b_from_b_down;
        if na != ZERO {
            next_a.insert((x, m), na);
        }
        if nb != ZERO {
            next_b.insert((x, m), nb);
        }
    }
    AmplitudeGrids {
        a: next_a,
        b: next_b,
        n: grids.n + 1,
    }
}

/// `n` recurrence steps from the input polarization at the origin.
pub fn oracle_evolve(init: InitialStateParams, params: SU2Params, n: usize) -> AmplitudeGrids {
    (0..n).fold(AmplitudeGrids::initial(init), |g, _| {
        recurrence_step(&g, params)
    })
}

/// Largest amplitude modulus difference, pairing `a` with `H` and `b` with `V`.
pub fn compare_with_operator(grids: &AmplitudeGrids, state: &WalkState) -> Result<f64> {
    if grids.n != state.steps() {
        return Err(Error::StepMismatch {
            oracle: grids.n,
            state: state.steps(),
        });
    }
    Ok(grids.to_state().max_difference(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{evolve, Plate, WalkKind, WalkVariant};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn operator_state(init: InitialStateParams, params: SU2Params, n: usize) -> WalkState {
        evolve(
            &WalkState::initial(init),
            &WalkVariant::new(WalkKind::ModifiedPauli, Plate::Params(params)),
            n,
        )
    }

    #[test]
    fn empty_neighbourhood_gives_zero() {
        let mut g = AmplitudeGrids::initial(InitialStateParams::diagonal());
        g.a.clear();
        g.b.clear();
        let next = recurrence_step(&g, SU2Params::qplate());
        assert!(next.a.is_empty() && next.b.is_empty());
    }

    #[test]
    fn one_step_four_corners() {
        let g = oracle_evolve(InitialStateParams::diagonal(), SU2Params::qplate(), 1);
        assert_eq!(g.n, 1);
        let dist = g.to_state().probability_distribution();
        assert_eq!(dist.len(), 4);
        for p in dist.values() {
            assert!((p - 0.25).abs() < 1e-15);
        }
        // a(−1, −1) = a(0,0)·(e^{iζ}s)(e^{−iξ}c) + b(0,0)·(e^{iζ}s)(−e^{iζ}s) = (1/√2)(−i/2 + 1/2)
        let r = FRAC_1_SQRT_2;
        let want = Complex64::new(0.5 * r, -0.5 * r);
        assert!((read(&g.a, -1, -1) - want).norm() < 1e-15);
    }

    #[test]
    fn zero_steps_is_initial() {
        let init = InitialStateParams::new(0.3, 0.9);
        assert_eq!(
            oracle_evolve(init, SU2Params::qplate(), 0),
            AmplitudeGrids::initial(init)
        );
    }

    #[test]
    fn norm_preserved_at_random_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let p = SU2Params::new(
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
            );
            let mut g = AmplitudeGrids::initial(InitialStateParams::new(
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..PI),
            ));
            for _ in 0..10 {
                g = recurrence_step(&g, p);
                assert!((g.norm_squared() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matches_operator_evolution() {
        let init = InitialStateParams::diagonal();
        let p = SU2Params::qplate();
        let g = oracle_evolve(init, p, 10);
        let dev = compare_with_operator(&g, &operator_state(init, p, 10)).unwrap();
        assert!(dev < 1e-12, "deviation {dev:e}");
    }

    #[test]
    fn comparator_detects_divergence_and_step_mismatch() {
        let init = InitialStateParams::diagonal();
        let g = oracle_evolve(init, SU2Params::qplate(), 10);
        let other = operator_state(init, SU2Params::new(0.4, 0.2, 1.0), 10);
        assert!(compare_with_operator(&g, &other).unwrap() > 0.01);
        assert_eq!(compare_with_operator(&g, &g.to_state()).unwrap(), 0.0);
        let short = operator_state(init, SU2Params::qplate(), 9);
        assert!(matches!(
            compare_with_operator(&g, &short),
            Err(Error::StepMismatch {
                oracle: 10,
                state: 9
            })
        ));
    }

    /// Same eight coefficients, but `a'` reads `b` from column `x − 1` and
    /// `b'` reads `a` from column `x + 1`.
    fn swapped_source_step(grids: &AmplitudeGrids, params: SU2Params) -> AmplitudeGrids {
        let k = Coefficients::new(params);
        let (a, b) = (&grids.a, &grids.b);
        let mut next_a = Grid::new();
        let mut next_b = Grid::new();
        for (x, m) in candidate_sites(grids) {
            next_a.insert(
                (x, m),
                read(a, x + 1, m + 1) * k.a_from_a_up
                    + read(a, x + 1, m - 1) * k.a_from_a_down
                    + read(b, x - 1, m + 1) * k.b_from_a_up
                    + read(b, x - 1, m - 1) * k.b_from_a_down,
            );
            next_b.insert(
                (x, m),
                read(a, x + 1, m + 1) * k.a_from_b_up
                    + read(a, x + 1, m - 1) * k.a_from_b_down
                    + read(b, x - 1, m + 1) * k.b_from_b_up
                    + read(b, x - 1, m - 1) * k.b_from_b_down,
            );
        }
        AmplitudeGrids {
            a: next_a,
            b: next_b,
            n: grids.n + 1,
        }
    }

    #[test]
    fn swapped_source_form_is_a_different_walk() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let p = SU2Params::new(
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(0.2..1.3),
            );
            let init = InitialStateParams::new(rng.gen_range(0.2..1.3), rng.gen_range(-PI..PI));
            let g = (0..10).fold(AmplitudeGrids::initial(init), |g, _| {
                swapped_source_step(&g, p)
            });
            assert!((g.norm_squared() - 1.0).abs() < 1e-12);
            assert!(compare_with_operator(&g, &operator_state(init, p, 10)).unwrap() > 1e-3);
        }
    }
}
