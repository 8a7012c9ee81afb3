//! Sparse pure state of the walker over polarization ⊗ path ⊗ OAM.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

/// Amplitudes whose modulus falls below this are dropped after every step.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Polarization basis state, used as the walk coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coin {
    H,
    V,
}

impl Coin {
    pub const ALL: [Coin; 2] = [Coin::H, Coin::V];

    pub fn index(self) -> usize {
        match self {
            Coin::H => 0,
            Coin::V => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Coin::H => "H",
            Coin::V => "V",
        }
    }
}

impl fmt::Display for Coin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Lattice site: `x` is the path position, `m` the OAM quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub x: i64,
    pub m: i64,
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, m: 0 };

    pub const fn new(x: i64, m: i64) -> Self {
        Site { x, m }
    }

    /// Whether the site is reachable from the origin in exactly `n` steps.
    pub fn in_light_cone(self, n: usize) -> bool {
        let n = n as i64;
        self.x.abs() <= n
            && self.m.abs() <= n
            && (self.x - n).rem_euclid(2) == 0
            && (self.m - n).rem_euclid(2) == 0
    }
}

/// Spatial axis used for marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Path,
    Oam,
}

/// Polarization amplitudes `(H, V)` at one site.
pub type Spinor = [Complex64; 2];

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Parameters of the input polarization `cos α |H⟩ + e^{iβ} sin α |V⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialStateParams {
    pub alpha: f64,
    pub beta: f64,
}

impl InitialStateParams {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        InitialStateParams { alpha, beta }
    }

    /// `(|H⟩ + |V⟩)/√2`, the default input.
    pub fn diagonal() -> Self {
        Self::new(std::f64::consts::FRAC_PI_4, 0.0)
    }

    pub fn spinor(&self) -> Spinor {
        [
            Complex64::new(self.alpha.cos(), 0.0),
            Complex64::from_polar(self.alpha.sin(), self.beta),
        ]
    }
}

/// Sparse pure state. Sites are kept in `(x, m)` order, so iteration and
/// serialization are deterministic.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WalkState {
    amplitudes: BTreeMap<Site, Spinor>,
    steps: usize,
}

impl WalkState {
    /// Photon at the origin with the polarization described by `params`.
    pub fn initial(params: InitialStateParams) -> Self {
        Self::localized(Site::ORIGIN, params.spinor())
    }

    /// A single populated site carrying the given polarization.
    pub fn localized(site: Site, spinor: Spinor) -> Self {
        Self::from_entries(0, [(site, spinor)])
    }

    /// Builds a state from `(site, spinor)` entries. Repeated sites are summed.
    pub fn from_entries(steps: usize, entries: impl IntoIterator<Item = (Site, Spinor)>) -> Self {
        let mut amplitudes: BTreeMap<Site, Spinor> = BTreeMap::new();
        for (site, [h, v]) in entries {
            let slot = amplitudes.entry(site).or_insert([ZERO; 2]);
            slot[0] += h;
            slot[1] += v;
        }
        let mut state = WalkState { amplitudes, steps };
        state.prune();
        state
    }

    /// Builds a state from per-coin entries `(coin, site, amplitude)`.
    pub fn from_coin_entries(
        steps: usize,
        entries: impl IntoIterator<Item = (Coin, Site, Complex64)>,
    ) -> Self {
        Self::from_entries(
            steps,
            entries.into_iter().map(|(coin, site, amp)| {
                let mut spinor = [ZERO; 2];
                spinor[coin.index()] = amp;
                (site, spinor)
            }),
        )
    }

    pub(crate) fn from_map(amplitudes: BTreeMap<Site, Spinor>, steps: usize) -> Self {
        let mut state = WalkState { amplitudes, steps };
        state.prune();
        state
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub(crate) fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    /// Number of populated sites.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, coin: Coin, site: Site) -> Complex64 {
        self.amplitudes
            .get(&site)
            .map_or(ZERO, |spinor| spinor[coin.index()])
    }

    pub fn spinor(&self, site: Site) -> Spinor {
        self.amplitudes.get(&site).copied().unwrap_or([ZERO; 2])
    }

    /// Populated sites with their polarization amplitudes, in `(x, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Site, &Spinor)> + '_ {
        self.amplitudes.iter().map(|(site, spinor)| (*site, spinor))
    }

    /// Non-zero `(coin, site, amplitude)` triples in `(x, m, coin)` order.
    pub fn coin_entries(&self) -> impl Iterator<Item = (Coin, Site, Complex64)> + '_ {
        self.iter().flat_map(|(site, spinor)| {
            Coin::ALL
                .into_iter()
                .filter(move |c| spinor[c.index()] != ZERO)
                .map(move |c| (c, site, spinor[c.index()]))
        })
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|[h, v]| h.norm_sqr() + v.norm_sqr())
            .sum()
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(site, [h, v])| (*site, [h * factor, v * factor]))
            .collect();
        Self::from_map(amplitudes, self.steps)
    }

    /// Per-site probability, summed over polarization.
    pub fn probability_distribution(&self) -> BTreeMap<Site, f64> {
        self.amplitudes
            .iter()
            .map(|(site, [h, v])| (*site, h.norm_sqr() + v.norm_sqr()))
            .collect()
    }

    pub fn marginal_distribution(&self, axis: Axis) -> BTreeMap<i64, f64> {
        let mut out = BTreeMap::new();
        for (site, [h, v]) in &self.amplitudes {
            let key = match axis {
                Axis::Path => site.x,
                Axis::Oam => site.m,
            };
            *out.entry(key).or_insert(0.0) += h.norm_sqr() + v.norm_sqr();
        }
        out
    }

    /// Sites whose populated amplitudes lie outside the `steps`-step light
    /// cone or break its parity.
    pub fn light_cone_violations(&self) -> Vec<Site> {
        self.amplitudes
            .keys()
            .copied()
            .filter(|s| !s.in_light_cone(self.steps))
            .collect()
    }

    /// Largest elementwise amplitude difference against `other`.
    pub fn max_difference(&self, other: &WalkState) -> f64 {
        let mut worst: f64 = 0.0;
        for site in self.amplitudes.keys().chain(other.amplitudes.keys()) {
            let a = self.spinor(*site);
            let b = other.spinor(*site);
            worst = worst.max((a[0] - b[0]).norm()).max((a[1] - b[1]).norm());
        }
        worst
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, spinor| {
            for amp in spinor.iter_mut() {
                if amp.norm() < PRUNE_THRESHOLD {
                    *amp = ZERO;
                }
            }
            spinor[0] != ZERO || spinor[1] != ZERO
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn initial_state_horizontal() {
        let s = WalkState::initial(InitialStateParams::new(0.0, 0.0));
        assert_eq!(s.len(), 1);
        assert_eq!(s.steps(), 0);
        assert!(close(
            s.amplitude(Coin::H, Site::ORIGIN),
            Complex64::new(1.0, 0.0)
        ));
        assert_eq!(s.amplitude(Coin::V, Site::ORIGIN), ZERO);
        // the zero V component is not reported as an entry
        assert_eq!(s.coin_entries().count(), 1);
    }

    #[test]
    fn initial_state_diagonal() {
        let s = WalkState::initial(InitialStateParams::new(FRAC_PI_4, 0.0));
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(s.amplitude(Coin::H, Site::ORIGIN), r));
        assert!(close(s.amplitude(Coin::V, Site::ORIGIN), r));
    }

    #[test]
    fn initial_state_phase() {
        let s = WalkState::initial(InitialStateParams::new(FRAC_PI_2, FRAC_PI_2));
        assert!(close(s.amplitude(Coin::V, Site::ORIGIN), Complex64::i()));
        assert!(s.amplitude(Coin::H, Site::ORIGIN).norm() < 1e-15);
    }

    #[test]
    fn norm_of_fresh_and_scaled_state() {
        let s = WalkState::initial(InitialStateParams::diagonal());
        assert!((s.norm_squared() - 1.0).abs() < 1e-15);
        let half = s.scaled(Complex64::new(0.5, 0.0));
        assert!((half.norm_squared() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn distributions_of_initial_state() {
        let s = WalkState::initial(InitialStateParams::diagonal());
        let p = s.probability_distribution();
        assert_eq!(p.len(), 1);
        assert!((p[&Site::ORIGIN] - 1.0).abs() < 1e-15);
        let path = s.marginal_distribution(Axis::Path);
        assert!((path[&0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_entries_sums_duplicates_and_prunes() {
        let one = Complex64::new(1.0, 0.0);
        let s = WalkState::from_entries(
            0,
            [
                (Site::new(1, 1), [one, ZERO]),
                (Site::new(1, 1), [-one, ZERO]),
                (Site::new(0, 0), [Complex64::new(1e-17, 0.0), one]),
            ],
        );
        assert_eq!(s.len(), 1);
        assert_eq!(s.amplitude(Coin::H, Site::ORIGIN), ZERO);
    }

    #[test]
    fn light_cone_membership() {
        assert!(Site::new(0, 0).in_light_cone(0));
        assert!(!Site::new(1, 1).in_light_cone(0));
        assert!(Site::new(-3, 1).in_light_cone(3));
        assert!(!Site::new(-2, 1).in_light_cone(3));
        assert!(!Site::new(5, 1).in_light_cone(3));
    }
}
