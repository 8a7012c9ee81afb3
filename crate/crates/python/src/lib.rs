//! Python bindings. Build with `maturin develop` or copy the cdylib to
//! `hyperwalk_py.so`; see `python/smoke_test.py`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use hyperwalk::io::{state_from_json, state_to_json, PlateSpec};
use hyperwalk::{
    Axis, Complex64, DofPair, InitialStateParams, OrthoPair, Plate, Realization, SU2Params,
    SweepParam, SweepSpec, WalkKind,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair_of(name: &str) -> PyResult<DofPair> {
    name.parse().map_err(value_error)
}

/// Pure state of the photon: amplitudes per `(coin, x, m)`.
#[pyclass(module = "hyperwalk_py", name = "WalkState", from_py_object)]
#[derive(Clone)]
struct PyWalkState(hyperwalk::WalkState);

#[pymethods]
impl PyWalkState {
    /// `cos α |H⟩ + e^{iβ} sin α |V⟩` at the origin.
    #[staticmethod]
    #[pyo3(signature = (alpha = FRAC_PI_4, beta = 0.0))]
    fn initial(alpha: f64, beta: f64) -> Self {
        PyWalkState(hyperwalk::WalkState::initial(InitialStateParams::new(
            alpha, beta,
        )))
    }

    /// From a JSON state dump.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        state_from_json(text).map(PyWalkState).map_err(value_error)
    }

    fn to_json(&self) -> PyResult<String> {
        state_to_json(&self.0).map_err(value_error)
    }

    #[getter]
    fn steps(&self) -> usize {
        self.0.steps()
    }

    fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    /// `[(coin, x, m, amplitude)]` for every non-zero amplitude.
    fn amplitudes(&self) -> Vec<(String, i64, i64, Complex64)> {
        self.0
            .coin_entries()
            .map(|(c, s, a)| (c.label().to_string(), s.x, s.m, a))
            .collect()
    }

    /// `{(x, m): probability}`.
    fn probabilities(&self) -> BTreeMap<(i64, i64), f64> {
        self.0
            .probability_distribution()
            .into_iter()
            .map(|(s, p)| ((s.x, s.m), p))
            .collect()
    }

    /// Marginal over `"path"` (x) or `"oam"` (m).
    fn marginal(&self, axis: &str) -> PyResult<BTreeMap<i64, f64>> {
        let axis = match axis {
            "path" | "x" => Axis::Path,
            "oam" | "m" => Axis::Oam,
            other => return Err(value_error(format!("unknown axis {other:?}"))),
        };
        Ok(self.0.marginal_distribution(axis))
    }

    /// Negativity between two degrees of freedom, e.g. `"pol-oam"`.
    #[pyo3(signature = (pair = "pol-oam"))]
    fn negativity(&self, pair: &str) -> PyResult<f64> {
        hyperwalk::state_negativity(&self.0, pair_of(pair)?)
            .map(|n| n.value())
            .map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "WalkState(steps={}, sites={})",
            self.0.steps(),
            self.0.len()
        )
    }
}

/// A walk kind together with its plate.
///
/// `plate` is `"q"`, a `(xi, zeta, theta)` tuple, a `(u1, u2)` pair of complex
/// 2-vectors, or the JSON plate syntax used by the CLI.
#[pyclass(module = "hyperwalk_py", name = "Variant", from_py_object)]
#[derive(Clone)]
struct PyVariant(hyperwalk::WalkVariant);

fn plate_of(obj: &Bound<'_, PyAny>) -> PyResult<Plate> {
    if let Ok(text) = obj.extract::<String>() {
        return PlateSpec::parse(&text)
            .and_then(|p| p.to_plate())
            .map_err(value_error);
    }
    if let Ok((xi, zeta, theta)) = obj.extract::<(f64, f64, f64)>() {
        return Ok(Plate::Params(SU2Params::new(xi, zeta, theta)));
    }
    if let Ok((u1, u2)) = obj.extract::<([Complex64; 2], [Complex64; 2])>() {
        return OrthoPair::orthonormalized(u1, u2, hyperwalk::io::PAIR_INPUT_TOL)
            .map(Plate::Pair)
            .map_err(value_error);
    }
    Err(value_error(
        "plate must be \"q\", (xi, zeta, theta), (u1, u2) or JSON",
    ))
}

#[pymethods]
impl PyVariant {
    #[new]
    #[pyo3(signature = (kind = "modified-pauli", plate = None))]
    fn new(kind: &str, plate: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let kind: WalkKind = kind.parse().map_err(value_error)?;
        let plate = match plate {
            Some(p) => plate_of(p)?,
            None => Plate::Q,
        };
        Ok(PyVariant(hyperwalk::WalkVariant::new(kind, plate)))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.name()
    }

    /// The conditioning pair `(u1, u2)`.
    fn pair(&self) -> ([Complex64; 2], [Complex64; 2]) {
        let p = self.0.plate.pair();
        (p.u1, p.u2)
    }

    /// Coin used by the alternate walks, as nested lists.
    fn coin(&self) -> [[Complex64; 2]; 2] {
        self.0.plate.coin().matrix().0
    }

    fn __repr__(&self) -> String {
        format!(
            "Variant(kind={:?}, plate={:?})",
            self.0.kind.name(),
            self.0.plate
        )
    }
}

/// `n` steps of `variant` from `state`.
#[pyfunction]
fn evolve(state: &PyWalkState, variant: &PyVariant, steps: usize) -> PyWalkState {
    PyWalkState(hyperwalk::evolve(&state.0, &variant.0, steps))
}

/// `state` followed by the state after each of the `steps` steps.
#[pyfunction]
fn evolve_snapshots(state: &PyWalkState, variant: &PyVariant, steps: usize) -> Vec<PyWalkState> {
    hyperwalk::evolve_snapshots(&state.0, &variant.0, steps)
        .into_iter()
        .map(PyWalkState)
        .collect()
}

/// SU(2) coin for the given parameters.
#[pyfunction]
fn coin_matrix(xi: f64, zeta: f64, theta: f64) -> [[Complex64; 2]; 2] {
    hyperwalk::coin_matrix(SU2Params::new(xi, zeta, theta))
        .matrix()
        .0
}

/// `[(n, negativity)]` for `n = 1..=steps`.
#[pyfunction]
#[pyo3(signature = (variant, steps, pair = "pol-oam", alpha = FRAC_PI_4, beta = 0.0))]
fn negativity_curve(
    py: Python<'_>,
    variant: &PyVariant,
    steps: usize,
    pair: &str,
    alpha: f64,
    beta: f64,
) -> PyResult<Vec<(usize, f64)>> {
    let pair = pair_of(pair)?;
    let v = variant.0;
    py.detach(|| hyperwalk::negativity_curve(&v, InitialStateParams::new(alpha, beta), pair, steps))
        .map_err(value_error)
}

/// `[(angle, negativity)]` over a grid of one SU(2) parameter.
#[pyfunction]
#[pyo3(signature = (
    param, start, stop, step, xi = 0.0, zeta = 0.0, theta = 0.0,
    steps = 25, pair = "path-oam", kind = "modified-pauli", alpha = FRAC_PI_4, beta = 0.0,
))]
#[allow(clippy::too_many_arguments)]
fn sweep(
    py: Python<'_>,
    param: &str,
    start: f64,
    stop: f64,
    step: f64,
    xi: f64,
    zeta: f64,
    theta: f64,
    steps: usize,
    pair: &str,
    kind: &str,
    alpha: f64,
    beta: f64,
) -> PyResult<Vec<(f64, f64)>> {
    let param: SweepParam = param.parse().map_err(value_error)?;
    let mut spec = SweepSpec::new(param, start, stop, step);
    spec.kind = kind.parse().map_err(value_error)?;
    let pair = pair_of(pair)?;
    let fixed = SU2Params::new(xi, zeta, theta);
    let init = InitialStateParams::new(alpha, beta);
    py.detach(|| hyperwalk::parameter_sweep(&spec, fixed, init, steps, pair))
        .map_err(value_error)
}

/// `{"pbs": .., "jplates": .., "hwps": ..}`.
#[pyfunction]
#[pyo3(signature = (steps, realization = "jplate"))]
fn component_counts(steps: i64, realization: &str) -> PyResult<BTreeMap<&'static str, u64>> {
    let r: Realization = realization.parse().map_err(value_error)?;
    let c = hyperwalk::component_counts(steps, r).map_err(value_error)?;
    Ok(BTreeMap::from([
        ("pbs", c.pbs),
        ("jplates", c.jplates),
        ("hwps", c.hwps),
    ]))
}

/// Optical layout as `"json"` or `"dot"` text.
#[pyfunction]
#[pyo3(signature = (steps, realization = "jplate", format = "json"))]
fn layout(steps: i64, realization: &str, format: &str) -> PyResult<String> {
    let r: Realization = realization.parse().map_err(value_error)?;
    let l = hyperwalk::emit_layout(steps, r).map_err(value_error)?;
    match format {
        "json" => l.to_json().map_err(value_error),
        "dot" => Ok(l.to_dot()),
        other => Err(value_error(format!("unknown layout format {other:?}"))),
    }
}

/// Largest amplitude gap between operator evolution and the site recurrences.
#[pyfunction]
#[pyo3(signature = (xi, zeta, theta, alpha = FRAC_PI_4, beta = 0.0, steps = 10))]
fn oracle_deviation(
    xi: f64,
    zeta: f64,
    theta: f64,
    alpha: f64,
    beta: f64,
    steps: usize,
) -> PyResult<f64> {
    let params = SU2Params::new(xi, zeta, theta);
    let init = InitialStateParams::new(alpha, beta);
    let grids = hyperwalk::oracle_evolve(init, params, steps);
    let state = hyperwalk::evolve(
        &hyperwalk::WalkState::initial(init),
        &hyperwalk::WalkVariant::new(WalkKind::ModifiedPauli, Plate::Params(params)),
        steps,
    );
    hyperwalk::compare_with_operator(&grids, &state).map_err(value_error)
}

#[pymodule]
fn hyperwalk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWalkState>()?;
    m.add_class::<PyVariant>()?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_snapshots, m)?)?;
    m.add_function(wrap_pyfunction!(coin_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(negativity_curve, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(component_counts, m)?)?;
    m.add_function(wrap_pyfunction!(layout, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_deviation, m)?)?;
    Ok(())
}
