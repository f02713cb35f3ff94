//! Python bindings. Rationals cross the boundary as "p/q" strings so that
//! nothing is rounded on the way in or out.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nokcert::bounds;
use nokcert::certificates::{self, Scenario, SuiteOptions};
use nokcert::Rational;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    s.trim().parse::<Rational>().map_err(err)
}

/// Parses an expression in `t` and `param` and prints it back in normal form.
#[pyfunction]
#[pyo3(signature = (text, param = "eps"))]
fn normalize_expr(text: &str, param: &str) -> PyResult<String> {
    let p = certificates::parse_expr(text, param).map_err(err)?;
    Ok(certificates::print_expr(&p, param))
}

/// Evaluates an expression in `t` and `param` exactly.
#[pyfunction]
#[pyo3(signature = (text, s, t, param = "eps"))]
fn eval_expr(text: &str, s: &str, t: &str, param: &str) -> PyResult<String> {
    let p = certificates::parse_expr(text, param).map_err(err)?;
    Ok(p.eval(&rational(s)?, &rational(t)?).to_string())
}

#[pyfunction]
fn debarre_min_mult(b_cubed: &str, eps: &str) -> PyResult<u64> {
    bounds::debarre_min_mult(&rational(b_cubed)?, &rational(eps)?).map_err(err)
}

#[pyfunction]
fn seshadri_width_cap(q: u32, eps: &str) -> PyResult<String> {
    Ok(bounds::seshadri_width_cap(q, &rational(eps)?).map_err(err)?.to_string())
}

/// Best Hodge-index cap on the abelian-surface degree: `(q, value)`.
#[pyfunction]
fn hodge_abelian_sup(eps: &str) -> PyResult<(u32, String)> {
    let (q, v) = bounds::hodge_abelian_sup(&rational(eps)?);
    Ok((q, v.to_string()))
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    certificates::BUILTINS.iter().map(|b| b.name).collect()
}

#[pyfunction]
fn builtin_json(name: &str) -> PyResult<&'static str> {
    certificates::BUILTINS
        .iter()
        .find(|b| b.name == name)
        .map(|b| b.json)
        .ok_or_else(|| err(format!("no built-in scenario named '{name}'")))
}

/// Verifies a scenario document and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (scenario_json, seed = None))]
fn verify_scenario(py: Python<'_>, scenario_json: &str, seed: Option<u64>) -> PyResult<String> {
    let scenario = Scenario::from_json(scenario_json).map_err(err)?;
    let mut opts = SuiteOptions::default();
    if let Some(seed) = seed {
        opts.seed = seed;
    }
    Ok(py.detach(|| certificates::run_scenarios(&[scenario], &opts).to_json()))
}

/// Runs the built-in suite with its structural checks; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (seed = None, with_stretch = false))]
fn run_builtin_suite(py: Python<'_>, seed: Option<u64>, with_stretch: bool) -> String {
    let mut opts = SuiteOptions::default();
    if let Some(seed) = seed {
        opts.seed = seed;
    }
    py.detach(|| certificates::run_builtin_suite(&opts, with_stretch).to_json())
}

#[pymodule]
fn pynokcert(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize_expr, m)?)?;
    m.add_function(wrap_pyfunction!(eval_expr, m)?)?;
    m.add_function(wrap_pyfunction!(debarre_min_mult, m)?)?;
    m.add_function(wrap_pyfunction!(seshadri_width_cap, m)?)?;
    m.add_function(wrap_pyfunction!(hodge_abelian_sup, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_builtin_suite, m)?)?;
    m.add("DEFAULT_SEED", certificates::DEFAULT_SEED)?;
    Ok(())
}
