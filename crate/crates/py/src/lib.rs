//! Python bindings. Reports come back as plain dicts and lists, with the
//! same fields as the `fsw` JSON output.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fsw_core::atlas::{atlas_lookup, ATLAS_NAMES};
use fsw_core::FswError;

fn to_py(e: FswError) -> PyErr {
    match e {
        FswError::CapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn loads<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// Runs a command line (without the program name); returns `(report, status)`.
fn run<'py>(py: Python<'py>, args: &[&str]) -> PyResult<(Bound<'py, PyAny>, i32)> {
    let argv: Vec<&str> = std::iter::once("fsw").chain(args.iter().copied()).collect();
    let (v, status) = py.detach(|| fsw_core::cli::run_to_json(argv)).map_err(to_py)?;
    Ok((loads(py, &v)?, status))
}

fn with_group<'a>(cmd: &[&'a str], group: &'a str, prime: &'a str, seed: &'a str) -> Vec<&'a str> {
    let mut v = cmd.to_vec();
    v.extend(["--group", group, "--prime", prime, "--seed", seed]);
    v
}

/// Order of a group given as `atlas:NAME` or a generator file path.
#[pyfunction]
fn group_order(group: &str) -> PyResult<u128> {
    Ok(fsw_core::cli::load_group(Some(group)).map_err(to_py)?.order())
}

#[pyfunction]
fn atlas_names() -> Vec<&'static str> {
    ATLAS_NAMES.to_vec()
}

/// Generators of an atlas group in cycle notation.
#[pyfunction]
fn atlas_generators(name: &str) -> PyResult<Vec<String>> {
    Ok(atlas_lookup(name).map_err(to_py)?.gens().iter().map(|g| g.to_string()).collect())
}

#[pyfunction]
fn identify(py: Python<'_>, group: &str) -> PyResult<String> {
    let (r, _) = run(py, &["twogroup", "identify", "--group", group])?;
    r.get_item("label")?.extract()
}

#[pyfunction]
#[pyo3(signature = (group, prime = 2, seed = 1))]
fn fusion_build<'py>(py: Python<'py>, group: &str, prime: u64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (p, s) = (prime.to_string(), seed.to_string());
    Ok(run(py, &with_group(&["fusion", "build"], group, &p, &s))?.0)
}

#[pyfunction]
#[pyo3(signature = (group, prime = 2, seed = 1))]
fn saturation<'py>(py: Python<'py>, group: &str, prime: u64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (p, s) = (prime.to_string(), seed.to_string());
    Ok(run(py, &with_group(&["fusion", "saturation"], group, &p, &s))?.0)
}

#[pyfunction]
#[pyo3(signature = (group, prime = 2, seed = 1))]
fn focal<'py>(py: Python<'py>, group: &str, prime: u64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (p, s) = (prime.to_string(), seed.to_string());
    Ok(run(py, &with_group(&["fusion", "focal"], group, &p, &s))?.0)
}

#[pyfunction]
fn hmain<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    Ok(run(py, &["classify", "hmain", "--group", group])?.0)
}

#[pyfunction]
fn conclusion<'py>(py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyAny>> {
    Ok(run(py, &["classify", "conclusion", "--group", group])?.0)
}

#[pyfunction]
#[pyo3(signature = (group, q = None))]
fn maxclass<'py>(py: Python<'py>, group: &str, q: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let qs = q.map(|q| q.to_string());
    let mut args = vec!["classify", "maxclass", "--group", group];
    if let Some(q) = &qs {
        args.extend(["--q", q.as_str()]);
    }
    Ok(run(py, &args)?.0)
}

#[pyfunction]
#[pyo3(signature = (q = 9))]
fn l2q_omnibus<'py>(py: Python<'py>, q: u64) -> PyResult<Bound<'py, PyAny>> {
    let qs = q.to_string();
    Ok(run(py, &["classify", "l2q", "--q", &qs])?.0)
}

/// The four scenario rows.
#[pyfunction]
fn near_miss_table<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    run(py, &["classify", "table"])?.0.get_item("result")
}

#[pyfunction]
fn render_table(py: Python<'_>) -> PyResult<String> {
    let rows = py.detach(fsw_core::classify::near_miss_suite).map_err(to_py)?;
    Ok(fsw_core::classify::render_table(&rows))
}

/// The desk acceptance suite; one dict per criterion.
#[pyfunction]
#[pyo3(signature = (jobs = 1))]
fn verify_desk<'py>(py: Python<'py>, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let js = jobs.to_string();
    run(py, &["verify", "paper", "--suite", "desk", "--jobs", &js])?.0.get_item("result")
}

/// Runs `fsw` with the given arguments, writing to stdout or `--out`.
#[pyfunction]
fn main(py: Python<'_>, args: Vec<String>) -> i32 {
    py.detach(|| fsw_core::cli::run_command(std::iter::once("fsw".to_string()).chain(args)))
}

#[pymodule]
pub fn fsw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA_VERSION", fsw_core::cli::SCHEMA_VERSION)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(atlas_names, m)?)?;
    m.add_function(wrap_pyfunction!(atlas_generators, m)?)?;
    m.add_function(wrap_pyfunction!(identify, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_build, m)?)?;
    m.add_function(wrap_pyfunction!(saturation, m)?)?;
    m.add_function(wrap_pyfunction!(focal, m)?)?;
    m.add_function(wrap_pyfunction!(hmain, m)?)?;
    m.add_function(wrap_pyfunction!(conclusion, m)?)?;
    m.add_function(wrap_pyfunction!(maxclass, m)?)?;
    m.add_function(wrap_pyfunction!(l2q_omnibus, m)?)?;
    m.add_function(wrap_pyfunction!(near_miss_table, m)?)?;
    m.add_function(wrap_pyfunction!(render_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_desk, m)?)?;
    m.add_function(wrap_pyfunction!(main, m)?)?;
    Ok(())
}
