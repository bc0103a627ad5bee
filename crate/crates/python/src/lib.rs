use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use blockforge_core::construct::{construct_ball_power, construct_cherry, construct_neighborhood};
use blockforge_core::supply::{supply_mds as core_supply_mds, verify_general_position, SupplyProvenance};
use blockforge_core::verify::{is_strong_blocking, is_strong_blocking_sampled};
use blockforge_core::{
    expander, mincode, BallMode, BlockingSet, Budgets, Error, FieldSpec, Graph, LinearCode, Matrix, PointSupply, Provenance,
    Scalar, VerifyOptions,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budgets() -> PyResult<Budgets> {
    Budgets::from_env().map_err(err)
}

fn field(p: u32, m: u32) -> PyResult<FieldSpec> {
    FieldSpec::new(p, m, None).map_err(err)
}

fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn supply_from_columns(f: &FieldSpec, columns: &[Vec<Scalar>]) -> PyResult<PointSupply> {
    let k = columns.first().map(Vec::len).ok_or_else(|| PyValueError::new_err("empty supply"))?;
    let m = Matrix::from_columns(f, k, columns).map_err(err)?;
    PointSupply::new(m, SupplyProvenance::File).map_err(err)
}

fn blocking_set(f: &FieldSpec, k: usize, points: Vec<Vec<Scalar>>) -> PyResult<BlockingSet> {
    BlockingSet::new(f, k, points, Provenance::new("python", Value::Null)).map_err(err)
}

/// Descriptor of GF(p^m) with its default modulus.
#[pyfunction]
#[pyo3(signature = (p, m=1))]
fn field_info(py: Python<'_>, p: u32, m: u32) -> PyResult<Py<PyAny>> {
    to_py(py, &field(p, m)?.descriptor())
}

/// Points of a k x n MDS supply, one list per point.
#[pyfunction]
#[pyo3(signature = (p, k, n, m=1))]
fn supply_mds(p: u32, k: usize, n: usize, m: u32) -> PyResult<Vec<Vec<Scalar>>> {
    Ok(core_supply_mds(&field(p, m)?, k, n).map_err(err)?.points().columns())
}

/// General-position report for a list of points.
#[pyfunction]
#[pyo3(signature = (points, p, m=1, s=None, t=None))]
fn general_position(py: Python<'_>, points: Vec<Vec<Scalar>>, p: u32, m: u32, s: Option<usize>, t: Option<usize>) -> PyResult<Py<PyAny>> {
    let w = supply_from_columns(&field(p, m)?, &points)?;
    to_py(py, &verify_general_position(&w, s, t, &budgets()?))
}

/// The LPS graph X^{p,q} as (vertex count, edge list).
#[pyfunction]
fn lps_graph(p: u64, q: u64) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let g = expander::lps_graph(p, q).map_err(err)?;
    Ok((g.n(), g.edges().collect()))
}

/// Second-eigenvalue bound of a regular graph given by its edge list.
#[pyfunction]
#[pyo3(signature = (n, edges, tol=1e-9))]
fn second_eigenvalue(py: Python<'_>, n: usize, edges: Vec<(usize, usize)>, tol: f64) -> PyResult<Py<PyAny>> {
    let g = Graph::from_edges(n, &edges).map_err(err)?;
    to_py(py, &expander::second_eigenvalue(&g, tol).map_err(err)?)
}

/// Blocking set built by `recipe` (cherry, ballpower or neighborhood) from a graph and
/// a supply with one point per vertex.
#[pyfunction]
#[pyo3(signature = (recipe, n, edges, supply, p, m=1, s=2, ball_mode="common-center"))]
#[allow(clippy::too_many_arguments)]
fn construct(
    recipe: &str,
    n: usize,
    edges: Vec<(usize, usize)>,
    supply: Vec<Vec<Scalar>>,
    p: u32,
    m: u32,
    s: usize,
    ball_mode: &str,
) -> PyResult<Vec<Vec<Scalar>>> {
    let f = field(p, m)?;
    let g = Graph::from_edges(n, &edges).map_err(err)?;
    let w = supply_from_columns(&f, &supply)?;
    let b = budgets()?;
    let mode = match ball_mode {
        "common-center" => BallMode::CommonCenter,
        "pairwise-distance" => BallMode::PairwiseDistance,
        other => return Err(PyValueError::new_err(format!("unknown ball mode `{other}`"))),
    };
    let set = match recipe {
        "cherry" => construct_cherry(&g, &w, &b),
        "ballpower" => construct_ball_power(&g, &w, s, mode, &b),
        "neighborhood" => construct_neighborhood(&g, &w, s, &b),
        other => return Err(PyValueError::new_err(format!("unknown recipe `{other}`"))),
    }
    .map_err(err)?;
    Ok(set.points().to_vec())
}

/// Strong s-blocking check; exhaustive unless `sampled` trials are requested.
#[pyfunction]
#[pyo3(signature = (points, p, k, s, m=1, jobs=1, sampled=None, seed=0))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    points: Vec<Vec<Scalar>>,
    p: u32,
    k: usize,
    s: usize,
    m: u32,
    jobs: usize,
    sampled: Option<u64>,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let set = blocking_set(&field(p, m)?, k, points)?;
    let budgets = budgets()?;
    let report = py
        .detach(|| match sampled {
            Some(trials) => is_strong_blocking_sampled(&set, s, trials, seed),
            None => is_strong_blocking(&set, s, VerifyOptions { jobs, exhaust_all: false }, &budgets),
        })
        .map_err(err)?;
    to_py(py, &report)
}

/// s-minimality of the code generated by `rows`.
#[pyfunction]
#[pyo3(signature = (rows, p, s, m=1))]
fn is_s_minimal(py: Python<'_>, rows: Vec<Vec<Scalar>>, p: u32, s: usize, m: u32) -> PyResult<Py<PyAny>> {
    let g = Matrix::from_rows(&field(p, m)?, &rows).map_err(err)?;
    let c = LinearCode::new(g).map_err(err)?;
    to_py(py, &mincode::is_s_minimal(&c, s, &budgets()?).map_err(err)?)
}

/// Smallest strong s-blocking set of PG(k-1, p^m) as (size, exact, points).
#[pyfunction]
#[pyo3(signature = (p, k, s, m=1))]
fn minimum_size_search(p: u32, k: usize, s: usize, m: u32) -> PyResult<(usize, bool, Vec<Vec<Scalar>>)> {
    let r = blockforge_core::verify::minimum_size_search(&field(p, m)?, k, s, &budgets()?).map_err(err)?;
    Ok((r.size, r.exact, r.set.points().to_vec()))
}

/// Lower bound on the size of a strong s-blocking set in PG(k-1, q).
#[pyfunction]
fn lower_bound(q: u64, k: u64, s: u64) -> PyResult<u128> {
    blockforge_core::construct::lower_bound(q, k, s).map_err(err)
}

#[pymodule]
fn blockforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(field_info, m)?)?;
    m.add_function(wrap_pyfunction!(supply_mds, m)?)?;
    m.add_function(wrap_pyfunction!(general_position, m)?)?;
    m.add_function(wrap_pyfunction!(lps_graph, m)?)?;
    m.add_function(wrap_pyfunction!(second_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_minimal, m)?)?;
    m.add_function(wrap_pyfunction!(minimum_size_search, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
