use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use tropabel::divisor::{self, Divisor, Polarization};
use tropabel::hemisphere;
use tropabel::json as j;
use tropabel::tropical::{Abel2Solver, DEFAULT_DENOMINATORS};
use tropabel::{planner, EdgeSpec, ErrorClass, HemisphereIndex, MultiGraph};

fn err(e: tropabel::Error) -> PyErr {
    match e.class() {
        ErrorClass::Input => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(format!("[{}] {e}", e.tag())),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.to_string().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// A connected loopless multigraph with named vertices and edges.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    g: MultiGraph,
}

#[pymethods]
impl PyGraph {
    /// `edges` holds `(a, b)` or `(id, a, b)` tuples.
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<Vec<String>>) -> PyResult<Self> {
        let specs = edges
            .into_iter()
            .map(|e| match e.as_slice() {
                [a, b] => Ok(EdgeSpec::new(a.clone(), b.clone())),
                [id, a, b] => Ok(EdgeSpec::with_id(id.clone(), a.clone(), b.clone())),
                _ => Err(PyValueError::new_err("an edge is (a, b) or (id, a, b)")),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyGraph { g: MultiGraph::new(vertices, specs).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { g: j::parse_graph(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        j::graph_json(&self.g).to_string()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.g.vertex_ids().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        self.g
            .edges()
            .iter()
            .map(|e| (e.id.clone(), self.g.vertex_id(e.source).into(), self.g.vertex_id(e.target).into()))
            .collect()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.g.genus()
    }

    fn bridges(&self) -> Vec<String> {
        self.g.bridges().into_iter().map(|e| self.g.edge_at(e).id.clone()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Graph(|V|={}, |E|={})", self.g.vertex_count(), self.g.edge_count())
    }
}

impl PyGraph {
    fn vertex(&self, id: &str) -> PyResult<usize> {
        self.g.vertex(id).map_err(err)
    }

    fn divisor(&self, values: HashMap<String, i64>) -> PyResult<Divisor> {
        let pairs: Vec<(String, i64)> = values.into_iter().collect();
        Divisor::from_pairs(&self.g, &pairs).map_err(err)
    }

    /// Values are integers or rational strings such as `"1/2"`.
    fn polarization(&self, values: Option<HashMap<String, String>>) -> PyResult<Polarization> {
        match values {
            None => Ok(Polarization::zero(self.g.vertex_count())),
            Some(map) => {
                let mut pairs = Vec::new();
                for (k, v) in map {
                    pairs.push((k, j::parse_rational(&v).map_err(err)?));
                }
                Polarization::from_pairs(&self.g, &pairs).map_err(err)
            }
        }
    }

    fn named(&self, d: &Divisor) -> HashMap<String, i64> {
        d.to_named(&self.g).into_iter().collect()
    }
}

#[pyfunction]
fn reduce(g: &PyGraph, divisor: HashMap<String, i64>, v0: &str) -> PyResult<HashMap<String, i64>> {
    let d = g.divisor(divisor)?;
    Ok(g.named(&divisor::reduce(&g.g, &d, g.vertex(v0)?)))
}

#[pyfunction]
#[pyo3(signature = (g, divisor, v0, mu=None, connected_only=false))]
fn is_quasistable(
    g: &PyGraph,
    divisor: HashMap<String, i64>,
    v0: &str,
    mu: Option<HashMap<String, String>>,
    connected_only: bool,
) -> PyResult<bool> {
    let (d, mu) = (g.divisor(divisor)?, g.polarization(mu)?);
    divisor::is_quasistable_with(&g.g, &d, g.vertex(v0)?, &mu, connected_only).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (g, divisor, v0, mu=None))]
fn quasistable_rep(
    g: &PyGraph,
    divisor: HashMap<String, i64>,
    v0: &str,
    mu: Option<HashMap<String, String>>,
) -> PyResult<HashMap<String, i64>> {
    let (d, mu) = (g.divisor(divisor)?, g.polarization(mu)?);
    Ok(g.named(&divisor::quasistable_rep(&g.g, &d, g.vertex(v0)?, &mu).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (g, divisor, v0, mu=None))]
fn oracle_quasistable_class(
    g: &PyGraph,
    divisor: HashMap<String, i64>,
    v0: &str,
    mu: Option<HashMap<String, String>>,
) -> PyResult<HashMap<String, i64>> {
    let (d, mu) = (g.divisor(divisor)?, g.polarization(mu)?);
    let opts = divisor::OracleOptions::default();
    Ok(g.named(&divisor::oracle_quasistable_class(&g.g, &d, g.vertex(v0)?, &mu, &opts).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (g, delta=None))]
fn hemispheres(g: &PyGraph, delta: Option<usize>) -> PyResult<Vec<Vec<String>>> {
    let hs = hemisphere::enumerate_hemispheres(&g.g, delta).map_err(err)?;
    Ok(hs.iter().map(|h| h.ids(&g.g).into_iter().map(String::from).collect()).collect())
}

#[pyfunction]
fn convert_deg2(g: &PyGraph, v0: &str, v1: &str, v2: &str) -> PyResult<HashMap<String, i64>> {
    let d = hemisphere::convert_deg2(&g.g, g.vertex(v0)?, g.vertex(v1)?, g.vertex(v2)?).map_err(err)?;
    Ok(g.named(&d))
}

#[pyfunction]
fn tails(g: &PyGraph, v0: &str, deltas: Vec<usize>) -> PyResult<Vec<Vec<String>>> {
    let hs = planner::tails(&g.g, g.vertex(v0)?, &deltas).map_err(err)?;
    Ok(hs.iter().map(|h| h.ids(&g.g).into_iter().map(String::from).collect()).collect())
}

/// `{"diagonal": True, "centers": [[...], ...]}`.
#[pyfunction]
fn blowup_plan<'py>(py: Python<'py>, g: &PyGraph, v0: &str) -> PyResult<Bound<'py, PyAny>> {
    let plan = planner::blowup_plan(&g.g, g.vertex(v0)?).map_err(err)?;
    to_py(py, &j::plan_json(&g.g, &plan))
}

#[pyfunction]
#[pyo3(signature = (g, v0, e1, e2, denominators=None))]
fn classify_node_pair<'py>(
    py: Python<'py>,
    g: &PyGraph,
    v0: &str,
    e1: &str,
    e2: &str,
    denominators: Option<Vec<i64>>,
) -> PyResult<Bound<'py, PyAny>> {
    let dens = denominators.unwrap_or_else(|| DEFAULT_DENOMINATORS.to_vec());
    let (e1, e2) = (g.g.edge(e1).map_err(err)?, g.g.edge(e2).map_err(err)?);
    let solver = Abel2Solver::standard(&g.g, g.vertex(v0)?).map_err(err)?;
    let index = HemisphereIndex::new(&g.g).map_err(err)?;
    let c = py
        .detach(|| planner::classify_node_pair_with(&solver, &index, e1, e2, &dens))
        .map_err(err)?;
    to_py(py, &j::classification_json(&g.g, &c))
}

/// Points are JSON strings: `'{"edge": "e1", "t": "1/3"}'` or `'{"vertex": "a"}'`.
#[pyfunction]
fn qs_abel2<'py>(py: Python<'py>, g: &PyGraph, v0: &str, p1: &str, p2: &str) -> PyResult<Bound<'py, PyAny>> {
    let solver = Abel2Solver::standard(&g.g, g.vertex(v0)?).map_err(err)?;
    let p1 = j::parse_point_text(&g.g, p1).map_err(err)?;
    let p2 = j::parse_point_text(&g.g, p2).map_err(err)?;
    let value = solver.evaluate(&p1, &p2).map_err(err)?;
    to_py(py, &j::tropical_divisor_json(&g.g, &value.divisor))
}

#[pyfunction]
fn find_witnesses<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let scan = tropabel::hyper::find_witnesses(&g.g).map_err(err)?;
    to_py(py, &j::hyper_scan_json(&g.g, &scan))
}

#[pymodule]
fn tropabel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasistable, m)?)?;
    m.add_function(wrap_pyfunction!(quasistable_rep, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_quasistable_class, m)?)?;
    m.add_function(wrap_pyfunction!(hemispheres, m)?)?;
    m.add_function(wrap_pyfunction!(convert_deg2, m)?)?;
    m.add_function(wrap_pyfunction!(tails, m)?)?;
    m.add_function(wrap_pyfunction!(blowup_plan, m)?)?;
    m.add_function(wrap_pyfunction!(classify_node_pair, m)?)?;
    m.add_function(wrap_pyfunction!(qs_abel2, m)?)?;
    m.add_function(wrap_pyfunction!(find_witnesses, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
