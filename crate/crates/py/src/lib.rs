//! Python bindings: instances, certification, solving and the block code.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lll_core::apps::{gen_hypergraph_2col, Topology};
use lll_core::entropy::{self, Decompressor, PlanRule};
use lll_core::process::{run, violated_domains as core_violated, RunStatus};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Instance", module = "lll_py", from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    inner: lll_core::Instance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        lll_core::Instance::from_json(text).map(|inner| PyInstance { inner }).map_err(value_err)
    }

    /// k-uniform hypergraph two-coloring on n vertices; topology is
    /// "cyclic" or "disjoint".
    #[staticmethod]
    #[pyo3(signature = (k, n, topology = "cyclic"))]
    fn hypergraph(k: usize, n: usize, topology: &str) -> PyResult<Self> {
        let t = match topology {
            "cyclic" => Topology::Cyclic,
            "disjoint" => Topology::Disjoint,
            other => return Err(PyValueError::new_err(format!("unknown topology {other:?}"))),
        };
        gen_hypergraph_2col(k, n, t).map(|h| PyInstance { inner: h.instance }).map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    #[getter]
    fn num_events(&self) -> usize {
        self.inner.num_events()
    }

    #[getter]
    fn num_domains(&self) -> usize {
        self.inner.num_domains()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn event_probability(&self, event: usize) -> PyResult<f64> {
        self.inner.event_probability(event).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Instance(vars={}, events={})", self.inner.num_vars(), self.inner.num_events())
    }
}

/// (valid, margin) of the symmetric condition.
#[pyfunction]
fn check_slll(inst: &PyInstance) -> PyResult<(bool, f64)> {
    let c = lll_core::check_slll(&inst.inner).map_err(value_err)?;
    Ok((c.valid, c.margin))
}

/// (valid, margin) of the weighted condition.
#[pyfunction]
fn check_glll(inst: &PyInstance, omega: Vec<f64>) -> PyResult<(bool, f64)> {
    let c = lll_core::check_glll(&inst.inner, &omega).map_err(value_err)?;
    Ok((c.valid, c.margin))
}

#[pyfunction]
#[pyo3(signature = (inst, epsilon, omega))]
fn check_eps_correct(inst: &PyInstance, epsilon: f64, omega: Vec<f64>) -> PyResult<(bool, f64)> {
    let c = lll_core::check_eps_correct(&inst.inner, epsilon, &omega).map_err(value_err)?;
    Ok((c.valid, c.margin))
}

#[pyfunction]
fn suggest_omega(inst: &PyInstance) -> PyResult<Vec<f64>> {
    lll_core::suggest_omega(&inst.inner, 10_000).map_err(value_err)
}

/// Run on the table seeded by `seed`; returns a dict with status, steps,
/// total_resamples and assignment.
#[pyfunction]
#[pyo3(signature = (inst, seed, max_steps = 1_000_000))]
fn solve<'py>(py: Python<'py>, inst: &PyInstance, seed: u64, max_steps: usize) -> PyResult<Bound<'py, PyDict>> {
    let mut table = lll_core::Table::seeded(seed);
    let trace = run(&inst.inner, &mut table, max_steps).map_err(value_err)?;
    let d = PyDict::new(py);
    let status = match trace.status {
        RunStatus::Stabilized => "stabilized",
        RunStatus::StepLimit => "step_limit",
        RunStatus::Running => "running",
    };
    d.set_item("status", status)?;
    d.set_item("steps", trace.num_steps())?;
    d.set_item("total_resamples", trace.resamples_per_domain(inst.inner.num_domains()).iter().sum::<u64>())?;
    d.set_item("assignment", trace.f.clone())?;
    Ok(d)
}

#[pyfunction]
fn violated_domains(inst: &PyInstance, assignment: Vec<u32>) -> PyResult<Vec<usize>> {
    if assignment.len() != inst.inner.num_vars() {
        return Err(PyValueError::new_err("assignment length differs from the number of variables"));
    }
    Ok(core_violated(&inst.inner, &assignment))
}

/// Encode a word; returns (bit string, {"c0": .., ..., "c4": ..}).
#[pyfunction]
#[pyo3(signature = (word, s = 1, tiles = vec![4], epsilon = 0.1))]
fn encode<'py>(
    py: Python<'py>,
    word: Vec<u32>,
    s: u32,
    tiles: Vec<usize>,
    epsilon: f64,
) -> PyResult<(String, Bound<'py, PyDict>)> {
    let blob = entropy::encode(&word, s, &PlanRule::new(tiles, epsilon)).map_err(value_err)?;
    let l = PyDict::new(py);
    for (k, v) in [("c0", blob.layout.c0), ("c1", blob.layout.c1), ("c2", blob.layout.c2), ("c3", blob.layout.c3), ("c4", blob.layout.c4)] {
        l.set_item(k, v)?;
    }
    Ok((blob.to_bit_string(), l))
}

#[pyfunction]
#[pyo3(signature = (bits, s = 1, tiles = vec![4], epsilon = 0.1))]
fn decode(bits: &str, s: u32, tiles: Vec<usize>, epsilon: f64) -> PyResult<Vec<u32>> {
    let b: Vec<bool> = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(PyValueError::new_err(format!("bad bit {c:?}"))),
        })
        .collect::<PyResult<_>>()?;
    entropy::decode(&b, s, &PlanRule::new(tiles, epsilon)).map(|(_, w)| w).map_err(value_err)
}

/// Plug-in block entropy per symbol of equal-length samples.
#[pyfunction]
fn empirical_entropy(samples: Vec<Vec<u32>>) -> PyResult<f64> {
    entropy::empirical_entropy(&samples)
        .map(|e| e.bits_per_symbol)
        .ok_or_else(|| PyValueError::new_err("need a nonempty list of equal-length, nonempty samples"))
}

/// (count, holds) for "identity" or "run_length".
#[pyfunction]
fn counting_bound(decompressor: &str, n: usize, c: usize) -> PyResult<(u64, bool)> {
    let dec = match decompressor {
        "identity" => Decompressor::Identity,
        "run_length" => Decompressor::RunLength,
        other => return Err(PyValueError::new_err(format!("unknown decompressor {other:?}"))),
    };
    let r = entropy::counting_bound(dec, n, c).map_err(value_err)?;
    Ok((r.count, r.holds))
}

/// Minimal t and whether the weighted inequality was verified for n ≤ 30.
#[pyfunction]
fn entropy_instance_params(epsilon: f64, d: u32, delta: f64) -> PyResult<(u64, bool)> {
    let p = entropy::entropy_instance_params(epsilon, d, delta).map_err(value_err)?;
    Ok((p.t, p.verified))
}

#[pymodule]
fn lll_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(check_slll, m)?)?;
    m.add_function(wrap_pyfunction!(check_glll, m)?)?;
    m.add_function(wrap_pyfunction!(check_eps_correct, m)?)?;
    m.add_function(wrap_pyfunction!(suggest_omega, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(violated_domains, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(counting_bound, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_instance_params, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
