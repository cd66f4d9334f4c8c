// SPDX-License-Identifier: MIT OR Apache-2.0

//! Python bindings: a thin layer over the record formats of the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use ssorient_core::cli::format::{fmt_fp2, Instance, Record};
use ssorient_core::endo::PowersmoothBound;
use ssorient_core::pathfind::{orient_1728 as orient, path_to_1728, PathOptions};
use ssorient_core::quad::{self, QuadOrder};

fn py_err(e: ssorient_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Class number of the order of discriminant `disc`.
#[pyfunction]
fn class_number(disc: i128) -> PyResult<usize> {
    let o = QuadOrder::new(disc).map_err(py_err)?;
    Ok(quad::class_group(&o).map_err(py_err)?.h())
}

/// A solution (y, z) of y² + d·z² = m, or None.
#[pyfunction]
fn cornacchia(d: u64, m: u64) -> Option<(u64, u64)> {
    quad::cornacchia(d, m)
}

/// The first `count` orientations of E₁₇₂₈ by Z[(t + √Δℓ^{2r})/2], as
/// (r, quaternion) pairs in the basis 1, i, j, k.
#[pyfunction]
#[pyo3(signature = (disc, p, ell = 2, count = 1, r_cap = None))]
fn orient_1728(disc: i128, p: u64, ell: u64, count: usize, r_cap: Option<u32>) -> PyResult<Vec<(u32, String)>> {
    let cap = r_cap.unwrap_or_else(|| ssorient_core::pathfind::default_r_cap(p, ell));
    let mut out = Vec::new();
    for s in orient(disc, ell, p, cap).map_err(py_err)?.take(count) {
        let s = s.map_err(py_err)?;
        out.push((s.r, s.quat.to_string()));
    }
    Ok(out)
}

/// j-invariants, as "c0,c1" strings, of an ℓ-isogeny path from 1728 to
/// the curve of an instance record.
#[pyfunction]
#[pyo3(signature = (instance, ell = 2, bound = 200))]
fn find_path(py: Python<'_>, instance: &str, ell: u64, bound: u128) -> PyResult<Vec<String>> {
    let inst = Record::parse(instance).and_then(|r| Instance::parse(&r)).map_err(py_err)?;
    let opts = PathOptions { bound: PowersmoothBound::new(bound).map_err(py_err)?, r_cap: None };
    let path = py.detach(|| path_to_1728(&inst.endo, ell, opts)).map_err(py_err)?;
    Ok(path.j_invariants().iter().map(fmt_fp2).collect())
}

/// Run the command line tool in-process: (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let argv = std::iter::once("ssorient".to_string()).chain(args);
    let out = py.detach(|| ssorient_core::cli::run(argv));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn ssorient(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(cornacchia, m)?)?;
    m.add_function(wrap_pyfunction!(orient_1728, m)?)?;
    m.add_function(wrap_pyfunction!(find_path, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
