//! Python bindings: profiles, constraint sets and the deciders.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use topmono::format::{
    format_order, format_set, parse_nb, parse_order, parse_partial_profile, parse_profile, write_nb,
    write_partial_profile, write_weak_profile, ProfileDocument,
};
use topmono::{Alt, Alternatives, Limits, SolverOptions, ViolationReason};

create_exception!(
    pytopmono,
    BudgetExhausted,
    PyException,
    "The solver node budget ran out."
);
create_exception!(
    pytopmono,
    CapacityError,
    PyException,
    "An input exceeds a brute-force cap."
);

fn err(e: topmono::Error) -> PyErr {
    use topmono::Error::*;
    match e {
        BudgetExhausted { .. } => self::BudgetExhausted::new_err(e.to_string()),
        Capacity { .. } => CapacityError::new_err(e.to_string()),
        Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn options(budget: Option<u64>) -> SolverOptions {
    SolverOptions {
        node_budget: budget,
        ..SolverOptions::default()
    }
}

fn lookup(alts: &Alternatives, id: &str) -> PyResult<Alt> {
    alts.lookup(id)
        .ok_or_else(|| PyValueError::new_err(format!("unknown alternative {id:?}")))
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// A profile of weak orders.
#[pyclass(frozen, skip_from_py_object, module = "pytopmono")]
#[derive(Clone)]
struct Profile {
    inner: topmono::WeakProfile,
}

#[pymethods]
impl Profile {
    /// Parses a profile document.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        match parse_profile(text).map_err(err)? {
            ProfileDocument::Weak(inner) => Ok(Profile { inner }),
            ProfileDocument::Partial(_) => Err(PyValueError::new_err("partial-order document; use PartialProfile")),
        }
    }

    /// Builds a profile from ranked indifference classes, best first.
    #[staticmethod]
    fn from_classes(alternatives: Vec<String>, voters: Vec<Vec<Vec<String>>>) -> PyResult<Self> {
        let alts = Alternatives::new(alternatives).map_err(err)?;
        let m = alts.len();
        let relations = voters
            .iter()
            .map(|classes| {
                let classes = classes
                    .iter()
                    .map(|c| c.iter().map(|id| lookup(&alts, id)).collect::<PyResult<Vec<_>>>())
                    .collect::<PyResult<Vec<_>>>()?;
                topmono::WeakOrder::new(m, classes).map_err(err)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Profile {
            inner: topmono::Profile::from_relations(alts, relations).map_err(err)?,
        })
    }

    #[getter]
    fn alternatives(&self) -> Vec<String> {
        self.inner.alternatives().ids().to_vec()
    }

    #[getter]
    fn voters(&self) -> Vec<String> {
        self.inner.voters().iter().map(|v| v.name.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.voter_count()
    }

    fn to_text(&self) -> String {
        write_weak_profile(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile({} alternatives, {} voters)",
            self.inner.alt_count(),
            self.inner.voter_count()
        )
    }

    /// Checks one order such as `"x>y>z"`. Returns None when it works,
    /// otherwise a dict describing the first violation.
    fn verify<'py>(&self, py: Python<'py>, order: &str) -> PyResult<Option<Bound<'py, PyDict>>> {
        let alts = self.inner.alternatives();
        let o = parse_order(alts, order).map_err(err)?;
        let verdict = topmono::verify_tm(&self.inner, &o).map_err(err)?;
        let Some(v) = verdict.violated() else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        d.set_item("witness_set", alts.names(&v.witness_set))?;
        d.set_item("voter_i", &self.inner.voters()[v.voter_i].name)?;
        d.set_item("voter_j", &self.inner.voters()[v.voter_j].name)?;
        d.set_item("x", alts.id(v.x))?;
        d.set_item("y", alts.id(v.y))?;
        d.set_item("z", alts.id(v.z))?;
        let reason = match v.reason {
            ViolationReason::IndifferenceRequired => "IndifferenceRequired",
            ViolationReason::StrictRequired => "StrictRequired",
        };
        d.set_item("reason", reason)?;
        Ok(Some(d))
    }

    #[pyo3(signature = (brute_force = false, budget = None))]
    fn test(&self, brute_force: bool, budget: Option<u64>) -> PyResult<Decision> {
        let d = if brute_force {
            topmono::test_tm_bruteforce(&self.inner, &Limits::default())
        } else {
            topmono::test_tm(&self.inner, &options(budget))
        }
        .map_err(err)?;
        Ok(Decision::from_decision(self.inner.alternatives(), d))
    }

    fn extract(&self) -> Constraints {
        Constraints {
            inner: topmono::extract_constraints(&self.inner),
        }
    }

    fn is_dichotomous(&self) -> bool {
        topmono::is_dichotomous(&self.inner)
    }

    fn is_single_peaked(&self, axis: &str) -> PyResult<bool> {
        let o = parse_order(self.inner.alternatives(), axis).map_err(err)?;
        topmono::is_single_peaked_wrt(&self.inner, &o).map_err(err)
    }

    fn condorcet_winners(&self) -> Vec<String> {
        self.inner
            .alternatives()
            .names(&topmono::weak_condorcet_winners(&self.inner))
    }

    /// The analysis report as a dict.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = topmono::report::analyze(&self.inner, &Limits::default(), &SolverOptions::default()).map_err(err)?;
        json_to_py(py, &serde_json::to_value(r).expect("reports serialize"))
    }
}

/// A profile of strict partial orders.
#[pyclass(frozen, skip_from_py_object, module = "pytopmono")]
#[derive(Clone)]
struct PartialProfile {
    inner: topmono::PartialProfile,
}

#[pymethods]
impl PartialProfile {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PartialProfile {
            inner: parse_partial_profile(text).map_err(err)?,
        })
    }

    #[getter]
    fn alternatives(&self) -> Vec<String> {
        self.inner.alternatives().ids().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.voter_count()
    }

    fn to_text(&self) -> String {
        write_partial_profile(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "PartialProfile({} alternatives, {} voters)",
            self.inner.alt_count(),
            self.inner.voter_count()
        )
    }

    #[pyo3(signature = (budget = None, max_voters = None))]
    fn test(&self, budget: Option<u64>, max_voters: Option<usize>) -> PyResult<Decision> {
        let mut limits = Limits::default();
        if let Some(n) = max_voters {
            limits.partial_voters = n;
        }
        let d = topmono::test_tm_partial(&self.inner, &limits, &options(budget)).map_err(err)?;
        Ok(Decision::from_decision(self.inner.alternatives(), d))
    }

    /// Single-peaked extension of a gadget profile along `order`.
    fn sp_extend(&self, order: &str) -> PyResult<Profile> {
        let o = parse_order(self.inner.alternatives(), order).map_err(err)?;
        Ok(Profile {
            inner: topmono::single_peaked_extension(&self.inner, &o).map_err(err)?,
        })
    }
}

/// A set of non-betweenness constraints.
#[pyclass(frozen, skip_from_py_object, module = "pytopmono")]
#[derive(Clone)]
struct Constraints {
    inner: topmono::NbConstraintSet,
}

#[pymethods]
impl Constraints {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Constraints {
            inner: parse_nb(text).map_err(err)?,
        })
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.elements().ids().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// `(middle, outer, outer)` triples in canonical order.
    fn triples(&self) -> Vec<(String, String, String)> {
        let e = self.inner.elements();
        self.inner
            .iter()
            .map(|c| {
                let (x, z) = c.outer();
                (e.id(c.middle()).into(), e.id(x).into(), e.id(z).into())
            })
            .collect()
    }

    fn to_text(&self) -> String {
        write_nb(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Constraints({} over {})",
            self.inner.len(),
            format_set(self.inner.elements(), &self.inner.elements().all())
        )
    }

    /// A satisfying order, or None.
    #[pyo3(signature = (budget = None))]
    fn solve(&self, budget: Option<u64>) -> PyResult<Option<String>> {
        let s = topmono::solve_nb(&self.inner, &options(budget)).map_err(err)?;
        Ok(s.solution.witness().map(|w| format_order(self.inner.elements(), w)))
    }

    fn reduce(&self) -> PyResult<PartialProfile> {
        Ok(PartialProfile {
            inner: topmono::reduce_nb_to_profile(&self.inner).map_err(err)?,
        })
    }
}

#[pyclass(frozen, get_all, module = "pytopmono")]
struct Decision {
    top_monotonic: bool,
    witness: Option<String>,
    constraint_count: Option<usize>,
    extension: Option<Profile>,
}

impl Decision {
    fn from_decision(alts: &Alternatives, d: topmono::TmDecision) -> Self {
        Decision {
            top_monotonic: d.is_top_monotonic(),
            witness: d.witness.as_ref().map(|w| format_order(alts, w)),
            constraint_count: d.certificate.as_ref().map(|c| c.len()),
            extension: d.extension.map(|inner| Profile { inner }),
        }
    }
}

#[pymethods]
impl Decision {
    fn __bool__(&self) -> bool {
        self.top_monotonic
    }

    fn __repr__(&self) -> String {
        match &self.witness {
            Some(w) => format!("Decision(top_monotonic=True, witness={w:?})"),
            None => format!(
                "Decision(top_monotonic={})",
                if self.top_monotonic { "True" } else { "False" }
            ),
        }
    }
}

/// Random profile of kind random-weak, random-linear, dichotomous or
/// single-peaked. Returns the profile and, for single-peaked ones, the axis.
#[pyfunction]
#[pyo3(signature = (kind, alts, voters, seed = 0))]
fn generate(kind: &str, alts: usize, voters: usize, seed: u64) -> PyResult<(Profile, Option<String>)> {
    let kind: topmono::ProfileKind = kind.parse().map_err(err)?;
    let g = topmono::generate(kind, alts, voters, seed).map_err(err)?;
    let axis = g.axis.as_ref().map(|a| format_order(g.profile.alternatives(), a));
    Ok((Profile { inner: g.profile }, axis))
}

/// Parses either kind of profile document.
#[pyfunction]
fn parse<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    Ok(match parse_profile(text).map_err(err)? {
        ProfileDocument::Weak(inner) => Bound::new(py, Profile { inner })?.into_any(),
        ProfileDocument::Partial(inner) => Bound::new(py, PartialProfile { inner })?.into_any(),
    })
}

#[pymodule]
fn pytopmono(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Profile>()?;
    m.add_class::<PartialProfile>()?;
    m.add_class::<Constraints>()?;
    m.add_class::<Decision>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add("BudgetExhausted", m.py().get_type::<BudgetExhausted>())?;
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add("REPORT_SCHEMA", topmono::report::REPORT_SCHEMA)?;
    Ok(())
}
