//! Python bindings for the envlat core: lattices, distributive envelopes,
//! adjoint pairs, tightness, and Pervin-space bicompletion.
//!
//! Build with `cargo build -p envlat-py` and import the resulting cdylib as
//! `envlat_py` (see python/smoke_test.py for the loading dance — there is no
//! wheel, the module is the shared library itself).

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use envlat::admissible::{self, GenMethod, Method};
use envlat::corpus;
use envlat::doc::LatticeDocument;
use envlat::duality;
use envlat::envelope::{self, EnvelopeKind};
use envlat::finlat::{FinLattice, LatticeMap};
use envlat::pervin;

fn core_err(e: envlat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Decode a bit mask over `names` into the named members, ascending.
fn mask_members(mask: u64, names: &[String]) -> Vec<String> {
    (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i].clone()).collect()
}

fn method_from_str(s: &str) -> PyResult<Method> {
    match s {
        "definition" => Ok(Method::Definition),
        "irreducible" => Ok(Method::Irreducible),
        other => Err(PyValueError::new_err(format!(
            "unknown method {other:?}; use \"definition\" or \"irreducible\""
        ))),
    }
}

/// A finite bounded lattice with named elements.
#[pyclass(frozen, module = "envlat_py")]
struct Lattice {
    inner: FinLattice,
    name: String,
}

impl Lattice {
    fn idx(&self, name: &str) -> PyResult<usize> {
        self.inner
            .index_by_name(name)
            .ok_or_else(|| PyKeyError::new_err(format!("no element named {name:?}")))
    }

    fn idx_set(&self, names: Vec<String>) -> PyResult<Vec<usize>> {
        names.iter().map(|n| self.idx(n)).collect()
    }

    fn names_of(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&i| self.inner.name(i).to_string()).collect()
    }
}

#[pymethods]
impl Lattice {
    /// Build from element names and a cover relation (lower, upper).
    #[new]
    #[pyo3(signature = (elements, covers, name = "lattice".to_string()))]
    fn new(elements: Vec<String>, covers: Vec<(String, String)>, name: String) -> PyResult<Self> {
        let doc = LatticeDocument { name: name.clone(), elements, covers };
        Ok(Lattice { inner: doc.to_lattice().map_err(core_err)?, name })
    }

    /// One of the built-in examples (chain2, square, m3, n5, kite, …).
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::by_name(name)
            .map(|inner| Lattice { inner, name: name.to_string() })
            .ok_or_else(|| PyKeyError::new_err(format!("no corpus lattice named {name:?}")))
    }

    #[staticmethod]
    fn chain(n: usize) -> Self {
        Lattice { inner: corpus::chain(n), name: format!("chain{n}") }
    }

    #[staticmethod]
    fn boolean(k: usize) -> Self {
        Lattice { inner: corpus::boolean(k), name: format!("boolean{k}") }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = LatticeDocument::parse(text).map_err(core_err)?;
        Ok(Lattice { name: doc.name.clone(), inner: doc.to_lattice().map_err(core_err)? })
    }

    fn to_json(&self) -> String {
        LatticeDocument::from_lattice(&self.name, &self.inner).emit()
    }

    fn dot(&self) -> String {
        envlat::doc::lattice_dot(&self.name, &self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Lattice({:?}, {} elements)", self.name, self.inner.n())
    }

    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn covers(&self) -> Vec<(String, String)> {
        self.inner
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (self.inner.name(a).to_string(), self.inner.name(b).to_string()))
            .collect()
    }

    fn bottom(&self) -> String {
        self.inner.name(self.inner.bottom()).to_string()
    }

    fn top(&self) -> String {
        self.inner.name(self.inner.top()).to_string()
    }

    fn le(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.le(self.idx(a)?, self.idx(b)?))
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.meet(self.idx(a)?, self.idx(b)?)).to_string())
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.join(self.idx(a)?, self.idx(b)?)).to_string())
    }

    fn join_irreducibles(&self) -> Vec<String> {
        self.names_of(&self.inner.join_irreducibles())
    }

    fn meet_irreducibles(&self) -> Vec<String> {
        self.names_of(&self.inner.meet_irreducibles())
    }

    fn is_distributive(&self) -> bool {
        self.inner.is_distributive()
    }

    /// Does ⋁ of the set distribute over meets with every element?
    #[pyo3(signature = (names, method = "definition"))]
    fn is_join_admissible(&self, names: Vec<String>, method: &str) -> PyResult<bool> {
        let m = self.idx_set(names)?;
        let report = admissible::is_join_admissible(&self.inner, &m, method_from_str(method)?)
            .map_err(core_err)?;
        Ok(report.admissible)
    }

    /// The element where distribution breaks, with both sides of the failed
    /// equation, or None when the set is join-admissible.
    fn admissibility_witness(&self, names: Vec<String>) -> PyResult<Option<(String, String, String)>> {
        let m = self.idx_set(names)?;
        let report = admissible::is_join_admissible(&self.inner, &m, Method::Definition)
            .map_err(core_err)?;
        Ok(report.witness.map(|w| {
            (
                self.inner.name(w.element).to_string(),
                self.inner.name(w.lhs).to_string(),
                self.inner.name(w.rhs).to_string(),
            )
        }))
    }

    /// The admissible ideal generated by the set, as element names.
    #[pyo3(signature = (names, method = "criterion"))]
    fn aideal(&self, names: Vec<String>, method: &str) -> PyResult<Vec<String>> {
        let gen = match method {
            "criterion" => GenMethod::Criterion,
            "fixpoint" => GenMethod::Fixpoint,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown method {other:?}; use \"criterion\" or \"fixpoint\""
                )))
            }
        };
        let t = self.idx_set(names)?;
        Ok(self.names_of(&admissible::aideal_generate(&self.inner, &t, gen).map_err(core_err)?))
    }

    /// Distributive envelope ("meet" over J(L), "join" over M(L)).
    #[pyo3(signature = (kind = "meet"))]
    fn envelope(&self, kind: &str) -> PyResult<Envelope> {
        let env = match kind {
            "meet" => envelope::denv_meet(&self.inner),
            "join" => envelope::denv_join(&self.inner),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown envelope kind {other:?}; use \"meet\" or \"join\""
                )))
            }
        }
        .map_err(core_err)?;
        Ok(Envelope { inner: env })
    }

    /// Close the adjoint pair of envelopes back into a lattice; success
    /// includes the check that the result is isomorphic to this one.
    fn galois_reconstruct(&self) -> PyResult<Lattice> {
        let pair = envelope::galois_pair(&self.inner).map_err(core_err)?;
        let (closed, _) = envelope::galois_closed(&pair).map_err(core_err)?;
        Ok(Lattice { inner: closed, name: format!("{}-closed", self.name) })
    }

    /// Tightness of the dual polarity of either adjoint pair. Returns
    /// (tight, x_failures, y_failures) with failures as point-set names.
    #[pyo3(signature = (kind = "galois"))]
    fn tight(&self, kind: &str) -> PyResult<(bool, Vec<String>, Vec<String>)> {
        let pair = match kind {
            "galois" => envelope::galois_pair(&self.inner),
            "free" => duality::free_dadl(&self.inner),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown pair kind {other:?}; use \"galois\" or \"free\""
                )))
            }
        }
        .map_err(core_err)?;
        let pol = duality::dual_polarity(&pair).map_err(core_err)?;
        let report = duality::is_tight(&pol).map_err(core_err)?;
        Ok((report.tight, report.x_failures, report.y_failures))
    }

    /// Is the dual polarity a totally separated compact polarity?
    fn tscp(&self) -> PyResult<bool> {
        let pair = envelope::galois_pair(&self.inner).map_err(core_err)?;
        let pol = duality::dual_polarity(&pair).map_err(core_err)?;
        Ok(duality::check_tscp(&pol).passed())
    }

    /// Pervin space on the chosen irreducibles ("j" or "m").
    #[pyo3(signature = (side = "j"))]
    fn pervin(&self, side: &str) -> PyResult<PervinSpace> {
        let space = match side {
            "j" => pervin::j_space(&self.inner),
            "m" => pervin::m_space(&self.inner),
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown side {other:?}; use \"j\" or \"m\""
                )))
            }
        }
        .map_err(core_err)?;
        Ok(PervinSpace { inner: space })
    }
}

/// A distributive envelope: the carrier lattice together with the unit.
#[pyclass(frozen, module = "envlat_py")]
struct Envelope {
    inner: envelope::Envelope,
}

#[pymethods]
impl Envelope {
    fn __len__(&self) -> usize {
        self.inner.lattice.n()
    }

    fn __repr__(&self) -> String {
        format!("Envelope({}, {} members)", self.kind(), self.inner.lattice.n())
    }

    fn kind(&self) -> &'static str {
        match self.inner.kind {
            EnvelopeKind::Meet => "meet",
            EnvelopeKind::Join => "join",
        }
    }

    /// Carrier members as sets of irreducible names, in canonical order.
    fn members(&self) -> Vec<Vec<String>> {
        let names = self.inner.carrier.base_names();
        self.inner.carrier.members().iter().map(|&m| mask_members(m, names)).collect()
    }

    /// The carrier as a lattice (member names are set names).
    fn lattice(&self) -> Lattice {
        Lattice { inner: self.inner.lattice.clone(), name: format!("{}-envelope", self.kind()) }
    }

    /// Apply the unit η to a source element.
    fn unit(&self, a: &str) -> PyResult<String> {
        let i = self
            .inner
            .source
            .index_by_name(a)
            .ok_or_else(|| PyKeyError::new_err(format!("no element named {a:?}")))?;
        Ok(self.inner.lattice.name(self.inner.unit.apply(i)).to_string())
    }

    /// Extend a map out of the source through the envelope: give the image
    /// of each source element in `cod`; the unique extension comes back as
    /// the image of each envelope member, in member order.
    fn extend(&self, cod: &Lattice, table: Vec<String>) -> PyResult<Vec<String>> {
        let idx_table = table
            .iter()
            .map(|n| {
                cod.inner
                    .index_by_name(n)
                    .ok_or_else(|| PyKeyError::new_err(format!("no element named {n:?}")))
            })
            .collect::<PyResult<Vec<usize>>>()?;
        let f = LatticeMap::new(self.inner.source.clone(), cod.inner.clone(), idx_table)
            .map_err(core_err)?;
        let ext = envelope::extend_map(&f, &self.inner).map_err(core_err)?;
        Ok((0..self.inner.lattice.n())
            .map(|i| cod.inner.name(ext.apply(i)).to_string())
            .collect())
    }
}

/// A finite Pervin space: points plus a generating subset family.
#[pyclass(frozen, module = "envlat_py")]
struct PervinSpace {
    inner: pervin::PervinSpace,
}

impl PervinSpace {
    fn mask_of(&self, subset: &[usize]) -> PyResult<u64> {
        let n = self.inner.x_size();
        let mut mask = 0u64;
        for &p in subset {
            if p >= n {
                return Err(PyValueError::new_err(format!("point {p} out of range (< {n})")));
            }
            mask |= 1 << p;
        }
        Ok(mask)
    }
}

#[pymethods]
impl PervinSpace {
    #[new]
    #[pyo3(signature = (points, family, names = None))]
    fn new(points: usize, family: Vec<Vec<usize>>, names: Option<Vec<String>>) -> PyResult<Self> {
        let mut masks = Vec::with_capacity(family.len());
        for gen in &family {
            let mut mask = 0u64;
            for &p in gen {
                if p >= points {
                    return Err(PyValueError::new_err(format!(
                        "point {p} out of range (< {points})"
                    )));
                }
                mask |= 1 << p;
            }
            masks.push(mask);
        }
        Ok(PervinSpace { inner: pervin::pervin(points, masks, names).map_err(core_err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.x_size()
    }

    fn __repr__(&self) -> String {
        format!(
            "PervinSpace({} points, {} generators)",
            self.inner.x_size(),
            self.inner.family().len()
        )
    }

    fn points(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// Is the subset fixed under the interior-of-saturation operator?
    fn is_block(&self, subset: Vec<usize>) -> PyResult<bool> {
        Ok(self.inner.is_block(self.mask_of(&subset)?))
    }

    /// All blocks, as sets of point names in canonical order.
    fn blocks(&self) -> PyResult<Vec<Vec<String>>> {
        let fam = self.inner.blocks().map_err(core_err)?;
        let names = fam.base_names();
        Ok(fam.members().iter().map(|&m| mask_members(m, names)).collect())
    }

    /// The block lattice, ordered by inclusion.
    fn block_lattice(&self) -> PyResult<Lattice> {
        let fam = self.inner.blocks().map_err(core_err)?;
        Ok(Lattice { inner: fam.to_lattice().map_err(core_err)?, name: "blocks".to_string() })
    }

    /// Bicompletion point count and whether η is already a bijection.
    fn bicompletion(&self) -> PyResult<(usize, bool)> {
        let bic = self.inner.bicompletion_points().map_err(core_err)?;
        Ok((bic.points.n(), bic.eta_bijective()))
    }
}

/// Names of the built-in example lattices.
#[pyfunction]
fn corpus_names() -> Vec<String> {
    corpus::corpus().into_iter().map(|(name, _)| name).collect()
}

/// Run the verification suite; returns (all_passed, one line per criterion).
#[pyfunction]
#[pyo3(signature = (seed = 42, max_n = None))]
fn selftest(seed: u64, max_n: Option<usize>) -> (bool, Vec<String>) {
    let results = envlat::selftest::run_all(seed, max_n);
    let passed = results.iter().all(|r| r.passed);
    (passed, results.iter().map(|r| r.line()).collect())
}

#[pymodule]
fn envlat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lattice>()?;
    m.add_class::<Envelope>()?;
    m.add_class::<PervinSpace>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
