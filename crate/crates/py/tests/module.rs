use pyo3::prelude::*;
use pyo3::types::PyDict;

use fsw::fsw as fsw_module;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyDict>)>(f: F) {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(fsw_module);
        Python::initialize();
    });
    Python::attach(|py| {
        let globals = PyDict::new(py);
        py.run(c"import fsw", Some(&globals), None).unwrap();
        f(py, &globals);
    });
}

fn eval<'py>(py: Python<'py>, g: &Bound<'py, PyDict>, code: &str) -> Bound<'py, PyAny> {
    let c = std::ffi::CString::new(code).unwrap();
    py.eval(&c, Some(g), None).unwrap()
}

#[test]
fn python_surface() {
    with_module(|py, g| {
        assert_eq!(eval(py, g, "fsw.group_order('atlas:A10')").extract::<u128>().unwrap(), 1_814_400);
        assert_eq!(eval(py, g, "fsw.SCHEMA_VERSION").extract::<u32>().unwrap(), 1);
        let b = eval(py, g, "fsw.fusion_build('atlas:PSL2_7')");
        assert!(b.get_item("saturated").unwrap().extract::<bool>().unwrap());
        assert_eq!(b.get_item("focal_index").unwrap().extract::<usize>().unwrap(), 1);
        assert_eq!(b.get_item("fsw_schema").unwrap().extract::<u32>().unwrap(), 1);
        let path = std::env::temp_dir().join(format!("fsw_py_d8_{}.txt", std::process::id()));
        std::fs::write(&path, "degree: 4\n(1,2,3,4)\n(1,3)\n").unwrap();
        let label = eval(py, g, &format!("fsw.identify({:?})", path.to_str().unwrap()));
        assert_eq!(label.extract::<String>().unwrap(), "D8");
        std::fs::remove_file(&path).unwrap();
        let h = eval(py, g, "fsw.hmain('atlas:A10')['failed_hypothesis']");
        assert_eq!(h.extract::<String>().unwrap(), "Q_cyclic");
        let l = eval(py, g, "fsw.l2q_omnibus(9)['holds']");
        assert!(l.extract::<bool>().unwrap());
        let rows = eval(py, g, "[r['passed'] for r in fsw.near_miss_table()]");
        assert_eq!(rows.extract::<Vec<bool>>().unwrap(), vec![true; 4]);
    });
}

#[test]
fn errors_become_exceptions() {
    with_module(|py, g| {
        let r = py.run(c"fsw.group_order('atlas:NOPE')", Some(g), None);
        assert!(r.unwrap_err().is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let r = py.run(c"fsw.fusion_build('atlas:S4', seed=3)", Some(g), None);
        assert!(r.is_ok());
    });
}
