mod sturm_roots {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sturm_roots.rs"));
}
mod trace_forms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/trace_forms.rs"));
}
mod quadratic_signatures {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quadratic_signatures.rs"));
}
mod quaternion_involutions {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quaternion_involutions.rs"
    ));
}
mod hermitian_signatures {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hermitian_signatures.rs"));
}
mod knebusch_formula {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/knebusch_formula.rs"));
}
mod morita_invariance {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/morita_invariance.rs"));
}
mod two_power_reference {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/two_power_reference.rs"));
}
mod scenario_roundtrip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenario_roundtrip.rs"));
}

#[test]
fn sturm_roots_runs() {
    sturm_roots::run_example().expect("sturm_roots example should run");
}

#[test]
fn trace_forms_runs() {
    trace_forms::run_example().expect("trace_forms example should run");
}

#[test]
fn quadratic_signatures_runs() {
    quadratic_signatures::run_example().expect("quadratic_signatures example should run");
}

#[test]
fn quaternion_involutions_runs() {
    quaternion_involutions::run_example().expect("quaternion_involutions example should run");
}

#[test]
fn hermitian_signatures_runs() {
    hermitian_signatures::run_example().expect("hermitian_signatures example should run");
}

#[test]
fn knebusch_formula_runs() {
    knebusch_formula::run_example().expect("knebusch_formula example should run");
}

#[test]
fn morita_invariance_runs() {
    morita_invariance::run_example().expect("morita_invariance example should run");
}

#[test]
fn two_power_reference_runs() {
    two_power_reference::run_example().expect("two_power_reference example should run");
}

#[test]
fn scenario_roundtrip_runs() {
    scenario_roundtrip::run_example().expect("scenario_roundtrip example should run");
}
