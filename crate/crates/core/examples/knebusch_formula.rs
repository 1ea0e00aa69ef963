// The trace formula for hermitian forms: the signature of Tr*(h) at an
// ordering of the base is the sum of the signatures of h at the real
// orderings above it.

use std::sync::Arc;

use hermsig::checks::{ktf_corpus, make_algebra};
use hermsig::division::DivisionKind;
use hermsig::etale::EtaleAlgebra;
use hermsig::hermitian::HermForm;
use hermsig::numeric::Ring;
use hermsig::relative::RelativeEtale;
use hermsig::signature::{find_reference_form, SearchBudget};
use hermsig::transfer::TransferContext;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = Arc::new(EtaleAlgebra::rationals());
    let quat = make_algebra(&q, 1, DivisionKind::Quaternion, &[-1, -1], None);
    let t = Arc::new(RelativeEtale::new(q.clone(), vec![q.from_int(-2), q.zero(), q.one()])?);
    let ctx = TransferContext::new(quat.clone(), t.clone())?;
    let eta = find_reference_form(&quat, &SearchBudget::default())?;
    let eta_t = ctx.extend_reference(&eta)?;

    for (name, entry) in [("<1>", t.one()), ("<sqrt2>", t.y())] {
        let h = HermForm::diagonal_scalars(ctx.extended_algebra().clone(), &[entry])?;
        let rep = ctx.verify_hermitian(&h, 0, &eta, &eta_t)?;
        println!(
            "{name:<8} lhs {} rhs {} (r = {}, t = {}, per extension {:?})",
            rep.lhs, rep.rhs, rep.r, rep.t, rep.per_gamma
        );
        if !rep.holds() {
            return Err(format!("trace formula fails for {name}").into());
        }
    }

    // randomized corpus over the five algebra templates
    let report = ktf_corpus(0, 10, &SearchBudget::default());
    println!("corpus: {} passed, {} failed", report.passed, report.failed);
    if !report.all_pass() {
        return Err(report.to_table().into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("knebusch_formula");
}
