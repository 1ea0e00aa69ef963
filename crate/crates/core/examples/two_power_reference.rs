// Forms with signature ±2^m off Nil, and matching 2^m-multiples of a
// prescribed total signature.

use hermsig::checks::{make_algebra, sqrt2_base};
use hermsig::division::DivisionKind;
use hermsig::signature::{
    find_reference_form, find_two_power_form, total_signature, two_power_multiple_match, MatchOutcome, SearchBudget,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = SearchBudget::default();
    let k = sqrt2_base();
    let m2 = make_algebra(&k, 2, DivisionKind::Base, &[], None);
    let eta = find_reference_form(&m2, &budget)?;
    let tp = find_two_power_form(&eta, &budget)?;
    let total = total_signature(&tp.form, &eta);
    println!("M2(Q(sqrt2)): m = {}, total {total:?}", tp.m);
    if total.iter().any(|v| v.abs() != 1 << tp.m) {
        return Err("not a two-power form".into());
    }

    let id = make_algebra(&k, 1, DivisionKind::Base, &[], None);
    let eta = find_reference_form(&id, &budget)?;
    for f in [vec![0, 1], vec![-3, 1]] {
        match two_power_multiple_match(&f, &eta, &budget)? {
            MatchOutcome::Found { m, form } => {
                let t = total_signature(&form, &eta);
                println!("f = {f:?}: 2^{m}·f = {t:?} with a form of rank {}", form.rank());
                if t != f.iter().map(|v| v << m).collect::<Vec<_>>() {
                    return Err("match does not realize 2^m·f".into());
                }
            }
            MatchOutcome::NotFound { residual } => {
                return Err(format!("no match for {f:?}, residual {residual:?}").into());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("two_power_reference");
}
