// Trace forms and the Scharlau transfer along T = Q(√2) over Q.

use std::sync::Arc;

use hermsig::etale::EtaleAlgebra;
use hermsig::numeric::{Ring, UniPoly};
use hermsig::quadratic::{trace_form, transfer_quadratic, QuadForm};
use hermsig::relative::RelativeEtale;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, f) in [("Q(sqrt2)", [-2, 0, 1]), ("Q(i)", [1, 0, 1])] {
        let t = EtaleAlgebra::new(vec![UniPoly::from_ints(&f)])?;
        let tr = trace_form(&t);
        println!("trace form of {name}: signature {}", tr.signature_at(0));
    }

    let q = Arc::new(EtaleAlgebra::rationals());
    let e = Arc::new(RelativeEtale::new(q.clone(), vec![q.from_int(-2), q.zero(), q.one()])?);
    let y = e.y();
    let form = QuadForm::diagonal(e.clone(), vec![y]);
    let t = transfer_quadratic(&e, &form);
    let gram: Vec<Vec<String>> = t
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| q.as_rational(c).expect("rational entry").to_string())
                .collect()
        })
        .collect();
    println!("Tr*<sqrt2> = {gram:?}, signature {}", t.signature_at(0));
    if t.signature_at(0) != 0 || gram != [["0", "4"], ["4", "0"]] {
        return Err("unexpected transfer of <sqrt2>".into());
    }
    // the transfer of <1> is the trace form <2, 4>, signature 2
    let one = transfer_quadratic(&e, &QuadForm::diagonal(e.clone(), vec![e.one()]));
    println!("Tr*<1> signature {}", one.signature_at(0));
    if one.signature_at(0) != 2 {
        return Err("Tr*<1> should have signature 2".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("trace_forms");
}
