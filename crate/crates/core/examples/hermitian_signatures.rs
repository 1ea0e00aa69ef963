// Signatures of hermitian forms over quaternions and matrix algebras,
// with the sign fixed by a reference form.

use hermsig::base::BaseRing;
use hermsig::checks::{make_algebra, sqrt2_base};
use hermsig::division::DivisionKind;
use hermsig::hermitian::HermForm;
use hermsig::numeric::Ring;
use hermsig::signature::{find_reference_form, m_signature, total_signature, SearchBudget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = sqrt2_base();
    let x = k.x();
    let quat = make_algebra(&k, 1, DivisionKind::Quaternion, &[-1, -1], None);
    let eta = find_reference_form(&quat, &SearchBudget::default())?;
    println!("reference form signs: {:?}", eta.signs());

    let h = HermForm::diagonal_scalars(quat.clone(), &[k.one(), x.clone(), k.from_int(-3)])?;
    let raw: Vec<i64> = (0..k.num_orderings()).map(|a| m_signature(&h, a)).collect();
    let total = total_signature(&h, &eta);
    println!("<1, sqrt2, -3> over (-1,-1): signature {raw:?}, total {total:?}");
    if total != [-1, 1] {
        return Err("unexpected total signature".into());
    }

    // the hyperbolic plane vanishes everywhere, for both values of ε
    for eps in [1, -1] {
        let hyp = HermForm::hyperbolic(quat.clone(), 1, eps)?;
        let s: Vec<i64> = (0..k.num_orderings()).map(|a| m_signature(&hyp, a)).collect();
        println!("hyperbolic plane, epsilon {eps:+}: {s:?}");
        if s.iter().any(|&v| v != 0) {
            return Err("hyperbolic form with nonzero signature".into());
        }
    }

    // M_2 with transpose: <I> reduces to a rank two quadratic form
    let m2 = make_algebra(&k, 2, DivisionKind::Base, &[], None);
    let i2 = HermForm::diagonal(m2.clone(), vec![m2.ring().one()])?;
    let s: Vec<i64> = (0..k.num_orderings()).map(|a| m_signature(&i2, a)).collect();
    println!("<I> over M2: {s:?}");
    if s != [2, 2] {
        return Err("<I> over M2 should have signature 2".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hermitian_signatures");
}
