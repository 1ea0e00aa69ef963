// Morita transport between algebras with the same division part keeps
// η-signatures, and commutes with scalar extension.

use std::sync::Arc;

use hermsig::base::BaseRing;
use hermsig::checks::{make_algebra, sqrt2_base, symplectic_m2};
use hermsig::division::DivisionKind;
use hermsig::hermitian::HermForm;
use hermsig::morita::{check_square, MoritaContext};
use hermsig::numeric::Ring;
use hermsig::relative::RelativeEtale;
use hermsig::signature::{find_reference_form, SearchBudget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = sqrt2_base();
    let m2 = make_algebra(&k, 2, DivisionKind::Base, &[], None);
    let sp = symplectic_m2(&k);
    let ctx = MoritaContext::new(m2.clone(), sp)?;
    println!("transpose -> symplectic: delta = {:+}", ctx.delta());

    let h = HermForm::diagonal_scalars(m2.clone(), &[k.one(), k.x(), k.from_int(-5)])?;
    let eta = find_reference_form(&m2, &SearchBudget::default())?;
    let fh = ctx.apply(&h)?;
    println!("F(h) has rank {} and epsilon {:+}", fh.rank(), fh.epsilon());
    for (a, (l, r)) in ctx.signature_pairs(&h, &eta)?.into_iter().enumerate() {
        println!("  ordering {a} ({}): {l} -> {r}", k.ordering_label(a));
        if l != r {
            return Err("Morita transport changed a signature".into());
        }
    }

    // extend to T = Q(√2)[y]/(y² - √2), real over one ordering only
    let e = Arc::new(RelativeEtale::new(k.clone(), vec![k.neg(&k.x()), k.zero(), k.one()])?);
    let sq = check_square(&ctx, &e, &h, &eta)?;
    println!("square: {:?} vs {:?}", sq.morita_then_extend, sq.extend_then_morita);
    if !sq.commutes() {
        return Err("square does not commute".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("morita_invariance");
}
