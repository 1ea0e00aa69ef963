// Signatures of diagonal and Pfister forms at every ordering of Q(√2).

use std::sync::Arc;

use hermsig::base::BaseRing;
use hermsig::etale::EtaleAlgebra;
use hermsig::numeric::{Ring, UniPoly};
use hermsig::quadratic::QuadForm;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = Arc::new(EtaleAlgebra::new(vec![UniPoly::from_ints(&[-2, 0, 1])])?);
    let x = k.x();
    for a in 0..k.num_orderings() {
        println!("ordering {a}: {}", k.ordering_label(a));
    }
    let q = QuadForm::diagonal(k.clone(), vec![k.one(), x.clone()]);
    println!("<1, sqrt2>        {:?}", q.signatures());
    if q.signatures() != [0, 2] {
        return Err("<1, sqrt2> should have signatures [0, 2]".into());
    }
    let h = QuadForm::hyperbolic(k.clone(), 2);
    println!("hyperbolic rank 4 {:?}", h.signatures());

    // <<sqrt2, 1+sqrt2>> is 4 where both slots are positive, 0 elsewhere
    let p = QuadForm::pfister(k.clone(), &[x.clone(), k.add(&k.one(), &x)])?;
    println!("<<sqrt2, 1+sqrt2>> {:?}", p.signatures());
    if p.signatures() != [0, 4] {
        return Err("Pfister form signatures".into());
    }
    let sum = q.sum(&p)?;
    let expected: Vec<i64> = q.signatures().iter().zip(p.signatures()).map(|(a, b)| a + b).collect();
    println!("sum               {:?}", sum.signatures());
    if sum.signatures() != expected {
        return Err("signature is not additive".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("quadratic_signatures");
}
