// Involution types and Nil sets for algebras over Q(√2).

use hermsig::base::BaseRing;
use hermsig::checks::{make_algebra, make_twisted, sqrt2_base, symplectic_m2};
use hermsig::division::DivisionKind;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = sqrt2_base();
    let algebras = [
        ("M1, identity", make_algebra(&k, 1, DivisionKind::Base, &[], None)),
        ("M2, symplectic", symplectic_m2(&k)),
        (
            "(-1,-1), conjugation",
            make_algebra(&k, 1, DivisionKind::Quaternion, &[-1, -1], None),
        ),
        (
            "(1,1), conjugation",
            make_algebra(&k, 1, DivisionKind::Quaternion, &[1, 1], None),
        ),
        (
            "(-1,-1), twisted by i",
            make_twisted(&k, 1, DivisionKind::Quaternion, &[-1, -1], |a| {
                vec![vec![a.division().basis(1)]]
            }),
        ),
        (
            "Q(i)/Q unitary",
            make_algebra(&k, 1, DivisionKind::Quadratic, &[-1], None),
        ),
    ];
    for (name, alg) in &algebras {
        let row: Vec<String> = (0..k.num_orderings())
            .map(|a| format!("{}{}", alg.type_at(a), if alg.in_nil(a) { " (nil)" } else { "" }))
            .collect();
        println!("{name:<24} {}", row.join(" | "));
    }
    // conjugation on a division quaternion algebra is symplectic, not nil
    if algebras[2].1.in_nil(0) || !algebras[3].1.in_nil(0) {
        return Err("Nil membership of the quaternion algebras".into());
    }
    // twisting by a pure quaternion gives an orthogonal involution
    if algebras[4].1.type_at(1).to_string() != "orthogonal" {
        return Err("i-twisted involution should be orthogonal".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("quaternion_involutions");
}
