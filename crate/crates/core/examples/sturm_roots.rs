// Real roots of squarefree rational polynomials by Sturm chains.

use hermsig::numeric::{format_decimal, ratio, UniPoly};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, coeffs, expected) in [
        ("x^2 - 2", vec![-2, 0, 1], 2),
        ("x^2 + 1", vec![1, 0, 1], 0),
        ("x^3 - x", vec![0, -1, 0, 1], 3),
        ("x^4 - x^2 - 2", vec![-2, 0, -1, 0, 1], 2),
    ] {
        let p = UniPoly::from_ints(&coeffs);
        let roots = p.isolate_real_roots()?;
        if roots.len() != expected || p.count_real_roots(None, None)? != expected {
            return Err(format!("{name}: expected {expected} real roots").into());
        }
        print!("{name:<14} {} root(s):", roots.len());
        for mut r in roots {
            r.refine_to(&hermsig::numeric::Rationals, &ratio(1, 100_000));
            print!(" ({}, {}]", format_decimal(&r.lo, 5), format_decimal(&r.hi, 5));
        }
        println!();
    }
    // count on a half-open interval: √2 lies in (0, 2], -√2 does not
    let p = UniPoly::from_ints(&[-2, 0, 1]);
    let n = p.count_real_roots(Some(&ratio(0, 1)), Some(&ratio(2, 1)))?;
    println!("roots of x^2 - 2 in (0, 2]: {n}");
    if n != 1 {
        return Err("expected one root in (0, 2]".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sturm_roots");
}
