//! Seeded random scenarios for corpus checks.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with the scenario
//! seed. Budgets: extension degree ≤ 4 with coefficients in [-9, 9], form
//! entries with coefficients in [-5, 5], one to three diagonal entries.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toml::Value;

use crate::numeric::UniPoly;
use crate::scenario::{
    build, AlgebraDoc, BaseDoc, DivisionDoc, ExtensionDoc, FormDoc, ParamsDoc, Scenario, ScenarioDoc,
};

pub const MAX_EXT_DEGREE: usize = 4;
pub const MAX_EXT_COEFF: i64 = 9;
pub const MAX_ENTRY_HEIGHT: i64 = 5;

/// The five algebra templates over ℚ, in round-robin order.
pub const TEMPLATES: [&str; 5] = ["Q-id", "M2-transpose", "M2-symplectic", "H-conj", "Qi-unitary"];

pub fn template(name: &str) -> Option<AlgebraDoc> {
    let division = |kind: &str, d: Option<i64>, ab: Option<(i64, i64)>| DivisionDoc {
        kind: kind.into(),
        d: d.map(Value::from),
        a: ab.map(|p| Value::from(p.0)),
        b: ab.map(|p| Value::from(p.1)),
    };
    let alg = |n, division, standard: &str, twist| AlgebraDoc {
        n,
        division,
        standard: standard.into(),
        twist,
    };
    Some(match name {
        "Q-id" => alg(1, division("base", None, None), "transpose", None),
        "M2-transpose" => alg(2, division("base", None, None), "transpose", None),
        "M2-symplectic" => {
            let u: Value = toml::from_str::<toml::Table>("t = { matrix = [[0, 1], [-1, 0]] }").unwrap()["t"].clone();
            alg(2, division("base", None, None), "transpose", Some(u))
        }
        "H-conj" => alg(1, division("quaternion", None, Some((-1, -1))), "conj-transpose", None),
        "Qi-unitary" => alg(1, division("quadratic", Some(-1), None), "conj-transpose", None),
        _ => return None,
    })
}

/// Monic squarefree integer polynomial, lowest coefficient first.
pub fn random_squarefree(rng: &mut ChaCha8Rng, max_degree: usize, max_coeff: i64) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
        c.push(1);
        if UniPoly::from_ints(&c).squarefree_check().unwrap_or(false) {
            return c;
        }
    }
}

fn random_ext_elem(rng: &mut ChaCha8Rng, degree: usize) -> Value {
    let c: Vec<Value> = (0..degree)
        .map(|_| Value::from(rng.gen_range(-MAX_ENTRY_HEIGHT..=MAX_ENTRY_HEIGHT)))
        .collect();
    Value::Array(c)
}

fn table(key: &str, v: Value) -> Value {
    let mut t = toml::Table::new();
    t.insert(key.into(), v);
    Value::Table(t)
}

fn random_entry(rng: &mut ChaCha8Rng, template: &str, degree: usize) -> Value {
    if template == "M2-transpose" {
        let a = random_ext_elem(rng, degree);
        let b = random_ext_elem(rng, degree);
        let c = random_ext_elem(rng, degree);
        let rows = Value::Array(vec![Value::Array(vec![a, b.clone()]), Value::Array(vec![b, c])]);
        table("matrix", rows)
    } else {
        table("scalar", random_ext_elem(rng, degree))
    }
}

fn random_base_entry(rng: &mut ChaCha8Rng) -> Value {
    let mut v = 0;
    while v == 0 {
        v = rng.gen_range(-MAX_ENTRY_HEIGHT..=MAX_ENTRY_HEIGHT);
    }
    Value::from(v)
}

/// One instance: base ℚ, extension `T = ℚ[y]/(f)`, algebra `A` from a
/// template, a nonsingular diagonal form `h` over `A ⊗ T` and `g` over `A`.
/// Candidates that fail to load or are singular are redrawn.
fn instance(rng: &mut ChaCha8Rng, index: usize, seed: u64) -> (ScenarioDoc, Scenario) {
    let name = TEMPLATES[index % TEMPLATES.len()];
    loop {
        let f = random_squarefree(rng, MAX_EXT_DEGREE, MAX_EXT_COEFF);
        let degree = f.len() - 1;
        let rank = rng.gen_range(1..=3);
        let h: Vec<Value> = (0..rank).map(|_| random_entry(rng, name, degree)).collect();
        let g: Vec<Value> = (0..rng.gen_range(1..=3)).map(|_| random_base_entry(rng)).collect();
        let mut algebra = BTreeMap::new();
        algebra.insert("A".to_string(), template(name).unwrap());
        let mut form = BTreeMap::new();
        let mk = |over: &str, diagonal| FormDoc {
            algebra: "A".into(),
            over: over.into(),
            epsilon: 1,
            diagonal: Some(diagonal),
            gram: None,
        };
        form.insert("h".to_string(), mk("extension", h));
        form.insert("g".to_string(), mk("base", g));
        let doc = ScenarioDoc {
            base: BaseDoc {
                factors: vec![vec![Value::from(0), Value::from(1)]],
            },
            extension: Some(ExtensionDoc {
                poly: f.into_iter().map(Value::from).collect(),
            }),
            algebra,
            form,
            morita: None,
            params: Some(ParamsDoc {
                seed: Some(seed),
                ..ParamsDoc::default()
            }),
        };
        let Ok(s) = build(doc.clone(), "") else {
            continue;
        };
        if s.extension_forms["h"].is_nonsingular() && s.forms["g"].is_nonsingular() {
            return (doc, s);
        }
    }
}

/// `size` scenario documents, deterministic in `seed`.
pub fn corpus_generate(seed: u64, size: usize) -> Vec<ScenarioDoc> {
    corpus_scenarios(seed, size).into_iter().map(|s| s.doc).collect()
}

/// Like [`corpus_generate`] but keeps the loaded scenarios.
pub fn corpus_scenarios(seed: u64, size: usize) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|i| instance(&mut rng, i, seed).1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{parse_scenario, to_toml};

    #[test]
    fn deterministic_and_empty() {
        assert!(corpus_generate(3, 0).is_empty());
        assert_eq!(corpus_generate(1, 10), corpus_generate(1, 10));
        assert_ne!(corpus_generate(1, 10), corpus_generate(2, 10));
    }

    #[test]
    fn corpus_loads_and_round_trips() {
        for doc in corpus_generate(1, 20) {
            let text = to_toml(&doc);
            let s = parse_scenario(&text).unwrap();
            assert_eq!(s.doc, doc);
            assert_eq!(to_toml(&s.doc), text);
        }
    }

    #[test]
    fn templates_cycle() {
        let docs = corpus_generate(0, 5);
        let kinds: Vec<_> = docs.iter().map(|d| d.algebra["A"].division.kind.clone()).collect();
        assert_eq!(kinds, ["base", "base", "base", "quaternion", "quadratic"]);
    }
}
