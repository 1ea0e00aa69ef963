// Scenario files: load, run a command, write back canonical TOML.

use hermsig::cli::{execute, Command, Flags};
use hermsig::corpus::corpus_generate;
use hermsig::scenario::{parse_scenario, to_toml};

const SCENARIO: &str = r#"
[base]
factors = [[0, 1]]

[extension]
poly = [-2, 0, 1]

[algebra.H]
n = 1
division = { kind = "quaternion", a = -1, b = -1 }
standard = "conj-transpose"

[form.root2]
algebra = "H"
over = "extension"
diagonal = [{ scalar = [0, 1] }]
"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = parse_scenario(SCENARIO)?;
    let report = execute(&Command::KtfVerify(Flags::default()), Some(s.clone()))?;
    print!("{}", report.to_table());
    if !report.all_pass() {
        return Err("trace formula check failed".into());
    }

    let canonical = to_toml(&s.doc);
    println!("canonical form:\n{canonical}");
    if parse_scenario(&canonical)?.doc != s.doc {
        return Err("round trip changed the document".into());
    }

    // generated scenarios survive the same round trip
    for doc in corpus_generate(7, 5) {
        if parse_scenario(&to_toml(&doc))?.doc != doc {
            return Err("corpus round trip".into());
        }
    }

    let bad = parse_scenario("[base]\nfactors = [[1, 2, 1]]\n").unwrap_err();
    println!("rejected: {bad}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scenario_roundtrip");
}
