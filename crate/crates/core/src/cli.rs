//! Command dispatch for the `hermsig` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage and scenario errors.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::base::BaseRing;
use crate::checks::{ktf_corpus, selftest};
use crate::etale::EtaleAlgebra;
use crate::hermitian::HermForm;
use crate::involution::InvolutiveAlgebra;
use crate::morita::check_square;
use crate::relative::RelativeEtale;
use crate::report::Report;
use crate::scenario::{load_scenario, Scenario, ScenarioError};
use crate::signature::{
    find_reference_form, find_two_power_form, is_nil_for, m_signature, total_signature, ReferenceForm,
};
use crate::transfer::TransferContext;

#[derive(Debug, Parser)]
#[command(
    name = "hermsig",
    version,
    about = "Exact signatures of hermitian forms over étale ℚ-algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the orderings of the base (and of the extension, if any).
    Orderings(Flags),
    /// Signature of a form at every ordering, before fixing the sign.
    Sign(Flags),
    /// η-signature of a form at every ordering, η found by search.
    Total(Flags),
    /// Transfer checks: counting real extensions, Nil correspondence,
    /// restriction of signatures, nonsingularity of transferred forms.
    TransferCheck(Flags),
    /// The hermitian trace formula for every form over the extension.
    KtfVerify(Flags),
    /// Signatures on both sides of the `[morita]` context.
    MoritaCheck(Flags),
    /// Involution types and Nil membership per ordering.
    Nil(Flags),
    /// Search for a reference form.
    FindRef(Flags),
    /// Search for a form with signature ±2^m off Nil.
    TwoPower(Flags),
    /// Run the built-in corpus checks.
    Selftest(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub budget_height: Option<i64>,
    /// Form to use (default: the first one in the file).
    #[arg(long)]
    pub form: Option<String>,
    /// Algebra to use (default: the first one in the file).
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{0}")]
    Math(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

impl Command {
    pub fn flags(&self) -> &Flags {
        match self {
            Command::Orderings(f)
            | Command::Sign(f)
            | Command::Total(f)
            | Command::TransferCheck(f)
            | Command::KtfVerify(f)
            | Command::MoritaCheck(f)
            | Command::Nil(f)
            | Command::FindRef(f)
            | Command::TwoPower(f)
            | Command::Selftest(f) => f,
        }
    }
}

/// Rendered output and exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn render(report: &Report, json: bool) -> String {
    if json {
        report.to_json_lines()
    } else {
        report.to_table()
    }
}

/// Loads the scenario named by the flags and runs the command.
pub fn run(cmd: &Command) -> Outcome {
    let flags = cmd.flags();
    let scenario = match &flags.scenario {
        Some(p) => match load_scenario(p) {
            Ok(s) => Some(s),
            Err(e) => return failure(CliError::from(e)),
        },
        None => None,
    };
    match execute(cmd, scenario) {
        Ok(r) => Outcome {
            output: render(&r, flags.json),
            code: r.exit_code(),
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        output: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

fn need(s: Option<Scenario>) -> Result<Scenario, CliError> {
    s.ok_or_else(|| CliError::Usage("this command needs --scenario <path>".into()))
}

/// Runs a command on an already loaded scenario, with flag overrides.
pub fn execute(cmd: &Command, scenario: Option<Scenario>) -> Result<Report, CliError> {
    let flags = cmd.flags();
    let mut s = match (cmd, scenario) {
        (Command::Selftest(_), None) => None,
        (_, s) => Some(need(s)?),
    };
    if let Some(s) = s.as_mut() {
        if let Some(seed) = flags.seed {
            s.params.seed = seed;
        }
        if let Some(h) = flags.budget_height {
            s.params.budget.height = h;
        }
    }
    match cmd {
        Command::Orderings(_) => Ok(orderings(&s.unwrap())),
        Command::Sign(_) => signature_rows(&s.unwrap(), flags, false),
        Command::Total(_) => signature_rows(&s.unwrap(), flags, true),
        Command::TransferCheck(_) => transfer_check(&s.unwrap()),
        Command::KtfVerify(_) => ktf_verify(&s.unwrap()),
        Command::MoritaCheck(_) => morita_check(&s.unwrap()),
        Command::Nil(_) => Ok(nil(&s.unwrap())),
        Command::FindRef(_) => find_ref(&s.unwrap(), flags),
        Command::TwoPower(_) => two_power(&s.unwrap(), flags),
        Command::Selftest(_) => Ok(run_selftest(s.as_ref(), flags)),
    }
}

fn orderings(s: &Scenario) -> Report {
    let mut r = Report::table("orderings", &["ring", "ordering", "label"]);
    for a in 0..s.base.num_orderings() {
        r.push_row(json!({"ring": "base", "ordering": a, "label": s.base.ordering_label(a)}));
    }
    if let Some(e) = &s.extension {
        for g in 0..e.num_orderings() {
            r.push_row(json!({"ring": "extension", "ordering": g, "label": e.ordering_label(g)}));
        }
    }
    r
}

fn pick<'a, V>(
    map: &'a std::collections::BTreeMap<String, V>,
    name: Option<&String>,
    what: &str,
) -> Result<(&'a String, &'a V), CliError> {
    match name {
        Some(n) => map
            .get_key_value(n)
            .ok_or_else(|| CliError::Usage(format!("no {what} named `{n}`"))),
        None => map
            .iter()
            .next()
            .ok_or_else(|| CliError::Usage(format!("the scenario has no {what} block"))),
    }
}

enum AnyForm<'a> {
    Base(&'a HermForm<EtaleAlgebra>),
    Ext(&'a HermForm<RelativeEtale>, &'a TransferContext),
}

fn pick_form<'a>(s: &'a Scenario, flags: &Flags) -> Result<(String, AnyForm<'a>), CliError> {
    let name = match &flags.form {
        Some(n) => n.clone(),
        None => s
            .doc
            .form
            .keys()
            .next()
            .cloned()
            .ok_or_else(|| CliError::Usage("the scenario has no form block".into()))?,
    };
    if let Some(h) = s.forms.get(&name) {
        return Ok((name, AnyForm::Base(h)));
    }
    if let Some(h) = s.extension_forms.get(&name) {
        let alg = &s.doc.form[&name].algebra;
        return Ok((name.clone(), AnyForm::Ext(h, &s.transfers[alg])));
    }
    Err(CliError::Usage(format!("no form named `{name}`")))
}

fn value_rows(title: String, values: impl Iterator<Item = i64>) -> Report {
    let mut r = Report::table(title, &["ordering", "value"]);
    for (a, v) in values.enumerate() {
        r.push_row(json!({"ordering": a, "value": v}));
    }
    r
}

fn signature_rows(s: &Scenario, flags: &Flags, with_reference: bool) -> Result<Report, CliError> {
    let (name, form) = pick_form(s, flags)?;
    let budget = &s.params.budget;
    Ok(match form {
        AnyForm::Base(h) => {
            if with_reference {
                let eta = find_reference_form(h.algebra(), budget)?;
                value_rows(
                    format!("total signature of {name}"),
                    total_signature(h, &eta).into_iter(),
                )
            } else {
                value_rows(
                    format!("signature of {name}"),
                    (0..s.base.num_orderings()).map(|a| m_signature(h, a)),
                )
            }
        }
        AnyForm::Ext(h, ctx) => {
            let e = ctx.extension();
            if with_reference {
                let eta = find_reference_form(ctx.algebra(), budget)?;
                let eta_t = ctx.extend_reference(&eta)?;
                value_rows(
                    format!("total signature of {name} (extension orderings)"),
                    total_signature(h, &eta_t).into_iter(),
                )
            } else {
                value_rows(
                    format!("signature of {name} (extension orderings)"),
                    (0..e.num_orderings()).map(|g| m_signature(h, g)),
                )
            }
        }
    })
}

fn need_extension(s: &Scenario) -> Result<(), CliError> {
    if s.extension.is_none() {
        return Err(CliError::Usage("this command needs an [extension] block".into()));
    }
    if s.algebras.is_empty() {
        return Err(CliError::Usage("this command needs an [algebra.NAME] block".into()));
    }
    Ok(())
}

fn transfer_check(s: &Scenario) -> Result<Report, CliError> {
    need_extension(s)?;
    let mut r = Report::checks("transfer checks");
    let budget = &s.params.budget;
    for (an, ctx) in &s.transfers {
        let eta = find_reference_form(ctx.algebra(), budget)?;
        let eta_t = ctx.extend_reference(&eta)?;
        let samples: Vec<HermForm<EtaleAlgebra>> = s
            .doc
            .form
            .iter()
            .filter(|(n, f)| f.algebra == *an && s.forms.contains_key(*n))
            .map(|(n, _)| s.forms[n].clone())
            .chain([eta.form().clone()])
            .collect();
        for a in 0..s.base.num_orderings() {
            let rep = ctx.verify_extend_nil(a, &eta, &eta_t, &samples);
            let inst = format!("{an} alpha {a}");
            r.push_check(
                "trace-signature-counts-extensions",
                &inst,
                &inst,
                json!(rep.trace_signature),
                json!(rep.r),
                json!({}),
            );
            r.push_check(
                "nil-correspondence",
                &inst,
                &inst,
                json!(rep.gamma_in_nil),
                json!(vec![rep.alpha_in_nil; rep.gamma_in_nil.len()]),
                json!({}),
            );
            for (i, (l, per)) in rep.restrictions.iter().enumerate() {
                r.push_check(
                    "restriction-of-signatures",
                    &format!("{inst} sample {i}"),
                    &inst,
                    json!(per),
                    json!(vec![*l; per.len()]),
                    json!({}),
                );
            }
        }
    }
    for (fname, h) in &s.extension_forms {
        let ctx = &s.transfers[&s.doc.form[fname].algebra];
        let t = ctx.transfer(h)?;
        r.push_check(
            "transfer-keeps-nonsingular",
            fname,
            fname,
            json!(t.is_nonsingular()),
            json!(h.is_nonsingular()),
            json!({"rank": t.rank()}),
        );
    }
    Ok(r)
}

fn ktf_verify(s: &Scenario) -> Result<Report, CliError> {
    if s.extension_forms.is_empty() {
        if s.doc.params.as_ref().and_then(|p| p.corpus_size).is_some() {
            return Ok(ktf_corpus(s.params.seed, s.params.corpus_size, &s.params.budget));
        }
        need_extension(s)?;
        return Err(CliError::Usage(
            "no form over the extension and no corpus_size in [params]".into(),
        ));
    }
    let mut r = Report::checks("hermitian trace formula");
    let budget = &s.params.budget;
    for (fname, h) in &s.extension_forms {
        let ctx = &s.transfers[&s.doc.form[fname].algebra];
        let eta = find_reference_form(ctx.algebra(), budget)?;
        let eta_t = ctx.extend_reference(&eta)?;
        for a in 0..s.base.num_orderings() {
            let rep = ctx.verify_hermitian(h, a, &eta, &eta_t)?;
            let inst = format!("{fname} alpha {a}");
            r.push_check(
                "hermitian-trace-formula",
                &inst,
                &inst,
                json!(rep.lhs),
                json!(rep.rhs),
                json!({"alpha": a, "r": rep.r, "t": rep.t, "per_gamma": rep.per_gamma}),
            );
        }
    }
    Ok(r)
}

fn morita_check(s: &Scenario) -> Result<Report, CliError> {
    let ctx = s
        .morita
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs a [morita] block".into()))?;
    let src = &s.doc.morita.as_ref().unwrap().source;
    let eta = find_reference_form(ctx.source(), &s.params.budget)?;
    let mut r = Report::checks(format!("Morita invariance (delta = {:+})", ctx.delta()));
    r.columns.insert(2, "ordering".into());
    let forms: Vec<_> = s
        .doc
        .form
        .iter()
        .filter(|(n, f)| f.algebra == *src && s.forms.contains_key(*n))
        .collect();
    if forms.is_empty() {
        return Err(CliError::Usage(format!("no form over the source algebra `{src}`")));
    }
    for (fname, _) in forms {
        let h = &s.forms[fname];
        for (a, (l, rr)) in ctx.signature_pairs(h, &eta)?.into_iter().enumerate() {
            r.push_check(
                "morita-signature",
                fname,
                fname,
                json!(l),
                json!(rr),
                json!({"ordering": a}),
            );
        }
        if let Some(e) = &s.extension {
            let sq = check_square(ctx, e, h, &eta)?;
            r.push_check(
                "extension-square",
                fname,
                fname,
                json!(sq.morita_then_extend),
                json!(sq.extend_then_morita),
                json!({}),
            );
        }
    }
    Ok(r)
}

fn nil(s: &Scenario) -> Report {
    let mut r = Report::table(
        "involution types and Nil",
        &["algebra", "ordering", "type", "nil", "nil_skew"],
    );
    for (name, alg) in &s.algebras {
        for a in 0..s.base.num_orderings() {
            r.push_row(json!({
                "algebra": name,
                "ordering": a,
                "type": alg.type_at(a).to_string(),
                "nil": is_nil_for(alg, 1, a),
                "nil_skew": is_nil_for(alg, -1, a),
            }));
        }
    }
    r
}

fn pick_algebra<'a>(
    s: &'a Scenario,
    flags: &Flags,
) -> Result<(&'a String, &'a Arc<InvolutiveAlgebra<EtaleAlgebra>>), CliError> {
    pick(&s.algebras, flags.algebra.as_ref(), "algebra")
}

fn find_ref(s: &Scenario, flags: &Flags) -> Result<Report, CliError> {
    let (name, alg) = pick_algebra(s, flags)?;
    let eta: ReferenceForm<EtaleAlgebra> = find_reference_form(alg, &s.params.budget)?;
    Ok(value_rows(
        format!("reference form for {name}: rank {}", eta.form().rank()),
        (0..s.base.num_orderings()).map(|a| m_signature(eta.form(), a)),
    ))
}

fn two_power(s: &Scenario, flags: &Flags) -> Result<Report, CliError> {
    let (name, alg) = pick_algebra(s, flags)?;
    let eta = find_reference_form(alg, &s.params.budget)?;
    let tp = find_two_power_form(&eta, &s.params.budget)?;
    Ok(value_rows(
        format!("two-power form for {name}: m = {}, rank {}", tp.m, tp.form.rank()),
        total_signature(&tp.form, &eta).into_iter(),
    ))
}

fn run_selftest(s: Option<&Scenario>, flags: &Flags) -> Report {
    let seed = flags.seed.or(s.map(|s| s.params.seed)).unwrap_or(0);
    let budget = s.map(|s| s.params.budget).unwrap_or_default();
    let mut r = Report::checks("selftest");
    r.columns = ["criterion", "instance", "lhs", "rhs", "pass"]
        .map(String::from)
        .to_vec();
    for c in selftest(seed, &budget) {
        let total = c.report.passed + c.report.failed;
        let failures: Vec<_> = c.report.failures().take(3).cloned().collect();
        r.push_check(
            "criterion",
            c.name,
            c.name,
            json!(c.report.passed),
            json!(total),
            json!({"criterion": c.id, "first_failures": failures}),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn flags() -> Flags {
        Flags::default()
    }

    #[test]
    fn orderings_of_sqrt2() {
        let s = parse_scenario("[base]\nfactors = [[-2, 0, 1]]\n").unwrap();
        let r = execute(&Command::Orderings(flags()), Some(s)).unwrap();
        assert_eq!(r.rows.len(), 2);
    }

    #[test]
    fn missing_blocks_are_usage_errors() {
        let s = parse_scenario("[base]\nfactors = [[-2, 0, 1]]\n").unwrap();
        let e = execute(&Command::MoritaCheck(flags()), Some(s.clone())).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = execute(&Command::KtfVerify(flags()), Some(s)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = execute(&Command::Sign(flags()), None).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn sign_lines() {
        let s = parse_scenario(
            "[base]\nfactors = [[-2, 0, 1]]\n[algebra.A]\nn = 1\ndivision = { kind = \"base\" }\n[form.q]\nalgebra = \"A\"\ndiagonal = [1, [0, 1]]\n",
        )
        .unwrap();
        let r = execute(&Command::Total(flags()), Some(s)).unwrap();
        assert_eq!(
            r.to_json_lines(),
            "{\"ordering\":0,\"value\":0}\n{\"ordering\":1,\"value\":2}\n"
        );
    }
}
