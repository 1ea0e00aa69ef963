//! Scenario files: TOML documents describing a base, an optional
//! extension, algebras with involution and forms.
//!
//! ```toml
//! [base]
//! factors = [[-2, 0, 1]]            # monic squarefree, lowest coefficient first
//!
//! [extension]
//! poly = [[0, -1], 0, 1]            # y² - x over the base
//!
//! [algebra.H]
//! n = 1
//! division = { kind = "quaternion", a = -1, b = -1 }
//! standard = "conj-transpose"
//! twist = "identity"
//!
//! [form.h]
//! algebra = "H"
//! over = "extension"
//! epsilon = 1
//! diagonal = [1, { scalar = [0, 1] }]
//!
//! [params]
//! seed = 0
//! ```
//!
//! Rationals are integers or strings `"p/q"`. A base element is a
//! rational, a list of coefficients in `x` (the same in every factor), or
//! `{ parts = [[...], ...] }` with one list per factor. An extension
//! element is a rational, a list of base elements (coefficients in `y`),
//! or `{ base = <base element> }`. A `D`-element is a scalar element when
//! `D` is the base, else a list of 2 or 4 coordinates. An algebra element
//! is a rational (a multiple of `I`), `{ scalar = e }`, `{ d = x }` for
//! `x·I`, or `{ matrix = [[...], ...] }`; when `n = 1` a bare list is read
//! as a `D`-element.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::base::BaseRing;
use crate::division::{DElem, DivisionKind};
use crate::error::Error;
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::hermitian::HermForm;
use crate::involution::{AlgElement, InvolutiveAlgebra, Standard};
use crate::morita::MoritaContext;
use crate::numeric::{parse_rational, Rational, Ring, UniPoly};
use crate::relative::{RelElement, RelativeEtale};
use crate::signature::SearchBudget;
use crate::transfer::TransferContext;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub base: BaseDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebra: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub form: BTreeMap<String, FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morita: Option<MoritaDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub factors: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub poly: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub n: usize,
    pub division: DivisionDoc,
    #[serde(default = "default_standard")]
    pub standard: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Value>,
}

fn default_standard() -> String {
    "transpose".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisionDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub algebra: String,
    #[serde(default = "default_over")]
    pub over: String,
    #[serde(default = "default_epsilon")]
    pub epsilon: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Value>>>,
}

fn default_over() -> String {
    "base".into()
}

fn default_epsilon() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoritaDoc {
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_height: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pfister_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_m: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("[{section}] (line {line}): {msg}")]
    Invalid { section: String, line: usize, msg: String },
    #[error("[{section}] (line {line}): unknown {kind} `{name}`")]
    Unresolved {
        section: String,
        line: usize,
        kind: &'static str,
        name: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub seed: u64,
    pub corpus_size: usize,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub doc: ScenarioDoc,
    pub base: Arc<EtaleAlgebra>,
    pub extension: Option<Arc<RelativeEtale>>,
    pub algebras: BTreeMap<String, Arc<InvolutiveAlgebra<EtaleAlgebra>>>,
    /// One transfer context per algebra when an extension is present.
    pub transfers: BTreeMap<String, TransferContext>,
    pub forms: BTreeMap<String, HermForm<EtaleAlgebra>>,
    pub extension_forms: BTreeMap<String, HermForm<RelativeEtale>>,
    pub morita: Option<MoritaContext<EtaleAlgebra>>,
    pub params: Params,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let doc: ScenarioDoc = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    build(doc, text)
}

/// Canonical TOML for a document; loading it gives back an equal document.
pub fn to_toml(doc: &ScenarioDoc) -> String {
    toml::to_string(doc).expect("scenario documents serialize")
}

/// Line of a section header in the source, for error messages.
fn line_of(text: &str, section: &str) -> usize {
    let header = format!("[{section}]");
    text.lines()
        .position(|l| l.trim_start().starts_with(&header))
        .map_or(0, |i| i + 1)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn invalid(&self, section: &str, msg: impl std::fmt::Display) -> ScenarioError {
        ScenarioError::Invalid {
            section: section.to_string(),
            line: line_of(self.text, section),
            msg: msg.to_string(),
        }
    }

    fn unresolved(&self, section: &str, kind: &'static str, name: &str) -> ScenarioError {
        ScenarioError::Unresolved {
            section: section.to_string(),
            line: line_of(self.text, section),
            kind,
            name: name.to_string(),
        }
    }
}

pub fn build(doc: ScenarioDoc, text: &str) -> Result<Scenario, ScenarioError> {
    let cx = Ctx { text };
    let factors = doc
        .base
        .factors
        .iter()
        .map(|f| f.iter().map(parse_num).collect::<Result<Vec<_>, _>>().map(UniPoly::new))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| cx.invalid("base", e))?;
    let base = Arc::new(EtaleAlgebra::new(factors).map_err(|e| cx.invalid("base", e))?);
    let extension = match &doc.extension {
        None => None,
        Some(x) => {
            let poly = x
                .poly
                .iter()
                .map(|v| base.parse_elem(v))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| cx.invalid("extension", e))?;
            Some(Arc::new(
                RelativeEtale::new(base.clone(), poly).map_err(|e| cx.invalid("extension", e))?,
            ))
        }
    };
    let mut algebras = BTreeMap::new();
    let mut transfers = BTreeMap::new();
    for (name, a) in &doc.algebra {
        let section = format!("algebra.{name}");
        let alg = Arc::new(build_algebra(&base, a).map_err(|e| cx.invalid(&section, e))?);
        if let Some(e) = &extension {
            transfers.insert(
                name.clone(),
                TransferContext::new(alg.clone(), e.clone()).map_err(|e| cx.invalid(&section, e))?,
            );
        }
        algebras.insert(name.clone(), alg);
    }
    let mut forms = BTreeMap::new();
    let mut extension_forms = BTreeMap::new();
    for (name, f) in &doc.form {
        let section = format!("form.{name}");
        let alg = algebras
            .get(&f.algebra)
            .ok_or_else(|| cx.unresolved(&section, "algebra", &f.algebra))?;
        match f.over.as_str() {
            "base" => {
                let h = build_form(alg, f).map_err(|e| cx.invalid(&section, e))?;
                forms.insert(name.clone(), h);
            }
            "extension" => {
                let t = transfers
                    .get(&f.algebra)
                    .ok_or_else(|| cx.invalid(&section, "form over the extension needs an [extension] block"))?;
                let h = build_form(t.extended_algebra(), f).map_err(|e| cx.invalid(&section, e))?;
                extension_forms.insert(name.clone(), h);
            }
            other => return Err(cx.invalid(&section, format!("`over` must be base or extension, got {other}"))),
        }
    }
    let morita = match &doc.morita {
        None => None,
        Some(m) => {
            let s = algebras
                .get(&m.source)
                .ok_or_else(|| cx.unresolved("morita", "algebra", &m.source))?;
            let t = algebras
                .get(&m.target)
                .ok_or_else(|| cx.unresolved("morita", "algebra", &m.target))?;
            Some(MoritaContext::new(s.clone(), t.clone()).map_err(|e| cx.invalid("morita", e))?)
        }
    };
    let p = doc.params.clone().unwrap_or_default();
    let defaults = SearchBudget::default();
    let params = Params {
        seed: p.seed.unwrap_or(0),
        corpus_size: p.corpus_size.unwrap_or(100),
        budget: SearchBudget {
            height: p.budget_height.unwrap_or(defaults.height),
            pfister_len: p.pfister_len.unwrap_or(defaults.pfister_len),
            max_m: p.max_m.unwrap_or(defaults.max_m),
        },
    };
    Ok(Scenario {
        doc,
        base,
        extension,
        algebras,
        transfers,
        forms,
        extension_forms,
        morita,
        params,
    })
}

fn build_algebra(base: &Arc<EtaleAlgebra>, a: &AlgebraDoc) -> Result<InvolutiveAlgebra<EtaleAlgebra>, String> {
    let param = |v: &Option<Value>, name: &str| -> Result<EtaleElement, String> {
        let v = v
            .as_ref()
            .ok_or_else(|| format!("division parameter `{name}` is missing"))?;
        base.parse_elem(v)
    };
    let (kind, params) = match a.division.kind.as_str() {
        "base" => (DivisionKind::Base, vec![]),
        "quadratic" => (DivisionKind::Quadratic, vec![param(&a.division.d, "d")?]),
        "quaternion" => (
            DivisionKind::Quaternion,
            vec![param(&a.division.a, "a")?, param(&a.division.b, "b")?],
        ),
        other => return Err(format!("unknown division kind `{other}`")),
    };
    let standard = match a.standard.as_str() {
        "transpose" => Standard::Transpose,
        "conj-transpose" => Standard::ConjTranspose,
        other => return Err(format!("unknown standard involution `{other}`")),
    };
    // parse the twist with a provisional algebra (u = I) for D's shape
    let provisional =
        InvolutiveAlgebra::new(base.clone(), a.n, kind, params.clone(), standard, None).map_err(|e| e.to_string())?;
    let twist = match &a.twist {
        None => None,
        Some(Value::String(s)) if s == "identity" => None,
        Some(v) => Some(parse_alg_elem(&provisional, v)?),
    };
    InvolutiveAlgebra::new(base.clone(), a.n, kind, params, standard, twist).map_err(|e| e.to_string())
}

fn build_form<R: ScenarioRing>(alg: &Arc<InvolutiveAlgebra<R>>, f: &FormDoc) -> Result<HermForm<R>, String> {
    match (&f.diagonal, &f.gram) {
        (Some(diag), None) => {
            if f.epsilon != 1 {
                return Err("diagonal forms are hermitian (epsilon = 1); use `gram`".into());
            }
            let entries = diag
                .iter()
                .enumerate()
                .map(|(i, v)| parse_alg_elem(alg, v).map_err(|e| format!("diagonal[{i}]: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            HermForm::diagonal(alg.clone(), entries).map_err(|e| e.to_string())
        }
        (None, Some(gram)) => {
            let g = gram
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| parse_alg_elem(alg, v).map_err(|e| format!("gram[{i}][{j}]: {e}")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            HermForm::new(alg.clone(), f.epsilon, g).map_err(|e| e.to_string())
        }
        _ => Err("give exactly one of `diagonal` and `gram`".into()),
    }
}

pub fn parse_num(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Integer(n) => Ok(Rational::from_integer((*n).into())),
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational")),
        other => Err(format!("expected an integer or \"p/q\", got {other}")),
    }
}

fn is_num(v: &Value) -> bool {
    matches!(v, Value::Integer(_) | Value::String(_))
}

/// Rings whose elements can be written in a scenario file.
pub trait ScenarioRing: BaseRing {
    fn parse_elem(&self, v: &Value) -> Result<Self::Elem, String>;
}

impl ScenarioRing for EtaleAlgebra {
    fn parse_elem(&self, v: &Value) -> Result<EtaleElement, String> {
        match v {
            v if is_num(v) => Ok(self.from_rational(&parse_num(v)?)),
            Value::Array(cs) => {
                let p = cs.iter().map(parse_num).collect::<Result<Vec<_>, _>>()?;
                Ok(self.from_poly(&p))
            }
            Value::Table(t) => {
                let parts = t
                    .get("parts")
                    .and_then(Value::as_array)
                    .ok_or("expected `{ parts = [...] }`")?;
                let parts = parts
                    .iter()
                    .map(|p| {
                        p.as_array()
                            .ok_or_else(|| "each part is a coefficient list".to_string())?
                            .iter()
                            .map(parse_num)
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                self.element(parts).map_err(|e| e.to_string())
            }
            other => Err(format!("cannot read a base element from {other}")),
        }
    }
}

impl ScenarioRing for RelativeEtale {
    fn parse_elem(&self, v: &Value) -> Result<RelElement, String> {
        match v {
            v if is_num(v) => Ok(self.from_rational(&parse_num(v)?)),
            Value::Array(cs) => {
                let p = cs
                    .iter()
                    .map(|c| self.base().parse_elem(c))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.reduce(p))
            }
            Value::Table(t) => {
                let b = t.get("base").ok_or("expected `{ base = ... }`")?;
                Ok(self.embed(&self.base().parse_elem(b)?))
            }
            other => Err(format!("cannot read an extension element from {other}")),
        }
    }
}

fn parse_d<R: ScenarioRing>(alg: &InvolutiveAlgebra<R>, v: &Value) -> Result<DElem<R::Elem>, String> {
    let d = alg.division();
    if d.dim() == 1 {
        return Ok(vec![alg.base().parse_elem(v)?]);
    }
    match v {
        v if is_num(v) => Ok(d.scalar(alg.base().from_rational(&parse_num(v)?))),
        Value::Array(cs) if cs.len() == d.dim() => cs.iter().map(|c| alg.base().parse_elem(c)).collect(),
        other => Err(format!(
            "expected {} coordinates for a {} element, got {other}",
            d.dim(),
            d.kind()
        )),
    }
}

fn parse_alg_elem<R: ScenarioRing>(alg: &InvolutiveAlgebra<R>, v: &Value) -> Result<AlgElement<R::Elem>, String> {
    match v {
        v if is_num(v) => Ok(alg.scalar(&alg.base().parse_elem(v)?)),
        Value::Array(_) if alg.n() == 1 => Ok(vec![vec![parse_d(alg, v)?]]),
        Value::Table(t) => {
            if let Some(s) = t.get("scalar") {
                Ok(alg.scalar(&alg.base().parse_elem(s)?))
            } else if let Some(x) = t.get("d") {
                Ok(alg.d_scalar(&parse_d(alg, x)?))
            } else if let Some(Value::Array(rows)) = t.get("matrix") {
                let n = alg.n();
                if rows.len() != n {
                    return Err(format!("matrix needs {n} rows"));
                }
                rows.iter()
                    .map(|r| match r {
                        Value::Array(es) if es.len() == n => es.iter().map(|e| parse_d(alg, e)).collect(),
                        _ => Err(format!("matrix rows need {n} entries")),
                    })
                    .collect()
            } else {
                Err("expected `scalar`, `d` or `matrix`".into())
            }
        }
        other => Err(format!("cannot read an algebra element from {other}")),
    }
}

impl From<ScenarioError> for Error {
    fn from(e: ScenarioError) -> Self {
        Error::Domain(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::m_signature;

    const QUATERNION_SQRT2: &str = r#"
[base]
factors = [[0, 1]]

[extension]
poly = [-2, 0, 1]

[algebra.H]
n = 1
division = { kind = "quaternion", a = -1, b = -1 }
standard = "conj-transpose"

[form.h]
algebra = "H"
over = "extension"
diagonal = [1, { scalar = [0, 1] }]

[form.g]
algebra = "H"
diagonal = ["1/2", 3]
"#;

    #[test]
    fn minimal_base_only() {
        let s = parse_scenario("[base]\nfactors = [[0, 1]]\n").unwrap();
        assert_eq!(s.base.num_orderings(), 1);
        assert!(s.algebras.is_empty());
    }

    #[test]
    fn non_squarefree_factor_is_located() {
        let err = parse_scenario("# comment\n[base]\nfactors = [[1, 2, 1]]\n").unwrap_err();
        match err {
            ScenarioError::Invalid { section, line, .. } => assert_eq!((section.as_str(), line), ("base", 2)),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn quaternion_file_loads_and_round_trips() {
        let s = parse_scenario(QUATERNION_SQRT2).unwrap();
        assert_eq!(s.extension_forms["h"].rank(), 2);
        assert_eq!(m_signature(&s.forms["g"], 0), 2);
        let again = parse_scenario(&to_toml(&s.doc)).unwrap();
        assert_eq!(again.doc, s.doc);
        assert_eq!(to_toml(&again.doc), to_toml(&s.doc));
    }

    #[test]
    fn distinct_error_kinds() {
        assert!(matches!(parse_scenario("[base\n"), Err(ScenarioError::Parse(_))));
        let unresolved = "[base]\nfactors = [[0, 1]]\n[form.h]\nalgebra = \"X\"\ndiagonal = [1]\n";
        assert!(matches!(
            parse_scenario(unresolved),
            Err(ScenarioError::Unresolved { .. })
        ));
        let bad = "[base]\nfactors = [[0, 1]]\n[algebra.H]\nn = 1\ndivision = { kind = \"quaternion\", a = -1, b = -1 }\nstandard = \"conj-transpose\"\n[form.h]\nalgebra = \"H\"\ndiagonal = [{ d = [0, 1, 0, 0] }]\n";
        match parse_scenario(bad) {
            Err(ScenarioError::Invalid { section, line, .. }) => assert_eq!((section.as_str(), line), ("form.h", 7)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
