//! Problem and result documents.
//!
//! A problem document is one self-contained JSON object:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "algebra": {
//!     "basis": ["1", "x"],
//!     "structure": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]],
//!     "unit": ["1", "0"]
//!   },
//!   "module": { "dim": 1, "action": [[["1"]], [["0"]]] },
//!   "cochain": { "degree": 1, "entries": [{ "tuple": [1], "value": [["1"]] }] },
//!   "options": { "order": 5 }
//! }
//! ```
//!
//! `field` is `"Q"` or `"Fp"` together with `"prime": p`. Optional payloads
//! are `cochain`, `deformation`, `second_deformation` and `automorphism`.
//! Parsing checks syntax, shapes and guardrails and reports the JSON path of
//! the first problem; the algebra and module axioms are checked when a
//! command needs them.

mod encode;
mod run;

use std::fmt::Display;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{validate_algebra, validate_module, Algebra, AlgebraData, Module, ValidationReport};
use crate::deform::{ApproximateDeformation, FormalAutomorphism};
use crate::hochschild::{Cochain, Guardrails};
use crate::linalg::{Field, Matrix};

pub use encode::{
    decode_scalar, encode_automorphism, encode_cochain, encode_deformation, encode_matrix,
    encode_scalar, encode_vector,
};
pub use run::{run, Command, RunOutput};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    At { path: String, message: String },
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

impl DocumentError {
    pub fn at(path: impl Into<String>, message: impl Display) -> Self {
        DocumentError::At {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    field: String,
    #[serde(default)]
    prime: Option<u64>,
    algebra: RawAlgebra,
    module: RawModule,
    #[serde(default)]
    cochain: Option<RawCochain>,
    #[serde(default)]
    deformation: Option<RawDeformation>,
    #[serde(default)]
    second_deformation: Option<RawDeformation>,
    #[serde(default)]
    automorphism: Option<RawAutomorphism>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(default)]
    basis: Vec<String>,
    structure: Vec<Vec<Vec<String>>>,
    unit: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawCochain {
    degree: usize,
    #[serde(default)]
    entries: Vec<RawEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    tuple: Vec<usize>,
    value: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDeformation {
    #[serde(default)]
    order: Option<usize>,
    terms: Vec<RawCochain>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAutomorphism {
    #[serde(default)]
    order: Option<usize>,
    terms: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    #[serde(default)]
    order: Option<usize>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    guardrails: Option<RawGuardrails>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGuardrails {
    max_algebra_dim: Option<usize>,
    max_module_dim: Option<usize>,
    max_order: Option<usize>,
    max_degree: Option<usize>,
    max_matrix_entries: Option<usize>,
}

/// Command-line settings that take precedence over the document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub field: Option<Field>,
    pub order: Option<usize>,
    pub degree: Option<usize>,
    pub max_algebra_dim: Option<usize>,
    pub max_module_dim: Option<usize>,
    pub max_order: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_matrix_entries: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct Options {
    pub order: Option<usize>,
    pub degree: Option<usize>,
    pub guardrails: Guardrails,
}


/// A parsed, shape-checked problem document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemDocument {
    pub algebra: AlgebraData,
    pub module_dim: usize,
    pub action: Vec<Matrix>,
    pub cochain: Option<Cochain>,
    /// Terms `ξ_1, …, ξ_m` of a deformation.
    pub deformation: Option<Vec<Cochain>>,
    pub second_deformation: Option<Vec<Cochain>>,
    /// Terms `φ_1, …, φ_m` of a formal automorphism.
    pub automorphism: Option<Vec<Matrix>>,
    pub options: Options,
}

/// Parses a problem document with no command-line overrides.
pub fn parse(text: &str) -> Result<ProblemDocument, DocumentError> {
    parse_with(text, &Overrides::default())
}

pub fn parse_with(text: &str, overrides: &Overrides) -> Result<ProblemDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text)?;

    let field = match overrides.field {
        Some(f) => f,
        None => match (raw.field.as_str(), raw.prime) {
            ("Q", None) => Field::Rational,
            ("Q", Some(_)) => return Err(DocumentError::at("prime", "only allowed with field Fp")),
            ("Fp", Some(p)) => Field::prime(p).map_err(|e| DocumentError::at("prime", e))?,
            ("Fp", None) => return Err(DocumentError::at("prime", "field Fp needs a prime")),
            (other, _) => {
                return Err(DocumentError::at(
                    "field",
                    format!("unknown field {other:?}, expected \"Q\" or \"Fp\""),
                ))
            }
        },
    };

    let options = resolve_options(&raw.options, overrides);
    let g = &options.guardrails;
    let dr = raw.algebra.structure.len();
    let dm = raw.module.dim;
    if dr > g.max_algebra_dim {
        return Err(DocumentError::at(
            "algebra.structure",
            format!("algebra dimension {dr} exceeds guardrail {}", g.max_algebra_dim),
        ));
    }
    if dm > g.max_module_dim {
        return Err(DocumentError::at(
            "module.dim",
            format!("module dimension {dm} exceeds guardrail {}", g.max_module_dim),
        ));
    }
    if let Some(n) = options.order {
        if n > g.max_order {
            return Err(DocumentError::at(
                "options.order",
                format!("truncation order {n} exceeds guardrail {}", g.max_order),
            ));
        }
    }
    if let Some(n) = options.degree {
        if n > g.max_degree {
            let cols = dr.saturating_pow(n as u32).saturating_mul(dm * dm);
            return Err(DocumentError::at(
                "options.degree",
                format!(
                    "degree {n} exceeds guardrail {} (d_{n} would be {}x{cols})",
                    g.max_degree,
                    cols.saturating_mul(dr)
                ),
            ));
        }
    }

    let algebra = decode_algebra(field, &raw.algebra)?;
    if raw.module.action.len() != dr {
        return Err(DocumentError::at(
            "module.action",
            format!("has {} matrices, algebra has dimension {dr}", raw.module.action.len()),
        ));
    }
    let action = raw
        .module
        .action
        .iter()
        .enumerate()
        .map(|(i, m)| encode::decode_matrix(field, m, dm, &format!("module.action[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;

    let cochain = raw
        .cochain
        .as_ref()
        .map(|c| encode::decode_cochain(field, dr, dm, c, "cochain"))
        .transpose()?;
    let deformation = raw
        .deformation
        .as_ref()
        .map(|d| decode_deformation(field, dr, dm, d, "deformation"))
        .transpose()?;
    let second_deformation = raw
        .second_deformation
        .as_ref()
        .map(|d| decode_deformation(field, dr, dm, d, "second_deformation"))
        .transpose()?;
    let automorphism = raw
        .automorphism
        .as_ref()
        .map(|a| decode_automorphism(field, dm, a))
        .transpose()?;
    for (name, d) in [("deformation", &deformation), ("second_deformation", &second_deformation)] {
        if let Some(d) = d {
            if d.len() > g.max_order {
                return Err(DocumentError::at(
                    name,
                    format!("order {} exceeds guardrail {}", d.len(), g.max_order),
                ));
            }
        }
    }

    Ok(ProblemDocument {
        algebra,
        module_dim: dm,
        action,
        cochain,
        deformation,
        second_deformation,
        automorphism,
        options,
    })
}

fn resolve_options(raw: &RawOptions, o: &Overrides) -> Options {
    let mut g = Guardrails::default();
    if let Some(r) = &raw.guardrails {
        g.max_algebra_dim = r.max_algebra_dim.unwrap_or(g.max_algebra_dim);
        g.max_module_dim = r.max_module_dim.unwrap_or(g.max_module_dim);
        g.max_order = r.max_order.unwrap_or(g.max_order);
        g.max_degree = r.max_degree.unwrap_or(g.max_degree);
        g.max_matrix_entries = r.max_matrix_entries.unwrap_or(g.max_matrix_entries);
    }
    g.max_algebra_dim = o.max_algebra_dim.unwrap_or(g.max_algebra_dim);
    g.max_module_dim = o.max_module_dim.unwrap_or(g.max_module_dim);
    g.max_order = o.max_order.unwrap_or(g.max_order);
    g.max_degree = o.max_degree.unwrap_or(g.max_degree);
    g.max_matrix_entries = o.max_matrix_entries.unwrap_or(g.max_matrix_entries);
    Options {
        order: o.order.or(raw.order),
        degree: o.degree.or(raw.degree),
        guardrails: g,
    }
}

fn decode_algebra(field: Field, raw: &RawAlgebra) -> Result<AlgebraData, DocumentError> {
    let dim = raw.structure.len();
    let mut structure = Vec::with_capacity(dim);
    for (i, row) in raw.structure.iter().enumerate() {
        if row.len() != dim {
            return Err(DocumentError::at(
                format!("algebra.structure[{i}]"),
                format!("has length {}, expected {dim}", row.len()),
            ));
        }
        let mut parsed_row = Vec::with_capacity(dim);
        for (j, v) in row.iter().enumerate() {
            let path = format!("algebra.structure[{i}][{j}]");
            if v.len() != dim {
                return Err(DocumentError::at(path, format!("has length {}, expected {dim}", v.len())));
            }
            let coords = v
                .iter()
                .enumerate()
                .map(|(k, s)| encode::decode_scalar(field, s, &format!("{path}[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            parsed_row.push(coords);
        }
        structure.push(parsed_row);
    }
    if raw.unit.len() != dim {
        return Err(DocumentError::at(
            "algebra.unit",
            format!("has length {}, expected {dim}", raw.unit.len()),
        ));
    }
    let unit = raw
        .unit
        .iter()
        .enumerate()
        .map(|(k, s)| encode::decode_scalar(field, s, &format!("algebra.unit[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if !raw.basis.is_empty() && raw.basis.len() != dim {
        return Err(DocumentError::at(
            "algebra.basis",
            format!("has {} labels, expected {dim}", raw.basis.len()),
        ));
    }
    Ok(AlgebraData {
        field,
        labels: raw.basis.clone(),
        structure,
        unit,
    })
}

fn decode_deformation(
    field: Field,
    dr: usize,
    dm: usize,
    raw: &RawDeformation,
    path: &str,
) -> Result<Vec<Cochain>, DocumentError> {
    if let Some(order) = raw.order {
        if order != raw.terms.len() {
            return Err(DocumentError::at(
                format!("{path}.order"),
                format!("is {order} but {} terms are given", raw.terms.len()),
            ));
        }
    }
    raw.terms
        .iter()
        .enumerate()
        .map(|(n, t)| {
            let p = format!("{path}.terms[{n}]");
            if t.degree != 1 {
                return Err(DocumentError::at(format!("{p}.degree"), "deformation terms have degree 1"));
            }
            encode::decode_cochain(field, dr, dm, t, &p)
        })
        .collect()
}

fn decode_automorphism(field: Field, dm: usize, raw: &RawAutomorphism) -> Result<Vec<Matrix>, DocumentError> {
    if let Some(order) = raw.order {
        if order != raw.terms.len() {
            return Err(DocumentError::at(
                "automorphism.order",
                format!("is {order} but {} terms are given", raw.terms.len()),
            ));
        }
    }
    raw.terms
        .iter()
        .enumerate()
        .map(|(n, m)| encode::decode_matrix(field, m, dm, &format!("automorphism.terms[{n}]")))
        .collect()
}

impl ProblemDocument {
    /// A document holding just `module` and its algebra.
    pub fn from_module(module: &Module) -> Self {
        let algebra = module.algebra();
        ProblemDocument {
            algebra: AlgebraData {
                field: algebra.field(),
                labels: algebra.labels().to_vec(),
                structure: algebra.structure(),
                unit: algebra.unit().to_vec(),
            },
            module_dim: module.dim(),
            action: module.actions().to_vec(),
            cochain: None,
            deformation: None,
            second_deformation: None,
            automorphism: None,
            options: Options::default(),
        }
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    /// Axiom reports for the algebra and, when the algebra is valid, the module.
    pub fn validation(&self) -> Result<(ValidationReport, Option<ValidationReport>), DocumentError> {
        let algebra_report = validate_algebra(&self.algebra)?;
        if !algebra_report.is_valid() {
            return Ok((algebra_report, None));
        }
        let algebra = Algebra::new(self.algebra.clone())?;
        let module_report = validate_module(&algebra, self.module_dim, &self.action)?;
        Ok((algebra_report, Some(module_report)))
    }

    /// The validated module, or an error naming the first failed axiom.
    pub fn module(&self) -> Result<Arc<Module>, DocumentError> {
        let (a, m) = self.validation()?;
        if let Some(v) = a.first() {
            return Err(DocumentError::at("algebra", format!("{v} fails")));
        }
        if let Some(v) = m.as_ref().and_then(|m| m.first()) {
            return Err(DocumentError::at("module", format!("{v} fails")));
        }
        let algebra = Arc::new(Algebra::new(self.algebra.clone())?);
        Ok(Arc::new(Module::new(algebra, self.module_dim, self.action.clone())?))
    }

    pub fn deformation_on(&self, module: &Arc<Module>) -> Result<Option<ApproximateDeformation>, DocumentError> {
        self.deformation
            .as_ref()
            .map(|t| ApproximateDeformation::new(module.clone(), t.clone()).map_err(Into::into))
            .transpose()
    }

    pub fn second_deformation_on(
        &self,
        module: &Arc<Module>,
    ) -> Result<Option<ApproximateDeformation>, DocumentError> {
        self.second_deformation
            .as_ref()
            .map(|t| ApproximateDeformation::new(module.clone(), t.clone()).map_err(Into::into))
            .transpose()
    }

    pub fn automorphism_on(&self, module: &Arc<Module>) -> Result<Option<FormalAutomorphism>, DocumentError> {
        self.automorphism
            .as_ref()
            .map(|t| FormalAutomorphism::new(module.clone(), t.clone()).map_err(Into::into))
            .transpose()
    }

    /// Canonical JSON form; [`parse`] reads it back to an equal document.
    pub fn to_value(&self) -> Value {
        let field = self.field();
        let mut doc = serde_json::Map::new();
        match field {
            Field::Rational => {
                doc.insert("field".into(), json!("Q"));
            }
            Field::Prime(p) => {
                doc.insert("field".into(), json!("Fp"));
                doc.insert("prime".into(), json!(p));
            }
        }
        let structure: Vec<Vec<Value>> = self
            .algebra
            .structure
            .iter()
            .map(|row| row.iter().map(|v| encode_vector(v)).collect())
            .collect();
        doc.insert(
            "algebra".into(),
            json!({
                "basis": self.algebra.labels,
                "structure": structure,
                "unit": encode_vector(&self.algebra.unit),
            }),
        );
        doc.insert(
            "module".into(),
            json!({
                "dim": self.module_dim,
                "action": self.action.iter().map(encode_matrix).collect::<Vec<_>>(),
            }),
        );
        if let Some(c) = &self.cochain {
            doc.insert("cochain".into(), encode_cochain(c));
        }
        let terms = |t: &Vec<Cochain>| {
            json!({ "order": t.len(), "terms": t.iter().map(encode_cochain).collect::<Vec<_>>() })
        };
        if let Some(d) = &self.deformation {
            doc.insert("deformation".into(), terms(d));
        }
        if let Some(d) = &self.second_deformation {
            doc.insert("second_deformation".into(), terms(d));
        }
        if let Some(a) = &self.automorphism {
            doc.insert(
                "automorphism".into(),
                json!({ "order": a.len(), "terms": a.iter().map(encode_matrix).collect::<Vec<_>>() }),
            );
        }
        let mut options = serde_json::Map::new();
        if let Some(n) = self.options.order {
            options.insert("order".into(), json!(n));
        }
        if let Some(n) = self.options.degree {
            options.insert("degree".into(), json!(n));
        }
        let g = &self.options.guardrails;
        if *g != Guardrails::default() {
            options.insert(
                "guardrails".into(),
                json!({
                    "max_algebra_dim": g.max_algebra_dim,
                    "max_module_dim": g.max_module_dim,
                    "max_order": g.max_order,
                    "max_degree": g.max_degree,
                    "max_matrix_entries": g.max_matrix_entries,
                }),
            );
        }
        if !options.is_empty() {
            doc.insert("options".into(), Value::Object(options));
        }
        Value::Object(doc)
    }

    /// Pretty-printed canonical text.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

/// The built-in fixture documents keyed `"A"`, `"B"`, `"C"`.
///
/// Each carries enough payload for every command to run.
pub fn fixture_documents() -> Value {
    use crate::fixtures::*;
    use crate::hochschild::HochschildComplex;
    let q = Field::Rational;
    let unit = |rows: &[&[i64]]| Matrix::from_i64(q, rows);
    let d0 = |module: &Arc<Module>, phi: Matrix| {
        let c = HochschildComplex::new(module.clone()).expect("fixtures fit the guardrails");
        c.differential(&Cochain::zero(module, 0).with(vec![], phi))
            .expect("shapes match")
    };

    let a = fixture_a(q);
    let mut doc_a = ProblemDocument::from_module(&a);
    doc_a.cochain = Some(seed_a(&a));
    doc_a.deformation = Some(vec![seed_a(&a)]);
    doc_a.second_deformation = Some(vec![Cochain::zero(&a, 1)]);
    doc_a.automorphism = Some(vec![unit(&[&[2]])]);
    doc_a.options.order = Some(5);

    let b = fixture_b(q);
    let mut doc_b = ProblemDocument::from_module(&b);
    let e12 = unit(&[&[0, 1], &[0, 0]]);
    let e21 = unit(&[&[0, 0], &[1, 0]]);
    doc_b.cochain = Some(d0(&b, e12.clone()));
    doc_b.deformation = Some(vec![d0(&b, e12.clone())]);
    doc_b.second_deformation = Some(vec![d0(&b, e21)]);
    doc_b.automorphism = Some(vec![e12]);
    doc_b.options.order = Some(4);

    let c = fixture_c(q);
    let mut doc_c = ProblemDocument::from_module(&c);
    doc_c.cochain = Some(seed_c(&c));
    doc_c.deformation = Some(vec![seed_c(&c)]);
    doc_c.second_deformation = Some(vec![seed_c(&c).add(&d0(&c, unit(&[&[1, 0], &[0, 0]])))]);
    doc_c.automorphism = Some(vec![unit(&[&[0, 1], &[0, 0]])]);
    doc_c.options.order = Some(10);

    json!({ "A": doc_a.to_value(), "B": doc_b.to_value(), "C": doc_c.to_value() })
}

/// [`fixture_documents`] as canonical text.
pub fn fixture_text() -> String {
    let mut s = serde_json::to_string_pretty(&fixture_documents()).expect("values serialize");
    s.push('\n');
    s
}
