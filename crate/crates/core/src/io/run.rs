use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::encode::{encode_automorphism, encode_cochain, encode_deformation, encode_matrix};
use super::{DocumentError, ProblemDocument};
use crate::deform::{
    check_deformation, conjugate, equivalent_one_step, extend_once, integrate, normalize,
    rigidity_check, Extension, Integration, ObstructionOutcome, RelationCheck, Rigidity,
};
use crate::hochschild::HochschildComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Validate,
    Cohomology,
    Cocycle,
    Coboundary,
    Obstruction,
    Extend,
    Integrate,
    Normalize,
    Conjugate,
    EquivStep,
    Rigidity,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Validate,
        Command::Cohomology,
        Command::Cocycle,
        Command::Coboundary,
        Command::Obstruction,
        Command::Extend,
        Command::Integrate,
        Command::Normalize,
        Command::Conjugate,
        Command::EquivStep,
        Command::Rigidity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::Cocycle => "cocycle",
            Command::Coboundary => "coboundary",
            Command::Obstruction => "obstruction",
            Command::Extend => "extend",
            Command::Integrate => "integrate",
            Command::Normalize => "normalize",
            Command::Conjugate => "conjugate",
            Command::EquivStep => "equiv-step",
            Command::Rigidity => "rigidity",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

/// A computed result: exit code 0 for an affirmative verdict, 1 for a
/// negative one. Input and resource errors never produce a `RunOutput`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub document: Value,
}

impl RunOutput {
    /// Canonical text: sorted keys, two-space indent, trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("values serialize");
        s.push('\n');
        s
    }
}

struct Report {
    fields: Map<String, Value>,
}

impl Report {
    fn put(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }
}

fn missing(what: &str, command: Command) -> DocumentError {
    DocumentError::at(what, format!("required by `{command}`"))
}

fn outcome_fields(r: &mut Report, o: &ObstructionOutcome) {
    r.put("obstruction", encode_cochain(&o.obstruction));
    r.put("class_is_zero", json!(o.class_is_zero));
    r.put("witness", o.witness.as_ref().map_or(Value::Null, encode_cochain));
}

/// Dispatches `command` on `doc`.
pub fn run(command: Command, doc: &ProblemDocument) -> Result<RunOutput, DocumentError> {
    let mut r = Report { fields: Map::new() };
    r.put("command", json!(command.name()));
    r.put("field", json!(doc.field().to_string()));
    let mut echo = Map::new();
    if let Some(n) = doc.options.order {
        echo.insert("order".into(), json!(n));
    }
    if let Some(n) = doc.options.degree {
        echo.insert("degree".into(), json!(n));
    }
    r.put("options", Value::Object(echo));

    let (verdict, affirmative) = dispatch(command, doc, &mut r)?;
    let exit_code = if affirmative { 0 } else { 1 };
    r.put("verdict", json!(verdict));
    r.put("exit_code", json!(exit_code));
    Ok(RunOutput {
        exit_code,
        document: Value::Object(r.fields),
    })
}

fn dispatch(
    command: Command,
    doc: &ProblemDocument,
    r: &mut Report,
) -> Result<(&'static str, bool), DocumentError> {
    if command == Command::Validate {
        return validate(doc, r);
    }
    let module = doc.module()?;
    let complex = HochschildComplex::with_guardrails(module.clone(), doc.options.guardrails)?;

    Ok(match command {
        Command::Validate => unreachable!(),
        Command::Cohomology => {
            let degrees: Vec<usize> = match doc.options.degree {
                Some(n) => vec![n],
                None => (0..=2.min(doc.options.guardrails.max_degree)).collect(),
            };
            let mut dims = Map::new();
            let mut groups = Vec::new();
            for n in degrees {
                let h = complex.cohomology(n)?;
                dims.insert(format!("H{n}"), json!(h.dim_cohomology));
                groups.push(json!({
                    "degree": n,
                    "dim_cocycles": h.dim_cocycles,
                    "dim_coboundaries": h.dim_coboundaries,
                    "dim_cohomology": h.dim_cohomology,
                    "representatives": h.representatives.iter().map(encode_cochain).collect::<Vec<_>>(),
                }));
            }
            r.put("dims", Value::Object(dims));
            r.put("cohomology", Value::Array(groups));
            ("computed", true)
        }
        Command::Cocycle => {
            let f = doc.cochain.as_ref().ok_or_else(|| missing("cochain", command))?;
            let df = complex.differential(f)?;
            r.put("differential", encode_cochain(&df));
            let first = df
                .entries()
                .next()
                .map(|(t, v)| json!({ "tuple": t, "value": encode_matrix(v) }));
            match first {
                None => ("cocycle", true),
                Some(entry) => {
                    r.put("first_nonzero", entry);
                    ("not_a_cocycle", false)
                }
            }
        }
        Command::Coboundary => {
            let f = doc.cochain.as_ref().ok_or_else(|| missing("cochain", command))?;
            let pre = complex.preimage(f)?;
            r.put("witness", pre.witness.as_ref().map_or(Value::Null, encode_cochain));
            r.put("kernel_dim", json!(pre.kernel.len()));
            if pre.witness.is_some() {
                ("coboundary", true)
            } else {
                r.put("is_cocycle", json!(complex.is_cocycle(f)?));
                ("absent", false)
            }
        }
        Command::Obstruction => {
            let d = doc.deformation_on(&module)?.ok_or_else(|| missing("deformation", command))?;
            let o = ObstructionOutcome::of(&complex, &d)?;
            r.put("obstruction_is_cocycle", json!(complex.is_cocycle(&o.obstruction)?));
            outcome_fields(r, &o);
            if o.class_is_zero {
                ("unobstructed", true)
            } else {
                ("obstructed", false)
            }
        }
        Command::Extend => {
            let d = doc.deformation_on(&module)?.ok_or_else(|| missing("deformation", command))?;
            match extend_once(&complex, &d)? {
                Extension::Extended { deformation, outcome } => {
                    outcome_fields(r, &outcome);
                    r.put("deformation", encode_deformation(&deformation));
                    ("extended", true)
                }
                Extension::Obstructed(outcome) => {
                    outcome_fields(r, &outcome);
                    ("obstructed", false)
                }
            }
        }
        Command::Integrate => {
            let sigma = doc.cochain.as_ref().ok_or_else(|| missing("cochain", command))?;
            let order = doc.options.order.ok_or_else(|| missing("options.order", command))?;
            match integrate(&complex, sigma, order)? {
                Integration::Integrated(d) => {
                    r.put("reached_order", json!(d.order()));
                    r.put("deformation", encode_deformation(&d));
                    ("integrated", true)
                }
                Integration::Obstructed { reached, outcome } => {
                    r.put("reached_order", json!(reached.order()));
                    r.put("deformation", encode_deformation(&reached));
                    outcome_fields(r, &outcome);
                    ("obstructed", false)
                }
            }
        }
        Command::Normalize => {
            let d = doc.deformation_on(&module)?.ok_or_else(|| missing("deformation", command))?;
            let n = normalize(&complex, &d)?;
            r.put("deformation", encode_deformation(&n.deformation));
            r.put("automorphism", encode_automorphism(&n.automorphism));
            r.put("leading_order", json!(n.leading));
            match n.leading {
                None => ("trivial", true),
                Some(_) => ("leading_class_nonzero", true),
            }
        }
        Command::Conjugate => {
            let d = doc.deformation_on(&module)?.ok_or_else(|| missing("deformation", command))?;
            let phi = doc.automorphism_on(&module)?.ok_or_else(|| missing("automorphism", command))?;
            if let RelationCheck::Violated { order, .. } = check_deformation(&d) {
                return Err(crate::Error::NotADeformation { order }.into());
            }
            let out = conjugate(&phi, &d)?;
            r.put("deformation", encode_deformation(&out));
            ("conjugated", true)
        }
        Command::EquivStep => {
            let d1 = doc.deformation_on(&module)?.ok_or_else(|| missing("deformation", command))?;
            let d2 = doc
                .second_deformation_on(&module)?
                .ok_or_else(|| missing("second_deformation", command))?;
            let found = equivalent_one_step(&complex, &d1, &d2)?;
            let top = d1.order();
            let difference = d2.terms()[top - 1].sub(&d1.terms()[top - 1]);
            r.put("difference", encode_cochain(&difference));
            r.put("automorphism", found.as_ref().map_or(Value::Null, encode_automorphism));
            if found.is_some() {
                ("equivalent", true)
            } else {
                ("absent", false)
            }
        }
        Command::Rigidity => {
            let h1 = complex.cohomology(1)?;
            r.put("dims", json!({ "H1": h1.dim_cohomology }));
            r.put(
                "representatives",
                Value::Array(h1.representatives.iter().map(encode_cochain).collect()),
            );
            match rigidity_check(&complex)? {
                Rigidity::RigidCertified => ("rigid_certified", true),
                Rigidity::Inconclusive { .. } => ("inconclusive", false),
            }
        }
    })
}

fn validate(doc: &ProblemDocument, r: &mut Report) -> Result<(&'static str, bool), DocumentError> {
    let (a, m) = doc.validation()?;
    let strings = |rep: &crate::algebra::ValidationReport| -> Value {
        rep.violations.iter().map(|v| json!(v.to_string())).collect()
    };
    r.put("algebra_violations", strings(&a));
    let mut ok = a.is_valid();
    match &m {
        Some(m) => {
            r.put("module_violations", strings(m));
            ok &= m.is_valid();
        }
        None => r.put("module_violations", Value::Null),
    }
    if ok {
        let module = doc.module()?;
        for (key, d) in [
            ("deformation", doc.deformation_on(&module)?),
            ("second_deformation", doc.second_deformation_on(&module)?),
        ] {
            let Some(d) = d else { continue };
            let check = match check_deformation(&d) {
                RelationCheck::Valid => Value::Null,
                RelationCheck::Violated { order, pair } => {
                    ok = false;
                    json!({ "order": order, "pair": [pair.0, pair.1] })
                }
            };
            r.put(&format!("{key}_violation"), check);
        }
    }
    Ok(if ok { ("valid", true) } else { ("invalid", false) })
}
