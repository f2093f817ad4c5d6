//! The JSON problem-spec format: a group, a bicharacter, a color Lie algebra by
//! structure constants, named modules, and default options.

use std::collections::BTreeMap;

use colorhom::color_lie::BracketEntry;
use colorhom::enveloping::Enveloping;
use colorhom::gmodules::{GradedBimodule, GradedModule};
use colorhom::grading::DegreeWindow;
use colorhom::scalars::{format_scalar, parse_scalar};
use colorhom::{
    BasisVector, Bicharacter, ColorLieAlgebra, CyclotomicField, ExactMatrix, GroupElement,
    GroupSpec, LieElement,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::locate::{locate, JsonPath};

/// Largest U(L) accepted for the `regular` builtin and the Hochschild side.
pub const ENVELOPING_CAP: usize = 256;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: at {path}: {message}")]
    Semantic {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupDoc,
    pub bicharacter: BicharacterDoc,
    pub lie: LieDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
    #[serde(default, skip_serializing_if = "OptionsDoc::is_empty")]
    pub options: OptionsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    /// Cyclic factor orders; 0 stands for a free factor Z.
    pub orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicharacterDoc {
    pub root_order: u32,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub name: String,
    pub degree: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub left: String,
    pub right: String,
    /// Basis name to scalar literal.
    pub value: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    pub basis: Vec<BasisDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketDoc>,
}

/// Matrices keyed by generator name; rows of scalar literals. Missing generators act by zero.
pub type ActionDoc = BTreeMap<String, Vec<Vec<String>>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<Builtin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<ActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<ActionDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    /// 𝕂 in degree e, both actions zero.
    Trivial,
    /// U(L) acting on itself on both sides.
    Regular,
    /// L acting on itself by the bracket (left module).
    Adjoint,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_window: Option<WindowDoc>,
}

impl OptionsDoc {
    fn is_empty(&self) -> bool {
        self == &OptionsDoc::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindowDoc {
    /// Only `"all"` is accepted.
    Named(String),
    List(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleData {
    Left(GradedModule),
    Bimodule(GradedBimodule),
}

impl ModuleData {
    pub fn left(&self) -> &GradedModule {
        match self {
            ModuleData::Left(m) => m,
            ModuleData::Bimodule(b) => b.as_left(),
        }
    }

    pub fn bimodule(&self) -> Option<&GradedBimodule> {
        match self {
            ModuleData::Left(_) => None,
            ModuleData::Bimodule(b) => Some(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub builtin: Option<Builtin>,
    pub data: ModuleData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecOptions {
    pub n_max: usize,
    pub p_max: usize,
    pub word_len: usize,
    pub degree_window: DegreeWindow,
}

impl Default for SpecOptions {
    fn default() -> Self {
        SpecOptions {
            n_max: 3,
            p_max: 3,
            word_len: 3,
            degree_window: DegreeWindow::All,
        }
    }
}

#[derive(Clone)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub lie: ColorLieAlgebra,
    pub modules: Vec<NamedModule>,
    pub options: SpecOptions,
    /// Options exactly as written, kept for round-tripping.
    raw_options: OptionsDoc,
}

impl PartialEq for ProblemSpec {
    fn eq(&self, other: &Self) -> bool {
        self.to_document() == other.to_document()
            && self.modules == other.modules
            && self.options == other.options
    }
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("dim", &self.lie.dim())
            .field(
                "modules",
                &self.modules.iter().map(|m| &m.name).collect::<Vec<_>>(),
            )
            .finish()
    }
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, path: &JsonPath, message: impl Into<String>) -> SpecError {
        let (line, column) = locate(self.text, path).unwrap_or((1, 1));
        SpecError::Semantic {
            path: path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }
}

/// Strict parse: unknown keys, malformed scalars and undefined names are errors
/// carrying the line and column of the offending value.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e
            .to_string()
            .split(" at line")
            .next()
            .unwrap_or_default()
            .to_string(),
    })?;
    build(&doc, &Ctx { text })
}

fn build(doc: &SpecDocument, cx: &Ctx<'_>) -> Result<ProblemSpec, SpecError> {
    let root = JsonPath::root();
    let group = GroupSpec::new(doc.group.orders.clone());
    let chi = Bicharacter::new(
        group.clone(),
        doc.bicharacter.root_order,
        doc.bicharacter.exponents.clone(),
    )
    .map_err(|e| cx.err(&root.key("bicharacter"), e.to_string()))?;
    let field = chi.field();
    let lie_path = root.key("lie");
    let basis = basis_vectors(&group, &doc.lie.basis, &lie_path.key("basis"), cx)?;
    let names: BTreeMap<&str, usize> = doc
        .lie
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.name.as_str(), i))
        .collect();
    if names.len() != basis.len() {
        return Err(cx.err(&lie_path.key("basis"), "duplicate basis name"));
    }
    let lookup = |name: &str, path: &JsonPath| {
        names
            .get(name)
            .copied()
            .ok_or_else(|| cx.err(path, format!("undefined basis name {name:?}")))
    };
    let mut entries = Vec::new();
    for (i, b) in doc.lie.brackets.iter().enumerate() {
        let p = lie_path.key("brackets").index(i);
        let left = lookup(&b.left, &p.key("left"))?;
        let right = lookup(&b.right, &p.key("right"))?;
        let mut value = LieElement::zero(field);
        for (name, lit) in &b.value {
            let vp = p.key("value").key(name);
            let k = lookup(name, &vp)?;
            let c = parse_scalar(field, lit).map_err(|e| cx.err(&vp, e.to_string()))?;
            value.add_term(k, c);
        }
        entries.push(BracketEntry { left, right, value });
    }
    let lie = ColorLieAlgebra::from_brackets(chi, basis, entries)
        .map_err(|e| cx.err(&lie_path, e.to_string()))?;

    let mut modules = Vec::new();
    for (i, m) in doc.modules.iter().enumerate() {
        let p = root.key("modules").index(i);
        if modules.iter().any(|x: &NamedModule| x.name == m.name) {
            return Err(cx.err(
                &p.key("name"),
                format!("duplicate module name {:?}", m.name),
            ));
        }
        let data = module_data(&lie, m, &names, &p, cx)?;
        modules.push(NamedModule {
            name: m.name.clone(),
            builtin: m.builtin,
            data,
        });
    }

    let op = root.key("options");
    let mut options = SpecOptions::default();
    let o = &doc.options;
    options.n_max = o.n_max.unwrap_or(options.n_max);
    options.p_max = o.p_max.unwrap_or(options.p_max);
    options.word_len = o.word_len.unwrap_or(options.word_len);
    if let Some(w) = &o.degree_window {
        options.degree_window =
            window(&group, w).map_err(|m| cx.err(&op.key("degree_window"), m))?;
    }
    Ok(ProblemSpec {
        name: doc.name.clone(),
        lie,
        modules,
        options,
        raw_options: doc.options.clone(),
    })
}

/// Resolves a `degree_window` value against the group.
pub fn window(group: &GroupSpec, w: &WindowDoc) -> Result<DegreeWindow, String> {
    match w {
        WindowDoc::Named(s) if s == "all" => Ok(DegreeWindow::All),
        WindowDoc::Named(s) => Err(format!(
            "unknown degree window {s:?}; expected \"all\" or a list of degrees"
        )),
        WindowDoc::List(list) => list
            .iter()
            .map(|e| group.element(e).map_err(|err| err.to_string()))
            .collect::<Result<_, _>>()
            .map(DegreeWindow::List),
    }
}

fn basis_vectors(
    group: &GroupSpec,
    docs: &[BasisDoc],
    path: &JsonPath,
    cx: &Ctx<'_>,
) -> Result<Vec<BasisVector>, SpecError> {
    docs.iter()
        .enumerate()
        .map(|(i, b)| {
            let degree = group
                .element(&b.degree)
                .map_err(|e| cx.err(&path.index(i).key("degree"), e.to_string()))?;
            Ok(BasisVector {
                name: b.name.clone(),
                degree,
            })
        })
        .collect()
}

fn module_data(
    lie: &ColorLieAlgebra,
    m: &ModuleDoc,
    names: &BTreeMap<&str, usize>,
    p: &JsonPath,
    cx: &Ctx<'_>,
) -> Result<ModuleData, SpecError> {
    if let Some(b) = m.builtin {
        if m.basis.is_some() || m.left.is_some() || m.right.is_some() {
            return Err(cx.err(
                &p.key("builtin"),
                "a builtin module takes no basis or action matrices",
            ));
        }
        return Ok(match b {
            Builtin::Trivial => ModuleData::Bimodule(GradedBimodule::trivial(lie)),
            Builtin::Adjoint => ModuleData::Left(GradedModule::lie_adjoint(lie)),
            Builtin::Regular => ModuleData::Bimodule(
                GradedBimodule::regular(&Enveloping::new(lie.clone()), ENVELOPING_CAP)
                    .map_err(|e| cx.err(&p.key("builtin"), e.to_string()))?,
            ),
        });
    }
    let (Some(basis_doc), Some(left)) = (&m.basis, &m.left) else {
        return Err(cx.err(
            p,
            "a module needs either `builtin` or both `basis` and `left`",
        ));
    };
    let field = lie.field();
    let basis = basis_vectors(lie.group(), basis_doc, &p.key("basis"), cx)?;
    let dim = basis.len();
    let actions = |doc: &ActionDoc, side: &str| -> Result<Vec<ExactMatrix>, SpecError> {
        let sp = p.key(side);
        let mut mats = vec![ExactMatrix::zeros(field, dim, dim); lie.dim()];
        for (name, rows) in doc {
            let gp = sp.key(name);
            let Some(&x) = names.get(name.as_str()) else {
                return Err(cx.err(&gp, format!("undefined basis name {name:?}")));
            };
            if rows.len() != dim {
                return Err(cx.err(&gp, format!("expected {dim} rows, found {}", rows.len())));
            }
            for (r, row) in rows.iter().enumerate() {
                if row.len() != dim {
                    return Err(cx.err(
                        &gp.index(r),
                        format!("expected {dim} entries, found {}", row.len()),
                    ));
                }
                for (c, lit) in row.iter().enumerate() {
                    let v = parse_scalar(field, lit)
                        .map_err(|e| cx.err(&gp.index(r).index(c), e.to_string()))?;
                    mats[x].set(r, c, v);
                }
            }
        }
        Ok(mats)
    };
    let left_mats = actions(left, "left")?;
    let module =
        GradedModule::new(field, basis, left_mats).map_err(|e| cx.err(p, e.to_string()))?;
    Ok(match &m.right {
        None => ModuleData::Left(module),
        Some(right) => {
            let right_mats = actions(right, "right")?;
            ModuleData::Bimodule(
                GradedBimodule::new(module, right_mats).map_err(|e| cx.err(p, e.to_string()))?,
            )
        }
    })
}

fn basis_docs(basis: &[BasisVector]) -> Vec<BasisDoc> {
    basis
        .iter()
        .map(|b| BasisDoc {
            name: b.name.clone(),
            degree: b.degree.exponents.clone(),
        })
        .collect()
}

fn action_doc(lie: &ColorLieAlgebra, mats: &[ExactMatrix]) -> ActionDoc {
    mats.iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(x, m)| {
            let rows = (0..m.rows())
                .map(|r| m.row(r).iter().map(format_scalar).collect())
                .collect();
            (lie.name(x).to_string(), rows)
        })
        .collect()
}

impl ProblemSpec {
    pub fn field(&self) -> &'static CyclotomicField {
        self.lie.field()
    }

    pub fn module(&self, name: &str) -> Option<&NamedModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    /// The document this spec serializes to. Brackets implied by ε-antisymmetry are omitted.
    pub fn to_document(&self) -> SpecDocument {
        let lie = &self.lie;
        let chi = lie.chi();
        let named = |v: &LieElement| -> BTreeMap<String, String> {
            v.iter()
                .map(|(&k, c)| (lie.name(k).to_string(), format_scalar(c)))
                .collect()
        };
        let mut brackets = Vec::new();
        let mut emit = |i: usize, j: usize| {
            brackets.push(BracketDoc {
                left: lie.name(i).to_string(),
                right: lie.name(j).to_string(),
                value: named(lie.bracket_basis(i, j)),
            })
        };
        for i in 0..lie.dim() {
            if !lie.bracket_basis(i, i).is_zero() {
                emit(i, i);
            }
            for j in i + 1..lie.dim() {
                let (a, b) = (lie.bracket_basis(i, j), lie.bracket_basis(j, i));
                let completed = a.scaled(&lie.eps(j, i)).negated();
                if &completed == b {
                    if !a.is_zero() {
                        emit(i, j);
                    }
                } else {
                    // not ε-antisymmetric: both orders are kept as written
                    emit(i, j);
                    emit(j, i);
                }
            }
        }
        let modules = self
            .modules
            .iter()
            .map(|m| match (m.builtin, &m.data) {
                (Some(b), _) => ModuleDoc {
                    name: m.name.clone(),
                    builtin: Some(b),
                    basis: None,
                    left: None,
                    right: None,
                },
                (None, data) => ModuleDoc {
                    name: m.name.clone(),
                    builtin: None,
                    basis: Some(basis_docs(data.left().basis())),
                    left: Some(action_doc(lie, data.left().actions())),
                    right: data.bimodule().map(|b| action_doc(lie, b.right_actions())),
                },
            })
            .collect();
        SpecDocument {
            name: self.name.clone(),
            group: GroupDoc {
                orders: chi.group.orders.clone(),
            },
            bicharacter: BicharacterDoc {
                root_order: chi.root_order,
                exponents: chi.exponents.clone(),
            },
            lie: LieDoc {
                basis: basis_docs(lie.basis()),
                brackets,
            },
            modules,
            options: self.raw_options.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("spec documents serialize")
    }
}

/// Formats a group element as it appears in file names: `(1,0)` becomes `1_0`.
pub fn degree_tag(g: &GroupElement) -> String {
    let parts: Vec<String> = g.exponents.iter().map(i64::to_string).collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join("_")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = r#"{
  "group": {"orders": [2]},
  "bicharacter": {"root_order": 2, "exponents": [[1]]},
  "lie": {
    "basis": [
      {"name": "x", "degree": [1]},
      {"name": "y", "degree": [1]},
      {"name": "z", "degree": [0]}
    ],
    "brackets": [{"left": "x", "right": "y", "value": {"z": "1"}}]
  },
  "modules": [{"name": "k", "builtin": "trivial"}]
}"#;

    #[test]
    fn parses_and_round_trips() {
        let spec = parse_spec(HEIS).unwrap();
        assert_eq!(spec.lie.dim(), 3);
        assert_eq!(
            spec.lie
                .format_element(&spec.lie.bracket_basis(1, 0).clone()),
            "z"
        );
        let again = parse_spec(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        assert_eq!(spec.to_json(), again.to_json());
    }

    #[test]
    fn undefined_name_is_located() {
        let text = HEIS.replace("\"right\": \"y\"", "\"right\": \"w\"");
        let err = parse_spec(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"w\""), "{msg}");
        assert!(msg.starts_with("10:41:"), "{msg}");
        assert!(msg.contains("lie.brackets[0].right"), "{msg}");
    }

    #[test]
    fn unknown_key_and_bad_scalar() {
        let text = HEIS.replace("\"orders\"", "\"order\"");
        assert!(matches!(
            parse_spec(&text),
            Err(SpecError::Syntax { line: 2, .. })
        ));
        let text = HEIS.replace("{\"z\": \"1\"}", "{\"z\": \"1//2\"}");
        let err = parse_spec(&text).unwrap_err().to_string();
        assert!(err.contains("lie.brackets[0].value.z"), "{err}");
    }

    #[test]
    fn empty_problem() {
        let text = r#"{"group": {"orders": []}, "bicharacter": {"root_order": 1, "exponents": []}, "lie": {"basis": []}}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.lie.dim(), 0);
        assert_eq!(parse_spec(&spec.to_json()).unwrap(), spec);
    }
}
