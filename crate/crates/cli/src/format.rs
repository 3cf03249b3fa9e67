//! The instance file: named declarations with every table written out.
//!
//! Elements, objects, morphisms and cells are [`Label`]s (JSON strings,
//! integers or arrays). Tables are lists of explicit entries keyed by labels,
//! so a file never depends on the internal order of anything.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use tambara_core::Label;

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub sets: IndexMap<String, Vec<Label>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub functions: IndexMap<String, FunctionDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub categories: IndexMap<String, CategoryDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub functors: IndexMap<String, FunctorDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub copresheaves: IndexMap<String, CopresheafDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub profunctors: IndexMap<String, ProfunctorDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub bicategories: IndexMap<String, BicategoryDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub actions: IndexMap<String, ActionDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub families: IndexMap<String, FamilyDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub modules: IndexMap<String, ModuleDecl>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub optics: IndexMap<String, OpticDecl>,
}

/// `map` lists `[x, f(x)]` for every `x` in the domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDecl {
    pub dom: String,
    pub cod: String,
    pub map: Vec<(Label, Label)>,
}

/// Morphisms as `[name, src, tgt]`, identities as `[object, morphism]`,
/// composites as `[f, g, f;g]` in diagrammatic order, one per composable pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDecl {
    pub objects: Vec<Label>,
    pub morphisms: Vec<(Label, Label, Label)>,
    pub identities: Vec<(Label, Label)>,
    pub compose: Vec<(Label, Label, Label)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDecl {
    pub dom: String,
    pub cod: String,
    pub objects: Vec<(Label, Label)>,
    pub morphisms: Vec<(Label, Label)>,
}

/// `sets` as `[object, elements]`, `actions` as `[morphism, x, f·x]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopresheafDecl {
    pub category: String,
    pub sets: Vec<(Label, Vec<Label>)>,
    pub actions: Vec<(Label, Label, Label)>,
}

/// `P: left^op × right -> Set`. `sets` as `[c, d, elements]`;
/// `lact` as `[f, d, x, y]` with `f: c -> c'`, `x ∈ P(c', d)`, `y ∈ P(c, d)`;
/// `ract` as `[c, g, x, y]` with `g: d -> d'`, `x ∈ P(c, d)`, `y ∈ P(c, d')`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfunctorDecl {
    pub left: String,
    pub right: String,
    pub sets: Vec<(Label, Label, Vec<Label>)>,
    pub lact: Vec<(Label, Label, Label, Label)>,
    pub ract: Vec<(Label, Label, Label, Label)>,
}

/// A strict bicategory. `homs` names a category per `[o, o']`; 1-cells are its
/// objects and 2-cells its morphisms. Composites are diagrammatic and keyed
/// by `[o, o', o'', first, second, composite]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicategoryDecl {
    pub objects: Vec<Label>,
    pub homs: Vec<(Label, Label, String)>,
    pub units: Vec<(Label, Label)>,
    pub compose1: Vec<(Label, Label, Label, Label, Label, Label)>,
    pub compose2: Vec<(Label, Label, Label, Label, Label, Label)>,
}

/// A strict action. `fibres` as `[o, category]`; `cells` as
/// `[o, o', m, functor]`; `twos` as `[o, o', α, [[x, component], ...]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDecl {
    pub base: String,
    pub fibres: Vec<(Label, String)>,
    pub cells: Vec<(Label, Label, Label, String)>,
    pub twos: Vec<(Label, Label, Label, Vec<(Label, Label)>)>,
}

/// One profunctor per base object: `profunctors` as `[o, profunctor]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDecl {
    pub x: String,
    pub y: String,
    pub profunctors: Vec<(Label, String)>,
}

/// Strength entries `[o, o', m, x, y, e, st_m(e)]`, one per element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub family: String,
    pub strengths: Vec<(Label, Label, Label, Label, Label, Label, Label)>,
}

/// An optic hom-set, either between objects `[o, a, b]` of an action pair or
/// as an explicit integrand `Fwd: K -> Set`, `Back: K^op -> Set`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum OpticDecl {
    Objects { x: String, y: String, inner: (Label, Label, Label), outer: (Label, Label, Label) },
    Integrand { category: String, forward: String, backward: String },
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_set() {
        let f = InstanceFile::parse(r#"{"sets": {"two": ["a", "b"]}}"#).unwrap();
        assert_eq!(f.sets["two"].len(), 2);
        assert_eq!(InstanceFile::parse(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn unknown_keys_are_rejected_with_a_position() {
        let err = InstanceFile::parse("{\n  \"sets\": {},\n  \"colour\": 1\n}").unwrap_err();
        match err {
            CliError::Syntax { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("colour"), "{message}");
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn labels_keep_their_shape() {
        let f = InstanceFile::parse(r#"{"sets": {"s": [0, "x", [1, "y"]]}}"#).unwrap();
        assert_eq!(f.sets["s"][2], Label::pair(Label::Int(1), Label::sym("y")));
    }
}
