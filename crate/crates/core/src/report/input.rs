//! JSON family/map definition files.
//!
//! ```json
//! {
//!   "families": [{
//!     "name": "family-3",
//!     "kind": "enriques_horikawa",
//!     "parameters": ["A", "B", "C", "D"],
//!     "monomials": [{"i": 4, "j": 2, "coeff": {"param": "A", "scalar": "1,0,0,0"}}],
//!     "actions": [{"name": "alpha-scaling", "torus": "alpha",
//!                  "weights": {"A": 6, "B": 4, "C": 4, "D": 2},
//!                  "geometric": {"y": "alpha*y", "z": "alpha*z"}}]
//!   }],
//!   "maps": [{"name": "sigma3", "family": "family-3",
//!             "coords": {"w": "w*y^3/z^3", "y": "i*y", "z": "y^2/z"}}]
//! }
//! ```
//!
//! Monomial exponents `i`, `j` refer to `(y, z)` for Horikawa models and to
//! `(Y, Z)` for K3 covers. A coefficient without `param` is a constant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cover::{family, FamilyKind, Frame, SurfaceFamily};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::maps::BirMap;
use crate::moduli::ParameterAction;
use crate::poly::vars::Role;
use crate::poly::{parse_expr, MPoly, Monomial, Var, VarTable};

pub const INPUT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: String,
    pub kind: FamilyKind,
    pub parameters: Vec<String>,
    pub monomials: Vec<MonomialSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<ActionSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub i: u32,
    pub j: u32,
    pub coeff: CoeffSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    pub scalar: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub name: String,
    pub torus: String,
    pub weights: BTreeMap<String, i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric: Option<GeometricSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricSpec {
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Keys `w, y, z` (Horikawa model) or `W, Y, Z` (K3 cover).
    pub coords: BTreeMap<String, String>,
}

/// A family with the identifications declared for it.
#[derive(Clone, Debug, PartialEq)]
pub struct IngestedFamily {
    pub family: SurfaceFamily,
    pub actions: Vec<ParameterAction>,
}

/// A map with the name of the family it acts on, if declared.
#[derive(Clone, Debug, PartialEq)]
pub struct IngestedMap {
    pub name: String,
    pub family: Option<String>,
    pub map: BirMap,
}

/// Validated contents of an input file.
#[derive(Clone, Debug, PartialEq)]
pub struct Ingested {
    pub table: VarTable,
    pub families: Vec<IngestedFamily>,
    pub maps: Vec<IngestedMap>,
}

impl Ingested {
    /// Looks up a family declared in the file, falling back to the
    /// built-in `family-1`, `family-2`, `family-3`.
    pub fn find_family(&self, name: &str) -> Option<SurfaceFamily> {
        if let Some(f) = self.families.iter().find(|f| f.family.name() == name) {
            return Some(f.family.clone());
        }
        name.strip_prefix("family-")
            .and_then(|k| k.parse().ok())
            .and_then(|k| family(k).ok())
    }
}

fn byte_offset(src: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = src.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(src.len())
}

/// Parses JSON text into the raw file structure. Malformed JSON is a parse
/// error; well-formed JSON of the wrong shape is a schema violation.
pub fn parse_input(src: &str) -> Result<InputFile> {
    serde_json::from_str(src).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse {
            position: byte_offset(src, e.line(), e.column()),
            message: e.to_string(),
        },
    })
}

fn context(err: Error, what: &str) -> Error {
    match err {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("{what}: {message}"),
        },
        Error::Schema(m) => Error::Schema(format!("{what}: {m}")),
        Error::Invariant(m) => Error::Invariant(format!("{what}: {m}")),
        other => other,
    }
}

fn build_family(spec: &FamilySpec, table: &mut VarTable) -> Result<IngestedFamily> {
    let frame = spec.kind.frame();
    let params: Vec<Var> = spec
        .parameters
        .iter()
        .map(|p| table.intern(p, Role::Parameter))
        .collect::<Result<_>>()?;
    let mut branch = MPoly::zero();
    for m in &spec.monomials {
        let mut mono = Monomial::from_pairs([(frame.y, m.i), (frame.z, m.j)]);
        if let Some(p) = &m.coeff.param {
            let v = table
                .lookup(p)
                .filter(|v| params.contains(v))
                .ok_or_else(|| Error::Schema(format!("coefficient uses undeclared parameter `{p}`")))?;
            mono = &mono * &Monomial::var(v);
        }
        branch.add_term(mono, m.coeff.scalar.clone());
    }
    let family = SurfaceFamily::new(spec.name.clone(), spec.kind, branch, params)?;
    let actions = spec
        .actions
        .iter()
        .map(|a| build_action(a, table, frame))
        .collect::<Result<_>>()?;
    Ok(IngestedFamily { family, actions })
}

fn build_action(spec: &ActionSpec, table: &mut VarTable, frame: Frame) -> Result<ParameterAction> {
    let torus = table.intern(&spec.torus, Role::Parameter)?;
    let mut weights = BTreeMap::new();
    for (name, w) in &spec.weights {
        let v = table
            .lookup(name)
            .ok_or_else(|| Error::Schema(format!("action `{}` weights unknown parameter `{name}`", spec.name)))?;
        weights.insert(v, *w);
    }
    let geometric = match &spec.geometric {
        Some(g) => {
            let y = parse_expr(&g.y, table)?;
            let z = parse_expr(&g.z, table)?;
            for r in [&y, &z] {
                if r.contains_var(frame.cover) {
                    return Err(Error::Schema(format!(
                        "action `{}` must not involve the cover coordinate",
                        spec.name
                    )));
                }
            }
            Some((y, z))
        }
        None => None,
    };
    Ok(ParameterAction {
        name: spec.name.clone(),
        torus,
        weights,
        geometric,
    })
}

fn build_map(spec: &MapSpec, table: &VarTable) -> Result<IngestedMap> {
    let keys: Vec<&str> = spec.coords.keys().map(String::as_str).collect();
    let frame = match keys.as_slice() {
        ["w", "y", "z"] => Frame::ENRIQUES,
        ["W", "Y", "Z"] => Frame::K3,
        _ => {
            return Err(Error::Schema(format!(
                "map `{}` needs coordinates w, y, z or W, Y, Z",
                spec.name
            )))
        }
    };
    let get = |k: &str| {
        let key = match (frame == Frame::K3, k) {
            (true, k) => k.to_uppercase(),
            (false, k) => k.to_string(),
        };
        parse_expr(&spec.coords[&key], table).map_err(|e| context(e, &format!("map `{}` coordinate {key}", spec.name)))
    };
    let map = BirMap::new(frame, get("w")?, get("y")?, get("z")?)?.with_label(spec.name.clone());
    Ok(IngestedMap {
        name: spec.name.clone(),
        family: spec.family.clone(),
        map,
    })
}

/// Validates a raw input file into domain objects.
pub fn ingest_input(file: &InputFile) -> Result<Ingested> {
    let mut table = VarTable::standard();
    let mut families = Vec::new();
    for spec in &file.families {
        families.push(build_family(spec, &mut table).map_err(|e| context(e, &format!("family `{}`", spec.name)))?);
    }
    let mut maps = Vec::new();
    for spec in &file.maps {
        maps.push(build_map(spec, &table).map_err(|e| context(e, &format!("map `{}`", spec.name)))?);
    }
    let ingested = Ingested { table, families, maps };
    for m in &ingested.maps {
        if let Some(name) = &m.family {
            let fam = ingested
                .find_family(name)
                .ok_or_else(|| Error::Schema(format!("map `{}` refers to unknown family `{name}`", m.name)))?;
            if fam.frame() != m.map.frame() {
                return Err(Error::Schema(format!(
                    "map `{}` uses different coordinates than family `{name}`",
                    m.name
                )));
            }
        }
    }
    Ok(ingested)
}

/// Parses and validates JSON text.
pub fn ingest(src: &str) -> Result<Ingested> {
    ingest_input(&parse_input(src)?)
}

/// Inverse of [`build_family`].
pub fn family_spec(fam: &SurfaceFamily, actions: &[ParameterAction], table: &VarTable) -> FamilySpec {
    let frame = fam.frame();
    let mut monomials = Vec::new();
    for (m, c) in fam.branch().terms().rev() {
        let param = fam
            .parameters()
            .iter()
            .find(|p| m.exp(**p) > 0)
            .map(|p| table.name(*p).to_string());
        monomials.push(MonomialSpec {
            i: m.exp(frame.y),
            j: m.exp(frame.z),
            coeff: CoeffSpec {
                param,
                scalar: c.clone(),
            },
        });
    }
    FamilySpec {
        name: fam.name().to_string(),
        kind: fam.kind(),
        parameters: fam.parameters().iter().map(|p| table.name(*p).to_string()).collect(),
        monomials,
        actions: actions.iter().map(|a| action_spec(a, table)).collect(),
    }
}

fn action_spec(act: &ParameterAction, table: &VarTable) -> ActionSpec {
    ActionSpec {
        name: act.name.clone(),
        torus: table.name(act.torus).to_string(),
        weights: act
            .weights
            .iter()
            .map(|(v, w)| (table.name(*v).to_string(), *w))
            .collect(),
        geometric: act.geometric.as_ref().map(|(y, z)| GeometricSpec {
            y: y.display(table).to_string(),
            z: z.display(table).to_string(),
        }),
    }
}

/// Inverse of [`build_map`].
pub fn map_spec(name: &str, family: Option<&str>, map: &BirMap, table: &VarTable) -> MapSpec {
    let f = map.frame();
    let coords = [
        (f.cover, map.w_image()),
        (f.y, map.y_image().clone()),
        (f.z, map.z_image().clone()),
    ]
    .into_iter()
    .map(|(v, r)| (table.name(v).to_string(), r.display(table).to_string()))
    .collect();
    MapSpec {
        name: name.to_string(),
        family: family.map(str::to_string),
        coords,
    }
}

/// Serializes ingested objects back into a raw file.
pub fn to_input(ingested: &Ingested) -> InputFile {
    InputFile {
        families: ingested
            .families
            .iter()
            .map(|f| family_spec(&f.family, &f.actions, &ingested.table))
            .collect(),
        maps: ingested
            .maps
            .iter()
            .map(|m| map_spec(&m.name, m.family.as_deref(), &m.map, &ingested.table))
            .collect(),
    }
}

/// Definition file for built-in family `k` with its identifications and map.
pub fn builtin_fixture(k: usize) -> Result<InputFile> {
    let fam = family(k)?;
    let table = VarTable::standard();
    let actions = crate::moduli::builtin_actions(&fam, k);
    let sigma = crate::maps::sigma(k)?;
    Ok(InputFile {
        families: vec![family_spec(&fam, &actions, &table)],
        maps: vec![map_spec(&format!("sigma{k}"), Some(fam.name()), &sigma, &table)],
    })
}

pub fn to_json(file: &InputFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("input files serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_offsets() {
        assert_eq!(byte_offset("ab\ncd", 2, 2), 4);
        assert_eq!(byte_offset("abc", 1, 1), 0);
    }

    #[test]
    fn json_errors_are_classified() {
        assert!(matches!(parse_input("{\"families\": ["), Err(Error::Parse { .. })));
        assert!(matches!(parse_input("{\"families\": 3}"), Err(Error::Schema(_))));
        assert!(matches!(parse_input("{\"bogus\": []}"), Err(Error::Schema(_))));
    }

    #[test]
    fn builtin_fixtures_round_trip() {
        for k in 1..=3 {
            let json = to_json(&builtin_fixture(k).unwrap());
            let got = ingest(&json).unwrap();
            assert_eq!(got.families[0].family, family(k).unwrap());
            assert_eq!(got.maps[0].map, crate::maps::sigma(k).unwrap());
            assert_eq!(
                got.families[0].actions,
                crate::moduli::builtin_actions(&got.families[0].family, k)
            );
        }
    }

    #[test]
    fn support_violation() {
        let src = r#"{"families": [{"name": "bad", "kind": "enriques_horikawa", "parameters": ["A"],
            "monomials": [{"i": 0, "j": 1, "coeff": {"param": "A", "scalar": "1,0,0,0"}}]}]}"#;
        match ingest(src) {
            Err(Error::Schema(m)) => assert!(m.contains("4 <= i+2j <= 8"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_expression() {
        let src = r#"{"maps": [{"name": "m", "coords": {"w": "w", "y": "y +* z", "z": "z"}}]}"#;
        match ingest(src) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 3);
                assert!(message.contains("coordinate y"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_family_reference() {
        let src = r#"{"maps": [{"name": "m", "family": "nope", "coords": {"w": "w", "y": "y", "z": "z"}}]}"#;
        assert!(matches!(ingest(src), Err(Error::Schema(_))));
        let builtin = r#"{"maps": [{"name": "m", "family": "family-2", "coords": {"w": "w", "y": "y", "z": "z"}}]}"#;
        assert!(ingest(builtin).is_ok());
    }

    #[test]
    fn custom_parameter_names() {
        let src = r#"{"families": [{"name": "t", "kind": "k3_cover", "parameters": ["p", "q"],
            "monomials": [{"i": 4, "j": 4, "coeff": {"param": "p", "scalar": "1,0,0,0"}},
                          {"i": 0, "j": 0, "coeff": {"param": "q", "scalar": "0,0,-1,0"}},
                          {"i": 2, "j": 2, "coeff": {"scalar": "3/2,0,0,0"}}]}]}"#;
        let ing = ingest(src).unwrap();
        let fam = &ing.families[0].family;
        assert_eq!(fam.bidegree(), (4, 4));
        let again = ingest(&to_json(&to_input(&ing))).unwrap();
        assert_eq!(again, ing);
    }
}
