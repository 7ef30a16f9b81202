//! JSON model files: strict parsing into validated models and canonical
//! serialization back out.
//!
//! Unknown keys are rejected. Errors carry the dotted path of the offending
//! field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thg_core::model::{Automorphism, Pairing, Pi1Action, Whitehead};
use thg_core::{CayleyGroup, Error, FgAbelian, IntMatrix, Pi1, SpaceModel, SubgroupData, TransformationModel, VirtAbelian};

type Result<T> = std::result::Result<T, Error>;

/// A parsed model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Space(SpaceModel),
    Transformation {
        model: TransformationModel,
        /// Catalog name of the space when the file refers to it by name.
        space_ref: Option<String>,
        note: Option<String>,
    },
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Space(s) => &s.name,
            Document::Transformation { model, .. } => &model.name,
        }
    }
}

/// Parses and validates a model file. `resolve` looks up spaces referred to by name.
pub fn load_document(text: &str, resolve: &dyn Fn(&str) -> Option<SpaceModel>) -> Result<(Document, Vec<String>)> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::invalid(format!("parse error: {e}")))?;
    let map = object(&value)?;
    match map.get("kind").and_then(Value::as_str) {
        Some("space") => {
            let space = parse_space(map)?;
            let warnings = space.validate()?;
            Ok((Document::Space(space), warnings))
        }
        Some("transformation") => {
            let (model, space_ref, note) = parse_transformation(map, resolve)?;
            let warnings = model.validate()?;
            Ok((Document::Transformation { model, space_ref, note }, warnings))
        }
        Some(other) => Err(Error::invalid(format!("unknown kind {other:?}")).at("kind")),
        None => Err(Error::invalid("missing string field").at("kind")),
    }
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::invalid("expected an object"))
}

fn check_keys(map: &Map<String, Value>, required: &[&str], optional: &[&str]) -> Result<()> {
    for k in map.keys() {
        if !required.contains(&k.as_str()) && !optional.contains(&k.as_str()) {
            return Err(Error::invalid("unknown key").at(k));
        }
    }
    for r in required {
        if !map.contains_key(*r) {
            return Err(Error::invalid("missing required key").at(r));
        }
    }
    Ok(())
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    map.get(key).ok_or_else(|| Error::invalid("missing required key").at(key))
}

fn string(v: &Value) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| Error::invalid("expected a string"))
}

fn boolean(v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| Error::invalid("expected a boolean"))
}

fn unsigned(v: &Value) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::invalid("expected a non-negative integer"))
}

fn integer(v: &Value) -> Result<BigInt> {
    v.as_i64().map(BigInt::from).ok_or_else(|| Error::invalid("expected an integer"))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| Error::invalid("expected an array"))
}

fn int_vec(v: &Value) -> Result<Vec<BigInt>> {
    array(v)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x).map_err(|e| e.at(i)))
        .collect()
}

fn strings(v: &Value) -> Result<Vec<String>> {
    array(v)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x).map_err(|e| e.at(i)))
        .collect()
}

fn matrix(v: &Value) -> Result<IntMatrix> {
    let rows = array(v)?;
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| int_vec(r).map_err(|e| e.at(i)))
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, &rows)
}

fn degree(key: &str) -> Result<u32> {
    key.parse::<u32>()
        .ok()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::invalid("degree keys must be positive integers").at(key))
}

fn parse_abelian(v: &Value) -> Result<FgAbelian> {
    let map = object(v)?;
    check_keys(map, &["rank", "torsion"], &[])?;
    let rank = unsigned(field(map, "rank")?).map_err(|e| e.at("rank"))? as usize;
    let torsion = int_vec(field(map, "torsion")?).map_err(|e| e.at("torsion"))?;
    let a = FgAbelian::canonical_form(rank, &torsion).map_err(|e| Error::violation(e.message).at("torsion"))?;
    if a.torsion() != torsion.as_slice() {
        return Err(Error::violation(format!("torsion must be in invariant-factor form, i.e. {a}")).at("torsion"));
    }
    Ok(a)
}

fn parse_cayley(v: &Value) -> Result<CayleyGroup> {
    let map = object(v)?;
    if map.contains_key("catalog") {
        check_keys(map, &["catalog"], &[])?;
        let name = string(field(map, "catalog")?).map_err(|e| e.at("catalog"))?;
        return CayleyGroup::from_catalog(&name).map_err(|e| e.at("catalog"));
    }
    check_keys(map, &["elements", "table"], &["label"])?;
    let names = strings(field(map, "elements")?).map_err(|e| e.at("elements"))?;
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(Error::invalid("element names must be distinct").at("elements"));
    }
    let mut rows = Vec::new();
    for (i, row) in array(field(map, "table")?).map_err(|e| e.at("table"))?.iter().enumerate() {
        let row = strings(row).map_err(|e| e.at(i).at("table"))?;
        let mut out = Vec::with_capacity(row.len());
        for (j, n) in row.iter().enumerate() {
            out.push(
                *index
                    .get(n.as_str())
                    .ok_or_else(|| Error::not_found(format!("no element {n:?}")).at(j).at(i).at("table"))?,
            );
        }
        rows.push(out);
    }
    let label = match map.get("label") {
        Some(l) => string(l).map_err(|e| e.at("label"))?,
        None => format!("order {}", names.len()),
    };
    CayleyGroup::from_table(label, names, rows).map_err(|e| e.at("table"))
}

fn pair_key(group: &CayleyGroup, key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::invalid("cocycle keys have the form \"q,r\"").at(key))?;
    let find = |n: &str| {
        group
            .index_of(n.trim())
            .ok_or_else(|| Error::not_found(format!("no group element {n:?}")).at(key))
    };
    Ok((find(a)?, find(b)?))
}

fn parse_cocycle(v: &Value, group: &CayleyGroup, layer: &FgAbelian) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let q = group.order();
    let mut table = vec![vec![layer.zero_element(); q]; q];
    for (key, val) in object(v)? {
        let (a, b) = pair_key(group, key)?;
        let x = int_vec(val).map_err(|e| e.at(key))?;
        if x.len() != layer.ngens() {
            return Err(Error::invalid(format!("expected {} coordinates", layer.ngens())).at(key));
        }
        table[a][b] = x;
    }
    Ok(table)
}

fn parse_group_action(v: &Value, group: &CayleyGroup, layer: &FgAbelian) -> Result<Vec<IntMatrix>> {
    let mut out = vec![IntMatrix::identity(layer.ngens()); group.order()];
    for (key, val) in object(v)? {
        let g = group
            .index_of(key)
            .ok_or_else(|| Error::not_found(format!("no group element {key:?}")).at(key))?;
        if val.as_str() == Some("identity") {
            continue;
        }
        out[g] = matrix(val).map_err(|e| e.at(key))?;
    }
    Ok(out)
}

fn parse_pi1(v: &Value) -> Result<Pi1> {
    let map = object(v)?;
    if map.contains_key("rank") {
        return parse_abelian(v).map(Pi1::Abelian);
    }
    if map.contains_key("layer") {
        check_keys(map, &["base", "layer"], &["action", "cocycle"])?;
        let base = parse_cayley(field(map, "base")?).map_err(|e| e.at("base"))?;
        let layer = parse_abelian(field(map, "layer")?).map_err(|e| e.at("layer"))?;
        let action = match map.get("action") {
            Some(a) => parse_group_action(a, &base, &layer).map_err(|e| e.at("action"))?,
            None => vec![IntMatrix::identity(layer.ngens()); base.order()],
        };
        let cocycle = match map.get("cocycle") {
            Some(c) => Some(parse_cocycle(c, &base, &layer).map_err(|e| e.at("cocycle"))?),
            None => None,
        };
        return VirtAbelian::new(base, layer, action, cocycle).map(Pi1::Virt);
    }
    parse_cayley(v).map(Pi1::Finite)
}

fn parse_subgroup(v: &Value) -> Result<SubgroupData> {
    if let Some(s) = v.as_str() {
        return match s {
            "full" => Ok(SubgroupData::Full),
            "trivial" => Ok(SubgroupData::Trivial),
            "center" => Ok(SubgroupData::Center),
            _ => Err(Error::invalid(format!("unknown subgroup keyword {s:?}"))),
        };
    }
    let map = object(v)?;
    if map.contains_key("generators") {
        check_keys(map, &["generators"], &[])?;
        let rows = array(field(map, "generators")?).map_err(|e| e.at("generators"))?;
        let m = matrix(field(map, "generators")?).map_err(|e| e.at("generators"))?;
        if rows.is_empty() {
            return Ok(SubgroupData::Trivial);
        }
        return Ok(SubgroupData::Generators(m));
    }
    check_keys(map, &["elements"], &[])?;
    Ok(SubgroupData::Elements(strings(field(map, "elements")?).map_err(|e| e.at("elements"))?))
}

fn parse_whitehead(v: &Value) -> Result<Whitehead> {
    if v.as_str() == Some("trivial") {
        return Ok(Whitehead::Trivial);
    }
    let map = object(v)?;
    check_keys(map, &["pairings"], &[])?;
    let mut out = Vec::new();
    for (k, p) in array(field(map, "pairings")?).map_err(|e| e.at("pairings"))?.iter().enumerate() {
        let parse = || -> Result<Pairing> {
            let m = object(p)?;
            check_keys(m, &["degrees", "left", "right", "value"], &[])?;
            let d = array(field(m, "degrees")?).map_err(|e| e.at("degrees"))?;
            if d.len() != 2 {
                return Err(Error::invalid("expected two degrees").at("degrees"));
            }
            Ok(Pairing {
                degrees: (unsigned(&d[0])?, unsigned(&d[1])?),
                left: int_vec(field(m, "left")?).map_err(|e| e.at("left"))?,
                right: int_vec(field(m, "right")?).map_err(|e| e.at("right"))?,
                value: int_vec(field(m, "value")?).map_err(|e| e.at("value"))?,
            })
        };
        out.push(parse().map_err(|e| e.at(k).at("pairings"))?);
    }
    Ok(Whitehead::Pairings(out))
}

fn parse_pi1_action(v: &Value) -> Result<Pi1Action> {
    if v.as_str() == Some("trivial") {
        return Ok(Pi1Action::Trivial);
    }
    let mut out = BTreeMap::new();
    for (key, per) in object(v)? {
        let mut degrees = BTreeMap::new();
        for (d, m) in object(per).map_err(|e| e.at(key))? {
            let i = degree(d).map_err(|e| e.at(key))?;
            degrees.insert(i, matrix(m).map_err(|e| e.at(d).at(key))?);
        }
        out.insert(key.clone(), degrees);
    }
    Ok(Pi1Action::Matrices(out))
}

fn parse_space(map: &Map<String, Value>) -> Result<SpaceModel> {
    check_keys(
        map,
        &["kind", "name", "truncation", "aspherical", "pi1"],
        &["pi", "gottlieb", "whitehead", "pi1_action", "note"],
    )?;
    let name = string(field(map, "name")?).map_err(|e| e.at("name"))?;
    let truncation = unsigned(field(map, "truncation")?).map_err(|e| e.at("truncation"))?;
    let aspherical = boolean(field(map, "aspherical")?).map_err(|e| e.at("aspherical"))?;
    let pi1 = parse_pi1(field(map, "pi1")?).map_err(|e| e.at("pi1"))?;
    let mut pi = BTreeMap::new();
    if let Some(v) = map.get("pi") {
        for (k, a) in object(v).map_err(|e| e.at("pi"))? {
            let i = degree(k).map_err(|e| e.at("pi"))?;
            pi.insert(i, parse_abelian(a).map_err(|e| e.at(k).at("pi"))?);
        }
    }
    let mut gottlieb = BTreeMap::new();
    if let Some(v) = map.get("gottlieb") {
        for (k, s) in object(v).map_err(|e| e.at("gottlieb"))? {
            let i = degree(k).map_err(|e| e.at("gottlieb"))?;
            gottlieb.insert(i, parse_subgroup(s).map_err(|e| e.at(k).at("gottlieb"))?);
        }
    }
    let whitehead = match map.get("whitehead") {
        Some(v) => parse_whitehead(v).map_err(|e| e.at("whitehead"))?,
        None => Whitehead::Trivial,
    };
    let pi1_action = match map.get("pi1_action") {
        Some(v) => parse_pi1_action(v).map_err(|e| e.at("pi1_action"))?,
        None => Pi1Action::Trivial,
    };
    let note = match map.get("note") {
        Some(v) => Some(string(v).map_err(|e| e.at("note"))?),
        None => None,
    };
    Ok(SpaceModel {
        name,
        truncation,
        aspherical,
        pi1,
        pi,
        gottlieb,
        whitehead,
        pi1_action,
        note,
    })
}

fn parse_automorphism(v: &Value, space: &SpaceModel, i: u32) -> Result<Option<Automorphism>> {
    if v.as_str() == Some("identity") {
        return Ok(None);
    }
    if let (1, Pi1::Finite(p)) = (i, &space.pi1) {
        let map = object(v)?;
        let mut perm: Vec<usize> = (0..p.order()).collect();
        for (from, to) in map {
            let a = p
                .index_of(from)
                .ok_or_else(|| Error::not_found(format!("no element {from:?}")).at(from))?;
            let to = string(to).map_err(|e| e.at(from))?;
            perm[a] = p
                .index_of(&to)
                .ok_or_else(|| Error::not_found(format!("no element {to:?}")).at(from))?;
        }
        return Ok(Some(Automorphism::Permutation(perm)));
    }
    Ok(Some(Automorphism::Matrix(matrix(v)?)))
}

type Parsed = (TransformationModel, Option<String>, Option<String>);

fn parse_transformation(map: &Map<String, Value>, resolve: &dyn Fn(&str) -> Option<SpaceModel>) -> Result<Parsed> {
    check_keys(
        map,
        &["kind", "space", "group", "free"],
        &[
            "name",
            "action",
            "cocycle",
            "g0",
            "sphere_dimension",
            "orbit_gottlieb1",
            "equivariant_gottlieb1",
            "orbit_model",
            "note",
        ],
    )?;
    let space_value = field(map, "space")?;
    let (space, space_ref) = match space_value.as_str() {
        Some(r) => (
            resolve(r).ok_or_else(|| Error::not_found(format!("no catalog space {r:?}")).at("space"))?,
            Some(r.to_string()),
        ),
        None => {
            let m = object(space_value).map_err(|e| e.at("space"))?;
            let s = parse_space(m).map_err(|e| e.at("space"))?;
            (s, None)
        }
    };
    let group = parse_cayley(field(map, "group")?).map_err(|e| e.at("group"))?;
    let name = match map.get("name") {
        Some(v) => string(v).map_err(|e| e.at("name"))?,
        None => format!("{}-{}", space.name, group.label()),
    };
    let free = boolean(field(map, "free")?).map_err(|e| e.at("free"))?;
    let mut action = vec![BTreeMap::new(); group.order()];
    if let Some(v) = map.get("action") {
        for (key, per) in object(v).map_err(|e| e.at("action"))? {
            let path = |e: Error| e.at(key).at("action");
            let g = group
                .index_of(key)
                .ok_or_else(|| path(Error::not_found(format!("no group element {key:?}"))))?;
            for (d, a) in object(per).map_err(path)? {
                let i = degree(d).map_err(path)?;
                if i > space.truncation {
                    return Err(path(Error::invalid(format!("degree {i} exceeds the truncation")).at(d)));
                }
                if let Some(aut) = parse_automorphism(a, &space, i).map_err(|e| path(e.at(d)))? {
                    action[g].insert(i, aut);
                }
            }
        }
    }
    let cocycle = match map.get("cocycle") {
        Some(v) => {
            let layer = space.pi1.as_layer().ok_or_else(|| {
                Error::unsupported("cocycles need an abelian fundamental group").at("cocycle")
            })?;
            Some(parse_cocycle(v, &group, &layer).map_err(|e| e.at("cocycle"))?)
        }
        None => None,
    };
    let opt_string = |k: &str| -> Result<Option<String>> {
        map.get(k).map(|v| string(v).map_err(|e| e.at(k))).transpose()
    };
    let opt_subgroup = |k: &str| -> Result<Option<SubgroupData>> {
        map.get(k).map(|v| parse_subgroup(v).map_err(|e| e.at(k))).transpose()
    };
    let model = TransformationModel {
        name,
        space,
        group,
        free,
        action,
        cocycle,
        g0_explicit: map.get("g0").map(|v| strings(v).map_err(|e| e.at("g0"))).transpose()?,
        sphere_dimension: map
            .get("sphere_dimension")
            .map(|v| unsigned(v).map_err(|e| e.at("sphere_dimension")))
            .transpose()?,
        orbit_gottlieb1: opt_subgroup("orbit_gottlieb1")?,
        equivariant_gottlieb1: opt_subgroup("equivariant_gottlieb1")?,
        orbit_model: opt_string("orbit_model")?,
    };
    Ok((model, space_ref, opt_string("note")?))
}

// ---- serialization ----

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| ints_value(r)).collect())
}

fn abelian_value(a: &FgAbelian) -> Value {
    json!({ "rank": a.rank(), "torsion": ints_value(a.torsion()) })
}

fn cayley_value(g: &CayleyGroup) -> Value {
    if let Ok(c) = CayleyGroup::from_catalog(g.label()) {
        if c.names() == g.names() && c.table_rows() == g.table_rows() {
            return json!({ "catalog": g.label() });
        }
    }
    let table: Vec<Vec<&str>> = g
        .table_rows()
        .iter()
        .map(|r| r.iter().map(|&x| g.name(x)).collect())
        .collect();
    json!({ "elements": g.names(), "label": g.label(), "table": table })
}

fn cocycle_value(group: &CayleyGroup, layer: &FgAbelian, c: &[Vec<Vec<BigInt>>]) -> Value {
    let mut out = Map::new();
    for (a, row) in c.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            if !layer.is_zero_element(v) {
                out.insert(format!("{},{}", group.name(a), group.name(b)), ints_value(v));
            }
        }
    }
    Value::Object(out)
}

fn pi1_value(p: &Pi1) -> Value {
    match p {
        Pi1::Abelian(a) => abelian_value(a),
        Pi1::Finite(g) => cayley_value(g),
        Pi1::Virt(v) => {
            let base = v.base();
            let mut action = Map::new();
            for q in 0..base.order() {
                if !v.layer().is_identity_endomorphism(v.action(q)) {
                    action.insert(base.name(q).to_string(), matrix_value(v.action(q)));
                }
            }
            let cocycle: Vec<Vec<Vec<BigInt>>> = (0..base.order())
                .map(|a| (0..base.order()).map(|b| v.cocycle(a, b).clone()).collect())
                .collect();
            json!({
                "action": action,
                "base": cayley_value(base),
                "cocycle": cocycle_value(base, v.layer(), &cocycle),
                "layer": abelian_value(v.layer()),
            })
        }
    }
}

fn subgroup_value(s: &SubgroupData) -> Value {
    match s {
        SubgroupData::Full => json!("full"),
        SubgroupData::Trivial => json!("trivial"),
        SubgroupData::Center => json!("center"),
        SubgroupData::Generators(m) => json!({ "generators": matrix_value(m) }),
        SubgroupData::Elements(e) => json!({ "elements": e }),
    }
}

pub fn space_value(s: &SpaceModel) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!("space"));
    m.insert("name".into(), json!(s.name));
    m.insert("truncation".into(), json!(s.truncation));
    m.insert("aspherical".into(), json!(s.aspherical));
    m.insert("pi1".into(), pi1_value(&s.pi1));
    if !s.pi.is_empty() {
        let pi: Map<String, Value> = s.pi.iter().map(|(i, a)| (i.to_string(), abelian_value(a))).collect();
        m.insert("pi".into(), Value::Object(pi));
    }
    if !s.gottlieb.is_empty() {
        let g: Map<String, Value> = s.gottlieb.iter().map(|(i, d)| (i.to_string(), subgroup_value(d))).collect();
        m.insert("gottlieb".into(), Value::Object(g));
    }
    m.insert(
        "whitehead".into(),
        match &s.whitehead {
            Whitehead::Trivial => json!("trivial"),
            Whitehead::Pairings(ps) => json!({
                "pairings": ps.iter().map(|p| json!({
                    "degrees": [p.degrees.0, p.degrees.1],
                    "left": ints_value(&p.left),
                    "right": ints_value(&p.right),
                    "value": ints_value(&p.value),
                })).collect::<Vec<_>>()
            }),
        },
    );
    m.insert(
        "pi1_action".into(),
        match &s.pi1_action {
            Pi1Action::Trivial => json!("trivial"),
            Pi1Action::Matrices(per) => Value::Object(
                per.iter()
                    .map(|(k, degs)| {
                        let d: Map<String, Value> =
                            degs.iter().map(|(i, mat)| (i.to_string(), matrix_value(mat))).collect();
                        (k.clone(), Value::Object(d))
                    })
                    .collect(),
            ),
        },
    );
    if let Some(n) = &s.note {
        m.insert("note".into(), json!(n));
    }
    Value::Object(m)
}

pub fn transformation_value(t: &TransformationModel, space_ref: Option<&str>, note: Option<&str>) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!("transformation"));
    m.insert("name".into(), json!(t.name));
    m.insert(
        "space".into(),
        match space_ref {
            Some(r) => json!(r),
            None => space_value(&t.space),
        },
    );
    m.insert("group".into(), cayley_value(&t.group));
    m.insert("free".into(), json!(t.free));
    let mut action = Map::new();
    for (g, per) in t.action.iter().enumerate() {
        if per.is_empty() {
            continue;
        }
        let mut d = Map::new();
        for (i, aut) in per {
            let v = match aut {
                Automorphism::Matrix(mat) => matrix_value(mat),
                Automorphism::Permutation(p) => {
                    let Pi1::Finite(pg) = &t.space.pi1 else { continue };
                    Value::Object(
                        p.iter()
                            .enumerate()
                            .filter(|(a, b)| a != *b)
                            .map(|(a, &b)| (pg.name(a).to_string(), json!(pg.name(b))))
                            .collect(),
                    )
                }
            };
            d.insert(i.to_string(), v);
        }
        action.insert(t.group.name(g).to_string(), Value::Object(d));
    }
    if !action.is_empty() {
        m.insert("action".into(), Value::Object(action));
    }
    if let Some(c) = &t.cocycle {
        let layer = t.space.pi1.as_layer().unwrap_or_else(FgAbelian::trivial);
        m.insert("cocycle".into(), cocycle_value(&t.group, &layer, c));
    }
    if let Some(g0) = &t.g0_explicit {
        m.insert("g0".into(), json!(g0));
    }
    if let Some(d) = t.sphere_dimension {
        m.insert("sphere_dimension".into(), json!(d));
    }
    if let Some(s) = &t.orbit_gottlieb1 {
        m.insert("orbit_gottlieb1".into(), subgroup_value(s));
    }
    if let Some(s) = &t.equivariant_gottlieb1 {
        m.insert("equivariant_gottlieb1".into(), subgroup_value(s));
    }
    if let Some(o) = &t.orbit_model {
        m.insert("orbit_model".into(), json!(o));
    }
    if let Some(n) = note {
        m.insert("note".into(), json!(n));
    }
    Value::Object(m)
}

pub fn document_value(d: &Document) -> Value {
    match d {
        Document::Space(s) => space_value(s),
        Document::Transformation { model, space_ref, note } => {
            transformation_value(model, space_ref.as_deref(), note.as_deref())
        }
    }
}

/// Canonical text: pretty-printed with sorted keys and a trailing newline.
pub fn serialize(d: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&document_value(d)).expect("json values serialize");
    s.push('\n');
    s
}
