//! JSON serialization of the core objects under the "wlskit-v1" format tag.
//! Integers that fit in 64 bits are emitted as JSON numbers; anything larger
//! becomes a decimal string. Decoding errors name the offending location.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::abelian::{Morphism, Presentation, Subgroup};
use crate::complexes::{CochainComplex, FilteredComplex};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::QMatrix;
use crate::rings::GradedRing;

pub const FORMAT_TAG: &str = "wlskit-v1";

fn err(path: &str, msg: &str) -> Error {
    Error::Json(format!("{path}: {msg}"))
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn bigint_from_json(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| err(path, "expected an integer (use a string for big values)")),
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| err(path, "not a decimal integer string"))
        }
        _ => Err(err(path, "expected an integer or integer string")),
    }
}

pub fn rational_to_json(x: &BigRational) -> Value {
    if x.is_integer() {
        bigint_to_json(x.numer())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::Number(_) => Ok(BigRational::from_integer(bigint_from_json(v, path)?)),
        Value::String(s) => match s.split_once('/') {
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim())
                    .map_err(|_| err(path, "bad rational numerator"))?;
                let d = BigInt::from_str(den.trim())
                    .map_err(|_| err(path, "bad rational denominator"))?;
                if d.is_zero() {
                    return Err(err(path, "zero denominator"));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(
                BigInt::from_str(s.trim()).map_err(|_| err(path, "not a rational string"))?,
            )),
        },
        _ => Err(err(path, "expected a rational as number or string")),
    }
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(path, &format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

/// Wrap an object body with the format and type tags.
pub fn tagged(kind: &str, mut body: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("format".into(), json!(FORMAT_TAG));
    out.insert("type".into(), json!(kind));
    out.append(&mut body);
    Value::Object(out)
}

/// Parse a tagged document and check its declared type.
pub fn untag<'a>(doc: &'a Value, kind: &str) -> Result<&'a Value> {
    let tag = get(doc, "format", "$")?;
    if tag != FORMAT_TAG {
        return Err(err("$.format", &format!("expected \"{FORMAT_TAG}\"")));
    }
    let ty = get(doc, "type", "$")?;
    if ty != kind {
        return Err(err("$.type", &format!("expected \"{kind}\", found {ty}")));
    }
    Ok(doc)
}

pub fn matrix_body(m: &IntMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| bigint_to_json(m.get(i, j))).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn matrix_from_body(v: &Value, path: &str) -> Result<IntMatrix> {
    let rows = as_usize(get(v, "rows", path)?, &format!("{path}.rows"))?;
    let cols = as_usize(get(v, "cols", path)?, &format!("{path}.cols"))?;
    let entries = as_array(get(v, "entries", path)?, &format!("{path}.entries"))?;
    if entries.len() != rows {
        return Err(err(&format!("{path}.entries"), "row count mismatch"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let rpath = format!("{path}.entries[{i}]");
        let row = as_array(row, &rpath)?;
        if row.len() != cols {
            return Err(err(&rpath, "column count mismatch"));
        }
        for (j, e) in row.iter().enumerate() {
            data.push(bigint_from_json(e, &format!("{rpath}[{j}]"))?);
        }
    }
    IntMatrix::new(rows, cols, data)
}

pub fn group_body(g: &Presentation) -> Value {
    json!({ "generators": g.generators(), "relations": matrix_body(g.relations()) })
}

pub fn group_from_body(v: &Value, path: &str) -> Result<Presentation> {
    let generators = as_usize(get(v, "generators", path)?, &format!("{path}.generators"))?;
    let relations = matrix_from_body(get(v, "relations", path)?, &format!("{path}.relations"))?;
    Presentation::new(generators, relations)
}

pub fn morphism_body(f: &Morphism) -> Value {
    json!({
        "source": group_body(f.source()),
        "target": group_body(f.target()),
        "matrix": matrix_body(f.matrix()),
    })
}

pub fn morphism_from_body(v: &Value, path: &str) -> Result<Morphism> {
    let source = group_from_body(get(v, "source", path)?, &format!("{path}.source"))?;
    let target = group_from_body(get(v, "target", path)?, &format!("{path}.target"))?;
    let matrix = matrix_from_body(get(v, "matrix", path)?, &format!("{path}.matrix"))?;
    Morphism::new(source, target, matrix)
}

fn generators_matrix(ambient_rank: usize, generators: &[Vec<BigInt>]) -> IntMatrix {
    let mut data = Vec::with_capacity(ambient_rank * generators.len());
    for i in 0..ambient_rank {
        for g in generators {
            data.push(g[i].clone());
        }
    }
    IntMatrix::new(ambient_rank, generators.len(), data).expect("shape matches")
}

pub fn subgroup_body(s: &Subgroup) -> Value {
    json!({
        "ambient": group_body(s.ambient()),
        "generators": matrix_body(&generators_matrix(s.ambient().generators(), s.generators())),
    })
}

pub fn subgroup_from_body(v: &Value, path: &str) -> Result<Subgroup> {
    let ambient = group_from_body(get(v, "ambient", path)?, &format!("{path}.ambient"))?;
    let gens = matrix_from_body(get(v, "generators", path)?, &format!("{path}.generators"))?;
    if gens.rows() != ambient.generators() {
        return Err(err(&format!("{path}.generators"), "ambient rank mismatch"));
    }
    let columns: Vec<Vec<BigInt>> = (0..gens.cols()).map(|j| gens.column(j)).collect();
    Subgroup::new(ambient, columns)
}

pub fn complex_body(c: &CochainComplex) -> Value {
    let groups: Vec<Value> =
        c.degrees().map(|k| group_body(c.group(k).expect("degree in range"))).collect();
    let differentials: Vec<Value> = c
        .degrees()
        .take_while(|&k| k < c.k_max())
        .map(|k| matrix_body(c.differential(k).expect("degree in range").matrix()))
        .collect();
    json!({
        "degrees": [c.k_min(), c.k_max()],
        "groups": groups,
        "differentials": differentials,
    })
}

pub fn complex_from_body(v: &Value, path: &str) -> Result<CochainComplex> {
    let degrees = as_array(get(v, "degrees", path)?, &format!("{path}.degrees"))?;
    if degrees.len() != 2 {
        return Err(err(&format!("{path}.degrees"), "expected [k_min, k_max]"));
    }
    let k_min = degrees[0]
        .as_i64()
        .ok_or_else(|| err(&format!("{path}.degrees[0]"), "expected an integer"))?;
    let groups_json = as_array(get(v, "groups", path)?, &format!("{path}.groups"))?;
    let mut groups = Vec::with_capacity(groups_json.len());
    for (i, g) in groups_json.iter().enumerate() {
        groups.push(group_from_body(g, &format!("{path}.groups[{i}]"))?);
    }
    let diffs_json = as_array(get(v, "differentials", path)?, &format!("{path}.differentials"))?;
    if groups.is_empty() {
        return Err(err(&format!("{path}.groups"), "a complex needs at least one degree"));
    }
    if diffs_json.len() + 1 != groups.len() {
        return Err(err(
            &format!("{path}.differentials"),
            "expected one differential per consecutive pair of degrees",
        ));
    }
    let mut differentials = Vec::with_capacity(diffs_json.len());
    for (i, d) in diffs_json.iter().enumerate() {
        let m = matrix_from_body(d, &format!("{path}.differentials[{i}]"))?;
        differentials.push(Morphism::new(groups[i].clone(), groups[i + 1].clone(), m)?);
    }
    CochainComplex::new(k_min, groups, differentials)
}

pub fn filtered_body(fc: &FilteredComplex) -> Value {
    let c = fc.complex();
    let filtration: Vec<Value> = c
        .degrees()
        .map(|k| {
            let levels: Vec<Value> = (1..=fc.length() as i64)
                .map(|p| {
                    let s = fc.filtration_subgroup(k, p);
                    matrix_body(&generators_matrix(s.ambient().generators(), s.generators()))
                })
                .collect();
            Value::Array(levels)
        })
        .collect();
    json!({
        "complex": complex_body(c),
        "length": fc.length(),
        "filtration": filtration,
    })
}

pub fn filtered_from_body(v: &Value, path: &str) -> Result<FilteredComplex> {
    let complex = complex_from_body(get(v, "complex", path)?, &format!("{path}.complex"))?;
    let length = as_usize(get(v, "length", path)?, &format!("{path}.length"))?;
    let filt_json = as_array(get(v, "filtration", path)?, &format!("{path}.filtration"))?;
    let degrees: Vec<i64> = complex.degrees().collect();
    if filt_json.len() != degrees.len() {
        return Err(err(&format!("{path}.filtration"), "expected one entry per degree"));
    }
    let mut filtration = Vec::with_capacity(degrees.len());
    for (i, (&k, levels)) in degrees.iter().zip(filt_json).enumerate() {
        let lpath = format!("{path}.filtration[{i}]");
        let levels = as_array(levels, &lpath)?;
        if levels.len() != length {
            return Err(err(&lpath, "expected one generator matrix per filtration level"));
        }
        let ambient = complex.group_or_trivial(k);
        let mut subs = Vec::with_capacity(length);
        for (p, m) in levels.iter().enumerate() {
            let mpath = format!("{lpath}[{p}]");
            let gens = matrix_from_body(m, &mpath)?;
            if gens.rows() != ambient.generators() {
                return Err(err(&mpath, "ambient rank mismatch"));
            }
            let columns: Vec<Vec<BigInt>> = (0..gens.cols()).map(|j| gens.column(j)).collect();
            subs.push(Subgroup::new(ambient.clone(), columns)?);
        }
        filtration.push(subs);
    }
    FilteredComplex::new(complex, length, filtration)
}

pub fn ring_body(r: &GradedRing) -> Value {
    let n = r.top_degree();
    let mut basis = Map::new();
    for d in 0..=n {
        basis.insert(d.to_string(), json!(r.names(d)));
    }
    let mut products = Vec::new();
    for d1 in 1..=n {
        for d2 in d1..=n.saturating_sub(d1) {
            for i in 0..r.dim(d1) {
                let j_start = if d1 == d2 { i } else { 0 };
                for j in j_start..r.dim(d2) {
                    let prod = r.basis_product(d1, i, d2, j);
                    if prod.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let mut value = Map::new();
                    for (k, c) in prod.iter().enumerate() {
                        if !c.is_zero() {
                            value.insert(r.names(d1 + d2)[k].clone(), rational_to_json(c));
                        }
                    }
                    products.push(json!({
                        "a": r.names(d1)[i],
                        "b": r.names(d2)[j],
                        "value": Value::Object(value),
                    }));
                }
            }
        }
    }
    let mut body = Map::new();
    body.insert("n".into(), json!(n));
    body.insert("basis".into(), Value::Object(basis));
    body.insert("products".into(), Value::Array(products));
    if let Some(exps) = r.torsion_exponents() {
        body.insert(
            "torsion_exponents".into(),
            Value::Array(exps.iter().map(bigint_to_json).collect()),
        );
    }
    Value::Object(body)
}

/// Decode a ring. Unit products are implied; a listed product of basis
/// elements also fixes the reversed product via the Koszul sign unless that
/// is listed explicitly; everything else defaults to zero. An optional
/// "lattice" gives, per degree, an invertible rational change of basis whose
/// columns are the preferred lattice generators; the ring is rebased so its
/// stored basis is that lattice.
pub fn ring_from_body(v: &Value, path: &str) -> Result<GradedRing> {
    let n = as_usize(get(v, "n", path)?, &format!("{path}.n"))?;
    let basis_json = get(v, "basis", path)?
        .as_object()
        .ok_or_else(|| err(&format!("{path}.basis"), "expected an object"))?;
    let mut names: Vec<Vec<String>> = vec![vec![]; n + 1];
    for (key, val) in basis_json {
        let d: usize = key
            .parse()
            .map_err(|_| err(&format!("{path}.basis"), "keys must be degrees"))?;
        if d > n {
            return Err(err(&format!("{path}.basis.{key}"), "degree exceeds n"));
        }
        let arr = as_array(val, &format!("{path}.basis.{key}"))?;
        names[d] = arr
            .iter()
            .map(|s| {
                s.as_str()
                    .map(String::from)
                    .ok_or_else(|| err(&format!("{path}.basis.{key}"), "names must be strings"))
            })
            .collect::<Result<_>>()?;
    }
    if names[0].len() != 1 {
        return Err(err(&format!("{path}.basis.0"), "degree 0 must have exactly one element"));
    }
    let mut lookup: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (d, ns) in names.iter().enumerate() {
        for (i, name) in ns.iter().enumerate() {
            if lookup.insert(name.clone(), (d, i)).is_some() {
                return Err(err(&format!("{path}.basis"), &format!("duplicate name \"{name}\"")));
            }
        }
    }
    let dims: Vec<usize> = names.iter().map(|ns| ns.len()).collect();
    // explicit product table, filled from the listed products
    let mut table: BTreeMap<(usize, usize, usize, usize), Vec<BigRational>> = BTreeMap::new();
    let products = as_array(get(v, "products", path)?, &format!("{path}.products"))?;
    for (idx, p) in products.iter().enumerate() {
        let ppath = format!("{path}.products[{idx}]");
        let a = get(p, "a", &ppath)?
            .as_str()
            .ok_or_else(|| err(&ppath, "\"a\" must be a basis name"))?;
        let b = get(p, "b", &ppath)?
            .as_str()
            .ok_or_else(|| err(&ppath, "\"b\" must be a basis name"))?;
        let &(d1, i) =
            lookup.get(a).ok_or_else(|| err(&ppath, &format!("unknown basis name \"{a}\"")))?;
        let &(d2, j) =
            lookup.get(b).ok_or_else(|| err(&ppath, &format!("unknown basis name \"{b}\"")))?;
        if d1 + d2 > n {
            return Err(err(&ppath, "product degree exceeds n"));
        }
        let value = get(p, "value", &ppath)?
            .as_object()
            .ok_or_else(|| err(&ppath, "\"value\" must be an object"))?;
        let mut coords = vec![BigRational::zero(); dims[d1 + d2]];
        for (name, c) in value {
            let &(dt, t) = lookup
                .get(name)
                .ok_or_else(|| err(&ppath, &format!("unknown basis name \"{name}\"")))?;
            if dt != d1 + d2 {
                return Err(err(&ppath, &format!("\"{name}\" is not in degree {}", d1 + d2)));
            }
            coords[t] = rational_from_json(c, &format!("{ppath}.value.{name}"))?;
        }
        if table.insert((d1, i, d2, j), coords).is_some() {
            return Err(err(&ppath, "duplicate product entry"));
        }
    }
    let ring = GradedRing::build(&dims, |d1, i, d2, j| {
        if d1 == 0 {
            let mut v = vec![BigRational::zero(); dims[d2]];
            v[j] = BigRational::one();
            return v;
        }
        if d2 == 0 {
            let mut v = vec![BigRational::zero(); dims[d1]];
            v[i] = BigRational::one();
            return v;
        }
        if let Some(coords) = table.get(&(d1, i, d2, j)) {
            return coords.clone();
        }
        if let Some(coords) = table.get(&(d2, j, d1, i)) {
            let sign = if d1 % 2 == 1 && d2 % 2 == 1 { -1 } else { 1 };
            return coords
                .iter()
                .map(|c| c * BigRational::from_integer(BigInt::from(sign)))
                .collect();
        }
        vec![BigRational::zero(); dims[d1 + d2]]
    })?;
    let mut ring = ring.with_names(names)?;
    if let Some(lattice) = v.get("lattice") {
        ring = rebase_ring(&ring, lattice, &format!("{path}.lattice"))?;
    }
    if let Some(exps) = v.get("torsion_exponents") {
        let arr = as_array(exps, &format!("{path}.torsion_exponents"))?;
        let exps: Vec<BigInt> = arr
            .iter()
            .enumerate()
            .map(|(i, e)| bigint_from_json(e, &format!("{path}.torsion_exponents[{i}]")))
            .collect::<Result<_>>()?;
        ring = ring.with_torsion_exponents(exps)?;
    }
    Ok(ring)
}

/// Change every degree to the basis given by the lattice columns (expressed
/// in the current basis) and rewrite the structure constants accordingly.
fn rebase_ring(ring: &GradedRing, lattice: &Value, path: &str) -> Result<GradedRing> {
    let n = ring.top_degree();
    let obj = lattice.as_object().ok_or_else(|| err(path, "expected an object"))?;
    // per-degree change-of-basis matrices, identity by default
    let mut change: Vec<QMatrix> = (0..=n).map(|d| QMatrix::identity(ring.dim(d))).collect();
    for (key, val) in obj {
        let d: usize = key.parse().map_err(|_| err(path, "keys must be degrees"))?;
        if d > n {
            return Err(err(&format!("{path}.{key}"), "degree exceeds n"));
        }
        let rows = as_array(val, &format!("{path}.{key}"))?;
        let k = ring.dim(d);
        if rows.len() != k {
            return Err(err(&format!("{path}.{key}"), "expected a square matrix"));
        }
        let mut m = QMatrix::zero(k, k);
        for (i, row) in rows.iter().enumerate() {
            let rpath = format!("{path}.{key}[{i}]");
            let row = as_array(row, &rpath)?;
            if row.len() != k {
                return Err(err(&rpath, "expected a square matrix"));
            }
            for (j, e) in row.iter().enumerate() {
                m.set(i, j, rational_from_json(e, &format!("{rpath}[{j}]"))?);
            }
        }
        if m.rank() != k {
            return Err(err(&format!("{path}.{key}"), "lattice matrix is singular"));
        }
        change[d] = m;
    }
    let dims: Vec<usize> = (0..=n).map(|d| ring.dim(d)).collect();
    let names: Vec<Vec<String>> = (0..=n).map(|d| ring.names(d).to_vec()).collect();
    let rebased = GradedRing::build(&dims, |d1, i, d2, j| {
        let a = change[d1].column(i);
        let b = change[d2].column(j);
        let prod = ring.multiply(d1, &a, d2, &b);
        if prod.is_empty() {
            return vec![];
        }
        change[d1 + d2].solve(&prod).expect("invertible change of basis")
    })?;
    rebased.with_names(names)
}

/// Pretty-print a value deterministically: serde_json objects are ordered
/// maps, so equal documents always serialize to identical bytes.
pub fn to_string_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(format!("invalid JSON: {e}")))
}
