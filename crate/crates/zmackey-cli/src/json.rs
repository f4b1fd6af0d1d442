//! JSON interchange: values on normal-form generators, structure maps as
//! row-major matrices keyed by prime edges.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;
use zmackey::exactalg::{prime_edges, FgAbGroup, Int, IntMatrix};
use zmackey::mackey::{Diagram, ZModule};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{0}")]
    Model(#[from] zmackey::Error),
    #[error("entry {0} does not fit in 64 bits")]
    Overflow(Int),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValueDoc {
    rank: usize,
    torsion: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    n: u64,
    values: BTreeMap<String, ValueDoc>,
    res: BTreeMap<String, Vec<Vec<i64>>>,
    tr: BTreeMap<String, Vec<Vec<i64>>>,
    act: BTreeMap<String, Vec<Vec<i64>>>,
}

fn matrix_json(m: &IntMatrix) -> Result<Value, JsonError> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Result<Vec<i64>, JsonError> = m.row(i).iter().map(|x| x.to_i64().ok_or_else(|| JsonError::Overflow(x.clone()))).collect();
        rows.push(json!(row?));
    }
    Ok(Value::Array(rows))
}

pub fn to_value(m: &ZModule) -> Result<Value, JsonError> {
    let mut values = Map::new();
    let mut act = Map::new();
    for d in m.divisors() {
        let v = m.value(d);
        let torsion: Result<Vec<i64>, JsonError> = v.torsion.iter().map(|t| t.to_i64().ok_or_else(|| JsonError::Overflow(t.clone()))).collect();
        values.insert(d.to_string(), json!({"rank": v.free_rank, "torsion": torsion?}));
        act.insert(d.to_string(), matrix_json(m.act_matrix(d))?);
    }
    let mut res = Map::new();
    let mut tr = Map::new();
    for (d, e, _) in prime_edges(m.n) {
        res.insert(format!("{}->{}", d, e), matrix_json(m.res_matrix(d, e))?);
    }
    for (d, e, _) in prime_edges(m.n) {
        tr.insert(format!("{}->{}", e, d), matrix_json(m.tr_matrix(d, e))?);
    }
    Ok(json!({"n": m.n, "values": values, "res": res, "tr": tr, "act": act}))
}

pub fn to_string(m: &ZModule) -> Result<String, JsonError> {
    Ok(serde_json::to_string_pretty(&to_value(m)?).expect("values serialize"))
}

fn parse_matrix(key: &str, rows: &[Vec<i64>], r: usize, c: usize) -> Result<IntMatrix, JsonError> {
    if rows.len() != r || rows.iter().any(|x| x.len() != c) {
        return Err(JsonError::Schema(format!("matrix `{}` should be {}×{}", key, r, c)));
    }
    let data = rows.iter().flatten().map(|&x| Int::from(x)).collect();
    Ok(IntMatrix::from_vec(r, c, data))
}

fn take(map: &mut BTreeMap<String, Vec<Vec<i64>>>, key: String, what: &str) -> Result<Vec<Vec<i64>>, JsonError> {
    map.remove(&key).ok_or_else(|| JsonError::Schema(format!("missing {} `{}`", what, key)))
}

/// Parses and re-validates a module.
pub fn from_str(s: &str) -> Result<ZModule, JsonError> {
    let mut doc: ModuleDoc = serde_json::from_str(s).map_err(|e| JsonError::Schema(e.to_string()))?;
    let n = doc.n;
    if n == 0 {
        return Err(JsonError::Schema(String::from("n must be positive")));
    }
    let mut d = Diagram::default();
    for x in zmackey::exactalg::divisors(n) {
        let v = doc.values.remove(&x.to_string()).ok_or_else(|| JsonError::Schema(format!("missing value at {}", x)))?;
        if v.torsion.iter().any(|&t| t < 2) || v.torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(JsonError::Schema(format!("torsion at {} is not in normal form", x)));
        }
        d.values.insert(x, FgAbGroup { torsion: v.torsion.iter().map(|&t| Int::from(t)).collect(), free_rank: v.rank });
    }
    if let Some(k) = doc.values.keys().next() {
        return Err(JsonError::Schema(format!("unexpected value key `{}`", k)));
    }
    for x in zmackey::exactalg::divisors(n) {
        let k = d.values[&x].dim();
        let key = x.to_string();
        let rows = take(&mut doc.act, key.clone(), "action")?;
        d.act.insert(x, parse_matrix(&key, &rows, k, k)?);
    }
    for (x, y, _) in prime_edges(n) {
        let (kx, ky) = (d.values[&x].dim(), d.values[&y].dim());
        let key = format!("{}->{}", x, y);
        let rows = take(&mut doc.res, key.clone(), "restriction")?;
        d.res.insert((x, y), parse_matrix(&key, &rows, ky, kx)?);
        let key = format!("{}->{}", y, x);
        let rows = take(&mut doc.tr, key.clone(), "transfer")?;
        d.tr.insert((x, y), parse_matrix(&key, &rows, kx, ky)?);
    }
    for extra in [&doc.res, &doc.tr, &doc.act] {
        if let Some(k) = extra.keys().next() {
            return Err(JsonError::Schema(format!("unexpected key `{}`", k)));
        }
    }
    Ok(ZModule::new(n, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zmackey::mackey::{form_z, ideal};

    #[test]
    fn keys_follow_prime_edges() {
        let v = to_value(&ideal(12, 4).unwrap()).unwrap();
        let res: Vec<&String> = v["res"].as_object().unwrap().keys().collect();
        assert_eq!(res, ["1->2", "1->3", "2->4", "2->6", "3->6", "4->12", "6->12"]);
        assert!(v["tr"].as_object().unwrap().contains_key("12->4"));
    }

    #[test]
    fn round_trip() {
        let m = form_z(12, 6, 2).unwrap();
        assert_eq!(from_str(&to_string(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn torsion_must_be_normal() {
        let s = r#"{"n":1, "values":{"1":{"rank":0,"torsion":[6,3]}}, "res":{}, "tr":{}, "act":{"1":[[1,0],[0,1]]}}"#;
        assert!(matches!(from_str(s), Err(JsonError::Schema(_))));
    }
}
