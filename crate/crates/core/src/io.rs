//! Seed and Cartan files, and the fixture directory.
//!
//! Seed files are JSON with a fixed layout so that reading and writing a
//! file reproduces it byte for byte:
//!
//! ```text
//! {
//!   "vertices": [-1, 0, 1],
//!   "frozen": [-1, 1],
//!   "d": {"-1": 1, "0": 1, "1": 1},
//!   "b": [
//!     [-1, 0, 1, 1],
//!     ...
//!   ],
//!   "lambda": [
//!     [0, 1, -1]
//!   ]
//! }
//! ```
//!
//! `b` rows are `[i, j, numerator, denominator]`, `lambda` rows `[i, j, Λ_ij]`
//! with `i < j`; both are sorted by `(i, j)`.  `lambda` is absent for
//! classical seeds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::seed::{BEntry, Seed};
use crate::torus::SkewForm;
use crate::word::CartanData;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    vertices: Vec<i64>,
    frozen: Vec<i64>,
    d: BTreeMap<String, i64>,
    b: Vec<[i64; 4]>,
    #[serde(default)]
    lambda: Option<Vec<[i64; 3]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CartanFile {
    #[serde(rename = "J")]
    j: Vec<i64>,
    #[serde(rename = "C")]
    c: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    d: BTreeMap<String, i64>,
}

fn parse_keys(map: BTreeMap<String, i64>) -> Result<BTreeMap<i64, i64>> {
    map.into_iter()
        .map(|(k, v)| k.trim().parse::<i64>().map(|k| (k, v)).map_err(|_| Error::Parse(format!("bad key {k:?}"))))
        .collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn seed_from_json(text: &str) -> Result<Seed> {
    let f: SeedFile = serde_json::from_str(text).map_err(json_err)?;
    let mut entries = Vec::with_capacity(f.b.len());
    for [i, j, num, den] in f.b {
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator at ({i},{j})")));
        }
        entries.push(((i, j), BEntry::new(num, den)));
    }
    let seed = Seed::new(f.vertices, f.frozen, parse_keys(f.d)?, entries)?;
    match f.lambda {
        None => Ok(seed),
        Some(rows) => {
            let mut l = SkewForm::new();
            for [i, j, x] in rows {
                if i == j && x != 0 {
                    return Err(Error::Parse(format!("diagonal Lambda entry at {i}")));
                }
                l.set(i, j, x);
            }
            seed.with_lambda(l)
        }
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn block(rows: &[String]) -> String {
    if rows.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n{}\n  ]", rows.iter().map(|r| format!("    {r}")).collect::<Vec<_>>().join(",\n"))
    }
}

pub fn seed_to_json(seed: &Seed) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"vertices\": [{}],", join(seed.vertices()));
    let _ = writeln!(out, "  \"frozen\": [{}],", join(seed.frozen()));
    let d: Vec<String> = seed.symmetrizers().iter().map(|(k, v)| format!("\"{k}\": {v}")).collect();
    let _ = writeln!(out, "  \"d\": {{{}}},", d.join(", "));
    let b: Vec<String> =
        seed.b_entries().map(|((i, j), x)| format!("[{i}, {j}, {}, {}]", x.numer(), x.denom())).collect();
    let _ = write!(out, "  \"b\": {}", block(&b));
    if let Some(l) = seed.lambda() {
        let rows: Vec<String> = l.upper_entries().map(|(i, j, x)| format!("[{i}, {j}, {x}]")).collect();
        let _ = write!(out, ",\n  \"lambda\": {}", block(&rows));
    }
    out.push_str("\n}\n");
    out
}

pub fn read_seed(path: &Path) -> Result<Seed> {
    seed_from_json(&std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?)
}

pub fn write_seed(path: &Path, seed: &Seed) -> Result<()> {
    std::fs::write(path, seed_to_json(seed)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn cartan_from_json(text: &str) -> Result<CartanData> {
    let f: CartanFile = serde_json::from_str(text).map_err(json_err)?;
    CartanData::new(f.j, &f.c, parse_keys(f.d)?)
}

/// A preset name (`a2`, `g2`, ...) or a path to a Cartan file.
pub fn load_cartan(spec: &str) -> Result<CartanData> {
    match CartanData::preset(spec) {
        Ok(c) => Ok(c),
        Err(_) if Path::new(spec).exists() => {
            cartan_from_json(&std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?)
        }
        Err(e) => Err(e),
    }
}

/// `$CLUSTERKIT_FIXTURES`, else the `fixtures/` directory at the workspace root.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os("CLUSTERKIT_FIXTURES") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixture_dir().join(format!("{name}.json"))
}

pub fn fixture_text(name: &str) -> Result<String> {
    let path = fixture_path(name);
    std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_fixture(name: &str) -> Result<Seed> {
    seed_from_json(&fixture_text(name)?)
}

/// A non-seed fixture as raw JSON.
pub fn load_json_fixture(name: &str) -> Result<serde_json::Value> {
    serde_json::from_str(&fixture_text(name)?).map_err(json_err)
}
