//! Golden data shipped as JSON under `data/`.
//!
//! The files are compiled in; setting `HALPHEN_DATA_DIR` makes the loaders read the
//! same file names from that directory instead.

use std::path::PathBuf;

use serde::Deserialize;

use crate::exactalg::{Matrix, Poly, Scalar};
use crate::ode::{HeunEquation, LameEquation, OdeError};
use crate::parse::{parse_poly, parse_scalar, ParseError};

pub const DATA_DIR_ENV: &str = "HALPHEN_DATA_DIR";

const TABLES: &str = include_str!("../data/tables.json");
const BELYI: &str = include_str!("../data/belyi.json");
const TUPLES: &str = include_str!("../data/tuples.json");

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error("{file}: {source}")]
    Json { file: String, source: serde_json::Error },
    #[error("{file}: field {field}: {source}")]
    Parse { file: String, field: String, source: ParseError },
    #[error("{file}: {msg}")]
    Invalid { file: String, msg: String },
}

fn read(file: &str, builtin: &'static str) -> Result<String, DataError> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            std::fs::read_to_string(&path).map_err(|source| DataError::Io { file: path.display().to_string(), source })
        }
        None => Ok(builtin.to_string()),
    }
}

fn load<T: for<'de> Deserialize<'de>>(file: &str, builtin: &'static str) -> Result<T, DataError> {
    let text = read(file, builtin)?;
    serde_json::from_str(&text).map_err(|source| DataError::Json { file: file.into(), source })
}

struct Ctx<'a>(&'a str);

impl Ctx<'_> {
    fn poly(&self, field: &str, text: &str) -> Result<Poly, DataError> {
        parse_poly(text).map_err(|source| DataError::Parse { file: self.0.into(), field: field.into(), source })
    }

    fn scalar(&self, field: &str, text: &str) -> Result<Scalar, DataError> {
        parse_scalar(text).map_err(|source| DataError::Parse { file: self.0.into(), field: field.into(), source })
    }

    fn ode<T>(&self, r: Result<T, OdeError>) -> Result<T, DataError> {
        r.map_err(|e| self.invalid(e.to_string()))
    }

    fn invalid(&self, msg: impl Into<String>) -> DataError {
        DataError::Invalid { file: self.0.into(), msg: msg.into() }
    }

    fn matrix(&self, field: &str, rows: &[Vec<String>]) -> Result<Matrix, DataError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| self.scalar(field, e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(self.invalid(format!("{field}: ragged matrix")));
        }
        Ok(Matrix::from_rows(rows))
    }
}

// ---------------------------------------------------------------- tables

#[derive(Deserialize)]
struct RawTables {
    version: u32,
    heun: Vec<RawHeunRow>,
    lame: Vec<RawLameRow>,
}

#[derive(Deserialize)]
struct RawHeunRow {
    row: u32,
    p0: String,
    ab: String,
    ht: String,
}

#[derive(Deserialize)]
struct RawLameRow {
    row: u32,
    p0: String,
    nu: String,
    h: String,
}

#[derive(Clone, Debug)]
pub struct Tables {
    pub version: u32,
    /// Heun rows with λ = 1, keyed by row number.
    pub heun: Vec<(u32, HeunEquation)>,
    pub lame: Vec<(u32, LameEquation)>,
}

pub fn tables() -> Result<Tables, DataError> {
    const FILE: &str = "tables.json";
    let raw: RawTables = load(FILE, TABLES)?;
    let c = Ctx(FILE);
    let mut heun = Vec::new();
    for r in &raw.heun {
        let p0 = c.poly("p0", &r.p0)?;
        let eq = c.ode(HeunEquation::new(p0, c.scalar("ab", &r.ab)?, c.scalar("ht", &r.ht)?, Scalar::one()))?;
        heun.push((r.row, eq));
    }
    let mut lame = Vec::new();
    for r in &raw.lame {
        let p0 = c.poly("p0", &r.p0)?;
        let eq = c.ode(LameEquation::new(p0, c.scalar("nu", &r.nu)?, c.scalar("h", &r.h)?))?;
        lame.push((r.row, eq));
    }
    if !heun.iter().map(|r| r.0).eq(lame.iter().map(|r| r.0)) {
        return Err(c.invalid("the two tables list different rows"));
    }
    Ok(Tables { version: raw.version, heun, lame })
}

// ---------------------------------------------------------------- Belyi rows

#[derive(Deserialize)]
struct RawBelyi {
    version: u32,
    rows: Vec<RawBelyiRow>,
    example: RawExample,
}

#[derive(Deserialize)]
struct RawBelyiRow {
    row: String,
    j1: String,
    j2: String,
    ramification: [Vec<u32>; 3],
    params: [String; 3],
    heun: RawHeun,
    lame: RawLame,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct RawHeun {
    p0: String,
    ab: String,
    ht: String,
    #[serde(default)]
    lambda: Option<String>,
}

#[derive(Deserialize)]
struct RawLame {
    #[serde(default)]
    n: Option<String>,
    nu: String,
    h: String,
    #[serde(default)]
    h_printed: Option<String>,
}

#[derive(Deserialize)]
struct RawExample {
    j1: String,
    j2: String,
    ramification: [Vec<u32>; 3],
    params: [String; 3],
    gauge_exponent: String,
    t: String,
    heun: RawHeun,
    lame: RawLame,
}

#[derive(Clone, Debug)]
pub struct BelyiRow {
    pub id: String,
    pub j1: Poly,
    pub j2: Poly,
    /// Fibers over 0, 1, ∞ as printed.
    pub ramification: [Vec<u32>; 3],
    pub params: [Scalar; 3],
    pub heun: HeunEquation,
    pub lame: LameEquation,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BelyiExample {
    pub j1: Poly,
    pub j2: Poly,
    pub ramification: [Vec<u32>; 3],
    pub params: [Scalar; 3],
    /// Exponent `e` of the gauge factor `j₂^e` that leaves exactly four singular points.
    pub gauge_exponent: Scalar,
    pub t: Scalar,
    pub heun: HeunEquation,
    pub n: Scalar,
    pub lame: LameEquation,
    pub h_printed: Scalar,
}

#[derive(Clone, Debug)]
pub struct BelyiData {
    pub version: u32,
    pub rows: Vec<BelyiRow>,
    pub example: BelyiExample,
}

fn heun_of(c: &Ctx, r: &RawHeun) -> Result<HeunEquation, DataError> {
    let lambda = match &r.lambda {
        Some(l) => c.scalar("lambda", l)?,
        None => Scalar::one(),
    };
    HeunEquation::new(c.poly("p0", &r.p0)?, c.scalar("ab", &r.ab)?, c.scalar("ht", &r.ht)?, lambda)
        .map_err(|e| c.invalid(e.to_string()))
}

fn lame_of(c: &Ctx, p0: &Poly, r: &RawLame) -> Result<LameEquation, DataError> {
    LameEquation::new(p0.clone(), c.scalar("nu", &r.nu)?, c.scalar("h", &r.h)?).map_err(|e| c.invalid(e.to_string()))
}

fn params_of(c: &Ctx, p: &[String; 3]) -> Result<[Scalar; 3], DataError> {
    Ok([c.scalar("params", &p[0])?, c.scalar("params", &p[1])?, c.scalar("params", &p[2])?])
}

pub fn belyi() -> Result<BelyiData, DataError> {
    const FILE: &str = "belyi.json";
    let raw: RawBelyi = load(FILE, BELYI)?;
    let c = Ctx(FILE);
    let mut rows = Vec::new();
    for r in raw.rows {
        let heun = heun_of(&c, &r.heun)?;
        let lame = lame_of(&c, &heun.p0, &r.lame)?;
        rows.push(BelyiRow {
            id: r.row,
            j1: c.poly("j1", &r.j1)?,
            j2: c.poly("j2", &r.j2)?,
            ramification: r.ramification,
            params: params_of(&c, &r.params)?,
            heun,
            lame,
            note: r.note,
        });
    }
    let e = raw.example;
    let heun = heun_of(&c, &e.heun)?;
    let lame = lame_of(&c, &heun.p0, &e.lame)?;
    let n = c.scalar("n", e.lame.n.as_deref().ok_or_else(|| c.invalid("example lacks n"))?)?;
    let h_printed = match &e.lame.h_printed {
        Some(h) => c.scalar("h_printed", h)?,
        None => lame.h.clone(),
    };
    let example = BelyiExample {
        j1: c.poly("j1", &e.j1)?,
        j2: c.poly("j2", &e.j2)?,
        ramification: e.ramification,
        params: params_of(&c, &e.params)?,
        gauge_exponent: c.scalar("gauge_exponent", &e.gauge_exponent)?,
        t: c.scalar("t", &e.t)?,
        heun,
        n,
        lame,
        h_printed,
    };
    Ok(BelyiData { version: raw.version, rows, example })
}

// ---------------------------------------------------------------- tuples

#[derive(Deserialize)]
struct RawTuples {
    version: u32,
    tuples: Vec<RawTuple>,
    conjugate_pairs: Vec<[String; 2]>,
    minimal_triples: RawMinimal,
    families: RawFamilies,
}

#[derive(Deserialize)]
struct RawTuple {
    label: String,
    matrices: Vec<Vec<Vec<String>>>,
    case: String,
    #[serde(default)]
    n: Option<u32>,
    minimal: [i64; 3],
    #[serde(default)]
    erratum: Option<RawErratum>,
}

#[derive(Deserialize)]
struct RawErratum {
    index: usize,
    printed: Vec<Vec<String>>,
    reason: String,
}

#[derive(Deserialize)]
struct RawCaseI {
    n: u32,
    triple: [i64; 3],
}

#[derive(Deserialize)]
struct RawMinimal {
    i: Vec<RawCaseI>,
    ii: Vec<[i64; 3]>,
    iii: Vec<[i64; 3]>,
    iv: Vec<[i64; 3]>,
}

#[derive(Deserialize)]
struct RawFamilies {
    generators: Vec<Vec<Vec<Vec<String>>>>,
    erratum: RawFamilyErratum,
}

#[derive(Deserialize)]
struct RawFamilyErratum {
    family: usize,
    index: usize,
    printed: Vec<Vec<String>>,
    reason: String,
}

#[derive(Clone, Debug)]
pub struct Erratum {
    /// 1-based generator index.
    pub index: usize,
    pub printed: Matrix,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct GoldenTuple {
    pub label: String,
    pub matrices: Vec<Matrix>,
    /// "i" … "iv"
    pub case: String,
    /// gcd of the shifted traces (case i only)
    pub n: Option<u32>,
    /// Minimal triple of the braid orbit, sorted by absolute value.
    pub minimal: [i64; 3],
    pub erratum: Option<Erratum>,
}

/// Generator families with symbolic entries in `n1`, `a4`, `b`, `c`.
#[derive(Clone, Debug)]
pub struct Families {
    pub generators: Vec<Vec<Vec<Vec<String>>>>,
    /// (family, index, printed entries, reason)
    pub erratum: (usize, usize, Vec<Vec<String>>, String),
}

impl Families {
    /// Generators of family `k` (0-based) at the given parameter values.
    pub fn instantiate(&self, k: usize, n1: &Scalar, a4: &Scalar, b: &Scalar, c: &Scalar) -> Result<Vec<Matrix>, DataError> {
        let ctx = Ctx("tuples.json");
        let subst = |s: &str| {
            s.replace("n1", &format!("({n1})"))
                .replace("a4", &format!("({a4})"))
                .replace('b', &format!("({b})"))
                .replace('c', &format!("({c})"))
        };
        let fam = self.generators.get(k).ok_or_else(|| ctx.invalid(format!("no family {k}")))?;
        fam.iter()
            .map(|m| {
                let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|e| subst(e)).collect()).collect();
                ctx.matrix("families", &rows)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TupleData {
    pub version: u32,
    pub tuples: Vec<GoldenTuple>,
    pub conjugate_pairs: Vec<[String; 2]>,
    /// Case i entries as `(N, triple)`.
    pub minimal_i: Vec<(u32, [i64; 3])>,
    /// Cases ii, iii, iv.
    pub minimal_other: [Vec<[i64; 3]>; 3],
    pub families: Families,
}

impl TupleData {
    pub fn get(&self, label: &str) -> Option<&GoldenTuple> {
        self.tuples.iter().find(|t| t.label == label)
    }
}

pub fn tuples() -> Result<TupleData, DataError> {
    const FILE: &str = "tuples.json";
    let raw: RawTuples = load(FILE, TUPLES)?;
    let c = Ctx(FILE);
    let mut tuples = Vec::new();
    for t in raw.tuples {
        let matrices = t.matrices.iter().map(|m| c.matrix(&t.label, m)).collect::<Result<Vec<_>, _>>()?;
        let erratum = match t.erratum {
            Some(e) => Some(Erratum { index: e.index, printed: c.matrix(&t.label, &e.printed)?, reason: e.reason }),
            None => None,
        };
        tuples.push(GoldenTuple { label: t.label, matrices, case: t.case, n: t.n, minimal: t.minimal, erratum });
    }
    let e = raw.families.erratum;
    Ok(TupleData {
        version: raw.version,
        tuples,
        conjugate_pairs: raw.conjugate_pairs,
        minimal_i: raw.minimal_triples.i.into_iter().map(|r| (r.n, r.triple)).collect(),
        minimal_other: [raw.minimal_triples.ii, raw.minimal_triples.iii, raw.minimal_triples.iv],
        families: Families { generators: raw.families.generators, erratum: (e.family, e.index, e.printed, e.reason) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_files_load() {
        let t = tables().unwrap();
        assert_eq!(t.heun.len(), 13);
        assert_eq!(t.version, 1);
        let b = belyi().unwrap();
        assert_eq!(b.rows.len(), 5);
        assert_eq!(b.example.t, Scalar::frac(32, 27));
        let u = tuples().unwrap();
        assert_eq!(u.tuples.len(), 15);
        assert_eq!(u.minimal_i.len(), 4);
        assert!(u.get("N=6").is_some());
    }

    #[test]
    fn families_instantiate() {
        let u = tuples().unwrap();
        let one = Scalar::one();
        let m = u.families.instantiate(1, &one, &one, &Scalar::from(3), &Scalar::from(5)).unwrap();
        assert_eq!(m[3], Matrix::from_ints(&[&[1, -9], &[0, 1]]));
        let m = u.families.instantiate(0, &Scalar::from(2), &Scalar::from(-1), &one, &one).unwrap();
        assert_eq!(m[1].get(0, 1), &Scalar::frac(-5, 2));
    }
}
