//! Exact JSON interchange: every number is a string `p/q` (or `p/q+r/s*sqrt(d)`),
//! polynomials are coefficient arrays lowest degree first, matrices are row-major.

use halphen::exactalg::{Matrix, Poly, Scalar};
use halphen::monodromy::{FrickeData, MatrixTuple};
use halphen::ode::{DiffOperator, HeunEquation, LameEquation, RiemannScheme};
use halphen::parse::parse_scalar;
use serde_json::{json, Value};

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn poly(p: &Poly) -> Value {
    scalars(p.coeffs())
}

pub fn coeffs(c: &[Poly]) -> Value {
    let c: Vec<&Poly> = {
        let n = c.iter().rposition(|p| !p.is_zero()).map_or(0, |k| k + 1);
        c[..n].iter().collect()
    };
    json!({ "order": c.len().saturating_sub(1), "coeffs": c.iter().map(|p| poly(p)).collect::<Vec<_>>() })
}

pub fn operator(op: &DiffOperator) -> Value {
    coeffs(op.coeffs())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars(r)).collect())
}

pub fn tuple(t: &MatrixTuple) -> Value {
    Value::Array(t.matrices().iter().map(matrix).collect())
}

pub fn fricke(f: &FrickeData) -> Value {
    json!({ "a": scalars(&f.a), "x": scalar(&f.x), "y": scalar(&f.y), "z": scalar(&f.z) })
}

pub fn lame(l: &LameEquation) -> Value {
    json!({ "p0": poly(&l.p0), "nu": scalar(&l.nu), "H": scalar(&l.h) })
}

pub fn heun(h: &HeunEquation) -> Value {
    json!({ "p0": poly(&h.p0), "ab": scalar(&h.ab), "ht": scalar(&h.ht), "lambda": scalar(&h.lambda) })
}

pub fn scheme(s: &RiemannScheme) -> Value {
    let points: Vec<Value> = s
        .entries
        .iter()
        .map(|e| {
            json!({
                "point": e.point.to_string(),
                "indicial": poly(&e.indicial),
                "exponents": e.exponents.as_deref().map(scalars),
            })
        })
        .collect();
    json!({ "points": points })
}

// ---------------------------------------------------------------- decoding

fn str_scalar(v: &Value, what: &str) -> Result<Scalar, String> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| format!("{what}: {e}")),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from(n.as_i64().unwrap())),
        _ => Err(format!("{what}: expected a fraction string")),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, String> {
    v.as_array().ok_or_else(|| format!("{what}: expected an array"))
}

pub fn read_poly(v: &Value) -> Result<Poly, String> {
    let c = array(v, "polynomial")?.iter().map(|c| str_scalar(c, "coefficient")).collect::<Result<_, _>>()?;
    Ok(Poly::new(c))
}

pub fn read_operator(v: &Value) -> Result<DiffOperator, String> {
    let c = array(v.get("coeffs").ok_or("operator: missing \"coeffs\"")?, "coeffs")?
        .iter()
        .map(read_poly)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(order) = v.get("order") {
        let order = order.as_u64().ok_or("order: expected a non-negative integer")?;
        if order as usize + 1 != c.len() {
            return Err(format!("order {order} does not match {} coefficients", c.len()));
        }
    }
    DiffOperator::new(c).map_err(|e| e.to_string())
}

pub fn read_matrix(v: &Value) -> Result<Matrix, String> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(|e| str_scalar(e, "matrix entry")).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("matrix: rows must be non-empty and of equal length".into());
    }
    Ok(Matrix::from_rows(rows))
}

pub fn read_matrices(v: &Value) -> Result<Vec<Matrix>, String> {
    array(v, "tuple")?.iter().map(read_matrix).collect()
}

pub fn read_fricke(v: &Value) -> Result<FrickeData, String> {
    let get = |k: &str| v.get(k).ok_or_else(|| format!("Fricke data: missing \"{k}\""));
    let a = array(get("a")?, "a")?.iter().map(|e| str_scalar(e, "a")).collect::<Result<Vec<_>, _>>()?;
    let a: [Scalar; 4] = a.try_into().map_err(|_| "Fricke data: \"a\" needs 4 entries".to_string())?;
    Ok(FrickeData::new(a, str_scalar(get("x")?, "x")?, str_scalar(get("y")?, "y")?, str_scalar(get("z")?, "z")?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let op = DiffOperator::new(vec![Poly::from_ints(&[-90, 3]), Poly::zero(), Poly::from_ints(&[0, 81, -82, 1])]).unwrap();
        let v = operator(&op);
        assert_eq!(v["order"], 2);
        assert_eq!(v["coeffs"][1], json!([]));
        assert_eq!(read_operator(&v).unwrap(), op);
    }

    #[test]
    fn quadratic_entries_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::sqrt_int(-1), Scalar::frac(1, 2)],
            vec![Scalar::from(3), &Scalar::frac(2, 3) - &Scalar::sqrt_int(-1)],
        ]);
        let v = matrix(&m);
        assert_eq!(v[0][0], "sqrt(-1)");
        assert_eq!(read_matrix(&v).unwrap(), m);
    }

    #[test]
    fn fricke_round_trip() {
        let f = FrickeData::from_ints([0, 0, 0, 2, 3, 3, -3]);
        assert_eq!(read_fricke(&fricke(&f)).unwrap(), f);
    }

    #[test]
    fn malformed_inputs() {
        assert!(read_poly(&json!(["1", "x"])).is_err());
        assert!(read_matrix(&json!([["1"], ["1", "2"]])).is_err());
        assert!(read_operator(&json!({"order": 3, "coeffs": [["1"], ["1"]]})).is_err());
        assert!(read_fricke(&json!({"a": ["1"], "x": "0", "y": "0", "z": "0"})).is_err());
    }
}
