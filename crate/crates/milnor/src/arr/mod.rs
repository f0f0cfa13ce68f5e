//! Central hyperplane arrangements: exact linear forms, parsing and
//! canonical normalization.

pub mod catalog;
pub mod graph;
pub mod lattice;

use crate::error::{MilnorError, Result};
use exact::{Field, Matrix, Quad};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::Mutex;

/// Coefficient field of an arrangement document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    /// The rationals.
    Q,
    /// ℚ(√5), for the icosidodecahedral planes.
    Qsqrt5,
    /// ℚ(√−3) = ℚ(ω), for the monomial arrangement with cube roots of unity.
    QsqrtMinus3,
}

impl FieldTag {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "Q" => Ok(FieldTag::Q),
            "Qsqrt5" => Ok(FieldTag::Qsqrt5),
            "Qsqrt-3" => Ok(FieldTag::QsqrtMinus3),
            other => Err(MilnorError::UnsupportedField(other.to_string())),
        }
    }
    pub fn as_str(&self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::Qsqrt5 => "Qsqrt5",
            FieldTag::QsqrtMinus3 => "Qsqrt-3",
        }
    }
    /// Radicand d of ℚ(√d); 0 for ℚ.
    pub fn radicand(&self) -> i64 {
        match self {
            FieldTag::Q => 0,
            FieldTag::Qsqrt5 => 5,
            FieldTag::QsqrtMinus3 => -3,
        }
    }
    pub fn zero(&self) -> Quad {
        Quad::from_i64(0, self.radicand())
    }
}

/// A central arrangement with an ordered list of canonically normalized forms.
#[derive(Debug)]
pub struct Arrangement {
    pub name: Option<String>,
    dim: usize,
    field: FieldTag,
    forms: Vec<Vec<Quad>>,
    multiplicities: Option<Vec<u64>>,
    rank_cache: Mutex<HashMap<Vec<usize>, usize>>,
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        Arrangement {
            name: self.name.clone(),
            dim: self.dim,
            field: self.field,
            forms: self.forms.clone(),
            multiplicities: self.multiplicities.clone(),
            rank_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field == other.field
            && self.forms == other.forms
            && self.multiplicities == other.multiplicities
    }
}

/// Projective normalization of a nonzero form.
///
/// The form is scaled so that its first nonzero coefficient is 1; if the
/// result is rational it is further scaled to a primitive integer vector,
/// whose first nonzero entry is then positive.
pub fn normalize_form(coeffs: &[Quad]) -> Option<Vec<Quad>> {
    let lead = coeffs.iter().find(|c| !Field::is_zero(*c))?;
    let inv = lead.inv().expect("nonzero leading coefficient");
    let scaled: Vec<Quad> = coeffs.iter().map(|c| c.mul(&inv)).collect();
    if scaled.iter().all(|c| c.is_rational()) {
        let d = scaled[0].d;
        let mut den = BigInt::one();
        for c in &scaled {
            den = den.lcm(c.a.denom());
        }
        let ints: Vec<BigInt> = scaled.iter().map(|c| (&c.a * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let first_sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
        let g = if first_sign { -g } else { g };
        return Some(ints.iter().map(|x| Quad::rational(BigRational::from_integer(x / &g), d)).collect());
    }
    Some(scaled)
}

impl Arrangement {
    /// Build an arrangement, normalizing forms and rejecting zero or repeated planes.
    pub fn new(name: Option<String>, dim: usize, field: FieldTag, forms: Vec<Vec<Quad>>) -> Result<Self> {
        let mut out: Vec<Vec<Quad>> = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(MilnorError::Malformed(format!("form {i} has length {} but dim is {dim}", f.len())));
            }
            if f.iter().any(|c| c.d != field.radicand() && !(c.is_rational())) {
                return Err(MilnorError::Malformed(format!("form {i} has coefficients outside {}", field.as_str())));
            }
            let f: Vec<Quad> = f.iter().map(|c| Quad::new(c.a.clone(), c.b.clone(), field.radicand())).collect();
            let n = normalize_form(&f).ok_or(MilnorError::ZeroForm(i))?;
            if let Some(j) = out.iter().position(|g| *g == n) {
                return Err(MilnorError::DuplicateHyperplane(j, i));
            }
            out.push(n);
        }
        Ok(Arrangement { name, dim, field, forms: out, multiplicities: None, rank_cache: Mutex::new(HashMap::new()) })
    }

    /// Build a rational arrangement from integer rows.
    pub fn from_int_rows(name: &str, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).unwrap_or(3);
        let forms = rows.iter().map(|r| r.iter().map(|&x| Quad::from_i64(x, 0)).collect()).collect();
        Arrangement::new(Some(name.to_string()), dim, FieldTag::Q, forms)
    }

    /// Attach a multiplicity vector (all entries ≥ 1, one per hyperplane).
    pub fn with_multiplicities(mut self, m: Vec<u64>) -> Result<Self> {
        validate_multiplicities(self.n(), &m)?;
        self.multiplicities = Some(m);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.forms.len()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> FieldTag {
        self.field
    }
    pub fn forms(&self) -> &[Vec<Quad>] {
        &self.forms
    }
    pub fn multiplicities(&self) -> Option<&[u64]> {
        self.multiplicities.as_deref()
    }
    /// The attached multiplicities, or all ones.
    pub fn multiplicities_or_ones(&self) -> Vec<u64> {
        self.multiplicities.clone().unwrap_or_else(|| vec![1; self.n()])
    }
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".to_string())
    }

    /// Rank of the span of the forms indexed by `set`.
    pub fn rank_of(&self, set: &[usize]) -> usize {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&r) = self.rank_cache.lock().expect("rank cache").get(&key) {
            return r;
        }
        let rows: Vec<Vec<Quad>> = key.iter().map(|&i| self.forms[i].clone()).collect();
        let r = Matrix::from_rows(rows, self.dim, &self.field.zero()).rank();
        self.rank_cache.lock().expect("rank cache").insert(key, r);
        r
    }

    /// Rank of the whole arrangement (codimension of the common intersection).
    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.n()).collect();
        self.rank_of(&all)
    }

    /// Coordinates of `target` in terms of the (independent) forms `basis`,
    /// if `target` lies in their span.
    pub fn express(&self, target: usize, basis: &[usize]) -> Option<Vec<Quad>> {
        let zero = self.field.zero();
        let mut m = Matrix::zeros(self.dim, basis.len(), &zero);
        for (j, &b) in basis.iter().enumerate() {
            for i in 0..self.dim {
                m.set(i, j, self.forms[b][i].clone());
            }
        }
        m.solve(&self.forms[target])
    }

    /// Sub-arrangement on the given (sorted) indices, keeping multiplicities.
    pub fn restrict(&self, indices: &[usize]) -> Arrangement {
        let forms = indices.iter().map(|&i| self.forms[i].clone()).collect();
        let mut a = Arrangement::new(self.name.clone(), self.dim, self.field, forms).expect("sub-arrangement of a valid arrangement");
        if let Some(m) = &self.multiplicities {
            a.multiplicities = Some(indices.iter().map(|&i| m[i]).collect());
        }
        a
    }

    /// Deletion of one hyperplane.
    pub fn delete(&self, h: usize) -> Arrangement {
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != h).collect();
        self.restrict(&keep)
    }

    /// Document form (same schema as the input).
    pub fn to_json(&self) -> Value {
        let forms: Vec<Value> = self.forms.iter().map(|f| Value::Array(f.iter().map(|c| coeff_to_json(c, self.field)).collect())).collect();
        let mut v = json!({"dim": self.dim, "field": self.field.as_str(), "forms": forms});
        if let Some(name) = &self.name {
            v["name"] = json!(name);
        }
        if let Some(m) = &self.multiplicities {
            v["multiplicities"] = json!(m);
        }
        v
    }
}

fn validate_multiplicities(n: usize, m: &[u64]) -> Result<()> {
    if m.len() != n {
        return Err(MilnorError::InvalidInput(format!("multiplicity vector has length {} for {n} hyperplanes", m.len())));
    }
    if m.contains(&0) {
        return Err(MilnorError::InvalidInput("multiplicities must be positive".into()));
    }
    Ok(())
}

fn rat_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(r.to_integer()) {
            return json!(v);
        }
    }
    json!(r.to_string())
}

fn coeff_to_json(c: &Quad, field: FieldTag) -> Value {
    if field == FieldTag::Q {
        return rat_to_json(&c.a);
    }
    let a = &c.a;
    let b = &c.b;
    json!([a.numer().to_string().parse::<i64>().ok(), a.denom().to_string().parse::<i64>().ok(), b.numer().to_string().parse::<i64>().ok(), b.denom().to_string().parse::<i64>().ok()])
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| MilnorError::Malformed(format!("coefficient {n} is not an integer")))?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let num: BigInt = num.parse().map_err(|_| MilnorError::Malformed(format!("bad rational {s}")))?;
            let den: BigInt = den.parse().map_err(|_| MilnorError::Malformed(format!("bad rational {s}")))?;
            if den.is_zero() {
                return Err(MilnorError::Malformed(format!("zero denominator in {s}")));
            }
            Ok(BigRational::new(num, den))
        }
        other => Err(MilnorError::Malformed(format!("unexpected coefficient {other}"))),
    }
}

fn parse_coeff(v: &Value, field: FieldTag) -> Result<Quad> {
    let d = field.radicand();
    match (field, v) {
        (FieldTag::Q, _) => Ok(Quad::rational(parse_rational(v)?, 0)),
        (_, Value::Array(parts)) if parts.len() == 4 => {
            let num = |i: usize| -> Result<BigInt> {
                parts[i].as_i64().map(BigInt::from).ok_or_else(|| MilnorError::Malformed(format!("bad quadratic coefficient {v}")))
            };
            let (an, ad, bn, bd) = (num(0)?, num(1)?, num(2)?, num(3)?);
            if ad.is_zero() || bd.is_zero() {
                return Err(MilnorError::Malformed(format!("zero denominator in {v}")));
            }
            Ok(Quad::new(BigRational::new(an, ad), BigRational::new(bn, bd), d))
        }
        (_, Value::Number(_) | Value::String(_)) => Ok(Quad::rational(parse_rational(v)?, d)),
        _ => Err(MilnorError::Malformed(format!("bad coefficient {v} for field {}", field.as_str()))),
    }
}

/// Parse an arrangement document:
/// `{"name"?, "dim", "field": "Q"|"Qsqrt5"|"Qsqrt-3", "forms", "multiplicities"?}`.
///
/// Over quadratic fields a coefficient is `[a_num, a_den, b_num, b_den]`
/// meaning a + b√d; plain integers and `"p/q"` strings are accepted as rationals.
pub fn parse_arrangement(doc: &Value) -> Result<Arrangement> {
    let obj = doc.as_object().ok_or_else(|| MilnorError::Malformed("document must be an object".into()))?;
    for key in obj.keys() {
        if !["name", "dim", "field", "forms", "multiplicities"].contains(&key.as_str()) {
            return Err(MilnorError::Malformed(format!("unknown key {key}")));
        }
    }
    let dim = obj.get("dim").and_then(Value::as_u64).ok_or_else(|| MilnorError::Malformed("missing integer dim".into()))? as usize;
    if dim == 0 {
        return Err(MilnorError::Malformed("dim must be positive".into()));
    }
    let field = FieldTag::parse(obj.get("field").and_then(Value::as_str).ok_or_else(|| MilnorError::Malformed("missing field tag".into()))?)?;
    let forms_v = obj.get("forms").and_then(Value::as_array).ok_or_else(|| MilnorError::Malformed("missing forms array".into()))?;
    let mut forms = Vec::with_capacity(forms_v.len());
    for (i, f) in forms_v.iter().enumerate() {
        let row = f.as_array().ok_or_else(|| MilnorError::Malformed(format!("form {i} is not an array")))?;
        forms.push(row.iter().map(|c| parse_coeff(c, field)).collect::<Result<Vec<_>>>()?);
    }
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(MilnorError::Malformed("name must be a string".into())),
    };
    let a = Arrangement::new(name, dim, field, forms)?;
    match obj.get("multiplicities") {
        None => Ok(a),
        Some(Value::Array(ms)) => {
            let m = ms.iter().map(|x| x.as_u64().ok_or_else(|| MilnorError::Malformed("multiplicities must be positive integers".into()))).collect::<Result<Vec<_>>>()?;
            a.with_multiplicities(m)
        }
        Some(_) => Err(MilnorError::Malformed("multiplicities must be an array".into())),
    }
}

/// Parse an arrangement document from text.
pub fn parse_arrangement_str(text: &str) -> Result<Arrangement> {
    let v: Value = serde_json::from_str(text).map_err(|e| MilnorError::Malformed(e.to_string()))?;
    parse_arrangement(&v)
}
