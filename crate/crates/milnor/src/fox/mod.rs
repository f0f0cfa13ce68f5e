//! Free-group words, group presentations, pure-braid automorphisms, and Fox calculus.

pub mod artin;
pub mod catalog;
pub mod jacobian;

use crate::error::{MilnorError, Result};
use serde_json::{json, Value};
use std::fmt;

/// A freely reduced word.  Letter `g + 1` is generator g, `-(g + 1)` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    /// Freely reduce a letter sequence.
    pub fn new(letters: &[i32]) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(vec![])
    }

    /// The generator g (0-based).
    pub fn gen(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word::new(&v)
    }

    /// Product of a list of words.
    pub fn product(words: &[Word]) -> Self {
        let v: Vec<i32> = words.iter().flat_map(|w| w.0.iter().copied()).collect();
        Word::new(&v)
    }

    /// a^b = b⁻¹ a b.
    pub fn conj(&self, b: &Word) -> Self {
        Word::product(&[b.inverse(), self.clone(), b.clone()])
    }

    /// [a, b] = a b a⁻¹ b⁻¹.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        Word::product(&[a.clone(), b.clone(), a.inverse(), b.inverse()])
    }

    /// Largest generator index used plus one.
    pub fn max_gen(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Exponent-sum vector in ℤ^gens.
    pub fn abelianize(&self, gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; gens];
        for &l in &self.0 {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| if l > 0 { format!("g{l}") } else { format!("g{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A finite presentation ⟨x₁, …, x_g | r₁, …, r_k⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub gens: usize,
    pub relators: Vec<Word>,
    /// The presentation 2-complex has the homotopy 2-type of U up to degree 1
    /// (used for degree-one local-system computations).
    pub models_u: bool,
    /// Homology class of each generator in ℤⁿ (one coordinate per hyperplane), when known.
    pub meridians: Option<Vec<Vec<i64>>>,
}

impl GroupPresentation {
    pub fn new(gens: usize, relators: Vec<Word>, models_u: bool) -> Result<Self> {
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_gen() > gens {
                return Err(MilnorError::InvalidInput(format!("relator {r} uses a generator beyond {gens}")));
            }
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(GroupPresentation { gens, relators: rels, models_u, meridians: None })
    }

    pub fn with_meridians(mut self, meridians: Vec<Vec<i64>>) -> Result<Self> {
        if meridians.len() != self.gens {
            return Err(MilnorError::InvalidInput("one meridian class per generator is required".into()));
        }
        let n = meridians.first().map_or(0, |m| m.len());
        if meridians.iter().any(|m| m.len() != n) {
            return Err(MilnorError::InvalidInput("meridian classes must have equal length".into()));
        }
        self.meridians = Some(meridians);
        Ok(self)
    }

    /// Images of the generators under γ_H ↦ m_H, reduced mod N = Σ m_H.
    pub fn chi_from_multiplicities(&self, m: &[u64]) -> Result<Vec<i64>> {
        let mer = self
            .meridians
            .as_ref()
            .ok_or_else(|| MilnorError::MissingCertificate("presentation has no meridian classes".into()))?;
        if mer.first().map_or(0, |v| v.len()) != m.len() {
            return Err(MilnorError::InvalidInput("multiplicity vector length does not match the meridian classes".into()));
        }
        let nn: i64 = m.iter().map(|&x| x as i64).sum();
        Ok(mer.iter().map(|v| v.iter().zip(m).map(|(a, &b)| a * b as i64).sum::<i64>().rem_euclid(nn.max(1))).collect())
    }

    /// Abelianization relation matrix (rows = relators).
    pub fn abelian_relations(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.abelianize(self.gens)).collect()
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Vec<i32>> = self.relators.iter().map(|r| r.0.clone()).collect();
        let mut v = json!({"gens": self.gens, "relators": rels, "models_U": self.models_u});
        if let Some(m) = &self.meridians {
            v["meridians"] = json!(m);
        }
        v
    }
}

/// Parse a presentation document {gens, relators, models_U, meridians?}.
pub fn parse_presentation(v: &Value) -> Result<GroupPresentation> {
    let obj = v.as_object().ok_or_else(|| MilnorError::Malformed("presentation must be an object".into()))?;
    for k in obj.keys() {
        if !["gens", "relators", "models_U", "meridians", "name"].contains(&k.as_str()) {
            return Err(MilnorError::Malformed(format!("unknown presentation key {k}")));
        }
    }
    let gens = obj
        .get("gens")
        .and_then(Value::as_u64)
        .ok_or_else(|| MilnorError::Malformed("gens must be a nonnegative integer".into()))? as usize;
    let rels = obj
        .get("relators")
        .and_then(Value::as_array)
        .ok_or_else(|| MilnorError::Malformed("relators must be an array".into()))?;
    let mut relators = Vec::with_capacity(rels.len());
    for r in rels {
        let letters = r.as_array().ok_or_else(|| MilnorError::Malformed("each relator is an array".into()))?;
        let mut w = Vec::with_capacity(letters.len());
        for l in letters {
            let x = l.as_i64().ok_or_else(|| MilnorError::Malformed("letters are signed integers".into()))?;
            if x == 0 || x.unsigned_abs() as usize > gens {
                return Err(MilnorError::Malformed(format!("letter {x} out of range")));
            }
            w.push(x as i32);
        }
        relators.push(Word::new(&w));
    }
    let models_u = match obj.get("models_U") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| MilnorError::Malformed("models_U must be boolean".into()))?,
    };
    let p = GroupPresentation::new(gens, relators, models_u)?;
    match obj.get("meridians") {
        None => Ok(p),
        Some(m) => {
            let rows: Option<Vec<Vec<i64>>> = m
                .as_array()
                .map(|a| a.iter().map(|r| r.as_array().and_then(|x| x.iter().map(Value::as_i64).collect())).collect())
                .and_then(|x: Vec<Option<Vec<i64>>>| x.into_iter().collect());
            let rows = rows.ok_or_else(|| MilnorError::Malformed("meridians must be integer rows".into()))?;
            p.with_meridians(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reduce() {
        let w = Word::new(&[1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
        let a = Word::gen(0);
        let b = Word::gen(1);
        assert_eq!(Word::commutator(&a, &b).abelianize(2), vec![0, 0]);
        assert_eq!(a.mul(&a.inverse()), Word::identity());
        assert_eq!(a.conj(&b).letters(), &[-2, 1, 2]);
    }

    #[test]
    fn presentation_round_trip() {
        let p = GroupPresentation::new(2, vec![Word::new(&[1, 2, -1, -2])], true).unwrap();
        let q = parse_presentation(&p.to_json()).unwrap();
        assert_eq!(p, q);
        assert!(parse_presentation(&json!({"gens": 1, "relators": [[2]]})).is_err());
        assert!(parse_presentation(&json!({"gens": 1, "relators": [], "extra": 1})).is_err());
    }
}
