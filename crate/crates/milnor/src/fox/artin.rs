//! Pure-braid automorphisms of free groups and semidirect-product presentations.
//!
//! Convention: A_ij (i < j) acts on F_s = ⟨x₁, …, x_s⟩ by
//! x_i ↦ P x_i P⁻¹ and x_j ↦ P x_j P⁻¹ with P = x_i x_j,
//! x_k ↦ C x_k C⁻¹ with C = [x_i, x_j] for i < k < j, and fixes the others.
//! A braid word b₁b₂⋯ acts as φ(b₁)∘φ(b₂)∘⋯, and a^b = b⁻¹ab acts as φ(b)⁻¹∘φ(a)∘φ(b).

use super::{GroupPresentation, Word};
use crate::error::{MilnorError, Result};

/// An endomorphism of F_s given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub images: Vec<Word>,
}

impl Automorphism {
    pub fn identity(s: usize) -> Self {
        Automorphism { images: (0..s).map(Word::gen).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Image of a word.
    pub fn apply(&self, w: &Word) -> Word {
        let parts: Vec<Word> = w
            .letters()
            .iter()
            .map(|&l| {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    self.images[g].clone()
                } else {
                    self.images[g].inverse()
                }
            })
            .collect();
        Word::product(&parts)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    /// Induced map on H₁(F_s) = ℤ^s, as rows (row i = abelianized image of x_i).
    pub fn abelian_matrix(&self) -> Vec<Vec<i64>> {
        self.images.iter().map(|w| w.abelianize(self.rank())).collect()
    }
}

/// The Artin automorphism of A_ij on F_s (1 ≤ i < j ≤ s), or its inverse.
pub fn artin_generator(i: usize, j: usize, s: usize, inverse: bool) -> Result<Automorphism> {
    if !(1 <= i && i < j && j <= s) {
        return Err(MilnorError::InvalidInput(format!("A_{{{i},{j}}} is not a pure braid generator on {s} strands")));
    }
    let (xi, xj) = (Word::gen(i - 1), Word::gen(j - 1));
    let p = xi.mul(&xj);
    let c = Word::commutator(&xi, &xj);
    let mut images = Automorphism::identity(s).images;
    if !inverse {
        images[i - 1] = Word::product(&[p.clone(), xi.clone(), p.inverse()]);
        images[j - 1] = Word::product(&[p.clone(), xj.clone(), p.inverse()]);
        for (k, img) in images.iter_mut().enumerate().take(j - 1).skip(i) {
            *img = Word::product(&[c.clone(), Word::gen(k), c.inverse()]);
        }
    } else {
        images[i - 1] = xi.conj(&p);
        images[j - 1] = xj.conj(&p);
        let e = Word::product(&[p.inverse(), c.inverse(), p.clone()]);
        for (k, img) in images.iter_mut().enumerate().take(j - 1).skip(i) {
            *img = Word::product(&[e.clone(), Word::gen(k), e.inverse()]);
        }
    }
    Ok(Automorphism { images })
}

/// How a braid word b₁b₂ is turned into an automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// b₁b₂ ↦ φ(b₁)∘φ(b₂).
    Left,
    /// b₁b₂ ↦ φ(b₂)∘φ(b₁).
    Right,
}

/// A word in the pure braid generators with conjugation a^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PureBraidWord {
    Gen(usize, usize),
    Inv(Box<PureBraidWord>),
    /// a^b = b⁻¹ a b.
    Conj(Box<PureBraidWord>, Box<PureBraidWord>),
    Prod(Vec<PureBraidWord>),
}

impl PureBraidWord {
    /// Parse notation such as `A23 A24 A34`, `A14^{A24 A34} A25`, `A_{1,12}^-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() || *c == ' ').collect();
        let mut p = Parser { c: chars, i: 0 };
        let w = p.product()?;
        p.skip_ws();
        if p.i != p.c.len() {
            return Err(MilnorError::Malformed(format!("unexpected input at position {} in {s:?}", p.i)));
        }
        Ok(w)
    }

    /// The automorphism of F_s defined by this word (left composition).
    pub fn automorphism(&self, s: usize) -> Result<Automorphism> {
        self.automorphism_with(s, Composition::Left)
    }

    /// The automorphism of F_s defined by this word under the given composition rule.
    pub fn automorphism_with(&self, s: usize, rule: Composition) -> Result<Automorphism> {
        self.aut(s, false, rule)
    }

    fn aut(&self, s: usize, inverse: bool, rule: Composition) -> Result<Automorphism> {
        match self {
            PureBraidWord::Gen(i, j) => artin_generator(*i, *j, s, inverse),
            PureBraidWord::Inv(a) => a.aut(s, !inverse, rule),
            PureBraidWord::Conj(a, b) => {
                let fb = b.aut(s, false, rule)?;
                let fb_inv = b.aut(s, true, rule)?;
                let fa = a.aut(s, inverse, rule)?;
                Ok(match rule {
                    Composition::Left => fb_inv.compose(&fa).compose(&fb),
                    Composition::Right => fb.compose(&fa).compose(&fb_inv),
                })
            }
            PureBraidWord::Prod(parts) => {
                let mut factors: Vec<Automorphism> =
                    parts.iter().map(|p| p.aut(s, inverse, rule)).collect::<Result<_>>()?;
                if inverse == (rule == Composition::Left) {
                    factors.reverse();
                }
                Ok(factors.iter().fold(Automorphism::identity(s), |acc, f| acc.compose(f)))
            }
        }
    }
}

struct Parser {
    c: Vec<char>,
    i: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.i < self.c.len() && self.c[self.i] == ' ' {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.c.get(self.i).copied()
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.i += 1;
            Ok(())
        } else {
            Err(MilnorError::Malformed(format!("expected {ch:?} at position {}", self.i)))
        }
    }

    fn product(&mut self) -> Result<PureBraidWord> {
        let mut parts = Vec::new();
        while let Some(ch) = self.peek() {
            if ch == 'A' || ch == '(' {
                parts.push(self.factor()?);
            } else {
                break;
            }
        }
        if parts.is_empty() {
            return Err(MilnorError::Malformed(format!("empty braid word at position {}", self.i)));
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { PureBraidWord::Prod(parts) })
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.c.len() && self.c[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let s: String = self.c[start..self.i].iter().collect();
        s.parse().map_err(|_| MilnorError::Malformed(format!("expected a number at position {start}")))
    }

    fn atom(&mut self) -> Result<PureBraidWord> {
        if self.peek() == Some('(') {
            self.i += 1;
            let w = self.product()?;
            self.expect(')')?;
            return Ok(w);
        }
        self.expect('A')?;
        if self.peek() == Some('_') {
            self.i += 1;
            self.expect('{')?;
            let i = self.number()?;
            self.expect(',')?;
            let j = self.number()?;
            self.expect('}')?;
            return Ok(PureBraidWord::Gen(i, j));
        }
        let start = self.i;
        if self.c.len() < start + 2 || !self.c[start].is_ascii_digit() || !self.c[start + 1].is_ascii_digit() {
            return Err(MilnorError::Malformed(format!("expected two strand digits at position {start}")));
        }
        let i = self.c[start].to_digit(10).unwrap() as usize;
        let j = self.c[start + 1].to_digit(10).unwrap() as usize;
        self.i += 2;
        Ok(PureBraidWord::Gen(i, j))
    }

    fn factor(&mut self) -> Result<PureBraidWord> {
        let mut w = self.atom()?;
        while self.peek() == Some('^') {
            self.i += 1;
            match self.peek() {
                Some('{') => {
                    self.i += 1;
                    if self.peek() == Some('-') {
                        self.i += 1;
                        if self.number()? != 1 {
                            return Err(MilnorError::Malformed("only the exponent -1 is supported".into()));
                        }
                        self.expect('}')?;
                        w = PureBraidWord::Inv(Box::new(w));
                    } else {
                        let b = self.product()?;
                        self.expect('}')?;
                        w = PureBraidWord::Conj(Box::new(w), Box::new(b));
                    }
                }
                Some('-') => {
                    self.i += 1;
                    if self.number()? != 1 {
                        return Err(MilnorError::Malformed("only the exponent -1 is supported".into()));
                    }
                    w = PureBraidWord::Inv(Box::new(w));
                }
                Some('A') => {
                    let b = self.atom()?;
                    w = PureBraidWord::Conj(Box::new(w), Box::new(b));
                }
                _ => return Err(MilnorError::Malformed(format!("bad exponent at position {}", self.i))),
            }
        }
        Ok(w)
    }
}

/// Artin action of a pure braid on one free generator x_i (1-based) of F_s.
pub fn artin_action(b: &PureBraidWord, i: usize, s: usize) -> Result<Word> {
    if i == 0 || i > s {
        return Err(MilnorError::InvalidInput(format!("generator x{i} out of range for F_{s}")));
    }
    Ok(b.automorphism(s)?.images[i - 1].clone())
}

/// ⟨x₁..x_a, u₁..u_b | u_j x_i u_j⁻¹ = α(u_j)(x_i)⟩ for automorphisms α(u_j) of F_a.
pub fn semidirect_presentation(a: usize, monodromy: &[Automorphism], models_u: bool) -> Result<GroupPresentation> {
    let mut relators = Vec::with_capacity(a * monodromy.len());
    for (j, alpha) in monodromy.iter().enumerate() {
        if alpha.rank() != a {
            return Err(MilnorError::InvalidInput(format!(
                "monodromy {} is given on {} generators, expected {a}",
                j + 1,
                alpha.rank()
            )));
        }
        let u = Word::gen(a + j);
        for i in 0..a {
            let lhs = Word::product(&[u.clone(), Word::gen(i), u.inverse()]);
            relators.push(lhs.mul(&alpha.images[i].inverse()));
        }
    }
    GroupPresentation::new(a + monodromy.len(), relators, models_u)
}
