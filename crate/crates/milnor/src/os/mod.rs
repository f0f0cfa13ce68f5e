//! Orlik–Solomon algebra in the broken-circuit basis and Aomoto complexes over
//! exact fields.

pub mod resonance;

use crate::arr::Arrangement;
use crate::error::{MilnorError, Result};
use exact::{Cyclo, Field, Fp, IntMatrix, Matrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Coefficient field of an Aomoto complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsField {
    Q,
    /// The prime field 𝔽_p.
    Fp(u64),
    /// The cyclotomic field ℚ(ζ_k).
    Cyclo(u64),
}

impl OsField {
    /// Parse "Q", "F<p>" or "Q(zeta<k>)"/"Qzeta<k>".
    pub fn parse(tag: &str) -> Result<Self> {
        let t = tag.trim();
        let f = if t == "Q" {
            OsField::Q
        } else if let Some(p) = t.strip_prefix('F') {
            OsField::Fp(p.parse().map_err(|_| MilnorError::InvalidInput(format!("bad field {tag}")))?)
        } else if let Some(k) = t.strip_prefix("Q(zeta").and_then(|s| s.strip_suffix(')')).or_else(|| t.strip_prefix("Qzeta")) {
            OsField::Cyclo(k.parse().map_err(|_| MilnorError::InvalidInput(format!("bad field {tag}")))?)
        } else {
            return Err(MilnorError::InvalidInput(format!("unknown field {tag}")));
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            OsField::Fp(p) if !exact::arith::is_prime(p) => Err(MilnorError::InvalidInput(format!("{p} is not prime"))),
            OsField::Cyclo(0) => Err(MilnorError::InvalidInput("cyclotomic order must be at least 1".into())),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            OsField::Q => "Q".into(),
            OsField::Fp(p) => format!("F{p}"),
            OsField::Cyclo(k) => format!("Q(zeta{k})"),
        }
    }
}

/// Sign of the permutation sorting a list of distinct indices; 0 on repeats.
pub fn sort_sign(seq: &[usize]) -> (i64, Vec<usize>) {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return (0, v);
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, v);
    }
    (sign, v)
}

/// Sparse integer combination of basis monomials of one degree.
pub type Combination = Vec<(usize, i64)>;

/// The Orlik–Solomon algebra with its integral nbc basis and multiplication table.
#[derive(Clone, Debug)]
pub struct OsAlgebra {
    pub n: usize,
    pub field: OsField,
    /// nbc monomials in each degree, as sorted index sets, in lexicographic order.
    pub basis: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// `mult[q][h]` is the dim A^{q+1} × dim A^q integer matrix of left multiplication by e_h.
    mult: Vec<Vec<Vec<Vec<i64>>>>,
}

struct Reducer<'a> {
    a: &'a Arrangement,
    index: &'a [HashMap<Vec<usize>, usize>],
    memo: HashMap<Vec<usize>, Combination>,
}

impl Reducer<'_> {
    fn independent(&self, s: &[usize]) -> bool {
        self.a.rank_of(s) == s.len()
    }

    /// A hyperplane h ∉ S and the support D ⊆ {s ∈ S : s > h} of a dependency of f_h on S.
    fn broken_circuit(&self, s: &[usize]) -> Option<(usize, Vec<usize>)> {
        for h in 0..self.a.n() {
            if s.contains(&h) {
                continue;
            }
            let above: Vec<usize> = s.iter().copied().filter(|&x| x > h).collect();
            if above.is_empty() {
                continue;
            }
            if let Some(coeffs) = self.a.express(h, &above) {
                let support: Vec<usize> =
                    above.iter().zip(coeffs.iter()).filter(|(_, c)| !Field::is_zero(*c)).map(|(x, _)| *x).collect();
                return Some((h, support));
            }
        }
        None
    }

    /// Coordinates of the sorted monomial e_S in the nbc basis.
    fn reduce(&mut self, s: &[usize]) -> Combination {
        if let Some(c) = self.memo.get(s) {
            return c.clone();
        }
        let out = if !self.independent(s) {
            Vec::new()
        } else if let Some(&i) = self.index[s.len()].get(s) {
            vec![(i, 1)]
        } else {
            let (h, d) = self.broken_circuit(s).expect("a dependent-free non-nbc monomial contains a broken circuit");
            let rest: Vec<usize> = s.iter().copied().filter(|x| !d.contains(x)).collect();
            let mut order = d.clone();
            order.extend(&rest);
            let (eps, _) = sort_sign(&order);
            // circuit C = {h} ∪ D sorted, with c_0 = h; e_{C∖c_0} = −Σ_{k≥1} (−1)^k e_{C∖c_k}.
            let mut circuit = vec![h];
            circuit.extend(&d);
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for k in 1..circuit.len() {
                let coeff = if k % 2 == 0 { -1 } else { 1 };
                let mut mono: Vec<usize> = circuit.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                mono.extend(&rest);
                let (sg, sorted) = sort_sign(&mono);
                if sg == 0 {
                    continue;
                }
                for (idx, c) in self.reduce(&sorted) {
                    *acc.entry(idx).or_insert(0) += eps * coeff * sg * c;
                }
            }
            let mut v: Combination = acc.into_iter().filter(|&(_, c)| c != 0).collect();
            v.sort_unstable();
            v
        };
        self.memo.insert(s.to_vec(), out.clone());
        out
    }
}

/// True when S contains no broken circuit with respect to the input order.
fn is_nbc(a: &Arrangement, s: &[usize]) -> bool {
    if a.rank_of(s) != s.len() {
        return false;
    }
    for h in 0..a.n() {
        if s.contains(&h) {
            continue;
        }
        let above: Vec<usize> = s.iter().copied().filter(|&x| x > h).collect();
        if !above.is_empty() && a.rank_of(&[above.clone(), vec![h]].concat()) == above.len() {
            return false;
        }
    }
    true
}

impl OsAlgebra {
    /// Build the algebra; the structure constants are integral and field-independent.
    pub fn build(a: &Arrangement, field: OsField) -> Result<Self> {
        Self::build_truncated(a, field, a.rank())
    }

    /// Graded dimensions dim A^q.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Index of an nbc monomial.
    pub fn basis_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len()).and_then(|m| m.get(s).copied())
    }

    /// Integer matrix of left multiplication by e_h from degree q to q+1.
    pub fn mult_matrix(&self, q: usize, h: usize) -> &[Vec<i64>] {
        &self.mult[q][h]
    }

    /// Integer matrix of δ_a: A^q → A^{q+1} for integral a.
    pub fn delta_int(&self, q: usize, a: &[BigInt]) -> IntMatrix {
        let rows = self.basis.get(q + 1).map(Vec::len).unwrap_or(0);
        let cols = self.basis.get(q).map(Vec::len).unwrap_or(0);
        let mut m = IntMatrix::zeros(rows, cols);
        if q >= self.mult.len() {
            return m;
        }
        for (h, ah) in a.iter().enumerate() {
            if ah.is_zero() {
                continue;
            }
            for (i, row) in self.mult[q][h].iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v != 0 {
                        m.add_to(i, j, &(ah * v));
                    }
                }
            }
        }
        m
    }

    /// Matrix of δ_a: A^q → A^{q+1} over an exact field.
    pub fn delta<F: Field>(&self, q: usize, a: &[F], proto: &F) -> Matrix<F> {
        let rows = self.basis.get(q + 1).map(Vec::len).unwrap_or(0);
        let cols = self.basis.get(q).map(Vec::len).unwrap_or(0);
        let mut m = Matrix::zeros(rows, cols, proto);
        if q >= self.mult.len() {
            return m;
        }
        for (h, ah) in a.iter().enumerate() {
            if ah.is_zero() {
                continue;
            }
            for (i, row) in self.mult[q][h].iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v != 0 {
                        let cur = m.get(i, j).add(&ah.mul(&proto.from_i64(v)));
                        m.set(i, j, cur);
                    }
                }
            }
        }
        m
    }

    /// Integer matrix of the derivation ∂: A^q → A^{q−1}, ∂e_S = Σ_k (−1)^k e_{S∖s_k}.
    pub fn boundary(&self, q: usize) -> IntMatrix {
        let cols = self.basis.get(q).map(Vec::len).unwrap_or(0);
        if q == 0 {
            return IntMatrix::zeros(0, cols);
        }
        let rows = self.basis[q - 1].len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (j, s) in self.basis[q].iter().enumerate() {
            for k in 0..s.len() {
                let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                let i = self.index[q - 1][&sub];
                let v = if k % 2 == 0 { 1 } else { -1 };
                m.add_to(i, j, &BigInt::from(v));
            }
        }
        m
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(MilnorError::InvalidInput(format!("class has {len} entries, expected {}", self.n)));
        }
        Ok(())
    }

    /// Betti numbers of (A, δ_a) with rational a, by fraction-free integer elimination.
    pub fn aomoto_betti_q(&self, a: &[Rational]) -> Result<Vec<usize>> {
        self.check_len(a.len())?;
        let ints = clear_denominators(a);
        let ranks: Vec<usize> = (0..self.basis.len()).map(|q| self.delta_int(q, &ints).rank()).collect();
        Ok(betti_from_ranks(&self.dims(), &ranks))
    }

    /// Betti numbers of (A, δ_a) over any exact field.
    pub fn aomoto_betti<F: Field>(&self, a: &[F], proto: &F) -> Result<Vec<usize>> {
        self.check_len(a.len())?;
        let ranks: Vec<usize> = (0..self.basis.len()).map(|q| self.delta(q, a, proto).rank()).collect();
        Ok(betti_from_ranks(&self.dims(), &ranks))
    }

    /// Betti numbers of (A, δ_a) for an integer class, over the algebra's own field.
    pub fn aomoto_betti_int(&self, a: &[i64]) -> Result<Vec<usize>> {
        match self.field {
            OsField::Q => self.aomoto_betti_q(&a.iter().map(|&x| exact::rat(x, 1)).collect::<Vec<_>>()),
            OsField::Fp(p) => {
                let z = Fp::new(0, p);
                self.aomoto_betti(&a.iter().map(|&x| Fp::new(x, p)).collect::<Vec<_>>(), &z)
            }
            OsField::Cyclo(k) => {
                let z = Cyclo::field(k);
                self.aomoto_betti(&a.iter().map(|&x| z.from_i64(x)).collect::<Vec<_>>(), &z)
            }
        }
    }

    /// Basis of ker ∂ in each degree (the subalgebra modelling U), over a field.
    fn u_subspace<F: Field>(&self, q: usize, proto: &F) -> Matrix<F> {
        let b = self.boundary(q);
        let rows: Vec<Vec<F>> = b.to_i64_rows().iter().map(|r| r.iter().map(|&x| proto.from_i64(x)).collect()).collect();
        let bm = Matrix::from_rows(rows, b.cols(), proto);
        let kernel = bm.kernel();
        let cols = kernel.len();
        let mut m = Matrix::zeros(b.cols(), cols, proto);
        for (j, v) in kernel.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Betti numbers of the Aomoto complex of the projectivized complement U at a
    /// class a with Σ a_H = 0, computed on the subcomplex ker ∂ ≅ A(U).
    pub fn aomoto_betti_u<F: Field>(&self, a: &[F], proto: &F) -> Result<Vec<usize>> {
        self.check_len(a.len())?;
        let sum = a.iter().fold(proto.zero_like(), |s, x| s.add(x));
        if !sum.is_zero() {
            return Err(MilnorError::InvalidInput("class does not descend to U: coordinate sum is nonzero".into()));
        }
        let top = self.top_degree();
        let subs: Vec<Matrix<F>> = (0..=top).map(|q| self.u_subspace(q, proto)).collect();
        let dims: Vec<usize> = subs.iter().map(|s| s.cols()).collect();
        let ranks: Vec<usize> = (0..=top).map(|q| self.delta(q, a, proto).mul(&subs[q]).rank()).collect();
        let mut b = betti_from_ranks(&dims, &ranks);
        while b.len() > 1 && *b.last().unwrap() == 0 && *dims.get(b.len() - 1).unwrap_or(&0) == 0 {
            b.pop();
        }
        Ok(b)
    }

    /// Graded dimensions of A(U) = ker ∂.
    pub fn dims_u(&self) -> Vec<usize> {
        let d = self.dims();
        let mut u = Vec::new();
        for (q, &x) in d.iter().enumerate() {
            let prev = if q == 0 { 0 } else { u[q - 1] };
            u.push(x - prev);
        }
        while u.len() > 1 && *u.last().unwrap() == 0 {
            u.pop();
        }
        u
    }

    /// Verify δ_a ∘ δ_a = 0 in every degree.
    pub fn square_vanishes<F: Field>(&self, a: &[F], proto: &F) -> bool {
        (0..self.top_degree()).all(|q| self.delta(q + 1, a, proto).mul(&self.delta(q, a, proto)).is_zero())
    }
}

fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len()).map(|q| dims[q] - ranks[q] - if q == 0 { 0 } else { ranks[q - 1] }).collect()
}

/// Scale a rational vector to a primitive-free integer vector with the same span.
pub fn clear_denominators(a: &[Rational]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    a.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect()
}

/// β_p(A): the first Aomoto Betti number at ω = Σ e_H over 𝔽_p.
pub fn beta_p(a: &Arrangement, p: u64) -> Result<usize> {
    let alg = OsAlgebra::build_truncated(a, OsField::Fp(p), 2)?;
    let omega = vec![1i64; a.n()];
    if a.n() == 0 {
        return Ok(0);
    }
    Ok(alg.aomoto_betti_int(&omega)?[1])
}

impl OsAlgebra {
    /// Build only degrees 0..=max_degree (enough for first cohomology when max_degree = 2).
    pub fn build_truncated(a: &Arrangement, field: OsField, max_degree: usize) -> Result<Self> {
        field.validate()?;
        let basis = nbc_basis(a, max_degree);
        let index: Vec<HashMap<Vec<usize>, usize>> =
            basis.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        let mut red = Reducer { a, index: &index, memo: HashMap::new() };
        let mut mult = Vec::new();
        for q in 0..basis.len() {
            let next_dim = basis.get(q + 1).map(Vec::len).unwrap_or(0);
            let mut per_h = Vec::with_capacity(a.n());
            for h in 0..a.n() {
                let mut m = vec![vec![0i64; basis[q].len()]; next_dim];
                if next_dim > 0 {
                    for (i, s) in basis[q].iter().enumerate() {
                        let mut seq = vec![h];
                        seq.extend(s);
                        let (sg, sorted) = sort_sign(&seq);
                        if sg == 0 {
                            continue;
                        }
                        for (j, c) in red.reduce(&sorted) {
                            m[j][i] += sg * c;
                        }
                    }
                }
                per_h.push(m);
            }
            mult.push(per_h);
        }
        Ok(OsAlgebra { n: a.n(), field, basis, index, mult })
    }
}

fn nbc_basis(a: &Arrangement, max_degree: usize) -> Vec<Vec<Vec<usize>>> {
    let mut basis = vec![vec![vec![]]];
    while basis.len() <= max_degree {
        let prev = basis.last().unwrap();
        let mut next = Vec::new();
        for s in prev {
            let start = s.last().map(|x| x + 1).unwrap_or(0);
            for h in start..a.n() {
                let mut t = s.clone();
                t.push(h);
                if is_nbc(a, &t) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        basis.push(next);
    }
    basis
}
