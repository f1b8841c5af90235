//! Sparse multivariate polynomials over exact rationals, in the monomial or the
//! falling-factorial basis.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::index::MultiIndex;
use crate::special::{stirling1_row, stirling2_row};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "monomial")]
    Monomial,
    /// Terms are products of falling factorials x_[k] = x(x-1)...(x-k+1).
    #[serde(rename = "falling-factorial")]
    FallingFactorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    dim: usize,
    basis: Basis,
    terms: BTreeMap<MultiIndex, Exact>,
}

impl Poly {
    pub fn zero(dim: usize, basis: Basis) -> Poly {
        Poly { dim, basis, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Exact) -> Poly {
        let mut p = Poly::zero(dim, Basis::Monomial);
        p.add_term(MultiIndex::zeros(dim), c);
        p
    }

    pub fn one(dim: usize) -> Poly {
        Poly::constant(dim, Exact::one())
    }

    /// The coordinate polynomial x_i (0-based).
    pub fn var(dim: usize, i: usize) -> Poly {
        assert!(i < dim, "variable {i} out of range for dimension {dim}");
        Poly::monomial(MultiIndex::unit(dim, i), Exact::one())
    }

    pub fn monomial(index: MultiIndex, coeff: Exact) -> Poly {
        let mut p = Poly::zero(index.dim(), Basis::Monomial);
        p.add_term(index, coeff);
        p
    }

    pub fn from_terms<I>(dim: usize, basis: Basis, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (MultiIndex, Exact)>,
    {
        let mut p = Poly::zero(dim, basis);
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: idx.dim() });
            }
            p.add_term(idx, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from coefficients in increasing degree.
    pub fn univariate(coeffs: &[Exact]) -> Poly {
        let mut p = Poly::zero(1, Basis::Monomial);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::new(vec![k as u32]), c.clone());
        }
        p
    }

    /// Affine polynomial c_0 + Σ c_i x_i.
    pub fn affine(constant: Exact, linear: &[Exact]) -> Poly {
        let dim = linear.len();
        let mut p = Poly::constant(dim, constant);
        for (i, c) in linear.iter().enumerate() {
            p.add_term(MultiIndex::unit(dim, i), c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Exact)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Exact {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::total).max()
    }

    /// Degree in the single variable `var`.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|k| k[var]).max().unwrap_or(0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Exact {
        self.coeff(&MultiIndex::zeros(self.dim))
    }

    /// True when every term has total degree `deg`.
    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|k| k.total() == deg)
    }

    fn add_term(&mut self, index: MultiIndex, c: Exact) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch { expected: self.dim, found: other.dim })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let other = other.convert_basis(self.basis);
        let mut out = self.clone();
        for (k, c) in other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        if self.basis != Basis::Monomial || other.basis != Basis::Monomial {
            return Err(Error::WrongBasis("multiplication"));
        }
        let mut out = Poly::zero(self.dim, Basis::Monomial);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term(ka.add(kb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Exact) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.dim, self.basis);
        }
        Poly {
            dim: self.dim,
            basis: self.basis,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            dim: self.dim,
            basis: self.basis,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// `a op b`, optionally multiplied by `scalar`.
    pub fn arithmetic(a: &Poly, b: &Poly, op: ArithOp, scalar: Option<&Exact>) -> Result<Poly> {
        let r = match op {
            ArithOp::Add => a.checked_add(b)?,
            ArithOp::Sub => a.checked_sub(b)?,
            ArithOp::Mul => a.checked_mul(b)?,
        };
        Ok(match scalar {
            Some(s) => r.scale(s),
            None => r,
        })
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.dim);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact evaluation. Falling-factorial terms are evaluated as r_[k] = r(r-1)...(r-k+1).
    pub fn evaluate(&self, point: &[Exact]) -> Result<Exact> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        let powers: Vec<Vec<Exact>> = (0..self.dim)
            .map(|i| {
                let deg = self.degree_in(i);
                let mut v = Vec::with_capacity(deg as usize + 1);
                v.push(Exact::one());
                for k in 1..=deg {
                    let factor = match self.basis {
                        Basis::Monomial => point[i].clone(),
                        Basis::FallingFactorial => &point[i] - Exact::from(k - 1),
                    };
                    let next = &v[(k - 1) as usize] * &factor;
                    v.push(next);
                }
                v
            })
            .collect();
        Ok(self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut t = c.clone();
                for (i, &e) in k.iter().enumerate() {
                    t *= &powers[i][e as usize];
                }
                t
            })
            .sum())
    }

    /// IEEE double evaluation: coefficients are rounded to f64 and the sum is
    /// accumulated in double precision, so the result carries ordinary rounding error.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        let mut acc = 0.0;
        for (k, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &e) in k.iter().enumerate() {
                for j in 0..e {
                    t *= match self.basis {
                        Basis::Monomial => point[i],
                        Basis::FallingFactorial => point[i] - j as f64,
                    };
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// v^M · q(u/v) for univariate `q` with deg q <= M, expanded with denominators cleared.
    pub fn compose_ratio_clear(q: &Poly, m: u32, u: &Poly, v: &Poly) -> Result<Poly> {
        if q.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: q.dim });
        }
        u.check_dim(v)?;
        let q = q.convert_basis(Basis::Monomial);
        let deg = q.degree().unwrap_or(0);
        if deg > m {
            return Err(Error::DegreeBound { degree: deg, bound: m });
        }
        let u = u.convert_basis(Basis::Monomial);
        let v = v.convert_basis(Basis::Monomial);
        let mut u_pow = vec![Poly::one(u.dim)];
        for k in 1..=deg {
            u_pow.push(&u_pow[k as usize - 1] * &u);
        }
        let mut v_pow = vec![Poly::one(v.dim)];
        for k in 1..=m {
            v_pow.push(&v_pow[k as usize - 1] * &v);
        }
        let mut out = Poly::zero(u.dim, Basis::Monomial);
        for (k, c) in &q.terms {
            let k = k[0] as usize;
            let term = &u_pow[k] * &v_pow[m as usize - k];
            out = &out + &term.scale(c);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in the target basis, variable by variable, via
    /// x^n = Σ S(n,k) x_[k] and x_[n] = Σ s(n,k) x^k.
    pub fn convert_basis(&self, target: Basis) -> Poly {
        if self.basis == target {
            return self.clone();
        }
        let max_deg = (0..self.dim).map(|i| self.degree_in(i)).max().unwrap_or(0);
        let rows: Vec<Vec<Exact>> = (0..=max_deg)
            .map(|n| match target {
                Basis::FallingFactorial => stirling2_row(n),
                Basis::Monomial => stirling1_row(n),
            })
            .collect();
        let mut out = Poly::zero(self.dim, target);
        for (key, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Exact)> = vec![(Vec::with_capacity(self.dim), c.clone())];
            for &e in key.iter() {
                let row = &rows[e as usize];
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (idx, coeff) in &partial {
                    for (k, s) in row.iter().enumerate() {
                        if s.is_zero() {
                            continue;
                        }
                        let mut idx2 = idx.clone();
                        idx2.push(k as u32);
                        next.push((idx2, coeff * s));
                    }
                }
                partial = next;
            }
            for (idx, coeff) in partial {
                out.add_term(MultiIndex::new(idx), coeff);
            }
        }
        out
    }

    /// Formal partial derivative of the given order in variable `var`.
    pub fn derivative(&self, var: usize, order: u32) -> Result<Poly> {
        if self.basis != Basis::Monomial {
            return Err(Error::WrongBasis("derivative"));
        }
        if var >= self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: var + 1 });
        }
        let mut out = Poly::zero(self.dim, Basis::Monomial);
        for (k, c) in &self.terms {
            let e = k[var];
            if e < order {
                continue;
            }
            let factor = crate::special::falling_factorial(&Exact::from(e), order);
            let mut v = k.to_vec();
            v[var] = e - order;
            out.add_term(MultiIndex::new(v), c * factor);
        }
        Ok(out)
    }

    /// Substitutes polynomial images for each variable (monomial basis result).
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        let target_dim = images.first().map(Poly::dim).unwrap_or(0);
        for im in images {
            if im.dim != target_dim {
                return Err(Error::DimensionMismatch { expected: target_dim, found: im.dim });
            }
        }
        let src = self.convert_basis(Basis::Monomial);
        let images: Vec<Poly> = images.iter().map(|p| p.convert_basis(Basis::Monomial)).collect();
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .enumerate()
            .map(|(i, im)| {
                let deg = src.degree_in(i);
                let mut v = vec![Poly::one(target_dim)];
                for k in 1..=deg as usize {
                    v.push(&v[k - 1] * im);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(target_dim, Basis::Monomial);
        for (k, c) in &src.terms {
            let mut t = Poly::constant(target_dim, c.clone());
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// v^deg · p(images / v): replaces each term c·x^m by c·images^m·v^(deg-|m|).
    /// Requires deg >= total degree of p.
    pub fn homogenize(&self, deg: u32, images: &[Poly], v: &Poly) -> Result<Poly> {
        let pd = self.degree().unwrap_or(0);
        if pd > deg {
            return Err(Error::DegreeBound { degree: pd, bound: deg });
        }
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: images.len() });
        }
        let src = self.convert_basis(Basis::Monomial);
        let mut v_pow = vec![Poly::one(v.dim)];
        for k in 1..=deg as usize {
            v_pow.push(&v_pow[k - 1] * v);
        }
        let mut out = Poly::zero(v.dim, Basis::Monomial);
        for (k, c) in &src.terms {
            let mut t = v_pow[(deg - k.total()) as usize].scale(c);
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Places variable i of `self` at position `map[i]` of a `new_dim`-variate space.
    pub fn embed(&self, new_dim: usize, map: &[usize]) -> Result<Poly> {
        if map.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.len() });
        }
        let mut out = Poly::zero(new_dim, self.basis);
        for (k, c) in &self.terms {
            let mut v = vec![0u32; new_dim];
            for (i, &e) in k.iter().enumerate() {
                v[map[i]] += e;
            }
            out.add_term(MultiIndex::new(v), c.clone());
        }
        Ok(out)
    }

    /// Replaces every term by `f(index)` times its coefficient, summing the results.
    pub fn linear_functional<F>(&self, mut f: F) -> Result<Exact>
    where
        F: FnMut(&MultiIndex) -> Result<Exact>,
    {
        let mut acc = Exact::zero();
        for (k, c) in &self.terms {
            acc += c * f(k)?;
        }
        Ok(acc)
    }

    /// Applies a linear map sending each basis element to a polynomial.
    pub fn linear_map<F>(&self, target_dim: usize, mut f: F) -> Result<Poly>
    where
        F: FnMut(&MultiIndex) -> Result<Poly>,
    {
        let mut out = Poly::zero(target_dim, Basis::Monomial);
        for (k, c) in &self.terms {
            let im = f(k)?;
            out = out.checked_add(&im.scale(c))?;
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}")?;
            for (i, &e) in k.iter().enumerate() {
                match (self.basis, e) {
                    (_, 0) => {}
                    (Basis::Monomial, 1) => write!(f, "*x{}", i + 1)?,
                    (Basis::Monomial, _) => write!(f, "*x{}^{}", i + 1, e)?,
                    (Basis::FallingFactorial, _) => write!(f, "*x{}_[{}]", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    index: MultiIndex,
    coeff: Exact,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRepr { index: k.clone(), coeff: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Poly, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        Poly::from_terms(repr.dim, repr.basis, repr.terms.into_iter().map(|t| (t.index, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}
