//! Pochhammer symbols, terminating hypergeometric and Lauricella series, and the
//! combinatorial numbers used for basis changes.

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::index::MultiIndex;
use crate::poly::Poly;

/// Rising factorial (a)_n = a(a+1)...(a+n-1).
pub fn rising_factorial(a: &Exact, n: u32) -> Exact {
    let mut acc = Exact::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t += Exact::one();
    }
    acc
}

/// Falling factorial a_[n] = a(a-1)...(a-n+1).
pub fn falling_factorial(a: &Exact, n: u32) -> Exact {
    let mut acc = Exact::one();
    let mut t = a.clone();
    for _ in 0..n {
        acc *= &t;
        t -= Exact::one();
    }
    acc
}

/// Rising factorial of signed order: (a)_{-k} = 1/(a-k)_k = Γ(a-k)/Γ(a).
pub fn rising_factorial_signed(a: &Exact, n: i64) -> Result<Exact> {
    if n >= 0 {
        return Ok(rising_factorial(a, n as u32));
    }
    let k = (-n) as u32;
    let den = rising_factorial(&(a - Exact::from(k)), k);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("({a:?})_{{{n}}}")));
    }
    Ok(den.recip())
}

/// The polynomial (p)_n = p(p+1)...(p+n-1) for a polynomial argument.
pub fn rising_factorial_poly(p: &Poly, n: u32) -> Poly {
    let mut acc = Poly::one(p.dim());
    for i in 0..n {
        let shifted = p + &Poly::constant(p.dim(), Exact::from(i));
        acc = &acc * &shifted;
    }
    acc
}

pub fn factorial(n: u32) -> Exact {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Exact::from_bigint(acc)
}

pub fn binomial(n: u32, k: u32) -> Exact {
    if k > n {
        return Exact::zero();
    }
    falling_factorial(&Exact::from(n), k) / factorial(k)
}

/// Multinomial coefficient |n|! / (n_1! ... n_d!).
pub fn multinomial(n: &MultiIndex) -> Exact {
    let den: Exact = n.iter().map(|&k| factorial(k)).product();
    factorial(n.total()) / den
}

/// Row n of the Stirling numbers of the second kind, S(n,0..=n).
pub fn stirling2_row(n: u32) -> Vec<Exact> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for k in 1..=m as usize {
            let prev_k = if k < row.len() { row[k].clone() } else { BigInt::zero() };
            next[k] = BigInt::from(k) * prev_k + &row[k - 1];
        }
        row = next;
    }
    row.into_iter().map(Exact::from_bigint).collect()
}

/// Row n of the signed Stirling numbers of the first kind, s(n,0..=n).
pub fn stirling1_row(n: u32) -> Vec<Exact> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for k in 1..=m as usize {
            let prev_k = if k < row.len() { row[k].clone() } else { BigInt::zero() };
            next[k] = &row[k - 1] - BigInt::from(m - 1) * prev_k;
        }
        row = next;
    }
    row.into_iter().map(Exact::from_bigint).collect()
}

pub fn stirling2(n: u32, k: u32) -> Result<Exact> {
    if k > n {
        return Err(Error::InvalidParameter(format!("stirling2({n}, {k}) needs k <= n")));
    }
    Ok(stirling2_row(n)[k as usize].clone())
}

pub fn stirling1(n: u32, k: u32) -> Result<Exact> {
    if k > n {
        return Err(Error::InvalidParameter(format!("stirling1({n}, {k}) needs k <= n")));
    }
    Ok(stirling1_row(n)[k as usize].clone())
}

/// Parameters of a generalized hypergeometric series pFq(numer; denom; arg).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub numer: Vec<Exact>,
    pub denom: Vec<Exact>,
    pub arg: Exact,
}

impl SeriesSpec {
    pub fn new(numer: Vec<Exact>, denom: Vec<Exact>, arg: Exact) -> SeriesSpec {
        SeriesSpec { numer, denom, arg }
    }

    /// The smallest k such that some numerator parameter equals -k.
    pub fn termination_order(&self) -> Option<u32> {
        self.numer.iter().filter_map(Exact::as_nonpositive_integer).min()
    }
}

fn check_denominators(denom: &[Exact], order: u32) -> Result<()> {
    for c in denom {
        if let Some(k) = c.as_nonpositive_integer() {
            if k < order {
                return Err(Error::ZeroDenominator(format!(
                    "denominator parameter {c:?} vanishes within {order} terms"
                )));
            }
        }
    }
    Ok(())
}

/// Coefficients t_j = Π(numer)_j / (Π(denom)_j j!) for j = 0..=order.
pub fn hyp_coefficients(numer: &[Exact], denom: &[Exact], order: u32) -> Result<Vec<Exact>> {
    check_denominators(denom, order)?;
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut t = Exact::one();
    out.push(t.clone());
    for j in 0..order {
        let jj = Exact::from(j);
        for a in numer {
            t *= a + &jj;
        }
        for c in denom {
            t = t / (c + &jj);
        }
        t = t / Exact::from(j + 1);
        out.push(t.clone());
    }
    Ok(out)
}

/// Exact value of a terminating pFq series.
pub fn hyp_pfq_terminating(spec: &SeriesSpec) -> Result<Exact> {
    let order = spec.termination_order().ok_or(Error::NonTerminating)?;
    let coeffs = hyp_coefficients(&spec.numer, &spec.denom, order)?;
    let mut acc = Exact::zero();
    let mut zj = Exact::one();
    for c in coeffs {
        acc += c * &zj;
        zj *= &spec.arg;
    }
    Ok(acc)
}

/// Nonzero terms of F_A(a; b; c; z) as coefficients of z^m, for non-positive integer b.
pub fn lauricella_terms(a: &Exact, b: &[Exact], c: &[Exact]) -> Result<Vec<(MultiIndex, Exact)>> {
    if b.len() != c.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), found: c.len() });
    }
    let bounds: Vec<u32> = b
        .iter()
        .map(|bi| bi.as_nonpositive_integer().ok_or(Error::NonTerminating))
        .collect::<Result<_>>()?;
    for (ci, &k) in c.iter().zip(&bounds) {
        check_denominators(std::slice::from_ref(ci), k)?;
    }
    let per_var: Vec<Vec<Exact>> = b
        .iter()
        .zip(c)
        .zip(&bounds)
        .map(|((bi, ci), &k)| {
            (0..=k)
                .map(|m| rising_factorial(bi, m) / (rising_factorial(ci, m) * factorial(m)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for m in MultiIndex::in_box(&bounds) {
        let mut t = rising_factorial(a, m.total());
        for (i, &mi) in m.iter().enumerate() {
            t *= &per_var[i][mi as usize];
        }
        if !t.is_zero() {
            out.push((m, t));
        }
    }
    Ok(out)
}

/// Exact value of the terminating Lauricella function F_A(a; b; c; z).
pub fn lauricella_fa_terminating(a: &Exact, b: &[Exact], c: &[Exact], z: &[Exact]) -> Result<Exact> {
    if z.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), found: z.len() });
    }
    let mut acc = Exact::zero();
    for (m, t) in lauricella_terms(a, b, c)? {
        let mut v = t;
        for (zi, &mi) in z.iter().zip(m.iter()) {
            v *= zi.pow(mi);
        }
        acc += v;
    }
    Ok(acc)
}

/// F_A(a; b; c; z) with polynomial arguments z_i, all of the same dimension.
pub fn lauricella_fa_poly(a: &Exact, b: &[Exact], c: &[Exact], z: &[Poly]) -> Result<Poly> {
    if z.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: b.len(), found: z.len() });
    }
    let dim = z.first().map(Poly::dim).unwrap_or(0);
    let terms = lauricella_terms(a, b, c)?;
    let shape = Poly::from_terms(b.len(), crate::poly::Basis::Monomial, terms)?;
    if b.is_empty() {
        return Ok(Poly::constant(dim, shape.constant_term()));
    }
    shape.substitute(z)
}
