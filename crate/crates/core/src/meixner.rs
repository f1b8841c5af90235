//! Meixner polynomials as Gamma mixtures of Laguerre polynomials, the product and star
//! multivariate Meixner systems, their connection coefficients, and the Poisson-kernel
//! identity for multiple Laguerre polynomials.

use serde::{Deserialize, Serialize};

use crate::distributions::{poisson_pmf, WeightSpec};
use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::index::MultiIndex;
use crate::jacobi::{mv_jacobi, SimplexJacobiIndex};
use crate::laguerre::{laguerre_univariate, multiple_laguerre, multiple_laguerre_norm_sq, LaguerreIndex, LaguerreSystem};
use crate::poly::{Basis, Poly};
use crate::special::{factorial, falling_factorial, rising_factorial, rising_factorial_poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeixnerParams {
    pub alpha: Vec<Exact>,
    pub p: Exact,
    pub n: MultiIndex,
}

impl MeixnerParams {
    pub fn new(alpha: Vec<Exact>, p: Exact, n: MultiIndex) -> Result<MeixnerParams> {
        check_p(&p)?;
        if alpha.is_empty() || alpha.iter().any(|a| !a.is_positive()) {
            return Err(invalid("alpha must be non-empty with positive entries"));
        }
        if n.dim() != alpha.len() {
            return Err(Error::DimensionMismatch { expected: alpha.len(), found: n.dim() });
        }
        Ok(MeixnerParams { alpha, p, n })
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    pub fn weight(&self) -> WeightSpec {
        WeightSpec::NegBinProduct { alpha: self.alpha.clone(), p: self.p.clone() }
    }

    fn laguerre_index(&self) -> LaguerreIndex {
        LaguerreIndex::unit(self.alpha.clone(), self.n.clone()).expect("validated parameters")
    }
}

fn check_p(p: &Exact) -> Result<()> {
    if !p.is_positive() || p >= &Exact::one() {
        return Err(invalid(format!("p must lie strictly inside (0, 1), got {p:?}")));
    }
    Ok(())
}

/// M_n(k) = 2F1(-n, -k; α; (p-1)/p), expanded in k via (-k)_j = (-1)^j k_[j].
pub fn meixner_univariate(alpha: &Exact, p: &Exact, n: u32) -> Result<Poly> {
    check_p(p)?;
    if !alpha.is_positive() {
        return Err(invalid("alpha must be positive"));
    }
    let z = (p - Exact::one()) / p;
    let terms = (0..=n).map(|j| {
        let sign = if j % 2 == 1 { -Exact::one() } else { Exact::one() };
        let c = rising_factorial(&-Exact::from(n), j) / (rising_factorial(alpha, j) * factorial(j)) * z.pow(j) * sign;
        (MultiIndex::from([j]), c)
    });
    Ok(Poly::from_terms(1, Basis::FallingFactorial, terms)?.convert_basis(Basis::Monomial))
}

/// Replaces y^m by E[(Λ(1-p)/p)^m] for Λ with independent Gamma(α_i + r_i, p) coordinates,
/// that is Π(α_i + r_i)_{m_i} (1-p)^{|m|}, giving a polynomial in r.
pub fn gamma_poisson_mixture(l: &Poly, alpha: &[Exact], p: &Exact) -> Result<Poly> {
    let d = l.dim();
    if alpha.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: alpha.len() });
    }
    let q = Exact::one() - p;
    l.linear_map(d, |m| {
        let mut acc = Poly::constant(d, q.pow(m.total()));
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                let shift = Poly::affine(alpha[i].clone(), &unit(d, i));
                acc = &acc * &rising_factorial_poly(&shift, e);
            }
        }
        Ok(acc)
    })
}

fn unit(dim: usize, i: usize) -> Vec<Exact> {
    (0..dim).map(|k| if k == i { Exact::one() } else { Exact::zero() }).collect()
}

/// M̃_n(k) = E[L_n^α(Λ(1-p)/p)] for Λ ~ Gamma(α + k, p).
pub fn meixner_tilde_univariate(alpha: &Exact, p: &Exact, n: u32) -> Result<Poly> {
    check_p(p)?;
    gamma_poisson_mixture(&laguerre_univariate(alpha, n)?, std::slice::from_ref(alpha), p)
}

/// The constant (α)_n p^n / n! with M̃_n = constant · M_n.
pub fn meixner_tilde_factor(alpha: &Exact, p: &Exact, n: u32) -> Exact {
    rising_factorial(alpha, n) * p.pow(n) / factorial(n)
}

/// The Gamma-mixture value of the product (star = false) or star system at lattice point r.
pub fn meixner_mixture_eval(alpha: &[Exact], p: &Exact, n: &MultiIndex, r: &MultiIndex, star: bool) -> Result<Exact> {
    let params = MeixnerParams::new(alpha.to_vec(), p.clone(), n.clone())?;
    let poly = mixture_polynomial(&params, if star { LaguerreSystem::Star } else { LaguerreSystem::Product })?;
    poly.evaluate(&r.iter().map(|&x| Exact::from(x)).collect::<Vec<_>>())
}

/// Gamma mixture of the matching multiple-Laguerre polynomial, as a polynomial in r.
pub fn mixture_polynomial(params: &MeixnerParams, system: LaguerreSystem) -> Result<Poly> {
    let l = multiple_laguerre(&params.laguerre_index(), system)?;
    gamma_poisson_mixture(&l, &params.alpha, &params.p)
}

/// (1-p)^{|n'|} M̃^{|α|+2|n'|,p}_{n_d}(|r|-|n'|) (|α+r|)_{|n'|} q̃_{n'}^α(r; |r|), with the
/// Hahn denominator (|α|+|r|)_{|m|} cleared against (|α+r|)_{|n'|}.
fn star_closed_form(params: &MeixnerParams) -> Result<Poly> {
    let d = params.d();
    let alpha_total: Exact = params.alpha.iter().sum();
    let sum_r = Poly::affine(Exact::zero(), &vec![Exact::one(); d]);
    if d == 1 {
        return meixner_tilde_univariate(&params.alpha[0], &params.p, params.n[0]);
    }
    let np = MultiIndex::new(params.n.entries()[..d - 1].to_vec());
    let k = np.total();
    let nd = params.n[d - 1];
    let jac = mv_jacobi(&SimplexJacobiIndex::new(params.alpha.clone(), np)?);
    let base = &sum_r + &Poly::constant(d, alpha_total.clone());
    let hahn = jac.linear_map(d, |m| {
        let mut acc = rising_factorial_poly(&(&base + &Poly::constant(d, Exact::from(m.total()))), k - m.total());
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                let shift = Poly::affine(params.alpha[i].clone(), &unit(d, i));
                acc = &acc * &rising_factorial_poly(&shift, e);
            }
        }
        Ok(acc)
    })?;
    let outer = meixner_tilde_univariate(&(&alpha_total + Exact::from(2 * k)), &params.p, nd)?;
    let shifted = &sum_r - &Poly::constant(d, Exact::from(k));
    let outer = outer.substitute(&[shifted])?;
    Ok((&outer * &hahn).scale(&(Exact::one() - &params.p).pow(k)))
}

/// Product system Π M̃_{n_i}^{α_i,p}(r_i), or the star system from its closed form.
pub fn mv_meixner(params: &MeixnerParams, system: LaguerreSystem) -> Result<Poly> {
    match system {
        LaguerreSystem::Product => {
            let d = params.d();
            let mut acc = Poly::one(d);
            for i in 0..d {
                let m = meixner_tilde_univariate(&params.alpha[i], &params.p, params.n[i])?;
                acc = &acc * &m.embed(d, &[i])?;
            }
            Ok(acc)
        }
        LaguerreSystem::Star => star_closed_form(params),
    }
}

/// E[M̃_n²] under NB^d: p^{|n|} times the matching Laguerre norm.
pub fn mv_meixner_norm_sq(params: &MeixnerParams, system: LaguerreSystem) -> Result<Exact> {
    Ok(params.p.pow(params.n.total()) * multiple_laguerre_norm_sq(&params.laguerre_index(), system)?)
}

/// E[*M̃_n M̃_m] under NB^d, computed from Negative Binomial falling-factorial moments.
pub fn meixner_connection_check(alpha: &[Exact], p: &Exact, n: &MultiIndex, m: &MultiIndex) -> Result<Exact> {
    let star = mv_meixner(&MeixnerParams::new(alpha.to_vec(), p.clone(), n.clone())?, LaguerreSystem::Star)?;
    let prod = MeixnerParams::new(alpha.to_vec(), p.clone(), m.clone())?;
    let product = mv_meixner(&prod, LaguerreSystem::Product)?;
    prod.weight().expectation(&(&star * &product))
}

/// Outcome of the Poisson-kernel check Σ_m M_r(m) Po_λ(m) against the Laguerre side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub system: LaguerreSystem,
    /// Truncated sum Σ_{|m|≤T} M_r(m) Po_λ(m) in double precision.
    pub lhs: f64,
    /// The full series, evaluated exactly from Poisson falling-factorial moments.
    pub lhs_exact: Exact,
    /// p^{|r|} L_r(λ(1-p)/p).
    pub rhs: Exact,
    /// E[M_r²] L_r(λ(1-p)/p), the tabulated normalization.
    pub rhs_tabulated: Exact,
    pub truncation: u32,
    /// Proven bound on the discarded tail.
    pub tail_bound: f64,
}

/// Sums M_r over the lattice against independent Poisson(λ_i) weights, using
/// Po^d_λ(m) = Po_{|λ|}(|m|) · Mult(m; |m|, λ/|λ|) so each shell |m| = t is summed exactly.
/// Shells are added until the tail bound drops below `tolerance`.
pub fn poisson_kernel_expand(
    params: &MeixnerParams,
    system: LaguerreSystem,
    lambda: &[Exact],
    tolerance: f64,
    budget: u32,
) -> Result<KernelCheck> {
    let d = params.d();
    if lambda.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: lambda.len() });
    }
    if lambda.iter().any(|l| !l.is_positive()) {
        return Err(invalid("lambda must be componentwise positive"));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    let m_poly = match system {
        LaguerreSystem::Product => mv_meixner(params, system)?,
        LaguerreSystem::Star => mixture_polynomial(params, system)?,
    };
    let total: Exact = lambda.iter().sum();
    let shares: Vec<Exact> = lambda.iter().map(|l| l / &total).collect();
    let falling = m_poly.convert_basis(Basis::FallingFactorial);
    let deg = m_poly.degree().unwrap_or(0) as i32;
    let coeff_sum: f64 = m_poly.terms().map(|(_, c)| c.abs().to_f64()).sum();
    let lam = total.to_f64();

    let shell = |t: u32| -> Result<Exact> {
        falling.linear_functional(|l| {
            let mut v = falling_factorial(&Exact::from(t), l.total());
            for (s, &e) in shares.iter().zip(l.iter()) {
                v *= s.pow(e);
            }
            Ok(v)
        })
    };
    let bound_term = |t: u32| poisson_pmf(&total, t) * coeff_sum * (t.max(1) as f64).powi(deg);

    let mut lhs = 0.0;
    let mut t = 0u32;
    loop {
        lhs += poisson_pmf(&total, t) * shell(t)?.to_f64();
        let next = t + 1;
        let q = lam / (next as f64 + 1.0) * ((next as f64 + 1.0) / next as f64).powi(deg);
        if q < 1.0 {
            let tail = bound_term(next) / (1.0 - q);
            if tail < tolerance {
                let lhs_exact = falling.linear_functional(|l| {
                    Ok(lambda.iter().zip(l.iter()).map(|(x, &e)| x.pow(e)).product())
                })?;
                let (rhs, rhs_tabulated) = kernel_rhs(params, system, lambda)?;
                return Ok(KernelCheck { system, lhs, lhs_exact, rhs, rhs_tabulated, truncation: t, tail_bound: tail });
            }
        }
        if next > budget {
            return Err(Error::Budget { tolerance, budget: budget as usize });
        }
        t = next;
    }
}

fn kernel_rhs(params: &MeixnerParams, system: LaguerreSystem, lambda: &[Exact]) -> Result<(Exact, Exact)> {
    let l = multiple_laguerre(&params.laguerre_index(), system)?;
    let ratio = (Exact::one() - &params.p) / &params.p;
    let point: Vec<Exact> = lambda.iter().map(|x| x * &ratio).collect();
    let value = l.evaluate(&point)?;
    let derived = params.p.pow(params.n.total()) * &value;
    let tabulated = mv_meixner_norm_sq(params, system)? * value;
    Ok((derived, tabulated))
}
