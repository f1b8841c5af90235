//! Shifted Jacobi polynomials on [0,1], multivariate Jacobi polynomials on the
//! simplex built from stick-breaking, and their size-biased (GEM) variants.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::index::{tail_sums, MultiIndex};
use crate::poly::Poly;
use crate::special::{factorial, hyp_coefficients, rising_factorial, rising_factorial_signed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: Exact,
    pub beta: Exact,
}

impl JacobiParams {
    pub fn new(alpha: Exact, beta: Exact) -> Result<JacobiParams> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(invalid(format!("Jacobi parameters must be positive, got ({alpha:?}, {beta:?})")));
        }
        Ok(JacobiParams { alpha, beta })
    }

    pub fn theta(&self) -> Exact {
        &self.alpha + &self.beta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiForm {
    /// Monic form P_n.
    P,
    /// Normalized so that R_n(1) = 1.
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobiConstant {
    /// 1/η_n = E[P_n²] under Beta(α, β).
    Eta,
    /// 1/ζ_n = E[R_n²] under Beta(α, β).
    Zeta,
    /// P_n(1).
    ValueAtOne,
}

/// R_n^{(a,b)}(x) = 2F1(-n, n+a+b-1; b; 1-x) for arbitrary rational a, b.
///
/// Fails when b is a non-positive integer hit by the series.
pub fn jacobi_r_raw(a: &Exact, b: &Exact, n: u32) -> Result<Poly> {
    let theta = a + b;
    let coeffs = hyp_coefficients(&[-Exact::from(n), Exact::from(n) + &theta - Exact::one()], std::slice::from_ref(b), n)?;
    // Σ_j t_j (1-x)^j expanded in powers of x.
    let one_minus_x = Poly::univariate(&[Exact::one(), -Exact::one()]);
    let mut out = Poly::zero(1, crate::poly::Basis::Monomial);
    let mut pow = Poly::one(1);
    for c in coeffs {
        out = &out + &pow.scale(&c);
        pow = &pow * &one_minus_x;
    }
    Ok(out)
}

/// P_n(1) = (β)_n / (θ+n-1)_n.
pub fn jacobi_value_at_one(p: &JacobiParams, n: u32) -> Exact {
    rising_factorial(&p.beta, n) / rising_factorial(&(p.theta() + Exact::from(n) - Exact::one()), n)
}

pub fn jacobi_univariate(p: &JacobiParams, n: u32, form: JacobiForm) -> Poly {
    let r = jacobi_r_raw(&p.alpha, &p.beta, n).expect("positive parameters never hit a zero denominator");
    match form {
        JacobiForm::R => r,
        JacobiForm::P => r.scale(&jacobi_value_at_one(p, n)),
    }
}

/// 1/ζ_n = n! (α)_n / ((β)_n (θ)_{n-1} (θ+2n-1)), equal to 1 at n = 0.
pub fn zeta_inv(a: &Exact, b: &Exact, n: u32) -> Result<Exact> {
    if n == 0 {
        return Ok(Exact::one());
    }
    let theta = a + b;
    let den = rising_factorial(b, n)
        * rising_factorial(&theta, n - 1)
        * (&theta + Exact::from(2 * n) - Exact::one());
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("1/zeta_{n} at ({a:?}, {b:?})")));
    }
    Ok(factorial(n) * rising_factorial(a, n) / den)
}

pub fn jacobi_constants(p: &JacobiParams, n: u32, which: JacobiConstant) -> Exact {
    let theta = p.theta();
    match which {
        JacobiConstant::Eta => {
            factorial(n) * rising_factorial(&p.alpha, n) * rising_factorial(&p.beta, n)
                / (rising_factorial(&theta, 2 * n)
                    * rising_factorial(&(&theta + Exact::from(n) - Exact::one()), n))
        }
        JacobiConstant::Zeta => zeta_inv(&p.alpha, &p.beta, n).expect("positive parameters"),
        JacobiConstant::ValueAtOne => jacobi_value_at_one(p, n),
    }
}

/// Index of a multivariate Jacobi polynomial on the (d-1)-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJacobiIndex {
    pub alpha: Vec<Exact>,
    pub n: MultiIndex,
}

impl SimplexJacobiIndex {
    pub fn new(alpha: Vec<Exact>, n: MultiIndex) -> Result<SimplexJacobiIndex> {
        if alpha.len() < 2 {
            return Err(invalid("the simplex needs d >= 2"));
        }
        if alpha.iter().any(|a| !a.is_positive()) {
            return Err(invalid("alpha entries must be positive"));
        }
        if n.dim() != alpha.len() - 1 {
            return Err(Error::DimensionMismatch { expected: alpha.len() - 1, found: n.dim() });
        }
        Ok(SimplexJacobiIndex { alpha, n })
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    /// N_j = n_{j+1} + ... + n_{d-1}, with j counted from 1 (N_0 = |n|).
    pub fn n_tail(&self, j: usize) -> u32 {
        self.n.tail(j)
    }

    /// A_j = α_{j+1} + ... + α_d, with j counted from 1 (A_0 = |α|).
    pub fn a_tail(&self, j: usize) -> Exact {
        tail_sums(&self.alpha)[j].clone()
    }

    /// Stick parameters (α_j, A_j) of the Dirichlet weight.
    pub fn stick_params(&self) -> Vec<(Exact, Exact)> {
        let tails = tail_sums(&self.alpha);
        (0..self.d() - 1).map(|j| (self.alpha[j].clone(), tails[j + 1].clone())).collect()
    }
}

/// Π_j R_{n_j}^{(a_j, b_j + 2N_j)}(x_j/(1-s_{j-1})) (1-s_{j-1})^{n_j} in `n.len()` variables,
/// for stick-breaking weights with independent Beta(a_j, b_j) sticks.
pub fn stick_polynomial(params: &[(Exact, Exact)], n: &[u32]) -> Result<Poly> {
    let dim = n.len();
    if params.len() < dim {
        return Err(Error::Truncation(format!("{} sticks for an index of length {dim}", params.len())));
    }
    let mut out = Poly::one(dim);
    let mut s = Poly::zero(dim, crate::poly::Basis::Monomial);
    for j in 0..dim {
        let tail: u32 = n[j + 1..].iter().sum();
        let (a, b) = &params[j];
        let r = jacobi_r_raw(a, &(b + Exact::from(2 * tail)), n[j])?;
        let v = &Poly::one(dim) - &s;
        let u = Poly::var(dim, j);
        let factor = Poly::compose_ratio_clear(&r, n[j], &u, &v)?;
        out = &out * &factor;
        s = &s + &u;
    }
    Ok(out)
}

/// E[R_n²] for the stick polynomial with independent Beta(a_j, b_j) sticks:
/// Π_j (b_j)_{2N_j}/(a_j+b_j)_{2N_j} · 1/ζ_{n_j}^{(a_j, b_j+2N_j)}.
pub fn stick_norm_sq(params: &[(Exact, Exact)], n: &[u32]) -> Result<Exact> {
    let mut acc = Exact::one();
    for j in 0..n.len() {
        let tail: u32 = n[j + 1..].iter().sum();
        let (a, b) = &params[j];
        acc *= rising_factorial(b, 2 * tail) / rising_factorial(&(a + b), 2 * tail);
        acc *= zeta_inv(a, &(b + Exact::from(2 * tail)), n[j])?;
    }
    Ok(acc)
}

/// R_n^α on the simplex, a polynomial in x_1..x_{d-1} of degree |n|.
pub fn mv_jacobi(idx: &SimplexJacobiIndex) -> Poly {
    stick_polynomial(&idx.stick_params(), idx.n.entries()).expect("positive parameters")
}

/// The tabulated product formula for 1/ζ_n^α:
/// Π_j n_j! (α_j)_{n_j} / ((A_{j-1})_{n_j-1} (A_{j-1}+2N_{j-1}-1) (A_j+2N_j)_{n_j}).
pub fn mv_jacobi_constant(idx: &SimplexJacobiIndex) -> Result<Exact> {
    let tails = tail_sums(&idx.alpha);
    let mut acc = Exact::one();
    for j in 1..idx.d() {
        let nj = idx.n[j - 1];
        let a_prev = &tails[j - 1];
        let n_prev = idx.n_tail(j - 1);
        let n_cur = idx.n_tail(j);
        let tail_term = a_prev + Exact::from(2 * n_prev) - Exact::one();
        // (A)_{n_j-1}(A+2N-1) at n_j = 0 is the Gamma ratio (A+2N-1)/(A-1), which is 1 when N = 0.
        let den_left = if nj == 0 && n_prev == 0 {
            Exact::one()
        } else {
            rising_factorial_signed(a_prev, nj as i64 - 1)? * tail_term
        };
        let den = den_left * rising_factorial(&(&tails[j] + Exact::from(2 * n_cur)), nj);
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("tabulated constant at {}", idx.n)));
        }
        acc *= factorial(nj) * rising_factorial(&idx.alpha[j - 1], nj) / den;
    }
    Ok(acc)
}

/// E[(R_n^α)²] under Dirichlet(α), from the Beta integrals of each stick factor.
pub fn mv_jacobi_norm_sq(idx: &SimplexJacobiIndex) -> Exact {
    stick_norm_sq(&idx.stick_params(), idx.n.entries()).expect("positive parameters")
}

/// Values of R_n^α at the vertices e_1, ..., e_d of the simplex.
pub fn vertex_values(idx: &SimplexJacobiIndex) -> Vec<Exact> {
    let p = mv_jacobi(idx);
    let dim = idx.d() - 1;
    (0..idx.d())
        .map(|v| {
            let point: Vec<Exact> = (0..dim).map(|i| if i == v { Exact::one() } else { Exact::zero() }).collect();
            p.evaluate(&point).expect("dimension matches")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GemVariant {
    /// Size-biased symmetric Dirichlet with d atoms.
    FiniteSymmetric,
    /// GEM limit with independent Beta(1, θ) sticks, truncated at depth d.
    Limit,
}

/// Stick parameters of the size-biased weight behind each GEM variant.
pub fn gem_stick_params(theta: &Exact, d: usize, variant: GemVariant) -> Vec<(Exact, Exact)> {
    match variant {
        GemVariant::FiniteSymmetric => crate::distributions::WeightSpec::size_biased_params(theta, d),
        GemVariant::Limit => vec![(Exact::one(), theta.clone()); d.saturating_sub(1)],
    }
}

fn gem_index(d: usize, n: &MultiIndex) -> Result<MultiIndex> {
    if d < 2 {
        return Err(invalid("truncation depth must be at least 2"));
    }
    n.resized(d - 1)
        .map_err(|_| Error::Truncation(format!("index {n} has support beyond the first {} coordinates", d - 1)))
}

/// Orthogonal polynomials for the size-biased weights, in x_1..x_{d-1}.
pub fn gem_jacobi(theta: &Exact, d: usize, n: &MultiIndex, variant: GemVariant) -> Result<Poly> {
    if !theta.is_positive() {
        return Err(invalid("theta must be positive"));
    }
    let n = gem_index(d, n)?;
    stick_polynomial(&gem_stick_params(theta, d, variant), n.entries())
}

/// E[R̈_n²] under the matching size-biased weight.
pub fn gem_jacobi_norm_sq(theta: &Exact, d: usize, n: &MultiIndex, variant: GemVariant) -> Result<Exact> {
    let n = gem_index(d, n)?;
    stick_norm_sq(&gem_stick_params(theta, d, variant), n.entries())
}

/// The diffusion generator on the simplex in the free coordinates x_1..x_{d-1}:
/// (1/2) Σ x_i(δ_ij - x_j) ∂_i∂_j + (1/2) Σ (α_i - |α| x_i) ∂_i.
pub fn simplex_generator(alpha: &[Exact], p: &Poly) -> Result<Poly> {
    let dim = alpha.len() - 1;
    if p.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    let total: Exact = alpha.iter().sum();
    let half = Exact::new(1, 2);
    let mut out = Poly::zero(dim, crate::poly::Basis::Monomial);
    for i in 0..dim {
        let xi = Poly::var(dim, i);
        let di = p.derivative(i, 1)?;
        for j in 0..dim {
            let dij = di.derivative(j, 1)?;
            let coeff = if i == j {
                &xi - &(&xi * &xi)
            } else {
                -&(&xi * &Poly::var(dim, j))
            };
            out = &out + &(&coeff * &dij).scale(&half);
        }
        let drift = Poly::affine(alpha[i].clone(), &(0..dim).map(|k| if k == i { -&total } else { Exact::zero() }).collect::<Vec<_>>());
        out = &out + &(&drift * &di).scale(&half);
    }
    Ok(out)
}

/// Outcome of applying the d = 2 generator to P_n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCheck {
    pub n: u32,
    /// L₂P_n + n(n+θ-1)P_n.
    pub residual: Poly,
    pub residual_is_zero: bool,
    pub claimed_eigenvalue: Exact,
    /// λ with L₂P_n = λP_n, when P_n is an eigenfunction.
    pub observed_eigenvalue: Option<Exact>,
}

pub fn generator_eigencheck(p: &JacobiParams, n: u32) -> EigenCheck {
    let pn = jacobi_univariate(p, n, JacobiForm::P);
    let lp = simplex_generator(&[p.alpha.clone(), p.beta.clone()], &pn).expect("dimension 1");
    let claimed = -(Exact::from(n) * (Exact::from(n) + p.theta() - Exact::one()));
    let residual = &lp - &pn.scale(&claimed);
    // P_n is monic, so the eigenvalue candidate is the leading coefficient of L₂P_n.
    let lead = lp.coeff(&MultiIndex::from([n]));
    let observed = if (&lp - &pn.scale(&lead)).is_zero() { Some(lead) } else { None };
    EigenCheck { n, residual_is_zero: residual.is_zero(), residual, claimed_eigenvalue: claimed, observed_eigenvalue: observed }
}
