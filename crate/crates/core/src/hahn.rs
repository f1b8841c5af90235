//! Hahn polynomials on {0, ..., N}, their posterior-mixture normalization, multivariate
//! Hahn polynomials on the discrete simplex, Bernstein–Bézier coefficients of the
//! simplex Jacobi polynomials, and the Hahn to Jacobi limit.

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::distributions::WeightSpec;
use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::index::{tail_sums, MultiIndex};
use crate::jacobi::{jacobi_r_raw, mv_jacobi, mv_jacobi_norm_sq, zeta_inv, SimplexJacobiIndex};
use crate::poly::{Basis, Poly};
use crate::special::{binomial, factorial, falling_factorial, multinomial, rising_factorial, rising_factorial_poly};

/// Parameters of a univariate Hahn polynomial of degree `n` on {0, ..., N}.
///
/// Either both of α, β are positive, or both are negative integers (the
/// Hypergeometric weight with α = -ε₁, β = -ε₂).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HahnParams {
    pub alpha: Exact,
    pub beta: Exact,
    pub big_n: u32,
    pub n: u32,
}

fn is_negative_integer(x: &Exact) -> bool {
    x.is_negative() && x.is_integer()
}

impl HahnParams {
    pub fn new(alpha: Exact, beta: Exact, big_n: u32, n: u32) -> Result<HahnParams> {
        let positive = alpha.is_positive() && beta.is_positive();
        let eps = is_negative_integer(&alpha) && is_negative_integer(&beta);
        if !positive && !eps {
            return Err(invalid("Hahn parameters must both be positive or both be negative integers"));
        }
        if n > big_n {
            return Err(Error::DegreeBound { degree: n, bound: big_n });
        }
        Ok(HahnParams { alpha, beta, big_n, n })
    }

    pub fn theta(&self) -> Exact {
        &self.alpha + &self.beta
    }

    pub fn is_eps_mode(&self) -> bool {
        self.alpha.is_negative()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HahnForm {
    /// The 3F2 series h_n.
    H,
    /// h_n normalized to equal 1 at r = N.
    Q,
}

fn falling_poly(coeffs: Vec<(u32, Exact)>) -> Poly {
    let terms = coeffs.into_iter().map(|(j, c)| (MultiIndex::from([j]), c));
    Poly::from_terms(1, Basis::FallingFactorial, terms)
        .expect("univariate indices")
        .convert_basis(Basis::Monomial)
}

/// h_n(N; N) = (-1)^n (β)_n/(α)_n.
pub fn hahn_value_at_n(p: &HahnParams) -> Exact {
    let v = rising_factorial(&p.beta, p.n) / rising_factorial(&p.alpha, p.n);
    if p.n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// h_n(r; N) = 3F2(-n, n+θ-1, -r; α, -N; 1) as a monomial-basis polynomial in r,
/// using (-r)_j = (-1)^j r_[j].
pub fn hahn_univariate(p: &HahnParams, form: HahnForm) -> Result<Poly> {
    let n = p.n;
    let big_n = -Exact::from(p.big_n);
    let b = Exact::from(n) + p.theta() - Exact::one();
    let mut coeffs = Vec::new();
    for j in 0..=n {
        let den = rising_factorial(&p.alpha, j) * rising_factorial(&big_n, j) * factorial(j);
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("Hahn series term {j}")));
        }
        let sign = if j % 2 == 1 { -Exact::one() } else { Exact::one() };
        let c = rising_factorial(&-Exact::from(n), j) * rising_factorial(&b, j) * sign / den;
        coeffs.push((j, c));
    }
    let h = falling_poly(coeffs);
    match form {
        HahnForm::H => Ok(h),
        HahnForm::Q => {
            let at_n = hahn_value_at_n(p);
            if at_n.is_zero() {
                return Err(Error::ZeroDenominator("h_n(N; N) vanishes".into()));
            }
            Ok(h.scale(&at_n.recip()))
        }
    }
}

/// Replaces x^k in a univariate polynomial by (a + r)_k / den(k), with `shift` giving
/// the argument a + r as a polynomial.
fn posterior_map(src: &Poly, shift: &Poly, den: impl Fn(u32) -> Exact) -> Result<Poly> {
    src.linear_map(shift.dim(), |k| {
        let d = den(k[0]);
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!("posterior moment of order {}", k[0])));
        }
        Ok(rising_factorial_poly(shift, k[0]).scale(&d.recip()))
    })
}

/// q̃_n(r; N) = E[R_n^{α,β}(X)] for X ~ Beta(α+r, β+N-r): x^k becomes (α+r)_k/(θ+N)_k.
pub fn hahn_tilde_univariate(alpha: &Exact, beta: &Exact, big_n: u32, n: u32) -> Result<Poly> {
    if n > big_n {
        return Err(Error::DegreeBound { degree: n, bound: big_n });
    }
    let r = jacobi_r_raw(alpha, beta, n)?;
    let tn = alpha + beta + Exact::from(big_n);
    posterior_map(&r, &Poly::univariate(&[alpha.clone(), Exact::one()]), |k| rising_factorial(&tn, k))
}

/// The factor relating q̃_n to q_n: (θ+N)_n/N_[n] as tabulated.
pub fn tilde_factor_tabulated(p: &HahnParams) -> Exact {
    rising_factorial(&(p.theta() + Exact::from(p.big_n)), p.n) / falling_factorial(&Exact::from(p.big_n), p.n)
}

/// The constant c with q̃_n = c·q_n, when the two are proportional.
pub fn tilde_ratio(p: &HahnParams) -> Result<Option<Exact>> {
    let qt = hahn_tilde_univariate(&p.alpha, &p.beta, p.big_n, p.n)?;
    let q = hahn_univariate(p, HahnForm::Q)?;
    Ok(proportionality(&qt, &q))
}

/// c with a = c·b, if it exists.
pub fn proportionality(a: &Poly, b: &Poly) -> Option<Exact> {
    let (k, bc) = b.terms().next()?;
    let c = a.coeff(k) / bc;
    if (a - &b.scale(&c)).is_zero() {
        Some(c)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HahnConstant {
    /// 1/u = E[h_n²] under DM_{α,β}.
    U,
    /// 1/w = E[q_n²].
    W,
    /// 1/ω = E[q̃_n²].
    Omega,
}

/// Tabulated orthogonality constants of the univariate Hahn forms.
pub fn hahn_constant(p: &HahnParams, which: HahnConstant) -> Result<Exact> {
    let n = p.n;
    let big_n = Exact::from(p.big_n);
    let theta = p.theta();
    let zinv = zeta_inv(&p.alpha, &p.beta, n)?;
    Ok(match which {
        HahnConstant::U => {
            if n == 0 {
                return Ok(Exact::one());
            }
            let den = binomial(p.big_n, n)
                * rising_factorial(&theta, n - 1)
                * (&theta + Exact::from(2 * n) - Exact::one())
                * rising_factorial(&p.alpha, n);
            if den.is_zero() {
                return Err(Error::ZeroDenominator("1/u".into()));
            }
            rising_factorial(&(&theta + &big_n), n) * rising_factorial(&p.beta, n) / den
        }
        HahnConstant::W => tilde_factor_tabulated(p) * zinv,
        HahnConstant::Omega => {
            falling_factorial(&big_n, n) / rising_factorial(&(&theta + &big_n), n) * zinv
        }
    })
}

/// q_n^{α,β}(r;N)·q_n^{β,α}(0;N) − q_n^{β,α}(N−r;N) as a polynomial in r.
pub fn hahn_symmetry_residual(p: &HahnParams) -> Result<Poly> {
    let swapped = HahnParams { alpha: p.beta.clone(), beta: p.alpha.clone(), big_n: p.big_n, n: p.n };
    let q = hahn_univariate(p, HahnForm::Q)?;
    let qs = hahn_univariate(&swapped, HahnForm::Q)?;
    let at0 = qs.evaluate(&[Exact::zero()])?;
    let reflected = qs.substitute(&[Poly::univariate(&[Exact::from(p.big_n), -Exact::one()])])?;
    Ok(&q.scale(&at0) - &reflected)
}

/// Index of a multivariate Hahn polynomial on {r : |r| = total}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MVHahnIndex {
    pub alpha: Vec<Exact>,
    pub n: MultiIndex,
    pub total: u32,
}

impl MVHahnIndex {
    pub fn new(alpha: Vec<Exact>, n: MultiIndex, total: u32) -> Result<MVHahnIndex> {
        if alpha.len() < 2 {
            return Err(invalid("the discrete simplex needs d >= 2"));
        }
        let positive = alpha.iter().all(Exact::is_positive);
        let eps = alpha.iter().all(is_negative_integer);
        if !positive && !eps {
            return Err(invalid("alpha must be all positive or all negative integers"));
        }
        if n.dim() != alpha.len() - 1 {
            return Err(Error::DimensionMismatch { expected: alpha.len() - 1, found: n.dim() });
        }
        if n.total() > total {
            return Err(Error::DegreeBound { degree: n.total(), bound: total });
        }
        Ok(MVHahnIndex { alpha, n, total })
    }

    /// The index for the Hypergeometric weight with parameter ε, using α = -ε.
    pub fn hypergeometric(eps: &[u32], n: MultiIndex, total: u32) -> Result<MVHahnIndex> {
        MVHahnIndex::new(eps.iter().map(|&e| -Exact::from(e)).collect(), n, total)
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_eps_mode(&self) -> bool {
        self.alpha[0].is_negative()
    }

    /// The weight under which the system is orthogonal.
    pub fn weight(&self) -> WeightSpec {
        if self.is_eps_mode() {
            let eps = self.alpha.iter().map(|a| (-a).to_u32().expect("negative integer")).collect();
            WeightSpec::Hypergeometric { eps, total: self.total }
        } else {
            WeightSpec::DirichletMultinomial { alpha: self.alpha.clone(), total: self.total }
        }
    }

    fn alpha_total(&self) -> Exact {
        self.alpha.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HahnRoute {
    /// E[R_n^α] under the posterior Dirichlet(α + r).
    Mixture,
    /// Product of univariate q̃ factors with the Pochhammer prefactor.
    Product,
}

/// Simplex Jacobi polynomial in free coordinates, allowing formal (negative) parameters.
fn formal_mv_jacobi(alpha: &[Exact], n: &MultiIndex) -> Result<Poly> {
    if alpha.iter().all(Exact::is_positive) {
        return Ok(mv_jacobi(&SimplexJacobiIndex::new(alpha.to_vec(), n.clone())?));
    }
    let tails = tail_sums(alpha);
    let params: Vec<(Exact, Exact)> = (0..alpha.len() - 1).map(|j| (alpha[j].clone(), tails[j + 1].clone())).collect();
    crate::jacobi::stick_polynomial(&params, n.entries())
}

fn mixture_route(idx: &MVHahnIndex) -> Result<Poly> {
    let dim = idx.d() - 1;
    let r = formal_mv_jacobi(&idx.alpha, &idx.n)?;
    let base = idx.alpha_total() + Exact::from(idx.total);
    r.linear_map(dim, |k| {
        let den = rising_factorial(&base, k.total());
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("posterior Dirichlet moment of order {}", k.total())));
        }
        let mut acc = Poly::constant(dim, den.recip());
        for (i, &e) in k.iter().enumerate() {
            if e > 0 {
                let shift = Poly::affine(idx.alpha[i].clone(), &unit(dim, i));
                acc = &acc * &rising_factorial_poly(&shift, e);
            }
        }
        Ok(acc)
    })
}

fn unit(dim: usize, i: usize) -> Vec<Exact> {
    (0..dim).map(|k| if k == i { Exact::one() } else { Exact::zero() }).collect()
}

fn product_route(idx: &MVHahnIndex) -> Result<Poly> {
    let d = idx.d();
    let dim = d - 1;
    let tails = tail_sums(&idx.alpha);
    let n = &idx.n;
    let total = Exact::from(idx.total);
    let mut out = Poly::one(dim);
    // R_{j-1} = |r| - r_1 - ... - r_{j-1}, kept as an affine polynomial.
    let mut r_prev = Poly::constant(dim, total.clone());
    for j in 0..dim {
        let nj = n[j];
        let tail = n.tail(j + 1);
        let a = &idx.alpha[j];
        let b = &tails[j + 1] + Exact::from(2 * tail);
        let jac = jacobi_r_raw(a, &b, nj)?;
        let shift = Poly::affine(a.clone(), &unit(dim, j));
        // X_j = A_{j-1} + R_{j-1} + N_j, the posterior total of the j-th stick.
        let x = &r_prev + &Poly::constant(dim, &tails[j] + Exact::from(tail));
        let factor = if j == 0 {
            let x0 = x.constant_term();
            posterior_map(&jac, &shift, |k| rising_factorial(&x0, k))?
        } else {
            // (X)_{n_j} Σ c_k (a+r_j)_k/(X)_k = Σ c_k (a+r_j)_k (X+k)_{n_j-k}.
            jac.linear_map(dim, |k| {
                let k = k[0];
                let shifted = &x + &Poly::constant(dim, Exact::from(k));
                Ok(&rising_factorial_poly(&shift, k) * &rising_factorial_poly(&shifted, nj - k))
            })?
        };
        out = &out * &factor;
        r_prev = &r_prev - &Poly::var(dim, j);
    }
    let lead = rising_factorial(&(idx.alpha_total() + total), n.tail(1));
    if lead.is_zero() {
        return Err(Error::ZeroDenominator("product-route prefactor".into()));
    }
    Ok(out.scale(&lead.recip()))
}

/// q̃_n^α(r; |r|) in the free lattice variables r_1, ..., r_{d-1}.
pub fn mv_hahn(idx: &MVHahnIndex, route: HahnRoute) -> Result<Poly> {
    match route {
        HahnRoute::Mixture => mixture_route(idx),
        HahnRoute::Product => product_route(idx),
    }
}

/// 1/ω_n = |r|_[|n|]/(|α|+|r|)_{|n|} · E[(R_n^α)²].
pub fn mv_hahn_constant(idx: &MVHahnIndex) -> Result<Exact> {
    if idx.is_eps_mode() {
        return Err(Error::Unsupported("the Dirichlet norm is undefined for negative parameters".into()));
    }
    let n = idx.n.total();
    let jac = mv_jacobi_norm_sq(&SimplexJacobiIndex::new(idx.alpha.clone(), idx.n.clone())?);
    Ok(falling_factorial(&Exact::from(idx.total), n) / rising_factorial(&(idx.alpha_total() + Exact::from(idx.total)), n)
        * jac)
}

/// The constant c with product route = c·mixture route.
pub fn product_to_mixture_ratio(idx: &MVHahnIndex) -> Result<Option<Exact>> {
    Ok(proportionality(&mv_hahn(idx, HahnRoute::Product)?, &mv_hahn(idx, HahnRoute::Mixture)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BbFactor {
    /// ω_r from the Hahn orthogonality constant.
    Tabulated,
    /// (|α|+|r|)_{|r|}/|r|!, the factor that makes the reconstruction exact.
    Derived,
}

pub fn bb_factor(alpha: &[Exact], r: &MultiIndex, which: BbFactor) -> Result<Exact> {
    let total = r.total();
    let base = alpha.iter().sum::<Exact>() + Exact::from(total);
    match which {
        BbFactor::Tabulated => Ok(mv_hahn_constant(&MVHahnIndex::new(alpha.to_vec(), r.clone(), total)?)?.recip()),
        BbFactor::Derived => Ok(rising_factorial(&base, total) / factorial(total)),
    }
}

/// Σ_{|m|=|r|} q̃_r(m; |r|) B_x(m), the Bernstein–Bézier sum without its leading factor.
pub fn bb_sum(alpha: &[Exact], r: &MultiIndex) -> Result<Poly> {
    let d = alpha.len();
    let dim = d - 1;
    let total = r.total();
    let q = mv_hahn(&MVHahnIndex::new(alpha.to_vec(), r.clone(), total)?, HahnRoute::Mixture)?;
    let last = &Poly::one(dim) - &Poly::affine(Exact::zero(), &vec![Exact::one(); dim]);
    let mut out = Poly::zero(dim, Basis::Monomial);
    for m in MultiIndex::with_total(d, total) {
        let coeff = q.evaluate(&m.iter().take(dim).map(|&x| Exact::from(x)).collect::<Vec<_>>())?;
        if coeff.is_zero() {
            continue;
        }
        let mut b = Poly::constant(dim, multinomial(&m) * coeff);
        for i in 0..dim {
            b = &b * &Poly::var(dim, i).pow(m[i]);
        }
        b = &b * &last.pow(m[dim]);
        out = &out + &b;
    }
    Ok(out)
}

/// R_r^α rebuilt from its Bernstein–Bézier coefficients.
pub fn bb_reconstruct_jacobi(alpha: &[Exact], r: &MultiIndex, which: BbFactor) -> Result<Poly> {
    Ok(bb_sum(alpha, r)?.scale(&bb_factor(alpha, r, which)?))
}

/// One row of the Hahn to Jacobi convergence table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    pub sup_error: f64,
    pub constant_gap: f64,
}

/// Round half up to the nearest integer lattice point N·z.
fn lattice_round(big_n: u32, z: &Exact) -> Result<u32> {
    let v = Exact::from(big_n) * z + Exact::new(1, 2);
    let floor = v.numer().clone().div_floor(v.denom());
    floor.try_into().map_err(|_| Error::OutsideSupport(format!("grid point {z}")))
}

/// sup over the grid of |q_n(round(Nz); N) − R_n(z)| and |w_{N,n} − ζ_n|, for each N.
pub fn hahn_jacobi_limit_diag(alpha: &Exact, beta: &Exact, n: u32, ns: &[u32], grid: &[Exact]) -> Result<Vec<LimitRow>> {
    if grid.iter().any(|z| z.is_negative() || z > &Exact::one()) {
        return Err(Error::OutsideSupport("grid points must lie in [0, 1]".into()));
    }
    let jac = jacobi_r_raw(alpha, beta, n)?;
    let zeta = zeta_inv(alpha, beta, n)?.recip();
    ns.iter()
        .map(|&big_n| {
            let p = HahnParams::new(alpha.clone(), beta.clone(), big_n, n)?;
            let q = hahn_univariate(&p, HahnForm::Q)?;
            let mut sup = 0.0f64;
            for z in grid {
                let r = Exact::from(lattice_round(big_n, z)?);
                let err = (q.evaluate(&[r])? - jac.evaluate(std::slice::from_ref(z))?).abs();
                sup = sup.max(err.to_f64());
            }
            let w = hahn_constant(&p, HahnConstant::W)?.recip();
            Ok(LimitRow { big_n, n, sup_error: sup, constant_gap: (w - &zeta).abs().to_f64() })
        })
        .collect()
}

pub fn limit_csv(rows: &[LimitRow]) -> String {
    let mut out = String::from("N,n,sup_error,constant_gap\n");
    for r in rows {
        out.push_str(&format!("{},{},{:e},{:e}\n", r.big_n, r.n, r.sup_error, r.constant_gap));
    }
    out
}
