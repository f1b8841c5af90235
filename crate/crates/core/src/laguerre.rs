//! Laguerre polynomials, the product and star multiple-Laguerre systems on the
//! positive orthant, Erdélyi's expansion, connection coefficients between the two
//! systems, and the truncated size-biased (GEM) Laguerre system.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{dm_pmf, WeightSpec};
use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::index::MultiIndex;
use crate::jacobi::{gem_jacobi, gem_jacobi_norm_sq, mv_jacobi, mv_jacobi_constant, mv_jacobi_norm_sq, GemVariant, SimplexJacobiIndex};
use crate::poly::Poly;
use crate::special::{factorial, hyp_coefficients, lauricella_fa_poly, lauricella_fa_terminating, rising_factorial};

/// L_n^a(y) = (a)_n/n! · 1F1(-n; a; y).
pub fn laguerre_univariate(a: &Exact, n: u32) -> Result<Poly> {
    if !a.is_positive() {
        return Err(invalid(format!("Laguerre parameter must be positive, got {a:?}")));
    }
    let coeffs = hyp_coefficients(&[-Exact::from(n)], std::slice::from_ref(a), n)?;
    Ok(Poly::univariate(&coeffs).scale(&(rising_factorial(a, n) / factorial(n))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaguerreIndex {
    pub alpha: Vec<Exact>,
    pub scale: Exact,
    pub n: MultiIndex,
}

impl LaguerreIndex {
    pub fn new(alpha: Vec<Exact>, scale: Exact, n: MultiIndex) -> Result<LaguerreIndex> {
        if alpha.is_empty() {
            return Err(invalid("alpha must be non-empty"));
        }
        if alpha.iter().any(|a| !a.is_positive()) || !scale.is_positive() {
            return Err(invalid("alpha entries and the scale must be positive"));
        }
        if n.dim() != alpha.len() {
            return Err(Error::DimensionMismatch { expected: alpha.len(), found: n.dim() });
        }
        Ok(LaguerreIndex { alpha, scale, n })
    }

    /// Index with unit scale.
    pub fn unit(alpha: Vec<Exact>, n: MultiIndex) -> Result<LaguerreIndex> {
        LaguerreIndex::new(alpha, Exact::one(), n)
    }

    pub fn d(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha_total(&self) -> Exact {
        self.alpha.iter().sum()
    }

    /// n' = (n_1, ..., n_{d-1}).
    pub fn n_prime(&self) -> MultiIndex {
        MultiIndex::new(self.n.entries()[..self.d() - 1].to_vec())
    }

    pub fn n_last(&self) -> u32 {
        self.n[self.d() - 1]
    }

    pub fn weight(&self) -> WeightSpec {
        WeightSpec::GammaProduct { alpha: self.alpha.clone(), scale: self.scale.clone() }
    }

    fn with_n(&self, n: MultiIndex) -> LaguerreIndex {
        LaguerreIndex { alpha: self.alpha.clone(), scale: self.scale.clone(), n }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaguerreSystem {
    Product,
    Star,
}

/// |y|^deg · R(y/|y|) in d variables, for R in the first d-1 simplex coordinates.
pub(crate) fn homogenize_simplex(r: &Poly, deg: u32, d: usize) -> Result<Poly> {
    let images: Vec<Poly> = (0..d - 1).map(|i| Poly::var(d, i)).collect();
    r.homogenize(deg, &images, &sum_of_vars(d))
}

fn sum_of_vars(d: usize) -> Poly {
    Poly::affine(Exact::zero(), &vec![Exact::one(); d])
}

fn rescale(p: Poly, scale: &Exact) -> Result<Poly> {
    if scale.is_one() {
        return Ok(p);
    }
    let inv = scale.recip();
    let images: Vec<Poly> = (0..p.dim()).map(|i| Poly::var(p.dim(), i).scale(&inv)).collect();
    p.substitute(&images)
}

/// The unscaled star polynomial L_{n_d}^{|α|+2|n'|}(|y|)·|y|^{|n'|}·R_{n'}^α(y/|y|).
fn star_unscaled(idx: &LaguerreIndex) -> Result<Poly> {
    let d = idx.d();
    if d == 1 {
        return laguerre_univariate(&idx.alpha[0], idx.n[0]);
    }
    let np = idx.n_prime();
    let k = np.total();
    let r = mv_jacobi(&SimplexJacobiIndex::new(idx.alpha.clone(), np)?);
    let hom = homogenize_simplex(&r, k, d)?;
    let outer = laguerre_univariate(&(idx.alpha_total() + Exact::from(2 * k)), idx.n_last())?;
    Ok(&outer.substitute(&[sum_of_vars(d)])? * &hom)
}

pub fn multiple_laguerre(idx: &LaguerreIndex, system: LaguerreSystem) -> Result<Poly> {
    let d = idx.d();
    let p = match system {
        LaguerreSystem::Product => {
            let mut acc = Poly::one(d);
            for i in 0..d {
                let l = laguerre_univariate(&idx.alpha[i], idx.n[i])?;
                acc = &acc * &l.embed(d, &[i])?;
            }
            acc
        }
        LaguerreSystem::Star => star_unscaled(idx)?,
    };
    rescale(p, &idx.scale)
}

/// Tabulated constants: Π(α_i)_{n_i}/n_i! for the product system and
/// (|α|)_{2|n'|}² / (n_d! ζ_{n'}) for the star system, with 1/ζ the tabulated Jacobi constant.
pub fn multiple_laguerre_constant(idx: &LaguerreIndex, system: LaguerreSystem) -> Result<Exact> {
    match system {
        LaguerreSystem::Product => Ok(product_norm_sq(&idx.alpha, &idx.n)),
        LaguerreSystem::Star => {
            if idx.d() == 1 {
                return Ok(product_norm_sq(&idx.alpha, &idx.n));
            }
            let np = idx.n_prime();
            let zeta_inv = mv_jacobi_constant(&SimplexJacobiIndex::new(idx.alpha.clone(), np.clone())?)?;
            let poch = rising_factorial(&idx.alpha_total(), 2 * np.total());
            Ok(&poch * &poch * zeta_inv / factorial(idx.n_last()))
        }
    }
}

/// E[L_n²] derived from the Gamma-Dirichlet factorization:
/// (|α|)_{2|n'|} (|α|+2|n'|)_{n_d}/n_d! · E[(R_{n'}^α)²] for the star system.
pub fn multiple_laguerre_norm_sq(idx: &LaguerreIndex, system: LaguerreSystem) -> Result<Exact> {
    if system == LaguerreSystem::Product || idx.d() == 1 {
        return Ok(product_norm_sq(&idx.alpha, &idx.n));
    }
    let np = idx.n_prime();
    let k = np.total();
    let a = idx.alpha_total();
    let nd = idx.n_last();
    let jac = mv_jacobi_norm_sq(&SimplexJacobiIndex::new(idx.alpha.clone(), np)?);
    Ok(rising_factorial(&a, 2 * k) * rising_factorial(&(&a + Exact::from(2 * k)), nd) / factorial(nd) * jac)
}

fn product_norm_sq(alpha: &[Exact], n: &[u32]) -> Exact {
    alpha.iter().zip(n).map(|(a, &k)| rising_factorial(a, k) / factorial(k)).product()
}

/// φ_s = F_A(a; -n, -s; α, a; k, 1) Π(α_j)_{n_j}/n_j! for s = 0..|n|.
pub fn erdelyi_expand(a: &Exact, alpha: &[Exact], n: &MultiIndex, k: &[Exact]) -> Result<Vec<Exact>> {
    if !a.is_positive() {
        return Err(invalid("the target parameter must be positive"));
    }
    if alpha.len() != n.dim() || k.len() != n.dim() {
        return Err(Error::DimensionMismatch { expected: n.dim(), found: alpha.len().min(k.len()) });
    }
    let pre = product_norm_sq(alpha, n);
    let mut c: Vec<Exact> = alpha.to_vec();
    c.push(a.clone());
    let mut z: Vec<Exact> = k.to_vec();
    z.push(Exact::one());
    (0..=n.total())
        .map(|s| {
            let mut b: Vec<Exact> = n.iter().map(|&x| -Exact::from(x)).collect();
            b.push(-Exact::from(s));
            Ok(lauricella_fa_terminating(a, &b, &c, &z)? * &pre)
        })
        .collect()
}

/// Π_j L_{n_j}^{α_j}(k_j z) − Σ_s φ_s L_s^a(z) as a polynomial in z.
pub fn erdelyi_residual(a: &Exact, alpha: &[Exact], n: &MultiIndex, k: &[Exact]) -> Result<Poly> {
    let phi = erdelyi_expand(a, alpha, n, k)?;
    let mut lhs = Poly::one(1);
    for ((al, &nj), kj) in alpha.iter().zip(n.iter()).zip(k) {
        let l = laguerre_univariate(al, nj)?;
        lhs = &lhs * &l.substitute(&[Poly::univariate(&[Exact::zero(), kj.clone()])])?;
    }
    for (s, ph) in phi.iter().enumerate() {
        lhs = &lhs - &laguerre_univariate(a, s as u32)?.scale(ph);
    }
    Ok(lhs)
}

/// L_n^{a+b}(x+y) − Σ_j L_j^a(x) L_{n-j}^b(y) as a polynomial in (x, y).
pub fn addition_residual(a: &Exact, b: &Exact, n: u32) -> Result<Poly> {
    let xy = Poly::affine(Exact::zero(), &[Exact::one(), Exact::one()]);
    let mut out = laguerre_univariate(&(a + b), n)?.substitute(&[xy])?;
    for j in 0..=n {
        let lx = laguerre_univariate(a, j)?.embed(2, &[0])?;
        let ly = laguerre_univariate(b, n - j)?.embed(2, &[1])?;
        out = &out - &(&lx * &ly);
    }
    Ok(out)
}

/// Which Kronecker delta multiplies the Lauricella representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaConvention {
    /// δ_{mn}: zero unless m = n.
    Literal,
    /// δ_{|m||n|}: zero unless |m| = |n|.
    Degree,
}

/// Upper limit of the outer j-sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumRange {
    /// j = 0..=|n|.
    Full,
    /// j = 0..=|n'|.
    Reduced,
}

/// Third lower parameter of the F_A inside d_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CParam {
    /// |α| + 2i, varying with the summation index.
    Printed,
    /// |α| + 2|n'|, the parameter of the outer Laguerre factor.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LauricellaVariant {
    pub delta: DeltaConvention,
    pub range: SumRange,
    pub cparam: CParam,
    /// Weight d_j by E[(L_j^{|α|})²] = (|α|)_j/j!.
    pub norm_factor: bool,
}

impl LauricellaVariant {
    /// The formula as printed, read with the degree-level delta.
    pub const PRINTED: LauricellaVariant =
        LauricellaVariant { delta: DeltaConvention::Degree, range: SumRange::Full, cparam: CParam::Printed, norm_factor: false };

    /// The representation obtained by redoing the Gamma-Dirichlet conditioning step.
    pub const DERIVED: LauricellaVariant =
        LauricellaVariant { delta: DeltaConvention::Degree, range: SumRange::Full, cparam: CParam::Derived, norm_factor: true };

    /// Every combination of the four switches.
    pub fn all() -> Vec<LauricellaVariant> {
        let mut out = Vec::new();
        for delta in [DeltaConvention::Degree, DeltaConvention::Literal] {
            for range in [SumRange::Full, SumRange::Reduced] {
                for cparam in [CParam::Printed, CParam::Derived] {
                    for norm_factor in [false, true] {
                        out.push(LauricellaVariant { delta, range, cparam, norm_factor });
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!(
            "delta={},range={},c={},norm={}",
            match self.delta {
                DeltaConvention::Literal => "mn",
                DeltaConvention::Degree => "degree",
            },
            match self.range {
                SumRange::Full => "full",
                SumRange::Reduced => "reduced",
            },
            match self.cparam {
                CParam::Printed => "printed",
                CParam::Derived => "derived",
            },
            if self.norm_factor { "yes" } else { "no" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum ConnectionMethod {
    /// E[L*_n L_m] from Gamma-product moments.
    Oracle,
    /// Mixture of Lauricella functions against the Dirichlet weight.
    Lauricella(LauricellaVariant),
    /// Sum of multivariate Hahn values. With `norm_factor` unset this is the factorized
    /// printed form b·DM(m)·Σ_r (-m)_r/r! q̃(r); with it set the j-sum is kept inside the
    /// r-sum with weight (-|r|)_j/(|α|)_j, which is what the Lauricella expansion yields.
    Hahn(LauricellaVariant),
}

impl ConnectionMethod {
    pub fn label(&self) -> String {
        match self {
            ConnectionMethod::Oracle => "oracle".to_string(),
            ConnectionMethod::Lauricella(v) => format!("lauricella[{}]", v.label()),
            ConnectionMethod::Hahn(v) => format!("hahn[{}]", v.label()),
        }
    }
}

/// d_j of the Lauricella representation.
pub fn lauricella_dj(idx: &LaguerreIndex, j: u32, cparam: CParam) -> Result<Exact> {
    let a = idx.alpha_total();
    let k = idx.n_prime().total();
    let nd = idx.n_last();
    let pre = rising_factorial(&a, k) * rising_factorial(&(&a + Exact::from(2 * k)), nd) / factorial(nd);
    let mut acc = Exact::zero();
    for i in 0..=k {
        let c_mid = match cparam {
            CParam::Printed => &a + Exact::from(2 * i),
            CParam::Derived => &a + Exact::from(2 * k),
        };
        let fa = lauricella_fa_terminating(
            &a,
            &[-Exact::from(i), -Exact::from(nd), -Exact::from(j)],
            &[a.clone(), c_mid, a.clone()],
            &[Exact::one(), Exact::one(), Exact::one()],
        )?;
        acc += rising_factorial(&-Exact::from(k), i) / factorial(i) * &pre * fa;
    }
    Ok(acc)
}

fn outer_weights(idx: &LaguerreIndex, v: &LauricellaVariant) -> Result<Vec<Exact>> {
    let upper = match v.range {
        SumRange::Full => idx.n.total(),
        SumRange::Reduced => idx.n_prime().total(),
    };
    let a = idx.alpha_total();
    (0..=upper)
        .map(|j| {
            let dj = lauricella_dj(idx, j, v.cparam)?;
            Ok(if v.norm_factor { dj * rising_factorial(&a, j) / factorial(j) } else { dj })
        })
        .collect()
}

fn delta_vanishes(idx: &LaguerreIndex, m: &MultiIndex, delta: DeltaConvention) -> bool {
    match delta {
        DeltaConvention::Literal => *m != idx.n,
        DeltaConvention::Degree => m.total() != idx.n.total(),
    }
}

fn cstar_lauricella(idx: &LaguerreIndex, m: &MultiIndex, v: &LauricellaVariant) -> Result<Exact> {
    if delta_vanishes(idx, m, v.delta) {
        return Ok(Exact::zero());
    }
    let d = idx.d();
    let a = idx.alpha_total();
    let r = mv_jacobi(&SimplexJacobiIndex::new(idx.alpha.clone(), idx.n_prime())?);
    let dir = WeightSpec::Dirichlet { alpha: idx.alpha.clone() };
    let mut z: Vec<Poly> = (0..d - 1).map(|i| Poly::var(d - 1, i)).collect();
    z.push(&Poly::one(d - 1) - &sum_of_vars(d - 1));
    z.push(Poly::one(d - 1));
    let mut c: Vec<Exact> = idx.alpha.clone();
    c.push(a.clone());
    let mut acc = Exact::zero();
    for (j, w) in outer_weights(idx, v)?.into_iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let mut b: Vec<Exact> = m.iter().map(|&x| -Exact::from(x)).collect();
        b.push(-Exact::from(j as u32));
        let fa = lauricella_fa_poly(&a, &b, &c, &z)?;
        acc += w * dir.expectation(&(&r * &fa))?;
    }
    Ok(rising_factorial(&a, idx.n.total()) / factorial(idx.n.total()) * dm_pmf(&idx.alpha, m) * acc)
}

/// q̃_{n'}(r; |r|): the expectation of R_{n'}^α under Dirichlet(α + r).
fn hahn_value(alpha: &[Exact], n_prime: &MultiIndex, r: &MultiIndex) -> Result<Exact> {
    let post: Vec<Exact> = alpha.iter().zip(r.iter()).map(|(a, &x)| a + Exact::from(x)).collect();
    let p = mv_jacobi(&SimplexJacobiIndex::new(alpha.to_vec(), n_prime.clone())?);
    WeightSpec::Dirichlet { alpha: post }.expectation(&p)
}

fn cstar_hahn(idx: &LaguerreIndex, m: &MultiIndex, v: &LauricellaVariant) -> Result<Exact> {
    if delta_vanishes(idx, m, v.delta) {
        return Ok(Exact::zero());
    }
    let a = idx.alpha_total();
    let total = idx.n.total();
    let np = idx.n_prime();
    let weights: Vec<Exact> = {
        let upper = match v.range {
            SumRange::Full => total,
            SumRange::Reduced => np.total(),
        };
        (0..=upper).map(|j| lauricella_dj(idx, j, v.cparam)).collect::<Result<_>>()?
    };
    let lead = rising_factorial(&a, total) / factorial(total) * dm_pmf(&idx.alpha, m);
    let b = weights
        .iter()
        .enumerate()
        .map(|(j, dj)| dj / (factorial(j as u32) * rising_factorial(&a, j as u32)))
        .sum::<Exact>();
    let mut acc = Exact::zero();
    for r in MultiIndex::up_to_total(idx.d(), total) {
        let neg: Exact = m
            .iter()
            .zip(r.iter())
            .map(|(&mi, &ri)| rising_factorial(&-Exact::from(mi), ri) / factorial(ri))
            .product();
        if neg.is_zero() {
            continue;
        }
        let q = hahn_value(&idx.alpha, &np, &r)?;
        let inner = if v.norm_factor {
            let rr = Exact::from(r.total());
            weights
                .iter()
                .enumerate()
                .map(|(j, dj)| {
                    let j = j as u32;
                    dj * rising_factorial(&a, j) / factorial(j) * rising_factorial(&-rr.clone(), j)
                        / rising_factorial(&a, j)
                })
                .sum::<Exact>()
        } else {
            b.clone()
        };
        acc += neg * q * inner;
    }
    Ok(lead * acc)
}

/// c*_m(n) between the star and product systems.
pub fn connection_cstar(idx: &LaguerreIndex, m: &MultiIndex, method: ConnectionMethod) -> Result<Exact> {
    if m.dim() != idx.d() {
        return Err(Error::DimensionMismatch { expected: idx.d(), found: m.dim() });
    }
    match method {
        ConnectionMethod::Oracle => {
            if m.total() != idx.n.total() {
                return Ok(Exact::zero());
            }
            let star = multiple_laguerre(idx, LaguerreSystem::Star)?;
            let prod = multiple_laguerre(&idx.with_n(m.clone()), LaguerreSystem::Product)?;
            idx.weight().expectation(&(&star * &prod))
        }
        _ if idx.d() < 2 => Err(Error::Unsupported("the Lauricella and Hahn representations need d >= 2".into())),
        ConnectionMethod::Lauricella(v) => cstar_lauricella(idx, m, &v),
        ConnectionMethod::Hahn(v) => cstar_hahn(idx, m, &v),
    }
}

/// L*_n − Σ_{|m|=|n|} φ_m c*_m(n) L_m with c* from the oracle, as a polynomial.
pub fn expansion_residual(idx: &LaguerreIndex) -> Result<Poly> {
    let mut out = multiple_laguerre(idx, LaguerreSystem::Star)?;
    for m in MultiIndex::with_total(idx.d(), idx.n.total()) {
        let c = connection_cstar(idx, &m, ConnectionMethod::Oracle)?;
        if c.is_zero() {
            continue;
        }
        let mi = idx.with_n(m);
        let phi = multiple_laguerre_norm_sq(&mi, LaguerreSystem::Product)?.recip();
        out = &out - &multiple_laguerre(&mi, LaguerreSystem::Product)?.scale(&(phi * c));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionDiscrepancy {
    pub m: MultiIndex,
    pub oracle: Exact,
    pub value: Exact,
}

/// c*_m(n) over all |m| = |n| for one method, with entries that differ from the oracle listed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionTable {
    pub source: MultiIndex,
    pub method: String,
    pub entries: BTreeMap<String, Exact>,
    pub discrepancies: Vec<ConnectionDiscrepancy>,
}

pub fn connection_table(idx: &LaguerreIndex, method: ConnectionMethod) -> Result<ConnectionTable> {
    let targets = MultiIndex::with_total(idx.d(), idx.n.total());
    let rows: Vec<(MultiIndex, Exact, Exact)> = targets
        .into_par_iter()
        .map(|m| {
            let oracle = connection_cstar(idx, &m, ConnectionMethod::Oracle)?;
            let value = if method == ConnectionMethod::Oracle {
                oracle.clone()
            } else {
                connection_cstar(idx, &m, method)?
            };
            Ok((m, oracle, value))
        })
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    let mut discrepancies = Vec::new();
    for (m, oracle, value) in rows {
        entries.insert(m.to_string(), value.clone());
        if oracle != value {
            discrepancies.push(ConnectionDiscrepancy { m, oracle, value });
        }
    }
    Ok(ConnectionTable { source: idx.n.clone(), method: method.label(), entries, discrepancies })
}

/// L_{|m|}^{θ+2|n'|}(s)·s^{|n'|}·R̈_{n'}(y/s) in the variables (y_1, ..., y_{d-1}, s),
/// where s stands for the total mass |y|.
pub fn gem_laguerre(theta: &Exact, d: usize, m_total: u32, n_prime: &MultiIndex) -> Result<Poly> {
    let r = gem_jacobi(theta, d, n_prime, GemVariant::Limit)?;
    let k = n_prime.total();
    let images: Vec<Poly> = (0..d - 1).map(|i| Poly::var(d, i)).collect();
    let s = Poly::var(d, d - 1);
    let hom = r.homogenize(k, &images, &s)?;
    let outer = laguerre_univariate(&(theta + Exact::from(2 * k)), m_total)?;
    Ok(&outer.substitute(&[s])? * &hom)
}

/// (θ)_{2|n'|}(θ+2|n'|)_{|m|}/|m|! · E[R̈_{n'}²].
pub fn gem_laguerre_norm_sq(theta: &Exact, d: usize, m_total: u32, n_prime: &MultiIndex) -> Result<Exact> {
    let k = n_prime.total();
    let jac = gem_jacobi_norm_sq(theta, d, n_prime, GemVariant::Limit)?;
    Ok(rising_factorial(theta, 2 * k) * rising_factorial(&(theta + Exact::from(2 * k)), m_total)
        / factorial(m_total)
        * jac)
}

/// Replaces the total-mass variable of a GEM Laguerre polynomial by the sum of the coordinates.
pub fn gem_laguerre_in_coordinates(p: &Poly) -> Result<Poly> {
    let d = p.dim();
    let mut images: Vec<Poly> = (0..d - 1).map(|i| Poly::var(d, i)).collect();
    images.push(sum_of_vars(d));
    p.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn ints(v: &[i64]) -> Vec<Exact> {
        v.iter().map(|&x| Exact::from(x)).collect()
    }

    #[test]
    fn univariate_examples() {
        let a = q(5, 2);
        assert_eq!(laguerre_univariate(&a, 0).unwrap(), Poly::one(1));
        assert_eq!(laguerre_univariate(&a, 1).unwrap(), Poly::univariate(&[a.clone(), q(-1, 1)]));
        let l1 = laguerre_univariate(&a, 1).unwrap();
        let w = WeightSpec::GammaProduct { alpha: vec![a.clone()], scale: Exact::one() };
        assert_eq!(w.expectation(&(&l1 * &l1)).unwrap(), a);
    }

    #[test]
    fn star_examples() {
        let alpha = vec![q(3, 2), q(1, 3)];
        let idx = LaguerreIndex::unit(alpha.clone(), MultiIndex::from([1, 0])).unwrap();
        let p = multiple_laguerre(&idx, LaguerreSystem::Star).unwrap();
        let expect = Poly::affine(Exact::zero(), &[Exact::one(), -(&alpha[0] / &alpha[1])]);
        assert_eq!(p, expect);
        let idx = LaguerreIndex::unit(ints(&[1, 1]), MultiIndex::from([1, 0])).unwrap();
        let p = multiple_laguerre(&idx, LaguerreSystem::Star).unwrap();
        assert_eq!(idx.weight().expectation(&p).unwrap(), Exact::zero());
        assert_eq!(idx.weight().expectation(&(&p * &p)).unwrap(), q(2, 1));
        assert_eq!(multiple_laguerre_norm_sq(&idx, LaguerreSystem::Star).unwrap(), q(2, 1));
        assert_eq!(multiple_laguerre_constant(&idx, LaguerreSystem::Star).unwrap(), q(12, 1));
    }

    #[test]
    fn product_constant_example() {
        let idx = LaguerreIndex::unit(ints(&[2]), MultiIndex::from([1])).unwrap();
        assert_eq!(multiple_laguerre_constant(&idx, LaguerreSystem::Product).unwrap(), q(2, 1));
    }

    #[test]
    fn erdelyi_examples() {
        let a = q(5, 2);
        let k1 = q(2, 3);
        let alpha = vec![q(3, 2)];
        let phi = erdelyi_expand(&a, &alpha, &MultiIndex::from([0]), std::slice::from_ref(&k1)).unwrap();
        assert_eq!(phi, vec![Exact::one()]);
        let phi = erdelyi_expand(&a, &alpha, &MultiIndex::from([1]), std::slice::from_ref(&k1)).unwrap();
        assert_eq!(phi, vec![&alpha[0] - &k1 * &a, k1.clone()]);
        let r = erdelyi_residual(&a, &ints(&[2, 1]), &MultiIndex::from([1, 2]), &[q(1, 3), q(3, 4)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn addition_formula() {
        for n in 0..=3 {
            assert!(addition_residual(&q(1, 2), &q(7, 3), n).unwrap().is_zero());
        }
    }

    #[test]
    fn connection_examples() {
        let idx = LaguerreIndex::unit(ints(&[2, 1]), MultiIndex::from([0, 1])).unwrap();
        let c = connection_cstar(&idx, &MultiIndex::from([1, 0]), ConnectionMethod::Oracle).unwrap();
        assert_eq!(c, q(2, 1));
        let c = connection_cstar(&idx, &MultiIndex::from([2, 0]), ConnectionMethod::Oracle).unwrap();
        assert_eq!(c, Exact::zero());
        assert!(expansion_residual(&idx).unwrap().is_zero());
    }

    #[test]
    fn derived_lauricella_matches_oracle() {
        let idx = LaguerreIndex::unit(ints(&[2, 1]), MultiIndex::from([1, 1])).unwrap();
        let t = connection_table(&idx, ConnectionMethod::Lauricella(LauricellaVariant::DERIVED)).unwrap();
        assert!(t.discrepancies.is_empty(), "{:?}", t.discrepancies);
        let t = connection_table(&idx, ConnectionMethod::Hahn(LauricellaVariant::DERIVED)).unwrap();
        assert!(t.discrepancies.is_empty(), "{:?}", t.discrepancies);
    }

    #[test]
    fn gem_example() {
        let one = Exact::one();
        assert_eq!(gem_laguerre(&one, 2, 0, &MultiIndex::from([0])).unwrap(), Poly::one(2));
        let p = gem_laguerre(&one, 2, 0, &MultiIndex::from([1])).unwrap();
        assert_eq!(p, Poly::affine(Exact::zero(), &[q(2, 1), q(-1, 1)]));
        let y = gem_laguerre_in_coordinates(&p).unwrap();
        assert_eq!(y, Poly::affine(Exact::zero(), &[q(1, 1), q(-1, 1)]));
        let w = WeightSpec::GammaProduct { alpha: ints(&[1, 1]), scale: one.clone() };
        assert_eq!(w.expectation(&y).unwrap(), Exact::zero());
        let g = WeightSpec::GemGamma { theta: one, sticks: 1 };
        assert_eq!(g.expectation(&p).unwrap(), Exact::zero());
    }
}
