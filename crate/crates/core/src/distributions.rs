//! Weight measures, their probability functions, and exact moment functionals.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::index::MultiIndex;
use crate::poly::{Basis, Poly};
use crate::special::{binomial, factorial, falling_factorial, multinomial, rising_factorial};

/// A weight measure together with its parameters.
///
/// Polynomials paired with a weight use these coordinates:
/// - `Dirichlet`, `SizeBiasedDirichlet`: x_1..x_k with k <= d (x_d = 1 - Σ x_i when k = d-1).
/// - `DirichletMultinomial`, `Hypergeometric`: r_1..r_k with k <= d, |r| fixed.
/// - `GammaProduct`, `NegBinProduct`: all d coordinates (fewer are padded with zero exponents).
/// - `GemTruncated`: x_1..x_k with k <= sticks.
/// - `GemGamma`: y_1..y_k followed by the total mass |y|, k <= sticks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightSpec {
    Dirichlet { alpha: Vec<Exact> },
    DirichletMultinomial { alpha: Vec<Exact>, total: u32 },
    GammaProduct { alpha: Vec<Exact>, scale: Exact },
    NegBinProduct { alpha: Vec<Exact>, p: Exact },
    /// Multivariate hypergeometric law of a sample of size `total` drawn from urns of sizes `eps`.
    Hypergeometric { eps: Vec<u32>, total: u32 },
    /// Stick-breaking with independent Beta(1, θ) sticks.
    GemTruncated { theta: Exact, sticks: usize },
    /// Size-biased symmetric Dirichlet: sticks B_j ~ Beta(θ/d + 1, (d-j)θ/d), j < d.
    SizeBiasedDirichlet { theta: Exact, d: usize },
    /// Size-biased Gamma point process: |Y| ~ Gamma(θ) independent of a GEM(θ) split.
    GemGamma { theta: Exact, sticks: usize },
}

/// A probability value, exact whenever the normalizing constants reduce to rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    Exact(Exact),
    /// IEEE double value with the stated relative error bound.
    Float { value: f64, rel_error: f64 },
}

impl Density {
    pub fn to_f64(&self) -> f64 {
        match self {
            Density::Exact(e) => e.to_f64(),
            Density::Float { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&Exact> {
        match self {
            Density::Exact(e) => Some(e),
            Density::Float { .. } => None,
        }
    }
}

const FLOAT_REL_ERROR: f64 = 1e-12;

fn require_positive(v: &[Exact], what: &str) -> Result<()> {
    if v.is_empty() {
        return Err(invalid(format!("{what} must be non-empty")));
    }
    if let Some(x) = v.iter().find(|x| !x.is_positive()) {
        return Err(invalid(format!("{what} entries must be positive, got {x:?}")));
    }
    Ok(())
}

fn sum(v: &[Exact]) -> Exact {
    v.iter().sum()
}

/// Π_j (a_j)_{n_j} (b_j)_{N_j} / (a_j + b_j)_{n_j + N_j}, the moment of
/// x_j = B_j Π_{i<j}(1 - B_i) with independent B_j ~ Beta(a_j, b_j).
/// N_j counts all later exponents, including one past the last stick.
pub fn stick_moment(params: &[(Exact, Exact)], n: &[u32]) -> Exact {
    let mut acc = Exact::one();
    for (j, (a, b)) in params.iter().enumerate() {
        let nj = n.get(j).copied().unwrap_or(0);
        let tail: u32 = n.iter().skip(j + 1).sum();
        if nj == 0 && tail == 0 {
            break;
        }
        acc *= rising_factorial(a, nj) * rising_factorial(b, tail) / rising_factorial(&(a + b), nj + tail);
    }
    acc
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            WeightSpec::Dirichlet { alpha } | WeightSpec::DirichletMultinomial { alpha, .. } => {
                require_positive(alpha, "alpha")?;
                if alpha.len() < 2 {
                    return Err(invalid("simplex weights need d >= 2"));
                }
                Ok(())
            }
            WeightSpec::GammaProduct { alpha, scale } => {
                require_positive(alpha, "alpha")?;
                require_positive(std::slice::from_ref(scale), "scale")
            }
            WeightSpec::NegBinProduct { alpha, p } => {
                require_positive(alpha, "alpha")?;
                if !p.is_positive() || *p >= Exact::one() {
                    return Err(invalid(format!("p must lie strictly inside (0,1), got {p:?}")));
                }
                Ok(())
            }
            WeightSpec::Hypergeometric { eps, total } => {
                if eps.len() < 2 || eps.contains(&0) {
                    return Err(invalid("eps needs d >= 2 positive integers"));
                }
                if *total > eps.iter().sum::<u32>() {
                    return Err(invalid("sample size exceeds the population"));
                }
                Ok(())
            }
            WeightSpec::GemTruncated { theta, sticks } | WeightSpec::GemGamma { theta, sticks } => {
                require_positive(std::slice::from_ref(theta), "theta")?;
                if *sticks == 0 {
                    return Err(invalid("at least one stick is required"));
                }
                Ok(())
            }
            WeightSpec::SizeBiasedDirichlet { theta, d } => {
                require_positive(std::slice::from_ref(theta), "theta")?;
                if *d < 2 {
                    return Err(invalid("size-biased Dirichlet needs d >= 2"));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightSpec::Dirichlet { .. } => "dirichlet",
            WeightSpec::DirichletMultinomial { .. } => "dirichlet_multinomial",
            WeightSpec::GammaProduct { .. } => "gamma_product",
            WeightSpec::NegBinProduct { .. } => "neg_bin_product",
            WeightSpec::Hypergeometric { .. } => "hypergeometric",
            WeightSpec::GemTruncated { .. } => "gem_truncated",
            WeightSpec::SizeBiasedDirichlet { .. } => "size_biased_dirichlet",
            WeightSpec::GemGamma { .. } => "gem_gamma",
        }
    }

    /// The basis in which moments are available in closed form.
    pub fn natural_basis(&self) -> Basis {
        match self {
            WeightSpec::DirichletMultinomial { .. }
            | WeightSpec::NegBinProduct { .. }
            | WeightSpec::Hypergeometric { .. } => Basis::FallingFactorial,
            _ => Basis::Monomial,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.natural_basis() == Basis::FallingFactorial
    }

    /// Largest polynomial dimension the weight accepts.
    pub fn max_poly_dim(&self) -> usize {
        match self {
            WeightSpec::Dirichlet { alpha }
            | WeightSpec::DirichletMultinomial { alpha, .. }
            | WeightSpec::GammaProduct { alpha, .. }
            | WeightSpec::NegBinProduct { alpha, .. } => alpha.len(),
            WeightSpec::Hypergeometric { eps, .. } => eps.len(),
            WeightSpec::GemTruncated { sticks, .. } => *sticks,
            WeightSpec::SizeBiasedDirichlet { d, .. } => *d,
            WeightSpec::GemGamma { sticks, .. } => *sticks + 1,
        }
    }

    pub fn check_poly_dim(&self, dim: usize) -> Result<()> {
        let max = self.max_poly_dim();
        let ok = match self {
            WeightSpec::GemGamma { .. } => dim >= 1 && dim <= max,
            _ => dim <= max,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: max, found: dim })
        }
    }

    pub(crate) fn size_biased_params(theta: &Exact, d: usize) -> Vec<(Exact, Exact)> {
        let dd = Exact::from(d as u64);
        (1..d)
            .map(|j| (theta / &dd + Exact::one(), theta * Exact::from((d - j) as u64) / &dd))
            .collect()
    }

    /// Beta parameters of the independent sticks, for the stick-breaking weights.
    pub fn stick_params(&self) -> Option<Vec<(Exact, Exact)>> {
        match self {
            WeightSpec::Dirichlet { alpha } => {
                let tails = crate::index::tail_sums(alpha);
                Some((0..alpha.len() - 1).map(|j| (alpha[j].clone(), tails[j + 1].clone())).collect())
            }
            WeightSpec::GemTruncated { theta, sticks } | WeightSpec::GemGamma { theta, sticks } => {
                Some(vec![(Exact::one(), theta.clone()); *sticks])
            }
            WeightSpec::SizeBiasedDirichlet { theta, d } => Some(Self::size_biased_params(theta, *d)),
            _ => None,
        }
    }

    /// Exact expectation of the basis element indexed by `index`.
    pub fn moment(&self, index: &MultiIndex, basis: Basis) -> Result<Exact> {
        if basis != self.natural_basis() {
            return Err(Error::WrongBasis("moment basis does not match the weight"));
        }
        self.check_poly_dim(index.dim())?;
        let n = index.entries();
        Ok(match self {
            WeightSpec::Dirichlet { alpha } => {
                let num: Exact = alpha.iter().zip(n).map(|(a, &k)| rising_factorial(a, k)).product();
                num / rising_factorial(&sum(alpha), index.total())
            }
            WeightSpec::GammaProduct { alpha, scale } => {
                let num: Exact = alpha.iter().zip(n).map(|(a, &k)| rising_factorial(a, k)).product();
                num * scale.pow(index.total())
            }
            WeightSpec::DirichletMultinomial { alpha, total } => {
                let num: Exact = alpha.iter().zip(n).map(|(a, &k)| rising_factorial(a, k)).product();
                falling_factorial(&Exact::from(*total), index.total()) * num
                    / rising_factorial(&sum(alpha), index.total())
            }
            WeightSpec::Hypergeometric { eps, total } => {
                let l = index.total();
                if l > *total {
                    return Ok(Exact::zero());
                }
                let neg: Vec<Exact> = eps.iter().map(|&e| -Exact::from(e)).collect();
                let num: Exact = neg.iter().zip(n).map(|(a, &k)| rising_factorial(a, k)).product();
                falling_factorial(&Exact::from(*total), l) * num / rising_factorial(&sum(&neg), l)
            }
            WeightSpec::NegBinProduct { alpha, p } => {
                let ratio = p / (Exact::one() - p);
                let num: Exact = alpha.iter().zip(n).map(|(a, &k)| rising_factorial(a, k)).product();
                num * ratio.pow(index.total())
            }
            WeightSpec::GemTruncated { .. } | WeightSpec::SizeBiasedDirichlet { .. } => {
                stick_moment(&self.stick_params().unwrap(), n)
            }
            WeightSpec::GemGamma { theta, .. } => {
                let (ys, s) = n.split_at(n.len() - 1);
                let mass = ys.iter().sum::<u32>() + s[0];
                rising_factorial(theta, mass) * stick_moment(&self.stick_params().unwrap(), ys)
            }
        })
    }

    /// E[p] by moment reduction in the natural basis.
    pub fn expectation(&self, p: &Poly) -> Result<Exact> {
        self.check_poly_dim(p.dim())?;
        let basis = self.natural_basis();
        let q = p.convert_basis(basis);
        q.linear_functional(|k| self.moment(k, basis))
    }

    /// The finite support in full coordinates, when there is one.
    pub fn support(&self) -> Option<Vec<MultiIndex>> {
        match self {
            WeightSpec::DirichletMultinomial { alpha, total } => Some(MultiIndex::with_total(alpha.len(), *total)),
            WeightSpec::Hypergeometric { eps, total } => Some(
                MultiIndex::with_total(eps.len(), *total)
                    .into_iter()
                    .filter(|m| m.iter().zip(eps).all(|(&k, &e)| k <= e))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Probability mass or density at `point`.
    pub fn pmf_or_density(&self, point: &[Exact]) -> Result<Density> {
        self.validate()?;
        match self {
            WeightSpec::Dirichlet { alpha } => dirichlet_density(alpha, point),
            WeightSpec::DirichletMultinomial { alpha, total } => {
                let r = lattice_point(point, alpha.len(), Some(*total))?;
                Ok(Density::Exact(dm_pmf(alpha, &r)))
            }
            WeightSpec::Hypergeometric { eps, total } => {
                let r = lattice_point(point, eps.len(), Some(*total))?;
                Ok(Density::Exact(hypergeometric_pmf(eps, &r)))
            }
            WeightSpec::NegBinProduct { alpha, p } => {
                let r = lattice_point(point, alpha.len(), None)?;
                let mut acc = Density::Exact(Exact::one());
                for (a, &k) in alpha.iter().zip(r.iter()) {
                    acc = mul_density(acc, neg_bin_pmf(a, p, k));
                }
                Ok(acc)
            }
            WeightSpec::GammaProduct { alpha, scale } => {
                if point.len() != alpha.len() {
                    return Err(Error::DimensionMismatch { expected: alpha.len(), found: point.len() });
                }
                let mut log = 0.0;
                for (a, y) in alpha.iter().zip(point) {
                    if !y.is_positive() {
                        return Err(Error::OutsideSupport(format!("gamma coordinate {y:?} must be positive")));
                    }
                    let (a, y, s) = (a.to_f64(), y.to_f64(), scale.to_f64());
                    log += (a - 1.0) * y.ln() - y / s - ln_gamma(a) - a * s.ln();
                }
                Ok(Density::Float { value: log.exp(), rel_error: FLOAT_REL_ERROR })
            }
            WeightSpec::GemTruncated { .. } | WeightSpec::SizeBiasedDirichlet { .. } => {
                stick_density(&self.stick_params().unwrap(), point)
            }
            WeightSpec::GemGamma { .. } => Err(Error::Unsupported(
                "density of the size-biased Gamma point process is not tabulated".into(),
            )),
        }
    }
}

fn mul_density(a: Density, b: Density) -> Density {
    match (a, b) {
        (Density::Exact(x), Density::Exact(y)) => Density::Exact(x * y),
        (x, y) => Density::Float { value: x.to_f64() * y.to_f64(), rel_error: FLOAT_REL_ERROR },
    }
}

fn lattice_point(point: &[Exact], d: usize, total: Option<u32>) -> Result<MultiIndex> {
    let mut v = Vec::with_capacity(d);
    for x in point {
        let k = x.to_u32().ok_or_else(|| Error::OutsideSupport(format!("{x:?} is not a non-negative integer")))?;
        v.push(k);
    }
    match total {
        Some(t) if v.len() + 1 == d => {
            let s: u32 = v.iter().sum();
            if s > t {
                return Err(Error::OutsideSupport(format!("counts sum to {s} > {t}")));
            }
            v.push(t - s);
        }
        _ => {}
    }
    if v.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: v.len() });
    }
    if let Some(t) = total {
        if v.iter().sum::<u32>() != t {
            return Err(Error::OutsideSupport(format!("counts must sum to {t}")));
        }
    }
    Ok(MultiIndex::new(v))
}

fn simplex_point(point: &[Exact], d: usize) -> Result<Vec<Exact>> {
    let mut x = point.to_vec();
    if x.len() + 1 == d {
        let s: Exact = x.iter().sum();
        x.push(Exact::one() - s);
    }
    if x.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: x.len() });
    }
    if x.iter().any(|v| !v.is_positive()) || x.iter().sum::<Exact>() != Exact::one() {
        return Err(Error::OutsideSupport("not an interior point of the simplex".into()));
    }
    Ok(x)
}

fn dirichlet_density(alpha: &[Exact], point: &[Exact]) -> Result<Density> {
    let x = simplex_point(point, alpha.len())?;
    if alpha.iter().all(Exact::is_integer) {
        // Γ(|α|)/ΠΓ(α_i) is a ratio of factorials and every exponent is a non-negative integer.
        let total = alpha.iter().sum::<Exact>().to_u32().unwrap();
        let mut v = factorial(total - 1);
        for (a, xi) in alpha.iter().zip(&x) {
            let k = a.to_u32().unwrap();
            v = v * xi.pow(k - 1) / factorial(k - 1);
        }
        return Ok(Density::Exact(v));
    }
    let total: f64 = alpha.iter().map(Exact::to_f64).sum();
    let mut log = ln_gamma(total);
    for (a, xi) in alpha.iter().zip(&x) {
        let a = a.to_f64();
        log += (a - 1.0) * xi.to_f64().ln() - ln_gamma(a);
    }
    Ok(Density::Float { value: log.exp(), rel_error: FLOAT_REL_ERROR })
}

fn beta_density(a: &Exact, b: &Exact, x: &Exact) -> Density {
    if let (Some(ka), Some(kb)) = (a.to_u32(), b.to_u32()) {
        if ka >= 1 && kb >= 1 {
            let norm = factorial(ka + kb - 1) / (factorial(ka - 1) * factorial(kb - 1));
            return Density::Exact(norm * x.pow(ka - 1) * (Exact::one() - x).pow(kb - 1));
        }
    }
    let (a, b, x) = (a.to_f64(), b.to_f64(), x.to_f64());
    let log = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + (a - 1.0) * x.ln() + (b - 1.0) * (1.0 - x).ln();
    Density::Float { value: log.exp(), rel_error: FLOAT_REL_ERROR }
}

/// Joint density of the first k coordinates of a stick-breaking vector.
fn stick_density(params: &[(Exact, Exact)], point: &[Exact]) -> Result<Density> {
    if point.len() > params.len() {
        return Err(Error::DimensionMismatch { expected: params.len(), found: point.len() });
    }
    let mut acc = Density::Exact(Exact::one());
    let mut remaining = Exact::one();
    for ((a, b), x) in params.iter().zip(point) {
        if !x.is_positive() || *x >= remaining {
            return Err(Error::OutsideSupport(format!("stick coordinate {x:?} leaves the simplex")));
        }
        let stick = x / &remaining;
        acc = mul_density(acc, beta_density(a, b, &stick));
        acc = mul_density(acc, Density::Exact(remaining.recip()));
        remaining -= x;
    }
    Ok(acc)
}

/// Dirichlet-Multinomial probability of the count vector r.
pub fn dm_pmf(alpha: &[Exact], r: &MultiIndex) -> Exact {
    let num: Exact = alpha.iter().zip(r.iter()).map(|(a, &k)| rising_factorial(a, k)).product();
    multinomial(r) * num / rising_factorial(&alpha.iter().sum(), r.total())
}

/// Multivariate hypergeometric probability Π C(ε_i, r_i) / C(|ε|, |r|).
pub fn hypergeometric_pmf(eps: &[u32], r: &MultiIndex) -> Exact {
    let num: Exact = eps.iter().zip(r.iter()).map(|(&e, &k)| binomial(e, k)).product();
    num / binomial(eps.iter().sum(), r.total())
}

/// Multinomial probability |n|!/Πn_i! Π x_i^{n_i}.
pub fn multinomial_pmf(x: &[Exact], n: &MultiIndex) -> Result<Exact> {
    if x.len() != n.dim() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: n.dim() });
    }
    Ok(multinomial(n) * x.iter().zip(n.iter()).map(|(xi, &k)| xi.pow(k)).product::<Exact>())
}

/// Negative binomial mass (α)_k/k! p^k (1-p)^α; exact when α is an integer.
pub fn neg_bin_pmf(alpha: &Exact, p: &Exact, k: u32) -> Density {
    let head = rising_factorial(alpha, k) / factorial(k) * p.pow(k);
    match alpha.to_u32() {
        Some(a) => Density::Exact(head * (Exact::one() - p).pow(a)),
        None => Density::Float {
            value: head.to_f64() * (1.0 - p.to_f64()).powf(alpha.to_f64()),
            rel_error: FLOAT_REL_ERROR,
        },
    }
}

/// Poisson mass e^{-λ} λ^k / k!, in double precision (e^{-λ} is irrational for λ > 0).
pub fn poisson_pmf(lambda: &Exact, k: u32) -> f64 {
    let l = lambda.to_f64();
    if l == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * l.ln() - l - ln_gamma(k as f64 + 1.0)).exp()
}

/// An integer partition with parts in non-increasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.is_empty() {
            return Err(Error::Partition("a partition needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Partition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition("parts must be non-increasing".into()));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from the positive entries of a count vector, sorted.
    pub fn from_counts(counts: &[u32]) -> Result<Partition> {
        let mut parts: Vec<u32> = counts.iter().copied().filter(|&c| c > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts k.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicities b_i = number of parts equal to i.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut b = BTreeMap::new();
        for &p in &self.parts {
            *b.entry(p).or_insert(0) += 1;
        }
        b
    }

    /// All partitions of n in reverse lexicographic order ([n] first).
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n, n, &mut cur, &mut out);
        out
    }

    fn multinomial(&self) -> Exact {
        multinomial(&MultiIndex::new(self.parts.clone()))
    }

    fn multiplicity_factor(&self) -> Exact {
        self.multiplicities().values().map(|&b| factorial(b)).product()
    }
}

fn gen_partitions(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        if !cur.is_empty() {
            out.push(Partition { parts: cur.clone() });
        }
        return;
    }
    for p in (1..=n.min(max)).rev() {
        cur.push(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&MultiIndex::new(self.parts.clone()), f)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ewens sampling formula C(|n|; r) / Π b_i! · θ^k / (θ)_{|n|} · Π (r_j - 1)!.
pub fn esf_pmf(theta: &Exact, part: &Partition) -> Result<Exact> {
    if !theta.is_positive() {
        return Err(invalid("theta must be positive"));
    }
    let k = part.len() as u32;
    let m = theta.pow(k) / rising_factorial(theta, part.total())
        * part.parts().iter().map(|&r| factorial(r - 1)).product::<Exact>();
    Ok(part.multinomial() / part.multiplicity_factor() * m)
}

/// Ranked sampling formula for the symmetric Dirichlet-Multinomial with d classes:
/// d_[k]/d^k · C(|n|; r) / Π b_i! · |α|^k / (|α|)_{|n|} · Π (|α|/d + 1)_{r_j - 1}.
pub fn esf_symmetric_pmf(alpha_total: &Exact, d: u32, part: &Partition) -> Result<Exact> {
    if !alpha_total.is_positive() || d == 0 {
        return Err(invalid("need |alpha| > 0 and d >= 1"));
    }
    let k = part.len() as u32;
    let dd = Exact::from(d);
    let prefactor = falling_factorial(&dd, k) / dd.pow(k);
    let shifted = alpha_total / &dd + Exact::one();
    let m = alpha_total.pow(k) / rising_factorial(alpha_total, part.total())
        * part.parts().iter().map(|&r| rising_factorial(&shifted, r - 1)).product::<Exact>();
    Ok(prefactor * part.multinomial() / part.multiplicity_factor() * m)
}

/// Law of the ranked counts of a symmetric Dirichlet-Multinomial, by summing the
/// unranked mass over every count vector with the given ranked profile.
pub fn ranked_dm_brute_force(alpha_total: &Exact, d: u32, part: &Partition) -> Exact {
    let alpha = vec![alpha_total / Exact::from(d); d as usize];
    MultiIndex::with_total(d as usize, part.total())
        .into_iter()
        .filter(|r| Partition::from_counts(r).map(|p| p == *part).unwrap_or(false))
        .map(|r| dm_pmf(&alpha, &r))
        .sum()
}
