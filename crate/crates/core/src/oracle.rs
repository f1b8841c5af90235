//! Exact inner products, Gram matrices with closed-form comparison, and Fourier expansion.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::WeightSpec;
use crate::error::{invalid, Error, Result};
use crate::exact::Exact;
use crate::hahn::{mv_hahn, mv_hahn_constant, HahnRoute, MVHahnIndex};
use crate::index::MultiIndex;
use crate::jacobi::{gem_jacobi, gem_jacobi_norm_sq, mv_jacobi, mv_jacobi_constant, mv_jacobi_norm_sq, GemVariant, SimplexJacobiIndex};
use crate::laguerre::{
    gem_laguerre, gem_laguerre_norm_sq, multiple_laguerre, multiple_laguerre_constant, multiple_laguerre_norm_sq,
    LaguerreIndex, LaguerreSystem,
};
use crate::meixner::{mv_meixner, mv_meixner_norm_sq, MeixnerParams};
use crate::poly::{Basis, Poly};
use crate::special::{falling_factorial, rising_factorial};

/// E[a·b] under `w` by moment reduction.
pub fn inner_product(a: &Poly, b: &Poly, w: &WeightSpec) -> Result<Exact> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    w.expectation(&(a * b))
}

/// E[p] by summing over the finite support of a discrete weight.
pub fn brute_force_expectation(p: &Poly, w: &WeightSpec) -> Result<Exact> {
    w.check_poly_dim(p.dim())?;
    let support = w.support().ok_or_else(|| Error::Unsupported(format!("{} has no finite support", w.name())))?;
    let mut acc = Exact::zero();
    for point in support {
        let full: Vec<Exact> = point.iter().map(|&k| Exact::from(k)).collect();
        let mass = w.pmf_or_density(&full)?;
        let mass = mass.exact().ok_or_else(|| Error::Unsupported("inexact mass on a finite support".into()))?.clone();
        acc += mass * p.evaluate(&full[..p.dim()])?;
    }
    Ok(acc)
}

/// Every moment a family of products can need, computed once.
struct MomentTable {
    basis: Basis,
    dim: usize,
    values: HashMap<MultiIndex, Exact>,
}

impl MomentTable {
    fn new(w: &WeightSpec, polys: &[Poly]) -> Result<MomentTable> {
        let dim = polys.first().map_or(0, Poly::dim);
        if let Some(p) = polys.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        w.check_poly_dim(dim)?;
        let top = 2 * polys.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let basis = w.natural_basis();
        let values = MultiIndex::up_to_total(dim, top)
            .into_par_iter()
            .map(|k| w.moment(&k, basis).map(|m| (k, m)))
            .collect::<Result<_>>()?;
        Ok(MomentTable { basis, dim, values })
    }

    fn inner_product(&self, a: &Poly, b: &Poly) -> Result<Exact> {
        let prod = (a * b).convert_basis(self.basis);
        prod.linear_functional(|k| {
            self.values.get(k).cloned().ok_or(Error::DimensionMismatch { expected: self.dim, found: k.dim() })
        })
    }
}

/// Which closed-form constant the Gram diagonal is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// The constant in its published product form.
    Tabulated,
    /// The constant derived from the stick or Gamma factorization.
    Derived,
}

/// A system of orthogonal polynomials indexed by multi-indices, with its weight.
pub trait OrthogonalFamily: Sync {
    fn label(&self) -> String;
    fn weight(&self) -> WeightSpec;
    fn index_dim(&self) -> usize;
    fn polynomial(&self, n: &MultiIndex) -> Result<Poly>;
    /// E[G_n²] from a closed form, or None where no such form exists.
    fn closed_form(&self, n: &MultiIndex, which: ClosedForm) -> Result<Option<Exact>>;

    /// Largest total degree the family supports, if bounded.
    fn max_degree(&self) -> Option<u32> {
        None
    }

    fn indices(&self, max_degree: u32) -> Vec<MultiIndex> {
        let top = self.max_degree().map_or(max_degree, |m| m.min(max_degree));
        MultiIndex::up_to_total(self.index_dim(), top)
    }
}

/// The families constructed by this crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Jacobi { alpha: Vec<Exact> },
    GemJacobi { theta: Exact, d: usize, variant: GemVariant },
    Laguerre { alpha: Vec<Exact>, system: LaguerreSystem },
    /// Indexed by (n', |m|), polynomials in (y_1, ..., y_{d-1}, |y|).
    GemLaguerre { theta: Exact, d: usize },
    Hahn { alpha: Vec<Exact>, total: u32, route: HahnRoute },
    HahnEps { eps: Vec<u32>, total: u32 },
    Meixner { alpha: Vec<Exact>, p: Exact, system: LaguerreSystem },
}

impl Family {
    /// Checks the parameters by building the degree-zero member.
    pub fn validate(&self) -> Result<()> {
        self.weight().validate()?;
        self.polynomial(&MultiIndex::new(vec![0; self.index_dim()])).map(|_| ())
    }

    fn hahn_index(&self, n: &MultiIndex) -> Result<MVHahnIndex> {
        match self {
            Family::Hahn { alpha, total, .. } => MVHahnIndex::new(alpha.clone(), n.clone(), *total),
            Family::HahnEps { eps, total } => MVHahnIndex::hypergeometric(eps, n.clone(), *total),
            _ => Err(invalid("not a Hahn family")),
        }
    }
}

fn gem_laguerre_split(n: &MultiIndex) -> (MultiIndex, u32) {
    let d = n.dim();
    (MultiIndex::new(n.entries()[..d - 1].to_vec()), n[d - 1])
}

fn optional(r: Result<Exact>) -> Result<Option<Exact>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ZeroDenominator(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

impl OrthogonalFamily for Family {
    fn label(&self) -> String {
        match self {
            Family::Jacobi { .. } => "jacobi".into(),
            Family::GemJacobi { variant: GemVariant::Limit, .. } => "gem-jacobi".into(),
            Family::GemJacobi { variant: GemVariant::FiniteSymmetric, .. } => "gem-jacobi-finite".into(),
            Family::Laguerre { system: LaguerreSystem::Product, .. } => "laguerre".into(),
            Family::Laguerre { system: LaguerreSystem::Star, .. } => "laguerre-star".into(),
            Family::GemLaguerre { .. } => "gem-laguerre".into(),
            Family::Hahn { route: HahnRoute::Mixture, .. } => "hahn".into(),
            Family::Hahn { route: HahnRoute::Product, .. } => "hahn-product".into(),
            Family::HahnEps { .. } => "hahn-eps".into(),
            Family::Meixner { system: LaguerreSystem::Product, .. } => "meixner".into(),
            Family::Meixner { system: LaguerreSystem::Star, .. } => "meixner-star".into(),
        }
    }

    fn weight(&self) -> WeightSpec {
        match self {
            Family::Jacobi { alpha } => WeightSpec::Dirichlet { alpha: alpha.clone() },
            Family::GemJacobi { theta, d, variant: GemVariant::Limit } => {
                WeightSpec::GemTruncated { theta: theta.clone(), sticks: d.saturating_sub(1) }
            }
            Family::GemJacobi { theta, d, variant: GemVariant::FiniteSymmetric } => {
                WeightSpec::SizeBiasedDirichlet { theta: theta.clone(), d: *d }
            }
            Family::Laguerre { alpha, .. } => WeightSpec::GammaProduct { alpha: alpha.clone(), scale: Exact::one() },
            Family::GemLaguerre { theta, d } => WeightSpec::GemGamma { theta: theta.clone(), sticks: d.saturating_sub(1) },
            Family::Hahn { alpha, total, .. } => WeightSpec::DirichletMultinomial { alpha: alpha.clone(), total: *total },
            Family::HahnEps { eps, total } => WeightSpec::Hypergeometric { eps: eps.clone(), total: *total },
            Family::Meixner { alpha, p, .. } => WeightSpec::NegBinProduct { alpha: alpha.clone(), p: p.clone() },
        }
    }

    fn index_dim(&self) -> usize {
        match self {
            Family::Jacobi { alpha } | Family::Hahn { alpha, .. } => alpha.len().saturating_sub(1),
            Family::HahnEps { eps, .. } => eps.len().saturating_sub(1),
            Family::GemJacobi { d, .. } => d.saturating_sub(1),
            Family::GemLaguerre { d, .. } => *d,
            Family::Laguerre { alpha, .. } | Family::Meixner { alpha, .. } => alpha.len(),
        }
    }

    fn max_degree(&self) -> Option<u32> {
        match self {
            Family::Hahn { total, .. } | Family::HahnEps { total, .. } => Some(*total),
            _ => None,
        }
    }

    fn polynomial(&self, n: &MultiIndex) -> Result<Poly> {
        match self {
            Family::Jacobi { alpha } => Ok(mv_jacobi(&SimplexJacobiIndex::new(alpha.clone(), n.clone())?)),
            Family::GemJacobi { theta, d, variant } => gem_jacobi(theta, *d, n, *variant),
            Family::Laguerre { alpha, system } => multiple_laguerre(&LaguerreIndex::unit(alpha.clone(), n.clone())?, *system),
            Family::GemLaguerre { theta, d } => {
                if n.dim() != *d {
                    return Err(Error::DimensionMismatch { expected: *d, found: n.dim() });
                }
                let (np, m) = gem_laguerre_split(n);
                gem_laguerre(theta, *d, m, &np)
            }
            Family::Hahn { route, .. } => mv_hahn(&self.hahn_index(n)?, *route),
            Family::HahnEps { .. } => mv_hahn(&self.hahn_index(n)?, HahnRoute::Product),
            Family::Meixner { alpha, p, system } => mv_meixner(&MeixnerParams::new(alpha.clone(), p.clone(), n.clone())?, *system),
        }
    }

    fn closed_form(&self, n: &MultiIndex, which: ClosedForm) -> Result<Option<Exact>> {
        let tab = which == ClosedForm::Tabulated;
        match self {
            Family::Jacobi { alpha } => {
                let idx = SimplexJacobiIndex::new(alpha.clone(), n.clone())?;
                if tab {
                    optional(mv_jacobi_constant(&idx))
                } else {
                    Ok(Some(mv_jacobi_norm_sq(&idx)))
                }
            }
            Family::GemJacobi { theta, d, variant } => gem_jacobi_norm_sq(theta, *d, n, *variant).map(Some),
            Family::Laguerre { alpha, system } => {
                let idx = LaguerreIndex::unit(alpha.clone(), n.clone())?;
                if tab {
                    optional(multiple_laguerre_constant(&idx, *system))
                } else {
                    multiple_laguerre_norm_sq(&idx, *system).map(Some)
                }
            }
            Family::GemLaguerre { theta, d } => {
                let (np, m) = gem_laguerre_split(n);
                gem_laguerre_norm_sq(theta, *d, m, &np).map(Some)
            }
            Family::Hahn { alpha, total, .. } => {
                let idx = self.hahn_index(n)?;
                if tab {
                    let a: Exact = alpha.iter().sum();
                    let k = n.total();
                    let big_n = Exact::from(*total);
                    let jac = optional(mv_jacobi_constant(&SimplexJacobiIndex::new(alpha.clone(), n.clone())?))?;
                    Ok(jac.map(|j| falling_factorial(&big_n, k) / rising_factorial(&(a + &big_n), k) * j))
                } else {
                    mv_hahn_constant(&idx).map(Some)
                }
            }
            Family::HahnEps { .. } => Ok(None),
            Family::Meixner { alpha, p, system } => {
                mv_meixner_norm_sq(&MeixnerParams::new(alpha.clone(), p.clone(), n.clone())?, *system).map(Some)
            }
        }
    }
}

/// Name of the closed form a family offers for `which`.
pub fn closed_form_source(family: &Family, which: ClosedForm) -> &'static str {
    match (family, which) {
        (Family::HahnEps { .. }, _) => "none",
        (Family::Jacobi { .. } | Family::Laguerre { .. } | Family::Hahn { .. }, ClosedForm::Tabulated) => "tabulated",
        _ => "derived",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    /// A nonzero inner product between distinct members.
    OffDiagonal,
    /// The oracle diagonal differs from the closed-form constant.
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramDiscrepancy {
    pub kind: DiscrepancyKind,
    pub index: MultiIndex,
    pub other: MultiIndex,
    pub oracle: Exact,
    pub closed_form: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub family: String,
    pub weight: WeightSpec,
    pub indices: Vec<MultiIndex>,
    pub matrix: Vec<Vec<Exact>>,
    pub closed_form_source: String,
    pub closed_form: Vec<Option<Exact>>,
    pub discrepancies: Vec<GramDiscrepancy>,
    /// Indices at which the closed form is undefined.
    pub undefined: Vec<MultiIndex>,
}

impl GramReport {
    pub fn diagonal(&self) -> Vec<Exact> {
        (0..self.indices.len()).map(|i| self.matrix[i][i].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.discrepancies.iter().all(|d| d.kind != DiscrepancyKind::OffDiagonal)
    }

    /// Long-format CSV: one row per matrix entry.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["row", "col", "value"]).map_err(err)?;
        for (i, a) in self.indices.iter().enumerate() {
            for (j, b) in self.indices.iter().enumerate() {
                w.write_record([a.to_string(), b.to_string(), self.matrix[i][j].to_string()]).map_err(err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The exact Gram matrix of all members with |n| <= max_degree, compared to closed-form constants.
pub fn gram_matrix(family: &Family, max_degree: u32, which: ClosedForm) -> Result<GramReport> {
    let weight = family.weight();
    weight.validate()?;
    let indices = family.indices(max_degree);
    let polys: Vec<Poly> = indices.par_iter().map(|n| family.polynomial(n)).collect::<Result<_>>()?;
    let k = indices.len();
    let moments = MomentTable::new(&weight, &polys)?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let values: Vec<Exact> = pairs
        .par_iter()
        .map(|&(i, j)| moments.inner_product(&polys[i], &polys[j]))
        .collect::<Result<_>>()?;
    let mut matrix = vec![vec![Exact::zero(); k]; k];
    for (&(i, j), v) in pairs.iter().zip(values) {
        matrix[j][i] = v.clone();
        matrix[i][j] = v;
    }
    let closed_form: Vec<Option<Exact>> = indices.par_iter().map(|n| family.closed_form(n, which)).collect::<Result<_>>()?;

    let mut discrepancies = Vec::new();
    let mut undefined = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !matrix[i][j].is_zero() {
                discrepancies.push(GramDiscrepancy {
                    kind: DiscrepancyKind::OffDiagonal,
                    index: indices[i].clone(),
                    other: indices[j].clone(),
                    oracle: matrix[i][j].clone(),
                    closed_form: Exact::zero(),
                });
            }
        }
        match &closed_form[i] {
            Some(c) if c != &matrix[i][i] => discrepancies.push(GramDiscrepancy {
                kind: DiscrepancyKind::Diagonal,
                index: indices[i].clone(),
                other: indices[i].clone(),
                oracle: matrix[i][i].clone(),
                closed_form: c.clone(),
            }),
            Some(_) => {}
            None => undefined.push(indices[i].clone()),
        }
    }
    Ok(GramReport {
        family: family.label(),
        weight,
        indices,
        matrix,
        closed_form_source: closed_form_source(family, which).into(),
        closed_form,
        discrepancies,
        undefined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub index: MultiIndex,
    /// a_n = E[f·G_n].
    pub coefficient: Exact,
    /// E[G_n²].
    pub norm_sq: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierExpansion {
    pub family: String,
    pub terms: Vec<FourierTerm>,
    /// f - Σ a_n G_n / E[G_n²].
    pub residual: Poly,
    pub residual_is_zero: bool,
}

/// Expands f in the family up to `max_degree`, with oracle coefficients and norms.
pub fn fourier_expand(f: &Poly, family: &Family, max_degree: u32) -> Result<FourierExpansion> {
    let deg = f.degree().unwrap_or(0);
    if deg > max_degree {
        return Err(Error::DegreeBound { degree: deg, bound: max_degree });
    }
    if let Some(top) = family.max_degree() {
        if max_degree > top {
            return Err(Error::DegreeBound { degree: max_degree, bound: top });
        }
    }
    let weight = family.weight();
    let f = f.convert_basis(Basis::Monomial);
    let terms: Vec<(FourierTerm, Poly)> = family
        .indices(max_degree)
        .into_par_iter()
        .map(|n| {
            let g = family.polynomial(&n)?;
            if g.dim() != f.dim() {
                return Err(Error::DimensionMismatch { expected: g.dim(), found: f.dim() });
            }
            let coefficient = inner_product(&f, &g, &weight)?;
            let norm_sq = inner_product(&g, &g, &weight)?;
            Ok((FourierTerm { index: n, coefficient, norm_sq }, g))
        })
        .collect::<Result<_>>()?;
    let mut residual = f.clone();
    for (t, g) in &terms {
        if t.norm_sq.is_zero() {
            return Err(Error::ZeroDenominator(format!("norm of member {}", t.index)));
        }
        residual = &residual - &g.scale(&(&t.coefficient / &t.norm_sq));
    }
    let residual_is_zero = residual.is_zero();
    Ok(FourierExpansion {
        family: family.label(),
        terms: terms.into_iter().map(|(t, _)| t).collect(),
        residual,
        residual_is_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn ones(d: usize) -> Vec<Exact> {
        vec![Exact::one(); d]
    }

    #[test]
    fn inner_product_examples() {
        let w = WeightSpec::Dirichlet { alpha: ones(3) };
        assert_eq!(inner_product(&Poly::one(2), &Poly::one(2), &w).unwrap(), Exact::one());
        assert_eq!(inner_product(&Poly::var(2, 0), &Poly::var(2, 1), &w).unwrap(), q(1, 12));
        let w = WeightSpec::Dirichlet { alpha: ones(2) };
        let p = Poly::affine(q(-1, 1), &[q(2, 1)]);
        assert_eq!(inner_product(&p, &p, &w).unwrap(), q(1, 3));
        assert!(inner_product(&Poly::one(1), &Poly::one(2), &w).is_err());
    }

    #[test]
    fn gram_examples() {
        let r = gram_matrix(&Family::Jacobi { alpha: ones(2) }, 2, ClosedForm::Tabulated).unwrap();
        assert_eq!(r.diagonal(), vec![q(1, 1), q(1, 3), q(1, 5)]);
        assert!(r.discrepancies.is_empty());
        let r = gram_matrix(&Family::Jacobi { alpha: ones(2) }, 0, ClosedForm::Tabulated).unwrap();
        assert_eq!(r.matrix, vec![vec![Exact::one()]]);
        let fam = Family::Hahn { alpha: ones(2), total: 2, route: HahnRoute::Mixture };
        let r = gram_matrix(&fam, 2, ClosedForm::Derived).unwrap();
        assert_eq!(r.diagonal()[..2], [q(1, 1), q(1, 6)]);
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn tabulated_jacobi_diagonal_is_reported() {
        let r = gram_matrix(&Family::Jacobi { alpha: ones(3) }, 2, ClosedForm::Tabulated).unwrap();
        assert!(r.is_diagonal());
        let bad: Vec<_> = r.discrepancies.iter().filter(|d| d.index == MultiIndex::from([1, 1])).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].oracle, q(1, 144));
        assert_eq!(bad[0].closed_form, q(1, 72));
        let r = gram_matrix(&Family::Jacobi { alpha: ones(3) }, 2, ClosedForm::Derived).unwrap();
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn brute_force_agrees() {
        let w = WeightSpec::DirichletMultinomial { alpha: vec![q(1, 2), q(3, 1), q(2, 3)], total: 4 };
        let p = &Poly::var(2, 0).pow(3) - &Poly::var(2, 1).scale(&q(5, 7));
        assert_eq!(brute_force_expectation(&p, &w).unwrap(), w.expectation(&p).unwrap());
    }

    #[test]
    fn fourier_examples() {
        let fam = Family::Jacobi { alpha: ones(2) };
        let e = fourier_expand(&Poly::var(1, 0), &fam, 1).unwrap();
        assert_eq!(e.terms[1].coefficient, q(1, 6));
        assert_eq!(&e.terms[1].coefficient / &e.terms[1].norm_sq, q(1, 2));
        assert!(e.residual_is_zero);
        let e = fourier_expand(&Poly::var(1, 0).pow(2), &fam, 2).unwrap();
        assert!(e.residual_is_zero);
        assert!(fourier_expand(&Poly::var(1, 0).pow(2), &fam, 1).is_err());
    }

    #[test]
    fn csv_has_header() {
        let r = gram_matrix(&Family::Jacobi { alpha: ones(2) }, 1, ClosedForm::Derived).unwrap();
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("row,col,value\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
