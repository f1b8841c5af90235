//! One test per acceptance criterion. Each prints a single `[PASS]` or `[FAIL]` line,
//! followed by indented detail lines, and then asserts the criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use orthopoly::distributions::{
    dm_pmf, esf_pmf, esf_symmetric_pmf, hypergeometric_pmf, multinomial_pmf, ranked_dm_brute_force, Partition,
    WeightSpec,
};
use orthopoly::exact::q;
use orthopoly::hahn::{
    bb_reconstruct_jacobi, hahn_jacobi_limit_diag, mv_hahn, product_to_mixture_ratio, tilde_factor_tabulated,
    tilde_ratio, BbFactor, HahnParams, HahnRoute, MVHahnIndex,
};
use orthopoly::jacobi::{
    generator_eigencheck, jacobi_constants, jacobi_univariate, mv_jacobi, mv_jacobi_norm_sq, GemVariant, JacobiConstant,
    JacobiForm, JacobiParams, SimplexJacobiIndex,
};
use orthopoly::laguerre::{
    addition_residual, connection_cstar, connection_table, erdelyi_residual, expansion_residual, multiple_laguerre_norm_sq,
    ConnectionMethod, LaguerreIndex, LaguerreSystem, LauricellaVariant,
};
use orthopoly::meixner::{meixner_connection_check, mixture_polynomial, mv_meixner, poisson_kernel_expand, MeixnerParams};
use orthopoly::oracle::{brute_force_expectation, gram_matrix, ClosedForm, DiscrepancyKind, Family, OrthogonalFamily};
use orthopoly::special::{falling_factorial, rising_factorial};
use orthopoly::{Error, Exact, MultiIndex};

/// Agreement required between the truncated Poisson-kernel sum and the closed form.
const KERNEL_TOLERANCE: f64 = 1e-8;
/// Tail bound at which the Poisson-kernel sum is truncated.
const KERNEL_TAIL: f64 = 1e-10;
const KERNEL_BUDGET: u32 = 400;
const KERNEL_TIME_LIMIT: Duration = Duration::from_secs(10);
/// Required error reduction per decade of N in the Hahn to Jacobi limit.
const LIMIT_DECADE_FACTOR: f64 = 5.0;

fn report(criterion: u32, ok: bool, title: &str, details: &[String]) {
    let mut out = std::io::stdout().lock();
    let tag = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "[{tag}] criterion {criterion}: {title}");
    for d in details {
        let _ = writeln!(out, "    {d}");
    }
    let _ = out.flush();
    assert!(ok, "criterion {criterion} failed: {title}");
}

fn v(xs: &[(i64, i64)]) -> Vec<Exact> {
    xs.iter().map(|&(p, d)| q(p, d)).collect()
}

fn fmt(xs: &[Exact]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn lattice(x: &MultiIndex) -> Vec<Exact> {
    x.iter().map(|&k| Exact::from(k)).collect()
}

#[test]
fn criterion_01_jacobi_orthogonality() {
    let alphas = [
        v(&[(1, 1), (1, 1)]),
        v(&[(1, 2), (3, 2)]),
        v(&[(3, 1), (2, 3)]),
        v(&[(1, 1), (1, 1), (1, 1)]),
        v(&[(1, 2), (2, 1), (3, 2)]),
        v(&[(2, 1), (1, 3), (5, 4)]),
        v(&[(1, 1), (1, 1), (1, 1), (1, 1)]),
        v(&[(1, 2), (1, 1), (3, 2), (2, 1)]),
        v(&[(3, 1), (1, 4), (2, 3), (1, 1)]),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for alpha in alphas {
        let r = gram_matrix(&Family::Jacobi { alpha: alpha.clone() }, 4, ClosedForm::Tabulated).unwrap();
        let off = r.discrepancies.iter().filter(|d| d.kind == DiscrepancyKind::OffDiagonal).count();
        let tab_bad = r.discrepancies.len() - off;
        let reported = r
            .indices
            .iter()
            .zip(&r.closed_form)
            .enumerate()
            .filter(|(i, (_, c))| c.as_ref() != Some(&r.matrix[*i][*i]))
            .all(|(_, (n, _))| r.discrepancies.iter().any(|d| &d.index == n) || r.undefined.contains(n));
        let derived_bad = r
            .indices
            .iter()
            .enumerate()
            .filter(|(i, n)| mv_jacobi_norm_sq(&SimplexJacobiIndex::new(alpha.clone(), (*n).clone()).unwrap()) != r.matrix[*i][*i])
            .count();
        ok &= off == 0 && reported && derived_bad == 0;
        details.push(format!(
            "alpha=({}): {} indices, off-diagonal nonzero {off}, stick-norm mismatches {derived_bad}, \
             tabulated-constant mismatches {tab_bad} (reported), undefined {}",
            fmt(&alpha),
            r.indices.len(),
            r.undefined.len()
        ));
    }
    report(1, ok, "Jacobi Gram matrices diagonal for d=2,3,4, |n|<=4; tabulated diagonal compared and reported", &details);
}

#[test]
fn criterion_02_univariate_constants() {
    let mut ok = true;
    let mut details = Vec::new();
    for (a, b) in [((1, 1), (1, 1)), ((1, 2), (3, 2)), ((5, 2), (1, 3))] {
        let p = JacobiParams::new(q(a.0, a.1), q(b.0, b.1)).unwrap();
        let w = WeightSpec::Dirichlet { alpha: vec![p.alpha.clone(), p.beta.clone()] };
        let mut bad = 0;
        for n in 0..=6 {
            let r = jacobi_univariate(&p, n, JacobiForm::R);
            let pp = jacobi_univariate(&p, n, JacobiForm::P);
            if w.expectation(&(&r * &r)).unwrap() != jacobi_constants(&p, n, JacobiConstant::Zeta) {
                bad += 1;
            }
            if w.expectation(&(&pp * &pp)).unwrap() != jacobi_constants(&p, n, JacobiConstant::Eta) {
                bad += 1;
            }
        }
        ok &= bad == 0;
        details.push(format!("(alpha,beta)=({},{}): n<=6, zeta and eta mismatches {bad}", p.alpha, p.beta));
    }
    report(2, ok, "univariate Jacobi constants zeta_n and eta_n equal oracle second moments", &details);
}

#[test]
fn criterion_03_generator_eigencheck() {
    let mut ok = true;
    let mut details = Vec::new();
    for (a, b) in [((1, 1), (1, 1)), ((1, 2), (3, 2)), ((2, 1), (5, 3))] {
        let p = JacobiParams::new(q(a.0, a.1), q(b.0, b.1)).unwrap();
        for n in 0..=5 {
            let c = generator_eigencheck(&p, n);
            ok &= c.residual_is_zero;
            let observed = c.observed_eigenvalue.as_ref().map_or("none".to_string(), |x| x.to_string());
            details.push(format!(
                "(alpha,beta)=({},{}) n={n}: residual zero {}, claimed eigenvalue {}, observed {observed}",
                p.alpha, p.beta, c.residual_is_zero, c.claimed_eigenvalue
            ));
        }
    }
    report(3, ok, "L2 P_n + n(n+theta-1) P_n is the zero polynomial for n<=5", &details);
}

#[test]
fn criterion_04_hahn_mixture() {
    let alphas = [v(&[(1, 1), (1, 1)]), v(&[(1, 2), (5, 2)]), v(&[(1, 1), (1, 1), (1, 1)]), v(&[(1, 2), (2, 1), (3, 2)])];
    let mut ok = true;
    let mut details = Vec::new();
    for alpha in alphas {
        for total in 1..=5u32 {
            let fam = Family::Hahn { alpha: alpha.clone(), total, route: HahnRoute::Mixture };
            let r = gram_matrix(&fam, total, ClosedForm::Derived).unwrap();
            let tab = gram_matrix(&fam, total, ClosedForm::Tabulated).unwrap();
            let tab_bad = tab.discrepancies.iter().filter(|d| d.kind == DiscrepancyKind::Diagonal).count();
            let mut ratios: Vec<String> = Vec::new();
            let mut ratio_ok = true;
            for n in &r.indices {
                match product_to_mixture_ratio(&MVHahnIndex::new(alpha.clone(), n.clone(), total).unwrap()).unwrap() {
                    Some(c) if !c.is_zero() => {
                        let s = c.to_string();
                        if !ratios.contains(&s) {
                            ratios.push(s);
                        }
                    }
                    _ => ratio_ok = false,
                }
            }
            ok &= r.discrepancies.is_empty() && ratio_ok;
            details.push(format!(
                "alpha=({}) |r|={total}: discrepancies vs derived constant {}, vs tabulated {tab_bad}, \
                 product/mixture ratios {{{}}}{}",
                fmt(&alpha),
                r.discrepancies.len(),
                ratios.join(","),
                if ratio_ok { "" } else { ", some index not proportional" }
            ));
        }
    }
    report(4, ok, "Hahn mixture Gram under DM diagonal with the closed-form diagonal; product route proportional", &details);
}

#[test]
fn criterion_05_tilde_factor() {
    let mut ok = true;
    let mut details = Vec::new();
    for (a, b, big_n) in [((1, 1), (1, 1), 5u32), ((1, 2), (3, 2), 4), ((3, 1), (2, 3), 6)] {
        let mut reciprocal = 0;
        for n in 0..=3 {
            let p = HahnParams::new(q(a.0, a.1), q(b.0, b.1), big_n, n).unwrap();
            let expected = falling_factorial(&Exact::from(big_n), n) / rising_factorial(&(p.theta() + Exact::from(big_n)), n);
            let ratio = tilde_ratio(&p).unwrap();
            ok &= ratio.as_ref() == Some(&expected);
            let tab = tilde_factor_tabulated(&p);
            if n > 0 && tab == expected.recip() && tab != expected {
                reciprocal += 1;
            }
            details.push(format!(
                "(alpha,beta,N)=({},{},{big_n}) n={n}: computed ratio {}, N_[n]/(theta+N)_(n) {expected}, tabulated factor {tab}",
                p.alpha,
                p.beta,
                ratio.map_or("none".into(), |r| r.to_string())
            ));
        }
        details.push(format!("discrepancy: tabulated factor is the reciprocal of the computed ratio at {reciprocal} of 3 nonzero degrees"));
    }
    report(5, ok, "q~_n/q_n equals N_[n]/(theta+N)_(n) for n<=3", &details);
}

#[test]
fn criterion_06_bernstein_bezier() {
    let alphas = [v(&[(1, 1), (1, 1)]), v(&[(1, 2), (3, 2)]), v(&[(1, 1), (1, 1), (1, 1)]), v(&[(1, 2), (2, 1), (3, 2)])];
    let mut ok = true;
    let mut details = Vec::new();
    for alpha in alphas {
        let (mut bad, mut tab_bad, mut count) = (0, 0, 0);
        for r in MultiIndex::up_to_total(alpha.len() - 1, 3) {
            let jac = mv_jacobi(&SimplexJacobiIndex::new(alpha.clone(), r.clone()).unwrap());
            if !(&bb_reconstruct_jacobi(&alpha, &r, BbFactor::Derived).unwrap() - &jac).is_zero() {
                bad += 1;
            }
            if !(&bb_reconstruct_jacobi(&alpha, &r, BbFactor::Tabulated).unwrap() - &jac).is_zero() {
                tab_bad += 1;
            }
            count += 1;
        }
        ok &= bad == 0;
        details.push(format!(
            "alpha=({}): {count} indices, nonzero residuals {bad}; with the tabulated factor omega_r {tab_bad}",
            fmt(&alpha)
        ));
    }
    report(6, ok, "Bernstein-Bezier reconstruction minus mv_jacobi is zero for d<=3, |r|<=3", &details);
}

#[test]
fn criterion_07_laguerre() {
    let alphas = [
        v(&[(3, 2)]),
        v(&[(1, 1), (1, 1)]),
        v(&[(2, 1), (1, 2)]),
        v(&[(1, 1), (1, 1), (1, 1)]),
        v(&[(1, 2), (2, 1), (3, 2)]),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for alpha in alphas {
        let prod = gram_matrix(&Family::Laguerre { alpha: alpha.clone(), system: LaguerreSystem::Product }, 3, ClosedForm::Tabulated)
            .unwrap();
        let star = gram_matrix(&Family::Laguerre { alpha: alpha.clone(), system: LaguerreSystem::Star }, 3, ClosedForm::Tabulated)
            .unwrap();
        let star_derived = star
            .indices
            .iter()
            .enumerate()
            .filter(|(i, n)| {
                let idx = LaguerreIndex::unit(alpha.clone(), (*n).clone()).unwrap();
                multiple_laguerre_norm_sq(&idx, LaguerreSystem::Star).unwrap() != star.matrix[*i][*i]
            })
            .count();
        let star_tab = star.discrepancies.iter().filter(|d| d.kind == DiscrepancyKind::Diagonal).count();
        ok &= prod.discrepancies.is_empty() && star.is_diagonal() && star_derived == 0;
        details.push(format!(
            "alpha=({}): product discrepancies {}; star off-diagonal nonzero {}, star vs derived constant {star_derived}, \
             star vs tabulated constant {star_tab} (reported)",
            fmt(&alpha),
            prod.discrepancies.len(),
            star.discrepancies.len() - star_tab
        ));
    }
    report(7, ok, "product and star Laguerre Gram matrices diagonal for d<=3, |n|<=3; product diagonal matches", &details);
}

#[test]
fn criterion_08_erdelyi() {
    let cases: [(Vec<Exact>, [Vec<Exact>; 2]); 3] = [
        (v(&[(3, 2)]), [v(&[(1, 1)]), v(&[(2, 5)])]),
        (v(&[(1, 1), (1, 2)]), [v(&[(1, 3), (2, 3)]), v(&[(2, 1), (3, 4)])]),
        (v(&[(1, 2), (2, 1), (3, 2)]), [v(&[(1, 2), (1, 3), (1, 6)]), v(&[(3, 1), (1, 5), (1, 1)])]),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (alpha, ks) in &cases {
        let a: Exact = alpha.iter().sum();
        for k in ks {
            let bad = MultiIndex::up_to_total(alpha.len(), 3)
                .iter()
                .filter(|n| !erdelyi_residual(&a, alpha, n, k).unwrap().is_zero())
                .count();
            ok &= bad == 0;
            details.push(format!("alpha=({}) k=({}): nonzero residuals {bad}", fmt(alpha), fmt(k)));
        }
    }
    for (a, b) in [(q(1, 1), q(1, 1)), (q(1, 2), q(7, 3))] {
        let bad = (0..=4).filter(|&n| !addition_residual(&a, &b, n).unwrap().is_zero()).count();
        ok &= bad == 0;
        details.push(format!("addition formula (a,b)=({a},{b}), n<=4: nonzero residuals {bad}"));
    }
    report(8, ok, "Erdelyi expansion exact for d<=3, |n|<=3; addition formula exact for n<=4", &details);
}

#[test]
fn criterion_09_connection() {
    let alphas = [v(&[(2, 1), (1, 1)]), v(&[(1, 1), (1, 2), (3, 2)])];
    let points = [
        v(&[(1, 3), (2, 5), (7, 2)]),
        v(&[(0, 1), (1, 1), (1, 2)]),
        v(&[(5, 1), (1, 7), (3, 4)]),
        v(&[(-2, 3), (9, 4), (1, 9)]),
        v(&[(11, 6), (0, 1), (2, 1)]),
    ];
    let methods = [
        ConnectionMethod::Lauricella(LauricellaVariant::PRINTED),
        ConnectionMethod::Lauricella(LauricellaVariant::DERIVED),
        ConnectionMethod::Hahn(LauricellaVariant::PRINTED),
        ConnectionMethod::Hahn(LauricellaVariant::DERIVED),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for alpha in alphas {
        let d = alpha.len();
        let mut identity_bad = 0;
        let mut counts = vec![0usize; methods.len()];
        let mut derived_bad = 0;
        let indices = MultiIndex::up_to_total(d, 3);
        for n in &indices {
            let idx = LaguerreIndex::unit(alpha.clone(), n.clone()).unwrap();
            let res = expansion_residual(&idx).unwrap();
            let at_points = points.iter().all(|p| res.evaluate(&p[..d]).unwrap().is_zero());
            if !(res.is_zero() && at_points) {
                identity_bad += 1;
            }
            for (i, m) in methods.iter().enumerate() {
                let t = connection_table(&idx, *m).unwrap();
                if !t.discrepancies.is_empty() {
                    counts[i] += 1;
                    if matches!(m, ConnectionMethod::Lauricella(v) | ConnectionMethod::Hahn(v) if *v == LauricellaVariant::DERIVED) {
                        derived_bad += 1;
                    }
                }
            }
        }
        ok &= identity_bad == 0 && derived_bad == 0;
        details.push(format!("alpha=({}): expansion identity failures {identity_bad} of {}", fmt(&alpha), indices.len()));
        for (m, c) in methods.iter().zip(&counts) {
            details.push(format!("alpha=({}): {} disagrees with the oracle at {c} of {} source indices", fmt(&alpha), m.label(), indices.len()));
        }
    }
    report(9, ok, "oracle c* satisfies the expansion identity; Lauricella and Hahn methods compared", &details);
}

#[test]
fn criterion_10_meixner() {
    let settings = [(v(&[(3, 2)]), q(1, 3)), (v(&[(1, 1), (1, 1)]), q(1, 2)), (v(&[(2, 1), (1, 1)]), q(1, 3))];
    let mut details = Vec::new();
    let mut orth_ok = true;
    let mut mix_ok = true;
    let mut cc_ok = true;
    for (alpha, p) in &settings {
        for system in [LaguerreSystem::Product, LaguerreSystem::Star] {
            let fam = Family::Meixner { alpha: alpha.clone(), p: p.clone(), system };
            let r = gram_matrix(&fam, 3, ClosedForm::Derived).unwrap();
            orth_ok &= r.discrepancies.is_empty();
            details.push(format!(
                "10a alpha=({}) p={p} {}: {} indices, discrepancies {}",
                fmt(alpha),
                fam.label(),
                r.indices.len(),
                r.discrepancies.len()
            ));
        }
        let mut bad = 0;
        for n in MultiIndex::up_to_total(alpha.len(), 3) {
            let params = MeixnerParams::new(alpha.clone(), p.clone(), n).unwrap();
            let closed = mv_meixner(&params, LaguerreSystem::Star).unwrap();
            let mix = mixture_polynomial(&params, LaguerreSystem::Star).unwrap();
            for r in MultiIndex::up_to_total(alpha.len(), 6) {
                if closed.evaluate(&lattice(&r)).unwrap() != mix.evaluate(&lattice(&r)).unwrap() {
                    bad += 1;
                }
            }
        }
        mix_ok &= bad == 0;
        details.push(format!("10b alpha=({}) p={p}: star closed form vs mixture mismatches at lattice points {bad}", fmt(alpha)));
        if alpha.len() == 2 {
            let (mut bad, mut scaled) = (0, 0);
            for n in MultiIndex::up_to_total(2, 2) {
                let idx = LaguerreIndex::unit(alpha.clone(), n.clone()).unwrap();
                for m in MultiIndex::up_to_total(2, 2) {
                    let value = meixner_connection_check(alpha, p, &n, &m).unwrap();
                    let oracle = connection_cstar(&idx, &m, ConnectionMethod::Oracle).unwrap();
                    if value != oracle {
                        bad += 1;
                        if value == &oracle * &p.pow(n.total()) {
                            scaled += 1;
                        }
                    }
                }
            }
            cc_ok &= bad == 0;
            details.push(format!(
                "10c alpha=({}) p={p}: E[*M~_n M~_m] differs from oracle c*_m(n) at {bad} pairs, {scaled} of them equal p^|n| c*_m(n)",
                fmt(alpha)
            ));
        }
    }
    details.push(format!("10a orthogonality {}, 10b star equals mixture {}, 10c connection equals oracle c* {}", orth_ok, mix_ok, cc_ok));
    report(10, orth_ok && mix_ok && cc_ok, "Meixner orthogonality, star mixture, and connection coefficients", &details);
}

#[test]
fn criterion_11_poisson_kernel() {
    let settings = [
        ("A", v(&[(1, 1), (1, 1)]), q(1, 2), v(&[(1, 1), (2, 1)])),
        ("B", v(&[(2, 1), (1, 1)]), q(1, 3), v(&[(1, 2), (3, 2)])),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for (name, alpha, p, lambda) in &settings {
        let (mut bad, mut derived_bad, mut count) = (0, 0, 0);
        let mut max_tail = 0.0f64;
        for d in 1..=2usize {
            let systems: &[LaguerreSystem] = if d == 1 { &[LaguerreSystem::Product] } else { &[LaguerreSystem::Product, LaguerreSystem::Star] };
            for &system in systems {
                for r in MultiIndex::up_to_total(d, 2) {
                    let params = MeixnerParams::new(alpha[..d].to_vec(), p.clone(), r).unwrap();
                    let k = poisson_kernel_expand(&params, system, &lambda[..d], KERNEL_TAIL, KERNEL_BUDGET).unwrap();
                    max_tail = max_tail.max(k.tail_bound);
                    if (k.lhs - k.rhs_tabulated.to_f64()).abs() > KERNEL_TOLERANCE {
                        bad += 1;
                    }
                    if (k.lhs - k.rhs.to_f64()).abs() > KERNEL_TOLERANCE || k.lhs_exact != k.rhs {
                        derived_bad += 1;
                    }
                    count += 1;
                }
            }
        }
        ok &= bad == 0;
        details.push(format!(
            "11{} setting {name} alpha=({}) p={p} lambda=({}): {count} cases, rho-normalized identity fails at {bad}, \
             p^|r| L_r identity fails at {derived_bad}, largest tail bound {max_tail:e}",
            if *name == "A" { "a" } else { "b" },
            fmt(alpha),
            fmt(lambda)
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < KERNEL_TIME_LIMIT;
    details.push(format!("runtime {:.3} s (limit {} s)", elapsed.as_secs_f64(), KERNEL_TIME_LIMIT.as_secs()));
    report(11, ok, "Poisson-kernel identity within 1e-8 for d<=2, |r|<=2, two settings", &details);
}

fn decade_ok(errs: &[f64]) -> bool {
    errs.windows(2).all(|w| w[0] == 0.0 && w[1] == 0.0 || w[1] * LIMIT_DECADE_FACTOR <= w[0])
}

#[test]
fn criterion_12_hahn_jacobi_limit() {
    let grid: Vec<Exact> = (0..=10).map(|k| q(k, 10)).collect();
    let ns = [100u32, 1000, 10000];
    let mut ok = true;
    let mut details = Vec::new();
    for (a, b) in [(q(1, 1), q(1, 1)), (q(1, 2), q(3, 2))] {
        for n in 1..=3 {
            let rows = hahn_jacobi_limit_diag(&a, &b, n, &ns, &grid).unwrap();
            let sup: Vec<f64> = rows.iter().map(|r| r.sup_error).collect();
            let show = |xs: &[f64]| xs.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ");
            let gap: Vec<f64> = rows.iter().map(|r| r.constant_gap).collect();
            let good = decade_ok(&sup) && decade_ok(&gap);
            ok &= good;
            details.push(format!("(alpha,beta)=({a},{b}) n={n}: sup errors [{}], constant gaps [{}]", show(&sup), show(&gap)));
        }
    }
    report(12, ok, "Hahn to Jacobi sup error and constant gap shrink by >=5 per decade of N", &details);
}

#[test]
fn criterion_13_hypergeometric() {
    let eps_sets: [&[u32]; 5] = [&[1, 1], &[2, 3], &[3, 3], &[1, 2, 3], &[3, 2, 2]];
    let mut ok = true;
    let mut details = Vec::new();
    for eps in eps_sets {
        let size: u32 = eps.iter().sum();
        let (mut bad, mut pairs, mut undefined, mut incomplete) = (0, 0, 0, 0);
        for total in 0..=size {
            let w = WeightSpec::Hypergeometric { eps: eps.to_vec(), total };
            let mut polys = Vec::new();
            for n in MultiIndex::up_to_total(eps.len() - 1, total) {
                match MVHahnIndex::hypergeometric(eps, n.clone(), total).and_then(|i| mv_hahn(&i, HahnRoute::Product)) {
                    Ok(p) => polys.push(p),
                    Err(Error::ZeroDenominator(_)) => undefined += 1,
                    Err(e) => panic!("eps={eps:?} n={n}: {e}"),
                }
            }
            let mut nonzero = 0;
            for i in 0..polys.len() {
                if !brute_force_expectation(&(&polys[i] * &polys[i]), &w).unwrap().is_zero() {
                    nonzero += 1;
                }
                for j in i + 1..polys.len() {
                    pairs += 1;
                    if !brute_force_expectation(&(&polys[i] * &polys[j]), &w).unwrap().is_zero() {
                        bad += 1;
                    }
                }
            }
            if nonzero != w.support().unwrap().len() {
                incomplete += 1;
            }
        }
        ok &= bad == 0 && incomplete == 0;
        details.push(format!(
            "eps={eps:?}: {pairs} pairs by finite summation, nonzero {bad}; sample sizes where the members with \
             nonzero norm do not span the support {incomplete}; indices with a vanishing denominator {undefined}"
        ));
    }
    report(13, ok, "product-route Hahn with alpha=-eps orthogonal under the hypergeometric law, d<=3, eps_i<=3", &details);
}

#[test]
fn criterion_14_gem() {
    let depth = 4usize;
    let mut ok = true;
    let mut details = Vec::new();
    for theta in [q(1, 2), q(1, 1), q(3, 1)] {
        let families = [
            Family::GemJacobi { theta: theta.clone(), d: depth + 1, variant: GemVariant::Limit },
            Family::GemJacobi { theta: theta.clone(), d: depth + 1, variant: GemVariant::FiniteSymmetric },
            Family::GemLaguerre { theta: theta.clone(), d: depth + 1 },
        ];
        for fam in families {
            let r = gram_matrix(&fam, 3, ClosedForm::Derived).unwrap();
            ok &= r.discrepancies.is_empty();
            details.push(format!(
                "theta={theta} {} under {}: {} indices, discrepancies {}",
                fam.label(),
                r.weight.name(),
                r.indices.len(),
                r.discrepancies.len()
            ));
        }
    }
    report(14, ok, "truncated GEM Jacobi and GEM Laguerre systems orthogonal at depth 4, |n|<=3", &details);
}

#[test]
fn criterion_15_distributions() {
    let mut ok = true;
    let mut details = Vec::new();
    let mut bad_mass = 0;
    for alpha in [v(&[(1, 1), (1, 1)]), v(&[(1, 2), (2, 1), (3, 2)]), v(&[(1, 3), (1, 1), (5, 2), (2, 1)])] {
        for total in 0..=6 {
            let s: Exact = MultiIndex::with_total(alpha.len(), total).iter().map(|r| dm_pmf(&alpha, r)).sum();
            let x: Vec<Exact> = alpha.iter().map(|a| a / alpha.iter().sum::<Exact>()).collect();
            let m: Exact = MultiIndex::with_total(alpha.len(), total).iter().map(|r| multinomial_pmf(&x, r).unwrap()).sum();
            bad_mass += (s != Exact::one()) as u32 + (m != Exact::one()) as u32;
        }
    }
    for eps in [vec![1u32, 2], vec![3, 1, 2], vec![2, 2, 2, 1]] {
        let size: u32 = eps.iter().sum();
        for total in 0..=size {
            let w = WeightSpec::Hypergeometric { eps: eps.clone(), total };
            let s: Exact = w.support().unwrap().iter().map(|r| hypergeometric_pmf(&eps, r)).sum();
            bad_mass += (s != Exact::one()) as u32;
        }
    }
    ok &= bad_mass == 0;
    details.push(format!("Dirichlet-multinomial, multinomial, hypergeometric total masses differing from 1: {bad_mass}"));

    let mut bad_esf = 0;
    for theta in [q(1, 2), q(1, 1), q(3, 1)] {
        for n in 1..=6 {
            let s: Exact = Partition::all(n).iter().map(|p| esf_pmf(&theta, p).unwrap()).sum();
            bad_esf += (s != Exact::one()) as u32;
        }
    }
    ok &= bad_esf == 0;
    details.push(format!("Ewens sampling formula total masses differing from 1 (|n|<=6, three theta): {bad_esf}"));

    let (mut mismatches, mut checked) = (Vec::new(), 0);
    for alpha_total in [q(1, 1), q(5, 2), q(1, 3)] {
        for d in 1..=4u32 {
            for n in 1..=4 {
                for part in Partition::all(n) {
                    let formula = esf_symmetric_pmf(&alpha_total, d, &part).unwrap();
                    let brute = ranked_dm_brute_force(&alpha_total, d, &part);
                    checked += 1;
                    if formula != brute {
                        mismatches.push(format!("|alpha|={alpha_total} d={d} part={part}: formula {formula}, brute force {brute}"));
                    }
                }
            }
        }
    }
    ok &= mismatches.is_empty();
    details.push(format!("ranked symmetric DM formula vs brute force: {checked} cases, mismatches {}", mismatches.len()));
    details.extend(mismatches);
    report(15, ok, "finite pmfs sum to 1, ESF mass 1, ranked DM formula equals brute force", &details);
}

