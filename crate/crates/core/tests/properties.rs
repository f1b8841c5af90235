use orthopoly::distributions::{dm_pmf, hypergeometric_pmf, WeightSpec};
use orthopoly::exact::{q, Exact};
use orthopoly::index::MultiIndex;
use orthopoly::poly::{Basis, Poly};
use orthopoly::special::{falling_factorial, rising_factorial, stirling1, stirling2};
use proptest::prelude::*;

fn small_exact() -> impl Strategy<Value = Exact> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, d)| q(p, d))
}

fn positive_exact() -> impl Strategy<Value = Exact> {
    (1i64..=8, 1i64..=4).prop_map(|(p, d)| q(p, d))
}

fn poly(dim: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let terms = MultiIndex::up_to_total(dim, max_deg);
    let n = terms.len();
    prop::collection::vec(small_exact(), n).prop_map(move |cs| {
        Poly::from_terms(dim, Basis::Monomial, terms.clone().into_iter().zip(cs)).unwrap()
    })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<Exact>> {
    prop::collection::vec(small_exact(), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly(2, 3), b in poly(2, 3), c in poly(2, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(2), a.clone());
    }

    #[test]
    fn basis_round_trip(a in poly(3, 6)) {
        let f = a.convert_basis(Basis::FallingFactorial);
        prop_assert_eq!(f.basis(), Basis::FallingFactorial);
        prop_assert_eq!(f.convert_basis(Basis::Monomial), a);
    }

    #[test]
    fn falling_basis_evaluates_alike(a in poly(2, 4), x in point(2)) {
        let f = a.convert_basis(Basis::FallingFactorial);
        prop_assert_eq!(f.evaluate(&x).unwrap(), a.evaluate(&x).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(2, 3), b in poly(2, 3), x in point(2)) {
        let (va, vb) = (a.evaluate(&x).unwrap(), b.evaluate(&x).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), &va + &vb);
        prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &va * &vb);
    }

    #[test]
    fn substitution_composes(a in poly(2, 3), u in poly(2, 2), v in poly(2, 2), x in point(2)) {
        let composed = a.substitute(&[u.clone(), v.clone()]).unwrap();
        let inner = vec![u.evaluate(&x).unwrap(), v.evaluate(&x).unwrap()];
        prop_assert_eq!(composed.evaluate(&x).unwrap(), a.evaluate(&inner).unwrap());
    }

    #[test]
    fn rising_factorial_splits(a in small_exact(), m in 0u32..6, n in 0u32..6) {
        let shifted = &a + Exact::from(m);
        prop_assert_eq!(rising_factorial(&a, m + n), rising_factorial(&a, m) * rising_factorial(&shifted, n));
        let neg = -&a;
        let sign = if n % 2 == 1 { -Exact::one() } else { Exact::one() };
        prop_assert_eq!(falling_factorial(&a, n), sign * rising_factorial(&neg, n));
    }

    #[test]
    fn stirling_numbers_convert_powers(n in 0u32..8, x in small_exact()) {
        let power: Exact = (0..=n).map(|k| stirling2(n, k).unwrap() * falling_factorial(&x, k)).sum();
        prop_assert_eq!(power, x.pow(n));
        let falling: Exact = (0..=n).map(|k| stirling1(n, k).unwrap() * x.pow(k)).sum();
        prop_assert_eq!(falling, falling_factorial(&x, n));
    }

    #[test]
    fn dm_moments_match_brute_force(alpha in prop::collection::vec(positive_exact(), 2..=3), total in 0u32..5, m in prop::collection::vec(0u32..3, 3)) {
        let d = alpha.len();
        let w = WeightSpec::DirichletMultinomial { alpha: alpha.clone(), total };
        let support = w.support().unwrap();
        let mass: Exact = support.iter().map(|r| dm_pmf(&alpha, r)).sum();
        prop_assert_eq!(mass, Exact::one());
        let monomial = Poly::monomial(MultiIndex::new(m[..d].to_vec()), Exact::one());
        let brute: Exact = support
            .iter()
            .map(|r| dm_pmf(&alpha, r) * monomial.evaluate(&r.iter().map(|&k| Exact::from(k)).collect::<Vec<_>>()).unwrap())
            .sum();
        prop_assert_eq!(w.expectation(&monomial).unwrap(), brute);
    }

    #[test]
    fn hypergeometric_moments_match_brute_force(eps in prop::collection::vec(1u32..4, 2..=3), total in 0u32..5, m in prop::collection::vec(0u32..3, 3)) {
        let d = eps.len();
        prop_assume!(total <= eps.iter().sum::<u32>());
        let w = WeightSpec::Hypergeometric { eps: eps.clone(), total };
        let support = w.support().unwrap();
        let mass: Exact = support.iter().map(|r| hypergeometric_pmf(&eps, r)).sum();
        prop_assert_eq!(mass, Exact::one());
        let monomial = Poly::monomial(MultiIndex::new(m[..d].to_vec()), Exact::one());
        let brute: Exact = support
            .iter()
            .map(|r| hypergeometric_pmf(&eps, r) * monomial.evaluate(&r.iter().map(|&k| Exact::from(k)).collect::<Vec<_>>()).unwrap())
            .sum();
        prop_assert_eq!(w.expectation(&monomial).unwrap(), brute);
    }

    #[test]
    fn dirichlet_multinomial_conjugacy(alpha in prop::collection::vec(positive_exact(), 2..=3), total in 0u32..4, f in poly(3, 3)) {
        let d = alpha.len();
        let f = if d == 3 { f } else { f.substitute(&[Poly::var(2, 0), Poly::var(2, 1), Poly::zero(2, Basis::Monomial)]).unwrap() };
        let prior = WeightSpec::Dirichlet { alpha: alpha.clone() }.expectation(&f).unwrap();
        let mixed: Exact = MultiIndex::with_total(d, total)
            .iter()
            .map(|r| {
                let post: Vec<Exact> = alpha.iter().zip(r.iter()).map(|(a, &k)| a + Exact::from(k)).collect();
                dm_pmf(&alpha, r) * WeightSpec::Dirichlet { alpha: post }.expectation(&f).unwrap()
            })
            .sum();
        prop_assert_eq!(mixed, prior);
    }
}
