use std::sync::LazyLock;

use clifford_dfs::blade::{Blade, FactorBlade};
use clifford_dfs::dfs::{build_projectors, project_state, CharacterProjector};
use clifford_dfs::linalg::{hermitian_eig, max_abs_diff, ComplexMatrix, ExactMatrix};
use clifford_dfs::multivector::{IdealElement, Multivector};
use clifford_dfs::parse::{parse_element, render_element};
use clifford_dfs::reptheory::{character_table_abelian, element_image, RowOrder, SignRep};
use clifford_dfs::scalar::GaussianRational;
use clifford_dfs::structure::{close_generators, SubalgebraTable, DEFAULT_CLOSURE_CAP};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn blade(m: usize) -> impl Strategy<Value = Blade> {
    prop::collection::vec(0u8..8, m)
        .prop_map(|masks| Blade::new(masks.into_iter().map(|k| FactorBlade::from_mask(k).unwrap()).collect()).unwrap())
}

fn element(m: usize, max_terms: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((blade(m), scalar()), 0..=max_terms).prop_map(move |terms| {
        let mut x = Multivector::zero(m);
        for (b, c) in terms {
            x.add_term(b, c);
        }
        x
    })
}

fn triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1usize..=3).prop_flat_map(|m| (element(m, 5), element(m, 5), element(m, 5)))
}

fn fixture(which: usize) -> SubalgebraTable {
    let (gens, m): (&[&str], usize) = match which {
        0 => (&["1 [g3 g3 1]", "1 [1 g3 g3]"], 3),
        1 => (&["1 [g1 g1 1 1]", "1 [1 1 g1 g1]"], 4),
        _ => (&["1 [g1 g1 g1 g1]", "1 [g2 g2 g2 g2]"], 4),
    };
    let g: Vec<_> = gens.iter().map(|t| parse_element(t).unwrap()).collect();
    close_generators(&g, m, DEFAULT_CLOSURE_CAP).unwrap()
}

proptest! {
    #![proptest_config(config(1000, 0x00c1_1ff0))]

    #[test]
    fn product_is_associative_and_distributive((x, y, z) in triple()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    }
}

proptest! {
    #![proptest_config(config(500, 0x0070_a5e5))]

    #[test]
    fn render_then_parse_round_trips(x in (1usize..=4).prop_flat_map(|m| element(m, 20))) {
        let text = render_element(&x);
        let back = if x.is_zero() {
            clifford_dfs::parse::parse_element_with_factors(&text, x.num_factors()).unwrap()
        } else {
            parse_element(&text).unwrap()
        };
        prop_assert_eq!(back, x);
    }

    #[test]
    fn pauli_images_are_multiplicative((x, y) in (1usize..=3).prop_flat_map(|m| (element(m, 4), element(m, 4)))) {
        let s = SignRep::positive(x.num_factors());
        let lhs = element_image(&s, &(&x * &y)).unwrap();
        let rhs = &element_image(&s, &x).unwrap() * &element_image(&s, &y).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn tensor_is_a_homomorphism(
        (a, c) in (element(1, 4), element(1, 4)),
        (b, d) in (element(2, 4), element(2, 4)),
    ) {
        prop_assert_eq!(&a.tensor(&b) * &c.tensor(&d), (&a * &c).tensor(&(&b * &d)));
    }
}

static PROJECTORS: LazyLock<Vec<(usize, Vec<CharacterProjector>)>> = LazyLock::new(|| {
    (0..3)
        .map(|which| {
            let t = fixture(which);
            let ct = character_table_abelian(&t, RowOrder::default()).unwrap();
            (t.num_factors().unwrap(), build_projectors(&t, &ct).unwrap())
        })
        .collect()
});

proptest! {
    #![proptest_config(config(200, 0x000d_f5d5))]

    #[test]
    fn components_sum_to_state(which in 0usize..3, x in element(4, 6), y in element(3, 6)) {
        let (m, ps) = &PROJECTORS[which];
        let m = *m;
        let state = IdealElement::from_left_factor(if m == 4 { &x } else { &y }).unwrap();
        let mut total = IdealElement::zero(m);
        for p in ps {
            total = total.try_add(&project_state(p, &state).unwrap()).unwrap();
        }
        prop_assert_eq!(total, state);
    }
}

proptest! {
    #![proptest_config(config(300, 0x0000_de7e))]

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(scalar(), 9), b in prop::collection::vec(scalar(), 9)) {
        let mat = |v: &[GaussianRational]| ExactMatrix::from_fn(3, 3, |i, j| v[3 * i + j].clone());
        let (ma, mb) = (mat(&a), mat(&b));
        let lhs = ma.matmul(&mb).unwrap().determinant().unwrap();
        prop_assert_eq!(lhs, &ma.determinant().unwrap() * &mb.determinant().unwrap());
        prop_assert_eq!(ma.determinant().unwrap(), cofactor_det(&ma));
    }
}

// Laplace expansion along the first row.
fn cofactor_det(m: &ExactMatrix) -> GaussianRational {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut total = GaussianRational::zero();
    for col in 0..n {
        let minor = ExactMatrix::from_fn(n - 1, n - 1, |i, j| m.get(i + 1, if j < col { j } else { j + 1 }).clone());
        let term = m.get(0, col) * &cofactor_det(&minor);
        total = if col % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

proptest! {
    #![proptest_config(config(100, 0x0000_e16e))]

    #[test]
    fn jacobi_diagonalizes_random_hermitian(
        (n, raw) in (1usize..=16).prop_flat_map(|n| (Just(n), prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)))
    ) {
        let a = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(raw[i * n + j].0, raw[i * n + j].1));
        let h = &a + &a.adjoint();
        let eig = hermitian_eig(&h).unwrap();
        prop_assert!(eig.unitary.unitarity_defect() <= 1e-10);
        let d = &(&eig.unitary * &h) * &eig.unitary.adjoint();
        let diag: Vec<Complex64> = eig.values.iter().map(|&l| Complex64::new(l, 0.0)).collect();
        prop_assert!(max_abs_diff(&d, &ComplexMatrix::diag(&diag)) <= 1e-9);
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!((eig.values.iter().sum::<f64>() - h.trace().re).abs() <= 1e-9);
    }
}
