mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tiltbench::analysis::fit_recurrence;
use tiltbench::data;
use tiltbench::field::Scalar;
use tiltbench::homotopy::{random_complex, Complex, RandomComplexSpec};
use tiltbench::matrix::Matrix;
use tiltbench::module::{hom_space, projective_modules, Representation};

use common::*;

fn gf3_matrix() -> impl Strategy<Value = (usize, usize, Vec<u32>, Vec<u32>)> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), proptest::collection::vec(0u32..3, r * c), proptest::collection::vec(0u32..3, r))
    })
}

fn build(r: usize, c: usize, entries: &[u32]) -> Matrix {
    let f = gf(3, 1);
    let rows: Vec<Vec<Scalar>> =
        entries.chunks(c).map(|row| row.iter().map(|&x| f.element(x).unwrap()).collect()).collect();
    Matrix::from_rows(&f, c, &rows[..r])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gf3_matrix_round_trips((r, c, entries, x) in gf3_matrix()) {
        let m = build(r, c, &entries);
        let f = gf(3, 1);
        let x: Vec<Scalar> = x.iter().map(|&v| f.element(v).unwrap()).collect();
        prop_assert_eq!(check_matrix_round_trip(&m, &x), Ok(()));
    }

    #[test]
    fn product_rank_is_bounded((r, c, entries, _x) in gf3_matrix(), k in 1usize..6, seed in any::<u64>()) {
        let m = build(r, c, &entries);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_matrix(&mut rng, &gf(3, 1), c, k);
        let p = m.mul(&n).unwrap();
        prop_assert!(p.rank() <= m.rank().min(n.rank()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_complexes_satisfy_d_squared_zero(seed in any::<u64>()) {
        let a = data::ex1().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Complex = random_complex(&mut rng, &a, &RandomComplexSpec::default());
        prop_assert!(c.verify(&a).is_ok());
        let shifted = c.shift(2);
        prop_assert_eq!(shifted.bottom, c.bottom - 2);
    }

    #[test]
    fn hom_space_elements_intertwine(i in 0usize..2, j in 0usize..2, seed in any::<u64>()) {
        let a = data::ex1().unwrap().into_shared();
        let ps = projective_modules(&a);
        let h = hom_space(&ps[i].rep, &ps[j].rep).unwrap();
        prop_assert_eq!(h.dim(), a.cartan_matrix()[j][i]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(f) = random_hom(&mut rng, &h, a.field()) {
            prop_assert!(intertwines(&f, ps[i].rep.actions(), ps[j].rep.actions()));
        }
    }

    #[test]
    fn linear_recurrences_are_recovered(a0 in -20i64..20, a1 in -20i64..20, c1 in -3i64..4, c2 in -3i64..4) {
        let mut seq = vec![a0, a1];
        for k in 2..8 {
            seq.push(c1 * seq[k - 1] + c2 * seq[k - 2]);
        }
        let big: Vec<_> = seq.iter().map(|&x| num_bigint::BigInt::from(x)).collect();
        let fit = fit_recurrence(&big).expect("order two always fits eight terms");
        prop_assert!(fit.order <= 2);
        for k in fit.order..seq.len() {
            let pred: num_rational::BigRational = fit
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_rational::BigRational::from_integer(big[k - 1 - i].clone()))
                .sum();
            prop_assert_eq!(pred, num_rational::BigRational::from_integer(big[k].clone()));
        }
    }
}

#[test]
fn field_axioms_small_fields() {
    for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 3)] {
        assert_eq!(check_field_axioms(&gf(p, e)), Ok(()), "GF({p}^{e})");
    }
}

#[test]
fn regular_module_is_sum_of_projectives() {
    let a = data::ex1().unwrap().into_shared();
    let reg = Representation::regular(&a);
    let total: usize = projective_modules(&a).iter().map(|p| p.dim()).sum();
    assert_eq!(reg.dim(), a.dim());
    assert_eq!(total, a.dim());
}
