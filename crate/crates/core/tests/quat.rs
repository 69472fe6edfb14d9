use chevalley::error::Error;
use chevalley::field::{Domain, FieldDescriptor, FieldScalar};
use chevalley::matrix::Matrix;
use chevalley::quat::{
    construct, cross_product, embed_m2k, find_lm, four_square, four_square_identity, hamilton, is_split, pure_bilinear,
    unit_quat_rotation, unit_quat_to_su2, zero_divisor, Construction, Quaternion, QuaternionAlgebra, SplitResult,
};
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> Domain {
    FieldDescriptor::prime(p).unwrap()
}

fn algebra(d: &Domain, a: i64, b: i64) -> QuaternionAlgebra<FieldScalar> {
    QuaternionAlgebra::new(FieldScalar::from_int(d, a), FieldScalar::from_int(d, b)).unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, alg: &QuaternionAlgebra<FieldScalar>) -> Quaternion<FieldScalar> {
    let d = alg.a().domain().clone();
    alg.element(std::array::from_fn(|_| FieldScalar::from_int(&d, rng.gen_range(-20..=20))))
}

fn random_pure(rng: &mut ChaCha8Rng, alg: &QuaternionAlgebra<FieldScalar>) -> Quaternion<FieldScalar> {
    random_element(rng, alg).pure_part()
}

fn all_constructions(alg: &QuaternionAlgebra<FieldScalar>) -> Vec<Construction<FieldScalar>> {
    let ab = alg.a().clone() * alg.b().clone();
    vec![
        Construction::Canonical,
        Construction::GradedTensor,
        Construction::Doubling,
        Construction::Clifford,
        Construction::Cyclic,
        Construction::CrossProduct { c: ab.clone() },
        Construction::CrossProduct { c: -ab },
    ]
}

#[test]
fn constructions_agree() {
    for (d, a, b) in
        [(fp(5), 2, 3), (FieldDescriptor::rationals(), -1, -1), (fp(7), 3, 5), (FieldDescriptor::rationals(), 2, -7)]
    {
        let alg = algebra(&d, a, b);
        let canonical = alg.structure_constants();
        assert!(canonical.is_associative());
        assert!(canonical.has_identity());
        for method in all_constructions(&alg) {
            let constants = construct(&method, alg.a(), alg.b()).unwrap();
            assert_eq!(constants, canonical, "{} over {d} with ({a},{b})", method.name());
        }
    }
}

#[test]
fn graded_tensor_anticommutes_and_doubling_squares_to_lambda() {
    let d = fp(11);
    let alg = algebra(&d, 2, 7);
    let graded = construct(&Construction::GradedTensor, alg.a(), alg.b()).unwrap();
    let ij = graded.product(1, 2).to_vec();
    let ji: Vec<FieldScalar> = graded.product(2, 1).iter().map(|x| -x.clone()).collect();
    assert_eq!(ij, ji);
    let doubled = construct(&Construction::Doubling, alg.a(), alg.b()).unwrap();
    assert_eq!(doubled.product(2, 2), alg.scalar(alg.b().clone()).coords());
}

#[test]
fn bad_cross_product_orientation() {
    let d = fp(7);
    let alg = algebra(&d, 3, 5);
    let c = FieldScalar::from_int(&d, 2);
    assert!(matches!(construct(&Construction::CrossProduct { c }, alg.a(), alg.b()), Err(Error::InvalidParameters(_))));
    assert!(matches!(
        QuaternionAlgebra::new(FieldScalar::zero(&d), FieldScalar::one(&d)),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn arithmetic_identities_over_f7() {
    let d = fp(7);
    let alg = algebra(&d, 3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let (x, y, z) =
            (random_element(&mut rng, &alg), random_element(&mut rng, &alg), random_element(&mut rng, &alg));
        assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        let tr = alg.scalar(x.trace());
        let n = alg.scalar(x.norm());
        assert!((&(&x * &x) - &(&tr * &x)) + n == alg.scalar(FieldScalar::zero(&d)));
    }
}

#[test]
fn hamilton_table_over_q() {
    let q = FieldDescriptor::rationals();
    let h = algebra(&q, -1, -1);
    assert_eq!(&h.basis(1) * &h.basis(2), h.basis(3));
    assert_eq!(&h.basis(2) * &h.basis(1), -h.basis(3));
    let one = h.basis(0);
    assert!(one.norm().is_one());
    assert_eq!(one.trace(), FieldScalar::from_int(&q, 2));
}

#[test]
fn cross_product_identities() {
    let d = fp(7);
    let alg = algebra(&d, 3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let (u, v, w) = (random_pure(&mut rng, &alg), random_pure(&mut rng, &alg), random_pure(&mut rng, &alg));
        let x = |p: &Quaternion<FieldScalar>, q: &Quaternion<FieldScalar>| cross_product(p, q).unwrap();
        assert!(x(&v, &v).is_zero());
        let jacobi = x(&u, &x(&v, &w)) + x(&w, &x(&u, &v)) + x(&v, &x(&w, &u));
        assert!(jacobi.is_zero());
        let expansion = v.scale(&pure_bilinear(&u, &w).unwrap()) - w.scale(&pure_bilinear(&u, &v).unwrap());
        assert_eq!(x(&u, &x(&v, &w)), expansion);
        let product = &v * &w;
        assert_eq!(product.coords()[0], -pure_bilinear(&v, &w).unwrap());
        assert_eq!(product.pure_part(), x(&v, &w));
        // N0(u, v×w) = ab det(u, v, w).
        let rows: Vec<Vec<FieldScalar>> = [&u, &v, &w].iter().map(|q| q.coords()[1..].to_vec()).collect();
        let det = Matrix::from_rows(rows, FieldScalar::one(&d)).unwrap().det().unwrap();
        assert_eq!(pure_bilinear(&u, &x(&v, &w)).unwrap(), alg.a().clone() * alg.b().clone() * det);
    }
    assert_eq!(cross_product(&alg.basis(0), &alg.basis(1)), Err(Error::NotPure));
}

#[test]
fn hamilton_cross_product() {
    let h = algebra(&FieldDescriptor::rationals(), -1, -1);
    assert_eq!(cross_product(&h.basis(1), &h.basis(2)).unwrap(), h.basis(3));
}

#[test]
fn embedding_is_a_homomorphism() {
    let d = fp(7);
    let alg = algebra(&d, 3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = embed_m2k(&alg.basis(0)).unwrap().domain().clone();
    assert!(embed_m2k(&alg.basis(0)).unwrap().is_identity());
    let lift = |x: FieldScalar| FieldScalar::etale(&k, x, FieldScalar::zero(&d)).unwrap();
    for _ in 0..100 {
        let (x, y) = (random_element(&mut rng, &alg), random_element(&mut rng, &alg));
        let (ex, ey) = (embed_m2k(&x).unwrap(), embed_m2k(&y).unwrap());
        assert_eq!(embed_m2k(&(&x * &y)).unwrap(), ex.mul(&ey).unwrap());
        assert_eq!(ex.det().unwrap(), lift(x.norm()));
        assert_eq!(ex.trace().unwrap(), lift(x.trace()));
    }
}

#[test]
fn finite_field_algebras_split() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let d = fp(p);
        for _ in 0..20 {
            let a = rng.gen_range(1..p) as i64;
            let b = rng.gen_range(1..p) as i64;
            let alg = algebra(&d, a, b);
            let SplitResult::Split { x, y, z } = is_split(&alg, None).unwrap() else { panic!("({a},{b}) over F_{p}") };
            assert_eq!(
                alg.a().clone() * x.clone() * x.clone() + alg.b().clone() * y.clone() * y.clone(),
                z.clone() * z.clone()
            );
            let u = zero_divisor(&alg, &x, &y, &z);
            assert!(!u.is_zero());
            assert!(u.norm().is_zero());
            let product = embed_m2k(&u).unwrap().mul(&embed_m2k(&u.conj()).unwrap()).unwrap();
            assert!(product.is_zero());
        }
    }
}

#[test]
fn conic_examples() {
    let d = fp(5);
    assert!(matches!(is_split(&algebra(&d, 2, 3), None).unwrap(), SplitResult::Split { .. }));
    let q = FieldDescriptor::rationals();
    assert_eq!(is_split(&algebra(&q, -1, -1), Some(100)).unwrap(), SplitResult::Unknown);
    assert!(matches!(is_split(&algebra(&q, 2, 7), Some(20)).unwrap(), SplitResult::Split { .. }));
    let one = FieldScalar::one(&q);
    assert_eq!(
        is_split(&algebra(&q, 1, 3), None).unwrap(),
        SplitResult::Split { x: one.clone(), y: FieldScalar::zero(&q), z: one }
    );
    let ratfn = FieldDescriptor::rational_functions(3).unwrap();
    let alg = QuaternionAlgebra::new(FieldScalar::one(&ratfn), FieldScalar::one(&ratfn)).unwrap();
    assert!(matches!(is_split(&alg, None), Err(Error::UnsupportedBase(_))));
}

#[test]
fn four_square_identity_on_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let x: [i128; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
        let y: [i128; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
        let n = |v: &[i128; 4]| v.iter().map(|t| t * t).sum::<i128>();
        assert_eq!(n(&four_square_identity(&x, &y)), n(&x) * n(&y));
    }
}

#[test]
fn four_square_small_cases_against_brute_force() {
    for n in 0u64..200 {
        let r = four_square(n);
        assert_eq!(r.iter().map(|t| t * t).sum::<u64>(), n);
        let mut representable = false;
        for a in 0..15u64 {
            for b in 0..=a {
                for c in 0..=b {
                    let rest = n as i64 - (a * a + b * b + c * c) as i64;
                    if rest >= 0 && ((rest as f64).sqrt().round() as i64).pow(2) == rest {
                        representable = true;
                    }
                }
            }
        }
        assert!(representable);
    }
    assert_eq!(four_square(1_000_003).iter().map(|t| t * t).sum::<u64>(), 1_000_003);
}

#[test]
fn find_lm_bounds() {
    for p in [3u64, 5, 7, 11, 13, 101, 997] {
        let (l, m) = find_lm(p).unwrap();
        assert!(l <= (p - 1) / 2 && m <= (p - 1) / 2);
        assert_eq!((1 + l * l + m * m) % p, 0);
    }
}

fn unit(rng: &mut ChaCha8Rng) -> Quaternion<f64> {
    let h = hamilton::<f64>();
    let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    h.element(c.map(|x| x / n))
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn close3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3], tol: f64) -> bool {
    (0..3).all(|i| (0..3).all(|j| (a[i][j] - b[i][j]).abs() <= tol))
}

#[test]
fn rotations_from_unit_quaternions() {
    let h = hamilton::<f64>();
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    assert!(close3(&unit_quat_rotation(&h.basis(0)).unwrap(), &id, 1e-15));
    for step in 0..20 {
        let theta = 0.31 * step as f64;
        let a = h.element([0.0, 0.0, theta.cos(), theta.sin()]);
        let m = unit_quat_rotation(&a).unwrap();
        let (c, s) = ((2.0 * theta).cos(), (2.0 * theta).sin());
        let expected = [[-1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, -c]];
        assert!(close3(&m, &expected, 1e-12));
        assert!(close3(&unit_quat_rotation(&-a).unwrap(), &m, 1e-12));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (a, b) = (unit(&mut rng), unit(&mut rng));
        let (ma, mb) = (unit_quat_rotation(&a).unwrap(), unit_quat_rotation(&b).unwrap());
        assert!(close3(&unit_quat_rotation(&(&a * &b)).unwrap(), &mat_mul(&ma, &mb), 1e-9));
        let mt: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| ma[j][i]));
        assert!(close3(&mat_mul(&ma, &mt), &id, 1e-9));
        let det = ma[0][0] * (ma[1][1] * ma[2][2] - ma[1][2] * ma[2][1])
            - ma[0][1] * (ma[1][0] * ma[2][2] - ma[1][2] * ma[2][0])
            + ma[0][2] * (ma[1][0] * ma[2][1] - ma[1][1] * ma[2][0]);
        assert!((det - 1.0).abs() < 1e-9);
    }
    assert!(matches!(unit_quat_rotation(&h.element([2.0, 0.0, 0.0, 0.0])), Err(Error::NotUnit(_))));
}

#[test]
fn su2_realization() {
    let h = hamilton::<f64>();
    let i = Complex::new(0.0, 1.0);
    let zero = Complex::new(0.0, 0.0);
    assert_eq!(unit_quat_to_su2(&h.basis(1)).unwrap(), [[i, zero], [zero, -i]]);
    assert_eq!(unit_quat_to_su2(&h.basis(3)).unwrap(), [[zero, -i], [-i, zero]]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (a, b) = (unit(&mut rng), unit(&mut rng));
        let (ma, mb) = (unit_quat_to_su2(&a).unwrap(), unit_quat_to_su2(&b).unwrap());
        let prod: [[Complex<f64>; 2]; 2] =
            std::array::from_fn(|r| std::array::from_fn(|c| ma[r][0] * mb[0][c] + ma[r][1] * mb[1][c]));
        let mab = unit_quat_to_su2(&(&a * &b)).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert!((prod[r][c] - mab[r][c]).norm() < 1e-9);
            }
        }
        let det = ma[0][0] * ma[1][1] - ma[0][1] * ma[1][0];
        assert!((det - Complex::new(1.0, 0.0)).norm() < 1e-9);
    }
}

proptest! {
    #[test]
    fn norm_is_multiplicative_over_q(x in prop::array::uniform4(-50i64..50), y in prop::array::uniform4(-50i64..50), a in 1i64..9, b in 1i64..9) {
        let q = FieldDescriptor::rationals();
        let alg = algebra(&q, -a, b);
        let lift = |v: [i64; 4]| alg.element(v.map(|t| FieldScalar::from_int(&q, t)));
        let (x, y) = (lift(x), lift(y));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn four_square_sums_correctly(n in 0u64..200_000) {
        prop_assert_eq!(four_square(n).iter().map(|t| t * t).sum::<u64>(), n);
    }
}
