use chevalley::error::Error;
use chevalley::euclid::{
    approx_eq, classify_o2, is_orthogonal, iwasawa, platonic_enumerate, reflection, rotate_plane, rotation2,
    AffineIsometry, O2Class,
};
use chevalley::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
    let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    Matrix::from_rows(rows, 1.0).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
    loop {
        if let Ok(d) = iwasawa(&random_matrix(rng, n)) {
            return d.s;
        }
    }
}

fn det(m: &Matrix<f64>) -> f64 {
    m.det().unwrap()
}

#[test]
fn iwasawa_on_random_sl5() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut done = 0;
    while done < 100 {
        let a = random_matrix(&mut rng, 5);
        let d = det(&a);
        if d.abs() < 1e-3 {
            continue;
        }
        // Scale a row to land in SL_5.
        let mut a = a;
        for j in 0..5 {
            a[(0, j)] /= d;
        }
        let w = iwasawa(&a).unwrap();
        assert!(approx_eq(&w.p.mul(&w.s).unwrap(), &a, 1e-9));
        assert!(w.p.is_upper_triangular());
        assert!((0..5).all(|i| w.p[(i, i)] > 0.0));
        assert!(is_orthogonal(&w.s));
        assert_eq!(iwasawa(&a).unwrap(), w);
        done += 1;
    }
}

#[test]
fn iwasawa_of_orthogonal_is_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let s = random_orthogonal(&mut rng, 4);
        let w = iwasawa(&s).unwrap();
        assert!(approx_eq(&w.p, &Matrix::identity(4, 1.0), 1e-9));
        assert!(approx_eq(&w.s, &s, 1e-9));
    }
}

#[test]
fn isometry_group_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let n = 3;
    for _ in 0..50 {
        let f = AffineIsometry::new(random_orthogonal(&mut rng, n), random_vector(&mut rng, n)).unwrap();
        let g = AffineIsometry::new(random_orthogonal(&mut rng, n), random_vector(&mut rng, n)).unwrap();
        let h = AffineIsometry::new(random_orthogonal(&mut rng, n), random_vector(&mut rng, n)).unwrap();
        assert!(f.compose(&f.inverse()).unwrap().approx_eq(&AffineIsometry::identity(n), 1e-9));
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        assert!(left.approx_eq(&right, 1e-9));
        let x = random_vector(&mut rng, n);
        let fx = f.apply(&g.apply(&x).unwrap()).unwrap();
        let composed = f.compose(&g).unwrap().apply(&x).unwrap();
        assert!(fx.iter().zip(&composed).all(|(a, b)| (a - b).abs() < 1e-9));
        let b = random_vector(&mut rng, n);
        let conj = f.conjugate_translation(&b).unwrap();
        assert!(conj.is_translation(1e-9));
        let ab = f.matrix().apply(&b).unwrap();
        assert!(conj.translation_part().iter().zip(&ab).all(|(x, y)| (x - y).abs() < 1e-9));
    }
    let ta = AffineIsometry::translation(vec![1.0, 2.0]);
    let tb = AffineIsometry::translation(vec![-0.5, 4.0]);
    assert!(ta.compose(&tb).unwrap().approx_eq(&AffineIsometry::translation(vec![0.5, 6.0]), 1e-15));
    assert!(matches!(ta.compose(&AffineIsometry::identity(3)), Err(Error::DimensionMismatch(_))));
    assert!(matches!(
        AffineIsometry::new(Matrix::diagonal(&[2.0, 1.0], 1.0), vec![0.0, 0.0]),
        Err(Error::NotOrthogonal)
    ));
}

#[test]
fn reflections() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let n = rng.gen_range(2..6);
        let v = random_vector(&mut rng, n);
        let r = reflection(&v).unwrap();
        assert!(is_orthogonal(&r));
        assert!((det(&r) + 1.0).abs() < 1e-9);
        assert!(approx_eq(&r.mul(&r).unwrap(), &Matrix::identity(n, 1.0), 1e-9));
        let rv = r.apply(&v).unwrap();
        assert!(rv.iter().zip(&v).all(|(a, b)| (a + b).abs() < 1e-9));
        let w = random_vector(&mut rng, n);
        let r2 = reflection(&w).unwrap();
        let product = r.mul(&r2).unwrap();
        assert!((det(&product) - 1.0).abs() < 1e-9);
        if n == 2 {
            assert!(matches!(classify_o2(&product).unwrap(), O2Class::Rotation(_)));
        }
    }
}

#[test]
fn rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let composed = rotation2(a).mul(&rotation2(b)).unwrap();
        assert!(approx_eq(&composed, &rotation2(a + b), 1e-12));
        let s = Matrix::diagonal(&[1.0, -1.0], 1.0);
        let conj = s.mul(&rotation2(a)).unwrap().mul(&s.inverse().unwrap()).unwrap();
        assert!(approx_eq(&conj, &rotation2(-a), 1e-12));
    }
    let m = rotate_plane(2, 0.7, 4).unwrap();
    assert!(is_orthogonal(&m));
    for i in [0, 3] {
        assert_eq!(m.column(i), Matrix::identity(4, 1.0).column(i));
    }
    assert!((m[(1, 1)] - 0.7f64.cos()).abs() < 1e-15 && (m[(2, 1)] + 0.7f64.sin()).abs() < 1e-15);
    assert!(matches!(rotate_plane(4, 0.1, 4), Err(Error::IndexError(_))));
}

#[test]
fn o2_classification_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..100 {
        let m = if rng.gen_bool(0.5) {
            rotation2(rng.gen_range(-3.1..3.1))
        } else {
            reflection(&random_vector(&mut rng, 2)).unwrap()
        };
        let class = classify_o2(&m).unwrap();
        assert!(approx_eq(&class.matrix(), &m, 1e-9));
        assert!(is_orthogonal(&class.matrix()));
        if let O2Class::Reflection(phi) = class {
            let line = [phi.cos(), phi.sin()];
            let image = m.apply(&line).unwrap();
            assert!((image[0] - line[0]).abs() < 1e-9 && (image[1] - line[1]).abs() < 1e-9);
        }
    }
}

#[test]
fn platonic_solids_satisfy_the_relations() {
    let solids = platonic_enumerate();
    assert_eq!(solids.len(), 5);
    for s in &solids {
        assert_eq!(s.n * s.f, 2 * s.e);
        assert_eq!(s.m * s.v, 2 * s.e);
        assert_eq!(s.v as i64 - s.e as i64 + s.f as i64, 2);
        assert!(2 * (s.n + s.m) > s.n * s.m);
    }
    assert!(!solids.iter().any(|s| (s.n, s.m) == (6, 3)));
}
