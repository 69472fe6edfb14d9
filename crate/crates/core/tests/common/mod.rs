#![allow(dead_code)]

use chevalley::field::{Domain, FieldDescriptor, FieldScalar};
use chevalley::matrix::Matrix;

pub fn fp(p: u64) -> Domain {
    FieldDescriptor::prime(p).unwrap()
}

/// Every `n x n` matrix over `F_p`, in row-major lexicographic order.
pub fn all_matrices(n: usize, p: u64) -> Vec<Matrix<FieldScalar>> {
    let d = fp(p);
    let cells = n * n;
    let total = (p as usize).pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut data = vec![FieldScalar::zero(&d); cells];
            for k in (0..cells).rev() {
                data[k] = FieldScalar::from_int(&d, (code % p as usize) as i64);
                code /= p as usize;
            }
            Matrix::new(n, n, data, FieldScalar::one(&d)).unwrap()
        })
        .collect()
}

pub fn gl(n: usize, p: u64) -> Vec<Matrix<FieldScalar>> {
    all_matrices(n, p).into_iter().filter(|m| !m.det().unwrap().is_zero()).collect()
}

pub fn sl(n: usize, p: u64) -> Vec<Matrix<FieldScalar>> {
    all_matrices(n, p).into_iter().filter(|m| m.det().unwrap().is_one()).collect()
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
