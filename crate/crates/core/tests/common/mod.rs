#![allow(dead_code)]

use ldicode::{integer_symplectic_product, rank_mod_p, IntMatrix, Modulus, StabilizerCode};
use rand::rngs::StdRng;
use rand::Rng;

/// A random valid code over the prime `p`: rows are drawn one at a time and
/// kept when they commute with every row so far and raise the rank.
pub fn random_code(rng: &mut StdRng, p: u64, n: usize, r: usize) -> StabilizerCode {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut attempts = 0;
    while rows.len() < r && attempts < 2000 {
        attempts += 1;
        let cand: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(0..p as i64)).collect();
        if rows.iter().any(|g| {
            integer_symplectic_product(g, &cand)
                .unwrap()
                .rem_euclid(p as i128)
                != 0
        }) {
            continue;
        }
        let mut next = rows.clone();
        next.push(cand);
        let m = IntMatrix::from_rows(&next, 2 * n).unwrap();
        if rank_mod_p(&m, p).unwrap() == next.len() {
            rows = next;
        }
    }
    StabilizerCode::new(n, Modulus::Finite(p), rows).expect("generator keeps codes valid")
}

/// Random shape with `1 <= n <= max_n` and `1 <= r <= n`.
pub fn random_shape(rng: &mut StdRng, max_n: usize) -> (usize, usize) {
    let n = rng.gen_range(1..=max_n);
    (n, rng.gen_range(1..=n))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, q: u64) -> Vec<Vec<u64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..q)).collect())
        .collect()
}

/// Every `x` in `Z_Q^cols` with `M x = 0`.
pub fn brute_force_kernel(m: &[Vec<u64>], cols: usize, q: u64) -> Vec<Vec<u64>> {
    let total = q.pow(cols as u32);
    let mut out = Vec::new();
    let mut x = vec![0u64; cols];
    for idx in 0..total {
        let mut t = idx;
        for xi in x.iter_mut() {
            *xi = t % q;
            t /= q;
        }
        if m.iter()
            .all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % q == 0)
        {
            out.push(x.clone());
        }
    }
    out
}
