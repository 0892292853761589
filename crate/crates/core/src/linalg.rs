//! Exact integer and modular linear algebra.
//!
//! Everything that concerns subgroups of `Z_Q^m` goes through the Smith
//! normal form of an integer matrix: with `U M V = D`, the row span of `M`
//! modulo `Q` is `(d_1 Z_Q) x (d_2 Z_Q) x ...` in the coordinates given by
//! `V`, which answers order, membership and kernel questions directly.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime, mul_mod};
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows. `cols` is needed for the
    /// empty case.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        Ok(m)
    }

    pub fn from_u64_rows(rows: &[Vec<u64>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Rows `i, j` replaced by `[[a, b], [c, d]] * [row_i; row_j]`.
    fn mix_rows(&mut self, i: usize, j: usize, t: &[[BigInt; 2]; 2]) {
        for col in 0..self.cols {
            let x = self.get(i, col).clone();
            let y = self.get(j, col).clone();
            self.set(i, col, &t[0][0] * &x + &t[0][1] * &y);
            self.set(j, col, &t[1][0] * &x + &t[1][1] * &y);
        }
    }

    /// Columns `i, j` replaced by `[col_i col_j] * [[a, b], [c, d]]`.
    fn mix_cols(&mut self, i: usize, j: usize, t: &[[BigInt; 2]; 2]) {
        for row in 0..self.rows {
            let x = self.get(row, i).clone();
            let y = self.get(row, j).clone();
            self.set(row, i, &x * &t[0][0] + &y * &t[1][0]);
            self.set(row, j, &x * &t[0][1] + &y * &t[1][1]);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `V`, kept alongside since quotient computations need it.
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Smith normal form.
///
/// Pivots on the nonzero entry of smallest absolute value (lowest row, then
/// column, on ties) until the matrix is diagonal, then repairs the
/// divisibility chain with pairwise gcd/lcm steps.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let len = rows.min(cols);

    let mut t = 0;
    'outer: while t < len {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = a.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).magnitude() <= e.magnitude() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&pivot);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&pivot);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                // V^-1 picks up the inverse column operation on the left.
                v_inv.add_row(t, j, &-&q);
                clean &= a.get(t, j).is_zero();
            }
            if clean {
                break;
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    // Divisibility chain.
    for i in 0..len {
        for j in i + 1..len {
            let di = a.get(i, i).clone();
            let dj = a.get(j, j).clone();
            if di.is_zero() {
                if !dj.is_zero() {
                    a.swap_rows(i, j);
                    u.swap_rows(i, j);
                    a.swap_cols(i, j);
                    v.swap_cols(i, j);
                    v_inv.swap_rows(i, j);
                }
                continue;
            }
            if dj.is_multiple_of(&di) {
                continue;
            }
            // [di 0; 0 dj] -> [g 0; 0 lcm]
            let e = di.extended_gcd(&dj);
            let (g, s, tt) = (e.gcd, e.x, e.y);
            let one = BigInt::one();
            let zero = BigInt::zero();
            let row_add = [[one.clone(), one.clone()], [zero.clone(), one.clone()]];
            a.mix_rows(i, j, &row_add);
            u.mix_rows(i, j, &row_add);
            let col = [[s.clone(), -(&dj / &g)], [tt.clone(), &di / &g]];
            let col_inv = [[&di / &g, &dj / &g], [-tt.clone(), s.clone()]];
            a.mix_cols(i, j, &col);
            v.mix_cols(i, j, &col);
            v_inv.mix_rows(i, j, &col_inv);
            let k = -(&tt * &dj / &g);
            a.add_row(j, i, &k);
            u.add_row(j, i, &k);
        }
    }

    SnfDecomposition { d: a, u, v, v_inv }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn big_mod(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q))
        .to_u64()
        .expect("residue fits in u64")
}

/// Rank over the prime field `GF(p)`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    check_prime(p)?;
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| big_mod(x, p)).collect())
        .collect();
    Ok(rank_mod_p_rows(&mut rows, p))
}

pub(crate) fn rank_mod_p_rows(rows: &mut [Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = crate::arith::mod_inverse(rows[rank][c], p).expect("nonzero element of a field");
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            for j in 0..cols {
                let sub = mul_mod(f, rows[rank][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn gcd_with_modulus(d: &BigInt, q: u64) -> u64 {
    if d.is_zero() {
        q
    } else {
        crate::arith::gcd(big_mod(&d.abs(), q), q)
    }
}

/// Order of the subgroup of `Z_Q^cols` spanned by the rows of `m`.
pub fn subgroup_order(m: &IntMatrix, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let snf = smith_normal_form(m);
    Ok(span_order_from_factors(&snf.invariant_factors(), q))
}

pub(crate) fn span_order_from_factors(factors: &[BigInt], q: u64) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, d| {
        acc * BigUint::from(q / gcd_with_modulus(d, q))
    })
}

/// Precomputed data for repeated membership tests against one row span.
#[derive(Debug, Clone)]
pub struct SpanMembership {
    q: u64,
    rows: usize,
    /// `V` reduced mod `Q`, column-major for the `v * V` product.
    v_cols: Vec<Vec<u64>>,
    /// `gcd(d_i, Q)` per coordinate; `Q` where the span is zero.
    gcds: Vec<u64>,
    /// `d_i` reduced mod `Q`, zero past the diagonal.
    factors: Vec<u64>,
    u: IntMatrix,
}

impl SpanMembership {
    pub fn new(m: &IntMatrix, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        let snf = smith_normal_form(m);
        let cols = m.cols;
        let inv = snf.invariant_factors();
        let mut gcds = vec![q; cols];
        let mut factors = vec![0; cols];
        for (i, d) in inv.iter().enumerate() {
            gcds[i] = gcd_with_modulus(d, q);
            factors[i] = big_mod(d, q);
        }
        let v_cols = (0..cols)
            .map(|j| (0..cols).map(|i| big_mod(snf.v.get(i, j), q)).collect())
            .collect();
        Ok(SpanMembership {
            q,
            rows: m.rows,
            v_cols,
            gcds,
            factors,
            u: snf.u,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Image `v * V (mod Q)` of a reduced vector.
    pub(crate) fn transform(&self, v: &[u64]) -> Vec<u64> {
        self.v_cols
            .iter()
            .map(|col| {
                col.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, self.q)) % self.q)
            })
            .collect()
    }

    pub(crate) fn v_columns(&self) -> &[Vec<u64>] {
        &self.v_cols
    }

    /// Membership decided from coordinates already transformed by `V`.
    pub(crate) fn contains_transformed(&self, w: &[u64]) -> bool {
        w.iter().zip(&self.gcds).all(|(&wi, &g)| wi % g == 0)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.v_cols.len() {
            return Err(Error::LengthMismatch {
                expected: self.v_cols.len(),
                found: v.len(),
            });
        }
        let reduced: Vec<u64> = v
            .iter()
            .map(|&x| x.rem_euclid(self.q as i64) as u64)
            .collect();
        Ok(self.contains_transformed(&self.transform(&reduced)))
    }

    /// Coefficients `c` with `c * M = v (mod Q)`, if any exist.
    pub fn witness(&self, v: &[i64]) -> Result<Option<Vec<u64>>> {
        if v.len() != self.v_cols.len() {
            return Err(Error::LengthMismatch {
                expected: self.v_cols.len(),
                found: v.len(),
            });
        }
        let q = self.q;
        let reduced: Vec<u64> = v.iter().map(|&x| x.rem_euclid(q as i64) as u64).collect();
        let w = self.transform(&reduced);
        if !self.contains_transformed(&w) {
            return Ok(None);
        }
        // Solve y_i d_i = w_i (mod Q) coordinate-wise, then c = y U.
        let mut y = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows.min(w.len()) {
            let g = self.gcds[i];
            if g == q {
                continue;
            }
            let modulus = q / g;
            let unit = crate::arith::mod_inverse((self.factors[i] / g) % modulus, modulus)
                .expect("d/g is a unit modulo Q/g");
            y[i] = BigInt::from(mul_mod(w[i] / g, unit, modulus));
        }
        let c = self.u.left_mul_vec(&y)?;
        Ok(Some(c.iter().map(|x| big_mod(x, q)).collect()))
    }
}

/// Whether `v` lies in the row span of `m` modulo `Q`; returns a witness
/// coefficient vector when it does.
pub fn membership(v: &[i64], m: &IntMatrix, q: u64) -> Result<Option<Vec<u64>>> {
    if v.len() != m.cols {
        return Err(Error::LengthMismatch {
            expected: m.cols,
            found: v.len(),
        });
    }
    SpanMembership::new(m, q)?.witness(v)
}

/// Generators of `{x : M x = 0 (mod Q)}`; all-zero generators are dropped.
pub fn kernel_mod_q(m: &IntMatrix, q: u64) -> Result<Vec<Vec<u64>>> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let snf = smith_normal_form(m);
    let inv = snf.invariant_factors();
    let mut gens = Vec::new();
    for j in 0..m.cols {
        let step = match inv.get(j) {
            Some(d) => q / gcd_with_modulus(d, q),
            None => 1,
        };
        let g: Vec<u64> = (0..m.cols)
            .map(|i| mul_mod(big_mod(snf.v.get(i, j), q), step, q))
            .collect();
        if g.iter().any(|&x| x != 0) {
            gens.push(g);
        }
    }
    Ok(gens)
}

/// Order of `{x : M x = 0 (mod Q)}`.
pub fn kernel_order(m: &IntMatrix, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let inv = smith_normal_form(m).invariant_factors();
    let mut order = BigUint::one();
    for j in 0..m.cols {
        order *= match inv.get(j) {
            Some(d) => gcd_with_modulus(d, q),
            None => q,
        };
    }
    Ok(order)
}

/// Oracle: the subgroup generated by `gens` in `Z_Q^m`, by closure under
/// adding generators. Fails once more than `budget` elements are found.
pub fn brute_force_span(gens: &[Vec<u64>], q: u64, budget: usize) -> Result<HashSet<Vec<u64>>> {
    let width = gens.first().map_or(0, |g| g.len());
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let zero = vec![0u64; width];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b % q) % q).collect();
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget as u64));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}
