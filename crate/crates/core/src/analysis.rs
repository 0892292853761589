//! Logical-space size, logical operators with their torsion orders,
//! exhaustive distance search and the unavoidable/artifact classification of
//! undetectable errors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{factorize, mul_mod};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::linalg::{
    brute_force_span, kernel_mod_q, smith_normal_form, subgroup_order, IntMatrix, SpanMembership,
};
use crate::ring::{
    additive_order_of, integer_symplectic_product, lift_entry, weight_of, LiftPolicy, Modulus,
    PauliVec,
};

fn rows_checked(code: &StabilizerCode, q: u64) -> Result<Vec<Vec<u64>>> {
    let rows = code.rows_mod(q)?;
    let signed: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    for i in 0..signed.len() {
        for j in i + 1..signed.len() {
            let v = integer_symplectic_product(&signed[i], &signed[j])?;
            let v = v.rem_euclid(q as i128) as i64;
            if v != 0 {
                return Err(Error::NonCommuting { i, j, product: v });
            }
        }
    }
    Ok(rows)
}

fn stabilizer_matrix(code: &StabilizerCode, rows: &[Vec<u64>]) -> IntMatrix {
    IntMatrix::from_u64_rows(rows, 2 * code.n()).expect("rows have length 2n")
}

/// `K` (size of the logical space) and `k = log_Q K`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalDimension {
    pub big_k: BigUint,
    pub k: f64,
}

pub fn log_base(x: &BigUint, q: u64) -> f64 {
    // ln of a big integer through its top 64 bits
    let bits = x.bits();
    let ln = if bits <= 1000 {
        x.to_f64().expect("finite below 2^1000").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64 bits").ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln / (q as f64).ln()
}

/// `K = Q^n / |S|` with `|S|` from the Smith normal form.
pub fn logical_dimension(code: &StabilizerCode, q: u64) -> Result<LogicalDimension> {
    let rows = rows_checked(code, q)?;
    let order = subgroup_order(&stabilizer_matrix(code, &rows), q)?;
    let total = BigUint::from(q).pow(code.n() as u32);
    let (big_k, rem) = total.div_rem(&order);
    debug_assert!(rem.is_zero());
    let k = log_base(&big_k, q);
    Ok(LogicalDimension { big_k, k })
}

/// Matrix whose product with `e` is the syndrome: row `i` is
/// `(-z(g_i) | x(g_i))` mod `Q`.
fn syndrome_matrix(n: usize, rows: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|g| {
            let mut h = vec![0u64; 2 * n];
            for k in 0..n {
                h[k] = (q - g[n + k] % q) % q;
                h[n + k] = g[k];
            }
            h
        })
        .collect()
}

/// One generator of the logical group `C(S)/S` with its order there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalOperator {
    pub operator: PauliVec,
    pub order: u64,
}

/// Generators of the centralizer modulo the stabilizer group, split into
/// prime-power cyclic pieces. The product of the orders is `K^2`.
pub fn logical_operators(code: &StabilizerCode, q: u64) -> Result<Vec<LogicalOperator>> {
    let rows = rows_checked(code, q)?;
    let n = code.n();
    let width = 2 * n;
    let modulus = Modulus::Finite(q);
    let h = IntMatrix::from_u64_rows(&syndrome_matrix(n, &rows, q), width)?;
    let centralizer = kernel_mod_q(&h, q)?;

    // Lattice of the centralizer: its generators together with Q Z^{2n}.
    let qb = BigInt::from(q);
    let with_torus = |gens: &[Vec<u64>]| -> IntMatrix {
        let mut m = IntMatrix::zeros(gens.len() + width, width);
        for (i, g) in gens.iter().enumerate() {
            for (j, &x) in g.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        for j in 0..width {
            m.set(gens.len() + j, j, qb.clone());
        }
        m
    };
    let c_snf = smith_normal_form(&with_torus(&centralizer));
    let c_factors = c_snf.invariant_factors();
    // basis row i of the centralizer lattice: d_i * (row i of V^-1)
    let basis: Vec<Vec<BigInt>> = (0..width)
        .map(|i| {
            c_snf
                .v_inv
                .row(i)
                .iter()
                .map(|x| x * &c_factors[i])
                .collect()
        })
        .collect();

    // Stabilizer lattice in those coordinates: x_i = (s V)_i / d_i.
    let s_lattice = with_torus(&rows);
    let mut coords = IntMatrix::zeros(s_lattice.rows(), width);
    for i in 0..s_lattice.rows() {
        let image = c_snf.v.transpose().mul(&column(s_lattice.row(i)))?;
        for j in 0..width {
            let (quot, rem) = image.get(j, 0).div_rem(&c_factors[j]);
            if !rem.is_zero() {
                return Err(Error::Invalid(
                    "stabilizer group is not inside its centralizer".into(),
                ));
            }
            coords.set(i, j, quot);
        }
    }
    let s_snf = smith_normal_form(&coords);
    let orders = s_snf.invariant_factors();

    let mut out = Vec::new();
    for (i, d) in orders.iter().enumerate() {
        let d = d.to_u64().ok_or(Error::Overflow)?;
        if d <= 1 {
            continue;
        }
        let coeffs = s_snf.v_inv.row(i);
        let mut rep = vec![BigInt::zero(); width];
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rep.iter_mut().zip(b) {
                *r += c * x;
            }
        }
        let rep: Vec<u64> = rep
            .iter()
            .map(|x| x.mod_floor(&qb).to_u64().expect("reduced"))
            .collect();
        for (p, e) in factorize(d)? {
            let part = p.pow(e);
            let scale = d / part;
            let entries: Vec<i64> = rep.iter().map(|&x| mul_mod(x, scale, q) as i64).collect();
            out.push(LogicalOperator {
                operator: PauliVec::new(entries, modulus)?,
                order: part,
            });
        }
    }
    Ok(out)
}

fn column(v: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zeros(v.len(), 1);
    for (i, x) in v.iter().enumerate() {
        m.set(i, 0, x.clone());
    }
    m
}

/// Settings for [`brute_force_distance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSearch {
    pub max_weight: usize,
    /// Upper bound on the number of candidate errors examined.
    pub budget: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Only errors supported on these registers are tried.
    pub registers: Option<Vec<usize>>,
}

impl DistanceSearch {
    pub fn new(max_weight: usize) -> Self {
        DistanceSearch {
            max_weight,
            budget: 2_000_000_000,
            jobs: 1,
            registers: None,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn restricted_to(mut self, registers: Vec<usize>) -> Self {
        self.registers = Some(registers);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceResult {
    /// Smallest weight of an undetectable error, with the first one found in
    /// enumeration order.
    Found { distance: usize, witness: PauliVec },
    /// No undetectable error of weight `<= weight`. `budget_exhausted` marks
    /// a search cut short before `max_weight`.
    NoneUpTo {
        weight: usize,
        budget_exhausted: bool,
    },
}

impl DistanceResult {
    pub fn distance(&self) -> Option<usize> {
        match self {
            DistanceResult::Found { distance, .. } => Some(*distance),
            DistanceResult::NoneUpTo { .. } => None,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Per-register contributions of every non-identity local Pauli.
struct SearchTables {
    q: u64,
    n: usize,
    locals: usize,
    /// `syn[reg][local]`: syndrome contribution.
    syn: Vec<Vec<Vec<u64>>>,
    /// `img[reg][local]`: contribution to `e V`.
    img: Vec<Vec<Vec<u64>>>,
    members: SpanMembership,
}

impl SearchTables {
    fn new(n: usize, rows: &[Vec<u64>], q: u64, members: SpanMembership) -> Self {
        let locals = (q * q - 1) as usize;
        let vcols = members.v_columns();
        let mut syn = Vec::with_capacity(n);
        let mut img = Vec::with_capacity(n);
        for j in 0..n {
            let mut s_reg = Vec::with_capacity(locals);
            let mut i_reg = Vec::with_capacity(locals);
            for local in 1..=locals as u64 {
                let (a, b) = (local / q, local % q);
                s_reg.push(
                    rows.iter()
                        .map(|g| (mul_mod(b, g[j], q) + q - mul_mod(a, g[n + j], q)) % q)
                        .collect(),
                );
                i_reg.push(
                    vcols
                        .iter()
                        .map(|col| (mul_mod(a, col[j], q) + mul_mod(b, col[n + j], q)) % q)
                        .collect(),
                );
            }
            syn.push(s_reg);
            img.push(i_reg);
        }
        SearchTables {
            q,
            n,
            locals,
            syn,
            img,
            members,
        }
    }

    /// First undetectable error supported exactly on `support`, in
    /// lexicographic order of the local powers.
    fn search_support(&self, support: &[usize]) -> Option<Vec<i64>> {
        let w = support.len();
        let r = self.syn[0].first().map_or(0, |v| v.len());
        let width = 2 * self.n;
        let mut syn_acc = vec![vec![0u64; r]; w + 1];
        let mut img_acc = vec![vec![0u64; width]; w + 1];
        let mut choice = vec![0usize; w];
        let q = self.q;
        let mut depth = 0;
        loop {
            if depth == w {
                if syn_acc[w].iter().all(|&s| s == 0)
                    && !self.members.contains_transformed(&img_acc[w])
                {
                    let mut e = vec![0i64; width];
                    for (&reg, &local) in support.iter().zip(&choice) {
                        let local = local as u64 + 1;
                        e[reg] = (local / q) as i64;
                        e[self.n + reg] = (local % q) as i64;
                    }
                    return Some(e);
                }
                // advance
                loop {
                    if depth == 0 {
                        return None;
                    }
                    depth -= 1;
                    choice[depth] += 1;
                    if choice[depth] < self.locals {
                        break;
                    }
                    choice[depth] = 0;
                }
            }
            let reg = support[depth];
            let (lo, hi) = syn_acc.split_at_mut(depth + 1);
            for ((dst, &a), &b) in hi[0]
                .iter_mut()
                .zip(&lo[depth])
                .zip(&self.syn[reg][choice[depth]])
            {
                *dst = (a + b) % q;
            }
            let (lo, hi) = img_acc.split_at_mut(depth + 1);
            for ((dst, &a), &b) in hi[0]
                .iter_mut()
                .zip(&lo[depth])
                .zip(&self.img[reg][choice[depth]])
            {
                *dst = (a + b) % q;
            }
            depth += 1;
        }
    }
}

/// Exhaustive search for the smallest-weight error that commutes with every
/// generator modulo `Q` and is not in the stabilizer group.
///
/// Weights are tried in increasing order, supports lexicographically, and
/// local powers `(x, z)` lexicographically with `(0, 0)` skipped. Supports of
/// one weight are split across `jobs` workers; the reported witness is the
/// first in that order regardless of `jobs`.
pub fn brute_force_distance(
    code: &StabilizerCode,
    q: u64,
    search: &DistanceSearch,
) -> Result<DistanceResult> {
    let rows = rows_checked(code, q)?;
    let n = code.n();
    let matrix = stabilizer_matrix(code, &rows);
    let members = SpanMembership::new(&matrix, q)?;
    if logical_dimension(code, q)?.big_k.is_one() {
        // C(S) = S: nothing is undetectable at any weight.
        return Ok(DistanceResult::NoneUpTo {
            weight: search.max_weight,
            budget_exhausted: false,
        });
    }
    let allowed: Vec<usize> = match &search.registers {
        Some(regs) => {
            let mut regs = regs.clone();
            regs.sort_unstable();
            regs.dedup();
            if let Some(&bad) = regs.iter().find(|&&r| r >= n) {
                return Err(Error::Invalid(format!(
                    "register {bad} out of range for n = {n}"
                )));
            }
            regs
        }
        None => (0..n).collect(),
    };
    let tables = SearchTables::new(n, &rows, q, members);
    let locals = (q as u128) * (q as u128) - 1;
    let mut spent: u128 = 0;
    let pool = if search.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(search.jobs)
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?,
        )
    } else {
        None
    };

    let m = allowed.len();
    for w in 1..=search.max_weight.min(m) {
        let cost = binomial(m, w).saturating_mul(locals.saturating_pow(w as u32));
        spent = spent.saturating_add(cost);
        if spent > search.budget as u128 {
            return Ok(DistanceResult::NoneUpTo {
                weight: w - 1,
                budget_exhausted: true,
            });
        }
        let supports: Vec<Vec<usize>> = combinations(m, w)
            .into_iter()
            .map(|s| s.into_iter().map(|i| allowed[i]).collect())
            .collect();
        let found = match &pool {
            Some(pool) => pool.install(|| {
                supports
                    .par_iter()
                    .find_map_first(|s| tables.search_support(s))
            }),
            None => supports.iter().find_map(|s| tables.search_support(s)),
        };
        if let Some(e) = found {
            return Ok(DistanceResult::Found {
                distance: w,
                witness: PauliVec::new(e, Modulus::Finite(q))?,
            });
        }
    }
    Ok(DistanceResult::NoneUpTo {
        weight: search.max_weight,
        budget_exhausted: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Zero integer syndrome: undetectable for every modulus.
    Unavoidable,
    /// Some syndrome component is a nonzero multiple of the modulus.
    Artifact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndetectableError {
    /// The integer lift the classification refers to.
    pub error: PauliVec,
    pub weight: usize,
    pub classification: ErrorClass,
    pub integer_syndrome: Vec<i64>,
}

/// Classifies an undetectable error by its integer syndrome.
///
/// Generators of unbounded codes are used as stored; finite codes and finite
/// error vectors are lifted with `lift`. An unbounded `e` is used verbatim.
pub fn classify_undetectable(
    code: &StabilizerCode,
    e: &PauliVec,
    q: u64,
    lift: LiftPolicy,
) -> Result<UndetectableError> {
    let n = code.n();
    if e.entries().len() != 2 * n {
        return Err(Error::LengthMismatch {
            expected: 2 * n,
            found: e.entries().len(),
        });
    }
    let rows = rows_checked(code, q)?;
    let generators = code.integer_rows(lift);
    let lifted: Vec<i64> = match e.modulus() {
        Modulus::Unbounded => e.entries().to_vec(),
        Modulus::Finite(m) => e
            .entries()
            .iter()
            .map(|&x| lift_entry(x, m, lift))
            .collect(),
    };
    let integer_syndrome = generators
        .iter()
        .map(|g| {
            integer_symplectic_product(g, &lifted)
                .and_then(|v| i64::try_from(v).map_err(|_| Error::Overflow))
        })
        .collect::<Result<Vec<i64>>>()?;
    let reduced: Vec<i64> = integer_syndrome
        .iter()
        .map(|s| s.rem_euclid(q as i64))
        .collect();
    if reduced.iter().any(|&s| s != 0) {
        return Err(Error::Detectable(reduced));
    }
    let members = SpanMembership::new(&stabilizer_matrix(code, &rows), q)?;
    if members.contains(&lifted)? {
        return Err(Error::AlreadyMember);
    }
    let classification = if integer_syndrome.iter().all(|&s| s == 0) {
        ErrorClass::Unavoidable
    } else {
        ErrorClass::Artifact
    };
    Ok(UndetectableError {
        weight: weight_of(
            &lifted
                .iter()
                .map(|x| x.rem_euclid(q as i64))
                .collect::<Vec<_>>(),
        ),
        error: PauliVec::new(lifted, Modulus::Unbounded)?,
        classification,
        integer_syndrome,
    })
}

/// Oracle for the group order: closure of the generators under addition.
pub fn brute_force_group_order(code: &StabilizerCode, q: u64, budget: usize) -> Result<u64> {
    let rows = code.rows_mod(q)?;
    Ok(brute_force_span(&rows, q, budget)?.len() as u64)
}

/// Everything [`logical_dimension`], [`logical_operators`] and optionally
/// [`brute_force_distance`] say about a code at `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeReport {
    pub big_k: BigUint,
    pub k: f64,
    pub generator_orders: Vec<u64>,
    pub logical_generators: Vec<LogicalOperator>,
    pub distance: Option<DistanceResult>,
}

pub fn code_report(
    code: &StabilizerCode,
    q: u64,
    search: Option<&DistanceSearch>,
) -> Result<CodeReport> {
    let dim = logical_dimension(code, q)?;
    let rows = code.rows_mod(q)?;
    let generator_orders = rows
        .iter()
        .map(|r| additive_order_of(&r.iter().map(|&x| x as i64).collect::<Vec<_>>(), q))
        .collect();
    let logical_generators = logical_operators(code, q)?;
    let distance = search
        .map(|s| brute_force_distance(code, q, s))
        .transpose()?;
    Ok(CodeReport {
        big_k: dim.big_k,
        k: dim.k,
        generator_orders,
        logical_generators,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::syndrome;
    use std::collections::HashSet;

    fn five_qubit() -> StabilizerCode {
        StabilizerCode::new(
            5,
            Modulus::Finite(2),
            vec![
                vec![1, 0, 0, 1, 0, 0, 1, 1, 0, 0],
                vec![0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
                vec![1, 0, 1, 0, 0, 0, 0, 0, 1, 1],
                vec![0, 1, 0, 1, 0, 1, 0, 0, 0, 1],
            ],
        )
        .unwrap()
    }

    fn trivial(n: usize, q: u64) -> StabilizerCode {
        StabilizerCode::new(n, Modulus::Finite(q), vec![]).unwrap()
    }

    #[test]
    fn dimensions() {
        let d = logical_dimension(&five_qubit(), 2).unwrap();
        assert_eq!(d.big_k, BigUint::from(2u32));
        assert!((d.k - 1.0).abs() < 1e-12);
        let d = logical_dimension(&trivial(2, 7), 7).unwrap();
        assert_eq!(d.big_k, BigUint::from(49u32));
        assert!((d.k - 2.0).abs() < 1e-12);
        assert!(matches!(
            logical_dimension(&five_qubit(), 3),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn large_logs() {
        let x = BigUint::from(6u32).pow(700);
        assert!((log_base(&x, 6) - 700.0).abs() < 1e-9);
    }

    #[test]
    fn trivial_code_logicals() {
        let ops = logical_operators(&trivial(1, 2), 2).unwrap();
        assert_eq!(ops.iter().map(|o| o.order).collect::<Vec<_>>(), vec![2, 2]);
        let span: HashSet<Vec<u64>> = brute_force_span(
            &ops.iter()
                .map(|o| o.operator.entries().iter().map(|&x| x as u64).collect())
                .collect::<Vec<_>>(),
            2,
            10,
        )
        .unwrap();
        assert_eq!(span.len(), 4);
    }

    /// Brute-force centralizer of the five-qubit code: 2^10 vectors filtered
    /// by zero syndrome.
    #[test]
    fn five_qubit_logicals_against_enumeration() {
        let code = five_qubit();
        let ops = logical_operators(&code, 2).unwrap();
        assert_eq!(ops.iter().map(|o| o.order).collect::<Vec<_>>(), vec![2, 2]);

        let mut centralizer = HashSet::new();
        for bits in 0u32..1024 {
            let e: Vec<i64> = (0..10).map(|k| ((bits >> k) & 1) as i64).collect();
            let pv = PauliVec::new(e.clone(), Modulus::Finite(2)).unwrap();
            if syndrome(&code, &pv, Modulus::Finite(2))
                .unwrap()
                .iter()
                .all(|&s| s == 0)
            {
                centralizer.insert(e.iter().map(|&x| x as u64).collect::<Vec<u64>>());
            }
        }
        assert_eq!(centralizer.len(), 64);
        let mut gens: Vec<Vec<u64>> = code.rows_mod(2).unwrap();
        for o in &ops {
            let v: Vec<u64> = o.operator.entries().iter().map(|&x| x as u64).collect();
            assert!(centralizer.contains(&v));
            gens.push(v);
        }
        assert_eq!(brute_force_span(&gens, 2, 100).unwrap(), centralizer);
    }

    #[test]
    fn distances() {
        let code = five_qubit();
        let res = brute_force_distance(&code, 2, &DistanceSearch::new(3)).unwrap();
        assert_eq!(res.distance(), Some(3));
        let res = brute_force_distance(&code, 2, &DistanceSearch::new(2)).unwrap();
        assert_eq!(
            res,
            DistanceResult::NoneUpTo {
                weight: 2,
                budget_exhausted: false
            }
        );
        let res = brute_force_distance(&code, 2, &DistanceSearch::new(3).with_budget(100)).unwrap();
        assert_eq!(
            res,
            DistanceResult::NoneUpTo {
                weight: 1,
                budget_exhausted: true
            }
        );

        let rep = StabilizerCode::new(
            3,
            Modulus::Finite(2),
            vec![vec![0, 0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1, 1]],
        )
        .unwrap();
        let res = brute_force_distance(&rep, 2, &DistanceSearch::new(3)).unwrap();
        match res {
            DistanceResult::Found { distance, witness } => {
                assert_eq!(distance, 1);
                // first in order: register 0, (x, z) = (0, 1)
                assert_eq!(witness.entries(), &[0, 0, 0, 1, 0, 0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_search_is_deterministic() {
        let code = five_qubit();
        let serial = brute_force_distance(&code, 2, &DistanceSearch::new(3)).unwrap();
        let parallel =
            brute_force_distance(&code, 2, &DistanceSearch::new(3).with_jobs(4)).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn full_rank_code_has_no_undetectable_errors() {
        let code = StabilizerCode::new(1, Modulus::Finite(3), vec![vec![1, 0]]).unwrap();
        let res = brute_force_distance(&code, 3, &DistanceSearch::new(1)).unwrap();
        assert_eq!(
            res,
            DistanceResult::NoneUpTo {
                weight: 1,
                budget_exhausted: false
            }
        );
    }

    #[test]
    fn classification() {
        let xx = StabilizerCode::new(2, Modulus::Unbounded, vec![vec![1, 1, 0, 0]]).unwrap();
        let e = PauliVec::new(vec![0, 0, 1, -1], Modulus::Unbounded).unwrap();
        for q in [2, 3, 4, 5, 6, 10] {
            let c = classify_undetectable(&xx, &e, q, LiftPolicy::NonNegative).unwrap();
            assert_eq!(c.classification, ErrorClass::Unavoidable);
            assert_eq!(c.integer_syndrome, vec![0]);
            assert_eq!(c.weight, 2);
        }

        let zz = StabilizerCode::new(
            3,
            Modulus::Finite(2),
            vec![vec![0, 0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1, 1]],
        )
        .unwrap();
        let xxx = PauliVec::new(vec![1, 1, 1, 0, 0, 0], Modulus::Unbounded).unwrap();
        let c = classify_undetectable(&zz, &xxx, 2, LiftPolicy::NonNegative).unwrap();
        assert_eq!(c.classification, ErrorClass::Artifact);
        assert_eq!(c.integer_syndrome, vec![-2, -2]);

        let member = PauliVec::new(vec![0, 0, 0, 1, 1, 0], Modulus::Unbounded).unwrap();
        assert_eq!(
            classify_undetectable(&zz, &member, 2, LiftPolicy::NonNegative),
            Err(Error::AlreadyMember)
        );
        let x1 = PauliVec::new(vec![1, 0, 0, 0, 0, 0], Modulus::Unbounded).unwrap();
        assert!(matches!(
            classify_undetectable(&zz, &x1, 2, LiftPolicy::NonNegative),
            Err(Error::Detectable(_))
        ));
    }

    #[test]
    fn classify_five_qubit_logical() {
        let code = five_qubit();
        // X on every register anticommutes with nothing: the usual logical X
        let e = PauliVec::new(vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0], Modulus::Finite(2)).unwrap();
        let c = classify_undetectable(&code, &e, 2, LiftPolicy::NonNegative).unwrap();
        assert!(c.integer_syndrome.iter().all(|s| s % 2 == 0));
        assert_eq!(
            c.classification == ErrorClass::Unavoidable,
            c.integer_syndrome.iter().all(|&s| s == 0)
        );
    }

    #[test]
    fn group_order_oracle() {
        let code =
            StabilizerCode::new(1, Modulus::Finite(6), vec![vec![3, 0], vec![0, 2]]).unwrap();
        assert_eq!(brute_force_group_order(&code, 6, 100).unwrap(), 6);
        assert_eq!(brute_force_group_order(&five_qubit(), 2, 100).unwrap(), 16);
        assert!(matches!(
            brute_force_group_order(&five_qubit(), 2, 10),
            Err(Error::BudgetExceeded(10))
        ));
    }

    #[test]
    fn combination_order() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(35, 3), 6545);
    }
}
