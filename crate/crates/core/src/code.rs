//! Stabilizer codes: construction, validation, syndromes and the canonical
//! form over prime local dimensions.

use num_bigint::BigUint;

use crate::arith::{is_prime, mod_inverse, mul_mod};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, subgroup_order, IntMatrix};
use crate::ring::{
    additive_order_of, integer_symplectic_product, lift_entry, reduce_i128, LiftPolicy, Modulus,
    PauliVec,
};

/// A set of commuting generators on `n` registers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    modulus: Modulus,
    generators: Vec<Vec<i64>>,
    origin_prime: Option<u64>,
    claimed_distance: Option<usize>,
}

/// Result of [`validate`]: every non-commuting pair plus the independence flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(usize, usize, i64)>,
    pub independent: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.independent
    }
}

impl StabilizerCode {
    /// Builds and validates a code. Entries are reduced into `[0, Q)` for
    /// finite moduli.
    pub fn new(n: usize, modulus: Modulus, generators: Vec<Vec<i64>>) -> Result<Self> {
        let code = Self::new_unchecked(n, modulus, generators)?;
        let report = validate(&code)?;
        if let Some(&(i, j, product)) = report.violations.first() {
            return Err(Error::NonCommuting { i, j, product });
        }
        if !report.independent {
            return Err(Error::DependentGenerators);
        }
        Ok(code)
    }

    /// Builds a code checking only shapes.
    pub fn new_unchecked(n: usize, modulus: Modulus, generators: Vec<Vec<i64>>) -> Result<Self> {
        if let Modulus::Finite(q) = modulus {
            if q < 2 {
                return Err(Error::InvalidModulus(q));
            }
        }
        let generators = generators
            .into_iter()
            .map(|row| {
                if row.len() != 2 * n {
                    Err(Error::LengthMismatch {
                        expected: 2 * n,
                        found: row.len(),
                    })
                } else {
                    Ok(row.into_iter().map(|e| modulus.reduce(e)).collect())
                }
            })
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Ok(StabilizerCode {
            n,
            modulus,
            generators,
            origin_prime: None,
            claimed_distance: None,
        })
    }

    pub fn with_origin_prime(mut self, q: Option<u64>) -> Self {
        self.origin_prime = q;
        self
    }

    pub fn with_claimed_distance(mut self, d: Option<usize>) -> Self {
        self.claimed_distance = d;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> PauliVec {
        PauliVec::new(self.generators[i].clone(), self.modulus)
            .expect("generator rows have even length")
    }

    pub fn origin_prime(&self) -> Option<u64> {
        self.origin_prime
    }

    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.generators, 2 * self.n).expect("rows have length 2n")
    }

    /// Generators reduced into `[0, Q)`. Allowed when the code lives over
    /// `Z_Q` itself or over the integers.
    pub fn rows_mod(&self, q: u64) -> Result<Vec<Vec<u64>>> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        match self.modulus {
            Modulus::Finite(m) if m != q => Err(Error::ModulusMismatch {
                left: self.modulus,
                right: Modulus::Finite(q),
            }),
            _ => Ok(self
                .generators
                .iter()
                .map(|r| r.iter().map(|&e| e.rem_euclid(q as i64) as u64).collect())
                .collect()),
        }
    }

    /// Generators as integers: stored values for unbounded codes, lifted
    /// with `policy` for finite ones.
    pub fn integer_rows(&self, policy: LiftPolicy) -> Vec<Vec<i64>> {
        match self.modulus {
            Modulus::Unbounded => self.generators.clone(),
            Modulus::Finite(q) => self
                .generators
                .iter()
                .map(|r| r.iter().map(|&e| lift_entry(e, q, policy)).collect())
                .collect(),
        }
    }
}

/// Checks pairwise commutation and independence of the generators.
///
/// Over `Z_Q` the generators are independent when the group they span is the
/// direct sum of their cyclic subgroups (span order equals the product of
/// additive orders). Over the integers they must have full rational rank.
pub fn validate(code: &StabilizerCode) -> Result<ValidationReport> {
    let mut violations = Vec::new();
    for i in 0..code.generators.len() {
        for j in i + 1..code.generators.len() {
            let v = integer_symplectic_product(&code.generators[i], &code.generators[j])?;
            let v = match code.modulus {
                Modulus::Finite(q) => reduce_i128(v, q),
                Modulus::Unbounded => i64::try_from(v).map_err(|_| Error::Overflow)?,
            };
            if v != 0 {
                violations.push((i, j, v));
            }
        }
    }
    let independent = match code.modulus {
        Modulus::Finite(q) => {
            let product = code
                .generators
                .iter()
                .fold(BigUint::from(1u32), |acc, g| acc * additive_order_of(g, q));
            subgroup_order(&code.generator_matrix(), q)? == product
        }
        Modulus::Unbounded => {
            smith_normal_form(&code.generator_matrix()).rank() == code.generators.len()
        }
    };
    Ok(ValidationReport {
        violations,
        independent,
    })
}

/// Syndrome of `e`: component `i` is `generator_i . e` over `over`.
///
/// Finite codes use their stored `[0, Q)` entries as the integer lift.
pub fn syndrome(code: &StabilizerCode, e: &PauliVec, over: Modulus) -> Result<Vec<i64>> {
    if e.entries().len() != 2 * code.n {
        return Err(Error::LengthMismatch {
            expected: 2 * code.n,
            found: e.entries().len(),
        });
    }
    code.generators
        .iter()
        .map(|g| {
            let v = integer_symplectic_product(g, e.entries())?;
            match over {
                Modulus::Finite(q) => Ok(reduce_i128(v, q)),
                Modulus::Unbounded => i64::try_from(v).map_err(|_| Error::Overflow),
            }
        })
        .collect()
}

/// A code in the form `[I_r X2 | Z1 Z2]` together with the register moves
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: StabilizerCode,
    pub r: usize,
    /// `register_permutation[pos]` is the original register now at `pos`.
    pub register_permutation: Vec<usize>,
    /// Original registers whose `X` and `Z` roles were exchanged, sorted.
    pub hadamard_swaps: Vec<usize>,
}

impl CanonicalForm {
    /// Maps integer rows in canonical register order back to the original
    /// frame. Exact over the integers: the inverse exchange
    /// `(x, z) -> (z, -x)` preserves the symplectic product.
    pub fn undo_integer_rows(&self, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = self.register_permutation.len();
        rows.iter()
            .map(|row| {
                let mut out = vec![0i64; 2 * n];
                for (pos, &reg) in self.register_permutation.iter().enumerate() {
                    let (x, z) = (row[pos], row[n + pos]);
                    let (x, z) = if self.hadamard_swaps.binary_search(&reg).is_ok() {
                        (z, -x)
                    } else {
                        (x, z)
                    };
                    out[reg] = x;
                    out[n + reg] = z;
                }
                out
            })
            .collect()
    }

    /// The canonical generators expressed on the original registers.
    pub fn undo(&self) -> StabilizerCode {
        let rows = self.undo_integer_rows(self.code.generators());
        StabilizerCode::new_unchecked(self.code.n, self.code.modulus, rows)
            .expect("shape preserved")
            .with_origin_prime(self.code.origin_prime)
            .with_claimed_distance(self.code.claimed_distance)
    }
}

/// Puts a valid code over a prime into canonical form.
///
/// Symplectic Gaussian elimination with three moves: row operations mod `p`,
/// register permutations, and the single-register exchange
/// `(x, z) -> (-z, x)`. Pivots come from the leftmost register with a nonzero
/// `X` entry among the remaining rows; a `Z` entry is exchanged onto the `X`
/// side only when no `X` pivot is left.
pub fn canonical_form(code: &StabilizerCode) -> Result<CanonicalForm> {
    let p = match code.modulus {
        Modulus::Finite(p) if is_prime(p) => p,
        Modulus::Finite(q) => return Err(Error::NotPrime(q)),
        Modulus::Unbounded => {
            return Err(Error::Invalid(
                "canonical form needs a prime modulus".into(),
            ))
        }
    };
    let report = validate(code)?;
    if let Some(&(i, j, product)) = report.violations.first() {
        return Err(Error::NonCommuting { i, j, product });
    }
    if !report.independent {
        return Err(Error::DependentGenerators);
    }

    let n = code.n;
    let mut rows: Vec<Vec<u64>> = code.rows_mod(p)?;
    let r = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::new();

    for t in 0..r {
        let x_pivot = (t..n).find_map(|c| (t..r).find(|&i| rows[i][c] != 0).map(|i| (i, c)));
        let (pi, pc) = match x_pivot {
            Some(found) => found,
            None => {
                let z_pivot =
                    (t..n).find_map(|c| (t..r).find(|&i| rows[i][n + c] != 0).map(|i| (i, c)));
                let Some((i, c)) = z_pivot else {
                    return Err(Error::PivotFailure { row: t });
                };
                for row in rows.iter_mut() {
                    let (x, z) = (row[c], row[n + c]);
                    row[c] = (p - z) % p;
                    row[n + c] = x;
                }
                swaps.push(perm[c]);
                (i, c)
            }
        };
        rows.swap(t, pi);
        if pc != t {
            for row in rows.iter_mut() {
                row.swap(t, pc);
                row.swap(n + t, n + pc);
            }
            perm.swap(t, pc);
        }
        let inv = mod_inverse(rows[t][t], p).expect("nonzero pivot over a prime field");
        for x in rows[t].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..r {
            if i == t || rows[i][t] == 0 {
                continue;
            }
            let f = rows[i][t];
            for j in 0..2 * n {
                let sub = mul_mod(f, rows[t][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
    }
    swaps.sort_unstable();

    let generators = rows
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect();
    let canonical = StabilizerCode::new_unchecked(n, code.modulus, generators)?
        .with_origin_prime(code.origin_prime)
        .with_claimed_distance(code.claimed_distance);
    Ok(CanonicalForm {
        code: canonical,
        r,
        register_permutation: perm,
        hadamard_swaps: swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{membership, rank_mod_p};

    pub(crate) fn five_qubit() -> StabilizerCode {
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

    fn zz_checks(modulus: Modulus) -> StabilizerCode {
        StabilizerCode::new(
            3,
            modulus,
            vec![vec![0, 0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1, 1]],
        )
        .unwrap()
    }

    fn same_span(a: &StabilizerCode, b: &StabilizerCode, q: u64) {
        let ma = a.generator_matrix();
        let mb = b.generator_matrix();
        assert_eq!(
            subgroup_order(&ma, q).unwrap(),
            subgroup_order(&mb, q).unwrap()
        );
        for row in b.generators() {
            assert!(membership(row, &ma, q).unwrap().is_some());
        }
    }

    #[test]
    fn validation_examples() {
        let five = five_qubit();
        assert!(validate(&five).unwrap().is_valid());
        let unbounded =
            StabilizerCode::new(5, Modulus::Unbounded, five.generators().to_vec()).unwrap();
        assert!(validate(&unbounded).unwrap().is_valid());

        let xz = StabilizerCode::new_unchecked(1, Modulus::Finite(2), vec![vec![1, 0], vec![0, 1]])
            .unwrap();
        let report = validate(&xz).unwrap();
        assert_eq!(report.violations, vec![(0, 1, 1)]);
        assert!(!report.is_valid());
        assert_eq!(
            StabilizerCode::new(1, Modulus::Finite(2), vec![vec![1, 0], vec![0, 1]]),
            Err(Error::NonCommuting {
                i: 0,
                j: 1,
                product: 1
            })
        );
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let rows = vec![vec![1, 1, 0, 0], vec![1, 1, 0, 0]];
        assert_eq!(
            StabilizerCode::new(2, Modulus::Finite(2), rows.clone()),
            Err(Error::DependentGenerators)
        );
        assert_eq!(
            StabilizerCode::new(2, Modulus::Unbounded, rows),
            Err(Error::DependentGenerators)
        );
        // 3(1,1) and 2(1,1) generate Z_6 (1,1) but are independent as a direct sum
        let ok = StabilizerCode::new(
            2,
            Modulus::Finite(6),
            vec![vec![3, 3, 0, 0], vec![0, 0, 2, 2]],
        );
        assert!(ok.is_ok());
        let bad = StabilizerCode::new(
            2,
            Modulus::Finite(6),
            vec![vec![1, 1, 0, 0], vec![3, 3, 0, 0]],
        );
        assert_eq!(bad, Err(Error::DependentGenerators));
    }

    #[test]
    fn syndrome_examples() {
        let code = zz_checks(Modulus::Finite(2));
        for i in 0..2 {
            assert_eq!(
                syndrome(&code, &code.generator(i), Modulus::Finite(2)).unwrap(),
                vec![0, 0]
            );
        }
        let xxx = PauliVec::new(vec![1, 1, 1, 0, 0, 0], Modulus::Unbounded).unwrap();
        // g.e = sum z(e) x(g) - x(e) z(g) = -(1 + 1) for each check
        assert_eq!(
            syndrome(&code, &xxx, Modulus::Unbounded).unwrap(),
            vec![-2, -2]
        );
        assert_eq!(
            syndrome(&code, &xxx, Modulus::Finite(2)).unwrap(),
            vec![0, 0]
        );
        let x1 = PauliVec::new(vec![1, 0, 0, 0, 0, 0], Modulus::Finite(2)).unwrap();
        assert_eq!(
            syndrome(&code, &x1, Modulus::Finite(2)).unwrap(),
            vec![1, 0]
        );
        let short = PauliVec::new(vec![1, 0], Modulus::Finite(2)).unwrap();
        assert!(matches!(
            syndrome(&code, &short, Modulus::Finite(2)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    fn assert_canonical_shape(c: &CanonicalForm) {
        let n = c.code.n();
        for (i, row) in c.code.generators().iter().enumerate() {
            for j in 0..c.r {
                assert_eq!(row[j], (i == j) as i64, "row {i} col {j}");
            }
            assert_eq!(row.len(), 2 * n);
        }
    }

    #[test]
    fn canonical_examples() {
        let xx = StabilizerCode::new(2, Modulus::Finite(2), vec![vec![1, 1, 0, 0]]).unwrap();
        let c = canonical_form(&xx).unwrap();
        assert_eq!(c.code.generators(), &[vec![1, 1, 0, 0]]);
        assert_eq!(c.r, 1);
        assert!(c.hadamard_swaps.is_empty());

        let zz = StabilizerCode::new(2, Modulus::Finite(2), vec![vec![0, 0, 1, 1]]).unwrap();
        let c = canonical_form(&zz).unwrap();
        assert_eq!(c.hadamard_swaps, vec![0]);
        assert_eq!(c.code.generators(), &[vec![1, 0, 0, 1]]);
        same_span(&zz, &c.undo(), 2);

        let five = five_qubit();
        let c = canonical_form(&five).unwrap();
        assert_eq!(c.r, 4);
        assert_canonical_shape(&c);
        assert!(validate(&c.code).unwrap().is_valid());
        same_span(&five, &c.undo(), 2);
        assert_eq!(rank_mod_p(&five.generator_matrix(), 2).unwrap(), 4);
    }

    #[test]
    fn canonical_rejects_bad_input() {
        let six = StabilizerCode::new(2, Modulus::Finite(6), vec![vec![1, 1, 0, 0]]).unwrap();
        assert_eq!(canonical_form(&six), Err(Error::NotPrime(6)));
        let bad =
            StabilizerCode::new_unchecked(1, Modulus::Finite(2), vec![vec![1, 0], vec![0, 1]])
                .unwrap();
        assert!(matches!(
            canonical_form(&bad),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn canonical_over_odd_primes() {
        // X Z Z^-1 X^-1 I and shifts, over p = 3
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|s| {
                let mut row = vec![0i64; 10];
                for (k, (x, z)) in [(1, 0), (0, 1), (0, -1), (-1, 0)].into_iter().enumerate() {
                    row[(k + s) % 5] = x;
                    row[5 + (k + s) % 5] = z;
                }
                row
            })
            .collect();
        let code = StabilizerCode::new(5, Modulus::Finite(3), rows).unwrap();
        let c = canonical_form(&code).unwrap();
        assert_canonical_shape(&c);
        same_span(&code, &c.undo(), 3);
        assert!(validate(&c.code).unwrap().is_valid());
    }
}
