//! Local-dimension-invariant (LDI) forms.
//!
//! An LDI code has generators whose symplectic products vanish exactly over
//! the integers, so reducing it modulo any `Q` gives a commuting set. Codes
//! over a prime are brought into this form by canonicalizing and then adding
//! to the strictly lower triangle of the `Z1` block the integer products
//! between canonical generators.

use crate::arith::{is_prime, prime_factors};
use crate::code::{canonical_form, validate, CanonicalForm, StabilizerCode};
use crate::error::{Error, Result};
use crate::ring::{integer_symplectic_product, LiftPolicy, Modulus};

/// A code over the integers with exactly orthogonal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdiCode {
    code: StabilizerCode,
    origin_prime: u64,
    b: u64,
    derivation: Option<LdiDerivation>,
}

/// How an LDI code was obtained from a canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdiDerivation {
    pub canonical: CanonicalForm,
    /// Canonical-frame integer generators after the correction.
    pub corrected: Vec<Vec<i64>>,
    /// `(i, j, delta)` added to `Z1[i][j]`, `i > j`.
    pub corrections: Vec<(usize, usize, i64)>,
}

fn max_abs_entry(code: &StabilizerCode) -> u64 {
    code.generators()
        .iter()
        .flatten()
        .map(|e| e.unsigned_abs())
        .max()
        .unwrap_or(0)
}

fn first_nonzero_pair(rows: &[Vec<i64>]) -> Result<Option<(usize, usize, i64)>> {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let v = integer_symplectic_product(&rows[i], &rows[j])?;
            if v != 0 {
                let v = i64::try_from(v).map_err(|_| Error::Overflow)?;
                return Ok(Some((i, j, v)));
            }
        }
    }
    Ok(None)
}

impl LdiCode {
    /// Wraps an unbounded-modulus code, checking exact orthogonality.
    pub fn new(code: StabilizerCode, origin_prime: u64) -> Result<Self> {
        if code.modulus() != Modulus::Unbounded {
            return Err(Error::ModulusMismatch {
                left: code.modulus(),
                right: Modulus::Unbounded,
            });
        }
        if let Some((i, j, product)) = first_nonzero_pair(code.generators())? {
            return Err(Error::NotLdi { i, j, product });
        }
        Ok(Self::new_unchecked(code, origin_prime))
    }

    /// Wraps a code without checking orthogonality; [`ldi_metrics`] reports
    /// whether it actually holds.
    pub fn new_unchecked(code: StabilizerCode, origin_prime: u64) -> Self {
        let code = code.with_origin_prime(Some(origin_prime));
        let b = max_abs_entry(&code);
        LdiCode {
            code,
            origin_prime,
            b,
            derivation: None,
        }
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn origin_prime(&self) -> u64 {
        self.origin_prime
    }

    /// Largest absolute entry.
    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn derivation(&self) -> Option<&LdiDerivation> {
        self.derivation.as_ref()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }
}

/// Change in `row_i . row_j` caused by adding one to `Z1[i][j]` while row `j`
/// carries the identity entry in column `j`. Measured on a single register.
fn unit_shift() -> i64 {
    let pivot = [1i64, 0];
    let base = [0i64, 0];
    let bumped = [0i64, 1];
    let before = integer_symplectic_product(&base, &pivot).expect("fixed shapes");
    let after = integer_symplectic_product(&bumped, &pivot).expect("fixed shapes");
    (after - before) as i64
}

/// Converts a valid code over a prime into LDI form.
///
/// If the generators are already exactly orthogonal under the non-negative
/// or the symmetric lift, that lift is returned as is. Otherwise this runs
/// [`to_ldi_via_canonical`].
pub fn to_ldi(code: &StabilizerCode) -> Result<LdiCode> {
    let p = prime_of(code)?;
    let report = validate(code)?;
    if !report.is_valid() {
        return to_ldi_via_canonical(code);
    }
    for policy in [LiftPolicy::NonNegative, LiftPolicy::Symmetric] {
        let rows = code.integer_rows(policy);
        if first_nonzero_pair(&rows)?.is_none() {
            let lifted = StabilizerCode::new_unchecked(code.n(), Modulus::Unbounded, rows)?
                .with_claimed_distance(code.claimed_distance());
            return Ok(LdiCode::new_unchecked(lifted, p));
        }
    }
    to_ldi_via_canonical(code)
}

fn prime_of(code: &StabilizerCode) -> Result<u64> {
    match code.modulus() {
        Modulus::Finite(p) if is_prime(p) => Ok(p),
        Modulus::Finite(q) => Err(Error::NotPrime(q)),
        Modulus::Unbounded => Err(Error::Invalid(
            "LDI conversion needs a code over a prime".into(),
        )),
    }
}

/// Canonicalize, correct `Z1` below the diagonal, and map back to the
/// original registers.
pub fn to_ldi_via_canonical(code: &StabilizerCode) -> Result<LdiCode> {
    let p = prime_of(code)?;
    let canonical = canonical_form(code)?;
    let rows: Vec<Vec<i64>> = canonical.code.generators().to_vec();
    let n = code.n();
    let r = canonical.r;

    // All corrections come from the uncorrected matrix; each touches exactly
    // one pair because only row j has X weight in column j < r.
    let shift = unit_shift();
    let mut corrections = Vec::new();
    for i in 0..r {
        for j in 0..i {
            let product = integer_symplectic_product(&rows[i], &rows[j])?;
            let product = i64::try_from(product).map_err(|_| Error::Overflow)?;
            if product != 0 {
                debug_assert_eq!(product % p as i64, 0);
                corrections.push((i, j, -product / shift));
            }
        }
    }
    let mut corrected = rows;
    for &(i, j, delta) in &corrections {
        corrected[i][n + j] = corrected[i][n + j]
            .checked_add(delta)
            .ok_or(Error::Overflow)?;
    }
    if let Some((i, j, product)) = first_nonzero_pair(&corrected)? {
        return Err(Error::LdiPostcondition { i, j, product });
    }

    let original_frame = canonical.undo_integer_rows(&corrected);
    let lifted = StabilizerCode::new_unchecked(n, Modulus::Unbounded, original_frame)?
        .with_claimed_distance(code.claimed_distance());
    let mut ldi = LdiCode::new_unchecked(lifted, p);
    ldi.derivation = Some(LdiDerivation {
        canonical,
        corrected,
        corrections,
    });
    Ok(ldi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LdiMetrics {
    pub b: u64,
    pub is_ldi: bool,
}

/// Largest absolute entry and a fresh check of exact orthogonality.
pub fn ldi_metrics(ldi: &LdiCode) -> Result<LdiMetrics> {
    Ok(LdiMetrics {
        b: max_abs_entry(&ldi.code),
        is_ldi: first_nonzero_pair(ldi.code.generators())?.is_none(),
    })
}

/// Which sufficient condition certifies that instantiating at `Q` keeps the
/// distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceCondition {
    /// `q | Q` and every prime factor of `Q / q` exceeds `B`.
    CondI,
    /// Every prime factor of `Q` exceeds the supplied cutoff.
    CondII,
    Unknown,
}

pub fn check_distance_condition(
    ldi: &LdiCode,
    q_target: u64,
    p_star: Option<u64>,
) -> Result<DistanceCondition> {
    if q_target < 2 {
        return Err(Error::InvalidModulus(q_target));
    }
    let q = ldi.origin_prime;
    let b = ldi_metrics(ldi)?.b;
    if q_target.is_multiple_of(q) && prime_factors(q_target / q)?.iter().all(|&f| f > b) {
        return Ok(DistanceCondition::CondI);
    }
    if let Some(cutoff) = p_star {
        if prime_factors(q_target)?.iter().all(|&f| f > cutoff) {
            return Ok(DistanceCondition::CondII);
        }
    }
    Ok(DistanceCondition::Unknown)
}

/// Reduces an LDI code modulo `Q`.
pub fn instantiate(ldi: &LdiCode, q: u64) -> Result<StabilizerCode> {
    let modulus = Modulus::finite(q)?;
    let code = StabilizerCode::new_unchecked(ldi.n(), modulus, ldi.code.generators().to_vec())?
        .with_origin_prime(Some(ldi.origin_prime));
    let claimed = if q == ldi.origin_prime {
        ldi.code.claimed_distance()
    } else {
        None
    };
    Ok(code.with_claimed_distance(claimed))
}

/// Multiplies every entry by `m` and represents the result in `Z_{mQ}`,
/// i.e. the multiples of `m` with `Q` levels.
pub fn scale_by_m(ldi: &LdiCode, m: u64, q: u64) -> Result<StabilizerCode> {
    if m == 0 {
        return Err(Error::Invalid("scale factor must be at least 1".into()));
    }
    Modulus::finite(q)?;
    let big = m.checked_mul(q).ok_or(Error::Overflow)?;
    let mi = i64::try_from(m).map_err(|_| Error::Overflow)?;
    let rows = ldi
        .code
        .generators()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| e.checked_mul(mi).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let code = StabilizerCode::new_unchecked(ldi.n(), Modulus::Finite(big), rows)?;
    Ok(code.with_origin_prime(Some(ldi.origin_prime)))
}
