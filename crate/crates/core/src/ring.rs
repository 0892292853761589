//! Pauli operators in the symplectic representation, over `Z_Q` or over the
//! integers.
//!
//! A Pauli on `n` registers is stored as `2n` integers: the `X` powers
//! followed by the `Z` powers. Finite moduli keep entries in `[0, Q)`; the
//! unbounded modulus keeps arbitrary signed integers. Moving between the two
//! views always goes through [`lift_and_reduce`] so the lift is explicit.

use std::fmt;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Local dimension of the registers: a finite ring `Z_Q` or the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Finite(u64),
    Unbounded,
}

impl Modulus {
    pub fn finite(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Modulus::Finite(q))
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            Modulus::Finite(q) => Some(*q),
            Modulus::Unbounded => None,
        }
    }

    /// Canonical representative of `x` under this modulus.
    pub fn reduce(&self, x: i64) -> i64 {
        match self {
            Modulus::Finite(q) => reduce_i128(x as i128, *q),
            Modulus::Unbounded => x,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(q) => write!(f, "{q}"),
            Modulus::Unbounded => write!(f, "Z"),
        }
    }
}

/// How a residue in `[0, Q)` is turned into an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftPolicy {
    /// Keep the stored representative in `[0, Q)`.
    #[default]
    NonNegative,
    /// Map into `(-Q/2, Q/2]`.
    Symmetric,
}

pub(crate) fn reduce_i128(x: i128, q: u64) -> i64 {
    x.rem_euclid(q as i128) as i64
}

pub(crate) fn lift_entry(x: i64, q: u64, policy: LiftPolicy) -> i64 {
    let r = reduce_i128(x as i128, q);
    match policy {
        LiftPolicy::NonNegative => r,
        LiftPolicy::Symmetric => {
            if 2 * (r as i128) > q as i128 {
                r - q as i64
            } else {
                r
            }
        }
    }
}

/// A Pauli operator as `(x_1 .. x_n | z_1 .. z_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliVec {
    entries: Vec<i64>,
    modulus: Modulus,
}

impl PauliVec {
    /// Builds a vector, reducing entries into `[0, Q)` for finite moduli.
    pub fn new(entries: Vec<i64>, modulus: Modulus) -> Result<Self> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::OddLength(entries.len()));
        }
        if let Modulus::Finite(q) = modulus {
            if q < 2 {
                return Err(Error::InvalidModulus(q));
            }
        }
        let entries = entries.into_iter().map(|e| modulus.reduce(e)).collect();
        Ok(PauliVec { entries, modulus })
    }

    pub fn from_xz(x: &[i64], z: &[i64], modulus: Modulus) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Self::new(x.iter().chain(z).copied().collect(), modulus)
    }

    pub fn zero(n: usize, modulus: Modulus) -> Self {
        PauliVec {
            entries: vec![0; 2 * n],
            modulus,
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn x(&self) -> &[i64] {
        &self.entries[..self.n()]
    }

    pub fn z(&self) -> &[i64] {
        &self.entries[self.n()..]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Component-wise sum, i.e. the image of the operator product.
    pub fn add(&self, other: &PauliVec) -> Result<PauliVec> {
        check_compatible(self, other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        PauliVec::new(entries, self.modulus)
    }

    pub fn scale(&self, t: i64) -> Result<PauliVec> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.checked_mul(t).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        PauliVec::new(entries, self.modulus)
    }
}

impl fmt::Display for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[i64]| {
            xs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}|{})", show(self.x()), show(self.z()))
    }
}

fn check_compatible(a: &PauliVec, b: &PauliVec) -> Result<()> {
    if a.entries.len() != b.entries.len() {
        return Err(Error::LengthMismatch {
            expected: a.entries.len(),
            found: b.entries.len(),
        });
    }
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch {
            left: a.modulus,
            right: b.modulus,
        });
    }
    Ok(())
}

/// Exact integer symplectic product of two raw `(x|z)` slices:
/// `sum_k z(b)_k x(a)_k - x(b)_k z(a)_k`.
pub fn integer_symplectic_product(a: &[i64], b: &[i64]) -> Result<i128> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if !a.len().is_multiple_of(2) {
        return Err(Error::OddLength(a.len()));
    }
    let n = a.len() / 2;
    let mut acc: i128 = 0;
    for k in 0..n {
        let term = (b[n + k] as i128) * (a[k] as i128) - (b[k] as i128) * (a[n + k] as i128);
        acc = acc.checked_add(term).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Symplectic product reduced into `[0, Q)`.
pub(crate) fn modular_symplectic_product(a: &[i64], b: &[i64], q: u64) -> Result<i64> {
    integer_symplectic_product(a, b).map(|v| reduce_i128(v, q))
}

/// Symplectic product of two Pauli vectors.
///
/// Reduced mod `Q` when both vectors live in `Z_Q`; exact over the integers
/// (using the stored entries) when either one is unbounded.
pub fn symplectic_product(a: &PauliVec, b: &PauliVec) -> Result<i64> {
    if a.entries.len() != b.entries.len() {
        return Err(Error::LengthMismatch {
            expected: a.entries.len(),
            found: b.entries.len(),
        });
    }
    match (a.modulus, b.modulus) {
        (Modulus::Finite(p), Modulus::Finite(q)) if p == q => {
            modular_symplectic_product(&a.entries, &b.entries, q)
        }
        (Modulus::Finite(_), Modulus::Finite(_)) => Err(Error::ModulusMismatch {
            left: a.modulus,
            right: b.modulus,
        }),
        _ => {
            let v = integer_symplectic_product(&a.entries, &b.entries)?;
            i64::try_from(v).map_err(|_| Error::Overflow)
        }
    }
}

/// Smallest `t >= 1` with `t * v = 0 (mod Q)`.
pub fn additive_order(v: &PauliVec, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    Ok(additive_order_of(v.entries(), q))
}

pub(crate) fn additive_order_of(entries: &[i64], q: u64) -> u64 {
    let g = entries.iter().fold(q, |g, &e| gcd(g, e.unsigned_abs() % q));
    q / g
}

/// Number of registers carrying a non-identity factor.
pub fn pauli_weight(v: &PauliVec) -> usize {
    weight_of(v.entries())
}

pub(crate) fn weight_of(entries: &[i64]) -> usize {
    let n = entries.len() / 2;
    (0..n)
        .filter(|&i| entries[i] != 0 || entries[n + i] != 0)
        .count()
}

/// Moves a vector between the finite and unbounded views.
///
/// Finite to unbounded applies `policy`; anything to `Finite(Q)` reduces into
/// `[0, Q)`; unbounded to unbounded is the identity.
pub fn lift_and_reduce(v: &PauliVec, target: Modulus, policy: LiftPolicy) -> Result<PauliVec> {
    match (v.modulus, target) {
        (Modulus::Finite(q), Modulus::Unbounded) => {
            let entries = v
                .entries
                .iter()
                .map(|&e| lift_entry(e, q, policy))
                .collect();
            Ok(PauliVec {
                entries,
                modulus: Modulus::Unbounded,
            })
        }
        (_, Modulus::Finite(_)) => PauliVec::new(v.entries.clone(), target),
        (Modulus::Unbounded, Modulus::Unbounded) => Ok(v.clone()),
    }
}
