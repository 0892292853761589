//! Composite-modulus constructions: pick-and-mix scaling, mixing per-prime
//! codes, block embedding, gauge fixing and a few standard base codes.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::analysis::{brute_force_distance, DistanceResult, DistanceSearch};
use crate::arith::{is_prime, is_square_free};
use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::ldi::{to_ldi, LdiCode};
use crate::linalg::{IntMatrix, SpanMembership};
use crate::ring::{integer_symplectic_product, LiftPolicy, Modulus, PauliVec};

/// A code over one prime, to be scaled into a composite modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeComponent {
    pub p: u64,
    /// Over `Finite(p)`, or an unbounded LDI code read modulo `p`.
    pub code: StabilizerCode,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl PrimeComponent {
    pub fn new(p: u64, code: StabilizerCode) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match code.modulus() {
            Modulus::Finite(q) if q != p => {
                return Err(Error::ModulusMismatch {
                    left: Modulus::Finite(q),
                    right: Modulus::Finite(p),
                })
            }
            _ => {}
        }
        let rows = component_rows(&code, p);
        check_commuting(&rows, p)?;
        let n = code.n();
        Ok(PrimeComponent {
            p,
            n,
            k: n.saturating_sub(code.num_generators()),
            d: code.claimed_distance(),
            code,
        })
    }

    pub fn from_ldi(ldi: &LdiCode, p: u64) -> Result<Self> {
        Self::new(p, ldi.code().clone())
    }

    pub fn with_distance(mut self, d: Option<usize>) -> Self {
        self.d = d;
        self
    }
}

fn component_rows(code: &StabilizerCode, p: u64) -> Vec<Vec<i64>> {
    code.integer_rows(LiftPolicy::NonNegative)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.rem_euclid(p as i64)).collect())
        .collect()
}

fn check_commuting(rows: &[Vec<i64>], q: u64) -> Result<()> {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let v = integer_symplectic_product(&rows[i], &rows[j])?.rem_euclid(q as i128) as i64;
            if v != 0 {
                return Err(Error::NonCommuting { i, j, product: v });
            }
        }
    }
    Ok(())
}

fn check_mix_modulus(components: &[PrimeComponent], q: u64) -> Result<()> {
    Modulus::finite(q)?;
    if !is_square_free(q)? {
        return Err(Error::NotSquareFree(q));
    }
    let mut seen = HashSet::new();
    for c in components {
        if !q.is_multiple_of(c.p) {
            return Err(Error::PrimeDoesNotDivide { p: c.p, modulus: q });
        }
        if !seen.insert(c.p) {
            return Err(Error::DuplicatePrime(c.p));
        }
    }
    Ok(())
}

/// Multiplies each component's generators by `Q / p` modulo `Q`.
pub fn pick_and_mix_scale(components: &[PrimeComponent], q: u64) -> Result<Vec<Vec<Vec<i64>>>> {
    check_mix_modulus(components, q)?;
    let qi = q as i64;
    Ok(components
        .iter()
        .map(|c| {
            let factor = qi / c.p as i64;
            component_rows(&c.code, c.p)
                .into_iter()
                .map(|row| row.into_iter().map(|x| x * factor % qi).collect())
                .collect()
        })
        .collect())
}

/// Stacks the scaled generator sets into one code over `Z_Q`.
pub fn mix_codes(components: &[PrimeComponent], q: u64) -> Result<StabilizerCode> {
    let n = components
        .first()
        .map(|c| c.n)
        .ok_or_else(|| Error::Invalid("no components to mix".into()))?;
    for c in components {
        if c.n != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: c.n,
            });
        }
    }
    let rows: Vec<Vec<i64>> = pick_and_mix_scale(components, q)?
        .into_iter()
        .flatten()
        .collect();
    let d = components
        .iter()
        .map(|c| c.d)
        .collect::<Option<Vec<usize>>>()
        .and_then(|ds| ds.into_iter().min());
    Ok(StabilizerCode::new(n, Modulus::Finite(q), rows)?.with_claimed_distance(d))
}

/// Places a code on registers `offset..offset + n0` of `total_n`.
pub fn block_embed(code: &StabilizerCode, total_n: usize, offset: usize) -> Result<StabilizerCode> {
    let n0 = code.n();
    if offset.checked_add(n0).is_none_or(|end| end > total_n) {
        return Err(Error::EmbedOutOfRange {
            offset,
            len: n0,
            total: total_n,
        });
    }
    let rows = code
        .generators()
        .iter()
        .map(|g| {
            let mut row = vec![0i64; 2 * total_n];
            row[offset..offset + n0].copy_from_slice(&g[..n0]);
            row[total_n + offset..total_n + offset + n0].copy_from_slice(&g[n0..]);
            row
        })
        .collect();
    Ok(
        StabilizerCode::new_unchecked(total_n, code.modulus(), rows)?
            .with_origin_prime(code.origin_prime())
            .with_claimed_distance(code.claimed_distance()),
    )
}

/// `copies` disjoint embeddings of `code` side by side.
pub fn tile(code: &StabilizerCode, copies: usize) -> Result<StabilizerCode> {
    let total = code.n() * copies;
    let mut rows = Vec::with_capacity(code.num_generators() * copies);
    for c in 0..copies {
        rows.extend(
            block_embed(code, total, c * code.n())?
                .generators()
                .iter()
                .cloned(),
        );
    }
    Ok(StabilizerCode::new_unchecked(total, code.modulus(), rows)?
        .with_origin_prime(code.origin_prime())
        .with_claimed_distance(code.claimed_distance()))
}

/// Appends logical operators to the generators, shrinking the logical space
/// by the product of their additive orders.
pub fn gauge_fix_to_integer_k(
    code: &StabilizerCode,
    logicals: &[PauliVec],
) -> Result<StabilizerCode> {
    let q = code
        .modulus()
        .value()
        .ok_or_else(|| Error::Invalid("gauge fixing needs a finite modulus".into()))?;
    let n = code.n();
    let mut rows: Vec<Vec<i64>> = code.generators().to_vec();
    for l in logicals {
        if l.entries().len() != 2 * n {
            return Err(Error::LengthMismatch {
                expected: 2 * n,
                found: l.entries().len(),
            });
        }
        let v: Vec<i64> = l.entries().iter().map(|x| x.rem_euclid(q as i64)).collect();
        for (i, g) in rows.iter().enumerate() {
            let product = integer_symplectic_product(g, &v)?.rem_euclid(q as i128) as i64;
            if product != 0 {
                return Err(Error::Anticommutes {
                    generator: i,
                    product,
                });
            }
        }
        if SpanMembership::new(&IntMatrix::from_rows(&rows, 2 * n)?, q)?.contains(&v)? {
            return Err(Error::AlreadyMember);
        }
        rows.push(v);
    }
    Ok(StabilizerCode::new(n, Modulus::Finite(q), rows)?.with_origin_prime(code.origin_prime()))
}

/// Base codes available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownCode {
    /// Cyclic shifts of `XZZXI` over `Z_2`.
    FiveQubit,
    /// Cyclic shifts of `X Z Z^-1 X^-1 I` over `Z_p`.
    FiveQudit(u64),
    /// The binary Steane code converted to LDI form.
    SteaneLdi,
    /// `Z_i Z_{i+1}^-1` checks on adjacent registers.
    RepetitionZ(u64, usize),
    /// `X_i X_{i+1}^-1` checks on adjacent registers.
    RepetitionX(u64, usize),
}

impl fmt::Display for KnownCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownCode::FiveQubit => write!(f, "five-qubit"),
            KnownCode::FiveQudit(p) => write!(f, "five-qudit:{p}"),
            KnownCode::SteaneLdi => write!(f, "steane-ldi"),
            KnownCode::RepetitionZ(p, n) => write!(f, "rep-z:{p}:{n}"),
            KnownCode::RepetitionX(p, n) => write!(f, "rep-x:{p}:{n}"),
        }
    }
}

impl FromStr for KnownCode {
    type Err = Error;

    /// `five-qubit`, `five-qudit:P`, `steane-ldi`, `rep-z:P:N`, `rep-x:P:N`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Invalid(format!("bad number {t:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["five-qubit"] => Ok(KnownCode::FiveQubit),
            ["five-qudit", p] => Ok(KnownCode::FiveQudit(num(p)?)),
            ["steane-ldi"] => Ok(KnownCode::SteaneLdi),
            ["rep-z", p, n] => Ok(KnownCode::RepetitionZ(num(p)?, num(n)? as usize)),
            ["rep-x", p, n] => Ok(KnownCode::RepetitionX(num(p)?, num(n)? as usize)),
            _ => Err(Error::Invalid(format!("unknown code name {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Known {
    Code(StabilizerCode),
    Ldi(LdiCode),
}

impl Known {
    pub fn code(&self) -> &StabilizerCode {
        match self {
            Known::Code(c) => c,
            Known::Ldi(l) => l.code(),
        }
    }

    /// Natural prime of the construction.
    pub fn prime(&self) -> Option<u64> {
        match self {
            Known::Code(c) => c.modulus().value(),
            Known::Ldi(l) => Some(l.origin_prime()),
        }
    }
}

fn cyclic(n: usize, x: &[i64], z: &[i64], shifts: usize, q: u64) -> Result<StabilizerCode> {
    let rows = (0..shifts)
        .map(|s| {
            let mut row = vec![0i64; 2 * n];
            for k in 0..n {
                row[(k + s) % n] = x[k];
                row[n + (k + s) % n] = z[k];
            }
            row
        })
        .collect();
    StabilizerCode::new(n, Modulus::Finite(q), rows)
}

fn repetition(p: u64, n: usize, z_type: bool) -> Result<StabilizerCode> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 2 {
        return Err(Error::Invalid(
            "repetition code needs at least two registers".into(),
        ));
    }
    let offset = if z_type { n } else { 0 };
    let rows = (0..n - 1)
        .map(|i| {
            let mut row = vec![0i64; 2 * n];
            row[offset + i] = 1;
            row[offset + i + 1] = -1;
            row
        })
        .collect();
    StabilizerCode::new(n, Modulus::Finite(p), rows)
}

fn steane() -> Result<StabilizerCode> {
    let h = [
        [0, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
    ];
    let mut rows = Vec::new();
    for check in &h {
        let mut row = vec![0i64; 14];
        row[..7].copy_from_slice(check);
        rows.push(row);
    }
    for check in &h {
        let mut row = vec![0i64; 14];
        row[7..].copy_from_slice(check);
        rows.push(row);
    }
    Ok(StabilizerCode::new(7, Modulus::Finite(2), rows)?.with_claimed_distance(Some(3)))
}

/// Builds a named base code. `FiveQudit(p)` with `p <= 5` is checked to have
/// distance 3 by exhaustive search.
pub fn known_code(name: KnownCode) -> Result<Known> {
    match name {
        KnownCode::FiveQubit => Ok(Known::Code(
            cyclic(5, &[1, 0, 0, 1, 0], &[0, 1, 1, 0, 0], 4, 2)?.with_claimed_distance(Some(3)),
        )),
        KnownCode::FiveQudit(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let code = cyclic(5, &[1, 0, 0, -1, 0], &[0, 1, -1, 0, 0], 4, p)?;
            if p <= 5 {
                match brute_force_distance(&code, p, &DistanceSearch::new(3))? {
                    DistanceResult::Found { distance: 3, .. } => {}
                    other => {
                        return Err(Error::Invalid(format!(
                            "five-register code over {p} failed its check: {other:?}"
                        )))
                    }
                }
            }
            Ok(Known::Code(code.with_claimed_distance(Some(3))))
        }
        KnownCode::SteaneLdi => Ok(Known::Ldi(to_ldi(&steane()?)?)),
        KnownCode::RepetitionZ(p, n) => Ok(Known::Code(repetition(p, n, true)?)),
        KnownCode::RepetitionX(p, n) => Ok(Known::Code(repetition(p, n, false)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{logical_dimension, logical_operators};
    use crate::linalg::subgroup_order;
    use crate::ring::additive_order;
    use num_bigint::BigUint;

    fn five_qubit() -> StabilizerCode {
        known_code(KnownCode::FiveQubit).unwrap().code().clone()
    }

    fn five_qutrit() -> StabilizerCode {
        known_code(KnownCode::FiveQudit(3)).unwrap().code().clone()
    }

    #[test]
    fn names_round_trip() {
        for k in [
            KnownCode::FiveQubit,
            KnownCode::FiveQudit(7),
            KnownCode::SteaneLdi,
            KnownCode::RepetitionZ(2, 3),
            KnownCode::RepetitionX(5, 4),
        ] {
            assert_eq!(k.to_string().parse::<KnownCode>().unwrap(), k);
        }
        assert!("golay".parse::<KnownCode>().is_err());
        assert_eq!(known_code(KnownCode::FiveQudit(4)), Err(Error::NotPrime(4)));
    }

    #[test]
    fn base_codes() {
        let fq = five_qubit();
        assert_eq!(fq.num_generators(), 4);
        assert_eq!(fq.generators()[0], vec![1, 0, 0, 1, 0, 0, 1, 1, 0, 0]);
        for p in [2, 3, 5, 7] {
            let c = known_code(KnownCode::FiveQudit(p)).unwrap();
            assert_eq!(c.code().modulus(), Modulus::Finite(p));
            assert_eq!(c.code().claimed_distance(), Some(3));
        }
        let rep = known_code(KnownCode::RepetitionZ(2, 3)).unwrap();
        assert_eq!(
            rep.code().generators(),
            &[vec![0, 0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1, 1]]
        );
        let d = brute_force_distance(rep.code(), 2, &DistanceSearch::new(3)).unwrap();
        assert_eq!(d.distance(), Some(1));
        let rep = known_code(KnownCode::RepetitionX(3, 3)).unwrap();
        assert_eq!(rep.code().generators()[0], vec![1, 2, 0, 0, 0, 0]);

        let steane = known_code(KnownCode::SteaneLdi).unwrap();
        let Known::Ldi(ldi) = &steane else {
            panic!("expected an LDI code")
        };
        assert_eq!(ldi.origin_prime(), 2);
        assert_eq!(steane.prime(), Some(2));
        assert_eq!(ldi.code().num_generators(), 6);
    }

    #[test]
    fn scaling_rules() {
        let a = PrimeComponent::new(2, five_qubit()).unwrap();
        let b = PrimeComponent::new(3, five_qutrit()).unwrap();
        let sets = pick_and_mix_scale(&[a.clone(), b.clone()], 6).unwrap();
        assert!(sets[0].iter().flatten().all(|&x| x % 3 == 0));
        assert!(sets[1].iter().flatten().all(|&x| x % 2 == 0));
        for u in &sets[0] {
            for v in &sets[1] {
                assert_eq!(integer_symplectic_product(u, v).unwrap() % 6, 0);
            }
            assert_eq!(
                additive_order(&PauliVec::new(u.clone(), Modulus::Finite(6)).unwrap(), 6).unwrap(),
                2
            );
        }

        let single = pick_and_mix_scale(&[b.clone()], 3).unwrap();
        assert_eq!(single[0], five_qutrit().generators());

        assert_eq!(
            pick_and_mix_scale(&[a.clone()], 12),
            Err(Error::NotSquareFree(12))
        );
        assert_eq!(
            pick_and_mix_scale(&[b.clone()], 10),
            Err(Error::PrimeDoesNotDivide { p: 3, modulus: 10 })
        );
        assert_eq!(
            pick_and_mix_scale(&[a.clone(), a.clone()], 6),
            Err(Error::DuplicatePrime(2))
        );
        assert!(matches!(
            PrimeComponent::new(3, five_qubit()),
            Err(Error::ModulusMismatch { .. })
        ));
        assert_eq!(
            PrimeComponent::new(4, five_qubit()),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn desk_mix() {
        let a = PrimeComponent::new(2, five_qubit()).unwrap();
        let b = PrimeComponent::new(3, five_qutrit()).unwrap();
        let mixed = mix_codes(&[a, b], 6).unwrap();
        assert_eq!(mixed.claimed_distance(), Some(3));
        let order = subgroup_order(&mixed.generator_matrix(), 6).unwrap();
        assert_eq!(order, BigUint::from(1296u32));
        let dim = logical_dimension(&mixed, 6).unwrap();
        assert_eq!(dim.big_k, BigUint::from(6u32));
        let mut orders: Vec<u64> = logical_operators(&mixed, 6)
            .unwrap()
            .iter()
            .map(|o| o.order)
            .collect();
        orders.sort();
        assert_eq!(orders, vec![2, 2, 3, 3]);

        // one order-2 logical halves K
        let ops = logical_operators(&mixed, 6).unwrap();
        let two = ops.iter().find(|o| o.order == 2).unwrap();
        let fixed = gauge_fix_to_integer_k(&mixed, &[two.operator.clone()]).unwrap();
        assert_eq!(
            logical_dimension(&fixed, 6).unwrap().big_k,
            BigUint::from(3u32)
        );
        assert_eq!(
            gauge_fix_to_integer_k(&mixed, &[]).unwrap().generators(),
            mixed.generators()
        );
    }

    #[test]
    fn gauge_fix_errors() {
        let code = five_qubit();
        let member = PauliVec::new(code.generators()[0].clone(), Modulus::Finite(2)).unwrap();
        assert_eq!(
            gauge_fix_to_integer_k(&code, &[member]),
            Err(Error::AlreadyMember)
        );
        let x1 = PauliVec::new(vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0], Modulus::Finite(2)).unwrap();
        assert!(matches!(
            gauge_fix_to_integer_k(&code, &[x1]),
            Err(Error::Anticommutes { .. })
        ));
    }

    #[test]
    fn embedding() {
        let code = five_qubit();
        assert_eq!(block_embed(&code, 5, 0).unwrap(), code);
        let e = block_embed(&code, 35, 5).unwrap();
        for g in e.generators() {
            for k in 0..35 {
                if !(5..10).contains(&k) {
                    assert_eq!((g[k], g[35 + k]), (0, 0));
                }
            }
        }
        assert_eq!(
            block_embed(&code, 8, 4),
            Err(Error::EmbedOutOfRange {
                offset: 4,
                len: 5,
                total: 8
            })
        );
        let tiled = tile(&code, 7).unwrap();
        assert_eq!(tiled.n(), 35);
        assert_eq!(tiled.num_generators(), 28);
        assert!(crate::code::validate(&tiled).unwrap().is_valid());
    }

    #[test]
    fn embedded_block_keeps_distance() {
        let code = five_qubit();
        let e = block_embed(&code, 8, 2).unwrap();
        // the free registers make the padded code distance 1 overall
        assert_eq!(
            brute_force_distance(&e, 2, &DistanceSearch::new(3))
                .unwrap()
                .distance(),
            Some(1)
        );
        let inside = DistanceSearch::new(3).restricted_to((2..7).collect());
        assert_eq!(
            brute_force_distance(&e, 2, &inside).unwrap().distance(),
            Some(3)
        );
    }
}
