//! Finitely generated abelian groups and stable homotopy of 4-manifolds.
//!
//! For `M` simply connected, closed, with `b2 = k >= 1`:
//! `pi_n^s(M) = (pi_{n-2}^s)^k + (pi_{n-3}^s)^{k-1} + pi_{n-5}^s`, and a finite
//! fundamental group of order `m` adds `(pi_{n-1}^s)^{m-1}`. Stems with
//! negative index are trivial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::ranks::closed_form_parameter;

/// A cyclic factor `Z/p^e`, `e >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    /// `Some` iff `n` is a prime power greater than one.
    pub fn from_order(n: u64) -> Option<Self> {
        match factorize(n).as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

/// Prime factorization of `n` as prime powers, in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push(PrimePower {
                prime: p,
                exponent: e,
            });
        }
        p += 1;
    }
    if n > 1 {
        out.push(PrimePower {
            prime: n,
            exponent: 1,
        });
    }
    out
}

/// Direct sums and repeated direct sums, shared by concrete groups and the
/// formal sums used to test the assembly formulas.
pub trait DirectSum: Clone {
    fn trivial() -> Self;
    fn direct_sum(&self, other: &Self) -> Self;

    /// `self` summed `e` times; `e = 0` gives the trivial group.
    fn power(&self, e: u64) -> Self {
        let mut acc = Self::trivial();
        for _ in 0..e {
            acc = acc.direct_sum(self);
        }
        acc
    }
}

/// `Z^r` plus torsion in primary decomposition, sorted by `(prime, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: u64,
    torsion: Vec<PrimePower>,
}

impl FinAbGroup {
    pub fn free(rank: u64) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        FinAbGroup {
            free_rank: 0,
            torsion: factorize(n),
        }
        .canonical()
    }

    /// From a free rank and prime-power orders; rejects any other order.
    pub fn from_parts(free_rank: u64, orders: &[u64]) -> Result<Self> {
        let torsion = orders
            .iter()
            .map(|&o| {
                PrimePower::from_order(o)
                    .ok_or_else(|| domain(format!("{o} is not a prime power > 1")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinAbGroup { free_rank, torsion }.canonical())
    }

    fn canonical(mut self) -> Self {
        self.torsion.sort();
        self
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[PrimePower] {
        &self.torsion
    }

    pub fn torsion_orders(&self) -> Vec<u64> {
        self.torsion.iter().map(PrimePower::order).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariant factors `d_1 >= d_2 >= ...` with `d_{i+1} | d_i`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for t in &self.torsion {
            by_prime.entry(t.prime).or_default().push(t.order());
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = alloc::vec![1u64; len];
        for orders in by_prime.values_mut() {
            orders.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, o) in factors.iter_mut().zip(orders.iter()) {
                *slot *= o;
            }
        }
        factors
    }

    /// Torsion in primary decomposition, then the free part: `Z/2 + (Z/3)^2 + Z`.
    pub fn primary_notation(&self) -> String {
        render(self.torsion_orders(), self.free_rank)
    }
}

fn render(orders: Vec<u64>, free_rank: u64) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < orders.len() {
        let mut j = i;
        while j < orders.len() && orders[j] == orders[i] {
            j += 1;
        }
        let count = j - i;
        parts.push(if count == 1 {
            format!("Z/{}", orders[i])
        } else {
            format!("(Z/{})^{}", orders[i], count)
        });
        i = j;
    }
    match free_rank {
        0 => {}
        1 => parts.push(String::from("Z")),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        return String::from("0");
    }
    parts.join(" + ")
}

/// Invariant factors from largest to smallest, then the free part:
/// `(Z/24)^2 + Z/2 + Z`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.invariant_factors(), self.free_rank))
    }
}

impl DirectSum for FinAbGroup {
    fn trivial() -> Self {
        FinAbGroup::default()
    }

    fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        FinAbGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
        .canonical()
    }

    fn power(&self, e: u64) -> Self {
        let mut torsion = Vec::with_capacity(self.torsion.len() * e as usize);
        for _ in 0..e {
            torsion.extend_from_slice(&self.torsion);
        }
        FinAbGroup {
            free_rank: self.free_rank * e,
            torsion,
        }
        .canonical()
    }
}

/// `direct_sum_power(g, e)`: `g` summed `e` times.
pub fn direct_sum_power(g: &FinAbGroup, e: u64) -> FinAbGroup {
    g.power(e)
}

/// A formal direct sum of marker groups `G_j`, used to check the index and
/// exponent bookkeeping of the assembly formulas independently of real data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormalSum {
    terms: BTreeMap<i64, u64>,
}

impl FormalSum {
    pub fn marker(j: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(j, 1);
        FormalSum { terms }
    }

    pub fn from_terms(terms: &[(i64, u64)]) -> Self {
        let mut out = FormalSum::default();
        for &(j, e) in terms {
            if e > 0 {
                *out.terms.entry(j).or_default() += e;
            }
        }
        out
    }

    pub fn multiplicity(&self, j: i64) -> u64 {
        self.terms.get(&j).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, u64> {
        &self.terms
    }
}

impl DirectSum for FormalSum {
    fn trivial() -> Self {
        FormalSum::default()
    }

    fn direct_sum(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&j, &e) in &other.terms {
            *terms.entry(j).or_default() += e;
        }
        FormalSum { terms }
    }

    fn power(&self, e: u64) -> Self {
        let terms = if e == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(&j, &m)| (j, m * e)).collect()
        };
        FormalSum { terms }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, e) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "G{j}")?;
            } else {
                write!(f, "G{j}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Stable stems `pi_0^s..=pi_max^s` with a note on where the values come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemsTable<G = FinAbGroup> {
    entries: Vec<G>,
    source_note: String,
}

impl<G: DirectSum> StemsTable<G> {
    /// Entries for stems `0, 1, 2, ...` in order.
    pub fn new(entries: Vec<G>, source_note: impl Into<String>) -> Result<Self> {
        if entries.is_empty() {
            return Err(domain("stems table needs at least stem 0"));
        }
        Ok(StemsTable {
            entries,
            source_note: source_note.into(),
        })
    }

    pub fn max_index(&self) -> i64 {
        self.entries.len() as i64 - 1
    }

    pub fn source_note(&self) -> &str {
        &self.source_note
    }

    pub fn entries(&self) -> &[G] {
        &self.entries
    }

    /// `pi_n^s`; trivial for negative `n`.
    pub fn get(&self, n: i64) -> Result<G> {
        if n < 0 {
            return Ok(G::trivial());
        }
        self.entries
            .get(n as usize)
            .cloned()
            .ok_or(Error::InsufficientStemsData { missing: n })
    }
}

impl StemsTable<FinAbGroup> {
    /// A concrete table; stem 0 must be `Z`.
    pub fn validated(entries: Vec<FinAbGroup>, source_note: impl Into<String>) -> Result<Self> {
        let table = Self::new(entries, source_note)?;
        if table.entries[0] != FinAbGroup::free(1) {
            return Err(domain("stem 0 must be Z"));
        }
        Ok(table)
    }
}

impl StemsTable<FormalSum> {
    /// Stems `0..=max` replaced by markers `G_0..=G_max`.
    pub fn symbolic(max_index: usize) -> Self {
        StemsTable {
            entries: (0..=max_index as i64).map(FormalSum::marker).collect(),
            source_note: String::from("symbolic markers"),
        }
    }
}

fn weighted_sum<G: DirectSum>(stems: &StemsTable<G>, terms: &[(i64, u64)]) -> Result<G> {
    let mut acc = G::trivial();
    for &(index, exponent) in terms {
        if exponent == 0 {
            continue;
        }
        acc = acc.direct_sum(&stems.get(index)?.power(exponent));
    }
    Ok(acc)
}

/// `pi_n^s(M)` for simply connected `M` with `b2 = k`.
pub fn stable_homotopy_simply_connected<G: DirectSum>(
    k: u64,
    n: i64,
    stems: &StemsTable<G>,
) -> Result<G> {
    if k < 1 {
        return Err(domain("second Betti number must be >= 1"));
    }
    weighted_sum(stems, &[(n - 2, k), (n - 3, k - 1), (n - 5, 1)])
}

/// `pi_n^s(M)` for `M` with `|pi_1| = m` and `pi_2 = Z^k`.
pub fn stable_homotopy_finite_pi1<G: DirectSum>(
    k: u64,
    n: i64,
    m: u64,
    stems: &StemsTable<G>,
) -> Result<G> {
    if m < 1 {
        return Err(domain("order of pi_1 must be >= 1"));
    }
    if k < 1 {
        return Err(domain("rank of pi_2 must be >= 1"));
    }
    weighted_sum(
        stems,
        &[(n - 2, k), (n - 3, k - 1), (n - 5, 1), (n - 1, m - 1)],
    )
}

/// `(pi_3(M), pi_4(M))` for `b2 >= 3`:
/// `Z^{k(k+3)/2}` and `Z^{(k-1)(k+1)(k+3)/3} + (Z/2)^{2k}` with `k = b2 - 1`.
pub fn integral_low_homotopy(b2: u64) -> Result<(FinAbGroup, FinAbGroup)> {
    if b2 < 3 {
        return Err(domain("integral pi_3, pi_4 formulas need b2 >= 3"));
    }
    let k = closed_form_parameter(b2)?;
    let pi3 = FinAbGroup::free(k * (k + 3) / 2);
    let pi4 = FinAbGroup::free((k - 1) * (k + 1) * (k + 3) / 3)
        .direct_sum(&FinAbGroup::cyclic(2).power(2 * k));
    Ok((pi3, pi4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    fn small_table() -> StemsTable {
        let entries = vec![z(0), z(2), z(2), z(24), z(1), z(1), z(2)];
        StemsTable::validated(entries, "test").unwrap()
    }

    #[test]
    fn powers() {
        assert_eq!(
            direct_sum_power(&FinAbGroup::free(1), 3),
            FinAbGroup::free(3)
        );
        assert!(direct_sum_power(&z(2), 0).is_trivial());
        assert_eq!(direct_sum_power(&z(24), 2).torsion_orders(), [8, 8, 3, 3]);
    }

    #[test]
    fn cyclic_decomposes() {
        assert_eq!(z(24).torsion_orders(), [8, 3]);
        assert!(z(1).is_trivial());
        assert_eq!(z(0), FinAbGroup::free(1));
        assert!(FinAbGroup::from_parts(0, &[6]).is_err());
        assert_eq!(
            FinAbGroup::from_parts(1, &[9, 2]).unwrap().torsion_orders(),
            [2, 9]
        );
    }

    #[test]
    fn notation() {
        let g = z(24)
            .power(2)
            .direct_sum(&z(2))
            .direct_sum(&FinAbGroup::free(1));
        assert_eq!(g.to_string(), "(Z/24)^2 + Z/2 + Z");
        assert_eq!(g.primary_notation(), "Z/2 + (Z/8)^2 + (Z/3)^2 + Z");
        assert_eq!(FinAbGroup::free(2).to_string(), "Z^2");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(g.invariant_factors(), [24, 24, 2]);
    }

    #[test]
    fn simply_connected_examples() {
        let t = small_table();
        assert_eq!(
            stable_homotopy_simply_connected(2, 2, &t).unwrap(),
            FinAbGroup::free(2)
        );
        let g = stable_homotopy_simply_connected(2, 5, &t).unwrap();
        assert_eq!(g.to_string(), "(Z/24)^2 + Z/2 + Z");

        let sym = StemsTable::symbolic(12);
        let g = stable_homotopy_simply_connected(3, 3, &sym).unwrap();
        assert_eq!(g, FormalSum::from_terms(&[(1, 3), (0, 2)]));
        assert_eq!(g.to_string(), "G1^3 + G0^2");
    }

    #[test]
    fn missing_stem_is_named() {
        let t = small_table();
        assert_eq!(
            stable_homotopy_simply_connected(2, 9, &t),
            Err(Error::InsufficientStemsData { missing: 7 })
        );
        assert_eq!(
            stable_homotopy_finite_pi1(2, 8, 2, &t),
            Err(Error::InsufficientStemsData { missing: 7 })
        );
    }

    #[test]
    fn finite_pi1_examples() {
        let t = small_table();
        for n in 0..=8 {
            assert_eq!(
                stable_homotopy_finite_pi1(2, n, 1, &t),
                stable_homotopy_simply_connected(2, n, &t)
            );
        }
        let base = stable_homotopy_simply_connected(1, 3, &t).unwrap();
        assert_eq!(
            stable_homotopy_finite_pi1(1, 3, 2, &t).unwrap(),
            base.direct_sum(&z(2))
        );
        assert_eq!(
            stable_homotopy_finite_pi1(2, 2, 3, &t).unwrap(),
            FinAbGroup::free(2).direct_sum(&z(2).power(2))
        );
        assert!(stable_homotopy_finite_pi1(0, 3, 2, &t).is_err());
    }

    #[test]
    fn low_homotopy() {
        let (p3, p4) = integral_low_homotopy(3).unwrap();
        assert_eq!(p3, FinAbGroup::free(5));
        assert_eq!(p4, FinAbGroup::free(5).direct_sum(&z(2).power(4)));
        let (p3, p4) = integral_low_homotopy(4).unwrap();
        assert_eq!(
            (p3.free_rank(), p4.free_rank(), p4.torsion().len()),
            (9, 16, 6)
        );
        let (p3, p4) = integral_low_homotopy(5).unwrap();
        assert_eq!(
            (p3.free_rank(), p4.free_rank(), p4.torsion().len()),
            (14, 35, 8)
        );
        assert!(integral_low_homotopy(2).is_err());
    }

    #[test]
    fn validated_requires_z_in_stem_zero() {
        assert!(StemsTable::validated(vec![z(2)], "bad").is_err());
        assert!(StemsTable::<FinAbGroup>::new(vec![], "empty").is_err());
    }
}
