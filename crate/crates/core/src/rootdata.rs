//! Root-system data for type `D_n` with `n` even: simple roots, fundamental
//! weights, the fundamental group `Λ/T*` for the adjoint and half-spin
//! lattices, and Weyl-orbit sizes of fundamental weights.
//!
//! Weights are stored with the common denominator 2 cleared (coordinates of
//! `2ω_i`), so every vector is integral and orbit enumeration stays in `ℤ^n`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// Largest rank for which orbits are enumerated by breadth-first search, and
/// the largest orbit the search will attempt. Bigger orbits (and everything
/// above rank 20) use the closed forms, which the test suite validates
/// against the enumeration at small rank; provenance is recorded per weight.
const BFS_MAX_RANK: usize = 20;
const BFS_MAX_ORBIT: u64 = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootDatumError {
    /// Type `D_n` here needs `n` even and at least 4.
    InvalidRank { n: usize },
    WeightIndexOutOfRange { index: usize, n: usize },
}

impl fmt::Display for RootDatumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootDatumError::InvalidRank { n } => {
                write!(f, "invalid rank {n}: need an even n >= 4")
            }
            RootDatumError::WeightIndexOutOfRange { index, n } => {
                write!(f, "fundamental weight index {index} out of range 1..={n}")
            }
        }
    }
}

/// Character lattice choice `Λ_r ⊆ T* ⊆ Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Isogeny {
    /// `T* = Λ_r`; the fundamental group is the Klein four-group.
    Adjoint,
    /// Intermediate lattice with `Λ/T*` of order 2. The quotient kills the
    /// class of `ω_n`, so `ω̄_n = 0` and `ω̄_1 = ω̄_{n-1}` generate.
    HalfSpin,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::Adjoint => write!(f, "adjoint"),
            Isogeny::HalfSpin => write!(f, "halfspin"),
        }
    }
}

/// Nonzero classes of `Λ/Λ_r` for even `D_n`, named by the fundamental weight
/// carrying them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeightClassName {
    W1,
    WnMinus1,
    Wn,
}

impl WeightClassName {
    pub const ALL: [WeightClassName; 3] =
        [WeightClassName::W1, WeightClassName::WnMinus1, WeightClassName::Wn];

    /// The third nonzero Klein-group element.
    pub fn complement(a: WeightClassName, b: WeightClassName) -> WeightClassName {
        assert_ne!(a, b);
        *WeightClassName::ALL
            .iter()
            .find(|w| **w != a && **w != b)
            .unwrap()
    }
}

impl fmt::Display for WeightClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightClassName::W1 => write!(f, "w1"),
            WeightClassName::WnMinus1 => write!(f, "wn-1"),
            WeightClassName::Wn => write!(f, "wn"),
        }
    }
}

/// Element of `Λ/T*` as a bitmask over the generators `ω̄_{n-1}` (bit 0) and
/// `ω̄_n` (bit 1); addition is XOR. In the half-spin case only bit 0 is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupClass(pub u8);

impl GroupClass {
    pub const ZERO: GroupClass = GroupClass(0);

    pub fn add(self, other: GroupClass) -> GroupClass {
        GroupClass(self.0 ^ other.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The group `Λ/T*` together with the class map on fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalGroup {
    pub isogeny: Isogeny,
    n: usize,
}

impl FundamentalGroup {
    /// Cyclic structure: `(2, 2)` for adjoint, `(2)` for half-spin.
    pub fn structure(&self) -> Vec<u32> {
        match self.isogeny {
            Isogeny::Adjoint => vec![2, 2],
            Isogeny::HalfSpin => vec![2],
        }
    }

    pub fn order(&self) -> usize {
        match self.isogeny {
            Isogeny::Adjoint => 4,
            Isogeny::HalfSpin => 2,
        }
    }

    /// Mask of a named nonzero class of the adjoint quotient, mapped through
    /// the half-spin projection when applicable.
    pub fn class_of_name(&self, name: WeightClassName) -> GroupClass {
        let adjoint = match name {
            WeightClassName::WnMinus1 => GroupClass(0b01),
            WeightClassName::Wn => GroupClass(0b10),
            WeightClassName::W1 => GroupClass(0b11),
        };
        match self.isogeny {
            Isogeny::Adjoint => adjoint,
            // ω̄_n (bit 1) dies; ω̄_1 and ω̄_{n-1} both project to σ.
            Isogeny::HalfSpin => GroupClass(adjoint.0 & 1),
        }
    }

    /// Class of the fundamental weight `ω_i` in `Λ/T*`.
    ///
    /// `ω̄_s = s·ω̄_1` for `2 ≤ s ≤ n-2`, so intermediate even weights vanish
    /// and intermediate odd weights carry the class of `ω_1`.
    pub fn class_of_weight(&self, i: usize) -> Result<GroupClass, RootDatumError> {
        if i == 0 || i > self.n {
            return Err(RootDatumError::WeightIndexOutOfRange { index: i, n: self.n });
        }
        let class = if i == 1 {
            self.class_of_name(WeightClassName::W1)
        } else if i == self.n - 1 {
            self.class_of_name(WeightClassName::WnMinus1)
        } else if i == self.n {
            self.class_of_name(WeightClassName::Wn)
        } else if i % 2 == 0 {
            GroupClass::ZERO
        } else {
            self.class_of_name(WeightClassName::W1)
        };
        Ok(class)
    }

    /// Group elements in the canonical basis order: identity first, then the
    /// nonzero classes in weight order `ω̄_1, ω̄_{n-1}, ω̄_n` (adjoint) or the
    /// single generator (half-spin).
    pub fn elements(&self) -> Vec<GroupClass> {
        match self.isogeny {
            Isogeny::Adjoint => vec![
                GroupClass::ZERO,
                GroupClass(0b11),
                GroupClass(0b01),
                GroupClass(0b10),
            ],
            Isogeny::HalfSpin => vec![GroupClass::ZERO, GroupClass(1)],
        }
    }
}

/// How an orbit size was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitProvenance {
    Enumerated,
    ClosedForm,
}

impl fmt::Display for OrbitProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitProvenance::Enumerated => write!(f, "enumerated"),
            OrbitProvenance::ClosedForm => write!(f, "closed-form"),
        }
    }
}

/// Weyl-orbit sizes `d_i = |W·ω_i|` of all fundamental weights, with
/// provenance per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSizes {
    entries: Vec<(BigInt, OrbitProvenance)>,
}

impl OrbitSizes {
    pub fn size(&self, i: usize) -> &BigInt {
        &self.entries[i - 1].0
    }

    pub fn provenance(&self, i: usize) -> OrbitProvenance {
        self.entries[i - 1].1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Standard realization of the `D_n` root datum in `ℤ^n`, `n` even, `n ≥ 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    n: usize,
    isogeny: Isogeny,
    /// `α_i = e_i − e_{i+1}` for `i < n`, `α_n = e_{n−1} + e_n`.
    simple_roots: Vec<Vec<i64>>,
    /// Coordinates of `2ω_i`.
    weights2: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn build(n: usize, isogeny: Isogeny) -> Result<Self, RootDatumError> {
        if n < 4 || n % 2 != 0 {
            return Err(RootDatumError::InvalidRank { n });
        }
        let mut simple_roots = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let mut a = vec![0i64; n];
            a[i] = 1;
            a[i + 1] = -1;
            simple_roots.push(a);
        }
        let mut last = vec![0i64; n];
        last[n - 2] = 1;
        last[n - 1] = 1;
        simple_roots.push(last);

        let mut weights2 = Vec::with_capacity(n);
        for i in 1..=n {
            let mut w = vec![0i64; n];
            if i <= n - 2 {
                for e in w.iter_mut().take(i) {
                    *e = 2;
                }
            } else {
                for e in w.iter_mut().take(n - 1) {
                    *e = 1;
                }
                w[n - 1] = if i == n - 1 { -1 } else { 1 };
            }
            weights2.push(w);
        }

        let datum = RootDatum {
            n,
            isogeny,
            simple_roots,
            weights2,
        };
        // Cartan pairing check: <α_i, 2ω_j> = 2δ_ij (D_n is simply laced, so
        // the coroot pairing is the standard dot product).
        for i in 0..n {
            for j in 0..n {
                let p = dot(&datum.simple_roots[i], &datum.weights2[j]);
                let expect = if i == j { 2 } else { 0 };
                assert_eq!(p, expect, "Cartan pairing failed at ({i},{j})");
            }
        }
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    pub fn fundamental_group(&self) -> FundamentalGroup {
        FundamentalGroup {
            isogeny: self.isogeny,
            n: self.n,
        }
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i - 1]
    }

    /// Coordinates of `2ω_i`.
    pub fn weight2(&self, i: usize) -> &[i64] {
        &self.weights2[i - 1]
    }

    /// Closed-form orbit size: `2n` for `ω_1`, `2^i·C(n,i)` for the middle
    /// weights, `2^{n−1}` for the two spin weights.
    pub fn orbit_size_closed_form(&self, i: usize) -> Result<BigInt, RootDatumError> {
        if i == 0 || i > self.n {
            return Err(RootDatumError::WeightIndexOutOfRange { index: i, n: self.n });
        }
        let n = self.n;
        Ok(if i == 1 {
            BigInt::from(2 * n)
        } else if i <= n - 2 {
            (BigInt::one() << i) * binomial(n as u64, i as u64)
        } else {
            BigInt::one() << (n - 1)
        })
    }

    /// Orbit size of `ω_i`, enumerated by breadth-first closure under the
    /// simple reflections `s_α(λ) = λ − α^∨(λ)α` when the orbit is small
    /// enough, otherwise taken from the closed form (validated against the
    /// enumeration at small rank by the test suite).
    pub fn weyl_orbit_size(&self, i: usize) -> Result<(BigInt, OrbitProvenance), RootDatumError> {
        let closed = self.orbit_size_closed_form(i)?;
        if self.n > BFS_MAX_RANK || closed > BigInt::from(BFS_MAX_ORBIT) {
            return Ok((closed, OrbitProvenance::ClosedForm));
        }
        let count = self.orbit_bfs(self.weight2(i));
        Ok((BigInt::from(count), OrbitProvenance::Enumerated))
    }

    /// Breadth-first orbit closure; exposed for the property tests, which
    /// check closure under every simple reflection.
    pub fn orbit_bfs(&self, start: &[i64]) -> u64 {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(v) = queue.pop_front() {
            for alpha in &self.simple_roots {
                let w = reflect(&v, alpha);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() as u64
    }

    pub fn orbit_sizes(&self) -> OrbitSizes {
        let entries = (1..=self.n)
            .map(|i| self.weyl_orbit_size(i).expect("index in range"))
            .collect();
        OrbitSizes { entries }
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s_α(v) = v − <α, v>·α` in the simply laced normalization.
pub(crate) fn reflect(v: &[i64], alpha: &[i64]) -> Vec<i64> {
    let p = dot(alpha, v);
    v.iter().zip(alpha).map(|(x, a)| x - p * a).collect()
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rejects_odd_or_small_rank() {
        assert!(matches!(
            RootDatum::build(3, Isogeny::Adjoint),
            Err(RootDatumError::InvalidRank { n: 3 })
        ));
        assert!(RootDatum::build(2, Isogeny::Adjoint).is_err());
        assert!(RootDatum::build(5, Isogeny::HalfSpin).is_err());
    }

    #[test]
    fn adjoint_fundamental_group_is_klein_four() {
        let d = RootDatum::build(4, Isogeny::Adjoint).unwrap();
        let fg = d.fundamental_group();
        assert_eq!(fg.structure(), vec![2, 2]);
        assert_eq!(fg.order(), 4);
        // ω̄_1 = ω̄_{n-1} + ω̄_n
        let w1 = fg.class_of_name(WeightClassName::W1);
        let wm = fg.class_of_name(WeightClassName::WnMinus1);
        let wn = fg.class_of_name(WeightClassName::Wn);
        assert_eq!(w1, wm.add(wn));
        assert!(!w1.is_zero() && !wm.is_zero() && !wn.is_zero());
        assert_ne!(wm, wn);
    }

    #[test]
    fn halfspin_fundamental_group_is_order_two() {
        let d = RootDatum::build(4, Isogeny::HalfSpin).unwrap();
        let fg = d.fundamental_group();
        assert_eq!(fg.structure(), vec![2]);
        // chosen quotient: ω̄_n = 0
        assert!(fg.class_of_weight(4).unwrap().is_zero());
        assert_eq!(fg.class_of_weight(3).unwrap(), GroupClass(1));
        assert_eq!(fg.class_of_weight(1).unwrap(), GroupClass(1));
    }

    #[test]
    fn weight_classes_adjoint() {
        let d = RootDatum::build(8, Isogeny::Adjoint).unwrap();
        let fg = d.fundamental_group();
        // even intermediates die, odd intermediates carry ω̄_1
        assert!(fg.class_of_weight(2).unwrap().is_zero());
        assert_eq!(
            fg.class_of_weight(3).unwrap(),
            fg.class_of_name(WeightClassName::W1)
        );
        assert!(fg.class_of_weight(6).unwrap().is_zero());
        assert!(fg.class_of_weight(9).is_err());
    }

    #[test]
    fn d4_orbit_sizes() {
        let d = RootDatum::build(4, Isogeny::Adjoint).unwrap();
        let sizes: Vec<BigInt> = (1..=4).map(|i| d.weyl_orbit_size(i).unwrap().0).collect();
        assert_eq!(
            sizes,
            vec![
                BigInt::from(8),
                BigInt::from(24),
                BigInt::from(8),
                BigInt::from(8)
            ]
        );
    }

    #[test]
    fn d8_spin_orbit() {
        let d = RootDatum::build(8, Isogeny::Adjoint).unwrap();
        let (s, prov) = d.weyl_orbit_size(8).unwrap();
        assert_eq!(s, BigInt::from(128));
        assert_eq!(prov, OrbitProvenance::Enumerated);
        assert_eq!(s, d.orbit_size_closed_form(8).unwrap());
    }

    #[test]
    fn enumeration_matches_closed_forms_small_ranks() {
        for n in [4usize, 6, 8, 10, 12] {
            let d = RootDatum::build(n, Isogeny::Adjoint).unwrap();
            let (d1, _) = d.weyl_orbit_size(1).unwrap();
            assert_eq!(d1, BigInt::from(2 * n as u64));
            let (dm, _) = d.weyl_orbit_size(n - 1).unwrap();
            let (dn, _) = d.weyl_orbit_size(n).unwrap();
            assert_eq!(dm, BigInt::one() << (n - 1));
            assert_eq!(dn, dm);
        }
    }

    #[test]
    fn diagram_automorphism_symmetry() {
        // swapping ω_{n-1} and ω_n leaves orbit sizes alone
        for n in [4usize, 6, 8] {
            let d = RootDatum::build(n, Isogeny::Adjoint).unwrap();
            assert_eq!(
                d.weyl_orbit_size(n - 1).unwrap().0,
                d.weyl_orbit_size(n).unwrap().0
            );
        }
    }

    #[test]
    fn orbits_divide_weyl_group_order() {
        // |W| = 2^{n-1} n!
        for n in [4usize, 6] {
            let d = RootDatum::build(n, Isogeny::Adjoint).unwrap();
            let mut w = BigInt::one() << (n - 1);
            for k in 2..=n {
                w *= BigInt::from(k);
            }
            for i in 1..=n {
                let (s, _) = d.weyl_orbit_size(i).unwrap();
                assert!((&w % &s).is_zero(), "d_{i} does not divide |W| at n={n}");
            }
        }
    }

    #[test]
    fn orbit_closed_under_reflections() {
        let d = RootDatum::build(6, Isogeny::Adjoint).unwrap();
        for i in [1usize, 2, 5, 6] {
            let mut seen = BTreeSet::new();
            let mut queue = VecDeque::new();
            let start = d.weight2(i).to_vec();
            seen.insert(start.clone());
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for a in 1..=6 {
                    let w = reflect(&v, d.simple_root(a));
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            for v in &seen {
                for a in 1..=6 {
                    assert!(seen.contains(&reflect(v, d.simple_root(a))));
                }
            }
        }
    }

    #[test]
    fn large_rank_uses_closed_form() {
        let d = RootDatum::build(32, Isogeny::Adjoint).unwrap();
        let (s, prov) = d.weyl_orbit_size(31).unwrap();
        assert_eq!(prov, OrbitProvenance::ClosedForm);
        assert_eq!(s, BigInt::one() << 31);
        // middle weight at n=16 is too big to enumerate
        let d16 = RootDatum::build(16, Isogeny::Adjoint).unwrap();
        let (_, prov8) = d16.weyl_orbit_size(8).unwrap();
        assert_eq!(prov8, OrbitProvenance::ClosedForm);
        let (_, prov1) = d16.weyl_orbit_size(1).unwrap();
        assert_eq!(prov1, OrbitProvenance::Enumerated);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(8, 3), BigInt::from(56));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(binomial(32, 16), BigInt::from(601080390u64));
    }
}
