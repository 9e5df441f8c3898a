//! The twisted gamma-filtration of `𝔊` as a chain of integer lattices.
//!
//! Level `i` is spanned, together with the relation lattice, by all products
//! `∏_j C(2^{e_j}, n_j)·y_{t_j}^{n_j}` with `1 ≤ n_j ≤ 2^{e_j}` and
//! `Σ n_j ≥ i`, where each factor class `t_j` runs over the nonzero classes
//! of `Λ/T*` and `e_j` is the 2-adic index valuation attached to that class
//! by the profile. Since `y² = 2y` and the product of all three distinct `y`s
//! vanishes, every generator is a scalar multiple of one of the seven
//! square-free `y`-monomials; the enumeration works on those scalars.
//!
//! Levels are stored saturated: the relation lattice is always adjoined, so
//! subgroup computations in the quotient ring reduce to plain lattice
//! arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::gammaring::{Assignment, GammaRing, RingError, SigmaSlot};
use crate::lattice::{
    quotient_invariants, IntegerLattice, InvariantFactors, LatticeBuilder, LatticeError,
};
use crate::rootdata::{binomial, Isogeny, RootDatum, RootDatumError, WeightClassName};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileError {
    /// The valuations must be sorted: `a ≤ b ≤ c`.
    OrderViolated { a: u32, b: u32, c: u32 },
    /// The Brauer-group relation forces `c ≤ a + b`.
    BrauerViolated { a: u32, b: u32, c: u32 },
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::OrderViolated { a, b, c } => {
                write!(f, "indices must satisfy a <= b <= c, got ({a},{b},{c})")
            }
            ProfileError::BrauerViolated { a, b, c } => {
                write!(f, "indices must satisfy c <= a+b, got ({a},{b},{c})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationError {
    Ring(RingError),
    Lattice(LatticeError),
    Datum(RootDatumError),
    /// The generator lattice kept growing past the degree cap.
    CapUnstable { level: u32, cap: u32 },
    /// A product with non-power-of-two exponents escaped the lattice built
    /// from power-of-two exponents; this contradicts the valuation argument
    /// the enumeration relies on and is reported rather than silently fixed.
    ExponentRestrictionViolated { level: u32, cap: u32, detail: String },
}

impl fmt::Display for FiltrationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationError::Ring(e) => write!(f, "{e}"),
            FiltrationError::Lattice(e) => write!(f, "{e}"),
            FiltrationError::Datum(e) => write!(f, "{e}"),
            FiltrationError::CapUnstable { level, cap } => {
                write!(f, "gamma level {level} did not stabilize at degree cap {cap}")
            }
            FiltrationError::ExponentRestrictionViolated { level, cap, detail } => {
                write!(
                    f,
                    "power-of-two exponent restriction failed at level {level}, cap {cap}: {detail}"
                )
            }
        }
    }
}

impl From<RingError> for FiltrationError {
    fn from(e: RingError) -> Self {
        FiltrationError::Ring(e)
    }
}

impl From<LatticeError> for FiltrationError {
    fn from(e: LatticeError) -> Self {
        FiltrationError::Lattice(e)
    }
}

impl From<RootDatumError> for FiltrationError {
    fn from(e: RootDatumError) -> Self {
        FiltrationError::Datum(e)
    }
}

/// 2-adic valuations `(a, b, c)` of the three Tits-algebra indices, with the
/// assignment of `σ₁, σ₂, σ₁+σ₂` to weight classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TitsProfile {
    a: u32,
    b: u32,
    c: u32,
    pub assignment: Assignment,
}

impl TitsProfile {
    pub fn new(a: u32, b: u32, c: u32, assignment: Assignment) -> Result<Self, ProfileError> {
        if !(a <= b && b <= c) {
            return Err(ProfileError::OrderViolated { a, b, c });
        }
        if c > a + b {
            return Err(ProfileError::BrauerViolated { a, b, c });
        }
        Ok(TitsProfile { a, b, c, assignment })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn valuation(&self, slot: SigmaSlot) -> u32 {
        match slot {
            SigmaSlot::Sigma1 => self.a,
            SigmaSlot::Sigma2 => self.b,
            SigmaSlot::Sigma12 => self.c,
        }
    }

    /// `v₂` of the orbit size of the weight the slot is assigned to. The
    /// intermediate odd weights never lower this valuation (their orbit
    /// sizes carry strictly larger powers of two), so this is also the
    /// valuation of the effective relation coefficient.
    pub fn d_valuation(&self, ring: &GammaRing, slot: SigmaSlot) -> u32 {
        let name = self.assignment.weight_of(slot);
        let idx = match name {
            WeightClassName::W1 => 1,
            WeightClassName::WnMinus1 => ring.rank() - 1,
            WeightClassName::Wn => ring.rank(),
        };
        ring.orbit_sizes()
            .size(idx)
            .trailing_zeros()
            .expect("orbit sizes are positive") as u32
    }
}

impl fmt::Display for TitsProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})[{}]", self.a, self.b, self.c, self.assignment)
    }
}

/// One factor of a recorded generator: class slot, exponent `n`, and the
/// binomial coefficient `C(2^e, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRecord {
    pub slot: SigmaSlot,
    pub exponent: u32,
    pub binomial: BigInt,
}

/// A product that enlarged the level lattice during construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub degree: u32,
    pub factors: Vec<FactorRecord>,
    pub vector: Vec<BigInt>,
}

/// One level `γ^i` of the twisted filtration, stored saturated.
#[derive(Clone, Debug)]
pub struct FiltrationLevel {
    pub level: u32,
    pub lattice: IntegerLattice,
    /// Products that contributed a new lattice direction, in insertion order
    /// (ascending degree).
    pub generator_log: Vec<GeneratorRecord>,
    pub cap_used: u32,
    pub stabilized: bool,
}

/// Internal description of one nonzero class usable as a factor.
struct ClassSpec {
    slot: SigmaSlot,
    e: u32,
    mask: u8,
}

/// Square-free monomial vectors `∏_{t ∈ S} y_t` indexed by subset mask over
/// the (up to three) classes; the full triple product is zero.
struct MonomialTable {
    vectors: Vec<Vec<BigInt>>,
    zero_mask: u8,
}

impl MonomialTable {
    fn build(ring: &GammaRing, ys: &[Vec<BigInt>]) -> Self {
        let g = ring.group_order();
        let nmasks = 1usize << ys.len();
        let mut vectors = vec![Vec::new(); nmasks];
        let mut one = vec![BigInt::zero(); g];
        one[0] = BigInt::one();
        vectors[0] = one;
        for mask in 1..nmasks {
            let low = mask & (mask - 1);
            let bit = mask ^ low;
            let idx = bit.trailing_zeros() as usize;
            vectors[mask] = ring.convolve(&vectors[low], &ys[idx]);
        }
        let zero_mask = if ys.len() == 3 { 0b111 } else { u8::MAX };
        MonomialTable { vectors, zero_mask }
    }

    fn vector(&self, mask: u8, scalar: &BigInt) -> Vec<BigInt> {
        self.vectors[mask as usize]
            .iter()
            .map(|c| scalar * c)
            .collect()
    }
}

/// The order of `monomial + L` in `ℤ^g/L`: the least positive `s` with
/// `s·monomial ∈ L`. Finite whenever the relation lattice is adjoined.
fn monomial_index(lattice: &IntegerLattice, monomial: &[BigInt]) -> BigInt {
    let sum = lattice
        .sum(&IntegerLattice::from_generators(
            monomial.len(),
            &[monomial.to_vec()],
        ))
        .expect("equal ambient rank");
    let q = quotient_invariants(&sum, lattice).expect("lattice is a sublattice of its saturation");
    debug_assert_eq!(q.free_rank, 0);
    q.order().expect("finite cyclic quotient")
}

fn default_cap(level: u32, classes: &[ClassSpec]) -> u32 {
    let emax = classes.iter().map(|c| c.e).max().unwrap_or(0);
    level + 2 * emax + 4
}

/// Enumerate all factor multisets with total degree in `[min_deg, max_deg]`,
/// restricted (or not) to power-of-two exponents, invoking `visit` with the
/// subset mask of classes present, the accumulated scalar, the degree and the
/// factor list. Subtrees whose product vanishes (all three classes present)
/// or whose scalar already satisfies `prune` are skipped.
fn enumerate_products<F>(
    classes: &[ClassSpec],
    min_deg: u32,
    max_deg: u32,
    pow2_only: bool,
    zero_mask: u8,
    prune: &dyn Fn(u8, &BigInt) -> bool,
    visit: &mut F,
) where
    F: FnMut(u8, &BigInt, u32, &[(usize, u32)]),
{
    fn rec<F>(
        classes: &[ClassSpec],
        min_deg: u32,
        max_deg: u32,
        pow2_only: bool,
        zero_mask: u8,
        prune: &dyn Fn(u8, &BigInt) -> bool,
        visit: &mut F,
        factors: &mut Vec<(usize, u32)>,
        ci: usize,
        min_n: u32,
        mask: u8,
        scalar: &BigInt,
        deg: u32,
    ) where
        F: FnMut(u8, &BigInt, u32, &[(usize, u32)]),
    {
        if deg >= min_deg {
            visit(mask, scalar, deg, factors);
        }
        if deg >= max_deg {
            return;
        }
        for c in ci..classes.len() {
            let spec = &classes[c];
            let next_mask = mask | spec.mask;
            if next_mask == zero_mask {
                continue;
            }
            let start = if c == ci { min_n } else { 1 };
            let top = (1u64 << spec.e).min((max_deg - deg) as u64) as u32;
            let mut n = start;
            while n <= top {
                if !pow2_only || n.is_power_of_two() {
                    // C(2^e, n)·y^n = C(2^e, n)·2^{n-1}·y, and repeating a
                    // class already present costs one more factor of two.
                    let mut k = binomial(1u64 << spec.e, n as u64) << (n - 1);
                    if mask & spec.mask != 0 {
                        k <<= 1;
                    }
                    let next_scalar = scalar * &k;
                    if !prune(next_mask, &next_scalar) {
                        factors.push((c, n));
                        rec(
                            classes,
                            min_deg,
                            max_deg,
                            pow2_only,
                            zero_mask,
                            prune,
                            visit,
                            factors,
                            c,
                            n,
                            next_mask,
                            &next_scalar,
                            deg + n,
                        );
                        factors.pop();
                    }
                }
                n += 1;
            }
        }
    }

    let mut factors = Vec::new();
    rec(
        classes,
        min_deg,
        max_deg,
        pow2_only,
        zero_mask,
        prune,
        visit,
        &mut factors,
        0,
        1,
        0,
        &BigInt::one(),
        0,
    );
}

/// Core level computation over an explicit class list.
fn gamma_level_classes(
    ring: &GammaRing,
    classes: &[ClassSpec],
    ys: &[Vec<BigInt>],
    level: u32,
    cap: Option<u32>,
) -> Result<FiltrationLevel, FiltrationError> {
    let g = ring.group_order();
    if level == 0 {
        // empty product: the whole ring
        return Ok(FiltrationLevel {
            level: 0,
            lattice: IntegerLattice::full(g),
            generator_log: Vec::new(),
            cap_used: cap.unwrap_or_else(|| default_cap(0, classes)),
            stabilized: true,
        });
    }
    let cap = cap.unwrap_or_else(|| default_cap(level, classes));
    let table = MonomialTable::build(ring, ys);

    // Pass 1: power-of-two exponents only, collected and inserted in
    // ascending degree so the generator log reads like a derivation.
    let mut gens: Vec<(u32, u8, BigInt, Vec<(usize, u32)>)> = Vec::new();
    let never = |_: u8, _: &BigInt| false;
    enumerate_products(
        classes,
        level,
        cap + 2,
        true,
        table.zero_mask,
        &never,
        &mut |mask, scalar, deg, factors| {
            gens.push((deg, mask, scalar.clone(), factors.to_vec()));
        },
    );
    gens.sort_by(|x, y| (x.0, x.1, &x.2).cmp(&(y.0, y.1, &y.2)));

    let mut builder = LatticeBuilder::new(g);
    for col in ring.relation_lattice().basis_columns() {
        builder.insert(&col);
    }
    let mut log: Vec<GeneratorRecord> = Vec::new();
    let mut grew_past_cap = false;
    for (deg, mask, scalar, factors) in &gens {
        let vector = table.vector(*mask, scalar);
        debug_assert!(
            {
                let mut aug = BigInt::zero();
                for c in &vector {
                    aug += c;
                }
                aug.is_zero()
            },
            "filtration generator with nonzero augmentation"
        );
        if builder.insert(&vector) {
            if *deg > cap {
                grew_past_cap = true;
            }
            log.push(GeneratorRecord {
                degree: *deg,
                factors: factors
                    .iter()
                    .map(|(ci, n)| FactorRecord {
                        slot: classes[*ci].slot,
                        exponent: *n,
                        binomial: binomial(1u64 << classes[*ci].e, *n as u64),
                    })
                    .collect(),
                vector,
            });
        }
    }
    if grew_past_cap {
        return Err(FiltrationError::CapUnstable { level, cap });
    }
    let lattice = builder.build();

    // Pass 2: stream every product (unrestricted exponents) up to cap+2 and
    // require membership. Containment one way is trivial, so this single scan
    // certifies both the cap stabilization and the power-of-two restriction.
    let mut indices: Vec<BigInt> = Vec::with_capacity(table.vectors.len());
    for mask in 0..table.vectors.len() {
        if mask == 0 || mask as u8 == table.zero_mask {
            // the empty product never reaches the visitor at level >= 1, and
            // the full triple product is the zero vector
            indices.push(BigInt::one());
        } else {
            indices.push(monomial_index(&lattice, &table.vectors[mask]));
        }
    }
    // Prune once the scalar is divisible by every index it could still meet.
    let mut lcm_over: Vec<BigInt> = vec![BigInt::one(); indices.len()];
    for (mask, slot) in lcm_over.iter_mut().enumerate() {
        let mut l = BigInt::one();
        for (sup, idx) in indices.iter().enumerate() {
            if sup & mask == mask {
                l = l.lcm(idx);
            }
        }
        *slot = l;
    }
    let prune = |mask: u8, scalar: &BigInt| (scalar % &lcm_over[mask as usize]).is_zero();
    let mut violation: Option<(u32, String)> = None;
    enumerate_products(
        classes,
        level,
        cap + 2,
        false,
        table.zero_mask,
        &prune,
        &mut |mask, scalar, deg, factors| {
            if violation.is_some() {
                return;
            }
            if !(scalar % &indices[mask as usize]).is_zero() {
                violation = Some((deg, format!("factors {factors:?}, scalar {scalar}")));
            }
        },
    );
    if let Some((deg, detail)) = violation {
        if deg <= cap {
            return Err(FiltrationError::ExponentRestrictionViolated { level, cap, detail });
        }
        return Err(FiltrationError::CapUnstable { level, cap });
    }

    Ok(FiltrationLevel {
        level,
        lattice,
        generator_log: log,
        cap_used: cap,
        stabilized: true,
    })
}

fn adjoint_classes(
    ring: &GammaRing,
    profile: &TitsProfile,
) -> Result<(Vec<ClassSpec>, Vec<Vec<BigInt>>), FiltrationError> {
    if ring.isogeny() != Isogeny::Adjoint {
        return Err(RingError::AdjointOnly.into());
    }
    let mut classes = Vec::new();
    let mut ys = Vec::new();
    for (k, slot) in SigmaSlot::ALL.iter().enumerate() {
        classes.push(ClassSpec {
            slot: *slot,
            e: profile.valuation(*slot),
            mask: 1 << k,
        });
        ys.push(ring.y_of_slot(&profile.assignment, *slot));
    }
    Ok((classes, ys))
}

/// The lattice `γ^i` for an adjoint ring and profile.
pub fn gamma_level(
    ring: &GammaRing,
    profile: &TitsProfile,
    level: u32,
    cap: Option<u32>,
) -> Result<FiltrationLevel, FiltrationError> {
    let (classes, ys) = adjoint_classes(ring, profile)?;
    gamma_level_classes(ring, &classes, &ys, level, cap)
}

/// The lattice `γ^i` for a half-spin ring, whose single nonzero class carries
/// index valuation `a`.
pub fn gamma_level_halfspin(
    ring: &GammaRing,
    a: u32,
    level: u32,
    cap: Option<u32>,
) -> Result<FiltrationLevel, FiltrationError> {
    if ring.isogeny() != Isogeny::HalfSpin {
        return Err(RingError::RingMismatch.into());
    }
    let classes = vec![ClassSpec {
        slot: SigmaSlot::Sigma1,
        e: a,
        mask: 1,
    }];
    let ys = vec![ring.y_of_name(WeightClassName::W1)];
    gamma_level_classes(ring, &classes, &ys, level, cap)
}

/// Invariant factors of `γ^i/γ^{i+1}`.
pub fn graded_piece(
    ring: &GammaRing,
    profile: &TitsProfile,
    level: u32,
) -> Result<InvariantFactors, FiltrationError> {
    let hi = gamma_level(ring, profile, level, None)?;
    let lo = gamma_level(ring, profile, level + 1, None)?;
    assert!(
        hi.lattice.contains_lattice(&lo.lattice)?,
        "filtration nesting violated"
    );
    Ok(quotient_invariants(&hi.lattice, &lo.lattice)?)
}

/// Which reading of the case table's third column to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaReading {
    /// `ℤ/2` requires the strict inequality `a+b > c`; the printed special
    /// row for `(c, a, b) = (2, 1, 1)` is subsumed by the `a+b = c` row.
    Strict,
    /// The table as printed: special row included and the third-column
    /// condition read literally as `a+b < c`, which the profile invariant
    /// `c ≤ a+b` makes unsatisfiable.
    Literal,
}

impl fmt::Display for LemmaReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaReading::Strict => write!(f, "strict"),
            LemmaReading::Literal => write!(f, "literal"),
        }
    }
}

/// Case-table prediction for `γ^{2/3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaPrediction {
    /// Cyclic orders of the three predicted summands (1 = trivial).
    pub summand_orders: [u32; 3],
    pub factors: InvariantFactors,
    /// True when some case fell through the table (possible only under the
    /// literal reading).
    pub unmatched_case: bool,
}

fn predict_single(e: u32, v: u32) -> u32 {
    match e {
        0 => 2,
        1 => 4,
        _ if e < v => 2,
        _ => 1,
    }
}

/// The case-table prediction of `γ^{2/3}` from the index valuations and the
/// `v₂` of the relation coefficients (through the assignment).
pub fn predict_lemma(
    profile: &TitsProfile,
    d_valuations: (u32, u32, u32),
    reading: LemmaReading,
) -> LemmaPrediction {
    let (va, vb, vc) = d_valuations;
    let (a, b, c) = (profile.a(), profile.b(), profile.c());
    let ga = predict_single(a, va);
    let gb = predict_single(b, vb);
    let mut unmatched = false;
    let gc = match reading {
        LemmaReading::Strict => match c {
            0 => 2,
            1 => 4,
            _ if c < vc => {
                if a + b > c {
                    2
                } else {
                    1
                }
            }
            _ => 1,
        },
        LemmaReading::Literal => {
            if c == 0 {
                2
            } else if c == 1 {
                4
            } else if c == 2 && a == 1 && b == 1 {
                2
            } else if c < vc && a + b < c {
                2
            } else if c < vc && a + b == c {
                1
            } else if c >= vc {
                1
            } else {
                unmatched = true;
                1
            }
        }
    };
    let orders = [ga, gb, gc];
    let factors = InvariantFactors::from_cyclic_orders(
        &orders.iter().map(|o| BigInt::from(*o)).collect::<Vec<_>>(),
    );
    LemmaPrediction {
        summand_orders: orders,
        factors,
        unmatched_case: unmatched,
    }
}

/// `γ^{2/3}` of the half-spin ring at rank `n` with index valuation `a`.
pub fn hspin_graded(n: usize, a: u32) -> Result<InvariantFactors, FiltrationError> {
    let datum = RootDatum::build(n, Isogeny::HalfSpin)?;
    let ring = GammaRing::build(&datum);
    let hi = gamma_level_halfspin(&ring, a, 2, None)?;
    let lo = gamma_level_halfspin(&ring, a, 3, None)?;
    Ok(quotient_invariants(&hi.lattice, &lo.lattice)?)
}

/// The four-case table for the half-spin graded piece.
pub fn hspin_predicted(n: usize, a: u32) -> InvariantFactors {
    let v2n = (n as u64).trailing_zeros();
    let order = match a {
        0 => 2u32,
        1 => 4,
        _ if a <= v2n => 2,
        _ => 1,
    };
    InvariantFactors::from_cyclic_orders(&[BigInt::from(order)])
}

/// The half-spin graded piece computed the other way: take the adjoint
/// filtration at the everywhere-`a` profile and push it through the quotient
/// that kills `ω̄_n`, then adjoin the half-spin relation ideal.
pub fn hspin_graded_via_adjoint_quotient(
    n: usize,
    a: u32,
) -> Result<InvariantFactors, FiltrationError> {
    let adj = GammaRing::build(&RootDatum::build(n, Isogeny::Adjoint)?);
    let hs = GammaRing::build(&RootDatum::build(n, Isogeny::HalfSpin)?);
    let profile = TitsProfile::new(a, a, a, Assignment::default()).expect("valid profile");
    // basis order (1, e(w1), e(wn-1), e(wn)) ↦ (1, e(σ), e(σ), 1)
    let project = |v: &[BigInt]| -> Vec<BigInt> { vec![&v[0] + &v[3], &v[1] + &v[2]] };
    let mut levels = Vec::new();
    for i in [2u32, 3] {
        let lat = gamma_level(&adj, &profile, i, None)?.lattice;
        let mut gens: Vec<Vec<BigInt>> = lat.basis_columns().iter().map(|c| project(c)).collect();
        gens.extend(hs.relation_lattice().basis_columns());
        levels.push(IntegerLattice::from_generators(2, &gens));
    }
    Ok(quotient_invariants(&levels[0], &levels[1])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| big(*x)).collect()
    }

    fn d4_ring() -> GammaRing {
        GammaRing::build(&RootDatum::build(4, Isogeny::Adjoint).unwrap())
    }

    fn profile(a: u32, b: u32, c: u32) -> TitsProfile {
        TitsProfile::new(a, b, c, Assignment::default()).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(TitsProfile::new(1, 2, 2, Assignment::default()).is_ok());
        assert_eq!(
            TitsProfile::new(2, 1, 2, Assignment::default()).unwrap_err(),
            ProfileError::OrderViolated { a: 2, b: 1, c: 2 }
        );
        assert_eq!(
            TitsProfile::new(1, 1, 4, Assignment::default()).unwrap_err(),
            ProfileError::BrauerViolated { a: 1, b: 1, c: 4 }
        );
    }

    #[test]
    fn level_zero_is_whole_ring() {
        let ring = d4_ring();
        let l = gamma_level(&ring, &profile(1, 2, 2), 0, None).unwrap();
        assert_eq!(l.lattice, IntegerLattice::full(4));
        assert!(l.stabilized);
    }

    #[test]
    fn nesting_and_relation_containment() {
        let ring = d4_ring();
        let p = profile(1, 2, 2);
        let mut prev: Option<IntegerLattice> = None;
        for i in 0..=4 {
            let l = gamma_level(&ring, &p, i, None).unwrap();
            assert!(l
                .lattice
                .contains_lattice(ring.relation_lattice())
                .unwrap());
            if let Some(p) = prev {
                assert!(p.contains_lattice(&l.lattice).unwrap(), "level {i}");
            }
            prev = Some(l.lattice);
        }
    }

    #[test]
    fn d4_split_case_membership() {
        // profile (1,1,2): 4·y1y2 lies in γ³ but 4y1 and 4y2 do not
        let ring = d4_ring();
        let p = profile(1, 1, 2);
        let g3 = gamma_level(&ring, &p, 3, None).unwrap().lattice;
        let asg = Assignment::default();
        let y1 = ring.y_of_slot(&asg, SigmaSlot::Sigma1);
        let y2 = ring.y_of_slot(&asg, SigmaSlot::Sigma2);
        let y1y2 = ring.convolve(&y1, &y2);
        let scale =
            |v: &[BigInt], k: i64| -> Vec<BigInt> { v.iter().map(|c| c * big(k)).collect() };
        assert!(g3.contains(&scale(&y1y2, 4)).unwrap());
        assert!(!g3.contains(&scale(&y1, 4)).unwrap());
        assert!(!g3.contains(&scale(&y2, 4)).unwrap());
    }

    #[test]
    fn d4_graded_122() {
        let ring = d4_ring();
        let q = graded_piece(&ring, &profile(1, 2, 2), 2).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, bigvec(&[2, 2, 4]));
    }

    #[test]
    fn d4_graded_000() {
        let ring = d4_ring();
        let q = graded_piece(&ring, &profile(0, 0, 0), 2).unwrap();
        assert_eq!(q.torsion, bigvec(&[2, 2, 2]));
    }

    #[test]
    fn d4_graded_112_matches_direct_computation() {
        // by hand: γ² = <2y1, 2y2, 4yc>, γ³ = <8y1, 8y2, 8yc, 4y1y2>,
        // quotient Z/4 ⊕ Z/4
        let ring = d4_ring();
        let q = graded_piece(&ring, &profile(1, 1, 2), 2).unwrap();
        assert_eq!(q.torsion, bigvec(&[4, 4]));
    }

    #[test]
    fn predict_strict_rows() {
        let d = (3, 3, 3);
        let q122 = predict_lemma(&profile(1, 2, 2), d, LemmaReading::Strict);
        assert_eq!(q122.summand_orders, [4, 2, 2]);
        assert_eq!(q122.factors.torsion, bigvec(&[2, 2, 4]));
        let q000 = predict_lemma(&profile(0, 0, 0), d, LemmaReading::Strict);
        assert_eq!(q000.factors.torsion, bigvec(&[2, 2, 2]));
        // a+b = c kills the third summand
        let q112 = predict_lemma(&profile(1, 1, 2), d, LemmaReading::Strict);
        assert_eq!(q112.factors.torsion, bigvec(&[4, 4]));
        // beyond the relation valuation the summand is trivial
        let q333 = predict_lemma(&profile(3, 3, 3), d, LemmaReading::Strict);
        assert!(q333.factors.is_trivial());
    }

    #[test]
    fn predict_literal_rows() {
        let d = (3, 3, 3);
        // the printed special row fires
        let q112 = predict_lemma(&profile(1, 1, 2), d, LemmaReading::Literal);
        assert_eq!(q112.factors.torsion, bigvec(&[2, 4, 4]));
        assert!(!q112.unmatched_case);
        // a+b > c ≥ 2 falls through the printed table
        let q122 = predict_lemma(&profile(1, 2, 2), d, LemmaReading::Literal);
        assert_eq!(q122.factors.torsion, bigvec(&[2, 4]));
        assert!(q122.unmatched_case);
    }

    #[test]
    fn d_valuations_through_assignment() {
        let ring = GammaRing::build(&RootDatum::build(8, Isogeny::Adjoint).unwrap());
        let p = profile(1, 2, 2);
        assert_eq!(p.d_valuation(&ring, SigmaSlot::Sigma1), 4); // v2(16)
        assert_eq!(p.d_valuation(&ring, SigmaSlot::Sigma2), 7); // v2(128)
        assert_eq!(p.d_valuation(&ring, SigmaSlot::Sigma12), 7);
        let swapped = TitsProfile::new(
            1,
            2,
            2,
            Assignment::new(WeightClassName::WnMinus1, WeightClassName::W1).unwrap(),
        )
        .unwrap();
        assert_eq!(swapped.d_valuation(&ring, SigmaSlot::Sigma1), 7);
        assert_eq!(swapped.d_valuation(&ring, SigmaSlot::Sigma2), 4);
    }

    #[test]
    fn hspin_table_small() {
        for n in [4usize, 8] {
            let v2n = (n as u64).trailing_zeros();
            for a in 0..=v2n + 1 {
                let got = hspin_graded(n, a).unwrap();
                let want = hspin_predicted(n, a);
                assert_eq!(got, want, "n={n}, a={a}");
            }
        }
    }

    #[test]
    fn hspin_agrees_with_adjoint_quotient() {
        for a in 0..=3 {
            assert_eq!(
                hspin_graded(4, a).unwrap(),
                hspin_graded_via_adjoint_quotient(4, a).unwrap(),
                "a={a}"
            );
        }
    }

    #[test]
    fn gamma_level_rejects_wrong_isogeny() {
        let hs = GammaRing::build(&RootDatum::build(4, Isogeny::HalfSpin).unwrap());
        assert!(matches!(
            gamma_level(&hs, &profile(1, 2, 2), 2, None),
            Err(FiltrationError::Ring(RingError::AdjointOnly))
        ));
        let adj = d4_ring();
        assert!(matches!(
            gamma_level_halfspin(&adj, 1, 2, None),
            Err(FiltrationError::Ring(RingError::RingMismatch))
        ));
    }

    #[test]
    fn generator_log_is_auditable() {
        let ring = d4_ring();
        let l = gamma_level(&ring, &profile(1, 2, 2), 2, None).unwrap();
        assert!(!l.generator_log.is_empty());
        for rec in &l.generator_log {
            assert_eq!(
                rec.degree,
                rec.factors.iter().map(|f| f.exponent).sum::<u32>()
            );
            assert!(rec.degree >= 2);
            assert!(l.lattice.contains(&rec.vector).unwrap());
        }
    }

    #[test]
    fn index_monotonicity() {
        // raising an index never enlarges the level lattice
        let ring = d4_ring();
        let l1 = gamma_level(&ring, &profile(1, 1, 2), 2, None).unwrap();
        let l2 = gamma_level(&ring, &profile(1, 2, 2), 2, None).unwrap();
        assert!(l1.lattice.contains_lattice(&l2.lattice).unwrap());
    }
}
