//! The quotient ring `𝔊 = ℤ[Λ/T*]/I` where `I` is the reduction of the
//! characteristic-map kernel, generated by `d_i(1−e^{ω̄_i})` over all
//! fundamental weights with `d_i` the Weyl-orbit size.
//!
//! Elements are coefficient vectors over the group elements in a fixed
//! canonical order (identity first). Equality is equality of normal forms,
//! which are least non-negative residues against the column Hermite form of
//! the relation lattice.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::{quotient_invariants, IntegerLattice, InvariantFactors};
use crate::rootdata::{
    FundamentalGroup, GroupClass, Isogeny, OrbitSizes, RootDatum, WeightClassName,
};
use crate::splitpoly::{IntPolynomial, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    /// Elements of two different rings were combined.
    RingMismatch,
    /// Operation defined only for the adjoint ring.
    AdjointOnly,
    /// `q` is defined on polynomials in `x_a, x_b, x_c` only.
    UnknownVariable { var: Var },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::RingMismatch => write!(f, "elements belong to different rings"),
            RingError::AdjointOnly => write!(f, "operation requires the adjoint ring"),
            RingError::UnknownVariable { var } => {
                write!(f, "variable {var} has no image under q")
            }
        }
    }
}

/// Designation of the abstract generators `σ₁, σ₂` among the three nonzero
/// weight classes; `σ₁+σ₂` is forced. Orbit sizes and index valuations attach
/// to classes through this map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub sigma1: WeightClassName,
    pub sigma2: WeightClassName,
}

impl Default for Assignment {
    fn default() -> Self {
        Assignment {
            sigma1: WeightClassName::W1,
            sigma2: WeightClassName::WnMinus1,
        }
    }
}

/// The three generator slots of the Klein four-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SigmaSlot {
    Sigma1,
    Sigma2,
    Sigma12,
}

impl SigmaSlot {
    pub const ALL: [SigmaSlot; 3] = [SigmaSlot::Sigma1, SigmaSlot::Sigma2, SigmaSlot::Sigma12];
}

impl fmt::Display for SigmaSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaSlot::Sigma1 => write!(f, "sigma1"),
            SigmaSlot::Sigma2 => write!(f, "sigma2"),
            SigmaSlot::Sigma12 => write!(f, "sigma1+sigma2"),
        }
    }
}

impl Assignment {
    pub fn new(sigma1: WeightClassName, sigma2: WeightClassName) -> Option<Self> {
        if sigma1 == sigma2 {
            return None;
        }
        Some(Assignment { sigma1, sigma2 })
    }

    pub fn weight_of(&self, slot: SigmaSlot) -> WeightClassName {
        match slot {
            SigmaSlot::Sigma1 => self.sigma1,
            SigmaSlot::Sigma2 => self.sigma2,
            SigmaSlot::Sigma12 => WeightClassName::complement(self.sigma1, self.sigma2),
        }
    }

    /// All six bijections, in a fixed deterministic order.
    pub fn all() -> Vec<Assignment> {
        let mut out = Vec::new();
        for s1 in WeightClassName::ALL {
            for s2 in WeightClassName::ALL {
                if let Some(a) = Assignment::new(s1, s2) {
                    out.push(a);
                }
            }
        }
        out
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma1={},sigma2={}", self.sigma1, self.sigma2)
    }
}

/// Element of `𝔊` held in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    tag: (usize, Isogeny),
    nf: Vec<BigInt>,
}

impl RingElement {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.nf
    }
}

/// Extra relation found when the full ideal is strictly larger than the
/// three-relation presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraRelation {
    pub weight_index: usize,
    pub orbit_size: BigInt,
}

/// Result of checking the three-relation presentation against the full ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    /// Orbit sizes of the three designated weights, in weight order
    /// `(ω_1, ω_{n-1}, ω_n)`.
    pub relation_coefficients: [BigInt; 3],
    pub verified: bool,
    /// Intermediate weights whose relation is not implied by the three.
    pub extra_relations: Vec<ExtraRelation>,
}

/// `ℤ[Λ/T*]` modulo the reduced characteristic-map kernel.
#[derive(Clone, Debug)]
pub struct GammaRing {
    n: usize,
    isogeny: Isogeny,
    group: FundamentalGroup,
    elements: Vec<GroupClass>,
    orbit_sizes: OrbitSizes,
    relation: IntegerLattice,
    /// `mul_table[i][j]` = canonical index of `g_i + g_j`.
    mul_table: Vec<Vec<usize>>,
}

impl GammaRing {
    pub fn build(datum: &RootDatum) -> Self {
        let group = datum.fundamental_group();
        let elements = group.elements();
        let g = elements.len();
        let index_of = |c: GroupClass| elements.iter().position(|e| *e == c).unwrap();
        let mul_table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index_of(a.add(*b))).collect())
            .collect();

        let orbit_sizes = datum.orbit_sizes();
        // Ideal generators d_i(1 - e^{ω̄_i})·e^h over all weights and group
        // elements: the lattice closure of the ideal.
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for i in 1..=datum.rank() {
            let class = group.class_of_weight(i).expect("index in range");
            if class.is_zero() {
                continue;
            }
            let d = orbit_sizes.size(i).clone();
            let ci = index_of(class);
            for h in 0..g {
                let mut v = vec![BigInt::zero(); g];
                v[mul_table[0][h]] += &d;
                v[mul_table[ci][h]] -= &d;
                gens.push(v);
            }
        }
        let relation = IntegerLattice::from_generators(g, &gens);

        let ring = GammaRing {
            n: datum.rank(),
            isogeny: datum.isogeny(),
            group,
            elements,
            orbit_sizes,
            relation,
            mul_table,
        };
        ring.check_invariants();
        ring
    }

    /// Ideal closure and augmentation-zero checks on the relation lattice.
    fn check_invariants(&self) {
        for col in self.relation.basis_columns() {
            let mut aug = BigInt::zero();
            for c in &col {
                aug += c;
            }
            assert!(aug.is_zero(), "relation generator has nonzero augmentation");
            for h in 0..self.group_order() {
                let shifted = self.shift(&col, h);
                assert!(
                    self.relation.contains(&shifted).unwrap(),
                    "relation lattice is not an ideal"
                );
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn orbit_sizes(&self) -> &OrbitSizes {
        &self.orbit_sizes
    }

    pub fn relation_lattice(&self) -> &IntegerLattice {
        &self.relation
    }

    pub fn fundamental_group(&self) -> &FundamentalGroup {
        &self.group
    }

    /// Names of the canonical basis, identity first, nonzero classes in
    /// weight order.
    pub fn basis_labels(&self) -> Vec<String> {
        use alloc::string::ToString;
        match self.isogeny {
            Isogeny::Adjoint => vec![
                "1".to_string(),
                "e(w1)".to_string(),
                "e(wn-1)".to_string(),
                "e(wn)".to_string(),
            ],
            Isogeny::HalfSpin => vec!["1".to_string(), "e(sigma)".to_string()],
        }
    }

    fn tag(&self) -> (usize, Isogeny) {
        (self.n, self.isogeny)
    }

    fn index_of_class(&self, c: GroupClass) -> usize {
        self.elements.iter().position(|e| *e == c).unwrap()
    }

    /// Multiply a raw coefficient vector by `e^{g_h}`.
    fn shift(&self, v: &[BigInt], h: usize) -> Vec<BigInt> {
        let g = self.group_order();
        let mut out = vec![BigInt::zero(); g];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[self.mul_table[i][h]] += c;
            }
        }
        out
    }

    /// Group-ring convolution of raw coefficient vectors.
    pub fn convolve(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let g = self.group_order();
        let mut out = vec![BigInt::zero(); g];
        for i in 0..g {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..g {
                if b[j].is_zero() {
                    continue;
                }
                let k = self.mul_table[i][j];
                out[k] += &a[i] * &b[j];
            }
        }
        out
    }

    pub fn element(&self, coeffs: &[BigInt]) -> RingElement {
        assert_eq!(coeffs.len(), self.group_order(), "coefficient length");
        RingElement {
            tag: self.tag(),
            nf: self.relation.reduce(coeffs).unwrap(),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.element(&vec![BigInt::zero(); self.group_order()])
    }

    pub fn one(&self) -> RingElement {
        let mut v = vec![BigInt::zero(); self.group_order()];
        v[0] = BigInt::one();
        self.element(&v)
    }

    /// Raw vector of `y = 1 − e^{class}`; zero class gives the zero vector.
    pub fn y_vector(&self, class: GroupClass) -> Vec<BigInt> {
        let g = self.group_order();
        let mut v = vec![BigInt::zero(); g];
        if !class.is_zero() {
            v[0] = BigInt::one();
            v[self.index_of_class(class)] = -BigInt::one();
        }
        v
    }

    /// `y` for a named weight class.
    pub fn y_of_name(&self, name: WeightClassName) -> Vec<BigInt> {
        self.y_vector(self.group.class_of_name(name))
    }

    /// `y` for a sigma slot under an assignment.
    pub fn y_of_slot(&self, assignment: &Assignment, slot: SigmaSlot) -> Vec<BigInt> {
        self.y_of_name(assignment.weight_of(slot))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_tags(a, b)?;
        let v: Vec<BigInt> = a.nf.iter().zip(&b.nf).map(|(x, y)| x + y).collect();
        Ok(self.element(&v))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_tags(a, b)?;
        let v: Vec<BigInt> = a.nf.iter().zip(&b.nf).map(|(x, y)| x - y).collect();
        Ok(self.element(&v))
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &RingElement) -> Result<RingElement, RingError> {
        self.check_tag(a)?;
        let v: Vec<BigInt> = a.nf.iter().map(|x| k * x).collect();
        Ok(self.element(&v))
    }

    /// Normal form of the convolution product.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_tags(a, b)?;
        let v = self.convolve(&a.nf, &b.nf);
        Ok(self.element(&v))
    }

    /// Augmentation `ε(Σ a_g e^g) = Σ a_g`; a ring map to `ℤ` that kills the
    /// relation lattice.
    pub fn augmentation(&self, a: &RingElement) -> BigInt {
        let mut s = BigInt::zero();
        for c in &a.nf {
            s += c;
        }
        s
    }

    fn check_tag(&self, a: &RingElement) -> Result<(), RingError> {
        if a.tag != self.tag() {
            return Err(RingError::RingMismatch);
        }
        Ok(())
    }

    fn check_tags(&self, a: &RingElement, b: &RingElement) -> Result<(), RingError> {
        self.check_tag(a)?;
        self.check_tag(b)
    }

    /// Additive structure of `𝔊` as a finitely generated abelian group.
    pub fn additive_invariants(&self) -> InvariantFactors {
        quotient_invariants(&IntegerLattice::full(self.group_order()), &self.relation)
            .expect("relation lattice lives in the ambient space")
    }

    /// Lattice closure of the principal ideal `(k·y_class)`.
    fn principal_ideal(&self, k: &BigInt, class: GroupClass) -> Vec<Vec<BigInt>> {
        let y = self.y_vector(class);
        let scaled: Vec<BigInt> = y.iter().map(|c| k * c).collect();
        (0..self.group_order())
            .map(|h| self.shift(&scaled, h))
            .collect()
    }

    /// Compare the full relation ideal against the ideal generated by the
    /// three relations `d·y` attached to `ω_1, ω_{n-1}, ω_n` alone, with `d`
    /// the orbit size of that one weight. Intermediate weights can in
    /// principle shrink a coefficient; any that do are reported, not hidden.
    pub fn verify_presentation(&self) -> Result<PresentationReport, RingError> {
        if self.isogeny != Isogeny::Adjoint {
            return Err(RingError::AdjointOnly);
        }
        let n = self.n;
        let named = [
            (1usize, WeightClassName::W1),
            (n - 1, WeightClassName::WnMinus1),
            (n, WeightClassName::Wn),
        ];
        let mut gens = Vec::new();
        let mut coeffs = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (k, (i, name)) in named.iter().enumerate() {
            let d = self.orbit_sizes.size(*i).clone();
            gens.extend(self.principal_ideal(&d, self.group.class_of_name(*name)));
            coeffs[k] = d;
        }
        let three = IntegerLattice::from_generators(self.group_order(), &gens);
        // Subset of the full generator set, so one containment is automatic.
        debug_assert!(self.relation.contains_lattice(&three).unwrap());
        let verified = three.contains_lattice(&self.relation).unwrap();
        let mut extra = Vec::new();
        if !verified {
            for s in 2..=n - 2 {
                let class = self.group.class_of_weight(s).unwrap();
                if class.is_zero() {
                    continue;
                }
                let d = self.orbit_sizes.size(s).clone();
                let rel: Vec<BigInt> = self.y_vector(class).iter().map(|c| &d * c).collect();
                if !three.contains(&rel).unwrap() {
                    extra.push(ExtraRelation {
                        weight_index: s,
                        orbit_size: d,
                    });
                }
            }
        }
        Ok(PresentationReport {
            relation_coefficients: coeffs,
            verified,
            extra_relations: extra,
        })
    }

    /// The map `q` on split-side polynomials: `x_a ↦ y₁`, `x_b ↦ y₂`,
    /// `x_c ↦ y₁+y₂−y₁y₂`, reduced to normal form.
    pub fn q_image(
        &self,
        p: &IntPolynomial,
        assignment: &Assignment,
    ) -> Result<RingElement, RingError> {
        if self.isogeny != Isogeny::Adjoint {
            return Err(RingError::AdjointOnly);
        }
        let ya = self.y_of_slot(assignment, SigmaSlot::Sigma1);
        let yb = self.y_of_slot(assignment, SigmaSlot::Sigma2);
        let yc = self.y_of_slot(assignment, SigmaSlot::Sigma12);
        let g = self.group_order();
        let mut acc = vec![BigInt::zero(); g];
        for (mono, coeff) in p.terms() {
            if mono.exponent(Var::X) > 0 {
                return Err(RingError::UnknownVariable { var: Var::X });
            }
            let mut term = vec![BigInt::zero(); g];
            term[0] = BigInt::one();
            for (var, e) in mono.exponents() {
                if *e == 0 {
                    continue;
                }
                let base = match var {
                    Var::A => &ya,
                    Var::B => &yb,
                    Var::C => &yc,
                    Var::X => unreachable!("checked above"),
                };
                for _ in 0..*e {
                    term = self.convolve(&term, base);
                }
            }
            for (t, o) in term.iter().zip(acc.iter_mut()) {
                *o += coeff * t;
            }
        }
        Ok(self.element(&acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitpoly::IntPolynomial;
    use alloc::vec;

    fn d4_ring() -> GammaRing {
        GammaRing::build(&RootDatum::build(4, Isogeny::Adjoint).unwrap())
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn d4_additive_structure() {
        let ring = d4_ring();
        let inv = ring.additive_invariants();
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, vec![big(8), big(8), big(8)]);
    }

    #[test]
    fn halfspin_relation_coefficient() {
        // d = 2^{v2(n)+1}, including the non-power-of-two ranks where the
        // intermediate orbit sizes enter the gcd
        for (n, d) in [(4usize, 8i64), (8, 16), (12, 8), (16, 32)] {
            let ring = GammaRing::build(&RootDatum::build(n, Isogeny::HalfSpin).unwrap());
            let inv = ring.additive_invariants();
            assert_eq!(inv.free_rank, 1, "n={n}");
            assert_eq!(inv.torsion, vec![big(d)], "n={n}");
        }
    }

    #[test]
    fn y_squared_is_two_y() {
        let ring = d4_ring();
        for name in WeightClassName::ALL {
            let y = ring.element(&ring.y_of_name(name));
            let y2 = ring.mul(&y, &y).unwrap();
            let two_y = ring.scalar_mul(&big(2), &y).unwrap();
            assert_eq!(y2, two_y);
        }
    }

    #[test]
    fn yc_equals_y1_plus_y2_minus_y1y2() {
        let ring = d4_ring();
        let asg = Assignment::default();
        let y1 = ring.element(&ring.y_of_slot(&asg, SigmaSlot::Sigma1));
        let y2 = ring.element(&ring.y_of_slot(&asg, SigmaSlot::Sigma2));
        let yc = ring.element(&ring.y_of_slot(&asg, SigmaSlot::Sigma12));
        let y1y2 = ring.mul(&y1, &y2).unwrap();
        let sum = ring.sub(&ring.add(&y1, &y2).unwrap(), &y1y2).unwrap();
        assert_eq!(sum, yc);
        let yc2 = ring.mul(&yc, &yc).unwrap();
        assert_eq!(yc2, ring.scalar_mul(&big(2), &yc).unwrap());
    }

    #[test]
    fn one_is_identity() {
        let ring = d4_ring();
        let x = ring.element(&[big(3), big(-1), big(7), big(2)]);
        assert_eq!(ring.mul(&ring.one(), &x).unwrap(), x);
    }

    #[test]
    fn mismatched_rings_error() {
        let r4 = d4_ring();
        let r8 = GammaRing::build(&RootDatum::build(8, Isogeny::Adjoint).unwrap());
        let a = r4.one();
        let b = r8.one();
        assert_eq!(r4.mul(&a, &b).unwrap_err(), RingError::RingMismatch);
    }

    #[test]
    fn augmentation_kills_relations() {
        let ring = d4_ring();
        for col in ring.relation_lattice().basis_columns() {
            let e = ring.element(&col);
            assert!(ring.augmentation(&e).is_zero());
        }
    }

    #[test]
    fn presentation_d4_verified() {
        let ring = d4_ring();
        let rep = ring.verify_presentation().unwrap();
        assert!(rep.verified);
        assert_eq!(rep.relation_coefficients, [big(8), big(8), big(8)]);
        assert!(rep.extra_relations.is_empty());
        // 8·y1y2 lies in the relation ideal
        let asg = Assignment::default();
        let y1y2 = ring.convolve(
            &ring.y_of_slot(&asg, SigmaSlot::Sigma1),
            &ring.y_of_slot(&asg, SigmaSlot::Sigma2),
        );
        let v: Vec<BigInt> = y1y2.iter().map(|c| c * big(8)).collect();
        assert!(ring.relation_lattice().contains(&v).unwrap());
    }

    #[test]
    fn presentation_d8_verified() {
        let ring = GammaRing::build(&RootDatum::build(8, Isogeny::Adjoint).unwrap());
        let rep = ring.verify_presentation().unwrap();
        assert!(rep.verified);
        assert_eq!(rep.relation_coefficients, [big(16), big(128), big(128)]);
    }

    #[test]
    fn presentation_d12_verified_through_spin_relations() {
        // d_1 = 24 while d_3 = 2^3·C(12,3) = 1760; gcd(24, 1760) = 8, so the
        // intermediate weight does cut the coefficient on y1 below d_1 — but
        // the three-relation ideal also contains gcd(24, 2^{11}) = 8 via the
        // spin relations, so the presentation still verifies.
        let ring = GammaRing::build(&RootDatum::build(12, Isogeny::Adjoint).unwrap());
        let rep = ring.verify_presentation().unwrap();
        assert!(rep.verified);
        assert_eq!(rep.relation_coefficients, [big(24), big(2048), big(2048)]);
        assert!(rep.extra_relations.is_empty());
        // and the effective coefficient on y(w1) in the full ideal is 8
        let y1 = ring.y_of_name(WeightClassName::W1);
        let eight: Vec<BigInt> = y1.iter().map(|c| c * big(8)).collect();
        let four: Vec<BigInt> = y1.iter().map(|c| c * big(4)).collect();
        assert!(ring.relation_lattice().contains(&eight).unwrap());
        assert!(!ring.relation_lattice().contains(&four).unwrap());
    }

    #[test]
    fn presentation_rejects_halfspin() {
        let ring = GammaRing::build(&RootDatum::build(4, Isogeny::HalfSpin).unwrap());
        assert_eq!(
            ring.verify_presentation().unwrap_err(),
            RingError::AdjointOnly
        );
    }

    #[test]
    fn q_image_relations() {
        let ring = d4_ring();
        let asg = Assignment::default();
        // x_a^2 x_b ↦ y1^2 y2 = 2 y1 y2
        let p = IntPolynomial::var(Var::A)
            .mul(&IntPolynomial::var(Var::A))
            .mul(&IntPolynomial::var(Var::B));
        let img = ring.q_image(&p, &asg).unwrap();
        let y1y2 = ring.convolve(
            &ring.y_of_slot(&asg, SigmaSlot::Sigma1),
            &ring.y_of_slot(&asg, SigmaSlot::Sigma2),
        );
        let two_y1y2: Vec<BigInt> = y1y2.iter().map(|c| c * big(2)).collect();
        assert_eq!(img, ring.element(&two_y1y2));
        // constant 1 ↦ 1
        assert_eq!(
            ring.q_image(&IntPolynomial::constant(big(1)), &asg).unwrap(),
            ring.one()
        );
        // the single-variable x has no image
        let bad = IntPolynomial::var(Var::X);
        assert_eq!(
            ring.q_image(&bad, &asg).unwrap_err(),
            RingError::UnknownVariable { var: Var::X }
        );
    }

    #[test]
    fn q_image_cubic_combination() {
        // 2 x_a^2 x_b + 2 x_a x_b^2 - x_a^2 x_b^2 ↦ 4 y1y2 (the c = 2 case)
        let ring = d4_ring();
        let asg = Assignment::default();
        let xa = IntPolynomial::var(Var::A);
        let xb = IntPolynomial::var(Var::B);
        let p = xa
            .pow(2)
            .mul(&xb)
            .scalar_mul(&big(2))
            .add(&xa.mul(&xb.pow(2)).scalar_mul(&big(2)))
            .sub(&xa.pow(2).mul(&xb.pow(2)));
        let img = ring.q_image(&p, &asg).unwrap();
        let y1y2 = ring.convolve(
            &ring.y_of_slot(&asg, SigmaSlot::Sigma1),
            &ring.y_of_slot(&asg, SigmaSlot::Sigma2),
        );
        let four: Vec<BigInt> = y1y2.iter().map(|c| c * big(4)).collect();
        assert_eq!(img, ring.element(&four));
    }

    #[test]
    fn q_image_is_multiplicative() {
        let ring = d4_ring();
        let asg = Assignment::default();
        let p = IntPolynomial::var(Var::A).add(&IntPolynomial::var(Var::C).scalar_mul(&big(3)));
        let q = IntPolynomial::var(Var::B).pow(2).sub(&IntPolynomial::one());
        let lhs = ring.q_image(&p.mul(&q), &asg).unwrap();
        let rhs = ring
            .mul(
                &ring.q_image(&p, &asg).unwrap(),
                &ring.q_image(&q, &asg).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
