//! Free commutative polynomials over unbounded integers in the named
//! variables `x_a, x_b, x_c, x`, for split-side identity checks.
//!
//! No relations are imposed here: identities proved in this module are
//! identities of the free ring, prior to mapping into any quotient. Terms are
//! kept in a canonical graded-lex order so rendering is stable across runs.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Polynomial variables. `x` is reserved for the one-variable field-extension
/// computation where both `x_a` and `x_b` collapse to a single class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    A,
    B,
    C,
    X,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::A, Var::B, Var::C, Var::X];

    fn index(self) -> usize {
        match self {
            Var::A => 0,
            Var::B => 1,
            Var::C => 2,
            Var::X => 3,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A => write!(f, "x_a"),
            Var::B => write!(f, "x_b"),
            Var::C => write!(f, "x_c"),
            Var::X => write!(f, "x"),
        }
    }
}

/// Exponent vector over the four named variables.
///
/// Ordered by total degree first, then lexicographically with larger leading
/// exponents first, which reproduces the conventional way these expressions
/// are written (`x_a^2 x_b` before `x_a x_b^2` before the quartic term).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Self {
        let mut e = [0u32; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, &u32)> {
        Var::ALL.iter().copied().zip(self.0.iter())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u32; 4];
        for i in 0..4 {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.exponents() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Sparse polynomial with unbounded integer coefficients; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = IntPolynomial::zero();
        p.terms.insert(Monomial::var(v), BigInt::one());
        p
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = IntPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m, c) in self.terms() {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: &BigInt) -> IntPolynomial {
        if k.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = IntPolynomial::zero();
        for (m, c) in self.terms() {
            out.terms.insert(*m, k * c);
        }
        out
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `replacement` for `v`; a ring homomorphism.
    pub fn subst(&self, v: Var, replacement: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        let mut pow_cache: Vec<IntPolynomial> = alloc::vec![IntPolynomial::one()];
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            while pow_cache.len() <= e as usize {
                let next = pow_cache.last().unwrap().mul(replacement);
                pow_cache.push(next);
            }
            let mut rest = [0u32; 4];
            for (w, exp) in m.exponents() {
                if w != v {
                    rest[w.index()] = *exp;
                }
            }
            let base = IntPolynomial::monomial(Monomial(rest), c.clone());
            out = out.add(&base.mul(&pow_cache[e as usize]));
        }
        out
    }

    /// Minimum total degree over stored monomials; `None` on the zero
    /// polynomial.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Canonical rendering in graded-lex term order; stable across runs.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.total_degree() == 0 {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&abs.to_string());
                s.push('*');
                s.push_str(&m.to_string());
            }
        }
        s
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// First Chern class of the square of a line bundle with `c₁ = x`:
/// `1 − (1−x)² = 2x − x²`.
pub fn c1_square_bundle(v: Var) -> IntPolynomial {
    let x = IntPolynomial::var(v);
    x.scalar_mul(&BigInt::from(2)).sub(&x.mul(&x))
}

/// The class relation eliminating `x_c`: `x_c = x_a + x_b − x_a x_b`.
pub fn xc_relation() -> IntPolynomial {
    let xa = IntPolynomial::var(Var::A);
    let xb = IntPolynomial::var(Var::B);
    xa.add(&xb).sub(&xa.mul(&xb))
}

/// Outcome of one checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub statement: String,
    pub pass: bool,
}

/// Check the two displayed split-side expansions as exact polynomial
/// identities after eliminating `x_c`, plus the control that identity (2)
/// fails when `x_c` is left free.
pub fn verify_split_identities() -> Vec<IdentityCheck> {
    use alloc::format;
    let xa = IntPolynomial::var(Var::A);
    let xb = IntPolynomial::var(Var::B);
    let xc = IntPolynomial::var(Var::C);
    let rel = xc_relation();
    let csq = c1_square_bundle(Var::A).mul(&c1_square_bundle(Var::B));

    // (1) c1(ga^2)c1(gb^2) = xa^2 xb^2 + 2 xa xb xc - 2 xa^2 - 2 xb^2 + 2 xc^2
    let rhs1 = xa
        .pow(2)
        .mul(&xb.pow(2))
        .add(&xa.mul(&xb).mul(&xc).scalar_mul(&BigInt::from(2)))
        .sub(&xa.pow(2).scalar_mul(&BigInt::from(2)))
        .sub(&xb.pow(2).scalar_mul(&BigInt::from(2)))
        .add(&xc.pow(2).scalar_mul(&BigInt::from(2)));
    let pass1 = csq == rhs1.subst(Var::C, &rel);
    let mut checks = alloc::vec![IdentityCheck {
        id: "S1",
        statement: "c1(ga^2)c1(gb^2) expands to the quadratic-class form under the class relation"
            .to_string(),
        pass: pass1,
    }];

    // (2) 2^{c-2} c1(ga^2)c1(gb^2) + 2^{c-1}(xa^2 + xb^2 - xc^2)
    //     = 2^{c-1} xa^2 xb + 2^{c-1} xa xb^2 - 2^{c-2} xa^2 xb^2
    let mut pass2 = true;
    let mut first_fail = None;
    for c in 2u32..=8 {
        let p2cm2 = BigInt::one() << (c - 2);
        let p2cm1 = BigInt::one() << (c - 1);
        let lhs = csq
            .scalar_mul(&p2cm2)
            .add(&xa.pow(2).scalar_mul(&p2cm1))
            .add(&xb.pow(2).scalar_mul(&p2cm1))
            .sub(&xc.pow(2).scalar_mul(&p2cm1))
            .subst(Var::C, &rel);
        let rhs = xa
            .pow(2)
            .mul(&xb)
            .scalar_mul(&p2cm1)
            .add(&xa.mul(&xb.pow(2)).scalar_mul(&p2cm1))
            .sub(&xa.pow(2).mul(&xb.pow(2)).scalar_mul(&p2cm2));
        if lhs != rhs {
            pass2 = false;
            first_fail.get_or_insert(c);
        }
    }
    checks.push(IdentityCheck {
        id: "S2",
        statement: match first_fail {
            None => "cubic simplification holds coefficient-exactly for c in 2..=8".to_string(),
            Some(c) => format!("cubic simplification fails first at c = {c}"),
        },
        pass: pass2,
    });

    // (2) with x_c left free must fail: the class relation is required.
    let c = 2u32;
    let p2cm2 = BigInt::one() << (c - 2);
    let p2cm1 = BigInt::one() << (c - 1);
    let lhs_free = csq
        .scalar_mul(&p2cm2)
        .add(&xa.pow(2).scalar_mul(&p2cm1))
        .add(&xb.pow(2).scalar_mul(&p2cm1))
        .sub(&xc.pow(2).scalar_mul(&p2cm1));
    let rhs_free = xa
        .pow(2)
        .mul(&xb)
        .scalar_mul(&p2cm1)
        .add(&xa.mul(&xb.pow(2)).scalar_mul(&p2cm1))
        .sub(&xa.pow(2).mul(&xb.pow(2)).scalar_mul(&p2cm2));
    checks.push(IdentityCheck {
        id: "S3",
        statement: "without the class relation the two sides differ".to_string(),
        pass: lhs_free != rhs_free,
    });

    checks
}
