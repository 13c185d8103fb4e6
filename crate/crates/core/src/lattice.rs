//! Rank-two lattices in `C` with generators in `Q(ρ)`, their finite quotients,
//! and canonical points on the quotient tori.
//!
//! A lattice is stored by the basis it was built with; equality is mutual
//! containment. Coordinates of a field element with respect to a basis are
//! obtained by solving a 2×2 rational system, so membership, index and coset
//! enumeration are integer linear algebra.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{format_rational, EisensteinNumber, Rational};

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix2x2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntegerMatrix2x2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntegerMatrix2x2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// Inverse of a unimodular matrix (adjugate times `det = ±1`).
    pub fn unimodular_inverse(&self) -> Option<Self> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        Some(Self::new(
            &self.d * &det,
            -&self.b * &det,
            -&self.c * &det,
            &self.a * &det,
        ))
    }

    fn swap_rows(&mut self) {
        std::mem::swap(&mut self.a, &mut self.c);
        std::mem::swap(&mut self.b, &mut self.d);
    }

    fn swap_cols(&mut self) {
        std::mem::swap(&mut self.a, &mut self.b);
        std::mem::swap(&mut self.c, &mut self.d);
    }

    /// row1 += k·row0
    fn add_row0_to_row1(&mut self, k: &BigInt) {
        self.c += k * &self.a;
        self.d += k * &self.b;
    }

    /// row0 += k·row1
    fn add_row1_to_row0(&mut self, k: &BigInt) {
        self.a += k * &self.c;
        self.b += k * &self.d;
    }

    /// col1 += k·col0
    fn add_col0_to_col1(&mut self, k: &BigInt) {
        self.b += k * &self.a;
        self.d += k * &self.c;
    }

    fn negate_row(&mut self, row: usize) {
        if row == 0 {
            self.a = -&self.a;
            self.b = -&self.b;
        } else {
            self.c = -&self.c;
            self.d = -&self.d;
        }
    }
}

impl fmt::Display for IntegerMatrix2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.a, self.b, self.c, self.d)
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D = diag(d1, d2)`, `d1 | d2`, `d1, d2 ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix2x2,
    pub d: IntegerMatrix2x2,
    pub v: IntegerMatrix2x2,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> (BigInt, BigInt) {
        (self.d.a.clone(), self.d.d.clone())
    }
}

pub fn smith_normal_form(m: &IntegerMatrix2x2) -> SmithForm {
    let mut d = m.clone();
    let mut u = IntegerMatrix2x2::identity();
    let mut v = IntegerMatrix2x2::identity();

    loop {
        // Move the smallest nonzero entry to the pivot position.
        let entries = [&d.a, &d.b, &d.c, &d.d];
        let Some((pos, _)) = entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .min_by_key(|(_, x)| x.abs())
        else {
            break;
        };
        if pos >= 2 {
            d.swap_rows();
            u.swap_rows();
        }
        if pos % 2 == 1 {
            d.swap_cols();
            v.swap_cols();
        }

        let q = -d.c.div_floor(&d.a);
        d.add_row0_to_row1(&q);
        u.add_row0_to_row1(&q);
        let q = -d.b.div_floor(&d.a);
        d.add_col0_to_col1(&q);
        v.add_col0_to_col1(&q);

        if !d.c.is_zero() || !d.b.is_zero() {
            continue;
        }
        if d.d.is_zero() || d.d.is_multiple_of(&d.a) {
            break;
        }
        // d1 ∤ d2: fold row 1 into row 0 so the gcd appears in the next pass.
        let one = BigInt::one();
        d.add_row1_to_row0(&one);
        u.add_row1_to_row0(&one);
    }

    if d.a.is_negative() {
        d.negate_row(0);
        u.negate_row(0);
    }
    if d.d.is_negative() {
        d.negate_row(1);
        u.negate_row(1);
    }
    SmithForm { u, d, v }
}

/// A rank-two lattice `{m·gen1 + n·gen2}` in `C`.
#[derive(Clone, Debug)]
pub struct Lattice {
    gen1: EisensteinNumber,
    gen2: EisensteinNumber,
    // Determinant of the basis in {1, ρ} coordinates; nonzero.
    det: Rational,
}

impl Lattice {
    pub fn new(gen1: EisensteinNumber, gen2: EisensteinNumber) -> Result<Self> {
        let det = gen1.re_part() * gen2.rho_part() - gen2.re_part() * gen1.rho_part();
        if det.is_zero() {
            return Err(Error::DegenerateLattice(gen1.to_string(), gen2.to_string()));
        }
        Ok(Lattice { gen1, gen2, det })
    }

    /// `Z[ρ]` with basis `(1, ρ)`.
    pub fn eisenstein() -> Self {
        Self::new(EisensteinNumber::one(), EisensteinNumber::rho()).expect("independent")
    }

    /// `Δn = Z[n, 1 - ρ]`.
    pub fn delta(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Δn needs n ≥ 1".into()));
        }
        Self::new(
            EisensteinNumber::from_rational(Rational::from_integer(n.into())),
            EisensteinNumber::from_ints(1, -1),
        )
    }

    /// `Z[n, a]` with `a = (1 - ρ)/3`, the Albanese target lattice.
    pub fn albanese(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Z[n, a] needs n ≥ 1".into()));
        }
        Self::new(
            EisensteinNumber::from_rational(Rational::from_integer(n.into())),
            EisensteinNumber::a(),
        )
    }

    pub fn gen1(&self) -> &EisensteinNumber {
        &self.gen1
    }

    pub fn gen2(&self) -> &EisensteinNumber {
        &self.gen2
    }

    /// The lattice `λ·L`.
    pub fn scaled(&self, lambda: &EisensteinNumber) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(lambda * &self.gen1, lambda * &self.gen2)
    }

    /// Rational `(s, t)` with `x = s·gen1 + t·gen2`.
    pub fn coordinates(&self, x: &EisensteinNumber) -> (Rational, Rational) {
        let (p1, q1) = (self.gen1.re_part(), self.gen1.rho_part());
        let (p2, q2) = (self.gen2.re_part(), self.gen2.rho_part());
        let (x0, x1) = (x.re_part(), x.rho_part());
        let s = (x0 * q2 - p2 * x1) / &self.det;
        let t = (p1 * x1 - x0 * q1) / &self.det;
        (s, t)
    }

    pub fn combination(&self, s: &Rational, t: &Rational) -> EisensteinNumber {
        &self.gen1.scale(s) + &self.gen2.scale(t)
    }

    /// Integer coordinates of `x` when `x` lies in the lattice.
    pub fn contains(&self, x: &EisensteinNumber) -> Option<(BigInt, BigInt)> {
        let (s, t) = self.coordinates(x);
        (s.is_integer() && t.is_integer()).then(|| (s.to_integer(), t.to_integer()))
    }

    pub fn contains_lattice(&self, sub: &Lattice) -> bool {
        self.contains(&sub.gen1).is_some() && self.contains(&sub.gen2).is_some()
    }

    /// Rows are the coordinates of `sub`'s generators in this basis.
    pub fn coordinate_matrix(&self, sub: &Lattice) -> Result<IntegerMatrix2x2> {
        match (self.contains(&sub.gen1), self.contains(&sub.gen2)) {
            (Some((a, b)), Some((c, d))) => Ok(IntegerMatrix2x2::new(a, b, c, d)),
            _ => Err(Error::NotSublattice {
                sub: sub.to_string(),
                sup: self.to_string(),
            }),
        }
    }

    pub fn reduce(&self, x: &EisensteinNumber) -> TorusPoint {
        let (s, t) = self.coordinates(x);
        let s = &s - s.floor();
        let t = &t - t.floor();
        TorusPoint {
            value: self.combination(&s, &t),
            s,
            t,
            lattice: self.clone(),
        }
    }

    /// Smallest `k ≥ 1` with `k·x ∈ L`. Every element of `Q(ρ)` is torsion
    /// modulo a full lattice.
    pub fn torsion_order(&self, x: &EisensteinNumber) -> BigInt {
        let (s, t) = self.coordinates(x);
        s.denom().lcm(t.denom())
    }

    fn same_basis(&self, other: &Lattice) -> bool {
        self.gen1 == other.gen1 && self.gen2 == other.gen2
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_basis(other) || (self.contains_lattice(other) && other.contains_lattice(self))
    }
}

impl Eq for Lattice {}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{}, {}]", self.gen1, self.gen2)
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.gen1.to_string(), self.gen2.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [g1, g2] = <[String; 2]>::deserialize(deserializer)?;
        let g1 = g1.parse().map_err(serde::de::Error::custom)?;
        let g2 = g2.parse().map_err(serde::de::Error::custom)?;
        Lattice::new(g1, g2).map_err(serde::de::Error::custom)
    }
}

pub fn is_sublattice(sub: &Lattice, sup: &Lattice) -> bool {
    sup.contains_lattice(sub)
}

/// `[sup : sub]`, the covering degree of `C/sub → C/sup`.
pub fn index(sub: &Lattice, sup: &Lattice) -> Result<BigInt> {
    Ok(sup.coordinate_matrix(sub)?.det().abs())
}

/// One representative in `sup` for each class of `sup / sub`.
///
/// If `U·M·V = D` is the Smith form of the coordinate matrix `M`, then
/// `f = V⁻¹·(sup basis)` is a basis of `sup` in which `sub` is spanned by
/// `d1·f1, d2·f2`, so `k1·f1 + k2·f2` with `0 ≤ ki < di` enumerates the quotient.
pub fn coset_representatives(sub: &Lattice, sup: &Lattice) -> Result<Vec<EisensteinNumber>> {
    let m = sup.coordinate_matrix(sub)?;
    let snf = smith_normal_form(&m);
    let vinv = snf.v.unimodular_inverse().expect("V is unimodular");
    let adapted = |row_a: &BigInt, row_b: &BigInt| {
        sup.combination(&Rational::from_integer(row_a.clone()), &Rational::from_integer(row_b.clone()))
    };
    let f1 = adapted(&vinv.a, &vinv.b);
    let f2 = adapted(&vinv.c, &vinv.d);
    let (d1, d2) = snf.invariant_factors();

    let mut reps = Vec::new();
    let mut k1 = BigInt::zero();
    while k1 < d1 {
        let mut k2 = BigInt::zero();
        while k2 < d2 {
            let x = &f1.scale(&Rational::from_integer(k1.clone()))
                + &f2.scale(&Rational::from_integer(k2.clone()));
            reps.push(x);
            k2 += 1;
        }
        k1 += 1;
    }
    Ok(reps)
}

/// A point of `C/L`, held as the representative with basis coordinates in `[0, 1)²`.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    value: EisensteinNumber,
    s: Rational,
    t: Rational,
    lattice: Lattice,
}

impl TorusPoint {
    pub fn value(&self) -> &EisensteinNumber {
        &self.value
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.s, &self.t)
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    pub fn add(&self, x: &EisensteinNumber) -> TorusPoint {
        self.lattice.reduce(&(&self.value + x))
    }
}

impl PartialEq for TorusPoint {
    fn eq(&self, other: &Self) -> bool {
        if self.lattice.same_basis(&other.lattice) {
            return self.s == other.s && self.t == other.t;
        }
        self.lattice == other.lattice && self.lattice.contains(&(&self.value - &other.value)).is_some()
    }
}

impl Eq for TorusPoint {}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.value)
    }
}

#[derive(Serialize, Deserialize)]
struct TorusPointRepr {
    lattice: Lattice,
    coords: [String; 2],
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TorusPointRepr {
            lattice: self.lattice.clone(),
            coords: [format_rational(&self.s), format_rational(&self.t)],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TorusPointRepr::deserialize(deserializer)?;
        let s = crate::field::parse_rational(&repr.coords[0]).map_err(serde::de::Error::custom)?;
        let t = crate::field::parse_rational(&repr.coords[1]).map_err(serde::de::Error::custom)?;
        let x = repr.lattice.combination(&s, &t);
        Ok(repr.lattice.reduce(&x))
    }
}
