//! Curves and affine automorphisms on a product of two elliptic curves
//! `C/Lw × C/Lz` with coordinates `[w, z]`.
//!
//! Curves are graphs `w = α·z + β` or vertical fibers `z = z0`, stored in
//! normal form. Intersections of two graphs reduce to the congruence
//! `(α1 - α2)·z ≡ β2 - β1 (mod Lw)` with `z` taken modulo `Lz`, whose solutions
//! form a coset of `Lz` inside `(α1 - α2)⁻¹·Lw`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{EisensteinNumber, Rational};
use crate::lattice::{coset_representatives, index, Lattice, TorusPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTorus {
    pub lattice_w: Lattice,
    pub lattice_z: Lattice,
}

impl ProductTorus {
    pub fn new(lattice_w: Lattice, lattice_z: Lattice) -> Self {
        ProductTorus { lattice_w, lattice_z }
    }

    /// `An = C/Z[ρ] × C/Δn`.
    pub fn a_n(n: u64) -> Result<Self> {
        Ok(Self::new(Lattice::eisenstein(), Lattice::delta(n)?))
    }

    pub fn point(&self, w: &EisensteinNumber, z: &EisensteinNumber) -> ProductPoint {
        ProductPoint {
            w: self.lattice_w.reduce(w),
            z: self.lattice_z.reduce(z),
        }
    }
}

/// Lexicographic key `(s_w, t_w, s_z, t_z)` of canonical coordinates.
pub type PointKey = (Rational, Rational, Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductPoint {
    pub w: TorusPoint,
    pub z: TorusPoint,
}

impl ProductPoint {
    pub fn canonical_key(&self) -> PointKey {
        let (sw, tw) = self.w.coords();
        let (sz, tz) = self.z.coords();
        (sw.clone(), tw.clone(), sz.clone(), tz.clone())
    }
}

impl fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.w.value(), self.z.value())
    }
}

impl Serialize for ProductPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.w.value().to_string(), self.z.value().to_string()].serialize(serializer)
    }
}

/// The curve `{[α·z + β, z]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCurve {
    slope: EisensteinNumber,
    offset: TorusPoint,
    ambient: ProductTorus,
}

impl GraphCurve {
    /// Fails unless `α·Lz ⊆ Lw`, i.e. the graph is well defined on the torus.
    pub fn new(slope: EisensteinNumber, offset: &EisensteinNumber, ambient: &ProductTorus) -> Result<Self> {
        let well_defined = [ambient.lattice_z.gen1(), ambient.lattice_z.gen2()]
            .into_iter()
            .all(|g| ambient.lattice_w.contains(&(&slope * g)).is_some());
        if !well_defined {
            return Err(Error::IllDefinedCurve {
                slope: slope.to_string(),
                from: ambient.lattice_z.to_string(),
                to: ambient.lattice_w.to_string(),
            });
        }
        Ok(GraphCurve {
            offset: ambient.lattice_w.reduce(offset),
            slope,
            ambient: ambient.clone(),
        })
    }

    pub fn slope(&self) -> &EisensteinNumber {
        &self.slope
    }

    pub fn offset(&self) -> &TorusPoint {
        &self.offset
    }

    pub fn ambient(&self) -> &ProductTorus {
        &self.ambient
    }

    /// `w` coordinate over a given `z`.
    pub fn w_at(&self, z: &EisensteinNumber) -> TorusPoint {
        self.ambient
            .lattice_w
            .reduce(&(&(&self.slope * z) + self.offset.value()))
    }

    pub fn contains(&self, p: &ProductPoint) -> bool {
        self.w_at(p.z.value()) == p.w
    }

    /// `[Lw : (α1 - α2)·Lz]`, the number of intersection points with a graph
    /// of a different slope.
    pub fn intersection_count(&self, other: &GraphCurve) -> Result<BigInt> {
        let diff = &self.slope - &other.slope;
        let image = self.ambient.lattice_z.scaled(&diff)?;
        index(&image, &self.ambient.lattice_w)
    }
}

impl fmt::Display for GraphCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({})z + {}, z]", self.slope, self.offset.value())
    }
}

/// The fiber `{[w, z0]}` of the projection to the second factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalFiber {
    z0: TorusPoint,
    ambient: ProductTorus,
}

impl VerticalFiber {
    pub fn new(z0: &EisensteinNumber, ambient: &ProductTorus) -> Self {
        VerticalFiber {
            z0: ambient.lattice_z.reduce(z0),
            ambient: ambient.clone(),
        }
    }

    pub fn z0(&self) -> &TorusPoint {
        &self.z0
    }

    pub fn contains(&self, p: &ProductPoint) -> bool {
        p.z == self.z0
    }
}

impl fmt::Display for VerticalFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[w, {}]", self.z0.value())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusCurve {
    Graph(GraphCurve),
    Fiber(VerticalFiber),
}

impl TorusCurve {
    pub fn ambient(&self) -> &ProductTorus {
        match self {
            TorusCurve::Graph(c) => &c.ambient,
            TorusCurve::Fiber(v) => &v.ambient,
        }
    }

    pub fn contains(&self, p: &ProductPoint) -> bool {
        match self {
            TorusCurve::Graph(c) => c.contains(p),
            TorusCurve::Fiber(v) => v.contains(p),
        }
    }

    pub fn intersect(&self, other: &TorusCurve) -> Result<IntersectionResult> {
        match (self, other) {
            (TorusCurve::Graph(a), TorusCurve::Graph(b)) => intersect_graphs(a, b),
            (TorusCurve::Graph(c), TorusCurve::Fiber(v)) | (TorusCurve::Fiber(v), TorusCurve::Graph(c)) => {
                Ok(IntersectionResult::Points(vec![intersect_graph_fiber(c, v)?]))
            }
            (TorusCurve::Fiber(a), TorusCurve::Fiber(b)) => {
                if a.ambient != b.ambient {
                    return Err(Error::AmbientMismatch);
                }
                Ok(if a.z0 == b.z0 {
                    IntersectionResult::Identical
                } else {
                    IntersectionResult::Empty
                })
            }
        }
    }

    /// Graphs of distinct slopes and graph/fiber pairs meet transversally.
    pub fn meets_transversally(&self, other: &TorusCurve) -> bool {
        match (self, other) {
            (TorusCurve::Graph(a), TorusCurve::Graph(b)) => a.slope != b.slope,
            (TorusCurve::Fiber(_), TorusCurve::Fiber(_)) => false,
            _ => true,
        }
    }
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusCurve::Graph(c) => c.fmt(f),
            TorusCurve::Fiber(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionResult {
    /// Canonically sorted, pairwise distinct points.
    Points(Vec<ProductPoint>),
    Identical,
    Empty,
}

impl IntersectionResult {
    pub fn points(&self) -> &[ProductPoint] {
        match self {
            IntersectionResult::Points(p) => p,
            _ => &[],
        }
    }
}

impl Serialize for IntersectionResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            result: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            count: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            points: Option<&'a [ProductPoint]>,
        }
        let repr = match self {
            IntersectionResult::Points(p) => Repr {
                result: "points",
                count: Some(p.len()),
                points: Some(p),
            },
            IntersectionResult::Identical => Repr {
                result: "identical",
                count: None,
                points: None,
            },
            IntersectionResult::Empty => Repr {
                result: "empty",
                count: None,
                points: None,
            },
        };
        repr.serialize(serializer)
    }
}

pub fn intersect_graphs(c1: &GraphCurve, c2: &GraphCurve) -> Result<IntersectionResult> {
    if c1.ambient != c2.ambient {
        return Err(Error::AmbientMismatch);
    }
    if c1.slope == c2.slope {
        return Ok(if c1.offset == c2.offset {
            IntersectionResult::Identical
        } else {
            IntersectionResult::Empty
        });
    }
    let ambient = &c1.ambient;
    let diff = &c1.slope - &c2.slope;
    let inv = diff.inverse()?;
    let particular = &inv * &(c2.offset.value() - c1.offset.value());
    // Solutions form particular + (diff⁻¹·Lw), taken modulo Lz.
    let solution_lattice = ambient.lattice_w.scaled(&inv)?;
    let reps = coset_representatives(&ambient.lattice_z, &solution_lattice)?;
    let mut points: Vec<ProductPoint> = reps
        .iter()
        .map(|r| {
            let z = &particular + r;
            ProductPoint {
                w: c1.w_at(&z),
                z: ambient.lattice_z.reduce(&z),
            }
        })
        .collect();
    points.sort_by_key(ProductPoint::canonical_key);
    Ok(IntersectionResult::Points(points))
}

pub fn intersect_graph_fiber(c: &GraphCurve, v: &VerticalFiber) -> Result<ProductPoint> {
    if c.ambient != v.ambient {
        return Err(Error::AmbientMismatch);
    }
    Ok(ProductPoint {
        w: c.w_at(v.z0.value()),
        z: v.z0.clone(),
    })
}

/// `[w, z] ↦ [λw·w + cw, λz·z + cz]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    lambda_w: EisensteinNumber,
    trans_w: EisensteinNumber,
    lambda_z: EisensteinNumber,
    trans_z: EisensteinNumber,
    ambient: ProductTorus,
}

fn preserves(lambda: &EisensteinNumber, lattice: &Lattice) -> bool {
    match lattice.scaled(lambda) {
        Ok(image) => image == *lattice,
        Err(_) => false,
    }
}

impl TorusAutomorphism {
    pub fn new(
        lambda_w: EisensteinNumber,
        trans_w: EisensteinNumber,
        lambda_z: EisensteinNumber,
        trans_z: EisensteinNumber,
        ambient: &ProductTorus,
    ) -> Result<Self> {
        if !preserves(&lambda_w, &ambient.lattice_w) {
            return Err(Error::NotAutomorphism(format!("w ↦ ({lambda_w})·w")));
        }
        if !preserves(&lambda_z, &ambient.lattice_z) {
            return Err(Error::NotAutomorphism(format!("z ↦ ({lambda_z})·z")));
        }
        Ok(TorusAutomorphism {
            lambda_w,
            trans_w,
            lambda_z,
            trans_z,
            ambient: ambient.clone(),
        })
    }

    pub fn identity(ambient: &ProductTorus) -> Self {
        let one = EisensteinNumber::one();
        let zero = EisensteinNumber::zero();
        Self::new(one.clone(), zero.clone(), one, zero, ambient).expect("identity")
    }

    /// `φ([w, z]) = [ρw, z + a]`.
    pub fn phi(ambient: &ProductTorus) -> Result<Self> {
        Self::new(
            EisensteinNumber::rho(),
            EisensteinNumber::zero(),
            EisensteinNumber::one(),
            EisensteinNumber::a(),
            ambient,
        )
    }

    pub fn lambda_w(&self) -> &EisensteinNumber {
        &self.lambda_w
    }

    pub fn lambda_z(&self) -> &EisensteinNumber {
        &self.lambda_z
    }

    pub fn trans_w(&self) -> &EisensteinNumber {
        &self.trans_w
    }

    pub fn trans_z(&self) -> &EisensteinNumber {
        &self.trans_z
    }

    pub fn ambient(&self) -> &ProductTorus {
        &self.ambient
    }

    pub fn apply_point(&self, p: &ProductPoint) -> ProductPoint {
        ProductPoint {
            w: self
                .ambient
                .lattice_w
                .reduce(&(&(&self.lambda_w * p.w.value()) + &self.trans_w)),
            z: self
                .ambient
                .lattice_z
                .reduce(&(&(&self.lambda_z * p.z.value()) + &self.trans_z)),
        }
    }

    pub fn apply_curve(&self, c: &GraphCurve) -> Result<GraphCurve> {
        if c.ambient != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let slope = &(&self.lambda_w * &c.slope) * &self.lambda_z.inverse()?;
        let offset = &(&(&self.lambda_w * c.offset.value()) + &self.trans_w) - &(&slope * &self.trans_z);
        GraphCurve::new(slope, &offset, &self.ambient)
    }

    pub fn apply_fiber(&self, v: &VerticalFiber) -> Result<VerticalFiber> {
        if v.ambient != self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let z0 = &(&self.lambda_z * v.z0.value()) + &self.trans_z;
        Ok(VerticalFiber::new(&z0, &self.ambient))
    }

    pub fn apply(&self, c: &TorusCurve) -> Result<TorusCurve> {
        Ok(match c {
            TorusCurve::Graph(g) => TorusCurve::Graph(self.apply_curve(g)?),
            TorusCurve::Fiber(v) => TorusCurve::Fiber(self.apply_fiber(v)?),
        })
    }

    /// `f^k` as `(λw^k, accumulated w-translation, λz^k, accumulated z-translation)`.
    fn power_data(&self, k: u64) -> (EisensteinNumber, EisensteinNumber, EisensteinNumber, EisensteinNumber) {
        let mut lw = EisensteinNumber::one();
        let mut cw = EisensteinNumber::zero();
        let mut lz = EisensteinNumber::one();
        let mut cz = EisensteinNumber::zero();
        for _ in 0..k {
            cw = &(&self.lambda_w * &cw) + &self.trans_w;
            lw = &self.lambda_w * &lw;
            cz = &(&self.lambda_z * &cz) + &self.trans_z;
            lz = &self.lambda_z * &lz;
        }
        (lw, cw, lz, cz)
    }

    pub fn power(&self, k: u64) -> TorusAutomorphism {
        let (lambda_w, trans_w, lambda_z, trans_z) = self.power_data(k);
        TorusAutomorphism {
            lambda_w,
            trans_w,
            lambda_z,
            trans_z,
            ambient: self.ambient.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda_w.is_one()
            && self.lambda_z.is_one()
            && self.ambient.lattice_w.contains(&self.trans_w).is_some()
            && self.ambient.lattice_z.contains(&self.trans_z).is_some()
    }

    /// Least `k ≤ max` with `f^k = id`.
    pub fn order_up_to(&self, max: u64) -> Result<u64> {
        if max == 0 {
            return Err(Error::InvalidParameter("max order must be ≥ 1".into()));
        }
        let mut g = self.clone();
        for k in 1..=max {
            if g.is_identity() {
                return Ok(k);
            }
            g = g.compose(self);
        }
        Err(Error::OrderExceedsMax(max.try_into().unwrap_or(u32::MAX)))
    }

    /// Exact order. The multipliers are roots of unity of orders `mw`, `mz`;
    /// with `m = lcm(mw, mz)`, `f^m` is a translation whose torsion order `t`
    /// bounds the order by `m·t`.
    pub fn order(&self) -> u64 {
        let m = unit_order(&self.lambda_w).lcm(&unit_order(&self.lambda_z));
        let fm = self.power(m);
        let t = self
            .ambient
            .lattice_w
            .torsion_order(&fm.trans_w)
            .lcm(&self.ambient.lattice_z.torsion_order(&fm.trans_z));
        let bound = (BigInt::from(m) * t).to_u64().expect("order fits in u64");
        self.order_up_to(bound).expect("order divides the bound")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TorusAutomorphism) -> TorusAutomorphism {
        TorusAutomorphism {
            lambda_w: &self.lambda_w * &other.lambda_w,
            trans_w: &(&self.lambda_w * &other.trans_w) + &self.trans_w,
            lambda_z: &self.lambda_z * &other.lambda_z,
            trans_z: &(&self.lambda_z * &other.trans_z) + &self.trans_z,
            ambient: self.ambient.clone(),
        }
    }

    /// Whether `f^k` has a fixed point. Each coordinate equation
    /// `(λ^k - 1)·x ≡ -c_k` is solvable when `λ^k ≠ 1`, and otherwise iff `c_k ∈ L`.
    pub fn power_has_fixed_point(&self, k: u64) -> bool {
        let g = self.power(k);
        let solvable = |lambda: &EisensteinNumber, c: &EisensteinNumber, l: &Lattice| {
            !lambda.is_one() || l.contains(c).is_some()
        };
        solvable(&g.lambda_w, &g.trans_w, &self.ambient.lattice_w)
            && solvable(&g.lambda_z, &g.trans_z, &self.ambient.lattice_z)
    }

    /// No nontrivial power has a fixed point.
    pub fn is_free(&self) -> bool {
        let order = self.order();
        (1..order).all(|k| !self.power_has_fixed_point(k))
    }

    /// Order of the z-translation in `C/Lz` when `λz = 1`.
    pub fn z_translation_order(&self) -> BigInt {
        self.ambient.lattice_z.torsion_order(&self.trans_z)
    }
}

fn unit_order(lambda: &EisensteinNumber) -> u64 {
    lambda
        .root_of_unity_order()
        .expect("lattice-preserving multiplier is a root of unity")
        .into()
}

pub fn automorphism_order(f: &TorusAutomorphism, max: u64) -> Result<u64> {
    f.order_up_to(max)
}

/// `[C, f(C), f²(C), …]` up to the first repetition.
pub fn orbit_of_curves(f: &TorusAutomorphism, c: &TorusCurve) -> Result<Vec<TorusCurve>> {
    let order = f.order();
    let mut orbit = vec![c.clone()];
    let mut current = f.apply(c)?;
    while current != *c {
        if orbit.len() as u64 >= order {
            return Err(Error::NotStable);
        }
        let next = f.apply(&current)?;
        orbit.push(current);
        current = next;
    }
    Ok(orbit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointOrbit {
    /// Lexicographically least member.
    pub representative: ProductPoint,
    /// Members in the order `p, f(p), f²(p), …` starting at the representative.
    pub members: Vec<ProductPoint>,
}

/// Partitions an `f`-stable point set into orbits, sorted by representative.
pub fn orbit_of_points(f: &TorusAutomorphism, pts: &[ProductPoint]) -> Result<Vec<PointOrbit>> {
    let by_key: BTreeMap<PointKey, usize> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.canonical_key(), i))
        .collect();
    let lookup = |p: &ProductPoint| -> Result<usize> {
        by_key
            .get(&p.canonical_key())
            .copied()
            .filter(|&j| pts[j] == *p)
            .ok_or(Error::NotStable)
    };

    let mut seen = vec![false; pts.len()];
    let mut orbits = Vec::new();
    for start in 0..pts.len() {
        if seen[start] {
            continue;
        }
        let mut members = vec![pts[start].clone()];
        seen[start] = true;
        let mut current = f.apply_point(&pts[start]);
        loop {
            let j = lookup(&current)?;
            if j == start {
                break;
            }
            if seen[j] {
                // f is a bijection, so landing on an earlier orbit means the set was not stable
                return Err(Error::NotStable);
            }
            seen[j] = true;
            members.push(current.clone());
            current = f.apply_point(&current);
        }
        let min = (0..members.len())
            .min_by_key(|&i| members[i].canonical_key())
            .expect("nonempty orbit");
        members.rotate_left(min);
        orbits.push(PointOrbit {
            representative: members[0].clone(),
            members,
        });
    }
    orbits.sort_by_key(|o| o.representative.canonical_key());
    Ok(orbits)
}
