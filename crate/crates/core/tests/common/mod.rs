#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ballq::field::{rational, EisensteinNumber, Rational};
use ballq::lattice::{index, smith_normal_form, IntegerMatrix2x2, Lattice};
use ballq::surface::{blow_up, exceptional_name, CurveKind, SurfaceModel};
use ballq::torus::{GraphCurve, IntersectionResult, ProductPoint, ProductTorus};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = std::result::Result<(), TestCaseError>;

pub fn eisenstein() -> impl Strategy<Value = EisensteinNumber> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12)
        .prop_map(|(a, b, c, d)| EisensteinNumber::new(rational(a, b), rational(c, d)))
}

pub fn nonzero_eisenstein() -> impl Strategy<Value = EisensteinNumber> {
    eisenstein().prop_filter("nonzero", |x| !x.is_zero())
}

pub type Matrix = (i64, i64, i64, i64);

pub fn matrix() -> impl Strategy<Value = Matrix> {
    (-60i64..60, -60i64..60, -60i64..60, -60i64..60)
}

pub fn nonsingular() -> impl Strategy<Value = Matrix> {
    (-6i64..7, -6i64..7, -6i64..7, -6i64..7).prop_filter("det ≠ 0", |(a, b, c, d)| a * d - b * c != 0)
}

pub fn field_axioms((x, y, z): (EisensteinNumber, EisensteinNumber, EisensteinNumber)) -> Check {
    prop_assert_eq!(&x + &y, &y + &x);
    prop_assert_eq!(&x * &y, &y * &x);
    prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&x + &EisensteinNumber::zero(), x.clone());
    prop_assert_eq!(&x * &EisensteinNumber::one(), x.clone());
    prop_assert!((&x + &(-&x)).is_zero());
    if !x.is_zero() {
        prop_assert!((&x * &x.inverse().unwrap()).is_one());
        prop_assert_eq!(y.div(&x).unwrap(), &y * &x.inverse().unwrap());
    }
    Ok(())
}

pub fn norm_multiplicative((x, y): (EisensteinNumber, EisensteinNumber)) -> Check {
    prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    prop_assert_eq!(x.conjugate().norm(), x.norm());
    prop_assert_eq!((&x * &x.conjugate()).rho_part().clone(), rational(0, 1));
    Ok(())
}

pub fn smith_postconditions((a, b, c, d): Matrix) -> Check {
    let m = IntegerMatrix2x2::from_i64(a, b, c, d);
    let f = smith_normal_form(&m);
    prop_assert!(f.u.is_unimodular());
    prop_assert!(f.v.is_unimodular());
    prop_assert!(f.d.is_diagonal());
    prop_assert_eq!(f.u.mul(&m).mul(&f.v), f.d.clone());
    let (d1, d2) = f.invariant_factors();
    prop_assert!(!d1.is_negative() && !d2.is_negative());
    let divides = if d1.is_zero() { d2.is_zero() } else { (&d2 % &d1).is_zero() };
    prop_assert!(divides);
    prop_assert_eq!((&d1 * &d2).abs(), m.det().abs());
    Ok(())
}

/// The sublattice spanned by the rows of `m` in the basis of `l`.
fn sublattice(l: &Lattice, (a, b, c, d): Matrix) -> Lattice {
    let comb = |x: i64, y: i64| l.combination(&rational(x, 1), &rational(y, 1));
    Lattice::new(comb(a, b), comb(c, d)).unwrap()
}

fn det_abs((a, b, c, d): Matrix) -> BigInt {
    BigInt::from((a * d - b * c).abs())
}

pub fn lattice_chain() -> impl Strategy<Value = (EisensteinNumber, EisensteinNumber, Matrix, Matrix)> {
    (nonzero_eisenstein(), nonzero_eisenstein(), nonsingular(), nonsingular())
        .prop_filter("independent basis", |(g1, g2, _, _)| !g2.div(g1).unwrap().rho_part().is_zero())
}

pub fn index_multiplicative((g1, g2, m1, m2): (EisensteinNumber, EisensteinNumber, Matrix, Matrix)) -> Check {
    let l1 = Lattice::new(g1, g2).unwrap();
    let l2 = sublattice(&l1, m1);
    let l3 = sublattice(&l2, m2);
    let i21 = index(&l2, &l1).unwrap();
    let i32 = index(&l3, &l2).unwrap();
    prop_assert_eq!(index(&l3, &l1).unwrap(), &i32 * &i21);
    prop_assert_eq!(i21, det_abs(m1));
    prop_assert_eq!(i32, det_abs(m2));
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RandomModel {
    pub squares: Vec<i64>,
    pub pairs: Vec<i64>,
    pub mults: Vec<u32>,
    pub chi: i64,
    pub k2: i64,
}

pub fn random_model() -> impl Strategy<Value = RandomModel> {
    (
        prop::collection::vec(-9i64..9, 1..6),
        prop::collection::vec(0i64..6, 15),
        prop::collection::vec(0u32..4, 6),
        -5i64..20,
        -20i64..10,
    )
        .prop_map(|(squares, pairs, mults, chi, k2)| RandomModel { squares, pairs, mults, chi, k2 })
}

pub fn blow_up_deltas(r: RandomModel) -> Check {
    let names: Vec<String> = (0..r.squares.len()).map(|i| format!("C{i}")).collect();
    let mut s = SurfaceModel::new(r.chi, r.k2);
    for (name, sq) in names.iter().zip(&r.squares) {
        s.add_curve(name, *sq, CurveKind::SmoothElliptic);
    }
    let mut next = r.pairs.iter();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            s.set_intersection(&names[i], &names[j], *next.next().unwrap()).unwrap();
        }
    }
    let mult: BTreeMap<String, u32> = names.iter().cloned().zip(r.mults.iter().copied()).collect();
    s.mark_point("p", mult.clone(), true).unwrap();

    let b = blow_up(&s, "p").unwrap();
    prop_assert_eq!(b.chi_top, r.chi + 1);
    prop_assert_eq!(b.k2, r.k2 - 1);
    prop_assert!(b.point("p").is_err());
    let exc = exceptional_name("p");
    prop_assert_eq!(b.intersection(&exc, &exc).unwrap(), -1);
    for x in &names {
        let mx = i64::from(mult[x]);
        prop_assert_eq!(b.intersection(&exc, x).unwrap(), mx);
        for y in &names {
            let my = i64::from(mult[y]);
            prop_assert_eq!(b.intersection(x, y).unwrap(), s.intersection(x, y).unwrap() - mx * my);
        }
    }
    Ok(())
}

pub fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> Check) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

/// Runs every property suite with `cases` cases each.
pub fn property_suite(cases: u32) -> Result<(), String> {
    run(cases, (eisenstein(), eisenstein(), eisenstein()), field_axioms)?;
    run(cases, (eisenstein(), eisenstein()), norm_multiplicative)?;
    run(cases, matrix(), smith_postconditions)?;
    run(cases, lattice_chain(), index_multiplicative)?;
    run(cases, random_model(), blow_up_deltas)
}

/// `x ∈ Z[ρ]`.
fn in_eisenstein_integers(x: &EisensteinNumber) -> bool {
    x.re_part().is_integer() && x.rho_part().is_integer()
}

/// Coordinates of `x` in the basis `(n, 1 - ρ)` of `Δn`.
fn delta_coordinates(n: i64, x: &EisensteinNumber) -> (Rational, Rational) {
    let t = -x.rho_part().clone();
    let s = (x.re_part() + x.rho_part()) / rational(n, 1);
    (s, t)
}

fn in_delta(n: i64, x: &EisensteinNumber) -> bool {
    let (s, t) = delta_coordinates(n, x);
    s.is_integer() && t.is_integer()
}

/// A graph `w = slope·z + offset` on `C/Z[ρ] × C/Δn`.
#[derive(Clone, Debug)]
pub struct GridCurve {
    pub slope: EisensteinNumber,
    pub offset: EisensteinNumber,
}

#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub n: i64,
    pub first: GridCurve,
    pub second: GridCurve,
}

fn small_slope() -> impl Strategy<Value = EisensteinNumber> {
    (-2i64..3, -2i64..3).prop_map(|(a, b)| EisensteinNumber::from_ints(a, b))
}

fn small_offset() -> impl Strategy<Value = EisensteinNumber> {
    (prop::sample::select(vec![1i64, 2, 3]), -3i64..4, -3i64..4)
        .prop_map(|(q, a, b)| EisensteinNumber::new(rational(a, q), rational(b, q)))
}

pub fn oracle_instance() -> impl Strategy<Value = OracleInstance> {
    (1i64..4, small_slope(), small_offset(), small_slope(), small_offset()).prop_map(|(n, s1, o1, s2, o2)| {
        OracleInstance {
            n,
            first: GridCurve { slope: s1, offset: o1 },
            second: GridCurve { slope: s2, offset: o2 },
        }
    })
}

/// Common denominator `D` such that every intersection point has
/// `Δn`-coordinates in `(1/D)Z`.
fn grid_denominator(inst: &OracleInstance) -> i64 {
    let diff = &inst.first.slope - &inst.second.slope;
    let norm = if diff.is_zero() { 1 } else { diff.norm().to_integer().to_i64().unwrap() };
    let offsets = &inst.first.offset - &inst.second.offset;
    let q = offsets.re_part().denom().lcm(offsets.rho_part().denom()).to_i64().unwrap();
    inst.n * norm * q
}

fn to_int(q: &Rational) -> i64 {
    assert!(q.is_integer());
    q.to_integer().to_i64().unwrap()
}

/// Grid cells `(i, j)`, `z = (i/D)·n + (j/D)·(1 - ρ)`, where the two graphs
/// agree. Uses machine integers only: with `Δα = p + qρ` and the offset
/// difference `(u + vρ)/Q`, the graphs agree at `z` iff `Δα·z + (u + vρ)/Q`
/// has integral `1` and `ρ` parts.
pub fn grid_oracle(inst: &OracleInstance) -> (i64, BTreeSet<(i64, i64)>) {
    let d = grid_denominator(inst);
    let diff = &inst.first.slope - &inst.second.slope;
    let (p, q) = (to_int(diff.re_part()), to_int(diff.rho_part()));
    let off = &inst.first.offset - &inst.second.offset;
    let den = off.re_part().denom().lcm(off.rho_part().denom()).to_i64().unwrap();
    let (u, v) = (to_int(&(off.re_part() * rational(den, 1))), to_int(&(off.rho_part() * rational(den, 1))));
    let modulus = d * den;
    let mut hits = BTreeSet::new();
    for i in 0..d {
        for j in 0..d {
            // D·z = (i·n + j) - jρ
            let (zr, zp) = (i * inst.n + j, -j);
            // (p + qρ)(zr + zp·ρ) with ρ² = -1 - ρ
            let re = p * zr - q * zp;
            let rho = p * zp + q * zr - q * zp;
            if (re * den + u * d) % modulus == 0 && (rho * den + v * d) % modulus == 0 {
                hits.insert((i, j));
            }
        }
    }
    (d, hits)
}

pub enum OracleOutcome {
    Cells(BTreeSet<(i64, i64)>),
    Identical,
    Empty,
}

/// Runs the library solver and maps its answer onto the oracle's grid.
pub fn solver_on_grid(inst: &OracleInstance, d: i64) -> Result<OracleOutcome, String> {
    let amb = ProductTorus::a_n(inst.n as u64).map_err(|e| e.to_string())?;
    let c1 = GraphCurve::new(inst.first.slope.clone(), &inst.first.offset, &amb).map_err(|e| e.to_string())?;
    let c2 = GraphCurve::new(inst.second.slope.clone(), &inst.second.offset, &amb).map_err(|e| e.to_string())?;
    match ballq::torus::intersect_graphs(&c1, &c2).map_err(|e| e.to_string())? {
        IntersectionResult::Identical => Ok(OracleOutcome::Identical),
        IntersectionResult::Empty => Ok(OracleOutcome::Empty),
        IntersectionResult::Points(pts) => {
            let mut cells = BTreeSet::new();
            for p in &pts {
                let (s, t) = delta_coordinates(inst.n, p.z.value());
                let (s, t) = (s * rational(d, 1), t * rational(d, 1));
                if !s.is_integer() || !t.is_integer() {
                    return Err(format!("solver point {p} is off the grid"));
                }
                let on_first = &(&inst.first.slope * p.z.value()) + &inst.first.offset;
                if !in_eisenstein_integers(&(&on_first - p.w.value())) {
                    return Err(format!("solver point {p} is not on the first curve"));
                }
                let cell = (s.to_integer().to_i64().unwrap().rem_euclid(d), t.to_integer().to_i64().unwrap().rem_euclid(d));
                cells.insert(cell);
            }
            if cells.len() != pts.len() {
                return Err("solver returned repeated points".into());
            }
            Ok(OracleOutcome::Cells(cells))
        }
    }
}

/// Solver and grid oracle agree on one instance.
pub fn oracle_agrees(inst: &OracleInstance) -> Result<(), String> {
    let (d, hits) = grid_oracle(inst);
    let all = (d * d) as usize;
    match solver_on_grid(inst, d)? {
        OracleOutcome::Identical if hits.len() == all => Ok(()),
        OracleOutcome::Empty if hits.is_empty() => Ok(()),
        OracleOutcome::Cells(cells) if cells == hits => Ok(()),
        OracleOutcome::Identical => Err(format!("{inst:?}: solver says identical, oracle finds {} of {all}", hits.len())),
        OracleOutcome::Empty => Err(format!("{inst:?}: solver says empty, oracle finds {}", hits.len())),
        OracleOutcome::Cells(cells) => Err(format!("{inst:?}: solver {cells:?} vs oracle {hits:?}")),
    }
}

/// Runs the grid oracle on `cases` random instances.
pub fn oracle_suite(cases: u32) -> Result<(), String> {
    run(cases, oracle_instance(), |inst| oracle_agrees(&inst).map_err(TestCaseError::fail))
}

/// `E_i ∩ E_j` equals `{[2/3 + la, 2/3 + la + m] : 0 ≤ l < 3, 0 ≤ m < n}`,
/// checked by matching each solver point to exactly one closed-form point.
pub fn closed_form_matches(n: i64, pts: &[ProductPoint]) -> Result<(), String> {
    if pts.len() != (3 * n) as usize {
        return Err(format!("{} points, expected {}", pts.len(), 3 * n));
    }
    let a = EisensteinNumber::new(rational(1, 3), rational(-1, 3));
    let closed: Vec<(EisensteinNumber, EisensteinNumber)> = (0..3)
        .flat_map(|l| {
            let w = &EisensteinNumber::from_rational(rational(2, 3)) + &a.scale(&rational(l, 1));
            (0..n).map(move |m| (w.clone(), &w + &EisensteinNumber::from_ints(m, 0)))
        })
        .collect();
    let mut used = vec![false; closed.len()];
    for p in pts {
        let matches: Vec<usize> = closed
            .iter()
            .enumerate()
            .filter(|(_, (w, z))| {
                in_eisenstein_integers(&(p.w.value() - w)) && in_delta(n, &(p.z.value() - z))
            })
            .map(|(i, _)| i)
            .collect();
        match matches.as_slice() {
            [i] if !used[*i] => used[*i] = true,
            _ => return Err(format!("point {p} matches closed-form entries {matches:?}")),
        }
    }
    Ok(())
}
