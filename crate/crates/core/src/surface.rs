//! Numerical intersection calculus on smooth projective surfaces.
//!
//! A [`SurfaceModel`] carries the Euler number, `K²`, a symmetric table of
//! intersection numbers between named curves and a set of marked points with
//! the multiplicity of each curve there. Étale quotients and point blow-ups
//! act on that data; log-Chern numbers and the Bogomolov–Miyaoka–Yau
//! comparison are read off it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{format_rational, integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothKind {
    Elliptic,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CurveKind {
    SmoothElliptic,
    SmoothRational,
    /// Singular curve whose normalization is of kind `resolves_to`; lists the
    /// marked singular points with their multiplicities.
    Singular {
        resolves_to: SmoothKind,
        singular_points: BTreeMap<String, u32>,
    },
}

impl CurveKind {
    pub fn smooth(kind: SmoothKind) -> Self {
        match kind {
            SmoothKind::Elliptic => CurveKind::SmoothElliptic,
            SmoothKind::Rational => CurveKind::SmoothRational,
        }
    }

    fn smooth_kind(&self) -> Option<SmoothKind> {
        match self {
            CurveKind::SmoothElliptic => Some(SmoothKind::Elliptic),
            CurveKind::SmoothRational => Some(SmoothKind::Rational),
            CurveKind::Singular { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub self_int: i64,
    pub kind: CurveKind,
    /// Intersection numbers with other curves; absent entries are zero.
    pub pairwise_int: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedPoint {
    /// Multiplicity of each curve through the point; absent entries are zero.
    pub multiplicities: BTreeMap<String, u32>,
    /// Branches through the point have pairwise distinct tangents.
    pub ordinary: bool,
}

impl MarkedPoint {
    pub fn multiplicity(&self, curve: &str) -> u32 {
        self.multiplicities.get(curve).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceModel {
    pub chi_top: i64,
    pub k2: i64,
    curves: BTreeMap<String, CurveRecord>,
    points: BTreeMap<String, MarkedPoint>,
}

impl SurfaceModel {
    pub fn new(chi_top: i64, k2: i64) -> Self {
        SurfaceModel {
            chi_top,
            k2,
            curves: BTreeMap::new(),
            points: BTreeMap::new(),
        }
    }

    pub fn add_curve(&mut self, name: &str, self_int: i64, kind: CurveKind) {
        self.curves.insert(
            name.to_string(),
            CurveRecord {
                self_int,
                kind,
                pairwise_int: BTreeMap::new(),
            },
        );
    }

    /// Sets `C·C'` symmetrically. Setting a curve against itself sets `C²`.
    pub fn set_intersection(&mut self, a: &str, b: &str, value: i64) -> Result<()> {
        for name in [a, b] {
            if !self.curves.contains_key(name) {
                return Err(Error::UnknownCurve(name.to_string()));
            }
        }
        if a == b {
            self.curves.get_mut(a).expect("checked").self_int = value;
            return Ok(());
        }
        for (x, y) in [(a, b), (b, a)] {
            let row = &mut self.curves.get_mut(x).expect("checked").pairwise_int;
            if value == 0 {
                row.remove(y);
            } else {
                row.insert(y.to_string(), value);
            }
        }
        Ok(())
    }

    pub fn intersection(&self, a: &str, b: &str) -> Result<i64> {
        let rec = self.curve(a)?;
        if a == b {
            return Ok(rec.self_int);
        }
        self.curve(b)?;
        Ok(rec.pairwise_int.get(b).copied().unwrap_or(0))
    }

    pub fn mark_point(&mut self, name: &str, multiplicities: BTreeMap<String, u32>, ordinary: bool) -> Result<()> {
        if let Some(c) = multiplicities.keys().find(|c| !self.curves.contains_key(*c)) {
            return Err(Error::UnknownCurve(c.clone()));
        }
        let multiplicities = multiplicities.into_iter().filter(|(_, m)| *m > 0).collect();
        self.points.insert(name.to_string(), MarkedPoint { multiplicities, ordinary });
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Result<&CurveRecord> {
        self.curves.get(name).ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn point(&self, name: &str) -> Result<&MarkedPoint> {
        self.points.get(name).ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn curves(&self) -> impl Iterator<Item = (&String, &CurveRecord)> {
        self.curves.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = (&String, &MarkedPoint)> {
        self.points.iter()
    }

    pub fn curve_names(&self) -> Vec<String> {
        self.curves.keys().cloned().collect()
    }

    pub fn point_names(&self) -> Vec<String> {
        self.points.keys().cloned().collect()
    }

    /// Intersection data symmetric and multiplicities referencing known curves.
    pub fn is_consistent(&self) -> bool {
        let symmetric = self.curves.iter().all(|(a, rec)| {
            rec.pairwise_int.iter().all(|(b, v)| {
                self.curves
                    .get(b)
                    .and_then(|other| other.pairwise_int.get(a))
                    .is_some_and(|w| w == v)
            })
        });
        let known = self
            .points
            .values()
            .all(|p| p.multiplicities.keys().all(|c| self.curves.contains_key(c)));
        symmetric && known
    }
}

/// Grouping of curves and marked points into orbits of a free group action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub image: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub group_order: u32,
    pub curve_orbits: Vec<Orbit>,
    pub point_orbits: Vec<Orbit>,
}

fn check_partition<'a>(
    what: &str,
    orbits: &'a [Orbit],
    universe: impl Iterator<Item = &'a String>,
) -> Result<()> {
    let mut seen = BTreeSet::new();
    for o in orbits {
        if o.members.is_empty() {
            return Err(Error::Quotient(format!("empty {what} orbit `{}`", o.image)));
        }
        for m in &o.members {
            if !seen.insert(m.as_str()) {
                return Err(Error::Quotient(format!("{what} `{m}` appears in two orbits")));
            }
        }
    }
    let universe: BTreeSet<&str> = universe.map(String::as_str).collect();
    if seen != universe {
        return Err(Error::Quotient(format!("{what} orbits do not partition the {what}s")));
    }
    Ok(())
}

fn exact_div(total: i64, g: i64, what: impl fmt::Display) -> Result<i64> {
    if total % g != 0 {
        return Err(Error::Quotient(format!("{what} = {total} is not divisible by {g}")));
    }
    Ok(total / g)
}

/// Quotient by a free action of a group of order `g`.
///
/// For curve orbits `O`, `O'` with images `C`, `C'`, pulling back gives
/// `π*C = ΣO`, so `C·C' = (ΣO)·(ΣO')/g`. A point orbit becomes one point at
/// which the image of `O` has multiplicity `Σ_{C∈O} mult_p(C)`.
pub fn etale_quotient(a: &SurfaceModel, data: &QuotientData) -> Result<SurfaceModel> {
    let g = i64::from(data.group_order);
    if g < 1 {
        return Err(Error::Quotient("group order must be positive".into()));
    }
    check_partition("curve", &data.curve_orbits, a.curves.keys())?;
    check_partition("point", &data.point_orbits, a.points.keys())?;
    for o in &data.curve_orbits {
        if g % o.members.len() as i64 != 0 {
            return Err(Error::Quotient(format!(
                "curve orbit `{}` has size {} not dividing {g}",
                o.image,
                o.members.len()
            )));
        }
    }
    for o in &data.point_orbits {
        if o.members.len() as i64 != g {
            return Err(Error::Quotient(format!(
                "point orbit `{}` has size {}, action is not free",
                o.image,
                o.members.len()
            )));
        }
    }

    let mut b = SurfaceModel::new(
        exact_div(a.chi_top, g, "Euler number")?,
        exact_div(a.k2, g, "K²")?,
    );

    // Image multiplicities at each image point.
    let mut image_points = BTreeMap::new();
    for po in &data.point_orbits {
        let mut mults: Option<BTreeMap<String, u32>> = None;
        let mut ordinary = true;
        for member in &po.members {
            let p = a.point(member)?;
            ordinary &= p.ordinary;
            let here: BTreeMap<String, u32> = data
                .curve_orbits
                .iter()
                .map(|co| {
                    let m: u32 = co.members.iter().map(|c| p.multiplicity(c)).sum();
                    (co.image.clone(), m)
                })
                .filter(|(_, m)| *m > 0)
                .collect();
            match &mults {
                None => mults = Some(here),
                Some(prev) if *prev != here => {
                    return Err(Error::Quotient(format!(
                        "orbit `{}` has inconsistent branch data",
                        po.image
                    )))
                }
                Some(_) => {}
            }
        }
        image_points.insert(po.image.clone(), (mults.unwrap_or_default(), ordinary));
    }

    for co in &data.curve_orbits {
        let kinds: BTreeSet<_> = co
            .members
            .iter()
            .map(|c| a.curve(c).map(|r| r.kind.smooth_kind()))
            .collect::<Result<_>>()?;
        let base = match kinds.into_iter().collect::<Vec<_>>().as_slice() {
            [Some(k)] => *k,
            _ => {
                return Err(Error::Quotient(format!(
                    "orbit `{}` must consist of smooth curves of one kind",
                    co.image
                )))
            }
        };
        // Every meeting of two members must sit at marked points, so the
        // singularities of the image are all known.
        for (i, c1) in co.members.iter().enumerate() {
            for c2 in &co.members[i + 1..] {
                let total = a.intersection(c1, c2)?;
                let marked: i64 = a
                    .points
                    .values()
                    .map(|p| i64::from(p.multiplicity(c1) * p.multiplicity(c2)))
                    .sum();
                if total != marked {
                    return Err(Error::Quotient(format!(
                        "{c1}·{c2} = {total} but marked points account for {marked}"
                    )));
                }
            }
        }
        let singular_points: BTreeMap<String, u32> = image_points
            .iter()
            .filter_map(|(name, (mults, _))| {
                mults.get(&co.image).filter(|m| **m >= 2).map(|m| (name.clone(), *m))
            })
            .collect();
        let kind = if singular_points.is_empty() {
            CurveKind::smooth(base)
        } else {
            CurveKind::Singular {
                resolves_to: base,
                singular_points,
            }
        };
        b.add_curve(&co.image, 0, kind);
    }

    for (i, o1) in data.curve_orbits.iter().enumerate() {
        for o2 in &data.curve_orbits[i..] {
            let mut total = 0;
            for c1 in &o1.members {
                for c2 in &o2.members {
                    total += a.intersection(c1, c2)?;
                }
            }
            let value = exact_div(total, g, format_args!("({})·({})", o1.image, o2.image))?;
            b.set_intersection(&o1.image, &o2.image, value)?;
        }
    }

    for (name, (mults, ordinary)) in image_points {
        b.mark_point(&name, mults, ordinary)?;
    }
    Ok(b)
}

/// Name given to the exceptional curve over a blown-up point.
pub fn exceptional_name(point: &str) -> String {
    format!("exc({point})")
}

/// Blow-up at a marked point: `χ += 1`, `K² -= 1`, proper transforms lose
/// `m·m'` from every intersection number, and a `(-1)`-curve meeting each
/// transform `m` times is added.
pub fn blow_up(s: &SurfaceModel, point: &str) -> Result<SurfaceModel> {
    let p = s.point(point)?.clone();
    let mut out = s.clone();
    out.points.remove(point);
    out.chi_top += 1;
    out.k2 -= 1;

    let through: Vec<(String, i64)> = p
        .multiplicities
        .iter()
        .map(|(c, m)| (c.clone(), i64::from(*m)))
        .collect();
    for (i, (c1, m1)) in through.iter().enumerate() {
        for (c2, m2) in &through[i..] {
            let v = out.intersection(c1, c2)? - m1 * m2;
            out.set_intersection(c1, c2, v)?;
        }
    }

    for (c, _) in &through {
        let rec = out.curves.get_mut(c).expect("multiplicities reference known curves");
        if let CurveKind::Singular {
            resolves_to,
            singular_points,
        } = &mut rec.kind
        {
            if p.ordinary {
                singular_points.remove(point);
            }
            if singular_points.is_empty() {
                rec.kind = CurveKind::smooth(*resolves_to);
            }
        }
    }

    let exc = exceptional_name(point);
    out.add_curve(&exc, -1, CurveKind::SmoothRational);
    for (c, m) in &through {
        out.set_intersection(&exc, c, *m)?;
    }
    Ok(out)
}

/// Blows up every named point in order.
pub fn blow_up_all(s: &SurfaceModel, points: &[String]) -> Result<SurfaceModel> {
    points.iter().try_fold(s.clone(), |acc, p| blow_up(&acc, p))
}

/// `K·C` by adjunction: `-C²` for elliptic and `-C² - 2` for rational curves.
pub fn k_dot(s: &SurfaceModel, curve: &str) -> Result<i64> {
    let rec = s.curve(curve)?;
    match rec.kind {
        CurveKind::SmoothElliptic => Ok(-rec.self_int),
        CurveKind::SmoothRational => Ok(-rec.self_int - 2),
        CurveKind::Singular { .. } => Err(Error::SingularCurve(curve.to_string())),
    }
}

/// A surface together with a boundary divisor `D = ΣTi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogPair {
    surface: SurfaceModel,
    boundary: Vec<String>,
}

impl LogPair {
    /// Boundary components must be smooth elliptic, have negative
    /// self-intersection and be pairwise disjoint.
    pub fn new(surface: SurfaceModel, boundary: Vec<String>) -> Result<Self> {
        for (i, t) in boundary.iter().enumerate() {
            let rec = surface.curve(t)?;
            if rec.kind != CurveKind::SmoothElliptic {
                return Err(Error::LogPair(format!("boundary curve `{t}` is not smooth elliptic")));
            }
            if rec.self_int >= 0 {
                return Err(Error::LogPair(format!(
                    "boundary curve `{t}` has self-intersection {} ≥ 0",
                    rec.self_int
                )));
            }
            for u in &boundary[i + 1..] {
                if u == t {
                    return Err(Error::LogPair(format!("boundary curve `{t}` listed twice")));
                }
                let v = surface.intersection(t, u)?;
                if v != 0 {
                    return Err(Error::LogPair(format!("boundary curves `{t}` and `{u}` meet: {v}")));
                }
            }
        }
        Ok(LogPair { surface, boundary })
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn boundary(&self) -> &[String] {
        &self.boundary
    }

    /// `(K + D)·C` for any curve of the model.
    pub fn log_canonical_dot(&self, curve: &str) -> Result<i64> {
        let mut v = k_dot(&self.surface, curve)?;
        for t in &self.boundary {
            v += self.surface.intersection(t, curve)?;
        }
        Ok(v)
    }

    /// `D·C`.
    pub fn boundary_dot(&self, curve: &str) -> Result<i64> {
        self.boundary
            .iter()
            .map(|t| self.surface.intersection(t, curve))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LogChern {
    pub c1bar2: i64,
    pub c2bar: i64,
}

/// `c̄2 = χ(X) - Σχ(Ti) = χ(X)` and `c̄1² = (K + D)²`.
pub fn log_chern(p: &LogPair) -> Result<LogChern> {
    let s = &p.surface;
    // Boundary components are elliptic, so their Euler numbers vanish.
    let c2bar = s.chi_top;
    let mut c1bar2 = s.k2;
    for (i, t) in p.boundary.iter().enumerate() {
        c1bar2 += 2 * k_dot(s, t)? + s.intersection(t, t)?;
        for u in &p.boundary[i + 1..] {
            c1bar2 += 2 * s.intersection(t, u)?;
        }
    }
    Ok(LogChern { c1bar2, c2bar })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefReport {
    pub log_canonical_square: i64,
    pub square_positive: bool,
    /// `(K + D)·Ti` for each boundary component.
    pub boundary_degrees: BTreeMap<String, i64>,
    pub passed: bool,
}

/// Necessary numerical conditions for `K + D` to be big and nef:
/// `(K + D)² > 0` and `(K + D)·Ti ≥ 0` on the boundary.
pub fn nef_numerical_check(p: &LogPair) -> Result<NefReport> {
    let sq = log_chern(p)?.c1bar2;
    let boundary_degrees = p
        .boundary
        .iter()
        .map(|t| Ok((t.clone(), p.log_canonical_dot(t)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let passed = sq > 0 && boundary_degrees.values().all(|v| *v >= 0);
    Ok(NefReport {
        log_canonical_square: sq,
        square_positive: sq > 0,
        boundary_degrees,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BmyClass {
    Equality,
    StrictInequality,
    Violation,
    NotApplicable,
}

impl fmt::Display for BmyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BmyClass::Equality => "equality",
            BmyClass::StrictInequality => "strict inequality",
            BmyClass::Violation => "violation",
            BmyClass::NotApplicable => "not applicable",
        })
    }
}

/// Compares `c̄1²` with `3·c̄2`; only meaningful once the nef check passes.
pub fn bmy_classify(p: &LogPair) -> Result<BmyClass> {
    if !nef_numerical_check(p)?.passed {
        return Ok(BmyClass::NotApplicable);
    }
    let LogChern { c1bar2, c2bar } = log_chern(p)?;
    Ok(match c1bar2.cmp(&(3 * c2bar)) {
        std::cmp::Ordering::Equal => BmyClass::Equality,
        std::cmp::Ordering::Less => BmyClass::StrictInequality,
        std::cmp::Ordering::Greater => BmyClass::Violation,
    })
}

pub fn cusp_count(p: &LogPair) -> usize {
    p.boundary.len()
}

/// A volume `coefficient·π²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVolume {
    pub coefficient: Rational,
}

impl ExactVolume {
    /// `8π²/3`, `16π²/3`, `8π²`, …
    pub fn exact_string(&self) -> String {
        let q = &self.coefficient;
        if q.is_zero() {
            "0".to_string()
        } else if q.is_integer() {
            format!("{}π²", q.numer())
        } else {
            format!("{}π²/{}", q.numer(), q.denom())
        }
    }

    /// Floating-point value for display only.
    pub fn approx(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI * std::f64::consts::PI
    }
}

impl fmt::Display for ExactVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

impl Serialize for ExactVolume {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            exact: String,
            coefficient_of_pi_squared: String,
            approx_display_only: f64,
        }
        Repr {
            exact: self.exact_string(),
            coefficient_of_pi_squared: format_rational(&self.coefficient),
            approx_display_only: self.approx(),
        }
        .serialize(serializer)
    }
}

/// `Vol = (8/3)·π²·χ` for a ball quotient with Euler number `χ`.
pub fn volume_from_chi(chi: i64) -> Result<ExactVolume> {
    if chi < 0 {
        return Err(Error::NegativeChi(chi));
    }
    Ok(ExactVolume {
        coefficient: Rational::new(8.into(), 3.into()) * integer(chi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn mults(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
        pairs.iter().map(|(c, m)| (c.to_string(), *m)).collect()
    }

    /// Three elliptic curves meeting pairwise transversally in `3n` common
    /// points, permuted freely by a group of order 3 that also permutes the
    /// points in `n` orbits.
    fn triple_configuration(n: u32) -> (SurfaceModel, QuotientData) {
        let mut a = SurfaceModel::new(0, 0);
        for c in ["E1", "E2", "E3"] {
            a.add_curve(c, 0, CurveKind::SmoothElliptic);
        }
        for (x, y) in [("E1", "E2"), ("E1", "E3"), ("E2", "E3")] {
            a.set_intersection(x, y, 3 * i64::from(n)).unwrap();
        }
        let mut point_orbits = Vec::new();
        for m in 0..n {
            let members: Vec<String> = (0..3).map(|l| format!("q{m}_{l}")).collect();
            for p in &members {
                a.mark_point(p, mults(&[("E1", 1), ("E2", 1), ("E3", 1)]), true).unwrap();
            }
            point_orbits.push(Orbit {
                image: format!("s{m}"),
                members,
            });
        }
        let data = QuotientData {
            group_order: 3,
            curve_orbits: vec![Orbit {
                image: "C".into(),
                members: vec!["E1".into(), "E2".into(), "E3".into()],
            }],
            point_orbits,
        };
        (a, data)
    }

    #[test]
    fn quotient_of_triple_configuration() {
        for n in 1..6 {
            let (a, data) = triple_configuration(n);
            let b = etale_quotient(&a, &data).unwrap();
            assert_eq!(b.chi_top, 0);
            assert_eq!(b.intersection("C", "C").unwrap(), 6 * i64::from(n));
            assert_eq!(b.point_names().len(), n as usize);
            assert_eq!(b.point("s0").unwrap().multiplicity("C"), 3);
            assert!(matches!(b.curve("C").unwrap().kind, CurveKind::Singular { .. }));
            assert!(b.is_consistent());

            let x = blow_up_all(&b, &b.point_names()).unwrap();
            assert_eq!(x.chi_top, i64::from(n));
            assert_eq!(x.k2, -i64::from(n));
            assert_eq!(x.intersection("C", "C").unwrap(), -3 * i64::from(n));
            assert_eq!(x.curve("C").unwrap().kind, CurveKind::SmoothElliptic);
            assert_eq!(k_dot(&x, "C").unwrap(), 3 * i64::from(n));
            let exc = exceptional_name("s0");
            assert_eq!(x.intersection(&exc, "C").unwrap(), 3);
            assert_eq!(k_dot(&x, &exc).unwrap(), -1);
        }
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let mut a = SurfaceModel::new(4, -2);
        a.add_curve("A", -3, CurveKind::SmoothElliptic);
        a.add_curve("B", 0, CurveKind::SmoothRational);
        a.set_intersection("A", "B", 2).unwrap();
        a.mark_point("p", mults(&[("A", 1)]), true).unwrap();
        let data = QuotientData {
            group_order: 1,
            curve_orbits: vec![
                Orbit { image: "A".into(), members: vec!["A".into()] },
                Orbit { image: "B".into(), members: vec!["B".into()] },
            ],
            point_orbits: vec![Orbit { image: "p".into(), members: vec!["p".into()] }],
        };
        assert_eq!(etale_quotient(&a, &data).unwrap(), a);
    }

    #[test]
    fn disjoint_orbit_has_square_zero() {
        let mut a = SurfaceModel::new(0, 0);
        for h in ["H1", "H2", "H3"] {
            a.add_curve(h, 0, CurveKind::SmoothElliptic);
        }
        let data = QuotientData {
            group_order: 3,
            curve_orbits: vec![Orbit {
                image: "F".into(),
                members: vec!["H1".into(), "H2".into(), "H3".into()],
            }],
            point_orbits: vec![],
        };
        let b = etale_quotient(&a, &data).unwrap();
        assert_eq!(b.intersection("F", "F").unwrap(), 0);
        assert_eq!(b.curve("F").unwrap().kind, CurveKind::SmoothElliptic);
    }

    #[test]
    fn quotient_rejects_bad_data() {
        let (a, data) = triple_configuration(2);
        let mut bad = data.clone();
        bad.point_orbits[0].members.pop();
        assert!(matches!(etale_quotient(&a, &bad), Err(Error::Quotient(_))));

        let mut bad = data.clone();
        bad.curve_orbits[0].members.pop();
        assert!(etale_quotient(&a, &bad).is_err());

        let mut odd = a.clone();
        odd.chi_top = 1;
        assert!(etale_quotient(&odd, &data).is_err());

        // an intersection not accounted for by marked points
        let mut hidden = a.clone();
        hidden.set_intersection("E1", "E2", 7).unwrap();
        assert!(etale_quotient(&hidden, &data).is_err());
    }

    #[test]
    fn blow_up_fiber_and_unknown_point() {
        let mut s = SurfaceModel::new(0, 0);
        s.add_curve("F", 0, CurveKind::SmoothElliptic);
        s.mark_point("p", mults(&[("F", 1)]), true).unwrap();
        let x = blow_up(&s, "p").unwrap();
        assert_eq!(x.intersection("F", "F").unwrap(), -1);
        assert_eq!(blow_up(&s, "nope"), Err(Error::UnknownPoint("nope".into())));

        // a fiber through n marked points
        let mut s = SurfaceModel::new(0, 0);
        s.add_curve("F", 0, CurveKind::SmoothElliptic);
        let names: Vec<String> = (0..4).map(|i| format!("p{i}")).collect();
        for p in &names {
            s.mark_point(p, mults(&[("F", 1)]), true).unwrap();
        }
        let x = blow_up_all(&s, &names).unwrap();
        assert_eq!(x.intersection("F", "F").unwrap(), -4);
    }

    #[test]
    fn k_dot_cases() {
        let mut s = SurfaceModel::new(0, 0);
        s.add_curve("T", -9, CurveKind::SmoothElliptic);
        s.add_curve("E", -1, CurveKind::SmoothRational);
        s.add_curve("Z", 0, CurveKind::SmoothElliptic);
        s.add_curve(
            "C",
            6,
            CurveKind::Singular {
                resolves_to: SmoothKind::Elliptic,
                singular_points: BTreeMap::from([("p".to_string(), 3)]),
            },
        );
        assert_eq!(k_dot(&s, "T").unwrap(), 9);
        assert_eq!(k_dot(&s, "E").unwrap(), -1);
        assert_eq!(k_dot(&s, "Z").unwrap(), 0);
        assert_eq!(k_dot(&s, "C"), Err(Error::SingularCurve("C".into())));
    }

    fn gamma_like(n: i64, with_fibers: bool) -> LogPair {
        let mut s = SurfaceModel::new(n, -n);
        s.add_curve("T0", -3 * n, CurveKind::SmoothElliptic);
        let mut boundary = vec!["T0".to_string()];
        if with_fibers {
            for j in 1..=n {
                let t = format!("T{j}");
                s.add_curve(&t, -1, CurveKind::SmoothElliptic);
                boundary.push(t);
            }
        }
        LogPair::new(s, boundary).unwrap()
    }

    #[test]
    fn log_chern_and_bmy() {
        let p = gamma_like(4, true);
        assert_eq!(log_chern(&p).unwrap(), LogChern { c1bar2: 12, c2bar: 4 });
        assert_eq!(bmy_classify(&p).unwrap(), BmyClass::Equality);
        assert_eq!(cusp_count(&p), 5);
        let nef = nef_numerical_check(&p).unwrap();
        assert!(nef.passed);
        assert!(nef.boundary_degrees.values().all(|v| *v == 0));

        let p = gamma_like(1, false);
        assert_eq!(log_chern(&p).unwrap(), LogChern { c1bar2: 2, c2bar: 1 });
        assert_eq!(bmy_classify(&p).unwrap(), BmyClass::StrictInequality);

        let empty = LogPair::new(SurfaceModel::new(0, 0), vec![]).unwrap();
        assert_eq!(log_chern(&empty).unwrap(), LogChern { c1bar2: 0, c2bar: 0 });
        assert!(!nef_numerical_check(&empty).unwrap().passed);
        assert_eq!(bmy_classify(&empty).unwrap(), BmyClass::NotApplicable);
    }

    #[test]
    fn log_pair_invariants() {
        let mut s = SurfaceModel::new(1, -1);
        s.add_curve("A", -2, CurveKind::SmoothElliptic);
        s.add_curve("B", -1, CurveKind::SmoothElliptic);
        s.add_curve("R", -1, CurveKind::SmoothRational);
        s.add_curve("P", 1, CurveKind::SmoothElliptic);
        s.set_intersection("A", "B", 1).unwrap();
        assert!(LogPair::new(s.clone(), vec!["A".into(), "B".into()]).is_err());
        assert!(LogPair::new(s.clone(), vec!["R".into()]).is_err());
        assert!(LogPair::new(s.clone(), vec!["P".into()]).is_err());
        assert!(LogPair::new(s.clone(), vec!["A".into(), "A".into()]).is_err());
        assert!(LogPair::new(s, vec!["A".into()]).is_ok());
    }

    #[test]
    fn volumes() {
        assert_eq!(volume_from_chi(1).unwrap().coefficient, rational(8, 3));
        assert_eq!(volume_from_chi(0).unwrap().coefficient, rational(0, 1));
        assert_eq!(volume_from_chi(7).unwrap().coefficient, rational(56, 3));
        assert_eq!(volume_from_chi(1).unwrap().exact_string(), "8π²/3");
        assert_eq!(volume_from_chi(3).unwrap().exact_string(), "8π²");
        assert_eq!(volume_from_chi(-1), Err(Error::NegativeChi(-1)));
        let json = serde_json::to_value(volume_from_chi(2).unwrap()).unwrap();
        assert_eq!(json["exact"], "16π²/3");
        assert_eq!(json["coefficient_of_pi_squared"], "16/3");
    }
}
