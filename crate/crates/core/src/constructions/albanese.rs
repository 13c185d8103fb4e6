use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::constructions::families::triple_points;
use crate::error::{Error, Result};
use crate::field::{rational, EisensteinNumber};
use crate::lattice::{index, is_sublattice, Lattice, TorusPoint};
use crate::torus::{PointKey, ProductPoint};

/// `2/3 + j - 1` for `j = 1..=n`, as points of `C/Z[n, a]`.
pub fn special_base_points(n: u64) -> Result<Vec<TorusPoint>> {
    let target = Lattice::albanese(n)?;
    Ok((0..n as i64)
        .map(|m| target.reduce(&EisensteinNumber::from_rational(rational(2 + 3 * m, 3))))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlbaneseData {
    pub n: u64,
    pub target: Lattice,
    pub contains_delta: bool,
    pub index: u64,
    /// Order of `a = (1 - ρ)/3` in `C/Δn`.
    pub a_order: u64,
    pub special_base_points: Vec<String>,
    pub special_points_distinct: bool,
    pub generic_base_point: String,
    pub generic_is_special: bool,
    pub pass: bool,
}

pub fn albanese_data(n: u64) -> Result<AlbaneseData> {
    let target = Lattice::albanese(n)?;
    let delta = Lattice::delta(n)?;
    let contains_delta = is_sublattice(&delta, &target);
    let idx = index(&delta, &target)?
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("index overflow".into()))?;
    let a_order = delta
        .torsion_order(&EisensteinNumber::a())
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("order overflow".into()))?;
    let special = special_base_points(n)?;
    let distinct = special
        .iter()
        .enumerate()
        .all(|(i, p)| special[i + 1..].iter().all(|q| p != q));
    let generic = target.reduce(&EisensteinNumber::zero());
    let generic_is_special = special.contains(&generic);
    Ok(AlbaneseData {
        n,
        contains_delta,
        index: idx,
        a_order,
        special_base_points: special.iter().map(ToString::to_string).collect(),
        special_points_distinct: distinct,
        generic_base_point: generic.to_string(),
        generic_is_special,
        pass: contains_delta && idx == 3 && a_order == 3 && distinct && !generic_is_special,
        target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub m: u64,
    pub n: u64,
    pub contained: bool,
    pub degree: Option<u64>,
    pub statement: String,
    /// The triple points over `Xm` pull back to exactly the triple points of
    /// `Xn`, `degree` over each, so the blow-ups lift.
    pub blown_up_points_compatible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Whether `Δn ⊆ Δm` induces an unramified covering `Xn → Xm`.
pub fn covering_report(m: u64, n: u64) -> Result<CoveringReport> {
    covering_report_with(m, n, &triple_points(n)?)
}

/// [`covering_report`] with the triple points of `An` supplied.
pub(crate) fn covering_report_with(m: u64, n: u64, triple_n: &[ProductPoint]) -> Result<CoveringReport> {
    let (lm, ln) = (Lattice::delta(m)?, Lattice::delta(n)?);
    if !is_sublattice(&ln, &lm) {
        return Ok(CoveringReport {
            m,
            n,
            contained: false,
            degree: None,
            statement: format!("Δ{n} ⊄ Δ{m}: the lattices induce no covering X{n} → X{m}"),
            blown_up_points_compatible: None,
            caveat: Some(format!("Δ{n} ⊆ Δ{m} holds exactly when {m} divides {n}")),
        });
    }
    let degree = index(&ln, &lm)?
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("index overflow".into()))?;

    let mut fibers: BTreeMap<PointKey, u64> = BTreeMap::new();
    for p in triple_n {
        let image = ProductPoint {
            z: lm.reduce(p.z.value()),
            w: p.w.clone(),
        };
        *fibers.entry(image.canonical_key()).or_default() += 1;
    }
    let below: Vec<PointKey> = triple_points(m)?.iter().map(ProductPoint::canonical_key).collect();
    let compatible = fibers.keys().cloned().collect::<Vec<_>>() == below && fibers.values().all(|c| *c == degree);

    Ok(CoveringReport {
        m,
        n,
        contained: true,
        degree: Some(degree),
        statement: format!("Δ{n} ⊆ Δ{m}: X{n} → X{m} is an unramified covering of degree {degree}"),
        blown_up_points_compatible: Some(compatible),
        caveat: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn albanese_examples() {
        let d = albanese_data(1).unwrap();
        assert_eq!(d.index, 3);
        assert!(d.pass);
        let d = albanese_data(2).unwrap();
        assert_eq!(d.special_base_points.len(), 2);
        for n in 1..12 {
            let d = albanese_data(n).unwrap();
            assert_eq!(d.a_order, 3);
            assert!(d.pass, "n = {n}");
        }
    }

    #[test]
    fn coverings() {
        let r = covering_report(1, 7).unwrap();
        assert_eq!(r.degree, Some(7));
        assert_eq!(r.blown_up_points_compatible, Some(true));
        let r = covering_report(2, 6).unwrap();
        assert!(r.contained);
        assert_eq!(r.degree, Some(3));
        assert_eq!(r.blown_up_points_compatible, Some(true));
        let r = covering_report(2, 3).unwrap();
        assert!(!r.contained);
        assert!(r.caveat.is_some());
        assert_eq!(covering_report(4, 4).unwrap().degree, Some(1));
    }
}
