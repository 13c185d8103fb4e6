//! The seven Bagnera–de Franchis types of bielliptic surfaces
//! `(E_λ × E_τ)/K`, with `K` acting on `E_τ` by translations, and a
//! classifier for symbolic descriptions of the action on `E_λ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::torus::TorusAutomorphism;

/// Multiplication by a root of unity on `E_λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rotation {
    MinusOne,
    I,
    Rho,
    Zeta6,
}

impl Rotation {
    pub fn order(self) -> u32 {
        match self {
            Rotation::MinusOne => 2,
            Rotation::Rho => 3,
            Rotation::I => 4,
            Rotation::Zeta6 => 6,
        }
    }

    pub fn from_order(order: u32) -> Option<Self> {
        match order {
            2 => Some(Rotation::MinusOne),
            3 => Some(Rotation::Rho),
            4 => Some(Rotation::I),
            6 => Some(Rotation::Zeta6),
            _ => None,
        }
    }

    /// The modulus `λ` an elliptic curve must have to admit this rotation.
    pub fn required_lambda(self) -> Option<LambdaValue> {
        match self {
            Rotation::MinusOne => None,
            Rotation::I => Some(LambdaValue::I),
            Rotation::Rho | Rotation::Zeta6 => Some(LambdaValue::Rho),
        }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rotation::MinusOne => "x -> -x",
            Rotation::I => "x -> i·x",
            Rotation::Rho => "x -> ρ·x",
            Rotation::Zeta6 => "x -> ζ·x",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaValue {
    I,
    Rho,
}

impl fmt::Display for LambdaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaValue::I => "i",
            LambdaValue::Rho => "ρ",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaConstraint {
    Any,
    I,
    Rho,
    /// `λ = ρ` with the generator acting by `ζ = e^{πi/3}`.
    RhoWithZeta,
}

impl LambdaConstraint {
    fn admits(self, lambda: LambdaValue) -> bool {
        match self {
            LambdaConstraint::Any => true,
            LambdaConstraint::I => lambda == LambdaValue::I,
            LambdaConstraint::Rho | LambdaConstraint::RhoWithZeta => lambda == LambdaValue::Rho,
        }
    }
}

impl fmt::Display for LambdaConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaConstraint::Any => "λ arbitrary",
            LambdaConstraint::I => "λ = i",
            LambdaConstraint::Rho => "λ = e^(2πi/3)",
            LambdaConstraint::RhoWithZeta => "λ = e^(2πi/3), ζ = e^(πi/3)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
pub enum Generator {
    Multiply { rotation: Rotation },
    Translate { by: &'static str, torsion_order: u32 },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Multiply { rotation } => write!(f, "{rotation}"),
            Generator::Translate { by, torsion_order } => {
                write!(f, "x -> x + {by} (order {torsion_order})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BdFType {
    pub index: u8,
    /// Orders of the cyclic factors of `K`.
    pub group_structure: Vec<u32>,
    pub lambda_constraint: LambdaConstraint,
    /// Action of the generators of `K` on `E_λ`, one per cyclic factor.
    pub generators: Vec<Generator>,
}

impl BdFType {
    pub fn group_order(&self) -> u32 {
        self.group_structure.iter().product()
    }

    pub fn rotation(&self) -> Rotation {
        self.generators
            .iter()
            .find_map(|g| match g {
                Generator::Multiply { rotation } => Some(*rotation),
                Generator::Translate { .. } => None,
            })
            .expect("every type has a rotation generator")
    }

    /// Torsion order of the extra translation on `E_λ`, if any.
    pub fn translation_order(&self) -> Option<u32> {
        self.generators.iter().find_map(|g| match g {
            Generator::Translate { torsion_order, .. } => Some(*torsion_order),
            Generator::Multiply { .. } => None,
        })
    }

    pub fn group_label(&self) -> String {
        self.group_structure
            .iter()
            .map(|m| format!("Z/{m}"))
            .collect::<Vec<_>>()
            .join(" × ")
    }
}

impl fmt::Display for BdFType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(
            f,
            "type {}: K = {} acting by {}; {}",
            self.index,
            self.group_label(),
            gens.join(" and "),
            self.lambda_constraint
        )
    }
}

pub fn bdf_catalog() -> Vec<BdFType> {
    use Generator::{Multiply, Translate};
    use LambdaConstraint as L;
    let entry = |index, group_structure: &[u32], lambda_constraint, generators| BdFType {
        index,
        group_structure: group_structure.to_vec(),
        lambda_constraint,
        generators,
    };
    vec![
        entry(1, &[2], L::Any, vec![Multiply { rotation: Rotation::MinusOne }]),
        entry(
            2,
            &[2, 2],
            L::Any,
            vec![
                Multiply { rotation: Rotation::MinusOne },
                Translate { by: "α₂", torsion_order: 2 },
            ],
        ),
        entry(3, &[4], L::I, vec![Multiply { rotation: Rotation::I }]),
        entry(
            4,
            &[4, 2],
            L::I,
            vec![
                Multiply { rotation: Rotation::I },
                Translate { by: "(1+λ)/2", torsion_order: 2 },
            ],
        ),
        entry(5, &[3], L::Rho, vec![Multiply { rotation: Rotation::Rho }]),
        entry(
            6,
            &[3, 3],
            L::Rho,
            vec![
                Multiply { rotation: Rotation::Rho },
                Translate { by: "(1-λ)/3", torsion_order: 3 },
            ],
        ),
        entry(7, &[6], L::RhoWithZeta, vec![Multiply { rotation: Rotation::Zeta6 }]),
    ]
}

/// Symbolic description of a free action of `K` on `E_λ × E_τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionDescriptor {
    pub group_order: u32,
    pub rotation: Option<Rotation>,
    /// Order of an extra translation acting on `E_λ`.
    pub lambda_translation_order: Option<u32>,
    /// Order of the translation by which the rotation generator acts on `E_τ`.
    pub tau_translation_order: Option<u32>,
    pub lambda: Option<LambdaValue>,
}

impl ActionDescriptor {
    pub fn new(group_order: u32, rotation: Option<Rotation>) -> Self {
        ActionDescriptor {
            group_order,
            rotation,
            lambda_translation_order: None,
            tau_translation_order: None,
            lambda: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "violation", content = "detail")]
pub enum BdfViolation {
    UnknownGroupOrder(u32),
    LambdaConstraint(String),
    TranslationMismatch(String),
}

impl fmt::Display for BdfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BdfViolation::UnknownGroupOrder(g) => write!(f, "unknown-group-order: no type has |K| = {g}"),
            BdfViolation::LambdaConstraint(d) => write!(f, "lambda-constraint: {d}"),
            BdfViolation::TranslationMismatch(d) => write!(f, "translation-mismatch: {d}"),
        }
    }
}

pub fn bdf_classify(desc: &ActionDescriptor) -> std::result::Result<BdFType, BdfViolation> {
    let by_order: Vec<BdFType> = bdf_catalog()
        .into_iter()
        .filter(|t| t.group_order() == desc.group_order)
        .collect();
    if by_order.is_empty() {
        return Err(BdfViolation::UnknownGroupOrder(desc.group_order));
    }

    let by_rotation: Vec<BdFType> = match desc.rotation {
        None => by_order.clone(),
        Some(r) => by_order.iter().filter(|t| t.rotation() == r).cloned().collect(),
    };
    if by_rotation.is_empty() {
        let r = desc.rotation.expect("empty only when a rotation was given");
        let allowed: Vec<String> = by_order
            .iter()
            .map(|t| format!("{} ({})", t.rotation(), t.lambda_constraint))
            .collect();
        return Err(BdfViolation::LambdaConstraint(format!(
            "|K| = {} requires {}, but {r} has order {}",
            desc.group_order,
            allowed.join(" or "),
            r.order()
        )));
    }

    let candidates: Vec<BdFType> = by_rotation
        .iter()
        .filter(|t| t.translation_order() == desc.lambda_translation_order)
        .cloned()
        .collect();
    let Some(found) = candidates.into_iter().next() else {
        let expected: Vec<String> = by_rotation
            .iter()
            .map(|t| match t.translation_order() {
                Some(o) => format!("a translation of order {o} on E_λ"),
                None => "no translation on E_λ".into(),
            })
            .collect();
        return Err(BdfViolation::TranslationMismatch(format!(
            "|K| = {} needs {}",
            desc.group_order,
            expected.join(" or ")
        )));
    };

    if let Some(lambda) = desc.lambda {
        if !found.lambda_constraint.admits(lambda) {
            return Err(BdfViolation::LambdaConstraint(format!(
                "type {} needs {}, got λ = {lambda}",
                found.index, found.lambda_constraint
            )));
        }
    }
    if let Some(t) = desc.tau_translation_order {
        let needed = found.rotation().order();
        if t != needed {
            return Err(BdfViolation::TranslationMismatch(format!(
                "the rotation generator has order {needed} but acts on E_τ by a translation of order {t}"
            )));
        }
    }
    Ok(found)
}

/// Reads off the descriptor of the cyclic group generated by `f`, viewing
/// the first factor as `E_λ` and the second as `E_τ`.
pub fn descriptor_of(f: &TorusAutomorphism) -> Result<ActionDescriptor> {
    let order = u32::try_from(f.order()).map_err(|_| Error::InvalidParameter("order too large".into()))?;
    let rot_order = f
        .lambda_w()
        .root_of_unity_order()
        .ok_or_else(|| Error::NotAutomorphism(f.lambda_w().to_string()))?;
    let rotation = Rotation::from_order(rot_order).ok_or_else(|| {
        Error::InvalidParameter(format!("multiplier {} of order {rot_order} on the first factor", f.lambda_w()))
    })?;
    if !f.lambda_z().is_one() {
        return Err(Error::InvalidParameter("second factor must be acted on by translations".into()));
    }
    let tau_order = u32::try_from(f.z_translation_order())
        .map_err(|_| Error::InvalidParameter("translation order too large".into()))?;
    let lambda = (f.ambient().lattice_w == Lattice::eisenstein()).then_some(LambdaValue::Rho);
    Ok(ActionDescriptor {
        group_order: order,
        rotation: Some(rotation),
        lambda_translation_order: None,
        tau_translation_order: Some(tau_order),
        lambda,
    })
}
