//! Closed-form solution families and a catalog to select them by name.

mod currents;
mod dirac;
mod fields;
mod massless;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use currents::{dirac_current, hopfion_velocity, maxwell_stress, weyl_current};
pub use dirac::{dirac_base, negative_energy, psi_k, psi_k_printed};
pub use fields::{Bispinor, FieldValue, RSVector};
pub use massless::{
    basis_eta_bar, bateman_condition_residual, bateman_field, check_knot_indices, d_factor,
    knot_field, maxwell_field, maxwell_hopfion, maxwell_spinor, psi_gradient, psi_spinor,
    rs_from_spinor, shifted_position_matrix, spinor_from_rs, upsilon_massless, weyl_field,
    weyl_hopfion, LightCone,
};

use crate::error::{Error, Result};
use crate::spacetime::SpacetimePoint;
use crate::spinor::{FourVector, Spinor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionFamily {
    WeylHopfion1,
    WeylHopfion2,
    MaxwellHopfion1,
    MaxwellHopfion2,
    KnotPq,
    DiracBase,
    Psi2,
    Psi4,
    Psi6,
    Psi8,
}

/// Which field equation a family solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Weyl,
    Maxwell,
    Dirac,
}

impl SolutionFamily {
    pub const ALL: [SolutionFamily; 10] = [
        SolutionFamily::WeylHopfion1,
        SolutionFamily::WeylHopfion2,
        SolutionFamily::MaxwellHopfion1,
        SolutionFamily::MaxwellHopfion2,
        SolutionFamily::KnotPq,
        SolutionFamily::DiracBase,
        SolutionFamily::Psi2,
        SolutionFamily::Psi4,
        SolutionFamily::Psi6,
        SolutionFamily::Psi8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolutionFamily::WeylHopfion1 => "weyl-hopfion-1",
            SolutionFamily::WeylHopfion2 => "weyl-hopfion-2",
            SolutionFamily::MaxwellHopfion1 => "maxwell-hopfion-1",
            SolutionFamily::MaxwellHopfion2 => "maxwell-hopfion-2",
            SolutionFamily::KnotPq => "knot-pq",
            SolutionFamily::DiracBase => "dirac-base",
            SolutionFamily::Psi2 => "psi2",
            SolutionFamily::Psi4 => "psi4",
            SolutionFamily::Psi6 => "psi6",
            SolutionFamily::Psi8 => "psi8",
        }
    }

    pub fn kind(self) -> FieldKind {
        match self {
            SolutionFamily::WeylHopfion1 | SolutionFamily::WeylHopfion2 => FieldKind::Weyl,
            SolutionFamily::MaxwellHopfion1 | SolutionFamily::MaxwellHopfion2 | SolutionFamily::KnotPq => {
                FieldKind::Maxwell
            }
            _ => FieldKind::Dirac,
        }
    }

    fn psi_index(self) -> Option<u8> {
        match self {
            SolutionFamily::Psi2 => Some(2),
            SolutionFamily::Psi4 => Some(4),
            SolutionFamily::Psi6 => Some(6),
            SolutionFamily::Psi8 => Some(8),
            _ => None,
        }
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolutionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolutionFamily::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnknownName {
            name: s.to_string(),
            valid: SolutionFamily::ALL.map(|f| f.name()).join(", "),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergySign {
    #[default]
    Positive,
    Negative,
}

impl FromStr for EnergySign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "positive" | "pos" => Ok(EnergySign::Positive),
            "-" | "negative" | "neg" => Ok(EnergySign::Negative),
            _ => Err(Error::UnknownName { name: s.to_string(), valid: "+, -, positive, negative".into() }),
        }
    }
}

impl fmt::Display for EnergySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergySign::Positive => "+",
            EnergySign::Negative => "-",
        })
    }
}

/// A fully parameterised solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionId {
    pub family: SolutionFamily,
    pub a: f64,
    /// Mass; ignored by the massless families.
    pub m: f64,
    pub p: u32,
    pub q: u32,
    /// Free spinor index of `dirac-base`.
    pub base_index: u8,
    pub base_dotted: bool,
    pub energy_sign: EnergySign,
}

impl SolutionId {
    pub fn new(family: SolutionFamily) -> Self {
        Self {
            family,
            a: 1.0,
            m: 1.0,
            p: 1,
            q: 1,
            base_index: 0,
            base_dotted: false,
            energy_sign: EnergySign::Positive,
        }
    }

    pub fn knot(p: u32, q: u32) -> Self {
        Self { p, q, ..Self::new(SolutionFamily::KnotPq) }
    }

    pub fn dirac_base(index: u8, dotted: bool) -> Self {
        Self { base_index: index, base_dotted: dotted, ..Self::new(SolutionFamily::DiracBase) }
    }

    pub fn with_energy_sign(self, energy_sign: EnergySign) -> Self {
        Self { energy_sign, ..self }
    }

    pub fn kind(&self) -> FieldKind {
        self.family.kind()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Domain(format!("scale a must be positive, got {}", self.a)));
        }
        if self.kind() == FieldKind::Dirac && (!(self.m > 0.0) || !self.m.is_finite()) {
            return Err(Error::Domain(format!("mass must be positive, got {}", self.m)));
        }
        if self.family == SolutionFamily::KnotPq {
            check_knot_indices(self.p, self.q)?;
        }
        if self.family == SolutionFamily::DiracBase && self.base_index > 1 {
            return Err(Error::InvalidParameter(format!(
                "base index must be 0 or 1, got {}",
                self.base_index
            )));
        }
        Ok(())
    }

    /// Short human-readable label, e.g. `knot-pq(2,3)` or `psi4[-]`.
    pub fn label(&self) -> String {
        let mut s = match self.family {
            SolutionFamily::KnotPq => format!("knot-pq({},{})", self.p, self.q),
            SolutionFamily::DiracBase => {
                format!("dirac-base({}{})", self.base_index, if self.base_dotted { "'" } else { "" })
            }
            f => f.name().to_string(),
        };
        if self.energy_sign == EnergySign::Negative {
            s.push_str("[-]");
        }
        s
    }

    pub fn evaluate(&self, x: &SpacetimePoint) -> Result<FieldValue> {
        self.evaluate_variant(x, false)
    }

    /// As [`evaluate`](Self::evaluate), but with the verbatim tabulated `Ψ₆`, `Ψ₈`.
    pub fn evaluate_printed(&self, x: &SpacetimePoint) -> Result<FieldValue> {
        self.evaluate_variant(x, true)
    }

    fn evaluate_variant(&self, x: &SpacetimePoint, printed: bool) -> Result<FieldValue> {
        self.validate()?;
        let xe = match self.energy_sign {
            EnergySign::Positive => *x,
            EnergySign::Negative => x.reflected(),
        };
        let (a, m) = (self.a, self.m);
        let v = match self.family {
            SolutionFamily::WeylHopfion1 => FieldValue::Spinor(weyl_hopfion(1, &xe, a)?.components()),
            SolutionFamily::WeylHopfion2 => FieldValue::Spinor(weyl_hopfion(2, &xe, a)?.components()),
            SolutionFamily::MaxwellHopfion1 => FieldValue::RS(maxwell_hopfion(1, &xe, a)?),
            SolutionFamily::MaxwellHopfion2 => FieldValue::RS(maxwell_hopfion(2, &xe, a)?),
            SolutionFamily::KnotPq => FieldValue::RS(knot_field(self.p, self.q, &xe, a)?),
            SolutionFamily::DiracBase => {
                FieldValue::Bispinor(dirac_base(self.base_index, self.base_dotted, &xe, a, m)?)
            }
            f => {
                let k = f.psi_index().expect("massive family");
                let b = if printed { psi_k_printed(k, &xe, a, m)? } else { psi_k(k, &xe, a, m)? };
                FieldValue::Bispinor(b)
            }
        };
        Ok(match (v, self.energy_sign) {
            (FieldValue::Bispinor(b), EnergySign::Negative) => FieldValue::Bispinor(negative_energy(b)),
            (v, _) => v,
        })
    }

    /// Current four-vector: Weyl and Dirac currents, or `(u, E×B)` for Maxwell fields.
    pub fn current(&self, x: &SpacetimePoint) -> Result<FourVector> {
        Ok(current_of(&self.evaluate(x)?))
    }
}

/// Current of a field value; see [`SolutionId::current`].
pub fn current_of(v: &FieldValue) -> FourVector {
    match v {
        FieldValue::Scalar(f) => FourVector::real([f.norm_sqr(), 0.0, 0.0, 0.0]),
        FieldValue::Spinor(s) => weyl_current(&Spinor::lower(s[0], s[1])),
        FieldValue::RS(f) => {
            let (u, s) = maxwell_stress(f);
            FourVector::real([u, s[0], s[1], s[2]])
        }
        FieldValue::Bispinor(b) => dirac_current(b),
    }
}

impl Default for SolutionId {
    fn default() -> Self {
        Self::new(SolutionFamily::MaxwellHopfion1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_roundtrip() {
        for f in SolutionFamily::ALL {
            assert_eq!(f.name().parse::<SolutionFamily>().unwrap(), f);
        }
        let err = "psi5".parse::<SolutionFamily>().unwrap_err();
        assert!(err.to_string().contains("psi8"));
    }

    #[test]
    fn validation() {
        assert_eq!(SolutionId::knot(2, 4).validate(), Err(Error::NotCoprime { p: 2, q: 4 }));
        assert!(SolutionId::knot(3, 2).validate().is_ok());
        let mut id = SolutionId::new(SolutionFamily::Psi4);
        id.m = 0.0;
        assert!(id.validate().is_err());
        let mut id = SolutionId::new(SolutionFamily::WeylHopfion1);
        id.m = 0.0;
        assert!(id.validate().is_ok());
        id.a = -1.0;
        assert!(id.evaluate(&SpacetimePoint::ORIGIN).is_err());
    }

    #[test]
    fn negative_energy_is_reflection() {
        let x = SpacetimePoint::new(0.4, -0.2, 0.9, 0.1);
        let pos = SolutionId::new(SolutionFamily::MaxwellHopfion2);
        let neg = pos.with_energy_sign(EnergySign::Negative);
        assert_eq!(neg.evaluate(&x).unwrap(), pos.evaluate(&x.reflected()).unwrap());
        let pos = SolutionId::new(SolutionFamily::Psi4);
        let neg = pos.with_energy_sign(EnergySign::Negative);
        let FieldValue::Bispinor(b) = pos.evaluate(&x.reflected()).unwrap() else { panic!() };
        assert_eq!(neg.evaluate(&x).unwrap(), FieldValue::Bispinor(b.chirality_flipped()));
    }

    #[test]
    fn labels() {
        assert_eq!(SolutionId::knot(2, 3).label(), "knot-pq(2,3)");
        assert_eq!(SolutionId::dirac_base(1, true).label(), "dirac-base(1')");
        let id = SolutionId::new(SolutionFamily::Psi2).with_energy_sign(EnergySign::Negative);
        assert_eq!(id.label(), "psi2[-]");
        assert_eq!("-".parse::<EnergySign>().unwrap(), EnergySign::Negative);
    }
}
