//! Kodaira fiber types and their lattice-theoretic shadows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// I_n, n >= 0 (I_0 is a smooth fiber).
    I(u32),
    /// I_n^*.
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    Good,
    Multiplicative,
    Additive,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::Good => "good",
            Reduction::Multiplicative => "multiplicative",
            Reduction::Additive => "additive",
        })
    }
}

impl KodairaType {
    pub fn reduction(self) -> Reduction {
        match self {
            KodairaType::I(0) => Reduction::Good,
            KodairaType::I(_) => Reduction::Multiplicative,
            _ => Reduction::Additive,
        }
    }

    /// Number of irreducible components.
    pub fn components(self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => n,
            KodairaType::IStar(n) => n + 5,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Absolute determinant of the root lattice spanned by the components
    /// missing the zero section.
    pub fn lattice_det(self) -> u64 {
        match self {
            KodairaType::I(0) | KodairaType::I(1) | KodairaType::II | KodairaType::IIStar => 1,
            KodairaType::I(n) => n as u64,
            KodairaType::IStar(_) => 4,
            KodairaType::III | KodairaType::IIIStar => 2,
            KodairaType::IV | KodairaType::IVStar => 3,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.components() > 1
    }

    /// The affine Dynkin type of a reducible fiber.
    pub fn affine_label(self) -> Option<crate::dynkin::AffineLabel> {
        use crate::dynkin::AffineLabel;
        match self {
            KodairaType::I(n) if n >= 2 => Some(AffineLabel::A(n - 1)),
            KodairaType::III => Some(AffineLabel::A(1)),
            KodairaType::IV => Some(AffineLabel::A(2)),
            KodairaType::IStar(n) => Some(AffineLabel::D(n + 4)),
            KodairaType::IVStar => Some(AffineLabel::E(6)),
            KodairaType::IIIStar => Some(AffineLabel::E(7)),
            KodairaType::IIStar => Some(AffineLabel::E(8)),
            _ => None,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown Kodaira label `{0}`")]
pub struct KodairaParseError(pub String);

impl FromStr for KodairaType {
    type Err = KodairaParseError;

    /// Accepts `I8`, `I_8`, `I1*`, `I_1^*`, `III`, `IV*`, `II^*` and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || KodairaParseError(s.to_string());
        let compact: String = s.chars().filter(|c| !matches!(c, '_' | '^' | '{' | '}' | ' ')).collect();
        let (body, star) = match compact.strip_suffix('*') {
            Some(b) => (b, true),
            None => (compact.as_str(), false),
        };
        let named = match (body, star) {
            ("II", false) => Some(KodairaType::II),
            ("III", false) => Some(KodairaType::III),
            ("IV", false) => Some(KodairaType::IV),
            ("II", true) => Some(KodairaType::IIStar),
            ("III", true) => Some(KodairaType::IIIStar),
            ("IV", true) => Some(KodairaType::IVStar),
            _ => None,
        };
        if let Some(k) = named {
            return Ok(k);
        }
        let n: u32 = body.strip_prefix('I').ok_or_else(err)?.parse().map_err(|_| err())?;
        Ok(if star { KodairaType::IStar(n) } else { KodairaType::I(n) })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["I8", "I0*", "I1*", "II", "III", "IV", "IV*", "III*", "II*", "I10"] {
            assert_eq!(s.parse::<KodairaType>().unwrap().to_string(), s);
        }
        assert_eq!("I_{10}".parse::<KodairaType>(), Ok(KodairaType::I(10)));
        assert_eq!("I_1^*".parse::<KodairaType>(), Ok(KodairaType::IStar(1)));
        assert!("V".parse::<KodairaType>().is_err());
        assert!("I".parse::<KodairaType>().is_err());
    }

    #[test]
    fn component_counts_and_reduction() {
        // Components minus one summed over (I5, I5, I1, I1) is rank 8.
        let fibers = [KodairaType::I(5), KodairaType::I(5), KodairaType::I(1), KodairaType::I(1)];
        assert_eq!(fibers.iter().map(|k| k.components() - 1).sum::<u32>(), 8);
        assert_eq!(KodairaType::IV.reduction(), Reduction::Additive);
        assert_eq!(KodairaType::I(8).reduction(), Reduction::Multiplicative);
    }
}
