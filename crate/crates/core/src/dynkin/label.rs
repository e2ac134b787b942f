//! Affine Dynkin labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An affine Dynkin type: Ã_n (n >= 1), D̃_n (n >= 4) or Ẽ_6, Ẽ_7, Ẽ_8.
/// Written `~A8`, `~D6`, `~E8` in text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineLabel {
    A(u32),
    D(u32),
    E(u32),
}

impl AffineLabel {
    /// Rank of the corresponding finite root system; one less than the
    /// number of vertices.
    pub fn rank(self) -> u32 {
        match self {
            AffineLabel::A(n) | AffineLabel::D(n) | AffineLabel::E(n) => n,
        }
    }

    pub fn vertices(self) -> u32 {
        self.rank() + 1
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineLabel::A(n) => write!(f, "~A{n}"),
            AffineLabel::D(n) => write!(f, "~D{n}"),
            AffineLabel::E(n) => write!(f, "~E{n}"),
        }
    }
}

impl FromStr for AffineLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.strip_prefix('~').ok_or_else(|| format!("bad affine label `{s}`"))?;
        let (kind, n) = body.split_at(1.min(body.len()));
        let n: u32 = n.parse().map_err(|_| format!("bad affine label `{s}`"))?;
        match (kind, n) {
            ("A", n) if n >= 1 => Ok(AffineLabel::A(n)),
            ("D", n) if n >= 4 => Ok(AffineLabel::D(n)),
            ("E", 6..=8) => Ok(AffineLabel::E(n)),
            _ => Err(format!("bad affine label `{s}`")),
        }
    }
}

impl Serialize for AffineLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["~A1", "~A8", "~D4", "~D6", "~E6", "~E8"] {
            assert_eq!(s.parse::<AffineLabel>().unwrap().to_string(), s);
        }
        assert!("~D3".parse::<AffineLabel>().is_err());
        assert!("~E9".parse::<AffineLabel>().is_err());
        assert!("A3".parse::<AffineLabel>().is_err());
    }
}
