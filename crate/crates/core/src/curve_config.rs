//! Named curve configurations with exact Gram matrices: the 34 curves on the
//! K3 cover, their images on the Enriques quotient, and lattice invariants.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivations::{divisorial_part_d, DivisorClassCombination};
use crate::dynkin::{build_e10_graph, DualGraph, DynkinError};
use crate::lattice::{self, LatticeInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveConfigError {
    #[error("unknown curve `{0}`")]
    UnknownCurveName(String),
    #[error("invalid integral set: {0}")]
    IntegralSetInvalid(String),
    #[error("unknown built-in configuration `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed configuration: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] DynkinError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveTag {
    Fiber,
    Section,
    Exceptional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    names: Vec<String>,
    gram: Vec<Vec<i64>>,
    tags: Vec<Option<CurveTag>>,
    index: HashMap<String, usize>,
}

/// On-disk configuration: `{"curves": [...], "gram": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub curves: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

pub const CONFIG_NAMES: [&str; 3] = ["Y34", "X20", "E10"];

impl CurveConfig {
    pub fn new(names: Vec<String>, gram: Vec<Vec<i64>>) -> Result<CurveConfig, CurveConfigError> {
        let n = names.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(CurveConfigError::Format(format!("Gram matrix is not {n} x {n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(CurveConfigError::Format(format!("Gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(CurveConfigError::Format(format!("duplicate curve `{name}`")));
            }
        }
        Ok(CurveConfig { tags: vec![None; n], names, gram, index })
    }

    pub fn with_tags(mut self, tags: Vec<Option<CurveTag>>) -> CurveConfig {
        assert_eq!(tags.len(), self.names.len());
        self.tags = tags;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn tag(&self, name: &str) -> Option<CurveTag> {
        self.index.get(name).and_then(|&i| self.tags[i])
    }

    pub fn index_of(&self, name: &str) -> Result<usize, CurveConfigError> {
        self.index.get(name).copied().ok_or_else(|| CurveConfigError::UnknownCurveName(name.to_string()))
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<i64, CurveConfigError> {
        Ok(self.gram[self.index_of(a)?][self.index_of(b)?])
    }

    /// The configuration restricted to `names`, in that order.
    pub fn restrict(&self, names: &[&str]) -> Result<CurveConfig, CurveConfigError> {
        let idx: Vec<usize> = names.iter().map(|n| self.index_of(n)).collect::<Result<_, _>>()?;
        let gram = idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect()).collect();
        let tags = idx.iter().map(|&i| self.tags[i]).collect();
        Ok(CurveConfig::new(names.iter().map(|s| s.to_string()).collect(), gram)?.with_tags(tags))
    }

    pub fn to_dual_graph(&self) -> Result<DualGraph, CurveConfigError> {
        Ok(DualGraph::from_gram(&self.names, &self.gram)?)
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile { curves: self.names.clone(), gram: self.gram.clone() }
    }

    pub fn from_json(text: &str) -> Result<CurveConfig, CurveConfigError> {
        let f: ConfigFile = serde_json::from_str(text).map_err(|e| CurveConfigError::Format(e.to_string()))?;
        CurveConfig::new(f.curves, f.gram)
    }

    pub fn builtin(name: &str) -> Result<CurveConfig, CurveConfigError> {
        match name {
            "Y34" => Ok(build_y_config()),
            "X20" => Ok(build_x_config()),
            "E10" => {
                let g = build_e10_graph();
                CurveConfig::new(g.names().to_vec(), g.gram())
            }
            _ => Err(CurveConfigError::UnknownBuiltin(name.to_string())),
        }
    }
}

/// Component of each fiber met by s0..s4 and m0..m4: over t = 1, t = ∞,
/// t = ω and t = ω^2.
const SECTION_INCIDENCE: [(&str, [&str; 4]); 10] = [
    ("s0", ["F1", "Finf", "Fw", "Fw2"]),
    ("s1", ["E1_8", "Einf_6", "Fw", "Fw2"]),
    ("s2", ["E1_6", "Einf_2", "Fw", "Fw2"]),
    ("s3", ["E1_4", "Einf_8", "Fw", "Fw2"]),
    ("s4", ["E1_2", "Einf_4", "Fw", "Fw2"]),
    ("m0", ["E1_5", "Einf_5", "Ew", "Ew2"]),
    ("m1", ["E1_3", "Einf_1", "Ew", "Ew2"]),
    ("m2", ["E1_1", "Einf_7", "Ew", "Ew2"]),
    ("m3", ["E1_9", "Einf_3", "Ew", "Ew2"]),
    ("m4", ["E1_7", "Einf_9", "Ew", "Ew2"]),
];

/// Components of the I10 fiber over t = `tag` in decagon order.
fn decagon(tag: &str) -> Vec<String> {
    let mut v = vec![format!("F{tag}")];
    v.extend((1..=9).map(|i| format!("E{tag}_{i}")));
    v
}

/// The 34 curves on the K3 cover: the components of the four reducible fibers
/// and the ten torsion sections.
pub fn build_y_config() -> CurveConfig {
    let mut names = decagon("1");
    names.extend(decagon("inf"));
    names.extend(["Fw", "Ew", "Fw2", "Ew2"].map(String::from));
    names.extend((0..5).map(|i| format!("s{i}")));
    names.extend((0..5).map(|i| format!("m{i}")));
    let n = names.len();
    let mut gram = vec![vec![0i64; n]; n];
    let idx: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut set = |a: &str, b: &str, v: i64| {
        let (i, j) = (idx[a], idx[b]);
        gram[i][j] = v;
        gram[j][i] = v;
    };
    for tag in ["1", "inf"] {
        let d = decagon(tag);
        for k in 0..10 {
            set(&d[k], &d[(k + 1) % 10], 1);
        }
    }
    set("Fw", "Ew", 2);
    set("Fw2", "Ew2", 2);
    for i in 0..5 {
        set(&format!("s{i}"), &format!("m{i}"), 1);
    }
    for (sec, comps) in SECTION_INCIDENCE {
        for c in comps {
            set(sec, c, 1);
        }
    }
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    let tags = names
        .iter()
        .map(|s| Some(if s.starts_with('s') || s.starts_with('m') { CurveTag::Section } else { CurveTag::Fiber }))
        .collect();
    CurveConfig::new(names, gram).expect("well-formed").with_tags(tags)
}

/// The twelve curves with coefficient -1 in (D).
pub fn integral_set() -> Vec<String> {
    divisorial_part_d().support()
}

/// Images of the non-integral curves on the quotient together with the
/// images discarded because they are not (-2)-curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub config: CurveConfig,
    /// Name and self-intersection of each discarded image.
    pub dropped: Vec<(String, i64)>,
}

/// Pushes non-integral curves through the purely inseparable double cover
/// and blows down the images of the integral curves.
///
/// For C non-integral, π_*C pairs with π_*D as 2⟨C, D⟩ (π^*π_*C = 2C). An
/// integral (-2)-curve e maps isomorphically to a (-1)-curve e' with
/// ⟨π_*C, e'⟩ = ⟨C, e⟩. Contracting the pairwise disjoint e' adds
/// ⟨C, e⟩⟨D, e⟩ for each e. Images of square other than -2 are dropped.
pub fn quotient_blowdown_gram(cfg: &CurveConfig, integral: &[String]) -> Result<QuotientResult, CurveConfigError> {
    let int_idx: Vec<usize> = integral.iter().map(|n| cfg.index_of(n)).collect::<Result<_, _>>()?;
    for (a, &i) in int_idx.iter().enumerate() {
        if cfg.gram[i][i] != -2 {
            return Err(CurveConfigError::IntegralSetInvalid(format!("`{}` is not a (-2)-curve", cfg.names[i])));
        }
        for &j in &int_idx[a + 1..] {
            if cfg.gram[i][j] != 0 {
                return Err(CurveConfigError::IntegralSetInvalid(format!(
                    "`{}` and `{}` meet, so their images cannot both be contracted",
                    cfg.names[i], cfg.names[j]
                )));
            }
        }
    }
    let rest: Vec<usize> = (0..cfg.len()).filter(|i| !int_idx.contains(i)).collect();
    let pair = |c: usize, d: usize| -> i64 {
        2 * cfg.gram[c][d] + int_idx.iter().map(|&e| cfg.gram[c][e] * cfg.gram[d][e]).sum::<i64>()
    };
    let (keep, drop): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&c| pair(c, c) == -2);
    let gram = keep.iter().map(|&c| keep.iter().map(|&d| pair(c, d)).collect()).collect();
    let names = keep.iter().map(|&c| cfg.names[c].clone()).collect();
    let tags = keep.iter().map(|&c| cfg.tags[c]).collect();
    Ok(QuotientResult {
        config: CurveConfig::new(names, gram)?.with_tags(tags),
        dropped: drop.iter().map(|&c| (cfg.names[c].clone(), pair(c, c))).collect(),
    })
}

/// The twenty (-2)-curves on the Enriques quotient.
pub fn build_x_config() -> CurveConfig {
    quotient_blowdown_gram(&build_y_config(), &integral_set()).expect("integral set is valid").config
}

pub fn divisor_pairing(
    cfg: &CurveConfig,
    d1: &DivisorClassCombination,
    d2: &DivisorClassCombination,
) -> Result<i64, CurveConfigError> {
    let mut total = 0;
    for (a, x) in d1.iter() {
        for (b, y) in d2.iter() {
            total += x * y * cfg.pairing(a, b)?;
        }
    }
    Ok(total)
}

pub fn lattice_invariants(cfg: &CurveConfig) -> LatticeInvariants {
    lattice::lattice_invariants(&cfg.gram)
}
