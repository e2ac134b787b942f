//! Exclusion rules for multiple fibers of genus-one fibrations on Enriques
//! surfaces in characteristic 2, and the existence table for the seven dual
//! graph types.
//!
//! Smooth multiple fibers never exclude anything here, because only
//! reducible forced-multiple fibers are ever asserted; the engine therefore
//! implements only the three exclusion rules:
//! - a multiple fiber of additive type rules out singular surfaces;
//! - a multiple fiber of multiplicative type rules out classical and
//!   supersingular surfaces;
//! - two multiple fibers on one fibration rule out singular and supersingular
//!   surfaces.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::{
    kodaira_assignments, maximal_parabolics, multiple_fiber_witness, AffineLabel, DualGraph, DynkinError, FULL_RANK,
};
use crate::kodaira::{KodairaType, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesError {
    #[error("malformed facts: {0}")]
    MalformedFacts(String),
    #[error("ambiguous fiber types for {parabolic}: {branches:?}")]
    AmbiguousAssignment { parabolic: String, branches: Vec<String> },
    #[error("no fiber types in the catalogue fit {0}")]
    NoAssignment(String),
    #[error("graph has no parabolic subdiagram of rank 8 (largest rank {0})")]
    NotFullRank(u32),
    #[error("unknown built-in facts `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Graph(#[from] DynkinError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnriquesClass {
    Singular,
    Classical,
    Supersingular,
}

impl EnriquesClass {
    pub const ALL: [EnriquesClass; 3] =
        [EnriquesClass::Singular, EnriquesClass::Classical, EnriquesClass::Supersingular];
}

impl fmt::Display for EnriquesClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnriquesClass::Singular => "singular",
            EnriquesClass::Classical => "classical",
            EnriquesClass::Supersingular => "supersingular",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassSet(pub BTreeSet<EnriquesClass>);

impl ClassSet {
    pub fn all() -> ClassSet {
        ClassSet(EnriquesClass::ALL.into_iter().collect())
    }

    pub fn of(classes: &[EnriquesClass]) -> ClassSet {
        ClassSet(classes.iter().copied().collect())
    }

    pub fn contains(&self, c: EnriquesClass) -> bool {
        self.0.contains(&c)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersect(&self, other: &ClassSet) -> ClassSet {
        ClassSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none (non-existent)");
        }
        let v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", v.join(", "))
    }
}

/// A reducible fiber, given by its Kodaira type or only by its affine
/// Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberSpec {
    Kodaira(KodairaType),
    Affine(AffineLabel),
}

impl FiberSpec {
    /// Reduction type when determined: ~A1 and ~A2 may be multiplicative
    /// (I2, I3) or additive (III, IV).
    pub fn reduction(self) -> Option<Reduction> {
        match self {
            FiberSpec::Kodaira(k) => Some(k.reduction()),
            FiberSpec::Affine(AffineLabel::A(n)) if n >= 3 => Some(Reduction::Multiplicative),
            FiberSpec::Affine(AffineLabel::A(_)) => None,
            FiberSpec::Affine(_) => Some(Reduction::Additive),
        }
    }
}

impl fmt::Display for FiberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberSpec::Kodaira(k) => write!(f, "{k}"),
            FiberSpec::Affine(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for FiberSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.starts_with('~') {
            s.parse().map(FiberSpec::Affine)
        } else {
            s.parse::<KodairaType>().map(FiberSpec::Kodaira).map_err(|e| e.to_string())
        }
    }
}

/// A forced-multiple fiber: a specific fiber of the fibration, or only its
/// reduction kind (`reducible` when even that is unknown).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipleSpec {
    Fiber(FiberSpec),
    Reducible,
    Kind(Reduction),
}

impl MultipleSpec {
    pub fn reduction(self) -> Option<Reduction> {
        match self {
            MultipleSpec::Fiber(f) => f.reduction(),
            MultipleSpec::Reducible => None,
            MultipleSpec::Kind(r) => Some(r),
        }
    }
}

impl fmt::Display for MultipleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultipleSpec::Fiber(x) => write!(f, "{x}"),
            MultipleSpec::Reducible => f.write_str("reducible"),
            MultipleSpec::Kind(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for MultipleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reducible" => Ok(MultipleSpec::Reducible),
            "multiplicative" => Ok(MultipleSpec::Kind(Reduction::Multiplicative)),
            "additive" => Ok(MultipleSpec::Kind(Reduction::Additive)),
            _ => s.parse().map(MultipleSpec::Fiber),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    PaperStated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::PaperStated => "paper-stated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    /// Reducible fibers (possibly incomplete for stated facts).
    pub fibers: Vec<FiberSpec>,
    pub multiple: Vec<MultipleSpec>,
    /// Type of the parabolic subdiagram, when computed from a graph.
    pub parabolic: Option<String>,
}

impl Fibration {
    pub fn new(fibers: &[&str], multiple: &[&str]) -> Fibration {
        Fibration {
            fibers: fibers.iter().map(|s| s.parse().expect("valid fiber")).collect(),
            multiple: multiple.iter().map(|s| s.parse().expect("valid multiple fiber")).collect(),
            parabolic: None,
        }
    }

    pub fn describe(&self) -> String {
        let f: Vec<String> = self.fibers.iter().map(ToString::to_string).collect();
        let m: Vec<String> = self.multiple.iter().map(ToString::to_string).collect();
        format!("({}) multiple [{}]", f.join(", "), m.join(", "))
    }

    fn validate(&self) -> Result<(), RulesError> {
        for m in &self.multiple {
            if let MultipleSpec::Fiber(f) = m {
                let listed = self.fibers.iter().filter(|x| *x == f).count();
                let claimed = self.multiple.iter().filter(|x| *x == m).count();
                if claimed > listed {
                    return Err(RulesError::MalformedFacts(format!("multiple fiber {f} is not among the fibers")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationFacts {
    pub name: String,
    pub provenance: Provenance,
    pub fibrations: Vec<Fibration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationRecord {
    pub fibers: Vec<String>,
    #[serde(default)]
    pub multiple: Vec<String>,
}

/// On-disk facts: `{"fibrations": [{"fibers": [...], "multiple": [...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactsFile {
    pub fibrations: Vec<FibrationRecord>,
}

pub const FACTS_NAMES: [&str; 7] = ["factsI", "factsII", "factsIII", "factsIV", "factsV", "factsVI", "factsVII"];

impl FibrationFacts {
    pub fn from_json(name: &str, text: &str) -> Result<FibrationFacts, RulesError> {
        let file: FactsFile = serde_json::from_str(text).map_err(|e| RulesError::MalformedFacts(e.to_string()))?;
        let mut fibrations = Vec::new();
        for r in file.fibrations {
            let fibers =
                r.fibers.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(RulesError::MalformedFacts)?;
            let multiple =
                r.multiple.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(RulesError::MalformedFacts)?;
            let f = Fibration { fibers, multiple, parabolic: None };
            f.validate()?;
            fibrations.push(f);
        }
        Ok(FibrationFacts { name: name.to_string(), provenance: Provenance::PaperStated, fibrations })
    }

    pub fn to_file(&self) -> FactsFile {
        FactsFile {
            fibrations: self
                .fibrations
                .iter()
                .map(|f| FibrationRecord {
                    fibers: f.fibers.iter().map(ToString::to_string).collect(),
                    multiple: f.multiple.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }

    /// Facts for the seven types. Types I-VI are transcribed statements;
    /// type VII is computed from its dual graph.
    pub fn builtin(name: &str) -> Result<FibrationFacts, RulesError> {
        let stated = |fibrations: Vec<Fibration>| FibrationFacts {
            name: name.to_string(),
            provenance: Provenance::PaperStated,
            fibrations,
        };
        // Types III-V: one fibration with two reducible multiple fibers and one
        // with a reducible multiple fiber of multiplicative type.
        let three_to_five = |fibers: &[&str]| {
            stated(vec![Fibration::new(fibers, &["reducible", "reducible"]), Fibration::new(&[], &["multiplicative"])])
        };
        match name {
            "factsI" => Ok(stated(vec![Fibration::new(&["I8", "III"], &["I8"])])),
            "factsII" => Ok(stated(vec![Fibration::new(&["I4", "I1*"], &["I4"])])),
            "factsIII" => Ok(three_to_five(&["~D6", "~A1", "~A1"])),
            "factsIV" => Ok(three_to_five(&["~A3", "~A3", "~A1", "~A1"])),
            "factsV" => Ok(three_to_five(&["~A5", "~A2", "~A1"])),
            "factsVI" => Ok(stated(vec![Fibration::new(&["I5", "I5"], &["I5"])])),
            "factsVII" => {
                let mut f = facts_from_graph(&crate::dynkin::build_type_vii_graph())?;
                f.name = name.to_string();
                Ok(f)
            }
            _ => Err(RulesError::UnknownBuiltin(name.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    AdditiveMultipleFiber,
    MultiplicativeMultipleFiber,
    TwoMultipleFibers,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::AdditiveMultipleFiber => "multiple fiber of additive type",
            Rule::MultiplicativeMultipleFiber => "multiple fiber of multiplicative type",
            Rule::TwoMultipleFibers => "two multiple fibers",
        })
    }
}

/// One class removed by one rule on one fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub class: EnriquesClass,
    pub fibration: usize,
    pub description: String,
    pub rule: Rule,
}

fn exclusions(f: &Fibration) -> Vec<(EnriquesClass, Rule)> {
    use EnriquesClass::*;
    let mut out = Vec::new();
    if f.multiple.iter().any(|m| m.reduction() == Some(Reduction::Additive)) {
        out.push((Singular, Rule::AdditiveMultipleFiber));
    }
    if f.multiple.iter().any(|m| m.reduction() == Some(Reduction::Multiplicative)) {
        out.push((Classical, Rule::MultiplicativeMultipleFiber));
        out.push((Supersingular, Rule::MultiplicativeMultipleFiber));
    }
    if f.multiple.len() >= 2 {
        out.push((Singular, Rule::TwoMultipleFibers));
        out.push((Supersingular, Rule::TwoMultipleFibers));
    }
    out
}

pub fn admissible_classes_for_fibration(f: &Fibration) -> Result<ClassSet, RulesError> {
    f.validate()?;
    let mut set = ClassSet::all();
    for (c, _) in exclusions(f) {
        set.0.remove(&c);
    }
    Ok(set)
}

/// Intersection of the admissible classes over all fibrations.
pub fn classify(facts: &FibrationFacts) -> Result<ClassSet, RulesError> {
    let mut set = ClassSet::all();
    for f in &facts.fibrations {
        set = set.intersect(&admissible_classes_for_fibration(f)?);
    }
    Ok(set)
}

/// Every (class, fibration, rule) triple that removes a class.
pub fn trace(facts: &FibrationFacts) -> Vec<Exclusion> {
    let mut out = Vec::new();
    for (i, f) in facts.fibrations.iter().enumerate() {
        for (class, rule) in exclusions(f) {
            out.push(Exclusion { class, fibration: i, description: f.describe(), rule });
        }
    }
    out.sort_by_key(|e| (e.class, e.fibration));
    out
}

/// Fibration facts read off a dual graph: one record per distinct maximal
/// parabolic type and multiple-fiber pattern.
pub fn facts_from_graph(g: &DualGraph) -> Result<FibrationFacts, RulesError> {
    let max = maximal_parabolics(g)?;
    let top = max.first().map(|p| p.rank()).unwrap_or(0);
    if top != FULL_RANK {
        return Err(RulesError::NotFullRank(top));
    }
    let mut fibrations: Vec<Fibration> = Vec::new();
    for p in &max {
        let assignments = kodaira_assignments(p);
        let fibers = match assignments.as_slice() {
            [one] => one.clone(),
            [] => return Err(RulesError::NoAssignment(p.describe(g))),
            many => {
                return Err(RulesError::AmbiguousAssignment {
                    parabolic: p.describe(g),
                    branches: many
                        .iter()
                        .map(|a| a.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                        .collect(),
                })
            }
        };
        let mut multiple = Vec::new();
        for (i, k) in fibers.iter().enumerate() {
            if multiple_fiber_witness(g, p, i)?.is_some() {
                multiple.push(MultipleSpec::Fiber(FiberSpec::Kodaira(*k)));
            }
        }
        let f = Fibration {
            fibers: fibers.into_iter().map(FiberSpec::Kodaira).collect(),
            multiple,
            parabolic: Some(p.type_string()),
        };
        if !fibrations.contains(&f) {
            fibrations.push(f);
        }
    }
    fibrations.sort_by_key(|f| (f.fibers.len(), f.describe()));
    Ok(FibrationFacts { name: "graph".into(), provenance: Provenance::Computed, fibrations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    NotExists,
    ExistsByConstruction,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cell::NotExists => "x",
            Cell::ExistsByConstruction => "o",
        })
    }
}

pub const TYPES: [&str; 7] = ["I", "II", "III", "IV", "V", "VI", "VII"];

/// The published existence table: rows singular, classical, supersingular.
pub const PUBLISHED_TABLE: [[bool; 7]; 3] = [
    [true, true, false, false, false, true, false],
    [false, false, false, false, false, false, true],
    [false, false, false, false, false, false, true],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    /// `cells[row][column]`, rows in `EnriquesClass::ALL` order.
    pub cells: [[Cell; 7]; 3],
    /// Construction check group backing each existence cell, by column.
    pub constructions: [Option<&'static str>; 7],
    pub verdicts: Vec<(String, ClassSet)>,
}

impl Table1 {
    pub fn matches_published(&self) -> bool {
        (0..3).all(|r| (0..7).all(|c| (self.cells[r][c] == Cell::ExistsByConstruction) == PUBLISHED_TABLE[r][c]))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| class |");
        for t in TYPES {
            s.push_str(&format!(" {t} |"));
        }
        s.push_str("\n|---|");
        s.push_str(&"---|".repeat(7));
        for (r, class) in EnriquesClass::ALL.iter().enumerate() {
            s.push_str(&format!("\n| {class} |"));
            for c in 0..7 {
                s.push_str(&format!(" {} |", self.cells[r][c]));
            }
        }
        s.push('\n');
        s
    }
}

pub fn table1_report() -> Result<Table1, RulesError> {
    let constructions = [Some("typeI"), Some("typeII"), None, None, None, Some("typeVI"), Some("sigmaY")];
    let mut cells = [[Cell::NotExists; 7]; 3];
    let mut verdicts = Vec::new();
    for (c, name) in FACTS_NAMES.iter().enumerate() {
        let set = classify(&FibrationFacts::builtin(name)?)?;
        for (r, class) in EnriquesClass::ALL.iter().enumerate() {
            if set.contains(*class) {
                cells[r][c] = Cell::ExistsByConstruction;
            }
        }
        verdicts.push((TYPES[c].to_string(), set));
    }
    Ok(Table1 { cells, constructions, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use EnriquesClass::*;

    #[test]
    fn single_fibration_rules() {
        let f = Fibration::new(&["I6", "IV", "I2"], &["IV"]);
        assert_eq!(admissible_classes_for_fibration(&f), Ok(ClassSet::of(&[Classical, Supersingular])));
        let f = Fibration::new(&["I8", "III"], &["I8"]);
        assert_eq!(admissible_classes_for_fibration(&f), Ok(ClassSet::of(&[Singular])));
        let f = Fibration::new(&["~A3", "~A3", "~A1", "~A1"], &["reducible", "reducible"]);
        assert_eq!(admissible_classes_for_fibration(&f), Ok(ClassSet::of(&[Classical])));
        let f = Fibration::new(&["I9"], &[]);
        assert_eq!(admissible_classes_for_fibration(&f), Ok(ClassSet::all()));
    }

    #[test]
    fn malformed_multiple() {
        let f = Fibration::new(&["I9"], &["I5"]);
        assert!(matches!(admissible_classes_for_fibration(&f), Err(RulesError::MalformedFacts(_))));
    }

    #[test]
    fn builtin_verdicts() {
        let c = |n: &str| classify(&FibrationFacts::builtin(n).unwrap()).unwrap();
        assert_eq!(c("factsVII"), ClassSet::of(&[Classical, Supersingular]));
        assert!(c("factsIII").is_empty());
        assert_eq!(c("factsVI"), ClassSet::of(&[Singular]));
        assert_eq!(c("factsI"), ClassSet::of(&[Singular]));
    }

    #[test]
    fn type_vii_facts() {
        let facts = FibrationFacts::builtin("factsVII").unwrap();
        let d: Vec<String> = facts.fibrations.iter().map(Fibration::describe).collect();
        assert_eq!(
            d,
            ["(I9) multiple []", "(I5, I5) multiple []", "(I8, III) multiple [III]", "(I6, IV, I2) multiple [IV]",]
        );
        assert_eq!(facts.provenance, Provenance::Computed);
    }

    #[test]
    fn e10_facts() {
        let facts = facts_from_graph(&crate::dynkin::build_e10_graph()).unwrap();
        assert_eq!(facts.fibrations.len(), 1);
        assert_eq!(facts.fibrations[0].describe(), "(II*) multiple [II*]");
    }

    #[test]
    fn table() {
        let t = table1_report().unwrap();
        assert!(t.matches_published(), "{}", t.to_markdown());
    }

    #[test]
    fn json() {
        let f = FibrationFacts::from_json("x", r#"{"fibrations":[{"fibers":["I6","IV","I2"],"multiple":["IV"]}]}"#)
            .unwrap();
        assert_eq!(classify(&f), Ok(ClassSet::of(&[Classical, Supersingular])));
        assert!(FibrationFacts::from_json("x", r#"{"fibrations":[{"fibers":["Q7"]}]}"#).is_err());
        let back = FibrationFacts::from_json("x", &serde_json::to_string(&f.to_file()).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
