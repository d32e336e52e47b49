use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::membership::MembershipFn;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("input `{name}` = {value} lies outside its universe [{lo}, {hi}]")]
    UniverseViolation { name: String, value: f64, lo: f64, hi: f64 },
    #[error("no value supplied for input `{0}`")]
    MissingInput(String),
    #[error("no rule fires for these inputs")]
    NoRuleFires,
    #[error("invalid fuzzy system: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinguisticVariable {
    pub name: String,
    pub universe: (f64, f64),
    #[serde(default)]
    pub units: String,
    pub terms: Vec<MembershipFn>,
}

impl LinguisticVariable {
    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    fn validate(&self) -> Result<(), String> {
        let (lo, hi) = self.universe;
        if !(lo < hi) {
            return Err(format!("{}: universe must have lo < hi", self.name));
        }
        if self.terms.is_empty() {
            return Err(format!("{}: no terms", self.name));
        }
        for (i, t) in self.terms.iter().enumerate() {
            if !t.shape.is_ordered() {
                return Err(format!("{}.{}: breakpoints must satisfy a <= b <= c <= d", self.name, t.label));
            }
            if self.terms[..i].iter().any(|o| o.label == t.label) {
                return Err(format!("{}: duplicate label {}", self.name, t.label));
            }
        }
        // Coverage: some term is non-zero everywhere in the universe.
        let n = 10_000;
        for i in 0..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            if self.terms.iter().all(|t| t.degree(x) <= 0.0) {
                return Err(format!("{}: terms leave a gap at {x}", self.name));
            }
        }
        Ok(())
    }
}

/// `IF v1 is L1 AND v2 is L2 ... THEN output is L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    #[serde(rename = "if")]
    pub antecedent: BTreeMap<String, String>,
    #[serde(rename = "then")]
    pub consequent: String,
}

impl Rule {
    pub fn new<'a>(antecedent: impl IntoIterator<Item = (&'a str, &'a str)>, consequent: &str) -> Self {
        Self {
            antecedent: antecedent.into_iter().map(|(v, l)| (v.to_owned(), l.to_owned())).collect(),
            consequent: consequent.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct CompiledRule {
    conjuncts: Vec<(usize, usize)>,
    consequent: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzySystemSpec {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<Rule>,
    resolution: usize,
}

/// Mamdani system: min for AND, max aggregation, centroid defuzzification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FuzzySystemSpec", into = "FuzzySystemSpec")]
pub struct FuzzySystem {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<Rule>,
    resolution: usize,
    compiled: Vec<CompiledRule>,
}

impl TryFrom<FuzzySystemSpec> for FuzzySystem {
    type Error = FuzzyError;
    fn try_from(s: FuzzySystemSpec) -> Result<Self, FuzzyError> {
        FuzzySystem::new(s.inputs, s.output, s.rules, s.resolution)
    }
}

impl From<FuzzySystem> for FuzzySystemSpec {
    fn from(s: FuzzySystem) -> Self {
        FuzzySystemSpec { inputs: s.inputs, output: s.output, rules: s.rules, resolution: s.resolution }
    }
}

impl FuzzySystem {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<Rule>,
        resolution: usize,
    ) -> Result<Self, FuzzyError> {
        let invalid = FuzzyError::Invalid;
        if resolution < 100 {
            return Err(invalid(format!("resolution must be >= 100, got {resolution}")));
        }
        for v in inputs.iter().chain(std::iter::once(&output)) {
            v.validate().map_err(invalid)?;
        }
        if rules.is_empty() {
            return Err(invalid("empty rule base".into()));
        }
        let mut compiled = Vec::with_capacity(rules.len());
        for (n, rule) in rules.iter().enumerate() {
            let mut conjuncts = Vec::new();
            for (var, label) in &rule.antecedent {
                let vi = inputs
                    .iter()
                    .position(|v| &v.name == var)
                    .ok_or_else(|| invalid(format!("rule {}: unknown input `{var}`", n + 1)))?;
                let ti = inputs[vi]
                    .term_index(label)
                    .ok_or_else(|| invalid(format!("rule {}: `{var}` has no term `{label}`", n + 1)))?;
                conjuncts.push((vi, ti));
            }
            if conjuncts.is_empty() {
                return Err(invalid(format!("rule {}: empty antecedent", n + 1)));
            }
            let consequent = output.term_index(&rule.consequent).ok_or_else(|| {
                invalid(format!("rule {}: output has no term `{}`", n + 1, rule.consequent))
            })?;
            compiled.push(CompiledRule { conjuncts, consequent });
        }
        Ok(Self { inputs, output, rules, resolution, compiled })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self, FuzzyError> {
        Self::new(self.inputs.clone(), self.output.clone(), self.rules.clone(), resolution)
    }

    fn crisp_vector(&self, crisp: &[(&str, f64)]) -> Result<Vec<f64>, FuzzyError> {
        self.inputs
            .iter()
            .map(|v| {
                let value = crisp
                    .iter()
                    .find(|(n, _)| *n == v.name)
                    .map(|&(_, x)| x)
                    .ok_or_else(|| FuzzyError::MissingInput(v.name.clone()))?;
                let (lo, hi) = v.universe;
                if !(lo..=hi).contains(&value) {
                    return Err(FuzzyError::UniverseViolation { name: v.name.clone(), value, lo, hi });
                }
                Ok(value)
            })
            .collect()
    }

    /// Aggregated firing strength of every output term, in declared order.
    pub fn term_strengths(&self, crisp: &[(&str, f64)]) -> Result<Vec<f64>, FuzzyError> {
        let x = self.crisp_vector(crisp)?;
        let mut out = vec![0.0_f64; self.output.terms.len()];
        for rule in &self.compiled {
            let w = rule
                .conjuncts
                .iter()
                .map(|&(vi, ti)| self.inputs[vi].terms[ti].degree(x[vi]))
                .fold(1.0, f64::min);
            out[rule.consequent] = out[rule.consequent].max(w);
        }
        Ok(out)
    }

    /// Strongest output label and its strength. Ties go to the first label
    /// in declared order.
    pub fn infer_label(&self, crisp: &[(&str, f64)]) -> Result<(&str, f64), FuzzyError> {
        let strengths = self.term_strengths(crisp)?;
        let mut best = 0;
        for (i, &s) in strengths.iter().enumerate() {
            if s > strengths[best] {
                best = i;
            }
        }
        if strengths[best] <= 0.0 {
            return Err(FuzzyError::NoRuleFires);
        }
        Ok((&self.output.terms[best].label, strengths[best]))
    }

    /// Centroid of the clipped, max-aggregated output surface sampled at
    /// `resolution` evenly spaced points across the output universe.
    pub fn defuzzify(&self, crisp: &[(&str, f64)]) -> Result<f64, FuzzyError> {
        let strengths = self.term_strengths(crisp)?;
        let (lo, hi) = self.output.universe;
        let step = (hi - lo) / (self.resolution - 1) as f64;
        let (mut moment, mut area) = (0.0, 0.0);
        for i in 0..self.resolution {
            let x = lo + step * i as f64;
            let mu = self
                .output
                .terms
                .iter()
                .zip(&strengths)
                .map(|(t, &s)| t.degree(x).min(s))
                .fold(0.0, f64::max);
            moment += x * mu;
            area += mu;
        }
        if area <= 0.0 {
            return Err(FuzzyError::NoRuleFires);
        }
        Ok((moment / area).clamp(lo, hi))
    }
}
