//! Problem files: a chart, an ideal, a mark and engine limits, stored as
//! JSON.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::parse_rational;
use crate::log_calculus::MarkedIdeal;
use crate::resolution_engine::Config;
use crate::toroidal_chart::{Character, Chart};
use crate::Poly;

/// A problem as read from disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub chart: ChartSpec,
    /// Generators of the ideal; an empty list is the zero ideal.
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default = "default_mark")]
    pub mark: u64,
    /// Codimension of `V(ideal)`, used by embedded resolution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<usize>,
    #[serde(default)]
    pub config: ConfigSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    #[serde(default = "default_id")]
    pub id: String,
    #[serde(default)]
    pub ordinary: Vec<String>,
    /// Named monoid generators with their lattice vectors.
    #[serde(default)]
    pub monomial: Vec<GeneratorSpec>,
    /// Lattice rank; defaults to the length of the generator vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub characters: Vec<CharacterSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub vector: Vec<i64>,
}

/// A character as rational weights (`"p/q"` strings) on the lattice and on
/// the ordinary variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub lattice: Vec<String>,
    #[serde(default)]
    pub ordinary: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_max_nodes")]
    pub max_nodes: usize,
    /// Log level name such as `"warn"` or `"debug"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbosity: Option<String>,
}

impl Default for ConfigSpec {
    fn default() -> Self {
        ConfigSpec { max_depth: default_max_depth(), max_nodes: default_max_nodes(), verbosity: None }
    }
}

fn default_mark() -> u64 {
    1
}

fn default_id() -> String {
    "X".to_string()
}

fn default_max_depth() -> usize {
    Config::default().max_depth
}

fn default_max_nodes() -> usize {
    Config::default().max_nodes
}

/// Byte offset of a 1-based line and column in `text`.
pub(crate) fn offset_of(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: offset_of(text, e.line(), e.column()),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })?;
    spec.validate()?;
    Ok(spec)
}

impl ProblemSpec {
    /// Checks every invariant by building the chart and parsing the ideal.
    pub fn validate(&self) -> Result<()> {
        let chart = self.build_chart()?;
        self.ideal(&chart)?;
        if self.mark == 0 {
            return Err(Error::Invalid("mark: must be at least 1".into()));
        }
        if self.config.max_depth == 0 {
            return Err(Error::Invalid("config.max_depth: must be at least 1".into()));
        }
        Ok(())
    }

    pub fn build_chart(&self) -> Result<Chart> {
        let c = &self.chart;
        let mut seen: Vec<&str> = Vec::new();
        let names =
            c.ordinary.iter().enumerate().map(|(i, n)| (format!("chart.ordinary[{i}]"), n.as_str())).chain(
                c.monomial.iter().enumerate().map(|(i, g)| (format!("chart.monomial[{i}].name"), g.name.as_str())),
            );
        for (path, name) in names {
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                return Err(Error::Invalid(format!("{path}: {name:?} is not an identifier")));
            }
            if seen.contains(&name) {
                return Err(Error::Invalid(format!("{path}: duplicate variable name {name}")));
            }
            seen.push(name);
        }
        let rank = c.rank.or_else(|| c.monomial.first().map(|g| g.vector.len())).unwrap_or(0);
        for (i, g) in c.monomial.iter().enumerate() {
            if g.vector.len() != rank {
                return Err(Error::Invalid(format!("chart.monomial[{i}].vector: expected {rank} entries")));
            }
        }
        let characters = c
            .characters
            .iter()
            .enumerate()
            .map(|(i, ch)| {
                let parse = |field: &str, xs: &[String]| {
                    xs.iter()
                        .enumerate()
                        .map(|(j, s)| {
                            parse_rational(s)
                                .map_err(|e| Error::Invalid(format!("chart.characters[{i}].{field}[{j}]: {e}")))
                        })
                        .collect::<Result<Vec<_>>>()
                };
                let lattice = parse("lattice", &ch.lattice)?;
                let mut ordinary = parse("ordinary", &ch.ordinary)?;
                ordinary.resize(c.ordinary.len(), crate::Rational::from_integer(0.into()));
                Ok(Character { lattice, ordinary })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut chart = Chart::with_data(
            c.id.clone(),
            c.ordinary.clone(),
            c.monomial.iter().map(|g| g.name.clone()).collect(),
            rank,
            c.monomial.iter().map(|g| g.vector.clone()).collect(),
            characters,
            Vec::new(),
        )
        .map_err(|e| Error::Invalid(format!("chart: {e}")))?;
        chart.inverted = parse_list(&chart, "chart.inverted", &c.inverted)?;
        Ok(chart)
    }

    /// The ideal generators on `chart`.
    pub fn ideal(&self, chart: &Chart) -> Result<Vec<Poly>> {
        let gens = parse_list(chart, "ideal", &self.ideal)?;
        if let Some(i) = gens.iter().position(|f| !chart.is_semi_invariant(f)) {
            return Err(Error::Invalid(format!("ideal[{i}]: generator is not semi-invariant")));
        }
        Ok(gens)
    }

    pub fn marked(&self, chart: &Chart) -> Result<MarkedIdeal> {
        Ok(MarkedIdeal::new(self.ideal(chart)?, self.mark))
    }

    pub fn config(&self) -> Config {
        Config { max_depth: self.config.max_depth, max_nodes: self.config.max_nodes }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes") + "\n"
    }
}

fn parse_list(chart: &Chart, field: &str, texts: &[String]) -> Result<Vec<Poly>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, s)| {
            chart.parse(s).map_err(|e| match e {
                Error::Parse { position, message } => {
                    Error::Parse { position, message: format!("{field}[{i}] at offset {position}: {message}") }
                }
                other => Error::Invalid(format!("{field}[{i}]: {other}")),
            })
        })
        .collect()
}
