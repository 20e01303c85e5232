//! Run configuration as a single JSON document.
//!
//! Rationals are written as strings (`"3/2"`, `"0.5"`) or integers.
//! Unknown keys are rejected everywhere.

use std::fmt;
use std::fs;
use std::path::Path;

use netform_core::dynamics::{Arrival, DynamicRule, OrderPolicy, Schedule, DEFAULT_PLAN_DEPTH};
use netform_core::ext::{format_rational, parse_rational};
use netform_core::paths::DEFAULT_EXACT_NODE_BUDGET;
use netform_core::stability::DEFAULT_ENUMERATION_BUDGET;
use netform_core::{DisjointnessMode, GameParams, NodeId, PairObjective, Rational};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::io::Kind;

/// An exact rational in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalText(pub Rational);

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a string like \"3/2\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RationalText, E> {
                Ok(RationalText(Rational::from_integer(v as i128)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RationalText, E> {
                Ok(RationalText(Rational::from_integer(v as i128)))
            }
        }
        d.deserialize_any(V)
    }
}

fn r(n: i128) -> RationalText {
    RationalText(Rational::from_integer(n))
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    #[default]
    Node,
    Link,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveConfig {
    #[default]
    MinSum,
    MinPrimaryHeuristic,
    /// Minimizes `min(d, d′) + w·max(d, d′)`.
    MinCostExact(RationalText),
}

/// Game parameters; omitted fields take the defaults below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(rename = "A")]
    pub major_weight: RationalText,
    pub c_a: RationalText,
    pub c_b: RationalText,
    pub delta: RationalText,
    /// `τ`: backups required to every player, not just majors.
    #[serde(default = "yes")]
    pub tau: bool,
    #[serde(default)]
    pub transfers: bool,
    #[serde(default)]
    pub mode: ModeConfig,
    #[serde(default)]
    pub objective: ObjectiveConfig,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig {
            major_weight: r(4),
            c_a: RationalText(Rational::new(3, 2)),
            c_b: r(2),
            delta: r(1),
            tau: true,
            transfers: false,
            mode: ModeConfig::Node,
            objective: ObjectiveConfig::MinSum,
        }
    }
}

impl ParamsConfig {
    pub fn to_params(&self, exact_node_budget: usize) -> Result<GameParams> {
        let mut p = GameParams::new(self.major_weight.0, self.c_a.0, self.c_b.0, self.delta.0)?
            .with_full_reliability(self.tau)
            .with_transfers(self.transfers)
            .with_mode(match self.mode {
                ModeConfig::Node => DisjointnessMode::NodeDisjoint,
                ModeConfig::Link => DisjointnessMode::LinkDisjoint,
            })
            .with_objective(match self.objective {
                ObjectiveConfig::MinSum => PairObjective::MinSum,
                ObjectiveConfig::MinPrimaryHeuristic => PairObjective::MinPrimaryHeuristic,
                ObjectiveConfig::MinCostExact(w) => PairObjective::MinCostExact(w.0),
            });
        p.exact_node_budget = exact_node_budget;
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrderConfig {
    RoundRobin,
    UniformRandom(u64),
    Explicit(Vec<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrivalConfig {
    pub turn: usize,
    pub node: u32,
    pub kind: Kind,
}

/// Either explicit arrivals, or `majors` then `minors` joining one per
/// turn with labels `0..majors+minors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrivals: Vec<ArrivalConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub majors: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minors: Option<usize>,
    pub order: OrderConfig,
}

impl ScheduleConfig {
    pub fn to_schedule(&self) -> Result<Schedule> {
        let order = match &self.order {
            OrderConfig::RoundRobin => OrderPolicy::RoundRobin,
            OrderConfig::UniformRandom(s) => OrderPolicy::UniformRandom(*s),
            OrderConfig::Explicit(list) => {
                OrderPolicy::Explicit(list.iter().map(|&v| NodeId(v)).collect())
            }
        };
        let counted = self.majors.is_some() || self.minors.is_some();
        let schedule = match (self.arrivals.is_empty(), counted) {
            (false, false) => Schedule {
                arrivals: self
                    .arrivals
                    .iter()
                    .map(|a| Arrival {
                        turn: a.turn,
                        node: NodeId(a.node),
                        kind: a.kind.into(),
                    })
                    .collect(),
                order,
            },
            (true, true) => Schedule::majors_then_minors(
                self.majors.unwrap_or(0),
                self.minors.unwrap_or(0),
                order,
            ),
            (false, true) => {
                return Err(Error::input(
                    "schedule: give either arrivals or majors/minors, not both",
                ))
            }
            (true, false) => return Err(Error::input("schedule: no players")),
        };
        schedule.validate()?;
        Ok(schedule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleConfig {
    Rule2a {
        #[serde(default = "default_plan_depth")]
        plan_depth: usize,
    },
    Rule2b,
}

fn default_plan_depth() -> usize {
    DEFAULT_PLAN_DEPTH
}

impl From<RuleConfig> for DynamicRule {
    fn from(r: RuleConfig) -> Self {
        match r {
            RuleConfig::Rule2a { plan_depth } => DynamicRule::Rule2a { plan_depth },
            RuleConfig::Rule2b => DynamicRule::Rule2b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Largest player count for exhaustive enumeration.
    #[serde(default = "default_enumeration")]
    pub enumeration_players: usize,
    /// Node limit of the exact pair objective.
    #[serde(default = "default_exact")]
    pub exact_nodes: usize,
    /// Round limit of a simulation; `50·N` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
}

fn default_enumeration() -> usize {
    DEFAULT_ENUMERATION_BUDGET
}

fn default_exact() -> usize {
    DEFAULT_EXACT_NODE_BUDGET
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration_players: DEFAULT_ENUMERATION_BUDGET,
            exact_nodes: DEFAULT_EXACT_NODE_BUDGET,
            max_rounds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleConfig>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub budgets: Budgets,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn game_params(&self) -> Result<GameParams> {
        self.params.to_params(self.budgets.exact_nodes)
    }

    pub fn dynamic_rule(&self) -> DynamicRule {
        self.rule.map(Into::into).unwrap_or(DynamicRule::Rule2b)
    }
}
