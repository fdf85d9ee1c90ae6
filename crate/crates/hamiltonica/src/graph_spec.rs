//! Reproducible descriptions of the graphs a report talks about.

use std::fmt;
use std::str::FromStr;

use hamiltonica_core::constructions::{
    build_t_delta, cartesian_product, complete_graph, cycle_graph, double_star, path_graph, petersen, star,
};
use hamiltonica_core::io::{from_graph6, to_graph6};
use hamiltonica_core::{Graph, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GraphSpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    DoubleStar { left: usize, right: usize },
    Complete { n: usize },
    Petersen,
    TDelta { delta: usize },
    Graph6 { code: String },
    Product { left: Box<GraphSpec>, right: Box<GraphSpec> },
}

impl GraphSpec {
    pub fn product(left: GraphSpec, right: GraphSpec) -> Self {
        GraphSpec::Product {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn graph6(g: &Graph) -> Self {
        GraphSpec::Graph6 { code: to_graph6(g) }
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Path { n } => path_graph(*n),
            GraphSpec::Cycle { n } => cycle_graph(*n),
            GraphSpec::Star { leaves } => star(*leaves),
            GraphSpec::DoubleStar { left, right } => double_star(*left, *right),
            GraphSpec::Complete { n } => Ok(complete_graph(*n)),
            GraphSpec::Petersen => Ok(petersen()),
            GraphSpec::TDelta { delta } => build_t_delta(*delta),
            GraphSpec::Graph6 { code } => from_graph6(code),
            GraphSpec::Product { left, right } => cartesian_product(&left.build()?, &right.build()?),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path { n } => write!(f, "P_{n}"),
            GraphSpec::Cycle { n } => write!(f, "C_{n}"),
            GraphSpec::Star { leaves } => write!(f, "K_1,{leaves}"),
            GraphSpec::DoubleStar { left, right } => write!(f, "S_{left},{right}"),
            GraphSpec::Complete { n } => write!(f, "K_{n}"),
            GraphSpec::Petersen => write!(f, "Petersen"),
            GraphSpec::TDelta { delta } => write!(f, "T_{delta}"),
            GraphSpec::Graph6 { code } => write!(f, "g6:{code}"),
            GraphSpec::Product { left, right } => write!(f, "{left} x {right}"),
        }
    }
}

/// Parses the notation produced by `Display`: `P_4`, `C_5`, `K_6`,
/// `K_1,3`, `S_2,2`, `T_3`, `Petersen`, `g6:CODE`, and `A x B` for products.
/// Underscores are optional and letters are case-insensitive.
impl FromStr for GraphSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some((left, right)) = s.split_once(" x ") {
            return Ok(GraphSpec::product(left.parse()?, right.parse()?));
        }
        if let Some(code) = s.strip_prefix("g6:") {
            return Ok(GraphSpec::Graph6 { code: code.to_string() });
        }
        if s.eq_ignore_ascii_case("petersen") {
            return Ok(GraphSpec::Petersen);
        }
        let bad = || format!("unrecognised graph {s:?}");
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = chars.as_str().trim_start_matches('_');
        let numbers: Vec<usize> = rest
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        Ok(match (head, numbers.as_slice()) {
            ('P', &[n]) => GraphSpec::Path { n },
            ('C', &[n]) => GraphSpec::Cycle { n },
            ('K', &[n]) => GraphSpec::Complete { n },
            ('K', &[1, leaves]) => GraphSpec::Star { leaves },
            ('S', &[left, right]) => GraphSpec::DoubleStar { left, right },
            ('T', &[delta]) => GraphSpec::TDelta { delta },
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_roundtrips() {
        let spec = GraphSpec::product(GraphSpec::TDelta { delta: 3 }, GraphSpec::Path { n: 4 });
        assert_eq!(spec.build().unwrap().n(), 60);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GraphSpec>(&text).unwrap(), spec);
        assert_eq!(spec.to_string(), "T_3 x P_4");
        let claw = star(3).unwrap();
        assert_eq!(GraphSpec::graph6(&claw).build().unwrap().edge_count(), 3);
    }

    #[test]
    fn parses_display_notation() {
        for text in ["P_4", "C_5", "K_6", "K_1,3", "S_2,2", "T_3", "Petersen", "g6:Ch", "T_3 x P_4"] {
            let spec: GraphSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!("p4".parse::<GraphSpec>().unwrap(), GraphSpec::Path { n: 4 });
        assert!("Q_3".parse::<GraphSpec>().is_err());
        assert!("P_x".parse::<GraphSpec>().is_err());
    }
}
