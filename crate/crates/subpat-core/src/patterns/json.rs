use super::{Direction, Edge, Kind, Pattern, PatternParts, VarPoset};
use crate::automata::index_of;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Wire form of a pattern. Edges are `[src, var, dst]` in stored orientation
/// and `final_edges` index into `edges`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub variables: Vec<String>,
    #[serde(default)]
    pub order: Vec<[String; 2]>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 3]>,
    pub kind: KindJson,
    pub compare: [String; 2],
    #[serde(default = "forward")]
    pub direction: DirectionJson,
    #[serde(default)]
    pub final_edges: Vec<usize>,
    #[serde(default)]
    pub nonempty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Neq,
    Nleq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionJson {
    Forward,
    Reverse,
}

fn forward() -> DirectionJson {
    DirectionJson::Forward
}

impl From<&Pattern> for PatternJson {
    fn from(p: &Pattern) -> Self {
        let v = p.vars();
        let vn = |x: usize| p.vertex_name(x).to_string();
        PatternJson {
            variables: v.names().to_vec(),
            order: v
                .strict_pairs()
                .into_iter()
                .map(|(x, y)| [v.name(x).to_string(), v.name(y).to_string()])
                .collect(),
            vertices: p.vertices().to_vec(),
            edges: p.edges().iter().map(|e| [vn(e.src), v.name(e.var).to_string(), vn(e.dst)]).collect(),
            kind: match p.kind() {
                Kind::Neq => KindJson::Neq,
                Kind::Nleq => KindJson::Nleq,
            },
            compare: [vn(p.compare().0), vn(p.compare().1)],
            direction: match p.direction() {
                Direction::Forward => DirectionJson::Forward,
                Direction::Reverse => DirectionJson::Reverse,
            },
            final_edges: p.final_edge_indices(),
            nonempty: p.requires_nonempty(),
            root: p.declared_root().map(vn),
        }
    }
}

impl TryFrom<PatternJson> for Pattern {
    type Error = Error;

    fn try_from(j: PatternJson) -> Result<Self> {
        let names: Vec<&str> = j.variables.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = j.order.iter().map(|[x, y]| (x.as_str(), y.as_str())).collect();
        let vars = VarPoset::from_names(&names, &pairs)?;
        let vertex = |name: &str| {
            index_of(&j.vertices, name)
                .map_err(|_| Error::IllFormedPattern(format!("unknown vertex `{name}`")))
        };
        let edges = j
            .edges
            .iter()
            .map(|[s, x, t]| Ok(Edge { src: vertex(s)?, var: vars.index(x)?, dst: vertex(t)? }))
            .collect::<Result<Vec<_>>>()?;
        let compare = (vertex(&j.compare[0])?, vertex(&j.compare[1])?);
        let root = j.root.as_deref().map(vertex).transpose()?;
        Pattern::new(PatternParts {
            vars,
            vertices: j.vertices.clone(),
            edges,
            kind: match j.kind {
                KindJson::Neq => Kind::Neq,
                KindJson::Nleq => Kind::Nleq,
            },
            compare,
            direction: match j.direction {
                DirectionJson::Forward => Direction::Forward,
                DirectionJson::Reverse => Direction::Reverse,
            },
            final_edges: j.final_edges,
            nonempty: j.nonempty,
            root,
        })
    }
}

impl Pattern {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PatternJson::from(self)).expect("patterns serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PatternJson = serde_json::from_str(text)?;
        Pattern::try_from(j)
    }
}
