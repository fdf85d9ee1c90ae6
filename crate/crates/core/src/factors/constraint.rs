use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Restrictions on which vertices may, must, or must not be path ends.
///
/// `pairing` holds biconditionals: for `(u, v)`, `u` is an end exactly when
/// `v` is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointConstraint {
    pub allowed: VertexSet,
    pub required: VertexSet,
    pub forbidden: VertexSet,
    #[serde(default)]
    pub pairing: Vec<(Vertex, Vertex)>,
}

impl EndpointConstraint {
    pub fn unconstrained(n: usize) -> Self {
        EndpointConstraint {
            allowed: VertexSet::full(n),
            required: VertexSet::new(n),
            forbidden: VertexSet::new(n),
            pairing: Vec::new(),
        }
    }

    /// Ends restricted to `allowed`; nothing required or forbidden.
    pub fn within(n: usize, allowed: impl IntoIterator<Item = Vertex>) -> Self {
        EndpointConstraint {
            allowed: VertexSet::from_vertices(n, allowed),
            ..Self::unconstrained(n)
        }
    }

    pub fn require(mut self, v: Vertex) -> Self {
        self.required = self.required.union(&VertexSet::from_vertices(0, [v]));
        self
    }

    pub fn forbid(mut self, v: Vertex) -> Self {
        self.forbidden = self.forbidden.union(&VertexSet::from_vertices(0, [v]));
        self
    }

    pub fn pair(mut self, u: Vertex, v: Vertex) -> Self {
        self.pairing.push((u, v));
        self
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for s in [&self.allowed, &self.required, &self.forbidden] {
            g.check_set(s)?;
        }
        for &(u, v) in &self.pairing {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
        }
        if !self.required.is_subset(&self.allowed) {
            return Err(invalid("required ends must be allowed"));
        }
        if !self.required.is_disjoint(&self.forbidden) {
            return Err(invalid("a vertex is both required and forbidden as an end"));
        }
        Ok(())
    }

    /// May `v` be a path end?
    #[inline]
    pub fn eligible(&self, v: Vertex) -> bool {
        self.allowed.contains(v) && !self.forbidden.contains(v)
    }

    #[inline]
    pub fn is_required(&self, v: Vertex) -> bool {
        self.required.contains(v)
    }

    /// Whether a complete end set satisfies every clause.
    pub fn admits(&self, endpoints: &VertexSet) -> bool {
        endpoints.iter().all(|v| self.eligible(v))
            && self.required.iter().all(|v| endpoints.contains(v))
            && self.pairing.iter().all(|&(u, v)| endpoints.contains(u) == endpoints.contains(v))
    }

    /// Replaces the pairing clauses by explicit required/forbidden sets, one
    /// constraint per consistent assignment of the paired vertices. The
    /// resulting constraints partition the covers admitted by `self`.
    pub fn expand_pairing(&self) -> Vec<EndpointConstraint> {
        let mut vertices: Vec<Vertex> = self.pairing.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut parent: HashMap<Vertex, Vertex> = vertices.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut HashMap<Vertex, Vertex>, v: Vertex) -> Vertex {
            let p = parent[&v];
            if p == v {
                v
            } else {
                let r = find(parent, p);
                parent.insert(v, r);
                r
            }
        }
        for &(u, v) in &self.pairing {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent.insert(a, b);
        }
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        let mut root_index: HashMap<Vertex, usize> = HashMap::new();
        for &v in &vertices {
            let r = find(&mut parent, v);
            let k = *root_index.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(v);
        }
        let mut out = Vec::new();
        for assignment in 0u64..(1 << groups.len()) {
            let mut c = EndpointConstraint { pairing: Vec::new(), ..self.clone() };
            let mut consistent = true;
            for (k, group) in groups.iter().enumerate() {
                let end = assignment >> k & 1 == 1;
                for &v in group {
                    if end {
                        consistent &= self.eligible(v);
                        c = c.require(v);
                    } else {
                        consistent &= !self.is_required(v);
                        c = c.forbid(v);
                    }
                }
            }
            if consistent {
                out.push(c);
            }
        }
        out
    }
}

/// JSON constraint file. Vertices are plain indices or coordinate pairs
/// such as `[2, 3]` or `["a_1", 4]`, matched against product labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed: Option<Vec<Value>>,
    #[serde(default)]
    pub required: Vec<Value>,
    #[serde(default)]
    pub forbidden: Vec<Value>,
    #[serde(default)]
    pub pairing: Vec<[Value; 2]>,
}

fn coordinate_name(v: &Value) -> Option<String> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let part = |p: &Value| match p {
                Value::String(s) => Some(s.clone()),
                Value::Number(n) => Some(n.to_string()),
                _ => None,
            };
            Some(format!("({},{})", part(&parts[0])?, part(&parts[1])?))
        }
        _ => None,
    }
}

impl ConstraintDocument {
    pub fn resolve(&self, g: &Graph) -> Result<EndpointConstraint> {
        let names: HashMap<String, Vertex> = g.labels().iter().map(|(&v, l)| (l.to_string(), v)).collect();
        let lookup = |v: &Value| -> Result<Vertex> {
            if let Some(i) = v.as_u64() {
                let i = i as usize;
                g.check_vertex(i)?;
                return Ok(i);
            }
            let name = coordinate_name(v).ok_or_else(|| Error::Parse(format!("bad vertex reference {v}")))?;
            names
                .get(&name)
                .copied()
                .ok_or_else(|| invalid(format!("no vertex labelled {name}")))
        };
        let set = |vals: &[Value]| -> Result<VertexSet> {
            let vs = vals.iter().map(lookup).collect::<Result<Vec<_>>>()?;
            Ok(VertexSet::from_vertices(g.n(), vs))
        };
        let c = EndpointConstraint {
            allowed: match &self.allowed {
                Some(a) => set(a)?,
                None => VertexSet::full(g.n()),
            },
            required: set(&self.required)?,
            forbidden: set(&self.forbidden)?,
            pairing: self
                .pairing
                .iter()
                .map(|[u, v]| Ok((lookup(u)?, lookup(v)?)))
                .collect::<Result<_>>()?,
        };
        c.validate(g)?;
        Ok(c)
    }

    /// Describes `c` using product coordinates when every vertex carries a
    /// pair label with plain components, else by index.
    pub fn describe(c: &EndpointConstraint, g: &Graph) -> Self {
        use crate::label::VertexLabel;
        let refer = |v: Vertex| -> Value {
            match g.label(v) {
                Some(VertexLabel::Pair(l, r)) => {
                    let part = |x: &VertexLabel| match x {
                        VertexLabel::Plain(p) => p
                            .parse::<u64>()
                            .map(Value::from)
                            .unwrap_or_else(|_| Value::from(p.clone())),
                        other => Value::from(other.to_string()),
                    };
                    Value::Array(vec![part(l), part(r)])
                }
                _ => Value::from(v),
            }
        };
        let list = |s: &VertexSet| s.iter().map(refer).collect::<Vec<_>>();
        ConstraintDocument {
            allowed: (c.allowed.len() != g.n()).then(|| list(&c.allowed)),
            required: list(&c.required),
            forbidden: list(&c.forbidden),
            pairing: c.pairing.iter().map(|&(u, v)| [refer(u), refer(v)]).collect(),
        }
    }
}
