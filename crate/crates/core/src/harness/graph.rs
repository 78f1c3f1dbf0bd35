//! The check graph: named checks with prerequisite edges.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::harness::report::Tally;

/// What a check runner sees.
pub struct CheckContext<'a> {
    pub config: &'a RunConfig,
    pub seed: u64,
}

pub type Runner = Arc<dyn Fn(&CheckContext<'_>) -> Tally + Send + Sync>;

#[derive(Clone)]
pub struct CheckNode {
    pub name: String,
    pub prerequisites: Vec<String>,
    /// Human-readable description of the parameter grid.
    pub params: String,
    pub runner: Runner,
}

impl CheckNode {
    pub fn new(
        name: &str,
        prerequisites: &[&str],
        params: &str,
        runner: impl Fn(&CheckContext<'_>) -> Tally + Send + Sync + 'static,
    ) -> Self {
        CheckNode {
            name: name.to_string(),
            prerequisites: prerequisites.iter().map(|p| p.to_string()).collect(),
            params: params.to_string(),
            runner: Arc::new(runner),
        }
    }
}

impl fmt::Debug for CheckNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckNode")
            .field("name", &self.name)
            .field("prerequisites", &self.prerequisites)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub struct CheckGraph {
    nodes: Vec<CheckNode>,
    index: HashMap<String, usize>,
}

impl CheckGraph {
    /// Validates names and edges and rejects cycles.
    pub fn new(nodes: Vec<CheckNode>) -> Result<Self> {
        let graph = Self::new_unchecked(nodes)?;
        graph.topological_order()?;
        Ok(graph)
    }

    /// Like [`CheckGraph::new`] but without the cycle check.
    pub fn new_unchecked(nodes: Vec<CheckNode>) -> Result<Self> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.name.clone(), i).is_some() {
                return Err(Error::Graph(format!("duplicate check {:?}", node.name)));
            }
        }
        for node in &nodes {
            for p in &node.prerequisites {
                if !index.contains_key(p) {
                    return Err(Error::Graph(format!(
                        "{:?} depends on unknown check {p:?}",
                        node.name
                    )));
                }
            }
        }
        Ok(CheckGraph { nodes, index })
    }

    pub fn nodes(&self) -> &[CheckNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.name.as_str()).collect()
    }

    pub fn node(&self, name: &str) -> Option<&CheckNode> {
        self.index.get(name).map(|&i| &self.nodes[i])
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Config(format!("unknown check {name:?}")))
    }

    /// Node indices in dependency order; ties go to registration order, so
    /// the order is deterministic.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        let mut dependents = vec![Vec::new(); n];
        for (i, node) in self.nodes.iter().enumerate() {
            for p in &node.prerequisites {
                let j = self.index[p];
                indegree[i] += 1;
                dependents[j].push(i);
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for &d in &dependents[i] {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    ready.insert(d);
                }
            }
        }
        if order.len() < n {
            let stuck: Vec<&str> = (0..n)
                .filter(|&i| indegree[i] > 0)
                .map(|i| self.nodes[i].name.as_str())
                .collect();
            return Err(Error::Graph(format!(
                "dependency cycle among {}",
                stuck.join(", ")
            )));
        }
        Ok(order)
    }

    /// Adds `dependent ← prerequisite`, rejecting the edge if it closes a
    /// cycle.
    pub fn add_edge(&mut self, dependent: &str, prerequisite: &str) -> Result<()> {
        self.add_edge_unchecked(dependent, prerequisite)?;
        if let Err(e) = self.topological_order() {
            let i = self.index[dependent];
            self.nodes[i].prerequisites.pop();
            return Err(e);
        }
        Ok(())
    }

    /// Adds an edge with no cycle check, so the run-time check can be
    /// exercised.
    pub fn add_edge_unchecked(&mut self, dependent: &str, prerequisite: &str) -> Result<()> {
        let i = self.lookup(dependent)?;
        self.lookup(prerequisite)?;
        self.nodes[i].prerequisites.push(prerequisite.to_string());
        Ok(())
    }

    /// Replaces a node's runner with one that always fails.
    pub fn inject_failure(&mut self, name: &str) -> Result<()> {
        let i = self.lookup(name)?;
        self.nodes[i].runner = Arc::new(|_| {
            let mut t = Tally::new();
            t.exact(false, || "injected failure".into());
            t
        });
        Ok(())
    }

    /// Names of all transitive prerequisites of `name`, not including it.
    pub fn ancestors(&self, name: &str) -> Result<BTreeSet<String>> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.lookup(name)?];
        while let Some(i) = stack.pop() {
            for p in &self.nodes[i].prerequisites {
                if seen.insert(p.clone()) {
                    stack.push(self.index[p]);
                }
            }
        }
        Ok(seen)
    }

    /// Names of all transitive dependents of `name`, not including it.
    pub fn descendants(&self, name: &str) -> Result<BTreeSet<String>> {
        self.lookup(name)?;
        let mut seen = BTreeSet::new();
        let mut frontier = vec![name.to_string()];
        while let Some(cur) = frontier.pop() {
            for node in &self.nodes {
                if node.prerequisites.contains(&cur) && seen.insert(node.name.clone()) {
                    frontier.push(node.name.clone());
                }
            }
        }
        Ok(seen)
    }

    fn retain(self, keep: &BTreeSet<String>) -> Result<CheckGraph> {
        let nodes = self
            .nodes
            .into_iter()
            .filter(|n| keep.contains(&n.name))
            .collect();
        CheckGraph::new_unchecked(nodes)
    }

    /// Keeps the named checks and their transitive prerequisites.
    pub fn restrict_to(self, names: &[String]) -> Result<CheckGraph> {
        let mut keep = BTreeSet::new();
        for name in names {
            keep.extend(self.ancestors(name)?);
            keep.insert(name.clone());
        }
        self.retain(&keep)
    }

    /// Drops the named checks and everything that depends on them.
    pub fn exclude(self, names: &[String]) -> Result<CheckGraph> {
        let mut drop = BTreeSet::new();
        for name in names {
            drop.extend(self.descendants(name)?);
            drop.insert(name.clone());
        }
        let keep = self
            .nodes
            .iter()
            .map(|n| n.name.clone())
            .filter(|n| !drop.contains(n))
            .collect();
        self.retain(&keep)
    }
}
