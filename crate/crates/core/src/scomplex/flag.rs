use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A flag complex: simplices are exactly the cliques of a symmetric,
/// irreflexive adjacency relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ComplexDump<'a> {
    vertices: &'a [String],
    edges: Vec<(usize, usize)>,
}

impl FlagComplex {
    pub fn empty(n: usize) -> Self {
        FlagComplex {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b));
            }
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FlagComplex {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj,
        })
    }

    /// Adjacency from a symmetric predicate, evaluated in parallel over `i < j`.
    pub fn from_predicate<F>(n: usize, pred: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| (i + 1..n).filter(|&j| pred(i, j)).collect())
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (i, js) in upper.iter().enumerate() {
            for &j in js {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        FlagComplex {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj,
        }
    }

    /// Adjacency from a predicate called once per pair `i < j`, in order.
    pub fn from_predicate_seq<F>(n: usize, mut pred: F) -> Self
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if pred(i, j) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        FlagComplex {
            labels: (0..n).map(|i| i.to_string()).collect(),
            adj,
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_predicate(n, |_, _| true)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.adj.len(), "one label per vertex");
        self.labels = labels;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn is_simplex(&self, sigma: &[usize]) -> bool {
        sigma.iter().all(|&v| v < self.vertex_count())
            && sigma.iter().enumerate().all(|(i, &a)| {
                sigma[i + 1..]
                    .iter()
                    .all(|&b| a != b && self.adjacent(a, b))
            })
    }

    /// Vertices adjacent to every vertex of `sigma` and not in it, ascending.
    pub fn link_vertices(&self, sigma: &[usize]) -> Result<Vec<usize>> {
        for &v in sigma {
            if v >= self.vertex_count() {
                return Err(Error::VertexOutOfRange(v));
            }
        }
        if !self.is_simplex(sigma) {
            return Err(Error::NotASimplex);
        }
        Ok(match sigma.split_first() {
            None => (0..self.vertex_count()).collect(),
            Some((&first, rest)) => self.adj[first]
                .iter()
                .copied()
                .filter(|&u| rest.iter().all(|&s| self.adjacent(u, s)))
                .collect(),
        })
    }

    /// Full subcomplex on `vertices` (in the given order), labels carried over.
    pub fn induced(&self, vertices: &[usize]) -> FlagComplex {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&u| pos[u] != usize::MAX)
                    .map(|&u| pos[u])
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        FlagComplex {
            labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(),
            adj,
        }
    }

    /// Connected components of the 1-skeleton as a vertex labelling.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().0 == 1
    }

    /// Cliques with at most `max_dim + 1` vertices, grouped by dimension, each
    /// sorted. Fails once more than `cap` simplices would be produced.
    pub fn simplices_up_to(&self, max_dim: usize, cap: u64) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim + 1];
        let mut count = 0u64;
        let mut stack = Vec::new();
        for v in 0..self.vertex_count() {
            let cand: Vec<usize> = self.adj[v].iter().copied().filter(|&u| u > v).collect();
            stack.push(v);
            self.grow(&mut stack, &cand, max_dim, cap, &mut count, &mut out)?;
            stack.pop();
        }
        Ok(out)
    }

    fn grow(
        &self,
        stack: &mut Vec<usize>,
        cand: &[usize],
        max_dim: usize,
        cap: u64,
        count: &mut u64,
        out: &mut [Vec<Vec<usize>>],
    ) -> Result<()> {
        *count += 1;
        if *count > cap {
            return Err(Error::CapExceeded {
                what: "simplex enumeration",
                count: *count as u128,
                cap: cap as u128,
            });
        }
        out[stack.len() - 1].push(stack.clone());
        if stack.len() > max_dim {
            return Ok(());
        }
        for (i, &u) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.adjacent(u, w))
                .collect();
            stack.push(u);
            self.grow(stack, &next, max_dim, cap, count, out)?;
            stack.pop();
        }
        Ok(())
    }

    /// Whether some clique has `d + 1` vertices.
    pub fn has_simplex_of_dim(&self, d: usize) -> bool {
        fn go(k: &FlagComplex, cand: &[usize], need: usize) -> bool {
            if need == 0 {
                return true;
            }
            if cand.len() < need {
                return false;
            }
            cand.iter().enumerate().any(|(i, &u)| {
                let next: Vec<usize> = cand[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| k.adjacent(u, w))
                    .collect();
                go(k, &next, need - 1)
            })
        }
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        go(self, &all, d + 1)
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        let mut d = 0;
        while self.has_simplex_of_dim(d) {
            d += 1;
        }
        d
    }

    /// 1-skeleton in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph L {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }

    /// `{"vertices": [labels], "edges": [[a, b], ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexDump {
            vertices: &self.labels,
            edges: self.edges(),
        })
        .expect("plain data serializes")
    }
}

/// The link of `sigma`: the full subcomplex on vertices adjacent to all of it.
pub fn link_of(k: &FlagComplex, sigma: &[usize]) -> Result<FlagComplex> {
    Ok(k.induced(&k.link_vertices(sigma)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> FlagComplex {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FlagComplex::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn links() {
        let c4 = cycle(4);
        let l = link_of(&c4, &[0]).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (2, 0));
        assert_eq!(l.labels(), &["1".to_string(), "3".to_string()]);
        assert_eq!(link_of(&c4, &[]).unwrap(), c4);
        assert_eq!(link_of(&c4, &[0, 2]).unwrap_err(), Error::NotASimplex);
        assert_eq!(link_of(&c4, &[9]).unwrap_err(), Error::VertexOutOfRange(9));
        // in the flag complex of a 3-cycle the triangle is filled
        let l = link_of(&cycle(3), &[0]).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (2, 1));
    }

    #[test]
    fn cliques() {
        let k5 = FlagComplex::complete(5);
        let s = k5.simplices_up_to(4, 1000).unwrap();
        let counts: Vec<usize> = s.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![5, 10, 10, 5, 1]);
        assert_eq!(k5.clique_number(), 5);
        assert!(k5.simplices_up_to(4, 10).is_err());
        assert_eq!(cycle(6).clique_number(), 2);
    }

    #[test]
    fn components_and_exports() {
        let two = FlagComplex::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components().0, 2);
        assert!(!two.is_connected());
        assert!(cycle(5).is_connected());
        assert!(!FlagComplex::empty(0).is_connected());
        let dot = two.to_dot();
        assert!(dot.contains("0 -- 1;") && dot.contains("2 -- 3;"));
        let v: serde_json::Value = serde_json::from_str(&two.to_json()).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    }
}
