//! Rauzy graphs and the maps between consecutive ones.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::{language, FactorOptions, Language, WordError, WordSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RauzyEdge {
    pub from: usize,
    pub to: usize,
    pub letter: u8,
}

/// Vertices are the factors of length n, edges the factors of length n+1
/// joining their prefix to their suffix.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    pub n: usize,
    pub vertices: Vec<Vec<u8>>,
    pub edges: Vec<RauzyEdge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

fn find(vertices: &[Vec<u8>], w: &[u8]) -> Option<usize> {
    vertices.binary_search_by(|v| v.as_slice().cmp(w)).ok()
}

impl RauzyGraph {
    pub fn from_language(lang: &Language, n: usize) -> Result<RauzyGraph, WordError> {
        if n + 1 > lang.len {
            return Err(WordError::BadParameter(format!("Rauzy graph of order {n} needs factors of length {}", n + 1)));
        }
        let vertices: Vec<Vec<u8>> = lang.factors(n).into_iter().map(<[u8]>::to_vec).collect();
        let mut edges = Vec::new();
        for e in lang.factors(n + 1) {
            let missing = || WordError::MapNotWellDefined(format!("edge {} has an endpoint outside F_{n}", show(e)));
            let from = find(&vertices, &e[..n]).ok_or_else(missing)?;
            let to = find(&vertices, &e[1..]).ok_or_else(missing)?;
            edges.push(RauzyEdge { from, to, letter: e[n] });
        }
        let mut out_adj = vec![Vec::new(); vertices.len()];
        let mut in_adj = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.from].push(i);
            in_adj[e.to].push(i);
        }
        Ok(RauzyGraph { n, vertices, edges, out_adj, in_adj })
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn vertex_index(&self, w: &[u8]) -> Option<usize> {
        find(&self.vertices, w)
    }

    fn reach(&self, forward: bool, undirected: bool) -> usize {
        if self.vertices.is_empty() {
            return 0;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            let mut step = |w: usize| {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            };
            if forward || undirected {
                self.out_adj[v].iter().for_each(|&e| step(self.edges[e].to));
            }
            if !forward || undirected {
                self.in_adj[v].iter().for_each(|&e| step(self.edges[e].from));
            }
        }
        count
    }

    pub fn is_strongly_connected(&self) -> bool {
        let v = self.vertices.len();
        self.reach(true, false) == v && self.reach(false, false) == v
    }

    pub fn is_connected(&self) -> bool {
        self.reach(true, true) == self.vertices.len()
    }

    /// Rank of the first homology: |E| − |V| + 1 for a connected graph.
    pub fn h1_rank(&self) -> Result<i64, WordError> {
        if self.vertices.is_empty() || !self.is_connected() {
            return Err(WordError::DisconnectedGraph);
        }
        Ok(self.edges.len() as i64 - self.vertices.len() as i64 + 1)
    }

    /// Vertices with at least two outgoing edges.
    pub fn right_special(&self) -> Vec<&[u8]> {
        (0..self.vertices.len())
            .filter(|&v| self.out_degree(v) >= 2)
            .map(|v| self.vertices[v].as_slice())
            .collect()
    }

    /// One edge per line: source factor, target factor, extension letter.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} {}",
                show(&self.vertices[e.from]),
                show(&self.vertices[e.to]),
                e.letter as char
            );
        }
        out
    }
}

fn show(w: &[u8]) -> String {
    String::from_utf8_lossy(w).into_owned()
}

pub fn rauzy_graph(src: &WordSource, n: usize) -> Result<RauzyGraph, WordError> {
    RauzyGraph::from_language(&language(src, n + 1, FactorOptions::default())?, n)
}

/// The projection from the graph of order n+1 onto the graph of order n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    pub n: usize,
    /// For each vertex of the larger graph, its image vertex.
    pub vertex_map: Vec<usize>,
    /// For each edge of the larger graph, its image edge.
    pub edge_map: Vec<usize>,
}

impl GammaMap {
    /// Drops the last letter when n is even and the first when n is odd,
    /// then checks that edges go to edges with matching endpoints and that
    /// every vertex of the smaller graph is hit.
    pub fn build(small: &RauzyGraph, big: &RauzyGraph) -> Result<GammaMap, WordError> {
        let n = small.n;
        assert_eq!(big.n, n + 1, "graphs must have consecutive orders");
        let cut = |w: &[u8]| -> Vec<u8> {
            if n % 2 == 0 {
                w[..w.len() - 1].to_vec()
            } else {
                w[1..].to_vec()
            }
        };
        let vertex_map: Vec<usize> = big
            .vertices
            .iter()
            .map(|v| {
                small
                    .vertex_index(&cut(v))
                    .ok_or_else(|| WordError::MapNotWellDefined(format!("vertex {} has no image", show(v))))
            })
            .collect::<Result<_, _>>()?;
        let edge_words: Vec<Vec<u8>> = small
            .edges
            .iter()
            .map(|e| {
                let mut w = small.vertices[e.from].clone();
                w.push(e.letter);
                w
            })
            .collect();
        let mut edge_map = Vec::with_capacity(big.edges.len());
        for e in &big.edges {
            let mut word = big.vertices[e.from].clone();
            word.push(e.letter);
            let image = cut(&word);
            let idx = edge_words
                .binary_search(&image)
                .map_err(|_| WordError::MapNotWellDefined(format!("edge {} has no image", show(&word))))?;
            let img = small.edges[idx];
            if img.from != vertex_map[e.from] || img.to != vertex_map[e.to] {
                return Err(WordError::MapNotWellDefined(format!("edge {} does not commute with endpoints", show(&word))));
            }
            edge_map.push(idx);
        }
        let mut hit = vec![false; small.vertices.len()];
        vertex_map.iter().for_each(|&v| hit[v] = true);
        if let Some(v) = hit.iter().position(|h| !h) {
            return Err(WordError::MapNotWellDefined(format!("vertex {} is not hit", show(&small.vertices[v]))));
        }
        Ok(GammaMap { n, vertex_map, edge_map })
    }
}

pub fn gamma_map(src: &WordSource, n: usize) -> Result<GammaMap, WordError> {
    let lang = language(src, n + 2, FactorOptions::default())?;
    GammaMap::build(&RauzyGraph::from_language(&lang, n)?, &RauzyGraph::from_language(&lang, n + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldContext;

    fn fibonacci() -> WordSource {
        let f = FieldContext::from_parts(&[-1, -1, 1], "1", "2").unwrap();
        WordSource::Sturmian { slope: &f.theta() - &f.one(), intercept: f.zero(), alphabet: *b"ab" }
    }

    #[test]
    fn periodic_graph_is_one_cycle() {
        let src = WordSource::Periodic { period: b"ab".to_vec() };
        let g = rauzy_graph(&src, 2).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 2));
        assert!(g.is_strongly_connected());
        assert_eq!(g.h1_rank().unwrap(), 1);
        let m = gamma_map(&src, 2).unwrap();
        assert_eq!(m.vertex_map.len(), 2);
    }

    #[test]
    fn fibonacci_graphs() {
        let g = rauzy_graph(&fibonacci(), 2).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (3, 4));
        assert_eq!(g.h1_rank().unwrap(), 2);
        assert_eq!(g.right_special().len(), 1);
        let lang = language(&fibonacci(), 5, FactorOptions::default()).unwrap();
        let small = RauzyGraph::from_language(&lang, 3).unwrap();
        let big = RauzyGraph::from_language(&lang, 4).unwrap();
        let m = GammaMap::build(&small, &big).unwrap();
        // Odd order: the image of each length-4 factor is its length-3 suffix.
        for (v, &img) in big.vertices.iter().zip(&m.vertex_map) {
            assert_eq!(small.vertices[img], v[1..].to_vec());
        }
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let src = WordSource::Sft { alphabet: b"ab".to_vec(), forbidden: vec![*b"ab", *b"ba"] };
        let g = rauzy_graph(&src, 2).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.h1_rank().unwrap_err(), WordError::DisconnectedGraph);
        let finite = WordSource::Finite { word: b"aaabbb".to_vec(), certified_len: None };
        let g = rauzy_graph(&finite, 1).unwrap();
        assert!(g.is_connected());
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn adjacency_export() {
        let src = WordSource::Periodic { period: b"ab".to_vec() };
        let g = rauzy_graph(&src, 1).unwrap();
        assert_eq!(g.to_adjacency_text(), "a b b\nb a a\n");
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::words::{language, FactorOptions, WordSource};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn graph_ranks_follow_counts(period in prop::collection::vec(prop::sample::select(b"ab".to_vec()), 1..12), n in 1usize..10) {
            let lang = language(&WordSource::Periodic { period }, n + 1, FactorOptions::default()).unwrap();
            let p = lang.counts();
            let g = RauzyGraph::from_language(&lang, n).unwrap();
            let s = p[n + 1] as i64 - p[n] as i64;
            prop_assert_eq!(g.edges.len() as u64, p[n + 1]);
            prop_assert_eq!(g.vertices.len() as u64, p[n]);
            prop_assert_eq!(g.right_special().len() as i64, s);
            prop_assert!(g.is_strongly_connected());
            prop_assert_eq!(g.h1_rank().unwrap(), s + 1);
        }
    }
}
