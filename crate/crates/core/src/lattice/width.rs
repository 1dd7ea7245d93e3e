//! Width (largest antichain) through Dilworth's theorem.
//!
//! A minimum chain cover of a poset on `n` nodes has `n − ν` chains, where
//! `ν` is a maximum matching of the bipartite graph with an edge `x → y` for
//! every `x < y`. König's theorem turns the matching into a vertex cover,
//! and the nodes with neither copy in the cover form a maximum antichain.

use std::collections::VecDeque;

use serde::Serialize;

use super::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Antichain {
    pub nodes: Vec<usize>,
}

impl Antichain {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_antichain_of(&self, l: &Lattice) -> bool {
        self.nodes
            .iter()
            .enumerate()
            .all(|(i, &a)| self.nodes[i + 1..].iter().all(|&b| !l.comparable(a, b)))
    }
}

const NIL: usize = usize::MAX;

impl Lattice {
    /// Maximum antichain size with a witness antichain.
    pub fn width(&self) -> (usize, Antichain) {
        let n = self.size();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|x| self.up_set(x).iter().filter(|&y| y != x).collect())
            .collect();
        let (match_l, match_r) = hopcroft_karp(n, &adj);
        let matched = match_l.iter().filter(|&&m| m != NIL).count();

        // Alternating reachability from unmatched left vertices.
        let mut seen_l = vec![false; n];
        let mut seen_r = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| match_l[x] == NIL).collect();
        for &x in &queue {
            seen_l[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen_r[y] {
                    seen_r[y] = true;
                    let z = match_r[y];
                    if z != NIL && !seen_l[z] {
                        seen_l[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        // Vertex cover: unreached left plus reached right.
        let nodes: Vec<usize> = (0..n).filter(|&x| seen_l[x] && !seen_r[x]).collect();
        debug_assert_eq!(nodes.len(), n - matched);
        (n - matched, Antichain { nodes })
    }
}

fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut match_l = vec![NIL; n];
    let mut match_r = vec![NIL; n];
    let mut dist = vec![0usize; n];
    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for x in 0..n {
            if match_l[x] == NIL {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                let z = match_r[y];
                if z == NIL {
                    found = true;
                } else if dist[z] == usize::MAX {
                    dist[z] = dist[x] + 1;
                    queue.push_back(z);
                }
            }
        }
        if !found {
            return (match_l, match_r);
        }
        let mut next = vec![0usize; n];
        for x in 0..n {
            if match_l[x] == NIL {
                augment(x, adj, &mut match_l, &mut match_r, &mut dist, &mut next);
            }
        }
    }
}

/// Iterative DFS along the BFS layers; flips one augmenting path if found.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&x) = stack.last() {
        if next[x] == adj[x].len() {
            dist[x] = usize::MAX;
            stack.pop();
            continue;
        }
        let y = adj[x][next[x]];
        next[x] += 1;
        let z = match_r[y];
        if z == NIL {
            // Flip the path root → … → x → y.
            let mut y = y;
            while let Some(x) = stack.pop() {
                let prev = match_l[x];
                match_l[x] = y;
                match_r[y] = x;
                y = prev;
            }
            return true;
        }
        if dist[z] == dist[x].wrapping_add(1) {
            stack.push(z);
        }
    }
    false
}
