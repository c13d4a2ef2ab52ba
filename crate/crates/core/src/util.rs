//! Small shared helpers: a union-find and the enumeration budget.

use std::cell::Cell;

/// Environment variable capping enumeration node counts.
pub const BUDGET_ENV: &str = "LAWKIT_BUDGET";

/// Default node cap when `LAWKIT_BUDGET` is unset.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// A counter of search nodes with a hard cap.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: Cell::new(0) }
    }

    /// Reads `LAWKIT_BUDGET`, falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Charges `n` nodes; returns false once the cap is exceeded.
    pub fn charge(&self, n: u64) -> bool {
        let used = self.used.get().saturating_add(n);
        self.used.set(used);
        used <= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone, Default)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Read-only lookup without path compression.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Unites the classes of `a` and `b`. Returns the surviving root and the
    /// absorbed root, or `None` if they were already united.
    pub fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        self.size[keep] += self.size[gone];
        Some((keep, gone))
    }

    /// Unites keeping the smaller of the two roots as representative.
    pub fn union_min(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        self.size[keep] += self.size[gone];
        Some((keep, gone))
    }
}

/// Binomial coefficient on small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_merges() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1).is_some());
        assert!(uf.union(1, 0).is_none());
        uf.union_min(3, 4);
        assert_eq!(uf.find(4), 3);
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn budget_caps() {
        let b = Budget::new(3);
        assert!(b.charge(2));
        assert!(b.charge(1));
        assert!(!b.charge(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(9, 5), 126);
        assert_eq!(binomial(2, 3), 0);
    }
}
