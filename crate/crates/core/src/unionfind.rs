//! Minimal union-find used for agility and dexterity computations.

pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return;
        }
        if self.rank[rx] < self.rank[ry] {
            self.parent[rx] = ry;
        } else if self.rank[rx] > self.rank[ry] {
            self.parent[ry] = rx;
        } else {
            self.parent[ry] = rx;
            self.rank[rx] += 1;
        }
    }

    /// Number of distinct classes.
    pub fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    /// The classes as sorted lists of members, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let size = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); size];
        for x in 0..size {
            let root = self.find(x);
            by_root[root].push(x);
        }
        by_root.retain(|class| !class.is_empty());
        by_root
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_and_classes() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.class_count(), 5);
        uf.union(0, 3);
        uf.union(3, 4);
        assert_eq!(uf.class_count(), 3);
        assert_eq!(uf.classes(), vec![vec![0, 3, 4], vec![1], vec![2]]);
    }
}
