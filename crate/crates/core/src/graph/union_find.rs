/// Disjoint sets with union by size, path compression and a running maximum
/// set size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    max_comp: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            max_comp: usize::from(n > 0),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while i != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.max_comp = self.max_comp.max(self.size[a]);
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn component_size(&mut self, i: usize) -> usize {
        let root = self.find(i);
        self.size[root]
    }

    #[inline]
    pub fn max_component(&self) -> usize {
        self.max_comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_largest_set() {
        let mut uf = UnionFind::new(6);
        assert_eq!(uf.max_component(), 1);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(2, 4));
        assert_eq!(uf.max_component(), 3);
        assert!(uf.union(1, 4));
        assert_eq!(uf.max_component(), 5);
        assert_eq!(uf.component_size(0), 5);
        assert!(!uf.same(0, 5));
    }

    #[test]
    fn empty() {
        let uf = UnionFind::new(0);
        assert!(uf.is_empty());
        assert_eq!(uf.max_component(), 0);
    }
}
