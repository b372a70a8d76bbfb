use super::Step;
use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;
use std::hash::BuildHasher;

const ROOT: u32 = u32::MAX;

/// Breadth-first visited set over fixed-width byte configurations, with the
/// step that first reached each configuration.
pub(crate) struct Arena {
    width: usize,
    data: Vec<u8>,
    parent: Vec<(u32, u32, u32)>,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl Arena {
    pub fn new(width: usize) -> Self {
        Arena { width, data: Vec::new(), parent: Vec::new(), table: HashTable::new(), hasher: FxBuildHasher }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn clear(&mut self) {
        self.data.clear();
        self.parent.clear();
        self.table.clear();
    }

    /// Inserts `node` unless already present; returns whether it was new.
    pub fn insert(&mut self, node: &[u8], from: Option<(usize, Step)>) -> bool {
        debug_assert_eq!(node.len(), self.width);
        let hash = self.hasher.hash_one(node);
        let (data, width) = (&self.data, self.width);
        let slot = |&i: &u32| &data[i as usize * width..(i as usize + 1) * width];
        if self.table.find(hash, |i| slot(i) == node).is_some() {
            return false;
        }
        let idx = self.parent.len() as u32;
        self.data.extend_from_slice(node);
        self.parent.push(match from {
            Some((p, (a, y))) => (p as u32, a as u32, y as u32),
            None => (ROOT, 0, 0),
        });
        let (data, hasher) = (&self.data, &self.hasher);
        self.table.insert_unique(hash, idx, |&i| {
            hasher.hash_one(&data[i as usize * width..(i as usize + 1) * width])
        });
        true
    }

    /// Steps from the root to node `i`, in order.
    pub fn path(&self, mut i: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        while self.parent[i].0 != ROOT {
            let (p, a, y) = self.parent[i];
            steps.push((a as usize, y as usize));
            i = p as usize;
        }
        steps.reverse();
        steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_rejected_and_paths_rebuilt() {
        let mut a = Arena::new(2);
        assert!(a.insert(&[0, 0], None));
        assert!(a.insert(&[0, 1], Some((0, (1, 0)))));
        assert!(!a.insert(&[0, 1], Some((0, (0, 0)))));
        assert!(a.insert(&[1, 1], Some((1, (0, 2)))));
        assert_eq!(a.len(), 3);
        assert_eq!(a.get(2), &[1, 1]);
        assert_eq!(a.path(2), vec![(1, 0), (0, 2)]);
        a.clear();
        assert_eq!(a.len(), 0);
    }

    #[test]
    fn many_nodes_survive_rehashing() {
        let mut a = Arena::new(3);
        for i in 0..5000u32 {
            let b = i.to_le_bytes();
            assert!(a.insert(&b[..3], None));
        }
        for i in 0..5000u32 {
            let b = i.to_le_bytes();
            assert!(!a.insert(&b[..3], None));
        }
    }
}
