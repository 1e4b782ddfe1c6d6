use crate::error::{Error, Result};

/// A linear order on {0..n-1}, stored as the increasing enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    increasing: Vec<usize>,
}

impl LinearOrder {
    pub fn new(increasing: Vec<usize>) -> Result<Self> {
        let n = increasing.len();
        let mut seen = vec![false; n];
        for &x in &increasing {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(LinearOrder { increasing })
    }

    /// The identity order 0 < 1 < ... < n-1.
    pub fn identity(n: usize) -> Self {
        LinearOrder {
            increasing: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.increasing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increasing.is_empty()
    }

    pub fn increasing(&self) -> &[usize] {
        &self.increasing
    }

    /// rank[x] = position of x in the increasing enumeration.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.increasing.len()];
        for (pos, &x) in self.increasing.iter().enumerate() {
            r[x] = pos;
        }
        r
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        let r = self.ranks();
        r[a] < r[b]
    }

    /// The reverse order.
    pub fn reversed(&self) -> Self {
        let mut inc = self.increasing.clone();
        inc.reverse();
        LinearOrder { increasing: inc }
    }

    /// Relabel elements by `perm` (element x becomes perm[x]).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        LinearOrder {
            increasing: self.increasing.iter().map(|&x| perm[x]).collect(),
        }
    }

    /// Restriction to a sorted subset, renumbered to 0..|subset|-1 by ascending
    /// element (matching induced-substructure renumbering).
    pub fn restricted(&self, subset: &[usize]) -> Self {
        let inc = self
            .increasing
            .iter()
            .filter_map(|x| subset.binary_search(x).ok())
            .collect();
        LinearOrder { increasing: inc }
    }

    /// All n! linear orders on {0..n-1}, in lexicographic order of the
    /// increasing enumeration.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(LinearOrder {
                increasing: cur.clone(),
            });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

/// In-place next lexicographic permutation; false when wrapped around.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of {0..n-1} as vectors, lexicographically.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    LinearOrder::all(n)
        .into_iter()
        .map(|o| o.increasing().to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_validation() {
        assert!(LinearOrder::new(vec![2, 0, 1]).is_ok());
        assert!(LinearOrder::new(vec![0, 0, 1]).is_err());
        assert!(LinearOrder::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn enumerates_all_orders() {
        assert_eq!(LinearOrder::all(3).len(), 6);
        assert_eq!(LinearOrder::all(1).len(), 1);
    }

    #[test]
    fn ranks_and_less() {
        let o = LinearOrder::new(vec![2, 0, 1]).unwrap();
        assert!(o.less(2, 0));
        assert!(o.less(0, 1));
        assert!(!o.less(1, 2));
    }

    #[test]
    fn restriction_renumbers() {
        // order 3 < 1 < 0 < 2 restricted to {0, 1, 3} -> renumber 0,1,3 to 0,1,2
        let o = LinearOrder::new(vec![3, 1, 0, 2]).unwrap();
        let r = o.restricted(&[0, 1, 3]);
        assert_eq!(r.increasing(), &[2, 1, 0]);
    }
}
