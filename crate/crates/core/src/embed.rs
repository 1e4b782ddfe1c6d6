use itertools::Itertools;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::structure::Structure;

/// An injective map {0..m-1} -> {0..n-1} preserving and reflecting all
/// relations between a source and a target structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    /// Validate `map` as an embedding of `src` into `dst`.
    pub fn new(src: &Structure, dst: &Structure, map: Vec<usize>) -> Result<Self> {
        if !src.same_signature(dst) {
            return Err(Error::SignatureMismatch);
        }
        if map.len() != src.size() {
            return Err(Error::SizeMismatch {
                expected: src.size(),
                got: map.len(),
            });
        }
        let mut used = vec![false; dst.size()];
        for &w in &map {
            if w >= dst.size() {
                return Err(Error::OutOfRange {
                    element: w,
                    size: dst.size(),
                });
            }
            if used[w] {
                return Err(Error::InvalidEmbedding("map is not injective".into()));
            }
            used[w] = true;
        }
        for (sym, table) in src.tables().iter().enumerate() {
            for t in table {
                let image: Vec<usize> = t.iter().map(|&e| map[e]).collect();
                if !dst.has(sym, &image) {
                    return Err(Error::InvalidEmbedding(format!(
                        "tuple {t:?} of '{}' not preserved",
                        src.sig().name(sym)
                    )));
                }
            }
            // reflection: tuples of dst fully inside the image must pull back
            let mut pre = vec![usize::MAX; dst.size()];
            for (v, &w) in map.iter().enumerate() {
                pre[w] = v;
            }
            for u in dst.table(sym) {
                if u.iter().all(|&e| pre[e] != usize::MAX) {
                    let back: Vec<usize> = u.iter().map(|&e| pre[e]).collect();
                    if !src.has(sym, &back) {
                        return Err(Error::InvalidEmbedding(format!(
                            "tuple {u:?} of '{}' not reflected",
                            src.sig().name(sym)
                        )));
                    }
                }
            }
        }
        Ok(Embedding { map })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image_sorted(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im
    }

    /// self after g: (self ∘ g)(x) = self(g(x)).
    pub fn compose(&self, g: &Embedding) -> Embedding {
        Embedding {
            map: g.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn identity(n: usize) -> Embedding {
        Embedding {
            map: (0..n).collect(),
        }
    }
}

struct SearchState<'a> {
    src: &'a Structure,
    dst: &'a Structure,
    map: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Embedding>,
    limit: usize,
}

impl SearchState<'_> {
    /// Check consistency of the newly assigned source point `v`.
    fn consistent(&self, v: usize) -> bool {
        let assigned = |x: usize| self.map[x] != usize::MAX;
        for (sym, table) in self.src.tables().iter().enumerate() {
            for t in table {
                if t.contains(&v) && t.iter().all(|&e| assigned(e)) {
                    let image: Vec<usize> = t.iter().map(|&e| self.map[e]).collect();
                    if !self.dst.has(sym, &image) {
                        return false;
                    }
                }
            }
            let w = self.map[v];
            let mut pre = vec![usize::MAX; self.dst.size()];
            for (x, &y) in self.map.iter().enumerate() {
                if y != usize::MAX {
                    pre[y] = x;
                }
            }
            for u in self.dst.table(sym) {
                if u.contains(&w) && u.iter().all(|&e| pre[e] != usize::MAX) {
                    let back: Vec<usize> = u.iter().map(|&e| pre[e]).collect();
                    if !self.src.has(sym, &back) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(&mut self, v: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if v == self.src.size() {
            self.out.push(Embedding {
                map: self.map.clone(),
            });
            return;
        }
        if self.map[v] != usize::MAX {
            // pinned point: validate and continue
            if self.consistent(v) {
                self.go(v + 1);
            }
            return;
        }
        for w in 0..self.dst.size() {
            if self.used[w] {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.consistent(v) {
                self.go(v + 1);
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
            if self.out.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(
    src: &Structure,
    dst: &Structure,
    pins: &[(usize, usize)],
    limit: usize,
) -> Result<Vec<Embedding>> {
    if !src.same_signature(dst) {
        return Err(Error::SignatureMismatch);
    }
    let mut map = vec![usize::MAX; src.size()];
    let mut used = vec![false; dst.size()];
    for &(v, w) in pins {
        if v >= src.size() || w >= dst.size() {
            return Err(Error::InvalidEmbedding("pin out of range".into()));
        }
        if map[v] != usize::MAX || used[w] {
            return Err(Error::InvalidEmbedding("conflicting pins".into()));
        }
        map[v] = w;
        used[w] = true;
    }
    let mut st = SearchState {
        src,
        dst,
        map,
        used,
        out: Vec::new(),
        limit,
    };
    st.go(0);
    Ok(st.out)
}

/// All embeddings of `a` into `b`, sorted lexicographically by the map vector.
pub fn embeddings(a: &Structure, b: &Structure) -> Result<Vec<Embedding>> {
    search(a, b, &[], usize::MAX)
}

/// All embeddings extending the given partial assignment (source, target).
pub fn embeddings_with_pins(
    a: &Structure,
    b: &Structure,
    pins: &[(usize, usize)],
) -> Result<Vec<Embedding>> {
    search(a, b, pins, usize::MAX)
}

pub fn embedding_exists(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(!search(a, b, &[], 1)?.is_empty())
}

pub fn embedding_exists_with_pins(
    a: &Structure,
    b: &Structure,
    pins: &[(usize, usize)],
) -> Result<bool> {
    Ok(!search(a, b, pins, 1)?.is_empty())
}

/// The automorphism group of `a` as permutations of {0..n-1}.
pub fn automorphisms(a: &Structure) -> Vec<Vec<usize>> {
    embeddings(a, a)
        .expect("same signature")
        .into_iter()
        .map(|e| e.map)
        .collect()
}

/// Isomorphism test. Agrees with canonical-form equality.
pub fn is_isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    if a.size() != b.size() {
        return Ok(false);
    }
    embedding_exists(a, b)
}

/// All element-subsets of `b` inducing a substructure isomorphic to `a`,
/// as sorted subsets in lexicographic order, duplicate-free.
pub fn copies(b: &Structure, a: &Structure) -> Result<Vec<Vec<usize>>> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    if a.size() > b.size() {
        return Ok(vec![]);
    }
    let key = canonical_form(a).encode();
    let mut out = Vec::new();
    for subset in (0..b.size()).combinations(a.size()) {
        let ind = b.induced(&subset)?;
        if canonical_form(&ind).encode() == key {
            out.push(subset);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::*;

    #[test]
    fn k2_into_k3_has_six_embeddings() {
        let e = embeddings(&complete_graph(2), &complete_graph(3)).unwrap();
        assert_eq!(e.len(), 6);
        // deterministic lexicographic order by map vector
        let maps: Vec<_> = e.iter().map(|x| x.map().to_vec()).collect();
        let mut sorted = maps.clone();
        sorted.sort();
        assert_eq!(maps, sorted);
    }

    #[test]
    fn point_into_graph_counts_vertices() {
        let one = empty_graph(1);
        for n in 1..5 {
            assert_eq!(embeddings(&one, &path_graph(n)).unwrap().len(), n);
        }
    }

    #[test]
    fn no_triangle_in_a_path() {
        assert!(embeddings(&complete_graph(3), &path_graph(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(automorphisms(&complete_graph(3)).len(), 6);
        assert_eq!(automorphisms(&cycle_graph(4)).len(), 8);
        assert_eq!(automorphisms(&chain(3)).len(), 1);
    }

    #[test]
    fn copies_of_k2_in_k3() {
        let c = copies(&complete_graph(3), &complete_graph(2)).unwrap();
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn copies_identity_case() {
        let p = path_graph(3);
        assert_eq!(copies(&p, &p).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn copies_of_p3_in_c5() {
        // independent brute count: the 5-cycle has exactly its 5 consecutive
        // triples as induced paths (any non-consecutive triple induces <=1 edge)
        let c5 = cycle_graph(5);
        let p3 = path_graph(3);
        let got = copies(&c5, &p3).unwrap();
        let mut expect = vec![
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![0, 3, 4],
            vec![0, 1, 4],
        ];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn iso_examples() {
        let relabeled = complete_graph(3).apply_perm(&[2, 0, 1]);
        assert!(is_isomorphic(&complete_graph(3), &relabeled).unwrap());
        assert!(!is_isomorphic(&complete_graph(3), &path_graph(3)).unwrap());
        let a = eq_from_classes(3, &[vec![0, 1], vec![2]]);
        let b = eq_from_classes(3, &[vec![0], vec![1, 2]]);
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn embedding_validation_rejects_non_reflecting_maps() {
        // map of the 2-point empty graph onto an edge preserves (no tuples)
        // but does not reflect
        let e2 = empty_graph(2);
        let k2 = complete_graph(2);
        assert!(Embedding::new(&e2, &k2, vec![0, 1]).is_err());
        assert!(Embedding::new(&k2, &k2, vec![1, 0]).is_ok());
    }

    #[test]
    fn pinned_search() {
        let p3 = path_graph(3);
        // extend 1 -> 1 (midpoint to midpoint): the two end swaps
        let found = embeddings_with_pins(&p3, &p3, &[(1, 1)]).unwrap();
        assert_eq!(found.len(), 2);
        // endpoint cannot map to midpoint
        let none = embeddings_with_pins(&p3, &p3, &[(0, 1)]).unwrap();
        assert!(none.is_empty());
    }
}
