//! Canonical forms by iterative-refinement partition backtracking: refine an
//! ordered partition by tuple-incidence signatures, individualize vertices of
//! the first non-singleton cell, and take the lexicographically least
//! relation-table encoding over all discrete leaves.

use crate::structure::Structure;

type Partition = Vec<Vec<usize>>;

/// Per-vertex refinement signature: every tuple containing the vertex
/// contributes (symbol, entry cell-colors, positions of the vertex).
fn vertex_sig(s: &Structure, color: &[usize], v: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<Vec<usize>> = Vec::new();
    for (sym, table) in s.tables().iter().enumerate() {
        for t in table {
            if t.contains(&v) {
                let mut item = Vec::with_capacity(2 * t.len() + 1);
                item.push(sym);
                for &e in t {
                    item.push(color[e]);
                    item.push(usize::from(e == v));
                }
                items.push(item);
            }
        }
    }
    items.sort();
    items
}

/// Refine to a stable ordered partition. Cell order is preserved; split cells
/// keep sub-cells ordered by signature.
fn refine(s: &Structure, mut part: Partition) -> Partition {
    loop {
        let mut color = vec![0usize; s.size()];
        for (ci, cell) in part.iter().enumerate() {
            for &v in cell {
                color[v] = ci;
            }
        }
        let mut next: Partition = Vec::new();
        let mut changed = false;
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<Vec<usize>>, usize)> = cell
                .iter()
                .map(|&v| (vertex_sig(s, &color, v), v))
                .collect();
            keyed.sort();
            let mut sub: Partition = Vec::new();
            let mut i = 0;
            while i < keyed.len() {
                let mut j = i + 1;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    j += 1;
                }
                sub.push(keyed[i..j].iter().map(|(_, v)| *v).collect());
                i = j;
            }
            if sub.len() > 1 {
                changed = true;
            }
            next.extend(sub);
        }
        part = next;
        if !changed {
            return part;
        }
    }
}

struct Canonizer<'a> {
    s: &'a Structure,
    best: Option<(Vec<usize>, Vec<usize>)>, // (encoding, perm)
}

impl Canonizer<'_> {
    fn descend(&mut self, part: Partition) {
        let part = refine(self.s, part);
        if let Some(target) = part.iter().position(|c| c.len() > 1) {
            for &v in &part[target] {
                let mut next = Vec::with_capacity(part.len() + 1);
                for (ci, cell) in part.iter().enumerate() {
                    if ci == target {
                        next.push(vec![v]);
                        next.push(cell.iter().copied().filter(|&x| x != v).collect());
                    } else {
                        next.push(cell.clone());
                    }
                }
                self.descend(next);
            }
            return;
        }
        // discrete: cell order is the new labeling
        let mut perm = vec![0usize; self.s.size()];
        for (new, cell) in part.iter().enumerate() {
            perm[cell[0]] = new;
        }
        let enc = self.s.apply_perm(&perm).encode();
        match &self.best {
            Some((b, _)) if *b <= enc => {}
            _ => self.best = Some((enc, perm)),
        }
    }
}

/// Canonical form together with the relabeling that produces it.
pub fn canonical_form_perm(s: &Structure) -> (Structure, Vec<usize>) {
    canonical_form_colored(s, &vec![0; s.size()])
}

/// Canonical form refining an initial coloring (lower color values come
/// first); isomorphisms are required to respect colors.
pub fn canonical_form_colored(s: &Structure, colors: &[usize]) -> (Structure, Vec<usize>) {
    assert_eq!(colors.len(), s.size());
    let mut classes: Vec<usize> = colors.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let part: Partition = classes
        .iter()
        .map(|&c| (0..s.size()).filter(|&v| colors[v] == c).collect())
        .collect();
    let mut cz = Canonizer { s, best: None };
    cz.descend(part);
    let (_, perm) = cz.best.expect("nonempty universe has a leaf");
    (s.apply_perm(&perm), perm)
}

pub fn canonical_form(s: &Structure) -> Structure {
    canonical_form_perm(s).0
}

/// Encoding of the canonical form; equal keys exactly for isomorphic
/// structures over the same signature.
pub fn canonical_key(s: &Structure) -> Vec<usize> {
    canonical_form(s).encode()
}

/// Keep one representative per isomorphism class, in canonical-key order.
pub fn dedup_by_iso(structures: Vec<Structure>) -> Vec<Structure> {
    let mut keyed: Vec<(Vec<usize>, Structure)> = structures
        .into_iter()
        .map(|s| {
            let c = canonical_form(&s);
            (c.encode(), c)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, s)| s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::all_permutations;
    use crate::structure::*;

    #[test]
    fn relabelings_collapse() {
        let p3 = path_graph(3);
        for perm in all_permutations(3) {
            assert_eq!(canonical_form(&p3.apply_perm(&perm)), canonical_form(&p3));
        }
        assert_ne!(canonical_key(&path_graph(3)), canonical_key(&complete_graph(3)));
    }

    #[test]
    fn idempotent() {
        let g = graph(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]);
        let c = canonical_form(&g);
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn four_vertex_graphs_have_eleven_classes() {
        // independent oracle: all 2^6 labeled graphs on 4 vertices, partitioned
        // by brute-force isomorphism over all 24 permutations
        let pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|i| ((i + 1)..4).map(move |j| (i, j))).collect();
        let mut all = Vec::new();
        for mask in 0..(1u32 << 6) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            all.push(graph(4, &edges));
        }
        let mut brute_classes: Vec<Structure> = Vec::new();
        for g in &all {
            let mut found = false;
            for rep in &brute_classes {
                if all_permutations(4).iter().any(|p| &g.apply_perm(p) == rep) {
                    found = true;
                    break;
                }
            }
            if !found {
                brute_classes.push(g.clone());
            }
        }
        assert_eq!(brute_classes.len(), 11);
        let keys: std::collections::BTreeSet<_> =
            all.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), 11);
    }

    #[test]
    fn colored_canonical_separates_marked_points() {
        let p3 = path_graph(3);
        // marking an endpoint vs the midpoint distinguishes the colorings
        let a = canonical_form_colored(&p3, &[1, 0, 0]).0;
        let b = canonical_form_colored(&p3, &[0, 1, 0]).0;
        assert_ne!(a.encode(), b.encode());
    }

    #[test]
    fn ordered_structures_are_rigid_and_fast() {
        let c = chain(6);
        let k = canonical_form(&c);
        assert_eq!(canonical_form(&k), k);
    }
}
