use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::LinearOrder;
use crate::signature::{Signature, ORDER_SYMBOL};

pub type Tuple = Vec<usize>;
pub type Table = BTreeSet<Tuple>;

/// A finite relational structure: universe {0..n-1} plus one table per
/// signature symbol. Values are immutable after construction; all invariants
/// (entries in range, arities, "<" a strict total order when present) are
/// checked in `new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    sig: Arc<Signature>,
    size: usize,
    tables: Vec<Table>,
}

impl Structure {
    pub fn new(sig: Arc<Signature>, size: usize, tables: Vec<Table>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        if tables.len() != sig.len() {
            return Err(Error::Invalid(format!(
                "expected {} tables, got {}",
                sig.len(),
                tables.len()
            )));
        }
        for (idx, table) in tables.iter().enumerate() {
            let arity = sig.arity(idx);
            for t in table {
                if t.len() != arity {
                    return Err(Error::ArityMismatch {
                        symbol: sig.name(idx).to_string(),
                        expected: arity,
                        got: t.len(),
                    });
                }
                for &e in t {
                    if e >= size {
                        return Err(Error::OutOfRange { element: e, size });
                    }
                }
            }
        }
        let s = Structure { sig, size, tables };
        if let Some(oi) = s.sig.order_index() {
            s.decode_order(oi)?;
        }
        Ok(s)
    }

    /// Build from `(symbol name, tuples)` pairs; omitted symbols get empty
    /// tables. Duplicate tuples within one symbol are an error.
    pub fn from_tuples(
        sig: Arc<Signature>,
        size: usize,
        rels: &[(&str, Vec<Tuple>)],
    ) -> Result<Self> {
        let mut tables = vec![Table::new(); sig.len()];
        for (name, tuples) in rels {
            let idx = sig
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            for t in tuples {
                if !tables[idx].insert(t.clone()) {
                    return Err(Error::DuplicateTuple(name.to_string()));
                }
            }
        }
        Structure::new(sig, size, tables)
    }

    pub fn sig(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, idx: usize) -> &Table {
        &self.tables[idx]
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn has(&self, idx: usize, tuple: &[usize]) -> bool {
        self.tables[idx].contains(tuple)
    }

    pub fn same_signature(&self, other: &Structure) -> bool {
        self.sig == other.sig
    }

    /// Induced substructure on a subset, renumbered to {0..|S|-1} preserving
    /// the natural order of S.
    pub fn induced(&self, subset: &[usize]) -> Result<Structure> {
        if subset.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::Invalid("subset has repeated elements".into()));
        }
        for &e in &sorted {
            if e >= self.size {
                return Err(Error::OutOfRange {
                    element: e,
                    size: self.size,
                });
            }
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in sorted.iter().enumerate() {
            pos[e] = i;
        }
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .filter(|t| t.iter().all(|&e| pos[e] != usize::MAX))
                    .map(|t| t.iter().map(|&e| pos[e]).collect())
                    .collect()
            })
            .collect();
        Structure::new(self.sig.clone(), sorted.len(), tables)
    }

    /// Same universe with one symbol (and its table) removed.
    pub fn reduct(&self, name: &str) -> Result<Structure> {
        let idx = self
            .sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let sig = self.sig.without(name)?;
        let tables = self
            .tables
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, t)| t.clone())
            .collect();
        Structure::new(sig, self.size, tables)
    }

    /// Reduct dropping the "<" symbol.
    pub fn order_reduct(&self) -> Result<Structure> {
        self.reduct(ORDER_SYMBOL)
    }

    /// Expansion by the strict total order induced by `ord`.
    pub fn expand_with_order(&self, ord: &LinearOrder) -> Result<Structure> {
        if self.sig.has_order() {
            return Err(Error::AlreadyOrdered);
        }
        if ord.len() != self.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                got: ord.len(),
            });
        }
        let sig = self.sig.with_order()?;
        let mut tables = self.tables.clone();
        let mut table = Table::new();
        let inc = ord.increasing();
        for i in 0..inc.len() {
            for j in (i + 1)..inc.len() {
                table.insert(vec![inc[i], inc[j]]);
            }
        }
        tables.push(table);
        Structure::new(sig, self.size, tables)
    }

    /// The linear order carried by the "<" table.
    pub fn order(&self) -> Result<LinearOrder> {
        let oi = self.sig.order_index().ok_or(Error::NotOrdered)?;
        self.decode_order(oi)
    }

    fn decode_order(&self, idx: usize) -> Result<LinearOrder> {
        let table = &self.tables[idx];
        let n = self.size;
        if table.len() != n * (n - 1) / 2 {
            return Err(Error::NotATotalOrder);
        }
        let mut score = vec![0usize; n];
        for t in table {
            if t[0] == t[1] {
                return Err(Error::NotATotalOrder);
            }
            score[t[1]] += 1;
        }
        let mut increasing: Vec<usize> = (0..n).collect();
        increasing.sort_by_key(|&x| score[x]);
        // scores must be 0..n-1 and the table must be exactly the rank order
        for (rank, &x) in increasing.iter().enumerate() {
            if score[x] != rank {
                return Err(Error::NotATotalOrder);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !table.contains(&vec![increasing[i], increasing[j]]) {
                    return Err(Error::NotATotalOrder);
                }
            }
        }
        LinearOrder::new(increasing)
    }

    /// Relabel elements: x becomes perm[x].
    pub fn apply_perm(&self, perm: &[usize]) -> Structure {
        debug_assert_eq!(perm.len(), self.size);
        let tables = self
            .tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .map(|t| t.iter().map(|&e| perm[e]).collect())
                    .collect()
            })
            .collect();
        Structure {
            sig: self.sig.clone(),
            size: self.size,
            tables,
        }
    }

    /// A total encoding, comparable lexicographically among structures over
    /// the same signature. Used for deterministic tie-breaks and dedup.
    pub fn encode(&self) -> Vec<usize> {
        let mut out = vec![self.size];
        for table in &self.tables {
            out.push(table.len());
            for t in table {
                out.extend_from_slice(t);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Common construction helpers (graphs, chains, equivalence relations).
// ---------------------------------------------------------------------------

/// The graph signature {E}.
pub fn graph_sig() -> Arc<Signature> {
    Signature::of(&[("E", 2)])
}

/// The ordered-graph signature {E, <}.
pub fn ordered_graph_sig() -> Arc<Signature> {
    Signature::of(&[("E", 2), ("<", 2)])
}

/// The bare order signature {<}.
pub fn order_sig() -> Arc<Signature> {
    Signature::of(&[("<", 2)])
}

/// The empty signature (pure sets).
pub fn set_sig() -> Arc<Signature> {
    Signature::new(vec![]).unwrap()
}

/// A graph on n vertices from an edge list (symmetrized).
pub fn graph(n: usize, edges: &[(usize, usize)]) -> Structure {
    let mut table = Table::new();
    for &(u, v) in edges {
        assert_ne!(u, v, "loops are not graph edges");
        table.insert(vec![u, v]);
        table.insert(vec![v, u]);
    }
    Structure::new(graph_sig(), n, vec![table]).expect("valid graph")
}

pub fn complete_graph(n: usize) -> Structure {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    graph(n, &edges)
}

pub fn empty_graph(n: usize) -> Structure {
    graph(n, &[])
}

pub fn path_graph(n: usize) -> Structure {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    graph(n, &edges)
}

pub fn cycle_graph(n: usize) -> Structure {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    graph(n, &edges)
}

/// A chain: the n-element linear order 0 < 1 < ... < n-1 in signature {<}.
pub fn chain(n: usize) -> Structure {
    let set = Structure::new(set_sig(), n, vec![]).expect("nonempty");
    set.expand_with_order(&LinearOrder::identity(n))
        .expect("chain")
}

/// An equivalence relation (stored irreflexively) from its classes, in
/// signature {E}. Classes must partition {0..n-1}.
pub fn eq_from_classes(n: usize, classes: &[Vec<usize>]) -> Structure {
    let mut table = Table::new();
    let mut seen = vec![false; n];
    for class in classes {
        for &x in class {
            assert!(!seen[x], "classes must be disjoint");
            seen[x] = true;
        }
        for &x in class {
            for &y in class {
                if x != y {
                    table.insert(vec![x, y]);
                }
            }
        }
    }
    assert!(seen.iter().all(|&b| b), "classes must cover the universe");
    Structure::new(graph_sig(), n, vec![table]).expect("valid eq")
}

/// The equivalence classes of an irreflexive-symmetric-transitive table.
pub fn eq_classes(s: &Structure, sym: usize) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut cls: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![usize::MAX; n];
    for x in 0..n {
        if assigned[x] != usize::MAX {
            continue;
        }
        let id = cls.len();
        let mut class = vec![x];
        assigned[x] = id;
        for y in (x + 1)..n {
            if s.has(sym, &[x, y]) {
                assigned[y] = id;
                class.push(y);
            }
        }
        cls.push(class);
    }
    cls
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_universe() {
        assert!(matches!(
            Structure::new(graph_sig(), 0, vec![Table::new()]),
            Err(Error::EmptyUniverse)
        ));
    }

    #[test]
    fn rejects_out_of_range() {
        let res = Structure::from_tuples(graph_sig(), 3, &[("E", vec![vec![0, 3]])]);
        assert!(matches!(res, Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn order_table_must_be_total() {
        // a 3-cycle "tournament" is not an order
        let res = Structure::from_tuples(
            order_sig(),
            3,
            &[("<", vec![vec![0, 1], vec![1, 2], vec![2, 0]])],
        );
        assert!(matches!(res, Err(Error::NotATotalOrder)));
        let ok = chain(3);
        assert_eq!(ok.order().unwrap(), LinearOrder::identity(3));
    }

    #[test]
    fn induced_renumbers_and_restricts() {
        let k3 = complete_graph(3);
        let k2 = k3.induced(&[0, 2]).unwrap();
        assert_eq!(k2, complete_graph(2));
        // identity case
        assert_eq!(k3.induced(&[0, 1, 2]).unwrap(), k3);
        // order restriction
        let c = chain(4);
        let sub = c.induced(&[1, 3]).unwrap();
        assert_eq!(sub.order().unwrap(), LinearOrder::identity(2));
    }

    #[test]
    fn reduct_expand_roundtrip() {
        let g = path_graph(3);
        let ord = LinearOrder::new(vec![2, 0, 1]).unwrap();
        let og = g.expand_with_order(&ord).unwrap();
        assert_eq!(og.order().unwrap(), ord);
        let back = og.order_reduct().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn expansion_on_single_point() {
        let one = Structure::new(graph_sig(), 1, vec![Table::new()]).unwrap();
        let o = one.expand_with_order(&LinearOrder::identity(1)).unwrap();
        assert!(o.table(o.sig().order_index().unwrap()).is_empty());
    }

    #[test]
    fn eq_helpers() {
        let e = eq_from_classes(3, &[vec![0, 1], vec![2]]);
        assert!(e.has(0, &[0, 1]) && e.has(0, &[1, 0]));
        assert!(!e.has(0, &[0, 2]));
        assert_eq!(eq_classes(&e, 0), vec![vec![0, 1], vec![2]]);
    }
}
