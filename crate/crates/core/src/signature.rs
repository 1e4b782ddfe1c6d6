use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the distinguished order symbol.
pub const ORDER_SYMBOL: &str = "<";

/// A relation symbol: a name together with a positive arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelSym {
    pub name: String,
    pub arity: usize,
}

/// A finite relational signature. Symbol order is significant: it fixes the
/// layout of relation tables and of all serialized forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<RelSym>,
    order_idx: Option<usize>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Arc<Self>> {
        let mut seen = std::collections::HashSet::new();
        let mut order_idx = None;
        let mut syms = Vec::with_capacity(symbols.len());
        for (i, (name, arity)) in symbols.into_iter().enumerate() {
            if arity == 0 {
                return Err(Error::InvalidSignature(format!(
                    "symbol '{name}' has arity 0"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidSignature(format!(
                    "duplicate symbol '{name}'"
                )));
            }
            if name == ORDER_SYMBOL {
                if arity != 2 {
                    return Err(Error::InvalidSignature(
                        "order symbol '<' must be binary".into(),
                    ));
                }
                order_idx = Some(i);
            }
            syms.push(RelSym { name, arity });
        }
        Ok(Arc::new(Signature {
            symbols: syms,
            order_idx,
        }))
    }

    /// Convenience constructor from `(name, arity)` pairs.
    pub fn of(pairs: &[(&str, usize)]) -> Arc<Self> {
        Signature::new(pairs.iter().map(|(n, a)| (n.to_string(), *a)).collect())
            .expect("static signature must be valid")
    }

    pub fn symbols(&self) -> &[RelSym] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.symbols[idx].arity
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.symbols[idx].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Index of the distinguished "<" symbol, if present.
    pub fn order_index(&self) -> Option<usize> {
        self.order_idx
    }

    pub fn has_order(&self) -> bool {
        self.order_idx.is_some()
    }

    /// The signature with the given symbol removed.
    pub fn without(&self, name: &str) -> Result<Arc<Self>> {
        if self.index_of(name).is_none() {
            return Err(Error::UnknownSymbol(name.to_string()));
        }
        Signature::new(
            self.symbols
                .iter()
                .filter(|s| s.name != name)
                .map(|s| (s.name.clone(), s.arity))
                .collect(),
        )
    }

    /// The signature extended by the distinguished order symbol "<".
    pub fn with_order(&self) -> Result<Arc<Self>> {
        if self.has_order() {
            return Err(Error::AlreadyOrdered);
        }
        let mut pairs: Vec<(String, usize)> = self
            .symbols
            .iter()
            .map(|s| (s.name.clone(), s.arity))
            .collect();
        pairs.push((ORDER_SYMBOL.to_string(), 2));
        Signature::new(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_arity() {
        assert!(Signature::new(vec![("E".into(), 2), ("E".into(), 1)]).is_err());
        assert!(Signature::new(vec![("P".into(), 0)]).is_err());
        assert!(Signature::new(vec![("<".into(), 3)]).is_err());
    }

    #[test]
    fn order_symbol_detected() {
        let sig = Signature::of(&[("E", 2), ("<", 2)]);
        assert_eq!(sig.order_index(), Some(1));
        let red = sig.without("<").unwrap();
        assert!(!red.has_order());
        let back = red.with_order().unwrap();
        assert!(back.has_order());
    }
}
