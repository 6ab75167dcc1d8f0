//! Process-wide interning of parameter names.
//!
//! Every polynomial refers to its variables by a [`Symbol`] index, so values
//! built from different inputs share one variable space and never need to be
//! migrated between arities.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// An interned variable name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol(pub u32);

#[derive(Default)]
struct Table {
    names: Vec<String>,
    index: HashMap<String, u32>,
    fresh: u64,
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Table::default()))
}

impl Symbol {
    /// Returns the symbol for `name`, creating it on first use.
    pub fn intern(name: &str) -> Symbol {
        if let Some(&id) = table().read().unwrap().index.get(name) {
            return Symbol(id);
        }
        let mut t = table().write().unwrap();
        if let Some(&id) = t.index.get(name) {
            return Symbol(id);
        }
        let id = t.names.len() as u32;
        t.names.push(name.to_string());
        t.index.insert(name.to_string(), id);
        Symbol(id)
    }

    /// Mints a parameter whose name starts with `prefix` and has not been used yet.
    pub fn fresh(prefix: &str) -> Symbol {
        loop {
            let candidate = {
                let mut t = table().write().unwrap();
                t.fresh += 1;
                format!("{}{}", prefix, t.fresh)
            };
            let exists = table().read().unwrap().index.contains_key(&candidate);
            if !exists {
                return Symbol::intern(&candidate);
            }
        }
    }

    /// The name this symbol was interned under.
    pub fn name(self) -> String {
        table().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
