use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Product order: grevlex on the first `k` (permuted) variables, ties
    /// broken by grevlex on the rest. Any monomial involving the first
    /// block beats every monomial free of it.
    BlockElimination(usize),
}

/// A monomial order, optionally applied after a variable permutation:
/// position `k` of the permuted vector is variable `perm[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

fn grevlex_cmp(a: &[u32], b: &[u32], pos: impl DoubleEndedIterator<Item = usize> + Clone) -> Ordering {
    let da: u64 = pos.clone().map(|i| u64::from(a[i])).sum();
    let db: u64 = pos.clone().map(|i| u64::from(b[i])).sum();
    da.cmp(&db).then_with(|| {
        for i in pos.rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: None }
    }

    pub fn block_elimination(k: usize) -> Self {
        MonomialOrder { kind: OrderKind::BlockElimination(k), perm: None }
    }

    pub fn with_permutation(mut self, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(format!("{perm:?} is not a permutation")));
            }
        }
        self.perm = Some(perm);
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match &self.perm {
            None => self.compare_positions(a, b),
            Some(perm) => {
                let pa: Vec<u32> = perm.iter().map(|&i| a[i]).collect();
                let pb: Vec<u32> = perm.iter().map(|&i| b[i]).collect();
                self.compare_positions(&pa, &pb)
            }
        }
    }

    fn compare_positions(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::Grevlex => grevlex_cmp(a, b, 0..a.len()),
            OrderKind::BlockElimination(k) => {
                let k = k.min(a.len());
                grevlex_cmp(a, b, 0..k).then_with(|| grevlex_cmp(a, b, k..a.len()))
            }
        }
    }
}
