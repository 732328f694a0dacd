use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::ExponentVector;

/// Elementary orders usable alone or as a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Degree first, ties broken reverse-lexicographically (`dp`).
    GlobalDegRevLex,
    /// Lower degree is larger, ties broken reverse-lexicographically (`ds`).
    LocalNegDegRevLex,
}

impl OrderKind {
    pub fn is_global(self) -> bool {
        matches!(self, OrderKind::GlobalDegRevLex)
    }

    #[inline]
    fn cmp_range(self, a: &ExponentVector, b: &ExponentVector, start: usize, end: usize) -> Ordering {
        let (da, db) = if start == 0 && end == a.len() {
            (a.degree(), b.degree())
        } else {
            (a.partial_degree(start, end), b.partial_degree(start, end))
        };
        let by_degree = match self {
            OrderKind::GlobalDegRevLex => da.cmp(&db),
            OrderKind::LocalNegDegRevLex => db.cmp(&da),
        };
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        for i in (start..end).rev() {
            if ea[i] != eb[i] {
                return eb[i].cmp(&ea[i]);
            }
        }
        Ordering::Equal
    }
}

/// One block of a product order, covering variables `start..start + len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub kind: OrderKind,
    pub start: usize,
    pub len: usize,
}

/// A monomial order on exponent vectors of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GlobalDegRevLex,
    LocalNegDegRevLex,
    /// Lexicographic product of blocks; spans partition the variables in order.
    Block(Vec<Block>),
}

impl MonomialOrder {
    /// Build a block order from `(kind, len)` pairs laid out left to right.
    pub fn blocks(parts: &[(OrderKind, usize)]) -> Self {
        let mut start = 0;
        let blocks = parts
            .iter()
            .filter(|(_, len)| *len > 0)
            .map(|&(kind, len)| {
                let b = Block { kind, start, len };
                start += len;
                b
            })
            .collect();
        MonomialOrder::Block(blocks)
    }

    /// Check that block spans partition `0..nvars` in order.
    pub fn validate(&self, nvars: usize) -> Result<(), String> {
        if let MonomialOrder::Block(blocks) = self {
            let mut next = 0;
            for b in blocks {
                if b.start != next || b.len == 0 {
                    return Err(format!("block spans must be contiguous and nonempty, found {b:?}"));
                }
                next += b.len;
            }
            if next != nvars {
                return Err(format!("blocks cover {next} variables, ring has {nvars}"));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            MonomialOrder::GlobalDegRevLex => OrderKind::GlobalDegRevLex.cmp_range(a, b, 0, a.len()),
            MonomialOrder::LocalNegDegRevLex => OrderKind::LocalNegDegRevLex.cmp_range(a, b, 0, a.len()),
            MonomialOrder::Block(blocks) => {
                for bl in blocks {
                    let c = bl.kind.cmp_range(a, b, bl.start, bl.start + bl.len);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// True when every variable is larger than 1, i.e. the order is a well-order.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::GlobalDegRevLex => true,
            MonomialOrder::LocalNegDegRevLex => false,
            MonomialOrder::Block(blocks) => blocks.iter().all(|b| b.kind.is_global()),
        }
    }

    /// True when every variable is smaller than 1.
    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrder::GlobalDegRevLex => false,
            MonomialOrder::LocalNegDegRevLex => true,
            MonomialOrder::Block(blocks) => blocks.iter().all(|b| !b.kind.is_global()),
        }
    }

    /// The block layout with `count` global variables prepended.
    pub fn with_global_prefix(&self, count: usize, nvars: usize) -> Self {
        let mut parts = vec![(OrderKind::GlobalDegRevLex, count)];
        parts.extend(self.parts(nvars));
        MonomialOrder::blocks(&parts)
    }

    /// `(kind, len)` layout of the order over `nvars` variables.
    pub fn parts(&self, nvars: usize) -> Vec<(OrderKind, usize)> {
        match self {
            MonomialOrder::GlobalDegRevLex => vec![(OrderKind::GlobalDegRevLex, nvars)],
            MonomialOrder::LocalNegDegRevLex => vec![(OrderKind::LocalNegDegRevLex, nvars)],
            MonomialOrder::Block(blocks) => blocks.iter().map(|b| (b.kind, b.len)).collect(),
        }
    }

    /// Order induced on the variables for which `keep[i]` is true.
    pub fn restricted(&self, keep: &[bool]) -> Self {
        match self {
            MonomialOrder::GlobalDegRevLex | MonomialOrder::LocalNegDegRevLex => self.clone(),
            MonomialOrder::Block(blocks) => {
                let parts: Vec<_> = blocks
                    .iter()
                    .map(|b| (b.kind, keep[b.start..b.start + b.len].iter().filter(|k| **k).count()))
                    .collect();
                MonomialOrder::blocks(&parts).simplified()
            }
        }
    }

    /// Collapse a single-block order to its plain form.
    pub fn simplified(self) -> Self {
        match &self {
            MonomialOrder::Block(b) if b.len() == 1 => match b[0].kind {
                OrderKind::GlobalDegRevLex => MonomialOrder::GlobalDegRevLex,
                OrderKind::LocalNegDegRevLex => MonomialOrder::LocalNegDegRevLex,
            },
            _ => self,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |k: OrderKind| match k {
            OrderKind::GlobalDegRevLex => "global",
            OrderKind::LocalNegDegRevLex => "local",
        };
        match self {
            MonomialOrder::GlobalDegRevLex => write!(f, "global"),
            MonomialOrder::LocalNegDegRevLex => write!(f, "local"),
            MonomialOrder::Block(blocks) => {
                let parts: Vec<_> = blocks.iter().map(|b| format!("{}({})", name(b.kind), b.len)).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}
