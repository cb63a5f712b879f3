//! Universes of structures to verify over: every structure of a given order,
//! a seeded random sample, or an explicit list.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VerifyError;
use crate::structure::{Hypergroupoid, LeHypergroupoid, Relation};
use crate::subset::{Subset, MAX_ORDER};

/// Which relations an exhaustive universe pairs with each table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationMode {
    /// Every subset of `H × H`.
    All,
    /// Only the identity relation (table-only enumeration).
    Identity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universe {
    Exhaustive {
        order: usize,
        relations: RelationMode,
    },
    Sampled {
        order: usize,
        count: u64,
        seed: u64,
    },
    Explicit {
        label: String,
        structures: Vec<LeHypergroupoid>,
    },
}

/// What gets recorded about a universe in a run report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum UniverseDescriptor {
    Exhaustive {
        order: usize,
        relations: RelationMode,
        size: u64,
    },
    Sampled {
        order: usize,
        count: u64,
        seed: u64,
    },
    Explicit {
        label: String,
        size: u64,
    },
}

/// `(2^n - 1)^(n²)` tables times the relation count; `None` on overflow.
fn exhaustive_size(order: usize, relations: RelationMode) -> Option<u128> {
    if order == 0 || order >= 7 {
        return None;
    }
    let cell_choices = (1u128 << order) - 1;
    let tables = cell_choices.checked_pow((order * order) as u32)?;
    match relations {
        RelationMode::Identity => Some(tables),
        RelationMode::All => tables.checked_mul(1u128 << (order * order)),
    }
}

impl Universe {
    pub fn exhaustive(order: usize) -> Self {
        Universe::Exhaustive {
            order,
            relations: RelationMode::All,
        }
    }

    pub fn sampled(order: usize, count: u64, seed: u64) -> Self {
        Universe::Sampled { order, count, seed }
    }

    pub fn explicit(label: impl Into<String>, structures: Vec<LeHypergroupoid>) -> Self {
        Universe::Explicit {
            label: label.into(),
            structures,
        }
    }

    /// Number of structures, or `None` if it does not fit in `u128`.
    pub fn size(&self) -> Option<u128> {
        match self {
            Universe::Exhaustive { order, relations } => exhaustive_size(*order, *relations),
            Universe::Sampled { count, .. } => Some(*count as u128),
            Universe::Explicit { structures, .. } => Some(structures.len() as u128),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Universe::Sampled { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Checks the universe is well formed and within `cap` structures;
    /// returns its size.
    pub fn check(&self, cap: u64, allow_large: bool) -> Result<u64, VerifyError> {
        match self {
            Universe::Exhaustive { order, .. } | Universe::Sampled { order, .. } => {
                if !(1..=MAX_ORDER).contains(order) {
                    return Err(VerifyError::InvalidUniverse(format!(
                        "order {order} is outside 1..={MAX_ORDER}"
                    )));
                }
            }
            Universe::Explicit { structures, .. } => {
                if let Some((k, bad)) = structures
                    .iter()
                    .enumerate()
                    .map(|(k, s)| (k, s.validate()))
                    .find(|(_, r)| !r.holds())
                {
                    return Err(VerifyError::InvalidUniverse(format!(
                        "structure {k} is invalid: {:?}",
                        bad.witness()
                    )));
                }
            }
        }
        if let Universe::Exhaustive { order, .. } = self {
            if *order > 2 && !allow_large {
                return Err(VerifyError::LargeExhaustive { order: *order });
            }
        }
        match self.size() {
            Some(size) if size <= cap as u128 => Ok(size as u64),
            size => Err(VerifyError::CapExceeded {
                cap,
                requested: size.map_or_else(|| "more than 2^128".to_string(), |s| s.to_string()),
            }),
        }
    }

    pub fn descriptor(&self) -> UniverseDescriptor {
        match self {
            Universe::Exhaustive { order, relations } => UniverseDescriptor::Exhaustive {
                order: *order,
                relations: *relations,
                size: self
                    .size()
                    .map_or(u64::MAX, |s| s.min(u64::MAX as u128) as u64),
            },
            Universe::Sampled { order, count, seed } => UniverseDescriptor::Sampled {
                order: *order,
                count: *count,
                seed: *seed,
            },
            Universe::Explicit { label, structures } => UniverseDescriptor::Explicit {
                label: label.clone(),
                size: structures.len() as u64,
            },
        }
    }

    /// The structure at `index`. Exhaustive universes list tables in
    /// lexicographic order of their cells (each cell a mask in `1..2^n`,
    /// cell `(0,0)` most significant), and for each table every relation
    /// mask in ascending order. Sampled universes derive structure `index`
    /// from its own ChaCha stream, so any index can be produced directly.
    ///
    /// Panics if `index` is past the end.
    pub fn structure_at(&self, index: u64) -> LeHypergroupoid {
        match self {
            Universe::Exhaustive { order, relations } => {
                let n = *order;
                let rel_count: u64 = match relations {
                    RelationMode::All => 1u64 << (n * n),
                    RelationMode::Identity => 1,
                };
                let (mut table_idx, rel_idx) = (index / rel_count, index % rel_count);
                let base = (1u64 << n) - 1;
                let mut cells = vec![Subset::EMPTY; n * n];
                for cell in cells.iter_mut().rev() {
                    *cell = Subset::from_bits(table_idx % base + 1);
                    table_idx /= base;
                }
                assert_eq!(
                    table_idx, 0,
                    "index {index} is past the end of the universe"
                );
                let le = match relations {
                    RelationMode::All => Relation::from_mask(n, rel_idx as u128),
                    RelationMode::Identity => Relation::identity(n),
                };
                LeHypergroupoid::new_unchecked(Hypergroupoid::from_cells(n, cells), le)
            }
            Universe::Sampled { order, count, seed } => {
                assert!(
                    index < *count,
                    "index {index} is past the end of the universe"
                );
                random_structure(*order, *seed, index)
            }
            Universe::Explicit { structures, .. } => structures[index as usize].clone(),
        }
    }

    /// Iterates every structure in index order.
    pub fn iter(&self) -> Result<StructureIterator<'_>, VerifyError> {
        let len = match self.size() {
            Some(s) if s <= u64::MAX as u128 => s as u64,
            _ => {
                return Err(VerifyError::CapExceeded {
                    cap: u64::MAX,
                    requested: "more than 2^64".into(),
                })
            }
        };
        Ok(StructureIterator {
            universe: self,
            position: 0,
            len,
        })
    }
}

/// Random structure number `stream` for `seed`: every cell a uniformly random
/// nonempty subset, every relation pair present with probability 1/2.
pub fn random_structure(order: usize, seed: u64, stream: u64) -> LeHypergroupoid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let top = Subset::full(order).bits();
    let cells = (0..order * order)
        .map(|_| Subset::from_bits(rng.gen_range(1..=top)))
        .collect();
    let mut le = Relation::empty();
    for x in 0..order {
        for y in 0..order {
            if rng.gen_bool(0.5) {
                le.insert(x, y);
            }
        }
    }
    LeHypergroupoid::new_unchecked(Hypergroupoid::from_cells(order, cells), le)
}

#[derive(Clone, Debug)]
pub struct StructureIterator<'a> {
    universe: &'a Universe,
    position: u64,
    len: u64,
}

impl StructureIterator<'_> {
    pub fn position(&self) -> u64 {
        self.position
    }
}

impl Iterator for StructureIterator<'_> {
    type Item = LeHypergroupoid;

    fn next(&mut self) -> Option<LeHypergroupoid> {
        if self.position >= self.len {
            return None;
        }
        let s = self.universe.structure_at(self.position);
        self.position += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.len - self.position) as usize;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for StructureIterator<'_> {}
