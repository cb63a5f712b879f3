//! Finite hypergroupoids, the bare relation `≤`, and the induced product on
//! nonempty subsets.
//!
//! Elements are named `0..n`. A hyperoperation is an `n × n` table whose
//! cells are nonempty subsets; the product of two nonempty subsets is the
//! union of the cells indexed by their cartesian product.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{DomainError, StructureError};
use crate::report::{PropertyReport, Witness};
use crate::subset::{Subset, MAX_ORDER};

/// An `n × n` hyperoperation table, row-major: cell `(a, b)` is `a∘b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergroupoid {
    order: usize,
    cells: Vec<Subset>,
}

impl Hypergroupoid {
    /// Builds a table without checking cell contents; see [`LeHypergroupoid::validate`].
    ///
    /// Panics if `order` is 0 or above [`MAX_ORDER`], or if `cells` is not `order²` long.
    pub fn from_cells(order: usize, cells: Vec<Subset>) -> Self {
        assert!(
            (1..=MAX_ORDER).contains(&order),
            "order must be in 1..={MAX_ORDER}, got {order}"
        );
        assert_eq!(cells.len(), order * order, "table must have order² cells");
        Hypergroupoid { order, cells }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Subset) -> Self {
        let cells = (0..order)
            .flat_map(|a| (0..order).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Self::from_cells(order, cells)
    }

    /// Lifts a binary operation to the hyperoperation `a∘b = {a·b}`.
    pub fn from_operation(order: usize, mut op: impl FnMut(usize, usize) -> usize) -> Self {
        Self::from_fn(order, |a, b| Subset::singleton(op(a, b)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.order)
    }

    /// The cell `a∘b`.
    #[inline]
    pub fn cell(&self, a: usize, b: usize) -> Subset {
        self.cells[a * self.order + b]
    }

    pub fn cells(&self) -> &[Subset] {
        &self.cells
    }

    /// `A*B`, the union of `a∘b` over `a ∈ A`, `b ∈ B`.
    pub fn product(&self, a: Subset, b: Subset) -> Result<Subset, DomainError> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        Ok(self.product_unchecked(a, b))
    }

    pub(crate) fn product_unchecked(&self, a: Subset, b: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out = out.union(self.cell(x, y));
            }
        }
        out
    }

    /// Whether `x ∈ p∘q` for some `p ∈ A`, `q ∈ B`, decided pair by pair
    /// without forming the product.
    pub fn product_contains(&self, x: usize, a: Subset, b: Subset) -> Result<bool, DomainError> {
        self.check_element(x)?;
        self.check_operand(a)?;
        self.check_operand(b)?;
        Ok(a.iter()
            .any(|p| b.iter().any(|q| self.cell(p, q).contains(x))))
    }

    /// Whether `{x}*{y}` coincides with the cell `x∘y`.
    pub fn singleton_product_is_circ(&self, x: usize, y: usize) -> Result<bool, DomainError> {
        self.check_element(x)?;
        self.check_element(y)?;
        let p = self.product(Subset::singleton(x), Subset::singleton(y))?;
        Ok(p == self.cell(x, y))
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<(), DomainError> {
        if x < self.order {
            Ok(())
        } else {
            Err(DomainError::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    pub(crate) fn check_subset(&self, a: Subset) -> Result<(), DomainError> {
        if a.within(self.order) {
            Ok(())
        } else {
            Err(DomainError::SubsetOutOfRange {
                subset: a.to_string(),
                order: self.order,
            })
        }
    }

    /// Range check plus nonemptiness, the precondition of `*` and of the
    /// subset deciders.
    pub(crate) fn check_operand(&self, a: Subset) -> Result<(), DomainError> {
        if a.is_empty() {
            return Err(DomainError::EmptySubset);
        }
        self.check_subset(a)
    }
}

/// A binary relation on the carrier with no axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Relation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn empty() -> Self {
        Relation::default()
    }

    pub fn identity(order: usize) -> Self {
        (0..order).map(|x| (x, x)).collect()
    }

    /// Decodes an `order²`-bit mask; bit `x·order + y` means `x ≤ y`.
    pub fn from_mask(order: usize, mask: u128) -> Self {
        (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .filter(|&(x, y)| mask >> (x * order + y) & 1 == 1)
            .collect()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.pairs.insert((x, y));
    }

    /// Pairs `(x, y)` meaning `x ≤ y`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl FromIterator<(usize, usize)> for Relation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Relation {
            pairs: iter.into_iter().collect(),
        }
    }
}

/// Which order axioms the relation happens to satisfy. Purely informational:
/// none of the deciders rely on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationDiagnostics {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    /// `a ≤ b` implies `a∘c ≼ b∘c` and `c∘a ≼ c∘b`, where `A ≼ B` means every
    /// element of `A` is below some element of `B`.
    pub compatible: bool,
}

/// A hypergroupoid together with a relation `≤` on the same carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeHypergroupoid {
    hyper: Hypergroupoid,
    le: Relation,
}

impl LeHypergroupoid {
    pub fn new(hyper: Hypergroupoid, le: Relation) -> Result<Self, StructureError> {
        let lh = Self::new_unchecked(hyper, le);
        match lh.validate().into_witness() {
            None => Ok(lh),
            Some(w) => Err(StructureError {
                reason: format!("{} at {:?}", w.clause, w.elements),
            }),
        }
    }

    /// Pairs the parts without validation. The deciders assume a valid
    /// structure; use this only to feed [`validate`](Self::validate).
    pub fn new_unchecked(hyper: Hypergroupoid, le: Relation) -> Self {
        LeHypergroupoid { hyper, le }
    }

    /// A plain hypergroupoid, modeled with the identity relation so the
    /// downward-closure clause of ideals is vacuous.
    pub fn plain(hyper: Hypergroupoid) -> Self {
        let le = Relation::identity(hyper.order());
        LeHypergroupoid { hyper, le }
    }

    pub fn hyper(&self) -> &Hypergroupoid {
        &self.hyper
    }

    pub fn le(&self) -> &Relation {
        &self.le
    }

    pub fn order(&self) -> usize {
        self.hyper.order
    }

    pub fn cell(&self, a: usize, b: usize) -> Subset {
        self.hyper.cell(a, b)
    }

    pub fn carrier(&self) -> Subset {
        self.hyper.carrier()
    }

    /// Checks every cell is a nonempty subset of the carrier and every
    /// relation pair is in range. The witness is the first offending cell
    /// `(a, b)` or pair `(x, y)`.
    pub fn validate(&self) -> PropertyReport {
        const NAME: &str = "valid-structure";
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let c = self.cell(a, b);
                if c.is_empty() {
                    return PropertyReport::failing(NAME, Witness::elements("empty-cell", [a, b]));
                }
                if !c.within(n) {
                    return PropertyReport::failing(
                        NAME,
                        Witness::elements("cell-out-of-range", [a, b]),
                    );
                }
            }
        }
        if let Some((x, y)) = self.le.pairs().find(|&(x, y)| x >= n || y >= n) {
            return PropertyReport::failing(
                NAME,
                Witness::elements("relation-out-of-range", [x, y]),
            );
        }
        PropertyReport::holding(NAME)
    }

    pub fn relation_diagnostics(&self) -> RelationDiagnostics {
        let n = self.order();
        let le = &self.le;
        let reflexive = (0..n).all(|x| le.contains(x, x));
        let antisymmetric = le.pairs().all(|(x, y)| x == y || !le.contains(y, x));
        let transitive = le.pairs().all(|(x, y)| {
            le.pairs()
                .filter(|&(p, _)| p == y)
                .all(|(_, z)| le.contains(x, z))
        });
        let dominated =
            |lo: Subset, hi: Subset| lo.iter().all(|u| hi.iter().any(|v| le.contains(u, v)));
        let compatible = le.pairs().all(|(a, b)| {
            (0..n).all(|c| {
                dominated(self.cell(a, c), self.cell(b, c))
                    && dominated(self.cell(c, a), self.cell(c, b))
            })
        });
        RelationDiagnostics {
            reflexive,
            antisymmetric,
            transitive,
            compatible,
        }
    }
}

impl Serialize for LeHypergroupoid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let n = self.order();
        let table: Vec<&[Subset]> = self.hyper.cells.chunks(n).collect();
        let le: Vec<(usize, usize)> = self.le.pairs().collect();
        let mut st = serializer.serialize_struct("LeHypergroupoid", 3)?;
        st.serialize_field("order", &n)?;
        st.serialize_field("table", &table)?;
        st.serialize_field("le", &le)?;
        st.end()
    }
}
