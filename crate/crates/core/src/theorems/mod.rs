//! The bridge between crisp subsets and fuzzy subsets, and exhaustive or
//! sampled verification of the correspondences between them.

mod universe;
mod verify;

use thiserror::Error;

pub use universe::{
    random_structure, RelationMode, StructureIterator, Universe, UniverseDescriptor,
};
pub use verify::{
    search_prop14_literal_counterexample, verify, verify_equivalences, verify_prop10,
    verify_prop14_forward, verify_prop7, verify_prop8, Failure, Theorem, VerificationRun,
    VerifyOptions,
};

use crate::crisp;
use crate::error::DomainError;
use crate::fuzzy::{FuzzySubset, Grade};
use crate::structure::LeHypergroupoid;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("universe of {requested} structures exceeds the cap of {cap}")]
    CapExceeded { cap: u64, requested: String },
    #[error("exhaustive enumeration at order {order} must be enabled explicitly")]
    LargeExhaustive { order: usize },
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error("order {order} exceeds the enumeration cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// `f_A`: grade 1 on `A`, 0 elsewhere.
pub fn characteristic_function(order: usize, a: Subset) -> FuzzySubset {
    FuzzySubset::new(
        (0..order)
            .map(|x| {
                if a.contains(x) {
                    Grade::ONE
                } else {
                    Grade::ZERO
                }
            })
            .collect(),
    )
}

/// Elements with a positive grade. Inverts [`characteristic_function`].
pub fn support(f: &FuzzySubset) -> Subset {
    f.grades()
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(x, _)| x)
        .collect()
}

/// Which subsets [`enumerate_ideals`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealFilter {
    LeftIdeal,
    RightIdeal,
    Ideal,
    PrimeIdeal,
    SemiprimeIdeal,
}

impl IdealFilter {
    pub fn accepts(self, lh: &LeHypergroupoid, a: Subset) -> Result<bool, DomainError> {
        let r = match self {
            IdealFilter::LeftIdeal => crisp::is_left_ideal(lh, a)?,
            IdealFilter::RightIdeal => crisp::is_right_ideal(lh, a)?,
            IdealFilter::Ideal => crisp::is_ideal(lh, a)?,
            IdealFilter::PrimeIdeal => crisp::is_prime_ideal(lh, a)?,
            IdealFilter::SemiprimeIdeal => crisp::is_semiprime_ideal(lh, a)?,
        };
        Ok(r.holds())
    }
}

/// Default order cap for [`enumerate_ideals`] (it scans `2^n - 1` subsets).
pub const ENUMERATE_ORDER_CAP: usize = 20;

/// All nonempty subsets passing `filter`, in ascending mask order.
pub fn enumerate_ideals(
    lh: &LeHypergroupoid,
    filter: IdealFilter,
    order_cap: usize,
) -> Result<Vec<Subset>, VerifyError> {
    let n = lh.order();
    if n > order_cap {
        return Err(VerifyError::OrderCap {
            order: n,
            cap: order_cap,
        });
    }
    let mut out = Vec::new();
    for a in Subset::nonempty_subsets(n) {
        if filter.accepts(lh, a)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// Every fuzzy subset of an `order`-element carrier with grades from `grid`,
/// in lexicographic order of the grade vector.
pub fn grid_fuzzy_subsets(order: usize, grid: &[Grade]) -> impl Iterator<Item = FuzzySubset> + '_ {
    let total = (grid.len() as u64)
        .checked_pow(order as u32)
        .expect("grid too large");
    (0..total).map(move |mut k| {
        let mut grades = vec![Grade::ZERO; order];
        for g in grades.iter_mut().rev() {
            *g = grid[(k % grid.len() as u64) as usize];
            k /= grid.len() as u64;
        }
        FuzzySubset::new(grades)
    })
}
