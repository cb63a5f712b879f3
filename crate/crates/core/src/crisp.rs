//! Deciders for crisp subset properties: subgroupoids, one- and two-sided
//! ideals, prime and semiprime subsets and ideals.
//!
//! Every decider returns the first violation in lexicographic element order.
//! Subsets passed in must be nonempty and inside the carrier.

use crate::error::DomainError;
use crate::report::{PropertyReport, Witness};
use crate::structure::LeHypergroupoid;
use crate::subset::Subset;

fn operand(lh: &LeHypergroupoid, a: Subset) -> Result<(), DomainError> {
    lh.hyper().check_operand(a)
}

/// `A*A ⊆ A`. Witness: the least element of `A*A \ A`.
pub fn is_subgroupoid(lh: &LeHypergroupoid, a: Subset) -> Result<PropertyReport, DomainError> {
    operand(lh, a)?;
    let escaped = lh.hyper().product_unchecked(a, a).difference(a);
    Ok(PropertyReport::from_witness(
        "subgroupoid",
        escaped.first().map(|u| Witness::elements("closed", [u])),
    ))
}

/// `b ≤ a ∈ A ⇒ b ∈ A`, witness `[b, a]`.
fn down_closure_witness(lh: &LeHypergroupoid, a: Subset) -> Option<Witness> {
    lh.le()
        .pairs()
        .find(|&(lo, hi)| a.contains(hi) && !a.contains(lo))
        .map(|(lo, hi)| Witness::elements("down-closed", [lo, hi]))
}

/// `H*A ⊆ A` and `A` is downward closed under `≤`.
///
/// Absorption is decided on the set product; on failure the witness is the
/// first `[h, a, u]` with `u ∈ h∘a \ A`.
pub fn is_left_ideal(lh: &LeHypergroupoid, a: Subset) -> Result<PropertyReport, DomainError> {
    operand(lh, a)?;
    let h = lh.hyper();
    let carrier = lh.carrier();
    let witness = if h.product_unchecked(carrier, a).is_subset_of(a) {
        down_closure_witness(lh, a)
    } else {
        carrier
            .iter()
            .flat_map(|x| a.iter().map(move |y| (x, y)))
            .find_map(|(x, y)| {
                h.cell(x, y)
                    .difference(a)
                    .first()
                    .map(|u| Witness::elements("left-absorbing", [x, y, u]))
            })
    };
    Ok(PropertyReport::from_witness("left-ideal", witness))
}

/// `A*H ⊆ A` and downward closure. Witness `[a, h, u]` with `u ∈ a∘h \ A`.
pub fn is_right_ideal(lh: &LeHypergroupoid, a: Subset) -> Result<PropertyReport, DomainError> {
    operand(lh, a)?;
    let h = lh.hyper();
    let carrier = lh.carrier();
    let witness = if h.product_unchecked(a, carrier).is_subset_of(a) {
        down_closure_witness(lh, a)
    } else {
        a.iter()
            .flat_map(|x| carrier.iter().map(move |y| (x, y)))
            .find_map(|(x, y)| {
                h.cell(x, y)
                    .difference(a)
                    .first()
                    .map(|u| Witness::elements("right-absorbing", [x, y, u]))
            })
    };
    Ok(PropertyReport::from_witness("right-ideal", witness))
}

pub fn is_ideal(lh: &LeHypergroupoid, a: Subset) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "ideal",
        [is_left_ideal(lh, a)?, is_right_ideal(lh, a)?],
    ))
}

/// Left ideal decided cell by cell: `h∘a ⊆ A` for every `h ∈ H`, `a ∈ A`,
/// plus the same downward-closure clause. Never forms `H*A`.
pub fn elementwise_left_ideal_oracle(
    lh: &LeHypergroupoid,
    a: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, a)?;
    let n = lh.order();
    let mut witness = None;
    'scan: for x in 0..n {
        for y in a.iter() {
            for u in lh.cell(x, y).iter() {
                if !a.contains(u) {
                    witness = Some(Witness::elements("left-absorbing", [x, y, u]));
                    break 'scan;
                }
            }
        }
    }
    let witness = witness.or_else(|| down_closure_witness(lh, a));
    Ok(PropertyReport::from_witness("left-ideal", witness))
}

/// Right-hand counterpart of [`elementwise_left_ideal_oracle`].
pub fn elementwise_right_ideal_oracle(
    lh: &LeHypergroupoid,
    a: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, a)?;
    let n = lh.order();
    let mut witness = None;
    'scan: for x in a.iter() {
        for y in 0..n {
            for u in lh.cell(x, y).iter() {
                if !a.contains(u) {
                    witness = Some(Witness::elements("right-absorbing", [x, y, u]));
                    break 'scan;
                }
            }
        }
    }
    let witness = witness.or_else(|| down_closure_witness(lh, a));
    Ok(PropertyReport::from_witness("right-ideal", witness))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// First prime clause alone: `a∘b ⊆ I ⇒ a ∈ I or b ∈ I`.
pub fn prime_elementwise_clause(
    lh: &LeHypergroupoid,
    i: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, i)?;
    let witness = pairs(lh.order())
        .find(|&(a, b)| lh.cell(a, b).is_subset_of(i) && !i.contains(a) && !i.contains(b))
        .map(|(a, b)| Witness::elements("prime-product", [a, b]));
    Ok(PropertyReport::from_witness("prime-clause", witness))
}

/// Both prime clauses: the elementwise implication, then every `a∘b` either
/// inside `I` or disjoint from it. No `≤` condition.
pub fn is_prime_subset(lh: &LeHypergroupoid, i: Subset) -> Result<PropertyReport, DomainError> {
    let first = prime_elementwise_clause(lh, i)?;
    if !first.holds() {
        return Ok(first.renamed("prime-subset"));
    }
    let witness = pairs(lh.order())
        .find(|&(a, b)| {
            let c = lh.cell(a, b);
            !c.is_subset_of(i) && !c.is_disjoint(i)
        })
        .map(|(a, b)| Witness::elements("contained-or-disjoint", [a, b]));
    Ok(PropertyReport::from_witness("prime-subset", witness))
}

/// `A*B ⊆ I ⇒ A ⊆ I or B ⊆ I` over every pair of nonempty subsets.
/// Exponential; an oracle for [`prime_elementwise_clause`].
pub fn setwise_prime_oracle(
    lh: &LeHypergroupoid,
    i: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, i)?;
    let h = lh.hyper();
    let n = lh.order();
    let witness = Subset::nonempty_subsets(n)
        .flat_map(|a| Subset::nonempty_subsets(n).map(move |b| (a, b)))
        .find(|&(a, b)| {
            h.product_unchecked(a, b).is_subset_of(i) && !a.is_subset_of(i) && !b.is_subset_of(i)
        })
        .map(|(a, b)| Witness::subsets("setwise-prime", [a, b]));
    Ok(PropertyReport::from_witness("setwise-prime", witness))
}

pub fn is_prime_ideal(lh: &LeHypergroupoid, i: Subset) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "prime-ideal",
        [is_ideal(lh, i)?, is_prime_subset(lh, i)?],
    ))
}

/// First semiprime clause alone: `a∘a ⊆ I ⇒ a ∈ I`.
pub fn semiprime_elementwise_clause(
    lh: &LeHypergroupoid,
    i: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, i)?;
    let witness = (0..lh.order())
        .find(|&a| lh.cell(a, a).is_subset_of(i) && !i.contains(a))
        .map(|a| Witness::elements("semiprime-square", [a]));
    Ok(PropertyReport::from_witness("semiprime-clause", witness))
}

pub fn is_semiprime_subset(lh: &LeHypergroupoid, i: Subset) -> Result<PropertyReport, DomainError> {
    let first = semiprime_elementwise_clause(lh, i)?;
    if !first.holds() {
        return Ok(first.renamed("semiprime-subset"));
    }
    let witness = (0..lh.order())
        .find(|&a| {
            let c = lh.cell(a, a);
            !c.is_subset_of(i) && !c.is_disjoint(i)
        })
        .map(|a| Witness::elements("square-contained-or-disjoint", [a]));
    Ok(PropertyReport::from_witness("semiprime-subset", witness))
}

/// `A*A ⊆ I ⇒ A ⊆ I` over every nonempty `A`. Oracle for
/// [`semiprime_elementwise_clause`].
pub fn setwise_semiprime_oracle(
    lh: &LeHypergroupoid,
    i: Subset,
) -> Result<PropertyReport, DomainError> {
    operand(lh, i)?;
    let h = lh.hyper();
    let witness = Subset::nonempty_subsets(lh.order())
        .find(|&a| h.product_unchecked(a, a).is_subset_of(i) && !a.is_subset_of(i))
        .map(|a| Witness::subsets("setwise-semiprime", [a]));
    Ok(PropertyReport::from_witness("setwise-semiprime", witness))
}

pub fn is_semiprime_ideal(lh: &LeHypergroupoid, i: Subset) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "semiprime-ideal",
        [is_ideal(lh, i)?, is_semiprime_subset(lh, i)?],
    ))
}
