use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    characteristic_function, grid_fuzzy_subsets, Universe, UniverseDescriptor, VerifyError,
};
use crate::crisp;
use crate::error::DomainError;
use crate::fuzzy::{self, FuzzySubset, Grade};
use crate::report::PropertyReport;
use crate::structure::LeHypergroupoid;
use crate::subset::Subset;

/// A correspondence to verify, or a claim to search counterexamples for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Left ideal via `H*A` agrees with the cell-by-cell check, both sides.
    P2Equiv,
    /// Left ideal `A` ⇔ fuzzy left ideal `f_A`.
    P7Left,
    /// Right ideal `A` ⇔ fuzzy right ideal `f_A`.
    P7Right,
    /// Both sides of [`Theorem::P7Left`] and [`Theorem::P7Right`].
    P7,
    /// Ideal `A` ⇔ fuzzy ideal `f_A`.
    P8,
    /// Prime ideal `A` ⇔ fuzzy prime ideal `f_A`.
    P10,
    /// Semiprime ideal `A` ⇔ fuzzy semiprime ideal `f_A`.
    P14Forward,
    /// Searches for `f_A` a fuzzy semiprime ideal while `A` is not a prime ideal.
    P14LiteralConverse,
    /// Searches for `f` meeting the diagonal semiprime condition without being
    /// a fuzzy semiprime ideal.
    R13DiagonalConverse,
    /// Elementwise prime clause ⇔ setwise prime clause.
    D5Equiv,
    /// Elementwise semiprime clause ⇔ setwise semiprime clause.
    D11Equiv,
    /// Consequences of fuzzy ideals on squares, prime ⇒ semiprime at the fuzzy
    /// level, and the fuzzy prime ideal characterization.
    R13,
    /// Max form of the fuzzy ideal product clauses.
    FMaxEquiv,
}

impl Theorem {
    pub const ALL: [Theorem; 13] = [
        Theorem::P2Equiv,
        Theorem::P7Left,
        Theorem::P7Right,
        Theorem::P7,
        Theorem::P8,
        Theorem::P10,
        Theorem::P14Forward,
        Theorem::P14LiteralConverse,
        Theorem::R13DiagonalConverse,
        Theorem::D5Equiv,
        Theorem::D11Equiv,
        Theorem::R13,
        Theorem::FMaxEquiv,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::P2Equiv => "P2equiv",
            Theorem::P7Left => "P7L",
            Theorem::P7Right => "P7R",
            Theorem::P7 => "P7",
            Theorem::P8 => "P8",
            Theorem::P10 => "P10",
            Theorem::P14Forward => "P14fwd",
            Theorem::P14LiteralConverse => "P14conv-literal",
            Theorem::R13DiagonalConverse => "R13diag-converse",
            Theorem::D5Equiv => "D5equiv",
            Theorem::D11Equiv => "D11equiv",
            Theorem::R13 => "R13",
            Theorem::FMaxEquiv => "FMAXequiv",
        }
    }

    pub fn from_id(id: &str) -> Option<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(id))
    }

    /// Claims whose "failures" are counterexamples to a statement that is
    /// expected not to hold.
    pub fn is_search(self) -> bool {
        matches!(
            self,
            Theorem::P14LiteralConverse | Theorem::R13DiagonalConverse
        )
    }

    fn uses_grid(self) -> bool {
        matches!(
            self,
            Theorem::FMaxEquiv | Theorem::R13 | Theorem::R13DiagonalConverse
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest universe accepted.
    pub max_structures: u64,
    /// Permit exhaustive enumeration above order 2.
    pub allow_large: bool,
    /// Failures kept in the report (at least one is always kept).
    pub max_failures: usize,
    /// Grades per element for fuzzy-subset sweeps.
    pub grid: Vec<Grade>,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_structures: 50_000_000,
            allow_large: false,
            max_failures: 10,
            grid: Grade::uniform_grid(4),
            parallel: true,
        }
    }
}

/// One (structure, subset) pair on which a check disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub structure_index: u64,
    pub structure: LeHypergroupoid,
    pub check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzzy: Option<FuzzySubset>,
    /// The decider verdicts that were compared, with their witnesses.
    pub verdicts: Vec<PropertyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRun {
    pub theorem_id: &'static str,
    pub universe: UniverseDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub structures_checked: u64,
    pub cases_checked: u64,
    pub failures_total: u64,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<&'static str, u64>,
}

impl VerificationRun {
    /// True iff no case failed.
    pub fn clean(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    structures: u64,
    cases: u64,
    failures_total: u64,
    failures: Vec<Failure>,
    observations: BTreeMap<&'static str, u64>,
}

impl Tally {
    fn observe(&mut self, key: &'static str) {
        *self.observations.entry(key).or_default() += 1;
    }

    fn merge(&mut self, other: Tally, keep: usize) {
        self.structures += other.structures;
        self.cases += other.cases;
        self.failures_total += other.failures_total;
        let room = keep.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        for (k, v) in other.observations {
            *self.observations.entry(k).or_default() += v;
        }
    }
}

/// Per-structure context handed to the checks.
struct Ctx<'a> {
    index: u64,
    lh: &'a LeHypergroupoid,
    keep: usize,
    tally: &'a mut Tally,
}

impl Ctx<'_> {
    fn fail(
        &mut self,
        check: &'static str,
        subset: Option<Subset>,
        fuzzy: Option<FuzzySubset>,
        verdicts: Vec<PropertyReport>,
    ) {
        self.tally.failures_total += 1;
        if self.tally.failures.len() < self.keep {
            self.tally.failures.push(Failure {
                structure_index: self.index,
                structure: self.lh.clone(),
                check,
                subset,
                fuzzy,
                verdicts,
            });
        }
    }

    /// Compares two verdicts on subset `a`; records a failure on disagreement.
    fn agree(
        &mut self,
        check: &'static str,
        a: Subset,
        left: PropertyReport,
        right: PropertyReport,
    ) {
        self.tally.cases += 1;
        if left.holds() != right.holds() {
            self.fail(check, Some(a), None, vec![left, right]);
        }
    }

    fn agree_fuzzy(
        &mut self,
        check: &'static str,
        f: &FuzzySubset,
        left: PropertyReport,
        right: PropertyReport,
    ) {
        self.tally.cases += 1;
        if left.holds() != right.holds() {
            self.fail(check, None, Some(f.clone()), vec![left, right]);
        }
    }

    /// Records a failure when `premise` holds and `conclusion` does not.
    fn implies(
        &mut self,
        check: &'static str,
        f: &FuzzySubset,
        premise: PropertyReport,
        conclusion: PropertyReport,
    ) {
        self.tally.cases += 1;
        if premise.holds() && !conclusion.holds() {
            self.fail(check, None, Some(f.clone()), vec![premise, conclusion]);
        }
    }
}

fn check_structure(theorem: Theorem, ctx: &mut Ctx<'_>, grid: &[Grade]) -> Result<(), DomainError> {
    let lh = ctx.lh;
    let n = lh.order();
    let f_of = |a: Subset| characteristic_function(n, a);

    if theorem.uses_grid() {
        for f in grid_fuzzy_subsets(n, grid) {
            check_fuzzy(theorem, ctx, &f)?;
        }
        if theorem == Theorem::R13 {
            // Crisp prime ⇒ semiprime is measured, not asserted.
            for a in Subset::nonempty_subsets(n) {
                if crisp::is_prime_ideal(lh, a)?.holds() {
                    ctx.tally.observe("crisp_prime_ideals");
                    if crisp::is_semiprime_ideal(lh, a)?.holds() {
                        ctx.tally.observe("crisp_prime_ideals_also_semiprime");
                    }
                }
            }
        }
        return Ok(());
    }

    for a in Subset::nonempty_subsets(n) {
        match theorem {
            Theorem::P2Equiv => {
                ctx.agree(
                    "P2L",
                    a,
                    crisp::is_left_ideal(lh, a)?,
                    crisp::elementwise_left_ideal_oracle(lh, a)?,
                );
                ctx.agree(
                    "P2R",
                    a,
                    crisp::is_right_ideal(lh, a)?,
                    crisp::elementwise_right_ideal_oracle(lh, a)?,
                );
            }
            Theorem::P7Left | Theorem::P7Right | Theorem::P7 => {
                if theorem != Theorem::P7Right {
                    ctx.agree(
                        "P7L",
                        a,
                        crisp::is_left_ideal(lh, a)?,
                        fuzzy::is_fuzzy_left_ideal(lh, &f_of(a))?,
                    );
                }
                if theorem != Theorem::P7Left {
                    ctx.agree(
                        "P7R",
                        a,
                        crisp::is_right_ideal(lh, a)?,
                        fuzzy::is_fuzzy_right_ideal(lh, &f_of(a))?,
                    );
                }
            }
            Theorem::P8 => ctx.agree(
                "P8",
                a,
                crisp::is_ideal(lh, a)?,
                fuzzy::is_fuzzy_ideal(lh, &f_of(a))?,
            ),
            Theorem::P10 => ctx.agree(
                "P10",
                a,
                crisp::is_prime_ideal(lh, a)?,
                fuzzy::is_fuzzy_prime_ideal(lh, &f_of(a))?,
            ),
            Theorem::P14Forward => ctx.agree(
                "P14fwd",
                a,
                crisp::is_semiprime_ideal(lh, a)?,
                fuzzy::is_fuzzy_semiprime_ideal(lh, &f_of(a))?,
            ),
            Theorem::P14LiteralConverse => {
                ctx.tally.cases += 1;
                let fuzzy_semiprime = fuzzy::is_fuzzy_semiprime_ideal(lh, &f_of(a))?;
                if !fuzzy_semiprime.holds() {
                    continue;
                }
                let prime = crisp::is_prime_ideal(lh, a)?;
                if !prime.holds() {
                    let semiprime = crisp::is_semiprime_ideal(lh, a)?;
                    ctx.fail(
                        "P14conv-literal",
                        Some(a),
                        None,
                        vec![fuzzy_semiprime, semiprime, prime],
                    );
                }
            }
            Theorem::D5Equiv => ctx.agree(
                "D5",
                a,
                crisp::prime_elementwise_clause(lh, a)?,
                crisp::setwise_prime_oracle(lh, a)?,
            ),
            Theorem::D11Equiv => ctx.agree(
                "D11",
                a,
                crisp::semiprime_elementwise_clause(lh, a)?,
                crisp::setwise_semiprime_oracle(lh, a)?,
            ),
            Theorem::R13 | Theorem::R13DiagonalConverse | Theorem::FMaxEquiv => unreachable!(),
        }
    }
    Ok(())
}

fn check_fuzzy(theorem: Theorem, ctx: &mut Ctx<'_>, f: &FuzzySubset) -> Result<(), DomainError> {
    let lh = ctx.lh;
    match theorem {
        Theorem::FMaxEquiv => {
            let left = fuzzy::left_absorbing_clause(lh, f)?;
            let right = fuzzy::right_absorbing_clause(lh, f)?;
            let both = PropertyReport::all("left-and-right-absorbing", [left, right]);
            ctx.agree_fuzzy("FMAX", f, fuzzy::fuzzy_ideal_max_oracle(lh, f)?, both);
        }
        Theorem::R13 => {
            let ideal = fuzzy::is_fuzzy_ideal(lh, f)?;
            let prime_ideal = fuzzy::is_fuzzy_prime_ideal(lh, f)?;
            let prime_subset = fuzzy::is_fuzzy_prime_subset(lh, f)?;
            let semiprime_ideal = fuzzy::is_fuzzy_semiprime_ideal(lh, f)?;

            // A fuzzy ideal dominates on squares: f(u) ≥ f(a) for u ∈ a∘a.
            let squares = square_domination(lh, f);
            ctx.implies("R13-squares", f, ideal.clone(), squares);
            ctx.implies(
                "R13-prime-semiprime",
                f,
                prime_ideal.clone(),
                semiprime_ideal.clone(),
            );
            ctx.implies(
                "R13-semiprime-diagonal",
                f,
                semiprime_ideal.clone(),
                fuzzy::diagonal_semiprime_condition(lh, f)?,
            );
            let conj = PropertyReport::all(
                "fuzzy-ideal-and-prime-subset",
                [ideal.clone(), prime_subset],
            );
            ctx.agree_fuzzy("R13-prime-characterization", f, prime_ideal.clone(), conj);
            let conj = PropertyReport::all(
                "fuzzy-ideal-and-semiprime-subset",
                [ideal, fuzzy::is_fuzzy_semiprime_subset(lh, f)?],
            );
            ctx.agree_fuzzy("R13-semiprime-characterization", f, semiprime_ideal, conj);
        }
        Theorem::R13DiagonalConverse => {
            ctx.tally.cases += 1;
            let diagonal = fuzzy::diagonal_semiprime_condition(lh, f)?;
            if diagonal.holds() {
                let semiprime_ideal = fuzzy::is_fuzzy_semiprime_ideal(lh, f)?;
                if !semiprime_ideal.holds() {
                    ctx.fail(
                        "R13diag-converse",
                        None,
                        Some(f.clone()),
                        vec![diagonal, semiprime_ideal],
                    );
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(())
}

fn square_domination(lh: &LeHypergroupoid, f: &FuzzySubset) -> PropertyReport {
    let witness = (0..lh.order()).find_map(|a| {
        lh.cell(a, a)
            .iter()
            .find(|&u| f.grade(u) < f.grade(a))
            .map(|u| crate::report::Witness::elements("square-dominates", [a, u]))
    });
    PropertyReport::from_witness("square-domination", witness)
}

const CHUNK: u64 = 2048;

fn run_range(
    theorem: Theorem,
    universe: &Universe,
    range: Range<u64>,
    opts: &VerifyOptions,
    keep: usize,
) -> Result<Tally, DomainError> {
    let mut tally = Tally::default();
    for index in range {
        let lh = universe.structure_at(index);
        tally.structures += 1;
        let mut ctx = Ctx {
            index,
            lh: &lh,
            keep,
            tally: &mut tally,
        };
        check_structure(theorem, &mut ctx, &opts.grid)?;
    }
    Ok(tally)
}

/// Runs `theorem` over every structure of `universe`.
///
/// Work is split into fixed index ranges; results are merged in index order,
/// so the report does not depend on scheduling.
pub fn verify(
    theorem: Theorem,
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    let size = universe.check(opts.max_structures, opts.allow_large)?;
    if theorem.uses_grid() && opts.grid.is_empty() {
        return Err(VerifyError::InvalidUniverse("grade grid is empty".into()));
    }
    let keep = opts.max_failures.max(1);
    let ranges: Vec<Range<u64>> = (0..size.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(size))
        .collect();
    let tallies: Vec<Result<Tally, DomainError>> = if opts.parallel {
        ranges
            .into_par_iter()
            .map(|r| run_range(theorem, universe, r, opts, keep))
            .collect()
    } else {
        ranges
            .into_iter()
            .map(|r| run_range(theorem, universe, r, opts, keep))
            .collect()
    };
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t?, keep);
    }
    Ok(VerificationRun {
        theorem_id: theorem.id(),
        universe: universe.descriptor(),
        seed: universe.seed(),
        structures_checked: total.structures,
        cases_checked: total.cases,
        failures_total: total.failures_total,
        failures: total.failures,
        observations: total.observations,
    })
}

pub fn verify_prop7(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    verify(Theorem::P7, universe, opts)
}

pub fn verify_prop8(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    verify(Theorem::P8, universe, opts)
}

pub fn verify_prop10(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    verify(Theorem::P10, universe, opts)
}

/// Both directions of the semiprime correspondence.
pub fn verify_prop14_forward(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    verify(Theorem::P14Forward, universe, opts)
}

/// Every `(structure, A)` where `f_A` is a fuzzy semiprime ideal but `A` is
/// not a prime ideal. Each witness carries the fuzzy verdict, the semiprime
/// ideal verdict and the failing prime ideal verdict.
pub fn search_prop14_literal_counterexample(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<VerificationRun, VerifyError> {
    verify(Theorem::P14LiteralConverse, universe, opts)
}

/// The elementwise/setwise, cell/product, max-form and fuzzy-level
/// consequence suites, in that order.
pub fn verify_equivalences(
    universe: &Universe,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationRun>, VerifyError> {
    [
        Theorem::D5Equiv,
        Theorem::D11Equiv,
        Theorem::P2Equiv,
        Theorem::FMaxEquiv,
        Theorem::R13,
    ]
    .into_iter()
    .map(|t| verify(t, universe, opts))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Hypergroupoid;

    fn serial() -> VerifyOptions {
        VerifyOptions {
            parallel: false,
            ..VerifyOptions::default()
        }
    }

    fn z6() -> LeHypergroupoid {
        LeHypergroupoid::plain(Hypergroupoid::from_operation(6, |a, b| a * b % 6))
    }

    #[test]
    fn ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::from_id(t.id()), Some(t));
        }
        assert_eq!(Theorem::from_id("p7l"), Some(Theorem::P7Left));
        assert_eq!(Theorem::from_id("P99"), None);
    }

    #[test]
    fn order_one_is_clean() {
        let u = Universe::exhaustive(1);
        for t in Theorem::ALL.into_iter().filter(|t| !t.is_search()) {
            let run = verify(t, &u, &serial()).unwrap();
            assert!(run.clean(), "{}: {:?}", t.id(), run.failures);
            assert_eq!(run.structures_checked, 2);
        }
    }

    #[test]
    fn z6_literal_counterexample() {
        let u = Universe::explicit("z6", vec![z6()]);
        let run = search_prop14_literal_counterexample(&u, &serial()).unwrap();
        assert_eq!(run.failures_total, 1);
        let w = &run.failures[0];
        assert_eq!(w.subset, Some(Subset::singleton(0)));
        let prime = &w.verdicts[2];
        assert_eq!(prime.property(), "prime-ideal");
        assert_eq!(prime.witness().unwrap().elements, vec![2, 3]);
        assert!(w.verdicts[0].holds() && w.verdicts[1].holds());
    }

    #[test]
    fn vacuous_search_universe() {
        // Every semiprime ideal of the two-element multiplication is prime.
        let mult = LeHypergroupoid::plain(Hypergroupoid::from_operation(2, |a, b| a * b));
        let run = search_prop14_literal_counterexample(
            &Universe::explicit("mult2", vec![mult]),
            &serial(),
        )
        .unwrap();
        assert!(run.clean());
    }

    #[test]
    fn failure_cap_keeps_the_first() {
        let u = Universe::exhaustive(2);
        let opts = VerifyOptions {
            max_failures: 2,
            grid: Grade::uniform_grid(2),
            ..serial()
        };
        let run = verify(Theorem::R13DiagonalConverse, &u, &opts).unwrap();
        assert!(run.failures_total > 2);
        assert_eq!(run.failures.len(), 2);
        let par = verify(
            Theorem::R13DiagonalConverse,
            &u,
            &VerifyOptions {
                parallel: true,
                ..opts
            },
        )
        .unwrap();
        assert_eq!(run, par);
    }

    #[test]
    fn caps_surface_as_errors() {
        let opts = VerifyOptions {
            max_structures: 100,
            ..serial()
        };
        assert!(matches!(
            verify(Theorem::P8, &Universe::exhaustive(2), &opts),
            Err(VerifyError::CapExceeded { cap: 100, .. })
        ));
    }
}
