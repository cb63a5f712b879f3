//! Fuzzy subsets with exact rational grades, and deciders for fuzzy ideals,
//! fuzzy prime and fuzzy semiprime subsets and ideals.
//!
//! Product clauses quantify over triples `(x, y, u)` with `u ∈ x∘y`; the
//! witness is the first such triple in lexicographic order. Grades are
//! compared exactly.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::error::DomainError;
use crate::report::{PropertyReport, Witness};
use crate::structure::LeHypergroupoid;

/// A membership grade: an exact rational in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Ratio<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("malformed grade {0:?}: expected an integer or p/q")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("grade {0} is outside [0, 1]")]
    OutOfRange(String),
}

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self, GradeError> {
        if denom == 0 {
            return Err(GradeError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        if numer > denom {
            return Err(GradeError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Grade(Ratio::new(numer, denom)))
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self == Grade::ZERO
    }

    /// The grid `{0, 1/k, 2/k, …, 1}`.
    pub fn uniform_grid(steps: u64) -> Vec<Grade> {
        assert!(steps > 0, "grid needs at least one step");
        (0..=steps)
            .map(|i| Grade::new(i, steps).expect("i ≤ steps"))
            .collect()
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    /// Accepts `"0"`, `"1"`, or `"p/q"` with decimal digits only.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = |t: &str| -> Result<u64, GradeError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(GradeError::Malformed(s.to_string()));
            }
            t.parse().map_err(|_| GradeError::Malformed(s.to_string()))
        };
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (digits(p)?, digits(q)?),
            None => (digits(s)?, 1),
        };
        if denom == 0 {
            return Err(GradeError::ZeroDenominator(s.to_string()));
        }
        if numer > denom {
            return Err(GradeError::OutOfRange(s.to_string()));
        }
        Ok(Grade(Ratio::new(numer, denom)))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A map from the carrier into `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FuzzySubset {
    grades: Vec<Grade>,
}

impl FuzzySubset {
    pub fn new(grades: Vec<Grade>) -> Self {
        FuzzySubset { grades }
    }

    pub fn constant(order: usize, g: Grade) -> Self {
        FuzzySubset {
            grades: vec![g; order],
        }
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    #[inline]
    pub fn grade(&self, x: usize) -> Grade {
        self.grades[x]
    }

    fn check_arity(&self, lh: &LeHypergroupoid) -> Result<(), DomainError> {
        if self.grades.len() == lh.order() {
            Ok(())
        } else {
            Err(DomainError::ArityMismatch {
                found: self.grades.len(),
                order: lh.order(),
            })
        }
    }
}

impl fmt::Display for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// First `(x, y, u)` with `u ∈ x∘y` violating `ok(f(x), f(y), f(u))`.
fn first_bad_triple(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
    clause: &'static str,
    ok: impl Fn(Grade, Grade, Grade) -> bool,
) -> Option<Witness> {
    let n = lh.order();
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (f.grade(x), f.grade(y));
            if let Some(u) = lh.cell(x, y).iter().find(|&u| !ok(fx, fy, f.grade(u))) {
                return Some(Witness::elements(clause, [x, y, u]));
            }
        }
    }
    None
}

/// First `(x, u)` with `u ∈ x∘x` violating `ok(f(x), f(u))`.
fn first_bad_square(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
    clause: &'static str,
    ok: impl Fn(Grade, Grade) -> bool,
) -> Option<Witness> {
    (0..lh.order()).find_map(|x| {
        let fx = f.grade(x);
        lh.cell(x, x)
            .iter()
            .find(|&u| !ok(fx, f.grade(u)))
            .map(|u| Witness::elements(clause, [x, u]))
    })
}

/// `x ≤ y ⇒ f(x) ≥ f(y)`. Witness `[x, y]`.
pub fn antitone_clause(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let witness = lh
        .le()
        .pairs()
        .find(|&(x, y)| f.grade(x) < f.grade(y))
        .map(|(x, y)| Witness::elements("antitone", [x, y]));
    Ok(PropertyReport::from_witness("antitone", witness))
}

/// `u ∈ x∘y ⇒ f(u) ≥ f(y)`, the product clause of a fuzzy left ideal.
pub fn left_absorbing_clause(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let w = first_bad_triple(lh, f, "left-absorbing", |_, fy, fu| fu >= fy);
    Ok(PropertyReport::from_witness("left-absorbing", w))
}

/// `u ∈ x∘y ⇒ f(u) ≥ f(x)`, the product clause of a fuzzy right ideal.
pub fn right_absorbing_clause(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let w = first_bad_triple(lh, f, "right-absorbing", |fx, _, fu| fu >= fx);
    Ok(PropertyReport::from_witness("right-absorbing", w))
}

pub fn is_fuzzy_left_ideal(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "fuzzy-left-ideal",
        [antitone_clause(lh, f)?, left_absorbing_clause(lh, f)?],
    ))
}

pub fn is_fuzzy_right_ideal(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "fuzzy-right-ideal",
        [antitone_clause(lh, f)?, right_absorbing_clause(lh, f)?],
    ))
}

pub fn is_fuzzy_ideal(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "fuzzy-ideal",
        [is_fuzzy_left_ideal(lh, f)?, is_fuzzy_right_ideal(lh, f)?],
    ))
}

/// `u ∈ x∘y ⇒ f(u) ≥ max{f(x), f(y)}`, the one-line form of both product
/// clauses. Deliberately ignores `≤`.
pub fn fuzzy_ideal_max_oracle(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let w = first_bad_triple(lh, f, "max-absorbing", |fx, fy, fu| fu >= fx.max(fy));
    Ok(PropertyReport::from_witness("fuzzy-ideal-max", w))
}

/// `u ∈ x∘y ⇒ f(u) ≤ max{f(x), f(y)}`.
pub fn is_fuzzy_prime_subset(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let w = first_bad_triple(lh, f, "max-bounded", |fx, fy, fu| fu <= fx.max(fy));
    Ok(PropertyReport::from_witness("fuzzy-prime-subset", w))
}

/// Antitone along `≤`, and `f(u) = max{f(x), f(y)}` for every `u ∈ x∘y`.
///
/// The equality carries both product clauses of a fuzzy ideal and the prime
/// bound, so this agrees with `is_fuzzy_ideal ∧ is_fuzzy_prime_subset`.
pub fn is_fuzzy_prime_ideal(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    let antitone = antitone_clause(lh, f)?;
    let eq = first_bad_triple(lh, f, "max-equal", |fx, fy, fu| fu == fx.max(fy));
    Ok(PropertyReport::all(
        "fuzzy-prime-ideal",
        [antitone, PropertyReport::from_witness("max-equal", eq)],
    ))
}

/// `u ∈ x∘x ⇒ f(x) ≥ f(u)`. Witness `[x, u]`.
pub fn is_fuzzy_semiprime_subset(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    f.check_arity(lh)?;
    let w = first_bad_square(lh, f, "square-bounded", |fx, fu| fx >= fu);
    Ok(PropertyReport::from_witness("fuzzy-semiprime-subset", w))
}

/// A fuzzy ideal that is also a fuzzy semiprime subset.
pub fn is_fuzzy_semiprime_ideal(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    Ok(PropertyReport::all(
        "fuzzy-semiprime-ideal",
        [is_fuzzy_ideal(lh, f)?, is_fuzzy_semiprime_subset(lh, f)?],
    ))
}

/// Antitone along `≤`, and `f(u) = f(x)` for every `u ∈ x∘x`.
///
/// Every fuzzy semiprime ideal satisfies this, but not conversely: nothing
/// here constrains off-diagonal products, so it does not imply a fuzzy
/// ideal. Kept as a separate check so the gap can be measured.
pub fn diagonal_semiprime_condition(
    lh: &LeHypergroupoid,
    f: &FuzzySubset,
) -> Result<PropertyReport, DomainError> {
    let antitone = antitone_clause(lh, f)?;
    let eq = first_bad_square(lh, f, "square-equal", |fx, fu| fx == fu);
    Ok(PropertyReport::all(
        "diagonal-semiprime",
        [antitone, PropertyReport::from_witness("square-equal", eq)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Hypergroupoid;

    fn g(s: &str) -> Grade {
        s.parse().unwrap()
    }

    fn fz(xs: &[&str]) -> FuzzySubset {
        FuzzySubset::new(xs.iter().map(|s| g(s)).collect())
    }

    fn plain(op: impl FnMut(usize, usize) -> usize, n: usize) -> LeHypergroupoid {
        LeHypergroupoid::plain(Hypergroupoid::from_operation(n, op))
    }

    fn mult2() -> LeHypergroupoid {
        plain(|a, b| a * b, 2)
    }
    fn zero2() -> LeHypergroupoid {
        plain(|_, _| 0, 2)
    }
    fn first_proj() -> LeHypergroupoid {
        plain(|a, _| a, 2)
    }
    fn second_proj() -> LeHypergroupoid {
        plain(|_, b| b, 2)
    }

    fn elems(r: &PropertyReport) -> Vec<usize> {
        r.witness().unwrap().elements.clone()
    }

    #[test]
    fn grade_parsing() {
        assert_eq!(g("0"), Grade::ZERO);
        assert_eq!(g("1"), Grade::ONE);
        assert_eq!(g("2/4").to_string(), "1/2");
        assert_eq!(g("3/3"), Grade::ONE);
        assert!(matches!(
            "0.5".parse::<Grade>(),
            Err(GradeError::Malformed(_))
        ));
        assert!(matches!(
            "+1".parse::<Grade>(),
            Err(GradeError::Malformed(_))
        ));
        assert!(matches!(
            "-1/2".parse::<Grade>(),
            Err(GradeError::Malformed(_))
        ));
        assert!(matches!(
            "1/0".parse::<Grade>(),
            Err(GradeError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "3/2".parse::<Grade>(),
            Err(GradeError::OutOfRange(_))
        ));
        assert!(matches!(
            "2".parse::<Grade>(),
            Err(GradeError::OutOfRange(_))
        ));
        assert!(g("1/3") < g("1/2"));
    }

    #[test]
    fn grid() {
        let grid: Vec<String> = Grade::uniform_grid(4)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(grid, ["0", "1/4", "1/2", "3/4", "1"]);
    }

    #[test]
    fn constants_satisfy_every_ideal_property() {
        for lh in [mult2(), zero2(), first_proj(), second_proj()] {
            for c in Grade::uniform_grid(4) {
                let f = FuzzySubset::constant(2, c);
                assert!(is_fuzzy_left_ideal(&lh, &f).unwrap().holds());
                assert!(is_fuzzy_right_ideal(&lh, &f).unwrap().holds());
                assert!(is_fuzzy_ideal(&lh, &f).unwrap().holds());
                assert!(fuzzy_ideal_max_oracle(&lh, &f).unwrap().holds());
                assert!(is_fuzzy_prime_subset(&lh, &f).unwrap().holds());
                assert!(is_fuzzy_semiprime_subset(&lh, &f).unwrap().holds());
            }
        }
    }

    #[test]
    fn fuzzy_left_ideal_examples() {
        assert!(is_fuzzy_left_ideal(&second_proj(), &fz(&["1", "0"]))
            .unwrap()
            .holds());
        let r = is_fuzzy_left_ideal(&first_proj(), &fz(&["1", "0"])).unwrap();
        assert_eq!(elems(&r), vec![1, 0, 1]);
    }

    #[test]
    fn fuzzy_right_ideal_examples() {
        assert!(is_fuzzy_right_ideal(&first_proj(), &fz(&["1", "0"]))
            .unwrap()
            .holds());
        let r = is_fuzzy_right_ideal(&second_proj(), &fz(&["1", "0"])).unwrap();
        assert_eq!(elems(&r), vec![0, 1, 1]);
    }

    #[test]
    fn antitone_clause_reads_relation() {
        let lh = LeHypergroupoid::new(
            Hypergroupoid::from_operation(2, |a, b| a * b),
            [(1, 0)].into_iter().collect(),
        )
        .unwrap();
        // f(1) = 0 < f(0) = 1 while 1 ≤ 0
        let r = is_fuzzy_left_ideal(&lh, &fz(&["1", "0"])).unwrap();
        assert_eq!(r.witness().unwrap().clause, "antitone");
        assert_eq!(elems(&r), vec![1, 0]);
        assert!(is_fuzzy_ideal(&lh, &fz(&["0", "0"])).unwrap().holds());
    }

    #[test]
    fn fuzzy_ideal_examples() {
        assert!(is_fuzzy_ideal(&mult2(), &fz(&["1", "0"])).unwrap().holds());
        let r = is_fuzzy_ideal(&mult2(), &fz(&["0", "1"])).unwrap();
        assert!(!r.holds());
        assert_eq!(elems(&r), vec![0, 1, 0]);
    }

    #[test]
    fn max_oracle_witness_is_lexicographically_first() {
        let r = fuzzy_ideal_max_oracle(&zero2(), &fz(&["1/2", "1"])).unwrap();
        assert!(!r.holds());
        // (0,1,0) precedes (1,1,0); both violate f(0) = 1/2 < 1
        assert_eq!(elems(&r), vec![0, 1, 0]);
    }

    #[test]
    fn fuzzy_prime_subset_examples() {
        let r = is_fuzzy_prime_subset(&zero2(), &fz(&["1", "0"])).unwrap();
        assert!(!r.holds());
        assert_eq!(elems(&r), vec![1, 1, 0]);
        for f in [fz(&["1", "0"]), fz(&["1/3", "2/3"]), fz(&["0", "1"])] {
            assert!(is_fuzzy_prime_subset(&second_proj(), &f).unwrap().holds());
        }
    }

    #[test]
    fn fuzzy_prime_ideal_examples() {
        let one = FuzzySubset::constant(2, Grade::ONE);
        assert!(is_fuzzy_prime_ideal(&zero2(), &one).unwrap().holds());
        assert!(is_fuzzy_prime_ideal(&mult2(), &fz(&["1", "0"]))
            .unwrap()
            .holds());
        let r = is_fuzzy_prime_ideal(&zero2(), &fz(&["1", "0"])).unwrap();
        assert_eq!(r.witness().unwrap().clause, "max-equal");
        assert_eq!(elems(&r), vec![1, 1, 0]);
    }

    #[test]
    fn fuzzy_semiprime_subset_examples() {
        let r = is_fuzzy_semiprime_subset(&zero2(), &fz(&["1", "0"])).unwrap();
        assert_eq!(elems(&r), vec![1, 0]);
        for f in [fz(&["1", "0"]), fz(&["0", "1/2"])] {
            assert!(is_fuzzy_semiprime_subset(&first_proj(), &f)
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn fuzzy_semiprime_ideal_examples() {
        let one = FuzzySubset::constant(2, Grade::ONE);
        assert!(is_fuzzy_semiprime_ideal(&zero2(), &one).unwrap().holds());
        let z6 = plain(|a, b| a * b % 6, 6);
        let f = fz(&["1", "0", "0", "0", "0", "0"]);
        assert!(is_fuzzy_semiprime_ideal(&z6, &f).unwrap().holds());
        assert!(!is_fuzzy_semiprime_ideal(&zero2(), &fz(&["1", "0"]))
            .unwrap()
            .holds());
    }

    #[test]
    fn diagonal_condition_is_strictly_weaker() {
        // {1} in the two-element multiplication: squares fixed, yet 0∘1 = {0}
        // drops below f(1).
        let f = fz(&["0", "1"]);
        assert!(diagonal_semiprime_condition(&mult2(), &f).unwrap().holds());
        assert!(!is_fuzzy_semiprime_ideal(&mult2(), &f).unwrap().holds());
    }

    #[test]
    fn arity_is_checked() {
        let err = is_fuzzy_ideal(&mult2(), &fz(&["1"])).unwrap_err();
        assert_eq!(err, DomainError::ArityMismatch { found: 1, order: 2 });
    }
}
