use serde::Serialize;

use crate::subset::Subset;

/// Concrete data explaining why a property fails.
///
/// `clause` names the condition that was violated; `elements` and `subsets`
/// carry the violating tuple in the order the clause mentions them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: &'static str,
    pub elements: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subsets: Vec<Subset>,
}

impl Witness {
    pub fn elements(clause: &'static str, elements: impl Into<Vec<usize>>) -> Self {
        Witness {
            clause,
            elements: elements.into(),
            subsets: Vec::new(),
        }
    }

    pub fn subsets(clause: &'static str, subsets: impl Into<Vec<Subset>>) -> Self {
        Witness {
            clause,
            elements: Vec::new(),
            subsets: subsets.into(),
        }
    }
}

/// Verdict of a decider: holds, or fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    property: &'static str,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl PropertyReport {
    pub fn holding(property: &'static str) -> Self {
        PropertyReport {
            property,
            holds: true,
            witness: None,
        }
    }

    pub fn failing(property: &'static str, witness: Witness) -> Self {
        PropertyReport {
            property,
            holds: false,
            witness: Some(witness),
        }
    }

    /// `holding` when `witness` is `None`, `failing` otherwise.
    pub fn from_witness(property: &'static str, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::holding(property),
            Some(w) => Self::failing(property, w),
        }
    }

    pub fn property(&self) -> &'static str {
        self.property
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<Witness> {
        self.witness
    }

    /// Conjunction: the first failing component decides the witness.
    pub fn all(property: &'static str, parts: impl IntoIterator<Item = PropertyReport>) -> Self {
        for part in parts {
            if !part.holds {
                return PropertyReport { property, ..part };
            }
        }
        Self::holding(property)
    }

    pub fn renamed(self, property: &'static str) -> Self {
        PropertyReport { property, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_keeps_first_witness() {
        let a = PropertyReport::holding("a");
        let b = PropertyReport::failing("b", Witness::elements("x", [1]));
        let c = PropertyReport::failing("c", Witness::elements("y", [2]));
        let r = PropertyReport::all("abc", [a, b, c]);
        assert!(!r.holds());
        assert_eq!(r.property(), "abc");
        assert_eq!(r.witness().unwrap().clause, "x");
    }

    #[test]
    fn json_omits_witness_when_holding() {
        let r = PropertyReport::holding("ideal");
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"property":"ideal","holds":true}"#
        );
    }
}
