use std::fmt;

/// One failed axiom, located by basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    Associativity { i: usize, j: usize, k: usize },
    /// `1 · e_i != e_i`.
    LeftUnit { i: usize },
    /// `e_i · 1 != e_i`.
    RightUnit { i: usize },
    /// `ρ(e_i) ρ(e_j) != ρ(e_i e_j)`.
    Multiplicativity { i: usize, j: usize },
    /// `ρ(1) != I`.
    UnitAction,
    /// Right action is not anti-multiplicative: `(m e_i) e_j != m (e_i e_j)`.
    RightMultiplicativity { i: usize, j: usize },
    /// `ρ_right(1) != I`.
    RightUnitAction,
    /// `(e_i m) e_j != e_i (m e_j)`.
    Commutation { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity triple ({i},{j},{k})")
            }
            Violation::LeftUnit { i } => write!(f, "left unit law at basis element {i}"),
            Violation::RightUnit { i } => write!(f, "right unit law at basis element {i}"),
            Violation::Multiplicativity { i, j } => {
                write!(f, "action not multiplicative on pair ({i},{j})")
            }
            Violation::UnitAction => f.write_str("unit does not act as the identity"),
            Violation::RightMultiplicativity { i, j } => {
                write!(f, "right action not multiplicative on pair ({i},{j})")
            }
            Violation::RightUnitAction => {
                f.write_str("unit does not act as the identity on the right")
            }
            Violation::Commutation { i, j } => {
                write!(f, "left and right actions do not commute on pair ({i},{j})")
            }
        }
    }
}

/// Every axiom violation found by a validation pass; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
