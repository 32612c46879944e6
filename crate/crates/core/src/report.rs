//! Per-axiom verification outcomes.

use std::fmt;

/// A concrete counterexample: up to three element indices and a short reason code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<usize>,
    pub reason: &'static str,
}

impl Witness {
    pub fn new(elements: &[usize], reason: &'static str) -> Self {
        debug_assert!(elements.len() <= 3);
        Witness {
            elements: elements.to_vec(),
            reason,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "({}) {}", elems.join(", "), self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: &'static str,
    pub description: &'static str,
    pub witness: Option<Witness>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for AxiomOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{} {}: pass", self.axiom, self.description),
            Some(w) => write!(f, "{} {}: FAIL {}", self.axiom, self.description, w),
        }
    }
}

/// Ordered list of axiom outcomes. The report passes iff every axiom passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(
        &mut self,
        axiom: &'static str,
        description: &'static str,
        witness: Option<Witness>,
    ) {
        self.outcomes.push(AxiomOutcome {
            axiom,
            description,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcomes(&self) -> &[AxiomOutcome] {
        &self.outcomes
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn first_failure(&self) -> Option<&AxiomOutcome> {
        self.failures().next()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}
