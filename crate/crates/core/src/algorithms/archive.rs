use crate::fitness::{Formulation, ObjectivePair};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq)]
pub struct ArchiveEntry {
    pub subset: Subset,
    pub pair: ObjectivePair,
}

/// GSEMO population: mutually non-dominated search points.
///
/// An offspring enters unless some member strongly dominates it; on entry
/// every member it weakly dominates (including objective-equal ones) leaves.
#[derive(Clone, Debug)]
pub struct Archive {
    entries: Vec<ArchiveEntry>,
    formulation: Formulation,
    checked: bool,
}

impl Archive {
    pub fn new(formulation: Formulation) -> Self {
        Archive {
            entries: Vec::new(),
            formulation,
            checked: false,
        }
    }

    /// Verify the archive invariants after every insertion (quadratic cost).
    pub fn set_checked(&mut self, checked: bool) {
        self.checked = checked;
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns whether `subset` was accepted.
    pub fn insert(&mut self, subset: Subset, pair: ObjectivePair) -> bool {
        assert_eq!(pair.formulation, self.formulation, "formulation mismatch");
        if self
            .entries
            .iter()
            .any(|e| e.pair.dominance_over(&pair).is_strong())
        {
            return false;
        }
        self.entries
            .retain(|e| !pair.dominance_over(&e.pair).is_weak());
        self.entries.push(ArchiveEntry { subset, pair });
        if self.checked {
            if let Err(msg) = self.check_invariants() {
                panic!("archive invariant violated: {msg}");
            }
        }
        true
    }

    /// Feasible entry with the largest `f`; earliest entry wins ties.
    pub fn best_feasible(&self) -> Option<&ArchiveEntry> {
        self.entries
            .iter()
            .filter(|e| e.pair.is_feasible())
            .fold(None, |best: Option<&ArchiveEntry>, e| match best {
                Some(b) if b.pair.o2 >= e.pair.o2 => Some(b),
                _ => Some(e),
            })
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in self.entries.iter().enumerate() {
                if i != j && a.pair.dominance_over(&b.pair).is_weak() {
                    return Err(format!("entry {i} {:?} dominates entry {j} {:?}", a.pair, b.pair));
                }
            }
        }
        let infeasible = self.entries.iter().filter(|e| !e.pair.is_feasible()).count();
        if infeasible > 1 {
            return Err(format!("{infeasible} infeasible entries"));
        }
        Ok(())
    }
}
