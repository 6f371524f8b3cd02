use std::fmt;

use serde::Serialize;

use super::Seed;
use crate::par::Exec;
use crate::quiver::{dynkin_recognize, search_mutation_class, ClassSearch, DynkinReport, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum TypeVerdict {
    /// A quiver in the mutation class whose mutable part is Dynkin.
    Finite { report: DynkinReport, witness: Quiver, explored: usize },
    /// The whole mutation class was enumerated and none of it is Dynkin.
    Infinite { class_size: usize },
    /// The cap was reached first.
    Unknown { explored: usize },
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeVerdict::Finite { report, .. } => write!(f, "finite: {report}"),
            TypeVerdict::Infinite { class_size } => {
                write!(f, "infinite (mutation class of {class_size} quivers, none Dynkin)")
            }
            TypeVerdict::Unknown { explored } => write!(f, "unknown (cap reached after {explored} quivers)"),
        }
    }
}

pub fn classify_type(s: &Seed, cap: usize) -> TypeVerdict {
    classify_quiver(s.quiver(), cap, Exec::default())
}

/// Searches the mutation class of the mutable part of `q` for a Dynkin
/// member. Frozen vertices never influence the answer, so they are dropped
/// up front, which also keeps the canonical forms small.
pub fn classify_quiver(q: &Quiver, cap: usize, exec: Exec) -> TypeVerdict {
    let m = q.mutable_part();
    match search_mutation_class(&m, cap, exec, |x| dynkin_recognize(x).is_some()) {
        ClassSearch::Found(witness, explored) => TypeVerdict::Finite {
            report: dynkin_recognize(&witness).expect("predicate held"),
            witness,
            explored,
        },
        ClassSearch::Exhausted(r) if r.is_complete() => TypeVerdict::Infinite { class_size: r.len() },
        ClassSearch::Exhausted(r) => TypeVerdict::Unknown { explored: r.len() },
    }
}
