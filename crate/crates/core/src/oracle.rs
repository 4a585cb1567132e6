//! Known classification of small matrices: every pure matrix (graph
//! homomorphism counting) and every matrix of size at most 3.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exceptions::ExceptionId;
use crate::matrix::{CanonicalKey, PartSet, PartitionMatrix, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    PolynomialTime,
    SharpPComplete,
    Unresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::PolynomialTime => "PolynomialTime",
            Verdict::SharpPComplete => "SharpPComplete",
            Verdict::Unresolved => "Unresolved",
        };
        f.write_str(s)
    }
}

/// Parameters of a hardness proof by interpolation: the gadget attachment
/// `pi`, the gadget type `tau`, the column `(ell, s)` and the
/// permutation-canonical keys of the hard submatrices isolated there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InterpolationWitness {
    pub pi: bool,
    pub tau: bool,
    pub ell: usize,
    pub s: usize,
    pub hard: Vec<CanonicalKey>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    PureHomomorphism,
    ImpureSmall,
    Doubletons,
    Interpolation(InterpolationWitness),
    Exception(ExceptionId),
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::PureHomomorphism => "PureHomomorphism",
            Method::ImpureSmall => "ImpureSmall",
            Method::Doubletons => "Doubletons",
            Method::Interpolation(_) => "Interpolation",
            Method::Exception(_) => "Exception",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Interpolation(w) => write!(
                f,
                "Interpolation(pi={},tau={},l={},s={})",
                w.pi as u8, w.tau as u8, w.ell, w.s
            ),
            Method::Exception(id) => write!(f, "Exception({id})"),
            other => f.write_str(other.tag()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub method: Option<Method>,
}

impl Classification {
    pub fn new(verdict: Verdict, method: Method) -> Classification {
        Classification {
            verdict,
            method: Some(method),
        }
    }

    pub fn unresolved() -> Classification {
        Classification {
            verdict: Verdict::Unresolved,
            method: None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.method {
            Some(m) => write!(f, "{} via {}", self.verdict, m),
            None => write!(f, "{}", self.verdict),
        }
    }
}

/// Decides easy/hard for submatrices met while building access profiles.
pub trait HardnessOracle: Sync {
    fn verdict(&self, m: &PartitionMatrix) -> Verdict;
}

/// Resolves pure matrices and matrices of size at most 3; anything else is
/// `Unresolved`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmallMatrixOracle;

impl HardnessOracle for SmallMatrixOracle {
    fn verdict(&self, m: &PartitionMatrix) -> Verdict {
        if m.is_pure() {
            verdict_of(pure_matrix_hard(m).expect("pure"))
        } else if m.size() <= 3 {
            small_matrix_classification(m).expect("small").verdict
        } else {
            Verdict::Unresolved
        }
    }
}

fn verdict_of(hard: bool) -> Verdict {
    if hard {
        Verdict::SharpPComplete
    } else {
        Verdict::PolynomialTime
    }
}

/// For a pure matrix: hard iff some 2×2 submatrix (rows `i≠j`, columns
/// `k≠l`, not necessarily principal) holds exactly three `*`s.
pub fn pure_matrix_hard(m: &PartitionMatrix) -> Result<bool> {
    if !m.is_pure() {
        return Err(Error::Domain("pure_matrix_hard needs a pure matrix".into()));
    }
    let n = m.size();
    let star = |i: usize, j: usize| (m.get(i, j) == Symbol::Star) as u8;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    if star(i, k) + star(i, l) + star(j, k) + star(j, l) == 3 {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Whether `m ≡ (* *; * 0)`, the matrix counting independent sets.
pub fn is_is_matrix(m: &PartitionMatrix) -> bool {
    is_hard_pair(m, Symbol::Zero)
}

/// Whether `m ≡ (* *; * 1)`, the matrix counting cliques.
pub fn is_clique_matrix(m: &PartitionMatrix) -> bool {
    is_hard_pair(m, Symbol::One)
}

fn is_hard_pair(m: &PartitionMatrix, corner: Symbol) -> bool {
    if m.size() != 2 || m.get(0, 1) != Symbol::Star {
        return false;
    }
    let (x, y) = (m.get(0, 0), m.get(1, 1));
    (x == Symbol::Star && y == corner) || (x == corner && y == Symbol::Star)
}

/// Whether some principal 2×2 submatrix is `≡ (* *; * 0)` or `≡ (* *; * 1)`.
pub fn has_hard_principal_pair(m: &PartitionMatrix) -> bool {
    let n = m.size();
    (0..n).any(|i| {
        (i + 1..n).any(|j| {
            let sub = m.principal(PartSet::from_parts([i, j])).expect("pair");
            is_is_matrix(&sub) || is_clique_matrix(&sub)
        })
    })
}

/// Classification of a matrix with at most three parts.
pub fn small_matrix_classification(m: &PartitionMatrix) -> Result<Classification> {
    if m.size() > 3 {
        return Err(Error::UseFullPipeline);
    }
    if m.is_pure() {
        return Ok(Classification::new(
            verdict_of(pure_matrix_hard(m)?),
            Method::PureHomomorphism,
        ));
    }
    let hard = m.size() == 3 && has_hard_principal_pair(m);
    Ok(Classification::new(verdict_of(hard), Method::ImpureSmall))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&str]) -> PartitionMatrix {
        PartitionMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn pure_examples() {
        assert!(!pure_matrix_hard(&PartitionMatrix::constant(4, Symbol::Star)).unwrap());
        assert!(pure_matrix_hard(&mat(&["**", "*0"])).unwrap());
        // Star graph: two disjoint reflexive cliques {a,b}, {c,d}.
        assert!(!pure_matrix_hard(&mat(&["**00", "**00", "00**", "00**"])).unwrap());
        // Irreflexive complete bipartite star graph.
        assert!(!pure_matrix_hard(&mat(&["0**", "*00", "*00"])).unwrap());
        // A non-principal three-star block in a 3×3 pure matrix: rows ab, cols bc.
        assert!(pure_matrix_hard(&mat(&["1**", "*1*", "**1"])).is_ok());
        assert!(pure_matrix_hard(&mat(&["01", "10"])).is_err());
    }

    #[test]
    fn small_examples() {
        let c = small_matrix_classification(&mat(&["0*", "**"])).unwrap();
        assert_eq!(c.verdict, Verdict::SharpPComplete);
        assert_eq!(
            small_matrix_classification(&mat(&["00", "00"]))
                .unwrap()
                .verdict,
            Verdict::PolynomialTime
        );
        // a, b, d rows of the hand-resolved matrix with M|_{ad} = (0 *; * *).
        let abd = mat(&["0**", "***", "***"]);
        assert_eq!(
            small_matrix_classification(&abd).unwrap().verdict,
            Verdict::SharpPComplete
        );
        assert_eq!(
            small_matrix_classification(&mat(&["01", "1*"])).unwrap(),
            Classification::new(Verdict::PolynomialTime, Method::ImpureSmall)
        );
        assert!(matches!(
            small_matrix_classification(&PartitionMatrix::constant(4, Symbol::Zero)),
            Err(Error::UseFullPipeline)
        ));
        for s in Symbol::ALL {
            let one = PartitionMatrix::constant(1, s);
            assert_eq!(
                small_matrix_classification(&one).unwrap().verdict,
                Verdict::PolynomialTime
            );
        }
    }

    #[test]
    fn is_and_clique_matrices() {
        assert!(is_is_matrix(&mat(&["0*", "**"])));
        assert!(is_is_matrix(&mat(&["**", "*0"])));
        assert!(!is_clique_matrix(&mat(&["0*", "**"])));
        assert!(is_clique_matrix(&mat(&["**", "*1"])));
        assert!(!is_is_matrix(&mat(&["0**", "***", "***"])));
        assert!(!is_clique_matrix(&mat(&["1**", "***", "***"])));
    }

    #[test]
    fn display_forms() {
        let c = Classification::new(
            Verdict::SharpPComplete,
            Method::Interpolation(InterpolationWitness {
                pi: false,
                tau: false,
                ell: 0,
                s: 2,
                hard: vec![],
            }),
        );
        assert_eq!(
            c.to_string(),
            "SharpPComplete via Interpolation(pi=0,tau=0,l=0,s=2)"
        );
        assert_eq!(Classification::unresolved().to_string(), "Unresolved");
    }
}
