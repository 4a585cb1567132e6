use std::collections::HashMap;

use serde::Serialize;

use crate::matrix::{CanonicalKey, PartSet, PartitionMatrix};
use crate::oracle::{
    is_clique_matrix, is_is_matrix, Classification, HardnessOracle, InterpolationWitness, Method,
    SmallMatrixOracle, Verdict,
};

use super::gadget::{e_set, ell_of, in_excluded};

/// One `≡`-class of the submatrices `M|_{E^π(S)}` met in a profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileClass {
    /// Permutation-only canonical key; `None` for the empty submatrix.
    pub key: Option<CanonicalKey>,
    /// `E^π(S)` for the first `S` in the class.
    pub parts: PartSet,
    pub multiplicity: usize,
    pub verdict: Verdict,
    /// `E^π(S) = D`: the class is `M` itself.
    pub is_self: bool,
}

/// The sets `𝒮(ℓ,s,M,τ)` and the `≡`-classes of the matching submatrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessProfile {
    pub pi: bool,
    pub tau: bool,
    pub ell: usize,
    pub s: usize,
    pub sets: Vec<PartSet>,
    pub classes: Vec<ProfileClass>,
}

impl AccessProfile {
    pub fn proper_classes(&self) -> impl Iterator<Item = &ProfileClass> {
        self.classes.iter().filter(|c| !c.is_self)
    }

    pub fn hard_classes(&self) -> Vec<&ProfileClass> {
        self.proper_classes()
            .filter(|c| c.verdict == Verdict::SharpPComplete)
            .collect()
    }

    /// Whether a single interpolation on this column isolates a hard
    /// problem: one hard proper class, or exactly the independent-set and
    /// clique matrices.
    pub fn isolates_hardness(&self) -> bool {
        if self
            .proper_classes()
            .any(|c| c.verdict == Verdict::Unresolved)
        {
            return false;
        }
        let hard = self.hard_classes();
        match hard.as_slice() {
            [_] => true,
            [x, y] => {
                let (mx, my) = (class_matrix(x), class_matrix(y));
                (is_is_matrix(&mx) && is_clique_matrix(&my))
                    || (is_clique_matrix(&mx) && is_is_matrix(&my))
            }
            _ => false,
        }
    }
}

fn class_matrix(c: &ProfileClass) -> PartitionMatrix {
    c.key.as_ref().expect("hard classes are nonempty").matrix()
}

pub fn access_profile(
    m: &PartitionMatrix,
    pi: bool,
    tau: bool,
    ell: usize,
    s: usize,
) -> AccessProfile {
    access_profile_with(m, pi, tau, ell, s, &SmallMatrixOracle)
}

pub fn access_profile_with(
    m: &PartitionMatrix,
    pi: bool,
    tau: bool,
    ell: usize,
    s: usize,
    oracle: &dyn HardnessOracle,
) -> AccessProfile {
    let domain = m.domain();
    let sets: Vec<PartSet> = PartSet::all_subsets(m.size())
        .filter(|x| x.len() == s && ell_of(m, *x, tau) == ell && !in_excluded(m, *x, tau))
        .collect();
    let mut classes: Vec<ProfileClass> = Vec::new();
    let mut index: HashMap<Option<CanonicalKey>, usize> = HashMap::new();
    for &x in &sets {
        let e = e_set(m, pi, x);
        let sub = (!e.is_empty()).then(|| m.principal(e).expect("nonempty"));
        let key = sub.as_ref().map(|m| m.permutation_key());
        if let Some(&i) = index.get(&key) {
            classes[i].multiplicity += 1;
            continue;
        }
        let is_self = e == domain;
        let verdict = match &sub {
            None => Verdict::PolynomialTime,
            Some(_) if is_self => Verdict::Unresolved,
            Some(sub) => oracle.verdict(sub),
        };
        index.insert(key.clone(), classes.len());
        classes.push(ProfileClass {
            key,
            parts: e,
            multiplicity: 1,
            verdict,
            is_self,
        });
    }
    AccessProfile {
        pi,
        tau,
        ell,
        s,
        sets,
        classes,
    }
}

/// The scan order: `π`, then `τ`, then `s` ascending, then `ℓ` ascending.
pub fn profile_order(size: usize) -> Vec<(bool, bool, usize, usize)> {
    let mut order = Vec::new();
    for pi in [false, true] {
        for tau in [false, true] {
            for s in 1..=size {
                for ell in 0..s {
                    order.push((pi, tau, ell, s));
                }
            }
        }
    }
    order
}

pub fn interpolation_hardness_test(m: &PartitionMatrix) -> Option<Classification> {
    interpolation_hardness_test_with(m, &SmallMatrixOracle)
}

/// `SharpPComplete` at the first profile, in scan order, that isolates a
/// hard problem.
pub fn interpolation_hardness_test_with(
    m: &PartitionMatrix,
    oracle: &dyn HardnessOracle,
) -> Option<Classification> {
    profile_order(m.size())
        .into_iter()
        .find_map(|(pi, tau, ell, s)| {
            let p = access_profile_with(m, pi, tau, ell, s, oracle);
            p.isolates_hardness().then(|| {
                let hard = p
                    .hard_classes()
                    .into_iter()
                    .map(|c| c.key.clone().expect("nonempty"))
                    .collect();
                Classification::new(
                    Verdict::SharpPComplete,
                    Method::Interpolation(InterpolationWitness {
                        pi,
                        tau,
                        ell,
                        s,
                        hard,
                    }),
                )
            })
        })
}
