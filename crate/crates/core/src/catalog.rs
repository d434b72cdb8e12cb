//! Named reductive pairs with a chosen `H`, sample good-range highest
//! weights and the structural flags expected of them.

use crate::embedding::{
    check_commutator_vanishing, check_quasi_abelian, check_weakly_compatible, has_abelian_nilradical,
    parabolic_from_h, refine_parabolic, EmbeddingError, K1Data, ParabolicDatum, ReductivePair, ThetaData,
};
use crate::rational::{q, qf, Q};
use crate::root_system::{RootSystem, Weight};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogFlags {
    pub weakly_compatible: bool,
    pub quasi_abelian: bool,
    pub commutator_vanishing: bool,
    pub abelian_nilradical: bool,
    pub holomorphic_type: bool,
    pub symmetric_pair: bool,
    /// Expected multiplicity-freeness of good-range branching laws.
    pub multiplicity_free: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub pair: ReductivePair,
    pub h: Vec<Q>,
    pub levi_refinement: Vec<Weight>,
    pub flags: CatalogFlags,
    /// Highest weights of `F` (ambient coordinates of `g`) in the good range.
    pub sample_f: Vec<Weight>,
}

impl CatalogEntry {
    pub fn parabolic(&self) -> Result<ParabolicDatum, EmbeddingError> {
        let base = parabolic_from_h(&self.pair, &self.h)?;
        refine_parabolic(&base, &self.levi_refinement)
    }

    /// Re-derives the structural flags from the data.
    pub fn computed_flags(&self) -> Result<CatalogFlags, EmbeddingError> {
        let p = self.parabolic()?;
        Ok(CatalogFlags {
            weakly_compatible: check_weakly_compatible(&p).passed,
            quasi_abelian: check_quasi_abelian(&p).passed,
            commutator_vanishing: check_commutator_vanishing(&p),
            abelian_nilradical: has_abelian_nilradical(&p),
            ..self.flags
        })
    }
}

fn w(v: &[Q]) -> Weight {
    Weight(v.to_vec())
}

fn matrix(rows: &[&[Q]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn sys(label: &str) -> RootSystem {
    RootSystem::build(label).expect("catalog labels are valid")
}

fn diag_a1() -> CatalogEntry {
    let pair = ReductivePair::new(
        "diag-a1",
        sys("A1xA1"),
        sys("A1"),
        matrix(&[&[q(1)], &[q(1)]]),
        None,
        None,
        None,
    )
    .expect("valid pair");
    CatalogEntry {
        name: "diag-a1",
        description: "diagonal sl(2) in sl(2)+sl(2), Borel times Borel",
        pair,
        h: vec![q(2)],
        levi_refinement: Vec::new(),
        flags: CatalogFlags {
            weakly_compatible: true,
            quasi_abelian: true,
            commutator_vanishing: true,
            abelian_nilradical: true,
            holomorphic_type: false,
            symmetric_pair: true,
            multiplicity_free: true,
        },
        sample_f: vec![
            w(&[qf(-3, 2), qf(-3, 2)]),
            w(&[q(-1), q(-2)]),
            w(&[qf(-5, 2), q(-1)]),
        ],
    }
}

fn weil_sp4() -> CatalogEntry {
    // sl(2) embedded diagonally in sp(2)+sp(2) ⊂ sp(4); the long simple
    // root and both long positive roots restrict to the root of sl(2).
    let c2 = sys("C2");
    let theta = ThetaData::inner(vec![w(&[q(1), q(0)])], 2);
    let pair = ReductivePair::new(
        "weil-sp4",
        c2,
        sys("A1"),
        matrix(&[&[q(0)], &[q(1)]]),
        None,
        Some(theta),
        Some(K1Data { roots: Vec::new(), projection: matrix(&[&[q(1)]]) }),
    )
    .expect("valid pair");
    CatalogEntry {
        name: "weil-sp4",
        description: "diagonal sl(2) in sp(4), Siegel parabolic",
        pair,
        h: vec![q(2)],
        levi_refinement: Vec::new(),
        flags: CatalogFlags {
            weakly_compatible: true,
            quasi_abelian: true,
            commutator_vanishing: true,
            abelian_nilradical: true,
            holomorphic_type: true,
            symmetric_pair: false,
            multiplicity_free: false,
        },
        sample_f: vec![w(&[q(-3), q(-3)]), w(&[q(-4), q(-4)]), w(&[q(-3), qf(-7, 2)])],
    }
}

fn principal_a1_in_a2() -> CatalogEntry {
    let pair = ReductivePair::new(
        "principal-a1-in-a2",
        sys("A2"),
        sys("A1"),
        matrix(&[&[q(1)], &[q(1)]]),
        None,
        None,
        None,
    )
    .expect("valid pair");
    CatalogEntry {
        name: "principal-a1-in-a2",
        description: "principal sl(2) in sl(3), Borel",
        pair,
        h: vec![q(2)],
        levi_refinement: Vec::new(),
        flags: CatalogFlags {
            weakly_compatible: true,
            quasi_abelian: true,
            commutator_vanishing: false,
            abelian_nilradical: false,
            holomorphic_type: false,
            symmetric_pair: true,
            multiplicity_free: false,
        },
        sample_f: vec![w(&[q(-2), q(-2)]), w(&[q(-4), q(-3)]), w(&[qf(-5, 2), q(-3)])],
    }
}

fn diag_a2_borel() -> CatalogEntry {
    let one = q(1);
    let zero = q(0);
    let pair = ReductivePair::new(
        "diag-a2-borel",
        sys("A2xA2"),
        sys("A2"),
        matrix(&[&[one, zero], &[zero, one], &[one, zero], &[zero, one]]),
        None,
        None,
        None,
    )
    .expect("valid pair");
    CatalogEntry {
        name: "diag-a2-borel",
        description: "diagonal sl(3) in sl(3)+sl(3), Borel times Borel",
        pair,
        h: vec![q(2), q(2)],
        levi_refinement: Vec::new(),
        flags: CatalogFlags {
            weakly_compatible: true,
            quasi_abelian: false,
            commutator_vanishing: false,
            abelian_nilradical: false,
            holomorphic_type: false,
            symmetric_pair: true,
            multiplicity_free: false,
        },
        sample_f: vec![
            w(&[q(-10), q(-10), q(-10), q(-10)]),
            w(&[q(-12), q(-9), q(-11), q(-13)]),
            w(&[qf(-21, 2), q(-10), q(-10), qf(-23, 2)]),
        ],
    }
}

fn holomorphic_c2() -> CatalogEntry {
    // sp(2)+sp(2) ⊂ sp(4) via the long roots 2e1 = 2a1+a2 and 2e2 = a2.
    let theta = ThetaData::inner(vec![w(&[q(1), q(0)])], 2);
    let pair = ReductivePair::new(
        "holomorphic-c2",
        sys("C2"),
        sys("A1xA1"),
        matrix(&[&[qf(1, 2), qf(-1, 2)], &[q(0), q(1)]]),
        None,
        Some(theta),
        Some(K1Data { roots: Vec::new(), projection: matrix(&[&[q(1)], &[q(1)]]) }),
    )
    .expect("valid pair");
    CatalogEntry {
        name: "holomorphic-c2",
        description: "sp(2)+sp(2) in sp(4), Siegel parabolic (holomorphic type)",
        pair,
        h: vec![q(2), q(2)],
        levi_refinement: Vec::new(),
        flags: CatalogFlags {
            weakly_compatible: true,
            quasi_abelian: true,
            commutator_vanishing: true,
            abelian_nilradical: true,
            holomorphic_type: true,
            symmetric_pair: true,
            multiplicity_free: true,
        },
        sample_f: vec![w(&[q(-3), q(-3)]), w(&[q(-3), qf(-7, 2)]), w(&[qf(-5, 2), qf(-7, 2)])],
    }
}

/// Every catalog entry, in listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![diag_a1(), weil_sp4(), principal_a1_in_a2(), diag_a2_borel(), holomorphic_c2()]
}

pub fn lookup(name: &str) -> Result<CatalogEntry, EmbeddingError> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| EmbeddingError::UnknownCatalogEntry(name.to_string()))
}
