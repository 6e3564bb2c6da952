//! Acceptance criteria at the default desk scale. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;

use superharmonic_cli::{run_selection, CheckKind, CheckRecord, Selection, SuiteConfig};

use CheckKind::{Invariance, Witness};

struct Criterion {
    number: u32,
    title: &'static str,
    /// Check id, kind and the stated tolerance or threshold.
    checks: &'static [(&'static str, CheckKind, f64)],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "algebra: associativity, graded commutativity, inversion, Leibniz",
        checks: &[
            ("algebra.associativity", Invariance, 1e-14),
            ("algebra.graded-commutativity", Invariance, 1e-14),
            ("algebra.inversion", Invariance, 1e-14),
            ("algebra.dual-leibniz", Invariance, 1e-14),
        ],
    },
    Criterion {
        number: 2,
        title: "clifford: relation, gamma symmetry swap, projector algebra and images",
        checks: &[
            ("clifford.relation", Invariance, 1e-14),
            ("clifford.relation-exact", Invariance, 0.0),
            ("clifford.symmetry-swap", Invariance, 1e-14),
            ("clifford.projectors", Invariance, 1e-14),
            ("clifford.projectors-exact", Invariance, 0.0),
            ("clifford.projector-images", Invariance, 1e-14),
        ],
    },
    Criterion {
        number: 3,
        title: "Dirac action vanishes on commuting Majorana spinors",
        checks: &[("dirac.majorana-vanishing", Invariance, 1e-12)],
    },
    Criterion {
        number: 4,
        title: "connection independence of the Dirac action and the super action",
        checks: &[
            ("dirac.connection-independence", Invariance, 1e-10),
            ("dirac.connection-independence-total", Invariance, 1e-10),
        ],
    },
    Criterion {
        number: 5,
        title: "Dirac operator is symmetric on odd spinors",
        checks: &[("dirac.symmetry", Invariance, 1e-10)],
    },
    Criterion {
        number: 6,
        title: "torsion factorization recovery",
        checks: &[("torsion.factorization", Invariance, 1e-10)],
    },
    Criterion {
        number: 7,
        title: "planar-target variation identities, FD order, witness",
        checks: &[
            ("varform1.harmonic-identity", Invariance, 1e-9),
            ("varform1.dirac-identity", Invariance, 1e-9),
            ("varform1.fd2-order", Invariance, 0.5),
            ("varform1.witness", Witness, 1e-3),
        ],
    },
    Criterion {
        number: 8,
        title: "basic supersymmetry stationarity and non-holomorphic witness",
        checks: &[
            ("susy-basic.stationary", Invariance, 1e-8),
            ("susy-basic.holomorphy-residual", Witness, 0.1),
            ("susy-basic.nonholomorphic", Witness, 1e-3),
        ],
    },
    Criterion {
        number: 9,
        title: "full supersymmetry iff the torsion factorizes",
        checks: &[
            ("susy-full.stationary", Invariance, 1e-8),
            ("susy-full.unfactorized", Witness, 1e-3),
        ],
    },
    Criterion {
        number: 10,
        title: "super Weyl invariance and ruled-out coupling drift",
        checks: &[
            ("super-weyl.invariance", Invariance, 1e-9),
            ("super-weyl.ruled-out-drift", Witness, 1e-3),
        ],
    },
    Criterion {
        number: 11,
        title: "conformal invariance with the frozen weights, FD second order",
        checks: &[
            ("weyl.invariance", Invariance, 1e-9),
            ("weyl.fd2-order", Invariance, 0.5),
        ],
    },
    Criterion {
        number: 12,
        title: "divergence bookkeeping and supercurrent identity",
        checks: &[
            ("varform1.divergence-integral", Invariance, 1e-12),
            ("varform1.current-divergence-integral", Invariance, 1e-12),
            ("varform1.current-identity", Invariance, 1e-9),
        ],
    },
];

fn find<'a>(records: &'a [CheckRecord], id: &str) -> Option<&'a CheckRecord> {
    records.iter().find(|r| r.id == id)
}

fn main() -> ExitCode {
    let config = SuiteConfig::default();
    let records = run_selection(&"all".parse::<Selection>().expect("all"), &config);
    let mut failed = 0;
    for c in CRITERIA {
        let mut notes = Vec::new();
        for &(id, kind, tol) in c.checks {
            match find(&records, id) {
                None => notes.push(format!("{id}: missing")),
                Some(r) if r.kind != kind || r.tolerance != tol => notes.push(format!(
                    "{id}: runs at {:?} {:e}, stated {kind:?} {tol:e}",
                    r.kind, r.tolerance
                )),
                Some(r) if !r.pass => {
                    let rel = if kind == Invariance { "<=" } else { ">=" };
                    notes.push(format!(
                        "{id}: measured {:e}, need {rel} {tol:e}",
                        r.measured
                    ))
                }
                Some(_) => {}
            }
        }
        let status = if notes.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {}", c.number, c.title);
        for n in &notes {
            println!("              {n}");
        }
        failed += usize::from(!notes.is_empty());
    }
    println!(
        "{} of {} criteria pass",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
