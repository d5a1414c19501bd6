//! One line per acceptance criterion. Every criterion is exact (zero
//! tolerance); the time budget covers all checks of the criterion.

use std::time::{Duration, Instant};

use qschur::verify::run_check;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    checks: &'static [&'static str],
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Hecke quadratic and braid relations, A1-A3 B2 B3 G2",
        budget: secs(5),
        checks: &["hecke.quadratic", "hecke.braid"],
    },
    Criterion {
        id: 2,
        title: "symmetrizer eigenvalue -q, classical sign, -(1 + q^-2) identity",
        budget: secs(5),
        checks: &["hecke.symmetrizer", "hecke.symmetrizer_classical", "hecke.calc_identity"],
    },
    Criterion {
        id: 3,
        title: "census: dim 10 for gl(2) box(2), double coset sizes, flag dimensions",
        budget: secs(5),
        checks: &["cartan.gl2_box2_dim", "cartan.double_coset_sizes", "cartan.flag_dims"],
    },
    Criterion {
        id: 4,
        title: "structure constants: integral, associative, unital, triangular, p-symmetric, classical limit",
        budget: secs(30),
        checks: &[
            "schur.integrality",
            "schur.associative_unital",
            "schur.triangularity",
            "schur.p_symmetry",
            "schur.classical_limit",
        ],
    },
    Criterion {
        id: 5,
        title: "affine engine: associativity, peel round trip, regular block, centers",
        budget: secs(60),
        checks: &[
            "hecke.affine_associativity",
            "affine.peel_round_trip",
            "affine.peel_order_independence",
            "affine.regular_block_iso",
            "affine.center",
        ],
    },
    Criterion {
        id: 6,
        title: "rank one affine example: four matrices, commutant 4 vs proper image",
        budget: secs(5),
        checks: &["affine.sl2_remark", "howe.sl2_witness"],
    },
    Criterion {
        id: 7,
        title: "Wedderburn sums for gl(n) box(d), n, d <= 3; point counts agree with Kostka for d <= 4",
        budget: secs(180),
        checks: &["springer.wedderburn", "springer.kostka_components"],
    },
    Criterion {
        id: 8,
        title: "relevance equals nonemptiness, fiber dimension inequality, d <= 4",
        budget: secs(60),
        checks: &["springer.relevance", "springer.nonempty_dominance", "springer.lemma_inequality"],
    },
    Criterion {
        id: 9,
        title: "Howe verdicts: gl(2) box(2)/box(2) holds at 1, 3, 5/2; rank one example fails",
        budget: secs(30),
        checks: &["howe.positive_case", "howe.sl2_witness"],
    },
    Criterion {
        id: 10,
        title: "B2 and C2 censuses agree for jmath(1)",
        budget: secs(5),
        checks: &["langlands.b2_c2"],
    },
];

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let mut problems = Vec::new();
        for name in c.checks {
            let r = run_check(name).unwrap_or_else(|| panic!("unregistered check {name}"));
            if !r.passed {
                problems.push(format!("{name}: {}", r.detail));
            }
        }
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            problems.push(format!("took {elapsed:.1?}, budget {:?}", c.budget));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {} ({elapsed:.2?} of {:?})", c.id, c.title, c.budget);
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
