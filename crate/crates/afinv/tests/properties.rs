mod common;

use common::*;

fn run(check: impl Fn(&afinv::specimen::Specimen) -> Check) {
    if let Err(e) = on_all(&corpus(), check) {
        panic!("{e}");
    }
}

#[test]
fn eigen_identities_hold_exactly() {
    run(eigen_identities);
}

#[test]
fn factorization_multiplies_back() {
    run(factorization);
}

#[test]
fn determinant_chain_holds() {
    run(determinant_chain);
}

#[test]
fn digit_round_trip_on_random_members() {
    let mut runner = deterministic_runner();
    for s in corpus() {
        digit_round_trip(&s, &mut runner, 100).unwrap();
    }
}

#[test]
fn quotient_congruences_to_depth_3n() {
    run(quotient_congruences);
}

#[test]
fn torsion_dimensions_match_row_reduction() {
    let small: Vec<_> = corpus().into_iter().filter(|s| s.n() <= 4).collect();
    on_all(&small, torsion_vs_oracle).unwrap();
}

#[test]
fn exact_tau_matches_floats() {
    run(tau_matches_floats);
}

#[test]
fn oracle_rank_on_known_matrices() {
    use afinv::exactalg::IntMatrix;
    // nilpotent mod 2, invertible mod 3
    let j0 = IntMatrix::from_i64(&[&[2, 1], &[-2, 0]]);
    assert_eq!(stable_rank_oracle(&j0, 2), 0);
    assert_eq!(stable_rank_oracle(&j0, 3), 2);
    assert_eq!(stable_rank_oracle(&IntMatrix::from_i64(&[&[0, 1], &[0, 0]]), 5), 0);
    assert_eq!(stable_rank_oracle(&IntMatrix::from_i64(&[&[1, 1], &[0, 0]]), 5), 1);
}
