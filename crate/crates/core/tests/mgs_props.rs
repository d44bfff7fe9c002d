mod common;

use quiverlab::mgs::{find_mgs, Color, FramedMatrix, MgsBudget, MgsError, NzChecker};
use quiverlab::repmod::TypeAQuiver;
use quiverlab::Quiver;

fn all_orientations(max_n: usize) -> impl Iterator<Item = TypeAQuiver> {
    (1..=max_n).flat_map(TypeAQuiver::orientations)
}

#[test]
fn matrix_engine_matches_framed_quiver_engine() {
    let mut quivers: Vec<Quiver> = all_orientations(4).map(|tq| tq.quiver().clone()).collect();
    quivers.push(Quiver::from_arrows(3, &[(1, 2), (2, 3), (3, 1)]).unwrap());
    for q in quivers {
        let found = find_mgs(&q.exchange_matrix(), MgsBudget::default()).unwrap();
        let ours: Vec<(Vec<usize>, Vec<Vec<Vec<i64>>>)> = found
            .iter()
            .map(|s| (s.directions.clone(), s.states.iter().map(FramedMatrix::extended).collect()))
            .collect();
        assert_eq!(ours, common::mgs_oracle(&q), "{:?}", q.arrow_list());
    }
}

#[test]
fn sequences_are_green_and_maximal() {
    for tq in all_orientations(4) {
        for seq in find_mgs(&tq.quiver().exchange_matrix(), MgsBudget::default()).unwrap() {
            let (last, prefix) = seq.states.split_last().unwrap();
            assert!(last.colors().unwrap().iter().all(|c| *c == Color::Red));
            for (state, &k) in prefix.iter().zip(&seq.directions) {
                assert!(state.green_vertices().unwrap().contains(&k));
            }
        }
    }
}

#[test]
fn duality_holds_along_every_sequence() {
    for tq in all_orientations(4) {
        let nz = NzChecker::new(&tq).unwrap();
        for seq in find_mgs(&tq.quiver().exchange_matrix(), MgsBudget::default()).unwrap() {
            for state in &seq.states {
                let report = nz.check(state).unwrap();
                assert_eq!(report.pair.g_vectors(&tq).len(), tq.n());
            }
        }
    }
}

/// The shortest sequence of a Dynkin quiver mutates each vertex once, sinks first.
#[test]
fn shortest_sequence_has_length_n() {
    for tq in all_orientations(4) {
        let seqs = find_mgs(&tq.quiver().exchange_matrix(), MgsBudget::default()).unwrap();
        let shortest = seqs.iter().map(|s| s.directions.len()).min().unwrap();
        assert_eq!(shortest, tq.n());
    }
}

/// The Kronecker quiver has a green branch that never turns all red, so the
/// search stops at its depth budget with the finite sequences it found.
#[test]
fn kronecker_search_reports_budget() {
    let budget = MgsBudget {
        max_depth: 20,
        max_states: 10_000,
    };
    let Err(MgsError::BudgetExceeded { partial, .. }) = find_mgs(&Quiver::kronecker().exchange_matrix(), budget) else {
        panic!("expected an exhausted budget");
    };
    let dirs: Vec<Vec<usize>> = partial.iter().map(|s| s.directions.clone()).collect();
    assert_eq!(dirs, vec![vec![1, 2]]);
}
