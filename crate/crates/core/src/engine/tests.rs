use super::*;
use crate::constructions::{gen_complete, gen_h1, gen_random_min_degree, gen_tight_cycle};
use crate::solver::{circumference, SearchBudget};

fn edge(h: &UniformHypergraph, e: &[usize]) -> usize {
    h.find_edge(e).expect("edge present")
}

fn checked() -> EngineOptions {
    EngineOptions {
        check: true,
        ..EngineOptions::default()
    }
}

#[test]
fn complete_graph_reaches_hamiltonian() {
    let h = gen_complete(6, 3).unwrap();
    let rep = run(&h, 6, checked());
    assert_eq!(rep.status, EngineStatus::Found);
    let c = rep.cycle.unwrap();
    assert_eq!(c.len(), 6);
    crate::walk::validate_walk(&h, &c).unwrap();
}

#[test]
fn tight_cycle_reaches_hamiltonian() {
    let h = gen_tight_cycle(7, 3).unwrap();
    let rep = run(&h, 7, checked());
    assert_eq!(rep.status, EngineStatus::Found);
}

#[test]
fn extremal_example_gets_stuck() {
    let h = gen_h1(9, 3).unwrap();
    let rep = run(
        &h,
        9,
        EngineOptions {
            trace: true,
            ..checked()
        },
    );
    assert_eq!(rep.status, EngineStatus::Stuck);
    assert!(!rep.step_limit_hit);
    let pair = rep.pair.unwrap();
    assert!(pair.cycle.len() <= circumference(&h, SearchBudget::unlimited()).length);
    assert!(applicable_moves(&h, &pair).is_empty());
    assert_eq!(rep.trace.len(), rep.steps);
    for w in rep.trace.windows(2) {
        assert!(w[1].rank_before == w[0].rank_after);
    }
}

#[test]
fn hamiltonian_pair_has_no_moves() {
    let h = gen_complete(5, 3).unwrap();
    let pair = CyclePathPair::new(
        vec![0, 1, 2, 3, 4],
        vec![edge(&h, &[0, 1, 2]), edge(&h, &[1, 2, 3]), edge(&h, &[2, 3, 4]), edge(&h, &[0, 3, 4]), edge(&h, &[0, 1, 4])],
        vec![],
        vec![],
    );
    validate_pair(&h, &pair).unwrap();
    assert!(applicable_moves(&h, &pair).is_empty());
}

#[test]
fn endpoint_insertion_lengthens_cycle() {
    let h = UniformHypergraph::new(
        5,
        3,
        vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 3, 4], vec![1, 2, 4]],
    )
    .unwrap();
    let pair = CyclePathPair::new(
        vec![0, 1, 2, 3],
        vec![edge(&h, &[0, 1, 2]), edge(&h, &[1, 2, 3]), edge(&h, &[0, 2, 3]), edge(&h, &[0, 1, 3])],
        vec![4],
        vec![],
    );
    validate_pair(&h, &pair).unwrap();
    let moves = applicable_moves(&h, &pair);
    let ins = moves
        .iter()
        .find(|m| m.kind == MoveKind::InsertEndpoint)
        .expect("insertion available");
    assert_eq!(ins.rank_after.c_len, 5);
    let next = apply_move(&h, &pair, ins).unwrap();
    assert_eq!(next.cycle.vertices.len(), 5);
    assert!(next.path.vertices.is_empty());
    assert_eq!(best_move(&moves).unwrap().rank_after.c_len, 5);
}

#[test]
fn path_absorption_reroutes_cycle() {
    let h = UniformHypergraph::new(
        6,
        3,
        vec![vec![0, 1, 3], vec![1, 2, 5], vec![0, 2, 4], vec![0, 3, 4], vec![1, 4, 5]],
    )
    .unwrap();
    let pair = CyclePathPair::new(
        vec![0, 1, 2],
        vec![edge(&h, &[0, 1, 3]), edge(&h, &[1, 2, 5]), edge(&h, &[0, 2, 4])],
        vec![3, 4, 5],
        vec![edge(&h, &[0, 3, 4]), edge(&h, &[1, 4, 5])],
    );
    validate_pair(&h, &pair).unwrap();
    let mut p = pair.clone();
    apply_step(&h, &mut p, &Step::AbsorbPath { from: 0, to: 1 }).unwrap();
    validate_pair(&h, &p).unwrap();
    assert_eq!(p.cycle.vertices, vec![2, 0, 3, 4, 5]);
    assert_eq!(p.path.vertices, vec![1]);

    let moves = applicable_moves(&h, &pair);
    assert!(moves.iter().any(|m| m.kind == MoveKind::AbsorbPath && m.rank_after.c_len == 5));
    assert!(apply_step(&h, &mut pair.clone(), &Step::AbsorbPath { from: 1, to: 2 }).is_err());
}

#[test]
fn rotation_and_closure() {
    let h = gen_complete(5, 3).unwrap();
    let f0 = edge(&h, &[0, 1, 2]);
    let f1 = edge(&h, &[1, 2, 3]);
    let f2 = edge(&h, &[0, 3, 4]);
    let mut p = CyclePathPair::new(vec![], vec![], vec![0, 1, 2, 3], vec![f0, f1, f2]);
    assert!(apply_step(&h, &mut p.clone(), &Step::RotatePath { pivot: 1 }).is_err());
    apply_step(&h, &mut p, &Step::RotatePath { pivot: 2 }).unwrap();
    assert_eq!(p.path.vertices, vec![2, 1, 0, 3]);
    assert_eq!(p.path.edge_indices, vec![f1, f0, f2]);
    assert!(apply_step(&h, &mut p.clone(), &Step::CloseCycle { through: 2, edge: None }).is_err());
    let g = edge(&h, &[0, 2, 4]);
    apply_step(&h, &mut p, &Step::CloseCycle { through: 2, edge: Some(g) }).unwrap();
    assert_eq!(p.cycle.vertices, vec![2, 1, 0]);
    assert_eq!(p.cycle.edge_indices, vec![f1, f0, g]);
    assert_eq!(p.path.vertices, vec![3]);
    validate_pair(&h, &p).unwrap();
}

#[test]
fn stale_moves_are_rejected() {
    let h = gen_complete(6, 3).unwrap();
    let pair = random_pair(&h, 5).unwrap();
    let moves = applicable_moves(&h, &pair);
    let mv = best_move(&moves).expect("complete graph has moves").clone();
    let next = apply_move(&h, &pair, &mv).unwrap();
    assert_eq!(apply_move(&h, &next, &mv), Err(EngineError::StaleMove));
}

#[test]
fn fuzz_moves_strictly_improve() {
    let mut applied = 0;
    for seed in 0..60u64 {
        let n = 6 + (seed % 4) as usize;
        let h = gen_random_min_degree(n, 3, 2 + (seed % 4) as usize, seed).unwrap();
        let Some(pair) = random_pair(&h, seed) else { continue };
        validate_pair(&h, &pair).unwrap();
        let before = rank(&h, &pair);
        for mv in applicable_moves(&h, &pair) {
            let next = apply_move(&h, &pair, &mv).unwrap();
            validate_pair(&h, &next).unwrap();
            assert!(rank(&h, &next) > before);
            assert_eq!(rank(&h, &next), mv.rank_after);
            applied += 1;
        }
    }
    assert!(applied > 100, "only {applied} moves exercised");
}

#[test]
fn runs_never_exceed_circumference() {
    for seed in 0..20u64 {
        let h = gen_random_min_degree(8, 3, 3, seed).unwrap();
        let c = circumference(&h, SearchBudget::unlimited()).length;
        let rep = run(&h, 8, checked());
        match rep.status {
            EngineStatus::Found => assert_eq!(c, 8),
            EngineStatus::Stuck => assert!(rep.pair.unwrap().cycle.len() <= c),
            EngineStatus::NoCycle => assert!(c < 3),
        }
    }
}
