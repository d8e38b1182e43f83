use berge_core::constructions::{self, gen_random_min_degree, ConstructionSpec, Family};
use berge_core::engine::{self, EngineOptions, EngineStatus};
use berge_core::format;
use berge_core::solver::{circumference, find_berge_cycle, SearchBudget, Verdict};
use berge_core::thresholds::hamiltonian_threshold;
use berge_core::verify::{read_records, run_sweep, Cell, Suite, SweepConfig, SweepOptions};
use berge_core::validate_walk;

#[test]
fn generated_files_replay_through_the_solver() {
    let spec = ConstructionSpec {
        family: Family::H1,
        n: 10,
        r: 3,
        k: None,
        delta: None,
        min_edges: None,
        seed: None,
    };
    let h = constructions::generate(&spec).unwrap();
    let meta = constructions::metadata(&spec, &h);
    let back = format::parse(&format::serialize(&h)).unwrap();
    assert_eq!(back, h);

    let opt = circumference(&back, SearchBudget::unlimited());
    assert!(opt.is_exact());
    assert_eq!(Some(opt.length), meta.circumference_exact);
    validate_walk(&back, opt.outcome.witness.as_ref().unwrap()).unwrap();
}

#[test]
fn random_instances_at_the_threshold_are_hamiltonian() {
    for (n, r) in [(7, 3), (8, 3), (8, 4), (9, 4)] {
        let delta = hamiltonian_threshold(n as u64, r as u64).unwrap().bound as usize;
        for seed in 0..5 {
            let h = gen_random_min_degree(n, r, delta, seed).unwrap();
            assert!(h.min_degree() >= delta);
            let out = find_berge_cycle(&h, n, SearchBudget::unlimited());
            assert_eq!(out.verdict, Verdict::Found, "n={n} r={r} seed={seed}");
            validate_walk(&h, out.witness.as_ref().unwrap()).unwrap();

            let rep = engine::run(&h, n, EngineOptions { check: true, ..EngineOptions::default() });
            if rep.status == EngineStatus::Found {
                validate_walk(&h, rep.cycle.as_ref().unwrap()).unwrap();
            }
        }
    }
}

#[test]
fn sweep_log_round_trips() {
    let cfg = SweepConfig {
        grid: vec![Cell::new(7, 3, 7), Cell::new(8, 4, 5)],
        samples_per_cell: 4,
        exhaustive_cells: vec![],
        seed: 9,
        ..SweepConfig::default()
    };
    let opts = SweepOptions {
        suites: vec![Suite::Sharpness, Suite::Sampled],
        ..SweepOptions::default()
    };
    let mut log = String::new();
    let rep = run_sweep(&cfg, &opts, &[], |r| {
        log.push_str(&serde_json::to_string(r).unwrap());
        log.push('\n');
        Ok(())
    })
    .unwrap();
    assert!(rep.pass);
    let records = read_records(&log).unwrap();
    assert_eq!(records.len(), rep.records);

    let resumed = run_sweep(&cfg, &opts, &records, |_| panic!("nothing left to run")).unwrap();
    assert_eq!(serde_json::to_value(&resumed).unwrap(), serde_json::to_value(&rep).unwrap());
}
