// Temporary dev scan; removed before release.
use rand_chacha::rand_core::RngCore;
use vtmem::*;

fn paper_memories() -> MemorySet {
    let rows: Vec<Vec<i8>> = vec![
        vec![1, 1, 1, 1, -1, 1, -1],
        vec![1, -1, -1, 1, -1, 1, -1],
        vec![1, -1, 1, -1, 1, -1, 1],
        vec![-1, 1, 1, -1, -1, -1, 1],
        vec![1, -1, 1, 1, 1, -1, 1],
    ];
    MemorySet::new(rows.into_iter().map(|r| BipolarPattern::new(r).unwrap()).collect()).unwrap()
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "dominance" => dominance_scan(),
        "quat" => quat_table(),
        "widrow" => widrow_regression(),
        "worked" => worked_example(),
        "table3" => table3(),
        _ => eprintln!("usage: scratch [dominance|quat|widrow|worked|table3]"),
    }
}

fn dominance_scan() {
    // Criterion-8 distribution: N in [5,50], m in [1,N].
    let mut violations = 0u64;
    let mut checked = 0u64;
    let master = RandomSource::new(0xD0);
    let mut meta = master.rng();
    for idx in 0..20_000u64 {
        let n = 5 + (meta.next_u32() as usize) % 46;
        let m = 1 + (meta.next_u32() as usize) % n;
        let src = master.with_stream(idx + 1);
        let memories = random_memories(n, m, &src).unwrap();
        let t = build_t_matrix(&memories);
        let fixed = count_stored_fixed(&t, &memories).unwrap();
        let grid = ThresholdGrid::default_for(n);
        let out = learn_thresholds_grid(&t, &memories, &grid).unwrap();
        checked += 1;
        if out.stored_count < fixed {
            violations += 1;
            println!(
                "violation at idx={idx} n={n} m={m}: fixed={fixed} variable={}",
                out.stored_count
            );
        }
        if idx % 2000 == 0 {
            eprintln!("... {idx} done, {violations} violations");
        }
    }
    println!("checked {checked}, violations {violations}");
}

fn quat_table() {
    let lv = QuaternaryLevels::experiment(1.0).unwrap();
    for n in [9usize, 7] {
        println!("--- {n} neurons ---");
        let rows: Vec<f64> = if n == 9 {
            vec![96.0, 144.0, 192.0, 240.0, 288.0, 336.0]
        } else {
            vec![192.0, 240.0, 288.0, 336.0, 384.0, 432.0]
        };
        println!("t/c    1      2      3      4      5      6");
        for (ri, &tc) in rows.iter().enumerate() {
            print!("{tc:5}");
            for p in 1..=6 {
                let base = RandomSource::new(0x9A).with_stream(((ri * 6 + p) * 1000) as u64);
                let pct =
                    quat_capacity_experiment(n, p, tc, 100, &base, &lv, 1000).unwrap();
                print!("  {pct:5.1}");
            }
            println!();
        }
    }
}

fn widrow_regression() {
    let memories = paper_memories();
    let t = build_t_matrix(&memories);
    let init = RealWeightMatrix::from_weight_matrix(&t).scaled(1.0 / 6.0);
    let cfg = LearningConfig::new(0.1, 100).unwrap();
    let out = widrow_hoff_refine_from(&memories, &cfg, &init).unwrap();
    println!(
        "paper memories, init T/(N-1), eta 0.1: all_stored={} epochs={} first mse={:?} last mse={:?}",
        out.all_stored,
        out.epochs,
        out.mse_trace.first(),
        out.mse_trace.last()
    );

    // vthreshold widrow learner on the paper example.
    let cfg2 = LearningConfig::new(0.05, 500).unwrap();
    let res = learn_thresholds_widrow(&t, &memories, &cfg2).unwrap();
    println!(
        "threshold widrow eta=0.05 epochs<=500: stored={} thresholds={:?}",
        res.stored_count,
        res.thresholds.as_slice()
    );
}

fn worked_example() {
    let memories = paper_memories();
    let t = build_t_matrix(&memories);
    println!("T matrix:");
    for i in 0..7 {
        println!("  {:?}", t.row(i));
    }
    for (s, x) in memories.iter().enumerate() {
        println!("fixed stored m{}: {}", s + 1, is_stored_fixed(&t, x).unwrap());
    }
    let reference =
        ThresholdVector::new(vec![-7.9, 0.1, -7.9, -3.9, 4.1, -7.9, -9.9]).unwrap();
    for (s, x) in memories.iter().enumerate() {
        println!(
            "reference-threshold stored m{}: {}",
            s + 1,
            is_stored_variable(&t, x, &reference).unwrap()
        );
    }
    for step in [0.1, 0.2, 0.5] {
        let grid = ThresholdGrid::with_step(7, step).unwrap();
        let out = learn_thresholds_grid(&t, &memories, &grid).unwrap();
        println!(
            "grid step {step}: stored={} flags={:?} thetas={:?}",
            out.stored_count,
            out.stored_flags,
            out.thresholds.as_slice()
        );
    }
    let exact = learn_thresholds_exact(&t, &memories).unwrap();
    println!(
        "exact: stored={} flags={:?} thetas={:?}",
        exact.stored_count,
        exact.stored_flags,
        exact.thresholds.as_slice()
    );
    let b = build_b_matrix(&t);
    for (bits, want) in [
        (vec![1i8, 1], 0usize),
        (vec![1, -1, -1], 1),
        (vec![1, -1, 1, -1], 2),
    ] {
        let frag = Fragment::new(bits.clone()).unwrap();
        let out = retrieve_from_fragment(&b, &frag, &reference).unwrap();
        println!(
            "fragment {:?} -> {:?} (matches m{}: {})",
            bits,
            out.as_slice(),
            want + 1,
            &out == memories.get(want)
        );
    }
    // m4 from prefixes of increasing length.
    for k in 1..=6 {
        let frag = Fragment::prefix_of(memories.get(3), k).unwrap();
        let out = retrieve_from_fragment(&b, &frag, &reference).unwrap();
        println!("m4 prefix {k}: match={}", &out == memories.get(3));
    }
}

fn table3() {
    let start = std::time::Instant::now();
    let spec = StorageSweep {
        neuron_counts: vec![1000],
        memories: 100,
        trials: 5,
        seed: 42,
        learner: LearnerSettings::default(),
    };
    let rows = run_storage_sweep(&spec).unwrap();
    println!("{rows:?} in {:?}", start.elapsed());

    let start = std::time::Instant::now();
    let spec = StorageSweep {
        neuron_counts: (1..=10).map(|k| k * 10).collect(),
        memories: 10,
        trials: 20,
        seed: 42,
        learner: LearnerSettings::default(),
    };
    let rows = run_storage_sweep(&spec).unwrap();
    for r in &rows {
        println!("n={:3} fixed={:5.2} variable={:5.2}", r.n, r.stored_fixed, r.stored_variable);
    }
    println!("table2 in {:?}", start.elapsed());

    let start = std::time::Instant::now();
    let spec = RetrievalSweep {
        neuron_counts: vec![30, 40, 50],
        memories: 10,
        trials: 20,
        seed: 42,
        learner: LearnerSettings::default(),
    };
    let rows = run_retrieval_sweep(&spec).unwrap();
    for r in &rows {
        println!(
            "n={:3} stored={:5.2} rf={:5.2} rv={:5.2}",
            r.n, r.stored, r.retrieved_fixed, r.retrieved_variable
        );
    }
    println!("table4 in {:?}", start.elapsed());
}
