//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twostep_core::verification::relative_error;
use twostep_core::{
    classical_backward, closed_form_a111, closed_form_a121, compare_gradients,
    finite_difference_gradients, train, two_step_backward, ActivationColumn, ActivationKind,
    BiasMode, ColumnVector, Dataset, ForwardTrace, GradientSet, LossKind, Matrix, Network,
    NetworkSpec, TrainConfig,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 A[1,1,1] golden gradients", a111_golden),
        ("2 A[1,2,1] golden gradients", a121_golden),
        ("3 two-step == classical (200 configs)", rule_equivalence),
        (
            "4 two-step == finite differences (50 configs)",
            finite_difference_agreement,
        ),
        ("5 adjointness and Hadamard chain rule", adjointness_suite),
        ("6 augmented == folded explicit-bias network", bias_folding),
        ("7 XOR and linear-regression training", training_demos),
        ("8 train is byte-reproducible", reproducible_training),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

fn m(rows: &[&[f64]]) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

fn v(data: &[f64]) -> ColumnVector {
    ColumnVector::from_slice(data).unwrap()
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn within_time(started: Instant, limit: Duration) -> Result<(), String> {
    let elapsed = started.elapsed();
    if elapsed > limit {
        return Err(format!("took {elapsed:?}, limit {limit:?}"));
    }
    Ok(())
}

fn identity_net(sizes: Vec<usize>, weights: Vec<Matrix>) -> Network {
    let spec = NetworkSpec::new(
        sizes,
        ActivationKind::Identity,
        ActivationKind::Identity,
        BiasMode::Augmented,
    )
    .unwrap();
    Network::from_weights(spec, weights).unwrap()
}

/// Two-step gradients under `J = f(x) - y` at `x`.
fn identity_loss_gradients(net: &Network, x: f64) -> GradientSet {
    let trace = net.forward(&v(&[x])).unwrap();
    let seed = LossKind::PaperIdentity
        .grad(trace.output(), &v(&[0.0]))
        .unwrap();
    two_step_backward(net, &trace, &seed).unwrap().1
}

fn golden(net: &Network, closed: (Matrix, Matrix), expected: [Matrix; 2]) -> Outcome {
    let grads = identity_loss_gradients(net, 2.0);
    let mut worst: f64 = 0.0;
    for (h, want) in expected.iter().enumerate() {
        worst = worst.max(max_abs_diff(grads.layer(h + 1), want));
    }
    worst = worst.max(max_abs_diff(&closed.0, &expected[0]));
    worst = worst.max(max_abs_diff(&closed.1, &expected[1]));
    if worst <= 1e-12 {
        Ok(format!(
            "δ_W¹={} δ_W²={} (max abs err {worst:.1e})",
            grads.layer(1),
            grads.layer(2)
        ))
    } else {
        Err(format!("max abs err {worst:.3e} > 1e-12"))
    }
}

fn a111_golden() -> Outcome {
    let (w1, w2) = (m(&[&[0.5, 0.1]]), m(&[&[2.0, -1.0]]));
    let net = identity_net(vec![1, 1, 1], vec![w1.clone(), w2.clone()]);
    let closed = closed_form_a111(&w1, &w2, 2.0, ActivationKind::Identity).unwrap();
    golden(&net, closed, [m(&[&[4.0, 2.0]]), m(&[&[1.1, 1.0]])])
}

fn a121_golden() -> Outcome {
    let (w1, w2) = (m(&[&[0.5, 0.1], &[-0.3, 0.2]]), m(&[&[2.0, 1.0, -1.0]]));
    let net = identity_net(vec![1, 2, 1], vec![w1.clone(), w2.clone()]);
    let closed = closed_form_a121(&w1, &w2, 2.0, ActivationKind::Identity).unwrap();
    golden(
        &net,
        closed,
        [m(&[&[4.0, 2.0], &[2.0, 1.0]]), m(&[&[1.1, -0.4, 1.0]])],
    )
}

struct Case {
    net: Network,
    x: ColumnVector,
    y: ColumnVector,
    loss: LossKind,
}

const SMOOTH: [ActivationKind; 3] = [
    ActivationKind::Identity,
    ActivationKind::Sigmoid,
    ActivationKind::Tanh,
];

fn random_vector(rng: &mut impl Rng, dim: usize) -> ColumnVector {
    ColumnVector::new((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

/// Depth 1–4, widths 1–5, activations from {identity, sigmoid, tanh}. Bias
/// mode and loss cycle with `index` so every combination is covered.
fn random_case(rng: &mut impl Rng, index: usize) -> Case {
    let mode = if index.is_multiple_of(2) {
        BiasMode::Augmented
    } else {
        BiasMode::NoBias
    };
    let loss = if (index / 2).is_multiple_of(2) {
        LossKind::SquaredError
    } else {
        LossKind::PaperIdentity
    };
    let depth = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..=depth).map(|_| rng.gen_range(1..=5)).collect();
    let spec = NetworkSpec::new(
        sizes.clone(),
        SMOOTH[rng.gen_range(0..3)],
        SMOOTH[rng.gen_range(0..3)],
        mode,
    )
    .unwrap();
    Case {
        net: Network::init(spec, rng.gen(), 1.0).unwrap(),
        x: random_vector(rng, sizes[0]),
        y: random_vector(rng, sizes[depth]),
        loss,
    }
}

fn two_step(case: &Case) -> (ForwardTrace, ColumnVector, GradientSet) {
    let trace = case.net.forward(&case.x).unwrap();
    let seed = case.loss.grad(trace.output(), &case.y).unwrap();
    let (_, grads) = two_step_backward(&case.net, &trace, &seed).unwrap();
    (trace, seed, grads)
}

fn rule_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0003);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let case = random_case(&mut rng, i);
        let (trace, seed, grads) = two_step(&case);
        let classical = classical_backward(&case.net, &trace, &seed).unwrap();
        let report = compare_gradients(&grads, &classical, 1e-12).unwrap();
        worst = worst.max(report.max_rel());
        if !report.pass {
            return Err(format!(
                "config {i}: max rel {:.3e} at {:?}",
                report.max_rel(),
                report.worst()
            ));
        }
    }
    within_time(started, Duration::from_secs(10))?;
    Ok(format!(
        "max rel err {worst:.1e} in {:?}",
        started.elapsed()
    ))
}

fn finite_difference_agreement() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let case = random_case(&mut rng, i);
        let (_, _, grads) = two_step(&case);
        let fd = finite_difference_gradients(&case.net, case.loss, &case.x, &case.y, 1e-6).unwrap();
        let report = compare_gradients(&grads, &fd, 1e-5).unwrap();
        worst = worst.max(report.max_rel());
        if !report.pass {
            return Err(format!(
                "config {i}: max rel {:.3e} at {:?}",
                report.max_rel(),
                report.worst()
            ));
        }
    }
    within_time(started, Duration::from_secs(30))?;
    Ok(format!(
        "max rel err {worst:.1e} in {:?}",
        started.elapsed()
    ))
}

fn adjointness_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let w = Matrix::new(
            rows,
            cols,
            (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap();
        let x = random_vector(&mut rng, cols);
        let u = random_vector(&mut rng, rows);
        let lhs = w.matvec(&x).unwrap().dot(&u).unwrap();
        let rhs = x.dot(&w.transpose().matvec(&u).unwrap()).unwrap();
        let err = relative_error(lhs, rhs);
        worst = worst.max(err);
        if err > 1e-12 {
            return Err(format!("draw {i}: <Wx,u>={lhs} vs <x,Wᵀu>={rhs}"));
        }
    }
    let mut chain_worst: f64 = 0.0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=6);
        let kinds = (0..n).map(|_| SMOOTH[rng.gen_range(0..3)]).collect();
        let col = ActivationColumn::new(kinds);
        let y = random_vector(&mut rng, n);
        let upstream = random_vector(&mut rng, n);
        let slopes = col.derivative(&y).unwrap();
        let via_hadamard = upstream.hadamard(&slopes).unwrap();
        let mut diag = vec![0.0; n * n];
        for k in 0..n {
            diag[k * n + k] = slopes.get(k);
        }
        let jacobian = Matrix::new(n, n, diag).unwrap();
        let via_jacobian = jacobian.transpose().matvec(&upstream).unwrap();
        for k in 0..n {
            let err = relative_error(via_hadamard.get(k), via_jacobian.get(k));
            chain_worst = chain_worst.max(err);
            if err > 1e-12 {
                return Err(format!(
                    "chain rule draw {i}, coordinate {k}: rel err {err:.3e}"
                ));
            }
        }
    }
    Ok(format!(
        "adjoint max rel err {worst:.1e}, chain rule max rel err {chain_worst:.1e}"
    ))
}

fn fold_biases(net: &Network) -> Network {
    let spec = net.spec();
    let depth = spec.depth();
    let mut sizes: Vec<usize> = spec.sizes().iter().map(|n| n + 1).collect();
    sizes[depth] = spec.output_dim();
    let folded = NetworkSpec::new(
        sizes,
        spec.hidden_activation(),
        spec.output_activation(),
        BiasMode::NoBias,
    )
    .unwrap();
    let mut weights = Vec::new();
    let mut columns = Vec::new();
    for h in 1..=depth {
        let w = net.weight(h);
        if h < depth {
            let mut rows: Vec<Vec<f64>> = w.iter_rows().map(<[f64]>::to_vec).collect();
            rows.push(vec![0.0; w.cols()]);
            weights.push(Matrix::from_rows(&rows).unwrap());
            let mut kinds = net.activation(h).kinds().to_vec();
            kinds.push(ActivationKind::ConstantOne);
            columns.push(ActivationColumn::new(kinds));
        } else {
            weights.push(w.clone());
            columns.push(net.activation(h).clone());
        }
    }
    Network::with_activations(folded, weights, columns).unwrap()
}

fn bias_folding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        // Even indices give augmented cases.
        let case = random_case(&mut rng, 2 * i);
        let folded = fold_biases(&case.net);
        let (trace, seed, grads) = two_step(&case);
        let folded_trace = folded.forward(&case.x.augmented()).unwrap();
        let (_, folded_grads) = two_step_backward(&folded, &folded_trace, &seed).unwrap();
        for (a, b) in trace.output().iter().zip(folded_trace.output().iter()) {
            worst = worst.max((a - b).abs());
        }
        for h in 1..=case.net.depth() {
            let (g, fg) = (grads.layer(h), folded_grads.layer(h));
            for r in 0..g.rows() {
                for (a, b) in g.row(r).iter().zip(fg.row(r)) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        if worst > 1e-12 {
            return Err(format!("case {i}: max abs diff {worst:.3e}"));
        }
    }
    Ok(format!("max abs diff {worst:.1e} over 50 cases"))
}

fn xor_data() -> Dataset {
    let rows = [
        ([0.0, 0.0], 0.0),
        ([0.0, 1.0], 1.0),
        ([1.0, 0.0], 1.0),
        ([1.0, 1.0], 0.0),
    ];
    Dataset::new(
        rows.iter().map(|(x, _)| v(x)).collect(),
        rows.iter().map(|(_, y)| v(&[*y])).collect(),
    )
    .unwrap()
}

fn training_demos() -> Outcome {
    let started = Instant::now();
    let xor_spec = NetworkSpec::new(
        vec![2, 2, 1],
        ActivationKind::Tanh,
        ActivationKind::Identity,
        BiasMode::Augmented,
    )
    .unwrap();
    let mut solved = Vec::new();
    let mut summary = Vec::new();
    for seed in 0..10 {
        let config = TrainConfig {
            spec: xor_spec.clone(),
            loss: LossKind::SquaredError,
            learning_rate: XOR_LR,
            epochs: 5000,
            seed,
            init_scale: XOR_INIT_SCALE,
            shuffle: true,
        };
        let (_, history) =
            train(&config, &xor_data()).map_err(|e| format!("XOR seed {seed}: {e}"))?;
        let hit = history.iter().position(|&l| l < 0.05);
        summary.push(match hit {
            Some(epoch) => format!("{seed}:{}", epoch + 1),
            None => format!("{seed}:-"),
        });
        if hit.is_some() {
            solved.push(seed);
        }
    }

    let xs: Vec<f64> = (0..11).map(|i| -1.0 + 0.2 * f64::from(i)).collect();
    let linear = Dataset::new(
        xs.iter().map(|&x| v(&[x])).collect(),
        xs.iter().map(|&x| v(&[3.0 * x + 1.0])).collect(),
    )
    .unwrap();
    let config = TrainConfig {
        spec: NetworkSpec::new(
            vec![1, 1],
            ActivationKind::Identity,
            ActivationKind::Identity,
            BiasMode::Augmented,
        )
        .unwrap(),
        loss: LossKind::SquaredError,
        learning_rate: 0.1,
        epochs: 500,
        seed: 1,
        init_scale: 1.0,
        shuffle: true,
    };
    let (net, history) = train(&config, &linear).map_err(|e| e.to_string())?;
    let err = max_abs_diff(net.weight(1), &m(&[&[3.0, 1.0]]));
    within_time(started, Duration::from_secs(20))?;

    let xor_line = format!(
        "XOR solved for {}/10 seeds (seed:epoch {})",
        solved.len(),
        summary.join(" ")
    );
    if solved.len() < 8 {
        return Err(xor_line);
    }
    if err > 1e-3 || history[199] >= history[0] {
        return Err(format!("linear fit {} (err {err:.3e})", net.weight(1)));
    }
    Ok(format!(
        "{xor_line}; linear fit {} (err {err:.1e})",
        net.weight(1)
    ))
}

const XOR_LR: f64 = 0.5;
/// Narrower inits (≤ 1) leave most seeds on the 0.15–0.2 loss plateau at this rate.
const XOR_INIT_SCALE: f64 = 3.0;

fn reproducible_training() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let data = dir.path().join("xor.csv");
    std::fs::write(&data, "x1,x2,y\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n").map_err(|e| e.to_string())?;
    let run = |out: &Path| -> Result<Vec<u8>, String> {
        let status = Command::new(env!("CARGO_BIN_EXE_twostep"))
            .args(["train", "--arch", "2,2,1", "--bias", "augmented"])
            .args(["--hidden-act", "tanh", "--output-act", "identity"])
            .args(["--loss", "squared-error", "--lr", "0.5", "--epochs", "300"])
            .args(["--seed", "7", "--init-scale", "1"])
            .arg("--data")
            .arg(&data)
            .arg("--out")
            .arg(out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        std::fs::read(out).map_err(|e| e.to_string())
    };
    let first = run(&dir.path().join("a.json"))?;
    let second = run(&dir.path().join("b.json"))?;
    if first == second {
        Ok(format!("{} identical bytes", first.len()))
    } else {
        Err("model files differ".into())
    }
}
