//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p mpsim-core --test acceptance -- --nocapture`
//! to see every line.

use mpsim_core::*;

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(number: u32, name: &str, body: F) {
    let result = std::panic::catch_unwind(body);
    match &result {
        Ok(()) => println!("ACCEPTANCE {number} ({name}): PASS"),
        Err(_) => println!("ACCEPTANCE {number} ({name}): FAIL"),
    }
    if let Err(payload) = result {
        std::panic::resume_unwind(payload);
    }
}

fn ideal_setup() -> (TetrahedronFrame, DeviceModel) {
    let frame = TetrahedronFrame::identity();
    let device = DeviceModel::ideal_for(&MpBasis::new(&frame)).unwrap();
    (frame, device)
}

#[test]
fn criterion_1_algebraic_suite() {
    criterion(1, "algebraic suite", || {
        let frame = TetrahedronFrame::identity();
        let basis = MpBasis::new(&frame);

        // Orthonormality and completeness of the MP basis.
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = basis.state(i).inner(basis.state(j)).norm();
                assert!((got - want).abs() < 1e-12, "gram({i},{j}) = {got}");
            }
        }
        let mut projector_sum = [[num_complex::Complex64::new(0.0, 0.0); 4]; 4];
        for mp in basis.states() {
            let a = mp.amplitudes();
            for r in 0..4 {
                for c in 0..4 {
                    projector_sum[r][c] += a[r] * a[c].conj();
                }
            }
        }
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert!(
                    (projector_sum[r][c] - num_complex::Complex64::new(want, 0.0)).norm() < 1e-12
                );
            }
        }

        // Concurrence of every basis element.
        for mp in basis.states() {
            assert!((mp.concurrence() - 0.25).abs() < 1e-12);
        }

        // Projection efficiency and extinction ratio at C = 0.25.
        let eta = efficiency(0.25).unwrap();
        assert!((eta - 4.0 / (4.0 + 15.0f64.sqrt())).abs() < 1e-12);
        let polarizer = PartialPolarizer::for_concurrence(0.25).unwrap();
        assert!((polarizer.extinction_ratio() - 62.0).abs() <= 0.5);

        // Tetrahedron geometry.
        let b = frame.bloch_vectors();
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!((b[i].dot(&b[j]) + 1.0 / 3.0).abs() < 1e-12);
            }
        }
    });
}

#[test]
fn criterion_2_genmp_monte_carlo() {
    criterion(2, "GenMP Monte Carlo", || {
        let (frame, device) = ideal_setup();
        let trials = 1_000_000;

        let collective = run_game(&GameConfig {
            prior: Prior::UniformSphere,
            strategy: StrategyKind::Collective,
            trials,
            seed: 2024,
            device: device.clone(),
            frame: frame.clone(),
        })
        .unwrap();
        assert!(
            (collective.average_fidelity - 0.75).abs() <= 0.002,
            "collective GenMP average {}",
            collective.average_fidelity
        );

        let locc = run_game(&GameConfig {
            prior: Prior::UniformSphere,
            strategy: StrategyKind::Locc,
            trials,
            seed: 2025,
            device: device.clone(),
            frame: frame.clone(),
        })
        .unwrap();
        let locc_benchmark = (3.0 + 2.0f64.sqrt()) / 6.0;
        assert!(
            (locc.average_fidelity - locc_benchmark).abs() <= 0.002,
            "LOCC GenMP average {}",
            locc.average_fidelity
        );

        let coll_quad = expected_fidelity(
            &Prior::UniformSphere,
            StrategyKind::Collective,
            &device,
            &frame,
        )
        .unwrap();
        assert!((coll_quad - 0.75).abs() < 1e-6, "quadrature {coll_quad}");
        let locc_quad =
            expected_fidelity(&Prior::UniformSphere, StrategyKind::Locc, &device, &frame).unwrap();
        assert!(
            (locc_quad - locc_benchmark).abs() < 1e-6,
            "quadrature {locc_quad}"
        );
    });
}

/// Independent brute-force expectation for the suppressed-entanglement
/// TetraMP game: P(i|v) proportional to ||(U~ W U_A (x) U_B)|vv>||^2
/// (the classical-routing factor cancels in the renormalization), scored
/// by (1 + n_v . n_i)/2 and averaged over the four vertices.
fn suppressed_entanglement_tetra_oracle(frame: &TetrahedronFrame, device: &DeviceModel) -> f64 {
    let w = device.polarizer().matrix();
    let mut total = 0.0;
    for v in frame.states() {
        let amps = v.amplitudes();
        let mut weights = [0.0f64; 4];
        for (i, weight) in weights.iter_mut().enumerate() {
            let pair = &device.settings()[i];
            let chain = device.imperfection().mul(&w).mul(&pair.arm1);
            // Explicit amplitude propagation: psi'_{jk} = sum_{lm}
            // chain[j][l] arm2[k][m] amps_l amps_m.
            let mut norm_sqr = 0.0;
            for j in 0..2 {
                for k in 0..2 {
                    let mut amp = num_complex::Complex64::new(0.0, 0.0);
                    for l in 0..2 {
                        for m in 0..2 {
                            amp += chain.m[j][l] * pair.arm2.m[k][m] * amps[l] * amps[m];
                        }
                    }
                    norm_sqr += amp.norm_sqr();
                }
            }
            *weight = norm_sqr;
        }
        let sum: f64 = weights.iter().sum();
        let mut per_state = 0.0;
        for i in 0..4 {
            let f = (1.0 + v.bloch().dot(&frame.bloch_vectors()[i])) / 2.0;
            per_state += weights[i] / sum * f;
        }
        total += 0.25 * per_state;
    }
    total
}

#[test]
fn criterion_3_tetramp_monte_carlo() {
    criterion(3, "TetraMP Monte Carlo", || {
        let (frame, device) = ideal_setup();
        let trials = 1_000_000;

        let collective = run_game(&GameConfig {
            prior: Prior::TetrahedronVertices,
            strategy: StrategyKind::Collective,
            trials,
            seed: 31,
            device: device.clone(),
            frame: frame.clone(),
        })
        .unwrap();
        assert!(
            (collective.average_fidelity - 5.0 / 6.0).abs() <= 0.002,
            "collective TetraMP average {}",
            collective.average_fidelity
        );

        let suppressed = run_game(&GameConfig {
            prior: Prior::TetrahedronVertices,
            strategy: StrategyKind::SuppressedEntanglement,
            trials,
            seed: 32,
            device: device.clone(),
            frame: frame.clone(),
        })
        .unwrap();
        let oracle = suppressed_entanglement_tetra_oracle(&frame, &device);
        let pull =
            (suppressed.average_fidelity - oracle).abs() / suppressed.standard_error.max(1e-12);
        assert!(
            pull <= 3.0,
            "suppressed-entanglement average {} vs oracle {oracle} ({pull:.2} standard errors)",
            suppressed.average_fidelity
        );
        assert!(
            collective.average_fidelity - suppressed.average_fidelity > 0.10,
            "entanglement gap {} too small",
            collective.average_fidelity - suppressed.average_fidelity
        );
    });
}

#[test]
fn criterion_4_device_physics() {
    criterion(4, "device physics", || {
        use mpsim_core::twoqubit::{tensor_square, TwoQubitState};

        // HOM dip for a symmetric input at a balanced splitter.
        let balanced = DeviceModel::bare(0.5, PartialPolarizer::transparent()).unwrap();
        let symmetric = tensor_square(&PureQubit::zero());
        assert!(balanced.coincidence_prob(1, &symmetric).unwrap() < 1e-12);

        // Distinguishable photons coincide half the time.
        let delayed = DeviceModel::bare(0.5, PartialPolarizer::transparent())
            .unwrap()
            .with_distinguishable(true);
        assert!((delayed.coincidence_prob(1, &symmetric).unwrap() - 0.5).abs() < 1e-12);

        // 47:53 splitting leaks (0.53 - 0.47)^2 of a symmetric input.
        let lab = DeviceModel::bare(0.53, PartialPolarizer::transparent()).unwrap();
        assert!((lab.coincidence_prob(1, &symmetric).unwrap() - 0.0036).abs() < 1e-12);

        // The aligned ideal device realizes eta |<MP_i|psi>|^2.
        let (frame, device) = ideal_setup();
        let basis = MpBasis::new(&frame);
        let eta = efficiency(0.25).unwrap();
        let mut rng = seed::task_rng(404, 0);
        for _ in 0..1000 {
            let psi = {
                use rand::Rng;
                let mut amps = [num_complex::Complex64::new(0.0, 0.0); 4];
                let mut norm_sqr = 0.0;
                for a in amps.iter_mut() {
                    *a = num_complex::Complex64::new(
                        rng.random::<f64>() - 0.5,
                        rng.random::<f64>() - 0.5,
                    );
                    norm_sqr += a.norm_sqr();
                }
                let norm = norm_sqr.sqrt();
                for a in amps.iter_mut() {
                    *a /= norm;
                }
                TwoQubitState::new(amps).unwrap()
            };
            for i in 1..=4 {
                let got = device.coincidence_prob(i, &psi).unwrap();
                let want = eta * basis.state(i - 1).inner(&psi).norm_sqr();
                assert!((got - want).abs() < 1e-10);
            }
        }
    });
}

#[test]
fn criterion_5_imperfection_model() {
    criterion(5, "imperfection model", || {
        let targets = ImperfectionTargets::new(0.987, 0.93).unwrap();
        let fitted = fit_imperfection_unitary(&targets).unwrap();
        assert!((imperfection::v_overlap(&fitted) - 0.987).abs() < 1e-8);
        assert!((imperfection::a_overlap(&fitted) - 0.93).abs() < 1e-8);

        let (frame, device) = ideal_setup();
        for seed in [71, 72, 73] {
            let ideal = run_game(&GameConfig {
                prior: Prior::UniformSphere,
                strategy: StrategyKind::Collective,
                trials: 400_000,
                seed,
                device: device.clone(),
                frame: frame.clone(),
            })
            .unwrap();
            let perturbed = run_game(&GameConfig {
                prior: Prior::UniformSphere,
                strategy: StrategyKind::Collective,
                trials: 400_000,
                seed,
                device: device.clone().with_imperfection(fitted).unwrap(),
                frame: frame.clone(),
            })
            .unwrap();
            assert!(
                perturbed.average_fidelity < ideal.average_fidelity,
                "seed {seed}: perturbed {} not below ideal {}",
                perturbed.average_fidelity,
                ideal.average_fidelity
            );
        }
    });
}

/// Sphere argmax of the collective log-likelihood by dense grid search
/// (0.002 rad) plus shrinking-stencil refinement, written directly from
/// the ideal-device closed form p_i proportional to (1 + m . n_i)^2.
fn grid_oracle(counts: &[u64; 4], frame: &TetrahedronFrame) -> BlochVector {
    let ns = frame.bloch_vectors();
    let loglik = |theta: f64, phi: f64| -> f64 {
        let (st, ct) = (theta.sin(), theta.cos());
        let m = BlochVector::new(st * phi.cos(), st * phi.sin(), ct);
        let mut ll = 0.0;
        for i in 0..4 {
            if counts[i] > 0 {
                let q = 1.0 + m.dot(&ns[i]);
                ll += 2.0 * counts[i] as f64 * q.max(1e-300).ln();
            }
        }
        // The normalization sum_i (1 + m.n_i)^2 = 16/3 on the sphere.
        ll
    };

    let res = 0.002;
    let n_theta = (std::f64::consts::PI / res).ceil() as usize + 1;
    let n_phi = (std::f64::consts::TAU / res).ceil() as usize;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for it in 0..n_theta {
        let theta = (it as f64 * res).min(std::f64::consts::PI);
        for ip in 0..n_phi {
            let phi = ip as f64 * res;
            let ll = loglik(theta, phi);
            if ll > best.0 {
                best = (ll, theta, phi);
            }
        }
    }

    // Local refinement: pattern search over (theta, phi) with a
    // shrinking step.
    let (mut ll, mut theta, mut phi) = best;
    let mut step = res;
    while step > 1e-12 {
        let mut improved = false;
        for (dt, dp) in [
            (step, 0.0),
            (-step, 0.0),
            (0.0, step),
            (0.0, -step),
            (step, step),
            (step, -step),
            (-step, step),
            (-step, -step),
        ] {
            let t = (theta + dt).clamp(0.0, std::f64::consts::PI);
            let p = phi + dp;
            let cand = loglik(t, p);
            if cand > ll {
                ll = cand;
                theta = t;
                phi = p;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    BlochVector::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

#[test]
fn criterion_6_tomography() {
    criterion(6, "tomography", || {
        let (frame, device) = ideal_setup();
        let basis = MpBasis::new(&frame);

        // Exact-frequency recovery on 100 random states.
        let mut rng = seed::task_rng(606, 0);
        for _ in 0..100 {
            let truth = haar_random_qubit(&mut rng);
            let probs =
                strategy_outcome_probs(StrategyKind::Collective, &device, &basis, &truth).unwrap();
            let weights = [
                probs[0] * 1e4,
                probs[1] * 1e4,
                probs[2] * 1e4,
                probs[3] * 1e4,
            ];
            let est = mle_reconstruct_weights(&weights, &frame, &device).unwrap();
            let infidelity = 1.0 - fidelity_pure(&est, &truth);
            assert!(infidelity < 1e-9, "exact-frequency infidelity {infidelity}");
        }

        // APG against the dense-grid sphere oracle on 50 sampled count
        // vectors of mixed sizes.
        let mut rng = seed::task_rng(607, 0);
        let pair_sizes = [10u64, 50, 250, 1200];
        for k in 0..50 {
            let truth = haar_random_qubit(&mut rng);
            let pairs = pair_sizes[k % pair_sizes.len()];
            let counts = sample_outcomes(&truth, pairs, &device, &frame, &mut rng).unwrap();
            let apg = mle_reconstruct(&counts, &frame, &device).unwrap();
            let oracle = grid_oracle(&counts.counts, &frame);
            let gap = (1.0 - (1.0 + apg.bloch().dot(&oracle)) / 2.0).abs();
            assert!(
                gap < 1e-8,
                "vector {k} (pairs {pairs}, counts {:?}): APG-oracle infidelity {gap}",
                counts.counts
            );
        }

        // Simulated scaling over 6 random states up to N_ens = 2400.
        let schedule = vec![16u64, 32, 64, 128, 256, 512, 1024, 2048, 2400];
        let repeats = 200;
        let mut pooled: Vec<(f64, f64)> = Vec::new();
        let mut rng = seed::task_rng(608, 0);
        for state_index in 0..6 {
            let truth = haar_random_qubit(&mut rng);
            let curve = infidelity_curve(&TomographyConfig {
                true_state: truth,
                ensemble_sizes: schedule.clone(),
                repeats,
                seed: 6000 + state_index,
                device: device.clone(),
                frame: frame.clone(),
                reference: ReferenceMode::TrueState,
            })
            .unwrap();
            for p in &curve {
                assert!(p.mean_infidelity > 0.0);
                pooled.push((p.n_ens as f64, p.mean_infidelity));
            }
        }
        let fit = fit_power_law(&pooled).unwrap();
        assert!(
            (-1.15..=-0.85).contains(&fit.exponent),
            "pooled exponent {} outside [-1.15, -0.85]",
            fit.exponent
        );

        // Synthetic power-law recovery.
        let synthetic: Vec<(f64, f64)> = [8.0f64, 16.0, 64.0, 256.0, 1024.0, 2400.0]
            .iter()
            .map(|&x| (x, 2.2 * x.powf(-1.04)))
            .collect();
        let fit = fit_power_law(&synthetic).unwrap();
        assert!((fit.coefficient - 2.2).abs() < 1e-8);
        assert!((fit.exponent + 1.04).abs() < 1e-8);
    });
}
