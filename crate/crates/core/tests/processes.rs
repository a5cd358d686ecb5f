mod common;

use common::*;
use num_traits::{One, Zero};
use polyproc::analysis::{analyze, Verdict};
use polyproc::arith::{Rat, RatMatrix};
use polyproc::cone::{Cone, PolarSign};
use polyproc::process::{Process, StabCertificate, Strategy, TrajectoryPrefix};
use polyproc::reach::feasible_set;
use polyproc::sysio::ConstrainedLinearSystem;
use proptest::prelude::*;
use rand::Rng;

fn pick(seed: u64) -> Process {
    let mut r = rng(seed);
    if seed % 2 == 0 {
        random_system(&mut r, 3).build_process().unwrap()
    } else {
        let n = r.gen_range(1..=3);
        generator_process(&mut r, n)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifts_compose_additively(seed in any::<u64>(), a in -6i64..=6, b in -6i64..=6, d in 1i64..=4) {
        let h = pick(seed);
        let (l, m) = (qq(a, d), qq(b, d));
        prop_assert_eq!(h.shift(&l).shift(&m), h.shift(&(&l + &m)));
        prop_assert_eq!(h.shift(&Rat::zero()), h.clone());
    }

    #[test]
    fn inverse_and_dual_are_involutions(seed in any::<u64>()) {
        let h = pick(seed);
        prop_assert_eq!(h.inverse().inverse(), h.clone());
        let twice = h.dual(PolarSign::Positive).dual(PolarSign::Positive);
        prop_assert_eq!(twice.graph(), &h.graph().negate());
        prop_assert_eq!(h.inverse().domain(), h.image());
        prop_assert_eq!(h.inverse().image(), h.domain());
    }

    #[test]
    fn images_and_preimages(seed in any::<u64>()) {
        let h = pick(seed);
        let n = h.n();
        prop_assert_eq!(h.image_of_cone(&Cone::full(n)).unwrap(), h.image());
        prop_assert_eq!(h.preimage_of_cone(&Cone::full(n)).unwrap(), h.domain());
        prop_assert_eq!(h.preimage_of_cone(&Cone::zero(n)).unwrap(), h.kernel());
        prop_assert_eq!(h.image_of_cone(&Cone::zero(n)).unwrap(), h.zero_image());
        let mut r = rng(seed ^ 17);
        for _ in 0..5 {
            let z = random_point(&mut r, h.graph());
            prop_assert!(h.contains_pair(&z[..n], &z[n..]));
            prop_assert!(h.domain().contains_vector(&z[..n]));
            prop_assert!(h.image().contains_vector(&z[n..]));
        }
    }

    #[test]
    fn powers_are_compositions(seed in any::<u64>()) {
        let h = pick(seed);
        let id = Process::identity(h.n());
        prop_assert_eq!(h.compose(&id).unwrap(), h.clone());
        prop_assert_eq!(id.compose(&h).unwrap(), h.clone());
        prop_assert_eq!(h.power(0), id);
        prop_assert_eq!(h.power(2), h.compose(&h).unwrap());
        prop_assert_eq!(h.power(3), h.compose(&h.power(2)).unwrap());
        prop_assert_eq!(h.power(2).domain(), h.preimage_of_cone(&h.domain()).unwrap());
    }

    #[test]
    fn simulated_trajectories_stay_in_graph(seed in any::<u64>()) {
        let h = pick(seed);
        let f = feasible_set(&h, 4 * h.n()).unwrap();
        prop_assume!(f.determined);
        let mut r = rng(seed ^ 99);
        let x0 = random_point(&mut r, &f.cone);
        for s in [Strategy::LeastNorm, Strategy::TowardZero, Strategy::RandomVertex] {
            let sim = h.simulate(&x0, 6, s, seed, Some(&f.cone)).unwrap();
            let t = sim.trajectory().expect("F(H) is invariant");
            prop_assert_eq!(t.steps(), 6);
            prop_assert!(t.validate(&h).is_ok());
            prop_assert!(t.states.iter().all(|x| f.cone.contains_vector(x)));
        }
    }
}

#[test]
fn linear_process_matches_its_matrix() {
    let mut r = rng(3);
    for _ in 0..20 {
        let n = r.gen_range(1..=3);
        let a = matrix(&mut r, n, n, -2, 2);
        let h = Process::from_matrix(&a).unwrap();
        assert!(h.is_strict());
        let x = vector(&mut r, n, -3, 3);
        let y = a.mul_vec(&x).unwrap();
        assert!(h.contains_pair(&x, &y));
        let mut y2 = y.clone();
        y2[0] += Rat::one();
        assert!(!h.contains_pair(&x, &y2));
        let ad = dense(&a);
        assert_eq!(h.power(3), Process::from_matrix(&RatMatrix::from_rows(&mul(&ad, &mul(&ad, &ad)), n).unwrap()).unwrap());
    }
}

/// Ackermann gain placing every closed-loop eigenvalue at 0 for a
/// controllable single-input pair: `K = −e_nᵀ C⁻¹ Aⁿ`.
fn deadbeat_gain(a: &Dense, b: &Dense) -> Vec<Rat> {
    let n = a.len();
    let c = kalman(a, b);
    let ct: Dense = (0..n).map(|i| (0..n).map(|j| c[j][i].clone()).collect()).collect();
    let mut e = vec![Rat::zero(); n];
    e[n - 1] = Rat::one();
    let z = solve_square(&ct, &e).unwrap();
    let mut an = ident(n);
    for _ in 0..n {
        an = mul(a, &an);
    }
    (0..n).map(|j| -(0..n).fold(Rat::zero(), |s, i| s + &z[i] * &an[i][j])).collect()
}

#[test]
fn deadbeat_feedback_gives_stabilizability_certificates() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 10 {
        let n = r.gen_range(1..=3);
        let a = matrix(&mut r, n, n, -2, 2);
        let b = matrix(&mut r, n, 1, -2, 2);
        let (ad, bd) = (dense(&a), dense(&b));
        if !kalman_controllable(&ad, &bd) {
            continue;
        }
        let k = deadbeat_gain(&ad, &bd);
        let closed: Dense = (0..n).map(|i| (0..n).map(|j| &ad[i][j] + &bd[i][0] * &k[j]).collect()).collect();
        let h = ConstrainedLinearSystem::unconstrained(a, b).unwrap().build_process().unwrap();
        let mut vertices = vec![];
        for i in 0..n {
            for s in [1, -1] {
                let mut v = vec![Rat::zero(); n];
                v[i] = q(s);
                vertices.push(v);
            }
        }
        let trajectories: Vec<TrajectoryPrefix> = vertices
            .iter()
            .map(|v| {
                let mut states = vec![v.clone()];
                for _ in 0..n {
                    let x = states.last().unwrap();
                    states.push((0..n).map(|i| (0..n).fold(Rat::zero(), |s, j| s + &closed[i][j] * &x[j])).collect());
                }
                assert!(states.last().unwrap().iter().all(|x| x.is_zero()), "closed loop is nilpotent");
                TrajectoryPrefix { states }
            })
            .collect();
        let cert = StabCertificate { vertices, q: n, rho: qq(1, 2), trajectories };
        assert!(h.check_stab_certificate(&cert).unwrap());
        let rep = analyze(&h, None).unwrap();
        assert_eq!(rep.verdicts.exp_stabilizable, Verdict::Yes);
        assert_eq!(rep.verdicts.null_controllable, Verdict::Yes);
        assert_eq!(rep.verdicts.controllable, Verdict::Yes);
        checked += 1;
    }
}

#[test]
fn strict_processes_agree_with_classical_null_controllability() {
    let mut r = rng(12);
    for _ in 0..40 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=2);
        let a = matrix(&mut r, n, n, -2, 2);
        let b = matrix(&mut r, n, m, -1, 1);
        let want = classical_null_controllable(&dense(&a), &dense(&b));
        let h = ConstrainedLinearSystem::unconstrained(a, b).unwrap().build_process().unwrap();
        assert!(h.is_strict());
        let got = analyze(&h, None).unwrap().verdicts.null_controllable;
        assert_eq!(got, if want { Verdict::Yes } else { Verdict::No });
    }
}
