//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always shown.

mod common;

use std::time::{Duration, Instant};

use common::*;
use polyproc::analysis::{analyze, Verdict};
use polyproc::arith::Rat;
use polyproc::cone::{PolarSign, Subspace};
use polyproc::decomp::decompose;
use polyproc::process::{Process, Strategy};
use polyproc::reach::{default_budget, domain_condition, feasible_set, linear_reachable_pair, null_controllable_set, reachable_set};
use polyproc::spectral::{describe_spectrum, EigenWitness, Lambda, SpectrumInterval, SpectrumOracle};
use polyproc::sysio::{example_system, parse_system_str, ConstrainedLinearSystem};
use rand::Rng;

type Outcome = Result<String, String>;

fn example(a: &Rat, b: &Rat) -> Process {
    example_system(a, b).build_process().unwrap()
}

fn r_plus_expected() -> Subspace {
    Subspace::new(3, &[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(-1)]]).unwrap()
}

fn show(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ab_samples() -> Vec<(Rat, Rat)> {
    vec![
        (q(2), q(1)),
        (qq(3, 2), q(1)),
        (q(1), q(1)),
        (qq(1, 2), q(1)),
        (q(0), q(1)),
        (qq(-1, 2), q(1)),
        (q(-1), q(1)),
        (q(3), q(2)),
        (q(-2), q(3)),
        (q(5), q(4)),
    ]
}

fn c1_dichotomy() -> Outcome {
    let start = Instant::now();
    let text = include_str!("../example_paper.json");
    let mut wrong = vec![];
    for a in [q(-1), qq(-1, 2), q(0), qq(1, 2), q(1), qq(3, 2), q(2)] {
        let h = parse_system_str(text, &[("a".into(), a.clone()), ("b".into(), q(1))])
            .unwrap()
            .system
            .build_process()
            .unwrap();
        let rep = analyze(&h, None).map_err(|e| e.to_string())?;
        let want_reach = a > q(1);
        let want_stab = a >= q(0);
        let got_reach = rep.verdicts.reachable;
        let got_stab = rep.verdicts.stabilizable;
        if got_reach != if want_reach { Verdict::Yes } else { Verdict::No } {
            wrong.push(format!("a={}: reachable={got_reach}, expected {}", show(&a), if want_reach { "yes" } else { "no" }));
        }
        if got_stab != if want_stab { Verdict::Yes } else { Verdict::No } {
            wrong.push(format!(
                "a={}: stabilizable={got_stab}, expected {}",
                show(&a),
                if want_stab { "yes" } else { "no" }
            ));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(30) {
        wrong.push(format!("took {t:?}"));
    }
    if wrong.is_empty() {
        Ok(format!("7 values of a in {t:.1?}"))
    } else {
        Err(wrong.join("; "))
    }
}

fn c2_geometry() -> Outcome {
    for (a, b) in ab_samples() {
        let h = example(&a, &b);
        let dc = domain_condition(&h).map_err(|e| e.to_string())?;
        let tag = format!("a={}, b={}", show(&a), show(&b));
        if !dc.holds {
            return Err(format!("{tag}: domain condition fails"));
        }
        if dc.r_plus != r_plus_expected() {
            return Err(format!("{tag}: R+ = {:?}", dc.r_plus.basis()));
        }
        let rp = r_plus_expected().to_cone();
        if dc.dom_plus_r_minus != rp || dc.dom_plus_r_plus != rp {
            return Err(format!("{tag}: dom(H)+R- or dom(H)+R+ differs from R+"));
        }
        let d = decompose(&h).map_err(|e| e.to_string())?;
        if !d.f_hout.is_zero() {
            return Err(format!("{tag}: F(H_out) has dimension {}", d.f_hout.dimension()));
        }
    }
    Ok(format!("{} (a, b) samples", ab_samples().len()))
}

fn c3_spectrum() -> Outcome {
    for (a, b) in ab_samples() {
        let h = example(&a, &b);
        let d = decompose(&h).map_err(|e| e.to_string())?;
        let pieces = describe_spectrum(&d.h_in.dual(PolarSign::Negative), &d.r_plus.orth_complement())
            .map_err(|e| e.to_string())?;
        let want = Lambda::Rational(q(1) - &a / &b);
        let ok = pieces.len() == 1 && pieces[0].is_point() && pieces[0].lo.as_ref() == Some(&want);
        if !ok {
            return Err(format!("a={}, b={}: got {pieces:?}", show(&a), show(&b)));
        }
    }
    Ok(format!("{} (a, b) samples", ab_samples().len()))
}

fn c4_linear_oracles() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let mut counts = [0usize; 3];
    for i in 0..100 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=2);
        let a = matrix(&mut r, n, n, -2, 2);
        let b = matrix(&mut r, n, m, -2, 2);
        let h = ConstrainedLinearSystem::unconstrained(a.clone(), b.clone())
            .unwrap()
            .build_process()
            .unwrap();
        let rep = analyze(&h, None).map_err(|e| format!("system {i}: {e}"))?;
        let (ad, bd) = (dense(&a), dense(&b));
        let checks = [
            ("reachable", rep.verdicts.reachable, kalman_controllable(&ad, &bd)),
            ("stabilizable", rep.verdicts.stabilizable, classical_stabilizable(&ad, &bd)),
            ("null-controllable", rep.verdicts.null_controllable, classical_null_controllable(&ad, &bd)),
        ];
        for (k, (name, got, want)) in checks.into_iter().enumerate() {
            let want = if want { Verdict::Yes } else { Verdict::No };
            if got != want {
                return Err(format!("system {i} (A={:?}, B={:?}): {name}={got}, oracle {want}", ad, bd));
            }
            if want == Verdict::Yes {
                counts[k] += 1;
            }
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("took {t:?}"));
    }
    Ok(format!(
        "100 systems, {} reachable, {} stabilizable, {} null-controllable, {t:.1?}",
        counts[0], counts[1], counts[2]
    ))
}

fn lambdas(r: &mut rand_chacha::ChaCha8Rng) -> Vec<Rat> {
    (0..5).map(|_| qq(r.gen_range(-9..=9), r.gen_range(1..=3))).collect()
}

fn c5_duality() -> Outcome {
    let mut r = rng(5);
    for (i, h) in corpus(50, 50, 3).iter().enumerate() {
        let neg = h.dual(PolarSign::Negative);
        let pos = h.dual(PolarSign::Positive);
        if neg.dual(PolarSign::Negative).graph() != &h.graph().negate() {
            return Err(format!("process {i}: graph((H-)-) != -graph(H)"));
        }
        if h.inverse().dual(PolarSign::Negative) != pos.inverse() {
            return Err(format!("process {i}: (H^-1)- != (H+)^-1"));
        }
        if h.domain().polar(PolarSign::Negative) != pos.zero_image() {
            return Err(format!("process {i}: (dom H)- != H+(0)"));
        }
        for l in lambdas(&mut r) {
            let lhs = h.shift(&l).image().polar(PolarSign::Negative);
            let rhs = neg.shift(&l).kernel();
            if lhs != rhs {
                return Err(format!("process {i}: (im(H-lI))- != ker(H- - lI) at l={}", show(&l)));
            }
        }
    }
    Ok("50 processes, 5 shifts each".into())
}

fn c6_invariance() -> Outcome {
    let (mut nr, mut nf, mut ns) = (0, 0, 0);
    for (i, h) in corpus(50, 50, 3).iter().enumerate() {
        let b = default_budget(h.n());
        let rr = reachable_set(h, b).map_err(|e| e.to_string())?;
        if rr.determined {
            nr += 1;
            if h.image_of_cone(&rr.cone).unwrap() != rr.cone {
                return Err(format!("process {i}: H(R) != R"));
            }
            if h.domain().difference_is_subspace(&rr.cone).map_err(|e| e.to_string())? {
                ns += 1;
                let (_, rp) = linear_reachable_pair(h).unwrap();
                if rr.cone.sum(&rr.cone.negate()).unwrap() != rp.to_cone() {
                    return Err(format!("process {i}: R-R != R+"));
                }
            }
        }
        let ff = feasible_set(h, b).map_err(|e| e.to_string())?;
        if ff.determined {
            nf += 1;
            if h.preimage_of_cone(&ff.cone).unwrap() != ff.cone {
                return Err(format!("process {i}: H^-1(F) != F"));
            }
        }
    }
    Ok(format!("R determined {nr}/50, F determined {nf}/50, dom-R subspace {ns}"))
}

fn c7_dc_routes() -> Outcome {
    let mut holds = 0;
    for (i, h) in corpus(70, 100, 3).iter().enumerate() {
        let (rm, rp) = linear_reachable_pair(h).unwrap();
        let dom = h.domain();
        let dm = dom.sum(&rm.to_cone()).unwrap();
        let dp = dom.sum(&rp.to_cone()).unwrap();
        let direct = dm.is_subspace() && dm == dp;
        let route = dom.rint_intersects(&rm.to_cone()).unwrap() && dm.contains(&rp.to_cone());
        if direct != route {
            return Err(format!("instance {i}: direct {direct}, reformulated {route}"));
        }
        let dc = domain_condition(h).map_err(|e| format!("instance {i}: {e}"))?;
        if dc.holds != direct {
            return Err(format!("instance {i}: domain_condition disagrees"));
        }
        holds += direct as usize;
    }
    Ok(format!("100 instances, condition holds on {holds}"))
}

fn c8_reach_implies_null() -> Outcome {
    let mut checked = 0;
    let mut procs = corpus(80, 60, 3);
    let mut r = rng(8);
    for _ in 0..40 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=2);
        let s = ConstrainedLinearSystem::unconstrained(matrix(&mut r, n, n, -2, 2), matrix(&mut r, n, m, -2, 2)).unwrap();
        procs.push(s.build_process().unwrap());
    }
    for (a, b) in ab_samples() {
        procs.push(example(&a, &b));
    }
    for (i, h) in procs.iter().enumerate() {
        let rep = analyze(h, None).map_err(|e| format!("instance {i}: {e}"))?;
        if rep.verdicts.reachable != Verdict::Yes {
            continue;
        }
        checked += 1;
        let b = default_budget(h.n());
        let f = feasible_set(h, b).unwrap();
        let nn = null_controllable_set(h, b).unwrap();
        if !f.determined || !nn.determined {
            return Err(format!("instance {i}: sets not determined within budget {b}"));
        }
        if !nn.cone.contains(&f.cone) {
            return Err(format!("instance {i}: F(H) not contained in N(H)"));
        }
    }
    Ok(format!("{checked} reachable instances out of {}", procs.len()))
}

fn c9_decomposition() -> Outcome {
    let mut r = rng(9);
    let (mut inst, mut trajs) = (0, 0);
    let strategies = [Strategy::LeastNorm, Strategy::TowardZero, Strategy::RandomVertex];
    let mut procs = corpus(90, 40, 3);
    for (a, b) in ab_samples().into_iter().take(4) {
        procs.push(example(&a, &b));
    }
    for (i, h) in procs.iter().enumerate() {
        let dc = domain_condition(h).unwrap();
        if !dc.holds {
            continue;
        }
        inst += 1;
        let d = decompose(h).map_err(|e| format!("instance {i}: {e}"))?;
        let vc = d.v.to_cone();
        let rpc = d.r_plus.to_cone();
        for k in 1..=h.n() {
            let lhs = d.h_out.power(k).domain();
            let rhs = h.power(k).domain().sum(&rpc).unwrap().intersect(&vc).unwrap();
            if lhs != rhs {
                return Err(format!("instance {i}: dom(H_out^{k}) mismatch"));
            }
        }
        let fin = feasible_set(&d.h_in, default_budget(h.n())).unwrap();
        if !fin.determined {
            return Err(format!("instance {i}: F(H_in) not determined"));
        }
        if fin.cone.sum(&d.r_minus.to_cone()).unwrap() != rpc {
            return Err(format!("instance {i}: F(H_in)+R- != R+"));
        }
        let f = feasible_set(h, default_budget(h.n())).unwrap();
        if !f.determined {
            return Err(format!("instance {i}: F(H) not determined"));
        }
        for t in 0..20 {
            let x0 = random_point(&mut r, &f.cone);
            let sim = h
                .simulate(&x0, h.n() + 3, strategies[t % 3], t as u64, Some(&f.cone))
                .map_err(|e| e.to_string())?;
            let traj = sim.trajectory().ok_or(format!("instance {i}: trajectory from F(H) died"))?;
            let split = d.split_trajectory(h, traj).map_err(|e| format!("instance {i}: {e}"))?;
            for (k, x) in traj.states.iter().enumerate() {
                let sum: Vec<Rat> = split.xi[k].iter().zip(&split.eta[k]).map(|(a, b)| a + b).collect();
                if &sum != x || !d.r_plus.contains_vector(&split.eta[k]) || !d.v.contains_vector(&split.xi[k]) {
                    return Err(format!("instance {i}: bad split at step {k}"));
                }
                if k > 0 && d.h_out_matrix.cols() > 0 {
                    let next = d.h_out_matrix.mul_vec(&split.xi_coords[k - 1]).unwrap();
                    if next != split.xi_coords[k] {
                        return Err(format!("instance {i}: xi_{k} != M xi_{}", k - 1));
                    }
                }
            }
            trajs += 1;
        }
    }
    if inst == 0 {
        return Err("no instance satisfies the domain condition".into());
    }
    Ok(format!("{inst} instances, {trajs} trajectories"))
}

fn c10_dense_pass() -> Outcome {
    let mut r = rng(10);
    let mut decisions = 0;
    let mut nonempty = 0;
    let mut procs = corpus(100, 40, 3);
    for (a, b) in ab_samples() {
        procs.push(example(&a, &b));
    }
    for (i, h) in procs.iter().enumerate() {
        let mut targets = vec![
            (h.clone(), Subspace::zero(h.n())),
            (h.dual(PolarSign::Negative), Subspace::zero(h.n())),
        ];
        if let Ok(d) = decompose(h) {
            targets.push((d.h_in.dual(PolarSign::Negative), d.r_plus.orth_complement()));
        }
        for (p, w) in targets {
            let mut oracle = SpectrumOracle::new(&p, &w).map_err(|e| e.to_string())?;
            let lo = qq(r.gen_range(-6..=6), r.gen_range(1..=3));
            let hi = &lo + qq(r.gen_range(0..=6), r.gen_range(1..=2));
            let ivs = [
                SpectrumInterval::nonnegative(),
                SpectrumInterval::at_least_one(),
                SpectrumInterval::positive(),
                SpectrumInterval::real_line(),
                SpectrumInterval::closed(lo, hi),
            ];
            for iv in ivs {
                let dec = oracle.decide_interval(&iv);
                decisions += 1;
                if !dec.dense_agrees {
                    return Err(format!("instance {i}: dense pass disagrees on {iv}"));
                }
                if let Some(w0) = dec.answer.witness() {
                    nonempty += 1;
                    if !w0.verify(&p, &w) {
                        return Err(format!("instance {i}: witness fails verification"));
                    }
                    if let EigenWitness::Rational { lambda, .. } = w0 {
                        if !iv.contains(lambda) {
                            return Err(format!("instance {i}: witness outside {iv}"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{decisions} interval decisions, {nonempty} nonempty"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("example reachability/stabilizability dichotomy", c1_dichotomy),
        ("example geometry R+ and F(H_out)", c2_geometry),
        ("example dual inner spectrum {1 - a/b}", c3_spectrum),
        ("linear-system oracle equivalence", c4_linear_oracles),
        ("duality involutions", c5_duality),
        ("invariance fixed points", c6_invariance),
        ("domain condition two-route agreement", c7_dc_routes),
        ("reachable implies F(H) in N(H)", c8_reach_implies_null),
        ("decomposition identities", c9_decomposition),
        ("spectral double-density pass", c10_dense_pass),
    ];
    if std::env::args().any(|a| a == "--list") {
        for (i, (name, _)) in criteria.iter().enumerate() {
            println!("criterion {:>2} ({name}): test", i + 1);
        }
        return;
    }
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| id.contains(p.as_str()) || name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match out {
            Ok(d) => println!("{id} PASS  {name}: {d} [{t:.1?}]"),
            Err(d) => {
                failed += 1;
                println!("{id} FAIL  {name}: {d} [{t:.1?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
