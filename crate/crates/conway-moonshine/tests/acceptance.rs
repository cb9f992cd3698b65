//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use conway_moonshine::classdata::{self, registry};
use conway_moonshine::cliffordcm;
use conway_moonshine::cyclotomic::CycNumber;
use conway_moonshine::fockoracle::{self, ModeSystem, Sector};
use conway_moonshine::frameshape::{identity, FrameShape};
use conway_moonshine::lattice;
use conway_moonshine::modgroups;
use conway_moonshine::moonshine;
use conway_moonshine::numbers::{int, rat, Rational};
use num_traits::Zero;
use rayon::prelude::*;

const INVARIANCE_TOL: f64 = 1e-6;
const CONTROL_MIN: f64 = 1e-2;
const SEED: u64 = 20240601;

/// Written to the stderr handle directly so the lines survive output capture.
fn report(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(n: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let el = t.elapsed();
    let ok = o.pass && el <= budget;
    report(&format!(
        "criterion {n:>2} [{}] {name}: {} ({:.2?} of {:.0?})",
        if ok { "PASS" } else { "FAIL" },
        o.detail,
        el,
        budget
    ));
    ok
}

fn c1() -> Outcome {
    let t = moonshine::t_s(&identity(), &int(20)).unwrap().scale_tau(&int(2)).unwrap();
    let want = [(-1, 1), (0, 0), (1, 276), (2, -2048)];
    let got: Vec<(i64, Rational)> = want.iter().map(|&(e, _)| (e, t.coeff(&int(e)).unwrap())).collect();
    let pass = want.iter().zip(&got).all(|((_, w), (_, g))| int(*w) == *g);
    let shown: Vec<String> = got.iter().map(|(e, c)| format!("q^{e}: {c}")).collect();
    Outcome { pass, detail: format!("coefficients {}", shown.join(", ")) }
}

fn c2() -> Outcome {
    let fails: Vec<String> = registry()
        .par_iter()
        .filter_map(|r| {
            let (_, rep) = moonshine::solve_c_neg(&r.frame_shape, r.c_hat, 25).ok()?;
            (!rep.pass).then(|| r.co0.clone())
        })
        .collect();
    let errs = registry()
        .par_iter()
        .filter(|r| moonshine::solve_c_neg(&r.frame_shape, r.c_hat, 25).is_err())
        .count();
    Outcome {
        pass: fails.is_empty() && errs == 0,
        detail: format!("{} rows, failures {fails:?}, errors {errs}", registry().len()),
    }
}

fn c3() -> Outcome {
    let mut bad = Vec::new();
    for r in registry() {
        for s in [r.frame_shape.clone(), r.frame_shape.negate()] {
            if !moonshine::normalization_constant(&s, 3).unwrap().is_zero() {
                bad.push(s.to_string());
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{} shapes, nonzero constants {bad:?}", 2 * registry().len()) }
}

fn tw_is_constant(shape: &FrameShape, c: &Rational) -> (bool, bool) {
    let t = moonshine::t_s_tw(shape, c, &int(12)).unwrap();
    let constant = t.terms().all(|(e, _)| e.is_zero());
    let value_ok = t.coeff(&int(0)).unwrap() == int(-shape.chi());
    (constant, value_ok)
}

fn c4() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |label: String, shape: &FrameShape, c: &Rational| {
        checked += 1;
        let (constant, value_ok) = tw_is_constant(shape, c);
        let expect_const = shape.fixed_points() > 0;
        if constant != expect_const || (constant && !value_ok) {
            bad.push(label);
        }
    };
    for r in registry() {
        check(r.co0.clone(), &r.frame_shape, &int(r.c_hat));
        let (ns, nc) = classdata::derived_partner(r).unwrap();
        check(format!("-{}", r.co0), &ns, &nc);
    }
    let code = lattice::build_golay().unwrap();
    for w in [8, 12, 16] {
        let m = *code.codewords().iter().find(|c| c.count_ones() == w).unwrap();
        let (s, _) = lattice::sign_change_frameshape(&code, m).unwrap();
        let c = cliffordcm::supertrace_for_shape(&s, 1).unwrap().to_rational().unwrap();
        check(format!("sign change w={w}"), &s, &c);
    }
    Outcome { pass: bad.is_empty(), detail: format!("{checked} shapes, mismatches {bad:?}") }
}

fn c5() -> Outcome {
    let mut bad = Vec::new();
    for r in registry() {
        let pairs = cliffordcm::eigenpairs(&r.frame_shape).unwrap();
        let a = cliffordcm::spinor_supertrace_closed(&pairs, r.nu_sign).unwrap();
        let b = cliffordcm::spinor_supertrace_oracle(&pairs, r.nu_sign).unwrap();
        let ok = a == b && a.to_rational().map(|v| v == int(r.c_hat)).unwrap_or(false);
        if !ok {
            bad.push(r.co0.clone());
        }
    }
    let spot: Vec<(String, i64)> = ["2A", "3A", "4A", "6C"]
        .iter()
        .map(|n| {
            let r = classdata::lookup(n).unwrap();
            let v = cliffordcm::supertrace_for_shape(&r.frame_shape, r.nu_sign).unwrap();
            (n.to_string(), v.to_rational().unwrap().to_integer().try_into().unwrap())
        })
        .collect();
    let spot_ok = spot == vec![("2A".into(), 4096), ("3A".into(), 729), ("4A".into(), 64), ("6C".into(), -8)];
    Outcome { pass: bad.is_empty() && spot_ok, detail: format!("mismatches {bad:?}, spot {spot:?}") }
}

fn c6() -> Outcome {
    let ((a, b, c), rep) = moonshine::verify_hecke(40).unwrap();
    Outcome {
        pass: (a.clone(), b.clone(), c.clone()) == (int(2048), int(24), int(0)) && rep.pass,
        detail: format!("(a, b, c) = ({a}, {b}, {c}), max residual {}", rep.max_residual),
    }
}

fn c7() -> Outcome {
    let rep = moonshine::verify_delta_identity(50).unwrap();
    Outcome { pass: rep.pass, detail: format!("order {}, max residual {}", rep.checked_order, rep.max_residual) }
}

fn c8() -> Outcome {
    let mut bad = Vec::new();
    let classes: Vec<(String, FrameShape, CycNumber)> = std::iter::once(("identity".to_string(), identity(), CycNumber::zero()))
        .chain(["2A", "3A", "4A", "6C"].iter().map(|n| {
            let r = classdata::lookup(n).unwrap();
            (n.to_string(), r.frame_shape.clone(), CycNumber::from_int(r.c_hat))
        }))
        .collect();
    for (name, shape, c) in &classes {
        let eigs = shape.eigenvalue_list();
        let u = fockoracle::untwisted_supertrace(&ModeSystem::new(eigs.clone(), Sector::Untwisted, 6).unwrap()).unwrap();
        let formula = moonshine::t_tilde(shape, &rat(13, 2)).unwrap();
        if !u.strict_eq(&formula).unwrap_or(false) {
            bad.push(format!("{name} untwisted"));
        }
        let t = fockoracle::twisted_supertrace(&ModeSystem::new(eigs.clone(), Sector::Twisted, 6).unwrap(), c).unwrap();
        let cr = c.to_rational().unwrap();
        let formula = shape.eta_quotient(&int(1), &int(7)).unwrap().scaled(&cr);
        if !t.strict_eq(&formula).unwrap_or(false) {
            bad.push(format!("{name} twisted"));
        }
        for sector in [Sector::Untwisted, Sector::Twisted] {
            let ms = ModeSystem::new(eigs.clone(), sector, 3).unwrap();
            let e = fockoracle::enumerate_supertrace(&ms).unwrap();
            let p = match sector {
                Sector::Untwisted => fockoracle::untwisted_supertrace(&ms).unwrap(),
                Sector::Twisted => fockoracle::twisted_supertrace(&ms, &CycNumber::one()).unwrap(),
            };
            if !e.agrees_with(&p) {
                bad.push(format!("{name} enumeration {sector:?}"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{} classes, mismatches {bad:?}", classes.len()) }
}

fn c9() -> Outcome {
    let code = lattice::build_golay().unwrap();
    let wd = code.weight_distribution();
    let lat = lattice::build_leech(&code).unwrap();
    let rep = lat.check();
    let shells = lat.shell_counts(4);
    let n2 = shells.get(&2).copied().unwrap_or(0);
    let n4 = shells.get(&4).copied().unwrap_or(0);
    let weights: Vec<usize> = wd.values().copied().collect();
    let pass = weights == vec![1, 759, 2576, 759, 1] && rep.even && rep.determinant == "1" && n2 == 0 && n4 == 196560;
    Outcome {
        pass,
        detail: format!("weights {weights:?}, det {}, even {}, norm 2: {n2}, norm 4: {n4}", rep.determinant, rep.even),
    }
}

fn c10() -> Outcome {
    let code = lattice::build_golay().unwrap();
    let rep = cliffordcm::n1_checks(&code, SEED, 200).unwrap();
    Outcome {
        pass: rep.pass && rep.orthogonality_checked >= 200,
        detail: format!(
            "idempotent {}/{}, orthogonality {} subsets ({} failures), norm {}, alpha^2 {}, group order {}",
            rep.idempotent_on_vtw,
            rep.idempotent_random_pass,
            rep.orthogonality_checked,
            rep.orthogonality_failures.len(),
            rep.norm,
            rep.alpha_squared,
            rep.group_order
        ),
    }
}

fn c11() -> Outcome {
    let results: Vec<(String, Result<modgroups::InvarianceReport, String>)> = registry()
        .par_iter()
        .map(|r| {
            let shape = r.frame_shape.clone();
            let c = int(r.c_hat);
            let rep = modgroups::invariance_check(
                &r.co0,
                &r.frame_shape,
                &r.group_label(),
                |o| moonshine::t_s_tw(&shape, &c, o),
                12,
                20,
                INVARIANCE_TOL,
                SEED,
            )
            .map_err(|e| e.to_string());
            (r.co0.clone(), rep)
        })
        .collect();
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    let mut weakest_control = f64::INFINITY;
    for (name, r) in &results {
        match r {
            Ok(rep) => {
                worst = worst.max(rep.max_dev);
                let ctl = rep.control.as_ref().map(|c| c.max_dev).unwrap_or(f64::INFINITY);
                weakest_control = weakest_control.min(ctl);
                if !rep.pass || !(ctl > CONTROL_MIN) {
                    bad.push(format!("{name}: dev {:.2e}, control {:.2e}", rep.max_dev, ctl));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} classes, worst deviation {worst:.2e}, weakest control {weakest_control:.2e}, failures {bad:?}",
            results.len()
        ),
    }
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, "identity series", s(1), c1),
        run(2, "eta identity sweep", s(30), c2),
        run(3, "normalization", s(30), c3),
        run(4, "fixed-point dichotomy", s(60), c4),
        run(5, "spinor traces", s(5), c5),
        run(6, "Hecke fit", s(30), c6),
        run(7, "Delta identity", s(30), c7),
        run(8, "Fock oracle", s(60), c8),
        run(9, "Golay and Leech", s(120), c9),
        run(10, "N=1 checks", s(120), c10),
        run(11, "numeric invariance", s(600), c11),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    report(&format!("acceptance: {passed}/{} criteria passed", results.len()));
    assert!(results.iter().all(|&b| b));
}
