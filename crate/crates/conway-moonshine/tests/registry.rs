//! Audits of the embedded class table against independent computations.

use conway_moonshine::classdata::{self, registry};
use conway_moonshine::cliffordcm;
use conway_moonshine::cyclotomic::CycNumber;
use conway_moonshine::fockoracle::{self, Assembly, LiftData};
use conway_moonshine::lattice;
use conway_moonshine::moonshine;
use conway_moonshine::numbers::int;
use num_traits::Signed;
use rayon::prelude::*;

#[test]
fn table_has_90_rows_with_distinct_names() {
    let rows = registry();
    assert_eq!(rows.len(), 90);
    let mut names: Vec<&str> = rows.iter().map(|r| r.co0.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 90);
}

#[test]
fn sign_corrections_are_exactly_the_mismatches() {
    for r in registry() {
        let plus = cliffordcm::supertrace_for_shape(&r.frame_shape, 1).unwrap().to_rational().unwrap();
        assert_eq!(plus.abs(), int(r.c_hat.abs()), "{}", r.co0);
        let mismatch = plus != int(r.c_hat);
        assert_eq!(mismatch, r.nu_sign == -1, "{}", r.co0);
    }
    let corrected = registry().iter().filter(|r| r.nu_sign == -1).count();
    assert_eq!(corrected, 13);
}

#[test]
fn parity_split_reproduces_closed_form() {
    for r in registry() {
        let pairs = cliffordcm::eigenpairs(&r.frame_shape).unwrap();
        let (even, odd) = cliffordcm::spinor_supertrace_by_parity(&pairs).unwrap();
        let via_parity = cliffordcm::nu(&pairs, r.nu_sign).mul(&even.sub(&odd));
        assert_eq!(via_parity, cliffordcm::spinor_supertrace_closed(&pairs, r.nu_sign).unwrap(), "{}", r.co0);
    }
}

#[test]
fn partner_magnitude_matches_spinor_closed_form() {
    registry().par_iter().for_each(|r| {
        let (ns, c) = classdata::derived_partner(r).unwrap();
        let spinor = cliffordcm::supertrace_for_shape(&ns, 1).unwrap().to_rational().unwrap();
        assert_eq!(c.abs(), spinor.abs(), "{}", r.co0);
    });
}

#[test]
fn negation_flips_integer_exponents() {
    registry().par_iter().for_each(|r| {
        assert!(moonshine::negation_relation_holds(&r.frame_shape, 10).unwrap(), "{}", r.co0);
    });
}

#[test]
fn four_term_assembly_gives_t_s() {
    registry().par_iter().for_each(|r| {
        let (ns, c_neg) = classdata::derived_partner(r).unwrap();
        let g = LiftData { eigenvalues: r.frame_shape.eigenvalue_list(), c_value: CycNumber::from_int(r.c_hat) };
        let neg = LiftData { eigenvalues: ns.eigenvalue_list(), c_value: CycNumber::from_rational(c_neg) };
        let assembled = fockoracle::assemble_supertrace(Assembly::Module, &g, &neg, 4).unwrap();
        let formula = moonshine::t_s(&r.frame_shape, &int(5)).unwrap();
        assert!(assembled.agrees_with(&formula), "{}", r.co0);
    });
}

#[test]
fn twisted_assembly_is_t_s_tw() {
    for name in ["2A", "3A", "4A", "6C", "6B", "8B"] {
        let r = classdata::lookup(name).unwrap();
        let (ns, c_neg) = classdata::derived_partner(r).unwrap();
        let g = LiftData { eigenvalues: r.frame_shape.eigenvalue_list(), c_value: CycNumber::from_int(r.c_hat) };
        let neg = LiftData { eigenvalues: ns.eigenvalue_list(), c_value: CycNumber::from_rational(c_neg) };
        let assembled = fockoracle::assemble_supertrace(Assembly::Twisted, &g, &neg, 4).unwrap();
        let formula = moonshine::t_s_tw(&r.frame_shape, &int(r.c_hat), &int(5)).unwrap();
        assert!(assembled.agrees_with(&formula), "{name}");
    }
}

#[test]
fn fixed_point_free_iff_nonconstant_twisted_series() {
    for r in registry() {
        let t = moonshine::t_s_tw(&r.frame_shape, &int(r.c_hat), &int(6)).unwrap();
        let constant = t.terms().all(|(e, _)| e == int(0));
        assert_eq!(constant, !r.frame_shape.is_fixed_point_free(), "{}", r.co0);
    }
}

#[test]
fn sign_change_shapes() {
    let code = lattice::build_golay().unwrap();
    let pick = |w: u32| *code.codewords().iter().find(|c| c.count_ones() == w).unwrap();
    let (octad, chi) = lattice::sign_change_frameshape(&code, pick(8)).unwrap();
    assert_eq!(octad.to_string(), "1^8.2^8");
    assert_eq!(chi, 8);
    let (dodecad, chi) = lattice::sign_change_frameshape(&code, pick(12)).unwrap();
    assert_eq!(dodecad.to_string(), "2^12");
    assert_eq!(chi, 0);
    // 2^12 = (1^-12 2^12) * 1^12: the +1 eigenspace has dimension 12
    assert_eq!(dodecad.fixed_points(), 12);
}

#[test]
fn hecke_half_shift_identity() {
    assert!(moonshine::verify_half_shift(20).unwrap().pass);
}
