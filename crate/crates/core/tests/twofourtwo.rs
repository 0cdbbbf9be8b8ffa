use std::collections::BTreeMap;

use haruspex_core::algebra::{rf, Var};
use haruspex_core::twofourtwo::blocks::{brute_blocks, census_poly};
use haruspex_core::twofourtwo::coefficients::{coefficients_c, coefficients_chat, transition};
use haruspex_core::twofourtwo::recurrence::{certify, pk, pk_check, psi_multiplicity, Recurrence, RecurrenceError};
use haruspex_core::twofourtwo::t_hat;

#[test]
fn partial_fractions_reassemble() {
    let c = coefficients_c().unwrap();
    assert_eq!(c.form.reassemble(), transition());
    let chat = coefficients_chat().unwrap();
    assert_eq!(chat.form.reassemble(), transition().at_one(Var::S).unwrap());
    assert_eq!(chat.c[7], rf("1/360"));
    // The last s = 1 coefficient is c_8 evaluated at s = 1.
    assert_eq!(chat.c[8], c.c[8].at_one(Var::S).unwrap());
}

#[test]
fn building_blocks_match_census_on_small_box() {
    let census = brute_blocks(4, 8);
    assert_eq!(t_hat().t.taylor_box(&[4, 4, 8, 0]).unwrap(), census_poly(&census));
}

#[test]
fn first_iterates() {
    let rec = Recurrence::new().unwrap();
    let states = rec.run(4).unwrap();
    assert_eq!(states[0].f_1, rf("x/(1-x)"));
    assert_eq!(states[1].f_1, rf("4*x^3*(x^4+5*x^3+7*x^2+5*x+1)/(1-x)^7"));
    let mult: Vec<u32> = states.iter().map(|s| psi_multiplicity(&s.f_1, s.n)).collect();
    assert_eq!(mult, [1, 0, 1, 1]);
    let cert = &states[2].certificate;
    assert_eq!(cert.one_minus_sx, BTreeMap::from([(1, 13), (2, 7), (3, 1)]));
    assert_eq!(cert.psi, BTreeMap::from([(1, 12), (2, 5)]));
    // The s = 1 shortcut agrees with the full step.
    assert_eq!(rec.step_at_one(&states[2]).unwrap(), states[3].f_1);
}

#[test]
fn certificate_rejects_other_denominators() {
    let r = certify(2, &rf("s*x/(1-2*x)"));
    assert!(matches!(r, Err(RecurrenceError::DenominatorClass { n: 2, .. })));
    let r = certify(2, &rf("s*x/(1-s*x^3)"));
    assert!(matches!(r, Err(RecurrenceError::DenominatorClass { n: 2, .. })));
}

#[test]
fn pk_roots() {
    assert_eq!(pk(1).to_string(), rf("x^4+x^2-x+1").to_string());
    for k in 1..=12 {
        let r = pk_check(k);
        assert_eq!(r.at_one, 2);
        assert_eq!(r.at_minus_one == 0, k % 2 == 0, "k={k}");
        assert_eq!(r.zero_order_at_minus_one, (k % 2 == 0) as u32, "k={k}");
    }
}
