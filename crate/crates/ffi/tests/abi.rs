use std::ffi::{c_char, CStr, CString};
use std::ptr;

use beliefrev_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = br_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

/// ¬p¬q, ¬pq, p¬q, pq = 1, 3, 2, 4
unsafe fn skewed() -> *mut BrDistribution {
    let (p, q) = (c("p"), c("q"));
    let atoms = [p.as_ptr(), q.as_ptr()];
    let weights = [1.0, 3.0, 2.0, 4.0];
    let mut d = ptr::null_mut();
    assert_eq!(
        br_distribution_new(atoms.as_ptr(), 2, weights.as_ptr(), 4, &mut d),
        BrStatus::Ok
    );
    d
}

#[test]
fn distribution_round_trip() {
    unsafe {
        let d = skewed();
        let mut n = 0;
        assert_eq!(br_distribution_world_count(d, &mut n), BrStatus::Ok);
        assert_eq!(n, 4);
        let mut w = [0.0; 4];
        assert_eq!(br_distribution_weights(d, w.as_mut_ptr(), 4), BrStatus::Ok);
        assert_eq!(w, [0.1, 0.3, 0.2, 0.4]);
        assert_eq!(br_distribution_weights(d, w.as_mut_ptr(), 3), BrStatus::BufferTooSmall);

        let mut x = 0.0;
        assert_eq!(br_distribution_prob(d, c("p").as_ptr(), &mut x), BrStatus::Ok);
        assert!((x - 0.6).abs() < 1e-12);
        assert_eq!(
            br_distribution_conditional(d, c("p").as_ptr(), c("q").as_ptr(), &mut x),
            BrStatus::Ok
        );
        assert!((x - 4.0 / 7.0).abs() < 1e-12);
        br_distribution_free(d);
    }
}

#[test]
fn soft_updates_agree() {
    unsafe {
        let d = skewed();
        let (mut j, mut v) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(br_jeffrey_update(d, c("q").as_ptr(), 0.5, &mut j), BrStatus::Ok);
        assert_eq!(br_virtual_update(d, c("q").as_ptr(), 0.5, &mut v), BrStatus::Ok);
        let (mut pj, mut pv) = (0.0, 0.0);
        br_distribution_prob(j, c("p").as_ptr(), &mut pj);
        br_distribution_prob(v, c("p").as_ptr(), &mut pv);
        assert!((pj - 0.619_047_619_047_619).abs() < 1e-9);
        assert!((pj - pv).abs() < 1e-12);
        let mut out = ptr::null_mut();
        assert_eq!(
            br_jeffrey_update(d, c("q").as_ptr(), 1.5, &mut out),
            BrStatus::InvalidArgument
        );
        assert!(out.is_null());
        for h in [d, j, v] {
            br_distribution_free(h);
        }
    }
}

#[test]
fn belief_states() {
    unsafe {
        let d = skewed();
        let mut st = ptr::null_mut();
        assert_eq!(br_belief_new(d, &mut st), BrStatus::Ok);
        br_distribution_free(d);
        let mut next = ptr::null_mut();
        assert_eq!(br_belief_conditionalize(st, c("q").as_ptr(), &mut next), BrStatus::Ok);
        let (mut t0, mut t1) = (9, 9);
        br_belief_time(st, &mut t0);
        br_belief_time(next, &mut t1);
        assert_eq!((t0, t1), (0, 1));
        let mut b = 0.0;
        assert_eq!(br_belief_bel(next, c("p").as_ptr(), &mut b), BrStatus::Ok);
        assert!((b - 4.0 / 7.0).abs() < 1e-12);

        let mut dead = ptr::null_mut();
        assert_eq!(
            br_belief_conditionalize(next, c("!q").as_ptr(), &mut dead),
            BrStatus::ZeroProbability
        );
        assert_eq!(
            br_belief_conditionalize(next, c("tweety").as_ptr(), &mut dead),
            BrStatus::MalformedSentence
        );
        assert!(last_error().contains("tweety"));
        assert_eq!(
            br_belief_conditionalize(next, c("p &").as_ptr(), &mut dead),
            BrStatus::Parse
        );
        assert!(dead.is_null());
        br_belief_free(st);
        br_belief_free(next);
    }
}

#[test]
fn errors_and_null_handling() {
    unsafe {
        let mut x = 0.0;
        assert_eq!(
            br_distribution_prob(ptr::null(), c("p").as_ptr(), &mut x),
            BrStatus::NullPointer
        );
        let d = skewed();
        assert!(br_last_error().is_null());
        assert_eq!(br_distribution_prob(d, ptr::null(), &mut x), BrStatus::NullPointer);
        assert_eq!(
            br_distribution_prob(d, c("p").as_ptr(), ptr::null_mut()),
            BrStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            br_distribution_prob(d, bad.as_ptr() as *const c_char, &mut x),
            BrStatus::InvalidUtf8
        );

        let p = c("p");
        let atoms = [p.as_ptr(), p.as_ptr()];
        let mut out = ptr::null_mut();
        assert_eq!(
            br_distribution_new(atoms.as_ptr(), 2, [1.0; 4].as_ptr(), 4, &mut out),
            BrStatus::Parse
        );
        assert_eq!(
            br_distribution_new(atoms.as_ptr(), 1, [1.0; 3].as_ptr(), 3, &mut out),
            BrStatus::InvalidArgument
        );
        assert!(out.is_null());

        br_distribution_free(d);
        br_distribution_free(ptr::null_mut());
        br_belief_free(ptr::null_mut());
        br_scenario_free(ptr::null_mut());
        br_string_free(ptr::null_mut());
    }
}

#[test]
fn scenario_trace() {
    let birds = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/scenarios/birds.scn")).unwrap();
    let golden =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/scenarios/birds.trace")).unwrap();
    unsafe {
        let mut sc = ptr::null_mut();
        assert_eq!(br_scenario_parse(c(&birds).as_ptr(), &mut sc), BrStatus::Ok);
        let mut trace = ptr::null_mut();
        assert_eq!(br_scenario_run(sc, 2, 1e-9, &mut trace), BrStatus::Ok);
        assert_eq!(CStr::from_ptr(trace).to_str().unwrap(), golden);
        br_string_free(trace);
        assert_eq!(br_scenario_run(sc, 0, 1e-9, &mut trace), BrStatus::InvalidArgument);
        br_scenario_free(sc);

        let halting = c("atoms p\nprior world p=t weight 1\njeffrey p 0.5\n");
        assert_eq!(br_scenario_parse(halting.as_ptr(), &mut sc), BrStatus::Ok);
        let mut trace = ptr::null_mut();
        assert_eq!(br_scenario_run(sc, 2, 1e-9, &mut trace), BrStatus::ScenarioHalted);
        assert!(CStr::from_ptr(trace).to_str().unwrap().contains("error (line 3)"));
        br_string_free(trace);
        br_scenario_free(sc);

        let mut none = ptr::null_mut();
        assert_eq!(br_scenario_parse(c("query p\n").as_ptr(), &mut none), BrStatus::Parse);
        assert!(last_error().contains("line 1"));
    }
}

#[test]
fn truth_values() {
    unsafe {
        let mut tv = BrTruth {
            frequency: 0.0,
            confidence: 0.0,
        };
        assert_eq!(br_truth_from_counts(9, 10, 2, &mut tv), BrStatus::Ok);
        assert!((tv.frequency - 0.9).abs() < 1e-12 && (tv.confidence - 10.0 / 12.0).abs() < 1e-12);
        assert_eq!(br_truth_from_counts(1, 0, 2, &mut tv), BrStatus::InvalidArgument);

        let mut w = 0.0;
        assert_eq!(br_weight(0.5, &mut w), BrStatus::Ok);
        assert_eq!(w, 1.0);
        assert_eq!(br_weight(1.0, &mut w), BrStatus::InvalidArgument);

        let premise = |f| BrTruth {
            frequency: f,
            confidence: 0.9,
        };
        let mut j3 = tv;
        assert_eq!(br_induction(premise(0.9), premise(1.0), 2, &mut j3), BrStatus::Ok);
        assert!((j3.frequency - 0.9).abs() < 1e-12 && (j3.confidence - 0.81 / 2.81).abs() < 1e-12);

        let mut j7 = tv;
        assert_eq!(br_revise(j3, j3, &mut j7), BrStatus::Ok);
        assert!((j7.confidence - 0.447_514).abs() < 1e-6);
        let zero = BrTruth {
            frequency: 0.5,
            confidence: 0.0,
        };
        assert_eq!(br_revise(zero, zero, &mut j7), BrStatus::RuleInapplicable);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/beliefrev.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
