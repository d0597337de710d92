use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use qlogic_ffi::*;

fn catalog(spec: &str) -> *mut QlLattice {
    let spec = CString::new(spec).unwrap();
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { ql_lattice_from_catalog(spec.as_ptr(), &mut l) }, QlStatus::Ok);
    l
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ql_last_error_message()) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ql_string_free(s) };
    out
}

#[test]
fn mo2_queries() {
    let l = catalog("mo:2");
    unsafe {
        let mut n = 0;
        assert_eq!(ql_lattice_size(l, &mut n), QlStatus::Ok);
        assert_eq!(n, 6);
        let (a, b) = {
            let (mut a, mut b) = (0, 0);
            ql_lattice_index_of(l, c"a".as_ptr(), &mut a);
            ql_lattice_index_of(l, c"b".as_ptr(), &mut b);
            (a, b)
        };
        let mut j = 0;
        assert_eq!(ql_lattice_join(l, a, b, &mut j), QlStatus::Ok);
        let mut s = ptr::null_mut();
        ql_lattice_label(l, j, &mut s);
        assert_eq!(take(s), "1");
        let mut m = 0;
        ql_lattice_meet(l, a, b, &mut m);
        assert_eq!(m, 0);

        // φ_b(a) = b ∧ (a ∨ b') = b
        let mut p = 0;
        assert_eq!(ql_sasaki_projection(l, b, a, &mut p), QlStatus::Ok);
        assert_eq!(p, b);
        let mut h = 0;
        assert_eq!(ql_sasaki_hook(l, b, a, &mut h), QlStatus::Ok);
        let mut bp = 0;
        ql_lattice_index_of(l, c"b'".as_ptr(), &mut bp);
        assert_eq!(h, bp);

        assert_eq!(ql_lattice_check(l, QlCheck::Orthomodular), QlStatus::Ok);
        assert_eq!(ql_lattice_check(l, QlCheck::SasakiAdjunction), QlStatus::Ok);
        assert_eq!(ql_lattice_check(l, QlCheck::Frame), QlStatus::Violation);
        assert!(last_error().contains("a'"), "{}", last_error());
        assert_eq!(ql_verify_pm_diagrams(l, b, 12), QlStatus::Ok);
        ql_lattice_free(l);
    }
}

#[test]
fn hull_and_search() {
    let l = catalog("mo:2");
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(ql_hull_new(l, 12, &mut h), QlStatus::Ok);
        let mut n = 0;
        ql_hull_count(h, &mut n);
        assert_eq!(n, 16);
        let mut w = 0;
        assert_eq!(ql_nonfaithful_search(h, 10, &mut w), QlStatus::GuardExceeded);
        assert_eq!(ql_nonfaithful_search(h, 5_000_000, &mut w), QlStatus::Ok);
        assert!(w > 0);
        ql_hull_free(h);

        let mut h = ptr::null_mut();
        assert_eq!(ql_hull_new(l, 4, &mut h), QlStatus::GuardExceeded);
        assert!(h.is_null());
        assert!(last_error().contains("size guard"));
        ql_lattice_free(l);
    }
}

#[test]
fn json_round_trip_and_exports() {
    let l = catalog("o6");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ql_lattice_to_json(l, &mut s), QlStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(ql_lattice_from_json(json.as_ptr(), &mut back), QlStatus::Ok);
        let mut s2 = ptr::null_mut();
        ql_lattice_to_json(back, &mut s2);
        assert_eq!(take(s2), json.to_str().unwrap());

        assert_eq!(ql_lattice_check(back, QlCheck::Orthomodular), QlStatus::Violation);
        assert_eq!(ql_lattice_check(back, QlCheck::SasakiAdjunction), QlStatus::Violation);
        let mut y = 0;
        ql_lattice_index_of(back, c"y".as_ptr(), &mut y);
        assert_eq!(ql_verify_pm_diagrams(back, y, 12), QlStatus::InvalidInput);

        let mut d = ptr::null_mut();
        ql_lattice_to_dot(back, &mut d);
        assert_eq!(take(d).matches(" -> ").count(), 6);
        let mut r = ptr::null_mut();
        ql_lattice_report_json(back, &mut r);
        assert!(take(r).contains("\"checks\""));
        ql_lattice_free(back);
        ql_lattice_free(l);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(ql_lattice_from_json(ptr::null(), &mut l), QlStatus::NullArgument);
        let bad = c"{\"name\":\"d\",\"elements\":[\"0\",\"x\",\"x\"],\"covers\":[]}";
        assert_eq!(ql_lattice_from_json(bad.as_ptr(), &mut l), QlStatus::InvalidInput);
        assert!(last_error().contains("`x`"));
        assert_eq!(ql_lattice_from_catalog(c"boolean:9".as_ptr(), &mut l), QlStatus::InvalidInput);
        assert_eq!(ql_lattice_size(ptr::null(), ptr::null_mut()), QlStatus::NullArgument);

        let c = catalog("chain:3");
        let mut out = 0;
        assert_eq!(ql_lattice_meet(c, 0, 99, &mut out), QlStatus::InvalidInput);
        assert_eq!(ql_sasaki_projection(c, 0, 0, &mut out), QlStatus::InvalidInput);
        assert!(last_error().contains("orthocomplement"));
        let mut n = 0;
        assert_eq!(ql_lattice_size(c, &mut n), QlStatus::Ok);
        assert_eq!(last_error(), "");
        ql_lattice_free(c);
        ql_lattice_free(ptr::null_mut());
        ql_string_free(ptr::null_mut());
    }
}

const EXPORTED: &[&str] = &[
    "ql_lattice_from_json",
    "ql_lattice_from_catalog",
    "ql_lattice_free",
    "ql_lattice_size",
    "ql_lattice_index_of",
    "ql_lattice_label",
    "ql_lattice_meet",
    "ql_lattice_join",
    "ql_lattice_check",
    "ql_sasaki_projection",
    "ql_sasaki_hook",
    "ql_lattice_to_json",
    "ql_lattice_to_dot",
    "ql_lattice_report_json",
    "ql_hull_new",
    "ql_hull_free",
    "ql_hull_count",
    "ql_verify_pm_diagrams",
    "ql_nonfaithful_search",
    "ql_last_error_message",
    "ql_string_free",
];

fn header() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qlogic.h")).unwrap()
}

#[test]
fn header_declares_every_export() {
    let h = header();
    for f in EXPORTED {
        let declared = h.contains(&format!(" {f}(")) || h.contains(&format!("*{f}("));
        assert!(declared, "header lacks {f}");
    }
    assert!(h.contains("typedef struct QlLattice QlLattice;"));
    assert!(h.contains("QL_STATUS_GUARD_EXCEEDED = 4"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-std=c99"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qlogic.h"))
        .output()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
