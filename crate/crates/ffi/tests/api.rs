use std::ffi::{c_char, CString};
use std::ptr;

use hopfion_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0u8; 256];
    let n = unsafe { hopfion_last_error(buf.as_mut_ptr().cast::<c_char>(), buf.len()) };
    buf.truncate(n.min(255));
    String::from_utf8(buf).unwrap()
}

fn solution(name: &str, p: u32, q: u32, sign: i32) -> (HopfionStatus, *mut HopfionSolution) {
    let name = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { hopfion_solution_new(name.as_ptr(), 1.0, 1.0, p, q, sign, &mut h) };
    (st, h)
}

#[test]
fn maxwell_hopfion_at_origin() {
    let (st, h) = solution("maxwell-hopfion-1", 1, 1, 1);
    assert_eq!(st, HopfionStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { hopfion_solution_components(h, &mut n) }, HopfionStatus::Ok);
    assert_eq!(n, 3);
    let mut out = [0.0f64; 6];
    let st = unsafe { hopfion_solution_evaluate(h, 0.0, 0.0, 0.0, 0.0, out.as_mut_ptr(), out.len()) };
    assert_eq!(st, HopfionStatus::Ok);
    let want = [-1.0, 0.0, 0.0, -1.0, 0.0, 0.0];
    for (a, b) in out.iter().zip(want) {
        assert!((a - b).abs() < 1e-15, "{out:?}");
    }
    let mut j = [0.0f64; 4];
    assert_eq!(unsafe { hopfion_solution_current(h, 0.0, 0.3, 0.1, -0.2, j.as_mut_ptr(), 4) }, HopfionStatus::Ok);
    let s = (j[1] * j[1] + j[2] * j[2] + j[3] * j[3]).sqrt();
    assert!((s - j[0]).abs() < 1e-12 * j[0]);
    unsafe { hopfion_solution_free(h) };
}

#[test]
fn short_buffer_is_reported() {
    let (_, h) = solution("psi4", 1, 1, -1);
    let mut out = [0.0f64; 7];
    let st = unsafe { hopfion_solution_evaluate(h, 0.1, 0.2, 0.3, 0.4, out.as_mut_ptr(), out.len()) };
    assert_eq!(st, HopfionStatus::BufferTooSmall);
    assert!(last_error().contains("8 needed"));
    unsafe { hopfion_solution_free(h) };
}

#[test]
fn bad_arguments() {
    assert_eq!(solution("nope", 1, 1, 1).0, HopfionStatus::UnknownName);
    assert!(last_error().contains("maxwell-hopfion-1"));
    assert_eq!(solution("knot-pq", 2, 4, 1).0, HopfionStatus::InvalidArgument);
    assert_eq!(solution("psi2", 1, 1, 0).0, HopfionStatus::InvalidArgument);
    assert_eq!(solution("dirac-base", 2, 0, 1).0, HopfionStatus::InvalidArgument);
    let (st, h) = solution("dirac-base", 1, 1, 1);
    assert_eq!(st, HopfionStatus::Ok);
    unsafe { hopfion_solution_free(h) };
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { hopfion_solution_new(ptr::null(), 1.0, 1.0, 1, 1, 1, &mut h) }, HopfionStatus::NullPointer);
    assert!(h.is_null());
    let mut n = 0usize;
    assert_eq!(unsafe { hopfion_solution_components(ptr::null(), &mut n) }, HopfionStatus::NullPointer);
    unsafe { hopfion_solution_free(ptr::null_mut()) };
}

#[test]
fn hopf_roundtrip_and_degenerate_fiber() {
    let k = [0.3, -0.4, 0.5];
    let mut xi = [0.0; 4];
    assert_eq!(unsafe { hopfion_hopf_inverse(k.as_ptr(), 0.7, xi.as_mut_ptr()) }, HopfionStatus::Ok);
    let mut back = [0.0; 3];
    assert_eq!(unsafe { hopfion_hopf_forward(xi.as_ptr(), back.as_mut_ptr()) }, HopfionStatus::Ok);
    for i in 0..3 {
        assert!((back[i] - k[i]).abs() < 1e-14);
    }
    let south = [0.0, 0.0, -1.0];
    assert_eq!(unsafe { hopfion_hopf_inverse(south.as_ptr(), 0.0, xi.as_mut_ptr()) }, HopfionStatus::Domain);
}

#[test]
fn macdonald_value() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { hopfion_macdonald_k(2, 1.0, 0.0, &mut re, &mut im) }, HopfionStatus::Ok);
    assert!((re - 1.624_838_898_635_177_4).abs() < 1e-14 && im.abs() < 1e-15);
    assert_eq!(unsafe { hopfion_macdonald_k(0, -1.0, 0.0, &mut re, &mut im) }, HopfionStatus::Domain);
}

#[test]
fn verify_report_roundtrip() {
    let names = CString::new("hopf").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { hopfion_verify(names.as_ptr(), 1, 10, 1e-6, &mut r) }, HopfionStatus::Ok);
    let (mut total, mut failed) = (0usize, 0usize);
    assert_eq!(unsafe { hopfion_report_counts(r, &mut total, &mut failed) }, HopfionStatus::Ok);
    assert!(total >= 5);
    assert_eq!(failed, 0);
    let mut need = 0usize;
    assert_eq!(unsafe { hopfion_report_json(r, ptr::null_mut(), 0, &mut need) }, HopfionStatus::Ok);
    let mut small = vec![0 as c_char; need - 1];
    assert_eq!(unsafe { hopfion_report_json(r, small.as_mut_ptr(), small.len(), &mut need) }, HopfionStatus::BufferTooSmall);
    let mut buf = vec![0u8; need];
    assert_eq!(unsafe { hopfion_report_json(r, buf.as_mut_ptr().cast(), buf.len(), &mut need) }, HopfionStatus::Ok);
    let text = std::str::from_utf8(&buf[..need - 1]).unwrap();
    assert!(text.starts_with('{') && text.contains("\"hopf-roundtrip\""));
    unsafe { hopfion_report_free(r) };

    let empty = CString::new("").unwrap();
    assert_eq!(unsafe { hopfion_verify(empty.as_ptr(), 1, 10, 1e-6, &mut r) }, HopfionStatus::InvalidArgument);
    assert!(r.is_null());
}
