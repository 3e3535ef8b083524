use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sixfold_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sf_string_free(s) };
    out
}

fn last_error() -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sf_last_error(&mut s) }, SfStatus::Ok);
    take(s)
}

fn family(name: &str, param: Option<&str>) -> *mut SfPolygon {
    let name = CString::new(name).unwrap();
    let param = param.map(|p| CString::new(p).unwrap());
    let mut p = ptr::null_mut();
    let st = unsafe {
        sf_family_polygon(
            name.as_ptr(),
            param.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
            &mut p,
        )
    };
    assert_eq!(st, SfStatus::Ok);
    p
}

#[test]
fn polygon_json_round_trip() {
    let json = r#"{"vertices":[["1/2","-2"],["3/2","-2"],["5/3","1/7"],["-1/2","2"],["-3/2","2"],["-5/3","-1/7"]]}"#;
    let c = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { sf_polygon_from_json(c.as_ptr(), &mut p) },
        SfStatus::Ok
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sf_polygon_to_json(p, &mut s) }, SfStatus::Ok);
    let back = take(s);
    let c2 = CString::new(back.clone()).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { sf_polygon_from_json(c2.as_ptr(), &mut q) },
        SfStatus::Ok
    );
    let mut s2 = ptr::null_mut();
    assert_eq!(unsafe { sf_polygon_to_json(q, &mut s2) }, SfStatus::Ok);
    assert_eq!(take(s2), back);
    unsafe {
        sf_polygon_free(p);
        sf_polygon_free(q);
    }
}

#[test]
fn certifies_decagon_family() {
    let p = family("decagon-A", None);
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { sf_lattice_integer(&mut l) }, SfStatus::Ok);
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { sf_verify(p, l, 6, 200, 7, &mut cert) },
        SfStatus::Ok
    );
    let mut k = 0;
    assert_eq!(unsafe { sf_certificate_k(cert, &mut k) }, SfStatus::Ok);
    assert_eq!(k, 6);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { sf_certificate_to_json(cert, &mut s) },
        SfStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["k"], 6);
    assert_eq!(v["oracle"]["tested"], 200);
    let mut area = ptr::null_mut();
    assert_eq!(unsafe { sf_polygon_area(p, &mut area) }, SfStatus::Ok);
    assert_eq!(take(area), "6");
    unsafe {
        sf_certificate_free(cert);
        sf_lattice_free(l);
        sf_polygon_free(p);
    }
}

#[test]
fn printed_octagon_fails_with_message() {
    let p = family("octagon6-printed", Some("1/10"));
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { sf_lattice_integer(&mut l) }, SfStatus::Ok);
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { sf_verify(p, l, 6, 100, 0, &mut cert) },
        SfStatus::VerificationFailed
    );
    assert!(cert.is_null());
    assert!(last_error().contains("half-lattice"));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sf_find_lattices(p, 6, &mut s) }, SfStatus::Ok);
    assert_eq!(take(s), "[]");
    unsafe {
        sf_lattice_free(l);
        sf_polygon_free(p);
    }
}

#[test]
fn rejects_bad_input() {
    let mut p = ptr::null_mut();
    let bad = CString::new(r#"{"vertices":[["0.5","1"]]}"#).unwrap();
    assert_eq!(
        unsafe { sf_polygon_from_json(bad.as_ptr(), &mut p) },
        SfStatus::InvalidInput
    );
    assert!(last_error().contains("exact rational"));
    assert_eq!(
        unsafe { sf_polygon_from_json(ptr::null(), &mut p) },
        SfStatus::NullPointer
    );
    let mut k = 0;
    assert_eq!(
        unsafe { sf_certificate_k(ptr::null(), &mut k) },
        SfStatus::NullPointer
    );
    let name = CString::new("octagon6").unwrap();
    let param = CString::new("1/5").unwrap();
    assert_eq!(
        unsafe { sf_family_polygon(name.as_ptr(), param.as_ptr(), &mut p) },
        SfStatus::InvalidInput
    );
    let lat = CString::new(r#"{"basis":[["1","0"],["2","0"]]}"#).unwrap();
    let mut l = ptr::null_mut();
    assert_eq!(
        unsafe { sf_lattice_from_json(lat.as_ptr(), &mut l) },
        SfStatus::InvalidInput
    );
}

#[test]
fn classification_json() {
    let p = family("octagon6", Some("1/12"));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sf_classify(p, &mut s) }, SfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["family"], "octagon6");
    assert_eq!(v["k"], 6);
    unsafe { sf_polygon_free(p) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(sf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
