use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bohr_ffi::*;

fn phi(name: &str, params: &[(&str, f64)]) -> (BohrStatus, *mut BohrPhi) {
    let name = CString::new(name).unwrap();
    let keys: Vec<CString> = params
        .iter()
        .map(|(k, _)| CString::new(*k).unwrap())
        .collect();
    let key_ptrs: Vec<*const c_char> = keys.iter().map(|k| k.as_ptr()).collect();
    let values: Vec<f64> = params.iter().map(|p| p.1).collect();
    let mut out = ptr::null_mut();
    let status = unsafe {
        bohr_phi_new(
            name.as_ptr(),
            key_ptrs.as_ptr(),
            values.as_ptr(),
            params.len(),
            &mut out,
        )
    };
    (status, out)
}

fn last_error() -> String {
    let p = bohr_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn cardioid_round_trip() {
    let (status, h) = phi("cardioid", &[]);
    assert_eq!(status, BohrStatus::Ok);
    let mut coeffs = [0.0; 5];
    unsafe {
        assert_eq!(
            bohr_phi_coefficients(h, 4, coeffs.as_mut_ptr(), 5),
            BohrStatus::Ok
        );
        assert_eq!(coeffs, [1.0, 4.0 / 3.0, 2.0 / 3.0, 0.0, 0.0]);
        assert_eq!(
            bohr_phi_coefficients(h, 4, coeffs.as_mut_ptr(), 4),
            BohrStatus::InvalidArgument
        );

        let mut positive = false;
        assert_eq!(bohr_phi_is_positive(h, 64, &mut positive), BohrStatus::Ok);
        assert!(positive);

        let mut ext = ptr::null_mut();
        assert_eq!(bohr_extremal_new(h, 64, &mut ext), BohrStatus::Ok);
        let mut v = 0.0;
        assert_eq!(bohr_extremal_eval_h(ext, 1.0 / 3.0, &mut v), BohrStatus::Ok);
        assert!((v - 0.539490120279).abs() < 1e-11);
        assert_eq!(bohr_extremal_h_minus1(ext, &mut v), BohrStatus::Ok);
        assert!((v + (-1f64).exp()).abs() < 1e-12);
        assert_eq!(bohr_extremal_k_minus1(ext, &mut v), BohrStatus::Ok);
        assert!((v + 0.598691229855).abs() < 1e-10);
        assert_eq!(
            bohr_extremal_eval_k(ext, 2.0, &mut v),
            BohrStatus::ParamOutOfRange
        );
        bohr_extremal_free(ext);

        let mut r = BohrRadius {
            radius: 0.0,
            root: 0.0,
            capped: false,
            residual: 0.0,
        };
        assert_eq!(bohr_starlike_radius(h, 1e-12, &mut r), BohrStatus::Ok);
        assert!((r.radius - 0.255888962214).abs() < 1e-10);
        assert!(!r.capped);
        assert_eq!(bohr_convex_radius(h, 1e-12, &mut r), BohrStatus::Ok);
        assert!(r.capped);
        assert_eq!(r.radius, 1.0 / 3.0);
        bohr_phi_free(h);
    }
}

#[test]
fn status_codes() {
    let (status, h) = phi("nope", &[]);
    assert_eq!(status, BohrStatus::ParamOutOfRange);
    assert!(h.is_null());
    assert!(last_error().contains("nope"));

    let (status, h) = phi("janowski", &[("A", 1.0), ("B", 0.5)]);
    assert_eq!(status, BohrStatus::Ok);
    let mut r = BohrRadius {
        radius: 0.0,
        root: 0.0,
        capped: false,
        residual: 0.0,
    };
    unsafe {
        assert_eq!(
            bohr_starlike_radius(h, 1e-12, &mut r),
            BohrStatus::PositivityRequired
        );
        assert_eq!(
            bohr_starlike_radius(h, 1e-12, ptr::null_mut()),
            BohrStatus::InvalidArgument
        );
        bohr_phi_free(h);
        let mut out = ptr::null_mut();
        assert_eq!(
            bohr_phi_new(ptr::null(), ptr::null(), ptr::null(), 0, &mut out),
            BohrStatus::InvalidArgument
        );
        assert_eq!(
            bohr_extremal_eval_h(ptr::null(), 0.1, &mut 0.0),
            BohrStatus::InvalidArgument
        );
        bohr_phi_free(ptr::null_mut());
        bohr_extremal_free(ptr::null_mut());
    }
}

#[test]
fn radii_and_threshold() {
    let mut r = 0.0;
    unsafe {
        assert_eq!(bohr_galpha_radius(0.5, &mut r), BohrStatus::Ok);
        assert_eq!(r, 1.0 / 3.0);
        assert_eq!(bohr_galpha_radius(1.0, &mut r), BohrStatus::ParamOutOfRange);

        let name = CString::new("lens").unwrap();
        let over = CString::new("s").unwrap();
        assert_eq!(
            bohr_threshold(
                name.as_ptr(),
                over.as_ptr(),
                0.1,
                std::f64::consts::FRAC_1_SQRT_2,
                ptr::null(),
                ptr::null(),
                0,
                BohrClass::Starlike,
                1e-12,
                &mut r,
            ),
            BohrStatus::Ok
        );
        assert!((r - 0.444980949093).abs() < 1e-9);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bohr_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/bohr.h")).unwrap();
    for name in [
        "bohr_phi_new",
        "bohr_phi_free",
        "bohr_phi_coefficients",
        "bohr_extremal_new",
        "bohr_starlike_radius",
        "bohr_threshold",
        "bohr_last_error_message",
        "typedef struct BohrPhi BohrPhi",
        "BOHR_STATUS_POSITIVITY_REQUIRED = 3",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    use std::io::Write;
    use std::process::{Command, Stdio};

    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let child = Command::new("cc")
        .args([
            "-fsyntax-only",
            "-Wall",
            "-Werror",
            "-std=c99",
            "-I",
            include,
            "-x",
            "c",
            "-",
        ])
        .stdin(Stdio::piped())
        .spawn();
    let Ok(mut child) = child else {
        eprintln!("no C compiler found; header not compiled");
        return;
    };
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"#include \"bohr.h\"\nint main(void) { BohrRadius r; (void)r; return BOHR_STATUS_OK; }\n")
        .unwrap();
    assert!(child.wait().unwrap().success());
}
