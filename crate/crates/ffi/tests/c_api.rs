use legendre_mm_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

const LINE: &str = r#"{"polys":[{"terms":[
    {"e_lambda":0,"e_m":0,"e_x":1,"e_y":0,"e_z":0,"coeff":"1"},
    {"e_lambda":0,"e_m":0,"e_x":0,"e_y":0,"e_z":1,"coeff":"-2"}]}],"D1":1,"D2":1,"H":0}"#;

unsafe fn take(s: *mut c_char) -> String {
    let t = CStr::from_ptr(s).to_str().unwrap().to_string();
    lmm_string_free(s);
    t
}

#[test]
fn scan_through_handles() {
    unsafe {
        let json = CString::new(LINE).unwrap();
        let mut curve = ptr::null_mut();
        assert_eq!(lmm_curve_from_json(json.as_ptr(), &mut curve), LmmStatus::Ok);
        let mut scan = ptr::null_mut();
        assert_eq!(lmm_scan_section(curve, 2, &mut scan), LmmStatus::Ok);
        let mut count = 0usize;
        assert_eq!(lmm_scan_hit_count(scan, &mut count), LmmStatus::Ok);
        assert_eq!(count, 1);
        let mut order = 0u64;
        assert_eq!(lmm_scan_hit_order(scan, 0, &mut order), LmmStatus::Ok);
        assert_eq!(order, 2);
        let mut text = ptr::null_mut();
        assert_eq!(lmm_scan_hit_json(scan, 0, &mut text), LmmStatus::Ok);
        assert!(take(text).contains("\"lambda\":\"2\""));
        assert_eq!(lmm_scan_hit_order(scan, 5, &mut order), LmmStatus::IndexOutOfRange);
        let mut generic = true;
        assert_eq!(lmm_scan_is_generic(scan, &mut generic), LmmStatus::Ok);
        assert!(!generic);
        lmm_scan_free(scan);

        let six = CString::new("6").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(lmm_bound_parse(six.as_ptr(), &mut c), LmmStatus::Ok);
        let mut passed = false;
        assert_eq!(lmm_verify(curve, c, 4, &mut passed), LmmStatus::Ok);
        assert!(passed);
        lmm_bound_free(c);
        lmm_curve_free(curve);
    }
}

#[test]
fn bounds_and_errors() {
    unsafe {
        let six = CString::new("6").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(lmm_bound_parse(six.as_ptr(), &mut c), LmmStatus::Ok);
        let mut b = ptr::null_mut();
        assert_eq!(lmm_bound_mm_curve(c, 1000, &mut b), LmmStatus::Ok);
        let mut ln = 0.0;
        assert_eq!(lmm_bound_ln(b, &mut ln), LmmStatus::Ok);
        assert!((ln - 4.0 * 18000f64.ln()).abs() < 1e-9);
        let mut le = false;
        assert_eq!(lmm_bound_le(c, b, &mut le), LmmStatus::Ok);
        assert!(le);
        let mut s = ptr::null_mut();
        assert_eq!(lmm_bound_to_string(b, &mut s), LmmStatus::Ok);
        assert!(take(s).starts_with("exp("));
        lmm_bound_free(b);
        lmm_bound_free(c);

        let bad = CString::new("{").unwrap();
        let mut curve = ptr::null_mut();
        assert_eq!(lmm_curve_from_json(bad.as_ptr(), &mut curve), LmmStatus::Format);
        assert!(curve.is_null());
        assert!(!lmm_last_error().is_null());
        assert_eq!(lmm_curve_from_json(ptr::null(), &mut curve), LmmStatus::NullPointer);
        let half = CString::new("1/2").unwrap();
        assert_eq!(lmm_bound_parse(half.as_ptr(), &mut c), LmmStatus::InvalidInput);
        let (mut a, mut bb) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(lmm_divpoly(0, &mut a, &mut bb), LmmStatus::Precondition);
        assert_eq!(lmm_divpoly(2, &mut a, &mut bb), LmmStatus::Ok);
        assert_eq!(take(a), "X^4 - 2*X^2*L + L^2");
        lmm_string_free(bb);
    }
}

#[test]
fn cli_in_process() {
    unsafe {
        let args: Vec<CString> = ["divpoly", "--n", "2"].iter().map(|s| CString::new(*s).unwrap()).collect();
        let ptrs: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
        let (mut code, mut out, mut err) = (-1, ptr::null_mut(), ptr::null_mut());
        assert_eq!(lmm_cli_run(ptrs.len(), ptrs.as_ptr(), &mut code, &mut out, &mut err), LmmStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).contains("functional_equation: true"));
        lmm_string_free(err);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/legendre_mm.h")).unwrap();
    for f in ["lmm_curve_from_json", "lmm_scan_section", "lmm_bound_mm_curve", "lmm_verify", "lmm_cli_run", "lmm_string_free"] {
        assert!(h.contains(f), "{f} missing from header");
    }
    assert!(h.contains("typedef struct LmmCurve LmmCurve;"));
    assert!(h.contains("LMM_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let src = std::env::temp_dir().join("lmm_header_check.c");
    std::fs::write(&src, "#include \"legendre_mm.h\"\nint main(void) { return LMM_STATUS_OK; }\n").unwrap();
    let st = std::process::Command::new(cc).args(["-fsyntax-only", "-Wall", "-Werror", "-I", dir]).arg(&src).status().unwrap();
    assert!(st.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for c in ["cc", "clang", "gcc"] {
        if std::process::Command::new(c).arg("--version").output().is_ok() {
            return Ok(c);
        }
    }
    Err(())
}
