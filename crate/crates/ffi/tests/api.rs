use std::ffi::{CStr, CString};
use std::ptr;

use gv_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gv_string_free(s);
    text
}

#[test]
fn local_p2_round_trip() {
    unsafe {
        let mut engine = ptr::null_mut();
        let name = CString::new("p2").unwrap();
        assert_eq!(
            gv_engine_from_preset(name.as_ptr(), &mut engine),
            GvStatus::Ok
        );
        assert_eq!(gv_engine_rank(engine), 3);
        assert_eq!(gv_engine_compute(engine, 3), GvStatus::Ok);
        assert_eq!(gv_engine_report_count(engine), 19);

        let mut degree = [0u32; 3];
        let mut genus_zero = 0i64;
        let mut genus_one = 0i64;
        for i in 0..19 {
            let mut integral = false;
            assert_eq!(
                gv_engine_report_integral(engine, i, &mut integral),
                GvStatus::Ok
            );
            assert!(integral);
            assert_eq!(
                gv_engine_report_degree(engine, i, degree.as_mut_ptr(), 3),
                GvStatus::Ok
            );
            if degree.iter().sum::<u32>() == 3 {
                let mut out = ptr::null_mut();
                assert_eq!(gv_engine_gv_number(engine, i, 0, &mut out), GvStatus::Ok);
                genus_zero += take(out).parse::<i64>().unwrap();
                assert_eq!(gv_engine_gv_number(engine, i, 1, &mut out), GvStatus::Ok);
                genus_one += take(out).parse::<i64>().unwrap();
            }
        }
        assert_eq!((genus_zero, genus_one), (27, -10));

        let mut json = ptr::null_mut();
        assert_eq!(gv_engine_report_json(engine, 0, &mut json), GvStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(report["t_times_G"], serde_json::json!(["-1"]));
        gv_engine_free(engine);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut engine = ptr::null_mut();
        assert_eq!(
            gv_engine_new([1i64].as_ptr(), 1, &mut engine),
            GvStatus::InvalidArgument
        );
        assert!(!gv_last_error().is_null());
        assert_eq!(
            gv_engine_new(ptr::null(), 2, &mut engine),
            GvStatus::NullPointer
        );
        let name = CString::new("P9").unwrap();
        assert_eq!(
            gv_engine_from_preset(name.as_ptr(), &mut engine),
            GvStatus::InvalidArgument
        );
        let message = CStr::from_ptr(gv_last_error()).to_str().unwrap();
        assert!(message.contains("P9"));

        assert_eq!(
            gv_engine_new([-1i64, -1].as_ptr(), 2, &mut engine),
            GvStatus::Ok
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            gv_engine_report_json(engine, 0, &mut out),
            GvStatus::OutOfRange
        );
        assert_eq!(gv_engine_compute(engine, 2), GvStatus::Ok);
        let mut degree = [0u32; 3];
        assert_eq!(
            gv_engine_report_degree(engine, 0, degree.as_mut_ptr(), 3),
            GvStatus::InvalidArgument
        );
        assert_eq!(gv_engine_compute(ptr::null_mut(), 2), GvStatus::NullPointer);
        assert_eq!(gv_engine_report_count(ptr::null()), 0);
        gv_engine_free(engine);
        gv_engine_free(ptr::null_mut());
        gv_string_free(ptr::null_mut());
    }
}
