use plumbing_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn data_dir() -> CString {
    CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")).unwrap()
}

fn data(name: &str) -> CString {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(plumbing_last_error()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    plumbing_string_free(s);
    out
}

unsafe fn report_counts(r: *mut PlumbingReport) -> (usize, usize) {
    let (mut len, mut failures) = (0, 0);
    assert_eq!(plumbing_report_len(r, &mut len), PlumbingStatus::Ok);
    assert_eq!(plumbing_report_failures(r, &mut failures), PlumbingStatus::Ok);
    plumbing_report_free(r);
    (len, failures)
}

#[test]
fn circle_plumbing_through_the_c_abi() {
    unsafe {
        let mut dg = ptr::null_mut();
        let st = plumbing_dg_from_json(data("circle.json").as_ptr(), data_dir().as_ptr(), &mut dg);
        assert_eq!(st, PlumbingStatus::Ok, "{}", last_error());
        assert_eq!(last_error(), "");

        let mut n = 0;
        assert_eq!(plumbing_dg_object_count(dg, &mut n), PlumbingStatus::Ok);
        assert_eq!(n, 2);
        let mut rank = 99;
        assert_eq!(plumbing_dg_hom_rank(dg, 1, 0, 1, &mut rank), PlumbingStatus::Ok);
        assert_eq!(rank, 1);
        assert_eq!(plumbing_dg_hom_rank(dg, 1, 0, 0, &mut rank), PlumbingStatus::Ok);
        assert_eq!(rank, 0);
        assert_eq!(
            plumbing_dg_hom_rank(dg, 2, 0, 0, &mut rank),
            PlumbingStatus::InvalidInput
        );

        let mut report = ptr::null_mut();
        assert_eq!(plumbing_dg_verify(dg, &mut report), PlumbingStatus::Ok);
        let (len, failures) = report_counts(report);
        assert!(len > 0);
        assert_eq!(failures, 0);

        let mut ainf = ptr::null_mut();
        assert_eq!(
            plumbing_dg_to_ainf(dg, &mut ainf),
            PlumbingStatus::Ok,
            "{}",
            last_error()
        );
        let mut report = ptr::null_mut();
        assert_eq!(plumbing_ainf_verify(ainf, 3, 0, &mut report), PlumbingStatus::Ok);
        assert_eq!(report_counts(report).1, 0);

        let mut model = ptr::null_mut();
        assert_eq!(
            plumbing_ainf_minimal_model(ainf, 4, &mut model),
            PlumbingStatus::Ok,
            "{}",
            last_error()
        );
        let mut text = ptr::null_mut();
        assert_eq!(plumbing_ainf_to_json(model, &mut text), PlumbingStatus::Ok);
        let text = take_string(text);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        // H*(Hom(Q_i, Q_j)) of two circles meeting in an arc: 1+1, 1, 1, 1+1.
        assert_eq!(v["generators"].as_array().unwrap().len(), 6);

        // The exported model re-imports and satisfies the relations.
        let mut again = ptr::null_mut();
        let c = CString::new(text).unwrap();
        assert_eq!(
            plumbing_ainf_from_json(c.as_ptr(), &mut again),
            PlumbingStatus::Ok,
            "{}",
            last_error()
        );
        let mut report = ptr::null_mut();
        assert_eq!(plumbing_ainf_verify(again, 4, 0, &mut report), PlumbingStatus::Ok);
        assert_eq!(report_counts(report).1, 0);

        plumbing_ainf_free(again);
        plumbing_ainf_free(model);
        plumbing_ainf_free(ainf);
        plumbing_dg_free(dg);
    }
}

#[test]
fn errors_are_codes_with_messages() {
    unsafe {
        let mut dg = ptr::null_mut();
        let bad = CString::new("{\"q1\": ").unwrap();
        assert_eq!(
            plumbing_dg_from_json(bad.as_ptr(), ptr::null(), &mut dg),
            PlumbingStatus::ParseError
        );
        assert!(last_error().contains("line 1"), "{}", last_error());
        assert!(dg.is_null());

        assert_eq!(
            plumbing_dg_from_json(ptr::null(), ptr::null(), &mut dg),
            PlumbingStatus::NullArgument
        );
        let spec = data("circle.json");
        assert_eq!(
            plumbing_dg_from_json(spec.as_ptr(), ptr::null(), ptr::null_mut()),
            PlumbingStatus::NullArgument
        );

        let invalid_utf8 = [0xffu8, 0];
        assert_eq!(
            plumbing_dg_from_json(invalid_utf8.as_ptr().cast(), ptr::null(), &mut dg),
            PlumbingStatus::InvalidUtf8
        );

        let mut n = 0;
        assert_eq!(
            plumbing_dg_object_count(ptr::null(), &mut n),
            PlumbingStatus::NullArgument
        );

        let mut sign = 0;
        assert_eq!(plumbing_stasheff_sign(3, 2, 5, &mut sign), PlumbingStatus::InvalidInput);
        assert!(!last_error().is_empty());

        // Freeing null is a no-op.
        plumbing_dg_free(ptr::null_mut());
        plumbing_ainf_free(ptr::null_mut());
        plumbing_report_free(ptr::null_mut());
        plumbing_string_free(ptr::null_mut());
    }
}

#[test]
fn count_file_and_corruption() {
    unsafe {
        let mut ainf = ptr::null_mut();
        assert_eq!(
            plumbing_ainf_from_json(data("morse_circle.json").as_ptr(), &mut ainf),
            PlumbingStatus::Ok
        );
        let mut report = ptr::null_mut();
        assert_eq!(plumbing_ainf_verify(ainf, 4, 0, &mut report), PlumbingStatus::Ok);
        assert_eq!(report_counts(report).1, 0);
        plumbing_ainf_free(ainf);

        let mut v: serde_json::Value = serde_json::from_str(data("morse_circle.json").to_str().unwrap()).unwrap();
        v["counts"][1]["coeff"] = 1.into();
        let corrupt = CString::new(v.to_string()).unwrap();
        assert_eq!(plumbing_ainf_from_json(corrupt.as_ptr(), &mut ainf), PlumbingStatus::Ok);
        assert_eq!(plumbing_ainf_verify(ainf, 4, 0, &mut report), PlumbingStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(plumbing_report_to_json(report, &mut json), PlumbingStatus::Ok);
        assert!(take_string(json).contains("\"pass\": false"));
        assert!(report_counts(report).1 > 0);
        plumbing_ainf_free(ainf);
    }
}

#[test]
fn signs_and_polytopes() {
    unsafe {
        let mut sign = -1;
        // (d1 − k)d2 + d2 + k = (3−1)·2 + 2 + 1 is odd.
        assert_eq!(plumbing_stasheff_sign(3, 2, 1, &mut sign), PlumbingStatus::Ok);
        assert_eq!(sign, 1);
        assert_eq!(plumbing_stasheff_sign(2, 2, 0, &mut sign), PlumbingStatus::Ok);
        assert_eq!(sign, 0);

        let mut report = ptr::null_mut();
        assert_eq!(plumbing_verify_polytopes(5, 0, &mut report), PlumbingStatus::Ok);
        let (len, failures) = report_counts(report);
        assert!(len > 0);
        assert_eq!(failures, 0);

        assert_eq!(
            plumbing_verify_signs(4, 20, 0, &mut report),
            PlumbingStatus::Ok,
            "{}",
            last_error()
        );
        let mut json = ptr::null_mut();
        assert_eq!(plumbing_report_to_json(report, &mut json), PlumbingStatus::Ok);
        let entries: Vec<serde_json::Value> = serde_json::from_str(&take_string(json)).unwrap();
        assert!(entries
            .iter()
            .filter(|e| e["check"]
                .as_str()
                .unwrap()
                .starts_with("orientations.boundary.stasheff"))
            .all(|e| e["pass"] == true));
        plumbing_report_free(report);
    }
}
