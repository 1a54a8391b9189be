use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use diskdepth_ffi::*;

fn set(xy: &[f64], colours: Option<&[i32]>) -> *mut DdPointSet {
    let mut h = ptr::null_mut();
    let st = unsafe {
        dd_point_set_new(
            xy.as_ptr(),
            colours.map_or(ptr::null(), |c| c.as_ptr()),
            xy.len() / 2,
            &mut h,
        )
    };
    assert_eq!(st, DdStatus::Ok);
    h
}

fn last_error() -> String {
    let p = dd_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cloud() -> Vec<f64> {
    (0..16)
        .flat_map(|i| {
            let t = i as f64;
            [(t * 0.7137).sin() * 3.0 + 0.01 * t, (t * 1.913).cos() * 2.0 + 0.003 * t * t]
        })
        .collect()
}

#[test]
fn searches() {
    let h = set(&cloud(), None);
    unsafe {
        let mut best = DdSearchReport::default();
        assert_eq!(dd_maximize(h, DdTarget::CTilde, false, &mut best), DdStatus::Ok);
        let (mut found, mut p, mut q) = (false, 0, 0);
        let k = best.stats.c_tilde;
        assert_eq!(dd_decide_k(h, k, DdTarget::CTilde, false, &mut found, &mut p, &mut q), DdStatus::Ok);
        assert!(found);
        assert_eq!(dd_decide_k(h, k + 1, DdTarget::CTilde, false, &mut found, &mut p, &mut q), DdStatus::Ok);
        assert!(!found);

        let cfg = DdSearchConfig {
            alpha: 0.5,
            target: DdTarget::CTilde,
            bichromatic: false,
            high_probability: false,
            seed: 5,
            max_attempts: 0,
        };
        let mut r = DdSearchReport::default();
        assert_eq!(dd_random_pair_search(h, &cfg, &mut r), DdStatus::Ok);
        assert!(r.attempts >= 1);
        let bad = DdSearchConfig { alpha: 1.5, ..cfg };
        assert_eq!(dd_random_pair_search(h, &bad, &mut r), DdStatus::InvalidInput);
        assert!(last_error().contains("alpha"));

        let mut d = DdDiametral::default();
        assert_eq!(dd_diametral_pair(h, 1, &mut d), DdStatus::Ok);
        assert!(3 * d.count >= 16);
        // not in convex position
        assert_eq!(dd_convex_pair(h, &mut r), DdStatus::InvalidInput);
        dd_point_set_free(h);
    }
}

#[test]
fn colours_and_degeneracy() {
    let xy = [0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 0.0, 1.0];
    let mut h = ptr::null_mut();
    unsafe {
        let bad = [0, 1, 7, 2];
        assert_eq!(dd_point_set_new(xy.as_ptr(), bad.as_ptr(), 4, &mut h), DdStatus::InvalidInput);
        let cols = [DD_COLOUR_RED, DD_COLOUR_BLUE, DD_COLOUR_RED, DD_COLOUR_BLUE];
        let coloured = set(&xy, Some(&cols));
        let mut s = DdPairStats::default();
        assert_eq!(dd_c_pair(coloured, 0, 2, false, &mut s), DdStatus::Degenerate);
        dd_point_set_free(coloured);
        dd_point_set_free(ptr::null_mut());
        assert_eq!(dd_point_set_new(ptr::null(), ptr::null(), 0, &mut h), DdStatus::NullPointer);
    }
}

#[test]
fn polygons() {
    let l = [0.0, 0.0, 2.0, 0.0, 2.0, 1.0, 1.0, 1.0, 1.0, 2.0, 0.0, 2.0];
    let mut poly = ptr::null_mut();
    unsafe {
        assert_eq!(dd_polygon_new(l.as_ptr(), 6, &mut poly), DdStatus::Ok);
        let mut d = 0.0;
        assert_eq!(dd_geodesic_distance(poly, 0.5, 1.5, 1.5, 0.5, &mut d), DdStatus::Ok);
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(dd_geodesic_distance(poly, 1.5, 1.5, 0.5, 0.5, &mut d), DdStatus::InvalidInput);

        let h = set(&[0.5, 1.8, 1.8, 0.5, 0.3, 0.4, 0.2, 1.1], None);
        let mut e = DdGeodesicEstimate::default();
        assert_eq!(dd_geodesic_c_pair_upper(poly, h, 0, 1, 0.05, &mut e), DdStatus::Ok);
        assert!(e.upper_bound <= 2);
        assert!(e.samples_evaluated > 0);
        dd_point_set_free(h);
        dd_polygon_free(poly);

        let cw = [0.0, 0.0, 0.0, 1.0, 1.0, 0.0];
        assert_eq!(dd_polygon_new(cw.as_ptr(), 3, &mut poly), DdStatus::InvalidInput);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/diskdepth.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "dd_point_set_new",
        "dd_c_pair",
        "dd_random_pair_search",
        "dd_geodesic_c_pair_upper",
        "dd_last_error_message",
        "DD_STATUS_DEGENERATE",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"diskdepth.h\"\nint main(void) { DdPointSet *s = 0; double xy[2] = {0, 0};\n\
         DdStatus st = dd_point_set_new(xy, 0, 1, &s); dd_point_set_free(s); return st == DD_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .output()
        .expect("a C compiler is installed");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
