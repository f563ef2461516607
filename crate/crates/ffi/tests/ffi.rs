use std::ffi::{CStr, CString};
use std::ptr;

use linepack_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lp_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn group(json: &str) -> *mut LpGroup {
    let text = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { lp_group_from_json(text.as_ptr(), &mut g) },
        LpStatus::Ok
    );
    g
}

const F2_CUBED: &str =
    r#"{"degree":8,"generators":[[1,0,3,2,5,4,7,6],[2,3,0,1,6,7,4,5],[4,5,6,7,0,1,2,3]]}"#;

#[test]
fn s3_scheme_through_handles() {
    let g = group(r#"{"degree":3,"generators":[[1,2,0],[1,0,2]]}"#);
    unsafe {
        let mut order = 0u64;
        assert_eq!(lp_group_order(g, &mut order), LpStatus::Ok);
        assert_eq!(order, 6);

        let mut s = ptr::null_mut();
        assert_eq!(lp_scheme_new(g, LpAction::Natural, 0, &mut s), LpStatus::Ok);
        let mut needed = 0usize;
        assert_eq!(
            lp_scheme_valencies(s, ptr::null_mut(), 0, &mut needed),
            LpStatus::Ok
        );
        assert_eq!(needed, 2);
        let mut vals = [0usize; 2];
        assert_eq!(
            lp_scheme_valencies(s, vals.as_mut_ptr(), 2, &mut needed),
            LpStatus::Ok
        );
        assert_eq!(vals, [1, 2]);
        let mut comm = false;
        assert_eq!(lp_scheme_is_commutative(s, &mut comm), LpStatus::Ok);
        assert!(comm);

        let mut r = ptr::null_mut();
        assert_eq!(
            lp_scheme_new(g, LpAction::Regular, 100, &mut r),
            LpStatus::Ok
        );
        assert_eq!(lp_scheme_is_commutative(r, &mut comm), LpStatus::Ok);
        assert!(!comm);
        lp_scheme_free(r);
        lp_scheme_free(s);
        lp_group_free(g);
    }
}

#[test]
fn cyclic_seven_gives_3x7_etf() {
    let z7 = group(r#"{"degree":7,"generators":[[1,2,3,4,5,6,0]]}"#);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            lp_scheme_new(z7, LpAction::Natural, 0, &mut s),
            LpStatus::Ok
        );
        let mut dec = ptr::null_mut();
        assert_eq!(lp_decompose(s, 0, 1e-8, &mut dec), LpStatus::Ok);
        let mut ranks = [0usize; 7];
        let mut needed = 0;
        assert_eq!(
            lp_decomposition_ranks(dec, ranks.as_mut_ptr(), 7, &mut needed),
            LpStatus::Ok
        );
        assert_eq!(ranks, [1; 7]);
        let mut found = false;
        for a in 0..7usize {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let subset = [a, b, c];
                    let mut g = ptr::null_mut();
                    assert_eq!(
                        lp_gram_from_subset(dec, subset.as_ptr(), 3, &mut g),
                        LpStatus::Ok
                    );
                    let mut rep = LpReport::default();
                    assert_eq!(lp_gram_report(g, 1e-8, &mut rep), LpStatus::Ok);
                    if rep.is_etf {
                        assert_eq!((rep.n, rep.d), (7, 3));
                        assert!(!rep.is_real);
                        found = true;
                    }
                    lp_gram_free(g);
                }
            }
        }
        assert!(found);
        lp_decomposition_free(dec);
        lp_scheme_free(s);
        lp_group_free(z7);
    }
}

#[test]
fn translation_group_scheme() {
    let g = group(F2_CUBED);
    unsafe {
        let mut degree = 0;
        assert_eq!(lp_group_degree(g, &mut degree), LpStatus::Ok);
        assert_eq!(degree, 8);
        let mut s = ptr::null_mut();
        let status = lp_scheme_new(g, LpAction::Natural, 0, &mut s);
        assert_eq!(status, LpStatus::Ok, "{}", last_error());
        let mut n = 0;
        assert_eq!(lp_scheme_point_count(s, &mut n), LpStatus::Ok);
        assert_eq!(n, 8);
        let mut vals = [0usize; 8];
        let mut needed = 0;
        assert_eq!(
            lp_scheme_valencies(s, vals.as_mut_ptr(), 8, &mut needed),
            LpStatus::Ok
        );
        assert_eq!(vals, [1; 8]);
        lp_scheme_free(s);
        lp_group_free(g);
    }
}

#[test]
fn heisenberg_gram_reduce_and_json() {
    unsafe {
        let moduli = [3u32];
        let mut g = ptr::null_mut();
        assert_eq!(
            lp_heisenberg_gram(moduli.as_ptr(), 1, 1, LpParity::Odd, &mut g),
            LpStatus::Ok
        );
        let mut rep = LpReport::default();
        assert_eq!(lp_gram_report(g, 1e-8, &mut rep), LpStatus::Ok);
        assert_eq!((rep.n, rep.d), (9, 3));
        assert!(rep.is_etf && rep.welch_met);
        assert!((rep.coherence - 0.5).abs() < 1e-12);

        let mut size = 0;
        assert_eq!(lp_gram_size(g, &mut size), LpStatus::Ok);
        let mut needed = 0;
        let mut small = [0.0f64; 4];
        assert_eq!(
            lp_gram_entries(g, small.as_mut_ptr(), 4, &mut needed),
            LpStatus::BufferTooSmall
        );
        assert_eq!(needed, 2 * size * size);
        let mut entries = vec![0.0f64; needed];
        assert_eq!(
            lp_gram_entries(g, entries.as_mut_ptr(), needed, &mut needed),
            LpStatus::Ok
        );

        let mut copy = ptr::null_mut();
        assert_eq!(
            lp_gram_from_entries(size, entries.as_ptr(), &mut copy),
            LpStatus::Ok
        );
        let mut map = vec![0usize; size];
        let mut red = ptr::null_mut();
        assert_eq!(
            lp_gram_reduce(copy, 1e-7, map.as_mut_ptr(), &mut red),
            LpStatus::Ok
        );
        let mut reduced = 0;
        assert_eq!(lp_gram_size(red, &mut reduced), LpStatus::Ok);
        assert_eq!(reduced, 9);
        assert_eq!(map, (0..9).collect::<Vec<_>>());

        let mut json = ptr::null_mut();
        assert_eq!(lp_gram_to_json(red, &mut json), LpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        lp_string_free(json);
        assert!(text.contains("\"n\":9"));

        lp_gram_free(red);
        lp_gram_free(copy);
        lp_gram_free(g);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("{").unwrap();
        assert_eq!(
            lp_group_from_json(bad.as_ptr(), &mut g),
            LpStatus::InputError
        );
        assert!(!last_error().is_empty());
        assert!(g.is_null());

        assert_eq!(
            lp_group_from_json(ptr::null(), &mut g),
            LpStatus::NullPointer
        );

        let images = [1u32, 1];
        assert_eq!(
            lp_group_from_images(2, images.as_ptr(), 1, &mut g),
            LpStatus::InputError
        );

        let moduli = [4u32];
        let mut gram = ptr::null_mut();
        assert_eq!(
            lp_heisenberg_gram(moduli.as_ptr(), 1, 1, LpParity::Even, &mut gram),
            LpStatus::InputError
        );
        assert!(last_error().contains("4"));

        let big = group(r#"{"degree":6,"generators":[[1,2,3,4,5,0],[1,0,2,3,4,5]]}"#);
        let mut s = ptr::null_mut();
        assert_eq!(
            lp_scheme_new(big, LpAction::Regular, 100, &mut s),
            LpStatus::ResourceError
        );
        lp_group_free(big);

        let intransitive = group(r#"{"degree":4,"generators":[[1,0,2,3]]}"#);
        assert_eq!(
            lp_scheme_new(intransitive, LpAction::Natural, 0, &mut s),
            LpStatus::InputError
        );
        lp_group_free(intransitive);

        lp_group_free(ptr::null_mut());
        lp_scheme_free(ptr::null_mut());
        lp_gram_free(ptr::null_mut());
        lp_decomposition_free(ptr::null_mut());
        lp_string_free(ptr::null_mut());
    }
}

#[test]
fn group_from_images_computes_order() {
    let images = [1u32, 2, 3, 0, 1, 0, 2, 3];
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            lp_group_from_images(4, images.as_ptr(), 2, &mut g),
            LpStatus::Ok
        );
        let mut order = 0;
        assert_eq!(lp_group_order(g, &mut order), LpStatus::Ok);
        assert_eq!(order, 24);
        lp_group_free(g);
    }
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(lp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/linepack.h");
    let src = include_str!("../src/lib.rs");
    for line in src.lines() {
        let Some(rest) = line.split("extern \"C\" fn ").nth(1) else {
            continue;
        };
        let name = rest.split('(').next().unwrap();
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from the header"
        );
    }
    for ty in [
        "LpStatus",
        "LpAction",
        "LpParity",
        "LpReport",
        "LpGroup",
        "LpScheme",
        "LpDecomposition",
        "LpGram",
    ] {
        assert!(header.contains(ty), "{ty} missing from the header");
    }
}

#[test]
fn header_and_example_compile_as_c() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-std=c99", "-I"])
        .arg(root.join("include"))
        .arg(root.join("examples/smoke.c"))
        .status();
    match status {
        Ok(s) => assert!(s.success(), "C compiler rejected the header"),
        Err(_) => eprintln!("no C compiler available, skipping"),
    }
}
