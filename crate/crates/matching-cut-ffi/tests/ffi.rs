//! Exercises the C ABI the way a foreign caller would: raw pointers,
//! out-parameters, and explicit frees.

use matching_cut_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn c6_edges() -> Vec<usize> {
    vec![0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 0, 5]
}

unsafe fn make_graph(n: usize, flat: &[usize]) -> *mut McGraph {
    let mut g: *mut McGraph = ptr::null_mut();
    let status = mc_graph_new(n, flat.as_ptr(), flat.len() / 2, &mut g);
    assert_eq!(status, McStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let ptr = mc_last_error();
    assert!(!ptr.is_null());
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned()
}

#[test]
fn decide_cycle_and_read_witness() {
    unsafe {
        let g = make_graph(6, &c6_edges());
        let mut n = 0usize;
        assert_eq!(mc_graph_vertex_count(g, &mut n), McStatus::Ok);
        assert_eq!(n, 6);
        let mut m = 0usize;
        assert_eq!(mc_graph_edge_count(g, &mut m), McStatus::Ok);
        assert_eq!(m, 6);

        let mut v: *mut McVerdict = ptr::null_mut();
        assert_eq!(mc_decide(g, &mut v), McStatus::Ok);
        let mut has = false;
        assert_eq!(mc_verdict_has_cut(v, &mut has), McStatus::Ok);
        assert!(has);
        let mut method: *const c_char = ptr::null();
        assert_eq!(mc_verdict_method(v, &mut method), McStatus::Ok);
        assert_eq!(
            CStr::from_ptr(method).to_str().unwrap(),
            "bipartite_diam3_phase1"
        );

        let mut x_len = 0usize;
        let mut y_len = 0usize;
        assert_eq!(mc_verdict_side_count(v, 0, &mut x_len), McStatus::Ok);
        assert_eq!(mc_verdict_side_count(v, 1, &mut y_len), McStatus::Ok);
        assert_eq!(x_len + y_len, 6);
        assert!(x_len > 0 && y_len > 0);

        let mut x = vec![0usize; x_len];
        let mut y = vec![0usize; y_len];
        let mut written = 0usize;
        assert_eq!(
            mc_verdict_copy_side(v, 0, x.as_mut_ptr(), x.len(), &mut written),
            McStatus::Ok
        );
        assert_eq!(written, x_len);
        assert_eq!(
            mc_verdict_copy_side(v, 1, y.as_mut_ptr(), y.len(), &mut written),
            McStatus::Ok
        );

        // the returned witness must check out through the verifier
        let mut valid = false;
        assert_eq!(
            mc_verify_cut(g, x.as_ptr(), x.len(), y.as_ptr(), y.len(), &mut valid),
            McStatus::Ok
        );
        assert!(valid);

        mc_verdict_free(v);
        mc_graph_free(g);
    }
}

#[test]
fn no_instance_has_empty_sides() {
    unsafe {
        let flat = vec![0, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3];
        let g = make_graph(4, &flat);
        let mut v: *mut McVerdict = ptr::null_mut();
        assert_eq!(mc_decide(g, &mut v), McStatus::Ok);
        let mut has = true;
        assert_eq!(mc_verdict_has_cut(v, &mut has), McStatus::Ok);
        assert!(!has);
        let mut len = 99usize;
        assert_eq!(mc_verdict_side_count(v, 0, &mut len), McStatus::Ok);
        assert_eq!(len, 0);
        mc_verdict_free(v);
        mc_graph_free(g);
    }
}

#[test]
fn parse_good_and_bad_text() {
    unsafe {
        let text = CString::new("p mc 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        let mut g: *mut McGraph = ptr::null_mut();
        assert_eq!(mc_graph_parse(text.as_ptr(), &mut g), McStatus::Ok);
        let mut n = 0usize;
        assert_eq!(mc_graph_vertex_count(g, &mut n), McStatus::Ok);
        assert_eq!(n, 3);
        mc_graph_free(g);

        let bad = CString::new("p mc 2 1\ne 0 7\n").unwrap();
        let mut g: *mut McGraph = ptr::null_mut();
        assert_eq!(mc_graph_parse(bad.as_ptr(), &mut g), McStatus::ParseError);
        assert!(g.is_null());
        assert!(last_error().contains("line 2"), "got: {}", last_error());
    }
}

#[test]
fn graph_write_round_trips_with_size_query() {
    unsafe {
        let g = make_graph(6, &c6_edges());
        let mut needed = 0usize;
        assert_eq!(
            mc_graph_write(g, ptr::null_mut(), 0, &mut needed),
            McStatus::BufferTooSmall
        );
        assert!(needed > 0);
        let mut buf = vec![0u8; needed];
        assert_eq!(
            mc_graph_write(g, buf.as_mut_ptr().cast(), buf.len(), &mut needed),
            McStatus::Ok
        );
        let text = CStr::from_bytes_until_nul(&buf).unwrap().to_str().unwrap();
        assert!(text.starts_with("p mc 6 6\n"));

        let reparsed_src = CString::new(text).unwrap();
        let mut h: *mut McGraph = ptr::null_mut();
        assert_eq!(mc_graph_parse(reparsed_src.as_ptr(), &mut h), McStatus::Ok);
        let mut m = 0usize;
        assert_eq!(mc_graph_edge_count(h, &mut m), McStatus::Ok);
        assert_eq!(m, 6);
        mc_graph_free(h);
        mc_graph_free(g);
    }
}

#[test]
fn error_statuses() {
    unsafe {
        // null arguments
        assert_eq!(
            mc_graph_new(2, ptr::null(), 1, &mut ptr::null_mut()),
            McStatus::NullArgument
        );
        assert_eq!(mc_decide(ptr::null(), &mut ptr::null_mut()), McStatus::NullArgument);
        assert_eq!(mc_graph_parse(ptr::null(), &mut ptr::null_mut()), McStatus::NullArgument);

        // invalid simple graph: self-loop
        let flat = [0usize, 0];
        let mut g: *mut McGraph = ptr::null_mut();
        assert_eq!(mc_graph_new(1, flat.as_ptr(), 1, &mut g), McStatus::InvalidGraph);
        assert!(last_error().contains("self-loop"));

        // bad side index
        let g = make_graph(2, &[0, 1]);
        let mut v: *mut McVerdict = ptr::null_mut();
        assert_eq!(mc_decide(g, &mut v), McStatus::Ok);
        let mut len = 0usize;
        assert_eq!(mc_verdict_side_count(v, 2, &mut len), McStatus::InvalidArgument);

        // cut that is not a partition
        let x = [0usize, 1];
        let y = [1usize];
        let mut valid = false;
        assert_eq!(
            mc_verify_cut(g, x.as_ptr(), 2, y.as_ptr(), 1, &mut valid),
            McStatus::InvalidCut
        );
        mc_verdict_free(v);
        mc_graph_free(g);
    }
}

#[test]
fn exhausted_node_budget_reports_cap() {
    unsafe {
        // C8 has diameter 4, so it lands in the exact fallback; a zero node
        // budget cannot finish
        let flat = vec![0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 0, 7];
        let g = make_graph(8, &flat);
        let mut v: *mut McVerdict = ptr::null_mut();
        assert_eq!(mc_decide_with_caps(g, 0, 0, &mut v), McStatus::CapExceeded);
        assert!(v.is_null());
        // with sane limits the same graph resolves
        assert_eq!(mc_decide_with_caps(g, 0, 1 << 20, &mut v), McStatus::Ok);
        let mut has = false;
        assert_eq!(mc_verdict_has_cut(v, &mut has), McStatus::Ok);
        assert!(has);
        mc_verdict_free(v);
        mc_graph_free(g);
    }
}

#[test]
fn copy_side_reports_small_buffer() {
    unsafe {
        let g = make_graph(6, &c6_edges());
        let mut v: *mut McVerdict = ptr::null_mut();
        assert_eq!(mc_decide(g, &mut v), McStatus::Ok);
        let mut len = 0usize;
        assert_eq!(mc_verdict_side_count(v, 0, &mut len), McStatus::Ok);
        assert!(len >= 2);
        let mut buf = vec![0usize; 1];
        let mut written = 0usize;
        assert_eq!(
            mc_verdict_copy_side(v, 0, buf.as_mut_ptr(), 1, &mut written),
            McStatus::BufferTooSmall
        );
        assert_eq!(written, len);
        mc_verdict_free(v);
        mc_graph_free(g);
    }
}

#[test]
fn generated_header_covers_the_api() {
    let header = include_str!("../include/matching_cut.h");
    for needle in [
        "MC_STATUS_OK",
        "typedef struct McGraph McGraph;",
        "typedef struct McVerdict McVerdict;",
        "mc_decide",
        "mc_verify_cut",
        "mc_last_error",
        "mc_graph_free",
        "mc_verdict_free",
    ] {
        assert!(header.contains(needle), "header lacks {}", needle);
    }
}
