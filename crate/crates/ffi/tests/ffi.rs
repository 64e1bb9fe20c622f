use std::ffi::{CStr, CString};
use std::ptr;

use weightnet_ffi::*;

fn last_error() -> String {
    let p = wn_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sorter_handle_round_trip() {
    let net = wn_oe_sorter(8);
    assert!(!net.is_null());
    unsafe {
        assert_eq!(wn_network_width(net), 8);
        assert_eq!(wn_network_depth(net), 6);
        assert_eq!(wn_network_size(net), 19);

        let input = [3i64, 1, 4, 1, 5, 9, 2, 6];
        let mut output = [0i64; 8];
        assert_eq!(
            wn_network_apply(net, input.as_ptr(), 8, output.as_mut_ptr()),
            WnStatus::WnOk
        );
        let mut sorted = input;
        sorted.sort();
        assert_eq!(output, sorted);

        let short = wn_network_limit_depth(net, 2);
        assert_eq!(wn_network_depth(short), 2);
        wn_network_free(short);
        wn_network_free(net);
    }
}

#[test]
fn null_and_length_errors() {
    unsafe {
        assert_eq!(wn_network_width(ptr::null()), 0);
        let mut out = [0i64; 2];
        let st = wn_network_apply(ptr::null(), [1i64, 2].as_ptr(), 2, out.as_mut_ptr());
        assert_eq!(st, WnStatus::WnNullPointer);
        assert!(last_error().contains("NULL"));

        let net = wn_oe_sorter(4);
        let st = wn_network_apply(net, [1i64, 2].as_ptr(), 2, out.as_mut_ptr());
        assert_eq!(st, WnStatus::WnInvalidArgument);
        wn_network_free(net);
        wn_network_free(ptr::null_mut());
        wn_string_free(ptr::null_mut());
    }
}

#[test]
fn render_returns_owned_string() {
    let net = wn_oe_sorter(4);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(wn_network_render(net, &mut s), WnStatus::WnOk);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        assert!(text.lines().filter(|l| !l.trim().is_empty()).count() >= 4);
        wn_string_free(s);
        wn_network_free(net);
    }
}

#[test]
fn propagation_conserves_total() {
    let net = wn_oe_sorter(4);
    let depth = unsafe { wn_network_depth(net) };
    let weights = [40u64, 70, 10, 25];
    let mut out = vec![0u64; 4 * (depth + 1)];
    for k in [0u64, 1, 2] {
        let st = unsafe { wn_propagate_sparse(net, weights.as_ptr(), 4, k, out.as_mut_ptr(), out.len()) };
        assert_eq!(st, WnStatus::WnOk);
        assert_eq!(out.iter().sum::<u64>(), weights.iter().sum::<u64>());
    }
    let st = unsafe { wn_propagate_sparse(net, weights.as_ptr(), 4, 1, out.as_mut_ptr(), 3) };
    assert_eq!(st, WnStatus::WnInvalidArgument);
    unsafe { wn_network_free(net) };
}

#[test]
fn rewrite_through_c_strings() {
    let program = CString::new("asp 1 0 0\n1 1 2 1 2 0 0\n2 0 2 1 40 2 70\n0\n").unwrap();
    let mut out = ptr::null_mut();
    let config = wn_rewrite_config_default();
    unsafe {
        assert_eq!(wn_rewrite_aspif(program.as_ptr(), &config, &mut out), WnStatus::WnOk);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        wn_string_free(out);
        assert!(text.starts_with("asp 1 0 0\n"));
        assert!(text.contains("2 0 3 4 30 5 40 6 40"), "{text}");

        let identity = WnRewriteConfig {
            depth_limit: 0,
            ..config
        };
        assert_eq!(wn_rewrite_aspif(program.as_ptr(), &identity, &mut out), WnStatus::WnOk);
        assert_eq!(CStr::from_ptr(out).to_bytes(), program.as_bytes());
        wn_string_free(out);

        let bad = CString::new("not aspif").unwrap();
        assert_eq!(
            wn_rewrite_aspif(bad.as_ptr(), ptr::null(), &mut out),
            WnStatus::WnParseError
        );
        assert!(!last_error().is_empty());
    }
}

#[test]
fn pch_counts() {
    let (mut m, mut complete) = (0usize, false);
    unsafe {
        assert_eq!(
            wn_pch_binomial(10, 5, WnNetworkChoice::WnNetworkNone, 0, &mut m, &mut complete),
            WnStatus::WnOk
        );
        assert_eq!((m, complete), (252, true));
        assert_eq!(
            wn_pch_binomial(10, 5, WnNetworkChoice::WnNetworkFull, 0, &mut m, &mut complete),
            WnStatus::WnOk
        );
        assert!(complete && m <= 6);
        assert_eq!(
            wn_pch_binomial(4, 2, WnNetworkChoice::WnNetworkNone, 0, ptr::null_mut(), &mut complete),
            WnStatus::WnNullPointer
        );
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/weightnet.h")).unwrap();
    for name in [
        "wn_oe_sorter",
        "wn_network_free",
        "wn_network_apply",
        "wn_propagate_sparse",
        "wn_rewrite_aspif",
        "wn_pch_binomial",
        "wn_string_free",
        "wn_last_error_message",
        "typedef struct WnNetwork WnNetwork",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
