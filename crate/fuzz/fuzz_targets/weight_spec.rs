#![no_main]

use libfuzzer_sys::fuzz_target;

use radma::Weight;

// Weight specs arrive from the command line and from config files; parsing
// and evaluating arbitrary ones must never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = text.parse::<Weight>() else { return };
    let probes = [-1e6, -100.0, -2.0, -1.0, -0.5, -1e-6, 0.0];
    let mut prev: Option<f64> = None;
    for t in probes {
        let v = w.eval(t).unwrap();
        let d1 = w.deriv(t, 1).unwrap();
        let d2 = w.deriv(t, 2).unwrap();
        if v.is_finite() && d1.is_finite() && d2.is_finite() {
            // accepted specs must stay admissible wherever they are finite
            assert!(d1 >= -1e-9, "spec `{text}` decreasing at {t}");
            assert!(d2 >= -1e-9, "spec `{text}` concave at {t}");
            if let Some(p) = prev {
                if p.is_finite() {
                    assert!(v >= p - 1e-9 * (1.0 + p.abs()), "spec `{text}` non-monotone");
                }
            }
        }
        prev = Some(v);
    }
    let _ = w.eval(1.0).unwrap_err();
    let _ = w.quad_hints();
    let _ = w.bounded_below(1e-6);
});
