#![no_main]

use libfuzzer_sys::fuzz_target;

use radma::envelope::convex_increasing_minorant;
use radma::{GridFunction, Weight};

// Raw sampled data (abscissae and values decoded straight from bytes) feeds
// the grid validator, the envelope, and the tabulated-weight fitter; any
// input must either be rejected with an error or processed without panics.
fuzz_target!(|data: &[u8]| {
    let mut ts = Vec::new();
    let mut vals = Vec::new();
    for chunk in data.chunks_exact(16) {
        ts.push(f64::from_le_bytes(chunk[..8].try_into().unwrap()));
        vals.push(f64::from_le_bytes(chunk[8..].try_into().unwrap()));
    }
    let Ok(g) = GridFunction::new(ts, vals) else { return };
    if let Ok(r) = convex_increasing_minorant(&g) {
        for (e, v) in r.env.vals().iter().zip(g.vals()) {
            assert!(
                *e <= v + 1e-9 * (1.0 + v.abs()),
                "envelope exceeded its obstacle"
            );
        }
        let again = convex_increasing_minorant(&r.env).expect("envelope re-envelopes");
        assert_eq!(again.env.vals(), r.env.vals(), "envelope not idempotent");
    }
    let _ = Weight::tabulated(g);
});
